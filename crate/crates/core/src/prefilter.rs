//! Partial filters on a downward-closed generating set and their closure.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::lattice::{Pool, SubgroupLattice};
use crate::monoid::{Monoid, OrderKind};

pub const DEFAULT_FIXPOINT_CAP: usize = 10_000;

#[derive(Clone, Debug)]
pub struct Prefilter<L: SubgroupLattice> {
    pub monoid: Arc<Monoid>,
    pub lattice: Arc<L>,
    /// Value at each element of the domain, `None` outside it.
    pub values: Vec<Option<L::Sub>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrefilterProblem {
    ZeroMissing,
    DoesNotGenerate,
    /// `below <= s` with `s` in the domain but `below` outside.
    NotDownwardClosed { s: usize, below: usize },
    NotNormal { s: usize },
    OrderReversal { s: usize, t: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefilterReport {
    pub valid: bool,
    pub problems: Vec<PrefilterProblem>,
}

impl<L: SubgroupLattice> Prefilter<L> {
    pub fn new(monoid: Arc<Monoid>, lattice: Arc<L>, entries: Vec<(usize, L::Sub)>) -> Self {
        let mut values = vec![None; monoid.len()];
        for (s, v) in entries {
            values[s] = Some(v);
        }
        Prefilter { monoid, lattice, values }
    }

    pub fn domain(&self) -> Vec<usize> {
        self.monoid.elements().filter(|&s| self.values[s].is_some()).collect()
    }

    pub fn validate(&self) -> PrefilterReport {
        let m = &self.monoid;
        let dom = self.domain();
        let mut problems = Vec::new();
        if self.values[m.zero()].is_none() {
            problems.push(PrefilterProblem::ZeroMissing);
        }
        if !m.generates(&dom) {
            problems.push(PrefilterProblem::DoesNotGenerate);
        }
        for &s in &dom {
            for b in m.elements() {
                if m.leq(b, s) && self.values[b].is_none() {
                    problems.push(PrefilterProblem::NotDownwardClosed { s, below: b });
                }
            }
        }
        let mut pool = Pool::new(self.lattice.as_ref());
        for &s in &dom {
            let v = self.values[s].as_ref().unwrap();
            if !self.lattice.is_normal(v) {
                problems.push(PrefilterProblem::NotNormal { s });
            }
        }
        for &s in &dom {
            for &t in &dom {
                if s != t && m.leq(s, t) {
                    let a = pool.intern(self.values[s].as_ref().unwrap());
                    let b = pool.intern(self.values[t].as_ref().unwrap());
                    if !pool.leq(b, a) {
                        problems.push(PrefilterProblem::OrderReversal { s, t });
                    }
                }
            }
        }
        PrefilterReport { valid: problems.is_empty(), problems }
    }

    /// The generated filter: at each `s`, the join over all sequences of
    /// domain elements summing to `s` of their left-normed commutators.
    ///
    /// Computed as a least fixpoint of `psi_s = pi_s v [psi_{s'}, pi_x]` over
    /// nonzero `x` in the domain with `s' + x = s`.  Round `k` accounts for
    /// sequences of length `k + 1`; `class_hint` stops after that many rounds.
    pub fn close(&self, class_hint: Option<usize>) -> Result<Filter<L>> {
        self.close_with_cap(class_hint, DEFAULT_FIXPOINT_CAP)
    }

    pub fn close_with_cap(&self, class_hint: Option<usize>, cap: usize) -> Result<Filter<L>> {
        let m = &self.monoid;
        let mut pool = Pool::new(self.lattice.as_ref());
        let pi: Vec<Option<usize>> = self.values.iter().map(|v| v.as_ref().map(|x| pool.intern(x))).collect();
        let ids = nu_fixpoint(m, &mut pool, &pi, class_hint, cap)?;
        let trivial = pool.trivial();
        let values = ids
            .into_iter()
            .map(|v| {
                v.or(trivial)
                    .map(|i| pool.get(i).clone())
                    .ok_or_else(|| Error::MissingEntry("trivial subgroup for an empty product".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Filter::new(m.clone(), self.lattice.clone(), values)
    }
}

/// Least fixpoint shared by closure and refresh: `pi` gives the allowed parts
/// and their values.  Entries stay `None` where no sequence of parts sums to
/// the index.
pub(crate) fn nu_fixpoint<L: SubgroupLattice>(
    m: &Monoid,
    pool: &mut Pool<'_, L>,
    pi: &[Option<usize>],
    class_hint: Option<usize>,
    cap: usize,
) -> Result<Vec<Option<usize>>> {
    let zero = m.zero();
    let parts: Vec<usize> = m.elements().filter(|&x| x != zero && pi[x].is_some()).collect();
    // preimages[s] = pairs (s', x) with s' + x = s
    let mut pre: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m.len()];
    for s0 in m.elements() {
        for &x in &parts {
            pre[m.add(s0, x)].push((s0, x));
        }
    }
    let mut psi: Vec<Option<usize>> = pi.to_vec();
    let mut rounds = 0usize;
    loop {
        if let Some(c) = class_hint {
            if rounds >= c {
                break;
            }
        }
        if rounds >= cap {
            return Err(Error::FixpointCapExceeded(cap));
        }
        rounds += 1;
        let mut next = psi.clone();
        let mut changed = false;
        for s in m.elements() {
            let mut terms: BTreeSet<usize> = BTreeSet::new();
            for &(s0, x) in &pre[s] {
                if let Some(a) = psi[s0] {
                    terms.insert(pool.commutator(a, pi[x].unwrap())?);
                }
            }
            let mut acc = psi[s];
            for t in terms {
                acc = pool.join_opt(acc, t)?;
            }
            if acc != psi[s] {
                next[s] = acc;
                changed = true;
            }
        }
        psi = next;
        if !changed {
            break;
        }
    }
    Ok(psi)
}

/// Places `f` on `M x N` at the indices `(m, 0)`, adds `entries` (indices of
/// the product), fills the rest of the down-set with the smallest
/// order-compatible values, and closes.
pub fn insert_subgroups<L: SubgroupLattice>(
    f: &Filter<L>,
    extension: &Monoid,
    entries: &[(Vec<u32>, L::Sub)],
    class_hint: Option<usize>,
) -> Result<(Filter<L>, Prefilter<L>)> {
    let big = Arc::new(Monoid::product(&f.monoid, extension, OrderKind::Direct)?);
    let zeros = vec![0u32; extension.dim()];
    let mut values: Vec<Option<L::Sub>> = vec![None; big.len()];
    for s in f.monoid.elements() {
        let mut c = f.monoid.coords(s).to_vec();
        c.extend_from_slice(&zeros);
        let i = big.index_of(&c).expect("embedded index");
        values[i] = Some(f.values[s].clone());
    }
    for (coords, h) in entries {
        let i = big
            .index_of(coords)
            .ok_or_else(|| Error::PrefilterInvalid(format!("index {:?} is outside the extended monoid", coords)))?;
        if !f.lattice.is_normal(h) {
            return Err(Error::PrefilterInvalid(format!("subgroup at {} is not normal", big.label(i))));
        }
        values[i] = Some(h.clone());
    }
    let mut pool = Pool::new(f.lattice.as_ref());
    let assigned: Vec<usize> = big.elements().filter(|&s| values[s].is_some()).collect();
    for y in big.elements() {
        if values[y].is_some() || !assigned.iter().any(|&x| big.leq(y, x)) {
            continue;
        }
        let mut acc = None;
        for &x in assigned.iter().filter(|&&x| big.leq(y, x)) {
            let id = pool.intern(values[x].as_ref().unwrap());
            acc = pool.join_opt(acc, id)?;
        }
        values[y] = acc.map(|a| pool.get(a).clone());
    }
    let p = Prefilter { monoid: big, lattice: f.lattice.clone(), values };
    let report = p.validate();
    if !report.valid {
        return Err(Error::PrefilterInvalid(format!("{:?}", report.problems)));
    }
    let closed = p.close(class_hint)?;
    Ok((closed, p))
}
