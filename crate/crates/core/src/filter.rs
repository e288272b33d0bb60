//! Filters from a finite monoid into normal subgroups.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Pool, SubgroupLattice};
use crate::monoid::Monoid;
use crate::pc::{PcGroup, Quotient, Subgroup};

pub const DEFAULT_LATTICE_CAP: usize = 4096;

#[derive(Debug)]
pub struct Filter<L: SubgroupLattice> {
    pub monoid: Arc<Monoid>,
    pub lattice: Arc<L>,
    pub values: Vec<L::Sub>,
}

impl<L: SubgroupLattice> Clone for Filter<L> {
    fn clone(&self) -> Self {
        Filter { monoid: self.monoid.clone(), lattice: self.lattice.clone(), values: self.values.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotNormal { s: usize },
    /// `s <= t` but the value at `s` does not contain the value at `t`.
    OrderReversal { s: usize, t: usize },
    /// `[phi_s, phi_t]` is not inside `phi_{s+t}`.
    Commutator { s: usize, t: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug)]
pub struct LatticeClosure<S> {
    /// Members, largest order first.
    pub nodes: Vec<S>,
    /// Covering pairs `(upper, lower)`.
    pub edges: Vec<(usize, usize)>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
}

impl<S: PartialEq> LatticeClosure<S> {
    pub fn position(&self, s: &S) -> Option<usize> {
        self.nodes.iter().position(|x| x == s)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    /// A triple with `x ^ (y v z) != (x ^ y) v (x ^ z)`, if any.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.nodes.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let l = self.meet[x][self.join[y][z]];
                    let r = self.join[self.meet[x][y]][self.meet[x][z]];
                    if l != r {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Progress {
    pub progressive: bool,
    /// Sinks carrying nontrivial values.
    pub witnesses: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub holds: bool,
    pub image_contained: bool,
    /// For each index of the finer filter, an index of the coarser one sandwiching it.
    pub certificate: Vec<Option<usize>>,
}

impl<L: SubgroupLattice> Filter<L> {
    pub fn new(monoid: Arc<Monoid>, lattice: Arc<L>, values: Vec<L::Sub>) -> Result<Self> {
        if values.len() != monoid.len() {
            return Err(Error::InvalidFilter(format!(
                "{} values for a monoid of {} elements",
                values.len(),
                monoid.len()
            )));
        }
        Ok(Filter { monoid, lattice, values })
    }

    pub fn from_fn(monoid: Arc<Monoid>, lattice: Arc<L>, f: impl Fn(usize) -> L::Sub) -> Self {
        let values = monoid.elements().map(f).collect();
        Filter { monoid, lattice, values }
    }

    pub fn value(&self, s: usize) -> &L::Sub {
        &self.values[s]
    }

    pub fn with_values(&self, values: Vec<L::Sub>) -> Self {
        Filter { monoid: self.monoid.clone(), lattice: self.lattice.clone(), values }
    }

    /// Distinct values, largest order first, ties by subgroup key.
    pub fn image(&self) -> Vec<L::Sub> {
        let set: BTreeSet<L::Sub> = self.values.iter().cloned().collect();
        let mut v: Vec<L::Sub> = set.into_iter().collect();
        v.sort_by(|a, b| self.lattice.order(b).cmp(&self.lattice.order(a)).then(a.cmp(b)));
        v
    }

    pub fn validate(&self) -> FilterReport {
        let mut pool = Pool::new(self.lattice.as_ref());
        let ids: Vec<usize> = self.values.iter().map(|v| pool.intern(v)).collect();
        let mut violations = Vec::new();
        let m = &self.monoid;
        let mut normal: HashMap<usize, bool> = HashMap::new();
        for s in m.elements() {
            let ok = *normal.entry(ids[s]).or_insert_with(|| self.lattice.is_normal(&self.values[s]));
            if !ok {
                violations.push(Violation::NotNormal { s });
            }
        }
        for s in m.elements() {
            for t in m.elements() {
                if s != t && m.leq(s, t) && !pool.leq(ids[t], ids[s]) {
                    violations.push(Violation::OrderReversal { s, t });
                }
            }
        }
        for s in m.elements() {
            for t in s..m.len() {
                let u = m.add(s, t);
                let ok = match pool.commutator(ids[s], ids[t]) {
                    Ok(c) => pool.leq(c, ids[u]),
                    Err(_) => false,
                };
                if !ok {
                    violations.push(Violation::Commutator { s, t });
                }
            }
        }
        FilterReport { valid: violations.is_empty(), violations }
    }

    /// `d phi_s` is the join of `phi_{s+t}` over nonzero `t`.
    pub fn boundary(&self) -> Result<Filter<L>> {
        let mut pool = Pool::new(self.lattice.as_ref());
        let ids: Vec<usize> = self.values.iter().map(|v| pool.intern(v)).collect();
        let m = &self.monoid;
        let zero = m.zero();
        let mut out = Vec::with_capacity(m.len());
        for s in m.elements() {
            let parts: BTreeSet<usize> =
                m.elements().filter(|&t| t != zero).map(|t| ids[m.add(s, t)]).collect();
            let mut acc = None;
            for p in parts {
                acc = pool.join_opt(acc, p)?;
            }
            let v = match acc {
                Some(a) => a,
                None => pool
                    .trivial()
                    .ok_or_else(|| Error::MissingEntry("trivial subgroup for an empty join".into()))?,
            };
            out.push(pool.get(v).clone());
        }
        Ok(self.with_values(out))
    }

    /// Meet/join closure of the image, with covering edges.
    pub fn lattice_closure(&self, cap: usize) -> Result<LatticeClosure<L::Sub>> {
        closure_of(self.lattice.as_ref(), &self.image(), cap)
    }

    /// Nontrivial values at sinks.  Saturated coordinates of a lifted free
    /// monoid model unbounded tails and are not counted as sinks.
    pub fn progress(&self) -> Progress {
        let m = &self.monoid;
        let witnesses: Vec<usize> = m
            .sinks()
            .into_iter()
            .filter(|&s| !(m.models_free() && m.on_truncation_boundary(s)))
            .filter(|&s| !self.lattice.is_trivial(&self.values[s]))
            .collect();
        Progress { progressive: witnesses.is_empty(), witnesses }
    }

    pub fn is_progressive(&self) -> bool {
        self.progress().progressive
    }

    /// Intersection of all values.
    pub fn minimal_member(&self) -> Result<L::Sub> {
        let mut pool = Pool::new(self.lattice.as_ref());
        let mut acc: Option<usize> = None;
        for v in self.image() {
            let id = pool.intern(&v);
            acc = Some(match acc {
                None => id,
                Some(a) => pool.meet(a, id)?,
            });
        }
        Ok(pool.get(acc.expect("nonempty monoid")).clone())
    }

    /// Whether `self` refines `coarse`: the image of `coarse` is contained in
    /// ours and each of our values sits between some value of `coarse` and its boundary.
    pub fn refines(&self, coarse: &Filter<L>) -> Result<Refinement> {
        let mine: BTreeSet<&L::Sub> = self.values.iter().collect();
        let image_contained = coarse.values.iter().all(|v| mine.contains(v));
        let db = coarse.boundary()?;
        let certificate: Vec<Option<usize>> = self
            .values
            .iter()
            .map(|v| {
                coarse.monoid.elements().find(|&t| {
                    self.lattice.leq(&db.values[t], v) && self.lattice.leq(v, &coarse.values[t])
                })
            })
            .collect();
        let holds = image_contained && certificate.iter().all(|c| c.is_some());
        Ok(Refinement { holds, image_contained, certificate })
    }

    /// The filter pulled back along `map: new index -> old index`.
    pub fn transport(&self, monoid: Arc<Monoid>, map: &[usize]) -> Filter<L> {
        let values = map.iter().map(|&i| self.values[i].clone()).collect();
        Filter { monoid, lattice: self.lattice.clone(), values }
    }

    /// Values in the monoid's linear extension, labelled.
    pub fn table(&self) -> Vec<(String, String)> {
        self.monoid
            .elements()
            .map(|s| (self.monoid.label(s), self.lattice.describe(&self.values[s])))
            .collect()
    }
}

/// Meet/join closure of `gens` under the lattice operations.
pub fn closure_of<L: SubgroupLattice>(lattice: &L, gens: &[L::Sub], cap: usize) -> Result<LatticeClosure<L::Sub>> {
    let mut pool = Pool::new(lattice);
    let mut members: Vec<usize> = Vec::new();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for g in gens {
        let id = pool.intern(g);
        if seen.insert(id) {
            members.push(id);
        }
    }
    let mut i = 0;
    while i < members.len() {
        for j in 0..=i {
            let (a, b) = (members[i], members[j]);
            for c in [pool.join(a, b)?, pool.meet(a, b)?] {
                if seen.insert(c) {
                    members.push(c);
                    if members.len() > cap {
                        return Err(Error::CapExceeded(cap));
                    }
                }
            }
        }
        i += 1;
    }
    members.sort_by(|&a, &b| pool.order(b).cmp(&pool.order(a)).then(pool.get(a).cmp(pool.get(b))));
    let n = members.len();
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut le = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            le[a][b] = pool.leq(members[a], members[b]);
        }
    }
    let mut edges = Vec::new();
    for hi in 0..n {
        for lo in 0..n {
            if hi != lo && le[lo][hi] && !(0..n).any(|c| c != hi && c != lo && le[lo][c] && le[c][hi]) {
                edges.push((hi, lo));
            }
        }
    }
    let mut join = vec![vec![0; n]; n];
    let mut meet = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            join[a][b] = pos[&pool.join(members[a], members[b])?];
            meet[a][b] = pos[&pool.meet(members[a], members[b])?];
        }
    }
    let nodes = members.iter().map(|&m| pool.get(m).clone()).collect();
    Ok(LatticeClosure { nodes, edges, join, meet })
}

impl Filter<PcGroup> {
    /// The induced filter on `G / H` for the minimal member `H`.
    pub fn quotient_filter(&self, h: &Subgroup) -> Result<(Filter<PcGroup>, Quotient)> {
        let g = self.lattice.as_ref();
        let min = self.minimal_member()?;
        if &min != h {
            return Err(Error::PreconditionFailed("quotient needs the minimal member of the filter".into()));
        }
        let q = g.quotient(h)?;
        let values = self.values.iter().map(|v| q.project_subgroup(g, v)).collect();
        let f = Filter { monoid: self.monoid.clone(), lattice: Arc::new(q.group().clone()), values };
        Ok((f, q))
    }
}
