//! The graded Lie ring of a filter: components `phi_s / d phi_s` and brackets.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::lattice::SubgroupLattice;
use crate::monoid::Monoid;
use crate::pc::{Elem, PcGroup};
use crate::section::Section;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub index: usize,
    pub label: String,
    pub invariants: Vec<u64>,
    /// Position of the first basis vector in the global basis.
    pub offset: usize,
}

impl Component {
    pub fn order(&self) -> u128 {
        self.invariants.iter().map(|&d| d as u128).product()
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

/// A homogeneous-basis description of the ring.  Elements are coefficient
/// vectors over the global basis.
#[derive(Clone, Debug)]
pub struct GradedLieRing {
    pub monoid: Arc<Monoid>,
    pub components: Vec<Component>,
    /// Whether brackets were computed (pc backend).
    pub has_brackets: bool,
    /// Modulus of each global basis vector.
    moduli: Vec<u64>,
    /// Component of each global basis vector.
    owner: Vec<usize>,
    /// `[b_i, b_j]` for `i < j`, as sparse combinations.
    brackets: BTreeMap<(usize, usize), Vec<(usize, u64)>>,
    pc: Option<PcData>,
}

#[derive(Clone, Debug)]
struct PcData {
    group: Arc<PcGroup>,
    sections: Vec<Section>,
}

pub type LieElem = Vec<u64>;

impl GradedLieRing {
    /// Components over every index with `phi_s != d phi_s`, ordered along a
    /// linear extension of the monoid order.  Brackets only on the pc backend.
    pub fn from_filter<L: SubgroupLattice>(f: &Filter<L>) -> Result<Self> {
        let d = f.boundary()?;
        let m = f.monoid.clone();
        let zero = m.zero();
        let mut components = Vec::new();
        let mut moduli = Vec::new();
        let mut owner = Vec::new();
        for s in m.linear_extension() {
            if s == zero || f.values[s] == d.values[s] {
                continue;
            }
            let invariants = f.lattice.section_invariants(&f.values[s], &d.values[s])?;
            if invariants.is_empty() {
                continue;
            }
            let offset = moduli.len();
            for &q in &invariants {
                moduli.push(q);
                owner.push(components.len());
            }
            components.push(Component { index: s, label: m.label(s), invariants, offset });
        }
        Ok(GradedLieRing { monoid: m, components, has_brackets: false, moduli, owner, brackets: BTreeMap::new(), pc: None })
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn owner(&self, i: usize) -> usize {
        self.owner[i]
    }

    pub fn component_at(&self, s: usize) -> Option<usize> {
        self.components.iter().position(|c| c.index == s)
    }

    pub fn total_order(&self) -> u128 {
        self.components.iter().map(|c| c.order()).product()
    }

    /// Index label to invariants.
    pub fn hilbert_data(&self) -> Vec<(String, Vec<u64>)> {
        self.components.iter().map(|c| (c.label.clone(), c.invariants.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn basis_vector(&self, i: usize) -> LieElem {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    fn reduce(&self, v: &mut [u64]) {
        for (x, &q) in v.iter_mut().zip(&self.moduli) {
            *x %= q;
        }
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> LieElem {
        let mut v: Vec<u64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&mut v);
        v
    }

    pub fn neg(&self, a: &[u64]) -> LieElem {
        a.iter().zip(&self.moduli).map(|(&x, &q)| (q - x % q) % q).collect()
    }

    fn basis_bracket(&self, i: usize, j: usize) -> Vec<(usize, u64)> {
        if i == j {
            return Vec::new();
        }
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            self.brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|&(k, c)| (k, (self.moduli[k] - c % self.moduli[k]) % self.moduli[k])).collect())
                .unwrap_or_default()
        }
    }

    /// Bilinear extension of the basis brackets.
    pub fn bracket(&self, u: &[u64], v: &[u64]) -> LieElem {
        let mut out = vec![0u64; self.rank()];
        for (i, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                for (k, c) in self.basis_bracket(i, j) {
                    let q = self.moduli[k] as u128;
                    out[k] = ((out[k] as u128 + a as u128 * b as u128 % q * c as u128) % q) as u64;
                }
            }
        }
        out
    }

    /// Nonzero structure constants `([b_i, b_j], combination)` with `i < j`.
    pub fn structure_constants(&self) -> Vec<((usize, usize), Vec<(usize, u64)>)> {
        self.brackets.iter().map(|(k, v)| (*k, v.clone())).collect()
    }

    /// Alternating and Jacobi on every basis triple.
    pub fn check_jacobi(&self) -> bool {
        let n = self.rank();
        for i in 0..n {
            let bi = self.basis_vector(i);
            if self.bracket(&bi, &bi).iter().any(|&x| x != 0) {
                return false;
            }
            for j in 0..n {
                let bj = self.basis_vector(j);
                for k in 0..n {
                    let bk = self.basis_vector(k);
                    let a = self.bracket(&bi, &self.bracket(&bj, &bk));
                    let b = self.bracket(&bj, &self.bracket(&bk, &bi));
                    let c = self.bracket(&bk, &self.bracket(&bi, &bj));
                    if self.add(&self.add(&a, &b), &c).iter().any(|&x| x != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn pc(&self) -> Result<&PcData> {
        self.pc.as_ref().ok_or_else(|| Error::Unsupported("group elements need the pc backend".into()))
    }

    pub fn group(&self) -> Option<&Arc<PcGroup>> {
        self.pc.as_ref().map(|p| &p.group)
    }

    pub fn section(&self, comp: usize) -> Option<&Section> {
        self.pc.as_ref().map(|p| &p.sections[comp])
    }

    /// Lift of a homogeneous element given by its coordinates in component `comp`.
    pub fn lift_homogeneous(&self, comp: usize, coords: &[u64]) -> Result<Elem> {
        let pc = self.pc()?;
        Ok(pc.sections[comp].lift(&pc.group, coords))
    }

    /// Lift of a basis vector, or of any element supported in one component.
    pub fn lift(&self, v: &[u64]) -> Result<Elem> {
        let comps: Vec<usize> = (0..self.rank()).filter(|&i| v[i] != 0).map(|i| self.owner[i]).collect();
        let Some(&c) = comps.first() else {
            return Ok(self.pc()?.group.identity());
        };
        if comps.iter().any(|&d| d != c) {
            return Err(Error::PreconditionFailed("element is not homogeneous".into()));
        }
        let comp = &self.components[c];
        self.lift_homogeneous(c, &v[comp.offset..comp.offset + comp.rank()])
    }

    /// Image of a group element of `phi_s` in the component at `s`.
    pub fn project(&self, comp: usize, x: &[u32]) -> Result<LieElem> {
        let pc = self.pc()?;
        let c = &self.components[comp];
        let coords = pc.sections[comp].coords(&pc.group, x)?;
        let mut v = vec![0; self.rank()];
        v[c.offset..c.offset + c.rank()].copy_from_slice(&coords);
        Ok(v)
    }

    /// The canonical graded basis: every global basis vector in order.
    pub fn graded_basis(&self) -> Vec<LieElem> {
        (0..self.rank()).map(|i| self.basis_vector(i)).collect()
    }

    fn component_prime(&self, c: usize) -> Result<u64> {
        let inv = &self.components[c].invariants;
        let p = inv[0];
        if inv.iter().any(|&q| q != p) || crate::groups::prime_factors(p).len() != 1 {
            return Err(Error::Unsupported(format!(
                "component {} is not elementary abelian",
                self.components[c].label
            )));
        }
        Ok(p)
    }

    /// Number of graded bases when every component is elementary abelian.
    pub fn count_graded_bases(&self) -> Result<u128> {
        let mut total: u128 = 1;
        for c in 0..self.components.len() {
            let p = self.component_prime(c)? as u128;
            let d = self.components[c].rank() as u32;
            let pd = p.pow(d);
            for i in 0..d {
                total = total.saturating_mul(pd - p.pow(i));
            }
        }
        Ok(total)
    }

    /// All graded bases, each an ordered list of homogeneous vectors.
    pub fn enumerate_graded_bases(&self, cap: usize) -> Result<Vec<Vec<LieElem>>> {
        let count = self.count_graded_bases()?;
        if count > cap as u128 {
            return Err(Error::CapExceeded(cap));
        }
        let mut per_comp: Vec<Vec<Vec<Vec<u64>>>> = Vec::new();
        for c in 0..self.components.len() {
            let p = self.component_prime(c)?;
            per_comp.push(ordered_bases(self.components[c].rank(), p));
        }
        let mut out: Vec<Vec<LieElem>> = vec![Vec::new()];
        for (c, bases) in per_comp.iter().enumerate() {
            let comp = &self.components[c];
            let mut next = Vec::with_capacity(out.len() * bases.len());
            for prefix in &out {
                for b in bases {
                    let mut full = prefix.clone();
                    for row in b {
                        let mut v = vec![0; self.rank()];
                        v[comp.offset..comp.offset + comp.rank()].copy_from_slice(row);
                        full.push(v);
                    }
                    next.push(full);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// A uniformly random graded basis (elementary abelian components).
    pub fn random_graded_basis<R: Rng>(&self, rng: &mut R) -> Result<Vec<LieElem>> {
        let mut out = Vec::new();
        for c in 0..self.components.len() {
            let p = self.component_prime(c)?;
            let comp = &self.components[c];
            let d = comp.rank();
            let mut rows: Vec<Vec<u64>> = Vec::new();
            while rows.len() < d {
                let v: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
                let mut trial = rows.clone();
                trial.push(v.clone());
                if rank_mod_p(&trial, p) == trial.len() {
                    rows.push(v);
                }
            }
            for row in rows {
                let mut v = vec![0; self.rank()];
                v[comp.offset..comp.offset + d].copy_from_slice(&row);
                out.push(v);
            }
        }
        Ok(out)
    }
}

/// Rank over `F_p` of a list of vectors.
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] + p * p - f * m[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn ordered_bases(d: usize, p: u64) -> Vec<Vec<Vec<u64>>> {
    let vectors: Vec<Vec<u64>> = (0..p.pow(d as u32))
        .map(|mut n| {
            (0..d)
                .map(|_| {
                    let x = n % p;
                    n /= p;
                    x
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut cur: Vec<Vec<u64>> = Vec::new();
    fn rec(d: usize, p: u64, vectors: &[Vec<u64>], cur: &mut Vec<Vec<u64>>, out: &mut Vec<Vec<Vec<u64>>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for v in vectors {
            cur.push(v.clone());
            if rank_mod_p(cur, p) == cur.len() {
                rec(d, p, vectors, cur, out);
            }
            cur.pop();
        }
    }
    rec(d, p, &vectors, &mut cur, &mut out);
    out
}

impl GradedLieRing {
    /// Components with sections, basis lifts and brackets from group commutators.
    pub fn from_pc_filter(f: &Filter<PcGroup>) -> Result<Self> {
        let mut ring = Self::from_filter(f)?;
        let d = f.boundary()?;
        let g = f.lattice.as_ref();
        let sections: Vec<Section> = ring
            .components
            .iter()
            .map(|c| Section::new(g, &f.values[c.index], &d.values[c.index]))
            .collect::<Result<_>>()?;
        let m = &ring.monoid;
        for (a, ca) in ring.components.iter().enumerate() {
            for (b, cb) in ring.components.iter().enumerate().skip(a) {
                let u = m.add(ca.index, cb.index);
                let Some(target) = ring.components.iter().position(|c| c.index == u) else { continue };
                let tc = &ring.components[target];
                for i in 0..ca.rank() {
                    let start = if a == b { i + 1 } else { 0 };
                    for j in start..cb.rank() {
                        let x = &sections[a].lifts()[i];
                        let y = &sections[b].lifts()[j];
                        let c = g.comm(x, y);
                        let coords = sections[target].coords(g, &c)?;
                        let combo: Vec<(usize, u64)> = coords
                            .iter()
                            .enumerate()
                            .filter(|(_, &v)| v != 0)
                            .map(|(k, &v)| (tc.offset + k, v))
                            .collect();
                        if !combo.is_empty() {
                            let (gi, gj) = (ca.offset + i, cb.offset + j);
                            let combo = if gi < gj {
                                combo
                            } else {
                                combo.into_iter().map(|(k, v)| (k, (ring.moduli[k] - v) % ring.moduli[k])).collect()
                            };
                            ring.brackets.insert((gi.min(gj), gi.max(gj)), combo);
                        }
                    }
                }
            }
        }
        ring.has_brackets = true;
        ring.pc = Some(PcData { group: f.lattice.clone(), sections });
        Ok(ring)
    }
}
