//! The subgroup arithmetic consumed by filters, with a memoising pool.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::Result;
use crate::pc::{PcGroup, Subgroup};
use crate::section::Section;

/// Normal-subgroup arithmetic shared by the pc engine and the table backend.
pub trait SubgroupLattice {
    type Sub: Clone + Eq + Hash + Ord + Debug;

    fn top(&self) -> Self::Sub;
    /// The trivial subgroup, when the backend knows it.
    fn trivial(&self) -> Option<Self::Sub>;
    fn join(&self, a: &Self::Sub, b: &Self::Sub) -> Result<Self::Sub>;
    fn meet(&self, a: &Self::Sub, b: &Self::Sub) -> Result<Self::Sub>;
    fn commutator(&self, a: &Self::Sub, b: &Self::Sub) -> Result<Self::Sub>;
    fn leq(&self, a: &Self::Sub, b: &Self::Sub) -> bool;
    fn order(&self, a: &Self::Sub) -> u128;
    fn is_normal(&self, a: &Self::Sub) -> bool;
    /// Abelian invariants of `top / bottom`.
    fn section_invariants(&self, top: &Self::Sub, bottom: &Self::Sub) -> Result<Vec<u64>>;
    fn describe(&self, a: &Self::Sub) -> String;
    fn is_nilpotent(&self) -> bool;
    /// Whether the derived series of `a` reaches a subgroup of `floor`.
    fn derived_reaches(&self, a: &Self::Sub, floor: &Self::Sub) -> Result<bool>;
    fn as_pc(&self) -> Option<&PcGroup> {
        None
    }

    fn is_trivial(&self, a: &Self::Sub) -> bool {
        self.order(a) == 1
    }
}

impl SubgroupLattice for PcGroup {
    type Sub = Subgroup;

    fn top(&self) -> Subgroup {
        self.whole()
    }

    fn trivial(&self) -> Option<Subgroup> {
        Some(PcGroup::trivial(self))
    }

    fn join(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        Ok(PcGroup::join(self, a, b))
    }

    fn meet(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.intersection_with(a, b, true)
    }

    fn commutator(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        Ok(self.commutator_subgroup(a, b))
    }

    fn leq(&self, a: &Subgroup, b: &Subgroup) -> bool {
        self.is_subgroup_of(a, b)
    }

    fn order(&self, a: &Subgroup) -> u128 {
        PcGroup::order(self, a)
    }

    fn is_normal(&self, a: &Subgroup) -> bool {
        PcGroup::is_normal(self, a)
    }

    fn section_invariants(&self, top: &Subgroup, bottom: &Subgroup) -> Result<Vec<u64>> {
        Ok(Section::new(self, top, bottom)?.invariants().to_vec())
    }

    fn describe(&self, a: &Subgroup) -> String {
        let gens: Vec<String> = a.gens().iter().map(|x| self.format_elem(x)).collect();
        format!("<{}>", gens.join(", "))
    }

    fn is_nilpotent(&self) -> bool {
        PcGroup::is_nilpotent(self)
    }

    fn derived_reaches(&self, a: &Subgroup, floor: &Subgroup) -> Result<bool> {
        Ok(self.is_subgroup_of(self.derived_series_of(a).last().unwrap(), floor))
    }

    fn as_pc(&self) -> Option<&PcGroup> {
        Some(self)
    }
}

/// Interns subgroups as small ids and memoises binary operations on them.
pub struct Pool<'a, L: SubgroupLattice> {
    pub lattice: &'a L,
    subs: Vec<L::Sub>,
    ids: HashMap<L::Sub, usize>,
    joins: HashMap<(usize, usize), usize>,
    meets: HashMap<(usize, usize), usize>,
    comms: HashMap<(usize, usize), usize>,
    leqs: HashMap<(usize, usize), bool>,
}

impl<'a, L: SubgroupLattice> Pool<'a, L> {
    pub fn new(lattice: &'a L) -> Self {
        Pool {
            lattice,
            subs: Vec::new(),
            ids: HashMap::new(),
            joins: HashMap::new(),
            meets: HashMap::new(),
            comms: HashMap::new(),
            leqs: HashMap::new(),
        }
    }

    pub fn intern(&mut self, s: &L::Sub) -> usize {
        if let Some(&i) = self.ids.get(s) {
            return i;
        }
        let i = self.subs.len();
        self.subs.push(s.clone());
        self.ids.insert(s.clone(), i);
        i
    }

    pub fn get(&self, i: usize) -> &L::Sub {
        &self.subs[i]
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn top(&mut self) -> usize {
        let t = self.lattice.top();
        self.intern(&t)
    }

    pub fn trivial(&mut self) -> Option<usize> {
        self.lattice.trivial().map(|t| self.intern(&t))
    }

    fn key(a: usize, b: usize) -> (usize, usize) {
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn join(&mut self, a: usize, b: usize) -> Result<usize> {
        if a == b {
            return Ok(a);
        }
        let k = Self::key(a, b);
        if let Some(&r) = self.joins.get(&k) {
            return Ok(r);
        }
        let s = self.lattice.join(&self.subs[a], &self.subs[b])?;
        let r = self.intern(&s);
        self.joins.insert(k, r);
        Ok(r)
    }

    pub fn meet(&mut self, a: usize, b: usize) -> Result<usize> {
        if a == b {
            return Ok(a);
        }
        let k = Self::key(a, b);
        if let Some(&r) = self.meets.get(&k) {
            return Ok(r);
        }
        let s = self.lattice.meet(&self.subs[a], &self.subs[b])?;
        let r = self.intern(&s);
        self.meets.insert(k, r);
        Ok(r)
    }

    /// Join of an optional accumulator with `b`.
    pub fn join_opt(&mut self, acc: Option<usize>, b: usize) -> Result<Option<usize>> {
        Ok(Some(match acc {
            None => b,
            Some(a) => self.join(a, b)?,
        }))
    }

    pub fn commutator(&mut self, a: usize, b: usize) -> Result<usize> {
        let k = Self::key(a, b);
        if let Some(&r) = self.comms.get(&k) {
            return Ok(r);
        }
        let s = self.lattice.commutator(&self.subs[a], &self.subs[b])?;
        let r = self.intern(&s);
        self.comms.insert(k, r);
        Ok(r)
    }

    pub fn leq(&mut self, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        if let Some(&r) = self.leqs.get(&(a, b)) {
            return r;
        }
        let r = self.lattice.leq(&self.subs[a], &self.subs[b]);
        self.leqs.insert((a, b), r);
        r
    }

    pub fn order(&self, a: usize) -> u128 {
        self.lattice.order(&self.subs[a])
    }
}
