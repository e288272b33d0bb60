//! A subgroup lattice given by tables over named nodes.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;

#[derive(Clone, Debug, Default)]
pub struct SubgroupTable {
    names: Vec<String>,
    orders: Vec<u128>,
    below_pairs: Vec<(usize, usize)>,
    below: Vec<Vec<bool>>,
    joins: HashMap<(usize, usize), usize>,
    meets: HashMap<(usize, usize), usize>,
    comms: Vec<((usize, usize), usize)>,
    sections: HashMap<(usize, usize), Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableReport {
    pub valid: bool,
    pub problems: Vec<String>,
}

impl SubgroupTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, name: &str, order: u128) -> usize {
        if let Some(i) = self.node(name) {
            self.orders[i] = order;
            return i;
        }
        self.names.push(name.to_string());
        self.orders.push(order);
        self.recompute();
        self.names.len() - 1
    }

    pub fn node(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Records `a <= b`.
    pub fn add_below(&mut self, a: usize, b: usize) {
        self.below_pairs.push((a, b));
        self.recompute();
    }

    pub fn set_join(&mut self, a: usize, b: usize, c: usize) {
        self.joins.insert((a, b), c);
    }

    pub fn set_meet(&mut self, a: usize, b: usize, c: usize) {
        self.meets.insert((a, b), c);
    }

    pub fn set_commutator(&mut self, a: usize, b: usize, c: usize) {
        self.comms.push(((a, b), c));
    }

    pub fn set_section(&mut self, top: usize, bottom: usize, invariants: Vec<u64>) {
        self.sections.insert((top, bottom), invariants);
    }

    fn recompute(&mut self) {
        let n = self.names.len();
        let mut b = vec![vec![false; n]; n];
        for (i, row) in b.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(x, y) in &self.below_pairs {
            b[x][y] = true;
        }
        // nodes of order 1 sit below everything
        for i in 0..n {
            if self.orders[i] == 1 {
                for j in 0..n {
                    b[i][j] = true;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                if b[i][k] {
                    for j in 0..n {
                        if b[k][j] {
                            b[i][j] = true;
                        }
                    }
                }
            }
        }
        self.below = b;
    }

    fn name_of(&self, i: usize) -> &str {
        &self.names[i]
    }

    fn top_node(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|i| self.below[i][t]))
    }

    fn trivial_node(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.orders[i] == 1)
    }

    fn lub(&self, a: usize, b: usize) -> Option<usize> {
        let ups: Vec<usize> = (0..self.len()).filter(|&u| self.below[a][u] && self.below[b][u]).collect();
        ups.iter().copied().find(|&u| ups.iter().all(|&w| self.below[u][w]))
    }

    fn glb(&self, a: usize, b: usize) -> Option<usize> {
        let downs: Vec<usize> = (0..self.len()).filter(|&u| self.below[u][a] && self.below[u][b]).collect();
        downs.iter().copied().find(|&u| downs.iter().all(|&w| self.below[w][u]))
    }

    fn comm_entry(&self, a: usize, b: usize) -> Option<usize> {
        self.comms.iter().find(|((x, y), _)| (*x, *y) == (a, b) || (*x, *y) == (b, a)).map(|&(_, c)| c)
    }

    pub fn validate(&self) -> TableReport {
        let n = self.len();
        let mut problems = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.below[i][j] && self.below[j][i] {
                    if i < j {
                        problems.push(format!("below is not antisymmetric: {} and {}", self.names[i], self.names[j]));
                    }
                } else if i != j && self.below[i][j] {
                    let (oi, oj) = (self.orders[i], self.orders[j]);
                    if oi == 0 || oj % oi != 0 || oi >= oj {
                        problems.push(format!(
                            "order of {} does not properly divide order of {}",
                            self.names[i], self.names[j]
                        ));
                    }
                }
            }
        }
        if n > 0 && self.top_node().is_none() {
            problems.push("no top node".into());
        }
        for (&(a, b), &c) in &self.joins {
            if self.lub(a, b) != Some(c) {
                problems.push(format!("join {} {} = {} is not the least upper bound", self.names[a], self.names[b], self.names[c]));
            }
        }
        for (&(a, b), &c) in &self.meets {
            if self.glb(a, b) != Some(c) {
                problems.push(format!(
                    "meet {} {} = {} is not the greatest lower bound",
                    self.names[a], self.names[b], self.names[c]
                ));
            }
        }
        for (i, &((a, b), c)) in self.comms.iter().enumerate() {
            for &((x, y), d) in &self.comms[i + 1..] {
                if ((x, y) == (a, b) || (x, y) == (b, a)) && d != c {
                    problems.push(format!(
                        "commutator of {} and {} is asymmetric: {} vs {}",
                        self.names[a], self.names[b], self.names[c], self.names[d]
                    ));
                }
            }
            if !(self.below[c][a] && self.below[c][b]) {
                problems.push(format!(
                    "commutator of {} and {} is not below both: {}",
                    self.names[a], self.names[b], self.names[c]
                ));
            }
            for &((x, y), d) in &self.comms {
                // [a,b] <= [x,y] whenever a <= x and b <= y (in either pairing)
                let dominated = (self.below[a][x] && self.below[b][y]) || (self.below[a][y] && self.below[b][x]);
                if dominated && !self.below[c][d] {
                    problems.push(format!(
                        "commutator is not monotone: [{},{}] = {} vs [{},{}] = {}",
                        self.names[a], self.names[b], self.names[c], self.names[x], self.names[y], self.names[d]
                    ));
                }
            }
        }
        for (&(h, k), inv) in &self.sections {
            if !self.below[k][h] {
                problems.push(format!("section {}/{} has bottom not below top", self.names[h], self.names[k]));
                continue;
            }
            let prod: u128 = inv.iter().map(|&d| d as u128).product();
            if self.orders[k] == 0 || prod * self.orders[k] != self.orders[h] {
                problems.push(format!("section {}/{} invariants do not multiply to the index", self.names[h], self.names[k]));
            }
        }
        problems.sort();
        problems.dedup();
        TableReport { valid: problems.is_empty(), problems }
    }

    /// `GL(2,7)` over `SL(2,7)`, optionally with the trivial subgroup.
    pub fn gl27(with_trivial: bool) -> Self {
        let mut t = SubgroupTable::new();
        let gl = t.add_node("GL", 2016);
        let sl = t.add_node("SL", 336);
        t.add_below(sl, gl);
        t.set_commutator(gl, gl, sl);
        t.set_commutator(gl, sl, sl);
        t.set_commutator(sl, sl, sl);
        t.set_section(gl, sl, vec![6]);
        if with_trivial {
            let one = t.add_node("1", 1);
            t.add_below(one, sl);
        }
        t
    }
}

impl SubgroupLattice for SubgroupTable {
    type Sub = usize;

    fn top(&self) -> usize {
        self.top_node().expect("validated table has a top")
    }

    fn trivial(&self) -> Option<usize> {
        self.trivial_node()
    }

    fn join(&self, a: &usize, b: &usize) -> Result<usize> {
        let (a, b) = (*a, *b);
        if let Some(&c) = self.joins.get(&(a, b)).or_else(|| self.joins.get(&(b, a))) {
            return Ok(c);
        }
        self.lub(a, b)
            .ok_or_else(|| Error::MissingEntry(format!("join {} {}", self.name_of(a), self.name_of(b))))
    }

    fn meet(&self, a: &usize, b: &usize) -> Result<usize> {
        let (a, b) = (*a, *b);
        if let Some(&c) = self.meets.get(&(a, b)).or_else(|| self.meets.get(&(b, a))) {
            return Ok(c);
        }
        self.glb(a, b)
            .ok_or_else(|| Error::MissingEntry(format!("meet {} {}", self.name_of(a), self.name_of(b))))
    }

    fn commutator(&self, a: &usize, b: &usize) -> Result<usize> {
        let (a, b) = (*a, *b);
        if let Some(c) = self.comm_entry(a, b) {
            return Ok(c);
        }
        if self.orders[a] == 1 {
            return Ok(a);
        }
        if self.orders[b] == 1 {
            return Ok(b);
        }
        Err(Error::MissingEntry(format!("commutator {} {}", self.name_of(a), self.name_of(b))))
    }

    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.below[*a][*b]
    }

    fn order(&self, a: &usize) -> u128 {
        self.orders[*a]
    }

    fn is_normal(&self, _a: &usize) -> bool {
        true
    }

    fn section_invariants(&self, top: &usize, bottom: &usize) -> Result<Vec<u64>> {
        if top == bottom {
            return Ok(Vec::new());
        }
        self.sections
            .get(&(*top, *bottom))
            .cloned()
            .ok_or_else(|| Error::MissingEntry(format!("section {}/{}", self.name_of(*top), self.name_of(*bottom))))
    }

    fn describe(&self, a: &usize) -> String {
        self.names[*a].clone()
    }

    fn is_nilpotent(&self) -> bool {
        let Some(top) = self.top_node() else { return false };
        let mut cur = top;
        for _ in 0..=self.len() {
            if self.orders[cur] == 1 {
                return true;
            }
            match self.commutator(&cur, &top) {
                Ok(next) if next != cur => cur = next,
                _ => return false,
            }
        }
        false
    }

    fn derived_reaches(&self, a: &usize, floor: &usize) -> Result<bool> {
        let mut cur = *a;
        for _ in 0..=self.len() {
            if self.below[cur][*floor] {
                return Ok(true);
            }
            let next = self.commutator(&cur, &cur)?;
            if next == cur {
                return Ok(false);
            }
            cur = next;
        }
        Ok(self.below[cur][*floor])
    }
}
