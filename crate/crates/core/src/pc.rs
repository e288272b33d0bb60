//! Finite polycyclic groups given by power-commutator presentations.
//!
//! Elements are exponent vectors in normal form.  Relative orders must be
//! prime; composite cyclic layers are refined before they reach this module.

use std::collections::{BTreeSet, HashSet};
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub type Elem = Vec<u32>;
/// A word over generators: `(index, exponent)` pairs, 0-based indices.
pub type Word = Vec<(usize, i64)>;

pub const DEFAULT_ENUM_CAP: usize = 200_000;

#[derive(Clone, Debug)]
pub struct PcGroup {
    n: usize,
    orders: Vec<u32>,
    power: Vec<Elem>,
    // conj[i][j - i - 1][k] = (g_j^k)^{g_i} for j > i
    conj: Vec<Vec<Vec<Elem>>>,
    power_words: Vec<Word>,
    comm_words: Vec<(usize, usize, Word)>,
    doubled: OnceLock<Box<PcGroup>>,
}

/// A subgroup, stored as its canonical induced generating sequence: pivots
/// with strictly increasing depth, leading exponent 1, and zeros at every
/// other pivot's depth.  Equal subgroups have equal sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    gens: Vec<Elem>,
}

impl Subgroup {
    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn depths(&self) -> Vec<usize> {
        self.gens.iter().map(|g| depth(g).expect("pivot is nontrivial")).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }
}

pub fn depth(x: &[u32]) -> Option<usize> {
    x.iter().position(|&e| e != 0)
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64 % p as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u32
}

impl PcGroup {
    /// Builds a presentation from relative orders, power relations
    /// `g_i^{m_i} = word` and commutator relations `[g_j, g_i] = word` (`j > i`).
    /// Omitted relations are trivial.
    pub fn new(orders: Vec<u32>, powers: Vec<(usize, Word)>, comms: Vec<(usize, usize, Word)>) -> Result<Self> {
        let n = orders.len();
        for (i, &m) in orders.iter().enumerate() {
            if !is_prime(m) {
                return Err(Error::InvalidPresentation(format!(
                    "relative order {} of g{} is not prime",
                    m,
                    i + 1
                )));
            }
        }
        let mut power_words = vec![Vec::new(); n];
        for (i, w) in powers {
            if i >= n {
                return Err(Error::UnknownGenerator(i + 1));
            }
            if let Some(&(g, _)) = w.iter().find(|&&(g, _)| g <= i) {
                return Err(Error::InvalidPresentation(format!(
                    "power relation of g{} mentions g{}",
                    i + 1,
                    g + 1
                )));
            }
            power_words[i] = w;
        }
        let mut comm_table: Vec<Vec<Word>> = vec![vec![Vec::new(); n]; n];
        for (j, i, w) in &comms {
            let (j, i) = (*j, *i);
            if j >= n || i >= n {
                return Err(Error::UnknownGenerator(j.max(i) + 1));
            }
            if j <= i {
                return Err(Error::InvalidPresentation(format!(
                    "commutator [g{},g{}] must have the larger index first",
                    j + 1,
                    i + 1
                )));
            }
            if let Some(&(g, _)) = w.iter().find(|&&(g, _)| g <= i) {
                return Err(Error::InvalidPresentation(format!(
                    "commutator [g{},g{}] mentions g{}",
                    j + 1,
                    i + 1,
                    g + 1
                )));
            }
            comm_table[j][i] = w.clone();
        }
        for (_, _, w) in &comms {
            for &(g, _) in w {
                if g >= n {
                    return Err(Error::UnknownGenerator(g + 1));
                }
            }
        }
        let mut grp = PcGroup {
            n,
            orders: orders.clone(),
            power: vec![vec![0; n]; n],
            conj: vec![Vec::new(); n],
            power_words: power_words.clone(),
            comm_words: comms,
            doubled: OnceLock::new(),
        };
        // Bottom-up: the tables for generators above i are complete when row i is built.
        for i in (0..n).rev() {
            grp.power[i] = grp.collect(&power_words[i])?;
            let mut row = Vec::with_capacity(n - i - 1);
            for j in i + 1..n {
                let mut w: Word = vec![(j, 1)];
                w.extend(comm_table[j][i].iter().cloned());
                let c1 = grp.collect(&w)?;
                let mut pows = vec![grp.identity(), c1.clone()];
                for _ in 2..orders[j] {
                    let next = grp.mul(pows.last().unwrap(), &c1);
                    pows.push(next);
                }
                row.push(pows);
            }
            grp.conj[i] = row;
        }
        Ok(grp)
    }

    pub fn ngens(&self) -> usize {
        self.n
    }

    pub fn relative_orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn power_words(&self) -> &[Word] {
        &self.power_words
    }

    pub fn comm_words(&self) -> &[(usize, usize, Word)] {
        &self.comm_words
    }

    pub fn identity(&self) -> Elem {
        vec![0; self.n]
    }

    pub fn gen(&self, i: usize) -> Elem {
        let mut e = self.identity();
        e[i] = 1;
        e
    }

    pub fn group_order(&self) -> u128 {
        self.orders.iter().map(|&m| m as u128).product()
    }

    /// Normal form of a word.
    pub fn collect(&self, word: &[(usize, i64)]) -> Result<Elem> {
        let mut x = self.identity();
        for &(g, e) in word {
            if g >= self.n {
                return Err(Error::UnknownGenerator(g + 1));
            }
            let p = self.pow(&self.gen(g), e);
            x = self.mul(&x, &p);
        }
        Ok(x)
    }

    // x <- x * g_i^k with 0 < k < m_i
    fn mul_gen(&self, x: &mut [u32], i: usize, k: u32) {
        let n = self.n;
        let mut tail: Option<Elem> = None;
        if x[i + 1..].iter().any(|&e| e != 0) {
            let mut s = vec![0u32; n];
            s[i + 1..].copy_from_slice(&x[i + 1..]);
            for e in x[i + 1..].iter_mut() {
                *e = 0;
            }
            for _ in 0..k {
                s = self.conj_by_gen(&s, i);
            }
            tail = Some(s);
        }
        let m = self.orders[i];
        let e = x[i] + k;
        let tail = if e >= m {
            x[i] = e - m;
            match tail {
                Some(t) => Some(self.mul(&self.power[i], &t)),
                None => Some(self.power[i].clone()),
            }
        } else {
            x[i] = e;
            tail
        };
        if let Some(t) = tail {
            x[i + 1..].copy_from_slice(&t[i + 1..]);
        }
    }

    // s^{g_i} for s supported above i
    fn conj_by_gen(&self, s: &[u32], i: usize) -> Elem {
        let mut r = self.identity();
        for j in i + 1..self.n {
            let e = s[j];
            if e != 0 {
                r = self.mul(&r, &self.conj[i][j - i - 1][e as usize]);
            }
        }
        r
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Elem {
        let mut x = a.to_vec();
        for (j, &e) in b.iter().enumerate() {
            if e != 0 {
                self.mul_gen(&mut x, j, e);
            }
        }
        x
    }

    pub fn inv(&self, a: &[u32]) -> Elem {
        let mut cur = a.to_vec();
        let mut b = self.identity();
        for i in 0..self.n {
            let k = cur[i];
            if k != 0 {
                let t = self.orders[i] - k;
                self.mul_gen(&mut cur, i, t);
                self.mul_gen(&mut b, i, t);
            }
        }
        b
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn comm(&self, a: &[u32], b: &[u32]) -> Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        // [a,b] = (ba)^-1 (ab)
        self.mul(&self.inv(&ba), &ab)
    }

    pub fn pow(&self, a: &[u32], k: i64) -> Elem {
        let (mut base, mut k) = if k < 0 { (self.inv(a), k.unsigned_abs()) } else { (a.to_vec(), k as u64) };
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn conjugate(&self, a: &[u32], by: &[u32]) -> Elem {
        self.mul(&self.inv(by), &self.mul(a, by))
    }

    pub fn is_identity(&self, a: &[u32]) -> bool {
        a.iter().all(|&e| e == 0)
    }

    pub fn elem_order(&self, a: &[u32]) -> u64 {
        let mut x = a.to_vec();
        let mut k = 1u64;
        while !self.is_identity(&x) {
            x = self.mul(&x, a);
            k += 1;
        }
        k
    }

    /// Overlap consistency tests; returns the first failing overlap.
    pub fn check_consistency(&self) -> std::result::Result<(), String> {
        let n = self.n;
        let g: Vec<Elem> = (0..n).map(|i| self.gen(i)).collect();
        let gp = |i: usize, e: u32| {
            let mut x = self.identity();
            x[i] = e;
            x
        };
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let l = self.mul(&self.mul(&g[k], &g[j]), &g[i]);
                    let r = self.mul(&g[k], &self.mul(&g[j], &g[i]));
                    if l != r {
                        return Err(format!("(g{} g{}) g{}", k + 1, j + 1, i + 1));
                    }
                }
            }
        }
        for j in 0..n {
            let mj = self.orders[j];
            for i in 0..j {
                let l = self.mul(&self.power[j], &g[i]);
                let r = self.mul(&gp(j, mj - 1), &self.mul(&g[j], &g[i]));
                if l != r {
                    return Err(format!("g{}^{} g{}", j + 1, mj, i + 1));
                }
                let mi = self.orders[i];
                let l = self.mul(&g[j], &self.power[i]);
                let r = self.mul(&self.mul(&g[j], &g[i]), &gp(i, mi - 1));
                if l != r {
                    return Err(format!("g{} g{}^{}", j + 1, i + 1, mi));
                }
            }
            let l = self.mul(&self.power[j], &g[j]);
            let r = self.mul(&g[j], &self.power[j]);
            if l != r {
                return Err(format!("g{}^{} g{}", j + 1, mj + 1, j + 1));
            }
        }
        Ok(())
    }

    // ---- subgroups ----

    pub fn trivial(&self) -> Subgroup {
        Subgroup { gens: Vec::new() }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { gens: (0..self.n).map(|i| self.gen(i)).collect() }
    }

    pub fn subgroup(&self, gens: &[Elem]) -> Subgroup {
        self.closure(gens.to_vec(), &[])
    }

    pub fn normal_closure(&self, gens: &[Elem]) -> Subgroup {
        let g: Vec<Elem> = (0..self.n).map(|i| self.gen(i)).collect();
        self.closure(gens.to_vec(), &g)
    }

    pub fn subgroup_with(&self, gens: &[Elem], normal_closure: bool) -> Subgroup {
        if normal_closure {
            self.normal_closure(gens)
        } else {
            self.subgroup(gens)
        }
    }

    fn closure(&self, seeds: Vec<Elem>, conjugators: &[Elem]) -> Subgroup {
        let mut table = Table::new(self.n);
        let mut queue = seeds;
        while let Some(x) = queue.pop() {
            let x = table.sift(self, x);
            let d = match depth(&x) {
                Some(d) => d,
                None => continue,
            };
            let lead = x[d];
            let x = if lead == 1 { x } else { self.pow(&x, inv_mod(lead, self.orders[d]) as i64) };
            queue.push(self.pow(&x, self.orders[d] as i64));
            for y in table.pivots() {
                queue.push(self.comm(&x, y));
            }
            for c in conjugators {
                queue.push(self.comm(&x, c));
            }
            table.insert(self, d, x);
        }
        table.canonical(self)
    }

    pub fn contains(&self, h: &Subgroup, x: &[u32]) -> bool {
        let mut x = x.to_vec();
        for g in &h.gens {
            let d = depth(g).unwrap();
            let a = x[d];
            if a != 0 {
                x = self.mul(&x, &self.pow(g, (self.orders[d] - a) as i64));
            }
        }
        self.is_identity(&x)
    }

    /// `k <= h`.
    pub fn is_subgroup_of(&self, k: &Subgroup, h: &Subgroup) -> bool {
        k.gens.iter().all(|g| self.contains(h, g))
    }

    pub fn order(&self, h: &Subgroup) -> u128 {
        h.gens.iter().map(|g| self.orders[depth(g).unwrap()] as u128).product()
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        h.gens
            .iter()
            .all(|x| (0..self.n).all(|i| self.contains(h, &self.comm(x, &self.gen(i)))))
    }

    /// Whether `h` is normalised by every element of `by`.
    pub fn is_normal_in(&self, h: &Subgroup, by: &Subgroup) -> bool {
        h.gens.iter().all(|x| by.gens.iter().all(|y| self.contains(h, &self.comm(x, y))))
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        if self.is_subgroup_of(b, a) {
            return a.clone();
        }
        if self.is_subgroup_of(a, b) {
            return b.clone();
        }
        let mut seeds = a.gens.clone();
        seeds.extend(b.gens.iter().cloned());
        self.subgroup(&seeds)
    }

    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut seeds = Vec::new();
        for x in &a.gens {
            for y in &b.gens {
                seeds.push(self.comm(x, y));
            }
        }
        let mut conj = a.gens.clone();
        conj.extend(b.gens.iter().cloned());
        self.closure(seeds, &conj)
    }

    /// Intersection; needs one argument normal unless `brute_force` is allowed.
    pub fn intersection_with(&self, a: &Subgroup, b: &Subgroup, brute_force: bool) -> Result<Subgroup> {
        if self.is_subgroup_of(a, b) {
            return Ok(a.clone());
        }
        if self.is_subgroup_of(b, a) {
            return Ok(b.clone());
        }
        if self.is_normal(a) {
            return Ok(self.layered_intersection(a, b));
        }
        if self.is_normal(b) {
            return Ok(self.layered_intersection(b, a));
        }
        if brute_force {
            return self.brute_intersection(a, b);
        }
        Err(Error::NotNormal("neither argument of the intersection is normal".into()))
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        self.intersection_with(a, b, true).expect("brute-force intersection within cap")
    }

    fn doubled(&self) -> &PcGroup {
        self.doubled.get_or_init(|| {
            let n = self.n;
            let mut orders = self.orders.clone();
            orders.extend(self.orders.iter().cloned());
            let shift = |w: &Word| w.iter().map(|&(g, e)| (g + n, e)).collect::<Word>();
            let mut powers: Vec<(usize, Word)> = Vec::new();
            for (i, w) in self.power_words.iter().enumerate() {
                powers.push((i, w.clone()));
                powers.push((i + n, shift(w)));
            }
            let mut comms = Vec::new();
            for (j, i, w) in &self.comm_words {
                comms.push((*j, *i, w.clone()));
                comms.push((j + n, i + n, shift(w)));
            }
            Box::new(PcGroup::new(orders, powers, comms).expect("product of a valid presentation"))
        })
    }

    /// Descends the pc series of `G x G` on the subgroup generated by
    /// `(k, k)` and `(h, 1)`; its trace on `1 x G` is `H n K` when `H` is normal.
    pub fn layered_intersection(&self, normal: &Subgroup, other: &Subgroup) -> Subgroup {
        let n = self.n;
        let d = self.doubled();
        let mut seeds = Vec::new();
        for k in &other.gens {
            let mut x = k.clone();
            x.extend_from_slice(k);
            seeds.push(x);
        }
        for h in &normal.gens {
            let mut x = h.clone();
            x.extend(std::iter::repeat(0).take(n));
            seeds.push(x);
        }
        let p = d.subgroup(&seeds);
        let lower: Vec<Elem> = p
            .gens
            .iter()
            .filter(|g| depth(g).unwrap() >= n)
            .map(|g| g[n..].to_vec())
            .collect();
        self.subgroup(&lower)
    }

    pub fn brute_intersection(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        let (small, big) = if self.order(a) <= self.order(b) { (a, b) } else { (b, a) };
        let elems = self.enumerate(small, DEFAULT_ENUM_CAP)?;
        let inside: Vec<Elem> = elems.into_iter().filter(|x| self.contains(big, x)).collect();
        Ok(self.subgroup(&inside))
    }

    /// All elements of `h`, as normal-form products of its pivots.
    pub fn enumerate(&self, h: &Subgroup, cap: usize) -> Result<Vec<Elem>> {
        let ord = self.order(h);
        if ord > cap as u128 {
            return Err(Error::CapExceeded(cap));
        }
        let mut out = vec![self.identity()];
        for g in h.gens.iter().rev() {
            let m = self.orders[depth(g).unwrap()];
            let mut pows = vec![self.identity()];
            for _ in 1..m {
                pows.push(self.mul(pows.last().unwrap(), g));
            }
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for p in &pows {
                for x in &out {
                    next.push(self.mul(p, x));
                }
            }
            out = next;
        }
        out.sort();
        Ok(out)
    }

    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let g = self.whole();
        let mut series = vec![g.clone()];
        loop {
            let next = self.commutator_subgroup(series.last().unwrap(), &g);
            if &next == series.last().unwrap() {
                break;
            }
            let done = next.is_trivial();
            series.push(next);
            if done {
                break;
            }
        }
        series
    }

    pub fn derived_series_of(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut series = vec![h.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_subgroup(last, last);
            if &next == last {
                break;
            }
            let done = next.is_trivial();
            series.push(next);
            if done {
                break;
            }
        }
        series
    }

    pub fn derived_series(&self) -> Vec<Subgroup> {
        self.derived_series_of(&self.whole())
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    /// Nilpotency class when nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let s = self.lower_central_series();
        if s.last().unwrap().is_trivial() {
            Some(s.len() - 1)
        } else {
            None
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class().is_some()
    }

    /// Whether some ordering of `seq` gives `<a_i..a_n>` normal in `<a_{i-1}..a_n>`
    /// with every step proper.  The given order and the depth order are tried
    /// first, then all orderings for short sequences.
    pub fn is_pcgs(&self, seq: &[Elem]) -> bool {
        if seq.iter().any(|x| self.is_identity(x)) {
            return false;
        }
        let mut by_depth = seq.to_vec();
        by_depth.sort_by_key(|x| depth(x));
        if self.is_pcgs_ordered(seq) || self.is_pcgs_ordered(&by_depth) {
            return true;
        }
        if seq.len() > 6 {
            return false;
        }
        let mut idx: Vec<usize> = (0..seq.len()).collect();
        while next_permutation(&mut idx) {
            let s: Vec<Elem> = idx.iter().map(|&i| seq[i].clone()).collect();
            if self.is_pcgs_ordered(&s) {
                return true;
            }
        }
        false
    }

    pub fn is_pcgs_ordered(&self, seq: &[Elem]) -> bool {
        let mut below = self.trivial();
        for a in seq.iter().rev() {
            let cur = self.subgroup(&[below.gens.clone(), vec![a.clone()]].concat());
            if self.order(&cur) == self.order(&below) {
                return false;
            }
            if !below.gens.iter().all(|x| self.contains(&below, &self.conjugate(x, a))) {
                return false;
            }
            below = cur;
        }
        true
    }

    /// Pc presentation of `G/N` on the generators at non-pivot depths of `N`,
    /// with the projection of elements.
    pub fn quotient(&self, nsub: &Subgroup) -> Result<Quotient> {
        if !self.is_normal(nsub) {
            return Err(Error::NotNormal("quotient by a non-normal subgroup".into()));
        }
        let pivots: BTreeSet<usize> = nsub.depths().into_iter().collect();
        let keep: Vec<usize> = (0..self.n).filter(|i| !pivots.contains(i)).collect();
        let q = Quotient { keep: keep.clone(), kernel: nsub.clone(), group: None };
        let orders: Vec<u32> = keep.iter().map(|&i| self.orders[i]).collect();
        let to_word = |x: &Elem| -> Word {
            let r = q.project(self, x);
            r.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| (i, e as i64)).collect()
        };
        let mut powers = Vec::new();
        let mut comms = Vec::new();
        for (a, &i) in keep.iter().enumerate() {
            powers.push((a, to_word(&self.power[i])));
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                let c = self.comm(&self.gen(j), &self.gen(i));
                let w = to_word(&c);
                if !w.is_empty() {
                    comms.push((b, a, w));
                }
            }
        }
        let group = PcGroup::new(orders, powers, comms)?;
        Ok(Quotient { group: Some(Box::new(group)), ..q })
    }

    pub fn format_elem(&self, x: &[u32]) -> String {
        let parts: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| if e == 1 { format!("g{}", i + 1) } else { format!("g{}^{}", i + 1, e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

#[derive(Clone, Debug)]
pub struct Quotient {
    keep: Vec<usize>,
    kernel: Subgroup,
    group: Option<Box<PcGroup>>,
}

impl Quotient {
    pub fn group(&self) -> &PcGroup {
        self.group.as_ref().expect("quotient presentation")
    }

    /// Image of an element: reduce modulo the kernel and keep the non-pivot exponents.
    pub fn project(&self, g: &PcGroup, x: &[u32]) -> Elem {
        let mut x = x.to_vec();
        for p in &self.kernel.gens {
            let d = depth(p).unwrap();
            let a = x[d];
            if a != 0 {
                x = g.mul(&x, &g.pow(p, (g.orders[d] - a) as i64));
            }
        }
        self.keep.iter().map(|&i| x[i]).collect()
    }

    pub fn project_subgroup(&self, g: &PcGroup, h: &Subgroup) -> Subgroup {
        let imgs: Vec<Elem> = h.gens.iter().map(|x| self.project(g, x)).collect();
        self.group().subgroup(&imgs)
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

struct Table {
    slots: Vec<Option<Elem>>,
    // powers of each pivot, filled on insert
    pows: Vec<Vec<Elem>>,
}

impl Table {
    fn new(n: usize) -> Self {
        Table { slots: vec![None; n], pows: vec![Vec::new(); n] }
    }

    fn pivots(&self) -> impl Iterator<Item = &Elem> {
        self.slots.iter().flatten()
    }

    fn insert(&mut self, g: &PcGroup, d: usize, x: Elem) {
        let mut pows = vec![g.identity(), x.clone()];
        for _ in 2..g.orders[d] {
            let next = g.mul(pows.last().unwrap(), &x);
            pows.push(next);
        }
        self.pows[d] = pows;
        self.slots[d] = Some(x);
    }

    fn sift(&self, g: &PcGroup, mut x: Elem) -> Elem {
        while let Some(d) = depth(&x) {
            if self.slots[d].is_none() {
                return x;
            }
            let a = x[d];
            x = g.mul(&x, &self.pows[d][(g.orders[d] - a) as usize]);
        }
        x
    }

    fn canonical(self, g: &PcGroup) -> Subgroup {
        let depths: Vec<usize> = (0..self.slots.len()).filter(|&d| self.slots[d].is_some()).collect();
        let mut gens = Vec::with_capacity(depths.len());
        for &d in &depths {
            let mut y = self.slots[d].clone().unwrap();
            for &e in depths.iter().filter(|&&e| e > d) {
                let c = y[e];
                if c != 0 {
                    y = g.mul(&y, &self.pows[e][(g.orders[e] - c) as usize]);
                }
            }
            gens.push(y);
        }
        Subgroup { gens }
    }
}

/// Distinct elements of `xs` as a set.
pub fn elem_set(xs: &[Elem]) -> HashSet<Elem> {
    xs.iter().cloned().collect()
}
