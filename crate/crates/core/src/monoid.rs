//! Finite commutative pre-ordered monoids assembled from cyclic factors.
//!
//! Elements are dense indices `0..len()`; index 0 is always the identity.
//! Element order is graded: by coordinate sum, then by coordinates in
//! descending lexicographic order, so `(1,0)` precedes `(0,1)`.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

pub const DEFAULT_SIZE_CAP: usize = 4096;

/// The cyclic monoid `C_{r,s}`: `{0, .., r+s-1}` with `i ~ j (mod s)` once both reach `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cyclic {
    pub index: u32,
    pub period: u32,
}

impl Cyclic {
    pub fn new(index: u32, period: u32) -> Self {
        assert!(period >= 1, "period must be positive");
        Cyclic { index, period }
    }

    /// Saturating truncation of the naturals at `bound`.
    pub fn truncated(bound: u32) -> Self {
        Cyclic { index: bound, period: 1 }
    }

    pub fn size(&self) -> u32 {
        self.index + self.period
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 + b as u64)
    }

    pub fn reduce(&self, t: u64) -> u32 {
        let (r, s) = (self.index as u64, self.period as u64);
        if t < r + s {
            t as u32
        } else {
            (r + (t - r) % s) as u32
        }
    }

    fn saturates(&self) -> bool {
        self.period == 1 && self.index >= 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Direct,
    /// Lexicographic with the first factor most significant.  When a leading
    /// factor is a saturating truncation, everything past a saturated
    /// coordinate is identified, which is the only way lex stays compatible.
    Lex,
    DiscreteBelow,
    /// Reflexive-transitive closure of the given coordinate pairs `(a, b)`, read `a <= b`.
    Explicit(Vec<(Vec<u32>, Vec<u32>)>),
}

#[derive(Clone, Debug)]
pub struct Monoid {
    coords: Vec<Vec<u32>>,
    labels: Vec<String>,
    lookup: HashMap<Vec<u32>, usize>,
    add: Vec<u32>,
    le: Vec<bool>,
    factors: Vec<Cyclic>,
    description: String,
    validated: bool,
    free_model: bool,
    boundary: Vec<bool>,
}

pub const INF_KEY: u32 = u32::MAX;

fn grade_key(c: &[u32]) -> (u64, Vec<std::cmp::Reverse<u32>>) {
    (
        c.iter().map(|&x| x as u64).sum(),
        c.iter().map(|&x| std::cmp::Reverse(x)).collect(),
    )
}

fn fmt_coords(c: &[u32], wild_from: Option<usize>) -> String {
    let parts: Vec<String> = c
        .iter()
        .enumerate()
        .map(|(i, x)| match wild_from {
            Some(w) if i > w => "*".to_string(),
            _ => x.to_string(),
        })
        .collect();
    format!("({})", parts.join(","))
}

struct Raw {
    coords: Vec<Vec<u32>>,
    labels: Vec<String>,
    aliases: Vec<(Vec<u32>, usize)>,
}

impl Monoid {
    /// Product of cyclic factors under `order`, validated, with the default size cap.
    pub fn new(factors: &[Cyclic], order: OrderKind) -> Result<Self> {
        Self::with_cap(factors, order, DEFAULT_SIZE_CAP)
    }

    pub fn with_cap(factors: &[Cyclic], order: OrderKind, cap: usize) -> Result<Self> {
        let size = Self::product_size(factors);
        if size > cap {
            return Err(Error::SizeCapExceeded { size, cap });
        }
        let collapse = matches!(order, OrderKind::Lex);
        let canon = |x: &[u32]| -> (Vec<u32>, Option<usize>) {
            let mut c = x.to_vec();
            if collapse {
                for i in 0..factors.len().saturating_sub(1) {
                    if factors[i].saturates() && c[i] == factors[i].index {
                        for j in i + 1..factors.len() {
                            c[j] = factors[j].size() - 1;
                        }
                        return (c, Some(i));
                    }
                }
            }
            (c, None)
        };
        let mut seen: HashMap<Vec<u32>, (Option<usize>, Vec<Vec<u32>>)> = HashMap::new();
        for raw in Self::tuples(factors) {
            let (c, w) = canon(&raw);
            seen.entry(c).or_insert((w, Vec::new())).1.push(raw);
        }
        let mut reps: Vec<(Vec<u32>, Option<usize>, Vec<Vec<u32>>)> =
            seen.into_iter().map(|(c, (w, raws))| (c, w, raws)).collect();
        reps.sort_by(|a, b| grade_key(&a.0).cmp(&grade_key(&b.0)));
        let raw = Raw {
            labels: reps.iter().map(|(c, w, _)| fmt_coords(c, *w)).collect(),
            aliases: reps
                .iter()
                .enumerate()
                .flat_map(|(i, (_, _, raws))| raws.iter().map(move |r| (r.clone(), i)))
                .collect(),
            coords: reps.iter().map(|(c, _, _)| c.clone()).collect(),
        };
        let n = raw.coords.len();
        let index: HashMap<Vec<u32>, usize> =
            raw.coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let mut add = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> = (0..factors.len())
                    .map(|k| factors[k].add(raw.coords[a][k], raw.coords[b][k]))
                    .collect();
                add[a * n + b] = index[&canon(&s).0] as u32;
            }
        }
        let le = match &order {
            OrderKind::Direct => Self::rel(n, |a, b| {
                (0..factors.len()).all(|k| factor_le(&factors[k], raw.coords[a][k], raw.coords[b][k]))
            }),
            OrderKind::Lex => Self::rel(n, |a, b| {
                for k in 0..factors.len() {
                    let (x, y) = (raw.coords[a][k], raw.coords[b][k]);
                    if x == y {
                        continue;
                    }
                    return factor_le(&factors[k], x, y);
                }
                true
            }),
            OrderKind::DiscreteBelow => Self::rel(n, |a, b| a == 0 || a == b),
            OrderKind::Explicit(pairs) => {
                let lookup: HashMap<Vec<u32>, usize> = raw.aliases.iter().cloned().collect();
                let mut le = Self::rel(n, |a, b| a == b);
                for (x, y) in pairs {
                    let a = *lookup.get(x).ok_or_else(|| Error::InvalidFilter(format!(
                        "relation coordinate {:?} outside the monoid",
                        x
                    )))?;
                    let b = *lookup.get(y).ok_or_else(|| Error::InvalidFilter(format!(
                        "relation coordinate {:?} outside the monoid",
                        y
                    )))?;
                    le[a * n + b] = true;
                }
                transitive_closure(&mut le, n);
                le
            }
        };
        let order_name = match &order {
            OrderKind::Direct => "direct",
            OrderKind::Lex => "lex",
            OrderKind::DiscreteBelow => "discrete",
            OrderKind::Explicit(_) => "explicit",
        };
        let description = format!(
            "{} {}",
            factors
                .iter()
                .map(|f| format!("C[{},{}]", f.index, f.period))
                .collect::<Vec<_>>()
                .join("x"),
            order_name
        );
        let m = Self::assemble(raw, add, le, factors.to_vec(), description, false);
        m.validate()?;
        Ok(Monoid { validated: true, ..m })
    }

    /// Addition only: the order is equality and nothing is validated.  Useful
    /// for periodic factors, which admit no compatible partial order with 0 minimal.
    pub fn algebra(factors: &[Cyclic]) -> Result<Self> {
        let size = Self::product_size(factors);
        if size > DEFAULT_SIZE_CAP {
            return Err(Error::SizeCapExceeded { size, cap: DEFAULT_SIZE_CAP });
        }
        let mut coords: Vec<Vec<u32>> = Self::tuples(factors);
        coords.sort_by(|a, b| grade_key(a).cmp(&grade_key(b)));
        let n = coords.len();
        let index: HashMap<Vec<u32>, usize> =
            coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let mut add = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> =
                    (0..factors.len()).map(|k| factors[k].add(coords[a][k], coords[b][k])).collect();
                add[a * n + b] = index[&s] as u32;
            }
        }
        let raw = Raw {
            labels: coords.iter().map(|c| fmt_coords(c, None)).collect(),
            aliases: coords.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect(),
            coords,
        };
        let le = Self::rel(n, |a, b| a == b);
        Ok(Self::assemble(raw, add, le, factors.to_vec(), "algebra".into(), false))
    }

    fn product_size(factors: &[Cyclic]) -> usize {
        factors.iter().fold(1usize, |acc, f| acc.saturating_mul(f.size() as usize))
    }

    fn tuples(factors: &[Cyclic]) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for f in factors {
            let mut next = Vec::with_capacity(out.len() * f.size() as usize);
            for t in &out {
                for x in 0..f.size() {
                    let mut u = t.clone();
                    u.push(x);
                    next.push(u);
                }
            }
            out = next;
        }
        out
    }

    fn rel(n: usize, f: impl Fn(usize, usize) -> bool) -> Vec<bool> {
        let mut le = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                le[a * n + b] = f(a, b);
            }
        }
        le
    }

    fn assemble(
        raw: Raw,
        add: Vec<u32>,
        le: Vec<bool>,
        factors: Vec<Cyclic>,
        description: String,
        free_model: bool,
    ) -> Self {
        let n = raw.coords.len();
        let mut lookup: HashMap<Vec<u32>, usize> = raw.aliases.into_iter().collect();
        for (i, c) in raw.coords.iter().enumerate() {
            lookup.entry(c.clone()).or_insert(i);
        }
        Monoid {
            coords: raw.coords,
            labels: raw.labels,
            lookup,
            add,
            le,
            factors,
            description,
            validated: false,
            free_model,
            boundary: vec![false; n],
        }
    }

    /// Checks the partial-order axioms, translation compatibility and minimality of 0.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            if !self.leq(a, a) {
                return Err(Error::NotPartialOrder { a: self.label(a), b: self.label(a) });
            }
            for b in a + 1..n {
                if self.leq(a, b) && self.leq(b, a) {
                    return Err(Error::NotPartialOrder { a: self.label(a), b: self.label(b) });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !self.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.leq(b, c) && !self.leq(a, c) {
                        return Err(Error::NotPartialOrder { a: self.label(a), b: self.label(c) });
                    }
                }
            }
        }
        // Generators suffice: every u is a sum of them.
        let gens = self.generators();
        for s in 0..n {
            for t in 0..n {
                if !self.leq(s, t) {
                    continue;
                }
                for &u in &gens {
                    if !self.leq(self.add(s, u), self.add(t, u)) {
                        return Err(Error::OrderIncompatible {
                            s: self.label(s),
                            t: self.label(t),
                            u: self.label(u),
                        });
                    }
                }
            }
        }
        for s in 0..n {
            if !self.leq(0, s) {
                return Err(Error::ZeroNotMinimal(self.label(s)));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn coords(&self, a: usize) -> &[u32] {
        &self.coords[a]
    }

    pub fn label(&self, a: usize) -> String {
        self.labels[a].clone()
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn factors(&self) -> &[Cyclic] {
        &self.factors
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// True for monoids produced by [`Monoid::lift_free`]: saturated
    /// coordinates stand for unbounded tails of a free monoid.
    pub fn models_free(&self) -> bool {
        self.free_model
    }

    pub fn on_truncation_boundary(&self, a: usize) -> bool {
        self.boundary[a]
    }

    /// Element with the given coordinates; saturated or collapsed aliases resolve.
    pub fn index_of(&self, coords: &[u32]) -> Option<usize> {
        self.lookup.get(coords).copied()
    }

    pub fn dim(&self) -> usize {
        self.coords.first().map_or(0, |c| c.len())
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.len() + b] as usize
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.le[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn incomparable(&self, a: usize, b: usize) -> bool {
        !self.leq(a, b) && !self.leq(b, a)
    }

    /// Nonzero elements that are not a sum of two nonzero elements both different from them.
    pub fn generators(&self) -> Vec<usize> {
        let n = self.len();
        let mut reducible = vec![false; n];
        for a in 1..n {
            for b in a..n {
                let c = self.add(a, b);
                if c != a && c != b {
                    reducible[c] = true;
                }
            }
        }
        (1..n).filter(|&s| !reducible[s]).collect()
    }

    /// Submonoid generated by `xs` (always contains 0).
    pub fn generated(&self, xs: &[usize]) -> Vec<bool> {
        let n = self.len();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut stack = vec![0usize];
        while let Some(s) = stack.pop() {
            for &x in xs {
                let t = self.add(s, x);
                if !inside[t] {
                    inside[t] = true;
                    stack.push(t);
                }
            }
        }
        inside
    }

    pub fn generates(&self, xs: &[usize]) -> bool {
        self.generated(xs).iter().all(|&b| b)
    }

    /// Sequences over `xs` of length `1..=max_len` summing to `s`, by length then lexicographically.
    pub fn enumerate_partitions(&self, s: usize, xs: &[usize], max_len: usize) -> Vec<Vec<usize>> {
        let mut parts: Vec<usize> = xs.to_vec();
        parts.sort_unstable();
        parts.dedup();
        let mut out = Vec::new();
        for len in 1..=max_len {
            let mut cur = Vec::with_capacity(len);
            self.partitions_rec(s, &parts, len, 0, &mut cur, &mut out);
        }
        out
    }

    fn partitions_rec(
        &self,
        target: usize,
        parts: &[usize],
        len: usize,
        acc: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == len {
            if acc == target {
                out.push(cur.clone());
            }
            return;
        }
        for &p in parts {
            cur.push(p);
            self.partitions_rec(target, parts, len, self.add(acc, p), cur, out);
            cur.pop();
        }
    }

    pub fn is_semi_cancellative(&self, s: usize) -> bool {
        (1..self.len()).all(|t| self.add(s, t) != s)
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.len()).filter(|&s| !self.is_semi_cancellative(s)).collect()
    }

    pub fn minimal_elements(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&s| !set.iter().any(|&t| self.lt(t, s)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Topological order of the elements, ties broken by index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut indeg: Vec<usize> = (0..n).map(|b| (0..n).filter(|&a| self.lt(a, b)).count()).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&b| indeg[b] == 0).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(&a) = ready.iter().next() {
            ready.remove(&a);
            out.push(a);
            for b in 0..n {
                if self.lt(a, b) {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        ready.insert(b);
                    }
                }
            }
        }
        out
    }

    /// Same monoid with a new absorbing top element `inf`.
    pub fn adjoin_infinity(&self) -> Result<Monoid> {
        let n = self.len();
        if n + 1 > DEFAULT_SIZE_CAP {
            return Err(Error::SizeCapExceeded { size: n + 1, cap: DEFAULT_SIZE_CAP });
        }
        let m = n + 1;
        let mut add = vec![n as u32; m * m];
        let mut le = vec![false; m * m];
        for a in 0..n {
            for b in 0..n {
                add[a * m + b] = self.add(a, b) as u32;
                le[a * m + b] = self.leq(a, b);
            }
        }
        for a in 0..m {
            le[a * m + n] = true;
        }
        let mut coords = self.coords.clone();
        coords.push(vec![INF_KEY; self.dim()]);
        let mut labels = self.labels.clone();
        labels.push("inf".into());
        let aliases: Vec<(Vec<u32>, usize)> = self.lookup.iter().map(|(k, &v)| (k.clone(), v)).collect();
        let raw = Raw { coords, labels, aliases };
        let mut out = Self::assemble(
            raw,
            add,
            le,
            Vec::new(),
            format!("{} + inf", self.description),
            false,
        );
        out.boundary = self.boundary.clone();
        out.boundary.push(false);
        if self.validated {
            out.validate()?;
            out.validated = true;
        }
        Ok(out)
    }

    /// Product of two monoids under the direct-product or lex order.
    pub fn product(a: &Monoid, b: &Monoid, order: OrderKind) -> Result<Monoid> {
        let (na, nb) = (a.len(), b.len());
        let size = na * nb;
        if size > DEFAULT_SIZE_CAP {
            return Err(Error::SizeCapExceeded { size, cap: DEFAULT_SIZE_CAP });
        }
        let mut pairs: Vec<(usize, usize)> = (0..na).flat_map(|i| (0..nb).map(move |j| (i, j))).collect();
        let key = |p: &(usize, usize)| {
            let mut c = a.coords[p.0].clone();
            c.extend_from_slice(&b.coords[p.1]);
            c
        };
        pairs.sort_by(|x, y| grade_key(&key(x)).cmp(&grade_key(&key(y))));
        let pos: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let n = size;
        let mut add = vec![0u32; n * n];
        for (x, &(i, j)) in pairs.iter().enumerate() {
            for (y, &(k, l)) in pairs.iter().enumerate() {
                add[x * n + y] = pos[&(a.add(i, k), b.add(j, l))] as u32;
            }
        }
        let le = Self::rel(n, |x, y| {
            let ((i, j), (k, l)) = (pairs[x], pairs[y]);
            match order {
                OrderKind::Lex => a.lt(i, k) || (i == k && b.leq(j, l)),
                _ => a.leq(i, k) && b.leq(j, l),
            }
        });
        let strip = |s: &str| s.trim_start_matches('(').trim_end_matches(')').to_string();
        let labels = pairs
            .iter()
            .map(|&(i, j)| format!("({},{})", strip(&a.labels[i]), strip(&b.labels[j])))
            .collect();
        let mut aliases = Vec::new();
        for (ka, &ia) in &a.lookup {
            for (kb, &ib) in &b.lookup {
                let mut k = ka.clone();
                k.extend_from_slice(kb);
                aliases.push((k, pos[&(ia, ib)]));
            }
        }
        let coords = pairs.iter().map(key).collect();
        let raw = Raw { coords, labels, aliases };
        let mut factors = a.factors.clone();
        factors.extend_from_slice(&b.factors);
        let name = if matches!(order, OrderKind::Lex) { "lex" } else { "direct" };
        let mut out = Self::assemble(
            raw,
            add,
            le,
            factors,
            format!("({}) x ({}) {}", a.description, b.description, name),
            false,
        );
        out.validate()?;
        out.validated = true;
        Ok(out)
    }

    /// Lift to a truncated free monoid on the generators of `self`.
    ///
    /// Returns the lift and the surjection as an index map.  Coordinate `i`
    /// counts copies of generator `i`; its bound is raised to the point where
    /// the multiples of that generator stabilise so the map respects addition.
    /// The order keeps `s <= t` when `mu(s) < mu(t)`, or `mu(s) = mu(t)` and
    /// `t - s` is in the free monoid, restricted to pairs that stay related
    /// under every translation.
    pub fn lift_free(&self, bounds: Option<&[u32]>) -> Result<(Monoid, Vec<usize>)> {
        let gens = self.generators();
        let d = gens.len();
        let mut bs = Vec::with_capacity(d);
        for (i, &g) in gens.iter().enumerate() {
            let mut k = 1u32;
            let mut cur = g;
            let mut seen = vec![0usize];
            loop {
                let next = self.add(cur, g);
                if next == cur {
                    break;
                }
                if seen.contains(&next) || k as usize > self.len() {
                    return Err(Error::Unsupported(format!(
                        "multiples of generator {} are periodic; no partial-order lift exists",
                        self.label(g)
                    )));
                }
                seen.push(cur);
                cur = next;
                k += 1;
            }
            let want = bounds.and_then(|b| b.get(i).copied()).unwrap_or(k);
            bs.push(want.max(k));
        }
        let factors: Vec<Cyclic> = bs.iter().map(|&b| Cyclic::truncated(b)).collect();
        let size = Self::product_size(&factors);
        if size > DEFAULT_SIZE_CAP {
            return Err(Error::SizeCapExceeded { size, cap: DEFAULT_SIZE_CAP });
        }
        let mut coords = Self::tuples(&factors);
        coords.sort_by(|a, b| grade_key(a).cmp(&grade_key(b)));
        let n = coords.len();
        let index: HashMap<Vec<u32>, usize> =
            coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let mu: Vec<usize> = coords
            .iter()
            .map(|c| {
                let mut acc = 0usize;
                for (k, &x) in c.iter().enumerate() {
                    for _ in 0..x {
                        acc = self.add(acc, gens[k]);
                    }
                }
                acc
            })
            .collect();
        let mut add = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> = (0..d).map(|k| factors[k].add(coords[a][k], coords[b][k])).collect();
                add[a * n + b] = index[&s] as u32;
            }
        }
        let below = |a: usize, b: usize| (0..d).all(|k| coords[a][k] <= coords[b][k]);
        let mut le = Self::rel(n, |a, b| {
            self.lt(mu[a], mu[b]) || (mu[a] == mu[b] && below(a, b))
        });
        let unit: Vec<usize> = (0..d)
            .map(|k| {
                let mut c = vec![0u32; d];
                c[k] = 1;
                index[&c]
            })
            .collect();
        loop {
            let mut changed = false;
            for a in 0..n {
                for b in 0..n {
                    if le[a * n + b]
                        && unit.iter().any(|&u| {
                            let (x, y) = (add[a * n + u] as usize, add[b * n + u] as usize);
                            !le[x * n + y]
                        })
                    {
                        le[a * n + b] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let boundary: Vec<bool> = coords.iter().map(|c| (0..d).any(|k| c[k] == bs[k])).collect();
        let raw = Raw {
            labels: coords.iter().map(|c| fmt_coords(c, None)).collect(),
            aliases: coords.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect(),
            coords,
        };
        let mut out = Self::assemble(
            raw,
            add,
            le,
            factors,
            format!("free lift of {} (bounds {:?})", self.description, bs),
            true,
        );
        out.boundary = boundary;
        out.validate()?;
        out.validated = true;
        Ok((out, mu))
    }
}

fn factor_le(f: &Cyclic, x: u32, y: u32) -> bool {
    x == y || (x < f.index && x <= y)
}

fn transitive_closure(le: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if !le[i * n + k] {
                continue;
            }
            for j in 0..n {
                if le[k * n + j] {
                    le[i * n + j] = true;
                }
            }
        }
    }
}
