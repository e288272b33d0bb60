//! Built-in presentations with named subgroups and elements.

use crate::error::{Error, Result};
use crate::pc::{Elem, PcGroup, Subgroup, Word};

#[derive(Clone, Debug)]
pub struct Builtin {
    pub group: PcGroup,
    pub subgroups: Vec<(String, Subgroup)>,
    pub elements: Vec<(String, Elem)>,
}

impl Builtin {
    pub fn subgroup(&self, name: &str) -> Option<&Subgroup> {
        self.subgroups.iter().find(|(n, _)| n == name).map(|(_, h)| h)
    }

    pub fn element(&self, name: &str) -> Option<&Elem> {
        self.elements.iter().find(|(n, _)| n == name).map(|(_, x)| x)
    }
}

pub fn prime_factors(mut n: u64) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        while n % d == 0 {
            out.push(d as u32);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u32);
    }
    out
}

/// `Z_n` refined into prime layers: `g_i^{p_i} = g_{i+1}`, primes ascending,
/// so `g_i` is the residue `p_1 ... p_{i-1}`.
pub fn cyclic(n: u64) -> Result<Builtin> {
    if n < 2 {
        return Err(Error::InvalidPresentation("cyclic group needs n >= 2".into()));
    }
    let primes = prime_factors(n);
    let k = primes.len();
    let powers: Vec<(usize, Word)> = (0..k - 1).map(|i| (i, vec![(i + 1, 1)])).collect();
    let group = PcGroup::new(primes.clone(), powers, vec![])?;
    let mut subgroups = Vec::new();
    let mut elements = Vec::new();
    for d in 1..=n {
        if n % d == 0 {
            let x = cyclic_elem(&primes, d % n);
            subgroups.push((format!("<{}>", d % n), group.subgroup(&[x])));
        }
    }
    for v in 0..n.min(4096) {
        elements.push((format!("{}", v), cyclic_elem(&primes, v)));
    }
    Ok(Builtin { group, subgroups, elements })
}

/// Normal form of the residue `v` in the refined cyclic presentation.
pub fn cyclic_elem(primes: &[u32], v: u64) -> Elem {
    let mut c = 1u64;
    let mut out = Vec::with_capacity(primes.len());
    for &p in primes {
        out.push(((v / c) % p as u64) as u32);
        c *= p as u64;
    }
    out
}

/// Index of `I + E_ij` (1-based `i < j`) among the generators of `UT(d, p)`,
/// which are ordered by `(j - i, i)`.
pub fn ut_index(d: usize, i: usize, j: usize) -> usize {
    let w = j - i;
    let before: usize = (1..w).map(|k| d - k).sum();
    before + (i - 1)
}

pub fn ut_positions(d: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for w in 1..d {
        for i in 1..=d - w {
            v.push((i, i + w));
        }
    }
    v
}

/// Unitriangular `d x d` matrices over `F_p` on the elementary generators.
pub fn ut_group(d: usize, p: u32) -> Result<PcGroup> {
    if d < 2 {
        return Err(Error::InvalidPresentation("UT needs d >= 2".into()));
    }
    let pos = ut_positions(d);
    let mut comms = Vec::new();
    for (a, &(i, j)) in pos.iter().enumerate() {
        for (b, &(k, l)) in pos.iter().enumerate().skip(a + 1) {
            // [I+E_ij, I+E_jl] = I+E_il
            if j == k {
                comms.push((b, a, vec![(ut_index(d, i, l), p as i64 - 1)]));
            } else if l == i {
                comms.push((b, a, vec![(ut_index(d, k, j), 1)]));
            }
        }
    }
    PcGroup::new(vec![p; pos.len()], vec![], comms)
}

fn pattern_subgroup(g: &PcGroup, d: usize, allowed: impl Fn(usize, usize) -> bool) -> Subgroup {
    let gens: Vec<Elem> =
        ut_positions(d).into_iter().filter(|&(i, j)| allowed(i, j)).map(|(i, j)| g.gen(ut_index(d, i, j))).collect();
    g.subgroup(&gens)
}

fn series_names(g: &PcGroup, subgroups: &mut Vec<(String, Subgroup)>) {
    subgroups.push(("G".into(), g.whole()));
    subgroups.push(("1".into(), g.trivial()));
    let lcs = g.lower_central_series();
    for (k, h) in lcs.iter().enumerate().skip(1) {
        subgroups.push((format!("gamma{}", k + 1), h.clone()));
    }
}

pub fn ut(d: usize, p: u32) -> Result<Builtin> {
    let group = ut_group(d, p)?;
    let mut subgroups = Vec::new();
    series_names(&group, &mut subgroups);
    if d == 5 {
        subgroups.push(("H".into(), pattern_subgroup(&group, d, |i, j| !matches!((i, j), (2, 3) | (3, 4)))));
        subgroups.push(("K".into(), pattern_subgroup(&group, d, |i, j| !matches!((i, j), (1, 2) | (4, 5)))));
        subgroups.push(("L".into(), pattern_subgroup(&group, d, |i, j| i <= 2 && j >= 4)));
    }
    let elements = ut_positions(d)
        .into_iter()
        .map(|(i, j)| (format!("e{}{}", i, j), group.gen(ut_index(d, i, j))))
        .collect();
    Ok(Builtin { group, subgroups, elements })
}

/// `UT(3, p)` with `x = g1`, `y = g2`, `z = g3` and `[y, x] = z^-1`.
pub fn heisenberg(p: u32) -> Result<Builtin> {
    let mut b = ut(3, p)?;
    let g = &b.group;
    b.elements = vec![("x".into(), g.gen(0)), ("y".into(), g.gen(1)), ("z".into(), g.gen(2))];
    let z = b.subgroup("gamma2").unwrap().clone();
    b.subgroups.push(("Z".into(), z));
    Ok(b)
}

/// Order `p^5`: `A = E13 + E24`, `B = E35`, `C = E45`, `X = E15`, `Y = E25`
/// with `[B, A] = X^-1`, `[C, A] = Y^-1`.  `H<k>` is generated by `X Y^k`.
pub fn hk(p: u32) -> Result<Builtin> {
    let comms = vec![(1, 0, vec![(3, p as i64 - 1)]), (2, 0, vec![(4, p as i64 - 1)])];
    let group = PcGroup::new(vec![p; 5], vec![], comms)?;
    let mut subgroups = Vec::new();
    series_names(&group, &mut subgroups);
    for k in 0..p {
        let mut x = group.identity();
        x[3] = 1;
        x[4] = k;
        subgroups.push((format!("H{}", k), group.subgroup(&[x])));
    }
    let names = ["A", "B", "C", "X", "Y"];
    let elements = names.iter().enumerate().map(|(i, n)| (n.to_string(), group.gen(i))).collect();
    Ok(Builtin { group, subgroups, elements })
}

/// The 13-generator class-2 group of exponent `p`.
pub fn genus3(p: u32) -> Result<Builtin> {
    let mut comms: Vec<(usize, usize, Word)> = vec![(9, 5, vec![(10, 1)]), (9, 6, vec![(11, 1)])];
    for (j, i) in [(1, 0), (3, 2), (5, 4), (7, 6), (9, 8)] {
        comms.push((j, i, vec![(12, 1)]));
    }
    let group = PcGroup::new(vec![p; 13], vec![], comms)?;
    let span = |idx: &[usize]| {
        let mut gens: Vec<Elem> = idx.iter().map(|&i| group.gen(i - 1)).collect();
        gens.extend([10, 11, 12].iter().map(|&i| group.gen(i)));
        group.subgroup(&gens)
    };
    let mut subgroups = vec![
        ("G".to_string(), group.whole()),
        ("J1".into(), span(&[1, 2, 3, 4, 5, 6, 7, 8, 9])),
        ("J2".into(), span(&[1, 2, 3, 4, 5, 8, 9])),
        ("J3".into(), span(&[5, 8, 9])),
        ("J4".into(), span(&[9])),
        ("gamma2".into(), span(&[])),
        ("H".into(), group.subgroup(&[group.gen(12)])),
        ("1".into(), group.trivial()),
        ("E".into(), span(&[5, 6, 7, 8, 9, 10])),
        ("S".into(), span(&[1, 2, 3, 4])),
    ];
    let sj4 = group.join(&subgroups[8 + 1].1, &subgroups[4].1);
    let j1e = group.intersection(&subgroups[1].1, &subgroups[8].1);
    subgroups.push(("SJ4".into(), sj4));
    subgroups.push(("J1&E".into(), j1e));
    let elements = (0..13).map(|i| (format!("g{}", i + 1), group.gen(i))).collect();
    Ok(Builtin { group, subgroups, elements })
}

/// Parses `cyclic 60`, `heisenberg 3`, `ut 5 2`, `hk 3`, `genus3 3`.
pub fn by_spec(spec: &str) -> Result<Builtin> {
    let parts: Vec<&str> = spec.split_whitespace().collect();
    let num = |i: usize| -> Result<u64> {
        parts
            .get(i)
            .and_then(|s| s.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidPresentation(format!("builtin `{}` needs a numeric argument", spec)))
    };
    let prime = |i: usize| -> Result<u32> {
        let p = num(i)?;
        if crate::groups::prime_factors(p).len() != 1 {
            return Err(Error::InvalidPresentation(format!("{} is not prime", p)));
        }
        Ok(p as u32)
    };
    match parts.first().copied() {
        Some("cyclic") => cyclic(num(1)?),
        Some("heisenberg") => heisenberg(prime(1)?),
        Some("ut") => {
            let d = num(1)? as usize;
            if !(2..=6).contains(&d) {
                return Err(Error::InvalidPresentation("ut dimension must be in 2..=6".into()));
            }
            ut(d, prime(2)?)
        }
        Some("hk") => hk(prime(1)?),
        Some("genus3") => genus3(prime(1)?),
        _ => Err(Error::InvalidPresentation(format!("unknown builtin `{}`", spec))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z60_layers() {
        let b = cyclic(60).unwrap();
        assert_eq!(b.group.relative_orders(), &[2, 2, 3, 5]);
        let g = &b.group;
        let two = b.subgroup("<2>").unwrap();
        let three = b.subgroup("<3>").unwrap();
        assert_eq!(g.intersection(two, three), *b.subgroup("<6>").unwrap());
        assert_eq!(g.order(two), 30);
        assert_eq!(b.subgroups.len(), 12);
        assert_eq!(g.mul(b.element("7").unwrap(), b.element("55").unwrap()), *b.element("2").unwrap());
    }

    #[test]
    fn ut5_shapes() {
        let b = ut(5, 2).unwrap();
        let g = &b.group;
        assert_eq!(g.group_order(), 1024);
        assert_eq!(g.nilpotency_class(), Some(4));
        assert_eq!(g.order(b.subgroup("H").unwrap()), 256);
        assert_eq!(g.order(b.subgroup("K").unwrap()), 256);
        assert_eq!(g.order(b.subgroup("L").unwrap()), 16);
        assert!(g.check_consistency().is_ok());
    }

    #[test]
    fn heisenberg_convention() {
        let b = heisenberg(3).unwrap();
        let g = &b.group;
        assert_eq!(g.collect(&[(1, 1), (0, 1)]).unwrap(), vec![1, 1, 2]);
    }

    #[test]
    fn hk_and_genus3() {
        let b = hk(3).unwrap();
        assert_eq!(b.group.group_order(), 243);
        assert!(b.group.check_consistency().is_ok());
        assert_eq!(b.group.nilpotency_class(), Some(2));
        let b = genus3(3).unwrap();
        assert!(b.group.check_consistency().is_ok());
        assert_eq!(b.group.nilpotency_class(), Some(2));
        let g = &b.group;
        assert_eq!(b.subgroup("gamma2").unwrap(), &g.lower_central_series()[1]);
        assert_eq!(g.order(b.subgroup("J1&E").unwrap()), 3u128.pow(8));
    }
}
