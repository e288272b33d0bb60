//! Abelian sections `top / bottom` of a pc group with an invariant-factor basis.

use crate::error::{Error, Result};
use crate::pc::{depth, Elem, PcGroup, Subgroup};
use crate::snf::smith;

#[derive(Clone, Debug)]
pub struct Section {
    top: Subgroup,
    bottom: Subgroup,
    factor_depths: Vec<usize>,
    factor_gens: Vec<Elem>,
    invariants: Vec<u64>,
    // columns of V kept (those with invariant > 1)
    kept: Vec<usize>,
    v: Vec<Vec<i64>>,
    lifts: Vec<Elem>,
}

impl Section {
    pub fn new(g: &PcGroup, top: &Subgroup, bottom: &Subgroup) -> Result<Self> {
        if !g.is_subgroup_of(bottom, top) {
            return Err(Error::PreconditionFailed("section bottom is not contained in top".into()));
        }
        if !g.is_normal_in(bottom, top) {
            return Err(Error::NotNormal("section bottom is not normal in top".into()));
        }
        let bdepths = bottom.depths();
        let mut factor_depths = Vec::new();
        let mut factor_gens = Vec::new();
        for (x, d) in top.gens().iter().zip(top.depths()) {
            if !bdepths.contains(&d) {
                factor_depths.push(d);
                factor_gens.push(x.clone());
            }
        }
        for (i, a) in factor_gens.iter().enumerate() {
            for b in factor_gens.iter().skip(i + 1) {
                if !g.contains(bottom, &g.comm(a, b)) {
                    return Err(Error::PreconditionFailed("section is not abelian".into()));
                }
            }
        }
        let mut sec = Section {
            top: top.clone(),
            bottom: bottom.clone(),
            factor_depths,
            factor_gens,
            invariants: Vec::new(),
            kept: Vec::new(),
            v: Vec::new(),
            lifts: Vec::new(),
        };
        let k = sec.factor_gens.len();
        if k == 0 {
            return Ok(sec);
        }
        let orders = g.relative_orders();
        let mut rows = Vec::with_capacity(k);
        for j in 0..k {
            let m = orders[sec.factor_depths[j]];
            let yp = g.pow(&sec.factor_gens[j], m as i64);
            let c = sec.raw_coords(g, &yp)?;
            let mut row: Vec<i64> = c.iter().map(|&x| -(x as i64)).collect();
            row[j] += m as i64;
            rows.push(row);
        }
        let s = smith(&rows, k);
        let exponent = s.diag.iter().copied().filter(|&d| d > 1).max().unwrap_or(1);
        for (i, &d) in s.diag.iter().enumerate() {
            if d > 1 {
                sec.kept.push(i);
                sec.invariants.push(d as u64);
                let mut x = g.identity();
                for (j, y) in sec.factor_gens.iter().enumerate() {
                    let c = s.v_inv[i][j].rem_euclid(exponent);
                    if c != 0 {
                        x = g.mul(&x, &g.pow(y, c));
                    }
                }
                sec.lifts.push(x);
            }
        }
        sec.v = s.v;
        Ok(sec)
    }

    pub fn top(&self) -> &Subgroup {
        &self.top
    }

    pub fn bottom(&self) -> &Subgroup {
        &self.bottom
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn order(&self) -> u128 {
        self.invariants.iter().map(|&d| d as u128).product()
    }

    /// Lifts of the basis, one per invariant.
    pub fn lifts(&self) -> &[Elem] {
        &self.lifts
    }

    /// Exponents over the factor generators of the image of `x`.
    pub fn raw_coords(&self, g: &PcGroup, x: &[u32]) -> Result<Vec<u64>> {
        let mut x = x.to_vec();
        let mut out = vec![0u64; self.factor_gens.len()];
        let bgens = self.bottom.gens();
        let bdepths = self.bottom.depths();
        let orders = g.relative_orders();
        while let Some(d) = depth(&x) {
            let a = x[d];
            let inv = (orders[d] - a) as i64;
            if let Some(i) = bdepths.iter().position(|&e| e == d) {
                x = g.mul(&x, &g.pow(&bgens[i], inv));
            } else if let Some(i) = self.factor_depths.iter().position(|&e| e == d) {
                out[i] += a as u64;
                x = g.mul(&x, &g.pow(&self.factor_gens[i], -(a as i64)));
            } else {
                return Err(Error::PreconditionFailed(format!("{} is outside the section", g.format_elem(&x))));
            }
        }
        Ok(out)
    }

    /// Coordinates in the invariant-factor basis.
    pub fn coords(&self, g: &PcGroup, x: &[u32]) -> Result<Vec<u64>> {
        let raw = self.raw_coords(g, x)?;
        Ok(self
            .kept
            .iter()
            .zip(&self.invariants)
            .map(|(&col, &d)| {
                let s: i128 = raw.iter().enumerate().map(|(j, &c)| c as i128 * self.v[j][col] as i128).sum();
                s.rem_euclid(d as i128) as u64
            })
            .collect())
    }

    /// The product of basis lifts raised to `coords`, in basis order.
    pub fn lift(&self, g: &PcGroup, coords: &[u64]) -> Elem {
        let mut x = g.identity();
        for (b, &c) in self.lifts.iter().zip(coords) {
            if c != 0 {
                x = g.mul(&x, &g.pow(b, c as i64));
            }
        }
        x
    }
}
