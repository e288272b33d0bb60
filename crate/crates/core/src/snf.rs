//! Smith normal form over the integers, tracking column operations.

#[derive(Clone, Debug)]
pub struct Snf {
    /// Diagonal entries, nonnegative, each dividing the next (zeros last).
    pub diag: Vec<i64>,
    /// Column transform `V` with `U A V = D`.
    pub v: Vec<Vec<i64>>,
    /// Inverse of `V`.
    pub v_inv: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Smith form of an `rows x cols` matrix.
pub fn smith(a: &[Vec<i64>], cols: usize) -> Snf {
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let rows = m.len();
    let mut v = identity(cols);
    let mut vi = identity(cols);

    // col_j -= q * col_t
    let col_sub = |m: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, vi: &mut Vec<Vec<i64>>, j: usize, t: usize, q: i64| {
        if q == 0 {
            return;
        }
        for row in m.iter_mut() {
            row[j] -= q * row[t];
        }
        for row in v.iter_mut() {
            row[j] -= q * row[t];
        }
        for k in 0..vi[0].len() {
            let add = q * vi[j][k];
            vi[t][k] += add;
        }
    };
    let col_swap = |m: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, vi: &mut Vec<Vec<i64>>, a: usize, b: usize| {
        if a == b {
            return;
        }
        for row in m.iter_mut() {
            row.swap(a, b);
        }
        for row in v.iter_mut() {
            row.swap(a, b);
        }
        vi.swap(a, b);
    };

    let n = rows.min(cols);
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        col_swap(&mut m, &mut v, &mut vi, t, bj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t] / m[t][t];
                if q != 0 {
                    let (top, rest) = m.split_at_mut(i);
                    for (x, y) in rest[0].iter_mut().zip(top[t].iter()) {
                        *x -= q * y;
                    }
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / m[t][t];
                col_sub(&mut m, &mut v, &mut vi, j, t, q);
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                let mut best = (t, t);
                for i in t..rows {
                    if m[i][t] != 0 && m[i][t].abs() < m[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if m[t][j] != 0 && m[t][j].abs() < m[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                m.swap(t, best.0);
                col_swap(&mut m, &mut v, &mut vi, t, best.1);
                continue;
            }
            let d = m[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % d != 0));
            match bad {
                Some(i) => {
                    let (top, rest) = m.split_at_mut(i);
                    for (x, y) in top[t].iter_mut().zip(rest[0].iter()) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
        }
        diag.push(m[t][t]);
    }
    while diag.len() < cols {
        diag.push(0);
    }
    Snf { diag, v, v_inv: vi }
}
