//! Dense matrices over [`Scalar`], plus a numeric rank for specialized matrices.

use num_complex::Complex64;

use crate::error::Result;
use crate::scalars::{ratio, Instantiation, Scalar};

pub type SMatrix = Vec<Vec<Scalar>>;

pub fn zeros(n: usize) -> SMatrix {
    vec![vec![Scalar::zero(); n]; n]
}

pub fn identity(n: usize) -> SMatrix {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Scalar::one();
    }
    m
}

pub fn mul(a: &SMatrix, b: &SMatrix) -> SMatrix {
    let n = a.len();
    let k = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![Scalar::zero(); cols]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..cols {
                if b[t][j].is_zero() {
                    continue;
                }
                out[i][j] = &out[i][j] + &(&a[i][t] * &b[t][j]);
            }
        }
    }
    out
}

pub fn scale(a: &SMatrix, s: &Scalar) -> SMatrix {
    a.iter().map(|row| row.iter().map(|x| x * s).collect()).collect()
}

pub fn trace(a: &SMatrix) -> Scalar {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

pub fn is_identity(a: &SMatrix) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
}

/// Coefficients `c_0, …, c_n` of `det(X·I − A) = Σ c_k X^k` (Faddeev–LeVerrier).
pub fn charpoly(a: &SMatrix) -> Vec<Scalar> {
    let n = a.len();
    let mut c = vec![Scalar::zero(); n + 1];
    c[n] = Scalar::one();
    let mut m = zeros(n);
    for k in 1..=n {
        let mut next = mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + &c[n - k + 1];
        }
        m = next;
        let t = trace(&mul(a, &m));
        c[n - k] = &(-&t) * &ratio(1, k as i64);
    }
    c
}

pub fn det(a: &SMatrix) -> Scalar {
    let n = a.len();
    match n {
        0 => Scalar::one(),
        1 => a[0][0].clone(),
        2 => &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0]),
        _ => {
            let mut acc = Scalar::zero();
            for j in 0..n {
                if a[0][j].is_zero() {
                    continue;
                }
                let minor: SMatrix = a[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &a[0][j] * &det(&minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rank by exact minors. A minor that is nonzero in normal form but still
/// contains Gauss symbols is reported through the second return value.
pub fn rank_by_minors(a: &SMatrix) -> (usize, bool) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut gauss_doubt = false;
    for k in (1..=rows.min(cols)).rev() {
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: SMatrix = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j].clone()).collect()).collect();
                let d = det(&sub);
                if !d.is_zero() {
                    if !d.is_gauss_free() {
                        gauss_doubt = true;
                    }
                    return (k, gauss_doubt);
                }
            }
        }
    }
    (0, gauss_doubt)
}

pub fn specialize(a: &SMatrix, inst: &Instantiation) -> Result<Vec<Vec<Complex64>>> {
    a.iter()
        .map(|row| row.iter().map(|x| x.specialize(inst)).collect())
        .collect()
}

/// Rank of a complex matrix by Gaussian elimination with partial pivoting,
/// after scaling every row and then every column to unit maximum; pivots
/// below `tol` count as zero.
pub fn numeric_rank(m: &[Vec<Complex64>], tol: f64) -> usize {
    let mut a: Vec<Vec<Complex64>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    for row in a.iter_mut() {
        let mx = row.iter().map(|x| x.norm()).fold(0.0f64, f64::max);
        if mx > 0.0 {
            row.iter_mut().for_each(|x| *x /= mx);
        }
    }
    for j in 0..cols {
        let mx = a.iter().map(|r| r[j].norm()).fold(0.0f64, f64::max);
        if mx > 0.0 {
            a.iter_mut().for_each(|r| r[j] /= mx);
        }
    }
    let scale = 1.0;
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let (p, best) = (rank..rows)
            .map(|r| (r, a[r][c].norm()))
            .fold((rank, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= tol * scale {
            continue;
        }
        a.swap(rank, p);
        for r in rank + 1..rows {
            let f = a[r][c] / a[rank][c];
            for k in c..cols {
                let v = a[rank][k];
                a[r][k] -= f * v;
            }
        }
        rank += 1;
    }
    rank
}
