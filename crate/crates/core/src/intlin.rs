//! Exact integer lattice linear algebra.
//!
//! Matrices are row-major. Lattices are given by lists of generating vectors,
//! which are the columns of the matrix handed to the normal-form routines.
//! Reductions run over `BigInt`; results are converted back to `i64`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type IVec = Vec<i64>;
pub type IMat = Vec<Vec<i64>>;
pub type BMat = Vec<Vec<BigInt>>;

fn to_big(m: &IMat) -> BMat {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn big_to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("lattice entry exceeds i64 range")
}

fn to_small(m: &BMat) -> IMat {
    m.iter().map(|r| r.iter().map(big_to_i64).collect()).collect()
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn big_identity(n: usize) -> BMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IMat, v: &[i64]) -> IVec {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn transpose(a: &IMat) -> IMat {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|r| r[j]).collect())
        .collect()
}

/// Matrix whose columns are the given vectors.
pub fn columns(vecs: &[IVec], dim: usize) -> IMat {
    (0..dim).map(|i| vecs.iter().map(|v| v[i]).collect()).collect()
}

fn col_axpy(m: &mut BMat, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let t = &row[src] * q;
        row[dst] -= t;
    }
}

fn col_swap(m: &mut BMat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn col_neg(m: &mut BMat, c: usize) {
    for row in m.iter_mut() {
        row[c] = -&row[c];
    }
}

/// Column Hermite form over `BigInt`.
///
/// Returns `(H, U, pivots)` with `M·U = H`; `pivots[t]` is the row of the
/// pivot in column `t`. Columns past `pivots.len()` are zero.
pub fn hnf_big(m: &BMat, cols: usize) -> (BMat, BMat, Vec<usize>) {
    let rows = m.len();
    let mut h = m.clone();
    let mut u = big_identity(cols);
    let mut pivots = Vec::new();
    let mut c = 0;
    for i in 0..rows {
        if c == cols {
            break;
        }
        loop {
            let piv = (c..cols)
                .filter(|&j| !h[i][j].is_zero())
                .min_by(|&a, &b| h[i][a].abs().cmp(&h[i][b].abs()));
            let Some(piv) = piv else { break };
            col_swap(&mut h, c, piv);
            col_swap(&mut u, c, piv);
            let mut done = true;
            for j in c + 1..cols {
                if !h[i][j].is_zero() {
                    let q = h[i][j].div_floor(&h[i][c]);
                    col_axpy(&mut h, j, c, &q);
                    col_axpy(&mut u, j, c, &q);
                    if !h[i][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[i][c].is_zero() {
            continue;
        }
        if h[i][c].is_negative() {
            col_neg(&mut h, c);
            col_neg(&mut u, c);
        }
        for j in 0..c {
            let q = h[i][j].div_floor(&h[i][c]);
            if !q.is_zero() {
                col_axpy(&mut h, j, c, &q);
                col_axpy(&mut u, j, c, &q);
            }
        }
        pivots.push(i);
        c += 1;
    }
    (h, u, pivots)
}

/// Column Hermite normal form: returns `(H, U)` with `M·U = H`, `U` unimodular
/// and `H` lower-triangular in echelon form.
pub fn hnf(m: &IMat) -> (IMat, IMat) {
    let cols = m.first().map_or(0, |r| r.len());
    let (h, u, _) = hnf_big(&to_big(m), cols);
    (to_small(&h), to_small(&u))
}

/// Smith normal form: returns `(d, U, V)` with `U·M·V = diag(d)`, `U` and `V`
/// unimodular and `d[i] | d[i+1]`. The diagonal has `min(rows, cols)` entries.
pub fn snf(m: &IMat) -> (Vec<i64>, IMat, IMat) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = to_big(m);
    let mut u = big_identity(rows);
    let mut v = big_identity(cols);
    let k = rows.min(cols);
    for t in 0..k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                let d = (0..k)
                    .map(|i| big_to_i64(&a[i][i]))
                    .collect();
                return (d, to_small(&u), to_small(&v));
            };
            a.swap(t, bi);
            u.swap(t, bi);
            col_swap(&mut a, t, bj);
            col_swap(&mut v, t, bj);
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in 0..cols {
                        let s = &a[t][j] * &q;
                        a[i][j] -= s;
                    }
                    for j in 0..rows {
                        let s = &u[t][j] * &q;
                        u[i][j] -= s;
                    }
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero())
            });
            match bad {
                Some(i) => {
                    for j in 0..cols {
                        let s = a[i][j].clone();
                        a[t][j] += s;
                    }
                    for j in 0..rows {
                        let s = u[i][j].clone();
                        u[t][j] += s;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    let d = (0..k).map(|i| big_to_i64(&a[i][i])).collect();
    (d, to_small(&u), to_small(&v))
}

/// Basis of the lattice generated by `gens` in `Z^dim`, in column Hermite form.
pub fn lattice_basis(gens: &[IVec], dim: usize) -> Vec<IVec> {
    if gens.is_empty() {
        return vec![];
    }
    let m = columns(gens, dim);
    let (h, _u, pivots) = hnf_big(&to_big(&m), gens.len());
    (0..pivots.len())
        .map(|t| (0..dim).map(|i| big_to_i64(&h[i][t])).collect())
        .collect()
}

/// Integer kernel of `a` (rows × cols), as a list of basis vectors in `Z^cols`.
pub fn kernel(a: &IMat, cols: usize) -> Vec<IVec> {
    let (_h, u, pivots) = hnf_big(&to_big(a), cols);
    (pivots.len()..cols)
        .map(|t| (0..cols).map(|i| big_to_i64(&u[i][t])).collect())
        .collect()
}

/// All integer solutions of `a·x = b`: a particular solution plus a kernel basis.
pub fn solve(a: &IMat, b: &[i64], cols: usize) -> Option<(IVec, Vec<IVec>)> {
    let (h, u, pivots) = hnf_big(&to_big(a), cols);
    let mut x = vec![BigInt::zero(); cols];
    for (t, &p) in pivots.iter().enumerate() {
        let mut rhs = BigInt::from(b[p]);
        for (s, xs) in x.iter().enumerate().take(t) {
            rhs -= &h[p][s] * xs;
        }
        let (q, r) = rhs.div_rem(&h[p][t]);
        if !r.is_zero() {
            return None;
        }
        x[t] = q;
    }
    for (i, row) in h.iter().enumerate() {
        let val: BigInt = row.iter().zip(&x).map(|(p, q)| p * q).sum();
        if val != BigInt::from(b[i]) {
            return None;
        }
    }
    let part = (0..cols)
        .map(|i| {
            let s: BigInt = (0..cols).map(|j| &u[i][j] * &x[j]).sum();
            big_to_i64(&s)
        })
        .collect();
    let ker = (pivots.len()..cols)
        .map(|t| (0..cols).map(|i| big_to_i64(&u[i][t])).collect())
        .collect();
    Some((part, ker))
}

/// Coordinates of `y` in the (linearly independent) basis `basis`, if integral.
pub fn coords_in(basis: &[IVec], y: &[i64]) -> Option<IVec> {
    let dim = y.len();
    let m = columns(basis, dim);
    solve(&m, y, basis.len()).map(|(x, _)| x)
}

/// Intersection of two lattices in `Z^dim`, in Hermite form.
pub fn intersect(a: &[IVec], b: &[IVec], dim: usize) -> Vec<IVec> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut gens: Vec<IVec> = a.to_vec();
    gens.extend(b.iter().map(|v| v.iter().map(|x| -x).collect()));
    let m = columns(&gens, dim);
    let ker = kernel(&m, gens.len());
    let pts: Vec<IVec> = ker
        .iter()
        .map(|k| {
            (0..dim)
                .map(|i| a.iter().enumerate().map(|(j, v)| k[j] * v[i]).sum())
                .collect()
        })
        .collect();
    lattice_basis(&pts, dim)
}

/// Lattice equality via Hermite bases.
pub fn same_lattice(a: &[IVec], b: &[IVec], dim: usize) -> bool {
    lattice_basis(a, dim) == lattice_basis(b, dim)
}

/// The finite group `Y/L` for a full-rank sublattice `L ⊆ Y = Z^r`.
///
/// Canonical representatives are the points of the Hermite box
/// `0 ≤ y_i < H_ii`, enumerated in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianQuotient {
    pub ambient_rank: usize,
    /// Hermite basis of `L`; vector `i` has its first nonzero entry at `i`.
    pub sublattice_basis: Vec<IVec>,
    /// Nontrivial invariant factors, ascending under divisibility.
    pub invariant_factors: Vec<i64>,
    /// Lifts of generators of the cyclic factors, aligned with `invariant_factors`.
    pub generators: Vec<IVec>,
    pub order: u64,
    snf_rows: IMat,
    snf_diag: Vec<i64>,
}

impl FiniteAbelianQuotient {
    pub fn new(ambient_rank: usize, gens: &[IVec]) -> Result<Self> {
        let basis = lattice_basis(gens, ambient_rank);
        if basis.len() != ambient_rank {
            return Err(Error::InfiniteQuotient {
                rank: basis.len(),
                ambient: ambient_rank,
            });
        }
        let order: u64 = (0..ambient_rank).map(|i| basis[i][i] as u64).product();
        let m = columns(&basis, ambient_rank);
        let (d, u, _v) = snf(&m);
        let uinv = unimodular_inverse(&u);
        let mut invariant_factors = Vec::new();
        let mut generators = Vec::new();
        let mut snf_rows = Vec::new();
        let mut snf_diag = Vec::new();
        for (i, &di) in d.iter().enumerate() {
            if di > 1 {
                invariant_factors.push(di);
                generators.push((0..ambient_rank).map(|r| uinv[r][i]).collect());
                snf_rows.push(u[i].clone());
                snf_diag.push(di);
            }
        }
        Ok(Self {
            ambient_rank,
            sublattice_basis: basis,
            invariant_factors,
            generators,
            order,
            snf_rows,
            snf_diag,
        })
    }

    pub fn canonical_rep(&self, y: &[i64]) -> IVec {
        let mut y = y.to_vec();
        for (i, b) in self.sublattice_basis.iter().enumerate() {
            let q = y[i].div_euclid(b[i]);
            if q != 0 {
                for (yj, bj) in y.iter_mut().zip(b) {
                    *yj -= q * bj;
                }
            }
        }
        y
    }

    pub fn contains(&self, y: &[i64]) -> bool {
        self.canonical_rep(y).iter().all(|&x| x == 0)
    }

    pub fn congruent(&self, a: &[i64], b: &[i64]) -> bool {
        let d: IVec = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.contains(&d)
    }

    /// Position of the class of `y` in the lexicographic list of representatives.
    pub fn index_of(&self, y: &[i64]) -> usize {
        let r = self.canonical_rep(y);
        let mut idx = 0usize;
        for (i, b) in self.sublattice_basis.iter().enumerate() {
            idx = idx * b[i] as usize + r[i] as usize;
        }
        idx
    }

    pub fn element(&self, mut idx: usize) -> IVec {
        let mut out = vec![0; self.ambient_rank];
        for i in (0..self.ambient_rank).rev() {
            let h = self.sublattice_basis[i][i] as usize;
            out[i] = (idx % h) as i64;
            idx /= h;
        }
        out
    }

    pub fn elements(&self) -> Vec<IVec> {
        (0..self.order as usize).map(|i| self.element(i)).collect()
    }

    /// Coordinates of the class of `y` in `⊕ Z/d_i`.
    pub fn snf_coords(&self, y: &[i64]) -> IVec {
        self.snf_rows
            .iter()
            .zip(&self.snf_diag)
            .map(|(row, &d)| dot(row, y).rem_euclid(d))
            .collect()
    }
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(u: &IMat) -> IMat {
    let n = u.len();
    let cols: Vec<IVec> = (0..n)
        .map(|j| {
            let e: IVec = (0..n).map(|i| i64::from(i == j)).collect();
            solve(u, &e, n).expect("matrix is not unimodular").0
        })
        .collect();
    columns(&cols, n)
}

/// Absolute determinant of a square integer matrix via its Hermite form.
pub fn abs_det(m: &IMat) -> u64 {
    let n = m.len();
    let (h, _u, pivots) = hnf_big(&to_big(m), n);
    if pivots.len() < n {
        return 0;
    }
    (0..n).map(|i| big_to_i64(&h[i][i]) as u64).product()
}
