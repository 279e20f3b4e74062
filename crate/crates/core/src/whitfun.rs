//! Values of the unramified Whittaker functionals on torus points.
//!
//! `W*_z(s_y) = δ^{-1/2}(s_y) Σ_w c_gk(w_G w^{-1}, χ)·c_gk(w, χ′)·𝒩(w, χ′)[z, y]`
//! with `χ′ = ^{w^{-1}}χ`. The sum needs `Φ_χ = ∅`.

use num_complex::Complex64;

use crate::character::{c_gk, Character};
use crate::error::{Error, Result};
use crate::cover::CoverDatum;
use crate::intlin::{dot, solve, IMat, IVec};
use crate::scattering::{NumericOptions, Scattering};
use crate::scalars::{Instantiation, Scalar};
use crate::smatrix::{self, SMatrix};

/// `δ^{1/2}(s_y) = v^{⟨y, 2ρ⟩}`.
pub fn delta_half(c: &CoverDatum, y: &[i64]) -> Scalar {
    Scalar::v_pow(dot(y, &c.datum.two_rho_hat))
}

fn check_regular(chi: &Character) -> Result<()> {
    match chi.phi_chi().first() {
        Some(&b) => Err(Error::Pole {
            root: b,
            coords: chi.cover.datum.pos_coroot_coords[b].clone(),
        }),
        None => Ok(()),
    }
}

/// Block row and transport factor of each point, as a functional index.
fn row_data(sc: &Scattering, chi: &Character, o: usize, points: &[IVec]) -> Result<Vec<(usize, Scalar)>> {
    points
        .iter()
        .map(|p| {
            let (x, f) = sc.row_factor(chi, p);
            if sc.table.orbit_of[x] != o {
                return Err(Error::InvalidDatum(format!("point {p:?} is not in orbit {o}")));
            }
            Ok((sc.pos[x], f))
        })
        .collect()
}

/// Block column and `(transport)·δ^{-1/2}` of each point, for the column character `χ′`.
fn col_data(sc: &Scattering, chi_p: &Character, points: &[IVec]) -> Result<Vec<(usize, Scalar)>> {
    points
        .iter()
        .map(|y| {
            let (x, f) = sc.col_factor(chi_p, y);
            Ok((sc.pos[x], &f * &delta_half(sc.cover, y).inv()?))
        })
        .collect()
}

/// Evaluation matrix on orbit `o` with `(a, b)`-entry `W*_{s_{points[a]}}(s_{points[b]})`.
/// All points must lie in classes of the orbit.
pub fn eval_matrix(sc: &Scattering, chi: &Character, o: usize, points: &[IVec]) -> Result<SMatrix> {
    check_regular(chi)?;
    let rows = row_data(sc, chi, o, points)?;
    let weyl = &sc.cover.datum.weyl;
    let w0 = weyl.longest();
    let k = points.len();
    let mut out = vec![vec![Scalar::zero(); k]; k];
    for w in 0..weyl.len() {
        let winv = weyl.inverse(w);
        let chi_p = chi.act(winv);
        let coeff = &c_gk(weyl.mul(w0, winv), chi)? * &c_gk(w, &chi_p)?;
        let block = sc.block(w, &chi_p, o);
        for (b, (col, cf)) in col_data(sc, &chi_p, points)?.iter().enumerate() {
            let cf = &coeff * cf;
            for (a, (row, rf)) in rows.iter().enumerate() {
                if !block[*row][*col].is_zero() {
                    out[a][b] = &out[a][b] + &(&(&cf * rf) * &block[*row][*col]);
                }
            }
        }
    }
    Ok(out)
}

type CMat = Vec<Vec<Complex64>>;

fn cmul(a: &CMat, b: &CMat) -> CMat {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![Complex64::new(0.0, 0.0); m];
            for (t, x) in row.iter().enumerate() {
                if x.norm() != 0.0 {
                    for (o, y) in out.iter_mut().zip(&b[t]) {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

/// `c_gk(w, χ)` at `inst`.
fn c_gk_numeric(w: usize, chi: &Character, inst: &Instantiation) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    chi.cover.datum.weyl.get(w).inversion_set.iter().fold(one, |acc, &b| {
        let x = chi.chi_root(b).to_complex();
        acc * (one - x / inst.q0) / (one - x)
    })
}

/// [`eval_matrix`] specialized at `inst`, with blocks and Gindikin–Karpelevich
/// factors evaluated in floating point. Entries that cancel to within `tol`
/// of the total magnitude of their summands are set to zero.
pub fn eval_matrix_numeric(
    sc: &Scattering,
    chi: &Character,
    o: usize,
    points: &[IVec],
    inst: &Instantiation,
    tol: f64,
) -> Result<CMat> {
    check_regular(chi)?;
    let rows: Vec<(usize, Complex64)> = row_data(sc, chi, o, points)?
        .iter()
        .map(|(r, f)| Ok((*r, f.specialize(inst)?)))
        .collect::<Result<_>>()?;
    let weyl = &sc.cover.datum.weyl;
    let w0 = weyl.longest();
    let size = sc.table.orbits[o].len();
    let k = points.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); k]; k];
    let mut mag = vec![vec![0.0f64; k]; k];
    for w in 0..weyl.len() {
        let winv = weyl.inverse(w);
        let chi_p = chi.act(winv);
        let coeff = c_gk_numeric(weyl.mul(w0, winv), chi, inst) * c_gk_numeric(w, &chi_p, inst);
        let mut block: CMat = (0..size)
            .map(|i| (0..size).map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
            .collect();
        let mut cur = chi_p.clone();
        for &i in weyl.get(w).reduced_word.iter().rev() {
            block = cmul(&smatrix::specialize(&sc.simple_block(i, &cur, o), inst)?, &block);
            cur = cur.simple_act(i);
        }
        for (b, (col, cf)) in col_data(sc, &chi_p, points)?.iter().enumerate() {
            let cf = coeff * cf.specialize(inst)?;
            for (a, (row, rf)) in rows.iter().enumerate() {
                let t = cf * rf * block[*row][*col];
                out[a][b] += t;
                mag[a][b] += t.norm();
            }
        }
    }
    for (row, m) in out.iter_mut().zip(&mag) {
        for (x, m) in row.iter_mut().zip(m) {
            if x.norm() <= tol * m {
                *x = Complex64::new(0.0, 0.0);
            }
        }
    }
    Ok(out)
}

/// `W*_{s_z}(s_y)` for a single pair of points.
pub fn wstar(chi: &Character, z: &[i64], y: &[i64]) -> Result<Scalar> {
    let sc = Scattering::new(chi.cover);
    let oz = sc.table.orbit_of_point(chi.cover, z);
    if sc.table.orbit_of_point(chi.cover, y) != oz {
        return Ok(Scalar::zero());
    }
    let m = eval_matrix(&sc, chi, oz, &[z.to_vec(), y.to_vec()])?;
    Ok(m[0][1].clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankProvenance {
    Symbolic,
    Numeric,
}

impl RankProvenance {
    pub fn as_str(self) -> &'static str {
        match self {
            RankProvenance::Symbolic => "symbolic",
            RankProvenance::Numeric => "numeric",
        }
    }
}

/// Rank of a Whittaker evaluation matrix: exact minors up to size 4, otherwise
/// unanimous numeric rank over the configured instantiations.
pub fn nu_rank(m: &SMatrix, opts: &NumericOptions, n: u32, eps: i8) -> Result<(usize, RankProvenance)> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if rows.max(cols) <= 4 {
        let (r, doubt) = smatrix::rank_by_minors(m);
        if !doubt {
            return Ok((r, RankProvenance::Symbolic));
        }
    }
    let mut rank = None;
    for inst in opts.instantiations(n, eps) {
        let r = smatrix::numeric_rank(&smatrix::specialize(m, &inst)?, opts.tol);
        if *rank.get_or_insert(r) != r {
            return Err(Error::Undecided("numeric ranks disagree across instantiations".into()));
        }
    }
    Ok((rank.unwrap_or(0), RankProvenance::Numeric))
}

#[derive(Clone, Debug)]
pub struct EvalMatrix {
    pub orbit: usize,
    pub reps: Vec<IVec>,
    /// Exact entries; `None` for orbits evaluated only numerically.
    pub entries: Option<SMatrix>,
    pub rank: usize,
    pub provenance: RankProvenance,
}

/// Lift of `y` by a multiple of `2ρ_{Q,n}` that pairs non-positively with every simple root.
fn antidominant_lift(c: &CoverDatum, y: &[i64]) -> IVec {
    let d = &c.datum;
    let s = &c.two_rho_qn;
    let k = (0..d.rank())
        .map(|i| {
            let p = dot(s, &d.simple_roots[i]);
            let a = dot(y, &d.simple_roots[i]);
            if a > 0 {
                (a + p - 1) / p
            } else {
                0
            }
        })
        .max()
        .unwrap_or(0);
    y.iter().zip(s).map(|(a, b)| a - k * b).collect()
}

/// Lift `z` of `y` with `⟨z, α⟩ = 1 − n_α` for every simple `α`, if one exists.
fn exceptional_lift(c: &CoverDatum, y: &[i64]) -> Option<IVec> {
    let d = &c.datum;
    let r = d.rank();
    if r == 0 {
        return None;
    }
    let a: IMat = (0..r)
        .map(|i| c.y_qn.iter().map(|b| dot(b, &d.simple_roots[i])).collect())
        .collect();
    let t: IVec = (0..r)
        .map(|i| 1 - c.n_alpha[d.simple_index(i)] - dot(y, &d.simple_roots[i]))
        .collect();
    let (x, _) = solve(&a, &t, c.y_qn.len())?;
    let mut z = y.to_vec();
    for (cj, b) in x.iter().zip(&c.y_qn) {
        for (zi, bi) in z.iter_mut().zip(b) {
            *zi += cj * bi;
        }
    }
    Some(z)
}

/// Sample points for orbit `o`, one per class in orbit order. A singleton
/// exceptional class uses its exceptional lift; every other class uses its
/// antidominant lift.
pub fn orbit_points(sc: &Scattering, o: usize) -> Vec<IVec> {
    let c = sc.cover;
    let members = &sc.table.orbits[o];
    members
        .iter()
        .map(|&x| {
            let y = &sc.table.reps[x];
            let exc = if members.len() == 1 { exceptional_lift(c, y) } else { None };
            exc.unwrap_or_else(|| antidominant_lift(c, y))
        })
        .collect()
}

/// Largest orbit evaluated symbolically by [`whitrank`].
pub const SYMBOLIC_ORBIT_LIMIT: usize = 4;
/// Largest Weyl group for which [`whitrank`] evaluates symbolically.
pub const SYMBOLIC_WEYL_LIMIT: usize = 48;

/// Evaluation matrix and its rank on every orbit, sampled at [`orbit_points`].
/// Orbits larger than [`SYMBOLIC_ORBIT_LIMIT`], and every orbit when `|W|`
/// exceeds [`SYMBOLIC_WEYL_LIMIT`], are evaluated numerically only.
pub fn whitrank(chi: &Character, opts: &NumericOptions) -> Result<Vec<EvalMatrix>> {
    let c = chi.cover;
    let sc = Scattering::new(c);
    (0..sc.table.len())
        .map(|o| {
            let reps = orbit_points(&sc, o);
            if reps.len() <= SYMBOLIC_ORBIT_LIMIT && c.datum.weyl.len() <= SYMBOLIC_WEYL_LIMIT {
                let entries = eval_matrix(&sc, chi, o, &reps)?;
                let (rank, provenance) = nu_rank(&entries, opts, c.n, c.eps)?;
                return Ok(EvalMatrix {
                    orbit: o,
                    reps,
                    entries: Some(entries),
                    rank,
                    provenance,
                });
            }
            let mut rank = None;
            for inst in opts.instantiations(c.n, c.eps) {
                let m = eval_matrix_numeric(&sc, chi, o, &reps, &inst, opts.tol)?;
                let r = smatrix::numeric_rank(&m, opts.tol);
                if *rank.get_or_insert(r) != r {
                    return Err(Error::Undecided("numeric ranks disagree across instantiations".into()));
                }
            }
            Ok(EvalMatrix {
                orbit: o,
                reps,
                entries: None,
                rank: rank.unwrap_or(0),
                provenance: RankProvenance::Numeric,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{Bisector, CoverDatum, QuadraticInput};
    use crate::rootdata::{CartanType, RootDatum};
    use crate::scalars::one_minus_q_inv;

    fn preset(t: CartanType, r: usize, q: Vec<i64>, n: u32) -> CoverDatum {
        CoverDatum::new(
            RootDatum::preset(t, r).unwrap(),
            QuadraticInput::OnSimpleCoroots(q),
            Bisector::StandardUpper,
            n,
            1,
        )
        .unwrap()
    }

    #[test]
    fn delta_half_examples() {
        let c = preset(CartanType::A, 1, vec![1], 3);
        assert!(delta_half(&c, &[0]).is_one());
        assert_eq!(delta_half(&c, &[1]), Scalar::q_inv());
        let c = preset(CartanType::A, 2, vec![1, 1], 2);
        // 2ρ̂ = 2α₁ + 2α₂ pairs to 2 with α₁^∨.
        assert_eq!(delta_half(&c, &[1, 0]), Scalar::v_pow(2));
        assert_eq!(delta_half(&c, &[1, 1]), Scalar::v_pow(4));
    }

    #[test]
    fn so3_value_at_e_vanishes() {
        for m in 1..=3u32 {
            let d = RootDatum::custom(1, vec![vec![2]], vec![vec![1]]).unwrap();
            let c = CoverDatum::new(d, QuadraticInput::Gram(vec![vec![2]]), Bisector::StandardUpper, 4 * m, 1).unwrap();
            let chi = Character::new(&c, 2, vec![1]).unwrap();
            assert!(wstar(&chi, &[1], &[1]).unwrap().is_zero());
        }
    }

    #[test]
    fn exceptional_diagonal_value() {
        let c = preset(CartanType::A, 2, vec![1, 1], 2);
        let chi = Character::from_chi_alpha(&c, 3, &[1, 1]).unwrap();
        // ρ − ρ_{Q,n} = −ρ here, the anti-dominant lift of the exceptional class.
        let z = vec![-1, -1];
        let mut expect = delta_half(&c, &z).inv().unwrap();
        for b in 0..c.datum.pos_roots.len() {
            expect = &expect * &one_minus_q_inv(&chi.chi_root(b));
        }
        assert_eq!(wstar(&chi, &z, &z).unwrap(), expect);
    }

    #[test]
    fn pole_guard() {
        let c = preset(CartanType::A, 1, vec![1], 3);
        let chi = Character::trivial(&c);
        let sc = Scattering::new(&c);
        assert!(matches!(eval_matrix(&sc, &chi, 0, &[vec![0]]), Err(Error::Pole { .. })));
    }

    #[test]
    fn generic_sl2_blocks_have_full_rank() {
        for n in [3u32, 5, 7] {
            let c = preset(CartanType::A, 1, vec![1], n);
            let chi = Character::new(&c, 7, vec![2]).unwrap();
            let dims = crate::scattering::whittaker_dims(&chi, &NumericOptions::default()).unwrap();
            assert_eq!(dims.rgroup.irr.len(), 1);
            for m in whitrank(&chi, &NumericOptions::default()).unwrap() {
                assert!(!smatrix::det(m.entries.as_ref().unwrap()).is_zero());
                assert_eq!(m.rank, m.reps.len());
            }
        }
    }
}
