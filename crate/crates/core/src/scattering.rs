//! Normalized scattering matrices `𝒩(w, χ) = c_gk(w, χ)^{-1}·M(w, χ)`, their
//! orbit blocks, and the Whittaker dimensions derived from them.
//!
//! Rows are indexed by the target point `y1`, columns by the source point `y`.
//! Composition follows `𝒩(w₂w₁, χ) = 𝒩(w₂, ^{w₁}χ)·𝒩(w₁, χ)`.

use std::collections::BTreeMap;

use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::character::{c_gk, gamma_inv, rgroup, Character, RGroupData};
use crate::cover::CoverDatum;
use crate::error::{Error, Result};
use crate::intlin::{dot, IVec};
use crate::scalars::{one_minus, one_minus_q_inv, Cyclotomic, Instantiation, Scalar};
use crate::smatrix::{self, SMatrix};
use crate::weylact::{twisted_simple, OrbitTable};

/// Numeric fallback settings.
#[derive(Clone, Debug)]
pub struct NumericOptions {
    pub q0: Vec<f64>,
    pub seed: u64,
    pub tol: f64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        Self {
            q0: vec![3.0, 7.0, 11.5],
            seed: 0,
            tol: 1e-9,
        }
    }
}

impl NumericOptions {
    pub fn instantiations(&self, n: u32, eps: i8) -> Vec<Instantiation> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        self.q0
            .iter()
            .map(|&q| Instantiation::random(n, eps, q, &mut rng))
            .collect()
    }
}

fn sign(eps: i8, e: i64) -> Scalar {
    if eps < 0 && e.rem_euclid(2) == 1 {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

fn zeta(m: u32, e: i64) -> Scalar {
    Scalar::from_cyclotomic(Cyclotomic::zeta_pow(m, e))
}

/// Orbit bookkeeping shared by all scattering computations on one cover.
#[derive(Clone, Debug)]
pub struct Scattering<'c> {
    pub cover: &'c CoverDatum,
    pub table: OrbitTable,
    /// Position of each class inside its orbit's sorted list.
    pub pos: Vec<usize>,
}

impl<'c> Scattering<'c> {
    pub fn new(cover: &'c CoverDatum) -> Self {
        let table = OrbitTable::new(cover);
        let mut pos = vec![0; table.reps.len()];
        for o in &table.orbits {
            for (k, &x) in o.iter().enumerate() {
                pos[x] = k;
            }
        }
        Self { cover, table, pos }
    }

    /// Factor `f` with `entry(p, ·) = f·entry(canon(p), ·)` when `ψ` is the row character.
    pub fn row_factor(&self, psi: &Character, p: &[i64]) -> (usize, Scalar) {
        let c = self.cover;
        let canon = c.x_qn.canonical_rep(p);
        let delta: IVec = p.iter().zip(&canon).map(|(a, b)| a - b).collect();
        let f = &sign(c.eps, c.dform(&canon, &delta)) * &zeta(psi.order(), -psi.eval_exp(&delta));
        (c.x_qn.index_of(&canon), f)
    }

    /// Factor `f` with `entry(·, p) = f·entry(·, canon(p))` when `χ` is the column character.
    pub fn col_factor(&self, chi: &Character, p: &[i64]) -> (usize, Scalar) {
        let c = self.cover;
        let canon = c.x_qn.canonical_rep(p);
        let delta: IVec = p.iter().zip(&canon).map(|(a, b)| a - b).collect();
        let f = &sign(c.eps, c.dform(&canon, &delta)) * &zeta(chi.order(), chi.eval_exp(&delta));
        (c.x_qn.index_of(&canon), f)
    }

    /// Block of `𝒩(s_i, χ)` on orbit `o`.
    pub fn simple_block(&self, i: usize, chi: &Character, o: usize) -> SMatrix {
        let c = self.cover;
        let d = &c.datum;
        let beta = d.simple_index(i);
        let na = c.n_alpha[beta];
        let xa = chi.chi_root(beta);
        let qa = c.q(&d.simple_coroots[i]);
        let coroot = &d.simple_coroots[i];
        let alpha = &d.simple_roots[i];
        let chi_s = chi.simple_act(i);
        let denom = one_minus_q_inv(&xa);
        let diag_base = one_minus_q_inv(&Cyclotomic::one(1))
            .div(&denom)
            .expect("1 - q^-1 chi_alpha is Gauss-free and nonzero");
        let off_base = one_minus(&xa).div(&denom).expect("Gauss-free denominator");
        let members = &self.table.orbits[o];
        let mut block = smatrix::zeros(members.len());
        for (col, &x) in members.iter().enumerate() {
            let r = &self.table.reps[x];
            let a = dot(alpha, r);
            let k = -Integer::div_floor(&(-a), &na);
            let diag = &diag_base * &Scalar::from_cyclotomic(Cyclotomic::zeta_pow(chi.order(), chi.chi_root_exp(beta) * k));
            block[col][col] = &block[col][col] + &diag;

            let y1 = twisted_simple(c, i, r);
            let (row_idx, rf) = {
                let canon = c.x_qn.canonical_rep(&y1);
                let delta: IVec = canon.iter().zip(&y1).map(|(p, q)| p - q).collect();
                let f = &sign(c.eps, c.dform(&y1, &delta)) * &zeta(chi_s.order(), -chi_s.eval_exp(&delta));
                (c.x_qn.index_of(&canon), f)
            };
            let g = Scalar::gauss(c.n, c.eps, (a - 1) * qa);
            let s2 = sign(c.eps, (a - 1) * c.dform(r, coroot));
            let entry = &(&(&rf * &off_base) * &s2) * &g;
            let row = self.pos[row_idx];
            block[row][col] = &block[row][col] + &entry;
        }
        block
    }

    /// Block of `𝒩(w, χ)` on orbit `o`, composed along the reduced word of `w`.
    pub fn block(&self, w: usize, chi: &Character, o: usize) -> SMatrix {
        self.word_block(&self.cover.datum.weyl.get(w).reduced_word, chi, o)
    }

    /// Product `𝒩(s_{word[0]}, ·)⋯𝒩(s_{word[last]}, χ)` on orbit `o`, for any word.
    pub fn word_block(&self, word: &[usize], chi: &Character, o: usize) -> SMatrix {
        let mut m = smatrix::identity(self.table.orbits[o].len());
        let mut cur = chi.clone();
        for &i in word.iter().rev() {
            m = smatrix::mul(&self.simple_block(i, &cur, o), &m);
            cur = cur.simple_act(i);
        }
        m
    }

    /// All orbit blocks of `𝒩(w, χ)`.
    pub fn blocks(&self, w: usize, chi: &Character) -> Vec<SMatrix> {
        (0..self.table.len()).map(|o| self.block(w, chi, o)).collect()
    }

    /// Assembles orbit blocks into a full `|𝒳| × |𝒳|` matrix in class order.
    pub fn assemble(&self, blocks: &[SMatrix]) -> SMatrix {
        let n = self.table.reps.len();
        let mut m = smatrix::zeros(n);
        for (o, b) in blocks.iter().enumerate() {
            let mem = &self.table.orbits[o];
            for (i, &x) in mem.iter().enumerate() {
                for (j, &y) in mem.iter().enumerate() {
                    m[x][y] = b[i][j].clone();
                }
            }
        }
        m
    }
}

/// Outcome of comparing `σ^Wh` with `σ^𝒳` on one orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// Gauss symbols survived; decided by unanimous numeric specialization.
    HoldsNumeric,
    FailsNumeric,
}

impl Verdict {
    pub fn holds(self) -> bool {
        matches!(self, Verdict::Holds | Verdict::HoldsNumeric)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::HoldsNumeric => "holds_numeric",
            Verdict::FailsNumeric => "fails_numeric",
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub reps: Vec<IVec>,
    /// `t_O(w)` for `w` in `R_χ`.
    pub traces: Vec<Scalar>,
    /// `|O^w|` for `w` in `R_χ`.
    pub fixed: Vec<usize>,
    /// Multiplicity of each irreducible of `R_χ` in `σ^Wh_O`; equals `dim Wh(π_σ)_O`.
    pub sigma_wh: Vec<i64>,
    pub sigma_x: Vec<i64>,
    /// False if any multiplicity needed numeric specialization.
    pub exact: bool,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct WhittakerReport {
    pub rgroup: RGroupData,
    pub orbits: Vec<OrbitReport>,
    /// `dim Wh_ψ(π_σ)` per irreducible of `R_χ`.
    pub dims: Vec<i64>,
}

fn numeric_integer(s: &Scalar, insts: &[Instantiation], tol: f64) -> Result<i64> {
    let mut val = None;
    for inst in insts {
        let z = s.specialize(inst)?;
        let k = z.re.round();
        if (z.re - k).abs() > tol || z.im.abs() > tol {
            return Err(Error::Internal(format!("pairing {s} is not an integer numerically: {z}")));
        }
        if *val.get_or_insert(k) != k {
            return Err(Error::Undecided(format!("instantiations disagree on {s}")));
        }
    }
    Ok(val.unwrap_or(0.0) as i64)
}

fn numeric_zero(s: &Scalar, insts: &[Instantiation], tol: f64) -> Result<bool> {
    let votes: Vec<bool> = insts
        .iter()
        .map(|i| s.specialize(i).map(|z| z.norm() <= tol))
        .collect::<Result<_>>()?;
    if votes.iter().all(|&v| v) {
        Ok(true)
    } else if votes.iter().all(|&v| !v) {
        Ok(false)
    } else {
        Err(Error::Undecided(format!("instantiations disagree on whether {s} vanishes")))
    }
}

/// Pairs class functions on `R_χ` against its irreducibles: `(1/|R|) Σ conj σ(w)·f(w)`.
fn pair(rg: &RGroupData, f: &[Scalar]) -> Vec<Scalar> {
    let k = rg.r_chi.len() as i64;
    rg.irr
        .iter()
        .map(|sigma| {
            let s: Scalar = f
                .iter()
                .zip(&sigma.exps)
                .map(|(x, &e)| x * &zeta(rg.exponent, -e))
                .sum();
            &s * &crate::scalars::ratio(1, k)
        })
        .collect()
}

/// Whittaker dimensions per orbit and irreducible, with per-orbit verdicts.
pub fn whittaker_dims(chi: &Character, opts: &NumericOptions) -> Result<WhittakerReport> {
    let c = chi.cover;
    let sc = Scattering::new(c);
    let rg = rgroup(chi)?;
    let insts = opts.instantiations(c.n, c.eps);
    let mut orbits = Vec::new();
    let mut dims = vec![0i64; rg.irr.len()];
    for o in 0..sc.table.len() {
        let traces: Vec<Scalar> = rg
            .r_chi
            .iter()
            .map(|&w| smatrix::trace(&sc.block(w, chi, o)))
            .collect();
        let fixed: Vec<usize> = rg.r_chi.iter().map(|&w| sc.table.perm_character(c, o, w)).collect();
        let mut exact = true;
        let mut sigma_wh = Vec::new();
        for s in pair(&rg, &traces) {
            match s.as_integer() {
                Some(k) => sigma_wh.push(k),
                None if s.is_gauss_free() => {
                    return Err(Error::Internal(format!("Whittaker pairing {s} is not an integer")));
                }
                None => {
                    exact = false;
                    sigma_wh.push(numeric_integer(&s, &insts, opts.tol)?);
                }
            }
        }
        let fixed_s: Vec<Scalar> = fixed.iter().map(|&k| Scalar::from_int(k as i64)).collect();
        let sigma_x = pair(&rg, &fixed_s)
            .iter()
            .map(|s| s.as_integer().ok_or_else(|| Error::Internal(format!("permutation pairing {s}"))))
            .collect::<Result<Vec<_>>>()?;
        let mut verdict = Verdict::Holds;
        for (t, f) in traces.iter().zip(&fixed_s) {
            let diff = t - f;
            if diff.is_zero() {
                continue;
            }
            if diff.is_gauss_free() {
                verdict = Verdict::Fails;
                break;
            }
            if !numeric_zero(&diff, &insts, opts.tol)? {
                verdict = Verdict::FailsNumeric;
                break;
            }
            verdict = Verdict::HoldsNumeric;
        }
        for (d, s) in dims.iter_mut().zip(&sigma_wh) {
            *d += s;
        }
        orbits.push(OrbitReport {
            reps: sc.table.orbits[o].iter().map(|&x| sc.table.reps[x].clone()).collect(),
            traces,
            fixed,
            sigma_wh,
            sigma_x,
            exact,
            verdict,
        });
    }
    Ok(WhittakerReport { rgroup: rg, orbits, dims })
}

/// Un-normalized block `M(w, χ) = c_gk(w, χ)·𝒩(w, χ)` on orbit `o`.
pub fn unnormalized_block(sc: &Scattering, w: usize, chi: &Character, o: usize) -> Result<SMatrix> {
    let f = c_gk(w, chi)?;
    Ok(smatrix::scale(&sc.block(w, chi, o), &f))
}

/// For each singleton exceptional orbit and each `w ∈ R_χ`, whether the
/// un-normalized block equals `γ(w, χ)^{-1}`.
pub fn exceptional_blocks(chi: &Character) -> Result<BTreeMap<IVec, Vec<bool>>> {
    let c = chi.cover;
    let sc = Scattering::new(c);
    let rg = rgroup(chi)?;
    let mut out = BTreeMap::new();
    for z in c.exceptional_points()? {
        let o = sc.table.orbit_of_point(c, &z);
        if sc.table.orbits[o].len() != 1 {
            return Err(Error::Internal(format!("exceptional class {z:?} has a non-singleton orbit")));
        }
        let mut ok = Vec::new();
        for &w in &rg.r_chi {
            let m = unnormalized_block(&sc, w, chi, o)?;
            ok.push(m[0][0] == gamma_inv(w, chi)?);
        }
        out.insert(z, ok);
    }
    Ok(out)
}
