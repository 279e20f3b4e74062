//! Covers of a split group: the quadratic form `Q`, the bisector `D`, and the
//! lattice invariants derived from them.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::intlin::{self, columns, coords_in, dot, mat_vec, transpose, FiniteAbelianQuotient, IMat, IVec};
use crate::rootdata::{cartan_label, RootDatum};

/// How `B_Q` is specified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadraticInput {
    /// `Q(α_i^∨)` for each simple coroot; only for data where `Δ^∨` is a basis of `Y`.
    OnSimpleCoroots(Vec<i64>),
    /// The full Gram matrix of `B_Q` on the standard basis of `Y`.
    Gram(IMat),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Bisector {
    #[default]
    StandardUpper,
    Explicit(IMat),
}

#[derive(Clone, Debug)]
pub struct CoverDatum {
    pub datum: RootDatum,
    pub n: u32,
    pub eps: i8,
    /// Gram matrix of `B_Q`.
    pub bq: IMat,
    /// Bisector with `D + Dᵀ = B_Q`.
    pub d: IMat,
    /// `n_α` for each positive root.
    pub n_alpha: Vec<i64>,
    /// Hermite basis of `Y_{Q,n}`.
    pub y_qn: Vec<IVec>,
    /// Hermite basis of `Y_{Q,n}^sc`, spanned by the `n_α·α^∨`.
    pub y_qn_sc: Vec<IVec>,
    pub x_qn: FiniteAbelianQuotient,
    /// `Σ_{α>0} n_α·α^∨ = 2ρ_{Q,n}`.
    pub two_rho_qn: IVec,
    /// `⟨n_{α_i}α_i^∨, α_j/n_{α_j}⟩`.
    pub dual_cartan: IMat,
    /// Cartan type of the dual group `G̃^∨`.
    pub dual_label: String,
    /// `|Y_{Q,n}/Y_{Q,n}^sc|`, finite only for semisimple data.
    pub center_order: Option<u64>,
    pub saturated: bool,
    pub metaplectic: bool,
}

impl CoverDatum {
    pub fn new(datum: RootDatum, q: QuadraticInput, bisector: Bisector, n: u32, eps: i8) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCover("degree n must be positive".into()));
        }
        if eps != 1 && eps != -1 {
            return Err(Error::InvalidCover(format!("epsilon must be ±1, got {eps}")));
        }
        if eps == -1 && n % 2 == 1 {
            return Err(Error::EpsilonOddDegree(n));
        }
        let ry = datum.rank_y;
        let r = datum.rank();
        let bq = match q {
            QuadraticInput::OnSimpleCoroots(qs) => {
                if qs.len() != r {
                    return Err(Error::InvalidCover(format!("expected {r} values of Q, got {}", qs.len())));
                }
                let unit = datum
                    .simple_coroots
                    .iter()
                    .enumerate()
                    .all(|(i, c)| c.iter().enumerate().all(|(k, &x)| x == i64::from(k == i)));
                if ry != r || !unit {
                    return Err(Error::InvalidCover(
                        "Q on simple coroots needs Y spanned by the simple coroots; supply gram_bq".into(),
                    ));
                }
                let a = &datum.cartan;
                for i in 0..r {
                    for j in 0..r {
                        if qs[i] * a[j][i] != qs[j] * a[i][j] {
                            return Err(Error::InvalidCover(format!(
                                "Q is not Weyl-invariant: Q(α_{i}^∨)·a_{j}{i} ≠ Q(α_{j}^∨)·a_{i}{j}"
                            )));
                        }
                    }
                }
                (0..r).map(|i| (0..r).map(|j| qs[i] * a[j][i]).collect()).collect()
            }
            QuadraticInput::Gram(g) => {
                if g.len() != ry || g.iter().any(|row| row.len() != ry) {
                    return Err(Error::InvalidCover(format!("gram_bq must be {ry}×{ry}")));
                }
                g
            }
        };
        for i in 0..ry {
            if bq[i][i] % 2 != 0 {
                return Err(Error::InvalidCover(format!("B_Q diagonal entry {i} is odd")));
            }
            for j in 0..ry {
                if bq[i][j] != bq[j][i] {
                    return Err(Error::InvalidCover("B_Q is not symmetric".into()));
                }
            }
        }
        for w in 0..r {
            let s = &datum.weyl.get(datum.weyl.simple(w)).matrix;
            let t = intlin::mat_mul(&intlin::mat_mul(&transpose(s), &bq), s);
            if t != bq {
                return Err(Error::InvalidCover(format!(
                    "B_Q is not invariant under the simple reflection s_{w}"
                )));
            }
        }
        let d = match bisector {
            Bisector::StandardUpper => (0..ry)
                .map(|i| {
                    (0..ry)
                        .map(|j| match i.cmp(&j) {
                            std::cmp::Ordering::Less => bq[i][j],
                            std::cmp::Ordering::Equal => bq[i][i] / 2,
                            std::cmp::Ordering::Greater => 0,
                        })
                        .collect()
                })
                .collect(),
            Bisector::Explicit(d) => {
                if d.len() != ry || d.iter().any(|row| row.len() != ry) {
                    return Err(Error::InvalidCover(format!("bisector must be {ry}×{ry}")));
                }
                for i in 0..ry {
                    for j in 0..ry {
                        if d[i][j] + d[j][i] != bq[i][j] {
                            return Err(Error::InvalidCover("bisector does not satisfy D + Dᵀ = B_Q".into()));
                        }
                    }
                }
                d
            }
        };

        let nn = n as i64;
        let qform = |y: &[i64]| dot(y, &mat_vec(&bq, y)) / 2;
        let n_alpha: Vec<i64> = datum
            .pos_coroots
            .iter()
            .map(|c| nn / nn.gcd(&qform(c)))
            .collect();

        let mut big = bq.clone();
        for (i, row) in big.iter_mut().enumerate() {
            row.extend((0..ry).map(|j| if i == j { nn } else { 0 }));
        }
        let ker = intlin::kernel(&big, 2 * ry);
        let gens: Vec<IVec> = ker.iter().map(|k| k[..ry].to_vec()).collect();
        let y_qn = intlin::lattice_basis(&gens, ry);
        let sc_gens: Vec<IVec> = datum
            .pos_coroots
            .iter()
            .zip(&n_alpha)
            .map(|(c, &k)| c.iter().map(|x| x * k).collect())
            .collect();
        let y_qn_sc = intlin::lattice_basis(&sc_gens, ry);
        let x_qn = FiniteAbelianQuotient::new(ry, &y_qn)?;

        let mut two_rho_qn = vec![0; ry];
        for g in &sc_gens {
            for k in 0..ry {
                two_rho_qn[k] += g[k];
            }
        }

        let simple_n: Vec<i64> = (0..r).map(|i| n_alpha[datum.simple_index(i)]).collect();
        let dual_cartan: IMat = (0..r)
            .map(|i| (0..r).map(|j| datum.cartan[i][j] * simple_n[i] / simple_n[j]).collect())
            .collect();
        let dual_label = cartan_label(&transpose(&dual_cartan));

        let center_order = if datum.is_semisimple() {
            let coords: Vec<IVec> = y_qn_sc
                .iter()
                .map(|v| coords_in(&y_qn, v).expect("Y_Qn^sc ⊆ Y_Qn"))
                .collect();
            Some(intlin::abs_det(&columns(&coords, ry)))
        } else {
            None
        };

        let y_sc = intlin::lattice_basis(&datum.simple_coroots, ry);
        let saturated = intlin::same_lattice(&y_qn_sc, &intlin::intersect(&y_qn, &y_sc, ry), ry);

        let mut cover = Self {
            datum,
            n,
            eps,
            bq,
            d,
            n_alpha,
            y_qn,
            y_qn_sc,
            x_qn,
            two_rho_qn,
            dual_cartan,
            dual_label,
            center_order,
            saturated,
            metaplectic: false,
        };
        cover.metaplectic = (0..r).any(|i| !cover.phi_surjective(i));
        Ok(cover)
    }

    pub fn rank_y(&self) -> usize {
        self.datum.rank_y
    }

    /// `B_Q(y1, y2)`.
    pub fn b(&self, y1: &[i64], y2: &[i64]) -> i64 {
        dot(y1, &mat_vec(&self.bq, y2))
    }

    /// `D(y1, y2) = y1ᵀ·D·y2`.
    pub fn dform(&self, y1: &[i64], y2: &[i64]) -> i64 {
        dot(y1, &mat_vec(&self.d, y2))
    }

    pub fn q(&self, y: &[i64]) -> i64 {
        self.b(y, y) / 2
    }

    /// `n_α·α^∨` for the positive root `beta`.
    pub fn qn_coroot(&self, beta: usize) -> IVec {
        let k = self.n_alpha[beta];
        self.datum.pos_coroots[beta].iter().map(|x| x * k).collect()
    }

    /// Coordinates of `y` in the Hermite basis of `Y_{Q,n}`, if `y ∈ Y_{Q,n}`.
    pub fn y_qn_coords(&self, y: &[i64]) -> Option<IVec> {
        let mut y = y.to_vec();
        let mut out = Vec::with_capacity(self.y_qn.len());
        for (i, b) in self.y_qn.iter().enumerate() {
            if y[i] % b[i] != 0 {
                return None;
            }
            let q = y[i] / b[i];
            for (yj, bj) in y.iter_mut().zip(b) {
                *yj -= q * bj;
            }
            out.push(q);
        }
        Some(out)
    }

    /// Membership in `Y_{Q,n}` straight from the definition.
    pub fn in_y_qn(&self, y: &[i64]) -> bool {
        let nn = self.n as i64;
        mat_vec(&self.bq, y).iter().all(|x| x % nn == 0)
    }

    /// The root datum of the dual group, written in coordinates of `Y_{Q,n}`.
    pub fn dual_datum(&self) -> Result<RootDatum> {
        let r = self.datum.rank();
        let mut coroots = Vec::new();
        let mut roots = Vec::new();
        for i in 0..r {
            let beta = self.datum.simple_index(i);
            let k = self.n_alpha[beta];
            coroots.push(
                coords_in(&self.y_qn, &self.qn_coroot(beta))
                    .ok_or_else(|| Error::Internal("n_α·α^∨ ∉ Y_Qn".into()))?,
            );
            let mut root = Vec::new();
            for b in &self.y_qn {
                let p = dot(&self.datum.simple_roots[i], b);
                if p % k != 0 {
                    return Err(Error::Internal("α/n_α is not integral on Y_Qn".into()));
                }
                root.push(p / k);
            }
            roots.push(root);
        }
        RootDatum::custom(self.rank_y(), coroots, roots)
    }

    fn phi_surjective(&self, i: usize) -> bool {
        let alpha = &self.datum.simple_roots[i];
        let k = self.n_alpha[self.datum.simple_index(i)];
        let coroot = &self.datum.simple_coroots[i];
        let kp = (1..=k)
            .find(|&t| self.x_qn.contains(&coroot.iter().map(|x| x * t).collect::<IVec>()))
            .expect("n_α·α^∨ ∈ Y_Qn");
        let g = self.y_qn.iter().fold(0i64, |acc, b| acc.gcd(&dot(alpha, b)));
        let h = alpha.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        let gk = g.gcd(&k);
        let period = kp.lcm(&gk);
        !(0..period).any(|j| {
            let a1 = h * j - 1;
            a1.rem_euclid(kp) == 0 && a1.rem_euclid(gk) != 0
        })
    }

    /// Classes of exceptional points `{z : ⟨z, α⟩ = 1 − n_α for α ∈ Δ}` in `𝒳_{Q,n}`.
    pub fn exceptional_points(&self) -> Result<Vec<IVec>> {
        if self.metaplectic {
            return Err(Error::Metaplectic(
                "exceptional points are only defined for covers not of metaplectic type".into(),
            ));
        }
        let r = self.datum.rank();
        let a: IMat = self.datum.simple_roots.clone();
        let b: IVec = (0..r)
            .map(|i| 1 - self.n_alpha[self.datum.simple_index(i)])
            .collect();
        let Some((part, ker)) = intlin::solve(&a, &b, self.rank_y()) else {
            return Ok(vec![]);
        };
        let mut found: BTreeSet<IVec> = BTreeSet::new();
        let start = self.x_qn.canonical_rep(&part);
        found.insert(start.clone());
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for k in &ker {
                let y: IVec = x.iter().zip(k).map(|(a, b)| a + b).collect();
                let c = self.x_qn.canonical_rep(&y);
                if found.insert(c.clone()) {
                    stack.push(c);
                }
            }
        }
        Ok(found.into_iter().collect())
    }
}
