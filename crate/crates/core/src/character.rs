//! Unitary unramified genuine characters and their R-groups.
//!
//! A character is stored as exponents `e_i ∈ Z/m` on the Hermite basis `b_i`
//! of `Y_{Q,n}`, meaning `χ(s_{b_i}) = ζ_m^{e_i}`. For `y = Σ c_i b_i` the value
//! is taken through the ordered product `s_{b_1}^{c_1} ⋯ s_{b_k}^{c_k}`, which
//! differs from `s_y` by `ε^{q(c)}` with
//! `q(c) = Σ_{i<j} c_i c_j D(b_i, b_j) + Σ_i C(c_i, 2) D(b_i, b_i)`.

use std::collections::{HashMap, HashSet, VecDeque};

use num_integer::Integer;

use crate::cover::CoverDatum;
use crate::error::{Error, Result};
use crate::intlin::{self, dot, FiniteAbelianQuotient, IVec};
use crate::scalars::{one_minus, one_minus_q_inv, Cyclotomic, Scalar};

#[derive(Clone, Debug)]
pub struct Character<'c> {
    pub cover: &'c CoverDatum,
    m: u32,
    exps: Vec<i64>,
}

impl PartialEq for Character<'_> {
    fn eq(&self, o: &Self) -> bool {
        std::ptr::eq(self.cover, o.cover) && self.m == o.m && self.exps == o.exps
    }
}

impl Eq for Character<'_> {}

impl std::hash::Hash for Character<'_> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.m.hash(state);
        self.exps.hash(state);
    }
}

/// `ε^{q(c)}` exponent parity for coordinates `c` in the basis `basis`.
fn cocycle_parity(c: &CoverDatum, basis: &[IVec], coords: &[i64]) -> i64 {
    let mut q = 0i64;
    for i in 0..coords.len() {
        if coords[i] == 0 {
            continue;
        }
        let ci = coords[i];
        q += ci * (ci - 1) / 2 * c.dform(&basis[i], &basis[i]);
        for j in i + 1..coords.len() {
            q += ci * coords[j] * c.dform(&basis[i], &basis[j]);
        }
    }
    q.rem_euclid(2)
}

impl<'c> Character<'c> {
    /// Character with `χ(s_{b_i}) = ζ_m^{exps[i]}` on the Hermite basis of `Y_{Q,n}`.
    pub fn new(cover: &'c CoverDatum, m: u32, exps: Vec<i64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidCharacter("order must be positive".into()));
        }
        if exps.len() != cover.y_qn.len() {
            return Err(Error::InvalidCharacter(format!(
                "expected {} exponents (one per basis vector of Y_Qn), got {}",
                cover.y_qn.len(),
                exps.len()
            )));
        }
        let (mut m, mut exps) = (m as i64, exps);
        if cover.eps < 0 && m % 2 == 1 {
            m *= 2;
            exps.iter_mut().for_each(|e| *e *= 2);
        }
        Ok(Self::normalized(cover, m, exps))
    }

    fn normalized(cover: &'c CoverDatum, m: i64, mut exps: Vec<i64>) -> Self {
        exps.iter_mut().for_each(|e| *e = e.rem_euclid(m));
        let mut g = exps.iter().fold(m, |acc, &e| acc.gcd(&e));
        if cover.eps < 0 && (m / g) % 2 == 1 {
            g /= 2;
        }
        Self {
            cover,
            m: (m / g) as u32,
            exps: exps.into_iter().map(|e| e / g).collect(),
        }
    }

    pub fn trivial(cover: &'c CoverDatum) -> Self {
        let m = if cover.eps < 0 { 2 } else { 1 };
        Self::normalized(cover, m, vec![0; cover.y_qn.len()])
    }

    /// Character from values `ζ_m^{exps[j]}` on an arbitrary Z-basis `basis` of `Y_{Q,n}`.
    pub fn from_basis_values(cover: &'c CoverDatum, m: u32, basis: &[IVec], exps: &[i64]) -> Result<Self> {
        let ry = cover.rank_y();
        if basis.len() != ry || exps.len() != ry || !intlin::same_lattice(basis, &cover.y_qn, ry) {
            return Err(Error::InvalidCharacter("the given vectors are not a basis of Y_Qn".into()));
        }
        if m == 0 {
            return Err(Error::InvalidCharacter("order must be positive".into()));
        }
        let mm = if cover.eps < 0 && m % 2 == 1 { 2 * m as i64 } else { m as i64 };
        let scale = mm / m as i64;
        let out = cover
            .y_qn
            .iter()
            .map(|b| {
                let c = intlin::coords_in(basis, b).expect("basis spans Y_Qn");
                let mut e: i64 = c.iter().zip(exps).map(|(x, y)| x * y * scale).sum();
                if cover.eps < 0 {
                    e += mm / 2 * cocycle_parity(cover, basis, &c);
                }
                e
            })
            .collect();
        Ok(Self::normalized(cover, mm, out))
    }

    /// Simple coroots scaled to `n_{α_i}·α_i^∨`.
    pub fn simple_qn_coroots(cover: &CoverDatum) -> Vec<IVec> {
        (0..cover.datum.rank())
            .map(|i| cover.qn_coroot(cover.datum.simple_index(i)))
            .collect()
    }

    /// Character with `χ_{α_i} = ζ_m^{exps[i]}`; needs `{n_α·α^∨ : α ∈ Δ}` to be a basis of `Y_{Q,n}`.
    pub fn from_chi_alpha(cover: &'c CoverDatum, m: u32, exps: &[i64]) -> Result<Self> {
        let basis = Self::simple_qn_coroots(cover);
        if basis.len() != cover.rank_y() || !intlin::same_lattice(&basis, &cover.y_qn, cover.rank_y()) {
            return Err(Error::InvalidCharacter(
                "chi_alpha values need the scaled simple coroots to form a basis of Y_Qn; give values on the Y_Qn basis instead"
                    .into(),
            ));
        }
        if exps.len() != basis.len() {
            return Err(Error::InvalidCharacter(format!("expected {} values of chi_alpha", basis.len())));
        }
        Self::from_basis_values(cover, m, &basis, exps)
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    /// Exponent `k` with `χ(s_y) = ζ_m^k`, for `y ∈ Y_{Q,n}`.
    pub fn eval_exp(&self, y: &[i64]) -> i64 {
        let c = self
            .cover
            .y_qn_coords(y)
            .unwrap_or_else(|| panic!("{y:?} is not in Y_Qn"));
        let m = self.m as i64;
        let mut e: i64 = c.iter().zip(&self.exps).map(|(a, b)| a * b).sum();
        if self.cover.eps < 0 {
            e += m / 2 * cocycle_parity(self.cover, &self.cover.y_qn, &c);
        }
        e.rem_euclid(m)
    }

    pub fn eval(&self, y: &[i64]) -> Cyclotomic {
        Cyclotomic::zeta_pow(self.m, self.eval_exp(y))
    }

    /// Exponent of `χ_β = χ(s_{n_β β^∨})` for the positive root `beta`.
    pub fn chi_root_exp(&self, beta: usize) -> i64 {
        self.eval_exp(&self.cover.qn_coroot(beta))
    }

    pub fn chi_root(&self, beta: usize) -> Cyclotomic {
        Cyclotomic::zeta_pow(self.m, self.chi_root_exp(beta))
    }

    /// `^{s_i}χ`: `(^sχ)(s_y) = ε^{⟨y,α⟩·D(y,α^∨)}·χ(s_{s(y)})`.
    pub fn simple_act(&self, i: usize) -> Self {
        let c = self.cover;
        let alpha = &c.datum.simple_roots[i];
        let coroot = &c.datum.simple_coroots[i];
        let m = self.m as i64;
        let exps = c
            .y_qn
            .iter()
            .map(|b| {
                let p = dot(alpha, b);
                let sb: IVec = b.iter().zip(coroot).map(|(x, y)| x - p * y).collect();
                let mut e = self.eval_exp(&sb);
                if c.eps < 0 && (p * c.dform(b, coroot)).rem_euclid(2) == 1 {
                    e += m / 2;
                }
                e
            })
            .collect();
        Self::normalized(c, m, exps)
    }

    /// `^wχ`, applying the reduced word of `w` right to left.
    pub fn act(&self, w: usize) -> Self {
        self.cover
            .datum
            .weyl
            .get(w)
            .reduced_word
            .iter()
            .rev()
            .fold(self.clone(), |chi, &i| chi.simple_act(i))
    }

    /// `^wχ` for every `w ∈ W`, indexed like the Weyl group.
    pub fn all_translates(&self) -> Vec<Self> {
        let weyl = &self.cover.datum.weyl;
        let mut out: Vec<Self> = Vec::with_capacity(weyl.len());
        for k in 0..weyl.len() {
            let word = &weyl.get(k).reduced_word;
            if word.is_empty() {
                out.push(self.clone());
            } else {
                let parent = weyl.mul(weyl.simple(word[0]), k);
                let next = out[parent].simple_act(word[0]);
                out.push(next);
            }
        }
        out
    }

    /// Agreement on `Y_{Q,n}^sc`.
    pub fn agrees_on_sc(&self, o: &Self) -> bool {
        let l = self.m.lcm(&o.m) as i64;
        self.cover.y_qn_sc.iter().all(|b| {
            self.eval_exp(b) * (l / self.m as i64) == o.eval_exp(b) * (l / o.m as i64)
        })
    }

    /// `Φ_χ = {β > 0 : χ_β = 1}`.
    pub fn phi_chi(&self) -> Vec<usize> {
        (0..self.cover.datum.pos_roots.len())
            .filter(|&b| self.chi_root_exp(b) == 0)
            .collect()
    }

    /// Human-readable summary `m:[e_1,…]`.
    pub fn describe(&self) -> String {
        format!("zeta({})^{:?}", self.m, self.exps)
    }
}

/// An irreducible character of the abelian group `R_χ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrChar {
    pub label: String,
    /// `σ(r_chi[k]) = ζ_E^{exps[k]}`, aligned with [`RGroupData::r_chi`].
    pub exps: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct RGroupData {
    pub phi_chi: Vec<usize>,
    pub w_chi: Vec<usize>,
    pub w_chi_0: Vec<usize>,
    /// Elements of `R_χ`, identity first, in Weyl-group index order.
    pub r_chi: Vec<usize>,
    pub w_chi_sc: Vec<usize>,
    pub r_chi_sc: Vec<usize>,
    pub invariant_factors: Vec<i64>,
    /// Exponent `E` of `R_χ`; character values lie in `μ_E`.
    pub exponent: u32,
    pub irr: Vec<IrrChar>,
}

impl RGroupData {
    pub fn position(&self, w: usize) -> Option<usize> {
        self.r_chi.iter().position(|&x| x == w)
    }

    /// `σ(w)` as a cyclotomic number.
    pub fn value(&self, sigma: usize, k: usize) -> Cyclotomic {
        Cyclotomic::zeta_pow(self.exponent, self.irr[sigma].exps[k])
    }
}

/// Closure of `gens` under multiplication, as sorted Weyl indices.
fn generated_subgroup(c: &CoverDatum, gens: &[usize]) -> Vec<usize> {
    let weyl = &c.datum.weyl;
    let mut seen: HashSet<usize> = HashSet::from([weyl.identity()]);
    let mut queue = VecDeque::from([weyl.identity()]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = weyl.mul(g, x);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<usize> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Invariant factors and coordinates of a finite abelian group given by its
/// multiplication on `elems` (identity first).
fn abelian_structure(c: &CoverDatum, elems: &[usize]) -> Result<(FiniteAbelianQuotient, Vec<IVec>)> {
    let weyl = &c.datum.weyl;
    let k = elems.len();
    let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let mut rels: Vec<IVec> = vec![(0..k).map(|i| i64::from(i == 0)).collect()];
    for a in 0..k {
        for b in 0..k {
            let ab = weyl.mul(elems[a], elems[b]);
            let ba = weyl.mul(elems[b], elems[a]);
            if ab != ba {
                return Err(Error::Internal("R_chi is not abelian".into()));
            }
            let p = *pos
                .get(&ab)
                .ok_or_else(|| Error::Internal("R_chi is not closed".into()))?;
            let mut v = vec![0i64; k];
            v[a] += 1;
            v[b] += 1;
            v[p] -= 1;
            rels.push(v);
        }
    }
    let q = FiniteAbelianQuotient::new(k, &rels)?;
    if q.invariant_factors.iter().product::<i64>() != k as i64 {
        return Err(Error::Internal("abelian presentation of R_chi has wrong order".into()));
    }
    let coords = (0..k)
        .map(|i| q.snf_coords(&(0..k).map(|j| i64::from(i == j)).collect::<IVec>()))
        .collect();
    Ok((q, coords))
}

/// The R-group data of `χ`.
pub fn rgroup(chi: &Character) -> Result<RGroupData> {
    let c = chi.cover;
    let d = &c.datum;
    let trans = chi.all_translates();
    let phi_chi = chi.phi_chi();
    let in_phi: HashSet<usize> = phi_chi.iter().copied().collect();
    let w_chi: Vec<usize> = (0..d.weyl.len()).filter(|&w| trans[w] == *chi).collect();
    let w_chi_sc: Vec<usize> = (0..d.weyl.len()).filter(|&w| trans[w].agrees_on_sc(chi)).collect();
    let refl: Vec<usize> = phi_chi
        .iter()
        .map(|&b| d.weyl.index_of(&d.reflection(b)).expect("reflection in W"))
        .collect();
    let w_chi_0 = generated_subgroup(c, &refl);
    let avoid = |w: &usize| d.weyl.get(*w).inversion_set.iter().all(|b| !in_phi.contains(b));
    let r_chi: Vec<usize> = w_chi.iter().copied().filter(avoid).collect();
    let r_chi_sc: Vec<usize> = w_chi_sc.iter().copied().filter(avoid).collect();
    if r_chi.len() * w_chi_0.len() != w_chi.len() {
        return Err(Error::Internal(format!(
            "|W_chi| = {} but |W_chi^0|·|R_chi| = {}·{}",
            w_chi.len(),
            w_chi_0.len(),
            r_chi.len()
        )));
    }
    let (q, coords) = abelian_structure(c, &r_chi)?;
    let inv = q.invariant_factors.clone();
    let exponent = inv.iter().fold(1i64, |a, &b| a.lcm(&b));
    let mut irr = Vec::new();
    let total: i64 = inv.iter().product();
    for idx in 0..total {
        let mut t = vec![0i64; inv.len()];
        let mut rem = idx;
        for i in (0..inv.len()).rev() {
            t[i] = rem % inv[i];
            rem /= inv[i];
        }
        let exps: Vec<i64> = coords
            .iter()
            .map(|co| {
                co.iter()
                    .zip(&t)
                    .zip(&inv)
                    .map(|((x, ti), di)| x * ti * (exponent / di))
                    .sum::<i64>()
                    .rem_euclid(exponent)
            })
            .collect();
        let label = if idx == 0 {
            "1".to_string()
        } else if total == 2 {
            "eps".to_string()
        } else if inv.len() == 1 {
            format!("sigma^{}", t[0])
        } else {
            format!("sigma{t:?}")
        };
        irr.push(IrrChar { label, exps });
    }
    Ok(RGroupData {
        phi_chi,
        w_chi,
        w_chi_0,
        r_chi,
        w_chi_sc,
        r_chi_sc,
        invariant_factors: inv,
        exponent: exponent as u32,
        irr,
    })
}

fn pole_check(chi: &Character, beta: usize) -> Result<()> {
    if chi.chi_root_exp(beta) == 0 {
        return Err(Error::Pole {
            root: beta,
            coords: chi.cover.datum.pos_coroot_coords[beta].clone(),
        });
    }
    Ok(())
}

/// `γ(w, χ)^{-1} = ∏_{β ∈ Φ_w} (1 − q^{-1}χ_β^{-1})/(1 − χ_β)`.
pub fn gamma_inv(w: usize, chi: &Character) -> Result<Scalar> {
    let mut out = Scalar::one();
    for &b in &chi.cover.datum.weyl.get(w).inversion_set {
        pole_check(chi, b)?;
        let x = chi.chi_root(b);
        let num = one_minus_q_inv(&x.inv().expect("root of unity"));
        out = &out * &num.div(&one_minus(&x))?;
    }
    Ok(out)
}

/// `γ(w, χ) = ∏_{β ∈ Φ_w} (1 − χ_β)/(1 − q^{-1}χ_β^{-1})`.
pub fn gamma(w: usize, chi: &Character) -> Result<Scalar> {
    let mut out = Scalar::one();
    for &b in &chi.cover.datum.weyl.get(w).inversion_set {
        let x = chi.chi_root(b);
        let den = one_minus_q_inv(&x.inv().expect("root of unity"));
        out = &out * &one_minus(&x).div(&den)?;
    }
    Ok(out)
}

/// `c_gk(w, χ) = ∏_{β ∈ Φ_w} (1 − q^{-1}χ_β)/(1 − χ_β)`.
pub fn c_gk(w: usize, chi: &Character) -> Result<Scalar> {
    let mut out = Scalar::one();
    for &b in &chi.cover.datum.weyl.get(w).inversion_set {
        pole_check(chi, b)?;
        let x = chi.chi_root(b);
        out = &out * &one_minus_q_inv(&x).div(&one_minus(&x))?;
    }
    Ok(out)
}

/// `μ(w, χ)^{-1} = ∏_{β ∈ Φ_w} (1 − q^{-1}χ_β)(1 − q^{-1}χ_β^{-1}) / ((1 − χ_β)(1 − χ_β^{-1}))`.
pub fn plancherel_inv(w: usize, chi: &Character) -> Result<Scalar> {
    let mut out = Scalar::one();
    for &b in &chi.cover.datum.weyl.get(w).inversion_set {
        pole_check(chi, b)?;
        let x = chi.chi_root(b);
        let xi = x.inv().expect("root of unity");
        let num = &one_minus_q_inv(&x) * &one_minus_q_inv(&xi);
        let den = &one_minus(&x) * &one_minus(&xi);
        out = &out * &num.div(&den)?;
    }
    Ok(out)
}

/// Both sides of the orbit-counting identity
/// `[W_χ^sc : W_χ] = |Z(G̃^∨)| / #(W_χ^sc-orbits on the fiber over χ^sc)`.
pub fn index_formula_check(chi: &Character) -> Result<(u64, u64)> {
    let c = chi.cover;
    let Some(center) = c.center_order else {
        return Err(Error::NonSemisimple("the index formula needs a semisimple datum".into()));
    };
    let ry = c.rank_y();
    let data = rgroup(chi)?;
    let lhs = (data.w_chi_sc.len() / data.w_chi.len()) as u64;

    let sc_coords: Vec<IVec> = c
        .y_qn_sc
        .iter()
        .map(|b| c.y_qn_coords(b).expect("Y_Qn^sc ⊆ Y_Qn"))
        .collect();
    let g = FiniteAbelianQuotient::new(ry, &sc_coords)?;
    let inv = &g.invariant_factors;
    let e = inv.iter().fold(1i64, |a, &b| a.lcm(&b));
    let big = (chi.order() as i64).lcm(&e);
    let unit_coords: Vec<IVec> = (0..ry)
        .map(|j| g.snf_coords(&(0..ry).map(|i| i64::from(i == j)).collect::<IVec>()))
        .collect();
    let mut fiber = Vec::new();
    let total: i64 = inv.iter().product();
    for idx in 0..total {
        let mut t = vec![0i64; inv.len()];
        let mut rem = idx;
        for i in (0..inv.len()).rev() {
            t[i] = rem % inv[i];
            rem /= inv[i];
        }
        let exps: Vec<i64> = (0..ry)
            .map(|j| {
                let base = chi.exps()[j] * (big / chi.order() as i64);
                let xi: i64 = unit_coords[j]
                    .iter()
                    .zip(&t)
                    .zip(inv)
                    .map(|((x, ti), di)| x * ti * (big / di))
                    .sum();
                base + xi
            })
            .collect();
        fiber.push(Character::normalized(c, big, exps));
    }
    if fiber.len() as u64 != center {
        return Err(Error::Internal("fiber size differs from |Z(G^vee)|".into()));
    }
    let mut seen: HashSet<Character> = HashSet::new();
    let mut orbits = 0u64;
    for f in &fiber {
        if seen.contains(f) {
            continue;
        }
        orbits += 1;
        for &w in &data.w_chi_sc {
            let img = f.act(w);
            if !img.agrees_on_sc(chi) {
                return Err(Error::Internal("W_chi^sc does not preserve the fiber".into()));
            }
            seen.insert(img);
        }
    }
    Ok((lhs, center / orbits))
}

/// All characters whose exponents on the `Y_{Q,n}` basis generate `Z/m`.
pub fn characters_of_order(cover: &CoverDatum, m: u32) -> Vec<Character<'_>> {
    let k = cover.y_qn.len();
    let mi = m as i64;
    let total = (mi as u64).pow(k as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut t = vec![0i64; k];
        let mut rem = idx as i64;
        for i in (0..k).rev() {
            t[i] = rem % mi;
            rem /= mi;
        }
        if t.iter().fold(mi, |a, &b| a.gcd(&b)) != 1 {
            continue;
        }
        out.push(Character::new(cover, m, t).expect("exponent count matches Y_Qn"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{Bisector, QuadraticInput};
    use crate::rootdata::{CartanType, RootDatum};
    use crate::scalars::ratio;

    fn cover(t: CartanType, r: usize, q: Vec<i64>, n: u32) -> CoverDatum {
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
    fn sl3_character_values() {
        let c = cover(CartanType::A, 2, vec![1, 1], 2);
        let chi = Character::from_chi_alpha(&c, 3, &[1, 1]).unwrap();
        let top = c.datum.pos_roots.len() - 1;
        assert_eq!(chi.chi_root_exp(top), 2);
        let w = c.datum.weyl.from_word(&[1, 0]);
        assert_eq!(chi.act(w), chi);
        let rg = rgroup(&chi).unwrap();
        assert_eq!(rg.r_chi.len(), 3);
        assert_eq!(rg.invariant_factors, vec![3]);
        let g = gamma_inv(w, &chi).unwrap();
        let expect = &(&(&Scalar::one() + &Scalar::q_inv()) + &Scalar::v_pow(4)) * &ratio(1, 3);
        assert_eq!(g, expect);
    }

    #[test]
    fn sl2_odd_reducibility() {
        let c = cover(CartanType::A, 1, vec![1], 3);
        let chi = Character::from_chi_alpha(&c, 2, &[1]).unwrap();
        assert_eq!(rgroup(&chi).unwrap().r_chi.len(), 2);
        let chi = Character::from_chi_alpha(&c, 4, &[1]).unwrap();
        assert_eq!(rgroup(&chi).unwrap().r_chi.len(), 1);
        let chi = Character::trivial(&c);
        let rg = rgroup(&chi).unwrap();
        assert_eq!((rg.w_chi.len(), rg.r_chi.len()), (2, 1));
    }

    #[test]
    fn gamma_of_sign_character() {
        let c = cover(CartanType::A, 1, vec![1], 3);
        let chi = Character::from_chi_alpha(&c, 2, &[1]).unwrap();
        let s = c.datum.weyl.simple(0);
        let expect = &(&Scalar::one() + &Scalar::q_inv()) * &ratio(1, 2);
        assert_eq!(gamma_inv(s, &chi).unwrap(), expect);
        assert!((&gamma(s, &chi).unwrap() * &gamma_inv(s, &chi).unwrap()).is_one());
    }

    #[test]
    fn pole_reported() {
        let c = cover(CartanType::A, 1, vec![1], 3);
        let chi = Character::trivial(&c);
        let s = c.datum.weyl.simple(0);
        assert!(matches!(c_gk(s, &chi), Err(Error::Pole { root: 0, .. })));
    }

    #[test]
    fn sl2_even_index() {
        let c = cover(CartanType::A, 1, vec![1], 2);
        let chi = Character::new(&c, 4, vec![1]).unwrap();
        assert_eq!(index_formula_check(&chi).unwrap(), (2, 2));
        let chi = Character::new(&c, 5, vec![1]).unwrap();
        assert_eq!(index_formula_check(&chi).unwrap(), (1, 1));
    }

    #[test]
    fn chi_alpha_rejected_when_not_a_basis() {
        let c = cover(CartanType::A, 1, vec![1], 2);
        assert!(matches!(
            Character::from_chi_alpha(&c, 2, &[1]),
            Err(Error::InvalidCharacter(_))
        ));
    }
}
