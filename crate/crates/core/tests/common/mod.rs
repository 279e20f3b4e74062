//! Covers and characters shared by the integration tests.
#![allow(dead_code)]

use rchi_core::intlin::IVec;
use rchi_core::{Bisector, CartanType, Character, CoverDatum, QuadraticInput, RootDatum};

pub struct Fixture {
    pub name: String,
    pub cover: CoverDatum,
    pub order: u32,
    /// Basis of `Y_{Q,n}` the exponents refer to; `None` means the Hermite basis.
    pub basis: Option<Vec<IVec>>,
    pub exps: Vec<i64>,
}

impl Fixture {
    pub fn chi(&self) -> Character<'_> {
        match &self.basis {
            Some(b) => Character::from_basis_values(&self.cover, self.order, b, &self.exps).unwrap(),
            None => Character::new(&self.cover, self.order, self.exps.clone()).unwrap(),
        }
    }
}

pub fn preset(t: CartanType, r: usize, q: Vec<i64>, n: u32) -> CoverDatum {
    CoverDatum::new(
        RootDatum::preset(t, r).unwrap(),
        QuadraticInput::OnSimpleCoroots(q),
        Bisector::StandardUpper,
        n,
        1,
    )
    .unwrap()
}

/// `SL_3^{(2)}` with `χ_{α_1} = χ_{α_2} = ζ_3`.
pub fn sl3() -> Fixture {
    let cover = preset(CartanType::A, 2, vec![1, 1], 2);
    let basis = vec![vec![2, 0], vec![0, 2]];
    Fixture {
        name: "SL3^(2)".into(),
        cover,
        order: 3,
        basis: Some(basis),
        exps: vec![1, 1],
    }
}

/// `Sp_{2r}^{(n)}`, `n` odd: `χ(s_{n e_i}) = ζ_7^i` for `i < r` and `χ_{α_r} = −1`.
pub fn sp(r: usize, n: u32) -> Fixture {
    let mut q = vec![2; r];
    q[r - 1] = 1;
    let cover = preset(CartanType::C, r, q, n);
    // e_i = α_i^∨ + … + α_r^∨
    let basis: Vec<IVec> = (0..r)
        .map(|i| (0..r).map(|k| if k >= i { n as i64 } else { 0 }).collect())
        .collect();
    let mut exps: Vec<i64> = (0..r).map(|i| 2 * (i as i64 + 1)).collect();
    exps[r - 1] = 7;
    Fixture {
        name: format!("Sp{}^({n})", 2 * r),
        cover,
        order: 14,
        basis: Some(basis),
        exps,
    }
}

/// `SL_2^{(n)}` with `Q(α^∨) = 1` and `χ(s_b) = ζ_m^k` on the generator `b` of `Y_{Q,n}`.
pub fn sl2(n: u32, m: u32, k: i64) -> Fixture {
    Fixture {
        name: format!("SL2^({n}) zeta_{m}^{k}"),
        cover: preset(CartanType::A, 1, vec![1], n),
        order: m,
        basis: None,
        exps: vec![k],
    }
}

pub fn so3_cover(n: u32) -> CoverDatum {
    let d = RootDatum::custom(1, vec![vec![2]], vec![vec![1]]).unwrap();
    CoverDatum::new(d, QuadraticInput::Gram(vec![vec![2]]), Bisector::StandardUpper, n, 1).unwrap()
}

/// `SO_3^{(4m)}` with `χ_α = −1`.
pub fn so3(m: u32) -> Fixture {
    Fixture {
        name: format!("SO3^({})", 4 * m),
        cover: so3_cover(4 * m),
        order: 2,
        basis: None,
        exps: vec![1],
    }
}

/// `GSp_{2r}` on the basis `(e_1, …, e_r, e_0)` with `Q(e_i) = 1` and the given `Q(e_0)`.
pub fn gsp_cover(r: usize, q0: i64, n: u32) -> CoverDatum {
    let ry = r + 1;
    let mut coroots = Vec::new();
    let mut roots = Vec::new();
    for i in 0..r - 1 {
        let mut v = vec![0; ry];
        v[i] = 1;
        v[i + 1] = -1;
        coroots.push(v.clone());
        roots.push(v);
    }
    let mut v = vec![0; ry];
    v[r - 1] = 1;
    coroots.push(v);
    let mut a = vec![0; ry];
    a[r - 1] = 2;
    a[r] = -1;
    roots.push(a);
    let d = RootDatum::custom(ry, coroots, roots).unwrap();
    let mut g = vec![vec![0; ry]; ry];
    for i in 0..r {
        g[i][i] = 2;
        g[i][r] = -1;
        g[r][i] = -1;
    }
    g[r][r] = 2 * q0;
    CoverDatum::new(d, QuadraticInput::Gram(g), Bisector::StandardUpper, n, 1).unwrap()
}

/// `GSp_{2r}^{(2)}` with `χ_{α_i} = −1` for odd `i` and generic values elsewhere.
pub fn gsp(r: usize, q0: i64) -> Fixture {
    let ry = r + 1;
    let cover = gsp_cover(r, q0, 2);
    // e_i − e_{i+1}, 2e_r, 2e_0
    let mut basis: Vec<IVec> = cover.datum.simple_coroots[..r - 1].to_vec();
    let mut v = vec![0; ry];
    v[r - 1] = 2;
    basis.push(v);
    let mut v = vec![0; ry];
    v[r] = 2;
    basis.push(v);
    let mut exps: Vec<i64> = (0..r - 1)
        .map(|i| if i % 2 == 0 { 15 } else { 2 * i as i64 + 2 })
        .collect();
    exps.push(6);
    exps.push(10);
    Fixture {
        name: format!("GSp{}^(2) Q(e0)={q0}", 2 * r),
        cover,
        order: 30,
        basis: Some(basis),
        exps,
    }
}

/// `Spin_6^{(2)}` with `χ_{α_2} = χ_{α_3} = −1`, `χ_{α_1} = ζ_5` and
/// `χ(s_{α_2^∨ + α_3^∨}) = sign`.
pub fn spin6(sign: i64) -> Fixture {
    let cover = preset(CartanType::D, 3, vec![1, 1, 1], 2);
    Fixture {
        name: format!("Spin6^(2) ext {sign}"),
        cover,
        order: 10,
        basis: Some(vec![vec![2, 0, 0], vec![0, 1, 1], vec![0, 0, 2]]),
        exps: vec![2, if sign < 0 { 5 } else { 0 }, 5],
    }
}

/// Every fixture used by the acceptance criteria.
pub fn all_fixtures() -> Vec<Fixture> {
    let mut out = vec![sl3()];
    for (r, n) in [(1, 3), (1, 5), (1, 7), (2, 3), (3, 3)] {
        out.push(sp(r, n));
    }
    for n in [3, 5, 7, 9] {
        out.push(sl2(n, 2, 1));
    }
    for r in [2, 4] {
        for q0 in [0, 2] {
            out.push(gsp(r, q0));
        }
    }
    for m in 1..=3 {
        out.push(so3(m));
    }
    out.push(spin6(1));
    out.push(spin6(-1));
    out
}
