//! Based root data of split groups and their Weyl groups.
//!
//! Cocharacters are integer column vectors in `Y = Z^rank_y`; roots are
//! covectors with `⟨y, α⟩ = α·y`. The simple reflection `s_i` acts on `Y` by
//! `y ↦ y − ⟨y, α_i⟩·α_i^∨`.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::intlin::{self, dot, identity, mat_mul, mat_vec, IMat, IVec};

/// Default bound on `|W|`.
pub const DEFAULT_WEYL_BOUND: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => Self::A,
            "B" => Self::B,
            "C" => Self::C,
            "D" => Self::D,
            "E" => Self::E,
            "F" => Self::F,
            "G" => Self::G,
            other => return Err(Error::InvalidDatum(format!("unknown Cartan type {other:?}"))),
        })
    }
}

/// Cartan matrix `a_ij = ⟨α_i^∨, α_j⟩` in Bourbaki numbering.
pub fn cartan_matrix(t: CartanType, r: usize) -> Result<IMat> {
    use CartanType::*;
    let bad = || Error::InvalidDatum(format!("no root system of type {t:?}{r}"));
    let ok = match t {
        A => r >= 1,
        B | C => r >= 1,
        D => r >= 3,
        E => (6..=8).contains(&r),
        F => r == 4,
        G => r == 2,
    };
    if !ok {
        return Err(bad());
    }
    let mut a = identity(r);
    for row in a.iter_mut() {
        for x in row.iter_mut() {
            *x *= 2;
        }
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match t {
        A | B | C => {
            for i in 0..r.saturating_sub(1) {
                link(i, i + 1);
            }
        }
        D => {
            for i in 0..r - 2 {
                link(i, i + 1);
            }
            link(r - 3, r - 1);
        }
        E => {
            link(0, 2);
            link(2, 3);
            link(1, 3);
            for i in 3..r - 1 {
                link(i, i + 1);
            }
        }
        F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        G => link(0, 1),
    }
    match t {
        B if r >= 2 => a[r - 1][r - 2] = -2,
        C if r >= 2 => a[r - 2][r - 1] = -2,
        F => a[2][1] = -2,
        G => a[0][1] = -3,
        _ => {}
    }
    Ok(a)
}

/// Label such as `A2`, `B3`, `A1xA1` for a finite-type Cartan matrix; `T` if empty.
pub fn cartan_label(a: &IMat) -> String {
    let r = a.len();
    if r == 0 {
        return "T".into();
    }
    let mut seen = vec![false; r];
    let mut parts = Vec::new();
    for s in 0..r {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..r {
                if !seen[j] && a[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        parts.push(component_label(a, &comp));
    }
    parts.join("x")
}

fn component_label(a: &IMat, comp: &[usize]) -> String {
    let k = comp.len();
    let deg = |i: usize| comp.iter().filter(|&&j| j != i && a[i][j] != 0).count();
    let mut double = None;
    for &i in comp {
        for &j in comp {
            if a[i][j] == -3 {
                return "G2".into();
            }
            if a[i][j] == -2 {
                double = Some((i, j));
            }
        }
    }
    if let Some(&branch) = comp.iter().find(|&&i| deg(i) == 3) {
        let mut arms: Vec<usize> = comp
            .iter()
            .filter(|&&j| j != branch && a[branch][j] != 0)
            .map(|&start| {
                let (mut prev, mut cur, mut len) = (branch, start, 1);
                loop {
                    let next = comp.iter().find(|&&x| x != prev && x != cur && a[cur][x] != 0);
                    match next {
                        Some(&x) => {
                            prev = cur;
                            cur = x;
                            len += 1;
                        }
                        None => break len,
                    }
                }
            })
            .collect();
        arms.sort_unstable();
        return match arms.as_slice() {
            [1, 1, _] => format!("D{k}"),
            [1, 2, 2] => "E6".into(),
            [1, 2, 3] => "E7".into(),
            [1, 2, 4] => "E8".into(),
            _ => format!("?{k}"),
        };
    }
    match double {
        None => format!("A{k}"),
        Some(_) if k == 2 => "B2".into(),
        Some((p, q)) => {
            if deg(p) == 2 && deg(q) == 2 {
                "F4".into()
            } else if deg(p) == 1 {
                format!("B{k}")
            } else {
                format!("C{k}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// Action on `Y` (row-major, acting on column vectors).
    pub matrix: IMat,
    /// `w = s_{word[0]} ⋯ s_{word[k-1]}`.
    pub reduced_word: Vec<usize>,
    /// Indices into the positive roots of `Φ_w = {β > 0 : w(β) < 0}`.
    pub inversion_set: Vec<usize>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.reduced_word.len()
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    index: HashMap<IMat, usize>,
    inverse: Vec<usize>,
    simple: Vec<usize>,
    longest: usize,
}

impl WeylGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of `s_i`.
    pub fn simple(&self, i: usize) -> usize {
        self.simple[i]
    }

    pub fn longest(&self) -> usize {
        self.longest
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn index_of(&self, m: &IMat) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index of the product `a·b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let m = mat_mul(&self.elements[a].matrix, &self.elements[b].matrix);
        self.index[&m]
    }

    /// Index of the element with word `word` (not necessarily reduced).
    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter()
            .rev()
            .fold(self.identity(), |acc, &i| self.mul(self.simple[i], acc))
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub rank_y: usize,
    pub simple_coroots: Vec<IVec>,
    pub simple_roots: Vec<IVec>,
    /// `a_ij = ⟨α_i^∨, α_j⟩`.
    pub cartan: IMat,
    pub pos_coroots: Vec<IVec>,
    pub pos_roots: Vec<IVec>,
    /// Coordinates of each positive coroot in the basis `Δ^∨`.
    pub pos_coroot_coords: Vec<IVec>,
    /// Sum of positive coroots, `2ρ`.
    pub two_rho: IVec,
    /// Sum of positive roots, `2ρ̂`.
    pub two_rho_hat: IVec,
    pub weyl: WeylGroup,
    pub label: String,
    root_lookup: HashMap<IVec, (usize, bool)>,
}

impl RootDatum {
    pub fn preset(t: CartanType, r: usize) -> Result<Self> {
        Self::preset_bounded(t, r, DEFAULT_WEYL_BOUND)
    }

    /// Simply connected datum of type `t`: `Y` is the coroot lattice.
    pub fn preset_bounded(t: CartanType, r: usize, bound: usize) -> Result<Self> {
        let a = cartan_matrix(t, r)?;
        let coroots = identity(r);
        let roots = (0..r).map(|j| (0..r).map(|i| a[i][j]).collect()).collect();
        Self::build(r, coroots, roots, bound)
    }

    pub fn custom(rank_y: usize, simple_coroots: Vec<IVec>, simple_roots: Vec<IVec>) -> Result<Self> {
        Self::build(rank_y, simple_coroots, simple_roots, DEFAULT_WEYL_BOUND)
    }

    pub fn build(
        rank_y: usize,
        simple_coroots: Vec<IVec>,
        simple_roots: Vec<IVec>,
        bound: usize,
    ) -> Result<Self> {
        let r = simple_coroots.len();
        if simple_roots.len() != r {
            return Err(Error::InvalidDatum(format!(
                "{r} simple coroots but {} simple roots",
                simple_roots.len()
            )));
        }
        if rank_y == 0 {
            return Err(Error::InvalidDatum("rank of Y must be positive".into()));
        }
        for v in simple_coroots.iter().chain(&simple_roots) {
            if v.len() != rank_y {
                return Err(Error::InvalidDatum(format!(
                    "vector {v:?} does not have length rank_Y = {rank_y}"
                )));
            }
        }
        if intlin::lattice_basis(&simple_coroots, rank_y).len() != r {
            return Err(Error::InvalidDatum("simple coroots are linearly dependent".into()));
        }
        let cartan: IMat = (0..r)
            .map(|i| (0..r).map(|j| dot(&simple_roots[j], &simple_coroots[i])).collect())
            .collect();
        for i in 0..r {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidDatum(format!("⟨α_{i}^∨, α_{i}⟩ = {} ≠ 2", cartan[i][i])));
            }
            for j in 0..r {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::InvalidDatum(format!(
                        "pairing matrix is not a generalized Cartan matrix at ({i},{j})"
                    )));
                }
            }
        }

        let (pos_coroot_coords, pos_root_coords) = positive_roots(&cartan, bound)?;
        let comb = |coords: &IVec, basis: &[IVec]| -> IVec {
            (0..rank_y)
                .map(|k| coords.iter().zip(basis).map(|(c, b)| c * b[k]).sum())
                .collect()
        };
        let pos_coroots: Vec<IVec> = pos_coroot_coords.iter().map(|c| comb(c, &simple_coroots)).collect();
        let pos_roots: Vec<IVec> = pos_root_coords.iter().map(|c| comb(c, &simple_roots)).collect();
        let mut two_rho = vec![0; rank_y];
        let mut two_rho_hat = vec![0; rank_y];
        for (c, a) in pos_coroots.iter().zip(&pos_roots) {
            for k in 0..rank_y {
                two_rho[k] += c[k];
                two_rho_hat[k] += a[k];
            }
        }
        let mut root_lookup = HashMap::new();
        for (i, c) in pos_coroots.iter().enumerate() {
            root_lookup.insert(c.clone(), (i, true));
            root_lookup.insert(c.iter().map(|x| -x).collect(), (i, false));
        }
        let reflections: Vec<IMat> = (0..r)
            .map(|i| {
                (0..rank_y)
                    .map(|a| {
                        (0..rank_y)
                            .map(|b| i64::from(a == b) - simple_coroots[i][a] * simple_roots[i][b])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let weyl = enumerate_weyl(&reflections, &pos_coroots, &root_lookup, rank_y, bound)?;
        let label = cartan_label(&cartan);
        Ok(Self {
            rank_y,
            simple_coroots,
            simple_roots,
            cartan,
            pos_coroots,
            pos_roots,
            pos_coroot_coords,
            two_rho,
            two_rho_hat,
            weyl,
            label,
            root_lookup,
        })
    }

    pub fn rank(&self) -> usize {
        self.simple_coroots.len()
    }

    /// `ρ`, half the sum of positive coroots.
    pub fn rho(&self) -> Vec<BigRational> {
        self.two_rho
            .iter()
            .map(|&x| BigRational::new(BigInt::from(x), BigInt::from(2)))
            .collect()
    }

    pub fn is_semisimple(&self) -> bool {
        self.rank() == self.rank_y
    }

    pub fn act(&self, w: usize, y: &[i64]) -> IVec {
        mat_vec(&self.weyl.get(w).matrix, y)
    }

    /// Rational action, for vectors in `Y⊗Q`.
    pub fn act_rational(&self, w: usize, y: &[BigRational]) -> Vec<BigRational> {
        self.weyl
            .get(w)
            .matrix
            .iter()
            .map(|row| row.iter().zip(y).map(|(&a, b)| b * BigInt::from(a)).sum())
            .collect()
    }

    /// Locates a coroot: `(positive index, sign)`.
    pub fn coroot_index(&self, c: &[i64]) -> Option<(usize, bool)> {
        self.root_lookup.get(c).copied()
    }

    /// Index of the positive root whose coroot is `w(α_β^∨)` up to sign.
    pub fn act_on_root(&self, w: usize, beta: usize) -> (usize, bool) {
        let img = self.act(w, &self.pos_coroots[beta]);
        self.root_lookup[&img]
    }

    /// Indices of the simple roots among the positive roots.
    pub fn simple_index(&self, i: usize) -> usize {
        self.pos_coroot_coords
            .iter()
            .position(|c| c.iter().enumerate().all(|(k, &x)| x == i64::from(k == i)))
            .expect("simple root present")
    }

    /// `⟨y, α⟩` for the positive root with index `beta`.
    pub fn pair_root(&self, y: &[i64], beta: usize) -> i64 {
        dot(&self.pos_roots[beta], y)
    }

    /// Matrix of the reflection in the positive root `beta`.
    pub fn reflection(&self, beta: usize) -> IMat {
        let (c, a) = (&self.pos_coroots[beta], &self.pos_roots[beta]);
        (0..self.rank_y)
            .map(|i| (0..self.rank_y).map(|j| i64::from(i == j) - c[i] * a[j]).collect())
            .collect()
    }
}

fn positive_roots(cartan: &IMat, bound: usize) -> Result<(Vec<IVec>, Vec<IVec>)> {
    let r = cartan.len();
    let mut seen: HashMap<IVec, IVec> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..r {
        let e: IVec = (0..r).map(|k| i64::from(k == i)).collect();
        seen.insert(e.clone(), e.clone());
        queue.push_back((e.clone(), e));
    }
    while let Some((c, d)) = queue.pop_front() {
        for j in 0..r {
            let pc: i64 = (0..r).map(|i| c[i] * cartan[i][j]).sum();
            let pd: i64 = (0..r).map(|i| d[i] * cartan[j][i]).sum();
            let mut c2 = c.clone();
            c2[j] -= pc;
            let mut d2 = d.clone();
            d2[j] -= pd;
            if c2.iter().all(|&x| x >= 0) && !seen.contains_key(&c2) {
                if seen.len() >= bound {
                    return Err(Error::InvalidDatum("root system is not of finite type".into()));
                }
                seen.insert(c2.clone(), d2.clone());
                queue.push_back((c2, d2));
            }
        }
    }
    let mut pairs: Vec<(IVec, IVec)> = seen.into_iter().collect();
    pairs.sort_by(|a, b| {
        let ha: i64 = a.0.iter().sum();
        let hb: i64 = b.0.iter().sum();
        ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
    });
    Ok(pairs.into_iter().unzip())
}

fn enumerate_weyl(
    reflections: &[IMat],
    pos_coroots: &[IVec],
    lookup: &HashMap<IVec, (usize, bool)>,
    rank_y: usize,
    bound: usize,
) -> Result<WeylGroup> {
    let id = identity(rank_y);
    let mut elements = vec![WeylElement {
        matrix: id.clone(),
        reduced_word: vec![],
        inversion_set: vec![],
    }];
    let mut index = HashMap::new();
    index.insert(id, 0usize);
    let mut head = 0;
    while head < elements.len() {
        for (i, s) in reflections.iter().enumerate() {
            let m = mat_mul(s, &elements[head].matrix);
            if index.contains_key(&m) {
                continue;
            }
            if elements.len() >= bound {
                return Err(Error::WeylTooLarge(bound));
            }
            let mut word = vec![i];
            word.extend(&elements[head].reduced_word);
            index.insert(m.clone(), elements.len());
            elements.push(WeylElement {
                matrix: m,
                reduced_word: word,
                inversion_set: vec![],
            });
        }
        head += 1;
    }
    for el in elements.iter_mut() {
        el.inversion_set = pos_coroots
            .iter()
            .enumerate()
            .filter(|(_, c)| !lookup[&mat_vec(&el.matrix, c)].1)
            .map(|(k, _)| k)
            .collect();
    }
    let inverse = elements
        .iter()
        .map(|e| {
            let m = e
                .reduced_word
                .iter()
                .fold(identity(rank_y), |acc, &i| mat_mul(&reflections[i], &acc));
            index[&m]
        })
        .collect();
    let longest = (0..elements.len())
        .max_by_key(|&i| elements[i].reduced_word.len())
        .unwrap_or(0);
    let simple = (0..reflections.len()).map(|i| index[&reflections[i]]).collect();
    Ok(WeylGroup {
        elements,
        index,
        inverse,
        simple,
        longest,
    })
}
