//! The twisted Weyl action `w[y] = w(y − ρ) + ρ` on `𝒳_{Q,n}` and its orbits.

use std::collections::VecDeque;

use crate::cover::CoverDatum;
use crate::intlin::{mat_vec, IVec};

/// `w[y]` on `Y`, computed as `w(y) + (2ρ − w(2ρ))/2`.
pub fn twisted(c: &CoverDatum, w: usize, y: &[i64]) -> IVec {
    let d = &c.datum;
    let m = &d.weyl.get(w).matrix;
    let wy = mat_vec(m, y);
    let w2r = mat_vec(m, &d.two_rho);
    wy.iter()
        .zip(d.two_rho.iter().zip(&w2r))
        .map(|(a, (r, wr))| {
            let diff = r - wr;
            assert!(diff % 2 == 0, "2ρ − w(2ρ) must be even");
            a + diff / 2
        })
        .collect()
}

/// `s_i[y] = y − (⟨y, α_i⟩ − 1)·α_i^∨`.
pub fn twisted_simple(c: &CoverDatum, i: usize, y: &[i64]) -> IVec {
    let d = &c.datum;
    let k = crate::intlin::dot(&d.simple_roots[i], y) - 1;
    y.iter().zip(&d.simple_coroots[i]).map(|(a, b)| a - k * b).collect()
}

#[derive(Clone, Debug)]
pub struct OrbitTable {
    /// Canonical representatives of `𝒳_{Q,n}`, in the quotient's index order.
    pub reps: Vec<IVec>,
    /// Each orbit as a sorted list of indices into `reps`; orbits sorted by least member.
    pub orbits: Vec<Vec<usize>>,
    pub orbit_of: Vec<usize>,
    /// `simple_action[i][x]` is the index of `s_i[x]`.
    pub simple_action: Vec<Vec<usize>>,
}

impl OrbitTable {
    pub fn new(c: &CoverDatum) -> Self {
        let reps = c.x_qn.elements();
        let r = c.datum.rank();
        let simple_action: Vec<Vec<usize>> = (0..r)
            .map(|i| {
                reps.iter()
                    .map(|y| c.x_qn.index_of(&twisted_simple(c, i, y)))
                    .collect()
            })
            .collect();
        let mut orbit_of = vec![usize::MAX; reps.len()];
        let mut orbits = Vec::new();
        for start in 0..reps.len() {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = vec![start];
            orbit_of[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for act in &simple_action {
                    let y = act[x];
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = id;
                        orbit.push(y);
                        queue.push_back(y);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        Self {
            reps,
            orbits,
            orbit_of,
            simple_action,
        }
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Index of `w[x]`, applying the reduced word of `w` right to left.
    pub fn act(&self, c: &CoverDatum, w: usize, x: usize) -> usize {
        c.datum
            .weyl
            .get(w)
            .reduced_word
            .iter()
            .rev()
            .fold(x, |acc, &i| self.simple_action[i][acc])
    }

    /// `|O^w|`, the value at `w` of the permutation character on orbit `o`.
    pub fn perm_character(&self, c: &CoverDatum, o: usize, w: usize) -> usize {
        self.orbits[o].iter().filter(|&&x| self.act(c, w, x) == x).count()
    }

    /// `|𝒳^w|`.
    pub fn fixed_count(&self, c: &CoverDatum, w: usize) -> usize {
        (0..self.reps.len()).filter(|&x| self.act(c, w, x) == x).count()
    }

    /// Index of the orbit containing the class of `y ∈ Y`.
    pub fn orbit_of_point(&self, c: &CoverDatum, y: &[i64]) -> usize {
        self.orbit_of[c.x_qn.index_of(y)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{Bisector, QuadraticInput};
    use crate::rootdata::{CartanType, RootDatum};

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
    fn sl2_twisted_reflection() {
        let c = cover(CartanType::A, 1, vec![1], 5);
        let s = c.datum.weyl.simple(0);
        for k in -6..6 {
            assert_eq!(twisted(&c, s, &[k]), vec![1 - k]);
        }
    }

    #[test]
    fn sl3_orbits() {
        let c = cover(CartanType::A, 2, vec![1, 1], 2);
        let t = OrbitTable::new(&c);
        let orbits: Vec<Vec<IVec>> = t
            .orbits
            .iter()
            .map(|o| o.iter().map(|&i| t.reps[i].clone()).collect())
            .collect();
        assert_eq!(orbits, vec![vec![vec![0, 0], vec![0, 1], vec![1, 0]], vec![vec![1, 1]]]);
    }

    #[test]
    fn word_action_matches_matrix_action() {
        let c = cover(CartanType::C, 2, vec![2, 1], 3);
        let t = OrbitTable::new(&c);
        for w in 0..c.datum.weyl.len() {
            for x in 0..t.reps.len() {
                let direct = c.x_qn.index_of(&twisted(&c, w, &t.reps[x]));
                assert_eq!(t.act(&c, w, x), direct);
            }
        }
    }
}
