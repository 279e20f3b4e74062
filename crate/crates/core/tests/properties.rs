mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rchi_core::intlin::FiniteAbelianQuotient;
use rchi_core::scalars::{ratio, Instantiation};
use rchi_core::smatrix;
use rchi_core::whitfun::{eval_matrix, nu_rank, orbit_points};
use rchi_core::*;

use common::*;

const N: u32 = 5;

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    let atom = prop_oneof![
        (-3i64..4).prop_map(Scalar::from_int),
        (-4i64..5).prop_map(Scalar::v_pow),
        (0i64..12).prop_map(|k| Scalar::zeta(12, k)),
        (0i64..N as i64).prop_map(|k| Scalar::gauss(N, 1, k)),
        (1i64..4, 1i64..4).prop_map(|(a, b)| ratio(a, b)),
    ];
    prop::collection::vec((atom.clone(), atom), 1..4).prop_map(|terms| {
        terms.into_iter().map(|(a, b)| &a * &b).sum()
    })
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-8 * (1.0 + a.norm().max(b.norm()))
}

fn inst(seed: u64) -> Instantiation {
    Instantiation::random(N, 1, 7.0, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn specialization_is_a_ring_map(a in scalar_strategy(), b in scalar_strategy(), seed in 0u64..1000) {
        let i = inst(seed);
        let (x, y) = (a.specialize(&i).unwrap(), b.specialize(&i).unwrap());
        prop_assert!(close((&a * &b).specialize(&i).unwrap(), x * y));
        prop_assert!(close((&a + &b).specialize(&i).unwrap(), x + y));
    }

    #[test]
    fn normal_form_is_canonical(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn division_inverts_multiplication(a in scalar_strategy(), k in -3i64..4, z in 0i64..12) {
        // Gauss-free nonzero denominators only.
        let d = &(&Scalar::one() - &(&Scalar::v_pow(2) * &Scalar::zeta(12, z))) * &Scalar::v_pow(k);
        prop_assert_eq!((&a * &d).div(&d).unwrap(), a);
    }

    #[test]
    fn canonical_rep_is_idempotent(y in prop::collection::vec(-30i64..30, 3), seed in 0usize..4) {
        let gens = [
            vec![vec![2, 0, 0], vec![0, 1, 1], vec![0, 0, 2]],
            vec![vec![3, 1, 0], vec![0, 3, 0], vec![0, 0, 1]],
            vec![vec![1, 1, 1], vec![0, 4, 2], vec![0, 0, 6]],
            vec![vec![5, 0, 0], vec![0, 5, 0], vec![0, 0, 5]],
        ];
        let q = FiniteAbelianQuotient::new(3, &gens[seed]).unwrap();
        let r = q.canonical_rep(&y);
        prop_assert_eq!(q.canonical_rep(&r), r.clone());
        prop_assert!(q.congruent(&r, &y));
        prop_assert_eq!(q.element(q.index_of(&y)), r);
    }

    #[test]
    fn length_changes_by_one(w in 0usize..12, i in 0usize..2) {
        let d = RootDatum::preset(CartanType::G, 2).unwrap();
        let weyl = &d.weyl;
        let sw = weyl.mul(weyl.simple(i), w);
        let (a, b) = (weyl.get(w).length() as i64, weyl.get(sw).length() as i64);
        prop_assert_eq!((a - b).abs(), 1);
        prop_assert_eq!(weyl.get(w).inversion_set.len(), weyl.get(w).length());
    }

    #[test]
    fn simple_blocks_are_involutive(exps in prop::collection::vec(0i64..12, 2), i in 0usize..2) {
        let cover = preset(CartanType::C, 2, vec![2, 1], 3);
        let chi = Character::new(&cover, 12, exps).unwrap();
        let sc = Scattering::new(&cover);
        for o in 0..sc.table.len() {
            prop_assert!(smatrix::is_identity(&sc.word_block(&[i, i], &chi, o)));
        }
    }

    #[test]
    fn burnside_on_random_covers(n in 1u32..7, t in 0usize..3) {
        let (ty, q) = [(CartanType::A, vec![1, 1]), (CartanType::C, vec![2, 1]), (CartanType::G, vec![3, 1])][t].clone();
        let cover = preset(ty, 2, q, n);
        let table = OrbitTable::new(&cover);
        let total: usize = (0..cover.datum.weyl.len()).map(|w| table.fixed_count(&cover, w)).sum();
        prop_assert_eq!(total, table.len() * cover.datum.weyl.len());
    }

    #[test]
    fn whittaker_multiplicities_fill_orbits(m in 2u32..13, k in 1i64..12, n in 2u32..8) {
        let cover = preset(CartanType::A, 1, vec![1], n);
        let chi = Character::new(&cover, m, vec![k % m as i64]).unwrap();
        let rep = whittaker_dims(&chi, &NumericOptions::default()).unwrap();
        for o in &rep.orbits {
            prop_assert_eq!(o.sigma_wh.iter().sum::<i64>(), o.reps.len() as i64);
            prop_assert_eq!(o.sigma_x.iter().sum::<i64>(), o.reps.len() as i64);
        }
    }

    #[test]
    fn rank_ignores_column_scaling(scales in prop::collection::vec((1i64..5, -3i64..4, 0i64..6), 3)) {
        let f = sl2(5, 7, 3);
        let chi = f.chi();
        let sc = Scattering::new(&f.cover);
        let opts = NumericOptions::default();
        for o in 0..sc.table.len() {
            let pts = orbit_points(&sc, o);
            let m = eval_matrix(&sc, &chi, o, &pts).unwrap();
            let scaled: smatrix::SMatrix = m
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&scales)
                        .map(|(x, &(a, v, z))| &(&(x * &Scalar::from_int(a)) * &Scalar::v_pow(v)) * &Scalar::zeta(6, z))
                        .collect()
                })
                .collect();
            prop_assert_eq!(nu_rank(&m, &opts, 5, 1).unwrap().0, nu_rank(&scaled, &opts, 5, 1).unwrap().0);
        }
    }
}

fn small_fixtures() -> impl Iterator<Item = Fixture> {
    all_fixtures().into_iter().filter(|f| f.cover.datum.weyl.len() <= 48)
}

fn assert_rank_sum_is_unramified_dimension(f: &Fixture) {
    let chi = f.chi();
    let rep = whittaker_dims(&chi, &NumericOptions::default()).unwrap();
    let one = rep.rgroup.irr.iter().position(|s| s.label == "1").unwrap();
    let ranks = whitrank(&chi, &NumericOptions::default()).unwrap();
    let total: usize = ranks.iter().map(|m| m.rank).sum();
    assert_eq!(total as i64, rep.dims[one], "{}", f.name);
}

#[test]
fn rank_sum_bounds_exceptional_count() {
    for f in small_fixtures() {
        let chi = f.chi();
        if !chi.phi_chi().is_empty() || f.cover.metaplectic {
            continue;
        }
        let ranks = whitrank(&chi, &NumericOptions::default()).unwrap();
        let total: usize = ranks.iter().map(|m| m.rank).sum();
        assert!(total >= f.cover.exceptional_points().unwrap().len(), "{}", f.name);
    }
}

#[test]
fn rank_sum_matches_unramified_dimension() {
    // Whittaker dimension of the unramified constituent, read off σ^Wh at the trivial irreducible.
    for f in small_fixtures() {
        assert_rank_sum_is_unramified_dimension(&f);
    }
}

#[test]
fn rank_sum_on_gsp8_uses_numeric_path() {
    let f = gsp(4, 0);
    assert_rank_sum_is_unramified_dimension(&f);
    let ranks = whitrank(&f.chi(), &NumericOptions::default()).unwrap();
    assert!(ranks.iter().all(|m| m.provenance == whitfun::RankProvenance::Numeric && m.entries.is_none()));
}

#[test]
fn odd_epsilon_cover_rejected() {
    let err = CoverDatum::new(
        RootDatum::preset(CartanType::A, 1).unwrap(),
        QuadraticInput::OnSimpleCoroots(vec![1]),
        Bisector::StandardUpper,
        3,
        -1,
    )
    .unwrap_err();
    assert!(matches!(err, Error::EpsilonOddDegree(3)));
}

#[test]
fn epsilon_minus_one_blocks_compose() {
    // Experimental ε = −1 branch: the simple blocks stay involutive.
    let cover = CoverDatum::new(
        RootDatum::preset(CartanType::A, 2).unwrap(),
        QuadraticInput::OnSimpleCoroots(vec![1, 1]),
        Bisector::StandardUpper,
        4,
        -1,
    )
    .unwrap();
    let sc = Scattering::new(&cover);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let exps = (0..cover.y_qn.len()).map(|_| rand::Rng::random_range(&mut rng, 0..8i64)).collect();
        let chi = Character::new(&cover, 8, exps).unwrap();
        for i in 0..2 {
            for o in 0..sc.table.len() {
                assert!(smatrix::is_identity(&sc.word_block(&[i, i], &chi, o)));
            }
        }
    }
}
