use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use proptest::prelude::*;

use implosion_core::irrep::{irrep_weights, weyl_dim};
use implosion_core::master::rescale_identity_check;
use implosion_core::polytope::Polytope;
use implosion_core::rational::{rat, rat_i, to_f64, vadd, vscale, Rat};
use implosion_core::roots::{Face, RootSystem, Series};
use implosion_core::stability::{
    extreme_support, is_semistable, m_function, support_hull, ConfigWeight, WeightConfig,
};

/// Small configs with distinct half-integer weights spanning at most `rank`.
fn config() -> impl Strategy<Value = WeightConfig> {
    (1usize..=2).prop_flat_map(|rank| {
        prop::collection::btree_set(prop::collection::vec(-4i64..=4, rank), 3..=5).prop_map(
            move |pts| {
                let weights = pts
                    .into_iter()
                    .map(|p| ConfigWeight {
                        coords: p.iter().map(|&n| rat(n, 2)).collect(),
                        mult: 1,
                    })
                    .collect();
                WeightConfig::new(rank, weights).unwrap()
            },
        )
    })
}

fn config_with_support() -> impl Strategy<Value = (WeightConfig, u64)> {
    config().prop_flat_map(|cfg| {
        let n = cfg.len();
        (Just(cfg), 1u64..(1u64 << n))
    })
}

proptest! {
    /// Keeping only the hull vertices of a support changes neither the hull
    /// nor the result of doing it again.
    #[test]
    fn extreme_support_idempotent((cfg, s) in config_with_support()) {
        let e = extreme_support(&cfg, s).unwrap();
        prop_assert_eq!(e & s, e);
        prop_assert_eq!(extreme_support(&cfg, e).unwrap(), e);
        let full = support_hull(&cfg, s).unwrap();
        let trimmed = support_hull(&cfg, e).unwrap();
        prop_assert!(full.same_set(&trimmed));
    }

    /// The weight multiset of an irreducible representation is invariant
    /// under every Weyl group element.
    #[test]
    fn irrep_weights_weyl_invariant(
        rank in 1usize..=3,
        raw in prop::collection::vec(0i64..=2, 3),
        widx in any::<prop::sample::Index>(),
    ) {
        let rs = RootSystem::build(Series::A, rank).unwrap();
        let coeffs = &raw[..rank];
        prop_assume!(weyl_dim(&rs, coeffs).unwrap() <= 200);
        let ir = irrep_weights(&rs, coeffs).unwrap();
        let w = &rs.weyl_elements()[widx.index(rs.weyl_order())];
        let original: BTreeMap<Vec<Rat>, u64> =
            ir.weights.iter().map(|wm| (wm.weight.clone(), wm.mult)).collect();
        let mapped: BTreeMap<Vec<Rat>, u64> =
            ir.weights.iter().map(|wm| (w.mul_vec(&wm.weight), wm.mult)).collect();
        prop_assert_eq!(original, mapped);
    }

    /// Roots vanishing on a type-A face are counted by the consecutive runs
    /// of its vanishing set, and the dimension bookkeeping is consistent.
    #[test]
    fn face_roots_match_run_count(rank in 1usize..=4, mask in 0u64..16) {
        let rs = RootSystem::build(Series::A, rank).unwrap();
        let vanishing: BTreeSet<usize> =
            (0..rank).filter(|i| mask >> i & 1 == 1).collect();
        let face = Face::new(rank, vanishing.clone()).unwrap();

        let mut expected = 0usize;
        let mut run = 0usize;
        for i in 0..rank {
            if vanishing.contains(&i) {
                run += 1;
            } else {
                expected += run * (run + 1) / 2;
                run = 0;
            }
        }
        expected += run * (run + 1) / 2;
        prop_assert_eq!(rs.face_root_indices(&face).len(), expected);

        let dims = rs.decomposition_dims(&face);
        prop_assert_eq!(dims.dim_face, face.dim());
        prop_assert_eq!(dims.dim_stratum + dims.dim_commutator, dims.dim_k + dims.dim_face);
        prop_assert_eq!(rs.face_of(&rs.face_interior_point(&face)).unwrap(), face);
    }

    /// The dominant representative is dominant and stays in the orbit.
    #[test]
    fn dominant_representative_in_orbit(
        rank in 1usize..=3,
        raw in prop::collection::vec((-5i64..=5, 1i64..=2), 5),
    ) {
        let rs = RootSystem::build(Series::A, rank).unwrap();
        let v: Vec<Rat> = raw[..rs.ambient].iter().map(|&(n, d)| rat(n, d)).collect();
        let dom = rs.dominant_representative(&v);
        prop_assert!(rs.is_dominant(&dom));
        prop_assert!(rs.weyl_orbit(&v).contains(&dom));
    }

    /// Rescaling and mapping back is the identity wherever it is defined.
    #[test]
    fn rescale_round_trips(raw in prop::collection::vec(0i64..=20, 1..=4)) {
        let s: Vec<Rat> = raw.iter().map(|&n| rat(n, 100)).collect();
        prop_assert!(matches!(rescale_identity_check(&s), Ok(true)));
    }

    /// The numerical function is midpoint convex in the level, and both
    /// endpoints semistable forces the midpoint semistable.
    #[test]
    fn m_function_midpoint_convex(
        (cfg, s) in config_with_support(),
        raw_a in prop::collection::vec((-8i64..=8, 1i64..=4), 2),
        raw_b in prop::collection::vec((-8i64..=8, 1i64..=4), 2),
    ) {
        let a: Vec<Rat> = raw_a[..cfg.ambient].iter().map(|&(n, d)| rat(n, d)).collect();
        let b: Vec<Rat> = raw_b[..cfg.ambient].iter().map(|&(n, d)| rat(n, d)).collect();
        let mid = vscale(&rat(1, 2), &vadd(&a, &b));
        let va = m_function(&cfg, s, &a).unwrap().value();
        let vb = m_function(&cfg, s, &b).unwrap().value();
        let vm = m_function(&cfg, s, &mid).unwrap().value();
        prop_assert!(vm <= (va + vb) / 2.0 + 1e-9);
        if is_semistable(&cfg, s, &a).unwrap() && is_semistable(&cfg, s, &b).unwrap() {
            prop_assert!(is_semistable(&cfg, s, &mid).unwrap());
        }
    }

    /// A point is inside a hull exactly when its distance to it vanishes.
    #[test]
    fn containment_matches_zero_distance(
        pts in prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 1..=5),
        q in prop::collection::vec((-6i64..=6, 1i64..=2), 2),
    ) {
        let points: Vec<Vec<Rat>> = pts
            .iter()
            .map(|p| p.iter().map(|&n| rat_i(n)).collect())
            .collect();
        let poly = Polytope::from_points(2, &points).unwrap();
        let x: Vec<Rat> = q.iter().map(|&(n, d)| rat(n, d)).collect();
        let (d2, witness) = poly.min_sq_dist(&x);
        prop_assert_eq!(poly.contains(&x), d2.is_zero());
        prop_assert!(poly.contains(&witness));
        prop_assert!(to_f64(&d2) >= 0.0);
    }
}
