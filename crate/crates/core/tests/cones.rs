use carlitz::cones::{
    brute_force_cone_points, cone_ipt, cone_transform_2d, cone_transform_2d_with_bezout,
    fundpar_points, orthant_decomposition, short_cone_ipt_2d, SimplicialCone,
};
use carlitz::exact::{egcd_i64, gcd_i64, pairwise_coprime};
use carlitz::ratfun::{clear_denominators, expand_truncated};
use proptest::prelude::*;

#[test]
fn catalogued_planar_cones_match_brute_force() {
    for a in 1..=7i64 {
        for b in 1..=7i64 {
            if gcd_i64(a, b) != 1 {
                continue;
            }
            for k in orthant_decomposition(&[a, b]).unwrap() {
                assert_eq!(
                    expand_truncated(&cone_ipt(&k).unwrap(), &[1, 1], 10).unwrap(),
                    brute_force_cone_points(&k, &[1, 1], 10).unwrap(),
                    "({a},{b})"
                );
            }
        }
    }
}

#[test]
fn catalogued_spatial_cones_match_brute_force() {
    for a in 1..=5i64 {
        for b in 1..=5i64 {
            for c in 1..=5i64 {
                if !pairwise_coprime(&[a, b, c]) {
                    continue;
                }
                for k in orthant_decomposition(&[a, b, c]).unwrap() {
                    assert_eq!(
                        expand_truncated(&cone_ipt(&k).unwrap(), &[1, 1, 1], 10).unwrap(),
                        brute_force_cone_points(&k, &[1, 1, 1], 10).unwrap(),
                        "({a},{b},{c})"
                    );
                }
            }
        }
    }
}

#[test]
fn two_ray_middle_cones_match_brute_force() {
    let mut seen = 0;
    for a in 1..=7i64 {
        for b in 1..=7i64 {
            for c in 1..=7i64 {
                for d in 1..=7i64 {
                    if a * d <= b * c || gcd_i64(a, b) != 1 || gcd_i64(c, d) != 1 {
                        continue;
                    }
                    let k = SimplicialCone::closed(vec![vec![a, b], vec![c, d]]).unwrap();
                    let via_lemma = cone_transform_2d(a, b, c, d).unwrap();
                    let brute = brute_force_cone_points(&k, &[1, 1], 10).unwrap();
                    assert_eq!(expand_truncated(&via_lemma, &[1, 1], 10).unwrap(), brute);
                    assert_eq!(
                        expand_truncated(&cone_ipt(&k).unwrap(), &[1, 1], 10).unwrap(),
                        brute
                    );
                    seen += 1;
                }
            }
        }
    }
    assert!(seen > 100);
}

fn planar_cone() -> impl Strategy<Value = SimplicialCone> {
    (
        prop::collection::vec(-3i64..=3, 2),
        prop::collection::vec(-6i64..=6, 4),
        any::<[bool; 2]>(),
    )
        .prop_filter_map("degenerate", |(apex, g, open)| {
            SimplicialCone::new(
                apex,
                vec![vec![g[0], g[1]], vec![g[2], g[3]]],
                open.to_vec(),
            )
            .ok()
        })
}

proptest! {
    #[test]
    fn fundpar_count_is_abs_det(k in planar_cone()) {
        prop_assert_eq!(fundpar_points(&k).unwrap().points.len() as i128, k.det().abs());
    }

    #[test]
    fn fundpar_count_is_abs_det_3d(
        g in prop::collection::vec(-3i64..=3, 9),
        open in any::<[bool; 3]>(),
    ) {
        let gens = vec![g[0..3].to_vec(), g[3..6].to_vec(), g[6..9].to_vec()];
        if let Ok(k) = SimplicialCone::new(vec![0, 0, 0], gens, open.to_vec()) {
            prop_assert_eq!(fundpar_points(&k).unwrap().points.len() as i128, k.det().abs());
        }
    }

    #[test]
    fn signed_decomposition_matches_parallelepiped(k in planar_cone()) {
        let primitive = k.generators().iter().all(|g| gcd_i64(g[0], g[1]) == 1);
        prop_assume!(primitive);
        let (l, r) = clear_denominators(&short_cone_ipt_2d(&k).unwrap(), &cone_ipt(&k).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn cone_transform_is_independent_of_bezout_pair(
        a in 1i64..=9, b in 1i64..=9, c in 1i64..=9, d in 1i64..=9, t in -2i64..=2,
    ) {
        prop_assume!(a * d > b * c && gcd_i64(a, b) == 1 && gcd_i64(c, d) == 1);
        let (_, x, y) = egcd_i64(a, b).unwrap();
        let base = cone_transform_2d(a, b, c, d).unwrap();
        let shifted = cone_transform_2d_with_bezout(a, b, c, d, x + b * t, y - a * t).unwrap();
        let (l, r) = clear_denominators(&base, &shifted).unwrap();
        prop_assert_eq!(l, r);
    }
}
