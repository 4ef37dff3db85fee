use carlitz::brion::{
    count_tetrahedron, ehrhart_mp, ehrhart_via_lhospital, tetrahedron_denominator_derivative,
    tetrahedron_sides, tetrahedron_sides_as_printed, triangle_identity_sides,
};
use carlitz::exact::pairwise_coprime;
use carlitz::{BigInt, BigRat};

fn triples(max: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for a in 1..=max {
        for b in 1..=max {
            for c in 1..=max {
                if pairwise_coprime(&[a, b, c]) {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

#[test]
fn triangle_identity_on_grid() {
    for a in 1..=12 {
        for b in 1..=12 {
            if pairwise_coprime(&[a, b]) {
                let (l, r) = triangle_identity_sides(a, b).unwrap();
                assert_eq!(l, r, "({a},{b})");
            }
        }
    }
}

#[test]
fn tetrahedron_identity_small_grid() {
    for (a, b, c) in triples(4) {
        for t in 1..=2 {
            let (l, r) = tetrahedron_sides(a, b, c, t).unwrap();
            assert_eq!(l, r, "({a},{b},{c},{t})");
        }
        assert_eq!(
            tetrahedron_denominator_derivative(a, b, c),
            BigInt::from(-12 * b * c * c)
        );
    }
}

#[test]
fn printed_numerator_fails_everywhere_checked() {
    for (a, b, c) in triples(3) {
        let (l, r) = tetrahedron_sides_as_printed(a, b, c, 1).unwrap();
        assert_ne!(l, r, "({a},{b},{c})");
    }
}

#[test]
fn ehrhart_routes_agree() {
    for (a, b, c) in triples(5) {
        let p = ehrhart_mp(a, b, c).unwrap();
        assert_eq!(p.c0, BigRat::from_integer(1.into()));
        assert_eq!(p.c3, BigRat::new((a * b * c).into(), 6.into()));
        for t in 1..=3 {
            let count = BigRat::from_integer(count_tetrahedron(a, b, c, t).unwrap().into());
            assert_eq!(p.eval(t), count, "({a},{b},{c},{t})");
            assert_eq!(ehrhart_via_lhospital(a, b, c, t).unwrap(), count);
        }
    }
}
