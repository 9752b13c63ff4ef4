use isoweave::lattice::{array_position, coprime_witness, is_level1_seed};
use isoweave::{
    classify, classify_square, double, escribe, halve, inscribe, is_symmetry, transform_design,
    CentreSort, Design, HalfPoint, Isometry, LatticeUnit,
};
use num_integer::Integer;
use proptest::prelude::*;

fn design() -> impl Strategy<Value = Design> {
    (1usize..=8).prop_flat_map(|t| {
        proptest::collection::vec(any::<bool>(), t * t).prop_map(move |c| Design::new(t, c).unwrap())
    })
}

fn seed() -> impl Strategy<Value = (i64, i64)> {
    (2i64..60, 1i64..60).prop_filter("level-1 seed", |&(m, n)| is_level1_seed(m, n))
}

fn sort() -> impl Strategy<Value = CentreSort> {
    prop_oneof![Just(CentreSort::CellCentre), Just(CentreSort::CellCorner)]
}

proptest! {
    #[test]
    fn complement_and_mirror_are_involutions(d in design()) {
        prop_assert_eq!(d.complement().complement(), d.clone());
        prop_assert_eq!(d.mirror().mirror(), d);
    }

    #[test]
    fn torus_translation_is_identity(d in design(), k in -3i64..3) {
        let t = d.side() as i64;
        prop_assert_eq!(d.translate(k * t, -k * t), d.clone());
        let iso = Isometry::translation(t, 0, false);
        prop_assert_eq!(transform_design(&d, &iso).unwrap(), d);
    }

    #[test]
    fn quarter_turn_four_times(d in design(), cx in 0i64..8, cy in 0i64..8, tau: bool, centre: bool) {
        let c = if centre { HalfPoint::cell_centre(cx, cy) } else { HalfPoint::cell_corner(cx, cy) };
        let iso = Isometry::quarter_turn(c, 1, tau);
        let mut e = d.clone();
        for _ in 0..4 {
            e = transform_design(&e, &iso).unwrap();
        }
        prop_assert_eq!(e, d.clone());
        // A symmetric quarter-turn squares to a plain half-turn.
        if is_symmetry(&d, &iso).unwrap() {
            prop_assert!(is_symmetry(&d, &Isometry::half_turn(c, false)).unwrap());
        }
    }

    #[test]
    fn halve_undoes_double(d in design()) {
        prop_assert_eq!(halve(&double(&d), 0, 0).unwrap().cells().to_vec(), d.cells().to_vec());
        prop_assert_eq!(halve(&double(&d), 1, 1).unwrap().cells().to_vec(), d.cells().to_vec());
    }

    #[test]
    fn classification_ignores_complement_and_translation(d in design(), vx in 0i64..8, vy in 0i64..8) {
        let a = classify(&d).unwrap();
        prop_assert_eq!(a.species(), classify(&d.complement()).unwrap().species());
        prop_assert_eq!(a.species(), classify(&d.translate(vx, vy)).unwrap().species());
    }

    #[test]
    fn sum_and_difference_stay_coprime(m in 1i64..10_000, n in 1i64..10_000) {
        prop_assume!((m + n) % 2 == 1);
        let g = (m + n).gcd(&(m - n));
        prop_assert_eq!(m.gcd(&n) == 1, g == 1);
        if m.gcd(&n) == 1 {
            let (p, q) = coprime_witness(m, n).unwrap();
            prop_assert_eq!(p * m + q * n, 1);
        }
    }

    #[test]
    fn array_entries_are_opposite_parity(i in 1i64..40, j in 1i64..40) {
        prop_assume!(i <= j);
        let (m, n) = array_position(i, j);
        prop_assert!(m > n && n >= 1);
        prop_assert_eq!((m + n) % 2, 1);
    }

    #[test]
    fn escribe_inscribe_round_trip((m, n) in seed(), level in 1u8..=4, cs in sort()) {
        let u = LatticeUnit::at_level(m, n, level, cs).unwrap();
        let up = escribe(&u).unwrap();
        prop_assert_eq!(up.area(), 2 * u.area());
        prop_assert_eq!(inscribe(&up).unwrap(), u);
    }

    #[test]
    fn classify_square_recovers_unit((m, n) in seed(), level in 1u8..=5, cs in sort(), reflected: bool) {
        let mut u = LatticeUnit::at_level(m, n, level, cs).unwrap();
        u.reflected = reflected;
        let v = u.side_vector();
        // Every side of the square names the same unit.
        for w in [v, (-v.1, v.0), (-v.0, -v.1), (v.1, -v.0)] {
            prop_assert_eq!(classify_square(w, u.corner_sort()).unwrap(), u);
        }
    }
}
