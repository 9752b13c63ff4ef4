use std::sync::OnceLock;

use isoweave::construct::{build_group_handed, design_id, has_exact_group, EnumeratedDesign};
use isoweave::cube::{boundary_paths, check_cube, cube_weavable, SurfacePoint};
use isoweave::symmetry::{map_strand, Strand};
use isoweave::transform::doubled_species;
use isoweave::{
    check_halving_theorem, classify, cube_net, double, enumerate_designs,
    falls_apart, halve, survey, EnumerateOptions, Species,
};

fn catalogue(order: i64) -> Vec<EnumeratedDesign> {
    enumerate_designs(
        order,
        &EnumerateOptions {
            include_falling_apart: true,
            ..Default::default()
        },
    )
    .unwrap()
    .designs
}

fn small() -> &'static [(i64, Vec<EnumeratedDesign>)] {
    static CELL: OnceLock<Vec<(i64, Vec<EnumeratedDesign>)>> = OnceLock::new();
    CELL.get_or_init(|| [5, 10, 13].into_iter().map(|o| (o, catalogue(o))).collect())
}

const CUBE_SET: [Species; 6] = [
    Species::S33_3,
    Species::S33_4,
    Species::S34,
    Species::S37,
    Species::S38,
    Species::S39,
];

#[test]
fn emitted_designs_classify_back() {
    for (order, designs) in small() {
        for e in designs {
            let r = classify(&e.design).unwrap();
            let r = r.report().expect("rotational");
            assert_eq!(r.species, e.species);
            assert_eq!(r.order, *order);
            assert_eq!(r.seed(), e.seed);
            assert_eq!(e.id, design_id(&e.design));
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let again = catalogue(10);
    let first = &small()[1].1;
    assert_eq!(first.len(), again.len());
    for (a, b) in first.iter().zip(&again) {
        assert_eq!(a, b);
    }
}

#[test]
fn adjacent_strands_are_related() {
    for (_, designs) in small() {
        for e in designs {
            let s = survey(&e.design).unwrap();
            let t = e.design.side();
            for i in 0..t {
                for (a, b) in [
                    (Strand::Warp(i), Strand::Warp((i + 1) % t)),
                    (Strand::Weft(i), Strand::Weft((i + 1) % t)),
                ] {
                    assert!(s.maps.iter().any(|m| map_strand(m, t, a) == b));
                }
            }
        }
    }
}

#[test]
fn no_overgroups() {
    for (_, designs) in small() {
        for e in designs {
            let r = classify(&e.design).unwrap();
            let g = build_group_handed(e.species, e.seed, r.report().unwrap().reflected).unwrap();
            assert!(has_exact_group(&e.design, &g).unwrap());
        }
    }
}

#[test]
fn falling_apart_is_side_blind() {
    for (order, designs) in small() {
        for e in designs {
            let fa = falls_apart(&e.design).verdict;
            assert_eq!(fa, falls_apart(&e.design.complement()).verdict);
            if e.species != Species::S37 {
                assert!(!fa, "order {order} {} falls apart", e.species);
            }
        }
    }
}

#[test]
fn doubling_follows_species_map() {
    for (_, designs) in small() {
        for e in designs {
            let d2 = double(&e.design);
            let got = classify(&d2).unwrap().species();
            match doubled_species(e.species) {
                Some(s) => assert_eq!(got, Some(s), "{}", e.species),
                None => assert!(got.is_none(), "{} doubled to {got:?}", e.species),
            }
            assert_eq!(halve(&d2, 0, 0).unwrap().cells(), e.design.cells());
        }
    }
}

#[test]
fn halve_then_double_is_not_identity() {
    let found = small()
        .iter()
        .flat_map(|(_, ds)| ds)
        .filter(|e| e.design.side() % 2 == 0)
        .any(|e| double(&halve(&e.design, 0, 0).unwrap()) != e.design);
    assert!(found);
}

#[test]
fn halvings_contain_satin_type_group() {
    let mut n = 0;
    for (_, designs) in small() {
        for e in designs {
            if matches!(e.species, Species::S36_1 | Species::S36s | Species::S39) {
                assert!(check_halving_theorem(&e.design).unwrap().all_contain(), "{}", e.id);
                n += 1;
            }
        }
    }
    assert!(n >= 10);
}

#[test]
fn cube_theorem_on_catalogue() {
    let mut all: Vec<EnumeratedDesign> = small().iter().flat_map(|(_, d)| d.clone()).collect();
    all.extend(catalogue(20));
    let mut checked = 0;
    for e in &all {
        let r = classify(&e.design).unwrap();
        let r = r.report().unwrap();
        let weavable = cube_weavable(r).weavable;
        assert_eq!(weavable, CUBE_SET.contains(&e.species), "{}", e.species);
        if !weavable {
            assert!(cube_net(&e.design).is_err());
            continue;
        }
        let net = cube_net(&e.design).unwrap();
        let c = check_cube(&net).unwrap();
        assert!(c.is_isonemal(), "{} {}", e.species, e.id);
        for p in boundary_paths(&net).unwrap() {
            assert_ne!(p.midpoint_kind, SurfacePoint::Other, "{}", e.id);
            // Some nontrivial symmetric rotation fixes the midpoint.
            let fixed = c.symmetries.iter().any(|s| {
                let m = s.rotation;
                let img: Vec<i64> = (0..3)
                    .map(|i| (0..3).map(|j| m[i][j] * p.midpoint2[j]).sum())
                    .collect();
                m != [[1, 0, 0], [0, 1, 0], [0, 0, 1]] && img == p.midpoint2
            });
            assert!(fixed, "{}", e.id);
        }
        checked += 1;
    }
    assert!(checked > 500);
}
