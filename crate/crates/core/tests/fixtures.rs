use std::path::PathBuf;

use isoweave::{classify, load_design, save_design, Classification, RejectionKind, Species};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

// (file, species, order, period)
const EXPECTED: &[(&str, Species, i64, i64)] = &[
    ("5-1-1.txt", Species::S36_1, 5, 5),
    ("13-45-1.txt", Species::S36_1, 13, 13),
    ("10-93-1.txt", Species::S39, 10, 10),
    ("10-107-1.txt", Species::S34, 10, 10),
    ("10-27-1.txt", Species::S36_2, 10, 10),
    ("10-85-1.txt", Species::S36s, 10, 10),
    ("10-39-1.txt", Species::S35_3, 10, 20),
    ("10-55-2.txt", Species::S33_3, 10, 20),
    ("20-19437.txt", Species::S38, 20, 40),
    ("20-doubled-10-85-1.txt", Species::S35_4, 20, 40),
    ("20-33_4.txt", Species::S33_4, 20, 40),
    ("20-3391.txt", Species::S37, 20, 80),
    ("26-39.txt", Species::S39, 26, 26),
];

#[test]
fn fixtures_classify_to_their_species() {
    for &(file, species, order, period) in EXPECTED {
        let d = load_design(fixture(file)).unwrap();
        let c = classify(&d).unwrap();
        let r = c.report().unwrap_or_else(|| panic!("{file}: {c:?}"));
        assert_eq!(r.species, species, "{file}");
        assert_eq!(r.order, order, "{file}");
        assert_eq!(r.period, period, "{file}");
        assert_eq!(r.period, species.h1_area_factor() * (order / species.order_factor()), "{file}");
    }
}

#[test]
fn complement_keeps_species() {
    for &(file, species, _, _) in EXPECTED {
        let d = load_design(fixture(file)).unwrap();
        assert_eq!(classify(&d.complement()).unwrap().species(), Some(species), "{file}");
    }
}

#[test]
fn mirror_flips_handedness() {
    for &(file, species, _, _) in EXPECTED {
        let d = load_design(fixture(file)).unwrap();
        let a = classify(&d).unwrap();
        let b = classify(&d.mirror()).unwrap();
        let (a, b) = (a.report().unwrap(), b.report().unwrap());
        assert_eq!(b.species, species, "{file}");
        assert_ne!(a.reflected, b.reflected, "{file}");
        assert_eq!(a.seed(), b.seed(), "{file}");
    }
}

#[test]
fn rejections() {
    for (file, kind) in [
        ("plain-weave.txt", RejectionKind::Exceptional),
        ("box-weave.txt", RejectionKind::Exceptional),
        ("4-1-2.txt", RejectionKind::Conformed),
    ] {
        match classify(&load_design(fixture(file)).unwrap()).unwrap() {
            Classification::Rejected(r) => assert_eq!(r.kind, kind, "{file}"),
            other => panic!("{file}: {other:?}"),
        }
    }
}

#[test]
fn save_load_round_trip() {
    let dir = std::env::temp_dir().join(format!("isoweave-fixtures-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path();
        let d = load_design(&path).unwrap();
        let out = dir.join(path.file_name().unwrap());
        save_design(&d, &out).unwrap();
        assert_eq!(load_design(&out).unwrap(), d);
        assert_eq!(std::fs::read_to_string(&out).unwrap(), std::fs::read_to_string(&path).unwrap());
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn labels_survive() {
    let d = load_design(fixture("10-93-1.txt")).unwrap();
    assert_eq!(d.label(), Some("10-93-1"));
}
