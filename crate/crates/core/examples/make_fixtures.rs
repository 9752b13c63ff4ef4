//! Regenerates `fixtures/` from the enumerator.
//!
//! Catalogue-labelled designs are picked by their smallest row word: the
//! least binary value over all rows and cyclic shifts, read left to right.
//! Where that word is on the reverse side the complement is stored.
//!
//! Usage: `cargo run --release -p isoweave-core --example make_fixtures [dir]`

use std::path::PathBuf;

use isoweave::construct::{enumerate_designs, falls_apart, EnumerateOptions};
use isoweave::symmetry::survey;
use isoweave::{double, save_design, Design, Species};

fn row_words(d: &Design) -> Vec<u64> {
    d.rows_top_down()
        .iter()
        .map(|r| {
            (0..r.len())
                .map(|k| u64::from_str_radix(&format!("{}{}", &r[k..], &r[..k]), 2).unwrap())
                .min()
                .unwrap()
        })
        .collect()
}

fn pick(designs: &[(Species, Design)], species: Species, word: u64, nth: usize) -> Design {
    designs
        .iter()
        .filter(|(s, _)| *s == species)
        .filter_map(|(_, d)| {
            if row_words(d).contains(&word) {
                Some(d.clone())
            } else if row_words(&d.complement()).contains(&word) {
                Some(d.complement())
            } else {
                None
            }
        })
        .nth(nth)
        .unwrap_or_else(|| panic!("no {species} design with word {word}"))
}

fn all(order: i64) -> Vec<(Species, Design)> {
    let opts = EnumerateOptions {
        include_falling_apart: true,
        ..Default::default()
    };
    enumerate_designs(order, &opts)
        .unwrap()
        .designs
        .into_iter()
        .map(|e| (e.species, e.design))
        .collect()
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, d: Design| {
        // File names double as labels.
        let d = d.with_label(name);
        save_design(&d, dir.join(format!("{name}.txt"))).unwrap();
        println!("{name}: T={}", d.side());
    };

    let o5 = all(5);
    let o10 = all(10);
    let o13 = all(13);
    let o20 = all(20);
    let o26 = all(26);

    write("plain-weave", Design::plain_weave());
    write("box-weave", double(&Design::plain_weave()));
    write("5-1-1", pick(&o5, Species::S36_1, 1, 0));
    write("13-45-1", pick(&o13, Species::S36_1, 45, 0));
    write("10-93-1", pick(&o10, Species::S39, 93, 0));
    write("10-107-1", pick(&o10, Species::S34, 107, 0));
    write("10-27-1", pick(&o10, Species::S36_2, 27, 0));
    let d85 = pick(&o10, Species::S36s, 85, 0);
    write("10-85-1", d85.clone());
    write("10-39-1", pick(&o10, Species::S35_3, 39, 0));
    write("10-55-2", pick(&o10, Species::S33_3, 55, 1));
    write("20-19437", pick(&o20, Species::S38, 19437, 0));
    write("20-3391", pick(&o20, Species::S37, 3391, 0));
    write("20-doubled-10-85-1", double(&d85));
    let first_33_4 = o20.iter().find(|(s, _)| *s == Species::S33_4).unwrap().1.clone();
    write("20-33_4", first_33_4);
    let first_39 = o26.iter().find(|(s, _)| *s == Species::S39).unwrap().1.clone();
    write("26-39", first_39);

    // Order 4: rotational, strand-transitive, and falling apart.
    let houndstooth = (0u32..1 << 16)
        .map(|bits| Design::from_fn(4, |x, y| bits >> (y * 4 + x) & 1 == 1))
        .find(|d| {
            let s = survey(d).unwrap();
            s.has_quarter_turns()
                && !s.has_reflection_or_glide
                && s.is_isonemal()
                && falls_apart(d).verdict
                && row_words(d).contains(&1)
        })
        .unwrap();
    let d = houndstooth.with_label("4-1-2*");
    save_design(&d, dir.join("4-1-2.txt")).unwrap();
    println!("4-1-2*: T=4");
}
