//! Doubling and halving of designs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{is_symmetry, Design, HalfPoint, Isometry};
use crate::lattice::{first_quadrant, rot, Vec2};
use crate::symmetry::{classify, Marker, Species, SpeciesReport};

/// Replaces every strand by a pair of strands behaving alike.
pub fn double(d: &Design) -> Design {
    let mut out = Design::from_fn(2 * d.side(), |x, y| d.get((x / 2) as i64, (y / 2) as i64));
    out.set_label(None);
    out
}

/// Keeps warps `x ≡ a` and wefts `y ≡ b (mod 2)`: `d'(x, y) = d(2x + a, 2y + b)`.
pub fn halve(d: &Design, a: usize, b: usize) -> Result<Design> {
    let t = d.side();
    if !t.is_multiple_of(2) {
        return Err(Error::OddTorus(t));
    }
    if a > 1 || b > 1 {
        return Err(Error::Precondition(format!(
            "halving offsets must be 0 or 1, got ({a}, {b})"
        )));
    }
    Ok(Design::from_fn(t / 2, |x, y| {
        d.get((2 * x + a) as i64, (2 * y + b) as i64)
    }))
}

/// Species of the doubled design, when doubling keeps it isonemal.
pub fn doubled_species(s: Species) -> Option<Species> {
    match s {
        Species::S34 => Some(Species::S33_4),
        Species::S36_1 => Some(Species::S35_3),
        Species::S36_2 | Species::S36s => Some(Species::S35_4),
        Species::S39 => Some(Species::S38),
        _ => None,
    }
}

pub fn check_doublable(r: &SpeciesReport) -> (bool, Option<Species>) {
    let img = doubled_species(r.species);
    (img.is_some(), img)
}

/// One halving of a design and the symmetries it is required to keep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalvingCheck {
    pub offset: (usize, usize),
    pub halved: Design,
    /// Quarter-turn centre (with τ) of the contained level-1 group.
    pub centre: HalfPoint,
    /// Side of the contained level-1 lattice unit.
    pub side: Vec2,
    /// Each required symmetry and whether the halved design has it.
    pub checks: Vec<(Isometry, bool)>,
}

impl HalvingCheck {
    pub fn contains_group(&self) -> bool {
        self.checks.iter().all(|&(_, ok)| ok)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalvingReport {
    pub species: Species,
    pub halvings: Vec<HalvingCheck>,
}

impl HalvingReport {
    pub fn all_contain(&self) -> bool {
        self.halvings.iter().all(HalvingCheck::contains_group)
    }
}

/// Checks that all four halvings keep a group of the odd square-satin type.
///
/// The design's ■ centres at cell centres form a level-1 lattice; one of
/// them lies in a kept cell for each offset, and the doubled level-1
/// translations survive as level-1 translations of the halved design.
pub fn check_halving_theorem(d: &Design) -> Result<HalvingReport> {
    let report = match classify(d)? {
        crate::symmetry::Classification::Species(r) => r,
        crate::symmetry::Classification::Rejected(r) => {
            return Err(Error::Precondition(format!("design is not rotational: {r}")))
        }
    };
    if !matches!(report.species, Species::S36_1 | Species::S36s | Species::S39) {
        return Err(Error::Precondition(format!(
            "halving check needs species 36_1, 36s or 39, got {}",
            report.species
        )));
    }
    // ■ at a cell centre, and the level-1 side through it.
    let (p, w1) = match report.species {
        Species::S36s => {
            let w = report.side;
            let rw = rot(w);
            (report.centre, ((w.0 - rw.0) / 2, (w.1 - rw.1) / 2))
        }
        _ => (report.centre, report.side),
    };
    debug_assert_eq!(report.centre_marker, Marker::Reversing);
    let w1 = first_quadrant(w1);
    let rw1 = rot(w1);
    let lifted = if d.side() % 2 == 1 { d.tile(2) } else { d.clone() };
    let pc = p.as_cell().expect("■ sits at a cell centre");

    let mut halvings = Vec::new();
    for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        let halved = halve(&lifted, a, b)?;
        // A ■ centre in a cell with the kept residues.
        let (cx, cy) = [(0, 0), (w1.0, w1.1), (rw1.0, rw1.1), (w1.0 + rw1.0, w1.1 + rw1.1)]
            .into_iter()
            .map(|(vx, vy)| (pc.0 + vx, pc.1 + vy))
            .find(|&(x, y)| x.rem_euclid(2) == a as i64 && y.rem_euclid(2) == b as i64)
            .expect("level-1 translations reach every residue");
        let q = HalfPoint::cell_centre((cx - a as i64) / 2, (cy - b as i64) / 2);
        let corner = q.offset(w1.0 + rw1.0, w1.1 + rw1.1);
        let required = [
            Isometry::quarter_turn(q, 1, true),
            Isometry::quarter_turn(corner, 1, true),
            Isometry::translation(w1.0, w1.1, false),
            Isometry::translation(rw1.0, rw1.1, false),
            Isometry::half_turn(q.offset(w1.0, w1.1), false),
        ];
        let checks = required
            .iter()
            .map(|iso| Ok((*iso, is_symmetry(&halved, iso)?)))
            .collect::<Result<Vec<_>>>()?;
        halvings.push(HalvingCheck {
            offset: (a, b),
            halved,
            centre: q,
            side: w1,
            checks,
        });
    }
    Ok(HalvingReport {
        species: report.species,
        halvings,
    })
}
