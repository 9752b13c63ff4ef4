//! Symmetry survey of a design and classification into rotational species.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{is_symmetry_map, AffineMap, Design, HalfPoint, Linear, PointSort};
use crate::lattice::{classify_square, rot, CentreSort, Lattice, LatticeUnit, Vec2};

/// Default bound on the torus side accepted by the survey.
pub const DEFAULT_MAX_SIDE: usize = 64;

/// Torus-side bound, overridable through `ISOWEAVE_MAX_T`.
pub fn max_side() -> usize {
    std::env::var("ISOWEAVE_MAX_T")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_SIDE)
}

/// The eleven rotational species.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Species {
    S33_3,
    S33_4,
    S34,
    S35_3,
    S35_4,
    S36_1,
    S36_2,
    S36s,
    S37,
    S38,
    S39,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WallpaperType {
    P4,
    P2,
}

impl fmt::Display for WallpaperType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WallpaperType::P4 => "p4",
            WallpaperType::P2 => "p2",
        })
    }
}

/// Quarter-turn marker: `Plain` is □ (no τ), `Reversing` is ■ (with τ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Marker {
    Plain,
    Reversing,
}

impl Marker {
    pub fn from_tau(tau: bool) -> Marker {
        if tau {
            Marker::Reversing
        } else {
            Marker::Plain
        }
    }

    pub fn tau(self) -> bool {
        self == Marker::Reversing
    }
}

impl Species {
    pub const ALL: [Species; 11] = [
        Species::S33_3,
        Species::S33_4,
        Species::S34,
        Species::S35_3,
        Species::S35_4,
        Species::S36_1,
        Species::S36_2,
        Species::S36s,
        Species::S37,
        Species::S38,
        Species::S39,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Species::S33_3 => "33_3",
            Species::S33_4 => "33_4",
            Species::S34 => "34",
            Species::S35_3 => "35_3",
            Species::S35_4 => "35_4",
            Species::S36_1 => "36_1",
            Species::S36_2 => "36_2",
            Species::S36s => "36s",
            Species::S37 => "37",
            Species::S38 => "38",
            Species::S39 => "39",
        }
    }

    /// Level of the G₁ lattice unit.
    pub fn level(self) -> u8 {
        match self {
            Species::S36_1 | Species::S39 => 1,
            Species::S34 | Species::S36_2 | Species::S36s => 2,
            Species::S33_3 | Species::S35_3 | Species::S38 => 3,
            Species::S33_4 | Species::S35_4 | Species::S37 => 4,
        }
    }

    /// Markers at the unit centre and at its corners.
    pub fn markers(self) -> (Marker, Marker) {
        use Marker::*;
        match self {
            Species::S34 | Species::S33_3 | Species::S33_4 => (Plain, Plain),
            Species::S36_1
            | Species::S36_2
            | Species::S36s
            | Species::S35_3
            | Species::S35_4 => (Reversing, Reversing),
            Species::S39 | Species::S38 | Species::S37 => (Reversing, Plain),
        }
    }

    pub fn centre_sort(self) -> CentreSort {
        match self {
            Species::S36_1 | Species::S39 | Species::S36s => CentreSort::CellCentre,
            _ => CentreSort::CellCorner,
        }
    }

    /// G₁ unit area as a multiple of the level-1 area.
    pub fn g1_area_factor(self) -> i64 {
        1 << (self.level() - 1)
    }

    /// H₁ unit area (the period) as a multiple of the level-1 area.
    pub fn h1_area_factor(self) -> i64 {
        match self.markers() {
            (Marker::Reversing, Marker::Plain) => 2 * self.g1_area_factor(),
            _ => self.g1_area_factor(),
        }
    }

    /// Order as a multiple of the level-1 area.
    pub fn order_factor(self) -> i64 {
        match self {
            Species::S36_1 => 1,
            Species::S39
            | Species::S34
            | Species::S36_2
            | Species::S36s
            | Species::S33_3
            | Species::S35_3 => 2,
            Species::S38 | Species::S33_4 | Species::S35_4 | Species::S37 => 4,
        }
    }

    pub fn h1_type(self) -> WallpaperType {
        match self.markers() {
            (Marker::Reversing, Marker::Reversing) => WallpaperType::P2,
            _ => WallpaperType::P4,
        }
    }

    /// Species whose order is `f · 2^p`.
    pub fn for_power(p: u32) -> &'static [Species] {
        match p {
            0 => &[Species::S36_1],
            1 => &[
                Species::S39,
                Species::S34,
                Species::S36_2,
                Species::S36s,
                Species::S33_3,
                Species::S35_3,
            ],
            2 => &[Species::S38, Species::S33_4, Species::S35_4, Species::S37],
            _ => &[],
        }
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Species {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .trim()
            .chars()
            .map(|c| match c {
                '₁' => '1',
                '₂' => '2',
                '₃' => '3',
                '₄' => '4',
                'ₛ' | 'S' => 's',
                c => c,
            })
            .filter(|&c| c != '_')
            .collect();
        let sp = match norm.as_str() {
            "333" => Species::S33_3,
            "334" => Species::S33_4,
            "34" => Species::S34,
            "353" => Species::S35_3,
            "354" => Species::S35_4,
            "361" => Species::S36_1,
            "362" => Species::S36_2,
            "36s" => Species::S36s,
            "37" => Species::S37,
            "38" => Species::S38,
            "39" => Species::S39,
            _ => return Err(Error::UnknownSpecies(s.to_string())),
        };
        Ok(sp)
    }
}

/// Every symmetry of a design, gathered by exhaustive search.
#[derive(Clone, Debug)]
pub struct SymmetrySurvey {
    pub side: usize,
    /// All cell-preserving symmetries, translation parts reduced mod `2T`, sorted.
    pub maps: Vec<AffineMap>,
    /// Translations without τ.
    pub translations: Lattice,
    /// Translations with or without τ.
    pub all_translations: Lattice,
    /// Quarter-turn centres with their τ flag, reduced mod the τ-free lattice.
    pub quarter_centres: Vec<(HalfPoint, bool)>,
    pub half_centres: Vec<(HalfPoint, bool)>,
    pub has_reflection_or_glide: bool,
}

impl SymmetrySurvey {
    /// Reduced basis of the τ-free translation lattice.
    pub fn translation_basis(&self) -> [Vec2; 2] {
        self.translations.reduced_basis()
    }

    pub fn has_quarter_turns(&self) -> bool {
        !self.quarter_centres.is_empty()
    }

    /// Whether the symmetries are transitive on warps and wefts together.
    pub fn is_isonemal(&self) -> bool {
        strand_orbit(&self.maps, self.side, Strand::Warp(0)).len() == 2 * self.side
    }
}

/// A warp (column) or weft (row) of the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Strand {
    Warp(usize),
    Weft(usize),
}

/// The strand that `map` carries `s` onto.
pub fn map_strand(map: &AffineMap, side: usize, s: Strand) -> Strand {
    let t = side as i64;
    let (x, y) = match s {
        Strand::Warp(x) => (x as i64, 0),
        Strand::Weft(y) => (0, y as i64),
    };
    let (u, v) = map.map_cell(x, y);
    let vertical = matches!(s, Strand::Warp(_));
    if vertical ^ map.linear.swaps_strands() {
        Strand::Warp(u.rem_euclid(t) as usize)
    } else {
        Strand::Weft(v.rem_euclid(t) as usize)
    }
}

pub fn strand_orbit(maps: &[AffineMap], side: usize, s: Strand) -> BTreeSet<Strand> {
    maps.iter().map(|m| map_strand(m, side, s)).collect()
}

/// Exhaustive survey of the cell-preserving symmetries of `d`.
pub fn survey(d: &Design) -> Result<SymmetrySurvey> {
    let t = d.side();
    let max = max_side();
    if t > max {
        return Err(Error::TorusTooLarge { side: t, max });
    }
    let ti = t as i64;
    let mut jobs = Vec::with_capacity(16 * t);
    for lin in Linear::ALL {
        for tau in [false, true] {
            for i in 0..ti {
                jobs.push((lin, tau, 2 * i));
            }
        }
    }
    let mut maps: Vec<AffineMap> = jobs
        .par_iter()
        .flat_map_iter(|&(lin, tau, tx)| {
            (0..ti).filter_map(move |j| {
                let m = AffineMap::new(lin, tx, 2 * j, tau);
                is_symmetry_map(d, &m).then_some(m)
            })
        })
        .collect();
    maps.sort();

    let mut plain = vec![(ti, 0), (0, ti)];
    let mut all = plain.clone();
    for m in maps.iter().filter(|m| m.linear == Linear::IDENTITY) {
        let v = (m.tx / 2, m.ty / 2);
        all.push(v);
        if !m.tau {
            plain.push(v);
        }
    }
    let translations = Lattice::from_generators(&plain)?;
    let all_translations = Lattice::from_generators(&all)?;
    let fine = translations.scaled(2);

    let mut quarters = BTreeSet::new();
    let mut halves = BTreeSet::new();
    let mut has_reflection_or_glide = false;
    for m in &maps {
        if m.linear.is_reflection() {
            has_reflection_or_glide = true;
            continue;
        }
        if m.linear == Linear::QUARTER {
            let c = m.rotation_centre().expect("quarter-turn has a centre");
            // The translation part is only known mod 2T; that moves the
            // centre by (T, T) in doubled units.
            for (ox, oy) in [(0, 0), (ti, ti)] {
                let p = fine.reduce((c.dx + ox, c.dy + oy));
                quarters.insert((HalfPoint::new(p.0, p.1), m.tau));
            }
        } else if m.linear == Linear::HALF {
            let c = m.rotation_centre().expect("half-turn has a centre");
            for (ox, oy) in [(0, 0), (ti, 0), (0, ti), (ti, ti)] {
                let p = fine.reduce((c.dx + ox, c.dy + oy));
                halves.insert((HalfPoint::new(p.0, p.1), m.tau));
            }
        }
    }
    let mut quarter_centres: Vec<_> = quarters.into_iter().collect();
    let mut half_centres: Vec<_> = halves.into_iter().collect();
    quarter_centres.sort_by_key(|&(p, tau)| (p.dx, p.dy, tau));
    half_centres.sort_by_key(|&(p, tau)| (p.dx, p.dy, tau));

    Ok(SymmetrySurvey {
        side: t,
        maps,
        translations,
        all_translations,
        quarter_centres,
        half_centres,
        has_reflection_or_glide,
    })
}

/// Outcome of classifying a design that is not one of the eleven species.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RejectionKind {
    /// Reflection or glide-reflection symmetry without quarter-turns.
    Reflective,
    /// Quarter-turns together with reflections.
    Exceptional,
    /// Neither quarter-turns nor reflections.
    NoQuarterTurn,
    /// The lattice unit has a side on a forbidden line (order 4 or less).
    Conformed,
    /// Quarter-turn group that is not transitive on strands.
    NotIsonemal,
}

impl fmt::Display for RejectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RejectionKind::Reflective => "reflective",
            RejectionKind::Exceptional => "exceptional",
            RejectionKind::NoQuarterTurn => "no-quarter-turn",
            RejectionKind::Conformed => "conformed",
            RejectionKind::NotIsonemal => "not-isonemal",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub kind: RejectionKind,
    pub detail: String,
}

impl Rejection {
    fn new(kind: RejectionKind, detail: impl Into<String>) -> Self {
        Rejection {
            kind,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.detail.is_empty() {
            write!(f, "{}", self.kind)
        } else {
            write!(f, "{}: {}", self.kind, self.detail)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpeciesReport {
    pub species: Species,
    pub g1_unit: LatticeUnit,
    pub h1_unit: LatticeUnit,
    pub h1_type: WallpaperType,
    pub order: i64,
    pub period: i64,
    pub reflected: bool,
    /// Side of the G₁ unit as found in the design.
    pub side: Vec2,
    /// Quarter-turn centre at the middle of the G₁ unit, and its marker.
    pub centre: HalfPoint,
    pub centre_marker: Marker,
    /// One corner of that unit, and its marker.
    pub corner: HalfPoint,
    pub corner_marker: Marker,
}

impl SpeciesReport {
    pub fn seed(&self) -> Vec2 {
        (self.g1_unit.base_m, self.g1_unit.base_n)
    }

    /// Summary record: species, seed, level, order, period, H₁ type, handedness.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "species": self.species.name(),
            "M1": self.g1_unit.base_m,
            "N1": self.g1_unit.base_n,
            "level": self.g1_unit.level,
            "order": self.order,
            "period": self.period,
            "h1_type": self.h1_type.to_string(),
            "reflected": self.reflected,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Species(SpeciesReport),
    Rejected(Rejection),
}

impl Classification {
    pub fn species(&self) -> Option<Species> {
        match self {
            Classification::Species(r) => Some(r.species),
            Classification::Rejected(_) => None,
        }
    }

    pub fn report(&self) -> Option<&SpeciesReport> {
        match self {
            Classification::Species(r) => Some(r),
            Classification::Rejected(_) => None,
        }
    }
}

fn quarter_marker_at(d: &Design, p: HalfPoint) -> Option<Marker> {
    let found: Vec<bool> = [false, true]
        .into_iter()
        .filter(|&tau| is_symmetry_map(d, &AffineMap::rotation_about(p, 1, tau)))
        .collect();
    match found.as_slice() {
        [tau] => Some(Marker::from_tau(*tau)),
        _ => None,
    }
}

fn centre_sort_of(p: HalfPoint) -> Result<CentreSort> {
    match p.sort() {
        PointSort::CellCentre => Ok(CentreSort::CellCentre),
        PointSort::CellCorner => Ok(CentreSort::CellCorner),
        PointSort::MidSide => Err(Error::InconsistentPlacement(format!(
            "quarter-turn centre {p} at a mid-side"
        ))),
    }
}

pub fn classify(d: &Design) -> Result<Classification> {
    classify_surveyed(d, &survey(d)?)
}

/// Classifies `d` using a survey already taken of it.
pub fn classify_surveyed(d: &Design, s: &SymmetrySurvey) -> Result<Classification> {
    use Classification::Rejected;
    if !s.has_quarter_turns() {
        return Ok(Rejected(if s.has_reflection_or_glide {
            Rejection::new(RejectionKind::Reflective, "reflection or glide without quarter-turns")
        } else {
            Rejection::new(RejectionKind::NoQuarterTurn, "")
        }));
    }
    if s.has_reflection_or_glide {
        return Ok(Rejected(Rejection::new(
            RejectionKind::Exceptional,
            "quarter-turns together with reflection axes",
        )));
    }
    let w = s.all_translations.square_side().ok_or_else(|| {
        Error::InconsistentPlacement("translation lattice with quarter-turns is not square".into())
    })?;
    let (q0, tau0) = s.quarter_centres[0];
    let diag = (w.0 + rot(w).0, w.1 + rot(w).1);
    let b0 = q0.offset(diag.0, diag.1);
    let m0 = Marker::from_tau(tau0);
    let mb = quarter_marker_at(d, b0).ok_or_else(|| {
        Error::InconsistentPlacement(format!("no unique quarter-turn at unit corner {b0}"))
    })?;
    let (sort0, sortb) = (centre_sort_of(q0)?, centre_sort_of(b0)?);

    // Pick the unit centre: the cell-centre class when the sorts differ,
    // otherwise the ■ class when the markers differ.
    let swap = if sort0 != sortb {
        sortb == CentreSort::CellCentre
    } else {
        m0 == Marker::Plain && mb == Marker::Reversing
    };
    let (centre, cm, corner, km) = if swap {
        (b0, mb, q0, m0)
    } else {
        (q0, m0, b0, mb)
    };
    let corner_sort = centre_sort_of(corner)?;

    let unit = match classify_square(w, corner_sort) {
        Ok(u) => u,
        Err(Error::ForbiddenLine(a, b)) => {
            return Ok(Rejected(Rejection::new(
                RejectionKind::Conformed,
                format!("lattice side ({a}, {b}) on a forbidden line"),
            )))
        }
        Err(Error::CommonFactor { m, n, g }) => {
            return Ok(Rejected(Rejection::new(
                RejectionKind::NotIsonemal,
                format!("legs ({m}, {n}) share the factor {g}"),
            )))
        }
        Err(e) => return Err(e),
    };
    if (unit.level == 1) != (sort0 != sortb) {
        return Err(Error::InconsistentPlacement(format!(
            "level {} unit with centre sorts {:?} and {:?}",
            unit.level, sort0, sortb
        )));
    }
    if !unit.isonemal_capable() {
        return Ok(Rejected(Rejection::new(
            RejectionKind::NotIsonemal,
            format!(
                "level-{} unit centred at a {}",
                unit.level,
                match unit.centre_sort {
                    CentreSort::CellCentre => "cell centre",
                    CentreSort::CellCorner => "cell corner",
                }
            ),
        )));
    }
    if !s.is_isonemal() {
        return Ok(Rejected(Rejection::new(
            RejectionKind::NotIsonemal,
            "symmetry group is not transitive on strands",
        )));
    }

    use Marker::*;
    let species = match (unit.level, unit.centre_sort, cm, km) {
        (1, CentreSort::CellCentre, Reversing, Reversing) => Species::S36_1,
        (1, CentreSort::CellCentre, Reversing, Plain) => Species::S39,
        (2, CentreSort::CellCorner, Plain, Plain) => Species::S34,
        (2, CentreSort::CellCorner, Reversing, Reversing) => Species::S36_2,
        (2, CentreSort::CellCentre, Reversing, Reversing) => Species::S36s,
        (3, CentreSort::CellCorner, Plain, Plain) => Species::S33_3,
        (3, CentreSort::CellCorner, Reversing, Reversing) => Species::S35_3,
        (3, CentreSort::CellCorner, Reversing, Plain) => Species::S38,
        (4, CentreSort::CellCorner, Plain, Plain) => Species::S33_4,
        (4, CentreSort::CellCorner, Reversing, Reversing) => Species::S35_4,
        (4, CentreSort::CellCorner, Reversing, Plain) => Species::S37,
        other => {
            return Err(Error::InconsistentPlacement(format!(
                "no species for level {}, {:?} centre, markers {:?}/{:?}",
                other.0, other.1, other.2, other.3
            )))
        }
    };

    // The mid-side half-turn carries τ exactly when the two markers differ.
    let mid = centre.offset(w.0, w.1);
    let mid_tau = cm.tau() ^ km.tau();
    if !is_symmetry_map(d, &AffineMap::rotation_about(mid, 2, mid_tau)) {
        return Err(Error::InconsistentPlacement(format!(
            "missing half-turn at mid-side {mid}"
        )));
    }

    let f = unit.base_area();
    let period = s.translations.det();
    if period != species.h1_area_factor() * f {
        return Err(Error::InconsistentPlacement(format!(
            "period {period} does not match species {species} on area {f}"
        )));
    }
    let order = species.order_factor() * f;
    if s.translations.axis_period() != order {
        return Err(Error::InconsistentPlacement(format!(
            "order {order} disagrees with the translation lattice"
        )));
    }
    let h_side = s
        .translations
        .square_side()
        .ok_or_else(|| Error::InconsistentPlacement("τ-free lattice is not square".into()))?;
    // H₁ units are centred on □ (or on the G₁ centre when there is none);
    // either way their corners share the sort of the G₁ corners.
    let h1_unit = classify_square(h_side, corner_sort)?;

    Ok(Classification::Species(SpeciesReport {
        species,
        g1_unit: unit,
        h1_unit,
        h1_type: species.h1_type(),
        order,
        period,
        reflected: unit.reflected,
        side: w,
        centre,
        centre_marker: cm,
        corner,
        corner_marker: km,
    }))
}

/// The symmetry a single strand inherits from the design's group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StrandSymmetry {
    Trivial,
    /// Translation with side reversal along the strand.
    ElevenEleven,
    /// Half-turns with side reversal centred on the strand.
    TwelveTwelve,
    /// Half-turns without side reversal centred on the strand.
    HalfTurn,
}

impl fmt::Display for StrandSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrandSymmetry::Trivial => "trivial",
            StrandSymmetry::ElevenEleven => "11/11",
            StrandSymmetry::TwelveTwelve => "12/12",
            StrandSymmetry::HalfTurn => "half_turn",
        })
    }
}

/// Symmetry of warp 0 under the surveyed group.
pub fn strand_symmetry(s: &SymmetrySurvey) -> StrandSymmetry {
    let fixing: Vec<&AffineMap> = s
        .maps
        .iter()
        .filter(|m| !m.linear.is_reflection())
        .filter(|m| map_strand(m, s.side, Strand::Warp(0)) == Strand::Warp(0))
        .collect();
    let t2 = 2 * s.side as i64;
    let along_strand_tau = |m: &&&AffineMap| {
        m.linear == Linear::IDENTITY && m.tau && m.ty.rem_euclid(t2) != 0
    };
    if fixing.iter().any(|m| m.linear == Linear::HALF && m.tau) {
        StrandSymmetry::TwelveTwelve
    } else if fixing.iter().any(|m| along_strand_tau(&m)) {
        StrandSymmetry::ElevenEleven
    } else if fixing.iter().any(|m| m.linear == Linear::HALF) {
        StrandSymmetry::HalfTurn
    } else {
        StrandSymmetry::Trivial
    }
}
