//! Periodic weave designs and the plane isometries that act on them.
//!
//! Cell `(x, y)` occupies `[x, x+1) × [y, y+1)`. Warps are the vertical
//! columns of cells (constant `x`), wefts the horizontal rows. A cell value
//! of `true` means the warp passes over the weft (drawn dark).
//!
//! Points are carried in doubled coordinates ([`HalfPoint`]) so that cell
//! corners, cell centres and mid-sides are all integral.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A doubly periodic two-colour design on a `T × T` torus.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Design {
    side: usize,
    /// Row-major by `y`: index `y * side + x`.
    cells: Vec<bool>,
    label: Option<String>,
}

impl Design {
    pub fn new(side: usize, cells: Vec<bool>) -> Result<Self> {
        if side == 0 {
            return Err(Error::InvalidDesign("torus side must be at least 1".into()));
        }
        if cells.len() != side * side {
            return Err(Error::InvalidDesign(format!(
                "expected {} cells for side {}, got {}",
                side * side,
                side,
                cells.len()
            )));
        }
        Ok(Design {
            side,
            cells,
            label: None,
        })
    }

    /// Builds a design by evaluating `f(x, y)` on every cell of the torus.
    pub fn from_fn(side: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        assert!(side > 0, "torus side must be at least 1");
        let mut cells = Vec::with_capacity(side * side);
        for y in 0..side {
            for x in 0..side {
                cells.push(f(x, y));
            }
        }
        Design {
            side,
            cells,
            label: None,
        }
    }

    /// Plain weave `d(x, y) = (x + y) mod 2` on the 2 × 2 torus.
    pub fn plain_weave() -> Self {
        Design::from_fn(2, |x, y| (x + y) % 2 == 1).with_label("plain weave")
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn set_label(&mut self, label: Option<String>) {
        self.label = label;
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn side(&self) -> usize {
        self.side
    }

    /// Value at an arbitrary integer cell, read periodically.
    #[inline]
    pub fn get(&self, x: i64, y: i64) -> bool {
        let t = self.side as i64;
        let xi = x.rem_euclid(t) as usize;
        let yi = y.rem_euclid(t) as usize;
        self.cells[yi * self.side + xi]
    }

    #[inline]
    pub(crate) fn at(&self, x: usize, y: usize) -> bool {
        self.cells[y * self.side + x]
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    /// Number of dark cells on the torus.
    pub fn dark_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn is_constant(&self) -> bool {
        self.cells.iter().all(|&c| c == self.cells[0])
    }

    /// Colour complement: the reverse side of the fabric.
    pub fn complement(&self) -> Design {
        Design {
            side: self.side,
            cells: self.cells.iter().map(|&c| !c).collect(),
            label: self.label.clone(),
        }
    }

    /// Cyclic shift so that the new design at `c + (vx, vy)` equals the old at `c`.
    pub fn translate(&self, vx: i64, vy: i64) -> Design {
        Design::from_fn(self.side, |x, y| self.get(x as i64 - vx, y as i64 - vy))
    }

    /// The same periodic design read on a torus `k` times as wide.
    pub fn tile(&self, k: usize) -> Design {
        let mut out = Design::from_fn(self.side * k, |x, y| self.get(x as i64, y as i64));
        out.label = self.label.clone();
        out
    }

    /// Mirror image in a vertical line (`x ↦ -1 - x`).
    pub fn mirror(&self) -> Design {
        let t = self.side as i64;
        Design::from_fn(self.side, |x, y| self.get(t - 1 - x as i64, y as i64))
    }

    /// Row strings from top (`y = T-1`) to bottom, as in the text format.
    pub fn rows_top_down(&self) -> Vec<String> {
        (0..self.side)
            .rev()
            .map(|y| {
                (0..self.side)
                    .map(|x| if self.at(x, y) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Design(T={}, label={:?})", self.side, self.label)?;
        for row in self.rows_top_down() {
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// Position class of a point in the cell grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PointSort {
    CellCorner,
    CellCentre,
    MidSide,
}

/// A plane point `(dx/2, dy/2)` held in doubled integer coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfPoint {
    pub dx: i64,
    pub dy: i64,
}

impl HalfPoint {
    pub const fn new(dx: i64, dy: i64) -> Self {
        HalfPoint { dx, dy }
    }

    /// Centre of cell `(x, y)`.
    pub const fn cell_centre(x: i64, y: i64) -> Self {
        HalfPoint {
            dx: 2 * x + 1,
            dy: 2 * y + 1,
        }
    }

    /// Lower-left corner of cell `(x, y)`.
    pub const fn cell_corner(x: i64, y: i64) -> Self {
        HalfPoint {
            dx: 2 * x,
            dy: 2 * y,
        }
    }

    pub fn sort(self) -> PointSort {
        match (self.dx.rem_euclid(2), self.dy.rem_euclid(2)) {
            (0, 0) => PointSort::CellCorner,
            (1, 1) => PointSort::CellCentre,
            _ => PointSort::MidSide,
        }
    }

    /// Cell containing this point when it is a cell centre.
    pub fn as_cell(self) -> Option<(i64, i64)> {
        (self.sort() == PointSort::CellCentre)
            .then(|| ((self.dx - 1).div_euclid(2), (self.dy - 1).div_euclid(2)))
    }

    pub fn offset(self, vx: i64, vy: i64) -> Self {
        HalfPoint::new(self.dx + vx, self.dy + vy)
    }
}

impl fmt::Display for HalfPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = |v: i64| {
            if v % 2 == 0 {
                format!("{}", v / 2)
            } else {
                format!("{}/2", v)
            }
        };
        write!(f, "({}, {})", half(self.dx), half(self.dy))
    }
}

/// Linear part of a grid isometry: an element of the dihedral group of order 8.
///
/// Stored as the integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Linear {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Linear {
    pub const IDENTITY: Linear = Linear::new(1, 0, 0, 1);
    /// Anticlockwise quarter-turn.
    pub const QUARTER: Linear = Linear::new(0, -1, 1, 0);
    pub const HALF: Linear = Linear::new(-1, 0, 0, -1);
    pub const THREE_QUARTER: Linear = Linear::new(0, 1, -1, 0);
    /// `x ↦ -x`: reflection in a vertical line.
    pub const MIRROR_X: Linear = Linear::new(-1, 0, 0, 1);
    pub const MIRROR_Y: Linear = Linear::new(1, 0, 0, -1);
    pub const MIRROR_DIAG: Linear = Linear::new(0, 1, 1, 0);
    pub const MIRROR_ANTI: Linear = Linear::new(0, -1, -1, 0);

    pub const ALL: [Linear; 8] = [
        Linear::IDENTITY,
        Linear::QUARTER,
        Linear::HALF,
        Linear::THREE_QUARTER,
        Linear::MIRROR_X,
        Linear::MIRROR_Y,
        Linear::MIRROR_DIAG,
        Linear::MIRROR_ANTI,
    ];

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Linear { a, b, c, d }
    }

    /// `k` anticlockwise quarter-turns.
    pub fn rotation(k: i64) -> Linear {
        match k.rem_euclid(4) {
            0 => Linear::IDENTITY,
            1 => Linear::QUARTER,
            2 => Linear::HALF,
            _ => Linear::THREE_QUARTER,
        }
    }

    #[inline]
    pub fn apply(self, x: i64, y: i64) -> (i64, i64) {
        (self.a * x + self.b * y, self.c * x + self.d * y)
    }

    pub fn compose(self, rhs: Linear) -> Linear {
        // self ∘ rhs
        Linear::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }

    pub fn det(self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn is_reflection(self) -> bool {
        self.det() < 0
    }

    /// Whether vertical strands are carried to horizontal ones.
    pub fn swaps_strands(self) -> bool {
        self.a == 0
    }

    pub fn inverse(self) -> Linear {
        // Orthogonal: inverse is transpose.
        Linear::new(self.a, self.c, self.b, self.d)
    }
}

/// A plane isometry of the cell grid in doubled coordinates,
/// `p ↦ L p + t`, optionally combined with side reversal τ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineMap {
    pub linear: Linear,
    pub tx: i64,
    pub ty: i64,
    pub tau: bool,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap {
        linear: Linear::IDENTITY,
        tx: 0,
        ty: 0,
        tau: false,
    };

    pub fn new(linear: Linear, tx: i64, ty: i64, tau: bool) -> Self {
        AffineMap {
            linear,
            tx,
            ty,
            tau,
        }
    }

    /// Rotation by `k` quarter-turns about `centre`.
    pub fn rotation_about(centre: HalfPoint, k: i64, tau: bool) -> Self {
        let lin = Linear::rotation(k);
        let (rx, ry) = lin.apply(centre.dx, centre.dy);
        AffineMap::new(lin, centre.dx - rx, centre.dy - ry, tau)
    }

    /// Translation by a whole number of cells.
    pub fn translation(vx: i64, vy: i64, tau: bool) -> Self {
        AffineMap::new(Linear::IDENTITY, 2 * vx, 2 * vy, tau)
    }

    #[inline]
    pub fn apply(&self, p: HalfPoint) -> HalfPoint {
        let (x, y) = self.linear.apply(p.dx, p.dy);
        HalfPoint::new(x + self.tx, y + self.ty)
    }

    /// Whether a cell's colour must be complemented for the map to be a symmetry.
    pub fn complements(&self) -> bool {
        self.linear.swaps_strands() ^ self.tau
    }

    /// Whether the map carries cell centres to cell centres.
    pub fn preserves_cells(&self) -> bool {
        // L maps odd/odd to odd/odd, so the translation must be even/even.
        self.tx.rem_euclid(2) == 0 && self.ty.rem_euclid(2) == 0
    }

    /// Image of cell `(x, y)`; the map must preserve cells.
    #[inline]
    pub fn map_cell(&self, x: i64, y: i64) -> (i64, i64) {
        let (px, py) = self.linear.apply(2 * x + 1, 2 * y + 1);
        ((px + self.tx - 1).div_euclid(2), (py + self.ty - 1).div_euclid(2))
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &AffineMap) -> AffineMap {
        let (x, y) = self.linear.apply(rhs.tx, rhs.ty);
        AffineMap::new(
            self.linear.compose(rhs.linear),
            x + self.tx,
            y + self.ty,
            self.tau ^ rhs.tau,
        )
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = self.linear.inverse();
        let (x, y) = inv.apply(-self.tx, -self.ty);
        AffineMap::new(inv, x, y, self.tau)
    }

    /// Reduce the translation part modulo the torus period (`2T` in doubled units).
    pub fn reduced(&self, side: usize) -> AffineMap {
        let m = 2 * side as i64;
        AffineMap::new(self.linear, self.tx.rem_euclid(m), self.ty.rem_euclid(m), self.tau)
    }

    /// Fixed point of a rotation (`L ≠ I`, no reflection), in doubled coordinates.
    pub fn rotation_centre(&self) -> Option<HalfPoint> {
        let l = self.linear;
        if l.is_reflection() || l == Linear::IDENTITY {
            return None;
        }
        // Solve (I - L) c = t.
        let (a, b, c, d) = (1 - l.a, -l.b, -l.c, 1 - l.d);
        let det = a * d - b * c;
        let x = d * self.tx - b * self.ty;
        let y = -c * self.tx + a * self.ty;
        if x % det != 0 || y % det != 0 {
            return None;
        }
        Some(HalfPoint::new(x / det, y / det))
    }
}

/// The isometries used to describe quarter-turn symmetry groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsometryKind {
    Translation { vx: i64, vy: i64 },
    /// `direction` is `+1` (anticlockwise) or `-1`.
    QuarterTurn { centre: HalfPoint, direction: i8 },
    HalfTurn { centre: HalfPoint },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Isometry {
    pub kind: IsometryKind,
    pub tau: bool,
}

impl Isometry {
    pub fn translation(vx: i64, vy: i64, tau: bool) -> Self {
        Isometry {
            kind: IsometryKind::Translation { vx, vy },
            tau,
        }
    }

    pub fn quarter_turn(centre: HalfPoint, direction: i8, tau: bool) -> Self {
        Isometry {
            kind: IsometryKind::QuarterTurn { centre, direction },
            tau,
        }
    }

    pub fn half_turn(centre: HalfPoint, tau: bool) -> Self {
        Isometry {
            kind: IsometryKind::HalfTurn { centre },
            tau,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let IsometryKind::QuarterTurn { centre, direction } = self.kind {
            if centre.sort() == PointSort::MidSide {
                return Err(Error::InvalidCentre(centre));
            }
            if direction != 1 && direction != -1 {
                return Err(Error::InvalidDirection(direction));
            }
        }
        Ok(())
    }

    pub fn to_affine(&self) -> Result<AffineMap> {
        self.validate()?;
        Ok(match self.kind {
            IsometryKind::Translation { vx, vy } => AffineMap::translation(vx, vy, self.tau),
            IsometryKind::QuarterTurn { centre, direction } => {
                AffineMap::rotation_about(centre, direction as i64, self.tau)
            }
            IsometryKind::HalfTurn { centre } => AffineMap::rotation_about(centre, 2, self.tau),
        })
    }

    /// Cell containing the image of the centre of `cell`. τ does not move cells.
    pub fn map_cell(&self, cell: (i64, i64)) -> Result<(i64, i64)> {
        let map = self.to_affine()?;
        let image = map.apply(HalfPoint::cell_centre(cell.0, cell.1));
        // A half-turn about a mid-side or corner still maps centres to centres;
        // anything else is a broken centre.
        image.as_cell().ok_or(Error::InvalidCentre(image))
    }

    /// Quarter-turns complement unless τ is added; translations and half-turns
    /// complement only with τ.
    pub fn expected_complement(&self) -> bool {
        match self.kind {
            IsometryKind::QuarterTurn { .. } => !self.tau,
            _ => self.tau,
        }
    }
}

/// Whether `map` preserves the design, complementing where its rule requires.
pub fn is_symmetry_map(d: &Design, map: &AffineMap) -> bool {
    if !map.preserves_cells() {
        return false;
    }
    let t = d.side();
    let comp = map.complements();
    let m = map.reduced(t);
    for y in 0..t {
        for x in 0..t {
            let (u, v) = m.map_cell(x as i64, y as i64);
            if d.get(u, v) != (d.at(x, y) ^ comp) {
                return false;
            }
        }
    }
    true
}

pub fn is_symmetry(d: &Design, iso: &Isometry) -> Result<bool> {
    Ok(is_symmetry_map(d, &iso.to_affine()?))
}

/// The design of the fabric moved by `map`: `d'(g c) = d(c) XOR complement(g)`.
pub fn transform_design_map(d: &Design, map: &AffineMap) -> Result<Design> {
    if !map.preserves_cells() {
        return Err(Error::NotCellPreserving);
    }
    let t = d.side();
    let inv = map.inverse().reduced(t);
    let comp = map.complements();
    let mut out = Design::from_fn(t, |x, y| {
        let (u, v) = inv.map_cell(x as i64, y as i64);
        d.get(u, v) ^ comp
    });
    out.set_label(d.label().map(str::to_owned));
    Ok(out)
}

pub fn transform_design(d: &Design, iso: &Isometry) -> Result<Design> {
    transform_design_map(d, &iso.to_affine()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain() -> Design {
        Design::plain_weave()
    }

    #[test]
    fn map_cell_examples() {
        let h = Isometry::half_turn(HalfPoint::new(1, 1), false);
        assert_eq!(h.map_cell((0, 0)).unwrap(), (0, 0));

        let q = Isometry::quarter_turn(HalfPoint::new(0, 0), 1, false);
        assert_eq!(q.map_cell((2, 0)).unwrap(), (-1, 2));

        let t = Isometry::translation(3, 1, false);
        assert_eq!(t.map_cell((0, 0)).unwrap(), (3, 1));
    }

    #[test]
    fn mixed_parity_quarter_turn_is_rejected() {
        let q = Isometry::quarter_turn(HalfPoint::new(1, 0), 1, false);
        assert!(matches!(q.map_cell((0, 0)), Err(Error::InvalidCentre(_))));
        // Half-turns may sit on mid-sides.
        let h = Isometry::half_turn(HalfPoint::new(1, 0), false);
        assert_eq!(h.map_cell((0, 0)).unwrap(), (0, -1));
    }

    #[test]
    fn complement_rules() {
        let c = HalfPoint::new(0, 0);
        assert!(Isometry::quarter_turn(c, 1, false).expected_complement());
        assert!(!Isometry::quarter_turn(c, 1, true).expected_complement());
        assert!(!Isometry::half_turn(c, false).expected_complement());
        assert!(Isometry::half_turn(c, true).expected_complement());
        assert!(Isometry::translation(1, 0, true).expected_complement());
        assert!(!Isometry::translation(1, 0, false).expected_complement());
        // The affine form agrees.
        for iso in [
            Isometry::quarter_turn(c, 1, false),
            Isometry::quarter_turn(c, -1, true),
            Isometry::half_turn(c, true),
            Isometry::translation(2, 3, false),
        ] {
            assert_eq!(iso.to_affine().unwrap().complements(), iso.expected_complement());
        }
    }

    #[test]
    fn plain_weave_symmetries() {
        let d = plain();
        let q = Isometry::quarter_turn(HalfPoint::new(0, 0), 1, false);
        assert!(is_symmetry(&d, &q).unwrap());
        let h = Isometry::half_turn(HalfPoint::new(1, 1), false);
        assert!(is_symmetry(&d, &h).unwrap());
        let t = Isometry::translation(1, 0, false);
        assert!(!is_symmetry(&d, &t).unwrap());
        // ... but with side reversal the same translation works.
        assert!(is_symmetry(&d, &Isometry::translation(1, 0, true)).unwrap());
    }

    #[test]
    fn complement_examples() {
        let dark = Design::new(1, vec![false]).unwrap().complement();
        assert_eq!(dark.cells(), &[true]);
        let d = plain();
        assert_eq!(d.complement().complement(), d);
        assert_eq!(d.complement().cells(), d.translate(1, 0).cells());
    }

    #[test]
    fn transform_examples() {
        let d = plain();
        let q = Isometry::quarter_turn(HalfPoint::new(0, 0), 1, false);
        assert_eq!(transform_design(&d, &q).unwrap(), d);

        let e = Design::from_fn(5, |x, y| (x * 3 + y * y) % 4 == 1);
        let t = Isometry::translation(5, 0, false);
        assert_eq!(transform_design(&e, &t).unwrap(), e);

        let q = Isometry::quarter_turn(HalfPoint::new(3, 1), 1, true);
        let mut cur = e.clone();
        for _ in 0..4 {
            cur = transform_design(&cur, &q).unwrap();
        }
        assert_eq!(cur, e);
    }

    #[test]
    fn transform_matches_symmetry_test() {
        let e = Design::from_fn(6, |x, y| (x + 2 * y) % 3 == 0);
        for map in [
            AffineMap::translation(3, 0, false),
            AffineMap::translation(1, 1, false),
            AffineMap::rotation_about(HalfPoint::new(1, 1), 1, true),
            AffineMap::rotation_about(HalfPoint::new(0, 2), 2, false),
        ] {
            let moved = transform_design_map(&e, &map).unwrap();
            assert_eq!(moved == e, is_symmetry_map(&e, &map));
        }
    }

    #[test]
    fn rotation_centre_recovers_centre() {
        for (dx, dy) in [(0, 0), (3, 5), (-2, 4), (1, 1)] {
            let c = HalfPoint::new(dx, dy);
            for k in 1..4 {
                let m = AffineMap::rotation_about(c, k, false);
                assert_eq!(m.rotation_centre(), Some(c));
            }
        }
    }

    #[test]
    fn compose_and_inverse() {
        let a = AffineMap::rotation_about(HalfPoint::new(1, 3), 1, true);
        let b = AffineMap::rotation_about(HalfPoint::new(4, 0), 3, false);
        let ab = a.compose(&b);
        let p = HalfPoint::new(7, -3);
        assert_eq!(ab.apply(p), a.apply(b.apply(p)));
        assert_eq!(a.inverse().compose(&a).apply(p), p);
        assert!(ab.tau);
    }

    #[test]
    fn half_point_sorts() {
        assert_eq!(HalfPoint::new(0, 0).sort(), PointSort::CellCorner);
        assert_eq!(HalfPoint::new(-1, 3).sort(), PointSort::CellCentre);
        assert_eq!(HalfPoint::new(1, 2).sort(), PointSort::MidSide);
    }
}
