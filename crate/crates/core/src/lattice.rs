//! Integer arithmetic of oblique square lattice units.
//!
//! A level-1 unit is the square on the hypotenuse of a right triangle whose
//! legs `(M, N)` are of opposite parity and coprime. Each higher level
//! escribes the one below and doubles the area:
//!
//! | level | legs               | side vector (standard handedness) |
//! |-------|--------------------|-----------------------------------|
//! | 1     | `(M, N)`           | `(M, N)`                          |
//! | 2     | `(M+N, M-N)`       | `(M-N, M+N)`                      |
//! | 3     | `(2M, 2N)`         | `(2M, 2N)`                        |
//! | 4     | `(2(M+N), 2(M-N))` | `(2(M-N), 2(M+N))`                |
//! | 5     | `(4M, 4N)`         | `(4M, 4N)`                        |

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vec2 = (i64, i64);

/// Anticlockwise quarter-turn of a vector.
#[inline]
pub fn rot(v: Vec2) -> Vec2 {
    (-v.1, v.0)
}

#[inline]
pub fn dot(u: Vec2, v: Vec2) -> i64 {
    u.0 * v.0 + u.1 * v.1
}

/// The rotation of `v` lying in the quadrant `x > 0, y >= 0`.
pub fn first_quadrant(v: Vec2) -> Vec2 {
    let mut w = v;
    for _ in 0..4 {
        if w.0 > 0 && w.1 >= 0 {
            return w;
        }
        w = rot(w);
    }
    w
}

/// Where the centre of a unit (or its corners) sits in the cell grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CentreSort {
    CellCentre,
    CellCorner,
}

impl CentreSort {
    pub fn opposite(self) -> CentreSort {
        match self {
            CentreSort::CellCentre => CentreSort::CellCorner,
            CentreSort::CellCorner => CentreSort::CellCentre,
        }
    }
}

/// An oblique square lattice unit, stored with normalized handedness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeUnit {
    /// Legs at this unit's own level, `m > n >= 1`.
    pub m: i64,
    pub n: i64,
    pub level: u8,
    pub centre_sort: CentreSort,
    /// Legs of the level-1 unit the stack is based on.
    pub base_m: i64,
    pub base_n: i64,
    /// Set when the unit was the mirror image of the standard orientation.
    pub reflected: bool,
}

fn legs_at_level(m: i64, n: i64, level: u8) -> Vec2 {
    match level {
        1 => (m, n),
        2 => (m + n, m - n),
        3 => (2 * m, 2 * n),
        4 => (2 * (m + n), 2 * (m - n)),
        5 => (4 * m, 4 * n),
        _ => unreachable!("levels above 5 are never constructed"),
    }
}

/// Whether `(m, n)` is a valid level-1 seed: `m > n >= 1`, opposite parity, coprime.
pub fn is_level1_seed(m: i64, n: i64) -> bool {
    m > n && n >= 1 && (m + n) % 2 == 1 && m.gcd(&n) == 1
}

impl LatticeUnit {
    /// The level-1 unit with legs `(m, n)`.
    pub fn level1(m: i64, n: i64, centre_sort: CentreSort) -> Result<Self> {
        if !is_level1_seed(m, n) {
            return Err(Error::InvalidSeed(m, n));
        }
        Ok(LatticeUnit {
            m,
            n,
            level: 1,
            centre_sort,
            base_m: m,
            base_n: n,
            reflected: false,
        })
    }

    /// Base seed with the given level; `m`, `n` follow the escription chain.
    pub fn at_level(base_m: i64, base_n: i64, level: u8, centre_sort: CentreSort) -> Result<Self> {
        if !(1..=5).contains(&level) {
            return Err(Error::LevelTooHigh(level));
        }
        let mut u = LatticeUnit::level1(base_m, base_n, centre_sort)?;
        let (m, n) = legs_at_level(base_m, base_n, level);
        u.m = m;
        u.n = n;
        u.level = level;
        Ok(u)
    }

    pub fn area(&self) -> i64 {
        self.m * self.m + self.n * self.n
    }

    pub fn base_area(&self) -> i64 {
        self.base_m * self.base_m + self.base_n * self.base_n
    }

    /// Sort of the unit's corners.
    pub fn corner_sort(&self) -> CentreSort {
        if self.level == 1 {
            self.centre_sort.opposite()
        } else {
            self.centre_sort
        }
    }

    /// Whether a group with this lattice unit can act isonemally.
    pub fn isonemal_capable(&self) -> bool {
        if self.base_m.gcd(&self.base_n) != 1 {
            return false;
        }
        match self.level {
            1 | 2 => true,
            3 | 4 => self.centre_sort == CentreSort::CellCorner,
            _ => false,
        }
    }

    /// One side of the unit as a translation vector in design coordinates.
    pub fn side_vector(&self) -> Vec2 {
        let (m, n) = (self.base_m, self.base_n);
        let v = match self.level {
            1 => (m, n),
            2 => (m - n, m + n),
            3 => (2 * m, 2 * n),
            4 => (2 * (m - n), 2 * (m + n)),
            _ => (4 * m, 4 * n),
        };
        if self.reflected {
            (v.1, v.0)
        } else {
            v
        }
    }
}

/// Classifies the square with side `v` whose corners have sort `corner_sort`.
///
/// Returns the unit's level and the level-1 seed it rests on. Units of level
/// 5 or more are returned but are not isonemal-capable.
pub fn classify_square(v: Vec2, corner_sort: CentreSort) -> Result<LatticeUnit> {
    let (a, b) = v;
    if a == 0 && b == 0 {
        return Err(Error::ZeroVector);
    }
    if a == 0 || b == 0 || a.abs() == b.abs() {
        return Err(Error::ForbiddenLine(a, b));
    }
    let mut cur = v;
    let mut level: u32 = 1;
    loop {
        let (x, y) = cur;
        if x % 2 == 0 && y % 2 == 0 {
            cur = (x / 2, y / 2);
            level += 2;
        } else if x.rem_euclid(2) == 1 && y.rem_euclid(2) == 1 {
            // Inscribed unit: (I - R) w / 2.
            cur = ((x + y) / 2, (y - x) / 2);
            level += 1;
        } else {
            break;
        }
    }
    let q = first_quadrant(cur);
    let (m, n, reflected) = if q.0 > q.1 {
        (q.0, q.1, false)
    } else {
        (q.1, q.0, true)
    };
    if m.gcd(&n) != 1 {
        return Err(Error::CommonFactor { m, n, g: m.gcd(&n) });
    }
    let centre_sort = if level == 1 {
        corner_sort.opposite()
    } else {
        corner_sort
    };
    let level_u8 = u8::try_from(level).unwrap_or(u8::MAX);
    let (lm, ln) = if level <= 5 {
        legs_at_level(m, n, level_u8)
    } else {
        first_quadrant_sorted(v)
    };
    Ok(LatticeUnit {
        m: lm,
        n: ln,
        level: level_u8,
        centre_sort,
        base_m: m,
        base_n: n,
        reflected,
    })
}

fn first_quadrant_sorted(v: Vec2) -> Vec2 {
    let q = first_quadrant(v);
    (q.0.max(q.1), q.0.min(q.1))
}

/// The escribing unit one level up. The centre is shared, so the centre sort
/// is kept.
pub fn escribe(u: &LatticeUnit) -> Result<LatticeUnit> {
    if u.level >= 5 {
        return Err(Error::LevelTooHigh(u.level));
    }
    let level = u.level + 1;
    let (m, n) = legs_at_level(u.base_m, u.base_n, level);
    Ok(LatticeUnit { m, n, level, ..*u })
}

/// The inscribed unit one level down.
pub fn inscribe(u: &LatticeUnit) -> Result<LatticeUnit> {
    if u.level <= 1 {
        return Err(Error::LevelTooLow);
    }
    let level = u.level - 1;
    let (m, n) = legs_at_level(u.base_m, u.base_n, level);
    Ok(LatticeUnit { m, n, level, ..*u })
}

/// All admissible level-1 units with area at most `max_area`, sorted by `(area, M)`.
pub fn level1_units_up_to(max_area: i64) -> Vec<(i64, i64, i64)> {
    table_rows(max_area)
        .into_iter()
        .filter(|r| r.admissible)
        .map(|r| (r.m, r.n, r.area))
        .collect()
}

/// One candidate level-1 unit (coprime or not) of the sums-of-squares array.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub area: i64,
    pub m: i64,
    pub n: i64,
    pub admissible: bool,
    pub reason: String,
}

/// Every opposite-parity pair `M > N >= 1` with `M² + N² <= max_area`.
pub fn table_rows(max_area: i64) -> Vec<TableRow> {
    let mut rows = Vec::new();
    let mut m = 2;
    while m * m < max_area {
        for n in 1..m {
            let area = m * m + n * n;
            if area > max_area || (m + n) % 2 == 0 {
                continue;
            }
            let g = m.gcd(&n);
            rows.push(TableRow {
                area,
                m,
                n,
                admissible: g == 1,
                reason: if g == 1 {
                    String::new()
                } else {
                    format!("common factor {g}")
                },
            });
        }
        m += 1;
    }
    rows.sort_by_key(|r| (r.area, r.m));
    rows
}

/// TSV listing: `area, M, N, admissible (Y/N), reject-reason`.
pub fn table_tsv(max_area: i64) -> String {
    let mut out = String::from("area\tM\tN\tadmissible\treason\n");
    for r in table_rows(max_area) {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            r.area,
            r.m,
            r.n,
            if r.admissible { "Y" } else { "N" },
            r.reason
        ));
    }
    out
}

/// Legs `(M, N)` at position `(i, j)` (1-based, `i <= j`) of the triangular
/// array of odd sums of squares.
pub fn array_position(i: i64, j: i64) -> Vec2 {
    (i + j, j - i + 1)
}

/// `(m, n)` with `m·M + n·N = 1`, when `M` and `N` are coprime.
pub fn coprime_witness(m: i64, n: i64) -> Option<(i64, i64)> {
    let e = m.extended_gcd(&n);
    (e.gcd == 1).then_some((e.x, e.y))
}

/// An order split as `f · 2^p` with its coprime sum-of-squares representations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderDecomposition {
    pub order: i64,
    pub f: i64,
    pub p: u32,
    /// Pairs `a > b >= 1`, coprime, `a² + b² = f`, sorted by decreasing `a`.
    pub reps: Vec<Vec2>,
}

impl OrderDecomposition {
    /// Whether designs with quarter-turn symmetry exist at this order.
    pub fn admits_rotational_designs(&self) -> bool {
        self.order > 4 && self.p <= 2 && !self.reps.is_empty()
    }
}

pub fn decompose_order(n: i64) -> OrderDecomposition {
    assert!(n >= 1, "order must be positive");
    let p = n.trailing_zeros();
    let f = n >> p;
    let mut reps = Vec::new();
    let mut a = 1;
    while a * a < f {
        let rest = f - a * a;
        let b = rest.sqrt();
        if b * b == rest && a > b && b >= 1 && a.gcd(&b) == 1 {
            reps.push((a, b));
        }
        a += 1;
    }
    reps.sort_by_key(|r| std::cmp::Reverse(r.0));
    OrderDecomposition {
        order: n,
        f,
        p,
        reps,
    }
}

/// A full-rank sublattice of `Z²` in Hermite normal form: basis `(a, y0)`, `(0, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice {
    a: i64,
    y0: i64,
    c: i64,
}

impl Lattice {
    pub fn from_generators(gens: &[Vec2]) -> Result<Self> {
        let (mut a, mut y0, mut c) = (0i64, 0i64, 0i64);
        for &(x, y) in gens {
            if x == 0 && a == 0 {
                c = c.gcd(&y);
                continue;
            }
            let e = a.extended_gcd(&x);
            let g = e.gcd;
            let new_y0 = e.x * y0 + e.y * y;
            let rest = (x / g) * y0 - (a / g) * y;
            a = g;
            y0 = new_y0;
            c = c.gcd(&rest);
            if c != 0 {
                y0 = y0.rem_euclid(c);
            }
        }
        if a == 0 || c == 0 {
            return Err(Error::DegenerateLattice);
        }
        if a < 0 {
            a = -a;
            y0 = -y0;
        }
        Ok(Lattice {
            a,
            y0: y0.rem_euclid(c),
            c: c.abs(),
        })
    }

    pub fn square(side: Vec2) -> Result<Self> {
        Lattice::from_generators(&[side, rot(side)])
    }

    pub fn contains(&self, v: Vec2) -> bool {
        if v.0 % self.a != 0 {
            return false;
        }
        let k = v.0 / self.a;
        (v.1 - k * self.y0) % self.c == 0
    }

    /// Area of a fundamental cell.
    pub fn det(&self) -> i64 {
        self.a * self.c
    }

    pub fn hnf_basis(&self) -> [Vec2; 2] {
        [(self.a, self.y0), (0, self.c)]
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.hnf_basis().iter().all(|&v| other.contains(v))
    }

    pub fn scaled(&self, k: i64) -> Lattice {
        Lattice {
            a: self.a * k,
            y0: self.y0 * k,
            c: self.c * k,
        }
    }

    /// Canonical representative of `p` modulo the lattice: `0 <= x < a`, `0 <= y < c`.
    pub fn reduce(&self, p: Vec2) -> Vec2 {
        let k = p.0.div_euclid(self.a);
        let x = p.0 - k * self.a;
        let y = (p.1 - k * self.y0).rem_euclid(self.c);
        (x, y)
    }

    /// Lagrange–Gauss reduced basis; the first vector is a shortest one.
    pub fn reduced_basis(&self) -> [Vec2; 2] {
        let mut b1 = (self.a, self.y0);
        let mut b2 = (0, self.c);
        loop {
            if dot(b2, b2) < dot(b1, b1) {
                std::mem::swap(&mut b1, &mut b2);
            }
            let n = dot(b1, b1);
            let mu = div_round(dot(b1, b2), n);
            if mu == 0 {
                break;
            }
            b2 = (b2.0 - mu * b1.0, b2.1 - mu * b1.1);
        }
        [b1, b2]
    }

    /// For a square lattice, the side vector in the first quadrant.
    pub fn square_side(&self) -> Option<Vec2> {
        let [b1, _] = self.reduced_basis();
        let w = first_quadrant(b1);
        (dot(w, w) == self.det() && self.contains(rot(w))).then_some(w)
    }

    /// Smallest `s > 0` with `(s, 0)` in the lattice.
    pub fn axis_period(&self) -> i64 {
        // (s, 0) = k (a, y0) + j (0, c) with k a = s: need c | k y0.
        let k = self.c / self.c.gcd(&self.y0);
        k * self.a
    }
}

fn div_round(num: i64, den: i64) -> i64 {
    // Nearest integer to num / den, den > 0.
    (2 * num + den).div_euclid(2 * den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level1_table_small() {
        assert_eq!(
            level1_units_up_to(17),
            vec![(2, 1, 5), (3, 2, 13), (4, 1, 17)]
        );
        let units = level1_units_up_to(130);
        assert!(!units.iter().any(|&(m, n, _)| (m, n) == (6, 3)));
        assert!(!units.iter().any(|&(m, n, _)| (m, n) == (10, 5)));
        assert!(units.iter().any(|&(m, n, a)| (m, n, a) == (11, 2, 125)));
    }

    #[test]
    fn table_reasons() {
        let rows = table_rows(45);
        let r = rows.iter().find(|r| (r.m, r.n) == (6, 3)).unwrap();
        assert!(!r.admissible);
        assert_eq!(r.reason, "common factor 3");
        let tsv = table_tsv(13);
        assert_eq!(tsv, "area\tM\tN\tadmissible\treason\n5\t2\t1\tY\t\n13\t3\t2\tY\t\n");
    }

    #[test]
    fn classify_square_examples() {
        let u = classify_square((2, 1), CentreSort::CellCorner).unwrap();
        assert_eq!((u.level, u.base_m, u.base_n), (1, 2, 1));
        assert_eq!(u.centre_sort, CentreSort::CellCentre);
        assert!(!u.reflected);

        let u = classify_square((3, 1), CentreSort::CellCorner).unwrap();
        assert_eq!((u.level, u.base_m, u.base_n), (2, 2, 1));
        assert_eq!((u.m, u.n), (3, 1));

        assert!(matches!(
            classify_square((2, 2), CentreSort::CellCorner),
            Err(Error::ForbiddenLine(2, 2))
        ));

        let u = classify_square((8, 4), CentreSort::CellCorner).unwrap();
        assert_eq!((u.level, u.base_m, u.base_n), (5, 2, 1));
        assert!(!u.isonemal_capable());

        assert!(matches!(
            classify_square((6, 3), CentreSort::CellCorner),
            Err(Error::CommonFactor { g: 3, .. })
        ));
        assert!(matches!(
            classify_square((0, 0), CentreSort::CellCorner),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn escription_chain() {
        let u = LatticeUnit::level1(2, 1, CentreSort::CellCorner).unwrap();
        let u2 = escribe(&u).unwrap();
        assert_eq!((u2.m, u2.n, u2.level), (3, 1, 2));
        let u3 = escribe(&u2).unwrap();
        assert_eq!((u3.m, u3.n, u3.level), (4, 2, 3));
        let u5 = escribe(&escribe(&u3).unwrap()).unwrap();
        assert_eq!((u5.m, u5.n, u5.level), (8, 4, 5));
        assert!(matches!(escribe(&u5), Err(Error::LevelTooHigh(5))));
        assert!(matches!(inscribe(&u), Err(Error::LevelTooLow)));
        // Areas double at every step.
        assert_eq!(u2.area(), 2 * u.area());
        assert_eq!(u5.area(), 16 * u.area());
    }

    #[test]
    fn centre_sort_rules() {
        let u = LatticeUnit::at_level(2, 1, 3, CentreSort::CellCentre).unwrap();
        assert!(!u.isonemal_capable());
        let u = LatticeUnit::at_level(2, 1, 4, CentreSort::CellCorner).unwrap();
        assert!(u.isonemal_capable());
        let u = LatticeUnit::at_level(2, 1, 2, CentreSort::CellCentre).unwrap();
        assert!(u.isonemal_capable());
        assert_eq!(u.corner_sort(), CentreSort::CellCentre);
        let u = LatticeUnit::level1(2, 1, CentreSort::CellCentre).unwrap();
        assert_eq!(u.corner_sort(), CentreSort::CellCorner);
    }

    #[test]
    fn witnesses() {
        let (m, n) = coprime_witness(2, 1).unwrap();
        assert_eq!(2 * m + n, 1);
        assert_eq!(coprime_witness(6, 3), None);
        let (m, n) = coprime_witness(11, 2).unwrap();
        assert_eq!(11 * m + 2 * n, 1);
    }

    #[test]
    fn order_decompositions() {
        let d = decompose_order(40);
        assert_eq!((d.f, d.p), (5, 3));
        assert!(!d.admits_rotational_designs());

        let d = decompose_order(20);
        assert_eq!((d.f, d.p, d.reps.clone()), (5, 2, vec![(2, 1)]));
        assert!(d.admits_rotational_designs());

        let d = decompose_order(15);
        assert!(d.reps.is_empty());
        assert!(!d.admits_rotational_designs());

        let d = decompose_order(65);
        assert_eq!(d.reps, vec![(8, 1), (7, 4)]);

        // 49 = 49 + 0 is not oblique.
        assert!(decompose_order(49).reps.is_empty());
        assert!(!decompose_order(4).admits_rotational_designs());
    }

    #[test]
    fn hnf_lattice_basics() {
        let l = Lattice::square((2, 1)).unwrap();
        assert_eq!(l.det(), 5);
        assert!(l.contains((5, 0)));
        assert!(l.contains((-1, 2)));
        assert!(!l.contains((1, 0)));
        assert_eq!(l.axis_period(), 5);
        assert_eq!(l.square_side(), Some((2, 1)));

        let l3 = Lattice::square((4, 2)).unwrap();
        assert_eq!(l3.axis_period(), 10);
        let l4 = Lattice::square((2, 6)).unwrap();
        assert_eq!(l4.axis_period(), 20);
        assert_eq!(l4.square_side(), Some((2, 6)));
        assert!(l4.is_sublattice_of(&Lattice::square((1, 3)).unwrap()));

        let torus = Lattice::from_generators(&[(3, 0), (0, 3)]).unwrap();
        assert_eq!(torus.reduce((7, -1)), (1, 2));
    }
}
