//! Woven cubes.
//!
//! A net is six copies of one lattice unit laid out as a cross in the plane
//! of the design and folded onto the cube `[-H, H]³`. Each face carries
//! integer local coordinates `(A, B)`, scaled so that every strand end on a
//! face edge is a lattice point; a face point sits at `H·n + A·e1 + B·e2`.
//!
//! Strands are traced across the folded surface as closed paths of crossing
//! points, and the 24 rotations of the cube are tested against that
//! structure, each allowed one global side reversal.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Design, HalfPoint};
use crate::lattice::{dot, rot, Vec2};
use crate::symmetry::{classify, Classification, Marker, Species, SpeciesReport};

pub type P3 = [i64; 3];

fn add3(a: P3, b: P3) -> P3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale3(k: i64, a: P3) -> P3 {
    [k * a[0], k * a[1], k * a[2]]
}

fn neg3(a: P3) -> P3 {
    scale3(-1, a)
}

fn cross3(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn axis_of(v: P3) -> usize {
    v.iter().position(|&c| c != 0).expect("nonzero axis vector")
}

/// Whether a species can be woven onto an isonemal cube, with the reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeVerdict {
    pub weavable: bool,
    pub reason: String,
}

pub fn cube_weavable(r: &SpeciesReport) -> CubeVerdict {
    let (weavable, reason) = match (r.species, r.corner_marker) {
        (Species::S36_1, _) => (
            false,
            "all quarter-turns carry τ: three of them about a cube corner reverse the colours",
        ),
        (Species::S36s, _) => (
            false,
            "level-2 unit centred at a cell centre: its corners are ■ at cell centres",
        ),
        (_, Marker::Reversing) => (false, "every lattice unit has ■ at its corners"),
        (_, Marker::Plain) => (true, "lattice unit with □ at every corner"),
    };
    CubeVerdict {
        weavable,
        reason: reason.to_string(),
    }
}

/// One face of a folded net.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeFace {
    pub normal: P3,
    pub e1: P3,
    pub e2: P3,
    /// Position in the flat net, in steps of the unit's side vectors.
    pub net_pos: (i64, i64),
    /// Centre of this face's unit in the plane of the design.
    pub net_centre: HalfPoint,
    /// Whether the face shows the reverse of the design.
    pub reversed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeNet {
    pub design: Design,
    pub species: Species,
    /// Side of the face unit.
    pub side: Vec2,
    pub faces: Vec<CubeFace>,
}

/// Side index on a face: 0 is `A = H`, 1 is `B = H`, 2 is `A = -H`, 3 is `B = -H`.
pub type FaceSide = usize;

impl CubeNet {
    fn q(&self) -> i64 {
        (self.side.0 * self.side.1).abs()
    }

    /// Half the cube's edge in local coordinates.
    pub fn half_size(&self) -> i64 {
        self.q() * dot(self.side, self.side)
    }

    /// The face across `side` of face `f`.
    pub fn neighbour(&self, f: usize, side: FaceSide) -> usize {
        let face = &self.faces[f];
        let n = match side {
            0 => face.e1,
            1 => face.e2,
            2 => neg3(face.e1),
            _ => neg3(face.e2),
        };
        self.faces
            .iter()
            .position(|g| g.normal == n)
            .expect("every direction is a face")
    }

    /// The twelve edges as face pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = BTreeSet::new();
        for f in 0..6 {
            for s in 0..4 {
                let g = self.neighbour(f, s);
                out.insert((f.min(g), f.max(g)));
            }
        }
        out.into_iter().collect()
    }

    /// A copy with one face showing the reverse side.
    pub fn with_face_reversed(&self, f: usize) -> CubeNet {
        let mut n = self.clone();
        n.faces[f].reversed = !n.faces[f].reversed;
        n
    }

    fn point3(&self, f: usize, a: i64, b: i64) -> P3 {
        let face = &self.faces[f];
        add3(
            scale3(self.half_size(), face.normal),
            add3(scale3(a, face.e1), scale3(b, face.e2)),
        )
    }

    fn corners(&self, f: usize) -> [HalfPoint; 4] {
        let c = self.faces[f].net_centre;
        let w = self.side;
        let rw = rot(w);
        [
            c.offset(w.0 + rw.0, w.1 + rw.1),
            c.offset(-w.0 + rw.0, -w.1 + rw.1),
            c.offset(-w.0 - rw.0, -w.1 - rw.1),
            c.offset(w.0 - rw.0, w.1 - rw.1),
        ]
    }

    /// The flat net drawn as SVG, with dashed face boundaries.
    pub fn to_svg(&self, cell_size: u32) -> String {
        let cs = cell_size.max(1) as f64;
        let pts: Vec<HalfPoint> = (0..6).flat_map(|f| self.corners(f)).collect();
        let minx = pts.iter().map(|p| p.dx).min().unwrap().div_euclid(2) - 1;
        let maxx = pts.iter().map(|p| p.dx).max().unwrap().div_euclid(2) + 1;
        let miny = pts.iter().map(|p| p.dy).min().unwrap().div_euclid(2) - 1;
        let maxy = pts.iter().map(|p| p.dy).max().unwrap().div_euclid(2) + 1;
        let (wpx, hpx) = ((maxx - minx) as f64 * cs, (maxy - miny) as f64 * cs);
        let px = |p: HalfPoint| {
            (
                (p.dx as f64 / 2.0 - minx as f64) * cs,
                (maxy as f64 - p.dy as f64 / 2.0) * cs,
            )
        };
        let poly = |f: usize| {
            self.corners(f)
                .iter()
                .map(|&p| {
                    let (x, y) = px(p);
                    format!("{x},{y}")
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{wpx}" height="{hpx}" viewBox="0 0 {wpx} {hpx}">"#
        );
        s.push_str("<defs>\n");
        for f in 0..6 {
            let _ = writeln!(s, r#"<clipPath id="face{f}"><polygon points="{}"/></clipPath>"#, poly(f));
        }
        s.push_str("</defs>\n");
        for f in 0..6 {
            let rev = self.faces[f].reversed;
            let _ = writeln!(s, r#"<g clip-path="url(#face{f})">"#);
            let _ = writeln!(s, r##"<polygon points="{}" fill="#f4f0e6"/>"##, poly(f));
            for y in miny..maxy {
                for x in minx..maxx {
                    if self.design.get(x, y) ^ rev {
                        let (rx, ry) = px(HalfPoint::cell_corner(x, y + 1));
                        let _ = writeln!(
                            s,
                            r##"<rect x="{rx}" y="{ry}" width="{cs}" height="{cs}" fill="#2b2b2b"/>"##
                        );
                    }
                }
            }
            s.push_str("</g>\n");
        }
        for f in 0..6 {
            let _ = writeln!(
                s,
                r#"<polygon points="{}" fill="none" stroke="black" stroke-width="2" stroke-dasharray="6,4"/>"#,
                poly(f)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

/// Folds the cross-shaped net of a cube-weavable design.
pub fn cube_net(d: &Design) -> Result<CubeNet> {
    let report = match classify(d)? {
        Classification::Species(r) => r,
        Classification::Rejected(r) => {
            return Err(Error::Precondition(format!("design is not rotational: {r}")))
        }
    };
    cube_net_for(d, &report)
}

/// As [`cube_net`], reusing a classification of `d`.
pub fn cube_net_for(d: &Design, report: &SpeciesReport) -> Result<CubeNet> {
    let verdict = cube_weavable(report);
    if !verdict.weavable {
        return Err(Error::Precondition(format!(
            "species {} cannot make a cube: {}",
            report.species, verdict.reason
        )));
    }
    // The face unit is centred on the report's centre; its corners carry □.
    let w = report.side;
    let rw = rot(w);
    let c = report.centre;
    let n0: P3 = [0, 0, 1];
    let e1: P3 = [1, 0, 0];
    let e2: P3 = [0, 1, 0];
    let frames = [
        ((0, 0), n0, e1, e2),
        ((1, 0), e1, neg3(n0), e2),
        ((0, 1), e2, e1, neg3(n0)),
        ((-1, 0), neg3(e1), n0, e2),
        ((0, -1), neg3(e2), e1, n0),
        ((2, 0), neg3(n0), neg3(e1), e2),
    ];
    let faces = frames
        .into_iter()
        .map(|((i, j), normal, a, b)| {
            debug_assert_eq!(cross3(a, b), normal);
            CubeFace {
                normal,
                e1: a,
                e2: b,
                net_pos: (i, j),
                net_centre: c.offset(2 * (i * w.0 + j * rw.0), 2 * (i * w.1 + j * rw.1)),
                reversed: false,
            }
        })
        .collect();
    Ok(CubeNet {
        design: d.clone(),
        species: report.species,
        side: w,
        faces,
    })
}

/// A straight piece of a strand centre line (or strand boundary) on one face.
#[derive(Clone, Debug)]
struct Segment {
    face: usize,
    vertical: bool,
    offset: i64,
    lo: i64,
    hi: i64,
    a0: i64,
    b0: i64,
    da: i64,
    db: i64,
}

impl Segment {
    fn local(&self, t: i64) -> (i64, i64) {
        (self.a0 + t * self.da, self.b0 + t * self.db)
    }

    /// Doubled plane point at line parameter `t` (in doubled units).
    fn plane(&self, t: i64) -> HalfPoint {
        if self.vertical {
            HalfPoint::new(self.offset, t)
        } else {
            HalfPoint::new(t, self.offset)
        }
    }
}

fn face_segments(net: &CubeNet, f: usize, odd: bool) -> Vec<Segment> {
    let q = net.q();
    let h = net.half_size();
    let c = net.faces[f].net_centre;
    let w = net.side;
    let rw = rot(w);
    let reach = w.0.abs() + w.1.abs();
    let mut out = Vec::new();
    for vertical in [true, false] {
        let (centre_coord, u): (i64, Vec2) = if vertical { (c.dx, (0, 1)) } else { (c.dy, (1, 0)) };
        for offset in centre_coord - 2 * reach..=centre_coord + 2 * reach {
            if (offset.rem_euclid(2) == 1) != odd {
                continue;
            }
            let base = if vertical { (offset, 0) } else { (0, offset) };
            let rel = (base.0 - c.dx, base.1 - c.dy);
            let (a0, b0) = (q * dot(rel, w), q * dot(rel, rw));
            let (da, db) = (dot(u, w), dot(u, rw));
            // Parameter T = q·t keeps every edge crossing integral.
            let range = |x0: i64, dx: i64| {
                let (p, m) = ((h - x0) / dx, (-h - x0) / dx);
                (p.min(m), p.max(m))
            };
            let (l1, h1) = range(a0, da);
            let (l2, h2) = range(b0, db);
            let (lo, hi) = (l1.max(l2), h1.min(h2));
            if lo < hi {
                out.push(Segment {
                    face: f,
                    vertical,
                    offset,
                    lo,
                    hi,
                    a0,
                    b0,
                    da,
                    db,
                });
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    Lo,
    Hi,
}

struct Surface<'a> {
    net: &'a CubeNet,
    segs: Vec<Segment>,
    ends: HashMap<P3, Vec<(usize, End)>>,
}

impl<'a> Surface<'a> {
    fn new(net: &'a CubeNet, odd: bool) -> Self {
        let segs: Vec<Segment> = (0..6).flat_map(|f| face_segments(net, f, odd)).collect();
        let mut ends: HashMap<P3, Vec<(usize, End)>> = HashMap::new();
        for (i, s) in segs.iter().enumerate() {
            for e in [End::Lo, End::Hi] {
                ends.entry(self_point(net, s, e)).or_default().push((i, e));
            }
        }
        Surface { net, segs, ends }
    }

    fn point(&self, i: usize, e: End) -> P3 {
        self_point(self.net, &self.segs[i], e)
    }

    /// Direction of travel leaving segment `i` through end `e`, per unit parameter.
    fn out_dir(&self, i: usize, e: End) -> P3 {
        let s = &self.segs[i];
        let face = &self.net.faces[s.face];
        let d = add3(scale3(s.da, face.e1), scale3(s.db, face.e2));
        match e {
            End::Hi => d,
            End::Lo => neg3(d),
        }
    }

    fn is_vertex(&self, i: usize, e: End) -> bool {
        let s = &self.segs[i];
        let (a, b) = s.local(if e == End::Lo { s.lo } else { s.hi });
        let h = self.net.half_size();
        a.abs() == h && b.abs() == h
    }

    /// The segment end continuing the line straight over the edge.
    fn partner(&self, i: usize, e: End) -> Option<(usize, End)> {
        let p = self.point(i, e);
        let s = &self.segs[i];
        let (a, _) = s.local(if e == End::Lo { s.lo } else { s.hi });
        let face = &self.net.faces[s.face];
        let edge_dir = if a.abs() == self.net.half_size() { face.e2 } else { face.e1 };
        let axis = axis_of(edge_dir);
        let v = self.out_dir(i, e);
        self.ends.get(&p)?.iter().copied().find(|&(j, f)| {
            self.segs[j].face != s.face && self.out_dir(j, f)[axis] == -v[axis]
        })
    }

    fn other(e: End) -> End {
        match e {
            End::Lo => End::Hi,
            End::Hi => End::Lo,
        }
    }
}

fn self_point(net: &CubeNet, s: &Segment, e: End) -> P3 {
    let t = if e == End::Lo { s.lo } else { s.hi };
    let (a, b) = s.local(t);
    net.point3(s.face, a, b)
}

/// Strands and crossings of a folded net.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WovenCube {
    pub crossings: Vec<P3>,
    /// Strand on top and underneath at each crossing.
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
    /// Each strand as the sorted set of crossings it passes.
    pub strands: Vec<Vec<usize>>,
    /// Strands running side by side on some face.
    pub adjacent_pairs: Vec<(usize, usize)>,
}

pub fn weave(net: &CubeNet) -> Result<WovenCube> {
    let surf = Surface::new(net, true);
    let q = net.q();
    let n = surf.segs.len();
    let mut strand_of = vec![usize::MAX; n];
    let mut observations: BTreeMap<P3, Vec<(usize, bool)>> = BTreeMap::new();
    let mut strand_points: Vec<BTreeSet<P3>> = Vec::new();
    for start in 0..n {
        if strand_of[start] != usize::MAX {
            continue;
        }
        let id = strand_points.len();
        let mut pts = BTreeSet::new();
        let (mut cur, mut enter) = (start, End::Lo);
        loop {
            if strand_of[cur] != usize::MAX {
                if cur == start && strand_of[cur] == id {
                    break;
                }
                return Err(Error::InconsistentPlacement(
                    "strands merge on the cube surface".into(),
                ));
            }
            strand_of[cur] = id;
            let s = &surf.segs[cur];
            let face = &net.faces[s.face];
            let first = s.lo.div_euclid(q) + i64::from(s.lo.rem_euclid(q) != 0);
            for t in first..=s.hi.div_euclid(q) {
                if t.rem_euclid(2) != 1 {
                    continue;
                }
                let (a, b) = s.local(q * t);
                let p3 = net.point3(s.face, a, b);
                let cell = s.plane(t).as_cell().expect("strand lines meet at cell centres");
                let warp_over = net.design.get(cell.0, cell.1) ^ face.reversed;
                observations.entry(p3).or_default().push((id, warp_over == s.vertical));
                pts.insert(p3);
            }
            let exit = Surface::other(enter);
            let (next, e) = surf.partner(cur, exit).ok_or_else(|| {
                Error::InconsistentPlacement(format!(
                    "strand leaves face {} with no continuation",
                    s.face
                ))
            })?;
            cur = next;
            enter = e;
            if cur == start {
                if enter != End::Lo {
                    return Err(Error::InconsistentPlacement(
                        "strand returns reversed".into(),
                    ));
                }
                break;
            }
        }
        strand_points.push(pts);
    }

    let crossings: Vec<P3> = observations.keys().copied().collect();
    let index: HashMap<P3, usize> = crossings.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut top = Vec::with_capacity(crossings.len());
    let mut bottom = Vec::with_capacity(crossings.len());
    for (p, obs) in &observations {
        let tops: BTreeSet<usize> = obs.iter().filter(|o| o.1).map(|o| o.0).collect();
        let bottoms: BTreeSet<usize> = obs.iter().filter(|o| !o.1).map(|o| o.0).collect();
        if tops.len() != 1 || bottoms.len() != 1 {
            return Err(Error::InconsistentPlacement(format!(
                "faces disagree about the crossing at {p:?}"
            )));
        }
        top.push(*tops.iter().next().unwrap());
        bottom.push(*bottoms.iter().next().unwrap());
    }
    let strands = strand_points
        .iter()
        .map(|pts| pts.iter().map(|p| index[p]).collect())
        .collect();

    let mut by_line: BTreeMap<(usize, bool, i64), usize> = BTreeMap::new();
    for (i, s) in surf.segs.iter().enumerate() {
        by_line.insert((s.face, s.vertical, s.offset), strand_of[i]);
    }
    let mut pairs = BTreeSet::new();
    for (&(f, v, off), &s) in &by_line {
        if let Some(&s2) = by_line.get(&(f, v, off + 2)) {
            if s != s2 {
                pairs.insert((s.min(s2), s.max(s2)));
            }
        }
    }
    Ok(WovenCube {
        crossings,
        top,
        bottom,
        strands,
        adjacent_pairs: pairs.into_iter().collect(),
    })
}

/// The 24 rotations of the cube as signed permutation matrices (rows).
pub fn cube_rotations() -> Vec<[P3; 3]> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::new();
    for p in perms {
        for signs in 0..8 {
            let mut m = [[0i64; 3]; 3];
            for (r, &col) in p.iter().enumerate() {
                m[r][col] = if signs >> r & 1 == 1 { -1 } else { 1 };
            }
            let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            if det == 1 {
                out.push(m);
            }
        }
    }
    out
}

fn apply_rot(m: &[P3; 3], p: P3) -> P3 {
    [
        m[0][0] * p[0] + m[0][1] * p[1] + m[0][2] * p[2],
        m[1][0] * p[0] + m[1][1] * p[1] + m[1][2] * p[2],
        m[2][0] * p[0] + m[2][1] * p[1] + m[2][2] * p[2],
    ]
}

/// A rotation of the cube preserving the weave, possibly with side reversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeSymmetry {
    pub rotation: [P3; 3],
    pub tau: bool,
    /// Image of each strand.
    pub perm: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeCheck {
    pub strand_count: usize,
    pub symmetries: Vec<CubeSymmetry>,
    /// For each strand, a symmetry carrying strand 0 onto it.
    pub orbit_witness: Vec<Option<usize>>,
    pub transitive: bool,
    pub adjacent_pairs_swapped: bool,
}

impl CubeCheck {
    pub fn is_isonemal(&self) -> bool {
        self.transitive && self.adjacent_pairs_swapped
    }
}

pub fn symmetries_of(cube: &WovenCube) -> Vec<CubeSymmetry> {
    let index: HashMap<P3, usize> = cube.crossings.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let by_set: HashMap<&Vec<usize>, usize> =
        cube.strands.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut out = Vec::new();
    'rot: for m in cube_rotations() {
        let mut cmap = Vec::with_capacity(cube.crossings.len());
        for &p in &cube.crossings {
            match index.get(&apply_rot(&m, p)) {
                Some(&j) => cmap.push(j),
                None => continue 'rot,
            }
        }
        let mut perm = Vec::with_capacity(cube.strands.len());
        for s in &cube.strands {
            let mut img: Vec<usize> = s.iter().map(|&c| cmap[c]).collect();
            img.sort_unstable();
            match by_set.get(&img) {
                Some(&j) => perm.push(j),
                None => continue 'rot,
            }
        }
        for tau in [false, true] {
            let ok = (0..cube.crossings.len()).all(|c| {
                let (t, b) = (perm[cube.top[c]], perm[cube.bottom[c]]);
                let (t2, b2) = (cube.top[cmap[c]], cube.bottom[cmap[c]]);
                if tau {
                    t == b2 && b == t2
                } else {
                    t == t2 && b == b2
                }
            });
            if ok {
                out.push(CubeSymmetry {
                    rotation: m,
                    tau,
                    perm: perm.clone(),
                });
                break;
            }
        }
    }
    out
}

pub fn check_cube(net: &CubeNet) -> Result<CubeCheck> {
    let cube = weave(net)?;
    let symmetries = symmetries_of(&cube);
    let n = cube.strands.len();
    let mut orbit_witness = vec![None; n];
    for (k, s) in symmetries.iter().enumerate() {
        let img = s.perm[0];
        orbit_witness[img].get_or_insert(k);
    }
    let transitive = orbit_witness.iter().all(Option::is_some);
    let adjacent_pairs_swapped = cube.adjacent_pairs.iter().all(|&(a, b)| {
        symmetries.iter().any(|s| s.perm[a] == b && s.perm[b] == a)
    });
    Ok(CubeCheck {
        strand_count: n,
        symmetries,
        orbit_witness,
        transitive,
        adjacent_pairs_swapped,
    })
}

/// Whether the folded net is transitive on its strands.
pub fn verify_cube_isonemal(net: &CubeNet) -> bool {
    check_cube(net).map(|c| c.is_isonemal()).unwrap_or(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurfacePoint {
    FaceCentre,
    EdgeMidpoint,
    Vertex,
    Other,
}

/// A strand boundary running from one cube vertex to another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryPath {
    pub from: P3,
    pub to: P3,
    pub faces_crossed: usize,
    /// Midpoint in doubled coordinates.
    pub midpoint2: P3,
    pub midpoint_kind: SurfacePoint,
}

fn classify_point2(net: &CubeNet, p2: P3) -> SurfacePoint {
    let h2 = 2 * net.half_size();
    let full = p2.iter().filter(|c| c.abs() == h2).count();
    let zero = p2.iter().filter(|&&c| c == 0).count();
    match (full, zero) {
        (1, 2) => SurfacePoint::FaceCentre,
        (2, 1) => SurfacePoint::EdgeMidpoint,
        (3, 0) => SurfacePoint::Vertex,
        _ => SurfacePoint::Other,
    }
}

/// Every strand boundary that starts and ends at cube vertices.
pub fn boundary_paths(net: &CubeNet) -> Result<Vec<BoundaryPath>> {
    let surf = Surface::new(net, false);
    let mut done = BTreeSet::new();
    let mut out = Vec::new();
    for i in 0..surf.segs.len() {
        for e in [End::Lo, End::Hi] {
            if !surf.is_vertex(i, e) || done.contains(&(i, e == End::Lo)) {
                continue;
            }
            // Walk from the vertex through the segments.
            let mut pieces = Vec::new();
            let (mut cur, mut enter) = (i, e);
            loop {
                let exit = Surface::other(enter);
                pieces.push((cur, enter));
                if surf.is_vertex(cur, exit) || pieces.len() > surf.segs.len() {
                    break;
                }
                let (next, ne) = surf.partner(cur, exit).ok_or_else(|| {
                    Error::InconsistentPlacement("strand boundary with no continuation".into())
                })?;
                cur = next;
                enter = ne;
            }
            let (last, last_enter) = *pieces.last().unwrap();
            let last_exit = Surface::other(last_enter);
            done.insert((i, e == End::Lo));
            done.insert((last, last_exit == End::Lo));
            let total: i64 = pieces.iter().map(|&(s, _)| surf.segs[s].hi - surf.segs[s].lo).sum();
            let mut walked = 0;
            let mut mid = None;
            for &(s, en) in &pieces {
                let len = surf.segs[s].hi - surf.segs[s].lo;
                if 2 * (walked + len) >= total {
                    let start = surf.point(s, en);
                    let dir = surf.out_dir(s, Surface::other(en));
                    mid = Some(add3(scale3(2, start), scale3(total - 2 * walked, dir)));
                    break;
                }
                walked += len;
            }
            let midpoint2 = mid.expect("path has positive length");
            out.push(BoundaryPath {
                from: surf.point(i, e),
                to: surf.point(last, last_exit),
                faces_crossed: pieces.len(),
                midpoint2,
                midpoint_kind: classify_point2(net, midpoint2),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_four_rotations() {
        let r = cube_rotations();
        assert_eq!(r.len(), 24);
        let set: BTreeSet<_> = r.iter().collect();
        assert_eq!(set.len(), 24);
    }

    fn design_39() -> Design {
        crate::io::parse_design(
            "T=10\n0100010111\n1110100010\n0101110100\n1000101110\n1101000101\n\
             1011101000\n0001011101\n1010001011\n0111010001\n0010111010\n",
        )
        .unwrap()
    }

    #[test]
    fn net_has_cube_adjacency() {
        let net = cube_net(&design_39()).unwrap();
        assert_eq!(net.edges().len(), 12);
        for f in 0..6 {
            let ns: BTreeSet<usize> = (0..4).map(|s| net.neighbour(f, s)).collect();
            assert_eq!(ns.len(), 4);
            assert!(!ns.contains(&f));
        }
    }

    #[test]
    fn species_39_cube_is_isonemal() {
        let net = cube_net(&design_39()).unwrap();
        let c = check_cube(&net).unwrap();
        assert_eq!(c.symmetries.len(), 24);
        assert!(c.is_isonemal(), "{c:?}");
    }

    #[test]
    fn satin_has_no_cube() {
        let d = Design::from_fn(5, |x, y| y == (3 * x) % 5);
        assert!(matches!(cube_net(&d), Err(Error::Precondition(_))));
    }

    #[test]
    fn reversed_face_breaks_it() {
        let net = cube_net(&design_39()).unwrap().with_face_reversed(2);
        assert!(!verify_cube_isonemal(&net));
    }
}
