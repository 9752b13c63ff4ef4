//! Symmetry groups built from a level-1 seed, their cell orbits, exhaustive
//! enumeration of designs, and the falling-apart test.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::grid::{AffineMap, Design, HalfPoint, Isometry, Linear};
use crate::lattice::{decompose_order, is_level1_seed, rot, Lattice, LatticeUnit, Vec2};
use crate::symmetry::{classify_surveyed, max_side, survey, Marker, Species, Strand};

/// Quarter-turn markers at a unit's centre and corners, and the τ flag of
/// its mid-side half-turns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Placement {
    pub centre: Marker,
    pub corner: Marker,
    pub mid_side_tau: bool,
}

/// A constructed symmetry group of one species.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub species: Species,
    pub seed: Vec2,
    pub unit: LatticeUnit,
    pub torus_side: usize,
    /// Side of the G₁ unit.
    pub side: Vec2,
    pub centre: HalfPoint,
    pub corner: HalfPoint,
    pub placement: Placement,
    pub generators: Vec<Isometry>,
    /// All translations of the group.
    pub translations: Lattice,
    /// Translations without τ.
    pub plain_translations: Lattice,
}

impl GroupSpec {
    pub fn generator_maps(&self) -> Vec<AffineMap> {
        self.generators
            .iter()
            .map(|g| g.to_affine().expect("generators are valid"))
            .collect()
    }
}

pub fn build_group(species: Species, seed: Vec2) -> Result<GroupSpec> {
    build_group_handed(species, seed, false)
}

/// As [`build_group`]; `reflected` builds the mirror-image group.
pub fn build_group_handed(species: Species, seed: Vec2, reflected: bool) -> Result<GroupSpec> {
    let (m, n) = seed;
    if !is_level1_seed(m, n) {
        return Err(Error::InvalidSeed(m, n));
    }
    let mut unit = LatticeUnit::at_level(m, n, species.level(), species.centre_sort())?;
    unit.reflected = reflected;
    let w = unit.side_vector();
    let rw = rot(w);
    let centre = match species.centre_sort() {
        crate::lattice::CentreSort::CellCentre => HalfPoint::cell_centre(0, 0),
        crate::lattice::CentreSort::CellCorner => HalfPoint::cell_corner(0, 0),
    };
    let corner = centre.offset(w.0 + rw.0, w.1 + rw.1);
    let (cm, km) = species.markers();
    let mid_tau = cm.tau() ^ km.tau();
    let placement = Placement {
        centre: cm,
        corner: km,
        mid_side_tau: mid_tau,
    };
    let translations = Lattice::square(w)?;
    let plain_translations = if mid_tau {
        Lattice::from_generators(&[(w.0 + rw.0, w.1 + rw.1), (w.0 - rw.0, w.1 - rw.1)])?
    } else {
        translations
    };
    let side = plain_translations.axis_period() as usize;
    let max = max_side();
    if side > max {
        return Err(Error::TorusTooLarge { side, max });
    }
    let generators = vec![
        Isometry::translation(w.0, w.1, mid_tau),
        Isometry::translation(rw.0, rw.1, mid_tau),
        Isometry::quarter_turn(centre, 1, cm.tau()),
        Isometry::half_turn(centre.offset(w.0, w.1), mid_tau),
    ];
    Ok(GroupSpec {
        species,
        seed,
        unit,
        torus_side: side,
        side: w,
        centre,
        corner,
        placement,
        generators,
        translations,
        plain_translations,
    })
}

/// Cells of the torus grouped into orbits, each with a colour parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    pub side: usize,
    /// Orbit index per cell, row-major by `y`; indices are dense and ordered
    /// by first cell.
    pub orbit: Vec<usize>,
    /// Whether a cell's colour is flipped relative to its orbit's colour.
    pub parity: Vec<bool>,
    pub count: usize,
    pub contradiction: bool,
}

impl OrbitPartition {
    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.count];
        for &o in &self.orbit {
            s[o] += 1;
        }
        s
    }

    /// The design with orbit `i` coloured by bit `i` of `bits`.
    pub fn colour(&self, bits: u64) -> Design {
        let t = self.side;
        Design::from_fn(t, |x, y| {
            let c = y * t + x;
            ((bits >> self.orbit[c]) & 1 == 1) ^ self.parity[c]
        })
    }
}

struct ParityUnionFind {
    parent: Vec<usize>,
    // Parity relative to parent.
    rel: Vec<bool>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            rel: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // Walk back down, pointing every node at the root.
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.rel[node];
            self.rel[node] = acc;
            self.parent[node] = root;
        }
        (root, if path.is_empty() { false } else { self.rel[x] })
    }

    /// Records `colour(a) XOR colour(b) = flip`; returns false on conflict.
    fn union(&mut self, a: usize, b: usize, flip: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == flip;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        self.rel[hi] = pa ^ pb ^ flip;
        true
    }
}

pub fn cell_orbits(g: &GroupSpec) -> OrbitPartition {
    orbits_under(g.torus_side, &g.generator_maps())
}

/// Orbit partition of the `side × side` torus under the group generated by `maps`.
pub fn orbits_under(side: usize, maps: &[AffineMap]) -> OrbitPartition {
    let t = side;
    let n = t * t;
    let mut uf = ParityUnionFind::new(n);
    let mut contradiction = false;
    for m in maps {
        let red = m.reduced(t);
        let flip = m.complements();
        for y in 0..t {
            for x in 0..t {
                let (u, v) = red.map_cell(x as i64, y as i64);
                let j = v.rem_euclid(t as i64) as usize * t + u.rem_euclid(t as i64) as usize;
                if !uf.union(y * t + x, j, flip) {
                    contradiction = true;
                }
            }
        }
    }
    let mut ids = vec![usize::MAX; n];
    let mut orbit = vec![0; n];
    let mut parity = vec![false; n];
    let mut count = 0;
    for c in 0..n {
        let (r, p) = uf.find(c);
        if ids[r] == usize::MAX {
            ids[r] = count;
            count += 1;
        }
        orbit[c] = ids[r];
        parity[c] = p;
    }
    // Make each orbit's first cell the parity reference.
    let mut base = vec![None; count];
    for c in 0..n {
        let b = *base[orbit[c]].get_or_insert(parity[c]);
        parity[c] ^= b;
    }
    OrbitPartition {
        side: t,
        orbit,
        parity,
        count,
        contradiction,
    }
}

/// Verdict of the falling-apart test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FallApart {
    pub verdict: bool,
    /// Strands that can be lifted off the top together.
    pub witness: Option<Vec<Strand>>,
}

fn strand_index(s: Strand, t: usize) -> usize {
    match s {
        Strand::Warp(x) => x,
        Strand::Weft(y) => t + y,
    }
}

fn strand_of(i: usize, t: usize) -> Strand {
    if i < t {
        Strand::Warp(i)
    } else {
        Strand::Weft(i - t)
    }
}

/// Whether some proper set of strands lies entirely on top of the rest.
pub fn falls_apart(d: &Design) -> FallApart {
    let t = d.side();
    // Edge v -> u when u passes over v: lifting v needs u lifted too.
    let mut adj = vec![Vec::new(); 2 * t];
    for y in 0..t {
        for x in 0..t {
            let warp = strand_index(Strand::Warp(x), t);
            let weft = strand_index(Strand::Weft(y), t);
            if d.at(x, y) {
                adj[weft].push(warp);
            } else {
                adj[warp].push(weft);
            }
        }
    }
    for start in 0..2 * t {
        let mut seen = vec![false; 2 * t];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut n = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    n += 1;
                    queue.push_back(u);
                }
            }
        }
        if n < 2 * t {
            let witness = (0..2 * t).filter(|&i| seen[i]).map(|i| strand_of(i, t)).collect();
            return FallApart {
                verdict: true,
                witness: Some(witness),
            };
        }
    }
    FallApart {
        verdict: false,
        witness: None,
    }
}

/// Whether lifting `set` off the top is consistent with `d`.
pub fn is_liftable(d: &Design, set: &[Strand]) -> bool {
    let t = d.side();
    let mut inside = vec![false; 2 * t];
    for &s in set {
        inside[strand_index(s, t)] = true;
    }
    let n = inside.iter().filter(|&&b| b).count();
    if n == 0 || n == 2 * t {
        return false;
    }
    for y in 0..t {
        for x in 0..t {
            let (wa, we) = (inside[x], inside[t + y]);
            if wa != we && (d.at(x, y) != wa) {
                return false;
            }
        }
    }
    true
}

/// Canonical form of a design up to translations, rotations and side
/// reversal, optionally also reflections.
pub fn canonical_key(d: &Design, with_reflections: bool) -> Vec<bool> {
    let linears: &[Linear] = if with_reflections {
        &Linear::ALL
    } else {
        &Linear::ALL[..4]
    };
    let t = d.side();
    let n = t * t;
    let mut best: Vec<bool> = Vec::new();
    let mut cand = vec![false; n];
    for &lin in linears {
        let img = crate::grid::transform_design_map(d, &AffineMap::new(lin, 0, 0, false))
            .expect("linear maps fix the origin corner");
        let cells = img.cells();
        for flip in [false, true] {
            for vy in 0..t {
                for vx in 0..t {
                    let value = |c: usize| {
                        let (x, y) = ((c % t + vx) % t, (c / t + vy) % t);
                        cells[y * t + x] ^ flip
                    };
                    if best.is_empty() {
                        best = (0..n).map(value).collect();
                        continue;
                    }
                    // Lexicographic comparison that stops at the first difference.
                    let mut smaller = false;
                    let mut c = 0;
                    while c < n {
                        let v = value(c);
                        if v != best[c] {
                            smaller = !v;
                            break;
                        }
                        c += 1;
                    }
                    if smaller {
                        for (k, slot) in cand.iter_mut().enumerate() {
                            *slot = value(k);
                        }
                        std::mem::swap(&mut best, &mut cand);
                    }
                }
            }
        }
    }
    best
}

/// Short content hash of a design's cells.
pub fn design_id(d: &Design) -> String {
    let mut h = Sha256::new();
    h.update(format!("T={}\n", d.side()).as_bytes());
    for row in d.rows_top_down() {
        h.update(row.as_bytes());
        h.update(b"\n");
    }
    hex::encode(&h.finalize()[..8])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedDesign {
    pub id: String,
    pub design: Design,
    pub species: Species,
    pub seed: Vec2,
    pub falls_apart: bool,
}

#[derive(Clone, Debug, Default)]
pub struct EnumerateOptions {
    pub species: Option<Species>,
    pub include_falling_apart: bool,
    /// Groups with more cell orbits than this are skipped with a notice.
    pub max_orbits: Option<usize>,
}

pub const DEFAULT_MAX_ORBITS: usize = 22;

#[derive(Clone, Debug, Default)]
pub struct Enumeration {
    pub order: i64,
    pub designs: Vec<EnumeratedDesign>,
    /// Classes up to translation, rotation and side reversal.
    pub handed_count: usize,
    /// Classes when reflections are also identified.
    pub with_reflection_count: usize,
    pub notices: Vec<String>,
}

/// Every isonemal design of `order` with quarter-turn symmetry, one per class.
pub fn enumerate_designs(order: i64, opts: &EnumerateOptions) -> Result<Enumeration> {
    let mut out = Enumeration {
        order,
        ..Default::default()
    };
    if order <= 4 {
        out.notices
            .push(format!("order {order}: lattice units of order 4 or less are conformed; nothing to enumerate"));
        return Ok(out);
    }
    let dec = decompose_order(order);
    if !dec.admits_rotational_designs() {
        out.notices.push(format!(
            "order {order} = {} * 2^{}: no designs with quarter-turn symmetry",
            dec.f, dec.p
        ));
        return Ok(out);
    }
    let max_orbits = opts.max_orbits.unwrap_or(DEFAULT_MAX_ORBITS);
    let mut classes: BTreeMap<(usize, Vec<bool>), EnumeratedDesign> = BTreeMap::new();
    let mut mirror_keys = BTreeSet::new();
    let mut rank = 0usize;
    for &species in Species::for_power(dec.p) {
        if opts.species.is_some_and(|s| s != species) {
            continue;
        }
        for &seed in &dec.reps {
            rank += 1;
            let g = build_group(species, seed)?;
            let part = cell_orbits(&g);
            if part.contradiction {
                out.notices.push(format!(
                    "species {species} on ({}, {}): orbit colouring contradiction",
                    seed.0, seed.1
                ));
                continue;
            }
            if part.count > max_orbits {
                out.notices.push(format!(
                    "species {species} on ({}, {}): {} orbits exceeds the limit {max_orbits}",
                    seed.0, seed.1, part.count
                ));
                continue;
            }
            let found: Vec<_> = designs_of_group(&g, &part)?
                .into_par_iter()
                .map(|d| {
                    let keys = (canonical_key(&d, false), canonical_key(&d, true));
                    (d, keys)
                })
                .collect();
            for (d, (key, mirror_key)) in found {
                let fa = falls_apart(&d).verdict;
                mirror_keys.insert(mirror_key);
                classes.entry((rank, key)).or_insert_with(|| EnumeratedDesign {
                    id: design_id(&d),
                    design: d,
                    species,
                    seed,
                    falls_apart: fa,
                });
            }
        }
    }
    out.handed_count = classes.len();
    out.with_reflection_count = mirror_keys.len();
    out.designs = classes
        .into_values()
        .filter(|e| opts.include_falling_apart || !e.falls_apart)
        .collect();
    Ok(out)
}

/// Colourings of the orbits whose full symmetry group is exactly `g`, in
/// colouring order.
pub fn designs_of_group(g: &GroupSpec, part: &OrbitPartition) -> Result<Vec<Design>> {
    let total = 1u64 << part.count;
    let results: Vec<Result<Option<Design>>> = (0..total)
        .into_par_iter()
        .map(|bits| {
            let d = part.colour(bits);
            if has_exact_group(&d, g)? {
                Ok(Some(d))
            } else {
                Ok(None)
            }
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        if let Some(d) = r? {
            out.push(d);
        }
    }
    Ok(out)
}

/// Whether the full symmetry group of `d` is exactly the group `g`.
pub fn has_exact_group(d: &Design, g: &GroupSpec) -> Result<bool> {
    let s = survey(d)?;
    if s.all_translations != g.translations || s.translations != g.plain_translations {
        return Ok(false);
    }
    let c = classify_surveyed(d, &s)?;
    Ok(match c.report() {
        Some(r) => r.species == g.species && r.seed() == g.seed && r.reflected == g.unit.reflected,
        None => false,
    })
}
