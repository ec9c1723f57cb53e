//! Curves in minimal position on a closed oriented surface, encoded as a
//! 4-valent ribbon graph.
//!
//! Every crossing carries four half-edges ("darts") in counter-clockwise
//! rotation order `X-in, Y-in, X-out, Y-out` for a positive crossing and
//! `X-in, Y-out, X-out, Y-in` for a negative one. Dart `d` lives at crossing
//! `d / 4` in rotation slot `d % 4`. Complementary regions default to disks;
//! a `region` line in the file groups face boundaries into a single region of
//! the given genus, which is how non-filling curve systems are described.

mod cut;
mod format;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cut::{Bigon, BoundaryWalk, Complement, ComponentInfo, CutSet};
pub use format::{parse_diagram, parse_ref, parse_spec_text, serialize_diagram, serialize_diagram_json};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid diagram: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingSpec {
    pub id: u32,
    pub x: String,
    pub y: String,
    pub sign: i8,
}

/// Either a face, named by one of its corners, or one side of a curve with no
/// crossings (`left` is the side to the left of the curve's orientation).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryRef {
    Corner { crossing: u32, corner: u8 },
    FreeSide { curve: String, left: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionSpec {
    pub genus: u32,
    pub boundary: Vec<BoundaryRef>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSpec {
    pub curve: String,
    pub visits: Vec<(u32, u8)>,
}

/// Diagram contents exactly as written in a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramSpec {
    pub genus: u32,
    pub curves: Vec<String>,
    pub many_curves: bool,
    pub crossings: Vec<CrossingSpec>,
    pub cycles: Vec<CycleSpec>,
    pub regions: Vec<RegionSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub id: u32,
    pub x: usize,
    pub y: usize,
    pub sign: i8,
}

/// The edge from visit `pos` of `curve` to visit `pos + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub curve: usize,
    pub pos: usize,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub genus: u32,
    pub faces: Vec<usize>,
    pub free_sides: Vec<(usize, bool)>,
}

impl Region {
    pub fn boundary_count(&self) -> usize {
        self.faces.len() + self.free_sides.len()
    }

    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary_count() as i64
    }

    pub fn is_disk(&self) -> bool {
        self.genus == 0 && self.boundary_count() == 1
    }
}

/// A contiguous stretch of a curve, running forward from visit `start` across
/// `len` edges. `len` equals the number of visits only for the closed loop of a
/// one-crossing curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subarc {
    pub curve: usize,
    pub start: usize,
    pub len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubarcRecord {
    pub curve: String,
    pub start: u32,
    pub end: u32,
    pub orientation: String,
    pub interior: Vec<u32>,
}

/// One complementary face of the ribbon graph, traced as an orbit of darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub index: usize,
    pub darts: Vec<usize>,
    /// `(crossing id, corner)` for each corner, in boundary order.
    pub boundary: Vec<(u32, u8)>,
    pub sides: Vec<(String, Subarc)>,
    pub region: usize,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.darts.len()
    }
}

/// Passage of a closed walk through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub crossing: usize,
    pub enter: usize,
    pub leave: usize,
}

/// A closed curve drawn on the diagram: either a cyclic sequence of passages
/// joined by edges (`edges[i]` runs from passage `i` to passage `i + 1`), or a
/// crossing-free input curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveWalk {
    pub passages: Vec<Passage>,
    pub edges: Vec<usize>,
    pub free_curve: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct IntersectionDiagram {
    spec: DiagramSpec,
    curves: Vec<String>,
    crossings: Vec<Crossing>,
    crossing_index: HashMap<u32, usize>,
    /// Crossing indices in cyclic order, per curve.
    visits: Vec<Vec<usize>>,
    /// Position of each crossing in the cycles of its X and Y curve.
    positions: Vec<[usize; 2]>,
    opposite: Vec<usize>,
    edge_of_dart: Vec<usize>,
    edges: Vec<Edge>,
    /// First edge id of each curve.
    edge_offset: Vec<usize>,
    faces: Vec<Vec<usize>>,
    face_of_dart: Vec<usize>,
    regions: Vec<Region>,
    region_of_face: Vec<usize>,
    region_of_free: HashMap<(usize, bool), usize>,
}

pub const fn dart(crossing: usize, slot: usize) -> usize {
    crossing * 4 + slot
}

pub const fn vertex_of(d: usize) -> usize {
    d / 4
}

pub const fn slot_of(d: usize) -> usize {
    d % 4
}

/// Next dart counter-clockwise around the same crossing.
pub const fn rotate(d: usize) -> usize {
    (d & !3) | ((d + 1) & 3)
}

/// Whether `x` lies strictly inside the counter-clockwise sweep from `from` to
/// `to` around their common crossing.
pub fn ccw_between(from: usize, to: usize, x: usize) -> bool {
    let span = (slot_of(to) + 4 - slot_of(from)) % 4;
    let off = (slot_of(x) + 4 - slot_of(from)) % 4;
    off > 0 && off < span
}

fn in_slot(sign: i8, strand: usize) -> usize {
    match (strand, sign > 0) {
        (0, _) => 0,
        (_, true) => 1,
        (_, false) => 3,
    }
}

fn out_slot(sign: i8, strand: usize) -> usize {
    (in_slot(sign, strand) + 2) % 4
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl IntersectionDiagram {
    /// Validates a parsed spec, reporting every violated invariant.
    pub fn from_spec(spec: DiagramSpec) -> Result<Self, DiagramError> {
        Self::assemble(spec, false)
    }

    /// Like `from_spec`, but takes the genus from the Euler characteristic.
    pub fn from_spec_inferring_genus(spec: DiagramSpec) -> Result<Self, DiagramError> {
        Self::assemble(spec, true)
    }

    fn assemble(spec: DiagramSpec, infer_genus: bool) -> Result<Self, DiagramError> {
        let mut errs: Vec<String> = Vec::new();
        let curves = spec.curves.clone();
        let max_curves = if spec.many_curves { usize::MAX } else { 3 };
        if curves.len() < 2 || curves.len() > max_curves {
            errs.push(format!(
                "curve count: expected 2 or 3 curves (more only with `option many-curves`), got {}",
                curves.len()
            ));
        }
        let mut label_index: HashMap<&str, usize> = HashMap::new();
        for (i, c) in curves.iter().enumerate() {
            if label_index.insert(c.as_str(), i).is_some() {
                errs.push(format!("duplicate curve label `{c}`"));
            }
        }

        let mut crossings: Vec<Crossing> = Vec::new();
        let mut crossing_index = HashMap::new();
        let mut sorted_specs = spec.crossings.clone();
        sorted_specs.sort_by_key(|c| c.id);
        for cs in &sorted_specs {
            let x = label_index.get(cs.x.as_str()).copied();
            let y = label_index.get(cs.y.as_str()).copied();
            if x.is_none() || y.is_none() {
                errs.push(format!("crossing {}: unknown curve label", cs.id));
                continue;
            }
            if x == y {
                errs.push(format!(
                    "simplicity: crossing {} is a self-crossing of `{}`",
                    cs.id, cs.x
                ));
                continue;
            }
            if cs.sign != 1 && cs.sign != -1 {
                errs.push(format!("crossing {}: sign must be +1 or -1", cs.id));
                continue;
            }
            if crossing_index.insert(cs.id, crossings.len()).is_some() {
                errs.push(format!("duplicate crossing id {}", cs.id));
                continue;
            }
            crossings.push(Crossing { id: cs.id, x: x.unwrap(), y: y.unwrap(), sign: cs.sign });
        }

        let n = crossings.len();
        let mut visits: Vec<Vec<usize>> = vec![Vec::new(); curves.len()];
        let mut seen_cycle = vec![false; curves.len()];
        let mut positions = vec![[usize::MAX; 2]; n];
        for cyc in &spec.cycles {
            let Some(&ci) = label_index.get(cyc.curve.as_str()) else {
                errs.push(format!("cycle for unknown curve `{}`", cyc.curve));
                continue;
            };
            if std::mem::replace(&mut seen_cycle[ci], true) {
                errs.push(format!("single cycle: curve `{}` has more than one cycle line", cyc.curve));
                continue;
            }
            for (k, &(id, slot)) in cyc.visits.iter().enumerate() {
                let Some(&xi) = crossing_index.get(&id) else {
                    errs.push(format!("cycle `{}`: unknown crossing {id}", cyc.curve));
                    continue;
                };
                let c = crossings[xi];
                let strand = if c.x == ci {
                    0
                } else if c.y == ci {
                    1
                } else {
                    errs.push(format!("cycle `{}`: crossing {id} does not involve this curve", cyc.curve));
                    continue;
                };
                if slot as usize != in_slot(c.sign, strand) {
                    errs.push(format!(
                        "cycle `{}`: crossing {id} enters through slot {}, expected {}",
                        cyc.curve,
                        slot,
                        in_slot(c.sign, strand)
                    ));
                }
                if positions[xi][strand] != usize::MAX {
                    errs.push(format!("simplicity: curve `{}` visits crossing {id} twice", cyc.curve));
                    continue;
                }
                positions[xi][strand] = k;
                visits[ci].push(xi);
            }
            if visits[ci].len() != cyc.visits.len() {
                // positions must index the stored cycle, so drop the curve's data
                visits[ci].clear();
            }
        }
        for (ci, seen) in seen_cycle.iter().enumerate() {
            if !seen {
                errs.push(format!("single cycle: curve `{}` has no cycle line", curves[ci]));
            }
        }
        for (xi, c) in crossings.iter().enumerate() {
            for (strand, curve) in [(0, c.x), (1, c.y)] {
                if positions[xi][strand] == usize::MAX {
                    errs.push(format!("crossing {} is never visited by `{}`", c.id, curves[curve]));
                }
            }
        }
        if !errs.is_empty() {
            return Err(DiagramError::Invalid(errs));
        }

        // Darts and edges.
        let mut opposite = vec![usize::MAX; 4 * n];
        let mut edge_of_dart = vec![usize::MAX; 4 * n];
        let mut edges = Vec::new();
        let mut edge_offset = Vec::new();
        for (ci, seq) in visits.iter().enumerate() {
            edge_offset.push(edges.len());
            let m = seq.len();
            for k in 0..m {
                let (a, b) = (seq[k], seq[(k + 1) % m]);
                let sa = if crossings[a].x == ci { 0 } else { 1 };
                let sb = if crossings[b].x == ci { 0 } else { 1 };
                let tail = dart(a, out_slot(crossings[a].sign, sa));
                let head = dart(b, in_slot(crossings[b].sign, sb));
                opposite[tail] = head;
                opposite[head] = tail;
                edge_of_dart[tail] = edges.len();
                edge_of_dart[head] = edges.len();
                edges.push(Edge { curve: ci, pos: k, tail, head });
            }
        }
        edge_offset.push(edges.len());

        // Faces: orbits of h -> rotate(opposite(h)).
        let mut face_of_dart = vec![usize::MAX; 4 * n];
        let mut faces = Vec::new();
        for start in 0..4 * n {
            if face_of_dart[start] != usize::MAX {
                continue;
            }
            let mut orbit = Vec::new();
            let mut h = start;
            loop {
                face_of_dart[h] = faces.len();
                orbit.push(h);
                h = rotate(opposite[h]);
                if h == start {
                    break;
                }
            }
            faces.push(orbit);
        }

        // Regions.
        let free_curves: Vec<usize> = (0..curves.len()).filter(|&c| visits[c].is_empty()).collect();
        let mut region_of_face = vec![usize::MAX; faces.len()];
        let mut region_of_free: HashMap<(usize, bool), usize> = HashMap::new();
        let mut regions = Vec::new();
        for (ri, rs) in spec.regions.iter().enumerate() {
            let mut region = Region { genus: rs.genus, faces: Vec::new(), free_sides: Vec::new() };
            if rs.boundary.is_empty() {
                errs.push(format!("region {ri}: empty boundary list"));
            }
            for b in &rs.boundary {
                match b {
                    BoundaryRef::Corner { crossing, corner } => {
                        let Some(&xi) = crossing_index.get(crossing) else {
                            errs.push(format!("region {ri}: unknown crossing {crossing}"));
                            continue;
                        };
                        if *corner > 3 {
                            errs.push(format!("region {ri}: corner {corner} out of range"));
                            continue;
                        }
                        let f = face_of_dart[opposite[dart(xi, *corner as usize)]];
                        if region_of_face[f] != usize::MAX {
                            errs.push(format!(
                                "faces partition: face at f{crossing}.{corner} assigned to two regions"
                            ));
                            continue;
                        }
                        region_of_face[f] = regions.len();
                        region.faces.push(f);
                    }
                    BoundaryRef::FreeSide { curve, left } => {
                        let ci = match label_index.get(curve.as_str()) {
                            Some(&ci) if free_curves.contains(&ci) => ci,
                            _ => {
                                errs.push(format!(
                                    "region {ri}: `{curve}` is not a crossing-free curve"
                                ));
                                continue;
                            }
                        };
                        if region_of_free.insert((ci, *left), regions.len()).is_some() {
                            errs.push(format!("region {ri}: side of `{curve}` assigned twice"));
                            continue;
                        }
                        region.free_sides.push((ci, *left));
                    }
                }
            }
            regions.push(region);
        }
        for (f, r) in region_of_face.iter_mut().enumerate() {
            if *r == usize::MAX {
                *r = regions.len();
                regions.push(Region { genus: 0, faces: vec![f], free_sides: Vec::new() });
            }
        }
        for &c in &free_curves {
            for left in [true, false] {
                if !region_of_free.contains_key(&(c, left)) {
                    errs.push(format!(
                        "region: side {} of crossing-free curve `{}` is not placed in any region",
                        if left { '+' } else { '-' },
                        curves[c]
                    ));
                }
            }
        }
        if !errs.is_empty() {
            return Err(DiagramError::Invalid(errs));
        }

        let mut d = IntersectionDiagram {
            spec,
            curves,
            crossings,
            crossing_index,
            visits,
            positions,
            opposite,
            edge_of_dart,
            edges,
            edge_offset,
            faces,
            face_of_dart,
            regions,
            region_of_face,
            region_of_free,
        };

        let chi = d.euler_characteristic();
        if infer_genus && chi <= 2 && chi % 2 == 0 {
            d.spec.genus = ((2 - chi) / 2) as u32;
        }
        let expected = 2 - 2 * d.spec.genus as i64;
        if chi != expected {
            errs.push(format!(
                "Euler characteristic: V - E + F = {chi} but genus {} requires {expected}",
                d.spec.genus
            ));
        }
        if !d.surface_connected() {
            errs.push("surface is not connected".to_string());
        }
        if !errs.is_empty() {
            return Err(DiagramError::Invalid(errs));
        }
        Ok(d)
    }

    pub fn spec(&self) -> &DiagramSpec {
        &self.spec
    }

    pub fn genus(&self) -> u32 {
        self.spec.genus
    }

    pub fn curve_labels(&self) -> &[String] {
        &self.curves
    }

    pub fn curve(&self, label: &str) -> Result<usize, DiagramError> {
        self.curves
            .iter()
            .position(|c| c == label)
            .ok_or_else(|| DiagramError::UnknownCurve(label.to_string()))
    }

    pub fn label(&self, curve: usize) -> &str {
        &self.curves[curve]
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_by_id(&self, id: u32) -> Option<usize> {
        self.crossing_index.get(&id).copied()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn visits(&self, curve: usize) -> &[usize] {
        &self.visits[curve]
    }

    pub fn is_free(&self, curve: usize) -> bool {
        self.visits[curve].is_empty()
    }

    pub fn opposite(&self, d: usize) -> usize {
        self.opposite[d]
    }

    pub fn edge_of_dart(&self, d: usize) -> usize {
        self.edge_of_dart[d]
    }

    pub fn edge_id(&self, curve: usize, pos: usize) -> usize {
        self.edge_offset[curve] + pos
    }

    pub fn curve_of_dart(&self, d: usize) -> usize {
        self.edges[self.edge_of_dart[d]].curve
    }

    /// Position of crossing `xi` in the cycle of `curve`, if the curve passes through it.
    pub fn position(&self, curve: usize, xi: usize) -> Option<usize> {
        let c = &self.crossings[xi];
        if c.x == curve {
            Some(self.positions[xi][0])
        } else if c.y == curve {
            Some(self.positions[xi][1])
        } else {
            None
        }
    }

    pub fn in_dart(&self, curve: usize, pos: usize) -> usize {
        let xi = self.visits[curve][pos];
        let c = &self.crossings[xi];
        dart(xi, in_slot(c.sign, if c.x == curve { 0 } else { 1 }))
    }

    pub fn out_dart(&self, curve: usize, pos: usize) -> usize {
        let xi = self.visits[curve][pos];
        let c = &self.crossings[xi];
        dart(xi, out_slot(c.sign, if c.x == curve { 0 } else { 1 }))
    }

    /// Sign of a crossing seen from the ordered pair `(first, second)`.
    pub fn oriented_sign(&self, xi: usize, first: usize) -> i8 {
        let c = &self.crossings[xi];
        if c.x == first {
            c.sign
        } else {
            -c.sign
        }
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region_of_face(&self, f: usize) -> usize {
        self.region_of_face[f]
    }

    pub fn region_of_free_side(&self, curve: usize, left: bool) -> usize {
        self.region_of_free[&(curve, left)]
    }

    pub fn face_of_dart(&self, d: usize) -> usize {
        self.face_of_dart[d]
    }

    /// Region holding a face corner or a side of a crossing-free curve.
    pub fn region_of_ref(&self, r: &BoundaryRef) -> Result<usize, DiagramError> {
        match r {
            BoundaryRef::Corner { crossing, corner } => {
                let xi = self
                    .crossing_by_id(*crossing)
                    .ok_or_else(|| DiagramError::Precondition(format!("unknown crossing {crossing}")))?;
                if *corner > 3 {
                    return Err(DiagramError::Precondition(format!("corner {corner} out of range")));
                }
                Ok(self.region_of_face[self.face_of_dart[self.opposite[dart(xi, *corner as usize)]]])
            }
            BoundaryRef::FreeSide { curve, left } => {
                let c = self.curve(curve)?;
                self.region_of_free
                    .get(&(c, *left))
                    .copied()
                    .ok_or_else(|| DiagramError::Precondition(format!("`{curve}` is not crossing-free")))
            }
        }
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        let v = self.crossings.len() as i64;
        let e = self.edges.len() as i64;
        v - e + self.regions.iter().map(Region::euler).sum::<i64>()
    }

    fn surface_connected(&self) -> bool {
        if self.regions.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(self.regions.len());
        for e in &self.edges {
            let a = self.region_of_face[self.face_of_dart[e.tail]];
            let b = self.region_of_face[self.face_of_dart[e.head]];
            uf.union(a, b);
        }
        for c in 0..self.curves.len() {
            if self.is_free(c) {
                uf.union(self.region_of_free[&(c, true)], self.region_of_free[&(c, false)]);
            }
        }
        (0..self.regions.len()).all(|r| uf.find(r) == uf.find(0))
    }

    /// Crossings between two curves.
    pub fn crossings_between(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.crossings.len())
            .filter(|&i| {
                let c = &self.crossings[i];
                (c.x == a && c.y == b) || (c.x == b && c.y == a)
            })
            .collect()
    }

    pub fn faces(&self) -> Vec<Face> {
        self.faces
            .iter()
            .enumerate()
            .map(|(index, darts)| {
                let boundary = darts
                    .iter()
                    .map(|&h| {
                        let o = self.opposite[h];
                        (self.crossings[vertex_of(o)].id, slot_of(o) as u8)
                    })
                    .collect();
                let sides = darts
                    .iter()
                    .map(|&h| {
                        let e = self.edges[self.edge_of_dart[h]];
                        (self.curves[e.curve].clone(), Subarc { curve: e.curve, start: e.pos, len: 1 })
                    })
                    .collect();
                Face {
                    index,
                    darts: darts.clone(),
                    boundary,
                    sides,
                    region: self.region_of_face[index],
                }
            })
            .collect()
    }

    // ---- subarcs ----

    pub fn curve_len(&self, curve: usize) -> usize {
        self.visits[curve].len()
    }

    pub fn subarc_start(&self, a: &Subarc) -> usize {
        self.visits[a.curve][a.start]
    }

    pub fn subarc_end(&self, a: &Subarc) -> usize {
        let n = self.visits[a.curve].len();
        self.visits[a.curve][(a.start + a.len) % n]
    }

    /// Crossings strictly inside the arc, in order.
    pub fn subarc_interior(&self, a: &Subarc) -> Vec<usize> {
        let n = self.visits[a.curve].len();
        (1..a.len).map(|k| self.visits[a.curve][(a.start + k) % n]).collect()
    }

    pub fn subarc_edges(&self, a: &Subarc) -> Vec<usize> {
        let n = self.visits[a.curve].len();
        (0..a.len).map(|k| self.edge_id(a.curve, (a.start + k) % n)).collect()
    }

    /// The forward subarc of `curve` from crossing `from` to crossing `to`.
    pub fn subarc_between(&self, curve: usize, from: usize, to: usize) -> Option<Subarc> {
        let n = self.visits[curve].len();
        let s = self.position(curve, from)?;
        let t = self.position(curve, to)?;
        let len = (t + n - s) % n;
        let len = if len == 0 { n } else { len };
        Some(Subarc { curve, start: s, len })
    }

    pub fn subarc_record(&self, a: &Subarc) -> SubarcRecord {
        SubarcRecord {
            curve: self.curves[a.curve].clone(),
            start: self.crossings[self.subarc_start(a)].id,
            end: self.crossings[self.subarc_end(a)].id,
            orientation: "+".to_string(),
            interior: self.subarc_interior(a).iter().map(|&x| self.crossings[x].id).collect(),
        }
    }

    // ---- walks ----

    pub fn curve_walk(&self, curve: usize) -> CurveWalk {
        if self.is_free(curve) {
            return CurveWalk { passages: Vec::new(), edges: Vec::new(), free_curve: Some(curve) };
        }
        let n = self.visits[curve].len();
        CurveWalk {
            passages: (0..n)
                .map(|k| Passage {
                    crossing: self.visits[curve][k],
                    enter: self.in_dart(curve, k),
                    leave: self.out_dart(curve, k),
                })
                .collect(),
            edges: (0..n).map(|k| self.edge_id(curve, k)).collect(),
            free_curve: None,
        }
    }

    /// Closed walk along `arc` (forward, from its start `s` to its end `t`)
    /// and then along `back` from `t` to `s`. Both arcs must join the same two
    /// crossings.
    pub fn join_arcs(&self, arc: &Subarc, back: &Subarc) -> CurveWalk {
        let (ca, cb) = (arc.curve, back.curve);
        let (n, m) = (self.visits[ca].len(), self.visits[cb].len());
        let t = self.subarc_end(arc);
        let back_forward = self.subarc_start(back) == t;
        let mut passages = Vec::with_capacity(arc.len + back.len);
        let mut edges = Vec::with_capacity(arc.len + back.len);

        let enter_s = if back_forward {
            self.in_dart(cb, (back.start + back.len) % m)
        } else {
            self.out_dart(cb, back.start)
        };
        passages.push(Passage {
            crossing: self.visits[ca][arc.start],
            enter: enter_s,
            leave: self.out_dart(ca, arc.start),
        });
        for k in 0..arc.len {
            edges.push(self.edge_id(ca, (arc.start + k) % n));
            if k + 1 < arc.len {
                let pos = (arc.start + k + 1) % n;
                passages.push(Passage {
                    crossing: self.visits[ca][pos],
                    enter: self.in_dart(ca, pos),
                    leave: self.out_dart(ca, pos),
                });
            }
        }
        let leave_t = if back_forward {
            self.out_dart(cb, back.start)
        } else {
            self.in_dart(cb, (back.start + back.len) % m)
        };
        passages.push(Passage {
            crossing: t,
            enter: self.in_dart(ca, (arc.start + arc.len) % n),
            leave: leave_t,
        });
        for k in 0..back.len {
            if back_forward {
                edges.push(self.edge_id(cb, (back.start + k) % m));
            } else {
                let pos = (back.start + back.len - k) % m;
                edges.push(self.edge_id(cb, (pos + m - 1) % m));
            }
            if k + 1 < back.len {
                let pos = if back_forward {
                    (back.start + k + 1) % m
                } else {
                    (back.start + back.len - k - 1) % m
                };
                let (enter, leave) = if back_forward {
                    (self.in_dart(cb, pos), self.out_dart(cb, pos))
                } else {
                    (self.out_dart(cb, pos), self.in_dart(cb, pos))
                };
                passages.push(Passage { crossing: self.visits[cb][pos], enter, leave });
            }
        }
        CurveWalk { passages, edges, free_curve: None }
    }
}

impl fmt::Display for IntersectionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_diagram(&self.spec))
    }
}
