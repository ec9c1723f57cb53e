//! Cutting the surface along a union of diagram edges and free curves.

use std::collections::HashSet;

use serde::Serialize;

use super::{ccw_between, rotate, vertex_of, CurveWalk, DiagramError, IntersectionDiagram, UnionFind};

/// A set of edges and crossing-free curves to cut along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSet {
    edges: Vec<bool>,
    free: Vec<bool>,
}

impl CutSet {
    pub fn new(d: &IntersectionDiagram) -> Self {
        CutSet { edges: vec![false; d.edges().len()], free: vec![false; d.curve_labels().len()] }
    }

    pub fn add_edge(&mut self, e: usize) {
        self.edges[e] = true;
    }

    pub fn add_walk(&mut self, w: &CurveWalk) {
        for &e in &w.edges {
            self.edges[e] = true;
        }
        if let Some(c) = w.free_curve {
            self.free[c] = true;
        }
    }

    pub fn add_curve(&mut self, d: &IntersectionDiagram, curve: usize) {
        self.add_walk(&d.curve_walk(curve));
    }

    pub fn with_walk(mut self, w: &CurveWalk) -> Self {
        self.add_walk(w);
        self
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edges[e]
    }

    pub fn contains_free(&self, curve: usize) -> bool {
        self.free[curve]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentInfo {
    pub euler: i64,
    pub boundary: usize,
    pub regions: Vec<usize>,
}

impl ComponentInfo {
    pub fn genus(&self) -> i64 {
        (2 - self.euler - self.boundary as i64) / 2
    }

    pub fn is_disk(&self) -> bool {
        self.euler == 1
    }

    pub fn is_annulus(&self) -> bool {
        self.euler == 0 && self.boundary == 2
    }
}

/// One boundary circle of a cut-open piece. Graph walks list the darts `h`
/// whose edge is traversed, with the piece on the side of `face_of_dart(h)`;
/// a cut free curve contributes one walk per side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryWalk {
    pub darts: Vec<usize>,
    pub free_side: Option<(usize, bool)>,
    pub component: usize,
}

#[derive(Clone, Debug)]
pub struct Complement {
    pub components: Vec<ComponentInfo>,
    pub walks: Vec<BoundaryWalk>,
    component_of_region: Vec<usize>,
}

impl Complement {
    pub fn component_of_region(&self, r: usize) -> usize {
        self.component_of_region[r]
    }

    pub fn walks_of(&self, comp: usize) -> impl Iterator<Item = &BoundaryWalk> {
        self.walks.iter().filter(move |w| w.component == comp)
    }
}

/// A disk in the complement of two curves bounded by one arc of each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bigon {
    pub faces: Vec<usize>,
    /// The two crossings at its corners.
    pub corners: Vec<usize>,
}

impl IntersectionDiagram {
    /// Next cut dart counter-clockwise from `h` (which must itself be cut).
    fn next_cut(&self, cut: &CutSet, h: usize) -> usize {
        let mut x = rotate(h);
        while !cut.edges[self.edge_of_dart(x)] {
            x = rotate(x);
        }
        x
    }

    pub fn complement(&self, cut: &CutSet) -> Complement {
        let nr = self.regions().len();
        let mut uf = UnionFind::new(nr);
        let side = |h: usize| self.region_of_face(self.face_of_dart(h));
        for (i, e) in self.edges().iter().enumerate() {
            if !cut.edges[i] {
                uf.union(side(e.tail), side(e.head));
            }
        }
        for c in 0..self.curve_labels().len() {
            if self.is_free(c) && !cut.free[c] {
                uf.union(self.region_of_free_side(c, true), self.region_of_free_side(c, false));
            }
        }
        let mut id = vec![usize::MAX; nr];
        let mut component_of_region = vec![0; nr];
        let mut components: Vec<ComponentInfo> = Vec::new();
        for r in 0..nr {
            let root = uf.find(r);
            if id[root] == usize::MAX {
                id[root] = components.len();
                components.push(ComponentInfo { euler: 0, boundary: 0, regions: Vec::new() });
            }
            let k = id[root];
            component_of_region[r] = k;
            components[k].regions.push(r);
            components[k].euler += self.regions()[r].euler();
        }
        let mut cut_vertex = vec![false; self.crossing_count()];
        for (i, e) in self.edges().iter().enumerate() {
            let k = component_of_region[side(e.tail)];
            if cut.edges[i] {
                cut_vertex[vertex_of(e.tail)] = true;
                cut_vertex[vertex_of(e.head)] = true;
            } else {
                components[k].euler -= 1;
            }
        }
        for (v, &is_cut) in cut_vertex.iter().enumerate() {
            if !is_cut {
                components[component_of_region[side(4 * v)]].euler += 1;
            }
        }

        let mut walks = Vec::new();
        let mut seen = vec![false; 4 * self.crossing_count()];
        for h0 in 0..seen.len() {
            if seen[h0] || !cut.edges[self.edge_of_dart(h0)] {
                continue;
            }
            let mut darts = Vec::new();
            let mut h = h0;
            loop {
                seen[h] = true;
                darts.push(h);
                h = self.next_cut(cut, self.opposite(h));
                if h == h0 {
                    break;
                }
            }
            walks.push(BoundaryWalk { darts, free_side: None, component: component_of_region[side(h0)] });
        }
        for c in 0..self.curve_labels().len() {
            if self.is_free(c) && cut.free[c] {
                for left in [true, false] {
                    let component = component_of_region[self.region_of_free_side(c, left)];
                    walks.push(BoundaryWalk { darts: Vec::new(), free_side: Some((c, left)), component });
                }
            }
        }
        for w in &walks {
            components[w.component].boundary += 1;
        }
        Complement { components, walks, component_of_region }
    }

    /// Crossings of a boundary walk where it switches from one curve to another.
    pub fn turning_corners(&self, cut: &CutSet, walk: &BoundaryWalk) -> Vec<usize> {
        walk.darts
            .iter()
            .filter_map(|&h| {
                let o = self.opposite(h);
                let next = self.next_cut(cut, o);
                (self.curve_of_dart(o) != self.curve_of_dart(next)).then_some(vertex_of(o))
            })
            .collect()
    }

    /// Darts outside the cut passed over at the corners of a boundary walk.
    pub fn swept_darts(&self, cut: &CutSet, walk: &BoundaryWalk) -> Vec<usize> {
        let mut out = Vec::new();
        for &h in &walk.darts {
            let o = self.opposite(h);
            let mut x = rotate(o);
            while !cut.edges[self.edge_of_dart(x)] {
                out.push(x);
                x = rotate(x);
            }
        }
        out
    }

    /// A closed walk is inessential exactly when it cuts off a disk.
    pub fn is_essential(&self, walk: &CurveWalk) -> bool {
        let cut = CutSet::new(self).with_walk(walk);
        !self.complement(&cut).components.iter().any(ComponentInfo::is_disk)
    }

    pub fn detect_bigons(&self, c1: usize, c2: usize) -> Vec<Bigon> {
        if c1 == c2 {
            return Vec::new();
        }
        let mut cut = CutSet::new(self);
        cut.add_curve(self, c1);
        cut.add_curve(self, c2);
        let comp = self.complement(&cut);
        let mut out = Vec::new();
        for w in &comp.walks {
            let info = &comp.components[w.component];
            if w.free_side.is_some() || !info.is_disk() {
                continue;
            }
            let corners = self.turning_corners(&cut, w);
            if corners.len() == 2 {
                let faces = (0..self.face_count())
                    .filter(|&f| comp.component_of_region(self.region_of_face(f)) == w.component)
                    .collect();
                out.push(Bigon { faces, corners });
            }
        }
        out
    }

    /// Number of crossings between two curves, certified minimal by the absence of bigons.
    pub fn intersection_number(&self, c1: usize, c2: usize) -> Result<usize, DiagramError> {
        let bigons = self.detect_bigons(c1, c2);
        if !bigons.is_empty() {
            return Err(DiagramError::Precondition(format!(
                "{} and {} bound {} bigon(s); not in minimal position",
                self.label(c1),
                self.label(c2),
                bigons.len()
            )));
        }
        Ok(self.crossings_between(c1, c2).len())
    }

    /// Transverse crossings of two simple closed walks in the diagram, where
    /// a stretch of shared edges counts once if the walks swap sides along it
    /// and not at all otherwise.
    pub fn walk_crossings(&self, w1: &CurveWalk, w2: &CurveWalk) -> usize {
        if w1.free_curve.is_some() || w2.free_curve.is_some() {
            return 0;
        }
        let e2: HashSet<usize> = w2.edges.iter().copied().collect();
        let e1: HashSet<usize> = w1.edges.iter().copied().collect();
        if e1 == e2 {
            return 0;
        }
        let n = w1.passages.len();
        let shared: Vec<bool> = w1.edges.iter().map(|e| e2.contains(e)).collect();
        // w2's darts at each crossing it visits
        let mut w2_darts: Vec<Option<[usize; 2]>> = vec![None; self.crossing_count()];
        for p in &w2.passages {
            w2_darts[p.crossing] = Some([p.enter, p.leave]);
        }
        let other = |x: usize, known: usize| -> usize {
            let [a, b] = w2_darts[x].expect("shared crossing");
            if a == known {
                b
            } else {
                a
            }
        };
        let left = |entry: usize, exit: usize, o: usize| ccw_between(exit, entry, o);
        let mut count = 0;
        for i in 0..n {
            let p = w1.passages[i];
            let Some([r, t]) = w2_darts[p.crossing] else { continue };
            let before = shared[(i + n - 1) % n];
            let after = shared[i];
            match (before, after) {
                (false, false) => {
                    let inside = |x: usize| ccw_between(p.enter, p.leave, x);
                    if inside(r) != inside(t) {
                        count += 1;
                    }
                }
                (false, true) => {
                    // start of a shared stretch: find where it ends
                    let a_side = left(p.enter, p.leave, other(p.crossing, p.leave));
                    let mut j = i;
                    while shared[j % n] && j < i + n {
                        j += 1;
                    }
                    let q = w1.passages[j % n];
                    let b_side = left(q.enter, q.leave, other(q.crossing, q.enter));
                    if a_side != b_side {
                        count += 1;
                    }
                }
                _ => {}
            }
        }
        count
    }
}
