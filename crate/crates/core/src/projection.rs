//! Projection of curves to a subsurface `Y`: a complementary component of a
//! set of pairwise disjoint diagram curves.

use std::collections::{BTreeSet, HashMap};

use serde_json::{json, Value};
use thiserror::Error;

use crate::diagram::{
    vertex_of, slot_of, BoundaryRef, BoundaryWalk, Complement, ComponentInfo, CutSet, DiagramError, IntersectionDiagram,
    Subarc,
};

#[derive(Debug, Error)]
pub enum ProjectionError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("subsurface: {0}")]
    Subsurface(String),
    #[error("internal: {0}")]
    Internal(String),
}

/// The subsurface `Y` selected by a region token on one side of `boundary`.
#[derive(Clone, Debug)]
pub struct SubsurfaceSpec<'a> {
    d: &'a IntersectionDiagram,
    pub boundary: Vec<usize>,
    pub region: usize,
    cut: CutSet,
    complement: Complement,
    pub component: usize,
    /// Boundary component of `Y` whose corner holds each dart.
    boundary_of_dart: HashMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedArc {
    pub carrier: Subarc,
    /// Boundary components of `Y` at the start and end.
    pub endpoints_on: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Projection {
    Empty,
    Inside(usize),
    Arcs(Vec<ProjectedArc>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiA {
    pub curve: usize,
    pub projection: Projection,
    pub arcs_in_y: usize,
    pub inessential: usize,
}

/// A boundary curve of a regular neighbourhood of arcs together with `∂Y`,
/// pushed into the adjacent piece of `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontierCurve {
    pub walk: BoundaryWalk,
    pub piece_euler: i64,
    pub piece_boundary: usize,
    pub follows: Vec<usize>,
}

impl<'a> SubsurfaceSpec<'a> {
    pub fn new(d: &'a IntersectionDiagram, boundary: &[usize], side: &BoundaryRef) -> Result<Self, ProjectionError> {
        Self::with_region(d, boundary, d.region_of_ref(side)?)
    }

    /// `Y` given directly by a region index instead of a token.
    pub fn with_region(d: &'a IntersectionDiagram, boundary: &[usize], region: usize) -> Result<Self, ProjectionError> {
        let sub = |m: String| ProjectionError::Subsurface(m);
        let boundary: Vec<usize> = boundary.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if boundary.is_empty() {
            return Err(sub("no boundary curves".into()));
        }
        for (i, &a) in boundary.iter().enumerate() {
            if !d.is_essential(&d.curve_walk(a)) {
                return Err(sub(format!("boundary curve {} is inessential", d.label(a))));
            }
            for &b in &boundary[i + 1..] {
                if !d.crossings_between(a, b).is_empty() {
                    return Err(sub(format!("boundary curves {} and {} cross", d.label(a), d.label(b))));
                }
            }
        }
        let mut cut = CutSet::new(d);
        for &b in &boundary {
            cut.add_curve(d, b);
        }
        let complement = d.complement(&cut);
        let component = complement.component_of_region(region);
        let mut boundary_of_dart = HashMap::new();
        for (i, w) in complement.walks_of(component).enumerate() {
            for x in d.swept_darts(&cut, w) {
                boundary_of_dart.insert(x, i);
            }
        }
        Ok(SubsurfaceSpec { d, boundary, region, cut, complement, component, boundary_of_dart })
    }

    /// Parses a side token such as `f3.1` or `C+`.
    pub fn from_labels(d: &'a IntersectionDiagram, boundary: &[&str], side: &str) -> Result<Self, ProjectionError> {
        let ids = boundary.iter().map(|l| d.curve(l)).collect::<Result<Vec<_>, _>>()?;
        let side = crate::diagram::parse_ref(side)
            .ok_or_else(|| ProjectionError::Subsurface(format!("side token `{side}`")))?;
        Self::new(d, &ids, &side)
    }

    pub fn diagram(&self) -> &'a IntersectionDiagram {
        self.d
    }

    pub fn info(&self) -> &ComponentInfo {
        &self.complement.components[self.component]
    }

    /// 3g + b - 3
    pub fn complexity(&self) -> i64 {
        let i = self.info();
        3 * i.genus() + i.boundary as i64 - 3
    }

    fn region_in_y(&self, r: usize) -> bool {
        self.complement.component_of_region(r) == self.component
    }

    fn cut_with(&self, arcs: &[Subarc]) -> CutSet {
        let mut cut = self.cut.clone();
        for a in arcs {
            for e in self.d.subarc_edges(a) {
                cut.add_edge(e);
            }
        }
        cut
    }

    fn pieces(&self, comp: &Complement) -> Vec<usize> {
        (0..comp.components.len()).filter(|&k| self.region_in_y(comp.components[k].regions[0])).collect()
    }

    fn end_darts(&self, a: &Subarc) -> [usize; 2] {
        let n = self.d.curve_len(a.curve);
        [self.d.out_dart(a.curve, a.start), self.d.in_dart(a.curve, (a.start + a.len) % n)]
    }

    /// Arcs of `c` between consecutive crossings with `∂Y` that run inside `Y`.
    pub fn arcs_in_y(&self, c: usize) -> Vec<Subarc> {
        let d = self.d;
        let n = d.curve_len(c);
        let marks: Vec<usize> = (0..n)
            .filter(|&p| {
                let x = &d.crossings()[d.visits(c)[p]];
                self.boundary.contains(&x.x) || self.boundary.contains(&x.y)
            })
            .collect();
        let m = marks.len();
        (0..m)
            .map(|i| {
                let (p, q) = (marks[i], marks[(i + 1) % m]);
                let len = (q + n - p) % n;
                Subarc { curve: c, start: p, len: if len == 0 { n } else { len } }
            })
            .filter(|a| {
                let e = d.edges()[d.edge_id(c, a.start)];
                self.region_in_y(d.region_of_face(d.face_of_dart(e.tail)))
            })
            .collect()
    }

    /// An arc is essential unless cutting `Y` along it leaves a disk.
    pub fn is_essential_arc(&self, a: &Subarc) -> bool {
        let comp = self.d.complement(&self.cut_with(&[*a]));
        !self.pieces(&comp).into_iter().any(|k| comp.components[k].is_disk())
    }

    /// Two disjoint arcs are isotopic when they cobound a rectangle with `∂Y`.
    pub fn isotopic(&self, a1: &Subarc, a2: &Subarc) -> bool {
        if a1 == a2 {
            return true;
        }
        let d = self.d;
        let comp = d.complement(&self.cut_with(&[*a1, *a2]));
        let (e1, e2) = (d.subarc_edges(a1), d.subarc_edges(a2));
        self.pieces(&comp).into_iter().any(|k| {
            if !comp.components[k].is_disk() {
                return false;
            }
            let Some(w) = comp.walks_of(k).next() else { return false };
            let seen: Vec<usize> = w.darts.iter().map(|&h| d.edge_of_dart(h)).collect();
            let once = |es: &[usize]| es.iter().all(|e| seen.iter().filter(|&&s| s == *e).count() == 1);
            once(&e1) && once(&e2)
        })
    }

    fn projected(&self, a: Subarc) -> ProjectedArc {
        let [s, t] = self.end_darts(&a);
        let on = |x: usize| self.boundary_of_dart.get(&x).copied().unwrap_or(usize::MAX);
        ProjectedArc { carrier: a, endpoints_on: [on(s), on(t)] }
    }

    pub fn pi_a(&self, c: usize) -> Result<PiA, ProjectionError> {
        let d = self.d;
        if self.boundary.contains(&c) {
            return Err(DiagramError::Precondition(format!("{} is a boundary curve", d.label(c))).into());
        }
        for &b in &self.boundary {
            d.intersection_number(c, b)?;
        }
        let all = self.arcs_in_y(c);
        let touches = d.visits(c).iter().any(|&x| {
            let x = &d.crossings()[x];
            self.boundary.contains(&x.x) || self.boundary.contains(&x.y)
        });
        if !touches {
            let r = if d.is_free(c) {
                d.region_of_free_side(c, true)
            } else {
                d.region_of_face(d.face_of_dart(d.edges()[d.edge_id(c, 0)].tail))
            };
            let projection = if self.region_in_y(r) { Projection::Inside(c) } else { Projection::Empty };
            return Ok(PiA { curve: c, projection, arcs_in_y: 0, inessential: 0 });
        }
        let essential: Vec<Subarc> = all.iter().copied().filter(|a| self.is_essential_arc(a)).collect();
        let mut classes: Vec<Subarc> = Vec::new();
        for a in &essential {
            if !classes.iter().any(|b| self.isotopic(a, b)) {
                classes.push(*a);
            }
        }
        let projection = if classes.is_empty() {
            Projection::Empty
        } else {
            Projection::Arcs(classes.into_iter().map(|a| self.projected(a)).collect())
        };
        Ok(PiA { curve: c, projection, arcs_in_y: all.len(), inessential: all.len() - essential.len() })
    }

    /// Essential boundary curves of a neighbourhood of `arcs ∪ ∂Y`, with the cut used.
    fn frontier(&self, arcs: &[Subarc]) -> (Vec<FrontierCurve>, CutSet) {
        let d = self.d;
        let cut = self.cut_with(arcs);
        let comp = d.complement(&cut);
        let arc_edges: BTreeSet<usize> = arcs.iter().flat_map(|a| d.subarc_edges(a)).collect();
        let mut out = Vec::new();
        for k in self.pieces(&comp) {
            let info = &comp.components[k];
            let walks: Vec<&BoundaryWalk> = comp
                .walks_of(k)
                .filter(|w| w.darts.iter().any(|&h| arc_edges.contains(&d.edge_of_dart(h))))
                .collect();
            let keep = if info.is_disk() || walks.is_empty() {
                0
            } else if info.is_annulus() {
                // two parallel frontier curves count once; one is peripheral
                usize::from(walks.len() == 2)
            } else {
                walks.len()
            };
            for w in walks.into_iter().take(keep) {
                let follows: BTreeSet<usize> = w
                    .darts
                    .iter()
                    .map(|&h| d.curve_of_dart(h))
                    .filter(|c| self.boundary.contains(c))
                    .collect();
                out.push(FrontierCurve {
                    walk: w.clone(),
                    piece_euler: info.euler,
                    piece_boundary: info.boundary,
                    follows: follows.into_iter().collect(),
                });
            }
        }
        (out, cut)
    }

    /// Essential boundary curves of a neighbourhood of the arc and the boundary
    /// components it meets.
    pub fn pi_0(&self, a: &ProjectedArc) -> Result<Vec<FrontierCurve>, ProjectionError> {
        let (curves, _) = self.frontier(&[a.carrier]);
        if curves.is_empty() {
            return Err(if self.complexity() <= 0 {
                ProjectionError::Hypothesis("Y has no essential curves".into())
            } else {
                ProjectionError::Internal("every neighbourhood boundary curve is inessential".into())
            });
        }
        Ok(curves)
    }

    /// Crossings of a pushed-off frontier curve with an arc, all of which lie
    /// next to the arc's endpoints.
    fn collar_count(&self, cut: &CutSet, f: &FrontierCurve, a: &Subarc) -> usize {
        let ends = self.end_darts(a);
        self.d.swept_darts(cut, &f.walk).iter().filter(|x| ends.contains(x)).count()
    }

    /// Largest collar count that still forces adjacency when `Y` has complexity one.
    fn adjacency_allowance(&self, a: &ProjectedArc) -> usize {
        let i = self.info();
        match (i.genus(), i.boundary) {
            (1, 1) => 1,
            (0, 4) if a.endpoints_on[0] == a.endpoints_on[1] => 2,
            (0, 4) => 1,
            _ => 0,
        }
    }

    pub fn check_pi0_lipschitz(&self, a1: &ProjectedArc, a2: &ProjectedArc) -> Result<Pi0Chain, ProjectionError> {
        let d = self.d;
        let i1: BTreeSet<usize> = d.subarc_interior(&a1.carrier).into_iter().collect();
        if d.subarc_interior(&a2.carrier).iter().any(|x| i1.contains(x)) {
            return Err(ProjectionError::Hypothesis("arcs intersect".into()));
        }
        if self.isotopic(&a1.carrier, &a2.carrier) {
            let p = self.pi_0(a1)?;
            return Ok(Pi0Chain { length: 0, route: "isotopic", chain: vec![p[0].clone()] });
        }
        let (p1, cut1) = self.frontier(&[a1.carrier]);
        let (p2, cut2) = self.frontier(&[a2.carrier]);
        if p1.is_empty() || p2.is_empty() {
            self.pi_0(a1)?;
            self.pi_0(a2)?;
        }
        for f in &p1 {
            if self.collar_count(&cut1, f, &a2.carrier) == 0 {
                return Ok(Pi0Chain { length: 1, route: "disjoint", chain: vec![f.clone(), p2[0].clone()] });
            }
        }
        for f in &p2 {
            if self.collar_count(&cut2, f, &a1.carrier) == 0 {
                return Ok(Pi0Chain { length: 1, route: "disjoint", chain: vec![p1[0].clone(), f.clone()] });
            }
        }
        let (both, _) = self.frontier(&[a1.carrier, a2.carrier]);
        if let Some(f) = both.first() {
            return Ok(Pi0Chain { length: 2, route: "frontier", chain: vec![p1[0].clone(), f.clone(), p2[0].clone()] });
        }
        for (f, cut, other, p_other) in [(&p1, &cut1, a2, &p2), (&p2, &cut2, a1, &p1)] {
            for c in f {
                if self.collar_count(cut, c, &other.carrier) <= self.adjacency_allowance(other) {
                    return Ok(Pi0Chain {
                        length: 1,
                        route: "complexity-one",
                        chain: vec![c.clone(), p_other[0].clone()],
                    });
                }
            }
        }
        Err(ProjectionError::Internal("no chain of length at most 2 found".into()))
    }

    /// Disjoint curves that both meet `Y` have disjoint projections.
    pub fn check_arc_lipschitz(&self, c1: usize, c2: usize) -> Result<ArcLipschitz, ProjectionError> {
        let d = self.d;
        if !d.crossings_between(c1, c2).is_empty() {
            return Err(ProjectionError::Hypothesis(format!("{} and {} cross", d.label(c1), d.label(c2))));
        }
        let (p1, p2) = (self.pi_a(c1)?, self.pi_a(c2)?);
        for p in [&p1, &p2] {
            if p.projection == Projection::Empty {
                return Err(ProjectionError::Hypothesis(format!("{} misses Y", d.label(p.curve))));
            }
        }
        Ok(ArcLipschitz { first: p1, second: p2 })
    }

    // ---- reports ----

    pub fn arc_json(&self, a: &ProjectedArc) -> Value {
        let d = self.d;
        let n = d.curve_len(a.carrier.curve);
        let end = |pos: usize| d.crossings()[d.visits(a.carrier.curve)[pos % n]];
        let (s, t) = (end(a.carrier.start), end(a.carrier.start + a.carrier.len));
        let other = |x: &crate::diagram::Crossing| if x.x == a.carrier.curve { x.y } else { x.x };
        json!({
            "carrier": d.subarc_record(&a.carrier),
            "endpoints_on": [d.label(other(&s)), d.label(other(&t))],
            "boundary_components": a.endpoints_on,
        })
    }

    pub fn curve_json(&self, f: &FrontierCurve) -> Value {
        let d = self.d;
        json!({
            "walk": f.walk.darts.iter().map(|&h| {
                let o = d.opposite(h);
                format!("{}:{}", d.crossings()[vertex_of(o)].id, slot_of(o))
            }).collect::<Vec<_>>(),
            "follows": f.follows.iter().map(|&c| d.label(c)).collect::<Vec<_>>(),
            "piece_euler": f.piece_euler,
            "piece_boundary": f.piece_boundary,
        })
    }

    pub fn pi_a_json(&self, p: &PiA) -> Value {
        let d = self.d;
        let (kind, arcs): (&str, Vec<Value>) = match &p.projection {
            Projection::Empty => ("empty", Vec::new()),
            Projection::Inside(_) => ("inside", Vec::new()),
            Projection::Arcs(a) => ("arcs", a.iter().map(|a| self.arc_json(a)).collect()),
        };
        json!({
            "curve": d.label(p.curve),
            "kind": kind,
            "arcs_in_y": p.arcs_in_y,
            "inessential": p.inessential,
            "arcs": arcs,
        })
    }

    pub fn summary_json(&self) -> Value {
        let i = self.info();
        json!({
            "boundary": self.boundary.iter().map(|&c| self.d.label(c)).collect::<Vec<_>>(),
            "genus": i.genus(),
            "boundary_components": i.boundary,
            "euler": i.euler,
            "complexity": self.complexity(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi0Chain {
    pub length: usize,
    pub route: &'static str,
    pub chain: Vec<FrontierCurve>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcLipschitz {
    pub first: PiA,
    pub second: PiA,
}

#[cfg(test)]
mod tests;
