use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{bicorn_crossings, Bicorn, BicornError, BicornRecord};
use crate::diagram::{DiagramError, IntersectionDiagram, Subarc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    fn symbol(self) -> char {
        match self {
            Direction::Forward => '+',
            Direction::Backward => '-',
        }
    }
}

/// Free choices of the extension procedure: the crossing the beta arc grows
/// from, the direction it grows along beta, and which alpha arc the first
/// bicorn keeps (forward or backward along alpha from the start crossing).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Strategy {
    pub start: u32,
    pub direction: Direction,
    pub side: Direction,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.direction.symbol(), self.side.symbol())
    }
}

impl FromStr for Strategy {
    type Err = String;

    /// `<crossing id>:<+|->:<+|->`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let dir = |t: &str| match t {
            "+" => Ok(Direction::Forward),
            "-" => Ok(Direction::Backward),
            _ => Err(format!("direction `{t}`: expected + or -")),
        };
        match parts.as_slice() {
            [id, d, side] => Ok(Strategy {
                start: id.parse().map_err(|_| format!("crossing id `{id}`"))?,
                direction: dir(d)?,
                side: dir(side)?,
            }),
            _ => Err(format!("strategy `{s}`: expected <id>:<+|->:<+|->")),
        }
    }
}

impl Strategy {
    /// Lowest crossing id, forward along beta, keeping the alpha side that
    /// holds the next lowest crossing id.
    pub fn default_for(d: &IntersectionDiagram, a: usize, b: usize) -> Option<Strategy> {
        let mut xs = d.crossings_between(a, b);
        xs.sort_by_key(|&x| d.crossings()[x].id);
        let x0 = *xs.first()?;
        let y = next_on_beta(d, b, x0, Direction::Forward, &xs);
        let side = match xs.get(1) {
            Some(&z) if y != x0 => {
                let fwd = d.subarc_between(a, x0, y).unwrap();
                if offset_on(d, &fwd, z).is_some() {
                    Direction::Forward
                } else {
                    Direction::Backward
                }
            }
            _ => Direction::Forward,
        };
        Some(Strategy { start: d.crossings()[x0].id, direction: Direction::Forward, side })
    }
}

/// Every strategy of the pair, ordered by start crossing id.
pub fn strategies(d: &IntersectionDiagram, a: usize, b: usize) -> Vec<Strategy> {
    let mut ids: Vec<u32> = d.crossings_between(a, b).iter().map(|&x| d.crossings()[x].id).collect();
    ids.sort_unstable();
    const DIRS: [Direction; 2] = [Direction::Forward, Direction::Backward];
    ids.iter()
        .flat_map(|&start| {
            DIRS.iter()
                .flat_map(move |&direction| DIRS.iter().map(move |&side| Strategy { start, direction, side }))
        })
        .collect()
}

/// Offset of crossing `x` along `arc`, endpoints included.
fn offset_on(d: &IntersectionDiagram, arc: &Subarc, x: usize) -> Option<usize> {
    let n = d.curve_len(arc.curve);
    let p = d.position(arc.curve, x)?;
    let k = (p + n - arc.start) % n;
    (k <= arc.len).then_some(k)
}

/// First crossing in `targets` met when leaving `from` along `b` in `dir`.
fn next_on_beta(d: &IntersectionDiagram, b: usize, from: usize, dir: Direction, targets: &[usize]) -> usize {
    let n = d.curve_len(b);
    let p = d.position(b, from).unwrap();
    (1..=n)
        .map(|k| match dir {
            Direction::Forward => d.visits(b)[(p + k) % n],
            Direction::Backward => d.visits(b)[(p + n - k % n) % n],
        })
        .find(|z| targets.contains(z))
        .unwrap()
}

fn beta_arc(d: &IntersectionDiagram, b: usize, x0: usize, z: usize, dir: Direction) -> Subarc {
    match dir {
        Direction::Forward => d.subarc_between(b, x0, z).unwrap(),
        Direction::Backward => d.subarc_between(b, z, x0).unwrap(),
    }
}

fn anchor(d: &IntersectionDiagram, a: usize, b: usize, s: &Strategy) -> Result<usize, BicornError> {
    let x0 = d
        .crossing_by_id(s.start)
        .filter(|x| d.crossings_between(a, b).contains(x))
        .ok_or_else(|| DiagramError::Precondition(format!("strategy start {} is not a crossing of the pair", s.start)))?;
    Ok(x0)
}

/// The first bicorn: a minimal beta arc leaving the start crossing, closed up
/// by the alpha arc on the chosen side. With a single crossing this is beta.
pub fn initial_bicorn(d: &IntersectionDiagram, a: usize, b: usize, s: &Strategy) -> Result<Bicorn, BicornError> {
    let xs = d.crossings_between(a, b);
    if xs.is_empty() {
        return Err(BicornError::NoCrossings(d.label(a).into(), d.label(b).into()));
    }
    let x0 = anchor(d, a, b, s)?;
    let y = next_on_beta(d, b, x0, s.direction, &xs);
    if y == x0 {
        return Ok(Bicorn::whole_beta(a, b));
    }
    let alpha_arc = match s.side {
        Direction::Forward => d.subarc_between(a, x0, y).unwrap(),
        Direction::Backward => d.subarc_between(a, y, x0).unwrap(),
    };
    Ok(Bicorn::proper(alpha_arc, beta_arc(d, b, x0, y, s.direction)))
}

/// Grows the beta arc along beta to the next crossing with the current alpha
/// arc and cuts the alpha arc there; returns beta once the start crossing is
/// reached again.
pub fn extend_bicorn(d: &IntersectionDiagram, s: &Strategy, current: &Bicorn) -> Result<Bicorn, BicornError> {
    let (a, b) = (current.alpha, current.beta);
    if current.is_beta() {
        return Err(BicornError::NothingToExtend);
    }
    let Some((alpha_arc, beta)) = current.arcs() else {
        return initial_bicorn(d, a, b, s);
    };
    let x0 = anchor(d, a, b, s)?;
    let t = match s.direction {
        Direction::Forward => d.subarc_end(&beta),
        Direction::Backward => d.subarc_start(&beta),
    };
    let on_alpha: Vec<usize> = d
        .crossings_between(a, b)
        .into_iter()
        .filter(|&x| offset_on(d, &alpha_arc, x).is_some())
        .collect();
    let z = next_on_beta(d, b, t, s.direction, &on_alpha);
    if z == x0 {
        return Ok(Bicorn::whole_beta(a, b));
    }
    let new_alpha = if d.subarc_start(&alpha_arc) == x0 {
        d.subarc_between(a, x0, z).unwrap()
    } else {
        d.subarc_between(a, z, x0).unwrap()
    };
    Ok(Bicorn::proper(new_alpha, beta_arc(d, b, x0, z, s.direction)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathViolation {
    pub step: usize,
    pub kind: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicornPath {
    pub source: usize,
    pub target: usize,
    pub strategy: Option<Strategy>,
    pub steps: Vec<Bicorn>,
}

impl BicornPath {
    pub fn records(&self, d: &IntersectionDiagram) -> Vec<BicornRecord> {
        self.steps.iter().map(|g| g.record(d)).collect()
    }

    /// Every violated path property; empty on a good path.
    pub fn violations(&self, d: &IntersectionDiagram) -> Vec<PathViolation> {
        let mut out = Vec::new();
        let mut push = |step, kind, detail: String| out.push(PathViolation { step, kind, detail });
        let xs = d.crossings_between(self.source, self.target);
        let i = xs.len();
        if !self.steps.first().is_some_and(Bicorn::is_alpha) {
            push(0, "start", "path does not start at the first curve".into());
        }
        if !self.steps.last().is_some_and(Bicorn::is_beta) {
            push(self.steps.len(), "end", "path does not end at the second curve".into());
        }
        if self.steps.len() > i + 2 {
            push(self.steps.len(), "length", format!("{} extensions for {} crossings", self.steps.len() - 1, i));
        }
        for (k, g) in self.steps.iter().enumerate() {
            if let Some((a, b)) = g.arcs() {
                let ia = d.subarc_interior(&a);
                if d.subarc_interior(&b).iter().any(|z| xs.contains(z) && ia.contains(z)) {
                    push(k, "simple", "arcs meet away from their endpoints".into());
                }
            }
            if !d.is_essential(&g.walk(d)) {
                push(k, "essential", "bicorn bounds a disk".into());
            }
        }
        for (k, w) in self.steps.windows(2).enumerate() {
            if !w[0].beta_arc_below(&w[1], d) {
                push(k + 1, "monotone", "beta arc does not strictly grow".into());
            }
            let c = bicorn_crossings(d, &w[0], &w[1]);
            if c > 1 {
                push(k + 1, "adjacent", format!("consecutive bicorns cross {c} times"));
            }
        }
        out
    }
}

/// Extends from alpha until beta is reached.
pub fn bicorn_path(d: &IntersectionDiagram, a: usize, b: usize, s: Option<Strategy>) -> Result<BicornPath, BicornError> {
    d.intersection_number(a, b)?;
    let mut steps = vec![Bicorn::whole_alpha(a, b)];
    let strategy = s.or_else(|| Strategy::default_for(d, a, b));
    if let Some(s) = strategy {
        let limit = d.crossings_between(a, b).len() + 2;
        let mut cur = steps[0];
        while !cur.is_beta() && steps.len() <= limit {
            cur = extend_bicorn(d, &s, &cur)?;
            steps.push(cur);
        }
    } else {
        steps.push(Bicorn::whole_beta(a, b));
    }
    Ok(BicornPath { source: a, target: b, strategy, steps })
}
