//! Line-oriented diagram files and their JSON mirror.
//!
//! ```text
//! genus 1
//! curves A B
//! x 0 A B +1
//! cycle A 0:0
//! cycle B 0:1
//! ```
//!
//! Optional lines: `option many-curves` and
//! `region <genus> <ref> <ref> ...`, where a ref is `f<crossing>.<corner>` for
//! the face containing that corner, or `<curve>+` / `<curve>-` for the left /
//! right side of a crossing-free curve.

use serde::{Deserialize, Serialize};

use super::{
    BoundaryRef, CrossingSpec, CycleSpec, DiagramError, DiagramSpec, IntersectionDiagram, RegionSpec,
};

fn perr(line: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::Parse { line, message: message.into() }
}

/// `f<crossing>.<corner>`, `<curve>+` or `<curve>-`.
pub fn parse_ref(tok: &str) -> Option<BoundaryRef> {
    if let Some(rest) = tok.strip_prefix('f') {
        if let Some((a, b)) = rest.split_once('.') {
            if let (Ok(crossing), Ok(corner)) = (a.parse(), b.parse()) {
                return Some(BoundaryRef::Corner { crossing, corner });
            }
        }
    }
    if let Some(c) = tok.strip_suffix('+') {
        return Some(BoundaryRef::FreeSide { curve: c.to_string(), left: true });
    }
    if let Some(c) = tok.strip_suffix('-') {
        return Some(BoundaryRef::FreeSide { curve: c.to_string(), left: false });
    }
    None
}

fn ref_token(r: &BoundaryRef) -> String {
    match r {
        BoundaryRef::Corner { crossing, corner } => format!("f{crossing}.{corner}"),
        BoundaryRef::FreeSide { curve, left } => format!("{curve}{}", if *left { '+' } else { '-' }),
    }
}

fn parse_visit(tok: &str) -> Option<(u32, u8)> {
    let (a, b) = tok.split_once(':')?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

fn parse_sign(tok: &str) -> Option<i8> {
    match tok {
        "+1" | "1" | "+" => Some(1),
        "-1" | "-" => Some(-1),
        _ => None,
    }
}

pub fn parse_spec_text(text: &str) -> Result<DiagramSpec, DiagramError> {
    let mut genus = None;
    let mut curves = None;
    let mut many_curves = false;
    let mut crossings = Vec::new();
    let mut cycles = Vec::new();
    let mut regions = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "genus" => {
                if toks.len() != 2 {
                    return Err(perr(line, "expected `genus G`"));
                }
                genus = Some(toks[1].parse().map_err(|_| perr(line, "genus: not a non-negative integer"))?);
            }
            "curves" => {
                curves = Some(toks[1..].iter().map(|s| s.to_string()).collect::<Vec<_>>());
            }
            "option" => match toks.get(1) {
                Some(&"many-curves") => many_curves = true,
                _ => return Err(perr(line, "unknown option")),
            },
            "x" => {
                if toks.len() != 5 {
                    return Err(perr(line, "expected `x <id> <curveX> <curveY> <sign>`"));
                }
                let id = toks[1].parse().map_err(|_| perr(line, "crossing id: not an integer"))?;
                let sign = parse_sign(toks[4]).ok_or_else(|| perr(line, "sign: expected +1 or -1"))?;
                crossings.push(CrossingSpec { id, x: toks[2].into(), y: toks[3].into(), sign });
            }
            "cycle" => {
                if toks.len() < 2 {
                    return Err(perr(line, "expected `cycle <curve> <id:slot> ...`"));
                }
                let visits = toks[2..]
                    .iter()
                    .map(|t| parse_visit(t).ok_or_else(|| perr(line, format!("visit `{t}`: expected id:slot"))))
                    .collect::<Result<Vec<_>, _>>()?;
                cycles.push(CycleSpec { curve: toks[1].into(), visits });
            }
            "region" => {
                if toks.len() < 3 {
                    return Err(perr(line, "expected `region <genus> <ref> ...`"));
                }
                let g = toks[1].parse().map_err(|_| perr(line, "region genus: not an integer"))?;
                let boundary = toks[2..]
                    .iter()
                    .map(|t| parse_ref(t).ok_or_else(|| perr(line, format!("region ref `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                regions.push(RegionSpec { genus: g, boundary });
            }
            other => return Err(perr(line, format!("unknown record `{other}`"))),
        }
    }
    Ok(DiagramSpec {
        genus: genus.ok_or_else(|| perr(0, "missing `genus` line"))?,
        curves: curves.ok_or_else(|| perr(0, "missing `curves` line"))?,
        many_curves,
        crossings,
        cycles,
        regions,
    })
}

#[derive(Serialize, Deserialize)]
struct JsonCycle {
    curve: String,
    visits: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonRegion {
    genus: u32,
    boundary: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonDiagram {
    genus: u32,
    curves: Vec<String>,
    #[serde(default)]
    options: Vec<String>,
    crossings: Vec<CrossingSpec>,
    cycles: Vec<JsonCycle>,
    #[serde(default)]
    regions: Vec<JsonRegion>,
}

fn parse_spec_json(text: &str) -> Result<DiagramSpec, DiagramError> {
    let j: JsonDiagram = serde_json::from_str(text).map_err(|e| perr(e.line(), e.to_string()))?;
    let mut many_curves = false;
    for o in &j.options {
        match o.as_str() {
            "many-curves" => many_curves = true,
            _ => return Err(perr(0, format!("unknown option `{o}`"))),
        }
    }
    let cycles = j
        .cycles
        .into_iter()
        .map(|c| {
            let visits = c
                .visits
                .iter()
                .map(|t| parse_visit(t).ok_or_else(|| perr(0, format!("visit `{t}`: expected id:slot"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(CycleSpec { curve: c.curve, visits })
        })
        .collect::<Result<Vec<_>, DiagramError>>()?;
    let regions = j
        .regions
        .into_iter()
        .map(|r| {
            let boundary = r
                .boundary
                .iter()
                .map(|t| parse_ref(t).ok_or_else(|| perr(0, format!("region ref `{t}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(RegionSpec { genus: r.genus, boundary })
        })
        .collect::<Result<Vec<_>, DiagramError>>()?;
    Ok(DiagramSpec { genus: j.genus, curves: j.curves, many_curves, crossings: j.crossings, cycles, regions })
}

/// Parses either format (JSON when the first non-blank character is `{`) and validates.
pub fn parse_diagram(text: &str) -> Result<IntersectionDiagram, DiagramError> {
    let spec = if text.trim_start().starts_with('{') {
        parse_spec_json(text)?
    } else {
        parse_spec_text(text)?
    };
    IntersectionDiagram::from_spec(spec)
}

/// Canonical text form: crossings by id, cycles in curve-label order.
pub fn serialize_diagram(spec: &DiagramSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!("genus {}\n", spec.genus));
    out.push_str(&format!("curves {}\n", spec.curves.join(" ")));
    if spec.many_curves {
        out.push_str("option many-curves\n");
    }
    let mut crossings = spec.crossings.clone();
    crossings.sort_by_key(|c| c.id);
    for c in &crossings {
        out.push_str(&format!("x {} {} {} {:+}\n", c.id, c.x, c.y, c.sign));
    }
    for label in &spec.curves {
        for cyc in spec.cycles.iter().filter(|c| &c.curve == label) {
            out.push_str(&format!("cycle {}", cyc.curve));
            for (id, slot) in &cyc.visits {
                out.push_str(&format!(" {id}:{slot}"));
            }
            out.push('\n');
        }
    }
    for r in &spec.regions {
        out.push_str(&format!("region {}", r.genus));
        for b in &r.boundary {
            out.push(' ');
            out.push_str(&ref_token(b));
        }
        out.push('\n');
    }
    out
}

pub fn serialize_diagram_json(spec: &DiagramSpec) -> String {
    let j = JsonDiagram {
        genus: spec.genus,
        curves: spec.curves.clone(),
        options: if spec.many_curves { vec!["many-curves".into()] } else { Vec::new() },
        crossings: spec.crossings.clone(),
        cycles: spec
            .cycles
            .iter()
            .map(|c| JsonCycle {
                curve: c.curve.clone(),
                visits: c.visits.iter().map(|(i, s)| format!("{i}:{s}")).collect(),
            })
            .collect(),
        regions: spec
            .regions
            .iter()
            .map(|r| JsonRegion { genus: r.genus, boundary: r.boundary.iter().map(ref_token).collect() })
            .collect(),
    };
    serde_json::to_string_pretty(&j).expect("diagram json")
}
