//! Regenerates the searched fixtures under `fixtures/`.
//!
//! Every fixture comes from a fixed seed, so rerunning rewrites identical
//! files. Usage: `cargo run --example search_fixtures [OUT_DIR]`.

use std::fs;
use std::path::{Path, PathBuf};

use bgit::bicorn::{
    bicorn_path, enumerate_bicorns_between, lemma18_evidence, slim_witness, EvidenceOutcome, WitnessRoute,
};
use bgit::diagram::{
    parse_diagram, serialize_diagram, BoundaryRef, CutSet, DiagramSpec, IntersectionDiagram, RegionSpec,
};
use bgit::fuzz::{certify, random_assembly, FuzzStats};
use bgit::projection::{Projection, SubsurfaceSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: usize = 2_000_000;

/// First certified candidate (or raw candidate, when `raw`) accepted by `keep`.
fn search(
    seed: u64,
    curves: usize,
    raw: bool,
    counts: impl Fn(&mut ChaCha8Rng) -> Vec<usize>,
    keep: impl Fn(&IntersectionDiagram) -> bool,
) -> (IntersectionDiagram, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = FuzzStats::default();
    for attempt in 1..=CAP {
        let c = counts(&mut rng);
        let spec = random_assembly(&mut rng, curves, &c);
        let d = if raw {
            IntersectionDiagram::from_spec_inferring_genus(spec).ok()
        } else {
            certify(spec, &mut stats)
        };
        if let Some(d) = d.filter(|d| keep(d)) {
            return (d, attempt);
        }
    }
    panic!("seed {seed}: nothing found in {CAP} candidates");
}

fn with_regions(d: &IntersectionDiagram, regions: Vec<RegionSpec>) -> Option<IntersectionDiagram> {
    let mut spec: DiagramSpec = d.spec().clone();
    spec.regions = regions;
    spec.genus = 0;
    IntersectionDiagram::from_spec_inferring_genus(spec).ok()
}

/// A corner reference naming each face, indexed by face.
fn face_refs(d: &IntersectionDiagram) -> Vec<BoundaryRef> {
    let mut out = vec![None; d.face_count()];
    for (k, x) in d.crossings().iter().enumerate() {
        for slot in 0..4u8 {
            let f = d.face_of_dart(d.opposite(4 * k + slot as usize));
            out[f].get_or_insert(BoundaryRef::Corner { crossing: x.id, corner: slot });
        }
    }
    out.into_iter().map(Option::unwrap).collect()
}

fn clean_pair(d: &IntersectionDiagram) -> bool {
    d.detect_bigons(0, 1).is_empty() && (0..2).all(|c| d.is_essential(&d.curve_walk(c)))
}

fn path_len(d: &IntersectionDiagram) -> usize {
    bicorn_path(d, 0, 1, None).map(|p| p.steps.len()).unwrap_or(0)
}

fn separating(d: &IntersectionDiagram, c: usize) -> bool {
    let mut cut = CutSet::new(d);
    cut.add_curve(d, c);
    d.complement(&cut).components.len() == 2
}

fn write(dir: &Path, name: &str, d: &IntersectionDiagram, note: &str) {
    let text = format!("# {note}\n{}", serialize_diagram(d.spec()));
    assert_eq!(parse_diagram(&text).unwrap().spec(), d.spec(), "{name} does not round-trip");
    fs::write(dir.join(format!("{name}.diag")), text).unwrap();
    let i: Vec<String> = (0..d.curve_labels().len())
        .flat_map(|a| (a + 1..d.curve_labels().len()).map(move |b| (a, b)))
        .map(|(a, b)| format!("{}{}={}", d.label(a), d.label(b), d.crossings_between(a, b).len()))
        .collect();
    println!("{name}: genus {} crossings {}", d.genus(), i.join(" "));
}

fn main() {
    let dir: PathBuf = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| "fixtures".into());
    fs::create_dir_all(&dir).unwrap();

    // a cancelling crossing pair on a torus leaves two bigon faces; a handle
    // in one of them leaves exactly one
    let (t, n) = search(1, 2, true, |_| vec![3], |d| d.genus() == 1 && d.detect_bigons(0, 1).len() == 2);
    let f = t.faces().iter().position(|f| f.degree() == 2).unwrap();
    let d = with_regions(&t, vec![RegionSpec { genus: 1, boundary: vec![face_refs(&t)[f].clone()] }]).unwrap();
    assert!(d.detect_bigons(0, 1).len() == 1 && (0..2).all(|c| d.is_essential(&d.curve_walk(c))));
    write(&dir, "wiggled", &d, &format!("seed 1, candidate {n}: one bigon"));

    // two same-sign crossings on a torus, one face given a handle
    let (d, n) = search(2, 2, false, |_| vec![2], |d| {
        d.genus() == 1 && d.crossings().iter().all(|x| x.sign == 1)
    });
    let refs = face_refs(&d);
    let d = with_regions(&d, vec![RegionSpec { genus: 1, boundary: vec![refs[0].clone()] }]).unwrap();
    assert!(d.genus() == 2 && clean_pair(&d));
    write(&dir, "same_signs", &d, &format!("seed 2, candidate {n}: same configuration, genus 2"));

    // lens on the sphere, its four bigon faces glued into two annuli
    let (lens, n) = search(3, 2, true, |_| vec![2], |d| {
        d.genus() == 0 && d.crossings()[0].sign != d.crossings()[1].sign
    });
    let refs = face_refs(&lens);
    let d = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]]
        .iter()
        .filter_map(|p| {
            let pair = |a: usize, b: usize| RegionSpec { genus: 0, boundary: vec![refs[a].clone(), refs[b].clone()] };
            with_regions(&lens, vec![pair(p[0], p[1]), pair(p[2], p[3])])
        })
        .find(|d| d.genus() == 2 && clean_pair(d))
        .expect("no gluing of the lens is clean");
    write(&dir, "opposite_signs", &d, &format!("seed 3, candidate {n}: opposite configuration, genus 2"));

    // genus 2 filling pair with the fewest crossings
    let (d, n) = search(4, 2, false, |_| vec![4], |d| d.genus() == 2);
    write(&dir, "filling_g2", &d, &format!("seed 4, candidate {n}: genus 2 filling pair"));

    // genus 2 with a long default path
    let (d, n) = search(5, 2, false, |r| vec![r.gen_range(5..=8)], |d| d.genus() == 2 && path_len(d) >= 5);
    write(&dir, "extension", &d, &format!("seed 5, candidate {n}: default path of {} bicorns", path_len(&d)));

    // triple with a bicorn meeting the third curve at least four times
    let (d, n) = search(6, 3, false, |r| (0..3).map(|_| r.gen_range(2..=5)).collect(), |d| {
        enumerate_bicorns_between(d, 0, 1).is_ok_and(|all| {
            all.iter().any(|g| {
                slim_witness(d, g, 2).is_ok_and(|o| o.meets_gamma >= 4 && o.route == WitnessRoute::Surgery)
            })
        })
    });
    write(&dir, "slim_surgery", &d, &format!("seed 6, candidate {n}: surgery witness"));

    // triple with a proper bicorn disjoint from the third curve
    let (d, n) = search(7, 3, false, |r| (0..3).map(|_| r.gen_range(2..=4)).collect(), |d| {
        enumerate_bicorns_between(d, 0, 1).is_ok_and(|all| {
            all.iter().any(|g| g.arcs().is_some() && slim_witness(d, g, 2).is_ok_and(|o| o.meets_gamma == 0))
        })
    });
    write(&dir, "slim_disjoint", &d, &format!("seed 7, candidate {n}: bicorn missing the third curve"));

    // triple where every bicorn of the B-C path crosses A at least four times
    let (d, n) = search(8, 3, false, |r| vec![r.gen_range(4..=6), r.gen_range(4..=6), r.gen_range(2..=4)], |d| {
        bicorn_path(d, 1, 2, None)
            .ok()
            .and_then(|p| lemma18_evidence(d, 0, &p).ok())
            .is_some_and(|e| matches!(e, EvidenceOutcome::Found(_)))
    });
    write(&dir, "surgery_pair", &d, &format!("seed 8, candidate {n}: both surgeries along one path"));

    // C separates a genus 2 surface into two one-holed tori; A and B are disjoint
    let (d, n) = search(9, 3, false, |r| vec![0, 2 * r.gen_range(1..=2), 2 * r.gen_range(1..=2)], |d| {
        d.genus() == 2 && separating(d, 2) && {
            let e = d.edges()[d.edge_id(2, 0)];
            [e.tail, e.head].iter().all(|&h| {
                SubsurfaceSpec::with_region(d, &[2], d.region_of_face(d.face_of_dart(h))).is_ok_and(|y| {
                    y.complexity() == 1
                        && [0, 1].iter().all(|&c| y.pi_a(c).is_ok_and(|p| matches!(p.projection, Projection::Arcs(_))))
                })
            })
        }
    });
    write(&dir, "one_holed_torus", &d, &format!("seed 9, candidate {n}: C separating"));

    // C non-separating; both projections have arcs with ends on both boundary curves
    let (d, n) = search(10, 3, false, |r| vec![0, r.gen_range(2..=3), r.gen_range(2..=3)], |d| {
        d.genus() == 2 && !separating(d, 2) && {
            let e = d.edges()[d.edge_id(2, 0)];
            SubsurfaceSpec::with_region(d, &[2], d.region_of_face(d.face_of_dart(e.tail))).is_ok_and(|y| {
                [0, 1].iter().all(|&c| {
                    y.pi_a(c).is_ok_and(|p| match p.projection {
                        Projection::Arcs(a) => a.len() >= 2 && a.iter().any(|x| x.endpoints_on[0] != x.endpoints_on[1]),
                        _ => false,
                    })
                })
            })
        }
    });
    write(&dir, "two_boundary", &d, &format!("seed 10, candidate {n}: C non-separating"));
}
