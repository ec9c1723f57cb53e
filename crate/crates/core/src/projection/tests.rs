use super::*;
use crate::fuzz::fuzz_disjoint_hosts;

/// The subsurfaces on both sides of `C`, when they differ and have essential curves.
fn sides(d: &IntersectionDiagram) -> Vec<SubsurfaceSpec<'_>> {
    let c = d.curve("C").unwrap();
    let e = d.edges()[d.edge_id(c, 0)];
    let mut out: Vec<SubsurfaceSpec> = Vec::new();
    for h in [e.tail, e.head] {
        let y = SubsurfaceSpec::with_region(d, &[c], d.region_of_face(d.face_of_dart(h))).unwrap();
        if y.complexity() >= 1 && !out.iter().any(|o| o.component == y.component) {
            out.push(y);
        }
    }
    out
}

fn arcs(p: &PiA) -> Vec<ProjectedArc> {
    match &p.projection {
        Projection::Arcs(a) => a.clone(),
        _ => Vec::new(),
    }
}

#[test]
fn fuzzed_hosts_satisfy_both_lipschitz_checks() {
    let (hosts, stats) = fuzz_disjoint_hosts(5, 60, 4, 200_000);
    assert!(hosts.len() >= 20, "{stats:?}");
    let (mut arc_cases, mut pi0_cases) = (0, 0);
    for d in &hosts {
        let (a, b) = (d.curve("A").unwrap(), d.curve("B").unwrap());
        for y in sides(d) {
            match y.check_arc_lipschitz(a, b) {
                Ok(_) => arc_cases += 1,
                Err(ProjectionError::Hypothesis(_)) => {}
                Err(e) => panic!("{d}\n{e}"),
            }
            let mut all = arcs(&y.pi_a(a).unwrap());
            all.extend(arcs(&y.pi_a(b).unwrap()));
            for x in &all {
                assert!(y.is_essential_arc(&x.carrier));
                assert!(!y.pi_0(x).unwrap().is_empty());
            }
            for (i, x) in all.iter().enumerate() {
                for z in &all[i..] {
                    let chain = y.check_pi0_lipschitz(x, z);
                    assert!(chain.is_ok(), "{d}\n{:?}\n{x:?} {z:?}: {chain:?}", y.summary_json());
                    pi0_cases += 1;
                }
            }
        }
    }
    assert!(arc_cases > 0 && pi0_cases > 0, "{arc_cases} {pi0_cases}");
}

