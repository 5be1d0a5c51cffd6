use super::*;
use crate::plane_graph::shapes::*;
use ElementRef::{Face, Outer, Vertex as V};

fn polar(r: f64, i: usize, k: usize) -> (f64, f64) {
    let t = -2.0 * std::f64::consts::PI * i as f64 / k as f64;
    (r * t.cos(), r * t.sin())
}

/// `k`-cycle on a circle plus a centre vertex `k` joined to `spokes`.
fn wheel_part(k: usize, spokes: &[usize], extra: &[(usize, usize)]) -> PlaneGraph {
    let mut coords: Vec<(f64, f64)> = (0..k).map(|i| polar(1.0, i, k)).collect();
    coords.push((0.0, 0.0));
    let edges: Vec<(usize, usize)> =
        (0..k).map(|i| (i, (i + 1) % k)).chain(spokes.iter().map(|&s| (k, s))).chain(extra.iter().copied()).collect();
    PlaneGraph::from_drawing(&coords, &edges, &(0..k).collect::<Vec<_>>()).unwrap()
}

fn face_with(g: &PlaneGraph, verts: &[usize]) -> usize {
    let want: BTreeSet<usize> = verts.iter().copied().collect();
    (0..g.faces().len()).find(|&f| f != g.outer_face_index() && g.faces()[f].vertex_set() == want).unwrap()
}

#[test]
fn initial_charges_sum_to_zero() {
    for g in [cycle(3), cycle(12), k4(), cube(), wheel_part(11, &[0, 1, 8], &[])] {
        let l = initial_charges(&g);
        assert_eq!(l.total(), Charge::thirds(0));
    }
    let g = cycle(12);
    assert_eq!(initial_charges(&g).charge(Outer), Charge::thirds(48));
    assert_eq!(initial_charges(&cube()).charge(V(0)), Charge::thirds(-3));
}

#[test]
fn triangles_end_at_zero() {
    let g = k4();
    let cls = classify(&g);
    let l = run_rules(&g, &cls);
    for f in (0..g.faces().len()).filter(|&f| cls.face_internal[f]) {
        assert_eq!(l.initial(Face(f)), Charge::thirds(-3));
        assert_eq!(l.charge(Face(f)), Charge::thirds(0));
    }
    assert!(cls.bad3[3]);
}

#[test]
fn classification_flags() {
    // 11-cycle with an internal vertex 11 on the triangle 0 1 11; the other
    // faces are a 9-face and a 5-face through 9 and 10. The triangle and the
    // 5-face make a 6-cycle, which the rules do not care about.
    let g = wheel_part(11, &[0, 1, 8], &[]);
    let cls = classify(&g);
    assert!(cls.bad3[11]);
    assert!(cls.special2[9] && cls.special2[10]);
    assert!(!cls.special2[3], "2-vertex on the 9-face only");
    let tri = face_with(&g, &[0, 1, 11]);
    assert!(cls.face_internal[tri] && !cls.truly_internal[tri]);
    assert!(!cls.truly_internal[g.outer_face_index()]);
    assert!(!cls.truly_internal[face_with(&k4(), &[0, 1, 3])]);
}

#[test]
fn rule_amounts_on_a_small_instance() {
    let g = wheel_part(11, &[0, 1, 8], &[]);
    let cls = classify(&g);
    let l = run_rules(&g, &cls);
    let nine = face_with(&g, &[11, 1, 2, 3, 4, 5, 6, 7, 8]);
    let five = face_with(&g, &[11, 8, 9, 10, 0]);
    assert_eq!(l.sent(Face(nine), V(11)), Charge::thirds(2), "7+-face to a bad 3-vertex");
    assert_eq!(l.sent(Face(five), V(11)), Charge::thirds(1));
    assert_eq!(l.sent(Outer, V(9)), Charge::thirds(5), "special 2-vertex");
    assert_eq!(l.sent(Outer, V(3)), Charge::thirds(4), "non-special 2-vertex");
    assert_eq!(l.sent(Outer, V(0)), Charge::thirds(4), "3-vertex on a 3-face");
    assert_eq!(l.sent(Outer, V(8)), Charge::thirds(3));
    // 15 - 2 (bad vertex) - 6 * 2 (2-vertices) leaves 1 for C0.
    assert_eq!(l.sent(Face(nine), Outer), Charge::thirds(1));
    for t in l.log() {
        if let Some(allowed) = t.rule.amounts() {
            assert!(allowed.contains(&t.thirds), "{t}");
        }
    }
    assert_eq!(l.total(), Charge::thirds(0));
}

#[test]
fn surplus_runs_last() {
    let g = wheel_part(11, &[0, 1, 8], &[]);
    let cls = classify(&g);
    let l = run_rules(&g, &cls);
    let first = l.log().iter().position(|t| t.rule == Rule::Surplus).unwrap();
    assert!(l.log()[first..].iter().all(|t| t.rule == Rule::Surplus));
    let nine = face_with(&g, &[11, 1, 2, 3, 4, 5, 6, 7, 8]);
    assert_eq!(l.charge(Face(nine)), Charge::thirds(0));
    // Sending the surplus before the rules would leave the face negative.
    let mut early = initial_charges(&g);
    apply_rule(&g, &cls, &mut early, Rule::Surplus);
    for rule in [Rule::R1, Rule::R2, Rule::R3, Rule::R4] {
        apply_rule(&g, &cls, &mut early, rule);
    }
    assert_eq!(early.charge(Face(nine)), Charge::thirds(-14));
}

#[test]
fn lone_degree_five_vertex_keeps_its_charge() {
    let g = wheel_part(25, &[0, 5, 10, 15, 20], &[]);
    let cls = classify(&g);
    let l = run_rules(&g, &cls);
    assert_eq!(l.charge(V(25)), Charge::thirds(3));
}

#[test]
fn poor_four_vertex() {
    // Centre 16 on the triangle 16 0 1 with two more spokes.
    let g = wheel_part(16, &[0, 1, 8, 12], &[]);
    let cls = classify(&g);
    let opposite = face_with(&g, &[16, 8, 9, 10, 11, 12]);
    let beside = face_with(&g, &[16, 1, 2, 3, 4, 5, 6, 7, 8]);
    assert!(cls.is_poor(16, opposite));
    assert!(!cls.is_poor(16, beside));
    let l = run_rules(&g, &cls);
    assert_eq!(l.sent(Face(beside), V(16)), Charge::thirds(0));
}

#[test]
fn adjacency_means_sharing_an_edge() {
    let g = wheel_part(16, &[0, 1, 8, 12], &[]);
    let tri = face_with(&g, &[16, 0, 1]);
    let opposite = face_with(&g, &[16, 8, 9, 10, 11, 12]);
    let beside = face_with(&g, &[16, 1, 2, 3, 4, 5, 6, 7, 8]);
    assert!(faces_adjacent(&g, tri, beside));
    assert!(!faces_adjacent(&g, tri, opposite), "they only share the centre");
}

#[test]
fn bad_runs_along_a_face() {
    let g = cycle(9);
    let cls = classify(&g);
    assert!(consecutive_bad_pattern(&g, &cls, 0).is_empty());
    let g = k4();
    let cls = classify(&g);
    let runs = consecutive_bad_pattern(&g, &cls, face_with(&g, &[0, 1, 3]));
    assert_eq!(runs, vec![BadRun { vertices: vec![3], triangles_ok: None }]);
}

#[test]
fn audit_rejects_out_of_class_and_reports_in_text() {
    assert!(matches!(audit(&cube()), Err(DischargeError::OutOfClass(_))));
    assert!(matches!(audit(&cycle(13)), Err(DischargeError::OutOfClass(_))));
    // A bare 9-cycle has no internal vertex, so nothing prevents its inner
    // face from paying 2/3 to each of nine 2-vertices.
    let g = cycle(9);
    let r = audit(&g).unwrap();
    let text = r.to_string();
    assert!(text.starts_with("v0 init=-6/3 final=0/3\n"));
    assert!(text.ends_with("conservation=OK total=0/3"));
    assert_eq!(r.negative_faces.len(), 1);
    assert_eq!(r.ledger.charge(Face(r.negative_faces[0])), Charge::thirds(-3));
    assert_eq!(r.outer_final(), Charge::thirds(3 * 13 - 9 * 4));
    assert!(r.configuration.is_none());
    assert!(text.contains("internal_faces_nonnegative=FAIL\n"));
    assert!(text.contains("configuration=none\n"));
}
