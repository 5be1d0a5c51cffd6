use super::*;
use crate::discharging;
use crate::reducer::{self, Configuration};

/// Cycle lengths up to `max` by brute force over vertex sequences.
fn naive_cycle_lengths(g: &PlaneGraph, max: usize) -> BTreeSet<usize> {
    fn extend(g: &PlaneGraph, path: &mut Vec<Vertex>, max: usize, out: &mut BTreeSet<usize>) {
        let (s, last) = (path[0], *path.last().unwrap());
        for &w in g.neighbors(last) {
            if w == s && path.len() >= 3 {
                out.insert(path.len());
            } else if w > s && !path.contains(&w) && path.len() < max {
                path.push(w);
                extend(g, path, max, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for s in 0..g.n() {
        extend(g, &mut vec![s], max, &mut out);
    }
    out
}

#[test]
fn class_reports() {
    let r = verify_class(&shapes::cycle(9));
    assert!(r.in_class());
    assert_eq!(r.to_string(), "in-class girth=9");
    let r = verify_class(&shapes::k4());
    assert!(!r.in_class());
    assert_eq!(r.forbidden(), vec![4]);
    assert_eq!(r.to_string(), "out-of-class girth=3 forbidden=4 cycles=3,4");
    let r = verify_class(&curated_entry("triangle-pendant").unwrap().graph);
    assert_eq!(r.to_string(), "in-class girth=3");
    assert_eq!(verify_class(&shapes::path(4)).to_string(), "in-class girth=none");
}

#[test]
fn subdivision_of_k4() {
    let e = gen_subdivision(&shapes::k4(), 2, 0).unwrap();
    // Each of the six edges gains two interior vertices.
    assert_eq!(e.stats.n, 4 + 6 * 2);
    assert_eq!(e.stats.m, 6 * 3);
    let r = verify_class(&e.graph);
    assert!(r.in_class());
    assert_eq!(r.cycle_lengths, [9, 12].into());
    assert_eq!(r.cycle_lengths, naive_cycle_lengths(&e.graph, 12));
}

#[test]
fn subdivision_edge_cases() {
    let e = gen_subdivision(&shapes::cycle(3), 0, 7).unwrap();
    assert_eq!(e.graph.to_text(), shapes::cycle(3).with_outer(e.graph.outer_face_index()).to_text());
    assert_eq!(e.stats.n, 3);
    let square = shapes::cycle(4);
    assert!(matches!(gen_subdivision(&square, 1, 0), Err(CorpusError::PreconditionViolated(_))));
    assert!(gen_subdivision(&square, 2, 0).is_ok());
}

#[test]
fn subdivision_seed_picks_the_outer_face() {
    let faces: BTreeSet<usize> =
        (0..16).map(|s| gen_subdivision(&shapes::k4(), 2, s).unwrap().graph.outer().len()).collect();
    assert_eq!(faces, [9].into());
    let outers: BTreeSet<Vec<Vertex>> =
        (0..16).map(|s| gen_subdivision(&shapes::k4(), 2, s).unwrap().graph.outer().to_vec()).collect();
    assert!(outers.len() > 1);
}

#[test]
fn cactus_shapes() {
    let e = gen_triangle_cactus(1, 3).unwrap();
    assert_eq!((e.stats.n, e.stats.m), (3, 3));
    for seed in 0..40 {
        let e = gen_triangle_cactus(2, seed).unwrap();
        let r = verify_class(&e.graph);
        assert!(r.in_class());
        assert_eq!(r.cycle_lengths, naive_cycle_lengths(&e.graph, 12));
        assert!(e.stats.n == 4 || (e.stats.n == 5 && r.cycle_lengths == [3].into()));
    }
    assert!(matches!(gen_triangle_cactus(0, 0), Err(CorpusError::PreconditionViolated(_))));
}

#[test]
fn cactus_cycles_are_its_triangles() {
    for seed in 0..30 {
        let e = gen_triangle_cactus(8, seed).unwrap();
        let tris = e.graph.short_cycles(12);
        assert!(tris.iter().all(|c| c.len() == 3));
        // Each triangle contributes two vertices beyond the first block.
        assert_eq!(e.stats.n, 1 + e.stats.m - tris.len());
        assert_eq!(e.graph.outer().len(), e.stats.face_degrees.keys().max().copied().unwrap());
    }
}

#[test]
fn generators_are_deterministic() {
    for family in FAMILIES {
        for seed in 0..10 {
            let a = generate(family, seed).unwrap();
            let b = generate(family, seed).unwrap();
            assert_eq!(a.graph.to_text(), b.graph.to_text());
            assert_eq!(a.provenance, format!("{family}:{seed}"));
            assert!(verify_class(&a.graph).in_class(), "{}", a.name);
        }
    }
    assert!(matches!(generate("grid", 0), Err(CorpusError::UnknownFamily(_))));
}

#[test]
fn theta_graphs() {
    let e = gen_theta([1, 2, 8], 0).unwrap();
    assert_eq!(e.stats.n, 10);
    assert_eq!(verify_class(&e.graph).cycle_lengths, [3, 9, 10].into());
    assert!(matches!(gen_theta([1, 2, 6], 0), Err(CorpusError::PreconditionViolated(_))));
    assert!(matches!(gen_theta([1, 1, 5], 0), Err(CorpusError::PreconditionViolated(_))));
    for t in theta_triples(16) {
        let e = gen_theta(t, 1).unwrap();
        assert!(e.stats.n <= 16);
        assert_eq!(verify_class(&e.graph).cycle_lengths, naive_cycle_lengths(&e.graph, 12));
        assert!(verify_class(&e.graph).in_class());
    }
}

#[test]
fn curated_entries_are_in_class_and_match_their_audits() {
    let all = curated();
    for name in ["c9-bare", "l4-exerciser", "tetrad-exerciser", "special-2"] {
        assert!(all.iter().any(|e| e.name == name), "{name}");
    }
    for e in &all {
        assert!(verify_class(&e.graph).in_class(), "{}", e.name);
        assert_eq!(e.provenance, format!("curated:{}", e.name));
        if let Some(expect) = e.expect {
            let r = discharging::audit(&e.graph).unwrap();
            assert_eq!(r.verdict_block() + "\n", expect, "{}", e.name);
        }
    }
}

#[test]
fn exercisers_present_their_configuration_first() {
    let g = curated_entry("l4-exerciser").unwrap().graph;
    assert_eq!(g.outer_cycle().unwrap().len(), 10);
    let Some(Configuration::BadInternal5Face { face, .. }) = reducer::find_configuration(&g) else {
        panic!("bad 5-face is not first")
    };
    assert!(discharging::classify(&g).truly_internal[face]);
    let g = curated_entry("tetrad-exerciser").unwrap().graph;
    assert_eq!(g.outer_cycle().unwrap().len(), 10);
    assert!(matches!(reducer::find_configuration(&g), Some(Configuration::Tetrad { .. })));
}

#[test]
fn lift_instances_hold_their_configurations_inside_a_twelve_cycle() {
    let g = curated_entry("five-face-lifts").unwrap().graph;
    assert_eq!(g.outer_cycle().unwrap().len(), 12);
    let Some(Configuration::BadInternal5Face { face, .. }) = reducer::find_bad_5face(&g) else {
        panic!("no bad 5-face")
    };
    assert!(discharging::classify(&g).truly_internal[face]);
    let g = curated_entry("tetrad-lifts").unwrap().graph;
    assert_eq!(g.outer_cycle().unwrap().len(), 12);
    assert!(matches!(reducer::find_tetrad(&g), Some(Configuration::Tetrad { .. })));
}

#[test]
fn standard_corpus_spans_the_classification_flags() {
    let corpus = standard();
    let small: Vec<&CorpusEntry> = corpus.iter().filter(|e| e.stats.n <= 16).collect();
    assert!(small.len() >= 30, "{}", small.len());
    let mut seen = BTreeSet::new();
    for e in &small {
        let g = &e.graph;
        let cls = discharging::classify(g);
        let internal_faces = (0..g.faces().len()).filter(|&f| cls.face_internal[f]);
        for f in internal_faces {
            seen.insert(match g.faces()[f].degree {
                3 => "3-face",
                5 => "5-face",
                7 => "7-face",
                d if d >= 9 => "9+-face",
                _ => "other-face",
            });
        }
        seen.insert(if (0..g.n()).any(|v| cls.internal(v)) { "internal" } else { "no-internal" });
        if cls.special2.iter().any(|&b| b) {
            seen.insert("special-2");
        }
        if cls.bad3.iter().any(|&b| b) {
            seen.insert("bad-3");
        }
    }
    for flag in ["3-face", "5-face", "7-face", "9+-face", "internal", "no-internal", "special-2", "bad-3"] {
        assert!(seen.contains(flag), "{flag}");
    }
}
