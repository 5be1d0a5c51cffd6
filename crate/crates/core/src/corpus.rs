//! Plane graphs without 4-, 6- and 8-cycles: class checks, seeded
//! generators and the curated instances shipped in `corpus/`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::plane_graph::{shapes, GraphError, PlaneGraph, Vertex};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stats {
    pub n: usize,
    pub m: usize,
    pub girth: Option<usize>,
    /// Degrees of all faces, the outer one included.
    pub face_degrees: BTreeMap<usize, usize>,
}

impl Stats {
    pub fn of(g: &PlaneGraph) -> Stats {
        let mut face_degrees = BTreeMap::new();
        for f in g.faces() {
            *face_degrees.entry(f.degree).or_default() += 1;
        }
        Stats { n: g.n(), m: g.edge_count(), girth: g.girth(), face_degrees }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: PlaneGraph,
    /// `curated:<name>` or `<family>:<seed>`.
    pub provenance: String,
    pub stats: Stats,
    /// Expected audit verdict block, for curated entries that ship one.
    pub expect: Option<&'static str>,
}

impl CorpusEntry {
    fn new(name: impl Into<String>, graph: PlaneGraph, provenance: impl Into<String>) -> CorpusEntry {
        let stats = Stats::of(&graph);
        CorpusEntry { name: name.into(), graph, provenance: provenance.into(), stats, expect: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub simple: bool,
    pub connected: bool,
    pub genus_zero: bool,
    pub girth: Option<usize>,
    /// Lengths of all cycles of length at most 12.
    pub cycle_lengths: BTreeSet<usize>,
}

impl ClassReport {
    pub fn forbidden(&self) -> Vec<usize> {
        [4, 6, 8].into_iter().filter(|l| self.cycle_lengths.contains(l)).collect()
    }

    pub fn in_class(&self) -> bool {
        self.simple && self.connected && self.genus_zero && self.forbidden().is_empty()
    }
}

fn join(xs: impl IntoIterator<Item = usize>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for ClassReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let girth = self.girth.map_or("none".to_string(), |g| g.to_string());
        if self.in_class() {
            return write!(f, "in-class girth={girth}");
        }
        write!(f, "out-of-class girth={girth}")?;
        for (ok, what) in
            [(self.simple, "not-simple"), (self.connected, "disconnected"), (self.genus_zero, "not-genus-zero")]
        {
            if !ok {
                write!(f, " {what}")?;
            }
        }
        write!(f, " forbidden={} cycles={}", join(self.forbidden()), join(self.cycle_lengths.iter().copied()))
    }
}

pub fn verify_class(g: &PlaneGraph) -> ClassReport {
    let n = g.n();
    let simple = (0..n).all(|v| {
        let nb = g.neighbors(v);
        !nb.contains(&v) && nb.iter().collect::<BTreeSet<_>>().len() == nb.len()
    });
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    if n > 0 {
        seen[0] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    let connected = seen.iter().all(|&s| s);
    let genus_zero = n as i64 - g.edge_count() as i64 + g.faces().len() as i64 == 2;
    let cycle_lengths = g.short_cycles(12).iter().map(|c| c.len()).collect();
    ClassReport { simple, connected, genus_zero, girth: g.girth(), cycle_lengths }
}

/// Replaces every edge of `base` by a path of `k + 1` edges. The seed picks
/// the outer face.
pub fn gen_subdivision(base: &PlaneGraph, k: usize, seed: u64) -> Result<CorpusEntry, CorpusError> {
    if let Some(c) = base.short_cycles(8).iter().find(|c| [4, 6, 8].contains(&((k + 1) * c.len()))) {
        return Err(CorpusError::PreconditionViolated(format!(
            "a {}-cycle becomes a {}-cycle with k={k}",
            c.len(),
            (k + 1) * c.len()
        )));
    }
    let n = base.n();
    let edges: Vec<(Vertex, Vertex)> = base.edges().collect();
    let index: BTreeMap<(Vertex, Vertex), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    // Interior vertices of the path replacing u -> v, in that direction.
    let inner = |u: Vertex, v: Vertex| -> Vec<Vertex> {
        let i = index[&(u.min(v), u.max(v))];
        let ids: Vec<Vertex> = (0..k).map(|j| n + i * k + j).collect();
        if u < v {
            ids
        } else {
            ids.into_iter().rev().collect()
        }
    };
    let mut rot: Vec<Vec<Vertex>> = vec![Vec::new(); n + edges.len() * k];
    for (u, slot) in rot.iter_mut().enumerate().take(n) {
        *slot = base.neighbors(u).iter().map(|&v| inner(u, v).first().copied().unwrap_or(v)).collect();
    }
    for &(u, v) in &edges {
        let chain: Vec<Vertex> = std::iter::once(u).chain(inner(u, v)).chain(std::iter::once(v)).collect();
        for w in chain.windows(3) {
            rot[w[1]] = vec![w[2], w[0]];
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let face = rng.gen_range(0..base.faces().len());
    let walk = &base.faces()[face].boundary;
    let mut outer = Vec::new();
    for i in 0..walk.len() {
        let (a, b) = (walk[i], walk[(i + 1) % walk.len()]);
        outer.push(a);
        if a != b {
            outer.extend(inner(a, b));
        }
    }
    let g = PlaneGraph::build(rot, outer)?;
    Ok(CorpusEntry::new(format!("subdivision-k{k}-s{seed}"), g, format!("subdivision:{seed}")))
}

/// Traces the face to the left of dart `u -> v` in a rotation system.
fn trace(rot: &[Vec<Vertex>], u: Vertex, v: Vertex) -> Vec<Vertex> {
    let mut walk = Vec::new();
    let (mut a, mut b) = (u, v);
    loop {
        walk.push(a);
        let r = &rot[b];
        let i = r.iter().position(|&w| w == a).expect("symmetric rotation");
        let c = r[(i + r.len() - 1) % r.len()];
        (a, b) = (b, c);
        if (a, b) == (u, v) {
            return walk;
        }
    }
}

fn with_longest_outer(rot: Vec<Vec<Vertex>>) -> Result<PlaneGraph, CorpusError> {
    let start = trace(&rot, 0, rot[0][0]);
    let g = PlaneGraph::build(rot, start)?;
    let longest = (0..g.faces().len()).max_by_key(|&f| (g.faces()[f].degree, std::cmp::Reverse(f))).expect("a face");
    Ok(g.with_outer(longest))
}

/// A cactus of `n_blocks` blocks, each a triangle or a bridge, starting
/// with a triangle. The longest face becomes the outer face.
pub fn gen_triangle_cactus(n_blocks: usize, seed: u64) -> Result<CorpusEntry, CorpusError> {
    if n_blocks == 0 {
        return Err(CorpusError::PreconditionViolated("at least one block".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rot: Vec<Vec<Vertex>> = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    for _ in 1..n_blocks {
        let v = rng.gen_range(0..rot.len());
        let at = rng.gen_range(0..=rot[v].len());
        let a = rot.len();
        if rng.gen_bool(0.5) {
            let b = a + 1;
            rot[v].splice(at..at, [a, b]);
            rot.push(vec![v, b]);
            rot.push(vec![a, v]);
        } else {
            rot[v].insert(at, a);
            rot.push(vec![v]);
        }
    }
    let g = with_longest_outer(rot)?;
    Ok(CorpusEntry::new(format!("cactus-b{n_blocks}-s{seed}"), g, format!("cactus:{seed}")))
}

/// Two poles joined by three internally disjoint paths of the given lengths,
/// at most one of which is a single edge. The seed picks the outer face.
pub fn gen_theta(lengths: [usize; 3], seed: u64) -> Result<CorpusEntry, CorpusError> {
    let mut ls = lengths;
    ls.sort_unstable();
    if ls[0] == 0 || ls[1] < 2 {
        return Err(CorpusError::PreconditionViolated(format!("path lengths {lengths:?} do not give a simple graph")));
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let c = lengths[i] + lengths[j];
        if [4, 6, 8].contains(&c) {
            return Err(CorpusError::PreconditionViolated(format!(
                "paths {} and {} close a {c}-cycle",
                lengths[i], lengths[j]
            )));
        }
    }
    // Poles 0 and 1; path p runs 0 -> ... -> 1.
    let mut paths: Vec<Vec<Vertex>> = Vec::new();
    let mut next = 2;
    for &l in &lengths {
        let mut p = vec![0];
        p.extend(next..next + l - 1);
        next += l - 1;
        p.push(1);
        paths.push(p);
    }
    let mut rot: Vec<Vec<Vertex>> = vec![Vec::new(); next];
    rot[0] = paths.iter().map(|p| p[1]).collect();
    rot[1] = paths.iter().rev().map(|p| p[p.len() - 2]).collect();
    for p in &paths {
        for w in p.windows(3) {
            rot[w[1]] = vec![w[2], w[0]];
        }
    }
    let start = trace(&rot, 0, rot[0][0]);
    let g = PlaneGraph::build(rot, start)?;
    let face = ChaCha8Rng::seed_from_u64(seed).gen_range(0..g.faces().len());
    let g = g.with_outer(face);
    let name = format!("theta-{}-{}-{}-s{seed}", lengths[0], lengths[1], lengths[2]);
    Ok(CorpusEntry::new(name, g, format!("theta:{seed}")))
}

/// Families accepted by [`generate`].
pub const FAMILIES: &[&str] = &["cactus", "subdivision", "theta"];

/// One member of `family` chosen by `seed`.
pub fn generate(family: &str, seed: u64) -> Result<CorpusEntry, CorpusError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match family {
        "cactus" => gen_triangle_cactus(rng.gen_range(1..=7), seed),
        "subdivision" => {
            let bases = [shapes::cycle(3), shapes::k4(), shapes::cube(), shapes::star(3)];
            let base = bases.choose(&mut rng).expect("bases");
            gen_subdivision(base, 2, seed)
        }
        "theta" => {
            let triples = theta_triples(16);
            gen_theta(*triples.choose(&mut rng).expect("triples"), seed)
        }
        other => Err(CorpusError::UnknownFamily(other.to_string())),
    }
}

/// Sorted admissible theta path lengths with at most `max_n` vertices.
pub fn theta_triples(max_n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 1..max_n {
        for b in a.max(2)..max_n {
            for c in b..max_n {
                let n = a + b + c - 1;
                let sums = [a + b, a + c, b + c];
                if n <= max_n && sums.iter().all(|s| ![4, 6, 8].contains(s)) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

const CURATED: &[(&str, &str, Option<&str>)] = &[
    ("c9-bare", include_str!("../corpus/c9-bare.pg"), Some(include_str!("../corpus/c9-bare.expect"))),
    ("c5", include_str!("../corpus/c5.pg"), None),
    ("path-6", include_str!("../corpus/path-6.pg"), None),
    ("star-4", include_str!("../corpus/star-4.pg"), None),
    (
        "triangle-pendant",
        include_str!("../corpus/triangle-pendant.pg"),
        Some(include_str!("../corpus/triangle-pendant.expect")),
    ),
    ("bad-vertex", include_str!("../corpus/bad-vertex.pg"), Some(include_str!("../corpus/bad-vertex.expect"))),
    ("special-2", include_str!("../corpus/special-2.pg"), Some(include_str!("../corpus/special-2.expect"))),
    ("seven-face", include_str!("../corpus/seven-face.pg"), Some(include_str!("../corpus/seven-face.expect"))),
    (
        "nine-face-two-triangles",
        include_str!("../corpus/nine-face-two-triangles.pg"),
        Some(include_str!("../corpus/nine-face-two-triangles.expect")),
    ),
    ("l4-exerciser", include_str!("../corpus/l4-exerciser.pg"), Some(include_str!("../corpus/l4-exerciser.expect"))),
    (
        "five-face-lifts",
        include_str!("../corpus/five-face-lifts.pg"),
        Some(include_str!("../corpus/five-face-lifts.expect")),
    ),
    (
        "tetrad-exerciser",
        include_str!("../corpus/tetrad-exerciser.pg"),
        Some(include_str!("../corpus/tetrad-exerciser.expect")),
    ),
    ("tetrad-lifts", include_str!("../corpus/tetrad-lifts.pg"), Some(include_str!("../corpus/tetrad-lifts.expect"))),
];

/// The hand-built instances stored in `corpus/`.
pub fn curated() -> Vec<CorpusEntry> {
    CURATED
        .iter()
        .map(|&(name, text, expect)| {
            let g = PlaneGraph::from_text(text).unwrap_or_else(|e| panic!("corpus/{name}.pg: {e}"));
            CorpusEntry { expect, ..CorpusEntry::new(name, g, format!("curated:{name}")) }
        })
        .collect()
}

pub fn curated_entry(name: &str) -> Option<CorpusEntry> {
    curated().into_iter().find(|e| e.name == name)
}

/// Curated entries plus a fixed spread of generated ones.
pub fn standard() -> Vec<CorpusEntry> {
    let mut out = curated();
    for blocks in 1..=7 {
        for seed in [1, 2] {
            out.push(gen_triangle_cactus(blocks, seed).expect("cactus"));
        }
    }
    for (i, t) in theta_triples(16).into_iter().step_by(4).enumerate() {
        out.push(gen_theta(t, i as u64).expect("admissible lengths"));
    }
    for (base, seed) in
        [(shapes::cycle(3), 0), (shapes::star(3), 0), (shapes::path(3), 0), (shapes::k4(), 0), (shapes::k4(), 3)]
    {
        out.push(gen_subdivision(&base, 2, seed).expect("k=2 keeps the class"));
    }
    out
}

#[cfg(test)]
mod tests;
