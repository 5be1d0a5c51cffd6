//! IF-colorings: an independent class `I` and a forest-inducing class `F`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dsu::RollbackDsu;
use crate::plane_graph::{CycleRef, PlaneGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    I,
    F,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::I => Color::F,
            Color::F => Color::I,
        }
    }
}

/// How to read "no F-path outside C joining two vertices of C".
///
/// `Strict` forbids every path whose internal vertices are F and off `C`,
/// whatever the colors of its two ends. `Lenient` only forbids such paths
/// when both ends are F as well, i.e. genuine F-paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    Strict,
    #[default]
    Lenient,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "strict" => Ok(Mode::Strict),
            "lenient" => Ok(Mode::Lenient),
            _ => Err(format!("unknown mode `{s}` (expected strict|lenient)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Strict => "strict",
            Mode::Lenient => "lenient",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring has length {got}, graph has {expected} vertices")]
    WrongLength { expected: usize, got: usize },
    #[error("invalid coloring character `{0}`")]
    BadChar(char),
    #[error("not an IF-coloring: {0}")]
    NotAnIfColoring(Witness),
}

/// Partial assignment of colors to the vertices of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IfColoring(Vec<Option<Color>>);

impl IfColoring {
    pub fn unset(n: usize) -> Self {
        IfColoring(vec![None; n])
    }

    pub fn from_vec(v: Vec<Option<Color>>) -> Self {
        IfColoring(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.0[v]
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        self.0[v] = Some(c);
    }

    pub fn clear(&mut self, v: Vertex) {
        self.0[v] = None;
    }

    pub fn is(&self, v: Vertex, c: Color) -> bool {
        self.0[v] == Some(c)
    }

    pub fn is_total(&self) -> bool {
        self.0.iter().all(Option::is_some)
    }

    pub fn class(&self, c: Color) -> BTreeSet<Vertex> {
        (0..self.len()).filter(|&v| self.is(v, c)).collect()
    }

    pub fn as_slice(&self) -> &[Option<Color>] {
        &self.0
    }

    pub fn parse(s: &str, n: usize) -> Result<Self, ColoringError> {
        let s = s.trim();
        if s.chars().count() != n {
            return Err(ColoringError::WrongLength { expected: n, got: s.chars().count() });
        }
        s.chars()
            .map(|ch| match ch {
                'I' => Ok(Some(Color::I)),
                'F' => Ok(Some(Color::F)),
                '.' => Ok(None),
                other => Err(ColoringError::BadChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(IfColoring)
    }
}

impl fmt::Display for IfColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            f.write_str(match c {
                Some(Color::I) => "I",
                Some(Color::F) => "F",
                None => ".",
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// An edge with both ends colored I.
    IEdge(Vertex, Vertex),
    /// A cycle all of whose vertices are F.
    FCycle(Vec<Vertex>),
    /// A path joining two distinct vertices of the reference cycle whose
    /// internal vertices are F and off the cycle.
    OuterPath(Vec<Vertex>),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |p: &[Vertex]| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Witness::IEdge(u, v) => write!(f, "I-edge {u},{v}"),
            Witness::FCycle(c) => write!(f, "F-cycle {}", join(c)),
            Witness::OuterPath(p) => write!(f, "F-path {}", join(p)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Valid,
    Invalid(Witness),
}

impl Certificate {
    pub fn is_valid(&self) -> bool {
        matches!(self, Certificate::Valid)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Certificate::Valid => None,
            Certificate::Invalid(w) => Some(w),
        }
    }
}

/// No edge joins two I-colored vertices.
pub fn is_independent(g: &PlaneGraph, phi: &IfColoring) -> Certificate {
    g.edges()
        .find(|&(u, v)| phi.is(u, Color::I) && phi.is(v, Color::I))
        .map_or(Certificate::Valid, |(u, v)| Certificate::Invalid(Witness::IEdge(u, v)))
}

/// The F-colored vertices induce a forest.
pub fn induces_forest(g: &PlaneGraph, phi: &IfColoring) -> Certificate {
    let mut dsu = RollbackDsu::new(g.n());
    for (u, v) in g.edges() {
        if phi.is(u, Color::F) && phi.is(v, Color::F) && !dsu.union(u, v) {
            // Closing edge found: recover the cycle through a path avoiding it.
            let path = bfs_path(g, u, v, |x| phi.is(x, Color::F), Some((u, v)))
                .expect("endpoints of a closing edge are connected");
            return Certificate::Invalid(Witness::FCycle(path));
        }
    }
    Certificate::Valid
}

/// Both checks: a (possibly partial) IF-coloring.
pub fn is_if_coloring(g: &PlaneGraph, phi: &IfColoring) -> Certificate {
    match is_independent(g, phi) {
        Certificate::Valid => induces_forest(g, phi),
        bad => bad,
    }
}

/// Shortest path from `a` to `b` using only F-colored vertices outside
/// `forbidden`.
pub fn f_path_between(
    g: &PlaneGraph,
    phi: &IfColoring,
    a: Vertex,
    b: Vertex,
    forbidden: &BTreeSet<Vertex>,
) -> Option<Vec<Vertex>> {
    let ok = |x: Vertex| phi.is(x, Color::F) && !forbidden.contains(&x);
    if a == b || !ok(a) || !ok(b) {
        return None;
    }
    bfs_path(g, a, b, ok, None)
}

fn bfs_path(
    g: &PlaneGraph,
    a: Vertex,
    b: Vertex,
    allowed: impl Fn(Vertex) -> bool,
    skip_edge: Option<(Vertex, Vertex)>,
) -> Option<Vec<Vertex>> {
    let mut prev = vec![usize::MAX; g.n()];
    prev[a] = a;
    let mut q = VecDeque::from([a]);
    while let Some(u) = q.pop_front() {
        for &w in g.neighbors(u) {
            if let Some((x, y)) = skip_edge {
                if (u == x && w == y) || (u == y && w == x) {
                    continue;
                }
            }
            if prev[w] != usize::MAX || !allowed(w) {
                continue;
            }
            prev[w] = u;
            if w == b {
                let mut path = vec![b];
                let mut cur = b;
                while cur != a {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            q.push_back(w);
        }
    }
    None
}

/// Whether the endpoint `c` of a path counts under `mode`.
fn endpoint_counts(phi: &IfColoring, c: Vertex, mode: Mode) -> bool {
    match mode {
        Mode::Strict => true,
        Mode::Lenient => phi.is(c, Color::F),
    }
}

/// Finds a path joining two distinct vertices of `on_cycle` whose internal
/// vertices (at least one) are F and off the cycle, with ends admissible
/// under `mode`.
pub(crate) fn find_outer_path(g: &PlaneGraph, phi: &IfColoring, on_cycle: &[bool], mode: Mode) -> Option<Vec<Vertex>> {
    let n = g.n();
    let mut comp = vec![usize::MAX; n];
    for s in 0..n {
        if comp[s] != usize::MAX || on_cycle[s] || !phi.is(s, Color::F) {
            continue;
        }
        // BFS over the F component off the cycle, remembering parents.
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        comp[s] = s;
        let mut order = vec![s];
        let mut head = 0;
        // First attachment: (cycle vertex, component vertex).
        let mut first: Option<(Vertex, Vertex)> = None;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in g.neighbors(u) {
                if on_cycle[w] {
                    if !endpoint_counts(phi, w, mode) {
                        continue;
                    }
                    match first {
                        None => first = Some((w, u)),
                        Some((c0, u0)) if c0 != w => {
                            let trail = |mut x: Vertex| {
                                let mut p = vec![x];
                                while prev[x] != x {
                                    x = prev[x];
                                    p.push(x);
                                }
                                p
                            };
                            // c0 .. u0 -> root -> .. u -> w, shortcut at the LCA.
                            let mut left = trail(u0);
                            let mut right = trail(u);
                            while left.len() > 1 && right.len() > 1 && left[left.len() - 2] == right[right.len() - 2] {
                                left.pop();
                                right.pop();
                            }
                            let mut path = vec![c0];
                            path.extend(left.iter().copied());
                            path.extend(right.iter().rev().skip(1).copied());
                            path.push(w);
                            return Some(path);
                        }
                        _ => {}
                    }
                } else if phi.is(w, Color::F) && comp[w] == usize::MAX {
                    comp[w] = s;
                    prev[w] = u;
                    order.push(w);
                }
            }
        }
    }
    None
}

/// Checks that `phi` is an IF-coloring of `g` with no forbidden path outside
/// `c` joining two vertices of `c`. Unset vertices are treated as unconstrained.
pub fn is_superextension(
    g: &PlaneGraph,
    c: &CycleRef,
    phi: &IfColoring,
    mode: Mode,
) -> Result<Certificate, ColoringError> {
    if let Certificate::Invalid(w) = is_if_coloring(g, phi) {
        return Err(ColoringError::NotAnIfColoring(w));
    }
    let mut on_cycle = vec![false; g.n()];
    for &v in c.verts() {
        on_cycle[v] = true;
    }
    Ok(find_outer_path(g, phi, &on_cycle, mode)
        .map_or(Certificate::Valid, |p| Certificate::Invalid(Witness::OuterPath(p))))
}

/// Independently re-verifies that a witness really is a violation.
pub fn witness_holds(g: &PlaneGraph, phi: &IfColoring, cycle: Option<&CycleRef>, mode: Mode, w: &Witness) -> bool {
    match w {
        Witness::IEdge(u, v) => g.adjacent(*u, *v) && phi.is(*u, Color::I) && phi.is(*v, Color::I),
        Witness::FCycle(cyc) => {
            let distinct: BTreeSet<_> = cyc.iter().collect();
            cyc.len() >= 3
                && distinct.len() == cyc.len()
                && cyc.iter().all(|&v| phi.is(v, Color::F))
                && (0..cyc.len()).all(|i| g.adjacent(cyc[i], cyc[(i + 1) % cyc.len()]))
        }
        Witness::OuterPath(p) => {
            let Some(c) = cycle else { return false };
            let distinct: BTreeSet<_> = p.iter().collect();
            let (a, b) = (p[0], p[p.len() - 1]);
            p.len() >= 3
                && distinct.len() == p.len()
                && c.contains(a)
                && c.contains(b)
                && endpoint_counts(phi, a, mode)
                && endpoint_counts(phi, b, mode)
                && p[1..p.len() - 1].iter().all(|&v| !c.contains(v) && phi.is(v, Color::F))
                && p.windows(2).all(|e| g.adjacent(e[0], e[1]))
        }
    }
}

/// All IF-colorings of `G[V(C)]`, returned as colorings of `g` that are
/// unset off the cycle. Bit `i` of the enumeration index colors the `i`-th
/// cycle vertex I.
pub fn valid_precolorings(g: &PlaneGraph, c: &CycleRef) -> Vec<IfColoring> {
    let verts = c.verts();
    let k = verts.len();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << k) {
        let mut phi = IfColoring::unset(g.n());
        for (i, &v) in verts.iter().enumerate() {
            phi.set(v, if mask >> i & 1 == 1 { Color::I } else { Color::F });
        }
        if is_if_coloring(g, &phi).is_valid() {
            out.push(phi);
        }
    }
    out
}

/// Restricts a coloring to a vertex subset (others unset).
pub fn restrict(phi: &IfColoring, keep: impl IntoIterator<Item = Vertex>) -> IfColoring {
    let mut out = IfColoring::unset(phi.len());
    for v in keep {
        if let Some(c) = phi.get(v) {
            out.set(v, c);
        }
    }
    out
}
