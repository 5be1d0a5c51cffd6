use std::collections::BTreeSet;
use std::fmt;

use crate::plane_graph::{CycleRef, PlaneGraph, Vertex};

/// A reducible configuration located relative to the outer cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Configuration {
    /// Internal vertex of degree at most 2.
    LowDegreeInternal { v: Vertex },
    /// Edge joining two non-consecutive outer vertices.
    OuterChord { u: Vertex, v: Vertex },
    /// Cycle of length at most 12 with vertices strictly on both sides.
    SeparatingSmallCycle { cycle: CycleRef },
    /// Internal `w` adjacent to non-adjacent outer vertices `v0`, `v1`.
    CommonInternalNeighbor { w: Vertex, v0: Vertex, v1: Vertex },
    /// Face `v[0..5]` with no outer vertex, all of degree 3; `u[i]` is the
    /// neighbor of `v[i]` off the face.
    BadInternal5Face { face: usize, v: [Vertex; 5], u: [Vertex; 5] },
    /// Path `path` of internal 3-vertices along a face with `path[0..2]` and
    /// `path[2..4]` on triangles. `v1p`/`v4p` are the triangle apexes, `x`
    /// and `y` the remaining neighbors of the ends.
    Tetrad { path: [Vertex; 4], x: Vertex, y: Vertex, v1p: Vertex, v4p: Vertex },
}

impl Configuration {
    pub fn kind(&self) -> &'static str {
        match self {
            Configuration::LowDegreeInternal { .. } => "LowDegreeInternal",
            Configuration::OuterChord { .. } => "OuterChord",
            Configuration::SeparatingSmallCycle { .. } => "SeparatingSmallCycle",
            Configuration::CommonInternalNeighbor { .. } => "CommonInternalNeighbor",
            Configuration::BadInternal5Face { .. } => "BadInternal5Face",
            Configuration::Tetrad { .. } => "Tetrad",
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Configuration::LowDegreeInternal { v } => write!(f, "LowDegreeInternal v={v}"),
            Configuration::OuterChord { u, v } => write!(f, "OuterChord {u}-{v}"),
            Configuration::SeparatingSmallCycle { cycle } => write!(f, "SeparatingSmallCycle [{cycle}]"),
            Configuration::CommonInternalNeighbor { w, v0, v1 } => {
                write!(f, "CommonInternalNeighbor w={w} v0={v0} v1={v1}")
            }
            Configuration::BadInternal5Face { v, u, .. } => write!(f, "BadInternal5Face v={v:?} u={u:?}"),
            Configuration::Tetrad { path, x, y, v1p, v4p } => {
                write!(f, "Tetrad path={path:?} x={x} y={y} v1'={v1p} v4'={v4p}")
            }
        }
    }
}

pub(crate) fn outer_mask(g: &PlaneGraph) -> Vec<bool> {
    let mut m = vec![false; g.n()];
    for &v in g.outer() {
        m[v] = true;
    }
    m
}

fn outer_edge(g: &PlaneGraph, a: Vertex, b: Vertex) -> bool {
    let o = g.outer();
    let k = o.len();
    (0..k).any(|i| {
        let (p, q) = (o[i], o[(i + 1) % k]);
        (p == a && q == b) || (p == b && q == a)
    })
}

fn is_cut_vertex(g: &PlaneGraph, v: Vertex) -> bool {
    let Some(&start) = g.neighbors(v).first() else {
        return false;
    };
    let mut seen = vec![false; g.n()];
    seen[v] = true;
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached < g.n() - 1
}

pub fn find_low_degree(g: &PlaneGraph) -> Option<Vertex> {
    let on = outer_mask(g);
    let low: Vec<Vertex> = (0..g.n()).filter(|&v| !on[v] && g.degree(v) <= 2).collect();
    low.iter().copied().find(|&v| !is_cut_vertex(g, v)).or_else(|| low.first().copied())
}

pub fn find_outer_chord(g: &PlaneGraph) -> Option<(Vertex, Vertex)> {
    let on = outer_mask(g);
    g.edges().find(|&(u, v)| on[u] && on[v] && !outer_edge(g, u, v))
}

/// Shortest separating cycle of length at most 12, ties broken by the
/// canonical cycle order.
pub fn find_separating(g: &PlaneGraph) -> Option<CycleRef> {
    g.short_cycles(12).into_iter().find(|c| g.is_separating(c).unwrap_or(false))
}

pub fn find_common_internal_neighbor(g: &PlaneGraph) -> Option<(Vertex, Vertex, Vertex)> {
    let on = outer_mask(g);
    for w in 0..g.n() {
        if on[w] {
            continue;
        }
        let outs: Vec<Vertex> = g.neighbors(w).iter().copied().filter(|&x| on[x]).collect();
        for (i, &a) in outs.iter().enumerate() {
            for &b in &outs[i + 1..] {
                if !g.adjacent(a, b) {
                    return Some((w, a.min(b), a.max(b)));
                }
            }
        }
    }
    None
}

/// The face `face` as a bad 5-face, if it is one.
pub fn five_face_at(g: &PlaneGraph, face: usize) -> Option<Configuration> {
    let on = outer_mask(g);
    let f = &g.faces()[face];
    if face == g.outer_face_index() || f.degree != 5 || f.vertex_set().len() != 5 {
        return None;
    }
    let b = &f.boundary;
    if b.iter().any(|&v| on[v] || g.degree(v) != 3) {
        return None;
    }
    let v: [Vertex; 5] = [b[0], b[1], b[2], b[3], b[4]];
    let mut u = [0; 5];
    for i in 0..5 {
        let off: Vec<Vertex> = g.neighbors(v[i]).iter().copied().filter(|w| !v.contains(w)).collect();
        if off.len() != 1 {
            return None;
        }
        u[i] = off[0];
    }
    let distinct: BTreeSet<Vertex> = v.iter().chain(u.iter()).copied().collect();
    (distinct.len() == 10).then_some(Configuration::BadInternal5Face { face, v, u })
}

pub fn find_bad_5face(g: &PlaneGraph) -> Option<Configuration> {
    (0..g.faces().len()).find_map(|f| five_face_at(g, f))
}

/// Third vertex of a triangle on edge `a b`, if any.
fn triangle_apex(g: &PlaneGraph, a: Vertex, b: Vertex) -> Option<Vertex> {
    g.neighbors(a).iter().copied().find(|&w| g.adjacent(w, b))
}

/// A tetrad starting at position `start` of the boundary walk of `face`.
pub fn tetrad_at(g: &PlaneGraph, face: usize, start: usize) -> Option<Configuration> {
    let on = outer_mask(g);
    let f = &g.faces()[face];
    if face == g.outer_face_index() || f.degree < 4 {
        return None;
    }
    let b = &f.boundary;
    let k = b.len();
    let p = [b[start % k], b[(start + 1) % k], b[(start + 2) % k], b[(start + 3) % k]];
    if p.iter().any(|&v| on[v] || g.degree(v) != 3) || p.iter().collect::<BTreeSet<_>>().len() != 4 {
        return None;
    }
    let v1p = triangle_apex(g, p[0], p[1])?;
    let v4p = triangle_apex(g, p[3], p[2])?;
    let other = |v: Vertex, skip: [Vertex; 2]| g.neighbors(v).iter().copied().find(|w| !skip.contains(w));
    let x = other(p[0], [p[1], v1p])?;
    let y = other(p[3], [p[2], v4p])?;
    let all: BTreeSet<Vertex> = p.iter().copied().chain([x, y, v1p, v4p]).collect();
    (all.len() == 8).then_some(Configuration::Tetrad { path: p, x, y, v1p, v4p })
}

pub fn find_tetrad(g: &PlaneGraph) -> Option<Configuration> {
    (0..g.faces().len()).find_map(|f| (0..g.faces()[f].boundary.len()).find_map(|s| tetrad_at(g, f, s)))
}

/// First configuration in the order low degree, outer chord, separating
/// cycle, common internal neighbor, bad 5-face, tetrad. The outer face of
/// `g` plays the role of the precolored cycle.
pub fn find_configuration(g: &PlaneGraph) -> Option<Configuration> {
    if let Some(v) = find_low_degree(g) {
        return Some(Configuration::LowDegreeInternal { v });
    }
    if let Some((u, v)) = find_outer_chord(g) {
        return Some(Configuration::OuterChord { u, v });
    }
    if let Some(cycle) = find_separating(g) {
        return Some(Configuration::SeparatingSmallCycle { cycle });
    }
    if let Some((w, v0, v1)) = find_common_internal_neighbor(g) {
        return Some(Configuration::CommonInternalNeighbor { w, v0, v1 });
    }
    find_bad_5face(g).or_else(|| find_tetrad(g))
}
