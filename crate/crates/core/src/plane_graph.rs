//! Combinatorial plane graphs stored as rotation systems.
//!
//! Conventions:
//! * `rot[v]` lists the neighbours of `v` in clockwise order.
//! * The successor of dart `u -> v` on its face is `v -> w` where `w` is the
//!   neighbour immediately preceding `u` in `rot[v]`. Bounded faces are
//!   therefore traced counterclockwise.
//! * One face is designated as the outer face. Its boundary walk is stored
//!   in `outer`, oriented as traced.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex}: neighbour {neighbor} out of range")]
    IndexOutOfRange { vertex: Vertex, neighbor: Vertex },
    #[error("adjacency not symmetric: {u} lists {v} but not vice versa")]
    NotSymmetric { u: Vertex, v: Vertex },
    #[error("graph not simple at vertex {0} (loop or repeated neighbour)")]
    NotSimple(Vertex),
    #[error("graph is not connected")]
    NotConnected,
    #[error("rotation system is not genus 0: V - E + F = {v} - {e} + {f}")]
    NotGenusZero { v: usize, e: usize, f: usize },
    #[error("outer sequence does not match any face boundary")]
    OuterNotAFace,
    #[error("not a cycle of the graph: {0}")]
    NotACycle(String),
    #[error("deleting the vertices disconnects the graph")]
    Disconnects,
    #[error("vertices {a} and {b} do not share a face")]
    NotOnCommonFace { a: Vertex, b: Vertex },
    #[error("vertices {a} and {b} are adjacent")]
    Adjacent { a: Vertex, b: Vertex },
    #[error("identifying {a} and {b} creates a parallel edge (common neighbour {w})")]
    CreatesMultiEdge { a: Vertex, b: Vertex, w: Vertex },
    #[error("the graph has no vertices")]
    Empty,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A face given by its boundary walk (origins of the darts in order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<Vertex>,
    /// Number of darts on the walk. Equals `boundary.len()` except for the
    /// edgeless graph, whose single face has degree 0.
    pub degree: usize,
}

impl Face {
    pub fn contains(&self, v: Vertex) -> bool {
        self.boundary.contains(&v)
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.boundary.iter().copied().collect()
    }

    /// Edges on the walk as ordered darts.
    pub fn darts(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let k = self.boundary.len();
        (0..self.degree).map(move |i| (self.boundary[i], self.boundary[(i + 1) % k]))
    }
}

/// A cycle of a graph in canonical form: starts at its least vertex and
/// proceeds towards the smaller of that vertex's two cycle neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleRef {
    verts: Vec<Vertex>,
}

impl CycleRef {
    /// Validates `verts` as a cycle of `g` and canonicalizes it.
    pub fn new(g: &PlaneGraph, verts: &[Vertex]) -> Result<Self, GraphError> {
        if verts.len() < 3 {
            return Err(GraphError::NotACycle(format!("length {} < 3", verts.len())));
        }
        let distinct: BTreeSet<_> = verts.iter().collect();
        if distinct.len() != verts.len() {
            return Err(GraphError::NotACycle("repeated vertex".into()));
        }
        for (i, &u) in verts.iter().enumerate() {
            let v = verts[(i + 1) % verts.len()];
            if u >= g.n() || v >= g.n() || !g.adjacent(u, v) {
                return Err(GraphError::NotACycle(format!("{u} and {v} are not adjacent")));
            }
        }
        Ok(Self::canonical(verts))
    }

    pub(crate) fn canonical(verts: &[Vertex]) -> Self {
        let k = verts.len();
        let (start, _) = verts.iter().enumerate().min_by_key(|&(_, v)| *v).unwrap();
        let next = verts[(start + 1) % k];
        let prev = verts[(start + k - 1) % k];
        let out = if next <= prev {
            (0..k).map(|i| verts[(start + i) % k]).collect()
        } else {
            (0..k).map(|i| verts[(start + k - i) % k]).collect()
        };
        CycleRef { verts: out }
    }

    pub fn verts(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.verts.contains(&v)
    }

    /// True if `u v` is an edge of the cycle.
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let k = self.verts.len();
        (0..k).any(|i| {
            let (a, b) = (self.verts[i], self.verts[(i + 1) % k]);
            (a == u && b == v) || (a == v && b == u)
        })
    }
}

impl fmt::Display for CycleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.verts.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Which side of a cycle to keep in [`PlaneGraph::side`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// The side away from the outer face.
    Inner,
    /// The side containing the outer face.
    Outer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    rot: Vec<Vec<Vertex>>,
    outer: Vec<Vertex>,
    faces: Vec<Face>,
    /// `dart_face[v][i]` is the face containing the dart `v -> rot[v][i]`.
    dart_face: Vec<Vec<usize>>,
    outer_face: usize,
}

impl PlaneGraph {
    /// Validates a rotation system and an outer face boundary.
    pub fn build(rot: Vec<Vec<Vertex>>, outer: Vec<Vertex>) -> Result<Self, GraphError> {
        let n = rot.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        for (v, nbrs) in rot.iter().enumerate() {
            for &w in nbrs {
                if w >= n {
                    return Err(GraphError::IndexOutOfRange { vertex: v, neighbor: w });
                }
            }
        }
        for (v, nbrs) in rot.iter().enumerate() {
            let set: BTreeSet<_> = nbrs.iter().collect();
            if set.len() != nbrs.len() || set.contains(&v) {
                return Err(GraphError::NotSimple(v));
            }
            for &w in nbrs {
                if !rot[w].contains(&v) {
                    return Err(GraphError::NotSymmetric { u: v, v: w });
                }
            }
        }
        if !connected(&rot, &vec![false; n]) {
            return Err(GraphError::NotConnected);
        }
        let (faces, dart_face) = trace_faces(&rot);
        let e: usize = rot.iter().map(Vec::len).sum::<usize>() / 2;
        if n + faces.len() != e + 2 {
            return Err(GraphError::NotGenusZero { v: n, e, f: faces.len() });
        }
        let outer_face =
            faces.iter().position(|f| walk_matches(&f.boundary, &outer)).ok_or(GraphError::OuterNotAFace)?;
        let outer = faces[outer_face].boundary.clone();
        Ok(PlaneGraph { rot, outer, faces, dart_face, outer_face })
    }

    /// Builds a graph from vertex coordinates, deriving the clockwise rotation
    /// by sorting neighbours by angle. The drawing must be a plane straight-line
    /// drawing; the result is validated like [`PlaneGraph::build`].
    pub fn from_drawing(
        coords: &[(f64, f64)],
        edges: &[(Vertex, Vertex)],
        outer: &[Vertex],
    ) -> Result<Self, GraphError> {
        let n = coords.len();
        let mut rot = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::IndexOutOfRange { vertex: u.min(v), neighbor: u.max(v) });
            }
            rot[u].push(v);
            rot[v].push(u);
        }
        for (v, nbrs) in rot.iter_mut().enumerate() {
            let (x0, y0) = coords[v];
            // Clockwise in a y-up frame means decreasing angle.
            nbrs.sort_by(|&a, &b| {
                let ta = (coords[a].1 - y0).atan2(coords[a].0 - x0);
                let tb = (coords[b].1 - y0).atan2(coords[b].0 - x0);
                tb.partial_cmp(&ta).unwrap()
            });
        }
        // The outer face of a drawing is traced clockwise; accept either
        // orientation of the supplied sequence.
        Self::build(rot, outer.to_vec())
    }

    pub fn n(&self) -> usize {
        self.rot.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rot.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// `|V| + |E|`.
    pub fn sigma(&self) -> usize {
        self.n() + self.edge_count()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rot[v].len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.rot[v]
    }

    pub fn rotation(&self) -> &[Vec<Vertex>] {
        &self.rot
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.rot[u].contains(&v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.rot.iter().enumerate().flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn outer(&self) -> &[Vertex] {
        &self.outer
    }

    pub fn outer_face_index(&self) -> usize {
        self.outer_face
    }

    pub fn on_outer(&self, v: Vertex) -> bool {
        self.outer.contains(&v)
    }

    /// The outer boundary as a cycle, if it is one.
    pub fn outer_cycle(&self) -> Option<CycleRef> {
        CycleRef::new(self, &self.outer).ok()
    }

    /// Face containing the dart `u -> v`.
    pub fn face_of_dart(&self, u: Vertex, v: Vertex) -> usize {
        let i = self.rot[u].iter().position(|&w| w == v).expect("not an edge");
        self.dart_face[u][i]
    }

    /// Indices of the faces around `v`, in rotation order (with repeats).
    pub fn faces_at(&self, v: Vertex) -> &[usize] {
        &self.dart_face[v]
    }

    /// The two faces on either side of edge `u v`.
    pub fn faces_of_edge(&self, u: Vertex, v: Vertex) -> (usize, usize) {
        (self.face_of_dart(u, v), self.face_of_dart(v, u))
    }

    /// Returns the same graph with another face designated as outer.
    pub fn with_outer(&self, face: usize) -> PlaneGraph {
        let mut g = self.clone();
        g.outer_face = face;
        g.outer = g.faces[face].boundary.clone();
        g
    }

    /// Index of the face whose boundary is exactly the cycle `c`, if any.
    pub fn face_bounded_by(&self, c: &CycleRef) -> Option<usize> {
        self.faces.iter().position(|f| {
            f.degree == c.len() && {
                let canon_f = if f.vertex_set().len() == f.boundary.len() {
                    Some(CycleRef::canonical(&f.boundary))
                } else {
                    None
                };
                canon_f.as_ref() == Some(c)
            }
        })
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + 1 == self.n()
    }

    /// All cycles of length at most `max_len`, each in canonical form, sorted
    /// by length and then lexicographically.
    pub fn short_cycles(&self, max_len: usize) -> Vec<CycleRef> {
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(max_len);
        let mut on_path = vec![false; self.n()];
        for s in 0..self.n() {
            path.push(s);
            on_path[s] = true;
            self.extend_cycles(s, max_len, &mut path, &mut on_path, &mut out);
            on_path[s] = false;
            path.pop();
        }
        out.sort_by(|a: &CycleRef, b: &CycleRef| a.len().cmp(&b.len()).then_with(|| a.verts.cmp(&b.verts)));
        out
    }

    fn extend_cycles(
        &self,
        s: Vertex,
        max_len: usize,
        path: &mut Vec<Vertex>,
        on_path: &mut [bool],
        out: &mut Vec<CycleRef>,
    ) {
        let last = *path.last().unwrap();
        for &w in &self.rot[last] {
            if w == s && path.len() >= 3 && path[1] < last {
                out.push(CycleRef { verts: path.clone() });
            } else if w > s && !on_path[w] && path.len() < max_len {
                path.push(w);
                on_path[w] = true;
                self.extend_cycles(s, max_len, path, on_path, out);
                on_path[w] = false;
                path.pop();
            }
        }
    }

    /// True iff the graph has a cycle of length 4, 6 or 8.
    pub fn has_forbidden_cycles(&self) -> bool {
        self.short_cycles(8).iter().any(|c| matches!(c.len(), 4 | 6 | 8))
    }

    pub fn girth(&self) -> Option<usize> {
        // BFS from every vertex; fine at the sizes this crate targets.
        let n = self.n();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in &self.rot[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        q.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    fn check_cycle(&self, c: &CycleRef) -> Result<(), GraphError> {
        CycleRef::new(self, c.verts()).map(|_| ())
    }

    /// Face components after cutting the dual along the edges of `c`.
    /// Returns a component label per face.
    fn dual_components(&self, c: &CycleRef) -> Vec<usize> {
        let mut dsu: Vec<usize> = (0..self.faces.len()).collect();
        fn find(d: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while d[r] != r {
                r = d[r];
            }
            let mut y = x;
            while d[y] != r {
                let nx = d[y];
                d[y] = r;
                y = nx;
            }
            r
        }
        for (u, v) in self.edges() {
            if c.has_edge(u, v) {
                continue;
            }
            let (f1, f2) = self.faces_of_edge(u, v);
            let (r1, r2) = (find(&mut dsu, f1), find(&mut dsu, f2));
            dsu[r1] = r2;
        }
        (0..self.faces.len()).map(|f| find(&mut dsu, f)).collect()
    }

    /// Vertices strictly inside and strictly outside `c` (relative to the
    /// outer face). Together with `c` they partition the vertex set.
    pub fn interior(&self, c: &CycleRef) -> Result<(BTreeSet<Vertex>, BTreeSet<Vertex>), GraphError> {
        self.check_cycle(c)?;
        let comp = self.dual_components(c);
        let outside = comp[self.outer_face];
        let mut int = BTreeSet::new();
        let mut ext = BTreeSet::new();
        for v in 0..self.n() {
            if c.contains(v) {
                continue;
            }
            if self.dart_face[v].iter().any(|&f| comp[f] == outside) {
                ext.insert(v);
            } else {
                int.insert(v);
            }
        }
        Ok((int, ext))
    }

    pub fn is_separating(&self, c: &CycleRef) -> Result<bool, GraphError> {
        let (int, ext) = self.interior(c)?;
        Ok(!int.is_empty() && !ext.is_empty())
    }

    /// True if the chord `u v` of `c` lies on the outer side of `c`.
    fn chord_is_outside(&self, comp: &[usize], u: Vertex, v: Vertex) -> bool {
        comp[self.face_of_dart(u, v)] == comp[self.outer_face]
    }

    /// The subgraph formed by `c` and everything on one side of it, with `c`
    /// designated as the outer face. Chords of `c` on the other side are
    /// dropped. The vector maps new vertex ids to ids in `self`.
    pub fn side(&self, c: &CycleRef, side: Side) -> Result<(PlaneGraph, Vec<Vertex>), GraphError> {
        let (int, ext) = self.interior(c)?;
        let comp = self.dual_components(c);
        let drop_vertices = match side {
            Side::Inner => ext,
            Side::Outer => int,
        };
        let mut rot: Vec<Vec<Vertex>> = self.rot.clone();
        for &u in c.verts() {
            let kept: Vec<Vertex> = rot[u]
                .iter()
                .copied()
                .filter(|&v| {
                    if !c.contains(v) || c.has_edge(u, v) {
                        return true;
                    }
                    let outside = self.chord_is_outside(&comp, u, v);
                    match side {
                        Side::Inner => !outside,
                        Side::Outer => outside,
                    }
                })
                .collect();
            rot[u] = kept;
        }
        let (rot, origin) = drop_and_renumber(&rot, &drop_vertices);
        let mut newid = vec![usize::MAX; self.n()];
        for (i, &o) in origin.iter().enumerate() {
            newid[o] = i;
        }
        let cyc: Vec<Vertex> = c.verts().iter().map(|&v| newid[v]).collect();
        if !connected(&rot, &vec![false; rot.len()]) {
            return Err(GraphError::Disconnects);
        }
        let (faces, _) = trace_faces(&rot);
        let canon = CycleRef::canonical(&cyc);
        // Locate the face bounded by c on the kept side. On the inner side it
        // is the region that used to be outside, so pick the face bounded by
        // c which is not one of the original inner faces.
        let candidates: Vec<usize> = faces
            .iter()
            .enumerate()
            .filter(|(_, f)| {
                f.degree == cyc.len() && f.vertex_set().len() == f.degree && CycleRef::canonical(&f.boundary) == canon
            })
            .map(|(i, _)| i)
            .collect();
        // With nothing left on the kept side besides c, both faces are
        // bounded by c and either may serve as outer.
        let chosen = *candidates.first().ok_or(GraphError::OuterNotAFace)?;
        let outer = faces[chosen].boundary.clone();
        Ok((PlaneGraph::build(rot, outer)?, origin))
    }

    /// Deletes a vertex set. Returns the induced plane subgraph and the map
    /// from new vertex ids to old ones.
    pub fn delete_vertices(&self, del: &BTreeSet<Vertex>) -> Result<(PlaneGraph, Vec<Vertex>), GraphError> {
        if del.len() >= self.n() {
            return Err(GraphError::Empty);
        }
        let mut mask = vec![false; self.n()];
        for &v in del {
            mask[v] = true;
        }
        if !connected(&self.rot, &mask) {
            return Err(GraphError::Disconnects);
        }
        let (rot, origin) = drop_and_renumber(&self.rot, del);
        let mut newid = vec![usize::MAX; self.n()];
        for (i, &o) in origin.iter().enumerate() {
            newid[o] = i;
        }
        let outer = if self.outer.iter().all(|v| !del.contains(v)) {
            self.outer.iter().map(|&v| newid[v]).collect()
        } else {
            let (faces, dart_face) = trace_faces(&rot);
            let k = self.outer.len();
            let surviving_dart = (0..self.faces[self.outer_face].degree)
                .map(|i| (self.outer[i], self.outer[(i + 1) % k]))
                .find(|(a, b)| !del.contains(a) && !del.contains(b));
            let face = match surviving_dart {
                Some((a, b)) => {
                    let (na, nb) = (newid[a], newid[b]);
                    let i = rot[na].iter().position(|&w| w == nb).unwrap();
                    dart_face[na][i]
                }
                None => match self.outer.iter().find(|v| !del.contains(v)) {
                    Some(&v) if !rot[newid[v]].is_empty() => dart_face[newid[v]][0],
                    _ => 0,
                },
            };
            faces[face].boundary.clone()
        };
        Ok((PlaneGraph::build(rot, outer)?, origin))
    }

    /// Identifies non-adjacent vertices `a` and `b` that share a face. The
    /// merged vertex takes `a`'s place; `b` is removed and later ids shift
    /// down by one. The merged rotation splices `rot[a]` and `rot[b]` at
    /// their corners on the first common face.
    pub fn identify(&self, a: Vertex, b: Vertex) -> Result<(PlaneGraph, Vec<Vertex>), GraphError> {
        if a == b || a >= self.n() || b >= self.n() {
            return Err(GraphError::NotOnCommonFace { a, b });
        }
        if self.adjacent(a, b) {
            return Err(GraphError::Adjacent { a, b });
        }
        if let Some(&w) = self.rot[a].iter().find(|w| self.rot[b].contains(w)) {
            return Err(GraphError::CreatesMultiEdge { a, b, w });
        }
        // Prefer an inner common face so the outer boundary survives intact.
        let common = |i: &usize| self.faces[*i].contains(a) && self.faces[*i].contains(b);
        let face_idx = (0..self.faces.len())
            .filter(|&i| i != self.outer_face)
            .find(common)
            .or_else(|| Some(self.outer_face).filter(common))
            .ok_or(GraphError::NotOnCommonFace { a, b })?;
        let face = &self.faces[face_idx];
        let corner = |x: Vertex| -> (Vertex, Vertex) {
            // (incoming neighbour, outgoing neighbour) at the first visit.
            let k = face.boundary.len();
            let i = face.boundary.iter().position(|&v| v == x).unwrap();
            (face.boundary[(i + k - 1) % k], face.boundary[(i + 1) % k])
        };
        let rotate_from = |x: Vertex, start: Vertex| -> Vec<Vertex> {
            let r = &self.rot[x];
            let i = r.iter().position(|&v| v == start).unwrap();
            (0..r.len()).map(|j| r[(i + j) % r.len()]).collect()
        };
        let merged: Vec<Vertex> = if self.rot[a].is_empty() {
            self.rot[b].clone()
        } else if self.rot[b].is_empty() {
            self.rot[a].clone()
        } else {
            let (ua, _) = corner(a);
            let (ub, _) = corner(b);
            let mut m = rotate_from(a, ua);
            m.extend(rotate_from(b, ub));
            m
        };
        let mut rot = self.rot.clone();
        for &w in &self.rot[b] {
            for x in rot[w].iter_mut() {
                if *x == b {
                    *x = a;
                }
            }
        }
        rot[a] = merged;
        rot[b].clear();
        let del: BTreeSet<Vertex> = [b].into();
        let (rot, origin) = drop_and_renumber(&rot, &del);
        let mut newid = vec![usize::MAX; self.n()];
        for (i, &o) in origin.iter().enumerate() {
            newid[o] = i;
        }
        newid[b] = newid[a];
        let mut outer: Vec<Vertex> = self.outer.iter().map(|&v| newid[v]).collect();
        if face_idx == self.outer_face && outer.len() >= 2 {
            // The outer face was split; keep the part holding its first dart.
            let (faces, dart_face) = trace_faces(&rot);
            let (x, y) = (outer[0], outer[1]);
            let i = rot[x].iter().position(|&w| w == y).unwrap();
            outer = faces[dart_face[x][i]].boundary.clone();
        }
        Ok((PlaneGraph::build(rot, outer)?, origin))
    }

    /// Serializes to the `pg 1` text format.
    pub fn to_text(&self) -> String {
        let mut s = String::from("pg 1\n");
        s.push_str(&format!("{}\n", self.n()));
        for nb in &self.rot {
            let rotated = rotate_to_min(nb);
            let mut line = nb.len().to_string();
            for v in rotated {
                line.push(' ');
                line.push_str(&v.to_string());
            }
            line.push('\n');
            s.push_str(&line);
        }
        let outer = rotate_to_min(&self.outer);
        s.push_str(&format!("outer {}", outer.len()));
        for v in outer {
            s.push_str(&format!(" {v}"));
        }
        s.push('\n');
        s
    }

    /// Parses the `pg 1` text format.
    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let err = |line: usize, msg: &str| GraphError::Parse { line, msg: msg.to_string() };
        let (ln, magic) = lines.next().ok_or_else(|| err(0, "empty input"))?;
        let mut it = magic.split_whitespace();
        if it.next() != Some("pg") || it.next() != Some("1") || it.next().is_some() {
            return Err(err(ln, "expected header `pg 1`"));
        }
        let (ln, nline) = lines.next().ok_or_else(|| err(ln, "missing vertex count"))?;
        let n: usize = nline.parse().map_err(|_| err(ln, "bad vertex count"))?;
        let mut rot = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, l) = lines.next().ok_or_else(|| err(ln, "missing rotation line"))?;
            let nums: Vec<usize> = l
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| err(ln, "bad integer")))
                .collect::<Result<_, _>>()?;
            let (&d, rest) = nums.split_first().ok_or_else(|| err(ln, "empty rotation line"))?;
            if rest.len() != d {
                return Err(err(ln, "degree does not match neighbour count"));
            }
            rot.push(rest.to_vec());
        }
        let (ln, l) = lines.next().ok_or_else(|| err(ln, "missing outer line"))?;
        let mut it = l.split_whitespace();
        if it.next() != Some("outer") {
            return Err(err(ln, "expected `outer k v0 ...`"));
        }
        let nums: Vec<usize> =
            it.map(|t| t.parse::<usize>().map_err(|_| err(ln, "bad integer"))).collect::<Result<_, _>>()?;
        let (&k, rest) = nums.split_first().ok_or_else(|| err(ln, "missing outer length"))?;
        if rest.len() != k {
            return Err(err(ln, "outer length does not match"));
        }
        if let Some((ln, _)) = lines.next() {
            return Err(err(ln, "trailing content"));
        }
        PlaneGraph::build(rot, rest.to_vec())
    }
}

/// The lexicographically least rotation, so closed walks that revisit a
/// vertex serialize the same way from any starting point.
fn rotate_to_min(seq: &[Vertex]) -> Vec<Vertex> {
    (0..seq.len()).map(|i| seq[i..].iter().chain(&seq[..i]).copied().collect::<Vec<_>>()).min().unwrap_or_default()
}

fn connected(rot: &[Vec<Vertex>], removed: &[bool]) -> bool {
    let n = rot.len();
    let Some(start) = (0..n).find(|&v| !removed[v]) else {
        return true;
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in &rot[u] {
            if !removed[w] && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == removed.iter().filter(|&&r| !r).count()
}

fn drop_and_renumber(rot: &[Vec<Vertex>], del: &BTreeSet<Vertex>) -> (Vec<Vec<Vertex>>, Vec<Vertex>) {
    let origin: Vec<Vertex> = (0..rot.len()).filter(|v| !del.contains(v)).collect();
    let mut newid = vec![usize::MAX; rot.len()];
    for (i, &o) in origin.iter().enumerate() {
        newid[o] = i;
    }
    let rot = origin.iter().map(|&o| rot[o].iter().filter(|w| !del.contains(w)).map(|&w| newid[w]).collect()).collect();
    (rot, origin)
}

fn trace_faces(rot: &[Vec<Vertex>]) -> (Vec<Face>, Vec<Vec<usize>>) {
    let n = rot.len();
    let mut dart_face: Vec<Vec<usize>> = rot.iter().map(|nb| vec![usize::MAX; nb.len()]).collect();
    let mut faces = Vec::new();
    if rot.iter().all(Vec::is_empty) {
        // A single isolated vertex has one face of degree 0.
        faces.push(Face { boundary: vec![0], degree: 0 });
        return (faces, dart_face);
    }
    for u0 in 0..n {
        for i0 in 0..rot[u0].len() {
            if dart_face[u0][i0] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut boundary = Vec::new();
            let (mut u, mut i) = (u0, i0);
            loop {
                dart_face[u][i] = id;
                boundary.push(u);
                let v = rot[u][i];
                let j = rot[v].iter().position(|&w| w == u).unwrap();
                let dv = rot[v].len();
                let next = (j + dv - 1) % dv;
                u = v;
                i = next;
                if u == u0 && i == i0 {
                    break;
                }
            }
            let degree = boundary.len();
            faces.push(Face { boundary, degree });
        }
    }
    (faces, dart_face)
}

/// Equality of closed walks up to rotation and reversal.
fn walk_matches(walk: &[Vertex], seq: &[Vertex]) -> bool {
    let k = walk.len();
    if k != seq.len() {
        return false;
    }
    let rev: Vec<Vertex> = seq.iter().rev().copied().collect();
    (0..k).any(|s| (0..k).all(|i| walk[(s + i) % k] == seq[i]) || (0..k).all(|i| walk[(s + i) % k] == rev[i]))
}

/// Small builders for common shapes, used across tests and generators.
pub mod shapes {
    use super::*;

    /// The cycle `0 1 ... n-1`, with the face traced `0 -> 1 -> ...` as outer.
    pub fn cycle(n: usize) -> PlaneGraph {
        let rot = (0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect();
        PlaneGraph::build(rot, (0..n).collect()).expect("cycle")
    }

    /// The path `0 1 ... n-1`.
    pub fn path(n: usize) -> PlaneGraph {
        let rot: Vec<Vec<Vertex>> = (0..n)
            .map(|i| {
                let mut r = Vec::new();
                if i + 1 < n {
                    r.push(i + 1);
                }
                if i > 0 {
                    r.push(i - 1);
                }
                r
            })
            .collect();
        let outer: Vec<Vertex> = if n == 1 { vec![0] } else { (0..n).chain((1..n - 1).rev()).collect() };
        PlaneGraph::build(rot, outer).expect("path")
    }

    /// Star with centre 0 and leaves `1..=k`.
    pub fn star(k: usize) -> PlaneGraph {
        let mut rot = vec![(1..=k).collect::<Vec<_>>()];
        rot.extend((1..=k).map(|_| vec![0]));
        let mut outer = Vec::new();
        for leaf in (1..=k).rev() {
            outer.push(0);
            outer.push(leaf);
        }
        PlaneGraph::build(rot, outer).expect("star")
    }

    /// K4 drawn with outer triangle `0 1 2` and centre 3.
    pub fn k4() -> PlaneGraph {
        let coords = [(0.0, 0.0), (4.0, 0.0), (2.0, 3.5), (2.0, 1.2)];
        let edges = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)];
        PlaneGraph::from_drawing(&coords, &edges, &[0, 1, 2]).expect("k4")
    }

    /// The cube graph.
    pub fn cube() -> PlaneGraph {
        let coords = [(0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (0.0, 4.0), (1.0, 1.0), (3.0, 1.0), (3.0, 3.0), (1.0, 3.0)];
        let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)];
        PlaneGraph::from_drawing(&coords, &edges, &[0, 1, 2, 3]).expect("cube")
    }
}
