//! Exhaustive ground truth for (super)extensions of precolorings.
//!
//! Backtracking over free vertices in order of decreasing degree, trying F
//! before I. F-F edges are tracked in a rollback disjoint-set so an F-cycle
//! is rejected the moment it closes. The superextension condition is checked
//! incrementally: a freshly colored F vertex off the reference cycle must not
//! connect two admissible cycle vertices.

use rayon::prelude::*;

use crate::coloring::{self, Certificate, Color, IfColoring, Mode};
use crate::dsu::RollbackDsu;
use crate::plane_graph::{CycleRef, PlaneGraph, Vertex};

#[derive(Debug, Clone)]
pub struct SolveRequest<'a> {
    pub graph: &'a PlaneGraph,
    pub fixed: IfColoring,
    pub superextend_wrt: Option<CycleRef>,
    pub mode: Mode,
}

impl<'a> SolveRequest<'a> {
    pub fn new(graph: &'a PlaneGraph) -> Self {
        SolveRequest { graph, fixed: IfColoring::unset(graph.n()), superextend_wrt: None, mode: Mode::default() }
    }

    pub fn fixed(mut self, fixed: IfColoring) -> Self {
        self.fixed = fixed;
        self
    }

    pub fn superextend(mut self, c: CycleRef, mode: Mode) -> Self {
        self.superextend_wrt = Some(c);
        self.mode = mode;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ForestCheck {
    #[default]
    Incremental,
    /// Re-run the full forest certificate after every F assignment.
    FromScratch,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub forest: ForestCheck,
    /// Worker count; 1 runs sequentially. Results do not depend on it.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { forest: ForestCheck::Incremental, jobs: 1 }
    }
}

struct Searcher<'a> {
    g: &'a PlaneGraph,
    phi: IfColoring,
    dsu: RollbackDsu,
    on_cycle: Vec<bool>,
    check_outer: bool,
    mode: Mode,
    forest: ForestCheck,
    order: Vec<Vertex>,
}

impl<'a> Searcher<'a> {
    /// Sets up the search, or returns `None` if the fixed part is already
    /// violating.
    fn new(req: &SolveRequest<'a>, forest: ForestCheck) -> Option<Self> {
        let g = req.graph;
        let phi = req.fixed.clone();
        if !coloring::is_if_coloring(g, &phi).is_valid() {
            return None;
        }
        let mut dsu = RollbackDsu::new(g.n());
        for (u, v) in g.edges() {
            if phi.is(u, Color::F) && phi.is(v, Color::F) {
                dsu.union(u, v);
            }
        }
        let mut on_cycle = vec![false; g.n()];
        if let Some(c) = &req.superextend_wrt {
            for &v in c.verts() {
                on_cycle[v] = true;
            }
            if coloring::find_outer_path(g, &phi, &on_cycle, req.mode).is_some() {
                return None;
            }
        }
        let mut order: Vec<Vertex> = (0..g.n()).filter(|&v| phi.get(v).is_none()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        Some(Searcher {
            g,
            phi,
            dsu,
            on_cycle,
            check_outer: req.superextend_wrt.is_some(),
            mode: req.mode,
            forest,
            order,
        })
    }

    /// Tries to color `v`; on failure the state is left unchanged.
    fn assign(&mut self, v: Vertex, c: Color) -> bool {
        match c {
            Color::I => {
                if self.g.neighbors(v).iter().any(|&w| self.phi.is(w, Color::I)) {
                    return false;
                }
                self.phi.set(v, Color::I);
                true
            }
            Color::F => {
                let cp = self.dsu.checkpoint();
                self.phi.set(v, Color::F);
                let acyclic = match self.forest {
                    ForestCheck::Incremental => {
                        let mut ok = true;
                        for &w in self.g.neighbors(v) {
                            if self.phi.is(w, Color::F) && !self.dsu.union(v, w) {
                                ok = false;
                                break;
                            }
                        }
                        ok
                    }
                    ForestCheck::FromScratch => coloring::induces_forest(self.g, &self.phi).is_valid(),
                };
                if !acyclic || (self.check_outer && !self.on_cycle[v] && self.joins_cycle_vertices(v)) {
                    self.dsu.rollback(cp);
                    self.phi.clear(v);
                    return false;
                }
                true
            }
        }
    }

    fn unassign(&mut self, v: Vertex, cp: usize) {
        self.dsu.rollback(cp);
        self.phi.clear(v);
    }

    /// Does the off-cycle F component of `v` touch two admissible cycle
    /// vertices?
    fn joins_cycle_vertices(&self, v: Vertex) -> bool {
        let mut seen = vec![false; self.g.n()];
        seen[v] = true;
        let mut stack = vec![v];
        let mut touched: Option<Vertex> = None;
        while let Some(u) = stack.pop() {
            for &w in self.g.neighbors(u) {
                if self.on_cycle[w] {
                    let admissible = match self.mode {
                        Mode::Strict => true,
                        Mode::Lenient => self.phi.is(w, Color::F),
                    };
                    if admissible {
                        match touched {
                            None => touched = Some(w),
                            Some(t) if t != w => return true,
                            _ => {}
                        }
                    }
                } else if !seen[w] && self.phi.is(w, Color::F) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }

    fn first(&mut self, idx: usize) -> bool {
        if idx == self.order.len() {
            return true;
        }
        let v = self.order[idx];
        for c in [Color::F, Color::I] {
            let cp = self.dsu.checkpoint();
            if self.assign(v, c) {
                if self.first(idx + 1) {
                    return true;
                }
                self.unassign(v, cp);
            }
        }
        false
    }

    fn count(&mut self, idx: usize) -> u64 {
        if idx == self.order.len() {
            return 1;
        }
        let v = self.order[idx];
        let mut total = 0;
        for c in [Color::F, Color::I] {
            let cp = self.dsu.checkpoint();
            if self.assign(v, c) {
                total += self.count(idx + 1);
                self.unassign(v, cp);
            }
        }
        total
    }

    fn visit(&mut self, idx: usize, f: &mut dyn FnMut(&IfColoring) -> bool) -> bool {
        if idx == self.order.len() {
            return f(&self.phi);
        }
        let v = self.order[idx];
        for c in [Color::F, Color::I] {
            let cp = self.dsu.checkpoint();
            if self.assign(v, c) {
                let go_on = self.visit(idx + 1, f);
                self.unassign(v, cp);
                if !go_on {
                    return false;
                }
            }
        }
        true
    }

    /// Valid color choices for the first `depth` free vertices, in search
    /// order.
    fn prefixes(&mut self, depth: usize) -> Vec<Vec<Color>> {
        fn rec(s: &mut Searcher, idx: usize, depth: usize, cur: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
            if idx == depth {
                out.push(cur.clone());
                return;
            }
            let v = s.order[idx];
            for c in [Color::F, Color::I] {
                let cp = s.dsu.checkpoint();
                if s.assign(v, c) {
                    cur.push(c);
                    rec(s, idx + 1, depth, cur, out);
                    cur.pop();
                    s.unassign(v, cp);
                }
            }
        }
        let mut out = Vec::new();
        rec(self, 0, depth.min(self.order.len()), &mut Vec::new(), &mut out);
        out
    }

    fn apply_prefix(&mut self, prefix: &[Color]) {
        for (i, &c) in prefix.iter().enumerate() {
            let v = self.order[i];
            assert!(self.assign(v, c), "prefix replay must succeed");
        }
    }
}

fn split_depth(jobs: usize, free: usize) -> usize {
    let mut d = 0;
    while (1usize << d) < jobs * 4 && d < free {
        d += 1;
    }
    d
}

fn self_check(req: &SolveRequest, phi: &IfColoring) {
    assert!(phi.is_total(), "solver output must be total");
    assert!(coloring::is_if_coloring(req.graph, phi).is_valid(), "solver output must be an IF-coloring");
    if let Some(c) = &req.superextend_wrt {
        let cert = coloring::is_superextension(req.graph, c, phi, req.mode).expect("IF-coloring");
        assert_eq!(cert, Certificate::Valid, "solver output must superextend");
    }
    for v in 0..req.graph.n() {
        if let Some(col) = req.fixed.get(v) {
            assert_eq!(phi.get(v), Some(col), "solver must respect the precoloring");
        }
    }
}

/// First total coloring (in search order) satisfying the request.
pub fn solve(req: &SolveRequest) -> Option<IfColoring> {
    solve_with(req, SearchOptions::default())
}

pub fn solve_with(req: &SolveRequest, opts: SearchOptions) -> Option<IfColoring> {
    let mut s = Searcher::new(req, opts.forest)?;
    let found = if opts.jobs <= 1 {
        if s.first(0) {
            Some(s.phi.clone())
        } else {
            None
        }
    } else {
        let depth = split_depth(opts.jobs, s.order.len());
        let prefixes = s.prefixes(depth);
        let results: Vec<Option<IfColoring>> = pool(opts.jobs).install(|| {
            prefixes
                .par_iter()
                .map(|p| {
                    let mut w = Searcher::new(req, opts.forest).expect("already validated");
                    w.apply_prefix(p);
                    if w.first(p.len()) {
                        Some(w.phi.clone())
                    } else {
                        None
                    }
                })
                .collect()
        });
        results.into_iter().flatten().next()
    };
    if let Some(phi) = &found {
        self_check(req, phi);
    }
    found
}

/// Number of total colorings satisfying the request.
pub fn count(req: &SolveRequest) -> u64 {
    count_with(req, SearchOptions::default())
}

pub fn count_with(req: &SolveRequest, opts: SearchOptions) -> u64 {
    let Some(mut s) = Searcher::new(req, opts.forest) else {
        return 0;
    };
    if opts.jobs <= 1 {
        return s.count(0);
    }
    let depth = split_depth(opts.jobs, s.order.len());
    let prefixes = s.prefixes(depth);
    pool(opts.jobs).install(|| {
        prefixes
            .par_iter()
            .map(|p| {
                let mut w = Searcher::new(req, opts.forest).expect("already validated");
                w.apply_prefix(p);
                w.count(p.len())
            })
            .sum()
    })
}

/// Every total coloring satisfying the request, in search order, stopping
/// after `limit` if given.
pub fn solutions(req: &SolveRequest, limit: Option<usize>) -> Vec<IfColoring> {
    let mut out = Vec::new();
    if let Some(mut s) = Searcher::new(req, ForestCheck::Incremental) {
        s.visit(0, &mut |phi| {
            out.push(phi.clone());
            limit.is_none_or(|l| out.len() < l)
        });
    }
    out
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superextendability {
    pub holds: bool,
    /// First precoloring (in enumeration order) that does not superextend.
    pub first_failure: Option<IfColoring>,
    pub precolorings_checked: usize,
}

/// Whether every IF-coloring of `G[V(C)]` superextends to `g`.
pub fn superextendable(g: &PlaneGraph, c: &CycleRef, mode: Mode) -> Superextendability {
    let pre = coloring::valid_precolorings(g, c);
    let mut checked = 0;
    for phi in pre {
        checked += 1;
        let req = SolveRequest::new(g).fixed(phi.clone()).superextend(c.clone(), mode);
        if solve(&req).is_none() {
            return Superextendability { holds: false, first_failure: Some(phi), precolorings_checked: checked };
        }
    }
    Superextendability { holds: true, first_failure: None, precolorings_checked: checked }
}
