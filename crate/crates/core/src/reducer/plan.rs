use std::collections::{BTreeSet, VecDeque};

use crate::coloring::{self, IfColoring, Mode};
use crate::oracle::{self, SolveRequest};
use crate::plane_graph::{CycleRef, GraphError, PlaneGraph, Side, Vertex};

use super::find::{self, outer_mask, Configuration};
use super::lift;
use super::{near_bipartite_partition, Anomaly, ReduceError, TraceStep};

/// The reduction tree of a graph with a precolored outer cycle. It depends
/// only on the graph, so one plan serves every precoloring.
#[derive(Debug, Clone)]
pub struct Plan {
    graph: PlaneGraph,
    node: Node,
}

#[derive(Debug, Clone)]
enum Node {
    /// Every vertex lies on the outer cycle.
    Base,
    LowDegree {
        v: Vertex,
        sub: Box<Plan>,
        origin: Vec<Vertex>,
        /// Components cut off by `v`, already colored, in original ids.
        detached: Vec<(Vertex, crate::coloring::Color)>,
        detached_fallback: bool,
    },
    /// Parts colored in order; each part's outer cycle is precolored from
    /// what is colored so far.
    Split {
        cfg: Configuration,
        parts: Vec<(Plan, Vec<Vertex>)>,
    },
    Identify {
        cfg: Configuration,
        sub: Box<Plan>,
        origin: Vec<Vertex>,
        merged: (Vertex, Vertex),
    },
    Fallback {
        reason: String,
    },
}

pub(crate) struct Ctx {
    pub mode: Mode,
    pub trace: Vec<TraceStep>,
    pub anomalies: Vec<Anomaly>,
    pub branches: std::collections::BTreeMap<&'static str, usize>,
}

impl Ctx {
    pub fn new(mode: Mode) -> Self {
        Ctx { mode, trace: Vec::new(), anomalies: Vec::new(), branches: Default::default() }
    }

    fn branch(&mut self, label: &'static str) {
        *self.branches.entry(label).or_default() += 1;
    }
}

fn class_violated(kind: &'static str, detail: impl Into<String>) -> ReduceError {
    ReduceError::ClassViolated { kind, detail: detail.into() }
}

/// The reduced graph must keep the outer cycle intact and chordless and stay
/// free of 4-, 6- and 8-cycles.
fn check_reduced(g: &PlaneGraph, h: &PlaneGraph, origin: &[Vertex], kind: &'static str) -> Result<(), ReduceError> {
    if h.has_forbidden_cycles() {
        return Err(class_violated(kind, "reduced graph has a 4-, 6- or 8-cycle"));
    }
    let Some(c) = h.outer_cycle() else {
        return Err(class_violated(kind, "outer boundary is no longer a cycle"));
    };
    let before: BTreeSet<Vertex> = g.outer().iter().copied().collect();
    let after: BTreeSet<Vertex> = c.verts().iter().map(|&v| origin[v]).collect();
    if before != after || c.len() != g.outer().len() {
        return Err(class_violated(kind, "outer cycle changed"));
    }
    if let Some((a, b)) = find::find_outer_chord(h) {
        return Err(class_violated(kind, format!("edge {}-{} becomes an outer chord", origin[a], origin[b])));
    }
    Ok(())
}

fn inverse(origin: &[Vertex], n: usize) -> Vec<Vertex> {
    let mut inv = vec![usize::MAX; n];
    for (i, &o) in origin.iter().enumerate() {
        inv[o] = i;
    }
    inv
}

fn components_without(g: &PlaneGraph, v: Vertex) -> Vec<BTreeSet<Vertex>> {
    let mut seen = vec![false; g.n()];
    seen[v] = true;
    let mut comps = Vec::new();
    for &s in g.neighbors(v) {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = BTreeSet::from([s]);
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.insert(w);
                    q.push_back(w);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

impl Plan {
    pub fn build(g: PlaneGraph) -> Result<Plan, ReduceError> {
        let c0 = g.outer_cycle().ok_or_else(|| ReduceError::OutOfClass("outer boundary is not a cycle".into()))?;
        if g.n() == c0.len() {
            return Ok(Plan { graph: g, node: Node::Base });
        }
        let Some(cfg) = find::find_configuration(&g) else {
            let node = Node::Fallback { reason: "no reducible configuration found".into() };
            return Ok(Plan { graph: g, node });
        };
        let node = match &cfg {
            Configuration::LowDegreeInternal { v } => Self::low_degree(&g, *v)?,
            Configuration::OuterChord { u, v } => {
                let o = g.outer();
                let (i, j) = {
                    let pi = o.iter().position(|x| x == u).unwrap();
                    let pj = o.iter().position(|x| x == v).unwrap();
                    (pi.min(pj), pi.max(pj))
                };
                let d1: Vec<Vertex> = o[i..=j].to_vec();
                let d2: Vec<Vertex> = o[j..].iter().chain(o[..=i].iter()).copied().collect();
                let mut parts = Vec::new();
                for d in [d1, d2] {
                    let c = CycleRef::new(&g, &d)?;
                    let (h, origin) = g.side(&c, Side::Inner)?;
                    parts.push((Plan::build(h)?, origin));
                }
                Node::Split { cfg: cfg.clone(), parts }
            }
            Configuration::SeparatingSmallCycle { cycle } => {
                let (int, _) = g.interior(cycle)?;
                let (outside, oo) = g.delete_vertices(&int)?;
                let (inside, oi) = g.side(cycle, Side::Inner)?;
                let parts = vec![(Plan::build(outside)?, oo), (Plan::build(inside)?, oi)];
                Node::Split { cfg: cfg.clone(), parts }
            }
            Configuration::CommonInternalNeighbor { .. } => return Err(ReduceError::Impossible(cfg)),
            Configuration::BadInternal5Face { .. } | Configuration::Tetrad { .. } => match Self::identify(&g, &cfg)? {
                Some((sub, origin)) => {
                    let merged = merged_pair(&g, &cfg).expect("identifying configuration");
                    Node::Identify { cfg: cfg.clone(), sub: Box::new(sub), origin, merged }
                }
                None => Node::Fallback { reason: format!("deleting around {cfg} disconnects the graph") },
            },
        };
        Ok(Plan { graph: g, node })
    }

    fn low_degree(g: &PlaneGraph, v: Vertex) -> Result<Node, ReduceError> {
        let on = outer_mask(g);
        let comps = components_without(g, v);
        let mut del: BTreeSet<Vertex> = [v].into();
        let mut detached = Vec::new();
        let mut detached_fallback = false;
        for comp in &comps {
            if comp.iter().any(|&w| on[w]) {
                continue;
            }
            del.extend(comp.iter().copied());
            let rest: BTreeSet<Vertex> = (0..g.n()).filter(|w| !comp.contains(w)).collect();
            let (h, origin) = g.delete_vertices(&rest)?;
            let part = near_bipartite_partition(&h)?;
            detached_fallback |= part.used_fallback || !part.anomalies.is_empty();
            for (i, &o) in origin.iter().enumerate() {
                detached.push((o, part.coloring.get(i).expect("total")));
            }
        }
        let (h, origin) = g.delete_vertices(&del)?;
        Ok(Node::LowDegree { v, sub: Box::new(Plan::build(h)?), origin, detached, detached_fallback })
    }

    fn identify(g: &PlaneGraph, cfg: &Configuration) -> Result<Option<(Plan, Vec<Vertex>)>, ReduceError> {
        let kind = cfg.kind();
        let (h, origin, _) = match surgery(g, cfg) {
            Ok(r) => r,
            Err(ReduceError::Graph(GraphError::Disconnects)) => return Ok(None),
            Err(e) => return Err(e),
        };
        check_reduced(g, &h, &origin, kind)?;
        Ok(Some((Plan::build(h)?, origin)))
    }

    pub fn graph(&self) -> &PlaneGraph {
        &self.graph
    }

    /// Number of reduction steps, counting every part.
    pub fn depth(&self) -> usize {
        match &self.node {
            Node::Base => 0,
            Node::Fallback { .. } => 1,
            Node::LowDegree { sub, .. } | Node::Identify { sub, .. } => 1 + sub.depth(),
            Node::Split { parts, .. } => 1 + parts.iter().map(|(p, _)| p.depth()).sum::<usize>(),
        }
    }

    /// Colors the graph extending `pre`, which colors exactly the outer
    /// cycle.
    pub(crate) fn execute(&self, pre: &IfColoring, ctx: &mut Ctx) -> Result<IfColoring, ReduceError> {
        let g = &self.graph;
        let sigma = g.sigma();
        let step = ctx.trace.len();
        let (kind, after) = match &self.node {
            Node::Base => return Ok(pre.clone()),
            Node::Fallback { .. } => ("Fallback", 0),
            Node::LowDegree { sub, .. } => ("LowDegreeInternal", sub.graph.sigma()),
            Node::Identify { cfg, sub, .. } => (cfg.kind(), sub.graph.sigma()),
            Node::Split { cfg, parts } => (cfg.kind(), parts.iter().map(|(p, _)| p.graph.sigma()).max().unwrap_or(0)),
        };
        ctx.trace.push(TraceStep { kind, sigma_before: sigma, sigma_after: after, case: String::new() });
        let mut psi = IfColoring::unset(g.n());
        let (label, reinserted): (&'static str, Vec<Vertex>) = match &self.node {
            Node::Base => unreachable!(),
            Node::Fallback { reason } => {
                ctx.anomalies.push(Anomaly { step: Some(step), kind: "fallback", detail: reason.clone() });
                let phi = oracle_fallback(g, pre, ctx.mode)?;
                ctx.trace[step].case = "oracle".into();
                return Ok(phi);
            }
            Node::LowDegree { v, sub, origin, detached, detached_fallback } => {
                let phi = sub.execute(&restrict_to_outer(&sub.graph, pre, origin), ctx)?;
                pull_back(&mut psi, &phi, origin);
                for &(w, c) in detached {
                    psi.set(w, c);
                }
                if *detached_fallback {
                    ctx.anomalies.push(Anomaly {
                        step: Some(step),
                        kind: "fallback",
                        detail: "a component cut off by a low-degree vertex needed the oracle".into(),
                    });
                }
                (lift::lift_low_degree(g, *v, &mut psi), vec![*v])
            }
            Node::Split { cfg, parts } => {
                for &v in g.outer() {
                    if let Some(c) = pre.get(v) {
                        psi.set(v, c);
                    }
                }
                for (plan, origin) in parts {
                    let sub_pre = restrict_to_outer(&plan.graph, &psi, origin);
                    let phi = plan.execute(&sub_pre, ctx)?;
                    pull_back(&mut psi, &phi, origin);
                }
                let label = match cfg {
                    Configuration::OuterChord { .. } => "chord:split",
                    _ => "separating:compose",
                };
                (label, Vec::new())
            }
            Node::Identify { cfg, sub, origin, merged } => {
                let phi = sub.execute(&restrict_to_outer(&sub.graph, pre, origin), ctx)?;
                pull_back(&mut psi, &phi, origin);
                let (a, b) = *merged;
                psi.set(b, psi.get(a).expect("merged vertex colored"));
                match cfg {
                    Configuration::BadInternal5Face { v, u, .. } => {
                        let label = lift::lift_five_face(g, *v, *u, &mut psi, ctx.mode);
                        (label, v.to_vec())
                    }
                    Configuration::Tetrad { path, x, y, v1p, v4p } => {
                        let label = lift::lift_tetrad(g, *path, *x, *y, *v1p, *v4p, &mut psi, ctx.mode);
                        let mut r = path.to_vec();
                        r.extend([*v1p, *y]);
                        (label, r)
                    }
                    _ => unreachable!("only identifying reductions"),
                }
            }
        };
        ctx.branch(label);
        ctx.trace[step].case = label.to_string();
        if lift::certified(g, &psi, ctx.mode) {
            return Ok(psi);
        }
        // The lift did not certify. Repair locally if possible, else solve.
        let detail = format!("lift branch {label} failed its certificates");
        if let Some(fixed) = local_repair(g, &psi, &reinserted, ctx.mode) {
            ctx.anomalies.push(Anomaly { step: Some(step), kind: "repair", detail });
            return Ok(fixed);
        }
        ctx.anomalies.push(Anomaly { step: Some(step), kind: "fallback", detail });
        oracle_fallback(g, pre, ctx.mode)
    }
}

/// The vertices identified by a 5-face or tetrad reduction, the kept one
/// first: the outer vertex if there is one.
fn merged_pair(g: &PlaneGraph, cfg: &Configuration) -> Option<(Vertex, Vertex)> {
    let on = outer_mask(g);
    match cfg {
        Configuration::BadInternal5Face { v, u, .. } => Some((u[0], v[2])),
        Configuration::Tetrad { y, v1p, .. } => Some(if on[*y] { (*y, *v1p) } else { (*v1p, *y) }),
        _ => None,
    }
}

/// A reduced graph, its origin map and the identified pair.
pub type Reduced = (PlaneGraph, Vec<Vertex>, (Vertex, Vertex));

/// Deletes the configuration's vertices and identifies the pair, returning
/// the reduced graph, its origin map and the identified pair (kept vertex
/// first). No class checks are made.
pub fn surgery(g: &PlaneGraph, cfg: &Configuration) -> Result<Reduced, ReduceError> {
    let kind = cfg.kind();
    let del: BTreeSet<Vertex> = match cfg {
        Configuration::BadInternal5Face { v, .. } => [v[0], v[1], v[3], v[4]].into(),
        Configuration::Tetrad { path, .. } => path.iter().copied().collect(),
        _ => return Err(class_violated(kind, "not an identifying configuration")),
    };
    let (a, b) = merged_pair(g, cfg).expect("checked above");
    let on = outer_mask(g);
    if on[a] && on[b] {
        return Err(class_violated(kind, "identification merges two outer vertices"));
    }
    let (g1, o1) = g.delete_vertices(&del)?;
    let inv = inverse(&o1, g.n());
    let (g2, o2) =
        g1.identify(inv[a], inv[b]).map_err(|e| class_violated(kind, format!("identifying {a} and {b}: {e}")))?;
    let origin: Vec<Vertex> = o2.iter().map(|&i| o1[i]).collect();
    Ok((g2, origin, (a, b)))
}

/// Precoloring of `h`'s outer cycle read off a coloring of the parent graph.
fn restrict_to_outer(h: &PlaneGraph, parent: &IfColoring, origin: &[Vertex]) -> IfColoring {
    let mut out = IfColoring::unset(h.n());
    for &v in h.outer() {
        if let Some(c) = parent.get(origin[v]) {
            out.set(v, c);
        }
    }
    out
}

fn pull_back(psi: &mut IfColoring, phi: &IfColoring, origin: &[Vertex]) {
    for (i, &o) in origin.iter().enumerate() {
        if let Some(c) = phi.get(i) {
            psi.set(o, c);
        }
    }
}

fn local_repair(g: &PlaneGraph, psi: &IfColoring, verts: &[Vertex], mode: Mode) -> Option<IfColoring> {
    let on = outer_mask(g);
    let free: Vec<Vertex> = verts.iter().copied().filter(|&v| !on[v]).collect();
    if free.is_empty() || free.len() > 16 {
        return None;
    }
    let mut phi = psi.clone();
    for mask in 0u32..(1 << free.len()) {
        for (i, &v) in free.iter().enumerate() {
            phi.set(v, if mask >> i & 1 == 1 { coloring::Color::I } else { coloring::Color::F });
        }
        if lift::certified(g, &phi, mode) {
            return Some(phi);
        }
    }
    None
}

fn oracle_fallback(g: &PlaneGraph, pre: &IfColoring, mode: Mode) -> Result<IfColoring, ReduceError> {
    let c = g.outer_cycle().expect("plans are built on graphs with an outer cycle");
    oracle::solve(&SolveRequest::new(g).fixed(pre.clone()).superextend(c, mode)).ok_or(ReduceError::NoExtension)
}
