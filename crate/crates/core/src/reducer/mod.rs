//! Constructive superextension: find a reducible configuration, shrink the
//! graph, recurse, and lift the coloring back.
//!
//! Reductions run against the outer face cycle C0. A [`CyclePlan`] handles
//! an arbitrary cycle by re-rooting the embedding when the cycle bounds a
//! face and by splitting along it otherwise.

mod find;
mod lift;
mod plan;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::coloring::{self, Certificate, Color, IfColoring, Mode};
use crate::oracle::{self, SolveRequest};
use crate::plane_graph::{CycleRef, GraphError, PlaneGraph, Side, Vertex};

pub use find::{
    find_bad_5face, find_common_internal_neighbor, find_configuration, find_low_degree, find_outer_chord,
    find_separating, find_tetrad, five_face_at, tetrad_at, Configuration,
};
pub use lift::{
    certified, lift_five_face, lift_low_degree, lift_tetrad, reaches_outer, FIVE_FACE_BRANCHES, LOW_DEGREE_BRANCHES,
    TETRAD_BRANCHES,
};
pub use plan::{surgery, Plan, Reduced};

#[derive(Debug, Error)]
pub enum ReduceError {
    #[error("out of class: {0}")]
    OutOfClass(String),
    #[error("{kind} reduction left the class: {detail}")]
    ClassViolated { kind: &'static str, detail: String },
    #[error("found {0}, which cannot occur once the earlier configurations are absent")]
    Impossible(Configuration),
    #[error("invalid precoloring: {0}")]
    InvalidPrecoloring(String),
    #[error("the precoloring does not superextend")]
    NoExtension,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A departure from the constructive path: a lift that needed local repair
/// or a subproblem handed to the exhaustive solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anomaly {
    pub step: Option<usize>,
    pub kind: &'static str,
    pub detail: String,
}

impl fmt::Display for Anomaly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(k) => write!(f, "anomaly step={k} kind={} {}", self.kind, self.detail),
            None => write!(f, "anomaly kind={} {}", self.kind, self.detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub kind: &'static str,
    pub sigma_before: usize,
    /// σ of the reduced graph; the largest part for splits, 0 when solved
    /// directly.
    pub sigma_after: usize,
    pub case: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl fmt::Display for ReductionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.steps.iter().enumerate() {
            writeln!(f, "step {k} kind={} sigma={}->{} case={}", s.kind, s.sigma_before, s.sigma_after, s.case)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub coloring: IfColoring,
    pub trace: ReductionTrace,
    pub anomalies: Vec<Anomaly>,
    /// How often each lift branch ran.
    pub branches: BTreeMap<&'static str, usize>,
}

/// Reduction plans for superextending from a given cycle.
#[derive(Debug, Clone)]
pub struct CyclePlan {
    graph: PlaneGraph,
    cycle: CycleRef,
    parts: Vec<(Plan, Vec<Vertex>)>,
}

impl CyclePlan {
    pub fn new(g: &PlaneGraph, c: &CycleRef) -> Result<CyclePlan, ReduceError> {
        if g.has_forbidden_cycles() {
            return Err(ReduceError::OutOfClass("graph has a 4-, 6- or 8-cycle".into()));
        }
        if c.len() > 12 {
            return Err(ReduceError::OutOfClass(format!("cycle of length {} exceeds 12", c.len())));
        }
        let c = CycleRef::new(g, c.verts())?;
        let parts = match g.face_bounded_by(&c) {
            Some(f) => vec![(Plan::build(g.with_outer(f))?, (0..g.n()).collect())],
            None => {
                let mut parts = Vec::new();
                for side in [Side::Inner, Side::Outer] {
                    let (h, origin) = g.side(&c, side)?;
                    parts.push((Plan::build(h)?, origin));
                }
                parts
            }
        };
        Ok(CyclePlan { graph: g.clone(), cycle: c, parts })
    }

    pub fn cycle(&self) -> &CycleRef {
        &self.cycle
    }

    /// Extends `pre`, which must color exactly the cycle, to a coloring of
    /// the whole graph with no F-path off the cycle between cycle vertices.
    pub fn execute(&self, pre: &IfColoring, mode: Mode) -> Result<Outcome, ReduceError> {
        let g = &self.graph;
        if pre.len() != g.n() {
            return Err(ReduceError::InvalidPrecoloring(format!("length {} for {} vertices", pre.len(), g.n())));
        }
        for v in 0..g.n() {
            if pre.get(v).is_some() != self.cycle.contains(v) {
                return Err(ReduceError::InvalidPrecoloring(format!("vertex {v} must be colored iff on the cycle")));
            }
        }
        if let Certificate::Invalid(w) = coloring::is_if_coloring(g, pre) {
            return Err(ReduceError::InvalidPrecoloring(w.to_string()));
        }
        let mut ctx = plan::Ctx::new(mode);
        let mut psi = pre.clone();
        for (plan, origin) in &self.parts {
            let mut sub_pre = IfColoring::unset(plan.graph().n());
            for (i, &o) in origin.iter().enumerate() {
                if self.cycle.contains(o) {
                    sub_pre.set(i, pre.get(o).expect("cycle precolored"));
                }
            }
            let phi = plan.execute(&sub_pre, &mut ctx)?;
            for (i, &o) in origin.iter().enumerate() {
                psi.set(o, phi.get(i).expect("plans return total colorings"));
            }
        }
        let ok = coloring::is_if_coloring(g, &psi).is_valid()
            && matches!(coloring::is_superextension(g, &self.cycle, &psi, mode), Ok(Certificate::Valid));
        if !ok {
            ctx.anomalies.push(Anomaly { step: None, kind: "fallback", detail: "gluing the two sides failed".into() });
            let req = SolveRequest::new(g).fixed(pre.clone()).superextend(self.cycle.clone(), mode);
            psi = oracle::solve(&req).ok_or(ReduceError::NoExtension)?;
        }
        Ok(Outcome {
            coloring: psi,
            trace: ReductionTrace { steps: ctx.trace },
            anomalies: ctx.anomalies,
            branches: ctx.branches,
        })
    }
}

/// Superextends the precoloring `pre` of `c` to all of `g`.
pub fn superextend(g: &PlaneGraph, c: &CycleRef, pre: &IfColoring, mode: Mode) -> Result<Outcome, ReduceError> {
    CyclePlan::new(g, c)?.execute(pre, mode)
}

#[derive(Debug, Clone)]
pub struct Partition {
    pub independent: BTreeSet<Vertex>,
    pub forest: BTreeSet<Vertex>,
    pub coloring: IfColoring,
    /// No cycle of length at most 12 exists, so the exhaustive solver
    /// produced the coloring.
    pub used_fallback: bool,
    pub anomalies: Vec<Anomaly>,
    pub trace: ReductionTrace,
}

/// Splits the vertices into an independent set and a forest.
pub fn near_bipartite_partition(g: &PlaneGraph) -> Result<Partition, ReduceError> {
    if g.has_forbidden_cycles() {
        return Err(ReduceError::OutOfClass("graph has a 4-, 6- or 8-cycle".into()));
    }
    let finish = |coloring: IfColoring, used_fallback, anomalies, trace| Partition {
        independent: coloring.class(Color::I),
        forest: coloring.class(Color::F),
        coloring,
        used_fallback,
        anomalies,
        trace,
    };
    if g.is_forest() {
        let all_f = IfColoring::from_vec(vec![Some(Color::F); g.n()]);
        return Ok(finish(all_f, false, Vec::new(), ReductionTrace::default()));
    }
    match g.short_cycles(12).into_iter().next() {
        Some(c) => {
            let pre = coloring::valid_precolorings(g, &c).into_iter().next().expect("a cycle has a valid precoloring");
            let out = superextend(g, &c, &pre, Mode::default())?;
            Ok(finish(out.coloring, false, out.anomalies, out.trace))
        }
        None => {
            let phi = oracle::solve(&SolveRequest::new(g)).ok_or(ReduceError::NoExtension)?;
            Ok(finish(phi, true, Vec::new(), ReductionTrace::default()))
        }
    }
}

/// Result of lifting every superextension of a reduced graph.
#[derive(Debug, Clone, Default)]
pub struct LiftReport {
    pub lifted: usize,
    /// Lifted colorings that failed a certificate, as coloring strings.
    pub failures: Vec<String>,
    pub branches: BTreeMap<&'static str, usize>,
}

/// Reduces `g` at the 5-face or tetrad `cfg` and lifts superextensions of
/// the reduced graph back to `g`. For every precoloring of the reduced outer
/// cycle and every coloring of the configuration's neighbors, up to `limit`
/// superextensions are lifted (all of them when `limit` is `None`).
pub fn lift_exhaustively(
    g: &PlaneGraph,
    cfg: &Configuration,
    mode: Mode,
    limit: Option<usize>,
) -> Result<LiftReport, ReduceError> {
    let (h, origin, (a, b)) = surgery(g, cfg)?;
    let c0 = h.outer_cycle().ok_or_else(|| ReduceError::OutOfClass("outer boundary is not a cycle".into()))?;
    let around: Vec<Vertex> = match cfg {
        Configuration::BadInternal5Face { u, .. } => u.to_vec(),
        Configuration::Tetrad { x, y, v4p, .. } => vec![*x, *y, *v4p],
        _ => unreachable!("surgery accepts only identifying configurations"),
    };
    let pinned: Vec<Vertex> = around
        .iter()
        .filter_map(|&w| origin.iter().position(|&o| o == w || (w == b && o == a)))
        .filter(|&i| !c0.contains(i))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut report = LiftReport::default();
    for pre in coloring::valid_precolorings(&h, &c0) {
        for mask in 0..1u32 << pinned.len() {
            let mut fixed = pre.clone();
            for (k, &i) in pinned.iter().enumerate() {
                fixed.set(i, if mask >> k & 1 == 1 { Color::I } else { Color::F });
            }
            let req = SolveRequest::new(&h).fixed(fixed).superextend(c0.clone(), mode);
            for phi in oracle::solutions(&req, limit) {
                let mut psi = IfColoring::unset(g.n());
                for (i, &o) in origin.iter().enumerate() {
                    psi.set(o, phi.get(i).expect("total"));
                }
                psi.set(b, psi.get(a).expect("merged vertex colored"));
                let label = match cfg {
                    Configuration::BadInternal5Face { v, u, .. } => lift_five_face(g, *v, *u, &mut psi, mode),
                    Configuration::Tetrad { path, x, y, v1p, v4p } => {
                        lift_tetrad(g, *path, *x, *y, *v1p, *v4p, &mut psi, mode)
                    }
                    _ => unreachable!(),
                };
                *report.branches.entry(label).or_default() += 1;
                report.lifted += 1;
                if !certified(g, &psi, mode) {
                    report.failures.push(format!("{label}: {psi}"));
                }
            }
        }
    }
    Ok(report)
}
