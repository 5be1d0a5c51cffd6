//! Exact discharging over vertices, internal faces and the outer face.
//!
//! Charges are integers counting thirds. Vertices start at `d(v) - 4`,
//! internal faces at `d(f) - 4` and the outer face at `|C0| + 4`, which sums
//! to zero on a connected plane graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::plane_graph::{PlaneGraph, Vertex};
use crate::reducer;

#[derive(Debug, Error)]
pub enum DischargeError {
    #[error("out of class: {0}")]
    OutOfClass(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementRef {
    Vertex(Vertex),
    /// An internal face, by index into `faces()`.
    Face(usize),
    Outer,
}

impl fmt::Display for ElementRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementRef::Vertex(v) => write!(f, "v{v}"),
            ElementRef::Face(i) => write!(f, "f{i}"),
            ElementRef::Outer => write!(f, "C0"),
        }
    }
}

/// A charge in thirds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Charge {
    pub thirds: i64,
}

impl Charge {
    pub fn thirds(t: i64) -> Charge {
        Charge { thirds: t }
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/3", self.thirds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    Surplus,
}

impl Rule {
    pub const ALL: [Rule; 5] = [Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::Surplus];

    /// Amounts in thirds the rule may move; `None` for the surplus step.
    pub fn amounts(self) -> Option<&'static [i64]> {
        match self {
            Rule::R1 | Rule::R3 => Some(&[1]),
            Rule::R2 => Some(&[1, 2]),
            Rule::R4 => Some(&[3, 4, 5]),
            Rule::Surplus => None,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::Surplus => "surplus",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub from: ElementRef,
    pub to: ElementRef,
    pub thirds: i64,
    pub rule: Rule,
}

impl fmt::Display for Transfer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} -> {} {}/3", self.rule, self.from, self.to, self.thirds)
    }
}

/// Vertex and face flags used by the rules.
#[derive(Debug, Clone)]
pub struct Classification {
    pub on_outer: Vec<bool>,
    /// Internal 3-vertex on an internal 3-face.
    pub bad3: Vec<bool>,
    /// 2-vertex of the outer cycle on an internal 5-face.
    pub special2: Vec<bool>,
    /// Pairs `(v, f)` with `v` a poor 4-vertex of face `f`.
    pub poor: BTreeSet<(Vertex, usize)>,
    pub face_internal: Vec<bool>,
    /// Internal face sharing no vertex with the outer cycle.
    pub truly_internal: Vec<bool>,
}

impl Classification {
    pub fn internal(&self, v: Vertex) -> bool {
        !self.on_outer[v]
    }

    pub fn is_poor(&self, v: Vertex, f: usize) -> bool {
        self.poor.contains(&(v, f))
    }
}

/// Distinct faces around `v`.
fn faces_around(g: &PlaneGraph, v: Vertex) -> BTreeSet<usize> {
    g.faces_at(v).iter().copied().collect()
}

/// Whether faces `a` and `b` share an edge.
pub fn faces_adjacent(g: &PlaneGraph, a: usize, b: usize) -> bool {
    a != b && g.faces()[a].darts().any(|(u, v)| g.face_of_dart(v, u) == b)
}

pub fn classify(g: &PlaneGraph) -> Classification {
    let n = g.n();
    let outer = g.outer_face_index();
    let faces = g.faces();
    let mut on_outer = vec![false; n];
    for &v in g.outer() {
        on_outer[v] = true;
    }
    let face_internal: Vec<bool> = (0..faces.len()).map(|f| f != outer).collect();
    let truly_internal =
        (0..faces.len()).map(|f| face_internal[f] && faces[f].boundary.iter().all(|&v| !on_outer[v])).collect();
    let internal_of_degree = |v: Vertex, d: usize| -> Vec<usize> {
        faces_around(g, v).into_iter().filter(|&f| face_internal[f] && faces[f].degree == d).collect()
    };
    let bad3 = (0..n).map(|v| !on_outer[v] && g.degree(v) == 3 && !internal_of_degree(v, 3).is_empty()).collect();
    let special2 = (0..n).map(|v| on_outer[v] && g.degree(v) == 2 && !internal_of_degree(v, 5).is_empty()).collect();
    let mut poor = BTreeSet::new();
    for v in (0..n).filter(|&v| !on_outer[v] && g.degree(v) == 4) {
        let around = faces_around(g, v);
        let tris = internal_of_degree(v, 3);
        let fives = internal_of_degree(v, 5);
        for &f in &around {
            let others = |t: &&usize| **t != f;
            let lone_tri = tris.iter().filter(others).any(|&t| !faces_adjacent(g, t, f));
            let two_tris = tris.iter().filter(others).filter(|&&t| faces_adjacent(g, t, f)).count() >= 2;
            let five = fives.iter().any(|&p| p != f && faces_adjacent(g, p, f));
            if lone_tri || two_tris || five {
                poor.insert((v, f));
            }
        }
    }
    Classification { on_outer, bad3, special2, poor, face_internal, truly_internal }
}

/// Charges of every element together with the log of transfers.
#[derive(Debug, Clone)]
pub struct ChargeLedger {
    initial: BTreeMap<ElementRef, i64>,
    charge: BTreeMap<ElementRef, i64>,
    log: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn charge(&self, e: ElementRef) -> Charge {
        Charge::thirds(self.charge.get(&e).copied().unwrap_or(0))
    }

    pub fn initial(&self, e: ElementRef) -> Charge {
        Charge::thirds(self.initial.get(&e).copied().unwrap_or(0))
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementRef> + '_ {
        self.charge.keys().copied()
    }

    pub fn total(&self) -> Charge {
        Charge::thirds(self.charge.values().sum())
    }

    pub fn log(&self) -> &[Transfer] {
        &self.log
    }

    /// Sum of the amounts moved from `from` to `to`.
    pub fn sent(&self, from: ElementRef, to: ElementRef) -> Charge {
        Charge::thirds(self.log.iter().filter(|t| t.from == from && t.to == to).map(|t| t.thirds).sum())
    }

    pub fn transfer(&mut self, from: ElementRef, to: ElementRef, thirds: i64, rule: Rule) {
        *self.charge.entry(from).or_default() -= thirds;
        *self.charge.entry(to).or_default() += thirds;
        self.log.push(Transfer { from, to, thirds, rule });
    }
}

pub fn initial_charges(g: &PlaneGraph) -> ChargeLedger {
    let mut initial = BTreeMap::new();
    for v in 0..g.n() {
        initial.insert(ElementRef::Vertex(v), 3 * (g.degree(v) as i64 - 4));
    }
    let outer = g.outer_face_index();
    for (i, f) in g.faces().iter().enumerate() {
        if i != outer {
            initial.insert(ElementRef::Face(i), 3 * (f.degree as i64 - 4));
        }
    }
    initial.insert(ElementRef::Outer, 3 * (g.faces()[outer].degree as i64 + 4));
    ChargeLedger { charge: initial.clone(), initial, log: Vec::new() }
}

/// Applies one rule to `ledger`.
pub fn apply_rule(g: &PlaneGraph, cls: &Classification, ledger: &mut ChargeLedger, rule: Rule) {
    use ElementRef::{Face, Outer, Vertex as V};
    let faces = g.faces();
    let internal_faces = (0..faces.len()).filter(|&f| cls.face_internal[f]);
    match rule {
        Rule::R1 => {
            for f in internal_faces.filter(|&f| faces[f].degree == 3) {
                for v in faces[f].vertex_set() {
                    ledger.transfer(V(v), Face(f), 1, rule);
                }
            }
        }
        Rule::R2 => {
            for f in internal_faces {
                let d = faces[f].degree;
                for v in faces[f].vertex_set() {
                    let (dv, internal) = (g.degree(v), cls.internal(v));
                    if d == 5 {
                        if dv >= 4 && internal {
                            ledger.transfer(V(v), Face(f), 1, rule);
                        } else if dv == 2 || (dv == 3 && internal) {
                            ledger.transfer(Face(f), V(v), 1, rule);
                        }
                    } else if d >= 7 {
                        if dv == 2 || cls.bad3[v] {
                            ledger.transfer(Face(f), V(v), 2, rule);
                        } else if (dv == 3 && internal) || cls.is_poor(v, f) {
                            ledger.transfer(Face(f), V(v), 1, rule);
                        }
                    }
                }
            }
        }
        Rule::R3 => {
            for v in (0..g.n()).filter(|&v| cls.on_outer[v] && g.degree(v) >= 4) {
                for f in faces_around(g, v) {
                    if cls.face_internal[f] && faces[f].degree == 5 {
                        ledger.transfer(V(v), Face(f), 1, rule);
                    }
                }
            }
        }
        Rule::R4 => {
            let outer: BTreeSet<Vertex> = g.outer().iter().copied().collect();
            for v in outer {
                let on_tri = faces_around(g, v).into_iter().any(|f| cls.face_internal[f] && faces[f].degree == 3);
                let amount = match g.degree(v) {
                    _ if cls.special2[v] => 5,
                    2 => 4,
                    3 if on_tri => 4,
                    _ => 3,
                };
                ledger.transfer(Outer, V(v), amount, rule);
            }
        }
        Rule::Surplus => {
            for f in internal_faces.filter(|&f| faces[f].degree >= 5) {
                let c = ledger.charge(Face(f)).thirds;
                if c > 0 {
                    ledger.transfer(Face(f), Outer, c, rule);
                }
            }
        }
    }
}

/// Initial charges followed by R1, R2, R3, R4 and finally the surplus step.
pub fn run_rules(g: &PlaneGraph, cls: &Classification) -> ChargeLedger {
    let mut ledger = initial_charges(g);
    for rule in Rule::ALL {
        apply_rule(g, cls, &mut ledger, rule);
    }
    ledger
}

/// A maximal run of consecutive bad 3-vertices along a face walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadRun {
    pub vertices: Vec<Vertex>,
    /// For runs of four: whether the edge entering the run, the middle edge
    /// and the edge leaving it all lie on internal 3-faces.
    pub triangles_ok: Option<bool>,
}

impl BadRun {
    /// Five or more consecutive bad vertices cannot occur without a tetrad.
    pub fn is_violation(&self) -> bool {
        self.vertices.len() >= 5 || self.triangles_ok == Some(false)
    }
}

pub fn consecutive_bad_pattern(g: &PlaneGraph, cls: &Classification, face: usize) -> Vec<BadRun> {
    let b = &g.faces()[face].boundary;
    let k = b.len();
    if k == 0 {
        return Vec::new();
    }
    let on_tri = |u: Vertex, v: Vertex| {
        let (x, y) = g.faces_of_edge(u, v);
        [x, y].iter().any(|&f| cls.face_internal[f] && g.faces()[f].degree == 3)
    };
    if b.iter().all(|&v| cls.bad3[v]) {
        return vec![BadRun { vertices: b.clone(), triangles_ok: None }];
    }
    let start = (0..k).find(|&i| !cls.bad3[b[i]]).expect("some vertex is not bad");
    let mut runs = Vec::new();
    let mut i = 1;
    while i <= k {
        let p = (start + i) % k;
        if !cls.bad3[b[p]] {
            i += 1;
            continue;
        }
        let mut run = Vec::new();
        while i <= k && cls.bad3[b[(start + i) % k]] {
            run.push(b[(start + i) % k]);
            i += 1;
        }
        let triangles_ok = (run.len() == 4).then(|| {
            let before = b[(p + k - 1) % k];
            let after = b[(start + i) % k];
            on_tri(before, run[0]) && on_tri(run[1], run[2]) && on_tri(run[3], after)
        });
        runs.push(BadRun { vertices: run, triangles_ok });
    }
    runs
}

#[derive(Debug, Clone)]
pub struct AuditReport {
    pub classification: Classification,
    pub ledger: ChargeLedger,
    pub outer_len: usize,
    /// Vertices with negative final charge.
    pub negative_vertices: Vec<Vertex>,
    /// Internal faces with negative final charge.
    pub negative_faces: Vec<usize>,
    /// Runs of at least four bad vertices, by face.
    pub bad_runs: Vec<(usize, BadRun)>,
    /// The first reducible configuration, reported when a bound fails.
    pub configuration: Option<reducer::Configuration>,
}

impl AuditReport {
    pub fn outer_final(&self) -> Charge {
        self.ledger.charge(ElementRef::Outer)
    }

    pub fn conserved(&self) -> bool {
        self.ledger.total().thirds == 0
    }

    /// The part of the text report from `verdict:` on.
    pub fn verdict_block(&self) -> String {
        let text = self.to_string();
        let at = text.find("verdict:\n").expect("report has a verdict");
        text[at..].to_string()
    }

    pub fn bounds_hold(&self) -> bool {
        self.negative_vertices.is_empty() && self.negative_faces.is_empty() && self.outer_final().thirds > 0
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "OK"
    } else {
        "FAIL"
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in self.ledger.elements() {
            writeln!(f, "{e} init={} final={}", self.ledger.initial(e), self.ledger.charge(e))?;
        }
        writeln!(f, "transfers:")?;
        for t in self.ledger.log() {
            writeln!(f, "{t}")?;
        }
        writeln!(f, "verdict:")?;
        for (face, run) in &self.bad_runs {
            let pattern = match run.triangles_ok {
                Some(ok) => verdict(ok),
                None => "n/a",
            };
            writeln!(f, "bad_run face=f{face} len={} pattern={pattern}", run.vertices.len())?;
        }
        writeln!(f, "vertices_nonnegative={}", verdict(self.negative_vertices.is_empty()))?;
        writeln!(f, "internal_faces_nonnegative={}", verdict(self.negative_faces.is_empty()))?;
        writeln!(f, "outer_len={} outer_final={}", self.outer_len, self.outer_final())?;
        writeln!(f, "outer_positive={}", verdict(self.outer_final().thirds > 0))?;
        if !self.bounds_hold() {
            match &self.configuration {
                Some(c) => writeln!(f, "configuration={c}")?,
                None => writeln!(f, "configuration=none")?,
            }
        }
        write!(f, "conservation={} total={}", verdict(self.conserved()), self.ledger.total())
    }
}

/// Runs the rules on an in-class graph and checks the final charges.
pub fn audit(g: &PlaneGraph) -> Result<AuditReport, DischargeError> {
    if g.has_forbidden_cycles() {
        return Err(DischargeError::OutOfClass("graph has a 4-, 6- or 8-cycle".into()));
    }
    let c0 = g.outer_cycle().ok_or_else(|| DischargeError::OutOfClass("outer boundary is not a cycle".into()))?;
    if c0.len() > 12 {
        return Err(DischargeError::OutOfClass(format!("outer cycle of length {} exceeds 12", c0.len())));
    }
    let cls = classify(g);
    let ledger = run_rules(g, &cls);
    let negative_vertices = (0..g.n()).filter(|&v| ledger.charge(ElementRef::Vertex(v)).thirds < 0).collect();
    let negative_faces = (0..g.faces().len())
        .filter(|&f| cls.face_internal[f] && ledger.charge(ElementRef::Face(f)).thirds < 0)
        .collect();
    let bad_runs = (0..g.faces().len())
        .filter(|&f| cls.face_internal[f])
        .flat_map(|f| {
            consecutive_bad_pattern(g, &cls, f).into_iter().filter(|r| r.vertices.len() >= 4).map(move |r| (f, r))
        })
        .collect();
    let mut report = AuditReport {
        classification: cls,
        ledger,
        outer_len: c0.len(),
        negative_vertices,
        negative_faces,
        bad_runs,
        configuration: None,
    };
    if !report.bounds_hold() {
        report.configuration = reducer::find_configuration(g);
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
