//! Extending a coloring of the reduced graph back over the removed vertices.
//!
//! Each lift receives `psi`, a coloring of the original graph in which only
//! the removed vertices are unset (for identifications, both merged
//! originals carry the merged color). F-path queries run on that partial
//! coloring. Every function returns the label of the branch it took.

use std::collections::BTreeSet;

use crate::coloring::{self, Certificate, Color, IfColoring, Mode};
use crate::plane_graph::{PlaneGraph, Vertex};

use super::find::outer_mask;

use Color::{F, I};

pub const LOW_DEGREE_BRANCHES: &[(&str, &str)] =
    &[("low:F", "v has a neighbor colored I, color v with F"), ("low:I", "otherwise, color v with I")];

pub const FIVE_FACE_BRANCHES: &[(&str, &str)] = &[
    ("5face:I:u5=F", "new vertex I, u5 colored F: color v5 with I"),
    ("5face:I:u5=I", "new vertex I, u5 colored I: color v5 with F"),
    ("5face:I:u5=I:recolor", "u2 and u4 both F: recolor v3 with F and v2, v4 with I"),
    ("5face:F:u4=I", "new vertex F, u4 colored I: v1, v4 F, v2 and v5 opposite to u2 and u5"),
    ("5face:F:u4=I:recolor", "u2 and u5 both I: recolor v1 with I"),
    ("5face:F:u4=F", "color v1, v4 with I and v2, v3, v5 with F"),
    ("5face:F:u4=F:u5=I", "u5 colored I: color v2, v4 with I and v1, v3, v5 with F"),
    ("5face:F:all:u3-free:no-path-u2u3", "no F-path u3 to C0 nor u2 to u3: color v2, v3, v5 with F and v1, v4 with I"),
    ("5face:F:all:u3-free:path-u2u3", "F-path between u2 and u3: color v1, v2, v4 with F and v3, v5 with I"),
    ("5face:F:all:u1-free:no-path-u1u2", "mirror case, no F-path u1 to u2: color v1, v2, v4 with F and v3, v5 with I"),
    (
        "5face:F:all:u1-free:path-u1u2",
        "mirror case, F-path between u1 and u2: color v2, v3, v5 with F and v1, v4 with I",
    ),
];

pub const TETRAD_BRANCHES: &[(&str, &str)] = &[
    ("tetrad:I", "v1', y colored I: color v1, v2, v4 with F and v3 opposite to v4'"),
    ("tetrad:F:v4'=I:x=I", "v4' and x colored I: color v1, v3, v4 with F and v2 with I"),
    ("tetrad:F:v4'=I:x=F", "v4' colored I, x colored F: color v1 with I and v2, v3, v4 with F"),
    ("tetrad:F:v4'=F:x=I", "v4' colored F, x colored I: color v2, v4 with I and v1, v3 with F"),
    ("tetrad:F:v1'-free", "no F-path from v1' to C0 nor to v4': color v1, v4 with I and v2, v3 with F"),
    ("tetrad:F:y-free", "no F-path from y to C0 nor to v4': color v1, v3 with I and v2, v4 with F"),
    ("tetrad:F:case1", "Case 1, no F-path v1' to C0 nor y to v4': color v1, v3 with I and v2, v4 with F"),
    ("tetrad:F:case2", "Case 2, no F-path y to C0 nor v1' to v4': color v1, v4 with I and v2, v3 with F"),
];

/// Whether `phi` is an IF-coloring of `g` superextending its outer cycle.
pub fn certified(g: &PlaneGraph, phi: &IfColoring, mode: Mode) -> bool {
    let Some(c) = g.outer_cycle() else {
        return false;
    };
    phi.is_total()
        && coloring::is_if_coloring(g, phi).is_valid()
        && matches!(coloring::is_superextension(g, &c, phi, mode), Ok(Certificate::Valid))
}

/// Whether `x` is F and joined to the outer cycle by an F-path whose
/// interior avoids the cycle. Outer vertices reach it trivially.
pub fn reaches_outer(g: &PlaneGraph, phi: &IfColoring, x: Vertex, mode: Mode) -> bool {
    if !phi.is(x, F) {
        return false;
    }
    let on = outer_mask(g);
    if on[x] {
        return true;
    }
    let mut seen = vec![false; g.n()];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if on[w] {
                let admissible = match mode {
                    Mode::Strict => true,
                    Mode::Lenient => phi.is(w, F),
                };
                if admissible {
                    return true;
                }
            } else if !seen[w] && phi.is(w, F) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

fn f_path(g: &PlaneGraph, phi: &IfColoring, a: Vertex, b: Vertex) -> bool {
    coloring::f_path_between(g, phi, a, b, &BTreeSet::new()).is_some()
}

fn color_of(phi: &IfColoring, v: Vertex) -> Color {
    phi.get(v).expect("lift expects every kept vertex colored")
}

fn paint(phi: &mut IfColoring, verts: &[Vertex], c: Color) {
    for &v in verts {
        phi.set(v, c);
    }
}

pub fn lift_low_degree(g: &PlaneGraph, v: Vertex, phi: &mut IfColoring) -> &'static str {
    if g.neighbors(v).iter().any(|&w| phi.is(w, I)) {
        phi.set(v, F);
        "low:F"
    } else {
        phi.set(v, I);
        "low:I"
    }
}

pub fn lift_five_face(
    g: &PlaneGraph,
    v: [Vertex; 5],
    u: [Vertex; 5],
    phi: &mut IfColoring,
    mode: Mode,
) -> &'static str {
    let [v1, v2, v3, v4, v5] = v;
    let [u1, u2, u3, u4, u5] = u;
    let cu = |phi: &IfColoring, i: Vertex| color_of(phi, i);
    if cu(phi, u1) == I {
        paint(phi, &[u1, v3], I);
        paint(phi, &[v1, v2, v4], F);
        if cu(phi, u5) == F {
            phi.set(v5, I);
            return "5face:I:u5=F";
        }
        phi.set(v5, F);
        if cu(phi, u2) == F && cu(phi, u4) == F {
            phi.set(v3, F);
            paint(phi, &[v2, v4], I);
            return "5face:I:u5=I:recolor";
        }
        return "5face:I:u5=I";
    }
    paint(phi, &[u1, v3], F);
    if cu(phi, u4) == I {
        paint(phi, &[v1, v4], F);
        phi.set(v2, cu(phi, u2).flip());
        phi.set(v5, cu(phi, u5).flip());
        if cu(phi, u2) == I && cu(phi, u5) == I {
            phi.set(v1, I);
            return "5face:F:u4=I:recolor";
        }
        return "5face:F:u4=I";
    }
    let partial = phi.clone();
    let option_a = |phi: &mut IfColoring| {
        paint(phi, &[v1, v4], I);
        paint(phi, &[v2, v3, v5], F);
    };
    let option_c = |phi: &mut IfColoring| {
        paint(phi, &[v3, v5], I);
        paint(phi, &[v1, v2, v4], F);
    };
    // Coloring v1, v4 with I can only fail by joining u2 to u3.
    if !(cu(phi, u2) == F && cu(phi, u3) == F) {
        option_a(phi);
        return "5face:F:u4=F";
    }
    if cu(phi, u5) == I {
        paint(phi, &[v2, v4], I);
        paint(phi, &[v1, v3, v5], F);
        return "5face:F:u4=F:u5=I";
    }
    // Every u_i is F. At most one of u1, u3 reaches C0.
    if !reaches_outer(g, &partial, u3, mode) {
        if !f_path(g, &partial, u2, u3) {
            option_a(phi);
            "5face:F:all:u3-free:no-path-u2u3"
        } else {
            option_c(phi);
            "5face:F:all:u3-free:path-u2u3"
        }
    } else if !f_path(g, &partial, u1, u2) {
        option_c(phi);
        "5face:F:all:u1-free:no-path-u1u2"
    } else {
        option_a(phi);
        "5face:F:all:u1-free:path-u1u2"
    }
}

#[allow(clippy::too_many_arguments)]
pub fn lift_tetrad(
    g: &PlaneGraph,
    path: [Vertex; 4],
    x: Vertex,
    y: Vertex,
    v1p: Vertex,
    v4p: Vertex,
    phi: &mut IfColoring,
    mode: Mode,
) -> &'static str {
    let [v1, v2, v3, v4] = path;
    let merged = color_of(phi, v1p);
    debug_assert_eq!(phi.get(y), Some(merged));
    let c4p = color_of(phi, v4p);
    let cx = color_of(phi, x);
    if merged == I {
        paint(phi, &[v1, v2, v4], F);
        phi.set(v3, c4p.flip());
        return "tetrad:I";
    }
    match (c4p, cx) {
        (I, I) => {
            paint(phi, &[v1, v3, v4], F);
            phi.set(v2, I);
            "tetrad:F:v4'=I:x=I"
        }
        (I, F) => {
            phi.set(v1, I);
            paint(phi, &[v2, v3, v4], F);
            "tetrad:F:v4'=I:x=F"
        }
        (F, I) => {
            paint(phi, &[v2, v4], I);
            paint(phi, &[v1, v3], F);
            "tetrad:F:v4'=F:x=I"
        }
        (F, F) => {
            let a = reaches_outer(g, phi, v1p, mode);
            let b = f_path(g, phi, v1p, v4p);
            let c = reaches_outer(g, phi, y, mode);
            let d = f_path(g, phi, y, v4p);
            let ends_14 = |phi: &mut IfColoring| {
                paint(phi, &[v1, v4], I);
                paint(phi, &[v2, v3], F);
            };
            let ends_13 = |phi: &mut IfColoring| {
                paint(phi, &[v1, v3], I);
                paint(phi, &[v2, v4], F);
            };
            if !a && !b {
                ends_14(phi);
                "tetrad:F:v1'-free"
            } else if !c && !d {
                ends_13(phi);
                "tetrad:F:y-free"
            } else if !a && !d {
                ends_13(phi);
                "tetrad:F:case1"
            } else if !c && !b {
                ends_14(phi);
                "tetrad:F:case2"
            } else {
                ends_14(phi);
                "tetrad:F:unclassified"
            }
        }
    }
}
