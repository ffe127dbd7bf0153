//! Classifying an uncolored butterfly edge by how it will be colored.
//!
//! Precondition for classification: every other edge incident to the two
//! endpoints is colored. The classifier then sorts the edge into one of
//! seven kinds. Kind 0 carries a finished recoloring script touching only
//! edges within distance one. Kinds 1 through 6 name a two-color chain flip
//! (or two) plus a constant number of local moves; edges of equal kind and
//! colors can be batched, because their plans flip chains of the same color
//! pair.
//!
//! The shared-wing butterfly always classifies as kind 0 via a fixed case
//! analysis. The disjoint-wing butterfly walks a decision tree whose every
//! exit either emits a script or names the chain structure that blocks it.

use crate::chains::ChainIndex;
use crate::coloring::{Color, ColorError, PartialColoring};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::oracle::naive_chain;
use crate::reducible::{ButterflyKind, ButterflyWitness};
use thiserror::Error;

/// One move of a kind-0 script. Swaps exchange the colors of two colored
/// edges; a script is applied as a single simultaneous recoloring, so its
/// net effect only has to be proper at the end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScriptStep {
    Set(EdgeId, Color),
    Swap(EdgeId, EdgeId),
}

/// Classification of an uncolored edge, with the witnesses its plan needs.
///
/// Color roles follow the conventions named in each variant's doc; `x` and
/// `y` denote the edge's endpoints, recoverable from the stored colors
/// (see `reduce`), so they are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeType {
    /// Colorable now by the stored script.
    T0 { script: Vec<ScriptStep> },
    /// `a` free at `x`, `b` free at `y`, and the (a,b)-chain through `y`
    /// does not end at `x`: flip it from `y`, then color the edge `a`.
    T1 { a: Color, b: Color },
    /// `a`, `b` free at `y`; `z` is adjacent to both endpoints with
    /// `yz` colored `c` (free at `x`) and `xz` colored `a`, and `xz` is not
    /// on an (a,b)-cycle. Swapping `yz` with `xz` turns this into kind 1.
    T2 { a: Color, b: Color, z: VertexId, c: Color },
    /// `a` free at `x`, `b` free at `y`, the (a,b)-chain ends exactly at
    /// `x` and `y`; `z` is an `x`-neighbor with `xz` colored `c` (free at
    /// `y`) and `b` free at `z`. Flip (a,b) from `z`, recolor `xz` to `a`,
    /// color the edge `c`.
    T3 { a: Color, b: Color, c: Color, z: VertexId },
    /// `a`, `b` free at `y`, `x` on an (a,b)-cycle, `c` free at `x`;
    /// `xv` colored `a`, `zv` colored `c`, `b` free at `z`. Flip (a,b)
    /// from `z`, swap `xv` with `zv`, color the edge `a`.
    T4 { a: Color, b: Color, c: Color, z: VertexId, v: VertexId },
    /// `a` free at `y`, `b` free at `x`, the (a,b)-chain ends at `x` and
    /// `y`; `xv` colored `c` (free at `y`), `zv` colored `a`, and `b`, `c`
    /// free at `z`. Flip (a,b) from `z`, swap `xv` with `zv`, color the
    /// edge `c`.
    T5 { a: Color, b: Color, c: Color, z: VertexId, v: VertexId },
    /// `a`, `c`, `d` free at `y`, `b` free at `x`, the (a,b)-chain ends at
    /// `x` and `y`, and `x` is on a (c,d)-cycle; `xv1` colored `c`, `xv2`
    /// colored `a`, `zv1` colored `a`, `zv2` colored `c`, and `b`, `d` free
    /// at `z`. Flip (a,b) then (c,d) from `z`, swap `xv1` with `zv1`,
    /// color the edge `c`.
    T6 { a: Color, b: Color, c: Color, d: Color, z: VertexId, v1: VertexId, v2: VertexId },
}

impl EdgeType {
    /// Kind ordinal 0..=6, used for bucketing and reporting.
    pub fn tag(&self) -> u8 {
        match self {
            EdgeType::T0 { .. } => 0,
            EdgeType::T1 { .. } => 1,
            EdgeType::T2 { .. } => 2,
            EdgeType::T3 { .. } => 3,
            EdgeType::T4 { .. } => 4,
            EdgeType::T5 { .. } => 5,
            EdgeType::T6 { .. } => 6,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("edge {0} has an uncolored edge at distance <= 1")]
    PreconditionViolated(EdgeId),
    #[error("witness for edge {0} does not match the coloring")]
    WitnessMismatch(EdgeId),
}

fn edge(g: &Graph, u: VertexId, v: VertexId) -> EdgeId {
    g.edge_between(u, v).expect("witness edge exists")
}

fn col(pc: &PartialColoring, e: EdgeId) -> Result<Color, ClassifyError> {
    pc.color(e).ok_or(ClassifyError::PreconditionViolated(e))
}

/// Classifies `w.e` with the strict precondition: every edge incident to
/// either endpoint, other than the edge itself, must be colored.
pub fn classify_edge(
    g: &Graph,
    pc: &PartialColoring,
    ci: &ChainIndex,
    w: &ButterflyWitness,
) -> Result<EdgeType, ClassifyError> {
    for v in [w.x, w.y] {
        for (_, e2) in g.neighbors(v) {
            if e2 != w.e && pc.color(e2).is_none() {
                return Err(ClassifyError::PreconditionViolated(w.e));
            }
        }
    }
    classify_core(g, pc, ci, w)
}

/// Classification that only requires the pattern's own edges to be colored
/// (plus a single free color at `x`). Used when reducing a subgraph whose
/// missing edges are all uncolored in the shared coloring: uncolored edges
/// are invisible to free sets and chains, so the semantics coincide.
pub(crate) fn classify_core(
    g: &Graph,
    pc: &PartialColoring,
    ci: &ChainIndex,
    w: &ButterflyWitness,
) -> Result<EdgeType, ClassifyError> {
    debug_assert!(pc.color(w.e).is_none());
    let fx = pc.free_colors(w.x);
    if fx.len() != 1 {
        return Err(ClassifyError::PreconditionViolated(w.e));
    }
    let f = fx.first().unwrap();
    match w.kind {
        ButterflyKind::B1 => classify_b1(g, pc, w, f),
        ButterflyKind::B2 => classify_b2(g, pc, ci, w, f),
    }
}

/// Shared-wing case analysis. Setup names: `a..d` are the colors of
/// `xz, xv1, xv2, xv3`; `f` is the one free color at `x`.
fn classify_b1(
    g: &Graph,
    pc: &PartialColoring,
    w: &ButterflyWitness,
    f: Color,
) -> Result<EdgeType, ClassifyError> {
    let (x, y, z) = (w.x, w.y, w.z);
    let exz = edge(g, x, z);
    let exv1 = edge(g, x, w.v1);
    let exv2 = edge(g, x, w.v2);
    let exv3 = edge(g, x, w.v3);
    let eyv1 = edge(g, y, w.v1);
    let eyv3 = edge(g, y, w.v3);
    let ezv1 = edge(g, z, w.v1);
    let ezv2 = edge(g, z, w.v2);
    let a = col(pc, exz)?;
    let b = col(pc, exv1)?;
    let c = col(pc, exv2)?;
    let d = col(pc, exv3)?;
    let yv1 = col(pc, eyv1)?;
    let yv3 = col(pc, eyv3)?;
    let zv1 = col(pc, ezv1)?;
    let zv2 = col(pc, ezv2)?;
    let fy = pc.free_colors(y);
    let fz = pc.free_colors(z);
    use ScriptStep::{Set, Swap};
    let script = if fy.contains(f) {
        vec![Set(w.e, f)]
    } else if fz.contains(f) {
        if fy.contains(a) {
            vec![Set(exz, f), Set(w.e, a)]
        } else if yv1 == f && yv3 == a {
            vec![Swap(eyv1, ezv1), Set(w.e, f)]
        } else if yv1 == a && yv3 == f {
            vec![Set(exz, f), Swap(eyv1, ezv1), Set(w.e, a)]
        } else {
            return Err(ClassifyError::WitnessMismatch(w.e));
        }
    } else if yv3 == f && zv1 == f {
        if zv2 != b {
            vec![Swap(exv1, ezv1), Set(w.e, b)]
        } else if yv1 != c {
            vec![Swap(exv1, ezv1), Swap(exv2, ezv2), Set(w.e, c)]
        } else {
            vec![Swap(exv3, eyv3), Set(exz, d), Set(w.e, a)]
        }
    } else if yv3 == f && zv2 == f {
        if zv1 == c {
            vec![Swap(exv1, ezv1), Swap(exv2, ezv2), Set(w.e, b)]
        } else if yv1 == c {
            vec![Swap(eyv1, ezv1), Swap(exv1, ezv1), Swap(exv2, ezv2), Set(w.e, b)]
        } else {
            vec![Swap(exv2, ezv2), Set(w.e, c)]
        }
    } else if yv1 == f && zv2 == f {
        if yv3 != c && zv1 != c {
            vec![Swap(exv2, ezv2), Set(w.e, c)]
        } else if yv3 == c {
            vec![Swap(exv1, eyv1), Set(exz, b), Set(w.e, a)]
        } else if yv3 != b {
            vec![Swap(exv1, ezv1), Swap(exv2, ezv2), Set(w.e, b)]
        } else {
            vec![Swap(exv1, eyv1), Swap(exv3, eyv3), Set(exz, d), Set(w.e, a)]
        }
    } else {
        // f at both y and z, but y's f-edge and z's f-edge meet at v1: that
        // would repeat f at v1, so this state cannot arise.
        return Err(ClassifyError::WitnessMismatch(w.e));
    };
    Ok(EdgeType::T0 { script })
}

/// Disjoint-wing decision tree.
fn classify_b2(
    g: &Graph,
    pc: &PartialColoring,
    ci: &ChainIndex,
    w: &ButterflyWitness,
    f: Color,
) -> Result<EdgeType, ClassifyError> {
    let (x, y, z) = (w.x, w.y, w.z);
    let fy = pc.free_colors(y);
    if fy.contains(f) {
        return Ok(EdgeType::T0 { script: vec![ScriptStep::Set(w.e, f)] });
    }
    // Orient y's wings so that v1 carries f toward y.
    let (v1, v4) = {
        let v4 = w.v4.expect("disjoint-wing witness carries v4");
        if col(pc, edge(g, y, w.v1))? == f {
            (w.v1, v4)
        } else {
            (v4, w.v1)
        }
    };
    if col(pc, edge(g, y, v1))? != f {
        return Err(ClassifyError::WitnessMismatch(w.e));
    }
    // y holds f, so its (f,k)-chain is a path starting at y. If it misses
    // x, a single flip frees f at y.
    for k in fy.iter() {
        let (lo, hi) = ci
            .chain_endpoints(y, f, k)
            .expect("a chain with a free color at y cannot be a cycle");
        debug_assert!(lo == y || hi == y);
        if lo ^ hi ^ y != x {
            return Ok(EdgeType::T1 { a: f, b: k });
        }
    }
    let a = col(pc, edge(g, x, z))?;
    let b = col(pc, edge(g, x, v1))?;
    let fz = pc.free_colors(z);
    if col(pc, edge(g, y, v4))? != a {
        if fz.contains(f) {
            return Ok(EdgeType::T0 {
                script: vec![ScriptStep::Set(edge(g, x, z), f), ScriptStep::Set(w.e, a)],
            });
        }
        // Every color free at both y and z is used at x (only f is not,
        // and f is used at y), and at least one such color exists.
        let k = fy
            .intersect(fz)
            .first()
            .ok_or(ClassifyError::WitnessMismatch(w.e))?;
        return Ok(EdgeType::T3 { a: f, b: k, c: a, z });
    }
    // y's second color equals xz's. Look for a (b,k)-chain through x that
    // is not a cycle; swapping through the shared-style witness v1 then
    // reduces to kind 1.
    for k in fy.iter() {
        if k == b {
            continue;
        }
        if !ci.chain_is_cycle(x, b, k) {
            return Ok(EdgeType::T2 { a: b, b: k, z: v1, c: f });
        }
    }
    // Orient z's wings so that v2 carries f toward z when f is used there.
    let (v2, v3) = if !fz.contains(f) && col(pc, edge(g, z, w.v2))? != f {
        (w.v3, w.v2)
    } else {
        (w.v2, w.v3)
    };
    let c = col(pc, edge(g, x, v2))?;
    let d = col(pc, edge(g, x, v3))?;
    if !fz.contains(f) {
        if col(pc, edge(g, z, v2))? != f {
            return Err(ClassifyError::WitnessMismatch(w.e));
        }
        if col(pc, edge(g, z, v3))? != c {
            return Ok(EdgeType::T0 {
                script: vec![
                    ScriptStep::Swap(edge(g, x, v2), edge(g, z, v2)),
                    ScriptStep::Set(w.e, c),
                ],
            });
        }
        return Ok(EdgeType::T4 { a: c, b, c: f, z, v: v2 });
    }
    if col(pc, edge(g, z, v3))? != c {
        let k = col(pc, edge(g, z, v2))?;
        return Ok(EdgeType::T5 { a: k, b: f, c, z, v: v2 });
    }
    if col(pc, edge(g, z, v2))? != d {
        return Ok(EdgeType::T5 { a: c, b: f, c: d, z, v: v3 });
    }
    Ok(EdgeType::T6 { a: d, b: f, c, d: b, z, v1: v2, v2: v3 })
}

/// Applies a script as one simultaneous recoloring. Swaps and sets are
/// first composed symbolically, so a script may route one color through
/// several edges; validity is checked once against the final state. Returns
/// `(edge, before, after)` for every edge whose color changed.
pub fn apply_script(
    g: &Graph,
    pc: &mut PartialColoring,
    steps: &[ScriptStep],
) -> Result<Vec<(EdgeId, Option<Color>, Color)>, ColorError> {
    let mut virt: Vec<(EdgeId, Option<Color>)> = Vec::new();
    fn read(virt: &[(EdgeId, Option<Color>)], pc: &PartialColoring, e: EdgeId) -> Option<Color> {
        virt.iter()
            .find(|&&(e2, _)| e2 == e)
            .map(|&(_, c)| c)
            .unwrap_or_else(|| pc.color(e))
    }
    fn write(virt: &mut Vec<(EdgeId, Option<Color>)>, e: EdgeId, c: Option<Color>) {
        match virt.iter_mut().find(|(e2, _)| *e2 == e) {
            Some(slot) => slot.1 = c,
            None => virt.push((e, c)),
        }
    }
    for step in steps {
        match *step {
            ScriptStep::Set(e, c) => write(&mut virt, e, Some(c)),
            ScriptStep::Swap(e1, e2) => {
                let c1 = read(&virt, pc, e1).ok_or(ColorError::Uncolored(e1))?;
                let c2 = read(&virt, pc, e2).ok_or(ColorError::Uncolored(e2))?;
                write(&mut virt, e1, Some(c2));
                write(&mut virt, e2, Some(c1));
            }
        }
    }
    let mut moves = Vec::new();
    let mut assigns = Vec::new();
    let mut diff = Vec::new();
    for (e, newc) in virt {
        let newc = newc.expect("scripts never erase a color");
        let old = pc.color(e);
        if old == Some(newc) {
            continue;
        }
        diff.push((e, old, newc));
        match old {
            Some(_) => moves.push((e, newc)),
            None => assigns.push((e, newc)),
        }
    }
    let olds = pc.recolor_batch(g, &moves)?;
    for (i, &(e, c)) in assigns.iter().enumerate() {
        if let Err(err) = pc.assign(g, e, c) {
            for &(e2, _) in &assigns[..i] {
                pc.clear(g, e2).expect("rollback of a fresh assignment");
            }
            pc.recolor_batch(g, &olds).expect("rollback to prior colors");
            return Err(err);
        }
    }
    Ok(diff)
}

fn other_end(lo: VertexId, hi: VertexId, v: VertexId) -> Option<VertexId> {
    (lo == v || hi == v).then_some(lo ^ hi ^ v)
}

/// Independently checks that `e` really is of the claimed kind, using naive
/// chain walks and fresh witness searches (stored witnesses are ignored;
/// for kind 0 the script is run on a scratch copy and its effect must
/// properly color `e` while touching only edges within distance one). Both
/// endpoint orientations are tried.
pub fn verify_type(g: &Graph, pc: &PartialColoring, e: EdgeId, ty: &EdgeType) -> bool {
    if pc.color(e).is_some() {
        return false;
    }
    let (p, q) = g.endpoints(e);
    let free = |v: VertexId| pc.free_colors(v);
    let orients = [(p, q), (q, p)];
    match ty {
        EdgeType::T0 { script } => {
            let mut scratch = pc.clone();
            let Ok(diff) = apply_script(g, &mut scratch, script) else {
                return false;
            };
            if scratch.color(e).is_none() || !scratch.check_proper(g) {
                return false;
            }
            let ball: Vec<VertexId> = g.edge_ball1(e);
            diff.iter().all(|&(e2, _, _)| {
                let (u, v) = g.endpoints(e2);
                ball.contains(&u) && ball.contains(&v)
            })
        }
        &EdgeType::T1 { a, b } => {
            a != b
                && orients.iter().any(|&(x, y)| {
                    if !free(x).contains(a) || !free(y).contains(b) {
                        return false;
                    }
                    let nc = naive_chain(g, pc, y, a, b);
                    match nc.endpoints {
                        Some((lo, hi)) => other_end(lo, hi, y) != Some(x),
                        None => false,
                    }
                })
        }
        &EdgeType::T2 { a, b, z: _, c } => {
            a != b
                && c != b
                && orients.iter().any(|&(x, y)| {
                    free(y).contains(a)
                        && free(y).contains(b)
                        && free(x).contains(c)
                        && !naive_chain(g, pc, x, a, b).is_cycle
                        && g.neighbors(x).any(|(zc, exz)| {
                            pc.color(exz) == Some(a)
                                && g.edge_between(y, zc)
                                    .is_some_and(|eyz| pc.color(eyz) == Some(c))
                        })
                })
        }
        &EdgeType::T3 { a, b, c, z: _ } => {
            a != b
                && c != b
                && orients.iter().any(|&(x, y)| {
                    free(x).contains(a)
                        && free(y).contains(b)
                        && free(y).contains(c)
                        && naive_chain(g, pc, y, a, b).endpoints == Some((x.min(y), x.max(y)))
                        && g.neighbors(x).any(|(zc, exz)| {
                            pc.color(exz) == Some(c) && free(zc).contains(b)
                        })
                })
        }
        &EdgeType::T4 { a, b, c, z: _, v: _ } => {
            a != b
                && orients.iter().any(|&(x, y)| {
                    free(y).contains(a)
                        && free(y).contains(b)
                        && free(x).contains(c)
                        && naive_chain(g, pc, x, a, b).is_cycle
                        && g.neighbors(x).any(|(vc, exv)| {
                            vc != y
                                && pc.color(exv) == Some(a)
                                && g.neighbors(vc).any(|(zc, ezv)| {
                                    zc != x
                                        && zc != y
                                        && pc.color(ezv) == Some(c)
                                        && free(zc).contains(b)
                                })
                        })
                })
        }
        &EdgeType::T5 { a, b, c, z: _, v: _ } => {
            a != b
                && c != a
                && orients.iter().any(|&(x, y)| {
                    free(y).contains(a)
                        && free(x).contains(b)
                        && free(y).contains(c)
                        && naive_chain(g, pc, y, a, b).endpoints == Some((x.min(y), x.max(y)))
                        && g.neighbors(x).any(|(vc, exv)| {
                            vc != y
                                && pc.color(exv) == Some(c)
                                && g.neighbors(vc).any(|(zc, ezv)| {
                                    zc != x
                                        && zc != y
                                        && pc.color(ezv) == Some(a)
                                        && free(zc).contains(b)
                                        && free(zc).contains(c)
                                })
                        })
                })
        }
        &EdgeType::T6 { a, b, c, d, z: _, v1: _, v2: _ } => {
            let distinct = [a, b, c, d];
            let mut sorted = distinct;
            sorted.sort_unstable();
            sorted.windows(2).all(|w| w[0] != w[1])
                && orients.iter().any(|&(x, y)| {
                    [a, c, d].iter().all(|&k| free(y).contains(k))
                        && free(x).contains(b)
                        && naive_chain(g, pc, y, a, b).endpoints == Some((x.min(y), x.max(y)))
                        && naive_chain(g, pc, x, c, d).is_cycle
                        && g.neighbors(x).any(|(w1, exv1)| {
                            w1 != y
                                && pc.color(exv1) == Some(c)
                                && g.neighbors(x).any(|(w2, exv2)| {
                                    w2 != y
                                        && w2 != w1
                                        && pc.color(exv2) == Some(a)
                                        && g.neighbors(w1).any(|(zc, ezv1)| {
                                            zc != x
                                                && zc != y
                                                && pc.color(ezv1) == Some(a)
                                                && free(zc).contains(b)
                                                && free(zc).contains(d)
                                                && g.edge_between(zc, w2).is_some_and(|ezv2| {
                                                    pc.color(ezv2) == Some(c)
                                                })
                                        })
                                })
                        })
                })
        }
    }
}
