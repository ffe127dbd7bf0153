//! Slow reference implementations used to check the fast path.
//!
//! Everything here favors obviousness over speed: verification recomputes
//! per-vertex state from nothing but edge colors, chain walks scan adjacency
//! lists instead of using the slot tables, and the exhaustive colorer tries
//! colors in plain backtracking order. The test suites compare the optimized
//! modules against these.

use crate::coloring::{Color, PartialColoring};
use crate::graph::{EdgeId, Graph, VertexId};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("edge {0} is uncolored")]
    UncoloredEdge(EdgeId),
    #[error("edge {0} uses color {1}, outside 1..=8")]
    NinthColor(EdgeId, u8),
    #[error("vertex {0} has two edges of color {1}")]
    RepeatedColor(VertexId, u8),
}

/// Checks that `pc` is a total proper edge coloring of `g` with colors
/// `1..=8`, from scratch.
pub fn verify_coloring(g: &Graph, pc: &PartialColoring) -> Result<(), VerifyError> {
    let mut seen = vec![0u16; g.num_vertices() as usize];
    for e in g.edge_ids() {
        let c = pc.color(e).ok_or(VerifyError::UncoloredEdge(e))?;
        if c.get() > 8 {
            return Err(VerifyError::NinthColor(e, c.get()));
        }
        let bit = 1u16 << (c.get() - 1);
        let (u, v) = g.endpoints(e);
        for w in [u, v] {
            if seen[w as usize] & bit != 0 {
                return Err(VerifyError::RepeatedColor(w, c.get()));
            }
            seen[w as usize] |= bit;
        }
    }
    Ok(())
}

/// Checks properness of whatever subset of edges is colored (any palette,
/// totality not required).
pub fn verify_partial(g: &Graph, pc: &PartialColoring) -> Result<(), VerifyError> {
    let mut seen = vec![0u16; g.num_vertices() as usize];
    for e in g.edge_ids() {
        if let Some(c) = pc.color(e) {
            let bit = 1u16 << (c.get() - 1);
            let (u, v) = g.endpoints(e);
            for w in [u, v] {
                if seen[w as usize] & bit != 0 {
                    return Err(VerifyError::RepeatedColor(w, c.get()));
                }
                seen[w as usize] |= bit;
            }
        }
    }
    Ok(())
}

/// A two-color chain found by naive walking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaiveChain {
    pub is_cycle: bool,
    /// The two chain ends as `(min, max)`; equal for a vertex on neither
    /// color; `None` exactly when the chain is a cycle.
    pub endpoints: Option<(VertexId, VertexId)>,
    /// Chain edges in path order from the smaller endpoint (cycles: starting
    /// and ending at the queried vertex).
    pub edges: Vec<EdgeId>,
}

fn chain_edge_at(g: &Graph, pc: &PartialColoring, v: VertexId, c: Color) -> Option<EdgeId> {
    g.neighbors(v).find(|&(_, e)| pc.color(e) == Some(c)).map(|(_, e)| e)
}

/// The (a,b)-chain containing `v`, found by scanning adjacency lists.
pub fn naive_chain(g: &Graph, pc: &PartialColoring, v: VertexId, a: Color, b: Color) -> NaiveChain {
    assert_ne!(a, b);
    let first = chain_edge_at(g, pc, v, a).or_else(|| chain_edge_at(g, pc, v, b));
    let Some(start) = first else {
        return NaiveChain {
            is_cycle: false,
            endpoints: Some((v, v)),
            edges: Vec::new(),
        };
    };
    // Walk away from v through `start`; detect a cycle by returning to v.
    let mut edges = vec![start];
    let mut cur = g.other_endpoint(start, v);
    loop {
        if cur == v {
            return NaiveChain {
                is_cycle: true,
                endpoints: None,
                edges,
            };
        }
        let prev = *edges.last().unwrap();
        let next_color = if pc.color(prev) == Some(a) { b } else { a };
        match chain_edge_at(g, pc, cur, next_color) {
            Some(e) => {
                edges.push(e);
                cur = g.other_endpoint(e, cur);
            }
            None => break,
        }
    }
    let far1 = cur;
    // Walk the other side of v, if any.
    let start_color = if pc.color(start) == Some(a) { a } else { b };
    let other_color = if start_color == a { b } else { a };
    let mut back = Vec::new();
    let mut cur = v;
    let mut want = other_color;
    while let Some(e) = chain_edge_at(g, pc, cur, want) {
        back.push(e);
        cur = g.other_endpoint(e, cur);
        want = if pc.color(e) == Some(a) { b } else { a };
    }
    let far2 = cur;
    // Assemble edges from far2 to far1, then canonicalize direction.
    back.reverse();
    back.extend(edges);
    let (lo, hi) = (far1.min(far2), far1.max(far2));
    if far2 != lo {
        back.reverse();
    }
    NaiveChain {
        is_cycle: false,
        endpoints: Some((lo, hi)),
        edges: back,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {0} edges; the exhaustive colorer is capped at 40")]
    TooLarge(u32),
}

/// Exhaustive search for a proper edge coloring with at most `max_colors`
/// colors. Edges are tried in descending endpoint-degree-sum order, colors
/// ascending, with the first edge pinned to color 1. Returns one coloring
/// (indexed by edge id) or `None` if none exists. Capped at 40 edges.
pub fn brute_chromatic_index(
    g: &Graph,
    max_colors: u8,
) -> Result<Option<Vec<Color>>, OracleError> {
    let m = g.num_edges() as usize;
    if m > 40 {
        return Err(OracleError::TooLarge(m as u32));
    }
    if m == 0 {
        return Ok(Some(Vec::new()));
    }
    if max_colors == 0 {
        return Ok(None);
    }
    let mut order: Vec<EdgeId> = (0..m as u32).collect();
    order.sort_by_key(|&e| {
        let (u, v) = g.endpoints(e);
        (std::cmp::Reverse(g.degree(u) + g.degree(v)), e)
    });
    let mut used = vec![0u16; g.num_vertices() as usize];
    let mut chosen = vec![0u8; m];
    fn rec(
        g: &Graph,
        order: &[EdgeId],
        pos: usize,
        max_colors: u8,
        used: &mut [u16],
        chosen: &mut [u8],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let e = order[pos];
        let (u, v) = g.endpoints(e);
        let top = if pos == 0 { 1 } else { max_colors };
        for c in 1..=top {
            let bit = 1u16 << (c - 1);
            if used[u as usize] & bit != 0 || used[v as usize] & bit != 0 {
                continue;
            }
            used[u as usize] |= bit;
            used[v as usize] |= bit;
            chosen[e as usize] = c;
            if rec(g, order, pos + 1, max_colors, used, chosen) {
                return true;
            }
            used[u as usize] &= !bit;
            used[v as usize] &= !bit;
            chosen[e as usize] = 0;
        }
        false
    }
    if rec(g, &order, 0, max_colors, &mut used, &mut chosen) {
        Ok(Some(chosen.iter().map(|&c| Color::new(c).unwrap()).collect()))
    } else {
        Ok(None)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FanError {
    #[error("fan closure at vertex {x} saturated without resolving edge {edge}")]
    FanFailure { edge: EdgeId, x: VertexId },
}

struct FanNode {
    v: VertexId,
    parent: usize,
    label: Option<Color>,
}

/// Colors uncolored edge `e` by growing a fan of x's neighbors and shifting
/// colors along it, flipping at most one two-color chain. This is the direct,
/// sequential reference for weak-edge insertion: it succeeds whenever `x` is
/// a weak endpoint of `e` (and on any edge at all when `wide` allows the
/// ninth color).
pub fn single_edge_fan(
    g: &Graph,
    pc: &mut PartialColoring,
    e: EdgeId,
    x: VertexId,
) -> Result<(), FanError> {
    fan_insert(g, pc, e, x, false)
}

/// As [`single_edge_fan`] but over the 9-color palette, where the fan
/// argument guarantees unconditional success on degree-capped graphs.
pub(crate) fn single_edge_fan_wide(
    g: &Graph,
    pc: &mut PartialColoring,
    e: EdgeId,
    x: VertexId,
) -> Result<(), FanError> {
    fan_insert(g, pc, e, x, true)
}

fn fan_insert(
    g: &Graph,
    pc: &mut PartialColoring,
    e: EdgeId,
    x: VertexId,
    wide: bool,
) -> Result<(), FanError> {
    debug_assert!(pc.color(e).is_none());
    let free = |pc: &PartialColoring, v: VertexId| {
        if wide {
            pc.free_colors_wide(v)
        } else {
            pc.free_colors(v)
        }
    };
    let y = g.other_endpoint(e, x);
    let x_free = free(pc, x);
    debug_assert!(!x_free.is_empty());
    let mut tree = vec![FanNode { v: y, parent: usize::MAX, label: None }];
    // Per color: the node that first found it free, and the child it spawned.
    let mut claimed: [Option<usize>; 10] = [None; 10];
    let mut claimed_child: [usize; 10] = [usize::MAX; 10];
    let mut i = 0;
    while i < tree.len() {
        let u = tree[i].v;
        for beta in free(pc, u).iter() {
            if x_free.contains(beta) {
                shift(g, pc, e, x, &tree, i, beta);
                return Ok(());
            }
            let slot = beta.get() as usize;
            match claimed[slot] {
                None => {
                    claimed[slot] = Some(i);
                    let bedge = pc
                        .edge_with_color(x, beta)
                        .expect("color not free at x must sit on an x-edge");
                    let h = g.other_endpoint(bedge, x);
                    debug_assert!(tree.iter().all(|n| n.v != h));
                    claimed_child[slot] = tree.len();
                    tree.push(FanNode { v: h, parent: i, label: Some(beta) });
                }
                Some(j) => {
                    debug_assert_ne!(j, i);
                    resolve_two_claims(g, pc, e, x, &tree, j, i, beta, claimed_child[slot], wide);
                    return Ok(());
                }
            }
        }
        i += 1;
    }
    Err(FanError::FanFailure { edge: e, x })
}

/// Rotates colors along the tree path from the root to `idx`: each path edge
/// `(x, g_p)` takes the old color of its successor, and the deepest edge
/// takes `final_color`. Executed deepest-first so every assignment lands on a
/// color just freed at `x`.
fn shift(
    g: &Graph,
    pc: &mut PartialColoring,
    e: EdgeId,
    x: VertexId,
    tree: &[FanNode],
    idx: usize,
    final_color: Color,
) {
    let mut path = Vec::new();
    let mut k = idx;
    loop {
        path.push(k);
        if k == 0 {
            break;
        }
        k = tree[k].parent;
    }
    // path is deepest-first already.
    let mut give = final_color;
    for &p in &path {
        let node = &tree[p];
        let edge = if p == 0 {
            e
        } else {
            g.edge_between(x, node.v).expect("fan vertices neighbor x")
        };
        pc.set_color(g, edge, give)
            .expect("fan shift step must stay proper");
        give = match node.label {
            Some(l) => l,
            None => break,
        };
    }
}

/// Two fan vertices both have `beta` free: free up the lowest color `c` of
/// `x` at one of them (flipping its (c,beta)-chain if needed) and shift to
/// it. `j` is the first claimant, `i` the current node, `h_idx` the tree node
/// holding x's beta-edge endpoint.
#[allow(clippy::too_many_arguments)]
fn resolve_two_claims(
    g: &Graph,
    pc: &mut PartialColoring,
    e: EdgeId,
    x: VertexId,
    tree: &[FanNode],
    j: usize,
    i: usize,
    beta: Color,
    h_idx: usize,
    wide: bool,
) {
    let free = |pc: &PartialColoring, v: VertexId| {
        if wide {
            pc.free_colors_wide(v)
        } else {
            pc.free_colors(v)
        }
    };
    let c = free(pc, x).first().expect("x has a free color");
    debug_assert!(!free(pc, x).contains(beta));
    // Walks the (c,beta)-chain away from a vertex where beta is free;
    // returns the far endpoint (None when the vertex is on neither color).
    let walk_far = |pc: &PartialColoring, from: VertexId| -> Option<VertexId> {
        let mut cur = from;
        let mut want = c;
        let mut far = None;
        while let Some(edge) = pc.edge_with_color(cur, want) {
            cur = g.other_endpoint(edge, cur);
            far = Some(cur);
            want = if want == c { beta } else { c };
        }
        far
    };
    // At most one of the two chains can end at x; shift toward the other.
    let f_idx = if walk_far(pc, tree[j].v) != Some(x) { j } else { i };
    let fl = tree[f_idx].v;
    if free(pc, fl).contains(c) {
        // Only the in-progress node can still have c free (an earlier node
        // would have resolved via x's free colors when it examined c).
        debug_assert_eq!(f_idx, i);
        shift(g, pc, e, x, tree, f_idx, c);
        return;
    }
    let far = walk_far(pc, fl);
    debug_assert_ne!(far, Some(x));
    let flipped = pc.kempe_from(g, fl, c, beta);
    debug_assert!(!flipped.is_empty());
    // If the flipped chain ended at the beta claimant and the shift path to
    // `i` runs through its beta child, the full shift would reuse beta at a
    // vertex that just lost it; shifting the prefix up to the claimant works
    // because the flip freed `c` there.
    let h_on_path = {
        let mut k = i;
        loop {
            if k == h_idx {
                break true;
            }
            if k == 0 {
                break false;
            }
            k = tree[k].parent;
        }
    };
    if f_idx == i && h_on_path && far == Some(tree[j].v) {
        shift(g, pc, e, x, tree, j, c);
    } else {
        shift(g, pc, e, x, tree, f_idx, c);
    }
}
