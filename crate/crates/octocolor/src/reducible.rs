//! Locating reducible edges.
//!
//! Two kinds of edge admit a constant-local recoloring step: *weak* edges,
//! where one endpoint sees few degree-8 neighbors, and *butterfly-like*
//! edges, which sit inside one of two fixed seven-or-so-vertex patterns. In
//! a planar graph with maximum degree 8 and no isolated vertices, at least
//! `n / 1460` edges are of one of these kinds, which is what lets the solver
//! peel off a constant fraction of the graph per round.

use crate::graph::{EdgeId, Graph, VertexId, MAX_DEGREE};
use serde::Serialize;
use thiserror::Error;

fn deg8_neighbors(g: &Graph, v: VertexId) -> usize {
    g.neighbors(v).filter(|&(u, _)| g.degree(u) == MAX_DEGREE).count()
}

/// Weakness threshold at one endpoint, in terms of the other endpoint's degree.
fn weak_threshold(other_degree: usize) -> usize {
    MAX_DEGREE - other_degree + usize::from(other_degree == MAX_DEGREE)
}

/// Tests whether `e = xy` is weak, returning the endpoint that witnesses it
/// (the lower-indexed endpoint is tried first). `xy` is weak at `x` when the
/// number of degree-8 neighbors of `x` is at most `8 - d(y)`, plus one if
/// `d(y) = 8`.
pub fn is_weak(g: &Graph, e: EdgeId) -> Option<VertexId> {
    let (x, y) = g.endpoints(e);
    if deg8_neighbors(g, x) <= weak_threshold(g.degree(y)) {
        return Some(x);
    }
    if deg8_neighbors(g, y) <= weak_threshold(g.degree(x)) {
        return Some(y);
    }
    None
}

/// The two butterfly shapes. Both have a degree-8 center `x` adjacent to two
/// degree-3 vertices `y`, `z`, with degree-8 outer vertices tying the wings
/// together.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ButterflyKind {
    /// Wings share the outer vertex `v1`: edges `xy, xz, xv1, xv2, xv3,
    /// yv1, yv3, zv1, zv2`.
    B1,
    /// Wings are disjoint: edges `xy, xz, xv1..xv4, yv1, yv4, zv2, zv3`.
    B2,
}

/// A concrete embedding of a butterfly pattern anchored at edge `e = xy`.
#[derive(Debug, Clone, Copy)]
pub struct ButterflyWitness {
    pub kind: ButterflyKind,
    pub e: EdgeId,
    pub x: VertexId,
    pub y: VertexId,
    pub z: VertexId,
    pub v1: VertexId,
    pub v2: VertexId,
    pub v3: VertexId,
    /// Present exactly for [`ButterflyKind::B2`].
    pub v4: Option<VertexId>,
}

/// The two neighbors of a degree-3 vertex other than `skip`.
fn wing_tips(g: &Graph, v: VertexId, skip: VertexId) -> [VertexId; 2] {
    debug_assert_eq!(g.degree(v), 3);
    let mut out = [0; 2];
    let mut i = 0;
    for (u, _) in g.neighbors(v) {
        if u != skip {
            out[i] = u;
            i += 1;
        }
    }
    debug_assert_eq!(i, 2);
    out
}

fn outer_ok(g: &Graph, x: VertexId, v: VertexId) -> bool {
    g.degree(v) == MAX_DEGREE && g.edge_between(x, v).is_some()
}

/// Searches for a butterfly containing `e` as its `xy` edge, trying the
/// shared-wing shape first, then the disjoint one. The search is
/// deterministic: candidate `z` vertices are scanned in adjacency order and
/// the first valid embedding wins.
pub fn find_butterfly(g: &Graph, e: EdgeId) -> Option<ButterflyWitness> {
    let (p, q) = g.endpoints(e);
    let (x, y) = if g.degree(p) == MAX_DEGREE && g.degree(q) == 3 {
        (p, q)
    } else if g.degree(q) == MAX_DEGREE && g.degree(p) == 3 {
        (q, p)
    } else {
        return None;
    };
    let [w1, w2] = wing_tips(g, y, x);
    if !outer_ok(g, x, w1) || !outer_ok(g, x, w2) {
        return None;
    }
    let zs: Vec<VertexId> = g
        .neighbors(x)
        .map(|(z, _)| z)
        .filter(|&z| z != y && g.degree(z) == 3)
        .collect();
    for &z in &zs {
        let [u1, u2] = wing_tips(g, z, x);
        if !outer_ok(g, x, u1) || !outer_ok(g, x, u2) {
            continue;
        }
        // Shared shape: v1 is a wing tip of both y and z.
        for (v1, v2) in [(u1, u2), (u2, u1)] {
            if v1 != w1 && v1 != w2 {
                continue;
            }
            let v3 = if v1 == w1 { w2 } else { w1 };
            if v2 != v3 {
                return Some(ButterflyWitness {
                    kind: ButterflyKind::B1,
                    e,
                    x,
                    y,
                    z,
                    v1,
                    v2,
                    v3,
                    v4: None,
                });
            }
        }
    }
    for &z in &zs {
        let [u1, u2] = wing_tips(g, z, x);
        if !outer_ok(g, x, u1) || !outer_ok(g, x, u2) {
            continue;
        }
        // Disjoint shape: y's tips and z's tips must not meet.
        if u1 == w1 || u1 == w2 || u2 == w1 || u2 == w2 {
            continue;
        }
        return Some(ButterflyWitness {
            kind: ButterflyKind::B2,
            e,
            x,
            y,
            z,
            v1: w1.min(w2),
            v2: u1.min(u2),
            v3: u1.max(u2),
            v4: Some(w1.max(w2)),
        });
    }
    None
}

/// One pass over all edges, returning `(weak, butterfly_like)` edge ids in
/// ascending order. The two lists may overlap. Runs in O(n + m): degree-8
/// neighbor counts are precomputed and each butterfly probe touches a
/// bounded neighborhood.
pub fn scan_reducible(g: &Graph) -> (Vec<EdgeId>, Vec<EdgeId>) {
    let deg8: Vec<u8> = (0..g.num_vertices())
        .map(|v| deg8_neighbors(g, v) as u8)
        .collect();
    let mut weak = Vec::new();
    let mut butterfly = Vec::new();
    for e in g.edge_ids() {
        let (x, y) = g.endpoints(e);
        if deg8[x as usize] as usize <= weak_threshold(g.degree(y))
            || deg8[y as usize] as usize <= weak_threshold(g.degree(x))
        {
            weak.push(e);
        }
        if find_butterfly(g, e).is_some() {
            butterfly.push(e);
        }
    }
    (weak, butterfly)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReducibleError {
    #[error("vertex {0} is isolated; the density bound assumes none")]
    HasIsolatedVertex(VertexId),
}

/// Reducible-edge counts for one graph, as produced by [`reducible_stats`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducibleStats {
    pub n: u32,
    pub m: u32,
    pub weak: usize,
    pub butterfly: usize,
    /// Size of the union of the two edge sets.
    pub reducible: usize,
    /// Whether `reducible * 1460 >= n`, the density guaranteed for planar
    /// graphs with maximum degree 8 and no isolated vertices.
    pub meets_bound: bool,
}

pub fn reducible_stats(g: &Graph) -> Result<ReducibleStats, ReducibleError> {
    if let Some(v) = (0..g.num_vertices()).find(|&v| g.degree(v) == 0) {
        return Err(ReducibleError::HasIsolatedVertex(v));
    }
    let (weak, butterfly) = scan_reducible(g);
    let mut in_union = vec![false; g.num_edges() as usize];
    for &e in weak.iter().chain(&butterfly) {
        in_union[e as usize] = true;
    }
    let reducible = in_union.iter().filter(|&&b| b).count();
    Ok(ReducibleStats {
        n: g.num_vertices(),
        m: g.num_edges(),
        weak: weak.len(),
        butterfly: butterfly.len(),
        reducible,
        meets_bound: reducible * 1460 >= g.num_vertices() as usize,
    })
}
