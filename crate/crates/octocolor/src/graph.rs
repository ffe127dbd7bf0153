//! Immutable simple graphs with bounded degree, stored in CSR form.
//!
//! Vertices and edges are dense `u32` ids. Edge ids are assigned in the order
//! edges were passed to [`Graph::new`], which the file formats and the
//! recursion both rely on: dropping a set of edges keeps the relative order
//! (and therefore the mapping) of the survivors.

use thiserror::Error;

pub type VertexId = u32;
pub type EdgeId = u32;

/// Sentinel for "no vertex / no edge".
pub const UNSET: u32 = u32::MAX;

/// Hard cap on vertex degree; everything in this crate assumes it.
pub const MAX_DEGREE: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(VertexId, VertexId),
    #[error("degree of vertex {0} exceeds 8")]
    DegreeExceeded(VertexId),
    #[error("edge endpoint {0} out of range (n = {1})")]
    VertexOutOfRange(VertexId, u32),
}

#[derive(Debug, Clone)]
pub struct Graph {
    n: u32,
    offsets: Vec<u32>,
    nbr: Vec<VertexId>,
    nbr_edge: Vec<EdgeId>,
    ends: Vec<(VertexId, VertexId)>,
}

impl Graph {
    /// Builds a graph on vertices `0..n` from an edge list.
    ///
    /// Rejects self loops, parallel edges, out-of-range endpoints, and any
    /// vertex of degree greater than 8.
    pub fn new(n: u32, edges: &[(VertexId, VertexId)]) -> Result<Graph, GraphError> {
        let mut deg = vec![0u8; n as usize];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                deg[w as usize] += 1;
                if deg[w as usize] as usize > MAX_DEGREE {
                    return Err(GraphError::DegreeExceeded(w));
                }
            }
        }
        let mut offsets = vec![0u32; n as usize + 1];
        for (i, &d) in deg.iter().enumerate() {
            offsets[i + 1] = offsets[i] + d as u32;
        }
        let total = offsets[n as usize] as usize;
        let mut nbr = vec![UNSET; total];
        let mut nbr_edge = vec![UNSET; total];
        let mut fill = offsets.clone();
        for (e, &(u, v)) in edges.iter().enumerate() {
            for (a, b) in [(u, v), (v, u)] {
                let slot = fill[a as usize] as usize;
                nbr[slot] = b;
                nbr_edge[slot] = e as EdgeId;
                fill[a as usize] += 1;
            }
        }
        // Parallel-edge check: each adjacency list has at most 8 entries.
        let mut seen = [UNSET; MAX_DEGREE];
        for v in 0..n as usize {
            let lo = offsets[v] as usize;
            let hi = offsets[v + 1] as usize;
            for (i, &w) in nbr[lo..hi].iter().enumerate() {
                if seen[..i].contains(&w) {
                    return Err(GraphError::ParallelEdge(v as VertexId, w));
                }
                seen[i] = w;
            }
        }
        Ok(Graph {
            n,
            offsets,
            nbr,
            nbr_edge,
            ends: edges.to_vec(),
        })
    }

    pub fn num_vertices(&self) -> u32 {
        self.n
    }

    pub fn num_edges(&self) -> u32 {
        self.ends.len() as u32
    }

    pub fn degree(&self, v: VertexId) -> usize {
        (self.offsets[v as usize + 1] - self.offsets[v as usize]) as usize
    }

    /// Neighbors of `v` with the connecting edge id, in insertion order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, EdgeId)> + '_ {
        let lo = self.offsets[v as usize] as usize;
        let hi = self.offsets[v as usize + 1] as usize;
        self.nbr[lo..hi]
            .iter()
            .copied()
            .zip(self.nbr_edge[lo..hi].iter().copied())
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.ends[e as usize]
    }

    pub fn other_endpoint(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.ends[e as usize];
        debug_assert!(v == a || v == b);
        a ^ b ^ v
    }

    /// Edge connecting `u` and `v`, if present. O(deg).
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.neighbors(u).find(|&(w, _)| w == v).map(|(_, e)| e)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        0..self.num_edges()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Distinct vertices at distance at most 1 from edge `e`: both endpoints
    /// and all their neighbors. At most 16 entries under the degree cap.
    pub fn edge_ball1(&self, e: EdgeId) -> Vec<VertexId> {
        let (u, v) = self.endpoints(e);
        let mut out = Vec::with_capacity(2 * MAX_DEGREE);
        out.push(u);
        out.push(v);
        for w in [u, v] {
            for (x, _) in self.neighbors(w) {
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out
    }

    /// Same graph minus the given edges (vertex set unchanged). Surviving
    /// edges keep their relative order; returns the old id of each new edge.
    pub fn without_edges(&self, remove: &[EdgeId]) -> (Graph, Vec<EdgeId>) {
        let mut drop = vec![false; self.ends.len()];
        for &e in remove {
            drop[e as usize] = true;
        }
        let mut kept = Vec::with_capacity(self.ends.len() - remove.len());
        let mut edges = Vec::with_capacity(kept.capacity());
        for (e, &(u, v)) in self.ends.iter().enumerate() {
            if !drop[e] {
                kept.push(e as EdgeId);
                edges.push((u, v));
            }
        }
        let g = Graph::new(self.n, &edges).expect("edge subset of a valid graph is valid");
        (g, kept)
    }

    /// Drops all isolated vertices, renumbering the rest. Edge ids are
    /// unchanged (isolated vertices carry no edges). Returns the old id of
    /// each new vertex.
    pub fn strip_isolated(&self) -> (Graph, Vec<VertexId>) {
        let mut old_of_new = Vec::new();
        let mut new_of_old = vec![UNSET; self.n as usize];
        for v in 0..self.n {
            if self.degree(v) > 0 {
                new_of_old[v as usize] = old_of_new.len() as u32;
                old_of_new.push(v);
            }
        }
        let edges: Vec<(u32, u32)> = self
            .ends
            .iter()
            .map(|&(u, v)| (new_of_old[u as usize], new_of_old[v as usize]))
            .collect();
        let g = Graph::new(old_of_new.len() as u32, &edges)
            .expect("renumbering preserves validity");
        (g, old_of_new)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.n).any(|v| self.degree(v) == 0)
    }
}
