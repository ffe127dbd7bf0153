//! Per-vertex index of two-color chain structure.
//!
//! For a fixed pair of distinct colors {a,b}, the edges carrying a or b form
//! disjoint paths and even cycles. For every vertex and every one of the 28
//! unordered color pairs, the index answers in O(1): is the chain through
//! this vertex a cycle, what are its two endpoints if not, and are two
//! vertices on the same chain. A vertex on neither color counts as a
//! one-vertex path whose endpoints are both itself.
//!
//! The index is built against one snapshot of the coloring: it remembers the
//! coloring's version and every query asserts the coloring has not mutated
//! since. Pairs are built on first use (or all up front via [`ChainIndex::build`]);
//! each pair's build visits every vertex exactly once, so a full build visits
//! exactly `28 * n` vertices, tracked by [`ChainIndex::visited_count`].

use crate::coloring::{Color, PartialColoring};
use crate::graph::{Graph, VertexId, UNSET};
use std::cell::{Cell, OnceCell};
use thiserror::Error;

/// Number of unordered pairs of distinct colors from the 8-color palette.
pub const NUM_PAIRS: usize = 28;

const CYCLE_BIT: u32 = 1 << 31;

/// Canonical index of the unordered pair {a,b} in `0..28`.
pub fn pair_index(a: Color, b: Color) -> usize {
    debug_assert_ne!(a, b);
    let (lo, hi) = (a.get().min(b.get()) as usize, a.get().max(b.get()) as usize);
    debug_assert!(hi <= 8, "chain pairs are within the 8-color palette");
    (lo - 1) * (16 - lo) / 2 + (hi - lo - 1)
}

/// The pair for a given index, inverse of [`pair_index`].
pub fn pair_colors(idx: usize) -> (Color, Color) {
    debug_assert!(idx < NUM_PAIRS);
    let mut k = idx;
    for lo in 1u8..8 {
        let row = (8 - lo) as usize;
        if k < row {
            return (Color::new(lo).unwrap(), Color::new(lo + 1 + k as u8).unwrap());
        }
        k -= row;
    }
    unreachable!()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("chain through vertex {0} is a cycle")]
    IsCycle(VertexId),
}

#[derive(Debug, Clone, Copy)]
struct Rec {
    ep: [VertexId; 2],
    id: u32,
}

struct PairRecs {
    recs: Vec<Rec>,
}

pub struct ChainIndex<'a> {
    g: &'a Graph,
    pc: &'a PartialColoring,
    version: u64,
    pairs: [OnceCell<PairRecs>; NUM_PAIRS],
    visited: Cell<u64>,
}

impl<'a> ChainIndex<'a> {
    /// Builds the full index for all 28 color pairs up front.
    pub fn build(g: &'a Graph, pc: &'a PartialColoring) -> ChainIndex<'a> {
        let ci = ChainIndex::lazy(g, pc);
        for idx in 0..NUM_PAIRS {
            ci.pair(idx);
        }
        ci
    }

    /// Creates an index that builds each color pair on first query.
    pub fn lazy(g: &'a Graph, pc: &'a PartialColoring) -> ChainIndex<'a> {
        ChainIndex {
            g,
            pc,
            version: pc.version(),
            pairs: std::array::from_fn(|_| OnceCell::new()),
            visited: Cell::new(0),
        }
    }

    /// Total vertices visited by pair builds so far; a full build visits
    /// exactly `28 * n`.
    pub fn visited_count(&self) -> u64 {
        self.visited.get()
    }

    fn assert_fresh(&self) {
        assert_eq!(
            self.version,
            self.pc.version(),
            "chain index is stale: coloring mutated since build"
        );
    }

    fn pair(&self, idx: usize) -> &PairRecs {
        self.pairs[idx].get_or_init(|| {
            let (a, b) = pair_colors(idx);
            self.build_pair(a, b)
        })
    }

    fn build_pair(&self, a: Color, b: Color) -> PairRecs {
        let n = self.g.num_vertices() as usize;
        let mut recs = vec![Rec { ep: [UNSET, UNSET], id: UNSET }; n];
        let mut next_id = 0u32;
        let chain_deg = |v: VertexId| {
            self.pc.edge_with_color(v, a).is_some() as u8
                + self.pc.edge_with_color(v, b).is_some() as u8
        };
        // Paths first: walk inward from each unvisited chain end.
        for v in 0..n as VertexId {
            if recs[v as usize].id != UNSET || chain_deg(v) != 1 {
                continue;
            }
            let mut members = vec![v];
            let mut cur = v;
            let mut prev_color = None;
            loop {
                let next = [a, b]
                    .into_iter()
                    .filter(|&col| Some(col) != prev_color)
                    .find_map(|col| self.pc.edge_with_color(cur, col).map(|e| (col, e)));
                match next {
                    Some((col, e)) => {
                        cur = self.g.other_endpoint(e, cur);
                        members.push(cur);
                        prev_color = Some(col);
                    }
                    None => break,
                }
            }
            let far = cur;
            let ep = [v.min(far), v.max(far)];
            for &u in &members {
                recs[u as usize] = Rec { ep, id: next_id };
            }
            self.visited.set(self.visited.get() + members.len() as u64);
            next_id += 1;
        }
        // Remaining degree-2 vertices sit on cycles.
        for v in 0..n as VertexId {
            if recs[v as usize].id != UNSET || chain_deg(v) != 2 {
                continue;
            }
            let mut members = vec![v];
            let mut cur = self.g.other_endpoint(self.pc.edge_with_color(v, a).unwrap(), v);
            let mut prev_color = a;
            while cur != v {
                members.push(cur);
                let col = if prev_color == a { b } else { a };
                let e = self.pc.edge_with_color(cur, col).expect("cycle alternates");
                cur = self.g.other_endpoint(e, cur);
                prev_color = col;
            }
            for &u in &members {
                recs[u as usize] = Rec { ep: [UNSET, UNSET], id: next_id | CYCLE_BIT };
            }
            self.visited.set(self.visited.get() + members.len() as u64);
            next_id += 1;
        }
        // Everything else is a singleton chain.
        let mut singles = 0u64;
        for v in 0..n as VertexId {
            if recs[v as usize].id == UNSET {
                debug_assert_eq!(chain_deg(v), 0);
                recs[v as usize] = Rec { ep: [v, v], id: next_id };
                next_id += 1;
                singles += 1;
            }
        }
        self.visited.set(self.visited.get() + singles);
        PairRecs { recs }
    }

    fn rec(&self, v: VertexId, a: Color, b: Color) -> Rec {
        self.assert_fresh();
        self.pair(pair_index(a, b)).recs[v as usize]
    }

    /// Is the (a,b)-chain containing `v` a cycle?
    pub fn chain_is_cycle(&self, v: VertexId, a: Color, b: Color) -> bool {
        self.rec(v, a, b).id & CYCLE_BIT != 0
    }

    /// Endpoints `(min, max)` of the (a,b)-chain containing `v`; both equal
    /// `v` when `v` carries neither color. Fails if the chain is a cycle.
    pub fn chain_endpoints(&self, v: VertexId, a: Color, b: Color) -> Result<(VertexId, VertexId), ChainError> {
        let r = self.rec(v, a, b);
        if r.id & CYCLE_BIT != 0 {
            return Err(ChainError::IsCycle(v));
        }
        Ok((r.ep[0], r.ep[1]))
    }

    /// Are `u` and `v` on the same (a,b)-chain?
    pub fn same_chain(&self, u: VertexId, v: VertexId, a: Color, b: Color) -> bool {
        let idx = pair_index(a, b);
        self.assert_fresh();
        let recs = &self.pair(idx).recs;
        recs[u as usize].id == recs[v as usize].id
    }

    /// Opaque identity of the (a,b)-chain containing `v`. Two calls return
    /// equal keys exactly when the vertices lie on the same chain of the same
    /// pair; keys from different pairs never collide.
    pub fn chain_key(&self, v: VertexId, a: Color, b: Color) -> (u8, u32) {
        let idx = pair_index(a, b);
        self.assert_fresh();
        (idx as u8, self.pair(idx).recs[v as usize].id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::random_partial_coloring;
    use crate::graph::Graph;
    use crate::oracle::naive_chain;
    use proptest::prelude::*;

    fn c(v: u8) -> Color {
        Color::new(v).unwrap()
    }

    #[test]
    fn pair_index_is_a_bijection() {
        let mut seen = [false; NUM_PAIRS];
        for a in 1..=8u8 {
            for b in 1..=8u8 {
                if a == b {
                    continue;
                }
                let idx = pair_index(c(a), c(b));
                assert_eq!(idx, pair_index(c(b), c(a)));
                assert!(idx < NUM_PAIRS);
                let (lo, hi) = pair_colors(idx);
                assert_eq!((lo.get(), hi.get()), (a.min(b), a.max(b)));
                seen[idx] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn path_and_cycle_records() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let mut pc = crate::coloring::PartialColoring::new(&g);
        for (e, col) in [(0u32, 1u8), (1, 2), (2, 1), (3, 2)] {
            pc.assign(&g, e, c(col)).unwrap();
        }
        let ci = ChainIndex::build(&g, &pc);
        for v in 0..4 {
            assert!(ci.chain_is_cycle(v, c(1), c(2)));
            assert_eq!(ci.chain_endpoints(v, c(1), c(2)), Err(ChainError::IsCycle(v)));
        }
        assert!(!ci.chain_is_cycle(4, c(1), c(2)));
        assert_eq!(ci.chain_endpoints(4, c(1), c(2)), Ok((4, 4)));
        assert!(ci.same_chain(0, 2, c(1), c(2)));
        assert!(!ci.same_chain(0, 4, c(1), c(2)));
        // In the (1,3) pair the edges colored 1 are single-edge chains.
        assert_eq!(ci.chain_endpoints(0, c(1), c(3)), Ok((0, 1)));
        assert_eq!(ci.visited_count(), 28 * 5);
    }

    #[test]
    #[should_panic(expected = "stale")]
    fn stale_query_panics() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let mut pc = crate::coloring::PartialColoring::new(&g);
        pc.assign(&g, 0, c(1)).unwrap();
        // Forge an index whose remembered version predates the coloring's.
        let ci = ChainIndex { version: pc.version() + 1, ..ChainIndex::lazy(&g, &pc) };
        ci.chain_is_cycle(0, c(1), c(2));
    }

    proptest! {
        #[test]
        fn records_match_naive_chain(seed in 0u64..60) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(2..40u32);
            let mut edges = Vec::new();
            let mut deg = vec![0usize; n as usize];
            for u in 0..n {
                for v in u + 1..n {
                    if deg[u as usize] < 8 && deg[v as usize] < 8 && rng.gen_bool(0.25) {
                        deg[u as usize] += 1;
                        deg[v as usize] += 1;
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let pc = random_partial_coloring(&g, seed ^ 0x5eed, 0.8);
            let ci = ChainIndex::build(&g, &pc);
            prop_assert_eq!(ci.visited_count(), 28 * n as u64);
            for v in 0..n {
                for idx in 0..NUM_PAIRS {
                    let (a, b) = pair_colors(idx);
                    let nv = naive_chain(&g, &pc, v, a, b);
                    prop_assert_eq!(ci.chain_is_cycle(v, a, b), nv.is_cycle);
                    match nv.endpoints {
                        Some(ep) => prop_assert_eq!(ci.chain_endpoints(v, a, b), Ok(ep)),
                        None => prop_assert!(ci.chain_endpoints(v, a, b).is_err()),
                    }
                    // same_chain agrees with shared membership of endpoints.
                    if let Some((lo, hi)) = nv.endpoints {
                        prop_assert!(ci.same_chain(v, lo, a, b));
                        prop_assert!(ci.same_chain(v, hi, a, b));
                    }
                }
            }
        }
    }
}
