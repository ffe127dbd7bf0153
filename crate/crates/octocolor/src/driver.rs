//! The full coloring pipeline: peel batches of reducible edges until the
//! graph is tiny, then reinsert them level by level.
//!
//! Descent clones the graph at each level, removes an independent set of
//! reducible edges, and drops any vertices that become isolated. Ascent
//! starts from the edgeless bottom graph (trivially colored) and replays
//! the levels in reverse: lift the smaller graph's colors through the
//! edge-id maps, then color that level's candidates with the batched
//! rounds from [`crate::reduce`]. Every level removes at least one edge,
//! so the descent terminates on any input; the near-linear running time
//! additionally needs the planar density bound (a constant fraction of
//! reducible edges per level), which the driver checks and reports.

use crate::coloring::PartialColoring;
use crate::graph::{EdgeId, Graph};
use crate::oracle::{single_edge_fan, single_edge_fan_wide};
use crate::reduce::{
    filter_2_independent, filter_4_independent, reduce_butterfly_round, reduce_one,
    reduce_weak_round, CoherenceMode, ReduceError,
};
use crate::reducible::{find_butterfly, is_weak, scan_reducible};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Planar graphs with maximum degree 8 and no isolated vertices have at
/// least `n / 1460` reducible edges, so the larger of the two kinds has at
/// least `n / 2920`. Levels finding fewer than that emit a warning (or an
/// error under [`DriverOptions::strict_planar`]).
pub const LEVEL_FLOOR_DIVISOR: usize = 2920;

#[derive(Debug, Clone)]
pub struct DriverOptions {
    /// Treat a level with fewer reducible edges than the planar floor as an
    /// error instead of a warning. Off by default: sparse non-planar inputs
    /// still color fine, just without the running-time guarantee.
    pub strict_planar: bool,
    /// Whether batched rounds re-verify each plan's witness before applying
    /// it. Defaults to auditing in debug builds and trusting in release.
    pub coherence: CoherenceMode,
    /// At or below this many vertices the driver peels one edge per level
    /// instead of scanning and batching.
    pub base_cutoff: u32,
}

impl Default for DriverOptions {
    fn default() -> DriverOptions {
        DriverOptions {
            strict_planar: false,
            coherence: CoherenceMode::default(),
            base_cutoff: 64,
        }
    }
}

#[derive(Debug, Error)]
pub enum DriverError {
    /// No weak edge and no butterfly anywhere. Cannot happen on a planar
    /// graph with an edge; the classic culprit is a dense clique.
    #[error("graph with {n} vertices and {m} edges has no reducible edge")]
    NoReducibleEdges { n: u32, m: u32 },
    /// A level fell short of the planar density floor under
    /// [`DriverOptions::strict_planar`].
    #[error("level {level}: {found} reducible edges, below the planar floor {floor}")]
    RatioBelowBound { level: usize, found: usize, floor: usize },
    /// An insertion round colored nothing while candidates remained.
    #[error("level {level} stopped making progress")]
    Stalled { level: usize },
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

/// One insertion round as recorded in the trace. `phase` is `"weak"`,
/// `"butterfly"` or `"single"`; the bucket fields are only present for
/// butterfly rounds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceRound {
    pub level: usize,
    pub phase: String,
    pub candidates: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bucket_tag: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bucket_size: Option<usize>,
    pub kept: usize,
    pub colored: usize,
}

/// What one driver run did, in enough detail to audit the progress
/// guarantees afterwards.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunTrace {
    pub n: u32,
    pub m: u32,
    /// Peel levels, total and split by flavor.
    pub levels: usize,
    pub batch_levels: usize,
    pub single_levels: usize,
    pub rounds: Vec<TraceRound>,
    pub warnings: Vec<String>,
    /// Edges the 9-color fallback had to place (0 on the main path).
    pub fallback_edges: usize,
    /// Largest color in the final coloring; 9 means the guarantee was lost.
    pub max_color: u8,
}

impl RunTrace {
    fn empty(g: &Graph) -> RunTrace {
        RunTrace {
            n: g.num_vertices(),
            m: g.num_edges(),
            levels: 0,
            batch_levels: 0,
            single_levels: 0,
            rounds: Vec::new(),
            warnings: Vec::new(),
            fallback_edges: 0,
            max_color: 0,
        }
    }
}

enum PeelKind {
    Single,
    Weak,
    Butterfly,
}

struct PeelLevel {
    /// The graph this level's candidates live in (before removal).
    g: Graph,
    kind: PeelKind,
    /// Candidate edge ids in `g`; uncolored when the level is entered on
    /// the way up.
    cands: Vec<EdgeId>,
    /// Edge `j` of the next (smaller) graph is edge `kept[j]` of `g`.
    kept: Vec<EdgeId>,
}

/// First weak edge in id order, else first butterfly edge.
fn any_reducible(g: &Graph) -> Option<EdgeId> {
    let mut butterfly = None;
    for e in g.edge_ids() {
        if is_weak(g, e).is_some() {
            return Some(e);
        }
        if butterfly.is_none() && find_butterfly(g, e).is_some() {
            butterfly = Some(e);
        }
    }
    butterfly
}

fn max_color(g: &Graph, pc: &PartialColoring) -> u8 {
    g.edge_ids().filter_map(|e| pc.color(e)).map(|c| c.get()).max().unwrap_or(0)
}

/// Colors every edge of `g` with colors `1..=8` using default options.
/// See [`color_graph_with`].
pub fn color_graph(g: &Graph) -> Result<(PartialColoring, RunTrace), DriverError> {
    color_graph_with(g, &DriverOptions::default())
}

/// Colors every edge of `g` with colors `1..=8` so that edges sharing an
/// endpoint get distinct colors.
///
/// Succeeds on every planar simple graph (isolated vertices allowed) and on
/// any other input where each peel level still finds a reducible edge. The
/// returned coloring is total and proper; the trace records the levels,
/// rounds and any density warnings.
pub fn color_graph_with(
    g: &Graph,
    opts: &DriverOptions,
) -> Result<(PartialColoring, RunTrace), DriverError> {
    let mut trace = RunTrace::empty(g);
    // Isolated vertices carry no edges; work on the stripped copy. Edge ids
    // survive the strip, so colors transfer back by id at the end.
    let (mut cur, _) = g.strip_isolated();
    let mut levels: Vec<PeelLevel> = Vec::new();
    while cur.num_edges() > 0 {
        let level_no = levels.len();
        let (kind, cands) = if cur.num_vertices() <= opts.base_cutoff {
            let e = any_reducible(&cur).ok_or(DriverError::NoReducibleEdges {
                n: cur.num_vertices(),
                m: cur.num_edges(),
            })?;
            (PeelKind::Single, vec![e])
        } else {
            let (weak, butterfly) = scan_reducible(&cur);
            let n = cur.num_vertices() as usize;
            let (kind, class) = if weak.len() >= butterfly.len() {
                (PeelKind::Weak, weak)
            } else {
                (PeelKind::Butterfly, butterfly)
            };
            if class.is_empty() {
                return Err(DriverError::NoReducibleEdges {
                    n: cur.num_vertices(),
                    m: cur.num_edges(),
                });
            }
            if class.len() * LEVEL_FLOOR_DIVISOR < n {
                let floor = n.div_ceil(LEVEL_FLOOR_DIVISOR);
                if opts.strict_planar {
                    return Err(DriverError::RatioBelowBound {
                        level: level_no,
                        found: class.len(),
                        floor,
                    });
                }
                trace.warnings.push(format!(
                    "level {level_no}: {} reducible edges is below the planar floor {floor}",
                    class.len()
                ));
            }
            let cands = match kind {
                PeelKind::Weak => filter_2_independent(&cur, &class),
                PeelKind::Butterfly => filter_4_independent(&cur, &class),
                PeelKind::Single => unreachable!(),
            };
            (kind, cands)
        };
        let (shrunk, kept) = cur.without_edges(&cands);
        let (next, _) = shrunk.strip_isolated();
        levels.push(PeelLevel { g: cur, kind, cands, kept });
        cur = next;
    }

    // The bottom graph has no edges; its empty coloring is total. Walk the
    // levels back up, lifting colors and inserting each level's candidates.
    let mut pc = PartialColoring::new(&cur);
    for (level_no, level) in levels.iter().enumerate().rev() {
        let mut up = PartialColoring::new(&level.g);
        for (j, &old) in level.kept.iter().enumerate() {
            let c = pc.color(j as EdgeId).expect("lower level is fully colored");
            up.assign(&level.g, old, c).expect("lifting a proper coloring keeps it proper");
        }
        match level.kind {
            PeelKind::Single => {
                reduce_one(&level.g, &mut up, level.cands[0], opts.coherence)?;
                trace.rounds.push(TraceRound {
                    level: level_no,
                    phase: "single".into(),
                    candidates: 1,
                    bucket_tag: None,
                    bucket_size: None,
                    kept: 1,
                    colored: 1,
                });
            }
            PeelKind::Weak => {
                let mut budget = level.cands.len();
                while level.cands.iter().any(|&e| up.color(e).is_none()) {
                    if budget == 0 {
                        return Err(DriverError::Stalled { level: level_no });
                    }
                    budget -= 1;
                    let rep = reduce_weak_round(&level.g, &mut up, &level.cands)?;
                    if rep.colored.is_empty() {
                        return Err(DriverError::Stalled { level: level_no });
                    }
                    trace.rounds.push(TraceRound {
                        level: level_no,
                        phase: "weak".into(),
                        candidates: rep.candidates,
                        bucket_tag: None,
                        bucket_size: None,
                        kept: rep.kept,
                        colored: rep.colored.len(),
                    });
                }
            }
            PeelKind::Butterfly => {
                let mut budget = level.cands.len();
                while level.cands.iter().any(|&e| up.color(e).is_none()) {
                    if budget == 0 {
                        return Err(DriverError::Stalled { level: level_no });
                    }
                    budget -= 1;
                    let rep =
                        reduce_butterfly_round(&level.g, &mut up, &level.cands, opts.coherence)?;
                    if rep.colored.is_empty() {
                        return Err(DriverError::Stalled { level: level_no });
                    }
                    trace.rounds.push(TraceRound {
                        level: level_no,
                        phase: "butterfly".into(),
                        candidates: rep.candidates,
                        bucket_tag: Some(rep.bucket_tag),
                        bucket_size: Some(rep.bucket_size),
                        kept: rep.kept,
                        colored: rep.colored.len(),
                    });
                }
            }
        }
        pc = up;
    }

    // `pc` now covers the stripped graph, whose edges are `g`'s edges under
    // the same ids; rebuild over `g` itself.
    let mut out = PartialColoring::new(g);
    for e in g.edge_ids() {
        let c = pc.color(e).expect("every level was completed");
        out.assign(g, e, c).expect("copying a proper coloring keeps it proper");
    }
    trace.levels = levels.len();
    trace.single_levels =
        levels.iter().filter(|l| matches!(l.kind, PeelKind::Single)).count();
    trace.batch_levels = trace.levels - trace.single_levels;
    trace.max_color = max_color(g, &out);
    Ok((out, trace))
}

/// Colors `g` unconditionally: runs [`color_graph_with`], and if that gives
/// up, colors edge by edge with fan insertions, reaching for a ninth color
/// where the 8-color fan has no footing.
///
/// The result is always a total proper coloring, but may use color 9;
/// [`RunTrace::max_color`] says whether the 8-color guarantee held and
/// [`RunTrace::fallback_edges`] counts the edges that needed the wide fan.
pub fn color_graph_with_fallback(g: &Graph, opts: &DriverOptions) -> (PartialColoring, RunTrace) {
    let err = match color_graph_with(g, opts) {
        Ok(done) => return done,
        Err(err) => err,
    };
    let mut trace = RunTrace::empty(g);
    trace.warnings.push(format!("main driver gave up ({err}); fan fallback engaged"));
    let mut pc = PartialColoring::new(g);
    for e in g.edge_ids() {
        // An uncolored edge leaves at least one of the 8 colors free at each
        // endpoint (degrees are capped at 8), so the narrow fan may be tried
        // whenever the edge is weak; the 9-color fan needs no precondition.
        let narrow =
            is_weak(g, e).map(|x| single_edge_fan(g, &mut pc, e, x).is_ok()).unwrap_or(false);
        if !narrow {
            trace.fallback_edges += 1;
            let (u, v) = g.endpoints(e);
            single_edge_fan_wide(g, &mut pc, e, u)
                .or_else(|_| single_edge_fan_wide(g, &mut pc, e, v))
                .expect("9-color fan always lands under the degree cap");
        }
    }
    trace.max_color = max_color(g, &pc);
    (pc, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::butterfly_farm;
    use crate::graph::VertexId;
    use crate::oracle::{verify_coloring, verify_partial};
    use proptest::prelude::*;

    fn snapshot(g: &Graph, pc: &PartialColoring) -> Vec<u8> {
        g.edge_ids().map(|e| pc.color(e).map_or(0, |c| c.get())).collect()
    }

    fn assert_colored_8(g: &Graph) -> RunTrace {
        let (pc, trace) = color_graph(g).expect("colorable");
        verify_coloring(g, &pc).expect("total proper 8-coloring");
        assert!(trace.max_color <= 8);
        assert_eq!(trace.fallback_edges, 0);
        trace
    }

    fn complete_graph(n: u32) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn tiny_graphs_color() {
        assert_colored_8(&Graph::new(0, &[]).unwrap());
        assert_colored_8(&Graph::new(5, &[]).unwrap());
        assert_colored_8(&Graph::new(2, &[(0, 1)]).unwrap());
        let path = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_colored_8(&path);
        let star: Vec<(VertexId, VertexId)> = (1..9).map(|v| (0, v)).collect();
        assert_colored_8(&Graph::new(9, &star).unwrap());
        let cycle = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_colored_8(&cycle);
    }

    #[test]
    fn isolated_vertices_are_fine() {
        let g = Graph::new(10, &[(3, 7), (7, 9)]).unwrap();
        let trace = assert_colored_8(&g);
        assert_eq!(trace.n, 10);
        assert_eq!(trace.m, 2);
    }

    #[test]
    fn farms_color_and_trace_is_consistent() {
        let farm = butterfly_farm(4, 4, 11);
        let trace = assert_colored_8(&farm.graph);
        assert_eq!(trace.levels, trace.batch_levels + trace.single_levels);
        let colored: usize = trace.rounds.iter().map(|r| r.colored).sum();
        assert_eq!(colored, farm.graph.num_edges() as usize);
        for r in &trace.rounds {
            assert!(r.colored <= r.kept && r.kept <= r.candidates);
            assert_eq!(r.bucket_tag.is_some(), r.phase == "butterfly");
        }
    }

    #[test]
    fn big_farm_uses_batched_levels() {
        let farm = butterfly_farm(20, 20, 3);
        assert!(farm.graph.num_vertices() > 64);
        let trace = assert_colored_8(&farm.graph);
        assert!(trace.batch_levels > 0, "a 600-vertex farm must batch");
        assert!(trace.warnings.is_empty(), "farms meet the density floor");
    }

    #[test]
    fn runs_are_deterministic() {
        let farm = butterfly_farm(6, 5, 23);
        let (pc1, t1) = color_graph(&farm.graph).unwrap();
        let (pc2, t2) = color_graph(&farm.graph).unwrap();
        assert_eq!(snapshot(&farm.graph, &pc1), snapshot(&farm.graph, &pc2));
        assert_eq!(
            serde_json::to_string(&t1).unwrap(),
            serde_json::to_string(&t2).unwrap()
        );
    }

    #[test]
    fn trace_round_trips_through_json() {
        let farm = butterfly_farm(3, 3, 5);
        let (_, trace) = color_graph(&farm.graph).unwrap();
        let text = serde_json::to_string(&trace).unwrap();
        let back: RunTrace = serde_json::from_str(&text).unwrap();
        assert_eq!(back.levels, trace.levels);
        assert_eq!(back.rounds.len(), trace.rounds.len());
    }

    #[test]
    fn fallback_matches_main_path_on_good_input() {
        let farm = butterfly_farm(5, 4, 9);
        let (pc, trace) = color_graph_with_fallback(&farm.graph, &DriverOptions::default());
        let (direct, _) = color_graph(&farm.graph).unwrap();
        assert_eq!(snapshot(&farm.graph, &pc), snapshot(&farm.graph, &direct));
        assert_eq!(trace.fallback_edges, 0);
        assert!(trace.max_color <= 8);
    }

    #[test]
    fn k5_colors_through_the_weak_path() {
        // Every K5 degree is 4, so every edge is weak despite nonplanarity.
        let g = complete_graph(5);
        assert_colored_8(&g);
    }

    #[test]
    fn k9_errors_then_falls_back_to_nine_colors() {
        // All degrees are 8: no weak edges, no butterflies, and the chromatic
        // index is 9, so the main driver must refuse and the fallback must
        // reach for the ninth color.
        let g = complete_graph(9);
        match color_graph(&g) {
            Err(DriverError::NoReducibleEdges { n: 9, m: 36 }) => {}
            other => panic!("expected NoReducibleEdges, got {other:?}"),
        }
        let (pc, trace) = color_graph_with_fallback(&g, &DriverOptions::default());
        assert!(pc.is_total());
        verify_partial(&g, &pc).expect("proper over 9 colors");
        assert_eq!(trace.max_color, 9);
        assert!(trace.fallback_edges > 0);
        assert_eq!(trace.warnings.len(), 1);
    }

    #[test]
    fn strict_mode_rejects_sparse_levels() {
        // A long path on >64 vertices has every edge weak, but spaced
        // candidates are plentiful, so strictness only bites when the
        // reducible count is genuinely short; K9 padded with isolated-free
        // singletons is reducible-free and errors before the ratio check.
        let path: Vec<(VertexId, VertexId)> = (0..100).map(|v| (v, v + 1)).collect();
        let g = Graph::new(101, &path).unwrap();
        let opts = DriverOptions { strict_planar: true, ..DriverOptions::default() };
        let (pc, _) = color_graph_with(&g, &opts).expect("paths are comfortably dense");
        verify_coloring(&g, &pc).unwrap();
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn farms_of_any_shape_color(b1 in 1usize..7, b2 in 0usize..7, seed in 0u64..1000) {
            let farm = butterfly_farm(b1, b2, seed);
            let (pc, trace) = color_graph(&farm.graph).unwrap();
            verify_coloring(&farm.graph, &pc).unwrap();
            prop_assert!(trace.max_color <= 8);
        }
    }
}
