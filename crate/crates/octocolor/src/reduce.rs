//! Turns classified candidate edges into short recoloring plans and applies
//! them in independent batches.
//!
//! A batch round classifies every candidate, groups them by kind and color
//! tuple, keeps a chain-independent subset of the largest group, compiles
//! each survivor into a [`ReductionPlan`], and applies the plans back to
//! back. Kind-2 candidates cannot be planned directly; they are first
//! rewritten into kind 1 by a local two-edge swap ([`eliminate_type2`]).
//! Weak candidate edges skip classification entirely and go through the fan
//! insertion one by one, spaced out by [`filter_2_independent`].

use crate::chains::ChainIndex;
use crate::classify::{apply_script, classify_edge, verify_type, ClassifyError, EdgeType, ScriptStep};
use crate::coloring::{Color, ColorError, PartialColoring};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::oracle::{single_edge_fan, FanError};
use crate::reducible::{find_butterfly, is_weak};
use std::collections::{BTreeMap, HashSet};
use thiserror::Error;

/// Worst-case loss assumed for the chain-independence filter in progress
/// accounting: a kept candidate retires its ball of at most 16 vertices
/// plus the chains pinned there.
pub const CHAIN_KEEP_DIVISOR: usize = 33;

/// Spacing loss assumed for weak rounds: a kept edge marks at most 16 ball
/// vertices plus itself.
pub const WEAK_KEEP_DIVISOR: usize = 17;

/// Number of distinct `(kind, colors)` buckets a butterfly candidate can
/// fall into, counted by walking the color tuples each kind's side
/// conditions allow. Picking the most common bucket therefore loses at most
/// this factor.
pub fn butterfly_kind_space() -> usize {
    let cs: Vec<u8> = (1..=8).collect();
    let mut count = 1; // kind 0: all scripts share one bucket
    for &a in &cs {
        for &b in &cs {
            if b != a {
                count += 1; // kind 1
            }
        }
    }
    // kind 2: a is used at x while c is free there, and c avoids b by
    // definition, so all three differ.
    for &a in &cs {
        for &b in &cs {
            for &c in &cs {
                if b != a && c != a && c != b {
                    count += 1;
                }
            }
        }
    }
    // kind 3: c is used at x (the xz edge) while a is free there, but c may
    // coincide with b.
    for &a in &cs {
        for &b in &cs {
            for &c in &cs {
                if b != a && c != a {
                    count += 1;
                }
            }
        }
    }
    // kinds 4 and 5: c is used at z resp. x while b is free there, so all
    // three colors are pairwise distinct.
    for _ in 0..2 {
        for &a in &cs {
            for &b in &cs {
                for &c in &cs {
                    if b != a && c != a && c != b {
                        count += 1;
                    }
                }
            }
        }
    }
    // kind 6: the chain pair, the cycle pair and the witness colors are
    // pairwise distinct at x and z.
    for &a in &cs {
        for &b in &cs {
            for &c in &cs {
                for &d in &cs {
                    if b != a && c != a && c != b && d != a && d != b && d != c {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Progress divisor for butterfly rounds: bucket choice times filter loss.
pub fn butterfly_progress_divisor() -> usize {
    butterfly_kind_space() * CHAIN_KEEP_DIVISOR
}

#[derive(Debug, Error)]
pub enum ReduceError {
    #[error("edge {0}: stored witness colors do not match the coloring")]
    StaleWitness(EdgeId),
    #[error("edge {0}: kind-2 edges must be rewritten before planning")]
    PlanKind2(EdgeId),
    #[error("edge {0}: only kind-2 edges can be rewritten")]
    NotKind2(EdgeId),
    #[error("edge {0}: no swap witness adjacent to both endpoints")]
    WitnessNotFound(EdgeId),
    #[error("edge {0}: pre-apply audit rejected the stored kind")]
    AuditFailed(EdgeId),
    #[error("edge {0} is not reducible the expected way")]
    NotReducible(EdgeId),
    #[error("plan for edge {edge} could not be applied: {source}")]
    Coherence { edge: EdgeId, source: ColorError },
    #[error("fan insertion of edge {edge} failed: {source}")]
    Fan { edge: EdgeId, source: FanError },
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// One move of a reduction plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanStep {
    /// Color or recolor a single edge.
    Set(EdgeId, Color),
    /// Exchange the colors of two colored edges.
    Swap(EdgeId, EdgeId),
    /// Flip the two-colored chain through a vertex.
    Kempe(VertexId, Color, Color),
}

/// The compiled move sequence that colors one candidate edge.
#[derive(Debug, Clone)]
pub struct ReductionPlan {
    pub edge: EdgeId,
    /// The kind the plan was compiled from, kept for auditing.
    pub kind: EdgeType,
    pub steps: Vec<PlanStep>,
}

/// One edge's color change, as recorded while applying a plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeDiff {
    pub edge: EdgeId,
    pub before: Option<Color>,
    pub after: Color,
}

/// A successfully applied plan with everything it changed.
#[derive(Debug, Clone)]
pub struct AppliedPlan {
    pub edge: EdgeId,
    pub diffs: Vec<EdgeDiff>,
}

/// How much re-checking [`execute_plan`] does before touching the coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherenceMode {
    /// Re-verify every plan's kind against the current coloring first.
    Audit,
    /// Trust the batch filter; individual moves are still validated.
    Trust,
}

impl Default for CoherenceMode {
    fn default() -> CoherenceMode {
        if cfg!(debug_assertions) {
            CoherenceMode::Audit
        } else {
            CoherenceMode::Trust
        }
    }
}

/// The color pairs whose chains a plan for `kind` flips.
pub fn chain_pairs(kind: &EdgeType) -> Vec<(Color, Color)> {
    match *kind {
        EdgeType::T0 { .. } | EdgeType::T2 { .. } => Vec::new(),
        EdgeType::T1 { a, b }
        | EdgeType::T3 { a, b, .. }
        | EdgeType::T4 { a, b, .. }
        | EdgeType::T5 { a, b, .. } => vec![(a, b)],
        EdgeType::T6 { a, b, c, d, .. } => vec![(a, b), (c, d)],
    }
}

/// The vertex a plan for `kind` flips its chains from, given the resolved
/// `y` endpoint. Kinds without a flip return `None`.
fn flip_source(kind: &EdgeType, y: VertexId) -> Option<VertexId> {
    match *kind {
        EdgeType::T0 { .. } | EdgeType::T2 { .. } => None,
        EdgeType::T1 { .. } => Some(y),
        EdgeType::T3 { z, .. }
        | EdgeType::T4 { z, .. }
        | EdgeType::T5 { z, .. }
        | EdgeType::T6 { z, .. } => Some(z),
    }
}

/// Recovers which endpoint of `e` plays `x` in `kind`. The stored colors
/// pin the orientation: each kind names at least one color that is used or
/// free at `x` but not at `y`. Fails when neither orientation matches the
/// current coloring (the kind has gone stale).
fn resolve_roles(
    g: &Graph,
    pc: &PartialColoring,
    ci: &ChainIndex,
    e: EdgeId,
    kind: &EdgeType,
) -> Result<(VertexId, VertexId), ReduceError> {
    let (p, q) = g.endpoints(e);
    let orients = [(p, q), (q, p)];
    let colored = |u: VertexId, v: VertexId, c: Color| {
        g.edge_between(u, v).is_some_and(|e2| pc.color(e2) == Some(c))
    };
    let found = match *kind {
        EdgeType::T0 { .. } => Some((p, q)),
        EdgeType::T1 { a, b } => orients.into_iter().find(|&(x, y)| {
            if !pc.free_colors(x).contains(a) || !pc.free_colors(y).contains(b) {
                return false;
            }
            // Flipping from y must not reach x; a cycle through y would
            // mean b is not actually free there.
            match ci.chain_endpoints(y, a, b) {
                Ok((lo, hi)) => (lo == y || hi == y) && (lo ^ hi ^ y) != x,
                Err(_) => false,
            }
        }),
        EdgeType::T2 { a, b, c, .. } => orients.into_iter().find(|&(x, y)| {
            let fy = pc.free_colors(y);
            fy.contains(a) && fy.contains(b) && pc.free_colors(x).contains(c)
        }),
        EdgeType::T3 { c, z, .. } => orients.into_iter().find(|&(x, _)| colored(x, z, c)),
        EdgeType::T4 { a, v, .. } => orients.into_iter().find(|&(x, _)| colored(x, v, a)),
        EdgeType::T5 { c, v, .. } => orients.into_iter().find(|&(x, _)| colored(x, v, c)),
        EdgeType::T6 { c, v1, .. } => orients.into_iter().find(|&(x, _)| colored(x, v1, c)),
    };
    found.ok_or(ReduceError::StaleWitness(e))
}

/// Compiles `kind` into the moves that color `e`. Kind-2 edges cannot be
/// planned; rewrite them with [`eliminate_type2`] first.
pub fn plan_reduction(
    g: &Graph,
    pc: &PartialColoring,
    ci: &ChainIndex,
    e: EdgeId,
    kind: &EdgeType,
) -> Result<ReductionPlan, ReduceError> {
    let (x, y) = resolve_roles(g, pc, ci, e, kind)?;
    let wedge = |u: VertexId, v: VertexId| g.edge_between(u, v).ok_or(ReduceError::StaleWitness(e));
    let steps = match *kind {
        EdgeType::T0 { ref script } => script
            .iter()
            .map(|s| match *s {
                ScriptStep::Set(e2, c2) => PlanStep::Set(e2, c2),
                ScriptStep::Swap(e1, e2) => PlanStep::Swap(e1, e2),
            })
            .collect(),
        EdgeType::T1 { a, b } => vec![PlanStep::Kempe(y, a, b), PlanStep::Set(e, a)],
        EdgeType::T2 { .. } => return Err(ReduceError::PlanKind2(e)),
        EdgeType::T3 { a, b, c, z } => vec![
            PlanStep::Kempe(z, a, b),
            PlanStep::Set(wedge(x, z)?, a),
            PlanStep::Set(e, c),
        ],
        EdgeType::T4 { a, b, z, v, .. } => vec![
            PlanStep::Kempe(z, a, b),
            PlanStep::Swap(wedge(x, v)?, wedge(z, v)?),
            PlanStep::Set(e, a),
        ],
        EdgeType::T5 { a, b, c, z, v } => vec![
            PlanStep::Kempe(z, a, b),
            PlanStep::Swap(wedge(x, v)?, wedge(z, v)?),
            PlanStep::Set(e, c),
        ],
        EdgeType::T6 { a, b, c, d, z, v1, .. } => vec![
            PlanStep::Kempe(z, a, b),
            PlanStep::Kempe(z, c, d),
            PlanStep::Swap(wedge(x, v1)?, wedge(z, v1)?),
            PlanStep::Set(e, c),
        ],
    };
    Ok(ReductionPlan { edge: e, kind: kind.clone(), steps })
}

/// Rewrites a kind-2 edge into kind 1 by swapping the colors of the `yz`
/// and `xz` witness edges. The set of colored edges is unchanged; only two
/// colors trade places. Returns the new kind.
pub fn eliminate_type2(
    g: &Graph,
    pc: &mut PartialColoring,
    e: EdgeId,
    kind: &EdgeType,
) -> Result<EdgeType, ReduceError> {
    let &EdgeType::T2 { a, b, z, c } = kind else {
        return Err(ReduceError::NotKind2(e));
    };
    let (p, q) = g.endpoints(e);
    let (x, y) = [(p, q), (q, p)]
        .into_iter()
        .find(|&(x, y)| {
            let fy = pc.free_colors(y);
            fy.contains(a) && fy.contains(b) && pc.free_colors(x).contains(c)
        })
        .ok_or(ReduceError::StaleWitness(e))?;
    let witness = |zz: VertexId| {
        let eyz = g.edge_between(y, zz)?;
        let exz = g.edge_between(x, zz)?;
        (pc.color(eyz) == Some(c) && pc.color(exz) == Some(a)).then_some((eyz, exz))
    };
    // Prefer the stored witness; fall back to any other common neighbor.
    let (eyz, exz) = witness(z)
        .or_else(|| {
            g.neighbors(x)
                .filter(|&(u, _)| u != y && u != z)
                .find_map(|(u, _)| witness(u))
        })
        .ok_or(ReduceError::WitnessNotFound(e))?;
    pc.swap_colors(g, eyz, exz)
        .map_err(|source| ReduceError::Coherence { edge: e, source })?;
    Ok(EdgeType::T1 { a, b })
}

fn flush_run(
    g: &Graph,
    pc: &mut PartialColoring,
    run: &mut Vec<ScriptStep>,
    diffs: &mut Vec<EdgeDiff>,
) -> Result<(), ColorError> {
    if run.is_empty() {
        return Ok(());
    }
    let d = apply_script(g, pc, run)?;
    diffs.extend(d.into_iter().map(|(edge, before, after)| EdgeDiff { edge, before, after }));
    run.clear();
    Ok(())
}

fn run_steps(
    g: &Graph,
    pc: &mut PartialColoring,
    steps: &[PlanStep],
) -> Result<Vec<EdgeDiff>, (Vec<EdgeDiff>, ColorError)> {
    let mut diffs = Vec::new();
    let mut run: Vec<ScriptStep> = Vec::new();
    for step in steps {
        match *step {
            PlanStep::Set(e, c) => run.push(ScriptStep::Set(e, c)),
            PlanStep::Swap(e1, e2) => run.push(ScriptStep::Swap(e1, e2)),
            PlanStep::Kempe(v, a, b) => {
                if let Err(err) = flush_run(g, pc, &mut run, &mut diffs) {
                    return Err((diffs, err));
                }
                for e in pc.kempe_from(g, v, a, b) {
                    let after = pc.color(e).expect("flipped edges stay colored");
                    let before = if after == a { b } else { a };
                    diffs.push(EdgeDiff { edge: e, before: Some(before), after });
                }
            }
        }
    }
    if let Err(err) = flush_run(g, pc, &mut run, &mut diffs) {
        return Err((diffs, err));
    }
    Ok(diffs)
}

/// Undoes recorded changes, restoring every touched edge to its earliest
/// `before` color. Edges that were uncolored are cleared; the rest are
/// restored as one simultaneous recoloring, since intermediate states of a
/// plan need not be proper one edge at a time.
pub fn revert_diffs(
    g: &Graph,
    pc: &mut PartialColoring,
    diffs: &[EdgeDiff],
) -> Result<(), ColorError> {
    let mut target: Vec<(EdgeId, Option<Color>)> = Vec::new();
    for d in diffs {
        if !target.iter().any(|&(e2, _)| e2 == d.edge) {
            target.push((d.edge, d.before));
        }
    }
    let mut moves = Vec::new();
    for (e, before) in target {
        match before {
            None => {
                pc.clear(g, e)?;
            }
            Some(c) => moves.push((e, c)),
        }
    }
    pc.recolor_batch(g, &moves)?;
    Ok(())
}

/// Applies one plan. Runs of `Set`/`Swap` between chain flips are applied
/// as a single simultaneous recoloring, so scripts whose moves admit no
/// valid serial order still work. On failure the edges the plan already
/// touched are restored before the error is returned.
pub fn execute_plan(
    g: &Graph,
    pc: &mut PartialColoring,
    plan: &ReductionPlan,
    mode: CoherenceMode,
) -> Result<AppliedPlan, ReduceError> {
    if mode == CoherenceMode::Audit && !verify_type(g, pc, plan.edge, &plan.kind) {
        return Err(ReduceError::AuditFailed(plan.edge));
    }
    match run_steps(g, pc, &plan.steps) {
        Ok(diffs) => Ok(AppliedPlan { edge: plan.edge, diffs }),
        Err((diffs, source)) => {
            revert_diffs(g, pc, &diffs).expect("revert of freshly applied moves");
            Err(ReduceError::Coherence { edge: plan.edge, source })
        }
    }
}

/// Applies plans in order, stopping at the first failure. The failing plan
/// itself is rolled back; earlier plans stay applied and the coloring stays
/// proper.
pub fn execute_plans(
    g: &Graph,
    pc: &mut PartialColoring,
    plans: &[ReductionPlan],
    mode: CoherenceMode,
) -> Result<Vec<AppliedPlan>, ReduceError> {
    plans.iter().map(|p| execute_plan(g, pc, p, mode)).collect()
}

fn ball_vertices(g: &Graph, e: EdgeId, radius: usize) -> Vec<VertexId> {
    let (u, v) = g.endpoints(e);
    let mut seen: HashSet<VertexId> = HashSet::from([u, v]);
    let mut frontier = vec![u, v];
    for _ in 0..radius {
        let mut next = Vec::new();
        for &w in &frontier {
            for (nb, _) in g.neighbors(w) {
                if seen.insert(nb) {
                    next.push(nb);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

/// Greedy subset of `cands` whose distance-1 balls are pairwise disjoint.
pub fn filter_2_independent(g: &Graph, cands: &[EdgeId]) -> Vec<EdgeId> {
    spaced_subset(g, cands, 1)
}

/// Greedy subset of `cands` whose distance-2 balls are pairwise disjoint,
/// so any two kept edges are more than four steps apart.
pub fn filter_4_independent(g: &Graph, cands: &[EdgeId]) -> Vec<EdgeId> {
    spaced_subset(g, cands, 2)
}

fn spaced_subset(g: &Graph, cands: &[EdgeId], radius: usize) -> Vec<EdgeId> {
    let mut marked = vec![false; g.num_vertices() as usize];
    let mut keep = Vec::new();
    for &e in cands {
        let ball = ball_vertices(g, e, radius);
        if ball.iter().any(|&v| marked[v as usize]) {
            continue;
        }
        for &v in &ball {
            marked[v as usize] = true;
        }
        keep.push(e);
    }
    keep
}

/// Keeps a subset of same-kind candidates whose plans cannot disturb each
/// other: their balls stay disjoint, no plan flips a chain that meets a
/// kept candidate's ball, and no two plans flip the same chain. Candidates
/// are taken in order; returns indices into `cands`. Candidates whose
/// stored kind no longer resolves are dropped silently.
pub fn filter_chain_independent(
    g: &Graph,
    pc: &PartialColoring,
    ci: &ChainIndex,
    cands: &[(EdgeId, EdgeType)],
) -> Vec<usize> {
    let mut marked = vec![false; g.num_vertices() as usize];
    let mut flipped: HashSet<(u8, u32)> = HashSet::new();
    let mut ball_chains: HashSet<(u8, u32)> = HashSet::new();
    let mut keep = Vec::new();
    'cand: for (i, (e, kind)) in cands.iter().enumerate() {
        let ball = g.edge_ball1(*e);
        if ball.iter().any(|&v| marked[v as usize]) {
            continue;
        }
        let pairs = chain_pairs(kind);
        let mut flips = Vec::new();
        if !pairs.is_empty() {
            let Ok((_, y)) = resolve_roles(g, pc, ci, *e, kind) else {
                continue;
            };
            let Some(src) = flip_source(kind, y) else {
                continue;
            };
            for &(a, b) in &pairs {
                let key = ci.chain_key(src, a, b);
                if flipped.contains(&key) || ball_chains.contains(&key) {
                    continue 'cand;
                }
                flips.push(key);
            }
            for &v in &ball {
                for &(a, b) in &pairs {
                    if flipped.contains(&ci.chain_key(v, a, b)) {
                        continue 'cand;
                    }
                }
            }
        }
        for &v in &ball {
            marked[v as usize] = true;
        }
        for &(a, b) in &pairs {
            for &v in &ball {
                ball_chains.insert(ci.chain_key(v, a, b));
            }
        }
        flipped.extend(flips);
        keep.push(i);
    }
    keep
}

fn bucket_key(kind: &EdgeType) -> (u8, [u8; 4]) {
    let v = |x: Color| x.get();
    match *kind {
        EdgeType::T0 { .. } => (0, [0; 4]),
        EdgeType::T1 { a, b } => (1, [v(a), v(b), 0, 0]),
        EdgeType::T2 { a, b, c, .. } => (2, [v(a), v(b), v(c), 0]),
        EdgeType::T3 { a, b, c, .. } => (3, [v(a), v(b), v(c), 0]),
        EdgeType::T4 { a, b, c, .. } => (4, [v(a), v(b), v(c), 0]),
        EdgeType::T5 { a, b, c, .. } => (5, [v(a), v(b), v(c), 0]),
        EdgeType::T6 { a, b, c, d, .. } => (6, [v(a), v(b), v(c), v(d)]),
    }
}

/// What one batch round did.
#[derive(Debug, Clone)]
pub struct RoundReport {
    /// Uncolored candidates examined.
    pub candidates: usize,
    /// Kind ordinal of the chosen bucket.
    pub bucket_tag: u8,
    /// Candidates sharing the chosen kind and colors.
    pub bucket_size: usize,
    /// Bucket members surviving the independence filter.
    pub kept: usize,
    /// Edges colored this round.
    pub colored: Vec<EdgeId>,
}

/// One batched insertion round over butterfly candidates.
///
/// Preconditions: candidates are uncolored with every other edge at their
/// endpoints colored, and pairwise ball-disjoint (as produced by
/// [`filter_4_independent`]). The round classifies all candidates, picks
/// the most common `(kind, colors)` bucket, keeps a chain-independent
/// subset and applies the compiled plans. Call repeatedly until every
/// candidate is colored.
pub fn reduce_butterfly_round(
    g: &Graph,
    pc: &mut PartialColoring,
    cands: &[EdgeId],
    mode: CoherenceMode,
) -> Result<RoundReport, ReduceError> {
    let live: Vec<EdgeId> = cands.iter().copied().filter(|&e| pc.color(e).is_none()).collect();
    if live.is_empty() {
        return Ok(RoundReport {
            candidates: 0,
            bucket_tag: 0,
            bucket_size: 0,
            kept: 0,
            colored: Vec::new(),
        });
    }
    let mut classified: Vec<(EdgeId, EdgeType)> = Vec::with_capacity(live.len());
    {
        let ci = ChainIndex::lazy(g, pc);
        for &e in &live {
            let w = find_butterfly(g, e).ok_or(ReduceError::NotReducible(e))?;
            classified.push((e, classify_edge(g, pc, &ci, &w)?));
        }
    }
    let mut buckets: BTreeMap<(u8, [u8; 4]), Vec<usize>> = BTreeMap::new();
    for (i, (_, kind)) in classified.iter().enumerate() {
        buckets.entry(bucket_key(kind)).or_default().push(i);
    }
    let (&key, idxs) = buckets
        .iter()
        .max_by_key(|(_, v)| v.len())
        .expect("live candidates imply a bucket");
    let mut bucket: Vec<(EdgeId, EdgeType)> =
        idxs.iter().map(|&i| classified[i].clone()).collect();
    if key.0 == 2 {
        for (e, kind) in bucket.iter_mut() {
            *kind = eliminate_type2(g, pc, *e, kind)?;
        }
    }
    let (kept, plans) = {
        let ci = ChainIndex::lazy(g, pc);
        let kept = filter_chain_independent(g, pc, &ci, &bucket);
        let plans = kept
            .iter()
            .map(|&i| plan_reduction(g, pc, &ci, bucket[i].0, &bucket[i].1))
            .collect::<Result<Vec<_>, _>>()?;
        (kept, plans)
    };
    let applied = execute_plans(g, pc, &plans, mode)?;
    Ok(RoundReport {
        candidates: live.len(),
        bucket_tag: key.0,
        bucket_size: bucket.len(),
        kept: kept.len(),
        colored: applied.into_iter().map(|p| p.edge).collect(),
    })
}

/// What one weak round did.
#[derive(Debug, Clone)]
pub struct WeakRoundReport {
    /// Uncolored candidates examined.
    pub candidates: usize,
    /// Candidates surviving the spacing filter; all of them get colored.
    pub kept: usize,
    /// Edges colored this round.
    pub colored: Vec<EdgeId>,
}

/// One insertion round over weak candidate edges: space them out with
/// [`filter_2_independent`], then run the fan insertion on each survivor.
pub fn reduce_weak_round(
    g: &Graph,
    pc: &mut PartialColoring,
    cands: &[EdgeId],
) -> Result<WeakRoundReport, ReduceError> {
    let live: Vec<EdgeId> = cands.iter().copied().filter(|&e| pc.color(e).is_none()).collect();
    let kept = filter_2_independent(g, &live);
    for &e in &kept {
        let x = is_weak(g, e).ok_or(ReduceError::NotReducible(e))?;
        single_edge_fan(g, pc, e, x).map_err(|source| ReduceError::Fan { edge: e, source })?;
    }
    Ok(WeakRoundReport { candidates: live.len(), kept: kept.len(), colored: kept })
}

/// Inserts a single reducible edge, preferring the weak-endpoint fan and
/// falling back to the butterfly pipeline.
pub fn reduce_one(
    g: &Graph,
    pc: &mut PartialColoring,
    e: EdgeId,
    mode: CoherenceMode,
) -> Result<(), ReduceError> {
    if let Some(x) = is_weak(g, e) {
        return single_edge_fan(g, pc, e, x).map_err(|source| ReduceError::Fan { edge: e, source });
    }
    let w = find_butterfly(g, e).ok_or(ReduceError::NotReducible(e))?;
    let mut kind = {
        let ci = ChainIndex::lazy(g, pc);
        classify_edge(g, pc, &ci, &w)?
    };
    if kind.tag() == 2 {
        kind = eliminate_type2(g, pc, e, &kind)?;
    }
    let plan = {
        let ci = ChainIndex::lazy(g, pc);
        plan_reduction(g, pc, &ci, e, &kind)?
    };
    execute_plan(g, pc, &plan, mode)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{butterfly_farm, pinned_batch, PinnedOutcome};

    fn c(v: u8) -> Color {
        Color::new(v).unwrap()
    }

    fn snapshot(g: &Graph, pc: &PartialColoring) -> Vec<Option<Color>> {
        g.edge_ids().map(|e| pc.color(e)).collect()
    }

    /// Classify, rewrite kind 2 if needed, plan and apply one edge through
    /// the butterfly pipeline regardless of weakness.
    fn insert_via_butterfly(g: &Graph, pc: &mut PartialColoring, e: EdgeId) {
        let w = find_butterfly(g, e).unwrap();
        let mut kind = {
            let ci = ChainIndex::lazy(g, pc);
            classify_edge(g, pc, &ci, &w).unwrap()
        };
        if kind.tag() == 2 {
            kind = eliminate_type2(g, pc, e, &kind).unwrap();
        }
        let plan = {
            let ci = ChainIndex::lazy(g, pc);
            plan_reduction(g, pc, &ci, e, &kind).unwrap()
        };
        execute_plan(g, pc, &plan, CoherenceMode::Audit).unwrap();
    }

    const DEEP: [PinnedOutcome; 5] = [
        PinnedOutcome::T3,
        PinnedOutcome::T4,
        PinnedOutcome::T5A,
        PinnedOutcome::T5B,
        PinnedOutcome::T6,
    ];

    #[test]
    fn pinned_kinds_plan_and_execute() {
        for outcome in DEEP {
            let mut batch = pinned_batch(outcome, 3);
            let g = &batch.graph;
            let pc = &mut batch.coloring;
            for &e in &batch.edges {
                let w = find_butterfly(g, e).unwrap();
                let plan = {
                    let ci = ChainIndex::lazy(g, pc);
                    let kind = classify_edge(g, pc, &ci, &w).unwrap();
                    assert!(kind.tag() >= 3, "{outcome:?} reaches a deep kind");
                    plan_reduction(g, pc, &ci, e, &kind).unwrap()
                };
                execute_plan(g, pc, &plan, CoherenceMode::Audit).unwrap();
                assert!(pc.color(e).is_some(), "{outcome:?} edge colored");
            }
            assert!(pc.is_total(), "{outcome:?} finishes the copy");
            assert!(pc.check_proper(g), "{outcome:?} stays proper");
        }
    }

    #[test]
    fn kind2_rewrite_keeps_colored_set() {
        let mut batch = pinned_batch(PinnedOutcome::T2, 3);
        let g = &batch.graph;
        let pc = &mut batch.coloring;
        for &e in &batch.edges {
            let w = find_butterfly(g, e).unwrap();
            let kind = {
                let ci = ChainIndex::lazy(g, pc);
                classify_edge(g, pc, &ci, &w).unwrap()
            };
            assert_eq!(kind.tag(), 2);
            let before = snapshot(g, pc);
            let new = eliminate_type2(g, pc, e, &kind).unwrap();
            let after = snapshot(g, pc);
            let changed: Vec<usize> = (0..before.len())
                .filter(|&i| before[i] != after[i])
                .collect();
            assert_eq!(changed.len(), 2, "exactly the swapped pair moves");
            for i in changed {
                assert!(before[i].is_some() && after[i].is_some(), "no edge gains or loses a color");
            }
            assert_eq!(new, EdgeType::T1 { a: c(3), b: c(4) });
            assert!(verify_type(g, pc, e, &new));
        }
        for &e in &batch.edges {
            insert_via_butterfly(g, pc, e);
        }
        assert!(pc.is_total());
        assert!(pc.check_proper(g));
    }

    #[test]
    fn rounds_match_sequential_insertion() {
        let all = [
            PinnedOutcome::T2,
            PinnedOutcome::T3,
            PinnedOutcome::T4,
            PinnedOutcome::T5A,
            PinnedOutcome::T5B,
            PinnedOutcome::T6,
        ];
        for outcome in all {
            let batch = pinned_batch(outcome, 5);
            let g = &batch.graph;

            let mut pa = batch.coloring.clone();
            let rep = reduce_butterfly_round(g, &mut pa, &batch.edges, CoherenceMode::Audit).unwrap();
            assert_eq!(
                (rep.candidates, rep.bucket_size, rep.kept, rep.colored.len()),
                (5, 5, 5, 5),
                "{outcome:?} batches disjoint copies in one round"
            );
            assert!(pa.is_total());
            assert!(pa.check_proper(g));

            let mut pb = batch.coloring.clone();
            for &e in &batch.edges {
                insert_via_butterfly(g, &mut pb, e);
            }
            assert_eq!(snapshot(g, &pa), snapshot(g, &pb), "{outcome:?} batched equals sequential");
        }
    }

    #[test]
    fn chain_filter_blocks_interfering_candidates() {
        // A colored path carries the (1,2)-chain 1-2-3-10 from candidate
        // A's flip endpoint into candidate B's ball; candidate C shares a
        // vertex with A outright.
        let g_edges = [(0, 1), (1, 2), (2, 3), (3, 10), (10, 11), (11, 12), (0, 13)];
        let colors = [0u8, 1, 2, 1, 3, 0, 0];
        let g = Graph::new(14, &g_edges).unwrap();
        let mut pc = PartialColoring::new(&g);
        for (e, &col) in colors.iter().enumerate() {
            if col != 0 {
                pc.assign(&g, e as EdgeId, c(col)).unwrap();
            }
        }
        let t1 = EdgeType::T1 { a: c(1), b: c(2) };
        let cands = vec![(0, t1.clone()), (5, t1.clone()), (6, t1.clone())];
        let ci = ChainIndex::lazy(&g, &pc);
        assert_eq!(filter_chain_independent(&g, &pc, &ci, &cands), vec![0]);

        // A duplicated candidate is caught by the ball marking alone.
        let dup = vec![(0, t1.clone()), (0, t1)];
        assert_eq!(filter_chain_independent(&g, &pc, &ci, &dup), vec![0]);
    }

    #[test]
    fn diffs_revert_cleanly() {
        let mut batch = pinned_batch(PinnedOutcome::T6, 1);
        let g = &batch.graph;
        let pc = &mut batch.coloring;
        let e = batch.edges[0];
        let orig = snapshot(g, pc);
        let w = find_butterfly(g, e).unwrap();
        let plan = {
            let ci = ChainIndex::lazy(g, pc);
            let kind = classify_edge(g, pc, &ci, &w).unwrap();
            plan_reduction(g, pc, &ci, e, &kind).unwrap()
        };
        let applied = execute_plan(g, pc, &plan, CoherenceMode::Audit).unwrap();
        assert!(pc.color(e).is_some());
        assert!(!applied.diffs.is_empty());
        revert_diffs(g, pc, &applied.diffs).unwrap();
        assert_eq!(snapshot(g, pc), orig, "reverting the diffs restores the coloring");
        assert!(pc.check_proper(g));
    }

    #[test]
    fn audit_rejects_stale_plans() {
        let mut batch = pinned_batch(PinnedOutcome::T3, 1);
        let g = &batch.graph;
        let pc = &mut batch.coloring;
        let e = batch.edges[0];
        let w = find_butterfly(g, e).unwrap();
        let plan = {
            let ci = ChainIndex::lazy(g, pc);
            let kind = classify_edge(g, pc, &ci, &w).unwrap();
            plan_reduction(g, pc, &ci, e, &kind).unwrap()
        };
        execute_plan(g, pc, &plan, CoherenceMode::Audit).unwrap();
        let err = execute_plan(g, pc, &plan, CoherenceMode::Audit).unwrap_err();
        assert!(matches!(err, ReduceError::AuditFailed(_)));
    }

    #[test]
    fn kind_space_is_enumerated() {
        assert_eq!(butterfly_kind_space(), 3137);
        assert_eq!(butterfly_progress_divisor(), 3137 * CHAIN_KEEP_DIVISOR);
    }

    #[test]
    fn spacing_filters_keep_disjoint_balls() {
        let edges: Vec<(u32, u32)> = (0..30).map(|i| (i, i + 1)).collect();
        let g = Graph::new(31, &edges).unwrap();
        let all: Vec<EdgeId> = g.edge_ids().collect();
        for (kept, radius, floor) in [
            (filter_2_independent(&g, &all), 1usize, all.len().div_ceil(WEAK_KEEP_DIVISOR)),
            (filter_4_independent(&g, &all), 2, 1),
        ] {
            assert!(kept.len() >= floor);
            for (i, &e1) in kept.iter().enumerate() {
                for &e2 in &kept[i + 1..] {
                    let b1 = ball_vertices(&g, e1, radius);
                    let b2 = ball_vertices(&g, e2, radius);
                    assert!(b1.iter().all(|v| !b2.contains(v)), "balls of {e1} and {e2} overlap");
                }
            }
        }
    }

    #[test]
    fn weak_rounds_color_a_whole_farm() {
        let farm = butterfly_farm(2, 2, 5);
        let g = &farm.graph;
        let mut pc = PartialColoring::new(g);
        let all: Vec<EdgeId> = g.edge_ids().collect();
        let mut rounds = 0;
        while !pc.is_total() {
            let rep = reduce_weak_round(g, &mut pc, &all).unwrap();
            assert!(!rep.colored.is_empty(), "every round makes progress");
            rounds += 1;
            assert!(rounds < 10_000, "weak rounds must terminate");
        }
        assert!(pc.check_proper(g));
    }
}
