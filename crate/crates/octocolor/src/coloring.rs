//! Partial proper edge colorings over a small fixed palette.
//!
//! Colors are `1..=8` for the algorithm proper; color 9 exists only so the
//! fallback path can finish off graphs that are not actually planar. A
//! [`PartialColoring`] maintains, per vertex, a bitmask of used colors and a
//! slot table mapping each used color to the edge carrying it, so "which edge
//! at `v` has color `c`" and "is `c` free at `v`" are O(1). Every mutation
//! bumps a version counter; the chain index records the version it was built
//! against and refuses to answer queries for a mutated coloring.

use crate::graph::{EdgeId, Graph, VertexId, UNSET};
use thiserror::Error;

/// An edge color in `1..=9`. The algorithm assigns only `1..=8`; 9 is the
/// fallback-only extra color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(u8);

/// Number of colors the algorithm proper works with.
pub const PALETTE: u8 = 8;

impl Color {
    pub fn new(c: u8) -> Option<Color> {
        (1..=9).contains(&c).then_some(Color(c))
    }

    /// All eight algorithm colors, ascending.
    pub fn all() -> impl Iterator<Item = Color> {
        (1..=PALETTE).map(Color)
    }

    pub fn get(self) -> u8 {
        self.0
    }

    fn bit(self) -> u16 {
        1 << (self.0 - 1)
    }

    fn slot(self) -> usize {
        self.0 as usize - 1
    }
}

impl std::fmt::Display for Color {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of colors as a bitmask, iterated in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ColorSet(u16);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn contains(self, c: Color) -> bool {
        self.0 & c.bit() != 0
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= c.bit();
    }

    pub fn remove(&mut self, c: Color) {
        self.0 &= !c.bit();
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersect(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Lowest color in the set.
    pub fn first(self) -> Option<Color> {
        (!self.is_empty()).then(|| Color(self.0.trailing_zeros() as u8 + 1))
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        (1..=9).map(Color).filter(move |c| self.contains(*c))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColorError {
    #[error("edge {0} is already colored")]
    AlreadyColored(EdgeId),
    #[error("edge {0} is not colored")]
    Uncolored(EdgeId),
    #[error("color already used at vertex {0}")]
    ColorConflict(VertexId),
}

#[derive(Debug, Clone)]
pub struct PartialColoring {
    color_of: Vec<u8>,
    used: Vec<u16>,
    // v * 9 + (c - 1) -> edge at v carrying color c, or UNSET.
    slots: Vec<EdgeId>,
    version: u64,
    uncolored: usize,
}

impl PartialColoring {
    pub fn new(g: &Graph) -> PartialColoring {
        PartialColoring {
            color_of: vec![0; g.num_edges() as usize],
            used: vec![0; g.num_vertices() as usize],
            slots: vec![UNSET; g.num_vertices() as usize * 9],
            version: 0,
            uncolored: g.num_edges() as usize,
        }
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn uncolored_count(&self) -> usize {
        self.uncolored
    }

    pub fn is_total(&self) -> bool {
        self.uncolored == 0
    }

    pub fn color(&self, e: EdgeId) -> Option<Color> {
        Color::new(self.color_of[e as usize])
    }

    /// Colors not used at `v`, within the 8-color palette.
    pub fn free_colors(&self, v: VertexId) -> ColorSet {
        ColorSet(!self.used[v as usize] & 0xff)
    }

    /// Colors used at `v` (may include 9 after a fallback run).
    pub fn used_colors(&self, v: VertexId) -> ColorSet {
        ColorSet(self.used[v as usize])
    }

    /// Colors not used at `v` within the 9-color fallback palette.
    pub(crate) fn free_colors_wide(&self, v: VertexId) -> ColorSet {
        ColorSet(!self.used[v as usize] & 0x1ff)
    }

    /// The edge at `v` carrying color `c`, if any.
    pub fn edge_with_color(&self, v: VertexId, c: Color) -> Option<EdgeId> {
        let e = self.slots[v as usize * 9 + c.slot()];
        (e != UNSET).then_some(e)
    }

    fn put(&mut self, g: &Graph, e: EdgeId, c: Color) {
        let (u, v) = g.endpoints(e);
        debug_assert!(!self.used_colors(u).contains(c));
        debug_assert!(!self.used_colors(v).contains(c));
        self.color_of[e as usize] = c.get();
        for w in [u, v] {
            self.used[w as usize] |= c.bit();
            self.slots[w as usize * 9 + c.slot()] = e;
        }
        self.uncolored -= 1;
    }

    fn take(&mut self, g: &Graph, e: EdgeId) -> Color {
        let c = Color::new(self.color_of[e as usize]).expect("take on uncolored edge");
        let (u, v) = g.endpoints(e);
        self.color_of[e as usize] = 0;
        for w in [u, v] {
            self.used[w as usize] &= !c.bit();
            self.slots[w as usize * 9 + c.slot()] = UNSET;
        }
        self.uncolored += 1;
        c
    }

    /// Colors uncolored edge `e` with `c`; fails if `c` is in use at either
    /// endpoint.
    pub fn assign(&mut self, g: &Graph, e: EdgeId, c: Color) -> Result<(), ColorError> {
        if self.color(e).is_some() {
            return Err(ColorError::AlreadyColored(e));
        }
        let (u, v) = g.endpoints(e);
        for w in [u, v] {
            if self.used_colors(w).contains(c) {
                return Err(ColorError::ColorConflict(w));
            }
        }
        self.put(g, e, c);
        self.version += 1;
        Ok(())
    }

    /// Removes the color of `e`, returning it.
    pub fn clear(&mut self, g: &Graph, e: EdgeId) -> Result<Color, ColorError> {
        if self.color(e).is_none() {
            return Err(ColorError::Uncolored(e));
        }
        let c = self.take(g, e);
        self.version += 1;
        Ok(c)
    }

    /// Sets `e` to `c` whether or not it was colored, returning the previous
    /// color. Fails (leaving the coloring unchanged) if `c` is used at either
    /// endpoint by an edge other than `e`.
    pub fn set_color(&mut self, g: &Graph, e: EdgeId, c: Color) -> Result<Option<Color>, ColorError> {
        let old = self.color(e);
        if old == Some(c) {
            return Ok(old);
        }
        let (u, v) = g.endpoints(e);
        for w in [u, v] {
            if self.used_colors(w).contains(c) {
                return Err(ColorError::ColorConflict(w));
            }
        }
        if old.is_some() {
            self.take(g, e);
        }
        self.put(g, e, c);
        self.version += 1;
        Ok(old)
    }

    /// Exchanges the colors of two colored edges; fails (unchanged) if the
    /// exchange would put a repeated color at some endpoint.
    pub fn swap_colors(&mut self, g: &Graph, e1: EdgeId, e2: EdgeId) -> Result<(), ColorError> {
        let c1 = self.color(e1).ok_or(ColorError::Uncolored(e1))?;
        let c2 = self.color(e2).ok_or(ColorError::Uncolored(e2))?;
        if e1 == e2 || c1 == c2 {
            self.version += 1;
            return Ok(());
        }
        // After removing both edges, each target color must be free at the
        // endpoints of the edge receiving it.
        self.take(g, e1);
        self.take(g, e2);
        let mut conflict = None;
        let (a1, b1) = g.endpoints(e1);
        let (a2, b2) = g.endpoints(e2);
        for w in [a1, b1] {
            if self.used_colors(w).contains(c2) {
                conflict = Some(w);
            }
        }
        for w in [a2, b2] {
            if self.used_colors(w).contains(c1) {
                conflict = conflict.or(Some(w));
            }
        }
        if let Some(w) = conflict {
            self.put(g, e1, c1);
            self.put(g, e2, c2);
            return Err(ColorError::ColorConflict(w));
        }
        self.put(g, e1, c2);
        self.put(g, e2, c1);
        self.version += 1;
        Ok(())
    }

    /// Recolors several already-colored edges as one simultaneous step:
    /// validity is judged against the final state, so moves that merely
    /// rotate colors among edges sharing a vertex succeed even when no
    /// sequential order of single recolorings would. Each edge may appear at
    /// most once. On success returns the previous colors in input order; on
    /// failure the coloring is left unchanged.
    pub fn recolor_batch(
        &mut self,
        g: &Graph,
        moves: &[(EdgeId, Color)],
    ) -> Result<Vec<(EdgeId, Color)>, ColorError> {
        let mut olds = Vec::with_capacity(moves.len());
        for (i, &(e, _)) in moves.iter().enumerate() {
            if moves[..i].iter().any(|&(e2, _)| e2 == e) {
                return Err(ColorError::AlreadyColored(e));
            }
            olds.push((e, self.color(e).ok_or(ColorError::Uncolored(e))?));
        }
        for &(e, _) in moves {
            self.take(g, e);
        }
        for (i, &(e, c)) in moves.iter().enumerate() {
            let (u, v) = g.endpoints(e);
            if let Some(w) = [u, v].into_iter().find(|&w| self.used_colors(w).contains(c)) {
                for &(e2, _) in &moves[..i] {
                    self.take(g, e2);
                }
                for &(e2, c2) in &olds {
                    self.put(g, e2, c2);
                }
                return Err(ColorError::ColorConflict(w));
            }
            self.put(g, e, c);
        }
        self.version += 1;
        Ok(olds)
    }

    /// Flips the two-color chain (colors `a`/`b`) containing `v` and returns
    /// the recolored edge ids in walk order: first the edges reached from `v`
    /// by starting with an `a`-colored edge, then those reached starting with
    /// `b`. A vertex on neither color yields an empty list. Properness is
    /// preserved; applying the same call twice restores the coloring.
    pub fn kempe_from(&mut self, g: &Graph, v: VertexId, a: Color, b: Color) -> Vec<EdgeId> {
        debug_assert_ne!(a, b);
        let mut edges = Vec::new();
        'sides: for (start, other) in [(a, b), (b, a)] {
            let mut cur = v;
            let mut want = start;
            while let Some(e) = self.edge_with_color(cur, want) {
                edges.push(e);
                cur = g.other_endpoint(e, cur);
                // A cycle closes back at v on the first sweep; the second
                // sweep must not retrace it.
                if cur == v {
                    break 'sides;
                }
                want = if want == start { other } else { start };
            }
        }
        // Two phases keep the per-vertex bookkeeping sound at chain-interior
        // vertices: clear everything, then put back the flipped colors.
        let mut olds = Vec::with_capacity(edges.len());
        for &e in &edges {
            olds.push(self.take(g, e));
        }
        for (&e, &old) in edges.iter().zip(&olds) {
            let new = if old == a { b } else { a };
            self.put(g, e, new);
        }
        self.version += 1;
        edges
    }

    /// Full properness scan, recomputed from scratch. Debug/test helper.
    pub fn check_proper(&self, g: &Graph) -> bool {
        let mut seen = vec![0u16; g.num_vertices() as usize];
        for e in g.edge_ids() {
            if let Some(c) = self.color(e) {
                let (u, v) = g.endpoints(e);
                for w in [u, v] {
                    if seen[w as usize] & c.bit() != 0 {
                        return false;
                    }
                    seen[w as usize] |= c.bit();
                }
            }
        }
        // Bookkeeping must agree with the scan.
        seen == self.used
    }
}
