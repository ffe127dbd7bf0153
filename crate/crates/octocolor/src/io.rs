//! Text formats: edge lists, colorings, and the run-trace JSON.
//!
//! The edge-list format is DIMACS-flavored: a `p edge <n> <m>` header, one
//! `e <u> <v>` line per edge with 0-based endpoints, and `c` comment lines
//! anywhere. A coloring file carries one `<u> <v> <color>` line per edge,
//! in the graph's edge order, with colors restricted to `1..=8`. Parse
//! errors name the offending line.

use crate::coloring::{Color, ColorError, PartialColoring};
use crate::driver::RunTrace;
use crate::graph::{EdgeId, Graph, MAX_DEGREE};
use std::collections::HashSet;
use std::io::{BufRead, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// A well-formed coloring file whose colors clash at a vertex. Kept
    /// apart from [`IoError::Parse`] so callers can report "bad coloring"
    /// rather than "bad file".
    #[error("line {line}: improper coloring: {source}")]
    Improper { line: usize, source: ColorError },
    /// A well-formed coloring file covering too few edges.
    #[error("coloring covers {found} of {expected} edges")]
    Incomplete { expected: u32, found: u32 },
    #[error("edge {0} is uncolored; coloring files require a total coloring")]
    Uncolored(EdgeId),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn parse_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse { line, msg: msg.into() }
}

fn parse_u32(line: usize, token: &str, what: &str) -> Result<u32, IoError> {
    token.parse().map_err(|_| parse_err(line, format!("{what} {token:?} is not an integer")))
}

/// Reads a `p edge` file. All structural rules are enforced with
/// line-accurate messages: endpoints below `n`, no self-loops, no parallel
/// edges, degrees at most 8, and exactly the declared number of edges.
pub fn read_edge_list(reader: impl BufRead) -> Result<Graph, IoError> {
    let mut header: Option<(u32, u32)> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut seen: HashSet<(u32, u32)> = HashSet::new();
    let mut deg: Vec<u32> = Vec::new();
    let mut last_line = 0;
    for (i, line) in reader.lines().enumerate() {
        let no = i + 1;
        last_line = no;
        let line = line?;
        let mut parts = line.split_whitespace();
        match parts.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(no, "second p line"));
                }
                if parts.next() != Some("edge") {
                    return Err(parse_err(no, "p line must read \"p edge <n> <m>\""));
                }
                let n = parse_u32(no, parts.next().ok_or(parse_err(no, "missing n"))?, "n")?;
                let m = parse_u32(no, parts.next().ok_or(parse_err(no, "missing m"))?, "m")?;
                if parts.next().is_some() {
                    return Err(parse_err(no, "trailing tokens after p edge <n> <m>"));
                }
                deg = vec![0; n as usize];
                header = Some((n, m));
            }
            Some("e") => {
                let Some((n, m)) = header else {
                    return Err(parse_err(no, "e line before the p edge header"));
                };
                if edges.len() as u32 == m {
                    return Err(parse_err(no, format!("more than the declared {m} edges")));
                }
                let u = parse_u32(no, parts.next().ok_or(parse_err(no, "missing endpoint"))?, "endpoint")?;
                let v = parse_u32(no, parts.next().ok_or(parse_err(no, "missing endpoint"))?, "endpoint")?;
                if parts.next().is_some() {
                    return Err(parse_err(no, "trailing tokens after e <u> <v>"));
                }
                for w in [u, v] {
                    if w >= n {
                        return Err(parse_err(no, format!("endpoint {w} out of range (n = {n})")));
                    }
                }
                if u == v {
                    return Err(parse_err(no, format!("self loop at vertex {u}")));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(parse_err(no, format!("parallel edge between {u} and {v}")));
                }
                for w in [u, v] {
                    deg[w as usize] += 1;
                    if deg[w as usize] as usize > MAX_DEGREE {
                        return Err(parse_err(no, format!("degree of vertex {w} exceeds 8")));
                    }
                }
                edges.push((u, v));
            }
            Some(other) => {
                return Err(parse_err(no, format!("unknown line type {other:?}")));
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(parse_err(last_line, "missing p edge header"));
    };
    if edges.len() as u32 != m {
        return Err(parse_err(
            last_line,
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Graph::new(n, &edges).expect("parser enforced all structural rules"))
}

/// Writes `g` in the `p edge` format, with one `c` comment line per entry
/// of `comments` first.
pub fn write_edge_list(
    mut w: impl Write,
    g: &Graph,
    comments: &[&str],
) -> Result<(), IoError> {
    for comment in comments {
        writeln!(w, "c {comment}")?;
    }
    writeln!(w, "p edge {} {}", g.num_vertices(), g.num_edges())?;
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        writeln!(w, "e {u} {v}")?;
    }
    Ok(())
}

/// Reads a coloring for `g`: one `<u> <v> <color>` line per edge, in edge
/// order, colors in `1..=8`. Endpoints must match the graph's edge (either
/// orientation) and the result must be proper.
pub fn read_coloring(reader: impl BufRead, g: &Graph) -> Result<PartialColoring, IoError> {
    let mut pc = PartialColoring::new(g);
    let mut next: EdgeId = 0;
    for (i, line) in reader.lines().enumerate() {
        let no = i + 1;
        let line = line?;
        let mut parts = line.split_whitespace();
        let Some(first) = parts.next() else { continue };
        if first == "c" {
            continue;
        }
        if next == g.num_edges() {
            return Err(parse_err(no, format!("more than {} colored edges", g.num_edges())));
        }
        let u = parse_u32(no, first, "endpoint")?;
        let v = parse_u32(no, parts.next().ok_or(parse_err(no, "missing endpoint"))?, "endpoint")?;
        let c = parse_u32(no, parts.next().ok_or(parse_err(no, "missing color"))?, "color")?;
        if parts.next().is_some() {
            return Err(parse_err(no, "trailing tokens after <u> <v> <color>"));
        }
        let ends = g.endpoints(next);
        if ends != (u, v) && ends != (v, u) {
            return Err(parse_err(
                no,
                format!("edge {next} joins {} and {}, line says {u} and {v}", ends.0, ends.1),
            ));
        }
        if !(1..=8).contains(&c) {
            return Err(parse_err(no, format!("color {c} outside 1..=8")));
        }
        let c = Color::new(c as u8).expect("1..=8 is a valid color");
        pc.assign(g, next, c).map_err(|source| IoError::Improper { line: no, source })?;
        next += 1;
    }
    if next != g.num_edges() {
        return Err(IoError::Incomplete { expected: g.num_edges(), found: next });
    }
    Ok(pc)
}

/// Writes a total coloring of `g`, one `<u> <v> <color>` line per edge in
/// edge order. Fails on the first uncolored edge.
pub fn write_coloring(
    mut w: impl Write,
    g: &Graph,
    pc: &PartialColoring,
) -> Result<(), IoError> {
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        let c = pc.color(e).ok_or(IoError::Uncolored(e))?;
        writeln!(w, "{u} {v} {}", c.get())?;
    }
    Ok(())
}

/// Writes a run trace as pretty JSON with a trailing newline. Key names are
/// part of the tool contract and stay stable.
pub fn write_trace_json(mut w: impl Write, trace: &RunTrace) -> Result<(), IoError> {
    serde_json::to_writer_pretty(&mut w, trace)?;
    writeln!(w)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driver::color_graph;
    use crate::gen::{generate, GenStyle};
    use crate::oracle::verify_coloring;

    fn endpoints_of(g: &Graph) -> Vec<(u32, u32)> {
        g.edge_ids().map(|e| g.endpoints(e)).collect()
    }

    fn parse_edges(text: &str) -> Result<Graph, IoError> {
        read_edge_list(text.as_bytes())
    }

    #[test]
    fn edge_list_round_trips() {
        for style in GenStyle::ALL {
            let g = generate(style, 60, 9);
            let mut buf = Vec::new();
            write_edge_list(&mut buf, &g, &["generator: test"]).unwrap();
            let back = read_edge_list(buf.as_slice()).unwrap();
            assert_eq!(back.num_vertices(), g.num_vertices());
            assert_eq!(endpoints_of(&back), endpoints_of(&g));
        }
    }

    #[test]
    fn edge_list_accepts_comments_and_blanks() {
        let g = parse_edges("c hello\n\np edge 3 2\nc mid\ne 0 1\ne 1 2\n").unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(endpoints_of(&g), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn edge_list_rejects_malformed_input() {
        let cases: [(&str, &str); 8] = [
            ("e 0 1\n", "before the p edge header"),
            ("p edge 2 1\n", "declared 1 edges, found 0"),
            ("p edge 2 1\ne 0 1\ne 1 0\n", "more than the declared"),
            ("p edge 2 1\ne 0 2\n", "out of range"),
            ("p edge 2 1\ne 1 1\n", "self loop"),
            ("p edge 3 3\ne 0 1\ne 1 0\ne 1 2\n", "parallel edge"),
            ("p edge 2 1\np edge 2 1\n", "second p line"),
            ("x 1\n", "unknown line type"),
        ];
        for (text, needle) in cases {
            let err = parse_edges(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?} gave {err:?}");
        }
        let mut star = String::from("p edge 10 9\n");
        for v in 1..10 {
            star.push_str(&format!("e 0 {v}\n"));
        }
        let err = parse_edges(&star).unwrap_err().to_string();
        assert!(err.contains("line 10") && err.contains("exceeds 8"), "{err:?}");
    }

    #[test]
    fn coloring_round_trips() {
        let g = generate(GenStyle::Lattice, 80, 4);
        let (pc, _) = color_graph(&g).unwrap();
        let mut buf = Vec::new();
        write_coloring(&mut buf, &g, &pc).unwrap();
        let back = read_coloring(buf.as_slice(), &g).unwrap();
        for e in g.edge_ids() {
            assert_eq!(back.color(e), pc.color(e));
        }
        verify_coloring(&g, &back).unwrap();
    }

    #[test]
    fn coloring_rejects_bad_files() {
        let g = parse_edges("p edge 3 3\ne 0 1\ne 1 2\ne 2 0\n").unwrap();
        let cases: [(&str, &str); 5] = [
            ("0 1 9\n1 2 2\n2 0 3\n", "color 9 outside"),
            ("0 1 0\n1 2 2\n2 0 3\n", "color 0 outside"),
            ("0 2 1\n1 2 2\n2 0 3\n", "line says 0 and 2"),
            ("0 1 1\n1 2 1\n2 0 3\n", "improper coloring"),
            ("0 1 1\n1 2 2\n", "coloring covers 2 of 3 edges"),
        ];
        for (text, needle) in cases {
            let err = read_coloring(text.as_bytes(), &g).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?} gave {err:?}");
        }
        // Reversed orientation is fine.
        let pc = read_coloring("1 0 1\n2 1 2\n0 2 3\n".as_bytes(), &g).unwrap();
        verify_coloring(&g, &pc).unwrap();
    }

    #[test]
    fn incomplete_colorings_do_not_serialize() {
        let g = parse_edges("p edge 2 1\ne 0 1\n").unwrap();
        let pc = PartialColoring::new(&g);
        match write_coloring(Vec::new(), &g, &pc) {
            Err(IoError::Uncolored(0)) => {}
            other => panic!("expected Uncolored, got {other:?}"),
        }
    }

    #[test]
    fn trace_json_has_stable_keys() {
        let g = generate(GenStyle::Triangulation, 120, 2);
        let (_, trace) = color_graph(&g).unwrap();
        let mut buf = Vec::new();
        write_trace_json(&mut buf, &trace).unwrap();
        let value: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        for key in ["n", "m", "levels", "batch_levels", "single_levels", "rounds", "warnings", "fallback_edges", "max_color"] {
            assert!(value.get(key).is_some(), "missing key {key}");
        }
        let round = value["rounds"][0].as_object().unwrap();
        for key in ["level", "phase", "candidates", "kept", "colored"] {
            assert!(round.contains_key(key), "missing round key {key}");
        }
    }
}
