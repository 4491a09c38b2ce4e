//! Integer grid drawings and the checks that apply to them.

use crate::graph::{LevelGraph, VertexId};
use crate::report::{ValidationReport, ViolationCode};
use crate::slopes::Slopes;

/// x-coordinate per vertex; the y-coordinate of a vertex is its level.
///
/// Coordinates are indexed by [`VertexId`] of the graph being drawn.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Drawing {
    x: Vec<i64>,
}

impl Drawing {
    pub fn new(x: Vec<i64>) -> Self {
        Drawing { x }
    }

    pub fn x(&self, v: VertexId) -> i64 {
        self.x[v.index()]
    }

    pub fn set(&mut self, v: VertexId, x: i64) {
        self.x[v.index()] = x;
    }

    pub fn coords(&self) -> &[i64] {
        &self.x
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.x
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn min_x(&self) -> Option<i64> {
        self.x.iter().copied().min()
    }

    pub fn max_x(&self) -> Option<i64> {
        self.x.iter().copied().max()
    }

    /// `max x − min x`, zero for an empty drawing.
    pub fn width(&self) -> i64 {
        match (self.min_x(), self.max_x()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn translated(&self, dx: i64) -> Drawing {
        Drawing {
            x: self.x.iter().map(|x| x + dx).collect(),
        }
    }

    /// Translate so that the smallest coordinate is zero.
    pub fn anchored_at_zero(&self) -> Drawing {
        self.translated(-self.min_x().unwrap_or(0))
    }

    /// Translate so that `v` sits at x = 0.
    pub fn anchored_at(&self, v: VertexId) -> Drawing {
        self.translated(-self.x(v))
    }
}

/// Integer columns covered by vertices, edge interiors and protected ranges.
///
/// A column is a gap when it lies strictly between the leftmost and rightmost
/// vertex and nothing covers it.
#[derive(Debug, Clone, Default)]
pub struct Coverage {
    segments: Vec<(i64, i64)>,
    lo: Option<i64>,
    hi: Option<i64>,
}

impl Coverage {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn of_drawing(g: &LevelGraph, d: &Drawing) -> Self {
        let mut c = Coverage::new();
        c.add_drawing(g, d);
        c
    }

    pub fn add_drawing(&mut self, g: &LevelGraph, d: &Drawing) {
        for &x in d.coords() {
            self.add_vertex(x);
        }
        for &(u, v) in g.edges() {
            self.add_edge(d.x(u), d.x(v));
        }
    }

    pub fn add_vertex(&mut self, x: i64) {
        self.segments.push((x, x));
        self.lo = Some(self.lo.map_or(x, |l| l.min(x)));
        self.hi = Some(self.hi.map_or(x, |h| h.max(x)));
    }

    /// An edge covers the columns strictly between its endpoints.
    pub fn add_edge(&mut self, a: i64, b: i64) {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        if b - a >= 2 {
            self.segments.push((a + 1, b - 1));
        }
    }

    pub fn add_protected(&mut self, lo: i64, hi: i64) {
        if lo <= hi {
            self.segments.push((lo, hi));
        }
    }

    /// Maximal runs of gap columns as `(first column, run length)`, ascending.
    pub fn gap_runs(&self) -> Vec<(i64, i64)> {
        let (Some(lo), Some(hi)) = (self.lo, self.hi) else {
            return Vec::new();
        };
        let mut segs = self.segments.clone();
        segs.sort_unstable();
        let mut runs = Vec::new();
        let mut reach = lo - 1;
        for (a, b) in segs {
            if a > reach + 1 && reach < hi {
                let end = (a - 1).min(hi);
                if end > reach {
                    runs.push((reach + 1, end - reach));
                }
            }
            reach = reach.max(b);
        }
        runs.retain(|&(s, _)| s > lo && s < hi);
        runs
    }

    pub fn gaps(&self) -> Vec<i64> {
        self.gap_runs()
            .into_iter()
            .flat_map(|(s, len)| s..s + len)
            .collect()
    }

    pub fn is_compact(&self) -> bool {
        self.gap_runs().is_empty()
    }
}

/// Shift that closes all gap runs: every column right of a run moves left by
/// the run length.
pub(crate) fn closing_shift(runs: &[(i64, i64)], x: i64) -> i64 {
    runs.iter()
        .take_while(|&&(s, _)| s < x)
        .map(|&(_, len)| len)
        .sum()
}

/// All gap columns of `d`, ascending. Empty exactly when `d` is compact.
pub fn find_gaps(g: &LevelGraph, d: &Drawing) -> Vec<i64> {
    Coverage::of_drawing(g, d).gaps()
}

pub fn is_compact(g: &LevelGraph, d: &Drawing) -> bool {
    Coverage::of_drawing(g, d).is_compact()
}

/// Removes every gap by shifting everything right of it to the left.
///
/// No edge spans a gap, so slopes are unchanged; the minimum x stays put.
pub fn remove_gaps(g: &LevelGraph, d: &Drawing) -> Drawing {
    remove_gaps_except(g, d, None)
}

/// Like [`remove_gaps`] but keeps gap columns inside `protected`
/// (an inclusive column range).
pub fn remove_gaps_except(g: &LevelGraph, d: &Drawing, protected: Option<(i64, i64)>) -> Drawing {
    let mut cov = Coverage::of_drawing(g, d);
    if let Some((lo, hi)) = protected {
        cov.add_protected(lo, hi);
    }
    let runs = cov.gap_runs();
    Drawing::new(
        d.coords()
            .iter()
            .map(|&x| x - closing_shift(&runs, x))
            .collect(),
    )
}

/// Checks that `d` is an embedding-preserving straight-line level-planar grid
/// drawing of `g` whose slopes all lie in `0..=λ-1`.
pub fn check_lambda_drawing(g: &LevelGraph, d: &Drawing, slopes: Slopes) -> ValidationReport {
    let mut report = ValidationReport::new();
    if d.len() != g.vertex_count() {
        report.push(
            ViolationCode::MissingCoordinate,
            format!(
                "drawing has {} coordinates for {} vertices",
                d.len(),
                g.vertex_count()
            ),
            vec![],
        );
        return report;
    }

    for level in 1..=g.levels() {
        for pair in g.order(level).windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let (xa, xb) = (d.x(a), d.x(b));
            if xa == xb {
                report.push(
                    ViolationCode::CoordinateCollision,
                    format!(
                        "{} and {} share x = {xa} on level {level}",
                        g.name(a),
                        g.name(b)
                    ),
                    vec![g.name(a).to_string(), g.name(b).to_string()],
                );
            } else if xa > xb {
                report.push(
                    ViolationCode::OrderMismatch,
                    format!(
                        "{} is left of {} in the embedding but drawn at {xa} > {xb}",
                        g.name(a),
                        g.name(b)
                    ),
                    vec![g.name(a).to_string(), g.name(b).to_string()],
                );
            }
        }
    }

    let max_slope = slopes.max_slope();
    for &(u, v) in g.edges() {
        let len = g.edge_length((u, v));
        let dx = d.x(v) - d.x(u);
        let ok = len > 0 && dx % len == 0 && (0..=max_slope).contains(&(dx / len));
        if !ok {
            report.push(
                ViolationCode::SlopeOutOfRange,
                format!(
                    "edge {} has slope {dx}/{len}, allowed 0..={max_slope}",
                    g.edge_label((u, v))
                ),
                vec![g.edge_label((u, v))],
            );
        }
    }

    check_crossings(g, d, &mut report);
    check_edges_through_vertices(g, d, &mut report);
    report
}

/// Position of edge `e` at level `y`, scaled by the edge length: returns
/// `(numerator, len)` with x = numerator / len.
fn position_at(g: &LevelGraph, d: &Drawing, (u, v): (VertexId, VertexId), y: i64) -> (i128, i128) {
    let len = g.edge_length((u, v)) as i128;
    let lu = i128::from(g.level(u));
    let num = i128::from(d.x(u)) * len
        + (i128::from(d.x(v)) - i128::from(d.x(u))) * (i128::from(y) - lu);
    (num, len)
}

fn check_crossings(g: &LevelGraph, d: &Drawing, report: &mut ValidationReport) {
    let edges = g.edges();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (e, f) = (edges[i], edges[j]);
            if g.edge_length(e) < 1 || g.edge_length(f) < 1 {
                continue;
            }
            let lo = i64::from(g.level(e.0).max(g.level(f.0)));
            let hi = i64::from(g.level(e.1).min(g.level(f.1)));
            if lo > hi {
                continue;
            }
            let diff = |y: i64| {
                let (ne, le) = position_at(g, d, e, y);
                let (nf, lf) = position_at(g, d, f, y);
                (ne * lf - nf * le).signum()
            };
            let shared_at = |y: i64| {
                let end_e = if i64::from(g.level(e.0)) == y {
                    Some(e.0)
                } else if i64::from(g.level(e.1)) == y {
                    Some(e.1)
                } else {
                    None
                };
                let end_f = if i64::from(g.level(f.0)) == y {
                    Some(f.0)
                } else if i64::from(g.level(f.1)) == y {
                    Some(f.1)
                } else {
                    None
                };
                end_e.is_some() && end_e == end_f
            };
            let (a, b) = (diff(lo), diff(hi));
            let crossing = if a * b < 0 {
                true
            } else if a == 0 && b == 0 {
                lo < hi || !shared_at(lo)
            } else if a == 0 {
                !shared_at(lo)
            } else if b == 0 {
                !shared_at(hi)
            } else {
                false
            };
            if crossing {
                report.push(
                    ViolationCode::EdgeCrossing,
                    format!(
                        "edges {} and {} intersect",
                        g.edge_label(e),
                        g.edge_label(f)
                    ),
                    vec![g.edge_label(e), g.edge_label(f)],
                );
            }
        }
    }
}

fn check_edges_through_vertices(g: &LevelGraph, d: &Drawing, report: &mut ValidationReport) {
    for &e in g.edges() {
        let (u, v) = e;
        for y in g.level(u) + 1..g.level(v) {
            let (num, len) = position_at(g, d, e, i64::from(y));
            if num % len != 0 {
                continue;
            }
            let x = (num / len) as i64;
            for &w in g.order(y) {
                if d.x(w) == x {
                    report.push(
                        ViolationCode::EdgeThroughVertex,
                        format!("edge {} passes through {}", g.edge_label(e), g.name(w)),
                        vec![g.edge_label(e), g.name(w).to_string()],
                    );
                }
            }
        }
    }
}
