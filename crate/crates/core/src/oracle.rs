//! Exhaustive enumeration of compact λ-drawings of small instances.
//!
//! This module is ground truth for testing. It uses only the graph and
//! drawing types and [`check_lambda_drawing`]; it never touches the flow or
//! distance models.
//!
//! The search assigns integer columns vertex by vertex (levels bottom-up,
//! left to right within a level), pruning on order, slope range, and on
//! the number of columns still coverable. Completed assignments must start
//! at column 0, leave no gap, and pass [`check_lambda_drawing`].

use std::collections::BTreeMap;

use crate::drawing::{check_lambda_drawing, Drawing};
use crate::error::{Error, Result};
use crate::extend::{PartialInstance, SimultaneousInstance};
use crate::graph::{validate, LevelGraph, VertexId};
use crate::slopes::Slopes;

pub const DEFAULT_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    /// Compact drawings with minimum x zero, in lexicographic order.
    pub drawings: Vec<Drawing>,
    pub count: usize,
    /// Largest column the search considered.
    pub search_bound: i64,
}

/// Enumerator with a size guard on the number of vertices per graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub max_n: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            max_n: DEFAULT_MAX_N,
        }
    }
}

pub fn enumerate_drawings(g: &LevelGraph, slopes: Slopes) -> Result<EnumerationResult> {
    Oracle::default().enumerate(g, slopes)
}

pub fn oracle_extendable(inst: &PartialInstance, slopes: Slopes) -> Result<Vec<Drawing>> {
    Oracle::default().extendable(inst, slopes)
}

pub fn oracle_simultaneous(
    inst: &SimultaneousInstance,
    slopes: Slopes,
) -> Result<Vec<(Drawing, Drawing)>> {
    Oracle::default().simultaneous(inst, slopes)
}

impl Oracle {
    pub fn new(max_n: usize) -> Self {
        Oracle { max_n }
    }

    fn guard(&self, g: &LevelGraph) -> Result<()> {
        if g.vertex_count() > self.max_n {
            return Err(Error::SizeGuard {
                n: g.vertex_count(),
                max: self.max_n,
            });
        }
        let report = validate(g, true);
        if !report.ok() {
            return Err(Error::InvalidGraph(report));
        }
        Ok(())
    }

    /// All compact λ-drawings of `g` with minimum x zero.
    pub fn enumerate(&self, g: &LevelGraph, slopes: Slopes) -> Result<EnumerationResult> {
        self.guard(g)?;
        let u = Universe::single(g, slopes, None);
        let search_bound = u.window;
        let drawings: Vec<Drawing> = u.search().into_iter().map(Drawing::new).collect();
        Ok(EnumerationResult {
            count: drawings.len(),
            drawings,
            search_bound,
        })
    }

    /// Drawings of the graph that restrict to the fixed coordinates up to
    /// one translation, with no gap outside the fixed span. Minimum x zero.
    pub fn extendable(&self, inst: &PartialInstance, slopes: Slopes) -> Result<Vec<Drawing>> {
        self.guard(&inst.graph)?;
        inst.check(slopes)?;
        let fixed: Vec<(usize, i64)> = inst.fixed.iter().map(|(v, &x)| (v.index(), x)).collect();
        let u = Universe::single(&inst.graph, slopes, Some(fixed));
        Ok(u.search().into_iter().map(Drawing::new).collect())
    }

    /// Pairs of drawings that agree on every shared vertex and leave no
    /// column uncovered by both together. Joint minimum x zero.
    pub fn simultaneous(
        &self,
        inst: &SimultaneousInstance,
        slopes: Slopes,
    ) -> Result<Vec<(Drawing, Drawing)>> {
        self.guard(&inst.first)?;
        self.guard(&inst.second)?;
        inst.check()?;
        let n1 = inst.first.vertex_count();
        let shared: BTreeMap<VertexId, VertexId> =
            inst.shared.iter().map(|&(a, b)| (b, a)).collect();
        let mut map2 = Vec::with_capacity(inst.second.vertex_count());
        let mut next = n1;
        for v in inst.second.vertices() {
            match shared.get(&v) {
                Some(a) => map2.push(a.index()),
                None => {
                    map2.push(next);
                    next += 1;
                }
            }
        }
        let map1: Vec<usize> = (0..n1).collect();
        let u = Universe::new(
            vec![(&inst.first, map1), (&inst.second, map2.clone())],
            next,
            slopes,
            None,
        );
        Ok(u.search()
            .into_iter()
            .map(|x| {
                let d1 = Drawing::new(x[..n1].to_vec());
                let d2 = Drawing::new(map2.iter().map(|&i| x[i]).collect());
                (d1, d2)
            })
            .collect())
    }
}

/// Variables shared by one or more graphs, each graph mapping its vertices
/// to variables.
struct Universe<'a> {
    graphs: Vec<(&'a LevelGraph, Vec<usize>)>,
    n: usize,
    slopes: Slopes,
    window: i64,
    /// Variable order of the search.
    sequence: Vec<usize>,
    left_of: Vec<Vec<usize>>,
    right_of: Vec<Vec<usize>>,
    /// Per variable: `(edge index, other endpoint, variable is the tail)`.
    incident: Vec<Vec<(usize, usize, bool)>>,
    edge_count: usize,
    /// `(variable, coordinate)`; only offsets between them matter.
    fixed: Vec<(usize, i64)>,
    fixed_of: Vec<Option<i64>>,
    /// Columns spanned by the fixed coordinates.
    span: i64,
}

impl<'a> Universe<'a> {
    fn single(g: &'a LevelGraph, slopes: Slopes, fixed: Option<Vec<(usize, i64)>>) -> Self {
        Universe::new(
            vec![(g, (0..g.vertex_count()).collect())],
            g.vertex_count(),
            slopes,
            fixed,
        )
    }

    fn new(
        graphs: Vec<(&'a LevelGraph, Vec<usize>)>,
        n: usize,
        slopes: Slopes,
        fixed: Option<Vec<(usize, i64)>>,
    ) -> Self {
        let fixed = fixed.unwrap_or_default();
        let mut level = vec![0u32; n];
        let mut left_of = vec![Vec::new(); n];
        let mut right_of = vec![Vec::new(); n];
        let mut incident = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (g, map) in &graphs {
            for v in g.vertices() {
                level[map[v.index()]] = g.level(v);
            }
            for l in 1..=g.levels() {
                for pair in g.order(l).windows(2) {
                    let (a, b) = (map[pair[0].index()], map[pair[1].index()]);
                    left_of[b].push(a);
                    right_of[a].push(b);
                }
            }
            for &(a, b) in g.edges() {
                let (a, b) = (map[a.index()], map[b.index()]);
                incident[a].push((edge_count, b, true));
                incident[b].push((edge_count, a, false));
                edge_count += 1;
            }
        }

        // Levels ascending; within a level, a topological order of the
        // left-of relation with the smallest variable first.
        let mut sequence = Vec::with_capacity(n);
        let max_level = level.iter().copied().max().unwrap_or(0);
        for l in 1..=max_level {
            let members: Vec<usize> = (0..n).filter(|&v| level[v] == l).collect();
            let mut indeg: BTreeMap<usize, usize> =
                members.iter().map(|&v| (v, left_of[v].len())).collect();
            let mut done = vec![false; n];
            while let Some(v) = indeg
                .iter()
                .find(|&(&v, &d)| d == 0 && !done[v])
                .map(|(&v, _)| v)
            {
                done[v] = true;
                sequence.push(v);
                indeg.remove(&v);
                for &r in &right_of[v] {
                    if let Some(d) = indeg.get_mut(&r) {
                        *d -= 1;
                    }
                }
            }
            // Inconsistent orders leave a cycle; its members still get
            // searched and are rejected by the order bounds.
            sequence.extend(indeg.keys().copied());
        }

        let extra = (slopes.get() as i64 - 2).max(0);
        let span = match (
            fixed.iter().map(|f| f.1).min(),
            fixed.iter().map(|f| f.1).max(),
        ) {
            (Some(lo), Some(hi)) => hi - lo + 1,
            _ => 0,
        };
        let coverable = n as i64 + extra * edge_count as i64 + span;
        let mut window = coverable - 1;
        if fixed.is_empty() {
            window = window.min(slopes.compact_width_bound(n));
        }

        let mut fixed_of = vec![None; n];
        for &(v, x) in &fixed {
            fixed_of[v] = Some(x);
        }
        Universe {
            graphs,
            n,
            slopes,
            window: window.max(0),
            sequence,
            left_of,
            right_of,
            incident,
            edge_count,
            fixed,
            fixed_of,
            span,
        }
    }

    fn search(&self) -> Vec<Vec<i64>> {
        let mut st = State {
            x: vec![None; self.n],
            cover: vec![0; self.window as usize + 1],
            open_edges: self.edge_count,
            anchor: None,
            max_placed: -1,
            out: Vec::new(),
        };
        self.dfs(0, &mut st);
        let mut out = st.out;
        out.sort();
        out
    }

    fn bounds(&self, v: usize, st: &State) -> (i64, i64) {
        let mut lo = 0;
        let mut hi = self.window;
        for &a in &self.left_of[v] {
            if let Some(xa) = st.x[a] {
                lo = lo.max(xa + 1);
            }
        }
        for &b in &self.right_of[v] {
            if let Some(xb) = st.x[b] {
                hi = hi.min(xb - 1);
            }
        }
        let top = self.slopes.max_slope();
        for &(_, w, tail) in &self.incident[v] {
            if let Some(xw) = st.x[w] {
                if tail {
                    lo = lo.max(xw - top);
                    hi = hi.min(xw);
                } else {
                    lo = lo.max(xw);
                    hi = hi.min(xw + top);
                }
            }
        }
        if let (Some(p), Some((a, pa))) = (self.fixed_of[v], st.anchor) {
            let at = st.x[a].expect("anchor placed") + p - pa;
            lo = lo.max(at);
            hi = hi.min(at);
        }
        (lo, hi)
    }

    fn dfs(&self, depth: usize, st: &mut State) {
        if depth == self.n {
            self.leaf(st);
            return;
        }
        let v = self.sequence[depth];
        let (lo, hi) = self.bounds(v, st);
        for xv in lo..=hi {
            let mut log = Vec::new();
            let first_fixed = self.fixed_of[v].is_some() && st.anchor.is_none();
            if first_fixed {
                let p = self.fixed_of[v].unwrap();
                let lo_f = self.fixed.iter().map(|f| f.1).min().unwrap();
                let hi_f = self.fixed.iter().map(|f| f.1).max().unwrap();
                let (a, b) = (xv + lo_f - p, xv + hi_f - p);
                if a < 0 || b > self.window {
                    continue;
                }
                st.anchor = Some((v, p));
                for c in a..=b {
                    log.push(c);
                }
            }
            let saved_max = st.max_placed;
            st.x[v] = Some(xv);
            st.max_placed = st.max_placed.max(xv);
            log.push(xv);
            let mut closed = 0;
            for &(_, w, _) in &self.incident[v] {
                if let Some(xw) = st.x[w] {
                    closed += 1;
                    let (a, b) = if xv <= xw { (xv, xw) } else { (xw, xv) };
                    log.extend(a + 1..b);
                }
            }
            for &c in &log {
                st.cover[c as usize] += 1;
            }
            st.open_edges -= closed;

            if self.coverable(depth + 1, st) {
                self.dfs(depth + 1, st);
            }

            st.open_edges += closed;
            for &c in &log {
                st.cover[c as usize] -= 1;
            }
            st.max_placed = saved_max;
            st.x[v] = None;
            if first_fixed {
                st.anchor = None;
            }
        }
    }

    /// Whether the uncovered columns up to the rightmost placed vertex can
    /// still be covered by what remains to be placed.
    fn coverable(&self, placed: usize, st: &State) -> bool {
        let uncovered = (0..=st.max_placed)
            .filter(|&c| st.cover[c as usize] == 0)
            .count() as i64;
        if uncovered == 0 {
            return true;
        }
        let extra = (self.slopes.get() as i64 - 2).max(0);
        let protected = if st.anchor.is_none() { self.span } else { 0 };
        (self.n - placed) as i64 + extra * st.open_edges as i64 + protected >= uncovered
    }

    fn leaf(&self, st: &mut State) {
        let x: Vec<i64> =
            st.x.iter()
                .map(|v| v.expect("complete assignment"))
                .collect();
        if x.iter().min() != Some(&0) {
            return;
        }
        if (0..=st.max_placed).any(|c| st.cover[c as usize] == 0) {
            return;
        }
        for (g, map) in &self.graphs {
            let d = Drawing::new(map.iter().map(|&i| x[i]).collect());
            if !check_lambda_drawing(g, &d, self.slopes).ok() {
                return;
            }
        }
        st.out.push(x);
    }
}

struct State {
    x: Vec<Option<i64>>,
    cover: Vec<u32>,
    open_edges: usize,
    /// First placed fixed variable and its fixed coordinate.
    anchor: Option<(usize, i64)>,
    max_placed: i64,
    out: Vec<Vec<i64>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(l: u32) -> Slopes {
        Slopes::new(l).unwrap()
    }

    fn diamond() -> LevelGraph {
        let mut b = LevelGraph::builder(3);
        let u = b.vertex("u", 1);
        let a = b.vertex("a", 2);
        let c = b.vertex("b", 2);
        let w = b.vertex("w", 3);
        b.edge(u, a).edge(u, c).edge(a, w).edge(c, w);
        b.build()
    }

    #[test]
    fn diamond_has_one_drawing() {
        let r = enumerate_drawings(&diamond(), s(2)).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.drawings[0].coords(), &[0, 0, 1, 1]);
    }

    #[test]
    fn single_edge_two_drawings() {
        let mut b = LevelGraph::builder(2);
        let u = b.vertex("u", 1);
        let v = b.vertex("v", 2);
        b.edge(u, v);
        let r = enumerate_drawings(&b.build(), s(2)).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.drawings[0].coords(), &[0, 0]);
        assert_eq!(r.drawings[1].coords(), &[0, 1]);
    }

    #[test]
    fn fan_has_none() {
        let mut b = LevelGraph::builder(2);
        let u = b.vertex("u", 1);
        for i in 0..3 {
            let v = b.vertex(format!("v{i}"), 2);
            b.edge(u, v);
        }
        assert_eq!(enumerate_drawings(&b.build(), s(2)).unwrap().count, 0);
    }

    #[test]
    fn isolated_vertices_on_two_levels() {
        // Compact drawings of p (level 1) and q (level 2): columns {0} or {0,1}.
        let mut b = LevelGraph::builder(2);
        b.vertex("p", 1);
        b.vertex("q", 2);
        let r = enumerate_drawings(&b.build(), s(2)).unwrap();
        let got: Vec<&[i64]> = r.drawings.iter().map(|d| d.coords()).collect();
        assert_eq!(got, vec![&[0, 0][..], &[0, 1], &[1, 0]]);
    }

    #[test]
    fn size_guard() {
        let mut b = LevelGraph::builder(1);
        for i in 0..3 {
            b.vertex(format!("v{i}"), 1);
        }
        let err = Oracle::new(2).enumerate(&b.build(), s(2)).unwrap_err();
        assert!(matches!(err, Error::SizeGuard { n: 3, max: 2 }));
    }

    #[test]
    fn extendable_filters() {
        let g = diamond();
        let mut inst = PartialInstance::new(g.clone());
        inst.fix(g.vertex("a").unwrap(), 0)
            .fix(g.vertex("b").unwrap(), 3);
        assert!(oracle_extendable(&inst, s(2)).unwrap().is_empty());
        let mut inst = PartialInstance::new(g.clone());
        inst.fix(g.vertex("a").unwrap(), 7)
            .fix(g.vertex("b").unwrap(), 8);
        assert_eq!(oracle_extendable(&inst, s(2)).unwrap().len(), 1);
        let empty = PartialInstance::new(g.clone());
        assert_eq!(oracle_extendable(&empty, s(2)).unwrap().len(), 1);
    }

    #[test]
    fn extendable_keeps_fixed_gap() {
        let mut b = LevelGraph::builder(1);
        let p = b.vertex("p", 1);
        let q = b.vertex("q", 1);
        let mut inst = PartialInstance::new(b.build());
        inst.fix(p, 0).fix(q, 4);
        let got = oracle_extendable(&inst, s(2)).unwrap();
        assert_eq!(got, vec![Drawing::new(vec![0, 4])]);
    }

    #[test]
    fn simultaneous_identical_is_diagonal() {
        let mut b = LevelGraph::builder(2);
        let u = b.vertex("u", 1);
        let v = b.vertex("v", 2);
        b.edge(u, v);
        let g = b.build();
        let inst = SimultaneousInstance::by_names(g.clone(), g, &["u", "v"]).unwrap();
        let pairs = oracle_simultaneous(&inst, s(2)).unwrap();
        assert_eq!(pairs.len(), 2);
        assert!(pairs.iter().all(|(a, b)| a == b));
    }

    #[test]
    fn simultaneous_conflict_is_empty() {
        let mut b1 = LevelGraph::builder(2);
        let a = b1.vertex("a", 1);
        let b = b1.vertex("b", 2);
        let c = b1.vertex("c", 2);
        b1.edge(a, b).edge(a, c);
        let mut b2 = LevelGraph::builder(2);
        let a2 = b2.vertex("a", 1);
        let d = b2.vertex("d", 2);
        let b_ = b2.vertex("b", 2);
        b2.edge(a2, d).edge(a2, b_);
        let inst = SimultaneousInstance::by_names(b1.build(), b2.build(), &["a", "b"]).unwrap();
        assert!(oracle_simultaneous(&inst, s(2)).unwrap().is_empty());
    }
}
