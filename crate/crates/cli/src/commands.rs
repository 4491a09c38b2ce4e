//! The subcommands as pure functions from input text to output text.

use std::fmt::Write as _;

use levdraw_core::{
    build_distance_graph, build_flow_network, dump_distance_graph, dump_flow_network,
    extend_partial, rightmost_drawing, simultaneous, subdivide_long_edges, AugmentedGraph, Drawing,
    Error, LevelGraph, NegativeCycleWitness, Oracle, Side, Slopes,
};
use thiserror::Error as ThisError;

use crate::format::{
    emit_drawing, emit_instance, emit_labeled_drawing, parse_instance, Diagnostic, Instance,
};
use crate::svg::{render_svg, Style};

/// Overrides the oracle's vertex limit when `--max-n` is absent.
pub const ORACLE_MAX_N_VAR: &str = "LEVDRAW_ORACLE_MAX_N";

#[derive(Debug, ThisError)]
pub enum Failure {
    /// No drawing exists; the payload is the printable certificate.
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    Invalid(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Infeasible(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

impl From<Diagnostic> for Failure {
    fn from(d: Diagnostic) -> Self {
        Failure::Invalid(d.to_string())
    }
}

/// Maps a core error, naming witness vertices after `names`.
fn failure(e: Error, names: impl Fn(Option<Side>) -> LevelGraph) -> Failure {
    match e {
        Error::Infeasible(w) => Failure::Infeasible(witness_text(&w, &names(w.side))),
        Error::IterationBound { .. } | Error::Unreachable(_) => Failure::Internal(e.to_string()),
        e => Failure::Invalid(e.to_string()),
    }
}

fn witness_text(w: &NegativeCycleWitness, g: &LevelGraph) -> String {
    let mut out = String::from("infeasible: negative cycle in the distance graph");
    if let Some(side) = w.side {
        let _ = write!(out, " of the {} graph", side.as_str());
    }
    out.push('\n');
    out.push_str(&w.describe(g));
    out
}

fn slopes(lambda: u32) -> Result<Slopes, Failure> {
    Slopes::new(lambda).map_err(|e| Failure::Invalid(e.to_string()))
}

fn single_graph(inst: Instance, what: &str) -> Result<LevelGraph, Failure> {
    match inst {
        Instance::Graph(g) => Ok(g),
        Instance::Partial(p) => Ok(p.graph),
        Instance::Simultaneous(_) => Err(Failure::Invalid(format!("{what} needs a single graph"))),
    }
}

/// Parses and checks an instance; with `lambda`, partial drawings are also
/// checked against the slope set.
pub fn validate(text: &str, lambda: Option<u32>) -> Result<String, Failure> {
    let inst = parse_instance(text)?;
    let describe = |g: &LevelGraph| {
        format!(
            "levels {} vertices {} edges {} {}",
            g.levels(),
            g.vertex_count(),
            g.edge_count(),
            if g.is_proper() {
                "proper"
            } else {
                "not-proper"
            }
        )
    };
    let mut out = format!("valid {}\n", inst.kind());
    match &inst {
        Instance::Graph(g) => {
            let _ = writeln!(out, "{}", describe(g));
        }
        Instance::Partial(p) => {
            let _ = writeln!(out, "{}", describe(&p.graph));
            let _ = writeln!(
                out,
                "fixed {} fixed-edges {}",
                p.fixed.len(),
                p.h_edges.len()
            );
            if let Some(l) = lambda {
                p.check(slopes(l)?)
                    .map_err(|e| Failure::Invalid(e.to_string()))?;
            }
        }
        Instance::Simultaneous(s) => {
            let _ = writeln!(out, "first {}", describe(&s.first));
            let _ = writeln!(out, "second {}", describe(&s.second));
            let _ = writeln!(out, "shared {}", s.shared.len());
        }
    }
    Ok(out)
}

/// The canonical form of an instance document.
pub fn canonical(text: &str) -> Result<String, Failure> {
    Ok(emit_instance(&parse_instance(text)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawn {
    pub coords: String,
    pub svg: Option<String>,
}

/// Compact drawing of a graph. With `subdivide`, long edges are first
/// replaced by paths and the output includes the subdivision vertices.
pub fn draw(
    text: &str,
    lambda: u32,
    subdivide: bool,
    svg: Option<&Style>,
) -> Result<Drawn, Failure> {
    let s = slopes(lambda)?;
    let mut g = single_graph(parse_instance(text)?, "draw")?;
    if subdivide {
        g = subdivide_long_edges(&g)
            .map_err(|e| Failure::Invalid(e.to_string()))?
            .0;
    }
    let d = rightmost_drawing(&g, s).map_err(|e| failure(e, |_| AugmentedGraph::new(&g).graph))?;
    finish(&g, &d, s, svg)
}

fn finish(g: &LevelGraph, d: &Drawing, s: Slopes, svg: Option<&Style>) -> Result<Drawn, Failure> {
    let svg = svg
        .map(|style| render_svg(g, d, s, style))
        .transpose()
        .map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(Drawn {
        coords: emit_drawing(g, d),
        svg,
    })
}

pub fn extend(text: &str, lambda: u32, svg: Option<&Style>) -> Result<Drawn, Failure> {
    let s = slopes(lambda)?;
    let Instance::Partial(inst) = parse_instance(text)? else {
        return Err(Failure::Invalid("extend needs a partial instance".into()));
    };
    let d = extend_partial(&inst, s)
        .map_err(|e| failure(e, |_| AugmentedGraph::new(&inst.graph).graph))?;
    finish(&inst.graph, &d, s, svg)
}

/// Both drawings as labelled blocks, preceded by the iteration count and,
/// with `trace`, one line per constraint added.
pub fn simultaneous_drawings(text: &str, lambda: u32, trace: bool) -> Result<String, Failure> {
    let s = slopes(lambda)?;
    let Instance::Simultaneous(inst) = parse_instance(text)? else {
        return Err(Failure::Invalid("simultaneous needs two graphs".into()));
    };
    let k = inst.first.levels().max(inst.second.levels());
    let r = simultaneous(&inst, s).map_err(|e| {
        failure(e, |side| match side {
            Some(Side::Second) => AugmentedGraph::with_levels(&inst.second, k).graph,
            _ => AugmentedGraph::with_levels(&inst.first, k).graph,
        })
    })?;
    let mut out = format!("iterations {} bound {}\n", r.iterations, r.bound);
    if trace {
        for t in &r.trace {
            let _ = writeln!(
                out,
                "step {} {} {} limit {} from {} to {}",
                t.iteration,
                t.side.as_str(),
                t.vertex,
                t.limit,
                t.old,
                t.new
            );
        }
    }
    out.push_str(&emit_labeled_drawing(&inst.first, &r.first, Some("first")));
    out.push_str(&emit_labeled_drawing(
        &inst.second,
        &r.second,
        Some("second"),
    ));
    Ok(out)
}

/// The oracle limit: `--max-n`, else the environment variable, else the
/// library default.
pub fn oracle_limit(flag: Option<usize>, env: Option<&str>) -> Result<usize, Failure> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match env {
        Some(v) => v.trim().parse().map_err(|_| {
            Failure::Invalid(format!(
                "{ORACLE_MAX_N_VAR} must be a vertex count, got `{v}`"
            ))
        }),
        None => Ok(Oracle::default().max_n),
    }
}

/// Every compact drawing with minimum x zero, by brute force. Partial and
/// simultaneous instances list their extensions and drawing pairs.
pub fn enumerate(text: &str, lambda: u32, max_n: usize) -> Result<String, Failure> {
    let s = slopes(lambda)?;
    let oracle = Oracle::new(max_n);
    let invalid = |e: Error| Failure::Invalid(e.to_string());
    let mut out = String::new();
    match parse_instance(text)? {
        Instance::Graph(g) => {
            let r = oracle.enumerate(&g, s).map_err(invalid)?;
            let _ = writeln!(out, "count {} search-bound {}", r.count, r.search_bound);
            for (i, d) in r.drawings.iter().enumerate() {
                out.push_str(&emit_labeled_drawing(&g, d, Some(&(i + 1).to_string())));
            }
        }
        Instance::Partial(p) => {
            let ds = oracle.extendable(&p, s).map_err(invalid)?;
            let _ = writeln!(out, "count {}", ds.len());
            for (i, d) in ds.iter().enumerate() {
                out.push_str(&emit_labeled_drawing(
                    &p.graph,
                    d,
                    Some(&(i + 1).to_string()),
                ));
            }
        }
        Instance::Simultaneous(inst) => {
            let pairs = oracle.simultaneous(&inst, s).map_err(invalid)?;
            let _ = writeln!(out, "count {}", pairs.len());
            for (i, (a, b)) in pairs.iter().enumerate() {
                out.push_str(&emit_labeled_drawing(
                    &inst.first,
                    a,
                    Some(&format!("{} first", i + 1)),
                ));
                out.push_str(&emit_labeled_drawing(
                    &inst.second,
                    b,
                    Some(&format!("{} second", i + 1)),
                ));
            }
        }
    }
    Ok(out)
}

pub fn dump_flow(text: &str, lambda: u32) -> Result<String, Failure> {
    let s = slopes(lambda)?;
    let g = single_graph(parse_instance(text)?, "dump-flow")?;
    let aug = AugmentedGraph::new(&g);
    let net = build_flow_network(&aug, s).map_err(|e| Failure::Invalid(e.to_string()))?;
    Ok(dump_flow_network(&aug, &net))
}

pub fn dump_distance(text: &str, lambda: u32) -> Result<String, Failure> {
    let s = slopes(lambda)?;
    let g = single_graph(parse_instance(text)?, "dump-distance")?;
    let aug = AugmentedGraph::new(&g);
    let d = build_distance_graph(&aug, s).map_err(|e| Failure::Invalid(e.to_string()))?;
    Ok(dump_distance_graph(&aug.graph, &d))
}
