//! Seeded generators of small embedded proper level graphs, plus a curated
//! set of named instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::extend::{PartialInstance, SimultaneousInstance};
use crate::graph::{LevelGraph, VertexId};
use crate::slopes::Slopes;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub max_n: usize,
    pub max_levels: u32,
    /// Probability of keeping each candidate edge.
    pub density: f64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            max_n: 8,
            max_levels: 4,
            density: 0.6,
        }
    }
}

/// Vertex names `a`, `b`, …, then `v26`, `v27`, ….
pub fn vertex_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("v{i}")
    }
}

/// A random embedded proper level graph.
///
/// Between two consecutive levels the candidate edges form a staircase from
/// the leftmost pair to the rightmost pair; every subset of a staircase is
/// crossing-free, and every crossing-free edge set lies on one.
pub fn random_graph<R: Rng>(rng: &mut R, p: Params) -> LevelGraph {
    let k = rng.gen_range(1..=p.max_levels.max(1));
    let n = rng.gen_range(1..=p.max_n.max(1));
    let mut per_level = vec![0usize; k as usize];
    for _ in 0..n {
        per_level[rng.gen_range(0..k as usize)] += 1;
    }
    let mut b = LevelGraph::builder(k);
    let mut ids: Vec<Vec<VertexId>> = Vec::new();
    let mut next = 0;
    for (l, &count) in per_level.iter().enumerate() {
        let level: Vec<VertexId> = (0..count)
            .map(|_| {
                next += 1;
                b.vertex(vertex_name(next - 1), l as u32 + 1)
            })
            .collect();
        ids.push(level);
    }
    for l in 1..k as usize {
        let (low, high) = (&ids[l - 1], &ids[l]);
        if low.is_empty() || high.is_empty() {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        loop {
            if rng.gen_bool(p.density) {
                b.edge(low[i], high[j]);
            }
            if i + 1 == low.len() && j + 1 == high.len() {
                break;
            }
            let step_low = if i + 1 == low.len() {
                false
            } else if j + 1 == high.len() {
                true
            } else {
                rng.gen_bool(0.5)
            };
            if step_low {
                i += 1;
            } else {
                j += 1;
            }
        }
    }
    b.build()
}

/// Star with `d` children one level up.
pub fn out_fan(d: usize) -> LevelGraph {
    let mut b = LevelGraph::builder(2);
    let u = b.vertex("u", 1);
    for i in 0..d {
        let v = b.vertex(format!("v{i}"), 2);
        b.edge(u, v);
    }
    b.build()
}

/// Star with `d` parents one level down.
pub fn in_fan(d: usize) -> LevelGraph {
    let mut b = LevelGraph::builder(2);
    let sources: Vec<VertexId> = (0..d).map(|i| b.vertex(format!("v{i}"), 1)).collect();
    let w = b.vertex("w", 2);
    for s in sources {
        b.edge(s, w);
    }
    b.build()
}

pub fn diamond() -> LevelGraph {
    let mut b = LevelGraph::builder(3);
    let u = b.vertex("u", 1);
    let a = b.vertex("a", 2);
    let c = b.vertex("b", 2);
    let w = b.vertex("w", 3);
    b.edge(u, a).edge(u, c).edge(a, w).edge(c, w);
    b.build()
}

/// Named small graphs covering the interesting shapes.
pub fn curated() -> Vec<(&'static str, LevelGraph)> {
    let mut out = vec![("diamond", diamond())];
    for d in 1..=4 {
        out.push((
            ["out-fan-1", "out-fan-2", "out-fan-3", "out-fan-4"][d - 1],
            out_fan(d),
        ));
        out.push((
            ["in-fan-1", "in-fan-2", "in-fan-3", "in-fan-4"][d - 1],
            in_fan(d),
        ));
    }

    let mut b = LevelGraph::builder(2);
    let u = b.vertex("u", 1);
    let v = b.vertex("v", 2);
    b.edge(u, v);
    out.push(("single-edge", b.build()));

    let mut b = LevelGraph::builder(1);
    b.vertex("v", 1);
    out.push(("single-vertex", b.build()));

    let mut b = LevelGraph::builder(4);
    let p: Vec<VertexId> = (1..=4).map(|l| b.vertex(format!("p{l}"), l)).collect();
    for w in p.windows(2) {
        b.edge(w[0], w[1]);
    }
    out.push(("path-4", b.build()));

    // Two edges side by side with nothing in between.
    let mut b = LevelGraph::builder(2);
    let a = b.vertex("a", 1);
    let c = b.vertex("c", 1);
    let bb = b.vertex("b", 2);
    let d = b.vertex("d", 2);
    b.edge(a, bb).edge(c, d);
    out.push(("two-edges", b.build()));

    // Components on disjoint levels.
    let mut b = LevelGraph::builder(4);
    let a = b.vertex("a", 1);
    let c = b.vertex("b", 2);
    let d = b.vertex("c", 3);
    let e = b.vertex("d", 4);
    b.edge(a, c).edge(d, e);
    out.push(("stacked-components", b.build()));

    // An isolated vertex wedged between the two branches of a V.
    let mut b = LevelGraph::builder(2);
    let l = b.vertex("l", 1);
    let r = b.vertex("r", 1);
    let t = b.vertex("t", 2);
    b.vertex("i", 2);
    let s = b.vertex("s", 2);
    b.edge(l, t).edge(r, s);
    out.push(("wedge", b.build()));

    // Two-level zigzag.
    let mut b = LevelGraph::builder(2);
    let a = b.vertex("a", 1);
    let c = b.vertex("c", 1);
    let bb = b.vertex("b", 2);
    let d = b.vertex("d", 2);
    b.edge(a, bb).edge(c, bb).edge(c, d);
    out.push(("zigzag", b.build()));

    // Width-forcing ladder.
    let mut b = LevelGraph::builder(3);
    let a = b.vertex("a", 1);
    let c = b.vertex("c", 1);
    let bb = b.vertex("b", 2);
    let d = b.vertex("d", 2);
    let e = b.vertex("e", 3);
    let f = b.vertex("f", 3);
    b.edge(a, bb).edge(c, d).edge(bb, e).edge(d, f).edge(a, d);
    out.push(("ladder", b.build()));

    // Empty middle level.
    let mut b = LevelGraph::builder(3);
    b.vertex("a", 1);
    b.vertex("b", 3);
    out.push(("empty-middle", b.build()));

    out
}

/// The drawability corpus: curated graphs for every λ in {1, 2, 3}, then
/// random graphs with n ≤ 8 and k ≤ 4 until `size` instances exist.
pub fn drawability_corpus(seed: u64, size: usize) -> Vec<(String, LevelGraph, Slopes)> {
    let mut out = Vec::new();
    for (name, g) in curated() {
        for l in 1..=3 {
            out.push((
                format!("{name}/λ{l}"),
                g.clone(),
                Slopes::new(l).expect("positive"),
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut i = 0;
    while out.len() < size {
        let g = random_graph(&mut rng, Params::default());
        let l = (i % 3) as u32 + 1;
        out.push((
            format!("random-{i}/λ{l}"),
            g,
            Slopes::new(l).expect("positive"),
        ));
        i += 1;
    }
    out
}

/// A random subset of the vertices of `g` (possibly disconnected), the edges
/// of `g` among them, and coordinates from `base` perturbed with probability
/// `perturb`.
pub fn random_partial<R: Rng>(
    rng: &mut R,
    g: &LevelGraph,
    base: &[i64],
    perturb: f64,
) -> PartialInstance {
    let mut inst = PartialInstance::new(g.clone());
    let mut vs: Vec<VertexId> = g.vertices().collect();
    vs.shuffle(rng);
    let take = rng.gen_range(0..=vs.len());
    for &v in &vs[..take] {
        inst.fix(v, base[v.index()]);
    }
    for &(u, v) in g.edges() {
        if inst.fixed.contains_key(&u) && inst.fixed.contains_key(&v) && rng.gen_bool(0.7) {
            inst.h_edge(u, v);
        }
    }
    if take > 0 && rng.gen_bool(perturb) {
        let v = vs[rng.gen_range(0..take)];
        let delta = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
        *inst.fixed.get_mut(&v).expect("fixed") += delta;
    }
    inst
}

/// Two random graphs (n ≤ `max_n` each) that share a random set of
/// vertices. The shared vertices keep their level and relative order; the
/// second graph's private vertices are inserted at random positions.
pub fn random_simultaneous<R: Rng>(
    rng: &mut R,
    max_n: usize,
    max_levels: u32,
) -> SimultaneousInstance {
    let p = Params {
        max_n,
        max_levels,
        density: 0.6,
    };
    let g1 = random_graph(rng, p);
    let n1 = g1.vertex_count();
    let shared_count = rng.gen_range(0..=n1.min(max_n.saturating_sub(1)).min(n1));
    let mut pool: Vec<VertexId> = g1.vertices().collect();
    pool.shuffle(rng);
    let mut shared: Vec<VertexId> = pool[..shared_count].to_vec();
    shared.sort();
    let private = rng.gen_range(0..=max_n - shared_count);

    let k = g1.levels();
    let mut b = LevelGraph::builder(k);
    let mut seq: Vec<Vec<VertexId>> = vec![Vec::new(); k as usize];
    let mut pairs = Vec::new();
    let mut map = std::collections::BTreeMap::new();
    for level in 1..=k {
        for &v in g1.order(level) {
            if shared.contains(&v) {
                let w = b.vertex(g1.name(v), level);
                map.insert(v, w);
                pairs.push((v, w));
                seq[level as usize - 1].push(w);
            }
        }
    }
    for i in 0..private {
        let level = rng.gen_range(1..=k);
        let w = b.vertex(format!("z{i}"), level);
        let s = &mut seq[level as usize - 1];
        let at = rng.gen_range(0..=s.len());
        s.insert(at, w);
    }
    for (l, s) in seq.iter().enumerate() {
        b.order(l as u32 + 1, s.clone());
    }
    let pos = |w: VertexId| -> usize {
        seq.iter()
            .find_map(|s| s.iter().position(|&x| x == w))
            .expect("placed")
    };
    let crosses = |e: (VertexId, VertexId), f: (VertexId, VertexId)| {
        let (a, c) = (pos(e.0), pos(f.0));
        let (bb, d) = (pos(e.1), pos(f.1));
        (a < c && bb > d) || (a > c && bb < d)
    };
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for &(u, v) in g1.edges() {
        if let (Some(&a), Some(&c)) = (map.get(&u), map.get(&v)) {
            if rng.gen_bool(0.7) {
                edges.push((a, c));
            }
        }
    }
    for l in 1..k as usize {
        let (low, high) = (&seq[l - 1], &seq[l]);
        if low.is_empty() || high.is_empty() {
            continue;
        }
        for _ in 0..low.len() + high.len() {
            let e = (
                *low.choose(rng).expect("nonempty"),
                *high.choose(rng).expect("nonempty"),
            );
            let same_span = |f: &(VertexId, VertexId)| low.contains(&f.0);
            if !edges.contains(&e)
                && !edges
                    .iter()
                    .filter(|f| same_span(f))
                    .any(|&f| crosses(e, f))
            {
                edges.push(e);
            }
        }
    }
    for (u, v) in edges {
        b.edge(u, v);
    }
    SimultaneousInstance::new(g1, b.build(), pairs)
}
