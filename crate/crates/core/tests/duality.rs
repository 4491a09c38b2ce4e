mod common;

use levdraw_core::corpus::drawability_corpus;
use levdraw_core::{
    build_flow_network, circulation_to_drawing, drawing_to_circulation, enumerate_drawings,
    find_circulation, rightmost, verify_circulation, ArcKind, AugmentedGraph, Circulation, Drawing,
    FlowNetwork, LevelGraph,
};

/// slope(left edge) + space above = slope(right edge) + space below, for
/// every pair of consecutive edges of every span.
fn assert_cell_balance(aug: &AugmentedGraph, net: &FlowNetwork, c: &Circulation) {
    let g = &aug.graph;
    for level in 1..g.levels() {
        let mut span: Vec<usize> = (0..g.edge_count())
            .filter(|&i| g.level(g.edges()[i].0) == level)
            .collect();
        span.sort_by_key(|&i| (g.position(g.edges()[i].0), g.position(g.edges()[i].1)));
        for pair in span.windows(2) {
            let ((u, w), (v, x)) = (g.edges()[pair[0]], g.edges()[pair[1]]);
            let below: u64 = (g.position(u)..g.position(v))
                .map(|p| c.flow[net.space_arcs(level)[p]])
                .sum();
            let above: u64 = (g.position(w)..g.position(x))
                .map(|p| c.flow[net.space_arcs(level + 1)[p]])
                .sum();
            let left = c.flow[net.slope_arc(pair[0])];
            let right = c.flow[net.slope_arc(pair[1])];
            assert_eq!(
                left + above,
                right + below,
                "cell between {} and {}",
                g.edge_label((u, w)),
                g.edge_label((v, x))
            );
        }
    }
}

fn round_trip(aug: &AugmentedGraph, net: &FlowNetwork, slopes: levdraw_core::Slopes, d: &Drawing) {
    let c = drawing_to_circulation(aug, net, slopes, d).unwrap();
    let report = verify_circulation(net, &c);
    assert!(report.ok(), "{report}");
    let back = circulation_to_drawing(aug, net, &c).unwrap();
    assert_eq!(back, d.anchored_at(aug.v_right()));
    assert!(levdraw_core::check_lambda_drawing(&aug.graph, &back, slopes).ok());
    assert_eq!(drawing_to_circulation(aug, net, slopes, &back).unwrap(), c);
    assert_cell_balance(aug, net, &c);
}

#[test]
fn enumerated_drawings_round_trip() {
    for (_, g, s) in drawability_corpus(21, 200) {
        let aug = AugmentedGraph::new(&g);
        let net = build_flow_network(&aug, s).unwrap();
        for d in enumerate_drawings(&g, s).unwrap().drawings {
            let lifted = aug.lift_tight(&d);
            round_trip(&aug, &net, s, &lifted);
            round_trip(&aug, &net, s, &slanted_lift(&aug, s, &d));
        }
    }
}

/// Right boundary as far left as the slopes allow, rising with slope λ−1;
/// left boundary vertical.
fn slanted_lift(aug: &AugmentedGraph, s: levdraw_core::Slopes, d: &Drawing) -> Drawing {
    let g = aug.original();
    let p = common::right_boundary_offset(&g, s, d);
    let step = s.get() as i64 - 1;
    let lo = (d.min_x().unwrap_or(0) - 1).min(p - 1);
    let mut x = d.coords().to_vec();
    x.extend(aug.boundary.left_path().iter().map(|_| lo));
    x.extend((0..aug.boundary.right_path().len()).map(|j| p + step * j as i64));
    Drawing::new(x)
}

#[test]
fn rightmost_circulations_verify() {
    for (name, g, s) in drawability_corpus(23, 300) {
        let aug = AugmentedGraph::new(&g);
        let net = build_flow_network(&aug, s).unwrap();
        match rightmost(&g, s) {
            Ok(r) => {
                let raw = Drawing::new(r.labeling.x.clone());
                round_trip(&aug, &net, s, &raw);
                let c = find_circulation(&aug, &net, s).unwrap();
                assert!(verify_circulation(&net, &c).ok(), "{name}");
            }
            Err(e) => {
                assert!(e.is_infeasible(), "{name}");
                assert!(
                    find_circulation(&aug, &net, s).unwrap_err().is_infeasible(),
                    "{name}"
                );
            }
        }
    }
}

#[test]
fn arc_counts_match_construction() {
    for (_, g, s) in drawability_corpus(25, 100) {
        let aug = AugmentedGraph::new(&g);
        let net = build_flow_network(&aug, s).unwrap();
        let ag = &aug.graph;
        assert_eq!(net.count(ArcKind::Slope), ag.edge_count());
        let pairs: usize = (1..=ag.levels()).map(|l| ag.order(l).len() - 1).sum();
        assert_eq!(net.count(ArcKind::Space), pairs);
        assert_eq!(net.count(ArcKind::Return), 1);
    }
}

#[test]
fn all_zero_slopes_pack_left() {
    // Two-level path, λ = 1: every slope is 0 and every gap between
    // neighbours is 1, so the drawing is the tightest one.
    let mut b = LevelGraph::builder(2);
    let u = b.vertex("u", 1);
    let v = b.vertex("v", 2);
    b.edge(u, v);
    let g = b.build();
    let s = common::slopes(1);
    let aug = AugmentedGraph::new(&g);
    let net = build_flow_network(&aug, s).unwrap();
    let flow = net
        .arcs
        .iter()
        .map(|a| match a.kind {
            ArcKind::Slope => 0,
            ArcKind::Space => 1,
            ArcKind::Return => 0,
        })
        .collect::<Vec<u64>>();
    let mut c = Circulation { flow };
    // The return arc carries whatever leaves the source.
    let ret = net.return_arc();
    let out: u64 = net
        .arcs
        .iter()
        .enumerate()
        .filter(|(i, a)| *i != ret && a.tail == levdraw_core::NodeId::SOURCE)
        .map(|(i, _)| c.flow[i])
        .sum();
    c.flow[ret] = out;
    assert!(
        verify_circulation(&net, &c).ok(),
        "{}",
        verify_circulation(&net, &c)
    );
    let d = circulation_to_drawing(&aug, &net, &c).unwrap();
    assert_eq!(aug.strip(&d).coords(), &[-1, -1]);
}
