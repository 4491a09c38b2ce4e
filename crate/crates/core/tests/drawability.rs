mod common;

use common::{lift, slopes};
use levdraw_core::corpus::{drawability_corpus, in_fan, out_fan};
use levdraw_core::{
    build_distance_graph, check_lambda_drawing, enumerate_drawings, is_compact, rightmost,
    verify_labeling, AugmentedGraph, Drawing, Labeling,
};

#[test]
fn engine_and_oracle_agree_on_drawability() {
    for (name, g, s) in drawability_corpus(7, 600) {
        let oracle = enumerate_drawings(&g, s).unwrap();
        let engine = rightmost(&g, s);
        assert_eq!(engine.is_ok(), oracle.count > 0, "{name}");
        if let Err(e) = &engine {
            assert!(e.witness().unwrap().total_length() < 0, "{name}");
        }
    }
}

#[test]
fn rightmost_dominates_every_drawing() {
    let mut gap_free = 0;
    for (name, g, s) in drawability_corpus(11, 600) {
        let Ok(r) = rightmost(&g, s) else { continue };
        let oracle = enumerate_drawings(&g, s).unwrap();
        let n = g.vertex_count();
        let lifted: Vec<Vec<i64>> = oracle.drawings.iter().map(|d| lift(&g, s, d)).collect();
        let raw = &r.labeling.x[..n];
        for e in &lifted {
            assert!((0..n).all(|i| raw[i] >= e[i]), "{name}");
        }
        // Where the rightmost drawing is itself compact it is one of the
        // enumerated drawings, and it attains every per-vertex maximum.
        if is_compact(&g, &Drawing::new(raw.to_vec())) {
            gap_free += 1;
            let max: Vec<i64> = (0..n)
                .map(|i| lifted.iter().map(|e| e[i]).max().unwrap())
                .collect();
            assert_eq!(raw, &max[..], "{name}");
            assert!(lifted.iter().any(|e| e == raw), "{name}");
        }
    }
    assert!(gap_free > 300);
}

#[test]
fn rightmost_with_a_gap_is_not_a_compact_maximum() {
    // Two components on disjoint level ranges: the rightmost drawing leaves
    // a column free between them, and the best compact drawing is lower.
    let g = levdraw_core::corpus::curated()
        .into_iter()
        .find(|c| c.0 == "stacked-components")
        .unwrap()
        .1;
    let s = slopes(3);
    let r = rightmost(&g, s).unwrap();
    let raw = Drawing::new(r.labeling.x[..4].to_vec());
    assert_eq!(raw.coords(), &[-1, 1, 3, 5]);
    assert!(!is_compact(&g, &raw));
    let best = enumerate_drawings(&g, s)
        .unwrap()
        .drawings
        .iter()
        .map(|d| lift(&g, s, d))
        .max_by_key(|e| e[2])
        .unwrap();
    assert_eq!(best[2], 2);
}

#[test]
fn outputs_are_compact_and_narrow() {
    for (name, g, s) in drawability_corpus(3, 150) {
        let Ok(r) = rightmost(&g, s) else { continue };
        assert!(check_lambda_drawing(&g, &r.drawing, s).ok(), "{name}");
        assert!(is_compact(&g, &r.drawing), "{name}");
        assert_eq!(r.drawing.min_x(), Some(0), "{name}");
        assert!(
            r.drawing.width() <= s.compact_width_bound(g.vertex_count()),
            "{name}"
        );
    }
}

#[test]
fn enumerated_drawings_are_labelings() {
    for (name, g, s) in drawability_corpus(5, 120) {
        let aug = AugmentedGraph::new(&g);
        let dg = build_distance_graph(&aug, s).unwrap();
        for d in enumerate_drawings(&g, s).unwrap().drawings {
            let lifted = aug.lift_tight(&d);
            assert!(check_lambda_drawing(&aug.graph, &lifted, s).ok(), "{name}");
            assert!(
                verify_labeling(
                    &dg,
                    &Labeling {
                        x: lifted.into_coords()
                    }
                )
                .ok(),
                "{name}"
            );
        }
    }
}

#[test]
fn labelings_are_drawings_and_back() {
    // Every integer vector in a small box, anchored at v_R: valid labeling
    // exactly when it is a λ-drawing of the augmented graph.
    let mut b = levdraw_core::LevelGraph::builder(2);
    let u = b.vertex("u", 1);
    let v = b.vertex("v", 2);
    b.edge(u, v);
    let g = b.build();
    for l in 1..=3 {
        let s = slopes(l);
        let aug = AugmentedGraph::new(&g);
        let dg = build_distance_graph(&aug, s).unwrap();
        let n = aug.graph.vertex_count();
        let vr = aug.v_right().index();
        let free: Vec<usize> = (0..n).filter(|&i| i != vr).collect();
        let mut x = vec![0i64; n];
        let total = 7usize.pow(free.len() as u32);
        for code in 0..total {
            let mut c = code;
            for &i in &free {
                x[i] = (c % 7) as i64 - 5;
                c /= 7;
            }
            let as_labeling = verify_labeling(&dg, &Labeling { x: x.clone() }).ok();
            let as_drawing = check_lambda_drawing(&aug.graph, &Drawing::new(x.clone()), s).ok();
            assert_eq!(as_labeling, as_drawing, "{x:?} λ={l}");
        }
    }
}

#[test]
fn degree_beyond_lambda_is_infeasible() {
    for l in 1..=3u32 {
        let s = slopes(l);
        for g in [out_fan(l as usize + 1), in_fan(l as usize + 1)] {
            let err = rightmost(&g, s).unwrap_err();
            let w = err.witness().unwrap();
            assert!(w.is_closed());
            assert!(w.total_length() < 0);
        }
        for g in [out_fan(l as usize), in_fan(l as usize)] {
            assert!(rightmost(&g, s).is_ok());
        }
    }
}
