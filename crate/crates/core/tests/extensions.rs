mod common;

use std::collections::BTreeMap;

use levdraw_core::corpus::{drawability_corpus, random_partial, random_simultaneous};
use levdraw_core::{
    check_lambda_drawing, enumerate_drawings, extend_partial, find_gaps, oracle_extendable,
    oracle_simultaneous, simultaneous, Coverage, Drawing, Error, Side, Slopes,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn extension_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let (mut checked, mut feasible, mut infeasible) = (0, 0, 0);
    for (name, g, s) in drawability_corpus(33, 400) {
        let drawings = enumerate_drawings(&g, s).unwrap().drawings;
        let base = if drawings.is_empty() {
            // Any order-respecting placement; extensions are then infeasible.
            Drawing::new(g.vertices().map(|v| g.position(v) as i64).collect())
        } else {
            drawings[rng.gen_range(0..drawings.len())].clone()
        };
        let inst = random_partial(&mut rng, &g, base.coords(), 0.4);
        let engine = extend_partial(&inst, s);
        let oracle = oracle_extendable(&inst, s);
        match (engine, oracle) {
            (Err(Error::MalformedInstance(_)), Err(Error::MalformedInstance(_))) => continue,
            (Ok(d), Ok(list)) => {
                assert!(!list.is_empty(), "{name}: oracle finds no extension");
                for (&v, &x) in &inst.fixed {
                    assert_eq!(d.x(v), x, "{name}");
                }
                assert!(check_lambda_drawing(&g, &d, s).ok(), "{name}");
                let (lo, hi) = inst.fixed_span().unwrap_or((0, -1));
                assert!(
                    find_gaps(&g, &d).iter().all(|&c| lo <= c && c <= hi),
                    "{name}"
                );
                assert!(list.contains(&d.anchored_at_zero()), "{name}");
                feasible += 1;
            }
            (Err(e), Ok(list)) => {
                assert!(e.is_infeasible(), "{name}: {e}");
                assert!(e.witness().unwrap().total_length() < 0);
                assert!(list.is_empty(), "{name}: engine misses an extension");
                infeasible += 1;
            }
            (a, b) => panic!("{name}: engine {a:?} oracle {b:?}"),
        }
        checked += 1;
    }
    assert!(
        checked >= 100 && feasible > 20 && infeasible > 20,
        "{checked} {feasible} {infeasible}"
    );
}

fn window(inst: &levdraw_core::SimultaneousInstance, s: Slopes) -> i64 {
    let n = inst.first.vertex_count() + inst.second.vertex_count() - inst.shared.len();
    s.compact_width_bound(n) + 2
}

#[test]
fn simultaneous_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let (mut feasible, mut infeasible, mut multi) = (0, 0, 0);
    for i in 0..150 {
        let inst = random_simultaneous(&mut rng, 6, 3);
        let s = common::slopes(rng.gen_range(1..=3));
        let pairs = oracle_simultaneous(&inst, s).unwrap();
        match simultaneous(&inst, s) {
            Ok(r) => {
                assert!(!pairs.is_empty(), "instance {i}");
                for &(a, b) in &inst.shared {
                    assert_eq!(r.first.x(a), r.second.x(b));
                }
                assert!(check_lambda_drawing(&inst.first, &r.first, s).ok());
                assert!(check_lambda_drawing(&inst.second, &r.second, s).ok());
                let mut cov = Coverage::new();
                cov.add_drawing(&inst.first, &r.first);
                cov.add_drawing(&inst.second, &r.second);
                assert!(cov.is_compact(), "instance {i}");
                assert!(
                    pairs.contains(&(r.first.clone(), r.second.clone())),
                    "instance {i}"
                );
                assert!(r.iterations <= r.bound);
                assert!(r.trace.iter().all(|t| t.new < t.old && t.new <= t.limit));
                one_sided_optimal(&inst, s, &r);
                feasible += 1;
                if r.iterations >= 2 {
                    multi += 1;
                }
            }
            Err(e) => {
                assert!(e.is_infeasible(), "instance {i}: {e}");
                assert!(pairs.is_empty(), "instance {i}: engine misses a pair");
                infeasible += 1;
            }
        }
    }
    assert!(
        feasible > 20 && infeasible > 5 && multi > 0,
        "{feasible} {infeasible} {multi}"
    );
}

/// No drawing of either graph that respects that graph's added constraints
/// puts any vertex right of the final labeling.
fn one_sided_optimal(
    inst: &levdraw_core::SimultaneousInstance,
    s: Slopes,
    r: &levdraw_core::SimultaneousResult,
) {
    let w = window(inst, s);
    for (side, g, labels) in [
        (Side::First, &inst.first, &r.labelings.0),
        (Side::Second, &inst.second, &r.labelings.1),
    ] {
        let mut limits: BTreeMap<usize, i64> = BTreeMap::new();
        for t in r.trace.iter().filter(|t| t.side == side) {
            let v = g.vertex(&t.vertex).map(|v| v.index());
            if let Some(v) = v {
                let e = limits.entry(v).or_insert(t.limit);
                *e = (*e).min(t.limit);
            }
        }
        for e in enumerate_drawings(g, s).unwrap().drawings {
            let mut p = common::right_boundary_offset(g, s, &e);
            for (&v, &c) in &limits {
                p = p.max(e.coords()[v] - c);
            }
            let x: Vec<i64> = e.coords().iter().map(|&c| c - p).collect();
            if x.iter().any(|&c| c < -w) {
                continue;
            }
            assert!((0..x.len()).all(|i| labels.x[i] >= x[i]));
        }
    }
}
