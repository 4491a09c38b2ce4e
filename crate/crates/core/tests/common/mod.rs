#![allow(dead_code)]

use levdraw_core::{Drawing, LevelGraph, Slopes};

/// Offset of the leftmost right boundary a drawing admits: the smallest
/// `p` with `p + (λ−1)(j−1) > x` for every vertex `x` on level `j`.
pub fn right_boundary_offset(g: &LevelGraph, slopes: Slopes, d: &Drawing) -> i64 {
    let step = slopes.get() as i64 - 1;
    g.vertices()
        .map(|v| d.x(v) + 1 - step * (g.level(v) as i64 - 1))
        .max()
        .unwrap_or(0)
}

/// `d` translated so that the leftmost admissible right boundary starts at 0.
pub fn lift(g: &LevelGraph, slopes: Slopes, d: &Drawing) -> Vec<i64> {
    let p = right_boundary_offset(g, slopes, d);
    d.coords().iter().map(|&x| x - p).collect()
}

pub fn slopes(l: u32) -> Slopes {
    Slopes::new(l).unwrap()
}
