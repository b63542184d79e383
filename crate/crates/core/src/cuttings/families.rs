use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::relation::{FiniteRelation2, Universe};

/// Intervals `[lo, hi]` over the ordered points `0..points`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalFamily {
    pub points: usize,
    pub intervals: Vec<(usize, usize)>,
}

impl IntervalFamily {
    pub fn random(count: usize, points: usize, seed: u64) -> Self {
        assert!(points > 0);
        let mut rng = crate::rng::stream(seed, 3);
        let intervals = (0..count)
            .map(|_| {
                let a = rng.gen_range(0..points);
                let b = rng.gen_range(0..points);
                (a.min(b), a.max(b))
            })
            .collect();
        IntervalFamily { points, intervals }
    }

    pub fn relation(&self) -> FiniteRelation2 {
        let pairs: Vec<_> = self
            .intervals
            .iter()
            .enumerate()
            .flat_map(|(i, &(lo, hi))| (lo..=hi).map(move |p| (i, p)))
            .collect();
        FiniteRelation2::build(
            Universe::new("intervals", self.intervals.len()),
            Universe::new("points", self.points),
            &pairs,
        )
        .expect("interval endpoints lie inside the point range")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: i64,
    pub x1: i64,
    pub y0: i64,
    pub y1: i64,
}

impl Rect {
    pub fn contains(&self, (x, y): (i64, i64)) -> bool {
        self.x0 <= x && x <= self.x1 && self.y0 <= y && y <= self.y1
    }
}

/// Closed axis-aligned rectangles over a planar point set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectFamily {
    pub points: Vec<(i64, i64)>,
    pub rects: Vec<Rect>,
}

impl RectFamily {
    /// `count` random rectangles over the `w × h` integer grid.
    pub fn random_on_grid(count: usize, w: i64, h: i64, seed: u64) -> Self {
        let points = (0..w).flat_map(|x| (0..h).map(move |y| (x, y))).collect();
        let mut rng = crate::rng::stream(seed, 4);
        let mut span = |len: i64| {
            let a = rng.gen_range(0..len);
            let b = rng.gen_range(0..len);
            (a.min(b), a.max(b))
        };
        let rects = (0..count)
            .map(|_| {
                let (x0, x1) = span(w);
                let (y0, y1) = span(h);
                Rect { x0, x1, y0, y1 }
            })
            .collect();
        RectFamily { points, rects }
    }

    pub fn relation(&self) -> FiniteRelation2 {
        let pairs: Vec<_> = self
            .rects
            .iter()
            .enumerate()
            .flat_map(|(i, r)| {
                self.points
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| r.contains(**p))
                    .map(move |(j, _)| (i, j))
            })
            .collect();
        FiniteRelation2::build(
            Universe::new("rects", self.rects.len()),
            Universe::new("points", self.points.len()),
            &pairs,
        )
        .expect("indices come from the family itself")
    }
}
