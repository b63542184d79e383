use std::collections::BTreeMap;

use super::interval::sweep_blocks;
use super::CuttingCover;
use crate::error::{Error, Result};
use crate::relation::{FiniteRelation2, Subset};

fn ranks(values: impl Iterator<Item = i64>) -> Vec<i64> {
    let mut v: Vec<i64> = values.collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn rank_of(sorted: &[i64], x: i64) -> usize {
    sorted.binary_search(&x).expect("value comes from the ranked set")
}

/// Grid cover for fibers that are the points of axis-aligned rectangles.
///
/// Columns are consecutive x-rank slabs crossed (in x) by at most `|A|/(2r)`
/// rectangles; each slab is then split along y while the exact crossing count
/// of the growing cell stays within `|A|/r`.
pub fn box_grid_cutting(rel: &FiniteRelation2, a: &Subset, points: &[(i64, i64)], r: u64) -> Result<CuttingCover> {
    a.check_in(rel.u())?;
    if points.len() != rel.v().size {
        return Err(Error::input(format!(
            "{} points given for a right universe of size {}",
            points.len(),
            rel.v().size
        )));
    }
    if r == 0 {
        return Err(Error::param("r must be positive"));
    }
    let n = a.len() as u64;
    let cap = (n / r) as usize;
    let x_cap = (n / (2 * r)) as usize;
    let xs = ranks(points.iter().map(|p| p.0));
    let ys = ranks(points.iter().map(|p| p.1));

    let mut rects: Vec<usize> = Vec::new();
    let mut x_runs = Vec::new();
    for i in a.iter() {
        let row = rel.row(i);
        if row.is_empty() {
            continue;
        }
        let (mut x0, mut x1, mut y0, mut y1) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
        for p in row.iter() {
            let (x, y) = points[p];
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        let inside = points
            .iter()
            .filter(|&&(x, y)| x0 <= x && x <= x1 && y0 <= y && y <= y1)
            .count();
        if inside != row.count() {
            return Err(Error::family(format!(
                "fiber {i} is not the point set of a rectangle"
            )));
        }
        rects.push(i);
        x_runs.push((rank_of(&xs, x0), rank_of(&xs, x1)));
    }

    let mut cells = Vec::new();
    for (xs_lo, xs_hi) in sweep_blocks(xs.len(), &x_runs, x_cap) {
        let mut by_y: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, &(x, y)) in points.iter().enumerate() {
            let xr = rank_of(&xs, x);
            if (xs_lo..=xs_hi).contains(&xr) {
                by_y.entry(rank_of(&ys, y)).or_default().push(v);
            }
        }
        let mut cell: Vec<usize> = Vec::new();
        let mut hits = vec![0usize; rects.len()];
        for group in by_y.into_values() {
            let gained: Vec<usize> = rects
                .iter()
                .map(|&i| group.iter().filter(|&&v| rel.row(i).contains(v)).count())
                .collect();
            let size = cell.len() + group.len();
            let crossing = hits
                .iter()
                .zip(&gained)
                .filter(|&(h, g)| h + g > 0 && h + g < size)
                .count();
            if !cell.is_empty() && crossing > cap {
                cells.push(std::mem::take(&mut cell));
                hits.iter_mut().for_each(|h| *h = 0);
            }
            cell.extend(group);
            for (h, g) in hits.iter_mut().zip(gained) {
                *h += g;
            }
        }
        if !cell.is_empty() {
            cells.push(cell);
        }
    }
    for c in &mut cells {
        c.sort_unstable();
    }
    Ok(CuttingCover::new(rel, a, r, 2, cells))
}
