use super::CuttingCover;
use crate::error::{Error, Result};
use crate::relation::{FiniteRelation2, Subset};

/// `(lo, hi)` of each nonempty fiber in `a`, or a family error when some fiber
/// is not a run of consecutive indices.
pub(super) fn runs(rel: &FiniteRelation2, a: &Subset) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for i in a.iter() {
        let row = rel.row(i);
        let (Some(lo), Some(hi)) = (row.iter().next(), row.iter().last()) else {
            continue;
        };
        if row.count() != hi - lo + 1 {
            return Err(Error::family(format!("fiber {i} is not contiguous")));
        }
        out.push((lo, hi));
    }
    Ok(out)
}

/// Splits `0..len` into consecutive blocks, each crossed by at most `cap` of
/// the runs. A run `[lo, hi]` crosses block `[s, e]` iff `s < lo <= e` or
/// `s <= hi < e`, so each closed block accounts for more than `cap` endpoints.
pub(super) fn sweep_blocks(len: usize, runs: &[(usize, usize)], cap: usize) -> Vec<(usize, usize)> {
    let mut starts: Vec<Vec<usize>> = vec![Vec::new(); len];
    let mut ends: Vec<Vec<usize>> = vec![Vec::new(); len];
    for (k, &(lo, hi)) in runs.iter().enumerate() {
        starts[lo].push(k);
        ends[hi].push(k);
    }
    let mut blocks = Vec::new();
    let mut marked = vec![false; runs.len()];
    let mut touched: Vec<usize> = Vec::new();
    let mut s = 0;
    while s < len {
        let mut e = s;
        let mut crossing = 0;
        while e + 1 < len {
            // extending to e+1 adds runs starting at e+1 and runs ending at e
            let mut added = Vec::new();
            for &k in starts[e + 1].iter().chain(&ends[e]) {
                if !marked[k] && !added.contains(&k) {
                    added.push(k);
                }
            }
            if crossing + added.len() > cap {
                break;
            }
            for k in added {
                marked[k] = true;
                touched.push(k);
                crossing += 1;
            }
            e += 1;
        }
        blocks.push((s, e));
        for k in touched.drain(..) {
            marked[k] = false;
        }
        s = e + 1;
    }
    blocks
}

/// Consecutive blocks of `V`, each crossed by at most `|A|/r` fibers; at most
/// `2r` blocks, so the family has cutting exponent 1.
pub fn interval_cutting(rel: &FiniteRelation2, a: &Subset, r: u64) -> Result<CuttingCover> {
    a.check_in(rel.u())?;
    if r == 0 {
        return Err(Error::param("r must be positive"));
    }
    let runs = runs(rel, a)?;
    let cap = (a.len() as u64 / r) as usize;
    let cells = sweep_blocks(rel.v().size, &runs, cap)
        .into_iter()
        .map(|(s, e)| (s..=e).collect())
        .collect();
    Ok(CuttingCover::new(rel, a, r, 1, cells))
}
