//! Covers of the right universe whose cells are crossed by few left fibers.
//!
//! A fiber `E_a` crosses a cell `V'` when it meets `V'` without containing it.
//! Every constructor here is checked by [`verify_cutting`], which recomputes
//! all crossing counts from scratch.

mod boxgrid;
mod families;
mod greedy;
mod interval;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use boxgrid::box_grid_cutting;
pub use families::{IntervalFamily, Rect, RectFamily};
pub use greedy::greedy_cutting;
pub use interval::interval_cutting;

use crate::bits::BitSet;
use crate::error::Result;
use crate::relation::{FiniteRelation2, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuttingCover {
    pub r: u64,
    #[serde(rename = "D")]
    pub d: u32,
    pub cells: Vec<Vec<usize>>,
    pub crossing_counts: Vec<usize>,
}

impl CuttingCover {
    /// Builds a cover and records the crossing count of each cell.
    pub fn new(rel: &FiniteRelation2, a: &Subset, r: u64, d: u32, cells: Vec<Vec<usize>>) -> Self {
        let crossing_counts = cells
            .par_iter()
            .map(|c| crossing_count(rel, a.bits(), &BitSet::from_indices(rel.v().size, c.iter().copied())))
            .collect();
        CuttingCover {
            r,
            d,
            cells,
            crossing_counts,
        }
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }
}

/// Number of fibers `E_a`, `a ∈ A`, crossing `cell`.
pub fn crossing_count(rel: &FiniteRelation2, a: &BitSet, cell: &BitSet) -> usize {
    let size = cell.count();
    a.iter()
        .filter(|&i| {
            let hit = rel.row(i).intersection_count(cell);
            hit > 0 && hit < size
        })
        .count()
}

pub fn crosses(fiber: &BitSet, cell: &BitSet) -> bool {
    let hit = fiber.intersection_count(cell);
    hit > 0 && hit < cell.count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    IndexOutOfRange { cell: usize, index: usize },
    Uncovered { v: usize },
    OverCap { cell: usize, crossing: usize, n: usize, r: u64 },
    CountMismatch { cell: usize, claimed: usize, actual: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CuttingReport {
    pub valid: bool,
    pub max_crossing: usize,
    pub cell_count: usize,
    /// `cell_count / r^D`.
    pub fitted_c: f64,
    pub violation: Option<Violation>,
}

/// Checks that `cover` covers `V` and that every cell is crossed by at most
/// `|A| / r` fibers from `A`.
pub fn verify_cutting(rel: &FiniteRelation2, a: &Subset, r: u64, cover: &CuttingCover) -> Result<CuttingReport> {
    a.check_in(rel.u())?;
    let n = a.len();
    let vsize = rel.v().size;
    let cell_count = cover.cells.len();
    let fitted_c = cell_count as f64 / (r as f64).powi(cover.d as i32);
    let mut report = CuttingReport {
        valid: true,
        max_crossing: 0,
        cell_count,
        fitted_c,
        violation: None,
    };

    for (i, cell) in cover.cells.iter().enumerate() {
        if let Some(&bad) = cell.iter().find(|&&v| v >= vsize) {
            report.valid = false;
            report.violation = Some(Violation::IndexOutOfRange { cell: i, index: bad });
            return Ok(report);
        }
    }

    let counts: Vec<usize> = cover
        .cells
        .par_iter()
        .map(|c| crossing_count(rel, a.bits(), &BitSet::from_indices(vsize, c.iter().copied())))
        .collect();
    report.max_crossing = counts.iter().copied().max().unwrap_or(0);

    let mut covered = BitSet::new(vsize);
    for cell in &cover.cells {
        for &v in cell {
            covered.insert(v);
        }
    }
    if let Some(v) = (0..vsize).find(|&v| !covered.contains(v)) {
        report.valid = false;
        report.violation = Some(Violation::Uncovered { v });
        return Ok(report);
    }

    for (i, &crossing) in counts.iter().enumerate() {
        if crossing as u128 * r as u128 > n as u128 {
            report.valid = false;
            report.violation = Some(Violation::OverCap { cell: i, crossing, n, r });
            return Ok(report);
        }
        match cover.crossing_counts.get(i) {
            Some(&claimed) if claimed == crossing => {}
            claimed => {
                report.valid = false;
                report.violation = Some(Violation::CountMismatch {
                    cell: i,
                    claimed: claimed.copied().unwrap_or(usize::MAX),
                    actual: crossing,
                });
                return Ok(report);
            }
        }
    }
    if cover.crossing_counts.len() != cell_count {
        report.valid = false;
        report.violation = Some(Violation::CountMismatch {
            cell: cell_count,
            claimed: cover.crossing_counts.len(),
            actual: cell_count,
        });
    }
    Ok(report)
}

/// Source of cuttings for the certified counter.
pub trait CuttingProvider: Sync {
    fn exponent(&self) -> u32;

    /// A cover of `V` for the fibers of `a`, or `None` when none is available.
    fn cover(&self, rel: &FiniteRelation2, a: &Subset, r: u64) -> Option<CuttingCover>;
}

/// Cuttings for relations whose fibers are runs of consecutive right indices.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntervalCutter;

impl CuttingProvider for IntervalCutter {
    fn exponent(&self) -> u32 {
        1
    }

    fn cover(&self, rel: &FiniteRelation2, a: &Subset, r: u64) -> Option<CuttingCover> {
        interval_cutting(rel, a, r).ok()
    }
}

/// Cuttings for relations whose fibers are the points inside axis-aligned rectangles.
#[derive(Debug, Clone)]
pub struct BoxGridCutter {
    pub points: Vec<(i64, i64)>,
}

impl CuttingProvider for BoxGridCutter {
    fn exponent(&self) -> u32 {
        2
    }

    fn cover(&self, rel: &FiniteRelation2, a: &Subset, r: u64) -> Option<CuttingCover> {
        box_grid_cutting(rel, a, &self.points, r).ok()
    }
}

/// Best-effort cuttings for arbitrary relations, capped at `cap_cells` cells.
#[derive(Debug, Clone, Copy)]
pub struct GreedyCutter {
    pub cap_cells: usize,
    pub d: u32,
}

impl CuttingProvider for GreedyCutter {
    fn exponent(&self) -> u32 {
        self.d
    }

    fn cover(&self, rel: &FiniteRelation2, a: &Subset, r: u64) -> Option<CuttingCover> {
        greedy_cutting(rel, a, r, self.cap_cells, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::relation::Universe;

    #[test]
    fn single_cell_valid_iff_few_crossers() {
        // 4 fibers over V = {0..3}; fibers 0 and 1 cross V, 2 contains it, 3 misses it
        let v = 4;
        let pairs = [(0, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2), (2, 3)];
        let rel = FiniteRelation2::build(Universe::new("U", 4), Universe::new("V", v), &pairs).unwrap();
        let a = rel.u().full();
        let cover = CuttingCover::new(&rel, &a, 2, 1, vec![(0..v).collect()]);
        let rep = verify_cutting(&rel, &a, 2, &cover).unwrap();
        assert_eq!(rep.max_crossing, 2);
        assert!(rep.valid);

        let rel3 = FiniteRelation2::build(
            Universe::new("U", 4),
            Universe::new("V", v),
            &[(0, 0), (1, 1), (3, 3), (2, 0), (2, 1), (2, 2), (2, 3)],
        )
        .unwrap();
        let cover = CuttingCover::new(&rel3, &a, 2, 1, vec![(0..v).collect()]);
        let rep = verify_cutting(&rel3, &a, 2, &cover).unwrap();
        assert!(!rep.valid);
        assert!(matches!(rep.violation, Some(Violation::OverCap { cell: 0, crossing: 3, .. })));
    }

    #[test]
    fn singletons_are_never_crossed() {
        for seed in 0..10 {
            let rel = instances::random_bipartite(12, 9, 0.5, seed);
            let a = rel.u().full();
            let cover = CuttingCover::new(&rel, &a, 5, 1, (0..9).map(|v| vec![v]).collect());
            let rep = verify_cutting(&rel, &a, 5, &cover).unwrap();
            assert!(rep.valid);
            assert_eq!((rep.max_crossing, rep.cell_count), (0, 9));
        }
    }

    #[test]
    fn verifier_catches_bad_covers() {
        let rel = instances::identity(4);
        let a = rel.u().full();
        let mut cover = CuttingCover::new(&rel, &a, 2, 1, vec![vec![0, 1], vec![2]]);
        let rep = verify_cutting(&rel, &a, 2, &cover).unwrap();
        assert_eq!(rep.violation, Some(Violation::Uncovered { v: 3 }));

        cover.cells.push(vec![7]);
        cover.crossing_counts.push(0);
        let rep = verify_cutting(&rel, &a, 2, &cover).unwrap();
        assert_eq!(rep.violation, Some(Violation::IndexOutOfRange { cell: 2, index: 7 }));

        let mut lying = CuttingCover::new(&rel, &a, 2, 1, vec![vec![0, 1], vec![2, 3]]);
        lying.crossing_counts[1] = 0;
        lying.crossing_counts[0] = 1;
        let rep = verify_cutting(&rel, &a, 2, &lying).unwrap();
        assert!(matches!(rep.violation, Some(Violation::CountMismatch { cell: 0, .. })));
    }

    #[test]
    fn cover_json_shape() {
        let rel = instances::identity(2);
        let cover = CuttingCover::new(&rel, &rel.u().full(), 2, 1, vec![vec![0], vec![1]]);
        assert_eq!(
            serde_json::to_string(&cover).unwrap(),
            r#"{"r":2,"D":1,"cells":[[0],[1]],"crossing_counts":[0,0]}"#
        );
    }
}
