use std::collections::HashMap;

use super::CuttingCover;
use crate::bits::BitSet;
use crate::relation::{FiniteRelation2, Subset};

struct Cell {
    members: Vec<usize>,
    met: BitSet,
    contained: BitSet,
}

impl Cell {
    fn crossing_with(&self, col: &BitSet) -> usize {
        let mut met = self.met.clone();
        met.or_assign(col);
        let mut contained = self.contained.clone();
        contained.and_assign(col);
        met.count() - contained.count()
    }
}

/// First-fit merging of fiber-trace classes (points met by exactly the same
/// fibers, which no fiber crosses) while the `|A|/r` cap holds. Fails when more
/// than `cap_cells` cells are needed.
pub fn greedy_cutting(rel: &FiniteRelation2, a: &Subset, r: u64, cap_cells: usize, d: u32) -> Option<CuttingCover> {
    a.check_in(rel.u()).ok()?;
    if r == 0 {
        return None;
    }
    let cap = (a.len() as u64 / r) as usize;

    let mut order: Vec<BitSet> = Vec::new();
    let mut classes: HashMap<BitSet, Vec<usize>> = HashMap::new();
    for v in 0..rel.v().size {
        let trace = rel.col(v).and(a.bits());
        let entry = classes.entry(trace.clone()).or_default();
        if entry.is_empty() {
            order.push(trace);
        }
        entry.push(v);
    }

    let mut cells: Vec<Cell> = Vec::new();
    for trace in order {
        let members = classes.remove(&trace).expect("every trace has a class");
        match cells.iter().position(|c| c.crossing_with(&trace) <= cap) {
            Some(i) => {
                let c = &mut cells[i];
                c.members.extend(members);
                c.met.or_assign(&trace);
                c.contained.and_assign(&trace);
            }
            None => cells.push(Cell {
                members,
                met: trace.clone(),
                contained: trace,
            }),
        }
        if cells.len() > cap_cells {
            return None;
        }
    }
    let cells = cells
        .into_iter()
        .map(|mut c| {
            c.members.sort_unstable();
            c.members
        })
        .collect();
    Some(CuttingCover::new(rel, a, r, d, cells))
}
