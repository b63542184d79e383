use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::relation::{FiniteRelation2, FiniteRelation3, Pairing, Universe};
use crate::zarankiewicz::find_kst;

/// Fiber-size maxima of a ternary relation and the degree they imply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaDegree {
    /// Present iff every maximum is at most `threshold`.
    pub d: Option<u32>,
    /// Largest fiber for `(x,y) -> z`, `(x,z) -> y` and `(y,z) -> x`.
    pub maxima: [usize; 3],
    pub threshold: usize,
}

/// Exact per-pairing fiber maxima. A fiber larger than `threshold` stands in
/// for an infinite one. The empty relation has degree 1.
pub fn delta_degree(f: &FiniteRelation3, threshold: usize) -> Result<DeltaDegree> {
    if threshold == 0 {
        return Err(Error::param("threshold must be at least 1"));
    }
    let maxima = Pairing::ALL.map(|p| f.fibers(p).values().map(Vec::len).max().unwrap_or(0));
    let worst = maxima.iter().copied().max().unwrap_or(0);
    let d = (worst <= threshold).then(|| worst.max(1) as u32);
    Ok(DeltaDegree { d, maxima, threshold })
}

/// A complete `k × k` block between one coordinate and the product of the
/// other two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderWitness {
    /// Coordinate kept on its own: 1 for `x`, 2 for `y`, 3 for `z`.
    pub axis: usize,
    pub left: Vec<usize>,
    /// Pairs over the remaining two coordinates, in coordinate order.
    pub right: Vec<(usize, usize)>,
}

/// `F` as a binary relation between coordinate `axis` (0-based) and the
/// row-major product of the other two.
pub fn flatten(f: &FiniteRelation3, axis: usize) -> Result<FiniteRelation2> {
    assert!(axis < 3);
    let (j, l) = others(axis);
    let (uj, ul) = (f.universe(j), f.universe(l));
    let size = uj.size.checked_mul(ul.size).ok_or_else(|| {
        Error::Capacity(format!("product {} x {} is too large", uj.name, ul.name))
    })?;
    let left = f.universe(axis);
    let mut rows = vec![BitSet::new(size); left.size];
    for t in f.triples() {
        rows[t[axis]].insert(t[j] * ul.size + t[l]);
    }
    let right = Universe::new(format!("{}x{}", uj.name, ul.name), size);
    Ok(FiniteRelation2::from_rows(Universe::new(left.name.clone(), left.size), right, rows))
}

fn others(axis: usize) -> (usize, usize) {
    match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// First axis whose flattening contains `K_{k,k}`, with the block found there.
pub fn cylindrical_witness(f: &FiniteRelation3, k: usize) -> Result<Option<CylinderWitness>> {
    if k < 2 {
        return Err(Error::param("k must be at least 2"));
    }
    for axis in 0..3 {
        let flat = flatten(f, axis)?;
        if let Some(w) = find_kst(&flat, k, k) {
            let base = f.universe(others(axis).1).size;
            return Ok(Some(CylinderWitness {
                axis: axis + 1,
                left: w.s_side,
                right: w.t_side.iter().map(|&p| (p / base, p % base)).collect(),
            }));
        }
    }
    Ok(None)
}
