//! Generators for bipartite test instances.

use rand::Rng;

use crate::error::{Error, Result};
use crate::relation::{FiniteRelation2, Universe};

fn normalized_points(q: usize) -> Vec<[usize; 3]> {
    let mut pts = Vec::with_capacity(q * q + q + 1);
    for a in 0..q {
        for b in 0..q {
            pts.push([1, a, b]);
        }
    }
    for a in 0..q {
        pts.push([0, 1, a]);
    }
    pts.push([0, 0, 1]);
    pts
}

/// Line–point incidence of the projective plane `PG(2, q)` for prime `q`:
/// `q² + q + 1` lines on the left, as many points on the right.
pub fn projective_plane(q: usize) -> Result<FiniteRelation2> {
    if q < 2 || (2..q).take_while(|d| d * d <= q).any(|d| q.is_multiple_of(d)) {
        return Err(Error::input(format!("PG(2, q) needs a prime q, got {q}")));
    }
    let pts = normalized_points(q);
    let mut pairs = Vec::with_capacity(pts.len() * (q + 1));
    for (l, line) in pts.iter().enumerate() {
        for (p, pt) in pts.iter().enumerate() {
            let dot: usize = line.iter().zip(pt).map(|(a, b)| a * b).sum();
            if dot.is_multiple_of(q) {
                pairs.push((l, p));
            }
        }
    }
    let n = pts.len();
    FiniteRelation2::build(Universe::new("lines", n), Universe::new("points", n), &pairs)
}

pub fn identity(n: usize) -> FiniteRelation2 {
    let pairs: Vec<_> = (0..n).map(|i| (i, i)).collect();
    FiniteRelation2::build(Universe::new("U", n), Universe::new("V", n), &pairs)
        .expect("identity pairs are in range")
}

/// Each pair present independently with probability `p`.
pub fn random_bipartite(m: usize, n: usize, p: f64, seed: u64) -> FiniteRelation2 {
    let mut rng = crate::rng::stream(seed, 1);
    let mut pairs = Vec::new();
    for a in 0..m {
        for b in 0..n {
            if rng.gen_bool(p) {
                pairs.push((a, b));
            }
        }
    }
    FiniteRelation2::build(Universe::new("U", m), Universe::new("V", n), &pairs)
        .expect("random pairs are in range")
}

/// Random edges offered in sequence, each kept unless it closes a 4-cycle.
/// Produces dense `K_{2,2}`-free graphs.
pub fn random_c4_free(m: usize, n: usize, attempts: usize, seed: u64) -> FiniteRelation2 {
    let mut rng = crate::rng::stream(seed, 2);
    let mut rows = vec![crate::bits::BitSet::new(n); m];
    for _ in 0..attempts {
        let (a, b) = (rng.gen_range(0..m), rng.gen_range(0..n));
        if rows[a].contains(b) {
            continue;
        }
        let closes = (0..m).any(|w| w != a && rows[w].contains(b) && rows[w].intersects_at_least(&rows[a], 1));
        if !closes {
            rows[a].insert(b);
        }
    }
    FiniteRelation2::from_rows(Universe::new("U", m), Universe::new("V", n), rows)
}
