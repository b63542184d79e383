use serde::{Deserialize, Serialize};

use super::exponents::kst_bound;
use crate::bits::BitSet;
use crate::relation::FiniteRelation2;

/// A complete `s × t` block: every left index in `s_side` is related to every
/// right index in `t_side`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KstWitness {
    pub s_side: Vec<usize>,
    pub t_side: Vec<usize>,
}

impl KstWitness {
    pub fn holds_in(&self, rel: &FiniteRelation2) -> bool {
        self.s_side
            .iter()
            .all(|&a| self.t_side.iter().all(|&b| rel.contains(a, b)))
    }
}

/// Lexicographically least `K_{s,t}` (left side compared first), if any.
pub fn find_kst(rel: &FiniteRelation2, s: usize, t: usize) -> Option<KstWitness> {
    find_kst_within(
        rel,
        &BitSet::full(rel.u().size),
        &BitSet::full(rel.v().size),
        s,
        t,
    )
}

/// [`find_kst`] restricted to the sub-grid `A × B`.
pub fn find_kst_within(
    rel: &FiniteRelation2,
    a: &BitSet,
    b: &BitSet,
    s: usize,
    t: usize,
) -> Option<KstWitness> {
    assert!(s >= 1 && t >= 1, "find_kst needs s, t >= 1");
    let candidates: Vec<usize> = a.iter().filter(|&u| rel.row(u).intersects_at_least(b, t)).collect();
    if candidates.len() < s {
        return None;
    }
    if s == 1 {
        let u = candidates[0];
        return Some(witness(vec![u], &rel.row(u).and(b), t));
    }
    if s == 2 {
        // pairwise fiber intersections with early exit
        for (i, &u) in candidates.iter().enumerate() {
            let ru = rel.row(u).and(b);
            for &w in &candidates[i + 1..] {
                if ru.intersects_at_least(rel.row(w), t) {
                    return Some(witness(vec![u, w], &ru.and(rel.row(w)), t));
                }
            }
        }
        return None;
    }
    let mut chosen = Vec::with_capacity(s);
    extend(rel, &candidates, 0, s, t, b.clone(), &mut chosen)
}

fn witness(s_side: Vec<usize>, common: &BitSet, t: usize) -> KstWitness {
    KstWitness {
        s_side,
        t_side: common.iter().take(t).collect(),
    }
}

fn extend(
    rel: &FiniteRelation2,
    candidates: &[usize],
    from: usize,
    s: usize,
    t: usize,
    common: BitSet,
    chosen: &mut Vec<usize>,
) -> Option<KstWitness> {
    if chosen.len() == s {
        return Some(witness(chosen.clone(), &common, t));
    }
    let need = s - chosen.len();
    for i in from..candidates.len() {
        if candidates.len() - i < need {
            break;
        }
        let u = candidates[i];
        let next = common.and(rel.row(u));
        if next.count() < t {
            continue;
        }
        chosen.push(u);
        if let Some(w) = extend(rel, candidates, i + 1, s, t, next, chosen) {
            return Some(w);
        }
        chosen.pop();
    }
    None
}

/// Partition of the left universe into classes whose pairwise fiber
/// intersections stay below `t_cap`, obtained by greedily colouring the graph
/// `u ~ u'  iff  |E_u ∩ E_u'| >= t_cap`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub classes: Vec<Vec<usize>>,
    /// Maximum degree of the auxiliary graph.
    pub r: usize,
    pub t_cap: usize,
}

impl Decomposition {
    /// Sum of the per-class KST bounds with `s = 2`, `t = t_cap`.
    pub fn kst_estimate(&self, right_size: usize) -> f64 {
        self.classes
            .iter()
            .map(|c| kst_bound::<f64>(2, self.t_cap as u32, c.len() as u64, right_size as u64))
            .sum()
    }
}

pub fn kst_free_decomposition(rel: &FiniteRelation2, threshold: usize) -> Decomposition {
    assert!(threshold >= 1, "threshold must be at least 1");
    let m = rel.u().size;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    for u in 0..m {
        for w in u + 1..m {
            if rel.row(u).intersects_at_least(rel.row(w), threshold) {
                adj[u].push(w);
                adj[w].push(u);
            }
        }
    }
    let r = adj.iter().map(Vec::len).max().unwrap_or(0);
    let mut color = vec![usize::MAX; m];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for u in 0..m {
        let mut used = vec![false; r + 1];
        for &w in &adj[u] {
            if color[w] != usize::MAX {
                used[color[w]] = true;
            }
        }
        let c = used.iter().position(|&x| !x).expect("degree r leaves a free colour");
        color[u] = c;
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push(u);
    }
    Decomposition {
        classes,
        r,
        t_cap: threshold,
    }
}
