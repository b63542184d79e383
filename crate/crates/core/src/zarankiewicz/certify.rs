//! Recursive upper bound on `|E ∩ A×B|` that records how each node was bounded.
//!
//! Small left sides are counted exactly; unbalanced nodes take the
//! Kővári–Sós–Turán bound; everything else is split along a verified cutting
//! of the right side. Each node carries exact integers, so the certificate's
//! total is an upper bound for the exact count whenever every leaf is.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::exponents::{kst_bound, ExponentParams};
use super::kst::find_kst_within;
use crate::bits::BitSet;
use crate::cuttings::{verify_cutting, CuttingProvider};
use crate::error::{Error, Result};
use crate::relation::{FiniteRelation2, Subset};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    /// `m <= max(r, leaf_size)`: exact count.
    #[serde(rename = "Case1")]
    SmallM,
    /// `r^{D/(1-α)} m >= n^t`: Kővári–Sós–Turán bound.
    #[serde(rename = "Case2")]
    Unbalanced,
    /// Split along a cutting and recurse on the crossing fibers of each cell.
    #[serde(rename = "Case3")]
    Recurse,
    /// Exact count used where neither bound applies (no verified cutting, or
    /// the sub-grid contains a `K_{s,t}`).
    LeafExact,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub case: Case,
    pub m: usize,
    pub n: usize,
    pub r: u64,
    /// Bound contributed at this node, excluding children.
    pub contribution: u64,
    pub children: Vec<BoundCertificate>,
    pub total: u64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degraded: bool,
    /// Number of cutting cells (Case 3 only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<usize>,
}

impl BoundCertificate {
    fn leaf(case: Case, m: usize, n: usize, r: u64, value: u64) -> Self {
        BoundCertificate {
            case,
            m,
            n,
            r,
            contribution: value,
            children: Vec::new(),
            total: value,
            degraded: false,
            cells: None,
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(Self::node_count).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(Self::depth).max().unwrap_or(0)
    }

    /// True when some node fell back to an exact count for lack of a cutting.
    pub fn any_degraded(&self) -> bool {
        self.degraded || self.children.iter().any(Self::any_degraded)
    }

    /// Checks `total = contribution + Σ child totals` at every node.
    pub fn is_consistent(&self) -> bool {
        self.total == self.contribution + self.children.iter().map(|c| c.total).sum::<u64>()
            && self.children.iter().all(Self::is_consistent)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificates always serialize")
    }
}

/// `ceil(2 c₂^{1/D})`, never below 2.
pub fn default_r(c2: f64, d: u32) -> u64 {
    ((2.0 * c2.max(0.0).powf(1.0 / d as f64)).ceil() as u64).max(2)
}

struct Ctx<'a> {
    rel: &'a FiniteRelation2,
    cutter: &'a dyn CuttingProvider,
    s: usize,
    t: usize,
    /// `D / (1 - α)`; infinite when `α >= 1`.
    case2_exponent: f64,
    r: u64,
    leaf_size: usize,
}

/// Certified upper bound on `|E ∩ A×B|`.
pub fn certified_count<T: Scalar>(
    rel: &FiniteRelation2,
    a: &Subset,
    b: &Subset,
    params: &ExponentParams<T>,
    cutter: &dyn CuttingProvider,
    r: u64,
    leaf_size: usize,
) -> Result<BoundCertificate> {
    a.check_in(rel.u())?;
    b.check_in(rel.v())?;
    if r < 2 {
        return Err(Error::param("r must be greater than 1"));
    }
    if leaf_size == 0 {
        return Err(Error::param("leaf_size must be at least 1"));
    }
    let one_minus_alpha = 1.0 - params.alpha.to_f64();
    let ctx = Ctx {
        rel,
        cutter,
        s: params.s as usize,
        t: params.t as usize,
        case2_exponent: if one_minus_alpha > 0.0 {
            params.d as f64 / one_minus_alpha
        } else {
            f64::INFINITY
        },
        r,
        leaf_size,
    };
    Ok(node(&ctx, a.bits().clone(), b.bits().clone()))
}

fn node(ctx: &Ctx<'_>, a: BitSet, b: BitSet) -> BoundCertificate {
    let (m, n, r) = (a.count(), b.count(), ctx.r);
    let exact = || ctx.rel.count_bits(&a, &b) as u64;

    if m as u64 <= r.max(ctx.leaf_size as u64) || n == 0 {
        return BoundCertificate::leaf(Case::SmallM, m, n, r, exact());
    }

    // r^{D/(1-α)} m >= n^t, compared in logs
    let unbalanced = ctx.case2_exponent.is_infinite()
        || ctx.case2_exponent * (r as f64).ln() + (m as f64).ln() >= ctx.t as f64 * (n as f64).ln();
    if unbalanced {
        if find_kst_within(ctx.rel, &a, &b, ctx.s, ctx.t).is_some() {
            return BoundCertificate::leaf(Case::LeafExact, m, n, r, exact());
        }
        let bound: f64 = kst_bound(ctx.s as u32, ctx.t as u32, m as u64, n as u64);
        let value = ((bound + 1e-9).floor() as u64).min(m as u64 * n as u64);
        return BoundCertificate::leaf(Case::Unbalanced, m, n, r, value);
    }

    let a_sub = Subset::from_bits(ctx.rel.u(), a.clone());
    let cover = ctx
        .cutter
        .cover(ctx.rel, &a_sub, r)
        .filter(|c| verify_cutting(ctx.rel, &a_sub, r, c).is_ok_and(|rep| rep.valid));
    let Some(cover) = cover else {
        let mut leaf = BoundCertificate::leaf(Case::LeafExact, m, n, r, exact());
        leaf.degraded = true;
        return leaf;
    };

    // first-hit assignment makes the cells B_i disjoint
    let vsize = ctx.rel.v().size;
    let mut remaining = b.clone();
    let mut parts = Vec::with_capacity(cover.cells.len());
    for cell in &cover.cells {
        let mut bi = BitSet::from_indices(vsize, cell.iter().copied());
        bi.and_assign(&remaining);
        remaining.difference_assign(&bi);
        if !bi.is_empty() {
            parts.push(bi);
        }
    }
    debug_assert!(remaining.is_empty());

    let results: Vec<(u64, BoundCertificate)> = parts
        .into_par_iter()
        .map(|bi| {
            let size = bi.count();
            let mut crossing = BitSet::new(a.len());
            let mut uncrossed_edges = 0u64;
            for i in a.iter() {
                let hit = ctx.rel.row(i).intersection_count(&bi);
                if hit > 0 && hit < size {
                    crossing.insert(i);
                } else {
                    uncrossed_edges += hit as u64;
                }
            }
            (uncrossed_edges, node(ctx, crossing, bi))
        })
        .collect();

    let contribution: u64 = results.iter().map(|(e, _)| e).sum();
    let children: Vec<BoundCertificate> = results.into_iter().map(|(_, c)| c).collect();
    let total = contribution + children.iter().map(|c| c.total).sum::<u64>();
    BoundCertificate {
        case: Case::Recurse,
        m,
        n,
        r,
        contribution,
        children,
        total,
        degraded: false,
        cells: Some(cover.cells.len()),
    }
}
