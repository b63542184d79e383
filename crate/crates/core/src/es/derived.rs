use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::relation::{
    pair_universe, FiniteRelation2, FiniteRelation3, PairUniverse, Subset, Universe,
};

/// Default bound on `|Y|²·|Z|²` for a dense `G`.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// `G = {((y,y'),(z,z')) : ∃x. F(x,y,z) ∧ F(x,y',z')}` as a sorted edge list
/// over the pair universes of `Y` and `Z`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedG {
    y: Universe,
    z: Universe,
    py: PairUniverse,
    pz: PairUniverse,
    edges: Vec<(usize, usize)>,
}

impl DerivedG {
    /// Groups `F` by `x` and takes every ordered pair inside each group.
    /// `budget` caps the number of candidate quadruples `Σ_x |F_x|²`.
    pub fn new(f: &FiniteRelation3, budget: u128) -> Result<Self> {
        let py = pair_universe(f.y())?;
        let pz = pair_universe(f.z())?;
        let groups: Vec<_> = f.by_x().map(|(_, g)| g).collect();
        let needed: u128 = groups.iter().map(|g| (g.len() as u128).pow(2)).sum();
        if needed > budget {
            return Err(Error::Budget { needed, budget });
        }
        let mut edges: Vec<(usize, usize)> = groups
            .par_iter()
            .flat_map_iter(|g| {
                g.iter().flat_map(|s| {
                    g.iter()
                        .map(|t| (py.encode(s[1], t[1]), pz.encode(s[2], t[2])))
                })
            })
            .collect();
        edges.par_sort_unstable();
        edges.dedup();
        Ok(DerivedG {
            y: f.y().clone(),
            z: f.z().clone(),
            py,
            pz,
            edges,
        })
    }

    pub fn y(&self) -> &Universe {
        &self.y
    }

    pub fn z(&self) -> &Universe {
        &self.z
    }

    pub fn py(&self) -> &PairUniverse {
        &self.py
    }

    pub fn pz(&self) -> &PairUniverse {
        &self.pz
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Sorted `(y-pair, z-pair)` indices.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Quadruples `(y, y', z, z')`, in edge order.
    pub fn quadruples(&self) -> impl Iterator<Item = [usize; 4]> + '_ {
        self.edges.iter().map(|&(p, q)| {
            let (y, y2) = self.py.decode(p);
            let (z, z2) = self.pz.decode(q);
            [y, y2, z, z2]
        })
    }

    /// Largest `|{z' : G(y,y',z,z')}|` over `(y,y',z)` and largest
    /// `|{y' : G(y,y',z,z')}|` over `(z,z',y)`.
    pub fn fiber_maxima(&self) -> (usize, usize) {
        let mut by_yz: HashMap<(usize, usize), usize> = HashMap::new();
        let mut by_zy: HashMap<(usize, usize), usize> = HashMap::new();
        for (&(p, q), [y, _, z, _]) in self.edges.iter().zip(self.quadruples()) {
            *by_yz.entry((p, z)).or_default() += 1;
            *by_zy.entry((q, y)).or_default() += 1;
        }
        let max_of = |m: &HashMap<_, usize>| m.values().copied().max().unwrap_or(0);
        (max_of(&by_yz), max_of(&by_zy))
    }

    /// Sparse file form over the two pair universes.
    pub fn to_file(&self) -> crate::RelationFile {
        crate::RelationFile::Rel2 {
            universes: vec![self.py.universe().clone(), self.pz.universe().clone()],
            pairs: self.edges.iter().map(|&(p, q)| [p, q]).collect(),
        }
    }

    /// `|G ∩ (B² × C²)|`.
    pub fn count_square(&self, b: &Subset, c: &Subset) -> usize {
        self.quadruples()
            .filter(|q| b.contains(q[0]) && b.contains(q[1]) && c.contains(q[2]) && c.contains(q[3]))
            .count()
    }

    /// Dense form, refused when `|Y|²·|Z|²` exceeds `budget`.
    pub fn to_relation(&self, budget: u128) -> Result<FiniteRelation2> {
        let (ru, rv) = (self.py.universe(), self.pz.universe());
        let needed = ru.size as u128 * rv.size as u128;
        if needed > budget {
            return Err(Error::Budget { needed, budget });
        }
        let mut rows = vec![BitSet::new(rv.size); ru.size];
        for &(p, q) in &self.edges {
            rows[p].insert(q);
        }
        Ok(FiniteRelation2::from_rows(ru.clone(), rv.clone(), rows))
    }
}

/// Dense `G` over `pair_universe(Y) × pair_universe(Z)`.
pub fn derive_g(f: &FiniteRelation3, budget: u128) -> Result<FiniteRelation2> {
    let py = pair_universe(f.y())?;
    let pz = pair_universe(f.z())?;
    let needed = py.universe().size as u128 * pz.universe().size as u128;
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    DerivedG::new(f, budget)?.to_relation(budget)
}

fn require_degree(d: Option<u32>) -> Result<u64> {
    d.map(u64::from)
        .ok_or_else(|| Error::Precondition("relation has no finite degree d".into()))
}

fn check_pairs(f: &FiniteRelation3, g: &DerivedG) -> Result<()> {
    f.y().full().check_in(&g.y)?;
    f.z().full().check_in(&g.z)
}

/// Point-set count for one choice of `C`: the largest `|G ∩ ({(y,y')} × C²)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSetCheck {
    pub c_size: usize,
    pub max_count: usize,
    /// `d²·|C|`
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub d: u32,
    /// `d²`
    pub fiber_bound: u64,
    /// Largest `|{z' : G(y,y',z,z')}|` over `(y,y',z)`.
    pub max_fiber_z: usize,
    /// Largest `|{y' : G(y,y',z,z')}|` over `(z,z',y)`.
    pub max_fiber_y: usize,
    /// Full `C = Z` first, then the sampled sets.
    pub point_sets: Vec<PointSetCheck>,
}

impl FiberReport {
    pub fn holds(&self) -> bool {
        self.max_fiber_z as u64 <= self.fiber_bound
            && self.max_fiber_y as u64 <= self.fiber_bound
            && self.point_sets.iter().all(|p| p.max_count as u64 <= p.bound)
    }
}

/// Checks the `d²` fiber law of `G` and the point-set bound
/// `|G ∩ ({(y,y')} × C²)| <= d²|C|` for `C = Z` and `samples` seeded random `C`.
pub fn check_g_fiber_bounds(
    f: &FiniteRelation3,
    g: &DerivedG,
    d: Option<u32>,
    samples: usize,
    seed: u64,
) -> Result<FiberReport> {
    let dd = require_degree(d)?;
    check_pairs(f, g)?;
    let (max_fiber_z, max_fiber_y) = g.fiber_maxima();

    let zn = f.z().size;
    let mut sets = vec![BitSet::full(zn)];
    let mut rng = crate::rng::stream(seed, 20);
    for _ in 0..samples {
        let p: f64 = rng.gen_range(0.1..0.9);
        sets.push(BitSet::from_indices(zn, (0..zn).filter(|_| rng.gen_bool(p))));
    }
    let point_sets = sets
        .iter()
        .map(|c| {
            let mut per_pair: HashMap<usize, usize> = HashMap::new();
            for (&(p, _), q) in g.edges.iter().zip(g.quadruples()) {
                if c.contains(q[2]) && c.contains(q[3]) {
                    *per_pair.entry(p).or_default() += 1;
                }
            }
            PointSetCheck {
                c_size: c.count(),
                max_count: per_pair.values().copied().max().unwrap_or(0),
                bound: dd * dd * c.count() as u64,
            }
        })
        .collect();

    Ok(FiberReport {
        d: dd as u32,
        fiber_bound: dd * dd,
        max_fiber_z,
        max_fiber_y,
        point_sets,
    })
}

/// `|F'|`, `|W'|`, `|G'|` on `A × B × C` and the three inequalities linking them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CauchySchwarzReport {
    pub d: u32,
    pub a_size: usize,
    /// `|F'|`
    pub lhs: u64,
    /// `d·|A|^{1/2}·|G'|^{1/2}`
    pub rhs: f64,
    pub w_count: u64,
    pub g_count: u64,
    /// `rhs - lhs`
    pub slack: f64,
    /// `|F'|² <= |A|·|W'|`
    pub cauchy_schwarz_step: bool,
    /// `|W'| <= d·|G'|`
    pub fiber_step: bool,
    /// `|F'|² <= d²·|A|·|G'|`
    pub composed: bool,
}

impl CauchySchwarzReport {
    pub fn holds(&self) -> bool {
        self.cauchy_schwarz_step && self.fiber_step && self.composed
    }

    /// True when the composed inequality is tight.
    pub fn is_equality(&self) -> bool {
        (self.lhs as u128).pow(2)
            == (self.d as u128).pow(2) * self.a_size as u128 * self.g_count as u128
    }
}

/// `F' = F ∩ (A×B×C)`, `W' = Σ_{x∈A} |F'_x|²`, and `G' = G ∩ (B²×C²)` with
/// the witness `x` ranging over all of `X`. All comparisons are exact integers.
pub fn cauchy_schwarz_check(
    f: &FiniteRelation3,
    a: &Subset,
    b: &Subset,
    c: &Subset,
    d: Option<u32>,
) -> Result<CauchySchwarzReport> {
    let dd = require_degree(d)?;
    a.check_in(f.x())?;
    b.check_in(f.y())?;
    c.check_in(f.z())?;
    let inside = |t: &[usize; 3]| b.contains(t[1]) && c.contains(t[2]);

    let mut lhs = 0u64;
    let mut w_count = 0u64;
    let mut restricted = Vec::new();
    for (x, group) in f.by_x() {
        let kept: Vec<[usize; 3]> = group.iter().filter(|t| inside(t)).copied().collect();
        if a.contains(x) {
            lhs += kept.len() as u64;
            w_count += (kept.len() as u64).pow(2);
        }
        restricted.extend(kept);
    }
    let sub = FiniteRelation3::build(f.x().clone(), f.y().clone(), f.z().clone(), &restricted)?;
    let g_count = DerivedG::new(&sub, u128::MAX)?.len() as u64;

    let a_size = a.len() as u64;
    let rhs = dd as f64 * (a_size as f64).sqrt() * (g_count as f64).sqrt();
    let sq = |v: u64| v as u128 * v as u128;
    Ok(CauchySchwarzReport {
        d: dd as u32,
        a_size: a.len(),
        lhs,
        rhs,
        w_count,
        g_count,
        slack: rhs - lhs as f64,
        cauchy_schwarz_step: sq(lhs) <= a_size as u128 * w_count as u128,
        fiber_step: w_count as u128 <= dd as u128 * g_count as u128,
        composed: sq(lhs) <= sq(dd) * a_size as u128 * g_count as u128,
    })
}

/// `|G ∩ (B²×C²)|` split into the part avoiding the exceptional sets
/// `Y₀ ⊆ Y²`, `Z₀ ⊆ Z²` and the boundary touching them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrimReport {
    pub total: usize,
    /// `|G ∩ ((B²∖Y₀) × (C²∖Z₀))|`
    pub core: usize,
    pub boundary: usize,
    /// `|B² ∩ Y₀|`
    pub y0_hits: usize,
    /// `|C² ∩ Z₀|`
    pub z0_hits: usize,
    /// `d²·|B²∩Y₀|·|C| + d²·|C²∩Z₀|·|B|`
    pub boundary_bound: u64,
}

impl TrimReport {
    pub fn holds(&self) -> bool {
        self.core + self.boundary == self.total && self.boundary as u64 <= self.boundary_bound
    }
}

pub fn large_subset_trim(
    g: &DerivedG,
    b: &Subset,
    c: &Subset,
    y0: &Subset,
    z0: &Subset,
    d: Option<u32>,
) -> Result<TrimReport> {
    let dd = require_degree(d)?;
    b.check_in(&g.y)?;
    c.check_in(&g.z)?;
    y0.check_in(g.py.universe())?;
    z0.check_in(g.pz.universe())?;
    let b2 = g.py.square(b);
    let c2 = g.pz.square(c);

    let (mut total, mut core) = (0, 0);
    for &(p, q) in &g.edges {
        if b2.contains(p) && c2.contains(q) {
            total += 1;
            if !y0.contains(p) && !z0.contains(q) {
                core += 1;
            }
        }
    }
    let y0_hits = b2.bits().intersection_count(y0.bits());
    let z0_hits = c2.bits().intersection_count(z0.bits());
    let d2 = dd * dd;
    Ok(TrimReport {
        total,
        core,
        boundary: total - core,
        y0_hits,
        z0_hits,
        boundary_bound: d2 * y0_hits as u64 * c.len() as u64 + d2 * z0_hits as u64 * b.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use rand::Rng;

    use super::*;
    use crate::es::delta_degree;
    use crate::relation::Triple;

    fn rel3(n: [usize; 3], triples: &[Triple]) -> FiniteRelation3 {
        FiniteRelation3::build(
            Universe::new("X", n[0]),
            Universe::new("Y", n[1]),
            Universe::new("Z", n[2]),
            triples,
        )
        .unwrap()
    }

    fn sum_mod(n: usize) -> FiniteRelation3 {
        let t: Vec<Triple> = (0..n)
            .flat_map(|x| (0..n).map(move |y| [x, y, (x + y) % n]))
            .collect();
        rel3([n; 3], &t)
    }

    /// Every quadruple of `Y²×Z²` tested against the definition.
    fn g_oracle(f: &FiniteRelation3) -> BTreeSet<[usize; 4]> {
        let n = f.universes().clone().map(|u| u.size);
        let mut out = BTreeSet::new();
        for y in 0..n[1] {
            for y2 in 0..n[1] {
                for z in 0..n[2] {
                    for z2 in 0..n[2] {
                        if (0..n[0]).any(|x| f.contains([x, y, z]) && f.contains([x, y2, z2])) {
                            out.insert([y, y2, z, z2]);
                        }
                    }
                }
            }
        }
        out
    }

    /// `|W ∩ (A × B² × C²)|` by enumeration of 5-tuples.
    fn w_oracle(f: &FiniteRelation3, a: &Subset, b: &Subset, c: &Subset) -> u64 {
        let mut count = 0;
        for x in a.iter() {
            for y in b.iter() {
                for y2 in b.iter() {
                    for z in c.iter() {
                        for z2 in c.iter() {
                            if f.contains([x, y, z]) && f.contains([x, y2, z2]) {
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
        count
    }

    fn random_sparse(rng: &mut impl Rng) -> FiniteRelation3 {
        let n = [rng.gen_range(1..9), rng.gen_range(1..9), rng.gen_range(1..9)];
        let t: Vec<Triple> = (0..rng.gen_range(0..30))
            .map(|_| [rng.gen_range(0..n[0]), rng.gen_range(0..n[1]), rng.gen_range(0..n[2])])
            .collect();
        rel3(n, &t)
    }

    fn random_subset(rng: &mut impl Rng, u: &Universe) -> Subset {
        Subset::from_indices(u, (0..u.size).filter(|_| rng.gen_bool(0.6))).unwrap()
    }

    #[test]
    fn sum_mod_five_g() {
        let f = sum_mod(5);
        let g = DerivedG::new(&f, DEFAULT_BUDGET).unwrap();
        assert_eq!(g.len(), 125);
        for [y, y2, z, z2] in g.quadruples() {
            assert_eq!((z + 5 - y) % 5, (z2 + 5 - y2) % 5);
        }
        let dense = derive_g(&f, DEFAULT_BUDGET).unwrap();
        assert_eq!(dense.edge_count(), 125);
        assert_eq!(dense.u().name, "Y^2");
        assert_eq!(dense.v().size, 25);
    }

    #[test]
    fn trivial_g() {
        assert!(DerivedG::new(&rel3([3; 3], &[]), 10).unwrap().is_empty());
        let g = DerivedG::new(&rel3([3, 4, 5], &[[1, 2, 3]]), 10).unwrap();
        assert_eq!(g.quadruples().collect::<Vec<_>>(), vec![[2, 2, 3, 3]]);
        assert_eq!(g.edges(), &[(2 * 4 + 2, 3 * 5 + 3)]);
    }

    #[test]
    fn g_matches_brute_force() {
        let mut rng = crate::rng::stream(5, 0);
        for _ in 0..60 {
            let f = random_sparse(&mut rng);
            let g = DerivedG::new(&f, DEFAULT_BUDGET).unwrap();
            let got: BTreeSet<_> = g.quadruples().collect();
            assert_eq!(got, g_oracle(&f));
            assert_eq!(got.len(), g.len());
        }
    }

    #[test]
    fn budgets() {
        let f = sum_mod(5);
        assert!(matches!(
            derive_g(&f, 624),
            Err(Error::Budget { needed: 625, budget: 624 })
        ));
        assert!(derive_g(&f, 625).is_ok());
        assert!(matches!(
            DerivedG::new(&f, 124),
            Err(Error::Budget { needed: 125, .. })
        ));
    }

    #[test]
    fn fiber_laws_on_group_relations() {
        let f = sum_mod(5);
        let g = DerivedG::new(&f, DEFAULT_BUDGET).unwrap();
        let rep = check_g_fiber_bounds(&f, &g, Some(1), 10, 3).unwrap();
        assert_eq!((rep.max_fiber_z, rep.max_fiber_y, rep.fiber_bound), (1, 1, 1));
        assert_eq!(rep.point_sets[0].max_count, 5);
        assert_eq!(rep.point_sets.len(), 11);
        assert!(rep.holds());

        // x·y·z = 1 in the units mod 7, indices 0..6 standing for 1..=6
        let mut t = Vec::new();
        for x in 1..7usize {
            for y in 1..7usize {
                let z = (1..7usize).find(|z| x * y * z % 7 == 1).unwrap();
                t.push([x - 1, y - 1, z - 1]);
            }
        }
        let f = rel3([6; 3], &t);
        assert_eq!(f.len(), 36);
        let d = delta_degree(&f, 4).unwrap().d;
        assert_eq!(d, Some(1));
        let g = DerivedG::new(&f, DEFAULT_BUDGET).unwrap();
        let rep = check_g_fiber_bounds(&f, &g, d, 5, 9).unwrap();
        assert_eq!(rep.max_fiber_z, 1);
        assert!(rep.holds());
    }

    #[test]
    fn fiber_law_fuzz() {
        let mut rng = crate::rng::stream(17, 0);
        let mut checked = 0;
        while checked < 100 {
            let f = random_sparse(&mut rng);
            let Some(d) = delta_degree(&f, 3).unwrap().d else { continue };
            let g = DerivedG::new(&f, DEFAULT_BUDGET).unwrap();
            let rep = check_g_fiber_bounds(&f, &g, Some(d), 4, checked).unwrap();
            assert!(rep.holds(), "{rep:?}");
            checked += 1;
        }
    }

    #[test]
    fn missing_degree_is_a_precondition_error() {
        let f = sum_mod(3);
        let g = DerivedG::new(&f, DEFAULT_BUDGET).unwrap();
        assert!(matches!(
            check_g_fiber_bounds(&f, &g, None, 0, 0),
            Err(Error::Precondition(_))
        ));
        let full = f.x().full();
        assert!(cauchy_schwarz_check(&f, &full, &f.y().full(), &f.z().full(), None).is_err());
    }

    #[test]
    fn cauchy_schwarz_equality_mod_five() {
        let f = sum_mod(5);
        let rep =
            cauchy_schwarz_check(&f, &f.x().full(), &f.y().full(), &f.z().full(), Some(1)).unwrap();
        assert_eq!((rep.lhs, rep.g_count, rep.w_count), (25, 125, 125));
        assert!((rep.rhs - 25.0).abs() < 1e-9);
        assert!(rep.holds());
        assert!(rep.is_equality());
    }

    #[test]
    fn singleton_a_is_tight_in_the_first_step() {
        let f = sum_mod(6);
        let a = Subset::from_indices(f.x(), [2]).unwrap();
        let b = Subset::from_indices(f.y(), [0, 1, 3, 4]).unwrap();
        let c = Subset::from_indices(f.z(), [1, 2, 3, 5]).unwrap();
        let rep = cauchy_schwarz_check(&f, &a, &b, &c, Some(1)).unwrap();
        assert_eq!(rep.w_count, rep.lhs * rep.lhs);
        assert_eq!(rep.lhs as u128 * rep.lhs as u128, rep.a_size as u128 * rep.w_count as u128);
    }

    #[test]
    fn cauchy_schwarz_matches_brute_force() {
        let mut rng = crate::rng::stream(23, 0);
        let mut checked = 0;
        while checked < 100 {
            let f = random_sparse(&mut rng);
            let Some(d) = delta_degree(&f, 3).unwrap().d else { continue };
            let (a, b, c) = (
                random_subset(&mut rng, f.x()),
                random_subset(&mut rng, f.y()),
                random_subset(&mut rng, f.z()),
            );
            let rep = cauchy_schwarz_check(&f, &a, &b, &c, Some(d)).unwrap();
            assert_eq!(rep.lhs as usize, f.count_grid(&a, &b, &c).unwrap());
            assert_eq!(rep.w_count, w_oracle(&f, &a, &b, &c));
            let g_prime = g_oracle(&f)
                .into_iter()
                .filter(|q| b.contains(q[0]) && b.contains(q[1]) && c.contains(q[2]) && c.contains(q[3]))
                .count();
            assert_eq!(rep.g_count as usize, g_prime);
            assert!(rep.holds(), "{rep:?}");
            checked += 1;
        }
    }

    #[test]
    fn trim_without_exceptional_sets_is_exact() {
        let f = sum_mod(5);
        let g = DerivedG::new(&f, DEFAULT_BUDGET).unwrap();
        let (b, c) = (f.y().full(), f.z().full());
        let rep = large_subset_trim(&g, &b, &c, &g.py().universe().empty(), &g.pz().universe().empty(), Some(1))
            .unwrap();
        assert_eq!((rep.total, rep.core, rep.boundary, rep.boundary_bound), (125, 125, 0, 0));
        assert!(rep.holds());
    }

    #[test]
    fn trim_with_diagonal() {
        let f = sum_mod(5);
        let g = DerivedG::new(&f, DEFAULT_BUDGET).unwrap();
        let (b, c) = (f.y().full(), f.z().full());
        let diag = Subset::from_indices(g.py().universe(), (0..5).map(|i| g.py().encode(i, i))).unwrap();
        let rep = large_subset_trim(&g, &b, &c, &diag, &g.pz().universe().empty(), Some(1)).unwrap();
        assert_eq!(rep.boundary_bound, 25);
        assert_eq!(rep.boundary, 25);
        assert!(rep.holds());
    }

    #[test]
    fn trim_fuzz() {
        let mut rng = crate::rng::stream(29, 0);
        let mut checked = 0;
        while checked < 60 {
            let f = random_sparse(&mut rng);
            let Some(d) = delta_degree(&f, 3).unwrap().d else { continue };
            let g = DerivedG::new(&f, DEFAULT_BUDGET).unwrap();
            let b = random_subset(&mut rng, f.y());
            let c = random_subset(&mut rng, f.z());
            let (py, pz) = (g.py().clone(), g.pz().clone());
            let y0 = Subset::from_indices(
                py.universe(),
                (0..2 * b.len()).map(|_| rng.gen_range(0..py.universe().size)),
            )
            .unwrap();
            let z0 = Subset::from_indices(
                pz.universe(),
                (0..c.len()).map(|_| rng.gen_range(0..pz.universe().size)),
            )
            .unwrap();
            let rep = large_subset_trim(&g, &b, &c, &y0, &z0, Some(d)).unwrap();
            assert!(rep.y0_hits <= 2 * b.len());
            assert_eq!(rep.total, g.count_square(&b, &c));
            assert!(rep.holds(), "{rep:?}");
            checked += 1;
        }
    }

    #[test]
    fn trim_rejects_foreign_subsets() {
        let f = sum_mod(4);
        let g = DerivedG::new(&f, DEFAULT_BUDGET).unwrap();
        let (b, c) = (f.y().full(), f.z().full());
        let wrong = f.y().empty();
        assert!(matches!(
            large_subset_trim(&g, &b, &c, &wrong, &g.pz().universe().empty(), Some(1)),
            Err(Error::UniverseMismatch { .. })
        ));
    }
}
