//! Scaling sweeps with log-log slope fits, certification rows and the
//! composite ternary-relation bundle.

use num_traits::Float;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cuttings::CuttingProvider;
use crate::error::{Error, Result};
use crate::es::{
    cauchy_schwarz_check, check_g_fiber_bounds, cylindrical_witness, delta_degree,
    CauchySchwarzReport, CylinderWitness, DeltaDegree, DerivedG, FiberReport, RelationFamily,
};
use crate::relation::{FiniteRelation2, FiniteRelation3, Subset};
use crate::scalar::Scalar;
use crate::zarankiewicz::{
    certified_count, default_r, distal_delta_bound, find_kst_within, kst_bound, BoundCertificate,
    ExponentParams, KstWitness,
};

/// Least-squares fit of `log count` against `log n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit<F> {
    pub sizes: Vec<u64>,
    pub counts: Vec<u64>,
    pub slope: F,
    pub intercept: F,
    /// Largest absolute residual in log space.
    pub residual_max: F,
}

impl<F: Float> ExponentFit<F> {
    /// Needs at least three strictly increasing positive sizes and positive counts.
    pub fn fit(sizes: &[u64], counts: &[u64]) -> Result<Self> {
        if sizes.len() != counts.len() {
            return Err(Error::param("sizes and counts differ in length"));
        }
        if sizes.len() < 3 {
            return Err(Error::param("a fit needs at least three sizes"));
        }
        if sizes[0] == 0 || sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::param("sizes must be positive and strictly increasing"));
        }
        if counts.contains(&0) {
            return Err(Error::param("cannot take the logarithm of a zero count"));
        }
        let log = |v: u64| F::from(v).expect("u64 fits in a float").ln();
        let xs: Vec<F> = sizes.iter().map(|&s| log(s)).collect();
        let ys: Vec<F> = counts.iter().map(|&c| log(c)).collect();
        let k = F::from(xs.len()).unwrap();
        let mean = |v: &[F]| v.iter().fold(F::zero(), |a, &b| a + b) / k;
        let (mx, my) = (mean(&xs), mean(&ys));
        let (mut sxy, mut sxx) = (F::zero(), F::zero());
        for (&x, &y) in xs.iter().zip(&ys) {
            sxy = sxy + (x - mx) * (y - my);
            sxx = sxx + (x - mx) * (x - mx);
        }
        let slope = sxy / sxx;
        let intercept = my - slope * mx;
        let residual_max = xs
            .iter()
            .zip(&ys)
            .map(|(&x, &y)| (y - intercept - slope * x).abs())
            .fold(F::zero(), F::max);
        Ok(ExponentFit {
            sizes: sizes.to_vec(),
            counts: counts.to_vec(),
            slope,
            intercept,
            residual_max,
        })
    }
}

/// Exact full-universe counts of `family` at each size, fitted in log-log space.
/// Sizes are counted concurrently; results stay in size order.
pub fn run_scaling<F: Float>(family: &RelationFamily, sizes: &[usize]) -> Result<ExponentFit<F>> {
    if sizes.len() < 3 {
        return Err(Error::param("a sweep needs at least three sizes"));
    }
    let counts = sizes
        .par_iter()
        .map(|&n| family.count(n).map(|c| c as u64))
        .collect::<Result<Vec<u64>>>()?;
    let sizes: Vec<u64> = sizes.iter().map(|&n| n as u64).collect();
    ExponentFit::fit(&sizes, &counts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    /// The instance contains `K_{s,t}`, so the bounds do not apply.
    Inapplicable,
    /// A checked inequality failed.
    Failed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Inapplicable => "inapplicable",
            Status::Failed => "failed",
        }
    }
}

pub struct CertifyConfig<'a, T> {
    pub instance: String,
    pub relation: &'a FiniteRelation2,
    pub a: Subset,
    pub b: Subset,
    pub params: ExponentParams<T>,
    pub cutter: &'a dyn CuttingProvider,
    /// Chosen from a probe cover at `r = 2` when absent.
    pub r: Option<u64>,
    pub leaf_size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifyRow {
    pub instance: String,
    pub m: usize,
    pub n: usize,
    pub exact: u64,
    pub r: u64,
    pub kst_bound: f64,
    pub delta_bound: Option<f64>,
    pub status: Status,
    pub certificate: Option<BoundCertificate>,
    pub witness: Option<KstWitness>,
}

impl CertifyRow {
    pub fn bound_cert(&self) -> Option<u64> {
        self.certificate.as_ref().map(|c| c.total)
    }
}

/// `r = max(2, ⌈2·c₂^{1/D}⌉)` with `c₂ = cells / 2^D` of a probe cover at `r = 2`.
pub fn probe_r(rel: &FiniteRelation2, a: &Subset, cutter: &dyn CuttingProvider) -> u64 {
    let d = cutter.exponent();
    match cutter.cover(rel, a, 2) {
        Some(cover) => default_r(cover.cell_count() as f64 / 2f64.powi(d as i32), d),
        None => 2,
    }
}

/// Exact count, certified bound and reference bounds for one instance.
pub fn run_certify<T: Scalar>(config: &CertifyConfig<'_, T>) -> Result<CertifyRow> {
    let rel = config.relation;
    config.a.check_in(rel.u())?;
    config.b.check_in(rel.v())?;
    let (m, n) = (config.a.len(), config.b.len());
    let p = &config.params;
    let exact = rel.count_grid(&config.a, &config.b)? as u64;
    let kst = kst_bound::<f64>(p.s, p.t, m as u64, n as u64);
    let delta_bound = if p.t == 2 {
        Some(distal_delta_bound::<T, f64>(p, m.max(n) as u64)?)
    } else {
        None
    };
    let r = config.r.unwrap_or_else(|| probe_r(rel, &config.a, config.cutter));
    let mut row = CertifyRow {
        instance: config.instance.clone(),
        m,
        n,
        exact,
        r,
        kst_bound: kst,
        delta_bound,
        status: Status::Ok,
        certificate: None,
        witness: None,
    };
    let witness = find_kst_within(rel, config.a.bits(), config.b.bits(), p.s as usize, p.t as usize);
    if witness.is_some() {
        row.status = Status::Inapplicable;
        row.witness = witness;
        return Ok(row);
    }
    let cert = certified_count(rel, &config.a, &config.b, p, config.cutter, r, config.leaf_size)?;
    if cert.total < exact || !cert.is_consistent() || exact as f64 > kst + 1e-9 {
        row.status = Status::Failed;
    }
    row.certificate = Some(cert);
    Ok(row)
}

pub struct Pipeline3Config<'a> {
    pub instance: String,
    pub relation: &'a FiniteRelation3,
    pub threshold: usize,
    /// Block side searched for by the cylinder test.
    pub k: usize,
    /// Cap on `Σ_x |F_x|²` for the derived relation.
    pub budget: u128,
    /// Random point sets for the fiber check.
    pub samples: usize,
    pub seed: u64,
    /// Grids for the Cauchy–Schwarz check; full universes when absent.
    pub grids: Option<[Subset; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pipeline3Report {
    pub instance: String,
    pub size: [usize; 3],
    pub count: u64,
    pub degree: DeltaDegree,
    pub cylinder: Option<CylinderWitness>,
    pub g_count: u64,
    pub fibers: Option<FiberReport>,
    pub cauchy_schwarz: Option<CauchySchwarzReport>,
}

impl Pipeline3Report {
    /// Every inequality that was checked held. Without a degree there is
    /// nothing to check.
    pub fn all_hold(&self) -> bool {
        self.fibers.as_ref().is_none_or(FiberReport::holds)
            && self.cauchy_schwarz.as_ref().is_none_or(CauchySchwarzReport::holds)
    }

    pub fn status(&self) -> Status {
        if self.all_hold() {
            Status::Ok
        } else {
            Status::Failed
        }
    }
}

/// Degree, cylinder witness, `|G|`, the `G` fiber laws and the Cauchy–Schwarz
/// chain. The last two are skipped when the relation has no finite degree.
pub fn run_pipeline3(config: &Pipeline3Config<'_>) -> Result<Pipeline3Report> {
    let f = config.relation;
    let degree = delta_degree(f, config.threshold)?;
    let cylinder = cylindrical_witness(f, config.k)?;
    let g = DerivedG::new(f, config.budget)?;
    let (fibers, cauchy_schwarz) = match degree.d {
        Some(d) => {
            let [a, b, c] = match &config.grids {
                Some(grids) => grids.clone(),
                None => [f.x().full(), f.y().full(), f.z().full()],
            };
            (
                Some(check_g_fiber_bounds(f, &g, Some(d), config.samples, config.seed)?),
                Some(cauchy_schwarz_check(f, &a, &b, &c, Some(d))?),
            )
        }
        None => (None, None),
    };
    Ok(Pipeline3Report {
        instance: config.instance.clone(),
        size: f.universes().clone().map(|u| u.size),
        count: f.count_full() as u64,
        degree,
        cylinder,
        g_count: g.len() as u64,
        fibers,
        cauchy_schwarz,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuttings::{GreedyCutter, IntervalCutter};
    use crate::dsl::parse;
    use crate::es::{make_family, FamilySpec, Group, ScaledGrid, Twist, DEFAULT_BUDGET};
    use crate::{instances, Rational};

    fn cyclic() -> RelationFamily {
        make_family(FamilySpec::GroupLike {
            group: Group::Cyclic,
            twists: [Twist::Identity, Twist::Identity, Twist::Identity],
        })
        .unwrap()
    }

    #[test]
    fn fit_rejects_short_or_unsorted_input() {
        assert!(ExponentFit::<f64>::fit(&[1, 2], &[1, 2]).is_err());
        assert!(ExponentFit::<f64>::fit(&[1, 3, 2], &[1, 2, 3]).is_err());
        assert!(ExponentFit::<f64>::fit(&[1, 2, 3], &[1, 0, 3]).is_err());
        assert!(run_scaling::<f64>(&cyclic(), &[4, 8]).is_err());
    }

    #[test]
    fn constant_counts_have_zero_slope() {
        let fit = ExponentFit::<f64>::fit(&[4, 8, 16, 32], &[7, 7, 7, 7]).unwrap();
        assert_eq!(fit.slope, 0.0);
        assert!((fit.intercept - 7f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn cyclic_slope_is_two() {
        let fit: ExponentFit<f64> = run_scaling(&cyclic(), &[8, 16, 32, 64]).unwrap();
        assert_eq!(fit.counts, vec![64, 256, 1024, 4096]);
        assert!((fit.slope - 2.0).abs() < 1e-9);
        assert!(fit.residual_max < 1e-9);
        let fit32: ExponentFit<f32> = run_scaling(&cyclic(), &[8, 16, 32]).unwrap();
        assert!((fit32.slope - 2.0).abs() < 1e-4);
    }

    #[test]
    fn integer_sum_slope_matches_closed_form() {
        let fam = make_family(FamilySpec::Dsl {
            expr: parse("x + y = z").unwrap(),
            grids: [ScaledGrid::Prefix, ScaledGrid::Prefix, ScaledGrid::Prefix],
        })
        .unwrap();
        let sizes = [16usize, 32, 64, 128];
        let fit: ExponentFit<f64> = run_scaling(&fam, &sizes).unwrap();
        let closed: Vec<u64> = sizes.iter().map(|&n| (n * (n + 1) / 2) as u64).collect();
        assert_eq!(fit.counts, closed);
        let oracle = ExponentFit::<f64>::fit(&[16, 32, 64, 128], &closed).unwrap();
        assert_eq!(fit.slope, oracle.slope);
        assert!((fit.slope - 1.975).abs() < 5e-3, "{}", fit.slope);
    }

    #[test]
    fn certify_rows() {
        let pg = instances::projective_plane(7).unwrap();
        let params = ExponentParams::new(2, 2, 2, Rational::new(1, 12)).unwrap();
        let cutter = GreedyCutter { cap_cells: 64, d: 2 };
        let row = run_certify(&CertifyConfig {
            instance: "pg:7".into(),
            relation: &pg,
            a: pg.u().full(),
            b: pg.v().full(),
            params: params.clone(),
            cutter: &cutter,
            r: Some(4),
            leaf_size: 1,
        })
        .unwrap();
        assert_eq!(row.exact, 456);
        assert!(row.bound_cert().unwrap() >= 456);
        assert_eq!(row.status, Status::Ok);
        assert!(row.delta_bound.is_some());

        let id = instances::identity(64);
        let row = run_certify(&CertifyConfig {
            instance: "identity:64".into(),
            relation: &id,
            a: id.u().full(),
            b: id.v().full(),
            params: params.clone(),
            cutter: &IntervalCutter,
            r: None,
            leaf_size: 1,
        })
        .unwrap();
        assert_eq!(row.exact, 64);
        assert!(row.bound_cert().unwrap() >= 64);

        let dense = instances::random_bipartite(10, 10, 0.9, 1);
        let row = run_certify(&CertifyConfig {
            instance: "dense".into(),
            relation: &dense,
            a: dense.u().full(),
            b: dense.v().full(),
            params,
            cutter: &IntervalCutter,
            r: Some(2),
            leaf_size: 1,
        })
        .unwrap();
        assert_eq!(row.status, Status::Inapplicable);
        assert!(row.witness.unwrap().holds_in(&dense));
        assert!(row.certificate.is_none());
    }

    #[test]
    fn pipeline_on_sum_mod_seven() {
        let inst = crate::dsl::instantiate3(
            &parse("x + y = z mod 7").unwrap(),
            &crate::dsl::GridSpec::FullMod,
            &crate::dsl::GridSpec::FullMod,
            &crate::dsl::GridSpec::FullMod,
        )
        .unwrap();
        let rep = run_pipeline3(&Pipeline3Config {
            instance: "sum7".into(),
            relation: &inst.relation,
            threshold: 3,
            k: 2,
            budget: DEFAULT_BUDGET,
            samples: 3,
            seed: 1,
            grids: None,
        })
        .unwrap();
        assert_eq!(rep.degree.d, Some(1));
        assert_eq!(rep.cylinder, None);
        assert_eq!(rep.g_count, 343);
        assert!(rep.cauchy_schwarz.as_ref().unwrap().is_equality());
        assert!(rep.all_hold());
    }

    #[test]
    fn pipeline_without_degree_skips_checks() {
        let fam = make_family(FamilySpec::Cylindrical {
            block: crate::es::BlockSize::Fixed(4),
            noise: 0,
            seed: 0,
        })
        .unwrap();
        let f = fam.instance(6).unwrap();
        let rep = run_pipeline3(&Pipeline3Config {
            instance: "cyl".into(),
            relation: &f,
            threshold: 2,
            k: 4,
            budget: DEFAULT_BUDGET,
            samples: 0,
            seed: 0,
            grids: None,
        })
        .unwrap();
        assert_eq!(rep.degree.d, None);
        assert_eq!(rep.cylinder.as_ref().unwrap().axis, 1);
        assert!(rep.fibers.is_none() && rep.all_hold());
    }
}
