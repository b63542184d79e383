use num_traits::Float;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponents of the cutting-based Zarankiewicz bound
/// `|E ∩ A×B| <= c (|A|^α |B|^β + |A| + |B| log 2|A|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentParams<T> {
    /// Cutting exponent.
    pub d: u32,
    pub t: u32,
    pub s: u32,
    pub epsilon: T,
    pub alpha: T,
    pub beta: T,
    /// Only for `t = 2`: the saving in `n^{3/2 - δ}`.
    pub delta: Option<T>,
}

impl<T: Scalar> ExponentParams<T> {
    /// Validates `0 < ε < (t-1)/(t(Dt-1))` and derives
    /// `α = D(t-1)/(Dt-1) - ε`, `β = t(1-α)` and, for `t = 2`,
    /// `δ = 1/(2(2D-1)) - ε`.
    pub fn new(d: u32, t: u32, s: u32, epsilon: T) -> Result<Self> {
        if epsilon <= T::zero() || epsilon >= Self::epsilon_bound(d, t)? {
            return Err(Error::param(format!(
                "epsilon {epsilon:?} outside the admissible interval (0, {:?})",
                Self::epsilon_bound(d, t)?
            )));
        }
        Self::with_epsilon(d, t, s, epsilon)
    }

    /// The boundary `ε → 0⁺`: the exponents every admissible `ε` approaches.
    pub fn limit(d: u32, t: u32, s: u32) -> Result<Self> {
        Self::epsilon_bound(d, t)?;
        Self::with_epsilon(d, t, s, T::zero())
    }

    /// Supremum `(t-1)/(t(Dt-1))` of admissible `ε`.
    pub fn epsilon_bound(d: u32, t: u32) -> Result<T> {
        if d == 0 {
            return Err(Error::param("cutting exponent D must be positive"));
        }
        if t < 2 {
            return Err(Error::param("t must be at least 2"));
        }
        let (d, t) = (d as i64, t as i64);
        Ok(T::ratio(t - 1, t * (d * t - 1)))
    }

    /// The formulas at any `ε`, admissible or not. Only `D >= 1`, `t >= 2`
    /// and `s >= 1` are checked.
    pub fn evaluate(d: u32, t: u32, s: u32, epsilon: T) -> Result<Self> {
        Self::epsilon_bound(d, t)?;
        Self::with_epsilon(d, t, s, epsilon)
    }

    fn with_epsilon(d: u32, t: u32, s: u32, epsilon: T) -> Result<Self> {
        if s == 0 {
            return Err(Error::param("s must be at least 1"));
        }
        let (di, ti) = (d as i64, t as i64);
        let alpha = T::ratio(di * (ti - 1), di * ti - 1) - epsilon.clone();
        let beta = T::from_int(ti) * (T::one() - alpha.clone());
        let delta = (t == 2).then(|| T::ratio(1, 2 * (2 * di - 1)) - epsilon.clone());
        Ok(ExponentParams {
            d,
            t,
            s,
            epsilon,
            alpha,
            beta,
            delta,
        })
    }

    /// The same parameters in another scalar type.
    pub fn to_f64(&self) -> ExponentParams<f64> {
        ExponentParams {
            d: self.d,
            t: self.t,
            s: self.s,
            epsilon: self.epsilon.to_f64(),
            alpha: self.alpha.to_f64(),
            beta: self.beta.to_f64(),
            delta: self.delta.as_ref().map(Scalar::to_f64),
        }
    }
}

pub fn exponent_params<T: Scalar>(d: u32, t: u32, s: u32, epsilon: T) -> Result<ExponentParams<T>> {
    ExponentParams::new(d, t, s, epsilon)
}

/// Kővári–Sós–Turán: a `K_{s,t}`-free graph on `m + n` vertices (the `s`-side
/// in the `m`-part) has at most `s^{1/t} m^{1-1/t} n + t m` edges.
pub fn kst_bound<F: Float>(s: u32, t: u32, m: u64, n: u64) -> F {
    assert!(s >= 1 && t >= 1, "kst_bound needs s, t >= 1");
    if m == 0 {
        return F::zero();
    }
    let f = |v: u64| F::from(v).expect("integer fits in float");
    let inv_t = F::one() / f(t as u64);
    f(s as u64).powf(inv_t) * f(m).powf(F::one() - inv_t) * f(n) + f(t as u64) * f(m)
}

/// `n^{3/2 - δ}` for parameters with `t = 2`.
pub fn distal_delta_bound<T: Scalar, F: Float>(params: &ExponentParams<T>, n: u64) -> Result<F> {
    let delta = match (&params.delta, params.t) {
        (Some(d), 2) => d.to_f64(),
        _ => {
            return Err(Error::param(format!(
                "distal bound needs t = 2, got t = {}",
                params.t
            )))
        }
    };
    let n = F::from(n).expect("integer fits in float");
    Ok(n.powf(F::from(1.5 - delta).expect("finite exponent")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn limit_exponents_d2() {
        let p = ExponentParams::<Rational>::limit(2, 2, 2).unwrap();
        assert_eq!((p.alpha, p.beta, p.delta), (q(2, 3), q(2, 3), Some(q(1, 6))));
    }

    #[test]
    fn epsilon_one_twelfth_d2() {
        let p = exponent_params(2, 2, 2, q(1, 12)).unwrap();
        assert_eq!((p.alpha, p.beta, p.delta), (q(7, 12), q(5, 6), Some(q(1, 12))));
    }

    #[test]
    fn d1_admits_epsilon_one_sixth() {
        assert_eq!(ExponentParams::<Rational>::epsilon_bound(1, 2).unwrap(), q(1, 2));
        let p = exponent_params(1, 2, 2, q(1, 6)).unwrap();
        assert_eq!((p.alpha, p.beta, p.delta), (q(5, 6), q(1, 3), Some(q(1, 3))));
    }

    #[test]
    fn rejects_epsilon_outside_interval() {
        let err = exponent_params(2, 2, 2, q(1, 6)).unwrap_err();
        assert!(err.to_string().contains("(0, Ratio { numer: 1, denom: 6 })"), "{err}");
        assert!(exponent_params(2, 2, 2, q(0, 1)).is_err());
        assert!(exponent_params(2, 1, 2, q(1, 100)).is_err());
        assert!(exponent_params(0, 2, 2, q(1, 100)).is_err());
    }

    #[test]
    fn float_params_track_exact_ones() {
        let exact = exponent_params(3, 3, 2, q(1, 50)).unwrap();
        let float = exponent_params(3, 3, 2, 0.02f64).unwrap();
        assert!((exact.to_f64().alpha - float.alpha).abs() < 1e-12);
        assert!((exact.to_f64().beta - float.beta).abs() < 1e-12);
        assert_eq!(float.delta, None);
    }

    #[test]
    fn kst_examples() {
        let b: f64 = kst_bound(2, 2, 57, 57);
        let expect = 2f64.sqrt() * 57f64.sqrt() * 57.0 + 114.0;
        assert!((b - expect).abs() < 1e-9);
        assert!((b - 722.593).abs() < 1e-3);
        assert_eq!(kst_bound::<f64>(1, 1, 4, 7), 11.0);
        assert_eq!(kst_bound::<f64>(2, 2, 0, 9), 0.0);
        let b32: f32 = kst_bound(2, 2, 57, 57);
        assert!((b32 as f64 - expect).abs() < 1e-3);
    }

    #[test]
    fn delta_bound_examples() {
        let p = exponent_params(2, 2, 2, q(1, 12)).unwrap();
        let v: f64 = distal_delta_bound(&p, 4096).unwrap();
        assert!((v - 4096f64.powf(17.0 / 12.0)).abs() < 1e-6 * v);
        assert_eq!(distal_delta_bound::<_, f64>(&p, 1).unwrap(), 1.0);
        let lim = ExponentParams::<Rational>::limit(1, 2, 2).unwrap();
        assert_eq!(lim.delta, Some(q(1, 2)));
        let v: f64 = distal_delta_bound(&lim, 49).unwrap();
        assert!((v - 49.0).abs() < 1e-9);
        let t3 = exponent_params(2, 3, 2, q(1, 100)).unwrap();
        assert!(distal_delta_bound::<_, f64>(&t3, 10).is_err());
    }
}
