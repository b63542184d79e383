use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::seq::index;

use crate::error::{Error, Result};

/// How the values of one coordinate are generated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridSpec {
    /// `lo, lo+step, ...` below `hi`.
    Range { lo: i64, hi: i64, step: i64 },
    /// `base^0, ..., base^(count-1)`.
    Geometric { base: i64, count: usize },
    Explicit(Vec<BigInt>),
    /// `count` distinct values drawn uniformly from `[lo, hi)`.
    Random {
        seed: u64,
        count: usize,
        lo: i64,
        hi: i64,
    },
    /// All residues `0..m` of the expression's modulus.
    FullMod,
    /// The `count` values hit most often by the side that determines this
    /// coordinate, evaluated over the other two grids.
    TopFrequent { count: usize },
}

impl GridSpec {
    pub fn range(lo: i64, hi: i64) -> Self {
        GridSpec::Range { lo, hi, step: 1 }
    }

    /// Parses `range:lo:hi[:step]`, `geom:base:count`, `list:v1,v2,...`,
    /// `rand:count:lo:hi`, `fullmod` or `top:count`.
    pub fn parse(text: &str, seed: u64) -> Result<Self> {
        let bad = || Error::input(format!("bad grid spec `{text}`"));
        let int = |s: &str| s.trim().parse::<i64>().map_err(|_| bad());
        let count = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
        let parts: Vec<&str> = text.trim().split(':').collect();
        match parts.as_slice() {
            ["range", lo, hi] => Ok(GridSpec::Range {
                lo: int(lo)?,
                hi: int(hi)?,
                step: 1,
            }),
            ["range", lo, hi, step] => Ok(GridSpec::Range {
                lo: int(lo)?,
                hi: int(hi)?,
                step: int(step)?,
            }),
            ["geom", base, n] => Ok(GridSpec::Geometric {
                base: int(base)?,
                count: count(n)?,
            }),
            ["list", items] => items
                .split(',')
                .map(|s| s.trim().parse::<BigInt>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()
                .map(GridSpec::Explicit),
            ["rand", n, lo, hi] => Ok(GridSpec::Random {
                seed,
                count: count(n)?,
                lo: int(lo)?,
                hi: int(hi)?,
            }),
            ["fullmod"] => Ok(GridSpec::FullMod),
            ["top", n] => Ok(GridSpec::TopFrequent { count: count(n)? }),
            _ => Err(bad()),
        }
    }

    /// Concrete values for every kind except `TopFrequent`, which depends on
    /// the relation and is resolved during instantiation.
    pub fn values(&self, modulus: Option<&BigInt>) -> Result<Vec<BigInt>> {
        let vals: Vec<BigInt> = match self {
            GridSpec::Range { lo, hi, step } => {
                if *step <= 0 {
                    return Err(Error::input("range step must be positive"));
                }
                let mut out = Vec::new();
                let mut v = *lo as i128;
                while v < *hi as i128 {
                    out.push(BigInt::from(v));
                    v += *step as i128;
                }
                out
            }
            GridSpec::Geometric { base, count } => {
                if base.abs() < 2 && *count > 1 {
                    return Err(Error::input("geometric grid needs |base| >= 2"));
                }
                let b = BigInt::from(*base);
                let mut out = Vec::with_capacity(*count);
                let mut v = BigInt::one();
                for _ in 0..*count {
                    out.push(v.clone());
                    v *= &b;
                }
                out
            }
            GridSpec::Explicit(list) => list.clone(),
            GridSpec::Random { seed, count, lo, hi } => {
                let width = (*hi as i128 - *lo as i128).max(0);
                let width = usize::try_from(width)
                    .map_err(|_| Error::input("random grid range too wide"))?;
                if *count > width {
                    return Err(Error::input(format!(
                        "cannot draw {count} distinct values from [{lo}, {hi})"
                    )));
                }
                let mut rng = crate::rng::stream(*seed, 0);
                let mut picks = index::sample(&mut rng, width, *count).into_vec();
                picks.sort_unstable();
                picks
                    .into_iter()
                    .map(|p| BigInt::from(*lo as i128 + p as i128))
                    .collect()
            }
            GridSpec::FullMod => {
                let m = modulus.ok_or_else(|| {
                    Error::input("grid kind fullmod needs an expression with a `mod` suffix")
                })?;
                let m = m
                    .to_usize()
                    .filter(|&m| m <= 1 << 24)
                    .ok_or_else(|| Error::input("modulus too large for a fullmod grid"))?;
                (0..m).map(BigInt::from).collect()
            }
            GridSpec::TopFrequent { .. } => {
                return Err(Error::input(
                    "top:count grids are only allowed on the variable the expression solves for",
                ))
            }
        };
        if vals.is_empty() {
            return Err(Error::input(format!("grid `{self}` is empty")));
        }
        let mut seen = HashSet::with_capacity(vals.len());
        if let Some(dup) = vals.iter().find(|v| !seen.insert(*v)) {
            return Err(Error::input(format!("grid `{self}` repeats value {dup}")));
        }
        Ok(vals)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridSpec::Range { lo, hi, step } => write!(f, "range:{lo}:{hi}:{step}"),
            GridSpec::Geometric { base, count } => write!(f, "geom:{base}:{count}"),
            GridSpec::Explicit(list) => {
                let items: Vec<String> = list.iter().map(|v| v.to_string()).collect();
                write!(f, "list:{}", items.join(","))
            }
            GridSpec::Random { count, lo, hi, .. } => write!(f, "rand:{count}:{lo}:{hi}"),
            GridSpec::FullMod => f.write_str("fullmod"),
            GridSpec::TopFrequent { count } => write!(f, "top:{count}"),
        }
    }
}
