//! Polynomial relation definitions and their instantiation on finite grids.

mod ast;
mod grid;
mod parser;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

pub use ast::{Poly, RelationExpr, Var};
pub use grid::GridSpec;
pub use parser::parse;

use crate::error::{Error, Result};
use crate::relation::{FiniteRelation2, FiniteRelation3, Label, Triple, Universe};

/// Exact value of a polynomial side, canonicalized so equal integers hash equally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Key {
    Small(i128),
    Big(BigInt),
}

impl Key {
    fn from_big(b: BigInt) -> Key {
        match b.to_i128() {
            Some(v) => Key::Small(v),
            None => Key::Big(b),
        }
    }

    fn to_big(&self) -> BigInt {
        match self {
            Key::Small(v) => BigInt::from(*v),
            Key::Big(b) => b.clone(),
        }
    }
}

enum Arith {
    Exact,
    SmallMod(i128),
    BigMod(BigInt),
}

struct Coord {
    big: Vec<BigInt>,
    small: Vec<Option<i128>>,
}

impl Coord {
    fn new(values: Vec<BigInt>, arith: &Arith) -> Self {
        let small = values
            .iter()
            .map(|v| match arith {
                Arith::Exact => v.to_i128(),
                Arith::SmallMod(m) => v.mod_floor(&BigInt::from(*m)).to_i128(),
                Arith::BigMod(_) => None,
            })
            .collect();
        Coord { big: values, small }
    }
}

struct Evaluator {
    arith: Arith,
    coords: [Coord; 3],
}

fn pow_i128(mut base: i128, mut e: u32) -> Option<i128> {
    let mut acc: i128 = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.checked_mul(base)?;
        }
        e >>= 1;
        if e > 0 {
            base = base.checked_mul(base)?;
        }
    }
    Some(acc)
}

fn pow_mod_i128(mut base: i128, mut e: u32, m: i128) -> i128 {
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

impl Evaluator {
    fn new(modulus: Option<&BigInt>, values: [Vec<BigInt>; 3]) -> Self {
        let arith = match modulus {
            None => Arith::Exact,
            Some(m) => match m.to_i64() {
                Some(m) => Arith::SmallMod(m as i128),
                None => Arith::BigMod(m.clone()),
            },
        };
        let coords = values.map(|v| Coord::new(v, &arith));
        Evaluator { arith, coords }
    }

    fn small(&self, p: &Poly, idx: Triple) -> Option<i128> {
        Some(match p {
            Poly::Var(v) => self.coords[v.index()].small[idx[v.index()]]?,
            Poly::Int(n) => n.to_i128()?,
            Poly::Add(a, b) => self.small(a, idx)?.checked_add(self.small(b, idx)?)?,
            Poly::Sub(a, b) => self.small(a, idx)?.checked_sub(self.small(b, idx)?)?,
            Poly::Mul(a, b) => self.small(a, idx)?.checked_mul(self.small(b, idx)?)?,
            Poly::Pow(a, e) => pow_i128(self.small(a, idx)?, *e)?,
        })
    }

    fn big(&self, p: &Poly, idx: Triple) -> BigInt {
        match p {
            Poly::Var(v) => self.coords[v.index()].big[idx[v.index()]].clone(),
            Poly::Int(n) => n.clone(),
            Poly::Add(a, b) => self.big(a, idx) + self.big(b, idx),
            Poly::Sub(a, b) => self.big(a, idx) - self.big(b, idx),
            Poly::Mul(a, b) => self.big(a, idx) * self.big(b, idx),
            Poly::Pow(a, e) => num_traits::pow(self.big(a, idx), *e as usize),
        }
    }

    fn small_mod(&self, p: &Poly, idx: Triple, m: i128) -> i128 {
        match p {
            Poly::Var(v) => self.coords[v.index()].small[idx[v.index()]].expect("residues fit"),
            Poly::Int(n) => n.mod_floor(&BigInt::from(m)).to_i128().expect("residue fits"),
            Poly::Add(a, b) => (self.small_mod(a, idx, m) + self.small_mod(b, idx, m)) % m,
            Poly::Sub(a, b) => (self.small_mod(a, idx, m) - self.small_mod(b, idx, m)).rem_euclid(m),
            Poly::Mul(a, b) => self.small_mod(a, idx, m) * self.small_mod(b, idx, m) % m,
            Poly::Pow(a, e) => pow_mod_i128(self.small_mod(a, idx, m), *e, m),
        }
    }

    fn big_mod(&self, p: &Poly, idx: Triple, m: &BigInt) -> BigInt {
        match p {
            Poly::Var(v) => self.coords[v.index()].big[idx[v.index()]].mod_floor(m),
            Poly::Int(n) => n.mod_floor(m),
            Poly::Add(a, b) => (self.big_mod(a, idx, m) + self.big_mod(b, idx, m)) % m,
            Poly::Sub(a, b) => (self.big_mod(a, idx, m) - self.big_mod(b, idx, m)).mod_floor(m),
            Poly::Mul(a, b) => self.big_mod(a, idx, m) * self.big_mod(b, idx, m) % m,
            Poly::Pow(a, e) => self.big_mod(a, idx, m).modpow(&BigInt::from(*e), m),
        }
    }

    /// Value of `p` at grid indices `idx`, exact or reduced mod m.
    fn key(&self, p: &Poly, idx: Triple) -> Key {
        match &self.arith {
            Arith::Exact => match self.small(p, idx) {
                Some(v) => Key::Small(v),
                None => Key::from_big(self.big(p, idx)),
            },
            Arith::SmallMod(m) => Key::Small(self.small_mod(p, idx, *m)),
            Arith::BigMod(m) => Key::from_big(self.big_mod(p, idx, m)),
        }
    }

    fn value_key(&self, v: Var, i: usize) -> Key {
        let val = &self.coords[v.index()].big[i];
        match &self.arith {
            Arith::Exact => Key::from_big(val.clone()),
            Arith::SmallMod(m) => Key::Small(self.coords[v.index()].small[i].unwrap_or_else(|| {
                val.mod_floor(&BigInt::from(*m)).to_i128().expect("residue fits")
            })),
            Arith::BigMod(m) => Key::from_big(val.mod_floor(m)),
        }
    }

    fn len(&self, c: usize) -> usize {
        self.coords[c].big.len()
    }
}

/// A ternary relation built from an expression, with the grid value of every index.
#[derive(Debug, Clone)]
pub struct Instance3 {
    pub relation: FiniteRelation3,
    pub values: [Vec<BigInt>; 3],
}

fn labelled(name: &str, values: &[BigInt]) -> Result<Universe> {
    let labels = values
        .iter()
        .map(|v| match v.to_i64() {
            Some(i) => Label::Int(i),
            None => Label::Str(v.to_string()),
        })
        .collect();
    Universe::with_labels(name, labels)
}

/// Enumerates `(a, b)` over two coordinate grids in parallel, keeping results in
/// row-major order.
fn enumerate_pairs<T: Send>(
    rows: usize,
    cols: usize,
    f: impl Fn(usize, usize) -> Option<T> + Sync,
) -> Vec<T> {
    (0..rows)
        .into_par_iter()
        .flat_map_iter(|a| {
            let f = &f;
            (0..cols).filter_map(move |b| f(a, b))
        })
        .collect()
}

fn others(v: Var) -> [usize; 2] {
    match v {
        Var::X => [1, 2],
        Var::Y => [0, 2],
        Var::Z => [0, 1],
    }
}

fn solve(expr: &RelationExpr, grids: [&GridSpec; 3]) -> Result<([Vec<BigInt>; 3], Vec<Triple>)> {
    let modulus = expr.modulus.as_ref();
    let isolated = expr.isolated();
    let top = Var::ALL
        .into_iter()
        .find(|v| matches!(grids[v.index()], GridSpec::TopFrequent { .. }));
    if let Some(t) = top {
        if isolated.map(|(v, _)| v) != Some(t) {
            return Err(Error::input(format!(
                "top:count on `{}` requires the expression to solve for `{}`",
                t.name(),
                t.name()
            )));
        }
    }

    let mut values: [Vec<BigInt>; 3] = Default::default();
    for v in Var::ALL {
        if Some(v) != top {
            values[v.index()] = grids[v.index()].values(modulus)?;
        }
    }

    let Some((solved, side)) = isolated else {
        let ev = Evaluator::new(modulus, values.clone());
        let (nx, ny, nz) = (ev.len(0), ev.len(1), ev.len(2));
        let triples = enumerate_pairs(nx, ny, |i, j| Some((i, j)))
            .into_par_iter()
            .flat_map_iter(|(i, j)| {
                let ev = &ev;
                (0..nz).filter_map(move |k| {
                    let idx = [i, j, k];
                    (ev.key(&expr.lhs, idx) == ev.key(&expr.rhs, idx)).then_some(idx)
                })
            })
            .collect();
        return Ok((values, triples));
    };

    let s = solved.index();
    let [p, q] = others(solved);
    if let Some(GridSpec::TopFrequent { count }) = top.map(|t| grids[t.index()]) {
        // Placeholder grid so the evaluator can be built; the solved coordinate is never read.
        values[s] = vec![BigInt::zero()];
        let ev = Evaluator::new(modulus, values.clone());
        let keys = enumerate_pairs(ev.len(p), ev.len(q), |a, b| {
            let mut idx = [0; 3];
            idx[p] = a;
            idx[q] = b;
            Some((a, b, ev.key(side, idx)))
        });
        let mut freq: HashMap<&Key, usize> = HashMap::new();
        for (_, _, k) in &keys {
            *freq.entry(k).or_default() += 1;
        }
        let mut ranked: Vec<(usize, BigInt, &Key)> =
            freq.into_iter().map(|(k, n)| (n, k.to_big(), k)).collect();
        ranked.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        ranked.truncate(*count);
        ranked.sort_by(|a, b| a.1.cmp(&b.1));
        let index: HashMap<&Key, usize> =
            ranked.iter().enumerate().map(|(i, r)| (r.2, i)).collect();
        let triples = keys
            .iter()
            .filter_map(|(a, b, k)| {
                index.get(k).map(|&c| {
                    let mut t = [0; 3];
                    t[p] = *a;
                    t[q] = *b;
                    t[s] = c;
                    t
                })
            })
            .collect();
        values[s] = ranked.into_iter().map(|r| r.1).collect();
        return Ok((values, triples));
    }

    let ev = Evaluator::new(modulus, values.clone());
    let mut targets: HashMap<Key, Vec<usize>> = HashMap::new();
    for i in 0..ev.len(s) {
        targets.entry(ev.value_key(solved, i)).or_default().push(i);
    }
    let triples = enumerate_pairs(ev.len(p), ev.len(q), |a, b| {
        let mut idx = [0; 3];
        idx[p] = a;
        idx[q] = b;
        targets.get(&ev.key(side, idx)).map(|hits| {
            hits.iter()
                .map(|&c| {
                    let mut t = idx;
                    t[s] = c;
                    t
                })
                .collect::<Vec<_>>()
        })
    })
    .into_iter()
    .flatten()
    .collect();
    Ok((values, triples))
}

/// All `(i, j, k)` whose grid values satisfy `expr`.
pub fn instantiate3(
    expr: &RelationExpr,
    gx: &GridSpec,
    gy: &GridSpec,
    gz: &GridSpec,
) -> Result<Instance3> {
    let (values, triples) = solve(expr, [gx, gy, gz])?;
    let relation = FiniteRelation3::build(
        labelled("X", &values[0])?,
        labelled("Y", &values[1])?,
        labelled("Z", &values[2])?,
        &triples,
    )?;
    Ok(Instance3 { relation, values })
}

/// Binary relation on `Y × Z` for an expression over `{y, z}`.
pub fn instantiate2(
    expr: &RelationExpr,
    gy: &GridSpec,
    gz: &GridSpec,
) -> Result<(FiniteRelation2, [Vec<BigInt>; 2])> {
    if expr.uses(Var::X) {
        return Err(Error::input("binary relations may only use `y` and `z`"));
    }
    let dummy = GridSpec::Explicit(vec![BigInt::zero()]);
    let (values, triples) = solve(expr, [&dummy, gy, gz])?;
    let [_, ys, zs] = values;
    let pairs: Vec<_> = triples.iter().map(|t| (t[1], t[2])).collect();
    let rel = FiniteRelation2::build(labelled("Y", &ys)?, labelled("Z", &zs)?, &pairs)?;
    Ok((rel, [ys, zs]))
}
