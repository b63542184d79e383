use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::dsl::{instantiate3, GridSpec, RelationExpr};
use crate::error::{Error, Result};
use crate::relation::{check_permutation, FiniteRelation3, Triple, Universe};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Group {
    /// `ℤ/n`, relation `a + b + c ≡ 0`.
    Cyclic,
    /// `(ℤ/p)^×` with `p = n` prime, relation `a·b·c ≡ 1`; index `i` is the unit `i + 1`.
    UnitGroupMod,
}

/// Bijection applied to one coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Twist {
    Identity,
    /// `i ↦ (mul·i + add) mod size`; `mul` must be invertible.
    Affine { mul: u64, add: u64 },
    /// Seeded uniform permutation.
    Shuffle { seed: u64 },
    Explicit(Vec<usize>),
}

impl Twist {
    pub fn permutation(&self, size: usize, stream: u64) -> Result<Vec<usize>> {
        let perm = match self {
            Twist::Identity => (0..size).collect(),
            Twist::Affine { mul, add } => {
                let n = size as u64;
                if n > 0 && mul.gcd(&n) != 1 {
                    return Err(Error::family(format!(
                        "affine twist with multiplier {mul} is not a bijection mod {n}"
                    )));
                }
                (0..n).map(|i| ((mul % n * i + add % n) % n) as usize).collect()
            }
            Twist::Shuffle { seed } => {
                let mut p: Vec<usize> = (0..size).collect();
                p.shuffle(&mut crate::rng::stream(*seed, stream));
                p
            }
            Twist::Explicit(p) => {
                check_permutation(p, size)
                    .map_err(|e| Error::family(format!("explicit twist: {e}")))?;
                p.clone()
            }
        };
        Ok(perm)
    }
}

/// Side length of the planted block as a function of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockSize {
    /// `k(n) = ⌊num·n / den⌋`
    Linear { num: usize, den: usize },
    Fixed(usize),
}

impl BlockSize {
    pub fn at(&self, n: usize) -> usize {
        match *self {
            BlockSize::Linear { num, den } => num * n / den.max(1),
            BlockSize::Fixed(k) => k,
        }
        .min(n)
    }
}

/// Grid of one coordinate of a DSL family at size `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScaledGrid {
    /// `{0, …, n−1}`
    Prefix,
    /// The `n` most frequent values of the solved coordinate.
    Top,
    /// All residues of the expression's modulus.
    FullMod,
    Fixed(GridSpec),
}

impl ScaledGrid {
    fn at(&self, n: usize) -> GridSpec {
        match self {
            ScaledGrid::Prefix => GridSpec::range(0, n as i64),
            ScaledGrid::Top => GridSpec::TopFrequent { count: n },
            ScaledGrid::FullMod => GridSpec::FullMod,
            ScaledGrid::Fixed(g) => g.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    GroupLike { group: Group, twists: [Twist; 3] },
    /// `I × P` with `|I| = |P| = k(n)`, `P` on the diagonal of `Y × Z`, plus
    /// `noise` seeded random triples.
    Cylindrical { block: BlockSize, noise: usize, seed: u64 },
    Dsl { expr: RelationExpr, grids: [ScaledGrid; 3] },
}

/// A sequence of ternary relations indexed by a size parameter `n`, each
/// meant to be counted on its full universes.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationFamily {
    spec: FamilySpec,
}

pub fn make_family(spec: FamilySpec) -> Result<RelationFamily> {
    if let FamilySpec::GroupLike { twists, .. } = &spec {
        for t in twists {
            if let Twist::Affine { mul: 0, .. } = t {
                return Err(Error::family("affine twist with multiplier 0"));
            }
        }
    }
    if let FamilySpec::Cylindrical { block: BlockSize::Linear { den: 0, .. }, .. } = &spec {
        return Err(Error::family("block size with zero denominator"));
    }
    Ok(RelationFamily { spec })
}

impl RelationFamily {
    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn name(&self) -> String {
        match &self.spec {
            FamilySpec::GroupLike { group: Group::Cyclic, .. } => "cyclic".into(),
            FamilySpec::GroupLike { group: Group::UnitGroupMod, .. } => "units".into(),
            FamilySpec::Cylindrical { .. } => "cylindrical".into(),
            FamilySpec::Dsl { expr, .. } => expr.to_string(),
        }
    }

    pub fn instance(&self, n: usize) -> Result<FiniteRelation3> {
        match &self.spec {
            FamilySpec::GroupLike { group, twists } => group_like(group, twists, n),
            FamilySpec::Cylindrical { block, noise, seed } => {
                Ok(cylindrical(block.at(n), n, *noise, *seed))
            }
            FamilySpec::Dsl { expr, grids } => {
                let [gx, gy, gz] = grids.clone().map(|g| g.at(n));
                Ok(instantiate3(expr, &gx, &gy, &gz)?.relation)
            }
        }
    }

    /// `|F_n|` on full universes.
    pub fn count(&self, n: usize) -> Result<usize> {
        Ok(self.instance(n)?.count_full())
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn group_like(group: &Group, twists: &[Twist; 3], n: usize) -> Result<FiniteRelation3> {
    let size = match group {
        Group::Cyclic => n,
        Group::UnitGroupMod if is_prime(n) => n - 1,
        Group::UnitGroupMod => return Err(Error::family(format!("{n} is not prime"))),
    };
    let mut perms = Vec::with_capacity(3);
    for (i, t) in twists.iter().enumerate() {
        perms.push(t.permutation(size, 30 + i as u64)?);
    }
    let third = |a: usize, b: usize| -> usize {
        match group {
            Group::Cyclic => (2 * n - a - b) % n,
            Group::UnitGroupMod => {
                let ab = (a + 1) * (b + 1) % n;
                // ab^{p-2} is the inverse by Fermat
                let mut inv = 1;
                for _ in 0..n - 2 {
                    inv = inv * ab % n;
                }
                inv - 1
            }
        }
    };
    let mut triples = Vec::with_capacity(size * size);
    for a in 0..size {
        for b in 0..size {
            let c = third(a, b);
            triples.push([perms[0][a], perms[1][b], perms[2][c]]);
        }
    }
    let labels = |name: &str| -> Result<Universe> {
        match group {
            Group::Cyclic => Ok(Universe::new(name, size)),
            Group::UnitGroupMod => Universe::with_labels(
                name,
                (1..=size as i64).map(crate::Label::Int).collect(),
            ),
        }
    };
    FiniteRelation3::build(labels("X")?, labels("Y")?, labels("Z")?, &triples)
}

fn cylindrical(k: usize, n: usize, noise: usize, seed: u64) -> FiniteRelation3 {
    let mut triples: Vec<Triple> = (0..k)
        .flat_map(|x| (0..k).map(move |p| [x, p, p]))
        .collect();
    if n > 0 {
        let mut rng = crate::rng::stream(seed, 40);
        triples.extend((0..noise).map(|_| [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)]));
    }
    FiniteRelation3::build(
        Universe::new("X", n),
        Universe::new("Y", n),
        Universe::new("Z", n),
        &triples,
    )
    .expect("indices are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;
    use crate::es::{cylindrical_witness, delta_degree, DerivedG, DEFAULT_BUDGET};

    fn cyclic(twists: [Twist; 3]) -> RelationFamily {
        make_family(FamilySpec::GroupLike { group: Group::Cyclic, twists }).unwrap()
    }

    fn plain() -> [Twist; 3] {
        [Twist::Identity, Twist::Identity, Twist::Identity]
    }

    #[test]
    fn cyclic_five_is_zero_sum() {
        let f = cyclic(plain()).instance(5).unwrap();
        assert_eq!(f.len(), 25);
        for x in 0..5 {
            for y in 0..5 {
                for z in 0..5 {
                    assert_eq!(f.contains([x, y, z]), (x + y + z) % 5 == 0);
                }
            }
        }
    }

    #[test]
    fn unit_group_mod_seven() {
        let fam = make_family(FamilySpec::GroupLike { group: Group::UnitGroupMod, twists: plain() }).unwrap();
        let f = fam.instance(7).unwrap();
        assert_eq!(f.len(), 36);
        for t in f.triples() {
            assert_eq!((t[0] + 1) * (t[1] + 1) * (t[2] + 1) % 7, 1);
        }
        assert_eq!(f.x().label(0), crate::Label::Int(1));
        assert!(fam.instance(8).is_err());
    }

    #[test]
    fn twisted_counts_stay_n_squared() {
        let twists = [
            Twist::Affine { mul: 3, add: 1 },
            Twist::Shuffle { seed: 7 },
            Twist::Explicit(vec![4, 3, 2, 1, 0]),
        ];
        let fam = cyclic(twists);
        let f = fam.instance(5).unwrap();
        assert_eq!(f.len(), 25);
        let base = cyclic(plain()).instance(5).unwrap();
        assert_eq!(delta_degree(&f, 3).unwrap(), delta_degree(&base, 3).unwrap());
        assert_eq!(
            DerivedG::new(&f, DEFAULT_BUDGET).unwrap().len(),
            DerivedG::new(&base, DEFAULT_BUDGET).unwrap().len()
        );
    }

    #[test]
    fn invalid_twists() {
        assert!(cyclic([Twist::Affine { mul: 2, add: 0 }, Twist::Identity, Twist::Identity])
            .instance(6)
            .is_err());
        assert!(cyclic([Twist::Explicit(vec![0, 0, 1]), Twist::Identity, Twist::Identity])
            .instance(3)
            .is_err());
        assert!(make_family(FamilySpec::GroupLike {
            group: Group::Cyclic,
            twists: [Twist::Affine { mul: 0, add: 1 }, Twist::Identity, Twist::Identity],
        })
        .is_err());
    }

    #[test]
    fn cylindrical_block() {
        let fam = make_family(FamilySpec::Cylindrical {
            block: BlockSize::Linear { num: 1, den: 1 },
            noise: 10,
            seed: 1,
        })
        .unwrap();
        let f = fam.instance(12).unwrap();
        assert!(f.count_full() >= 144);
        let w = cylindrical_witness(&f, 8).unwrap().unwrap();
        assert_eq!(w.axis, 1);
        assert_eq!(BlockSize::Fixed(30).at(12), 12);
    }

    #[test]
    fn dsl_family_scales_grids() {
        let fam = make_family(FamilySpec::Dsl {
            expr: parse("x + y = z").unwrap(),
            grids: [ScaledGrid::Prefix, ScaledGrid::Prefix, ScaledGrid::Prefix],
        })
        .unwrap();
        for n in [4usize, 9, 16] {
            assert_eq!(fam.count(n).unwrap(), n * (n + 1) / 2);
        }
        assert_eq!(fam.name(), "x + y = z");
    }
}
