use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "z"][self.index()]
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "x" => Some(Var::X),
            "y" => Some(Var::Y),
            "z" => Some(Var::Z),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Poly {
    Var(Var),
    Int(BigInt),
    Add(Box<Poly>, Box<Poly>),
    Sub(Box<Poly>, Box<Poly>),
    Mul(Box<Poly>, Box<Poly>),
    Pow(Box<Poly>, u32),
}

impl Poly {
    pub fn contains(&self, v: Var) -> bool {
        match self {
            Poly::Var(w) => *w == v,
            Poly::Int(_) => false,
            Poly::Add(a, b) | Poly::Sub(a, b) | Poly::Mul(a, b) => a.contains(v) || b.contains(v),
            Poly::Pow(a, _) => a.contains(v),
        }
    }

    fn level(&self) -> u8 {
        match self {
            Poly::Add(..) | Poly::Sub(..) => 0,
            Poly::Mul(..) => 1,
            Poly::Pow(..) => 2,
            Poly::Var(_) | Poly::Int(_) => 3,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        if self.level() < min_level {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Poly::Var(v) => f.write_str(v.name()),
            Poly::Int(n) => write!(f, "{n}"),
            Poly::Add(a, b) => {
                a.write_at(f, 0)?;
                f.write_str(" + ")?;
                b.write_at(f, 1)
            }
            Poly::Sub(a, b) => {
                a.write_at(f, 0)?;
                f.write_str(" - ")?;
                b.write_at(f, 1)
            }
            Poly::Mul(a, b) => {
                a.write_at(f, 1)?;
                f.write_str("*")?;
                b.write_at(f, 2)
            }
            Poly::Pow(a, e) => {
                a.write_at(f, 3)?;
                write!(f, "^{e}")
            }
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// `lhs = rhs [mod m]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelationExpr {
    pub lhs: Poly,
    pub rhs: Poly,
    pub modulus: Option<BigInt>,
}

impl RelationExpr {
    pub fn uses(&self, v: Var) -> bool {
        self.lhs.contains(v) || self.rhs.contains(v)
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.uses(v)).collect()
    }

    /// A variable standing alone on one side and absent from the other,
    /// together with the side that determines it.
    pub fn isolated(&self) -> Option<(Var, &Poly)> {
        for (one, other) in [(&self.lhs, &self.rhs), (&self.rhs, &self.lhs)] {
            if let Poly::Var(v) = one {
                if !other.contains(*v) {
                    return Some((*v, other));
                }
            }
        }
        None
    }
}

impl fmt::Display for RelationExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)?;
        if let Some(m) = &self.modulus {
            write!(f, " mod {m}")?;
        }
        Ok(())
    }
}
