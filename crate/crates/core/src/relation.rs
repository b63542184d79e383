//! Finite binary and ternary relations over indexed universes.
//!
//! Elements of a universe are the indices `0..size`. Labels are carried only
//! for reporting; every operation here works on indices.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Str(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(v) => write!(f, "{v}"),
            Label::Str(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Universe {
    pub name: String,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Label>>,
}

impl Universe {
    pub fn new(name: impl Into<String>, size: usize) -> Self {
        Universe {
            name: name.into(),
            size,
            labels: None,
        }
    }

    pub fn with_labels(name: impl Into<String>, labels: Vec<Label>) -> Result<Self> {
        let u = Universe {
            name: name.into(),
            size: labels.len(),
            labels: Some(labels),
        };
        u.validate()?;
        Ok(u)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(labels) = &self.labels {
            if labels.len() != self.size {
                return Err(Error::input(format!(
                    "universe `{}` has {} labels for size {}",
                    self.name,
                    labels.len(),
                    self.size
                )));
            }
            let mut seen = HashSet::with_capacity(labels.len());
            for l in labels {
                if !seen.insert(l) {
                    return Err(Error::input(format!(
                        "universe `{}` repeats label {l}",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn label(&self, i: usize) -> Label {
        match &self.labels {
            Some(ls) => ls[i].clone(),
            None => Label::Int(i as i64),
        }
    }

    pub fn full(&self) -> Subset {
        Subset::full(self)
    }

    pub fn empty(&self) -> Subset {
        Subset::empty(self)
    }

    fn same_as(&self, name: &str, size: usize) -> Result<()> {
        if self.name == name && self.size == size {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                expected: self.name.clone(),
                expected_size: self.size,
                found: name.to_string(),
                found_size: size,
            })
        }
    }
}

/// A subset of a universe, identified by the universe's name and size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    universe: String,
    members: BitSet,
}

impl Subset {
    pub fn empty(u: &Universe) -> Self {
        Subset {
            universe: u.name.clone(),
            members: BitSet::new(u.size),
        }
    }

    pub fn full(u: &Universe) -> Self {
        Subset {
            universe: u.name.clone(),
            members: BitSet::full(u.size),
        }
    }

    pub fn from_indices(u: &Universe, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Subset::empty(u);
        for i in indices {
            if i >= u.size {
                return Err(Error::input(format!(
                    "index {i} out of range for universe `{}` of size {}",
                    u.name, u.size
                )));
            }
            s.members.insert(i);
        }
        Ok(s)
    }

    pub(crate) fn from_bits(u: &Universe, members: BitSet) -> Self {
        debug_assert_eq!(members.len(), u.size);
        Subset {
            universe: u.name.clone(),
            members,
        }
    }

    pub fn universe_name(&self) -> &str {
        &self.universe
    }

    pub fn universe_size(&self) -> usize {
        self.members.len()
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(i)
    }

    pub fn bits(&self) -> &BitSet {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn check_in(&self, u: &Universe) -> Result<()> {
        u.same_as(&self.universe, self.universe_size())
    }
}

/// Dense bipartite relation `E ⊆ U × V`; row `a` is the left fiber `E_a`.
#[derive(Debug)]
pub struct FiniteRelation2 {
    u: Universe,
    v: Universe,
    rows: Vec<BitSet>,
    edge_count: usize,
    cols: OnceLock<Vec<BitSet>>,
}

impl Clone for FiniteRelation2 {
    fn clone(&self) -> Self {
        FiniteRelation2 {
            u: self.u.clone(),
            v: self.v.clone(),
            rows: self.rows.clone(),
            edge_count: self.edge_count,
            cols: OnceLock::new(),
        }
    }
}

impl PartialEq for FiniteRelation2 {
    fn eq(&self, other: &Self) -> bool {
        self.u == other.u && self.v == other.v && self.rows == other.rows
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl FiniteRelation2 {
    pub fn build(u: Universe, v: Universe, pairs: &[(usize, usize)]) -> Result<Self> {
        u.validate()?;
        v.validate()?;
        let mut rows = vec![BitSet::new(v.size); u.size];
        for &(i, j) in pairs {
            if i >= u.size || j >= v.size {
                return Err(Error::input(format!(
                    "pair ({i}, {j}) out of range for {} x {}",
                    u.size, v.size
                )));
            }
            rows[i].insert(j);
        }
        Ok(Self::from_rows(u, v, rows))
    }

    pub(crate) fn from_rows(u: Universe, v: Universe, rows: Vec<BitSet>) -> Self {
        debug_assert_eq!(rows.len(), u.size);
        let edge_count = rows.iter().map(BitSet::count).sum();
        FiniteRelation2 {
            u,
            v,
            rows,
            edge_count,
            cols: OnceLock::new(),
        }
    }

    pub fn u(&self) -> &Universe {
        &self.u
    }

    pub fn v(&self) -> &Universe {
        &self.v
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        a < self.u.size && self.rows[a].contains(b)
    }

    /// Left fiber `E_a` as a bit vector over `V`.
    pub fn row(&self, a: usize) -> &BitSet {
        &self.rows[a]
    }

    /// Right fiber `E^b` as a bit vector over `U`; built once on first use.
    pub fn col(&self, b: usize) -> &BitSet {
        &self.columns()[b]
    }

    fn columns(&self) -> &[BitSet] {
        self.cols.get_or_init(|| {
            let mut cols = vec![BitSet::new(self.u.size); self.v.size];
            for (a, row) in self.rows.iter().enumerate() {
                for b in row.iter() {
                    cols[b].insert(a);
                }
            }
            cols
        })
    }

    pub fn fiber(&self, side: Side, index: usize) -> Result<Subset> {
        let (own, other) = match side {
            Side::Left => (&self.u, &self.v),
            Side::Right => (&self.v, &self.u),
        };
        if index >= own.size {
            return Err(Error::input(format!(
                "fiber index {index} out of range for universe `{}` of size {}",
                own.name, own.size
            )));
        }
        let bits = match side {
            Side::Left => self.rows[index].clone(),
            Side::Right => self.col(index).clone(),
        };
        Ok(Subset::from_bits(other, bits))
    }

    /// `|E ∩ A × B|`.
    pub fn count_grid(&self, a: &Subset, b: &Subset) -> Result<usize> {
        a.check_in(&self.u)?;
        b.check_in(&self.v)?;
        Ok(self.count_bits(a.bits(), b.bits()))
    }

    pub(crate) fn count_bits(&self, a: &BitSet, b: &BitSet) -> usize {
        a.iter().map(|i| self.rows[i].intersection_count(b)).sum()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().map(move |b| (a, b)))
            .collect()
    }

    /// Applies index bijections `pu` on `U` and `pv` on `V` (`new = p[old]`).
    pub fn relabel(&self, pu: &[usize], pv: &[usize]) -> Result<Self> {
        check_permutation(pu, self.u.size)?;
        check_permutation(pv, self.v.size)?;
        let pairs: Vec<_> = self.pairs().into_iter().map(|(a, b)| (pu[a], pv[b])).collect();
        FiniteRelation2::build(
            Universe::new(self.u.name.clone(), self.u.size),
            Universe::new(self.v.name.clone(), self.v.size),
            &pairs,
        )
    }

    pub fn to_file(&self) -> RelationFile {
        RelationFile::Rel2 {
            universes: vec![self.u.clone(), self.v.clone()],
            pairs: self.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

pub(crate) fn check_permutation(p: &[usize], n: usize) -> Result<()> {
    if p.len() != n {
        return Err(Error::input(format!(
            "permutation has length {}, expected {n}",
            p.len()
        )));
    }
    let mut seen = vec![false; n];
    for &i in p {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::input("map is not a bijection"));
        }
    }
    Ok(())
}

pub type Triple = [usize; 3];

/// Which two coordinates are fixed when taking a fiber of a ternary relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pairing {
    /// Fix `(x, y)`, vary `z`.
    XY,
    /// Fix `(x, z)`, vary `y`.
    XZ,
    /// Fix `(y, z)`, vary `x`.
    YZ,
}

impl Pairing {
    pub const ALL: [Pairing; 3] = [Pairing::XY, Pairing::XZ, Pairing::YZ];

    /// (fixed coordinates, free coordinate)
    pub fn coords(self) -> ([usize; 2], usize) {
        match self {
            Pairing::XY => ([0, 1], 2),
            Pairing::XZ => ([0, 2], 1),
            Pairing::YZ => ([1, 2], 0),
        }
    }
}

type FiberMap = HashMap<(usize, usize), Vec<usize>>;

/// Ternary relation `F ⊆ X × Y × Z` stored as a sorted, duplicate-free triple list.
#[derive(Debug)]
pub struct FiniteRelation3 {
    universes: [Universe; 3],
    triples: Vec<Triple>,
    fibers: [OnceLock<FiberMap>; 3],
}

impl Clone for FiniteRelation3 {
    fn clone(&self) -> Self {
        FiniteRelation3 {
            universes: self.universes.clone(),
            triples: self.triples.clone(),
            fibers: Default::default(),
        }
    }
}

impl PartialEq for FiniteRelation3 {
    fn eq(&self, other: &Self) -> bool {
        self.universes == other.universes && self.triples == other.triples
    }
}

impl FiniteRelation3 {
    pub fn build(x: Universe, y: Universe, z: Universe, triples: &[Triple]) -> Result<Self> {
        let universes = [x, y, z];
        for u in &universes {
            u.validate()?;
        }
        for t in triples {
            if (0..3).any(|c| t[c] >= universes[c].size) {
                return Err(Error::input(format!(
                    "triple ({}, {}, {}) out of range for {} x {} x {}",
                    t[0], t[1], t[2], universes[0].size, universes[1].size, universes[2].size
                )));
            }
        }
        let mut triples = triples.to_vec();
        triples.sort_unstable();
        triples.dedup();
        Ok(FiniteRelation3 {
            universes,
            triples,
            fibers: Default::default(),
        })
    }

    pub fn x(&self) -> &Universe {
        &self.universes[0]
    }

    pub fn y(&self) -> &Universe {
        &self.universes[1]
    }

    pub fn z(&self) -> &Universe {
        &self.universes[2]
    }

    pub fn universe(&self, coord: usize) -> &Universe {
        &self.universes[coord]
    }

    pub fn universes(&self) -> &[Universe; 3] {
        &self.universes
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, t: Triple) -> bool {
        self.triples.binary_search(&t).is_ok()
    }

    /// Fiber map for a pairing: fixed pair to the sorted free coordinates.
    pub fn fibers(&self, pairing: Pairing) -> &FiberMap {
        let slot = Pairing::ALL.iter().position(|&p| p == pairing).unwrap();
        self.fibers[slot].get_or_init(|| {
            let ([i, j], k) = pairing.coords();
            let mut map: FiberMap = HashMap::new();
            for t in &self.triples {
                map.entry((t[i], t[j])).or_default().push(t[k]);
            }
            for v in map.values_mut() {
                v.sort_unstable();
            }
            map
        })
    }

    /// Triples grouped by `x`, each group listing `(y, z)` in sorted order.
    pub fn by_x(&self) -> impl Iterator<Item = (usize, &[Triple])> + '_ {
        self.triples
            .chunk_by(|a, b| a[0] == b[0])
            .map(|chunk| (chunk[0][0], chunk))
    }

    /// `|F ∩ A × B × C|`.
    pub fn count_grid(&self, a: &Subset, b: &Subset, c: &Subset) -> Result<usize> {
        a.check_in(&self.universes[0])?;
        b.check_in(&self.universes[1])?;
        c.check_in(&self.universes[2])?;
        Ok(self
            .triples
            .iter()
            .filter(|t| a.contains(t[0]) && b.contains(t[1]) && c.contains(t[2]))
            .count())
    }

    pub fn count_full(&self) -> usize {
        self.triples.len()
    }

    pub fn relabel(&self, perms: [&[usize]; 3]) -> Result<Self> {
        for (p, u) in perms.iter().zip(&self.universes) {
            check_permutation(p, u.size)?;
        }
        let triples: Vec<Triple> = self
            .triples
            .iter()
            .map(|t| [perms[0][t[0]], perms[1][t[1]], perms[2][t[2]]])
            .collect();
        let [x, y, z] = self
            .universes
            .clone()
            .map(|u| Universe::new(u.name, u.size));
        FiniteRelation3::build(x, y, z, &triples)
    }

    pub fn to_file(&self) -> RelationFile {
        RelationFile::Rel3 {
            universes: self.universes.to_vec(),
            triples: self.triples.clone(),
        }
    }
}

/// Row-major index bijection `(i, j) <-> i * base + j` onto `U × U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairUniverse {
    base: usize,
    universe: Universe,
}

impl PairUniverse {
    pub fn new(u: &Universe) -> Result<Self> {
        let size = u.size.checked_mul(u.size).ok_or_else(|| {
            Error::Capacity(format!(
                "pair universe of `{}` would have {}^2 elements",
                u.name, u.size
            ))
        })?;
        Ok(PairUniverse {
            base: u.size,
            universe: Universe::new(format!("{}^2", u.name), size),
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn base(&self) -> usize {
        self.base
    }

    #[inline]
    pub fn encode(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.base && j < self.base);
        i * self.base + j
    }

    #[inline]
    pub fn decode(&self, k: usize) -> (usize, usize) {
        (k / self.base, k % self.base)
    }

    /// `S²` as a subset of the pair universe.
    pub fn square(&self, s: &Subset) -> Subset {
        let members: Vec<usize> = s.iter().collect();
        let mut bits = BitSet::new(self.universe.size);
        for &i in &members {
            for &j in &members {
                bits.insert(self.encode(i, j));
            }
        }
        Subset::from_bits(&self.universe, bits)
    }
}

pub fn pair_universe(u: &Universe) -> Result<PairUniverse> {
    PairUniverse::new(u)
}

/// On-disk relation format: index arrays, never labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RelationFile {
    Rel2 {
        universes: Vec<Universe>,
        pairs: Vec<[usize; 2]>,
    },
    Rel3 {
        universes: Vec<Universe>,
        triples: Vec<[usize; 3]>,
    },
}

pub enum Relation {
    Binary(FiniteRelation2),
    Ternary(FiniteRelation3),
}

impl RelationFile {
    pub fn into_relation(self) -> Result<Relation> {
        match self {
            RelationFile::Rel2 { universes, pairs } => {
                let [u, v]: [Universe; 2] = universes
                    .try_into()
                    .map_err(|_| Error::input("rel2 needs exactly 2 universes"))?;
                let pairs: Vec<_> = pairs.into_iter().map(|[a, b]| (a, b)).collect();
                Ok(Relation::Binary(FiniteRelation2::build(u, v, &pairs)?))
            }
            RelationFile::Rel3 { universes, triples } => {
                let [x, y, z]: [Universe; 3] = universes
                    .try_into()
                    .map_err(|_| Error::input("rel3 needs exactly 3 universes"))?;
                Ok(Relation::Ternary(FiniteRelation3::build(x, y, z, &triples)?))
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("relation files always serialize")
    }

    pub fn read(path: &std::path::Path) -> Result<Relation> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)?.into_relation()
    }
}
