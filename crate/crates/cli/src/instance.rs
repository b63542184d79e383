//! Parsing of instance and family descriptors given on the command line.

use std::path::PathBuf;

use expd_core::cuttings::{BoxGridCutter, CuttingProvider, GreedyCutter, IntervalCutter, IntervalFamily, RectFamily};
use expd_core::dsl::{instantiate3, parse, GridSpec};
use expd_core::es::{make_family, BlockSize, FamilySpec, Group, RelationFamily, ScaledGrid, Twist};
use expd_core::{instances, Error, FiniteRelation2, FiniteRelation3, Relation, RelationFile, Result};

/// A binary instance with the cutter that suits its fibers.
pub struct Binary {
    pub name: String,
    pub relation: FiniteRelation2,
    pub cutter: Box<dyn CuttingProvider>,
}

fn bad(text: &str) -> Error {
    Error::Input(format!("bad instance `{text}`"))
}

fn num<T: std::str::FromStr>(text: &str, field: &str) -> Result<T> {
    field.parse().map_err(|_| bad(text))
}

fn seeded(text: &str, seed: Option<u64>) -> Result<u64> {
    seed.ok_or_else(|| Error::Input(format!("instance `{text}` is random and needs --seed")))
}

/// `pg:q`, `identity:n`, `random:m:n:p`, `c4free:m:n`, `interval:count:points`,
/// `rect:count:w:h` or `file:path`.
pub fn binary(text: &str, seed: Option<u64>) -> Result<Binary> {
    let parts: Vec<&str> = text.split(':').collect();
    let generic = |relation: FiniteRelation2| {
        let cap_cells = relation.v().size.max(1);
        Binary {
            name: text.to_string(),
            relation,
            cutter: Box::new(GreedyCutter { cap_cells, d: 2 }),
        }
    };
    let inst = match parts.as_slice() {
        ["pg", q] => generic(instances::projective_plane(num(text, q)?)?),
        ["identity", n] => generic(instances::identity(num(text, n)?)),
        ["random", m, n, p] => {
            let p: f64 = num(text, p)?;
            if !(0.0..=1.0).contains(&p) {
                return Err(bad(text));
            }
            generic(instances::random_bipartite(num(text, m)?, num(text, n)?, p, seeded(text, seed)?))
        }
        ["c4free", m, n] => {
            let (m, n): (usize, usize) = (num(text, m)?, num(text, n)?);
            generic(instances::random_c4_free(m, n, 4 * m * n, seeded(text, seed)?))
        }
        ["interval", count, points] => {
            let points: usize = num(text, points)?;
            if points == 0 {
                return Err(bad(text));
            }
            let fam = IntervalFamily::random(num(text, count)?, points, seeded(text, seed)?);
            Binary {
                name: text.to_string(),
                relation: fam.relation(),
                cutter: Box::new(IntervalCutter),
            }
        }
        ["rect", count, w, h] => {
            let (w, h): (i64, i64) = (num(text, w)?, num(text, h)?);
            if w <= 0 || h <= 0 {
                return Err(bad(text));
            }
            let fam = RectFamily::random_on_grid(num(text, count)?, w, h, seeded(text, seed)?);
            Binary {
                name: text.to_string(),
                relation: fam.relation(),
                cutter: Box::new(BoxGridCutter { points: fam.points }),
            }
        }
        ["file", path] => match RelationFile::read(&PathBuf::from(path))? {
            Relation::Binary(rel) => generic(rel),
            Relation::Ternary(_) => return Err(Error::Input(format!("{path} holds a ternary relation"))),
        },
        _ => return Err(bad(text)),
    };
    Ok(inst)
}

/// Cutter override: `interval`, `greedy` or `auto` (keep the instance's own).
pub fn cutter(name: &str, inst: Binary) -> Result<Binary> {
    let cap_cells = inst.relation.v().size.max(1);
    let cutter: Box<dyn CuttingProvider> = match name {
        "auto" => return Ok(inst),
        "interval" => Box::new(IntervalCutter),
        "greedy" => Box::new(GreedyCutter { cap_cells, d: 2 }),
        _ => return Err(Error::Input(format!("unknown cutter `{name}`"))),
    };
    Ok(Binary { cutter, ..inst })
}

/// `cyclic`, `cyclic-shuffled`, `units`, `cylindrical[:num/den]` or `expr`
/// (the latter taking `--expr` and per-coordinate `prefix|top|fullmod`).
pub fn family(text: &str, expr: Option<&str>, scaled: &str, seed: Option<u64>) -> Result<RelationFamily> {
    let plain = [Twist::Identity, Twist::Identity, Twist::Identity];
    let spec = match text.split(':').collect::<Vec<_>>().as_slice() {
        ["cyclic"] => FamilySpec::GroupLike { group: Group::Cyclic, twists: plain },
        ["units"] => FamilySpec::GroupLike { group: Group::UnitGroupMod, twists: plain },
        ["cyclic-shuffled"] => {
            let s = seeded(text, seed)?;
            FamilySpec::GroupLike {
                group: Group::Cyclic,
                twists: [
                    Twist::Shuffle { seed: s },
                    Twist::Shuffle { seed: s.wrapping_add(1) },
                    Twist::Shuffle { seed: s.wrapping_add(2) },
                ],
            }
        }
        ["cylindrical", rest @ ..] => {
            let block = match rest {
                [] => BlockSize::Linear { num: 1, den: 1 },
                [ratio] => {
                    let (a, b) = ratio.split_once('/').ok_or_else(|| bad(text))?;
                    BlockSize::Linear { num: num(text, a)?, den: num(text, b)? }
                }
                _ => return Err(bad(text)),
            };
            FamilySpec::Cylindrical { block, noise: 0, seed: seed.unwrap_or(0) }
        }
        ["expr"] => {
            let expr = expr.ok_or_else(|| Error::Input("family `expr` needs --expr".into()))?;
            let grids: Vec<ScaledGrid> = scaled
                .split(',')
                .map(|g| match g.trim() {
                    "prefix" => Ok(ScaledGrid::Prefix),
                    "top" => Ok(ScaledGrid::Top),
                    "fullmod" => Ok(ScaledGrid::FullMod),
                    other => Err(Error::Input(format!("unknown scaled grid `{other}`"))),
                })
                .collect::<Result<_>>()?;
            let grids: [ScaledGrid; 3] = grids
                .try_into()
                .map_err(|_| Error::Input("--scaled needs three entries".into()))?;
            FamilySpec::Dsl { expr: parse(expr)?, grids }
        }
        _ => return Err(Error::Input(format!("unknown family `{text}`"))),
    };
    make_family(spec)
}

/// A ternary relation from `--input`, from `--expr` with grids, or from a
/// family at size `n`.
pub struct TernarySource<'a> {
    pub input: Option<&'a PathBuf>,
    pub expr: Option<&'a str>,
    pub grids: [&'a str; 3],
    pub family: Option<&'a str>,
    pub scaled: &'a str,
    pub n: Option<usize>,
    pub seed: Option<u64>,
}

pub fn ternary(src: &TernarySource<'_>) -> Result<(String, FiniteRelation3)> {
    if let Some(path) = src.input {
        return match RelationFile::read(path)? {
            Relation::Ternary(f) => Ok((path.display().to_string(), f)),
            Relation::Binary(_) => Err(Error::Input(format!("{} holds a binary relation", path.display()))),
        };
    }
    if let Some(fam) = src.family {
        let n = src.n.ok_or_else(|| Error::Input("--family needs --n".into()))?;
        let family = family(fam, src.expr, src.scaled, src.seed)?;
        return Ok((format!("{}:{n}", family.name()), family.instance(n)?));
    }
    let text = src
        .expr
        .ok_or_else(|| Error::Input("give one of --input, --family or --expr".into()))?;
    let expr = parse(text)?;
    let seed = src.seed.unwrap_or(0);
    let grids = src.grids.map(|g| GridSpec::parse(g, seed));
    if src.seed.is_none() && src.grids.iter().any(|g| g.starts_with("rand")) {
        return Err(Error::Input("random grids need --seed".into()));
    }
    let [gx, gy, gz] = grids;
    let inst = instantiate3(&expr, &gx?, &gy?, &gz?)?;
    Ok((expr.to_string(), inst.relation))
}
