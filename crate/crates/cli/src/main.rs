//! `expd`: counting, certification, cuttings and derived-relation checks on
//! finite relations, with CSV/JSON reports.
//!
//! Exit codes: 0 every check held, 2 a check failed, 3 bad input, 4 budget or
//! capacity exceeded.

mod instance;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use expd_core::cuttings::verify_cutting;
use expd_core::es::DerivedG;
use expd_core::experiment::{
    run_certify, run_pipeline3, run_scaling, CertifyConfig, Pipeline3Config, Status,
};
use expd_core::report::{render, Format, ReportRow};
use expd_core::zarankiewicz::ExponentParams;
use expd_core::{Error, Fit, Rational, Result};
use serde_json::json;

use instance::TernarySource;

#[derive(Parser)]
#[command(name = "expd", version, about = "Finite incidence experiments")]
struct Cli {
    /// Seed for every randomized instance, grid and sample.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Report format: csv or json.
    #[arg(long, global = true, default_value = "csv")]
    format: String,
    /// Report path; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest fiber still counted as finite.
    #[arg(long, global = true, default_value_t = 3)]
    threshold: usize,
    /// Cap on derived-relation cells.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget_cells: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TernaryArgs {
    /// rel3 JSON file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Relation expression, e.g. "x + y = z mod 101".
    #[arg(long)]
    expr: Option<String>,
    #[arg(long)]
    gx: Option<String>,
    #[arg(long)]
    gy: Option<String>,
    #[arg(long)]
    gz: Option<String>,
    /// cyclic, cyclic-shuffled, units, cylindrical[:num/den] or expr.
    #[arg(long)]
    family: Option<String>,
    /// Per-coordinate grids of an `expr` family: prefix, top or fullmod.
    #[arg(long, default_value = "prefix,prefix,prefix")]
    scaled: String,
    /// Family size.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact count of a binary instance or a ternary relation.
    Count {
        /// Binary instance: pg:q, identity:n, random:m:n:p, c4free:m:n,
        /// interval:count:points, rect:count:w:h or file:path.
        #[arg(long)]
        instance: Option<String>,
        #[command(flatten)]
        ternary: TernaryArgs,
    },
    /// Derived relation G of a rel3 file, written as a rel2 file over pair universes.
    DeriveG { input: PathBuf, output: PathBuf },
    /// Certified upper bound against the exact count.
    Certify {
        #[arg(long)]
        instance: String,
        #[arg(long, default_value_t = 2)]
        s: u32,
        #[arg(long, default_value_t = 2)]
        t: u32,
        /// Cutting exponent; the cutter's own when absent.
        #[arg(long = "cutting-exponent", short = 'D')]
        d: Option<u32>,
        #[arg(long, default_value = "1/12")]
        eps: String,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long, default_value_t = 1)]
        leaf: usize,
        /// auto, interval or greedy.
        #[arg(long, default_value = "auto")]
        cutter: String,
        /// Write the certificate tree here.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Build and verify cuttings of a binary instance.
    Cutting {
        #[arg(long)]
        instance: String,
        /// Comma-separated values of r.
        #[arg(long, default_value = "2,4,8")]
        r: String,
        #[arg(long, default_value = "auto")]
        cutter: String,
        /// Write the cover for the last r here.
        #[arg(long)]
        cover: Option<PathBuf>,
    },
    /// Degree, cylinder test, G, fiber laws and the Cauchy–Schwarz chain.
    Pipeline3 {
        #[command(flatten)]
        ternary: TernaryArgs,
        /// Side of the block searched for by the cylinder test.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Random point sets for the fiber check.
        #[arg(long, default_value_t = 8)]
        samples: usize,
        /// Write the full report bundle here.
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    /// Counts a family over several sizes and fits the log-log slope.
    Scan {
        #[arg(long)]
        family: String,
        #[arg(long)]
        expr: Option<String>,
        #[arg(long, default_value = "prefix,prefix,prefix")]
        scaled: String,
        #[arg(long, default_value = "16,32,64,128")]
        sizes: String,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } | Error::Capacity(_) => 4,
        _ => 3,
    }
}

fn list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| Error::Input(format!("bad {what} `{text}`"))))
        .collect()
}

fn write_out(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn table(header: &[&str], rows: &[Vec<String>], format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut out = header.join(",") + "\n";
            for r in rows {
                out += &(r.join(",") + "\n");
            }
            Ok(out)
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| {
                    header
                        .iter()
                        .zip(r)
                        .map(|(h, v)| {
                            let value = serde_json::from_str(v).unwrap_or_else(|_| json!(v));
                            (h.to_string(), value)
                        })
                        .collect::<serde_json::Map<_, _>>()
                })
                .collect();
            Ok(serde_json::to_string_pretty(&json!({ "columns": header, "rows": rows }))? + "\n")
        }
    }
}

fn source<'a>(t: &'a TernaryArgs, seed: Option<u64>) -> Result<TernarySource<'a>> {
    let grids = match (&t.gx, &t.gy, &t.gz) {
        (Some(x), Some(y), Some(z)) => [x.as_str(), y.as_str(), z.as_str()],
        (None, None, None) if t.expr.is_none() || t.input.is_some() || t.family.is_some() => {
            ["", "", ""]
        }
        _ => return Err(Error::Input("--expr needs all of --gx, --gy, --gz".into())),
    };
    Ok(TernarySource {
        input: t.input.as_ref(),
        expr: t.expr.as_deref(),
        grids,
        family: t.family.as_deref(),
        scaled: &t.scaled,
        n: t.n,
        seed,
    })
}

fn run(cli: &Cli) -> Result<bool> {
    let format: Format = cli.format.parse()?;
    let seed = cli.seed;
    let logged_seed = seed.unwrap_or(0);
    let out = cli.out.as_deref();

    match &cli.command {
        Command::Count { instance, ternary } => {
            let row = match instance {
                Some(text) => {
                    let inst = instance::binary(text, seed)?;
                    let rel = &inst.relation;
                    let n = rel.u().size.max(rel.v().size) as u64;
                    ReportRow::new(inst.name, n, rel.edge_count() as u64, logged_seed)
                }
                None => {
                    let (name, f) = instance::ternary(&source(ternary, seed)?)?;
                    let n = f.universes().iter().map(|u| u.size).max().unwrap_or(0) as u64;
                    ReportRow::new(name, n, f.count_full() as u64, logged_seed)
                }
            };
            write_out(&render(&[row], format, logged_seed)?, out)?;
            Ok(true)
        }

        Command::DeriveG { input, output } => {
            let f = match expd_core::RelationFile::read(input)? {
                expd_core::Relation::Ternary(f) => f,
                expd_core::Relation::Binary(_) => {
                    return Err(Error::Input(format!("{} holds a binary relation", input.display())))
                }
            };
            let g = DerivedG::new(&f, cli.budget_cells)?;
            std::fs::write(output, g.to_file().to_json())?;
            let (fz, fy) = g.fiber_maxima();
            let row = vec![
                g.len().to_string(),
                fz.to_string(),
                fy.to_string(),
                g.py().universe().size.to_string(),
                g.pz().universe().size.to_string(),
            ];
            let header = ["g_count", "max_fiber_z", "max_fiber_y", "y_pairs", "z_pairs"];
            write_out(&table(&header, &[row], format)?, out)?;
            Ok(true)
        }

        Command::Certify { instance, s, t, d, eps, r, leaf, cutter, certificate } => {
            let inst = instance::cutter(cutter, instance::binary(instance, seed)?)?;
            let eps: Rational = eps
                .parse()
                .map_err(|_| Error::Input(format!("bad epsilon `{eps}`")))?;
            let d = d.unwrap_or_else(|| inst.cutter.exponent());
            let rel = &inst.relation;
            let config = CertifyConfig {
                instance: inst.name.clone(),
                relation: rel,
                a: rel.u().full(),
                b: rel.v().full(),
                params: ExponentParams::new(d, *t, *s, eps)?,
                cutter: inst.cutter.as_ref(),
                r: *r,
                leaf_size: *leaf,
            };
            let row = run_certify(&config)?;
            if let Some(path) = certificate {
                let doc = match (&row.certificate, &row.witness) {
                    (Some(c), _) => serde_json::to_string(c)?,
                    (None, w) => serde_json::to_string(&json!({ "inapplicable": w }))?,
                };
                std::fs::write(path, doc)?;
            }
            let report = ReportRow::from_certify(&row, logged_seed);
            write_out(&render(&[report], format, logged_seed)?, out)?;
            Ok(row.status != Status::Failed)
        }

        Command::Cutting { instance, r, cutter, cover } => {
            let inst = instance::cutter(cutter, instance::binary(instance, seed)?)?;
            let rel = &inst.relation;
            let a = rel.u().full();
            let mut rows = Vec::new();
            let mut all_valid = true;
            for r in list::<u64>(r, "r list")? {
                if r < 1 {
                    return Err(Error::Input("r must be positive".into()));
                }
                let d = inst.cutter.exponent();
                let Some(c) = inst.cutter.cover(rel, &a, r) else {
                    all_valid = false;
                    rows.push(vec![
                        inst.name.clone(), a.len().to_string(), r.to_string(), d.to_string(),
                        String::new(), String::new(), String::new(), "false".into(),
                    ]);
                    continue;
                };
                let rep = verify_cutting(rel, &a, r, &c)?;
                all_valid &= rep.valid;
                rows.push(vec![
                    inst.name.clone(),
                    a.len().to_string(),
                    r.to_string(),
                    d.to_string(),
                    rep.cell_count.to_string(),
                    rep.max_crossing.to_string(),
                    format!("{:.6}", rep.fitted_c),
                    rep.valid.to_string(),
                ]);
                if let Some(path) = cover {
                    std::fs::write(path, serde_json::to_string(&c)?)?;
                }
            }
            let header = ["instance", "n", "r", "D", "cell_count", "max_crossing", "fitted_c", "valid"];
            write_out(&table(&header, &rows, format)?, out)?;
            Ok(all_valid)
        }

        Command::Pipeline3 { ternary, k, samples, bundle } => {
            let (name, f) = instance::ternary(&source(ternary, seed)?)?;
            let rep = run_pipeline3(&Pipeline3Config {
                instance: name,
                relation: &f,
                threshold: cli.threshold,
                k: *k,
                budget: cli.budget_cells,
                samples: *samples,
                seed: logged_seed,
                grids: None,
            })?;
            if let Some(path) = bundle {
                std::fs::write(path, serde_json::to_string_pretty(&rep)? + "\n")?;
            }
            let row = ReportRow::from_pipeline3(&rep, logged_seed);
            write_out(&render(&[row], format, logged_seed)?, out)?;
            Ok(rep.all_hold())
        }

        Command::Scan { family, expr, scaled, sizes } => {
            let fam = instance::family(family, expr.as_deref(), scaled, seed)?;
            let sizes = list::<usize>(sizes, "size list")?;
            let fit: Fit = run_scaling(&fam, &sizes)?;
            let rows = ReportRow::from_fit(&fam.name(), &fit, logged_seed);
            write_out(&render(&rows, format, logged_seed)?, out)?;
            Ok(true)
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("EXPD_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Input(format!("EXPD_THREADS must be a positive integer, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Input(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match configure_threads().and_then(|()| run(&cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("expd: a check failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("expd: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
