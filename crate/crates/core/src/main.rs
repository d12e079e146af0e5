use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use flag_ekr::chars::{dimension, induce_trivial, Sign};
use flag_ekr::geometry::{run_suite, SuiteReport};
use flag_ekr::hecke::{
    distinct_eigenvalues, eigenvalues_partial, ekr_bound, BoundReport, PolarParam,
    StructureConstants,
};
use flag_ekr::weyl::{Family, TypeSubset, WeylDescriptor};
use flag_ekr::{Budget, Error};

/// Eigenvalues of opposition on flags of buildings and the EKR bounds they give.
#[derive(Debug, Parser)]
#[command(name = "flag-ekr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Delsarte-Hoffman bound for EKR-sets of flags of one type.
    Bound(GroupArgs),
    /// Eigenvalues of opposition, one row per irreducible constituent.
    Spectrum(GroupArgs),
    /// Decomposition of the permutation character on flags of the type.
    Decompose(GroupArgs),
    /// Run a verification suite against explicit geometries.
    Verify {
        /// pg22, pg32, sp62, o72, o8p2, hecke-a2 or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Quick consistency checks of the formulas.
    Selftest {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Debug, Args)]
struct GroupArgs {
    /// Weyl family: A, B (or C) or D.
    #[arg(long)]
    family: Family,
    /// Rank n of the Weyl group.
    #[arg(long)]
    rank: usize,
    /// Field order (a prime power).
    #[arg(long)]
    q: u64,
    /// Polar parameter: 0, 1/2, 1, 3/2 or 2 (B only; D is always 0).
    #[arg(long)]
    e: Option<PolarParam>,
    /// Node labels present in the flags, e.g. `1,3` or `4'`; default all.
    #[arg(long = "type", conflicts_with = "cotype")]
    ty: Option<String>,
    /// Node labels absent from the flags.
    #[arg(long)]
    cotype: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

struct Request {
    desc: WeylDescriptor,
    sc: StructureConstants,
    e: PolarParam,
    cotype: TypeSubset,
    format: Format,
}

impl GroupArgs {
    fn resolve(&self) -> Result<Request, Error> {
        let desc = WeylDescriptor::new(self.family, self.rank)?;
        let e = match (self.family, self.e) {
            (Family::A, None) | (Family::D, None) => PolarParam::Zero,
            (Family::A, Some(_)) => {
                return Err(Error::Parse("--e does not apply to family A".into()))
            }
            (Family::D, Some(PolarParam::Zero)) => PolarParam::Zero,
            (Family::D, Some(e)) => {
                return Err(Error::Parse(format!("family D has e = 0, got {e}")))
            }
            (Family::B, Some(e)) => e,
            (Family::B, None) => return Err(Error::Parse("family B needs --e".into())),
        };
        let sc = StructureConstants::new(self.q, e)?;
        let cotype = match (&self.ty, &self.cotype) {
            (Some(t), _) => TypeSubset::parse(&desc, t)?.complement(&desc),
            (None, Some(c)) => TypeSubset::parse(&desc, c)?,
            (None, None) => TypeSubset::empty(),
        };
        Ok(Request {
            desc,
            sc,
            e,
            cotype,
            format: self.format,
        })
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::BudgetExceeded { .. } => 3,
        Error::Inconsistent(_) | Error::Io(_) => 1,
        _ => 2,
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn run_bound(req: &Request) -> Result<(), Error> {
    let report = ekr_bound(&req.desc, &req.sc, &req.cotype)?;
    match req.format {
        Format::Json => print_json(&report)?,
        Format::Tsv => {
            for (k, v) in bound_rows(&report) {
                println!("{k}\t{v}");
            }
        }
        Format::Text => {
            for (k, v) in bound_rows(&report) {
                println!("{k:<14} {v}");
            }
        }
    }
    Ok(())
}

fn bound_rows(r: &BoundReport) -> Vec<(String, String)> {
    let mut rows = vec![
        ("group".to_string(), format!("{}{}", r.family, r.rank)),
        ("q".into(), r.q.to_string()),
    ];
    if let Some(e) = r.e {
        rows.push(("e".into(), e.to_string()));
    }
    rows.extend([
        ("type".into(), r.ty.clone()),
        ("cotype".into(), r.cotype.clone()),
        ("v".into(), r.v.to_string()),
        (
            "valency".into(),
            format!("{} (q^({}))", r.valency_value, r.valency.exp_string()),
        ),
        (
            "lambda_min".into(),
            format!(
                "{} (q^({}), {})",
                r.lambda_min_value,
                r.lambda_min.exp_string(),
                r.lambda_min_label
            ),
        ),
        ("bound".into(), r.bound.to_string()),
        ("bound_floor".into(), r.bound_floor.to_string()),
    ]);
    if let Some(c) = &r.closed_form {
        rows.push(("closed_form".into(), c.to_string()));
    }
    for c in &r.sharp_constructions {
        rows.push(("construction".into(), format!("{}: {}", c.name, c.size)));
    }
    for w in &r.warnings {
        rows.push(("warning".into(), w.clone()));
    }
    rows
}

#[derive(Serialize)]
struct SpectrumRow {
    label: String,
    multiplicity: u64,
    sign: &'static str,
    exp: String,
    value: String,
}

fn run_spectrum(req: &Request) -> Result<(), Error> {
    let entries = eigenvalues_partial(&req.desc, &req.sc, &req.cotype)?;
    let rows: Vec<SpectrumRow> = entries
        .iter()
        .map(|x| SpectrumRow {
            label: x.label.to_string(),
            multiplicity: x.multiplicity,
            sign: x.eigenvalue.sign.symbol(),
            exp: x.eigenvalue.exp_string(),
            value: x.eigenvalue.value_string(req.sc.q, req.e),
        })
        .collect();
    match req.format {
        Format::Json => {
            let distinct: Vec<String> = distinct_eigenvalues(&entries, req.e)
                .iter()
                .map(|(s, t, _)| distinct_value(*s, *t, req.sc.q))
                .collect();
            print_json(&serde_json::json!({
                "group": req.desc.to_string(),
                "q": req.sc.q,
                "e": (req.desc.family != Family::A).then(|| req.e.to_string()),
                "cotype": req.cotype.render(&req.desc),
                "rows": rows,
                "distinct": distinct,
            }))?
        }
        Format::Tsv => {
            println!("label\tmultiplicity\tsign\texp\tvalue");
            for r in &rows {
                println!(
                    "{}\t{}\t{}\t{}\t{}",
                    r.label, r.multiplicity, r.sign, r.exp, r.value
                );
            }
        }
        Format::Text => {
            println!(
                "{:<16} {:>12} {:>4} {:>14} {:>12}",
                "label", "multiplicity", "sign", "exp", "value"
            );
            for r in &rows {
                println!(
                    "{:<16} {:>12} {:>4} {:>14} {:>12}",
                    r.label, r.multiplicity, r.sign, r.exp, r.value
                );
            }
        }
    }
    Ok(())
}

fn distinct_value(sign: Sign, twice: i64, q: u64) -> String {
    let mag = match flag_ekr::hecke::power_half(q, twice) {
        Some(m) => m.to_string(),
        None => format!("{q}^({twice}/2)"),
    };
    match sign {
        Sign::Plus => mag,
        Sign::Minus => format!("-{mag}"),
        Sign::Both => format!("±{mag}"),
    }
}

fn run_decompose(req: &Request) -> Result<(), Error> {
    let d = induce_trivial(&req.desc, &req.cotype)?;
    match req.format {
        Format::Json => {
            let rows: Vec<_> = d
                .entries
                .iter()
                .map(|(l, m)| serde_json::json!({"label": l.to_string(), "multiplicity": m, "degree": dimension(l).to_string()}))
                .collect();
            print_json(&serde_json::json!({
                "group": req.desc.to_string(),
                "cotype": req.cotype.render(&req.desc),
                "index": d.total_dimension().to_string(),
                "constituents": rows,
            }))?
        }
        Format::Tsv => {
            println!("label\tmultiplicity\tdegree");
            for (l, m) in &d.entries {
                println!("{l}\t{m}\t{}", dimension(l));
            }
        }
        Format::Text => {
            for (l, m) in &d.entries {
                println!("{:<16} x{:<6} degree {}", l.to_string(), m, dimension(l));
            }
            println!("index |W:W_J| = {}", d.total_dimension());
        }
    }
    Ok(())
}

fn print_checks(report: &SuiteReport, format: Format) -> Result<(), Error> {
    match format {
        Format::Json => print_json(report)?,
        Format::Tsv => {
            for c in &report.checks {
                println!(
                    "{}\t{}\t{}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
        }
        Format::Text => {
            for c in &report.checks {
                println!(
                    "{} {:<40} {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            println!("{} checks, {failed} failed", report.checks.len());
        }
    }
    Ok(())
}

fn run_selftest(budget: &Budget) -> Result<SuiteReport, Error> {
    use flag_ekr::geometry::CheckResult;
    let mut checks = Vec::new();
    let mut bound_check =
        |name: &str, family, rank, q, e, ty: &str, expected: &str| -> Result<(), Error> {
            let desc = WeylDescriptor::new(family, rank)?;
            let sc = StructureConstants::new(q, e)?;
            let cotype = TypeSubset::parse(&desc, ty)?.complement(&desc);
            let r = ekr_bound(&desc, &sc, &cotype)?;
            checks.push(CheckResult {
                name: name.to_string(),
                passed: r.bound.to_string() == expected,
                detail: format!("bound {} (expected {expected})", r.bound),
            });
            Ok(())
        };
    bound_check("PG(3,2) lines", Family::A, 3, 2, PolarParam::Zero, "2", "7")?;
    bound_check(
        "PG(3,2) chambers",
        Family::A,
        3,
        2,
        PolarParam::Zero,
        "all",
        "63",
    )?;
    bound_check("W(5,2) points", Family::B, 3, 2, PolarParam::One, "1", "7")?;
    bound_check(
        "W(5,2) generators",
        Family::B,
        3,
        2,
        PolarParam::One,
        "3",
        "15",
    )?;
    bound_check(
        "Q+(7,2) generators of one class",
        Family::D,
        4,
        2,
        PolarParam::Zero,
        "4",
        "15",
    )?;
    bound_check(
        "Q+(5,2) chambers, e = 0 and n odd",
        Family::B,
        3,
        2,
        PolarParam::Zero,
        "all",
        "315",
    )?;
    let mut report = run_suite("hecke-a2", budget)?;
    checks.append(&mut report.checks);
    Ok(SuiteReport {
        suite: "selftest".into(),
        passed: checks.iter().all(|c| c.passed),
        checks,
        instances: Vec::new(),
    })
}

fn run(cli: Cli) -> Result<bool, Error> {
    let budget = Budget::from_env()?;
    match cli.command {
        Command::Bound(args) => run_bound(&args.resolve()?).map(|_| true),
        Command::Spectrum(args) => run_spectrum(&args.resolve()?).map(|_| true),
        Command::Decompose(args) => run_decompose(&args.resolve()?).map(|_| true),
        Command::Verify { suite, format } => {
            let report = run_suite(&suite, &budget)?;
            print_checks(&report, format)?;
            Ok(report.passed)
        }
        Command::Selftest { format } => {
            let report = run_selftest(&budget)?;
            print_checks(&report, format)?;
            Ok(report.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
