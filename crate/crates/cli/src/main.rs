use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wsec::cert::{self, render_table_text, render_table_tsv, Certificate, Outcome, Request};
use wsec::grid::{self, Check};
use wsec_core::parabolic::ParabolicCase;
use wsec_core::{Error, Family};

#[derive(Parser)]
#[command(
    name = "wsec",
    version,
    about = "Exact certificates for adapted pairs and Weierstrass sections"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build and verify the adapted pair of one case and print its certificate.
    AdaptedPair(CaseArgs),
    /// Print the generator weight/degree table of one case.
    Table(CaseArgs),
    /// Sweep every named case up to a rank bound.
    Grid(GridArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseKind {
    #[value(name = "p_sl")]
    PSl,
    #[value(name = "p_ell")]
    PEll,
    #[value(name = "q_sl")]
    QSl,
    #[value(name = "raw")]
    Raw,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    #[value(name = "notwork")]
    NotWork,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

fn parse_family(s: &str) -> Result<Family, String> {
    match s {
        "B" | "b" => Ok(Family::B),
        "C" | "c" => Ok(Family::C),
        "D" | "d" => Ok(Family::D),
        _ => Err(format!("unknown family {s:?}, expected B, C or D")),
    }
}

#[derive(Args)]
struct CaseArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Defaults to `raw` when `--raw` is given.
    #[arg(long, value_enum)]
    case: Option<CaseKind>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
    /// Deleted simple roots, e.g. `2,4,6`.
    #[arg(long, value_delimiter = ',')]
    raw: Option<Vec<usize>>,
    #[arg(long, value_enum)]
    variant: Option<Variant>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Seeds for the index oracle.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    seeds: Vec<u64>,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long)]
    max_n: usize,
    /// Any of pairs, index, bounds, scaling, cascade, or all.
    #[arg(long, value_delimiter = ',', default_value = "pairs")]
    checks: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    seeds: Vec<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn request(a: &CaseArgs) -> Result<Request, String> {
    let kind = match (a.case, &a.raw) {
        (Some(k), _) => k,
        (None, Some(_)) => CaseKind::Raw,
        (None, None) => return Err("give --case or --raw".into()),
    };
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| format!("--{flag} is required for this case"))
    };
    let case = match kind {
        CaseKind::PSl => ParabolicCase::P {
            family: a.family,
            n: a.n,
            s: need(a.s, "s")?,
            ell: a.ell.unwrap_or(0),
        },
        CaseKind::PEll => {
            if a.family != Family::D {
                return Err("p_ell needs --family D".into());
            }
            ParabolicCase::PL {
                n: a.n,
                ell: need(a.ell, "ell")?,
            }
        }
        CaseKind::QSl => {
            if a.family != Family::D {
                return Err("q_sl needs --family D".into());
            }
            ParabolicCase::Q {
                n: a.n,
                s: need(a.s, "s")?,
                ell: a.ell.unwrap_or(0),
            }
        }
        CaseKind::Raw => {
            let list = a.raw.clone().ok_or("--case raw needs --raw")?;
            let deleted: BTreeSet<usize> = list.into_iter().collect();
            ParabolicCase::Raw {
                family: a.family,
                n: a.n,
                deleted,
            }
        }
    };
    if a.raw.is_some() && !matches!(kind, CaseKind::Raw) {
        return Err("--raw only goes with --case raw".into());
    }
    let mut req = Request::new(case);
    req.notwork = a.variant.is_some();
    req.seeds = a.seeds.clone();
    Ok(req)
}

fn run_case(a: &CaseArgs) -> Result<(Certificate, Outcome), ExitCode> {
    let req = request(a).map_err(usage)?;
    cert::certify(&req).map_err(|e| match e {
        Error::Parameter(_) | Error::RankOutOfRange { .. } | Error::NotARoot(_) => usage(e),
        e => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    })
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("certificate serializes");
    s.push('\n');
    s
}

fn adapted_pair(a: &CaseArgs) -> ExitCode {
    let (c, outcome) = match run_case(a) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let out = match a.format {
        Format::Text => cert::render_text(&c),
        Format::Json => json(&c),
        Format::Tsv => cert::render_tsv(&c),
    };
    print!("{out}");
    match outcome {
        Outcome::Pass => ExitCode::SUCCESS,
        Outcome::Fail(msg) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}

fn table(a: &CaseArgs) -> ExitCode {
    let (c, outcome) = match run_case(a) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let Some(rows) = &c.table else {
        let msg = match outcome {
            Outcome::Fail(m) => m,
            Outcome::Pass => "no table for this case".into(),
        };
        eprintln!("verification failed: {msg}");
        return ExitCode::from(1);
    };
    let out = match a.format {
        Format::Text => render_table_text(rows),
        Format::Json => json(rows),
        Format::Tsv => render_table_tsv(rows),
    };
    print!("{out}");
    match outcome {
        Outcome::Pass => ExitCode::SUCCESS,
        Outcome::Fail(msg) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}

fn grid_cmd(a: &GridArgs) -> ExitCode {
    let mut checks = Vec::new();
    for name in &a.checks {
        if name == "all" {
            checks.extend(Check::ALL);
        } else if let Some(c) = Check::parse(name) {
            checks.push(c);
        } else {
            return usage(format!("unknown check {name:?}"));
        }
    }
    if a.seeds.is_empty() {
        return usage("at least one seed is needed");
    }
    let report = grid::run_grid(a.max_n, &checks, &a.seeds);
    let out = match a.format {
        Format::Text => grid::render_text(&report),
        Format::Json => json(&report),
        Format::Tsv => grid::render_tsv(&report),
    };
    print!("{out}");
    let failures = report.failures();
    if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        let names: Vec<&str> = failures.iter().map(|c| c.case.as_str()).collect();
        eprintln!("failing cases: {}", names.join(", "));
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.cmd {
        Cmd::AdaptedPair(a) => adapted_pair(a),
        Cmd::Table(a) => table(a),
        Cmd::Grid(a) => grid_cmd(a),
    }
}
