mod output;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use invcensus_core::census::{generating_series, CensusProblem};
use invcensus_core::characters::CharacterEngine;
use invcensus_core::factor::{compare, search_candidates, SearchConstraints};
use invcensus_core::kronecker::inner_product_expansion;
use invcensus_core::molien::molien_series;
use invcensus_core::{Limits, Partition, SeriesZ};

use output::{Format, OutputEnvelope, Rendered};

#[derive(Parser)]
#[command(
    name = "invcensus",
    version,
    about = "Count local unitary invariants of bipartite density matrices"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Directory for persistent character tables.
    #[arg(long, global = true, env = "INVCENSUS_CACHE")]
    cache_dir: Option<PathBuf>,

    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Highest census or Molien degree accepted (never above 16).
    #[arg(long, global = true, default_value_t = Limits::default().max_degree)]
    degree_limit: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct SystemArgs {
    /// Dimension of the first subsystem.
    #[arg(long)]
    n1: usize,
    /// Dimension of the second subsystem.
    #[arg(long)]
    n2: usize,
    /// Truncation degree of the printed series.
    #[arg(long, default_value_t = 12)]
    max_degree: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant counts F_0..F_D from symmetric-group Kronecker products.
    Census(SystemArgs),
    /// The same counts as Molien-series coefficients by torus integration.
    Molien {
        #[command(flatten)]
        system: SystemArgs,
        /// Also run the census and compare term by term.
        #[arg(long)]
        check: bool,
    },
    /// Decompose the inner product of two S_n irreducibles.
    Kron { lambda: Partition, mu: Partition },
    /// Rank rational-form factorisations of a series file.
    Factor {
        series_file: PathBuf,
        #[arg(long)]
        free_generators: Option<usize>,
        #[arg(long, default_value_t = 9)]
        max_factor_degree: usize,
        #[arg(long, default_value_t = 10)]
        max_total_factors: usize,
        /// Number of ranked candidates to print; 0 prints all.
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
    /// One character value chi^lambda(mu).
    Char { lambda: Partition, mu: Partition },
    /// Full character table of S_n.
    Table { n: usize },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Census(_) => "census",
            Command::Molien { .. } => "molien",
            Command::Kron { .. } => "kron",
            Command::Factor { .. } => "factor",
            Command::Char { .. } => "char",
            Command::Table { .. } => "table",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .context("configuring the thread pool")?;
    }
    let limits = Limits {
        max_degree: cli.degree_limit,
        ..Limits::default()
    };
    let mut engine = CharacterEngine::new(limits);
    if let Some(dir) = &cli.cache_dir {
        engine = engine.with_cache_dir(dir);
    }

    let started = Instant::now();
    let rendered = match &cli.command {
        Command::Census(sys) => census(&engine, sys)?,
        Command::Molien { system, check } => molien(&engine, system, *check)?,
        Command::Kron { lambda, mu } => kron(&engine, lambda, mu)?,
        Command::Factor {
            series_file,
            free_generators,
            max_factor_degree,
            max_total_factors,
            limit,
        } => factor(
            series_file,
            SearchConstraints {
                free_generators: *free_generators,
                max_factor_degree: *max_factor_degree,
                max_total_factors: *max_total_factors,
            },
            *limit,
        )?,
        Command::Char { lambda, mu } => character(&engine, lambda, mu)?,
        Command::Table { n } => table(&engine, *n)?,
    };

    match cli.format {
        Format::Text => print!("{}", rendered.text),
        Format::Json => {
            let envelope =
                OutputEnvelope::new(cli.command.name(), rendered.input, rendered.result, started);
            println!("{}", envelope.to_json());
        }
    }
    Ok(rendered.status)
}

fn coefficient_list(s: &SeriesZ) -> String {
    let items: Vec<String> = s.coefficients().iter().map(|c| c.to_string()).collect();
    format!("[{}]", items.join(","))
}

fn problem_of(sys: &SystemArgs, limits: &Limits) -> Result<CensusProblem> {
    limits.check_degree(sys.max_degree)?;
    Ok(CensusProblem::new(sys.n1, sys.n2)?)
}

fn system_input(sys: &SystemArgs) -> serde_json::Value {
    json!({ "n1": sys.n1, "n2": sys.n2, "max_degree": sys.max_degree })
}

fn census(engine: &CharacterEngine, sys: &SystemArgs) -> Result<Rendered> {
    let problem = problem_of(sys, engine.limits())?;
    let series = generating_series(engine, &problem, sys.max_degree)?;
    Ok(Rendered {
        input: system_input(sys),
        result: json!({ "sigma_bound": problem.sigma_bound(), "series": series }),
        text: format!(
            "F(q) = {}\ncoefficients: {}\n",
            series.render("q"),
            coefficient_list(&series)
        ),
        status: 0,
    })
}

fn molien(engine: &CharacterEngine, sys: &SystemArgs, check: bool) -> Result<Rendered> {
    let problem = problem_of(sys, engine.limits())?;
    let series = molien_series(&problem, sys.max_degree)?;
    let mut input = system_input(sys);
    input["check"] = json!(check);
    let mut result = json!({ "series": series });
    let mut text = format!(
        "P(z) = {}\ncoefficients: {}\n",
        series.render("z"),
        coefficient_list(&series)
    );
    let mut status = 0;
    if check {
        let census = generating_series(engine, &problem, sys.max_degree)?;
        match compare(&series, &census) {
            None => {
                result["census_agreement"] = json!({ "ok": true });
                text.push_str("census agreement: OK\n");
            }
            Some(m) => {
                result["census_agreement"] = json!({
                    "ok": false,
                    "degree": m.degree,
                    "molien": m.left,
                    "census": m.right,
                });
                let _ = writeln!(
                    text,
                    "census agreement: MISMATCH at degree {} (molien {}, census {})",
                    m.degree, m.left, m.right
                );
                status = 3;
            }
        }
    }
    Ok(Rendered {
        input,
        result,
        text,
        status,
    })
}

fn kron(engine: &CharacterEngine, lambda: &Partition, mu: &Partition) -> Result<Rendered> {
    let expansion = inner_product_expansion(engine, lambda, mu)?;
    let mut text = String::new();
    for term in expansion.terms() {
        let _ = writeln!(text, "{{{}}}: {}", term.partition, term.multiplicity);
    }
    Ok(Rendered {
        input: json!({ "lambda": lambda, "mu": mu }),
        result: json!({ "expansion": expansion.to_string(), "terms": expansion.terms() }),
        text,
        status: 0,
    })
}

fn factor(path: &PathBuf, constraints: SearchConstraints, limit: usize) -> Result<Rendered> {
    let raw = std::fs::read_to_string(path)
        .with_context(|| format!("reading series file {}", path.display()))?;
    let target = SeriesZ::from_json(&raw).with_context(|| format!("parsing {}", path.display()))?;
    let reports = search_candidates(&target, &constraints)?;
    let total = reports.len();
    let shown = if limit == 0 { total } else { limit.min(total) };
    let reports = &reports[..shown];

    let mut text = format!("{total} candidates; showing {shown}\n");
    for (rank, r) in reports.iter().enumerate() {
        let join = |d: &[usize]| {
            d.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let _ = write!(
            text,
            "#{} num {{{}}} den {{{}}}  free={} total={} match-degree={}",
            rank + 1,
            join(r.candidate.numerator_degrees()),
            join(r.candidate.denominator_degrees()),
            r.free_generators,
            r.total_invariants,
            r.match_degree,
        );
        if let Some(m) = r.first_mismatch {
            let _ = write!(
                text,
                " first-mismatch={} (candidate {}, target {})",
                m.degree, m.left, m.right
            );
        }
        let _ = writeln!(text, "\n    {}", r.candidate);
    }
    Ok(Rendered {
        input: json!({
            "series_file": path.display().to_string(),
            "constraints": constraints,
            "limit": limit,
        }),
        result: json!({ "target": target, "candidate_count": total, "candidates": reports }),
        text,
        status: 0,
    })
}

fn character(engine: &CharacterEngine, lambda: &Partition, mu: &Partition) -> Result<Rendered> {
    let value = engine.character(lambda, mu)?;
    Ok(Rendered {
        input: json!({ "lambda": lambda, "mu": mu }),
        result: json!({ "value": value }),
        text: format!("{value}\n"),
        status: 0,
    })
}

fn table(engine: &CharacterEngine, n: usize) -> Result<Rendered> {
    let table = engine.char_table(n)?;
    let labels: Vec<String> = table.partitions().iter().map(|p| p.to_string()).collect();
    let rows: Vec<&[i128]> = (0..table.len()).map(|i| table.row(i)).collect();

    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|v| v.to_string()).collect())
        .collect();
    let label_width = labels.iter().map(String::len).max().unwrap_or(1);
    let col_width = labels
        .iter()
        .chain(cells.iter().flatten())
        .map(String::len)
        .max()
        .unwrap_or(1);
    let mut text = format!("{:label_width$}", "");
    for l in &labels {
        let _ = write!(text, " {l:>col_width$}");
    }
    text.push('\n');
    for (label, row) in labels.iter().zip(&cells) {
        let _ = write!(text, "{label:<label_width$}");
        for v in row {
            let _ = write!(text, " {v:>col_width$}");
        }
        text.push('\n');
    }
    Ok(Rendered {
        input: json!({ "n": n }),
        result: json!({ "partitions": table.partitions(), "rows": rows }),
        text,
        status: 0,
    })
}
