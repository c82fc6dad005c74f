//! clean-sombor CLI: analyze single moduli, sweep ranges, export graphs, and
//! evaluate closed forms.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use clean_sombor::formula;
use clean_sombor::graph::{CleanGraph, Variant};
use clean_sombor::report::{self, RangeFilter};
use clean_sombor::ring::ResidueRing;
use clean_sombor::{export, DEFAULT_VERTEX_CAP};

#[derive(Parser)]
#[command(
    name = "clean-sombor",
    version,
    about = "Clean graphs of Z_n: exact Sombor indices vs closed forms"
)]
struct Cli {
    /// Refuse to build graphs with more vertices than this.
    #[arg(
        long,
        global = true,
        env = "CLEAN_SOMBOR_MAX_VERTICES",
        default_value_t = DEFAULT_VERTEX_CAP
    )]
    max_vertices: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the graph for one n and compare the oracle with the closed form.
    Analyze {
        /// Modulus (n ≥ 3). Accepts `a^b` shorthand, e.g. `2^10`.
        #[arg(value_parser = parse_modulus)]
        n: u64,
        /// Stdout rendering.
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify every n in [LO, HI], writing one JSON line per modulus.
    VerifyRange {
        #[arg(value_parser = parse_modulus)]
        lo: u64,
        #[arg(value_parser = parse_modulus)]
        hi: u64,
        /// Restrict to a number of distinct prime factors.
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
        /// Report file (defaults to stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a DOT or JSON rendering of the graph.
    Export {
        #[arg(value_parser = parse_modulus)]
        n: u64,
        #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
        format: ExportFormat,
        #[arg(long, value_enum, default_value_t = VariantArg::Cl2)]
        variant: VariantArg,
        /// Output file (defaults to `<variant>_<n>.<ext>`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the closed form only — no graph construction.
    Formula {
        #[arg(value_parser = parse_modulus)]
        n: u64,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FilterArg {
    All,
    K1,
    K2,
    #[value(name = "k3plus", alias = "k≥3", alias = "k>=3")]
    K3Plus,
}

impl From<FilterArg> for RangeFilter {
    fn from(value: FilterArg) -> Self {
        match value {
            FilterArg::All => RangeFilter::All,
            FilterArg::K1 => RangeFilter::K1,
            FilterArg::K2 => RangeFilter::K2,
            FilterArg::K3Plus => RangeFilter::K3Plus,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Full,
    Cl2,
}

impl From<VariantArg> for Variant {
    fn from(value: VariantArg) -> Self {
        match value {
            VariantArg::Full => Variant::Full,
            VariantArg::Cl2 => Variant::Cl2,
        }
    }
}

/// Parses `n` as a decimal integer or `base^exponent`.
fn parse_modulus(raw: &str) -> Result<u64, String> {
    if let Some((base, exp)) = raw.split_once('^') {
        let base: u64 = base.trim().parse().map_err(|_| format!("bad base `{base}`"))?;
        let exp: u32 = exp.trim().parse().map_err(|_| format!("bad exponent `{exp}`"))?;
        base.checked_pow(exp)
            .ok_or_else(|| format!("{raw} does not fit in 64 bits"))
    } else {
        raw.parse().map_err(|_| format!("bad integer `{raw}`"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Analyze { n, format, out } => analyze(n, format, out, cli.max_vertices),
        Command::VerifyRange {
            lo,
            hi,
            filter,
            out,
        } => verify_range(lo, hi, filter.into(), out, cli.max_vertices),
        Command::Export {
            n,
            format,
            variant,
            out,
        } => export_graph(n, format, variant.into(), out, cli.max_vertices),
        Command::Formula { n, format } => formula_only(n, format),
    }
}

fn factorization_string(ring: &ResidueRing) -> String {
    ring.factors()
        .iter()
        .map(|&(p, a)| {
            if a == 1 {
                p.to_string()
            } else {
                format!("{p}^{a}")
            }
        })
        .collect::<Vec<_>>()
        .join(" · ")
}

fn analyze(
    n: u64,
    format: TextOrJson,
    out: Option<PathBuf>,
    max_vertices: u64,
) -> anyhow::Result<ExitCode> {
    let (report, oracle, formula_value) = report::verify_single_with_values(n, max_vertices)?;
    let json = serde_json::to_string(&report)?;
    match format {
        TextOrJson::Json => println!("{json}"),
        TextOrJson::Text => {
            let ring = ResidueRing::new(n)?;
            println!("n = {} = {}", n, factorization_string(&ring));
            println!(
                "k = {}, m = {}, φ(n) = {}, r = {}",
                report.k, report.m, report.phi, report.r
            );
            println!(
                "cl2 graph: {} vertices, {} edges",
                report.vertex_count, report.edge_count
            );
            println!("case = {}", report.case);
            println!("oracle  = {}  (≈ {:.6})", report.oracle_value, oracle.to_f64());
            println!(
                "formula = {}  (≈ {:.6})",
                report.formula_value,
                formula_value.to_f64()
            );
            if report.exact_match {
                println!("exact match: yes");
            } else {
                println!("exact match: no (formula − oracle = {})", report.difference);
            }
            println!(
                "degree table: {}",
                if report.degree_table_match {
                    "match"
                } else {
                    "mismatch"
                }
            );
            println!("runtime: {} ms", report.runtime_ms);
        }
    }
    if let Some(path) = out {
        std::fs::write(&path, format!("{json}\n"))
            .with_context(|| format!("cannot write {}", path.display()))?;
        eprintln!("report written to {}", path.display());
    }
    Ok(if !report.exact_match && report.k <= 2 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn verify_range(
    lo: u64,
    hi: u64,
    filter: RangeFilter,
    out: Option<PathBuf>,
    max_vertices: u64,
) -> anyhow::Result<ExitCode> {
    let reports = report::verify_range(lo, hi, filter, max_vertices)?;
    let summary = report::summarize(&reports);
    match &out {
        Some(path) => {
            let file = std::fs::File::create(path)
                .with_context(|| format!("cannot write {}", path.display()))?;
            let mut writer = std::io::BufWriter::new(file);
            report::write_jsonl(&reports, &summary, &mut writer)?;
            writer.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            report::write_jsonl(&reports, &summary, &mut lock)?;
            lock.flush()?;
        }
    }
    eprintln!(
        "verified {} moduli: {} exact matches, {} mismatches",
        summary.rows, summary.matches, summary.mismatches
    );
    for (case, counts) in &summary.per_case {
        eprintln!(
            "  {case}: {} match, {} mismatch",
            counts.matches, counts.mismatches
        );
    }
    Ok(if summary.low_k_mismatches > 0 {
        eprintln!(
            "{} mismatches at k ≤ 2 — this indicates a bug in the artifact",
            summary.low_k_mismatches
        );
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn export_graph(
    n: u64,
    format: ExportFormat,
    variant: Variant,
    out: Option<PathBuf>,
    max_vertices: u64,
) -> anyhow::Result<ExitCode> {
    let ring = ResidueRing::new(n)?;
    let graph = CleanGraph::build(&ring, variant, max_vertices)?;
    let (contents, ext) = match format {
        ExportFormat::Dot => (export::to_dot(&graph), "dot"),
        ExportFormat::Json => (export::to_json(&graph), "json"),
    };
    let path = out.unwrap_or_else(|| PathBuf::from(format!("{}_{n}.{ext}", variant.as_str())));
    std::fs::write(&path, contents).with_context(|| format!("cannot write {}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(ExitCode::SUCCESS)
}

fn formula_only(n: u64, format: TextOrJson) -> anyhow::Result<ExitCode> {
    let ring = ResidueRing::new(n)?;
    let evaluation = formula::evaluate(&ring)?;
    match format {
        TextOrJson::Text => {
            println!(
                "{}: {}  (≈ {:.6})",
                evaluation.case.tag(),
                evaluation.value,
                evaluation.value.to_f64()
            );
        }
        TextOrJson::Json => {
            let doc = serde_json::json!({
                "n": n,
                "case": evaluation.case.tag(),
                "k": evaluation.inputs.k,
                "phi": evaluation.inputs.phi,
                "r": evaluation.inputs.r,
                "value": evaluation.value.to_string(),
                "float": evaluation.value.to_f64(),
            });
            println!("{doc}");
        }
    }
    Ok(ExitCode::SUCCESS)
}
