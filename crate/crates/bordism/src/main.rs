//! Command-line frontend: image and presentation computations, manifold
//! class evaluation, and the verification suites.
//!
//! Exit codes: 0 on success, 1 on a verification mismatch, 2 on usage errors.

use bordism::manifolds::{
    parse_expression, sw_number, thom_class, verify_milnor24, verify_table,
};
use bordism::partitions::Partition;
use bordism::primitives::{
    assemble_presentation, compute_image, compute_torsion_flags, rank_crosscheck, run_report,
    Engine, GeneratorJson, GeneratorRecord,
};
use bordism::spectra::Spectrum;
use bordism::symm::TransitionStore;
use bordism::tables;
use bordism::f2poly::F2Monomial;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bordism", version, about = "Cobordism image calculator")]
struct Cli {
    /// Directory for the symmetric-function transition cache. Defaults to
    /// $BORDISM_CACHE, then the platform cache directory.
    #[arg(long, global = true, env = "BORDISM_CACHE")]
    cache_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute image generators (with torsion flags for mspin/mspinc).
    Image(ImageArgs),
    /// Compute the generators-and-relations presentation report.
    Presentation(PresentationArgs),
    /// Evaluate a manifold expression: its Thom-basis class and any
    /// requested Stiefel-Whitney numbers.
    Manifold(ManifoldArgs),
    /// Run a verification suite against the frozen reference data.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ImageArgs {
    #[arg(long, default_value = "mspinc")]
    spectrum: Spectrum,
    #[arg(long)]
    max_degree: u32,
    /// Seed torsion detection with the full (Q0,Q1)-kernel in each degree
    /// instead of torsion monomials only.
    #[arg(long)]
    torsion_fallback: bool,
}

#[derive(Args)]
struct PresentationArgs {
    #[arg(long, default_value = "mspinc")]
    spectrum: Spectrum,
    #[arg(long)]
    max_degree: u32,
    #[arg(long)]
    torsion_fallback: bool,
}

#[derive(Args)]
struct ManifoldArgs {
    /// Expression over RP<n>, D<n> and P(m,n), e.g. "RP6 x RP2^2 + D5^2".
    expression: String,
    /// A Stiefel-Whitney monomial to evaluate, as comma-separated indices
    /// (e.g. "7,7,6,4" for w7^2*w6*w4). May be repeated.
    #[arg(long = "number")]
    numbers: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Bound on the degrees checked where the suite is degree-parameterized.
    #[arg(long, visible_alias = "through")]
    max_degree: Option<u32>,
    #[arg(long)]
    torsion_fallback: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Tables,
    Milnor24,
    Ranks,
}

fn store(cache_dir: Option<PathBuf>) -> TransitionStore {
    let dir = cache_dir.or_else(|| dirs::cache_dir().map(|d| d.join("bordism")));
    TransitionStore::new(dir)
}

fn records_for(engine: &Engine, spectrum: Spectrum, d: u32, fallback: bool) -> Vec<GeneratorRecord> {
    match spectrum {
        Spectrum::MSpin | Spectrum::MSpinC => {
            compute_torsion_flags(engine, spectrum, d, fallback)
        }
        _ => compute_image(engine, spectrum, d),
    }
}

fn print_records(records: &[GeneratorRecord]) {
    if records.is_empty() {
        println!("no generators");
    }
    for r in records {
        println!("{r}");
    }
}

fn cmd_image(args: ImageArgs, format: Format, cache_dir: Option<PathBuf>) -> ExitCode {
    let engine = Engine::new(store(cache_dir));
    let records = records_for(&engine, args.spectrum, args.max_degree, args.torsion_fallback);
    match format {
        Format::Text => print_records(&records),
        Format::Json => {
            let report = run_report(args.spectrum, args.max_degree, &records, &[]);
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
    }
    if args.spectrum == Spectrum::MSpinC && args.max_degree <= 33 {
        let report = rank_crosscheck(&records, &tables::torsion_ranks(), args.max_degree);
        if !report.pass() {
            for m in report.mismatches() {
                eprintln!(
                    "torsion rank mismatch in degree {}: computed {}, expected {} \
                     (rerun with --torsion-fallback)",
                    m.degree, m.computed, m.expected
                );
            }
            return ExitCode::from(1);
        }
    }
    ExitCode::SUCCESS
}

fn cmd_presentation(args: PresentationArgs, format: Format, cache_dir: Option<PathBuf>) -> ExitCode {
    let engine = Engine::new(store(cache_dir));
    let records = records_for(&engine, args.spectrum, args.max_degree, args.torsion_fallback);
    let pres = assemble_presentation(&records, args.max_degree);
    match format {
        Format::Text => {
            println!("generators:");
            for g in &pres.generators {
                match &g.element {
                    Some(e) => println!(
                        "  {} (degree {}{}): {}",
                        g.name,
                        g.degree,
                        if g.torsion { ", torsion" } else { "" },
                        e
                    ),
                    None => println!("  {} (degree {}, formal)", g.name, g.degree),
                }
            }
            if pres.relations.is_empty() {
                println!("no relations");
            } else {
                println!("relations:");
                for rel in &pres.relations {
                    println!("  {rel}");
                }
            }
        }
        Format::Json => {
            let mut report = run_report(args.spectrum, args.max_degree, &records, &pres.relations);
            report.generators.insert(
                0,
                GeneratorJson {
                    degree: 2,
                    name: "beta".to_string(),
                    partitions: Vec::new(),
                    torsion: false,
                },
            );
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
    }
    ExitCode::SUCCESS
}

fn cmd_manifold(args: ManifoldArgs, format: Format, cache_dir: Option<PathBuf>) -> ExitCode {
    let expr = match parse_expression(&args.expression) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("parse error: {e}");
            return ExitCode::from(2);
        }
    };
    let store = store(cache_dir);
    let class = thom_class(&expr, &store);
    let mut numbers: Vec<(String, bool)> = Vec::new();
    for spec in &args.numbers {
        let parts: Result<Vec<u32>, _> = spec.split(',').map(|s| s.trim().parse()).collect();
        let Ok(parts) = parts else {
            eprintln!("bad Stiefel-Whitney monomial: {spec}");
            return ExitCode::from(2);
        };
        let mono = F2Monomial::from_w_partition(&Partition::new(parts));
        if mono.degree() != expr.dim() {
            eprintln!(
                "monomial {spec} has degree {}, expression has dimension {}",
                mono.degree(),
                expr.dim()
            );
            return ExitCode::from(2);
        }
        numbers.push((spec.clone(), sw_number(&expr, &mono)));
    }
    match format {
        Format::Text => {
            println!("{class}");
            for (spec, value) in &numbers {
                println!("w({spec}) = {}", u8::from(*value));
            }
        }
        Format::Json => {
            let class_terms: Vec<Vec<u32>> =
                class.terms().map(|p| p.parts().to_vec()).collect();
            let obj = serde_json::json!({
                "expression": args.expression,
                "class": class_terms,
                "numbers": numbers
                    .iter()
                    .map(|(s, v)| serde_json::json!({"monomial": s, "value": u8::from(*v)}))
                    .collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&obj).unwrap());
        }
    }
    ExitCode::SUCCESS
}

fn cmd_verify(args: VerifyArgs, cache_dir: Option<PathBuf>) -> ExitCode {
    let store = store(cache_dir);
    let mut failed = false;
    match args.suite {
        Suite::Tables => {
            let through = args.max_degree.unwrap_or(26);
            let mut rows = tables::representative_rows();
            rows.extend(tables::dold_square_rows());
            rows.retain(|r| r.manifold.dim() <= through);
            for r in verify_table(&rows, &store) {
                if r.pass {
                    println!("{}: pass", r.label);
                } else {
                    println!(
                        "{}: FAIL (computed {}, expected {})",
                        r.label, r.computed, r.expected
                    );
                    failed = true;
                }
            }
        }
        Suite::Milnor24 => {
            let report = verify_milnor24(
                &tables::milnor24_expression(),
                &tables::milnor24_class(),
                &store,
            );
            for (mu, ok) in &report.listed_numbers {
                println!("number {mu}: {}", if *ok { "1 (pass)" } else { "0 (FAIL)" });
            }
            println!(
                "numbers with w1/w2 factors: {}",
                if report.nonvanishing_w1w2.is_empty() {
                    "all vanish (pass)".to_string()
                } else {
                    format!("nonzero at {:?} (FAIL)", report.nonvanishing_w1w2)
                }
            );
            println!(
                "class matches: {}",
                if report.computed_class == report.expected_class {
                    "pass"
                } else {
                    "FAIL"
                }
            );
            failed = !report.pass();
        }
        Suite::Ranks => {
            let d = args.max_degree.unwrap_or(31).min(33);
            let engine = Engine::new(store);
            let records =
                compute_torsion_flags(&engine, Spectrum::MSpinC, d, args.torsion_fallback);
            let report = rank_crosscheck(&records, &tables::torsion_ranks(), d);
            for row in &report.rows {
                if row.computed == row.expected {
                    if row.expected > 0 {
                        println!("degree {}: rank {} (pass)", row.degree, row.computed);
                    }
                } else {
                    println!(
                        "degree {}: rank {} expected {} (FAIL)",
                        row.degree, row.computed, row.expected
                    );
                    failed = true;
                }
            }
        }
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Image(args) => cmd_image(args, cli.format, cli.cache_dir),
        Command::Presentation(args) => cmd_presentation(args, cli.format, cli.cache_dir),
        Command::Manifold(args) => cmd_manifold(args, cli.format, cli.cache_dir),
        Command::Verify(args) => cmd_verify(args, cli.cache_dir),
    }
}
