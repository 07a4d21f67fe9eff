use std::fmt::Write as _;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lie_cascade::cascade::CascadeTree;
use lie_cascade::index::{self, IndexReport, SamplingConfig};
use lie_cascade::verify::{self, Status, Suite, SuiteOutcome, VerifyOptions};
use lie_cascade::{chevalley, Cascade, Root, RootSystem, SimpleType, StructureTable};
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(name = "lie-cascade", version, about = "Cascades of strongly orthogonal roots and exact Lie algebra indices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Positive roots, highest root and root count.
    Roots {
        #[arg(long = "type", value_name = "FAMRANK")]
        ty: SimpleType,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The cascade tree.
    Cascade {
        #[arg(long = "type", value_name = "FAMRANK")]
        ty: SimpleType,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Index of a Borel, nilradical or d_m subalgebra.
    Index {
        #[arg(long = "type", value_name = "FAMRANK")]
        ty: SimpleType,
        #[arg(long, value_enum, default_value_t = Algebra::Borel)]
        algebra: Algebra,
        /// Excluded simple roots (1-based) defining the parabolic. For
        /// `nilradical` the default is the Borel nilradical; for `d_m` the
        /// default excludes every simple root.
        #[arg(long, value_delimiter = ',', value_name = "I,J,...")]
        parabolic: Option<Vec<usize>>,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Borel index of every simple type up to a rank bound.
    Table {
        #[arg(long, default_value_t = 8)]
        rank_bound: usize,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run property suites.
    Verify {
        /// Types to check, comma separated. Defaults to every type of rank at most 8.
        #[arg(long = "type", value_delimiter = ',', value_name = "FAMRANK")]
        ty: Vec<SimpleType>,
        /// Suites to run, comma separated. Defaults to all.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<Suite>,
        #[arg(long, value_enum)]
        inject_fault: Option<Fault>,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Clone, Copy)]
struct SamplingArgs {
    #[arg(long, default_value_t = index::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = index::DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = index::DEFAULT_COEFF_BOUND)]
    coeff_bound: i64,
}

impl From<SamplingArgs> for SamplingConfig {
    fn from(a: SamplingArgs) -> Self {
        SamplingConfig {
            samples: a.samples,
            seed: a.seed,
            coeff_bound: a.coeff_bound,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Tsv,
    Pretty,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Algebra {
    Borel,
    Nilradical,
    #[value(name = "d_m")]
    DM,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Fault {
    SignFlip,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<lie_cascade::Error> for Failure {
    fn from(e: lie_cascade::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

#[derive(Serialize, Deserialize)]
struct RootsOutput {
    family: String,
    rank: usize,
    cartan: Vec<Vec<i32>>,
    positive_roots: Vec<Root>,
    highest_root: Root,
    count: usize,
}

#[derive(Serialize, Deserialize)]
struct CascadeOutput {
    algebra: String,
    size: usize,
    nodes: Vec<CascadeTree>,
}

#[derive(Serialize, Deserialize)]
struct TableRow {
    algebra: String,
    rank: usize,
    dim: usize,
    cascade_size: usize,
    index: usize,
    rank_minus_cascade: usize,
    consistent: bool,
}

#[derive(Serialize, Deserialize)]
struct VerifyOutput {
    passed: usize,
    failed: usize,
    skipped: usize,
    outcomes: Vec<SuiteOutcome>,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn coeffs(r: &Root) -> String {
    r.coeffs()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_roots(t: SimpleType, format: Format) -> String {
    let rs = RootSystem::new(t);
    let out = RootsOutput {
        family: t.family().letter().to_string(),
        rank: t.rank(),
        cartan: rs.cartan().to_vec(),
        positive_roots: rs.positive_roots().to_vec(),
        highest_root: rs.highest_root(),
        count: rs.positive_roots().len(),
    };
    match format {
        Format::Json => json(&out),
        Format::Tsv => {
            let mut s = String::from("height\troot\n");
            for r in &out.positive_roots {
                writeln!(s, "{}\t{}", r.height(), coeffs(r)).unwrap();
            }
            s
        }
        Format::Pretty => {
            let mut s = format!("{t}: {} positive roots\n", out.count);
            for r in &out.positive_roots {
                writeln!(s, "  {r}").unwrap();
            }
            writeln!(s, "highest root: {}", out.highest_root).unwrap();
            s
        }
    }
}

fn cmd_cascade(t: SimpleType, format: Format) -> String {
    let rs = RootSystem::new(t);
    let c = Cascade::build(&rs);
    match format {
        Format::Json => json(&CascadeOutput {
            algebra: t.to_string(),
            size: c.len(),
            nodes: c.to_tree(),
        }),
        Format::Tsv => {
            let mut s = String::from("word\tbeta\tsubsystem\n");
            for n in c.nodes() {
                let sub = n.subsystem_type.map(|t| t.to_string()).unwrap_or_default();
                writeln!(s, "{}\t{}\t{sub}", n.index, coeffs(&n.beta)).unwrap();
            }
            s
        }
        Format::Pretty => {
            let mut s = format!("{t}: {} cascade roots\n", c.len());
            for n in c.nodes() {
                let sub = n.subsystem_type.map(|t| t.to_string()).unwrap_or_default();
                let indent = "  ".repeat(n.index.depth());
                writeln!(s, "{indent}{}  {}  [{sub}]", n.index, n.beta).unwrap();
            }
            s
        }
    }
}

fn index_report(
    t: SimpleType,
    algebra: Algebra,
    parabolic: Option<&[usize]>,
    cfg: SamplingConfig,
) -> Result<IndexReport, Failure> {
    let rs = RootSystem::new(t);
    let st = Arc::new(StructureTable::new(&rs));
    let all: Vec<usize> = (1..=t.rank()).collect();
    match (algebra, parabolic) {
        (Algebra::Borel, Some(_)) => Err(Failure::Usage(
            "--parabolic applies to nilradical and d_m only".into(),
        )),
        (Algebra::Borel, None) => {
            let b = chevalley::borel(&st)?;
            Ok(index::index_estimate(&b, cfg.samples, cfg.seed, cfg.coeff_bound)?)
        }
        (Algebra::Nilradical, None) => {
            let n = chevalley::nilradical_n(&st)?;
            Ok(index::estimate_index(&index::describe(&n, None), n.algebra(), &cfg, None)?)
        }
        (Algebra::Nilradical, Some(ex)) => {
            let m = chevalley::parabolic_nilradical(&st, ex)?;
            Ok(index::estimate_index(&index::describe(&m, Some(ex)), m.algebra(), &cfg, None)?)
        }
        (Algebra::DM, ex) => {
            let ex = ex.unwrap_or(&all);
            let q = chevalley::q_plus(&rs, ex)?;
            let c = Cascade::build(&rs);
            let dm = chevalley::build_d_m(&st, &c, &q)?;
            if dm.dim() == 0 {
                return Err(Failure::Usage("d_m is zero for an empty parabolic set".into()));
            }
            let name = index::describe(&dm, Some(ex));
            Ok(index::estimate_index(&name, dm.algebra(), &cfg, None)?)
        }
    }
}

fn cmd_index(r: &IndexReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Tsv => {
            let cf = r.cascade_form_index.map(|i| i.to_string()).unwrap_or_default();
            format!(
                "algebra\tdim\tindex\trank\tsamples\tseed\tcascade_form_index\n{}\t{}\t{}\t{}\t{}\t{}\t{cf}\n",
                r.algebra, r.dim, r.index, r.rank, r.samples, r.seed
            )
        }
        Format::Pretty => {
            let mut s = format!("{}: dim {}, index {}\n", r.algebra, r.dim, r.index);
            writeln!(s, "  max rank of B_f: {} ({} random forms, seed {})", r.rank, r.samples, r.seed).unwrap();
            if let Some(i) = r.cascade_form_index {
                writeln!(s, "  cascade form kernel: {i}").unwrap();
            }
            s
        }
    }
}

fn cmd_table(bound: usize, cfg: SamplingConfig, format: Format) -> Result<(String, bool), Failure> {
    let mut rows = Vec::new();
    for t in SimpleType::all_up_to(bound) {
        let rs = RootSystem::new(t);
        let st = Arc::new(StructureTable::new(&rs));
        let b = chevalley::borel(&st)?;
        let r = index::index_estimate(&b, cfg.samples, cfg.seed, cfg.coeff_bound)?;
        let size = Cascade::build(&rs).len();
        rows.push(TableRow {
            algebra: t.to_string(),
            rank: t.rank(),
            dim: r.dim,
            cascade_size: size,
            index: r.index,
            rank_minus_cascade: t.rank() - size,
            consistent: r.index == t.rank() - size,
        });
    }
    let ok = rows.iter().all(|r| r.consistent);
    let text = match format {
        Format::Json => json(&rows),
        Format::Tsv | Format::Pretty => {
            let sep = if format == Format::Tsv { "\t" } else { "  " };
            let mut s = ["type", "rank", "dim(b)", "cascade", "index", "rank-cascade", "ok"].join(sep);
            s.push('\n');
            for r in &rows {
                let cells = [
                    r.algebra.clone(),
                    r.rank.to_string(),
                    r.dim.to_string(),
                    r.cascade_size.to_string(),
                    r.index.to_string(),
                    r.rank_minus_cascade.to_string(),
                    r.consistent.to_string(),
                ];
                s.push_str(&cells.join(sep));
                s.push('\n');
            }
            s
        }
    };
    Ok((text, ok))
}

fn cmd_verify(
    types: &[SimpleType],
    suites: &[Suite],
    opts: &VerifyOptions,
    format: Format,
) -> (String, bool) {
    let types = if types.is_empty() { verify::default_types() } else { types.to_vec() };
    let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites.to_vec() };
    let outcomes = verify::run_all(&types, &suites, opts);
    let count = |s: Status| outcomes.iter().filter(|o| o.status == s).count();
    let out = VerifyOutput {
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skip),
        outcomes,
    };
    let text = match format {
        Format::Json => json(&out),
        Format::Tsv | Format::Pretty => {
            let mut s = String::new();
            for o in &out.outcomes {
                let status = match o.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skip => "SKIP",
                };
                if format == Format::Tsv {
                    writeln!(s, "{}\t{}\t{status}\t{}", o.suite, o.target, o.detail).unwrap();
                } else {
                    writeln!(s, "{status} {:<22} {:<4} {}", o.suite, o.target, o.detail).unwrap();
                }
            }
            if format == Format::Pretty {
                writeln!(s, "{} passed, {} failed, {} skipped", out.passed, out.failed, out.skipped).unwrap();
            }
            s
        }
    };
    (text, out.failed == 0)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Roots { ty, format } => Ok(cmd_roots(ty, format)),
        Command::Cascade { ty, format } => Ok(cmd_cascade(ty, format)),
        Command::Index {
            ty,
            algebra,
            parabolic,
            sampling,
            format,
        } => {
            let r = index_report(ty, algebra, parabolic.as_deref(), sampling.into())?;
            Ok(cmd_index(&r, format))
        }
        Command::Table {
            rank_bound,
            sampling,
            format,
        } => {
            if rank_bound == 0 {
                return Err(Failure::Usage("rank bound must be at least 1".into()));
            }
            let (text, ok) = cmd_table(rank_bound, sampling.into(), format)?;
            if ok {
                Ok(text)
            } else {
                Err(Failure::Verification(text))
            }
        }
        Command::Verify {
            ty,
            suite,
            inject_fault,
            sampling,
            format,
        } => {
            let opts = VerifyOptions {
                sampling: sampling.into(),
                inject_sign_fault: inject_fault == Some(Fault::SignFlip),
            };
            let (text, ok) = cmd_verify(&ty, &suite, &opts, format);
            if ok {
                Ok(text)
            } else {
                Err(Failure::Verification(text))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(text)) => {
            print!("{text}");
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
