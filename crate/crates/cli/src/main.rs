use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use superlie::algebra::{LinMap, Parity, SuperAlgebra};
use superlie::derivations::derivation_space;
use superlie::exec::Execution;
use superlie::extension::{maximal_solvable_extension, verify_model, ExtensionError, SolvableModel};
use superlie::format::{format_combination, parse_file, serialize, AlgebraFile};
use superlie::golden::{check_corpus, check_file, format_diagonals, tsv, Outcome};
use superlie::structure::{
    c_sequences, central_series, derived_series, is_nilpotent, is_solvable, nilindex,
};
use superlie::torus::{maximal_torus, rank_and_torus_dim};

#[derive(Parser)]
#[command(name = "superlie", version, about = "Exact computations with Lie superalgebras")]
struct Cli {
    /// Evaluate files one after another instead of in parallel.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check grading, super skew-symmetry and the super Jacobi identity.
    Validate { files: Vec<PathBuf> },
    /// Lower central, derived and C-sequences.
    Series { file: PathBuf },
    /// Basis of the superderivation space.
    Derive {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ParityArg::Both)]
        parity: ParityArg,
    },
    /// Rank of the root system and the diagonal torus.
    Torus { file: PathBuf },
    /// Rank, maximal torus dimension and the maximal rank test.
    Rank { file: PathBuf },
    /// Maximal solvable extension of a nilpotent algebra of maximal rank.
    Extend {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate every `expect` line of a corpus.
    Check {
        #[arg(long, value_enum, default_value_t = Suite::Golden)]
        suite: Suite,
        #[arg(long, default_value = "corpus")]
        corpus: PathBuf,
    },
    /// Report on files or a corpus directory.
    Report {
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Files or directories; defaults to `corpus`.
        paths: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    /// Every `expect` line of the corpus.
    #[value(name = "paper")]
    Golden,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Tsv,
}

/// Exit status: 1 for a failed check or precondition, 2 for bad input.
enum Failure {
    Check(String),
    Input(String),
}

type Run = Result<(), Failure>;

fn load(path: &Path) -> Result<AlgebraFile, Failure> {
    parse_file(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn fmt_map(a: &SuperAlgebra, d: &LinMap) -> String {
    let images: Vec<String> = (0..a.dim())
        .filter_map(|j| {
            let col = d.matrix.col(j);
            col.iter()
                .any(|c| *c != Default::default())
                .then(|| format!("{} -> {}", a.label(j), format_combination(a, &col)))
        })
        .collect();
    if images.is_empty() {
        "0".into()
    } else {
        images.join(", ")
    }
}

fn validate(files: &[PathBuf]) -> Run {
    let mut bad = 0;
    for p in files {
        let f = load(p)?;
        let report = f.algebra.validate();
        if report.is_valid() {
            println!("{}: valid", p.display());
        } else {
            bad += 1;
            println!("{}: invalid", p.display());
            for line in report.describe(&f.algebra) {
                println!("  {line}");
            }
        }
    }
    if bad > 0 {
        return Err(Failure::Check(format!("{bad} invalid file(s)")));
    }
    Ok(())
}

fn series(file: &Path) -> Run {
    let a = load(file)?.algebra;
    let dims = |d: Vec<usize>| d.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    println!("central: {}", dims(central_series(&a).dims()));
    println!("derived: {}", dims(derived_series(&a).dims()));
    let (c0, c1) = c_sequences(&a);
    println!("C0: {}", dims(c0.dims()));
    println!("C1: {}", dims(c1.dims()));
    println!("nilpotent={} solvable={}", is_nilpotent(&a), is_solvable(&a));
    match nilindex(&a) {
        Some(s) => println!("nilindex={s}"),
        None => println!("nilindex=none"),
    }
    Ok(())
}

fn derive(file: &Path, parity: ParityArg) -> Run {
    let a = load(file)?.algebra;
    let parities: &[Parity] = match parity {
        ParityArg::Even => &[Parity::Even],
        ParityArg::Odd => &[Parity::Odd],
        ParityArg::Both => &[Parity::Even, Parity::Odd],
    };
    for &p in parities {
        let basis = derivation_space(&a, p);
        println!("Der_{}: dim {}", if p == Parity::Even { 0 } else { 1 }, basis.len());
        for (i, d) in basis.iter().enumerate() {
            println!("  d{}: {}", i + 1, fmt_map(&a, d));
        }
    }
    Ok(())
}

fn torus(file: &Path) -> Run {
    let a = load(file)?.algebra;
    let r = rank_and_torus_dim(&a).map_err(|e| Failure::Check(e.to_string()))?;
    println!("rank={} torus_dim={}", r.rank, r.torus_dim);
    for g in &r.generators {
        println!("{}", format_diagonals(std::slice::from_ref(&g.matrix)));
    }
    Ok(())
}

fn rank(file: &Path) -> Run {
    let a = load(file)?.algebra;
    let r = rank_and_torus_dim(&a).map_err(|e| Failure::Check(e.to_string()))?;
    let t = maximal_torus(&a).map_err(|e| Failure::Check(e.to_string()))?;
    let g = superlie::structure::generator_space(&a).map_err(|e| Failure::Check(e.to_string()))?;
    println!("rank={} torus_dim={} max_torus_dim={}", r.rank, r.torus_dim, t.dim());
    println!("generators={} (even {}, odd {})", g.k + g.s, g.k, g.s);
    println!("maximal_rank={}", t.dim() == g.k + g.s);
    Ok(())
}

fn error_name(e: &ExtensionError) -> String {
    format!("{e:?}").split(['(', ' ', '{']).next().unwrap_or_default().to_string()
}

fn extend(file: &Path, out: Option<&Path>) -> Run {
    let a = load(file)?.algebra;
    let model: SolvableModel = maximal_solvable_extension(&a)
        .map_err(|e| Failure::Check(format!("{}: {e}", error_name(&e))))?;
    let report = verify_model(&model);
    let text = serialize(&model.algebra, &[]);
    match out {
        Some(p) => std::fs::write(p, &text)
            .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    eprintln!("{report}");
    if !report.all_passed() {
        return Err(Failure::Check("model verification failed".into()));
    }
    Ok(())
}

fn summarize(outcomes: &[Outcome]) -> Run {
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} of {} checks failed", outcomes.len())));
    }
    Ok(())
}

fn check(corpus: &Path, exec: Execution) -> Run {
    let outcomes = check_corpus(corpus, exec).map_err(|e| Failure::Input(e.to_string()))?;
    for o in &outcomes {
        println!("{o}");
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!("{passed}/{} checks passed", outcomes.len());
    summarize(&outcomes)
}

fn report(paths: &[PathBuf], format: ReportFormat, exec: Execution) -> Run {
    let default = [PathBuf::from("corpus")];
    let paths = if paths.is_empty() { &default[..] } else { paths };
    let mut outcomes = Vec::new();
    for p in paths {
        if p.is_dir() {
            outcomes.extend(check_corpus(p, exec).map_err(|e| Failure::Input(e.to_string()))?);
        } else {
            outcomes.extend(check_file(&load(p)?));
        }
    }
    match format {
        ReportFormat::Tsv => print!("{}", tsv(&outcomes)),
        ReportFormat::Text => {
            for o in &outcomes {
                println!("{o}");
            }
        }
    }
    summarize(&outcomes)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let result = match &cli.command {
        Command::Validate { files } => validate(files),
        Command::Series { file } => series(file),
        Command::Derive { file, parity } => derive(file, *parity),
        Command::Torus { file } => torus(file),
        Command::Rank { file } => rank(file),
        Command::Extend { file, out } => extend(file, out.as_deref()),
        Command::Check { suite: Suite::Golden, corpus } => check(corpus, exec),
        Command::Report { format, paths } => report(paths, *format, exec),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
