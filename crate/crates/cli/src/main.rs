use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use exact_cone::enumerate::{
    brute_force_min_semi_balanced, enumerate_facets, enumerate_min_balanced,
    generate_min_semi_balanced, FacetOptions, Progress, MAX_BRUTE_FORCE_PLAYERS,
};
use exact_cone::games::{exactness, is_balanced_game, is_exact_via_facets, is_totally_balanced};
use exact_cone::semibal::analyze;
use exact_cone::setcore::{PlayerSet, SetSystem};
use exact_cone_cli::bundled::{verify_counterexample, CounterexampleBundle};
use exact_cone_cli::corpus::random_corpus;
use exact_cone_cli::diagram::DiagramSpec;
use exact_cone_cli::format::{
    self, AnalysisDoc, CatalogueDoc, ExactnessDoc, FormatError, GameCheckDoc,
};

const EXIT_CHECK: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_ARGS: u8 = 3;

#[derive(Parser)]
#[command(
    name = "exact-cone",
    version,
    about = "Facets of the cone of exact games and related checks"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the random game corpus.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SystemInput {
    /// Number of players (labels a, b, c, ...).
    #[arg(long)]
    n: Option<usize>,
    /// Set system in text form, e.g. `{a,ab,bc,abd}`.
    #[arg(long, conflicts_with = "file")]
    system: Option<String>,
    /// Set system JSON file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiagramFormat {
    Ascii,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Semi-balancedness report for one set system.
    Analyze(SystemInput),
    /// Facet catalogue of the cone of exact games.
    Facets {
        #[arg(long)]
        n: usize,
        /// List one representative per permutational type.
        #[arg(long)]
        types: bool,
        /// Progress on stderr.
        #[arg(long)]
        progress: bool,
        /// Permit the long six-player run.
        #[arg(long)]
        allow_n6: bool,
    },
    /// Balancedness, total balancedness and exactness of a game file.
    CheckGame {
        file: PathBuf,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        totally_balanced: bool,
        #[arg(long)]
        balanced: bool,
        /// Write the anti-dual game to this file.
        #[arg(long, value_name = "OUT")]
        anti_dual: Option<PathBuf>,
    },
    /// Box diagram of a min-semi-balanced system.
    Diagram {
        #[command(flatten)]
        input: SystemInput,
        #[arg(long, value_enum, default_value = "ascii")]
        format: DiagramFormat,
    },
    /// Verify the bundled six-player counterexample.
    VerifyCounterexample {
        /// Read the four table files from this directory instead.
        #[arg(long)]
        data_dir: Option<PathBuf>,
    },
    /// List all min-balanced systems.
    MinBalanced {
        #[arg(long)]
        n: usize,
    },
    /// Compare the generator with brute force and facets with exactness LPs.
    Oracle {
        #[arg(long)]
        n: usize,
        /// Number of random games to compare.
        #[arg(long, default_value_t = 100)]
        games: usize,
    },
}

enum Failure {
    Check(String),
    Parse(String),
    Args(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<exact_cone::Error> for Failure {
    fn from(e: exact_cone::Error) -> Self {
        match e {
            exact_cone::Error::Parse { .. }
            | exact_cone::Error::InvalidLabel(_)
            | exact_cone::Error::DuplicateLabel(_)
            | exact_cone::Error::TrivialSet
            | exact_cone::Error::EmptySystem
            | exact_cone::Error::DuplicateSet
            | exact_cone::Error::MissingValue(_)
            | exact_cone::Error::CoalitionOutOfRange { .. } => Failure::Parse(e.to_string()),
            exact_cone::Error::InvalidPlayerCount(_) | exact_cone::Error::GroundTooLarge { .. } => {
                Failure::Args(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn print_json<T: serde::Serialize>(v: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("documents serialize")
    );
}

fn read_system(input: &SystemInput) -> Result<SetSystem, Failure> {
    match (&input.system, &input.file) {
        (Some(text), None) => {
            let n = input
                .n
                .ok_or_else(|| Failure::Args("--system needs --n".into()))?;
            Ok(PlayerSet::new(n)?.parse_system(text)?)
        }
        (None, Some(path)) => {
            let s = format::parse_system_json(&format::read_file(path)?)?;
            if input.n.is_some_and(|n| n != s.n()) {
                return Err(Failure::Args(
                    "--n disagrees with the file's players".into(),
                ));
            }
            Ok(s)
        }
        _ => Err(Failure::Args("give either --system or --file".into())),
    }
}

fn cmd_analyze(cli: &Cli, input: &SystemInput) -> Outcome {
    let s = read_system(input)?;
    let doc = AnalysisDoc::new(&analyze(&s));
    if cli.json {
        print_json(&doc);
        return Ok(());
    }
    println!("system: {s}");
    println!("semi-balanced: {}", doc.is_semi_balanced);
    println!("balanced: {}", doc.is_balanced);
    println!("minimal: {}", doc.is_minimal);
    if !doc.exceptional_sets.is_empty() {
        println!("exceptional sets: {}", doc.exceptional_sets.join(", "));
    }
    if let Some(k) = &doc.klass {
        println!("class: {k}");
    }
    if let Some(r) = &doc.r {
        println!("r: {r}");
    }
    if let Some(theta) = &doc.theta {
        let parts: Vec<String> = theta.iter().map(|(k, v)| format!("{k}: {v}")).collect();
        println!("theta: {}", parts.join(", "));
    }
    Ok(())
}

struct StderrProgress;

impl Progress for StderrProgress {
    fn report(&self, stage: &str, done: usize, total: usize) {
        eprintln!("{stage}: {done}/{total}");
    }
}

fn plural(k: usize, word: &str) -> String {
    if k == 1 {
        format!("{k} {word}")
    } else {
        format!("{k} {word}s")
    }
}

fn cmd_facets(cli: &Cli, n: usize, types: bool, progress: bool, allow_n6: bool) -> Outcome {
    if !(2..=6).contains(&n) {
        return Err(Failure::Args(format!(
            "--n must be between 2 and 6, got {n}"
        )));
    }
    if n == 6 && !allow_n6 {
        return Err(Failure::Args("n = 6 takes minutes; pass --allow-n6".into()));
    }
    let ground = PlayerSet::new(n)?;
    let reporter = StderrProgress;
    let opts = FacetOptions {
        cross_check: n <= MAX_BRUTE_FORCE_PLAYERS,
        progress: progress.then_some(&reporter as &dyn Progress),
    };
    let cat = enumerate_facets(&ground, opts)?;
    if cli.json {
        print_json(&CatalogueDoc::new(&cat));
        return Ok(());
    }
    println!(
        "{}, {}",
        plural(cat.facet_count, "facet"),
        plural(cat.type_count, "type")
    );
    if types {
        let mut last = None;
        for e in &cat.entries {
            if last != Some(&e.canonical.representative) {
                let klass = e.report.klass.map_or("-", |k| k.name());
                println!(
                    "{}  orbit {}  {}",
                    e.canonical.representative, e.canonical.orbit_size, klass
                );
                last = Some(&e.canonical.representative);
            }
        }
    }
    Ok(())
}

fn cmd_check_game(
    cli: &Cli,
    file: &std::path::Path,
    exact: bool,
    totally: bool,
    balanced: bool,
    anti_dual: Option<&PathBuf>,
) -> Outcome {
    let m = format::parse_game_json(&format::read_file(file)?)?;
    if let Some(out) = anti_dual {
        std::fs::write(out, format::game_to_json(&m.anti_dual()) + "\n")
            .map_err(|e| Failure::Args(format!("cannot write `{}`: {e}", out.display())))?;
    }
    let all = !(exact || totally || balanced);
    let mut doc = GameCheckDoc::default();
    if balanced || all {
        doc.balanced = Some(is_balanced_game(&m));
    }
    if totally || all {
        doc.totally_balanced = Some(is_totally_balanced(&m));
    }
    let mut cert = None;
    if exact || all {
        let c = exactness(&m);
        doc.exactness = Some(ExactnessDoc::new(&m, &c));
        cert = Some(c);
    }
    if cli.json {
        print_json(&doc);
    } else {
        if let Some(b) = doc.balanced {
            println!("balanced: {b}");
        }
        if let Some(b) = doc.totally_balanced {
            println!("totally balanced: {b}");
        }
        match &doc.exactness {
            Some(ExactnessDoc::Exact { .. }) => println!("exact: yes"),
            Some(ExactnessDoc::NotExact {
                failing,
                value,
                core_min,
            }) => println!("exact: no, {failing}: core minimum {core_min} > {value}"),
            Some(ExactnessDoc::EmptyCore) => println!("exact: no, empty core"),
            None => {}
        }
    }
    let failed = doc.balanced == Some(false)
        || doc.totally_balanced == Some(false)
        || cert.is_some_and(|c| !c.is_exact());
    if failed {
        return Err(Failure::Check(String::new()));
    }
    Ok(())
}

fn cmd_diagram(input: &SystemInput, fmt: DiagramFormat) -> Outcome {
    let s = read_system(input)?;
    let d = DiagramSpec::from_system(&s)?;
    match fmt {
        DiagramFormat::Ascii => print!("{}", d.render_ascii()),
        DiagramFormat::Svg => print!("{}", d.render_svg()),
    }
    Ok(())
}

fn cmd_verify(cli: &Cli, data_dir: Option<&PathBuf>) -> Outcome {
    let bundle = match data_dir {
        Some(dir) => CounterexampleBundle::from_dir(dir)?,
        None => CounterexampleBundle::embedded()?,
    };
    let report = verify_counterexample(&bundle);
    if cli.json {
        print_json(&report);
    } else {
        for c in &report.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            println!("[{mark}] {}: {}", c.name, c.detail);
        }
        let passed = report.checks.iter().filter(|c| c.passed).count();
        println!("{passed}/{} checks passed", report.checks.len());
    }
    if report.all_passed() {
        Ok(())
    } else {
        let names: Vec<&str> = report.failed().map(|c| c.name.as_str()).collect();
        Err(Failure::Check(format!(
            "failed checks: {}",
            names.join(", ")
        )))
    }
}

fn cmd_min_balanced(cli: &Cli, n: usize) -> Outcome {
    if !(2..=6).contains(&n) {
        return Err(Failure::Args(format!(
            "--n must be between 2 and 6, got {n}"
        )));
    }
    let all = enumerate_min_balanced(&PlayerSet::new(n)?)?;
    if cli.json {
        let docs: Vec<format::SystemFile> =
            all.iter().map(format::SystemFile::from_system).collect();
        print_json(&docs);
    } else {
        for s in &all {
            println!("{s}");
        }
        println!("{}", plural(all.len(), "min-balanced system"));
    }
    Ok(())
}

#[derive(serde::Serialize)]
struct OracleDoc {
    generated: usize,
    brute_force: usize,
    generator_agrees: bool,
    games: usize,
    facet_test_agrees: usize,
}

fn cmd_oracle(cli: &Cli, n: usize, games: usize) -> Outcome {
    if !(2..=MAX_BRUTE_FORCE_PLAYERS).contains(&n) {
        return Err(Failure::Args(format!(
            "--n must be between 2 and 4, got {n}"
        )));
    }
    let ground = PlayerSet::new(n)?;
    let generated = generate_min_semi_balanced(&ground)?;
    let direct = brute_force_min_semi_balanced(&ground)?;
    let cat = enumerate_facets(&ground, FacetOptions::default())?;
    let corpus = random_corpus(&ground, games, cli.seed);
    let mut agree = 0;
    for (_, m) in &corpus {
        if is_exact_via_facets(m, &cat)? == exactness(m).is_exact() {
            agree += 1;
        }
    }
    let doc = OracleDoc {
        generated: generated.len(),
        brute_force: direct.len(),
        generator_agrees: generated == direct,
        games,
        facet_test_agrees: agree,
    };
    if cli.json {
        print_json(&doc);
    } else {
        println!(
            "min-semi-balanced systems: generator {}, brute force {} ({})",
            doc.generated,
            doc.brute_force,
            if doc.generator_agrees {
                "equal"
            } else {
                "DIFFERENT"
            }
        );
        println!("facet test agrees with exactness on {agree}/{games} random games");
    }
    if doc.generator_agrees && agree == games {
        Ok(())
    } else {
        Err(Failure::Check("oracle disagreement".into()))
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Analyze(input) => cmd_analyze(cli, input),
        Command::Facets {
            n,
            types,
            progress,
            allow_n6,
        } => cmd_facets(cli, *n, *types, *progress, *allow_n6),
        Command::CheckGame {
            file,
            exact,
            totally_balanced,
            balanced,
            anti_dual,
        } => cmd_check_game(
            cli,
            file,
            *exact,
            *totally_balanced,
            *balanced,
            anti_dual.as_ref(),
        ),
        Command::Diagram { input, format } => cmd_diagram(input, *format),
        Command::VerifyCounterexample { data_dir } => cmd_verify(cli, data_dir.as_ref()),
        Command::MinBalanced { n } => cmd_min_balanced(cli, *n),
        Command::Oracle { n, games } => cmd_oracle(cli, *n, *games),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ARGS } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(EXIT_ARGS);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    let code = match run(&cli) {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            EXIT_CHECK
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            EXIT_PARSE
        }
        Err(Failure::Args(msg)) => {
            eprintln!("error: {msg}");
            EXIT_ARGS
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(code)
}
