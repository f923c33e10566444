use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use cohomlab_cli::commands::{
    cmd_bw, cmd_colimit, cmd_gs, cmd_hh, cmd_homepi, cmd_limit, cmd_roos, cmd_verify, AlgebraInput, Bounds, CliError,
    DiagramInput, HomEpiInput, Report,
};

#[derive(Parser)]
#[command(name = "cohomlab", version, about = "Exact Hochschild and Gerstenhaber-Schack cohomology")]
struct Cli {
    /// Coefficient field: a prime such as 2 or 32003, or Q. Defaults to 32003.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Hochschild cohomology HH^*(A, A).
    Hh(HhArgs),
    /// Gerstenhaber-Schack cohomology of a filtration or diagram, with E1, E2.
    Gs(GsArgs),
    /// Pages E0, E1, E2 of the column spectral sequence.
    Ss(GsArgs),
    /// Baues-Wirsching cohomology of the Hochschild natural systems, compared with E2.
    Bw(CompareArgs),
    /// Higher limits of the Hochschild functors, compared with Baues-Wirsching cohomology.
    Roos(CompareArgs),
    /// Certify a surjection of algebras as a homological epimorphism.
    Homepi(HomEpiArgs),
    /// Colimit of a diagram of simplicial complexes.
    Colimit(DiagramArg),
    /// Limit of the incidence algebras of a diagram and the comparison map.
    Limit(DiagramArg),
    /// Run a verification suite, or `all`.
    Verify { suite: String },
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["algebra", "poset", "complex"])))]
struct HhArgs {
    #[arg(long)]
    algebra: Option<PathBuf>,
    /// Poset JSON; uses its incidence algebra.
    #[arg(long)]
    poset: Option<PathBuf>,
    /// Complex JSON; uses the incidence algebra of its face poset.
    #[arg(long)]
    complex: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    max_q: usize,
    /// Use the full Hochschild complex instead of normalized cochains.
    #[arg(long)]
    unnormalized: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["filtration", "diagram"])))]
struct DiagramSource {
    #[arg(long)]
    filtration: Option<PathBuf>,
    #[arg(long)]
    diagram: Option<PathBuf>,
}

impl DiagramSource {
    fn input(&self) -> DiagramInput {
        match (&self.filtration, &self.diagram) {
            (Some(p), _) => DiagramInput::Filtration(p.clone()),
            (_, Some(p)) => DiagramInput::Diagram(p.clone()),
            _ => unreachable!("clap requires one input"),
        }
    }
}

#[derive(Args)]
struct GsArgs {
    #[command(flatten)]
    source: DiagramSource,
    /// Highest nerve degree; defaults to the longest chain.
    #[arg(long)]
    max_p: Option<usize>,
    #[arg(long, default_value_t = 3)]
    max_q: usize,
    /// Highest total degree.
    #[arg(long, default_value_t = 2)]
    max_n: usize,
    /// Keep identity arrows in the nerve.
    #[arg(long)]
    unnormalized_nerve: bool,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    source: DiagramSource,
    #[arg(long, default_value_t = 2)]
    max_p: usize,
    #[arg(long, default_value_t = 2)]
    max_q: usize,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["morphism", "poset", "complex"])))]
struct HomEpiArgs {
    #[arg(long)]
    morphism: Option<PathBuf>,
    /// Poset JSON; restrict to the lower ideal given by --ideal.
    #[arg(long, requires = "ideal")]
    poset: Option<PathBuf>,
    #[arg(long)]
    ideal: Option<PathBuf>,
    /// Complex JSON; restrict face incidence algebras to --subcomplex.
    #[arg(long, requires = "subcomplex")]
    complex: Option<PathBuf>,
    #[arg(long)]
    subcomplex: Option<PathBuf>,
    /// Highest Tor degree checked.
    #[arg(long, default_value_t = 3)]
    max_n: usize,
}

#[derive(Args)]
struct DiagramArg {
    #[arg(long)]
    diagram: PathBuf,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let field = cli.field.as_deref();
    match &cli.command {
        Command::Hh(a) => {
            let input = match (&a.algebra, &a.poset, &a.complex) {
                (Some(p), _, _) => AlgebraInput::Algebra(p.clone()),
                (_, Some(p), _) => AlgebraInput::Poset(p.clone()),
                (_, _, Some(p)) => AlgebraInput::Complex(p.clone()),
                _ => unreachable!("clap requires one input"),
            };
            cmd_hh(&input, field, a.max_q, !a.unnormalized)
        }
        Command::Gs(a) | Command::Ss(a) => {
            let bounds = Bounds { p_max: a.max_p, q_max: a.max_q, n_max: a.max_n, normalized: !a.unnormalized_nerve };
            cmd_gs(&a.source.input(), field, bounds, matches!(cli.command, Command::Ss(_)))
        }
        Command::Bw(a) => cmd_bw(&a.source.input(), field, a.max_p, a.max_q),
        Command::Roos(a) => cmd_roos(&a.source.input(), field, a.max_p, a.max_q),
        Command::Homepi(a) => {
            let input = match (&a.morphism, &a.poset, &a.complex) {
                (Some(m), _, _) => HomEpiInput::Morphism(m.clone()),
                (_, Some(p), _) => HomEpiInput::Posets { poset: p.clone(), ideal: a.ideal.clone().expect("required") },
                (_, _, Some(c)) => {
                    HomEpiInput::Complexes { complex: c.clone(), sub: a.subcomplex.clone().expect("required") }
                }
                _ => unreachable!("clap requires one input"),
            };
            cmd_homepi(&input, field, a.max_n)
        }
        Command::Colimit(a) => cmd_colimit(&a.diagram),
        Command::Limit(a) => cmd_limit(&a.diagram, field),
        Command::Verify { suite } => cmd_verify(suite),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Table => print!("{}", report.table),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable")),
            }
            match report.failed {
                Some((failed, total)) => {
                    eprintln!("error: {}", CliError::Verify { failed, total });
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
