use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lring::homspace::Mode;
use lring_cli::commands::{cmd_classify, cmd_converge, cmd_decompose, cmd_gallery, cmd_laws, cmd_posp, cmd_run};
use lring_cli::{CliError, ReportDoc, Resolved};

#[derive(Parser)]
#[command(name = "lring", version, about = "Exact audits for lattice-ordered rings and their homomorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Spec file describing spaces, homs, sets, nets and tasks.
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1000)]
    cases: usize,
    #[arg(long, global = true)]
    mode: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice, l-ring, f-ring and Archimedean laws on a shipped instance.
    Laws { instance: String },
    /// Order boundedness, nr/br boundedness under both readings, continuity.
    Classify {
        #[arg(long)]
        hom: String,
    },
    /// Positive and negative parts, cross-checked against vertex enumeration.
    Posp {
        #[arg(long)]
        hom: String,
    },
    /// Splits x under |x| <= |y1 + y2|.
    Decompose {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y1: String,
        #[arg(long)]
        y2: String,
    },
    /// Convergence of a net in the nr, br or cr topology.
    Converge {
        #[arg(long)]
        net: String,
        /// Neighborhood (nr) or bounded set (br).
        #[arg(long)]
        set: Option<String>,
    },
    /// The shipped counterexamples.
    Gallery,
    /// Every task listed in the spec file.
    Run,
}

fn load(cli: &Cli) -> Result<Resolved, CliError> {
    let path = cli.spec.as_ref().ok_or_else(|| CliError::Input("this command needs --spec".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Resolved::parse(&text).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        e => e,
    })
}

fn dispatch(cli: &Cli) -> Result<ReportDoc, CliError> {
    match &cli.command {
        Command::Laws { instance } => cmd_laws(instance, cli.seed, cli.cases),
        Command::Gallery => cmd_gallery(),
        Command::Classify { hom } => cmd_classify(&load(cli)?, hom),
        Command::Posp { hom } => cmd_posp(&load(cli)?, hom, cli.seed),
        Command::Decompose { x, y1, y2 } => cmd_decompose(&load(cli)?, x, y1, y2),
        Command::Converge { net, set } => {
            let mode: Mode =
                cli.mode.as_deref().ok_or_else(|| CliError::Input("converge needs --mode".into()))?.parse()?;
            cmd_converge(&load(cli)?, net, mode, set.as_deref(), cli.seed)
        }
        Command::Run => cmd_run(&load(cli)?, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(doc) => {
            match cli.format {
                Format::Text => print!("{}", doc.text()),
                Format::Machine => print!("{}", doc.machine()),
            }
            ExitCode::from(if doc.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
