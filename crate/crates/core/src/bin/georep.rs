use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use georep::cli::{self, DimChoice, GraphAction, Projection};

#[derive(Parser)]
#[command(name = "georep", version, about = "Geometric representations of binary linear codes")]
struct Args {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the 2-basis question and the minimal dimension of a code.
    Analyze { code: PathBuf },
    /// Build, check and write a representation bundle.
    Build {
        code: PathBuf,
        /// 3, 4 or auto.
        #[arg(long, default_value = "auto")]
        dim: DimChoice,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Re-check a bundle against a code.
    Verify { code: PathBuf, bundle: PathBuf },
    /// Write a bundle as an OFF mesh.
    Export {
        bundle: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Projection for R^4 bundles (only `drop-w`).
        #[arg(long)]
        project: Option<Projection>,
    },
    /// Graph helpers for building test corpora.
    Graph {
        #[command(subcommand)]
        action: GraphCommand,
    },
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Cut space of a graph file, as a code file.
    Cut {
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// A graph whose cut space is the given code.
    Realize {
        code: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { cli::EXIT_INPUT as u8 } else { 0 });
        }
    };
    let outcome = match args.command {
        Command::Analyze { code } => cli::cmd_analyze(&code),
        Command::Build { code, dim, output } => cli::cmd_build(&code, dim, &output),
        Command::Verify { code, bundle } => cli::cmd_verify(&code, &bundle),
        Command::Export { bundle, output, project } => cli::cmd_export(&bundle, &output, project),
        Command::Graph { action } => match action {
            GraphCommand::Cut { graph, output } => cli::cmd_graph(GraphAction::Cut, &graph, output.as_deref()),
            GraphCommand::Realize { code, output } => {
                cli::cmd_graph(GraphAction::Realize, &code, output.as_deref())
            }
        },
    };
    if outcome.exit_code == cli::EXIT_INPUT && !args.json {
        eprint!("{}", outcome.text);
    } else {
        print!("{}", outcome.render(args.json));
    }
    ExitCode::from(outcome.exit_code as u8)
}
