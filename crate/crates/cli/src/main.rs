use std::fs;
use std::io::{self, IsTerminal};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::{Parser, Subcommand};

use tactica_cli::{repl, runner, server, session_with};

/// Tactic languages defined by example.
#[derive(Parser)]
#[command(name = "tactica", version)]
struct Cli {
    /// Print the grammar (core plus --lib libraries) and exit.
    #[arg(long)]
    grammar_dump: bool,
    /// A registered library name or a library file; repeatable.
    #[arg(long = "lib", global = true, value_name = "PATH")]
    libs: Vec<String>,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Interactive prompt.
    Repl,
    /// Check every theorem in a proof file.
    Run { file: PathBuf },
    /// Rewrite a proof file with core-language proofs.
    Export {
        file: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// HTTP+JSON session service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    if cli.grammar_dump {
        let (s, _) = session_with(&cli.libs)?;
        print!("{}", s.grammar().dump());
        return Ok(ExitCode::SUCCESS);
    }
    let Some(cmd) = cli.cmd else {
        use clap::CommandFactory;
        Cli::command().print_help()?;
        return Ok(ExitCode::from(2));
    };
    match cmd {
        Cmd::Repl => {
            let (mut s, report) = session_with(&cli.libs)?;
            for skip in &report.skipped {
                eprintln!("skipped {}: {}", skip.item, skip.reason);
            }
            let interactive = io::stdin().is_terminal();
            if interactive {
                println!("{}", repl::HELP);
            }
            repl::run(&mut s, io::stdin().lock(), &mut io::stdout(), interactive)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Run { file } => {
            let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let (mut s, _) = session_with(&cli.libs)?;
            let report = runner::run_text(&mut s, &text).with_context(|| file.display().to_string())?;
            println!("{report}");
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::Export { file, out } => {
            let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let (mut s, _) = session_with(&cli.libs)?;
            let exported = runner::export_text(&mut s, &text).with_context(|| file.display().to_string())?;
            fs::write(&out, exported).with_context(|| format!("writing {}", out.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Serve { port } => {
            let state = Arc::new(server::AppState::new(&cli.libs)?);
            tokio::runtime::Runtime::new()?.block_on(server::serve(port, state))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
