use std::io;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use sublink::{api, cli, session::Store};

#[derive(Parser)]
#[command(name = "sublink", version, about = "Proof by subformula linking")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Start the HTTP API.
    Serve {
        #[arg(long, env = "PORT", default_value_t = 8080)]
        port: u16,
        /// Snapshot every session as a trace in this directory.
        #[arg(long)]
        persist: Option<PathBuf>,
    },
    /// Replay a trace; exit 0 iff every action applies and the final goal
    /// count matches.
    Check { trace: PathBuf },
    /// Replay a script of actions on a problem and print the final state.
    Run {
        problem: PathBuf,
        #[arg(long)]
        script: PathBuf,
    },
    /// List the drop targets of a selection.
    Candidates {
        problem: PathBuf,
        /// Source selection, `ITEM` or `ITEM:PATH` (e.g. `0:0,1`).
        #[arg(long)]
        src: String,
        /// Destination item.
        #[arg(long)]
        dst: u64,
        #[arg(long)]
        goal: Option<u64>,
        /// Actions to apply first.
        #[arg(long)]
        script: Option<PathBuf>,
    },
    /// Check classically that the hypotheses entail the goal on small domains.
    Oracle {
        problem: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_size: usize,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(args.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(command: Command) -> anyhow::Result<bool> {
    let mut out = io::stdout().lock();
    match command {
        Command::Serve { port, persist } => {
            serve(port, persist)?;
            Ok(true)
        }
        Command::Check { trace } => cli::check(&trace, &mut out),
        Command::Run { problem, script } => cli::run(&problem, &script, &mut out).map(|_| true),
        Command::Candidates {
            problem,
            src,
            dst,
            goal,
            script,
        } => cli::candidates(&problem, script.as_deref(), goal, &src, dst, &mut out).map(|_| true),
        Command::Oracle { problem, max_size } => cli::oracle(&problem, max_size, &mut out),
    }
}

#[tokio::main]
async fn serve(port: u16, persist: Option<PathBuf>) -> anyhow::Result<()> {
    tracing_subscriber::fmt().init();
    let store = Store::new(persist);
    let restored = store.restore().await?;
    if restored > 0 {
        tracing::info!(restored, "sessions restored");
    }
    let app = api::router(Arc::new(store));
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    tracing::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, app).await?;
    Ok(())
}
