mod repl;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use latent_belief::engine::Selection;
use latent_belief::logic::Fragment;
use latent_belief::oracle::{no_recovery_witness, WitnessReport};
use latent_belief::scenario::{bundled, bundled_names, RunOptions, Scenario};
use latent_belief::Error;

#[derive(Parser)]
#[command(name = "beliefs", version, about = "Belief change with latent attributive beliefs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file, or a bundled one as `bundled:NAME`.
    Run {
        scenario: String,
        /// full-meet, maxichoice, seeded:<n> or script:<m1,m2,...>
        #[arg(long)]
        strategy: Option<Selection>,
        /// Replace the fragment named in the file.
        #[arg(long)]
        fragment: Option<Fragment>,
        /// Round limit for each fixpoint loop (default 2^atoms + 1).
        #[arg(long)]
        max_iter: Option<usize>,
        /// Write the JSON trace here; `-` for stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Step through belief changes interactively.
    Repl {
        /// Atom names, comma separated.
        #[arg(long, default_value = "p1,p2,p3")]
        atoms: String,
        #[arg(long, default_value = "full")]
        fragment: Fragment,
        #[arg(long, default_value = "full-meet")]
        strategy: Selection,
    },
    /// Search for runs where contracting p1 and expanding it back loses p3.
    Witness {
        #[arg(long, default_value = "full")]
        mode: Fragment,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// List the bundled scenarios, or print one.
    Scenarios { name: Option<String> },
}

const EXIT_ASSERTION: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_OVERFLOW: u8 = 3;

fn load(source: &str, fragment: Option<Fragment>) -> Result<Scenario, String> {
    if let Some(name) = source.strip_prefix("bundled:") {
        return Scenario::bundled(name, fragment).map_err(|e| e.to_string());
    }
    let path = Path::new(source);
    let text = std::fs::read_to_string(path).map_err(|e| format!("{source}: {e}"))?;
    let name = path.file_stem().map_or(source.into(), |s| s.to_string_lossy().into_owned());
    Scenario::parse(&name, &text, fragment).map_err(|e| format!("{source}: {e}"))
}

fn write_json(path: &Path, json: &str) -> Result<(), String> {
    if path.as_os_str() == "-" {
        println!("{json}");
        Ok(())
    } else {
        std::fs::write(path, format!("{json}\n")).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn run(
    source: &str,
    strategy: Option<Selection>,
    fragment: Option<Fragment>,
    max_iter: Option<usize>,
    json: Option<PathBuf>,
) -> ExitCode {
    let scenario = match load(source, fragment) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let opts = RunOptions { strategy, max_iter };
    let outcome = match scenario.run(&opts) {
        Ok(o) => o,
        Err(e @ Error::Overflow(_)) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_OVERFLOW);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let to_stdout = json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if !to_stdout {
        print!("{}", outcome.human(&scenario, &opts));
    }
    if let Some(path) = json {
        if let Err(e) = write_json(&path, &outcome.report.to_json()) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    }
    if outcome.report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_ASSERTION)
    }
}

fn print_witness(report: &WitnessReport) {
    println!("{}", report.description);
    println!(
        "scripts tried: {}, losing p3: {}{}",
        report.runs,
        report.failing_runs,
        if report.exhaustive { " (exhaustive)" } else { " (stopped at the first witness)" }
    );
    match (&report.script, &report.final_models, &report.counter_valuation) {
        (Some(script), Some(models), counter) => {
            let masks: Vec<String> = script.iter().map(u64::to_string).collect();
            println!("witness strategy: script:{}", masks.join(","));
            println!("final models: {}", models.join(" "));
            if let Some(v) = counter {
                println!("model without p3: {v}");
            }
        }
        _ => println!("no run lost p3"),
    }
    if report.universal() {
        println!("every selection loses p3");
    }
    println!(
        "single internal contraction then expansion recovers the base: {}",
        if report.contrast_holds { "yes" } else { "no" }
    );
}

fn witness(mode: Fragment, json: bool) -> ExitCode {
    match no_recovery_witness(mode) {
        Ok(report) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("reports serialise"));
            } else {
                print_witness(&report);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}

fn scenarios(name: Option<String>) -> ExitCode {
    match name {
        None => {
            for n in bundled_names() {
                println!("{n}");
            }
            ExitCode::SUCCESS
        }
        Some(n) => match bundled(&n) {
            Some(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("error: no bundled scenario `{n}`");
                ExitCode::from(EXIT_INVALID)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { scenario, strategy, fragment, max_iter, json } => {
            run(&scenario, strategy, fragment, max_iter, json)
        }
        Command::Repl { atoms, fragment, strategy } => repl::main(&atoms, fragment, strategy),
        Command::Witness { mode, json } => witness(mode, json),
        Command::Scenarios { name } => scenarios(name),
    }
}
