use std::io::{BufRead, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wcox::commands::{self, Failure, Format, Outcome};
use wcox::input::{load, parse_position};

/// Weighted Coxeter graphs: validation, faithfulness, gauges, group
/// enumeration and numbers games.
#[derive(Parser)]
#[command(name = "wcox", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Use integer edge coefficients (2,1), (3,1), (2,2) for m = 4, 6, ∞.
    #[arg(long, global = true)]
    asymmetric_k: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the weight function is legal and report balance.
    Validate { file: String },
    /// Decide whether the generalized representation is faithful.
    Classify {
        file: String,
        /// Largest exponent probed for products of cycle weights.
        #[arg(long, default_value_t = weighted_coxeter::classify::DEFAULT_PROBE_BOUND)]
        bound: i64,
    },
    /// Print the gauge J conjugating the standard representation onto the generalized one.
    Gauge { file: String },
    /// Enumerate the image group by breadth-first search.
    Enumerate {
        file: String,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// Play the numbers game from a script or interactively.
    Play {
        file: String,
        /// Moves such as "fire 1 / fire 2 / fire 1".
        #[arg(long, default_value = "")]
        script: String,
        /// Read `fire v`, `undo`, `reset`, `state`, `quit` from stdin.
        #[arg(long, conflicts_with = "script")]
        interactive: bool,
        /// Start position as comma-separated literals.
        #[arg(long)]
        start: Option<String>,
    },
    /// Pentagon game from random starts with positive sum.
    Imo {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        /// A single start instead of random ones, e.g. "-1,2,2,2,2".
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
    },
    /// List the built-in example graphs, usable as `preset:NAME`.
    Presets,
    /// Run the session service on localhost.
    Serve {
        #[arg(long, default_value_t = 8737)]
        port: u16,
    },
}

fn interactive(
    file: &str,
    start: Option<&str>,
    asymmetric_k: bool,
    format: Format,
) -> Result<(), Failure> {
    let loaded = load(file)?;
    let start = match start {
        Some(s) => Some(parse_position(s)?),
        None => loaded.start,
    };
    let mut session = commands::new_session(loaded.graph, start, asymmetric_k)?;
    let print = |s: &wcox::session::Session| match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(&s.state()).expect("state serializes")
        ),
        Format::Text => {
            let st = s.state();
            let p: Vec<String> = st.position.iter().map(ToString::to_string).collect();
            println!(
                "({})  descent {:?}  word {:?}  reduced {}",
                p.join(", "),
                st.descent_set,
                st.word,
                st.reduced
            );
        }
    };
    print(&session);
    let stdin = std::io::stdin();
    for line in stdin.lock().lines() {
        let line = line.map_err(|e| Failure::Internal(e.to_string()))?;
        let mut tokens = line.split_whitespace();
        let result = match (tokens.next(), tokens.next()) {
            (None, _) => continue,
            (Some("quit" | "exit"), _) => break,
            (Some("state"), _) => Ok(()),
            (Some("undo"), _) => session.undo(),
            (Some("reset"), _) => {
                session.reset();
                Ok(())
            }
            (Some("fire"), Some(v)) | (Some(v), None) if v.parse::<usize>().is_ok() => {
                session.fire(v.parse().expect("checked")).map(|_| ())
            }
            _ => {
                eprintln!("commands: fire V | undo | reset | state | quit");
                continue;
            }
        };
        match result {
            Ok(()) => print(&session),
            Err(e) => eprintln!("error: {e}"),
        }
        std::io::stdout().flush().ok();
    }
    Ok(())
}

fn finish(outcome: Outcome, format: Format) -> ExitCode {
    match outcome {
        Ok(report) => {
            print!("{}", report.render(format));
            if format == Format::Json {
                println!();
            }
            ExitCode::from(report.code as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let k = cli.asymmetric_k;
    let outcome = match cli.command {
        Command::Validate { file } => commands::validate(&file),
        Command::Classify { file, bound } => commands::classify_file(&file, bound),
        Command::Gauge { file } => commands::gauge(&file, k),
        Command::Enumerate { file, budget } => commands::enumerate(&file, budget, k),
        Command::Play {
            file,
            interactive: true,
            start,
            ..
        } => {
            return match interactive(&file, start.as_deref(), k, format) {
                Ok(()) => ExitCode::SUCCESS,
                Err(f) => finish(Err(f), format),
            };
        }
        Command::Play {
            file,
            script,
            start,
            ..
        } => commands::play(&file, &script, start.as_deref(), k),
        Command::Imo {
            seed,
            count,
            budget,
            start,
        } => commands::imo(seed, count, budget, start.as_deref()),
        Command::Presets => commands::list_presets(),
        Command::Serve { port } => {
            let rt = match tokio::runtime::Runtime::new() {
                Ok(rt) => rt,
                Err(e) => return finish(Err(Failure::Internal(e.to_string())), format),
            };
            return match rt.block_on(wcox::service::serve(port)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => finish(Err(Failure::Internal(e.to_string())), format),
            };
        }
    };
    finish(outcome, format)
}
