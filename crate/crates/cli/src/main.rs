use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use parcat_cli::commands::{self, Exit, Outcome};
use parcat_core::fincat::DEFAULT_MAX_MORPHISMS;
use parcat_core::Flavor;

#[derive(Parser)]
#[command(
    name = "parcat",
    version,
    about = "Validate, translate and certify finite partiality structures"
)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Morphism cap for loaded and generated categories.
    #[arg(long, global = true, env = "PARCAT_MAX_SIZE", default_value_t = DEFAULT_MAX_MORPHISMS)]
    max_size: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the category laws and structure axioms of a document.
    Validate {
        file: PathBuf,
        /// Only check this structure block.
        #[arg(long)]
        structure: Option<Flavor>,
    },
    /// Translate a structure along restriction, local, inclusion, partial.
    Translate {
        file: PathBuf,
        #[arg(long)]
        from: Flavor,
        #[arg(long)]
        to: Flavor,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify the round trip through the neighbouring construction.
    Roundtrip {
        file: PathBuf,
        #[arg(long)]
        structure: Flavor,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a generated document.
    #[command(after_help = format!("Kinds: {}", commands::KINDS))]
    Generate {
        kind: String,
        /// key=value parameters.
        params: Vec<String>,
        #[arg(long)]
        structure: Option<Flavor>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print structure statistics.
    Report { file: PathBuf },
}

fn read(path: &Path, command: &str) -> Result<String, Box<Outcome>> {
    fs::read_to_string(path).map_err(|e| {
        let input = path.display().to_string();
        Box::new(commands::io_error(command, &input, format!("cannot read {input}: {e}")))
    })
}

fn run(cli: &Cli) -> (Outcome, Option<PathBuf>) {
    let limit = cli.max_size;
    let input = |p: &Path| p.display().to_string();
    match &cli.command {
        Command::Validate { file, structure } => match read(file, "validate") {
            Ok(text) => (
                commands::validate(&text, &input(file), *structure, limit),
                None,
            ),
            Err(o) => (*o, None),
        },
        Command::Translate {
            file,
            from,
            to,
            out,
        } => match read(file, "translate") {
            Ok(text) => (
                commands::translate(&text, &input(file), *from, *to, limit),
                out.clone(),
            ),
            Err(o) => (*o, None),
        },
        Command::Roundtrip {
            file,
            structure,
            out,
        } => match read(file, "roundtrip") {
            Ok(text) => (
                commands::roundtrip(&text, &input(file), *structure, limit),
                out.clone(),
            ),
            Err(o) => (*o, None),
        },
        Command::Generate {
            kind,
            params,
            structure,
            seed,
            out,
        } => (
            commands::generate(kind, params, *seed, *structure, limit),
            out.clone(),
        ),
        Command::Report { file } => match read(file, "report") {
            Ok(text) => (commands::report(&text, &input(file), limit), None),
            Err(o) => (*o, None),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut outcome, out_path) = run(&cli);
    // The artifact goes to --out or stdout; the report then takes whichever stream is free.
    let mut artifact_on_stdout = false;
    if let Some(artifact) = &outcome.artifact {
        match &out_path {
            Some(path) => {
                if let Err(e) = fs::write(path, artifact) {
                    outcome.exit = Exit::Malformed;
                    outcome
                        .summary
                        .push(format!("cannot write {}: {e}", path.display()));
                }
            }
            None => {
                print!("{artifact}");
                artifact_on_stdout = true;
            }
        }
    }
    let text = if cli.json {
        let mut s = serde_json::to_string_pretty(&outcome.report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        outcome.summary.iter().map(|l| format!("{l}\n")).collect()
    };
    if artifact_on_stdout {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.exit as u8)
}
