use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use absalg::cli::{corpus, parse_definition, run, Command, DefinitionDocument, Options, DEFAULT_MAX_WEIGHT};
use absalg::par;
use absalg::Error;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Out {
    Json,
    Table,
}

/// Exact computations with dg (co)algebras, absolute algebras and their bar/cobar constructions.
///
/// Inputs are definition files; a name of a bundled corpus file (e.g. `grouplike`)
/// is accepted where no such path exists.
#[derive(Debug, Parser)]
#[command(name = "absalg", version)]
struct Cli {
    /// One of: validate, homology, bar, cobar, complete-cobar, complete-bar, dual,
    /// topological-dual, envelope, abs, res, convolution, twisting-check,
    /// square-check {mate|fd|conil-core}, contra-check, invariants.
    command: String,

    /// Square-check mode, then input files.
    #[arg(required = true)]
    args: Vec<String>,

    #[arg(long, default_value_t = DEFAULT_MAX_WEIGHT)]
    max_weight: usize,

    #[arg(long, value_enum, default_value = "json")]
    out: Out,

    /// Worker threads; 1 runs the sequential code path.
    #[arg(long)]
    threads: Option<usize>,

    /// Print elapsed time to stderr.
    #[arg(long)]
    timing: bool,

    /// A degree -1 map for twisting-check, as a JSON file `{"c": [["b", "p/q"]]}`.
    #[arg(long)]
    nu: Option<String>,
}

fn load(arg: &str) -> Result<DefinitionDocument, Error> {
    if Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg).map_err(|e| Error::Io(format!("{arg}: {e}")))?;
        parse_definition(&text)
    } else {
        corpus::document(arg).map_err(|_| Error::Io(format!("{arg}: no such file or bundled definition")))
    }
}

fn execute(cli: &Cli) -> Result<absalg::cli::Report, Error> {
    let (mode, files) = match cli.command.as_str() {
        "square-check" => (cli.args.first().map(String::as_str), &cli.args[1..]),
        _ => (None, &cli.args[..]),
    };
    let command = Command::parse(&cli.command, mode)?;
    let docs = files.iter().map(|f| load(f)).collect::<Result<Vec<_>, _>>()?;
    let nu = cli
        .nu
        .as_ref()
        .map(|p| std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{p}: {e}"))))
        .transpose()?;
    let opts = Options {
        max_weight: cli.max_weight,
        nu,
    };
    run(command, &docs, &opts)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = par::set_threads(t) {
            eprintln!("absalg: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let result = execute(&cli);
    if cli.timing {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(report) => {
            let text = match cli.out {
                Out::Json => report.to_json(),
                Out::Table => report.to_table(),
            };
            print!("{text}");
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("absalg: {e}");
            ExitCode::from(2)
        }
    }
}
