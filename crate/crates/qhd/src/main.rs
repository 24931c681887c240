use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qhd::presentation::{parse_presentation, FieldMode};
use qhd::run::{run, Command, Options, EXIT_ERROR};

/// Decide quasi-heredity of quotients of path algebras.
#[derive(Parser, Debug)]
#[command(name = "qhd", version)]
struct Cli {
    /// Admissible order, e.g. "lenlex a>b>c"
    #[arg(long, global = true)]
    order: Option<String>,
    /// Semicolon-separated orders tried in turn by `qh`
    #[arg(long, global = true)]
    orders: Option<String>,
    /// Overlap length cap for completion
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Emit JSON
    #[arg(long, global = true)]
    json: bool,
    /// Coefficient field: `q` or `fp:<prime>`
    #[arg(long, global = true)]
    field: Option<FieldMode>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Reduced Gröbner basis, tips, dimension and length bound
    Gb { input: String },
    /// Dimension of the quotient
    Dim { input: String },
    /// Decide quasi-heredity
    Qh {
        input: String,
        /// Treat the relations as a monomial ideal and decide exactly
        #[arg(long)]
        monomial: bool,
    },
    /// Check a given vertex ordering for a heredity chain
    Verify {
        input: String,
        #[arg(long, value_delimiter = ',', required = true)]
        ordering: Vec<String>,
    },
    /// Presentation of the quotient by the ideal generated by some vertices
    Quotient {
        input: String,
        #[arg(long, value_delimiter = ',', required = true)]
        remove: Vec<String>,
    },
}

fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_ERROR as u8) } else { ExitCode::SUCCESS };
        }
    };
    let (input, command) = match cli.command {
        Cmd::Gb { input } => (input, Command::Gb),
        Cmd::Dim { input } => (input, Command::Dim),
        Cmd::Qh { input, monomial } => (input, Command::Qh { monomial }),
        Cmd::Verify { input, ordering } => (input, Command::Verify { ordering }),
        Cmd::Quotient { input, remove } => (input, Command::Quotient { remove }),
    };
    let env_cap = match std::env::var("QHD_CAP") {
        Ok(v) => match v.trim().parse() {
            Ok(c) => Some(c),
            Err(_) => {
                eprintln!("qhd: QHD_CAP must be a number, got `{v}`");
                return ExitCode::from(EXIT_ERROR as u8);
            }
        },
        Err(_) => None,
    };
    let text = match read_input(&input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("qhd: {input}: {e}");
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    let presentation = match parse_presentation(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("qhd: {input}: {e}");
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    let opts = Options {
        order: cli.order,
        orders: cli.orders,
        cap: cli.cap,
        env_cap,
        json: cli.json,
        field: cli.field,
    };
    match run(&command, &presentation, &opts) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("qhd: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
