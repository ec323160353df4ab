use std::path::PathBuf;
use std::process::ExitCode;

use brauer2_cli::{exit_code, parse_surface, run, Command, Format};
use brauer2_core::arith::Mode;
use clap::{Parser, Subcommand, ValueEnum};

/// Norm-kernel descent and Brauer residue certificates for genus-one
/// fibrations y^2 = f(x, t).
#[derive(Parser, Debug)]
#[command(name = "brauer2", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Surface description file.
    #[arg(long, global = true)]
    surface: Option<PathBuf>,

    /// Overrides the mode given in the surface file.
    #[arg(long, global = true)]
    mode: Option<ModeArg>,

    /// Overrides the precision cap given in the surface file.
    #[arg(long, global = true)]
    precision: Option<usize>,

    #[arg(long, global = true, default_value = "text")]
    format: FormatArg,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// The bad set S.
    BadPlaces,
    /// The S-unramified classes of the norm kernel.
    Enumerate,
    /// Enumerate and keep the classes passing the residue test.
    Filter,
    /// Full diagnostics for one element of L.
    Check {
        /// "(d1; d2; d3; d4)" at the roots of a split f, or a polynomial in A
        element: String,
    },
    /// The symbol sum of a split element.
    ExpandSplit {
        /// "(d1; d2; d3; d4)" at the roots of a split f, or a polynomial in A
        element: String,
    },
    /// Vertical residue of an element at one place.
    Residues {
        /// "(d1; d2; d3; d4)" at the roots of a split f, or a polynomial in A
        element: String,
        /// "inf" or an irreducible polynomial in t
        #[arg(long)]
        place: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Geometric,
    Strict,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Tsv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(path) = cli.surface else {
        eprintln!("error: --surface FILE is required");
        return ExitCode::from(1);
    };
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(1);
        }
    };
    let mut spec = match parse_surface(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    if let Some(m) = cli.mode {
        spec.mode = match m {
            ModeArg::Geometric => Mode::Geometric,
            ModeArg::Strict => Mode::Strict,
        };
    }
    if let Some(p) = cli.precision {
        spec.precision = p;
    }
    let command = match cli.command {
        Cmd::BadPlaces => Command::BadPlaces,
        Cmd::Enumerate => Command::Enumerate,
        Cmd::Filter => Command::Filter,
        Cmd::Check { element } => Command::Check(element),
        Cmd::ExpandSplit { element } => Command::ExpandSplit(element),
        Cmd::Residues { element, place } => Command::Residues { element, place },
    };
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Tsv => Format::Tsv,
    };
    match run(&spec, &command, format) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
