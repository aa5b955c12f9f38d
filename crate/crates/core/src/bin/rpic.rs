use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use rpic_core::cli::{exit_code, run, Command, Format, JobSpec, Options, DEFAULT_WEYL_CAP};

/// Relative Picard groups of moduli stacks of G-bundles over pointed curves.
#[derive(Parser, Debug)]
#[command(name = "rpic", version)]
struct Args {
    /// Job specification (JSON).
    #[arg(long)]
    spec: PathBuf,
    /// Overrides the command given in the spec.
    #[arg(long, value_enum)]
    command: Option<Command>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Force push-out, rank-law and Weyl enumeration checks.
    #[arg(long)]
    verify: bool,
    /// Cap on Weyl group enumeration in checks.
    #[arg(long, default_value_t = DEFAULT_WEYL_CAP)]
    weyl_cap: usize,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.spec) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.spec.display());
            return ExitCode::from(2);
        }
    };
    let opts = Options {
        verify: args.verify,
        weyl_cap: args.weyl_cap,
    };
    match JobSpec::parse(&text).and_then(|job| run(&job, args.command, &opts)) {
        Ok(report) => {
            print!("{}", report.render(args.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
