use std::process::ExitCode;

use dse_cli::{cmd_bench, cmd_solve, parse_config, CliError, CommandKind};

fn run() -> Result<(), CliError> {
    let (kind, cfg) = parse_config(std::env::args_os())?;
    match kind {
        CommandKind::Solve => {
            let sol = cmd_solve(&cfg)?;
            println!(
                "{} after {} iterations ({}); A(p²_min) = {:.6}, B(p²_min) = {:.6} GeV",
                if sol.converged {
                    "converged"
                } else {
                    "not converged"
                },
                sol.iterations,
                cfg.variant,
                sol.a[0],
                sol.b[0]
            );
            println!("wrote {} and {}", cfg.out.display(), cfg.history.display());
        }
        CommandKind::Bench => {
            let report = cmd_bench(&cfg)?;
            print!("{}", report.table());
            println!("wrote {}", cfg.out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Clap(e)) => {
            let _ = e.print();
            ExitCode::from(e.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
