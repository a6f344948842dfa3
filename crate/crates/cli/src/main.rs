use std::process::ExitCode;

use clap::Parser;

use freecone_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage_error = e.use_stderr();
            let _ = e.print();
            // clap's own usage code would collide with "unequal"
            return ExitCode::from(if usage_error { 1 } else { 0 });
        }
    };
    if let Some(threads) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("freecone: cannot set up {threads} threads: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli.command, &cli.global.limits()) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            eprintln!("freecone: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
