use std::fs;
use std::process::ExitCode;

use hjelmslev_core::cli::{parse_args, run, CliError, EXIT_DOMAIN};

fn write_artifacts(config_dir: &std::path::Path, artifacts: &[(String, String)]) -> Result<(), CliError> {
    let io_err = |e: std::io::Error| CliError {
        module: "cli-export",
        operation: "run",
        message: e.to_string(),
        exit_code: EXIT_DOMAIN,
    };
    fs::create_dir_all(config_dir).map_err(io_err)?;
    for (name, contents) in artifacts {
        fs::write(config_dir.join(name), contents).map_err(io_err)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let config = match parse_args(std::env::args_os()) {
        Ok(Ok(c)) => c,
        Ok(Err(help)) => {
            print!("{help}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{}", e.report());
            return ExitCode::from(e.exit_code as u8);
        }
    };
    let result = run(&config).and_then(|out| {
        if let Some(dir) = &config.out_dir {
            write_artifacts(dir, &out.artifacts)?;
        }
        Ok(out)
    });
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            for note in &out.notes {
                eprintln!("{note}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprint!("{}", e.report());
            ExitCode::from(e.exit_code as u8)
        }
    }
}
