use std::process::ExitCode;

use twisted_mps::suites::{run_all, Scale, DEFAULT_SEED};

fn main() -> ExitCode {
    let reports = match run_all(Scale::Full, DEFAULT_SEED) {
        Ok(r) => r,
        Err(e) => {
            println!("FAIL acceptance suites aborted: {e}");
            return ExitCode::FAILURE;
        }
    };
    for report in &reports {
        println!("{report}");
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    println!("{}/{} criteria pass", reports.len() - failed, reports.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
