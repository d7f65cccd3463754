use std::process::ExitCode;

use quadunit_cli::acceptance;

const SEED: u64 = 20_240_601;

fn main() -> ExitCode {
    let results = acceptance::run(&[], SEED);
    for c in &results {
        println!("{}", c.line());
    }
    let failed = results.iter().filter(|c| !c.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
