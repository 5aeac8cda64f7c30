use std::process::ExitCode;

use rsl::acceptance::{run, Scope, NAMES};

fn main() -> ExitCode {
    let scope = Scope::default();
    let mut failed = 0;
    for id in 1..=NAMES.len() {
        match run(id, scope) {
            Ok(r) => {
                println!("{}", r.line());
                failed += usize::from(!r.passed);
            }
            Err(e) => {
                println!("[FAIL] {id:>2} {}: error: {e}", NAMES[id - 1]);
                failed += 1;
            }
        }
    }
    println!("{} of {} criteria passed", NAMES.len() - failed, NAMES.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
