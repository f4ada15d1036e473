//! Runs the full cross-backend verification and prints a summary.
//!
//!     cargo run --release --example verify_backends

use powersum::{verify, VerifyOptions};

fn main() {
    let report = verify(&VerifyOptions::default());
    for check in &report.checks {
        println!("{} {:<22} {} comparisons", check.status.as_str(), check.name, check.compared);
    }
    for t in &report.timing {
        println!("timing: {:<10} {:.4} s", t.backend, t.seconds);
    }
    println!("status: {}", report.status.as_str());
    if !report.passed() {
        std::process::exit(1);
    }
}
