//! Term-by-term timing of the D backends.
//!
//!     cargo run --release --example bench_backends -- 80

use powersum::{bench, Backend};

fn main() -> powersum::Result<()> {
    let x_max: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(60);
    let reports = bench(&Backend::RECURSIONS, x_max, 3)?;
    for r in &reports {
        let last = r.per_term_seconds.last().copied().unwrap_or_default();
        println!(
            "{:<10} total {:>9.4} s   last term {:>9.2e} s   growth {:>9.2e} s   peak numerator {} bits",
            r.backend.name(),
            r.total_seconds,
            last,
            r.growth(),
            r.peak_numerator_bits
        );
    }
    Ok(())
}
