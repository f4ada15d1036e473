//! The brute-force oracle: interpolate S_m through exact sums at n = 1..m+1,
//! confirm at the held-out node, and read off D_x.
//!
//!     cargo run --example oracle_interpolation -- 6

use powersum::{brute_sum, oracle_coeffs, oracle_d};

fn main() -> powersum::Result<()> {
    let m: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let row = oracle_coeffs(m)?;
    let samples: Vec<String> = row.nodes.iter().map(|&n| format!("S({n}) = {}", brute_sum(m as u32, n))).collect();
    println!("order {m}, nodes: {}", samples.join(", "));
    for (k, a) in row.nonconstant().iter().enumerate().rev() {
        println!("  a[{m},{}] = {a}", k + 1);
    }
    println!("held-out node {} reproduced exactly", row.holdout);
    println!("D[{}] = {}", m as i64 - 1, oracle_d(m as i64 - 1)?);
    Ok(())
}
