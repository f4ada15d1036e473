//! Exact power sums from the polynomial, checked against direct summation.
//!
//!     cargo run --example power_sums -- 10 1000

use powersum::{brute_sum, power_sum, PolySource, Rational};

fn main() -> powersum::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(10);
    let n: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);

    let value = power_sum(m, &Rational::from(n as i64), PolySource::DSequence)?;
    let brute = brute_sum(m as u32, n);
    println!("S_{m}({n}) = {value}");
    println!("direct sum matches: {}", value == Rational::from_integer(brute));

    // The polynomial extends past the integers.
    for n in ["-1", "0", "1/2", "-7/3"] {
        let x: Rational = n.parse()?;
        println!("S_{m}({n}) = {}", power_sum(m, &x, PolySource::StrongTable)?);
    }
    Ok(())
}
