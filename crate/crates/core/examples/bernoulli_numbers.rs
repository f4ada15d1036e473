//! Bernoulli numbers with B_1 = +1/2, under both indexings.
//!
//!     cargo run --example bernoulli_numbers -- 30

use powersum::{bernoulli, Backend, Indexing};

fn main() -> powersum::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let b = bernoulli(n, Backend::LinearUnit)?;
    for (k, v) in b.iter() {
        println!("B[{k}] = {v}");
    }

    let shifted = b.reindexed(Indexing::FromMinusOne);
    println!("\nindexed from -1: first value B[{}] = {}", shifted.first_index(), shifted.get(-1).expect("B_0"));
    Ok(())
}
