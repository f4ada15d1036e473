//! Computes D_{-1}..D_x with every backend side by side and shows that they
//! agree exactly, along with the paired C values.
//!
//!     cargo run --example d_sequence_backends -- 16

use powersum::{c_table, d_table, Backend, Reading};

fn main() -> powersum::Result<()> {
    let x_max: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(12);

    let tables = Backend::RECURSIONS
        .iter()
        .chain([Backend::Oracle].iter())
        .map(|&b| d_table(b, Reading::Corrected, x_max))
        .collect::<powersum::Result<Vec<_>>>()?;
    let c = c_table(Backend::Nonlinear, x_max)?;

    println!("{:>4}  {:>28}  {:>28}  agree", "x", "D_x", "C_x");
    for x in -1..=x_max {
        let d = tables[0].get(x).expect("range");
        let agree = tables.iter().all(|t| t.get(x) == Some(d));
        println!("{x:>4}  {d:>28}  {:>28}  {agree}", c.get(x).expect("range"));
    }
    Ok(())
}
