//! Builds the coefficient triangle by the strong recursion and shows the
//! alpha combinations that drive it, then rebuilds a row from the closed
//! form and the condensed recursion.
//!
//!     cargo run --example coefficient_triangle -- 8

use powersum::{alpha, build_table, c_table, closed_coeff, condensed_sequence, Backend};

fn main() -> powersum::Result<()> {
    let m_max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let table = build_table(m_max)?;

    for row in table.rows() {
        let terms: Vec<String> = row.iter().collect::<Vec<_>>().into_iter().rev().map(|(k, a)| format!("{a} n^{k}")).collect();
        println!("S_{}(n) = {}", row.order(), terms.join(" + "));
    }

    let k = m_max.saturating_sub(1);
    let alphas: Vec<String> = (0..=k + 1)
        .map(|j| alpha(k, j, &table).map(|a| format!("alpha[{k},{j}] = {a}")))
        .collect::<powersum::Result<_>>()?;
    println!("\n{}", alphas.join("\n"));

    // The same row from the per-offset constants.
    let c = c_table(Backend::Nonlinear, m_max as i64 - 1)?;
    println!("\nrow {m_max} by offset x (coefficient of n^(m-x)):");
    for x in -1..m_max as i64 {
        let cx = c.get(x).expect("prefix covers x");
        let closed = closed_coeff(m_max, x, cx)?;
        let condensed = condensed_sequence(x, cx, m_max)?.pop().expect("m_max >= x + 1");
        let strong = table.row(m_max).and_then(|r| r.by_offset(x)).expect("row built");
        println!("  x = {x:>2}: strong {strong}, closed {closed}, condensed {condensed}");
    }
    Ok(())
}
