//! The printed forms of the D recursions and of the Bernoulli conversion,
//! next to the oracle-consistent ones. The literal forms go wrong at the
//! first index where their missing factor matters.

use powersum::oracle::oracle_d;
use powersum::sequence::errata;
use powersum::{d_table, verify, Backend, Reading, SeqKind, SeqTable, VerifyOptions};

fn literal_prefix(step: fn(i64, &SeqTable) -> powersum::Result<powersum::Rational>, x_max: i64) -> powersum::Result<SeqTable> {
    let mut t = SeqTable::seeded(SeqKind::D, Backend::Oracle);
    for x in 0..=x_max {
        let v = step(x, &t)?;
        t.push(v);
    }
    Ok(t)
}

fn main() -> powersum::Result<()> {
    let x_max = 5;
    let unit = literal_prefix(errata::d_linear_unit_literal, x_max)?;
    let empty = literal_prefix(errata::d_linear_empty_literal, x_max)?;
    let nonlinear = literal_prefix(errata::d_nonlinear_literal, x_max)?;
    let corrected = d_table(Backend::LinearUnit, Reading::Corrected, x_max)?;

    println!("{:>3} {:>10} {:>14} {:>14} {:>14}", "x", "oracle", "unit literal", "empty literal", "nonlin literal");
    for x in -1..=x_max {
        println!(
            "{x:>3} {:>10} {:>14} {:>14} {:>14}",
            oracle_d(x)?.to_string(),
            unit.get(x).unwrap().to_string(),
            empty.get(x).unwrap().to_string(),
            nonlinear.get(x).unwrap().to_string(),
        );
    }
    println!("\nB_1 as printed: {}, corrected: {}", errata::bernoulli_from_d_literal(1, &corrected)?, corrected.get(0).unwrap() / powersum::Rational::from(2));

    let report = verify(&VerifyOptions { max_m: 6, max_x: x_max, reading: Reading::PaperLiteral });
    if let Some(d) = report.first_divergence {
        println!("verify --paper-literal: {} diverges at {} = {} ({} vs {})", d.subject, d.index_name, d.index, d.value, d.expected);
    }
    Ok(())
}
