//! Builds S_m from the D sequence, from Bernoulli's formula and from the
//! strong triangle, and checks that the three constructions coincide.
//!
//!     cargo run --example faulhaber_polynomials -- 10

use powersum::{FaulhaberSpec, PolySource};

fn main() -> powersum::Result<()> {
    let m_max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    for m in 0..=m_max {
        let polys = PolySource::ALL
            .iter()
            .map(|&s| FaulhaberSpec::new(m, s).build())
            .collect::<powersum::Result<Vec<_>>>()?;
        let same = polys.windows(2).all(|w| w[0] == w[1]);
        let p = &polys[0];
        let terms: Vec<String> = (1..=p.degree())
            .rev()
            .map(|k| (k, p.coefficient(k)))
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{c} n^{k}"))
            .collect();
        println!("S_{m}(n) = {}    [sources agree: {same}]", terms.join(" + "));
    }
    Ok(())
}
