//! Power-sum polynomials from a `D` prefix, from Bernoulli's formula, and
//! from the strong coefficient triangle.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coeffs::build_table;
use crate::combinatorics::Factorials;
use crate::error::{Error, Result};
use crate::exact::{PowerSumPoly, Rational};
use crate::sequence::{bernoulli, d_table, Backend, BernoulliView, Reading, SeqKind, SeqTable};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolySource {
    #[default]
    DSequence,
    BernoulliFormula,
    StrongTable,
}

impl PolySource {
    pub const ALL: [PolySource; 3] = [PolySource::DSequence, PolySource::BernoulliFormula, PolySource::StrongTable];

    pub fn name(self) -> &'static str {
        match self {
            PolySource::DSequence => "d",
            PolySource::BernoulliFormula => "bernoulli",
            PolySource::StrongTable => "strong",
        }
    }
}

impl fmt::Display for PolySource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolySource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d" => Ok(PolySource::DSequence),
            "bernoulli" => Ok(PolySource::BernoulliFormula),
            "strong" => Ok(PolySource::StrongTable),
            other => Err(Error::Precondition(format!(
                "unknown polynomial source {other:?} (expected d, bernoulli or strong)"
            ))),
        }
    }
}

/// Which construction to use for `S_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FaulhaberSpec {
    pub order: usize,
    pub source: PolySource,
}

impl FaulhaberSpec {
    pub fn new(order: usize, source: PolySource) -> Self {
        FaulhaberSpec { order, source }
    }

    /// Builds `S_m`, computing whatever prefix the source needs.
    pub fn build(&self) -> Result<PowerSumPoly> {
        let m = self.order;
        match self.source {
            PolySource::DSequence => {
                let d = d_table(Backend::LinearUnit, Reading::Corrected, m as i64 - 1)?;
                faulhaber_poly(m, &d)
            }
            PolySource::BernoulliFormula => {
                let b = bernoulli(m, Backend::LinearUnit)?;
                bernoulli_formula_poly(m, &b)
            }
            PolySource::StrongTable => build_table(m)?.row(m).expect("built").to_poly(),
        }
    }
}

/// `S_m(n) = sum_{x=-1}^{m-1} D_x m! / ((x+2)! (m-x)!) n^(m-x)`.
pub fn faulhaber_poly(m: usize, d_prefix: &SeqTable) -> Result<PowerSumPoly> {
    if d_prefix.kind() != SeqKind::D {
        return Err(Error::WrongKind { expected: "D", got: d_prefix.kind().name() });
    }
    let last = m as i64 - 1;
    if d_prefix.last_index() < last {
        return Err(Error::InsufficientPrefix { kind: "D", have: d_prefix.last_index(), need: last });
    }
    let mut fact = Factorials::new();
    let m_fact = fact.get(m).clone();
    // Exponent e = m - x runs 1..=m+1.
    let coeffs = (1..=m + 1)
        .map(|e| {
            let x = m as i64 - e as i64;
            let den = fact.product((x + 2) as usize, e);
            let d = d_prefix.get(x).expect("prefix checked");
            Ok(d * Rational::new(m_fact.clone(), den)?)
        })
        .collect::<Result<Vec<_>>>()?;
    PowerSumPoly::new(m, coeffs)
}

/// `S_m(n) = n^(m+1)/(m+1) + n^m/2 + sum_{k=2}^{m} m!/(k!(m-k+1)!) B_k n^(m-k+1)`.
///
/// The first two terms are the `k = 0` and `k = 1` members of the same sum
/// (with `B_0 = 1`, `B_1 = 1/2`), which is how they are computed here. For
/// `m = 0` this gives `S_0(n) = n` with no stray `1/2`.
pub fn bernoulli_formula_poly(m: usize, b: &BernoulliView) -> Result<PowerSumPoly> {
    if b.values().len() < m + 1 {
        return Err(Error::InsufficientPrefix {
            kind: "B",
            have: b.values().len() as i64 - 1,
            need: m as i64,
        });
    }
    let mut fact = Factorials::new();
    let m_fact = fact.get(m).clone();
    let mut coeffs = vec![Rational::zero(); m + 1];
    for k in 0..=m {
        let den = fact.product(k, m - k + 1);
        let weight = Rational::new(m_fact.clone(), den)?;
        let bk = b.traditional(k).expect("length checked");
        // exponent m - k + 1, stored at index m - k
        coeffs[m - k] = weight * bk;
    }
    PowerSumPoly::new(m, coeffs)
}

/// `S_m(n)` by exact evaluation of the chosen construction.
pub fn power_sum(m: usize, n: &Rational, source: PolySource) -> Result<Rational> {
    Ok(FaulhaberSpec::new(m, source).build()?.eval(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn faulhaber_examples() {
        let d = d_table(Backend::Oracle, Reading::Corrected, 3).unwrap();
        assert_eq!(faulhaber_poly(0, &d).unwrap().nonconstant(), &[r(1, 1)]);
        assert_eq!(faulhaber_poly(1, &d).unwrap().nonconstant(), &[r(1, 2), r(1, 2)]);
        assert_eq!(faulhaber_poly(2, &d).unwrap().nonconstant(), &[r(1, 6), r(1, 2), r(1, 3)]);
        assert!(matches!(faulhaber_poly(6, &d), Err(Error::InsufficientPrefix { need: 5, .. })));
    }

    #[test]
    fn bernoulli_formula_examples() {
        let b = bernoulli(4, Backend::Oracle).unwrap();
        assert_eq!(bernoulli_formula_poly(0, &b).unwrap().nonconstant(), &[r(1, 1)]);
        assert_eq!(bernoulli_formula_poly(1, &b).unwrap().nonconstant(), &[r(1, 2), r(1, 2)]);
        assert_eq!(
            bernoulli_formula_poly(3, &b).unwrap().nonconstant(),
            &[r(0, 1), r(1, 4), r(1, 2), r(1, 4)]
        );
        assert_eq!(bernoulli_formula_poly(4, &b).unwrap().coefficient(1), r(-1, 30));
        assert!(bernoulli_formula_poly(5, &b).is_err());
    }

    #[test]
    fn power_sum_examples() {
        for source in PolySource::ALL {
            assert_eq!(power_sum(2, &r(3, 1), source).unwrap(), r(14, 1));
            assert_eq!(power_sum(0, &r(5, 1), source).unwrap(), r(5, 1));
        }
        let brute = crate::oracle::brute_sum(10, 100);
        assert_eq!(power_sum(10, &r(100, 1), PolySource::DSequence).unwrap(), Rational::from_integer(brute));
    }

    #[test]
    fn source_names() {
        for s in PolySource::ALL {
            assert_eq!(s.name().parse::<PolySource>().unwrap(), s);
        }
        assert!("x".parse::<PolySource>().is_err());
    }
}
