//! Ground truth by brute force.
//!
//! Power sums are added up term by term, and the coefficients of `S_m` are
//! recovered by exact interpolation against the degree-`(m+1)`, zero-constant
//! ansatz on nodes `1..=m+1`, then checked at the held-out node `m+2`.
//! Nothing here touches the recursions it arbitrates.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{eval_dense, Rational};

/// `sum_{i=1}^n i^m` by direct summation; `n = 0` is the empty sum.
pub fn brute_sum(m: u32, n: u64) -> BigInt {
    (1..=n).map(|i| num_traits::pow(BigInt::from(i), m as usize)).sum()
}

/// Interpolated coefficients of `S_m` with the nodes that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRow {
    pub order: usize,
    /// Indexed by exponent, slot 0 is the imposed zero constant term.
    pub coefficients: Vec<Rational>,
    pub nodes: Vec<u64>,
    pub holdout: u64,
}

impl OracleRow {
    /// `a_{m,k}`; zero outside `1..=m+1`.
    pub fn get(&self, exponent: usize) -> Rational {
        if exponent == 0 {
            return Rational::zero();
        }
        self.coefficients.get(exponent).cloned().unwrap_or_default()
    }

    pub fn nonconstant(&self) -> &[Rational] {
        &self.coefficients[1..]
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        eval_dense(&self.coefficients, n)
    }
}

/// Solves `a x = b` by exact Gaussian elimination, pivoting on the first
/// nonzero entry of each column.
pub fn solve_exact(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Result<Vec<Rational>> {
    let n = b.len();
    if a.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::Precondition("linear system must be square".into()));
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular(col))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip()?;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc -= &a[r][c] * &x[c];
        }
        x[r] = acc.checked_div(&a[r][r])?;
    }
    Ok(x)
}

/// Recovers `S_m` from brute sums at `n = 1..=m+1`, verified at `n = m+2`.
pub fn oracle_coeffs(m: usize) -> Result<OracleRow> {
    let size = m + 1;
    let nodes: Vec<u64> = (1..=size as u64).collect();
    let matrix: Vec<Vec<Rational>> = nodes
        .iter()
        .map(|&n| {
            let n = BigInt::from(n);
            (1..=size)
                .map(|e| Rational::from_integer(num_traits::pow(n.clone(), e)))
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = nodes
        .iter()
        .map(|&n| Rational::from_integer(brute_sum(m as u32, n)))
        .collect();
    let solution = solve_exact(matrix, rhs)?;

    let mut coefficients = Vec::with_capacity(size + 1);
    coefficients.push(Rational::zero());
    coefficients.extend(solution);
    let row = OracleRow {
        order: m,
        coefficients,
        nodes,
        holdout: size as u64 + 1,
    };

    let held = Rational::from_integer(brute_sum(m as u32, row.holdout));
    if row.eval(&Rational::from(row.holdout as i64)) != held {
        return Err(Error::InvariantFailure(format!(
            "oracle row {m} misses the held-out node {}",
            row.holdout
        )));
    }
    Ok(row)
}

/// Reference `D_x = (x+2) a_{x+1,1}`, with `D_{-1} = 1`.
pub fn oracle_d(x: i64) -> Result<Rational> {
    if x < -1 {
        return Err(Error::Precondition(format!("D is indexed from -1, got {x}")));
    }
    if x == -1 {
        return Ok(Rational::one());
    }
    let row = oracle_coeffs((x + 1) as usize)?;
    Ok(row.get(1) * Rational::from(x + 2))
}

/// Reference `D_{-1} ..= D_{x_max}`.
pub fn oracle_d_values(x_max: i64) -> Result<Vec<Rational>> {
    (-1..=x_max).map(oracle_d).collect()
}

/// Reference `B_0 ..= B_{n_max}` (with `B_1 = +1/2`).
///
/// In Bernoulli's formula the coefficient of `n^1` in `S_k` is exactly `B_k`,
/// so each value is read off an interpolated row without going through `D`.
pub fn oracle_bernoulli(n_max: usize) -> Result<Vec<Rational>> {
    (0..=n_max).map(|k| Ok(oracle_coeffs(k)?.get(1))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn brute_examples() {
        assert_eq!(brute_sum(3, 4), BigInt::from(100));
        assert_eq!(brute_sum(5, 0), BigInt::zero());
        assert_eq!(brute_sum(1, 100), BigInt::from(5050));
        assert_eq!(brute_sum(0, 9), BigInt::from(9));
    }

    #[test]
    fn oracle_rows() {
        assert_eq!(oracle_coeffs(0).unwrap().nonconstant(), &[Rational::one()]);
        assert_eq!(oracle_coeffs(1).unwrap().nonconstant(), &[r(1, 2), r(1, 2)]);
        let row4 = oracle_coeffs(4).unwrap();
        assert_eq!(
            row4.nonconstant(),
            &[r(-1, 30), Rational::zero(), r(1, 3), r(1, 2), r(1, 5)]
        );
        assert_eq!(row4.nodes, vec![1, 2, 3, 4, 5]);
        assert_eq!(row4.holdout, 6);
    }

    #[test]
    fn oracle_d_examples() {
        assert_eq!(oracle_d(-1).unwrap(), Rational::one());
        assert_eq!(oracle_d(1).unwrap(), r(1, 2));
        assert_eq!(oracle_d(3).unwrap(), r(-1, 6));
        assert!(oracle_d(-2).is_err());
    }

    #[test]
    fn solver_pivots_and_detects_singularity() {
        let a = vec![vec![r(0, 1), r(1, 1)], vec![r(2, 1), r(0, 1)]];
        let x = solve_exact(a, vec![r(3, 1), r(4, 1)]).unwrap();
        assert_eq!(x, vec![r(2, 1), r(3, 1)]);

        let singular = vec![vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(4, 1)]];
        assert_eq!(solve_exact(singular, vec![r(1, 1), r(2, 1)]), Err(Error::Singular(1)));
    }

    #[test]
    fn oracle_bernoulli_head() {
        let b = oracle_bernoulli(4).unwrap();
        assert_eq!(b, vec![r(1, 1), r(1, 2), r(1, 6), r(0, 1), r(-1, 30)]);
    }
}
