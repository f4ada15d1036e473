//! Cached exact factorials and binomial coefficients.

use num_bigint::BigInt;
use num_traits::One;

use crate::exact::Rational;

/// Pascal's triangle, grown row by row on demand.
#[derive(Clone, Debug, Default)]
pub struct PascalTriangle {
    rows: Vec<Vec<BigInt>>,
}

impl PascalTriangle {
    pub fn new() -> Self {
        PascalTriangle { rows: vec![vec![BigInt::one()]] }
    }

    fn grow_to(&mut self, n: usize) {
        if self.rows.is_empty() {
            self.rows.push(vec![BigInt::one()]);
        }
        while self.rows.len() <= n {
            let prev = self.rows.last().expect("seeded");
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(BigInt::one());
            for w in prev.windows(2) {
                row.push(&w[0] + &w[1]);
            }
            row.push(BigInt::one());
            self.rows.push(row);
        }
    }

    /// `binom(n, k)`, zero when `k > n`.
    pub fn binomial(&mut self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::default();
        }
        self.grow_to(n);
        self.rows[n][k].clone()
    }

    /// Cached `binom(n, k)` without growing the triangle.
    pub fn get(&self, n: usize, k: usize) -> Option<&BigInt> {
        self.rows.get(n).and_then(|row| row.get(k))
    }

    pub fn ensure_rows(&mut self, n: usize) {
        self.grow_to(n);
    }

    pub fn row(&mut self, n: usize) -> &[BigInt] {
        self.grow_to(n);
        &self.rows[n]
    }
}

/// `0!, 1!, 2!, ...`, extended on demand.
#[derive(Clone, Debug)]
pub struct Factorials {
    values: Vec<BigInt>,
}

impl Default for Factorials {
    fn default() -> Self {
        Self::new()
    }
}

impl Factorials {
    pub fn new() -> Self {
        Factorials { values: vec![BigInt::one()] }
    }

    pub fn get(&mut self, n: usize) -> &BigInt {
        while self.values.len() <= n {
            let k = self.values.len();
            let next = &self.values[k - 1] * BigInt::from(k);
            self.values.push(next);
        }
        &self.values[n]
    }

    /// `a! * b!`.
    pub fn product(&mut self, a: usize, b: usize) -> BigInt {
        self.get(a.max(b));
        &self.values[a] * &self.values[b]
    }

    pub fn rational(&mut self, n: usize) -> Rational {
        Rational::from_integer(self.get(n).clone())
    }
}

/// Uncached `n!`.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
