//! The coefficient triangle `a_{m,k}` of the power-sum polynomials.
//!
//! Three independent routes produce the same numbers:
//!
//! - the strong recursion ([`next_row`], [`build_table`]), where row `m` is
//!   assembled from every earlier row through the binomial-weighted
//!   combinations [`alpha`];
//! - the condensed recursion ([`condensed_base`], [`condensed_step`]), which
//!   walks one offset sequence `x` (coefficient of `n^(m-x)`) at a time and
//!   needs only the per-offset constant `C_x`;
//! - the closed form [`closed_coeff`].
//!
//! The table built by the strong recursion is never modified by the other
//! two routes; they only cross-check it.

use num_bigint::BigInt;
use num_traits::One;

use crate::combinatorics::{factorial, PascalTriangle};
use crate::error::{Error, Result};
use crate::exact::{PowerSumPoly, Rational};

/// Row `m` of the triangle: the coefficients of `S_m(n)` by exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffRow {
    order: usize,
    /// Indexed by exponent, slot 0 unused and zero.
    entries: Vec<Rational>,
}

impl CoeffRow {
    /// Builds a row from the coefficients of `n^1 ..= n^(m+1)`.
    pub fn new(order: usize, nonconstant: Vec<Rational>) -> Result<Self> {
        if nonconstant.len() != order + 1 {
            return Err(Error::Precondition(format!(
                "row {order} needs {} entries, got {}",
                order + 1,
                nonconstant.len()
            )));
        }
        let mut entries = Vec::with_capacity(order + 2);
        entries.push(Rational::zero());
        entries.extend(nonconstant);
        Ok(CoeffRow { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `a_{m,k}`, or `None` outside `1..=m+1`.
    pub fn get(&self, exponent: usize) -> Option<&Rational> {
        if exponent == 0 {
            None
        } else {
            self.entries.get(exponent)
        }
    }

    /// `a_{m,m-x}` by offset from the `n^m` term; `x = -1` is the leading term.
    pub fn by_offset(&self, x: i64) -> Option<&Rational> {
        let exponent = self.order as i64 - x;
        if exponent < 1 {
            None
        } else {
            self.get(exponent as usize)
        }
    }

    /// `(exponent, coefficient)` pairs, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().enumerate().skip(1)
    }

    pub fn nonconstant(&self) -> &[Rational] {
        &self.entries[1..]
    }

    pub fn leading(&self) -> &Rational {
        &self.entries[self.order + 1]
    }

    pub fn to_poly(&self) -> Result<PowerSumPoly> {
        PowerSumPoly::new(self.order, self.nonconstant().to_vec())
    }
}

/// Rows `0..=m_max` of the triangle, built by the strong recursion.
#[derive(Clone, Debug)]
pub struct CoeffTable {
    rows: Vec<CoeffRow>,
    // Always holds binomial rows 0..=rows.len(), enough for the next row.
    pascal: PascalTriangle,
}

impl Default for CoeffTable {
    fn default() -> Self {
        Self::new()
    }
}

impl CoeffTable {
    /// A table holding only the base row `S_0(n) = n`.
    pub fn new() -> Self {
        let base = CoeffRow::new(0, vec![Rational::one()]).expect("base row shape");
        let mut pascal = PascalTriangle::new();
        pascal.ensure_rows(1);
        CoeffTable { rows: vec![base], pascal }
    }

    pub fn max_order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn row(&self, m: usize) -> Option<&CoeffRow> {
        self.rows.get(m)
    }

    pub fn rows(&self) -> &[CoeffRow] {
        &self.rows
    }

    /// `a_{m,k}`; zero when `k` lies outside `1..=m+1`.
    pub fn a(&self, m: usize, k: usize) -> Result<Rational> {
        let row = self.rows.get(m).ok_or(Error::MissingRow(m))?;
        Ok(row.get(k).cloned().unwrap_or_default())
    }

    fn binomial(&self, n: usize, k: usize) -> BigInt {
        self.pascal.get(n, k).cloned().unwrap_or_default()
    }

    /// Appends the next row produced by [`next_row`].
    pub fn extend(&mut self) -> Result<&CoeffRow> {
        let row = next_row(self)?;
        self.rows.push(row);
        self.pascal.ensure_rows(self.rows.len());
        Ok(self.rows.last().expect("just pushed"))
    }

    pub fn extend_to(&mut self, m_max: usize) -> Result<()> {
        while self.max_order() < m_max {
            self.extend()?;
        }
        Ok(())
    }
}

/// `alpha_{k,j} = sum_{t=max(j,1)}^{k+1} a_{k,t} binom(t, j) (-1)^(t-j)`.
///
/// For `j = 0` the sum starts at `t = 1`: the triangle has no constant term.
pub fn alpha(k: usize, j: usize, table: &CoeffTable) -> Result<Rational> {
    let row = table.row(k).ok_or(Error::MissingRow(k))?;
    if j > k + 1 {
        return Err(Error::Precondition(format!("alpha_{{{k},{j}}} needs j <= {}", k + 1)));
    }
    Ok(alpha_from_row(row, j, table))
}

fn alpha_from_row(row: &CoeffRow, j: usize, table: &CoeffTable) -> Rational {
    let k = row.order();
    let mut acc = Rational::zero();
    for t in j.max(1)..=k + 1 {
        let term = row.get(t).expect("t in 1..=k+1") * Rational::from_integer(table.binomial(t, j));
        if (t - j) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Row `m = table.len()` by the strong recursion.
///
/// With `alpha = alpha_{m-1,.}` and `d = 1 + alpha_{m-1,m}`:
///
/// - leading: `a_{m,m+1} = a_{m-1,m} / d`
/// - interior (`0 <= x <= m-2`, exponent `k = m-x`):
///   `a_{m,k} = (a_{m-1,k-1} - sum_{i=k-1}^{m-1} alpha_i a_{i,k}) / d`
/// - last (`x = m-1`, exponent 1):
///   `a_{m,1} = -(sum_{i=0}^{m-1} alpha_i a_{i,1}) / d`
pub fn next_row(table: &CoeffTable) -> Result<CoeffRow> {
    let m = table.len();
    let prev = table.row(m - 1).expect("table is never empty");

    // alpha_{m-1,j} for j = 0..=m, reused by every entry of the new row.
    let alphas: Vec<Rational> = (0..=m).map(|j| alpha_from_row(prev, j, table)).collect();

    let guard = Rational::one() + &alphas[m];
    if guard.is_zero() {
        return Err(Error::InvariantFailure(format!(
            "1 + alpha_{{{},{m}}} vanished while building row {m}",
            m - 1
        )));
    }
    let inv = guard.recip()?;

    let mut entries = vec![Rational::zero(); m + 1];

    // Exponent 1, offset x = m - 1: the all-alpha special case.
    let last: Rational = (0..m)
        .map(|i| &alphas[i] * table.rows[i].get(1).expect("every row has n^1"))
        .sum();
    entries[0] = -(last * &inv);

    // Interior exponents 2..=m, offsets 0..=m-2.
    for k in 2..=m {
        let mut acc = prev.get(k - 1).expect("k-1 in row m-1").clone();
        for i in (k - 1)..m {
            acc -= &alphas[i] * table.rows[i].get(k).expect("row i reaches n^k");
        }
        entries[k - 1] = acc * &inv;
    }

    entries[m] = prev.get(m).expect("leading of row m-1") * &inv;

    CoeffRow::new(m, entries)
}

/// Rows `0..=m_max`, each built by [`next_row`] from its predecessors.
pub fn build_table(m_max: usize) -> Result<CoeffTable> {
    let mut table = CoeffTable::new();
    table.extend_to(m_max)?;
    Ok(table)
}

fn check_offset(x: i64) -> Result<usize> {
    if x < -1 {
        return Err(Error::Precondition(format!("offset {x} is below -1")));
    }
    Ok((x + 1) as usize)
}

/// First term of the offset-`x` sequence: `a_{x+1,1} = C_x (x+1)! / (x+2)`.
pub fn condensed_base(x: i64, c_x: &Rational) -> Result<Rational> {
    let shifted = check_offset(x)?;
    let fact = Rational::from_integer(factorial(shifted));
    Ok(c_x * fact / Rational::from((x + 2) as i64))
}

/// One step along offset `x`:
/// `a_{m,m-x} = a_{m-1,m-1-x} m(m-x-1)/((m+1)(m-x)) + C_x m!/((m+1)(m-x)!)`.
///
/// `prev` is `a_{m-1,(m-1)-x}`; requires `m >= x + 2`.
pub fn condensed_step(prev: &Rational, m: usize, x: i64, c_x: &Rational) -> Result<Rational> {
    check_offset(x)?;
    let m_i = m as i64;
    if m_i < x + 2 {
        return Err(Error::Precondition(format!(
            "condensed step needs m >= x + 2 (m = {m}, x = {x}); use condensed_base"
        )));
    }
    let gap = (m_i - x) as usize;
    let mp1 = BigInt::from(m + 1);
    let carry = Rational::new(BigInt::from(m) * BigInt::from(gap - 1), &mp1 * BigInt::from(gap))?;
    let fresh = Rational::new(factorial(m), mp1 * factorial(gap))?;
    Ok(prev * carry + c_x * fresh)
}

/// `a_{m,m-x} = C_x m! / ((x+2) (m-x)!)` for `-1 <= x <= m-1`.
pub fn closed_coeff(m: usize, x: i64, c_x: &Rational) -> Result<Rational> {
    check_offset(x)?;
    if x > m as i64 - 1 {
        return Err(Error::Precondition(format!("offset {x} out of range for order {m}")));
    }
    let gap = (m as i64 - x) as usize;
    let w = Rational::new(factorial(m), BigInt::from(x + 2) * factorial(gap))?;
    Ok(c_x * w)
}

/// Walks the offset-`x` sequence from its base up to order `m_max`.
pub fn condensed_sequence(x: i64, c_x: &Rational, m_max: usize) -> Result<Vec<Rational>> {
    let start = check_offset(x)?;
    if m_max < start {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(m_max - start + 1);
    out.push(condensed_base(x, c_x)?);
    for m in start + 1..=m_max {
        let next = condensed_step(out.last().expect("seeded"), m, x, c_x)?;
        out.push(next);
    }
    Ok(out)
}

/// Is every `a_{k,k+1}` equal to `1/(k+1)`?
pub fn leading_is_reciprocal(table: &CoeffTable) -> bool {
    table
        .rows()
        .iter()
        .all(|row| row.leading() == &Rational::new(BigInt::one(), BigInt::from(row.order() + 1)).unwrap())
}
