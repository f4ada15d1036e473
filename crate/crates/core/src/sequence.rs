//! The per-offset constants `C_x`, their rescaling `D_x = (x+1)! C_x`, the
//! auxiliaries `beta_x` / `beta*_x`, and conversion to Bernoulli numbers.
//!
//! `C` and `D` are indexed from `-1`; `beta` and `beta*` from `0`. Every
//! public function takes and returns these indices directly; the `+1` shift
//! into storage stays inside [`SeqTable`].
//!
//! `D` has four independent backends that must agree exactly:
//!
//! | backend          | source                                                  |
//! |------------------|---------------------------------------------------------|
//! | `Nonlinear`      | convolution with the `beta` auxiliaries                 |
//! | `LinearUnit`     | `S_m(1) = 1` solved for the last term                   |
//! | `LinearEmpty`    | `S_m(-1) = 0` solved for the last term                  |
//! | `StrongExtract`  | `D_x = (x+2) a_{x+1,1}` from the strong triangle         |
//!
//! The printed forms of the first three drop a normalizing factor; the
//! faithful transcriptions live in [`errata`] and are selected with
//! [`Reading::PaperLiteral`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coeffs::CoeffTable;
use crate::combinatorics::{factorial, Factorials};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::oracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeqKind {
    C,
    D,
    Beta,
    BetaStar,
}

impl SeqKind {
    pub fn name(self) -> &'static str {
        match self {
            SeqKind::C => "C",
            SeqKind::D => "D",
            SeqKind::Beta => "beta",
            SeqKind::BetaStar => "beta*",
        }
    }

    /// Sequence index of the first stored value.
    pub fn first_index(self) -> i64 {
        match self {
            SeqKind::C | SeqKind::D => -1,
            SeqKind::Beta | SeqKind::BetaStar => 0,
        }
    }
}

/// How a sequence was computed. Declaration order is the canonical report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    LinearUnit,
    LinearEmpty,
    Nonlinear,
    StrongExtract,
    Oracle,
}

impl Backend {
    /// The four recursion backends (the oracle excluded).
    pub const RECURSIONS: [Backend; 4] = [
        Backend::LinearUnit,
        Backend::LinearEmpty,
        Backend::Nonlinear,
        Backend::StrongExtract,
    ];

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Backend::Nonlinear => "nonlinear",
            Backend::LinearUnit => "unit",
            Backend::LinearEmpty => "empty",
            Backend::StrongExtract => "strong",
            Backend::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nonlinear" => Ok(Backend::Nonlinear),
            "unit" => Ok(Backend::LinearUnit),
            "empty" => Ok(Backend::LinearEmpty),
            "strong" => Ok(Backend::StrongExtract),
            "oracle" => Ok(Backend::Oracle),
            other => Err(Error::UnknownBackend(other.to_string())),
        }
    }
}

/// Whether the `D` recursions and the Bernoulli conversion use the
/// oracle-consistent normalization or the printed one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    #[default]
    Corrected,
    PaperLiteral,
}

/// A prefix of one sequence, stored from its first index onwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqTable {
    kind: SeqKind,
    backend: Backend,
    values: Vec<Rational>,
}

impl SeqTable {
    pub fn new(kind: SeqKind, backend: Backend) -> Self {
        SeqTable { kind, backend, values: Vec::new() }
    }

    /// A `C` or `D` table holding only the seed value `1` at index `-1`.
    pub fn seeded(kind: SeqKind, backend: Backend) -> Self {
        let mut t = Self::new(kind, backend);
        if matches!(kind, SeqKind::C | SeqKind::D) {
            t.values.push(Rational::one());
        }
        t
    }

    /// Wraps values starting at the kind's first index.
    pub fn from_values(kind: SeqKind, backend: Backend, values: Vec<Rational>) -> Self {
        SeqTable { kind, backend, values }
    }

    pub fn kind(&self) -> SeqKind {
        self.kind
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn first_index(&self) -> i64 {
        self.kind.first_index()
    }

    /// Index of the last stored value (`first_index - 1` when empty).
    pub fn last_index(&self) -> i64 {
        self.first_index() + self.values.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, index: i64) -> Option<&Rational> {
        let slot = index - self.first_index();
        if slot < 0 {
            None
        } else {
            self.values.get(slot as usize)
        }
    }

    pub fn push(&mut self, value: Rational) {
        self.values.push(value);
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `(index, value)` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        let first = self.first_index();
        self.values.iter().enumerate().map(move |(i, v)| (first + i as i64, v))
    }

    fn require(&self, need: i64) -> Result<()> {
        if self.last_index() < need {
            return Err(Error::InsufficientPrefix {
                kind: self.kind.name(),
                have: self.last_index(),
                need,
            });
        }
        Ok(())
    }

    fn at(&self, index: i64) -> &Rational {
        self.get(index).expect("prefix length checked")
    }
}

fn convolution_weight(kind: SeqKind, j: i64) -> Result<Rational> {
    let shifted = (j + 2) as usize;
    match kind {
        SeqKind::C => Ok(Rational::new(1, shifted as i64)?),
        SeqKind::D => Ok(Rational::new(1, factorial(shifted))?),
        other => Err(Error::WrongKind { expected: "C or D", got: other.name() }),
    }
}

fn expect_kind(table: &SeqTable, kind: SeqKind) -> Result<()> {
    if table.kind != kind {
        return Err(Error::WrongKind { expected: kind.name(), got: table.kind.name() });
    }
    Ok(())
}

/// Shared body of `beta_x` / `beta*_x`: the alternating sum over `j = -1..=upper`
/// of `V_j w(j) (-1)^(x-j) / (x-j)!`, with `w(j) = 1/(j+2)` for `C` and
/// `1/(j+2)!` for `D`.
fn alternating_sum(x: i64, upper: i64, prefix: &SeqTable) -> Result<Rational> {
    let mut acc = Rational::zero();
    for j in -1..=upper {
        let gap = (x - j) as usize;
        let term = prefix.at(j) * convolution_weight(prefix.kind, j)? / Rational::from_integer(factorial(gap));
        if gap % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `beta_x = sum_{j=-1}^{x} C_j (-1)^(x-j) / ((j+2) (x-j)!)`.
///
/// Accepts a `C` prefix or the paired `D` prefix; both give the same value.
pub fn beta(x: i64, prefix: &SeqTable) -> Result<Rational> {
    if x < 0 {
        return Err(Error::Precondition(format!("beta is indexed from 0, got {x}")));
    }
    convolution_weight(prefix.kind, -1)?;
    prefix.require(x)?;
    alternating_sum(x, x, prefix)
}

/// `beta*_x`: `beta_x` without its final `C_x` term.
pub fn beta_star(x: i64, prefix: &SeqTable) -> Result<Rational> {
    if x < 0 {
        return Err(Error::Precondition(format!("beta* is indexed from 0, got {x}")));
    }
    convolution_weight(prefix.kind, -1)?;
    prefix.require(x - 1)?;
    alternating_sum(x, x - 1, prefix)
}

/// `sum_{j=0}^{x-1} V_j w(j) beta_{x-1-j} + V_{-1} w(-1) beta*_x`.
fn nonlinear_bracket(x: i64, prefix: &SeqTable, betas: &[Rational]) -> Result<Rational> {
    let mut acc = Rational::zero();
    for j in 0..x {
        let b = &betas[(x - 1 - j) as usize];
        acc += prefix.at(j) * convolution_weight(prefix.kind, j)? * b;
    }
    acc += prefix.at(-1) * beta_star(x, prefix)?;
    Ok(acc)
}

fn betas_upto(last: i64, prefix: &SeqTable) -> Result<Vec<Rational>> {
    (0..=last).map(|k| beta(k, prefix)).collect()
}

/// Next `C` value after the given prefix:
/// `C_x = -[ C_{x-1}/(x+1) beta_0 + ... + C_0/2 beta_{x-1} + C_{-1} beta*_x ]`.
pub fn c_next(c_prefix: &SeqTable) -> Result<Rational> {
    expect_kind(c_prefix, SeqKind::C)?;
    let x = c_prefix.last_index() + 1;
    if x < 0 {
        return Err(Error::InsufficientPrefix { kind: "C", have: c_prefix.last_index(), need: -1 });
    }
    let betas = betas_upto(x - 1, c_prefix)?;
    Ok(-nonlinear_bracket(x, c_prefix, &betas)?)
}

fn check_d_request(x: i64, d_prefix: &SeqTable) -> Result<Option<Rational>> {
    expect_kind(d_prefix, SeqKind::D)?;
    if x < -1 {
        return Err(Error::Precondition(format!("D is indexed from -1, got {x}")));
    }
    if x == -1 {
        return Ok(Some(Rational::one()));
    }
    d_prefix.require(x - 1)?;
    Ok(None)
}

/// `D_x = -(x+1)! [ D_{x-1}/(x+1)! beta_0 + ... + D_{-1}/1! beta*_x ]`.
pub fn d_nonlinear(x: i64, d_prefix: &SeqTable) -> Result<Rational> {
    if let Some(seed) = check_d_request(x, d_prefix)? {
        return Ok(seed);
    }
    let betas = betas_upto(x - 1, d_prefix)?;
    let bracket = nonlinear_bracket(x, d_prefix, &betas)?;
    Ok(-(bracket * Rational::from_integer(factorial((x + 1) as usize))))
}

/// `sum_{j=-1}^{x-1} D_j sign(j) / ((j+2)! (x+1-j)!)`, the lower part of the
/// `S_{x+1}(±1)` expansion.
fn linear_sum(x: i64, d_prefix: &SeqTable, alternating: bool, fact: &mut Factorials) -> Rational {
    let mut acc = Rational::zero();
    for j in -1..x {
        let den = fact.product((j + 2) as usize, (x + 1 - j) as usize);
        let term = d_prefix.at(j) / Rational::from_integer(den);
        if alternating && (x + 1 - j) % 2 != 0 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    acc
}

/// `D_x = (x+2) (1 - (x+1)! [ D_{-1}/(1!(x+2)!) + ... + D_{x-1}/((x+1)! 2!) ])`.
pub fn d_linear_unit(x: i64, d_prefix: &SeqTable) -> Result<Rational> {
    if let Some(seed) = check_d_request(x, d_prefix)? {
        return Ok(seed);
    }
    Ok(linear_unit_core(x, d_prefix, Reading::Corrected, &mut Factorials::new()))
}

/// `D_x = (x+2) (x+1)! [ D_{-1}(-1)^(x+2)/(1!(x+2)!) + ... + D_{x-1}(-1)^2/((x+1)! 2!) ]`.
pub fn d_linear_empty(x: i64, d_prefix: &SeqTable) -> Result<Rational> {
    if let Some(seed) = check_d_request(x, d_prefix)? {
        return Ok(seed);
    }
    Ok(linear_empty_core(x, d_prefix, Reading::Corrected, &mut Factorials::new()))
}

fn linear_unit_core(x: i64, d: &SeqTable, reading: Reading, fact: &mut Factorials) -> Rational {
    let inner = Rational::one() - fact.rational((x + 1) as usize) * linear_sum(x, d, false, fact);
    match reading {
        Reading::Corrected => inner * Rational::from(x + 2),
        Reading::PaperLiteral => inner,
    }
}

fn linear_empty_core(x: i64, d: &SeqTable, reading: Reading, fact: &mut Factorials) -> Rational {
    let inner = fact.rational((x + 1) as usize) * linear_sum(x, d, true, fact);
    match reading {
        Reading::Corrected => inner * Rational::from(x + 2),
        Reading::PaperLiteral => inner,
    }
}

/// `D_x = (x+2) a_{x+1,1}` read from the strong-recursion triangle.
pub fn d_from_strong(x: i64, table: &CoeffTable) -> Result<Rational> {
    if x < -1 {
        return Err(Error::Precondition(format!("D is indexed from -1, got {x}")));
    }
    let m = (x + 1) as usize;
    let a = table.row(m).ok_or(Error::MissingRow(m))?.get(1).expect("n^1 present").clone();
    Ok(a * Rational::from(x + 2))
}

/// Printed transcriptions of the `D` recursions and the Bernoulli
/// conversion, without the factors the oracle requires. They exist to
/// reproduce the discrepancies and are expected to fail verification.
pub mod errata {
    use super::*;

    /// `D_x = -[ D_{x-1}/(x+1)! beta_0 + ... + D_{-1}/1! beta*_x ]` (equals `C_x`).
    pub fn d_nonlinear_literal(x: i64, d_prefix: &SeqTable) -> Result<Rational> {
        if let Some(seed) = check_d_request(x, d_prefix)? {
            return Ok(seed);
        }
        let betas = betas_upto(x - 1, d_prefix)?;
        Ok(-nonlinear_bracket(x, d_prefix, &betas)?)
    }

    /// `D_x = 1 - (x+1)! [ ... ]`, missing the `(x+2)` factor.
    pub fn d_linear_unit_literal(x: i64, d_prefix: &SeqTable) -> Result<Rational> {
        if let Some(seed) = check_d_request(x, d_prefix)? {
            return Ok(seed);
        }
        Ok(linear_unit_core(x, d_prefix, Reading::PaperLiteral, &mut Factorials::new()))
    }

    /// `D_x = (x+1)! [ ... ]`, missing the `(x+2)` factor.
    pub fn d_linear_empty_literal(x: i64, d_prefix: &SeqTable) -> Result<Rational> {
        if let Some(seed) = check_d_request(x, d_prefix)? {
            return Ok(seed);
        }
        Ok(linear_empty_core(x, d_prefix, Reading::PaperLiteral, &mut Factorials::new()))
    }

    /// `B_n = (n+1) D_{n-1}` as printed, for `n >= 0`.
    pub fn bernoulli_from_d_literal(n: i64, d_prefix: &SeqTable) -> Result<Rational> {
        expect_kind(d_prefix, SeqKind::D)?;
        d_prefix.require(n - 1)?;
        Ok(d_prefix.at(n - 1) * Rational::from(n + 1))
    }
}

/// Incremental, memoized generator for one sequence under one backend.
///
/// `D` is available from every backend. `C` is produced natively by the
/// nonlinear backend and by rescaling `D` for the others.
#[derive(Clone, Debug)]
pub struct SequenceGenerator {
    kind: SeqKind,
    backend: Backend,
    reading: Reading,
    seq: SeqTable,
    // Shadow D prefix when a C table is derived from a linear backend.
    d_shadow: Option<SeqTable>,
    betas: Vec<Rational>,
    strong: Option<CoeffTable>,
    fact: Factorials,
}

impl SequenceGenerator {
    pub fn new(kind: SeqKind, backend: Backend, reading: Reading) -> Result<Self> {
        if !matches!(kind, SeqKind::C | SeqKind::D) {
            return Err(Error::WrongKind { expected: "C or D", got: kind.name() });
        }
        let d_shadow = (kind == SeqKind::C && backend != Backend::Nonlinear)
            .then(|| SeqTable::seeded(SeqKind::D, backend));
        Ok(SequenceGenerator {
            kind,
            backend,
            reading,
            seq: SeqTable::seeded(kind, backend),
            d_shadow,
            betas: Vec::new(),
            strong: (backend == Backend::StrongExtract).then(CoeffTable::new),
            fact: Factorials::new(),
        })
    }

    pub fn d(backend: Backend) -> Self {
        Self::new(SeqKind::D, backend, Reading::Corrected).expect("D is always supported")
    }

    pub fn c(backend: Backend) -> Self {
        Self::new(SeqKind::C, backend, Reading::Corrected).expect("C is always supported")
    }

    pub fn table(&self) -> &SeqTable {
        &self.seq
    }

    pub fn into_table(self) -> SeqTable {
        self.seq
    }

    pub fn last_index(&self) -> i64 {
        self.seq.last_index()
    }

    /// Cached `beta_0 ..` computed so far (nonlinear backend only).
    pub fn cached_betas(&self) -> &[Rational] {
        &self.betas
    }

    /// Computes and appends the next value, returning it.
    pub fn next_value(&mut self) -> Result<Rational> {
        let x = self.seq.last_index() + 1;
        let value = if let Some(mut shadow) = self.d_shadow.take() {
            let d = self.d_value(x, &shadow);
            if let Ok(d) = &d {
                shadow.push(d.clone());
            }
            self.d_shadow = Some(shadow);
            d? / self.fact.rational((x + 1) as usize)
        } else {
            // Detach the prefix so the backend can borrow the caches mutably.
            let prefix = std::mem::replace(&mut self.seq, SeqTable::new(self.kind, self.backend));
            let value = match self.kind {
                SeqKind::C => self.nonlinear_value(x, &prefix),
                _ => self.d_value(x, &prefix),
            };
            self.seq = prefix;
            value?
        };
        self.seq.push(value.clone());
        Ok(value)
    }

    fn nonlinear_value(&mut self, x: i64, prefix: &SeqTable) -> Result<Rational> {
        while (self.betas.len() as i64) < x {
            let k = self.betas.len() as i64;
            self.betas.push(beta(k, prefix)?);
        }
        let bracket = nonlinear_bracket(x, prefix, &self.betas)?;
        Ok(match (prefix.kind, self.reading) {
            (SeqKind::D, Reading::Corrected) => -(bracket * self.fact.rational((x + 1) as usize)),
            _ => -bracket,
        })
    }

    fn d_value(&mut self, x: i64, prefix: &SeqTable) -> Result<Rational> {
        match self.backend {
            Backend::Nonlinear => self.nonlinear_value(x, prefix),
            Backend::LinearUnit => Ok(linear_unit_core(x, prefix, self.reading, &mut self.fact)),
            Backend::LinearEmpty => Ok(linear_empty_core(x, prefix, self.reading, &mut self.fact)),
            Backend::StrongExtract => {
                let table = self.strong.as_mut().expect("strong backend owns a table");
                table.extend_to((x + 1) as usize)?;
                d_from_strong(x, table)
            }
            Backend::Oracle => oracle::oracle_d(x),
        }
    }

    pub fn extend_to(&mut self, x_max: i64) -> Result<&SeqTable> {
        while self.seq.last_index() < x_max {
            self.next_value()?;
        }
        Ok(&self.seq)
    }

    /// Value at `x`, extending the cache as needed.
    pub fn get(&mut self, x: i64) -> Result<Rational> {
        if x < self.seq.first_index() {
            return Err(Error::Precondition(format!("{} is indexed from -1, got {x}", self.kind.name())));
        }
        self.extend_to(x)?;
        Ok(self.seq.at(x).clone())
    }
}

/// `D_{-1} ..= D_{x_max}` from one backend.
pub fn d_table(backend: Backend, reading: Reading, x_max: i64) -> Result<SeqTable> {
    let mut generator = SequenceGenerator::new(SeqKind::D, backend, reading)?;
    generator.extend_to(x_max)?;
    Ok(generator.into_table())
}

/// `C_{-1} ..= C_{x_max}` from one backend.
pub fn c_table(backend: Backend, x_max: i64) -> Result<SeqTable> {
    let mut generator = SequenceGenerator::c(backend);
    generator.extend_to(x_max)?;
    Ok(generator.into_table())
}

/// `beta_0 ..= beta_{x_max}` (or `beta*`) over a `C` or `D` prefix.
pub fn beta_table(kind: SeqKind, x_max: i64, prefix: &SeqTable) -> Result<SeqTable> {
    let f = match kind {
        SeqKind::Beta => beta,
        SeqKind::BetaStar => beta_star,
        other => return Err(Error::WrongKind { expected: "beta or beta*", got: other.name() }),
    };
    let values = (0..=x_max).map(|x| f(x, prefix)).collect::<Result<Vec<_>>>()?;
    Ok(SeqTable::from_values(kind, prefix.backend, values))
}

/// `C_x = D_x / (x+1)!` across a whole table.
pub fn c_from_d(d: &SeqTable) -> Result<SeqTable> {
    expect_kind(d, SeqKind::D)?;
    let mut fact = Factorials::new();
    let values = d.iter().map(|(x, v)| v / fact.rational((x + 1) as usize)).collect();
    Ok(SeqTable::from_values(SeqKind::C, d.backend, values))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Indexing {
    #[default]
    FromZero,
    FromMinusOne,
}

impl Indexing {
    pub fn first_index(self) -> i64 {
        match self {
            Indexing::FromZero => 0,
            Indexing::FromMinusOne => -1,
        }
    }
}

/// Bernoulli numbers `B_0, B_1 = +1/2, B_2, ...` under a chosen indexing.
///
/// Under [`Indexing::FromMinusOne`] the same list is shifted so index `-1`
/// holds `B_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliView {
    pub indexing: Indexing,
    pub backend: Backend,
    values: Vec<Rational>,
}

impl BernoulliView {
    pub fn new(indexing: Indexing, backend: Backend, values: Vec<Rational>) -> Self {
        BernoulliView { indexing, backend, values }
    }

    pub fn first_index(&self) -> i64 {
        self.indexing.first_index()
    }

    pub fn last_index(&self) -> i64 {
        self.first_index() + self.values.len() as i64 - 1
    }

    pub fn get(&self, index: i64) -> Option<&Rational> {
        let slot = index - self.first_index();
        if slot < 0 {
            None
        } else {
            self.values.get(slot as usize)
        }
    }

    /// `B_k` in the traditional from-zero numbering, whatever the view's indexing.
    pub fn traditional(&self, k: usize) -> Option<&Rational> {
        self.values.get(k)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        let first = self.first_index();
        self.values.iter().enumerate().map(move |(i, v)| (first + i as i64, v))
    }

    pub fn reindexed(&self, indexing: Indexing) -> Self {
        BernoulliView { indexing, backend: self.backend, values: self.values.clone() }
    }
}

/// `B_0 ..= B_{n_max}` (from-zero indexing) via `B_{x+1} = D_x / (x+2)`.
pub fn bernoulli(n_max: usize, backend: Backend) -> Result<BernoulliView> {
    let d = d_table(backend, Reading::Corrected, n_max as i64 - 1)?;
    Ok(bernoulli_from_d(&d, n_max))
}

/// Converts a `D` prefix (through `D_{n_max-1}`) into Bernoulli numbers.
pub fn bernoulli_from_d(d: &SeqTable, n_max: usize) -> BernoulliView {
    let values = (-1..n_max as i64)
        .map(|x| d.at(x) / Rational::from(x + 2))
        .collect();
    BernoulliView::new(Indexing::FromZero, d.backend, values)
}
