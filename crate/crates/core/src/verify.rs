//! Cross-backend verification against the brute-force oracle.
//!
//! Every check compares exact values; a single inequality fails the run.
//! Checks are listed in a fixed order (the `D` recursions first, in
//! [`Backend`] order) and the report's first divergence is taken from the
//! first failing check.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coeffs::{build_table, closed_coeff, condensed_sequence};
use crate::combinatorics::Factorials;
use crate::error::{Error, Result};
use crate::exact::{PowerSumPoly, Rational};
use crate::faulhaber::{bernoulli_formula_poly, faulhaber_poly};
use crate::oracle::{brute_sum, oracle_coeffs, OracleRow};
use crate::sequence::{
    beta, beta_star, bernoulli_from_d, c_table, d_table, errata, Backend, BernoulliView, Reading, SeqKind, SeqTable,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_m: usize,
    pub max_x: i64,
    pub reading: Reading,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_m: 12, max_x: 25, reading: Reading::Corrected }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

/// Where a subject first disagreed with its reference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divergence {
    pub check: String,
    pub subject: String,
    pub reference: String,
    /// Name of the index variable (`x`, `m`, `n`).
    pub index_name: String,
    pub index: i64,
    pub value: Rational,
    pub expected: Rational,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub subject: String,
    pub reference: String,
    pub status: Status,
    /// Number of exact comparisons made.
    pub compared: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub divergence: Option<Divergence>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

/// Wall time spent producing one backend's `D` prefix. Not deterministic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BackendTiming {
    pub backend: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub max_m: usize,
    pub max_x: i64,
    pub paper_literal: bool,
    pub status: Status,
    pub checks: Vec<Check>,
    pub first_divergence: Option<Divergence>,
    /// Timing fields; excluded from determinism guarantees.
    pub timing: Vec<BackendTiming>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Comparison<'a> {
    name: &'a str,
    subject: String,
    reference: &'a str,
    index_name: &'a str,
    compared: usize,
    divergence: Option<Divergence>,
}

impl<'a> Comparison<'a> {
    fn new(name: &'a str, subject: impl Into<String>, reference: &'a str, index_name: &'a str) -> Self {
        Comparison { name, subject: subject.into(), reference, index_name, compared: 0, divergence: None }
    }

    fn compare(&mut self, index: i64, value: &Rational, expected: &Rational, detail: impl FnOnce() -> Option<String>) {
        self.compared += 1;
        if self.divergence.is_none() && value != expected {
            self.divergence = Some(Divergence {
                check: self.name.to_string(),
                subject: self.subject.clone(),
                reference: self.reference.to_string(),
                index_name: self.index_name.to_string(),
                index,
                value: value.clone(),
                expected: expected.clone(),
                detail: detail(),
            });
        }
    }

    fn eq(&mut self, index: i64, value: &Rational, expected: &Rational) {
        self.compare(index, value, expected, || None);
    }

    fn finish(self) -> Check {
        Check {
            name: self.name.to_string(),
            subject: self.subject,
            reference: self.reference.to_string(),
            status: if self.divergence.is_some() { Status::Fail } else { Status::Pass },
            compared: self.compared,
            divergence: self.divergence,
            error: None,
        }
    }

    fn failed_with(self, err: &Error) -> Check {
        let mut check = self.finish();
        check.status = Status::Fail;
        check.error = Some(err.to_string());
        check
    }
}

fn settle(cmp: Comparison<'_>, outcome: Result<()>) -> Check {
    match outcome {
        Ok(()) => cmp.finish(),
        Err(e) => cmp.failed_with(&e),
    }
}

fn subject_label(backend: Backend, reading: Reading) -> String {
    let has_literal = matches!(backend, Backend::LinearUnit | Backend::LinearEmpty | Backend::Nonlinear);
    if reading == Reading::PaperLiteral && has_literal {
        format!("{} (paper-literal)", backend.name())
    } else {
        backend.name().to_string()
    }
}

/// `D_{-1} ..= D_{x_max}` from one backend, using the printed recurrence when
/// `reading` is literal and the backend has one.
fn backend_d(backend: Backend, reading: Reading, x_max: i64) -> Result<SeqTable> {
    let literal: Option<fn(i64, &SeqTable) -> Result<Rational>> = match (backend, reading) {
        (Backend::LinearUnit, Reading::PaperLiteral) => Some(errata::d_linear_unit_literal),
        (Backend::LinearEmpty, Reading::PaperLiteral) => Some(errata::d_linear_empty_literal),
        (Backend::Nonlinear, Reading::PaperLiteral) => Some(errata::d_nonlinear_literal),
        _ => None,
    };
    match literal {
        None => d_table(backend, Reading::Corrected, x_max),
        Some(step) => {
            let mut table = SeqTable::seeded(SeqKind::D, backend);
            for x in 0..=x_max {
                let v = step(x, &table)?;
                table.push(v);
            }
            Ok(table)
        }
    }
}

/// Runs every check up to `max_m` (polynomial orders) and `max_x` (sequence indices).
pub fn verify(opts: &VerifyOptions) -> VerifyReport {
    let VerifyOptions { max_m, max_x, reading } = *opts;
    let literal = reading == Reading::PaperLiteral;
    let x_max = max_x.max(-1);

    // Oracle rows cover the triangle and D_{-1}..D_{x_max} (row x+1 per index).
    let oracle_top = max_m.max((x_max + 1).max(0) as usize);

    let (oracle_rows, backends) = std::thread::scope(|scope| {
        let oracle = scope.spawn(move || {
            let start = Instant::now();
            let rows = (0..=oracle_top).map(oracle_coeffs).collect::<Result<Vec<_>>>();
            (rows, start.elapsed().as_secs_f64())
        });
        let handles: Vec<_> = Backend::RECURSIONS
            .iter()
            .map(|&backend| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let table = backend_d(backend, reading, x_max);
                    (backend, table, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        let backends: Vec<_> = handles.into_iter().map(|h| h.join().expect("backend thread")).collect();
        (oracle.join().expect("oracle thread"), backends)
    });

    let mut timing: Vec<BackendTiming> = backends
        .iter()
        .map(|(b, _, secs)| BackendTiming { backend: b.name().to_string(), seconds: *secs })
        .collect();
    timing.push(BackendTiming { backend: Backend::Oracle.name().to_string(), seconds: oracle_rows.1 });

    let mut checks = Vec::new();
    let oracle_rows = match oracle_rows.0 {
        Ok(rows) => rows,
        Err(e) => {
            checks.push(Comparison::new("oracle", "oracle", "brute-sum", "m").failed_with(&e));
            return assemble(opts, literal, checks, timing);
        }
    };
    let oracle_d: Vec<Rational> = (-1..=x_max)
        .map(|x| if x == -1 { Rational::one() } else { oracle_rows[(x + 1) as usize].get(1) * Rational::from(x + 2) })
        .collect();
    let oracle_d = SeqTable::from_values(SeqKind::D, Backend::Oracle, oracle_d);

    // D recursions against the oracle.
    let mut unit_d = None;
    for (backend, table, _) in &backends {
        let name = format!("d-{}", backend.name());
        let mut cmp = Comparison::new(&name, subject_label(*backend, reading), "oracle", "x");
        let outcome = table.as_ref().map_err(Clone::clone).map(|t| {
            for (x, expected) in oracle_d.iter() {
                cmp.eq(x, t.get(x).expect("same range"), expected);
            }
        });
        checks.push(settle(cmp, outcome));
        if *backend == Backend::LinearUnit && !literal {
            unit_d = table.as_ref().ok().cloned();
        }
    }
    // Under the literal reading the downstream checks still run on corrected values.
    let unit_d = match unit_d {
        Some(t) => Ok(t),
        None => d_table(Backend::LinearUnit, Reading::Corrected, x_max.max(max_m as i64)),
    };

    checks.push(check_bernoulli(&oracle_rows, unit_d.as_ref(), x_max, reading));
    checks.push(check_c_scaling(x_max, unit_d.as_ref()));
    checks.extend(check_betas(x_max));
    checks.push(check_odd_vanishing(&oracle_d));
    checks.extend(check_triangles(max_m, &oracle_rows));
    checks.extend(check_normalization(max_m, &oracle_d, &oracle_rows));
    checks.extend(check_poly_sources(max_m, &oracle_rows));
    checks.push(check_telescoping(max_m.min(10)));
    checks.push(check_boundary_roots(max_m));
    checks.push(check_double_sum(max_m.min(6)));

    assemble(opts, literal, checks, timing)
}

fn assemble(opts: &VerifyOptions, literal: bool, checks: Vec<Check>, timing: Vec<BackendTiming>) -> VerifyReport {
    let first_divergence = checks.iter().find_map(|c| c.divergence.clone());
    let status = if checks.iter().any(|c| c.status == Status::Fail) { Status::Fail } else { Status::Pass };
    VerifyReport {
        max_m: opts.max_m,
        max_x: opts.max_x,
        paper_literal: literal,
        status,
        checks,
        first_divergence,
        timing,
    }
}

fn check_bernoulli(oracle_rows: &[OracleRow], unit_d: Result<&SeqTable, &Error>, x_max: i64, reading: Reading) -> Check {
    let n_max = (x_max + 1).max(0) as usize;
    let subject = match reading {
        Reading::Corrected => "B[n] = D[n-1]/(n+1)",
        Reading::PaperLiteral => "B[n] = (n+1) D[n-1] (paper-literal)",
    };
    let mut cmp = Comparison::new("bernoulli", subject, "oracle a[n,1]", "n");
    let outcome = unit_d.map_err(Clone::clone).and_then(|d| {
        let view: BernoulliView = bernoulli_from_d(d, n_max);
        for n in 0..=n_max {
            let got = match reading {
                Reading::Corrected => view.traditional(n).expect("length").clone(),
                Reading::PaperLiteral => errata::bernoulli_from_d_literal(n as i64, d)?,
            };
            cmp.eq(n as i64, &got, &oracle_rows[n].get(1));
        }
        Ok(())
    });
    settle(cmp, outcome)
}

fn check_c_scaling(x_max: i64, unit_d: Result<&SeqTable, &Error>) -> Check {
    let mut cmp = Comparison::new("c-d-scaling", "(x+1)! C[x], C nonlinear", "D unit", "x");
    let outcome = unit_d.map_err(Clone::clone).and_then(|d| {
        let c = c_table(Backend::Nonlinear, x_max)?;
        let mut fact = Factorials::new();
        for (x, cx) in c.iter() {
            cmp.eq(x, &(cx * fact.rational((x + 1) as usize)), d.get(x).expect("range"));
        }
        Ok(())
    });
    settle(cmp, outcome)
}

fn check_betas(x_max: i64) -> Vec<Check> {
    let mut transport = Comparison::new("beta-transport", "beta over C", "beta over D", "x");
    let mut star = Comparison::new("beta-star-identity", "beta*[x]", "beta[x] - C[x]/(x+2)", "x");
    let outcome = (|| -> Result<()> {
        let c = c_table(Backend::Nonlinear, x_max)?;
        let d = d_table(Backend::Nonlinear, Reading::Corrected, x_max)?;
        for x in 0..=x_max {
            let bc = beta(x, &c)?;
            transport.eq(x, &bc, &beta(x, &d)?);
            let expected = &bc - c.get(x).expect("range") / Rational::from(x + 2);
            star.eq(x, &beta_star(x, &c)?, &expected);
        }
        Ok(())
    })();
    match outcome {
        Ok(()) => vec![transport.finish(), star.finish()],
        Err(e) => vec![transport.failed_with(&e), star.failed_with(&e)],
    }
}

fn check_odd_vanishing(oracle_d: &SeqTable) -> Check {
    let mut cmp = Comparison::new("even-d-vanish", "D[x], even x >= 2", "zero", "x");
    for (x, v) in oracle_d.iter().filter(|(x, _)| *x >= 2 && x % 2 == 0) {
        cmp.eq(x, v, &Rational::zero());
    }
    cmp.finish()
}

fn compare_rows(cmp: &mut Comparison<'_>, m: usize, got: &[Rational], oracle: &OracleRow) {
    for (i, (g, e)) in got.iter().zip(oracle.nonconstant()).enumerate() {
        let k = i + 1;
        cmp.compare(m as i64, g, e, || Some(format!("exponent {k}")));
    }
}

fn check_triangles(max_m: usize, oracle_rows: &[OracleRow]) -> Vec<Check> {
    let mut strong = Comparison::new("triangle-strong", "strong recursion", "oracle", "m");
    let strong_outcome = build_table(max_m).map(|table| {
        for m in 0..=max_m {
            compare_rows(&mut strong, m, table.row(m).expect("built").nonconstant(), &oracle_rows[m]);
        }
    });

    let mut closed = Comparison::new("triangle-closed", "closed form, C nonlinear", "oracle", "m");
    let mut condensed = Comparison::new("triangle-condensed", "condensed recursion, C nonlinear", "oracle", "m");
    let c = c_table(Backend::Nonlinear, max_m as i64 - 1);
    let outcome = c.and_then(|c| {
        let mut closed_rows: Vec<Vec<Rational>> = (0..=max_m).map(|m| vec![Rational::zero(); m + 1]).collect();
        let mut condensed_rows = closed_rows.clone();
        for x in -1..max_m as i64 {
            let cx = c.get(x).expect("range");
            let walk = condensed_sequence(x, cx, max_m)?;
            let start = (x + 1) as usize;
            for m in start..=max_m {
                let slot = (m as i64 - x - 1) as usize;
                closed_rows[m][slot] = closed_coeff(m, x, cx)?;
                condensed_rows[m][slot] = walk[m - start].clone();
            }
        }
        for m in 0..=max_m {
            compare_rows(&mut closed, m, &closed_rows[m], &oracle_rows[m]);
            compare_rows(&mut condensed, m, &condensed_rows[m], &oracle_rows[m]);
        }
        Ok(())
    });
    vec![
        settle(strong, strong_outcome),
        settle(closed, outcome.clone()),
        settle(condensed, outcome),
    ]
}

/// `sum_x D_x m! sign / ((x+2)! (m-x)!)` for `1 <= m <= max_m`.
fn check_normalization(max_m: usize, oracle_d: &SeqTable, oracle_rows: &[OracleRow]) -> Vec<Check> {
    let mut unit = Comparison::new("normalization-unit", "sum at n = 1", "one", "m");
    let mut empty = Comparison::new("normalization-empty", "sum at n = -1", "zero", "m");
    let outcome = (|| -> Result<()> {
        // Extend the oracle prefix if the sequence range was shorter than the triangle.
        let d = if oracle_d.last_index() >= max_m as i64 - 1 {
            oracle_d.clone()
        } else {
            let values = (-1..max_m as i64)
                .map(|x| if x == -1 { Rational::one() } else { oracle_rows[(x + 1) as usize].get(1) * Rational::from(x + 2) })
                .collect();
            SeqTable::from_values(SeqKind::D, Backend::Oracle, values)
        };
        let mut fact = Factorials::new();
        for m in 1..=max_m {
            let mf = fact.rational(m);
            let mut plain = Rational::zero();
            let mut alt = Rational::zero();
            for x in -1..m as i64 {
                let gap = (m as i64 - x) as usize;
                let term = d.get(x).expect("range") * &mf / Rational::from_integer(fact.product((x + 2) as usize, gap));
                plain += &term;
                if gap % 2 == 0 {
                    alt += term;
                } else {
                    alt -= term;
                }
            }
            unit.eq(m as i64, &plain, &Rational::one());
            empty.eq(m as i64, &alt, &Rational::zero());
        }
        Ok(())
    })();
    match outcome {
        Ok(()) => vec![unit.finish(), empty.finish()],
        Err(e) => vec![unit.failed_with(&e), empty.failed_with(&e)],
    }
}

fn check_poly_sources(max_m: usize, oracle_rows: &[OracleRow]) -> Vec<Check> {
    let mut from_d = Comparison::new("poly-d", "faulhaber_poly, D unit", "oracle", "m");
    let mut from_b = Comparison::new("poly-bernoulli", "bernoulli_formula_poly, B unit", "oracle", "m");
    let outcome = (|| -> Result<()> {
        let d = d_table(Backend::LinearUnit, Reading::Corrected, max_m as i64 - 1)?;
        let b = bernoulli_from_d(&d, max_m);
        for m in 0..=max_m {
            let p: PowerSumPoly = faulhaber_poly(m, &d)?;
            compare_rows(&mut from_d, m, p.nonconstant(), &oracle_rows[m]);
            let q = bernoulli_formula_poly(m, &b)?;
            compare_rows(&mut from_b, m, q.nonconstant(), &oracle_rows[m]);
        }
        Ok(())
    })();
    match outcome {
        Ok(()) => vec![from_d.finish(), from_b.finish()],
        Err(e) => vec![from_d.failed_with(&e), from_b.failed_with(&e)],
    }
}

fn strong_polys(max_m: usize) -> Result<Vec<PowerSumPoly>> {
    let table = build_table(max_m)?;
    table.rows().iter().map(|r| r.to_poly()).collect()
}

/// `S_m(n) - S_m(n-1) = n^m` for `1 <= m <= max_m`, `1 <= n <= 50`.
fn check_telescoping(max_m: usize) -> Check {
    let mut cmp = Comparison::new("telescoping", "S_m(n) - S_m(n-1)", "n^m", "m");
    let outcome = strong_polys(max_m).map(|polys| {
        for (m, p) in polys.iter().enumerate().skip(1) {
            for n in 1..=50i64 {
                let n_r = Rational::from(n);
                let diff = p.eval(&n_r) - p.eval(&Rational::from(n - 1));
                cmp.compare(m as i64, &diff, &n_r.pow(m as u32), || Some(format!("n = {n}")));
            }
        }
    });
    settle(cmp, outcome)
}

/// `S_m(0) = 0`, `S_m(1) = 1` for all `m`, and `S_m(-1) = 0` for `m >= 1`.
fn check_boundary_roots(max_m: usize) -> Check {
    let mut cmp = Comparison::new("boundary-roots", "S_m(0), S_m(1), S_m(-1)", "0, 1, 0", "m");
    let outcome = strong_polys(max_m).map(|polys| {
        for (m, p) in polys.iter().enumerate() {
            let mi = m as i64;
            cmp.compare(mi, &p.eval(&Rational::zero()), &Rational::zero(), || Some("n = 0".into()));
            cmp.compare(mi, &p.eval(&Rational::one()), &Rational::one(), || Some("n = 1".into()));
            if m >= 1 {
                cmp.compare(mi, &p.eval(&Rational::from(-1)), &Rational::zero(), || Some("n = -1".into()));
            }
        }
    });
    settle(cmp, outcome)
}

/// `sum i^m = n S_{m-1}(n) - sum_{i=1}^{n} S_{m-1}(i-1)` for `1 <= m <= max_m`, `n <= 30`.
fn check_double_sum(max_m: usize) -> Check {
    let mut cmp = Comparison::new("double-sum-recurrence", "n S_{m-1}(n) - sum S_{m-1}(i-1)", "brute sum", "m");
    let outcome = strong_polys(max_m.saturating_sub(1)).map(|polys| {
        for m in 1..=max_m {
            let prev = &polys[m - 1];
            for n in 0..=30u64 {
                let n_r = Rational::from(n as i64);
                let inner: Rational = (1..=n).map(|i| prev.eval(&Rational::from(i as i64 - 1))).sum();
                let rhs = &n_r * prev.eval(&n_r) - inner;
                let brute = Rational::from_integer(brute_sum(m as u32, n));
                cmp.compare(m as i64, &rhs, &brute, || Some(format!("n = {n}")));
            }
        }
    });
    settle(cmp, outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_corrected_run_passes() {
        let report = verify(&VerifyOptions { max_m: 5, max_x: 6, reading: Reading::Corrected });
        for c in &report.checks {
            assert_eq!(c.status, Status::Pass, "{c:?}");
            assert!(c.compared > 0 || c.name == "even-d-vanish", "{} compared nothing", c.name);
        }
        assert!(report.passed());
        assert!(report.first_divergence.is_none());
        assert_eq!(report.timing.len(), 5);
    }

    #[test]
    fn literal_run_names_unit_backend_at_zero() {
        let report = verify(&VerifyOptions { max_m: 4, max_x: 5, reading: Reading::PaperLiteral });
        assert_eq!(report.status, Status::Fail);
        let first = report.first_divergence.as_ref().unwrap();
        assert_eq!(first.check, "d-unit");
        assert_eq!(first.index, 0);
        assert_eq!(first.value, Rational::new(1, 2).unwrap());
        assert_eq!(first.expected, Rational::one());

        let empty = report.check("d-empty").unwrap().divergence.as_ref().unwrap();
        assert_eq!(empty.index, 0);
        let nonlinear = report.check("d-nonlinear").unwrap().divergence.as_ref().unwrap();
        assert_eq!(nonlinear.index, 1);
        assert_eq!(report.check("d-strong").unwrap().status, Status::Pass);
        let b = report.check("bernoulli").unwrap().divergence.as_ref().unwrap();
        assert_eq!((b.index, b.value.clone()), (1, Rational::from(2)));
        // Everything downstream of the corrected values still holds.
        assert_eq!(report.check("triangle-strong").unwrap().status, Status::Pass);
    }

    #[test]
    fn degenerate_ranges() {
        let report = verify(&VerifyOptions { max_m: 0, max_x: -1, reading: Reading::Corrected });
        assert!(report.passed(), "{report:?}");
    }
}
