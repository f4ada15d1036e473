//! Cross-module invariants over the full ranges the engines promise.

use powersum::coeffs::{alpha, build_table, closed_coeff, condensed_step};
use powersum::combinatorics::factorial;
use powersum::faulhaber::{bernoulli_formula_poly, faulhaber_poly, FaulhaberSpec, PolySource};
use powersum::oracle::{brute_sum, oracle_coeffs, oracle_d};
use powersum::sequence::{
    bernoulli, beta, beta_star, c_table, d_table, Backend, Reading, SequenceGenerator,
};
use powersum::Rational;

#[test]
fn strong_table_matches_oracle() {
    let table = build_table(12).unwrap();
    for m in 0..=12 {
        let oracle = oracle_coeffs(m).unwrap();
        assert_eq!(table.row(m).unwrap().nonconstant(), oracle.nonconstant(), "row {m}");
    }
}

#[test]
fn alpha_leading_is_positive_so_guard_never_fires() {
    let table = build_table(12).unwrap();
    for k in 0..=12 {
        let lead = alpha(k, k + 1, &table).unwrap();
        assert_eq!(&lead, table.row(k).unwrap().leading());
        assert!(lead.is_positive());
    }
}

#[test]
fn closed_and_condensed_agree_with_strong() {
    let table = build_table(12).unwrap();
    let c = c_table(Backend::Nonlinear, 11).unwrap();
    for m in 0..=12usize {
        for x in -1..m as i64 {
            let cx = c.get(x).unwrap();
            let strong = table.row(m).unwrap().by_offset(x).unwrap();
            assert_eq!(&closed_coeff(m, x, cx).unwrap(), strong, "m={m} x={x}");
            if m as i64 >= x + 2 {
                let prev = closed_coeff(m - 1, x, cx).unwrap();
                assert_eq!(condensed_step(&prev, m, x, cx).unwrap(), closed_coeff(m, x, cx).unwrap());
            }
        }
    }
}

#[test]
fn every_backend_matches_oracle_through_25() {
    let reference: Vec<_> = (-1..=25).map(|x| oracle_d(x).unwrap()).collect();
    for backend in Backend::RECURSIONS {
        let d = d_table(backend, Reading::Corrected, 25).unwrap();
        assert_eq!(d.values(), &reference[..], "{backend}");
    }
}

#[test]
fn c_d_scaling_and_beta_identities() {
    let c = c_table(Backend::Nonlinear, 25).unwrap();
    let d = d_table(Backend::Nonlinear, Reading::Corrected, 25).unwrap();
    assert_eq!(c.get(-1), Some(&Rational::one()));
    for x in -1..=25i64 {
        let scaled = c.get(x).unwrap() * Rational::from_integer(factorial((x + 1) as usize));
        assert_eq!(&scaled, d.get(x).unwrap(), "x={x}");
    }
    for x in 0..=25i64 {
        let b = beta(x, &c).unwrap();
        assert_eq!(b, beta(x, &d).unwrap(), "beta_{x}");
        let star = beta_star(x, &c).unwrap();
        assert_eq!(star, &b - c.get(x).unwrap() / Rational::from(x + 2), "beta*_{x}");
        assert_eq!(star, beta_star(x, &d).unwrap());
    }
}

#[test]
fn c_derived_from_linear_backend_matches_native() {
    assert_eq!(
        c_table(Backend::LinearUnit, 20).unwrap().values(),
        c_table(Backend::Nonlinear, 20).unwrap().values()
    );
}

#[test]
fn even_d_vanish() {
    let d = d_table(Backend::LinearUnit, Reading::Corrected, 24).unwrap();
    for x in (2..=24).step_by(2) {
        assert!(d.get(x).unwrap().is_zero(), "D_{x}");
    }
    assert!(!d.get(1).unwrap().is_zero());
}

#[test]
fn poly_sources_agree() {
    let d = d_table(Backend::LinearEmpty, Reading::Corrected, 11).unwrap();
    let b = bernoulli(12, Backend::Nonlinear).unwrap();
    let table = build_table(12).unwrap();
    for m in 0..=12 {
        let from_d = faulhaber_poly(m, &d).unwrap();
        assert_eq!(from_d, bernoulli_formula_poly(m, &b).unwrap(), "m={m}");
        assert_eq!(from_d, table.row(m).unwrap().to_poly().unwrap(), "m={m}");
        for source in PolySource::ALL {
            assert_eq!(FaulhaberSpec::new(m, source).build().unwrap(), from_d);
        }
    }
}

#[test]
fn integer_sums_are_integers() {
    for m in 0..=12 {
        let p = FaulhaberSpec::new(m, PolySource::StrongTable).build().unwrap();
        let mut running = num_bigint::BigInt::default();
        for n in 0..=200u64 {
            if n > 0 {
                running += num_traits::pow(num_bigint::BigInt::from(n), m);
            }
            let v = p.eval(&Rational::from(n as i64));
            assert!(v.is_integer(), "S_{m}({n}) = {v}");
            assert_eq!(v, Rational::from_integer(running.clone()));
        }
    }
}

#[test]
fn oracle_holdout_and_larger_rows() {
    for m in [0, 5, 13, 20] {
        let row = oracle_coeffs(m).unwrap();
        let extra = row.holdout + 3;
        assert_eq!(row.eval(&Rational::from(extra as i64)), Rational::from_integer(brute_sum(m as u32, extra)));
    }
}

#[test]
fn generator_extends_incrementally() {
    let mut g = SequenceGenerator::d(Backend::LinearEmpty);
    g.extend_to(10).unwrap();
    let first: Vec<_> = g.table().values().to_vec();
    g.extend_to(20).unwrap();
    assert_eq!(&g.table().values()[..first.len()], &first[..]);
    assert_eq!(g.get(20).unwrap(), oracle_d(20).unwrap());
}
