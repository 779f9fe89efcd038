//! Acceptance suite: the eleven contract-level checks for the engine and the
//! binary, one test per criterion, every equality exact.

use std::process::Command;

use kzrat_core::cover::{
    lift_chain, lift_dumbbell, lift_edge, lmo_theta2, lmo_theta3, CoverParams,
};
use kzrat_core::diagram::{ChainPart, WheelPart};
use kzrat_core::exact::scalar::{rat, rat_int, rat_pow};
use kzrat_core::glue::{bracket_to_chain, pair_wheels_theta2};
use kzrat_core::pipeline::rational::{
    fractional_residual, fractional_residual_closed_form, verify_closed_normalization, z1_rational,
    z2_rational, z3_rational, RationalChain, RationalDumbbell,
};
use kzrat_core::pipeline::{torus_invariant, unwheel_assemble, TorusParams};
use kzrat_core::series::{hair_expand, TruncatedSeries};
use kzrat_core::verify::{sweep_pairs, sweep_triples};
use kzrat_core::wheels::{c_series, f_series, HyperbolicForm};

fn params(p: i64, q: i64, cap: i64) -> TorusParams {
    TorusParams::new(p, q, cap).unwrap()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

const PAIRS: [(i64, i64); 4] = [(2, 3), (2, 5), (3, 4), (3, 5)];

#[test]
fn wheel_series_matches_the_exponential_oracle() {
    let f = f_series(12);
    assert_eq!(f.coef(&[("x", 2)]), rat(1, 48));
    assert_eq!(f.coef(&[("x", 4)]), rat(-1, 5760));

    // Termwise exponentiation of 2f, using only multiplication.
    let double = f.scalar_mul(&rat_int(2));
    let mut exp = TruncatedSeries::monomial(&["x"], &[0], rat_int(1));
    let mut power = exp.clone();
    let mut factorial = rat_int(1);
    for j in 1..=12i64 {
        power = power.mul(&double).unwrap();
        factorial *= rat_int(j);
        exp = exp.add(&power.scalar_mul(&factorial.recip()));
    }

    // exp(2f) must be sinh(x/2)/(x/2): coefficient of x^{2k} is 1/(4^k (2k+1)!).
    let mut sinhc = TruncatedSeries::zero(&["x"], 12);
    for k in 0..=6i64 {
        let mut odd_factorial = rat_int(1);
        for j in 2..=(2 * k + 1) {
            odd_factorial *= rat_int(j);
        }
        let c = rat_pow(&rat(1, 4), k) * odd_factorial.recip();
        sinhc = sinhc.add(&TruncatedSeries::monomial(&["x"], &[2 * k], c));
    }
    assert_eq!(exp, sinhc);
}

#[test]
fn one_loop_part_is_half_log_of_the_alexander_polynomial() {
    for (p, q) in PAIRS {
        let d = z1_rational(&params(p, q, 12)).unwrap();
        let lhs = c_series(p, q, 12).sub(&f_series(12));
        let rhs = hair_expand(&d, "x", 12)
            .unwrap()
            .log()
            .unwrap()
            .scalar_mul(&rat(-1, 2));
        assert_eq!(lhs, rhs, "({}, {})", p, q);
    }
}

#[test]
fn cabling_assembly_reproduces_the_direct_invariant() {
    for (p, q) in PAIRS {
        let pr = params(p, q, 8);
        let assembled = unwheel_assemble(&pr).unwrap();
        let direct = torus_invariant(&pr).unwrap();
        assert_eq!(assembled.strut, rat_int(0), "({}, {})", p, q);
        assert_eq!(assembled, direct, "({}, {})", p, q);
    }
}

#[test]
fn two_loop_rational_form_expands_to_the_invariant() {
    for (p, q) in PAIRS {
        let pr = params(p, q, 10);
        let expanded = z2_rational(&pr).unwrap().to_series(10).unwrap();
        let star = torus_invariant(&pr).unwrap();
        assert_eq!(expanded, star.z2.series, "({}, {})", p, q);
        assert_eq!(expanded.polar_depth(), 0, "({}, {})", p, q);
    }
}

#[test]
fn three_loop_residual_collapses_to_the_displayed_chain() {
    for (p, q) in [(2, 3), (2, 5)] {
        let pr = params(p, q, 8);
        let residual = fractional_residual(&pr).unwrap();
        let display = fractional_residual_closed_form(&pr).unwrap();
        assert_eq!(residual, display, "({}, {})", p, q);
    }
}

#[test]
fn bracket_terms_cancel_the_residual() {
    for (p, q) in [(2, 3), (2, 5)] {
        let pr = params(p, q, 8);
        let star = torus_invariant(&pr).unwrap();
        let mut reduced = ChainPart::new(TruncatedSeries::zero(&["z1", "x", "z2"], 8));
        for b in &star.z3_brackets {
            reduced = reduced.add(&bracket_to_chain(b, 8).unwrap());
        }
        let residual = fractional_residual(&pr).unwrap();
        assert_eq!(
            reduced.series,
            residual.series.scalar_mul(&rat_int(-1)),
            "({}, {})",
            p,
            q
        );
    }
}

#[test]
fn closed_theta_normalization_holds_across_the_grid() {
    for (p, q) in sweep_pairs() {
        assert!(
            verify_closed_normalization(&params(p, q, 2)).unwrap(),
            "({}, {})",
            p,
            q
        );
    }
    let omega = WheelPart::new(f_series(2));
    assert_eq!(pair_wheels_theta2(&omega, &omega), rat(1, 1152));
}

#[test]
fn branched_cover_lift_scales_by_loop_degree() {
    for (p, q, r) in [(2, 3, 5), (2, 5, 3), (3, 5, 2), (2, 3, 7)] {
        let pr = params(p, q, 2);
        let z2 = z2_rational(&pr).unwrap();
        let scaled2 = RationalDumbbell::new(
            z2.terms
                .iter()
                .map(|(c, a, b)| (c * rat_int(r), a.clone(), b.clone()))
                .collect(),
        );
        assert_eq!(
            lift_dumbbell(&z2, r).unwrap(),
            scaled2,
            "({}, {}, {})",
            p,
            q,
            r
        );

        let z3 = z3_rational(&pr).unwrap();
        let scaled3 = RationalChain::new(
            z3.terms
                .iter()
                .map(|(c, e1, m, e2)| (c * rat_int(r * r), e1.clone(), m.clone(), e2.clone()))
                .collect(),
        );
        assert_eq!(
            lift_chain(&z3, r).unwrap(),
            scaled3,
            "({}, {}, {})",
            p,
            q,
            r
        );
    }

    for n in [1i64, 2, 3, 5, 6, 15] {
        for r in [2i64, 3, 5, 7] {
            if gcd(n, r) != 1 {
                continue;
            }
            let f1 = HyperbolicForm::f1(n).to_rational("t");
            let f2 = HyperbolicForm::f2(n).to_rational("t");
            assert_eq!(lift_edge(&f1, r).unwrap(), f1, "F1({}) under {}", n, r);
            assert_eq!(
                lift_edge(&f2, r).unwrap(),
                f2.scalar_mul(&rat_int(r)),
                "F2({}) under {}",
                n,
                r
            );
        }
    }
}

#[test]
fn surgery_theta2_matches_the_closed_formula_on_the_grid() {
    for (p, q, r) in sweep_triples() {
        let cover = CoverParams::new(p, q, r, None).unwrap();
        let formula = rat((p * p - 1) * (q * q - 1) * (r * r - 1), 1152);
        assert_eq!(
            lmo_theta2(&cover).unwrap(),
            formula,
            "({}, {}, {})",
            p,
            q,
            r
        );
    }
    let poincare = CoverParams::new(2, 3, 5, None).unwrap();
    assert_eq!(lmo_theta2(&poincare).unwrap(), rat(1, 2));
}

#[test]
fn surgery_theta3_is_emitted_with_the_conjectural_label() {
    let poincare = CoverParams::new(2, 3, 5, None).unwrap();
    assert_eq!(lmo_theta3(&poincare), rat(-5, 4));
    let seven = CoverParams::new(2, 3, 7, None).unwrap();
    assert_eq!(lmo_theta3(&seven), rat(-7, 2));
    for (p, q, r) in sweep_triples() {
        let cover = CoverParams::new(p, q, r, None).unwrap();
        let formula = rat(-p * q * r * (p * p - 1) * (q * q - 1) * (r * r - 1), 13824);
        assert_eq!(lmo_theta3(&cover), formula, "({}, {}, {})", p, q, r);
    }

    let out = Command::new(env!("CARGO_BIN_EXE_kzrat"))
        .args(["lmo", "--p", "2", "--q", "3", "--r", "5"])
        .env_remove("KZRAT_ORDER")
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Theta3 (conjectural): -5/4"), "{}", text);
}

#[test]
fn degenerations_and_symmetry() {
    for q in [2i64, 5] {
        let inv = torus_invariant(&params(1, q, 8)).unwrap();
        assert_eq!(inv.z1.series, f_series(8), "(1, {})", q);
        assert!(inv.z2.series.is_zero(), "(1, {})", q);
        assert!(inv.z3_chain.series.is_zero(), "(1, {})", q);
        assert!(inv.z3_brackets.is_empty(), "(1, {})", q);
        assert!(inv.closed.is_zero(), "(1, {})", q);
    }
    for (p, q) in [(2, 3), (2, 5)] {
        let a = torus_invariant(&params(p, q, 8)).unwrap();
        let b = torus_invariant(&params(q, p, 8)).unwrap();
        assert_eq!(a, b, "({}, {})", p, q);
    }
}
