//! Cyclic branched covers of the knot complement and their surgery
//! invariants.
//!
//! An edge label that is rational in `t` pushes down to the r-fold cyclic
//! cover by rewriting its denominators as polynomials in `t^r`, keeping only
//! the numerator classes divisible by r, and dividing them; a final factor r
//! per connected diagram accounts for the covering degree. On loop degree k
//! the whole operation scales the rational coloring by `r^{k-1}`, which is
//! what makes the degree-2 surgery coefficient of the Brieskorn sphere
//! Σ(p, q, r) come out in closed form.

use num_integer::Integer;

use crate::diagram::WheelPart;
use crate::error::{Error, Result};
use crate::exact::rational::cyclotomic_multiplier;
use crate::exact::scalar::{fmt_rat, rat, rat_int, Rat};
use crate::exact::{FactoredRationalFn, LaurentPoly};
use crate::glue::pair_wheels_theta2;
use crate::pipeline::rational::{closed_theta2_z3, RationalChain, RationalDumbbell};
use crate::pipeline::TorusParams;
use crate::wheels::{c_series, f_series};

/// Parameters of the r-fold cyclic cover branched over the (p, q) torus
/// knot, the Brieskorn sphere Σ(p, q, r).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverParams {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    /// Externally supplied signature correction; only feeds the degree-1
    /// theta coefficient of the surgery invariant.
    pub sigma_r: Option<i64>,
}

impl CoverParams {
    pub fn new(p: i64, q: i64, r: i64, sigma_r: Option<i64>) -> Result<Self> {
        TorusParams::new(p, q, 2)?;
        if r < 1 {
            return Err(Error::Parameter(format!(
                "covering order must be positive, got {}",
                r
            )));
        }
        if r.gcd(&p) != 1 || r.gcd(&q.abs()) != 1 {
            return Err(Error::Parameter(format!(
                "covering order must be coprime with both knot parameters, got ({}, {}, {})",
                p, q, r
            )));
        }
        Ok(Self { p, q, r, sigma_r })
    }

    fn torus(&self) -> TorusParams {
        TorusParams {
            p: self.p,
            q: self.q,
            cap: 4,
        }
    }
}

/// Lifts one rational edge factor to the r-fold cover: express the
/// denominators in `t^r` by extending with cyclotomic multipliers, keep the
/// numerator classes divisible by r, and divide their exponents. The
/// covering-degree factor r is applied per diagram, not here.
pub fn lift_edge(rf: &FactoredRationalFn, r: i64) -> Result<FactoredRationalFn> {
    if r < 1 {
        return Err(Error::Parameter(format!(
            "covering order must be positive, got {}",
            r
        )));
    }
    for n in rf.den_factors.keys() {
        if n.gcd(&r) != 1 {
            return Err(Error::LiftDomain(format!(
                "denominator frequency {} shares a factor with the covering order {}",
                n, r
            )));
        }
    }
    if r == 1 || rf.is_zero() {
        return Ok(rf.clone());
    }
    let var = rf.var().to_string();
    let mut m = rf.shifted_num();
    for (&n, &mult) in &rf.den_factors {
        let c = cyclotomic_multiplier(&var, n, r);
        for _ in 0..mult {
            m = m.mul(&c);
        }
    }
    let mut selected = LaurentPoly::zero(&[&var]);
    for (exps, c) in m.terms() {
        let e = exps[0];
        if e.rem_euclid(r) == 0 {
            selected = selected.add(&LaurentPoly::monomial(&[&var], &[e / r], c.clone()));
        }
    }
    FactoredRationalFn::new(rf.scalar.clone(), 0, selected, rf.den_factors.clone())
}

/// Lifts a 2-loop rational coloring: every edge factor lifted, then one
/// overall factor r for the connected diagram.
pub fn lift_dumbbell(d: &RationalDumbbell, r: i64) -> Result<RationalDumbbell> {
    let rr = rat_int(r);
    let terms = d
        .terms
        .iter()
        .map(|(c, a, b)| Ok((c * &rr, lift_edge(a, r)?, lift_edge(b, r)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalDumbbell::new(terms))
}

/// Lifts a 3-loop rational coloring, one overall factor r.
pub fn lift_chain(c: &RationalChain, r: i64) -> Result<RationalChain> {
    let rr = rat_int(r);
    let terms = c
        .terms
        .iter()
        .map(|(w, e1, m, e2)| {
            Ok((
                w * &rr,
                lift_edge(e1, r)?,
                lift_edge(m, r)?,
                lift_edge(e2, r)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalChain::new(terms))
}

/// Degree-2 theta coefficient of the surgery invariant of Σ(p, q, r):
/// `(p^2-1)(q^2-1)(r^2-1)/1152`.
///
/// Computed as the lift-scaled closed chain term plus the 2-wheel pairing of
/// the lifted wheels against the unknot wheels, minus the unknot's own
/// normalization; the closed formula must agree exactly.
pub fn lmo_theta2(cover: &CoverParams) -> Result<Rat> {
    let (p, q, r) = (cover.p, cover.q, cover.r);
    let chain_term = rat_int(r * r) * closed_theta2_z3(&cover.torus())?;
    let wheels = WheelPart::new(c_series(p, q, 2));
    let omega = WheelPart::new(f_series(2));
    let value = chain_term + pair_wheels_theta2(&wheels, &omega) - rat(1, 1152);
    let formula = rat((p * p - 1) * (q * q - 1) * (r * r - 1), 1152);
    if value != formula {
        return Err(Error::Verification(format!(
            "surgery theta2 mismatch for ({}, {}, {}): pipeline {}, formula {}",
            p,
            q,
            r,
            fmt_rat(&value),
            fmt_rat(&formula)
        )));
    }
    Ok(value)
}

/// Degree-3 theta coefficient, `-pqr(p^2-1)(q^2-1)(r^2-1)/13824`.
///
/// Rests on extending the lift scaling law one loop degree further than is
/// proven; every consumer must label the value as conjectural.
pub fn lmo_theta3(cover: &CoverParams) -> Rat {
    let (p, q, r) = (cover.p, cover.q, cover.r);
    rat(
        -(p * q * r) * (p * p - 1) * (q * q - 1) * (r * r - 1),
        13824,
    )
}

/// The degree-1 theta coefficient `sigma_r / 16`, when the signature
/// correction was supplied.
pub fn theta1_coefficient(cover: &CoverParams) -> Option<Rat> {
    cover.sigma_r.map(|s| rat(s, 16))
}
