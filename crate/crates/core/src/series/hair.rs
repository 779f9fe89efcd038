//! Expansion of factored rational functions into truncated series, and the
//! divided difference that turns one-variable labels into two-variable ones.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::rational::FactoredRationalFn;
use crate::exact::scalar::{rat_int, Rat};
use crate::series::TruncatedSeries;

/// `exp(k * var)` as a series with the given cap.
fn exp_multiple(var: &str, k: i64, cap: i64) -> Result<TruncatedSeries> {
    TruncatedSeries::monomial(&[var], &[1], rat_int(k))
        .truncate_to(cap)?
        .exp()
}

/// `(exp(n*var) - 1) / (n*var)`, a unit series with constant term 1.
fn binomial_unit(var: &str, n: i64, cap: i64) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(&[var], cap);
    let mut fact = Rat::one(); // (k+1)! running product
    let mut n_pow = Rat::one();
    for k in 0..=cap {
        fact *= rat_int(k + 1);
        if k > 0 {
            n_pow *= rat_int(n);
        }
        let coef = &n_pow / &fact;
        s = s.add(
            &TruncatedSeries::monomial(&[var], &[k], coef)
                .truncate_to(cap)
                .expect("monomial cap"),
        );
    }
    s
}

/// Substitutes `t = exp(var)` into a factored rational function and expands.
///
/// Each denominator factor `t^n - 1` contributes one pole order through
/// `1/(exp(n*var) - 1) = 1/(n*var) * unit^{-1}`, so the result's polar depth
/// equals the total denominator multiplicity. Regular pieces are expanded
/// with enough headroom that the returned series is faithful to `cap`.
pub fn hair_expand(f: &FactoredRationalFn, var: &str, cap: i64) -> Result<TruncatedSeries> {
    if f.is_zero() {
        return Ok(TruncatedSeries::zero(&[var], cap));
    }
    let depth = f.den_multiplicity() as i64;
    let work = cap + depth;
    let mut reg = TruncatedSeries::constant(&[var], f.scalar.clone(), work);
    if f.monomial_exp != 0 {
        reg = reg.mul(&exp_multiple(var, f.monomial_exp, work)?)?;
    }
    let mut num_series = TruncatedSeries::zero(&[var], work);
    for (exps, c) in f.num.terms() {
        let j = exps[0];
        num_series = num_series.add(&exp_multiple(var, j, work)?.scalar_mul(c));
    }
    reg = reg.mul(&num_series)?;
    let mut polar_scale = Rat::one();
    for (&n, &mult) in &f.den_factors {
        let inv_unit = binomial_unit(var, n, work).invert_unit()?;
        reg = reg.mul(&inv_unit.pow(mult)?)?;
        polar_scale *= crate::exact::scalar::rat_pow(&rat_int(n), -(mult as i64));
    }
    let polar = TruncatedSeries::monomial(&[var], &[-depth], polar_scale);
    reg.mul(&polar)
}

/// Two-variable divided difference of a regular univariate series:
/// `(u(a) - u(b)) / (a - b)`, with `u(a)` meaning the series with its
/// variable replaced by `a`.
///
/// Restricting to the diagonal `b = a` recovers the derivative `u'(a)`.
pub fn divided_difference(u: &TruncatedSeries, a: &str, b: &str) -> Result<TruncatedSeries> {
    if a == b {
        return Err(Error::SeriesDomain(
            "divided difference needs two distinct slots".into(),
        ));
    }
    if u.polar_depth() > 0 || u.terms().keys().any(|e| e.iter().any(|&x| x < 0)) {
        return Err(Error::SeriesDomain(
            "divided difference of a polar series".into(),
        ));
    }
    let active: Vec<usize> = (0..u.vars().len())
        .filter(|&i| u.terms().keys().any(|e| e[i] != 0))
        .collect();
    if active.len() > 1 {
        return Err(Error::SeriesDomain(format!(
            "divided difference needs a univariate series, got ({})",
            u.vars().join(", ")
        )));
    }
    let cap = u.cap().saturating_sub(1).min(super::EXACT_CAP);
    let mut out = TruncatedSeries::zero(&[a, b], cap);
    for (exps, c) in u.terms() {
        let k = exps.iter().sum::<i64>();
        if k == 0 {
            continue; // constants cancel in u(a) - u(b)
        }
        for i in 0..k {
            out = out.add(
                &TruncatedSeries::monomial(&[a, b], &[i, k - 1 - i], c.clone()).truncate_to(cap)?,
            );
        }
    }
    Ok(out)
}
