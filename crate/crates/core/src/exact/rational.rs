//! Rational functions kept in factored form.
//!
//! Every edge label the engine manipulates is a scalar times a monomial times
//! a Laurent polynomial, divided by a product of factors `t^n - 1`. Keeping
//! the denominator as a multiset of such factors (rather than expanding it)
//! is what makes series expansion and the branched-cover lift cheap.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::laurent::LaurentPoly;
use crate::exact::scalar::{fmt_rat, rat_int, Rat};

/// `scalar * v^monomial_exp * num / prod (v^n - 1)^mult` in one variable `v`.
///
/// Normalized form: den factors that divide the numerator are cancelled, the
/// numerator has lowest exponent 0 (the shift lives in `monomial_exp`), and
/// its coefficients are coprime integers with the lowest one positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FactoredRationalFn {
    pub scalar: Rat,
    pub monomial_exp: i64,
    pub num: LaurentPoly,
    pub den_factors: BTreeMap<i64, u32>,
}

impl FactoredRationalFn {
    /// Builds and normalizes. Denominator factor orders must be positive.
    pub fn new(
        scalar: Rat,
        monomial_exp: i64,
        num: LaurentPoly,
        den_factors: BTreeMap<i64, u32>,
    ) -> Result<Self> {
        if num.vars().len() != 1 {
            return Err(Error::Parameter(format!(
                "factored form needs a univariate numerator, got {} variables",
                num.vars().len()
            )));
        }
        if let Some(n) = den_factors.keys().find(|&&n| n <= 0) {
            return Err(Error::Parameter(format!(
                "denominator factor order must be positive, got {}",
                n
            )));
        }
        let mut f = Self {
            scalar,
            monomial_exp,
            num,
            den_factors,
        };
        f.normalize();
        Ok(f)
    }

    /// The constant 1 in the given variable.
    pub fn one(var: &str) -> Self {
        Self {
            scalar: Rat::one(),
            monomial_exp: 0,
            num: LaurentPoly::constant(&[var], Rat::one()),
            den_factors: BTreeMap::new(),
        }
    }

    pub fn var(&self) -> &str {
        &self.num.vars()[0]
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    fn set_zero(&mut self) {
        let var = self.var().to_string();
        self.scalar = Rat::zero();
        self.monomial_exp = 0;
        self.num = LaurentPoly::zero(&[&var]);
        self.den_factors.clear();
    }

    /// Restores the normalized-form invariants after direct field surgery.
    pub fn normalize(&mut self) {
        let var = self.var().to_string();
        if self.scalar.is_zero() || self.num.is_zero() {
            self.set_zero();
            return;
        }
        // Cancel denominator factors, largest order first so composite
        // factors are consumed before their divisors get a chance.
        let orders: Vec<i64> = self.den_factors.keys().rev().cloned().collect();
        for n in orders {
            let factor = binomial_factor(&var, n);
            while self.den_factors.get(&n).copied().unwrap_or(0) > 0 {
                match self.num.exact_div(&factor) {
                    Ok(q) => {
                        self.num = q;
                        let m = self.den_factors.get_mut(&n).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den_factors.remove(&n);
                        }
                    }
                    Err(_) => break,
                }
            }
        }
        // Lowest exponent moves into the monomial prefactor.
        let shift = self.num.min_exp(&var).unwrap_or(0);
        if shift != 0 {
            self.num = self.num.shift(&var, -shift);
            self.monomial_exp += shift;
        }
        // Coefficient content moves into the scalar.
        let content = numeric_content(&self.num);
        if !content.is_one() {
            self.scalar *= &content;
            self.num = self.num.scalar_mul(&content.recip());
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.var() != other.var() {
            return Err(Error::Parameter(format!(
                "cannot multiply factored forms in {} and {}",
                self.var(),
                other.var()
            )));
        }
        let mut den = self.den_factors.clone();
        for (&n, &m) in &other.den_factors {
            *den.entry(n).or_insert(0) += m;
        }
        Self::new(
            &self.scalar * &other.scalar,
            self.monomial_exp + other.monomial_exp,
            self.num.mul(&other.num),
            den,
        )
    }

    pub fn scalar_mul(&self, k: &Rat) -> Self {
        let mut out = self.clone();
        out.scalar *= k;
        if out.scalar.is_zero() {
            out.set_zero();
        }
        out
    }

    /// Numerator with the monomial prefactor folded back in.
    pub fn shifted_num(&self) -> LaurentPoly {
        self.num.shift(self.var(), self.monomial_exp)
    }

    /// Denominator expanded to a single Laurent polynomial.
    pub fn den_poly(&self) -> LaurentPoly {
        let var = self.var().to_string();
        let mut d = LaurentPoly::constant(&[&var], Rat::one());
        for (&n, &m) in &self.den_factors {
            d = d.mul(&binomial_factor(&var, n).pow(m));
        }
        d
    }

    /// Same rational function, checked by cross multiplication.
    pub fn equivalent(&self, other: &Self) -> bool {
        if self.var() != other.var() {
            return false;
        }
        let lhs = self
            .shifted_num()
            .scalar_mul(&self.scalar)
            .mul(&other.den_poly());
        let rhs = other
            .shifted_num()
            .scalar_mul(&other.scalar)
            .mul(&self.den_poly());
        lhs == rhs
    }

    /// Total multiplicity of the denominator, which is also the pole order
    /// the series expansion has to absorb.
    pub fn den_multiplicity(&self) -> u32 {
        self.den_factors.values().sum()
    }
}

/// `v^n - 1` in the given variable.
pub fn binomial_factor(var: &str, n: i64) -> LaurentPoly {
    let mut p = LaurentPoly::monomial(&[var], &[n], Rat::one());
    p = p.add(&LaurentPoly::constant(&[var], rat_int(-1)));
    p
}

/// gcd of numerators over lcm of denominators, signed so that dividing it out
/// leaves coprime integer coefficients with a positive lowest term.
fn numeric_content(p: &LaurentPoly) -> Rat {
    use num_bigint::BigInt;
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in p.terms().values() {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    if num_gcd.is_zero() {
        return Rat::one();
    }
    let mut content = Rat::new(num_gcd, den_lcm);
    if let Some((_, lowest)) = p.terms().iter().next() {
        if lowest.is_negative() {
            content = -content;
        }
    }
    content
}

/// `1 + v^n + v^{2n} + ... + v^{(r-1)n}`, the factor relating `v^n - 1`
/// to `v^{rn} - 1`.
pub fn cyclotomic_multiplier(var: &str, n: i64, r: i64) -> LaurentPoly {
    assert!(r >= 1, "multiplier needs a positive cover degree");
    let mut p = LaurentPoly::zero(&[var]);
    for k in 0..r {
        p = p.add(&LaurentPoly::monomial(&[var], &[n * k], Rat::one()));
    }
    p
}

/// Symmetrized Alexander polynomial of the (p, q) torus knot, as a genuine
/// Laurent polynomial. Signs of p and q do not matter; the parameters must be
/// nonzero and coprime.
pub fn alexander_torus(p: i64, q: i64) -> Result<LaurentPoly> {
    if p == 0 || q == 0 {
        return Err(Error::Parameter("torus parameters must be nonzero".into()));
    }
    let a = p.abs();
    let b = q.abs();
    if a.gcd(&b) != 1 {
        return Err(Error::Parameter(format!(
            "torus parameters must be coprime, got ({}, {})",
            p, q
        )));
    }
    if a == 1 || b == 1 {
        return Ok(LaurentPoly::constant(&["t"], Rat::one()));
    }
    let num = binomial_factor("t", a * b).mul(&binomial_factor("t", 1));
    let mut den = BTreeMap::new();
    den.insert(a, 1);
    den.insert(b, 1);
    let f = FactoredRationalFn::new(Rat::one(), -((a - 1) * (b - 1)) / 2, num, den)?;
    debug_assert!(f.den_factors.is_empty(), "torus Alexander form must clear");
    Ok(f.shifted_num().scalar_mul(&f.scalar))
}

impl fmt::Display for FactoredRationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if !self.scalar.is_one() {
            parts.push(format!("({})", fmt_rat(&self.scalar)));
        }
        match self.monomial_exp {
            0 => {}
            1 => parts.push(self.var().to_string()),
            e => parts.push(format!("{}^{}", self.var(), e)),
        }
        let trivial_num = self.num.terms().len() == 1 && self.num.coef(&[0]).is_one();
        if !trivial_num || parts.is_empty() {
            parts.push(format!("({})", self.num));
        }
        write!(f, "{}", parts.join(" * "))?;
        if !self.den_factors.is_empty() {
            let den: Vec<String> = self
                .den_factors
                .iter()
                .map(|(&n, &m)| {
                    let base = format!("({}^{} - 1)", self.var(), n);
                    if m == 1 {
                        base
                    } else {
                        format!("{}^{}", base, m)
                    }
                })
                .collect();
            write!(f, " / {}", den.join(" "))?;
        }
        Ok(())
    }
}
