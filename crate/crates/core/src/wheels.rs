//! The wheel generating function and its derivatives as edge labels.
//!
//! The scalar series `f(x) = (1/2) log(sinh(x/2) / (x/2))` packages the wheel
//! coefficients of the unknot invariant: its `x^{2k}` coefficient is the
//! weight of the 2k-wheel. The cabling pipeline needs `f` itself, the
//! combination `c(x) = f(px) + f(qx) - f(pqx)`, and their first two
//! derivatives evaluated at integer multiples of the variable.
//!
//! The derivatives split into a hyperbolic part, which is a rational function
//! of `t = e^x` and therefore survives rationalization, and an explicit polar
//! monomial that cancels the hyperbolic pole so the full series is regular:
//!
//! ```text
//! f'(nx)  = (1/4)  coth(nx/2)        - 1/(2nx)
//! f''(nx) = -(1/2) / (4sinh^2(nx/2)) + 1/(2n^2 x^2)
//! ```

use num_traits::One;

use crate::error::Result;
use crate::exact::rational::FactoredRationalFn;
use crate::exact::scalar::{rat, rat_int, Rat};
use crate::exact::LaurentPoly;
use crate::series::{hair_expand, TruncatedSeries, EXACT_CAP};

/// `f(x) = (1/2) log(sinh(x/2) / (x/2))` truncated at total degree `cap`.
///
/// Even series, zero constant term; starts `x^2/48 - x^4/5760 + ...`.
pub fn f_series(cap: i64) -> TruncatedSeries {
    // sinh(x/2)/(x/2) = sum_k x^{2k} / (4^k (2k+1)!)
    let mut sinhc = TruncatedSeries::zero(&["x"], cap);
    let mut denom = Rat::one(); // 4^k (2k+1)!
    let mut k = 0i64;
    loop {
        if 2 * k > cap {
            break;
        }
        if k > 0 {
            denom *= rat_int(4) * rat_int(2 * k) * rat_int(2 * k + 1);
        }
        sinhc = sinhc.add(
            &TruncatedSeries::monomial(&["x"], &[2 * k], denom.recip())
                .truncate_to(cap)
                .expect("monomial cap"),
        );
        k += 1;
    }
    sinhc.log().expect("unit series").scalar_mul(&rat(1, 2))
}

/// `c(x) = f(px) + f(qx) - f(pqx)`, the 1-loop wheel series of the (p, q)
/// torus knot. Insensitive to the signs of p and q.
pub fn c_series(p: i64, q: i64, cap: i64) -> TruncatedSeries {
    let f = f_series(cap);
    let at = |k: i64| f.scale_var("x", &rat_int(k)).expect("nonzero scale");
    at(p).add(&at(q)).sub(&at(p * q))
}

/// The two rational building blocks every hyperbolic edge label is made of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HyperbolicKind {
    /// `(t^n + 1)/(t^n - 1)`, i.e. `coth(nx/2)` under `t = e^x`.
    F1,
    /// `t^n/(t^n - 1)^2`, i.e. `1/(4 sinh^2(nx/2))` under `t = e^x`.
    F2,
}

/// A basic hyperbolic form at frequency `n > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HyperbolicForm {
    pub kind: HyperbolicKind,
    pub n: i64,
}

impl HyperbolicForm {
    pub fn f1(n: i64) -> Self {
        assert!(n > 0, "hyperbolic frequency must be positive");
        Self {
            kind: HyperbolicKind::F1,
            n,
        }
    }

    pub fn f2(n: i64) -> Self {
        assert!(n > 0, "hyperbolic frequency must be positive");
        Self {
            kind: HyperbolicKind::F2,
            n,
        }
    }

    /// The form as a factored rational function in the given variable.
    pub fn to_rational(&self, var: &str) -> FactoredRationalFn {
        let n = self.n;
        match self.kind {
            HyperbolicKind::F1 => {
                let num = LaurentPoly::monomial(&[var], &[n], Rat::one())
                    .add(&LaurentPoly::constant(&[var], Rat::one()));
                FactoredRationalFn::new(Rat::one(), 0, num, [(n, 1)].into_iter().collect())
                    .expect("valid form")
            }
            HyperbolicKind::F2 => FactoredRationalFn::new(
                Rat::one(),
                n,
                LaurentPoly::constant(&[var], Rat::one()),
                [(n, 2)].into_iter().collect(),
            )
            .expect("valid form"),
        }
    }

    pub fn to_series(&self, var: &str, cap: i64) -> Result<TruncatedSeries> {
        hair_expand(&self.to_rational(var), var, cap)
    }
}

/// An edge label split into its hyperbolic part and the polar counterterm.
///
/// The full label (the sum of both parts) is always a regular power series;
/// only the hyperbolic part survives into the rationalized invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeFunction {
    /// Rational-in-`t` summands with scalar weights.
    pub hyper: Vec<(Rat, HyperbolicForm)>,
    /// Monomial summands `(exponent, coefficient)`.
    pub polar: Vec<(i64, Rat)>,
}

impl EdgeFunction {
    /// `f'(nx)` for nonzero `n`; odd in `n`.
    pub fn fprime(n: i64) -> Self {
        assert!(n != 0, "derivative frequency must be nonzero");
        let s = if n > 0 { rat_int(1) } else { rat_int(-1) };
        let a = n.abs();
        Self {
            hyper: vec![(&s * rat(1, 4), HyperbolicForm::f1(a))],
            polar: vec![(-1, -&s * rat(1, 2 * a))],
        }
    }

    /// `f''(nx)` for nonzero `n`; even in `n`.
    pub fn fsecond(n: i64) -> Self {
        assert!(n != 0, "derivative frequency must be nonzero");
        let a = n.abs();
        Self {
            hyper: vec![(rat(-1, 2), HyperbolicForm::f2(a))],
            polar: vec![(-2, rat(1, 2 * a * a))],
        }
    }

    /// `c'(x) = p f'(px) + q f'(qx) - pq f'(pqx)`; its polar part collapses
    /// to `-1/(2x)` independently of p and q.
    pub fn cprime(p: i64, q: i64) -> Self {
        Self::fprime(p)
            .scaled(&rat_int(p))
            .plus(&Self::fprime(q).scaled(&rat_int(q)))
            .plus(&Self::fprime(p * q).scaled(&rat_int(-p * q)))
    }

    /// `c''(x)`; its polar part collapses to `+1/(2x^2)`.
    pub fn csecond(p: i64, q: i64) -> Self {
        Self::fsecond(p)
            .scaled(&rat_int(p * p))
            .plus(&Self::fsecond(q).scaled(&rat_int(q * q)))
            .plus(&Self::fsecond(p * q).scaled(&rat_int(-p * p * q * q)))
    }

    pub fn scaled(&self, k: &Rat) -> Self {
        Self {
            hyper: self.hyper.iter().map(|(c, h)| (c * k, *h)).collect(),
            polar: self.polar.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.hyper.extend(other.hyper.iter().cloned());
        // Merge polar monomials with equal exponents.
        for (e, c) in &other.polar {
            if let Some(slot) = out.polar.iter_mut().find(|(oe, _)| oe == e) {
                slot.1 += c;
            } else {
                out.polar.push((*e, c.clone()));
            }
        }
        out.polar.retain(|(_, c)| !num_traits::Zero::is_zero(c));
        out
    }

    /// Expansion of the hyperbolic part alone.
    pub fn hyper_series(&self, var: &str, cap: i64) -> Result<TruncatedSeries> {
        let mut s = TruncatedSeries::zero(&[var], cap);
        for (c, form) in &self.hyper {
            s = s.add(&form.to_series(var, cap)?.scalar_mul(c));
        }
        Ok(s)
    }

    /// The polar counterterm as an exactly known series.
    pub fn polar_series(&self, var: &str) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(&[var], EXACT_CAP);
        for (e, c) in &self.polar {
            s = s.add(&TruncatedSeries::monomial(&[var], &[*e], c.clone()));
        }
        s
    }

    /// Full expansion: hyperbolic part plus counterterm, a regular series.
    pub fn to_series(&self, var: &str, cap: i64) -> Result<TruncatedSeries> {
        Ok(self.hyper_series(var, cap)?.add(&self.polar_series(var)))
    }
}

/// `f'(nx)` split into its rational hyperbolic part `(1/4) F1(n)` and the
/// polar counterterm `-1/(2nx)`, both in the variable `x`.
pub fn fprime_forms(n: i64) -> (FactoredRationalFn, TruncatedSeries) {
    assert!(n >= 1, "frequency must be positive");
    let e = EdgeFunction::fprime(n);
    let (c, form) = &e.hyper[0];
    (form.to_rational("x").scalar_mul(c), e.polar_series("x"))
}

/// `f''(nx)` split into `-(1/2) F2(n)` and the counterterm `+1/(2n^2 x^2)`.
pub fn fsecond_forms(n: i64) -> (FactoredRationalFn, TruncatedSeries) {
    assert!(n >= 1, "frequency must be positive");
    let e = EdgeFunction::fsecond(n);
    let (c, form) = &e.hyper[0];
    (form.to_rational("x").scalar_mul(c), e.polar_series("x"))
}
