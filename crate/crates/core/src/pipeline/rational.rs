//! Rational closed forms of the loop parts and the checks tying them to the
//! series pipeline.
//!
//! Under `t = e^x` the hyperbolic part of every edge label is a rational
//! function of `t` with denominator a product of `t^n - 1` factors, so each
//! loop part has a closed form: the 1-loop part is minus half the log of the
//! Alexander polynomial, the 2-loop part is an explicit 7-term combination
//! of coth factors, and the 3-loop chains keep only the hyperbolic parts of
//! their edges. What the rationalization drops, the fractional residual,
//! collapses to a single `1/x^2`-middle chain and is cancelled by the
//! bracket terms; the closed 2-edge theta coefficient is what survives.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::diagram::{ChainPart, WheelPart};
use crate::error::{Error, Result};
use crate::exact::rational::alexander_torus;
use crate::exact::scalar::{fmt_rat, rat, rat_int, Rat};
use crate::exact::FactoredRationalFn;
use crate::glue::pair_wheels_theta2;
use crate::series::{hair_expand, TruncatedSeries};
use crate::wheels::{c_series, f_series, HyperbolicForm};

use super::{chain_lines, cp_series, fp_series, TorusParams};

/// A 2-loop rational form: weighted products of one factor in `t` (the
/// x-edge) and one in `s` (the y-edge).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalDumbbell {
    pub terms: Vec<(Rat, FactoredRationalFn, FactoredRationalFn)>,
}

impl RationalDumbbell {
    pub fn new(terms: Vec<(Rat, FactoredRationalFn, FactoredRationalFn)>) -> Self {
        let mut d = Self { terms };
        d.normalize();
        d
    }

    /// Pulls factor scalars into the coefficients, sorts, and merges terms
    /// with identical factor pairs.
    pub fn normalize(&mut self) {
        for (c, a, b) in &mut self.terms {
            *c *= &a.scalar * &b.scalar;
            a.scalar = Rat::one();
            b.scalar = Rat::one();
        }
        self.terms
            .retain(|(c, a, b)| !c.is_zero() && !a.is_zero() && !b.is_zero());
        self.terms.sort_by(|x, y| (&x.1, &x.2).cmp(&(&y.1, &y.2)));
        let mut merged: Vec<(Rat, FactoredRationalFn, FactoredRationalFn)> = Vec::new();
        for (c, a, b) in self.terms.drain(..) {
            match merged.last_mut() {
                Some((mc, ma, mb)) if *ma == a && *mb == b => *mc += &c,
                _ => merged.push((c, a, b)),
            }
        }
        merged.retain(|(c, _, _)| !c.is_zero());
        self.terms = merged;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Expansion under `t = e^x`, `s = e^y`.
    pub fn to_series(&self, cap: i64) -> Result<TruncatedSeries> {
        let mut out = TruncatedSeries::zero(&["x", "y"], cap);
        for (c, a, b) in &self.terms {
            let hx = hair_expand(a, "x", cap + 2)?;
            let hy = hair_expand(b, "y", cap + 2)?;
            out = out.add(&hx.mul(&hy)?.scalar_mul(c));
        }
        Ok(out)
    }
}

/// A 3-loop rational form: weighted triples of edge factors for the two
/// outer wheels and the middle wheel of a chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalChain {
    pub terms: Vec<(
        Rat,
        FactoredRationalFn,
        FactoredRationalFn,
        FactoredRationalFn,
    )>,
}

impl RationalChain {
    pub fn new(
        terms: Vec<(
            Rat,
            FactoredRationalFn,
            FactoredRationalFn,
            FactoredRationalFn,
        )>,
    ) -> Self {
        let mut c = Self { terms };
        c.normalize();
        c
    }

    /// Same cleanup as for dumbbells; additionally orients each triple so the
    /// smaller outer factor comes first (the chain is symmetric in its ends).
    pub fn normalize(&mut self) {
        for (c, e1, m, e2) in &mut self.terms {
            *c *= &e1.scalar * &m.scalar * &e2.scalar;
            e1.scalar = Rat::one();
            m.scalar = Rat::one();
            e2.scalar = Rat::one();
            if e2 < e1 {
                std::mem::swap(e1, e2);
            }
        }
        self.terms.retain(|(c, e1, m, e2)| {
            !c.is_zero() && !e1.is_zero() && !m.is_zero() && !e2.is_zero()
        });
        self.terms
            .sort_by(|x, y| (&x.1, &x.2, &x.3).cmp(&(&y.1, &y.2, &y.3)));
        let mut merged: Vec<(
            Rat,
            FactoredRationalFn,
            FactoredRationalFn,
            FactoredRationalFn,
        )> = Vec::new();
        for (c, e1, m, e2) in self.terms.drain(..) {
            match merged.last_mut() {
                Some((mc, m1, mm, m2)) if *m1 == e1 && *mm == m && *m2 == e2 => *mc += &c,
                _ => merged.push((c, e1, m, e2)),
            }
        }
        merged.retain(|(c, _, _, _)| !c.is_zero());
        self.terms = merged;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Expansion under `t = e^x` on every edge, symmetrized in the chain
    /// ends; faithful to `cap`.
    pub fn to_series(&self, cap: i64) -> Result<ChainPart> {
        let mut out = TruncatedSeries::zero(&["z1", "x", "z2"], cap);
        for (c, e1, m, e2) in &self.terms {
            let h1 = hair_expand(e1, "z1", cap + 4)?;
            let hm = hair_expand(m, "x", cap + 4)?;
            let h2 = hair_expand(e2, "z2", cap + 4)?;
            out = out.add(&h1.mul(&hm)?.mul(&h2)?.scalar_mul(c));
        }
        Ok(ChainPart::new(out))
    }
}

/// The Alexander polynomial as a rational function of `t`; minus half its
/// log under `t = e^x` is the 1-loop part beyond the unknot wheels.
pub fn z1_rational(params: &TorusParams) -> Result<FactoredRationalFn> {
    FactoredRationalFn::new(
        Rat::one(),
        0,
        alexander_torus(params.p, params.q)?,
        BTreeMap::new(),
    )
}

fn f1(n: i64, var: &str) -> FactoredRationalFn {
    HyperbolicForm::f1(n).to_rational(var)
}

fn f2(n: i64, var: &str) -> FactoredRationalFn {
    HyperbolicForm::f2(n).to_rational(var)
}

/// The 2-loop closed form: for positive q the 7-term combination
///
/// ```text
/// (1/32) [ 2pq F1(pq)(t) F1(pq)(s)
///        - p  F1(pq)(t) F1(p)(s) - q F1(pq)(t) F1(q)(s)
///        - p  F1(p)(t)  F1(pq)(s) - q F1(q)(t) F1(pq)(s)
///        +    F1(p)(t)  F1(q)(s)  +   F1(q)(t) F1(p)(s) ]
/// ```
///
/// with `F1(n) = (t^n+1)/(t^n-1)`; the mirror `q < 0` flips the overall
/// sign, with `|q|` in the factor indices.
pub fn z2_rational(params: &TorusParams) -> Result<RationalDumbbell> {
    let p = params.p;
    let a = params.q.abs();
    let pa = p * a;
    let sign = if params.q < 0 {
        rat_int(-1)
    } else {
        rat_int(1)
    };
    let w = |k: i64| &sign * rat(k, 32);
    let terms = vec![
        (w(2 * pa), f1(pa, "t"), f1(pa, "s")),
        (w(-p), f1(pa, "t"), f1(p, "s")),
        (w(-a), f1(pa, "t"), f1(a, "s")),
        (w(-p), f1(p, "t"), f1(pa, "s")),
        (w(-a), f1(a, "t"), f1(pa, "s")),
        (w(1), f1(p, "t"), f1(a, "s")),
        (w(1), f1(a, "t"), f1(p, "s")),
    ];
    Ok(RationalDumbbell::new(terms))
}

/// The 3-loop rational chain: the chain lines of the invariant with every
/// edge replaced by the hyperbolic part of its label, `f' -> (1/4)F1` and
/// `f'' -> -(1/2)F2`. Insensitive to the sign of q.
pub fn z3_rational(params: &TorusParams) -> Result<RationalChain> {
    let p = params.p;
    let a = params.q.abs();
    let pa = p * a;
    // Weighted single-form expansions of the edge labels.
    let fp = |n: i64| vec![(rat(1, 4), n, false)];
    let fpp = |n: i64| vec![(rat(-1, 2), n, true)];
    let cp = vec![
        (rat(p, 4), p, false),
        (rat(a, 4), a, false),
        (rat(-pa, 4), pa, false),
    ];
    let cpp = vec![
        (rat(-p * p, 2), p, true),
        (rat(-a * a, 2), a, true),
        (rat(pa * pa, 2), pa, true),
    ];
    let lines: Vec<(Rat, _, _, _)> = vec![
        (rat(1, 2), fp(p), fpp(a), fp(p)),
        (rat(1, 2), fp(a), fpp(p), fp(a)),
        (rat(1, 2), fp(pa), cpp.clone(), fp(pa)),
        (rat(-1, 2), cp.clone(), fpp(pa), cp.clone()),
        (rat_int(-p), fp(pa), fpp(p), fp(a)),
        (rat_int(-a), fp(pa), fpp(a), fp(p)),
        (rat_int(pa), fp(pa), fpp(pa), cp.clone()),
    ];
    let form = |&(ref w, n, second): &(Rat, i64, bool)| {
        let fr = if second { f2(n, "t") } else { f1(n, "t") };
        (w.clone(), fr)
    };
    let mut terms = Vec::new();
    for (c, e1s, ms, e2s) in &lines {
        for t1 in e1s {
            for tm in ms {
                for t2 in e2s {
                    let (w1, g1) = form(t1);
                    let (wm, gm) = form(tm);
                    let (w2, g2) = form(t2);
                    terms.push((c * w1 * wm * w2, g1, gm, g2));
                }
            }
        }
    }
    Ok(RationalChain::new(terms))
}

/// What the rationalization of the 3-loop chains drops: the full-series
/// chains minus the expansion of the rational chain form.
pub fn fractional_residual(params: &TorusParams) -> Result<ChainPart> {
    let full = chain_lines(params.p, params.q, params.cap)?;
    let hyp = z3_rational(params)?.to_series(params.cap)?;
    Ok(full.sub(&hyp))
}

/// The closed form the fractional residual collapses to:
///
/// ```text
/// -(1/2pq) [ f'(p z1) x^{-2} f'(q z2) - c'(z1) x^{-2} f'(pq z2) ]
/// ```
///
/// with full-series outer factors, symmetrized in the ends.
pub fn fractional_residual_closed_form(params: &TorusParams) -> Result<ChainPart> {
    let (p, q, cap) = (params.p, params.q, params.cap);
    let pq = p * q;
    let mid = TruncatedSeries::var_pow("x", -2);
    let first = fp_series(p, "z1", cap + 2)?
        .mul(&mid)?
        .mul(&fp_series(q, "z2", cap + 2)?)?;
    let second = cp_series(p, q, "z1", cap + 2)?
        .mul(&mid)?
        .mul(&fp_series(pq, "z2", cap + 2)?)?;
    let s = first.sub(&second).scalar_mul(&rat(-1, 2 * pq));
    Ok(ChainPart::new(s.truncate_to(cap.min(s.cap()))?))
}

/// Coefficient of the closed 2-edge theta graph produced by the 3-loop part:
/// `(p^2-1)(q^2-1)/1152`, cross-checked against the legless coefficient of
/// the `z1 x^{-2} z2` residual shape (the sliding reduction negates it).
pub fn closed_theta2_z3(params: &TorusParams) -> Result<Rat> {
    let (p, q) = (params.p, params.q);
    // Pure in (p, q) and requested from several routes per run, so the
    // cross-checked value is cached.
    static CACHE: OnceLock<Mutex<HashMap<(i64, i64), Rat>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(p, q)) {
        return Ok(v.clone());
    }
    let formula = rat((p * p - 1) * (q * q - 1), 1152);
    // The coefficient sits in total degree 0, so a low cap suffices.
    let probe = TorusParams { p, q, cap: 2 };
    let residual = fractional_residual(&probe)?;
    let extracted = -residual.series.coef(&[("z1", 1), ("x", -2), ("z2", 1)]);
    if extracted != formula {
        return Err(Error::Verification(format!(
            "closed theta coefficient mismatch for ({}, {}): formula {}, residual gives {}",
            p,
            q,
            fmt_rat(&formula),
            fmt_rat(&extracted)
        )));
    }
    cache.lock().unwrap().insert((p, q), formula.clone());
    Ok(formula)
}

/// Checks that the 2-wheel pairing of the invariant's wheels with the
/// unknot wheels, plus the closed theta term from the 3-loop part, equals
/// the unknot's own closed normalization 1/1152.
pub fn verify_closed_normalization(params: &TorusParams) -> Result<bool> {
    let wheels = WheelPart::new(c_series(params.p, params.q, 2));
    let omega = WheelPart::new(f_series(2));
    let total = pair_wheels_theta2(&wheels, &omega) + closed_theta2_z3(params)?;
    Ok(total == rat(1, 1152))
}
