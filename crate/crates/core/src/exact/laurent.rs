//! Laurent polynomials with exact rational coefficients.
//!
//! Sparse representation: an ordered variable list plus a map from exponent
//! vectors (components may be negative) to nonzero coefficients. Most of the
//! engine works univariately in the knot variable `t`; the 2-loop numerators
//! also use a second variable `s`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::scalar::{fmt_rat, Rat};

/// Finitely supported map from integer exponent vectors to exact scalars.
///
/// Invariants: no stored zero coefficients; every exponent vector has the
/// same arity as the variable list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl LaurentPoly {
    /// The zero polynomial over the given variables.
    pub fn zero(vars: &[&str]) -> Self {
        Self {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    /// A constant polynomial over the given variables.
    pub fn constant(vars: &[&str], c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    /// A single monomial. `exps` must match `vars` in length.
    pub fn monomial(vars: &[&str], exps: &[i64], c: Rat) -> Self {
        assert_eq!(vars.len(), exps.len(), "exponent arity mismatch");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps.to_vec(), c);
        }
        p
    }

    /// `t^e` in the univariate knot variable.
    pub fn t_pow(e: i64) -> Self {
        Self::monomial(&["t"], &[e], Rat::one())
    }

    /// `t^e - 1`, the building block of all denominators.
    pub fn t_pow_minus_one(e: i64) -> Self {
        let mut p = Self::t_pow(e);
        p.add_term(&[0], -Rat::one());
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at an exponent vector (zero when absent).
    pub fn coef(&self, exps: &[i64]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, exps: &[i64], c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps.to_vec()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(exps);
        }
    }

    /// Reindexes `self` onto a superset variable list.
    fn extended(&self, vars: &[String]) -> Self {
        if self.vars == vars {
            return self.clone();
        }
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("variable lost"))
            .collect();
        let mut out = Self {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        };
        for (exps, c) in &self.terms {
            let mut e = vec![0i64; vars.len()];
            for (i, &pos) in positions.iter().enumerate() {
                e[pos] = exps[i];
            }
            out.terms.insert(e, c.clone());
        }
        out
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let mut vars = a.vars.clone();
        for v in &b.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        (a.extended(&vars), b.extended(&vars))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = Self::aligned(self, other);
        for (exps, c) in &b.terms {
            a.add_term(exps, c.clone());
        }
        a
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero(&self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::aligned(self, other);
        let mut out = Self {
            vars: a.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(&e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let mut acc = Self::constant(&vars, Rat::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division in the Laurent polynomial ring.
    ///
    /// Runs long division against the lexicographically largest term of the
    /// divisor; in a Laurent ring monomials are invertible, so the division
    /// succeeds exactly when the quotient exists.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::Division("division by zero polynomial".into()));
        }
        let (mut rem, d) = Self::aligned(self, divisor);
        let vars = rem.vars.clone();
        let mut quot = Self {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        };
        let (d_lead_exp, d_lead_coef) = d
            .terms
            .iter()
            .next_back()
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        // Each round peels the lex-largest remaining term and emits one
        // quotient monomial with a strictly smaller leading exponent, so an
        // exact division finishes in (number of quotient terms) rounds. That
        // count is bounded by the combined exponent spans; exceeding the bound
        // means the quotient does not exist and exponents are running off to
        // negative infinity.
        let mut budget = 8usize;
        for i in 0..vars.len() {
            let span = |p: &Self| {
                let lo = p.terms.keys().map(|e| e[i]).min().unwrap_or(0);
                let hi = p.terms.keys().map(|e| e[i]).max().unwrap_or(0);
                (hi - lo) as usize
            };
            budget = budget.saturating_mul(span(&rem) + span(&d) + 2);
        }
        let mut rounds = 0usize;
        while !rem.is_zero() {
            rounds += 1;
            if rounds > budget {
                return Err(Error::Division("long division did not terminate".into()));
            }
            let (r_exp, r_coef) = rem
                .terms
                .iter()
                .next_back()
                .map(|(e, c)| (e.clone(), c.clone()))
                .unwrap();
            let q_exp: Vec<i64> = r_exp.iter().zip(&d_lead_exp).map(|(a, b)| a - b).collect();
            let q_coef = &r_coef / &d_lead_coef;
            quot.add_term(&q_exp, q_coef.clone());
            let piece = Self::monomial(
                &vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
                &q_exp,
                q_coef,
            );
            rem = rem.sub(&piece.mul(&d));
            // Exactness check: the lex order of the remainder must strictly drop.
            if let Some((new_exp, _)) = rem.terms.iter().next_back() {
                if *new_exp >= r_exp {
                    return Err(Error::Division(format!(
                        "{} does not divide {}",
                        divisor, self
                    )));
                }
            }
        }
        Ok(quot)
    }

    /// Substitutes 1 for every variable (the coefficient sum).
    pub fn eval_one(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |acc, c| acc + c)
    }

    /// Reverses every exponent vector (t -> 1/t in the univariate case).
    pub fn reversed(&self) -> Self {
        let mut out = Self {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (exps, c) in &self.terms {
            out.terms
                .insert(exps.iter().map(|e| -e).collect(), c.clone());
        }
        out
    }

    /// Smallest exponent of the given variable across all terms.
    pub fn min_exp(&self, var: &str) -> Option<i64> {
        let idx = self.vars.iter().position(|v| v == var)?;
        self.terms.keys().map(|e| e[idx]).min()
    }

    /// Shifts one variable's exponents by a constant.
    pub fn shift(&self, var: &str, by: i64) -> Self {
        let idx = self
            .vars
            .iter()
            .position(|v| v == var)
            .expect("unknown variable");
        let mut out = Self {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (exps, c) in &self.terms {
            let mut e = exps.clone();
            e[idx] += by;
            out.terms.insert(e, c.clone());
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in ascending exponent order, e.g. `t^-1 - 1 + t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in &self.terms {
            let mono = render_monomial(&self.vars, exps);
            let abs = c.abs();
            let coef_str = if abs.is_one() && !mono.is_empty() {
                String::new()
            } else {
                fmt_rat(&abs)
            };
            let body = match (coef_str.is_empty(), mono.is_empty()) {
                (true, false) => mono,
                (false, true) => coef_str,
                (false, false) => format!("{}*{}", coef_str, mono),
                (true, true) => unreachable!("coefficient 1 with empty monomial renders as 1"),
            };
            if first {
                if c.is_negative() {
                    write!(f, "-{}", body)?;
                } else {
                    write!(f, "{}", body)?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}", body)?;
            } else {
                write!(f, " + {}", body)?;
            }
        }
        Ok(())
    }
}

fn render_monomial(vars: &[String], exps: &[i64]) -> String {
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(exps) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{}^{}", v, e)),
        }
    }
    parts.join("*")
}
