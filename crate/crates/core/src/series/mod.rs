//! Truncated multivariate power series with a few controlled poles.
//!
//! A series knows its truncation cap: coefficients of total degree up to the
//! cap are exact, everything above is discarded. Caps shrink under
//! multiplication by polar factors, and the arithmetic keeps track of that so
//! a comparison never silently reads garbage degrees.
//!
//! Poles are confined to finitely many monomial directions (hair expansions
//! of `1/(t^n - 1)` and the explicit `1/x`, `1/x^2` counterterms). The polar
//! depth counter bounds how singular a product may get; degree 6 is beyond
//! anything the three-loop pipeline produces, so crossing it indicates a bug
//! rather than a deep pole.

mod hair;

pub use hair::{divided_difference, hair_expand};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::scalar::{fmt_rat, rat_int, Rat};

/// Cap assigned to exactly known series such as plain monomials.
pub const EXACT_CAP: i64 = 1_000_000;

/// Largest polar depth any pipeline product is allowed to reach.
pub const POLAR_LIMIT: u32 = 6;

/// Ranks variables into the engine's canonical order.
///
/// The chain variables sandwich the expansion variables: `z1 < x < y < z2`,
/// then `h`, then anything else alphabetically.
fn var_rank(name: &str) -> (u8, &str) {
    match name {
        "z1" => (0, name),
        "x" => (1, name),
        "y" => (2, name),
        "z2" => (3, name),
        "h" => (4, name),
        _ => (5, name),
    }
}

fn canonical_vars(mut vars: Vec<String>) -> Vec<String> {
    vars.sort_by(|a, b| var_rank(a).cmp(&var_rank(b)));
    vars.dedup();
    vars
}

/// Sparse Laurent series truncated at a total-degree cap.
#[derive(Debug, Clone)]
pub struct TruncatedSeries {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, Rat>,
    cap: i64,
    polar_depth: u32,
}

impl TruncatedSeries {
    pub fn zero(vars: &[&str], cap: i64) -> Self {
        Self {
            vars: canonical_vars(vars.iter().map(|v| v.to_string()).collect()),
            terms: BTreeMap::new(),
            cap,
            polar_depth: 0,
        }
    }

    pub fn constant(vars: &[&str], c: Rat, cap: i64) -> Self {
        let mut s = Self::zero(vars, cap);
        if !c.is_zero() {
            s.terms.insert(vec![0; s.vars.len()], c);
        }
        s
    }

    /// An exactly known monomial, polar when the exponent is negative.
    pub fn monomial(vars: &[&str], exps: &[i64], c: Rat) -> Self {
        assert_eq!(vars.len(), exps.len(), "exponent arity mismatch");
        let mut s = Self::zero(vars, EXACT_CAP);
        let mut e = vec![0i64; s.vars.len()];
        for (v, &x) in vars.iter().zip(exps) {
            let pos = s.vars.iter().position(|w| w == v).unwrap();
            e[pos] += x;
        }
        let depth: i64 = e.iter().filter(|&&x| x < 0).map(|&x| -x).sum();
        s.polar_depth = depth as u32;
        if !c.is_zero() {
            s.terms.insert(e, c);
        }
        s
    }

    /// `var^e` with coefficient 1.
    pub fn var_pow(var: &str, e: i64) -> Self {
        Self::monomial(&[var], &[e], Rat::one())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    pub fn polar_depth(&self) -> u32 {
        self.polar_depth
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the monomial with the given exponents, looked up by
    /// variable name so callers need not know the canonical order.
    pub fn coef(&self, spec: &[(&str, i64)]) -> Rat {
        let mut e = vec![0i64; self.vars.len()];
        for (v, x) in spec {
            match self.vars.iter().position(|w| w == v) {
                Some(pos) => e[pos] = *x,
                None if *x == 0 => {}
                None => return Rat::zero(),
            }
        }
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    fn total_degree(e: &[i64]) -> i64 {
        e.iter().sum()
    }

    /// Smallest total degree present, clamped at zero; this is what a factor
    /// contributes to the partner's effective cap in a product.
    fn min_degree_clamped(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| Self::total_degree(e))
            .min()
            .unwrap_or(0)
            .min(0)
    }

    fn add_term(&mut self, exps: &[i64], c: Rat) {
        if c.is_zero() || Self::total_degree(exps) > self.cap {
            return;
        }
        let entry = self.terms.entry(exps.to_vec()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(exps);
        }
    }

    /// Reindexes onto a canonical superset variable list.
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
            cap: self.cap,
            polar_depth: self.polar_depth,
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
        vars.extend(b.vars.iter().cloned());
        let vars = canonical_vars(vars);
        (a.extended(&vars), b.extended(&vars))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = Self::aligned(self, other);
        a.cap = a.cap.min(b.cap);
        a.polar_depth = a.polar_depth.max(b.polar_depth);
        a.terms.retain(|e, _| Self::total_degree(e) <= a.cap);
        for (exps, c) in &b.terms {
            a.add_term(exps, c.clone());
        }
        a.settle_polar_depth();
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
        let mut out = self.clone();
        if k.is_zero() {
            out.terms.clear();
            return out;
        }
        for c in out.terms.values_mut() {
            *c *= k;
        }
        out
    }

    /// Truncated product. The result's cap accounts for each factor's unknown
    /// high-degree tail being shifted down by the partner's polar terms.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::aligned(self, other);
        let depth = a.polar_depth + b.polar_depth;
        if depth > POLAR_LIMIT {
            return Err(Error::PolarOverflow(format!(
                "product would reach polar depth {} (limit {})",
                depth, POLAR_LIMIT
            )));
        }
        let cap = (a.cap.saturating_add(b.min_degree_clamped()))
            .min(b.cap.saturating_add(a.min_degree_clamped()))
            .min(EXACT_CAP);
        let mut out = Self {
            vars: a.vars.clone(),
            terms: BTreeMap::new(),
            cap,
            polar_depth: depth,
        };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(&e, ca * cb);
            }
        }
        out.settle_polar_depth();
        Ok(out)
    }

    /// Recomputes the polar depth from the surviving terms; cancellation can
    /// only lower it.
    fn settle_polar_depth(&mut self) {
        let actual = self
            .terms
            .keys()
            .map(|e| e.iter().filter(|&&x| x < 0).map(|&x| -x).sum::<i64>())
            .max()
            .unwrap_or(0) as u32;
        self.polar_depth = self.polar_depth.min(actual.max(0));
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let mut acc = Self::constant(&vars, Rat::one(), EXACT_CAP);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Substitutes `var -> a * var`.
    pub fn scale_var(&self, var: &str, a: &Rat) -> Result<Self> {
        let Some(idx) = self.vars.iter().position(|v| v == var) else {
            return Ok(self.clone());
        };
        let mut out = self.clone();
        out.terms.clear();
        for (exps, c) in &self.terms {
            let e = exps[idx];
            if a.is_zero() {
                if e < 0 {
                    return Err(Error::SeriesDomain(format!(
                        "cannot send {} to zero across a pole of order {}",
                        var, -e
                    )));
                }
                if e == 0 {
                    out.add_term(exps, c.clone());
                }
                continue;
            }
            out.add_term(exps, c * crate::exact::scalar::rat_pow(a, e));
        }
        out.settle_polar_depth();
        Ok(out)
    }

    /// Formal derivative in one variable.
    pub fn derivative(&self, var: &str) -> Self {
        let Some(idx) = self.vars.iter().position(|v| v == var) else {
            let mut out = self.clone();
            out.terms.clear();
            return out;
        };
        let mut out = self.clone();
        out.terms.clear();
        // Differentiation of the unknown tail at degree cap+1 leaks into
        // degree cap, so the cap drops by one.
        out.cap = self.cap.saturating_sub(1).min(EXACT_CAP);
        for (exps, c) in &self.terms {
            let e = exps[idx];
            if e == 0 {
                continue;
            }
            let mut ne = exps.clone();
            ne[idx] -= 1;
            out.add_term(&ne, c * rat_int(e));
        }
        out.settle_polar_depth();
        out
    }

    /// Splits into (polar, regular): a term is polar when any exponent is
    /// negative.
    pub fn polar_split(&self) -> (Self, Self) {
        let mut polar = self.clone();
        let mut regular = self.clone();
        polar.terms.retain(|e, _| e.iter().any(|&x| x < 0));
        regular.terms.retain(|e, _| e.iter().all(|&x| x >= 0));
        regular.polar_depth = 0;
        polar.settle_polar_depth();
        (polar, regular)
    }

    /// Renames a variable, merging onto the canonical order. Renaming onto an
    /// existing variable folds the exponents together (diagonal restriction).
    pub fn rename_var(&self, from: &str, to: &str) -> Self {
        if from == to || !self.vars.iter().any(|v| v == from) {
            return self.clone();
        }
        let mut vars: Vec<String> = self
            .vars
            .iter()
            .filter(|v| v.as_str() != from)
            .cloned()
            .collect();
        if !vars.iter().any(|v| v == to) {
            vars.push(to.to_string());
        }
        let vars = canonical_vars(vars);
        let from_idx = self.vars.iter().position(|v| v == from).unwrap();
        let mut out = Self {
            vars: vars.clone(),
            terms: BTreeMap::new(),
            cap: self.cap,
            polar_depth: self.polar_depth,
        };
        for (exps, c) in &self.terms {
            let mut e = vec![0i64; vars.len()];
            for (i, v) in self.vars.iter().enumerate() {
                let name = if i == from_idx { to } else { v.as_str() };
                let pos = vars.iter().position(|w| w == name).unwrap();
                e[pos] += exps[i];
            }
            out.add_term(&e, c.clone());
        }
        out.settle_polar_depth();
        out
    }

    /// Swaps two variables.
    pub fn swap_vars(&self, a: &str, b: &str) -> Result<Self> {
        let has = |v: &str| self.vars.iter().any(|w| w == v);
        if !has(a) || !has(b) {
            return Err(Error::SeriesDomain(format!(
                "cannot swap {} and {}: series lives in ({})",
                a,
                b,
                self.vars.join(", ")
            )));
        }
        let ia = self.vars.iter().position(|v| v == a).unwrap();
        let ib = self.vars.iter().position(|v| v == b).unwrap();
        let mut out = self.clone();
        out.terms.clear();
        for (exps, c) in &self.terms {
            let mut e = exps.clone();
            e.swap(ia, ib);
            out.terms.insert(e, c.clone());
        }
        Ok(out)
    }

    /// Averages with the image under a variable swap.
    pub fn symmetrize(&self, a: &str, b: &str) -> Result<Self> {
        let swapped = self.swap_vars(a, b)?;
        Ok(self
            .add(&swapped)
            .scalar_mul(&crate::exact::scalar::rat(1, 2)))
    }

    /// Lowers the cap, discarding now-unfaithful terms. Raising is refused:
    /// the discarded tail cannot be recovered.
    pub fn truncate_to(&self, cap: i64) -> Result<Self> {
        if cap > self.cap {
            return Err(Error::SeriesDomain(format!(
                "cannot raise cap from {} to {}",
                self.cap, cap
            )));
        }
        let mut out = self.clone();
        out.cap = cap;
        out.terms.retain(|e, _| Self::total_degree(e) <= cap);
        out.settle_polar_depth();
        Ok(out)
    }

    /// Exponential of a series with zero constant term and no poles.
    pub fn exp(&self) -> Result<Self> {
        if self.polar_depth > 0 || self.terms.keys().any(|e| e.iter().any(|&x| x < 0)) {
            return Err(Error::SeriesDomain("exp of a polar series".into()));
        }
        if !self.coef_at_origin().is_zero() {
            return Err(Error::SeriesDomain("exp needs a zero constant term".into()));
        }
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let mut acc = Self::constant(&vars, Rat::one(), self.cap);
        let mut term = Self::constant(&vars, Rat::one(), self.cap);
        let mut k = 1i64;
        loop {
            term = term.mul(self)?.scalar_mul(&Rat::new(1.into(), k.into()));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
            k += 1;
        }
        Ok(acc)
    }

    /// Logarithm of a series with constant term 1 and no poles.
    pub fn log(&self) -> Result<Self> {
        if self.polar_depth > 0 || self.terms.keys().any(|e| e.iter().any(|&x| x < 0)) {
            return Err(Error::SeriesDomain("log of a polar series".into()));
        }
        if !self.coef_at_origin().is_one() {
            return Err(Error::SeriesDomain(
                "log needs a constant term equal to 1".into(),
            ));
        }
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let u = self.sub(&Self::constant(&vars, Rat::one(), self.cap));
        let mut acc = Self::zero(&vars, self.cap);
        let mut power = Self::constant(&vars, Rat::one(), self.cap);
        let mut k = 1i64;
        loop {
            power = power.mul(&u)?;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scalar_mul(&Rat::new(sign.into(), k.into())));
            k += 1;
        }
        Ok(acc)
    }

    fn coef_at_origin(&self) -> Rat {
        self.terms
            .get(&vec![0i64; self.vars.len()])
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Multiplicative inverse of a unit series (nonzero constant term, no
    /// poles), computed by geometric iteration.
    pub fn invert_unit(&self) -> Result<Self> {
        if self.polar_depth > 0 || self.terms.keys().any(|e| e.iter().any(|&x| x < 0)) {
            return Err(Error::SeriesDomain("inverse of a polar series".into()));
        }
        let c0 = self.coef_at_origin();
        if c0.is_zero() {
            return Err(Error::SeriesDomain(
                "inverse needs a nonzero constant term".into(),
            ));
        }
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let normalized = self.scalar_mul(&c0.recip());
        let u = Self::constant(&vars, Rat::one(), self.cap).sub(&normalized);
        let mut acc = Self::constant(&vars, Rat::one(), self.cap);
        let mut power = Self::constant(&vars, Rat::one(), self.cap);
        loop {
            power = power.mul(&u)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.scalar_mul(&c0.recip()))
    }
}

impl PartialEq for TruncatedSeries {
    /// Equality up to the smaller cap: both series must agree on every term
    /// of total degree at most min(cap_a, cap_b).
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::aligned(self, other);
        let cap = a.cap.min(b.cap);
        let within = |s: &Self| {
            s.terms
                .iter()
                .filter(|(e, _)| Self::total_degree(e) <= cap)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect::<BTreeMap<_, _>>()
        };
        within(&a) == within(&b)
    }
}

impl Eq for TruncatedSeries {}

impl fmt::Display for TruncatedSeries {
    /// Terms by increasing total degree, then lexicographically.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut entries: Vec<(&Vec<i64>, &Rat)> = self.terms.iter().collect();
        entries.sort_by_key(|(e, _)| (Self::total_degree(e), (*e).clone()));
        let mut first = true;
        for (exps, c) in entries {
            let mono = {
                let mut parts = Vec::new();
                for (v, &e) in self.vars.iter().zip(exps.iter()) {
                    match e {
                        0 => {}
                        1 => parts.push(v.clone()),
                        _ => parts.push(format!("{}^{}", v, e)),
                    }
                }
                parts.join("*")
            };
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
                (true, true) => unreachable!(),
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
