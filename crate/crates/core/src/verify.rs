//! The identity suite: every internal consistency check the construction is
//! supposed to satisfy, runnable per parameter set and over sweep grids.

use num_integer::Integer;
use num_traits::Zero;

use crate::cover::{lift_chain, lift_dumbbell, lift_edge, lmo_theta2, CoverParams};
use crate::diagram::ChainPart;
use crate::error::{Error, Result};
use crate::exact::scalar::{rat, rat_int};
use crate::glue::bracket_to_chain;
use crate::pipeline::rational::{
    fractional_residual_closed_form, verify_closed_normalization, z1_rational, z2_rational,
    z3_rational, RationalChain, RationalDumbbell,
};
use crate::pipeline::{chain_lines, torus_invariant, unwheel_assemble, TorusParams};
use crate::series::{hair_expand, TruncatedSeries};
use crate::wheels::{c_series, f_series, HyperbolicForm};

/// Outcome of one named identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl IdentityReport {
    fn ok(name: &str) -> Self {
        Self {
            name: name.to_string(),
            pass: true,
            details: String::new(),
        }
    }

    fn fail(name: &str, details: String) -> Self {
        Self {
            name: name.to_string(),
            pass: false,
            details,
        }
    }

    fn from(name: &str, pass: bool, details: &str) -> Self {
        if pass {
            Self::ok(name)
        } else {
            Self::fail(name, details.to_string())
        }
    }

    /// One stable output line, `PASS name` or `FAIL name: details`.
    pub fn line(&self) -> String {
        if self.pass {
            format!("PASS {}", self.name)
        } else if self.details.is_empty() {
            format!("FAIL {}", self.name)
        } else {
            format!("FAIL {}: {}", self.name, self.details)
        }
    }
}

/// Runs every identity the torus construction satisfies at these parameters.
pub fn verify_torus(params: &TorusParams) -> Result<Vec<IdentityReport>> {
    let (p, q, cap) = (params.p, params.q, params.cap);
    let mut out = Vec::new();
    let star = torus_invariant(params)?;

    let assembled = unwheel_assemble(params)?;
    out.push(IdentityReport::from(
        "assembly equals direct invariant",
        assembled == star && assembled.strut.is_zero(),
        "cable-route assembly disagrees with the closed form",
    ));

    let d = z1_rational(params)?;
    let one_loop = hair_expand(&d, "x", cap)?.log()?.scalar_mul(&rat(-1, 2));
    out.push(IdentityReport::from(
        "one-loop part is minus half the log of the Alexander form",
        one_loop == c_series(p, q, cap).sub(&f_series(cap)),
        "rationalized one-loop part disagrees with the wheel series",
    ));

    let z2r = z2_rational(params)?.to_series(cap)?;
    out.push(IdentityReport::from(
        "two-loop rational form expands to the invariant",
        z2r == star.z2.series && z2r.polar_depth() == 0,
        "two-loop expansion or its pole cancellation failed",
    ));

    let full = chain_lines(p, q, cap)?;
    let hyp = z3_rational(params)?.to_series(cap)?;
    let closed_form = fractional_residual_closed_form(params)?;
    out.push(IdentityReport::from(
        "three-loop rational form plus the residual closed form recovers the chains",
        full == hyp.add(&closed_form),
        "three-loop split is inconsistent",
    ));

    let residual = full.sub(&hyp);
    let depth_ok = if residual.series.is_zero() {
        true
    } else {
        residual.series.polar_depth() == 2
    };
    out.push(IdentityReport::from(
        "fractional residual collapses to its closed form",
        residual == closed_form && depth_ok,
        "residual disagrees with the double-pole chain form",
    ));

    let mut reduced = ChainPart::new(TruncatedSeries::zero(&["z1", "x", "z2"], cap));
    for b in &star.z3_brackets {
        reduced = reduced.add(&bracket_to_chain(b, cap)?);
    }
    out.push(IdentityReport::from(
        "bracket terms cancel the residual",
        reduced.series == residual.series.scalar_mul(&rat_int(-1)),
        "bracket reduction does not cancel the residual",
    ));

    match verify_closed_normalization(params) {
        Ok(pass) => out.push(IdentityReport::from(
            "closed theta normalization",
            pass,
            "closed-diagram normalization identity failed",
        )),
        Err(Error::Verification(msg)) => {
            out.push(IdentityReport::fail("closed theta normalization", msg))
        }
        Err(e) => return Err(e),
    }

    out.push(IdentityReport::from(
        "leg parity",
        star.has_pipeline_parity(),
        "a loop part has support outside its parity class",
    ));

    if q > 0 {
        let swapped = torus_invariant(&TorusParams::new(q, p, cap)?)?;
        out.push(IdentityReport::from(
            "symmetry in the two parameters",
            swapped == star,
            "invariant is not symmetric under swapping p and q",
        ));
    }

    if p == 1 || q.abs() == 1 {
        let trivial = star.z2.series.is_zero()
            && star.z3_chain.series.is_zero()
            && star.z3_brackets.is_empty()
            && star.closed.is_zero()
            && star.z1.series.sub(&f_series(cap)).is_zero();
        out.push(IdentityReport::from(
            "unknot degeneration",
            trivial,
            "unknot parameters left a nontrivial higher part",
        ));
    }

    Ok(out)
}

/// Runs the covering-specific identities for one (p, q, r) triple.
pub fn verify_cover(cover: &CoverParams) -> Result<Vec<IdentityReport>> {
    let (p, q, r) = (cover.p, cover.q, cover.r);
    let params = TorusParams::new(p, q, 8)?;
    let mut out = Vec::new();

    let mut edge_ok = true;
    for n in [p, q.abs(), (p * q).abs()] {
        let f1 = HyperbolicForm::f1(n).to_rational("t");
        let f2 = HyperbolicForm::f2(n).to_rational("t");
        edge_ok &= lift_edge(&f1, r)? == f1;
        edge_ok &= lift_edge(&f2, r)? == f2.scalar_mul(&rat_int(r));
    }
    out.push(IdentityReport::from(
        "edge lift laws",
        edge_ok,
        "a basic edge factor did not lift by the expected law",
    ));

    let z2 = z2_rational(&params)?;
    let z2_scaled = RationalDumbbell::new(
        z2.terms
            .iter()
            .map(|(c, a, b)| (c * rat_int(r), a.clone(), b.clone()))
            .collect(),
    );
    let z3 = z3_rational(&params)?;
    let z3_scaled = RationalChain::new(
        z3.terms
            .iter()
            .map(|(c, e1, m, e2)| (c * rat_int(r * r), e1.clone(), m.clone(), e2.clone()))
            .collect(),
    );
    out.push(IdentityReport::from(
        "lift scales loop degrees by the covering order",
        lift_dumbbell(&z2, r)? == z2_scaled && lift_chain(&z3, r)? == z3_scaled,
        "lifted coloring is not the expected multiple",
    ));

    match lmo_theta2(cover) {
        Ok(_) => out.push(IdentityReport::ok("surgery theta2 closed form")),
        Err(Error::Verification(msg)) => {
            out.push(IdentityReport::fail("surgery theta2 closed form", msg))
        }
        Err(e) => return Err(e),
    }

    Ok(out)
}

/// Coprime pairs 1 <= p < q <= 7, the default verification grid.
pub fn sweep_pairs() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for p in 1..=7i64 {
        for q in (p + 1)..=7 {
            if p.gcd(&q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

/// Covering orders {2, 3, 5} over the sweep pairs, coprimality-filtered.
pub fn sweep_triples() -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for (p, q) in sweep_pairs() {
        for r in [2i64, 3, 5] {
            if r.gcd(&p) == 1 && r.gcd(&q) == 1 {
                out.push((p, q, r));
            }
        }
    }
    out
}
