//! The cabling pipeline for torus knots.
//!
//! The (p, q) torus knot is the p-cable of the unknot with q/p twists, so its
//! invariant is built in three steps: write the cable exponent in terms of
//! the unknot wheel series `f` evaluated at multiples of the twist ratio
//! q/p, push the series through the p-fold disjoint-to-connected relabeling
//! (every leg picks up a factor p), and correct by the wheels element and
//! the framing change so the final strut vanishes. The assembled result must
//! agree with the direct closed-form invariant; keeping both routes is the
//! point, as the agreement is a nontrivial check on every term.

pub mod rational;

use num_integer::Integer;
use num_traits::Zero;

use crate::diagram::{
    BracketTerm, ChainPart, ClosedPart, DumbbellPart, LoopGradedInvariant, WheelPart,
};
use crate::error::{Error, Result};
use crate::exact::scalar::{rat, rat_int, rat_pow, Rat};
use crate::glue::omega_two_point;
use crate::series::TruncatedSeries;
use crate::wheels::{c_series, f_series};

/// Torus knot parameters and the working degree cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusParams {
    pub p: i64,
    pub q: i64,
    /// Total-degree cap for every series part of the result.
    pub cap: i64,
}

impl TorusParams {
    pub fn new(p: i64, q: i64, cap: i64) -> Result<Self> {
        if p < 1 {
            return Err(Error::Parameter(format!("p must be positive, got {}", p)));
        }
        if q == 0 {
            return Err(Error::Parameter("q must be nonzero".into()));
        }
        if p.gcd(&q.abs()) != 1 {
            return Err(Error::Parameter(format!(
                "p and q must be coprime, got ({}, {})",
                p, q
            )));
        }
        if cap < 2 {
            return Err(Error::Parameter(format!(
                "degree cap must be at least 2, got {}",
                cap
            )));
        }
        Ok(Self { p, q, cap })
    }

    pub fn pq(&self) -> i64 {
        self.p * self.q
    }
}

/// `f'(n x)` as a series in `var`, faithful to `cap`.
pub(crate) fn fp_series(n: i64, var: &str, cap: i64) -> Result<TruncatedSeries> {
    Ok(f_series(cap + 1)
        .derivative("x")
        .scale_var("x", &rat_int(n))?
        .rename_var("x", var))
}

/// `f''(n x)` as a series in `var`.
pub(crate) fn fpp_series(n: i64, var: &str, cap: i64) -> Result<TruncatedSeries> {
    Ok(f_series(cap + 2)
        .derivative("x")
        .derivative("x")
        .scale_var("x", &rat_int(n))?
        .rename_var("x", var))
}

/// `c'(x)` in `var`.
pub(crate) fn cp_series(p: i64, q: i64, var: &str, cap: i64) -> Result<TruncatedSeries> {
    Ok(c_series(p, q, cap + 1).derivative("x").rename_var("x", var))
}

/// `c''(x)` in `var`.
pub(crate) fn cpp_series(p: i64, q: i64, var: &str, cap: i64) -> Result<TruncatedSeries> {
    Ok(c_series(p, q, cap + 2)
        .derivative("x")
        .derivative("x")
        .rename_var("x", var))
}

fn chain3(
    coef: &Rat,
    end1: &TruncatedSeries,
    mid: &TruncatedSeries,
    end2: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    Ok(end1.mul(mid)?.mul(end2)?.scalar_mul(coef))
}

/// The chain summand of the 3-loop part, every factor a full power series.
pub(crate) fn chain_lines(p: i64, q: i64, cap: i64) -> Result<ChainPart> {
    let pq = p * q;
    let fp = |n: i64, var: &str| fp_series(n, var, cap);
    let fpp = |n: i64| fpp_series(n, "x", cap);
    let cp = |var: &str| cp_series(p, q, var, cap);
    let half = rat(1, 2);
    let mut s = chain3(&half, &fp(p, "z1")?, &fpp(q)?, &fp(p, "z2")?)?;
    s = s.add(&chain3(&half, &fp(q, "z1")?, &fpp(p)?, &fp(q, "z2")?)?);
    s = s.add(&chain3(
        &half,
        &fp(pq, "z1")?,
        &cpp_series(p, q, "x", cap)?,
        &fp(pq, "z2")?,
    )?);
    s = s.add(&chain3(&-half, &cp("z1")?, &fpp(pq)?, &cp("z2")?)?);
    // The cabling derivation acts on the middle wheel of the pq-chain; each
    // of its three summands lands back in chain shape.
    s = s.add(&chain3(
        &rat_int(-p),
        &fp(pq, "z1")?,
        &fpp(p)?,
        &fp(q, "z2")?,
    )?);
    s = s.add(&chain3(
        &rat_int(-q),
        &fp(pq, "z1")?,
        &fpp(q)?,
        &fp(p, "z2")?,
    )?);
    s = s.add(&chain3(
        &rat_int(pq),
        &fp(pq, "z1")?,
        &fpp(pq)?,
        &cp("z2")?,
    )?);
    Ok(ChainPart::new(s.truncate_to(cap.min(s.cap()))?))
}

/// The connected exponent of the q/p-twisted p-cable pattern, before the
/// disjoint-to-connected relabeling.
pub fn cable_exponent(params: &TorusParams) -> Result<LoopGradedInvariant> {
    let (p, q, cap) = (params.p, params.q, params.cap);
    let a = rat(q, p);
    let f = f_series(cap + 2);
    let z1 = f.add(&f.scale_var("x", &a)?).truncate_to(cap)?;
    let fprime = f_series(cap + 3).derivative("x");
    let fprime_a = fprime.scale_var("x", &a)?;
    let z2 = fprime
        .rename_var("x", "y")
        .mul(&fprime_a)?
        .truncate_to(cap)?;
    // First chain: (1/2) f'(z1) f''(a x) f'(z2). Scale after differentiating,
    // since the label is f'' evaluated at a x, not the derivative of f'(a x).
    let fsecond_a = fprime.derivative("x").scale_var("x", &a)?;
    let chain1 = chain3(
        &rat(1, 2),
        &fprime.rename_var("x", "z1"),
        &fsecond_a,
        &fprime.rename_var("x", "z2"),
    )?;
    // Second chain and the bracket come from the two-point gluings of the
    // wheel pair {f(a x), f(x)}.
    let (bracket, chain2) = omega_two_point(&a, cap)?;
    let chain = ChainPart::new(chain1.truncate_to(cap)?).add(&chain2);
    let inv = LoopGradedInvariant {
        strut: rat(q, 2 * p),
        z1: WheelPart::new(z1),
        z2: DumbbellPart::new(z2),
        z3_chain: chain,
        z3_brackets: vec![bracket],
        closed: ClosedPart::zero(),
    };
    Ok(inv.canonicalize())
}

/// Relabels a connected invariant of the k-fold disjoint cover: every leg
/// carries a factor k, so each series variable is scaled by k and the strut
/// (two legs) by k^2. A bracket's wheels lose two legs each to the double
/// gluing, hence its coefficient picks up k^{-4}.
pub fn rescale_legs(inv: &LoopGradedInvariant, k: i64) -> Result<LoopGradedInvariant> {
    if k < 1 {
        return Err(Error::Parameter(format!(
            "leg rescaling needs a positive factor, got {}",
            k
        )));
    }
    let kk = rat_int(k);
    let scale_all = |s: &TruncatedSeries| -> Result<TruncatedSeries> {
        let mut out = s.clone();
        for var in s.vars().to_vec() {
            out = out.scale_var(&var, &kk)?;
        }
        Ok(out)
    };
    let out = LoopGradedInvariant {
        strut: &inv.strut * &kk * &kk,
        z1: WheelPart::new(scale_all(&inv.z1.series)?),
        z2: DumbbellPart::new(scale_all(&inv.z2.series)?),
        z3_chain: ChainPart::new(scale_all(&inv.z3_chain.series)?),
        z3_brackets: inv
            .z3_brackets
            .iter()
            .map(|b| {
                Ok(BracketTerm::new(
                    &b.coef * rat_pow(&kk, -4),
                    scale_all(&b.g)?,
                    scale_all(&b.h)?,
                ))
            })
            .collect::<Result<_>>()?,
        closed: inv.closed.clone(),
    };
    Ok(out.canonicalize())
}

/// Assembles the invariant from the cable route: rescale the cable exponent
/// by p, absorb the wheels correction, subtract the commuting-square terms,
/// apply the derivation action, and drop the framing strut.
pub fn unwheel_assemble(params: &TorusParams) -> Result<LoopGradedInvariant> {
    let (p, q, cap) = (params.p, params.q, params.cap);
    let pq = params.pq();
    let mut inv = rescale_legs(&cable_exponent(params)?, p)?;
    inv.strut -= rat(pq, 2);
    // Wheels correction at frequency pq: the z1 wheels lose f(pq x), and the
    // 3-loop part gains one chain and one bracket.
    inv.z1 = WheelPart::new(
        inv.z1
            .series
            .sub(&f_series(cap + 2).scale_var("x", &rat_int(pq))?)
            .truncate_to(cap)?,
    );
    let u_chain = chain3(
        &rat(1, 2),
        &fp_series(pq, "z1", cap)?,
        &cpp_series(p, q, "x", cap)?,
        &fp_series(pq, "z2", cap)?,
    )?;
    inv.z3_brackets.push(BracketTerm::new(
        rat(-1, pq * pq),
        f_series(cap + 2)
            .scale_var("x", &rat_int(pq))?
            .truncate_to(cap)?,
        c_series(p, q, cap),
    ));
    // Commuting-square subtraction on the 2- and 3-loop parts.
    let cp_x = cp_series(p, q, "x", cap)?;
    inv.z2 = DumbbellPart::new(
        inv.z2
            .series
            .sub(&cp_x.mul(&fp_series(pq, "y", cap)?)?)
            .truncate_to(cap)?,
    );
    let square_chain = chain3(
        &rat(-1, 2),
        &cp_series(p, q, "z1", cap)?,
        &fpp_series(pq, "x", cap)?,
        &cp_series(p, q, "z2", cap)?,
    )?;
    // Derivation action on the middle wheel of the pq-chain.
    let trio = chain3(
        &rat_int(-p),
        &fp_series(pq, "z1", cap)?,
        &fpp_series(p, "x", cap)?,
        &fp_series(q, "z2", cap)?,
    )?
    .add(&chain3(
        &rat_int(-q),
        &fp_series(pq, "z1", cap)?,
        &fpp_series(q, "x", cap)?,
        &fp_series(p, "z2", cap)?,
    )?)
    .add(&chain3(
        &rat_int(pq),
        &fp_series(pq, "z1", cap)?,
        &fpp_series(pq, "x", cap)?,
        &cp_series(p, q, "z2", cap)?,
    )?);
    let extra = u_chain.add(&square_chain).add(&trio);
    inv.z3_chain = inv
        .z3_chain
        .add(&ChainPart::new(extra.truncate_to(cap.min(extra.cap()))?));
    inv.closed = ClosedPart {
        theta2: rational::closed_theta2_z3(params)?,
        theta3: Rat::zero(),
    };
    Ok(inv.canonicalize())
}

/// The unwheeled invariant of the (p, q) torus knot through loop degree 3,
/// written directly from its closed form.
pub fn torus_invariant(params: &TorusParams) -> Result<LoopGradedInvariant> {
    let (p, q, cap) = (params.p, params.q, params.cap);
    let pq = params.pq();
    let z1 = c_series(p, q, cap);
    let z2 = fp_series(p, "y", cap)?
        .mul(&fp_series(q, "x", cap)?)?
        .sub(&cp_series(p, q, "x", cap)?.mul(&fp_series(pq, "y", cap)?)?)
        .truncate_to(cap)?;
    // Brackets carry extra degrees so their chain reduction stays faithful
    // to the cap: the reduction divides by the gluing edges.
    let bcap = cap + 4;
    let f_at = |n: i64| -> Result<TruncatedSeries> {
        f_series(bcap + 2)
            .scale_var("x", &rat_int(n))?
            .truncate_to(bcap)
    };
    let brackets = vec![
        BracketTerm::new(rat(1, pq * pq), f_at(q)?, f_at(p)?),
        BracketTerm::new(rat(-1, pq * pq), f_at(pq)?, c_series(p, q, bcap)),
    ];
    let inv = LoopGradedInvariant {
        strut: Rat::zero(),
        z1: WheelPart::new(z1),
        z2: DumbbellPart::new(z2),
        z3_chain: chain_lines(p, q, cap)?,
        z3_brackets: brackets,
        closed: ClosedPart {
            theta2: rational::closed_theta2_z3(params)?,
            theta3: Rat::zero(),
        },
    };
    Ok(inv.canonicalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: i64, q: i64, cap: i64) -> TorusParams {
        TorusParams::new(p, q, cap).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(TorusParams::new(0, 3, 8).is_err());
        assert!(TorusParams::new(2, 0, 8).is_err());
        assert!(TorusParams::new(2, 4, 8).is_err());
        assert!(TorusParams::new(2, 3, 1).is_err());
        assert!(TorusParams::new(2, -3, 8).is_ok());
        assert!(TorusParams::new(1, 1, 8).is_ok());
    }

    #[test]
    fn cable_exponent_displayed_coefficients() {
        let inv = cable_exponent(&params(2, 3, 6)).unwrap();
        assert_eq!(inv.strut, rat(3, 4));
        // Wheels: f(x) + f((3/2)x), x^2 coefficient (1/48)(1 + 9/4).
        assert_eq!(
            inv.z1.series.coef(&[("x", 2)]),
            rat(1, 48) * (rat_int(1) + rat(9, 4))
        );
        assert_eq!(inv.z3_brackets.len(), 1);
        assert_eq!(inv.z3_brackets[0].coef, rat(4, 9));
    }

    #[test]
    fn rescaling_by_one_is_the_identity() {
        let inv = cable_exponent(&params(2, 3, 6)).unwrap();
        assert_eq!(rescale_legs(&inv, 1).unwrap(), inv);
    }

    #[test]
    fn rescaling_turns_twist_wheels_into_integer_wheels() {
        let inv = rescale_legs(&cable_exponent(&params(2, 3, 8)).unwrap(), 2).unwrap();
        assert_eq!(inv.strut, rat(3, 1));
        let f = f_series(10);
        let expect = f
            .scale_var("x", &rat_int(2))
            .unwrap()
            .add(&f.scale_var("x", &rat_int(3)).unwrap())
            .truncate_to(8)
            .unwrap();
        assert_eq!(inv.z1.series, expect);
        // Bracket coefficient (p^2/q^2) p^{-4} = 1/(p^2 q^2).
        assert_eq!(inv.z3_brackets[0].coef, rat(1, 36));
    }

    #[test]
    fn assembly_matches_the_direct_invariant() {
        for (p, q) in [(2i64, 3i64), (3, 4)] {
            let pr = params(p, q, 6);
            let a = unwheel_assemble(&pr).unwrap();
            let b = torus_invariant(&pr).unwrap();
            assert_eq!(a, b, "({}, {})", p, q);
            assert_eq!(a.strut, rat_int(0));
        }
    }

    #[test]
    fn trefoil_two_loop_corner_coefficient() {
        let inv = torus_invariant(&params(2, 3, 6)).unwrap();
        assert_eq!(inv.z2.series.coef(&[("x", 1), ("y", 1)]), rat(1, 4));
        assert!(inv.has_pipeline_parity());
    }

    #[test]
    fn unknot_parameters_leave_only_the_unknot_wheels() {
        for q in [1i64, 5] {
            let inv = torus_invariant(&params(1, q, 8)).unwrap();
            assert_eq!(inv.strut, rat_int(0));
            assert!(inv.z1.series.sub(&f_series(8)).is_zero(), "q = {}", q);
            assert!(inv.z2.series.is_zero());
            assert!(inv.z3_chain.series.is_zero());
            assert!(inv.z3_brackets.is_empty());
            assert!(inv.closed.is_zero());
        }
    }

    #[test]
    fn invariant_is_symmetric_in_p_and_q() {
        let a = torus_invariant(&params(2, 3, 6)).unwrap();
        let b = torus_invariant(&params(3, 2, 6)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mirror_flips_exactly_the_two_loop_part() {
        let a = torus_invariant(&params(2, 3, 6)).unwrap();
        let b = torus_invariant(&params(2, -3, 6)).unwrap();
        assert_eq!(b.z1, a.z1);
        assert_eq!(b.z2.series, a.z2.series.scalar_mul(&rat_int(-1)));
        assert_eq!(b.z3_chain, a.z3_chain);
        assert_eq!(b.closed, a.closed);
    }
}
