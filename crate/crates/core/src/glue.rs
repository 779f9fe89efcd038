//! Gluing operations on wheel series.
//!
//! Gluing two series of wheels at one point differentiates both sides: legs
//! pair off, and a series `s` offers `s'` worth of legs at the contact point.
//! Two-point gluings of a wheel pair produce the bracket shape plus a chain
//! whose middle wheel degenerates; the bracket is later reduced to a chain
//! with a `1/x^2` middle by sliding legs across the double edge.

use num_traits::Zero;

use crate::diagram::{BracketTerm, ChainPart, DumbbellPart, WheelPart};
use crate::error::{Error, Result};
use crate::exact::scalar::{rat, rat_pow, Rat};
use crate::series::{divided_difference, TruncatedSeries};
use crate::wheels::f_series;

fn require_regular(s: &TruncatedSeries, what: &str) -> Result<()> {
    if s.terms().keys().any(|e| e.iter().any(|&x| x < 0)) {
        return Err(Error::SeriesDomain(format!(
            "{} must be a regular series of wheels",
            what
        )));
    }
    Ok(())
}

/// One-point gluing of two wheel series: `g'(x) h'(y)`, canonicalized.
pub fn glue_wheels_one_point(g: &WheelPart, h: &WheelPart) -> Result<DumbbellPart> {
    require_regular(&g.series, "wheel series")?;
    require_regular(&h.series, "wheel series")?;
    let gp = g.series.derivative("x");
    let hp = h.series.derivative("x").rename_var("x", "y");
    Ok(DumbbellPart::new(gp.mul(&hp)?))
}

/// One-point gluing of a wheel series into a dumbbell `d(x, y)`.
///
/// Writing `d` as a sum of products `u(x) v(y)` (any regular series is such a
/// sum, monomial by monomial, and the rule below is bilinear so the
/// decomposition does not matter), the new wheel attaches to either factor:
///
/// ```text
/// g ⊔ u(x)v(y)  ↦  g'·u'·v + g'·v'·u
/// ```
///
/// The factor that was glued becomes the middle wheel of a chain; the result
/// is relabeled so the middle variable is `x` and the outer ones `z1, z2`.
pub fn glue_wheel_into_dumbbell(g: &WheelPart, d: &DumbbellPart) -> Result<ChainPart> {
    require_regular(&g.series, "wheel series")?;
    if d.series.terms().keys().any(|e| e.iter().any(|&x| x < 0)) {
        return Err(Error::Structure(
            "dumbbell must be a sum of products of regular wheel series".into(),
        ));
    }
    let gp = g.series.derivative("x");
    let g_z1 = gp.rename_var("x", "z1");
    let g_z2 = gp.rename_var("x", "z2");
    let pos = |v: &str| d.series.vars().iter().position(|w| w == v);
    let (Some(ix), Some(iy)) = (pos("x"), pos("y")) else {
        return Ok(ChainPart::new(TruncatedSeries::zero(
            &["z1", "x", "z2"],
            d.series.cap(),
        )));
    };
    let cap = d.series.cap();
    let mut acc = TruncatedSeries::zero(&["z1", "x", "z2"], cap.saturating_sub(1));
    for (exps, c) in d.series.terms() {
        let (a, b) = (exps[ix], exps[iy]);
        // u = x^a glued: g'(z1) * a x^(a-1) * z2^b
        if a > 0 {
            let mid = TruncatedSeries::monomial(&["x", "z2"], &[a - 1, b], c * rat(a, 1))
                .truncate_to(acc.cap())?;
            acc = acc.add(&g_z1.mul(&mid)?);
        }
        // v = y^b glued: z1^a * b x^(b-1) * g'(z2)
        if b > 0 {
            let mid = TruncatedSeries::monomial(&["z1", "x"], &[a, b - 1], c * rat(b, 1))
                .truncate_to(acc.cap())?;
            acc = acc.add(&mid.mul(&g_z2)?);
        }
    }
    Ok(ChainPart::new(acc))
}

/// Two-point gluings of the derived wheel pair `f(a x)` with `f(x)`:
/// the bracket `a^{-2} [f(ax), f(x)]` plus the chain
/// `(1/2) f'(a z1) f''(x) f'(a z2)`, both at cap `n`.
pub fn omega_two_point(a: &Rat, n: i64) -> Result<(BracketTerm, ChainPart)> {
    if a.is_zero() {
        return Err(Error::Parameter(
            "two-point gluing needs a nonzero leg ratio".into(),
        ));
    }
    let f = f_series(n + 2);
    let fa = f.scale_var("x", a)?.truncate_to(n)?;
    let bracket = BracketTerm::new(rat_pow(a, -2), fa, f.truncate_to(n)?);
    let fp = f_series(n + 2).derivative("x");
    let fpp = fp.derivative("x");
    let fpa = fp.scale_var("x", a)?;
    let chain = fpa
        .rename_var("x", "z1")
        .mul(&fpp)?
        .mul(&fpa.rename_var("x", "z2"))?
        .scalar_mul(&rat(1, 2));
    Ok((
        bracket,
        ChainPart::new(chain.truncate_to(n.min(chain.cap()))?),
    ))
}

/// Reduces a bracket to its chain presentation.
///
/// Both gluing points of `coef * [g, h]` sit on the same pair of edges, so
/// each side contributes the divided difference of its wheel series across
/// the two attachment points, restricted to the diagonal (where it is the
/// derivative), and the middle wheel degenerates to the double edge `1/x^2`.
/// A factor 1/2 compensates for the ordering of the two gluings:
///
/// ```text
/// coef * [g, h]  ↦  (coef/2) * sym_{z1<->z2}( g'(z1) x^{-2} h'(z2) )
/// ```
///
/// This placement of the divided differences is the one that makes the
/// bracket line of the 3-loop invariant cancel the fractional residual; the
/// pipeline tests lock it in.
pub fn bracket_to_chain(b: &BracketTerm, n: i64) -> Result<ChainPart> {
    let side = |s: &TruncatedSeries, var: &str| -> Result<TruncatedSeries> {
        let dd = divided_difference(s, var, "h")?;
        Ok(dd.rename_var("h", var))
    };
    let g_side = side(&b.g, "z1")?;
    let h_side = side(&b.h, "z2")?;
    let middle = TruncatedSeries::var_pow("x", -2);
    let chain = g_side
        .mul(&middle)?
        .mul(&h_side)?
        .scalar_mul(&(&b.coef * rat(1, 2)));
    let cap = n.min(chain.cap());
    Ok(ChainPart::new(chain.truncate_to(cap)?))
}

/// Coefficient of the 2-edge theta graph in the connected pairing of two
/// wheel series: only the 2-wheels contribute, and the two legs of one glue
/// onto the two legs of the other in 2 ways.
pub fn pair_wheels_theta2(a: &WheelPart, b: &WheelPart) -> Rat {
    rat(2, 1) * a.two_wheel_coef() * b.two_wheel_coef()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat_int;
    use num_traits::One;

    fn wheel(exps: &[(i64, i64)]) -> WheelPart {
        let mut s = TruncatedSeries::zero(&["x"], 12);
        for &(e, c) in exps {
            s = s.add(
                &TruncatedSeries::monomial(&["x"], &[e], rat_int(c))
                    .truncate_to(12)
                    .unwrap(),
            );
        }
        WheelPart::new(s)
    }

    #[test]
    fn one_point_gluing_counts_leg_pairings() {
        // Two 2-wheels: 2 legs x 2 legs = 4 copies of the dumbbell xy.
        let d = glue_wheels_one_point(&wheel(&[(2, 1)]), &wheel(&[(2, 1)])).unwrap();
        assert_eq!(d.series.coef(&[("x", 1), ("y", 1)]), rat_int(4));
        assert_eq!(d.series.terms().len(), 1);
    }

    #[test]
    fn gluing_a_constant_gives_zero() {
        let d = glue_wheels_one_point(&wheel(&[(0, 7)]), &wheel(&[(2, 1)])).unwrap();
        assert!(d.series.is_zero());
    }

    #[test]
    fn one_point_gluing_of_wheel_generating_series() {
        let f = WheelPart::new(f_series(6));
        let d = glue_wheels_one_point(&f, &f).unwrap();
        // f'(x) f'(y) = (x/24)(y/24) + higher.
        assert_eq!(d.series.coef(&[("x", 1), ("y", 1)]), rat(1, 576));
    }

    #[test]
    fn one_point_gluing_is_symmetric() {
        let g = wheel(&[(2, 1), (4, 3)]);
        let h = wheel(&[(2, 2), (6, 1)]);
        assert_eq!(
            glue_wheels_one_point(&g, &h).unwrap(),
            glue_wheels_one_point(&h, &g).unwrap()
        );
    }

    #[test]
    fn wheel_into_dumbbell_leg_count() {
        // 2-wheel into the dumbbell xy: 2 gluings on each side, all giving
        // the chain z1 z2 with a legless middle wheel.
        let g = wheel(&[(2, 1)]);
        let d = DumbbellPart::new(TruncatedSeries::monomial(&["x", "y"], &[1, 1], Rat::one()));
        let c = glue_wheel_into_dumbbell(&g, &d).unwrap();
        assert_eq!(c.series.coef(&[("z1", 1), ("x", 0), ("z2", 1)]), rat_int(4));
        assert_eq!(c.series.terms().len(), 1);
    }

    #[test]
    fn wheel_into_dumbbell_is_linear() {
        let g = wheel(&[(2, 1), (4, 1)]);
        let d1 = DumbbellPart::new(TruncatedSeries::monomial(&["x", "y"], &[3, 1], Rat::one()));
        let d2 = DumbbellPart::new(TruncatedSeries::monomial(&["x", "y"], &[1, 5], rat_int(2)));
        let sum = DumbbellPart::new(d1.series.add(&d2.series));
        let lhs = glue_wheel_into_dumbbell(&g, &sum).unwrap();
        let rhs = glue_wheel_into_dumbbell(&g, &d1)
            .unwrap()
            .add(&glue_wheel_into_dumbbell(&g, &d2).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn constant_wheel_into_dumbbell_vanishes() {
        let g = wheel(&[(0, 5)]);
        let d = DumbbellPart::new(TruncatedSeries::monomial(&["x", "y"], &[1, 1], Rat::one()));
        assert!(glue_wheel_into_dumbbell(&g, &d).unwrap().series.is_zero());
    }

    #[test]
    fn polar_dumbbell_is_rejected() {
        let g = wheel(&[(2, 1)]);
        let bad = DumbbellPart {
            series: TruncatedSeries::monomial(&["x", "y"], &[-1, 1], Rat::one()),
        };
        assert!(matches!(
            glue_wheel_into_dumbbell(&g, &bad),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn two_point_gluing_coefficients() {
        let (b, chain) = omega_two_point(&rat(3, 2), 6).unwrap();
        assert_eq!(b.coef, rat(4, 9));
        // Chain leading term: (1/2)(a/24)(1/24)(a/24) z1 x z2... the middle
        // factor f'' starts at x^0 with 1/24.
        let a = rat(3, 2);
        let lead = rat(1, 2) * &a * rat(1, 24) * rat(1, 24) * &a * rat(1, 24);
        assert_eq!(chain.series.coef(&[("z1", 1), ("x", 0), ("z2", 1)]), lead);
        assert!(omega_two_point(&Rat::zero(), 6).is_err());
    }

    #[test]
    fn two_point_gluing_at_ratio_one() {
        let (b, chain) = omega_two_point(&Rat::one(), 8).unwrap();
        assert_eq!(b.coef, Rat::one());
        assert_eq!(b.g, b.h);
        // (1/2) f'(z1) f''(x) f'(z2), z1 x^0 z2 coefficient (1/2)(1/24)^3.
        assert_eq!(
            chain.series.coef(&[("z1", 1), ("x", 0), ("z2", 1)]),
            rat(1, 27648)
        );
    }

    #[test]
    fn bracket_of_constant_vanishes() {
        let b = BracketTerm::new(
            Rat::one(),
            TruncatedSeries::constant(&["x"], rat_int(3), 8),
            f_series(8),
        );
        assert!(bracket_to_chain(&b, 6).unwrap().series.is_zero());
    }

    #[test]
    fn bracket_reduction_is_bilinear() {
        let g1 = wheel(&[(2, 1)]).series;
        let g2 = wheel(&[(4, 2)]).series;
        let h = wheel(&[(2, 3)]).series;
        let lhs =
            bracket_to_chain(&BracketTerm::new(Rat::one(), g1.add(&g2), h.clone()), 8).unwrap();
        let rhs = bracket_to_chain(&BracketTerm::new(Rat::one(), g1, h.clone()), 8)
            .unwrap()
            .add(&bracket_to_chain(&BracketTerm::new(Rat::one(), g2, h), 8).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_reduction_on_monomials() {
        // [x^2, x^2] ↦ (1/2) sym( 2z1 x^{-2} 2z2 ) = 2 z1 x^{-2} z2.
        let g = wheel(&[(2, 1)]).series;
        let b = BracketTerm::new(Rat::one(), g.clone(), g);
        let c = bracket_to_chain(&b, 8).unwrap();
        assert_eq!(
            c.series.coef(&[("z1", 1), ("x", -2), ("z2", 1)]),
            rat_int(2)
        );
        assert_eq!(c.series.terms().len(), 1);
        // [g,g] is symmetric under the full relabeling by construction.
        assert_eq!(c.series.swap_vars("z1", "z2").unwrap(), c.series);
    }

    #[test]
    fn theta2_pairing_values() {
        // Two 2-wheels with unit coefficients: 2 matchings.
        assert_eq!(
            pair_wheels_theta2(&wheel(&[(2, 1)]), &wheel(&[(2, 1)])),
            rat_int(2)
        );
        // The wheels element: x^2 coefficient 1/48 on both sides.
        let omega2 = WheelPart::new(f_series(2));
        assert_eq!(pair_wheels_theta2(&omega2, &omega2), rat(1, 1152));
        // 4-wheels do not contribute.
        assert_eq!(
            pair_wheels_theta2(&wheel(&[(4, 9)]), &wheel(&[(2, 1)])),
            rat_int(0)
        );
    }

    #[test]
    fn theta2_pairing_of_exponentiated_wheels() {
        // Degree-2 truncation of exp(f) has the same 2-wheel coefficient.
        let omega = f_series(6).exp().unwrap();
        let omega2 = WheelPart::new(
            omega
                .sub(&TruncatedSeries::constant(&["x"], Rat::one(), 6))
                .truncate_to(2)
                .unwrap(),
        );
        assert_eq!(pair_wheels_theta2(&omega2, &omega2), rat(1, 1152));
    }
}
