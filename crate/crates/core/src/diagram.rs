//! Loop-graded diagram model.
//!
//! Connected diagrams through loop degree 3 are colorings of four shapes: a
//! single wheel, two wheels joined by an edge (dumbbell), three wheels joined
//! by two edges (chain), and two wheels glued at two points (bracket). Each
//! shape is encoded by a series in leg-counting variables:
//!
//! * wheel: `x^n` is the n-legged wheel,
//! * dumbbell: `x^n y^m` with the symmetry `x^n y^m = x^m y^n`,
//! * chain: `z1^a x^n z2^b`, middle wheel written between the outer two,
//!   symmetric under `z1 <-> z2`,
//! * bracket: kept symbolic as a coefficient and the two wheel series.
//!
//! Closed diagrams (no legs) are carried only through the coefficients of the
//! two theta-shaped graphs that appear in degrees 2 and 3.

use num_traits::Zero;

use crate::exact::scalar::Rat;
use crate::series::TruncatedSeries;

/// Guarantees the series mentions the given variables, so symmetrization and
/// coefficient lookups are defined even for zero parts.
fn with_vars(series: &TruncatedSeries, vars: &[&str]) -> TruncatedSeries {
    series.add(&TruncatedSeries::zero(vars, series.cap()))
}

/// 1-loop part: an even series in `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WheelPart {
    pub series: TruncatedSeries,
}

impl WheelPart {
    pub fn new(series: TruncatedSeries) -> Self {
        Self {
            series: with_vars(&series, &["x"]),
        }
    }

    pub fn loop_degree(&self) -> u32 {
        1
    }

    /// Coefficient of the 2-wheel.
    pub fn two_wheel_coef(&self) -> Rat {
        self.series.coef(&[("x", 2)])
    }

    pub fn is_even(&self) -> bool {
        self.series
            .terms()
            .keys()
            .all(|e| e.iter().sum::<i64>() % 2 == 0)
    }
}

/// 2-loop part: a series in `x, y`, stored symmetrized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DumbbellPart {
    pub series: TruncatedSeries,
}

impl DumbbellPart {
    /// Symmetrizes on construction; the stored form is always canonical.
    pub fn new(series: TruncatedSeries) -> Self {
        let s = with_vars(&series, &["x", "y"]);
        Self {
            series: s.symmetrize("x", "y").expect("x and y present"),
        }
    }

    pub fn loop_degree(&self) -> u32 {
        2
    }

    /// True when every monomial is odd in each of the two leg variables.
    pub fn is_odd_odd(&self) -> bool {
        let ix = self.series.vars().iter().position(|v| v == "x");
        let iy = self.series.vars().iter().position(|v| v == "y");
        let (Some(ix), Some(iy)) = (ix, iy) else {
            return self.series.is_zero();
        };
        self.series
            .terms()
            .keys()
            .all(|e| e[ix] % 2 == 1 && e[iy] % 2 == 1)
    }
}

/// 3-loop chain part: a series in `z1, x, z2`, stored symmetrized in the
/// outer variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPart {
    pub series: TruncatedSeries,
}

impl ChainPart {
    pub fn new(series: TruncatedSeries) -> Self {
        let s = with_vars(&series, &["z1", "x", "z2"]);
        Self {
            series: s.symmetrize("z1", "z2").expect("z1 and z2 present"),
        }
    }

    pub fn loop_degree(&self) -> u32 {
        3
    }

    /// True when outer exponents are odd and the middle exponent is even.
    /// Polar middle exponents (negative, even) satisfy the same parity.
    pub fn has_chain_parity(&self) -> bool {
        let pos = |v: &str| self.series.vars().iter().position(|w| w == v);
        let (Some(i1), Some(ix), Some(i2)) = (pos("z1"), pos("x"), pos("z2")) else {
            return self.series.is_zero();
        };
        self.series
            .terms()
            .keys()
            .all(|e| e[i1] % 2 == 1 && e[ix] % 2 == 0 && e[i2] % 2 == 1)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.series.add(&other.series))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.series.sub(&other.series))
    }

    pub fn scalar_mul(&self, k: &Rat) -> Self {
        Self::new(self.series.scalar_mul(k))
    }
}

/// `coef * [g, h]`: two wheel series glued at two points. Symmetric in the
/// two entries; canonical form orders them by their term maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketTerm {
    pub coef: Rat,
    pub g: TruncatedSeries,
    pub h: TruncatedSeries,
}

impl BracketTerm {
    pub fn new(coef: Rat, g: TruncatedSeries, h: TruncatedSeries) -> Self {
        Self { coef, g, h }
    }

    pub fn loop_degree(&self) -> u32 {
        3
    }

    fn ordered(&self) -> Self {
        if self.g.terms() > self.h.terms() {
            Self {
                coef: self.coef.clone(),
                g: self.h.clone(),
                h: self.g.clone(),
            }
        } else {
            self.clone()
        }
    }
}

/// Closed-diagram coefficients at the two theta shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedPart {
    pub theta2: Rat,
    pub theta3: Rat,
}

impl ClosedPart {
    pub fn zero() -> Self {
        Self {
            theta2: Rat::zero(),
            theta3: Rat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.theta2.is_zero() && self.theta3.is_zero()
    }
}

/// The connected exponent of a group-like invariant, graded by loop degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopGradedInvariant {
    pub strut: Rat,
    pub z1: WheelPart,
    pub z2: DumbbellPart,
    pub z3_chain: ChainPart,
    pub z3_brackets: Vec<BracketTerm>,
    pub closed: ClosedPart,
}

impl LoopGradedInvariant {
    /// Restores all canonical-form invariants: dumbbell and chain symmetry,
    /// bracket ordering and merging. Idempotent.
    pub fn canonicalize(&self) -> Self {
        let mut brackets: Vec<BracketTerm> = self
            .z3_brackets
            .iter()
            .map(BracketTerm::ordered)
            .filter(|b| !b.coef.is_zero() && !b.g.is_zero() && !b.h.is_zero())
            .collect();
        brackets.sort_by(|a, b| (a.g.terms(), a.h.terms()).cmp(&(b.g.terms(), b.h.terms())));
        // Merge adjacent brackets over the same wheel pair.
        let mut merged: Vec<BracketTerm> = Vec::new();
        for b in brackets {
            match merged.last_mut() {
                Some(last) if last.g == b.g && last.h == b.h => {
                    last.coef += &b.coef;
                }
                _ => merged.push(b),
            }
        }
        merged.retain(|b| !b.coef.is_zero());
        Self {
            strut: self.strut.clone(),
            z1: WheelPart::new(self.z1.series.clone()),
            z2: DumbbellPart::new(self.z2.series.clone()),
            z3_chain: ChainPart::new(self.z3_chain.series.clone()),
            z3_brackets: merged,
            closed: self.closed.clone(),
        }
    }

    /// Leg-parity constraints satisfied by every pipeline output.
    pub fn has_pipeline_parity(&self) -> bool {
        self.z1.is_even() && self.z2.is_odd_odd() && self.z3_chain.has_chain_parity()
    }
}
