//! The middle floor: divisor classes on the `P^1`-bundle `Y = P(O + O(-D))`.

use super::surface::{divisor_ops, write_linear_combination, HirzebruchSurface, SurfaceDivisor};
use super::ChowError;
use crate::rational::Rational;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The threefold `Y = P(O + O(-D))` over a Hirzebruch surface, for an
/// integral twist `D`.  Divisors are written `v V + a p*s + b p*l` where `V`
/// is the relative hyperplane class, i.e. the section with `V|_V = -D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjectiveBundle {
    base: HirzebruchSurface,
    twist_section: i64,
    twist_fiber: i64,
}

impl ProjectiveBundle {
    /// Builds the bundle from its twist divisor; the base is the surface the
    /// twist lives on.  The twist must be integral.
    pub fn new(twist: &SurfaceDivisor) -> Result<Self, ChowError> {
        let non_integer = |value: &Rational| ChowError::NonIntegerCoefficient {
            context: "projective bundle twist",
            coefficient: value.to_string(),
        };
        let twist_section = twist
            .section_coeff()
            .to_i64()
            .ok_or_else(|| non_integer(twist.section_coeff()))?;
        let twist_fiber = twist
            .fiber_coeff()
            .to_i64()
            .ok_or_else(|| non_integer(twist.fiber_coeff()))?;
        Ok(ProjectiveBundle {
            base: twist.space(),
            twist_section,
            twist_fiber,
        })
    }

    pub fn base(&self) -> HirzebruchSurface {
        self.base
    }

    /// The twist divisor `D` on the base.
    pub fn twist(&self) -> SurfaceDivisor {
        self.base.divisor_int(self.twist_section, self.twist_fiber)
    }

    /// The relative hyperplane class `V`.
    pub fn hyperplane(&self) -> BundleDivisor {
        self.divisor(Rational::one(), Rational::zero(), Rational::zero())
    }

    /// Pulls a divisor class back from the base.
    pub fn pullback(&self, class: &SurfaceDivisor) -> Result<BundleDivisor, ChowError> {
        if class.space() != self.base {
            return Err(ChowError::SpaceMismatch {
                context: "pullback from a different base surface",
            });
        }
        Ok(self.divisor(
            Rational::zero(),
            class.section_coeff().clone(),
            class.fiber_coeff().clone(),
        ))
    }

    pub fn divisor(&self, hyperplane: Rational, section: Rational, fiber: Rational) -> BundleDivisor {
        BundleDivisor {
            space: *self,
            hyperplane,
            section,
            fiber,
        }
    }

    pub fn divisor_int(&self, hyperplane: i64, section: i64, fiber: i64) -> BundleDivisor {
        self.divisor(
            Rational::from_int(hyperplane),
            Rational::from_int(section),
            Rational::from_int(fiber),
        )
    }

    /// The canonical class `K_Y = -2V + p*(K_base - D)`.
    pub fn canonical_class(&self) -> BundleDivisor {
        let residue = &self.base.canonical_class() - &self.twist();
        self.divisor(
            Rational::from_int(-2),
            residue.section_coeff().clone(),
            residue.fiber_coeff().clone(),
        )
    }
}

impl fmt::Display for ProjectiveBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P(O + O(-({}))) over {}", self.twist(), self.base)
    }
}

/// A divisor class `hyperplane * V + section * p*s + fiber * p*l` on a fixed
/// projective bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleDivisor {
    space: ProjectiveBundle,
    hyperplane: Rational,
    section: Rational,
    fiber: Rational,
}

impl BundleDivisor {
    pub fn space(&self) -> ProjectiveBundle {
        self.space
    }

    pub fn hyperplane_coeff(&self) -> &Rational {
        &self.hyperplane
    }

    pub fn section_coeff(&self) -> &Rational {
        &self.section
    }

    pub fn fiber_coeff(&self) -> &Rational {
        &self.fiber
    }

    pub fn is_zero(&self) -> bool {
        self.hyperplane.is_zero() && self.section.is_zero() && self.fiber.is_zero()
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.hyperplane.is_integer() && self.section.is_integer() && self.fiber.is_integer()
    }

    /// The pullback component as a class on the base.
    pub fn base_part(&self) -> SurfaceDivisor {
        self.space
            .base()
            .divisor(self.section.clone(), self.fiber.clone())
    }

    /// Restriction to the section `V ~ F_e`: `V|_V = -D` and pullbacks
    /// restrict to themselves.
    pub fn restrict_to_hyperplane(&self) -> SurfaceDivisor {
        let from_hyperplane = self.space.twist().scale(&-&self.hyperplane);
        &from_hyperplane + &self.base_part()
    }

    pub fn cube(&self) -> Rational {
        triple_product(self, self, self).expect("same space by construction")
    }

    pub fn scale(&self, factor: &Rational) -> BundleDivisor {
        BundleDivisor {
            space: self.space,
            hyperplane: &self.hyperplane * factor,
            section: &self.section * factor,
            fiber: &self.fiber * factor,
        }
    }
}

/// The trilinear intersection form on the bundle, determined by:
/// products of three pullbacks vanish, `V . p*x . p*y = (x . y)` on the
/// base, `V^2 . p*x = -(D . x)`, and `V^3 = D^2`.
pub fn triple_product(
    d1: &BundleDivisor,
    d2: &BundleDivisor,
    d3: &BundleDivisor,
) -> Result<Rational, ChowError> {
    if d1.space != d2.space || d1.space != d3.space {
        return Err(ChowError::SpaceMismatch {
            context: "bundle triple product",
        });
    }
    let twist = d1.space.twist();
    let (v1, p1) = (&d1.hyperplane, d1.base_part());
    let (v2, p2) = (&d2.hyperplane, d2.base_part());
    let (v3, p3) = (&d3.hyperplane, d3.base_part());

    let pair = |x: &SurfaceDivisor, y: &SurfaceDivisor| x.intersect(y).expect("common base");

    let vvv = v1 * v2 * v3 * &pair(&twist, &twist);
    let vvp = -(v1 * v2 * &pair(&twist, &p3)
        + v1 * v3 * &pair(&twist, &p2)
        + v2 * v3 * &pair(&twist, &p1));
    let vpp = v1 * &pair(&p2, &p3) + v2 * &pair(&p1, &p3) + v3 * &pair(&p1, &p2);
    Ok(vvv + vvp + vpp)
}

impl fmt::Display for BundleDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(
            f,
            &[(&self.hyperplane, "V"), (&self.section, "p*s"), (&self.fiber, "p*l")],
        )
    }
}

divisor_ops!(BundleDivisor, hyperplane, section, fiber);
