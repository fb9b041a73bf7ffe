//! The top floor: divisor classes on the double cover `X' -> Y`.
//!
//! The cover is branched along `B = V + H` with `B ~ 2L`, so the section
//! `V` pulls back to `2E` and a general divisor is written
//! `x E + a rho*p*s + b rho*p*l`.  A degree-two cover pushes products down
//! with one factor of two per pullback, which works out to the single rule
//!
//! ```text
//! (j copies of E) . (3 - j pullbacks)  =  2^(1-j) * (same monomial on Y with E -> V)
//! ```

use super::bundle::{triple_product, BundleDivisor, ProjectiveBundle};
use super::surface::{divisor_ops, write_linear_combination, SurfaceDivisor};
use super::ChowError;
use crate::rational::{rat, Rational};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The double cover of a projective bundle branched along `B ~ 2L`, where
/// `L` is an integral class whose hyperplane coefficient is an odd positive
/// integer (so that `B = V + H` contains the section exactly once).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DoubleCover {
    target: ProjectiveBundle,
    half_hyperplane: i64,
    half_section: i64,
    half_fiber: i64,
}

impl DoubleCover {
    /// Builds the cover from the half-branch class `L`; the covered bundle
    /// is the space `L` lives on.
    pub fn new(half_branch: &BundleDivisor) -> Result<Self, ChowError> {
        let non_integer = |value: &Rational| ChowError::NonIntegerCoefficient {
            context: "double cover half-branch class",
            coefficient: value.to_string(),
        };
        let pick = |value: &Rational| value.to_i64().ok_or_else(|| non_integer(value));
        let half_hyperplane = pick(half_branch.hyperplane_coeff())?;
        let half_section = pick(half_branch.section_coeff())?;
        let half_fiber = pick(half_branch.fiber_coeff())?;
        if half_hyperplane < 1 || half_hyperplane % 2 == 0 {
            return Err(ChowError::BranchShape {
                reason: format!(
                    "the section must lie in the branch divisor with coefficient one, \
                     so the half-branch class needs an odd positive hyperplane \
                     coefficient; got {half_hyperplane}"
                ),
            });
        }
        Ok(DoubleCover {
            target: half_branch.space(),
            half_hyperplane,
            half_section,
            half_fiber,
        })
    }

    pub fn target(&self) -> ProjectiveBundle {
        self.target
    }

    /// The half-branch class `L` on the covered bundle.
    pub fn half_branch(&self) -> BundleDivisor {
        self.target
            .divisor_int(self.half_hyperplane, self.half_section, self.half_fiber)
    }

    /// The full branch class `B = 2L`.
    pub fn branch_class(&self) -> BundleDivisor {
        self.half_branch().scale(&Rational::from_int(2))
    }

    /// The residual branch component `H = 2L - V`, so that `B = V + H`.
    pub fn residual_branch(&self) -> BundleDivisor {
        &self.branch_class() - &self.target.hyperplane()
    }

    /// The class `E` with `rho* V = 2E`.
    pub fn exceptional(&self) -> CoverDivisor {
        self.divisor_int(1, 0, 0)
    }

    pub fn divisor(&self, exceptional: Rational, section: Rational, fiber: Rational) -> CoverDivisor {
        CoverDivisor {
            space: *self,
            exceptional,
            section,
            fiber,
        }
    }

    pub fn divisor_int(&self, exceptional: i64, section: i64, fiber: i64) -> CoverDivisor {
        self.divisor(
            Rational::from_int(exceptional),
            Rational::from_int(section),
            Rational::from_int(fiber),
        )
    }

    /// Pullback along the cover: `V -> 2E`, pullbacks from the base map to
    /// their pullbacks upstairs.
    pub fn pullback(&self, class: &BundleDivisor) -> Result<CoverDivisor, ChowError> {
        if class.space() != self.target {
            return Err(ChowError::SpaceMismatch {
                context: "pullback from a different bundle",
            });
        }
        Ok(self.divisor(
            class.hyperplane_coeff() * 2,
            class.section_coeff().clone(),
            class.fiber_coeff().clone(),
        ))
    }

    /// The canonical class `K = rho*(K_Y + L)`.
    pub fn canonical_class(&self) -> CoverDivisor {
        let adjoint = &self.target.canonical_class() + &self.half_branch();
        self.pullback(&adjoint).expect("same bundle by construction")
    }

    /// The class `A = K - E`, the pullback of the canonical class of the
    /// threefold obtained by contracting `E`.
    pub fn contracted_canonical_class(&self) -> CoverDivisor {
        &self.canonical_class() - &self.exceptional()
    }

    /// The volume `A^3 = (K - E)^3` of the contracted threefold.
    pub fn contracted_canonical_volume(&self) -> Rational {
        self.contracted_canonical_class().cube()
    }

    /// Whether the total space of the cover is smooth, which at the level of
    /// classes is the vanishing of `H|_V`: the residual branch component
    /// misses the section exactly when its restriction class is zero.
    pub fn smooth_total_space(&self) -> bool {
        self.residual_branch().restrict_to_hyperplane().is_zero()
    }

    /// The geometric genus of the cover, computed by pushing the canonical
    /// class down the tower: `K = rho*(V + p*N)` gives `p_g = h^0(base, N)`.
    /// Covers whose adjoint class `K_Y + L` has hyperplane coefficient other
    /// than one are outside this computation.
    pub fn geometric_genus(&self) -> Result<u64, ChowError> {
        let adjoint = &self.target.canonical_class() + &self.half_branch();
        if adjoint.hyperplane_coeff() != &Rational::one() {
            return Err(ChowError::BranchShape {
                reason: format!(
                    "genus pushforward needs the adjoint class K + L to be V plus a \
                     pullback; its hyperplane coefficient is {}",
                    adjoint.hyperplane_coeff()
                ),
            });
        }
        adjoint.base_part().h0()
    }

    /// A sufficient-condition certificate that `A = K - E` is nef and big:
    /// `A|_E` nef on the exceptional surface and the adjoint base class `N`
    /// ample imply nef; `A^3 > 0` is bigness.  A failed certificate names
    /// the conditions that did not hold; it does not prove non-nefness.
    pub fn nef_certificate(&self) -> NefCertificate {
        let mut failed = Vec::new();
        let contracted = self.contracted_canonical_class();
        let restriction = contracted.restrict_to_exceptional();
        let volume = contracted.cube();
        let ruling_contracted = restriction.section_coeff().clone();
        let ruling_exceptional = self
            .exceptional()
            .restrict_to_exceptional()
            .section_coeff()
            .clone();
        let ruling_canonical = self
            .canonical_class()
            .restrict_to_exceptional()
            .section_coeff()
            .clone();

        if !restriction.is_nef_rational() {
            failed.push(format!(
                "restriction of the contracted canonical class to the exceptional \
                 surface is not nef: {restriction}"
            ));
        }

        let adjoint = &self.target.canonical_class() + &self.half_branch();
        let base_class_ample = if adjoint.hyperplane_coeff() == &Rational::one() {
            let base_class = adjoint.base_part();
            let ample = base_class
                .positivity()
                .map(|p| p.ample)
                .unwrap_or(false);
            if !ample {
                failed.push(format!("adjoint base class {base_class} is not ample"));
            }
            ample
        } else {
            failed.push(format!(
                "adjoint class {adjoint} is not the hyperplane plus a pullback"
            ));
            false
        };

        let big = volume.is_positive();
        NefCertificate {
            nef: failed.is_empty(),
            big,
            volume,
            restriction_to_exceptional: restriction.clone(),
            exceptional_fiber_degree: restriction.fiber_coeff().clone(),
            base_class_ample,
            ruling_contracted_degree: ruling_contracted,
            ruling_exceptional_degree: ruling_exceptional,
            ruling_canonical_degree: ruling_canonical,
            failed_conditions: failed,
        }
    }
}

impl fmt::Display for DoubleCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "double cover of {} branched along 2({})", self.target, self.half_branch())
    }
}

/// Result of [`DoubleCover::nef_certificate`]: sufficient conditions for the
/// contracted canonical class to be nef and big, plus the intersection
/// numbers of the ruling of the exceptional surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NefCertificate {
    pub nef: bool,
    pub big: bool,
    /// `A^3`.
    pub volume: Rational,
    /// `A|_E` as a class on the base surface.
    pub restriction_to_exceptional: SurfaceDivisor,
    /// The ruling degree of `A|_E` (its fiber coefficient).
    pub exceptional_fiber_degree: Rational,
    /// Whether the adjoint base class `N` is ample.
    pub base_class_ample: bool,
    /// `(A . ruling)`; zero exactly when the contraction kills the ruling.
    pub ruling_contracted_degree: Rational,
    /// `(E . ruling)`.
    pub ruling_exceptional_degree: Rational,
    /// `(K . ruling)`.
    pub ruling_canonical_degree: Rational,
    /// Empty when the certificate holds.
    pub failed_conditions: Vec<String>,
}

/// A divisor class `exceptional * E + section * rho*p*s + fiber * rho*p*l`
/// on a fixed double cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverDivisor {
    space: DoubleCover,
    exceptional: Rational,
    section: Rational,
    fiber: Rational,
}

impl CoverDivisor {
    pub fn space(&self) -> DoubleCover {
        self.space
    }

    pub fn exceptional_coeff(&self) -> &Rational {
        &self.exceptional
    }

    pub fn section_coeff(&self) -> &Rational {
        &self.section
    }

    pub fn fiber_coeff(&self) -> &Rational {
        &self.fiber
    }

    /// The pullback component as a class on the base surface.
    pub fn base_part(&self) -> SurfaceDivisor {
        self.space
            .target()
            .base()
            .divisor(self.section.clone(), self.fiber.clone())
    }

    /// Restriction to the exceptional surface `E ~ F_e`: since `2E = rho*V`
    /// and `V|_V = -D`, the class `E` restricts to `-D/2`, while pullbacks
    /// restrict to themselves.
    pub fn restrict_to_exceptional(&self) -> SurfaceDivisor {
        let half = rat(-1, 2);
        let from_exceptional = self
            .space
            .target()
            .twist()
            .scale(&(&half * &self.exceptional));
        &from_exceptional + &self.base_part()
    }

    pub fn cube(&self) -> Rational {
        cover_triple_product(self, self, self).expect("same space by construction")
    }

    pub fn scale(&self, factor: &Rational) -> CoverDivisor {
        CoverDivisor {
            space: self.space,
            exceptional: &self.exceptional * factor,
            section: &self.section * factor,
            fiber: &self.fiber * factor,
        }
    }
}

impl fmt::Display for CoverDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(
            f,
            &[
                (&self.exceptional, "E"),
                (&self.section, "rho*p*s"),
                (&self.fiber, "rho*p*l"),
            ],
        )
    }
}

/// The trilinear intersection form on the cover.  Each divisor splits as an
/// `E` component plus a pullback component; a monomial with `j` copies of
/// `E` evaluates to `2^(1-j)` times the bundle monomial with `E` replaced by
/// `V`.
pub fn cover_triple_product(
    d1: &CoverDivisor,
    d2: &CoverDivisor,
    d3: &CoverDivisor,
) -> Result<Rational, ChowError> {
    if d1.space != d2.space || d1.space != d3.space {
        return Err(ChowError::SpaceMismatch {
            context: "cover triple product",
        });
    }
    let bundle = d1.space.target();
    let split = |d: &CoverDivisor| {
        let as_hyperplane = bundle.divisor(d.exceptional.clone(), Rational::zero(), Rational::zero());
        let as_pullback = bundle.divisor(Rational::zero(), d.section.clone(), d.fiber.clone());
        [as_hyperplane, as_pullback]
    };
    let parts = [split(d1), split(d2), split(d3)];
    let weight = [rat(2, 1), rat(1, 1), rat(1, 2), rat(1, 4)];

    let mut total = Rational::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                // Index 0 picks the E component of that factor.
                let copies_of_e = (i == 0) as usize + (j == 0) as usize + (k == 0) as usize;
                let monomial =
                    triple_product(&parts[0][i], &parts[1][j], &parts[2][k])?;
                total = total + &weight[copies_of_e] * &monomial;
            }
        }
    }
    Ok(total)
}

divisor_ops!(CoverDivisor, exceptional, section, fiber);
