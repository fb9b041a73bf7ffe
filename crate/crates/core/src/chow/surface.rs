//! The bottom floor of the tower: divisor classes on a Hirzebruch surface.

use super::ChowError;
use crate::rational::Rational;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The ruled surface `F_e`, `e >= 0`.  Its Picard group is free on the
/// section `s` with `s^2 = -e` and the fiber `l` of the ruling, with
/// `s . l = 1` and `l^2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HirzebruchSurface {
    e: i64,
}

impl HirzebruchSurface {
    pub fn new(e: i64) -> Result<Self, ChowError> {
        if e < 0 {
            return Err(ChowError::NegativeHirzebruchIndex { e });
        }
        Ok(HirzebruchSurface { e })
    }

    /// The self-intersection index: `section^2 = -e`.
    pub fn index(&self) -> i64 {
        self.e
    }

    /// The class of the section `s`.
    pub fn section(&self) -> SurfaceDivisor {
        self.divisor_int(1, 0)
    }

    /// The class of the ruling fiber `l`.
    pub fn fiber(&self) -> SurfaceDivisor {
        self.divisor_int(0, 1)
    }

    pub fn divisor(&self, section: Rational, fiber: Rational) -> SurfaceDivisor {
        SurfaceDivisor {
            space: *self,
            section,
            fiber,
        }
    }

    pub fn divisor_int(&self, section: i64, fiber: i64) -> SurfaceDivisor {
        self.divisor(Rational::from_int(section), Rational::from_int(fiber))
    }

    /// The canonical class `-2s - (e + 2)l`.
    pub fn canonical_class(&self) -> SurfaceDivisor {
        self.divisor_int(-2, -(self.e + 2))
    }
}

impl fmt::Display for HirzebruchSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.e)
    }
}

/// Nef / ample / base-point-free flags for an integral class on `F_e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Positivity {
    pub nef: bool,
    pub ample: bool,
    pub base_point_free: bool,
}

/// A divisor class `section * s + fiber * l` on a fixed Hirzebruch surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceDivisor {
    space: HirzebruchSurface,
    section: Rational,
    fiber: Rational,
}

impl SurfaceDivisor {
    pub fn space(&self) -> HirzebruchSurface {
        self.space
    }

    pub fn section_coeff(&self) -> &Rational {
        &self.section
    }

    pub fn fiber_coeff(&self) -> &Rational {
        &self.fiber
    }

    pub fn is_zero(&self) -> bool {
        self.section.is_zero() && self.fiber.is_zero()
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.section.is_integer() && self.fiber.is_integer()
    }

    fn same_space(&self, other: &SurfaceDivisor, context: &'static str) -> Result<(), ChowError> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(ChowError::SpaceMismatch { context })
        }
    }

    /// The intersection number of two classes, from the relations
    /// `s^2 = -e`, `s . l = 1`, `l^2 = 0` extended bilinearly.
    pub fn intersect(&self, other: &SurfaceDivisor) -> Result<Rational, ChowError> {
        self.same_space(other, "surface intersection")?;
        let e = Rational::from_int(self.space.e);
        let cross = &self.section * &other.fiber + &self.fiber * &other.section;
        Ok(cross - &(&self.section * &other.section) * &e)
    }

    pub fn self_intersection(&self) -> Rational {
        self.intersect(self).expect("same space by construction")
    }

    /// `h^0` of an integral class `a s + b l`: zero when `a < 0`, otherwise
    /// the section count of the pushforward to `P^1`,
    /// `sum_{i=0..a} max(0, b - i e + 1)`.
    ///
    /// Rational coefficients are an error, not zero: a non-integral class
    /// has no sheaf to take sections of.
    pub fn h0(&self) -> Result<u64, ChowError> {
        let (a, b) = self.integer_coefficients("h^0 on a Hirzebruch surface")?;
        if a < 0 {
            return Ok(0);
        }
        let e = self.space.e;
        let mut count: u64 = 0;
        for i in 0..=a {
            let summands = b - i * e + 1;
            if summands > 0 {
                count += summands as u64;
            }
        }
        Ok(count)
    }

    /// Positivity of an integral class `a s + b l`:
    /// nef iff `a >= 0` and `b >= a e`; ample iff both are strict;
    /// nef classes here are exactly the base-point-free ones.
    pub fn positivity(&self) -> Result<Positivity, ChowError> {
        let (a, b) = self.integer_coefficients("positivity on a Hirzebruch surface")?;
        let e = self.space.e;
        let nef = a >= 0 && b >= a * e;
        let ample = a > 0 && b > a * e;
        Ok(Positivity {
            nef,
            ample,
            base_point_free: nef,
        })
    }

    /// Nef test extended to rational classes (used by certificates where
    /// restrictions pick up half-integral coefficients).
    pub fn is_nef_rational(&self) -> bool {
        let e = Rational::from_int(self.space.e);
        !self.section.is_negative() && self.fiber >= &self.section * &e
    }

    fn integer_coefficients(&self, context: &'static str) -> Result<(i64, i64), ChowError> {
        let non_integer = |value: &Rational| ChowError::NonIntegerCoefficient {
            context,
            coefficient: value.to_string(),
        };
        let a = self.section.to_i64().ok_or_else(|| non_integer(&self.section))?;
        let b = self.fiber.to_i64().ok_or_else(|| non_integer(&self.fiber))?;
        Ok((a, b))
    }

    pub fn scale(&self, factor: &Rational) -> SurfaceDivisor {
        SurfaceDivisor {
            space: self.space,
            section: &self.section * factor,
            fiber: &self.fiber * factor,
        }
    }
}

impl fmt::Display for SurfaceDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(f, &[(&self.section, "s"), (&self.fiber, "l")])
    }
}

/// Writes `c1*b1 + c2*b2 + ...` skipping zero terms and eliding unit
/// coefficients; writes `0` when all coefficients vanish.
pub(crate) fn write_linear_combination(
    f: &mut fmt::Formatter<'_>,
    terms: &[(&Rational, &str)],
) -> fmt::Result {
    let mut wrote = false;
    for (coeff, basis) in terms {
        if coeff.is_zero() {
            continue;
        }
        f.write_str(match (wrote, coeff.is_negative()) {
            (true, true) => " - ",
            (true, false) => " + ",
            (false, true) => "-",
            (false, false) => "",
        })?;
        let magnitude = coeff.abs();
        if magnitude == Rational::one() {
            write!(f, "{basis}")?;
        } else {
            write!(f, "{}*{}", magnitude, basis)?;
        }
        wrote = true;
    }
    if !wrote {
        write!(f, "0")?;
    }
    Ok(())
}

macro_rules! divisor_ops {
    ($ty:ident, $($field:ident),+) => {
        impl Add for &$ty {
            type Output = $ty;
            /// Panics when the operands live on different spaces; checked
            /// entry points go through the `Result`-returning operations.
            fn add(self, rhs: &$ty) -> $ty {
                assert!(
                    self.space == rhs.space,
                    concat!(stringify!($ty), " addition across different spaces")
                );
                $ty {
                    space: self.space,
                    $($field: &self.$field + &rhs.$field),+
                }
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                assert!(
                    self.space == rhs.space,
                    concat!(stringify!($ty), " subtraction across different spaces")
                );
                $ty {
                    space: self.space,
                    $($field: &self.$field - &rhs.$field),+
                }
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty {
                    space: self.space,
                    $($field: -&self.$field),+
                }
            }
        }

        impl Mul<&$ty> for i64 {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                rhs.scale(&Rational::from_int(self))
            }
        }
    };
}

divisor_ops!(SurfaceDivisor, section, fiber);

pub(crate) use divisor_ops;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn f(e: i64) -> HirzebruchSurface {
        HirzebruchSurface::new(e).unwrap()
    }

    #[test]
    fn rejects_negative_index() {
        assert_eq!(
            HirzebruchSurface::new(-1),
            Err(ChowError::NegativeHirzebruchIndex { e: -1 })
        );
    }

    #[test]
    fn basis_intersections() {
        let f3 = f(3);
        let s = f3.section();
        let l = f3.fiber();
        assert_eq!(s.intersect(&s).unwrap(), rat(-3, 1));
        assert_eq!(s.intersect(&l).unwrap(), rat(1, 1));
        assert_eq!(l.intersect(&l).unwrap(), rat(0, 1));
    }

    #[test]
    fn twist_self_intersection() {
        // (2s + 6l)^2 on F_3 expands to 4(-3) + 2*2*6 = 12.
        let d = f(3).divisor_int(2, 6);
        assert_eq!(d.self_intersection(), rat(12, 1));
    }

    #[test]
    fn self_intersection_matches_bilinear_expansion_on_grid() {
        for e in 0..=6 {
            for a in -3..=6_i64 {
                for b in -3..=9_i64 {
                    let d = f(e).divisor_int(a, b);
                    let expected = Rational::from_int(-e * a * a + 2 * a * b);
                    assert_eq!(d.self_intersection(), expected, "e={e} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn intersection_is_symmetric_and_bilinear() {
        let f2 = f(2);
        let d1 = f2.divisor(rat(1, 2), rat(-3, 1));
        let d2 = f2.divisor(rat(4, 1), rat(7, 3));
        let d3 = f2.divisor(rat(-2, 5), rat(1, 1));
        assert_eq!(d1.intersect(&d2).unwrap(), d2.intersect(&d1).unwrap());
        let lhs = (&d1 + &d2).intersect(&d3).unwrap();
        let rhs = d1.intersect(&d3).unwrap() + d2.intersect(&d3).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cross_space_intersection_is_an_error() {
        let d0 = f(0).section();
        let d1 = f(1).section();
        assert!(matches!(
            d0.intersect(&d1),
            Err(ChowError::SpaceMismatch { .. })
        ));
    }

    #[test]
    #[should_panic(expected = "different spaces")]
    fn cross_space_addition_panics() {
        let _ = &f(0).section() + &f(1).section();
    }

    #[test]
    fn canonical_class_and_its_square() {
        assert_eq!(f(0).canonical_class(), f(0).divisor_int(-2, -2));
        assert_eq!(f(3).canonical_class(), f(3).divisor_int(-2, -5));
        for e in 0..=10 {
            let k = f(e).canonical_class();
            assert_eq!(k.self_intersection(), rat(8, 1), "K^2 on F_{e}");
        }
    }

    #[test]
    fn section_counts() {
        // h^0(F_3, s + 4l): summands 5 and 2.
        assert_eq!(f(3).divisor_int(1, 4).h0().unwrap(), 7);
        assert_eq!(f(5).divisor_int(0, 0).h0().unwrap(), 1);
        assert_eq!(f(2).divisor_int(-1, 10).h0().unwrap(), 0);
        // Fiber degree too negative for any summand.
        assert_eq!(f(2).divisor_int(3, -1).h0().unwrap(), 0);
    }

    #[test]
    fn section_count_matches_lattice_point_enumeration() {
        // Independent recount: sections of a*s + b*l correspond to pairs
        // (i, j) with 0 <= i <= a and 0 <= j <= b - i*e.
        for e in 0..=5 {
            for a in -2..=8_i64 {
                for b in -5..=40_i64 {
                    let mut lattice: u64 = 0;
                    if a >= 0 {
                        for i in 0..=a {
                            let mut j = 0;
                            while j <= b - i * e {
                                lattice += 1;
                                j += 1;
                            }
                        }
                    }
                    let d = f(e).divisor_int(a, b);
                    assert_eq!(d.h0().unwrap(), lattice, "e={e} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn h0_rejects_rational_coefficients() {
        let d = f(3).divisor(rat(1, 2), rat(3, 1));
        assert!(matches!(
            d.h0(),
            Err(ChowError::NonIntegerCoefficient { .. })
        ));
    }

    #[test]
    fn positivity_flags() {
        let p = f(3).divisor_int(1, 4).positivity().unwrap();
        assert!(p.nef && p.ample && p.base_point_free);
        // b = a*e exactly: nef and base-point-free but not ample.
        let p = f(3).divisor_int(1, 3).positivity().unwrap();
        assert!(p.nef && !p.ample && p.base_point_free);
        let p = f(3).divisor_int(1, 2).positivity().unwrap();
        assert!(!p.nef && !p.ample && !p.base_point_free);
        let p = f(0).divisor_int(0, 0).positivity().unwrap();
        assert!(p.nef && !p.ample);
    }

    #[test]
    fn positivity_is_monotone_along_nef_directions() {
        for e in 0..=4 {
            for a in 0..=5_i64 {
                for b in (a * e - 2)..=(a * e + 6) {
                    let d = f(e).divisor_int(a, b);
                    if !d.positivity().unwrap().nef {
                        continue;
                    }
                    let plus_fiber = &d + &f(e).fiber();
                    let plus_section = &d + &f(e).divisor_int(1, e);
                    assert!(plus_fiber.positivity().unwrap().nef);
                    assert!(plus_section.positivity().unwrap().nef);
                }
            }
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(f(3).divisor_int(2, 6).to_string(), "2*s + 6*l");
        assert_eq!(f(3).divisor_int(-2, -5).to_string(), "-2*s - 5*l");
        assert_eq!(f(3).divisor(rat(0, 1), rat(1, 2)).to_string(), "1/2*l");
        assert_eq!(f(3).divisor_int(0, 0).to_string(), "0");
    }
}
