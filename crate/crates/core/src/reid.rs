//! Baskets of terminal quotient points and the degree-two plurigenus count.
//!
//! A basket point `(r, b)` stands for a quotient singularity of type
//! `1/r (1, -1, b)` with `gcd(r, b) = 1` and `1 <= b <= r/2`.  Its
//! contribution to the second plurigenus is `b(r - b) / 2r`, and a basket is
//! a finite multiset of such points.  The count itself is
//!
//! ```text
//! P_2 = K^3 / 2 + 3 chi(omega) + l2(basket)
//! ```
//!
//! which is an integer for the invariants of an actual threefold; the
//! integrality flag is how impossible invariant combinations are detected.

use crate::rational::{rat, Rational};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReidError {
    #[error("invalid basket point ({r},{b}): {reason}")]
    InvalidPoint { r: i64, b: i64, reason: &'static str },

    #[error("the degree-two count requires a positive volume, got K^3 = {volume}")]
    NonPositiveVolume { volume: Rational },

    #[error("the correction term is never negative, got {value}")]
    NegativeCorrection { value: Rational },

    #[error("inconsistent invariants: the degree-two count {count} is not an integer")]
    InconsistentInvariants { count: Rational },
}

/// A terminal quotient point `1/r (1, -1, b)` in normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasketPoint {
    r: i64,
    b: i64,
}

impl BasketPoint {
    pub fn new(r: i64, b: i64) -> Result<Self, ReidError> {
        if r < 2 {
            return Err(ReidError::InvalidPoint { r, b, reason: "index r must be at least 2" });
        }
        if b < 1 || 2 * b > r {
            return Err(ReidError::InvalidPoint {
                r,
                b,
                reason: "weight must satisfy 1 <= b <= r/2",
            });
        }
        if gcd(r, b) != 1 {
            return Err(ReidError::InvalidPoint { r, b, reason: "r and b must be coprime" });
        }
        Ok(BasketPoint { r, b })
    }

    pub fn index(&self) -> i64 {
        self.r
    }

    pub fn weight(&self) -> i64 {
        self.b
    }

    /// The contribution `b(r - b) / 2r` to the second plurigenus.
    pub fn correction(&self) -> Rational {
        rat(self.b * (self.r - self.b), 2 * self.r)
    }
}

impl fmt::Display for BasketPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.b)
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a.rem_euclid(b));
    }
    a.abs()
}

/// A finite multiset of basket points, kept sorted so that equal baskets
/// compare equal and print identically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Basket {
    points: Vec<BasketPoint>,
}

impl Basket {
    pub fn empty() -> Self {
        Basket::default()
    }

    pub fn from_points(points: impl IntoIterator<Item = BasketPoint>) -> Self {
        let mut points: Vec<BasketPoint> = points.into_iter().collect();
        points.sort();
        Basket { points }
    }

    /// Convenience constructor validating every `(r, b)` pair.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, i64)>) -> Result<Self, ReidError> {
        let points = pairs
            .into_iter()
            .map(|(r, b)| BasketPoint::new(r, b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Basket::from_points(points))
    }

    pub fn points(&self) -> &[BasketPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The total correction term `l2 = sum b(r - b) / 2r`.
    pub fn correction(&self) -> Rational {
        self.points.iter().map(BasketPoint::correction).sum()
    }
}

impl fmt::Display for Basket {
    /// Canonical form: multiplicity-grouped points, e.g. `2x(2,1)` for two
    /// half points, comma-separated groups, and the empty-set sign for the
    /// empty basket.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.points.is_empty() {
            return write!(f, "∅");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.points.len() {
            let point = self.points[i];
            let mut count = 1;
            while i + count < self.points.len() && self.points[i + count] == point {
                count += 1;
            }
            if !first {
                write!(f, ",")?;
            }
            if count > 1 {
                write!(f, "{count}x{point}")?;
            } else {
                write!(f, "{point}")?;
            }
            first = false;
            i += count;
        }
        Ok(())
    }
}

/// The correction term of a basket; shorthand for [`Basket::correction`].
pub fn l2(basket: &Basket) -> Rational {
    basket.correction()
}

/// `chi(omega) = p_g - 1` for the threefolds in scope here (irregularity and
/// second cohomology vanish).
pub fn chi_omega_from_genus(genus: i64) -> i64 {
    genus - 1
}

/// The degree-two count together with its integrality flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondPlurigenus {
    pub value: Rational,
    pub is_integral: bool,
}

/// `P_2 = K^3/2 + 3 chi(omega) + l2(basket)`, for positive `K^3`.
///
/// Non-integral results are returned with the flag down rather than as an
/// error: they are how inconsistent `(K^3, chi, basket)` triples surface.
pub fn second_plurigenus(
    volume: &Rational,
    chi_omega: i64,
    basket: &Basket,
) -> Result<SecondPlurigenus, ReidError> {
    if !volume.is_positive() {
        return Err(ReidError::NonPositiveVolume { volume: volume.clone() });
    }
    let value = &(volume / &Rational::from_int(2)) + &Rational::from_int(3 * chi_omega)
        + basket.correction();
    let is_integral = value.is_integer();
    Ok(SecondPlurigenus { value, is_integral })
}

/// What a given correction value says about the singular locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityRealization {
    /// No correction: Gorenstein singularities only.
    Gorenstein,
    /// A single point of type `1/2 (1, -1, 1)`.
    OneHalfPoint,
    /// Two points of type `1/2 (1, -1, 1)`.
    TwoHalfPoints,
    /// One point of type `cA_1 / mu_2`, whose basket is also two half points.
    CA1QuotientPoint,
}

impl fmt::Display for SingularityRealization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            SingularityRealization::Gorenstein => "Gorenstein singularities only",
            SingularityRealization::OneHalfPoint => "one point of type 1/2(1,-1,1)",
            SingularityRealization::TwoHalfPoints => "two points of type 1/2(1,-1,1)",
            SingularityRealization::CA1QuotientPoint => "one point of type cA_1/mu_2",
        };
        f.write_str(text)
    }
}

/// Interpretation of a correction value.  Only `0`, `1/4` and `1/2` pin the
/// singular locus down; every other non-negative value is reported as
/// uncovered, with no realizations listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionMeaning {
    pub value: Rational,
    pub realizations: Vec<SingularityRealization>,
    pub covered: bool,
}

pub fn interpret_correction(value: &Rational) -> Result<CorrectionMeaning, ReidError> {
    if value.is_negative() {
        return Err(ReidError::NegativeCorrection { value: value.clone() });
    }
    let realizations = if value.is_zero() {
        vec![SingularityRealization::Gorenstein]
    } else if value == &rat(1, 4) {
        vec![SingularityRealization::OneHalfPoint]
    } else if value == &rat(1, 2) {
        vec![
            SingularityRealization::TwoHalfPoints,
            SingularityRealization::CA1QuotientPoint,
        ]
    } else {
        Vec::new()
    };
    let covered = !realizations.is_empty();
    Ok(CorrectionMeaning {
        value: value.clone(),
        realizations,
        covered,
    })
}

/// All valid basket points with `r <= r_max`, sorted.
fn point_pool(r_max: i64) -> Vec<BasketPoint> {
    let mut pool = Vec::new();
    for r in 2..=r_max {
        for b in 1..=r / 2 {
            if gcd(r, b) == 1 {
                pool.push(BasketPoint { r, b });
            }
        }
    }
    pool
}

fn enumerate(
    target: &Rational,
    r_max: i64,
    max_points: usize,
    exact: bool,
) -> Vec<Basket> {
    let pool = point_pool(r_max);
    let corrections: Vec<Rational> = pool.iter().map(BasketPoint::correction).collect();
    let mut found = Vec::new();
    let mut stack: Vec<BasketPoint> = Vec::new();

    // Depth-first over index-nondecreasing point sequences, so each multiset
    // is visited exactly once, in lexicographic order.
    fn descend(
        pool: &[BasketPoint],
        corrections: &[Rational],
        from: usize,
        remaining: &Rational,
        slots: usize,
        exact: bool,
        stack: &mut Vec<BasketPoint>,
        found: &mut Vec<Basket>,
    ) {
        if !exact || remaining.is_zero() {
            found.push(Basket { points: stack.clone() });
        }
        if slots == 0 {
            return;
        }
        // Every point contributes at least 1/4.
        if remaining < &rat(1, 4) {
            return;
        }
        for idx in from..pool.len() {
            if &corrections[idx] > remaining {
                continue;
            }
            stack.push(pool[idx]);
            let next = remaining - &corrections[idx];
            descend(pool, corrections, idx, &next, slots - 1, exact, stack, found);
            stack.pop();
        }
    }

    if !target.is_negative() {
        descend(
            &pool,
            &corrections,
            0,
            target,
            max_points,
            exact,
            &mut stack,
            &mut found,
        );
    }
    found.sort();
    found
}

/// Every basket with correction exactly `target`, using points of index at
/// most `r_max` and at most `max_points` points.  Deterministic and sorted.
pub fn enumerate_baskets(target: &Rational, r_max: i64, max_points: usize) -> Vec<Basket> {
    enumerate(target, r_max, max_points, true)
}

/// Every basket with correction at most `budget`, same point bounds.
pub fn enumerate_baskets_up_to(budget: &Rational, r_max: i64, max_points: usize) -> Vec<Basket> {
    enumerate(budget, r_max, max_points, false)
}

/// Every basket within the point bounds, with no cap on the correction.
pub fn all_baskets(r_max: i64, max_points: usize) -> Vec<Basket> {
    let ceiling: Rational = point_pool(r_max)
        .iter()
        .map(|p| p.correction())
        .max()
        .unwrap_or_else(Rational::zero)
        * Rational::from_int(max_points as i64);
    enumerate(&ceiling, r_max, max_points, false)
}

/// A consistent bundle of threefold invariants: the degree-two count of
/// `(volume, chi, basket)` must reproduce `second_plurigenus` exactly and be
/// an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSet {
    pub geometric_genus: i64,
    pub canonical_volume: Rational,
    pub chi_omega: i64,
    pub second_plurigenus: Rational,
    pub basket: Basket,
}

impl InvariantSet {
    pub fn new(
        geometric_genus: i64,
        canonical_volume: Rational,
        basket: Basket,
    ) -> Result<Self, ReidError> {
        let chi_omega = chi_omega_from_genus(geometric_genus);
        let count = second_plurigenus(&canonical_volume, chi_omega, &basket)?;
        if !count.is_integral {
            return Err(ReidError::InconsistentInvariants { count: count.value });
        }
        Ok(InvariantSet {
            geometric_genus,
            canonical_volume,
            chi_omega,
            second_plurigenus: count.value,
            basket,
        })
    }
}
