//! The three volume lines `K^3 = 4 p_g / 3 - c` and the geography around
//! them.
//!
//! For minimal threefolds of general type whose canonical image is a surface
//! and with `p_g >= 11`, the volume is constrained from below by three
//! consecutive lines with constants `c = 10/3, 19/6, 3`.  Landing exactly on
//! a line forces a residue of `p_g` mod 3 and pins the basket down: the
//! first line is Gorenstein, the second carries a single half point, the
//! third a correction of exactly `1/2`.  The strips strictly between
//! consecutive lines contain no threefold at all, and below `p_g = 11` the
//! statements simply do not apply (there is a genuine `p_g = 10` example
//! strictly below the first line).

use crate::rational::{rat, Rational};
use crate::reid::{enumerate_baskets_up_to, Basket};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NoetherError {
    #[error("line index must be 1, 2 or 3, got {index}")]
    InvalidLineIndex { index: i64 },

    #[error("fibration degree must be at least 1, got d = {degree}")]
    DegreeOutOfRange { degree: i64 },

    #[error(
        "basket search needs invariants exactly on one of the lines; \
         (p_g, K^3) = ({genus}, {volume}) classifies as {region}"
    )]
    NotOnLine {
        genus: i64,
        volume: Rational,
        region: Region,
    },
}

/// One of the three volume lines, ordered bottom to top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NoetherLine {
    First,
    Second,
    Third,
}

impl NoetherLine {
    pub const ALL: [NoetherLine; 3] = [NoetherLine::First, NoetherLine::Second, NoetherLine::Third];

    pub fn from_index(index: i64) -> Result<Self, NoetherError> {
        match index {
            1 => Ok(NoetherLine::First),
            2 => Ok(NoetherLine::Second),
            3 => Ok(NoetherLine::Third),
            _ => Err(NoetherError::InvalidLineIndex { index }),
        }
    }

    pub fn index(&self) -> i64 {
        match self {
            NoetherLine::First => 1,
            NoetherLine::Second => 2,
            NoetherLine::Third => 3,
        }
    }

    /// The constant `c` in `K^3 = 4 p_g / 3 - c`.
    pub fn constant(&self) -> Rational {
        match self {
            NoetherLine::First => rat(10, 3),
            NoetherLine::Second => rat(19, 6),
            NoetherLine::Third => rat(3, 1),
        }
    }

    /// The residue of `p_g` mod 3 forced by landing on this line.
    pub fn required_residue(&self) -> i64 {
        match self {
            NoetherLine::First => 1,
            NoetherLine::Second => 2,
            NoetherLine::Third => 0,
        }
    }

    /// The basket forced by landing on this line.
    pub fn forced_basket(&self) -> Basket {
        match self {
            NoetherLine::First => Basket::empty(),
            NoetherLine::Second => Basket::from_pairs([(2, 1)]).expect("valid point"),
            NoetherLine::Third => Basket::from_pairs([(2, 1), (2, 1)]).expect("valid points"),
        }
    }
}

impl fmt::Display for NoetherLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}", self.index())
    }
}

/// The value `4 p_g / 3 - c` of a line at a given genus.
pub fn line_value(genus: i64, line: NoetherLine) -> Rational {
    &(&rat(4, 3) * &Rational::from_int(genus)) - &line.constant()
}

/// Where `(p_g, K^3)` sits relative to the three lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Strictly below the first line: no such threefold exists.
    BelowFirst,
    OnFirst,
    /// Strictly between the first and second lines: excluded.
    ExcludedStrip12,
    OnSecond,
    /// Strictly between the second and third lines: excluded.
    ExcludedStrip23,
    OnThird,
    AboveThird,
    /// Exactly on a line whose forced residue of `p_g` mod 3 fails.
    CongruenceExcluded,
    /// `p_g < 11` (or no positive volume): the line statements do not apply.
    OutOfTheoremScope,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Region::BelowFirst => "BelowFirst",
            Region::OnFirst => "OnFirst",
            Region::ExcludedStrip12 => "ExcludedStrip12",
            Region::OnSecond => "OnSecond",
            Region::ExcludedStrip23 => "ExcludedStrip23",
            Region::OnThird => "OnThird",
            Region::AboveThird => "AboveThird",
            Region::CongruenceExcluded => "CongruenceExcluded",
            Region::OutOfTheoremScope => "OutOfTheoremScope",
        };
        f.write_str(text)
    }
}

impl Region {
    pub fn on_line(&self) -> Option<NoetherLine> {
        match self {
            Region::OnFirst => Some(NoetherLine::First),
            Region::OnSecond => Some(NoetherLine::Second),
            Region::OnThird => Some(NoetherLine::Third),
            _ => None,
        }
    }
}

/// Facts that hold for every threefold with `p_g >= 11` and volume strictly
/// below `4 p_g / 3 - 8/3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivedFact {
    /// `h^1(O) = h^2(O) = 0`, so `chi(omega) = p_g - 1`.
    IrregularityVanishes,
    /// The canonical image is a surface of the given degree (`p_g - 2`).
    CanonicalImageSurfaceOfDegree(i64),
    SimplyConnected,
}

impl fmt::Display for DerivedFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivedFact::IrregularityVanishes => f.write_str("h^1 = h^2 = 0"),
            DerivedFact::CanonicalImageSurfaceOfDegree(d) => {
                write!(f, "canonical image is a surface of degree {d}")
            }
            DerivedFact::SimplyConnected => f.write_str("simply connected"),
        }
    }
}

/// Result of [`classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineClassification {
    pub region: Region,
    /// Non-empty exactly for the on-line regions: the unique basket forced
    /// by the line.
    pub forced_baskets: Vec<Basket>,
    pub derived_facts: Vec<DerivedFact>,
    /// The values of the three lines at this genus, bottom to top;
    /// informational for every region including out-of-scope ones.
    pub line_values: [Rational; 3],
}

impl LineClassification {
    pub fn on_line(&self) -> Option<NoetherLine> {
        self.region.on_line()
    }
}

impl fmt::Display for LineClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.region)?;
        if let Some(basket) = self.forced_baskets.first() {
            write!(f, " basket={basket}")?;
        }
        Ok(())
    }
}

/// Places `(p_g, K^3)` relative to the three lines.  Total and
/// deterministic: every input classifies, out-of-scope ones as
/// [`Region::OutOfTheoremScope`] with the line values still reported.
pub fn classify(genus: i64, volume: &Rational) -> LineClassification {
    let line_values = [
        line_value(genus, NoetherLine::First),
        line_value(genus, NoetherLine::Second),
        line_value(genus, NoetherLine::Third),
    ];

    if genus < 11 || !volume.is_positive() {
        return LineClassification {
            region: Region::OutOfTheoremScope,
            forced_baskets: Vec::new(),
            derived_facts: Vec::new(),
            line_values,
        };
    }

    let mut forced_baskets = Vec::new();
    let mut region = Region::AboveThird;
    for line in NoetherLine::ALL {
        let value = line_value(genus, line);
        if volume < &value {
            region = match line {
                NoetherLine::First => Region::BelowFirst,
                NoetherLine::Second => Region::ExcludedStrip12,
                NoetherLine::Third => Region::ExcludedStrip23,
            };
            break;
        }
        if volume == &value {
            if genus.rem_euclid(3) == line.required_residue() {
                region = match line {
                    NoetherLine::First => Region::OnFirst,
                    NoetherLine::Second => Region::OnSecond,
                    NoetherLine::Third => Region::OnThird,
                };
                forced_baskets.push(line.forced_basket());
            } else {
                region = Region::CongruenceExcluded;
            }
            break;
        }
    }

    let mut derived_facts = Vec::new();
    let small_volume_bound = &(&rat(4, 3) * &Rational::from_int(genus)) - &rat(8, 3);
    if volume < &small_volume_bound {
        derived_facts.push(DerivedFact::IrregularityVanishes);
        derived_facts.push(DerivedFact::CanonicalImageSurfaceOfDegree(genus - 2));
        derived_facts.push(DerivedFact::SimplyConnected);
    }

    LineClassification {
        region,
        forced_baskets,
        derived_facts,
        line_values,
    }
}

/// For threefolds fibered by curves of genus two over a surface: the least
/// possible volume at fibration degree `d`, namely
/// `d + ceil(2(d - 2) / 3) / 2`.
pub fn min_volume_fibered(degree: i64) -> Result<Rational, NoetherError> {
    Ok(&Rational::from_int(degree) + &horizontal_lower_bound(degree)?)
}

/// The lower bound `ceil(2(d - 2) / 3) / 2` for the canonical degree of the
/// horizontal part at fibration degree `d`.
pub fn horizontal_lower_bound(degree: i64) -> Result<Rational, NoetherError> {
    if degree < 1 {
        return Err(NoetherError::DegreeOutOfRange { degree });
    }
    let ceiling = rat(2 * (degree - 2), 3).ceil();
    Ok(ceiling / Rational::from_int(2))
}

/// The upper bound for the second plurigenus,
/// `floor(2 K^3) + floor(2 K^3 - 5 (p_g - 1) / 3) + 7`.
pub fn second_plurigenus_upper_bound(genus: i64, volume: &Rational) -> i64 {
    let twice = &rat(2, 1) * volume;
    let shifted = &twice - &(&rat(5, 3) * &Rational::from_int(genus - 1));
    let total = twice.floor() + shifted.floor() + Rational::from_int(7);
    total.to_i64().expect("bound fits a machine integer")
}

/// Volume lower bounds for the two other canonical-image dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideBounds {
    /// `2 p_g - 6`, for threefolds whose canonical image is a threefold.
    pub image_threefold_bound: Rational,
    /// `4 p_g / 3 - 8/3`, for threefolds whose canonical image is a curve.
    pub image_curve_bound: Rational,
    /// The bounds are stated for `p_g >= 11`; below that they are plain
    /// formula values with no geometric content.
    pub in_stated_scope: bool,
}

pub fn side_bounds(genus: i64) -> SideBounds {
    SideBounds {
        image_threefold_bound: Rational::from_int(2 * genus - 6),
        image_curve_bound: &(&rat(4, 3) * &Rational::from_int(genus)) - &rat(8, 3),
        in_stated_scope: genus >= 11,
    }
}

/// The informational constant `4 p_g / 3 - 17/6`: the proof-internal
/// threshold strictly between the third line and the curve-image bound.
/// It is not a classification boundary.
pub fn off_line_threshold(genus: i64) -> Rational {
    &(&rat(4, 3) * &Rational::from_int(genus)) - &rat(17, 6)
}

/// Every basket admissible for on-line invariants `(p_g, K^3)`: correction
/// at most the slack left by the second-plurigenus upper bound, and the
/// degree-two count an integer.  Point indices are bounded by `r_max`,
/// basket size by `max_points`; both bounds are explicit because the
/// enumeration is only exhaustive within them.
pub fn admissible_baskets(
    genus: i64,
    volume: &Rational,
    r_max: i64,
    max_points: usize,
) -> Result<Vec<Basket>, NoetherError> {
    let classification = classify(genus, volume);
    if classification.on_line().is_none() {
        return Err(NoetherError::NotOnLine {
            genus,
            volume: volume.clone(),
            region: classification.region,
        });
    }
    let base = &(volume / &Rational::from_int(2)) + &Rational::from_int(3 * (genus - 1));
    let budget = Rational::from_int(second_plurigenus_upper_bound(genus, volume)) - &base;
    let baskets = enumerate_baskets_up_to(&budget, r_max, max_points)
        .into_iter()
        .filter(|basket| (&base + &basket.correction()).is_integer())
        .collect();
    Ok(baskets)
}
