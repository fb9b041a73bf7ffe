//! Concrete threefolds realizing the volume lines, and the structural model
//! for the first line.
//!
//! The family with parameters `(e, a, b)` lives at the top of the tower:
//! base `F_e`, twist `D = 2s + a l`, half-branch `L = 3V + p*(5s + b l)`,
//! subject to `e >= 3`, `a >= 2e`, `2b >= 5a`.  Everything a record reports
//! is computed through the divisor arithmetic, never from closed forms; the
//! closed-form expressions for genus and volume live only in tests, as
//! independent oracles.

use crate::chow::{
    BundleDivisor, DoubleCover, HirzebruchSurface, NefCertificate, ProjectiveBundle,
    SurfaceDivisor,
};
use crate::noether::{classify, LineClassification, NoetherLine};
use crate::rational::{rat, Rational};
use crate::reid::{
    all_baskets, chi_omega_from_genus, second_plurigenus, Basket, InvariantSet,
};
use crate::{chow::ChowError, reid::ReidError};
use rayon::prelude::*;
use std::ops::RangeInclusive;
use thiserror::Error;

/// Candidate baskets attached to records off the lines are enumerated inside
/// this explicit window; outside it nothing is claimed.
pub const CANDIDATE_INDEX_MAX: i64 = 12;
pub const CANDIDATE_MAX_POINTS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family constraint violated: e >= 3 required, got e = {e}")]
    IndexTooSmall { e: i64 },

    #[error("family constraint violated: a >= 2e required, got a = {a} with e = {e}")]
    TwistTooSmall { a: i64, e: i64 },

    #[error("family constraint violated: 2b >= 5a required, got b = {b} with a = {a}")]
    BranchTooSmall { b: i64, a: i64 },

    #[error("model constraint violated: m >= 5 required, got m = {m}")]
    ModelIndexTooSmall { m: i64 },

    #[error("model constraint violated: 0 <= e <= 3m - 4 required, got e = {e} with m = {m}")]
    ModelIndexOutOfRange { e: i64, m: i64 },

    #[error(
        "model constraint violated: e must have the parity of 3m - 4, got e = {e} with m = {m}"
    )]
    ModelParity { e: i64, m: i64 },

    #[error("the family (e={e}, a={a}, b={b}) does not land on {line}")]
    LineMismatch { e: i64, a: i64, b: i64, line: NoetherLine },

    #[error(transparent)]
    Chow(#[from] ChowError),

    #[error(transparent)]
    Reid(#[from] ReidError),

    #[error("internal consistency check failed: {what}")]
    Inconsistency { what: String },
}

/// Validated parameters `(e, a, b)` of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    e: i64,
    a: i64,
    b: i64,
}

impl FamilyParams {
    pub fn new(e: i64, a: i64, b: i64) -> Result<Self, FamilyError> {
        if e < 3 {
            return Err(FamilyError::IndexTooSmall { e });
        }
        if a < 2 * e {
            return Err(FamilyError::TwistTooSmall { a, e });
        }
        if 2 * b < 5 * a {
            return Err(FamilyError::BranchTooSmall { b, a });
        }
        Ok(FamilyParams { e, a, b })
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }
}

/// Everything the tower computes for one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyRecord {
    pub params: FamilyParams,
    pub geometric_genus: i64,
    pub chi_omega: i64,
    pub canonical_volume: Rational,
    pub smooth_total_space: bool,
    pub classification: LineClassification,
    /// Present exactly when the classification forces a unique basket.
    pub second_plurigenus: Option<Rational>,
    /// The forced basket, when there is one.
    pub basket: Option<Basket>,
    /// For records the line statements leave open: baskets inside the
    /// candidate window whose degree-two count is an integer.  Empty when
    /// `basket` is present.
    pub basket_candidates: Vec<Basket>,
    pub nef_certificate: NefCertificate,
}

impl FamilyRecord {
    pub fn line(&self) -> Option<NoetherLine> {
        self.classification.on_line()
    }

    /// The consistent invariant bundle, when the basket is determined.
    pub fn invariants(&self) -> Option<InvariantSet> {
        let basket = self.basket.clone()?;
        InvariantSet::new(self.geometric_genus, self.canonical_volume.clone(), basket).ok()
    }
}

/// Assembles the tower for `(e, a, b)` and reads every invariant off it.
pub fn build_family(params: FamilyParams) -> Result<FamilyRecord, FamilyError> {
    let cover = assemble_cover(params)?;
    let geometric_genus = cover.geometric_genus()? as i64;
    let chi_omega = chi_omega_from_genus(geometric_genus);
    let canonical_volume = cover.contracted_canonical_volume();
    let smooth_total_space = cover.smooth_total_space();
    let nef_certificate = cover.nef_certificate();
    let classification = classify(geometric_genus, &canonical_volume);

    let (basket, second_plurigenus, basket_candidates) = match classification.on_line() {
        Some(line) => {
            let basket = line.forced_basket();
            let count = second_plurigenus(&canonical_volume, chi_omega, &basket)?;
            (Some(basket), Some(count.value), Vec::new())
        }
        None => {
            let base = &(&canonical_volume / &Rational::from_int(2))
                + &Rational::from_int(3 * chi_omega);
            let candidates = all_baskets(CANDIDATE_INDEX_MAX, CANDIDATE_MAX_POINTS)
                .into_iter()
                .filter(|basket| (&base + &basket.correction()).is_integer())
                .collect();
            (None, None, candidates)
        }
    };

    Ok(FamilyRecord {
        params,
        geometric_genus,
        chi_omega,
        canonical_volume,
        smooth_total_space,
        classification,
        second_plurigenus,
        basket,
        basket_candidates,
        nef_certificate,
    })
}

fn assemble_cover(params: FamilyParams) -> Result<DoubleCover, FamilyError> {
    let base = HirzebruchSurface::new(params.e)?;
    let twist = base.divisor_int(2, params.a);
    let bundle = ProjectiveBundle::new(&twist)?;
    let half_branch = bundle.divisor_int(3, 5, params.b);
    Ok(DoubleCover::new(&half_branch)?)
}

/// The `(a, b)` choices putting the family exactly on each line, indexed by
/// `t = e + k`: line one `(2t, 5t)`, line two `(2t + 1, 5t + 3)`, line
/// three `(2t, 5t + 1)`.
pub fn noether_example(line: NoetherLine, e: i64, k: i64) -> Result<FamilyRecord, FamilyError> {
    let t = e + k;
    let (a, b) = match line {
        NoetherLine::First => (2 * t, 5 * t),
        NoetherLine::Second => (2 * t + 1, 5 * t + 3),
        NoetherLine::Third => (2 * t, 5 * t + 1),
    };
    let record = build_family(FamilyParams::new(e, a, b)?)?;
    let on_line_value =
        crate::noether::line_value(record.geometric_genus, line);
    if record.canonical_volume != on_line_value {
        return Err(FamilyError::LineMismatch { e, a, b, line });
    }
    Ok(record)
}

/// Builds every `noether_example` on the grid, rows ordered by
/// `(line, e, k)`.  Grid points evaluate in parallel; the row order is the
/// deterministic grid order regardless of scheduling.
pub fn scan(
    e_range: RangeInclusive<i64>,
    k_range: RangeInclusive<i64>,
    lines: &[NoetherLine],
) -> Result<Vec<FamilyRecord>, FamilyError> {
    let mut lines: Vec<NoetherLine> = lines.to_vec();
    lines.sort();
    lines.dedup();
    let mut grid = Vec::new();
    for line in lines {
        for e in e_range.clone() {
            for k in k_range.clone() {
                grid.push((line, e, k));
            }
        }
    }
    grid.into_par_iter()
        .map(|(line, e, k)| noether_example(line, e, k))
        .collect()
}

/// The structural model on the first line at genus `3m - 2`: the bundle
/// `P(O + O(-2s - (m+e)l))` over `F_e`, branch `B1 + B2` with `B1` the
/// section and `B2 ~ 5 B1 + p*(10s + 5(m+e)l)` disjoint from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureModel {
    pub m: i64,
    pub e: i64,
    /// The smaller twisting degree: `e + 2k = 3m - 4`.
    pub k: i64,
    /// `D = 2s + (m+e)l` on the base.
    pub twist: SurfaceDivisor,
    /// `B1`, the section part of the branch divisor.
    pub branch_section: BundleDivisor,
    /// `B2`, the residual part of the branch divisor.
    pub branch_residual: BundleDivisor,
    /// `B2|_{B1}`, verified to vanish: the two branch parts are disjoint.
    pub branch_overlap: SurfaceDivisor,
    /// Splitting degrees `(k, e + k)` of the pushforward of the relative
    /// dualizing sheaf.
    pub hodge_degrees: (i64, i64),
    /// The canonical degree `(e + 2k - 2) / 3` of a section of the induced
    /// fibration over the ruling.
    pub section_canonical_degree: Rational,
    /// Whether the contraction is already the canonical model
    /// (`p_g >= 23`).
    pub canonical_model: bool,
    /// `k = 0`: the canonical image degenerates to a cone.
    pub cone_canonical_image: bool,
    pub geometric_genus: i64,
    pub chi_omega: i64,
    pub canonical_volume: Rational,
    pub second_plurigenus: Rational,
    pub basket: Basket,
    pub classification: LineClassification,
}

/// Builds the first-line model for `(m, e)` with `m >= 5`,
/// `0 <= e <= 3m - 4` and `e` of the same parity as `3m - 4`.
///
/// The invariants come out of the divisor arithmetic two ways: through the
/// equivalent family `(e, a = m + e, b = 5(m + e)/2)` whenever those
/// parameters are in range, and directly on the bundle otherwise (the cover
/// halves push the volume computation down to `2 (K_Y + L - V/2)^3`, which
/// tolerates the half-integral class).  When both routes apply they must
/// agree.
pub fn structure_model(m: i64, e: i64) -> Result<StructureModel, FamilyError> {
    if m < 5 {
        return Err(FamilyError::ModelIndexTooSmall { m });
    }
    if e < 0 || e > 3 * m - 4 {
        return Err(FamilyError::ModelIndexOutOfRange { e, m });
    }
    if (3 * m - 4 - e) % 2 != 0 {
        return Err(FamilyError::ModelParity { e, m });
    }
    let k = (3 * m - 4 - e) / 2;

    let base = HirzebruchSurface::new(e)?;
    let twist = base.divisor_int(2, m + e);
    let bundle = ProjectiveBundle::new(&twist)?;
    let branch_section = bundle.hyperplane();
    let branch_residual =
        &bundle.divisor_int(5, 0, 0) + &bundle.pullback(&base.divisor_int(10, 5 * (m + e)))?;
    let branch_overlap = branch_residual.restrict_to_hyperplane();
    if !branch_overlap.is_zero() {
        return Err(FamilyError::Inconsistency {
            what: format!(
                "the residual branch class must miss the section, but restricts to {branch_overlap}"
            ),
        });
    }

    // Genus through the pushforward chain: the adjoint base class is
    // N = s + (e + k)l.
    let adjoint_base = base.divisor_int(1, e + k);
    let geometric_genus = adjoint_base.h0()? as i64;
    let chi_omega = chi_omega_from_genus(geometric_genus);

    // Volume directly on the bundle: 2 (K_Y + L - V/2)^3 with
    // L = (1/2)(B1 + B2).
    let half_branch = (&branch_section + &branch_residual).scale(&rat(1, 2));
    let half_hyperplane = bundle.divisor(rat(1, 2), Rational::zero(), Rational::zero());
    let adjoint = &(&bundle.canonical_class() + &half_branch) - &half_hyperplane;
    let canonical_volume = &rat(2, 1) * &adjoint.cube();

    // The equivalent family double-checks both invariants when its
    // parameters are in range.
    if e >= 3 && m >= e && (m + e) % 2 == 0 {
        let record = build_family(FamilyParams::new(e, m + e, 5 * (m + e) / 2)?)?;
        if record.geometric_genus != geometric_genus
            || record.canonical_volume != canonical_volume
        {
            return Err(FamilyError::Inconsistency {
                what: format!(
                    "family route gives (p_g, K^3) = ({}, {}), bundle route gives ({}, {})",
                    record.geometric_genus,
                    record.canonical_volume,
                    geometric_genus,
                    canonical_volume
                ),
            });
        }
    }

    let classification = classify(geometric_genus, &canonical_volume);
    let basket = match classification.on_line() {
        Some(line) => line.forced_basket(),
        None => {
            return Err(FamilyError::Inconsistency {
                what: format!(
                    "the model at (m, e) = ({m}, {e}) must land on the first line, \
                     classified as {}",
                    classification.region
                ),
            })
        }
    };
    let second_plurigenus =
        second_plurigenus(&canonical_volume, chi_omega, &basket)?.value;

    Ok(StructureModel {
        m,
        e,
        k,
        twist,
        branch_section,
        branch_residual,
        branch_overlap,
        hodge_degrees: (k, e + k),
        section_canonical_degree: rat(e + 2 * k - 2, 3),
        canonical_model: geometric_genus >= 23,
        cone_canonical_image: k == 0,
        geometric_genus,
        chi_omega,
        canonical_volume,
        second_plurigenus,
        basket,
        classification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noether::Region;

    /// Closed forms used only here, as oracles against the divisor
    /// arithmetic: p_g = 2b - 2a - 3e - 2 and K^3 = 3b - 7a/2 - 4e - 6.
    fn oracle_genus(e: i64, a: i64, b: i64) -> i64 {
        2 * b - 2 * a - 3 * e - 2
    }

    fn oracle_volume(e: i64, a: i64, b: i64) -> Rational {
        rat(6 * b - 7 * a - 8 * e - 12, 2)
    }

    #[test]
    fn constraints_are_named() {
        assert!(matches!(
            FamilyParams::new(2, 6, 15),
            Err(FamilyError::IndexTooSmall { e: 2 })
        ));
        assert!(matches!(
            FamilyParams::new(3, 5, 15),
            Err(FamilyError::TwistTooSmall { a: 5, e: 3 })
        ));
        assert!(matches!(
            FamilyParams::new(3, 6, 14),
            Err(FamilyError::BranchTooSmall { b: 14, a: 6 })
        ));
        assert!(FamilyParams::new(3, 6, 15).is_ok());
    }

    #[test]
    fn smallest_family_record() {
        let record = build_family(FamilyParams::new(3, 6, 15).unwrap()).unwrap();
        assert_eq!(record.geometric_genus, 7);
        assert_eq!(record.chi_omega, 6);
        assert_eq!(record.canonical_volume, rat(6, 1));
        assert!(record.smooth_total_space);
        assert!(record.nef_certificate.nef && record.nef_certificate.big);
        // Genus 7 is outside the scope of the line statements.
        assert_eq!(record.classification.region, Region::OutOfTheoremScope);
        assert!(record.basket.is_none());
        assert!(record.second_plurigenus.is_none());
        // Candidates are filtered by integrality of the degree-two count:
        // with volume 6 the correction must be an integer.
        assert!(record
            .basket_candidates
            .iter()
            .all(|b| b.correction().is_integer()));
        assert!(record.basket_candidates.contains(&Basket::empty()));
    }

    #[test]
    fn second_line_family_record() {
        let record = build_family(FamilyParams::new(3, 9, 23).unwrap()).unwrap();
        assert_eq!(record.geometric_genus, 17);
        assert_eq!(record.canonical_volume, rat(39, 2));
        assert!(!record.smooth_total_space);
        assert_eq!(record.classification.region, Region::OnSecond);
        assert_eq!(record.basket, Some(Basket::from_pairs([(2, 1)]).unwrap()));
        // P2 = 39/4 + 48 + 1/4 = 58.
        assert_eq!(record.second_plurigenus, Some(rat(58, 1)));
        assert!(record.basket_candidates.is_empty());
        let invariants = record.invariants().unwrap();
        assert_eq!(invariants.second_plurigenus, rat(58, 1));
    }

    #[test]
    fn record_matches_oracles_on_a_grid() {
        for e in 3..=5 {
            for a in (2 * e)..=(2 * e + 4) {
                let b_min = (5 * a + 1) / 2;
                for b in b_min..=(b_min + 3) {
                    let record = build_family(FamilyParams::new(e, a, b).unwrap()).unwrap();
                    assert_eq!(record.geometric_genus, oracle_genus(e, a, b));
                    assert_eq!(record.canonical_volume, oracle_volume(e, a, b));
                    assert_eq!(record.smooth_total_space, 2 * b == 5 * a);
                }
            }
        }
    }

    #[test]
    fn named_examples_per_line() {
        let record = noether_example(NoetherLine::First, 3, 0).unwrap();
        assert_eq!(record.params, FamilyParams::new(3, 6, 15).unwrap());
        assert_eq!(record.geometric_genus, 7);
        assert_eq!(record.canonical_volume, rat(6, 1));

        let record = noether_example(NoetherLine::Second, 3, 1).unwrap();
        assert_eq!(record.params, FamilyParams::new(3, 9, 23).unwrap());
        assert_eq!(record.geometric_genus, 17);
        assert_eq!(record.canonical_volume, rat(39, 2));

        let record = noether_example(NoetherLine::Third, 4, 2).unwrap();
        assert_eq!(record.params, FamilyParams::new(4, 12, 31).unwrap());
        assert_eq!(record.geometric_genus, 24);
        assert_eq!(record.canonical_volume, rat(29, 1));
    }

    #[test]
    fn examples_land_on_their_lines_with_closed_form_invariants() {
        for e in 3..=6 {
            for k in 0..=4 {
                let record = noether_example(NoetherLine::First, e, k).unwrap();
                assert_eq!(record.geometric_genus, 3 * e + 6 * k - 2);
                assert_eq!(record.canonical_volume, rat(4 * e + 8 * k - 6, 1));

                let record = noether_example(NoetherLine::Second, e, k).unwrap();
                assert_eq!(record.geometric_genus, 3 * e + 6 * k + 2);
                assert_eq!(record.canonical_volume, rat(8 * e + 16 * k - 1, 2));

                let record = noether_example(NoetherLine::Third, e, k).unwrap();
                assert_eq!(record.geometric_genus, 3 * e + 6 * k);
                assert_eq!(record.canonical_volume, rat(4 * e + 8 * k - 3, 1));
            }
        }
    }

    #[test]
    fn on_line_records_classify_on_line_once_in_scope() {
        for e in 3..=6 {
            for k in 0..=4 {
                for line in NoetherLine::ALL {
                    let record = noether_example(line, e, k).unwrap();
                    if record.geometric_genus >= 11 {
                        assert_eq!(record.classification.on_line(), Some(line));
                        assert_eq!(record.basket, Some(line.forced_basket()));
                    } else {
                        assert_eq!(
                            record.classification.region,
                            Region::OutOfTheoremScope
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn scan_order_and_determinism() {
        let rows = scan(3..=4, 0..=1, &NoetherLine::ALL).unwrap();
        assert_eq!(rows.len(), 12);
        let first_line_volumes: Vec<Rational> = rows[..4]
            .iter()
            .map(|r| r.canonical_volume.clone())
            .collect();
        assert_eq!(
            first_line_volumes,
            vec![rat(6, 1), rat(14, 1), rat(10, 1), rat(18, 1)]
        );
        // Same grid again: identical output.
        let again = scan(3..=4, 0..=1, &NoetherLine::ALL).unwrap();
        assert_eq!(rows, again);
        // Sequential reference.
        let mut sequential = Vec::new();
        for line in NoetherLine::ALL {
            for e in 3..=4 {
                for k in 0..=1 {
                    sequential.push(noether_example(line, e, k).unwrap());
                }
            }
        }
        assert_eq!(rows, sequential);
        // Duplicated and unsorted line selections collapse.
        let dup = scan(
            3..=4,
            0..=1,
            &[NoetherLine::Second, NoetherLine::First, NoetherLine::Second],
        )
        .unwrap();
        assert_eq!(dup.len(), 8);
        assert_eq!(dup[..4], rows[..4]);
    }

    #[test]
    fn empty_scan_ranges_give_empty_tables() {
        #[allow(clippy::reversed_empty_ranges)]
        let rows = scan(5..=4, 0..=1, &NoetherLine::ALL).unwrap();
        assert!(rows.is_empty());
    }

    #[test]
    fn model_at_the_smallest_genus() {
        let model = structure_model(5, 3).unwrap();
        assert_eq!(model.k, 4);
        assert_eq!(model.geometric_genus, 13);
        assert_eq!(model.canonical_volume, rat(14, 1));
        assert_eq!(model.hodge_degrees, (4, 7));
        assert_eq!(model.section_canonical_degree, rat(3, 1));
        assert_eq!(model.classification.region, Region::OnFirst);
        assert_eq!(model.basket, Basket::empty());
        assert_eq!(model.second_plurigenus, rat(43, 1));
        assert!(!model.canonical_model);
        assert!(!model.cone_canonical_image);
        assert!(model.branch_overlap.is_zero());
    }

    #[test]
    fn model_with_extremal_twisting() {
        // e = 3m - 4 forces k = 0: the cone case.
        let model = structure_model(9, 23).unwrap();
        assert_eq!(model.k, 0);
        assert_eq!(model.geometric_genus, 25);
        assert_eq!(model.canonical_volume, rat(30, 1));
        assert!(model.cone_canonical_image);
        assert!(model.canonical_model);
        assert_eq!(model.hodge_degrees, (0, 23));
    }

    #[test]
    fn model_beyond_the_family_range_still_computes() {
        // e > m: the equivalent family would need a < 2e, so only the
        // direct bundle route applies.
        let model = structure_model(5, 7).unwrap();
        assert_eq!(model.k, 2);
        assert_eq!(model.geometric_genus, 13);
        assert_eq!(model.canonical_volume, rat(14, 1));
        assert_eq!(model.hodge_degrees, (2, 9));
        // e < 3 is likewise outside the family constraints.
        let model = structure_model(6, 0).unwrap();
        assert_eq!(model.geometric_genus, 16);
        assert_eq!(model.canonical_volume, rat(18, 1));
        assert_eq!(model.hodge_degrees, (7, 7));
    }

    #[test]
    fn model_constraints_are_named() {
        assert!(matches!(
            structure_model(4, 2),
            Err(FamilyError::ModelIndexTooSmall { m: 4 })
        ));
        assert!(matches!(
            structure_model(5, 12),
            Err(FamilyError::ModelIndexOutOfRange { e: 12, m: 5 })
        ));
        assert!(matches!(
            structure_model(5, 4),
            Err(FamilyError::ModelParity { e: 4, m: 5 })
        ));
        assert!(matches!(
            structure_model(5, -1),
            Err(FamilyError::ModelIndexOutOfRange { e: -1, m: 5 })
        ));
    }

    #[test]
    fn model_agrees_with_equivalent_family() {
        for m in 5..=9 {
            for e in 3..=m {
                if (3 * m - 4 - e) % 2 != 0 || (m + e) % 2 != 0 {
                    continue;
                }
                let model = structure_model(m, e).unwrap();
                let record =
                    build_family(FamilyParams::new(e, m + e, 5 * (m + e) / 2).unwrap()).unwrap();
                assert_eq!(model.geometric_genus, record.geometric_genus);
                assert_eq!(model.canonical_volume, record.canonical_volume);
            }
        }
    }
}
