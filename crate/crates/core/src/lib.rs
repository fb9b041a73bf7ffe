//! Exact intersection arithmetic and Noether-line geography for minimal
//! threefolds of general type.
//!
//! Everything here computes over exact rationals; there are no floats and
//! no tolerances.  The crate has five layers:
//!
//! * [`rational`]: arbitrary-precision rational numbers with `p/q` parsing
//!   and printing.
//! * [`chow`]: divisor classes and triple intersection numbers on a fixed
//!   tower of spaces, namely a Hirzebruch surface, a `P^1`-bundle over it,
//!   and a double cover of that bundle.
//! * [`reid`]: baskets of terminal quotient singularities, their plurigenus
//!   corrections, the Riemann-Roch second plurigenus, and exhaustive basket
//!   enumeration under a correction budget.
//! * [`noether`]: the three boundary lines `K^3 = 4/3 p_g - c` in the
//!   `(p_g, K^3)`-plane, the congruence conditions that select them, the
//!   classifier for arbitrary pairs, and the bounds that surround the lines.
//! * [`families`]: concrete branched-cover families realizing points on the
//!   lines, a parallel scanner over their parameter grid, and the structure
//!   model that exhibits every allowed invariant pair.
//!
//! The [`dsl`] module adds a small scripting language over the same
//! operations, used by the command-line tool and handy in tests.
//!
//! # Example
//!
//! Build the cover `X -> Y -> F_3` branched over `2L` with
//! `L = 3V + p*(5s + 15l)`, then read off its invariants:
//!
//! ```
//! use noetherline::chow::{DoubleCover, HirzebruchSurface, ProjectiveBundle};
//! use noetherline::rational::Rational;
//!
//! let base = HirzebruchSurface::new(3)?;
//! let bundle = ProjectiveBundle::new(&base.divisor_int(2, 6))?;
//! let cover = DoubleCover::new(&bundle.divisor_int(3, 5, 15))?;
//!
//! assert_eq!(cover.contracted_canonical_volume(), Rational::from_int(6));
//! assert_eq!(cover.geometric_genus()?, 7);
//! # Ok::<(), noetherline::chow::ChowError>(())
//! ```

pub mod chow;
pub mod dsl;
pub mod families;
pub mod noether;
pub mod rational;
pub mod reid;

pub use chow::{
    BundleDivisor, ChowError, CoverDivisor, DoubleCover, HirzebruchSurface, ProjectiveBundle,
    SurfaceDivisor,
};
pub use families::{
    build_family, noether_example, scan, structure_model, FamilyError, FamilyParams, FamilyRecord,
    StructureModel,
};
pub use noether::{classify, line_value, LineClassification, NoetherError, NoetherLine, Region};
pub use rational::{rat, Rational};
pub use reid::{second_plurigenus, Basket, BasketPoint, InvariantSet, ReidError};
