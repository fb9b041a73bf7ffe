//! Shared inputs for the benchmark suite.

/// A branched-cover parameter triple `(e, a, b)` that sits on the first
/// boundary line, used as the standard benchmark instance.
pub const LINE_EXAMPLE: (i64, i64, i64) = (3, 8, 20);

/// The larger instance used to measure scaling of the exact arithmetic.
pub const LARGE_EXAMPLE: (i64, i64, i64) = (12, 40, 105);
