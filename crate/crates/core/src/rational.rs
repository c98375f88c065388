//! Exact arithmetic helpers.
//!
//! Every admissibility decision in this crate is made on exact rationals or
//! integers; no floating point is involved anywhere.

use num_integer::Roots;

/// Exact rational over `i128`, wide enough for every parameter range the
//  enumeration reaches (values stay far below 2^100).
pub type Rational = num_rational::Ratio<i128>;

/// Floor of the integer square root.
pub fn isqrt(n: i128) -> i128 {
    debug_assert!(n >= 0);
    n.sqrt()
}

/// Whether `n` is a perfect square, decided by integer square root.
pub fn is_perfect_square(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = isqrt(n);
    r * r == n
}

/// The exact square root when `n` is a perfect square.
pub fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = isqrt(n);
    (r * r == n).then_some(r)
}
