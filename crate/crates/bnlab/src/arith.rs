//! Small exact-integer helpers shared across the crate.
//!
//! Everything here is 128-bit checked arithmetic; scans stay far below the
//! limits, so any overflow is a bug and aborts loudly.

/// Checked multiplication; overflow is a hard error.
#[inline]
pub fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("i128 overflow in multiplication")
}

/// Checked addition; overflow is a hard error.
#[inline]
pub fn add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("i128 overflow in addition")
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: i128) -> i128 {
    assert!(n >= 0, "isqrt of negative number");
    if n < 2 {
        return n;
    }
    // Newton iteration with an f64 seed, then exact correction.
    let mut x = (n as f64).sqrt() as i128;
    while x > 0 && x > n / x {
        x = (x + n / x) / 2;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// `Some(s)` with `s*s == n` when `n` is a perfect square.
pub fn perfect_square(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let s = isqrt(n);
    (s * s == n).then_some(s)
}

pub fn gcd(a: i128, b: i128) -> i128 {
    num_integer::Integer::gcd(&a, &b)
}

/// Extended gcd: returns `(g, x, y)` with `g = a*x + b*y`, `g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Floor division.
#[inline]
pub fn div_floor(a: i128, b: i128) -> i128 {
    num_integer::Integer::div_floor(&a, &b)
}

/// Nonnegative remainder of `a` modulo `b > 0`.
#[inline]
pub fn mod_floor(a: i128, b: i128) -> i128 {
    num_integer::Integer::mod_floor(&a, &b)
}

/// `floor(g - 2*sqrt(g) + 1)` evaluated in exact integer arithmetic.
///
/// Used as the upper Clifford-index window on the Brill-Noether hyperbola.
pub fn floor_g_minus_2sqrtg_plus_1(g: i64) -> i64 {
    assert!(g >= 0);
    // floor(g + 1 - sqrt(4g)) = g + 1 - ceil(sqrt(4g)), exact because 4g is a
    // perfect square exactly when sqrt(4g) is an integer.
    let four_g = 4 * g as i128;
    let s = isqrt(four_g);
    let ceil = if s * s == four_g { s } else { s + 1 };
    (g as i128 + 1 - ceil) as i64
}
