//! Fixed-point decimals and exact rational comparisons.

use std::cmp::Ordering;
use std::fmt;

/// Costs and weights are stored as integers scaled by this factor, so inputs
/// with up to six fractional digits are represented exactly.
pub const SCALE: i64 = 1_000_000;

const FRACTION_DIGITS: usize = 6;

/// Parses a non-negative decimal such as `3`, `0.5` or `12.000125` into a
/// scaled integer.
pub fn parse_scaled(text: &str) -> std::result::Result<i64, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty number".into());
    }
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("invalid number `{text}`"));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("invalid non-negative decimal `{text}`"));
    }
    if frac_part.len() > FRACTION_DIGITS {
        return Err(format!("`{text}` has more than {FRACTION_DIGITS} fractional digits"));
    }
    let int_value: i64 =
        if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| format!("number `{text}` is too large"))? };
    let mut frac_value: i64 = 0;
    for (i, c) in frac_part.chars().enumerate() {
        frac_value += (c as i64 - '0' as i64) * 10_i64.pow((FRACTION_DIGITS - 1 - i) as u32);
    }
    int_value
        .checked_mul(SCALE)
        .and_then(|v| v.checked_add(frac_value))
        .ok_or_else(|| format!("number `{text}` is too large"))
}

/// Formats a scaled integer as the shortest exact decimal.
pub fn format_scaled(value: i64) -> String {
    let sign = if value < 0 { "-" } else { "" };
    let abs = value.unsigned_abs();
    let int_part = abs / SCALE as u64;
    let frac = abs % SCALE as u64;
    if frac == 0 {
        return format!("{sign}{int_part}");
    }
    let digits = format!("{frac:06}");
    format!("{sign}{int_part}.{}", digits.trim_end_matches('0'))
}

/// Converts a scaled integer to its natural floating-point value.
pub fn to_natural(value: i64) -> f64 {
    value as f64 / SCALE as f64
}

/// An exact non-negative-denominator fraction compared by cross
/// multiplication. Densities are `Ratio::new(cost, weight)`; both operands
/// carry the same scale so the ratio is already in natural units.
#[derive(Clone, Copy, Debug)]
pub struct Ratio {
    num: i128,
    den: i128,
}

impl Ratio {
    /// Panics if `den` is zero.
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "ratio with zero denominator");
        if den < 0 {
            Ratio { num: -num, den: -den }
        } else {
            Ratio { num, den }
        }
    }

    /// `None` when the denominator is zero.
    pub fn checked(num: i128, den: i128) -> Option<Self> {
        (den != 0).then(|| Ratio::new(num, den))
    }

    pub fn integer(value: i128) -> Self {
        Ratio { num: value, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Multiplies by a small integer factor.
    pub fn scale(&self, factor: i128) -> Self {
        Ratio::new(self.num * factor, self.den)
    }

    /// Reduces by the greatest common divisor to keep later products small.
    pub fn reduced(&self) -> Self {
        let g = gcd(self.num.unsigned_abs(), self.den.unsigned_abs()) as i128;
        if g <= 1 {
            *self
        } else {
            Ratio { num: self.num / g, den: self.den / g }
        }
    }

    /// `self <= value / weight` without dividing.
    pub fn le_frac(&self, value: i128, weight: i128) -> bool {
        debug_assert!(weight > 0);
        self.num * weight <= value * self.den
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        if r.den == 1 {
            write!(f, "{}", r.num)
        } else {
            write!(f, "{}/{}", r.num, r.den)
        }
    }
}

/// Smallest `L >= 0` with `2^L * den >= num`, i.e. `ceil(log2(num/den))`
/// clamped at zero.
pub fn ceil_log2_ratio(num: i128, den: i128) -> u32 {
    assert!(den > 0);
    let mut l = 0u32;
    let mut scaled = den;
    while scaled < num {
        scaled *= 2;
        l += 1;
    }
    l
}

/// Largest `L >= 0` with `2^L * den <= num`; zero when `num < 2 * den`.
pub fn floor_log2_ratio(num: i128, den: i128) -> u32 {
    assert!(den > 0);
    let mut l = 0u32;
    let mut scaled = den * 2;
    while scaled <= num {
        scaled *= 2;
        l += 1;
    }
    l
}

/// `ceil(log2(x))` for a positive integer count, with `ceil(log2(1)) = 0`.
pub fn ceil_log2(x: u64) -> u32 {
    ceil_log2_ratio(x as i128, 1)
}

/// The harmonic number `H_n`.
pub fn harmonic(n: u64) -> f64 {
    (1..=n).map(|i| 1.0 / i as f64).sum()
}
