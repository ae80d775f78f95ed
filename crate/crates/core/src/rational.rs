//! Exact rational numbers used for every bid, bound and payment.
//!
//! Values are `Ratio<i128>`. The workspace builds with overflow checks in
//! every profile, so an intermediate that does not fit panics instead of
//! silently wrapping.

use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::Error;

pub type Rational = num_rational::Ratio<i128>;

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

pub fn frac(numer: i128, denom: i128) -> Rational {
    Rational::new(numer, denom)
}

/// Parses `"7"`, `"9/2"`, `"4.5"` or `".25"` into an exact rational.
///
/// Decimal literals are converted digit by digit, so `"0.1"` is exactly
/// one tenth. Negative values are accepted here; range checks belong to the
/// callers.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not an exact rational: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if s.contains('/') {
        let value = Rational::from_str(s).map_err(|_| bad())?;
        return Ok(value);
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, fraction) = match body.split_once('.') {
        Some((w, f)) => (w, f),
        None => (body, ""),
    };
    if whole.is_empty() && fraction.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(fraction.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if whole.len() + fraction.len() > 30 {
        return Err(Error::Parse(format!("too many digits: {text:?}")));
    }
    let digits = format!("{whole}{fraction}");
    let numer: i128 = if digits.is_empty() {
        0
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let denom = 10i128.pow(fraction.len() as u32);
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

/// Canonical text form: `"6"`, `"9/2"`, `"-1/3"`.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Decimal rendering for tables; exact when the denominator divides a power
/// of ten, otherwise falls back to the fraction.
pub fn display_decimal(value: &Rational) -> String {
    let mut denom = *value.denom();
    let mut scale = 0u32;
    while denom % 2 == 0 || denom % 5 == 0 {
        if denom % 10 == 0 {
            denom /= 10;
        } else if denom % 2 == 0 {
            denom /= 2;
        } else {
            denom /= 5;
        }
        scale += 1;
        if scale > 12 {
            break;
        }
    }
    if denom != 1 {
        return value.to_string();
    }
    if scale == 0 {
        return value.numer().to_string();
    }
    let factor = 10i128.pow(scale);
    let scaled = (value * int(factor)).to_integer();
    let sign = if value.is_negative() { "-" } else { "" };
    let abs = scaled.abs();
    let whole = abs / factor;
    let mut frac_part = format!("{:0width$}", abs % factor, width = scale as usize);
    while frac_part.ends_with('0') {
        frac_part.pop();
    }
    if frac_part.is_empty() {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac_part}")
    }
}

pub fn sum<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| acc + v)
}
