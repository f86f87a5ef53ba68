//! Exact rational scalars and their decimal text encoding.
//!
//! Weights and biases are rationals, never floats: a neuron fires exactly when
//! its potential strictly exceeds its bias, and several constructions sit a
//! hair away from their thresholds (a potential of exactly 0.5 against a bias
//! of 0.5 must *not* fire). [`Rational`] keeps every comparison exact.
//!
//! On disk, values are written as plain decimal strings (`"0.5"`, `"-0.7"`,
//! `"3"`). Every weight in the shipped constructions has a denominator of the
//! form 2^a·5^b, so this encoding is lossless; [`format_decimal`] refuses
//! anything that has no finite decimal expansion.

use thiserror::Error;

/// Exact scalar used for weights, biases, and potentials.
pub type Rational = num_rational::Rational64;

/// Shorthand for an integer-valued [`Rational`].
pub fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

/// Shorthand for `numer/denom` as a [`Rational`].
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

/// Failure to read or write the decimal encoding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecimalError {
    /// The literal was empty (or just a sign).
    #[error("empty decimal literal")]
    Empty,
    /// The literal contained something other than `[+-]?digits[.digits]`.
    #[error("malformed decimal literal {0:?}")]
    Malformed(String),
    /// The literal parses but does not fit the scalar range.
    #[error("decimal literal {0:?} is out of range")]
    OutOfRange(String),
    /// The value has no finite decimal expansion (denominator is not 2^a·5^b).
    #[error("{0} has no finite decimal expansion")]
    NotFinite(Rational),
}

/// Parses a decimal literal such as `"2"`, `"-0.7"`, or `"+10.25"`.
///
/// The grammar is strict: an optional sign, a non-empty integer part, and an
/// optional non-empty fractional part. No exponents, no `.5`, no `1.`.
pub fn parse_decimal(text: &str) -> Result<Rational, DecimalError> {
    let unsigned = text
        .strip_prefix('-')
        .or_else(|| text.strip_prefix('+'))
        .unwrap_or(text);
    let negative = text.starts_with('-');
    if unsigned.is_empty() {
        return Err(DecimalError::Empty);
    }

    let (int_part, frac_part) = match unsigned.split_once('.') {
        Some((i, f)) => (i, f),
        None => (unsigned, ""),
    };
    let valid = !int_part.is_empty()
        && int_part.bytes().all(|b| b.is_ascii_digit())
        && (frac_part.is_empty() || frac_part.bytes().all(|b| b.is_ascii_digit()))
        && (!unsigned.contains('.') || !frac_part.is_empty());
    if !valid {
        return Err(DecimalError::Malformed(text.to_string()));
    }
    if frac_part.len() > 18 {
        return Err(DecimalError::OutOfRange(text.to_string()));
    }

    let out_of_range = || DecimalError::OutOfRange(text.to_string());
    let int_value: i128 = int_part.parse().map_err(|_| out_of_range())?;
    let frac_value: i128 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().map_err(|_| out_of_range())?
    };
    let denom = 10i128.pow(frac_part.len() as u32);
    let mut numer = int_value
        .checked_mul(denom)
        .and_then(|v| v.checked_add(frac_value))
        .ok_or_else(out_of_range)?;
    if negative {
        numer = -numer;
    }

    let numer: i64 = numer.try_into().map_err(|_| out_of_range())?;
    let denom: i64 = denom.try_into().map_err(|_| out_of_range())?;
    Ok(Rational::new(numer, denom))
}

/// Renders a rational as its exact finite decimal, in canonical form:
/// no leading `+`, no trailing zeros, no trailing dot (`rat(5,2)` → `"2.5"`,
/// `int(-3)` → `"-3"`).
pub fn format_decimal(value: &Rational) -> Result<String, DecimalError> {
    let numer = *value.numer() as i128;
    let denom = *value.denom() as i128; // reduced, > 0

    let mut rest = denom;
    let mut twos = 0u32;
    let mut fives = 0u32;
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    if rest != 1 {
        return Err(DecimalError::NotFinite(*value));
    }

    let digits = twos.max(fives);
    let pow10 = 10i128.pow(digits);
    let scaled = numer * (pow10 / denom); // value · 10^digits, exactly
    let sign = if scaled < 0 { "-" } else { "" };
    let magnitude = scaled.unsigned_abs();
    let int_part = magnitude / pow10 as u128;
    let mut frac_part = format!("{:0width$}", magnitude % pow10 as u128, width = digits as usize);
    while frac_part.ends_with('0') {
        frac_part.pop();
    }

    Ok(if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    })
}
