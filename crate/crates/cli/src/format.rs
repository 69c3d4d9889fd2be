//! Decimal rendering used by every command, fixed at 10 significant
//! digits so repeated runs are byte-identical and diffable.

/// Formats a value with 10 significant digits in plain decimal notation
/// (no exponent). Zero renders as `0.0000000000`; negative values keep
/// their sign. Values rounding up across a power of ten keep the digit
/// count of their original magnitude.
pub fn sig10(value: f64) -> String {
    if value == 0.0 {
        return "0.0000000000".to_string();
    }
    if value < 0.0 {
        return format!("-{}", sig10(-value));
    }
    // Digits before the decimal point, zero or negative for values
    // below one; the rest of the 10 significant digits go after it.
    // The nudge keeps values an ulp away from a power of ten in the
    // digit class they round into.
    let integer_digits = (value.log10() + 1e-12).floor() as i32 + 1;
    let decimals = (10 - integer_digits).max(0) as usize;
    format!("{value:.decimals$}")
}
