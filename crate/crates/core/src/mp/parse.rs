//! Decimal-string and fraction parsing, and the decimal encoding used by fixtures.

use rug::Float;

use crate::error::{Error, Result};

/// Parses `"0.25"`, `"-1e-3"`, `"4"` or a simple fraction `"2/3"` at `prec` bits.
///
/// Fractions are divided at full precision so values such as 2/3 are not
/// rounded through binary floating point first.
pub fn parse_real(text: &str, prec: u32) -> Result<Float> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let n = parse_decimal(num, prec)?;
        let d = parse_decimal(den, prec)?;
        if d.is_zero() {
            return Err(Error::domain(format!("zero denominator in {text:?}")));
        }
        return Ok(n / d);
    }
    parse_decimal(text, prec)
}

fn parse_decimal(text: &str, prec: u32) -> Result<Float> {
    let text = text.trim();
    let parsed = Float::parse(text)
        .map_err(|e| Error::domain(format!("cannot parse {text:?} as a number: {e}")))?;
    let value = Float::with_val(prec, parsed);
    if !value.is_finite() {
        return Err(Error::domain(format!("{text:?} is not finite")));
    }
    Ok(value)
}

/// Scientific-notation decimal string with `digits` significant digits.
pub fn format_decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits.max(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_are_exactly_divided() {
        let two_thirds = parse_real("2/3", 300).unwrap();
        let expect = Float::with_val(300, 2) / 3u32;
        assert_eq!(two_thirds, expect);
        assert_eq!(parse_real(" -1.5e-3 ", 64).unwrap().to_f64(), -1.5e-3);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_real("abc", 64).is_err());
        assert!(parse_real("1/0", 64).is_err());
    }

    #[test]
    fn decimal_strings_reparse_identically() {
        let x = Float::with_val(200, 7) / 9u32;
        let s = format_decimal(&x, 40);
        let y = parse_real(&s, 200).unwrap();
        assert_eq!(format_decimal(&y, 40), s);
    }
}
