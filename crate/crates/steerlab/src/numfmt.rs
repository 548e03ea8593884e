//! Numeric output formatting: everything the tool prints is rounded to
//! nine significant digits, which sits above the double-precision noise
//! floor for this problem scale and keeps reports readable.

/// Round to nine significant decimal digits.
pub fn sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let exponent = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(8 - exponent);
    (x * scale).round() / scale
}

/// Shortest decimal form of the 9-digit rounding.
pub fn fmt9(x: f64) -> String {
    format!("{}", sig9(x))
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    #[test]
    fn rounds_to_nine_digits() {
        assert_eq!(sig9(0.39712230215827338), 0.397122302);
        assert_eq!(sig9(12.377697841726619), 12.3776978);
        assert_eq!(sig9(-13.7), -13.7);
        assert_eq!(sig9(0.0), 0.0);
        assert_eq!(sig9(1.0), 1.0);
        assert_eq!(sig9(193.20999999999998), 193.21);
    }

    #[test]
    fn formats_compactly() {
        assert_eq!(fmt9(0.39712230215827338), "0.397122302");
        assert_eq!(fmt9(0.0001), "0.0001");
        assert_eq!(fmt9(0.0), "0");
    }
}
