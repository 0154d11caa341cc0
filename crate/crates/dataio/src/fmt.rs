//! Deterministic float formatting shared by every emitter: all serialized
//! floats are rounded to six significant digits, so written artifacts are
//! byte-stable across runs and round-trip within 1e-6 relative error.

/// Significant digits kept by every writer in this crate.
pub const OUTPUT_SIG_DIGITS: u32 = 6;

/// Round `x` to `digits` significant (not fractional) digits.
/// Zero and non-finite values pass through unchanged.
pub fn round_sig(x: f64, digits: u32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(digits as i32 - 1 - magnitude);
    (x * factor).round() / factor
}

/// Render `x` for CSV cells: round to [`OUTPUT_SIG_DIGITS`], then use plain
/// decimal notation for moderate magnitudes and exponent notation for
/// extreme ones. The output parses back to exactly the rounded value.
pub fn format_float(x: f64) -> String {
    let r = round_sig(x, OUTPUT_SIG_DIGITS);
    if r == 0.0 {
        return "0".to_string();
    }
    let a = r.abs();
    if (1e-4..1e8).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_six_significant_digits() {
        assert_eq!(round_sig(0.28889148208769745, 6), 0.288891);
        assert_eq!(round_sig(123_456_789.0, 6), 123_457_000.0);
        assert_eq!(round_sig(-1.2345675e-7, 6), -1.23457e-7);
        assert_eq!(round_sig(0.5, 6), 0.5);
        assert_eq!(round_sig(0.0, 6), 0.0);
        assert_eq!(round_sig(-0.9999999, 6), -1.0);
    }

    #[test]
    fn rounding_error_is_within_half_ulp_of_six_digits() {
        // Half an ulp in the 6th significant digit is 5e-6 relative at worst
        // (mantissa near 1).
        let xs = [std::f64::consts::PI, 2.0_f64.sqrt() * 1e-9, 7.77e13, -0.123456789];
        for &x in &xs {
            let r = round_sig(x, 6);
            assert!(((r - x) / x).abs() <= 5.0e-6 + 1e-15, "x={x} r={r}");
        }
    }

    #[test]
    fn formatting_is_plain_for_moderate_and_scientific_for_extreme() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(0.5), "0.5");
        assert_eq!(format_float(1234.5), "1234.5");
        assert_eq!(format_float(0.28889148208769745), "0.288891");
        assert_eq!(format_float(5e-5), "5e-5");
        assert_eq!(format_float(1e8), "1e8");
        assert_eq!(format_float(-1.2345675e-7), "-1.23457e-7");
        // Eight significant digits round up and cross into exponent range.
        assert_eq!(format_float(99_999_999.0), "1e8");
        assert_eq!(format_float(12_345_678.0), "12345700");
    }

    #[test]
    fn formatted_text_parses_back_to_the_rounded_value() {
        let xs = [0.123456789, 3.0e-17, -4.4e22, 1.0, 0.1 + 0.2, 6e7, -1e-4];
        for &x in &xs {
            let s = format_float(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, round_sig(x, 6), "text {s}");
        }
    }
}
