//! Number formatting shared by every text output.

/// Formats `x` with 17 significant digits, which round-trips any `f64`.
///
/// Non-finite values are written as `inf`, `-inf` or `nan`; callers that
/// emit JSON must map those to `null` themselves.
pub fn fmt17(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{:.16e}", x)
    }
}

/// Parses a number written by [`fmt17`] (or any plain float literal).
pub fn parse_f64(s: &str) -> Option<f64> {
    match s.trim() {
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        "nan" => Some(f64::NAN),
        t => t.parse().ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_bit_exact() {
        for &x in &[0.0, -0.0, 1.0 / 3.0, 5.18e-4, 1e-300, f64::MAX, -2.5e17] {
            let back = parse_f64(&fmt17(x)).unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x}");
        }
    }

    #[test]
    fn seventeen_significant_digits() {
        let s = fmt17(0.1);
        let mantissa = s.split('e').next().unwrap().replace(['.', '-'], "");
        assert_eq!(mantissa.len(), 17);
    }
}
