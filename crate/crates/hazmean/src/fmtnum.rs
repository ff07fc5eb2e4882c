//! Serialized numeric output uses 12 significant digits everywhere so that
//! reports diff cleanly across runs and toolchains.

/// Format with 12 significant digits, shortest representation.
pub fn fmt12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap();
    let magnitude = rounded.abs();
    if (1e-4..1e15).contains(&magnitude) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::fmt12;

    #[test]
    fn rounds_to_twelve_significant_digits() {
        assert_eq!(fmt12(2.0), "2");
        assert_eq!(fmt12(1.5), "1.5");
        assert_eq!(fmt12(std::f64::consts::E), "2.71828182846");
        assert_eq!(fmt12(0.0), "0");
        assert_eq!(fmt12(-0.125), "-0.125");
        assert_eq!(fmt12(1.0e-15), "1e-15");
    }
}
