//! Deterministic number formatting for CSV output.
//!
//! Every float is rendered in scientific notation with 12 significant
//! digits, which is platform-independent and round-trips f64 through the
//! comparison tooling without ambiguity.

/// 12 significant digits, scientific notation. NaN/inf become empty
/// cells: they encode "not computed at this point".
pub fn cell(x: f64) -> String {
    if x.is_finite() {
        format!("{:.11e}", x)
    } else {
        String::new()
    }
}

pub fn opt_cell(x: Option<f64>) -> String {
    x.map(cell).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(cell(1.0), "1.00000000000e0");
        assert_eq!(cell(-0.25), "-2.50000000000e-1");
        assert_eq!(cell(1.0 / 3.0), "3.33333333333e-1");
    }

    #[test]
    fn non_finite_is_empty() {
        assert_eq!(cell(f64::NAN), "");
        assert_eq!(cell(f64::INFINITY), "");
        assert_eq!(opt_cell(None), "");
    }
}
