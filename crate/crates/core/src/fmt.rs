//! Number formatting shared by reports and the command line.

/// `x` to `digits` significant digits, trailing zeros dropped.
pub fn sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-5..15).contains(&mag) {
        return format!("{:.*e}", digits.saturating_sub(1), x);
    }
    let decimals = (digits as i32 - 1 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Ten significant digits.
pub fn sig10(x: f64) -> String {
    sig(x, 10)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(sig10(0.42000000000000004), "0.42");
        assert_eq!(sig10(4f64.ln() / 3.0 * 1.1887218755408671 / 1.1887218755408671), "0.4620981204");
        assert_eq!(sig10(0.0), "0");
        assert_eq!(sig10(30.0), "30");
        assert_eq!(sig10(-1.5e-9), "-1.500000000e-9");
    }
}
