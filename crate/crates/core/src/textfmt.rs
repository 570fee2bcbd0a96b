/// Formats `v` with `digits` significant digits, trailing zeros trimmed
/// (the `%.Ng` convention without switching to exponent form for ordinary
/// magnitudes).
pub(crate) fn sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".to_string() } else { v.to_string() };
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..digits as i32).contains(&exp) {
        let s = format!("{:.*e}", digits.saturating_sub(1), v);
        let (mantissa, e) = s.split_once('e').unwrap_or((&s, "0"));
        return format!("{}e{}", trim_zeros(mantissa), e);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    // a rounding carry (9.99..96 -> 10.00..0) only adds zeros that get trimmed
    let s = format!("{v:.decimals$}");
    let t = trim_zeros(&s);
    if t == "-0" {
        "0".to_string()
    } else {
        t.to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
