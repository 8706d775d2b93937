//! CSV assembly: 10-significant-digit floats, header line, trailing
//! `# seed=<seed> version=<version>` comment.

use std::fmt::Write as _;

/// Formats with 10 significant digits, positional where reasonable and
/// scientific otherwise, trailing zeros stripped (printf `%.10g`).
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.9e}");
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..10).contains(&exp) {
        let decimals = (9 - exp).max(0) as usize;
        let mut s = format!("{x:.decimals$}");
        if s.contains('.') {
            while s.ends_with('0') {
                s.pop();
            }
            if s.ends_with('.') {
                s.pop();
            }
        }
        s
    } else {
        let mut m = mant.to_string();
        if m.contains('.') {
            while m.ends_with('0') {
                m.pop();
            }
            if m.ends_with('.') {
                m.pop();
            }
        }
        format!("{m}e{exp}")
    }
}

/// Joins a header, data rows and the seed/version trailer into one CSV
/// document.
pub fn csv_document(header: &str, rows: &[String], seed: u64) -> String {
    let mut out = String::with_capacity(rows.len() * 32 + 64);
    let _ = writeln!(out, "{header}");
    for row in rows {
        let _ = writeln!(out, "{row}");
    }
    let _ = writeln!(out, "# seed={seed} version={}", env!("CARGO_PKG_VERSION"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(-0.0), "0");
        assert_eq!(fmt_sig(0.3), "0.3");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(-0.25), "-0.25");
        assert_eq!(fmt_sig(0.761_021_695_326_496_3), "0.7610216953");
        assert_eq!(fmt_sig(1234.5678901234), "1234.56789");
        assert_eq!(fmt_sig(1e-5), "1e-5");
        assert_eq!(fmt_sig(-2.5e12), "-2.5e12");
        assert_eq!(fmt_sig(0.999999999999), "1");
        assert_eq!(fmt_sig(123456789.12), "123456789.1");
    }

    #[test]
    fn document_layout() {
        let doc = csv_document("a,b", &["1,2".into(), "3,4".into()], 7);
        let lines: Vec<&str> = doc.lines().collect();
        assert_eq!(lines[0], "a,b");
        assert_eq!(lines[1], "1,2");
        assert_eq!(lines[2], "3,4");
        assert!(lines[3].starts_with("# seed=7 version="));
        assert!(doc.ends_with('\n'));
    }
}
