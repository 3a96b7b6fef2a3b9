use visang::VerificationReport;

/// `x` with 12 significant digits, '.' as decimal separator, positional
/// notation for moderate magnitudes.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..=15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

/// `param,ratio` rows of a sweep.
pub fn sweep_csv(report: &VerificationReport) -> String {
    let mut out = String::from("param,ratio\n");
    for (p, r) in report.sweep.iter().flatten() {
        out.push_str(&format!("{},{}\n", sig12(*p), sig12(*r)));
    }
    out
}

/// One header line and one data row; extras follow the fixed columns.
pub fn report_csv(report: &VerificationReport) -> String {
    let mut header = vec![
        "suite_id".to_string(),
        "trials".into(),
        "violations".into(),
        "worst_margin".into(),
        "estimate".into(),
        "seed".into(),
    ];
    let mut row = vec![
        report.suite_id.clone(),
        report.trials.to_string(),
        report.violations.to_string(),
        sig12(report.worst_margin),
        report.estimate.map(sig12).unwrap_or_default(),
        report.seed.to_string(),
    ];
    for (k, v) in &report.extras {
        header.push(k.clone());
        row.push(sig12(*v));
    }
    format!("{}\n{}\n", header.join(","), row.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(1.0), "1.00000000000");
        assert_eq!(sig12(std::f64::consts::PI), "3.14159265359");
        assert_eq!(sig12(-123.456), "-123.456000000");
        assert_eq!(sig12(1e-4), "0.000100000000000");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(1.5e-9), "1.50000000000e-9");
        for x in [1.0, 0.123, 1999.5, 2.5e-3] {
            let s = sig12(x);
            let digits: String = s.chars().filter(char::is_ascii_digit).collect();
            assert_eq!(digits.trim_start_matches('0').len(), 12, "{s}");
            assert_eq!(s.parse::<f64>().unwrap(), format!("{x:.11e}").parse::<f64>().unwrap());
        }
    }
}
