//! Deterministic CSV emission for sweep results.

use crate::sweep::ResultRow;
use anyhow::{Context, Result};
use std::io::Write;
use std::path::Path;

/// Fixed column header. Axes that were not swept stay as empty fields.
pub const HEADER: &str = "delta,epsilon,tc_over_th,s_max,power_ss,abs_power,bound,qdot_h,qdot_c,efficiency,carnot,entropy,regime";

/// Scientific notation with 12 significant digits; empty for absent values,
/// `inf`/`-inf`/`nan` for non-finite ones (zero-temperature and failed cells).
fn format_field(v: Option<f64>) -> String {
    match v {
        None => String::new(),
        Some(x) if x.is_finite() => format!("{x:.11e}"),
        Some(x) if x.is_nan() => "nan".into(),
        Some(x) if x > 0.0 => "inf".into(),
        Some(_) => "-inf".into(),
    }
}

fn format_row(row: &ResultRow) -> String {
    let fields = [
        format_field(row.delta),
        format_field(row.epsilon),
        format_field(row.tc_over_th),
        format_field(Some(row.s_max)),
        format_field(Some(row.power_ss)),
        format_field(Some(row.abs_power)),
        format_field(Some(row.bound)),
        format_field(Some(row.qdot_h)),
        format_field(Some(row.qdot_c)),
        format_field(Some(row.efficiency)),
        format_field(Some(row.carnot)),
        format_field(Some(row.entropy)),
        row.regime.clone(),
    ];
    fields.join(",")
}

/// Serialize rows to a string (header + one line per row, LF endings).
pub fn to_csv_string(rows: &[ResultRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format_row(row));
        out.push('\n');
    }
    out
}

/// Write rows to `path`; byte-identical output for identical inputs.
pub fn write_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    let text = to_csv_string(rows);
    let mut file = std::fs::File::create(path)
        .with_context(|| format!("cannot create {}", path.display()))?;
    file.write_all(text.as_bytes())
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_row() -> ResultRow {
        ResultRow {
            delta: Some(-0.25),
            epsilon: Some(0.05),
            tc_over_th: None,
            s_max: 3.021873654987e-3,
            power_ss: -11.447,
            abs_power: 11.447,
            bound: 11.5,
            qdot_h: 12.59,
            qdot_c: -1.145,
            efficiency: 0.909090909090909,
            carnot: 0.9976,
            entropy: 7.7e-4,
            regime: "engine".into(),
        }
    }

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(to_csv_string(&[]), format!("{HEADER}\n"));
    }

    #[test]
    fn one_row_gives_two_lines() {
        let text = to_csv_string(&[sample_row()]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], HEADER);
        assert!(lines[1].starts_with("-2.50000000000e-1,5.00000000000e-2,,"));
        assert!(lines[1].ends_with(",engine"));
        assert!(!text.contains('\r'));
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_field(Some(0.05)), "5.00000000000e-2");
        assert_eq!(format_field(Some(-1234.5678)), "-1.23456780000e3");
        assert_eq!(format_field(Some(0.0)), "0.00000000000e0");
        assert_eq!(format_field(None), "");
        assert_eq!(format_field(Some(f64::INFINITY)), "inf");
        assert_eq!(format_field(Some(f64::NEG_INFINITY)), "-inf");
        assert_eq!(format_field(Some(f64::NAN)), "nan");
    }

    #[test]
    fn field_count_matches_header() {
        let text = to_csv_string(&[sample_row()]);
        let line = text.lines().nth(1).unwrap();
        assert_eq!(line.split(',').count(), HEADER.split(',').count());
    }
}
