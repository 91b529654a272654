//! Named scalar results and their text encodings.

use std::fmt::Write as _;

/// Formats `x` with 12 significant digits, switching to exponent notation
/// outside `[1e-5, 1e12)`. Output is deterministic for a given `f64`.
pub fn format_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    // exponent after rounding to DIGITS significant digits
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub name: String,
    /// In nats where applicable.
    pub value: f64,
    pub inputs: String,
    /// Cross-check discrepancies, e.g. between two algebraic forms.
    pub residuals: Vec<(String, f64)>,
}

impl MeasureReport {
    pub fn new(name: impl Into<String>, value: f64, inputs: impl Into<String>) -> Self {
        MeasureReport {
            name: name.into(),
            value,
            inputs: inputs.into(),
            residuals: Vec::new(),
        }
    }

    pub fn with_residual(mut self, name: impl Into<String>, value: f64) -> Self {
        self.residuals.push((name.into(), value));
        self
    }

    fn residual_field(&self) -> String {
        self.residuals
            .iter()
            .map(|(k, v)| format!("{k}:{}", format_sig(*v)))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Flat key-value record, tab separated: `name=.. value=.. inputs=.. residuals=..`.
    pub fn to_record(&self) -> String {
        format!(
            "name={}\tvalue={}\tinputs={}\tresiduals={}",
            self.name,
            format_sig(self.value),
            self.inputs,
            self.residual_field()
        )
    }

    pub fn parse_record(line: &str) -> Option<MeasureReport> {
        let mut name = None;
        let mut value = None;
        let mut inputs = None;
        let mut residuals = Vec::new();
        for field in line.split('\t') {
            let (key, val) = field.split_once('=')?;
            match key {
                "name" => name = Some(val.to_string()),
                "value" => value = val.parse::<f64>().ok(),
                "inputs" => inputs = Some(val.to_string()),
                "residuals" => {
                    for item in val.split(';').filter(|s| !s.is_empty()) {
                        let (k, v) = item.split_once(':')?;
                        residuals.push((k.to_string(), v.parse().ok()?));
                    }
                }
                _ => return None,
            }
        }
        Some(MeasureReport {
            name: name?,
            value: value?,
            inputs: inputs?,
            residuals,
        })
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            csv_field(&self.name),
            format_sig(self.value),
            csv_field(&self.inputs),
            csv_field(&self.residual_field())
        )
    }

    pub fn to_human(&self) -> String {
        let mut out = format!("{:<24} {:>18}  {}", self.name, format_sig(self.value), self.inputs);
        if !self.residuals.is_empty() {
            let _ = write!(out, "  [{}]", self.residual_field());
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const REPORT_CSV_HEADER: &str = "name,value,inputs,residuals";

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sig_formatting() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(1.0), "1");
        assert_eq!(format_sig(std::f64::consts::LN_2), "0.693147180560".trim_end_matches('0'));
        assert_eq!(format_sig(-0.125), "-0.125");
        assert_eq!(format_sig(1.5e-9), "1.5e-9");
        assert_eq!(format_sig(f64::INFINITY), "inf");
        assert_eq!(format_sig(123456.0), "123456");
    }

    #[test]
    fn record_round_trip() {
        let r = MeasureReport::new("nonlocality", std::f64::consts::LN_2, "state=singlet;bases=zbasis@0,zbasis@1")
            .with_residual("form_gap", 1e-16);
        let line = r.to_record();
        let back = MeasureReport::parse_record(&line).unwrap();
        assert_eq!(back.name, r.name);
        assert_eq!(back.inputs, r.inputs);
        assert!((back.value - r.value).abs() < 1e-11);
        assert_eq!(back.residuals.len(), 1);
    }

    #[test]
    fn csv_quotes_commas() {
        let r = MeasureReport::new("irreality", 0.5, "basis=bloch:theta=1,phi=0@0");
        assert_eq!(r.to_csv_row(), "irreality,0.5,\"basis=bloch:theta=1,phi=0@0\",");
    }

    proptest! {
        #[test]
        fn sig_keeps_twelve_digits(x in -1e6f64..1e6f64) {
            let back: f64 = format_sig(x).parse().unwrap();
            prop_assert!((back - x).abs() <= 1e-11 * x.abs().max(1e-300));
        }
    }
}
