//! CSV/JSON emission of per-state records.
//!
//! Column order is fixed:
//! `alpha0_re, alpha0_im, …, alpha3_im, V, D, C, x0, …, x4, radius, labels`.
//! CSV floats carry 17 significant digits so values round-trip exactly; labels
//! are semicolon-joined stratum names.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classify::{classify, Stratum};
use crate::projection::coords_from_state;
use crate::state::{triad, TwoQubitState};
use crate::{Error, Result, DEFAULT_CLASSIFY_TOL};

pub const CSV_HEADER: &str = "alpha0_re,alpha0_im,alpha1_re,alpha1_im,alpha2_re,alpha2_im,alpha3_re,alpha3_im,\
V,D,C,x0,x1,x2,x3,x4,radius,labels";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub alpha0_re: f64,
    pub alpha0_im: f64,
    pub alpha1_re: f64,
    pub alpha1_im: f64,
    pub alpha2_re: f64,
    pub alpha2_im: f64,
    pub alpha3_re: f64,
    pub alpha3_im: f64,
    #[serde(rename = "V")]
    pub visibility: f64,
    #[serde(rename = "D")]
    pub distinguishability: f64,
    #[serde(rename = "C")]
    pub concurrence: f64,
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
    pub radius: f64,
    pub labels: Vec<Stratum>,
}

impl Record {
    pub fn from_state(s: &TwoQubitState) -> Self {
        let a = s.amplitudes();
        let t = triad(s);
        let p = coords_from_state(s);
        Self {
            alpha0_re: a[0].re,
            alpha0_im: a[0].im,
            alpha1_re: a[1].re,
            alpha1_im: a[1].im,
            alpha2_re: a[2].re,
            alpha2_im: a[2].im,
            alpha3_re: a[3].re,
            alpha3_im: a[3].im,
            visibility: t.visibility,
            distinguishability: t.distinguishability,
            concurrence: t.concurrence,
            x0: p.x0,
            x1: p.x1,
            x2: p.x2,
            x3: p.x3,
            x4: p.x4,
            radius: (p.x0 * p.x0 + p.x1 * p.x1 + p.x2 * p.x2).sqrt(),
            labels: classify(s, DEFAULT_CLASSIFY_TOL).iter().collect(),
        }
    }

    fn numbers(&self) -> [f64; 17] {
        [
            self.alpha0_re,
            self.alpha0_im,
            self.alpha1_re,
            self.alpha1_im,
            self.alpha2_re,
            self.alpha2_im,
            self.alpha3_re,
            self.alpha3_im,
            self.visibility,
            self.distinguishability,
            self.concurrence,
            self.x0,
            self.x1,
            self.x2,
            self.x3,
            self.x4,
            self.radius,
        ]
    }

    pub fn csv_line(&self) -> String {
        let mut line = String::with_capacity(17 * 24 + 64);
        for x in self.numbers() {
            let _ = write!(line, "{x:.16e},");
        }
        let labels: Vec<&str> = self.labels.iter().map(|l| l.name()).collect();
        line.push_str(&labels.join(";"));
        line
    }
}

/// Writes one record per state. Records are built in parallel and written in
/// input order, so the bytes do not depend on the thread count.
pub fn emit_dataset<W: Write + ?Sized>(states: &[TwoQubitState], format: Format, out: &mut W) -> Result<()> {
    use rayon::prelude::*;
    let records: Vec<Record> = states.par_iter().map(Record::from_state).collect();
    write_records(&records, format, out)
}

pub fn write_records<W: Write + ?Sized>(records: &[Record], format: Format, out: &mut W) -> Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in records {
                writeln!(out, "{}", r.csv_line())?;
            }
        }
        Format::Json => {
            out.write_all(b"[")?;
            for (i, r) in records.iter().enumerate() {
                out.write_all(if i == 0 { b"\n" } else { b",\n" })?;
                serde_json::to_writer(&mut *out, r)?;
            }
            out.write_all(if records.is_empty() { b"]\n" } else { b"\n]\n" })?;
        }
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{generate, Ensemble, SampleSpec};

    fn csv(states: &[TwoQubitState]) -> String {
        let mut buf = Vec::new();
        emit_dataset(states, Format::Csv, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn empty_is_header_only() {
        assert_eq!(csv(&[]), format!("{CSV_HEADER}\n"));
        let mut buf = Vec::new();
        emit_dataset(&[], Format::Json, &mut buf).unwrap();
        assert_eq!(buf, b"[]\n");
    }

    #[test]
    fn header_has_eighteen_columns() {
        assert_eq!(CSV_HEADER.split(',').count(), 18);
    }

    #[test]
    fn bell_row() {
        let text = csv(&[TwoQubitState::bell()]);
        let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(row.len(), 18);
        let num = |i: usize| row[i].parse::<f64>().unwrap();
        assert_eq!(num(8), 0.0);
        assert!(num(9).abs() < 1e-15);
        assert!((num(10) - 1.0).abs() < 1e-15);
        assert!((num(14) + 1.0).abs() < 1e-15);
        assert!(num(16) < 1e-15);
        assert_eq!(row[17], "MaximallyEntangled;WaveLess;ParticleLess;OnX0Axis;OnGreatDisc");
    }

    #[test]
    fn csv_values_round_trip_exactly() {
        let states = generate(&SampleSpec::new(20, 9, Ensemble::Haar).unwrap()).unwrap();
        let text = csv(&states);
        for (line, s) in text.lines().skip(1).zip(&states) {
            let fields: Vec<f64> = line.split(',').take(8).map(|f| f.parse().unwrap()).collect();
            let a = s.amplitudes();
            let want = [a[0].re, a[0].im, a[1].re, a[1].im, a[2].re, a[2].im, a[3].re, a[3].im];
            for (x, y) in fields.iter().zip(want) {
                assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }

    #[test]
    fn shell_batches_have_constant_radius() {
        for (c, want) in [(0.0, 1.0), (0.6, 0.8), (1.0, 0.0)] {
            let states = generate(&SampleSpec::new(25, 1, Ensemble::FixedConcurrence(c)).unwrap()).unwrap();
            let text = csv(&states);
            for line in text.lines().skip(1) {
                let radius: f64 = line.split(',').nth(16).unwrap().parse().unwrap();
                assert!((radius - want).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn json_records_parse_back() {
        let states = generate(&SampleSpec::new(5, 2, Ensemble::Haar).unwrap()).unwrap();
        let mut buf = Vec::new();
        emit_dataset(&states, Format::Json, &mut buf).unwrap();
        let back: Vec<Record> = serde_json::from_slice(&buf).unwrap();
        let want: Vec<Record> = states.iter().map(Record::from_state).collect();
        assert_eq!(back, want);
        let first: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let keys: Vec<&String> = first[0].as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 18);
    }

    #[test]
    fn output_is_deterministic() {
        let spec = SampleSpec::new(200, 42, Ensemble::Haar).unwrap();
        assert_eq!(csv(&generate(&spec).unwrap()), csv(&generate(&spec).unwrap()));
    }

    #[test]
    fn format_parse() {
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }

    #[test]
    fn write_failure_surfaces() {
        struct Broken;
        impl Write for Broken {
            fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
                Err(std::io::Error::other("disk full"))
            }
            fn flush(&mut self) -> std::io::Result<()> {
                Ok(())
            }
        }
        assert!(matches!(emit_dataset(&[TwoQubitState::bell()], Format::Csv, &mut Broken), Err(Error::Io(_))));
    }
}
