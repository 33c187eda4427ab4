//! Uniform CSV output shared by every experiment.

use std::io::{self, Write};
use std::path::Path;

use crate::error::{Error, Result};

pub const CSV_COLUMNS: [&str; 12] = [
    "kind",
    "n",
    "theta",
    "case",
    "sample",
    "step",
    "ggm",
    "discord",
    "concurrence",
    "mutual_information",
    "lambda_max_sq",
    "argmax_size",
];

/// One CSV row. Inputs that do not apply to an experiment stay `None` and
/// are written as empty fields.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExperimentRecord {
    pub kind: String,
    pub n: Option<u64>,
    pub theta: Option<f64>,
    pub case: String,
    pub sample: Option<usize>,
    pub step: Option<usize>,
    pub ggm: Option<f64>,
    pub discord: Option<f64>,
    pub concurrence: Option<f64>,
    pub mutual_information: Option<f64>,
    pub lambda_max_sq: Option<f64>,
    pub argmax_size: Option<usize>,
}

/// Twelve significant digits in scientific notation.
pub fn format_float(x: f64) -> String {
    format!("{x:.11e}")
}

fn opt<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
    v.map(f).unwrap_or_default()
}

impl ExperimentRecord {
    pub fn new(kind: &str, case: impl Into<String>) -> Self {
        Self {
            kind: kind.to_string(),
            case: case.into(),
            ..Self::default()
        }
    }

    pub fn csv_line(&self) -> String {
        let int = |x: usize| x.to_string();
        [
            self.kind.clone(),
            opt(self.n, |x| x.to_string()),
            opt(self.theta, format_float),
            self.case.clone(),
            opt(self.sample, int),
            opt(self.step, int),
            opt(self.ggm, format_float),
            opt(self.discord, format_float),
            opt(self.concurrence, format_float),
            opt(self.mutual_information, format_float),
            opt(self.lambda_max_sq, format_float),
            opt(self.argmax_size, int),
        ]
        .join(",")
    }

    /// Every populated measure is finite.
    pub fn is_finite(&self) -> bool {
        [
            self.theta,
            self.ggm,
            self.discord,
            self.concurrence,
            self.mutual_information,
            self.lambda_max_sq,
        ]
        .into_iter()
        .flatten()
        .all(f64::is_finite)
    }
}

/// Output of one run: `#` metadata lines, the header, rows, `#` footer lines.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub metadata: Vec<String>,
    pub records: Vec<ExperimentRecord>,
    pub footer: Vec<String>,
}

impl Report {
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        for line in &self.metadata {
            writeln!(w, "# {line}")?;
        }
        writeln!(w, "{}", CSV_COLUMNS.join(","))?;
        for r in &self.records {
            writeln!(w, "{}", r.csv_line())?;
        }
        for line in &self.footer {
            writeln!(w, "# {line}")?;
        }
        w.flush()
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let io_err = |source| Error::Io {
            path: path.to_path_buf(),
            source,
        };
        let file = std::fs::File::create(path).map_err(io_err)?;
        self.write_csv(io::BufWriter::new(file)).map_err(io_err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_twelve_significant_digits() {
        assert_eq!(format_float(0.5), "5.00000000000e-1");
        assert_eq!(format_float(std::f64::consts::PI), "3.14159265359e0");
        assert_eq!(format_float(0.0), "0.00000000000e0");
        assert_eq!(format_float(-1.25e-7), "-1.25000000000e-7");
    }

    #[test]
    fn empty_fields_for_missing_inputs() {
        let mut r = ExperimentRecord::new("lattice", "square-A");
        r.theta = Some(1.0);
        r.ggm = Some(0.25);
        assert_eq!(
            r.csv_line(),
            "lattice,,1.00000000000e0,square-A,,,2.50000000000e-1,,,,,"
        );
        assert_eq!(r.csv_line().split(',').count(), CSV_COLUMNS.len());
    }

    #[test]
    fn report_layout() {
        let report = Report {
            metadata: vec!["seed=1".into()],
            records: vec![ExperimentRecord::new("x", "c")],
            footer: vec!["done".into()],
        };
        let text = report.to_csv_string();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# seed=1");
        assert_eq!(lines[1], CSV_COLUMNS.join(","));
        assert_eq!(lines[3], "# done");
    }
}
