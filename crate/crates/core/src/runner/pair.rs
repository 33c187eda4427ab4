//! Measures of a two-qubit density matrix given as text.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::measures::{concurrence, discord_with_basis, two_qubit_marginals, DiscordSettings};
use crate::state::{von_neumann_entropy, DensityMatrix};

use super::record::format_float;

/// Parses `re+imi`, `re-imi`, `re` or `imi` (e.g. `0.5`, `-0.25+1e-3i`, `i`).
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::config(format!("cannot parse complex number '{s}'"));
    let t = s.trim();
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    // Split at the last sign that is not the leading one or an exponent sign.
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    Ok(Complex64::new(
        re.parse().map_err(|_| bad())?,
        im.parse().map_err(|_| bad())?,
    ))
}

/// Sixteen whitespace-separated complex entries, row-major.
pub fn parse_density_matrix(text: &str) -> Result<DensityMatrix> {
    let entries = text
        .split_whitespace()
        .map(parse_complex)
        .collect::<Result<Vec<_>>>()?;
    if entries.len() != 16 {
        return Err(Error::config(format!(
            "expected 16 matrix entries, got {}",
            entries.len()
        )));
    }
    DensityMatrix::new(CMatrix::from_row_slice(4, 4, &entries))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairReport {
    pub discord: f64,
    pub measured: String,
    pub alpha: f64,
    pub beta: f64,
    pub conditional_entropy: f64,
    pub concurrence: f64,
    pub mutual_information: f64,
    pub entropy_a: f64,
    pub entropy_b: f64,
    pub entropy_ab: f64,
    pub purity: f64,
}

pub fn analyze_pair(rho: &DensityMatrix, settings: &DiscordSettings) -> Result<PairReport> {
    let (a, b) = two_qubit_marginals(rho)?;
    let d = discord_with_basis(rho, settings)?;
    let (sa, sb, sab) = (
        von_neumann_entropy(&a),
        von_neumann_entropy(&b),
        von_neumann_entropy(rho),
    );
    Ok(PairReport {
        discord: d.value,
        measured: format!("{:?}", d.measured).to_ascii_lowercase(),
        alpha: d.basis.alpha(),
        beta: d.basis.beta(),
        conditional_entropy: d.conditional_entropy,
        concurrence: concurrence(rho)?,
        mutual_information: sa + sb - sab,
        entropy_a: sa,
        entropy_b: sb,
        entropy_ab: sab,
        purity: rho.purity(),
    })
}

impl PairReport {
    /// `key=value` lines.
    pub fn lines(&self) -> Vec<String> {
        let f = format_float;
        vec![
            format!("discord={}", f(self.discord)),
            format!("measured={}", self.measured),
            format!("alpha={}", f(self.alpha)),
            format!("beta={}", f(self.beta)),
            format!("conditional_entropy={}", f(self.conditional_entropy)),
            format!("concurrence={}", f(self.concurrence)),
            format!("mutual_information={}", f(self.mutual_information)),
            format!("entropy_a={}", f(self.entropy_a)),
            format!("entropy_b={}", f(self.entropy_b)),
            format!("entropy_ab={}", f(self.entropy_ab)),
            format!("purity={}", f(self.purity)),
        ]
    }
}
