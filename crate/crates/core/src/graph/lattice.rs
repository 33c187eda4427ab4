//! Catalog of connected qubit pairs on the square, hexagonal and triangular
//! cluster-state lattices, ignoring boundary effects.

use std::fmt;
use std::str::FromStr;

use super::primitives::PairNeighborhood;
use crate::error::{Error, Result};
use crate::linalg::cos_phase_pow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeKind {
    Square,
    Hexagonal,
    Triangular,
}

impl LatticeKind {
    /// Links per bulk vertex.
    pub fn degree(self) -> u64 {
        match self {
            Self::Square => 4,
            Self::Hexagonal => 3,
            Self::Triangular => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Square => "square",
            Self::Hexagonal => "hexagonal",
            Self::Triangular => "triangular",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    A,
    B,
    C,
}

/// A lattice together with one of its pair-connection patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticeCase {
    lattice: LatticeKind,
    case: CaseLabel,
}

impl LatticeCase {
    pub fn new(lattice: LatticeKind, case: CaseLabel) -> Result<Self> {
        if lattice == LatticeKind::Hexagonal && case == CaseLabel::C {
            return Err(Error::arg("the hexagonal lattice has only cases A and B"));
        }
        Ok(Self { lattice, case })
    }

    pub fn lattice(&self) -> LatticeKind {
        self.lattice
    }

    pub fn case(&self) -> CaseLabel {
        self.case
    }

    /// Every valid case: square A–C, hexagonal A–B, triangular A–C.
    pub fn all() -> Vec<LatticeCase> {
        use CaseLabel::*;
        use LatticeKind::*;
        [
            (Square, A),
            (Square, B),
            (Square, C),
            (Hexagonal, A),
            (Hexagonal, B),
            (Triangular, A),
            (Triangular, B),
            (Triangular, C),
        ]
        .into_iter()
        .map(|(lattice, case)| LatticeCase { lattice, case })
        .collect()
    }
}

impl fmt::Display for LatticeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{:?}", self.lattice.name(), self.case)
    }
}

impl FromStr for LatticeCase {
    type Err = Error;

    /// Accepts `square-A`, `hexagonal-b`, `tri-C` and similar.
    fn from_str(s: &str) -> Result<Self> {
        let (lat, case) = s.rsplit_once(['-', ':']).ok_or_else(|| {
            Error::arg(format!(
                "lattice case '{s}' is not of the form <lattice>-<case>"
            ))
        })?;
        let lattice = match lat.trim().to_ascii_lowercase().as_str() {
            "square" | "sq" | "s" => LatticeKind::Square,
            "hexagonal" | "hex" | "h" => LatticeKind::Hexagonal,
            "triangular" | "tri" | "t" => LatticeKind::Triangular,
            other => return Err(Error::arg(format!("unknown lattice '{other}'"))),
        };
        let case = match case.trim().to_ascii_uppercase().as_str() {
            "A" => CaseLabel::A,
            "B" => CaseLabel::B,
            "C" => CaseLabel::C,
            other => return Err(Error::arg(format!("unknown case label '{other}'"))),
        };
        LatticeCase::new(lattice, case)
    }
}

/// Neighborhood `(n1, n2, m, direct)` of the pair in each catalog case.
pub fn lattice_neighborhood(lc: &LatticeCase) -> Result<PairNeighborhood> {
    use CaseLabel::*;
    use LatticeKind::*;
    let nb = match (lc.lattice, lc.case) {
        (Square, A) => PairNeighborhood::new(3, 3, 0, true),
        (Square, B) => PairNeighborhood::new(3, 3, 1, false),
        (Square, C) => PairNeighborhood::new(2, 2, 2, false),
        (Hexagonal, A) => PairNeighborhood::new(2, 2, 0, true),
        (Hexagonal, B) => PairNeighborhood::new(2, 2, 1, false),
        (Hexagonal, C) => return Err(Error::arg("the hexagonal lattice has only cases A and B")),
        (Triangular, A) => PairNeighborhood::new(3, 3, 2, true),
        // collinear next-nearest neighbors share one vertex; five private links each
        (Triangular, B) => PairNeighborhood::new(5, 5, 1, false),
        (Triangular, C) => PairNeighborhood::new(4, 4, 2, false),
    };
    Ok(nb)
}

/// GGM of an equal-weight lattice cluster state from its single-qubit
/// reduced state: `½ − ½ |cos^d(θ/2)|` for bulk degree `d`.
pub fn lattice_ggm(lattice: LatticeKind, theta: f64) -> f64 {
    0.5 - 0.5 * cos_phase_pow(0.5 * theta, lattice.degree()).norm()
}

/// `1 − (1 + cos⁴(θ/2))/2`
pub fn square_lattice_ggm(theta: f64) -> f64 {
    1.0 - 0.5 * (1.0 + (0.5 * theta).cos().powi(4))
}
