//! Quantum discord of a two-qubit state under rank-one projective
//! measurements on one qubit.
//!
//! The measurement direction is `|v⟩ = cos(α/2)|0⟩ + e^{iβ} sin(α/2)|1⟩` with
//! `Π_0 = |v⟩⟨v|` and `Π_1 = 1 − Π_0`. The conditional entropy is minimized
//! over `(α, β)` by a deterministic grid search followed by Nelder–Mead
//! refinement from the best grid points, so results are bit-reproducible.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::{require_two_qubits, two_qubit_marginals};
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues_2x2, entropy_bits};
use crate::state::{von_neumann_entropy, DensityMatrix};

const MIN_OUTCOME_PROB: f64 = 1e-14;
const CLAMP_BAND: f64 = 1e-6;
/// Number of distinct grid minima the simplex refinement starts from.
const REFINE_STARTS: usize = 3;
const MAX_SIMPLEX_ITERS: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementBasis {
    alpha: f64,
    beta: f64,
}

impl MeasurementBasis {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&alpha) || !(0.0..TAU).contains(&beta) {
            return Err(Error::arg(format!(
                "measurement angles out of range: alpha={alpha} (want [0, pi]), beta={beta} (want [0, 2pi))"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// Maps any angle pair onto the canonical ranges describing the same
    /// projector.
    pub fn wrapped(alpha: f64, beta: f64) -> Self {
        let mut alpha = alpha.rem_euclid(TAU);
        let mut beta = beta;
        if alpha > PI {
            // cos(α/2) changes sign: same ray with β shifted by π
            alpha = TAU - alpha;
            beta += PI;
        }
        Self {
            alpha,
            beta: beta.rem_euclid(TAU),
        }
    }

    pub fn computational() -> Self {
        Self {
            alpha: 0.0,
            beta: 0.0,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Components of `|v⟩`.
    pub fn vector(&self) -> [Complex64; 2] {
        vector(self.alpha, self.beta)
    }
}

fn vector(alpha: f64, beta: f64) -> [Complex64; 2] {
    let (s, c) = (0.5 * alpha).sin_cos();
    [Complex64::new(c, 0.0), Complex64::from_polar(s, beta)]
}

/// Which qubit of the pair is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MeasuredSide {
    First,
    Second,
    MinimumOverBoth,
}

impl std::str::FromStr for MeasuredSide {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(Self::First),
            "second" => Ok(Self::Second),
            "min" | "minimum" | "minimum-over-both" => Ok(Self::MinimumOverBoth),
            other => Err(Error::config(format!("unknown measured side '{other}'"))),
        }
    }
}

impl std::fmt::Display for MeasuredSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::First => "first",
            Self::Second => "second",
            Self::MinimumOverBoth => "minimum-over-both",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscordSettings {
    pub n_alpha: usize,
    pub n_beta: usize,
    pub tolerance: f64,
    pub side: MeasuredSide,
}

impl Default for DiscordSettings {
    fn default() -> Self {
        Self {
            n_alpha: 64,
            n_beta: 128,
            tolerance: 1e-8,
            side: MeasuredSide::Second,
        }
    }
}

impl DiscordSettings {
    pub fn new(n_alpha: usize, n_beta: usize, tolerance: f64, side: MeasuredSide) -> Result<Self> {
        let s = Self {
            n_alpha,
            n_beta,
            tolerance,
            side,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_alpha < 8 || self.n_beta < 8 {
            return Err(Error::arg(format!(
                "discord grid must be at least 8x8, got {}x{}",
                self.n_alpha, self.n_beta
            )));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::arg(format!(
                "discord tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// Dense copy of a 4×4 density matrix for the hot loop.
type Block = [[Complex64; 4]; 4];

fn block(rho: &DensityMatrix) -> Block {
    let m = rho.matrix();
    std::array::from_fn(|r| std::array::from_fn(|c| m[(r, c)]))
}

/// 2×2 Hermitian matrix stored as (a, d, c) for `[[a, c], [c*, d]]`.
#[derive(Clone, Copy)]
struct Herm2 {
    a: f64,
    d: f64,
    c: Complex64,
}

impl Herm2 {
    fn sub(self, o: Herm2) -> Herm2 {
        Herm2 {
            a: self.a - o.a,
            d: self.d - o.d,
            c: self.c - o.c,
        }
    }

    fn trace(self) -> f64 {
        self.a + self.d
    }

    /// `p · S(σ / p)` with `p = Tr σ`.
    fn weighted_entropy(self) -> f64 {
        let p = self.trace();
        if p < MIN_OUTCOME_PROB {
            return 0.0;
        }
        let (hi, lo) = eigenvalues_2x2(self.a, self.d, self.c);
        p * entropy_bits(&[hi / p, lo / p])
    }
}

/// Unnormalized state of the unmeasured qubit after projecting the measured
/// one onto `v`: `⟨v|_meas ρ |v⟩_meas`.
fn project(m: &Block, v: &[Complex64; 2], side: Side) -> Herm2 {
    let entry = |x: usize, y: usize| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (s, vs) in v.iter().enumerate() {
            for (t, vt) in v.iter().enumerate() {
                let (r, c) = match side {
                    Side::Second => (2 * x + s, 2 * y + t),
                    Side::First => (2 * s + x, 2 * t + y),
                };
                acc += vs.conj() * m[r][c] * vt;
            }
        }
        acc
    };
    Herm2 {
        a: entry(0, 0).re,
        d: entry(1, 1).re,
        c: entry(0, 1),
    }
}

fn unmeasured_marginal(m: &Block, side: Side) -> Herm2 {
    let e = |x: usize, y: usize| -> Complex64 {
        match side {
            Side::Second => m[2 * x][2 * y] + m[2 * x + 1][2 * y + 1],
            Side::First => m[x][y] + m[2 + x][2 + y],
        }
    };
    Herm2 {
        a: e(0, 0).re,
        d: e(1, 1).re,
        c: e(0, 1),
    }
}

struct Objective {
    m: Block,
    side: Side,
    marginal: Herm2,
}

impl Objective {
    fn new(rho: &DensityMatrix, side: Side) -> Self {
        let m = block(rho);
        let marginal = unmeasured_marginal(&m, side);
        Self { m, side, marginal }
    }

    fn eval(&self, alpha: f64, beta: f64) -> f64 {
        let v = vector(alpha, beta);
        let first = project(&self.m, &v, self.side);
        let second = self.marginal.sub(first);
        first.weighted_entropy() + second.weighted_entropy()
    }
}

/// `Σ_i p_i S(ρ_{unmeasured|i})` for the projective measurement `basis`
/// applied to the `measured` qubit.
pub fn conditional_entropy(
    rho: &DensityMatrix,
    basis: MeasurementBasis,
    measured: Side,
) -> Result<f64> {
    require_two_qubits(rho)?;
    Ok(Objective::new(rho, measured).eval(basis.alpha, basis.beta))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscordOutcome {
    pub value: f64,
    /// Minimizing measurement on the measured qubit.
    pub basis: MeasurementBasis,
    pub measured: Side,
    /// Minimum conditional entropy reached.
    pub conditional_entropy: f64,
}

fn grid_minima(obj: &Objective, settings: &DiscordSettings) -> Vec<(f64, f64, f64)> {
    let da = PI / (settings.n_alpha - 1) as f64;
    let db = TAU / settings.n_beta as f64;
    let mut best: Vec<(f64, f64, f64)> = Vec::with_capacity(REFINE_STARTS + 1);
    for i in 0..settings.n_alpha {
        let alpha = i as f64 * da;
        // β is irrelevant at the poles
        let betas = if i == 0 || i + 1 == settings.n_alpha {
            1
        } else {
            settings.n_beta
        };
        for j in 0..betas {
            let beta = j as f64 * db;
            let f = obj.eval(alpha, beta);
            if best.len() < REFINE_STARTS || f < best[best.len() - 1].0 {
                let pos = best.partition_point(|b| b.0 <= f);
                best.insert(pos, (f, alpha, beta));
                best.truncate(REFINE_STARTS);
            }
        }
    }
    best
}

/// Nelder–Mead on the two measurement angles.
fn refine(obj: &Objective, start: (f64, f64, f64), step: (f64, f64), tol: f64) -> (f64, f64, f64) {
    let f = |p: [f64; 2]| obj.eval(p[0], p[1]);
    let (f0, a0, b0) = start;
    let mut simplex = [
        ([a0, b0], f0),
        ([a0 + step.0, b0], f([a0 + step.0, b0])),
        ([a0, b0 + step.1], f([a0, b0 + step.1])),
    ];
    let lerp =
        |x: [f64; 2], y: [f64; 2], t: f64| [x[0] + t * (y[0] - x[0]), x[1] + t * (y[1] - x[1])];
    for _ in 0..MAX_SIMPLEX_ITERS {
        simplex.sort_by(|x, y| x.1.total_cmp(&y.1));
        let spread = simplex[2].1 - simplex[0].1;
        let size = simplex[1..]
            .iter()
            .map(|(p, _)| {
                (p[0] - simplex[0].0[0])
                    .abs()
                    .max((p[1] - simplex[0].0[1]).abs())
            })
            .fold(0.0, f64::max);
        if spread < tol && size < tol.sqrt() {
            break;
        }
        let centroid = lerp(simplex[0].0, simplex[1].0, 0.5);
        let worst = simplex[2];
        let reflected = lerp(worst.0, centroid, 2.0);
        let fr = f(reflected);
        if fr < simplex[0].1 {
            let expanded = lerp(worst.0, centroid, 3.0);
            let fe = f(expanded);
            simplex[2] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
        } else if fr < simplex[1].1 {
            simplex[2] = (reflected, fr);
        } else {
            let (target, ft) = if fr < worst.1 { (reflected, fr) } else { worst };
            let contracted = lerp(centroid, target, 0.5);
            let fc = f(contracted);
            if fc < ft {
                simplex[2] = (contracted, fc);
            } else {
                let best = simplex[0].0;
                for v in simplex[1..].iter_mut() {
                    let p = lerp(best, v.0, 0.5);
                    *v = (p, f(p));
                }
            }
        }
    }
    simplex.sort_by(|x, y| x.1.total_cmp(&y.1));
    let ([a, b], fv) = simplex[0];
    (fv, a, b)
}

fn minimize(obj: &Objective, settings: &DiscordSettings) -> (f64, MeasurementBasis) {
    let step = (
        PI / (settings.n_alpha - 1) as f64,
        TAU / settings.n_beta as f64,
    );
    let starts = grid_minima(obj, settings);
    let (mut fbest, mut abest, mut bbest) = starts[0];
    for &s in &starts {
        let (fv, a, b) = refine(obj, s, step, settings.tolerance);
        if fv < fbest {
            (fbest, abest, bbest) = (fv, a, b);
        }
    }
    (fbest, MeasurementBasis::wrapped(abest, bbest))
}

fn one_side(
    rho: &DensityMatrix,
    side: Side,
    settings: &DiscordSettings,
    s_joint: f64,
) -> Result<DiscordOutcome> {
    let (ma, mb) = two_qubit_marginals(rho)?;
    let s_measured = von_neumann_entropy(match side {
        Side::First => &ma,
        Side::Second => &mb,
    });
    let obj = Objective::new(rho, side);
    let (cond, basis) = minimize(&obj, settings);
    let raw = s_measured - s_joint + cond;
    if raw < -CLAMP_BAND {
        return Err(Error::Consistency(format!(
            "discord evaluated to {raw:.3e} < 0"
        )));
    }
    Ok(DiscordOutcome {
        value: raw.max(0.0),
        basis,
        measured: side,
        conditional_entropy: cond,
    })
}

/// Discord together with the optimal measurement.
pub fn discord_with_basis(
    rho: &DensityMatrix,
    settings: &DiscordSettings,
) -> Result<DiscordOutcome> {
    require_two_qubits(rho)?;
    settings.validate()?;
    let s_joint = von_neumann_entropy(rho);
    match settings.side {
        MeasuredSide::First => one_side(rho, Side::First, settings, s_joint),
        MeasuredSide::Second => one_side(rho, Side::Second, settings, s_joint),
        MeasuredSide::MinimumOverBoth => {
            let a = one_side(rho, Side::First, settings, s_joint)?;
            let b = one_side(rho, Side::Second, settings, s_joint)?;
            Ok(if b.value <= a.value { b } else { a })
        }
    }
}

/// Quantum discord in bits, measuring the side selected in `settings`.
pub fn discord(rho: &DensityMatrix, settings: &DiscordSettings) -> Result<f64> {
    discord_with_basis(rho, settings).map(|o| o.value)
}
