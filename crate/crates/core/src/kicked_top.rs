//! Quantum kicked top in the spin-`j` symmetric subspace, expanded to
//! `N = 2j` qubits for the entanglement measures.
//!
//! One Floquet period is `exp(−i κ J_z² / 2j) · exp(−i p J_y)` (rotation
//! first), the usual kicked-top map; the opposite ordering is selectable.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, CMatrix};
use crate::measures::{concurrence, discord, ggm_symmetric, DiscordSettings};
use crate::state::{reduce_pure, PureState, QubitSubset};

/// Largest register accepted by [`dicke_expand`].
pub const MAX_EXPANDED_QUBITS: usize = 20;

/// State in the `|j, m⟩` basis, index `i` holding `m = j − i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricState {
    two_j: usize,
    amplitudes: Vec<Complex64>,
}

impl SymmetricState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::arg("spin state needs 2j + 1 >= 2 amplitudes"));
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::arg(format!("spin state norm is {norm}, expected 1")));
        }
        Ok(Self {
            two_j: amplitudes.len() - 1,
            amplitudes,
        })
    }

    /// `|j, m⟩` with `m = j − index`.
    pub fn basis(two_j: usize, index: usize) -> Result<Self> {
        if index > two_j {
            return Err(Error::arg(format!(
                "index {index} out of range for 2j = {two_j}"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); two_j + 1];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { two_j, amplitudes })
    }

    pub fn two_j(&self) -> usize {
        self.two_j
    }

    pub fn j(&self) -> f64 {
        0.5 * self.two_j as f64
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `|j, j⟩` rotated to polar angle `theta0` and azimuth `phi0`.
pub fn spin_coherent_state(two_j: usize, theta0: f64, phi0: f64) -> Result<SymmetricState> {
    if two_j == 0 {
        return Err(Error::arg("spin must be at least 1/2"));
    }
    let (s, c) = (0.5 * theta0).sin_cos();
    let amplitudes = (0..=two_j)
        .map(|i| {
            let mag = binomial(two_j, i).sqrt() * c.powi((two_j - i) as i32) * s.powi(i as i32);
            Complex64::from_polar(mag, -(i as f64) * phi0)
        })
        .collect();
    Ok(SymmetricState { two_j, amplitudes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FloquetOrder {
    RotationThenKick,
    KickThenRotation,
}

impl std::str::FromStr for FloquetOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rotation-then-kick" | "rotate-kick" => Ok(Self::RotationThenKick),
            "kick-then-rotation" | "kick-rotate" => Ok(Self::KickThenRotation),
            other => Err(Error::config(format!("unknown Floquet ordering '{other}'"))),
        }
    }
}

impl std::fmt::Display for FloquetOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::RotationThenKick => "rotation-then-kick",
            Self::KickThenRotation => "kick-then-rotation",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KickedTopParams {
    /// Qubit count `N = 2j`.
    pub num_qubits: usize,
    pub kappa: f64,
    /// Rotation angle about `y` per period.
    pub p: f64,
    pub theta0: f64,
    pub phi0: f64,
    pub steps: usize,
    pub smoothing_half_width: usize,
    pub order: FloquetOrder,
}

impl Default for KickedTopParams {
    /// Strongly chaotic settings for eight qubits.
    fn default() -> Self {
        Self {
            num_qubits: 8,
            kappa: 7.0,
            p: PI / 2.0,
            theta0: 2.25,
            phi0: 1.1,
            steps: 200,
            smoothing_half_width: 4,
            order: FloquetOrder::RotationThenKick,
        }
    }
}

impl KickedTopParams {
    pub fn validate(&self) -> Result<()> {
        if self.num_qubits < 2 {
            return Err(Error::arg("kicked top needs N >= 2"));
        }
        if self.steps < 1 {
            return Err(Error::arg("kicked top needs at least one step"));
        }
        Ok(())
    }
}

/// `J_y` in the `|j, m⟩` basis.
fn jy(two_j: usize) -> CMatrix {
    let j = 0.5 * two_j as f64;
    let mut out = CMatrix::zeros(two_j + 1, two_j + 1);
    for i in 1..=two_j {
        // ⟨m+1| J+ |m⟩ for m = j − i
        let m = j - i as f64;
        let amp = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
        // J_y = (J+ − J−) / 2i
        out[(i - 1, i)] = Complex64::new(0.0, -0.5 * amp);
        out[(i, i - 1)] = Complex64::new(0.0, 0.5 * amp);
    }
    out
}

/// One period of the kicked top as a dense unitary.
#[derive(Clone, Debug)]
pub struct FloquetOperator {
    matrix: CMatrix,
}

impl FloquetOperator {
    /// Builds the map for spin `j = num_qubits / 2`; any `j >= 1/2` is allowed.
    pub fn new(params: &KickedTopParams) -> Result<Self> {
        if params.num_qubits == 0 {
            return Err(Error::arg("spin must be at least 1/2"));
        }
        let two_j = params.num_qubits;
        let j = 0.5 * two_j as f64;
        let eig = hermitian_eigensystem(&jy(two_j))?;
        let phases = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            two_j + 1,
            eig.values.iter().map(|&l| Complex64::cis(-params.p * l)),
        ));
        let rotation = &eig.vectors * phases * eig.vectors.adjoint();
        let kick = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            two_j + 1,
            (0..=two_j).map(|i| {
                let m = j - i as f64;
                Complex64::cis(-params.kappa * m * m / two_j as f64)
            }),
        ));
        let matrix = match params.order {
            FloquetOrder::RotationThenKick => kick * rotation,
            FloquetOrder::KickThenRotation => rotation * kick,
        };
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn apply(&self, state: &SymmetricState) -> Result<SymmetricState> {
        if state.amplitudes.len() != self.matrix.nrows() {
            return Err(Error::arg(format!(
                "state has 2j+1 = {}, operator acts on {}",
                state.amplitudes.len(),
                self.matrix.nrows()
            )));
        }
        let v = nalgebra::DVector::from_column_slice(&state.amplitudes);
        let out = &self.matrix * v;
        Ok(SymmetricState {
            two_j: state.two_j,
            amplitudes: out.iter().copied().collect(),
        })
    }
}

/// One period applied to `state`; `params.num_qubits` must equal `2j`.
pub fn floquet_step(state: &SymmetricState, params: &KickedTopParams) -> Result<SymmetricState> {
    FloquetOperator::new(params)?.apply(state)
}

/// `|j, m⟩ → ` normalized sum of all `N`-qubit basis states with `j − m`
/// ones.
pub fn dicke_expand(state: &SymmetricState) -> Result<PureState> {
    let n = state.two_j;
    if n > MAX_EXPANDED_QUBITS {
        return Err(Error::capacity(format!(
            "expanding spin j = {} needs {n} qubits (limit {MAX_EXPANDED_QUBITS})",
            state.j()
        )));
    }
    let scale: Vec<f64> = (0..=n).map(|w| binomial(n, w).sqrt().recip()).collect();
    let amplitudes = (0..1usize << n)
        .map(|x| {
            let w = x.count_ones() as usize;
            state.amplitudes[w] * scale[w]
        })
        .collect();
    PureState::new(amplitudes)
}

/// Measures of one step of a trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord {
    pub step: usize,
    pub norm: f64,
    pub ggm: f64,
    pub lambda_max_sq: f64,
    pub argmax_size: usize,
    pub discord: f64,
    pub concurrence: f64,
    pub mutual_information: f64,
    pub smoothed_ggm: f64,
    pub smoothed_discord: f64,
    pub smoothed_concurrence: f64,
}

/// Centered moving average over `2·half_width + 1` points, using only the
/// points that exist near the ends.
pub fn moving_average(xs: &[f64], half_width: usize) -> Vec<f64> {
    (0..xs.len())
        .map(|i| {
            let lo = i.saturating_sub(half_width);
            let hi = (i + half_width).min(xs.len() - 1);
            xs[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64
        })
        .collect()
}

/// The spin states visited: the initial coherent state followed by
/// `steps − 1` Floquet periods.
pub fn evolve(params: &KickedTopParams) -> Result<Vec<SymmetricState>> {
    params.validate()?;
    let op = FloquetOperator::new(params)?;
    let mut state = spin_coherent_state(params.num_qubits, params.theta0, params.phi0)?;
    let mut out = Vec::with_capacity(params.steps);
    for _ in 0..params.steps {
        let next = op.apply(&state)?;
        out.push(std::mem::replace(&mut state, next));
    }
    Ok(out)
}

/// Runs the top and records GGM plus discord and concurrence of qubits
/// (0, 1) at every step, raw and smoothed.
pub fn trajectory(params: &KickedTopParams, settings: &DiscordSettings) -> Result<Vec<StepRecord>> {
    let states = evolve(params)?;
    let n = params.num_qubits;
    let pair = QubitSubset::new(vec![0, 1], n)?;
    let mut records = states
        .par_iter()
        .enumerate()
        .map(|(step, s)| {
            let psi = dicke_expand(s)?;
            let g = ggm_symmetric(&psi)?;
            let rho = reduce_pure(&psi, &pair)?;
            Ok(StepRecord {
                step,
                norm: s.norm(),
                ggm: g.value,
                lambda_max_sq: g.lambda_max_sq,
                argmax_size: g.argmax_bipartition.len(),
                discord: discord(&rho, settings)?,
                concurrence: concurrence(&rho)?,
                mutual_information: crate::measures::mutual_information(&rho)?,
                smoothed_ggm: 0.0,
                smoothed_discord: 0.0,
                smoothed_concurrence: 0.0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let hw = params.smoothing_half_width;
    let smooth = |f: fn(&StepRecord) -> f64, recs: &[StepRecord]| {
        moving_average(&recs.iter().map(f).collect::<Vec<_>>(), hw)
    };
    let g = smooth(|r| r.ggm, &records);
    let d = smooth(|r| r.discord, &records);
    let c = smooth(|r| r.concurrence, &records);
    for (i, r) in records.iter_mut().enumerate() {
        r.smoothed_ggm = g[i];
        r.smoothed_discord = d[i];
        r.smoothed_concurrence = c[i];
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::ggm;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn params(n: usize, kappa: f64, p: f64) -> KickedTopParams {
        KickedTopParams {
            num_qubits: n,
            kappa,
            p,
            ..KickedTopParams::default()
        }
    }

    fn overlap(a: &SymmetricState, b: &SymmetricState) -> f64 {
        a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| x.conj() * y)
            .sum::<Complex64>()
            .norm()
    }

    #[test]
    fn coherent_state_examples() {
        let up = spin_coherent_state(6, 0.0, 1.0).unwrap();
        assert_eq!(up, SymmetricState::basis(6, 0).unwrap());
        let down = spin_coherent_state(6, PI, 0.4).unwrap();
        assert!((overlap(&down, &SymmetricState::basis(6, 6).unwrap()) - 1.0).abs() < 1e-12);
        let eq = spin_coherent_state(1, PI / 2.0, 0.0).unwrap();
        for a in eq.amplitudes() {
            assert!((a - Complex64::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        }
        for two_j in 1..10 {
            assert!((spin_coherent_state(two_j, 1.3, 2.1).unwrap().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn floquet_identity_cases() {
        let s = spin_coherent_state(6, 1.0, 0.5).unwrap();
        let out = floquet_step(&s, &params(6, 0.0, 0.0)).unwrap();
        assert!((overlap(&out, &s) - 1.0).abs() < 1e-12);
        for a in out.amplitudes().iter().zip(s.amplitudes()) {
            assert!((a.0 - a.1).norm() < 1e-12);
        }
        // full rotation: identity up to a global phase for integer j
        let out = floquet_step(&s, &params(6, 0.0, 2.0 * PI)).unwrap();
        assert!((overlap(&out, &s) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn spin_half_kick_is_a_global_phase() {
        let s = spin_coherent_state(1, 0.7, 0.3).unwrap();
        let rotated = floquet_step(&s, &params(1, 0.0, 1.1)).unwrap();
        for kappa in [0.5, 3.0, 11.0] {
            let kicked = floquet_step(&s, &params(1, kappa, 1.1)).unwrap();
            assert!((overlap(&kicked, &rotated) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn operator_is_unitary() {
        let op = FloquetOperator::new(&KickedTopParams::default()).unwrap();
        let u = op.matrix();
        let eye = CMatrix::identity(u.nrows(), u.ncols());
        assert!(crate::linalg::max_abs_diff(&(u.adjoint() * u), &eye) < 1e-13);
    }

    #[test]
    fn dicke_expansion_examples() {
        let psi = dicke_expand(&SymmetricState::basis(2, 1).unwrap()).unwrap();
        let h = FRAC_1_SQRT_2;
        let expected = [0.0, h, h, 0.0];
        for (a, e) in psi.amplitudes().iter().zip(expected) {
            assert!((a - Complex64::new(e, 0.0)).norm() < 1e-15);
        }
        let psi = dicke_expand(&SymmetricState::basis(2, 0).unwrap()).unwrap();
        assert_eq!(psi, PureState::basis(2, 0).unwrap());

        let psi = dicke_expand(&spin_coherent_state(3, PI / 2.0, 0.0).unwrap()).unwrap();
        let plus = PureState::plus(3).unwrap();
        for (a, b) in psi.amplitudes().iter().zip(plus.amplitudes()) {
            assert!((a - b).norm() < 1e-15);
        }
        let big = SymmetricState::basis(21, 0).unwrap();
        assert!(matches!(dicke_expand(&big), Err(Error::Capacity(_))));
    }

    #[test]
    fn moving_average_truncates_at_the_ends() {
        let xs = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(moving_average(&xs, 0), xs.to_vec());
        assert_eq!(moving_average(&xs, 1), vec![1.5, 2.0, 3.0, 4.0, 4.5]);
        assert_eq!(moving_average(&xs, 10), vec![3.0; 5]);
    }

    #[test]
    fn frozen_dynamics_repeat_the_first_record() {
        let p = KickedTopParams {
            steps: 5,
            ..params(4, 0.0, 0.0)
        };
        let recs = trajectory(&p, &DiscordSettings::default()).unwrap();
        assert_eq!(recs.len(), 5);
        for r in &recs {
            assert!(r.ggm.abs() < 1e-12 && r.discord.abs() < 1e-7 && r.concurrence.abs() < 1e-9);
            assert!((r.ggm - recs[0].ggm).abs() < 1e-12);
            assert!((r.discord - recs[0].discord).abs() < 1e-9);
        }
    }

    #[test]
    fn symmetric_ggm_agrees_with_full_scan_along_a_trajectory() {
        let p = KickedTopParams {
            steps: 12,
            ..params(6, 7.0, PI / 2.0)
        };
        for s in evolve(&p).unwrap() {
            let psi = dicke_expand(&s).unwrap();
            let fast = ggm_symmetric(&psi).unwrap();
            let full = ggm(&psi).unwrap();
            assert!((fast.value - full.value).abs() < 1e-9);
        }
    }
}
