//! Seeded random states and graphs, plus all-pairs correlation statistics.
//!
//! Every sample draws from its own ChaCha20 stream `(master seed, sample
//! index)`, so a sweep gives identical numbers however it is scheduled.

use std::f64::consts::TAU;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::measures::{concurrence, discord, mutual_information, DiscordSettings};
use crate::state::{reduce_pure, PureState, QubitSubset};

pub const RNG_ALGORITHM: &str = "ChaCha20";
/// Largest register for Haar sampling and all-pairs statistics.
pub const MAX_SAMPLED_QUBITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeededRng {
    pub seed: u64,
    pub stream: u64,
}

impl SeededRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    pub fn algorithm(&self) -> &'static str {
        RNG_ALGORITHM
    }

    pub fn rng(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Haar-distributed pure state: a vector of i.i.d. standard complex
/// Gaussians, normalized.
pub fn haar_random_pure<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<PureState> {
    if n_qubits > MAX_SAMPLED_QUBITS {
        return Err(Error::capacity(format!(
            "Haar sampling limited to {MAX_SAMPLED_QUBITS} qubits, got {n_qubits}"
        )));
    }
    if n_qubits == 0 {
        return Err(Error::arg("need at least one qubit"));
    }
    let amps = (0..1usize << n_qubits)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            num_complex::Complex64::new(re, im)
        })
        .collect();
    PureState::normalized(amps)
}

/// Complete graph whose edges carry i.i.d. uniform phases on `[0, 2π)`,
/// except `fixed_edge`, which keeps its given weight exactly.
pub fn random_weighted_complete_graph<R: Rng + ?Sized>(
    n: usize,
    fixed_edge: (usize, usize, f64),
    rng: &mut R,
) -> Result<WeightedGraph> {
    let (fk, fl, ftheta) = fixed_edge;
    let fixed = (fk.min(fl), fk.max(fl));
    let mut g = WeightedGraph::new(n);
    g.set_weight(fk, fl, ftheta)?;
    for k in 0..n {
        for l in k + 1..n {
            if (k, l) != fixed {
                g.set_weight(k, l, rng.random_range(0.0..TAU))?;
            }
        }
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairRecord {
    pub first: usize,
    pub second: usize,
    pub discord: f64,
    pub concurrence: f64,
    pub mutual_information: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairStatistics {
    pub pairs: Vec<PairRecord>,
    pub avg_discord: f64,
    pub max_discord: f64,
    pub avg_concurrence: f64,
    pub max_concurrence: f64,
    pub avg_mutual_information: f64,
    pub max_mutual_information: f64,
}

/// Discord and concurrence of every unordered qubit pair.
pub fn pair_statistics(state: &PureState, settings: &DiscordSettings) -> Result<PairStatistics> {
    let n = state.num_qubits();
    if n > MAX_SAMPLED_QUBITS {
        return Err(Error::capacity(format!(
            "pair statistics limited to {MAX_SAMPLED_QUBITS} qubits"
        )));
    }
    if n < 2 {
        return Err(Error::arg("pair statistics need at least two qubits"));
    }
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for first in 0..n {
        for second in first + 1..n {
            let rho = reduce_pure(state, &QubitSubset::new(vec![first, second], n)?)?;
            pairs.push(PairRecord {
                first,
                second,
                discord: discord(&rho, settings)?,
                concurrence: concurrence(&rho)?,
                mutual_information: mutual_information(&rho)?,
            });
        }
    }
    let count = pairs.len() as f64;
    let avg = |f: fn(&PairRecord) -> f64| pairs.iter().map(f).sum::<f64>() / count;
    let max = |f: fn(&PairRecord) -> f64| pairs.iter().map(f).fold(0.0, f64::max);
    Ok(PairStatistics {
        avg_discord: avg(|p| p.discord),
        max_discord: max(|p| p.discord),
        avg_concurrence: avg(|p| p.concurrence),
        max_concurrence: max(|p| p.concurrence),
        avg_mutual_information: avg(|p| p.mutual_information),
        max_mutual_information: max(|p| p.mutual_information),
        pairs,
    })
}

/// `f(sample_index, rng)` over `0..count`, each sample on its own stream,
/// collected in index order.
pub fn map_samples<T, F>(seed: u64, count: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, &mut ChaCha20Rng) -> Result<T> + Sync,
{
    (0..count)
        .into_par_iter()
        .map(|i| f(i, &mut SeededRng::new(seed, i as u64).rng()))
        .collect()
}

/// Pearson correlation coefficient; NaN when either series is constant.
pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    sxy / (sxx * syy).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::DensityMatrix;
    use std::f64::consts::PI;

    #[test]
    fn haar_is_deterministic_per_stream() {
        let a = haar_random_pure(4, &mut SeededRng::new(7, 3).rng()).unwrap();
        let b = haar_random_pure(4, &mut SeededRng::new(7, 3).rng()).unwrap();
        let c = haar_random_pure(4, &mut SeededRng::new(7, 4).rng()).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!((a.norm() - 1.0).abs() < 1e-12);
        assert!(matches!(
            haar_random_pure(13, &mut SeededRng::new(0, 0).rng()),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn random_graph_examples() {
        let mut rng = SeededRng::new(1, 0).rng();
        let g = random_weighted_complete_graph(2, (0, 1, 1.25), &mut rng).unwrap();
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.weight(0, 1), 1.25);

        let g = random_weighted_complete_graph(10, (0, 1, PI), &mut SeededRng::new(5, 9).rng())
            .unwrap();
        assert_eq!(g.num_edges(), 45);
        assert_eq!(g.weight(0, 1), PI);
        assert!(g.edges().all(|(_, _, w)| (0.0..TAU).contains(&w)));
        let again = random_weighted_complete_graph(10, (0, 1, PI), &mut SeededRng::new(5, 9).rng())
            .unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn pair_statistics_examples() {
        let s = DiscordSettings::default();
        let prod = pair_statistics(&PureState::plus(4).unwrap(), &s).unwrap();
        assert_eq!(prod.pairs.len(), 6);
        assert!(prod.max_discord < 1e-7 && prod.max_concurrence < 1e-9);

        // GHZ pairs are ½(|00⟩⟨00| + |11⟩⟨11|): classically correlated
        let ghz = pair_statistics(&PureState::ghz(5).unwrap(), &s).unwrap();
        assert_eq!(ghz.pairs.len(), 10);
        for p in &ghz.pairs {
            assert!(p.concurrence < 1e-9);
            assert!((p.discord - ghz.pairs[0].discord).abs() < 1e-9);
            assert!(p.discord < 1e-6);
            assert!((p.mutual_information - 1.0).abs() < 1e-9);
        }

        let w = pair_statistics(&PureState::w(3).unwrap(), &s).unwrap();
        for p in &w.pairs {
            assert!((p.concurrence - 2.0 / 3.0).abs() < 1e-9);
        }
        assert!(w.max_discord >= w.avg_discord && w.avg_discord >= 0.0);
    }

    #[test]
    fn w_pair_concurrence_from_wootters_by_hand() {
        // pair state of W₃: (1/3)(|00⟩⟨00| + (|01⟩+|10⟩)(⟨01|+⟨10|)); the
        // spin-flip spectrum is {4/9, 0, 0, 0}, so C = 2/3
        let m = crate::linalg::CMatrix::from_fn(4, 4, |r, c| {
            let v = match (r, c) {
                (0, 0) => 1.0,
                (1, 1) | (1, 2) | (2, 1) | (2, 2) => 1.0,
                _ => 0.0,
            };
            num_complex::Complex64::new(v / 3.0, 0.0)
        });
        let rho = DensityMatrix::new(m).unwrap();
        assert!((concurrence(&rho).unwrap() - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn map_samples_is_order_independent() {
        let draw = |_, rng: &mut ChaCha20Rng| Ok(rng.random::<u64>());
        let a = map_samples(11, 64, draw).unwrap();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(3)
            .build()
            .unwrap();
        let b = pool.install(|| map_samples(11, 64, draw)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[5], SeededRng::new(11, 5).rng().random::<u64>());
    }

    #[test]
    fn pearson_basics() {
        assert!((pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]) - 1.0).abs() < 1e-15);
        assert!((pearson(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]) + 1.0).abs() < 1e-15);
        assert!(pearson(&[1.0, 1.0], &[1.0, 2.0]).is_nan());
    }
}
