//! Brute-force reference computations shared by the integration tests.
//! Nothing here calls into the library's own linear algebra.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::f64::consts::PI;

pub type M = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `2^{-n/2} Σ_x exp(i Σ_{(k,l)} θ_kl x_k x_l) |x⟩`, qubit 0 the most
/// significant bit.
pub fn graph_state(n: usize, edges: &[(usize, usize, f64)]) -> Vec<Complex64> {
    let norm = (0.5f64).powf(n as f64 / 2.0);
    (0..1usize << n)
        .map(|x| {
            let bit = |q: usize| (x >> (n - 1 - q)) & 1 == 1;
            let phase: f64 = edges
                .iter()
                .filter(|&&(k, l, _)| bit(k) && bit(l))
                .map(|e| e.2)
                .sum();
            Complex64::from_polar(norm, phase)
        })
        .collect()
}

pub fn complete_edges(n: usize, theta: f64) -> Vec<(usize, usize, f64)> {
    (0..n)
        .flat_map(|k| (k + 1..n).map(move |l| (k, l, theta)))
        .collect()
}

/// Reduced state of the qubits in `keep` (in the given order) by explicit
/// summation over the traced-out bits.
pub fn reduced(psi: &[Complex64], n: usize, keep: &[usize]) -> M {
    let d = 1usize << keep.len();
    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let compose = |kept: usize, env: usize| {
        let mut x = 0usize;
        for (i, &q) in keep.iter().enumerate() {
            if (kept >> (keep.len() - 1 - i)) & 1 == 1 {
                x |= 1 << (n - 1 - q);
            }
        }
        for (i, &q) in traced.iter().enumerate() {
            if (env >> (traced.len() - 1 - i)) & 1 == 1 {
                x |= 1 << (n - 1 - q);
            }
        }
        x
    };
    let mut rho = M::zeros(d, d);
    for env in 0..1usize << traced.len() {
        for a in 0..d {
            let pa = psi[compose(a, env)];
            for b in 0..d {
                rho[(a, b)] += pa * psi[compose(b, env)].conj();
            }
        }
    }
    rho
}

pub fn max_diff(a: &M, b: &M) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Eigenvalues of a 2×2 Hermitian matrix from the characteristic polynomial.
pub fn herm2_eigs(a: Complex64, b: Complex64, d: Complex64) -> [f64; 2] {
    let (a, d) = (a.re, d.re);
    let mean = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mean + r, mean - r]
}

pub fn entropy_bits(eigs: impl IntoIterator<Item = f64>) -> f64 {
    eigs.into_iter()
        .filter(|&p| p > 1e-300)
        .map(|p| -p * p.log2())
        .sum()
}

pub fn entropy_of(rho: &M) -> f64 {
    let h = (rho + rho.adjoint()) * c(0.5, 0.0);
    entropy_bits(h.symmetric_eigenvalues().iter().map(|v| v.max(0.0)))
}

/// Discord with the second qubit measured, minimized over an exhaustive
/// `n_alpha × n_beta` grid of projective measurements
/// `{|v⟩, |v⊥⟩}`, `|v⟩ = cos(α/2)|0⟩ + e^{iβ} sin(α/2)|1⟩`.
pub fn grid_discord(rho: &M, n_alpha: usize, n_beta: usize) -> f64 {
    let rho_b = reduced_mixed_second(rho);
    let base = entropy_of(&rho_b) - entropy_of(rho);
    let mut best = f64::INFINITY;
    for i in 0..n_alpha {
        let alpha = PI * i as f64 / (n_alpha - 1) as f64;
        for j in 0..n_beta {
            let beta = 2.0 * PI * j as f64 / n_beta as f64;
            let v = [
                c((alpha / 2.0).cos(), 0.0),
                Complex64::from_polar((alpha / 2.0).sin(), beta),
            ];
            let w = [-v[1].conj(), v[0].conj()];
            let mut s = 0.0;
            for u in [v, w] {
                // (I ⊗ ⟨u|) ρ (I ⊗ |u⟩)
                let mut blk = [[c(0.0, 0.0); 2]; 2];
                for (ra, row) in blk.iter_mut().enumerate() {
                    for (ca, entry) in row.iter_mut().enumerate() {
                        for rb in 0..2 {
                            for cb in 0..2 {
                                *entry += u[rb].conj() * rho[(2 * ra + rb, 2 * ca + cb)] * u[cb];
                            }
                        }
                    }
                }
                let p = blk[0][0].re + blk[1][1].re;
                if p > 1e-14 {
                    let e = herm2_eigs(blk[0][0], blk[0][1], blk[1][1]);
                    s += p * entropy_bits(e.map(|x| (x / p).max(0.0)));
                }
            }
            best = best.min(s);
        }
    }
    base + best
}

pub fn reduced_mixed_second(rho: &M) -> M {
    M::from_fn(2, 2, |r, c| rho[(r, c)] + rho[(2 + r, 2 + c)])
}

/// A mix of two-qubit states: marginals of Gaussian pure states on 2–4
/// qubits (ranks 1–4) and noisy Bell-diagonal states.
pub fn random_two_qubit_states(count: usize, seed: u64) -> Vec<M> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            if i % 5 == 4 {
                let p: f64 = rng.random();
                let phase: f64 = rng.random::<f64>() * 2.0 * PI;
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let bell = [
                    c(s, 0.0),
                    c(0.0, 0.0),
                    c(0.0, 0.0),
                    Complex64::from_polar(s, phase),
                ];
                M::from_fn(4, 4, |r, col| {
                    bell[r] * bell[col].conj() * p
                        + if r == col {
                            c((1.0 - p) / 4.0, 0.0)
                        } else {
                            c(0.0, 0.0)
                        }
                })
            } else {
                let n = 2 + i % 3;
                let mut psi: Vec<Complex64> = (0..1usize << n)
                    .map(|_| c(gaussian(&mut rng), gaussian(&mut rng)))
                    .collect();
                let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                psi.iter_mut().for_each(|z| *z /= norm);
                reduced(&psi, n, &[0, 1])
            }
        })
        .collect()
}

fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}
