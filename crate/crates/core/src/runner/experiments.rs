//! The five experiment families.

use rayon::prelude::*;

use super::config::{ExperimentKind, SweepConfig};
use super::record::{format_float, ExperimentRecord, Report};
use crate::error::{Error, Result};
use crate::graph::{
    build_graph_state, fully_connected_ggm_block, fully_connected_pair_rdm, lattice_ggm,
    lattice_neighborhood, pair_rdm, subsystem_rdm_general, LatticeKind,
};
use crate::kicked_top::{moving_average, trajectory, KickedTopParams};
use crate::measures::{concurrence, discord, ggm, mutual_information};
use crate::sampling::{
    haar_random_pure, map_samples, pair_statistics, pearson, random_weighted_complete_graph,
};
use crate::sampling::{MAX_SAMPLED_QUBITS, RNG_ALGORITHM};
use crate::state::QubitSubset;

pub const MAX_KICKED_TOP_QUBITS: usize = 14;
pub const MAX_RANDOM_WEIGHTED_QUBITS: usize = 12;

fn expect_kind(config: &SweepConfig, kind: ExperimentKind) -> Result<()> {
    if config.kind != kind {
        return Err(Error::config(format!(
            "config is for {}, not {kind}",
            config.kind
        )));
    }
    config.validate()
}

fn preamble(config: &SweepConfig, extra: &[String]) -> Vec<String> {
    let mut lines = vec![
        format!("qcorr {}", env!("CARGO_PKG_VERSION")),
        format!("rng={RNG_ALGORITHM}"),
    ];
    lines.extend(extra.iter().cloned());
    lines.extend(config.echo().into_iter().map(|l| format!("config {l}")));
    lines
}

/// Dispatches on the config's kind.
pub fn run(config: &SweepConfig) -> Result<Report> {
    match config.kind {
        ExperimentKind::RandomStates => run_random_states(config),
        ExperimentKind::KickedTop => run_kicked_top(config),
        ExperimentKind::Lattice => run_lattice(config),
        ExperimentKind::FullyConnected => run_fully_connected(config),
        ExperimentKind::RandomWeighted => run_random_weighted(config),
    }
}

/// Haar-random pure states: GGM plus average and maximum pair measures, one
/// `avg` and one `max` row per sample.
pub fn run_random_states(config: &SweepConfig) -> Result<Report> {
    expect_kind(config, ExperimentKind::RandomStates)?;
    let kind = config.kind.name();
    if let Some(&n) = config
        .n_values
        .iter()
        .find(|&&n| n as usize > MAX_SAMPLED_QUBITS)
    {
        return Err(Error::capacity(format!(
            "random states limited to {MAX_SAMPLED_QUBITS} qubits, got {n}"
        )));
    }
    let mut records = Vec::new();
    for &n in &config.n_values {
        let rows = map_samples(config.seed, config.samples, |sample, rng| {
            let psi = haar_random_pure(n as usize, rng)?;
            let g = ggm(&psi)?;
            let stats = pair_statistics(&psi, &config.discord)?;
            let row = |case: &str, d: f64, c: f64, mi: f64| ExperimentRecord {
                n: Some(n),
                sample: Some(sample),
                ggm: Some(g.value),
                discord: Some(d),
                concurrence: Some(c),
                mutual_information: Some(mi),
                lambda_max_sq: Some(g.lambda_max_sq),
                argmax_size: Some(g.argmax_bipartition.len()),
                ..ExperimentRecord::new(kind, case)
            };
            Ok([
                row(
                    "avg",
                    stats.avg_discord,
                    stats.avg_concurrence,
                    stats.avg_mutual_information,
                ),
                row(
                    "max",
                    stats.max_discord,
                    stats.max_concurrence,
                    stats.max_mutual_information,
                ),
            ])
        })?;
        records.extend(rows.into_iter().flatten());
    }
    Ok(Report {
        metadata: preamble(config, &["ensemble=haar".into()]),
        records,
        footer: vec![],
    })
}

/// One `raw` and one `smoothed` row per step of the kicked top.
pub fn run_kicked_top(config: &SweepConfig) -> Result<Report> {
    expect_kind(config, ExperimentKind::KickedTop)?;
    let kind = config.kind.name();
    let n = config.n_values[0];
    if n as usize > MAX_KICKED_TOP_QUBITS {
        return Err(Error::capacity(format!(
            "kicked top limited to {MAX_KICKED_TOP_QUBITS} qubits, got {n}"
        )));
    }
    let params = KickedTopParams {
        num_qubits: n as usize,
        ..config.kicked_top
    };
    let steps = trajectory(&params, &config.discord)?;
    let smoothed_mi = moving_average(
        &steps
            .iter()
            .map(|r| r.mutual_information)
            .collect::<Vec<_>>(),
        params.smoothing_half_width,
    );
    let mut records = Vec::with_capacity(2 * steps.len());
    for (r, &mi) in steps.iter().zip(&smoothed_mi) {
        let base = ExperimentRecord {
            n: Some(n),
            step: Some(r.step),
            argmax_size: Some(r.argmax_size),
            ..ExperimentRecord::new(kind, "")
        };
        records.push(ExperimentRecord {
            case: "raw".into(),
            ggm: Some(r.ggm),
            discord: Some(r.discord),
            concurrence: Some(r.concurrence),
            mutual_information: Some(r.mutual_information),
            lambda_max_sq: Some(r.lambda_max_sq),
            ..base.clone()
        });
        records.push(ExperimentRecord {
            case: "smoothed".into(),
            ggm: Some(r.smoothed_ggm),
            discord: Some(r.smoothed_discord),
            concurrence: Some(r.smoothed_concurrence),
            mutual_information: Some(mi),
            lambda_max_sq: Some(1.0 - r.smoothed_ggm),
            ..base
        });
    }
    Ok(Report {
        metadata: preamble(config, &[]),
        records,
        footer: vec![],
    })
}

/// Pair measures of every requested lattice case along the θ grid; GGM is
/// reported for the square lattice, where the closed form is exact.
pub fn run_lattice(config: &SweepConfig) -> Result<Report> {
    expect_kind(config, ExperimentKind::Lattice)?;
    let kind = config.kind.name();
    let jobs: Vec<_> = config
        .cases
        .iter()
        .flat_map(|c| config.thetas.iter().map(move |&t| (*c, t)))
        .collect();
    let records = jobs
        .par_iter()
        .map(|&(case, theta)| {
            let rho = pair_rdm(&lattice_neighborhood(&case)?, theta);
            let g = (case.lattice() == LatticeKind::Square)
                .then(|| lattice_ggm(LatticeKind::Square, theta));
            Ok(ExperimentRecord {
                theta: Some(theta),
                ggm: g,
                discord: Some(discord(&rho, &config.discord)?),
                concurrence: Some(concurrence(&rho)?),
                mutual_information: Some(mutual_information(&rho)?),
                lambda_max_sq: g.map(|g| 1.0 - g),
                argmax_size: g.map(|_| 1),
                ..ExperimentRecord::new(kind, case.to_string())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report {
        metadata: preamble(config, &[]),
        records,
        footer: vec![],
    })
}

/// Pair measures of fully connected states with (`direct`) and without
/// (`no-direct`) the edge between the pair, plus the closed-form GGM.
pub fn run_fully_connected(config: &SweepConfig) -> Result<Report> {
    expect_kind(config, ExperimentKind::FullyConnected)?;
    let kind = config.kind.name();
    let jobs: Vec<_> = config
        .n_values
        .iter()
        .flat_map(|&n| {
            config
                .thetas
                .iter()
                .flat_map(move |&t| [(n, t, true), (n, t, false)])
        })
        .collect();
    let records = jobs
        .par_iter()
        .map(|&(n, theta, direct)| {
            let rho = fully_connected_pair_rdm(n, theta, direct)?;
            let (g, block) = fully_connected_ggm_block(n, theta)?;
            Ok(ExperimentRecord {
                n: Some(n),
                theta: Some(theta),
                ggm: Some(g),
                discord: Some(discord(&rho, &config.discord)?),
                concurrence: Some(concurrence(&rho)?),
                mutual_information: Some(mutual_information(&rho)?),
                lambda_max_sq: Some(1.0 - g),
                argmax_size: Some(block),
                ..ExperimentRecord::new(kind, if direct { "direct" } else { "no-direct" })
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report {
        metadata: preamble(config, &[]),
        records,
        footer: vec![],
    })
}

/// Complete graphs with uniform random weights except a fixed (0, 1) edge:
/// full-scan GGM and pair-(0, 1) measures per sample, with the Pearson
/// correlation of discord against GGM in the footer.
pub fn run_random_weighted(config: &SweepConfig) -> Result<Report> {
    expect_kind(config, ExperimentKind::RandomWeighted)?;
    let kind = config.kind.name();
    if let Some(&n) = config
        .n_values
        .iter()
        .find(|&&n| n as usize > MAX_RANDOM_WEIGHTED_QUBITS)
    {
        return Err(Error::capacity(format!(
            "random-weighted graphs limited to {MAX_RANDOM_WEIGHTED_QUBITS} qubits, got {n}"
        )));
    }
    let mut records = Vec::new();
    let mut footer = Vec::new();
    for &n in &config.n_values {
        let n_us = n as usize;
        let pair = QubitSubset::new(vec![0, 1], n_us)?;
        let rows = map_samples(config.seed, config.samples, |sample, rng| {
            let graph = random_weighted_complete_graph(n_us, (0, 1, config.fixed_theta), rng)?;
            let g = ggm(&build_graph_state(&graph)?)?;
            let rho = subsystem_rdm_general(&graph, &pair)?;
            Ok(ExperimentRecord {
                n: Some(n),
                theta: Some(config.fixed_theta),
                sample: Some(sample),
                ggm: Some(g.value),
                discord: Some(discord(&rho, &config.discord)?),
                concurrence: Some(concurrence(&rho)?),
                mutual_information: Some(mutual_information(&rho)?),
                lambda_max_sq: Some(g.lambda_max_sq),
                argmax_size: Some(g.argmax_bipartition.len()),
                ..ExperimentRecord::new(kind, "pair-0-1")
            })
        })?;
        let d: Vec<f64> = rows.iter().map(|r| r.discord.unwrap_or(f64::NAN)).collect();
        let g: Vec<f64> = rows.iter().map(|r| r.ggm.unwrap_or(f64::NAN)).collect();
        let c_max = rows
            .iter()
            .filter_map(|r| r.concurrence)
            .fold(0.0, f64::max);
        footer.push(format!(
            "n={n} pearson_discord_ggm={}",
            format_float(pearson(&d, &g))
        ));
        footer.push(format!("n={n} max_concurrence={}", format_float(c_max)));
        records.extend(rows);
    }
    Ok(Report {
        metadata: preamble(config, &["ensemble=uniform-weights".into()]),
        records,
        footer,
    })
}
