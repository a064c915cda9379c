//! Parameter sweep over Mallows dispersion and voter count.
//!
//! Every profile in the sweep gets its own seed, the first eight bytes of
//! `sha256("{seed}|{theta}|{n}|{sample}")`, so adding a cell or a sample never
//! changes the profiles drawn for the others.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::mallows::{sample_profile, MallowsConfig};
use crate::parameters::{parameter_report, ParameterReport};
use crate::Limits;

pub const CSV_HEADER: &str = "theta,n_voters,m,samples,\
max_range_mean,avg_kt_mean,unanimity_width_mean,blocking_size_mean,consensus_distance_mean,\
max_range_sd,avg_kt_sd,unanimity_width_sd,blocking_size_sd,consensus_distance_sd";

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub m: usize,
    pub voter_counts: Vec<usize>,
    pub thetas: Vec<f64>,
    pub samples_per_cell: usize,
    pub seed: u64,
    pub limits: Limits,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            m: 10,
            voter_counts: vec![10, 25, 50, 100, 200],
            thetas: vec![1.5, 3.0, 5.0, 8.0],
            samples_per_cell: 20,
            seed: 1,
            limits: Limits::default(),
        }
    }
}

/// One `(θ, n)` cell of the sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct CellResult {
    pub theta: f64,
    pub n_voters: usize,
    pub m: usize,
    /// Reports of the sampled profiles, in sample order.
    pub reports: Vec<ParameterReport>,
    /// Means in the order max range, avg KT, unanimity width, blocking size,
    /// consensus distance.
    pub means: [f64; 5],
    /// Sample standard deviations, same order; zero for a single sample.
    pub sds: [f64; 5],
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepResult {
    pub cells: Vec<CellResult>,
}

impl SweepResult {
    pub fn cell(&self, theta: f64, n_voters: usize) -> Option<&CellResult> {
        self.cells
            .iter()
            .find(|c| c.theta == theta && c.n_voters == n_voters)
    }
}

pub fn sample_seed(seed: u64, theta: f64, n: usize, sample: usize) -> u64 {
    let digest = Sha256::digest(format!("{seed}|{theta}|{n}|{sample}"));
    u64::from_be_bytes(digest[..8].try_into().expect("sha256 output is 32 bytes"))
}

fn values(r: &ParameterReport) -> [f64; 5] {
    [
        r.max_range as f64,
        r.avg_kt.to_f64(),
        r.unanimity_width as f64,
        r.blocking_size as f64,
        r.consensus_distance as f64,
    ]
}

fn aggregate(reports: &[ParameterReport]) -> ([f64; 5], [f64; 5]) {
    let k = reports.len() as f64;
    let mut means = [0.0; 5];
    for r in reports {
        for (m, v) in means.iter_mut().zip(values(r)) {
            *m += v / k;
        }
    }
    let mut sds = [0.0; 5];
    if reports.len() > 1 {
        for r in reports {
            for ((s, v), m) in sds.iter_mut().zip(values(r)).zip(means) {
                *s += (v - m) * (v - m);
            }
        }
        for s in &mut sds {
            *s = (*s / (k - 1.0)).sqrt();
        }
    }
    (means, sds)
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    if spec.m == 0 || spec.samples_per_cell == 0 || spec.voter_counts.contains(&0) {
        return Err(Error::Invalid(
            "m, voter counts and samples per cell must be positive".into(),
        ));
    }
    if let Some(t) = spec.thetas.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
        return Err(Error::Invalid(format!("theta must be positive, got {t}")));
    }
    if spec.m > spec.limits.max_subset_candidates {
        return Err(Error::Resource {
            what: "sweep unanimity width",
            limit: spec.limits.max_subset_candidates,
            actual: spec.m,
        });
    }
    let mut cells = Vec::new();
    for &theta in &spec.thetas {
        for &n in &spec.voter_counts {
            let reports = (0..spec.samples_per_cell)
                .map(|s| {
                    let cfg = MallowsConfig::identity(spec.m, theta, sample_seed(spec.seed, theta, n, s))?;
                    parameter_report(&sample_profile(&cfg, n)?, &spec.limits)
                })
                .collect::<Result<Vec<_>>>()?;
            let (means, sds) = aggregate(&reports);
            cells.push(CellResult {
                theta,
                n_voters: n,
                m: spec.m,
                reports,
                means,
                sds,
            });
        }
    }
    Ok(SweepResult { cells })
}

/// CSV with LF line endings; counts are integers, everything else has three
/// decimals.
pub fn emit_csv(res: &SweepResult) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for c in &res.cells {
        write!(out, "{:.3},{},{},{}", c.theta, c.n_voters, c.m, c.reports.len()).unwrap();
        for v in c.means.iter().chain(&c.sds) {
            write!(out, ",{v:.3}").unwrap();
        }
        out.push('\n');
    }
    out
}
