//! Monte Carlo harness over Hamiltonian realizations and initial states.
//!
//! Every realization `(h, s)` owns its random streams, derived from the
//! master seed and its indices only, and results are reduced in index order.
//! Output is therefore independent of the number of worker threads.

use std::path::Path;

use rayon::prelude::*;

use crate::dynamics::{SpectatorModel, SpectatorRealization, TwoEnvModel, TwoEnvRealization};
use crate::error::{invalid, Error, Result};
use crate::qstate::{concurrence, purity, random_environment_state, CPPoint};
use crate::rmt::RngStream;

const HAMILTONIAN_STREAM: u64 = 0;
const STATE_STREAM: u64 = 1;
const MEASURE_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Second qubit uncoupled.
    Spectator,
    /// Each qubit coupled to its own environment.
    TwoEnv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailurePolicy {
    Abort,
    /// Drop the failed realization and log it.
    Skip,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub env_dim: usize,
    /// Second environment; only read in [`Mode::TwoEnv`].
    pub env_dim2: usize,
    pub lambda1: f64,
    pub lambda2: f64,
    pub alpha: f64,
    pub times: Vec<f64>,
    pub n_hamiltonians: usize,
    pub n_states: usize,
    pub master_seed: u64,
    /// Thread count, 0 for the rayon default.
    pub workers: usize,
    pub failure_policy: FailurePolicy,
    pub keep_records: bool,
}

impl RunConfig {
    pub fn spectator(env_dim: usize, lambda: f64, alpha: f64, times: Vec<f64>) -> Self {
        Self {
            mode: Mode::Spectator,
            env_dim,
            env_dim2: env_dim,
            lambda1: lambda,
            lambda2: 0.0,
            alpha,
            times,
            n_hamiltonians: 10,
            n_states: 15,
            master_seed: 0,
            workers: 0,
            failure_policy: FailurePolicy::Abort,
            keep_records: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.times.is_empty() {
            return Err(invalid("times must not be empty"));
        }
        if self.times.iter().any(|t| !t.is_finite()) {
            return Err(invalid("times must be finite"));
        }
        if self.times.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err(invalid("times must be sorted"));
        }
        if self.n_hamiltonians == 0 || self.n_states == 0 {
            return Err(invalid("nh and ns must be at least 1"));
        }
        if self.n_hamiltonians > u32::MAX as usize || self.n_states > u32::MAX as usize {
            return Err(invalid("nh and ns must fit in 32 bits"));
        }
        if self.env_dim < 2 {
            return Err(invalid(format!("N must be at least 2, got {}", self.env_dim)));
        }
        if self.mode == Mode::TwoEnv && self.env_dim2 < 2 {
            return Err(invalid(format!("N2 must be at least 2, got {}", self.env_dim2)));
        }
        if self.mode == Mode::Spectator && self.lambda2 != 0.0 {
            return Err(invalid("lambda2 must be 0 in spectator mode"));
        }
        for (name, v) in [("lambda1", self.lambda1), ("lambda2", self.lambda2)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(invalid(format!("{name} must be >= 0, got {v}")));
            }
        }
        crate::qstate::alpha_coefficients(self.alpha)?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeSeriesRecord {
    pub hamiltonian_index: usize,
    pub state_index: usize,
    pub time: f64,
    pub purity: f64,
    pub concurrence: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AggregateRow {
    pub time: f64,
    pub purity_mean: f64,
    pub purity_stderr: f64,
    pub concurrence_mean: f64,
    pub concurrence_stderr: f64,
    pub count: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AggregateResult {
    pub rows: Vec<AggregateRow>,
}

impl AggregateResult {
    pub fn times(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.time).collect()
    }

    pub fn purity_mean(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.purity_mean).collect()
    }

    pub fn concurrence_mean(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.concurrence_mean).collect()
    }
}

/// A realization dropped under [`FailurePolicy::Skip`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkippedRealization {
    pub hamiltonian_index: usize,
    pub state_index: usize,
    pub seed: u64,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleRun {
    pub aggregate: AggregateResult,
    /// Present when [`RunConfig::keep_records`] is set; ordered by
    /// `(hamiltonian_index, state_index, time)`.
    pub records: Option<Vec<TimeSeriesRecord>>,
    pub skipped: Vec<SkippedRealization>,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of realization `(hamiltonian_index, state_index)`.
///
/// For a fixed master seed this is a bijection of the packed 64-bit index
/// pair, hence injective for indices below `2^32`.
pub fn derive_seed(master_seed: u64, hamiltonian_index: usize, state_index: usize) -> u64 {
    let key = ((hamiltonian_index as u64) << 32) | (state_index as u64 & 0xffff_ffff);
    splitmix64(master_seed ^ splitmix64(key))
}

enum Realization {
    Spectator(SpectatorRealization),
    TwoEnv(TwoEnvRealization),
}

fn sample_realization(config: &RunConfig, h: usize) -> Result<(Realization, u64)> {
    let seed = derive_seed(config.master_seed, h, 0);
    let mut rng = RngStream::with_stream(seed, HAMILTONIAN_STREAM);
    let wrap = |e: Error| Error::Realization {
        hamiltonian_index: h,
        state_index: 0,
        seed,
        source: Box::new(e),
    };
    let realization = match config.mode {
        Mode::Spectator => {
            let model = SpectatorModel::sample(config.env_dim, config.lambda1, &mut rng).map_err(wrap)?;
            Realization::Spectator(SpectatorRealization::with_seed(model, Some(seed)).map_err(wrap)?)
        }
        Mode::TwoEnv => {
            let first = SpectatorModel::sample(config.env_dim, config.lambda1, &mut rng).map_err(wrap)?;
            let second = SpectatorModel::sample(config.env_dim2, config.lambda2, &mut rng).map_err(wrap)?;
            Realization::TwoEnv(
                TwoEnvRealization::with_seed(TwoEnvModel::new(first, second), Some(seed)).map_err(wrap)?,
            )
        }
    };
    Ok((realization, seed))
}

/// Purity and concurrence at every configured time.
fn run_state(config: &RunConfig, realization: &Realization, seed: u64) -> Result<Vec<(f64, f64)>> {
    let mut rng = RngStream::with_stream(seed, STATE_STREAM);
    let states = match realization {
        Realization::Spectator(r) => {
            let chi = random_environment_state(config.env_dim, &mut rng)?;
            r.evolve(&chi, config.alpha, &config.times)?
        }
        Realization::TwoEnv(r) => {
            let chi1 = random_environment_state(config.env_dim, &mut rng)?;
            let chi2 = random_environment_state(config.env_dim2, &mut rng)?;
            r.evolve(&chi1, &chi2, config.alpha, &config.times)?
        }
    };
    states
        .iter()
        .map(|s| {
            let p = purity(&s.rho);
            let c = concurrence(&s.rho)?;
            if !(0.25 - MEASURE_TOL..=1.0 + MEASURE_TOL).contains(&p)
                || !(0.0..=1.0 + MEASURE_TOL).contains(&c)
            {
                return Err(Error::Numerical {
                    what: format!("measure out of range at t={}: P={p}, C={c}", s.time),
                    dim: config.env_dim,
                    seed: Some(seed),
                });
            }
            Ok((p, c))
        })
        .collect()
}

type HamiltonianBatch = Result<Vec<(usize, u64, Result<Vec<(f64, f64)>>)>>;

fn run_hamiltonian(config: &RunConfig, h: usize) -> HamiltonianBatch {
    let (realization, _) = sample_realization(config, h)?;
    Ok((0..config.n_states)
        .into_par_iter()
        .map(|s| {
            let seed = derive_seed(config.master_seed, h, s);
            (s, seed, run_state(config, &realization, seed))
        })
        .collect())
}

/// Streaming mean and variance.
#[derive(Clone, Copy, Default)]
struct Welford {
    n: usize,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn stderr(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        let var = (self.m2 / (self.n - 1) as f64).max(0.0);
        (var / self.n as f64).sqrt()
    }
}

pub fn run_ensemble(config: &RunConfig) -> Result<EnsembleRun> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| invalid(format!("cannot build worker pool: {e}")))?;
    let batches: Vec<HamiltonianBatch> = pool.install(|| {
        (0..config.n_hamiltonians)
            .into_par_iter()
            .map(|h| run_hamiltonian(config, h))
            .collect()
    });

    let nt = config.times.len();
    let mut purity_acc = vec![Welford::default(); nt];
    let mut conc_acc = vec![Welford::default(); nt];
    let mut records = config.keep_records.then(Vec::new);
    let mut skipped = Vec::new();

    let skip = |message: String, h: usize, s: usize, seed: u64, skipped: &mut Vec<SkippedRealization>| {
        log::warn!("skipping realization h={h} s={s} seed={seed}: {message}");
        skipped.push(SkippedRealization {
            hamiltonian_index: h,
            state_index: s,
            seed,
            message,
        });
    };

    for (h, batch) in batches.into_iter().enumerate() {
        let batch = match batch {
            Ok(b) => b,
            Err(e) if config.failure_policy == FailurePolicy::Skip => {
                let seed = derive_seed(config.master_seed, h, 0);
                for s in 0..config.n_states {
                    skip(e.to_string(), h, s, seed, &mut skipped);
                }
                continue;
            }
            Err(e) => return Err(e),
        };
        for (s, seed, result) in batch {
            let values = match result {
                Ok(v) => v,
                Err(e) => {
                    if config.failure_policy == FailurePolicy::Skip {
                        skip(e.to_string(), h, s, seed, &mut skipped);
                        continue;
                    }
                    return Err(Error::Realization {
                        hamiltonian_index: h,
                        state_index: s,
                        seed,
                        source: Box::new(e),
                    });
                }
            };
            for (k, &(p, c)) in values.iter().enumerate() {
                purity_acc[k].push(p);
                conc_acc[k].push(c);
                if let Some(r) = records.as_mut() {
                    r.push(TimeSeriesRecord {
                        hamiltonian_index: h,
                        state_index: s,
                        time: config.times[k],
                        purity: p,
                        concurrence: c,
                    });
                }
            }
        }
    }

    let rows = config
        .times
        .iter()
        .enumerate()
        .map(|(k, &t)| AggregateRow {
            time: t,
            purity_mean: purity_acc[k].mean,
            purity_stderr: purity_acc[k].stderr(),
            concurrence_mean: conc_acc[k].mean,
            concurrence_stderr: conc_acc[k].stderr(),
            count: purity_acc[k].n,
        })
        .collect();
    Ok(EnsembleRun {
        aggregate: AggregateResult { rows },
        records,
        skipped,
    })
}

/// Recomputes a single realization exactly as [`run_ensemble`] does.
pub fn replay_realization(config: &RunConfig, h: usize, s: usize) -> Result<Vec<TimeSeriesRecord>> {
    config.validate()?;
    let (realization, _) = sample_realization(config, h)?;
    let seed = derive_seed(config.master_seed, h, s);
    let values = run_state(config, &realization, seed)?;
    Ok(values
        .into_iter()
        .zip(&config.times)
        .map(|((p, c), &t)| TimeSeriesRecord {
            hamiltonian_index: h,
            state_index: s,
            time: t,
            purity: p,
            concurrence: c,
        })
        .collect())
}

/// Time-ordered `(P̄, C̄)` pairs.
pub fn cp_trajectory(result: &AggregateResult) -> Vec<CPPoint> {
    let mut points: Vec<CPPoint> = result
        .rows
        .iter()
        .map(|r| CPPoint {
            time: r.time,
            purity: r.purity_mean,
            concurrence: r.concurrence_mean,
        })
        .collect();
    points.sort_by(|a, b| a.time.total_cmp(&b.time));
    points
}

/// `steps + 1` equally spaced times on `[0, tmax]`.
pub fn uniform_grid(tmax: f64, steps: usize) -> Result<Vec<f64>> {
    if !(tmax >= 0.0 && tmax.is_finite()) {
        return Err(invalid(format!("tmax must be >= 0, got {tmax}")));
    }
    if steps == 0 {
        return Ok(vec![0.0]);
    }
    Ok((0..=steps).map(|k| tmax * k as f64 / steps as f64).collect())
}

pub const AGGREGATE_HEADER: [&str; 6] = ["t", "P_mean", "P_stderr", "C_mean", "C_stderr", "n"];
pub const RECORD_HEADER: [&str; 5] = ["h_index", "s_index", "t", "P", "C"];

/// 17 significant digits; parses back to the identical `f64`.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |e| {
        if e.is_io_error() {
            match e.into_kind() {
                csv::ErrorKind::Io(source) => Error::Io {
                    path: path.to_path_buf(),
                    source,
                },
                _ => unreachable!(),
            }
        } else {
            Error::Format {
                path: path.to_path_buf(),
                message: e.to_string(),
            }
        }
    }
}

fn format_error(path: &Path, message: impl Into<String>) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

fn write_rows<const N: usize>(path: &Path, header: [&str; N], rows: impl Iterator<Item = [String; N]>) -> Result<()> {
    let file = std::fs::File::create(path).map_err(io_err(path))?;
    let mut w = csv::WriterBuilder::new().from_writer(std::io::BufWriter::new(file));
    w.write_record(header).map_err(csv_err(path))?;
    for row in rows {
        w.write_record(&row).map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

fn read_rows(path: &Path, header: &[&str]) -> Result<Vec<csv::StringRecord>> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(csv_err(path))?;
    let found = r.headers().map_err(csv_err(path))?.clone();
    if found.iter().ne(header.iter().copied()) {
        return Err(format_error(path, format!("unexpected header {found:?}")));
    }
    r.records().map(|rec| rec.map_err(csv_err(path))).collect()
}

fn field<T: std::str::FromStr>(path: &Path, rec: &csv::StringRecord, i: usize) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    let raw = rec.get(i).ok_or_else(|| format_error(path, format!("missing column {i}")))?;
    raw.parse()
        .map_err(|e| format_error(path, format!("bad value {raw:?} in column {i}: {e}")))
}

pub fn write_aggregate(path: impl AsRef<Path>, result: &AggregateResult) -> Result<()> {
    let path = path.as_ref();
    write_rows(
        path,
        AGGREGATE_HEADER,
        result.rows.iter().map(|r| {
            [
                format_real(r.time),
                format_real(r.purity_mean),
                format_real(r.purity_stderr),
                format_real(r.concurrence_mean),
                format_real(r.concurrence_stderr),
                r.count.to_string(),
            ]
        }),
    )
}

pub fn read_aggregate(path: impl AsRef<Path>) -> Result<AggregateResult> {
    let path = path.as_ref();
    let rows = read_rows(path, &AGGREGATE_HEADER)?
        .iter()
        .map(|rec| {
            Ok(AggregateRow {
                time: field(path, rec, 0)?,
                purity_mean: field(path, rec, 1)?,
                purity_stderr: field(path, rec, 2)?,
                concurrence_mean: field(path, rec, 3)?,
                concurrence_stderr: field(path, rec, 4)?,
                count: field(path, rec, 5)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(AggregateResult { rows })
}

pub fn write_records(path: impl AsRef<Path>, records: &[TimeSeriesRecord]) -> Result<()> {
    let path = path.as_ref();
    write_rows(
        path,
        RECORD_HEADER,
        records.iter().map(|r| {
            [
                r.hamiltonian_index.to_string(),
                r.state_index.to_string(),
                format_real(r.time),
                format_real(r.purity),
                format_real(r.concurrence),
            ]
        }),
    )
}

pub fn read_records(path: impl AsRef<Path>) -> Result<Vec<TimeSeriesRecord>> {
    let path = path.as_ref();
    read_rows(path, &RECORD_HEADER)?
        .iter()
        .map(|rec| {
            Ok(TimeSeriesRecord {
                hamiltonian_index: field(path, rec, 0)?,
                state_index: field(path, rec, 1)?,
                time: field(path, rec, 2)?,
                purity: field(path, rec, 3)?,
                concurrence: field(path, rec, 4)?,
            })
        })
        .collect()
}
