//! Command-line front end.
//!
//! Parameters come from an optional `key = value` config file (`#` starts a
//! comment) and from the command line as `--key value`, `--key=value` or
//! `key=value`; command-line values win. Unknown keys are rejected: on the
//! command line, any key the subcommand does not use; in a config file, keys
//! no subcommand uses (so one preset can drive both `simulate` and `theory`).
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numerical
//! failure.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::ensemble::{
    cp_trajectory, format_real, run_ensemble, uniform_grid, write_aggregate, write_records, FailurePolicy, Mode,
    RunConfig,
};
use crate::error::Error;
use crate::rmt::{
    environment_central_spacing, histogram, mean_level_spacing_center, unfolded_central_spacings, HEISENBERG_TIME,
};
use crate::theory::{concurrence_elr, purity_elr, purity_lr, werner_concurrence_from_purity, TheoryParams};
use crate::validate::{run_all, sample_environment_spectra, ValidateOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub const USAGE: &str = "\
usage: bellpair <simulate|theory|cpdiagram|spectra|validate> [--config FILE] [--key value | key=value]...

  simulate   ensemble purity/concurrence  -> OUT/aggregate.csv [OUT/records.csv]
  theory     P_LR, P_ELR, C_ELR on a grid -> OUT/theory.csv
  cpdiagram  CP trajectories per N         -> OUT/cp_N<N>.csv, OUT/werner_reference.csv
  spectra    environment spectra           -> OUT/eigenvalues.csv, OUT/spacing_histogram.csv
  validate   reference-oracle suite

times: tmax + steps (steps+1 points from 0) or times=t0,t1,...
reals accept `pi`, `tauH` (= 2pi) and multiples such as `1.5tauH`; alpha also accepts bell, product.";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subcommand {
    Simulate,
    Theory,
    CpDiagram,
    Spectra,
    Validate,
}

const ALL: [Subcommand; 5] = [
    Subcommand::Simulate,
    Subcommand::Theory,
    Subcommand::CpDiagram,
    Subcommand::Spectra,
    Subcommand::Validate,
];

impl Subcommand {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "simulate" => Self::Simulate,
            "theory" => Self::Theory,
            "cpdiagram" => Self::CpDiagram,
            "spectra" => Self::Spectra,
            "validate" => Self::Validate,
            _ => return None,
        })
    }

    fn allowed_keys(self) -> &'static [&'static str] {
        const GRID: [&str; 3] = ["tmax", "steps", "times"];
        match self {
            Self::Simulate => &[
                "N", "N1", "N2", "lambda1", "lambda2", "alpha", "tmax", "steps", "times", "nh", "ns", "seed",
                "mode", "out", "workers", "records", "on_failure",
            ],
            Self::Theory => &["lambda1", "lambda2", "alpha", "tau_h1", "tau_h2", GRID[0], GRID[1], GRID[2], "out"],
            Self::CpDiagram => &[
                "Ns", "lambda1", "alpha", "tmax", "steps", "times", "nh", "ns", "seed", "out", "workers",
            ],
            Self::Spectra => &["N", "samples", "seed", "out", "bin_width", "bins"],
            Self::Validate => &[
                "seed", "force_fail", "spectator_N", "two_env_N", "concurrence_samples", "spectral_N",
                "spectral_samples",
            ],
        }
    }
}

/// Failure raised while handling a command, mapped onto an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Lib(Error::Numerical { .. } | Error::Realization { .. }) => EXIT_NUMERICAL,
            CliError::Lib(_) => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Merged parameters of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct CliConfig {
    pub subcommand: Subcommand,
    pub params: BTreeMap<String, String>,
    pub out_dir: PathBuf,
}

/// Parses `key = value` lines.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `key = value`", lineno + 1))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(format!("line {}: empty key", lineno + 1));
        }
        map.insert(k.to_string(), v.to_string());
    }
    Ok(map)
}

impl CliConfig {
    pub fn from_args(args: &[String]) -> Result<Self, CliError> {
        let (first, rest) = args.split_first().ok_or_else(|| usage("missing subcommand"))?;
        let subcommand = Subcommand::parse(first).ok_or_else(|| usage(format!("unknown subcommand `{first}`")))?;

        let mut flags = BTreeMap::new();
        let mut it = rest.iter();
        while let Some(arg) = it.next() {
            let (k, v) = if let Some(stripped) = arg.strip_prefix("--") {
                match stripped.split_once('=') {
                    Some((k, v)) => (k.to_string(), v.to_string()),
                    None => {
                        let v = it.next().ok_or_else(|| usage(format!("flag --{stripped} needs a value")))?;
                        (stripped.to_string(), v.clone())
                    }
                }
            } else if let Some((k, v)) = arg.split_once('=') {
                (k.to_string(), v.to_string())
            } else {
                return Err(usage(format!("unexpected argument `{arg}`")));
            };
            flags.insert(k, v);
        }

        let allowed = subcommand.allowed_keys();
        if let Some(bad) = flags.keys().find(|k| *k != "config" && !allowed.contains(&k.as_str())) {
            return Err(usage(format!("unknown key `{bad}` for {first}")));
        }

        // a preset may carry keys for sibling subcommands; those are ignored
        let mut params = BTreeMap::new();
        if let Some(path) = flags.remove("config") {
            let text =
                std::fs::read_to_string(&path).map_err(|e| usage(format!("cannot read config {path}: {e}")))?;
            for (k, v) in parse_config_text(&text).map_err(|e| usage(format!("{path}: {e}")))? {
                if allowed.contains(&k.as_str()) {
                    params.insert(k, v);
                } else if !ALL.iter().any(|s| s.allowed_keys().contains(&k.as_str())) {
                    return Err(usage(format!("{path}: unknown key `{k}`")));
                }
            }
        }
        params.extend(flags);
        let out_dir = PathBuf::from(params.get("out").map(String::as_str).unwrap_or("."));
        Ok(Self {
            subcommand,
            params,
            out_dir,
        })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }

    fn required(&self, key: &str) -> Result<&str, CliError> {
        self.raw(key).ok_or_else(|| usage(format!("missing required key `{key}`")))
    }

    fn real(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.raw(key)
            .map(|v| parse_real(v).ok_or_else(|| usage(format!("key `{key}`: cannot parse `{v}` as a real"))))
            .transpose()
    }

    fn real_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        Ok(self.real(key)?.unwrap_or(default))
    }

    fn required_real(&self, key: &str) -> Result<f64, CliError> {
        self.required(key)?;
        Ok(self.real(key)?.expect("present"))
    }

    fn uint(&self, key: &str) -> Result<Option<u64>, CliError> {
        self.raw(key)
            .map(|v| {
                v.parse::<u64>()
                    .map_err(|_| usage(format!("key `{key}`: `{v}` is not a non-negative integer")))
            })
            .transpose()
    }

    fn usize_or(&self, key: &str, default: usize) -> Result<usize, CliError> {
        Ok(self.uint(key)?.map(|v| v as usize).unwrap_or(default))
    }

    fn flag(&self, key: &str) -> Result<bool, CliError> {
        match self.raw(key) {
            None => Ok(false),
            Some("1" | "true" | "yes" | "on") => Ok(true),
            Some("0" | "false" | "no" | "off") => Ok(false),
            Some(v) => Err(usage(format!("key `{key}`: `{v}` is not a boolean"))),
        }
    }

    fn alpha(&self) -> Result<f64, CliError> {
        let v = self.required("alpha")?;
        let a = match v {
            "bell" => PI / 4.0,
            "product" => 0.0,
            _ => parse_real(v).ok_or_else(|| usage(format!("key `alpha`: cannot parse `{v}`")))?,
        };
        if !(0.0..=PI / 4.0 + 1e-15).contains(&a) {
            return Err(usage(format!("key `alpha`: {a} outside [0, π/4]")));
        }
        Ok(a)
    }

    fn times(&self) -> Result<Vec<f64>, CliError> {
        if let Some(list) = self.raw("times") {
            if self.raw("tmax").is_some() || self.raw("steps").is_some() {
                return Err(usage("key `times` excludes `tmax`/`steps`"));
            }
            let times: Vec<f64> = list
                .split(',')
                .map(|t| parse_real(t.trim()).ok_or_else(|| usage(format!("key `times`: cannot parse `{t}`"))))
                .collect::<Result<_, _>>()?;
            if times.is_empty() || times.windows(2).any(|w| !(w[0] <= w[1])) || times.iter().any(|t| *t < 0.0) {
                return Err(usage("key `times`: need a non-empty sorted list of non-negative times"));
            }
            return Ok(times);
        }
        let tmax = self.required_real("tmax")?;
        let steps = self
            .uint("steps")?
            .ok_or_else(|| usage("missing required key `steps` (or give `times`)"))?;
        uniform_grid(tmax, steps as usize).map_err(|e| usage(format!("key `tmax`: {e}")))
    }

    fn nonneg(&self, key: &str, v: f64) -> Result<f64, CliError> {
        if v >= 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(usage(format!("key `{key}`: must be >= 0, got {v}")))
        }
    }

    fn positive_usize(&self, key: &str, default: Option<usize>) -> Result<usize, CliError> {
        let v = match (self.uint(key)?, default) {
            (Some(v), _) => v as usize,
            (None, Some(d)) => d,
            (None, None) => return Err(usage(format!("missing required key `{key}`"))),
        };
        if v == 0 {
            return Err(usage(format!("key `{key}`: must be at least 1")));
        }
        Ok(v)
    }

    /// Ensemble parameters for `simulate`.
    pub fn run_config(&self) -> Result<RunConfig, CliError> {
        let mode = match self.raw("mode").unwrap_or("spectator") {
            "spectator" => Mode::Spectator,
            "two-env" | "two_env" | "twoenv" => Mode::TwoEnv,
            other => return Err(usage(format!("key `mode`: unknown mode `{other}`"))),
        };
        let env_dim = match (self.uint("N")?, self.uint("N1")?) {
            (_, Some(n1)) => n1 as usize,
            (Some(n), None) => n as usize,
            (None, None) => return Err(usage("missing required key `N`")),
        };
        let env_dim2 = match mode {
            Mode::TwoEnv => self
                .uint("N2")?
                .or(self.uint("N")?)
                .ok_or_else(|| usage("missing required key `N2`"))? as usize,
            Mode::Spectator => env_dim,
        };
        for (key, n) in [("N", env_dim), ("N2", env_dim2)] {
            if n < 2 {
                return Err(usage(format!("key `{key}`: environment dimension must be at least 2")));
            }
        }
        let lambda1 = self.nonneg("lambda1", self.required_real("lambda1")?)?;
        let lambda2 = self.nonneg("lambda2", self.real_or("lambda2", 0.0)?)?;
        if mode == Mode::Spectator && lambda2 != 0.0 {
            return Err(usage("key `lambda2`: must be 0 unless mode=two-env"));
        }
        let failure_policy = match self.raw("on_failure").unwrap_or("abort") {
            "abort" => FailurePolicy::Abort,
            "skip" => FailurePolicy::Skip,
            other => return Err(usage(format!("key `on_failure`: expected abort or skip, got `{other}`"))),
        };
        Ok(RunConfig {
            mode,
            env_dim,
            env_dim2,
            lambda1,
            lambda2,
            alpha: self.alpha()?,
            times: self.times()?,
            n_hamiltonians: self.positive_usize("nh", Some(10))?,
            n_states: self.positive_usize("ns", Some(15))?,
            master_seed: self.uint("seed")?.unwrap_or(0),
            workers: self.usize_or("workers", 0)?,
            failure_policy,
            keep_records: self.flag("records")?,
        })
    }
}

/// Parses a real with optional `pi` / `tauH` units, e.g. `0.25pi`, `pi/4`,
/// `1.5tauH`.
pub fn parse_real(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Ok(v) = s.parse::<f64>() {
        return v.is_finite().then_some(v);
    }
    let (body, divisor) = match s.split_once('/') {
        Some((b, d)) => (b.trim(), d.trim().parse::<f64>().ok().filter(|d| *d != 0.0)?),
        None => (s, 1.0),
    };
    for (unit, scale) in [("tauH", HEISENBERG_TIME), ("tau_H", HEISENBERG_TIME), ("τ_H", HEISENBERG_TIME), ("pi", PI), ("π", PI)] {
        if let Some(coef) = body.strip_suffix(unit) {
            let coef = coef.trim().trim_end_matches('*');
            let c = if coef.is_empty() { 1.0 } else { coef.parse::<f64>().ok()? };
            return Some(c * scale / divisor);
        }
    }
    None
}

fn create_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|source| {
        CliError::Lib(Error::Io {
            path: dir.to_path_buf(),
            source,
        })
    })
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| {
        CliError::Lib(Error::Io {
            path: path.to_path_buf(),
            source,
        })
    })
}

fn say(out: &mut dyn Write, line: impl AsRef<str>) {
    // stdout failures (closed pipe) are not worth aborting a finished run
    let _ = writeln!(out, "{}", line.as_ref());
}

pub fn cmd_simulate(cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let run_cfg = cfg.run_config()?;
    create_dir(&cfg.out_dir)?;
    let start = Instant::now();
    let run = run_ensemble(&run_cfg)?;
    let agg_path = cfg.out_dir.join("aggregate.csv");
    write_aggregate(&agg_path, &run.aggregate)?;
    if let Some(records) = &run.records {
        write_records(cfg.out_dir.join("records.csv"), records)?;
    }
    let last = run.aggregate.rows.last().expect("non-empty grid");
    say(out, format!("wrote {}", agg_path.display()));
    say(
        out,
        format!(
            "final t={:.6} P_mean={:.6} C_mean={:.6} n={}",
            last.time, last.purity_mean, last.concurrence_mean, last.count
        ),
    );
    for s in &run.skipped {
        say(out, format!("skipped h={} s={} seed={}: {}", s.hamiltonian_index, s.state_index, s.seed, s.message));
    }
    say(out, format!("wall time {:.3} s", start.elapsed().as_secs_f64()));
    Ok(EXIT_OK)
}

pub fn cmd_theory(cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let lambda1 = cfg.nonneg("lambda1", cfg.required_real("lambda1")?)?;
    let lambda2 = cfg.nonneg("lambda2", cfg.real_or("lambda2", 0.0)?)?;
    let params = TheoryParams::new(
        lambda1,
        lambda2,
        cfg.alpha()?,
        cfg.real_or("tau_h1", HEISENBERG_TIME)?,
        cfg.real_or("tau_h2", HEISENBERG_TIME)?,
    )
    .map_err(|e| usage(e.to_string()))?;
    let times = cfg.times()?;
    let mut text = String::from("t,P_LR,P_ELR,C_ELR\n");
    for &t in &times {
        text.push_str(&format!(
            "{},{},{},{}\n",
            format_real(t),
            format_real(purity_lr(t, &params)?),
            format_real(purity_elr(t, &params)?),
            format_real(concurrence_elr(t, &params)?)
        ));
    }
    create_dir(&cfg.out_dir)?;
    let path = cfg.out_dir.join("theory.csv");
    write_text(&path, &text)?;
    say(out, format!("wrote {} ({} rows)", path.display(), times.len()));
    Ok(EXIT_OK)
}

/// Largest `|C̄ - C_W(P̄)|` over trajectory points with `P̄ ∈ [lo, hi]`.
pub fn werner_deviation(points: &[crate::qstate::CPPoint], lo: f64, hi: f64) -> Option<f64> {
    points
        .iter()
        .filter(|p| (lo..=hi).contains(&p.purity))
        .map(|p| {
            let cw = werner_concurrence_from_purity(p.purity.clamp(0.25, 1.0)).expect("clamped");
            (p.concurrence - cw).abs()
        })
        .reduce(f64::max)
}

pub fn cmd_cpdiagram(cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let ns: Vec<usize> = cfg
        .required("Ns")?
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<usize>()
                .ok()
                .filter(|n| *n >= 2)
                .ok_or_else(|| usage(format!("key `Ns`: `{v}` is not an environment dimension >= 2")))
        })
        .collect::<Result<_, _>>()?;
    let base = RunConfig {
        n_hamiltonians: cfg.positive_usize("nh", Some(10))?,
        n_states: cfg.positive_usize("ns", Some(15))?,
        master_seed: cfg.uint("seed")?.unwrap_or(0),
        workers: cfg.usize_or("workers", 0)?,
        ..RunConfig::spectator(2, cfg.nonneg("lambda1", cfg.required_real("lambda1")?)?, cfg.alpha()?, cfg.times()?)
    };
    create_dir(&cfg.out_dir)?;

    let mut reference = String::from("P,C\n");
    for k in 0..200 {
        let p = 0.25 + 0.75 * k as f64 / 199.0;
        let c = werner_concurrence_from_purity(p.min(1.0))?;
        reference.push_str(&format!("{},{}\n", format_real(p), format_real(c)));
    }
    write_text(&cfg.out_dir.join("werner_reference.csv"), &reference)?;

    for n in ns {
        let run = run_ensemble(&RunConfig { env_dim: n, env_dim2: n, ..base.clone() })?;
        let points = cp_trajectory(&run.aggregate);
        let mut text = String::from("t,P_mean,C_mean\n");
        for p in &points {
            text.push_str(&format!(
                "{},{},{}\n",
                format_real(p.time),
                format_real(p.purity),
                format_real(p.concurrence)
            ));
        }
        let path = cfg.out_dir.join(format!("cp_N{n}.csv"));
        write_text(&path, &text)?;
        let dev = werner_deviation(&points, 0.55, 0.95)
            .map(|d| format!("{d:.4}"))
            .unwrap_or_else(|| "n/a".into());
        say(out, format!("N={n}: wrote {} (max |C - C_W| for P in [0.55, 0.95]: {dev})", path.display()));
    }
    Ok(EXIT_OK)
}

pub fn cmd_spectra(cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let n = cfg.positive_usize("N", None)?;
    if n < 4 {
        return Err(usage("key `N`: need at least 4 levels for spacing statistics"));
    }
    let samples = cfg.positive_usize("samples", None)?;
    let width = cfg.real_or("bin_width", 0.1)?;
    if !(width > 0.0) {
        return Err(usage("key `bin_width`: must be > 0"));
    }
    let bins = cfg.positive_usize("bins", Some(40))?;
    let spectra = sample_environment_spectra(n, samples, cfg.uint("seed")?.unwrap_or(0))?;

    let mut eig_text = String::from("sample,E\n");
    let mut spacing_sum = 0.0;
    let mut spacings = Vec::new();
    for (k, e) in spectra.iter().enumerate() {
        for &x in e {
            eig_text.push_str(&format!("{k},{}\n", format_real(x)));
        }
        spacing_sum += mean_level_spacing_center(e)?;
        spacings.extend(unfolded_central_spacings(e)?);
    }
    create_dir(&cfg.out_dir)?;
    write_text(&cfg.out_dir.join("eigenvalues.csv"), &eig_text)?;

    let hist = histogram(&spacings, width, bins);
    let total = spacings.len().max(1) as f64;
    let mut hist_text = String::from("bin_lo,bin_hi,count,fraction\n");
    for b in &hist {
        hist_text.push_str(&format!(
            "{},{},{},{}\n",
            format_real(b.lo),
            format_real(b.hi),
            b.count,
            format_real(b.count as f64 / total)
        ));
    }
    write_text(&cfg.out_dir.join("spacing_histogram.csv"), &hist_text)?;

    let mean_spacing = spacing_sum / spectra.len() as f64;
    say(out, format!("eigenvalues: {}", spectra.len() * n));
    say(
        out,
        format!(
            "central mean spacing {:.5} (semicircle prediction {:.5})",
            mean_spacing,
            environment_central_spacing(n)
        ),
    );
    say(out, format!("spacings below {width}: {:.5}%", 100.0 * hist[0].count as f64 / total));
    Ok(EXIT_OK)
}

pub fn cmd_validate(cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let d = ValidateOptions::default();
    let opts = ValidateOptions {
        spectator_n: cfg.positive_usize("spectator_N", Some(d.spectator_n))?,
        two_env_n: cfg.positive_usize("two_env_N", Some(d.two_env_n))?,
        concurrence_samples: cfg.positive_usize("concurrence_samples", Some(d.concurrence_samples))?,
        spectral_n: cfg.positive_usize("spectral_N", Some(d.spectral_n))?,
        spectral_samples: cfg.positive_usize("spectral_samples", Some(d.spectral_samples))?,
        seed: cfg.uint("seed")?.unwrap_or(d.seed),
        force_fail: cfg.flag("force_fail")?,
    };
    if opts.spectral_n < 2 {
        return Err(usage("key `spectral_N`: must be at least 2"));
    }
    let reports = run_all(&opts)?;
    for r in &reports {
        say(out, r.to_string());
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.name).collect();
    if failed.is_empty() {
        say(out, "all oracles passed");
        Ok(EXIT_OK)
    } else {
        say(out, format!("failed: {}", failed.join(", ")));
        Ok(EXIT_VALIDATION)
    }
}

/// Runs one invocation; `args` excludes the program name.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if matches!(args.first().map(String::as_str), Some("-h" | "--help" | "help")) {
        say(out, USAGE);
        return EXIT_OK;
    }
    let result = CliConfig::from_args(args).and_then(|cfg| match cfg.subcommand {
        Subcommand::Simulate => cmd_simulate(&cfg, out),
        Subcommand::Theory => cmd_theory(&cfg, out),
        Subcommand::CpDiagram => cmd_cpdiagram(&cfg, out),
        Subcommand::Spectra => cmd_spectra(&cfg, out),
        Subcommand::Validate => cmd_validate(&cfg, out),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, CliError::Usage(_)) {
                let _ = writeln!(err, "{USAGE}");
            }
            e.exit_code()
        }
    }
}
