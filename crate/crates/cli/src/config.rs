//! TOML run configuration.
//!
//! ```toml
//! command = "decay-fit"   # optional, must match the subcommand
//! output = "runs/decay"   # directory for CSV/JSON/SVG; --out overrides
//! seed = 7                # randomised check sets (ak-eval)
//!
//! [phase]                 # a(ξ) = Σ coeffs_j ξ_j^{k_j}
//! k = [2, 3]
//! coeffs = [1.0, -2.0]    # default all 1
//! abs = false             # true: terms |ξ_j|^{k_j} with real k_j > 1
//!
//! [params]                # per-command keys, see `Params`
//! k = 4
//! t_min = 1.0
//! t_max = 1e4
//! ```
//!
//! Validation collects every violation before reporting.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;

use clap::ValueEnum;
use num_complex::Complex64;
use oscdecay_core::analysis::critical_exponents;
use oscdecay_core::osc_core::{Exponent, PhaseSpec, PhaseTerm};
use serde::Serialize;
use sha2::{Digest, Sha256};
use toml::{Table, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Command {
    #[value(name = "ak-eval")]
    AkEval,
    #[value(name = "ak-sweep")]
    AkSweep,
    #[value(name = "decay-fit")]
    DecayFit,
    #[value(name = "vdcorput")]
    Vdcorput,
    #[value(name = "lemma22-check")]
    Lemma22Check,
    #[value(name = "gz-scan")]
    GzScan,
    #[value(name = "exponents")]
    Exponents,
    #[value(name = "pde-solve")]
    PdeSolve,
    #[value(name = "pde-decay")]
    PdeDecay,
    #[value(name = "strichartz")]
    Strichartz,
    #[value(name = "restrict-scan")]
    RestrictScan,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::AkEval => "ak-eval",
            Command::AkSweep => "ak-sweep",
            Command::DecayFit => "decay-fit",
            Command::Vdcorput => "vdcorput",
            Command::Lemma22Check => "lemma22-check",
            Command::GzScan => "gz-scan",
            Command::Exponents => "exponents",
            Command::PdeSolve => "pde-solve",
            Command::PdeDecay => "pde-decay",
            Command::Strichartz => "strichartz",
            Command::RestrictScan => "restrict-scan",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AkTarget {
    Int(u32),
    Abs(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridParams {
    pub spacing: Vec<f64>,
    pub points: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Params {
    AkEval {
        target: AkTarget,
        xs: Vec<f64>,
        t: f64,
        tol: f64,
    },
    AkSweep {
        ks: Vec<u32>,
        x_min: f64,
        x_max: f64,
        step: f64,
        tol: f64,
        err_limit: f64,
    },
    DecayFit {
        k: u32,
        x: f64,
        t_min: f64,
        t_max: f64,
        samples: usize,
        slope_tol: f64,
    },
    Vdcorput {
        k: u32,
        x: f64,
        interval: (f64, f64),
        t_min: f64,
        t_max: f64,
        samples: usize,
        slope_tol: f64,
    },
    Lemma22Check {
        zs: Vec<Complex64>,
        xs: Vec<f64>,
        eps: Vec<f64>,
    },
    GzScan {
        phase: PhaseSpec,
        x: Vec<f64>,
        etas: Vec<f64>,
        rel_tol: f64,
    },
    Exponents {
        ks: Vec<f64>,
    },
    PdeSolve {
        phase: PhaseSpec,
        grid: GridParams,
        sigma: f64,
        dt: f64,
        horizon: f64,
        conservation_tol: f64,
    },
    PdeDecay {
        phase: PhaseSpec,
        grid: GridParams,
        sigma: f64,
        t_min: f64,
        t_max: f64,
        samples: usize,
        slope_tol: f64,
    },
    Strichartz {
        phase: PhaseSpec,
        grid: GridParams,
        sigma: f64,
        dt: f64,
        horizon: f64,
        scales: Vec<f64>,
        p: f64,
        ratio_limit: f64,
    },
    RestrictScan {
        surface: PhaseSpec,
        spacing: Vec<f64>,
        half_points: Vec<usize>,
        xi_min: Vec<f64>,
        xi_max: Vec<f64>,
        xi_step: Vec<f64>,
        widths: Vec<f64>,
        ps: Vec<f64>,
        scales: Vec<f64>,
        slope_tol: f64,
    },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub output: PathBuf,
    pub seed: u64,
    pub params: Params,
    /// Hex SHA-256 of the config text.
    pub config_hash: String,
    /// The document as parsed, echoed into the JSON summary.
    pub inputs: serde_json::Value,
}

/// All schema violations found in one document.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigErrors(pub Vec<String>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigErrors {}

/// Typed access to one table, recording every problem under its dotted path.
struct Reader<'a> {
    table: Option<&'a Table>,
    prefix: &'static str,
    seen: BTreeSet<String>,
}

impl<'a> Reader<'a> {
    fn new(table: Option<&'a Table>, prefix: &'static str) -> Self {
        Reader {
            table,
            prefix,
            seen: BTreeSet::new(),
        }
    }

    fn path(&self, key: &str) -> String {
        if self.prefix.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.prefix)
        }
    }

    fn raw(&mut self, key: &str) -> Option<&'a Value> {
        self.seen.insert(key.to_string());
        self.table.and_then(|t| t.get(key))
    }

    fn has(&self, key: &str) -> bool {
        self.table.is_some_and(|t| t.contains_key(key))
    }

    fn value<T>(
        &mut self,
        errs: &mut Vec<String>,
        key: &str,
        default: Option<T>,
        conv: impl Fn(&Value) -> Option<T>,
        what: &str,
    ) -> Option<T> {
        match self.raw(key) {
            Some(v) => match conv(v) {
                Some(x) => Some(x),
                None => {
                    errs.push(format!("{}: expected {what}, got {v}", self.path(key)));
                    None
                }
            },
            None => {
                if default.is_none() {
                    errs.push(format!("{}: missing required field", self.path(key)));
                }
                default
            }
        }
    }

    fn f64(&mut self, errs: &mut Vec<String>, key: &str, default: Option<f64>) -> Option<f64> {
        self.value(errs, key, default, as_f64, "a finite number")
    }

    fn u32(&mut self, errs: &mut Vec<String>, key: &str, default: Option<u32>) -> Option<u32> {
        self.value(
            errs,
            key,
            default,
            |v| v.as_integer().and_then(|i| u32::try_from(i).ok()),
            "a nonnegative integer",
        )
    }

    fn usize(&mut self, errs: &mut Vec<String>, key: &str, default: Option<usize>) -> Option<usize> {
        self.value(
            errs,
            key,
            default,
            |v| v.as_integer().and_then(|i| usize::try_from(i).ok()),
            "a nonnegative integer",
        )
    }

    fn f64_list(&mut self, errs: &mut Vec<String>, key: &str, default: Option<Vec<f64>>) -> Option<Vec<f64>> {
        self.value(
            errs,
            key,
            default,
            |v| v.as_array()?.iter().map(as_f64).collect(),
            "an array of finite numbers",
        )
    }

    fn usize_list(&mut self, errs: &mut Vec<String>, key: &str, default: Option<Vec<usize>>) -> Option<Vec<usize>> {
        self.value(
            errs,
            key,
            default,
            |v| {
                v.as_array()?
                    .iter()
                    .map(|x| x.as_integer().and_then(|i| usize::try_from(i).ok()))
                    .collect()
            },
            "an array of nonnegative integers",
        )
    }

    fn unknown(&self, errs: &mut Vec<String>) {
        if let Some(t) = self.table {
            for k in t.keys().filter(|k| !self.seen.contains(*k)) {
                errs.push(format!("{}: unknown field", self.path(k)));
            }
        }
    }
}

fn as_f64(v: &Value) -> Option<f64> {
    let x = match v {
        Value::Float(f) => *f,
        Value::Integer(i) => *i as f64,
        _ => return None,
    };
    x.is_finite().then_some(x)
}

fn require(errs: &mut Vec<String>, ok: bool, msg: impl FnOnce() -> String) {
    if !ok {
        errs.push(msg());
    }
}

fn positive(errs: &mut Vec<String>, path: &str, v: Option<f64>) {
    if let Some(v) = v {
        require(errs, v > 0.0, || format!("{path}: must be positive, got {v}"));
    }
}

/// `[phase]` table: integer exponents `k ≥ 2`, or real `k > 1` with `abs = true`.
fn read_phase(root: &Table, errs: &mut Vec<String>) -> Option<PhaseSpec> {
    let Some(v) = root.get("phase") else {
        errs.push("phase: missing required table".into());
        return None;
    };
    let Some(t) = v.as_table() else {
        errs.push("phase: expected a table".into());
        return None;
    };
    let mut r = Reader::new(Some(t), "phase");
    let abs = match r.raw("abs") {
        None => false,
        Some(Value::Boolean(b)) => *b,
        Some(other) => {
            errs.push(format!("phase.abs: expected a boolean, got {other}"));
            false
        }
    };
    let ks = r.f64_list(errs, "k", None);
    let coeffs = r.f64_list(errs, "coeffs", ks.as_ref().map(|k| vec![1.0; k.len()]));
    r.unknown(errs);
    let (ks, coeffs) = (ks?, coeffs?);
    let mut ok = true;
    if ks.is_empty() {
        errs.push("phase.k: needs at least one exponent".into());
        ok = false;
    }
    if coeffs.len() != ks.len() {
        errs.push(format!(
            "phase.coeffs: {} coefficients for {} exponents",
            coeffs.len(),
            ks.len()
        ));
        ok = false;
    }
    let mut terms = Vec::new();
    for (j, (&k, &c)) in ks.iter().zip(&coeffs).enumerate() {
        let exponent = if abs {
            (k > 1.0).then_some(Exponent::Abs(k))
        } else {
            (k >= 2.0 && k.fract() == 0.0 && k <= u32::MAX as f64).then_some(Exponent::Int(k as u32))
        };
        match exponent {
            Some(e) => terms.push(PhaseTerm { coeff: c, exponent: e }),
            None => {
                errs.push(format!(
                    "phase.k[{j}]: exponent must be >= 2 or real > 1 with abs flag, got {k}"
                ));
                ok = false;
            }
        }
        if c == 0.0 {
            errs.push(format!("phase.coeffs[{j}]: coefficient must be nonzero"));
            ok = false;
        }
    }
    if !ok {
        return None;
    }
    match PhaseSpec::new(terms) {
        Ok(p) => Some(p),
        Err(e) => {
            errs.push(format!("phase: {e}"));
            None
        }
    }
}

fn read_grid(r: &mut Reader, errs: &mut Vec<String>, dims: Option<usize>) -> Option<GridParams> {
    let spacing = r.f64_list(errs, "spacing", None);
    let points = r.usize_list(errs, "points", None);
    let (spacing, points) = (spacing?, points?);
    let mut ok = true;
    if let Some(n) = dims {
        if spacing.len() != n || points.len() != n {
            errs.push(format!(
                "params.spacing/points: need {n} entries each to match the phase"
            ));
            ok = false;
        }
    }
    if spacing.iter().any(|h| !(*h > 0.0)) {
        errs.push("params.spacing: entries must be positive".into());
        ok = false;
    }
    if points.iter().any(|&p| p < 2 || !p.is_power_of_two()) {
        errs.push("params.points: entries must be powers of two >= 2".into());
        ok = false;
    }
    ok.then_some(GridParams { spacing, points })
}

fn read_t_range(r: &mut Reader, errs: &mut Vec<String>) -> (Option<f64>, Option<f64>, Option<usize>) {
    let t_min = r.f64(errs, "t_min", None);
    let t_max = r.f64(errs, "t_max", None);
    let samples = r.usize(errs, "samples", Some(25));
    positive(errs, "params.t_min", t_min);
    if let (Some(a), Some(b)) = (t_min, t_max) {
        require(errs, b > a, || {
            format!("params.t_max: must exceed t_min, got [{a}, {b}]")
        });
    }
    if let Some(n) = samples {
        require(errs, n >= 4, || format!("params.samples: need at least 4, got {n}"));
    }
    (t_min, t_max, samples)
}

fn read_params(cmd: Command, root: &Table, r: &mut Reader, errs: &mut Vec<String>) -> Option<Params> {
    let params = match cmd {
        Command::AkEval => {
            let k = r.raw("k").cloned();
            let big_k = r.raw("big_k").cloned();
            let target = match (k, big_k) {
                (Some(k), None) => match k.as_integer() {
                    Some(k) if k >= 2 && k <= u32::MAX as i64 => Some(AkTarget::Int(k as u32)),
                    _ => {
                        errs.push(format!(
                            "params.k: exponent must be >= 2 or real > 1 with abs flag, got {k}"
                        ));
                        None
                    }
                },
                (None, Some(b)) => match as_f64(&b) {
                    Some(b) if b > 1.0 => Some(AkTarget::Abs(b)),
                    _ => {
                        errs.push(format!("params.big_k: exponent must be real > 1, got {b}"));
                        None
                    }
                },
                (Some(_), Some(_)) => {
                    errs.push("params: give either k or big_k, not both".into());
                    None
                }
                (None, None) => {
                    errs.push("params.k: missing required field (or big_k)".into());
                    None
                }
            };
            let xs = r.f64_list(errs, "x", Some(Vec::new()));
            let random_count = r.usize(errs, "random_count", Some(0));
            let random_range = r.f64_list(errs, "random_range", Some(vec![-20.0, 20.0]));
            let t = r.f64(errs, "t", Some(1.0));
            let tol = r.f64(errs, "tol", Some(1e-10));
            positive(errs, "params.tol", tol);
            if let Some(t) = t {
                require(errs, t != 0.0, || "params.t: must be nonzero".into());
            }
            if let Some(rr) = &random_range {
                require(errs, rr.len() == 2 && rr[0] < rr[1], || {
                    "params.random_range: expected [lo, hi] with lo < hi".into()
                });
            }
            let (xs, count, rr) = (xs?, random_count?, random_range?);
            if xs.is_empty() && count == 0 {
                errs.push("params.x: give at least one point (or random_count > 0)".into());
                return None;
            }
            let mut xs = xs;
            xs.extend(random_points(root, count, rr[0], rr[1]));
            Params::AkEval {
                target: target?,
                xs,
                t: t?,
                tol: tol?,
            }
        }
        Command::AkSweep => {
            let ks = r.usize_list(errs, "k", None);
            let x_min = r.f64(errs, "x_min", Some(-20.0));
            let x_max = r.f64(errs, "x_max", Some(20.0));
            let step = r.f64(errs, "step", None);
            let tol = r.f64(errs, "tol", Some(1e-10));
            let err_limit = r.f64(errs, "err_limit", Some(1e-6));
            positive(errs, "params.step", step);
            positive(errs, "params.tol", tol);
            if let (Some(a), Some(b)) = (x_min, x_max) {
                require(errs, b >= a, || {
                    format!("params.x_max: must be >= x_min, got [{a}, {b}]")
                });
            }
            let ks = ks.and_then(|ks| {
                if ks.is_empty() || ks.iter().any(|&k| !(2..=64).contains(&k)) {
                    errs.push(format!(
                        "params.k: exponent must be >= 2 or real > 1 with abs flag, got {ks:?}"
                    ));
                    None
                } else {
                    Some(ks.into_iter().map(|k| k as u32).collect())
                }
            });
            Params::AkSweep {
                ks: ks?,
                x_min: x_min?,
                x_max: x_max?,
                step: step?,
                tol: tol?,
                err_limit: err_limit?,
            }
        }
        Command::DecayFit | Command::Vdcorput => {
            let k = r.u32(errs, "k", None);
            let x = r.f64(errs, "x", Some(0.0));
            let (t_min, t_max, samples) = read_t_range(r, errs);
            let slope_tol = r.f64(
                errs,
                "slope_tol",
                Some(if cmd == Command::DecayFit { 0.01 } else { 0.02 }),
            );
            if let Some(k) = k {
                require(errs, k >= 2, || {
                    format!("params.k: exponent must be >= 2 or real > 1 with abs flag, got {k}")
                });
            }
            if cmd == Command::DecayFit {
                Params::DecayFit {
                    k: k?,
                    x: x?,
                    t_min: t_min?,
                    t_max: t_max?,
                    samples: samples?,
                    slope_tol: slope_tol?,
                }
            } else {
                let iv = r.f64_list(errs, "interval", None);
                let iv = iv.and_then(|v| {
                    if v.len() == 2 && v[0] < v[1] {
                        Some((v[0], v[1]))
                    } else {
                        errs.push("params.interval: expected [a, b] with a < b".into());
                        None
                    }
                });
                Params::Vdcorput {
                    k: k?,
                    x: x?,
                    interval: iv?,
                    t_min: t_min?,
                    t_max: t_max?,
                    samples: samples?,
                    slope_tol: slope_tol?,
                }
            }
        }
        Command::Lemma22Check => {
            let zs = r.value(
                errs,
                "z",
                None,
                |v| {
                    v.as_array()?
                        .iter()
                        .map(|p| {
                            let p = p.as_array()?;
                            (p.len() == 2).then_some(())?;
                            Some(Complex64::new(as_f64(&p[0])?, as_f64(&p[1])?))
                        })
                        .collect::<Option<Vec<_>>>()
                },
                "an array of [re, im] pairs",
            );
            let xs = r.f64_list(errs, "x", None);
            let eps = r.f64_list(errs, "eps", Some((0..6).map(|m| 0.4 / 2f64.powi(m)).collect()));
            if let Some(zs) = &zs {
                require(errs, zs.iter().all(|z| z.re > -1.0), || {
                    "params.z: need Re z > -1".into()
                });
            }
            if let Some(xs) = &xs {
                require(errs, xs.iter().all(|x| *x != 0.0), || {
                    "params.x: points must be nonzero".into()
                });
            }
            if let Some(e) = &eps {
                require(errs, e.len() >= 3 && e.iter().all(|e| *e > 0.0), || {
                    "params.eps: need at least 3 positive values".into()
                });
            }
            Params::Lemma22Check {
                zs: zs?,
                xs: xs?,
                eps: eps?,
            }
        }
        Command::GzScan => {
            let phase = read_phase(root, errs);
            let x = r.f64_list(errs, "x", None);
            let eta_min = r.f64(errs, "eta_min", Some(-6.0));
            let eta_max = r.f64(errs, "eta_max", Some(6.0));
            let eta_step = r.f64(errs, "eta_step", Some(0.5));
            let rel_tol = r.f64(errs, "rel_tol", Some(1e-6));
            positive(errs, "params.eta_step", eta_step);
            if let (Some(p), Some(x)) = (&phase, &x) {
                require(errs, x.len() == p.dims() + 1, || {
                    format!(
                        "params.x: need {} coordinates for a {}-term phase",
                        p.dims() + 1,
                        p.dims()
                    )
                });
                require(errs, x.last().is_some_and(|v| *v > 0.0), || {
                    "params.x: last coordinate must be positive".into()
                });
            }
            let etas = match (eta_min, eta_max, eta_step) {
                (Some(a), Some(b), Some(h)) if b >= a && h > 0.0 => oscdecay_core::analysis::uniform_grid(a, b, h).ok(),
                (Some(_), Some(_), Some(_)) => {
                    errs.push("params.eta_max: must be >= eta_min".into());
                    None
                }
                _ => None,
            };
            Params::GzScan {
                phase: phase?,
                x: x?,
                etas: etas?,
                rel_tol: rel_tol?,
            }
        }
        Command::Exponents => {
            let ks = r.f64_list(errs, "k", None)?;
            if ks.is_empty() || ks.iter().any(|k| !(*k > 1.0)) {
                errs.push(format!(
                    "params.k: exponent must be >= 2 or real > 1 with abs flag, got {ks:?}"
                ));
                return None;
            }
            Params::Exponents { ks }
        }
        Command::PdeSolve | Command::PdeDecay | Command::Strichartz => {
            let phase = read_phase(root, errs);
            let grid = read_grid(r, errs, phase.as_ref().map(|p| p.dims()));
            let sigma = r.f64(errs, "sigma", Some(1.0));
            positive(errs, "params.sigma", sigma);
            match cmd {
                Command::PdeSolve => {
                    let dt = r.f64(errs, "dt", None);
                    let horizon = r.f64(errs, "horizon", None);
                    let tol = r.f64(errs, "conservation_tol", Some(1e-12));
                    positive(errs, "params.dt", dt);
                    positive(errs, "params.horizon", horizon);
                    Params::PdeSolve {
                        phase: phase?,
                        grid: grid?,
                        sigma: sigma?,
                        dt: dt?,
                        horizon: horizon?,
                        conservation_tol: tol?,
                    }
                }
                Command::PdeDecay => {
                    let (t_min, t_max, samples) = read_t_range(r, errs);
                    let slope_tol = r.f64(errs, "slope_tol", Some(0.05));
                    Params::PdeDecay {
                        phase: phase?,
                        grid: grid?,
                        sigma: sigma?,
                        t_min: t_min?,
                        t_max: t_max?,
                        samples: samples?,
                        slope_tol: slope_tol?,
                    }
                }
                _ => {
                    let dt = r.f64(errs, "dt", None);
                    let horizon = r.f64(errs, "horizon", None);
                    let scales = r.f64_list(errs, "scales", Some(vec![0.25, 0.5, 1.0, 2.0, 4.0]));
                    let default_p = phase.as_ref().and_then(|ph| {
                        let ks: Vec<f64> = ph.terms().iter().map(|t| t.exponent.value()).collect();
                        critical_exponents(&ks).ok().map(|e| e.p)
                    });
                    let p = if r.has("p") { r.f64(errs, "p", None) } else { default_p };
                    let ratio_limit = r.f64(errs, "ratio_limit", Some(2.0));
                    positive(errs, "params.dt", dt);
                    positive(errs, "params.horizon", horizon);
                    if let Some(s) = &scales {
                        require(errs, !s.is_empty() && s.iter().all(|s| *s > 0.0), || {
                            "params.scales: need positive dilation parameters".into()
                        });
                    }
                    if let Some(p) = p {
                        require(errs, p > 1.0 && p < 2.0, || {
                            format!("params.p: must lie in (1, 2), got {p}")
                        });
                    }
                    Params::Strichartz {
                        phase: phase?,
                        grid: grid?,
                        sigma: sigma?,
                        dt: dt?,
                        horizon: horizon?,
                        scales: scales?,
                        p: p?,
                        ratio_limit: ratio_limit?,
                    }
                }
            }
        }
        Command::RestrictScan => {
            let surface = read_phase(root, errs);
            let m = surface.as_ref().map(|s| s.dims());
            let spacing = r.f64_list(errs, "spacing", None);
            let half_points = r.usize_list(errs, "half_points", None);
            let xi_min = r.f64_list(errs, "xi_min", None);
            let xi_max = r.f64_list(errs, "xi_max", None);
            let xi_step = r.f64_list(errs, "xi_step", None);
            let widths = r.f64_list(errs, "widths", m.map(|m| vec![1.0; m + 1]));
            let default_ps = surface.as_ref().and_then(|s| {
                let ks: Vec<f64> = s.terms().iter().map(|t| t.exponent.value()).collect();
                critical_exponents(&ks).ok().map(|e| vec![e.p - 0.15, e.p, e.p + 0.15])
            });
            let ps = r.f64_list(errs, "p", default_ps);
            let scales = r.f64_list(errs, "scales", Some((-3..=3).map(|j| 2f64.powi(j)).collect()));
            let slope_tol = r.f64(errs, "slope_tol", Some(0.05));
            if let Some(m) = m {
                for (name, len) in [
                    ("spacing", spacing.as_ref().map(Vec::len)),
                    ("half_points", half_points.as_ref().map(Vec::len)),
                    ("widths", widths.as_ref().map(Vec::len)),
                ] {
                    if let Some(len) = len {
                        require(errs, len == m + 1, || {
                            format!("params.{name}: need {} entries, got {len}", m + 1)
                        });
                    }
                }
                for (name, len) in [
                    ("xi_min", xi_min.as_ref().map(Vec::len)),
                    ("xi_max", xi_max.as_ref().map(Vec::len)),
                    ("xi_step", xi_step.as_ref().map(Vec::len)),
                ] {
                    if let Some(len) = len {
                        require(errs, len == m, || format!("params.{name}: need {m} entries, got {len}"));
                    }
                }
            }
            for (name, v) in [
                ("spacing", &spacing),
                ("xi_step", &xi_step),
                ("widths", &widths),
                ("scales", &scales),
            ] {
                if let Some(v) = v {
                    require(errs, v.iter().all(|h| *h > 0.0), || {
                        format!("params.{name}: entries must be positive")
                    });
                }
            }
            if let Some(h) = &half_points {
                require(errs, h.iter().all(|&h| h >= 1), || {
                    "params.half_points: entries must be >= 1".into()
                });
            }
            if let (Some(a), Some(b)) = (&xi_min, &xi_max) {
                require(errs, a.iter().zip(b).all(|(a, b)| b > a), || {
                    "params.xi_max: must exceed xi_min".into()
                });
            }
            if let Some(ps) = &ps {
                require(errs, !ps.is_empty() && ps.iter().all(|p| *p >= 1.0), || {
                    "params.p: need values >= 1".into()
                });
            }
            if let Some(s) = &scales {
                require(errs, s.len() >= 3, || {
                    "params.scales: need at least 3 dilation parameters".into()
                });
            }
            Params::RestrictScan {
                surface: surface?,
                spacing: spacing?,
                half_points: half_points?,
                xi_min: xi_min?,
                xi_max: xi_max?,
                xi_step: xi_step?,
                widths: widths?,
                ps: ps?,
                scales: scales?,
                slope_tol: slope_tol?,
            }
        }
    };
    Some(params)
}

fn random_points(root: &Table, count: usize, lo: f64, hi: f64) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let seed = root.get("seed").and_then(Value::as_integer).unwrap_or(0) as u64;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen_range(lo..hi)).collect()
}

pub fn config_hash(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Parses and validates `text` for `command`; `out` overrides `output`.
pub fn parse_config(text: &str, command: Command, out: Option<PathBuf>) -> Result<RunConfig, ConfigErrors> {
    let root: Table = match text.parse() {
        Ok(t) => t,
        Err(e) => return Err(ConfigErrors(vec![format!("config: {}", e.message())])),
    };
    let mut errs = Vec::new();
    let mut top = Reader::new(Some(&root), "");
    match top.raw("command") {
        None => {}
        Some(Value::String(s)) if s == command.name() => {}
        Some(other) => errs.push(format!("command: config is for {other}, not \"{command}\"")),
    }
    let output = match (top.raw("output"), out) {
        (_, Some(o)) => Some(o),
        (Some(Value::String(s)), None) if !s.is_empty() => Some(PathBuf::from(s)),
        (Some(other), None) => {
            errs.push(format!("output: expected a directory path, got {other}"));
            None
        }
        (None, None) => {
            errs.push("output: missing required field (or pass --out)".into());
            None
        }
    };
    let seed = top.value(
        &mut errs,
        "seed",
        Some(0u64),
        |v| v.as_integer().and_then(|i| u64::try_from(i).ok()),
        "a nonnegative integer",
    );
    top.raw("phase");
    top.raw("params");
    top.unknown(&mut errs);

    let params_table = match root.get("params") {
        None => None,
        Some(Value::Table(t)) => Some(t),
        Some(_) => {
            errs.push("params: expected a table".into());
            None
        }
    };
    let mut r = Reader::new(params_table, "params");
    let params = read_params(command, &root, &mut r, &mut errs);
    r.unknown(&mut errs);
    let uses_phase = matches!(
        command,
        Command::GzScan | Command::PdeSolve | Command::PdeDecay | Command::Strichartz | Command::RestrictScan
    );
    if !uses_phase && root.contains_key("phase") {
        errs.push(format!("phase: not used by {command}"));
    }

    if !errs.is_empty() {
        return Err(ConfigErrors(errs));
    }
    Ok(RunConfig {
        command,
        output: output.expect("checked above"),
        seed: seed.expect("checked above"),
        params: params.expect("checked above"),
        config_hash: config_hash(text),
        inputs: serde_json::to_value(&root).expect("TOML tables always serialise"),
    })
}
