use num_complex::Complex64;
use oscdecay_core::analysis::{
    bound_sweep, critical_exponents, geometric_grid, gz_eta_scan, half_line_transform_check, interval_integral,
    scaled_magnitudes, LIMIT_TOL, PER_EPS_TOL,
};
use oscdecay_core::dispersive::{
    decay_scan, solve_all, strichartz_dilation_scan, DilationBase, EvolutionProblem, BOUNDARY_GUARD, EDGE_BAND,
};
use oscdecay_core::numerics::{boundary_mass_fraction, loglog_fit, lp_norm, sci, Grid, SampledField};
use oscdecay_core::osc_core::{ibp_bound, oscillatory_integral, scaled_integral, Exponent, PhaseSpec};
use oscdecay_core::restriction::{
    necessity_quotients, restriction_quotient, GaussianProfile, RestrictionSetup, SurfaceSpec,
};
use oscdecay_core::Result;

use crate::config::{AkTarget, GridParams, Params, RunConfig};
use crate::plot::{PlotSpec, Series};
use crate::report::ResultRow;

/// Bound on `|∫ e^{i(xξ + |ξ|^K)} dξ|` used for the real-exponent variant.
const ABS_VARIANT_BOUND: f64 = 10.0;
/// Uniform constant in `|∫ e^{i(xξ + tξ^k)} dξ| <= C |t|^{-1/k}`.
const DECAY_CONSTANT: f64 = 12.0;
/// Results rows listed per k before violations are summarised.
const MAX_LISTED_VIOLATIONS: usize = 10;

pub struct Outcome {
    pub csv: String,
    pub results: Vec<ResultRow>,
    pub plot: Option<PlotSpec>,
}

fn csv(header: &str, rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut out = format!("{header}\n");
    for r in rows {
        out.push_str(&r.iter().map(|v| sci(*v)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

fn plot(title: &str, x: &str, y: &str, log: (bool, bool), series: Vec<Series>, slope: Option<f64>) -> Option<PlotSpec> {
    Some(PlotSpec {
        title: title.into(),
        x_label: x.into(),
        y_label: y.into(),
        log_x: log.0,
        log_y: log.1,
        series,
        slope,
    })
}

fn series(label: impl Into<String>, points: Vec<(f64, f64)>) -> Series {
    Series {
        label: label.into(),
        points,
    }
}

fn gaussian(grid: &GridParams, sigma: f64) -> Result<SampledField> {
    let g = Grid::centered(grid.spacing.clone(), grid.points.clone())?;
    SampledField::from_fn(g, move |x| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        Complex64::new((-r2 / (2.0 * sigma * sigma)).exp(), 0.0)
    })
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    match &cfg.params {
        Params::AkEval { target, xs, t, tol } => ak_eval(target, xs, *t, *tol),
        Params::AkSweep {
            ks,
            x_min,
            x_max,
            step,
            tol,
            err_limit,
        } => ak_sweep(ks, *x_min, *x_max, *step, *tol, *err_limit),
        Params::DecayFit {
            k,
            x,
            t_min,
            t_max,
            samples,
            slope_tol,
        } => decay(*k, *x, geometric_grid(*t_min, *t_max, *samples), *slope_tol),
        Params::Vdcorput {
            k,
            x,
            interval,
            t_min,
            t_max,
            samples,
            slope_tol,
        } => vdcorput(*k, *x, *interval, geometric_grid(*t_min, *t_max, *samples), *slope_tol),
        Params::Lemma22Check { zs, xs, eps } => lemma22(zs, xs, eps),
        Params::GzScan {
            phase,
            x,
            etas,
            rel_tol,
        } => gz_scan(phase, x, etas, *rel_tol),
        Params::Exponents { ks } => exponents(ks),
        Params::PdeSolve {
            phase,
            grid,
            sigma,
            dt,
            horizon,
            conservation_tol,
        } => pde_solve(phase, grid, *sigma, *dt, *horizon, *conservation_tol),
        Params::PdeDecay {
            phase,
            grid,
            sigma,
            t_min,
            t_max,
            samples,
            slope_tol,
        } => pde_decay(
            phase,
            grid,
            *sigma,
            geometric_grid(*t_min, *t_max, *samples),
            *slope_tol,
        ),
        Params::Strichartz {
            phase,
            grid,
            sigma,
            dt,
            horizon,
            scales,
            p,
            ratio_limit,
        } => strichartz(phase, grid, *sigma, *dt, *horizon, scales, *p, *ratio_limit),
        Params::RestrictScan { .. } => restrict_scan(&cfg.params),
    }
}

fn ak_eval(target: &AkTarget, xs: &[f64], t: f64, tol: f64) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut results = Vec::new();
    for &x in xs {
        let s = t.abs().powf(match target {
            AkTarget::Int(k) => -1.0 / *k as f64,
            AkTarget::Abs(k) => -1.0 / k,
        });
        let (r, bound) = match *target {
            AkTarget::Int(k) => (scaled_integral(k, x, t, tol)?, s * ibp_bound(k, t.signum() * s * x)),
            AkTarget::Abs(k) => (
                oscillatory_integral(Exponent::Abs(k), x, t, tol)?,
                s * ABS_VARIANT_BOUND,
            ),
        };
        let v = r.value.norm();
        rows.push(vec![x, r.value.re, r.value.im, v, bound, r.err_est]);
        results.push(ResultRow::at_most(format!("|I| at x={x}"), v, bound));
        results.push(ResultRow::at_most(format!("err_est at x={x}"), r.err_est, tol));
    }
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r[0], r[3])).collect();
    Ok(Outcome {
        csv: csv("x,re,im,abs,bound,err_est", rows),
        results,
        plot: plot(
            "oscillatory integral",
            "x",
            "|I|",
            (false, false),
            vec![series("|I|", pts)],
            None,
        ),
    })
}

fn ak_sweep(ks: &[u32], lo: f64, hi: f64, step: f64, tol: f64, err_limit: f64) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut results = Vec::new();
    let mut curves = Vec::new();
    for &k in ks {
        let sw = bound_sweep(k, lo, hi, step, tol)?;
        let ratio = sw.samples.iter().map(|s| s.abs / s.bound).fold(0.0, f64::max);
        results.push(ResultRow::at_most(format!("k={k} max |A_k|/bound"), ratio, 1.0));
        results.push(ResultRow::at_most(
            format!("k={k} max err_est"),
            sw.max_err_est,
            err_limit,
        ));
        for v in sw.violations.iter().take(MAX_LISTED_VIOLATIONS) {
            results.push(ResultRow {
                name: format!("k={k} violation at x={}", v.x),
                value: v.value,
                bound: Some(v.bound),
                pass: false,
            });
        }
        rows.extend(
            sw.samples
                .iter()
                .map(|s| vec![k as f64, s.x, s.abs, s.bound, s.err_est]),
        );
        curves.push(series(
            format!("k={k}"),
            sw.samples.iter().map(|s| (s.x, s.abs)).collect(),
        ));
    }
    Ok(Outcome {
        csv: csv("k,x,abs,bound,err_est", rows),
        results,
        plot: plot("|A_k(x)|", "x", "|A_k|", (false, false), curves, None),
    })
}

fn decay(k: u32, x: f64, ts: Vec<f64>, slope_tol: f64) -> Result<Outcome> {
    let pts = scaled_magnitudes(k, x, &ts)?;
    let fit = loglog_fit(&pts)?;
    let rate = 1.0 / k as f64;
    let sup = pts.iter().map(|(t, v)| v * t.powf(rate)).fold(0.0, f64::max);
    let bound: Vec<(f64, f64)> = ts.iter().map(|t| (*t, DECAY_CONSTANT * t.powf(-rate))).collect();
    Ok(Outcome {
        csv: csv("t,abs,bound", pts.iter().zip(&bound).map(|(p, b)| vec![p.0, p.1, b.1])),
        results: vec![
            ResultRow::near("slope", fit.slope, -rate, slope_tol),
            ResultRow::at_most("max |I| t^{1/k}", sup, DECAY_CONSTANT),
            ResultRow::info("fit max residual", fit.max_residual),
        ],
        plot: plot(
            "decay",
            "t",
            "|I(t)|",
            (true, true),
            vec![series("measured", pts), series("12 t^{-1/k}", bound)],
            Some(fit.slope),
        ),
    })
}

fn vdcorput(k: u32, x: f64, (a, b): (f64, f64), ts: Vec<f64>, slope_tol: f64) -> Result<Outcome> {
    let vals = oscdecay_core::exec::try_map(&ts, |&t| interval_integral(k, x, t, a, b).map(|v| (t, v.norm())))?;
    let fit = loglog_fit(&vals)?;
    let rate = 1.0 / k as f64;
    Ok(Outcome {
        csv: csv("t,abs", vals.iter().map(|p| vec![p.0, p.1])),
        results: vec![
            ResultRow::at_most("slope", fit.slope, -rate + slope_tol),
            ResultRow::info("fit max residual", fit.max_residual),
        ],
        plot: plot(
            "interval integral",
            "t",
            "|I(t)|",
            (true, true),
            vec![series("measured", vals)],
            Some(fit.slope),
        ),
    })
}

fn lemma22(zs: &[Complex64], xs: &[f64], eps: &[f64]) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut results = Vec::new();
    for &z in zs {
        for &x in xs {
            let r = half_line_transform_check(z, x, eps)?;
            let tag = format!("z={}{:+}i x={x}", z.re, z.im);
            results.push(ResultRow::at_most(
                format!("{tag} per-eps error"),
                r.max_sample_err,
                PER_EPS_TOL,
            ));
            results.push(ResultRow::at_most(format!("{tag} limit error"), r.limit_err, LIMIT_TOL));
            rows.extend(r.samples.iter().map(|s| {
                vec![
                    z.re,
                    z.im,
                    x,
                    s.eps,
                    s.quadrature.re,
                    s.quadrature.im,
                    s.closed_form.re,
                    s.closed_form.im,
                    s.abs_err,
                ]
            }));
        }
    }
    Ok(Outcome {
        csv: csv("z_re,z_im,x,eps,quad_re,quad_im,closed_re,closed_im,abs_err", rows),
        results,
        plot: None,
    })
}

fn gz_scan(phase: &PhaseSpec, x: &[f64], etas: &[f64], rel_tol: f64) -> Result<Outcome> {
    let scan = gz_eta_scan(phase, x, etas, phase.inv_q())?;
    let pts: Vec<(f64, f64)> = scan.points.iter().map(|p| (p.eta, p.abs_value)).collect();
    Ok(Outcome {
        csv: csv(
            "eta,abs,ratio",
            scan.points.iter().map(|p| vec![p.eta, p.abs_value, p.ratio]),
        ),
        results: vec![ResultRow::at_most(
            "max relative deviation of |G|/e^{-eta pi/2}",
            scan.max_rel_deviation,
            rel_tol,
        )],
        plot: plot(
            "|G_z| along Re z = -(1+1/q)",
            "eta",
            "|G|",
            (false, true),
            vec![series("|G|", pts)],
            None,
        ),
    })
}

fn exponents(ks: &[f64]) -> Result<Outcome> {
    let e = critical_exponents(ks)?;
    let alpha = e.alpha(e.p);
    Ok(Outcome {
        csv: format!(
            "name,value\ninv_q,{}\np,{}\np_dual,{}\nlambda,{}\nalpha_at_p,{}\n",
            sci(e.inv_q),
            sci(e.p),
            sci(e.p_dual),
            sci(e.lambda),
            sci(alpha)
        ),
        results: vec![
            ResultRow::info("inv_q", e.inv_q),
            ResultRow::info("p", e.p),
            ResultRow::info("p_dual", e.p_dual),
            ResultRow::near("alpha_at_p", alpha, 0.0, 1e-12),
        ],
        plot: None,
    })
}

fn pde_solve(phase: &PhaseSpec, grid: &GridParams, sigma: f64, dt: f64, horizon: f64, tol: f64) -> Result<Outcome> {
    let problem = EvolutionProblem::new(phase.clone(), gaussian(grid, sigma)?, dt, horizon)?;
    let us = solve_all(&problem)?;
    let l2_0 = lp_norm(problem.initial(), 2.0)?;
    let mut rows = Vec::new();
    let mut drift: f64 = 0.0;
    for (t, u) in problem.times().iter().zip(&us) {
        let l2 = lp_norm(u, 2.0)?;
        drift = drift.max((l2 / l2_0 - 1.0).abs());
        rows.push(vec![*t, l2, u.max_abs()]);
    }
    let edge = boundary_mass_fraction(us.last().expect("at least the initial state"), EDGE_BAND);
    let sup: Vec<(f64, f64)> = rows.iter().map(|r| (r[0], r[2])).collect();
    Ok(Outcome {
        csv: csv("t,l2,sup", rows),
        results: vec![
            ResultRow::at_most("max relative L2 drift", drift, tol),
            ResultRow::at_most("boundary mass fraction at T", edge, BOUNDARY_GUARD),
        ],
        plot: plot(
            "free evolution",
            "t",
            "sup |u|",
            (false, false),
            vec![series("sup |u|", sup)],
            None,
        ),
    })
}

fn pde_decay(phase: &PhaseSpec, grid: &GridParams, sigma: f64, ts: Vec<f64>, slope_tol: f64) -> Result<Outcome> {
    let t_max = ts.iter().cloned().fold(0.0, f64::max);
    let problem = EvolutionProblem::new(phase.clone(), gaussian(grid, sigma)?, t_max, t_max)?;
    let (series_, fit) = decay_scan(&problem, &ts)?;
    Ok(Outcome {
        csv: series_.to_csv(),
        results: vec![
            ResultRow::near("slope", fit.slope, -phase.inv_q(), slope_tol),
            ResultRow::info("fit max residual", fit.max_residual),
        ],
        plot: plot(
            "dispersive decay",
            "t",
            "sup |u(t)|",
            (true, true),
            vec![series("sup |u|", series_.points())],
            Some(fit.slope),
        ),
    })
}

#[allow(clippy::too_many_arguments)]
fn strichartz(
    phase: &PhaseSpec,
    grid: &GridParams,
    sigma: f64,
    dt: f64,
    horizon: f64,
    scales: &[f64],
    p: f64,
    ratio_limit: f64,
) -> Result<Outcome> {
    let base = DilationBase {
        spacing: grid.spacing.clone(),
        points: grid.points.clone(),
        dt,
        horizon,
    };
    let profile = move |x: &[f64]| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        Complex64::new((-r2 / (2.0 * sigma * sigma)).exp(), 0.0)
    };
    let qs = strichartz_dilation_scan(phase, profile, p, scales, &base)?;
    let (lo, hi) = qs.iter().fold((f64::INFINITY, 0.0f64), |(a, b), q| {
        (a.min(q.quotient), b.max(q.quotient))
    });
    let pts: Vec<(f64, f64)> = qs.iter().map(|q| (q.s, q.quotient)).collect();
    Ok(Outcome {
        csv: csv("s,quotient", qs.iter().map(|q| vec![q.s, q.quotient])),
        results: vec![
            ResultRow::info("p", p),
            ResultRow::at_most("max/min quotient", hi / lo, ratio_limit),
        ],
        plot: plot(
            "Strichartz quotient over dilations",
            "s",
            "quotient",
            (true, true),
            vec![series(format!("p={p:.4}"), pts)],
            None,
        ),
    })
}

fn restrict_scan(params: &Params) -> Result<Outcome> {
    let Params::RestrictScan {
        surface,
        spacing,
        half_points,
        xi_min,
        xi_max,
        xi_step,
        widths,
        ps,
        scales,
        slope_tol,
    } = params
    else {
        unreachable!("dispatched on RestrictScan")
    };
    let surf = SurfaceSpec::new(surface.clone());
    let grid = Grid::new(
        spacing.iter().zip(half_points).map(|(h, n)| -(*n as f64) * h).collect(),
        spacing.clone(),
        half_points.iter().map(|n| 2 * n + 1).collect(),
    )?;
    let window = |scale: f64| -> Result<Grid> {
        let lo: Vec<f64> = xi_min.iter().map(|v| v * scale).collect();
        let n: Vec<usize> = xi_min
            .iter()
            .zip(xi_max)
            .zip(xi_step)
            .map(|((a, b), h)| ((b - a) * scale / h).round() as usize + 1)
            .collect();
        Grid::new(lo, xi_step.clone(), n)
    };
    let setup = RestrictionSetup {
        grid: grid.clone(),
        xi_grid: window(1.0)?,
    };
    let profile = GaussianProfile::new(widths.clone(), vec![0.0; widths.len()])?;
    let crit = critical_exponents(&surface.terms().iter().map(|t| t.exponent.value()).collect::<Vec<_>>())?;
    let qs = necessity_quotients(&profile, &surf, ps, scales, &setup)?;

    let mut rows = Vec::new();
    let mut results = vec![ResultRow::info("critical p", crit.p)];
    let mut curves = Vec::new();
    for (&p, q) in ps.iter().zip(&qs) {
        let fit = loglog_fit(q)?;
        let alpha = crit.alpha(p);
        results.push(ResultRow::near(
            format!("p={p:.4} slope vs alpha(p)"),
            fit.slope,
            alpha,
            *slope_tol,
        ));
        results.push(ResultRow::info(
            format!("p={p:.4} slope vs -alpha(p) deviation"),
            (fit.slope + alpha).abs(),
        ));
        rows.extend(q.iter().map(|(s, v)| vec![p, *s, *v]));
        curves.push(series(format!("p={p:.3}"), q.clone()));
    }
    // Truncation check: the same quotient on a window shrunk to 80%.
    let f = profile.sample(grid)?;
    let q_full = restriction_quotient(&f, &surf, crit.p, &setup.xi_grid)?;
    let q_small = restriction_quotient(&f, &surf, crit.p, &window(0.8)?)?;
    results.push(ResultRow::info(
        "window convergence (relative change at 80% window)",
        (q_small / q_full - 1.0).abs(),
    ));
    Ok(Outcome {
        csv: csv("p,s,quotient", rows),
        results,
        plot: plot("restriction quotient of d_s phi", "s", "Q", (true, true), curves, None),
    })
}
