//! Rapidity sweeps, figure presets and CSV output.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beam::{build_grid, reduced_density, BeamSpec, QuadratureGrid};
use crate::entanglement::log_negativity;
use crate::error::{Error, Result};
use crate::lorentz::{boost_z, compose, rot_y, LorentzTransform};

/// Smallest grid size accepted in a sweep.
pub const MIN_GRID: usize = 8;

/// CSV header; `wall_time_ms` is appended only when timing is requested.
pub const CSV_HEADER: &str = "alpha,sigma_theta,xi,log_negativity,trace_residual,min_eigenvalue";

/// `Λ = R_y(α) L_z(ξ) R_y(α)⁻¹`: a boost of rapidity `xi` along the direction
/// at polar angle `alpha` in the x-z plane.
pub fn make_boost(alpha: f64, xi: f64) -> Result<LorentzTransform> {
    Ok(compose(
        &compose(&rot_y(alpha)?, &boost_z(xi)?),
        &rot_y(-alpha)?,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub alpha: f64,
    pub sigma_theta: f64,
    pub xi_min: f64,
    pub xi_max: f64,
    pub xi_steps: usize,
    pub n_theta: usize,
    pub n_phi: usize,
    pub p0: f64,
    pub output_path: String,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            alpha: 0.0,
            sigma_theta: 1.0,
            xi_min: -3.0,
            xi_max: 3.0,
            xi_steps: 61,
            n_theta: 64,
            n_phi: 64,
            p0: 1.0,
            output_path: "sweep.csv".to_string(),
        }
    }
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        for (name, v) in [
            ("alpha", self.alpha),
            ("xi_min", self.xi_min),
            ("xi_max", self.xi_max),
        ] {
            if !v.is_finite() {
                return bad(format!("{name} must be finite"));
            }
        }
        if self.xi_steps < 1 {
            return bad("xi_steps must be at least 1".into());
        }
        if self.xi_min > self.xi_max {
            return bad(format!(
                "xi_min {} exceeds xi_max {}",
                self.xi_min, self.xi_max
            ));
        }
        if self.n_theta < MIN_GRID || self.n_phi < MIN_GRID {
            return bad(format!(
                "grid {}x{} below minimum {MIN_GRID}",
                self.n_theta, self.n_phi
            ));
        }
        BeamSpec::new(self.sigma_theta, self.p0)
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        Ok(())
    }

    pub fn beam(&self) -> Result<BeamSpec> {
        BeamSpec::new(self.sigma_theta, self.p0)
    }

    /// Uniform rapidity grid, `xi_steps` points from `xi_min` to `xi_max`.
    pub fn xi_values(&self) -> Vec<f64> {
        if self.xi_steps == 1 {
            return vec![self.xi_min];
        }
        let step = (self.xi_max - self.xi_min) / (self.xi_steps - 1) as f64;
        (0..self.xi_steps)
            .map(|i| {
                if i + 1 == self.xi_steps {
                    self.xi_max
                } else {
                    self.xi_min + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub sigma_theta: f64,
    pub xi: f64,
    pub log_negativity: f64,
    pub trace_residual: f64,
    pub min_eigenvalue: f64,
    pub wall_time_ms: f64,
}

/// Log negativity and sanity columns at one boost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointResult {
    pub log_negativity: f64,
    pub trace_residual: f64,
    pub min_eigenvalue: f64,
}

pub fn evaluate(
    l: &LorentzTransform,
    grid: &QuadratureGrid,
    spec: &BeamSpec,
) -> Result<PointResult> {
    let rho = reduced_density(l, grid, spec)?;
    Ok(PointResult {
        log_negativity: log_negativity(&rho)?,
        trace_residual: (rho.trace().re - 1.0).abs(),
        min_eigenvalue: rho.min_eigenvalue()?,
    })
}

/// Log negativity for a single `(α, σ_θ, ξ)` on an `n_theta × n_phi` grid.
pub fn single_point(
    alpha: f64,
    sigma_theta: f64,
    xi: f64,
    n_theta: usize,
    n_phi: usize,
    p0: f64,
) -> Result<PointResult> {
    let spec = BeamSpec::new(sigma_theta, p0)?;
    let grid = build_grid(&spec, n_theta, n_phi)?;
    evaluate(&make_boost(alpha, xi)?, &grid, &spec)
}

/// Evaluates every rapidity of the sweep; rows come back in `ξ` order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let spec = cfg.beam()?;
    let grid = build_grid(&spec, cfg.n_theta, cfg.n_phi)?;
    cfg.xi_values()
        .into_par_iter()
        .map(|xi| {
            let start = Instant::now();
            let r = evaluate(&make_boost(cfg.alpha, xi)?, &grid, &spec)?;
            Ok(SweepRow {
                alpha: cfg.alpha,
                sigma_theta: cfg.sigma_theta,
                xi,
                log_negativity: r.log_negativity,
                trace_residual: r.trace_residual,
                min_eigenvalue: r.min_eigenvalue,
                wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
            })
        })
        .collect()
}

/// Largest `|LN(n) − LN(2n)|` over the sweep, doubling both grid axes.
pub fn convergence_gap(cfg: &SweepConfig) -> Result<f64> {
    let coarse = run_sweep(cfg)?;
    let fine = run_sweep(&SweepConfig {
        n_theta: 2 * cfg.n_theta,
        n_phi: 2 * cfg.n_phi,
        ..cfg.clone()
    })?;
    Ok(coarse
        .iter()
        .zip(&fine)
        .map(|(a, b)| (a.log_negativity - b.log_negativity).abs())
        .fold(0.0, f64::max))
}

/// Tolerance used by the doubling check for a given spread.
pub fn convergence_tolerance(sigma_theta: f64) -> f64 {
    if sigma_theta <= 1.0 {
        1e-4
    } else {
        1e-3
    }
}

fn preset(alpha: f64, sigma_theta: f64, out: &str) -> SweepConfig {
    let n = if sigma_theta > 1.0 { 96 } else { 64 };
    SweepConfig {
        alpha,
        sigma_theta,
        xi_min: -3.0,
        xi_max: 3.0,
        xi_steps: 61,
        n_theta: n,
        n_phi: n,
        p0: 1.0,
        output_path: out.to_string(),
    }
}

/// Fixed spread `σ_θ = 1`, several boost directions.
pub fn preset_fig2() -> Vec<SweepConfig> {
    [0.0, PI / 8.0, PI / 4.0, 3.0 * PI / 8.0, PI / 2.0]
        .into_iter()
        .map(|a| preset(a, 1.0, "fig2.csv"))
        .collect()
}

/// Fixed boost direction `α = 2π/5`, several spreads.
pub fn preset_fig3() -> Vec<SweepConfig> {
    [0.1, 0.5, 1.0, 1.3]
        .into_iter()
        .map(|s| preset(2.0 * PI / 5.0, s, "fig3.csv"))
        .collect()
}

/// Formats like C's `%.9g`.
pub fn format_sig9(x: f64) -> String {
    const DIGITS: i32 = 9;
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W, timing: bool) -> io::Result<()> {
    let mut text = String::from(CSV_HEADER);
    if timing {
        text.push_str(",wall_time_ms");
    }
    text.push('\n');
    for r in rows {
        let fields = [
            r.alpha,
            r.sigma_theta,
            r.xi,
            r.log_negativity,
            r.trace_residual,
            r.min_eigenvalue,
        ];
        let line: Vec<String> = fields.iter().map(|&v| format_sig9(v)).collect();
        text.push_str(&line.join(","));
        if timing {
            let _ = write!(text, ",{}", format_sig9(r.wall_time_ms));
        }
        text.push('\n');
    }
    out.write_all(text.as_bytes())
}

/// A gnuplot script drawing one curve per contiguous `(α, σ_θ)` block.
pub fn plot_script(csv_path: &str, rows: &[SweepRow], title: &str) -> String {
    let mut blocks: Vec<(f64, f64, usize, usize)> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        match blocks.last_mut() {
            Some(b) if b.0 == r.alpha && b.1 == r.sigma_theta => b.3 = i,
            _ => blocks.push((r.alpha, r.sigma_theta, i, i)),
        }
    }
    let mut s = String::new();
    let _ = writeln!(s, "# gnuplot script for {csv_path}");
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set title '{title}'");
    let _ = writeln!(s, "set xlabel 'rapidity'");
    let _ = writeln!(s, "set ylabel 'log negativity'");
    let _ = writeln!(s, "set key outside");
    let curves: Vec<String> = blocks
        .iter()
        .map(|&(a, sg, lo, hi)| {
            format!(
                "'{csv_path}' skip 1 every ::{lo}::{hi} using 3:4 with lines title 'alpha={} sigma={}'",
                format_sig9(a),
                format_sig9(sg)
            )
        })
        .collect();
    let _ = writeln!(s, "plot {}", curves.join(", \\\n     "));
    s
}
