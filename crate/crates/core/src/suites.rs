//! Named identity suites. Each suite samples deterministic points from its
//! own streams, evaluates residuals in parallel and folds them into a
//! [`CheckReport`].
//!
//! Residuals are |a − b| / max(1, |b|) unless a check says otherwise. A
//! sample whose evaluation hits a pole, a branch cut or a singular factor is
//! counted as skipped; any other failure makes the residual infinite.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mode_algebra::{
    bracket, classical_higher_spin_f, critical_k0_table, h_limit_radius, h_limit_table, higher_spin_k0_table,
    higher_spin_radius, pole_ladder, quantum_higher_spin_y, sector_radius, sl2_sector_table, symmetric_mode_coefficients,
    ModeCoeffTable, ModeWindow, QUADRATURE_NODES,
};
use crate::report::{Check, CheckReport};
use crate::rmatrix::{verify_properties, RTensor};
use crate::sampling::Sampler;
use crate::special_fn::{
    big_theta, q_number, tau_n, theta_char, ModularParams, Spectral, ThetaChar, Tolerance, TruncationConfig,
};
use crate::structure_fn::{
    dm_dc_central, dt_dc_central, f_exchange, f_function, f_h_function, jacobi_cyclic_sum, m_function, solve_surface,
    t_function, y_beta_derivative, y_exchange, ClassicalLimitLabel, SurfacePoint,
};

pub const SUITES: [&str; 6] = ["special", "rmatrix", "structure", "classical", "modes", "all"];

/// Oddness and Jacobi checks never use fewer points than this.
pub const MIN_ODDNESS_SAMPLES: usize = 50;
/// Pinned tolerance of the dM/dc finite-difference checks.
pub const DM_DC_TOL: f64 = 1e-6;
/// Pinned relative tolerance of f against the central difference of T.
pub const DT_DC_TOL: f64 = 1e-5;
/// Steps of the central differences in c.
pub const DM_DC_STEPS: (f64, f64) = (1e-3, 5e-4);
pub const DT_DC_STEP: f64 = 1e-4;
/// Step pair for the convergence-order check of the T difference.
pub const ORDER_STEPS: (f64, f64) = (1e-3, 5e-4);
/// Accepted band for the deviation ratio on halving the step.
pub const ORDER_BAND: (f64, f64) = (3.5, 4.5);
/// Step and relative tolerance of the β-derivative oracle for f_h.
pub const BETA_STEP: f64 = 1e-5;
pub const BETA_TOL: f64 = 1e-6;

/// Every input of a suite run.
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub n: usize,
    pub m: i64,
    pub h: i64,
    pub i: usize,
    pub j: usize,
    pub k: u32,
    pub q: Complex64,
    pub p: Complex64,
    pub tol: Tolerance,
    pub tc: TruncationConfig,
    pub samples: usize,
    pub seed: u64,
    pub r_max: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n: 2,
            m: 1,
            h: 1,
            i: 1,
            j: 2,
            k: 0,
            q: Complex64::new(0.5, 0.0),
            p: Complex64::new(0.3, 0.0),
            tol: Tolerance::default(),
            tc: TruncationConfig::default(),
            samples: 20,
            seed: 42,
            r_max: 5,
        }
    }
}

impl SuiteConfig {
    pub fn params(&self) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            p.insert(k.to_string(), v);
        };
        put("N", self.n.to_string());
        put("M", self.m.to_string());
        put("h", self.h.to_string());
        put("i", self.i.to_string());
        put("j", self.j.to_string());
        put("k", self.k.to_string());
        put("q", self.q.to_string());
        put("p", self.p.to_string());
        put("tol_abs", format!("{:e}", self.tol.abs));
        put("tol_rel", format!("{:e}", self.tol.rel));
        put("trunc_theta", self.tc.theta_terms.to_string());
        put("trunc_prod", self.tc.prod_terms.to_string());
        put("trunc_series", self.tc.series_lmax.to_string());
        put("tail_bound", format!("{:e}", self.tc.tail_bound));
        put("pole_threshold", format!("{:e}", self.tc.pole_threshold));
        put("samples", self.samples.to_string());
        put("seed", self.seed.to_string());
        put("r_max", self.r_max.to_string());
        p
    }

    fn modular(&self) -> Result<ModularParams> {
        self.tc.validate()?;
        if self.samples == 0 {
            return Err(Error::Range("samples must be at least 1".into()));
        }
        ModularParams::new(self.n, self.q, self.p)
    }

    fn points(&self, mp: &ModularParams, stream: &str, count: usize) -> Vec<Spectral> {
        let mut s = Sampler::new(self.seed, stream);
        (0..count).map(|_| s.structure_point(mp, 0.4)).collect()
    }

    fn odd_count(&self) -> usize {
        self.samples.max(MIN_ODDNESS_SAMPLES)
    }

    fn h_odd(&self) -> i64 {
        if self.h % 2 != 0 {
            self.h
        } else {
            self.h + 1
        }
    }

    fn h_even(&self) -> i64 {
        if self.h % 2 == 0 {
            self.h
        } else {
            self.h + 1
        }
    }
}

/// Run a suite by name.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<CheckReport> {
    match name {
        "special" => special_suite(cfg),
        "rmatrix" => rmatrix_suite(cfg),
        "structure" => structure_suite(cfg),
        "classical" => classical_suite(cfg),
        "modes" => modes_suite(cfg),
        "all" => all_suite(cfg),
        other => Err(Error::Range(format!("unknown suite {other:?}; expected one of {SUITES:?}"))),
    }
}

fn rel_diff(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn skip_or_fail(e: Error) -> Option<f64> {
    match e {
        Error::Pole(_) | Error::Branch(_) | Error::Singular { .. } => None,
        _ => Some(f64::INFINITY),
    }
}

trait Lift {
    fn into_sample(self) -> Option<f64>;
}

impl Lift for Result<f64> {
    fn into_sample(self) -> Option<f64> {
        match self {
            Ok(v) => Some(v),
            Err(e) => skip_or_fail(e),
        }
    }
}

/// Residuals of `f` over `points`, evaluated in parallel, order preserved.
fn sampled<T, F>(points: &[T], f: F) -> Vec<Option<f64>>
where
    T: Sync,
    F: Fn(&T) -> Result<f64> + Sync,
{
    points.par_iter().map(|p| f(p).into_sample()).collect()
}

fn max_of(rows: &[Option<f64>]) -> Option<f64> {
    let mut best: Option<f64> = None;
    for r in rows.iter().flatten() {
        best = Some(best.map_or(*r, |b: f64| b.max(*r)));
    }
    best
}

// special functions

pub fn special_suite(cfg: &SuiteConfig) -> Result<CheckReport> {
    let mp = cfg.modular()?;
    let tc = &cfg.tc;
    let tol = cfg.tol.abs;
    let tau = mp.tau();
    let mut checks = Vec::new();

    let mut s = Sampler::new(cfg.seed, "special.theta");
    let xis: Vec<Complex64> = (0..cfg.odd_count())
        .map(|_| Complex64::new(s.uniform(-1.0, 1.0), s.uniform(-0.3, 0.3)))
        .collect();
    let half = ThetaChar::half_half();
    checks.push(Check::from_residuals(
        "theta.odd",
        tol,
        sampled(&xis, |&xi| {
            let a = theta_char(half, xi, tau, tc)?;
            let b = theta_char(half, -xi, tau, tc)?;
            Ok((a + b).norm() / a.norm().max(1.0))
        }),
    ));

    let mut s = Sampler::new(cfg.seed, "special.theta_char");
    let chars: Vec<(ThetaChar, Complex64)> = (0..cfg.samples)
        .map(|_| {
            let a1 = s.uniform(0.0, mp.n() as f64) as usize;
            let a2 = s.uniform(0.0, mp.n() as f64) as usize;
            (ThetaChar::vertex(a1, a2, mp.n()), Complex64::new(s.uniform(-1.0, 1.0), s.uniform(-0.3, 0.3)))
        })
        .collect();
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let pi_i = Complex64::new(0.0, std::f64::consts::PI);
    checks.push(Check::from_residuals(
        "theta.shift_one",
        tol,
        sampled(&chars, |&(ch, xi)| {
            let (g1, _) = ch.as_f64();
            let lhs = theta_char(ch, xi + 1.0, tau, tc)?;
            let rhs = (two_pi_i * g1).exp() * theta_char(ch, xi, tau, tc)?;
            Ok(rel_diff(lhs, rhs))
        }),
    ));
    checks.push(Check::from_residuals(
        "theta.shift_tau",
        tol,
        sampled(&chars, |&(ch, xi)| {
            let (_, g2) = ch.as_f64();
            let lhs = theta_char(ch, xi + tau, tau, tc)?;
            let rhs = (-pi_i * tau - two_pi_i * (xi + g2)).exp() * theta_char(ch, xi, tau, tc)?;
            Ok(rel_diff(lhs, rhs))
        }),
    ));

    let nome = mp.nome();
    let mut s = Sampler::new(cfg.seed, "special.big_theta");
    let zs: Vec<Complex64> = (0..cfg.odd_count())
        .map(|_| Complex64::from_polar(s.uniform(0.5, 1.5), s.uniform(-3.0, 3.0)))
        .collect();
    checks.push(Check::from_residuals(
        "big_theta.functional",
        tol,
        sampled(&zs, |&z| {
            let a = big_theta(nome * z, nome, tc)?;
            let b = -big_theta(z, nome, tc)? / z;
            Ok(rel_diff(a, b))
        }),
    ));

    let mut s = Sampler::new(cfg.seed, "special.tau");
    let pts: Vec<Spectral> = (0..cfg.samples).map(|_| s.spectral(&mp, 0.5, 0.9)).collect();
    let n = Complex64::new(mp.n() as f64, 0.0);
    checks.push(Check::from_residuals(
        "tau.inversion",
        tol,
        sampled(&pts, |&z| Ok((tau_n(z, &mp, tc)? * tau_n(z.inv(), &mp, tc)? - 1.0).norm())),
    ));
    checks.push(Check::from_residuals(
        "tau.periodicity",
        tol,
        sampled(&pts, |&z| Ok(rel_diff(tau_n(z.q_shift(&mp, n), &mp, tc)?, tau_n(z, &mp, tc)?))),
    ));

    let mut odd = 0.0f64;
    for r in 1..=50 {
        odd = odd.max((q_number(-r, mp.q())? + q_number(r, mp.q())?).norm());
    }
    checks.push(Check::single("q_number.odd", tol, odd));

    let a: Vec<Complex64> = xis.iter().map(|&xi| theta_char(half, xi, tau, tc)).collect::<Result<_>>()?;
    let b: Vec<Complex64> = xis.iter().map(|&xi| theta_char(half, xi, tau, tc)).collect::<Result<_>>()?;
    checks.push(Check::flag("determinism", a == b));

    Ok(CheckReport::new("special", cfg.params(), checks))
}

// R-matrix

pub fn rmatrix_suite(cfg: &SuiteConfig) -> Result<CheckReport> {
    let mp = cfg.modular()?;
    let r = verify_properties(&mp, &cfg.tc, &cfg.tol, cfg.samples, cfg.seed);
    Ok(CheckReport::new("rmatrix", cfg.params(), r.checks))
}

// critical level and exchange functions

pub fn structure_suite(cfg: &SuiteConfig) -> Result<CheckReport> {
    let mp = cfg.modular()?;
    let crit = mp.critical();
    let tc = &cfg.tc;
    let tol = cfg.tol.abs;
    let mut checks = Vec::new();

    let pts = cfg.points(&mp, "structure.critical", cfg.samples);
    checks.push(Check::from_residuals(
        "t.critical",
        tol,
        sampled(&pts, |&x| Ok((t_function(x, &crit, tc)? - 1.0).norm())),
    ));
    checks.push(Check::from_residuals(
        "m.critical",
        tol,
        sampled(&pts, |&x| Ok(m_function(x, &crit, tc)?.max_abs_diff(&RTensor::identity(mp.n())))),
    ));

    let zero = RTensor::zeros(mp.n());
    let dm_pts = cfg.points(&mp, "structure.dm_dc", cfg.samples);
    let dm = |step: f64| sampled(&dm_pts, |&x| Ok(dm_dc_central(x, &mp, step, tc)?.max_abs_diff(&zero)));
    let (coarse, fine) = (dm(DM_DC_STEPS.0), dm(DM_DC_STEPS.1));
    let decreasing = match (max_of(&coarse), max_of(&fine)) {
        (Some(a), Some(b)) => b < a,
        _ => false,
    };
    checks.push(Check::from_residuals("m.dc_step_1e-3", DM_DC_TOL, coarse));
    checks.push(Check::from_residuals("m.dc_step_5e-4", DM_DC_TOL, fine));
    checks.push(Check::flag("m.dc_decreasing", decreasing));

    let fd_pts = cfg.points(&mp, "structure.dt_dc", cfg.samples);
    checks.push(Check::from_residuals(
        "f.dt_dc",
        DT_DC_TOL,
        sampled(&fd_pts, |&x| {
            let f = f_function(x.z(), &mp, tc)?;
            Ok((f - dt_dc_central(x, &mp, DT_DC_STEP, tc)?).norm() / f.norm())
        }),
    ));
    // deviation ratio on halving, reported as distance from 4
    let band_half = 0.5 * (ORDER_BAND.1 - ORDER_BAND.0);
    let centre = 0.5 * (ORDER_BAND.1 + ORDER_BAND.0);
    let ratios = sampled(&fd_pts, |&x| {
        let f = f_function(x.z(), &mp, tc)?;
        let a = (f - dt_dc_central(x, &mp, ORDER_STEPS.0, tc)?).norm();
        let b = (f - dt_dc_central(x, &mp, ORDER_STEPS.1, tc)?).norm();
        Ok((a / b - centre).abs())
    });
    checks.push(Check::from_residuals("f.dt_dc_order", band_half, ratios));

    let odd_pts = cfg.points(&mp, "structure.f_odd", cfg.odd_count());
    checks.push(Check::from_residuals(
        "f.odd",
        tol,
        sampled(&odd_pts, |&x| {
            let x = x.z();
            let a = f_function(x, &mp, tc)?;
            Ok((a + f_function(x.inv(), &mp, tc)?).norm() / a.norm().max(1.0))
        }),
    ));
    let triples = triples(cfg, &mp, "structure.f_jacobi");
    checks.push(Check::from_residuals(
        "f.jacobi",
        tol,
        sampled(&triples, |&(z, w, u)| jacobi_residual(|v| f_function(v, &mp, tc), z, w, u)),
    ));
    let other_p = mp.with_p(mp.p() * 0.5)?;
    checks.push(Check::from_residuals(
        "f.p_independent",
        tol,
        sampled(&pts, |&x| Ok((f_function(x.z(), &mp, tc)? - f_function(x.z(), &other_p, tc)?).norm())),
    ));

    let (n, m, q, p) = (mp.n(), cfg.m, mp.q(), mp.p());
    let y = |x: Complex64| y_exchange(n, m, x, q, p, tc);
    let ypts = cfg.points(&mp, "structure.y", cfg.samples);
    checks.push(Check::from_residuals(
        "y.periodicity",
        tol,
        sampled(&ypts, |&x| Ok(rel_diff(y(x.z() * q.powi(n as i32))?, y(x.z())?))),
    ));
    checks.push(Check::from_residuals(
        "y.product",
        tol,
        sampled(&ypts, |&x| {
            let mut prod = Complex64::new(1.0, 0.0);
            for j in 0..n {
                prod *= y(x.z() * q.powi(j as i32))?;
            }
            Ok((prod - 1.0).norm())
        }),
    ));
    checks.push(Check::from_residuals(
        "y.inversion",
        tol,
        sampled(&ypts, |&x| Ok((y(x.z())? * y(x.z().inv())? - 1.0).norm())),
    ));

    let sp = solve_surface(n, m, q, p)?;
    let spp = sp.params()?;
    let qc = (sp.c * q.ln()).exp();
    checks.push(Check::from_residuals(
        "y.exchange_ratio",
        tol,
        sampled(&ypts, |&x| {
            let x = x.z();
            let ratio = f_exchange(m, qc * x, &spp, tc)? / f_exchange(m, -p.sqrt() * x, &spp, tc)?;
            Ok(rel_diff(ratio, y(x)?))
        }),
    ));

    let mut s = Sampler::new(cfg.seed, "structure.surface");
    let qp: Vec<(Complex64, Complex64)> = (0..cfg.samples)
        .map(|_| {
            let q = Complex64::from_polar(s.uniform(0.2, 0.8), s.uniform(-1.0, 1.0));
            let p = Complex64::from_polar(s.uniform(0.1, 0.8), s.uniform(-3.0, 3.0));
            (q, p)
        })
        .collect();
    checks.push(Check::from_residuals(
        "surface.relation",
        1e-12,
        sampled(&qp, |&(q, p)| Ok(solve_surface(n, m, q, p)?.relation_residual())),
    ));

    Ok(CheckReport::new("structure", cfg.params(), checks))
}

fn triples(cfg: &SuiteConfig, mp: &ModularParams, stream: &str) -> Vec<(Complex64, Complex64, Complex64)> {
    let pts = cfg.points(mp, stream, 3 * cfg.odd_count());
    pts.chunks(3).map(|c| (c[0].z(), c[1].z(), c[2].z())).collect()
}

/// |Jacobi sum| relative to the size of its largest product term.
fn jacobi_residual<F>(phi: F, z: Complex64, w: Complex64, u: Complex64) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64> + Copy,
{
    let s = jacobi_cyclic_sum(phi, z, w, u)?;
    let scale = [u / w, w / z, u / z].iter().map(|&v| phi(v).map(|x| x.norm())).collect::<Result<Vec<_>>>()?;
    let big = scale.iter().fold(1.0f64, |a, &b| a.max(b));
    Ok(s.norm() / (big * big))
}

// classical limits p = q^{Nh}

pub fn classical_suite(cfg: &SuiteConfig) -> Result<CheckReport> {
    let mp = cfg.modular()?;
    let tc = &cfg.tc;
    let tol = cfg.tol.abs;
    let (n, m, q) = (mp.n(), cfg.m, mp.q());
    ClassicalLimitLabel::new(cfg.h, m)?;
    let mut checks = Vec::new();

    let pts = cfg.points(&mp, "classical.degenerate", cfg.samples);
    for h in [1i64, 2, -1] {
        let p = q.powi((n as i64 * h) as i32);
        checks.push(Check::from_residuals(
            format!("y.degenerate_h{h}"),
            tol,
            sampled(&pts, |&x| Ok((y_exchange(n, m, x.z(), q, p, tc)? - 1.0).norm())),
        ));
    }

    for (parity, h) in [("odd", cfg.h_odd()), ("even", cfg.h_even())] {
        let fh = move |x: Complex64| f_h_function(x, n, m, h, q, tc);
        let odd_pts = cfg.points(&mp, &format!("classical.fh_odd_{parity}"), cfg.odd_count());
        checks.push(Check::from_residuals(
            format!("f_h.odd_{parity}"),
            tol,
            sampled(&odd_pts, |&x| {
                let a = fh(x.z())?;
                Ok((a + fh(x.z().inv())?).norm() / a.norm().max(1.0))
            }),
        ));
        let tr = triples(cfg, &mp, &format!("classical.fh_jacobi_{parity}"));
        checks.push(Check::from_residuals(
            format!("f_h.jacobi_{parity}"),
            tol,
            sampled(&tr, |&(z, w, u)| jacobi_residual(fh, z, w, u)),
        ));
        let beta_pts = cfg.points(&mp, &format!("classical.beta_{parity}"), cfg.samples);
        checks.push(Check::from_residuals(
            format!("f_h.beta_limit_{parity}"),
            BETA_TOL,
            sampled(&beta_pts, |&x| {
                let a = fh(x.z())?;
                let d = y_beta_derivative(n, m, h, x.z(), q, BETA_STEP, tc)?;
                Ok((a - d).norm() / a.norm().max(1.0))
            }),
        ));
    }

    let h = cfg.h_even();
    let nf = n as f64;
    let mf = m as f64;
    let expect = Complex64::new(-nf * nf * mf * (nf * mf + 1.0) * h as f64 / 2.0, 0.0);
    let ratio_pts = cfg.points(&mp, "classical.even_ratio", cfg.samples);
    checks.push(Check::from_residuals(
        "f_h.even_ratio",
        tol,
        sampled(&ratio_pts, |&x| {
            let r = f_h_function(x.z(), n, m, h, q, tc)? / f_function(x.z(), &mp, tc)?;
            Ok((r - expect).norm() / expect.norm())
        }),
    ));

    Ok(CheckReport::new("classical", cfg.params(), checks))
}

// mode tables

pub fn modes_suite(cfg: &SuiteConfig) -> Result<CheckReport> {
    let mp = cfg.modular()?;
    let tc = &cfg.tc;
    let tol = cfg.tol.abs;
    let (n, q, r) = (mp.n(), mp.q(), cfg.r_max);
    let (i, j) = spins(cfg);
    let mut checks = Vec::new();

    let crit = critical_k0_table(n, q, r)?;
    let tables: Vec<ModeCoeffTable> = vec![
        crit.clone(),
        sl2_sector_table(cfg.k, q, r)?,
        higher_spin_k0_table(i, j, n, q, r)?,
        higher_spin_k0_table(i, n, n, q, r)?,
        h_limit_table(n, cfg.m, cfg.h_odd(), q, r)?,
        h_limit_table(n, cfg.m, cfg.h_even(), q, r)?,
    ];
    let c0 = tables.iter().map(|t| t.get(0).norm()).fold(0.0, f64::max);
    checks.push(Check::single("table.c0", 1e-12, c0));
    let odd = tables.iter().map(|t| t.oddness_residual()).fold(0.0, f64::max);
    checks.push(Check::single("table.odd", 1e-12, odd));
    let crit2 = critical_k0_table(2, q, r)?;
    checks.push(Check::single(
        "table.sl2_k0_vs_critical",
        1e-12,
        sl2_sector_table(0, q, r)?.max_abs_diff(&crit2) / crit2.scale().max(1.0),
    ));
    checks.push(Check::single("table.hs_11_vs_critical", 1e-12, higher_spin_k0_table(1, 1, n, q, r)?.max_abs_diff(&crit)));
    checks.push(Check::single("table.hs_iN_zero", 1e-12, tables[3].scale()));
    checks.push(Check::single("table.h_even_vs_critical", 1e-12, tables[5].max_abs_diff(&crit)));

    let window = ModeWindow::default();
    let mut anti = 0.0f64;
    for t in &tables {
        for a in -5..=5 {
            for b in -5..=5 {
                let s = bracket(t, a, b, window)?.add(&bracket(t, b, a, window)?);
                anti = anti.max(s.max_abs());
            }
        }
    }
    checks.push(Check::single("bracket.antisymmetry", 1e-12, anti));

    let ladder = pole_ladder(n, 4 * n as u64 + 4)?;
    let quad = |f: &(dyn Fn(Complex64) -> Result<Complex64> + Sync), radius: f64, table: &ModeCoeffTable, scale: Complex64| -> Option<f64> {
        let got = symmetric_mode_coefficients(f, radius, r, QUADRATURE_NODES);
        got.map(|got| {
            got.iter()
                .map(|(k, v)| (v - scale * table.get(*k)).norm() / table.scale().max(1.0))
                .fold(0.0, f64::max)
        })
        .into_sample()
    };
    let f = |x: Complex64| f_function(x, &mp, tc);
    let one = Complex64::new(1.0, 0.0);
    checks.push(Check::from_residuals(
        "quadrature.critical_k0",
        tol,
        [quad(&f, sector_radius(&ladder.sector(0)?, q), &crit, one)],
    ));
    if n == 2 {
        let mut rows = Vec::new();
        for k in 0..4u32 {
            rows.push(quad(&f, sector_radius(&ladder.sector(k as usize)?, q), &sl2_sector_table(k, q, r)?, one));
        }
        checks.push(Check::from_residuals("quadrature.sl2_sectors", tol, rows));
    }
    let hs = |x: Complex64| classical_higher_spin_f(i, j, x, &mp, tc);
    checks.push(Check::from_residuals(
        "quadrature.higher_spin",
        tol,
        [quad(&hs, higher_spin_radius(n, i, j, q)?, &tables[2], one)],
    ));
    let mut rows = Vec::new();
    for h in [cfg.h_odd(), cfg.h_even()] {
        let label = ClassicalLimitLabel::new(h, cfg.m)?;
        let fh = |x: Complex64| f_h_function(x, n, cfg.m, h, q, tc);
        let scale = label.prefactor(n, q) / (-2.0 * q.ln());
        rows.push(quad(&fh, h_limit_radius(n, h, q)?, &h_limit_table(n, cfg.m, h, q, r)?, scale));
    }
    checks.push(Check::from_residuals("quadrature.h_limit", tol, rows));

    let pts = cfg.points(&mp, "modes.higher_spin", cfg.samples);
    let swap = sampled(&pts, |&x| {
        let a = classical_higher_spin_f(i, j, x.z().inv(), &mp, tc)?;
        let b = classical_higher_spin_f(j, i, x.z(), &mp, tc)?;
        Ok((a + b).norm() / b.norm().max(1.0))
    });
    checks.push(Check::from_residuals("higher_spin.swap_odd", tol, swap));

    let sp = solve_surface(n, cfg.m, q, mp.p())?;
    let central = sampled(&pts, |&x| {
        let mut worst = 0.0f64;
        for a in 1..n {
            worst = worst.max((quantum_higher_spin_y(a, n, x.z(), &sp, tc)? - 1.0).norm());
        }
        Ok(worst)
    });
    checks.push(Check::from_residuals("higher_spin.s_n_central", tol, central));
    let double = sampled(&pts, |&x| {
        let a = quantum_higher_spin_y(i, j, x.z(), &sp, tc)?;
        let b = quantum_higher_spin_y(j, i, x.z().inv(), &sp, tc)?;
        Ok((a * b - 1.0).norm())
    });
    checks.push(Check::from_residuals("higher_spin.double_exchange", tol, double));
    let classical = SurfacePoint { p: q.powi((n as i64 * cfg.h) as i32), ..sp };
    let degenerate = sampled(&pts, |&x| Ok((quantum_higher_spin_y(i, j, x.z(), &classical, tc)? - 1.0).norm()));
    checks.push(Check::from_residuals("higher_spin.degenerate", tol, degenerate));

    Ok(CheckReport::new("modes", cfg.params(), checks))
}

/// The configured spins, clamped into 1..=N.
fn spins(cfg: &SuiteConfig) -> (usize, usize) {
    (cfg.i.clamp(1, cfg.n), cfg.j.clamp(1, cfg.n))
}

pub fn all_suite(cfg: &SuiteConfig) -> Result<CheckReport> {
    let parts = vec![
        special_suite(cfg)?,
        rmatrix_suite(cfg)?,
        structure_suite(cfg)?,
        classical_suite(cfg)?,
        modes_suite(cfg)?,
    ];
    Ok(CheckReport::merge("all", cfg.params(), parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(run_suite("nope", &SuiteConfig::default()), Err(Error::Range(_))));
    }

    #[test]
    fn params_echo_every_input() {
        let p = SuiteConfig::default().params();
        for key in ["N", "M", "q", "p", "tol_abs", "samples", "seed", "trunc_theta", "r_max"] {
            assert!(p.contains_key(key), "{key}");
        }
    }

    #[test]
    fn special_suite_passes_at_defaults() {
        let r = special_suite(&SuiteConfig::default()).unwrap();
        assert!(r.overall_pass, "{}", r.to_text());
    }
}
