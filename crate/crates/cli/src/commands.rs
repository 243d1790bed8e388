use std::fmt::Write as _;

use ellw_core::mode_algebra::{
    classical_higher_spin_f, critical_k0_table, h_limit_table, higher_spin_k0_table, quantum_higher_spin_y,
    sl2_sector_table, ModeCoeffTable,
};
use ellw_core::special_fn::{
    big_theta, kappa_inv, q_number, tau_n, theta_char, ModularParams, Spectral, ThetaChar, Tolerance, TruncationConfig,
};
use ellw_core::structure_fn::{f_exchange, f_function, f_h_function, solve_surface, t_function, y_exchange};
use ellw_core::suites::{run_suite, SuiteConfig, SUITES};
use ellw_core::report::CheckReport;
use num_complex::Complex64;
use num_rational::Rational64;
use serde_json::json;

use crate::format::{fmt_complex, fmt_csv};
use crate::params::Params;
use crate::{CliError, Format};

pub const FUNCTIONS: &[&str] = &[
    "theta", "big-theta", "tau", "kappa-inv", "T", "f", "F", "Y", "fh", "mode-coeff", "hs-f", "hs-y", "q-number",
];
pub const TABLES: &[&str] = &["critical-k0", "sl2-sector", "higher-spin-k0", "h-limit"];

const DEFAULT_Q: Complex64 = Complex64::new(0.5, 0.0);
const DEFAULT_P: Complex64 = Complex64::new(0.3, 0.0);

fn truncation(p: &Params) -> Result<TruncationConfig, CliError> {
    let d = TruncationConfig::default();
    let tc = TruncationConfig {
        theta_terms: p.get("trunc_theta", d.theta_terms)?,
        prod_terms: p.get("trunc_prod", d.prod_terms)?,
        series_lmax: p.get("trunc_series", d.series_lmax)?,
        ..d
    };
    tc.validate()?;
    Ok(tc)
}

fn modular(p: &Params) -> Result<ModularParams, CliError> {
    let mp = ModularParams::new(p.get("N", 2)?, p.complex("q", DEFAULT_Q)?, p.complex("p", DEFAULT_P)?)?;
    Ok(match p.complex_opt("c")? {
        Some(c) => mp.with_c(c),
        None => mp,
    })
}

/// Spectral point from xi= or, failing that, x= on the principal branch.
fn spectral(p: &Params) -> Result<Spectral, CliError> {
    match p.complex_opt("xi")? {
        Some(xi) => Ok(Spectral::from_xi(xi)),
        None => Ok(Spectral::from_z(p.require_complex("x")?)?),
    }
}

pub fn eval(function: &str, p: &Params) -> Result<Complex64, CliError> {
    let tc = truncation(p)?;
    let v = match function {
        "theta" => {
            let half = Rational64::new(1, 2);
            let ch = ThetaChar::new(p.rational("g1", half)?, p.rational("g2", half)?);
            let tau = match p.complex_opt("tau")? {
                Some(t) => t,
                None => modular(p)?.tau(),
            };
            theta_char(ch, p.require_complex("xi")?, tau, &tc)?
        }
        "big-theta" => {
            let nome = match p.complex_opt("nome")? {
                Some(b) => b,
                None => modular(p)?.nome(),
            };
            big_theta(p.require_complex("z")?, nome, &tc)?
        }
        "tau" => tau_n(spectral(p)?, &modular(p)?, &tc)?,
        "kappa-inv" => {
            let z2 = match p.complex_opt("z2")? {
                Some(z2) => z2,
                None => p.require_complex("x")?.powi(2),
            };
            kappa_inv(z2, &modular(p)?, &tc)?
        }
        "T" => {
            let mp = modular(p)?;
            let mp = if p.has("c") { mp } else { mp.critical() };
            t_function(spectral(p)?, &mp, &tc)?
        }
        "f" => f_function(p.require_complex("x")?, &modular(p)?, &tc)?,
        "F" => f_exchange(p.get("M", 1)?, p.require_complex("x")?, &modular(p)?, &tc)?,
        "Y" => {
            let mp = modular(p)?;
            y_exchange(mp.n(), p.get("M", 1)?, p.require_complex("x")?, mp.q(), mp.p(), &tc)?
        }
        "fh" => {
            let q = p.complex("q", DEFAULT_Q)?;
            f_h_function(p.require_complex("x")?, p.get("N", 2)?, p.get("M", 1)?, p.get("h", 1)?, q, &tc)?
        }
        "mode-coeff" => {
            let r: i64 = p.require("r")?;
            let t = build_table(p.str_or("table", "critical-k0"), p, r.unsigned_abs() as u32)?;
            t.get(r)
        }
        "hs-f" => classical_higher_spin_f(p.get("i", 1)?, p.get("j", 1)?, p.require_complex("x")?, &modular(p)?, &tc)?,
        "hs-y" => {
            let mp = modular(p)?;
            let sp = solve_surface(mp.n(), p.get("M", 1)?, mp.q(), mp.p())?;
            quantum_higher_spin_y(p.get("i", 1)?, p.get("j", 1)?, p.require_complex("x")?, &sp, &tc)?
        }
        "q-number" => q_number(p.require("r")?, p.complex("q", DEFAULT_Q)?)?,
        other => return Err(CliError::Usage(format!("unknown function {other:?}; expected one of {FUNCTIONS:?}"))),
    };
    Ok(v)
}

pub fn render_value(function: &str, v: Complex64, format: Format) -> String {
    match format {
        Format::Text => format!("{}\n", fmt_complex(v)),
        Format::Csv => format!("re,im\n{},{}\n", fmt_csv(v.re), fmt_csv(v.im)),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json!({ "function": function, "re": v.re, "im": v.im }))
                .expect("value serialises");
            s.push('\n');
            s
        }
    }
}

pub fn suite_config(p: &Params) -> Result<SuiteConfig, CliError> {
    let d = SuiteConfig::default();
    let tol: f64 = p.get("tol", d.tol.abs)?;
    Ok(SuiteConfig {
        n: p.get("N", d.n)?,
        m: p.get("M", d.m)?,
        h: p.get("h", d.h)?,
        i: p.get("i", d.i)?,
        j: p.get("j", d.j)?,
        k: p.get("k", d.k)?,
        q: p.complex("q", d.q)?,
        p: p.complex("p", d.p)?,
        tol: Tolerance::new(tol, tol)?,
        tc: truncation(p)?,
        samples: p.get("samples", d.samples)?,
        seed: p.get("seed", d.seed)?,
        r_max: p.get("r_max", d.r_max)?,
    })
}

pub fn verify(suite: &str, p: &Params) -> Result<CheckReport, CliError> {
    if !SUITES.contains(&suite) {
        return Err(CliError::Usage(format!("unknown suite {suite:?}; expected one of {SUITES:?}")));
    }
    Ok(run_suite(suite, &suite_config(p)?)?)
}

pub fn render_report(r: &CheckReport, format: Format) -> String {
    match format {
        Format::Json => r.to_json(),
        Format::Csv => r.to_csv(),
        Format::Text => r.to_text(),
    }
}

pub fn build_table(name: &str, p: &Params, r_max: u32) -> Result<ModeCoeffTable, CliError> {
    let q = p.complex("q", DEFAULT_Q)?;
    let n: usize = p.get("N", 2)?;
    let t = match name {
        "critical-k0" => critical_k0_table(n, q, r_max)?,
        "sl2-sector" => sl2_sector_table(p.get("k", 0)?, q, r_max)?,
        "higher-spin-k0" => higher_spin_k0_table(p.get("i", 1)?, p.get("j", 1)?, n, q, r_max)?,
        "h-limit" => h_limit_table(n, p.get("M", 1)?, p.get("h", 1)?, q, r_max)?,
        other => return Err(CliError::Usage(format!("unknown table {other:?}; expected one of {TABLES:?}"))),
    };
    Ok(t)
}

pub fn render_table(t: &ModeCoeffTable, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("r,re,im\n");
            for (r, v) in &t.coeffs {
                let _ = writeln!(out, "{r},{},{}", fmt_csv(v.re), fmt_csv(v.im));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (r, v) in &t.coeffs {
                let _ = writeln!(out, "{r:>4}  {}", fmt_complex(*v));
            }
            out
        }
        Format::Json => {
            let rows: Vec<_> = t.coeffs.iter().map(|(r, v)| json!({ "r": r, "re": v.re, "im": v.im })).collect();
            let doc = json!({ "label": t.label, "N": t.n, "q": { "re": t.q.re, "im": t.q.im }, "rows": rows });
            let mut s = serde_json::to_string_pretty(&doc).expect("table serialises");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(pairs: &[&str]) -> Params {
        let mut p = Params::default();
        p.extend_pairs(&pairs.iter().map(|s| s.to_string()).collect::<Vec<_>>()).unwrap();
        p
    }

    #[test]
    fn q_number_example() {
        let v = eval("q-number", &params(&["r=2", "q=2"])).unwrap();
        assert_eq!(render_value("q-number", v, Format::Text), "2.5+0i\n");
    }

    #[test]
    fn odd_theta_at_zero() {
        let v = eval("theta", &params(&["g1=1/2", "g2=1/2", "xi=0", "tau=1i"])).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn y_on_classical_point() {
        let v = eval("Y", &params(&["N=2", "M=1", "q=0.5", "p=0.0625", "x=0.7"])).unwrap();
        assert!((v - 1.0).norm() < 1e-8);
    }

    #[test]
    fn every_function_evaluates_at_defaults() {
        let p = params(&["x=0.3+0.8i", "xi=0.31", "z=0.7", "r=2"]);
        for f in FUNCTIONS {
            let v = eval(f, &p).unwrap_or_else(|e| panic!("{f}: {e}"));
            assert!(v.is_finite(), "{f}");
        }
    }

    #[test]
    fn unknown_names_are_usage_errors() {
        assert!(matches!(eval("nope", &Params::default()), Err(CliError::Usage(_))));
        assert!(matches!(verify("nope", &Params::default()), Err(CliError::Usage(_))));
        assert!(matches!(build_table("nope", &Params::default(), 3), Err(CliError::Usage(_))));
        assert!(matches!(eval("f", &Params::default()), Err(CliError::Usage(_))));
    }

    #[test]
    fn pole_is_numeric_error() {
        let e = eval("big-theta", &params(&["z=1"]));
        assert!(e.map(|v| v.norm() < 1e-15).unwrap_or(false));
        let e = eval("f", &params(&["x=1"]));
        assert!(matches!(e, Err(CliError::Numeric(_))));
    }

    #[test]
    fn csv_table_shape() {
        let t = build_table("critical-k0", &params(&["N=2", "q=0.5"]), 5).unwrap();
        let csv = render_table(&t, Format::Csv);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "r,re,im");
        assert_eq!(lines.len(), 12);
        assert!(lines[6].starts_with("0,0.0000000000000000e0,0.0000000000000000e0"));
    }
}
