use std::collections::BTreeMap;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;

use crate::CliError;

pub const KEYS: &[&str] = &[
    "N", "M", "h", "i", "j", "k", "q", "p", "x", "c", "xi", "tau", "z", "z2", "nome", "g1", "g2", "r", "table", "tol",
    "trunc_theta", "trunc_prod", "trunc_series", "r_max", "samples", "seed",
];

/// Parse "a+bi", "a-bi", "bi", "i", "-i" or a plain real; `j` is accepted
/// in place of `i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse {s:?} as a complex number");
    if t.is_empty() {
        return Err(bad());
    }
    let num = |x: &str| f64::from_str(x).map_err(|_| bad());
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Ok(Complex64::new(num(&t)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |x: &str| match x {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        other => num(other),
    };
    match split {
        Some(k) => Ok(Complex64::new(num(&body[..k])?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// Merged key=value parameters; positional pairs override flags.
#[derive(Debug, Default, Clone)]
pub struct Params {
    map: BTreeMap<String, String>,
}

fn normalise(key: &str) -> String {
    let k = key.trim().replace('-', "_");
    match k.as_str() {
        "n" => "N".into(),
        "m" => "M".into(),
        "rmax" => "r_max".into(),
        _ => k,
    }
}

impl Params {
    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<(), CliError> {
        let k = normalise(key);
        if !KEYS.contains(&k.as_str()) {
            return Err(CliError::Usage(format!("unknown parameter {key:?}")));
        }
        self.map.insert(k, value.into());
        Ok(())
    }

    pub fn set_opt<T: ToString>(&mut self, key: &str, value: &Option<T>) -> Result<(), CliError> {
        match value {
            Some(v) => self.set(key, v.to_string()),
            None => Ok(()),
        }
    }

    pub fn extend_pairs(&mut self, pairs: &[String]) -> Result<(), CliError> {
        for pair in pairs {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("expected key=value, got {pair:?}")))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn has(&self, key: &str) -> bool {
        self.map.contains_key(key)
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.raw(key)
            .map(|v| v.parse::<T>().map_err(|_| CliError::Usage(format!("bad value {v:?} for {key}"))))
            .transpose()
    }

    pub fn get<T: FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        Ok(self.parsed(key)?.unwrap_or(default))
    }

    pub fn require<T: FromStr>(&self, key: &str) -> Result<T, CliError> {
        self.parsed(key)?.ok_or_else(|| CliError::Usage(format!("missing parameter {key}")))
    }

    pub fn complex_opt(&self, key: &str) -> Result<Option<Complex64>, CliError> {
        self.raw(key).map(|v| parse_complex(v).map_err(CliError::Usage)).transpose()
    }

    pub fn complex(&self, key: &str, default: Complex64) -> Result<Complex64, CliError> {
        Ok(self.complex_opt(key)?.unwrap_or(default))
    }

    pub fn require_complex(&self, key: &str) -> Result<Complex64, CliError> {
        self.complex_opt(key)?.ok_or_else(|| CliError::Usage(format!("missing parameter {key}")))
    }

    pub fn rational(&self, key: &str, default: Rational64) -> Result<Rational64, CliError> {
        match self.raw(key) {
            Some(v) => v.parse().map_err(|_| CliError::Usage(format!("bad rational {v:?} for {key}"))),
            None => Ok(default),
        }
    }

    pub fn str_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.raw(key).unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_grammar() {
        assert_eq!(parse_complex("0.5").unwrap(), c(0.5, 0.0));
        assert_eq!(parse_complex("1i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("0.4+0.1i").unwrap(), c(0.4, 0.1));
        assert_eq!(parse_complex("-0.4-0.1j").unwrap(), c(-0.4, -0.1));
        assert_eq!(parse_complex("1e-3-2e-2i").unwrap(), c(1e-3, -2e-2));
        assert_eq!(parse_complex("2e+1").unwrap(), c(20.0, 0.0));
        assert_eq!(parse_complex("0.5 - i").unwrap(), c(0.5, -1.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn pairs_and_keys() {
        let mut p = Params::default();
        p.extend_pairs(&["n=3".into(), "r-max=7".into(), "q=0.4+0.1i".into()]).unwrap();
        assert_eq!(p.get::<usize>("N", 2).unwrap(), 3);
        assert_eq!(p.get::<u32>("r_max", 5).unwrap(), 7);
        assert_eq!(p.complex("q", c(0.5, 0.0)).unwrap(), c(0.4, 0.1));
        assert!(matches!(p.set("bogus", "1"), Err(CliError::Usage(_))));
        assert!(matches!(p.extend_pairs(&["novalue".into()]), Err(CliError::Usage(_))));
        assert!(matches!(p.require::<i64>("h"), Err(CliError::Usage(_))));
    }

    #[test]
    fn rationals() {
        let mut p = Params::default();
        p.set("g1", "1/2").unwrap();
        assert_eq!(p.rational("g1", Rational64::from_integer(0)).unwrap(), Rational64::new(1, 2));
    }
}
