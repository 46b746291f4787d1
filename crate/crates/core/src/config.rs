//! Plain `key=value` run configuration.

use thiserror::Error;

use crate::poly::DEFAULT_SYMBOLIC_CAP;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected key=value")]
    Syntax { line: usize },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: invalid value {value:?} for {key}")]
    BadValue { line: usize, key: String, value: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    pub cusp_tol: f64,
    pub fd_step: f64,
    pub initial_step: f64,
    pub max_step: f64,
    pub min_step: f64,
    pub max_steps: usize,
    pub symbolic_cap: usize,
    pub enumeration_depth: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            newton_tol: 1e-12,
            newton_max_iter: 50,
            cusp_tol: 1e-9,
            fd_step: 1e-6,
            initial_step: 0.05,
            max_step: 0.2,
            min_step: 1e-10,
            max_steps: 2000,
            symbolic_cap: DEFAULT_SYMBOLIC_CAP,
            enumeration_depth: 4,
        }
    }
}

impl RunConfig {
    /// Parses `key=value` lines over the defaults. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (k, v) = body.split_once('=').ok_or(ConfigError::Syntax { line })?;
            let (k, v) = (k.trim(), v.trim());
            let bad = || ConfigError::BadValue { line, key: k.to_string(), value: v.to_string() };
            let pos_f = || v.parse::<f64>().ok().filter(|x| *x > 0.0 && x.is_finite()).ok_or_else(bad);
            let pos_u = || v.parse::<usize>().ok().filter(|x| *x > 0).ok_or_else(bad);
            match k {
                "newton_tol" => cfg.newton_tol = pos_f()?,
                "newton_max_iter" => cfg.newton_max_iter = pos_u()?,
                "cusp_tol" => cfg.cusp_tol = pos_f()?,
                "fd_step" => cfg.fd_step = pos_f()?,
                "initial_step" => cfg.initial_step = pos_f()?,
                "max_step" => cfg.max_step = pos_f()?,
                "min_step" => cfg.min_step = pos_f()?,
                "max_steps" => cfg.max_steps = pos_u()?,
                "symbolic_cap" => cfg.symbolic_cap = pos_u()?,
                "enumeration_depth" => cfg.enumeration_depth = v.parse().map_err(|_| bad())?,
                _ => return Err(ConfigError::UnknownKey { line, key: k.to_string() }),
            }
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_over_defaults() {
        let c = RunConfig::parse("# tolerances\nnewton_tol = 1e-11\nmax_steps=10\n").unwrap();
        assert_eq!(c.newton_tol, 1e-11);
        assert_eq!(c.max_steps, 10);
        assert_eq!(c.cusp_tol, 1e-9);
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        assert!(matches!(RunConfig::parse("cusp_tol=0"), Err(ConfigError::BadValue { .. })));
        assert!(matches!(RunConfig::parse("foo=1"), Err(ConfigError::UnknownKey { .. })));
    }
}
