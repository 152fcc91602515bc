//! Flat `key = value` job files.
//!
//! ```text
//! # Example job
//! field = Q
//! vars = x, y
//! gen = x^5
//! gen = y^5
//! qmax = 5
//! ```

use std::path::Path;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub gens: Vec<String>,
    pub qmax: u32,
    pub window: usize,
    pub fat_points: bool,
    pub reg_phi_star: Option<i64>,
    pub budget_degree: Option<i64>,
    pub budget_size: Option<usize>,
    pub budget_seconds: Option<u64>,
}

fn err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Job { line, message: message.into() }
}

fn number<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> CliResult<T> {
    v.parse().map_err(|_| err(line, format!("`{key}` expects an integer, got `{v}`")))
}

impl JobSpec {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut field = None;
        let mut vars = None;
        let mut job = JobSpec {
            field: FieldSpec::Rationals,
            vars: Vec::new(),
            gens: Vec::new(),
            qmax: 5,
            window: 3,
            fat_points: false,
            reg_phi_star: None,
            budget_degree: None,
            budget_size: None,
            budget_seconds: None,
        };
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| err(line, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "field" => {
                    let mut parts = value.split_whitespace();
                    field = Some(match (parts.next(), parts.next(), parts.next()) {
                        (Some("Q"), None, _) => FieldSpec::Rationals,
                        (Some("Fp"), Some(p), None) => FieldSpec::Prime(number(line, key, p)?),
                        _ => return Err(err(line, format!("unknown field `{value}`; use `Q` or `Fp <p>`"))),
                    });
                }
                "vars" => {
                    let v: Vec<String> = value.split(',').map(|s| s.trim().to_string()).collect();
                    if v.iter().any(|s| s.is_empty()) {
                        return Err(err(line, "empty variable name"));
                    }
                    vars = Some(v);
                }
                "gen" => {
                    if value.is_empty() {
                        return Err(err(line, "empty generator"));
                    }
                    job.gens.push(value.to_string());
                }
                "qmax" => job.qmax = number(line, key, value)?,
                "window" => job.window = number(line, key, value)?,
                "fat_points" => {
                    job.fat_points = match value {
                        "true" => true,
                        "false" => false,
                        _ => return Err(err(line, "`fat_points` expects true or false")),
                    }
                }
                "reg_phi_star" => job.reg_phi_star = Some(number(line, key, value)?),
                "budget_degree" => job.budget_degree = Some(number(line, key, value)?),
                "budget_size" => job.budget_size = Some(number(line, key, value)?),
                "budget_seconds" => job.budget_seconds = Some(number(line, key, value)?),
                _ => return Err(err(line, format!("unknown key `{key}`"))),
            }
        }
        job.field = field.ok_or_else(|| err(0, "missing `field`"))?;
        job.vars = vars.ok_or_else(|| err(0, "missing `vars`"))?;
        if job.gens.is_empty() {
            return Err(err(0, "no `gen` lines"));
        }
        if job.qmax == 0 {
            return Err(err(0, "`qmax` must be at least 1"));
        }
        if job.window == 0 {
            return Err(err(0, "`window` must be at least 1"));
        }
        Ok(job)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_job() {
        let j = JobSpec::parse(
            "field = Fp 32003\nvars = x, y\ngen = x^2 # comment\ngen = x*y\nqmax = 4\nreg_phi_star = 1\nfat_points = true\n",
        )
        .unwrap();
        assert_eq!(j.field, FieldSpec::Prime(32003));
        assert_eq!(j.vars, vec!["x", "y"]);
        assert_eq!(j.gens, vec!["x^2", "x*y"]);
        assert_eq!((j.qmax, j.window, j.reg_phi_star, j.fat_points), (4, 3, Some(1), true));
    }

    #[test]
    fn reports_line_numbers() {
        let e = JobSpec::parse("field = Q\nvars = x\nqmax = many\n").unwrap_err();
        assert!(matches!(e, CliError::Job { line: 3, .. }));
        let e = JobSpec::parse("field = R\n").unwrap_err();
        assert!(matches!(e, CliError::Job { line: 1, .. }));
        assert!(JobSpec::parse("field = Q\nvars = x\n").is_err());
        assert!(JobSpec::parse("field = Q\nvars = x\ngen = x\nbogus = 1\n").is_err());
    }
}
