use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use super::field::Field;
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// How variables are graded.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Grading {
    /// Every variable has degree 1.
    Standard,
    /// Per-variable positive degrees.
    Weighted(Vec<i64>),
    /// The first `x_vars` variables have bidegree (1,0), the rest (d,1).
    /// Module computations use weight 1 for every variable, i.e. the grading
    /// by x-degree plus t-degree.
    Bigraded { x_vars: usize, d: i64 },
}

/// Resource caps for Groebner computations. Exceeding one yields
/// `Error::Budget`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_degree: i64,
    pub max_basis: usize,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_degree: 80, max_basis: 20000, deadline: None }
    }
}

impl Budget {
    pub fn with_seconds(mut self, secs: Option<u64>) -> Self {
        self.deadline = secs.map(|s| Instant::now() + Duration::from_secs(s));
        self
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Budget("wall-clock limit reached".into())),
            _ => Ok(()),
        }
    }
}

/// A polynomial ring over a field with named variables, a positive grading
/// and an active monomial order.
#[derive(Debug, Clone)]
pub struct Ring<K: Field> {
    field: K,
    names: Vec<String>,
    grading: Grading,
    weights: Vec<i64>,
    order: MonomialOrder,
    budget: Budget,
}

impl<K: Field> PartialEq for Ring<K> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.names == other.names
            && self.grading == other.grading
            && self.order == other.order
    }
}

pub fn is_valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<K: Field> Ring<K> {
    pub fn new(field: K, names: Vec<String>, grading: Grading, order: MonomialOrder) -> Result<Arc<Self>> {
        let mut seen = HashSet::new();
        for n in &names {
            if !is_valid_name(n) {
                return Err(Error::Invalid(format!("invalid variable name `{n}`")));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::Invalid(format!("duplicate variable name `{n}`")));
            }
        }
        if names.len() > 64 {
            return Err(Error::Invalid("at most 64 variables are supported".into()));
        }
        let weights = match &grading {
            Grading::Standard => vec![1; names.len()],
            Grading::Weighted(w) => {
                if w.len() != names.len() || w.iter().any(|x| *x < 1) {
                    return Err(Error::Invalid("weights must be positive, one per variable".into()));
                }
                w.clone()
            }
            Grading::Bigraded { x_vars, d } => {
                if *x_vars > names.len() || *d < 1 {
                    return Err(Error::Invalid("bigrading needs x_vars <= nvars and d >= 1".into()));
                }
                vec![1; names.len()]
            }
        };
        if order == MonomialOrder::BigradedGrevlex && !matches!(grading, Grading::Bigraded { .. }) {
            return Err(Error::Invalid("bigraded order on a singly graded ring".into()));
        }
        Ok(Arc::new(Ring { field, names, grading, weights, order, budget: Budget::default() }))
    }

    pub fn standard(field: K, names: &[&str]) -> Result<Arc<Self>> {
        Self::new(field, names.iter().map(|s| s.to_string()).collect(), Grading::Standard, MonomialOrder::Grevlex)
    }

    /// Same ring with a different budget.
    pub fn with_budget(&self, budget: Budget) -> Arc<Self> {
        let mut r = self.clone();
        r.budget = budget;
        Arc::new(r)
    }

    /// Same variables and grading, different order. Budget is inherited.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        let r = Self::new(self.field.clone(), self.names.clone(), self.grading.clone(), order)?;
        Ok(r.with_budget(self.budget))
    }

    /// Derived ring inheriting field and budget.
    pub fn derived(&self, names: Vec<String>, grading: Grading, order: MonomialOrder) -> Result<Arc<Self>> {
        let r = Self::new(self.field.clone(), names, grading, order)?;
        Ok(r.with_budget(self.budget))
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn nvars(&self) -> usize {
        self.names.len()
    }
    pub fn grading(&self) -> &Grading {
        &self.grading
    }
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }
    pub fn order(&self) -> MonomialOrder {
        self.order
    }
    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|w| *w == 1)
    }

    pub fn weight_sum(&self) -> i64 {
        self.weights.iter().sum()
    }

    pub fn bigrading(&self) -> Option<(usize, i64)> {
        match self.grading {
            Grading::Bigraded { x_vars, d } => Some((x_vars, d)),
            _ => None,
        }
    }

    /// (A-degree, t-degree) of a monomial of a bigraded ring: x-variables
    /// contribute (1,0) and T-variables (d,1).
    pub fn bidegree_of(&self, m: &Monomial) -> Option<(i64, i64)> {
        let (nx, d) = self.bigrading()?;
        let xs: i64 = m.exps()[..nx].iter().map(|e| *e as i64).sum();
        let ts: i64 = m.exps()[nx..].iter().map(|e| *e as i64).sum();
        Some((xs + d * ts, ts))
    }

    /// (x-exponent degree, T-exponent degree) of a monomial of a bigraded ring.
    pub fn block_degrees(&self, m: &Monomial) -> Option<(i64, i64)> {
        let (nx, _) = self.bigrading()?;
        let xs: i64 = m.exps()[..nx].iter().map(|e| *e as i64).sum();
        let ts: i64 = m.exps()[nx..].iter().map(|e| *e as i64).sum();
        Some((xs, ts))
    }

    pub fn monomial(&self, exps: &[u16]) -> Monomial {
        Monomial::from_slice(exps, &self.weights)
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn var_monomial(&self, i: usize) -> Monomial {
        Monomial::var(self.nvars(), i, &self.weights)
    }

    #[inline]
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(&self.weights, a, b, |m| self.bidegree_of(m).unwrap_or((0, 0)))
    }
}
