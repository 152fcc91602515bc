//! Hilbert series of graded modules from lead-term data.

use std::collections::BTreeMap;

use crate::extint::{ExtInt, Finite, NegInf};

/// Laurent polynomial with integer coefficients: `sum c_k t^(low + k)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    low: i64,
    coeffs: Vec<i128>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i128, deg: i64) -> Self {
        Laurent { low: deg, coeffs: vec![c] }.normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| **c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
        self
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, deg: i64) -> i128 {
        let k = deg - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            0
        } else {
            self.coeffs[k as usize]
        }
    }

    /// (degree, coefficient) for the nonzero coefficients.
    pub fn terms(&self) -> Vec<(i64, i128)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| **c != 0).map(|(k, c)| (self.low + k as i64, *c)).collect()
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.high_degree().unwrap().max(o.high_degree().unwrap());
        let coeffs = (low..=high).map(|d| self.coeff(d) + o.coeff(d)).collect();
        Laurent { low, coeffs }.normalized()
    }

    pub fn neg(&self) -> Laurent {
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![0i128; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Laurent { low: self.low + o.low, coeffs }.normalized()
    }

    pub fn shift(&self, k: i64) -> Laurent {
        if self.is_zero() {
            return self.clone();
        }
        Laurent { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn eval_at_one(&self) -> i128 {
        self.coeffs.iter().sum()
    }

    /// Exact division by `1 - t`, if possible.
    pub fn div_one_minus_t(&self) -> Option<Laurent> {
        if self.eval_at_one() != 0 {
            return None;
        }
        // q(t) (1 - t) = p(t): q_k = sum_{j <= k} p_j
        let mut acc = 0i128;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            acc += c;
            coeffs.push(acc);
        }
        Some(Laurent { low: self.low, coeffs }.normalized())
    }

    /// Multiplicity of `t = 1` as a root; `None` for the zero polynomial.
    pub fn order_at_one(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.div_one_minus_t() {
            p = q;
            k += 1;
        }
        Some(k)
    }
}

/// Numerator of the Hilbert series of `S / J` for a monomial ideal `J`,
/// with respect to the given variable weights (denominator
/// `prod (1 - t^w_i)`).
pub fn monomial_numerator(gens: &[Vec<u16>], weights: &[i64]) -> Laurent {
    let mut g: Vec<Vec<u16>> = gens.to_vec();
    minimalize(&mut g);
    numerator_rec(g, weights)
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(g: &mut Vec<Vec<u16>>) {
    g.sort_by_key(|e| e.iter().map(|x| *x as u32).sum::<u32>());
    g.dedup();
    let mut keep: Vec<Vec<u16>> = Vec::with_capacity(g.len());
    for e in g.drain(..) {
        if !keep.iter().any(|k| divides(k, &e)) {
            keep.push(e);
        }
    }
    *g = keep;
}

fn wdeg(e: &[u16], w: &[i64]) -> i64 {
    e.iter().zip(w).map(|(a, b)| *a as i64 * b).sum()
}

fn numerator_rec(g: Vec<Vec<u16>>, w: &[i64]) -> Laurent {
    if g.is_empty() {
        return Laurent::one();
    }
    if g.iter().any(|e| e.iter().all(|x| *x == 0)) {
        return Laurent::zero();
    }
    let n = w.len();
    // pure powers and the rest
    let is_pure = |e: &[u16]| e.iter().filter(|x| **x > 0).count() == 1;
    let mixed: Vec<&Vec<u16>> = g.iter().filter(|e| !is_pure(e)).collect();
    if mixed.is_empty() || pairwise_coprime(&g) {
        return g.iter().fold(Laurent::one(), |acc, e| acc.mul(&Laurent::one().sub(&Laurent::monomial(1, wdeg(e, w)))));
    }
    let mut counts = vec![0usize; n];
    for e in &mixed {
        for (v, x) in e.iter().enumerate() {
            if *x > 0 {
                counts[v] += 1;
            }
        }
    }
    let v = (0..n).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).expect("nonempty");
    let mut exps: Vec<u16> = mixed.iter().map(|e| e[v]).filter(|x| *x > 0).collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2];
    let mut p = vec![0u16; n];
    p[v] = e;
    // J + (p)
    let mut plus = g.clone();
    plus.push(p.clone());
    minimalize(&mut plus);
    // J : p
    let mut colon: Vec<Vec<u16>> = g
        .iter()
        .map(|x| {
            let mut y = x.clone();
            y[v] = y[v].saturating_sub(e);
            y
        })
        .collect();
    minimalize(&mut colon);
    let a = numerator_rec(plus, w);
    let b = numerator_rec(colon, w);
    a.add(&b.shift(wdeg(&p, w)))
}

fn pairwise_coprime(g: &[Vec<u16>]) -> bool {
    for (i, a) in g.iter().enumerate() {
        for b in &g[i + 1..] {
            if a.iter().zip(b).any(|(x, y)| *x > 0 && *y > 0) {
                return false;
            }
        }
    }
    true
}

/// Hilbert series `numerator / prod (1 - t^w_i)` of a graded module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: Laurent,
    pub weights: Vec<i64>,
}

impl HilbertSeries {
    /// Series of `(+) S(-twist_c) / J_c` for monomial ideals `J_c`.
    pub fn from_leads(weights: &[i64], twists: &[i64], leads: &BTreeMap<usize, Vec<Vec<u16>>>) -> Self {
        let mut num = Laurent::zero();
        for (c, t) in twists.iter().enumerate() {
            let empty = Vec::new();
            let gens = leads.get(&c).unwrap_or(&empty);
            num = num.add(&monomial_numerator(gens, weights).shift(*t));
        }
        HilbertSeries { numerator: num, weights: weights.to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn sub(&self, o: &HilbertSeries) -> HilbertSeries {
        HilbertSeries { numerator: self.numerator.sub(&o.numerator), weights: self.weights.clone() }
    }

    /// Lowest degree of a nonzero graded piece.
    pub fn initial_degree(&self) -> ExtInt {
        match self.numerator.low_degree() {
            Some(d) => Finite(d),
            None => NegInf,
        }
    }

    /// Krull dimension: number of variables minus the order of the
    /// numerator at `t = 1`. `None` for the zero module.
    pub fn dimension(&self) -> Option<usize> {
        self.numerator.order_at_one().map(|k| self.weights.len() - k)
    }

    /// `dim_k M_n` for `n` in `lo..=hi`.
    pub fn values(&self, lo: i64, hi: i64) -> Vec<i128> {
        if hi < lo {
            return Vec::new();
        }
        let Some(nlow) = self.numerator.low_degree() else {
            return vec![0; (hi - lo + 1) as usize];
        };
        let span = (hi - nlow).max(0) as usize;
        // series of 1 / prod (1 - t^w)
        let mut s = vec![0i128; span + 1];
        s[0] = 1;
        for w in &self.weights {
            let w = *w as usize;
            for k in w..=span {
                s[k] += s[k - w];
            }
        }
        (lo..=hi)
            .map(|n| self.numerator.terms().iter().filter(|(d, _)| *d <= n).map(|(d, c)| c * s[(n - d) as usize]).sum())
            .collect()
    }

    pub fn value(&self, n: i64) -> i128 {
        self.values(n, n)[0]
    }
}

/// Hilbert polynomial stored by forward differences at a base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertPolynomial {
    base: i64,
    diffs: Vec<i128>,
}

impl HilbertPolynomial {
    /// Fits a polynomial of degree `< npoints` through
    /// `values[k] = P(base + k)`; `None` if the last `check` values disagree.
    pub fn fit(base: i64, values: &[i128], check: usize) -> Option<Self> {
        let npoints = values.len().checked_sub(check)?;
        let mut table: Vec<i128> = values[..npoints].to_vec();
        let mut diffs = Vec::with_capacity(npoints);
        while !table.is_empty() {
            diffs.push(table[0]);
            table = table.windows(2).map(|w| w[1] - w[0]).collect();
        }
        while diffs.last() == Some(&0) {
            diffs.pop();
        }
        let p = HilbertPolynomial { base, diffs };
        for (k, v) in values.iter().enumerate().skip(npoints) {
            if p.eval(base + k as i64) != *v {
                return None;
            }
        }
        Some(p)
    }

    pub fn eval(&self, n: i64) -> i128 {
        // sum diffs[k] * binom(n - base, k), valid for negative arguments too
        let x = (n - self.base) as i128;
        let mut binom: i128 = 1;
        let mut acc = 0i128;
        for (k, d) in self.diffs.iter().enumerate() {
            acc += d * binom;
            binom = binom * (x - k as i128) / (k as i128 + 1);
        }
        acc
    }

    /// Degree of the polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.diffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.diffs.is_empty()
    }
}
