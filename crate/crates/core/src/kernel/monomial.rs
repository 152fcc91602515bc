use std::cmp::Ordering;

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 12]>;

/// A power product together with its weighted degree under the owning ring's
/// positive grading.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: i64,
}

impl Monomial {
    pub fn new(exps: Exponents, weights: &[i64]) -> Self {
        debug_assert_eq!(exps.len(), weights.len());
        let degree = exps.iter().zip(weights).map(|(e, w)| *e as i64 * w).sum();
        Monomial { exps, degree }
    }

    pub fn from_slice(exps: &[u16], weights: &[i64]) -> Self {
        Self::new(exps.iter().copied().collect(), weights)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn var(nvars: usize, i: usize, weights: &[i64]) -> Self {
        let mut exps: Exponents = SmallVec::from_elem(0, nvars);
        exps[i] = 1;
        Monomial { exps, degree: weights[i] }
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|e| *e == 0)
    }

    pub fn total_exponent(&self) -> u32 {
        self.exps.iter().map(|e| *e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| b - a).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial, weights: &[i64]) -> Monomial {
        Monomial::new(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect(), weights)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit mask of the variables that occur, for fast divisibility rejection.
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, e) in self.exps.iter().enumerate() {
            if *e > 0 {
                m |= 1 << (i % 64);
            }
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Eliminates the first `n` variables: any monomial involving them beats
    /// every monomial free of them.
    BlockElimination(usize),
    /// Bidegree (A-degree, t-degree) first, then reverse lexicographic.
    BigradedGrevlex,
}

impl MonomialOrder {
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex | MonomialOrder::BigradedGrevlex)
    }

    /// Compares two monomials of the same ring. `bidegree` maps a monomial to
    /// its bidegree and is only consulted by the bigraded order.
    pub fn compare(
        &self,
        weights: &[i64],
        a: &Monomial,
        b: &Monomial,
        bidegree: impl Fn(&Monomial) -> (i64, i64),
    ) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.degree.cmp(&b.degree).then_with(|| revlex(&a.exps, &b.exps)),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::BlockElimination(k) => {
                let k = (*k).min(a.exps.len());
                let wdeg = |e: &[u16], w: &[i64]| -> i64 { e.iter().zip(w).map(|(x, y)| *x as i64 * y).sum() };
                let (af, ar) = a.exps.split_at(k);
                let (bf, br) = b.exps.split_at(k);
                let (wf, wr) = weights.split_at(k);
                wdeg(af, wf)
                    .cmp(&wdeg(bf, wf))
                    .then_with(|| revlex(af, bf))
                    .then_with(|| wdeg(ar, wr).cmp(&wdeg(br, wr)))
                    .then_with(|| revlex(ar, br))
            }
            MonomialOrder::BigradedGrevlex => bidegree(a).cmp(&bidegree(b)).then_with(|| revlex(&a.exps, &b.exps)),
        }
    }
}

/// Reverse lexicographic tie-break: at the last differing position the
/// smaller exponent wins.
#[inline]
fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}
