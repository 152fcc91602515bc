use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::field::Field;
use super::monomial::Monomial;
use super::ring::Ring;

/// Result of asking for the bidegree of a polynomial in a bigraded ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bidegree {
    Homogeneous(i64, i64),
    Inhomogeneous,
}

/// A polynomial: nonzero terms sorted strictly decreasing in the ring's order.
#[derive(Clone)]
pub struct Polynomial<K: Field> {
    ring: Arc<Ring<K>>,
    terms: Vec<(K::Elem, Monomial)>,
}

impl<K: Field> PartialEq for Polynomial<K> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<K: Field> Eq for Polynomial<K> {}

impl<K: Field> Polynomial<K> {
    pub fn zero(ring: &Arc<Ring<K>>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<Ring<K>>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<Ring<K>>, c: K::Elem) -> Self {
        Self::term(ring, c, ring.one_monomial())
    }

    pub fn term(ring: &Arc<Ring<K>>, c: K::Elem, m: Monomial) -> Self {
        let terms = if ring.field().is_zero(&c) { vec![] } else { vec![(c, m)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn monomial(ring: &Arc<Ring<K>>, m: Monomial) -> Self {
        Self::term(ring, ring.field().one(), m)
    }

    pub fn var(ring: &Arc<Ring<K>>, i: usize) -> Self {
        Self::monomial(ring, ring.var_monomial(i))
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges equal
    /// monomials and drops zeros.
    pub fn from_terms(ring: &Arc<Ring<K>>, mut terms: Vec<(K::Elem, Monomial)>) -> Self {
        let f = ring.field();
        terms.sort_by(|a, b| ring.cmp_monomials(&b.1, &a.1));
        let mut out: Vec<(K::Elem, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some((lc, lm)) if *lm == m => *lc = f.add(lc, &c),
                _ => {
                    if let Some((lc, _)) = out.last() {
                        if f.is_zero(lc) {
                            out.pop();
                        }
                    }
                    out.push((c, m));
                }
            }
        }
        if let Some((lc, _)) = out.last() {
            if f.is_zero(lc) {
                out.pop();
            }
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Arc<Ring<K>> {
        &self.ring
    }

    pub fn terms(&self) -> &[(K::Elem, Monomial)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(K::Elem, Monomial)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, m)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&(K::Elem, Monomial)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.1)
    }

    /// Weighted degree of the leading term.
    pub fn degree(&self) -> Option<i64> {
        self.terms.iter().map(|t| t.1.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((_, m)) => self.terms.iter().all(|(_, n)| n.degree() == m.degree()),
        }
    }

    /// Common bidegree of all terms in a bigraded ring. The zero polynomial
    /// and polynomials of singly graded rings report `Inhomogeneous`.
    pub fn bidegree(&self) -> Bidegree {
        let mut it = self.terms.iter().map(|(_, m)| self.ring.bidegree_of(m));
        let first = match it.next() {
            Some(Some(b)) => b,
            _ => return Bidegree::Inhomogeneous,
        };
        if it.all(|b| b == Some(first)) {
            Bidegree::Homogeneous(first.0, first.1)
        } else {
            Bidegree::Inhomogeneous
        }
    }

    fn field(&self) -> &K {
        self.ring.field()
    }

    pub fn neg(&self) -> Self {
        let f = self.field();
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(c, m)| (f.neg(c), m.clone())).collect() }
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, m)| (f.mul(a, c), m.clone())).collect(),
        }
    }

    pub fn mul_term(&self, c: &K::Elem, m: &Monomial) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(a, n)| (f.mul(a, c), n.mul(m))).collect() }
    }

    /// `self + c * other`, merging the sorted term lists.
    pub fn add_scaled(&self, c: &K::Elem, other: &Self) -> Self {
        let f = self.field();
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, ma) = &self.terms[i];
            let (b, mb) = &other.terms[j];
            match ring.cmp_monomials(ma, mb) {
                Ordering::Greater => {
                    out.push((a.clone(), ma.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((f.mul(b, c), mb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(a, &f.mul(b, c));
                    if !f.is_zero(&s) {
                        out.push((s, ma.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(b, m)| (f.mul(b, c), m.clone())));
        out.retain(|(c, _)| !f.is_zero(c));
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&self.field().one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&self.field().neg(&self.field().one()), other)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Self::zero(&self.ring);
        for (c, m) in &small.terms {
            acc = acc.add(&big.mul_term(c, m));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn make_monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((c, _)) => self.scale(&self.field().inv(c).expect("nonzero")),
        }
    }

    /// Reinterprets the polynomial in another ring with the same number of
    /// variables (for example a different order or grading).
    pub fn to_ring(&self, target: &Arc<Ring<K>>) -> Self {
        self.map_exponents(target, |e| e.to_vec())
    }

    /// Moves every term into `target` through an exponent map.
    pub fn map_exponents(&self, target: &Arc<Ring<K>>, map: impl Fn(&[u16]) -> Vec<u16>) -> Self {
        let terms = self.terms.iter().map(|(c, m)| (c.clone(), target.monomial(&map(m.exps())))).collect();
        Self::from_terms(target, terms)
    }

    pub fn render(&self) -> String {
        render(self)
    }
}

fn render<K: Field>(p: &Polynomial<K>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let f = p.ring.field();
    let names = p.ring.names();
    let mut s = String::new();
    for (idx, (c, m)) in p.terms.iter().enumerate() {
        let neg = f.is_negative(c);
        let abs = if neg { f.neg(c) } else { c.clone() };
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !f.is_one(&abs) || m.is_one() {
            factors.push(f.render(&abs));
        }
        for (i, e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[i].clone()),
                _ => factors.push(format!("{}^{}", names[i], e)),
            }
        }
        s.push_str(&factors.join("*"));
    }
    s
}

impl<K: Field> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self))
    }
}

impl<K: Field> fmt::Debug for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", render(self))
    }
}

impl<K: Field> std::ops::Add for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn add(self, rhs: Self) -> Polynomial<K> {
        Polynomial::add(self, rhs)
    }
}

impl<K: Field> std::ops::Sub for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn sub(self, rhs: Self) -> Polynomial<K> {
        Polynomial::sub(self, rhs)
    }
}

impl<K: Field> std::ops::Mul for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn mul(self, rhs: Self) -> Polynomial<K> {
        Polynomial::mul(self, rhs)
    }
}

impl<K: Field> std::ops::Neg for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn neg(self) -> Polynomial<K> {
        Polynomial::neg(self)
    }
}
