//! The bigraded Rees algebra `A[It]` of an equigenerated ideal, its fiber
//! ideal and its strand modules.
//!
//! The ambient ring is `k[x_0..x_n, T_0..T_m]` with `T_j -> f_j t`. A
//! monomial `x^a T^b` has bidegree `(|a| + d|b|, |b|)`; the strand index `p`
//! used throughout is the x-exponent degree `|a|`, so that
//! `R_(p,q) = (I^q)_(p+dq)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{self, Ideal};
use crate::kernel::{Field, Grading, Monomial, MonomialOrder, Polynomial, Ring};
use crate::resolve::{GradedPresentation, Matrix};

/// Presentation `k[x, T] / J` of the Rees algebra.
#[derive(Debug, Clone)]
pub struct ReesPresentation<K: Field> {
    /// `k[x]`.
    pub base: Arc<Ring<K>>,
    /// `k[x, T]`, bigraded.
    pub ring: Arc<Ring<K>>,
    /// `k[T]`.
    pub fiber_ring: Arc<Ring<K>>,
    /// Minimal bihomogeneous generators of the defining ideal.
    pub j: Ideal<K>,
    pub d: i64,
    /// Minimal generators `f_0..f_m` of `I`.
    pub f: Vec<Polynomial<K>>,
}

/// Which family of strands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrandDirection {
    /// `R_(p,*)`, a module over `k[T]`.
    X,
    /// `R_(*,q)`, a module over `k[x]`.
    T,
}

#[derive(Debug, Clone)]
pub struct StrandModule<K: Field> {
    pub direction: StrandDirection,
    pub index: i64,
    pub presentation: GradedPresentation<K>,
}

fn fresh_names(taken: &[String], prefix: &str, count: usize) -> Vec<String> {
    for p in [prefix.to_string(), format!("{prefix}_"), format!("{prefix}{prefix}"), format!("{prefix}_r")] {
        let names: Vec<String> = (0..count).map(|j| format!("{p}{j}")).collect();
        if names.iter().all(|n| !taken.contains(n)) {
            return names;
        }
    }
    (0..count).map(|j| format!("{prefix}_rees_{j}")).collect()
}

fn fresh_name(taken: &[String], candidates: &[&str]) -> String {
    for c in candidates {
        if !taken.iter().any(|n| n == c) {
            return c.to_string();
        }
    }
    let mut k = 0;
    loop {
        let n = format!("t{k}_");
        if !taken.contains(&n) {
            return n;
        }
        k += 1;
    }
}

/// Minimal generators of `I`, checked to share one positive degree.
pub fn equigenerated_generators<K: Field>(ideal: &Ideal<K>) -> Result<(i64, Vec<Polynomial<K>>)> {
    let m = ideal.minimalize()?;
    if m.is_zero() {
        return Err(Error::NotEquigenerated("zero ideal".into()));
    }
    let d = m
        .equigenerated_degree()
        .ok_or_else(|| Error::NotEquigenerated("minimal generators have different degrees".into()))?;
    if d <= 0 {
        return Err(Error::NotEquigenerated("generators of degree 0".into()));
    }
    Ok((d, m.gens().to_vec()))
}

fn monomials_of_degree(nvars: usize, deg: i64) -> Vec<Vec<u16>> {
    if deg < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(i: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, deg as u16, &mut cur, &mut out);
    out
}

impl<K: Field> ReesPresentation<K> {
    pub fn nx(&self) -> usize {
        self.base.nvars()
    }

    pub fn nt(&self) -> usize {
        self.f.len()
    }

    /// (x-degree, T-degree) of a polynomial of `k[x, T]` whose terms agree.
    pub fn block_degrees(&self, g: &Polynomial<K>) -> Option<(i64, i64)> {
        let mut it = g.terms().iter().map(|(_, m)| self.ring.block_degrees(m));
        let first = it.next()??;
        it.all(|b| b == Some(first)).then_some(first)
    }

    /// Checks that every generator of `J` is bihomogeneous and vanishes
    /// under `T_j -> f_j t`.
    pub fn substitution_check(&self) -> bool {
        let nx = self.nx();
        let mut cache: HashMap<Vec<u16>, Polynomial<K>> = HashMap::new();
        for g in self.j.gens() {
            if self.block_degrees(g).is_none() {
                return false;
            }
            let mut acc = Polynomial::zero(&self.base);
            for (c, m) in g.terms() {
                let xs = self.base.monomial(&m.exps()[..nx]);
                let ts = m.exps()[nx..].to_vec();
                let fp = cache
                    .entry(ts.clone())
                    .or_insert_with(|| {
                        ts.iter().zip(&self.f).fold(Polynomial::one(&self.base), |a, (e, f)| a.mul(&f.pow(*e as u32)))
                    })
                    .clone();
                acc = acc.add(&fp.mul_term(c, &xs));
            }
            if !acc.is_zero() {
                return false;
            }
        }
        true
    }

    /// `J ∩ k[T]`, by block elimination of the x-variables from `J`.
    pub fn fiber_ideal(&self) -> Result<Ideal<K>> {
        let block: Vec<usize> = (0..self.nx()).collect();
        groebner::eliminate_into(&self.j, &block, &self.fiber_ring)
    }

    /// The fiber ideal computed directly, eliminating `t` and `x` from
    /// `(T_j - f_j t)`.
    pub fn fiber_ideal_direct(&self) -> Result<Ideal<K>> {
        let (e, n) = self.elimination_ideal()?;
        let block: Vec<usize> = (0..=n).collect();
        groebner::eliminate_into(&e, &block, &self.fiber_ring)
    }

    fn elimination_ideal(&self) -> Result<(Ideal<K>, usize)> {
        elimination_ideal(&self.base, &self.ring, &self.f, self.d)
    }

    /// `R_(p,*)` as a graded module over `k[T]`, with `R_(p,q)` in degree `q`.
    pub fn strand_x(&self, p: i64) -> Result<StrandModule<K>> {
        let fr = &self.fiber_ring;
        let nx = self.nx();
        let basis = monomials_of_degree(nx, p);
        let index: HashMap<Vec<u16>, usize> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let mut rels: Matrix<K> = Vec::new();
        for g in self.j.gens() {
            let (gx, _) = self.block_degrees(g).ok_or_else(|| Error::Invalid("J is not bihomogeneous".into()))?;
            for alpha in monomials_of_degree(nx, p - gx) {
                let mut col: Vec<Vec<(K::Elem, Monomial)>> = vec![Vec::new(); basis.len()];
                for (c, m) in g.terms() {
                    let xe: Vec<u16> = m.exps()[..nx].iter().zip(&alpha).map(|(a, b)| a + b).collect();
                    let k = index[&xe];
                    col[k].push((c.clone(), fr.monomial(&m.exps()[nx..])));
                }
                rels.push(col.into_iter().map(|t| Polynomial::from_terms(fr, t)).collect());
            }
        }
        let presentation = GradedPresentation::new(fr, vec![0; basis.len()], rels)?;
        Ok(StrandModule { direction: StrandDirection::X, index: p, presentation })
    }

    /// `R_(*,q)` as a graded module over `k[x]`, with `R_(p,q)` in degree `p`.
    pub fn strand_t(&self, q: i64) -> Result<StrandModule<K>> {
        if q < 0 {
            return Err(Error::Invalid("T-strand index must be nonnegative".into()));
        }
        let base = &self.base;
        let nx = self.nx();
        let basis = monomials_of_degree(self.nt(), q);
        let index: HashMap<Vec<u16>, usize> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let mut rels: Matrix<K> = Vec::new();
        for g in self.j.gens() {
            let (_, gt) = self.block_degrees(g).ok_or_else(|| Error::Invalid("J is not bihomogeneous".into()))?;
            for beta in monomials_of_degree(self.nt(), q - gt) {
                let mut col: Vec<Vec<(K::Elem, Monomial)>> = vec![Vec::new(); basis.len()];
                for (c, m) in g.terms() {
                    let te: Vec<u16> = m.exps()[nx..].iter().zip(&beta).map(|(a, b)| a + b).collect();
                    col[index[&te]].push((c.clone(), base.monomial(&m.exps()[..nx])));
                }
                rels.push(col.into_iter().map(|t| Polynomial::from_terms(base, t)).collect());
            }
        }
        let presentation = GradedPresentation::new(base, vec![0; basis.len()], rels)?;
        Ok(StrandModule { direction: StrandDirection::T, index: q, presentation })
    }

    /// `dim_k R_(p,q)` from the standard monomials of `J`.
    pub fn bigraded_dim(&self, p: i64, q: i64) -> Result<usize> {
        let gb = self.j.groebner_basis()?;
        let leads = gb.lead_monomials();
        let nx = self.nx();
        let mut count = 0;
        for a in monomials_of_degree(nx, p) {
            for b in monomials_of_degree(self.nt(), q) {
                let mut e = a.clone();
                e.extend_from_slice(&b);
                let m = self.ring.monomial(&e);
                if !leads.iter().any(|l| l.divides(&m)) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// `k[x, T] / J` as a module over `k[x, T]`.
    pub fn as_module(&self) -> Result<GradedPresentation<K>> {
        GradedPresentation::quotient_ring(&self.j)
    }

    /// The same quotient with x-variables of weight 1 and T-variables of
    /// weight `w`.
    pub fn as_module_weighted(&self, w: i64) -> Result<GradedPresentation<K>> {
        let mut weights = vec![1; self.nx()];
        weights.extend(std::iter::repeat_n(w, self.nt()));
        let r = self.ring.derived(self.ring.names().to_vec(), Grading::Weighted(weights), MonomialOrder::Grevlex)?;
        let gens = self.j.gens().iter().map(|g| g.to_ring(&r)).collect();
        GradedPresentation::quotient_ring(&Ideal::new(&r, gens)?)
    }
}

fn elimination_ideal<K: Field>(
    base: &Arc<Ring<K>>,
    rees: &Arc<Ring<K>>,
    f: &[Polynomial<K>],
    d: i64,
) -> Result<(Ideal<K>, usize)> {
    let nx = base.nvars();
    let mut names = vec![fresh_name(rees.names(), &["t", "t_", "tt"])];
    names.extend(rees.names().iter().cloned());
    let mut weights = vec![1i64];
    weights.extend(std::iter::repeat_n(1, nx));
    weights.extend(std::iter::repeat_n(d + 1, f.len()));
    let er = rees.derived(names, Grading::Weighted(weights), MonomialOrder::BlockElimination(1))?;
    let mut gens = Vec::with_capacity(f.len());
    for (j, fj) in f.iter().enumerate() {
        let ft = fj.map_exponents(&er, |e| {
            let mut v = vec![1u16];
            v.extend_from_slice(e);
            v.resize(1 + nx + f.len(), 0);
            v
        });
        let tj = Polynomial::var(&er, 1 + nx + j);
        gens.push(tj.sub(&ft));
    }
    Ok((Ideal::new(&er, gens)?, nx))
}

/// Builds `k[x, T] / J` for an equigenerated ideal by eliminating `t`.
pub fn rees_presentation<K: Field>(ideal: &Ideal<K>) -> Result<ReesPresentation<K>> {
    let (d, f) = equigenerated_generators(ideal)?;
    let src = ideal.ring();
    let base = src.derived(src.names().to_vec(), Grading::Standard, MonomialOrder::Grevlex)?;
    if !src.is_standard_graded() {
        return Err(Error::Invalid("the ambient ring must be standard graded".into()));
    }
    let f: Vec<Polynomial<K>> = f.iter().map(|g| g.to_ring(&base).make_monic()).collect();
    let tnames = fresh_names(base.names(), "T", f.len());
    let mut names = base.names().to_vec();
    names.extend(tnames.iter().cloned());
    let ring = base.derived(names, Grading::Bigraded { x_vars: base.nvars(), d }, MonomialOrder::BigradedGrevlex)?;
    let fiber_ring = base.derived(tnames, Grading::Standard, MonomialOrder::Grevlex)?;
    let (e, _) = elimination_ideal(&base, &ring, &f, d)?;
    let j = groebner::eliminate_into(&e, &[0], &ring)?;
    Ok(ReesPresentation { base, ring, fiber_ring, j, d, f })
}

/// `(p, q) = (c - d e, e)`: the bidegree of `O(e) ⊗ pi^* O(c)`.
pub fn twist_convert(e: i64, c: i64, d: i64) -> (i64, i64) {
    (c - d * e, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{parse_polynomial, Rationals};

    fn rees(gens: &[&str]) -> ReesPresentation<Rationals> {
        let r = Ring::standard(Rationals, &["x", "y"]).unwrap();
        rees_presentation(&Ideal::parse(&r, gens).unwrap()).unwrap()
    }

    fn same_up_to_sign(a: &Polynomial<Rationals>, b: &Polynomial<Rationals>) -> bool {
        a == b || *a == b.neg()
    }

    #[test]
    fn maximal_ideal() {
        let r = rees(&["x", "y"]);
        assert_eq!(r.j.gens().len(), 1);
        assert!(same_up_to_sign(&r.j.gens()[0], &parse_polynomial("x*T1 - y*T0", &r.ring).unwrap()));
        assert!(r.fiber_ideal().unwrap().is_zero());
        assert!(r.substitution_check());
    }

    #[test]
    fn x2_xy() {
        let r = rees(&["x^2", "x*y"]);
        assert_eq!(r.j.gens().len(), 1);
        assert!(same_up_to_sign(&r.j.gens()[0], &parse_polynomial("y*T0 - x*T1", &r.ring).unwrap()));
        assert!(r.fiber_ideal().unwrap().is_zero());
    }

    #[test]
    fn example_fiber_relation() {
        let r = rees(&["x^5", "x^4*y", "x*y^4", "y^5"]);
        assert!(r.substitution_check());
        let rel = parse_polynomial("T0*T3 - T1*T2", &r.ring).unwrap();
        assert!(r.j.contains(&rel).unwrap());
        let fib = r.fiber_ideal().unwrap();
        assert!(fib.contains(&parse_polynomial("T0*T3 - T1*T2", &r.fiber_ring).unwrap()).unwrap());
        assert!(fib.equals(&r.fiber_ideal_direct().unwrap()).unwrap());
        // no relation involves x alone
        let elim_t = groebner::eliminate_into(&r.j, &[2, 3, 4, 5], &r.base).unwrap();
        assert!(elim_t.is_zero());
    }

    #[test]
    fn strands() {
        let r = rees(&["x^5", "x^4*y", "x*y^4", "y^5"]);
        assert!(r.strand_x(-1).unwrap().presentation.is_zero().unwrap());
        let s0 = r.strand_t(0).unwrap().presentation;
        assert_eq!(s0.hilbert_function(0, 4).unwrap(), vec![1, 2, 3, 4, 5]);
        let i = Ideal::parse(&r.base, &["x^5", "x^4*y", "x*y^4", "y^5"]).unwrap();
        for q in 1..3 {
            let s = r.strand_t(q).unwrap().presentation;
            let iq = GradedPresentation::from_ideal(&i.power(q as u32).unwrap()).unwrap();
            assert_eq!(s.hilbert_function(0, 12).unwrap(), iq.hilbert_function(5 * q, 5 * q + 12).unwrap());
            for p in 0..4 {
                let direct = r.bigraded_dim(p, q).unwrap() as i128;
                assert_eq!(direct, iq.hilbert_function(p + 5 * q, p + 5 * q).unwrap()[0]);
            }
        }
    }

    #[test]
    fn twist_conventions() {
        assert_eq!(twist_convert(1, 5, 5), (0, 1));
        assert_eq!(twist_convert(0, 3, 5), (3, 0));
        assert_eq!(twist_convert(-1, 4, 5), (9, -1));
    }

    #[test]
    fn rejects_mixed_degrees() {
        let r = Ring::standard(Rationals, &["x", "y"]).unwrap();
        let i = Ideal::parse(&r, &["x^2", "y^3"]).unwrap();
        assert!(matches!(rees_presentation(&i), Err(Error::NotEquigenerated(_))));
    }
}
