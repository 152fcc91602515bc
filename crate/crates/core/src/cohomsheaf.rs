//! Sheaf cohomology on projective space from graded modules, and cohomology
//! of the blowup through its two projections.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::groebner::Ideal;
use crate::kernel::Field;
use crate::rees::ReesPresentation;
use crate::resolve::{a_invariants, GradedPresentation, HilbertSeries, LocalCohomologyTable};

/// Hilbert series plus local cohomology of one module: everything needed
/// for sheaf cohomology of its sheafification at any twist.
#[derive(Debug, Clone)]
pub struct ModuleCohomology {
    pub series: HilbertSeries,
    pub local: LocalCohomologyTable,
}

impl ModuleCohomology {
    pub fn new<K: Field>(m: &GradedPresentation<K>) -> Result<Self> {
        Ok(ModuleCohomology { series: m.hilbert_series()?, local: a_invariants(m)? })
    }

    /// `h^i(P^(N-1), M~(p))` for `i = 0..N-1`.
    pub fn sheaf(&self, p: i64) -> Vec<i128> {
        let n = self.local.nvars;
        let mut h = Vec::with_capacity(n);
        h.push(self.series.value(p) - self.local.dim(0, p) + self.local.dim(1, p));
        for i in 1..n {
            h.push(self.local.dim(i + 1, p));
        }
        h
    }

    /// `max_(j >= 2) (a^j + j)`.
    pub fn sheaf_regularity(&self) -> ExtInt {
        ExtInt::max_of((2..=self.local.nvars).map(|j| self.local.a_inv(j).plus(j as i64)))
    }
}

/// `h^i(P^n, M~(p))`, `i = 0..n`, for a module over a standard graded
/// polynomial ring in `n + 1` variables.
pub fn sheaf_cohomology_proj<K: Field>(m: &GradedPresentation<K>, p: i64) -> Result<Vec<i128>> {
    if !m.ring.is_standard_graded() {
        return Err(Error::Invalid("sheaf cohomology needs a standard graded ring".into()));
    }
    Ok(ModuleCohomology::new(m)?.sheaf(p))
}

/// Regularity of the sheaf `M~`: `max_(j >= 2) (a^j(M) + j)`.
pub fn sheaf_regularity<K: Field>(m: &GradedPresentation<K>) -> Result<ExtInt> {
    Ok(ModuleCohomology::new(m)?.sheaf_regularity())
}

/// Where a cohomology table on the blowup came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Push forward along the blowup map to `P^n`: `H^i(P^n, I^q~(p+dq))`.
    Pi,
    /// Push forward to the fiber image: `H^i(Xbar, R_(p,*)~(q))`.
    Phi,
    /// Both, with equality asserted.
    Both,
}

/// Dimensions `(i, twist) -> h^i` with a tag naming the space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub space: String,
    pub entries: BTreeMap<(usize, i64), i128>,
}

impl CohomologyTable {
    pub fn new(space: impl Into<String>) -> Self {
        CohomologyTable { space: space.into(), entries: BTreeMap::new() }
    }

    pub fn get(&self, i: usize, twist: i64) -> i128 {
        self.entries.get(&(i, twist)).copied().unwrap_or(0)
    }

    pub fn set_column(&mut self, twist: i64, dims: &[i128]) {
        for (i, d) in dims.iter().enumerate() {
            self.entries.insert((i, twist), *d);
        }
    }
}

/// Certified data that decides which route may be used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RouteCertificates {
    /// Certified value or upper bound of a*_pi.
    pub a_star_pi: Option<i64>,
    /// The asymptotic constant a*_phi.
    pub a_star_phi: Option<i64>,
}

/// Computes `h^i(Xtilde, O(p,q))` via the requested route(s), caching the
/// local cohomology of every power and strand it touches.
pub struct BlowupCohomology<'a, K: Field> {
    pub rees: &'a ReesPresentation<K>,
    pub ideal: Ideal<K>,
    pub certs: RouteCertificates,
    pi_cache: BTreeMap<i64, ModuleCohomology>,
    phi_cache: BTreeMap<i64, ModuleCohomology>,
}

fn pad(mut v: Vec<i128>, n: usize) -> Vec<i128> {
    v.resize(n.max(v.len()), 0);
    v
}

impl<'a, K: Field> BlowupCohomology<'a, K> {
    pub fn new(rees: &'a ReesPresentation<K>, ideal: &Ideal<K>, certs: RouteCertificates) -> Result<Self> {
        let gens = ideal.gens().iter().map(|g| g.to_ring(&rees.base)).collect();
        let ideal = Ideal::new(&rees.base, gens)?;
        Ok(BlowupCohomology { rees, ideal, certs, pi_cache: BTreeMap::new(), phi_cache: BTreeMap::new() })
    }

    fn pi_module(&mut self, q: i64) -> Result<&ModuleCohomology> {
        if !self.pi_cache.contains_key(&q) {
            let m = GradedPresentation::from_ideal(&self.ideal.power(q as u32)?)?;
            self.pi_cache.insert(q, ModuleCohomology::new(&m)?);
        }
        Ok(&self.pi_cache[&q])
    }

    fn phi_module(&mut self, p: i64) -> Result<&ModuleCohomology> {
        if !self.phi_cache.contains_key(&p) {
            let s = self.rees.strand_x(p)?;
            self.phi_cache.insert(p, ModuleCohomology::new(&s.presentation)?);
        }
        Ok(&self.phi_cache[&p])
    }

    pub fn pi_allowed(&self, q: i64) -> bool {
        q >= 0 && matches!(self.certs.a_star_pi, Some(a) if q > a)
    }

    pub fn phi_allowed(&self, p: i64) -> bool {
        matches!(self.certs.a_star_phi, Some(a) if p > a)
    }

    /// `h^i(Xtilde, O(p,q))` through the pi route (no certificate check).
    pub fn pi_side(&mut self, p: i64, q: i64) -> Result<Vec<i128>> {
        let d = self.rees.d;
        Ok(self.pi_module(q)?.sheaf(p + d * q))
    }

    /// `h^i(Xtilde, O(p,q))` through the phi route (no certificate check).
    pub fn phi_side(&mut self, p: i64, q: i64) -> Result<Vec<i128>> {
        Ok(self.phi_module(p)?.sheaf(q))
    }

    /// `h^i(Xtilde, O(p,q))` for `i = 0, 1, ...`, refusing uncertified routes.
    pub fn compute(&mut self, p: i64, q: i64, route: Route) -> Result<Vec<i128>> {
        let width = self.rees.nx().max(self.rees.nt());
        match route {
            Route::Pi => {
                if !self.pi_allowed(q) {
                    return Err(Error::NoCertificate(format!("pi route needs q > a*_pi, got q = {q}")));
                }
                Ok(pad(self.pi_side(p, q)?, width))
            }
            Route::Phi => {
                if !self.phi_allowed(p) {
                    return Err(Error::NoCertificate(format!("phi route needs p > a*_phi, got p = {p}")));
                }
                Ok(pad(self.phi_side(p, q)?, width))
            }
            Route::Both => {
                let a = self.compute(p, q, Route::Pi)?;
                let b = self.compute(p, q, Route::Phi)?;
                if a != b {
                    return Err(Error::Invalid(format!("routes disagree at ({p},{q}): {a:?} vs {b:?}")));
                }
                Ok(a)
            }
        }
    }

    /// Sheaf regularity of `R_(p,*)~` on the fiber image.
    pub fn strand_sheaf_reg(&mut self, p: i64) -> Result<ExtInt> {
        Ok(self.phi_module(p)?.sheaf_regularity())
    }

    /// a* of the strand `R_(p,*)` over `k[T]`.
    pub fn strand_a_star(&mut self, p: i64) -> Result<ExtInt> {
        Ok(self.phi_module(p)?.local.a_star())
    }
}

/// `dim [H^i_(x)(R)]_(p,q)` for `q` in a window: local cohomology of the
/// T-strand `R_(*,q)` over `k[x]`, read in x-degree `p`.
pub fn x_local_cohomology_pieces<K: Field>(
    rees: &ReesPresentation<K>,
    p: i64,
    q_window: std::ops::RangeInclusive<i64>,
    i: usize,
) -> Result<Vec<(i64, i128)>> {
    let mut out = Vec::new();
    for q in q_window {
        if q < 0 {
            return Err(Error::Invalid("negative T-strand index".into()));
        }
        let s = rees.strand_t(q)?;
        let t = a_invariants(&s.presentation)?;
        out.push((q, t.dim(i, p)));
    }
    Ok(out)
}

/// `sum_i binom`-style closed form for `h^i(P^n, O(e))`, used as an oracle.
pub fn line_bundle_dims(n: usize, e: i64) -> Vec<i128> {
    let binom = |a: i64, b: i64| -> i128 {
        if a < b || b < 0 {
            return 0;
        }
        let mut r: i128 = 1;
        for k in 0..b {
            r = r * (a - k) as i128 / (k + 1) as i128;
        }
        r
    };
    let mut h = vec![0; n + 1];
    h[0] = binom(n as i64 + e, n as i64);
    h[n] = binom(-e - 1, n as i64);
    if n == 0 {
        h[0] = 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::extint::Finite;
    use crate::kernel::{Rationals, Ring};
    use crate::rees::rees_presentation;

    fn qring(n: usize) -> Arc<Ring<Rationals>> {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        Ring::standard(Rationals, &refs).unwrap()
    }

    #[test]
    fn line_bundles_on_p1() {
        let r = qring(2);
        let s = GradedPresentation::free(&r, vec![0]);
        assert_eq!(sheaf_cohomology_proj(&s, 2).unwrap(), vec![3, 0]);
        assert_eq!(sheaf_cohomology_proj(&s, -2).unwrap(), vec![0, 1]);
    }

    #[test]
    fn line_bundle_goldens() {
        for n in 1..=3usize {
            let r = qring(n + 1);
            let c = ModuleCohomology::new(&GradedPresentation::free(&r, vec![0])).unwrap();
            for e in -8..=8 {
                assert_eq!(c.sheaf(e), line_bundle_dims(n, e), "P^{n}, O({e})");
            }
        }
    }

    #[test]
    fn square_of_maximal_ideal_has_sheaf_o() {
        let r = Ring::standard(Rationals, &["x", "y"]).unwrap();
        let m2 = GradedPresentation::from_ideal(&Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap()).unwrap();
        assert_eq!(m2.hilbert_function(1, 1).unwrap(), vec![0]);
        assert_eq!(sheaf_cohomology_proj(&m2, 1).unwrap(), vec![2, 0]);
        assert_eq!(sheaf_regularity(&m2).unwrap(), Finite(0));
    }

    #[test]
    fn sheaf_regularity_examples() {
        let r = qring(2);
        assert_eq!(sheaf_regularity(&GradedPresentation::free(&r, vec![0])).unwrap(), Finite(0));
        assert_eq!(sheaf_regularity(&GradedPresentation::free(&r, vec![3])).unwrap(), Finite(3));
    }

    #[test]
    fn routes_on_example() {
        let r = Ring::standard(Rationals, &["x", "y"]).unwrap();
        let i = Ideal::parse(&r, &["x^5", "x^4*y", "x*y^4", "y^5"]).unwrap();
        let rees = rees_presentation(&i).unwrap();
        let certs = RouteCertificates { a_star_pi: Some(-1), a_star_phi: Some(-1) };
        let mut bc = BlowupCohomology::new(&rees, &i, certs).unwrap();
        let both = bc.compute(0, 3, Route::Both).unwrap();
        assert_eq!(both.len(), 4);
        assert!(matches!(bc.compute(-1, 3, Route::Phi), Err(Error::NoCertificate(_))));
        // I^q is m-primary, so its sheaf is O_{P^1}
        for q in 1..4 {
            for p in -2..2 {
                assert_eq!(bc.pi_side(p, q).unwrap(), line_bundle_dims(1, p + 5 * q));
            }
        }
        // q = 0: the blowup restricted to O(p,0) is O_{P^1}(p)
        for p in 0..3 {
            assert_eq!(bc.pi_side(p, 0).unwrap(), line_bundle_dims(1, p));
        }
        assert_eq!(bc.strand_a_star(0).unwrap(), Finite(2));
        assert_eq!(bc.strand_a_star(-1).unwrap(), ExtInt::NegInf);
    }

    #[test]
    fn x_local_pieces() {
        let r = Ring::standard(Rationals, &["x", "y"]).unwrap();
        let i = Ideal::parse(&r, &["x^5", "x^4*y", "x*y^4", "y^5"]).unwrap();
        let rees = rees_presentation(&i).unwrap();
        assert!(x_local_cohomology_pieces(&rees, 0, 0..=3, 0).unwrap().iter().all(|(_, d)| *d == 0));
        assert!(x_local_cohomology_pieces(&rees, -2, 0..=3, 0).unwrap().iter().all(|(_, d)| *d == 0));
        // H^1 of the T-strand is (S/I^q) in degree p + dq, nonzero below the strand
        let h1 = x_local_cohomology_pieces(&rees, -2, 1..=2, 1).unwrap();
        for (q, dim) in h1 {
            let quot = GradedPresentation::quotient_ring(&i.power(q as u32).unwrap()).unwrap();
            assert_eq!(dim, quot.hilbert_function(5 * q - 2, 5 * q - 2).unwrap()[0]);
        }
        let h1 = x_local_cohomology_pieces(&rees, 1, 1..=1, 1).unwrap();
        assert_ne!(h1[0].1, 0);
        assert!(x_local_cohomology_pieces(&rees, 2, 1..=1, 1).unwrap()[0].1 == 0);
    }
}
