use super::{
    free_resolution, minimal_presentation, series_of_quotient, GradedPresentation, HilbertSeries, Matrix, Resolution,
};
use crate::error::{Error, Result};
use crate::extint::{ExtInt, Finite, NegInf};
use crate::groebner;
use crate::kernel::{Field, Polynomial};

fn transpose<K: Field>(m: &Matrix<K>, rows: usize) -> Matrix<K> {
    (0..rows).map(|r| m.iter().map(|col| col[r].clone()).collect()).collect()
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

/// Hilbert series of `Ext^j(M, S)` computed from a minimal resolution of
/// `M` as `HS(F_j^* / B) - HS(F_j^* / Z)`.
pub fn ext_series<K: Field>(res: &Resolution<K>, j: usize) -> Result<HilbertSeries> {
    let ring = &res.ring;
    let weights = ring.weights().to_vec();
    let zero = HilbertSeries { numerator: super::Laurent::zero(), weights: weights.clone() };
    if j >= res.twists.len() || res.twists[j].is_empty() {
        return Ok(zero);
    }
    let fj = neg(&res.twists[j]);
    let rank = fj.len();
    let b_series = if j == 0 {
        HilbertSeries::from_leads(&weights, &fj, &Default::default())
    } else {
        let bcols = transpose(&res.maps[j - 1], res.twists[j - 1].len());
        let gb = groebner::module_basis(ring, &fj, &bcols)?;
        series_of_quotient(ring, &fj, &gb)
    };
    let z_series = if j < res.maps.len() {
        let next = neg(&res.twists[j + 1]);
        let zcols = transpose(&res.maps[j], rank);
        let gb = groebner::syzygy_basis(ring, &next, &zcols, &fj)?;
        series_of_quotient(ring, &fj, &gb)
    } else {
        zero
    };
    Ok(b_series.sub(&z_series))
}

/// `Ext^i(M, S)` as a graded presentation, minimally presented.
pub fn ext_module<K: Field>(m: &GradedPresentation<K>, i: usize) -> Result<GradedPresentation<K>> {
    let ring = &m.ring;
    if i > ring.nvars() {
        return Err(Error::Invalid(format!("Ext index {i} exceeds the number of variables")));
    }
    let res = free_resolution(m)?;
    if i >= res.twists.len() || res.twists[i].is_empty() {
        return Ok(GradedPresentation::free(ring, Vec::new()));
    }
    let fi = neg(&res.twists[i]);
    let rank = fi.len();
    // cycles
    let (zcols, zdeg): (Matrix<K>, Vec<i64>) = if i < res.maps.len() {
        let next = neg(&res.twists[i + 1]);
        let s = groebner::syzygy_columns(ring, &next, &transpose(&res.maps[i], rank), &fi)?;
        (s.columns, s.twists)
    } else {
        let cols = (0..rank)
            .map(|k| (0..rank).map(|r| if r == k { Polynomial::one(ring) } else { Polynomial::zero(ring) }).collect())
            .collect();
        (cols, fi.clone())
    };
    if zcols.is_empty() {
        return Ok(GradedPresentation::free(ring, Vec::new()));
    }
    // boundaries
    let (bcols, bdeg): (Matrix<K>, Vec<i64>) = if i == 0 {
        (Vec::new(), Vec::new())
    } else {
        (transpose(&res.maps[i - 1], res.twists[i - 1].len()), neg(&res.twists[i - 1]))
    };
    let s = zcols.len();
    let mut all = zcols;
    all.extend(bcols);
    let mut degs = zdeg.clone();
    degs.extend(bdeg);
    let syz = groebner::syzygy_basis(ring, &fi, &all, &degs)?;
    let rels: Matrix<K> = syz.columns().into_iter().map(|c| c[..s].to_vec()).collect();
    let p = GradedPresentation::new(ring, zdeg, rels)?;
    minimal_presentation(&p)
}

/// Local cohomology with support in the homogeneous maximal ideal, through
/// graded local duality.
#[derive(Debug, Clone)]
pub struct LocalCohomologyTable {
    pub nvars: usize,
    pub weight_sum: i64,
    /// `a^i(M)` for `i = 0..=nvars`.
    pub a: Vec<ExtInt>,
    /// Hilbert series of `Ext^(nvars - i)(M, S)`, indexed by `i`.
    pub ext: Vec<HilbertSeries>,
    /// Regularity read off the Betti table.
    pub reg_betti: ExtInt,
}

impl LocalCohomologyTable {
    pub fn a_inv(&self, i: usize) -> ExtInt {
        self.a.get(i).copied().unwrap_or(NegInf)
    }

    pub fn a_star(&self) -> ExtInt {
        ExtInt::max_of(self.a.iter().copied())
    }

    /// `max_i (a^i + i)`.
    pub fn reg(&self) -> ExtInt {
        ExtInt::max_of(self.a.iter().enumerate().map(|(i, a)| a.plus(i as i64)))
    }

    /// `dim_k [H^i(M)]_n`.
    pub fn dim(&self, i: usize, n: i64) -> i128 {
        match self.ext.get(i) {
            Some(e) => e.value(-n - self.weight_sum),
            None => 0,
        }
    }

    /// `(i, n, dim)` for every nonzero entry with `n` in `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<(usize, i64, i128)> {
        let mut out = Vec::new();
        for i in 0..self.ext.len() {
            for n in lo..=hi {
                let d = self.dim(i, n);
                if d != 0 {
                    out.push((i, n, d));
                }
            }
        }
        out
    }

    /// Smallest `i` with nonvanishing local cohomology.
    pub fn depth(&self) -> Option<usize> {
        self.a.iter().position(|a| !a.is_neg_inf())
    }
}

pub fn a_invariants<K: Field>(m: &GradedPresentation<K>) -> Result<LocalCohomologyTable> {
    let res = free_resolution(m)?;
    local_from_resolution(&res)
}

pub(crate) fn local_from_resolution<K: Field>(res: &Resolution<K>) -> Result<LocalCohomologyTable> {
    let ring = &res.ring;
    let n = ring.nvars();
    let ws = ring.weight_sum();
    let mut a = Vec::with_capacity(n + 1);
    let mut ext = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let e = ext_series(res, n - i)?;
        a.push(match e.initial_degree() {
            Finite(d) => Finite(-d - ws),
            NegInf => NegInf,
        });
        ext.push(e);
    }
    let reg_betti = if res.projective_dimension().is_some() { res.betti_table().regularity() } else { NegInf };
    let t = LocalCohomologyTable { nvars: n, weight_sum: ws, a, ext, reg_betti };
    if ring.is_standard_graded() && t.reg() != reg_betti {
        return Err(Error::Invalid(format!(
            "regularity cross-check failed: local cohomology gives {}, Betti table gives {reg_betti}",
            t.reg()
        )));
    }
    Ok(t)
}

/// Depth, dimension and the Cohen-Macaulay and Gorenstein properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthInfo {
    pub depth: usize,
    pub dim: usize,
    pub pd: usize,
    pub is_cm: bool,
    pub is_gorenstein: bool,
}

pub fn depth_and_cm<K: Field>(m: &GradedPresentation<K>) -> Result<DepthInfo> {
    let res = free_resolution(m)?;
    let pd = res.projective_dimension().ok_or(Error::ZeroModule)?;
    let dim = m.dimension()?.ok_or(Error::ZeroModule)?;
    let depth = m.ring.nvars() - pd;
    let is_cm = depth == dim;
    let is_gorenstein = is_cm && res.twists[pd].len() == 1;
    Ok(DepthInfo { depth, dim, pd, is_cm, is_gorenstein })
}

/// Canonical module `Ext^c(M, S)(-sum of weights)` of a Cohen-Macaulay
/// module of codimension `c`.
pub fn canonical_module<K: Field>(m: &GradedPresentation<K>) -> Result<GradedPresentation<K>> {
    let info = depth_and_cm(m)?;
    if !info.is_cm {
        return Err(Error::NotCohenMacaulay);
    }
    let c = m.ring.nvars() - info.dim;
    Ok(ext_module(m, c)?.shift(-m.ring.weight_sum()))
}
