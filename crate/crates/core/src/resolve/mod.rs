//! Graded presentations, minimal free resolutions, Betti tables, Hilbert
//! series, Ext modules and local cohomology through graded local duality.

mod hilbert;
mod local;
mod prune;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

pub use hilbert::{monomial_numerator, HilbertPolynomial, HilbertSeries, Laurent};
pub use local::{
    a_invariants, canonical_module, depth_and_cm, ext_module, ext_series, DepthInfo, LocalCohomologyTable,
};
pub use prune::{prune_units, Matrix};

use crate::error::{Error, Result};
use crate::extint::{ExtInt, Finite, NegInf};
use crate::groebner::{self, Ideal};
use crate::kernel::{Field, Polynomial, Ring};

/// A graded module `F / N` with `F = (+) S(-gens[i])` and `N` generated by
/// the homogeneous columns of `relations`.
#[derive(Debug, Clone)]
pub struct GradedPresentation<K: Field> {
    pub ring: Arc<Ring<K>>,
    /// Degrees of the generators.
    pub gens: Vec<i64>,
    pub relations: Matrix<K>,
    /// Degree of each relation column.
    pub rel_degrees: Vec<i64>,
}

fn column_degree<K: Field>(gens: &[i64], col: &[Polynomial<K>]) -> Result<Option<i64>> {
    let mut deg: Option<i64> = None;
    for (r, e) in col.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        if !e.is_homogeneous() {
            return Err(Error::Invalid(format!("relation entry `{e}` is not homogeneous")));
        }
        let d = e.degree().expect("nonzero") + gens[r];
        match deg {
            None => deg = Some(d),
            Some(d0) if d0 != d => return Err(Error::Invalid("relation column is not homogeneous".into())),
            _ => {}
        }
    }
    Ok(deg)
}

impl<K: Field> GradedPresentation<K> {
    /// Builds a presentation; zero columns are dropped.
    pub fn new(ring: &Arc<Ring<K>>, gens: Vec<i64>, relations: Matrix<K>) -> Result<Self> {
        let mut rels = Vec::new();
        let mut degs = Vec::new();
        for col in relations {
            if col.len() != gens.len() {
                return Err(Error::Invalid(format!("relation of length {} for {} generators", col.len(), gens.len())));
            }
            if let Some(d) = column_degree(&gens, &col)? {
                rels.push(col);
                degs.push(d);
            }
        }
        Ok(GradedPresentation { ring: ring.clone(), gens, relations: rels, rel_degrees: degs })
    }

    pub fn free(ring: &Arc<Ring<K>>, twists: Vec<i64>) -> Self {
        GradedPresentation { ring: ring.clone(), gens: twists, relations: Vec::new(), rel_degrees: Vec::new() }
    }

    /// `S / I`.
    pub fn quotient_ring(ideal: &Ideal<K>) -> Result<Self> {
        let cols = ideal.gens().iter().map(|g| vec![g.clone()]).collect();
        Self::new(ideal.ring(), vec![0], cols)
    }

    /// The ideal `I` as a module: generated by a minimal generating set, with
    /// their syzygies as relations.
    pub fn from_ideal(ideal: &Ideal<K>) -> Result<Self> {
        let m = ideal.minimalize()?;
        if m.is_zero() {
            return Ok(Self::free(ideal.ring(), Vec::new()));
        }
        let syz = groebner::syzygies(m.gens())?;
        let gens = m.gens().iter().map(|g| g.degree().expect("nonzero")).collect();
        Ok(GradedPresentation { ring: ideal.ring().clone(), gens, relations: syz.columns, rel_degrees: syz.twists })
    }

    /// `M(k)`: the same module with degrees lowered by `k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut m = self.clone();
        m.gens.iter_mut().for_each(|g| *g -= k);
        m.rel_degrees.iter_mut().for_each(|g| *g -= k);
        m
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    /// Groebner basis of the relation module.
    pub fn relation_basis(&self) -> Result<groebner::ModuleBasis<K>> {
        groebner::module_basis(&self.ring, &self.gens, &self.relations)
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        let gb = self.relation_basis()?;
        Ok(series_of_quotient(&self.ring, &self.gens, &gb))
    }

    /// `dim_k M_n` for `n` in `lo..=hi`.
    pub fn hilbert_function(&self, lo: i64, hi: i64) -> Result<Vec<i128>> {
        Ok(self.hilbert_series()?.values(lo, hi))
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.hilbert_series()?.is_zero())
    }

    /// Krull dimension, `None` for the zero module.
    pub fn dimension(&self) -> Result<Option<usize>> {
        Ok(self.hilbert_series()?.dimension())
    }
}

pub(crate) fn series_of_quotient<K: Field>(
    ring: &Ring<K>,
    twists: &[i64],
    gb: &groebner::ModuleBasis<K>,
) -> HilbertSeries {
    let mut leads: BTreeMap<usize, Vec<Vec<u16>>> = BTreeMap::new();
    for (c, m) in gb.leads() {
        leads.entry(c).or_default().push(m.exps().to_vec());
    }
    HilbertSeries::from_leads(ring.weights(), twists, &leads)
}

/// Prunes unit entries, then keeps a minimal generating set of relations.
pub fn minimal_presentation<K: Field>(m: &GradedPresentation<K>) -> Result<GradedPresentation<K>> {
    let mut maps = vec![m.relations.clone()];
    let mut labels = vec![m.gens.clone(), m.rel_degrees.clone()];
    prune_units(&mut maps, &mut labels);
    let rels = maps.pop().expect("one map");
    let rel_degrees = labels.pop().expect("relation labels");
    let gens = labels.pop().expect("generator labels");
    let keep: Vec<usize> = if rels.is_empty() { Vec::new() } else { groebner::mingens(&m.ring, &gens, &rels)? };
    Ok(GradedPresentation {
        ring: m.ring.clone(),
        gens,
        relations: keep.iter().map(|&i| rels[i].clone()).collect(),
        rel_degrees: keep.iter().map(|&i| rel_degrees[i]).collect(),
    })
}

/// Minimal graded free resolution
/// `0 <- F_0 <- F_1 <- ... <- F_p <- 0`.
#[derive(Debug, Clone)]
pub struct Resolution<K: Field> {
    pub ring: Arc<Ring<K>>,
    /// Generator degrees of each `F_i`.
    pub twists: Vec<Vec<i64>>,
    /// `maps[i] : F_(i+1) -> F_i`, stored by columns.
    pub maps: Vec<Matrix<K>>,
}

impl<K: Field> Resolution<K> {
    /// Projective dimension; `None` for the zero module.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.twists.iter().rposition(|t| !t.is_empty())
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, ts) in self.twists.iter().enumerate() {
            for t in ts {
                *entries.entry((i, *t)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    /// True when every composite of consecutive maps vanishes.
    pub fn composites_vanish(&self) -> bool {
        for i in 0..self.maps.len().saturating_sub(1) {
            let (a, b) = (&self.maps[i], &self.maps[i + 1]);
            for col in b {
                for r in 0..self.twists[i].len() {
                    let mut acc = Polynomial::zero(&self.ring);
                    for (k, e) in col.iter().enumerate() {
                        if !e.is_zero() {
                            acc = acc.add(&a[k][r].mul(e));
                        }
                    }
                    if !acc.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// True when no map has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().flatten().flatten().all(|e| e.is_zero() || !e.is_constant())
    }
}

pub fn free_resolution<K: Field>(m: &GradedPresentation<K>) -> Result<Resolution<K>> {
    let p = minimal_presentation(m)?;
    let ring = p.ring.clone();
    let mut twists = vec![p.gens.clone()];
    let mut maps: Vec<Matrix<K>> = Vec::new();
    if p.gens.is_empty() {
        return Ok(Resolution { ring, twists, maps });
    }
    let mut cur_cols = p.relations;
    let mut cur_degs = p.rel_degrees;
    let mut prev_twists = p.gens;
    while !cur_cols.is_empty() {
        ring.budget().check_time()?;
        if maps.len() > ring.nvars() {
            return Err(Error::Invalid("resolution longer than the number of variables".into()));
        }
        let syz = groebner::syzygy_columns(&ring, &prev_twists, &cur_cols, &cur_degs)?;
        twists.push(cur_degs.clone());
        maps.push(cur_cols);
        prev_twists = cur_degs;
        cur_cols = syz.columns;
        cur_degs = syz.twists;
    }
    Ok(Resolution { ring, twists, maps })
}

/// Graded Betti numbers `beta_(i,j)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Total Betti number of homological degree `i`.
    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|((h, _), _)| *h == i).map(|(_, v)| *v).sum()
    }

    /// `max { j - i : beta_(i,j) != 0 }`.
    pub fn regularity(&self) -> ExtInt {
        ExtInt::max_of(self.entries.keys().map(|(i, j)| Finite(j - *i as i64)))
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(pd) = self.projective_dimension() else {
            return write!(f, "(zero module)");
        };
        let rows: BTreeSet<i64> = self.entries.keys().map(|(i, j)| j - *i as i64).collect();
        write!(f, "      ")?;
        for i in 0..=pd {
            write!(f, "{i:>5}")?;
        }
        writeln!(f)?;
        for r in rows {
            write!(f, "{r:>5}:")?;
            for i in 0..=pd {
                match self.get(i, r + i as i64) {
                    0 => write!(f, "{:>5}", "-")?,
                    b => write!(f, "{b:>5}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Castelnuovo-Mumford regularity from the Betti table; `-inf` for the
/// zero module.
pub fn regularity_betti<K: Field>(m: &GradedPresentation<K>) -> Result<ExtInt> {
    let r = free_resolution(m)?;
    if r.projective_dimension().is_none() {
        return Ok(NegInf);
    }
    Ok(r.betti_table().regularity())
}
