//! Groebner bases of ideals and of submodules of graded free modules, and the
//! ideal operations built on them.

mod cache;
pub mod engine;
pub mod vector;

use std::sync::{Arc, OnceLock};

pub use cache::{cache_enabled, cache_hits, clear_memory_cache, set_cache_backend, set_cache_enabled, CacheBackend};
pub use engine::{set_verification, verification_stats};
pub use vector::{FreeModule, ModVec, ModuleCtx, Term};

use crate::error::{Error, Result};
use crate::kernel::{parse_polynomial, Field, Grading, Monomial, MonomialOrder, Polynomial, Ring};

/// A reduced Groebner basis of an ideal for the order of its ring.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<K: Field> {
    ring: Arc<Ring<K>>,
    elems: Vec<Polynomial<K>>,
}

impl<K: Field> GroebnerBasis<K> {
    pub fn ring(&self) -> &Arc<Ring<K>> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial<K>] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().filter_map(|p| p.leading_monomial().cloned()).collect()
    }

    /// True when the basis contains a constant.
    pub fn is_unit(&self) -> bool {
        self.elems.iter().any(|p| p.is_constant())
    }

    pub fn normal_form(&self, f: &Polynomial<K>) -> Polynomial<K> {
        normal_form(f, self)
    }

    pub fn contains(&self, f: &Polynomial<K>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Exhaustive Buchberger criterion on this basis.
    pub fn check_criterion(&self) -> bool {
        let m = FreeModule::new(vec![0]);
        let ctx = ModuleCtx::new(&self.ring, &m);
        let vs: Vec<ModVec<K>> = self.elems.iter().map(|p| ctx.from_columns(std::slice::from_ref(p))).collect();
        engine::is_groebner_basis(&ctx, &vs)
    }
}

/// Remainder of `f` on division by a Groebner basis.
pub fn normal_form<K: Field>(f: &Polynomial<K>, gb: &GroebnerBasis<K>) -> Polynomial<K> {
    let ring = &gb.ring;
    let f = if f.ring() == ring { f.clone() } else { f.to_ring(ring) };
    let m = FreeModule::new(vec![0]);
    let ctx = ModuleCtx::new(ring, &m);
    let vs: Vec<ModVec<K>> = gb.elems.iter().map(|p| ctx.from_columns(std::slice::from_ref(p))).collect();
    let r = engine::normal_form(&ctx, &vs, ctx.from_columns(std::slice::from_ref(&f)));
    ctx.to_columns(&r, 1).pop().expect("rank one")
}

/// A homogeneous ideal given by generators. The Groebner basis for the
/// ring's order is computed on demand and memoized.
#[derive(Debug)]
pub struct Ideal<K: Field> {
    ring: Arc<Ring<K>>,
    gens: Vec<Polynomial<K>>,
    gb: OnceLock<Arc<GroebnerBasis<K>>>,
}

impl<K: Field> Clone for Ideal<K> {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb }
    }
}

impl<K: Field> Ideal<K> {
    /// Zero generators are dropped; the rest must be homogeneous.
    pub fn new(ring: &Arc<Ring<K>>, gens: Vec<Polynomial<K>>) -> Result<Self> {
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::Invalid(format!("generator `{g}` is not homogeneous")));
            }
            out.push(if g.ring() == ring { g } else { g.to_ring(ring) });
        }
        Ok(Ideal { ring: ring.clone(), gens: out, gb: OnceLock::new() })
    }

    pub fn parse(ring: &Arc<Ring<K>>, gens: &[&str]) -> Result<Self> {
        let ps = gens.iter().map(|s| parse_polynomial(s, ring)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, ps)
    }

    pub fn zero(ring: &Arc<Ring<K>>) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: &Arc<Ring<K>>) -> Self {
        Ideal { ring: ring.clone(), gens: vec![Polynomial::one(ring)], gb: OnceLock::new() }
    }

    pub fn ring(&self) -> &Arc<Ring<K>> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<K>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.len() == 1)
    }

    /// Common degree of the generators, if they all share one.
    pub fn equigenerated_degree(&self) -> Option<i64> {
        let d = self.gens.first()?.degree()?;
        self.gens.iter().all(|g| g.degree() == Some(d)).then_some(d)
    }

    pub fn groebner_basis(&self) -> Result<Arc<GroebnerBasis<K>>> {
        if let Some(g) = self.gb.get() {
            return Ok(g.clone());
        }
        let g = Arc::new(buchberger_in(&self.ring, &self.gens)?);
        let _ = self.gb.set(g.clone());
        Ok(g)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.is_unit())
    }

    pub fn contains(&self, f: &Polynomial<K>) -> Result<bool> {
        Ok(self.groebner_basis()?.contains(f))
    }

    pub fn contains_ideal(&self, other: &Ideal<K>) -> Result<bool> {
        let gb = self.groebner_basis()?;
        Ok(other.gens.iter().all(|g| gb.contains(g)))
    }

    pub fn equals(&self, other: &Ideal<K>) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// Same ideal with a minimal homogeneous generating set.
    pub fn minimalize(&self) -> Result<Ideal<K>> {
        let gens = if self.gens.is_empty() {
            Vec::new()
        } else if self.is_monomial() {
            minimal_monomial_gens(&self.gens)
        } else {
            let idx = mingens(&self.ring, &[0], &self.gens.iter().map(|g| vec![g.clone()]).collect::<Vec<_>>())?;
            idx.into_iter().map(|i| self.gens[i].make_monic()).collect()
        };
        Ideal::new(&self.ring, gens)
    }

    /// Product of two ideals (generators are all pairwise products).
    pub fn product(&self, other: &Ideal<K>) -> Result<Ideal<K>> {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b).make_monic());
            }
        }
        dedup(&mut gens);
        Ideal::new(&self.ring, gens)
    }

    pub fn power(&self, q: u32) -> Result<Ideal<K>> {
        ideal_power(self, q)
    }

    pub fn quotient(&self, j: &Ideal<K>) -> Result<Ideal<K>> {
        quotient(self, j)
    }

    pub fn saturate(&self, j: &Ideal<K>) -> Result<Ideal<K>> {
        saturate(self, j)
    }

    pub fn intersect(&self, j: &Ideal<K>) -> Result<Ideal<K>> {
        intersect(self, j)
    }
}

fn dedup<K: Field>(gens: &mut Vec<Polynomial<K>>) {
    let mut seen = std::collections::HashSet::new();
    gens.retain(|g| seen.insert(g.render()));
}

fn minimal_monomial_gens<K: Field>(gens: &[Polynomial<K>]) -> Vec<Polynomial<K>> {
    let mut ms: Vec<&Monomial> = gens.iter().filter_map(|g| g.leading_monomial()).collect();
    ms.sort_by_key(|m| m.degree());
    ms.dedup();
    let mut keep: Vec<&Monomial> = Vec::new();
    for m in ms {
        if !keep.iter().any(|k| k.divides(m)) {
            keep.push(m);
        }
    }
    let ring = gens[0].ring();
    let mut out: Vec<Polynomial<K>> = keep.into_iter().map(|m| Polynomial::monomial(ring, m.clone())).collect();
    out.sort_by(|a, b| {
        let (ma, mb) = (a.leading_monomial().expect("monomial"), b.leading_monomial().expect("monomial"));
        ring.cmp_monomials(mb, ma)
    });
    out
}

fn buchberger_in<K: Field>(ring: &Arc<Ring<K>>, gens: &[Polynomial<K>]) -> Result<GroebnerBasis<K>> {
    let key = cache::key(ring, ring.order(), gens);
    if let Some(strs) = cache::lookup(&key) {
        if let Ok(elems) = strs.iter().map(|s| parse_polynomial(s, ring)).collect::<Result<Vec<_>>>() {
            return Ok(GroebnerBasis { ring: ring.clone(), elems });
        }
        log::warn!("ignoring unreadable cache entry {key}");
    }
    let m = FreeModule::new(vec![0]);
    let ctx = ModuleCtx::new(ring, &m);
    let inputs: Vec<ModVec<K>> = gens.iter().map(|g| ctx.from_columns(std::slice::from_ref(g))).collect();
    let out = engine::run(&ctx, inputs)?;
    let elems: Vec<Polynomial<K>> = out.basis.iter().map(|v| ctx.to_columns(v, 1).pop().expect("rank one")).collect();
    let gb = GroebnerBasis { ring: ring.clone(), elems };
    cache::insert(&key, gb.elems.iter().map(|p| p.render()).collect());
    Ok(gb)
}

/// Reduced Groebner basis of `ideal` for `order`, in the ring with that order.
pub fn buchberger<K: Field>(ideal: &Ideal<K>, order: MonomialOrder) -> Result<GroebnerBasis<K>> {
    if order == ideal.ring.order() {
        return Ok((*ideal.groebner_basis()?).clone());
    }
    let ring = ideal.ring.with_order(order)?;
    let gens: Vec<Polynomial<K>> = ideal.gens.iter().map(|g| g.to_ring(&ring)).collect();
    buchberger_in(&ring, &gens)
}

/// Reduced Groebner basis of a submodule of `F = (+) S(-twists[i])` given by
/// columns (one polynomial per component).
#[derive(Debug, Clone)]
pub struct ModuleBasis<K: Field> {
    pub ring: Arc<Ring<K>>,
    pub module: FreeModule,
    pub basis: Vec<ModVec<K>>,
}

impl<K: Field> ModuleBasis<K> {
    /// (component, lead monomial) for every basis element.
    pub fn leads(&self) -> Vec<(usize, Monomial)> {
        self.basis.iter().map(|v| (v[0].comp as usize, v[0].m.clone())).collect()
    }

    pub fn normal_form(&self, col: &[Polynomial<K>]) -> Vec<Polynomial<K>> {
        let ctx = ModuleCtx::new(&self.ring, &self.module);
        let r = engine::normal_form(&ctx, &self.basis, ctx.from_columns(col));
        ctx.to_columns(&r, self.module.rank())
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial<K>>> {
        let ctx = ModuleCtx::new(&self.ring, &self.module);
        self.basis.iter().map(|v| ctx.to_columns(v, self.module.rank())).collect()
    }
}

fn check_columns<K: Field>(ctx: &ModuleCtx<'_, K>, cols: &[Vec<Polynomial<K>>]) -> Result<Vec<ModVec<K>>> {
    let rank = ctx.module.rank();
    cols.iter()
        .map(|c| {
            if c.len() != rank {
                return Err(Error::Invalid(format!("column of length {} in rank {rank}", c.len())));
            }
            let v = ctx.from_columns(c);
            if !ctx.is_homogeneous(&v) {
                return Err(Error::Invalid("inhomogeneous column".into()));
            }
            Ok(v)
        })
        .collect()
}

pub fn module_basis<K: Field>(
    ring: &Arc<Ring<K>>,
    twists: &[i64],
    cols: &[Vec<Polynomial<K>>],
) -> Result<ModuleBasis<K>> {
    let module = FreeModule::new(twists.to_vec());
    let ctx = ModuleCtx::new(ring, &module);
    let inputs = check_columns(&ctx, cols)?;
    let out = engine::run(&ctx, inputs)?;
    Ok(ModuleBasis { ring: ring.clone(), module: module.clone(), basis: out.basis })
}

/// Indices of a minimal generating subset of the given homogeneous columns.
pub fn mingens<K: Field>(ring: &Arc<Ring<K>>, twists: &[i64], cols: &[Vec<Polynomial<K>>]) -> Result<Vec<usize>> {
    let module = FreeModule::new(twists.to_vec());
    let ctx = ModuleCtx::new(ring, &module);
    let inputs = check_columns(&ctx, cols)?;
    let mut idx = engine::run(&ctx, inputs)?.minimal;
    idx.sort_unstable();
    Ok(idx)
}

/// Relations among homogeneous columns.
#[derive(Debug, Clone)]
pub struct SyzygyMatrix<K: Field> {
    pub ring: Arc<Ring<K>>,
    /// Each column has one entry per input column.
    pub columns: Vec<Vec<Polynomial<K>>>,
    /// Degree of each column.
    pub twists: Vec<i64>,
}

/// Groebner basis of the syzygy module of `cols`, whose `i`-th column has
/// degree `degrees[i]` (needed when a column is zero).
pub fn syzygy_basis<K: Field>(
    ring: &Arc<Ring<K>>,
    twists: &[i64],
    cols: &[Vec<Polynomial<K>>],
    degrees: &[i64],
) -> Result<ModuleBasis<K>> {
    let r = twists.len();
    let mut ext = twists.to_vec();
    ext.extend_from_slice(degrees);
    let module = FreeModule { twists: ext, split: Some(r) };
    let ctx = ModuleCtx::new(ring, &module);
    let mut inputs = Vec::with_capacity(cols.len());
    for (i, c) in cols.iter().enumerate() {
        if c.len() != r {
            return Err(Error::Invalid(format!("column of length {} in rank {r}", c.len())));
        }
        let mut full = c.clone();
        full.resize(r + cols.len(), Polynomial::zero(ring));
        full[r + i] = Polynomial::one(ring);
        let v = ctx.from_columns(&full);
        if !ctx.is_homogeneous(&v) {
            return Err(Error::Invalid(format!("column {i} is not homogeneous of degree {}", degrees[i])));
        }
        inputs.push(v);
    }
    let out = engine::run(&ctx, inputs)?;
    let syz: Vec<ModVec<K>> = out
        .basis
        .into_iter()
        .filter(|v| v[0].comp as usize >= r)
        .map(|v| v.into_iter().map(|t| Term { c: t.c, m: t.m, comp: t.comp - r as u32 }).collect())
        .collect();
    Ok(ModuleBasis { ring: ring.clone(), module: FreeModule::new(degrees.to_vec()), basis: syz })
}

/// Minimal generators of the syzygy module of `cols`.
pub fn syzygy_columns<K: Field>(
    ring: &Arc<Ring<K>>,
    twists: &[i64],
    cols: &[Vec<Polynomial<K>>],
    degrees: &[i64],
) -> Result<SyzygyMatrix<K>> {
    let gb = syzygy_basis(ring, twists, cols, degrees)?;
    let ctx = ModuleCtx::new(ring, &gb.module);
    let all: Vec<Vec<Polynomial<K>>> = gb.columns();
    let inputs: Vec<ModVec<K>> = gb.basis.clone();
    let minimal = engine::run(&ctx, inputs)?.minimal;
    let mut idx = minimal;
    idx.sort_unstable();
    let twists_out = idx.iter().map(|&i| ctx.degree(&gb.basis[i]).expect("nonzero")).collect();
    Ok(SyzygyMatrix { ring: ring.clone(), columns: idx.iter().map(|&i| all[i].clone()).collect(), twists: twists_out })
}

/// First syzygies of an ordered list of homogeneous polynomials.
pub fn syzygies<K: Field>(gens: &[Polynomial<K>]) -> Result<SyzygyMatrix<K>> {
    let ring =
        gens.first().map(|g| g.ring().clone()).ok_or_else(|| Error::Invalid("syzygies of an empty list".into()))?;
    let mut degrees = Vec::with_capacity(gens.len());
    for g in gens {
        if !g.is_homogeneous() {
            return Err(Error::Invalid(format!("`{g}` is not homogeneous")));
        }
        degrees.push(g.degree().unwrap_or(0));
    }
    let cols: Vec<Vec<Polynomial<K>>> = gens.iter().map(|g| vec![g.clone()]).collect();
    syzygy_columns(&ring, &[0], &cols, &degrees)
}

/// `I^q`, minimally generated. `I^0 = (1)`.
pub fn ideal_power<K: Field>(ideal: &Ideal<K>, q: u32) -> Result<Ideal<K>> {
    let mut p = Ideal::unit(&ideal.ring);
    let base = ideal.minimalize()?;
    for _ in 0..q {
        p = p.product(&base)?.minimalize()?;
    }
    Ok(p)
}

/// `I^1, ..., I^qmax`, each minimally generated.
pub fn ideal_powers<K: Field>(ideal: &Ideal<K>, qmax: u32) -> Result<Vec<Ideal<K>>> {
    let base = ideal.minimalize()?;
    let mut out: Vec<Ideal<K>> = Vec::with_capacity(qmax as usize);
    for _ in 0..qmax {
        let next = match out.last() {
            None => base.clone(),
            Some(prev) => prev.product(&base)?.minimalize()?,
        };
        out.push(next);
    }
    Ok(out)
}

/// `I : (g)`.
pub fn quotient_by<K: Field>(ideal: &Ideal<K>, g: &Polynomial<K>) -> Result<Ideal<K>> {
    let ring = &ideal.ring;
    if g.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    if ideal.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let dg = g.degree().expect("nonzero");
    let mut cols = vec![vec![g.clone()]];
    let mut degrees = vec![dg];
    for f in &ideal.gens {
        cols.push(vec![f.clone()]);
        degrees.push(f.degree().expect("nonzero"));
    }
    let syz = syzygy_basis(ring, &[0], &cols, &degrees)?;
    let gens = syz.columns().into_iter().map(|c| c[0].clone()).filter(|p| !p.is_zero()).collect();
    Ideal::new(ring, gens)?.minimalize()
}

/// `I : J`.
pub fn quotient<K: Field>(i: &Ideal<K>, j: &Ideal<K>) -> Result<Ideal<K>> {
    let mut acc: Option<Ideal<K>> = None;
    for g in &j.gens {
        let q = quotient_by(i, g)?;
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(&i.ring)))
}

/// `I : J^infinity`, by iterated quotients.
pub fn saturate<K: Field>(i: &Ideal<K>, j: &Ideal<K>) -> Result<Ideal<K>> {
    let mut cur = i.clone();
    loop {
        i.ring.budget().check_time()?;
        let next = quotient(&cur, j)?;
        if cur.contains_ideal(&next)? {
            return Ok(cur);
        }
        cur = next;
    }
}

/// `I ∩ J`.
pub fn intersect<K: Field>(i: &Ideal<K>, j: &Ideal<K>) -> Result<Ideal<K>> {
    let ring = &i.ring;
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let a = i.gens.len();
    let all: Vec<&Polynomial<K>> = i.gens.iter().chain(j.gens.iter()).collect();
    let cols: Vec<Vec<Polynomial<K>>> = all.iter().map(|g| vec![(*g).clone()]).collect();
    let degrees: Vec<i64> = all.iter().map(|g| g.degree().expect("nonzero")).collect();
    let syz = syzygy_basis(ring, &[0], &cols, &degrees)?;
    let mut gens = Vec::new();
    for c in syz.columns() {
        let mut s = Polynomial::zero(ring);
        for (k, coef) in c.iter().take(a).enumerate() {
            s = s.add(&coef.mul(&i.gens[k]));
        }
        if !s.is_zero() {
            gens.push(s);
        }
    }
    Ideal::new(ring, gens)?.minimalize()
}

/// `I ∩ k[remaining variables]`, in a ring on the remaining variables that
/// keeps their weights and uses grevlex.
pub fn eliminate<K: Field>(ideal: &Ideal<K>, block: &[usize]) -> Result<Ideal<K>> {
    let ring = &ideal.ring;
    let rest: Vec<usize> = (0..ring.nvars()).filter(|v| !block.contains(v)).collect();
    let names = rest.iter().map(|&v| ring.names()[v].clone()).collect();
    let grading = if ring.is_standard_graded() {
        Grading::Standard
    } else {
        Grading::Weighted(rest.iter().map(|&v| ring.weights()[v]).collect())
    };
    let target = ring.derived(names, grading, MonomialOrder::Grevlex)?;
    eliminate_into(ideal, block, &target)
}

/// Like [`eliminate`], with an explicit target ring whose variables are the
/// remaining ones in their original order.
pub fn eliminate_into<K: Field>(ideal: &Ideal<K>, block: &[usize], target: &Arc<Ring<K>>) -> Result<Ideal<K>> {
    let ring = &ideal.ring;
    let n = ring.nvars();
    if block.iter().any(|&v| v >= n) {
        return Err(Error::Invalid("elimination variable out of range".into()));
    }
    let rest: Vec<usize> = (0..n).filter(|v| !block.contains(v)).collect();
    if target.nvars() != rest.len() {
        return Err(Error::Invalid("target ring does not match the remaining variables".into()));
    }
    let perm: Vec<usize> = block.iter().copied().chain(rest.iter().copied()).collect();
    let names = perm.iter().map(|&v| ring.names()[v].clone()).collect();
    let weights = perm.iter().map(|&v| ring.weights()[v]).collect();
    let elim = ring.derived(names, Grading::Weighted(weights), MonomialOrder::BlockElimination(block.len()))?;
    let gens: Vec<Polynomial<K>> =
        ideal.gens.iter().map(|g| g.map_exponents(&elim, |e| perm.iter().map(|&v| e[v]).collect())).collect();
    let gb = buchberger_in(&elim, &gens)?;
    let k = block.len();
    let out: Vec<Polynomial<K>> = gb
        .elems
        .iter()
        .filter(|p| p.terms().iter().all(|(_, m)| m.exps()[..k].iter().all(|e| *e == 0)))
        .map(|p| p.map_exponents(target, |e| e[k..].to_vec()))
        .collect();
    Ideal::new(target, out)?.minimalize()
}

#[cfg(test)]
mod tests;
