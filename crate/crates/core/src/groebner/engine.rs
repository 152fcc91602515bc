//! Homogeneous Buchberger algorithm for submodules of graded free modules.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering as AtomicOrdering};

use super::vector::{ModVec, ModuleCtx};
use crate::error::{Error, Result};
use crate::kernel::{Field, Monomial};

static VERIFY: AtomicBool = AtomicBool::new(false);
static VERIFIED: AtomicUsize = AtomicUsize::new(0);
static VERIFY_FAILURES: AtomicUsize = AtomicUsize::new(0);

/// Turns exhaustive re-verification of every computed basis on or off.
/// Meant for tests; it is slow.
pub fn set_verification(on: bool) {
    VERIFY.store(on, AtomicOrdering::SeqCst);
}

/// (bases verified, verification failures) since process start.
pub fn verification_stats() -> (usize, usize) {
    (VERIFIED.load(AtomicOrdering::SeqCst), VERIFY_FAILURES.load(AtomicOrdering::SeqCst))
}

pub(crate) struct Elem<K: Field> {
    pub v: ModVec<K>,
    pub lm: Monomial,
    pub comp: u32,
    pub mask: u64,
    pub deg: i64,
}

/// Output of a run: reduced basis and the input indices that were needed.
pub struct EngineOutput<K: Field> {
    pub basis: Vec<ModVec<K>>,
    pub minimal: Vec<usize>,
}

struct State<'c, 'a, K: Field> {
    ctx: &'c ModuleCtx<'a, K>,
    elems: Vec<Elem<K>>,
    by_comp: Vec<Vec<usize>>,
    // (degree, i, j) with i < j
    pairs: BTreeSet<(i64, usize, usize)>,
    rank1: bool,
}

impl<'c, 'a, K: Field> State<'c, 'a, K> {
    /// Full reduction (lead and tail) by the current elements.
    fn reduce(&self, v: ModVec<K>, skip: Option<usize>) -> ModVec<K> {
        reduce_by(self.ctx, &self.elems, &self.by_comp, v, skip)
    }

    fn lcm(&self, i: usize, j: usize) -> Monomial {
        self.elems[i].lm.lcm(&self.elems[j].lm, self.ctx.ring.weights())
    }

    fn spoly(&self, i: usize, j: usize) -> ModVec<K> {
        let l = self.lcm(i, j);
        let (a, b) = (&self.elems[i], &self.elems[j]);
        let ua = a.lm.quotient_of(&l).expect("lcm");
        let ub = b.lm.quotient_of(&l).expect("lcm");
        let f = self.ctx.field();
        let sa = self.ctx.add_mul(&[], &f.one(), &ua, &a.v);
        self.ctx.add_mul(&sa, &f.neg(&f.one()), &ub, &b.v)
    }

    /// Inserts a reduced, nonzero element and updates the pair set with the
    /// Gebauer-Moeller criteria.
    fn insert(&mut self, mut v: ModVec<K>) -> Result<()> {
        self.ctx.make_monic(&mut v);
        let lead = &v[0];
        let t = self.elems.len();
        let elem = Elem {
            lm: lead.m.clone(),
            comp: lead.comp,
            mask: lead.m.support_mask(),
            deg: self.ctx.term_degree(&lead.m, lead.comp),
            v,
        };
        let comp = elem.comp;
        let weights = self.ctx.ring.weights();
        let lm_t = elem.lm.clone();
        self.elems.push(elem);
        if self.elems.len() > self.ctx.ring.budget().max_basis {
            return Err(Error::Budget(format!("basis size exceeds {}", self.ctx.ring.budget().max_basis)));
        }

        // criterion B on the old pairs
        let old: Vec<(i64, usize, usize)> = self
            .pairs
            .iter()
            .copied()
            .filter(|&(_, i, j)| {
                if self.elems[i].comp != comp {
                    return false;
                }
                let l = self.lcm(i, j);
                if !lm_t.divides(&l) {
                    return false;
                }
                let li = self.elems[i].lm.lcm(&lm_t, weights);
                let lj = self.elems[j].lm.lcm(&lm_t, weights);
                li != l && lj != l
            })
            .collect();
        for p in old {
            self.pairs.remove(&p);
        }

        // new pairs with the same lead component
        let cands: Vec<(usize, Monomial, bool)> = self.by_comp[comp as usize]
            .iter()
            .map(|&i| {
                let l = self.elems[i].lm.lcm(&lm_t, weights);
                let coprime = self.rank1 && self.elems[i].lm.coprime(&lm_t);
                (i, l, coprime)
            })
            .collect();
        // chain criterion within the new pairs: drop those whose lcm is a
        // proper multiple of another; among equal lcms keep the first
        // unless some member is coprime, in which case drop the class
        let mut keep: Vec<(usize, Monomial)> = Vec::new();
        for (a, (i, l, _)) in cands.iter().enumerate() {
            let dominated = cands.iter().any(|(_, l2, _)| l2 != l && l2.divides(l));
            if dominated {
                continue;
            }
            let first_of_class = cands[..a].iter().all(|(_, l2, _)| l2 != l);
            if !first_of_class {
                continue;
            }
            let class_coprime = cands.iter().any(|(_, l2, c)| l2 == l && *c);
            if class_coprime {
                continue;
            }
            keep.push((*i, l.clone()));
        }
        for (i, l) in keep {
            let d = l.degree() + self.ctx.module.twists[comp as usize];
            self.pairs.insert((d, i, t));
        }
        self.by_comp[comp as usize].push(t);
        Ok(())
    }
}

pub(crate) fn reduce_by<K: Field>(
    ctx: &ModuleCtx<'_, K>,
    elems: &[Elem<K>],
    by_comp: &[Vec<usize>],
    v: ModVec<K>,
    skip: Option<usize>,
) -> ModVec<K> {
    let f = ctx.field();
    let mut out: ModVec<K> = Vec::new();
    let mut rem = v;
    let mut start = 0usize;
    while start < rem.len() {
        let t = &rem[start];
        let mask = t.m.support_mask();
        let red = by_comp[t.comp as usize].iter().copied().find(|&k| {
            Some(k) != skip && {
                let e = &elems[k];
                e.mask & !mask == 0 && e.lm.divides(&t.m)
            }
        });
        match red {
            None => {
                out.push(rem[start].clone());
                start += 1;
            }
            Some(k) => {
                let e = &elems[k];
                let u = e.lm.quotient_of(&t.m).expect("divides");
                let c = f.neg(&t.c);
                // e is monic
                rem = ctx.add_mul(&rem[start..], &c, &u, &e.v);
                start = 0;
            }
        }
    }
    out
}

/// Runs Buchberger's algorithm degree by degree on homogeneous inputs.
///
/// Zero inputs are ignored. `minimal` lists the inputs that are not in the
/// submodule generated by the inputs of lower degree and the earlier inputs
/// of the same degree, i.e. a minimal generating subset.
pub fn run<K: Field>(ctx: &ModuleCtx<'_, K>, inputs: Vec<ModVec<K>>) -> Result<EngineOutput<K>> {
    let rank = ctx.module.rank();
    let budget = *ctx.ring.budget();
    let mut queue: Vec<(i64, usize, ModVec<K>)> = Vec::new();
    for (idx, v) in inputs.into_iter().enumerate() {
        if v.is_empty() {
            continue;
        }
        debug_assert!(ctx.is_homogeneous(&v), "inhomogeneous input");
        let d = ctx.degree(&v).expect("nonzero");
        queue.push((d, idx, v));
    }
    queue.sort_by_key(|(d, i, _)| (*d, *i));
    let rank1 = rank == 1;
    let mut st = State { ctx, elems: Vec::new(), by_comp: vec![Vec::new(); rank], pairs: BTreeSet::new(), rank1 };
    let mut minimal = Vec::new();
    let mut qpos = 0;
    loop {
        let pd = st.pairs.iter().next().map(|p| p.0);
        let id = queue.get(qpos).map(|q| q.0);
        let deg = match (pd, id) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if deg > budget.max_degree {
            return Err(Error::Budget(format!("degree {deg} exceeds {}", budget.max_degree)));
        }
        while let Some(&p) = st.pairs.iter().next() {
            if p.0 != deg {
                break;
            }
            st.pairs.remove(&p);
            budget.check_time()?;
            let s = st.spoly(p.1, p.2);
            let r = st.reduce(s, None);
            if !r.is_empty() {
                st.insert(r)?;
            }
        }
        while qpos < queue.len() && queue[qpos].0 == deg {
            budget.check_time()?;
            let v = std::mem::take(&mut queue[qpos].2);
            let idx = queue[qpos].1;
            qpos += 1;
            let r = st.reduce(v, None);
            if !r.is_empty() {
                minimal.push(idx);
                st.insert(r)?;
            }
        }
    }
    // tail reduction: leads are already minimal
    let n = st.elems.len();
    for k in 0..n {
        let v = std::mem::take(&mut st.elems[k].v);
        let lead = v[0].clone();
        let tail = reduce_by(ctx, &st.elems, &st.by_comp, v[1..].to_vec(), Some(k));
        let mut nv = Vec::with_capacity(tail.len() + 1);
        nv.push(lead);
        nv.extend(tail);
        st.elems[k].v = nv;
    }
    let mut basis: Vec<(i64, ModVec<K>)> = st.elems.into_iter().map(|e| (e.deg, e.v)).collect();
    basis.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| ctx.cmp(&a.1[0].m, a.1[0].comp, &b.1[0].m, b.1[0].comp)));
    let basis: Vec<ModVec<K>> = basis.into_iter().map(|(_, v)| v).collect();
    if VERIFY.load(AtomicOrdering::Relaxed) {
        VERIFIED.fetch_add(1, AtomicOrdering::SeqCst);
        if !is_groebner_basis(ctx, &basis) {
            VERIFY_FAILURES.fetch_add(1, AtomicOrdering::SeqCst);
            log::error!("Groebner basis verification failed");
        }
    }
    Ok(EngineOutput { basis, minimal })
}

fn make_elems<K: Field>(ctx: &ModuleCtx<'_, K>, basis: &[ModVec<K>]) -> (Vec<Elem<K>>, Vec<Vec<usize>>) {
    let mut by_comp = vec![Vec::new(); ctx.module.rank()];
    let mut elems = Vec::new();
    for v in basis.iter().filter(|v| !v.is_empty()) {
        let mut v = v.clone();
        ctx.make_monic(&mut v);
        let t = &v[0];
        by_comp[t.comp as usize].push(elems.len());
        elems.push(Elem {
            lm: t.m.clone(),
            comp: t.comp,
            mask: t.m.support_mask(),
            deg: ctx.term_degree(&t.m, t.comp),
            v,
        });
    }
    (elems, by_comp)
}

/// Normal form of `v` with respect to a basis.
pub fn normal_form<K: Field>(ctx: &ModuleCtx<'_, K>, basis: &[ModVec<K>], v: ModVec<K>) -> ModVec<K> {
    let (elems, by_comp) = make_elems(ctx, basis);
    reduce_by(ctx, &elems, &by_comp, v, None)
}

/// Exhaustive Buchberger criterion: every S-pair reduces to zero.
pub fn is_groebner_basis<K: Field>(ctx: &ModuleCtx<'_, K>, basis: &[ModVec<K>]) -> bool {
    let (elems, by_comp) = make_elems(ctx, basis);
    let st = State { ctx, elems, by_comp, pairs: BTreeSet::new(), rank1: false };
    for i in 0..st.elems.len() {
        for j in (i + 1)..st.elems.len() {
            if st.elems[i].comp != st.elems[j].comp {
                continue;
            }
            let s = st.spoly(i, j);
            if !st.reduce(s, None).is_empty() {
                return false;
            }
        }
    }
    true
}
