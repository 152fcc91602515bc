use std::cmp::Ordering;
use std::sync::Arc;

use crate::kernel::{Field, Monomial, Polynomial, Ring};

/// One term of a free-module element: `c * m * e_comp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term<K: Field> {
    pub c: K::Elem,
    pub m: Monomial,
    pub comp: u32,
}

/// Element of a free module, as terms sorted strictly decreasing in the module
/// order of the context that produced it.
pub type ModVec<K> = Vec<Term<K>>;

/// Layout of a graded free module `F = (+) S(-twists[i])`.
///
/// With `split = Some(s)` the components `< s` form a block that dominates
/// every term of the remaining block (position-over-term between blocks),
/// which is what makes syzygies fall out of an extended computation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeModule {
    pub twists: Vec<i64>,
    pub split: Option<usize>,
}

impl FreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        FreeModule { twists, split: None }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }
}

/// Module order for a ring and free-module layout.
pub struct ModuleCtx<'a, K: Field> {
    pub ring: &'a Arc<Ring<K>>,
    pub module: &'a FreeModule,
    degree_first: bool,
}

impl<'a, K: Field> ModuleCtx<'a, K> {
    pub fn new(ring: &'a Arc<Ring<K>>, module: &'a FreeModule) -> Self {
        let degree_first = ring.order().is_degree_compatible();
        ModuleCtx { ring, module, degree_first }
    }

    #[inline]
    pub fn field(&self) -> &K {
        self.ring.field()
    }

    #[inline]
    pub fn term_degree(&self, m: &Monomial, comp: u32) -> i64 {
        m.degree() + self.module.twists[comp as usize]
    }

    #[inline]
    pub fn cmp(&self, am: &Monomial, ac: u32, bm: &Monomial, bc: u32) -> Ordering {
        if let Some(s) = self.module.split {
            let ab = (ac as usize) < s;
            let bb = (bc as usize) < s;
            if ab != bb {
                return if ab { Ordering::Greater } else { Ordering::Less };
            }
        }
        if self.degree_first {
            let o = self.term_degree(am, ac).cmp(&self.term_degree(bm, bc));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.ring.cmp_monomials(am, bm).then_with(|| bc.cmp(&ac))
    }

    pub fn sort(&self, v: &mut ModVec<K>) {
        v.sort_by(|a, b| self.cmp(&b.m, b.comp, &a.m, a.comp));
        // merge duplicates
        let f = self.field();
        let mut out: ModVec<K> = Vec::with_capacity(v.len());
        for t in v.drain(..) {
            match out.last_mut() {
                Some(l) if l.comp == t.comp && l.m == t.m => l.c = f.add(&l.c, &t.c),
                _ => out.push(t),
            }
        }
        out.retain(|t| !f.is_zero(&t.c));
        *v = out;
    }

    pub fn is_homogeneous(&self, v: &ModVec<K>) -> bool {
        match v.first() {
            None => true,
            Some(t) => {
                let d = self.term_degree(&t.m, t.comp);
                v.iter().all(|s| self.term_degree(&s.m, s.comp) == d)
            }
        }
    }

    pub fn degree(&self, v: &ModVec<K>) -> Option<i64> {
        v.first().map(|t| self.term_degree(&t.m, t.comp))
    }

    /// `a + c * m * b`.
    pub fn add_mul(&self, a: &[Term<K>], c: &K::Elem, m: &Monomial, b: &[Term<K>]) -> ModVec<K> {
        let f = self.field();
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut bj: Option<Term<K>> = None;
        let shifted = |t: &Term<K>| Term { c: f.mul(&t.c, c), m: t.m.mul(m), comp: t.comp };
        while i < a.len() {
            if bj.is_none() {
                if j < b.len() {
                    bj = Some(shifted(&b[j]));
                    j += 1;
                } else {
                    break;
                }
            }
            let bt = bj.as_ref().expect("set above");
            let at = &a[i];
            match self.cmp(&at.m, at.comp, &bt.m, bt.comp) {
                Ordering::Greater => {
                    out.push(at.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(bj.take().expect("set"));
                }
                Ordering::Equal => {
                    let s = f.add(&at.c, &bt.c);
                    if !f.is_zero(&s) {
                        out.push(Term { c: s, m: at.m.clone(), comp: at.comp });
                    }
                    bj = None;
                    i += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        if let Some(t) = bj {
            out.push(t);
        }
        out.extend(b[j..].iter().map(shifted));
        out
    }

    pub fn scale(&self, v: &[Term<K>], c: &K::Elem) -> ModVec<K> {
        let f = self.field();
        v.iter().map(|t| Term { c: f.mul(&t.c, c), m: t.m.clone(), comp: t.comp }).collect()
    }

    pub fn make_monic(&self, v: &mut ModVec<K>) {
        if let Some(t) = v.first() {
            if !self.field().is_one(&t.c) {
                let inv = self.field().inv(&t.c).expect("nonzero lead");
                for s in v.iter_mut() {
                    s.c = self.field().mul(&s.c, &inv);
                }
            }
        }
    }

    /// Sorted vector from one polynomial per component.
    pub fn from_columns(&self, entries: &[Polynomial<K>]) -> ModVec<K> {
        let mut v: ModVec<K> = entries
            .iter()
            .enumerate()
            .flat_map(|(comp, p)| {
                p.terms().iter().map(move |(c, m)| Term { c: c.clone(), m: m.clone(), comp: comp as u32 })
            })
            .collect();
        self.sort(&mut v);
        v
    }

    /// Splits a vector back into one polynomial per component.
    pub fn to_columns(&self, v: &[Term<K>], rank: usize) -> Vec<Polynomial<K>> {
        let mut buckets: Vec<Vec<(K::Elem, Monomial)>> = vec![Vec::new(); rank];
        for t in v {
            buckets[t.comp as usize].push((t.c.clone(), t.m.clone()));
        }
        buckets.into_iter().map(|b| Polynomial::from_terms(self.ring, b)).collect()
    }
}
