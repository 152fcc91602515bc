use crate::kernel::{Field, Polynomial};

/// Matrix stored by columns; every column has one entry per row.
pub type Matrix<K> = Vec<Vec<Polynomial<K>>>;

fn unit_position<K: Field>(m: &Matrix<K>) -> Option<(usize, usize)> {
    // prefer the sparsest column so fewer entries are touched
    let mut best: Option<(usize, usize, usize)> = None;
    for (c, col) in m.iter().enumerate() {
        for (r, e) in col.iter().enumerate() {
            if !e.is_zero() && e.is_constant() {
                let weight = col.iter().filter(|x| !x.is_zero()).count();
                if best.is_none_or(|b| weight < b.2) {
                    best = Some((r, c, weight));
                }
                break;
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// Removes unit entries from a chain complex by Gaussian elimination.
///
/// `maps[i]` goes from `F_(i+1)` to `F_i`, with columns indexed by the basis
/// of `F_(i+1)` and rows by the basis of `F_i`; `labels[i]` carries one label
/// per basis element of `F_i` (so `labels.len() == maps.len() + 1`). The
/// result is homotopy equivalent and has no nonzero constant entries.
pub fn prune_units<K: Field, L>(maps: &mut [Matrix<K>], labels: &mut [Vec<L>]) {
    assert_eq!(labels.len(), maps.len() + 1, "one label list per free module");
    for i in 0..maps.len() {
        while let Some((r, c)) = unit_position(&maps[i]) {
            let a = &mut maps[i];
            let f = a[c][r].ring().field().clone();
            let inv = f.inv(&a[c][r].terms()[0].0).expect("unit");
            let pivot = a[c].clone();
            for (j, col) in a.iter_mut().enumerate() {
                if j == c || col[r].is_zero() {
                    continue;
                }
                // col_j -= (a_rj / a_rc) * col_c
                let lam = col[r].scale(&f.neg(&inv));
                for (k, entry) in col.iter_mut().enumerate() {
                    if !pivot[k].is_zero() {
                        *entry = entry.add(&lam.mul(&pivot[k]));
                    }
                }
            }
            a.remove(c);
            for col in a.iter_mut() {
                col.remove(r);
            }
            labels[i + 1].remove(c);
            labels[i].remove(r);
            if i + 1 < maps.len() {
                for col in maps[i + 1].iter_mut() {
                    col.remove(c);
                }
            }
            if i > 0 {
                maps[i - 1].remove(r);
            }
        }
    }
}
