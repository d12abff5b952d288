//! Linear span of a polynomial subalgebra inside `⊕ C[u]/u^prec`.

use std::collections::BTreeMap;

use crate::algebra::series::Series;
use crate::algebra::Polynomial;

/// A vector in the direct sum: one truncated series per branch.
type Tuple = Vec<Series>;

/// (branch, order) of the first nonzero coefficient.
fn pivot(w: &Tuple) -> Option<(usize, usize)> {
    w.iter()
        .enumerate()
        .find_map(|(b, s)| s.order().map(|k| (b, k)))
}

/// Echelon basis of the image of `C[g₁, …, g_k]` modulo `u^prec` on each
/// branch, keyed by pivot.
///
/// Starts from the constant tuple and closes the span under multiplication
/// by every generator; the span is then exactly the image of the algebra.
pub(crate) struct Closure {
    basis: BTreeMap<(usize, usize), Tuple>,
}

impl Closure {
    /// `gens[k][b]` is generator `k` restricted to branch `b`.
    pub(crate) fn compute(gens: &[Vec<Polynomial>], branches: usize, prec: usize) -> Self {
        let gens: Vec<Tuple> = gens
            .iter()
            .map(|g| g.iter().map(|p| Series::from_poly(p, prec)).collect())
            .collect();
        let mut c = Self {
            basis: BTreeMap::new(),
        };
        let one: Tuple = vec![Series::one(prec); branches];
        let mut queue = Vec::new();
        if let Some(key) = c.insert(one) {
            queue.push(key);
        }
        while let Some(key) = queue.pop() {
            let v = c.basis[&key].clone();
            for g in &gens {
                let w: Tuple = v.iter().zip(g).map(|(a, b)| a.mul(b)).collect();
                if let Some(k) = c.insert(w) {
                    queue.push(k);
                }
            }
        }
        c
    }

    /// Reduces `w` and adds it if it is independent; returns the new pivot.
    fn insert(&mut self, mut w: Tuple) -> Option<(usize, usize)> {
        loop {
            let p = pivot(&w)?;
            match self.basis.get(&p) {
                Some(v) => {
                    let c = w[p.0].coeff(p.1).clone();
                    w[p.0].sub_scaled(&c, &v[p.0], p.1);
                    for b in p.0 + 1..w.len() {
                        w[b].sub_scaled(&c, &v[b], 0);
                    }
                }
                None => {
                    let inv = w[p.0].coeff(p.1).inv().expect("pivot is nonzero");
                    let w = w.iter().map(|s| s.scale(&inv)).collect();
                    self.basis.insert(p, w);
                    return Some(p);
                }
            }
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Orders attained on `branch`, i.e. pivots in that branch, ascending.
    pub(crate) fn pivot_orders(&self, branch: usize) -> Vec<usize> {
        self.basis
            .keys()
            .filter(|(b, _)| *b == branch)
            .map(|&(_, k)| k)
            .collect()
    }
}
