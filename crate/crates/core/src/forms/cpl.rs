//! Simplexwise cochains: on each simplex of `K`, a normalized cochain on Δ^n.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::cochain::{same_base, Cochain};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::rational::{sign, Q};
use crate::sset::{increasing_sequences, FiniteSimplicialSet, SimplexRef};

use super::{surjection_of_word, Violation};

/// Cochain on Δ^n: increasing vertex sequence ↦ value.
pub(crate) type LocalCochain = BTreeMap<Vec<usize>, Q>;

/// All increasing `ρ` with `θ ∘ ρ = τ`, for monotone `θ`.
pub(crate) fn preimages(theta: &[usize], tau: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &t in tau {
        let hits: Vec<usize> = (0..theta.len()).filter(|&k| theta[k] == t).collect();
        out = out
            .into_iter()
            .flat_map(|pre: Vec<usize>| {
                hits.iter().map(move |&k| {
                    let mut p = pre.clone();
                    p.push(k);
                    p
                })
            })
            .collect();
    }
    out
}

pub(crate) fn add_to(map: &mut LocalCochain, key: Vec<usize>, c: Q) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

pub(crate) fn local_pullback(gamma: &LocalCochain, theta: &[usize]) -> LocalCochain {
    let mut out = LocalCochain::new();
    for (tau, v) in gamma {
        for rho in preimages(theta, tau) {
            add_to(&mut out, rho, v.clone());
        }
    }
    out
}

/// `(δγ)(ρ) = Σ_i (−1)^i γ(ρ without its i-th vertex)` on Δ^n.
pub(crate) fn local_coboundary(gamma: &LocalCochain, n: usize) -> LocalCochain {
    let mut out = LocalCochain::new();
    for (tau, v) in gamma {
        for w in 0..=n {
            if tau.contains(&w) {
                continue;
            }
            let i = tau.iter().take_while(|&&x| x < w).count();
            let mut rho = tau.clone();
            rho.insert(i, w);
            add_to(&mut out, rho, sign(i % 2 == 1) * v);
        }
    }
    out
}

/// Front-face/back-face cup product on Δ^n.
pub(crate) fn local_cup(a: &LocalCochain, b: &LocalCochain) -> LocalCochain {
    let mut out = LocalCochain::new();
    for (s, x) in a {
        for (t, y) in b {
            if s.last() == t.first() {
                let mut rho = s.clone();
                rho.extend_from_slice(&t[1..]);
                add_to(&mut out, rho, x * y);
            }
        }
    }
    out
}

/// An element of the simplexwise cochain algebra: a degree-`p` cochain on
/// Δ^n for each nondegenerate `n`-simplex, compatible with faces.
#[derive(Clone, Debug)]
pub struct CplElement {
    base: Arc<FiniteSimplicialSet>,
    degree: usize,
    cochains: Vec<LocalCochain>,
}

impl PartialEq for CplElement {
    fn eq(&self, other: &Self) -> bool {
        same_base(&self.base, &other.base) && self.degree == other.degree && self.cochains == other.cochains
    }
}

impl CplElement {
    pub(crate) fn from_parts(base: Arc<FiniteSimplicialSet>, degree: usize, cochains: Vec<LocalCochain>) -> Self {
        Self { base, degree, cochains }
    }

    pub fn base(&self) -> &Arc<FiniteSimplicialSet> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Value of the cochain on `generator` at the face spanned by `vertices`.
    pub fn value(&self, generator: usize, vertices: &[usize]) -> Q {
        self.cochains[generator].get(vertices).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.cochains.iter().all(BTreeMap::is_empty)
    }

    pub(crate) fn local_at(&self, r: &SimplexRef) -> LocalCochain {
        let c = &self.cochains[r.generator];
        if !r.is_degenerate() {
            return c.clone();
        }
        local_pullback(c, &surjection_of_word(&r.degeneracies, r.dim))
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let k = &self.base;
        let mut bad = Vec::new();
        for g in 0..k.num_generators() {
            let n = k.dim_of(g);
            for i in 0..=n {
                if n == 0 {
                    break;
                }
                let coface: Vec<usize> = (0..n).map(|v| if v < i { v } else { v + 1 }).collect();
                if local_pullback(&self.cochains[g], &coface) != self.local_at(k.generator_face(g, i)) {
                    bad.push(Violation {
                        generator: k.name(g).to_string(),
                        face: i,
                    });
                }
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(bad)
        }
    }

    pub fn coboundary(&self) -> Self {
        let cochains = (0..self.base.num_generators())
            .map(|g| local_coboundary(&self.cochains[g], self.base.dim_of(g)))
            .collect();
        Self {
            base: self.base.clone(),
            degree: self.degree + 1,
            cochains,
        }
    }

    pub fn cup(&self, other: &Self) -> Result<Self> {
        if !same_base(&self.base, &other.base) {
            return Err(Error::Argument("cup of elements on different simplicial sets".into()));
        }
        let cochains = self
            .cochains
            .iter()
            .zip(&other.cochains)
            .map(|(a, b)| local_cup(a, b))
            .collect();
        Ok(Self {
            base: self.base.clone(),
            degree: self.degree + other.degree,
            cochains,
        })
    }
}

/// `ν(γ)(σ) = γ_σ(id)`: the value of each `p`-simplex's cochain on its top face.
pub fn nu(gamma: &CplElement) -> Result<Cochain> {
    let k = &gamma.base;
    let p = gamma.degree;
    let top: Vec<usize> = (0..=p).collect();
    let entries = k
        .generators_in_dim(p)
        .iter()
        .map(|&g| (k.position(g), gamma.value(g, &top)));
    Cochain::new(k.clone(), p, SparseVec::from_entries(entries))
}

/// Inverse of [`nu`]: `γ_σ(θ) = c(θ^* σ)`.
pub fn nu_inverse(c: &Cochain) -> Result<CplElement> {
    let k = c.base();
    let p = c.degree();
    let mut cochains = Vec::with_capacity(k.num_generators());
    for g in 0..k.num_generators() {
        let n = k.dim_of(g);
        let s = SimplexRef::nondegenerate(g, n);
        let mut local = LocalCochain::new();
        if p <= n {
            for theta in increasing_sequences(n, p) {
                let v = c.eval(&k.apply(&s, &theta)?);
                add_to(&mut local, theta, v);
            }
        }
        cochains.push(local);
    }
    Ok(CplElement {
        base: k.clone(),
        degree: p,
        cochains,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::cup;
    use crate::rational::q;
    use crate::sset::torus_presentation;

    #[test]
    fn preimages_of_a_degeneracy() {
        // s^1: [3] → [2], 0 1 1 2
        let theta = [0, 1, 1, 2];
        assert_eq!(preimages(&theta, &[1, 2]), vec![vec![1, 3], vec![2, 3]]);
        assert_eq!(preimages(&theta, &[0]), vec![vec![0]]);
    }

    #[test]
    fn nu_round_trip_and_products_on_torus() {
        let k = Arc::new(torus_presentation());
        let a = Cochain::new(k.clone(), 1, SparseVec::from_dense(&[q(1), q(2), q(0)])).unwrap();
        let b = Cochain::new(k.clone(), 1, SparseVec::from_dense(&[q(0), q(-1), q(3)])).unwrap();
        let ga = nu_inverse(&a).unwrap();
        let gb = nu_inverse(&b).unwrap();
        assert!(ga.validate().is_ok());
        assert_eq!(nu(&ga).unwrap(), a);
        assert_eq!(nu(&ga.cup(&gb).unwrap()).unwrap(), cup(&a, &b).unwrap());
        assert_eq!(nu(&ga.coboundary()).unwrap(), a.coboundary());
    }
}
