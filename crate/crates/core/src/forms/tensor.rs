//! The simplexwise tensor product of cochains and forms, which sits between
//! the form algebra and the cochain algebra.
//!
//! On Δ^n an element is `Σ_τ e_τ ⊗ ω_τ` with `e_τ` the dual basis cochain of
//! the face `τ`. Sign conventions:
//! `d(γ ⊗ ω) = δγ ⊗ ω + (−1)^{|γ|} γ ⊗ dω` and
//! `(γ ⊗ ω)(γ' ⊗ ω') = (−1)^{|ω||γ'|} (γ ⌣ γ') ⊗ (ω ∧ ω')`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cochain::{same_base, Cochain};
use crate::error::{Error, Result};
use crate::polyform::PolyForm;
use crate::rational::{sign, Q};
use crate::sset::{increasing_sequences, FiniteSimplicialSet, SimplexRef};

use super::cpl::{add_to, local_coboundary, preimages, CplElement, LocalCochain};
use super::{nu, surjection_of_word, SimplicialForm, Violation};

type LocalTensor = BTreeMap<Vec<usize>, PolyForm>;

fn add_local(map: &mut LocalTensor, key: Vec<usize>, f: PolyForm) -> Result<()> {
    if f.is_zero() {
        return Ok(());
    }
    match map.entry(key) {
        Entry::Occupied(mut e) => {
            let sum = e.get().add(&f)?;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
        Entry::Vacant(e) => {
            e.insert(f);
        }
    }
    Ok(())
}

fn local_pullback(x: &LocalTensor, theta: &[usize]) -> Result<LocalTensor> {
    let mut out = LocalTensor::new();
    for (tau, w) in x {
        let rhos = preimages(theta, tau);
        if rhos.is_empty() {
            continue;
        }
        let pulled = w.pullback(theta)?;
        for rho in rhos {
            add_local(&mut out, rho, pulled.clone())?;
        }
    }
    Ok(out)
}

/// An element of `(C ⊗ A)^p(K)`: one local tensor per nondegenerate simplex.
#[derive(Clone, Debug)]
pub struct TensorForm {
    base: Arc<FiniteSimplicialSet>,
    degree: usize,
    parts: Vec<LocalTensor>,
}

impl PartialEq for TensorForm {
    fn eq(&self, other: &Self) -> bool {
        same_base(&self.base, &other.base) && self.degree == other.degree && self.parts == other.parts
    }
}

impl TensorForm {
    /// Builds an element from `(generator, face, form)` triples, summing repeats.
    pub fn from_terms(
        base: Arc<FiniteSimplicialSet>,
        degree: usize,
        terms: impl IntoIterator<Item = (usize, Vec<usize>, PolyForm)>,
    ) -> Result<Self> {
        let mut parts = vec![LocalTensor::new(); base.num_generators()];
        for (g, tau, w) in terms {
            let n = base.dim_of(g);
            if tau.is_empty() || tau.windows(2).any(|v| v[0] >= v[1]) || *tau.last().unwrap() > n {
                return Err(Error::Argument(format!("{tau:?} is not a face of Δ^{n}")));
            }
            if w.dim() != n {
                return Err(Error::Argument(format!("form on Δ^{} attached to a {n}-simplex", w.dim())));
            }
            if !w.is_zero() && w.degree() + tau.len() - 1 != degree {
                return Err(Error::Argument(format!(
                    "term of degree {} + {} in a degree-{degree} element",
                    tau.len() - 1,
                    w.degree()
                )));
            }
            add_local(&mut parts[g], tau, w)?;
        }
        Ok(Self { base, degree, parts })
    }

    pub fn base(&self) -> &Arc<FiniteSimplicialSet> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(BTreeMap::is_empty)
    }

    /// `(face, form)` pairs on one generator.
    pub fn part(&self, generator: usize) -> impl Iterator<Item = (&Vec<usize>, &PolyForm)> {
        self.parts[generator].iter()
    }

    fn local_at(&self, r: &SimplexRef) -> Result<LocalTensor> {
        let x = &self.parts[r.generator];
        if !r.is_degenerate() {
            return Ok(x.clone());
        }
        local_pullback(x, &surjection_of_word(&r.degeneracies, r.dim))
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let k = &self.base;
        let mut bad = Vec::new();
        for g in 0..k.num_generators() {
            let n = k.dim_of(g);
            if n == 0 {
                continue;
            }
            for i in 0..=n {
                let coface: Vec<usize> = (0..n).map(|v| if v < i { v } else { v + 1 }).collect();
                let ok = match (
                    local_pullback(&self.parts[g], &coface),
                    self.local_at(k.generator_face(g, i)),
                ) {
                    (Ok(a), Ok(b)) => a == b,
                    _ => false,
                };
                if !ok {
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

    fn check_base(&self, other: &Self) -> Result<()> {
        if !same_base(&self.base, &other.base) {
            return Err(Error::Argument("elements live on different simplicial sets".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        if self.degree != other.degree {
            return Err(Error::Argument(format!("sum of degrees {} and {}", self.degree, other.degree)));
        }
        let mut parts = self.parts.clone();
        for (g, x) in other.parts.iter().enumerate() {
            for (tau, w) in x {
                add_local(&mut parts[g], tau.clone(), w.clone())?;
            }
        }
        Ok(Self {
            base: self.base.clone(),
            degree: self.degree,
            parts,
        })
    }

    pub fn d(&self) -> Result<Self> {
        let mut parts = Vec::with_capacity(self.parts.len());
        for (g, x) in self.parts.iter().enumerate() {
            let n = self.base.dim_of(g);
            let mut out = LocalTensor::new();
            for (tau, w) in x {
                let mut e = LocalCochain::new();
                add_to(&mut e, tau.clone(), Q::from_integer(1.into()));
                for (rho, c) in local_coboundary(&e, n) {
                    add_local(&mut out, rho, w.scaled(&c))?;
                }
                add_local(&mut out, tau.clone(), w.d().scaled(&sign((tau.len() - 1) % 2 == 1)))?;
            }
            parts.push(out);
        }
        Ok(Self {
            base: self.base.clone(),
            degree: self.degree + 1,
            parts,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        let mut parts = Vec::with_capacity(self.parts.len());
        for (x, y) in self.parts.iter().zip(&other.parts) {
            let mut out = LocalTensor::new();
            for (s, w) in x {
                for (t, v) in y {
                    if s.last() != t.first() {
                        continue;
                    }
                    let mut rho = s.clone();
                    rho.extend_from_slice(&t[1..]);
                    let odd = w.degree() * (t.len() - 1) % 2 == 1;
                    add_local(&mut out, rho, w.wedge(v)?.scaled(&sign(odd)))?;
                }
            }
            parts.push(out);
        }
        Ok(Self {
            base: self.base.clone(),
            degree: self.degree + other.degree,
            parts,
        })
    }
}

/// `γ ↦ γ ⊗ 1`.
pub fn phi(gamma: &CplElement) -> Result<TensorForm> {
    let k = gamma.base();
    let mut terms = Vec::new();
    for g in 0..k.num_generators() {
        let n = k.dim_of(g);
        if gamma.degree() > n {
            continue;
        }
        for tau in increasing_sequences(n, gamma.degree()) {
            let v = gamma.value(g, &tau);
            terms.push((g, tau, PolyForm::constant(n, v)));
        }
    }
    TensorForm::from_terms(k.clone(), gamma.degree(), terms)
}

/// `ω ↦ 1 ⊗ ω`, with `1 = Σ_v e_v`.
pub fn psi(omega: &SimplicialForm) -> Result<TensorForm> {
    let k = omega.base();
    let terms = (0..k.num_generators())
        .flat_map(|g| (0..=k.dim_of(g)).map(move |v| (g, vec![v], omega.form(g).clone())))
        .collect::<Vec<_>>();
    TensorForm::from_terms(k.clone(), omega.degree(), terms)
}

/// `Σ e_τ ⊗ ω_τ ↦ Σ e_τ ⌣ ∫ω_τ`, as a simplexwise cochain.
pub fn mult_one_tensor_int_cpl(x: &TensorForm) -> Result<CplElement> {
    let k = &x.base;
    let p = x.degree;
    let mut cochains = Vec::with_capacity(k.num_generators());
    for (g, part) in x.parts.iter().enumerate() {
        let n = k.dim_of(g);
        let mut local = LocalCochain::new();
        if p <= n {
            for rho in increasing_sequences(n, p) {
                let mut v = Q::from_integer(0.into());
                for (tau, w) in part {
                    let q = tau.len() - 1;
                    if rho[..=q] != tau[..] {
                        continue;
                    }
                    v += w.pullback(&rho[q..])?.integrate_top()?;
                }
                add_to(&mut local, rho, v);
            }
        }
        cochains.push(local);
    }
    Ok(CplElement::from_parts(k.clone(), p, cochains))
}

/// [`mult_one_tensor_int_cpl`] followed by [`nu`].
pub fn mult_one_tensor_int(x: &TensorForm) -> Result<Cochain> {
    nu(&mult_one_tensor_int_cpl(x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::Cochain;
    use crate::forms::{integrate, nu_inverse, whitney_extension};
    use crate::linalg::SparseVec;
    use crate::rational::q;
    use crate::sset::torus_presentation;

    fn torus_one_cochain() -> Cochain {
        let k = Arc::new(torus_presentation());
        Cochain::new(k, 1, SparseVec::from_dense(&[q(2), q(-1), q(1)])).unwrap()
    }

    #[test]
    fn comparison_maps_land_in_valid_elements() {
        let c = torus_one_cochain();
        let g = nu_inverse(&c).unwrap();
        let x = phi(&g).unwrap();
        assert!(x.validate().is_ok());
        let y = psi(&whitney_extension(&c).unwrap()).unwrap();
        assert!(y.validate().is_ok());
        assert!(x.mul(&y).unwrap().validate().is_ok());
        assert!(y.d().unwrap().validate().is_ok());
    }

    #[test]
    fn mult_int_recovers_both_sides() {
        let c = torus_one_cochain();
        let w = whitney_extension(&c).unwrap();
        assert_eq!(mult_one_tensor_int(&phi(&nu_inverse(&c).unwrap()).unwrap()).unwrap(), c);
        assert_eq!(mult_one_tensor_int(&psi(&w).unwrap()).unwrap(), integrate(&w).unwrap());
    }

    #[test]
    fn d_squares_to_zero() {
        let c = torus_one_cochain();
        let x = phi(&nu_inverse(&c).unwrap()).unwrap().mul(&psi(&whitney_extension(&c).unwrap()).unwrap()).unwrap();
        assert!(x.d().unwrap().d().unwrap().is_zero());
    }
}
