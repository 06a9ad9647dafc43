//! Polynomial forms on a finite simplicial set and the integration map.
//!
//! A form of degree `p` on `K` assigns to every nondegenerate `n`-simplex
//! a `p`-form on Δ^n, compatibly with faces: restricting the form on `σ`
//! to its `i`-th face gives the form carried by `d_i σ` (pushed through the
//! degeneracies of its normal form when the face is degenerate).

mod cpl;
mod tensor;
mod truncate;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cochain::{same_base, Cochain};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::polyform::{parse_form, whitney_form, PolyForm};
use crate::rational::Q;
use crate::sset::{increasing_sequences, FiniteSimplicialSet, SimplexRef, SimplicialMap};

pub use cpl::{nu, nu_inverse, CplElement};
pub use tensor::{mult_one_tensor_int, mult_one_tensor_int_cpl, phi, psi, TensorForm};
pub use truncate::{truncated_cohomology_of_a, TruncatedForms};

/// The surjection `[n] → [m]` whose pullback is the degeneracy word
/// `s_{j_1} … s_{j_k}` (outermost first) applied to an `m`-simplex.
pub(crate) fn surjection_of_word(word: &[usize], n: usize) -> Vec<usize> {
    (0..=n)
        .map(|v| word.iter().fold(v, |u, &j| if u <= j { u } else { u - 1 }))
        .collect()
}

/// A face/degeneracy compatibility failure of a [`SimplicialForm`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub generator: String,
    pub face: usize,
}

/// An element of `A^p(K)`.
#[derive(Clone, Debug)]
pub struct SimplicialForm {
    base: Arc<FiniteSimplicialSet>,
    degree: usize,
    forms: Vec<PolyForm>,
}

impl PartialEq for SimplicialForm {
    fn eq(&self, other: &Self) -> bool {
        same_base(&self.base, &other.base) && self.degree == other.degree && self.forms == other.forms
    }
}

impl SimplicialForm {
    /// Builds a form, checking shapes but not compatibility; see [`SimplicialForm::validate`].
    pub fn new_unchecked(base: Arc<FiniteSimplicialSet>, degree: usize, forms: Vec<PolyForm>) -> Result<Self> {
        if forms.len() != base.num_generators() {
            return Err(Error::Argument(format!(
                "{} forms given for {} generators",
                forms.len(),
                base.num_generators()
            )));
        }
        let forms = forms
            .into_iter()
            .enumerate()
            .map(|(g, f)| {
                let n = base.dim_of(g);
                if f.dim() != n {
                    return Err(Error::Argument(format!(
                        "form on `{}` lives on Δ^{}, expected Δ^{n}",
                        base.name(g),
                        f.dim()
                    )));
                }
                if f.is_zero() {
                    return Ok(PolyForm::zero(n, degree));
                }
                if f.degree() != degree {
                    return Err(Error::Argument(format!(
                        "form on `{}` has degree {}, expected {degree}",
                        base.name(g),
                        f.degree()
                    )));
                }
                Ok(f)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { base, degree, forms })
    }

    /// Builds a form and rejects it unless it is compatible.
    pub fn new(base: Arc<FiniteSimplicialSet>, degree: usize, forms: Vec<PolyForm>) -> Result<Self> {
        let f = Self::new_unchecked(base, degree, forms)?;
        f.ensure_valid()?;
        Ok(f)
    }

    pub fn zero(base: Arc<FiniteSimplicialSet>, degree: usize) -> Self {
        let forms = (0..base.num_generators())
            .map(|g| PolyForm::zero(base.dim_of(g), degree))
            .collect();
        Self { base, degree, forms }
    }

    /// The constant function `c` on every simplex.
    pub fn constant(base: Arc<FiniteSimplicialSet>, c: Q) -> Self {
        let forms = (0..base.num_generators())
            .map(|g| PolyForm::constant(base.dim_of(g), c.clone()))
            .collect();
        Self { base, degree: 0, forms }
    }

    pub fn one(base: Arc<FiniteSimplicialSet>) -> Self {
        Self::constant(base, Q::from_integer(1.into()))
    }

    pub fn base(&self) -> &Arc<FiniteSimplicialSet> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn form(&self, generator: usize) -> &PolyForm {
        &self.forms[generator]
    }

    pub fn forms(&self) -> &[PolyForm] {
        &self.forms
    }

    pub fn is_zero(&self) -> bool {
        self.forms.iter().all(PolyForm::is_zero)
    }

    /// Largest weight over all simplices (see [`PolyForm::weight`]).
    pub fn weight(&self) -> u32 {
        self.forms.iter().map(PolyForm::weight).max().unwrap_or(0)
    }

    /// The form carried by an arbitrary simplex of `K`.
    pub fn form_at(&self, r: &SimplexRef) -> Result<PolyForm> {
        let f = &self.forms[r.generator];
        if !r.is_degenerate() {
            return Ok(f.clone());
        }
        f.pullback(&surjection_of_word(&r.degeneracies, r.dim))
    }

    /// All (generator, face) pairs where compatibility fails.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut bad = Vec::new();
        for g in 0..self.base.num_generators() {
            let n = self.base.dim_of(g);
            if n == 0 {
                continue;
            }
            for i in 0..=n {
                let restricted = self.forms[g].face(i).expect("face index in range");
                let carried = self.form_at(self.base.generator_face(g, i)).expect("valid face ref");
                if restricted != carried {
                    bad.push(Violation {
                        generator: self.base.name(g).to_string(),
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

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        self.validate().map_err(|v| {
            let list: Vec<String> = v.iter().map(|x| format!("({}, {})", x.generator, x.face)).collect();
            Error::Precondition(format!("form is not simplicial; failing (generator, face) pairs: {}", list.join(", ")))
        })
    }

    fn check_base(&self, other: &Self) -> Result<()> {
        if !same_base(&self.base, &other.base) {
            return Err(Error::Argument("forms live on different simplicial sets".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        if self.degree != other.degree {
            return Err(Error::Argument(format!(
                "sum of a {}-form and a {}-form",
                self.degree, other.degree
            )));
        }
        let forms = self
            .forms
            .iter()
            .zip(&other.forms)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            base: self.base.clone(),
            degree: self.degree,
            forms,
        })
    }

    pub fn scaled(&self, c: &Q) -> Self {
        Self {
            base: self.base.clone(),
            degree: self.degree,
            forms: self.forms.iter().map(|f| f.scaled(c)).collect(),
        }
    }

    /// Simplexwise wedge product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        let forms = self
            .forms
            .iter()
            .zip(&other.forms)
            .map(|(a, b)| a.wedge(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            base: self.base.clone(),
            degree: self.degree + other.degree,
            forms,
        })
    }

    /// Simplexwise exterior derivative.
    pub fn d(&self) -> Self {
        Self {
            base: self.base.clone(),
            degree: self.degree + 1,
            forms: self.forms.iter().map(PolyForm::d).collect(),
        }
    }

    /// Pullback along `f: L → K`, where this form lives on `K`.
    pub fn pullback(&self, f: &SimplicialMap) -> Result<Self> {
        if !same_base(f.target(), &self.base) {
            return Err(Error::Argument("map target is not the form's simplicial set".into()));
        }
        let l = f.source();
        let forms = (0..l.num_generators())
            .map(|g| self.form_at(f.image(g)))
            .collect::<Result<Vec<_>>>()?;
        Self::new_unchecked(l.clone(), self.degree, forms)
    }

    /// Fixture form: generator name ↦ form text. Missing generators carry 0.
    pub fn from_json(base: Arc<FiniteSimplicialSet>, json: &FormJson) -> Result<Self> {
        let mut forms: Vec<PolyForm> = (0..base.num_generators())
            .map(|g| PolyForm::zero(base.dim_of(g), json.degree))
            .collect();
        for (name, text) in &json.forms {
            let g = base
                .lookup(name)
                .ok_or_else(|| Error::parse(format!("forms.\"{name}\""), "unknown generator"))?;
            forms[g] = parse_form(text, base.dim_of(g), Some(json.degree))
                .map_err(|e| Error::parse(format!("forms.\"{name}\""), e.to_string()))?;
        }
        Self::new_unchecked(base, json.degree, forms)
    }

    pub fn to_json(&self) -> FormJson {
        let forms = (0..self.base.num_generators())
            .filter(|&g| !self.forms[g].is_zero())
            .map(|g| (self.base.name(g).to_string(), self.forms[g].to_string()))
            .collect();
        FormJson {
            degree: self.degree,
            forms,
        }
    }
}

/// On-disk form of a [`SimplicialForm`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub degree: usize,
    pub forms: BTreeMap<String, String>,
}

/// `(∫ω)(σ) = ∫_{Δ^p} ω_σ` on nondegenerate `p`-simplices.
pub fn integrate(omega: &SimplicialForm) -> Result<Cochain> {
    omega.ensure_valid()?;
    integrate_unchecked(omega)
}

pub(crate) fn integrate_unchecked(omega: &SimplicialForm) -> Result<Cochain> {
    let k = &omega.base;
    let p = omega.degree;
    let entries = k
        .generators_in_dim(p)
        .iter()
        .map(|&g| Ok((k.position(g), omega.forms[g].integrate_top()?)))
        .collect::<Result<Vec<_>>>()?;
    Cochain::new(k.clone(), p, SparseVec::from_entries(entries))
}

/// `Σ_σ c(σ) · w_σ`: on each simplex, the Whitney forms of its `p`-faces
/// weighted by the cochain's values there.
pub fn whitney_extension(c: &Cochain) -> Result<SimplicialForm> {
    let k = c.base();
    let p = c.degree();
    let mut forms = Vec::with_capacity(k.num_generators());
    for g in 0..k.num_generators() {
        let n = k.dim_of(g);
        let s = SimplexRef::nondegenerate(g, n);
        let mut f = PolyForm::zero(n, p);
        for theta in increasing_sequences(n, p) {
            let v = c.eval(&k.apply(&s, &theta)?);
            if v != Q::from_integer(0.into()) {
                f = f.add(&whitney_form(n, &theta)?.scaled(&v))?;
            }
        }
        forms.push(f);
    }
    SimplicialForm::new_unchecked(k.clone(), p, forms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::sset::{quotient_sphere, std_simplex, torus_presentation};

    #[test]
    fn word_surjections() {
        assert_eq!(surjection_of_word(&[0], 2), vec![0, 0, 1]);
        assert_eq!(surjection_of_word(&[1], 2), vec![0, 1, 1]);
        assert_eq!(surjection_of_word(&[1, 0], 2), vec![0, 0, 0]);
    }

    #[test]
    fn unit_is_valid_and_integrates_to_one() {
        let k = Arc::new(torus_presentation());
        let one = SimplicialForm::one(k.clone());
        assert!(one.validate().is_ok());
        assert_eq!(integrate(&one).unwrap(), Cochain::unit(k));
    }

    #[test]
    fn perturbed_face_is_reported() {
        let k = Arc::new(std_simplex(1));
        let mut forms: Vec<PolyForm> = (0..3).map(|g| PolyForm::one(k.dim_of(g))).collect();
        forms[0] = forms[0].add(&PolyForm::one(0)).unwrap();
        let f = SimplicialForm::new_unchecked(k.clone(), 0, forms).unwrap();
        let v = f.validate().unwrap_err();
        assert_eq!(v, vec![Violation { generator: "01".into(), face: 1 }]);
    }

    #[test]
    fn whitney_of_zero_and_unit() {
        let k = Arc::new(quotient_sphere(2).unwrap());
        assert!(whitney_extension(&Cochain::zero(k.clone(), 1)).unwrap().is_zero());
        assert_eq!(whitney_extension(&Cochain::unit(k.clone())).unwrap(), SimplicialForm::one(k));
    }

    #[test]
    fn whitney_round_trip_on_torus_one_cochain() {
        let k = Arc::new(torus_presentation());
        let c = Cochain::new(k.clone(), 1, SparseVec::from_dense(&[q(3), q(-1), q(2)])).unwrap();
        let w = whitney_extension(&c).unwrap();
        assert!(w.validate().is_ok());
        assert_eq!(integrate(&w).unwrap(), c);
    }

    #[test]
    fn json_round_trip() {
        let k = Arc::new(torus_presentation());
        let c = Cochain::new(k.clone(), 1, SparseVec::from_dense(&[q(1), q(0), q(2)])).unwrap();
        let w = whitney_extension(&c).unwrap();
        let back = SimplicialForm::from_json(k, &w.to_json()).unwrap();
        assert_eq!(back, w);
    }
}
