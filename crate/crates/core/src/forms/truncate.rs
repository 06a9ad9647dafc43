//! Finite-dimensional truncations of the form complex.
//!
//! `A_D(K)` is the subcomplex of forms whose weight (coefficient degree plus
//! form degree) is at most `D` on every simplex. The differential, pullbacks
//! and restriction to faces never raise weight, so this is a subcomplex.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homalg::{cohomology, CochainComplex, CohomologyReport, GradedMap, Window};
use crate::linalg::{Echelon, SparseMatrix, SparseVec};
use crate::polyform::{form_basis, PolyForm, TermIndex};
use crate::sset::FiniteSimplicialSet;

use super::{integrate_unchecked, surjection_of_word, SimplicialForm};

/// Constraint rows are keyed by (generator, face); this bounds the face index.
const FACE_SLOTS: usize = 64;

/// A basis of `A^p_D(K)` in every degree, and the differential in those bases.
#[derive(Debug)]
pub struct TruncatedForms {
    base: Arc<FiniteSimplicialSet>,
    max_weight: u32,
    basis: Vec<Vec<SimplicialForm>>,
    complex: Arc<CochainComplex>,
    coords: Vec<(TermIndex, Echelon)>,
}

impl std::fmt::Debug for TermIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TermIndex({} terms)", self.len())
    }
}

fn compatible_basis(k: &Arc<FiniteSimplicialSet>, p: usize, max_weight: u32) -> Vec<SimplicialForm> {
    if (max_weight as usize) < p {
        return Vec::new();
    }
    let coeff = max_weight - p as u32;
    // who uses generator g as (a degeneracy of) a face
    let mut users: Vec<Vec<(usize, usize, Vec<usize>)>> = vec![Vec::new(); k.num_generators()];
    for s in 0..k.num_generators() {
        let n = k.dim_of(s);
        if n == 0 {
            continue;
        }
        for i in 0..=n {
            let r = k.generator_face(s, i);
            users[r.generator].push((s, i, surjection_of_word(&r.degeneracies, r.dim)));
        }
    }
    let mut unknowns: Vec<(usize, PolyForm)> = Vec::new();
    for g in 0..k.num_generators() {
        for b in form_basis(k.dim_of(g), p, coeff) {
            unknowns.push((g, b));
        }
    }
    let mut index = TermIndex::default();
    let mut cols = Vec::with_capacity(unknowns.len());
    for (g, b) in &unknowns {
        let n = k.dim_of(*g);
        let mut v = SparseVec::new();
        if n > 0 {
            for i in 0..=n {
                v = v.add(&index.vector(g * FACE_SLOTS + i, &b.face(i).expect("face in range")));
            }
        }
        for (s, i, surj) in &users[*g] {
            let carried = b.pullback(surj).expect("surjection onto the generator");
            v = v.sub(&index.vector(s * FACE_SLOTS + i, &carried));
        }
        cols.push(v);
    }
    let constraints = SparseMatrix::from_columns(index.len(), cols);
    constraints
        .kernel()
        .into_iter()
        .map(|z| {
            let mut forms: Vec<PolyForm> = (0..k.num_generators()).map(|g| PolyForm::zero(k.dim_of(g), p)).collect();
            for (j, c) in z.iter() {
                let (g, b) = &unknowns[j];
                forms[*g] = forms[*g].add(&b.scaled(c)).expect("same shape");
            }
            SimplicialForm::new_unchecked(k.clone(), p, forms).expect("shapes match")
        })
        .collect()
}

fn ambient(index: &mut TermIndex, f: &SimplicialForm) -> SparseVec {
    let mut v = SparseVec::new();
    for (g, w) in f.forms().iter().enumerate() {
        v = v.add(&index.vector(g, w));
    }
    v
}

impl TruncatedForms {
    /// Computes bases of compatible forms of weight `≤ max_weight` in degrees
    /// `0..=dim K` (forms vanish above the dimension of `K`).
    pub fn new(base: Arc<FiniteSimplicialSet>, max_weight: u32) -> Result<Self> {
        let top = base.top_dim();
        if top + 1 > FACE_SLOTS {
            return Err(Error::Argument(format!("simplicial sets of dimension {top} are too large")));
        }
        let basis: Vec<Vec<SimplicialForm>> = (0..=top).map(|p| compatible_basis(&base, p, max_weight)).collect();
        let mut coords = Vec::with_capacity(basis.len());
        for forms in &basis {
            let mut index = TermIndex::default();
            let mut ech = Echelon::tracking();
            for f in forms {
                ech.insert(&ambient(&mut index, f));
            }
            coords.push((index, ech));
        }
        let mut diffs = Vec::new();
        for p in 0..top {
            let (index, ech) = &coords[p + 1];
            let cols = basis[p]
                .iter()
                .map(|f| {
                    let df = f.d();
                    let mut v = SparseVec::new();
                    for (g, w) in df.forms().iter().enumerate() {
                        v = v.add(&index.lookup(g, w).expect("d preserves the truncation"));
                    }
                    ech.solve(&v).expect("d preserves the truncation")
                })
                .collect();
            diffs.push(SparseMatrix::from_columns(basis[p + 1].len(), cols));
        }
        let dims = basis.iter().map(Vec::len).collect();
        let complex = Arc::new(CochainComplex::new(dims, diffs)?);
        Ok(Self {
            base,
            max_weight,
            basis,
            complex,
            coords,
        })
    }

    pub fn base(&self) -> &Arc<FiniteSimplicialSet> {
        &self.base
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn complex(&self) -> &Arc<CochainComplex> {
        &self.complex
    }

    pub fn basis(&self, p: usize) -> &[SimplicialForm] {
        self.basis.get(p).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The form with coordinates `v` in degree `p`.
    pub fn form_of(&self, p: usize, v: &SparseVec) -> SimplicialForm {
        let mut out = SimplicialForm::zero(self.base.clone(), p);
        for (j, c) in v.iter() {
            out = out.add(&self.basis[p][j].scaled(c)).expect("same base and degree");
        }
        out
    }

    /// Coordinates of `f`, or `None` if it is not in the truncation.
    pub fn coordinates(&self, f: &SimplicialForm) -> Option<SparseVec> {
        let (index, ech) = self.coords.get(f.degree())?;
        let mut v = SparseVec::new();
        for (g, w) in f.forms().iter().enumerate() {
            v = v.add(&index.lookup(g, w)?);
        }
        ech.solve(&v)
    }

    /// Integration `A_D(K) → C(K)` as a chain map.
    pub fn integration_map(&self, cochains: Arc<CochainComplex>) -> Result<GradedMap> {
        let matrices = (0..self.basis.len())
            .map(|p| {
                let cols = self.basis[p]
                    .iter()
                    .map(|f| Ok(integrate_unchecked(f)?.values().clone()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(SparseMatrix::from_columns(self.base.count_in_dim(p), cols))
            })
            .collect::<Result<Vec<_>>>()?;
        GradedMap::new(self.complex.clone(), cochains, matrices)
    }

    /// Wedge product in coordinates, for [`CohomologyReport::with_products`].
    /// Products may leave the truncation, in which case `None` is returned.
    pub fn wedge_coordinates(&self, p: usize, a: &SparseVec, q: usize, b: &SparseVec) -> Option<SparseVec> {
        let prod = self.form_of(p, a).wedge(&self.form_of(q, b)).ok()?;
        if prod.is_zero() {
            return Some(SparseVec::new());
        }
        self.coordinates(&prod)
    }
}

/// Cohomology of `A_D(K)` over `window`, together with the truncation itself.
pub fn truncated_cohomology_of_a(
    base: Arc<FiniteSimplicialSet>,
    max_weight: u32,
    window: Window,
) -> Result<(CohomologyReport, TruncatedForms)> {
    let t = TruncatedForms::new(base, max_weight)?;
    let report = cohomology(&t.complex, window);
    Ok((report, t))
}
