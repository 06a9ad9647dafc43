//! Extending compatible face data to a form on the whole simplex.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::rational::Q;

use super::{PolyForm, TermKey};

/// Forms `Φ_i` on Δ^{n−1}, prescribed for the faces `i` in an index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceFamily {
    n: usize,
    degree: usize,
    faces: BTreeMap<usize, PolyForm>,
}

impl FaceFamily {
    pub fn new(n: usize, degree: usize, faces: impl IntoIterator<Item = (usize, PolyForm)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("Δ^0 has no faces".into()));
        }
        let mut map = BTreeMap::new();
        for (i, f) in faces {
            if i > n {
                return Err(Error::Argument(format!("face index {i} out of range for Δ^{n}")));
            }
            if f.dim() != n - 1 {
                return Err(Error::Argument(format!(
                    "face {i} carries a form on Δ^{}, expected Δ^{}",
                    f.dim(),
                    n - 1
                )));
            }
            let f = if f.is_zero() { PolyForm::zero(n - 1, degree) } else { f };
            if f.degree() != degree {
                return Err(Error::Argument(format!(
                    "face {i} carries a {}-form, expected a {degree}-form",
                    f.degree()
                )));
            }
            if map.insert(i, f).is_some() {
                return Err(Error::Argument(format!("face {i} given twice")));
            }
        }
        Ok(Self { n, degree, faces: map })
    }

    /// The faces of `form` listed in `indices`.
    pub fn of_form(form: &PolyForm, indices: &[usize]) -> Result<Self> {
        let faces = indices
            .iter()
            .map(|&i| Ok((i, form.face(i)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(form.dim(), form.degree(), faces)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn faces(&self) -> &BTreeMap<usize, PolyForm> {
        &self.faces
    }

    /// Checks `∂_i Φ_j = ∂_{j−1} Φ_i` for `i < j`, reporting the first failing pair.
    pub fn check_compatible(&self) -> Result<()> {
        if self.n < 2 {
            return Ok(());
        }
        for (&j, fj) in &self.faces {
            for (&i, fi) in self.faces.range(..j) {
                if fj.face(i)? != fi.face(j - 1)? {
                    return Err(Error::IncompatibleFaces { i, j });
                }
            }
        }
        Ok(())
    }
}

fn monomials(vars: usize, max_degree: u32) -> Vec<Vec<u32>> {
    fn rec(vars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == vars {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(vars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, max_degree, &mut Vec::new(), &mut out);
    out
}

/// `k`-subsets of `{1..n}`, `1 ≤ k ≤ n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    crate::sset::increasing_sequences(n - 1, k - 1)
        .into_iter()
        .map(|s| s.into_iter().map(|v| v + 1).collect())
        .collect()
}

/// Basis of `k`-forms on Δ^n with coefficient degree `≤ max_degree`.
pub(crate) fn form_basis(n: usize, k: usize, max_degree: u32) -> Vec<PolyForm> {
    let parts: Vec<Vec<usize>> = if k == 0 {
        vec![Vec::new()]
    } else if k > n {
        Vec::new()
    } else {
        subsets(n, k)
    };
    let mut out = Vec::new();
    for dts in &parts {
        for exps in monomials(n, max_degree) {
            let f = PolyForm::from_terms(n, k, [(Q::one(), exps, dts.clone())]).expect("valid basis term");
            out.push(f);
        }
    }
    out
}

/// Coordinates of forms keyed by `(slot, term)`, assigning indices on demand.
#[derive(Default)]
pub(crate) struct TermIndex {
    index: BTreeMap<(usize, TermKey), usize>,
}

impl TermIndex {
    pub(crate) fn len(&self) -> usize {
        self.index.len()
    }

    pub(crate) fn vector(&mut self, slot: usize, f: &PolyForm) -> SparseVec {
        let next = &mut self.index;
        SparseVec::from_entries(f.terms().map(|(k, c)| {
            let len = next.len();
            let i = *next.entry((slot, k.clone())).or_insert(len);
            (i, c.clone())
        }))
    }

    /// Like [`TermIndex::vector`], but `None` if some term has never been seen.
    pub(crate) fn lookup(&self, slot: usize, f: &PolyForm) -> Option<SparseVec> {
        let mut entries = Vec::new();
        for (k, c) in f.terms() {
            entries.push((*self.index.get(&(slot, k.clone()))?, c.clone()));
        }
        Some(SparseVec::from_entries(entries))
    }
}

/// Finds `Φ` on Δ^n with `∂_i Φ = Φ_i` for every prescribed face.
///
/// Solves the linear restriction problem on forms of coefficient degree
/// `≤ D`, starting from the largest input degree and raising `D` until a
/// solution exists. The answer is one solution, not a canonical one.
pub fn extend_faces(family: &FaceFamily) -> Result<PolyForm> {
    family.check_compatible()?;
    let (n, k) = (family.n, family.degree);
    if family.faces.values().all(PolyForm::is_zero) {
        return Ok(PolyForm::zero(n, k));
    }
    let start = family.faces.values().map(PolyForm::poly_degree).max().unwrap_or(0);
    let limit = start + n as u32 + 2;
    for max_degree in start..=limit {
        let basis = form_basis(n, k, max_degree);
        let mut index = TermIndex::default();
        let mut echelon = Echelon::tracking();
        for b in &basis {
            let mut v = SparseVec::new();
            for &i in family.faces.keys() {
                v = v.add(&index.vector(i, &b.face(i)?));
            }
            echelon.insert(&v);
        }
        let mut target = SparseVec::new();
        let mut representable = true;
        for (&i, f) in &family.faces {
            match index.lookup(i, f) {
                Some(v) => target = target.add(&v),
                None => {
                    representable = false;
                    break;
                }
            }
        }
        if !representable {
            continue;
        }
        if let Some(coeffs) = echelon.solve(&target) {
            let mut out = PolyForm::zero(n, k);
            for (j, c) in coeffs.iter() {
                out = out.add(&basis[j].scaled(c))?;
            }
            return Ok(out);
        }
    }
    Err(Error::Precondition(format!(
        "no extension with coefficient degree ≤ {limit} (compatible families always extend; this indicates a bug)"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyform::parse_form;

    #[test]
    fn empty_family_extends_by_zero() {
        let fam = FaceFamily::new(3, 1, []).unwrap();
        let ext = extend_faces(&fam).unwrap();
        assert!(ext.is_zero());
        assert_eq!(ext.degree(), 1);
    }

    #[test]
    fn constants_on_both_ends_of_an_interval() {
        let fam = FaceFamily::new(1, 0, [(0, PolyForm::one(0)), (1, PolyForm::one(0))]).unwrap();
        let ext = extend_faces(&fam).unwrap();
        assert_eq!(ext.face(0).unwrap(), PolyForm::one(0));
        assert_eq!(ext.face(1).unwrap(), PolyForm::one(0));
    }

    #[test]
    fn faces_of_a_triangle_form() {
        let f = parse_form("2 t1^2 t2 dt1 + -3 t2 dt2 + 1/2 dt1", 2, None).unwrap();
        let fam = FaceFamily::of_form(&f, &[0, 1, 2]).unwrap();
        let ext = extend_faces(&fam).unwrap();
        for (i, phi) in fam.faces() {
            assert_eq!(&ext.face(*i).unwrap(), phi);
        }
    }

    #[test]
    fn incompatible_family_names_the_pair() {
        let f = parse_form("1 t1 t2", 2, None).unwrap();
        let mut faces: Vec<(usize, PolyForm)> = (0..=2).map(|i| (i, f.face(i).unwrap())).collect();
        faces[2].1 = faces[2].1.add(&PolyForm::one(1)).unwrap();
        let fam = FaceFamily::new(2, 0, faces).unwrap();
        match extend_faces(&fam) {
            Err(Error::IncompatibleFaces { i, j }) => assert_eq!((i, j), (0, 2)),
            other => panic!("expected incompatibility, got {other:?}"),
        }
    }

    #[test]
    fn basis_sizes() {
        // monomials of degree ≤ 2 in 2 variables: 6; one-forms pick dt1 or dt2
        assert_eq!(form_basis(2, 0, 2).len(), 6);
        assert_eq!(form_basis(2, 1, 2).len(), 12);
        assert_eq!(form_basis(2, 2, 2).len(), 6);
        assert!(form_basis(1, 2, 3).is_empty());
    }
}
