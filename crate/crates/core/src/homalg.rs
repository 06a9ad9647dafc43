//! Cohomology of finite cochain complexes over ℚ, induced maps, and the
//! cone contraction of the standard simplex.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Inserted, SparseMatrix, SparseVec};
use crate::rational::format_q;
use crate::sset::{increasing_sequences, std_simplex};

/// An inclusive range of degrees `lo..=hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: usize,
    pub hi: usize,
}

impl Window {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo > hi {
            return Err(Error::Argument(format!("empty degree window {lo}..{hi}")));
        }
        Ok(Self { lo, hi })
    }

    pub fn upto(hi: usize) -> Self {
        Self { lo: 0, hi }
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }

    pub fn contains(&self, k: usize) -> bool {
        self.lo <= k && k <= self.hi
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(format!("`{s}`"), "expected a degree window like 0..6");
        let (a, b) = s.split_once("..").ok_or_else(bad)?;
        let b = b.strip_prefix('=').unwrap_or(b);
        Window::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
    }
}

impl Serialize for Window {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Window {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A bounded cochain complex `C^0 → C^1 → … → C^top` of finite-dimensional
/// ℚ-vector spaces. Degrees past `top` are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    dims: Vec<usize>,
    diffs: Vec<SparseMatrix>,
}

impl CochainComplex {
    /// `diffs[k]` maps degree `k` to degree `k + 1`; there must be exactly
    /// `dims.len() - 1` of them. Rejects inputs with `d ∘ d ≠ 0`.
    pub fn new(dims: Vec<usize>, diffs: Vec<SparseMatrix>) -> Result<Self> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(Error::Argument(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.ncols() != dims[k] || d.nrows() != dims[k + 1] {
                return Err(Error::Argument(format!(
                    "differential in degree {k} is {}×{}, expected {}×{}",
                    d.nrows(),
                    d.ncols(),
                    dims[k + 1],
                    dims[k]
                )));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k].compose(&diffs[k - 1]).is_zero() {
                return Err(Error::Precondition(format!("d ∘ d ≠ 0 from degree {}", k - 1)));
            }
        }
        Ok(Self { dims, diffs })
    }

    pub fn zero() -> Self {
        Self {
            dims: Vec::new(),
            diffs: Vec::new(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    /// Number of stored degrees (`top + 1`).
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// The differential out of degree `k` (a zero matrix past the top).
    pub fn d(&self, k: usize) -> SparseMatrix {
        match self.diffs.get(k) {
            Some(m) => m.clone(),
            None => SparseMatrix::zeros(self.dim(k + 1), self.dim(k)),
        }
    }

    pub fn d_ref(&self, k: usize) -> Option<&SparseMatrix> {
        self.diffs.get(k)
    }

    pub fn apply_d(&self, k: usize, v: &SparseVec) -> SparseVec {
        match self.diffs.get(k) {
            Some(m) => m.apply(v),
            None => SparseVec::new(),
        }
    }

    /// The same complex with degrees above `top` dropped.
    pub fn truncated(&self, top: usize) -> Self {
        let n = self.dims.len().min(top + 1);
        Self {
            dims: self.dims[..n].to_vec(),
            diffs: self.diffs[..n.saturating_sub(1)].to_vec(),
        }
    }
}

/// Cohomology in one degree, with the data needed to take class coordinates.
#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    pub degree: usize,
    pub dimension: usize,
    /// Cocycles whose classes form a basis of `H^degree`.
    pub representatives: Vec<SparseVec>,
    classes: Echelon,
    n_boundary: usize,
}

impl DegreeCohomology {
    /// Coordinates of the class of cocycle `z` in the representative basis.
    pub fn class_of(&self, z: &SparseVec) -> Result<SparseVec> {
        let comb = self
            .classes
            .solve(z)
            .ok_or_else(|| Error::Precondition(format!("vector is not a cocycle in degree {}", self.degree)))?;
        Ok(comb.filtered(|i| i >= self.n_boundary).reindexed(|i| i - self.n_boundary))
    }

    /// Whether a cocycle is a coboundary.
    pub fn is_exact(&self, z: &SparseVec) -> Result<bool> {
        Ok(self.class_of(z)?.is_zero())
    }
}

/// A product structure constant: `[rep_i] · [rep_j] = Σ c_k [rep_k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureConstant {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub degree: usize,
    pub coefficients: Vec<(usize, String)>,
}

/// Dimensions and representatives of `H^k` for `k` in a window.
#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub window: Window,
    pub degrees: Vec<DegreeCohomology>,
    pub ring: Option<Vec<StructureConstant>>,
}

impl CohomologyReport {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dimension).collect()
    }

    pub fn degree(&self, k: usize) -> Option<&DegreeCohomology> {
        self.degrees.iter().find(|d| d.degree == k)
    }

    /// Fills in structure constants on the representative basis, given the
    /// cochain-level product `mult(p, a, q, b)` of a degree-`p` and a degree-`q` cochain.
    pub fn with_products(
        mut self,
        mut mult: impl FnMut(usize, &SparseVec, usize, &SparseVec) -> SparseVec,
    ) -> Result<Self> {
        let mut out = Vec::new();
        for a in &self.degrees {
            for b in &self.degrees {
                let Some(target) = self.degree(a.degree + b.degree) else { continue };
                for (i, x) in a.representatives.iter().enumerate() {
                    for (j, y) in b.representatives.iter().enumerate() {
                        let prod = mult(a.degree, x, b.degree, y);
                        let c = target.class_of(&prod)?;
                        out.push(StructureConstant {
                            left: (a.degree, i),
                            right: (b.degree, j),
                            degree: target.degree,
                            coefficients: c.iter().map(|(k, v)| (k, format_q(v))).collect(),
                        });
                    }
                }
            }
        }
        self.ring = Some(out);
        Ok(self)
    }

    /// JSON with representatives written through `label(degree, index)`.
    pub fn to_json(&self, label: &dyn Fn(usize, usize) -> String) -> serde_json::Value {
        let degrees: Vec<serde_json::Value> = self
            .degrees
            .iter()
            .map(|d| {
                let reps: Vec<serde_json::Value> = d
                    .representatives
                    .iter()
                    .map(|r| {
                        let m: serde_json::Map<String, serde_json::Value> = r
                            .iter()
                            .map(|(i, v)| (label(d.degree, i), serde_json::Value::String(format_q(v))))
                            .collect();
                        serde_json::Value::Object(m)
                    })
                    .collect();
                serde_json::json!({
                    "degree": d.degree,
                    "dimension": d.dimension,
                    "representatives": reps,
                })
            })
            .collect();
        let mut v = serde_json::json!({
            "window": self.window.to_string(),
            "dimensions": self.dims(),
            "degrees": degrees,
        });
        if let Some(ring) = &self.ring {
            v["ring"] = serde_json::to_value(ring).expect("structure constants serialize");
        }
        v
    }
}

/// Exact cohomology of `c` in the degrees of `window`.
///
/// Representatives are chosen greedily: kernel vectors in column order,
/// kept when independent of the coboundaries and of earlier choices.
pub fn cohomology(c: &CochainComplex, window: Window) -> CohomologyReport {
    let degrees = window.degrees().map(|k| degree_cohomology(c, k)).collect();
    CohomologyReport {
        window,
        degrees,
        ring: None,
    }
}

fn degree_cohomology(c: &CochainComplex, k: usize) -> DegreeCohomology {
    let n = c.dim(k);
    let cycles: Vec<SparseVec> = match c.d_ref(k) {
        Some(d) => d.kernel(),
        None => (0..n).map(SparseVec::unit).collect(),
    };
    let mut classes = Echelon::tracking();
    let mut n_boundary = 0;
    if k > 0 {
        if let Some(d) = c.d_ref(k - 1) {
            for col in d.columns() {
                classes.insert(col);
                n_boundary += 1;
            }
        }
    }
    let mut representatives = Vec::new();
    for z in cycles {
        if let Inserted::Independent(_) = classes.insert(&z) {
            representatives.push(z);
        }
    }
    // dependent cycles still consumed an insertion slot; re-index so class
    // coordinates count only the representatives
    let mut echelon = Echelon::tracking();
    if k > 0 {
        if let Some(d) = c.d_ref(k - 1) {
            for col in d.columns() {
                echelon.insert(col);
            }
        }
    }
    for z in &representatives {
        echelon.insert(z);
    }
    DegreeCohomology {
        degree: k,
        dimension: representatives.len(),
        representatives,
        classes: echelon,
        n_boundary,
    }
}

/// A degreewise linear map between cochain complexes that commutes with `d`.
#[derive(Clone, Debug)]
pub struct GradedMap {
    source: Arc<CochainComplex>,
    target: Arc<CochainComplex>,
    matrices: Vec<SparseMatrix>,
}

impl GradedMap {
    /// `matrices[k]` maps degree `k` of the source to degree `k` of the
    /// target; missing degrees are zero. Rejects non-chain maps, naming the
    /// first failing degree.
    pub fn new(source: Arc<CochainComplex>, target: Arc<CochainComplex>, matrices: Vec<SparseMatrix>) -> Result<Self> {
        for (k, m) in matrices.iter().enumerate() {
            if m.ncols() != source.dim(k) || m.nrows() != target.dim(k) {
                return Err(Error::Argument(format!(
                    "map in degree {k} is {}×{}, expected {}×{}",
                    m.nrows(),
                    m.ncols(),
                    target.dim(k),
                    source.dim(k)
                )));
            }
        }
        let map = Self {
            source,
            target,
            matrices,
        };
        let top = map.source.len().max(map.target.len());
        for k in 0..top {
            let lhs = map.target.d(k).compose(&map.at(k));
            let rhs = map.at(k + 1).compose(&map.source.d(k));
            if lhs != rhs {
                return Err(Error::Precondition(format!("not a chain map: d f ≠ f d in degree {k}")));
            }
        }
        Ok(map)
    }

    pub fn identity(c: Arc<CochainComplex>) -> Self {
        let matrices = c.dims().iter().map(|&n| SparseMatrix::identity(n)).collect();
        Self {
            source: c.clone(),
            target: c,
            matrices,
        }
    }

    pub fn zero(source: Arc<CochainComplex>, target: Arc<CochainComplex>) -> Self {
        Self {
            source,
            target,
            matrices: Vec::new(),
        }
    }

    pub fn source(&self) -> &Arc<CochainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CochainComplex> {
        &self.target
    }

    pub fn at(&self, k: usize) -> SparseMatrix {
        match self.matrices.get(k) {
            Some(m) => m.clone(),
            None => SparseMatrix::zeros(self.target.dim(k), self.source.dim(k)),
        }
    }
}

/// The maps induced on cohomology in each degree of `window`, in the
/// representative bases of [`cohomology`].
pub fn induced_map(f: &GradedMap, window: Window) -> Result<Vec<SparseMatrix>> {
    let hs = cohomology(f.source(), window);
    let ht = cohomology(f.target(), window);
    induced_with(f, &hs, &ht)
}

pub(crate) fn induced_with(f: &GradedMap, hs: &CohomologyReport, ht: &CohomologyReport) -> Result<Vec<SparseMatrix>> {
    let mut out = Vec::new();
    for (s, t) in hs.degrees.iter().zip(&ht.degrees) {
        let k = s.degree;
        let fk = f.at(k);
        // coboundaries must go to coboundaries for the map to be well defined on classes
        if k > 0 {
            for col in f.source().d(k - 1).columns() {
                if !t.is_exact(&fk.apply(col))? {
                    return Err(Error::Precondition(format!(
                        "map sends a coboundary to a non-trivial class in degree {k}"
                    )));
                }
            }
        }
        let cols = s
            .representatives
            .iter()
            .map(|z| t.class_of(&fk.apply(z)))
            .collect::<Result<Vec<_>>>()?;
        out.push(SparseMatrix::from_columns(t.dimension, cols));
    }
    Ok(out)
}

/// Result of [`is_quasi_iso`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiIsoWitness {
    pub holds: bool,
    /// `(degree, determinant)` for each degree where the induced map is square.
    pub determinants: Vec<(usize, String)>,
    pub failing_degree: Option<usize>,
}

/// Whether `f` induces isomorphisms on cohomology throughout `window`.
pub fn is_quasi_iso(f: &GradedMap, window: Window) -> Result<QuasiIsoWitness> {
    let hs = cohomology(f.source(), window);
    let ht = cohomology(f.target(), window);
    quasi_iso_with(f, &hs, &ht)
}

pub(crate) fn quasi_iso_with(f: &GradedMap, hs: &CohomologyReport, ht: &CohomologyReport) -> Result<QuasiIsoWitness> {
    let maps = induced_with(f, hs, ht)?;
    let mut determinants = Vec::new();
    let mut failing = None;
    for (m, s) in maps.iter().zip(&hs.degrees) {
        if m.nrows() != m.ncols() {
            failing.get_or_insert(s.degree);
            continue;
        }
        let det = m.determinant();
        if det.is_zero() {
            failing.get_or_insert(s.degree);
        }
        determinants.push((s.degree, format_q(&det)));
    }
    Ok(QuasiIsoWitness {
        holds: failing.is_none(),
        determinants,
        failing_degree: failing,
    })
}

/// The chain complex of normalized chains on Δ[n] together with the cone
/// (join with vertex 0) contraction `h`, which raises degree by one.
#[derive(Clone, Debug)]
pub struct ConeContraction {
    pub n: usize,
    /// Basis of `C_p`: increasing vertex sequences of length `p + 1`.
    pub basis: Vec<Vec<Vec<usize>>>,
    /// `boundary[p]: C_p → C_{p-1}` (empty matrix for `p = 0`).
    pub boundary: Vec<SparseMatrix>,
    /// `h[p]: C_p → C_{p+1}`.
    pub h: Vec<SparseMatrix>,
}

impl ConeContraction {
    /// The map `id − η∘ε` on `C_p`, where `ε` is the augmentation and `η`
    /// picks the vertex 0.
    pub fn identity_minus_augmentation(&self, p: usize) -> SparseMatrix {
        let dim = self.basis[p].len();
        if p > 0 {
            return SparseMatrix::identity(dim);
        }
        let cols = (0..dim)
            .map(|j| SparseVec::unit(j).sub(&SparseVec::unit(0)))
            .collect();
        SparseMatrix::from_columns(dim, cols)
    }

    /// `∂h + h∂` on `C_p`.
    pub fn homotopy_sum(&self, p: usize) -> SparseMatrix {
        let dh = self.boundary_at(p + 1).compose(&self.h_at(p));
        if p == 0 {
            return dh;
        }
        let hd = self.h_at(p - 1).compose(&self.boundary[p]);
        let sum: Vec<SparseVec> = dh.columns().iter().zip(hd.columns()).map(|(a, b)| a.add(b)).collect();
        SparseMatrix::from_columns(self.basis[p].len(), sum)
    }

    /// Checks `∂h + h∂ = id − η∘ε` in every degree, naming the first failing chain.
    pub fn verify(&self) -> Result<()> {
        for p in 0..=self.n {
            let lhs = self.homotopy_sum(p);
            let rhs = self.identity_minus_augmentation(p);
            for j in 0..self.basis[p].len() {
                if lhs.column(j) != rhs.column(j) {
                    return Err(Error::Precondition(format!(
                        "cone identity fails on chain {:?}",
                        self.basis[p][j]
                    )));
                }
            }
        }
        Ok(())
    }

    fn boundary_at(&self, p: usize) -> SparseMatrix {
        if p <= self.n {
            self.boundary[p].clone()
        } else {
            SparseMatrix::zeros(self.basis[self.n].len(), 0)
        }
    }

    fn h_at(&self, p: usize) -> SparseMatrix {
        self.h[p].clone()
    }
}

/// The cone contraction on normalized chains of Δ[n]:
/// `h(v_0 … v_p) = (0 v_0 … v_p)` when `v_0 ≠ 0`, and `0` otherwise.
pub fn cone_contraction(n: usize) -> ConeContraction {
    let basis: Vec<Vec<Vec<usize>>> = (0..=n).map(|p| increasing_sequences(n, p)).collect();
    // boundary matrices are the transposes of the cochain differentials of Δ[n]
    let delta = crate::cochain::cochain_complex(&std_simplex(n));
    let mut boundary = vec![SparseMatrix::zeros(0, basis[0].len())];
    for p in 1..=n {
        boundary.push(delta.d(p - 1).transpose());
    }
    let mut h = Vec::with_capacity(n + 1);
    for p in 0..=n {
        let target_len = if p < n { basis[p + 1].len() } else { 0 };
        let cols = basis[p]
            .iter()
            .map(|s| {
                if s[0] == 0 || p == n {
                    return SparseVec::new();
                }
                let mut cone = Vec::with_capacity(p + 2);
                cone.push(0);
                cone.extend_from_slice(s);
                let idx = basis[p + 1].binary_search(&cone).expect("cone is a face of Δ[n]");
                SparseVec::unit(idx)
            })
            .collect();
        h.push(SparseMatrix::from_columns(target_len, cols));
    }
    ConeContraction { n, basis, boundary, h }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn two_term_iso() -> CochainComplex {
        CochainComplex::new(vec![1, 1], vec![SparseMatrix::from_rows(&[vec![q(2)]], 1)]).unwrap()
    }

    #[test]
    fn zero_complex_has_no_cohomology() {
        let r = cohomology(&CochainComplex::zero(), Window::upto(3));
        assert_eq!(r.dims(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn rejects_non_complex() {
        let d0 = SparseMatrix::from_rows(&[vec![q(1)]], 1);
        let d1 = SparseMatrix::from_rows(&[vec![q(1)]], 1);
        assert!(matches!(CochainComplex::new(vec![1, 1, 1], vec![d0, d1]), Err(Error::Precondition(_))));
    }

    #[test]
    fn acyclic_two_term() {
        assert_eq!(cohomology(&two_term_iso(), Window::upto(2)).dims(), vec![0, 0, 0]);
    }

    #[test]
    fn identity_and_zero_maps() {
        let c = Arc::new(CochainComplex::new(vec![2, 1], vec![SparseMatrix::zeros(1, 2)]).unwrap());
        let id = GradedMap::identity(c.clone());
        let m = induced_map(&id, Window::upto(1)).unwrap();
        assert_eq!(m[0], SparseMatrix::identity(2));
        assert_eq!(m[1], SparseMatrix::identity(1));
        assert!(is_quasi_iso(&id, Window::upto(1)).unwrap().holds);
        let z = GradedMap::zero(c.clone(), c);
        let m = induced_map(&z, Window::upto(1)).unwrap();
        assert!(m.iter().all(SparseMatrix::is_zero));
    }

    #[test]
    fn inclusion_of_zero_is_not_quasi_iso() {
        let c = Arc::new(CochainComplex::new(vec![1], vec![]).unwrap());
        let z = GradedMap::zero(Arc::new(CochainComplex::zero()), c);
        let w = is_quasi_iso(&z, Window::upto(1)).unwrap();
        assert!(!w.holds);
        assert_eq!(w.failing_degree, Some(0));
    }

    #[test]
    fn non_chain_map_rejected() {
        let c = Arc::new(two_term_iso());
        let f = vec![SparseMatrix::identity(1), SparseMatrix::zeros(1, 1)];
        let err = GradedMap::new(c.clone(), c, f).unwrap_err();
        assert!(err.to_string().contains("degree 0"), "{err}");
    }

    #[test]
    fn window_parsing() {
        assert_eq!("0..6".parse::<Window>().unwrap(), Window::upto(6));
        assert_eq!("2..=3".parse::<Window>().unwrap(), Window { lo: 2, hi: 3 });
        assert!("3..1".parse::<Window>().is_err());
        assert!("x".parse::<Window>().is_err());
    }

    #[test]
    fn cone_contraction_small() {
        let c0 = cone_contraction(0);
        assert!(c0.h[0].is_zero());
        c0.verify().unwrap();
        cone_contraction(1).verify().unwrap();
        cone_contraction(3).verify().unwrap();
    }
}
