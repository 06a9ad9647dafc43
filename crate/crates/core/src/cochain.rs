//! Normalized rational cochains on a finite simplicial set and the
//! Alexander–Whitney cup product.
//!
//! Conventions: `(δc)(σ) = Σ_i (−1)^i c(d_i σ)`, and
//! `(a ⌣ b)(σ) = a(front_p σ) · b(back_q σ)` with no extra sign.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::homalg::CochainComplex;
use crate::linalg::{SparseMatrix, SparseVec};
use crate::rational::{sign, Q};
use crate::sset::{FiniteSimplicialSet, SimplexRef};

/// A normalized `p`-cochain: values on the nondegenerate `p`-simplices,
/// indexed by position among the generators of dimension `p`.
#[derive(Clone, Debug)]
pub struct Cochain {
    base: Arc<FiniteSimplicialSet>,
    degree: usize,
    values: SparseVec,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        same_base(&self.base, &other.base) && self.degree == other.degree && self.values == other.values
    }
}

impl Eq for Cochain {}

pub(crate) fn same_base(a: &Arc<FiniteSimplicialSet>, b: &Arc<FiniteSimplicialSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Cochain {
    pub fn new(base: Arc<FiniteSimplicialSet>, degree: usize, values: SparseVec) -> Result<Self> {
        if values.support_end() > base.count_in_dim(degree) {
            return Err(Error::Argument(format!(
                "cochain values exceed the {} generators in degree {degree}",
                base.count_in_dim(degree)
            )));
        }
        Ok(Self { base, degree, values })
    }

    pub fn zero(base: Arc<FiniteSimplicialSet>, degree: usize) -> Self {
        Self {
            base,
            degree,
            values: SparseVec::new(),
        }
    }

    /// The constant 0-cochain 1, the unit of the cup product.
    pub fn unit(base: Arc<FiniteSimplicialSet>) -> Self {
        let n = base.count_in_dim(0);
        let values = SparseVec::from_entries((0..n).map(|i| (i, Q::from_integer(1.into()))));
        Self { base, degree: 0, values }
    }

    pub fn base(&self) -> &Arc<FiniteSimplicialSet> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &SparseVec {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    /// Value on an arbitrary simplex; degenerate simplices give 0.
    pub fn eval(&self, r: &SimplexRef) -> Q {
        if r.is_degenerate() || r.dim != self.degree {
            return Q::zero();
        }
        self.values.get(self.base.position(r.generator))
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        Ok(Self {
            base: self.base.clone(),
            degree: self.degree,
            values: self.values.add(&other.values),
        })
    }

    pub fn scaled(&self, c: &Q) -> Cochain {
        Self {
            base: self.base.clone(),
            degree: self.degree,
            values: self.values.scaled(c),
        }
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if !same_base(&self.base, &other.base) {
            return Err(Error::Argument("cochains live on different simplicial sets".into()));
        }
        if self.degree != other.degree {
            return Err(Error::Argument(format!(
                "degree mismatch: {} vs {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    /// The coboundary `δc`.
    pub fn coboundary(&self) -> Cochain {
        let k = &self.base;
        let p = self.degree;
        let entries = k.generators_in_dim(p + 1).iter().filter_map(|&g| {
            let s = SimplexRef::nondegenerate(g, p + 1);
            let v: Q = (0..=p + 1)
                .map(|i| sign(i % 2 == 1) * self.eval(&k.face(&s, i).expect("face in range")))
                .sum();
            (!v.is_zero()).then(|| (k.position(g), v))
        });
        Self {
            base: k.clone(),
            degree: p + 1,
            values: SparseVec::from_entries(entries),
        }
    }

    /// Pullback along a simplicial map `f: L → K` (this cochain lives on `K`).
    pub fn pullback(&self, f: &crate::sset::SimplicialMap) -> Result<Cochain> {
        if !same_base(f.target(), &self.base) {
            return Err(Error::Argument("map target is not the cochain's simplicial set".into()));
        }
        let l = f.source();
        let entries = l
            .generators_in_dim(self.degree)
            .iter()
            .map(|&g| (l.position(g), self.eval(f.image(g))));
        Ok(Cochain {
            base: l.clone(),
            degree: self.degree,
            values: SparseVec::from_entries(entries),
        })
    }
}

/// The normalized cochain complex of `k`.
pub fn cochain_complex(k: &FiniteSimplicialSet) -> CochainComplex {
    let dims = k.counts();
    let mut diffs = Vec::new();
    for p in 0..dims.len().saturating_sub(1) {
        let mut cols = vec![Vec::new(); dims[p]];
        for &g in k.generators_in_dim(p + 1) {
            let s = SimplexRef::nondegenerate(g, p + 1);
            for i in 0..=p + 1 {
                let f = k.face(&s, i).expect("face in range");
                if !f.is_degenerate() {
                    cols[k.position(f.generator)].push((k.position(g), sign(i % 2 == 1)));
                }
            }
        }
        let cols = cols.into_iter().map(SparseVec::from_entries).collect();
        diffs.push(SparseMatrix::from_columns(dims[p + 1], cols));
    }
    CochainComplex::new(dims, diffs).expect("normalized cochains form a complex")
}

/// Alexander–Whitney cup product.
pub fn cup(a: &Cochain, b: &Cochain) -> Result<Cochain> {
    if !same_base(&a.base, &b.base) {
        return Err(Error::Argument("cup of cochains on different simplicial sets".into()));
    }
    let k = &a.base;
    let (p, q) = (a.degree, b.degree);
    let front: Vec<usize> = (0..=p).collect();
    let back: Vec<usize> = (p..=p + q).collect();
    let mut entries = Vec::new();
    for &g in k.generators_in_dim(p + q) {
        let s = SimplexRef::nondegenerate(g, p + q);
        let x = a.eval(&k.apply(&s, &front)?);
        if x.is_zero() {
            continue;
        }
        let y = b.eval(&k.apply(&s, &back)?);
        entries.push((k.position(g), x * y));
    }
    Ok(Cochain {
        base: k.clone(),
        degree: p + q,
        values: SparseVec::from_entries(entries),
    })
}

/// Cup product on coordinate vectors, the form [`crate::homalg::CohomologyReport::with_products`] expects.
pub fn cup_vectors(k: &Arc<FiniteSimplicialSet>, p: usize, a: &SparseVec, q: usize, b: &SparseVec) -> SparseVec {
    let a = Cochain::new(k.clone(), p, a.clone()).expect("vector fits the degree");
    let b = Cochain::new(k.clone(), q, b.clone()).expect("vector fits the degree");
    cup(&a, &b).expect("same base").values
}
