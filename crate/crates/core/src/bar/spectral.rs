//! Filtered complexes and their spectral sequences, computed from the
//! `Z/B` tower with exact linear algebra.
//!
//! For a decreasing filtration `F^p`,
//! `Z_r^p = {x ∈ F^p : dx ∈ F^{p+r}}` and
//! `E_r^p = Z_r^p / (Z_{r−1}^{p+1} + d Z_{r−1}^{p−r+1})`, graded by total
//! degree `n` and reported at `(p, q = n − p)`.

use std::cell::RefCell;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homalg::{CochainComplex, Window};
use crate::linalg::{Echelon, Inserted, SparseMatrix, SparseVec};

use super::complex::BarComplex;

/// A cochain complex with a filtration degree on every basis element;
/// `F^p` is spanned by the basis elements of filtration `≥ p`.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    complex: CochainComplex,
    filtration: Vec<Vec<i64>>,
}

impl FilteredComplex {
    /// Rejects filtrations that `d` does not preserve.
    pub fn new(complex: CochainComplex, filtration: Vec<Vec<i64>>) -> Result<Self> {
        if filtration.len() != complex.len() || filtration.iter().zip(complex.dims()).any(|(f, &d)| f.len() != d) {
            return Err(Error::Argument("filtration does not match the complex's bases".into()));
        }
        for k in 0..complex.len().saturating_sub(1) {
            let d = complex.d(k);
            for (c, col) in d.columns().iter().enumerate() {
                for (r, _) in col.iter() {
                    if filtration[k + 1][r] < filtration[k][c] {
                        return Err(Error::Precondition(format!("d lowers filtration in degree {k}")));
                    }
                }
            }
        }
        Ok(Self { complex, filtration })
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn filtration(&self, k: usize) -> &[i64] {
        self.filtration.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    fn range(&self) -> Option<(i64, i64)> {
        let all = self.filtration.iter().flatten();
        Some((*all.clone().min()?, *all.max()?))
    }
}

/// Words of length `s` sit in filtration `−s`.
pub fn bar_length_filtration(b: &BarComplex) -> Result<FilteredComplex> {
    let filtration = (0..b.complex().len())
        .map(|k| b.words(k).iter().map(|w| -(w.len() as i64)).collect())
        .collect();
    FilteredComplex::new(b.complex().clone(), filtration)
}

/// One nonzero entry of a bigraded table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Bigraded {
    pub p: i64,
    pub q: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Page {
    pub r: usize,
    pub entries: Vec<Bigraded>,
    /// Nonzero ranks of `d_r`, indexed by the source bidegree.
    pub differential_ranks: Vec<Bigraded>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralPages {
    pub window: Window,
    pub pages: Vec<Page>,
    /// Associated graded of `H` for the induced filtration.
    pub associated_graded: Vec<Bigraded>,
    /// Every `E_{r+1}` equals `H(E_r, d_r)` dimensionwise.
    pub page_turn_holds: bool,
    /// The last page equals the associated graded of `H`.
    pub converges: bool,
}

impl SpectralPages {
    pub fn page(&self, r: usize) -> Option<&Page> {
        self.pages.iter().find(|p| p.r == r)
    }

    pub fn last(&self) -> &Page {
        self.pages.last().expect("at least one page")
    }

    /// Total dimension in each degree of the window for a table.
    pub fn totals(window: Window, entries: &[Bigraded]) -> Vec<usize> {
        window
            .degrees()
            .map(|n| entries.iter().filter(|e| e.p + e.q == n as i64).map(|e| e.dim).sum())
            .collect()
    }
}

type Key = (usize, i64, i64);

struct Tower<'a> {
    f: &'a FilteredComplex,
    z: RefCell<BTreeMap<Key, Vec<SparseVec>>>,
}

fn rank(vs: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(&v);
    }
    e.rank()
}

impl<'a> Tower<'a> {
    fn new(f: &'a FilteredComplex) -> Self {
        Self {
            f,
            z: RefCell::new(BTreeMap::new()),
        }
    }

    fn d(&self, n: usize) -> SparseMatrix {
        self.f.complex.d(n)
    }

    /// `Z_r^p` in degree `n`; `r ≤ 0` gives `F^p`.
    fn z(&self, r: i64, p: i64, n: usize) -> Vec<SparseVec> {
        let key = (n, r.max(0), p);
        if let Some(v) = self.z.borrow().get(&key) {
            return v.clone();
        }
        let filt = self.f.filtration(n);
        let cols: Vec<usize> = (0..filt.len()).filter(|&i| filt[i] >= p).collect();
        let out: Vec<SparseVec> = if r <= 0 {
            cols.iter().map(|&i| SparseVec::unit(i)).collect()
        } else {
            let target = self.f.filtration(n + 1);
            let d = self.d(n);
            let restricted: Vec<SparseVec> = cols
                .iter()
                .map(|&c| d.column(c).filtered(|row| target[row] < p + r))
                .collect();
            SparseMatrix::from_columns(target.len(), restricted)
                .kernel()
                .into_iter()
                .map(|v| v.reindexed(|j| cols[j]))
                .collect()
        };
        self.z.borrow_mut().insert(key, out.clone());
        out
    }

    /// `Z_{r−1}^{p+1} + d Z_{r−1}^{p−r+1}` in degree `n`.
    fn denominator(&self, r: i64, p: i64, n: usize) -> Vec<SparseVec> {
        let mut out = self.z(r - 1, p + 1, n);
        if n > 0 {
            let d = self.d(n - 1);
            out.extend(self.z(r - 1, p - r + 1, n - 1).iter().map(|v| d.apply(v)));
        }
        out
    }

    fn e_dim(&self, r: i64, p: i64, n: usize) -> usize {
        let den = self.denominator(r, p, n);
        let mut e = Echelon::new();
        for v in &den {
            e.insert(v);
        }
        let base = e.rank();
        for v in self.z(r, p, n) {
            e.insert(&v);
        }
        e.rank() - base
    }

    /// Rank of `d_r : E_r^{p,n} → E_r^{p+r,n+1}`.
    fn d_rank(&self, r: i64, p: i64, n: usize) -> usize {
        let den = self.denominator(r, p, n);
        let mut e = Echelon::new();
        for v in &den {
            e.insert(v);
        }
        let mut reps = Vec::new();
        for v in self.z(r, p, n) {
            if let Inserted::Independent(_) = e.insert(&v) {
                reps.push(v);
            }
        }
        if reps.is_empty() {
            return 0;
        }
        let d = self.d(n);
        let target = self.denominator(r, p + r, n + 1);
        let base = rank(target.iter().cloned());
        rank(target.into_iter().chain(reps.iter().map(|v| d.apply(v)))) - base
    }

    /// `dim F^p H^n / F^{p+1} H^n`.
    fn graded_h(&self, p: i64, n: usize) -> usize {
        let boundaries: Vec<SparseVec> = if n > 0 {
            let d = self.d(n - 1);
            (0..self.f.complex.dim(n - 1)).map(|i| d.column(i).clone()).collect()
        } else {
            Vec::new()
        };
        let big = |p: i64| {
            let cycles = self.z(i64::MAX / 4, p, n);
            rank(boundaries.iter().cloned().chain(cycles))
        };
        big(p) - big(p + 1)
    }
}

/// Pages `E_1 … E_{r_max}`, the page-turn check, and the comparison of the
/// last page with the associated graded of `H` in `window`.
///
/// `r_max = None` runs until the filtration length guarantees degeneration.
pub fn spectral_sequence(f: &FilteredComplex, window: Window, r_max: Option<usize>) -> Result<SpectralPages> {
    let tower = Tower::new(f);
    let Some((lo, hi)) = f.range() else {
        return Ok(SpectralPages {
            window,
            pages: vec![Page {
                r: 1,
                entries: Vec::new(),
                differential_ranks: Vec::new(),
            }],
            associated_graded: Vec::new(),
            page_turn_holds: true,
            converges: true,
        });
    };
    let span = (hi - lo) as usize;
    let last = r_max.unwrap_or(span + 2).max(1);
    let mut pages = Vec::new();
    let mut page_turn_holds = true;
    for r in 1..=last {
        let ri = r as i64;
        let mut entries = Vec::new();
        let mut differential_ranks = Vec::new();
        for n in window.degrees() {
            for p in lo..=hi {
                let dim = tower.e_dim(ri, p, n);
                if dim > 0 {
                    entries.push(Bigraded { p, q: n as i64 - p, dim });
                }
                let rk = if dim > 0 { tower.d_rank(ri, p, n) } else { 0 };
                if rk > 0 {
                    differential_ranks.push(Bigraded { p, q: n as i64 - p, dim: rk });
                }
                if r < last {
                    let incoming = if n > 0 { tower.d_rank(ri, p - ri, n - 1) } else { 0 };
                    let next = tower.e_dim(ri + 1, p, n);
                    if next + rk + incoming != dim {
                        page_turn_holds = false;
                    }
                }
            }
        }
        pages.push(Page {
            r,
            entries,
            differential_ranks,
        });
    }
    let mut associated_graded = Vec::new();
    for n in window.degrees() {
        for p in lo..=hi {
            let dim = tower.graded_h(p, n);
            if dim > 0 {
                associated_graded.push(Bigraded { p, q: n as i64 - p, dim });
            }
        }
    }
    let converges = pages.last().map(|pg| pg.entries == associated_graded).unwrap_or(false);
    Ok(SpectralPages {
        window,
        pages,
        associated_graded,
        page_turn_holds,
        converges,
    })
}
