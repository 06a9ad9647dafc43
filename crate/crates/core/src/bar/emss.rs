//! Tor of a graded algebra and the Eilenberg–Moore comparison for the
//! bar-length spectral sequence.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homalg::{cohomology, CochainComplex, Window};
use crate::linalg::SparseMatrix;

use super::complex::{reduced_bar, two_sided_bar, BarComplex};
use super::dga::FiniteDGA;
use super::module::{DgModule, Side};
use super::spectral::{bar_length_filtration, spectral_sequence, Bigraded, SpectralPages};

/// One nonzero group `Tor_s` in internal degree `t`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TorEntry {
    pub length: usize,
    pub internal: usize,
    pub dim: usize,
}

/// The subcomplex of words of one internal degree.
fn internal_block(b: &BarComplex, t: usize) -> CochainComplex {
    let c = b.complex();
    let keep: Vec<Vec<usize>> = (0..c.len())
        .map(|k| (0..b.words(k).len()).filter(|&i| b.internal_degree(&b.words(k)[i]) == t).collect())
        .collect();
    let dims: Vec<usize> = keep.iter().map(Vec::len).collect();
    let mut diffs = Vec::new();
    for k in 0..c.len().saturating_sub(1) {
        let d = c.d(k);
        let pos: std::collections::BTreeMap<usize, usize> =
            keep[k + 1].iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let cols = keep[k]
            .iter()
            .map(|&i| {
                let col = d.column(i);
                debug_assert!(col.iter().all(|(r, _)| pos.contains_key(&r)));
                col.filtered(|r| pos.contains_key(&r)).reindexed(|r| pos[&r])
            })
            .collect();
        diffs.push(SparseMatrix::from_columns(dims[k + 1], cols));
    }
    CochainComplex::new(dims, diffs).expect("block of a complex")
}

/// `Tor^A(ℚ, ℚ)` by (length, internal degree), from the reduced bar complex,
/// for total degrees `internal − length` in `window`.
pub fn tor_bigraded(a: &FiniteDGA, window: Window) -> Result<Vec<TorEntry>> {
    if !a.has_zero_differential() {
        return Err(Error::Precondition(
            "Tor is computed for graded algebras; take the bar complex of the DGA instead".into(),
        ));
    }
    let b = reduced_bar(a, window.hi)?;
    // internal degree t = n + s ≤ 2n for letters of degree ≥ 2
    let mut out = Vec::new();
    for t in 0..=2 * (window.hi + 1) {
        let block = internal_block(&b, t);
        let h = cohomology(&block, window);
        for d in &h.degrees {
            if d.dimension > 0 {
                out.push(TorEntry {
                    length: t - d.degree,
                    internal: t,
                    dim: d.dimension,
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum EmssStatus {
    Pass,
    Fail,
    Warning,
}

impl std::fmt::Display for EmssStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EmssStatus::Pass => "PASS",
            EmssStatus::Fail => "FAIL",
            EmssStatus::Warning => "WARNING",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EmssReport {
    pub status: EmssStatus,
    pub window: Window,
    /// `dim H^k(B̄(A))` for `k` in the window.
    pub bar_dims: Vec<usize>,
    pub e2: Vec<Bigraded>,
    /// Tor of `H(A)`, placed at `(p, q) = (−length, internal)`.
    pub tor: Vec<Bigraded>,
    pub e2_matches_tor: bool,
    pub e_infinity_totals: Vec<usize>,
    pub e_infinity_matches: bool,
    pub page_turn_holds: bool,
    /// `B(A, A, ℚ)` has cohomology ℚ in degree 0 only, within the window.
    pub two_sided_acyclic: bool,
    /// Whether `A` already had zero differential (otherwise Tor is taken over `H(A)`).
    pub formal_input: bool,
    pub messages: Vec<String>,
    pub pages: SpectralPages,
}

/// E_2 of the bar-length filtration against Tor of `H(A)`, and E_∞ against `H(B̄(A))`.
pub fn emss_check(a: &FiniteDGA, window: Window) -> Result<EmssReport> {
    let b = reduced_bar(a, window.hi)?;
    let bar_dims = b.cohomology(window)?.dims();
    let f = bar_length_filtration(&b)?;
    let pages = spectral_sequence(&f, window, None)?;
    let mut messages = Vec::new();

    let mut e2 = pages.page(2).map(|p| p.entries.clone()).unwrap_or_default();
    e2.sort();
    let formal_input = a.has_zero_differential();
    let h = if formal_input { a.clone() } else { a.cohomology_algebra()? };
    let mut tor: Vec<Bigraded> = tor_bigraded(&h, window)?
        .into_iter()
        .map(|e| Bigraded {
            p: -(e.length as i64),
            q: e.internal as i64,
            dim: e.dim,
        })
        .collect();
    tor.sort();
    let e2_matches_tor = e2 == tor;
    if !e2_matches_tor {
        messages.push("E_2 differs from Tor of the cohomology algebra".into());
    }

    let e_infinity_totals = SpectralPages::totals(window, &pages.last().entries);
    let e_infinity_matches = e_infinity_totals == bar_dims && pages.converges;
    if !e_infinity_matches {
        messages.push("E_∞ does not match the cohomology of the reduced bar complex".into());
    }
    if !pages.page_turn_holds {
        messages.push("a page is not the cohomology of the previous one".into());
    }

    let two = two_sided_bar(&DgModule::regular(a, Side::Right), a, &DgModule::ground(a, Side::Left), window.hi)?;
    let acyc = two.cohomology(window)?.dims();
    let two_sided_acyclic = window
        .degrees()
        .zip(&acyc)
        .all(|(k, &d)| d == usize::from(k == 0));
    if !two_sided_acyclic {
        messages.push("B(A, A, ℚ) is not acyclic in the window".into());
    }

    let ok = e2_matches_tor && e_infinity_matches && pages.page_turn_holds && two_sided_acyclic;
    let min_letter = (0..a.dim()).filter(|&i| i != a.unit()).map(|i| a.degree(i) - 1).min();
    let status = if !ok {
        EmssStatus::Fail
    } else if min_letter.is_some_and(|m| m > window.hi) {
        messages.push(format!("window {window} holds no bar words of positive length"));
        EmssStatus::Warning
    } else {
        EmssStatus::Pass
    };
    Ok(EmssReport {
        status,
        window,
        bar_dims,
        e2,
        tor,
        e2_matches_tor,
        e_infinity_totals,
        e_infinity_matches,
        page_turn_holds: pages.page_turn_holds,
        two_sided_acyclic,
        formal_input,
        messages,
        pages,
    })
}
