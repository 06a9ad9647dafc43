//! Normalized two-sided bar constructions, truncated by total degree.
//!
//! A word `m[a_1|…|a_k]n` has total degree `|m| + Σ(|a_i| − 1) + |n|`.
//! With `ε_i = |m| + Σ_{j<i} (|a_j| − 1)` the differential is `d_0 + d_1`:
//!
//! ```text
//! d_0 = dm[…]n − Σ_i (−1)^{ε_i} m[…|da_i|…]n + (−1)^{ε_{k+1}} m[…]dn
//! d_1 = (−1)^{|m|} m·a_1[a_2|…]n + Σ_{i≥2} (−1)^{ε_i} m[…|a_{i−1}a_i|…]n
//!       − (−1)^{ε_k} m[a_1|…|a_{k−1}]a_k·n
//! ```
//!
//! Letters run over the non-unit basis elements, which span the augmentation
//! ideal when `A^0 = ℚ·1`; products are projected onto that ideal.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::homalg::{cohomology, CochainComplex, CohomologyReport, Window};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::rational::{sign, Q};

use super::dga::FiniteDGA;
use super::module::{DgModule, Side};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarWord {
    pub left: usize,
    pub letters: Vec<usize>,
    pub right: usize,
}

impl BarWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// `B(L, A, R)` in total degrees `0..=top + 1`; cohomology is exact up to `top`.
#[derive(Clone, Debug)]
pub struct BarComplex {
    top: usize,
    algebra: FiniteDGA,
    left: DgModule,
    right: DgModule,
    words: Vec<Vec<BarWord>>,
    index: BTreeMap<BarWord, usize>,
    complex: CochainComplex,
}

fn check_connected(a: &FiniteDGA) -> Result<()> {
    if !a.is_simply_connected() {
        return Err(Error::Precondition(
            "bar constructions need A^0 = ℚ·1 and A^1 = 0 to stay finite in each degree".into(),
        ));
    }
    Ok(())
}

/// `B(L, A, R)` for a right module `L` and a left module `R`.
pub fn two_sided_bar(left: &DgModule, a: &FiniteDGA, right: &DgModule, top: usize) -> Result<BarComplex> {
    check_connected(a)?;
    if left.side() != Side::Right || right.side() != Side::Left {
        return Err(Error::Structure("two-sided bar needs a right module on the left and a left module on the right".into()));
    }
    let limit = top + 1;
    let letters: Vec<usize> = (0..a.dim()).filter(|&i| i != a.unit()).collect();
    // letter sequences with Σ(|a| − 1) ≤ limit
    let mut seqs: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    let mut frontier = seqs.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (s, w) in &frontier {
            for &x in &letters {
                let w2 = w + a.degree(x) - 1;
                if w2 <= limit {
                    let mut s2 = s.clone();
                    s2.push(x);
                    next.push((s2, w2));
                }
            }
        }
        seqs.extend(next.iter().cloned());
        frontier = next;
    }
    let mut words = vec![Vec::new(); limit + 1];
    for (s, w) in &seqs {
        for m in 0..left.dim() {
            for n in 0..right.dim() {
                let deg = w + left.degree(m) + right.degree(n);
                if deg <= limit {
                    words[deg].push(BarWord {
                        left: m,
                        letters: s.clone(),
                        right: n,
                    });
                }
            }
        }
    }
    for ws in &mut words {
        ws.sort_by(|x, y| (x.len(), &x.letters, x.left, x.right).cmp(&(y.len(), &y.letters, y.left, y.right)));
    }
    let index: BTreeMap<BarWord, usize> = words
        .iter()
        .flat_map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)))
        .collect();
    let mut b = BarComplex {
        top,
        algebra: a.clone(),
        left: left.clone(),
        right: right.clone(),
        words,
        index,
        complex: CochainComplex::zero(),
    };
    let dims: Vec<usize> = b.words.iter().map(Vec::len).collect();
    let mut diffs = Vec::new();
    for k in 0..limit {
        let cols = b.words[k].iter().map(|w| b.vector(&b.d_word(w))).collect();
        diffs.push(SparseMatrix::from_columns(dims[k + 1], cols));
    }
    b.complex = CochainComplex::new(dims, diffs)
        .map_err(|e| Error::Structure(format!("bar differential does not square to zero: {e}")))?;
    Ok(b)
}

/// `B̄(A) = B(ℚ, A, ℚ)`.
pub fn reduced_bar(a: &FiniteDGA, top: usize) -> Result<BarComplex> {
    two_sided_bar(&DgModule::ground(a, Side::Right), a, &DgModule::ground(a, Side::Left), top)
}

impl BarComplex {
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn algebra(&self) -> &FiniteDGA {
        &self.algebra
    }

    pub fn left(&self) -> &DgModule {
        &self.left
    }

    pub fn right(&self) -> &DgModule {
        &self.right
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    /// Basis words of total degree `k` (empty above `top + 1`).
    pub fn words(&self, k: usize) -> &[BarWord] {
        self.words.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn position(&self, w: &BarWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn total_degree(&self, w: &BarWord) -> usize {
        self.left.degree(w.left)
            + w.letters.iter().map(|&x| self.algebra.degree(x) - 1).sum::<usize>()
            + self.right.degree(w.right)
    }

    /// Sum of letter degrees, before suspension.
    pub fn internal_degree(&self, w: &BarWord) -> usize {
        self.left.degree(w.left) + w.letters.iter().map(|&x| self.algebra.degree(x)).sum::<usize>() + self.right.degree(w.right)
    }

    fn vector(&self, terms: &[(BarWord, Q)]) -> SparseVec {
        SparseVec::from_entries(terms.iter().map(|(w, c)| (self.index[w], c.clone())))
    }

    /// The differential of one word, as a list of terms.
    pub fn d_word(&self, w: &BarWord) -> Vec<(BarWord, Q)> {
        let a = &self.algebra;
        let unit = a.unit();
        let k = w.letters.len();
        let m_deg = self.left.degree(w.left);
        let mut eps = vec![0usize; k + 2];
        eps[1] = m_deg;
        for i in 1..=k {
            eps[i + 1] = eps[i] + a.degree(w.letters[i - 1]) - 1;
        }
        let odd = |e: usize| sign(e % 2 == 1);
        let mut out: Vec<(BarWord, Q)> = Vec::new();
        let mut push = |word: BarWord, c: Q| {
            if !c.is_zero() {
                out.push((word, c));
            }
        };
        for (m, c) in self.left.d_basis(w.left).iter() {
            push(BarWord { left: m, ..w.clone() }, c.clone());
        }
        for i in 1..=k {
            for (x, c) in a.d_basis(w.letters[i - 1]).iter() {
                if x == unit {
                    continue;
                }
                let mut letters = w.letters.clone();
                letters[i - 1] = x;
                push(BarWord { letters, ..w.clone() }, -odd(eps[i]) * c);
            }
        }
        for (n, c) in self.right.d_basis(w.right).iter() {
            push(BarWord { right: n, ..w.clone() }, odd(eps[k + 1]) * c);
        }
        if k >= 1 {
            for (m, c) in self.left.act_basis(w.left, w.letters[0]).iter() {
                push(
                    BarWord {
                        left: m,
                        letters: w.letters[1..].to_vec(),
                        right: w.right,
                    },
                    odd(m_deg) * c,
                );
            }
            for i in 2..=k {
                for (x, c) in a.mul_basis(w.letters[i - 2], w.letters[i - 1]).iter() {
                    if x == unit {
                        continue;
                    }
                    let mut letters = w.letters[..i - 2].to_vec();
                    letters.push(x);
                    letters.extend_from_slice(&w.letters[i..]);
                    push(BarWord { letters, ..w.clone() }, odd(eps[i]) * c);
                }
            }
            for (n, c) in self.right.act_basis(w.right, w.letters[k - 1]).iter() {
                push(
                    BarWord {
                        left: w.left,
                        letters: w.letters[..k - 1].to_vec(),
                        right: n,
                    },
                    -odd(eps[k]) * c,
                );
            }
        }
        out
    }

    /// Human-readable form of a word.
    pub fn label(&self, w: &BarWord) -> String {
        let letters: Vec<&str> = w.letters.iter().map(|&x| self.algebra.name(x)).collect();
        format!("{}[{}]{}", self.left.name(w.left), letters.join("|"), self.right.name(w.right))
    }

    /// Cohomology in `window`, which must lie within `0..=top`.
    pub fn cohomology(&self, window: Window) -> Result<CohomologyReport> {
        if window.hi > self.top {
            return Err(Error::Argument(format!(
                "window {window} exceeds the truncation degree {}",
                self.top
            )));
        }
        Ok(cohomology(&self.complex, window))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(b: &BarComplex, hi: usize) -> Vec<usize> {
        b.cohomology(Window::upto(hi)).unwrap().dims()
    }

    #[test]
    fn ground_field_bar_is_trivial() {
        let b = reduced_bar(&FiniteDGA::ground(), 4).unwrap();
        assert_eq!(dims(&b, 4), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn sphere_cohomology_bar() {
        let a = FiniteDGA::truncated_polynomial(2, 2).unwrap();
        let b = reduced_bar(&a, 6).unwrap();
        assert_eq!(dims(&b, 6), vec![1; 7]);
    }

    #[test]
    fn exterior_bar_is_divided_powers() {
        let b = reduced_bar(&FiniteDGA::exterior(3).unwrap(), 6).unwrap();
        assert_eq!(dims(&b, 6), vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn two_sided_bar_over_itself_is_acyclic() {
        let a = FiniteDGA::truncated_polynomial(2, 3).unwrap();
        let b = two_sided_bar(&DgModule::regular(&a, Side::Right), &a, &DgModule::ground(&a, Side::Left), 6).unwrap();
        assert_eq!(dims(&b, 6), vec![1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn trivial_algebra_gives_tensor_product() {
        let k = FiniteDGA::ground();
        let b = two_sided_bar(&DgModule::regular(&k, Side::Right), &k, &DgModule::regular(&k, Side::Left), 3).unwrap();
        assert_eq!(b.words(0).len(), 1);
        assert!((1..=4).all(|d| b.words(d).is_empty()));
    }

    #[test]
    fn degree_one_letters_are_rejected() {
        let a = FiniteDGA::exterior(1).unwrap();
        assert!(matches!(reduced_bar(&a, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn modules_on_the_wrong_side_are_rejected() {
        let a = FiniteDGA::truncated_polynomial(2, 2).unwrap();
        let l = DgModule::ground(&a, Side::Left);
        assert!(matches!(two_sided_bar(&l, &a, &l, 2), Err(Error::Structure(_))));
    }
}
