//! Test-side oracles and random generators, written independently of the
//! library's own algorithms.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sdr_core::forms::{SimplicialForm, TruncatedForms};
use sdr_core::homalg::CochainComplex;
use sdr_core::linalg::SparseVec;
use sdr_core::polyform::PolyForm;
use sdr_core::sset::FiniteSimplicialSet;
use sdr_core::Q;

pub const SIMPLICIAL_FIXTURES: [&str; 6] = [
    "delta2.json",
    "delta3.json",
    "boundary_delta3.json",
    "sphere2.json",
    "sphere3.json",
    "torus.json",
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str) -> Arc<FiniteSimplicialSet> {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    Arc::new(FiniteSimplicialSet::from_json_str(&text).unwrap())
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A small rational, zero about one time in eight.
pub fn random_q(r: &mut StdRng) -> Q {
    let num: i64 = r.gen_range(-5..=5);
    let den: i64 = r.gen_range(1..=4);
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn nonzero_q(r: &mut StdRng) -> Q {
    loop {
        let x = random_q(r);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random `k`-form on Δ^n with coefficient degree at most `max_poly`.
pub fn random_polyform(r: &mut StdRng, n: usize, k: usize, max_poly: u32) -> PolyForm {
    let n_terms = r.gen_range(1..=4);
    let terms = (0..n_terms).map(|_| {
        let mut exps = vec![0u32; n];
        if n > 0 {
            let total = r.gen_range(0..=max_poly);
            for _ in 0..total {
                exps[r.gen_range(0..n)] += 1;
            }
        }
        let mut idx: Vec<usize> = (1..=n).collect();
        for i in (1..idx.len()).rev() {
            idx.swap(i, r.gen_range(0..=i));
        }
        idx.truncate(k);
        (random_q(r), exps, idx)
    });
    PolyForm::from_terms(n, k, terms.collect::<Vec<_>>()).unwrap()
}

/// A random element of the truncated compatible forms in degree `p`.
pub fn random_valid_form(r: &mut StdRng, forms: &TruncatedForms, p: usize) -> SimplicialForm {
    let n = forms.basis(p).len();
    let v = SparseVec::from_entries((0..n).map(|i| (i, random_q(r))));
    forms.form_of(p, &v)
}

/// Rank over ℚ by plain dense elimination.
pub fn dense_rank(mut rows: Vec<Vec<Q>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..ncols {
                    let delta = &f * &rows[rank][j];
                    rows[i][j] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim H^k` from dense ranks of the differentials.
pub fn cohomology_dims_oracle(c: &CochainComplex, top: usize) -> Vec<usize> {
    let rank = |k: usize| -> usize {
        if k >= c.len() || c.dim(k) == 0 {
            return 0;
        }
        match c.d_ref(k) {
            Some(d) => dense_rank(d.to_dense_rows()),
            None => 0,
        }
    };
    (0..=top)
        .map(|k| {
            let n = if k < c.len() { c.dim(k) } else { 0 };
            let before = if k == 0 { 0 } else { rank(k - 1) };
            n - rank(k) - before
        })
        .collect()
}

type Poly = BTreeMap<Vec<u32>, Q>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Q::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `∫_{t_1+…+t_n ≤ 1} t^exps`, by integrating out one variable at a time
/// and substituting the polynomial upper limit.
pub fn simplex_monomial_integral(exps: &[u32]) -> Q {
    let n = exps.len();
    let mut p: Poly = [(exps.to_vec(), Q::one())].into();
    for j in (0..n).rev() {
        // upper limit 1 − t_0 − … − t_{j−1}
        let mut limit = Poly::new();
        limit.insert(vec![0; n], Q::one());
        for i in 0..j {
            let mut e = vec![0; n];
            e[i] = 1;
            limit.insert(e, -Q::one());
        }
        let mut next = Poly::new();
        for (e, c) in &p {
            let k = e[j] + 1;
            let mut rest = e.clone();
            rest[j] = 0;
            let mut term: Poly = [(rest, c / Q::from_integer(BigInt::from(k)))].into();
            for _ in 0..k {
                term = poly_mul(&term, &limit);
            }
            for (e2, c2) in term {
                *next.entry(e2).or_insert_with(Q::zero) += c2;
            }
        }
        next.retain(|_, c| !c.is_zero());
        p = next;
    }
    p.get(&vec![0; n]).cloned().unwrap_or_else(Q::zero)
}

/// Integral of a top-degree form via [`simplex_monomial_integral`].
pub fn integrate_top_oracle(f: &PolyForm) -> Q {
    assert_eq!(f.degree(), f.dim());
    f.terms().map(|(k, c)| c * simplex_monomial_integral(&k.exps)).sum()
}

/// Boundary of a vertex-sequence chain of Δ^n, in the basis of sequences.
pub fn chain_boundary(chain: &BTreeMap<Vec<usize>, Q>) -> BTreeMap<Vec<usize>, Q> {
    let mut out = BTreeMap::new();
    for (s, c) in chain {
        if s.len() < 2 {
            continue;
        }
        for i in 0..s.len() {
            let mut f = s.clone();
            f.remove(i);
            let sgn = if i % 2 == 0 { c.clone() } else { -c.clone() };
            *out.entry(f).or_insert_with(Q::zero) += sgn;
        }
    }
    out.retain(|_, c: &mut Q| !c.is_zero());
    out
}

/// Cone on vertex 0: prepend it, or vanish if already present.
pub fn cone(chain: &BTreeMap<Vec<usize>, Q>) -> BTreeMap<Vec<usize>, Q> {
    chain
        .iter()
        .filter(|(s, _)| s[0] != 0)
        .map(|(s, c)| {
            let mut t = vec![0];
            t.extend_from_slice(s);
            (t, c.clone())
        })
        .collect()
}

/// Poincaré series coefficients of a product, given those of the factors.
pub fn convolve(a: &[usize], b: &[usize], len: usize) -> Vec<usize> {
    (0..len)
        .map(|k| (0..=k).map(|i| a.get(i).copied().unwrap_or(0) * b.get(k - i).copied().unwrap_or(0)).sum())
        .collect()
}
