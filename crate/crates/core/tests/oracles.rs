//! Library results against independent test-side computations. Values that
//! agree with an oracle are frozen below so regressions show up directly.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use common::*;
use sdr_core::bar::{emss_check, reduced_bar, tor_bigraded, Bigraded, FiniteDGA};
use sdr_core::cochain::cochain_complex;
use sdr_core::forms::truncated_cohomology_of_a;
use sdr_core::homalg::{cohomology, cone_contraction, Window};
use sdr_core::polyform::{whitney_form, PolyForm};
use sdr_core::rational::q_frac;
use sdr_core::sset::{increasing_sequences, std_simplex};
use sdr_core::Q;

#[test]
fn simplicial_cohomology_matches_dense_ranks() {
    let frozen: BTreeMap<&str, Vec<usize>> = [
        ("delta2.json", vec![1, 0, 0, 0]),
        ("delta3.json", vec![1, 0, 0, 0]),
        ("boundary_delta3.json", vec![1, 0, 1, 0]),
        ("sphere2.json", vec![1, 0, 1, 0]),
        ("sphere3.json", vec![1, 0, 0, 1]),
        ("torus.json", vec![1, 2, 1, 0]),
    ]
    .into();
    for name in SIMPLICIAL_FIXTURES {
        let k = fixture(name);
        let c = cochain_complex(&k);
        let dims = cohomology(&c, Window::upto(3)).dims();
        assert_eq!(dims, cohomology_dims_oracle(&c, 3), "{name}");
        assert_eq!(dims, frozen[name], "{name}");
    }
}

#[test]
fn top_integrals_match_iterated_integration() {
    let mut r = rng(11);
    for n in 1..=4 {
        for _ in 0..25 {
            let f = random_polyform(&mut r, n, n, 5);
            assert_eq!(f.integrate_top().unwrap(), integrate_top_oracle(&f), "{f}");
        }
    }
    // ∫_{Δ^2} t1 dt1∧dt2 and ∫_{Δ^3} t1 t2 t3 dt1∧dt2∧dt3
    let f = PolyForm::from_terms(2, 2, [(Q::one(), vec![1, 0], vec![1, 2])]).unwrap();
    assert_eq!(f.integrate_top().unwrap(), q_frac(1, 6));
    let g = PolyForm::from_terms(3, 3, [(Q::one(), vec![1, 1, 1], vec![1, 2, 3])]).unwrap();
    assert_eq!(g.integrate_top().unwrap(), q_frac(1, 720));
    assert_eq!(simplex_monomial_integral(&[1, 1, 1]), q_frac(1, 720));
}

#[test]
fn whitney_forms_integrate_to_one_on_their_face() {
    for n in 1..=4 {
        for p in 0..=n {
            for seq in increasing_sequences(n, p) {
                let w = whitney_form(n, &seq).unwrap();
                for other in increasing_sequences(n, p) {
                    let restricted = w.pullback(&other).unwrap();
                    let v = if p == 0 { restricted.eval_at_origin() } else { integrate_top_oracle(&restricted) };
                    let expect = if other == seq { Q::one() } else { q(0) };
                    assert_eq!(v, expect, "w_{seq:?} on {other:?} in Δ^{n}");
                }
            }
        }
    }
}

#[test]
fn truncated_forms_on_simplices_are_acyclic() {
    for n in 1..=3 {
        let k = Arc::new(std_simplex(n));
        for d in 1..=4 {
            let (report, forms) = truncated_cohomology_of_a(k.clone(), d, Window::upto(n)).unwrap();
            let mut expect = vec![0; n + 1];
            expect[0] = 1;
            assert_eq!(report.dims(), expect, "Δ[{n}] at weight {d}");
            assert_eq!(cohomology_dims_oracle(forms.complex(), n), expect);
        }
    }
}

#[test]
fn cone_contraction_matches_direct_computation() {
    for n in 0..=5 {
        let c = cone_contraction(n);
        c.verify().unwrap();
        for p in 0..=n {
            for (j, seq) in c.basis[p].iter().enumerate() {
                let chain: BTreeMap<Vec<usize>, Q> = [(seq.clone(), Q::one())].into();
                let mut lhs = chain_boundary(&cone(&chain));
                for (s, v) in cone(&chain_boundary(&chain)) {
                    *lhs.entry(s).or_insert_with(|| q(0)) += v;
                }
                lhs.retain(|_, v| *v != q(0));
                let mut rhs = chain.clone();
                if p == 0 {
                    *rhs.entry(vec![0]).or_insert_with(|| q(0)) -= Q::one();
                    rhs.retain(|_, v| *v != q(0));
                }
                assert_eq!(lhs, rhs, "{seq:?}");
                let lib: BTreeMap<Vec<usize>, Q> =
                    c.homotopy_sum(p).column(j).iter().map(|(i, v)| (c.basis[p][i].clone(), v.clone())).collect();
                assert_eq!(lib, lhs, "{seq:?}");
            }
        }
    }
}

/// Künneth: the bar construction of a tensor product of graded algebras is the
/// tensor product of the bar constructions, on cohomology.
#[test]
fn bar_cohomology_of_tensor_products() {
    let s2 = FiniteDGA::truncated_polynomial(2, 2).unwrap();
    let ext = FiniteDGA::exterior(3).unwrap();
    let a = s2.tensor(&ext).unwrap();
    let w = Window::upto(6);
    let f = reduced_bar(&s2, 6).unwrap().cohomology(w).unwrap().dims();
    let g = reduced_bar(&ext, 6).unwrap().cohomology(w).unwrap().dims();
    let fg = reduced_bar(&a, 6).unwrap().cohomology(w).unwrap().dims();
    assert_eq!(fg, convolve(&f, &g, 7));
    assert_eq!(fg, vec![1, 1, 2, 2, 3, 3, 4]);

    // E_2 = Tor is bigraded-multiplicative as well
    let tor = |x: &FiniteDGA| tor_bigraded(x, w).unwrap();
    let mut expect: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for x in tor(&s2) {
        for y in tor(&ext) {
            *expect.entry((x.length + y.length, x.internal + y.internal)).or_default() += x.dim * y.dim;
        }
    }
    let got: BTreeMap<(usize, usize), usize> = tor(&a).into_iter().map(|e| ((e.length, e.internal), e.dim)).collect();
    expect.retain(|(s, t), _| t - s <= 6);
    assert_eq!(got, expect);

    let r = emss_check(&a, w).unwrap();
    let e2: BTreeMap<(usize, usize), usize> = r.e2.iter().map(|b: &Bigraded| (((-b.p) as usize, b.q as usize), b.dim)).collect();
    assert_eq!(e2, got);
}

#[test]
fn nonformal_dga_cohomology_and_bar() {
    let text = std::fs::read_to_string(fixture_path("dga_nonformal.json")).unwrap();
    let a = FiniteDGA::from_json_str(&text).unwrap();
    let h = a.cohomology_algebra().unwrap();
    let degrees: Vec<usize> = (0..h.dim()).map(|i| h.degree(i)).collect();
    // 1, x, x·y, x²·y survive; x² is exact
    assert_eq!(degrees, vec![0, 2, 5, 7]);
    let oracle = cohomology_dims_oracle(&a.complex(), 7);
    assert_eq!(oracle, vec![1, 0, 1, 0, 0, 1, 0, 1]);
    let b = reduced_bar(&a, 5).unwrap();
    let bar = b.cohomology(Window::upto(5)).unwrap().dims();
    assert_eq!(bar, cohomology_dims_oracle(b.complex(), 5));
    assert_eq!(bar, vec![1, 1, 1, 1, 2, 2]);
}

/// `h(m[a_1|…|a_k]k) = 1[m|a_1|…|a_k]k` for `m` in the augmentation ideal, `h(1[…]k) = 0`,
/// checked as `dh + hd = id − ηε` word by word on `B(A, A, ℚ)`.
#[test]
fn two_sided_bar_contraction_on_fixture_algebras() {
    use sdr_core::bar::{two_sided_bar, BarWord, DgModule, Side};
    for name in ["dga_point.json", "dga_s2.json", "dga_exterior3.json", "dga_s2_ext.json", "dga_nonformal.json"] {
        let a = FiniteDGA::from_json_str(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap();
        let top = 5;
        let b = two_sided_bar(&DgModule::regular(&a, Side::Right), &a, &DgModule::ground(&a, Side::Left), top).unwrap();
        let unit = a.unit();
        let h = |w: &BarWord| -> Vec<(BarWord, Q)> {
            if w.left == unit {
                return Vec::new();
            }
            let mut letters = vec![w.left];
            letters.extend_from_slice(&w.letters);
            vec![(BarWord { left: unit, letters, right: w.right }, Q::one())]
        };
        let add = |acc: &mut BTreeMap<BarWord, Q>, terms: Vec<(BarWord, Q)>| {
            for (w, c) in terms {
                *acc.entry(w).or_insert_with(|| q(0)) += c;
            }
            acc.retain(|_, c| *c != q(0));
        };
        for k in 0..=top {
            for w in b.words(k) {
                let mut lhs = BTreeMap::new();
                for (x, c) in h(w) {
                    add(&mut lhs, b.d_word(&x).into_iter().map(|(y, e)| (y, e * &c)).collect());
                }
                for (x, c) in b.d_word(w) {
                    add(&mut lhs, h(&x).into_iter().map(|(y, e)| (y, e * &c)).collect());
                }
                let mut rhs: BTreeMap<BarWord, Q> = BTreeMap::new();
                if !(k == 0 && w.left == unit && w.letters.is_empty()) {
                    rhs.insert(w.clone(), Q::one());
                }
                assert_eq!(lhs, rhs, "{name}: {}", b.label(w));
            }
        }
        let dims = b.cohomology(Window::upto(top)).unwrap().dims();
        assert_eq!(dims, [vec![1], vec![0; top]].concat(), "{name}");
    }
}
