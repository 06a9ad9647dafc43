//! Polynomial differential forms on the standard simplex.
//!
//! A form on Δ^n is a ℚ-combination of `t^a dt_I`, where the barycentric
//! coordinate `t_0` and its differential have been eliminated through
//! `t_0 = 1 − Σ t_i` and `dt_0 = −Σ dt_i`. Exponents range over `t_1..t_n`
//! and `I` is a strictly increasing subset of `{1..n}`. With `t_0` gone the
//! representation is unique, so equality of forms is equality of term maps.
//!
//! Simplicial operators act by pulling back along the affine maps between
//! standard simplices; integration over Δ^n uses the orientation in which
//! `dt_1 ∧ … ∧ dt_n` is positive.

mod extend;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, format_q, sign, Q};

pub use extend::{extend_faces, FaceFamily};
pub(crate) use extend::{form_basis, TermIndex};

/// Bitmask over `dt_1..dt_n`: bit `k - 1` stands for `dt_k`.
pub type FormPart = u32;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 31;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub dts: FormPart,
    pub exps: Vec<u32>,
}

impl TermKey {
    pub fn poly_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Indices `k` (1-based) of the `dt_k` factors, increasing.
    pub fn dt_indices(&self) -> Vec<usize> {
        (0..32).filter(|b| self.dts >> b & 1 == 1).map(|b| b + 1).collect()
    }
}

/// A homogeneous polynomial differential form on Δ^n in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<TermKey, Q>,
}

/// Sign of moving the `dt`s of `b` past those of `a` to merge them in order,
/// or `None` when they share an index.
fn merge_sign(a: FormPart, b: FormPart) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    // count pairs (i in a, j in b) with i > j
    let mut odd = false;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        let above = a >> (j + 1);
        odd ^= above.count_ones() % 2 == 1;
        bb &= bb - 1;
    }
    Some(odd)
}

fn mask_of(k: usize) -> FormPart {
    1 << (k - 1)
}

impl PolyForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM, "ambient dimension {dim} exceeds {MAX_DIM}");
        Self {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Q) -> Self {
        let mut f = Self::zero(dim, 0);
        if !c.is_zero() {
            f.terms.insert(
                TermKey {
                    dts: 0,
                    exps: vec![0; dim],
                },
                c,
            );
        }
        f
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Q::one())
    }

    /// The barycentric coordinate `t_i`, `0 ≤ i ≤ dim`.
    pub fn t(dim: usize, i: usize) -> Result<Self> {
        if i > dim {
            return Err(Error::Argument(format!("t{i} does not exist on Δ^{dim}")));
        }
        if i == 0 {
            let mut f = Self::one(dim);
            for k in 1..=dim {
                f = f.sub(&Self::t(dim, k)?)?;
            }
            return Ok(f);
        }
        let mut exps = vec![0; dim];
        exps[i - 1] = 1;
        let mut f = Self::zero(dim, 0);
        f.terms.insert(TermKey { dts: 0, exps }, Q::one());
        Ok(f)
    }

    /// The 1-form `dt_i`, `0 ≤ i ≤ dim`.
    pub fn dt(dim: usize, i: usize) -> Result<Self> {
        Ok(Self::t(dim, i)?.d())
    }

    /// Builds a canonical form from raw terms `(coefficient, exponents of
    /// t_1..t_n, dt indices in 1..=n in wedge order)`. Repeated `dt` indices
    /// make a term vanish; out-of-order indices contribute the permutation sign.
    pub fn from_terms(dim: usize, degree: usize, terms: impl IntoIterator<Item = (Q, Vec<u32>, Vec<usize>)>) -> Result<Self> {
        let mut f = Self::zero(dim, degree);
        for (c, exps, dts) in terms {
            if exps.len() != dim {
                return Err(Error::Argument(format!(
                    "monomial has {} exponents on Δ^{dim}",
                    exps.len()
                )));
            }
            if dts.len() != degree {
                return Err(Error::Argument(format!(
                    "term has {} differentials in a {degree}-form",
                    dts.len()
                )));
            }
            if let Some(&bad) = dts.iter().find(|&&k| k == 0 || k > dim) {
                return Err(Error::Argument(format!("dt{bad} is not a canonical differential on Δ^{dim}")));
            }
            // bubble sort, tracking parity
            let mut v = dts.clone();
            let mut odd = false;
            for a in 0..v.len() {
                for b in 0..v.len() - 1 - a {
                    if v[b] > v[b + 1] {
                        v.swap(b, b + 1);
                        odd = !odd;
                    }
                }
            }
            if v.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let dts = v.iter().fold(0, |m, &k| m | mask_of(k));
            f.add_term(TermKey { dts, exps }, sign(odd) * c);
        }
        Ok(f)
    }

    fn add_term(&mut self, key: TermKey, c: Q) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Form degree (number of differentials in each term).
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, key: &TermKey) -> Q {
        self.terms.get(key).cloned().unwrap_or_else(Q::zero)
    }

    /// Largest total degree of a coefficient polynomial (0 for the zero form).
    pub fn poly_degree(&self) -> u32 {
        self.terms.keys().map(TermKey::poly_degree).max().unwrap_or(0)
    }

    /// Polynomial degree with each `dt_i` also counted once: the degree in
    /// the generators `t_i, dt_i`. Never raised by `d`, pullbacks or the
    /// contraction; additive under `∧`.
    pub fn weight(&self) -> u32 {
        if self.is_zero() {
            0
        } else {
            self.poly_degree() + self.degree as u32
        }
    }

    fn check_same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Argument(format!(
                "{what} of forms on Δ^{} and Δ^{}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sum")?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Argument(format!(
                "sum of a {}-form and a {}-form",
                self.degree, other.degree
            )));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-Q::one())
    }

    pub fn scaled(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim, self.degree);
        }
        Self {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Wedge product; graded commutative.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "wedge")?;
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let Some(odd) = merge_sign(ka.dts, kb.dts) else { continue };
                let exps = ka.exps.iter().zip(&kb.exps).map(|(x, y)| x + y).collect();
                out.add_term(
                    TermKey {
                        dts: ka.dts | kb.dts,
                        exps,
                    },
                    sign(odd) * va * vb,
                );
            }
        }
        Ok(out)
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(self.dim, self.degree + 1);
        for (key, c) in &self.terms {
            for k in 1..=self.dim {
                let a = key.exps[k - 1];
                if a == 0 {
                    continue;
                }
                let Some(odd) = merge_sign(mask_of(k), key.dts) else { continue };
                let mut exps = key.exps.clone();
                exps[k - 1] -= 1;
                out.add_term(
                    TermKey {
                        dts: key.dts | mask_of(k),
                        exps,
                    },
                    sign(odd) * c * Q::from_integer(BigInt::from(a)),
                );
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.d().is_zero()
    }

    /// Pullback along the affine map Δ^m → Δ^n induced by a monotone map
    /// `theta: [m] → [n]` (given by its values; `m = theta.len() - 1`).
    pub fn pullback(&self, theta: &[usize]) -> Result<Self> {
        let n = self.dim;
        if theta.is_empty() || theta.windows(2).any(|w| w[0] > w[1]) || *theta.last().unwrap() > n {
            return Err(Error::Argument(format!("{theta:?} is not a monotone map into [{n}]")));
        }
        let m = theta.len() - 1;
        if m == n && theta.iter().enumerate().all(|(k, &v)| k == v) {
            return Ok(self.clone());
        }
        // t_j ↦ Σ_{θ(k) = j} t'_k
        let mut images = Vec::with_capacity(n);
        for j in 1..=n {
            let mut img = Self::zero(m, 0);
            for (k, &v) in theta.iter().enumerate() {
                if v == j {
                    img = img.add(&Self::t(m, k)?)?;
                }
            }
            images.push(img);
        }
        let dimages: Vec<Self> = images.iter().map(Self::d).collect();
        let mut powers: BTreeMap<(usize, u32), Self> = BTreeMap::new();
        let mut out = Self::zero(m, self.degree);
        for (key, c) in &self.terms {
            let mut acc = Self::constant(m, c.clone());
            for (j, &a) in key.exps.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let power = match powers.entry((j, a)) {
                    std::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
                    std::collections::btree_map::Entry::Vacant(e) => {
                        let mut p = Self::one(m);
                        for _ in 0..a {
                            p = p.wedge(&images[j])?;
                        }
                        e.insert(p)
                    }
                };
                acc = acc.wedge(power)?;
                if acc.is_zero() {
                    break;
                }
            }
            for k in key.dt_indices() {
                if acc.is_zero() {
                    break;
                }
                acc = acc.wedge(&dimages[k - 1])?;
            }
            if !acc.is_zero() {
                out = out.add(&acc)?;
            }
        }
        Ok(out)
    }

    /// `∂_i`: restriction to the `i`-th face, a form on Δ^{n−1}.
    pub fn face(&self, i: usize) -> Result<Self> {
        let n = self.dim;
        if n == 0 || i > n {
            return Err(Error::Argument(format!("face ∂_{i} undefined on Δ^{n}")));
        }
        let theta: Vec<usize> = (0..n).map(|k| if k < i { k } else { k + 1 }).collect();
        self.pullback(&theta)
    }

    /// `s_j`: pullback along the `j`-th codegeneracy Δ^{n+1} → Δ^n.
    pub fn degeneracy(&self, j: usize) -> Result<Self> {
        let n = self.dim;
        if j > n {
            return Err(Error::Argument(format!("degeneracy s_{j} undefined on Δ^{n}")));
        }
        let theta: Vec<usize> = (0..=n + 1).map(|k| if k <= j { k } else { k - 1 }).collect();
        self.pullback(&theta)
    }

    /// Value of a 0-form at vertex 0 (`t_1 = … = t_n = 0`); zero in positive degree.
    pub fn eval_at_origin(&self) -> Q {
        if self.degree > 0 {
            return Q::zero();
        }
        self.coefficient(&TermKey {
            dts: 0,
            exps: vec![0; self.dim],
        })
    }

    /// Exact integral of a top-degree form over Δ^n.
    pub fn integrate_top(&self) -> Result<Q> {
        if self.degree != self.dim {
            return Err(Error::Argument(format!(
                "cannot integrate a {}-form over Δ^{}",
                self.degree, self.dim
            )));
        }
        let n = self.dim;
        let mut total = Q::zero();
        for (key, c) in &self.terms {
            let num = key.exps.iter().fold(BigInt::one(), |acc, &a| acc * factorial(a as usize));
            let den = factorial(n + key.poly_degree() as usize);
            total += c * Q::new(num, den);
        }
        Ok(total)
    }

    /// The contraction `K` to vertex 0 along straight lines, satisfying
    /// `dK + Kd = id − ε` where `ε` evaluates 0-forms at vertex 0.
    pub fn contraction(&self) -> Self {
        if self.degree == 0 {
            return Self::zero(self.dim, 0);
        }
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (key, c) in &self.terms {
            let scale = c / Q::from_integer(BigInt::from(key.poly_degree() + self.degree as u32));
            for (r, k) in key.dt_indices().into_iter().enumerate() {
                let mut exps = key.exps.clone();
                exps[k - 1] += 1;
                out.add_term(
                    TermKey {
                        dts: key.dts & !mask_of(k),
                        exps,
                    },
                    sign(r % 2 == 1) * &scale,
                );
            }
        }
        out
    }
}

/// A primitive of a closed form of positive degree.
pub fn poincare_contraction(omega: &PolyForm) -> Result<PolyForm> {
    if omega.degree() == 0 {
        return Err(Error::Precondition("Poincaré contraction needs form degree ≥ 1".into()));
    }
    if !omega.is_closed() {
        return Err(Error::Precondition("form is not closed".into()));
    }
    Ok(omega.contraction())
}

/// Elementary Whitney form of the face `seq = (i_0 < … < i_p)` of Δ^n:
/// `p! Σ_k (−1)^k t_{i_k} dt_{i_0} ∧ … (omit k) … ∧ dt_{i_p}`.
pub fn whitney_form(n: usize, seq: &[usize]) -> Result<PolyForm> {
    if seq.is_empty() || seq.windows(2).any(|w| w[0] >= w[1]) || *seq.last().unwrap() > n {
        return Err(Error::Argument(format!(
            "{seq:?} is not a strictly increasing face of Δ^{n}"
        )));
    }
    let p = seq.len() - 1;
    let mut out = PolyForm::zero(n, p);
    for k in 0..=p {
        let mut term = PolyForm::t(n, seq[k])?;
        for (l, &v) in seq.iter().enumerate() {
            if l != k {
                term = term.wedge(&PolyForm::dt(n, v)?)?;
            }
        }
        out = out.add(&term.scaled(&sign(k % 2 == 1)))?;
    }
    Ok(out.scaled(&Q::from_integer(factorial(p))))
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_q(c))?;
            for (i, &a) in key.exps.iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, " t{}", i + 1)?,
                    _ => write!(f, " t{}^{a}", i + 1)?,
                }
            }
            let dts: Vec<String> = key.dt_indices().iter().map(|k| format!("dt{k}")).collect();
            if !dts.is_empty() {
                write!(f, " {}", dts.join("^"))?;
            }
        }
        Ok(())
    }
}

pub use parse::parse_form;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    fn t(n: usize, i: usize) -> PolyForm {
        PolyForm::t(n, i).unwrap()
    }

    fn dt(n: usize, i: usize) -> PolyForm {
        PolyForm::dt(n, i).unwrap()
    }

    #[test]
    fn wedge_basics() {
        assert!(dt(2, 1).wedge(&dt(2, 1)).unwrap().is_zero());
        let a = dt(2, 1).wedge(&dt(2, 2)).unwrap();
        let b = dt(2, 2).wedge(&dt(2, 1)).unwrap();
        assert_eq!(a, b.neg());
        let c = t(2, 1).wedge(&dt(2, 2)).unwrap();
        assert_eq!(c.to_string(), "1 t1 dt2");
    }

    #[test]
    fn wedge_dimension_mismatch() {
        assert!(matches!(t(1, 1).wedge(&t(2, 1)), Err(Error::Argument(_))));
    }

    #[test]
    fn differential_examples() {
        assert_eq!(t(2, 1).d(), dt(2, 1));
        let prod = t(2, 1).wedge(&t(2, 2)).unwrap();
        let expect = t(2, 2).wedge(&dt(2, 1)).unwrap().add(&t(2, 1).wedge(&dt(2, 2)).unwrap()).unwrap();
        assert_eq!(prod.d(), expect);
        let f = t(2, 1).wedge(&dt(2, 2)).unwrap();
        assert_eq!(f.d(), dt(2, 1).wedge(&dt(2, 2)).unwrap());
    }

    #[test]
    fn barycentric_elimination() {
        // t0 + t1 + t2 = 1, dt0 + dt1 + dt2 = 0
        let s = t(2, 0).add(&t(2, 1)).unwrap().add(&t(2, 2)).unwrap();
        assert_eq!(s, PolyForm::one(2));
        let ds = dt(2, 0).add(&dt(2, 1)).unwrap().add(&dt(2, 2)).unwrap();
        assert!(ds.is_zero());
    }

    #[test]
    fn coface_examples() {
        assert!(t(1, 1).face(1).unwrap().is_zero());
        assert_eq!(t(1, 1).face(0).unwrap(), PolyForm::one(0));
        assert!(matches!(t(1, 1).face(2), Err(Error::Argument(_))));
    }

    #[test]
    fn degeneracy_of_unit() {
        assert_eq!(PolyForm::one(0).degeneracy(0).unwrap(), PolyForm::one(1));
    }

    #[test]
    fn integrals() {
        assert_eq!(PolyForm::constant(0, q(7)).integrate_top().unwrap(), q(7));
        let vol = dt(2, 1).wedge(&dt(2, 2)).unwrap();
        assert_eq!(vol.integrate_top().unwrap(), q_frac(1, 2));
        let f = t(2, 1).wedge(&t(2, 2)).unwrap().wedge(&vol).unwrap();
        assert_eq!(f.integrate_top().unwrap(), q_frac(1, 24));
        assert!(matches!(dt(2, 1).integrate_top(), Err(Error::Argument(_))));
    }

    #[test]
    fn whitney_small_cases() {
        assert_eq!(whitney_form(3, &[2]).unwrap(), t(3, 2));
        let w = whitney_form(1, &[0, 1]).unwrap();
        let expect = t(1, 0).wedge(&dt(1, 1)).unwrap().sub(&t(1, 1).wedge(&dt(1, 0)).unwrap()).unwrap();
        assert_eq!(w, expect);
        assert_eq!(w.integrate_top().unwrap(), q(1));
        assert_eq!(whitney_form(2, &[0, 1, 2]).unwrap().integrate_top().unwrap(), q(1));
        assert!(whitney_form(2, &[1, 0]).is_err());
    }

    #[test]
    fn poincare_examples() {
        assert!(poincare_contraction(&PolyForm::zero(2, 1)).unwrap().is_zero());
        let w = dt(1, 1);
        assert_eq!(poincare_contraction(&w).unwrap().d(), w);
        let v = dt(2, 1).wedge(&dt(2, 2)).unwrap();
        assert_eq!(poincare_contraction(&v).unwrap().d(), v);
        let not_closed = t(2, 1).wedge(&dt(2, 2)).unwrap();
        assert!(matches!(poincare_contraction(&not_closed), Err(Error::Precondition(_))));
    }

    #[test]
    fn merge_sign_counts_inversions() {
        // dt2 ∧ dt1 = −dt1 ∧ dt2
        assert_eq!(merge_sign(0b10, 0b01), Some(true));
        assert_eq!(merge_sign(0b01, 0b10), Some(false));
        assert_eq!(merge_sign(0b11, 0b01), None);
    }
}
