//! Finite-dimensional differential graded algebras over ℚ.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homalg::{cohomology, CochainComplex, Window};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::rational::{format_q, parse_q, sign, Q};

/// A DGA given by a graded basis, a differential, structure constants,
/// a unit basis element and an augmentation.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteDGA {
    names: Vec<String>,
    degrees: Vec<usize>,
    unit: usize,
    d: Vec<SparseVec>,
    products: BTreeMap<(usize, usize), SparseVec>,
    augmentation: SparseVec,
    commutative: bool,
}

/// On-disk form of a [`FiniteDGA`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DgaJson {
    pub basis: Vec<BasisJson>,
    pub unit: String,
    #[serde(default)]
    pub augmentation: BTreeMap<String, String>,
    #[serde(default)]
    pub differential: BTreeMap<String, BTreeMap<String, String>>,
    /// Keys `"a*b"`. Products with the unit may be omitted; when the algebra
    /// is declared commutative, one of `a*b`, `b*a` suffices.
    #[serde(default)]
    pub products: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub commutative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisJson {
    pub name: String,
    pub degree: usize,
}

fn koszul(a: usize, b: usize) -> Q {
    sign(a * b % 2 == 1)
}

impl FiniteDGA {
    /// Builds and validates. `products` need not mention the unit.
    pub fn new(
        basis: Vec<(String, usize)>,
        unit: usize,
        differential: Vec<SparseVec>,
        products: BTreeMap<(usize, usize), SparseVec>,
        augmentation: SparseVec,
        commutative: bool,
    ) -> Result<Self> {
        let n = basis.len();
        if unit >= n {
            return Err(Error::Structure("unit index out of range".into()));
        }
        if differential.len() != n {
            return Err(Error::Structure(format!("{} differential columns for {n} basis elements", differential.len())));
        }
        let (names, degrees): (Vec<String>, Vec<usize>) = basis.into_iter().unzip();
        let mut products: BTreeMap<(usize, usize), SparseVec> =
            products.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        for i in 0..n {
            for key in [(unit, i), (i, unit)] {
                let given = products.get(&key).cloned().unwrap_or_default();
                if given.is_zero() {
                    products.insert(key, SparseVec::unit(i));
                } else if given != SparseVec::unit(i) {
                    return Err(Error::Structure(format!("unit law fails for `{}`", names[i])));
                }
            }
        }
        let a = Self {
            names,
            degrees,
            unit,
            d: differential,
            products,
            augmentation,
            commutative,
        };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        let mut seen = BTreeMap::new();
        for (i, name) in self.names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::Structure(format!("basis name `{name}` repeated")));
            }
        }
        if self.degrees[self.unit] != 0 {
            return Err(Error::Structure("unit must have degree 0".into()));
        }
        for i in 0..n {
            if self.d[i].support_end() > n {
                return Err(Error::Structure(format!("d(`{}`) leaves the basis", self.names[i])));
            }
            for (j, _) in self.d[i].iter() {
                if self.degrees[j] != self.degrees[i] + 1 {
                    return Err(Error::Structure(format!(
                        "d(`{}`) has a component `{}` of the wrong degree",
                        self.names[i], self.names[j]
                    )));
                }
            }
            if !self.d_vec(&self.d[i]).is_zero() {
                return Err(Error::Structure(format!("d∘d ≠ 0 on `{}`", self.names[i])));
            }
        }
        for (&(i, j), v) in &self.products {
            if i >= n || j >= n || v.support_end() > n {
                return Err(Error::Structure("product index out of range".into()));
            }
            for (k, _) in v.iter() {
                if self.degrees[k] != self.degrees[i] + self.degrees[j] {
                    return Err(Error::Structure(format!(
                        "`{}*{}` has a component `{}` of the wrong degree",
                        self.names[i], self.names[j], self.names[k]
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (SparseVec::unit(i), SparseVec::unit(j));
                // d(ab) = da·b + (−1)^{|a|} a·db
                let lhs = self.d_vec(&self.mul_basis(i, j));
                let rhs = self
                    .mul(&self.d[i], &b)
                    .add(&self.mul(&a, &self.d[j]).scaled(&sign(self.degrees[i] % 2 == 1)));
                if lhs != rhs {
                    return Err(Error::Structure(format!(
                        "Leibniz rule fails on `{}`, `{}`",
                        self.names[i], self.names[j]
                    )));
                }
                if self.commutative {
                    let ba = self.mul_basis(j, i).scaled(&koszul(self.degrees[i], self.degrees[j]));
                    if self.mul_basis(i, j) != ba {
                        return Err(Error::Structure(format!(
                            "declared commutative, but `{}`, `{}` do not graded-commute",
                            self.names[i], self.names[j]
                        )));
                    }
                }
                for k in 0..n {
                    let c = SparseVec::unit(k);
                    if self.mul(&self.mul_basis(i, j), &c) != self.mul(&a, &self.mul_basis(j, k)) {
                        return Err(Error::Structure(format!(
                            "associativity fails on `{}`, `{}`, `{}`",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
                let eab = self.augment(&self.mul_basis(i, j));
                if eab != self.augment(&a) * self.augment(&b) {
                    return Err(Error::Structure(format!(
                        "augmentation is not multiplicative on `{}`, `{}`",
                        self.names[i], self.names[j]
                    )));
                }
            }
        }
        if self.augment(&SparseVec::unit(self.unit)) != Q::one() {
            return Err(Error::Structure("augmentation must send the unit to 1".into()));
        }
        for (i, c) in self.augmentation.iter() {
            if i >= n || (self.degrees[i] != 0 && !c.is_zero()) {
                return Err(Error::Structure("augmentation must vanish outside degree 0".into()));
            }
        }
        for i in 0..n {
            if !self.augment(&self.d[i]).is_zero() {
                return Err(Error::Structure(format!("augmentation does not kill d(`{}`)", self.names[i])));
            }
        }
        Ok(())
    }

    /// The ground field ℚ.
    pub fn ground() -> Self {
        Self::new(vec![("1".into(), 0)], 0, vec![SparseVec::new()], BTreeMap::new(), SparseVec::unit(0), true)
            .expect("ℚ is a DGA")
    }

    /// `ℚ[x]/(x^height)` with `|x| = degree` even, `d = 0`.
    pub fn truncated_polynomial(degree: usize, height: usize) -> Result<Self> {
        if degree % 2 == 1 || degree == 0 || height == 0 {
            return Err(Error::Argument("need an even positive generator degree and height ≥ 1".into()));
        }
        let basis = (0..height)
            .map(|k| {
                let name = match k {
                    0 => "1".to_string(),
                    1 => "x".to_string(),
                    _ => format!("x^{k}"),
                };
                (name, k * degree)
            })
            .collect();
        let mut products = BTreeMap::new();
        for i in 1..height {
            for j in 1..height - i {
                products.insert((i, j), SparseVec::unit(i + j));
            }
        }
        Self::new(basis, 0, vec![SparseVec::new(); height], products, SparseVec::unit(0), true)
    }

    /// `Λ(y)` with `|y| = degree` odd, `d = 0`.
    pub fn exterior(degree: usize) -> Result<Self> {
        if degree.is_multiple_of(2) {
            return Err(Error::Argument("exterior generator must have odd degree".into()));
        }
        Self::new(
            vec![("1".into(), 0), ("y".into(), degree)],
            0,
            vec![SparseVec::new(); 2],
            BTreeMap::new(),
            SparseVec::unit(0),
            true,
        )
    }

    /// Graded tensor product: `(a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa'⊗bb'`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let m = other.dim();
        let idx = |i: usize, j: usize| i * m + j;
        let mut basis = Vec::new();
        for i in 0..self.dim() {
            for j in 0..m {
                let name = match (i == self.unit, j == other.unit) {
                    (true, true) => self.names[i].clone(),
                    (true, false) => other.names[j].clone(),
                    (false, true) => self.names[i].clone(),
                    (false, false) => format!("{}{}", self.names[i], other.names[j]),
                };
                basis.push((name, self.degrees[i] + other.degrees[j]));
            }
        }
        let mut d = Vec::new();
        for i in 0..self.dim() {
            for j in 0..m {
                let mut v = SparseVec::new();
                for (k, c) in self.d[i].iter() {
                    v = v.add(&SparseVec::unit(idx(k, j)).scaled(c));
                }
                let s = sign(self.degrees[i] % 2 == 1);
                for (k, c) in other.d[j].iter() {
                    v = v.add(&SparseVec::unit(idx(i, k)).scaled(&(c * &s)));
                }
                d.push(v);
            }
        }
        let mut products = BTreeMap::new();
        for i in 0..self.dim() {
            for j in 0..m {
                for k in 0..self.dim() {
                    for l in 0..m {
                        let s = koszul(other.degrees[j], self.degrees[k]);
                        let mut v = SparseVec::new();
                        for (a, x) in self.mul_basis(i, k).iter() {
                            for (b, y) in other.mul_basis(j, l).iter() {
                                v = v.add(&SparseVec::unit(idx(a, b)).scaled(&(x * y * &s)));
                            }
                        }
                        if !v.is_zero() {
                            products.insert((idx(i, j), idx(k, l)), v);
                        }
                    }
                }
            }
        }
        let mut aug = Vec::new();
        for (i, x) in self.augmentation.iter() {
            for (j, y) in other.augmentation.iter() {
                aug.push((idx(i, j), x * y));
            }
        }
        Self::new(
            basis,
            idx(self.unit, other.unit),
            d,
            products,
            SparseVec::from_entries(aug),
            self.commutative && other.commutative,
        )
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn has_zero_differential(&self) -> bool {
        self.d.iter().all(SparseVec::is_zero)
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn d_basis(&self, i: usize) -> &SparseVec {
        &self.d[i]
    }

    pub fn d_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            out = out.add_scaled(&self.d[i], c);
        }
        out
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> SparseVec {
        self.products.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                if let Some(p) = self.products.get(&(i, j)) {
                    out = out.add_scaled(p, &(x * y));
                }
            }
        }
        out
    }

    pub fn augment(&self, v: &SparseVec) -> Q {
        v.iter().map(|(i, c)| c * self.augmentation.get(i)).sum()
    }

    /// Whether `A^0 = ℚ·1` and `A^1 = 0`, which keeps bar complexes finite in each degree.
    pub fn is_simply_connected(&self) -> bool {
        (0..self.dim()).all(|i| i == self.unit || self.degrees[i] >= 2)
    }

    /// The underlying cochain complex, degrees `0..=top`.
    pub fn complex(&self) -> CochainComplex {
        let top = self.top_degree();
        let mut pos = vec![0; self.dim()];
        let mut dims = vec![0; top + 1];
        for i in 0..self.dim() {
            pos[i] = dims[self.degrees[i]];
            dims[self.degrees[i]] += 1;
        }
        let mut diffs = Vec::new();
        for k in 0..top {
            let cols = (0..self.dim())
                .filter(|&i| self.degrees[i] == k)
                .map(|i| self.d[i].reindexed(|j| pos[j]))
                .collect();
            diffs.push(SparseMatrix::from_columns(dims[k + 1], cols));
        }
        CochainComplex::new(dims, diffs).expect("validated differential")
    }

    /// `H(A)` as an algebra with zero differential, on representative classes.
    pub fn cohomology_algebra(&self) -> Result<Self> {
        let c = self.complex();
        let top = self.top_degree();
        let h = cohomology(&c, Window::upto(top));
        let by_degree: Vec<Vec<usize>> = (0..=top)
            .map(|k| (0..self.dim()).filter(|&i| self.degrees[i] == k).collect())
            .collect();
        let lift = |k: usize, v: &SparseVec| v.reindexed(|j| by_degree[k][j]);
        let lower = |k: usize, v: &SparseVec| {
            let pos: BTreeMap<usize, usize> = by_degree[k].iter().enumerate().map(|(p, &i)| (i, p)).collect();
            v.reindexed(|i| pos[&i])
        };
        if h.degree(0).map(|d| d.dimension) != Some(1) {
            return Err(Error::Structure("cohomology algebra needs H^0 = ℚ".into()));
        }
        let mut basis = Vec::new();
        let mut reps = Vec::new();
        for d in &h.degrees {
            for (i, r) in d.representatives.iter().enumerate() {
                let name = if d.dimension == 1 {
                    format!("h{}", d.degree)
                } else {
                    format!("h{}_{i}", d.degree)
                };
                basis.push((name, d.degree));
                reps.push((d.degree, lift(d.degree, r)));
            }
        }
        // the unit class is represented by a multiple of 1; rescale it to 1
        let scale = self.augment(&reps[0].1);
        if scale.is_zero() {
            return Err(Error::Structure("augmentation vanishes on H^0".into()));
        }
        reps[0].1 = reps[0].1.scaled(&(Q::one() / &scale));
        let offset: Vec<usize> = {
            let mut o = vec![0; top + 2];
            for d in &h.degrees {
                o[d.degree + 1] = o[d.degree] + d.dimension;
            }
            o
        };
        let mut products = BTreeMap::new();
        for (a, (p, x)) in reps.iter().enumerate() {
            for (b, (q, y)) in reps.iter().enumerate() {
                if p + q > top {
                    continue;
                }
                let prod = self.mul(x, y);
                let Some(target) = h.degree(p + q) else { continue };
                let coords = target.class_of(&lower(p + q, &prod))?;
                // coordinates are relative to the unscaled degree-0 representative
                let coords = if p + q == 0 {
                    coords.scaled(&scale)
                } else {
                    coords
                };
                let v = coords.reindexed(|i| offset[p + q] + i);
                if !v.is_zero() {
                    products.insert((a, b), v);
                }
            }
        }
        Self::new(
            basis,
            0,
            vec![SparseVec::new(); reps.len()],
            products,
            SparseVec::unit(0),
            self.commutative,
        )
    }

    pub fn from_json(json: &DgaJson) -> Result<Self> {
        let mut index = BTreeMap::new();
        let mut basis = Vec::new();
        for (i, b) in json.basis.iter().enumerate() {
            if index.insert(b.name.clone(), i).is_some() {
                return Err(Error::parse(format!("basis[{i}]"), format!("name `{}` repeated", b.name)));
            }
            basis.push((b.name.clone(), b.degree));
        }
        let find = |loc: &str, name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::parse(loc.to_string(), format!("unknown basis element `{name}`")))
        };
        let vector = |loc: &str, m: &BTreeMap<String, String>| -> Result<SparseVec> {
            let mut entries = Vec::new();
            for (name, c) in m {
                let l = format!("{loc}.\"{name}\"");
                let i = find(&l, name)?;
                entries.push((i, parse_q(c).map_err(|e| Error::parse(l, e.to_string()))?));
            }
            Ok(SparseVec::from_entries(entries))
        };
        let unit = find("unit", &json.unit)?;
        let mut d = vec![SparseVec::new(); basis.len()];
        for (name, image) in &json.differential {
            let loc = format!("differential.\"{name}\"");
            d[find(&loc, name)?] = vector(&loc, image)?;
        }
        let mut products = BTreeMap::new();
        for (key, value) in &json.products {
            let loc = format!("products.\"{key}\"");
            let (a, b) = key
                .split_once('*')
                .ok_or_else(|| Error::parse(loc.clone(), "key must look like `a*b`"))?;
            let (i, j) = (find(&loc, a.trim())?, find(&loc, b.trim())?);
            products.insert((i, j), vector(&loc, value)?);
        }
        if json.commutative {
            let given: Vec<((usize, usize), SparseVec)> = products.iter().map(|(k, v)| (*k, v.clone())).collect();
            for ((i, j), v) in given {
                products
                    .entry((j, i))
                    .or_insert_with(|| v.scaled(&koszul(basis[i].1, basis[j].1)));
            }
        }
        let augmentation = if json.augmentation.is_empty() {
            SparseVec::unit(unit)
        } else {
            vector("augmentation", &json.augmentation)?
        };
        Self::new(basis, unit, d, products, augmentation, json.commutative)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: DgaJson = serde_json::from_str(s)?;
        Self::from_json(&json)
    }

    pub fn to_json(&self) -> DgaJson {
        let named = |v: &SparseVec| -> BTreeMap<String, String> {
            v.iter().map(|(i, c)| (self.names[i].clone(), format_q(c))).collect()
        };
        DgaJson {
            basis: self
                .names
                .iter()
                .zip(&self.degrees)
                .map(|(n, &d)| BasisJson {
                    name: n.clone(),
                    degree: d,
                })
                .collect(),
            unit: self.names[self.unit].clone(),
            augmentation: named(&self.augmentation),
            differential: (0..self.dim())
                .filter(|&i| !self.d[i].is_zero())
                .map(|i| (self.names[i].clone(), named(&self.d[i])))
                .collect(),
            products: self
                .products
                .iter()
                .filter(|((i, j), _)| *i != self.unit && *j != self.unit)
                .map(|((i, j), v)| (format!("{}*{}", self.names[*i], self.names[*j]), named(v)))
                .collect(),
            commutative: self.commutative,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NONFORMAL: &str = r#"{
        "basis": [
            {"name": "1", "degree": 0}, {"name": "x", "degree": 2}, {"name": "xx", "degree": 4},
            {"name": "y", "degree": 3}, {"name": "xy", "degree": 5}, {"name": "xxy", "degree": 7}
        ],
        "unit": "1",
        "differential": {"y": {"xx": "1"}},
        "products": {
            "x*x": {"xx": "1"}, "x*y": {"xy": "1"}, "x*xy": {"xxy": "1"}, "xx*y": {"xxy": "1"}
        },
        "commutative": true
    }"#;

    #[test]
    fn builders_validate() {
        assert_eq!(FiniteDGA::ground().dim(), 1);
        let s2 = FiniteDGA::truncated_polynomial(2, 2).unwrap();
        assert_eq!(s2.mul_basis(1, 1), SparseVec::new());
        let t = s2.tensor(&FiniteDGA::exterior(3).unwrap()).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(t.name(3), "xy");
    }

    #[test]
    fn json_round_trip_and_cohomology() {
        let a = FiniteDGA::from_json_str(NONFORMAL).unwrap();
        assert!(!a.has_zero_differential());
        let back = FiniteDGA::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a);
        let h = a.cohomology_algebra().unwrap();
        let degrees: Vec<usize> = (0..h.dim()).map(|i| h.degree(i)).collect();
        assert_eq!(degrees, vec![0, 2, 5, 7]);
        // x · xy = x²y survives, x · x = dy does not
        assert_eq!(h.mul_basis(1, 2), SparseVec::unit(3));
        assert!(h.mul_basis(1, 1).is_zero());
    }

    #[test]
    fn broken_leibniz_is_rejected() {
        let text = NONFORMAL.replace(r#""y": {"xx": "1"}"#, r#""y": {"xx": "1"}, "x": {"y": "1"}"#);
        assert!(matches!(FiniteDGA::from_json_str(&text), Err(Error::Structure(_))));
    }

    #[test]
    fn unknown_names_carry_locations() {
        let text = NONFORMAL.replace(r#""x*y""#, r#""x*z""#);
        match FiniteDGA::from_json_str(&text) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "products.\"x*z\""),
            other => panic!("{other:?}"),
        }
    }
}
