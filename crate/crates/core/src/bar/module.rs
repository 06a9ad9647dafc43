//! Differential graded modules over a [`FiniteDGA`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::rational::sign;

use super::dga::FiniteDGA;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A finite DG module. The action is stored as `(module basis, algebra basis) ↦ vector`
/// for either side.
#[derive(Clone, Debug, PartialEq)]
pub struct DgModule {
    side: Side,
    names: Vec<String>,
    degrees: Vec<usize>,
    d: Vec<SparseVec>,
    action: BTreeMap<(usize, usize), SparseVec>,
}

impl DgModule {
    /// Builds and validates against `a`.
    pub fn new(
        a: &FiniteDGA,
        side: Side,
        basis: Vec<(String, usize)>,
        differential: Vec<SparseVec>,
        action: BTreeMap<(usize, usize), SparseVec>,
    ) -> Result<Self> {
        let (names, degrees): (Vec<String>, Vec<usize>) = basis.into_iter().unzip();
        if differential.len() != names.len() {
            return Err(Error::Structure("module differential has the wrong number of columns".into()));
        }
        let m = Self {
            side,
            names,
            degrees,
            d: differential,
            action: action.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        };
        m.validate(a)?;
        Ok(m)
    }

    /// ℚ in degree 0, acting through the augmentation.
    pub fn ground(a: &FiniteDGA, side: Side) -> Self {
        let action = (0..a.dim())
            .filter_map(|i| {
                let e = a.augment(&SparseVec::unit(i));
                (!num_traits::Zero::is_zero(&e)).then(|| ((0, i), SparseVec::unit(0).scaled(&e)))
            })
            .collect();
        Self::new(a, side, vec![("k".into(), 0)], vec![SparseVec::new()], action).expect("augmentation is an algebra map")
    }

    /// `A` acting on itself by multiplication.
    pub fn regular(a: &FiniteDGA, side: Side) -> Self {
        let mut action = BTreeMap::new();
        for m in 0..a.dim() {
            for x in 0..a.dim() {
                let v = match side {
                    Side::Right => a.mul_basis(m, x),
                    Side::Left => a.mul_basis(x, m),
                };
                action.insert((m, x), v);
            }
        }
        let basis = (0..a.dim()).map(|i| (a.name(i).to_string(), a.degree(i))).collect();
        let d = (0..a.dim()).map(|i| a.d_basis(i).clone()).collect();
        Self::new(a, side, basis, d, action).expect("a DGA is a module over itself")
    }

    fn validate(&self, a: &FiniteDGA) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            if self.d[i].support_end() > n || self.d[i].iter().any(|(j, _)| self.degrees[j] != self.degrees[i] + 1) {
                return Err(Error::Structure(format!("module differential on `{}` has the wrong degree", self.names[i])));
            }
            if !self.d_vec(&self.d[i]).is_zero() {
                return Err(Error::Structure(format!("module d∘d ≠ 0 on `{}`", self.names[i])));
            }
        }
        for (&(m, x), v) in &self.action {
            if m >= n || x >= a.dim() || v.support_end() > n {
                return Err(Error::Structure("module action index out of range".into()));
            }
            if v.iter().any(|(j, _)| self.degrees[j] != self.degrees[m] + a.degree(x)) {
                return Err(Error::Structure(format!(
                    "`{}` acting on `{}` has the wrong degree",
                    a.name(x),
                    self.names[m]
                )));
            }
        }
        for m in 0..n {
            let mv = SparseVec::unit(m);
            if self.act(&mv, &SparseVec::unit(a.unit())) != mv {
                return Err(Error::Structure(format!("unit does not act trivially on `{}`", self.names[m])));
            }
            for x in 0..a.dim() {
                let xv = SparseVec::unit(x);
                // right: d(m·x) = dm·x + (−1)^{|m|} m·dx; left: d(x·m) = dx·m + (−1)^{|x|} x·dm
                let lhs = self.d_vec(&self.act(&mv, &xv));
                let rhs = match self.side {
                    Side::Right => self
                        .act(&self.d[m], &xv)
                        .add(&self.act(&mv, a.d_basis(x)).scaled(&sign(self.degrees[m] % 2 == 1))),
                    Side::Left => self
                        .act(&mv, a.d_basis(x))
                        .add(&self.act(&self.d[m], &xv).scaled(&sign(a.degree(x) % 2 == 1))),
                };
                if lhs != rhs {
                    return Err(Error::Structure(format!(
                        "action of `{}` on `{}` does not commute with d",
                        a.name(x),
                        self.names[m]
                    )));
                }
                for y in 0..a.dim() {
                    let yv = SparseVec::unit(y);
                    // right: (m·x)·y = m·(xy); left: x·(y·m) = (xy)·m
                    let (lhs, rhs) = match self.side {
                        Side::Right => (self.act(&self.act(&mv, &xv), &yv), self.act(&mv, &a.mul_basis(x, y))),
                        Side::Left => (self.act(&self.act(&mv, &yv), &xv), self.act(&mv, &a.mul_basis(x, y))),
                    };
                    if lhs != rhs {
                        return Err(Error::Structure(format!(
                            "action is not associative on `{}`, `{}`, `{}`",
                            self.names[m],
                            a.name(x),
                            a.name(y)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn side(&self) -> Side {
        self.side
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

    /// The action of algebra element `x` on module element `m`, on whichever side.
    pub fn act(&self, m: &SparseVec, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in m.iter() {
            for (j, e) in x.iter() {
                if let Some(v) = self.action.get(&(i, j)) {
                    out = out.add_scaled(v, &(c * e));
                }
            }
        }
        out
    }

    pub fn act_basis(&self, m: usize, x: usize) -> SparseVec {
        self.action.get(&(m, x)).cloned().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_and_regular_modules() {
        let a = FiniteDGA::truncated_polynomial(2, 3).unwrap();
        let k = DgModule::ground(&a, Side::Left);
        assert_eq!(k.act_basis(0, 0), SparseVec::unit(0));
        assert!(k.act_basis(0, 1).is_zero());
        let r = DgModule::regular(&a, Side::Right);
        assert_eq!(r.act_basis(1, 1), SparseVec::unit(2));
    }

    #[test]
    fn wrong_degree_action_is_rejected() {
        let a = FiniteDGA::truncated_polynomial(2, 2).unwrap();
        let mut action = BTreeMap::new();
        action.insert((0, 0), SparseVec::unit(0));
        action.insert((0, 1), SparseVec::unit(0));
        let r = DgModule::new(&a, Side::Left, vec![("k".into(), 0)], vec![SparseVec::new()], action);
        assert!(matches!(r, Err(Error::Structure(_))));
    }
}
