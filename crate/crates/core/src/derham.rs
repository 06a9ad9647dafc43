//! The end-to-end de Rham check for a finite simplicial set.
//!
//! Raises the weight bound of the truncated form complex until its
//! cohomology agrees at two consecutive bounds and matches the simplicial
//! cochains, then checks at that bound that integration is a quasi-isomorphism,
//! that the Whitney section inverts it on cohomology, and that it is
//! multiplicative on cohomology.

use std::sync::Arc;

use serde::Serialize;

use crate::cochain::{cochain_complex, cup, Cochain};
use crate::error::Result;
use crate::forms::{integrate, whitney_extension, TruncatedForms};
use crate::homalg::{cohomology, quasi_iso_with, CohomologyReport, QuasiIsoWitness, Window};
use crate::linalg::SparseVec;
use crate::sset::FiniteSimplicialSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Cohomology dimensions of the truncation at one weight bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightStep {
    pub max_weight: u32,
    pub dims: Vec<usize>,
}

/// `[∫(a ∧ b)]` against `[∫a ⌣ ∫b]` for two representative classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    /// `(degree, index)` of the left and right representatives.
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub holds: bool,
    /// Whether the common class is nonzero.
    pub nonzero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DerhamReport {
    pub verdict: Verdict,
    pub window: Window,
    pub cochain_dims: Vec<usize>,
    pub history: Vec<WeightStep>,
    /// Smallest bound of the agreeing pair.
    pub stabilized_at: Option<u32>,
    /// Bound at which the remaining checks ran.
    pub checked_at: Option<u32>,
    pub integration: Option<QuasiIsoWitness>,
    pub whitney_round_trip: Option<bool>,
    pub products: Vec<ProductCheck>,
    pub messages: Vec<String>,
}

/// Runs the check with weight bounds `1..=max_weight`.
pub fn derham_check(k: Arc<FiniteSimplicialSet>, window: Window, max_weight: u32) -> Result<DerhamReport> {
    let cochains = Arc::new(cochain_complex(&k));
    let hc = cohomology(&cochains, window);
    let mut report = DerhamReport {
        verdict: Verdict::Inconclusive,
        window,
        cochain_dims: hc.dims(),
        history: Vec::new(),
        stabilized_at: None,
        checked_at: None,
        integration: None,
        whitney_round_trip: None,
        products: Vec::new(),
        messages: Vec::new(),
    };

    let mut found = None;
    for d in 1..=max_weight {
        let t = TruncatedForms::new(k.clone(), d)?;
        let ha = cohomology(t.complex(), window);
        let dims = ha.dims();
        let agrees = report.history.last().is_some_and(|s| s.dims == dims);
        report.history.push(WeightStep {
            max_weight: d,
            dims: dims.clone(),
        });
        if agrees && dims == report.cochain_dims {
            report.stabilized_at = Some(d - 1);
            found = Some((t, ha));
            break;
        }
    }
    let Some((mut t, mut ha)) = found else {
        report
            .messages
            .push(format!("no stabilization with weight ≤ {max_weight}"));
        return Ok(report);
    };

    // Whitney forms of p-cochains have weight p + 1
    let needed = k.top_dim() as u32 + 1;
    if t.max_weight() < needed {
        t = TruncatedForms::new(k.clone(), needed)?;
        ha = cohomology(t.complex(), window);
        if ha.dims() != report.cochain_dims {
            report.verdict = Verdict::Fail;
            report
                .messages
                .push(format!("dimensions changed again at weight {needed}: {:?}", ha.dims()));
            return Ok(report);
        }
    }
    report.checked_at = Some(t.max_weight());

    let f = t.integration_map(cochains.clone())?;
    let witness = quasi_iso_with(&f, &ha, &hc)?;
    let qi = witness.holds;
    report.integration = Some(witness);
    if !qi {
        report.messages.push("integration is not a quasi-isomorphism".into());
    }

    let round_trip = whitney_round_trip(&k, &t, &ha, &hc, &mut report.messages)?;
    report.whitney_round_trip = Some(round_trip);

    report.products = product_checks(&t, &ha, &hc)?;
    let products_ok = report.products.iter().all(|c| c.holds);
    if !products_ok {
        report.messages.push("integration is not multiplicative on cohomology".into());
    }

    report.verdict = if qi && round_trip && products_ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(report)
}

fn whitney_round_trip(
    k: &Arc<FiniteSimplicialSet>,
    t: &TruncatedForms,
    ha: &CohomologyReport,
    hc: &CohomologyReport,
    messages: &mut Vec<String>,
) -> Result<bool> {
    let mut ok = true;
    // ∫ ∘ W = id on cochain representatives
    for h in &hc.degrees {
        for z in &h.representatives {
            let c = Cochain::new(k.clone(), h.degree, z.clone())?;
            if integrate(&whitney_extension(&c)?)? != c {
                messages.push(format!("∫ ∘ W ≠ id in degree {}", h.degree));
                ok = false;
            }
        }
    }
    // W ∘ ∫ = id on the classes of the truncation
    for h in &ha.degrees {
        for (i, a) in h.representatives.iter().enumerate() {
            let form = t.form_of(h.degree, a);
            let back = whitney_extension(&integrate(&form)?)?;
            let same = match t.coordinates(&back) {
                Some(v) => h.is_exact(&v.sub(a))?,
                None => false,
            };
            if !same {
                messages.push(format!("W ∘ ∫ moves class {i} in degree {}", h.degree));
                ok = false;
            }
        }
    }
    Ok(ok)
}

fn product_checks(
    t: &TruncatedForms,
    ha: &CohomologyReport,
    hc: &CohomologyReport,
) -> Result<Vec<ProductCheck>> {
    let mut out = Vec::new();
    for a in ha.degrees.iter().filter(|h| h.degree > 0) {
        for b in ha.degrees.iter().filter(|h| h.degree > 0) {
            let Some(target) = hc.degree(a.degree + b.degree) else { continue };
            for (i, x) in a.representatives.iter().enumerate() {
                for (j, y) in b.representatives.iter().enumerate() {
                    let fx = t.form_of(a.degree, x);
                    let fy = t.form_of(b.degree, y);
                    let lhs: SparseVec = integrate(&fx.wedge(&fy)?)?.values().clone();
                    let rhs = cup(&integrate(&fx)?, &integrate(&fy)?)?.values().clone();
                    let cl = target.class_of(&lhs)?;
                    let cr = target.class_of(&rhs)?;
                    out.push(ProductCheck {
                        left: (a.degree, i),
                        right: (b.degree, j),
                        holds: cl == cr,
                        nonzero: !cl.is_zero(),
                    });
                }
            }
        }
    }
    Ok(out)
}
