//! Text syntax for forms, e.g. `3/2 t1^2 t3 dt1^dt2 + -1 dt3`.
//!
//! A term is a product of rational coefficients, powers `t<i>^<e>` and a
//! wedge of differentials `dt<i>^dt<j>…`; terms are joined by `+` or `-`.
//! `t0` and `dt0` are accepted and eliminated. The canonical printer
//! (`Display` on [`PolyForm`]) emits text this parser reads back.

use crate::error::{Error, Result};
use crate::rational::parse_q;

use super::PolyForm;

fn index(tok: &str, prefix: &str, whole: &str) -> Result<usize> {
    tok.strip_prefix(prefix)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::parse(format!("`{whole}`"), format!("bad factor `{tok}`")))
}

fn parse_factor(tok: &str, dim: usize) -> Result<PolyForm> {
    let at = |msg: String| Error::parse(format!("`{tok}`"), msg);
    if tok.starts_with("dt") {
        let mut acc = PolyForm::one(dim);
        for part in tok.split('^') {
            let i = index(part, "dt", tok)?;
            let f = PolyForm::dt(dim, i).map_err(|e| at(e.to_string()))?;
            acc = acc.wedge(&f)?;
        }
        return Ok(acc);
    }
    if tok.starts_with('t') {
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => (b, e.parse::<u32>().map_err(|_| at("bad exponent".into()))?),
            None => (tok, 1),
        };
        let i = index(base, "t", tok)?;
        let t = PolyForm::t(dim, i).map_err(|e| at(e.to_string()))?;
        let mut acc = PolyForm::one(dim);
        for _ in 0..exp {
            acc = acc.wedge(&t)?;
        }
        return Ok(acc);
    }
    Ok(PolyForm::constant(dim, parse_q(tok)?))
}

/// Parses a form on Δ^dim. `degree` fixes the form degree, which matters
/// only when the text denotes the zero form; otherwise it is checked.
pub fn parse_form(text: &str, dim: usize, degree: Option<usize>) -> Result<PolyForm> {
    let mut total: Option<PolyForm> = None;
    let mut term: Option<PolyForm> = None;
    let mut negate = false;
    let flush = |total: &mut Option<PolyForm>, term: Option<PolyForm>, negate: bool| -> Result<()> {
        let Some(t) = term else {
            return Err(Error::parse(format!("`{text}`"), "empty term"));
        };
        let t = if negate { t.neg() } else { t };
        *total = Some(match total.take() {
            None => t,
            Some(acc) => acc.add(&t).map_err(|e| Error::parse(format!("`{text}`"), e.to_string()))?,
        });
        Ok(())
    };
    for raw in text.split_whitespace() {
        match raw {
            "+" | "-" => {
                flush(&mut total, term.take(), negate)?;
                negate = raw == "-";
                continue;
            }
            _ => {}
        }
        // a leading minus on a symbolic factor, e.g. `-t1`
        let (tok, neg) = match raw.strip_prefix('-') {
            Some(rest) if rest.starts_with('t') || rest.starts_with('d') => (rest, true),
            _ => (raw, false),
        };
        let mut f = parse_factor(tok, dim)?;
        if neg {
            f = f.neg();
        }
        term = Some(match term {
            None => f,
            Some(acc) => acc.wedge(&f)?,
        });
    }
    flush(&mut total, term, negate)?;
    let form = total.expect("at least one term");
    match degree {
        Some(k) if form.is_zero() => Ok(PolyForm::zero(dim, k)),
        Some(k) if form.degree() != k => Err(Error::parse(
            format!("`{text}`"),
            format!("expected a {k}-form, found a {}-form", form.degree()),
        )),
        _ => Ok(form),
    }
}
