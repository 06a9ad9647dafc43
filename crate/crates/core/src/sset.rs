//! Finite simplicial sets presented by nondegenerate generators.
//!
//! A simplex of a finite simplicial set is written in Eilenberg–Zilber normal
//! form `s_{j_1} … s_{j_k} x` with `j_1 > … > j_k` and `x` a nondegenerate
//! generator. Degenerate simplices are never stored; every face or
//! degeneracy is computed on demand and brought back to normal form.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simplex in normal form: `degeneracies` applied (outermost first) to `generator`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub dim: usize,
    pub generator: usize,
    pub degeneracies: Vec<usize>,
}

impl SimplexRef {
    pub fn nondegenerate(generator: usize, dim: usize) -> Self {
        Self {
            dim,
            generator,
            degeneracies: Vec::new(),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degeneracies.is_empty()
    }

    /// Dimension of the underlying generator.
    pub fn generator_dim(&self) -> usize {
        self.dim - self.degeneracies.len()
    }
}

/// Brings a composite `s_{a_1} s_{a_2} … s_{a_m}` (outermost first) to the
/// strictly decreasing normal form using `s_i s_j = s_{j+1} s_i` for `i ≤ j`.
pub fn normalize_word(word: &[usize]) -> Vec<usize> {
    let mut w = word.to_vec();
    let mut changed = true;
    while changed {
        changed = false;
        for k in 0..w.len().saturating_sub(1) {
            if w[k] <= w[k + 1] {
                let (i, j) = (w[k], w[k + 1]);
                w[k] = j + 1;
                w[k + 1] = i;
                changed = true;
            }
        }
    }
    w
}

/// Checks that a normal-form word can be applied to a simplex of dimension `base_dim`.
fn check_word(word: &[usize], base_dim: usize) -> Result<()> {
    if word.windows(2).any(|p| p[0] <= p[1]) {
        return Err(Error::Presentation(format!(
            "degeneracy word {word:?} is not strictly decreasing"
        )));
    }
    // Innermost operator acts on dimension base_dim, the next on base_dim + 1, ...
    for (depth, &j) in word.iter().rev().enumerate() {
        if j > base_dim + depth {
            return Err(Error::Presentation(format!(
                "degeneracy s_{j} in word {word:?} is out of range over a {base_dim}-simplex"
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Generator {
    name: String,
    dim: usize,
    faces: Vec<SimplexRef>,
}

/// A face reference as written by callers: generator name plus degeneracy word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSpec {
    pub gen: String,
    #[serde(default)]
    pub degeneracies: Vec<usize>,
}

impl FaceSpec {
    pub fn plain(gen: impl Into<String>) -> Self {
        Self {
            gen: gen.into(),
            degeneracies: Vec::new(),
        }
    }

    pub fn degenerate(gen: impl Into<String>, degeneracies: Vec<usize>) -> Self {
        Self {
            gen: gen.into(),
            degeneracies,
        }
    }
}

/// Collects generators before validation.
#[derive(Clone, Debug, Default)]
pub struct Builder {
    gens: Vec<(String, usize, Vec<FaceSpec>)>,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, name: impl Into<String>) -> Self {
        self.gens.push((name.into(), 0, Vec::new()));
        self
    }

    pub fn simplex(mut self, name: impl Into<String>, faces: Vec<FaceSpec>) -> Self {
        let dim = faces.len().saturating_sub(1);
        self.gens.push((name.into(), dim, faces));
        self
    }

    pub fn push(&mut self, name: impl Into<String>, dim: usize, faces: Vec<FaceSpec>) {
        self.gens.push((name.into(), dim, faces));
    }

    pub fn build(self) -> Result<FiniteSimplicialSet> {
        FiniteSimplicialSet::from_specs(self.gens)
    }
}

/// A finite simplicial set. Immutable once built; the simplicial identities
/// are verified at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSimplicialSet {
    generators: Vec<Generator>,
    by_dim: Vec<Vec<usize>>,
    position: Vec<usize>,
    by_name: BTreeMap<String, usize>,
}

impl FiniteSimplicialSet {
    fn from_specs(specs: Vec<(String, usize, Vec<FaceSpec>)>) -> Result<Self> {
        let mut by_name = BTreeMap::new();
        for (id, (name, _, _)) in specs.iter().enumerate() {
            if by_name.insert(name.clone(), id).is_some() {
                return Err(Error::Presentation(format!("duplicate generator `{name}`")));
            }
        }
        let mut generators = Vec::with_capacity(specs.len());
        for (name, dim, faces) in &specs {
            let expected = if *dim == 0 { 0 } else { dim + 1 };
            if faces.len() != expected {
                return Err(Error::Presentation(format!(
                    "generator `{name}` of dimension {dim} has {} faces, expected {expected}",
                    faces.len()
                )));
            }
            let mut refs = Vec::with_capacity(faces.len());
            for (i, f) in faces.iter().enumerate() {
                let &target = by_name.get(&f.gen).ok_or_else(|| {
                    Error::Presentation(format!("face {i} of `{name}` names unknown generator `{}`", f.gen))
                })?;
                let target_dim = specs[target].1;
                check_word(&f.degeneracies, target_dim).map_err(|e| {
                    Error::Presentation(format!("face {i} of `{name}`: {e}"))
                })?;
                if target_dim + f.degeneracies.len() + 1 != *dim {
                    return Err(Error::Presentation(format!(
                        "face {i} of `{name}` has dimension {}, expected {}",
                        target_dim + f.degeneracies.len(),
                        dim - 1
                    )));
                }
                refs.push(SimplexRef {
                    dim: dim - 1,
                    generator: target,
                    degeneracies: f.degeneracies.clone(),
                });
            }
            generators.push(Generator {
                name: name.clone(),
                dim: *dim,
                faces: refs,
            });
        }
        let top = generators.iter().map(|g| g.dim).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); if generators.is_empty() { 0 } else { top + 1 }];
        let mut position = vec![0; generators.len()];
        for (id, g) in generators.iter().enumerate() {
            position[id] = by_dim[g.dim].len();
            by_dim[g.dim].push(id);
        }
        let set = Self {
            generators,
            by_dim,
            position,
            by_name,
        };
        set.check_identities()?;
        Ok(set)
    }

    fn check_identities(&self) -> Result<()> {
        for (id, g) in self.generators.iter().enumerate() {
            if g.dim < 2 {
                continue;
            }
            let s = SimplexRef::nondegenerate(id, g.dim);
            for j in 1..=g.dim {
                for i in 0..j {
                    let lhs = self.face(&self.face(&s, j)?, i)?;
                    let rhs = self.face(&self.face(&s, i)?, j - 1)?;
                    if lhs != rhs {
                        return Err(Error::Presentation(format!(
                            "simplicial identity d_{i} d_{j} = d_{} d_{i} fails on `{}`: {} vs {}",
                            j - 1,
                            g.name,
                            self.describe(&lhs),
                            self.describe(&rhs)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn builder() -> Builder {
        Builder::new()
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Largest generator dimension (0 for the empty set).
    pub fn top_dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    /// Generator ids of dimension `p`, in presentation order.
    pub fn generators_in_dim(&self, p: usize) -> &[usize] {
        self.by_dim.get(p).map_or(&[], Vec::as_slice)
    }

    pub fn count_in_dim(&self, p: usize) -> usize {
        self.generators_in_dim(p).len()
    }

    /// Generator counts in dimensions `0..=top_dim`.
    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    /// Index of a generator among the generators of its dimension.
    pub fn position(&self, generator: usize) -> usize {
        self.position[generator]
    }

    pub fn dim_of(&self, generator: usize) -> usize {
        self.generators[generator].dim
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.generators[generator].name
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    /// The stored `i`-th face of a generator.
    pub fn generator_face(&self, generator: usize, i: usize) -> &SimplexRef {
        &self.generators[generator].faces[i]
    }

    pub fn describe(&self, r: &SimplexRef) -> String {
        let mut s = String::new();
        for j in &r.degeneracies {
            s.push_str(&format!("s{j} "));
        }
        s.push_str(&self.generators[r.generator].name);
        s
    }

    /// `d_i` of a normal-form simplex, returned in normal form.
    pub fn face(&self, r: &SimplexRef, i: usize) -> Result<SimplexRef> {
        if r.dim == 0 || i > r.dim {
            return Err(Error::Argument(format!("face d_{i} undefined on a {}-simplex", r.dim)));
        }
        let mut out = Vec::with_capacity(r.degeneracies.len());
        let mut i = i;
        for (k, &j) in r.degeneracies.iter().enumerate() {
            if i < j {
                out.push(j - 1);
            } else if i == j || i == j + 1 {
                out.extend_from_slice(&r.degeneracies[k + 1..]);
                return Ok(SimplexRef {
                    dim: r.dim - 1,
                    generator: r.generator,
                    degeneracies: normalize_word(&out),
                });
            } else {
                out.push(j);
                i -= 1;
            }
        }
        let f = &self.generators[r.generator].faces[i];
        out.extend_from_slice(&f.degeneracies);
        Ok(SimplexRef {
            dim: r.dim - 1,
            generator: f.generator,
            degeneracies: normalize_word(&out),
        })
    }

    /// `s_j` of a normal-form simplex, returned in normal form.
    pub fn degeneracy(&self, r: &SimplexRef, j: usize) -> Result<SimplexRef> {
        if j > r.dim {
            return Err(Error::Argument(format!("degeneracy s_{j} undefined on a {}-simplex", r.dim)));
        }
        let mut word = Vec::with_capacity(r.degeneracies.len() + 1);
        word.push(j);
        word.extend_from_slice(&r.degeneracies);
        Ok(SimplexRef {
            dim: r.dim + 1,
            generator: r.generator,
            degeneracies: normalize_word(&word),
        })
    }

    /// Pulls `r` back along a monotone map `theta: [p] → [r.dim]`, given by its values.
    pub fn apply(&self, r: &SimplexRef, theta: &[usize]) -> Result<SimplexRef> {
        if theta.is_empty() || theta.windows(2).any(|w| w[0] > w[1]) || theta[theta.len() - 1] > r.dim {
            return Err(Error::Argument(format!(
                "{theta:?} is not a monotone map into [{}]",
                r.dim
            )));
        }
        let mut cur = r.clone();
        for k in (0..=r.dim).rev() {
            if !theta.contains(&k) {
                cur = self.face(&cur, k)?;
            }
        }
        let mut word: Vec<usize> = (0..theta.len() - 1).rev().filter(|&j| theta[j] == theta[j + 1]).collect();
        word.extend_from_slice(&cur.degeneracies);
        Ok(SimplexRef {
            dim: theta.len() - 1,
            generator: cur.generator,
            degeneracies: normalize_word(&word),
        })
    }

    /// Brings an arbitrary ref (possibly with a non-normal word) to normal form.
    pub fn normalize_ref(&self, r: &SimplexRef) -> Result<SimplexRef> {
        let g = self
            .generators
            .get(r.generator)
            .ok_or_else(|| Error::Presentation(format!("unknown generator id {}", r.generator)))?;
        let base = g.dim;
        // apply each operator innermost-first so range checks see the right dimension
        let mut cur = SimplexRef::nondegenerate(r.generator, base);
        for &j in r.degeneracies.iter().rev() {
            cur = self.degeneracy(&cur, j).map_err(|e| Error::Presentation(e.to_string()))?;
        }
        if cur.dim != r.dim {
            return Err(Error::Presentation(format!(
                "ref declares dimension {} but its word yields {}",
                r.dim, cur.dim
            )));
        }
        Ok(cur)
    }

    /// Generator counts as the loader expects them, for serialization.
    pub fn to_json(&self) -> SimplicialSetJson {
        let mut generators = BTreeMap::new();
        for (p, ids) in self.by_dim.iter().enumerate() {
            generators.insert(
                p.to_string(),
                ids.iter().map(|&id| self.generators[id].name.clone()).collect(),
            );
        }
        let mut faces = BTreeMap::new();
        for g in &self.generators {
            if g.dim == 0 {
                continue;
            }
            faces.insert(
                g.name.clone(),
                g.faces
                    .iter()
                    .map(|f| FaceSpec::degenerate(self.generators[f.generator].name.clone(), f.degeneracies.clone()))
                    .collect(),
            );
        }
        SimplicialSetJson { generators, faces }
    }

    pub fn from_json(json: &SimplicialSetJson) -> Result<Self> {
        let mut dims: Vec<(usize, &Vec<String>)> = Vec::new();
        for (k, names) in &json.generators {
            let p: usize = k
                .parse()
                .map_err(|_| Error::parse(format!("generators.\"{k}\""), "dimension key is not a non-negative integer"))?;
            dims.push((p, names));
        }
        dims.sort_by_key(|(p, _)| *p);
        let mut b = Builder::new();
        for (p, names) in dims {
            for name in names {
                let faces = if p == 0 {
                    if json.faces.get(name).is_some_and(|f| !f.is_empty()) {
                        return Err(Error::parse(format!("faces.\"{name}\""), "a vertex has no faces"));
                    }
                    Vec::new()
                } else {
                    json.faces
                        .get(name)
                        .cloned()
                        .ok_or_else(|| Error::parse(format!("faces.\"{name}\""), "missing face list"))?
                };
                for (i, f) in faces.iter().enumerate() {
                    if f.degeneracies.windows(2).any(|w| w[0] <= w[1]) {
                        return Err(Error::parse(
                            format!("faces.\"{name}\"[{i}].degeneracies"),
                            "degeneracy word must be strictly decreasing",
                        ));
                    }
                }
                b.push(name.clone(), p, faces);
            }
        }
        for name in json.faces.keys() {
            if !json.generators.values().any(|v| v.contains(name)) {
                return Err(Error::parse(format!("faces.\"{name}\""), "faces given for an undeclared generator"));
            }
        }
        b.build()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: SimplicialSetJson = serde_json::from_str(s)?;
        Self::from_json(&json)
    }
}

impl fmt::Display for FiniteSimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "simplicial set with generator counts {:?}", self.counts())
    }
}

/// On-disk form of a simplicial set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialSetJson {
    pub generators: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<FaceSpec>>,
}

fn vertex_name(vs: &[usize], n: usize) -> String {
    let parts: Vec<String> = vs.iter().map(usize::to_string).collect();
    if n < 10 {
        parts.concat()
    } else {
        parts.join(",")
    }
}

/// Strictly increasing subsequences of `0..=n` of length `p + 1`, in lexicographic order.
pub fn increasing_sequences(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            if n + 1 - v < left {
                break;
            }
            cur.push(v);
            rec(v + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        rec(0, n, p + 1, &mut Vec::new(), &mut out);
    }
    out
}

fn simplex_family(n: usize, include_top: bool) -> Result<FiniteSimplicialSet> {
    let mut b = Builder::new();
    let top = if include_top { n } else { n.saturating_sub(1) };
    for p in 0..=top {
        for vs in increasing_sequences(n, p) {
            let faces = if p == 0 {
                Vec::new()
            } else {
                (0..=p)
                    .map(|i| {
                        let mut f = vs.clone();
                        f.remove(i);
                        FaceSpec::plain(vertex_name(&f, n))
                    })
                    .collect()
            };
            b.push(vertex_name(&vs, n), p, faces);
        }
    }
    b.build()
}

/// The standard simplex Δ[n]: nondegenerate simplices are the increasing
/// vertex sequences, faces delete entries.
pub fn std_simplex(n: usize) -> FiniteSimplicialSet {
    simplex_family(n, true).expect("standard simplex presentation is valid")
}

/// The boundary ∂Δ[n], `n ≥ 1`.
pub fn boundary_simplex(n: usize) -> Result<FiniteSimplicialSet> {
    if n == 0 {
        return Err(Error::Argument("∂Δ[0] is empty".into()));
    }
    simplex_family(n, false)
}

/// Generator id of the face of Δ[n] with the given vertex sequence.
pub fn std_simplex_id(set: &FiniteSimplicialSet, n: usize, vertices: &[usize]) -> Option<usize> {
    set.lookup(&vertex_name(vertices, n))
}

/// Δ[n]/∂Δ[n]: one vertex and one n-simplex all of whose faces are the basepoint.
pub fn quotient_sphere(n: usize) -> Result<FiniteSimplicialSet> {
    if n == 0 {
        return Err(Error::Argument("quotient sphere needs n ≥ 1".into()));
    }
    let collapsed: Vec<usize> = (0..n - 1).rev().collect();
    Builder::new()
        .vertex("*")
        .simplex(
            "e",
            (0..=n).map(|_| FaceSpec::degenerate("*", collapsed.clone())).collect(),
        )
        .build()
}

/// The one-vertex torus: edges `a`, `b`, diagonal `c`, triangles `U`, `L`.
pub fn torus_presentation() -> FiniteSimplicialSet {
    Builder::new()
        .vertex("v")
        .simplex("a", vec![FaceSpec::plain("v"), FaceSpec::plain("v")])
        .simplex("b", vec![FaceSpec::plain("v"), FaceSpec::plain("v")])
        .simplex("c", vec![FaceSpec::plain("v"), FaceSpec::plain("v")])
        .simplex("U", vec![FaceSpec::plain("b"), FaceSpec::plain("c"), FaceSpec::plain("a")])
        .simplex("L", vec![FaceSpec::plain("a"), FaceSpec::plain("c"), FaceSpec::plain("b")])
        .build()
        .expect("torus presentation is valid")
}

/// A simplicial map, given on generators.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<FiniteSimplicialSet>,
    target: Arc<FiniteSimplicialSet>,
    images: Vec<SimplexRef>,
}

impl SimplicialMap {
    /// Validates that faces commute with the map on every generator.
    pub fn new(
        source: Arc<FiniteSimplicialSet>,
        target: Arc<FiniteSimplicialSet>,
        images: Vec<SimplexRef>,
    ) -> Result<Self> {
        if images.len() != source.num_generators() {
            return Err(Error::Argument("one image per source generator required".into()));
        }
        let mut normalized = Vec::with_capacity(images.len());
        for (g, img) in images.iter().enumerate() {
            let img = target.normalize_ref(img)?;
            if img.dim != source.dim_of(g) {
                return Err(Error::Argument(format!(
                    "image of `{}` has dimension {}, expected {}",
                    source.name(g),
                    img.dim,
                    source.dim_of(g)
                )));
            }
            normalized.push(img);
        }
        let map = Self {
            source,
            target,
            images: normalized,
        };
        for g in 0..map.source.num_generators() {
            let d = map.source.dim_of(g);
            if d == 0 {
                continue;
            }
            for i in 0..=d {
                let lhs = map.target.face(&map.images[g], i)?;
                let rhs = map.map_ref(map.source.generator_face(g, i))?;
                if lhs != rhs {
                    return Err(Error::Argument(format!(
                        "map does not commute with d_{i} on `{}`",
                        map.source.name(g)
                    )));
                }
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &Arc<FiniteSimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteSimplicialSet> {
        &self.target
    }

    pub fn image(&self, generator: usize) -> &SimplexRef {
        &self.images[generator]
    }

    pub fn map_ref(&self, r: &SimplexRef) -> Result<SimplexRef> {
        let mut cur = self.images[r.generator].clone();
        for &j in r.degeneracies.iter().rev() {
            cur = self.target.degeneracy(&cur, j)?;
        }
        Ok(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_and_triangle_counts() {
        let p = std_simplex(0);
        assert_eq!(p.counts(), vec![1]);
        assert!(p.generators_in_dim(1).is_empty());
        assert_eq!(std_simplex(2).counts(), vec![3, 3, 1]);
    }

    #[test]
    fn simplex_identities_hold_on_delta3() {
        let k = std_simplex(3);
        for g in 0..k.num_generators() {
            let d = k.dim_of(g);
            if d < 2 {
                continue;
            }
            let s = SimplexRef::nondegenerate(g, d);
            for j in 1..=d {
                for i in 0..j {
                    let a = k.face(&k.face(&s, j).unwrap(), i).unwrap();
                    let b = k.face(&k.face(&s, i).unwrap(), j - 1).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn face_of_nondegenerate_is_stored_face() {
        let k = std_simplex(2);
        let top = std_simplex_id(&k, 2, &[0, 1, 2]).unwrap();
        let f = k.face(&SimplexRef::nondegenerate(top, 2), 1).unwrap();
        assert_eq!(f, SimplexRef::nondegenerate(std_simplex_id(&k, 2, &[0, 2]).unwrap(), 1));
    }

    #[test]
    fn face_cancels_degeneracy() {
        let k = std_simplex(2);
        let e = SimplexRef::nondegenerate(std_simplex_id(&k, 2, &[0, 1]).unwrap(), 1);
        for j in 0..=1 {
            let s = k.degeneracy(&e, j).unwrap();
            assert_eq!(k.face(&s, j).unwrap(), e);
            assert_eq!(k.face(&s, j + 1).unwrap(), e);
        }
    }

    #[test]
    fn degeneracy_words_are_reordered() {
        // s_0 s_1 = s_2 s_0 (i ≤ j case of s_i s_j = s_{j+1} s_i)
        assert_eq!(normalize_word(&[0, 1]), vec![2, 0]);
        assert_eq!(normalize_word(&[0, 0]), vec![1, 0]);
        assert_eq!(normalize_word(&[1, 0]), vec![1, 0]);
        let k = std_simplex(1);
        let v = SimplexRef::nondegenerate(0, 0);
        let s0 = k.degeneracy(&v, 0).unwrap();
        let s1s0 = k.degeneracy(&s0, 1).unwrap();
        let s0s0 = k.degeneracy(&s0, 0).unwrap();
        assert_eq!(s1s0.degeneracies, vec![1, 0]);
        assert_eq!(s0s0.degeneracies, vec![1, 0]);
    }

    #[test]
    fn normalize_ref_rejects_out_of_range_words() {
        let k = std_simplex(1);
        let bad = SimplexRef {
            dim: 1,
            generator: 0,
            degeneracies: vec![1],
        };
        assert!(matches!(k.normalize_ref(&bad), Err(Error::Presentation(_))));
        let ok = SimplexRef {
            dim: 2,
            generator: 0,
            degeneracies: vec![0, 0],
        };
        assert_eq!(k.normalize_ref(&ok).unwrap().degeneracies, vec![1, 0]);
    }

    #[test]
    fn apply_monotone_maps() {
        let k = std_simplex(2);
        let top = SimplexRef::nondegenerate(std_simplex_id(&k, 2, &[0, 1, 2]).unwrap(), 2);
        let edge = k.apply(&top, &[0, 2]).unwrap();
        assert_eq!(k.name(edge.generator), "02");
        assert!(!edge.is_degenerate());
        let deg = k.apply(&top, &[1, 1, 2]).unwrap();
        assert_eq!(k.name(deg.generator), "12");
        assert_eq!(deg.degeneracies, vec![0]);
        let id = k.apply(&top, &[0, 1, 2]).unwrap();
        assert_eq!(id, top);
    }

    #[test]
    fn quotient_sphere_shape() {
        assert_eq!(quotient_sphere(2).unwrap().counts(), vec![1, 0, 1]);
        assert_eq!(quotient_sphere(1).unwrap().counts(), vec![1, 1]);
        assert!(matches!(quotient_sphere(0), Err(Error::Argument(_))));
    }

    #[test]
    fn torus_counts() {
        assert_eq!(torus_presentation().counts(), vec![1, 3, 2]);
    }

    #[test]
    fn broken_identity_is_rejected() {
        let err = Builder::new()
            .vertex("x")
            .vertex("y")
            .simplex("e", vec![FaceSpec::plain("y"), FaceSpec::plain("x")])
            .simplex("f", vec![FaceSpec::plain("x"), FaceSpec::plain("x")])
            .simplex("t", vec![FaceSpec::plain("e"), FaceSpec::plain("f"), FaceSpec::plain("f")])
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::Presentation(_)), "{err}");
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let t = torus_presentation();
        let s = serde_json::to_string(&t.to_json()).unwrap();
        let back = FiniteSimplicialSet::from_json_str(&s).unwrap();
        assert_eq!(back.counts(), t.counts());
        let bad = r#"{"generators":{"0":["v"],"1":["e"]},"faces":{"e":[{"gen":"v","degeneracies":[0,1]},{"gen":"v"}]}}"#;
        assert!(matches!(FiniteSimplicialSet::from_json_str(bad), Err(Error::Parse { .. })));
    }

    #[test]
    fn simplicial_map_validation() {
        let delta = Arc::new(std_simplex(2));
        let sphere = Arc::new(quotient_sphere(2).unwrap());
        let star = SimplexRef::nondegenerate(0, 0);
        let images: Vec<SimplexRef> = (0..delta.num_generators())
            .map(|g| match delta.dim_of(g) {
                0 => star.clone(),
                1 => sphere.degeneracy(&star, 0).unwrap(),
                _ => SimplexRef::nondegenerate(1, 2),
            })
            .collect();
        assert!(SimplicialMap::new(delta.clone(), sphere, images).is_ok());

        // Δ[1] → Δ[2] sending the edge to 02 but its end vertex to 1
        let edge = Arc::new(std_simplex(1));
        let id = |vs: &[usize]| {
            let g = std_simplex_id(&delta, 2, vs).unwrap();
            SimplexRef::nondegenerate(g, vs.len() - 1)
        };
        let ok = vec![id(&[0]), id(&[2]), id(&[0, 2])];
        assert!(SimplicialMap::new(edge.clone(), delta.clone(), ok).is_ok());
        let wrong = vec![id(&[0]), id(&[1]), id(&[0, 2])];
        assert!(SimplicialMap::new(edge, delta, wrong).is_err());
    }
}
