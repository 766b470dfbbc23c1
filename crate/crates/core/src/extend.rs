//! Top-degree 2-cocycles, central extensions by them, the g0-action on
//! cocycles, the orbit types over the Hilbert–Cartan symbol, and the
//! enumeration of symbols with growth (2,1,…,1).

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{fmt_rat, int, member, parse_rat, rat, Rat, RatMatrix};
use crate::gnla::{gou, heis3, ngou, Gnla, GnlaBuilder};
use crate::prolong::Derivation0;

/// Antisymmetric bilinear form supported on pairs of total degree `degree`;
/// values are stored for index pairs `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub values: BTreeMap<(usize, usize), Rat>,
}

impl Cochain {
    pub fn zero(degree: usize) -> Cochain {
        Cochain { degree, values: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Zero::is_zero)
    }

    /// `ω(e_a, e_b)`.
    pub fn eval_basis(&self, a: usize, b: usize) -> Rat {
        if a < b {
            self.values.get(&(a, b)).cloned().unwrap_or_else(Rat::zero)
        } else if a > b {
            -self.values.get(&(b, a)).cloned().unwrap_or_else(Rat::zero)
        } else {
            Rat::zero()
        }
    }

    pub fn eval(&self, u: &[Rat], v: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for ((a, b), w) in &self.values {
            if w.is_zero() {
                continue;
            }
            s += w * (&u[*a] * &v[*b] - &u[*b] * &v[*a]);
        }
        s
    }

    pub fn add(&self, o: &Cochain) -> Cochain {
        let mut values = self.values.clone();
        for (k, v) in &o.values {
            *values.entry(*k).or_insert_with(Rat::zero) += v;
        }
        values.retain(|_, v| !v.is_zero());
        Cochain { degree: self.degree, values }
    }

    pub fn scale(&self, s: &Rat) -> Cochain {
        let mut values: BTreeMap<_, _> = self.values.iter().map(|(k, v)| (*k, v * s)).collect();
        values.retain(|_, v: &mut Rat| !v.is_zero());
        Cochain { degree: self.degree, values }
    }

    /// Sets `ω(e_a, e_b) = value` (and hence `ω(e_b, e_a) = -value`).
    pub fn set(&mut self, a: usize, b: usize, value: Rat) {
        let (key, v) = if a < b { ((a, b), value) } else { ((b, a), -value) };
        if v.is_zero() {
            self.values.remove(&key);
        } else {
            self.values.insert(key, v);
        }
    }

    pub fn to_json(&self, m: &Gnla) -> Vec<CochainEntry> {
        self.values
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((a, b), v)| CochainEntry { a: m.name(*a).into(), b: m.name(*b).into(), value: fmt_rat(v) })
            .collect()
    }

    /// Reads entries `ω(a, b) = value` by basis name; the degree is the grade
    /// sum of the first entry (or `m.depth() + 1` when empty).
    pub fn from_json(m: &Gnla, entries: &[CochainEntry]) -> Result<Cochain> {
        let idx = |n: &str| m.index(n).ok_or_else(|| Error::Input(format!("unknown basis element {n}")));
        let mut w = Cochain::zero(m.depth() + 1);
        for (k, e) in entries.iter().enumerate() {
            let (a, b) = (idx(&e.a)?, idx(&e.b)?);
            let v = parse_rat(&e.value).ok_or_else(|| Error::Input(format!("bad rational {}", e.value)))?;
            let t = m.grade(a) + m.grade(b);
            if k == 0 {
                w.degree = t;
            } else if t != w.degree {
                return Err(Error::Input(format!("entry ({}, {}) has degree {t}, expected {}", e.a, e.b, w.degree)));
            }
            w.set(a, b, v);
        }
        Ok(w)
    }

    /// Coordinates over the support pairs of degree `degree`.
    fn coords(&self, pairs: &[(usize, usize)]) -> Vec<Rat> {
        pairs.iter().map(|&(a, b)| self.eval_basis(a, b)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainEntry {
    pub a: String,
    pub b: String,
    pub value: String,
}

/// Index pairs `a < b` with `grade(a) + grade(b) = t`.
pub fn support_pairs(m: &Gnla, t: usize) -> Vec<(usize, usize)> {
    let n = m.dim();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if m.grade(a) + m.grade(b) == t {
                out.push((a, b));
            }
        }
    }
    out
}

fn from_coords(t: usize, pairs: &[(usize, usize)], c: &[Rat]) -> Cochain {
    let mut w = Cochain::zero(t);
    for (&(a, b), x) in pairs.iter().zip(c) {
        w.set(a, b, x.clone());
    }
    w
}

/// `δω(x,y,z) = -ω([x,y],z) + ω([x,z],y) - ω([y,z],x)`.
pub fn differential(m: &Gnla, w: &Cochain, x: &[Rat], y: &[Rat], z: &[Rat]) -> Rat {
    -w.eval(&m.bracket(x, y), z) + w.eval(&m.bracket(x, z), y) - w.eval(&m.bracket(y, z), x)
}

/// Basis of the degree-`t` cocycles.
pub fn cocycles_at(m: &Gnla, t: usize) -> Vec<Cochain> {
    let pairs = support_pairs(m, t);
    if pairs.is_empty() {
        return Vec::new();
    }
    let n = m.dim();
    let basis: Vec<Cochain> = (0..pairs.len())
        .map(|i| {
            let mut c = vec![Rat::zero(); pairs.len()];
            c[i] = Rat::one();
            from_coords(t, &pairs, &c)
        })
        .collect();
    let mut rows = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                if m.grade(x) + m.grade(y) + m.grade(z) != t {
                    continue;
                }
                let (ux, uy, uz) = (m.unit(x), m.unit(y), m.unit(z));
                let row: Vec<Rat> = basis.iter().map(|w| differential(m, w, &ux, &uy, &uz)).collect();
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sols = if rows.is_empty() {
        RatMatrix::identity(pairs.len()).row_vecs()
    } else {
        RatMatrix::from_rows(rows).nullspace()
    };
    sols.iter().map(|c| from_coords(t, &pairs, c)).collect()
}

/// Basis of the degree-`(ν+1)` cocycles.
pub fn cocycles(m: &Gnla) -> Vec<Cochain> {
    cocycles_at(m, m.depth() + 1)
}

/// Coboundary of a linear form `f` on g_{-t} (given on `m.grade_range(t)`):
/// `δf(u,v) = -f([u,v])`.
pub fn coboundary(m: &Gnla, t: usize, f: &[Rat]) -> Cochain {
    let r = m.grade_range(t);
    let mut w = Cochain::zero(t);
    for (a, b) in support_pairs(m, t) {
        let br = m.bracket(&m.unit(a), &m.unit(b));
        let v: Rat = r.clone().zip(f).fold(Rat::zero(), |acc, (i, x)| acc + &br[i] * x);
        w.set(a, b, -v);
    }
    w
}

/// Names of the `d` new central elements of a depth-`ν+1` extension.
pub fn extension_names(depth: usize, d: usize) -> Vec<String> {
    if d == 1 {
        vec![format!("e{depth}")]
    } else {
        (1..=d).map(|j| format!("e{depth}{}", "'".repeat(j))).collect()
    }
}

/// Central extension of `m` by the independent cocycles `ws`:
/// `[x,y]_new = [x,y] + Σ ω_t(x,y) f_t`. Errors unless the result is a
/// valid fundamental GNLA.
pub fn extend(m: &Gnla, ws: &[Cochain]) -> Result<Gnla> {
    let t = m.depth() + 1;
    if ws.is_empty() {
        return Err(Error::Input("extension needs at least one cocycle".into()));
    }
    let pairs = support_pairs(m, t);
    if ws.iter().any(|w| w.degree != t) {
        return Err(Error::Input(format!("cocycles must have degree {t}")));
    }
    let coords: Vec<Vec<Rat>> = ws.iter().map(|w| w.coords(&pairs)).collect();
    if RatMatrix::from_rows(coords).rank() < ws.len() {
        return Err(Error::Input("cocycles are dependent".into()));
    }
    let new = extension_names(t, ws.len());
    let mut b = GnlaBuilder::new();
    for i in 0..m.dim() {
        b = b.elem(m.name(i), m.grade(i));
    }
    for name in &new {
        b = b.elem(name, t);
    }
    let n = m.dim();
    for x in 0..n {
        for y in x + 1..n {
            let mut terms: Vec<(String, Rat)> =
                m.bracket_basis(x, y).iter().map(|(c, k)| (m.name(*c).to_string(), k.clone())).collect();
            for (w, name) in ws.iter().zip(&new) {
                let v = w.eval_basis(x, y);
                if !v.is_zero() {
                    terms.push((name.clone(), v));
                }
            }
            if !terms.is_empty() {
                b = b.rel_rat(m.name(x), m.name(y), terms);
            }
        }
    }
    let e = b.build()?;
    e.ensure_valid()?;
    e.ensure_fundamental()?;
    Ok(e)
}

/// `(L_A ω)(x,y) = -ω(Ax,y) - ω(x,Ay)`.
pub fn g0_action(m: &Gnla, a: &Derivation0, w: &Cochain) -> Cochain {
    let full = a.full(m);
    let mut out = Cochain::zero(w.degree);
    for (x, y) in support_pairs(m, w.degree) {
        let v = -w.eval(&full.column(x), &m.unit(y)) - w.eval(&m.unit(x), &full.column(y));
        out.set(x, y, v);
    }
    out
}

/// Matrix of `L_A` on the span of `basis` (column `j` = image of `basis[j]`).
/// Errors if the span is not preserved.
pub fn action_matrix(m: &Gnla, a: &Derivation0, basis: &[Cochain]) -> Result<RatMatrix> {
    let Some(first) = basis.first() else { return Ok(RatMatrix::zeros(0, 0)) };
    let pairs = support_pairs(m, first.degree);
    let bv: Vec<Vec<Rat>> = basis.iter().map(|w| w.coords(&pairs)).collect();
    let mut cols = Vec::new();
    for w in basis {
        let img = g0_action(m, a, w).coords(&pairs);
        cols.push(member(&img, &bv).ok_or_else(|| {
            Error::InternalConsistency("g0-action does not preserve the cocycle space".into())
        })?);
    }
    Ok(RatMatrix::from_columns(basis.len(), &cols))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionTag {
    Hyperbolic,
    Elliptic,
    Parabolic,
}

impl ExtensionTag {
    fn from_sign(d: &Rat) -> ExtensionTag {
        if d.is_positive() {
            ExtensionTag::Elliptic
        } else if d.is_negative() {
            ExtensionTag::Hyperbolic
        } else {
            ExtensionTag::Parabolic
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionType {
    pub tag: ExtensionTag,
    pub det: Rat,
    pub matrix: RatMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionTypeJson {
    #[serde(rename = "type")]
    pub tag: ExtensionTag,
    pub det: String,
}

impl ExtensionType {
    pub fn to_json(&self) -> ExtensionTypeJson {
        ExtensionTypeJson { tag: self.tag, det: fmt_rat(&self.det) }
    }
}

fn hc_index(m: &Gnla, name: &str) -> Result<usize> {
    m.index(name).ok_or_else(|| Error::Input(format!("expected the Hilbert–Cartan basis (missing {name})")))
}

/// `M[i][j] = ω(e1^(i), e3^(j))` for a degree-4 cochain over the
/// Hilbert–Cartan symbol.
pub fn hc_matrix(m: &Gnla, w: &Cochain) -> Result<RatMatrix> {
    let e1 = [hc_index(m, "e1'")?, hc_index(m, "e1''")?];
    let e3 = [hc_index(m, "e3'")?, hc_index(m, "e3''")?];
    Ok(RatMatrix::from_rows(
        e1.iter().map(|&i| e3.iter().map(|&j| w.eval_basis(i, j)).collect()).collect(),
    ))
}

/// Orbit type of a nonzero degree-4 cocycle over the Hilbert–Cartan symbol,
/// by the sign of `det M_ω`.
pub fn classify_hc_extension(m: &Gnla, w: &Cochain) -> Result<ExtensionType> {
    if w.is_zero() {
        return Err(Error::Input("the zero cocycle has no extension type".into()));
    }
    let mat = hc_matrix(m, w)?;
    if mat != mat.transpose() {
        return Err(Error::InternalConsistency(format!("cocycle matrix is not symmetric: {mat:?}")));
    }
    let det = mat.det();
    Ok(ExtensionType { tag: ExtensionTag::from_sign(&det), det, matrix: mat })
}

/// Type of a 2-plane of degree-4 cocycles over the Hilbert–Cartan symbol:
/// the sign of the Gram determinant of `det` (a form of signature (1,2)) on
/// the plane; positive means `det` is definite there.
pub fn classify_hc_plane(m: &Gnla, w1: &Cochain, w2: &Cochain) -> Result<ExtensionType> {
    let (m1, m2) = (hc_matrix(m, w1)?, hc_matrix(m, w2)?);
    for x in [&m1, &m2] {
        if x != &x.transpose() {
            return Err(Error::InternalConsistency("cocycle matrix is not symmetric".into()));
        }
    }
    let q1 = m1.det();
    let q2 = m2.det();
    let b = (m1.add(&m2).det() - &q1 - &q2) / int(2);
    let gram = RatMatrix::from_rows(vec![vec![q1, b.clone()], vec![b, q2]]);
    let det = gram.det();
    Ok(ExtensionType { tag: ExtensionTag::from_sign(&det), det, matrix: gram })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthClasses {
    pub depth: usize,
    pub classes: Vec<String>,
    pub cocycle_dim: Vec<usize>,
    pub sampled: usize,
    pub non_fundamental: usize,
}

/// Rewrites a growth-(2,1,…,1) symbol of depth `n ≥ 3` in the basis
/// `e1'' = x` (level-2 Cauchy direction), `e2 = [e1',e1'']`,
/// `e_{k+1} = [e1',e_k]`, and identifies it with Gou(n) or nGou(n).
pub fn normal_form_211(g: &Gnla) -> Result<(String, Gnla)> {
    let n = g.depth();
    let escape = |why: &str| Error::InternalConsistency(format!("symbol escapes both normal forms ({why}):\n{g}"));
    if g.dims().iter().enumerate().any(|(k, &d)| d != if k == 0 { 2 } else { 1 }) || n < 3 {
        return Err(escape("growth is not (2,1,...,1) with depth >= 3"));
    }
    let r1 = g.grade_range(1);
    let cauchy = g.cauchy_directions(2)?;
    if cauchy.len() != 1 {
        return Err(escape("level-2 Cauchy direction is not a line"));
    }
    let embed = |v: &[Rat]| {
        let mut out = vec![Rat::zero(); g.dim()];
        for (i, x) in r1.clone().zip(v) {
            out[i] = x.clone();
        }
        out
    };
    let x = embed(&cauchy[0]);
    let c0 = r1
        .clone()
        .map(|i| g.unit(i))
        .find(|u| RatMatrix::from_rows(vec![x.clone(), u.clone()]).rank() == 2)
        .expect("complement");
    let chain = |c: &[Rat]| {
        let mut es = vec![g.bracket(c, &x)];
        for _ in 3..n {
            let next = g.bracket(c, es.last().unwrap());
            es.push(next);
        }
        es
    };
    let top = g.grade_range(n).start;
    let es = chain(&c0);
    let a = g.bracket(&c0, es.last().unwrap())[top].clone();
    let b = g.bracket(&x, es.last().unwrap())[top].clone();
    let (c, es, last, name, target) = if b.is_zero() {
        let last = g.bracket(&c0, es.last().unwrap());
        (c0, es, last, format!("Gou({n})"), gou(n)?)
    } else {
        if n < 5 || n % 2 == 0 {
            return Err(escape("b != 0 outside odd depth >= 5"));
        }
        let lambda = &a / &b;
        let c: Vec<Rat> = c0.iter().zip(&x).map(|(p, q)| p - &lambda * q).collect();
        let es = chain(&c);
        if !g.bracket(&c, es.last().unwrap())[top].is_zero() {
            return Err(escape("shift does not clear the top bracket of e1'"));
        }
        let last = g.bracket(&x, es.last().unwrap());
        (c, es, last, format!("nGou({n})"), ngou(n)?)
    };
    let mut nb = vec![("e1'".to_string(), c), ("e1''".to_string(), x.clone())];
    for (k, v) in es.into_iter().enumerate() {
        nb.push((format!("e{}", k + 2), v));
    }
    nb.push((format!("e{n}"), last));
    if nb.iter().any(|(_, v)| v.iter().all(Zero::is_zero)) {
        return Err(escape("a chain element vanishes"));
    }
    let h = g.change_basis(&nb).map_err(|_| escape("chain is not a basis"))?;
    if h.same_structure(&target) {
        Ok((name, h))
    } else {
        Err(escape("normalized structure constants differ"))
    }
}

/// Sample of lines in a cocycle space: each basis vector, `v1 + t v2` for a
/// few rational `t`, and the line on which `ω(e1'', e_ν)` vanishes.
fn sample_lines(m: &Gnla, basis: &[Cochain]) -> Vec<Cochain> {
    let mut out: Vec<Cochain> = basis.to_vec();
    if basis.len() >= 2 {
        for t in [int(-2), int(-1), int(1), int(2), rat(1, 3)] {
            out.push(basis[0].add(&basis[1].scale(&t)));
        }
    }
    let top = format!("e{}", m.depth());
    if let (Some(x), Some(e)) = (m.index("e1''"), m.index(&top)) {
        let vals: Vec<Rat> = basis.iter().map(|w| w.eval_basis(x, e)).collect();
        if vals.iter().any(|v| !v.is_zero()) {
            for c in RatMatrix::from_rows(vec![vals]).nullspace() {
                let w = basis.iter().zip(&c).fold(Cochain::zero(m.depth() + 1), |acc, (w, k)| acc.add(&w.scale(k)));
                if !w.is_zero() {
                    out.push(w);
                }
            }
        }
    }
    out
}

/// Breadth-first enumeration of fundamental symbols with growth (2,1,…,1)
/// from heis(3) up to depth `n_max`, classified by normal form.
pub fn enumerate_211(n_max: usize) -> Result<Vec<DepthClasses>> {
    if !(3..=9).contains(&n_max) {
        return Err(Error::Input(format!("enumeration depth must be in 3..=9, got {n_max}")));
    }
    let mut frontier: Vec<Gnla> = vec![heis3()];
    let mut out = Vec::new();
    for depth in 3..=n_max {
        let mut found: BTreeMap<String, Gnla> = BTreeMap::new();
        let (mut sampled, mut non_fundamental) = (0, 0);
        let mut cocycle_dim = Vec::new();
        for parent in &frontier {
            let basis = cocycles(parent);
            cocycle_dim.push(basis.len());
            for w in sample_lines(parent, &basis) {
                sampled += 1;
                match extend(parent, &[w]) {
                    Ok(e) => {
                        let (name, nf) = normal_form_211(&e)?;
                        found.entry(name).or_insert(nf);
                    }
                    Err(Error::NotFundamental { .. }) => non_fundamental += 1,
                    Err(e) => return Err(e),
                }
            }
        }
        out.push(DepthClasses {
            depth,
            classes: found.keys().cloned().collect(),
            cocycle_dim,
            sampled,
            non_fundamental,
        });
        frontier = found.into_values().collect();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gnla::hc;

    #[test]
    fn hc_cocycles_are_symmetric_matrices() {
        let m = hc();
        let cs = cocycles(&m);
        assert_eq!(cs.len(), 3);
        for w in &cs {
            let mat = hc_matrix(&m, w).unwrap();
            assert_eq!(mat, mat.transpose());
        }
    }

    #[test]
    fn zero_cocycle_has_no_type() {
        assert!(classify_hc_extension(&hc(), &Cochain::zero(4)).is_err());
    }
}
