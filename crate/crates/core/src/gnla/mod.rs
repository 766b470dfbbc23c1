//! Graded nilpotent Lie algebras `m = g_{-ν} ⊕ … ⊕ g_{-1}` with exact
//! structure constants.
//!
//! Grades are stored as positive integers: grade `k` means `g_{-k}`. The basis
//! is kept sorted by grade so every graded piece is a contiguous index range.

mod catalog;
mod deprolong;
mod free;
mod json;
mod quotient;

pub use catalog::{catalog, ell6, ell7, ell8, from_spec, gou, heis3, hc, mdblprime5, mprime5, ngou};
pub use deprolong::deprolong;
pub use free::{free_gnla, lyndon_words, necklace_dim, MAX_FREE_DEPTH};
pub use json::GnlaJson;
pub use quotient::quotient;

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{fmt_rat, int, Rat, RatMatrix, Span};

/// Sparse linear combination of basis indices.
pub type Terms = Vec<(usize, Rat)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gnla {
    names: Vec<String>,
    grades: Vec<usize>,
    index: HashMap<String, usize>,
    /// `table[a * n + b]` holds `[e_a, e_b]`.
    table: Vec<Terms>,
}

/// Incremental constructor; relations are stated once and extended by
/// antisymmetry unless the opposite order is given explicitly.
#[derive(Clone, Debug, Default)]
pub struct GnlaBuilder {
    basis: Vec<(String, usize)>,
    rels: Vec<(String, String, Vec<(String, Rat)>)>,
}

impl GnlaBuilder {
    pub fn new() -> Self {
        GnlaBuilder::default()
    }

    pub fn elem(mut self, name: &str, grade: usize) -> Self {
        self.basis.push((name.to_string(), grade));
        self
    }

    pub fn elems(mut self, names: &[&str], grade: usize) -> Self {
        for n in names {
            self.basis.push((n.to_string(), grade));
        }
        self
    }

    pub fn rel(mut self, a: &str, b: &str, terms: &[(&str, i64)]) -> Self {
        self.rels.push((
            a.to_string(),
            b.to_string(),
            terms.iter().map(|(c, k)| (c.to_string(), int(*k))).collect(),
        ));
        self
    }

    pub fn rel_rat(mut self, a: &str, b: &str, terms: Vec<(String, Rat)>) -> Self {
        self.rels.push((a.to_string(), b.to_string(), terms));
        self
    }

    pub fn build(self) -> Result<Gnla> {
        let mut basis = self.basis;
        basis.sort_by_key(|(_, g)| *g);
        let mut index = HashMap::new();
        for (i, (name, g)) in basis.iter().enumerate() {
            if *g == 0 {
                return Err(Error::Input(format!("element {name} has grade 0; grades must be negative")));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Input(format!("duplicate basis name {name}")));
            }
        }
        let n = basis.len();
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::Input(format!("unknown basis element {s}")));
        let mut table = vec![Terms::new(); n * n];
        let mut explicit = vec![false; n * n];
        for (a, b, terms) in &self.rels {
            let (ia, ib) = (lookup(a)?, lookup(b)?);
            let mut dense = vec![Rat::zero(); n];
            for (c, k) in terms {
                dense[lookup(c)?] += k;
            }
            let sparse = to_sparse(&dense);
            if !explicit[ib * n + ia] && ia != ib {
                table[ib * n + ia] = sparse.iter().map(|(i, x)| (*i, -x.clone())).collect();
            }
            table[ia * n + ib] = sparse;
            explicit[ia * n + ib] = true;
        }
        Ok(Gnla {
            names: basis.iter().map(|(s, _)| s.clone()).collect(),
            grades: basis.iter().map(|(_, g)| *g).collect(),
            index,
            table,
        })
    }
}

pub fn to_sparse(v: &[Rat]) -> Terms {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolationKind {
    Antisymmetry,
    Grading,
    Jacobi,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub elements: Vec<String>,
    pub residual: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ViolationKind::Antisymmetry => "antisymmetry",
            ViolationKind::Grading => "grading",
            ViolationKind::Jacobi => "Jacobi",
        };
        write!(f, "{kind} failure at ({}): residual {}", self.elements.join(","), self.residual)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violation: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalReport {
    pub fundamental: bool,
    pub reason: Option<String>,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    pub cumulative: Vec<usize>,
    pub reduced: Vec<usize>,
}

/// Names `e1', e1''`, `e2`, `e3', e3''`, ... for the given graded dimensions.
pub fn standard_names(dims: &[usize]) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    for (k, &d) in dims.iter().enumerate() {
        for j in 0..d {
            let name = if d == 1 { format!("e{}", k + 1) } else { format!("e{}{}", k + 1, "'".repeat(j + 1)) };
            out.push((name, k + 1));
        }
    }
    out
}

impl Gnla {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// Depth ν, the largest grade present.
    pub fn depth(&self) -> usize {
        self.grades.last().copied().unwrap_or(0)
    }

    /// `(d_1, …, d_ν)`.
    pub fn dims(&self) -> Vec<usize> {
        (1..=self.depth()).map(|k| self.grade_range(k).len()).collect()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn grade(&self, i: usize) -> usize {
        self.grades[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn grade_range(&self, k: usize) -> Range<usize> {
        let start = self.grades.partition_point(|&g| g < k);
        let end = self.grades.partition_point(|&g| g <= k);
        start..end
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &Terms {
        &self.table[a * self.dim() + b]
    }

    /// Basis vector `e_i` in full coordinates.
    pub fn unit(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim()];
        v[i] = Rat::one();
        v
    }

    pub fn bracket(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        let mut out = vec![Rat::zero(); n];
        for (a, x) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, y) in v.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let t = &self.table[a * n + b];
                if t.is_empty() {
                    continue;
                }
                let xy = x * y;
                for (c, k) in t {
                    out[*c] += &xy * k;
                }
            }
        }
        out
    }

    /// Matrix of `ad(u)` (column `j` is `[u, e_j]`).
    pub fn ad(&self, u: &[Rat]) -> RatMatrix {
        let cols: Vec<Vec<Rat>> = (0..self.dim()).map(|j| self.bracket(u, &self.unit(j))).collect();
        RatMatrix::from_columns(self.dim(), &cols)
    }

    /// Human-readable form of a vector, e.g. `e1' - 2*e2`.
    pub fn fmt_vec(&self, v: &[Rat]) -> String {
        fmt_combination(v.iter().enumerate().map(|(i, x)| (self.names[i].as_str(), x)))
    }

    pub fn validate(&self) -> ValidationReport {
        match self.first_violation() {
            None => ValidationReport { ok: true, violation: None },
            Some(v) => ValidationReport { ok: false, violation: Some(v) },
        }
    }

    fn first_violation(&self) -> Option<Violation> {
        let n = self.dim();
        for a in 0..n {
            for b in a..n {
                let ab = self.bracket(&self.unit(a), &self.unit(b));
                let ba = self.bracket(&self.unit(b), &self.unit(a));
                let sum: Vec<Rat> = ab.iter().zip(&ba).map(|(x, y)| x + y).collect();
                if sum.iter().any(|x| !x.is_zero()) {
                    return Some(Violation {
                        kind: ViolationKind::Antisymmetry,
                        elements: vec![self.names[a].clone(), self.names[b].clone()],
                        residual: self.fmt_vec(&sum),
                    });
                }
            }
        }
        for a in 0..n {
            for b in a..n {
                let target = self.grades[a] + self.grades[b];
                if let Some((c, _)) = self.bracket_basis(a, b).iter().find(|(c, _)| self.grades[*c] != target) {
                    return Some(Violation {
                        kind: ViolationKind::Grading,
                        elements: vec![self.names[a].clone(), self.names[b].clone()],
                        residual: format!(
                            "{} in grade -{} instead of -{target}",
                            self.names[*c], self.grades[*c]
                        ),
                    });
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let (ea, eb, ec) = (self.unit(a), self.unit(b), self.unit(c));
                    let j1 = self.bracket(&ea, &self.bracket(&eb, &ec));
                    let j2 = self.bracket(&eb, &self.bracket(&ec, &ea));
                    let j3 = self.bracket(&ec, &self.bracket(&ea, &eb));
                    let s: Vec<Rat> = (0..n).map(|i| &j1[i] + &j2[i] + &j3[i]).collect();
                    if s.iter().any(|x| !x.is_zero()) {
                        return Some(Violation {
                            kind: ViolationKind::Jacobi,
                            elements: vec![self.names[a].clone(), self.names[b].clone(), self.names[c].clone()],
                            residual: self.fmt_vec(&s),
                        });
                    }
                }
            }
        }
        None
    }

    /// Errors unless the algebra passes `validate`.
    pub fn ensure_valid(&self) -> Result<()> {
        match self.first_violation() {
            None => Ok(()),
            Some(v) => Err(Error::Validation(v.to_string())),
        }
    }

    /// Spans `[g_{-1}, [g_{-1}, … g_{-1}]]` grade by grade, as vectors in full
    /// coordinates.
    pub fn generated_spans(&self) -> Vec<Vec<Vec<Rat>>> {
        let mut spans: Vec<Vec<Vec<Rat>>> = vec![self.grade_range(1).map(|i| self.unit(i)).collect()];
        for _k in 2..=self.depth() {
            let prev = spans.last().unwrap();
            let mut span = Span::new();
            let mut vecs = Vec::new();
            for g in self.grade_range(1) {
                for p in prev {
                    let v = self.bracket(&self.unit(g), p);
                    if span.insert(&v) {
                        vecs.push(v);
                    }
                }
            }
            spans.push(vecs);
        }
        spans
    }

    /// Basis of the center, in full coordinates.
    pub fn center(&self) -> Vec<Vec<Rat>> {
        let n = self.dim();
        // Rows: coordinate c of [x, e_j] as a linear form in x.
        let mut rows = Vec::new();
        for j in 0..n {
            for c in 0..n {
                let row: Vec<Rat> = (0..n)
                    .map(|a| {
                        self.bracket_basis(a, j).iter().find(|(i, _)| *i == c).map_or(Rat::zero(), |(_, k)| k.clone())
                    })
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return (0..n).map(|i| self.unit(i)).collect();
        }
        RatMatrix::from_rows(rows).nullspace()
    }

    pub fn is_fundamental(&self) -> FundamentalReport {
        let spans = self.generated_spans();
        for k in 2..=self.depth() {
            let mut span = Span::new();
            for v in &spans[k - 1] {
                span.insert(v);
            }
            if let Some(i) = self.grade_range(k).find(|&i| !span.contains(&self.unit(i))) {
                return FundamentalReport {
                    fundamental: false,
                    reason: Some(format!("g-{k} is not generated by g-1")),
                    witness: Some(self.names[i].clone()),
                };
            }
            if self.grade_range(k).is_empty() {
                return FundamentalReport {
                    fundamental: false,
                    reason: Some(format!("g-{k} is zero below the top grade")),
                    witness: None,
                };
            }
        }
        let top = self.grade_range(self.depth());
        for z in self.center() {
            if z.iter().enumerate().any(|(i, x)| !x.is_zero() && !top.contains(&i)) {
                return FundamentalReport {
                    fundamental: false,
                    reason: Some("center is larger than the lowest grade".into()),
                    witness: Some(self.fmt_vec(&z)),
                };
            }
        }
        FundamentalReport { fundamental: true, reason: None, witness: None }
    }

    pub fn ensure_fundamental(&self) -> Result<()> {
        let r = self.is_fundamental();
        if r.fundamental {
            Ok(())
        } else {
            Err(Error::NotFundamental {
                reason: r.reason.unwrap_or_default(),
                witness: r.witness.unwrap_or_else(|| "-".into()),
            })
        }
    }

    pub fn growth(&self) -> GrowthReport {
        let reduced = self.dims();
        let cumulative = reduced
            .iter()
            .scan(0, |acc, d| {
                *acc += d;
                Some(*acc)
            })
            .collect();
        GrowthReport { cumulative, reduced }
    }

    /// Rewrites the algebra in a new graded basis. `new_basis` lists, for each
    /// new element, its name and its expansion in the old basis; each new
    /// element must be homogeneous and the family must be a basis.
    pub fn change_basis(&self, new_basis: &[(String, Vec<Rat>)]) -> Result<Gnla> {
        let n = self.dim();
        if new_basis.len() != n {
            return Err(Error::Input(format!("basis change needs {n} vectors, got {}", new_basis.len())));
        }
        let mut grades = Vec::with_capacity(n);
        for (name, v) in new_basis {
            let gs: Vec<usize> =
                v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| self.grades[i]).collect();
            match gs.first() {
                Some(&g) if gs.iter().all(|&h| h == g) => grades.push(g),
                _ => return Err(Error::Input(format!("new basis element {name} is zero or not homogeneous"))),
            }
        }
        let cols: Vec<Vec<Rat>> = new_basis.iter().map(|(_, v)| v.clone()).collect();
        let p = RatMatrix::from_columns(n, &cols);
        let pinv = p.inverse().ok_or_else(|| Error::Input("new basis vectors are dependent".into()))?;
        let mut b = GnlaBuilder::new();
        for ((name, _), g) in new_basis.iter().zip(&grades) {
            b = b.elem(name, *g);
        }
        for i in 0..n {
            for j in i + 1..n {
                let br = pinv.apply(&self.bracket(&cols[i], &cols[j]));
                let terms: Vec<(String, Rat)> = br
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (new_basis[k].0.clone(), x.clone()))
                    .collect();
                if !terms.is_empty() {
                    b = b.rel_rat(&new_basis[i].0, &new_basis[j].0, terms);
                }
            }
        }
        b.build()
    }

    /// Drops every grade below `-depth`.
    pub fn truncate(&self, depth: usize) -> Gnla {
        let keep = self.grades.partition_point(|&g| g <= depth);
        let mut b = GnlaBuilder::new();
        for i in 0..keep {
            b = b.elem(&self.names[i], self.grades[i]);
        }
        for i in 0..keep {
            for j in i + 1..keep {
                let t = self.bracket_basis(i, j);
                if !t.is_empty() && t.iter().all(|(c, _)| *c < keep) {
                    b = b.rel_rat(
                        &self.names[i],
                        &self.names[j],
                        t.iter().map(|(c, k)| (self.names[*c].clone(), k.clone())).collect(),
                    );
                }
            }
        }
        b.build().expect("truncation of a well-formed algebra")
    }

    /// Same basis names, grades and structure constants.
    pub fn same_structure(&self, other: &Gnla) -> bool {
        self.names == other.names && self.grades == other.grades && self.table == other.table
    }

    /// Renames every basis element with `standard_names`.
    pub fn with_standard_names(&self) -> Gnla {
        let names = standard_names(&self.dims());
        let nb: Vec<(String, Vec<Rat>)> =
            names.into_iter().enumerate().map(|(i, (name, _))| (name, self.unit(i))).collect();
        self.change_basis(&nb).expect("renaming keeps a basis")
    }

    /// Whether the full matrix `d` (column `j` = image of `e_j`) is a derivation.
    pub fn is_derivation(&self, d: &RatMatrix) -> bool {
        let n = self.dim();
        for a in 0..n {
            for b in a + 1..n {
                let lhs = d.apply(&self.bracket(&self.unit(a), &self.unit(b)));
                let r1 = self.bracket(&d.column(a), &self.unit(b));
                let r2 = self.bracket(&self.unit(a), &d.column(b));
                if (0..n).any(|i| lhs[i] != &r1[i] + &r2[i]) {
                    return false;
                }
            }
        }
        true
    }

    /// Extends an endomorphism of g_{-1} (a `d1 × d1` matrix) to the unique
    /// grading-preserving derivation of `m`, or errors when it does not extend.
    pub fn extend_derivation(&self, a1: &RatMatrix) -> Result<RatMatrix> {
        let n = self.dim();
        let g1 = self.grade_range(1);
        if a1.rows() != g1.len() || a1.cols() != g1.len() {
            return Err(Error::Input(format!("g-1 block must be {0}x{0}", g1.len())));
        }
        let mut d = RatMatrix::zeros(n, n);
        for i in g1.clone() {
            for j in g1.clone() {
                d.set(i, j, a1.get(i - g1.start, j - g1.start).clone());
            }
        }
        for k in 2..=self.depth() {
            let r = self.grade_range(k);
            let mut span = Span::new();
            let (mut ws, mut dws) = (Vec::new(), Vec::new());
            'outer: for g in g1.clone() {
                for j in self.grade_range(k - 1) {
                    let w = self.bracket(&self.unit(g), &self.unit(j));
                    if span.insert(&w) {
                        let dw: Vec<Rat> = self
                            .bracket(&d.column(g), &self.unit(j))
                            .iter()
                            .zip(self.bracket(&self.unit(g), &d.column(j)))
                            .map(|(x, y)| x + y)
                            .collect();
                        ws.push(w[r.clone()].to_vec());
                        dws.push(dw[r.clone()].to_vec());
                        if ws.len() == r.len() {
                            break 'outer;
                        }
                    }
                }
            }
            if ws.len() < r.len() {
                return Err(Error::NotFundamental {
                    reason: format!("g-{k} is not generated by g-1"),
                    witness: format!("grade -{k}"),
                });
            }
            let w = RatMatrix::from_columns(r.len(), &ws);
            let dw = RatMatrix::from_columns(r.len(), &dws);
            let block = dw.mul(&w.inverse().expect("independent brackets"));
            for (bi, i) in r.clone().enumerate() {
                for (bj, j) in r.clone().enumerate() {
                    d.set(i, j, block.get(bi, bj).clone());
                }
            }
        }
        if !self.is_derivation(&d) {
            return Err(Error::Validation("g-1 block does not extend to a derivation".into()));
        }
        Ok(d)
    }

    /// `{x ∈ g_{-1} : [x, g_{-k}] = 0 for all k ≥ 1}` (level 1) or
    /// `{x ∈ g_{-1} : [x, g_{-2}] = 0}` (level 2), in `g_{-1}` coordinates.
    pub fn cauchy_directions(&self, level: u8) -> Result<Vec<Vec<Rat>>> {
        let targets: Vec<usize> = match level {
            1 => (0..self.dim()).collect(),
            2 => self.grade_range(2).collect(),
            _ => return Err(Error::Input(format!("Cauchy level must be 1 or 2, got {level}"))),
        };
        let g1 = self.grade_range(1);
        let n = self.dim();
        let mut rows = Vec::new();
        for &j in &targets {
            for c in 0..n {
                let row: Vec<Rat> = g1
                    .clone()
                    .map(|a| {
                        self.bracket_basis(a, j).iter().find(|(i, _)| *i == c).map_or(Rat::zero(), |(_, k)| k.clone())
                    })
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return Ok(g1.clone().map(|i| self.unit(i)[g1.clone()].to_vec()).collect());
        }
        Ok(RatMatrix::from_rows(rows).nullspace())
    }
}

pub fn fmt_combination<'a>(terms: impl Iterator<Item = (&'a str, &'a Rat)>) -> String {
    let mut out = String::new();
    for (name, x) in terms {
        if x.is_zero() {
            continue;
        }
        let neg = x < &Rat::zero();
        let mag = if neg { -x.clone() } else { x.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag.is_one() {
            out.push_str(name);
        } else {
            out.push_str(&format!("{}*{name}", fmt_rat(&mag)));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl fmt::Display for Gnla {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dims {:?}", self.dims())?;
        for a in 0..self.dim() {
            for b in a + 1..self.dim() {
                let t = self.bracket_basis(a, b);
                if !t.is_empty() {
                    let v = fmt_combination(t.iter().map(|(c, k)| (self.names[*c].as_str(), k)));
                    writeln!(f, "[{},{}] = {v}", self.names[a], self.names[b])?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heis_is_valid_and_fundamental() {
        let h = heis3();
        assert!(h.validate().ok);
        assert!(h.is_fundamental().fundamental);
        assert_eq!(h.growth().cumulative, vec![2, 3]);
    }

    #[test]
    fn abelian_extension_is_not_fundamental() {
        let m = GnlaBuilder::new().elems(&["e1'", "e1''"], 1).elem("e2", 2).build().unwrap();
        assert!(m.validate().ok);
        let r = m.is_fundamental();
        assert!(!r.fundamental);
        assert_eq!(r.witness.as_deref(), Some("e2"));
    }

    #[test]
    fn explicit_asymmetric_relation_is_reported() {
        let m = GnlaBuilder::new()
            .elems(&["e1'", "e1''"], 1)
            .elem("e2", 2)
            .rel("e1'", "e1''", &[("e2", 1)])
            .rel("e1''", "e1'", &[("e2", 1)])
            .build()
            .unwrap();
        let v = m.validate().violation.unwrap();
        assert_eq!(v.kind, ViolationKind::Antisymmetry);
    }

    #[test]
    fn standard_names_follow_convention() {
        let names: Vec<String> = standard_names(&[2, 1, 2]).into_iter().map(|(s, _)| s).collect();
        assert_eq!(names, ["e1'", "e1''", "e2", "e3'", "e3''"]);
    }

    #[test]
    fn truncation_drops_lower_grades() {
        let g = gou(5).unwrap().truncate(3);
        assert!(g.same_structure(&gou(3).unwrap()));
    }

    #[test]
    fn basis_change_roundtrip() {
        let m = hc();
        let nb: Vec<(String, Vec<Rat>)> = (0..m.dim())
            .map(|i| {
                let mut v = m.unit(i);
                if i == 1 {
                    v[0] = int(1);
                }
                (m.name(i).to_string(), v)
            })
            .collect();
        let m2 = m.change_basis(&nb).unwrap();
        assert!(m2.validate().ok);
        assert!(m2.is_fundamental().fundamental);
        assert!(!m2.same_structure(&m));
    }
}
