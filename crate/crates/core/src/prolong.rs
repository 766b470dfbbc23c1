//! Degree-0 derivations, the CR-restricted `g0`, Tanaka prolongation and the
//! symmetry bound `dim m + r`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{int, member, Rat, RatMatrix, Span};
use crate::gnla::Gnla;

/// Default degree bound for `prolong`.
pub const DEFAULT_MAX_DEGREE: usize = 6;

/// Grading-preserving derivation, stored as one block per grade
/// (`blocks[k-1]` acts on g_{-k}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation0 {
    pub blocks: Vec<RatMatrix>,
}

impl Derivation0 {
    pub fn from_full(m: &Gnla, d: &RatMatrix) -> Derivation0 {
        let blocks = (1..=m.depth())
            .map(|k| {
                let r = m.grade_range(k);
                let rows = r.clone().map(|i| r.clone().map(|j| d.get(i, j).clone()).collect()).collect();
                RatMatrix::from_rows(rows)
            })
            .collect();
        Derivation0 { blocks }
    }

    pub fn full(&self, m: &Gnla) -> RatMatrix {
        let n = m.dim();
        let mut d = RatMatrix::zeros(n, n);
        for (k, b) in self.blocks.iter().enumerate() {
            let r = m.grade_range(k + 1);
            for (bi, i) in r.clone().enumerate() {
                for (bj, j) in r.clone().enumerate() {
                    d.set(i, j, b.get(bi, bj).clone());
                }
            }
        }
        d
    }

    /// The g_{-1} block.
    pub fn g1(&self) -> &RatMatrix {
        &self.blocks[0]
    }

    /// Concatenated block entries, used as coordinates.
    fn flat(&self) -> Vec<Rat> {
        self.blocks.iter().flat_map(|b| (0..b.rows()).flat_map(move |i| b.row(i).to_vec())).collect()
    }

    /// Grading element `Z`, acting as `-k` on g_{-k}.
    pub fn grading(m: &Gnla) -> Derivation0 {
        let blocks =
            m.dims().iter().enumerate().map(|(k, &d)| RatMatrix::identity(d).scale(&int(-(k as i64) - 1))).collect();
        Derivation0 { blocks }
    }
}

/// Basis of der0(m); the grading element `Z` comes first.
pub fn der0(m: &Gnla) -> Vec<Derivation0> {
    let dims = m.dims();
    let mut offs = vec![0usize];
    for d in &dims {
        offs.push(offs.last().unwrap() + d * d);
    }
    let nvars = *offs.last().unwrap();
    // Variable for block entry (i, j) of grade k, with i, j global indices.
    let var = |i: usize, j: usize| {
        let k = m.grade(i);
        let start = m.grade_range(k).start;
        offs[k - 1] + (i - start) * dims[k - 1] + (j - start)
    };
    let n = m.dim();
    let mut rows = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let target = m.grade(a) + m.grade(b);
            if target > m.depth() {
                continue;
            }
            for c in m.grade_range(target) {
                let mut row = vec![Rat::zero(); nvars];
                // D[e_a, e_b] component c
                for (t, k) in m.bracket_basis(a, b) {
                    row[var(c, *t)] += k;
                }
                // - [D e_a, e_b] - [e_a, D e_b], component c
                for s in m.grade_range(m.grade(a)) {
                    if let Some((_, k)) = m.bracket_basis(s, b).iter().find(|(x, _)| *x == c) {
                        row[var(s, a)] -= k;
                    }
                }
                for s in m.grade_range(m.grade(b)) {
                    if let Some((_, k)) = m.bracket_basis(a, s).iter().find(|(x, _)| *x == c) {
                        row[var(s, b)] -= k;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sols = if rows.is_empty() {
        RatMatrix::identity(nvars).row_vecs()
    } else {
        RatMatrix::from_rows(rows).nullspace()
    };
    let unflatten = |v: &[Rat]| Derivation0 {
        blocks: dims
            .iter()
            .enumerate()
            .map(|(k, &d)| {
                RatMatrix::from_rows((0..d).map(|i| v[offs[k] + i * d..offs[k] + (i + 1) * d].to_vec()).collect())
            })
            .collect(),
    };
    let z = Derivation0::grading(m);
    let mut span = Span::new();
    span.insert(&z.flat());
    let mut out = vec![z];
    for s in sols {
        if span.insert(&s) {
            out.push(unflatten(&s));
        }
    }
    out
}

/// Coordinates of `d` in the basis `basis`, if it lies in their span.
pub fn coords_in(basis: &[Derivation0], d: &Derivation0) -> Option<Vec<Rat>> {
    let vecs: Vec<Vec<Rat>> = basis.iter().map(Derivation0::flat).collect();
    member(&d.flat(), &vecs)
}

/// Extends a g_{-1} block to the degree-0 derivation it determines.
pub fn extend_derivation(m: &Gnla, a1: &RatMatrix) -> Result<Derivation0> {
    Ok(Derivation0::from_full(m, &m.extend_derivation(a1)?))
}

/// Extends an invertible g_{-1} block to the graded automorphism it
/// determines, or errors when no such automorphism exists.
pub fn graded_automorphism(m: &Gnla, g1: &RatMatrix) -> Result<RatMatrix> {
    let n = m.dim();
    let r1 = m.grade_range(1);
    if g1.rows() != r1.len() || g1.cols() != r1.len() || g1.inverse().is_none() {
        return Err(Error::Input("g-1 block must be square and invertible".into()));
    }
    let mut g = RatMatrix::zeros(n, n);
    for i in r1.clone() {
        for j in r1.clone() {
            g.set(i, j, g1.get(i - r1.start, j - r1.start).clone());
        }
    }
    for k in 2..=m.depth() {
        let r = m.grade_range(k);
        let mut span = Span::new();
        let (mut ws, mut gws) = (Vec::new(), Vec::new());
        for a in r1.clone() {
            for j in m.grade_range(k - 1) {
                let w = m.bracket(&m.unit(a), &m.unit(j));
                if ws.len() < r.len() && span.insert(&w) {
                    ws.push(w[r.clone()].to_vec());
                    gws.push(m.bracket(&g.column(a), &g.column(j))[r.clone()].to_vec());
                }
            }
        }
        if ws.len() < r.len() {
            return Err(Error::NotFundamental { reason: format!("g-{k} is not generated"), witness: format!("grade -{k}") });
        }
        let block = RatMatrix::from_columns(r.len(), &gws).mul(&RatMatrix::from_columns(r.len(), &ws).inverse().unwrap());
        for (bi, i) in r.clone().enumerate() {
            for (bj, j) in r.clone().enumerate() {
                g.set(i, j, block.get(bi, bj).clone());
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            let lhs = g.apply(&m.bracket(&m.unit(a), &m.unit(b)));
            if lhs != m.bracket(&g.column(a), &g.column(b)) {
                return Err(Error::Validation(format!(
                    "g-1 block does not extend to an automorphism (fails on [{},{}])",
                    m.name(a),
                    m.name(b)
                )));
            }
        }
    }
    Ok(g)
}

/// `{A ∈ der0(m) : A₁J = JA₁}` with `Z` first; `r` is its length.
pub fn cr_g0(m: &Gnla, j: &RatMatrix) -> Vec<Derivation0> {
    let basis = der0(m);
    let comm: Vec<Vec<Rat>> = basis
        .iter()
        .map(|a| {
            let c = a.g1().mul(j).sub(&j.mul(a.g1()));
            (0..c.rows()).flat_map(|i| c.row(i).to_vec()).collect()
        })
        .collect();
    // Columns of the commutator map, one per der0 basis element.
    let len = comm[0].len();
    let map = RatMatrix::from_columns(len, &comm);
    let kernel = map.nullspace();
    let combine = |c: &[Rat]| {
        let mut full = RatMatrix::zeros(m.dim(), m.dim());
        for (x, a) in c.iter().zip(&basis) {
            if !x.is_zero() {
                full = full.add(&a.full(m).scale(x));
            }
        }
        Derivation0::from_full(m, &full)
    };
    let z = Derivation0::grading(m);
    let mut span = Span::new();
    span.insert(&z.flat());
    let mut out = vec![z];
    for c in kernel {
        let d = combine(&c);
        if span.insert(&d.flat()) {
            out.push(d);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProlongationReport {
    pub dims_negative: Vec<usize>,
    pub dim_g0: usize,
    pub dims_positive: Vec<usize>,
    pub rigid: bool,
    pub total: Option<usize>,
    #[serde(skip)]
    pub terminated: bool,
}

/// One positive (or zero) level of the prolongation: `act[s][j]` is the
/// bracket of basis element `s` with `e_j`, in coordinates of the target
/// component (a level, or a graded piece of `m`).
#[derive(Clone, Debug)]
struct Level {
    act: Vec<Vec<Vec<Rat>>>,
}

impl Level {
    fn dim(&self) -> usize {
        self.act.len()
    }
}

/// Tanaka prolongation computed level by level.
pub struct Tower<'a> {
    m: &'a Gnla,
    levels: Vec<Level>,
    /// Functionals on der0 coordinates that cut out the chosen `g0`.
    filter: Vec<Vec<Rat>>,
    g0_dim: usize,
}

impl<'a> Tower<'a> {
    /// Level 0 is all of der0; the chosen `g0` enters as a filter on maps
    /// landing in level 0.
    pub fn new(m: &'a Gnla, g0: &[Derivation0]) -> Result<Tower<'a>> {
        let full = der0(m);
        let mut coords = Vec::new();
        for a in g0 {
            coords.push(
                coords_in(&full, a).ok_or_else(|| Error::Input("g0 is not contained in der0(m)".into()))?,
            );
        }
        let g0_dim = if coords.is_empty() { 0 } else { RatMatrix::from_rows(coords.clone()).rank() };
        let filter = if coords.is_empty() {
            RatMatrix::identity(full.len()).row_vecs()
        } else {
            RatMatrix::from_rows(coords).nullspace()
        };
        let act = full
            .iter()
            .map(|a| {
                let f = a.full(m);
                (0..m.dim()).map(|j| f.column(j)[m.grade_range(m.grade(j))].to_vec()).collect()
            })
            .collect();
        Ok(Tower { m, levels: vec![Level { act }], filter, g0_dim })
    }

    /// Dimension of the target component with degree `q` (negative = part of m).
    fn target_dim(&self, q: i64) -> usize {
        if q < 0 {
            let k = (-q) as usize;
            if k > self.m.depth() {
                0
            } else {
                self.m.grade_range(k).len()
            }
        } else {
            self.levels[q as usize].dim()
        }
    }

    /// `[u_r, e_b]` for the `r`-th basis vector `u_r` of component `q`.
    fn eval(&self, q: i64, r: usize, b: usize) -> Vec<Rat> {
        let m = self.m;
        let gb = m.grade(b) as i64;
        let out_dim = self.target_dim(q - gb);
        if out_dim == 0 {
            return Vec::new();
        }
        if q < 0 {
            let i = m.grade_range((-q) as usize).start + r;
            let v = m.bracket(&m.unit(i), &m.unit(b));
            v[m.grade_range((gb - q) as usize)].to_vec()
        } else {
            self.levels[q as usize].act[r][b].clone()
        }
    }

    /// Computes the next level; returns its dimension.
    pub fn next_level(&mut self) -> usize {
        let m = self.m;
        let n = m.dim();
        let p = self.levels.len() as i64;
        let mut offs = Vec::with_capacity(n + 1);
        offs.push(0);
        for j in 0..n {
            offs.push(offs[j] + self.target_dim(p - m.grade(j) as i64));
        }
        let nvars = offs[n];
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let (ga, gb) = (m.grade(a) as i64, m.grade(b) as i64);
                let out = self.target_dim(p - ga - gb);
                if out == 0 {
                    continue;
                }
                let mut block = vec![vec![Rat::zero(); nvars]; out];
                for (t, k) in m.bracket_basis(a, b) {
                    for (r, row) in block.iter_mut().enumerate() {
                        row[offs[*t] + r] += k;
                    }
                }
                for r in 0..offs[a + 1] - offs[a] {
                    for (c, x) in self.eval(p - ga, r, b).iter().enumerate() {
                        block[c][offs[a] + r] -= x;
                    }
                }
                for r in 0..offs[b + 1] - offs[b] {
                    for (c, x) in self.eval(p - gb, r, a).iter().enumerate() {
                        block[c][offs[b] + r] += x;
                    }
                }
                rows.extend(block.into_iter().filter(|row| row.iter().any(|x| !x.is_zero())));
            }
        }
        for j in 0..n {
            if p - m.grade(j) as i64 == 0 {
                for f in &self.filter {
                    let mut row = vec![Rat::zero(); nvars];
                    row[offs[j]..offs[j + 1]].clone_from_slice(f);
                    rows.push(row);
                }
            }
        }
        let sols = if rows.is_empty() {
            RatMatrix::identity(nvars).row_vecs()
        } else {
            RatMatrix::from_rows(rows).nullspace()
        };
        let act: Vec<Vec<Vec<Rat>>> =
            sols.iter().map(|v| (0..n).map(|j| v[offs[j]..offs[j + 1]].to_vec()).collect()).collect();
        let d = act.len();
        self.levels.push(Level { act });
        d
    }
}

/// Tanaka prolongation of `(m, g0)` up to `max_degree`.
pub fn prolong(m: &Gnla, g0: &[Derivation0], max_degree: usize) -> Result<ProlongationReport> {
    if max_degree == 0 {
        return Err(Error::Input("max_degree must be at least 1".into()));
    }
    let mut tower = Tower::new(m, g0)?;
    let mut dims_positive = Vec::new();
    let mut terminated = false;
    for _ in 1..=max_degree {
        let d = tower.next_level();
        if d == 0 {
            terminated = true;
            break;
        }
        dims_positive.push(d);
    }
    let dim_g0 = tower.g0_dim;
    let mut dims_negative = m.dims();
    dims_negative.reverse();
    let total = terminated.then(|| m.dim() + dim_g0 + dims_positive.iter().sum::<usize>());
    Ok(ProlongationReport { dims_negative, dim_g0, rigid: dims_positive.is_empty(), dims_positive, total, terminated })
}

/// `dim m + r` for symbols of depth > 2, after checking that the first
/// prolongation vanishes; shallower symbols use the full prolongation.
pub fn symmetry_bound(m: &Gnla, j: &RatMatrix) -> Result<usize> {
    let g0 = cr_g0(m, j);
    if m.depth() > 2 {
        let report = prolong(m, &g0, 1)?;
        if !report.rigid {
            return Err(Error::InternalConsistency(format!(
                "first prolongation of a depth-{} symbol is nonzero (dim {})",
                m.depth(),
                report.dims_positive[0]
            )));
        }
        return Ok(m.dim() + g0.len());
    }
    let report = prolong(m, &g0, DEFAULT_MAX_DEGREE)?;
    report.total.ok_or_else(|| Error::Resource(format!("prolongation did not terminate by degree {DEFAULT_MAX_DEGREE}")))
}

/// Standard complex structure `J e1' = e1''` on a 2-dimensional g_{-1}.
pub fn standard_j() -> RatMatrix {
    let (o, z) = (Rat::one(), Rat::zero());
    RatMatrix::from_rows(vec![vec![z.clone(), -o.clone()], vec![o, z]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gnla::{gou, hc, heis3};

    #[test]
    fn grading_element_first() {
        let d = der0(&hc());
        assert_eq!(d[0], Derivation0::grading(&hc()));
        assert_eq!(d.len(), 4);
    }

    #[test]
    fn heisenberg_su12() {
        let h = heis3();
        let g0 = cr_g0(&h, &standard_j());
        assert_eq!(g0.len(), 2);
        let r = prolong(&h, &g0, 6).unwrap();
        assert_eq!(r.dims_negative, vec![1, 2]);
        assert_eq!(r.dims_positive, vec![2, 1]);
        assert_eq!(r.total, Some(8));
    }

    #[test]
    fn heisenberg_full_der0_is_infinite() {
        let h = heis3();
        let r = prolong(&h, &der0(&h), 4).unwrap();
        assert!(!r.terminated);
        assert_eq!(r.total, None);
    }

    #[test]
    fn goursat_automorphism() {
        let g = gou(4).unwrap();
        let a = RatMatrix::from_i64(&[&[1, 0], &[3, 2]]);
        assert!(graded_automorphism(&g, &a).is_ok());
        let bad = RatMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert!(graded_automorphism(&g, &bad).is_err());
    }
}
