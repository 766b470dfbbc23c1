//! Tangency of holomorphic fields to a model, and closure of the field list
//! as a real Lie algebra.

use serde::Serialize;

use super::{CrModel, NamedField, Realization};
use crate::error::{Error, Result};
use crate::exactmath::{default_samples, fmt_rat, rat, GaussRat, MPoly, Rat};
use crate::gnla::fmt_combination;
use crate::vfield::{real_combination, VectorField};

#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub equation: String,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TangencyReport {
    pub field: String,
    pub probe: bool,
    pub tangent: bool,
    pub residuals: Vec<Residual>,
}

/// `2 Re S` acting on the ring: `S` on the coordinates, `S̄` on their conjugates.
fn real_part(m: &CrModel, s: &VectorField) -> VectorField {
    let n = m.ncoords();
    let perm = m.conj_perm();
    let mut comps: Vec<MPoly> = s.components().to_vec();
    comps.extend(s.components().iter().map(|c| c.conj_with(&perm)));
    VectorField::new(m.ring_names(), 2 * n, comps)
}

/// Defining function `(w - w̄)/(2i) - P` of an equation.
fn defining_function(m: &CrModel, k: usize) -> MPoly {
    let n = m.ncoords();
    let nv = m.nvars();
    let e = &m.equations[k];
    let w = MPoly::var(nv, e.coord).sub(&MPoly::var(nv, e.coord + n));
    let f = GaussRat::new(Rat::from_integer(0.into()), rat(-1, 2));
    w.scale(&f).sub(&e.rhs)
}

/// Checks `(S + S̄)(ρ_k) = 0` on the model for every equation, identically
/// in the parameters.
pub fn tangency(m: &CrModel, real: &Realization, f: &NamedField) -> TangencyReport {
    let re = real_part(m, &f.field);
    let mut residuals = Vec::new();
    for k in 0..m.equations.len() {
        let r = real.pull_back(&re.apply(&defining_function(m, k)));
        if !r.is_zero() {
            residuals.push(Residual {
                equation: m.coords[m.equations[k].coord].name.clone(),
                residual: r.display(&real.names),
            });
        }
    }
    TangencyReport { field: f.name.clone(), probe: f.probe, tangent: residuals.is_empty(), residuals }
}

/// Tangency of every field; a failing symmetry field (not a probe) is an error.
pub fn verify_all(m: &CrModel, real: &Realization) -> Result<Vec<TangencyReport>> {
    let reports: Vec<TangencyReport> = m.fields.iter().map(|f| tangency(m, real, f)).collect();
    if let Some(bad) = reports.iter().find(|r| !r.probe && !r.tangent) {
        let r = &bad.residuals[0];
        return Err(Error::Tangency { field: bad.field.clone(), residual: format!("{} (equation for {})", r.residual, r.equation) });
    }
    Ok(reports)
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureEntry {
    pub left: String,
    pub right: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub fields: Vec<String>,
    pub dim: usize,
    pub samples: usize,
    /// Parameter values at which the listed fields become dependent.
    pub degenerate: Vec<String>,
    pub jacobi: bool,
    /// Nonzero brackets at the first sample.
    pub structure: Vec<StructureEntry>,
    pub commuting: Vec<String>,
}

/// Parameter sample points: the default set plus `±3/2`, taken as a product.
pub fn sample_points(nparams: usize) -> Vec<Vec<Rat>> {
    let mut vals = default_samples();
    for v in [rat(3, 2), rat(-3, 2)] {
        if !vals.contains(&v) {
            vals.push(v);
        }
    }
    let mut pts: Vec<Vec<Rat>> = vec![Vec::new()];
    for _ in 0..nparams {
        pts = pts.iter().flat_map(|p| vals.iter().map(move |v| [p.clone(), vec![v.clone()]].concat())).collect();
    }
    pts
}

fn jacobi_holds(c: &[Vec<Vec<Rat>>]) -> bool {
    let n = c.len();
    let br = |u: &[Rat], j: usize| -> Vec<Rat> {
        // [u, e_j] = Σ_i u_i c[i][j]
        let mut out = vec![Rat::from_integer(0.into()); n];
        for (i, ui) in u.iter().enumerate() {
            if ui == &Rat::from_integer(0.into()) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&c[i][j]) {
                *o += ui * x;
            }
        }
        out
    };
    for a in 0..n {
        for b in a + 1..n {
            for d in b + 1..n {
                let neg = |v: Vec<Rat>| v.into_iter().map(|x| -x).collect::<Vec<_>>();
                let t1 = neg(br(&c[b][d], a));
                let t2 = neg(br(&c[d][a], b));
                let t3 = neg(br(&c[a][b], d));
                if (0..n).any(|k| t1[k].clone() + &t2[k] + &t3[k] != Rat::from_integer(0.into())) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn closure(m: &CrModel) -> Result<ClosureReport> {
    let syms = m.symmetries();
    let names: Vec<String> = syms.iter().map(|f| f.name.clone()).collect();
    let base = 2 * m.ncoords();
    let points = sample_points(m.params.len());
    let mut dim = 0;
    let mut ranks = Vec::new();
    let mut jacobi = true;
    let mut structure = Vec::new();
    for (pi, pt) in points.iter().enumerate() {
        let vals: Vec<(usize, Rat)> = pt.iter().enumerate().map(|(j, v)| (base + j, v.clone())).collect();
        let fs: Vec<VectorField> = syms.iter().map(|f| f.field.specialize(&vals)).collect();
        let mut indep: Vec<VectorField> = Vec::new();
        for f in &fs {
            if real_combination(f, &indep).is_none() {
                indep.push(f.clone());
            }
        }
        ranks.push(indep.len());
        dim = dim.max(indep.len());
        let k = fs.len();
        let zero = vec![Rat::from_integer(0.into()); k];
        let mut c = vec![vec![zero; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let b = fs[i].bracket(&fs[j]);
                let coeffs = real_combination(&b, &fs).ok_or_else(|| Error::Closure {
                    pair: format!("{}, {}", names[i], names[j]),
                    residual: b.display(),
                })?;
                if pi == 0 && coeffs.iter().any(|x| x != &Rat::from_integer(0.into())) {
                    structure.push(StructureEntry {
                        left: names[i].clone(),
                        right: names[j].clone(),
                        value: fmt_combination(names.iter().map(String::as_str).zip(&coeffs)),
                    });
                }
                c[j][i] = coeffs.iter().map(|x| -x.clone()).collect();
                c[i][j] = coeffs;
            }
        }
        if indep.len() == k && !jacobi_holds(&c) {
            jacobi = false;
        }
    }
    let degenerate = points
        .iter()
        .zip(&ranks)
        .filter(|(_, &r)| r < dim)
        .map(|(pt, _)| {
            m.params.iter().zip(pt).map(|(p, v)| format!("{p}={}", fmt_rat(v))).collect::<Vec<_>>().join(",")
        })
        .collect();
    let commuting = commuting_clique(m).into_iter().map(|i| names[i].clone()).collect();
    Ok(ClosureReport { fields: names, dim, samples: points.len(), degenerate, jacobi, structure, commuting })
}

/// Largest set of listed symmetry fields whose pairwise brackets vanish
/// identically (parameters kept symbolic). Indices into `m.symmetries()`.
pub fn commuting_clique(m: &CrModel) -> Vec<usize> {
    let syms = m.symmetries();
    let k = syms.len();
    assert!(k < 25, "too many fields for exhaustive clique search");
    let mut adj = vec![0u32; k];
    for i in 0..k {
        for j in i + 1..k {
            if syms[i].field.bracket(&syms[j].field).is_zero() {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    let mut best = 0u32;
    // Among maximum cliques, the one using the latest-listed fields wins.
    for mask in (1u32..(1 << k)).rev() {
        if mask.count_ones() <= best.count_ones() {
            continue;
        }
        if (0..k).filter(|i| mask >> i & 1 == 1).all(|i| mask & !(1 << i) & !adj[i] == 0) {
            best = mask;
        }
    }
    (0..k).filter(|i| best >> i & 1 == 1).collect()
}
