//! Rigid weighted-homogeneous CR models `Im(w_k) = P_k(z, z̄, ...)` and
//! their holomorphic symmetry fields.

pub mod fixtures;
pub mod parse;
mod realify;
mod symbol;
mod verify;

pub use realify::{realify, Realization};
pub use symbol::{model_j, model_symbol, ModelSymbol};
pub use verify::{
    closure, commuting_clique, sample_points, tangency, verify_all, ClosureReport, Residual, StructureEntry,
    TangencyReport,
};

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{GaussRat, MPoly, Rat};
use crate::vfield::{field_weight, VectorField};
use parse::{parse_statements, Scope, Stmt, Value};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coord {
    pub name: String,
    pub weight: i64,
}

#[derive(Clone, Debug)]
pub struct Equation {
    pub coord: usize,
    pub rhs: MPoly,
}

#[derive(Clone, Debug)]
pub struct NamedField {
    pub name: String,
    pub field: VectorField,
    /// Probes are candidate fields recorded for tangency reports only.
    pub probe: bool,
}

/// A parsed model. The polynomial ring has variables
/// `[coords, conj(coords), params]`.
#[derive(Clone, Debug)]
pub struct CrModel {
    pub coords: Vec<Coord>,
    pub params: Vec<String>,
    pub equations: Vec<Equation>,
    pub fields: Vec<NamedField>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquationJson {
    pub coord: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldEntryJson {
    pub name: String,
    pub probe: bool,
    pub weight: Option<i64>,
    pub field: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelJson {
    pub coords: Vec<Coord>,
    pub params: Vec<String>,
    pub equations: Vec<EquationJson>,
    pub fields: Vec<FieldEntryJson>,
}

impl CrModel {
    pub fn parse(src: &str) -> Result<CrModel> {
        let stmts = parse_statements(src)?;
        let mut coords: Vec<Coord> = Vec::new();
        let mut params: Vec<String> = Vec::new();
        for s in &stmts {
            let (name, pos) = match s {
                Stmt::Coord { name, pos, .. } | Stmt::Param { name, pos } => (name, *pos),
                _ => continue,
            };
            if coords.iter().any(|c| &c.name == name) || params.contains(name) || name == "i" {
                return Err(Error::Parse { pos, msg: format!("'{name}' declared twice or reserved") });
            }
            match s {
                Stmt::Coord { weight, .. } => {
                    if *weight < 1 {
                        return Err(Error::Parse { pos, msg: "coordinate weights must be positive".into() });
                    }
                    coords.push(Coord { name: name.clone(), weight: *weight })
                }
                _ => params.push(name.clone()),
            }
        }
        let cnames: Vec<String> = coords.iter().map(|c| c.name.clone()).collect();
        let scope = Scope { coords: &cnames, params: &params };
        let mut model = CrModel { coords, params: params.clone(), equations: Vec::new(), fields: Vec::new() };
        let weights = model.ring_weights();
        let n = model.coords.len();
        for s in &stmts {
            match s {
                Stmt::Equation { coord, rhs, pos } => {
                    let k = cnames
                        .iter()
                        .position(|c| c == coord)
                        .ok_or_else(|| Error::Parse { pos: *pos, msg: format!("unknown coordinate '{coord}'") })?;
                    if model.equations.iter().any(|e| e.coord == k) {
                        return Err(Error::Parse { pos: *pos, msg: format!("second equation for '{coord}'") });
                    }
                    let p = match scope.eval(rhs)? {
                        Value::Poly(p) => p,
                        Value::Field(_) => {
                            return Err(Error::Parse { pos: rhs.pos, msg: "equation right-hand side is a vector field".into() })
                        }
                    };
                    if p.depends_on(k) || p.depends_on(k + n) {
                        return Err(Error::Parse { pos: *pos, msg: format!("equation for '{coord}' refers to itself") });
                    }
                    model.check_real(coord, &p)?;
                    model.check_homogeneous(coord, &p, &weights)?;
                    model.equations.push(Equation { coord: k, rhs: p });
                }
                Stmt::Field { name, expr, probe, pos } => {
                    if model.fields.iter().any(|f| &f.name == name) {
                        return Err(Error::Parse { pos: *pos, msg: format!("field '{name}' defined twice") });
                    }
                    let comps = match scope.eval(expr)? {
                        Value::Field(c) => c,
                        Value::Poly(_) => {
                            return Err(Error::Parse { pos: expr.pos, msg: format!("'{name}' is not a vector field") })
                        }
                    };
                    if comps.iter().any(|c| (n..2 * n).any(|v| c.depends_on(v))) {
                        return Err(Error::Parse { pos: expr.pos, msg: format!("'{name}' must be holomorphic") });
                    }
                    let field = VectorField::new(model.ring_names(), n, comps);
                    field_weight(&field, &weights)
                        .map_err(|e| Error::Homogeneity(format!("field {name}: {e}")))?;
                    model.fields.push(NamedField { name: name.clone(), field, probe: *probe });
                }
                _ => {}
            }
        }
        Ok(model)
    }

    pub fn ncoords(&self) -> usize {
        self.coords.len()
    }

    pub fn nvars(&self) -> usize {
        2 * self.coords.len() + self.params.len()
    }

    pub fn ring_names(&self) -> Vec<String> {
        let mut out: Vec<String> = self.coords.iter().map(|c| c.name.clone()).collect();
        out.extend(self.coords.iter().map(|c| format!("conj({})", c.name)));
        out.extend(self.params.iter().cloned());
        out
    }

    /// Weights of the ring variables; parameters have weight 0.
    pub fn ring_weights(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.coords.iter().map(|c| c.weight).collect();
        out.extend(self.coords.iter().map(|c| c.weight));
        out.extend(self.params.iter().map(|_| 0));
        out
    }

    pub fn conj_perm(&self) -> Vec<usize> {
        let cn: Vec<String> = self.coords.iter().map(|c| c.name.clone()).collect();
        Scope { coords: &cn, params: &self.params }.conj_perm()
    }

    fn check_real(&self, coord: &str, p: &MPoly) -> Result<()> {
        let c = p.conj_with(&self.conj_perm());
        let diff = p.sub(&c);
        if let Some((e, _)) = diff.terms().next() {
            let mono = MPoly::monomial(e.clone(), GaussRat::one()).display(&self.ring_names());
            return Err(Error::Reality(format!(
                "right-hand side for {coord} is not real: monomial {mono} has coefficient {} but its conjugate has {}",
                p.coeff(e),
                c.coeff(e)
            )));
        }
        Ok(())
    }

    fn check_homogeneous(&self, coord: &str, p: &MPoly, weights: &[i64]) -> Result<()> {
        let k = self.coords.iter().find(|c| c.name == coord).map_or(0, |c| c.weight);
        for (e, _) in p.terms() {
            let w: i64 = e.iter().zip(weights).map(|(&a, &b)| a as i64 * b).sum();
            if w != k {
                let mono = MPoly::monomial(e.clone(), GaussRat::one()).display(&self.ring_names());
                return Err(Error::Homogeneity(format!(
                    "monomial {mono} in the equation for {coord} has weight {w}, expected {k}"
                )));
            }
        }
        Ok(())
    }

    /// Symmetry fields (probes excluded).
    pub fn symmetries(&self) -> Vec<&NamedField> {
        self.fields.iter().filter(|f| !f.probe).collect()
    }

    pub fn field(&self, name: &str) -> Option<&NamedField> {
        self.fields.iter().find(|f| f.name == name)
    }

    /// Fixes parameters to rational values and drops them from the ring.
    pub fn specialize(&self, values: &[(String, Rat)]) -> Result<CrModel> {
        let base = 2 * self.coords.len();
        let mut fixed = Vec::new();
        for (name, v) in values {
            let i = self
                .params
                .iter()
                .position(|p| p == name)
                .ok_or_else(|| Error::Input(format!("unknown parameter '{name}'")))?;
            fixed.push((base + i, v.clone()));
        }
        let keep: Vec<String> =
            self.params.iter().enumerate().filter(|(i, _)| !fixed.iter().any(|f| f.0 == base + i)).map(|x| x.1.clone()).collect();
        let mut map = Vec::new();
        let mut next = base;
        for i in 0..self.nvars() {
            if i < base {
                map.push(i);
            } else if fixed.iter().any(|f| f.0 == i) {
                map.push(usize::MAX);
            } else {
                map.push(next);
                next += 1;
            }
        }
        let nv = next;
        let sub = |p: &MPoly| {
            let s = p.specialize(&fixed);
            let m: Vec<usize> = map.iter().map(|&x| if x == usize::MAX { 0 } else { x }).collect();
            s.embed(nv, &m)
        };
        let mut out = CrModel { coords: self.coords.clone(), params: keep, equations: Vec::new(), fields: Vec::new() };
        let names = out.ring_names();
        out.equations = self.equations.iter().map(|e| Equation { coord: e.coord, rhs: sub(&e.rhs) }).collect();
        out.fields = self
            .fields
            .iter()
            .map(|f| NamedField {
                name: f.name.clone(),
                field: VectorField::new(names.clone(), self.ncoords(), f.field.components().iter().map(sub).collect()),
                probe: f.probe,
            })
            .collect();
        Ok(out)
    }

    pub fn to_json(&self) -> ModelJson {
        let names = self.ring_names();
        let weights = self.ring_weights();
        ModelJson {
            coords: self.coords.clone(),
            params: self.params.clone(),
            equations: self
                .equations
                .iter()
                .map(|e| EquationJson { coord: self.coords[e.coord].name.clone(), rhs: e.rhs.display(&names) })
                .collect(),
            fields: self
                .fields
                .iter()
                .map(|f| FieldEntryJson {
                    name: f.name.clone(),
                    probe: f.probe,
                    weight: field_weight(&f.field, &weights).ok().flatten(),
                    field: f.field.display(),
                })
                .collect(),
        }
    }
}
