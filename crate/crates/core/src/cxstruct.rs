//! Complex structures on g_{-1}, their normal forms under graded
//! automorphisms, and the existence of a g0-invariant one.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{fmt_rat, int, parse_rat, Rat, RatMatrix};
use crate::gnla::Gnla;
use crate::prolong::{der0, graded_automorphism};

/// `J` on g_{-1} in the basis `(e1', e1'')`, with `J e1' = b e1' + a e1''`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStructure {
    j: RatMatrix,
}

pub fn validate_j(j: &RatMatrix) -> bool {
    j.rows() == j.cols() && j.mul(j) == RatMatrix::identity(j.rows()).scale(&int(-1))
}

impl ComplexStructure {
    pub fn new(j: RatMatrix) -> Result<ComplexStructure> {
        if j.rows() != 2 || !validate_j(&j) {
            return Err(Error::Input("J must be a 2x2 matrix with J^2 = -1".into()));
        }
        Ok(ComplexStructure { j })
    }

    /// The structure with parameters `(a, b)`; `a ≠ 0`.
    pub fn from_ab(a: Rat, b: Rat) -> Result<ComplexStructure> {
        if a.is_zero() {
            return Err(Error::Input("a must be nonzero".into()));
        }
        let c = -(Rat::one() + &b * &b) / &a;
        ComplexStructure::new(RatMatrix::from_rows(vec![vec![b.clone(), c], vec![a, -b]]))
    }

    pub fn standard() -> ComplexStructure {
        ComplexStructure::from_ab(Rat::one(), Rat::zero()).unwrap()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.j
    }

    pub fn a(&self) -> Rat {
        self.j.get(1, 0).clone()
    }

    pub fn b(&self) -> Rat {
        self.j.get(0, 0).clone()
    }

    /// `g J g⁻¹`.
    pub fn conjugate(&self, g: &RatMatrix) -> Result<ComplexStructure> {
        let inv = g.inverse().ok_or_else(|| Error::Input("singular group element".into()))?;
        ComplexStructure::new(g.mul(&self.j).mul(&inv))
    }
}

/// A complex structure either exactly or as a traceless matrix whose
/// positive multiples contain `±J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JSpec {
    Exact(ComplexStructure),
    TracelessClass(RatMatrix),
}

impl JSpec {
    /// Matrix to use for commutant computations (the commutant of a positive
    /// multiple of `J` is that of `J`).
    pub fn matrix(&self) -> &RatMatrix {
        match self {
            JSpec::Exact(j) => j.matrix(),
            JSpec::TracelessClass(m) => m,
        }
    }

    pub fn to_json(&self) -> JJson {
        match self {
            JSpec::Exact(j) => JJson::Ab { a: fmt_rat(&j.a()), b: fmt_rat(&j.b()) },
            JSpec::TracelessClass(m) => {
                JJson::Class { traceless_class: m.row_vecs().iter().map(|r| r.iter().map(fmt_rat).collect()).collect() }
            }
        }
    }

    pub fn from_json(j: &JJson) -> Result<JSpec> {
        let p = |s: &str| parse_rat(s).ok_or_else(|| Error::Input(format!("bad rational {s:?}")));
        match j {
            JJson::Ab { a, b } => Ok(JSpec::Exact(ComplexStructure::from_ab(p(a)?, p(b)?)?)),
            JJson::Class { traceless_class } => {
                let rows = traceless_class
                    .iter()
                    .map(|r| r.iter().map(|s| p(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let m = RatMatrix::from_rows(rows);
                if m.rows() != 2 || m.cols() != 2 || !m.trace().is_zero() || !m.det().is_positive() {
                    return Err(Error::Input("traceless class must be 2x2 with trace 0 and det > 0".into()));
                }
                Ok(JSpec::TracelessClass(m))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JJson {
    Ab { a: String, b: String },
    Class { traceless_class: Vec<Vec<String>> },
}

/// Shape of `der0(m)` restricted to g_{-1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Der0Shape {
    Gl2,
    LowerBorel,
    UpperBorel,
    DiagonalCartan,
    Other,
}

/// Factor of a group element: `exp(t N) = I + t N` for nilpotent `N`, or a
/// diagonal matrix (which may include sign flips).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupFactor {
    Unipotent { generator: RatMatrix, t: Rat },
    Diagonal(Vec<Rat>),
}

impl GroupFactor {
    pub fn matrix(&self) -> RatMatrix {
        match self {
            GroupFactor::Unipotent { generator, t } => RatMatrix::identity(2).add(&generator.scale(t)),
            GroupFactor::Diagonal(d) => {
                let mut m = RatMatrix::zeros(d.len(), d.len());
                for (i, x) in d.iter().enumerate() {
                    m.set(i, i, x.clone());
                }
                m
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GroupFactor::Unipotent { generator, t } => {
                let n = generator.row_vecs().iter().map(|r| r.iter().map(fmt_rat).collect::<Vec<_>>().join(",")).collect::<Vec<_>>();
                format!("exp({} * [[{}]])", fmt_rat(t), n.join("],["))
            }
            GroupFactor::Diagonal(d) => format!("diag({})", d.iter().map(fmt_rat).collect::<Vec<_>>().join(",")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Normalization {
    pub shape: Der0Shape,
    pub normal: ComplexStructure,
    /// Factors whose product (left to right) is `g`.
    pub factors: Vec<GroupFactor>,
    /// g_{-1} block `g` with `g J g⁻¹ = normal`.
    pub g: RatMatrix,
    /// Graded automorphism of `m` extending `g`.
    pub automorphism: RatMatrix,
}

fn flat(m: &RatMatrix) -> Vec<Rat> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

pub fn der0_shape(m: &Gnla) -> (Der0Shape, Vec<RatMatrix>) {
    let blocks: Vec<RatMatrix> = der0(m).iter().map(|d| d.g1().clone()).collect();
    if m.grade_range(1).len() != 2 {
        return (Der0Shape::Other, blocks);
    }
    let dim = RatMatrix::from_rows(blocks.iter().map(flat).collect()).rank();
    let all = |f: &dyn Fn(&RatMatrix) -> bool| blocks.iter().all(f);
    let shape = match dim {
        4 => Der0Shape::Gl2,
        3 if all(&|b| b.get(0, 1).is_zero()) => Der0Shape::LowerBorel,
        3 if all(&|b| b.get(1, 0).is_zero()) => Der0Shape::UpperBorel,
        2 if all(&|b| b.get(0, 1).is_zero() && b.get(1, 0).is_zero()) => Der0Shape::DiagonalCartan,
        _ => Der0Shape::Other,
    };
    (shape, blocks)
}

fn unit_nilpotent(i: usize, j: usize) -> RatMatrix {
    let mut n = RatMatrix::zeros(2, 2);
    n.set(i, j, Rat::one());
    n
}

/// Normal form of `J` under graded automorphisms: `(1, 0)` when der0
/// contains a Borel subalgebra, `(1, b)` for the diagonal Cartan case.
pub fn normalize_j(m: &Gnla, j: &ComplexStructure) -> Result<Normalization> {
    let (shape, blocks) = der0_shape(m);
    let (a, b) = (j.a(), j.b());
    let s = (Rat::one() + &b * &b) / &a;
    let factors = match shape {
        Der0Shape::Gl2 | Der0Shape::LowerBorel => vec![
            GroupFactor::Unipotent { generator: unit_nilpotent(1, 0), t: -b.clone() },
            GroupFactor::Diagonal(vec![Rat::one(), s]),
        ],
        Der0Shape::UpperBorel => vec![
            GroupFactor::Unipotent { generator: unit_nilpotent(0, 1), t: -b.clone() },
            GroupFactor::Diagonal(vec![Rat::one(), Rat::one() / &a]),
        ],
        Der0Shape::DiagonalCartan => vec![GroupFactor::Diagonal(vec![Rat::one(), Rat::one() / &a])],
        Der0Shape::Other => {
            let list: Vec<String> = blocks
                .iter()
                .map(|b| format!("[{}]", flat(b).iter().map(fmt_rat).collect::<Vec<_>>().join(",")))
                .collect();
            return Err(Error::UnsupportedDer0(list.join(" ")));
        }
    };
    let g = factors.iter().fold(RatMatrix::identity(2), |acc, f| acc.mul(&f.matrix()));
    let normal = j.conjugate(&g)?;
    let automorphism = graded_automorphism(m, &g).map_err(|e| {
        Error::InternalConsistency(format!("normalizing element is not a graded automorphism: {e}"))
    })?;
    let expected_a = normal.a() == Rat::one();
    let expected_b = shape == Der0Shape::DiagonalCartan || normal.b().is_zero();
    if !(expected_a && expected_b) {
        return Err(Error::InternalConsistency(format!(
            "normalization produced (a,b) = ({}, {})",
            fmt_rat(&normal.a()),
            fmt_rat(&normal.b())
        )));
    }
    Ok(Normalization { shape, normal, factors, g, automorphism })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantJ {
    pub exists: bool,
    /// Traceless element of der0|g_{-1} with positive determinant, scaled so
    /// that its lower-left entry is positive; `±J` are its normalizations.
    pub witness: Option<RatMatrix>,
}

/// A vector `v` with `q(v) > 0` for the symmetric form with Gram matrix
/// `gram`, found by rational congruence diagonalization.
fn positive_vector(gram: &RatMatrix) -> Option<Vec<Rat>> {
    let form = |u: &[Rat], v: &[Rat]| gram.apply(v).iter().zip(u).fold(Rat::zero(), |s, (x, y)| s + x * y);
    let mut vecs: Vec<Vec<Rat>> = RatMatrix::identity(gram.rows()).row_vecs();
    loop {
        if let Some(v) = vecs.iter().find(|v| form(v, v).is_positive()) {
            return Some(v.clone());
        }
        if let Some(i) = vecs.iter().position(|v| !form(v, v).is_zero()) {
            // q(v_i) < 0: split it off and continue on its orthogonal complement.
            let vi = vecs.remove(i);
            let qi = form(&vi, &vi);
            for v in &mut vecs {
                let f = form(&vi, v) / &qi;
                for (x, y) in v.iter_mut().zip(&vi) {
                    *x -= &f * y;
                }
            }
            continue;
        }
        for i in 0..vecs.len() {
            for j in i + 1..vecs.len() {
                let b = form(&vecs[i], &vecs[j]);
                if !b.is_zero() {
                    let sign = if b.is_positive() { Rat::one() } else { -Rat::one() };
                    return Some(vecs[i].iter().zip(&vecs[j]).map(|(x, y)| x + &sign * y).collect());
                }
            }
        }
        return None;
    }
}

/// Whether der0(m)|g_{-1} contains a traceless element of positive
/// determinant (an infinitesimal rotation defining an invariant `±J`).
pub fn invariant_j_exists(m: &Gnla) -> InvariantJ {
    let (_, blocks) = der0_shape(m);
    if m.grade_range(1).len() != 2 {
        return InvariantJ { exists: false, witness: None };
    }
    let half = Rat::new(1.into(), 2.into());
    let traceless: Vec<RatMatrix> =
        blocks.iter().map(|b| b.sub(&RatMatrix::identity(2).scale(&(b.trace() * &half)))).collect();
    // Independent traceless parts.
    let mut basis: Vec<RatMatrix> = Vec::new();
    for t in traceless {
        let mut rows: Vec<Vec<Rat>> = basis.iter().map(flat).collect();
        rows.push(flat(&t));
        if RatMatrix::from_rows(rows).rank() > basis.len() {
            basis.push(t);
        }
    }
    if basis.is_empty() {
        return InvariantJ { exists: false, witness: None };
    }
    let k = basis.len();
    let gram = RatMatrix::from_rows(
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| (basis[i].add(&basis[j]).det() - basis[i].det() - basis[j].det()) * &half)
                    .collect()
            })
            .collect(),
    );
    match positive_vector(&gram) {
        Some(c) => {
            let mut w = c.iter().zip(&basis).fold(RatMatrix::zeros(2, 2), |acc, (x, b)| acc.add(&b.scale(x)));
            if w.get(1, 0).is_negative() {
                w = w.scale(&int(-1));
            }
            InvariantJ { exists: true, witness: Some(w) }
        }
        None => InvariantJ { exists: false, witness: None },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn validate_examples() {
        assert!(validate_j(ComplexStructure::standard().matrix()));
        assert!(!validate_j(&RatMatrix::identity(2)));
        assert!(ComplexStructure::from_ab(int(2), int(3)).is_ok());
        assert!(ComplexStructure::from_ab(int(0), int(3)).is_err());
    }

    #[test]
    fn positive_vector_on_indefinite_forms() {
        let g = RatMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        let v = positive_vector(&g).unwrap();
        assert!((&v[0] * &v[1]).is_positive());
        let neg = RatMatrix::from_rows(vec![vec![int(-1), int(0)], vec![int(0), rat(-1, 2)]]);
        assert!(positive_vector(&neg).is_none());
    }
}
