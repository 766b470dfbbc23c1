//! Polynomial vector fields with Gaussian-rational coefficients, pointwise
//! growth of distributions, the projectivization chart, and symbols of
//! weight-graded field algebras.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{member, GaussRat, MPoly, Rat, RatMatrix, Span};
use crate::gnla::{standard_names, Gnla, GnlaBuilder};

/// `Σ X_j ∂_j` over the first `ncoords` variables of a polynomial ring whose
/// remaining variables are parameters (or conjugate coordinates).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    names: Vec<String>,
    ncoords: usize,
    components: Vec<MPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldJson {
    pub coords: Vec<String>,
    pub components: BTreeMap<String, String>,
}

impl VectorField {
    pub fn new(names: Vec<String>, ncoords: usize, components: Vec<MPoly>) -> VectorField {
        assert_eq!(components.len(), ncoords, "one component per coordinate");
        assert!(components.iter().all(|c| c.nvars() == names.len()), "components live in the field's ring");
        VectorField { names, ncoords, components }
    }

    pub fn zero(names: Vec<String>, ncoords: usize) -> VectorField {
        let n = names.len();
        VectorField { names, ncoords, components: vec![MPoly::zero(n); ncoords] }
    }

    /// `∂/∂x_i`.
    pub fn partial(names: Vec<String>, ncoords: usize, i: usize) -> VectorField {
        let mut f = VectorField::zero(names, ncoords);
        f.components[i] = MPoly::one(f.nvars());
        f
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn ncoords(&self) -> usize {
        self.ncoords
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn component(&self, i: usize) -> &MPoly {
        &self.components[i]
    }

    pub fn components(&self) -> &[MPoly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MPoly::is_zero)
    }

    /// `X(f) = Σ X_j ∂_j f`.
    pub fn apply(&self, f: &MPoly) -> MPoly {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(MPoly::zero(self.nvars()), |acc, (j, c)| acc.add(&c.mul(&f.derivative(j))))
    }

    /// `[X, Y]_c = X(Y_c) - Y(X_c)`.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        let components =
            (0..self.ncoords).map(|c| self.apply(&other.components[c]).sub(&other.apply(&self.components[c]))).collect();
        VectorField { names: self.names.clone(), ncoords: self.ncoords, components }
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect();
        VectorField { names: self.names.clone(), ncoords: self.ncoords, components }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        self.add(&other.scale(&-GaussRat::one()))
    }

    pub fn scale(&self, s: &GaussRat) -> VectorField {
        VectorField { names: self.names.clone(), ncoords: self.ncoords, components: self.components.iter().map(|c| c.scale(s)).collect() }
    }

    pub fn mul_poly(&self, f: &MPoly) -> VectorField {
        VectorField { names: self.names.clone(), ncoords: self.ncoords, components: self.components.iter().map(|c| c.mul(f)).collect() }
    }

    pub fn specialize(&self, values: &[(usize, Rat)]) -> VectorField {
        VectorField {
            names: self.names.clone(),
            ncoords: self.ncoords,
            components: self.components.iter().map(|c| c.specialize(values)).collect(),
        }
    }

    /// Value at a point of the coordinates; errors if a component still
    /// depends on a non-coordinate variable.
    pub fn value_at(&self, point: &[GaussRat]) -> Result<Vec<GaussRat>> {
        assert_eq!(point.len(), self.ncoords);
        let mut full = point.to_vec();
        full.resize(self.nvars(), GaussRat::zero());
        self.components
            .iter()
            .map(|c| {
                if (self.ncoords..self.nvars()).any(|v| c.depends_on(v)) {
                    Err(Error::Parametric)
                } else {
                    Ok(c.eval(&full))
                }
            })
            .collect()
    }

    /// Re-expresses the field in a ring of `nvars` variables with variable
    /// `i` sent to `map[i]`; the first `ncoords` targets must be coordinates.
    pub fn embed(&self, names: Vec<String>, ncoords: usize, map: &[usize]) -> VectorField {
        let mut components = vec![MPoly::zero(names.len()); ncoords];
        for (i, c) in self.components.iter().enumerate() {
            components[map[i]] = c.embed(names.len(), map);
        }
        VectorField { names, ncoords, components }
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let s = c.display(&self.names);
                if c.len() == 1 {
                    format!("{s}*d({})", self.names[j])
                } else {
                    format!("({s})*d({})", self.names[j])
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn to_json(&self) -> FieldJson {
        FieldJson {
            coords: self.names[..self.ncoords].to_vec(),
            components: (0..self.ncoords)
                .filter(|&j| !self.components[j].is_zero())
                .map(|j| (self.names[j].clone(), self.components[j].display(&self.names)))
                .collect(),
        }
    }

    /// Real coordinates of the field as a polynomial object: one entry per
    /// (component, monomial, real/imaginary part).
    fn real_coords(&self) -> BTreeMap<(usize, Vec<u32>, bool), Rat> {
        let mut out = BTreeMap::new();
        for (j, c) in self.components.iter().enumerate() {
            for (e, k) in c.terms() {
                if !k.re.is_zero() {
                    out.insert((j, e.clone(), false), k.re.clone());
                }
                if !k.im.is_zero() {
                    out.insert((j, e.clone(), true), k.im.clone());
                }
            }
        }
        out
    }
}

/// Expresses `target` as a real combination of `fields`, comparing
/// coefficients of every monomial.
pub fn real_combination(target: &VectorField, fields: &[VectorField]) -> Option<Vec<Rat>> {
    let all: Vec<BTreeMap<_, _>> = fields.iter().map(VectorField::real_coords).collect();
    let t = target.real_coords();
    let mut keys: Vec<_> = t.keys().cloned().collect();
    for m in &all {
        keys.extend(m.keys().cloned());
    }
    keys.sort();
    keys.dedup();
    let vec_of = |m: &BTreeMap<_, Rat>| keys.iter().map(|k| m.get(k).cloned().unwrap_or_else(Rat::zero)).collect::<Vec<_>>();
    let basis: Vec<Vec<Rat>> = all.iter().map(vec_of).collect();
    member(&vec_of(&t), &basis)
}

/// Generators of a distribution near a rational base point.
#[derive(Clone, Debug)]
pub struct DistributionChart {
    pub generators: Vec<VectorField>,
    pub base: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartGrowth {
    pub cumulative: Vec<usize>,
    pub reduced: Vec<usize>,
}

fn real_values(v: &[GaussRat]) -> Vec<Rat> {
    v.iter().flat_map(|g| [g.re.clone(), g.im.clone()]).collect()
}

impl DistributionChart {
    pub fn new(generators: Vec<VectorField>, base: Vec<Rat>) -> DistributionChart {
        DistributionChart { generators, base }
    }

    fn point(&self) -> Vec<GaussRat> {
        self.base.iter().map(|x| GaussRat::real(x.clone())).collect()
    }

    /// Keeps the fields that are independent at the base point, in order.
    fn frame(&self, fields: &[VectorField], span: &mut Span) -> Result<Vec<VectorField>> {
        let p = self.point();
        let mut out = Vec::new();
        for f in fields {
            if span.insert(&real_values(&f.value_at(&p)?)) {
                out.push(f.clone());
            }
        }
        Ok(out)
    }

    /// Weak (`D^{k+1} = D^k + [D, D^k]`) or strong
    /// (`D^{[k+1]} = D^{[k]} + [D^{[k]}, D^{[k]}]`) derived flag at the base point.
    pub fn growth_at(&self, weak: bool) -> Result<ChartGrowth> {
        let Some(first) = self.generators.first() else {
            return Err(Error::Input("distribution has no generators".into()));
        };
        let n = first.ncoords();
        let mut span = Span::new();
        let gens = self.frame(&self.generators, &mut span)?;
        if gens.len() < self.generators.len() {
            return Err(Error::Input("generators are dependent at the base point".into()));
        }
        let mut current = gens.clone();
        let mut cumulative = vec![span.dim()];
        while span.dim() < 2 * n {
            let left: &[VectorField] = if weak { &gens } else { &current };
            let mut candidates = Vec::new();
            for x in left {
                for y in &current {
                    candidates.push(x.bracket(y));
                }
            }
            let new = self.frame(&candidates, &mut span)?;
            if new.is_empty() {
                break;
            }
            current.extend(new);
            cumulative.push(span.dim());
        }
        // Real dimension: each holomorphic direction with real values counts once.
        let reduced = cumulative.iter().scan(0, |prev, &c| {
            let d = c - *prev;
            *prev = c;
            Some(d)
        });
        let reduced: Vec<usize> = reduced.collect();
        Ok(ChartGrowth { cumulative, reduced })
    }

    /// Affine chart of the projectivization: adds the fiber coordinate
    /// `name` and returns `(X + pY, ∂_p)`.
    pub fn prolong_chart(&self, name: &str) -> Result<DistributionChart> {
        let [x, y] = self.generators.as_slice() else {
            return Err(Error::Input("prolongation chart needs exactly two generators".into()));
        };
        let n = x.ncoords();
        let mut names: Vec<String> = x.names()[..n].to_vec();
        names.push(name.to_string());
        names.extend(x.names()[n..].iter().cloned());
        let map: Vec<usize> = (0..x.nvars()).map(|i| if i < n { i } else { i + 1 }).collect();
        let (xe, ye) = (x.embed(names.clone(), n + 1, &map), y.embed(names.clone(), n + 1, &map));
        let p = MPoly::var(names.len(), n);
        let gen1 = xe.add(&ye.mul_poly(&p));
        let gen2 = VectorField::partial(names, n + 1, n);
        let mut base = self.base.clone();
        base.push(Rat::zero());
        Ok(DistributionChart { generators: vec![gen1, gen2], base })
    }

    /// Whether `[field, D²] ⊆ D²` at the base point, where `D² = D + [D, D]`.
    pub fn is_cauchy_of_square(&self, field: &VectorField) -> Result<bool> {
        let mut d2 = self.generators.clone();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                d2.push(a.bracket(b));
            }
        }
        let mut span = Span::new();
        let frame = self.frame(&d2, &mut span)?;
        let p = self.point();
        for f in &frame {
            if !span.contains(&real_values(&field.bracket(f).value_at(&p)?)) {
                return Ok(false);
            }
        }
        Ok(span.contains(&real_values(&field.value_at(&p)?)))
    }
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Goursat chart on `(x, y0, …, y_{n-1})`: `∂x + Σ y_{i+1} ∂y_i`, `∂y_{n-1}`.
pub fn goursat_chart(n: usize) -> DistributionChart {
    let mut nm = vec!["x".to_string()];
    nm.extend((0..n).map(|i| format!("y{i}")));
    let k = nm.len();
    let mut comps = vec![MPoly::zero(k); k];
    comps[0] = MPoly::one(k);
    for i in 0..n.saturating_sub(1) {
        comps[1 + i] = MPoly::var(k, 2 + i);
    }
    let dx = VectorField::new(nm.clone(), k, comps);
    let last = VectorField::partial(nm, k, k - 1);
    DistributionChart::new(vec![dx, last], vec![Rat::zero(); k])
}

/// Hilbert–Cartan chart on `(x, y0, z0, z1, z2)` for `y' = (z'')²`.
pub fn hilbert_cartan_chart() -> DistributionChart {
    let nm = names(&["x", "y0", "z0", "z1", "z2"]);
    let v = |i| MPoly::var(5, i);
    let dx = VectorField::new(nm.clone(), 5, vec![MPoly::one(5), v(4).mul(&v(4)), v(3), v(4), MPoly::zero(5)]);
    DistributionChart::new(vec![dx, VectorField::partial(nm, 5, 4)], vec![Rat::zero(); 5])
}

/// Chart on `(x, y0, z0, z1, z2, z3)` with
/// `D_x = ∂x + z2² ∂y0 + z1 ∂z0 + z2 ∂z1 + z3 ∂z2` and `∂z3`.
pub fn g2b_chart() -> DistributionChart {
    let nm = names(&["x", "y0", "z0", "z1", "z2", "z3"]);
    let v = |i| MPoly::var(6, i);
    let dx = VectorField::new(nm.clone(), 6, vec![MPoly::one(6), v(4).mul(&v(4)), v(3), v(4), v(5), MPoly::zero(6)]);
    DistributionChart::new(vec![dx, VectorField::partial(nm, 6, 5)], vec![Rat::zero(); 6])
}

/// Weight of a field: every monomial of component `j` has weight
/// `w + weight(x_j)`. Variables past the coordinates have weight 0.
pub fn field_weight(f: &VectorField, weights: &[i64]) -> Result<Option<i64>> {
    let mut found: Option<(i64, String)> = None;
    for (j, c) in f.components().iter().enumerate() {
        for (e, _) in c.terms() {
            let w: i64 = e.iter().enumerate().map(|(i, &k)| k as i64 * weights.get(i).copied().unwrap_or(0)).sum::<i64>()
                - weights[j];
            let mono = format!("{}*d({})", MPoly::monomial(e.clone(), GaussRat::one()).display(f.names()), f.names()[j]);
            match &found {
                None => found = Some((w, mono)),
                Some((w0, m0)) if *w0 != w => {
                    return Err(Error::Homogeneity(format!(
                        "monomial {mono} has weight {w} but {m0} has weight {w0}"
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(found.map(|(w, _)| w))
}

/// Symbol of a weight-graded family: the weight −1 fields generate, their
/// iterated brackets are taken as representatives of the deeper grades.
#[derive(Clone, Debug)]
pub struct FieldSymbol {
    pub gnla: Gnla,
    pub representatives: Vec<VectorField>,
}

pub fn nilpotent_symbol(fields: &[VectorField], weights: &[i64]) -> Result<FieldSymbol> {
    let sym = graded_symbol(fields, weights)?;
    sym.gnla.ensure_fundamental()?;
    Ok(sym)
}

/// As [`nilpotent_symbol`], without requiring the center to be the lowest grade.
pub fn graded_symbol(fields: &[VectorField], weights: &[i64]) -> Result<FieldSymbol> {
    let mut gens = Vec::new();
    for f in fields {
        if field_weight(f, weights)? == Some(-1) {
            gens.push(f.clone());
        }
    }
    if gens.is_empty() {
        return Err(Error::Input("no weight -1 fields".into()));
    }
    let mut levels: Vec<Vec<VectorField>> = Vec::new();
    let mut first = Vec::new();
    for g in gens {
        if real_combination(&g, &first).is_none() {
            first.push(g);
        }
    }
    levels.push(first);
    let max_weight = weights.iter().copied().max().unwrap_or(0) as usize;
    for _ in 2..=max_weight.max(1) {
        let prev = levels.last().unwrap().clone();
        let mut next: Vec<VectorField> = Vec::new();
        for g in &levels[0] {
            for p in &prev {
                let b = g.bracket(p);
                if !b.is_zero() && real_combination(&b, &next).is_none() {
                    next.push(b);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    let dims: Vec<usize> = levels.iter().map(Vec::len).collect();
    let nm = standard_names(&dims);
    let reps: Vec<VectorField> = levels.concat();
    let grade_of: Vec<usize> = nm.iter().map(|(_, g)| *g).collect();
    let mut b = GnlaBuilder::new();
    for (name, g) in &nm {
        b = b.elem(name, *g);
    }
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            let br = reps[i].bracket(&reps[j]);
            if br.is_zero() {
                continue;
            }
            let t = grade_of[i] + grade_of[j];
            let idx: Vec<usize> = (0..reps.len()).filter(|&k| grade_of[k] == t).collect();
            let cands: Vec<VectorField> = idx.iter().map(|&k| reps[k].clone()).collect();
            let coeffs = real_combination(&br, &cands).ok_or_else(|| {
                Error::Homogeneity(format!("bracket [{}, {}] leaves the graded span", nm[i].0, nm[j].0))
            })?;
            let terms: Vec<(String, Rat)> = idx
                .iter()
                .zip(coeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&k, c)| (nm[k].0.clone(), c))
                .collect();
            if !terms.is_empty() {
                b = b.rel_rat(&nm[i].0, &nm[j].0, terms);
            }
        }
    }
    let gnla = b.build()?;
    gnla.ensure_valid()?;
    Ok(FieldSymbol { gnla, representatives: reps })
}

/// Field from a map coordinate index → component.
pub fn field_from(names: Vec<String>, ncoords: usize, comps: &[(usize, MPoly)]) -> VectorField {
    let mut f = VectorField::zero(names, ncoords);
    for (i, c) in comps {
        f.components[*i] = f.components[*i].add(c);
    }
    f
}

/// Real matrix of field values at a point (columns = fields), for rank checks.
pub fn value_matrix(fields: &[VectorField], point: &[GaussRat]) -> Result<RatMatrix> {
    let cols = fields.iter().map(|f| Ok(real_values(&f.value_at(point)?))).collect::<Result<Vec<_>>>()?;
    let rows = cols.first().map_or(0, Vec::len);
    Ok(RatMatrix::from_columns(rows, &cols))
}
