//! Symbol of a model's negative-weight symmetries, its complex structure,
//! the resulting dimension bound and a classification of the symbol.

use serde::Serialize;

use super::CrModel;
use crate::cxstruct::ComplexStructure;
use crate::error::{Error, Result};
use crate::exactmath::{fmt_rat, member, GaussRat, Rat, RatMatrix};
use crate::extend::{classify_hc_extension, classify_hc_plane, normal_form_211, Cochain, ExtensionTag, ExtensionType};
use crate::gnla::{free_gnla, hc, Gnla};
use crate::prolong::{cr_g0, symmetry_bound};
use crate::vfield::{field_weight, graded_symbol, VectorField};

#[derive(Clone, Debug)]
pub struct ModelSymbol {
    pub gnla: Gnla,
    pub representatives: Vec<VectorField>,
    pub j: ComplexStructure,
    /// Bracket-generated with center equal to the lowest grade.
    pub fundamental: bool,
    /// `dim g0` of the CR-compatible degree-0 derivations.
    pub r: usize,
    pub bound: usize,
    pub label: Option<String>,
    pub extension: Option<ExtensionType>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelSymbolJson {
    pub growth: Vec<usize>,
    pub relations: Vec<String>,
    pub j: [String; 2],
    pub fundamental: bool,
    pub r: usize,
    pub bound: usize,
    pub label: Option<String>,
    pub extension: Option<crate::extend::ExtensionTypeJson>,
}

impl ModelSymbol {
    pub fn to_json(&self) -> ModelSymbolJson {
        ModelSymbolJson {
            growth: self.gnla.dims(),
            relations: self.gnla.to_string().lines().map(str::to_string).collect(),
            j: [fmt_rat(&self.j.a()), fmt_rat(&self.j.b())],
            fundamental: self.fundamental,
            r: self.r,
            bound: self.bound,
            label: self.label.clone(),
            extension: self.extension.as_ref().map(ExtensionType::to_json),
        }
    }
}

fn real_vec(v: &[GaussRat]) -> Vec<Rat> {
    v.iter().flat_map(|g| [g.re.clone(), g.im.clone()]).collect()
}

/// `J` on g_{-1} read from the weight −1 representatives at the origin:
/// multiplication by `i` in the span of their values.
pub fn model_j(m: &CrModel, reps: &[VectorField]) -> Result<ComplexStructure> {
    if reps.len() < 2 {
        return Err(Error::Input("need two weight -1 fields".into()));
    }
    let origin = vec![GaussRat::from(Rat::from_integer(0.into())); m.ncoords()];
    let vals: Vec<Vec<GaussRat>> = reps[..2].iter().map(|f| f.value_at(&origin)).collect::<Result<_>>()?;
    let basis: Vec<Vec<Rat>> = vals.iter().map(|v| real_vec(v)).collect();
    let mut cols = Vec::new();
    for v in &vals {
        let iv: Vec<GaussRat> = v.iter().map(|c| c * &GaussRat::i()).collect();
        let c = member(&real_vec(&iv), &basis).ok_or_else(|| {
            Error::Input("weight -1 fields do not span a complex line at the origin".into())
        })?;
        cols.push(c);
    }
    ComplexStructure::new(RatMatrix::from_columns(2, &cols))
}

/// Structure constants of the grade `k` part as cochains on the lower grades.
fn top_cochains(g: &Gnla, low: &Gnla, k: usize) -> Vec<Cochain> {
    g.grade_range(k)
        .map(|t| {
            let mut w = Cochain::zero(k);
            for a in 0..low.dim() {
                for b in a + 1..low.dim() {
                    if low.grade(a) + low.grade(b) != k {
                        continue;
                    }
                    let v = g.bracket(&g.unit(a), &g.unit(b))[t].clone();
                    w.set(a, b, v);
                }
            }
            w
        })
        .collect()
}

/// Basis `e2 = [e1',e1'']`, `e3' = [e1',e2]`, `e3'' = [e1'',e2]`, keeping the
/// given elements of grade ≥ 4.
fn hc_adapted(g: &Gnla) -> Result<Gnla> {
    let (u, v) = (g.unit(0), g.unit(1));
    let e2 = g.bracket(&u, &v);
    let mut nb = vec![
        ("e1'".to_string(), u.clone()),
        ("e1''".to_string(), v.clone()),
        ("e2".to_string(), e2.clone()),
        ("e3'".to_string(), g.bracket(&u, &e2)),
        ("e3''".to_string(), g.bracket(&v, &e2)),
    ];
    for i in g.grade_range(4).start..g.dim() {
        nb.push((g.name(i).to_string(), g.unit(i)));
    }
    g.change_basis(&nb)
}

fn tag_name(t: ExtensionTag) -> &'static str {
    match t {
        ExtensionTag::Elliptic => "ell",
        ExtensionTag::Hyperbolic => "h",
        ExtensionTag::Parabolic => "p",
    }
}

/// Names the symbol when it falls in one of the recognised families.
pub fn classify_symbol(g: &Gnla) -> Result<(Option<String>, Option<ExtensionType>)> {
    let dims = g.dims();
    if dims.len() >= 3 && dims[0] == 2 && dims[1..].iter().all(|&d| d == 1) {
        return Ok((Some(normal_form_211(g)?.0), None));
    }
    if dims.len() < 3 || dims[..3] != [2, 1, 2] {
        return Ok((None, None));
    }
    let h = hc_adapted(g)?;
    let low = h.truncate(3);
    if !low.same_structure(&hc()) {
        return Err(Error::InternalConsistency(format!("growth (2,1,2) symbol is not Hilbert-Cartan:\n{g}")));
    }
    match &dims[..] {
        [2, 1, 2] => Ok((Some("m_HC".into()), None)),
        [2, 1, 2, 1] => {
            let ws = top_cochains(&h, &low, 4);
            let t = classify_hc_extension(&low, &ws[0])?;
            Ok((Some(format!("{}6", tag_name(t.tag))), Some(t)))
        }
        [2, 1, 2, 2] => {
            let ws = top_cochains(&h, &low, 4);
            let t = classify_hc_plane(&low, &ws[0], &ws[1])?;
            Ok((Some(format!("{}7", tag_name(t.tag))), Some(t)))
        }
        [2, 1, 2, 3] => {
            let f = free_gnla(4)?;
            let free_dims = f.dims();
            Ok((Some(if dims == free_dims { "free(4)".into() } else { "quotient of free(4)".into() }), None))
        }
        _ => Ok((None, None)),
    }
}

/// Symbol of the negative-weight symmetry fields. Parameters must be
/// specialized first.
pub fn model_symbol(m: &CrModel) -> Result<ModelSymbol> {
    if !m.params.is_empty() {
        return Err(Error::Parametric);
    }
    let weights = m.ring_weights();
    let mut neg = Vec::new();
    for f in m.symmetries() {
        if field_weight(&f.field, &weights)?.is_some_and(|w| w < 0) {
            neg.push(f.field.clone());
        }
    }
    let sym = graded_symbol(&neg, &weights)?;
    let j = model_j(m, &sym.representatives)?;
    let gnla = sym.gnla;
    let fundamental = gnla.is_fundamental().fundamental;
    let r = cr_g0(&gnla, j.matrix()).len();
    let bound = symmetry_bound(&gnla, j.matrix())?;
    let (label, extension) = classify_symbol(&gnla)?;
    Ok(ModelSymbol { gnla, representatives: sym.representatives, j, fundamental, r, bound, label, extension })
}
