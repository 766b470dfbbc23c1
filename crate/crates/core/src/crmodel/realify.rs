//! Real coordinates on a model: `z = x + i y` for the free coordinates and
//! `w_k = t_k + i P̂_k` for the others, resolved in dependency order.

use serde::Serialize;

use super::CrModel;
use crate::error::{Error, Result};
use crate::exactmath::{GaussRat, MPoly};

#[derive(Clone, Debug)]
pub struct Realization {
    /// Real variables: `x, y` per free coordinate, `t_w` per equation, then parameters.
    pub names: Vec<String>,
    /// Image of every model-ring variable in the real ring.
    pub images: Vec<MPoly>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationJson {
    pub variables: Vec<String>,
    pub substitutions: Vec<String>,
}

impl Realization {
    pub fn pull_back(&self, p: &MPoly) -> MPoly {
        p.compose(&self.images)
    }

    /// One line `coord = image` per coordinate.
    pub fn describe(&self, m: &CrModel) -> Vec<String> {
        m.coords.iter().enumerate().map(|(i, c)| format!("{} = {}", c.name, self.images[i].display(&self.names))).collect()
    }

    pub fn to_json(&self, m: &CrModel) -> RealizationJson {
        RealizationJson { variables: self.names.clone(), substitutions: self.describe(m) }
    }
}

pub fn realify(m: &CrModel) -> Result<Realization> {
    let n = m.ncoords();
    let free: Vec<usize> = (0..n).filter(|&i| !m.equations.iter().any(|e| e.coord == i)).collect();
    let mut names = Vec::new();
    for &i in &free {
        if free.len() == 1 {
            names.extend(["x".to_string(), "y".to_string()]);
        } else {
            names.push(format!("x_{}", m.coords[i].name));
            names.push(format!("y_{}", m.coords[i].name));
        }
    }
    for e in &m.equations {
        names.push(format!("t_{}", m.coords[e.coord].name));
    }
    let np = names.len();
    names.extend(m.params.iter().cloned());
    let nr = names.len();
    let i_unit = MPoly::constant(nr, GaussRat::i());
    let mut images: Vec<Option<MPoly>> = vec![None; m.nvars()];
    for (k, &c) in free.iter().enumerate() {
        let x = MPoly::var(nr, 2 * k);
        let y = MPoly::var(nr, 2 * k + 1).mul(&i_unit);
        images[c] = Some(x.add(&y));
        images[c + n] = Some(x.sub(&y));
    }
    for j in 0..m.params.len() {
        images[2 * n + j] = Some(MPoly::var(nr, np + j));
    }
    let mut pending: Vec<usize> = (0..m.equations.len()).collect();
    while !pending.is_empty() {
        let ready = pending.iter().position(|&q| {
            let rhs = &m.equations[q].rhs;
            (0..m.nvars()).all(|v| images[v].is_some() || !rhs.depends_on(v))
        });
        let Some(pi) = ready else {
            let stuck: Vec<&str> = pending.iter().map(|&q| m.coords[m.equations[q].coord].name.as_str()).collect();
            return Err(Error::Input(format!("cyclic dependence among the equations for {}", stuck.join(", "))));
        };
        let q = pending.remove(pi);
        let e = &m.equations[q];
        let imgs: Vec<MPoly> = images.iter().map(|x| x.clone().unwrap_or_else(|| MPoly::zero(nr))).collect();
        let p_hat = e.rhs.compose(&imgs);
        if p_hat.terms().any(|(_, c)| !c.is_real()) {
            return Err(Error::InternalConsistency(format!(
                "real form of the equation for {} has complex coefficients",
                m.coords[e.coord].name
            )));
        }
        let t = MPoly::var(nr, free.len() * 2 + q);
        let ip = p_hat.mul(&i_unit);
        images[e.coord] = Some(t.add(&ip));
        images[e.coord + n] = Some(t.sub(&ip));
    }
    Ok(Realization { names, images: images.into_iter().map(|x| x.expect("all variables resolved")).collect() })
}
