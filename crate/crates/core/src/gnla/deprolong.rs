use num_traits::Zero;

use super::{standard_names, Gnla, GnlaBuilder};
use crate::error::{Error, Result};
use crate::exactmath::{Rat, Span};

/// Symbol of the deprolonged distribution: quotient g_{-1} by the level-2
/// Cauchy direction `x`, move g_{-2} into grade -1 (last), shift every deeper
/// grade up by one and keep only brackets compatible with the new grading.
pub fn deprolong(m: &Gnla) -> Result<Gnla> {
    let dims = m.dims();
    if dims.len() < 3 || dims[0] != 2 || dims[1] != 1 {
        return Err(Error::NotDeprolongable(format!("growth {dims:?} does not start (2,1,…) with depth >= 3")));
    }
    let cauchy = m.cauchy_directions(2)?;
    if cauchy.len() != 1 {
        return Err(Error::NotDeprolongable(format!(
            "level-2 Cauchy directions have dimension {}, need 1",
            cauchy.len()
        )));
    }
    let g1 = m.grade_range(1);
    let mut x = vec![Rat::zero(); m.dim()];
    for (i, c) in g1.clone().zip(&cauchy[0]) {
        x[i] = c.clone();
    }
    let mut span = Span::new();
    span.insert(&x);
    let comp = g1.clone().find(|&i| span.insert(&m.unit(i))).expect("complement in g-1");

    // New basis: old index and new grade.
    let mut new: Vec<(usize, usize)> = vec![(comp, 1)];
    new.extend(m.grade_range(2).map(|i| (i, 1)));
    for k in 3..=m.depth() {
        new.extend(m.grade_range(k).map(|i| (i, k - 1)));
    }
    let new_dims: Vec<usize> = (1..m.depth()).map(|k| new.iter().filter(|(_, g)| *g == k).count()).collect();
    let names: Vec<String> = standard_names(&new_dims).into_iter().map(|(s, _)| s).collect();
    let pos = |old: usize| new.iter().position(|(o, _)| *o == old);

    let mut b = GnlaBuilder::new();
    for ((_, g), name) in new.iter().zip(&names) {
        b = b.elem(name, *g);
    }
    for (p, &(i, gi)) in new.iter().enumerate() {
        for (q, &(j, gj)) in new.iter().enumerate().skip(p + 1) {
            let v = m.bracket(&m.unit(i), &m.unit(j));
            let mut terms = Vec::new();
            for (c, k) in v.iter().enumerate().filter(|(_, k)| !k.is_zero()) {
                let Some(r) = pos(c) else { continue };
                if new[r].1 == gi + gj {
                    terms.push((names[r].clone(), k.clone()));
                }
            }
            if !terms.is_empty() {
                b = b.rel_rat(&names[p], &names[q], terms);
            }
        }
    }
    let d = b.build()?;
    if let Some(v) = d.validate().violation {
        return Err(Error::NotDeprolongable(format!("induced bracket is not a Lie bracket: {v}")));
    }
    let f = d.is_fundamental();
    if !f.fundamental {
        return Err(Error::NotDeprolongable(format!(
            "induced symbol is not fundamental: {} (witness {})",
            f.reason.unwrap_or_default(),
            f.witness.unwrap_or_default()
        )));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gnla::{gou, hc, heis3};

    #[test]
    fn goursat_tower() {
        for n in 3..=8 {
            assert!(deprolong(&gou(n).unwrap()).unwrap().same_structure(&gou(n - 1).unwrap()), "n = {n}");
        }
        assert!(deprolong(&gou(3).unwrap()).unwrap().same_structure(&heis3()));
    }

    #[test]
    fn hilbert_cartan_is_not_deprolongable() {
        assert!(matches!(deprolong(&hc()), Err(Error::NotDeprolongable(_))));
    }
}
