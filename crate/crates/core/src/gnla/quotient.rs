use num_traits::Zero;

use super::{Gnla, GnlaBuilder};
use crate::error::Result;
use crate::exactmath::{member, Rat, Span};

/// Quotient of `m` by the graded ideal generated by the vectors `w` (full
/// coordinates, all in one grade). Basis elements of `m` not absorbed by the
/// ideal are kept greedily, in order, and keep their names.
pub fn quotient(m: &Gnla, w: &[Vec<Rat>]) -> Result<Gnla> {
    let n = m.dim();
    let g1: Vec<Vec<Rat>> = m.grade_range(1).map(|i| m.unit(i)).collect();
    // Ideal basis, grade by grade: I_{j+1} = [g_{-1}, I_j].
    let mut ideal: Vec<Vec<Vec<Rat>>> = vec![Vec::new(); m.depth() + 1];
    let mut level: Vec<Vec<Rat>> = Vec::new();
    let mut span = Span::new();
    for v in w {
        if span.insert(v) {
            level.push(v.clone());
        }
    }
    let Some(k0) = level.first().and_then(|v| v.iter().position(|x| !x.is_zero()).map(|i| m.grade(i))) else {
        return Ok(m.clone());
    };
    for k in k0..=m.depth() {
        ideal[k] = level.clone();
        let mut next = Vec::new();
        let mut span = Span::new();
        for g in &g1 {
            for v in &level {
                let b = m.bracket(g, v);
                if span.insert(&b) {
                    next.push(b);
                }
            }
        }
        level = next;
    }
    let mut kept = Vec::new();
    for k in 1..=m.depth() {
        let mut span = Span::new();
        for v in &ideal[k] {
            span.insert(v);
        }
        for i in m.grade_range(k) {
            if span.insert(&m.unit(i)) {
                kept.push(i);
            }
        }
    }
    let mut b = GnlaBuilder::new();
    for &i in &kept {
        b = b.elem(m.name(i), m.grade(i));
    }
    for (x, &i) in kept.iter().enumerate() {
        for &j in &kept[x + 1..] {
            let v = m.bracket(&m.unit(i), &m.unit(j));
            let Some(c) = v.iter().position(|x| !x.is_zero()).map(|p| m.grade(p)) else { continue };
            if c >= ideal.len() {
                continue;
            }
            let mut gens: Vec<Vec<Rat>> = kept.iter().filter(|&&p| m.grade(p) == c).map(|&p| m.unit(p)).collect();
            let nk = gens.len();
            gens.extend(ideal[c].iter().cloned());
            let coeffs = member(&v, &gens).expect("kept elements and ideal span the grade");
            let terms: Vec<(String, Rat)> = kept
                .iter()
                .filter(|&&p| m.grade(p) == c)
                .zip(&coeffs[..nk])
                .filter(|(_, x)| !x.is_zero())
                .map(|(&p, x)| (m.name(p).to_string(), x.clone()))
                .collect();
            if !terms.is_empty() {
                b = b.rel_rat(m.name(i), m.name(j), terms);
            }
        }
    }
    let q = b.build()?;
    debug_assert_eq!(q.dim() + ideal.iter().map(Vec::len).sum::<usize>(), n);
    q.ensure_valid()?;
    q.ensure_fundamental()?;
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gnla::{free_gnla, hc};

    #[test]
    fn trivial_quotient() {
        let m = hc();
        assert!(quotient(&m, &[]).unwrap().same_structure(&m));
    }

    #[test]
    fn free_three_mod_grade_three() {
        let f = free_gnla(3).unwrap();
        let w: Vec<Vec<Rat>> = f.grade_range(3).map(|i| f.unit(i)).collect();
        let q = quotient(&f, &w).unwrap();
        assert_eq!(q.dims(), vec![2, 1]);
    }
}
