//! Named symbols: Goursat and non-Goursat filiform algebras, the Heisenberg
//! algebra, the Hilbert–Cartan symbol, the elliptic series and the two
//! reductions of the free depth-5 algebra.

use num_traits::Zero;

use super::{free_gnla, quotient, Gnla, GnlaBuilder};
use crate::error::{Error, Result};
use crate::exactmath::{rat, Rat, RatMatrix, Span};

fn gou_names(n: usize) -> Vec<String> {
    (2..=n).map(|k| format!("e{k}")).collect()
}

/// Goursat symbol: `[e1',e1''] = e2`, `[e1',e_k] = e_{k+1}`.
pub fn gou(n: usize) -> Result<Gnla> {
    if n < 2 {
        return Err(Error::Input(format!("Gou(n) needs n >= 2, got {n}")));
    }
    let names = gou_names(n);
    let mut b = GnlaBuilder::new().elems(&["e1'", "e1''"], 1);
    for (k, name) in (2..=n).zip(&names) {
        b = b.elem(name, k);
    }
    b = b.rel("e1'", "e1''", &[("e2", 1)]);
    for k in 2..n {
        b = b.rel("e1'", &format!("e{k}"), &[(&format!("e{}", k + 1), 1)]);
    }
    b.build()
}

/// Non-Goursat filiform symbol of odd depth `n = 2k+1 ≥ 5`.
pub fn ngou(n: usize) -> Result<Gnla> {
    if n < 5 || n % 2 == 0 {
        return Err(Error::Input(format!(
            "nGou(n) exists only for odd n >= 5 (got {n}); even depth admits no such symbol"
        )));
    }
    let k = (n - 1) / 2;
    let name = |j: usize| if j == 1 { "e1''".to_string() } else { format!("e{j}") };
    let mut b = GnlaBuilder::new().elems(&["e1'", "e1''"], 1);
    for j in 2..=n {
        b = b.elem(&format!("e{j}"), j);
    }
    b = b.rel("e1'", "e1''", &[("e2", 1)]);
    for i in 2..=n - 2 {
        b = b.rel("e1'", &format!("e{i}"), &[(&format!("e{}", i + 1), 1)]);
    }
    let top = format!("e{n}");
    for j in 1..=k {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        b = b.rel(&name(j), &name(n - j), &[(&top, sign)]);
    }
    b.build()
}

pub fn heis3() -> Gnla {
    gou(2).expect("heis3")
}

fn hc_builder() -> GnlaBuilder {
    GnlaBuilder::new()
        .elems(&["e1'", "e1''"], 1)
        .elem("e2", 2)
        .elems(&["e3'", "e3''"], 3)
        .rel("e1'", "e1''", &[("e2", 1)])
        .rel("e1'", "e2", &[("e3'", 1)])
        .rel("e1''", "e2", &[("e3''", 1)])
}

/// Hilbert–Cartan symbol, growth (2,1,2).
pub fn hc() -> Gnla {
    hc_builder().build().expect("hc")
}

fn ell6_builder() -> GnlaBuilder {
    hc_builder().elem("e4", 4).rel("e1'", "e3'", &[("e4", 1)]).rel("e1''", "e3''", &[("e4", 1)])
}

pub fn ell6() -> Gnla {
    ell6_builder().build().expect("ell6")
}

pub fn ell7() -> Gnla {
    hc_builder()
        .elems(&["e4'", "e4''"], 4)
        .rel("e1'", "e3'", &[("e4'", 1)])
        .rel("e1''", "e3''", &[("e4'", -1)])
        .rel("e1'", "e3''", &[("e4''", 1)])
        .rel("e1''", "e3'", &[("e4''", 1)])
        .build()
        .expect("ell7")
}

pub fn ell8() -> Gnla {
    ell6_builder()
        .elems(&["e5'", "e5''"], 5)
        .rel("e1'", "e4", &[("e5'", 1)])
        .rel("e2", "e3''", &[("e5'", 1)])
        .rel("e1''", "e4", &[("e5''", 1)])
        .rel("e2", "e3'", &[("e5''", -1)])
        .build()
        .expect("ell8")
}

/// Casimir `EF + FE + H²/2` of the sl2 acting on g_{-5} of the free depth-5
/// algebra, with H = diag(1,-1), E: b ↦ a, F: a ↦ b on g_{-1}.
fn free5_casimir(m: &Gnla) -> Result<RatMatrix> {
    let one = Rat::from_integer(1.into());
    let h = RatMatrix::from_rows(vec![vec![one.clone(), Rat::zero()], vec![Rat::zero(), -one.clone()]]);
    let e = RatMatrix::from_rows(vec![vec![Rat::zero(), one.clone()], vec![Rat::zero(), Rat::zero()]]);
    let f = RatMatrix::from_rows(vec![vec![Rat::zero(), Rat::zero()], vec![one, Rat::zero()]]);
    let (h, e, f) = (m.extend_derivation(&h)?, m.extend_derivation(&e)?, m.extend_derivation(&f)?);
    Ok(e.mul(&f).add(&f.mul(&e)).add(&h.mul(&h).scale(&rat(1, 2))))
}

/// Eigenvectors of the Casimir with the given eigenvalue inside g_{-5}.
fn casimir_part(m: &Gnla, eigen: Rat) -> Result<Vec<Vec<Rat>>> {
    let c = free5_casimir(m)?;
    let shifted = c.sub(&RatMatrix::identity(m.dim()).scale(&eigen));
    let r5 = m.grade_range(5);
    Ok(shifted
        .nullspace()
        .into_iter()
        .filter(|v| v.iter().enumerate().any(|(i, x)| !x.is_zero() && r5.contains(&i)))
        .map(|v| v.iter().enumerate().map(|(i, x)| if r5.contains(&i) { x.clone() } else { Rat::zero() }).collect())
        .collect())
}

/// Rewrites a reduction of the free depth-5 algebra in the named basis
/// `e2 = [e1',e1'']`, `e3' = [e1',e2]`, `e3'' = [e1'',e2]`,
/// `e4' = [e1',e3']`, `e4'' = [e1',e3'']`, `e4''' = [e1'',e3'']`, grade 5 by
/// greedy brackets of g_{-1} with g_{-4}.
fn name_reduction(q: &Gnla) -> Result<Gnla> {
    let u = |i: usize| q.unit(i);
    let a = u(0);
    let b = u(1);
    let e2 = q.bracket(&a, &b);
    let e3p = q.bracket(&a, &e2);
    let e3pp = q.bracket(&b, &e2);
    let e4 = [q.bracket(&a, &e3p), q.bracket(&a, &e3pp), q.bracket(&b, &e3pp)];
    let mut nb: Vec<(String, Vec<Rat>)> = vec![
        ("e1'".into(), a.clone()),
        ("e1''".into(), b.clone()),
        ("e2".into(), e2),
        ("e3'".into(), e3p),
        ("e3''".into(), e3pp),
        ("e4'".into(), e4[0].clone()),
        ("e4''".into(), e4[1].clone()),
        ("e4'''".into(), e4[2].clone()),
    ];
    let mut span = Span::new();
    let mut count = 0;
    for g in [&a, &b] {
        for x in &e4 {
            let v = q.bracket(g, x);
            if span.insert(&v) {
                count += 1;
                nb.push((format!("e5{}", "'".repeat(count)), v));
            }
        }
    }
    q.change_basis(&nb)
}

/// Free depth-5 algebra modulo the 4-dimensional irreducible part of g_{-5};
/// growth (2,1,2,3,2).
pub fn mprime5() -> Result<Gnla> {
    let f = free_gnla(5)?;
    let w = casimir_part(&f, rat(15, 2))?;
    name_reduction(&quotient(&f, &w)?)
}

/// Free depth-5 algebra modulo the 2-dimensional irreducible part of g_{-5};
/// growth (2,1,2,3,4).
pub fn mdblprime5() -> Result<Gnla> {
    let f = free_gnla(5)?;
    let w = casimir_part(&f, rat(3, 2))?;
    name_reduction(&quotient(&f, &w)?)
}

/// Looks up a catalog algebra by name and optional size parameter.
pub fn catalog(name: &str, param: Option<usize>) -> Result<Gnla> {
    let need = || param.ok_or_else(|| Error::Input(format!("{name} needs a size parameter, e.g. {name}:5")));
    match name.to_ascii_lowercase().as_str() {
        "gou" => gou(need()?),
        "ngou" => ngou(need()?),
        "heis3" | "heis" => Ok(heis3()),
        "hc" | "m_hc" => Ok(hc()),
        "ell6" => Ok(ell6()),
        "ell7" => Ok(ell7()),
        "ell8" => Ok(ell8()),
        "mprime5" => mprime5(),
        "mdblprime5" => mdblprime5(),
        "free" => free_gnla(need()?),
        other => Err(Error::Input(format!("unknown catalog algebra {other}"))),
    }
}

/// Parses `name` or `name:n` (e.g. `gou:5`, `hc`, `free:4`).
pub fn from_spec(spec: &str) -> Result<Gnla> {
    match spec.split_once(':') {
        Some((name, n)) => {
            let n: usize = n.trim().parse().map_err(|_| Error::Input(format!("bad size parameter in {spec}")))?;
            catalog(name.trim(), Some(n))
        }
        None => catalog(spec.trim(), None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ngou_rejects_even_and_small() {
        assert!(ngou(6).is_err());
        assert!(ngou(3).is_err());
        assert!(ngou(7).is_ok());
    }

    #[test]
    fn spec_strings() {
        assert_eq!(from_spec("gou:4").unwrap().dims(), vec![2, 1, 1, 1]);
        assert_eq!(from_spec("hc").unwrap().dims(), vec![2, 1, 2]);
        assert!(from_spec("gou").is_err());
        assert!(from_spec("nope").is_err());
    }
}
