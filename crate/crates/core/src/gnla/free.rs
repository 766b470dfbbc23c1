//! Free nilpotent GNLA on two generators, realized on the Lyndon basis.
//!
//! Each Lyndon word `w` stands for its standard bracketing `P_w`, expanded in
//! the tensor algebra. `P_w = w + (lexicographically larger words)`, so a
//! Lie polynomial is decomposed by repeatedly peeling off its smallest word.

use std::collections::BTreeMap;

use super::{Gnla, GnlaBuilder};
use crate::error::{Error, Result};
use crate::exactmath::Rat;

/// Largest depth accepted by `free_gnla` unless `GNLA_MAX_DEPTH` says otherwise.
pub const MAX_FREE_DEPTH: usize = 10;

type Word = Vec<u8>;
type TensorPoly = BTreeMap<Word, i128>;

fn configured_limit() -> usize {
    std::env::var("GNLA_MAX_DEPTH").ok().and_then(|s| s.parse().ok()).unwrap_or(MAX_FREE_DEPTH)
}

fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Lyndon words over `{0 < 1}` of length `1..=max_len`, by length then lexicographically.
pub fn lyndon_words(max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for bits in 0u32..(1 << len) {
            let w: Word = (0..len).map(|i| ((bits >> (len - 1 - i)) & 1) as u8).collect();
            if is_lyndon(&w) {
                out.push(w);
            }
        }
    }
    out
}

fn word_name(w: &[u8]) -> String {
    w.iter().map(|&c| if c == 0 { 'a' } else { 'b' }).collect()
}

/// Standard factorization `w = uv` with `v` the longest proper Lyndon suffix.
fn standard_factor(w: &[u8]) -> (&[u8], &[u8]) {
    let i = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("word of length >= 2");
    (&w[..i], &w[i..])
}

fn tensor_mul(p: &TensorPoly, q: &TensorPoly) -> TensorPoly {
    let mut out = TensorPoly::new();
    for (u, a) in p {
        for (v, b) in q {
            let mut w = u.clone();
            w.extend_from_slice(v);
            *out.entry(w).or_insert(0) += a * b;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn commutator(p: &TensorPoly, q: &TensorPoly) -> TensorPoly {
    let mut out = tensor_mul(p, q);
    for (w, c) in tensor_mul(q, p) {
        *out.entry(w).or_insert(0) -= c;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `(1/k) Σ_{d|k} μ(d) 2^{k/d}`, the number of Lyndon words of length `k`.
pub fn necklace_dim(k: u32) -> u128 {
    fn mobius(mut n: u32) -> i128 {
        let mut result = 1;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if n > 1 {
            result = -result;
        }
        result
    }
    assert!(k >= 1 && k < 127, "necklace_dim needs 1 <= k < 127");
    let total: i128 = (1..=k).filter(|d| k % d == 0).map(|d| mobius(d) * (1i128 << (k / d))).sum();
    (total / k as i128) as u128
}

/// Free nilpotent GNLA on generators `a < b` truncated at `depth`; basis
/// elements are named by their Lyndon words.
pub fn free_gnla(depth: usize) -> Result<Gnla> {
    let limit = configured_limit();
    if depth == 0 {
        return Err(Error::Input("free GNLA needs depth >= 1".into()));
    }
    if depth > limit {
        return Err(Error::Resource(format!("free GNLA depth {depth} exceeds the limit {limit}")));
    }
    let words = lyndon_words(depth);
    let mut polys: BTreeMap<Word, TensorPoly> = BTreeMap::new();
    for w in &words {
        let p = if w.len() == 1 {
            TensorPoly::from([(w.clone(), 1)])
        } else {
            let (u, v) = standard_factor(w);
            commutator(&polys[u], &polys[v])
        };
        polys.insert(w.clone(), p);
    }
    let mut b = GnlaBuilder::new();
    for w in &words {
        b = b.elem(&word_name(w), w.len());
    }
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            if u.len() + v.len() > depth {
                continue;
            }
            let mut rest = commutator(&polys[u], &polys[v]);
            let mut terms = Vec::new();
            while let Some((w, c)) = rest.iter().next().map(|(w, c)| (w.clone(), *c)) {
                let Some(pw) = polys.get(&w) else {
                    return Err(Error::InternalConsistency(format!(
                        "leading word {} of a Lie polynomial is not Lyndon",
                        word_name(&w)
                    )));
                };
                for (x, k) in pw {
                    *rest.entry(x.clone()).or_insert(0) -= c * k;
                }
                rest.retain(|_, k| *k != 0);
                terms.push((word_name(&w), Rat::from_integer(c.into())));
            }
            if !terms.is_empty() {
                b = b.rel_rat(&word_name(u), &word_name(v), terms);
            }
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn necklace_values() {
        assert_eq!(necklace_dim(1), 2);
        assert_eq!(necklace_dim(8), 30);
        assert_eq!(necklace_dim(20), 52377);
    }

    #[test]
    fn lyndon_counts_match_necklaces() {
        let words = lyndon_words(8);
        for k in 1..=8 {
            assert_eq!(words.iter().filter(|w| w.len() == k).count() as u128, necklace_dim(k as u32));
        }
    }

    #[test]
    fn free_one_is_abelian() {
        let f = free_gnla(1).unwrap();
        assert_eq!(f.dims(), vec![2]);
        assert!(f.bracket_basis(0, 1).is_empty());
    }

    #[test]
    fn free_three_is_valid() {
        let f = free_gnla(3).unwrap();
        assert_eq!(f.dims(), vec![2, 1, 2]);
        assert!(f.validate().ok);
        assert!(f.is_fundamental().fundamental);
    }
}
