use serde::{Deserialize, Serialize};

use super::{Gnla, GnlaBuilder};
use crate::error::{Error, Result};
use crate::exactmath::{fmt_rat, parse_rat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GnlaJson {
    pub depth: usize,
    pub dims: Vec<usize>,
    pub basis: Vec<BasisJson>,
    pub brackets: Vec<BracketJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub name: String,
    pub grade: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketJson {
    pub a: String,
    pub b: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub coeff: String,
}

impl Gnla {
    /// Grades are written as negative integers (`-k` for g_{-k}); only
    /// brackets `[a,b]` with `a` before `b` are listed.
    pub fn to_json(&self) -> GnlaJson {
        let n = self.dim();
        let mut brackets = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let t = self.bracket_basis(a, b);
                if !t.is_empty() {
                    brackets.push(BracketJson {
                        a: self.name(a).into(),
                        b: self.name(b).into(),
                        terms: t.iter().map(|(c, k)| TermJson { c: self.name(*c).into(), coeff: fmt_rat(k) }).collect(),
                    });
                }
            }
        }
        GnlaJson {
            depth: self.depth(),
            dims: self.dims(),
            basis: (0..n).map(|i| BasisJson { name: self.name(i).into(), grade: -(self.grade(i) as i64) }).collect(),
            brackets,
        }
    }

    pub fn from_json(j: &GnlaJson) -> Result<Gnla> {
        let mut b = GnlaBuilder::new();
        for e in &j.basis {
            if e.grade == 0 {
                return Err(Error::Input(format!("element {} has grade 0", e.name)));
            }
            b = b.elem(&e.name, e.grade.unsigned_abs() as usize);
        }
        for br in &j.brackets {
            let terms = br
                .terms
                .iter()
                .map(|t| {
                    parse_rat(&t.coeff)
                        .map(|k| (t.c.clone(), k))
                        .ok_or_else(|| Error::Input(format!("bad coefficient {:?}", t.coeff)))
                })
                .collect::<Result<Vec<_>>>()?;
            b = b.rel_rat(&br.a, &br.b, terms);
        }
        let m = b.build()?;
        if m.depth() != j.depth || m.dims() != j.dims {
            return Err(Error::Input(format!(
                "declared depth/dims {}/{:?} do not match the basis ({}/{:?})",
                j.depth,
                j.dims,
                m.depth(),
                m.dims()
            )));
        }
        Ok(m)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Gnla> {
        Gnla::from_json(&serde_json::from_str(s)?)
    }
}
