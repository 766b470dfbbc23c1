use crsym::exactmath::{int, Rat, RatMatrix};
use crsym::extend::{
    action_matrix, classify_hc_extension, classify_hc_plane, coboundary, cocycles, cocycles_at, differential,
    enumerate_211, extend, g0_action, normal_form_211, support_pairs, Cochain, ExtensionTag,
};
use crsym::gnla::{ell6, ell7, ell8, gou, hc, heis3, mprime5, ngou};
use crsym::prolong::der0;
use crsym::{Error, Gnla};
use num_traits::Zero;

fn hc_cochain(m: &Gnla, mat: [[i64; 2]; 2]) -> Cochain {
    let e1 = [m.index("e1'").unwrap(), m.index("e1''").unwrap()];
    let e3 = [m.index("e3'").unwrap(), m.index("e3''").unwrap()];
    let mut w = Cochain::zero(4);
    for i in 0..2 {
        for j in 0..2 {
            w.set(e1[i], e3[j], int(mat[i][j]));
        }
    }
    w
}

fn named(m: &Gnla, pairs: &[(&str, &str, i64)]) -> Cochain {
    let mut w = Cochain::zero(m.depth() + 1);
    for (a, b, v) in pairs {
        w.set(m.index(a).unwrap(), m.index(b).unwrap(), int(*v));
    }
    w
}

fn is_cocycle(m: &Gnla, w: &Cochain) -> bool {
    let n = m.dim();
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| differential(m, w, &m.unit(x), &m.unit(y), &m.unit(z)).is_zero()))
    })
}

#[test]
fn cocycle_dimensions() {
    assert_eq!(cocycles(&hc()).len(), 3);
    assert_eq!(cocycles(&gou(4).unwrap()).len(), 2);
    for n in 2..=9 {
        assert!(cocycles(&gou(n).unwrap()).len() <= 2, "n = {n}");
    }
    for n in [5, 7] {
        assert!(cocycles(&ngou(n).unwrap()).len() <= 2);
    }
}

#[test]
fn ngou_extensions_are_not_fundamental() {
    for n in [5, 7] {
        let m = ngou(n).unwrap();
        let cs = cocycles(&m);
        let e1 = m.index("e1'").unwrap();
        for w in &cs {
            for j in m.grade_range(n) {
                assert!(w.eval_basis(e1, j).is_zero());
                assert!(w.eval_basis(m.index("e1''").unwrap(), j).is_zero());
            }
            assert!(matches!(extend(&m, &[w.clone()]), Err(Error::NotFundamental { .. })));
        }
    }
}

#[test]
fn coboundaries_are_cocycles() {
    for m in [hc(), ell6(), ell8(), gou(5).unwrap(), mprime5().unwrap()] {
        for t in 2..=m.depth() {
            let d = m.grade_range(t).len();
            for i in 0..d {
                let mut f = vec![Rat::zero(); d];
                f[i] = int(1);
                assert!(is_cocycle(&m, &coboundary(&m, t, &f)));
            }
            let _ = cocycles_at(&m, t);
        }
        // No coboundaries in degree ν+1: the support of the top degree has
        // no grade to pair with.
        assert!(m.grade_range(m.depth() + 1).is_empty());
    }
}

#[test]
fn identity_cocycle_gives_ell6() {
    let m = hc();
    let e = extend(&m, &[hc_cochain(&m, [[1, 0], [0, 1]])]).unwrap();
    assert!(e.same_structure(&ell6()));
}

#[test]
fn ell7_from_two_cocycles() {
    let m = hc();
    let w1 = hc_cochain(&m, [[1, 0], [0, -1]]);
    let w2 = hc_cochain(&m, [[0, 1], [1, 0]]);
    assert!(extend(&m, &[w1.clone(), w2.clone()]).unwrap().same_structure(&ell7()));
    assert_eq!(classify_hc_plane(&m, &w1, &w2).unwrap().tag, ExtensionTag::Elliptic);
}

#[test]
fn ell8_from_ell6() {
    let m = ell6();
    let w1 = named(&m, &[("e1'", "e4", 1), ("e2", "e3''", 1)]);
    let w2 = named(&m, &[("e1''", "e4", 1), ("e2", "e3'", -1)]);
    let e = extend(&m, &[w1, w2]).unwrap();
    assert!(e.same_structure(&ell8()));
    assert_eq!(e.growth().reduced, vec![2, 1, 2, 1, 2]);
}

#[test]
fn extension_then_truncation_is_identity() {
    for m in [hc(), ell6(), gou(5).unwrap()] {
        for w in cocycles(&m) {
            if let Ok(e) = extend(&m, &[w]) {
                assert!(e.truncate(m.depth()).same_structure(&m));
            }
        }
    }
}

#[test]
fn hc_classification() {
    let m = hc();
    assert_eq!(classify_hc_extension(&m, &hc_cochain(&m, [[1, 0], [0, 1]])).unwrap().tag, ExtensionTag::Elliptic);
    assert_eq!(classify_hc_extension(&m, &hc_cochain(&m, [[1, 0], [0, -1]])).unwrap().tag, ExtensionTag::Hyperbolic);
    assert_eq!(classify_hc_extension(&m, &hc_cochain(&m, [[1, 0], [0, 0]])).unwrap().tag, ExtensionTag::Parabolic);
}

#[test]
fn grading_element_scales_cocycles() {
    for m in [hc(), ell6(), gou(4).unwrap()] {
        let z = &der0(&m)[0];
        for w in cocycles(&m) {
            assert_eq!(g0_action(&m, z, &w), w.scale(&int(m.depth() as i64 + 1)));
        }
    }
}

#[test]
fn sl2_acts_adjointly_on_hc_cocycles() {
    let m = hc();
    let basis = cocycles(&m);
    let d0 = der0(&m);
    // Traceless part of the action: H = diag(1,-1) on g-1 has eigenvalues 2, 0, -2.
    let h = crsym::prolong::extend_derivation(&m, &RatMatrix::from_i64(&[&[1, 0], &[0, -1]])).unwrap();
    let a = action_matrix(&m, &h, &basis).unwrap();
    for ev in [2i64, 0, -2] {
        let s = a.sub(&RatMatrix::identity(3).scale(&int(ev)));
        assert_eq!(s.nullspace().len(), 1, "eigenvalue {ev}");
    }
    for d in &d0 {
        action_matrix(&m, d, &basis).unwrap();
    }
}

#[test]
fn type_is_invariant_along_group_directions() {
    use crsym::exactmath::rat;
    let m = hc();
    let group: Vec<RatMatrix> = vec![
        RatMatrix::from_rows(vec![vec![int(1), rat(3, 2)], vec![int(0), int(1)]]),
        RatMatrix::from_rows(vec![vec![int(1), int(0)], vec![rat(-2, 5), int(1)]]),
        RatMatrix::from_rows(vec![vec![int(2), int(0)], vec![int(0), rat(1, 2)]]),
        RatMatrix::from_rows(vec![vec![int(3), int(0)], vec![int(0), int(1)]]),
        RatMatrix::from_rows(vec![vec![int(-1), int(0)], vec![int(0), int(1)]]),
    ];
    for mat in [[[1, 0], [0, 1]], [[1, 0], [0, -1]], [[1, 0], [0, 0]], [[2, 1], [1, 3]], [[0, 1], [1, 0]]] {
        let w = hc_cochain(&m, mat);
        let tag = classify_hc_extension(&m, &w).unwrap().tag;
        for g1 in &group {
            let g = crsym::prolong::graded_automorphism(&m, g1).unwrap();
            let ginv = g.inverse().unwrap();
            let mut moved = Cochain::zero(4);
            for (a, b) in support_pairs(&m, 4) {
                moved.set(a, b, w.eval(&ginv.column(a), &ginv.column(b)));
            }
            assert!(is_cocycle(&m, &moved));
            assert_eq!(classify_hc_extension(&m, &moved).unwrap().tag, tag);
        }
    }
}

#[test]
fn enumeration_reproduces_the_tower() {
    let r = enumerate_211(9).unwrap();
    let counts: Vec<usize> = r.iter().map(|d| d.classes.len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 1, 2, 1, 2]);
    for d in &r {
        assert!(d.classes.contains(&format!("Gou({})", d.depth)));
        if d.depth >= 5 && d.depth % 2 == 1 {
            assert!(d.classes.contains(&format!("nGou({})", d.depth)));
        }
    }
}

#[test]
fn normal_form_recognizes_catalog() {
    assert_eq!(normal_form_211(&gou(6).unwrap()).unwrap().0, "Gou(6)");
    assert_eq!(normal_form_211(&ngou(7).unwrap()).unwrap().0, "nGou(7)");
    assert!(normal_form_211(&hc()).is_err());
    assert!(normal_form_211(&heis3()).is_err());
    let _ = support_pairs(&hc(), 4);
}
