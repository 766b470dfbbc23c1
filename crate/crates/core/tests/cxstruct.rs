use crsym::cxstruct::{
    der0_shape, invariant_j_exists, normalize_j, validate_j, ComplexStructure, Der0Shape, JJson, JSpec,
};
use crsym::exactmath::{int, rat, Rat, RatMatrix};
use crsym::gnla::{ell6, ell7, free_gnla, gou, hc, ngou};
use crsym::prolong::{cr_g0, graded_automorphism};
use crsym::Error;
use num_traits::Signed;
use rand::{rngs::StdRng, Rng, SeedableRng};

#[test]
fn goursat_normalizes_to_standard() {
    let m = gou(6).unwrap();
    let j = ComplexStructure::from_ab(int(3), int(7)).unwrap();
    let n = normalize_j(&m, &j).unwrap();
    assert_eq!((n.normal.a(), n.normal.b()), (int(1), int(0)));
    assert_eq!(n.shape, Der0Shape::LowerBorel);
    let prod = n.factors.iter().fold(RatMatrix::identity(2), |acc, f| acc.mul(&f.matrix()));
    assert_eq!(prod, n.g);
    assert!(m.is_derivation(&RatMatrix::zeros(m.dim(), m.dim())));
    assert!(graded_automorphism(&m, &n.g).is_ok());
}

#[test]
fn ngou_keeps_b() {
    let m = ngou(5).unwrap();
    let n = normalize_j(&m, &ComplexStructure::from_ab(int(2), int(5)).unwrap()).unwrap();
    assert_eq!((n.normal.a(), n.normal.b()), (int(1), int(5)));
    let m7 = ngou(7).unwrap();
    let n = normalize_j(&m7, &ComplexStructure::standard()).unwrap();
    assert_eq!((n.normal.a(), n.normal.b()), (int(1), int(0)));
}

#[test]
fn normalization_is_idempotent() {
    for (m, j) in [
        (gou(5).unwrap(), ComplexStructure::from_ab(rat(-2, 3), int(4)).unwrap()),
        (ngou(7).unwrap(), ComplexStructure::from_ab(int(-3), rat(1, 2)).unwrap()),
        (hc(), ComplexStructure::from_ab(int(5), int(-1)).unwrap()),
    ] {
        let once = normalize_j(&m, &j).unwrap().normal;
        let twice = normalize_j(&m, &once).unwrap().normal;
        assert_eq!(once, twice);
    }
}

#[test]
fn ngou_invariant_under_diagonal_conjugation() {
    let mut rng = StdRng::seed_from_u64(7);
    let m = ngou(5).unwrap();
    let j = ComplexStructure::from_ab(int(2), rat(5, 3)).unwrap();
    for _ in 0..20 {
        let p: i64 = rng.gen_range(1..9) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let q: i64 = rng.gen_range(1..9);
        let d = RatMatrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), rat(p, q)]]);
        let moved = j.conjugate(&d).unwrap();
        assert_eq!(normalize_j(&m, &moved).unwrap().normal.b(), rat(5, 3));
    }
}

#[test]
fn unsupported_shape_errors() {
    // der0(ell6)|g-1 is co(2).
    assert!(matches!(normalize_j(&ell6(), &ComplexStructure::standard()), Err(Error::UnsupportedDer0(_))));
}

#[test]
fn shapes() {
    assert_eq!(der0_shape(&hc()).0, Der0Shape::Gl2);
    assert_eq!(der0_shape(&gou(4).unwrap()).0, Der0Shape::LowerBorel);
    assert_eq!(der0_shape(&ngou(5).unwrap()).0, Der0Shape::DiagonalCartan);
}

#[test]
fn invariant_j() {
    let r = invariant_j_exists(&ell6());
    assert!(r.exists);
    let w = r.witness.unwrap();
    assert!(w.trace() == int(0) && w.det().is_positive());
    // The commutant of the class is the CR g0 with r = 2.
    assert_eq!(cr_g0(&ell6(), &w).len(), 2);
    assert!(invariant_j_exists(&ell7()).exists);
    assert!(invariant_j_exists(&free_gnla(4).unwrap()).exists);
    for n in 4..=8 {
        assert!(!invariant_j_exists(&gou(n).unwrap()).exists);
    }
}

#[test]
fn j_json_roundtrip() {
    let j = JSpec::Exact(ComplexStructure::from_ab(int(2), rat(-1, 3)).unwrap());
    let s = serde_json::to_string(&j.to_json()).unwrap();
    assert_eq!(s, r#"{"a":"2","b":"-1/3"}"#);
    let back = JSpec::from_json(&serde_json::from_str::<JJson>(&s).unwrap()).unwrap();
    assert_eq!(back, j);
    let c = JSpec::TracelessClass(RatMatrix::from_i64(&[&[0, -2], &[1, 0]]));
    let s = serde_json::to_string(&c.to_json()).unwrap();
    assert_eq!(JSpec::from_json(&serde_json::from_str::<JJson>(&s).unwrap()).unwrap(), c);
    assert!(validate_j(j.matrix()));
    let _: Rat = int(0);
}
