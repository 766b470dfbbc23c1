use crsym::crmodel::fixtures::{fixture, FIXTURES};
use crsym::crmodel::{closure, model_symbol, realify, tangency, verify_all, CrModel};
use crsym::exactmath::{int, rat};
use crsym::extend::ExtensionTag;
use crsym::{Error, Rat};

#[test]
fn all_fixtures_parse_and_realify() {
    for (name, src) in FIXTURES {
        let m = CrModel::parse(src).unwrap_or_else(|e| panic!("{name}: {e}"));
        realify(&m).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn eng_realification() {
    let m = fixture("ENG").unwrap();
    let r = realify(&m).unwrap();
    let d = r.describe(&m);
    assert!(d[0] == "z = x + i*y" || d[0] == "z = i*y + x", "{}", d[0]);
    assert!(d[1].starts_with("u = t_u"), "{}", d[1]);
}

#[test]
fn listed_fields_are_tangent() {
    for (name, _) in FIXTURES {
        let m = fixture(name).unwrap();
        let r = realify(&m).unwrap();
        for f in m.symmetries() {
            let rep = tangency(&m, &r, f);
            assert!(rep.tangent, "{name} {}: {:?}", f.name, rep.residuals);
        }
    }
}

#[test]
fn rotation_probes_fail_off_the_special_values() {
    for name in ["2121", "2122"] {
        let m = fixture(name).unwrap();
        let r = realify(&m).unwrap();
        let reps = verify_all(&m, &r).unwrap();
        let probe = reps.iter().find(|x| x.field == "S0J").unwrap();
        assert!(!probe.tangent);
        assert!(!probe.residuals.is_empty());
    }
}

#[test]
fn closure_dimensions() {
    for (name, dim, clique) in [
        ("ENG", 5, None),
        ("CAR", 7, None),
        ("2121", 7, Some(4)),
        ("2121_ainf", 8, None),
        ("2122", 8, Some(5)),
        ("2122_special", 9, None),
        ("2123", 10, Some(6)),
        ("G2B", 7, Some(3)),
    ] {
        let m = fixture(name).unwrap();
        let c = closure(&m).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(c.dim, dim, "{name}");
        assert!(c.jacobi, "{name}");
        assert!(c.degenerate.is_empty(), "{name}: {:?}", c.degenerate);
        if let Some(k) = clique {
            assert_eq!(c.commuting.len(), k, "{name}: {:?}", c.commuting);
        }
    }
}

#[test]
fn closure_dimension_matches_symbol_bound() {
    for (name, params) in [
        ("ENG", vec![]),
        ("CAR", vec![]),
        ("2121", vec![("a", int(1))]),
        ("2121_ainf", vec![]),
        ("2122", vec![("a", int(1)), ("b", int(2))]),
        ("2122_special", vec![]),
        ("2123", vec![]),
        ("G2B", vec![("eps", int(2))]),
    ] {
        let m = fixture(name).unwrap();
        let vals: Vec<_> = params.iter().map(|(p, v)| (p.to_string(), v.clone())).collect();
        let m = m.specialize(&vals).unwrap();
        let s = model_symbol(&m).unwrap_or_else(|e| panic!("{name}: {e}"));
        let c = closure(&m).unwrap();
        assert_eq!(s.bound, c.dim, "{name}: {:?} r={}", s.gnla.dims(), s.r);
    }
}

#[test]
fn symbol_labels() {
    for (name, label) in [
        ("ENG", "Gou(3)"),
        ("CAR", "m_HC"),
        ("2121_ainf", "ell6"),
        ("2123", "free(4)"),
        ("G2B", "nGou(5)"),
    ] {
        let m = fixture(name).unwrap().specialize(&[]).unwrap();
        let m = if m.params.is_empty() { m } else { m.specialize(&[("eps".into(), int(0))]).unwrap() };
        let s = model_symbol(&m).unwrap();
        assert_eq!(s.label.as_deref(), Some(label), "{name}");
    }
}

/// The weight-4 parts of S1' and S1'' are (4a+3)v and (4a-3)w, so the
/// cocycle matrix is proportional to diag(4a+3, 4a-3).
fn tag_2121(a: &Rat) -> ExtensionTag {
    let d = (int(4) * a + int(3)) * (int(4) * a - int(3));
    sign_tag(&d)
}

fn sign_tag(d: &Rat) -> ExtensionTag {
    if d > &int(0) {
        ExtensionTag::Elliptic
    } else if d < &int(0) {
        ExtensionTag::Hyperbolic
    } else {
        ExtensionTag::Parabolic
    }
}

#[test]
fn threshold_2121() {
    let m = fixture("2121").unwrap();
    for a in [int(2), rat(3, 2), int(1), rat(3, 4), int(0), rat(-3, 4), rat(-3, 2), int(-2)] {
        let s = model_symbol(&m.specialize(&[("a".into(), a.clone())]).unwrap()).unwrap();
        assert_eq!(s.extension.unwrap().tag, tag_2121(&a), "a = {a}");
    }
}

#[test]
fn threshold_2122() {
    let m = fixture("2122").unwrap();
    for (a, b) in [
        (int(0), int(0)),
        (rat(3, 4), int(0)),
        (int(0), rat(-3, 4)),
        (rat(1, 2), rat(1, 2)),
        (rat(3, 2), int(0)),
        (int(1), int(1)),
        (int(2), int(2)),
    ] {
        let s = model_symbol(&m.specialize(&[("a".into(), a.clone()), ("b".into(), b.clone())]).unwrap()).unwrap();
        let expected = sign_tag(&(rat(9, 16) - &a * &a - &b * &b));
        assert_eq!(s.extension.unwrap().tag, expected, "a = {a}, b = {b}");
    }
}

#[test]
fn parse_errors() {
    assert!(matches!(CrModel::parse("coord z : weight 1; coord u : weight 2; Im(u) = z^2;"), Err(Error::Reality(_))));
    match CrModel::parse("coord z : weight 1; coord u : weight 2; Im(u) = |z|^2 + Re(z^3);") {
        Err(Error::Homogeneity(msg)) => assert!(msg.contains("^3"), "{msg}"),
        other => panic!("{other:?}"),
    }
    assert!(matches!(CrModel::parse("coord z : weight 1; field S = d(q);"), Err(Error::Parse { .. })));
    assert!(matches!(CrModel::parse("coord z : weight 1; field S = conj(z)*d(z);"), Err(Error::Parse { .. })));
}

#[test]
fn non_tangent_field_is_reported() {
    let src = "coord z : weight 1; coord u : weight 2; Im(u) = |z|^2; field S = d(z);";
    let m = CrModel::parse(src).unwrap();
    let r = realify(&m).unwrap();
    match verify_all(&m, &r) {
        Err(Error::Tangency { field, residual }) => {
            assert_eq!(field, "S");
            assert!(residual.contains('x'), "{residual}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn cyclic_equations_are_rejected() {
    let src = "coord z : weight 1; coord u : weight 2; coord v : weight 2; Im(u) = Re(v); Im(v) = Re(u);";
    let m = CrModel::parse(src).unwrap();
    assert!(matches!(realify(&m), Err(Error::Input(_))));
}

mod roundtrip {
    use crsym::crmodel::parse::{parse_expr, Scope, Value};
    use crsym::exactmath::{rat, GaussRat, MPoly};
    use proptest::prelude::*;

    fn poly() -> impl Strategy<Value = MPoly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), (-9i64..9, 1i64..4, -9i64..9, 1i64..4)), 0..5).prop_map(
            |terms| {
                let mut p = MPoly::zero(3);
                for ((a, b, c), (n, d, m, e)) in terms {
                    p.add_term(vec![a, b, c], &GaussRat::new(rat(n, d), rat(m, e)));
                }
                p
            },
        )
    }

    proptest! {
        #[test]
        fn display_parses_back(p in poly()) {
            let coords = vec!["z".to_string()];
            let params = vec!["a".to_string()];
            let names = vec!["z".to_string(), "conj(z)".to_string(), "a".to_string()];
            let text = p.display(&names);
            let scope = Scope { coords: &coords, params: &params };
            let v = scope.eval(&parse_expr(&text).unwrap()).unwrap();
            prop_assert_eq!(v, Value::Poly(p), "{}", text);
        }
    }
}
