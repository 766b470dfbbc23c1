use crsym::exactmath::{int, Rat};
use crsym::gnla::{
    catalog, deprolong, ell6, ell7, ell8, free_gnla, gou, hc, heis3, mdblprime5, mprime5,
    necklace_dim, ngou, GnlaBuilder, ViolationKind,
};
use crsym::Gnla;
use num_traits::Zero;

fn all_catalog() -> Vec<(String, Gnla)> {
    let mut v: Vec<(String, Gnla)> = vec![
        ("heis3".into(), heis3()),
        ("hc".into(), hc()),
        ("ell6".into(), ell6()),
        ("ell7".into(), ell7()),
        ("ell8".into(), ell8()),
        ("mprime5".into(), mprime5().unwrap()),
        ("mdblprime5".into(), mdblprime5().unwrap()),
    ];
    for n in 2..=9 {
        v.push((format!("gou{n}"), gou(n).unwrap()));
    }
    for n in [5, 7, 9] {
        v.push((format!("ngou{n}"), ngou(n).unwrap()));
    }
    for d in 2..=5 {
        v.push((format!("free{d}"), free_gnla(d).unwrap()));
    }
    v
}

#[test]
fn catalog_is_valid_and_fundamental() {
    for (name, m) in all_catalog() {
        assert!(m.validate().ok, "{name}: {:?}", m.validate().violation);
        assert!(m.is_fundamental().fundamental, "{name}: {:?}", m.is_fundamental());
        assert!(m.cauchy_directions(1).unwrap().is_empty(), "{name}");
    }
}

#[test]
fn growth_vectors() {
    assert_eq!(gou(6).unwrap().growth().reduced, vec![2, 1, 1, 1, 1, 1]);
    assert_eq!(hc().growth().reduced, vec![2, 1, 2]);
    assert_eq!(ell6().growth().reduced, vec![2, 1, 2, 1]);
    assert_eq!(ell7().growth().reduced, vec![2, 1, 2, 2]);
    assert_eq!(ell8().growth().reduced, vec![2, 1, 2, 1, 2]);
    assert_eq!(mprime5().unwrap().growth().reduced, vec![2, 1, 2, 3, 2]);
    assert_eq!(mdblprime5().unwrap().growth().reduced, vec![2, 1, 2, 3, 4]);
    assert_eq!(hc().growth().cumulative, vec![2, 3, 5]);
}

#[test]
fn reductions_carry_the_named_relation() {
    // [e1',e3''] = [e1'',e3'] = e4'' in both reductions.
    for m in [mprime5().unwrap(), mdblprime5().unwrap()] {
        let i = |s: &str| m.unit(m.index(s).unwrap());
        assert_eq!(m.bracket(&i("e1'"), &i("e3''")), i("e4''"));
        assert_eq!(m.bracket(&i("e1''"), &i("e3'")), i("e4''"));
    }
}

#[test]
fn free_depth_ten() {
    let f = free_gnla(10).unwrap();
    assert_eq!(f.dims(), vec![2, 1, 2, 3, 6, 9, 18, 30, 56, 99]);
    for (k, d) in f.dims().iter().enumerate() {
        assert_eq!(*d as u128, necklace_dim(k as u32 + 1));
    }
    assert!(free_gnla(11).is_err());
}

#[test]
fn free_three_matches_hilbert_cartan() {
    let f = free_gnla(3).unwrap();
    let u = |s: &str| f.unit(f.index(s).unwrap());
    let e2 = f.bracket(&u("a"), &u("b"));
    let e3p = f.bracket(&u("a"), &e2);
    let e3pp = f.bracket(&u("b"), &e2);
    let nb = vec![
        ("e1'".to_string(), u("a")),
        ("e1''".to_string(), u("b")),
        ("e2".to_string(), e2),
        ("e3'".to_string(), e3p),
        ("e3''".to_string(), e3pp),
    ];
    assert!(f.change_basis(&nb).unwrap().same_structure(&hc()));
}

fn gou5_with(extra_target: &str) -> Gnla {
    GnlaBuilder::new()
        .elems(&["e1'", "e1''"], 1)
        .elem("e2", 2)
        .elem("e3", 3)
        .elem("e4", 4)
        .elem("e5", 5)
        .rel("e1'", "e1''", &[("e2", 1)])
        .rel("e1'", "e2", &[("e3", 1)])
        .rel("e1'", "e3", &[("e4", 1)])
        .rel("e1'", "e4", &[("e5", 1)])
        .rel("e1''", "e2", &[(extra_target, 1)])
        .build()
        .unwrap()
}

#[test]
fn injected_relations_are_caught() {
    let g = gou5_with("e4");
    let v = g.validate().violation.unwrap();
    assert_eq!(v.kind, ViolationKind::Grading);
    assert_eq!(v.elements, ["e1''", "e2"]);

    let g = gou5_with("e3");
    let v = g.validate().violation.unwrap();
    assert_eq!(v.kind, ViolationKind::Jacobi);
    assert_eq!(v.elements, ["e1'", "e1''", "e2"]);
    assert_eq!(v.residual, "e4");
}

#[test]
fn cauchy_directions_level_two() {
    for n in 3..=9 {
        let g = gou(n).unwrap();
        assert_eq!(g.cauchy_directions(2).unwrap(), vec![vec![Rat::zero(), int(1)]]);
    }
    for m in [hc(), ell6(), ell7(), ell8(), mprime5().unwrap()] {
        assert!(m.cauchy_directions(2).unwrap().is_empty());
    }
}

#[test]
fn deprolong_examples() {
    assert!(deprolong(&gou(3).unwrap()).unwrap().same_structure(&heis3()));
    assert!(deprolong(&hc()).is_err());
    assert!(catalog("ngou", Some(4)).is_err());
}
