use crsym::exactmath::{int, GaussRat, MPoly, Rat};
use crsym::gnla::{gou, heis3};
use crsym::vfield::{g2b_chart, goursat_chart, hilbert_cartan_chart, nilpotent_symbol, DistributionChart, VectorField};
use proptest::prelude::*;

fn nm(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

#[test]
fn goursat_growth() {
    let g = goursat_chart(5).growth_at(true).unwrap();
    assert_eq!(g.cumulative, vec![2, 3, 4, 5, 6]);
    let s = goursat_chart(5).growth_at(false).unwrap();
    assert_eq!(s.cumulative, vec![2, 3, 4, 5, 6]);
}

#[test]
fn hilbert_cartan_and_g2b_growth() {
    assert_eq!(hilbert_cartan_chart().growth_at(true).unwrap().reduced, vec![2, 1, 2]);
    assert_eq!(g2b_chart().growth_at(true).unwrap().reduced, vec![2, 1, 1, 1, 1]);
}

#[test]
fn prolonging_the_plane_twice_gives_engel() {
    let names = nm(&["x", "y"]);
    let plane = DistributionChart::new(
        vec![VectorField::partial(names.clone(), 2, 0), VectorField::partial(names, 2, 1)],
        vec![Rat::from_integer(0.into()); 2],
    );
    let once = plane.prolong_chart("p").unwrap();
    assert_eq!(once.growth_at(true).unwrap().reduced, vec![2, 1]);
    let twice = once.prolong_chart("q").unwrap();
    assert_eq!(twice.growth_at(true).unwrap().reduced, vec![2, 1, 1]);
}

#[test]
fn prolonged_hilbert_cartan_is_g2b() {
    let p = hilbert_cartan_chart().prolong_chart("z3").unwrap();
    let g = g2b_chart();
    assert_eq!(p.generators, g.generators);
    assert_eq!(p.growth_at(true).unwrap().reduced, vec![2, 1, 1, 1, 1]);
}

#[test]
fn prolonged_charts_have_level_two_cauchy_direction() {
    for chart in [hilbert_cartan_chart(), goursat_chart(3), goursat_chart(5)] {
        let p = chart.prolong_chart("p").unwrap();
        let dp = p.generators[1].clone();
        assert!(p.is_cauchy_of_square(&dp).unwrap());
        assert_eq!(&p.growth_at(true).unwrap().reduced[..2], &[2, 1]);
    }
}

#[test]
fn goursat_prolongation_shifts_growth() {
    for n in 2..=6 {
        let base = goursat_chart(n).growth_at(true).unwrap().reduced;
        let g = goursat_chart(n).prolong_chart("p").unwrap().growth_at(true).unwrap().reduced;
        let mut expected = vec![2, 1];
        expected.extend_from_slice(&base[1..]);
        assert_eq!(g, expected);
    }
    // The Hilbert–Cartan chart does not follow the shift rule: (2,1,2) becomes (2,1,1,1,1).
    let hc = hilbert_cartan_chart().prolong_chart("p").unwrap().growth_at(true).unwrap().reduced;
    assert_eq!(hc, vec![2, 1, 1, 1, 1]);
}

#[test]
fn goursat_chart_symbol() {
    // Weights: x 1, y_i (n - i), with ∂x + Σ y_{i+1}∂y_i of weight -1.
    let c = goursat_chart(3);
    let weights = [1, 3, 2, 1];
    let s = nilpotent_symbol(&c.generators, &weights).unwrap();
    assert_eq!(s.gnla.dims(), vec![2, 1, 1]);
    let _ = (gou(3), heis3());
}

fn small_field() -> impl Strategy<Value = VectorField> {
    let names = nm(&["x", "y"]);
    proptest::collection::vec((0u32..3, 0u32..3, -3i64..4), 0..4).prop_flat_map(move |t1| {
        let names = names.clone();
        proptest::collection::vec((0u32..3, 0u32..3, -3i64..4), 0..4).prop_map(move |t2| {
            let mk = |t: &[(u32, u32, i64)]| {
                let mut p = MPoly::zero(2);
                for (a, b, c) in t {
                    p = p.add(&MPoly::monomial(vec![*a, *b], GaussRat::real(int(*c))));
                }
                p
            };
            VectorField::new(names.clone(), 2, vec![mk(&t1), mk(&t2)])
        })
    })
}

proptest! {
    #[test]
    fn jacobi_and_antisymmetry(x in small_field(), y in small_field(), z in small_field()) {
        let j = x.bracket(&y.bracket(&z)).add(&y.bracket(&z.bracket(&x))).add(&z.bracket(&x.bracket(&y)));
        prop_assert!(j.is_zero());
        prop_assert!(x.bracket(&y).add(&y.bracket(&x)).is_zero());
    }
}
