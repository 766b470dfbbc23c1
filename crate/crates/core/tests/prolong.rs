use crsym::exactmath::{int, rat, Rat, RatMatrix};
use crsym::gnla::{ell6, ell7, ell8, free_gnla, gou, hc, heis3, mdblprime5, mprime5, ngou};
use crsym::prolong::{cr_g0, der0, prolong, standard_j, symmetry_bound, Derivation0, Tower};
use crsym::Gnla;
use num_traits::Zero;

fn j_ab(a: Rat, b: Rat) -> RatMatrix {
    let one = int(1);
    let c = -(&one + &b * &b) / &a;
    RatMatrix::from_rows(vec![vec![b.clone(), c], vec![a, -b]])
}

fn sample_js() -> Vec<RatMatrix> {
    vec![standard_j(), j_ab(int(2), int(3)), j_ab(int(-1), int(1)), j_ab(int(3), int(-2)), j_ab(rat(1, 2), int(0))]
}

fn deep_catalog() -> Vec<Gnla> {
    let mut v = vec![hc(), ell6(), ell7(), ell8(), mprime5().unwrap(), mdblprime5().unwrap(), free_gnla(4).unwrap()];
    v.extend((3..=7).map(|n| gou(n).unwrap()));
    v.extend([5, 7].map(|n| ngou(n).unwrap()));
    v
}

fn g1_blocks(m: &Gnla) -> Vec<RatMatrix> {
    der0(m).iter().map(|d| d.g1().clone()).collect()
}

fn span_rank(ms: &[RatMatrix]) -> usize {
    let rows: Vec<Vec<Rat>> = ms.iter().map(|m| (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()).collect();
    RatMatrix::from_rows(rows).rank()
}

#[test]
fn der0_goursat_is_borel() {
    for n in 4..=8 {
        let blocks = g1_blocks(&gou(n).unwrap());
        assert_eq!(blocks.len(), 3, "n = {n}");
        for b in &blocks {
            assert!(b.get(0, 1).is_zero(), "upper-right entry must vanish");
        }
    }
}

#[test]
fn der0_ngou_is_diagonal_abelian() {
    for n in [5, 7, 9] {
        let blocks = g1_blocks(&ngou(n).unwrap());
        assert_eq!(blocks.len(), 2);
        for b in &blocks {
            assert!(b.get(0, 1).is_zero() && b.get(1, 0).is_zero());
        }
        assert_eq!(blocks[0].mul(&blocks[1]), blocks[1].mul(&blocks[0]));
    }
}

#[test]
fn der0_hilbert_cartan_is_gl2() {
    let blocks = g1_blocks(&hc());
    assert_eq!(span_rank(&blocks), 4);
}

#[test]
fn grading_element_and_uniqueness() {
    for m in deep_catalog().iter().chain([heis3()].iter()) {
        let d = der0(m);
        assert_eq!(d[0], Derivation0::grading(m));
        assert_eq!(d[0].g1(), &RatMatrix::identity(2).scale(&int(-1)));
        // A derivation is determined by its g-1 block.
        assert_eq!(span_rank(&g1_blocks(m)), d.len());
    }
}

#[test]
fn cr_g0_dimensions() {
    assert_eq!(cr_g0(&hc(), &standard_j()).len(), 2);
    assert_eq!(cr_g0(&heis3(), &standard_j()).len(), 2);
    for n in 3..=7 {
        for j in sample_js() {
            assert_eq!(cr_g0(&gou(n).unwrap(), &j).len(), 1);
        }
    }
}

#[test]
fn first_prolongation_vanishes_in_depth_above_two() {
    for m in deep_catalog() {
        for j in sample_js() {
            let r = prolong(&m, &cr_g0(&m, &j), 1).unwrap();
            assert!(r.rigid, "{:?}", m.dims());
        }
    }
}

#[test]
fn hilbert_cartan_total() {
    let m = hc();
    let r = prolong(&m, &cr_g0(&m, &standard_j()), 6).unwrap();
    assert_eq!(r.dims_positive, Vec::<usize>::new());
    assert_eq!(r.total, Some(7));
}

#[test]
fn termination_is_monotone() {
    for m in [hc(), gou(4).unwrap()] {
        let g0 = cr_g0(&m, &standard_j());
        let mut t = Tower::new(&m, &g0).unwrap();
        assert_eq!(t.next_level(), 0);
        assert_eq!(t.next_level(), 0);
    }
}

#[test]
fn symmetry_bounds() {
    for n in 3..=7 {
        assert_eq!(symmetry_bound(&gou(n).unwrap(), &j_ab(int(3), int(7))).unwrap(), n + 2);
    }
    assert_eq!(symmetry_bound(&ell6(), &standard_j()).unwrap(), 8);
    assert_eq!(symmetry_bound(&free_gnla(4).unwrap(), &standard_j()).unwrap(), 10);
    assert_eq!(symmetry_bound(&heis3(), &standard_j()).unwrap(), 8);
}
