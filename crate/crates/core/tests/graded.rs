use proptest::prelude::*;
use std::sync::OnceLock;

use theta_graded::coords::{example_sl_2n1, example_sl_nk, extract_coordinates, round_trip, Extraction};
use theta_graded::graded::{
    assemble, check_grading, check_jacobi, required_products, CoordinateData, GradedLieAlgebra, JacobiMode,
};
use theta_graded::linalg::{Matrix, Rational};
use theta_graded::module::catalog;

fn examples() -> &'static Vec<Extraction> {
    static CELL: OnceLock<Vec<Extraction>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut v = Vec::new();
        for n in [3, 4] {
            v.push(extract_coordinates(&example_sl_2n1(n).unwrap()).unwrap());
            for k in [1, 2] {
                v.push(extract_coordinates(&example_sl_nk(n, k).unwrap()).unwrap());
            }
        }
        v
    })
}

/// `ad(x⊗1)` restricted to each sector `M⊗X` is `ρ_M(x) ⊗ id_X`.
fn equivariance_holds(l: &GradedLieAlgebra) -> bool {
    let n = l.n();
    for k in 0..n * n - 1 {
        let ad = l.ad(l.g_index(k).expect("g ⊗ 1 exists"));
        for s in l.sectors() {
            if s.is_empty() {
                continue;
            }
            let rho = catalog(n, s.label).unwrap().action(k).clone();
            let block = rho.kron(&Matrix::identity(s.coord_dim));
            for r in 0..s.len() {
                for c in 0..s.len() {
                    if ad[(s.offset + r, s.offset + c)] != block[(r, c)] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[test]
fn assembled_algebras_are_equivariant_and_antisymmetric() {
    for x in examples() {
        let l = assemble(&x.data).unwrap();
        assert!(l.antisymmetry_defect().is_none());
        assert!(equivariance_holds(&l));
    }
}

#[test]
fn round_trip_reproduces_every_example() {
    for x in examples() {
        let rt = round_trip(x).unwrap();
        let d = x.ambient_view.dim();
        assert_eq!(rt.pairs, d * d);
        assert!(rt.pass(), "{:?}", rt.witness);
    }
}

#[test]
fn jacobi_and_grading_hold_on_every_example() {
    for x in examples() {
        let l = assemble(&x.data).unwrap();
        assert!(check_jacobi(&l, JacobiMode::Full).pass());
        assert!(check_grading(&l).pass());
    }
}

#[test]
fn sl7_triple_count() {
    let l = assemble(&examples()[0].data).unwrap();
    assert_eq!(l.dim(), 48);
    assert_eq!(check_jacobi(&l, JacobiMode::Full).triples, 17_296);
}

#[test]
fn json_round_trip_and_required_products() {
    for x in examples() {
        let back = CoordinateData::from_json(&x.data.to_json()).unwrap();
        assert_eq!(back, x.data);
        let req = required_products(x.data.n).unwrap();
        assert!(x.data.nonzero_products().iter().all(|id| req.contains(id)));
    }
}

#[test]
fn trivial_data_is_sl_n() {
    for n in [3, 4] {
        let l = assemble(&CoordinateData::trivial(n).unwrap()).unwrap();
        assert_eq!(l.dim(), n * n - 1);
        assert!(check_jacobi(&l, JacobiMode::Full).pass());
        assert!(equivariance_holds(&l));
    }
}

#[test]
fn negating_a_product_changes_only_that_product() {
    let data = &examples()[3].data;
    for id in data.nonzero_products() {
        let m = data.with_negated(&id);
        for other in data.nonzero_products() {
            let same = m.product(&other) == data.product(&other);
            assert_eq!(same, other != id, "{id}");
        }
    }
}

fn vector(d: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((0..d, -3i64..4), 1..4).prop_map(move |terms| {
        let mut v = vec![Rational::zero(); d];
        for (i, c) in terms {
            v[i] += &Rational::from_int(c);
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn jacobi_on_random_elements_of_sl9(
        u in vector(80), v in vector(80), w in vector(80)
    ) {
        let l = &examples()[3].ambient_view;
        let a = assemble(&examples()[3].data).unwrap();
        let br = |x: &[Rational], y: &[Rational]| a.bracket(x, y);
        let t1 = br(&u, &br(&v, &w));
        let t2 = br(&v, &br(&w, &u));
        let t3 = br(&w, &br(&u, &v));
        for i in 0..80 {
            prop_assert!((&(&t1[i] + &t2[i]) + &t3[i]).is_zero());
        }
        prop_assert_eq!(a.bracket(&u, &v), l.bracket(&u, &v));
    }
}
