use proptest::prelude::*;
use std::sync::OnceLock;

use theta_graded::coords::{example_sl_2n1, example_sl_nk, extract_coordinates};
use theta_graded::frak::{build_frak_a, build_frak_b, verify_structure, CoordAlgebra, Piece};
use theta_graded::graded::CoordinateData;
use theta_graded::linalg::Rational;

fn data(n: usize) -> &'static CoordinateData {
    static CELL: OnceLock<Vec<CoordinateData>> = OnceLock::new();
    &CELL.get_or_init(|| {
        [3, 4]
            .into_iter()
            .map(|n| extract_coordinates(&example_sl_2n1(n).unwrap()).unwrap().data)
            .collect()
    })[n - 3]
}

fn algebras() -> &'static [CoordAlgebra] {
    static CELL: OnceLock<Vec<CoordAlgebra>> = OnceLock::new();
    CELL.get_or_init(|| {
        vec![
            build_frak_a(data(3)).unwrap(),
            build_frak_a(data(4)).unwrap(),
            build_frak_b(data(4)).unwrap(),
        ]
    })
}

#[test]
fn structure_checks_pass_on_all_examples() {
    for n in [3, 4] {
        let r = verify_structure(data(n)).unwrap();
        assert!(r.pass(), "{:?}", r.failures());
        for k in [1, 2] {
            let d = extract_coordinates(&example_sl_nk(n, k).unwrap()).unwrap().data;
            let r = verify_structure(&d).unwrap();
            assert!(r.pass(), "slnk n={n} k={k}: {:?}", r.failures());
        }
    }
}

#[test]
fn involution_signs() {
    let signs: Vec<(Piece, i64)> = [
        Piece::Ap,
        Piece::Am,
        Piece::B,
        Piece::Bp,
        Piece::C,
        Piece::Cp,
        Piece::E,
        Piece::Ep,
    ]
    .into_iter()
    .map(|p| (p, p.involution_sign()))
    .collect();
    for (p, s) in signs {
        let expected = if matches!(p, Piece::Am | Piece::C | Piece::Cp) {
            -1
        } else {
            1
        };
        assert_eq!(s, expected, "{p:?}");
    }
}

#[test]
fn unit_is_two_sided() {
    for alg in algebras() {
        let one = alg.basis(alg.unit);
        for i in 0..alg.dim {
            let b = alg.basis(i);
            assert_eq!(alg.mul(&one, &b), b);
            assert_eq!(alg.mul(&b, &one), b);
        }
    }
}

type Terms = Vec<(usize, i64)>;

fn terms() -> impl Strategy<Value = Terms> {
    proptest::collection::vec((0usize..1000, -3i64..4), 1..4)
}

/// A sparse element with the given terms, indices reduced modulo `d`.
fn element(d: usize, t: &Terms) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d];
    for (i, c) in t {
        v[i % d] += &Rational::from_int(*c);
    }
    v
}

fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn involution_is_an_antiautomorphism(which in 0usize..3, tu in terms(), tv in terms()) {
        let alg = &algebras()[which];
        let (u, v) = (element(alg.dim, &tu), element(alg.dim, &tv));
        let lhs = alg.involution(&alg.mul(&u, &v));
        let rhs = alg.mul(&alg.involution(&v), &alg.involution(&u));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(alg.involution(&alg.involution(&u)), u);
    }

    #[test]
    fn derivation_identity_on_random_elements(which in 0usize..3, td in terms(), tx in terms(), ty in terms()) {
        let alg = &algebras()[which];
        prop_assume!(alg.d_dim > 0);
        let d = element(alg.d_dim, &td);
        let (x, y) = (element(alg.dim, &tx), element(alg.dim, &ty));
        let lhs = alg.d_bracket(&d, &alg.pairing(&x, &y));
        let rhs = add(&alg.pairing(&alg.d_act(&d, &x), &y), &alg.pairing(&x, &alg.d_act(&d, &y)));
        prop_assert_eq!(lhs, rhs);
    }
}

mod b_action {
    use super::*;
    use theta_graded::frak::split_sl;
    use theta_graded::graded::{assemble, GradedLieAlgebra, Space};
    use theta_graded::linalg::Matrix;
    use theta_graded::module::{identification, IdentificationName, Model};

    /// The element `Σ m_i ⊗ c_k` of the sector for `space`.
    fn elem(l: &GradedLieAlgebra, space: Space, m: &Matrix, c: &[Rational]) -> Vec<Rational> {
        let s = l.sector(space).expect("sector");
        let mv = Model::of(s.label).from_matrix(l.n(), m).expect("element of the model");
        let mut v = vec![Rational::zero(); l.dim()];
        for (i, x) in mv.iter().enumerate() {
            for (k, y) in c.iter().enumerate() {
                v[s.index(i, k)] += &(x * y);
            }
        }
        v
    }

    /// `m ⊗ w` for `w ∈ 𝔟`, spread over the blocks of `w`.
    fn spread(l: &GradedLieAlgebra, alg: &CoordAlgebra, m: &Matrix, w: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); l.dim()];
        for b in &alg.blocks {
            let part = &w[b.offset..b.offset + b.dim];
            if part.iter().all(Rational::is_zero) {
                continue;
            }
            let v = elem(l, b.piece.space(), m, part);
            out = add(&out, &v);
        }
        out
    }

    /// Matrices realising the module carried by each piece of `𝔞`.
    fn module_basis(p: Piece, n: usize) -> Vec<Matrix> {
        let split = split_sl(n).unwrap();
        match p {
            Piece::Ap => split.skew,
            Piece::Am => split.symmetric,
            _ => {
                let label = p.space().label();
                let model = Model::of(label);
                (0..model.dim(n)).map(|k| model.basis_matrix(n, k)).collect()
            }
        }
    }

    pub fn failures() -> Vec<String> {
        let data = data(4);
        let l = assemble(data).unwrap();
        let alg = build_frak_b(data).unwrap();
        let n = 4;
        let f = identification(n, IdentificationName::F).unwrap();
        let cols: Vec<Matrix> = (0..n).map(|k| Model::Column.basis_matrix(n, k)).collect();
        let mut bad = Vec::new();
        for blk in alg.blocks.iter().filter(|b| !matches!(b.piece, Piece::B | Piece::Bp)) {
            for ia in 0..blk.dim {
                let alpha = alg.basis(blk.offset + ia);
                let a_coords = &alpha[blk.offset..blk.offset + blk.dim];
                for z in module_basis(blk.piece, n) {
                    let za = elem(&l, blk.piece.space(), &z, a_coords);
                    // λu is not equivariant for λ ∈ Λ; Λ' ⊗ V → V' is, so Λ acts on V through f⁻¹.
                    let zz = if blk.piece == Piece::E {
                        f.apply_inverse(&z)
                    } else {
                        z.clone()
                    };
                    for (bp, sp) in [(Piece::B, Space::B), (Piece::Bp, Space::Bp)] {
                        let bb = alg.block(bp).unwrap();
                        for ib in 0..bb.dim {
                            let b = alg.basis(bb.offset + ib);
                            let b_coords = &b[bb.offset..bb.offset + bb.dim];
                            for u in &cols {
                                let ub = elem(&l, sp, u, b_coords);
                                let (lhs, rhs) = if bp == Piece::B {
                                    (l.bracket(&za, &ub), spread(&l, &alg, &(&zz * u), &alg.mul(&alpha, &b)))
                                } else {
                                    (
                                        l.bracket(&ub, &za),
                                        spread(&l, &alg, &(&z.transpose() * u), &alg.mul(&b, &alpha)),
                                    )
                                };
                                if lhs != rhs {
                                    bad.push(format!("{:?}·{:?}", blk.piece, bp));
                                }
                            }
                        }
                    }
                }
            }
        }
        bad.sort();
        bad.dedup();
        bad
    }
}

#[test]
fn b_products_reproduce_brackets_with_the_b_modules() {
    let bad = b_action::failures();
    assert!(bad.is_empty(), "{bad:?}");
}
