use theta_graded::hom::{hom_space, schur_consistency, verify_homs};
use theta_graded::linalg::Matrix;
use theta_graded::module::{catalog, equivariance_defect, identification, IdentificationName};
use theta_graded::par::Exec;
use theta_graded::sl::ThetaLabel;
use theta_graded::tensor::{table_labels, tensor};

#[test]
fn listed_maps_are_verified() {
    for (n, count) in [(3, 22), (4, 28)] {
        let r = verify_homs(n).unwrap();
        assert_eq!(r.entries.len(), count);
        for e in &r.entries {
            assert!(e.pass(), "{}: {e:?}", e.name);
        }
    }
}

#[test]
fn adjoint_square_to_adjoint_is_two_dimensional() {
    for n in [3, 4] {
        assert_eq!(
            hom_space(ThetaLabel::Adj, ThetaLabel::Adj, ThetaLabel::Adj, n)
                .unwrap()
                .dim(),
            2
        );
    }
}

#[test]
fn schur_consistency_has_no_discrepancies() {
    for n in [3, 4] {
        let cells = schur_consistency(n, Exec::Parallel).unwrap();
        assert!(!cells.is_empty());
        for c in &cells {
            assert_eq!(c.hom_dim, c.multiplicity, "{}⊗{} -> {} (n={n})", c.x, c.y, c.z);
        }
    }
}

/// Post-composing every Hom basis element with an identification stays
/// equivariant.
#[test]
fn identifications_compose_equivariantly() {
    let cases = [
        (3, IdentificationName::F),
        (3, IdentificationName::G),
        (4, IdentificationName::F),
    ];
    for (n, which) in cases {
        let id = identification(n, which).unwrap();
        let tgt = catalog(n, id.target).unwrap();
        let inv = id.iso.inverse().unwrap();
        let src_mod = catalog(n, id.source).unwrap();
        for &x in &table_labels(n).unwrap() {
            for &y in &table_labels(n).unwrap() {
                let src = tensor(&catalog(n, x).unwrap(), &catalog(n, y).unwrap()).unwrap();
                for phi in hom_space(x, y, id.source, n).unwrap().basis {
                    let composed: Matrix = &id.iso * &phi;
                    assert!(equivariance_defect(&composed, &src, &tgt).is_none());
                }
                for phi in hom_space(x, y, id.target, n).unwrap().basis {
                    let composed: Matrix = &inv * &phi;
                    assert!(equivariance_defect(&composed, &src, &src_mod).is_none());
                }
            }
        }
    }
}
