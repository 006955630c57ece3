mod common;

use proptest::prelude::*;

use theta_graded::module::{
    catalog, equivariance_defect, identification, isotypic_decompose, weight_decompose, GModule, IdentificationName,
};
use theta_graded::sl::{theta_weights, ThetaLabel, ThetaSet};

use common::{ssyt_character, weyl_dim};

#[test]
fn catalog_modules_are_representations_with_theta_weights() {
    for n in [3, 4] {
        let theta = theta_weights(n);
        for l in ThetaLabel::ALL {
            let m = catalog(n, l).unwrap();
            assert!(m.is_representation(), "{l} n={n}");
            assert_eq!(m.dim(), l.dim(n));
            let wd = weight_decompose(&m).unwrap();
            assert!(wd.character().keys().all(|w| theta.contains(w)), "{l} n={n}");
        }
    }
}

#[test]
fn catalog_characters_match_tableaux() {
    for n in [3, 4] {
        for l in ThetaLabel::ALL {
            let hw = l.highest_weight(n);
            let computed = weight_decompose(&catalog(n, l).unwrap()).unwrap().character();
            assert_eq!(computed, ssyt_character(&hw), "{l} n={n}");
            assert_eq!(weyl_dim(&hw), l.dim(n), "{l} n={n}");
        }
    }
}

#[test]
fn isotypic_components_redecompose_to_their_own_label() {
    let n = 4;
    let m = GModule::direct_sum(&[
        catalog(n, ThetaLabel::Adj).unwrap(),
        catalog(n, ThetaLabel::S).unwrap(),
        catalog(n, ThetaLabel::T).unwrap(),
    ])
    .unwrap();
    let d = isotypic_decompose(&m).unwrap();
    let total: usize = d.parts.values().map(|p| p.component.dim()).sum();
    assert_eq!(total, m.dim());
    for (l, p) in &d.parts {
        assert_eq!(p.multiplicity, 1);
        assert_eq!(p.component.dim(), l.dim(n));
    }
}

#[test]
fn n3_identifications_are_equivariant_isomorphisms() {
    for which in [IdentificationName::F, IdentificationName::G] {
        let id = identification(3, which).unwrap();
        let src = catalog(3, id.source).unwrap();
        let tgt = catalog(3, id.target).unwrap();
        assert!(equivariance_defect(&id.iso, &src, &tgt).is_none());
        assert!(id.iso.inverse().is_some());
    }
    let f4 = identification(4, IdentificationName::F).unwrap();
    assert_eq!((f4.source, f4.target), (ThetaLabel::Lamp, ThetaLabel::Lam));
}

fn labels() -> impl Strategy<Value = (usize, Vec<ThetaLabel>)> {
    (3usize..5, proptest::collection::vec(0usize..8, 1..4))
        .prop_map(|(n, ix)| (n, ix.into_iter().map(|i| ThetaLabel::ALL[i]).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn direct_sums_decompose_into_their_summands((n, ls) in labels()) {
        let parts: Vec<GModule> = ls.iter().map(|&l| catalog(n, l).unwrap()).collect();
        let m = GModule::direct_sum(&parts).unwrap();
        let d = isotypic_decompose(&m).unwrap();
        let theta = ThetaSet::new(n).unwrap();
        let mut expected = std::collections::BTreeMap::new();
        for l in &ls {
            *expected.entry(theta.canonical(*l)).or_insert(0usize) += 1;
        }
        prop_assert_eq!(d.multiplicities(), expected);
        let total: usize = d.parts.values().map(|p| p.component.dim()).sum();
        prop_assert_eq!(total, m.dim());
    }
}
