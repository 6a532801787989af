mod common;

use std::path::Path;

use proptest::prelude::*;
use skewcheck::fincat::FinCategory;
use skewcheck::fixtures::structure_corpus;
use skewcheck::io::{parse_document, to_json, Document, StructureDoc};
use skewcheck::setmodels::{
    evaluate_model, to_finite_structure, AxiomSignature, Magma, ModelKind, PointwiseModel, DEFAULT_MAX_NODES,
};
use skewcheck::skewstruct::{check_all, reverse_structure, AxiomMask, AxiomReport, TensorStructure, UnitCandidate};

fn magma_strategy(max: usize) -> impl Strategy<Value = (usize, Vec<Vec<usize>>, usize)> {
    (1..=max).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(prop::collection::vec(0..n, n), n),
            0..n,
        )
    })
}

fn passes(r: &AxiomReport) -> Vec<bool> {
    r.axioms.iter().map(|e| e.status.is_pass()).collect()
}

fn assert_swap_law(s: &TensorStructure, u: Option<&UnitCandidate>) {
    let (rs, ru) = reverse_structure(s, u);
    let original = check_all(s, u, AxiomMask::ALL);
    let reversed = check_all(&rs, ru.as_ref(), AxiomMask::ALL);
    assert_eq!(passes(&reversed), passes(&original.swap_left_right()));
    let (back, bu) = reverse_structure(&rs, ru.as_ref());
    assert_eq!(back.base().to_raw(), s.base().to_raw());
    assert_eq!(back.obj_tensor_table(), s.obj_tensor_table());
    assert_eq!(back.mor_tensor_table(), s.mor_tensor_table());
    assert_eq!(bu.as_ref(), u);
}

#[test]
fn swap_law_on_fixtures() {
    for f in structure_corpus() {
        assert_swap_law(&f.structure, f.unit.as_ref());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reductions_match_pointwise_evaluation((n, rows, e) in magma_strategy(3)) {
        let m = Magma::new(n, &rows, e).unwrap();
        let got = evaluate_model(&PointwiseModel::magma(m)).signature.to_array();
        prop_assert_eq!(got, common::reduced_flags(n, &rows, e));
    }

    #[test]
    fn signature_is_stable_across_test_sizes((n, rows, e) in magma_strategy(3)) {
        let m = Magma::new(n, &rows, e).unwrap();
        let small = PointwiseModel::new(ModelKind::Magma(m.clone()), vec![1]).unwrap();
        let large = PointwiseModel::new(ModelKind::Magma(m), vec![1, 2]).unwrap();
        prop_assert_eq!(evaluate_model(&small).signature, evaluate_model(&large).signature);
    }

    #[test]
    fn dual_is_an_involution(flags in prop::array::uniform5(any::<bool>())) {
        let s = AxiomSignature::from_array(flags);
        prop_assert_eq!(s.dual().dual(), s);
        prop_assert_eq!(s.dual().pentagon, s.pentagon);
        prop_assert_eq!(s.dual().left, s.right);
    }

    #[test]
    fn opposite_is_an_involution(n in 1usize..5, bits in prop::collection::vec(any::<bool>(), 16)) {
        // transitive closure of a random relation, read as a preorder
        let mut leq = vec![vec![false; n]; n];
        for a in 0..n {
            for b in 0..n {
                leq[a][b] = a == b || bits[a * 4 + b];
            }
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if leq[a][k] && leq[k][b] {
                        leq[a][b] = true;
                    }
                }
            }
        }
        let c = FinCategory::preorder(n, |a, b| leq[a][b]).unwrap();
        let op = c.opposite();
        prop_assert_eq!(op.opposite().to_raw(), c.to_raw());
        for f in c.morphisms() {
            prop_assert_eq!(op.src(f), c.dst(f));
        }
        prop_assert_eq!(FinCategory::validate(&op.to_raw()).unwrap().to_raw(), op.to_raw());
    }

    #[test]
    fn model_documents_round_trip((n, rows, e) in magma_strategy(3), sizes in prop::collection::vec(1usize..4, 1..3)) {
        let m = Magma::new(n, &rows, e).unwrap();
        let doc = Document::Model(PointwiseModel::new(ModelKind::Magma(m), sizes).unwrap());
        let parsed = parse_document(&to_json(&doc), Path::new("model.json")).unwrap();
        prop_assert_eq!(parsed, doc);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn swap_law_on_fragments((n, rows, e) in magma_strategy(2)) {
        let m = PointwiseModel::magma(Magma::new(n, &rows, e).unwrap());
        if let Ok((s, u)) = to_finite_structure(&m, DEFAULT_MAX_NODES) {
            assert_swap_law(&s, Some(&u));
        }
    }

    #[test]
    fn structure_documents_round_trip(k in 0usize..8) {
        let f = &structure_corpus()[k];
        let doc = Document::Structure(StructureDoc::from_structure(&f.structure, f.unit.as_ref()));
        let parsed = parse_document(&to_json(&doc), Path::new("s.json")).unwrap();
        prop_assert_eq!(&parsed, &doc);
        let Document::Structure(sd) = parsed else { unreachable!() };
        let (s, u) = sd.build(Path::new("s.json")).unwrap();
        prop_assert_eq!(s.obj_tensor_table(), f.structure.obj_tensor_table());
        prop_assert_eq!(u, f.unit.clone());
    }
}
