mod common;

use std::collections::BTreeMap;

use bpl_core::constructions::{
    contract_subdivision, lift_tree_decomposition, minor_drawing, planarize, sparsify, validate_model,
    validate_subdivision, ShallowModel, SubdivisionWitness,
};
use bpl_core::drawing::compute_crossings;
use bpl_core::expansion::nabla;
use bpl_core::harness::generate::{generate, Family};
use bpl_core::numbers::{gap_cover_number, gap_number, verify_gap_cover};
use bpl_core::treewidth::{treewidth_exact, validate_tree_decomposition};
use bpl_core::{AbstractDrawing, Error, Graph};
use common::*;

fn k6() -> AbstractDrawing {
    compute_crossings(&generate(&Family::K6Figure1).unwrap().drawing).unwrap()
}

#[test]
fn planarization_has_one_dummy_per_crossing() {
    for (name, d) in corpus_drawings() {
        let a = compute_crossings(&d).unwrap();
        let p = planarize(&d).unwrap();
        let g = d.graph();
        assert_eq!(p.planar_graph.n(), g.n() + a.total_occurrences(), "{name}");
        assert_eq!(p.dummy_of.len(), a.total_occurrences());
        assert_eq!(p.segments.len(), g.m() + 2 * a.total_occurrences());
        let n = p.planar_graph.n();
        if n >= 3 {
            assert!(p.planar_graph.m() <= 3 * n - 6, "{name}: planarization too dense");
        }
        for &z in p.dummy_of.keys() {
            assert_eq!(p.planar_graph.degree(z), 4, "{name}: dummy {z}");
        }
    }
}

#[test]
fn lifted_decompositions_are_valid() {
    for (name, d) in corpus_drawings() {
        let p = planarize(&d).unwrap();
        if p.planar_graph.n() > 14 {
            continue;
        }
        let (w, td) = treewidth_exact(&p.planar_graph).unwrap();
        let lifted = lift_tree_decomposition(&p, &td).unwrap();
        assert!(validate_tree_decomposition(d.graph(), &lifted).is_empty(), "{name}");
        assert!(lifted.width() + 1 <= 2 * (w + 1), "{name}");
    }
}

#[test]
fn sparsify_is_seeded_and_respects_covers() {
    let a = k6();
    let (k, cert) = gap_cover_number(&a, None);
    assert_eq!(k, 1);
    let (h1, t1) = sparsify(&a, &cert, 5).unwrap();
    let (h2, t2) = sparsify(&a, &cert, 5).unwrap();
    assert_eq!((h1.clone(), t1.clone()), (h2, t2));
    assert_eq!(h1.n(), t1.chosen.len());
    assert_eq!(h1.m(), t1.kept_edges.len());
    assert!(t1.edge_bound_holds);
    let differs = (0..20).any(|s| sparsify(&a, &cert, s).unwrap().1.chosen != t1.chosen);
    assert!(differs);
}

#[test]
fn sparsify_refuses_a_bad_certificate() {
    let a = k6();
    let (_, mut cert) = gap_cover_number(&a, None);
    cert.bearing.pairs.clear();
    assert!(matches!(sparsify(&a, &cert, 0), Err(Error::CertificateRejected(_))));
}

#[test]
fn densest_minor_of_k6_redraws_with_bounded_gap_cover() {
    let a = k6();
    let (k, cert) = gap_cover_number(&a, None);
    for r in 0..=1 {
        let (_, model) = nabla(a.graph(), r).unwrap();
        assert!(validate_model(&model).is_empty());
        let md = minor_drawing(&a, &cert, &model).unwrap();
        assert_eq!(md.drawing.graph(), &model.pattern);
        assert!(verify_gap_cover(&md.drawing, &md.certificate).unwrap());
        assert!(md.certificate.k <= (2 * r + 1) * k);
    }
}

#[test]
fn minor_drawing_rejects_an_invalid_model() {
    let a = k6();
    let (_, cert) = gap_cover_number(&a, None);
    let model = ShallowModel {
        host: a.graph().clone(),
        pattern: Graph::new([0, 1], [(0, 1)]).unwrap(),
        branch: [(0, [0, 1].into()), (1, [1, 2].into())].into_iter().collect(),
        center: [(0, 0), (1, 1)].into_iter().collect(),
        r: 1,
        edge_witness: [(0, (0, 2))].into_iter().collect(),
    };
    assert!(!validate_model(&model).is_empty());
    assert!(minor_drawing(&a, &cert, &model).is_err());
}

#[test]
fn contracting_a_subdivided_drawing() {
    let inst = generate(&Family::Subdivided {
        base: Box::new(Family::K6Figure1),
        c: 2,
    })
    .unwrap();
    let w = inst.subdivision.unwrap();
    let a = compute_crossings(&inst.drawing).unwrap();
    assert!(validate_subdivision(a.graph(), &w).is_empty());
    let (k, cert) = gap_number(&a);
    let (back, cert2) = contract_subdivision(&a, &cert, &w).unwrap();
    assert_eq!(back.graph(), &Graph::complete(6));
    assert_eq!(back.total_occurrences(), 3);
    assert!(cert2.k <= 3 * k);
}

#[test]
fn bad_subdivision_witness_is_reported() {
    let host = Graph::path(4);
    let w = SubdivisionWitness {
        pattern: Graph::new([0, 3], [(0, 3)]).unwrap(),
        branch: [(0, 0), (3, 3)].into_iter().collect(),
        paths: [(0, vec![0, 2, 3])].into_iter().collect(),
        c: 2,
    };
    assert!(!validate_subdivision(&host, &w).is_empty());
    let ok = SubdivisionWitness {
        paths: BTreeMap::from([(0, vec![0, 1, 2, 3])]),
        ..w
    };
    assert!(validate_subdivision(&host, &ok).is_empty());
}
