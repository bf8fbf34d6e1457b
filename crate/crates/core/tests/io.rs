use std::sync::Arc;

use bgg_core::bgg::{BggContext, SectionSampler};
use bgg_core::homology::checks::homology_dims;
use bgg_core::homology::ChainComplexData;
use bgg_core::io::{read_matrix, read_section, read_structure_constants, write_matrix, write_section, write_structure_constants, HomologyTable};
use bgg_core::lie::{adjoint, conformal, g2, trivial, GradedAlgebra};
use bgg_core::Error;

#[test]
fn d0_matrix_roundtrip() {
    let c = BggContext::from_expr(Arc::new(conformal(3, 0).unwrap()), "standard", 3).unwrap();
    let op = c.primal().bgg(0).unwrap().unwrap().operator_matrix();
    let text = write_matrix(&op);
    assert_eq!(read_matrix(&text).unwrap(), op);
}

#[test]
fn homology_table_g2() {
    let ga = Arc::new(g2().unwrap());
    let cx = ChainComplexData::new(ga.clone(), Arc::new(trivial(&ga).unwrap())).unwrap();
    let t = HomologyTable::compute("g2", &cx).unwrap();
    assert_eq!(t.euler_characteristic(), 0);
    assert_eq!(t.dims().iter().sum::<usize>(), 12);
    let text = t.write();
    assert_eq!(HomologyTable::read(&text).unwrap(), t);
}

#[test]
fn structure_constants_roundtrip() {
    let ga = conformal(3, 0).unwrap();
    let text = write_structure_constants(&ga);
    let back = read_structure_constants(&text).unwrap().build().unwrap();
    assert_eq!(write_structure_constants(&back), text);
    assert_eq!(back.grading.weights(), ga.grading.weights());
    let dims = |ga: GradedAlgebra| {
        let ga = Arc::new(ga);
        let cx = ChainComplexData::new(ga.clone(), Arc::new(adjoint(&ga).unwrap())).unwrap();
        homology_dims(&cx)
    };
    assert_eq!(dims(back), dims(ga));
}

#[test]
fn malformed_inputs_report_lines() {
    let err = read_matrix("bgg-sparse-matrix 1\ndomain 1\na\t0\ncodomain 1\nb\t0\nentries 1\n0 3 1 1\n").unwrap_err();
    match err {
        Error::Format(m) => assert!(m.starts_with("line 7"), "{m}"),
        e => panic!("{e}"),
    }
    assert!(read_structure_constants("bgg-structure-constants 1\nbasis 2\na\nb\ngrading 0\nbrackets 1\n1 0 0 1 1\n").is_err());
}

#[test]
fn section_roundtrip() {
    let c = BggContext::from_expr(Arc::new(conformal(3, 0).unwrap()), "standard", 3).unwrap();
    let s = c.chain_sections(1);
    let v = SectionSampler::new(5).section(s, 3);
    assert_eq!(read_section(s, &write_section(s, &v)).unwrap(), v);
}
