//! The worked examples, value by value.

use algact::actions::{is_acting_morphism_in, morphism_to_action, validate_action, weak_actor, Variety};
use algact::catalog::{
    biadjoint_action, catalog_algebra, non_acting_scalar_action, non_acting_scalar_morphism, repro_suite, Fact,
};
use algact::opspace::{
    anti_derivations, biderivations, check_bim_commutation, comm_poisson_usga, derivations, inner_embedding,
    poisson_usga,
};
use algact::{FieldSpec, IdentityTag};

fn fields() -> [FieldSpec; 2] {
    [FieldSpec::Rationals, FieldSpec::prime(5).unwrap()]
}

#[test]
fn bider_of_the_line_is_two_dimensional() {
    for f in fields() {
        let line = catalog_algebra("abelian1", f).unwrap();
        assert_eq!(biderivations(&line).unwrap().dim(), 2);
    }
}

#[test]
fn scalar_morphism_is_a_non_acting_homomorphism() {
    for f in fields() {
        let line = catalog_algebra("abelian1", f).unwrap();
        let actor = weak_actor(&line, Variety::Leibniz).unwrap();
        let phi = non_acting_scalar_morphism(f).matrix_in(&actor).unwrap();
        let rep = is_acting_morphism_in(&phi, &line, &actor, Variety::Leibniz).unwrap();
        assert!(!rep.acting);
        assert_eq!(rep.witness.unwrap().defect, vec![f.from_i64(2)]);
        let a = morphism_to_action(&phi, &line, &line, Variety::Leibniz).unwrap();
        assert_eq!(a, non_acting_scalar_action(f));
        let v = validate_action(&a).unwrap();
        assert_eq!(v.failed(), vec!["L6"]);
        assert_eq!(v.conditions["L6"].witness.as_ref().unwrap().defect, vec![f.from_i64(2)]);
    }
}

#[test]
fn lie_algebras_have_equal_der_and_antider() {
    for name in ["lie_2dim", "heisenberg", "sl2"] {
        let g = catalog_algebra(name, FieldSpec::Rationals).unwrap();
        assert_eq!(derivations(&g).unwrap().subspace(), anti_derivations(&g).unwrap().subspace());
    }
}

#[test]
fn biadjoint_is_inner() {
    let g = catalog_algebra("leibniz_2dim_nonlie", FieldSpec::Rationals).unwrap();
    let a = biadjoint_action(&g);
    assert!(validate_action(&a).unwrap().pass);
    let inner = inner_embedding(&biderivations(&g).unwrap()).unwrap();
    assert!(inner.homomorphism.unwrap().holds);
}

#[test]
fn usga_of_the_line_is_a_poisson_actor() {
    for f in fields() {
        let v = catalog_algebra("poisson_abelian1", f).unwrap();
        let s = poisson_usga(&v).unwrap();
        assert_eq!(s.dim(), 3);
        assert!(s.as_algebra().unwrap().bracket().is_zero());
        assert!(s.as_algebra().unwrap().satisfies(IdentityTag::Poisson));
        assert!(check_bim_commutation(&v).unwrap().holds);
    }
}

#[test]
fn usga_of_the_plane_is_not_poisson() {
    for f in fields() {
        let v = catalog_algebra("poisson_abelian2", f).unwrap();
        let s = poisson_usga(&v).unwrap();
        assert_eq!(s.dim(), 12);
        let br = s.as_algebra().unwrap().single_op(1).unwrap();
        assert!(!br.satisfies(IdentityTag::Anticommutative));
        let c = comm_poisson_usga(&v).unwrap();
        assert_eq!(c.dim(), 8);
        assert!(!c.as_algebra().unwrap().single_op(0).unwrap().satisfies(IdentityTag::Commutative));
    }
}

#[test]
fn repro_suite_is_deterministic() {
    let a = repro_suite(FieldSpec::Rationals, &[]).unwrap();
    let b = repro_suite(FieldSpec::Rationals, &[]).unwrap();
    assert!(a.pass);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let only = repro_suite(FieldSpec::prime(7).unwrap(), &[Fact::A, Fact::G]).unwrap();
    assert_eq!(only.facts.len(), 2);
    assert!(only.pass);
}
