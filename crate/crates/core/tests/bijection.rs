use std::collections::BTreeSet;

use algact::actions::{
    action_to_morphism_in, enumerate_acting_morphisms, enumerate_actions, is_acting_morphism_in, morphism_to_action_in,
    validate_action, weak_actor, ActionError, Variety, DEFAULT_BUDGET,
};
use algact::algebra::is_homomorphism;
use algact::catalog::catalog_algebra;
use algact::{Algebra, FieldSpec, Matrix};

fn f3() -> FieldSpec {
    FieldSpec::prime(3).unwrap()
}

fn key(m: &Matrix) -> Vec<String> {
    m.as_flat().iter().map(|c| c.to_string()).collect()
}

fn check_bijection(v: Variety, b: &str, x: &str) -> usize {
    let (b, x) = (catalog_algebra(b, f3()).unwrap(), catalog_algebra(x, f3()).unwrap());
    let actor = weak_actor(&x, v).unwrap();
    let actions = enumerate_actions(&b, &x, v, DEFAULT_BUDGET).unwrap();
    let morphisms = enumerate_acting_morphisms(&b, &x, v, DEFAULT_BUDGET).unwrap();
    let images: Vec<_> = actions.iter().map(|a| key(&action_to_morphism_in(a, &actor).unwrap().map)).collect();
    let image_set: BTreeSet<_> = images.iter().cloned().collect();
    assert_eq!(image_set.len(), images.len(), "action_to_morphism is not injective");
    let target: BTreeSet<_> = morphisms.iter().map(key).collect();
    assert_eq!(image_set, target, "{v}");
    for m in &morphisms {
        let a = morphism_to_action_in(m, &b, &actor, v).unwrap();
        assert!(actions.contains(&a));
    }
    actions.len()
}

#[test]
fn leibniz_pairs() {
    assert_eq!(check_bijection(Variety::Leibniz, "abelian1", "abelian1"), 5);
    check_bijection(Variety::Leibniz, "abelian1", "leibniz_2dim_nonlie");
    check_bijection(Variety::Leibniz, "leibniz_2dim_nonlie", "abelian1");
    check_bijection(Variety::Leibniz, "lie_2dim", "abelian1");
    check_bijection(Variety::Leibniz, "abelian1", "lie_2dim");
    let l2 = catalog_algebra("leibniz_2dim_nonlie", f3()).unwrap();
    assert!(matches!(
        enumerate_actions(&l2, &l2, Variety::Leibniz, DEFAULT_BUDGET),
        Err(ActionError::BudgetExceeded { .. })
    ));
}

#[test]
fn associative_pairs() {
    for b in ["abelian1", "unital_1dim"] {
        for x in ["abelian1", "unital_1dim"] {
            check_bijection(Variety::Associative, b, x);
        }
    }
    check_bijection(Variety::Associative, "unital_1dim", "truncated_poly");
    check_bijection(Variety::Associative, "unital_1dim", "triangular_2dim");
}

/// The Poisson criterion only asks that the associative part acts; these
/// sweeps would expose a pair where that is not enough.
#[test]
fn poisson_pairs() {
    for v in [Variety::Poisson, Variety::CommPoisson] {
        for b in ["poisson_abelian1", "poisson_unital1"] {
            for x in ["poisson_abelian1", "poisson_unital1"] {
                check_bijection(v, b, x);
            }
        }
    }
    check_bijection(Variety::CommPoisson, "poisson_unital1", "poisson_lie_2dim");
    check_bijection(Variety::CommPoisson, "poisson_unital1", "poisson_truncated");
}

#[test]
fn zero_algebras_have_one_action() {
    let z = Algebra::abelian(f3(), 0, 1);
    assert_eq!(enumerate_actions(&z, &z, Variety::Leibniz, DEFAULT_BUDGET).unwrap().len(), 1);
}

/// All homomorphisms from a 1- or 2-dimensional algebra into the weak actor,
/// by exhaustion.
fn all_homs(b: &Algebra, actor: &algact::opspace::OperatorSpace) -> Vec<Matrix> {
    let f = b.field();
    let k = actor.dim();
    let nb = b.dim();
    let target = actor.as_algebra().unwrap();
    let elems = f.elements().unwrap();
    let p = elems.len();
    let total = p.pow((k * nb) as u32);
    (0..total)
        .filter_map(|mut code| {
            let data: Vec<_> = (0..k * nb)
                .map(|_| {
                    let c = elems[code % p].clone();
                    code /= p;
                    c
                })
                .collect();
            let m = Matrix::from_flat(f, k, nb, data);
            is_homomorphism(&m, b, target).unwrap().holds.then_some(m)
        })
        .collect()
}

#[test]
fn trivial_center_or_perfect_makes_every_hom_acting() {
    for name in ["sl2", "lie_2dim"] {
        let h = catalog_algebra(name, f3()).unwrap();
        let actor = weak_actor(&h, Variety::Leibniz).unwrap();
        let line = catalog_algebra("abelian1", f3()).unwrap();
        let homs = all_homs(&line, &actor);
        assert!(homs.len() > 1);
        for m in homs {
            assert!(is_acting_morphism_in(&m, &line, &actor, Variety::Leibniz).unwrap().acting, "{name}");
        }
    }
}

#[test]
fn commuting_bimultipliers_make_every_hom_acting() {
    let v = catalog_algebra("poisson_abelian1", f3()).unwrap();
    let actor = weak_actor(&v, Variety::Poisson).unwrap();
    for p in ["poisson_abelian1", "poisson_unital1"] {
        let p = catalog_algebra(p, f3()).unwrap();
        let homs = all_homs(&p, &actor);
        assert!(!homs.is_empty());
        for m in homs {
            let rep = is_acting_morphism_in(&m, &p, &actor, Variety::Poisson).unwrap();
            assert!(rep.acting);
            let a = morphism_to_action_in(&m, &p, &actor, Variety::Poisson).unwrap();
            assert!(validate_action(&a).unwrap().pass);
        }
    }
}

#[test]
fn non_commuting_line_has_non_acting_homs() {
    // the abelian line is the source of the non-acting scalar morphism
    let line = catalog_algebra("abelian1", f3()).unwrap();
    let actor = weak_actor(&line, Variety::Leibniz).unwrap();
    let homs = all_homs(&line, &actor);
    let acting = homs
        .iter()
        .filter(|m| is_acting_morphism_in(m, &line, &actor, Variety::Leibniz).unwrap().acting)
        .count();
    assert_eq!(homs.len(), 9);
    assert_eq!(acting, 5);
}
