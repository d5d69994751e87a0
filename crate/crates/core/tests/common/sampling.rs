//! Random and mutated actions over F_3 for the checker-equivalence sweeps.

#![allow(dead_code)]

use algact::actions::{enumerate_actions, semidirect_algebra, validate_action, ActionData, Variety};
use algact::algebra::BilinearMap;
use algact::catalog::{algebra_names, catalog_actions, catalog_algebra};
use algact::{Algebra, FieldSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f3() -> FieldSpec {
    FieldSpec::prime(3).unwrap()
}

pub fn small_algebras(v: Variety) -> Vec<Algebra> {
    let mut out: Vec<Algebra> = algebra_names(v)
        .into_iter()
        .map(|n| catalog_algebra(n, f3()).unwrap())
        .filter(|a| a.dim() <= 2)
        .collect();
    out.push(Algebra::abelian(f3(), 0, v.op_count()));
    out
}

fn random_map(rng: &mut ChaCha8Rng, shape: (usize, usize, usize)) -> BilinearMap {
    let f = f3();
    let mut m = BilinearMap::zeros(f, shape.0, shape.1, shape.2);
    for i in 0..shape.0 {
        for j in 0..shape.1 {
            for k in 0..shape.2 {
                m.set_entry(i, j, k, f.from_u64(rng.random_range(0..3)));
            }
        }
    }
    m
}

pub fn random_action(rng: &mut ChaCha8Rng, v: Variety, pool: &[Algebra]) -> ActionData {
    let b = pool[rng.random_range(0..pool.len())].clone();
    let x = pool[rng.random_range(0..pool.len())].clone();
    let (nb, nx) = (b.dim(), x.dim());
    let l = random_map(rng, (nb, nx, nx));
    let r = (v != Variety::CommPoisson).then(|| random_map(rng, (nx, nb, nx)));
    let k = matches!(v, Variety::Poisson | Variety::CommPoisson).then(|| random_map(rng, (nb, nx, nx)));
    ActionData::new(v, b, x, l, r, k).unwrap()
}

/// Changes one stored coefficient.
pub fn mutate(rng: &mut ChaCha8Rng, a: &ActionData) -> ActionData {
    let f = a.field();
    let mut l = a.l().clone();
    let mut r = a.stored_r().cloned();
    let mut k = a.bracket_action().cloned();
    let mut slots: Vec<&mut BilinearMap> = vec![&mut l];
    slots.extend(r.as_mut());
    slots.extend(k.as_mut());
    slots.retain(|m| {
        let (x, y, z) = m.shape();
        x * y * z > 0
    });
    if !slots.is_empty() {
        let which = rng.random_range(0..slots.len());
        let m = &mut slots[which];
        let (x, y, z) = m.shape();
        let (i, j, o) = (rng.random_range(0..x), rng.random_range(0..y), rng.random_range(0..z));
        let bump = f.from_u64(rng.random_range(1..3));
        let c = m.entry(i, j, o) + &bump;
        m.set_entry(i, j, o, c);
    }
    ActionData::new(a.variety(), a.acting().clone(), a.kernel().clone(), l, r, k).unwrap()
}

pub fn valid_pool(v: Variety, algebras: &[Algebra]) -> Vec<ActionData> {
    let mut pool: Vec<ActionData> = catalog_actions(f3())
        .unwrap()
        .into_iter()
        .map(|(_, a)| a)
        .filter(|a| a.variety() == v && a.acting().dim() <= 2 && a.kernel().dim() <= 2)
        .filter(|a| validate_action(a).unwrap().pass)
        .collect();
    for b in algebras {
        for x in algebras {
            if let Ok(list) = enumerate_actions(b, x, v, 6561) {
                pool.extend(list.into_iter().filter(|a| !a.l().is_zero()).take(20));
            }
        }
    }
    pool
}

/// `(validate_action verdict, variety checker on the semidirect algebra)`
pub fn verdicts(a: &ActionData) -> (bool, bool) {
    let verdict = validate_action(a).unwrap().pass;
    let total = semidirect_algebra(a).unwrap();
    (verdict, a.variety().check(&total).unwrap().holds)
}

/// Runs `count` instances for one variety; returns (agreements, valid, invalid).
pub fn sweep(v: Variety, count: usize) -> (usize, usize, usize) {
    let algebras = small_algebras(v);
    let pool = valid_pool(v, &algebras);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    rng.set_stream(v as u64);
    let (mut agree, mut pass, mut fail) = (0, 0, 0);
    for i in 0..count {
        let a = match i % 3 {
            0 => random_action(&mut rng, v, &algebras),
            1 => pool[rng.random_range(0..pool.len())].clone(),
            _ => {
                let base = pool[rng.random_range(0..pool.len())].clone();
                mutate(&mut rng, &base)
            }
        };
        let (verdict, checker) = verdicts(&a);
        if verdict == checker {
            agree += 1;
        }
        if verdict {
            pass += 1;
        } else {
            fail += 1;
        }
    }
    (agree, pass, fail)
}
