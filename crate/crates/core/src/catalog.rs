//! Built-in algebras, actions and morphisms, a reproduction suite for the
//! worked examples, and a random search over small Poisson algebras.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::actions::{
    action_to_morphism, is_acting_morphism_in, morphism_to_action, validate_action, weak_actor, ActionData, ActionError,
    MorphismData, Variety,
};
use crate::algebra::{is_homomorphism, Algebra, AlgebraError, BilinearMap, IdentityTag, Witness};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Matrix, Subspace};
use crate::opspace::{
    biderivations, check_bim_commutation, comm_poisson_usga, derivations, inner_embedding, poisson_usga, OpSpaceError,
    OperatorKind, OperatorSpace, OperatorTuple,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("UnknownName: {0}")]
    UnknownName(String),
    #[error("SelfCheckFailed: builtin {name} is not {variety}: {witness}")]
    SelfCheck { name: String, variety: Variety, witness: Witness },
    #[error("UnknownFact: {0}")]
    UnknownFact(String),
    #[error("InvalidSearch: {0}")]
    InvalidSearch(String),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    OpSpace(#[from] OpSpaceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

// ---- builtin algebras ---------------------------------------------------------------

struct AlgebraEntry {
    name: &'static str,
    varieties: &'static [Variety],
    lie: bool,
    build: fn(FieldSpec) -> Algebra,
}

type Entry = (usize, usize, usize, i64);

fn one_op(f: FieldSpec, dim: usize, name: &str, entries: &[Entry]) -> Algebra {
    let e = entries.iter().map(|&(i, j, k, c)| (i, j, k, f.from_i64(c)));
    Algebra::with_op(f, dim, name, e).expect("builtin structure constants")
}

fn skew(pairs: &[Entry]) -> Vec<Entry> {
    pairs.iter().flat_map(|&(i, j, k, c)| [(i, j, k, c), (j, i, k, -c)]).collect()
}

fn two_ops(f: FieldSpec, dim: usize, prod: &[Entry], br: &[Entry]) -> Algebra {
    let p = prod.iter().map(|&(i, j, k, c)| (i, j, k, f.from_i64(c)));
    let b = br.iter().map(|&(i, j, k, c)| (i, j, k, f.from_i64(c)));
    Algebra::with_product_and_bracket(f, dim, p, b).expect("builtin structure constants")
}

fn labelled(a: Algebra, labels: &[&str]) -> Algebra {
    a.with_labels(Some(labels.iter().map(|s| s.to_string()).collect())).expect("label count")
}

const LEIB: &[Variety] = &[Variety::Leibniz];
const ZERO1: &[Variety] = &[Variety::Leibniz, Variety::Associative];
const ASSOC: &[Variety] = &[Variety::Associative];
const POIS: &[Variety] = &[Variety::Poisson];
const CPOIS: &[Variety] = &[Variety::Poisson, Variety::CommPoisson];

const ALGEBRAS: &[AlgebraEntry] = &[
    AlgebraEntry { name: "abelian1", varieties: ZERO1, lie: true, build: |f| Algebra::abelian(f, 1, 1) },
    AlgebraEntry { name: "abelian2", varieties: ZERO1, lie: true, build: |f| Algebra::abelian(f, 2, 1) },
    AlgebraEntry {
        name: "leibniz_2dim_nonlie",
        varieties: LEIB,
        lie: false,
        build: |f| one_op(f, 2, "bracket", &[(1, 1, 0, 1)]),
    },
    AlgebraEntry {
        name: "lie_2dim",
        varieties: LEIB,
        lie: true,
        build: |f| one_op(f, 2, "bracket", &skew(&[(0, 1, 1, 1)])),
    },
    AlgebraEntry {
        name: "heisenberg",
        varieties: LEIB,
        lie: true,
        build: |f| labelled(one_op(f, 3, "bracket", &skew(&[(0, 1, 2, 1)])), &["x", "y", "z"]),
    },
    AlgebraEntry {
        name: "sl2",
        varieties: LEIB,
        lie: true,
        build: |f| {
            let a = one_op(f, 3, "bracket", &skew(&[(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)]));
            labelled(a, &["h", "e", "f"])
        },
    },
    AlgebraEntry {
        name: "unital_1dim",
        varieties: ASSOC,
        lie: false,
        build: |f| one_op(f, 1, "mul", &[(0, 0, 0, 1)]),
    },
    AlgebraEntry {
        name: "truncated_poly",
        varieties: ASSOC,
        lie: false,
        build: |f| labelled(one_op(f, 2, "mul", &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]), &["1", "t"]),
    },
    AlgebraEntry {
        name: "triangular_2dim",
        varieties: ASSOC,
        lie: false,
        build: |f| one_op(f, 2, "mul", &[(0, 0, 0, 1), (0, 1, 1, 1)]),
    },
    AlgebraEntry { name: "poisson_abelian1", varieties: CPOIS, lie: false, build: |f| Algebra::abelian(f, 1, 2) },
    AlgebraEntry { name: "poisson_abelian2", varieties: CPOIS, lie: false, build: |f| Algebra::abelian(f, 2, 2) },
    AlgebraEntry {
        name: "poisson_unital1",
        varieties: CPOIS,
        lie: false,
        build: |f| two_ops(f, 1, &[(0, 0, 0, 1)], &[]),
    },
    AlgebraEntry {
        name: "poisson_truncated",
        varieties: CPOIS,
        lie: false,
        build: |f| two_ops(f, 2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)], &[]),
    },
    AlgebraEntry {
        name: "poisson_lie_2dim",
        varieties: CPOIS,
        lie: false,
        build: |f| two_ops(f, 2, &[], &skew(&[(0, 1, 1, 1)])),
    },
    AlgebraEntry {
        name: "poisson_triangular",
        varieties: POIS,
        lie: false,
        // the associative product with its commutator bracket
        build: |f| two_ops(f, 2, &[(0, 0, 0, 1), (0, 1, 1, 1)], &[(0, 1, 1, 1), (1, 0, 1, -1)]),
    },
];

fn algebra_entry(name: &str) -> Option<&'static AlgebraEntry> {
    ALGEBRAS.iter().find(|e| e.name == name)
}

/// Builds a catalog algebra and checks it against every variety it is listed under.
pub fn catalog_algebra(name: &str, field: FieldSpec) -> Result<Algebra, CatalogError> {
    let e = algebra_entry(name).ok_or_else(|| CatalogError::UnknownName(name.into()))?;
    let a = (e.build)(field);
    for &v in e.varieties {
        if let Some(witness) = v.check(&a)?.witness {
            return Err(CatalogError::SelfCheck { name: name.into(), variety: v, witness });
        }
    }
    if e.lie {
        if let Some(witness) = a.check_identity(IdentityTag::Lie)?.witness {
            return Err(CatalogError::SelfCheck { name: name.into(), variety: Variety::Leibniz, witness });
        }
    }
    Ok(a)
}

/// Names of catalog algebras in a variety, in registry order.
pub fn algebra_names(variety: Variety) -> Vec<&'static str> {
    ALGEBRAS.iter().filter(|e| e.varieties.contains(&variety)).map(|e| e.name).collect()
}

pub fn lie_algebra_names() -> Vec<&'static str> {
    ALGEBRAS.iter().filter(|e| e.lie).map(|e| e.name).collect()
}

pub fn all_algebra_names() -> Vec<&'static str> {
    ALGEBRAS.iter().map(|e| e.name).collect()
}

// ---- builtin actions and morphisms ----------------------------------------------------

/// `l_a(x) = ax` and `r_a(x) = ax` on the abelian line: a homomorphism into
/// `Bider(F)` that does not come from any split extension.
pub fn non_acting_scalar_action(field: FieldSpec) -> ActionData {
    let line = Algebra::abelian(field, 1, 1);
    let one = || BilinearMap::from_entries(field, (1, 1, 1), [(0, 0, 0, field.one())]).expect("1x1x1");
    ActionData::new(Variety::Leibniz, line.clone(), line, one(), Some(one()), None).expect("shapes")
}

/// `a ↦ (d_a, D_a)` with `d_a(x) = -ax`, `D_a(x) = ax`.
pub fn non_acting_scalar_morphism(field: FieldSpec) -> MorphismData {
    let line = Algebra::abelian(field, 1, 1);
    let m = |c: i64| Matrix::from_flat(field, 1, 1, vec![field.from_i64(c)]);
    MorphismData {
        variety: Variety::Leibniz,
        acting: line.clone(),
        kernel: line,
        images: vec![OperatorTuple::new(vec![m(-1), m(1)])],
    }
}

/// `l = Ad`, `r = ad`: `l_x(b) = [x, b]`, `r_y(a) = [a, y]`.
pub fn biadjoint_action(g: &Algebra) -> ActionData {
    let b = g.bracket();
    ActionData::new(Variety::Leibniz, g.clone(), g.clone(), b.clone(), Some(b.clone()), None).expect("shapes")
}

/// An associative or Poisson algebra acting on itself through its own operations.
pub fn regular_action(a: &Algebra, variety: Variety) -> Result<ActionData, ActionError> {
    let m = a.product().clone();
    match variety {
        Variety::Associative => ActionData::new(variety, a.clone(), a.clone(), m.clone(), Some(m), None),
        Variety::Leibniz => Ok(biadjoint_action(a)),
        Variety::Poisson => {
            ActionData::new(variety, a.clone(), a.clone(), m.clone(), Some(m), Some(a.bracket().clone()))
        }
        Variety::CommPoisson => ActionData::new(variety, a.clone(), a.clone(), m, None, Some(a.bracket().clone())),
    }
}

/// A builtin object: an algebra, an action or a morphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Builtin {
    Algebra(Algebra),
    Action(ActionData),
    Morphism(MorphismData),
}

/// Every catalog action with its name. Invalid ones are included; filter with
/// [`validate_action`] where needed.
pub fn catalog_actions(field: FieldSpec) -> Result<Vec<(String, ActionData)>, CatalogError> {
    let mut out = Vec::new();
    for name in algebra_names(Variety::Leibniz) {
        let g = catalog_algebra(name, field)?;
        out.push((format!("biadjoint_{name}"), biadjoint_action(&g)));
        out.push((format!("zero_{name}"), ActionData::zero(Variety::Leibniz, g.clone(), g)?));
    }
    for v in [Variety::Associative, Variety::Poisson, Variety::CommPoisson] {
        for name in algebra_names(v) {
            let a = catalog_algebra(name, field)?;
            let prefix = match v {
                Variety::Associative => "regular",
                Variety::Poisson => "regular_poisson",
                _ => "regular_comm_poisson",
            };
            out.push((format!("{prefix}_{name}"), regular_action(&a, v)?));
        }
    }
    // the line acting on itself by scalars in each Poisson variety
    let unit = catalog_algebra("poisson_unital1", field)?;
    let line = catalog_algebra("poisson_abelian1", field)?;
    let s = |c: i64| BilinearMap::from_entries(field, (1, 1, 1), [(0, 0, 0, field.from_i64(c))]).expect("1x1x1");
    out.push((
        "poisson_scalar_line".into(),
        ActionData::new(Variety::Poisson, unit.clone(), line.clone(), s(1), Some(s(1)), Some(s(0)))?,
    ));
    out.push((
        "comm_poisson_scalar_line".into(),
        ActionData::new(Variety::CommPoisson, unit, line, s(1), None, Some(s(0)))?,
    ));
    out.push(("non_acting_scalar_action".into(), non_acting_scalar_action(field)));
    Ok(out)
}

pub fn builtin_names(field: FieldSpec) -> Result<Vec<String>, CatalogError> {
    let mut names: Vec<String> = all_algebra_names().into_iter().map(String::from).collect();
    names.extend(catalog_actions(field)?.into_iter().map(|(n, _)| n));
    names.push("non_acting_scalar_morphism".into());
    Ok(names)
}

pub fn builtin(name: &str, field: FieldSpec) -> Result<Builtin, CatalogError> {
    if algebra_entry(name).is_some() {
        return Ok(Builtin::Algebra(catalog_algebra(name, field)?));
    }
    if let Some(args) = name.strip_prefix("abelian(").and_then(|r| r.strip_suffix(')')) {
        return abelian_from_args(args, field).map(Builtin::Algebra);
    }
    if name == "non_acting_scalar_morphism" {
        return Ok(Builtin::Morphism(non_acting_scalar_morphism(field)));
    }
    catalog_actions(field)?
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, a)| Builtin::Action(a))
        .ok_or_else(|| CatalogError::UnknownName(name.into()))
}

/// `abelian(n)` or `abelian(n,F)` with `F` either `Q` or a prime.
fn abelian_from_args(args: &str, field: FieldSpec) -> Result<Algebra, CatalogError> {
    let bad = || CatalogError::UnknownName(format!("abelian({args})"));
    let mut parts = args.split(',').map(str::trim);
    let n: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    let field = match parts.next() {
        None => field,
        Some(q) if q.eq_ignore_ascii_case("q") => FieldSpec::Rationals,
        Some(p) => p.parse().ok().and_then(|p| FieldSpec::prime(p).ok()).ok_or_else(bad)?,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(Algebra::abelian(field, n, 1))
}

// ---- reproduction suite ---------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Fact {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "d")]
    D,
    #[serde(rename = "e")]
    E,
    #[serde(rename = "f")]
    F,
    #[serde(rename = "g")]
    G,
}

impl Fact {
    pub const ALL: [Fact; 7] = [Fact::A, Fact::B, Fact::C, Fact::D, Fact::E, Fact::F, Fact::G];

    pub fn id(&self) -> &'static str {
        ["a", "b", "c", "d", "e", "f", "g"][*self as usize]
    }

    pub fn title(&self) -> &'static str {
        match self {
            Fact::A => "Bider of the line is End(F)^2; the scalar morphism is a non-acting homomorphism",
            Fact::B => "bi-adjoint actions are valid and map onto inner biderivations",
            Fact::C => "for Lie algebras the diagonal pairs (d, d) form a copy of Der inside Bider",
            Fact::D => "Poisson V = F: [V] is F^3 with zero bracket, a Poisson algebra and an actor",
            Fact::E => "Poisson V = F^2: [V] is M2(F)^3 and its bracket is not skew-symmetric",
            Fact::F => "commutative Poisson V = F^2: [V]_c is End(V)^2 with a non-commutative product",
            Fact::G => "bimultiplier commutation holds for V = F although Ann(V) = V and V^2 = 0",
        }
    }
}

impl FromStr for Fact {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        Fact::ALL
            .into_iter()
            .find(|f| f.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| CatalogError::UnknownFact(s.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub statement: String,
    pub pass: bool,
    pub observed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactReport {
    pub id: Fact,
    pub title: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReproReport {
    pub field: FieldSpec,
    pub pass: bool,
    pub facts: Vec<FactReport>,
}

impl fmt::Display for ReproReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        for fact in &self.facts {
            writeln!(f, "({}) {} {}", fact.id.id(), verdict(fact.pass), fact.title)?;
            for c in &fact.checks {
                writeln!(f, "    {} {}: {}", verdict(c.pass), c.statement, c.observed)?;
                if let Some(w) = &c.witness {
                    writeln!(f, "        witness {w}")?;
                }
            }
        }
        write!(f, "{}", if self.pass { "all facts confirmed" } else { "some facts FAILED" })
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "ok  "
    } else {
        "FAIL"
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, statement: impl Into<String>, pass: bool, observed: impl Into<String>) {
        self.0.push(Check { statement: statement.into(), pass, observed: observed.into(), witness: None });
    }

    fn add_witness(&mut self, statement: impl Into<String>, pass: bool, observed: impl Into<String>, w: Option<Witness>) {
        self.0.push(Check { statement: statement.into(), pass, observed: observed.into(), witness: w });
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, statement: impl Into<String>, got: T, want: T) {
        let pass = got == want;
        self.add(statement, pass, format!("{got:?}"));
    }
}

/// Runs the selected facts (all when `only` is empty) over `field`.
pub fn repro_suite(field: FieldSpec, only: &[Fact]) -> Result<ReproReport, CatalogError> {
    let selected: Vec<Fact> = Fact::ALL.into_iter().filter(|f| only.is_empty() || only.contains(f)).collect();
    let facts = selected
        .into_iter()
        .map(|fact| {
            let mut c = Checks::default();
            match fact {
                Fact::A => fact_a(field, &mut c)?,
                Fact::B => fact_b(field, &mut c)?,
                Fact::C => fact_c(field, &mut c)?,
                Fact::D => fact_d(field, &mut c)?,
                Fact::E => fact_e(field, &mut c)?,
                Fact::F => fact_f(field, &mut c)?,
                Fact::G => fact_g(field, &mut c)?,
            }
            let pass = c.0.iter().all(|x| x.pass);
            Ok(FactReport { id: fact, title: fact.title().into(), pass, checks: c.0 })
        })
        .collect::<Result<Vec<_>, CatalogError>>()?;
    let pass = facts.iter().all(|f| f.pass);
    Ok(ReproReport { field, pass, facts })
}

fn fact_a(field: FieldSpec, c: &mut Checks) -> Result<(), CatalogError> {
    let line = catalog_algebra("abelian1", field)?;
    let bider = biderivations(&line)?;
    c.eq("dim Bider(F) = 2", bider.dim(), 2);
    let m = non_acting_scalar_morphism(field);
    let phi = m.matrix_in(&bider)?;
    let hom = is_homomorphism(&phi, &line, bider.as_algebra()?)?;
    c.add_witness("the scalar morphism is a homomorphism", hom.holds, hom.holds.to_string(), hom.witness);
    let rep = is_acting_morphism_in(&phi, &line, &bider, Variety::Leibniz)?;
    let defect = rep.witness.as_ref().map(|w| w.defect.iter().map(Scalar::to_string).collect::<Vec<_>>());
    c.add_witness("the scalar morphism is not acting", !rep.acting, rep.criterion.clone(), rep.witness.clone());
    c.eq("defect of the acting condition at a = b = x = 1", defect, Some(vec!["2".to_string()]));
    let action = morphism_to_action(&phi, &line, &line, Variety::Leibniz)?;
    let v = validate_action(&action)?;
    c.eq("its action fails exactly L6", v.failed(), vec!["L6"]);
    Ok(())
}

fn fact_b(field: FieldSpec, c: &mut Checks) -> Result<(), CatalogError> {
    for name in algebra_names(Variety::Leibniz) {
        let g = catalog_algebra(name, field)?;
        let a = biadjoint_action(&g);
        let v = validate_action(&a)?;
        c.add(format!("bi-adjoint action of {name} is valid"), v.pass, v.failed().join(","));
        let m = action_to_morphism(&a)?;
        let inner = inner_embedding(&biderivations(&g)?)?;
        c.add(format!("its morphism is the inner map x ↦ (-ad_x, Ad_x) on {name}"), m.map == inner.map, "compared");
    }
    Ok(())
}

/// The map `Der(h) → Bider(h)`, `d ↦ (d, d)`, or `None` if some pair leaves `Bider`.
pub fn diagonal_map(der: &OperatorSpace, bider: &OperatorSpace) -> Option<Matrix> {
    let cols = der
        .basis()
        .iter()
        .map(|t| {
            let d = &t.components[0];
            bider.coordinates(&OperatorTuple::new(vec![d.clone(), d.clone()]))
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Matrix::from_columns(der.base().field(), bider.dim(), &cols))
}

fn fact_c(field: FieldSpec, c: &mut Checks) -> Result<(), CatalogError> {
    for name in lie_algebra_names() {
        let h = catalog_algebra(name, field)?;
        let der = derivations(&h)?;
        let bider = biderivations(&h)?;
        let Some(map) = diagonal_map(&der, &bider) else {
            c.add(format!("(d, d) ∈ Bider({name}) for d ∈ Der"), false, "escapes");
            continue;
        };
        let image = Subspace::span(field, bider.dim(), (0..map.cols()).map(|j| map.column(j)));
        let closed = bider.as_algebra()?.is_closed(&image, 0);
        let hom = is_homomorphism(&map, der.as_algebra()?, bider.as_algebra()?)?;
        c.add(
            format!("diagonal of Bider({name}) is a subalgebra isomorphic to Der"),
            closed && hom.holds && map.rank() == der.dim(),
            format!("dim {} in Bider of dim {}", image.dim(), bider.dim()),
        );
    }
    Ok(())
}

/// The displayed product on `[V]` for `V = F`: `(a,b,c)(a',b',c') = (aa', b'b, ac' + b'c)`.
fn line_usga_product_matches(space: &OperatorSpace) -> bool {
    let s = |t: &OperatorTuple, k: usize| -> Scalar { t.components[k].get(0, 0).clone() };
    let f = space.base().field();
    let m = |v: Scalar| Matrix::from_flat(f, 1, 1, vec![v]);
    space.basis().iter().all(|x| {
        space.basis().iter().all(|y| {
            let want = OperatorTuple::new(vec![
                m(&s(x, 0) * &s(y, 0)),
                m(&s(y, 1) * &s(x, 1)),
                m(&(&s(x, 0) * &s(y, 2)) + &(&s(y, 1) * &s(x, 2))),
            ]);
            space.kind().combine(0, x, y) == want
        })
    })
}

fn fact_d(field: FieldSpec, c: &mut Checks) -> Result<(), CatalogError> {
    let v = catalog_algebra("poisson_abelian1", field)?;
    let usga = poisson_usga(&v)?;
    let alg = usga.as_algebra()?;
    c.eq("dim [V] = 3", usga.dim(), 3);
    c.add("product is (aa', b'b, ac' + b'c)", line_usga_product_matches(&usga), "compared on the basis");
    c.add("bracket of [V] is zero", alg.bracket().is_zero(), "zero tensor");
    let p = alg.check_identity(IdentityTag::Poisson)?;
    c.add_witness("[V] is a Poisson algebra", p.holds, p.holds.to_string(), p.witness);
    let id = Matrix::identity(field, usga.dim());
    let rep = is_acting_morphism_in(&id, alg, &usga, Variety::Poisson)?;
    c.add_witness("the identity of [V] is an acting morphism", rep.acting, rep.criterion, rep.witness);
    Ok(())
}

fn fact_e(field: FieldSpec, c: &mut Checks) -> Result<(), CatalogError> {
    let v = catalog_algebra("poisson_abelian2", field)?;
    let usga = poisson_usga(&v)?;
    let alg = usga.as_algebra()?;
    c.eq("dim [V] = 12", usga.dim(), 12);
    let skew = alg.single_op(1)?.check_identity(IdentityTag::Anticommutative)?;
    c.add_witness("bracket of [V] is not skew-symmetric", !skew.holds, "witness pair below", skew.witness);
    let p = alg.check_identity(IdentityTag::Poisson)?;
    c.add("[V] is not a Poisson algebra", !p.holds, p.witness.map_or("holds".into(), |w| w.clause));
    Ok(())
}

fn fact_f(field: FieldSpec, c: &mut Checks) -> Result<(), CatalogError> {
    let v = catalog_algebra("poisson_abelian2", field)?;
    let usga = comm_poisson_usga(&v)?;
    let alg = usga.as_algebra()?;
    c.eq("dim [V]_c = 8", usga.dim(), 8);
    let comm = alg.single_op(0)?.check_identity(IdentityTag::Commutative)?;
    c.add_witness("product of [V]_c is not commutative", !comm.holds, "witness pair below", comm.witness);
    Ok(())
}

fn fact_g(field: FieldSpec, c: &mut Checks) -> Result<(), CatalogError> {
    let v = catalog_algebra("poisson_abelian1", field)?;
    let r = check_bim_commutation(&v)?;
    c.add("every left multiplier commutes with every right multiplier", r.holds, r.holds.to_string());
    let ann = v.annihilator();
    c.add("Ann(V) = V", ann == Subspace::whole(field, 1), format!("dim Ann(V) = {}", ann.dim()));
    c.eq("dim V^2 = 0", v.product_subspace(v.product_index())?.dim(), 0);
    Ok(())
}

// ---- random search ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub p: u64,
    pub dim: usize,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCounts {
    pub sampled: u64,
    pub poisson: u64,
    pub bim_commutation: u64,
    pub usga_poisson: u64,
    pub usga_not_poisson: u64,
}

/// A Poisson algebra `V` with commuting bimultipliers whose `[V]` is not Poisson.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub params: SearchParams,
    pub index: u64,
    pub algebra: Algebra,
    pub usga: OperatorSpace,
    pub failure: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub params: SearchParams,
    pub counts: StageCounts,
    pub findings: Vec<Finding>,
}

enum Outcome {
    NotPoisson,
    NoCommutation,
    UsgaPoisson,
    Found(Box<Finding>),
}

/// The structure constants drawn for sample `index`. Each sample has its own
/// ChaCha stream, so results do not depend on scheduling.
pub fn sample_algebra(params: &SearchParams, index: u64) -> Result<Algebra, CatalogError> {
    let field = FieldSpec::prime(params.p).map_err(|e| CatalogError::InvalidSearch(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(index);
    let n = params.dim;
    let density = 1.0 / (n as f64 + 1.0);
    let draw = |rng: &mut ChaCha8Rng| -> u64 {
        if rng.random_bool(density) {
            rng.random_range(1..params.p)
        } else {
            0
        }
    };
    let mut prod = Vec::new();
    let mut br = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = draw(&mut rng);
                if c != 0 {
                    prod.push((i, j, k, field.from_u64(c)));
                }
                if i < j {
                    let c = draw(&mut rng);
                    if c != 0 {
                        br.push((i, j, k, field.from_u64(c)));
                        br.push((j, i, k, -&field.from_u64(c)));
                    }
                }
            }
        }
    }
    Ok(Algebra::with_product_and_bracket(field, n, prod, br)?)
}

fn examine(params: &SearchParams, index: u64) -> Result<Outcome, CatalogError> {
    let v = sample_algebra(params, index)?;
    if !v.satisfies(IdentityTag::Poisson) {
        return Ok(Outcome::NotPoisson);
    }
    if !check_bim_commutation(&v)?.holds {
        return Ok(Outcome::NoCommutation);
    }
    let usga = poisson_usga(&v)?;
    let rep = usga.as_algebra()?.check_identity(IdentityTag::Poisson)?;
    Ok(match rep.witness {
        None => Outcome::UsgaPoisson,
        Some(failure) => Outcome::Found(Box::new(Finding { params: *params, index, algebra: v, usga, failure })),
    })
}

/// Samples Poisson structures on `F_p^dim` looking for one with commuting
/// bimultipliers whose `[V]` fails the Poisson identities.
pub fn open_problem_search(params: SearchParams) -> Result<SearchReport, CatalogError> {
    FieldSpec::prime(params.p).map_err(|e| CatalogError::InvalidSearch(e.to_string()))?;
    let outcomes =
        (0..params.samples).into_par_iter().map(|i| examine(&params, i)).collect::<Result<Vec<_>, _>>()?;
    let mut counts = StageCounts { sampled: params.samples, ..StageCounts::default() };
    let mut findings = Vec::new();
    for o in outcomes {
        if matches!(o, Outcome::NotPoisson) {
            continue;
        }
        counts.poisson += 1;
        if matches!(o, Outcome::NoCommutation) {
            continue;
        }
        counts.bim_commutation += 1;
        match o {
            Outcome::UsgaPoisson => counts.usga_poisson += 1,
            Outcome::Found(f) => {
                counts.usga_not_poisson += 1;
                findings.push(*f);
            }
            _ => unreachable!(),
        }
    }
    Ok(SearchReport { params, counts, findings })
}

/// The parts of a saved finding needed to re-run it.
#[derive(Debug, Clone, Deserialize)]
pub struct FindingFile {
    pub params: SearchParams,
    pub index: u64,
    pub algebra: Algebra,
    pub usga: serde_json::Value,
    pub failure: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FindingCheck {
    pub confirmed: bool,
    pub reproducible_from_seed: bool,
    pub checks: Vec<Check>,
}

/// Recomputes everything a finding claims from its algebra alone.
pub fn verify_finding(f: &FindingFile) -> Result<FindingCheck, CatalogError> {
    let mut c = Checks::default();
    let v = &f.algebra;
    let p = v.check_identity(IdentityTag::Poisson)?;
    c.add_witness("V is a Poisson algebra", p.holds, p.holds.to_string(), p.witness);
    if p.holds {
        let comm = check_bim_commutation(v)?;
        c.add("bimultipliers of V commute", comm.holds, comm.holds.to_string());
        let usga = poisson_usga(v)?;
        let same = serde_json::to_value(&usga).map(|x| x == f.usga).unwrap_or(false);
        c.add("recomputed [V] matches the bundle", same, format!("dim {}", usga.dim()));
        let rep = usga.as_algebra()?.check_identity(IdentityTag::Poisson)?;
        let same_witness = serde_json::to_value(&rep.witness).map(|x| x == f.failure).unwrap_or(false);
        c.add_witness("[V] is not a Poisson algebra", !rep.holds, "recomputed", rep.witness);
        c.add("the failing tuple matches the bundle", same_witness, "compared");
    }
    let reproducible_from_seed = sample_algebra(&f.params, f.index).map(|a| &a == v).unwrap_or(false);
    let confirmed = c.0.iter().all(|x| x.pass);
    Ok(FindingCheck { confirmed, reproducible_from_seed, checks: c.0 })
}

/// Weak actor of a catalog algebra in each variety it belongs to.
pub fn catalog_weak_actors(field: FieldSpec) -> Result<Vec<(String, Variety, OperatorSpace)>, CatalogError> {
    let mut out = Vec::new();
    for e in ALGEBRAS {
        let a = catalog_algebra(e.name, field)?;
        for &v in e.varieties {
            out.push((e.name.to_string(), v, weak_actor(&a, v)?));
        }
    }
    Ok(out)
}

/// Operator kinds that make sense on an algebra of a given variety.
pub fn kinds_for(variety: Variety) -> &'static [OperatorKind] {
    match variety {
        Variety::Leibniz => {
            &[OperatorKind::Derivations, OperatorKind::AntiDerivations, OperatorKind::Biderivations]
        }
        Variety::Associative => &[OperatorKind::Derivations, OperatorKind::Bimultipliers],
        Variety::Poisson => &[OperatorKind::Derivations, OperatorKind::Bimultipliers, OperatorKind::PoissonActor],
        Variety::CommPoisson => &[
            OperatorKind::Derivations,
            OperatorKind::Bimultipliers,
            OperatorKind::Multipliers,
            OperatorKind::PoissonActor,
            OperatorKind::CommPoissonActor,
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_loads() {
        for f in [FieldSpec::Rationals, FieldSpec::prime(3).unwrap(), FieldSpec::prime(5).unwrap()] {
            for name in builtin_names(f).unwrap() {
                builtin(&name, f).unwrap();
            }
        }
        assert!(matches!(builtin("nope", FieldSpec::Rationals), Err(CatalogError::UnknownName(_))));
        let Builtin::Algebra(a) = builtin("abelian(3,5)", FieldSpec::Rationals).unwrap() else { panic!() };
        assert_eq!((a.dim(), a.field()), (3, FieldSpec::prime(5).unwrap()));
        assert!(a.ops().iter().all(|o| o.map.is_zero()));
        assert!(builtin("abelian(x)", FieldSpec::Rationals).is_err());
    }

    #[test]
    fn leibniz_2dim_is_not_lie() {
        let a = catalog_algebra("leibniz_2dim_nonlie", FieldSpec::Rationals).unwrap();
        assert!(a.satisfies(IdentityTag::LeibnizRight));
        assert!(!a.satisfies(IdentityTag::Lie));
    }

    #[test]
    fn sl2_is_perfect_with_trivial_center() {
        for f in [FieldSpec::Rationals, FieldSpec::prime(3).unwrap()] {
            let a = catalog_algebra("sl2", f).unwrap();
            assert_eq!(a.centers().center.dim(), 0);
            assert_eq!(a.product_subspace(0).unwrap().dim(), 3);
        }
    }

    #[test]
    fn repro_passes() {
        for f in [FieldSpec::Rationals, FieldSpec::prime(5).unwrap()] {
            let r = repro_suite(f, &[]).unwrap();
            assert!(r.pass, "{r}");
            assert_eq!(r.facts.len(), 7);
        }
    }

    #[test]
    fn repro_single_fact_prints_witness() {
        let r = repro_suite(FieldSpec::Rationals, &[Fact::E]).unwrap();
        assert_eq!(r.facts.len(), 1);
        assert!(r.to_string().contains("witness"));
    }

    #[test]
    fn catalog_actions_are_valid_except_the_scalar_one() {
        for (name, a) in catalog_actions(FieldSpec::prime(3).unwrap()).unwrap() {
            let ok = validate_action(&a).unwrap().pass;
            assert_eq!(ok, name != "non_acting_scalar_action", "{name}");
        }
    }

    #[test]
    fn search_is_deterministic() {
        let params = SearchParams { p: 3, dim: 2, samples: 60, seed: 7 };
        let a = open_problem_search(params).unwrap();
        let b = open_problem_search(params).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let z = open_problem_search(SearchParams { samples: 0, ..params }).unwrap();
        assert_eq!(z.counts, StageCounts::default());
    }

    #[test]
    fn dim_one_search_finds_nothing() {
        let r = open_problem_search(SearchParams { p: 3, dim: 1, samples: 100, seed: 0 }).unwrap();
        assert!(r.findings.is_empty());
        assert!(r.counts.usga_poisson > 0);
    }
}
