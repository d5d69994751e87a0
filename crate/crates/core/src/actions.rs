//! Derived actions, split extensions and acting morphisms.
//!
//! Conventions, used everywhere below. `B` acts on `X`.
//!
//! | variety       | maps                                   | morphism into the weak actor      |
//! |---------------|----------------------------------------|-----------------------------------|
//! | associative   | `l(p,y) = p*y`, `r(x,q) = x*q`         | `p ↦ (p*-, -*p)` in `Bim(X)`      |
//! | leibniz       | `l(x,b) = l_x(b)`, `r(a,y) = r_y(a)`   | `x ↦ (-r_x, l_x)` in `Bider(X)`   |
//! | poisson       | `l`, `r` as associative, `⟦p,y⟧`       | `p ↦ (p*-, -*p, ⟦p,-⟧)` in `[V]`  |
//! | comm_poisson  | `l`, `⟦p,y⟧`; `r(x,q) = l(q,x)`        | `p ↦ (p*-, ⟦p,-⟧)` in `[V]_c`     |
//!
//! Semidirect products live on `B ⊕ X` with the `B` coordinates first:
//!
//! * leibniz: `[(x,a),(y,b)] = ([x,y], [a,b] + l_x(b) + r_y(a))`
//! * associative: `(p,x)(q,y) = (pq, xy + p*y + x*q)`
//! * poisson: the associative product and
//!   `{(p,x),(q,y)} = ([p,q], [x,y] + ⟦p,y⟧ - ⟦q,x⟧)`
//!
//! Every condition checked by [`validate_action`] is multilinear in its
//! arguments, so evaluating it on basis tuples decides it.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    is_homomorphism, Algebra, AlgebraError, BilinearMap, BilinearOp, CoeffRepr, EntryRepr, IdentityReport, IdentityTag,
    Witness,
};
use crate::field::{FieldError, FieldSpec, Scalar};
use crate::linalg::{add_vectors, is_zero_vector, sub_vectors, unit_vector, Matrix, Vector};
use crate::opspace::{
    biderivations, bimultipliers, comm_poisson_usga, poisson_usga, tuple_defect, OpSpaceError, OperatorKind,
    OperatorSpace, OperatorTuple,
};

/// Default cap on the number of assignments an enumeration may visit: `3^10`.
pub const DEFAULT_BUDGET: u64 = 59_049;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("InvalidAction: fails {}", failed_labels(.0))]
    InvalidAction(Box<ValidationReport>),
    #[error("NotSplit: {0}")]
    NotSplit(String),
    #[error("KernelMismatch: {0}")]
    KernelMismatch(String),
    #[error("VarietyMismatch: {0}")]
    VarietyMismatch(String),
    #[error("TupleNotInSpace: operator tuple of acting basis element {index} is not in the weak actor ({reason})")]
    TupleNotInSpace { index: usize, reason: String },
    #[error("NotAHomomorphism: {0}")]
    NotAHomomorphism(Witness),
    #[error("NotInVariety: {role} algebra is not {variety}: {witness}")]
    NotInVariety { role: String, variety: Variety, witness: Witness },
    #[error("BudgetExceeded: {needed} assignments needed, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("NotFiniteField: enumeration needs a prime field, got {0}")]
    NotFiniteField(FieldSpec),
    #[error("UnknownVariety: {0}")]
    UnknownVariety(String),
    #[error(transparent)]
    OpSpace(#[from] OpSpaceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn failed_labels(r: &ValidationReport) -> String {
    let failed: Vec<&str> = r.conditions.iter().filter(|(_, v)| !v.holds).map(|(k, _)| k.as_str()).collect();
    failed.join(", ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variety {
    Associative,
    Leibniz,
    Poisson,
    CommPoisson,
}

impl Variety {
    pub const ALL: [Variety; 4] = [Variety::Associative, Variety::Leibniz, Variety::Poisson, Variety::CommPoisson];

    pub fn name(&self) -> &'static str {
        match self {
            Variety::Associative => "associative",
            Variety::Leibniz => "leibniz",
            Variety::Poisson => "poisson",
            Variety::CommPoisson => "comm_poisson",
        }
    }

    pub fn op_count(&self) -> usize {
        match self {
            Variety::Associative | Variety::Leibniz => 1,
            Variety::Poisson | Variety::CommPoisson => 2,
        }
    }

    pub fn weak_actor_kind(&self) -> OperatorKind {
        match self {
            Variety::Associative => OperatorKind::Bimultipliers,
            Variety::Leibniz => OperatorKind::Biderivations,
            Variety::Poisson => OperatorKind::PoissonActor,
            Variety::CommPoisson => OperatorKind::CommPoissonActor,
        }
    }

    /// Runs the identity checker of the variety.
    pub fn check(&self, a: &Algebra) -> Result<IdentityReport, AlgebraError> {
        let mut r = match self {
            Variety::Associative => a.check_identity(IdentityTag::Associative)?,
            Variety::Leibniz => a.check_identity(IdentityTag::LeibnizRight)?,
            Variety::Poisson => a.check_identity(IdentityTag::Poisson)?,
            Variety::CommPoisson => {
                let p = a.check_identity(IdentityTag::Poisson)?;
                if p.holds {
                    a.check_identity(IdentityTag::Commutative)?
                } else {
                    p
                }
            }
        };
        r.identity = self.name().to_string();
        Ok(r)
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variety {
    type Err = ActionError;
    fn from_str(s: &str) -> Result<Self, ActionError> {
        Variety::ALL.into_iter().find(|v| v.name() == s).ok_or_else(|| ActionError::UnknownVariety(s.into()))
    }
}

/// The weak actor of `x` in the given variety: `Bim`, `Bider`, `[V]` or `[V]_c`.
pub fn weak_actor(x: &Algebra, variety: Variety) -> Result<OperatorSpace, ActionError> {
    Ok(match variety {
        Variety::Associative => bimultipliers(x)?,
        Variety::Leibniz => biderivations(x)?,
        Variety::Poisson => poisson_usga(x)?,
        Variety::CommPoisson => comm_poisson_usga(x)?,
    })
}

/// Bilinear maps describing how `acting` acts on `kernel`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ActionFile", into = "ActionFile")]
pub struct ActionData {
    variety: Variety,
    acting: Algebra,
    kernel: Algebra,
    l: BilinearMap,
    r: Option<BilinearMap>,
    bracket_action: Option<BilinearMap>,
}

/// JSON layout of [`ActionData`]; missing entry lists mean zero maps.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionFile {
    pub variety: Variety,
    pub acting: Algebra,
    pub kernel: Algebra,
    #[serde(default)]
    pub l: Vec<EntryRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<EntryRepr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket_action: Option<Vec<EntryRepr>>,
}

impl TryFrom<ActionFile> for ActionData {
    type Error = ActionError;
    fn try_from(f: ActionFile) -> Result<Self, ActionError> {
        let field = f.acting.field();
        let (nb, nx) = (f.acting.dim(), f.kernel.dim());
        let l = BilinearMap::from_entries_json(field, (nb, nx, nx), &f.l)?;
        let r = match (f.variety, &f.r) {
            (Variety::CommPoisson, Some(_)) => {
                return Err(ActionError::ShapeMismatch("comm_poisson actions carry no r".into()))
            }
            (Variety::CommPoisson, None) => None,
            (_, r) => Some(BilinearMap::from_entries_json(field, (nx, nb, nx), r.as_deref().unwrap_or(&[]))?),
        };
        let bracket_action = match (f.variety, &f.bracket_action) {
            (Variety::Poisson | Variety::CommPoisson, b) => {
                Some(BilinearMap::from_entries_json(field, (nb, nx, nx), b.as_deref().unwrap_or(&[]))?)
            }
            (_, Some(_)) => {
                return Err(ActionError::ShapeMismatch(format!("{} actions carry no bracket_action", f.variety)))
            }
            (_, None) => None,
        };
        ActionData::new(f.variety, f.acting, f.kernel, l, r, bracket_action)
    }
}

impl From<ActionData> for ActionFile {
    fn from(a: ActionData) -> Self {
        ActionFile {
            variety: a.variety,
            l: a.l.entries_json(),
            r: a.r.as_ref().map(BilinearMap::entries_json),
            bracket_action: a.bracket_action.as_ref().map(BilinearMap::entries_json),
            acting: a.acting,
            kernel: a.kernel,
        }
    }
}

impl ActionData {
    pub fn new(
        variety: Variety,
        acting: Algebra,
        kernel: Algebra,
        l: BilinearMap,
        r: Option<BilinearMap>,
        bracket_action: Option<BilinearMap>,
    ) -> Result<Self, ActionError> {
        let field = acting.field();
        if kernel.field() != field {
            return Err(ActionError::ShapeMismatch(format!("acting over {field}, kernel over {}", kernel.field())));
        }
        for (role, a) in [("acting", &acting), ("kernel", &kernel)] {
            if a.ops().len() != variety.op_count() {
                return Err(ActionError::ShapeMismatch(format!(
                    "{role} algebra has {} operations, {variety} needs {}",
                    a.ops().len(),
                    variety.op_count()
                )));
            }
        }
        let (nb, nx) = (acting.dim(), kernel.dim());
        let check = |name: &str, m: &BilinearMap, shape: (usize, usize, usize)| {
            if m.shape() != shape || m.field() != field {
                Err(ActionError::ShapeMismatch(format!("{name} has shape {:?}, expected {shape:?}", m.shape())))
            } else {
                Ok(())
            }
        };
        check("l", &l, (nb, nx, nx))?;
        match (variety, &r) {
            (Variety::CommPoisson, Some(_)) => return Err(ActionError::ShapeMismatch("comm_poisson actions carry no r".into())),
            (Variety::CommPoisson, None) => {}
            (_, Some(r)) => check("r", r, (nx, nb, nx))?,
            (_, None) => return Err(ActionError::ShapeMismatch(format!("{variety} actions need r"))),
        }
        match (variety, &bracket_action) {
            (Variety::Poisson | Variety::CommPoisson, Some(b)) => check("bracket_action", b, (nb, nx, nx))?,
            (Variety::Poisson | Variety::CommPoisson, None) => {
                return Err(ActionError::ShapeMismatch(format!("{variety} actions need bracket_action")))
            }
            (_, Some(_)) => return Err(ActionError::ShapeMismatch(format!("{variety} actions carry no bracket_action"))),
            (_, None) => {}
        }
        Ok(ActionData { variety, acting, kernel, l, r, bracket_action })
    }

    /// The zero action of `acting` on `kernel`.
    pub fn zero(variety: Variety, acting: Algebra, kernel: Algebra) -> Result<Self, ActionError> {
        let f = acting.field();
        let (nb, nx) = (acting.dim(), kernel.dim());
        let r = (variety != Variety::CommPoisson).then(|| BilinearMap::zeros(f, nx, nb, nx));
        let br = matches!(variety, Variety::Poisson | Variety::CommPoisson).then(|| BilinearMap::zeros(f, nb, nx, nx));
        ActionData::new(variety, acting, kernel, BilinearMap::zeros(f, nb, nx, nx), r, br)
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn acting(&self) -> &Algebra {
        &self.acting
    }

    pub fn kernel(&self) -> &Algebra {
        &self.kernel
    }

    pub fn field(&self) -> FieldSpec {
        self.acting.field()
    }

    pub fn l(&self) -> &BilinearMap {
        &self.l
    }

    /// The right action; for commutative Poisson actions it is the mirror of `l`.
    pub fn r(&self) -> BilinearMap {
        match &self.r {
            Some(r) => r.clone(),
            None => mirror(&self.l),
        }
    }

    pub fn stored_r(&self) -> Option<&BilinearMap> {
        self.r.as_ref()
    }

    pub fn bracket_action(&self) -> Option<&BilinearMap> {
        self.bracket_action.as_ref()
    }

    /// Number of free coefficients in the stored tensors.
    pub fn entry_count(&self) -> usize {
        entry_count(self.variety, self.acting.dim(), self.kernel.dim())
    }
}

fn entry_count(variety: Variety, nb: usize, nx: usize) -> usize {
    let block = nb * nx * nx;
    match variety {
        Variety::Associative | Variety::Leibniz | Variety::CommPoisson => 2 * block,
        Variety::Poisson => 3 * block,
    }
}

/// `(x, q) ↦ l(q, x)`
fn mirror(l: &BilinearMap) -> BilinearMap {
    let (nb, nx, _) = l.shape();
    let mut r = BilinearMap::zeros(l.field(), nx, nb, nx);
    for a in 0..nx {
        for q in 0..nb {
            r.set(a, q, l.get(q, a));
        }
    }
    r
}

// ---- validation ----------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionVerdict {
    pub statement: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub variety: Variety,
    pub pass: bool,
    pub conditions: IndexMap<String, ConditionVerdict>,
}

impl ValidationReport {
    pub fn failed(&self) -> Vec<&str> {
        self.conditions.iter().filter(|(_, v)| !v.holds).map(|(k, _)| k.as_str()).collect()
    }
}

/// First failing tuple of `kb` acting indices followed by `kx` kernel indices.
fn first_failure<F>(label: &str, nb: usize, kb: usize, nx: usize, kx: usize, f: F) -> Option<Witness>
where
    F: Fn(&[usize], &[usize]) -> Vector,
{
    let total = nb.pow(kb as u32) * nx.pow(kx as u32);
    (0..total).find_map(|mut code| {
        let mut idx = vec![0; kb + kx];
        for slot in (0..kb + kx).rev() {
            let base = if slot < kb { nb } else { nx };
            idx[slot] = code % base;
            code /= base;
        }
        let d = f(&idx[..kb], &idx[kb..]);
        (!is_zero_vector(&d)).then(|| Witness { clause: label.into(), indices: idx, defect: d })
    })
}

struct Ctx<'a> {
    field: FieldSpec,
    nb: usize,
    nx: usize,
    b: &'a Algebra,
    x: &'a Algebra,
    l: &'a BilinearMap,
    r: &'a BilinearMap,
    br: Option<&'a BilinearMap>,
}

impl Ctx<'_> {
    fn eb(&self, i: usize) -> Vector {
        unit_vector(self.field, self.nb, i)
    }
    fn ex(&self, i: usize) -> Vector {
        unit_vector(self.field, self.nx, i)
    }
    /// `p * y`, also `l_p(y)`
    fn l(&self, p: &[Scalar], y: &[Scalar]) -> Vector {
        self.l.apply(p, y)
    }
    /// `x * q`, also `r_q(x)`
    fn r(&self, x: &[Scalar], q: &[Scalar]) -> Vector {
        self.r.apply(x, q)
    }
    /// `⟦p, y⟧`
    fn k(&self, p: &[Scalar], y: &[Scalar]) -> Vector {
        self.br.expect("bracket action").apply(p, y)
    }
    fn xm(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        self.x.product().apply(u, v)
    }
    fn xb(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        self.x.bracket().apply(u, v)
    }
    fn bm(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        self.b.product().apply(u, v)
    }
    fn bb(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        self.b.bracket().apply(u, v)
    }
}

fn sub3(a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Vector {
    sub_vectors(&sub_vectors(a, b), c)
}

type CondFn<'a> = Box<dyn Fn(&Ctx, &[usize], &[usize]) -> Vector + 'a>;

struct Condition<'a> {
    label: &'static str,
    statement: &'static str,
    kb: usize,
    kx: usize,
    eval: CondFn<'a>,
}

fn cond<'a>(
    label: &'static str,
    statement: &'static str,
    kb: usize,
    kx: usize,
    eval: impl Fn(&Ctx, &[usize], &[usize]) -> Vector + 'a,
) -> Condition<'a> {
    Condition { label, statement, kb, kx, eval: Box::new(eval) }
}

fn leibniz_conditions<'a>() -> Vec<Condition<'a>> {
    vec![
        cond("L1", "r_x[a,b] = [r_x a, b] + [a, r_x b]  at (x, a, b)", 1, 2, |c, p, v| {
            let (x, a, b) = (c.eb(p[0]), c.ex(v[0]), c.ex(v[1]));
            sub3(&c.r(&c.xb(&a, &b), &x), &c.xb(&c.r(&a, &x), &b), &c.xb(&a, &c.r(&b, &x)))
        }),
        cond("L2", "l_x[a,b] = [l_x a, b] - [l_x b, a]  at (x, a, b)", 1, 2, |c, p, v| {
            let (x, a, b) = (c.eb(p[0]), c.ex(v[0]), c.ex(v[1]));
            add_vectors(&sub_vectors(&c.l(&x, &c.xb(&a, &b)), &c.xb(&c.l(&x, &a), &b)), &c.xb(&c.l(&x, &b), &a))
        }),
        cond("L3", "[a, r_x b + l_x b] = 0  at (x, a, b)", 1, 2, |c, p, v| {
            let (x, a, b) = (c.eb(p[0]), c.ex(v[0]), c.ex(v[1]));
            c.xb(&a, &add_vectors(&c.r(&b, &x), &c.l(&x, &b)))
        }),
        cond("L4", "r_[x,y] = r_y r_x - r_x r_y  at (x, y, a)", 2, 1, |c, p, v| {
            let (x, y, a) = (c.eb(p[0]), c.eb(p[1]), c.ex(v[0]));
            let lhs = c.r(&a, &c.bb(&x, &y));
            add_vectors(&sub_vectors(&lhs, &c.r(&c.r(&a, &x), &y)), &c.r(&c.r(&a, &y), &x))
        }),
        cond("L5", "l_[x,y] = r_y l_x - l_x r_y  at (x, y, a)", 2, 1, |c, p, v| {
            let (x, y, a) = (c.eb(p[0]), c.eb(p[1]), c.ex(v[0]));
            let lhs = c.l(&c.bb(&x, &y), &a);
            add_vectors(&sub_vectors(&lhs, &c.r(&c.l(&x, &a), &y)), &c.l(&x, &c.r(&a, &y)))
        }),
        cond("L6", "l_x (l_y + r_y) = 0  at (x, y, a)", 2, 1, |c, p, v| {
            let (x, y, a) = (c.eb(p[0]), c.eb(p[1]), c.ex(v[0]));
            c.l(&x, &add_vectors(&c.l(&y, &a), &c.r(&a, &y)))
        }),
    ]
}

/// The six associativity conditions for `(B ⊕ X, ⋄)`, under `prefix` labels.
fn associative_conditions<'a>(labels: [&'static str; 6]) -> Vec<Condition<'a>> {
    vec![
        cond(labels[0], "p*(x·y) = (p*x)·y  at (p, x, y)", 1, 2, |c, p, v| {
            let (p, x, y) = (c.eb(p[0]), c.ex(v[0]), c.ex(v[1]));
            sub_vectors(&c.l(&p, &c.xm(&x, &y)), &c.xm(&c.l(&p, &x), &y))
        }),
        cond(labels[1], "(x·y)*p = x·(y*p)  at (p, x, y)", 1, 2, |c, p, v| {
            let (p, x, y) = (c.eb(p[0]), c.ex(v[0]), c.ex(v[1]));
            sub_vectors(&c.r(&c.xm(&x, &y), &p), &c.xm(&x, &c.r(&y, &p)))
        }),
        cond(labels[2], "x·(p*y) = (x*p)·y  at (p, x, y)", 1, 2, |c, p, v| {
            let (p, x, y) = (c.eb(p[0]), c.ex(v[0]), c.ex(v[1]));
            sub_vectors(&c.xm(&x, &c.l(&p, &y)), &c.xm(&c.r(&x, &p), &y))
        }),
        cond(labels[3], "(p*x)*q = p*(x*q)  at (p, q, x)", 2, 1, |c, p, v| {
            let (p, q, x) = (c.eb(p[0]), c.eb(p[1]), c.ex(v[0]));
            sub_vectors(&c.r(&c.l(&p, &x), &q), &c.l(&p, &c.r(&x, &q)))
        }),
        cond(labels[4], "(pq)*x = p*(q*x)  at (p, q, x)", 2, 1, |c, p, v| {
            let (p, q, x) = (c.eb(p[0]), c.eb(p[1]), c.ex(v[0]));
            sub_vectors(&c.l(&c.bm(&p, &q), &x), &c.l(&p, &c.l(&q, &x)))
        }),
        cond(labels[5], "x*(pq) = (x*p)*q  at (p, q, x)", 2, 1, |c, p, v| {
            let (p, q, x) = (c.eb(p[0]), c.eb(p[1]), c.ex(v[0]));
            sub_vectors(&c.r(&x, &c.bm(&p, &q)), &c.r(&c.r(&x, &p), &q))
        }),
    ]
}

fn poisson_conditions<'a>() -> Vec<Condition<'a>> {
    let mut out = associative_conditions(["P1.1", "P1.2", "P1.3", "P1.4", "P1.5", "P1.6"]);
    out.extend([
        cond("P2.1", "⟦p,[x,y]⟧ = [⟦p,x⟧,y] + [x,⟦p,y⟧]  at (p, x, y)", 1, 2, |c, p, v| {
            let (p, x, y) = (c.eb(p[0]), c.ex(v[0]), c.ex(v[1]));
            sub3(&c.k(&p, &c.xb(&x, &y)), &c.xb(&c.k(&p, &x), &y), &c.xb(&x, &c.k(&p, &y)))
        }),
        cond("P2.2", "⟦[p,q],x⟧ = ⟦p,⟦q,x⟧⟧ - ⟦q,⟦p,x⟧⟧  at (p, q, x)", 2, 1, |c, p, v| {
            let (p, q, x) = (c.eb(p[0]), c.eb(p[1]), c.ex(v[0]));
            add_vectors(&sub_vectors(&c.k(&c.bb(&p, &q), &x), &c.k(&p, &c.k(&q, &x))), &c.k(&q, &c.k(&p, &x)))
        }),
        cond("P3", "⟦pq,x⟧ = p*⟦q,x⟧ + ⟦p,x⟧*q  at (p, q, x)", 2, 1, |c, p, v| {
            let (p, q, x) = (c.eb(p[0]), c.eb(p[1]), c.ex(v[0]));
            sub3(&c.k(&c.bm(&p, &q), &x), &c.l(&p, &c.k(&q, &x)), &c.r(&c.k(&p, &x), &q))
        }),
        cond("P4", "[p,q]*x = p*⟦q,x⟧ - ⟦q,p*x⟧  at (p, q, x)", 2, 1, |c, p, v| {
            let (p, q, x) = (c.eb(p[0]), c.eb(p[1]), c.ex(v[0]));
            add_vectors(&sub_vectors(&c.l(&c.bb(&p, &q), &x), &c.l(&p, &c.k(&q, &x))), &c.k(&q, &c.l(&p, &x)))
        }),
        cond("P5", "x*[p,q] = ⟦q,x⟧*p - ⟦q,x*p⟧  at (p, q, x)", 2, 1, |c, p, v| {
            let (p, q, x) = (c.eb(p[0]), c.eb(p[1]), c.ex(v[0]));
            add_vectors(&sub_vectors(&c.r(&x, &c.bb(&p, &q)), &c.r(&c.k(&q, &x), &p)), &c.k(&q, &c.r(&x, &p)))
        }),
        cond("P6", "p*[x,y] = [p*x,y] - ⟦p,y⟧·x  at (p, x, y)", 1, 2, |c, p, v| {
            let (p, x, y) = (c.eb(p[0]), c.ex(v[0]), c.ex(v[1]));
            add_vectors(&sub_vectors(&c.l(&p, &c.xb(&x, &y)), &c.xb(&c.l(&p, &x), &y)), &c.xm(&c.k(&p, &y), &x))
        }),
        cond("P7", "[x,y]*p = [x*p,y] - x·⟦p,y⟧  at (p, x, y)", 1, 2, |c, p, v| {
            let (p, x, y) = (c.eb(p[0]), c.ex(v[0]), c.ex(v[1]));
            add_vectors(&sub_vectors(&c.r(&c.xb(&x, &y), &p), &c.xb(&c.r(&x, &p), &y)), &c.xm(&x, &c.k(&p, &y)))
        }),
        cond("P8", "⟦p,x·y⟧ = ⟦p,x⟧·y + x·⟦p,y⟧  at (p, x, y)", 1, 2, |c, p, v| {
            let (p, x, y) = (c.eb(p[0]), c.ex(v[0]), c.ex(v[1]));
            sub3(&c.k(&p, &c.xm(&x, &y)), &c.xm(&c.k(&p, &x), &y), &c.xm(&x, &c.k(&p, &y)))
        }),
    ]);
    out
}

/// Checks an action against the condition list of its variety, plus the
/// variety identity of the acting and kernel algebras themselves.
pub fn validate_action(a: &ActionData) -> Result<ValidationReport, ActionError> {
    let r = a.r();
    let ctx = Ctx {
        field: a.field(),
        nb: a.acting.dim(),
        nx: a.kernel.dim(),
        b: &a.acting,
        x: &a.kernel,
        l: &a.l,
        r: &r,
        br: a.bracket_action.as_ref(),
    };
    let mut conditions = IndexMap::new();
    for (role, alg) in [("acting", &a.acting), ("kernel", &a.kernel)] {
        let rep = a.variety.check(alg)?;
        conditions.insert(
            role.to_string(),
            ConditionVerdict {
                statement: format!("the {role} algebra is {}", a.variety),
                holds: rep.holds,
                witness: rep.witness,
            },
        );
    }
    let list = match a.variety {
        Variety::Leibniz => leibniz_conditions(),
        Variety::Associative => associative_conditions(["A1", "A2", "A3", "A4", "A5", "A6"]),
        Variety::Poisson | Variety::CommPoisson => poisson_conditions(),
    };
    for c in list {
        let w = first_failure(c.label, ctx.nb, c.kb, ctx.nx, c.kx, |p, v| (c.eval)(&ctx, p, v));
        conditions.insert(
            c.label.to_string(),
            ConditionVerdict { statement: c.statement.to_string(), holds: w.is_none(), witness: w },
        );
    }
    let pass = conditions.values().all(|v| v.holds);
    Ok(ValidationReport { variety: a.variety, pass, conditions })
}

// ---- split extensions -------------------------------------------------------------

/// `0 → X --i--> total <--s-- --π--> B → 0`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitExtension {
    pub total: Algebra,
    pub inclusion: Matrix,
    pub retraction: Matrix,
    pub section: Matrix,
}

/// JSON layout of a split extension; matrices are lists of rows.
#[derive(Debug, Clone, Deserialize)]
pub struct SplitExtensionFile {
    pub total: Algebra,
    pub inclusion: Vec<Vec<CoeffRepr>>,
    pub retraction: Vec<Vec<CoeffRepr>>,
    pub section: Vec<Vec<CoeffRepr>>,
}

/// Parses a list of rows; `cols` is used when there are no rows.
pub fn matrix_from_rows(field: FieldSpec, rows: &[Vec<CoeffRepr>], cols: usize) -> Result<Matrix, ActionError> {
    let width = rows.first().map_or(cols, Vec::len);
    let mut parsed = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != width {
            return Err(ActionError::ShapeMismatch("ragged matrix rows".into()));
        }
        parsed.push(row.iter().map(|c| c.parse(field)).collect::<Result<Vector, _>>()?);
    }
    Ok(Matrix::from_rows(field, width, parsed))
}

impl TryFrom<SplitExtensionFile> for SplitExtension {
    type Error = ActionError;
    fn try_from(f: SplitExtensionFile) -> Result<Self, ActionError> {
        let field = f.total.field();
        let n = f.total.dim();
        let inclusion = matrix_from_rows(field, &f.inclusion, 0)?;
        let retraction = matrix_from_rows(field, &f.retraction, n)?;
        let section = matrix_from_rows(field, &f.section, 0)?;
        Ok(SplitExtension { total: f.total, inclusion, retraction, section })
    }
}

/// The algebra on `B ⊕ X` given by the semidirect formulas, without validation.
pub fn semidirect_algebra(a: &ActionData) -> Result<Algebra, ActionError> {
    let (nb, nx) = (a.acting.dim(), a.kernel.dim());
    let n = nb + nx;
    let field = a.field();
    let r = a.r();
    let mut ops = Vec::new();
    for (o, op) in a.acting.ops().iter().enumerate() {
        let bracket_slot = a.variety.op_count() == 2 && o == 1;
        let mut m = BilinearMap::zeros(field, n, n, n);
        let put = |m: &mut BilinearMap, i: usize, j: usize, off: usize, v: &[Scalar]| {
            for (k, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    m.set_entry(i, j, off + k, c.clone());
                }
            }
        };
        for i in 0..nb {
            for j in 0..nb {
                put(&mut m, i, j, 0, op.map.get(i, j));
            }
        }
        let xop = &a.kernel.ops()[o].map;
        for i in 0..nx {
            for j in 0..nx {
                put(&mut m, nb + i, nb + j, nb, xop.get(i, j));
            }
        }
        for p in 0..nb {
            for y in 0..nx {
                if bracket_slot {
                    let k = a.bracket_action.as_ref().expect("bracket action");
                    // {p, y} = ⟦p,y⟧ and {y, p} = -⟦p,y⟧
                    put(&mut m, p, nb + y, nb, k.get(p, y));
                    let neg: Vector = k.get(p, y).iter().map(|c| -c).collect();
                    put(&mut m, nb + y, p, nb, &neg);
                } else {
                    put(&mut m, p, nb + y, nb, a.l.get(p, y));
                    put(&mut m, nb + y, p, nb, r.get(y, p));
                }
            }
        }
        ops.push(BilinearOp { name: op.name.clone(), map: m });
    }
    let labels = match (a.acting.labels(), a.kernel.labels()) {
        (Some(lb), Some(lx)) => Some(lb.iter().chain(lx).cloned().collect()),
        _ => None,
    };
    Ok(Algebra::new(field, n, ops, labels)?)
}

/// Builds the split extension of a valid action with the canonical `i`, `π`, `s`.
pub fn semidirect(a: &ActionData) -> Result<SplitExtension, ActionError> {
    let report = validate_action(a)?;
    if !report.pass {
        return Err(ActionError::InvalidAction(Box::new(report)));
    }
    let total = semidirect_algebra(a)?;
    let field = a.field();
    let (nb, nx) = (a.acting.dim(), a.kernel.dim());
    let n = nb + nx;
    let inclusion = Matrix::from_columns(field, n, &(0..nx).map(|j| unit_vector(field, n, nb + j)).collect::<Vec<_>>());
    let section = Matrix::from_columns(field, n, &(0..nb).map(|j| unit_vector(field, n, j)).collect::<Vec<_>>());
    let retraction = Matrix::from_columns(
        field,
        nb,
        &(0..n).map(|j| if j < nb { unit_vector(field, nb, j) } else { vec![field.zero(); nb] }).collect::<Vec<_>>(),
    );
    Ok(SplitExtension { total, inclusion, retraction, section })
}

fn unit_index(v: &[Scalar]) -> Option<usize> {
    let nz: Vec<usize> = (0..v.len()).filter(|&k| !v[k].is_zero()).collect();
    (nz.len() == 1 && v[nz[0]].is_one()).then(|| nz[0])
}

fn recover_labels(total: &Algebra, m: &Matrix) -> Option<Vec<String>> {
    let labels = total.labels()?;
    (0..m.cols()).map(|j| unit_index(&m.column(j)).map(|k| labels[k].clone())).collect()
}

/// Recovers the derived action of a split extension: the acting and kernel
/// algebras are pulled back along `s` and `i`, and `l_x(b) = s(x)∘i(b)`,
/// `r_y(a) = i(a)∘s(y)`, `⟦p,y⟧ = {s(p), i(y)}` are read in kernel coordinates.
pub fn extract_action(e: &SplitExtension, variety: Variety) -> Result<ActionData, ActionError> {
    let total = &e.total;
    let field = total.field();
    let n = total.dim();
    let (i, pi, s) = (&e.inclusion, &e.retraction, &e.section);
    let nb = pi.rows();
    let nx = i.cols();
    if total.ops().len() != variety.op_count() {
        return Err(ActionError::VarietyMismatch(format!("{variety} needs {} operations", variety.op_count())));
    }
    if pi.cols() != n || s.rows() != n || s.cols() != nb || i.rows() != n {
        return Err(ActionError::ShapeMismatch("maps do not fit the total algebra".into()));
    }
    if pi.compose(s) != Matrix::identity(field, nb) {
        return Err(ActionError::NotSplit("π∘s is not the identity".into()));
    }
    if !pi.compose(i).is_zero() {
        return Err(ActionError::KernelMismatch("π∘i is not zero".into()));
    }
    if i.rank() != nx || nx + nb != n {
        return Err(ActionError::KernelMismatch("i is not injective onto the kernel of π".into()));
    }
    let back = |v: &[Scalar], what: &str| -> Result<Vector, ActionError> {
        i.solve(v).ok_or_else(|| ActionError::KernelMismatch(format!("{what} does not lie in the kernel")))
    };
    let sc: Vec<Vector> = (0..nb).map(|j| s.column(j)).collect();
    let ic: Vec<Vector> = (0..nx).map(|j| i.column(j)).collect();

    let mut b_ops = Vec::new();
    let mut x_ops = Vec::new();
    for op in total.ops() {
        let m = &op.map;
        let mut bm = BilinearMap::zeros(field, nb, nb, nb);
        for p in 0..nb {
            for q in 0..nb {
                let prod = m.apply(&sc[p], &sc[q]);
                let down = pi.apply(&prod);
                if s.apply(&down) != prod {
                    return Err(ActionError::NotSplit(format!("the section does not preserve {}", op.name)));
                }
                bm.set(p, q, &down);
            }
        }
        let mut xm = BilinearMap::zeros(field, nx, nx, nx);
        for a in 0..nx {
            for b in 0..nx {
                xm.set(a, b, &back(&m.apply(&ic[a], &ic[b]), "a product of kernel elements")?);
            }
        }
        b_ops.push(BilinearOp { name: op.name.clone(), map: bm });
        x_ops.push(BilinearOp { name: op.name.clone(), map: xm });
    }
    let acting = Algebra::new(field, nb, b_ops, recover_labels(total, s))?;
    let kernel = Algebra::new(field, nx, x_ops, recover_labels(total, i))?;
    let pi_hom = is_homomorphism(pi, total, &acting)?;
    if let Some(w) = pi_hom.witness {
        return Err(ActionError::NotSplit(format!("the retraction is not a homomorphism: {w}")));
    }

    let m = &total.ops()[0].map;
    let mut l = BilinearMap::zeros(field, nb, nx, nx);
    let mut r = BilinearMap::zeros(field, nx, nb, nx);
    for p in 0..nb {
        for y in 0..nx {
            l.set(p, y, &back(&m.apply(&sc[p], &ic[y]), "s(p)∘i(y)")?);
            r.set(y, p, &back(&m.apply(&ic[y], &sc[p]), "i(y)∘s(p)")?);
        }
    }
    let bracket_action = if variety.op_count() == 2 {
        let b = &total.ops()[1].map;
        let mut k = BilinearMap::zeros(field, nb, nx, nx);
        for p in 0..nb {
            for y in 0..nx {
                k.set(p, y, &back(&b.apply(&sc[p], &ic[y]), "{s(p), i(y)}")?);
            }
        }
        Some(k)
    } else {
        None
    };
    let r = if variety == Variety::CommPoisson {
        if r != mirror(&l) {
            return Err(ActionError::VarietyMismatch("x*q differs from q*x in a commutative extension".into()));
        }
        None
    } else {
        Some(r)
    };
    ActionData::new(variety, acting, kernel, l, r, bracket_action)
}

// ---- morphisms -------------------------------------------------------------------

/// The operator tuple attached to the acting basis element `p`.
pub fn action_tuple(a: &ActionData, p: usize) -> OperatorTuple {
    let r = a.r();
    let lp = a.l.left_operator(p);
    let rp = r.right_operator(p);
    let comps = match a.variety {
        Variety::Leibniz => vec![rp.neg(), lp],
        Variety::Associative => vec![lp, rp],
        Variety::Poisson => vec![lp, rp, a.bracket_action.as_ref().expect("bracket action").left_operator(p)],
        Variety::CommPoisson => vec![lp, a.bracket_action.as_ref().expect("bracket action").left_operator(p)],
    };
    OperatorTuple::new(comps)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionMorphism {
    /// `dim(actor) × dim(acting)`; column `p` holds the coordinates of the tuple of `e_p`.
    pub map: Matrix,
    pub homomorphism: IdentityReport,
}

pub fn action_to_morphism(a: &ActionData) -> Result<ActionMorphism, ActionError> {
    let actor = weak_actor(&a.kernel, a.variety)?;
    action_to_morphism_in(a, &actor)
}

/// As [`action_to_morphism`], reusing an already computed weak actor.
pub fn action_to_morphism_in(a: &ActionData, actor: &OperatorSpace) -> Result<ActionMorphism, ActionError> {
    check_actor(actor, &a.kernel, a.variety)?;
    let cols = (0..a.acting.dim())
        .map(|p| {
            let t = action_tuple(a, p);
            actor.coordinates(&t).ok_or_else(|| ActionError::TupleNotInSpace {
                index: p,
                reason: tuple_defect(&a.kernel, actor.kind(), &t).map_or("not in span".into(), |w| w.to_string()),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let map = Matrix::from_columns(a.field(), actor.dim(), &cols);
    let homomorphism = is_homomorphism(&map, &a.acting, actor.as_algebra()?)?;
    Ok(ActionMorphism { map, homomorphism })
}

fn check_actor(actor: &OperatorSpace, kernel: &Algebra, variety: Variety) -> Result<(), ActionError> {
    if actor.kind() != variety.weak_actor_kind() || actor.base() != kernel {
        return Err(ActionError::ShapeMismatch(format!("the given space is not the weak actor of the kernel in {variety}")));
    }
    Ok(())
}

fn require_hom(phi: &Matrix, b: &Algebra, actor: &OperatorSpace) -> Result<(), ActionError> {
    let target = actor.as_algebra()?;
    if phi.rows() != target.dim() || phi.cols() != b.dim() {
        return Err(ActionError::ShapeMismatch(format!(
            "morphism is {}×{}, expected {}×{}",
            phi.rows(),
            phi.cols(),
            target.dim(),
            b.dim()
        )));
    }
    match is_homomorphism(phi, b, target)?.witness {
        Some(w) => Err(ActionError::NotAHomomorphism(w)),
        None => Ok(()),
    }
}

/// Unpacks a homomorphism into the weak actor into action tensors.
pub fn morphism_to_action(phi: &Matrix, b: &Algebra, x: &Algebra, variety: Variety) -> Result<ActionData, ActionError> {
    let actor = weak_actor(x, variety)?;
    morphism_to_action_in(phi, b, &actor, variety)
}

pub fn morphism_to_action_in(
    phi: &Matrix,
    b: &Algebra,
    actor: &OperatorSpace,
    variety: Variety,
) -> Result<ActionData, ActionError> {
    let x = actor.base();
    check_actor(actor, x, variety)?;
    require_hom(phi, b, actor)?;
    let field = b.field();
    let (nb, nx) = (b.dim(), x.dim());
    let mut l = BilinearMap::zeros(field, nb, nx, nx);
    let mut r = BilinearMap::zeros(field, nx, nb, nx);
    let mut k = BilinearMap::zeros(field, nb, nx, nx);
    for p in 0..nb {
        let t = actor.tuple(&phi.column(p));
        let c = &t.components;
        for y in 0..nx {
            match variety {
                Variety::Leibniz => {
                    // φ(x) = (-r_x, l_x)
                    let neg: Vector = c[0].column(y).iter().map(|s| -s).collect();
                    r.set(y, p, &neg);
                    l.set(p, y, &c[1].column(y));
                }
                Variety::Associative => {
                    l.set(p, y, &c[0].column(y));
                    r.set(y, p, &c[1].column(y));
                }
                Variety::Poisson => {
                    l.set(p, y, &c[0].column(y));
                    r.set(y, p, &c[1].column(y));
                    k.set(p, y, &c[2].column(y));
                }
                Variety::CommPoisson => {
                    l.set(p, y, &c[0].column(y));
                    k.set(p, y, &c[1].column(y));
                }
            }
        }
    }
    let (r, k) = match variety {
        Variety::Leibniz | Variety::Associative => (Some(r), None),
        Variety::Poisson => (Some(r), Some(k)),
        Variety::CommPoisson => (None, Some(k)),
    };
    ActionData::new(variety, b.clone(), x.clone(), l, r, k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActingReport {
    pub acting: bool,
    pub criterion: String,
    pub statement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

fn require_variety(a: &Algebra, role: &str, variety: Variety) -> Result<(), ActionError> {
    match variety.check(a)?.witness {
        Some(witness) => Err(ActionError::NotInVariety { role: role.into(), variety, witness }),
        None => Ok(()),
    }
}

/// Decides whether a homomorphism `φ: B → weak actor of X` comes from a split extension.
///
/// * leibniz: `D_x(D_y(a) - d_y(a)) = 0`
/// * associative, poisson: `f_p ∘ F_q = F_q ∘ f_p`
/// * comm_poisson: `f_p ∘ f_q = f_q ∘ f_p`
pub fn is_acting_morphism(phi: &Matrix, b: &Algebra, x: &Algebra, variety: Variety) -> Result<ActingReport, ActionError> {
    let actor = weak_actor(x, variety)?;
    is_acting_morphism_in(phi, b, &actor, variety)
}

pub fn is_acting_morphism_in(
    phi: &Matrix,
    b: &Algebra,
    actor: &OperatorSpace,
    variety: Variety,
) -> Result<ActingReport, ActionError> {
    let x = actor.base();
    check_actor(actor, x, variety)?;
    require_variety(b, "acting", variety)?;
    require_variety(x, "kernel", variety)?;
    require_hom(phi, b, actor)?;
    Ok(acting_criterion(phi, b.dim(), actor, variety))
}

fn acting_criterion(phi: &Matrix, nb: usize, actor: &OperatorSpace, variety: Variety) -> ActingReport {
    let nx = actor.base().dim();
    let tuples: Vec<OperatorTuple> = (0..nb).map(|p| actor.tuple(&phi.column(p))).collect();
    let (criterion, statement) = match variety {
        Variety::Leibniz => ("L6", "D_x(D_y(a) - d_y(a)) = 0  at (x, y, a)"),
        Variety::Associative | Variety::Poisson => ("permutability", "f_p(F_q(a)) = F_q(f_p(a))  at (p, q, a)"),
        Variety::CommPoisson => ("permutability", "f_p(f_q(a)) = f_q(f_p(a))  at (p, q, a)"),
    };
    let witness = first_failure(criterion, nb, 2, nx, 1, |p, v| {
        let (s, t) = (&tuples[p[0]].components, &tuples[p[1]].components);
        let e = unit_vector(actor.base().field(), nx, v[0]);
        match variety {
            Variety::Leibniz => s[1].apply(&sub_vectors(&t[1].apply(&e), &t[0].apply(&e))),
            Variety::Associative | Variety::Poisson => {
                sub_vectors(&s[0].apply(&t[1].apply(&e)), &t[1].apply(&s[0].apply(&e)))
            }
            Variety::CommPoisson => sub_vectors(&s[0].apply(&t[0].apply(&e)), &t[0].apply(&s[0].apply(&e))),
        }
    });
    ActingReport { acting: witness.is_none(), criterion: criterion.into(), statement: statement.into(), witness }
}

/// A morphism given by the operator tuple of each acting basis element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismData {
    pub variety: Variety,
    pub acting: Algebra,
    pub kernel: Algebra,
    pub images: Vec<OperatorTuple>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct MorphismFile {
    pub variety: Variety,
    pub acting: Algebra,
    pub kernel: Algebra,
    pub images: Vec<Vec<Vec<Vec<CoeffRepr>>>>,
}

impl TryFrom<MorphismFile> for MorphismData {
    type Error = ActionError;
    fn try_from(f: MorphismFile) -> Result<Self, ActionError> {
        let field = f.kernel.field();
        let n = f.kernel.dim();
        let images = f
            .images
            .iter()
            .map(|t| {
                let comps = t.iter().map(|m| matrix_from_rows(field, m, n)).collect::<Result<Vec<_>, _>>()?;
                if comps.iter().any(|m| m.rows() != n || m.cols() != n) {
                    return Err(ActionError::ShapeMismatch(format!("components must be {n}×{n}")));
                }
                Ok(OperatorTuple::new(comps))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if images.len() != f.acting.dim() {
            return Err(ActionError::ShapeMismatch(format!(
                "{} images for a {}-dimensional acting algebra",
                images.len(),
                f.acting.dim()
            )));
        }
        Ok(MorphismData { variety: f.variety, acting: f.acting, kernel: f.kernel, images })
    }
}

impl MorphismData {
    /// The images expressed in the basis of the weak actor.
    pub fn matrix_in(&self, actor: &OperatorSpace) -> Result<Matrix, ActionError> {
        check_actor(actor, &self.kernel, self.variety)?;
        let cols = self
            .images
            .iter()
            .enumerate()
            .map(|(p, t)| {
                actor.coordinates(t).ok_or_else(|| ActionError::TupleNotInSpace {
                    index: p,
                    reason: tuple_defect(&self.kernel, actor.kind(), t).map_or("not in span".into(), |w| w.to_string()),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_columns(self.kernel.field(), actor.dim(), &cols))
    }

    pub fn from_matrix(phi: &Matrix, acting: &Algebra, actor: &OperatorSpace, variety: Variety) -> Self {
        MorphismData {
            variety,
            acting: acting.clone(),
            kernel: actor.base().clone(),
            images: (0..phi.cols()).map(|p| actor.tuple(&phi.column(p))).collect(),
        }
    }
}

// ---- enumeration -----------------------------------------------------------------

fn checked_count(field: FieldSpec, entries: usize, budget: u64) -> Result<u64, ActionError> {
    let p = field.order().ok_or(ActionError::NotFiniteField(field))?;
    let needed = u32::try_from(entries).ok().and_then(|e| p.checked_pow(e));
    match needed {
        Some(c) if c <= budget => Ok(c),
        Some(c) => Err(ActionError::BudgetExceeded { needed: c.to_string(), budget }),
        None => Err(ActionError::BudgetExceeded { needed: format!("{p}^{entries}"), budget }),
    }
}

fn decode(field: FieldSpec, mut code: u64, len: usize) -> Vector {
    let p = field.order().expect("prime field");
    let mut out = vec![field.zero(); len];
    for slot in out.iter_mut() {
        *slot = field.from_u64(code % p);
        code /= p;
    }
    out
}

fn map_from_flat(field: FieldSpec, shape: (usize, usize, usize), data: &[Scalar]) -> BilinearMap {
    let mut m = BilinearMap::zeros(field, shape.0, shape.1, shape.2);
    for i in 0..shape.0 {
        for j in 0..shape.1 {
            let o = (i * shape.1 + j) * shape.2;
            m.set(i, j, &data[o..o + shape.2]);
        }
    }
    m
}

/// Every valid action of `b` on `x` over a prime field, in a fixed order
/// independent of the number of worker threads.
pub fn enumerate_actions(b: &Algebra, x: &Algebra, variety: Variety, budget: u64) -> Result<Vec<ActionData>, ActionError> {
    let field = b.field();
    let (nb, nx) = (b.dim(), x.dim());
    let entries = entry_count(variety, nb, nx);
    let total = checked_count(field, entries, budget)?;
    // fail early on shape problems
    ActionData::zero(variety, b.clone(), x.clone())?;
    let block = nb * nx * nx;
    let found: Vec<Option<ActionData>> = (0..total)
        .into_par_iter()
        .map(|code| -> Result<Option<ActionData>, ActionError> {
            let v = decode(field, code, entries);
            let l = map_from_flat(field, (nb, nx, nx), &v[..block]);
            let (r, k) = match variety {
                Variety::Leibniz | Variety::Associative => {
                    (Some(map_from_flat(field, (nx, nb, nx), &v[block..])), None)
                }
                Variety::Poisson => (
                    Some(map_from_flat(field, (nx, nb, nx), &v[block..2 * block])),
                    Some(map_from_flat(field, (nb, nx, nx), &v[2 * block..])),
                ),
                Variety::CommPoisson => (None, Some(map_from_flat(field, (nb, nx, nx), &v[block..]))),
            };
            let a = ActionData::new(variety, b.clone(), x.clone(), l, r, k)?;
            Ok(validate_action(&a)?.pass.then_some(a))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Every acting homomorphism from `b` into the weak actor of `x`, as coordinate
/// matrices, in a fixed order.
pub fn enumerate_acting_morphisms(
    b: &Algebra,
    x: &Algebra,
    variety: Variety,
    budget: u64,
) -> Result<Vec<Matrix>, ActionError> {
    let actor = weak_actor(x, variety)?;
    let field = b.field();
    let (nb, k) = (b.dim(), actor.dim());
    let total = checked_count(field, nb * k, budget)?;
    require_variety(b, "acting", variety)?;
    require_variety(x, "kernel", variety)?;
    let target = actor.as_algebra()?;
    let found: Vec<Option<Matrix>> = (0..total)
        .into_par_iter()
        .map(|code| -> Result<Option<Matrix>, ActionError> {
            // column-major so that column p is the image of e_p
            let v = decode(field, code, nb * k);
            let cols: Vec<Vector> = (0..nb).map(|p| v[p * k..(p + 1) * k].to_vec()).collect();
            let phi = Matrix::from_columns(field, k, &cols);
            if !is_homomorphism(&phi, b, target)?.holds {
                return Ok(None);
            }
            Ok(acting_criterion(&phi, nb, &actor, variety).acting.then_some(phi))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(found.into_iter().flatten().collect())
}
