//! Operator spaces cut out by linear identities: derivations, anti-derivations,
//! biderivations, bimultipliers, multipliers and the two Poisson actor
//! candidates `[V]` and `[V]_c`.
//!
//! Each space is the nullspace of a homogeneous system in the matrix entries
//! of its components. The defining identities are bilinear in `(x, y)`, so
//! imposing them on basis pairs is enough.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{
    is_homomorphism, Algebra, AlgebraError, BilinearMap, BilinearOp, IdentityReport, IdentityTag, Witness,
};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{is_zero_vector, nullspace, sub_vectors, LinearSystem, Matrix, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpSpaceError {
    #[error("NotAssociative: {0}")]
    NotAssociative(Witness),
    #[error("NotCommutative: {0}")]
    NotCommutative(Witness),
    #[error("NotPoisson: {0}")]
    NotPoisson(Witness),
    #[error("NotCommutativePoisson: {0}")]
    NotCommutativePoisson(Witness),
    #[error("ClosureFailure: {op} of basis elements {left} and {right} leaves the space")]
    ClosureFailure { op: String, left: usize, right: usize },
    #[error("SelfCheckFailed: basis tuple {index} violates {witness}")]
    SelfCheckFailed { index: usize, witness: Witness },
    #[error("InnerNotInSpace: inner tuple of basis element {0} is not in the space")]
    InnerNotInSpace(usize),
    #[error("NoInducedOperation: {0} carries no induced operation")]
    NoInducedOperation(OperatorKind),
    #[error("NotInSpace: {0}")]
    NotInSpace(String),
    #[error("UnknownKind: {0}")]
    UnknownKind(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorKind {
    Derivations,
    AntiDerivations,
    Biderivations,
    Bimultipliers,
    Multipliers,
    PoissonActor,
    CommPoissonActor,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 7] = [
        OperatorKind::Derivations,
        OperatorKind::AntiDerivations,
        OperatorKind::Biderivations,
        OperatorKind::Bimultipliers,
        OperatorKind::Multipliers,
        OperatorKind::PoissonActor,
        OperatorKind::CommPoissonActor,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OperatorKind::Derivations => "derivations",
            OperatorKind::AntiDerivations => "antiderivations",
            OperatorKind::Biderivations => "biderivations",
            OperatorKind::Bimultipliers => "bimultipliers",
            OperatorKind::Multipliers => "multipliers",
            OperatorKind::PoissonActor => "usga-poisson",
            OperatorKind::CommPoissonActor => "usga-cpoisson",
        }
    }

    /// Names of the tuple components, in storage order.
    pub fn component_names(&self) -> &'static [&'static str] {
        match self {
            OperatorKind::Derivations => &["d"],
            OperatorKind::AntiDerivations => &["D"],
            OperatorKind::Biderivations => &["d", "D"],
            OperatorKind::Bimultipliers => &["f", "F"],
            OperatorKind::Multipliers => &["f"],
            OperatorKind::PoissonActor => &["f", "F", "d"],
            OperatorKind::CommPoissonActor => &["f", "d"],
        }
    }

    pub fn components(&self) -> usize {
        self.component_names().len()
    }

    /// Names of the induced operations; empty for anti-derivations.
    pub fn op_names(&self) -> &'static [&'static str] {
        match self {
            OperatorKind::Derivations | OperatorKind::Biderivations => &["bracket"],
            OperatorKind::AntiDerivations => &[],
            OperatorKind::Bimultipliers | OperatorKind::Multipliers => &["mul"],
            OperatorKind::PoissonActor | OperatorKind::CommPoissonActor => &["mul", "bracket"],
        }
    }

    /// The induced operation `op` on two tuples, computed by composing maps.
    pub fn combine(&self, op: usize, a: &OperatorTuple, b: &OperatorTuple) -> OperatorTuple {
        let c = |m: &Matrix, n: &Matrix| m.compose(n);
        let comm = |m: &Matrix, n: &Matrix| m.compose(n).sub(&n.compose(m));
        let (x, y) = (&a.components, &b.components);
        let comps = match (self, op) {
            (OperatorKind::Derivations, 0) => vec![comm(&x[0], &y[0])],
            // (dd' - d'd, Dd' - d'D)
            (OperatorKind::Biderivations, 0) => vec![comm(&x[0], &y[0]), comm(&x[1], &y[0])],
            // (ff', F'F)
            (OperatorKind::Bimultipliers, 0) => vec![c(&x[0], &y[0]), c(&y[1], &x[1])],
            (OperatorKind::Multipliers, 0) => vec![c(&x[0], &y[0])],
            // (ff', F'F, fd' + F'd)
            (OperatorKind::PoissonActor, 0) => {
                vec![c(&x[0], &y[0]), c(&y[1], &x[1]), c(&x[0], &y[2]).add(&c(&y[1], &x[2]))]
            }
            // (fd' - d'f, Fd' - d'F, dd' - d'd)
            (OperatorKind::PoissonActor, 1) => vec![comm(&x[0], &y[2]), comm(&x[1], &y[2]), comm(&x[2], &y[2])],
            // (ff', fd' + f'd)
            (OperatorKind::CommPoissonActor, 0) => vec![c(&x[0], &y[0]), c(&x[0], &y[1]).add(&c(&y[0], &x[1]))],
            // (fd' - d'f, dd' - d'd)
            (OperatorKind::CommPoissonActor, 1) => vec![comm(&x[0], &y[1]), comm(&x[1], &y[1])],
            _ => panic!("{self} has no operation {op}"),
        };
        OperatorTuple { components: comps }
    }

    /// The inner tuple of the basis element `e_i` of `base`.
    pub fn inner_tuple(&self, base: &Algebra, i: usize) -> OperatorTuple {
        let m = base.product();
        let b = base.bracket();
        // ad_x = [-, x], Ad_x = [x, -]
        let ad = || b.right_operator(i);
        let big_ad = || b.left_operator(i);
        let comps = match self {
            OperatorKind::Derivations => vec![ad().neg()],
            OperatorKind::AntiDerivations => vec![big_ad()],
            OperatorKind::Biderivations => vec![ad().neg(), big_ad()],
            OperatorKind::Bimultipliers => vec![m.left_operator(i), m.right_operator(i)],
            OperatorKind::Multipliers => vec![m.left_operator(i)],
            OperatorKind::PoissonActor => vec![m.left_operator(i), m.right_operator(i), big_ad()],
            OperatorKind::CommPoissonActor => vec![m.left_operator(i), big_ad()],
        };
        OperatorTuple { components: comps }
    }

    /// Which operation of the base each induced operation should match for the inner map.
    fn base_ops(&self, base: &Algebra) -> Vec<usize> {
        match self {
            OperatorKind::Derivations | OperatorKind::Biderivations => vec![base.bracket_index()],
            OperatorKind::AntiDerivations => vec![],
            OperatorKind::Bimultipliers | OperatorKind::Multipliers => vec![base.product_index()],
            OperatorKind::PoissonActor | OperatorKind::CommPoissonActor => vec![0, 1],
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorKind {
    type Err = OpSpaceError;
    fn from_str(s: &str) -> Result<Self, OpSpaceError> {
        OperatorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| OpSpaceError::UnknownKind(s.to_string()))
    }
}

impl Serialize for OperatorKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A tuple of square matrices on the base algebra, e.g. `(d, D)` or `(f, F, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct OperatorTuple {
    pub components: Vec<Matrix>,
}

impl OperatorTuple {
    pub fn new(components: Vec<Matrix>) -> Self {
        OperatorTuple { components }
    }

    pub fn zero(field: FieldSpec, n: usize, count: usize) -> Self {
        OperatorTuple { components: vec![Matrix::zeros(field, n, n); count] }
    }

    /// Concatenation of the row-major entries of each component.
    pub fn flatten(&self) -> Vector {
        self.components.iter().flat_map(|m| m.as_flat().iter().cloned()).collect()
    }

    pub fn from_flat(field: FieldSpec, n: usize, count: usize, data: &[Scalar]) -> Self {
        assert_eq!(data.len(), count * n * n);
        let components = (0..count)
            .map(|c| Matrix::from_flat(field, n, n, data[c * n * n..(c + 1) * n * n].to_vec()))
            .collect();
        OperatorTuple { components }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }
}

// ---- symbolic assembly ----------------------------------------------------

/// A vector whose coordinates are linear forms in the unknown matrix entries.
type SymVec = Vec<Vec<(usize, Scalar)>>;

struct Assembler {
    field: FieldSpec,
    n: usize,
    sys: LinearSystem,
}

impl Assembler {
    fn new(base: &Algebra, components: usize) -> Self {
        let n = base.dim();
        Assembler { field: base.field(), n, sys: LinearSystem::new(base.field(), components * n * n) }
    }

    fn var(&self, c: usize, r: usize, s: usize) -> usize {
        (c * self.n + r) * self.n + s
    }

    /// `M_c v` for a constant vector `v`.
    fn image(&self, c: usize, v: &[Scalar]) -> SymVec {
        (0..self.n)
            .map(|k| v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(s, x)| (self.var(c, k, s), x.clone())).collect())
            .collect()
    }

    /// `M_c e_j`
    fn image_of(&self, c: usize, j: usize) -> SymVec {
        (0..self.n).map(|k| vec![(self.var(c, k, j), self.field.one())]).collect()
    }

    /// `v ∘ e_j`
    fn left(&self, map: &BilinearMap, v: &SymVec, j: usize) -> SymVec {
        (0..self.n)
            .map(|k| {
                let mut form = Vec::new();
                for (r, terms) in v.iter().enumerate() {
                    let c = map.entry(r, j, k);
                    if !c.is_zero() {
                        form.extend(terms.iter().map(|(u, x)| (*u, x * c)));
                    }
                }
                form
            })
            .collect()
    }

    /// `e_i ∘ v`
    fn right(&self, map: &BilinearMap, i: usize, v: &SymVec) -> SymVec {
        (0..self.n)
            .map(|k| {
                let mut form = Vec::new();
                for (r, terms) in v.iter().enumerate() {
                    let c = map.entry(i, r, k);
                    if !c.is_zero() {
                        form.extend(terms.iter().map(|(u, x)| (*u, x * c)));
                    }
                }
                form
            })
            .collect()
    }

    /// Imposes `Σ sign · part = 0` coordinatewise.
    fn equate(&mut self, parts: &[(i64, SymVec)]) {
        for k in 0..self.n {
            let mut row = Vec::new();
            for (sign, v) in parts {
                let s = self.field.from_i64(*sign);
                row.extend(v[k].iter().map(|(u, x)| (*u, &s * x)));
            }
            self.sys.push_row(row);
        }
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|i| (0..self.n).map(move |j| (i, j))).collect()
    }

    /// `d[x,y] = [dx,y] + [x,dy]`
    fn derivation(&mut self, c: usize, map: &BilinearMap) {
        for (i, j) in self.pairs() {
            let lhs = self.image(c, map.get(i, j));
            let a = self.left(map, &self.image_of(c, i), j);
            let b = self.right(map, i, &self.image_of(c, j));
            self.equate(&[(1, lhs), (-1, a), (-1, b)]);
        }
    }

    /// `D[x,y] = [Dx,y] - [Dy,x]`
    fn anti_derivation(&mut self, c: usize, map: &BilinearMap) {
        for (i, j) in self.pairs() {
            let lhs = self.image(c, map.get(i, j));
            let a = self.left(map, &self.image_of(c, i), j);
            let b = self.left(map, &self.image_of(c, j), i);
            self.equate(&[(1, lhs), (-1, a), (1, b)]);
        }
    }

    /// `[x, d y] = [x, D y]`
    fn bider_link(&mut self, d: usize, big_d: usize, map: &BilinearMap) {
        for (i, j) in self.pairs() {
            let a = self.right(map, i, &self.image_of(d, j));
            let b = self.right(map, i, &self.image_of(big_d, j));
            self.equate(&[(1, a), (-1, b)]);
        }
    }

    /// `f(xy) = f(x) y`
    fn left_multiplier(&mut self, f: usize, m: &BilinearMap) {
        for (i, j) in self.pairs() {
            let lhs = self.image(f, m.get(i, j));
            let rhs = self.left(m, &self.image_of(f, i), j);
            self.equate(&[(1, lhs), (-1, rhs)]);
        }
    }

    /// `F(xy) = x F(y)`
    fn right_multiplier(&mut self, big_f: usize, m: &BilinearMap) {
        for (i, j) in self.pairs() {
            let lhs = self.image(big_f, m.get(i, j));
            let rhs = self.right(m, i, &self.image_of(big_f, j));
            self.equate(&[(1, lhs), (-1, rhs)]);
        }
    }

    /// `x f(y) = F(x) y`
    fn bim_link(&mut self, f: usize, big_f: usize, m: &BilinearMap) {
        for (i, j) in self.pairs() {
            let a = self.right(m, i, &self.image_of(f, j));
            let b = self.left(m, &self.image_of(big_f, i), j);
            self.equate(&[(1, a), (-1, b)]);
        }
    }

    /// `f[x,y] = [f x, y] - d(y) x`
    fn v1(&mut self, f: usize, d: usize, m: &BilinearMap, b: &BilinearMap) {
        for (i, j) in self.pairs() {
            let lhs = self.image(f, b.get(i, j));
            let r1 = self.left(b, &self.image_of(f, i), j);
            let r2 = self.left(m, &self.image_of(d, j), i);
            self.equate(&[(1, lhs), (-1, r1), (1, r2)]);
        }
    }

    /// `F[x,y] = [F x, y] - x d(y)`
    fn v2(&mut self, big_f: usize, d: usize, m: &BilinearMap, b: &BilinearMap) {
        for (i, j) in self.pairs() {
            let lhs = self.image(big_f, b.get(i, j));
            let r1 = self.left(b, &self.image_of(big_f, i), j);
            let r2 = self.right(m, i, &self.image_of(d, j));
            self.equate(&[(1, lhs), (-1, r1), (1, r2)]);
        }
    }
}

// ---- concrete identity checks ----------------------------------------------

fn pair_defect<F>(n: usize, clause: &str, mut f: F) -> Option<Witness>
where
    F: FnMut(usize, usize) -> Vector,
{
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find_map(|(i, j)| {
        let d = f(i, j);
        (!is_zero_vector(&d)).then(|| Witness { clause: clause.into(), indices: vec![i, j], defect: d })
    })
}

fn derivation_defect(d: &Matrix, b: &BilinearMap, n: usize, clause: &str) -> Option<Witness> {
    pair_defect(n, clause, |i, j| {
        let lhs = d.apply(b.get(i, j));
        let r = crate::linalg::add_vectors(&b.apply_left(&d.column(i), j), &b.apply_right(i, &d.column(j)));
        sub_vectors(&lhs, &r)
    })
}

fn anti_derivation_defect(d: &Matrix, b: &BilinearMap, n: usize) -> Option<Witness> {
    pair_defect(n, "anti-derivation", |i, j| {
        let lhs = d.apply(b.get(i, j));
        let r = sub_vectors(&b.apply_left(&d.column(i), j), &b.apply_left(&d.column(j), i));
        sub_vectors(&lhs, &r)
    })
}

fn left_multiplier_defect(f: &Matrix, m: &BilinearMap, n: usize) -> Option<Witness> {
    pair_defect(n, "left multiplier", |i, j| sub_vectors(&f.apply(m.get(i, j)), &m.apply_left(&f.column(i), j)))
}

fn bimultiplier_defect(f: &Matrix, big_f: &Matrix, m: &BilinearMap, n: usize) -> Option<Witness> {
    left_multiplier_defect(f, m, n)
        .or_else(|| {
            pair_defect(n, "right multiplier", |i, j| {
                sub_vectors(&big_f.apply(m.get(i, j)), &m.apply_right(i, &big_f.column(j)))
            })
        })
        .or_else(|| {
            pair_defect(n, "bimultiplier", |i, j| {
                sub_vectors(&m.apply_right(i, &f.column(j)), &m.apply_left(&big_f.column(i), j))
            })
        })
}

fn v1_defect(f: &Matrix, d: &Matrix, m: &BilinearMap, b: &BilinearMap, n: usize) -> Option<Witness> {
    pair_defect(n, "V1", |i, j| {
        let lhs = f.apply(b.get(i, j));
        let r = sub_vectors(&b.apply_left(&f.column(i), j), &m.apply_left(&d.column(j), i));
        sub_vectors(&lhs, &r)
    })
}

fn v2_defect(big_f: &Matrix, d: &Matrix, m: &BilinearMap, b: &BilinearMap, n: usize) -> Option<Witness> {
    pair_defect(n, "V2", |i, j| {
        let lhs = big_f.apply(b.get(i, j));
        let r = sub_vectors(&b.apply_left(&big_f.column(i), j), &m.apply_right(i, &d.column(j)));
        sub_vectors(&lhs, &r)
    })
}

/// Evaluates the defining identities of `kind` on `tuple` directly, without
/// going through the linear system. `None` means every identity holds.
pub fn tuple_defect(base: &Algebra, kind: OperatorKind, tuple: &OperatorTuple) -> Option<Witness> {
    let n = base.dim();
    let m = base.product();
    let b = base.bracket();
    let t = &tuple.components;
    if t.len() != kind.components() || t.iter().any(|c| c.rows() != n || c.cols() != n) {
        return Some(Witness { clause: "shape".into(), indices: vec![], defect: vec![base.field().one()] });
    }
    match kind {
        OperatorKind::Derivations => derivation_defect(&t[0], b, n, "derivation"),
        OperatorKind::AntiDerivations => anti_derivation_defect(&t[0], b, n),
        OperatorKind::Biderivations => derivation_defect(&t[0], b, n, "derivation")
            .or_else(|| anti_derivation_defect(&t[1], b, n))
            .or_else(|| {
                pair_defect(n, "biderivation", |i, j| {
                    sub_vectors(&b.apply_right(i, &t[0].column(j)), &b.apply_right(i, &t[1].column(j)))
                })
            }),
        OperatorKind::Bimultipliers => bimultiplier_defect(&t[0], &t[1], m, n),
        OperatorKind::Multipliers => left_multiplier_defect(&t[0], m, n),
        OperatorKind::PoissonActor => bimultiplier_defect(&t[0], &t[1], m, n)
            .or_else(|| derivation_defect(&t[2], b, n, "derivation"))
            .or_else(|| v1_defect(&t[0], &t[2], m, b, n))
            .or_else(|| v2_defect(&t[1], &t[2], m, b, n))
            .or_else(|| derivation_defect(&t[2], m, n, "V3")),
        OperatorKind::CommPoissonActor => left_multiplier_defect(&t[0], m, n)
            .or_else(|| derivation_defect(&t[1], b, n, "derivation"))
            .or_else(|| v1_defect(&t[0], &t[1], m, b, n))
            .or_else(|| derivation_defect(&t[1], m, n, "V3")),
    }
}

// ---- spaces -----------------------------------------------------------------

/// A space of operator tuples on `base`, with its induced operations when the
/// kind has any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorSpace {
    base: Algebra,
    kind: OperatorKind,
    space: Subspace,
    basis: Vec<OperatorTuple>,
    induced: Option<Algebra>,
}

impl OperatorSpace {
    fn build(base: &Algebra, kind: OperatorKind) -> Result<OperatorSpace, OpSpaceError> {
        let comps = kind.components();
        let mut asm = Assembler::new(base, comps);
        let m = base.product().clone();
        let b = base.bracket().clone();
        match kind {
            OperatorKind::Derivations => asm.derivation(0, &b),
            OperatorKind::AntiDerivations => asm.anti_derivation(0, &b),
            OperatorKind::Biderivations => {
                asm.derivation(0, &b);
                asm.anti_derivation(1, &b);
                asm.bider_link(0, 1, &b);
            }
            OperatorKind::Bimultipliers => {
                asm.left_multiplier(0, &m);
                asm.right_multiplier(1, &m);
                asm.bim_link(0, 1, &m);
            }
            OperatorKind::Multipliers => asm.left_multiplier(0, &m),
            OperatorKind::PoissonActor => {
                asm.left_multiplier(0, &m);
                asm.right_multiplier(1, &m);
                asm.bim_link(0, 1, &m);
                asm.derivation(2, &b);
                asm.v1(0, 2, &m, &b);
                asm.v2(1, 2, &m, &b);
                asm.derivation(2, &m);
            }
            OperatorKind::CommPoissonActor => {
                asm.left_multiplier(0, &m);
                asm.derivation(1, &b);
                asm.v1(0, 1, &m, &b);
                asm.derivation(1, &m);
            }
        }
        let space = nullspace(&asm.sys);
        let n = base.dim();
        let basis: Vec<OperatorTuple> =
            space.basis().iter().map(|v| OperatorTuple::from_flat(base.field(), n, comps, v)).collect();
        for (index, t) in basis.iter().enumerate() {
            if let Some(witness) = tuple_defect(base, kind, t) {
                return Err(OpSpaceError::SelfCheckFailed { index, witness });
            }
        }
        let mut out = OperatorSpace { base: base.clone(), kind, space, basis, induced: None };
        out.induced = out.induce()?;
        Ok(out)
    }

    fn induce(&self) -> Result<Option<Algebra>, OpSpaceError> {
        let names = self.kind.op_names();
        if names.is_empty() {
            return Ok(None);
        }
        let k = self.dim();
        let field = self.base.field();
        let mut ops = Vec::new();
        for (o, name) in names.iter().enumerate() {
            let mut map = BilinearMap::zeros(field, k, k, k);
            for (i, x) in self.basis.iter().enumerate() {
                for (j, y) in self.basis.iter().enumerate() {
                    let z = self.kind.combine(o, x, y);
                    let coords = self.space.coordinates(&z.flatten()).ok_or_else(|| OpSpaceError::ClosureFailure {
                        op: (*name).into(),
                        left: i,
                        right: j,
                    })?;
                    map.set(i, j, &coords);
                }
            }
            ops.push(BilinearOp { name: (*name).into(), map });
        }
        Ok(Some(Algebra::new(field, k, ops, None)?))
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[OperatorTuple] {
        &self.basis
    }

    /// The solution space inside the flattened tuple coordinates.
    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn induced(&self) -> Option<&Algebra> {
        self.induced.as_ref()
    }

    /// The induced operations as an algebra in the computed basis.
    pub fn as_algebra(&self) -> Result<&Algebra, OpSpaceError> {
        self.induced.as_ref().ok_or(OpSpaceError::NoInducedOperation(self.kind))
    }

    pub fn contains(&self, t: &OperatorTuple) -> bool {
        t.components.len() == self.kind.components() && self.space.contains(&t.flatten())
    }

    pub fn coordinates(&self, t: &OperatorTuple) -> Option<Vector> {
        if t.components.len() != self.kind.components() {
            return None;
        }
        self.space.coordinates(&t.flatten())
    }

    pub fn tuple(&self, coords: &[Scalar]) -> OperatorTuple {
        let n = self.base.dim();
        OperatorTuple::from_flat(self.base.field(), n, self.kind.components(), &self.space.combine(coords))
    }

    /// The Der-module action `d · D = D∘d - d∘D` on anti-derivations.
    pub fn der_action(&self, d: &Matrix, anti: &Matrix) -> Result<Matrix, OpSpaceError> {
        if self.kind != OperatorKind::AntiDerivations {
            return Err(OpSpaceError::NotInSpace(format!("der_action needs anti-derivations, got {}", self.kind)));
        }
        let n = self.base.dim();
        if d.rows() != n || d.cols() != n {
            return Err(OpSpaceError::NotInSpace("d has the wrong shape".into()));
        }
        if let Some(w) = derivation_defect(d, self.base.bracket(), n, "derivation") {
            return Err(OpSpaceError::NotInSpace(w.to_string()));
        }
        let anti_tuple = OperatorTuple::new(vec![anti.clone()]);
        if !self.contains(&anti_tuple) {
            return Err(OpSpaceError::NotInSpace("D is not an anti-derivation".into()));
        }
        let out = anti.compose(d).sub(&d.compose(anti));
        debug_assert!(self.contains(&OperatorTuple::new(vec![out.clone()])));
        Ok(out)
    }
}

#[derive(Serialize)]
struct SpaceJson<'a> {
    kind: OperatorKind,
    components: &'static [&'static str],
    base: &'a Algebra,
    dim: usize,
    basis: &'a [OperatorTuple],
    #[serde(skip_serializing_if = "Option::is_none")]
    induced: Option<&'a Algebra>,
}

impl Serialize for OperatorSpace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SpaceJson {
            kind: self.kind,
            components: self.kind.component_names(),
            base: &self.base,
            dim: self.dim(),
            basis: &self.basis,
            induced: self.induced.as_ref(),
        }
        .serialize(s)
    }
}

fn require(base: &Algebra, tag: IdentityTag, err: fn(Witness) -> OpSpaceError) -> Result<(), OpSpaceError> {
    let r = base.check_identity(tag)?;
    match r.witness {
        Some(w) => Err(err(w)),
        None => Ok(()),
    }
}

/// `Der` of the bracket (op 1 if present, else op 0), with the commutator.
pub fn derivations(base: &Algebra) -> Result<OperatorSpace, OpSpaceError> {
    OperatorSpace::build(base, OperatorKind::Derivations)
}

/// Anti-derivations of the bracket. No induced operation; see [`OperatorSpace::der_action`].
pub fn anti_derivations(base: &Algebra) -> Result<OperatorSpace, OpSpaceError> {
    OperatorSpace::build(base, OperatorKind::AntiDerivations)
}

/// Pairs `(d, D)` with `[x, dy] = [x, Dy]`. The bracket closes on Leibniz algebras;
/// elsewhere a failure to close is reported as [`OpSpaceError::ClosureFailure`].
pub fn biderivations(base: &Algebra) -> Result<OperatorSpace, OpSpaceError> {
    OperatorSpace::build(base, OperatorKind::Biderivations)
}

pub fn bimultipliers(base: &Algebra) -> Result<OperatorSpace, OpSpaceError> {
    require(base, IdentityTag::Associative, OpSpaceError::NotAssociative)?;
    OperatorSpace::build(base, OperatorKind::Bimultipliers)
}

pub fn multipliers(base: &Algebra) -> Result<OperatorSpace, OpSpaceError> {
    require(base, IdentityTag::Associative, OpSpaceError::NotAssociative)?;
    require(base, IdentityTag::Commutative, OpSpaceError::NotCommutative)?;
    OperatorSpace::build(base, OperatorKind::Multipliers)
}

/// `[V]`: triples `(f, F, d)` with `(f, F)` a bimultiplier, `d` a derivation of
/// the bracket and V1–V3.
pub fn poisson_usga(base: &Algebra) -> Result<OperatorSpace, OpSpaceError> {
    require(base, IdentityTag::Poisson, OpSpaceError::NotPoisson)?;
    OperatorSpace::build(base, OperatorKind::PoissonActor)
}

/// `[V]_c`: pairs `(f, d)` for a commutative Poisson algebra.
pub fn comm_poisson_usga(base: &Algebra) -> Result<OperatorSpace, OpSpaceError> {
    require(base, IdentityTag::Poisson, OpSpaceError::NotCommutativePoisson)?;
    require(base, IdentityTag::Commutative, OpSpaceError::NotCommutativePoisson)?;
    OperatorSpace::build(base, OperatorKind::CommPoissonActor)
}

pub fn operator_space(base: &Algebra, kind: OperatorKind) -> Result<OperatorSpace, OpSpaceError> {
    match kind {
        OperatorKind::Derivations => derivations(base),
        OperatorKind::AntiDerivations => anti_derivations(base),
        OperatorKind::Biderivations => biderivations(base),
        OperatorKind::Bimultipliers => bimultipliers(base),
        OperatorKind::Multipliers => multipliers(base),
        OperatorKind::PoissonActor => poisson_usga(base),
        OperatorKind::CommPoissonActor => comm_poisson_usga(base),
    }
}

/// The inner map of the base into a computed space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InnerEmbedding {
    /// `dim(space) × dim(base)`; column `i` holds the coordinates of the inner tuple of `e_i`.
    pub map: Matrix,
    /// Whether the inner map respects the induced operations; absent for anti-derivations.
    pub homomorphism: Option<IdentityReport>,
}

pub fn inner_embedding(space: &OperatorSpace) -> Result<InnerEmbedding, OpSpaceError> {
    let base = space.base();
    let cols = (0..base.dim())
        .map(|i| space.coordinates(&space.kind.inner_tuple(base, i)).ok_or(OpSpaceError::InnerNotInSpace(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let map = Matrix::from_columns(base.field(), space.dim(), &cols);
    let homomorphism = match space.induced() {
        None => None,
        Some(target) => {
            let ops = space.kind.base_ops(base).into_iter().map(|o| base.op(o).cloned()).collect::<Result<Vec<_>, _>>()?;
            let source = Algebra::new(base.field(), base.dim(), ops, None)?;
            Some(is_homomorphism(&map, &source, target)?)
        }
    };
    Ok(InnerEmbedding { map, homomorphism })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutationReport {
    pub holds: bool,
    /// Bim basis indices `(i, j)` with `f_i ∘ F_j ≠ F_j ∘ f_i`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<Matrix>,
}

/// Whether every left multiplier commutes with every right multiplier:
/// `f ∘ F' = F' ∘ f` for all `(f, F), (f', F')` in `Bim(V)`.
pub fn check_bim_commutation(base: &Algebra) -> Result<CommutationReport, OpSpaceError> {
    let bim = bimultipliers(base)?;
    Ok(bim_commutation(&bim))
}

pub fn bim_commutation(bim: &OperatorSpace) -> CommutationReport {
    for (i, x) in bim.basis().iter().enumerate() {
        for (j, y) in bim.basis().iter().enumerate() {
            let d = x.components[0].compose(&y.components[1]).sub(&y.components[1].compose(&x.components[0]));
            if !d.is_zero() {
                return CommutationReport { holds: false, witness: Some((i, j)), defect: Some(d) };
            }
        }
    }
    CommutationReport { holds: true, witness: None, defect: None }
}

/// How `(f, d) ↦ (f, f, d)` relates `[V]_c` to `[V]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalReport {
    pub lands_in_usga: bool,
    pub injective: bool,
    /// The image is closed under both operations of `[V]`.
    pub subalgebra: bool,
    pub homomorphism: IdentityReport,
    /// `dim([V]_c) × ... ` coordinates of the embedding, when it lands.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<Matrix>,
}

impl DiagonalReport {
    pub fn is_isomorphism_onto_image(&self) -> bool {
        self.lands_in_usga && self.injective && self.subalgebra && self.homomorphism.holds
    }
}

/// Compares `[V]_c` with the triples `(f, f, d)` of `[V]`. The diagonal is
/// closed under the product only when the multipliers involved commute.
pub fn diagonal_embedding(base: &Algebra) -> Result<DiagonalReport, OpSpaceError> {
    let vc = comm_poisson_usga(base)?;
    let v = poisson_usga(base)?;
    let mut cols = Vec::new();
    for t in vc.basis() {
        let diag = OperatorTuple::new(vec![t.components[0].clone(), t.components[0].clone(), t.components[1].clone()]);
        match v.coordinates(&diag) {
            Some(c) => cols.push(c),
            None => {
                return Ok(DiagonalReport {
                    lands_in_usga: false,
                    injective: false,
                    subalgebra: false,
                    homomorphism: IdentityReport::pass("homomorphism"),
                    map: None,
                })
            }
        }
    }
    let field = base.field();
    let map = Matrix::from_columns(field, v.dim(), &cols);
    let injective = map.rank() == vc.dim();
    let image = map.image();
    let target = v.as_algebra()?;
    let subalgebra = (0..2).all(|o| target.is_closed(&image, o));
    let homomorphism = is_homomorphism(&map, vc.as_algebra()?, target)?;
    Ok(DiagonalReport { lands_in_usga: true, injective, subalgebra, homomorphism, map: Some(map) })
}
