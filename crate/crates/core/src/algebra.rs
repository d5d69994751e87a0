//! Finite-dimensional algebras given by structure constants.
//!
//! An [`Algebra`] carries one or two bilinear operations. With one operation it
//! models associative, Leibniz, Lie or Jordan algebras; with two, op 0 is the
//! product `·` and op 1 the bracket `[-,-]`, as for Poisson algebras.
//!
//! All identity checks run over every basis tuple. The identities checked here
//! are multilinear (Jordan is handled through its polynomial coefficients), so
//! vanishing on basis tuples is equivalent to vanishing everywhere.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldError, FieldSpec, Scalar};
use crate::linalg::{
    add_vectors, axpy, is_zero_vector, sub_vectors, unit_vector, zero_vector, LinearSystem, Matrix, Subspace, Vector,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("DimensionMismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("OpIndexOutOfRange: op {index} requested, algebra has {count}")]
    OpIndexOutOfRange { index: usize, count: usize },
    #[error("OpArityMismatch: {0}")]
    OpArityMismatch(String),
    #[error("IndexOutOfRange: entry ({i},{j},{k}) outside shape {shape:?}")]
    IndexOutOfRange { i: usize, j: usize, k: usize, shape: (usize, usize, usize) },
    #[error("DuplicateEntry: ({0},{1},{2}) listed twice")]
    DuplicateEntry(usize, usize, usize),
    #[error("FieldMismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("UnknownIdentity: {0}")]
    UnknownIdentity(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A bilinear map `F^left × F^right → F^out` stored densely;
/// `get(i, j)` is the image of `(e_i, e_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BilinearMap {
    field: FieldSpec,
    left: usize,
    right: usize,
    out: usize,
    data: Vec<Scalar>,
}

impl BilinearMap {
    pub fn zeros(field: FieldSpec, left: usize, right: usize, out: usize) -> Self {
        BilinearMap { field, left, right, out, data: vec![field.zero(); left * right * out] }
    }

    /// Builds from sparse `(i, j, k, c)` entries meaning `(e_i, e_j) ↦ c e_k`.
    pub fn from_entries<I>(field: FieldSpec, shape: (usize, usize, usize), entries: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (usize, usize, usize, Scalar)>,
    {
        let mut m = Self::zeros(field, shape.0, shape.1, shape.2);
        let mut seen = std::collections::HashSet::new();
        for (i, j, k, c) in entries {
            if i >= shape.0 || j >= shape.1 || k >= shape.2 {
                return Err(AlgebraError::IndexOutOfRange { i, j, k, shape });
            }
            if c.field() != field {
                return Err(AlgebraError::FieldMismatch(field, c.field()));
            }
            if !seen.insert((i, j, k)) {
                return Err(AlgebraError::DuplicateEntry(i, j, k));
            }
            m.set_entry(i, j, k, c);
        }
        Ok(m)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.left, self.right, self.out)
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        (i * self.right + j) * self.out
    }

    pub fn get(&self, i: usize, j: usize) -> &[Scalar] {
        let o = self.offset(i, j);
        &self.data[o..o + self.out]
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[self.offset(i, j) + k]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        let o = self.offset(i, j);
        self.data[o + k] = c;
    }

    pub fn set(&mut self, i: usize, j: usize, v: &[Scalar]) {
        assert_eq!(v.len(), self.out);
        let o = self.offset(i, j);
        self.data[o..o + self.out].clone_from_slice(v);
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        assert_eq!(x.len(), self.left);
        assert_eq!(y.len(), self.right);
        let mut out = zero_vector(self.field, self.out);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                axpy(&mut out, &(xi * yj), self.get(i, j));
            }
        }
        out
    }

    /// `x ∘ e_j`
    pub fn apply_left(&self, x: &[Scalar], j: usize) -> Vector {
        let mut out = zero_vector(self.field, self.out);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            axpy(&mut out, xi, self.get(i, j));
        }
        out
    }

    /// `e_i ∘ y`
    pub fn apply_right(&self, i: usize, y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.out);
        for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            axpy(&mut out, yj, self.get(i, j));
        }
        out
    }

    /// Matrix of `y ↦ e_i ∘ y`.
    pub fn left_operator(&self, i: usize) -> Matrix {
        let cols: Vec<Vector> = (0..self.right).map(|j| self.get(i, j).to_vec()).collect();
        Matrix::from_columns(self.field, self.out, &cols)
    }

    /// Matrix of `x ↦ x ∘ e_j`.
    pub fn right_operator(&self, j: usize) -> Matrix {
        let cols: Vec<Vector> = (0..self.left).map(|i| self.get(i, j).to_vec()).collect();
        Matrix::from_columns(self.field, self.out, &cols)
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    /// Nonzero entries in lexicographic `(i, j, k)` order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.left {
            for j in 0..self.right {
                for (k, c) in self.get(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn entries_json(&self) -> Vec<EntryRepr> {
        self.entries().into_iter().map(|(i, j, k, c)| (i, j, k, CoeffRepr::Text(c.to_string()))).collect()
    }

    pub fn from_entries_json(
        field: FieldSpec,
        shape: (usize, usize, usize),
        entries: &[EntryRepr],
    ) -> Result<Self, AlgebraError> {
        let parsed = entries
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, c.parse(field)?)))
            .collect::<Result<Vec<_>, FieldError>>()?;
        Self::from_entries(field, shape, parsed)
    }
}

/// A coefficient as written in JSON files: a string `"a"`/`"a/b"` or a bare integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffRepr {
    Text(String),
    Int(i64),
}

impl CoeffRepr {
    pub fn parse(&self, field: FieldSpec) -> Result<Scalar, FieldError> {
        match self {
            CoeffRepr::Text(s) => field.parse(s),
            CoeffRepr::Int(v) => Ok(field.from_i64(*v)),
        }
    }
}

pub type EntryRepr = (usize, usize, usize, CoeffRepr);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BilinearOp {
    pub name: String,
    pub map: BilinearMap,
}

/// A finite-dimensional algebra with one or two bilinear operations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AlgebraFile", into = "AlgebraFile")]
pub struct Algebra {
    field: FieldSpec,
    dim: usize,
    ops: Vec<BilinearOp>,
    labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OpFile {
    pub name: String,
    #[serde(default)]
    pub entries: Vec<EntryRepr>,
}

/// On-disk layout of an algebra; indices are 0-based and entries sorted.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub dim: usize,
    pub ops: Vec<OpFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl TryFrom<AlgebraFile> for Algebra {
    type Error = AlgebraError;
    fn try_from(f: AlgebraFile) -> Result<Self, AlgebraError> {
        let n = f.dim;
        let ops = f
            .ops
            .iter()
            .map(|o| {
                Ok(BilinearOp { name: o.name.clone(), map: BilinearMap::from_entries_json(f.field, (n, n, n), &o.entries)? })
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Algebra::new(f.field, n, ops, f.labels)
    }
}

impl From<Algebra> for AlgebraFile {
    fn from(a: Algebra) -> Self {
        AlgebraFile {
            field: a.field,
            dim: a.dim,
            ops: a.ops.iter().map(|o| OpFile { name: o.name.clone(), entries: o.map.entries_json() }).collect(),
            labels: a.labels,
        }
    }
}

/// The identities understood by [`Algebra::check_identity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityTag {
    Associative,
    Commutative,
    Anticommutative,
    LeibnizRight,
    Jacobi,
    Lie,
    Poisson,
    Jordan,
}

impl IdentityTag {
    pub const ALL: [IdentityTag; 8] = [
        IdentityTag::Associative,
        IdentityTag::Commutative,
        IdentityTag::Anticommutative,
        IdentityTag::LeibnizRight,
        IdentityTag::Jacobi,
        IdentityTag::Lie,
        IdentityTag::Poisson,
        IdentityTag::Jordan,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityTag::Associative => "associative",
            IdentityTag::Commutative => "commutative",
            IdentityTag::Anticommutative => "anticommutative",
            IdentityTag::LeibnizRight => "leibniz_right",
            IdentityTag::Jacobi => "jacobi",
            IdentityTag::Lie => "lie",
            IdentityTag::Poisson => "poisson",
            IdentityTag::Jordan => "jordan",
        }
    }
}

impl fmt::Display for IdentityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityTag {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, AlgebraError> {
        IdentityTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| AlgebraError::UnknownIdentity(s.to_string()))
    }
}

/// A failing basis tuple and the nonzero value of `lhs - rhs` there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub clause: String,
    pub indices: Vec<usize>,
    pub defect: Vector,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let defect: Vec<String> = self.defect.iter().map(|c| c.to_string()).collect();
        write!(f, "{} at {:?}, defect [{}]", self.clause, self.indices, defect.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl IdentityReport {
    pub fn pass(identity: impl Into<String>) -> Self {
        IdentityReport { identity: identity.into(), holds: true, witness: None }
    }

    pub fn fail(identity: impl Into<String>, witness: Witness) -> Self {
        IdentityReport { identity: identity.into(), holds: false, witness: Some(witness) }
    }

    fn from_search(identity: impl Into<String>, w: Option<Witness>) -> Self {
        match w {
            Some(w) => Self::fail(identity, w),
            None => Self::pass(identity),
        }
    }
}

/// Left center, right center and center of a bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Centers {
    pub left: Subspace,
    pub right: Subspace,
    pub center: Subspace,
    /// The left center need not be closed under the bracket.
    pub left_is_subalgebra: bool,
}

fn first_defect<I, F>(clause: &str, tuples: I, mut defect: F) -> Option<Witness>
where
    I: IntoIterator<Item = Vec<usize>>,
    F: FnMut(&[usize]) -> Vector,
{
    tuples.into_iter().find_map(|t| {
        let d = defect(&t);
        (!is_zero_vector(&d)).then(|| Witness { clause: clause.to_string(), indices: t, defect: d })
    })
}

fn triples(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| vec![i, j, k])))
}

fn pairs(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).flat_map(move |i| (0..n).map(move |j| vec![i, j]))
}

impl Algebra {
    pub fn new(field: FieldSpec, dim: usize, ops: Vec<BilinearOp>, labels: Option<Vec<String>>) -> Result<Self, AlgebraError> {
        if ops.is_empty() || ops.len() > 2 {
            return Err(AlgebraError::OpArityMismatch(format!("an algebra carries 1 or 2 operations, got {}", ops.len())));
        }
        for op in &ops {
            if op.map.field() != field {
                return Err(AlgebraError::FieldMismatch(field, op.map.field()));
            }
            if op.map.shape() != (dim, dim, dim) {
                let (l, _, _) = op.map.shape();
                return Err(AlgebraError::DimensionMismatch { expected: dim, got: l });
            }
        }
        if let Some(l) = &labels {
            if l.len() != dim {
                return Err(AlgebraError::DimensionMismatch { expected: dim, got: l.len() });
            }
        }
        Ok(Algebra { field, dim, ops, labels })
    }

    /// One-operation algebra from sparse structure constants.
    pub fn with_op<I>(field: FieldSpec, dim: usize, name: &str, entries: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (usize, usize, usize, Scalar)>,
    {
        let map = BilinearMap::from_entries(field, (dim, dim, dim), entries)?;
        Algebra::new(field, dim, vec![BilinearOp { name: name.to_string(), map }], None)
    }

    /// Two-operation algebra: product then bracket.
    pub fn with_product_and_bracket<I, J>(field: FieldSpec, dim: usize, product: I, bracket: J) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (usize, usize, usize, Scalar)>,
        J: IntoIterator<Item = (usize, usize, usize, Scalar)>,
    {
        let mul = BilinearMap::from_entries(field, (dim, dim, dim), product)?;
        let br = BilinearMap::from_entries(field, (dim, dim, dim), bracket)?;
        Algebra::new(
            field,
            dim,
            vec![BilinearOp { name: "mul".into(), map: mul }, BilinearOp { name: "bracket".into(), map: br }],
            None,
        )
    }

    pub fn abelian(field: FieldSpec, dim: usize, ops: usize) -> Self {
        let names = if ops == 1 { vec!["bracket"] } else { vec!["mul", "bracket"] };
        let ops = names
            .into_iter()
            .map(|n| BilinearOp { name: n.into(), map: BilinearMap::zeros(field, dim, dim, dim) })
            .collect();
        Algebra::new(field, dim, ops, None).expect("well-formed abelian algebra")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ops(&self) -> &[BilinearOp] {
        &self.ops
    }

    pub fn op(&self, index: usize) -> Result<&BilinearOp, AlgebraError> {
        self.ops.get(index).ok_or(AlgebraError::OpIndexOutOfRange { index, count: self.ops.len() })
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Option<Vec<String>>) -> Result<Self, AlgebraError> {
        if let Some(l) = &labels {
            if l.len() != self.dim {
                return Err(AlgebraError::DimensionMismatch { expected: self.dim, got: l.len() });
            }
        }
        self.labels = labels;
        Ok(self)
    }

    /// The same space with only operation `index` kept.
    pub fn single_op(&self, index: usize) -> Result<Algebra, AlgebraError> {
        let op = self.op(index)?.clone();
        Algebra::new(self.field, self.dim, vec![op], self.labels.clone())
    }

    /// Index of the product: always op 0.
    pub fn product_index(&self) -> usize {
        0
    }

    /// Index of the bracket: op 1 when present, else op 0.
    pub fn bracket_index(&self) -> usize {
        if self.ops.len() == 2 {
            1
        } else {
            0
        }
    }

    pub fn product(&self) -> &BilinearMap {
        &self.ops[self.product_index()].map
    }

    pub fn bracket(&self) -> &BilinearMap {
        &self.ops[self.bracket_index()].map
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim, i)
    }

    pub fn zero_vector(&self) -> Vector {
        zero_vector(self.field, self.dim)
    }

    pub fn multiply(&self, op_index: usize, x: &[Scalar], y: &[Scalar]) -> Result<Vector, AlgebraError> {
        let op = self.op(op_index)?;
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(AlgebraError::DimensionMismatch { expected: self.dim, got: v.len() });
            }
        }
        Ok(op.map.apply(x, y))
    }

    /// Exhaustive check of `tag`; the witness is the first failing basis
    /// tuple in lexicographic order.
    pub fn check_identity(&self, tag: IdentityTag) -> Result<IdentityReport, AlgebraError> {
        let n = self.dim;
        let report = match tag {
            IdentityTag::Associative => {
                let m = self.product();
                IdentityReport::from_search(tag.name(), associativity_defect(m, n))
            }
            IdentityTag::Commutative => {
                let m = self.product();
                IdentityReport::from_search(
                    tag.name(),
                    first_defect("commutative", pairs(n).filter(|t| t[0] < t[1]), |t| {
                        sub_vectors(m.get(t[0], t[1]), m.get(t[1], t[0]))
                    }),
                )
            }
            IdentityTag::Anticommutative => {
                IdentityReport::from_search(tag.name(), anticommutativity_defect(self.bracket(), n))
            }
            IdentityTag::LeibnizRight => {
                let b = self.bracket();
                IdentityReport::from_search(
                    tag.name(),
                    first_defect("leibniz_right", triples(n), |t| {
                        // [[x,y],z] - [[x,z],y] - [x,[y,z]]
                        let lhs = b.apply_left(b.get(t[0], t[1]), t[2]);
                        let r1 = b.apply_left(b.get(t[0], t[2]), t[1]);
                        let r2 = b.apply_right(t[0], b.get(t[1], t[2]));
                        sub_vectors(&sub_vectors(&lhs, &r1), &r2)
                    }),
                )
            }
            IdentityTag::Jacobi => IdentityReport::from_search(tag.name(), jacobi_defect(self.bracket(), n)),
            IdentityTag::Lie => {
                let b = self.bracket();
                let w = anticommutativity_defect(b, n).or_else(|| jacobi_defect(b, n));
                IdentityReport::from_search(tag.name(), w)
            }
            IdentityTag::Poisson => {
                if self.ops.len() != 2 {
                    return Err(AlgebraError::OpArityMismatch("poisson needs a product and a bracket".into()));
                }
                let m = self.product();
                let b = self.bracket();
                let w = associativity_defect(m, n)
                    .or_else(|| anticommutativity_defect(b, n))
                    .or_else(|| jacobi_defect(b, n))
                    .or_else(|| {
                        first_defect("poisson", triples(n), |t| {
                            // [p,qt] - [p,q]t - q[p,t]
                            let lhs = b.apply_right(t[0], m.get(t[1], t[2]));
                            let r1 = m.apply_left(b.get(t[0], t[1]), t[2]);
                            let r2 = m.apply_right(t[1], b.get(t[0], t[2]));
                            sub_vectors(&sub_vectors(&lhs, &r1), &r2)
                        })
                    });
                IdentityReport::from_search(tag.name(), w)
            }
            IdentityTag::Jordan => {
                let m = self.product();
                let comm = first_defect("commutative", pairs(n).filter(|t| t[0] < t[1]), |t| {
                    sub_vectors(m.get(t[0], t[1]), m.get(t[1], t[0]))
                });
                IdentityReport::from_search(tag.name(), comm.or_else(|| jordan_defect(m, n)))
            }
        };
        Ok(report)
    }

    pub fn satisfies(&self, tag: IdentityTag) -> bool {
        self.check_identity(tag).map(|r| r.holds).unwrap_or(false)
    }

    /// Span of all squares `[x,x]` of the bracket. Polarization gives the
    /// spanning set `[e_i,e_i]`, `[e_i,e_j] + [e_j,e_i]`, valid since 2 is invertible.
    pub fn leibniz_kernel(&self) -> Subspace {
        let b = self.bracket();
        let n = self.dim;
        let gens = pairs(n)
            .filter(|t| t[0] <= t[1])
            .map(|t| if t[0] == t[1] { b.get(t[0], t[0]).to_vec() } else { add_vectors(b.get(t[0], t[1]), b.get(t[1], t[0])) });
        Subspace::span(self.field, n, gens)
    }

    fn annihilated_by(&self, map: &BilinearMap, left: bool, right: bool) -> Subspace {
        let n = self.dim;
        let mut sys = LinearSystem::new(self.field, n);
        for j in 0..n {
            for k in 0..n {
                // x ∘ e_j and e_j ∘ x, coordinate k, as linear forms in x
                if left {
                    sys.push_dense((0..n).map(|i| map.entry(i, j, k).clone()).collect());
                }
                if right {
                    sys.push_dense((0..n).map(|i| map.entry(j, i, k).clone()).collect());
                }
            }
        }
        crate::linalg::nullspace(&sys)
    }

    pub fn centers(&self) -> Centers {
        let b = self.bracket();
        let left = self.annihilated_by(b, true, false);
        let right = self.annihilated_by(b, false, true);
        let center = self.annihilated_by(b, true, true);
        let left_is_subalgebra = self.is_closed(&left, self.bracket_index());
        Centers { left, right, center, left_is_subalgebra }
    }

    /// `{x : x·y = y·x = 0 for all y}` for the product.
    pub fn annihilator(&self) -> Subspace {
        self.annihilated_by(self.product(), true, true)
    }

    pub fn product_subspace(&self, op_index: usize) -> Result<Subspace, AlgebraError> {
        let m = &self.op(op_index)?.map;
        let n = self.dim;
        Ok(Subspace::span(self.field, n, pairs(n).map(|t| m.get(t[0], t[1]).to_vec())))
    }

    pub fn is_closed(&self, sub: &Subspace, op_index: usize) -> bool {
        let m = &self.ops[op_index].map;
        sub.basis().iter().all(|x| sub.basis().iter().all(|y| sub.contains(&m.apply(x, y))))
    }
}

fn associativity_defect(m: &BilinearMap, n: usize) -> Option<Witness> {
    first_defect("associative", triples(n), |t| {
        let lhs = m.apply_left(m.get(t[0], t[1]), t[2]);
        let rhs = m.apply_right(t[0], m.get(t[1], t[2]));
        sub_vectors(&lhs, &rhs)
    })
}

fn anticommutativity_defect(b: &BilinearMap, n: usize) -> Option<Witness> {
    first_defect("anticommutative", pairs(n).filter(|t| t[0] <= t[1]), |t| {
        if t[0] == t[1] {
            b.get(t[0], t[0]).to_vec()
        } else {
            add_vectors(b.get(t[0], t[1]), b.get(t[1], t[0]))
        }
    })
}

fn jacobi_defect(b: &BilinearMap, n: usize) -> Option<Witness> {
    first_defect("jacobi", triples(n), |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let a = b.apply_right(x, b.get(y, z));
        let c = b.apply_right(y, b.get(z, x));
        let d = b.apply_right(z, b.get(x, y));
        add_vectors(&add_vectors(&a, &c), &d)
    })
}

/// Coefficientwise form of `(xy)(xx) = x(y(xx))`: for each multiset
/// `{a,b,c}` of basis indices and each `y = e_l`, the sum of
/// `(x1 y)(x2 x3) - x1(y(x2 x3))` over the distinct orderings of `(a,b,c)`.
fn jordan_defect(m: &BilinearMap, n: usize) -> Option<Witness> {
    let field = m.field();
    let term = |a: usize, b: usize, c: usize, l: usize| -> Vector {
        let xy = m.get(a, l);
        let xx = m.get(b, c);
        let lhs = m.apply(xy, xx);
        let inner = m.apply_right(l, xx);
        let rhs = m.apply_right(a, &inner);
        sub_vectors(&lhs, &rhs)
    };
    let mut tuples = Vec::new();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                for l in 0..n {
                    tuples.push(vec![a, b, c, l]);
                }
            }
        }
    }
    first_defect("jordan", tuples, |t| {
        let mut perms = vec![[t[0], t[1], t[2]], [t[0], t[2], t[1]], [t[1], t[0], t[2]], [t[1], t[2], t[0]], [t[2], t[0], t[1]], [t[2], t[1], t[0]]];
        perms.sort();
        perms.dedup();
        let mut acc = zero_vector(field, n);
        for p in perms {
            acc = add_vectors(&acc, &term(p[0], p[1], p[2], t[3]));
        }
        acc
    })
}

/// Checks `f(x ∘_A y) = f(x) ∘_B f(y)` for every operation on all basis pairs.
pub fn is_homomorphism(f: &Matrix, a: &Algebra, b: &Algebra) -> Result<IdentityReport, AlgebraError> {
    if a.field != b.field || f.field() != a.field {
        return Err(AlgebraError::FieldMismatch(a.field, b.field));
    }
    if a.ops.len() != b.ops.len() {
        return Err(AlgebraError::OpArityMismatch(format!("{} operations vs {}", a.ops.len(), b.ops.len())));
    }
    if f.cols() != a.dim {
        return Err(AlgebraError::DimensionMismatch { expected: a.dim, got: f.cols() });
    }
    if f.rows() != b.dim {
        return Err(AlgebraError::DimensionMismatch { expected: b.dim, got: f.rows() });
    }
    let images: Vec<Vector> = (0..a.dim).map(|i| f.column(i)).collect();
    for (o, (oa, ob)) in a.ops.iter().zip(&b.ops).enumerate() {
        let w = first_defect(&oa.name, pairs(a.dim), |t| {
            let lhs = f.apply(oa.map.get(t[0], t[1]));
            let rhs = ob.map.apply(&images[t[0]], &images[t[1]]);
            sub_vectors(&lhs, &rhs)
        });
        if let Some(mut w) = w {
            w.indices.insert(0, o);
            return Ok(IdentityReport::fail("homomorphism", w));
        }
    }
    Ok(IdentityReport::pass("homomorphism"))
}
