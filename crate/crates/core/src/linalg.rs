//! Dense exact matrices, reduced row echelon bases and nullspaces.
//!
//! Every subspace is stored through its reduced row echelon basis, so two
//! subspaces are equal exactly when their stored bases are equal.

use serde::{Serialize, Serializer};

use crate::field::{FieldError, FieldSpec, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: FieldSpec, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: FieldSpec, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    debug_assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// A `rows × cols` matrix; as a linear map, column `j` is the image of `e_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Linear maps are matrices acting on coordinate columns.
pub type LinearMap = Matrix;

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * cols, "ragged matrix rows");
        Matrix { field, rows: r, cols, data }
    }

    /// Row-major data of length `rows * cols`.
    pub fn from_flat(field: FieldSpec, rows: usize, cols: usize, data: Vector) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { field, rows, cols, data }
    }

    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn as_flat(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "dimension mismatch applying matrix");
        let mut out = zero_vector(self.field, self.rows);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let m = self.get(r, c);
                if !m.is_zero() {
                    *o = &*o + &(m * x);
                }
            }
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch composing matrices");
        let cols: Vec<Vector> = (0..other.cols).map(|j| self.apply(&other.column(j))).collect();
        Matrix::from_columns(self.field, self.rows, &cols)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { data: add_vectors(&self.data, &other.data), ..self.clone() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { data: sub_vectors(&self.data, &other.data), ..self.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { data: scale_vector(c, &self.data), ..self.clone() }
    }

    pub fn neg(&self) -> Matrix {
        Matrix { data: self.data.iter().map(|x| -x).collect(), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn rank(&self) -> usize {
        Subspace::span(self.field, self.rows, (0..self.cols).map(|j| self.column(j))).dim()
    }

    pub fn kernel(&self) -> Subspace {
        let mut sys = LinearSystem::new(self.field, self.cols);
        for r in 0..self.rows {
            sys.push_dense(self.row(r).to_vec());
        }
        nullspace(&sys)
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(self.field, self.rows, (0..self.cols).map(|j| self.column(j)))
    }

    /// Some `c` with `self * c = v`, when `v` lies in the column space.
    pub fn solve(&self, v: &[Scalar]) -> Option<Vector> {
        // (c, 1) solves [A | -v] (c, t) = 0
        let mut sys = LinearSystem::new(self.field, self.cols + 1);
        for r in 0..self.rows {
            let mut row = self.row(r).to_vec();
            row.push(-&v[r]);
            sys.push_dense(row);
        }
        let ns = nullspace(&sys);
        ns.basis().iter().find(|b| !b[self.cols].is_zero()).map(|b| {
            let t = b[self.cols].inv().expect("nonzero");
            b[..self.cols].iter().map(|x| x * &t).collect()
        })
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|x| x.to_string()).collect()).collect()
    }

    pub fn parse_rows(field: FieldSpec, rows: &[Vec<String>], expected_cols: Option<usize>) -> Result<Matrix, FieldError> {
        let cols = expected_cols.unwrap_or_else(|| rows.first().map_or(0, Vec::len));
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(FieldError::ParseScalar { text: format!("row of length {}", row.len()), field });
            }
            for s in row {
                data.push(field.parse(s)?);
            }
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// Rows kept in reduced row echelon form, sorted by pivot column.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: FieldSpec,
    width: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: FieldSpec, width: usize) -> Self {
        Echelon { field, width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -&v[p];
                axpy(&mut v, &c, row);
            }
        }
        v
    }

    /// Adds `v`; returns false when `v` was already in the row space.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.width, "row width mismatch");
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        v = scale_vector(&inv, &v);
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = -&row[p];
                axpy(row, &c, &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Coordinates of `v` in the stored rows, if `v` is in their span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut recon = zero_vector(self.field, self.width);
        for (c, row) in coords.iter().zip(&self.rows) {
            axpy(&mut recon, c, row);
        }
        (recon.as_slice() == v).then_some(coords)
    }

    /// Basis of `{x : row · x = 0 for every stored row}`.
    pub fn solution_space(&self) -> Subspace {
        let free: Vec<usize> = (0..self.width).filter(|c| self.pivots.binary_search(c).is_err()).collect();
        let vectors = free.iter().map(|&f| {
            let mut v = unit_vector(self.field, self.width, f);
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = -&row[f];
            }
            v
        });
        Subspace::span(self.field, self.width, vectors)
    }
}

/// A subspace of `F^ambient` with canonical (reduced echelon) basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    echelon: Echelon,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.echelon.width == other.echelon.width && self.echelon.rows == other.echelon.rows
    }
}

impl Eq for Subspace {}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace { echelon: Echelon::new(field, ambient) }
    }

    pub fn whole(field: FieldSpec, ambient: usize) -> Self {
        Self::span(field, ambient, (0..ambient).map(|i| unit_vector(field, ambient, i)))
    }

    pub fn span<I: IntoIterator<Item = Vector>>(field: FieldSpec, ambient: usize, vectors: I) -> Self {
        let mut echelon = Echelon::new(field, ambient);
        for v in vectors {
            echelon.insert(&v);
        }
        Subspace { echelon }
    }

    pub fn field(&self) -> FieldSpec {
        self.echelon.field
    }

    pub fn ambient(&self) -> usize {
        self.echelon.width
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn basis(&self) -> &[Vector] {
        self.echelon.rows()
    }

    pub fn pivots(&self) -> &[usize] {
        self.echelon.pivots()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.echelon.contains(v)
    }

    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        self.echelon.coordinates(v)
    }

    /// Linear combination of the basis with the given coordinates.
    pub fn combine(&self, coords: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field(), self.ambient());
        for (c, b) in coords.iter().zip(self.basis()) {
            axpy(&mut out, c, b);
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    /// `{x : x · b = 0 for all basis vectors b}`.
    pub fn annihilator(&self) -> Subspace {
        self.echelon.solution_space()
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let mut sys = LinearSystem::new(self.field(), self.ambient());
        for r in self.annihilator().basis().iter().chain(other.annihilator().basis()) {
            sys.push_dense(r.clone());
        }
        nullspace(&sys)
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.basis().iter().map(|b| b.iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

/// A homogeneous system `S x = 0` with sparse rows.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    field: FieldSpec,
    unknowns: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl LinearSystem {
    pub fn new(field: FieldSpec, unknowns: usize) -> Self {
        LinearSystem { field, unknowns, rows: Vec::new() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn rows(&self) -> &[Vec<(usize, Scalar)>] {
        &self.rows
    }

    /// Adds a sparse row; entries with the same column are summed and zeros dropped.
    pub fn push_row<I: IntoIterator<Item = (usize, Scalar)>>(&mut self, entries: I) {
        let mut dense = zero_vector(self.field, self.unknowns);
        for (c, x) in entries {
            assert!(c < self.unknowns, "column {c} out of range");
            dense[c] = &dense[c] + &x;
        }
        self.push_dense(dense);
    }

    pub fn push_dense(&mut self, row: Vector) {
        assert_eq!(row.len(), self.unknowns, "row width mismatch");
        let sparse: Vec<(usize, Scalar)> =
            row.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        if !sparse.is_empty() {
            self.rows.push(sparse);
        }
    }
}

/// Canonical basis of `{x : S x = 0}`: elimination uses the fixed pivot order
/// of [`Echelon`], and the resulting basis is itself reduced.
pub fn nullspace(sys: &LinearSystem) -> Subspace {
    let mut ech = Echelon::new(sys.field, sys.unknowns);
    for row in &sys.rows {
        let mut dense = zero_vector(sys.field, sys.unknowns);
        for (c, x) in row {
            dense[*c] = x.clone();
        }
        ech.insert(&dense);
        if ech.rank() == sys.unknowns {
            break;
        }
    }
    ech.solution_space()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    fn v(field: FieldSpec, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| field.from_i64(x)).collect()
    }

    #[test]
    fn identity_system_has_trivial_nullspace() {
        let q = FieldSpec::Rationals;
        let mut sys = LinearSystem::new(q, 3);
        for i in 0..3 {
            sys.push_dense(unit_vector(q, 3, i));
        }
        assert_eq!(nullspace(&sys).dim(), 0);
    }

    #[test]
    fn zero_system_gives_standard_basis() {
        let q = FieldSpec::Rationals;
        let ns = nullspace(&LinearSystem::new(q, 2));
        assert_eq!(ns.basis(), &[v(q, &[1, 0]), v(q, &[0, 1])]);
    }

    #[test]
    fn single_equation_over_f3() {
        // x + y = 0 has solutions t(1, -1) = t(1, 2)
        let f = f3();
        let mut sys = LinearSystem::new(f, 2);
        sys.push_row([(0, f.one()), (1, f.one())]);
        let ns = nullspace(&sys);
        assert_eq!(ns.basis(), &[v(f, &[1, 2])]);
    }

    #[test]
    fn solve_and_coordinates() {
        let q = FieldSpec::Rationals;
        let m = Matrix::from_rows(q, 2, vec![v(q, &[1, 2]), v(q, &[3, 4]), v(q, &[5, 6])]);
        let target = m.apply(&v(q, &[7, -1]));
        assert_eq!(m.solve(&target), Some(v(q, &[7, -1])));
        assert_eq!(m.solve(&v(q, &[1, 0, 0])), None);
        let img = m.image();
        assert_eq!(img.dim(), 2);
        let c = img.coordinates(&target).unwrap();
        assert_eq!(img.combine(&c), target);
    }

    #[test]
    fn intersection_of_planes() {
        let q = FieldSpec::Rationals;
        let a = Subspace::span(q, 3, [v(q, &[1, 0, 0]), v(q, &[0, 1, 0])]);
        let b = Subspace::span(q, 3, [v(q, &[0, 1, 0]), v(q, &[0, 0, 1])]);
        assert_eq!(a.intersection(&b), Subspace::span(q, 3, [v(q, &[0, 1, 0])]));
    }

    #[test]
    fn zero_dimensional_ambient() {
        let q = FieldSpec::Rationals;
        let ns = nullspace(&LinearSystem::new(q, 0));
        assert_eq!(ns.dim(), 0);
        assert_eq!(Subspace::whole(q, 0), ns);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rows() -> impl Strategy<Value = Vec<Vec<i64>>> {
            (1usize..5).prop_flat_map(|w| proptest::collection::vec(proptest::collection::vec(-2i64..3, w), 0..5))
        }

        proptest! {
            #[test]
            fn nullspace_vectors_solve_system_and_rank_nullity(rs in rows()) {
                let f = FieldSpec::prime(5).unwrap();
                let w = rs.first().map_or(1, Vec::len);
                let mut sys = LinearSystem::new(f, w);
                for r in &rs {
                    sys.push_dense(v(f, r));
                }
                let ns = nullspace(&sys);
                for b in ns.basis() {
                    for r in &rs {
                        let dot = v(f, r).iter().zip(b).fold(f.zero(), |acc, (x, y)| &acc + &(x * y));
                        prop_assert!(dot.is_zero());
                    }
                }
                let rank = Subspace::span(f, w, rs.iter().map(|r| v(f, r))).dim();
                prop_assert_eq!(rank + ns.dim(), w);
            }

            #[test]
            fn span_is_order_independent(rs in rows()) {
                let f = FieldSpec::prime(7).unwrap();
                let w = rs.first().map_or(1, Vec::len);
                let a = Subspace::span(f, w, rs.iter().map(|r| v(f, r)));
                let b = Subspace::span(f, w, rs.iter().rev().map(|r| v(f, r)));
                prop_assert_eq!(a, b);
            }
        }
    }
}
