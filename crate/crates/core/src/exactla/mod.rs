//! Exact linear algebra: row reduction, kernels, linear solving and subspaces kept in
//! reduced row-echelon form so that equality of subspaces is a plain comparison.

mod scalar;

pub use scalar::{FieldSpec, Scalar};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("malformed scalar literal `{0}`")]
    BadScalar(String),
    #[error("subspaces over different fields")]
    FieldMismatch,
}

fn check_len(expected: usize, found: usize) -> Result<(), LinAlgError> {
    if expected == found {
        Ok(())
    } else {
        Err(LinAlgError::DimensionMismatch { expected, found })
    }
}

/// In-place reduced row-echelon form. Zero rows are dropped; returns pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r][col..].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A dense matrix describing a linear map `K^cols -> K^rows`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl LinMap {
    pub fn new(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Result<Self, LinAlgError> {
        check_len(rows * cols, entries.len())?;
        Ok(LinMap { field, rows, cols, entries })
    }

    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        LinMap { field, rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    /// Builds a map from its columns (images of the standard basis vectors).
    pub fn from_columns(
        field: FieldSpec,
        rows: usize,
        columns: &[Vec<Scalar>],
    ) -> Result<Self, LinAlgError> {
        let cols = columns.len();
        let mut m = Self::zero(field, rows, cols);
        for (j, c) in columns.iter().enumerate() {
            check_len(rows, c.len())?;
            for (i, x) in c.iter().enumerate() {
                m.entries[i * cols + j] = x.clone();
            }
        }
        Ok(m)
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinAlgError> {
        check_len(self.cols, v.len())?;
        Ok((0..self.rows)
            .map(|i| dot(self.field, self.row(i), v))
            .collect())
    }

    /// Matrix product `self * rhs`, i.e. first `rhs`, then `self`.
    pub fn compose(&self, rhs: &LinMap) -> Result<LinMap, LinAlgError> {
        check_len(self.cols, rhs.rows)?;
        let columns: Vec<Vec<Scalar>> = (0..rhs.cols)
            .map(|j| self.apply(&rhs.column(j)))
            .collect::<Result<_, _>>()?;
        LinMap::from_columns(self.field, self.rows, &columns)
    }

    fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vectors();
        rref(&mut rows, self.cols).len()
    }

    /// `{v : self * v = 0}` in canonical form.
    pub fn kernel(&self) -> Subspace {
        let mut rows = self.row_vectors();
        let pivots = rref(&mut rows, self.cols);
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = -&row[free];
            }
            basis.push(v);
        }
        Subspace::canonicalize(self.field, basis, self.cols).expect("kernel vectors have ambient length")
    }

    /// Column space in canonical form.
    pub fn image(&self) -> Subspace {
        let columns: Vec<Vec<Scalar>> = (0..self.cols).map(|j| self.column(j)).collect();
        Subspace::canonicalize(self.field, columns, self.rows).expect("columns have row length")
    }

    /// Some `x` with `self * x = target`, or `None` when the system is inconsistent.
    pub fn solve(&self, target: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinAlgError> {
        check_len(self.rows, target.len())?;
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(target[i].clone());
                r
            })
            .collect();
        let pivots = rref(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &p) in rows.iter().zip(&pivots) {
            x[p] = row[self.cols].clone();
        }
        Ok(Some(x))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

pub(crate) fn dot(field: FieldSpec, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

pub(crate) fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = &*yi + &(a * xi);
        }
    }
}

pub(crate) fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// A subspace of `K^ambient_dim`, stored by its reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn canonicalize(
        field: FieldSpec,
        vectors: Vec<Vec<Scalar>>,
        ambient_dim: usize,
    ) -> Result<Self, LinAlgError> {
        for v in &vectors {
            check_len(ambient_dim, v.len())?;
        }
        let mut rows = vectors;
        let pivots = rref(&mut rows, ambient_dim);
        Ok(Subspace { field, ambient_dim, basis: rows, pivots })
    }

    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace { field, ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| unit(field, ambient_dim, i))
            .collect();
        Subspace { field, ambient_dim, basis, pivots: (0..ambient_dim).collect() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The canonical representative of `v` modulo this subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinAlgError> {
        check_len(self.ambient_dim, v.len())?;
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if !c.is_zero() {
                axpy(&mut r, &-&c, row);
            }
        }
        Ok(r)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinAlgError> {
        Ok(is_zero_vec(&self.reduce(v)?))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        self.check_compatible(other)?;
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), LinAlgError> {
        if self.field != other.field {
            return Err(LinAlgError::FieldMismatch);
        }
        check_len(self.ambient_dim, other.ambient_dim)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_compatible(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::canonicalize(self.field, vs, self.ambient_dim)
    }

    /// Adds vectors to the span.
    pub fn extend(&self, vectors: impl IntoIterator<Item = Vec<Scalar>>) -> Result<Subspace, LinAlgError> {
        let mut vs = self.basis.clone();
        vs.extend(vectors);
        Subspace::canonicalize(self.field, vs, self.ambient_dim)
    }

    /// Intersection via the kernel of `[A | -B]` on stacked coefficient vectors.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_compatible(other)?;
        let (ra, rb) = (self.dim(), other.dim());
        let mut columns: Vec<Vec<Scalar>> = self.basis.clone();
        columns.extend(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()));
        let stacked = LinMap::from_columns(self.field, self.ambient_dim, &columns)?;
        let coeffs = stacked.kernel();
        let mut out = Vec::new();
        for c in coeffs.basis() {
            let mut v = vec![self.field.zero(); self.ambient_dim];
            for (a, row) in c[..ra].iter().zip(&self.basis) {
                axpy(&mut v, a, row);
            }
            out.push(v);
        }
        debug_assert_eq!(coeffs.ambient_dim(), ra + rb);
        Subspace::canonicalize(self.field, out, self.ambient_dim)
    }

    /// Image of this subspace under `map`.
    pub fn map(&self, map: &LinMap) -> Result<Subspace, LinAlgError> {
        check_len(map.cols(), self.ambient_dim)?;
        let images = self
            .basis
            .iter()
            .map(|v| map.apply(v))
            .collect::<Result<Vec<_>, _>>()?;
        Subspace::canonicalize(self.field, images, map.rows())
    }
}

pub fn unit(field: FieldSpec, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rational;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Q.from_i64(x)).collect()
    }

    fn m(rows: usize, cols: usize, xs: &[i64]) -> LinMap {
        LinMap::new(Q, rows, cols, v(xs)).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let z = Subspace::canonicalize(Q, vec![], 3).unwrap();
        assert_eq!(z.dim(), 0);
        let s = Subspace::canonicalize(Q, vec![v(&[1, 1, 0]), v(&[0, 1, 0]), v(&[1, 0, 0])], 3).unwrap();
        assert_eq!(s.basis(), &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let t = Subspace::canonicalize(Q, vec![v(&[2, 0])], 2).unwrap();
        assert_eq!(t.basis(), &[v(&[1, 0])]);
        assert!(Subspace::canonicalize(Q, vec![v(&[1, 0])], 3).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(m(2, 2, &[0, 0, 0, 0]).kernel(), Subspace::full(Q, 2));
        assert_eq!(LinMap::identity(Q, 3).kernel().dim(), 0);
        let k = m(2, 2, &[1, 1, 0, 0]).kernel();
        assert_eq!(k, Subspace::canonicalize(Q, vec![v(&[1, -1])], 2).unwrap());
    }

    #[test]
    fn solve_examples() {
        let t = v(&[4, -2, 7]);
        assert_eq!(LinMap::identity(Q, 3).solve(&t).unwrap(), Some(t.clone()));
        assert_eq!(LinMap::zero(Q, 3, 3).solve(&t).unwrap(), None);
        let a = m(1, 2, &[1, 1]);
        let x = a.solve(&v(&[3])).unwrap().unwrap();
        assert_eq!(a.apply(&x).unwrap(), v(&[3]));
        assert!(a.solve(&v(&[1, 2])).is_err());
    }

    #[test]
    fn subspace_ops() {
        let line_x = Subspace::canonicalize(Q, vec![v(&[1, 0])], 2).unwrap();
        let line_y = Subspace::canonicalize(Q, vec![v(&[0, 1])], 2).unwrap();
        assert_eq!(line_x.sum(&Subspace::zero(Q, 2)).unwrap(), line_x);
        assert!(line_x.intersect(&line_y).unwrap().is_zero());
        assert!(line_x.sum(&line_y).unwrap().contains_subspace(&line_x).unwrap());
        assert!(line_x.intersect(&Subspace::zero(Q, 3)).is_err());
    }
}
