use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Scalar};

/// Dense matrix of exact scalars over a single field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, cols, rows: vec![vec![field.zero(); cols]; rows] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.rows[i][i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows, rejecting ragged input and entries from another field.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        for row in &rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|s| s.field() != field) {
                return Err(Error::MixedField { expected: field, found: bad.field() });
            }
        }
        Ok(Matrix { field, cols, rows })
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Matrix::from_rows(field, cols, rows)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "scalar from another field");
        self.rows[r][c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.rows[r]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.rows.iter().map(|r| r.as_slice())
    }

    pub fn into_rows(self) -> Vec<Vec<Scalar>> {
        self.rows
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} pushed onto {} columns",
                row.len(),
                self.cols
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                t.rows[j][i] = x.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.nrows(),
                self.cols,
                other.nrows(),
                other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::MixedField { expected: self.field, found: other.field });
        }
        let mut out = Matrix::zero(self.field, self.nrows(), other.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.rows[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.rows[i][j] = out.rows[i][j].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Scalar::is_zero)
    }

    /// Reduces to reduced row-echelon form in place, drops zero rows and
    /// returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| !self.rows[i][c].is_zero()) else {
                continue;
            };
            self.rows.swap(r, p);
            let inv = self.rows[r][c].inv().expect("nonzero pivot");
            for x in self.rows[r].iter_mut().skip(c) {
                *x = x.mul(&inv);
            }
            let pivot_row = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.rows.truncate(r);
        pivots
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A linear subspace of `F^n` held as a reduced row-echelon basis.
///
/// The basis is canonical, so equal subspaces compare equal with `==`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::zero(field, 0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::identity(field, ambient_dim), pivots: (0..ambient_dim).collect() }
    }

    pub fn from_vectors(field: FieldSpec, ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        let m = Matrix::from_rows(field, ambient_dim, vectors)?;
        echelonize(&m, field)
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        self.basis.rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates that are not pivots; their unit vectors span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Canonical representative of `v` modulo this subspace (zero at every pivot).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &c) in self.basis.rows().zip(&self.pivots) {
            if out[c].is_zero() {
                continue;
            }
            let f = out[c].clone();
            for (x, y) in out.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient_dim && self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of a member `v` with respect to the echelon basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c].clone()).collect())
    }

    /// `true` iff `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.basis_vectors().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let rows = self.basis.rows.iter().chain(&other.basis.rows).cloned().collect();
        Subspace::from_vectors(self.field(), self.ambient_dim, rows)
    }

    /// Intersection by the Zassenhaus construction on `[u | u]`, `[v | 0]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let n = self.ambient_dim;
        let field = self.field();
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for u in self.basis_vectors() {
            rows.push(u.iter().chain(u).cloned().collect());
        }
        for v in other.basis_vectors() {
            rows.push(v.iter().cloned().chain(std::iter::repeat_n(field.zero(), n)).collect());
        }
        let mut m = Matrix::from_rows(field, 2 * n, rows)?;
        let pivots = m.rref();
        let meet = m.rows.into_iter().zip(pivots).filter(|&(_, p)| p >= n).map(|(row, _)| row[n..].to_vec()).collect();
        Subspace::from_vectors(field, n, meet)
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::MixedField { expected: self.field(), found: other.field() });
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}

/// Row space of `vectors` in canonical reduced row-echelon form.
pub fn echelonize(vectors: &Matrix, field: FieldSpec) -> Result<Subspace> {
    if vectors.field != field {
        return Err(Error::MixedField { expected: field, found: vectors.field });
    }
    if let Some(bad) = vectors.rows.iter().flatten().find(|s| s.field() != field) {
        return Err(Error::MixedField { expected: field, found: bad.field() });
    }
    let mut basis = vectors.clone();
    let pivots = basis.rref();
    Ok(Subspace { ambient_dim: vectors.cols, basis, pivots })
}

/// One solution of `A x = b`, or `None` when the system is inconsistent.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} equations",
            b.len(),
            a.nrows()
        )));
    }
    let field = a.field;
    let n = a.cols;
    let mut aug = a.clone();
    for (row, rhs) in aug.rows.iter_mut().zip(b) {
        if rhs.field() != field {
            return Err(Error::MixedField { expected: field, found: rhs.field() });
        }
        row.push(rhs.clone());
    }
    aug.cols += 1;
    let pivots = aug.rref();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); n];
    for (row, &c) in aug.rows.iter().zip(&pivots) {
        x[c] = row[n].clone();
    }
    Ok(Some(x))
}

/// `{x : A x = 0}` as a subspace of `F^cols`.
pub fn kernel(a: &Matrix) -> Subspace {
    let field = a.field;
    let n = a.cols;
    let mut r = a.clone();
    let pivots = r.rref();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (row, &c) in r.rows.iter().zip(&pivots) {
            v[c] = row[free].neg();
        }
        basis.push(v);
    }
    Subspace::from_vectors(field, n, basis).expect("kernel vectors share the field")
}

/// `{x : x A = 0}` as a subspace of `F^rows`.
pub fn left_kernel(a: &Matrix) -> Subspace {
    kernel(&a.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn echelon_examples() {
        let s = echelonize(&Matrix::from_i64(q(), &[&[2, 0], &[0, 3]]).unwrap(), q()).unwrap();
        assert_eq!(s, Subspace::full(q(), 2));

        let s = echelonize(&Matrix::from_i64(q(), &[&[1, 1], &[2, 2]]).unwrap(), q()).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), &Matrix::from_i64(q(), &[&[1, 1]]).unwrap());

        // mod 2: (1,1),(1,2)=(1,0) -> swap-free elimination gives the identity
        let f2 = FieldSpec::prime(2).unwrap();
        let s = echelonize(&Matrix::from_i64(f2, &[&[1, 1], &[1, 2]]).unwrap(), f2).unwrap();
        assert_eq!(s.basis(), &Matrix::from_i64(f2, &[&[1, 0], &[0, 1]]).unwrap());
    }

    #[test]
    fn mixed_field_rejected() {
        let f3 = FieldSpec::prime(3).unwrap();
        let rows = vec![vec![q().one(), f3.one()]];
        assert!(matches!(Matrix::from_rows(q(), 2, rows), Err(Error::MixedField { .. })));
        let m = Matrix::from_i64(q(), &[&[1]]).unwrap();
        assert!(echelonize(&m, f3).is_err());
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(q(), 3);
        let b: Vec<Scalar> = [4, -1, 7].iter().map(|&x| q().from_i64(x)).collect();
        assert_eq!(solve_linear(&id, &b).unwrap(), Some(b.clone()));

        let a = Matrix::from_i64(q(), &[&[1, 1], &[2, 2]]).unwrap();
        let b = vec![q().from_i64(1), q().from_i64(3)];
        assert_eq!(solve_linear(&a, &b).unwrap(), None);

        let f5 = FieldSpec::prime(5).unwrap();
        let a = Matrix::from_i64(f5, &[&[2]]).unwrap();
        let x = solve_linear(&a, &[f5.from_i64(3)]).unwrap().unwrap();
        assert_eq!(x, vec![f5.from_i64(4)]);

        assert!(solve_linear(&a, &[]).is_err());
    }

    #[test]
    fn intersect_and_contains() {
        let u = Subspace::from_vectors(q(), 2, vec![vec![q().one(), q().zero()]]).unwrap();
        let v = Subspace::from_vectors(q(), 2, vec![vec![q().zero(), q().one()]]).unwrap();
        assert!(u.intersect(&v).unwrap().is_zero());
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert!(u.contains(&Subspace::zero(q(), 2)).unwrap());
        let w = Subspace::from_vectors(q(), 2, vec![vec![q().one(), q().one()]]).unwrap();
        assert!(!u.contains(&w).unwrap());
        assert!(u.contains(&Subspace::zero(q(), 3)).is_err());
    }

    #[test]
    fn kernels() {
        let a = Matrix::from_i64(q(), &[&[1, 2, 3], &[2, 4, 6]]).unwrap();
        let k = kernel(&a);
        assert_eq!(k.dim(), 2);
        for v in k.basis_vectors() {
            let s = (0..3).fold(q().zero(), |acc, j| acc.add(&a.get(0, j).mul(&v[j])));
            assert!(s.is_zero());
        }
        let lk = left_kernel(&a);
        assert_eq!(lk.dim(), 1);
        let expected = vec![vec![q().one(), q().parse("-1/2").unwrap()]];
        assert_eq!(lk.basis(), &Matrix::from_rows(q(), 2, expected).unwrap());
    }
}
