use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Matrix, Scalar, Subspace};

/// A finite-dimensional associative unital algebra over a field, given by
/// structure constants `b_i · b_j = Σ_k c_ijk b_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    field: FieldSpec,
    names: Vec<String>,
    one: Vec<Scalar>,
    table: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
}

/// Coordinates of an algebra element with respect to the basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    coords: Vec<Scalar>,
}

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Element { coords }
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element::new(self.coords.iter().map(|a| a.mul(s)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationKind {
    /// `(b_i b_j) b_k ≠ b_i (b_j b_k)`.
    Associativity {
        i: usize,
        j: usize,
        k: usize,
    },
    LeftIdentity {
        i: usize,
    },
    RightIdentity {
        i: usize,
    },
    /// A product `g_i g_j` not annihilated by the additive orders of `g_i`, `g_j`.
    IllDefinedProduct {
        i: usize,
        j: usize,
    },
}

/// One failed axiom; `discrepancy` is the difference of the two sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    #[serde(flatten)]
    pub kind: ViolationKind,
    pub discrepancy: Vec<String>,
}

impl Algebra {
    /// Builds an algebra from sparse structure constants `(i, j, k, c)`.
    /// Repeated `(i, j, k)` entries are summed. Axioms are checked by [`Algebra::validate`].
    pub fn new(
        field: FieldSpec,
        names: Vec<String>,
        one: Vec<Scalar>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let n = names.len();
        if one.len() != n {
            return Err(Error::DimensionMismatch(format!("identity has {} coordinates, dim is {n}", one.len())));
        }
        if let Some(bad) = one.iter().find(|s| s.field() != field) {
            return Err(Error::MixedField { expected: field, found: bad.field() });
        }
        let mut dense: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
        for (i, j, k, c) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::InvalidArgument(format!(
                    "structure constant index ({i},{j},{k}) out of range for dim {n}"
                )));
            }
            if c.field() != field {
                return Err(Error::MixedField { expected: field, found: c.field() });
            }
            let slot = dense.entry((i, j)).or_default().entry(k).or_insert_with(|| field.zero());
            *slot = slot.add(&c);
        }
        let table = dense
            .into_iter()
            .filter_map(|(ij, row)| {
                let row: Vec<_> = row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                (!row.is_empty()).then_some((ij, row))
            })
            .collect();
        Ok(Algebra { field, names, one, table })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn one(&self) -> Element {
        Element::new(self.one.clone())
    }

    pub fn zero(&self) -> Element {
        Element::new(vec![self.field.zero(); self.dim()])
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut coords = vec![self.field.zero(); self.dim()];
        coords[i] = self.field.one();
        Element::new(coords)
    }

    /// Wraps coordinates after checking length and field.
    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element> {
        let e = Element::new(coords);
        self.check(&e)?;
        Ok(e)
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<Element> {
        self.element(coords.iter().map(|&x| self.field.from_i64(x)).collect())
    }

    /// Sorted sparse structure constants.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        self.table.iter().flat_map(|(&(i, j), row)| row.iter().map(move |(k, c)| (i, j, *k, c.clone()))).collect()
    }

    /// Dense coordinates of `b_i · b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        if let Some(row) = self.table.get(&(i, j)) {
            for (k, c) in row {
                out[*k] = c.clone();
            }
        }
        out
    }

    fn check(&self, a: &Element) -> Result<()> {
        if a.coords.len() != self.dim() {
            return Err(Error::ParentMismatch(format!(
                "{} coordinates for an algebra of dim {}",
                a.coords.len(),
                self.dim()
            )));
        }
        if let Some(bad) = a.coords.iter().find(|s| s.field() != self.field) {
            return Err(Error::ParentMismatch(format!(
                "scalar over {} in an algebra over {}",
                bad.field(),
                self.field
            )));
        }
        Ok(())
    }

    pub(crate) fn mul_coords(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                if let Some(row) = self.table.get(&(i, j)) {
                    let xy = x.mul(y);
                    for (k, c) in row {
                        out[*k] = out[*k].add(&xy.mul(c));
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(Element::new(self.mul_coords(&a.coords, &b.coords)))
    }

    /// `ab − ba`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(self.mul(a, b)?.sub(&self.mul(b, a)?))
    }

    pub fn pow(&self, a: &Element, e: u32) -> Result<Element> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// All failures of associativity on basis triples and of the identity law
    /// on basis elements. Empty iff the table defines a unital associative algebra.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.dim();
        let mut out = Vec::new();
        let diff = |x: &[Scalar], y: &[Scalar]| -> Option<Vec<String>> {
            (x != y).then(|| x.iter().zip(y).map(|(a, b)| a.sub(b).to_string()).collect())
        };
        for i in 0..n {
            let b = self.basis_element(i);
            let left = self.mul_coords(&self.one, &b.coords);
            if let Some(d) = diff(&left, &b.coords) {
                out.push(Violation { kind: ViolationKind::LeftIdentity { i }, discrepancy: d });
            }
            let right = self.mul_coords(&b.coords, &self.one);
            if let Some(d) = diff(&right, &b.coords) {
                out.push(Violation { kind: ViolationKind::RightIdentity { i }, discrepancy: d });
            }
        }
        let products: Vec<Vec<Scalar>> = (0..n * n).map(|ij| self.basis_product(ij / n, ij % n)).collect();
        for i in 0..n {
            for j in 0..n {
                let ij = &products[i * n + j];
                for k in 0..n {
                    let lhs = self.mul_coords(ij, &self.basis_element(k).coords);
                    let rhs = self.mul_coords(&self.basis_element(i).coords, &products[j * n + k]);
                    if let Some(d) = diff(&lhs, &rhs) {
                        out.push(Violation { kind: ViolationKind::Associativity { i, j, k }, discrepancy: d });
                    }
                }
            }
        }
        out
    }

    /// Matrix whose row `i` holds the coordinates of `x · b_i`.
    ///
    /// With this convention `M(xy) = M(y) · M(x)`.
    pub fn regular_representation(&self, x: &Element) -> Result<Matrix> {
        self.check(x)?;
        let rows = (0..self.dim()).map(|i| self.mul_coords(&x.coords, &self.basis_element(i).coords)).collect();
        Matrix::from_rows(self.field, self.dim(), rows)
    }

    /// Matrix of `v ↦ x · v` acting on column vectors.
    pub fn left_multiplication(&self, x: &Element) -> Result<Matrix> {
        Ok(self.regular_representation(x)?.transpose())
    }

    /// Smallest subspace containing `s` that is closed under right
    /// multiplication by every basis element.
    pub fn right_ideal_closure(&self, s: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        let mut current = s.clone();
        loop {
            let mut gens: Vec<Vec<Scalar>> = current.basis_vectors().map(|v| v.to_vec()).collect();
            for v in current.basis_vectors() {
                for j in 0..self.dim() {
                    gens.push(self.mul_coords(v, &self.basis_element(j).coords));
                }
            }
            let next = Subspace::from_vectors(self.field, self.dim(), gens)?;
            if next.dim() == current.dim() {
                return Ok(next);
            }
            current = next;
        }
    }

    pub(crate) fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim() || s.field() != self.field {
            return Err(Error::ParentMismatch(format!(
                "subspace of {}^{} in an algebra of dim {} over {}",
                s.field(),
                s.ambient_dim(),
                self.dim(),
                self.field
            )));
        }
        Ok(())
    }

    /// The quotient by a two-sided ideal, on the basis given by the free
    /// (non-pivot) coordinates of the ideal's echelon form.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Algebra> {
        self.check_subspace(ideal)?;
        let keep = ideal.free_columns();
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let r = ideal.reduce(v);
            keep.iter().map(|&c| r[c].clone()).collect()
        };
        let names = keep.iter().map(|&c| format!("[{}]", self.names[c])).collect();
        let one = project(&self.one);
        let mut entries = Vec::new();
        for (a, &ca) in keep.iter().enumerate() {
            for (b, &cb) in keep.iter().enumerate() {
                for (k, c) in project(&self.basis_product(ca, cb)).into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((a, b, k, c));
                    }
                }
            }
        }
        Algebra::new(self.field, names, one, entries)
    }

    /// The same algebra written in the basis whose `i`-th vector is row `i`
    /// of the invertible matrix `p` (old coordinates).
    pub fn change_basis(&self, p: &Matrix) -> Result<Algebra> {
        let n = self.dim();
        if p.nrows() != n || p.ncols() != n {
            return Err(Error::DimensionMismatch(format!("{}x{} basis change for dim {n}", p.nrows(), p.ncols())));
        }
        // new coordinates of an old-coordinate vector v solve y · p = v
        let pt = p.transpose();
        let to_new = |v: &[Scalar]| -> Result<Vec<Scalar>> {
            crate::exactlin::solve_linear(&pt, v)?
                .ok_or_else(|| Error::InvalidArgument("basis change matrix is singular".into()))
        };
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let prod = self.mul_coords(p.row(i), p.row(j));
                for (k, c) in to_new(&prod)?.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((i, j, k, c));
                    }
                }
            }
        }
        let names = (0..n).map(|i| format!("v{i}")).collect();
        Algebra::new(self.field, names, to_new(&self.one)?, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    /// Basis {1, b1, b2}, every product of b1, b2 zero.
    fn trivial_extension() -> Vec<(usize, usize, usize, Scalar)> {
        let mut e = Vec::new();
        for i in 0..3 {
            e.push((0, i, i, q().one()));
            if i > 0 {
                e.push((i, 0, i, q().one()));
            }
        }
        e
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("b{i}")).collect()
    }

    #[test]
    fn planted_associativity_defect_is_named() {
        let one = vec![q().one(), q().zero(), q().zero()];
        let good = Algebra::new(q(), names(3), one.clone(), trivial_extension()).unwrap();
        assert!(good.validate().is_empty());

        let mut entries = trivial_extension();
        entries.push((1, 2, 2, q().one()));
        let bad = Algebra::new(q(), names(3), one, entries).unwrap();
        let v = bad.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::Associativity { i: 1, j: 1, k: 2 });
        assert_eq!(v[0].discrepancy, vec!["0", "0", "-1"]);
    }

    #[test]
    fn identity_violation_detected() {
        let one = vec![q().zero(), q().one(), q().zero()];
        let a = Algebra::new(q(), names(3), one, trivial_extension()).unwrap();
        assert!(a.validate().iter().any(|v| matches!(v.kind, ViolationKind::LeftIdentity { .. })));
    }

    #[test]
    fn parent_mismatch() {
        let one = vec![q().one(), q().zero(), q().zero()];
        let a = Algebra::new(q(), names(3), one, trivial_extension()).unwrap();
        let short = Element::new(vec![q().one()]);
        assert!(matches!(a.mul(&short, &a.one()), Err(Error::ParentMismatch(_))));
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(a.element(vec![f2.one(), f2.zero(), f2.zero()]).is_err());
    }

    #[test]
    fn out_of_range_index_rejected() {
        let one = vec![q().one()];
        assert!(Algebra::new(q(), names(1), one, vec![(0, 0, 1, q().one())]).is_err());
    }
}
