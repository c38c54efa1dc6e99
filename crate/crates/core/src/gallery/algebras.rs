use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{solve_linear, FieldSpec, Matrix, Scalar};

/// Exterior algebra on `n` generators.
///
/// Basis: wedge monomials by degree; within a degree lexicographic, except
/// that for `n = 3` the order is `1, e1, e2, e3, e1^e2, e2^e3, e1^e3, e1^e2^e3`.
pub fn grassmann(n: usize, field: FieldSpec) -> Result<Algebra> {
    if n > 10 {
        return Err(Error::InvalidArgument(format!("Grassmann algebra on {n} generators is too large")));
    }
    let monomials = grassmann_monomials(n);
    let index = |mask: u32| monomials.iter().position(|&m| m == mask).expect("monomial listed");
    let names = monomials
        .iter()
        .map(|&m| {
            if m == 0 {
                "1".to_string()
            } else {
                (0..n).filter(|i| m >> i & 1 == 1).map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("^")
            }
        })
        .collect();
    let mut entries = Vec::new();
    for (a, &s) in monomials.iter().enumerate() {
        for (b, &t) in monomials.iter().enumerate() {
            if s & t != 0 {
                continue;
            }
            // sign of moving each generator of t left past the larger generators of s
            let inversions: u32 = (0..n).filter(|i| t >> i & 1 == 1).map(|i| (s >> (i + 1)).count_ones()).sum();
            let c = if inversions.is_multiple_of(2) { field.one() } else { field.one().neg() };
            entries.push((a, b, index(s | t), c));
        }
    }
    let mut one = vec![field.zero(); monomials.len()];
    one[0] = field.one();
    Algebra::new(field, names, one, entries)
}

fn grassmann_monomials(n: usize) -> Vec<u32> {
    if n == 3 {
        return vec![0b000, 0b001, 0b010, 0b100, 0b011, 0b110, 0b101, 0b111];
    }
    let mut ms: Vec<u32> = (0..1u32 << n).collect();
    // bit i ↔ generator e_{i+1}; lexicographic on the sorted index lists
    let key = |m: u32| (m.count_ones(), (0..n as u32).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>());
    ms.sort_by_key(|&m| key(m));
    ms
}

/// Subalgebra of `d × d` matrices spanned by `mats`, which must contain the
/// identity and be closed under multiplication.
pub fn from_matrix_basis(field: FieldSpec, names: Vec<String>, mats: &[Matrix]) -> Result<Algebra> {
    let n = mats.len();
    let d = mats.first().map_or(0, |m| m.nrows());
    let flat = |m: &Matrix| -> Vec<Scalar> { m.rows().flat_map(|r| r.iter().cloned()).collect() };
    let columns: Vec<Vec<Scalar>> = mats.iter().map(flat).collect();
    let system_rows = (0..d * d).map(|e| columns.iter().map(|c| c[e].clone()).collect()).collect();
    let system = Matrix::from_rows(field, n, system_rows)?;
    let coords = |m: &Matrix| -> Result<Vec<Scalar>> {
        solve_linear(&system, &flat(m))?
            .ok_or_else(|| Error::InvalidArgument("matrix span is not closed under multiplication".into()))
    };
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in coords(&mats[i].mul(&mats[j])?)?.into_iter().enumerate() {
                if !c.is_zero() {
                    entries.push((i, j, k, c));
                }
            }
        }
    }
    let one = coords(&Matrix::identity(field, d))?;
    Algebra::new(field, names, one, entries)
}

/// The four algebras of upper-triangular 3 × 3 matrices with constant diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rank3Kind {
    K,
    R,
    S(Scalar),
    T,
}

fn unit(field: FieldSpec, d: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zero(field, d, d);
    m.set(i, j, field.one());
    m
}

fn add(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = a.clone();
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            out.set(i, j, a.get(i, j).add(b.get(i, j)));
        }
    }
    out
}

fn scaled(a: &Matrix, s: &Scalar) -> Matrix {
    let mut out = a.clone();
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            out.set(i, j, a.get(i, j).mul(s));
        }
    }
    out
}

/// `K`: basis `1, e13`. `R`: `1, e12, e13`. `S(k)`: `1, e12 + k e23, e13`.
/// `T`: `1, e12, e13, e23`. Here `eij` are 3 × 3 matrix units.
pub fn rank3_algebra(kind: &Rank3Kind, field: FieldSpec) -> Result<Algebra> {
    let e = |i, j| unit(field, 3, i, j);
    let id = Matrix::identity(field, 3);
    let (names, mats): (Vec<&str>, Vec<Matrix>) = match kind {
        Rank3Kind::K => (vec!["1", "e13"], vec![id, e(0, 2)]),
        Rank3Kind::R => (vec!["1", "e12", "e13"], vec![id, e(0, 1), e(0, 2)]),
        Rank3Kind::S(k) => {
            if k.field() != field {
                return Err(Error::MixedField { expected: field, found: k.field() });
            }
            if k.is_zero() {
                return Err(Error::InvalidArgument("S(k) requires k ≠ 0".into()));
            }
            (vec!["1", "u", "e13"], vec![id, add(&e(0, 1), &scaled(&e(1, 2), k)), e(0, 2)])
        }
        Rank3Kind::T => (vec!["1", "e12", "e13", "e23"], vec![id, e(0, 1), e(0, 2), e(1, 2)]),
    };
    from_matrix_basis(field, names.into_iter().map(String::from).collect(), &mats)
}

/// Full matrix algebra `Mat_n(F)` on the matrix units `e11, e12, …` (row-major).
pub fn matrix_algebra(n: usize, field: FieldSpec) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix algebra of size 0".into()));
    }
    let idx = |i: usize, j: usize| i * n + j;
    let names = (0..n * n).map(|x| format!("e{}{}", x / n + 1, x % n + 1)).collect();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                entries.push((idx(i, j), idx(j, k), idx(i, k), field.one()));
            }
        }
    }
    let mut one = vec![field.zero(); n * n];
    for i in 0..n {
        one[idx(i, i)] = field.one();
    }
    Algebra::new(field, names, one, entries)
}

/// Upper-triangular `n × n` matrices on the units `eij`, `i ≤ j`.
pub fn upper_triangular(n: usize, field: FieldSpec) -> Result<Algebra> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let names = pairs.iter().map(|(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
    let mats: Vec<Matrix> = pairs.iter().map(|&(i, j)| unit(field, n, i, j)).collect();
    from_matrix_basis(field, names, &mats)
}
