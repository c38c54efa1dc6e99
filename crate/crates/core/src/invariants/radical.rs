//! Jacobson radical of a finite-dimensional algebra.
//!
//! Characteristic 0: `J = {x : Tr L(x b_j) = 0 for all j}` (Dickson's criterion).
//!
//! Characteristic `p`: the iterated trace filtration
//! `I_{-1} = A`, `I_i = {x ∈ I_{i-1} : g_i(x b) = 0 ∀ b}` with
//! `g_i(z) = Tr(lift(L_z)^(p^i)) / p^i mod p`, computed on an integer lift of the
//! left regular representation. `g_i` is additive on `I_{i-1}` and
//! `J = I_l` with `l = ⌊log_p dim⌋`.

use rayon::prelude::*;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::exactlin::{left_kernel, FieldSpec, Matrix, Scalar, Subspace};

/// Radical with post-checks: every basis vector is nilpotent, the result is a
/// two-sided ideal, and the quotient has zero radical by the same method.
pub fn radical(alg: &Algebra) -> Result<Subspace> {
    let j = raw_radical(alg)?;
    post_check(alg, &j)?;
    Ok(j)
}

pub(crate) fn raw_radical(alg: &Algebra) -> Result<Subspace> {
    match alg.field() {
        FieldSpec::Rationals => Ok(trace_form_kernel(alg)),
        FieldSpec::PrimeField { p } => trace_filtration(alg, p),
    }
}

fn post_check(alg: &Algebra, j: &Subspace) -> Result<()> {
    let n = alg.dim();
    for v in j.basis_vectors() {
        let x = alg.element(v.to_vec())?;
        if !alg.pow(&x, n as u32 + 1)?.is_zero() {
            return Err(Error::RadicalCheckFailed(format!("basis vector {v:?} is not nilpotent")));
        }
        for i in 0..n {
            let b = alg.basis_element(i);
            if !j.contains_vector(alg.mul(&x, &b)?.coords()) || !j.contains_vector(alg.mul(&b, &x)?.coords()) {
                return Err(Error::RadicalCheckFailed("candidate radical is not a two-sided ideal".into()));
            }
        }
    }
    if !j.is_zero() {
        let q = alg.quotient(j)?;
        if !raw_radical(&q)?.is_zero() {
            return Err(Error::RadicalCheckFailed("quotient by the candidate radical is not semisimple".into()));
        }
    }
    Ok(())
}

/// `tr[t] = Tr(L_{b_t})`.
fn basis_traces(alg: &Algebra) -> Vec<Scalar> {
    let n = alg.dim();
    let field = alg.field();
    let mut tr = vec![field.zero(); n];
    for (t, i, k, c) in alg.structure_constants() {
        if i == k {
            tr[t] = tr[t].add(&c);
        }
    }
    tr
}

fn trace_form_kernel(alg: &Algebra) -> Subspace {
    let n = alg.dim();
    let field = alg.field();
    let tr = basis_traces(alg);
    let mut gram = Matrix::zero(field, n, n);
    for (k, j, t, c) in alg.structure_constants() {
        let v = gram.get(k, j).add(&c.mul(&tr[t]));
        gram.set(k, j, v);
    }
    left_kernel(&gram)
}

fn trace_filtration(alg: &Algebra, p: u64) -> Result<Subspace> {
    let n = alg.dim();
    let field = alg.field();
    let mut levels = 0u32;
    while (p as u128).pow(levels + 1) <= n as u128 {
        levels += 1;
    }
    let basis_left: Vec<IntMatrix> = (0..n).map(|t| IntMatrix::left_multiplication(alg, t, p)).collect();
    let mut current = Subspace::full(field, n);
    for i in 0..=levels {
        if current.is_zero() {
            break;
        }
        let modulus = p.pow(i + 1);
        let divisor = p.pow(i);
        let us: Vec<Element> = current.basis_vectors().map(|u| alg.element(u.to_vec())).collect::<Result<_>>()?;
        let g: Vec<Vec<Scalar>> = us
            .par_iter()
            .map(|u| {
                (0..n)
                    .map(|j| {
                        let z = alg.mul(u, &alg.basis_element(j))?;
                        let lifted = IntMatrix::combination(&basis_left, z.coords(), p);
                        let t = lifted.pow(divisor, modulus).trace();
                        if !t.is_multiple_of(divisor) {
                            return Err(Error::RadicalUndecided(format!(
                                "lifted trace {t} not divisible by {divisor} at level {i}"
                            )));
                        }
                        Ok(field.from_i64(((t / divisor) % p) as i64))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let gram = Matrix::from_rows(field, n, g)?;
        let lambdas = left_kernel(&gram);
        let next: Vec<Vec<Scalar>> = lambdas
            .basis_vectors()
            .map(|lambda| {
                let mut v = vec![field.zero(); n];
                for (l, u) in lambda.iter().zip(current.basis_vectors()) {
                    for (acc, x) in v.iter_mut().zip(u) {
                        *acc = acc.add(&l.mul(x));
                    }
                }
                v
            })
            .collect();
        current = Subspace::from_vectors(field, n, next)?;
    }
    Ok(current)
}

/// Dense square matrix of residues, row-major.
#[derive(Clone)]
struct IntMatrix {
    n: usize,
    data: Vec<u64>,
    modulus: u64,
}

/// Below this modulus a row-column dot product of length up to 4096 fits in a u64.
const SMALL_MODULUS: u64 = 1 << 26;

impl IntMatrix {
    /// Left multiplication by `b_t` on column vectors, entries in `[0, p)`.
    fn left_multiplication(alg: &Algebra, t: usize, p: u64) -> IntMatrix {
        let n = alg.dim();
        let mut data = vec![0u64; n * n];
        for col in 0..n {
            for (row, c) in alg.basis_product(t, col).iter().enumerate() {
                data[row * n + col] = c.residue().expect("prime field");
            }
        }
        IntMatrix { n, data, modulus: p }
    }

    /// Integer lift (entries in `[0, p)`) of `Σ z_t L_{b_t}` over `F_p`.
    fn combination(basis_left: &[IntMatrix], z: &[Scalar], p: u64) -> IntMatrix {
        let n = z.len();
        let mut data = vec![0u64; n * n];
        for (zt, lt) in z.iter().zip(basis_left) {
            let c = zt.residue().expect("prime field");
            if c == 0 {
                continue;
            }
            for (x, &y) in data.iter_mut().zip(&lt.data) {
                *x = ((*x as u128 + c as u128 * y as u128) % p as u128) as u64;
            }
        }
        IntMatrix { n, data, modulus: p }
    }

    fn identity(n: usize, modulus: u64) -> IntMatrix {
        let mut data = vec![0u64; n * n];
        for i in 0..n {
            data[i * n + i] = 1 % modulus;
        }
        IntMatrix { n, data, modulus }
    }

    fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let m = self.modulus;
        let mut data = vec![0u64; n * n];
        if m <= SMALL_MODULUS && n <= 4096 {
            let mut acc = vec![0u64; n];
            for i in 0..n {
                acc.iter_mut().for_each(|x| *x = 0);
                for k in 0..n {
                    let x = self.data[i * n + k];
                    if x == 0 {
                        continue;
                    }
                    let row = &other.data[k * n..(k + 1) * n];
                    for (a, &y) in acc.iter_mut().zip(row) {
                        *a += x * y;
                    }
                }
                for (d, a) in data[i * n..(i + 1) * n].iter_mut().zip(&acc) {
                    *d = a % m;
                }
            }
        } else {
            for i in 0..n {
                for k in 0..n {
                    let x = self.data[i * n + k] as u128;
                    if x == 0 {
                        continue;
                    }
                    for j in 0..n {
                        let d = &mut data[i * n + j];
                        *d = ((*d as u128 + x * other.data[k * n + j] as u128) % m as u128) as u64;
                    }
                }
            }
        }
        IntMatrix { n, data, modulus: m }
    }

    /// `self^e` with entries reduced modulo `modulus`.
    fn pow(&self, mut e: u64, modulus: u64) -> IntMatrix {
        let mut result = IntMatrix::identity(self.n, modulus);
        let mut base = IntMatrix { n: self.n, data: self.data.iter().map(|x| x % modulus).collect(), modulus };
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    fn trace(&self) -> u64 {
        (0..self.n)
            .fold(0u64, |acc, i| ((acc as u128 + self.data[i * self.n + i] as u128) % self.modulus as u128) as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// F_p[C_n] on basis g^0..g^(n-1).
    fn cyclic_group_algebra(field: FieldSpec, n: usize) -> Algebra {
        let names = (0..n).map(|i| format!("g{i}")).collect();
        let mut one = vec![field.zero(); n];
        one[0] = field.one();
        let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j, (i + j) % n, field.one())));
        Algebra::new(field, names, one, entries).unwrap()
    }

    #[test]
    fn f2_c2_radical_is_one_plus_g() {
        let f2 = FieldSpec::prime(2).unwrap();
        let j = radical(&cyclic_group_algebra(f2, 2)).unwrap();
        assert_eq!(j, Subspace::from_vectors(f2, 2, vec![vec![f2.one(), f2.one()]]).unwrap());
    }

    #[test]
    fn q_c2_is_semisimple() {
        assert!(radical(&cyclic_group_algebra(FieldSpec::Rationals, 2)).unwrap().is_zero());
    }

    #[test]
    fn f3_c3_and_f2_c4_are_local_with_codim_one_radical() {
        // F_p[C_{p^k}] ≅ F_p[t]/(t^{p^k}): radical of codimension 1.
        for (p, n) in [(3u64, 3usize), (2, 4), (2, 8), (3, 9)] {
            let f = FieldSpec::prime(p).unwrap();
            let j = radical(&cyclic_group_algebra(f, n)).unwrap();
            assert_eq!(j.dim(), n - 1, "F{p}[C{n}]");
        }
    }

    #[test]
    fn f2_c6_radical() {
        // F_2[C_6] ≅ F_2[C_2] ⊗ F_2[C_3]; F_2[C_3] is semisimple, so dim J = 3.
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(radical(&cyclic_group_algebra(f2, 6)).unwrap().dim(), 3);
    }

    #[test]
    fn large_prime_has_only_trace_level() {
        let f = FieldSpec::prime(1_000_000_007).unwrap();
        assert!(radical(&cyclic_group_algebra(f, 3)).unwrap().is_zero());
    }
}
