use crate::algebra::{Algebra, Element};
use crate::error::Result;
use crate::exactlin::{kernel, left_kernel, FieldSpec, Matrix, Scalar, Subspace};
use crate::invariants::{LocalVerdict, Locality};

/// `{x : x b_i = b_i x ∀ i}`, the left kernel of the stacked commutator maps.
pub fn center(alg: &Algebra) -> Subspace {
    let n = alg.dim();
    let field = alg.field();
    let mut m = Matrix::zero(field, n, n * n);
    for k in 0..n {
        for i in 0..n {
            let a = alg.basis_product(k, i);
            let b = alg.basis_product(i, k);
            for (t, (x, y)) in a.iter().zip(&b).enumerate() {
                if x != y {
                    m.set(k, i * n + t, x.sub(y));
                }
            }
        }
    }
    left_kernel(&m)
}

/// `{x : x·g = 0 for every basis vector g of gens}`.
pub fn left_annihilator(alg: &Algebra, gens: &Subspace) -> Subspace {
    let n = alg.dim();
    let field = alg.field();
    let gs: Vec<&[Scalar]> = gens.basis_vectors().collect();
    if gs.is_empty() {
        return Subspace::full(field, n);
    }
    let mut m = Matrix::zero(field, n, n * gs.len());
    for k in 0..n {
        let bk = alg.basis_element(k);
        for (gi, g) in gs.iter().enumerate() {
            let prod = alg.mul_coords(bk.coords(), g);
            for (t, x) in prod.into_iter().enumerate() {
                if !x.is_zero() {
                    m.set(k, gi * n + t, x);
                }
            }
        }
    }
    left_kernel(&m)
}

/// Every commutator of basis elements lies in `radical`.
pub fn commutators_in(alg: &Algebra, radical: &Subspace) -> bool {
    let n = alg.dim();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let c: Vec<Scalar> =
                alg.basis_product(i, j).iter().zip(alg.basis_product(j, i)).map(|(a, b)| a.sub(&b)).collect();
            radical.contains_vector(&c)
        })
    })
}

fn singular(alg: &Algebra, x: &Element) -> Result<bool> {
    Ok(kernel(&alg.left_multiplication(x)?).dim() > 0)
}

/// Search small combinations of basis elements for a zero divisor.
fn find_zero_divisor(alg: &Algebra) -> Result<Option<Element>> {
    let n = alg.dim();
    let mut candidates: Vec<Element> = (0..n).map(|i| alg.basis_element(i)).collect();
    let one = alg.field().one();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (alg.basis_element(i), alg.basis_element(j));
            candidates.push(a.add(&b));
            candidates.push(a.sub(&b));
            candidates.push(a.add(&b.scale(&one.add(&one))));
        }
    }
    for c in candidates {
        if !c.is_zero() && singular(alg, &c)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn describe(alg: &Algebra, x: &Element) -> String {
    let terms: Vec<String> = x
        .coords()
        .iter()
        .zip(alg.basis_names())
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, name)| if c.is_one() { name.clone() } else { format!("{c}*{name}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Locality of `alg` given its radical, decided on the semisimple quotient.
pub fn locality(alg: &Algebra, radical: &Subspace) -> Result<LocalVerdict> {
    let quotient = alg.quotient(radical)?;
    let d = quotient.dim();
    if d == 1 {
        return Ok(LocalVerdict::new(Locality::Yes, "R/J is one-dimensional over the base field"));
    }
    if d == 0 {
        return Ok(LocalVerdict::new(Locality::No, "zero ring"));
    }
    if let FieldSpec::PrimeField { p } = alg.field() {
        if !quotient.is_commutative() {
            let why = match find_zero_divisor(&quotient)? {
                Some(z) => format!("R/J is noncommutative; zero divisor {} in R/J", describe(&quotient, &z)),
                None => "R/J is a noncommutative finite semisimple algebra, hence not a division ring".into(),
            };
            return Ok(LocalVerdict::new(Locality::No, why));
        }
        // Commutative semisimple over F_p: a field iff the Frobenius-fixed
        // subalgebra {x : x^p = x} is one-dimensional.
        let fixed = frobenius_fixed(&quotient, p)?;
        if fixed.dim() == 1 {
            return Ok(LocalVerdict::new(Locality::Yes, format!("R/J is a field of order {p}^{d}")));
        }
        let idem = nontrivial_idempotent(&quotient, &fixed, p)?;
        let why = match idem {
            Some(e) => format!("nontrivial idempotent {} in R/J", describe(&quotient, &e)),
            None => format!("R/J splits into {} fields", fixed.dim()),
        };
        return Ok(LocalVerdict::new(Locality::No, why));
    }
    if let Some(z) = find_zero_divisor(&quotient)? {
        return Ok(LocalVerdict::new(Locality::No, format!("zero divisor {} in R/J", describe(&quotient, &z))));
    }
    Ok(LocalVerdict::new(
        Locality::Unknown,
        format!("R/J has dimension {d} over Q and no small zero divisor was found"),
    ))
}

fn pow_big(alg: &Algebra, x: &Element, mut e: u64) -> Result<Element> {
    let mut result = alg.one();
    let mut base = x.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = alg.mul(&result, &base)?;
        }
        base = alg.mul(&base, &base)?;
        e >>= 1;
    }
    Ok(result)
}

fn frobenius_fixed(q: &Algebra, p: u64) -> Result<Subspace> {
    let n = q.dim();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let b = q.basis_element(i);
        rows.push(pow_big(q, &b, p)?.sub(&b).into_coords());
    }
    Ok(left_kernel(&Matrix::from_rows(q.field(), n, rows)?))
}

fn nontrivial_idempotent(q: &Algebra, fixed: &Subspace, p: u64) -> Result<Option<Element>> {
    let one = q.one();
    for v in fixed.basis_vectors() {
        let e = q.element(v.to_vec())?;
        for c in 0..p.min(1 << 16) {
            let shifted = e.sub(&one.scale(&q.field().from_i64(c as i64)));
            let f = pow_big(q, &shifted, p - 1)?;
            if !f.is_zero() && f != one {
                return Ok(Some(f));
            }
        }
    }
    Ok(None)
}
