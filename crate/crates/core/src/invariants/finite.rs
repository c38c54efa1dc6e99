use std::collections::HashSet;

use rayon::prelude::*;

use crate::algebra::FiniteRing;
use crate::error::{Error, Result};
use crate::exactlin::{howell, is_prime, residue_kernel, ResidueModule, Subspace};
use crate::invariants::{field, radical as field_radical, LocalVerdict, Locality};

/// Distinct primes dividing the characteristic, ascending.
pub fn characteristic_primes(ring: &FiniteRing) -> Result<Vec<u64>> {
    let mut primes = Vec::new();
    for &m in ring.moduli() {
        let mut rest = m;
        let mut d = 2u64;
        while rest > 1 && d <= 1_000_000 && d * d <= rest {
            if rest % d == 0 {
                primes.push(d);
                while rest % d == 0 {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            if !is_prime(rest) {
                return Err(Error::InvalidArgument(format!("cannot factor additive order {m}")));
            }
            primes.push(rest);
        }
    }
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

fn to_i64(v: &[u64]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

/// Submodule generated by the given elements.
pub fn span(ring: &FiniteRing, elements: &[Vec<u64>]) -> Result<ResidueModule> {
    let gens: Vec<Vec<i64>> = elements.iter().map(|v| to_i64(v)).collect();
    howell(&gens, ring.moduli())
}

/// Kernel of the additive map `x ↦ (f(x, v))_v` where `f` is bilinear and `vs`
/// generate the second argument's range.
fn kernel_of_products(
    ring: &FiniteRing,
    vs: &[Vec<u64>],
    f: impl Fn(&[u64], &[u64]) -> Vec<u64>,
) -> Result<ResidueModule> {
    if vs.is_empty() {
        return ResidueModule::full(ring.moduli());
    }
    let codomain: Vec<u64> = vs.iter().flat_map(|_| ring.moduli().iter().copied()).collect();
    let images: Vec<Vec<u64>> = (0..ring.rank())
        .map(|i| {
            let g = ring.generator(i);
            vs.iter().flat_map(|v| f(&g, v)).collect()
        })
        .collect();
    residue_kernel(&images, ring.moduli(), &codomain)
}

fn generators(ring: &FiniteRing) -> Vec<Vec<u64>> {
    (0..ring.rank()).map(|i| ring.generator(i)).collect()
}

pub fn center(ring: &FiniteRing) -> Result<ResidueModule> {
    kernel_of_products(ring, &generators(ring), |x, g| ring.commutator(x, g))
}

/// `{x : x·s = 0 for all s ∈ S}`.
pub fn left_annihilator(ring: &FiniteRing, s: &ResidueModule) -> Result<ResidueModule> {
    kernel_of_products(ring, s.basis(), |x, v| ring.mul(x, v))
}

/// `{x : s·x = 0 for all s ∈ S}`.
pub fn right_annihilator(ring: &FiniteRing, s: &ResidueModule) -> Result<ResidueModule> {
    kernel_of_products(ring, s.basis(), |x, v| ring.mul(v, x))
}

/// Jacobson radical as the kernel of `R → ⊕_p (R/pR) / J(R/pR)`.
///
/// `pR` is a nilpotent ideal of the `p`-primary part, so `J(R)` is the
/// preimage of the radicals of the reductions.
pub fn radical(ring: &FiniteRing) -> Result<ResidueModule> {
    let mut codomain = Vec::new();
    let mut images: Vec<Vec<u64>> = vec![Vec::new(); ring.rank()];
    for p in characteristic_primes(ring)? {
        let reduced = ring.reduce_mod_p(p)?;
        let j = field_radical::radical(&reduced)?;
        let free = j.free_columns();
        codomain.extend(std::iter::repeat_n(p, free.len()));
        for (i, img) in images.iter_mut().enumerate() {
            let r = j.reduce(&ring.project_mod_p(&ring.generator(i), p));
            img.extend(free.iter().map(|&c| r[c].residue().expect("prime field")));
        }
    }
    if codomain.is_empty() {
        return ResidueModule::full(ring.moduli());
    }
    residue_kernel(&images, ring.moduli(), &codomain)
}

/// Every commutator of generators lies in `j`.
pub fn commutators_in(ring: &FiniteRing, j: &ResidueModule) -> bool {
    let k = ring.rank();
    (0..k).all(|a| (a + 1..k).all(|b| j.contains_vector(&ring.commutator(&ring.generator(a), &ring.generator(b)))))
}

pub fn locality(ring: &FiniteRing) -> Result<LocalVerdict> {
    let primes = characteristic_primes(ring)?;
    match primes.as_slice() {
        [] => Ok(LocalVerdict::new(Locality::No, "zero ring")),
        [p] => {
            let reduced = ring.reduce_mod_p(*p)?;
            let j = field_radical::radical(&reduced)?;
            field::locality(&reduced, &j)
        }
        _ => Ok(LocalVerdict::new(
            Locality::No,
            format!("characteristic {} is divisible by distinct primes {primes:?}, so R splits", ring.characteristic()),
        )),
    }
}

/// Central elements, found by scanning the whole ring.
pub fn exhaustive_center(ring: &FiniteRing, bound: u128) -> Result<Vec<Vec<u64>>> {
    ring.check_bound(bound)?;
    let gens = generators(ring);
    Ok((0..ring.order())
        .into_par_iter()
        .map(|i| ring.element_at(i))
        .filter(|x| gens.iter().all(|g| FiniteRing::is_zero(&ring.commutator(x, g))))
        .collect())
}

/// Unit flags indexed by enumeration position. `x` is a unit iff some power of
/// `x` equals one.
pub fn exhaustive_units(ring: &FiniteRing, bound: u128) -> Result<Vec<bool>> {
    ring.check_bound(bound)?;
    let one = ring.one();
    Ok((0..ring.order())
        .into_par_iter()
        .map(|i| {
            let x = ring.element_at(i);
            let mut seen = HashSet::new();
            let mut y = x.clone();
            loop {
                if y == one {
                    return true;
                }
                if !seen.insert(y.clone()) {
                    return false;
                }
                y = ring.mul(&y, &x);
            }
        })
        .collect())
}

/// `J(R) = {x : 1 − r·x is a unit for every r}`, by scan.
pub fn exhaustive_radical(ring: &FiniteRing, bound: u128) -> Result<ResidueModule> {
    let units = exhaustive_units(ring, bound)?;
    let one = ring.one();
    let members: Vec<Vec<u64>> = (0..ring.order())
        .into_par_iter()
        .filter(|&i| !units[i as usize])
        .map(|i| ring.element_at(i))
        .filter(|x| {
            (0..ring.order()).all(|ri| {
                let r = ring.element_at(ri);
                units[ring.index_of(&ring.sub(&one, &ring.mul(&r, x))) as usize]
            })
        })
        .collect();
    let mut j = ResidueModule::zero(ring.moduli())?;
    for x in members {
        if !j.contains_vector(&x) {
            j = j.sum(&span(ring, &[x])?)?;
        }
    }
    Ok(j)
}

/// Local iff the non-units are exactly `J(R)`, by scan.
pub fn exhaustive_locality(ring: &FiniteRing, bound: u128) -> Result<LocalVerdict> {
    let units = exhaustive_units(ring, bound)?;
    let j = exhaustive_radical(ring, bound)?;
    let outside = (0..ring.order()).find(|&i| !units[i as usize] && !j.contains_vector(&ring.element_at(i)));
    Ok(match outside {
        None => LocalVerdict::new(Locality::Yes, "every non-unit lies in J(R)"),
        Some(i) => LocalVerdict::new(Locality::No, format!("non-unit {:?} outside J(R)", ring.element_at(i))),
    })
}

/// `true` iff the field-coordinate subspace, read as residues, spans `m`.
pub fn same_as_subspace(ring: &FiniteRing, m: &ResidueModule, s: &Subspace) -> Result<bool> {
    let vs: Vec<Vec<u64>> =
        s.basis_vectors().map(|v| v.iter().map(|x| x.residue().expect("prime field")).collect()).collect();
    Ok(span(ring, &vs)? == *m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat2_f2() -> FiniteRing {
        // e11, e12, e21, e22
        let unit = |i: usize, j: usize| 2 * i + j;
        let mut entries = Vec::new();
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for c in 0..2 {
                entries.push((unit(a, b), unit(b, c), unit(a, c), 1));
            }
        }
        let names = ["e11", "e12", "e21", "e22"].map(String::from).to_vec();
        FiniteRing::new(vec![2; 4], names, vec![1, 0, 0, 1], entries).unwrap()
    }

    fn z_mod(n: u64) -> FiniteRing {
        FiniteRing::new(vec![n], vec!["1".into()], vec![1], [(0, 0, 0, 1)]).unwrap()
    }

    #[test]
    fn matrix_ring_is_simple() {
        let r = mat2_f2();
        assert!(radical(&r).unwrap().is_zero());
        assert!(exhaustive_radical(&r, 1 << 10).unwrap().is_zero());
        assert_eq!(center(&r).unwrap().order(), 2);
        assert_eq!(exhaustive_center(&r, 1 << 10).unwrap().len(), 2);
        assert_eq!(locality(&r).unwrap().status, Locality::No);
        assert_eq!(exhaustive_locality(&r, 1 << 10).unwrap().status, Locality::No);
    }

    #[test]
    fn cyclic_rings() {
        let r = z_mod(8);
        assert_eq!(radical(&r).unwrap().basis(), &[vec![2]]);
        assert_eq!(exhaustive_radical(&r, 64).unwrap(), radical(&r).unwrap());
        assert_eq!(locality(&r).unwrap().status, Locality::Yes);
        let r = z_mod(12);
        assert_eq!(radical(&r).unwrap().order(), 2);
        assert_eq!(exhaustive_radical(&r, 64).unwrap(), radical(&r).unwrap());
        assert_eq!(locality(&r).unwrap().status, Locality::No);
        assert_eq!(exhaustive_locality(&r, 64).unwrap().status, Locality::No);
    }

    #[test]
    fn units_of_z9() {
        let u = exhaustive_units(&z_mod(9), 64).unwrap();
        assert_eq!(u.iter().filter(|&&b| b).count(), 6);
    }

    #[test]
    fn socle_of_z8_is_4z8() {
        let r = z_mod(8);
        let s = left_annihilator(&r, &radical(&r).unwrap()).unwrap();
        assert_eq!(s.basis(), &[vec![4]]);
    }
}
