use num_integer::Integer;

use crate::algebra::{Algebra, Violation, ViolationKind};
use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Scalar};

/// Default cap on the number of elements an exhaustive scan may visit.
pub const DEFAULT_ENUMERATION_BOUND: u128 = 1 << 20;

/// A finite ring whose additive group is `⊕ Z/m_i` on generators `g_i`, with
/// `g_i · g_j = Σ_k t_ijk g_k` and products reduced modulo `m_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    moduli: Vec<u64>,
    names: Vec<String>,
    one: Vec<u64>,
    /// Sparse row for each generator pair, indexed `i * k + j`.
    table: Vec<Vec<(usize, u64)>>,
}

impl FiniteRing {
    pub fn new(
        moduli: Vec<u64>,
        names: Vec<String>,
        one: Vec<i64>,
        entries: impl IntoIterator<Item = (usize, usize, usize, i64)>,
    ) -> Result<Self> {
        let k = moduli.len();
        if moduli.iter().any(|&m| m < 1) {
            return Err(Error::InvalidArgument("additive orders must be positive".into()));
        }
        if names.len() != k || one.len() != k {
            return Err(Error::DimensionMismatch(format!(
                "{} moduli, {} names, identity of length {}",
                k,
                names.len(),
                one.len()
            )));
        }
        let mut dense = vec![vec![0u64; k]; k * k];
        for (i, j, l, c) in entries {
            if i >= k || j >= k || l >= k {
                return Err(Error::InvalidArgument(format!(
                    "structure constant index ({i},{j},{l}) out of range for {k} generators"
                )));
            }
            let m = moduli[l];
            let slot = &mut dense[i * k + j][l];
            *slot = ((*slot as i128 + c as i128).rem_euclid(m as i128)) as u64;
        }
        let table =
            dense.into_iter().map(|row| row.into_iter().enumerate().filter(|&(_, c)| c != 0).collect()).collect();
        let one = one.iter().zip(&moduli).map(|(&x, &m)| (x as i128).rem_euclid(m as i128) as u64).collect();
        Ok(FiniteRing { moduli, names, one, table })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u128 {
        self.moduli.iter().map(|&m| m as u128).product()
    }

    /// Additive exponent: the lcm of the moduli.
    pub fn characteristic(&self) -> u64 {
        self.moduli.iter().fold(1, |acc, &m| acc.lcm(&m))
    }

    pub fn one(&self) -> Vec<u64> {
        self.one.clone()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    pub fn generator(&self, i: usize) -> Vec<u64> {
        let mut v = self.zero();
        v[i] = 1 % self.moduli[i];
        v
    }

    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, u64)> {
        let k = self.rank();
        self.table
            .iter()
            .enumerate()
            .flat_map(|(ij, row)| row.iter().map(move |&(l, c)| (ij / k, ij % k, l, c)))
            .collect()
    }

    pub fn generator_product(&self, i: usize, j: usize) -> Vec<u64> {
        let mut out = self.zero();
        for &(l, c) in &self.table[i * self.rank() + j] {
            out[l] = c;
        }
        out
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<u64> {
        v.iter().zip(&self.moduli).map(|(&x, &m)| (x as i128).rem_euclid(m as i128) as u64).collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.moduli).map(|((&x, &y), &m)| (x + y) % m).collect()
    }

    pub fn add_assign(&self, a: &mut [u64], b: &[u64]) {
        for ((x, &y), &m) in a.iter_mut().zip(b).zip(&self.moduli) {
            *x = (*x + y) % m;
        }
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.moduli).map(|(&x, &m)| (m - x) % m).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, s: u64, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.moduli).map(|(&x, &m)| ((s as u128 * x as u128) % m as u128) as u64).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let k = self.rank();
        let mut acc = vec![0u128; k];
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
                let xy = x as u128 * y as u128;
                for &(l, c) in &self.table[i * k + j] {
                    acc[l] = (acc[l] + xy % self.moduli[l] as u128 * c as u128) % self.moduli[l] as u128;
                }
            }
        }
        acc.into_iter().map(|x| x as u64).collect()
    }

    pub fn commutator(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    pub fn is_zero(a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn is_commutative(&self) -> bool {
        let k = self.rank();
        (0..k).all(|i| (i + 1..k).all(|j| self.table[i * k + j] == self.table[j * k + i]))
    }

    /// Associativity on generator triples, identity law on generators, and
    /// compatibility of each product with the additive orders of its factors.
    pub fn validate(&self) -> Vec<Violation> {
        let k = self.rank();
        let mut out = Vec::new();
        let diff = |x: &[u64], y: &[u64]| -> Option<Vec<String>> {
            (x != y).then(|| self.sub(x, y).iter().map(|d| d.to_string()).collect())
        };
        for i in 0..k {
            let g = self.generator(i);
            if let Some(d) = diff(&self.mul(&self.one, &g), &g) {
                out.push(Violation { kind: ViolationKind::LeftIdentity { i }, discrepancy: d });
            }
            if let Some(d) = diff(&self.mul(&g, &self.one), &g) {
                out.push(Violation { kind: ViolationKind::RightIdentity { i }, discrepancy: d });
            }
        }
        for i in 0..k {
            for j in 0..k {
                let p = self.generator_product(i, j);
                let m = self.moduli[i].gcd(&self.moduli[j]);
                let killed = self.scale(m, &p);
                if !Self::is_zero(&killed) {
                    out.push(Violation {
                        kind: ViolationKind::IllDefinedProduct { i, j },
                        discrepancy: killed.iter().map(|d| d.to_string()).collect(),
                    });
                }
                for l in 0..k {
                    let lhs = self.mul(&p, &self.generator(l));
                    let rhs = self.mul(&self.generator(i), &self.generator_product(j, l));
                    if let Some(d) = diff(&lhs, &rhs) {
                        out.push(Violation { kind: ViolationKind::Associativity { i, j, k: l }, discrepancy: d });
                    }
                }
            }
        }
        out
    }

    pub fn check_bound(&self, bound: u128) -> Result<()> {
        let order = self.order();
        if order > bound {
            return Err(Error::BoundExceeded { order, bound });
        }
        Ok(())
    }

    /// All elements in enumeration order, or a refusal when
    /// the ring has more than `bound` elements.
    pub fn enumerate(&self, bound: u128) -> Result<Elements<'_>> {
        self.check_bound(bound)?;
        Ok(Elements { moduli: &self.moduli, next: Some(self.zero()) })
    }

    /// The element at position `index` in enumeration order: coordinates are
    /// compared lexicographically from the last generator, so the first
    /// coordinate is the fastest-moving digit and `g_0` comes first.
    pub fn element_at(&self, mut index: u128) -> Vec<u64> {
        let mut v = self.zero();
        for (x, &m) in v.iter_mut().zip(&self.moduli) {
            *x = (index % m as u128) as u64;
            index /= m as u128;
        }
        v
    }

    pub fn index_of(&self, v: &[u64]) -> u128 {
        v.iter().zip(&self.moduli).rev().fold(0u128, |acc, (&x, &m)| acc * m as u128 + x as u128)
    }

    /// Generators whose additive order is divisible by `p`.
    pub fn p_generators(&self, p: u64) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.moduli[i].is_multiple_of(p)).collect()
    }

    /// `R / pR` as an algebra over `F_p`, on the images of the generators whose
    /// order is divisible by `p` (all other generators lie in `pR`).
    pub fn reduce_mod_p(&self, p: u64) -> Result<Algebra> {
        let field = FieldSpec::prime(p)?;
        let keep = self.p_generators(p);
        let pos = |g: usize| keep.iter().position(|&x| x == g);
        let names = keep.iter().map(|&g| self.names[g].clone()).collect();
        let one = keep.iter().map(|&g| field.from_i64((self.one[g] % p) as i64)).collect();
        let mut entries = Vec::new();
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                for &(l, c) in &self.table[i * self.rank() + j] {
                    if let Some(t) = pos(l) {
                        entries.push((a, b, t, field.from_i64((c % p) as i64)));
                    }
                }
            }
        }
        Algebra::new(field, names, one, entries)
    }

    /// Image of `x` in `R / pR`, in the coordinates of [`FiniteRing::reduce_mod_p`].
    pub fn project_mod_p(&self, x: &[u64], p: u64) -> Vec<Scalar> {
        let field = FieldSpec::PrimeField { p };
        self.p_generators(p).into_iter().map(|g| field.from_i64((x[g] % p) as i64)).collect()
    }
}

/// Odometer over `⊕ Z/m_i`.
pub struct Elements<'a> {
    moduli: &'a [u64],
    next: Option<Vec<u64>>,
}

impl Iterator for Elements<'_> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut wrapped = true;
        for (x, &m) in succ.iter_mut().zip(self.moduli) {
            *x += 1;
            if *x < m {
                wrapped = false;
                break;
            }
            *x = 0;
        }
        if !wrapped {
            self.next = Some(succ);
        }
        Some(current)
    }
}

impl Algebra {
    /// The same algebra viewed as a finite ring with additive group `(Z/p)^dim`.
    pub fn to_finite_ring(&self) -> Result<FiniteRing> {
        let p = match self.field() {
            FieldSpec::PrimeField { p } => p,
            FieldSpec::Rationals => {
                return Err(Error::InvalidArgument("an algebra over Q is not a finite ring".into()))
            }
        };
        let res = |s: &Scalar| s.residue().expect("prime field scalar") as i64;
        let entries: Vec<_> = self.structure_constants().iter().map(|(i, j, k, c)| (*i, *j, *k, res(c))).collect();
        FiniteRing::new(
            vec![p; self.dim()],
            self.basis_names().to_vec(),
            self.one().coords().iter().map(res).collect(),
            entries,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(m: u64) -> FiniteRing {
        FiniteRing::new(vec![m], vec!["1".into()], vec![1], vec![(0, 0, 0, 1)]).unwrap()
    }

    #[test]
    fn enumerate_z4() {
        let r = cyclic(4);
        let all: Vec<_> = r.enumerate(DEFAULT_ENUMERATION_BOUND).unwrap().collect();
        assert_eq!(all, vec![vec![0], vec![1], vec![2], vec![3]]);
        assert!(r.validate().is_empty());
        assert!(matches!(r.enumerate(3), Err(Error::BoundExceeded { order: 4, bound: 3 })));
    }

    #[test]
    fn enumeration_order_and_indexing() {
        let r = FiniteRing::new(
            vec![2, 3],
            vec!["a".into(), "b".into()],
            vec![1, 0],
            vec![(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)],
        )
        .unwrap();
        let all: Vec<_> = r.enumerate(100).unwrap().collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], vec![1, 0]);
        assert_eq!(all[2], vec![0, 1]);
        assert_eq!(all[3], vec![1, 1]);
        for (idx, v) in all.iter().enumerate() {
            assert_eq!(&r.element_at(idx as u128), v);
            assert_eq!(r.index_of(v), idx as u128);
        }
    }

    #[test]
    fn ill_defined_product_reported() {
        // g0 of order 2 with g0·g0 = g1 where g1 has order 4: 2·(g0 g0) = 2 g1 ≠ 0
        let r = FiniteRing::new(
            vec![2, 4],
            vec!["a".into(), "b".into()],
            vec![0, 1],
            vec![(0, 0, 1, 1), (1, 1, 1, 1), (0, 1, 0, 1), (1, 0, 0, 1)],
        )
        .unwrap();
        assert!(r.validate().iter().any(|v| v.kind == ViolationKind::IllDefinedProduct { i: 0, j: 0 }));
    }

    #[test]
    fn reduction_mod_p_of_z12() {
        let r = cyclic(12);
        let r2 = r.reduce_mod_p(2).unwrap();
        assert_eq!(r2.dim(), 1);
        assert!(r2.validate().is_empty());
        // Z/2 ⊕ Z/3 written on two generators: mod 3 only the second survives.
        let r = FiniteRing::new(vec![2, 3], vec!["e".into(), "f".into()], vec![1, 1], vec![(0, 0, 0, 1), (1, 1, 1, 1)])
            .unwrap();
        assert!(r.validate().is_empty());
        assert_eq!(r.reduce_mod_p(3).unwrap().dim(), 1);
        assert_eq!(r.characteristic(), 6);
    }
}
