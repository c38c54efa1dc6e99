//! Submodules of `Z/m_1 ⊕ … ⊕ Z/m_k` in Howell normal form.
//!
//! Mixed moduli are handled by embedding `Z/m_c` into `Z/N` (with `N` the
//! lcm of the moduli) through multiplication by `N / m_c`. A submodule of the
//! direct sum maps injectively to a submodule of `(Z/N)^k`, where the Howell
//! form is unique, so the pulled-back basis is canonical as well.

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct ResidueModule {
    moduli: Vec<u64>,
    basis: Vec<Vec<u64>>,
    lcm: u64,
    /// Rows of the Howell basis inside `(Z/lcm)^k`.
    embedded: Vec<Vec<u64>>,
    /// `(column, pivot value)` per embedded row; each pivot divides `lcm`.
    pivots: Vec<(usize, u64)>,
}

impl PartialEq for ResidueModule {
    fn eq(&self, other: &Self) -> bool {
        self.moduli == other.moduli && self.basis == other.basis
    }
}

impl Eq for ResidueModule {}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn addmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

/// `a·x + b·y mod n` on whole rows.
fn combine(a: u64, x: &[u64], b: u64, y: &[u64], n: u64) -> Vec<u64> {
    x.iter().zip(y).map(|(&xi, &yi)| addmod(mulmod(a, xi, n), mulmod(b, yi, n), n)).collect()
}

fn scale(a: u64, x: &[u64], n: u64) -> Vec<u64> {
    x.iter().map(|&xi| mulmod(a, xi, n)).collect()
}

/// A unit `u` of `Z/n` with `u·a ≡ gcd(a, n) (mod n)`.
fn normalizing_unit(a: u64, n: u64) -> u64 {
    let g = a.gcd(&n);
    let w = a / g;
    let m = n / g;
    let u0 = if m == 1 { 1 } else { crate::exactlin::inv_mod(w % m, m).expect("w is a unit mod n/g") };
    (0..).map(|t| u0 + t * m).find(|u| u.gcd(&n) == 1).expect("a unit lifting exists")
}

fn howell_embedded(rows: Vec<Vec<u64>>, k: usize, n: u64) -> (Vec<Vec<u64>>, Vec<(usize, u64)>) {
    let mut work: Vec<Vec<u64>> = rows.into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut pivots = Vec::new();
    for c in 0..k {
        let (mut hit, rest): (Vec<_>, Vec<_>) = work.into_iter().partition(|r| r[c] != 0);
        work = rest;
        if hit.is_empty() {
            continue;
        }
        let mut pivot = hit.swap_remove(0);
        for r in hit {
            let (a, b) = (pivot[c] as i128, r[c] as i128);
            let e = a.extended_gcd(&b);
            let g = e.gcd;
            let to_mod = |v: i128| v.rem_euclid(n as i128) as u64;
            let new_pivot = combine(to_mod(e.x), &pivot, to_mod(e.y), &r, n);
            let new_r = combine(to_mod(b / g), &pivot, to_mod(-(a / g)), &r, n);
            debug_assert_eq!(new_r[c], 0);
            pivot = new_pivot;
            if new_r.iter().any(|&x| x != 0) {
                work.push(new_r);
            }
        }
        let u = normalizing_unit(pivot[c], n);
        pivot = scale(u, &pivot, n);
        let g = pivot[c];
        debug_assert_eq!(n % g, 0);
        let annihilated = scale(n / g, &pivot, n);
        if annihilated.iter().any(|&x| x != 0) {
            work.push(annihilated);
        }
        out.push(pivot);
        pivots.push((c, g));
    }
    // entries above each pivot reduced into [0, pivot)
    for i in 0..out.len() {
        let (c, g) = pivots[i];
        for h in 0..i {
            let q = out[h][c] / g;
            if q != 0 {
                let row_i = out[i].clone();
                out[h] = combine(1, &out[h], n - q % n, &row_i, n);
            }
        }
    }
    (out, pivots)
}

impl ResidueModule {
    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Canonical basis with entries reduced modulo the column moduli.
    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn zero(moduli: &[u64]) -> Result<Self> {
        howell(&[], moduli)
    }

    pub fn full(moduli: &[u64]) -> Result<Self> {
        let k = moduli.len();
        let gens: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
        howell(&gens, moduli)
    }

    /// Number of elements of the submodule.
    pub fn order(&self) -> u128 {
        self.pivots.iter().map(|&(_, g)| (self.lcm / g) as u128).product()
    }

    fn embed(&self, v: &[u64]) -> Vec<u64> {
        v.iter().zip(&self.moduli).map(|(&x, &m)| mulmod(x % m, self.lcm / m, self.lcm)).collect()
    }

    pub fn contains_vector(&self, v: &[u64]) -> bool {
        if v.len() != self.moduli.len() {
            return false;
        }
        let n = self.lcm;
        let mut w = self.embed(v);
        for (row, &(c, g)) in self.embedded.iter().zip(&self.pivots) {
            if !w[c].is_multiple_of(g) {
                return false;
            }
            let q = w[c] / g;
            if q != 0 {
                w = combine(1, &w, n - q, row, n);
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// `true` iff `other ⊆ self`.
    pub fn contains(&self, other: &ResidueModule) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.basis.iter().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &ResidueModule) -> Result<ResidueModule> {
        self.check_compatible(other)?;
        let gens: Vec<Vec<i64>> = self.basis.iter().chain(&other.basis).map(|r| to_i64(r)).collect();
        howell(&gens, &self.moduli)
    }

    /// Intersection via the Zassenhaus construction `[u | u]`, `[v | 0]`.
    pub fn intersect(&self, other: &ResidueModule) -> Result<ResidueModule> {
        self.check_compatible(other)?;
        let k = self.moduli.len();
        let doubled: Vec<u64> = self.moduli.iter().chain(&self.moduli).copied().collect();
        let mut gens = Vec::new();
        for u in &self.basis {
            gens.push(to_i64(&[u.as_slice(), u.as_slice()].concat()));
        }
        for v in &other.basis {
            gens.push(to_i64(&[v.as_slice(), &vec![0; k]].concat()));
        }
        let joint = howell(&gens, &doubled)?;
        let meet: Vec<Vec<i64>> = joint
            .basis
            .iter()
            .zip(&joint.pivots)
            .filter(|(_, &(c, _))| c >= k)
            .map(|(row, _)| to_i64(&row[k..]))
            .collect();
        howell(&meet, &self.moduli)
    }

    fn check_compatible(&self, other: &ResidueModule) -> Result<()> {
        if self.moduli != other.moduli {
            return Err(Error::DimensionMismatch(format!(
                "submodules of different ambient groups {:?} and {:?}",
                self.moduli, other.moduli
            )));
        }
        Ok(())
    }
}

fn to_i64(v: &[u64]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

/// Howell normal form of the submodule generated by `gens` inside `⊕ Z/moduli[c]`.
pub fn howell(gens: &[Vec<i64>], moduli: &[u64]) -> Result<ResidueModule> {
    if moduli.contains(&0) {
        return Err(Error::InvalidArgument("moduli must be positive".into()));
    }
    let k = moduli.len();
    let lcm = moduli.iter().try_fold(1u64, |acc, &m| {
        let l = (acc as u128 / acc.gcd(&m) as u128) * m as u128;
        (l < (1u128 << 62)).then_some(l as u64)
    });
    let lcm = lcm.ok_or_else(|| Error::InvalidArgument(format!("lcm of moduli {moduli:?} too large")))?;
    let mut rows = Vec::with_capacity(gens.len());
    for g in gens {
        if g.len() != k {
            return Err(Error::DimensionMismatch(format!("generator of length {} for {k} moduli", g.len())));
        }
        rows.push(
            g.iter()
                .zip(moduli)
                .map(|(&x, &m)| mulmod((x as i128).rem_euclid(m as i128) as u64, lcm / m, lcm))
                .collect(),
        );
    }
    let (embedded, pivots) = howell_embedded(rows, k, lcm);
    let basis = embedded.iter().map(|row| row.iter().zip(moduli).map(|(&x, &m)| x / (lcm / m)).collect()).collect();
    Ok(ResidueModule { moduli: moduli.to_vec(), basis, lcm, embedded, pivots })
}

/// Kernel of the additive map sending the `i`-th generator of `⊕ Z/domain[i]`
/// to `images[i] ∈ ⊕ Z/codomain[j]`.
///
/// Computed from the Howell form of the graph `{(φ(x), x)}` with the image
/// columns first; the rows whose image part vanishes span the kernel.
pub fn residue_kernel(images: &[Vec<u64>], domain: &[u64], codomain: &[u64]) -> Result<ResidueModule> {
    if images.len() != domain.len() {
        return Err(Error::DimensionMismatch(format!("{} images for {} generators", images.len(), domain.len())));
    }
    let r = codomain.len();
    let moduli: Vec<u64> = codomain.iter().chain(domain).copied().collect();
    let gens: Vec<Vec<i64>> = images
        .iter()
        .enumerate()
        .map(|(i, img)| {
            let mut row = to_i64(img);
            row.extend((0..domain.len()).map(|j| i64::from(i == j)));
            row
        })
        .collect();
    let graph = howell(&gens, &moduli)?;
    let kern: Vec<Vec<i64>> =
        graph.basis.iter().zip(&graph.pivots).filter(|(_, &(c, _))| c >= r).map(|(row, _)| to_i64(&row[r..])).collect();
    howell(&kern, domain)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(howell(&[vec![2]], &[4]).unwrap().basis(), &[vec![2]]);
        assert_eq!(howell(&[vec![2], vec![3]], &[4]).unwrap().basis(), &[vec![1]]);
        let m = howell(&[vec![2, 0], vec![0, 2]], &[4, 4]).unwrap();
        assert_eq!(m.basis(), &[vec![2, 0], vec![0, 2]]);
        assert_eq!(m.order(), 4);
    }

    #[test]
    fn howell_property_adds_hidden_rows() {
        // (2, 1) in (Z/4)^2 also generates 2·(2,1) = (0, 2).
        let m = howell(&[vec![2, 1]], &[4, 4]).unwrap();
        assert_eq!(m.basis(), &[vec![2, 1], vec![0, 2]]);
        assert!(m.contains_vector(&[0, 2]));
        assert!(!m.contains_vector(&[0, 1]));
        assert_eq!(m.order(), 4);
    }

    #[test]
    fn mixed_moduli() {
        // Z/2 ⊕ Z/4, generated by (1, 2): order 2, and (0, 2) is not a member.
        let m = howell(&[vec![1, 2]], &[2, 4]).unwrap();
        assert_eq!(m.order(), 2);
        assert!(m.contains_vector(&[1, 2]));
        assert!(!m.contains_vector(&[0, 2]));
        let full = ResidueModule::full(&[2, 4]).unwrap();
        assert_eq!(full.order(), 8);
        assert!(full.contains(&m).unwrap());
    }

    #[test]
    fn kernel_of_multiplication_by_two() {
        // x ↦ 2x on Z/8: kernel {0, 4}.
        let k = residue_kernel(&[vec![2]], &[8], &[8]).unwrap();
        assert_eq!(k.basis(), &[vec![4]]);
        // Z/4 → Z/2 reduction: kernel 2Z/4.
        let k = residue_kernel(&[vec![1]], &[4], &[2]).unwrap();
        assert_eq!(k.basis(), &[vec![2]]);
    }

    #[test]
    fn intersection() {
        let a = howell(&[vec![2, 0], vec![0, 1]], &[4, 4]).unwrap();
        let b = howell(&[vec![1, 1]], &[4, 4]).unwrap();
        let meet = a.intersect(&b).unwrap();
        // multiples t·(1,1) with t even
        assert_eq!(meet, howell(&[vec![2, 2]], &[4, 4]).unwrap());
    }
}
