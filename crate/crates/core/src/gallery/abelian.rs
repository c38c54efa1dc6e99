use std::fmt;
use std::str::FromStr;

use crate::algebra::FiniteRing;
use crate::error::{Error, Result};
use crate::exactlin::is_prime;

/// `⊕ Z/p^k` given by its cyclic summands `(p, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    summands: Vec<(u64, u32)>,
}

impl FiniteAbelianGroup {
    pub fn new(summands: Vec<(u64, u32)>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::InvalidArgument("at least one summand is required".into()));
        }
        for &(p, k) in &summands {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if k == 0 {
                return Err(Error::InvalidArgument(format!("exponent of {p} must be at least 1")));
            }
            if p.checked_pow(k).is_none() {
                return Err(Error::InvalidArgument(format!("{p}^{k} overflows")));
            }
        }
        Ok(FiniteAbelianGroup { summands })
    }

    pub fn summands(&self) -> &[(u64, u32)] {
        &self.summands
    }

    pub fn order(&self) -> u128 {
        self.summands.iter().map(|&(p, k)| p.pow(k) as u128).product()
    }

    /// Distinct primes, ascending.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.summands.iter().map(|&(p, _)| p).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// The `p`-component is cyclic for every `p`.
    pub fn components_cyclic(&self) -> bool {
        self.primes().iter().all(|&p| self.summands.iter().filter(|s| s.0 == p).count() == 1)
    }

    /// `|Hom(self, other)| = Π p^min(k, l)` over summand pairs with equal primes.
    pub fn hom_order(&self, other: &FiniteAbelianGroup) -> u128 {
        let mut order = 1u128;
        for &(p, k) in &self.summands {
            for &(q, l) in &other.summands {
                if p == q {
                    order = order.saturating_mul((p as u128).pow(k.min(l)));
                }
            }
        }
        order
    }

    /// Order of `End(self)`.
    pub fn endomorphism_order(&self) -> u128 {
        self.hom_order(self)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|(p, k)| format!("{p}:{k}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses `"p:k,p:k,…"`.
impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let summands = s
            .split(',')
            .map(|part| {
                let (p, k) = part
                    .trim()
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("summand {part:?} is not of the form p:k")))?;
                let p = p.trim().parse().map_err(|_| Error::Parse(format!("bad prime in {part:?}")))?;
                let k = k.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {part:?}")))?;
                Ok((p, k))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteAbelianGroup::new(summands)
    }
}

/// `End(A)` on the hom generators `a_ij : Z/p^kj → Z/p^ki`, `1 ↦ p^max(0, ki−kj)`,
/// of additive order `p^min(ki, kj)`; the product is composition
/// `(f·g)(x) = f(g(x))`. Refuses when `|A|` exceeds `bound`.
pub fn endomorphism_ring(group: &FiniteAbelianGroup, bound: u128) -> Result<FiniteRing> {
    if group.order() > bound {
        return Err(Error::BoundExceeded { order: group.order(), bound });
    }
    let s = group.summands();
    let pairs: Vec<(usize, usize)> =
        (0..s.len()).flat_map(|i| (0..s.len()).map(move |j| (i, j))).filter(|&(i, j)| s[i].0 == s[j].0).collect();
    let index = |i: usize, j: usize| pairs.iter().position(|&x| x == (i, j));
    let twist = |i: usize, j: usize| s[i].0.pow(s[i].1.saturating_sub(s[j].1));
    let moduli: Vec<u64> = pairs.iter().map(|&(i, j)| s[i].0.pow(s[i].1.min(s[j].1))).collect();
    let names = pairs.iter().map(|&(i, j)| format!("a{}_{}", i + 1, j + 1)).collect();
    let mut entries = Vec::new();
    for (x, &(i, l)) in pairs.iter().enumerate() {
        for (y, &(l2, j)) in pairs.iter().enumerate() {
            if l != l2 {
                continue;
            }
            let target = index(i, j).expect("equal primes compose");
            let c = twist(i, l) as u128 * twist(l, j) as u128 / twist(i, j) as u128;
            let c = (c % moduli[target] as u128) as i64;
            if c != 0 {
                entries.push((x, y, target, c));
            }
        }
    }
    let one = pairs.iter().map(|&(i, j)| i64::from(i == j)).collect();
    FiniteRing::new(moduli, names, one, entries)
}

/// All abelian groups of order `2..=max_order`, summands sorted by prime and
/// then by exponent.
pub fn abelian_groups_up_to(max_order: u64) -> Vec<FiniteAbelianGroup> {
    let mut out = Vec::new();
    for n in 2..=max_order {
        let mut shapes: Vec<Vec<(u64, u32)>> = vec![Vec::new()];
        let mut rest = n;
        let mut p = 2;
        while rest > 1 {
            let mut a = 0;
            while rest % p == 0 {
                rest /= p;
                a += 1;
            }
            if a > 0 {
                let mut next = Vec::new();
                for shape in &shapes {
                    for part in partitions(a, a) {
                        let mut s = shape.clone();
                        s.extend(part.into_iter().rev().map(|k| (p, k)));
                        next.push(s);
                    }
                }
                shapes = next;
            }
            p += 1;
        }
        out.extend(shapes.into_iter().map(|s| FiniteAbelianGroup::new(s).expect("valid shape")));
    }
    out
}

/// Partitions of `n` with parts at most `max`, parts non-increasing.
fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let g: FiniteAbelianGroup = "2:1, 2:2".parse().unwrap();
        assert_eq!(g.summands(), &[(2, 1), (2, 2)]);
        assert_eq!(g.to_string(), "2:1,2:2");
        assert_eq!(g.order(), 8);
        assert!("4:1".parse::<FiniteAbelianGroup>().is_err());
        assert!("2:0".parse::<FiniteAbelianGroup>().is_err());
        assert!("2-1".parse::<FiniteAbelianGroup>().is_err());
    }

    #[test]
    fn endomorphism_ring_orders() {
        let g: FiniteAbelianGroup = "2:1,2:2".parse().unwrap();
        let r = endomorphism_ring(&g, 1 << 20).unwrap();
        assert_eq!(r.order(), 32);
        assert!(r.validate().is_empty());
        assert!(!r.is_commutative());
        let r = endomorphism_ring(&"2:1,3:1".parse().unwrap(), 1 << 20).unwrap();
        assert_eq!(r.order(), 6);
        assert!(r.is_commutative());
        let r = endomorphism_ring(&"3:2".parse().unwrap(), 1 << 20).unwrap();
        assert_eq!(r.order(), 9);
        assert!(endomorphism_ring(&"2:5".parse().unwrap(), 16).is_err());
    }

    #[test]
    fn endomorphism_rings_validate() {
        for g in abelian_groups_up_to(32) {
            let r = endomorphism_ring(&g, 1 << 20).unwrap();
            assert!(r.validate().is_empty(), "{g}");
            assert_eq!(r.order(), g.endomorphism_order());
        }
    }

    #[test]
    fn group_counts() {
        // number of abelian groups of order n, n = 2..=16
        let expected = [1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5];
        let groups = abelian_groups_up_to(16);
        for (n, &count) in (2..=16).zip(&expected) {
            assert_eq!(groups.iter().filter(|g| g.order() == n as u128).count(), count, "order {n}");
        }
        assert_eq!(abelian_groups_up_to(64).iter().filter(|g| g.order() == 64).count(), 11);
    }
}
