use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::FieldSpec;

/// A finite group given by its Cayley table: `table[a][b]` is the index of `a·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    names: Vec<String>,
    identity: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteGroupTable {
    /// Builds and validates a group table.
    pub fn new(names: Vec<String>, identity: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let g = FiniteGroupTable { names, identity, table };
        g.validate()?;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Closure, identity, inverses and associativity.
    pub fn validate(&self) -> Result<()> {
        let n = self.order();
        if n == 0 || self.identity >= n {
            return Err(Error::InvalidArgument("group needs an identity element".into()));
        }
        if self.table.len() != n || self.table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidArgument(format!("Cayley table is not closed over {n} elements")));
        }
        let e = self.identity;
        for a in 0..n {
            if self.table[e][a] != a || self.table[a][e] != a {
                return Err(Error::InvalidArgument(format!(
                    "{} is not an identity for {}",
                    self.names[e], self.names[a]
                )));
            }
            if !(0..n).any(|b| self.table[a][b] == e) {
                return Err(Error::InvalidArgument(format!("{} has no inverse", self.names[a])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Err(Error::InvalidArgument(format!(
                            "associativity fails on ({}, {}, {})",
                            self.names[a], self.names[b], self.names[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `{±1, ±i, ±j, ±k}` with `i² = j² = k² = ijk = −1`.
pub fn quaternion_group() -> FiniteGroupTable {
    // Element index 2u + s: unit u ∈ {1, i, j, k}, sign s (0 for +, 1 for −).
    const UNITS: [&str; 4] = ["1", "i", "j", "k"];
    // unit products as (sign, unit)
    let unit_mul = |u: usize, v: usize| -> (usize, usize) {
        match (u, v) {
            (0, v) => (0, v),
            (u, 0) => (0, u),
            (u, v) if u == v => (1, 0),
            (1, 2) => (0, 3),
            (2, 3) => (0, 1),
            (3, 1) => (0, 2),
            (2, 1) => (1, 3),
            (3, 2) => (1, 1),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    let names = (0..8).map(|x| format!("{}{}", if x % 2 == 0 { "" } else { "-" }, UNITS[x / 2])).collect();
    let table = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (s, w) = unit_mul(a / 2, b / 2);
                    2 * w + (s + a % 2 + b % 2) % 2
                })
                .collect()
        })
        .collect();
    FiniteGroupTable::new(names, 0, table).expect("quaternion table is a group")
}

pub fn cyclic_group(n: usize) -> Result<FiniteGroupTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic group of order 0".into()));
    }
    let names = (0..n).map(|i| if i == 0 { "1".to_string() } else { format!("g{i}") }).collect();
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroupTable::new(names, 0, table)
}

/// Dihedral group of order `2n`: `r^a s^b` at index `2a + b`.
pub fn dihedral_group(n: usize) -> Result<FiniteGroupTable> {
    if n < 2 {
        return Err(Error::InvalidArgument("dihedral group needs n ≥ 2".into()));
    }
    let names = (0..2 * n)
        .map(|x| {
            let (a, b) = (x / 2, x % 2);
            match (a, b) {
                (0, 0) => "1".to_string(),
                (0, 1) => "s".to_string(),
                (a, 0) => format!("r{a}"),
                (a, _) => format!("r{a}s"),
            }
        })
        .collect();
    // (r^a s^b)(r^c s^d) = r^(a + (-1)^b c) s^(b+d)
    let table = (0..2 * n)
        .map(|x| {
            (0..2 * n)
                .map(|y| {
                    let (a, b, c, d) = (x / 2, x % 2, y / 2, y % 2);
                    let e = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                    2 * e + (b + d) % 2
                })
                .collect()
        })
        .collect();
    FiniteGroupTable::new(names, 0, table)
}

/// Symmetric group on `n` points, permutations in lexicographic order;
/// `(σ·τ)(i) = σ(τ(i))`.
pub fn symmetric_group(n: usize) -> Result<FiniteGroupTable> {
    if n == 0 || n > 5 {
        return Err(Error::InvalidArgument("symmetric group supported for 1 ≤ n ≤ 5".into()));
    }
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("successor exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    let index = |q: &[usize]| out.iter().position(|x| x == q).expect("permutation listed");
    let names = out.iter().map(|q| q.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join("")).collect();
    let table =
        out.iter().map(|s| out.iter().map(|t| index(&t.iter().map(|&i| s[i]).collect::<Vec<_>>())).collect()).collect();
    FiniteGroupTable::new(names, 0, table)
}

/// The group algebra `F[G]` on the basis of group elements.
pub fn group_algebra(g: &FiniteGroupTable, field: FieldSpec) -> Algebra {
    let n = g.order();
    let mut one = vec![field.zero(); n];
    one[g.identity()] = field.one();
    let entries: Vec<_> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| (a, b, g.mul(a, b), field.one())).collect();
    Algebra::new(field, g.names().to_vec(), one, entries).expect("group algebra table is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_relations() {
        let q = quaternion_group();
        let at = |s: &str| q.index_of(s).unwrap();
        assert_eq!(q.mul(at("i"), at("j")), at("k"));
        assert_eq!(q.mul(at("j"), at("i")), at("-k"));
        assert_eq!(q.mul(at("i"), at("i")), at("-1"));
        assert_eq!(q.mul(q.mul(at("i"), at("j")), at("k")), at("-1"));
        assert!(q.validate().is_ok());
        assert!(!q.is_abelian());
    }

    #[test]
    fn small_groups_validate() {
        assert_eq!(cyclic_group(5).unwrap().order(), 5);
        let d4 = dihedral_group(4).unwrap();
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());
        let s3 = symmetric_group(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(symmetric_group(4).unwrap().order(), 24);
    }

    #[test]
    fn broken_table_rejected() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(FiniteGroupTable::new(names, 0, vec![vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn group_algebra_is_valid() {
        let f2 = FieldSpec::prime(2).unwrap();
        let a = group_algebra(&quaternion_group(), f2);
        assert_eq!(a.dim(), 8);
        assert!(a.validate().is_empty());
        assert!(!a.is_commutative());
        assert_eq!(a.to_finite_ring().unwrap().order(), 256);
    }
}
