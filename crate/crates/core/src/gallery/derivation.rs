//! The ring of matrices
//!
//! ```text
//! ( f  ∂f/∂x  g     )
//! ( 0  f      ∂f/∂y )
//! ( 0  0      f     )
//! ```
//!
//! with `f, g ∈ Z[x, y]`, stored as the pair `(f, g)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Polynomial in `Z[x, y]`, coefficients keyed by `(deg_x, deg_y)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly2 {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl IntPoly2 {
    pub fn zero() -> Self {
        IntPoly2::default()
    }

    pub fn constant(c: i64) -> Self {
        IntPoly2::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        IntPoly2::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        IntPoly2::monomial(1, 0, 1)
    }

    pub fn monomial(c: i64, dx: u32, dy: u32) -> Self {
        IntPoly2::from_terms([((dx, dy), BigInt::from(c))])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), BigInt)>) -> Self {
        let mut p = IntPoly2::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, key: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant polynomial (including zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &IntPoly2) -> IntPoly2 {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> IntPoly2 {
        IntPoly2 { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }

    pub fn sub(&self, other: &IntPoly2) -> IntPoly2 {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly2) -> IntPoly2 {
        let mut out = IntPoly2::zero();
        for (&(a, b), c) in &self.terms {
            for (&(d, e), f) in &other.terms {
                out.add_term((a + d, b + e), c * f);
            }
        }
        out
    }

    pub fn d_dx(&self) -> IntPoly2 {
        IntPoly2::from_terms(
            self.terms.iter().filter(|(k, _)| k.0 > 0).map(|(&(a, b), c)| ((a - 1, b), c * BigInt::from(a))),
        )
    }

    pub fn d_dy(&self) -> IntPoly2 {
        IntPoly2::from_terms(
            self.terms.iter().filter(|(k, _)| k.1 > 0).map(|(&(a, b), c)| ((a, b - 1), c * BigInt::from(b))),
        )
    }
}

impl fmt::Display for IntPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in self.terms.iter().rev() {
            let (sign, mag) = if c < &BigInt::zero() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mut factors = Vec::new();
            if !mag.is_one() || (a, b) == (0, 0) {
                factors.push(mag.to_string());
            }
            for (var, e) in [("x", a), ("y", b)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    e => factors.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DerivationRingElement {
    pub f: IntPoly2,
    pub g: IntPoly2,
}

impl DerivationRingElement {
    pub fn new(f: IntPoly2, g: IntPoly2) -> Self {
        DerivationRingElement { f, g }
    }

    /// The matrix unit `e13`.
    pub fn e13() -> Self {
        DerivationRingElement::new(IntPoly2::zero(), IntPoly2::constant(1))
    }

    pub fn one() -> Self {
        DerivationRingElement::new(IntPoly2::constant(1), IntPoly2::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    pub fn sub(&self, other: &Self) -> Self {
        DerivationRingElement::new(self.f.sub(&other.f), self.g.sub(&other.g))
    }

    pub fn add(&self, other: &Self) -> Self {
        DerivationRingElement::new(self.f.add(&other.f), self.g.add(&other.g))
    }
}

/// Product of two elements: diagonal `f_a f_b`, corner
/// `f_a g_b + ∂f_a/∂x · ∂f_b/∂y + g_a f_b`.
pub fn derivation_ring_mul(a: &DerivationRingElement, b: &DerivationRingElement) -> DerivationRingElement {
    let f = a.f.mul(&b.f);
    let g = a.f.mul(&b.g).add(&a.f.d_dx().mul(&b.f.d_dy())).add(&a.g.mul(&b.f));
    DerivationRingElement::new(f, g)
}

pub fn derivation_ring_commutator(a: &DerivationRingElement, b: &DerivationRingElement) -> DerivationRingElement {
    derivation_ring_mul(a, b).sub(&derivation_ring_mul(b, a))
}

/// Central iff it commutes with `(x, 0)` and `(y, 0)`: the commutator with
/// `(h, 0)` is the corner `∂f/∂x ∂h/∂y − ∂h/∂x ∂f/∂y`.
pub fn derivation_ring_is_central(a: &DerivationRingElement) -> bool {
    [IntPoly2::x(), IntPoly2::y()]
        .into_iter()
        .all(|h| derivation_ring_commutator(a, &DerivationRingElement::new(h, IntPoly2::zero())).is_zero())
}

fn random_poly(rng: &mut ChaCha8Rng, deg_bound: u32, coeff_bound: i64) -> IntPoly2 {
    let mut terms = Vec::new();
    for a in 0..=deg_bound {
        for b in 0..=deg_bound - a {
            if rng.gen_bool(0.5) {
                terms.push(((a, b), BigInt::from(rng.gen_range(-coeff_bound..=coeff_bound))));
            }
        }
    }
    IntPoly2::from_terms(terms)
}

/// Random element with total degrees at most `deg_bound` and coefficients in
/// `[-coeff_bound, coeff_bound]`. One in four has zero diagonal.
pub fn random_derivation_element(rng: &mut ChaCha8Rng, deg_bound: u32, coeff_bound: i64) -> DerivationRingElement {
    let f = if rng.gen_ratio(1, 4) { IntPoly2::zero() } else { random_poly(rng, deg_bound, coeff_bound) };
    DerivationRingElement::new(f, random_poly(rng, deg_bound, coeff_bound))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationSample {
    pub trials: usize,
    pub zero_diagonal: usize,
    pub noncentral: usize,
    pub failures: Vec<String>,
}

impl DerivationSample {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Samples random `a` and checks: zero diagonal ⇒ `a` central; nonzero
/// diagonal ⇒ `a·e13` central and nonzero; noncentral `a` always falls in the
/// second case. Centrality is also cross-checked against random elements.
pub fn derivation_ring_ce_sample(trials: usize, deg_bound: u32, coeff_bound: i64, seed: u64) -> DerivationSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probes: Vec<DerivationRingElement> =
        (0..8).map(|_| random_derivation_element(&mut rng, deg_bound, coeff_bound)).collect();
    let commutes_with_probes =
        |c: &DerivationRingElement| probes.iter().all(|p| derivation_ring_commutator(c, p).is_zero());
    let e13 = DerivationRingElement::e13();
    let mut sample = DerivationSample { trials, zero_diagonal: 0, noncentral: 0, failures: Vec::new() };
    for t in 0..trials {
        let a = random_derivation_element(&mut rng, deg_bound, coeff_bound);
        let central = derivation_ring_is_central(&a);
        if central && !commutes_with_probes(&a) {
            sample.failures.push(format!("trial {t}: central test disagrees with probes for f = {}", a.f));
        }
        if !central {
            sample.noncentral += 1;
        }
        if a.f.is_zero() {
            sample.zero_diagonal += 1;
            if !central {
                sample.failures.push(format!("trial {t}: zero diagonal but not central (g = {})", a.g));
            }
            continue;
        }
        let ae = derivation_ring_mul(&a, &e13);
        if ae.is_zero() || !derivation_ring_is_central(&ae) || !commutes_with_probes(&ae) {
            sample.failures.push(format!("trial {t}: a·e13 not a nonzero central element for f = {}", a.f));
        }
    }
    sample
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(f: IntPoly2, g: IntPoly2) -> DerivationRingElement {
        DerivationRingElement::new(f, g)
    }

    #[test]
    fn products_by_hand() {
        let x = el(IntPoly2::x(), IntPoly2::zero());
        let y = el(IntPoly2::y(), IntPoly2::zero());
        let xx = derivation_ring_mul(&x, &x);
        assert_eq!(xx.f, IntPoly2::monomial(1, 2, 0));
        assert!(xx.g.is_zero());
        assert_eq!(derivation_ring_mul(&x, &y).g, IntPoly2::constant(1));
        assert!(derivation_ring_mul(&y, &x).g.is_zero());
        let f = IntPoly2::monomial(2, 1, 0).add(&IntPoly2::monomial(3, 0, 1));
        let a = el(f.clone(), IntPoly2::monomial(-4, 2, 2));
        assert_eq!(derivation_ring_mul(&a, &DerivationRingElement::e13()), el(IntPoly2::zero(), f));
    }

    #[test]
    fn centrality() {
        assert!(derivation_ring_is_central(&el(IntPoly2::constant(5), IntPoly2::x())));
        assert!(!derivation_ring_is_central(&el(IntPoly2::x(), IntPoly2::zero())));
        assert!(derivation_ring_is_central(&DerivationRingElement::e13()));
    }

    #[test]
    fn display() {
        let p = IntPoly2::monomial(-3, 2, 1).add(&IntPoly2::x()).add(&IntPoly2::constant(7));
        assert_eq!(p.to_string(), "-3*x^2*y + x + 7");
    }

    #[test]
    fn sample_passes() {
        let s = derivation_ring_ce_sample(100, 3, 9, 7);
        assert!(s.passed(), "{:?}", s.failures);
        assert!(s.zero_diagonal > 0 && s.noncentral > 0);
    }
}
