//! Reproduction suite: one row per stated fact, each with the expected and
//! the computed value.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, AnyRing, DEFAULT_ENUMERATION_BOUND};
use crate::ce::{decide, is_ce_exhaustive, is_ce_subspace, CEReport, Decision, Tri};
use crate::error::Result;
use crate::exactlin::{echelonize, howell, FieldSpec, Matrix, Scalar, Subspace};
use crate::gallery::{
    abelian_groups_up_to, catalog, derivation_ring_ce_sample, endomorphism_ring, grassmann, group_algebra,
    quaternion_group, rank3_algebra, FiniteAbelianGroup, Rank3Kind,
};
use crate::invariants::{finite, InvariantSet, Locality, Submodule};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub bound: u128,
    pub seed: u64,
    pub trials: usize,
    pub deg_bound: u32,
    pub coeff_bound: i64,
    pub property_cases: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            bound: DEFAULT_ENUMERATION_BOUND,
            seed: 2024,
            trials: 100,
            deg_bound: 3,
            coeff_bound: 9,
            property_cases: 1000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Pass,
    Fail,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteRow {
    pub id: u32,
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub status: RowStatus,
}

impl SuiteRow {
    pub fn passed(&self) -> bool {
        self.status == RowStatus::Pass
    }
}

/// Collects `(label, ok)` checks and reports the first failures.
struct Checks {
    failures: Vec<String>,
    undecided: bool,
    count: usize,
}

impl Checks {
    fn new() -> Self {
        Checks { failures: Vec::new(), undecided: false, count: 0 }
    }

    fn check(&mut self, ok: bool, label: impl Into<String>) {
        self.count += 1;
        if !ok {
            self.failures.push(label.into());
        }
    }

    fn decision(&mut self, report: &CEReport, expected: bool, label: &str) {
        if report.decision == Decision::Undecided {
            self.undecided = true;
            self.failures.push(format!("{label}: undecided ({})", report.reason.clone().unwrap_or_default()));
        } else {
            self.check(report.decision == Decision::from(expected), format!("{label}: CE {:?}", report.decision));
        }
        self.check(report.consistency.is_empty(), format!("{label}: {:?}", report.consistency));
    }

    fn row(self, id: u32, name: &str, expected: &str) -> SuiteRow {
        let status = if self.failures.is_empty() {
            RowStatus::Pass
        } else if self.undecided {
            RowStatus::Undecided
        } else {
            RowStatus::Fail
        };
        let computed = if self.failures.is_empty() {
            format!("{} checks hold", self.count)
        } else {
            self.failures.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
        };
        SuiteRow { id, name: name.into(), expected: expected.into(), computed, status }
    }
}

fn error_row(id: u32, name: &str, expected: &str, e: crate::Error) -> SuiteRow {
    SuiteRow {
        id,
        name: name.into(),
        expected: expected.into(),
        computed: format!("error: {e}"),
        status: RowStatus::Fail,
    }
}

fn run_row(id: u32, name: &str, expected: &str, f: impl FnOnce(&mut Checks) -> Result<()>) -> SuiteRow {
    let mut checks = Checks::new();
    match f(&mut checks) {
        Ok(()) => checks.row(id, name, expected),
        Err(e) => error_row(id, name, expected, e),
    }
}

fn field_sub(s: &Submodule) -> &Subspace {
    match s {
        Submodule::Field(s) => s,
        Submodule::Residue(_) => unreachable!("algebra invariants are subspaces"),
    }
}

fn span_of(field: FieldSpec, dim: usize, indices: &[usize]) -> Result<Subspace> {
    let vs =
        indices.iter().map(|&i| (0..dim).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect();
    Subspace::from_vectors(field, dim, vs)
}

pub fn run_suite(cfg: &SuiteConfig) -> Vec<SuiteRow> {
    vec![
        run_row(
            1,
            "F2[Q8] local, noncommutative, CE",
            "order 256, noncommutative, local, CE exhaustive, (i) and (iii) true",
            |c| {
                let alg = group_algebra(&quaternion_group(), FieldSpec::prime(2)?);
                let ring = alg.to_finite_ring()?;
                c.check(ring.order() == 256, format!("order {}", ring.order()));
                c.check(!ring.is_commutative(), "commutative");
                let ex = is_ce_exhaustive(&ring, cfg.bound)?;
                c.decision(&ex, true, "exhaustive");
                if ring.order() <= cfg.bound {
                    let local = finite::exhaustive_locality(&ring, cfg.bound)?;
                    c.check(local.status == Locality::Yes, format!("exhaustive locality {:?}", local.status));
                }
                let sub = is_ce_subspace(&AnyRing::Algebra(alg))?;
                c.decision(&sub, true, "subspace");
                let inv = sub.invariants.as_ref().expect("invariants");
                c.check(inv.local.status == Locality::Yes, "structural locality");
                c.check(ex.prop34.quotient_commutative == Tri::True, "(i)");
                c.check(ex.prop34.every_min_ideal_meets_center == Tri::True, "(iii)");
                Ok(())
            },
        ),
        run_row(2, "Grassmann parity", "CE(Λ(Q^n)) = odd(n) for n = 1..5; Λ(F3^3) CE by both deciders", |c| {
            for n in 1..=5 {
                let r = is_ce_subspace(&AnyRing::Algebra(grassmann(n, FieldSpec::Rationals)?))?;
                c.decision(&r, n % 2 == 1, &format!("Q, n = {n}"));
            }
            let g = grassmann(3, FieldSpec::prime(3)?)?;
            let ring = g.to_finite_ring()?;
            c.check(ring.order() == 6561, "order 6561");
            let sub = is_ce_subspace(&AnyRing::Algebra(g))?;
            let ex = is_ce_exhaustive(&ring, cfg.bound)?;
            c.decision(&sub, true, "F3 subspace");
            c.decision(&ex, true, "F3 exhaustive");
            Ok(())
        }),
        run_row(
            3,
            "Λ(Q^3) invariants",
            "dim C = 5, dim J = 7, dim Soc(R_R) = 1, dim Soc(R_C) = 4, socles differ, CE",
            |c| {
                let q = FieldSpec::Rationals;
                let ring = AnyRing::Algebra(grassmann(3, q)?);
                let inv = InvariantSet::compute(&ring)?;
                c.check(*field_sub(&inv.center) == span_of(q, 8, &[0, 4, 5, 6, 7])?, "center = {q1 = q2 = q3 = 0}");
                c.check(*field_sub(&inv.radical) == span_of(q, 8, &[1, 2, 3, 4, 5, 6, 7])?, "J = {q0 = 0}");
                c.check(*field_sub(&inv.socle_right) == span_of(q, 8, &[7])?, "Soc(R_R) = top wedge");
                c.check(
                    *field_sub(&inv.socle_central) == span_of(q, 8, &[4, 5, 6, 7])?,
                    "Soc(R_C) = central, zero diagonal",
                );
                c.check(inv.socle_right != inv.socle_central, "socles differ");
                let r = is_ce_subspace(&ring)?;
                c.decision(&r, true, "CE");
                c.check(r.prop34.socles_equal == Tri::False, "socles_equal flag");
                Ok(())
            },
        ),
        run_row(4, "regular representation of Λ(Q^3)", "8 × 8 matrix entry-for-entry", |c| {
            let g = grassmann(3, FieldSpec::Rationals)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut samples: Vec<Vec<i64>> = (0..8).map(|i| (0..8).map(|j| i64::from(i == j)).collect()).collect();
            samples.extend((0..32).map(|_| (0..8).map(|_| rng.gen_range(-50..=50)).collect()));
            for q in samples {
                let x = g.element_i64(&q)?;
                let m = g.regular_representation(&x)?;
                let expected = explicit_grassmann_matrix(&q);
                c.check(m == expected, format!("q = {q:?}"));
            }
            Ok(())
        }),
        run_row(
            5,
            "rank-3 algebras K, R, S(k), T",
            "K, R, S(k) commutative and CE; T noncommutative, T/J commutative, C ∩ M = 0, not CE",
            |c| {
                let q = FieldSpec::Rationals;
                let mut kinds = vec![Rank3Kind::K, Rank3Kind::R];
                for k in ["1", "-2", "7/3"] {
                    kinds.push(Rank3Kind::S(q.parse(k)?));
                }
                for kind in kinds {
                    let a = rank3_algebra(&kind, q)?;
                    c.check(a.is_commutative(), format!("{kind:?} commutative"));
                    c.decision(&is_ce_subspace(&AnyRing::Algebra(a))?, true, &format!("{kind:?}"));
                }
                let t = rank3_algebra(&Rank3Kind::T, q)?;
                c.check(!t.is_commutative(), "T noncommutative");
                let r = is_ce_subspace(&AnyRing::Algebra(t.clone()))?;
                c.decision(&r, false, "T");
                let inv = r.invariants.as_ref().expect("invariants");
                c.check(inv.quotient_commutative, "T/J(T) commutative");
                let m = span_of(q, 4, &[3])?;
                c.check(t.right_ideal_closure(&m)? == m, "M is a right ideal");
                c.check(field_sub(&inv.center).intersect(&m)?.is_zero(), "C(T) ∩ M = 0");
                c.check(
                    field_sub(&inv.radical).dim() == 3 && field_sub(&inv.center).dim() == 2,
                    "dim J = 3, dim C = 2",
                );
                Ok(())
            },
        ),
        run_row(
            6,
            "endomorphism rings of abelian groups of order ≤ 64",
            "CE(End A) ⇔ p-components cyclic ⇔ End A commutative",
            |c| {
                for g in abelian_groups_up_to(64) {
                    let ring = endomorphism_ring(&g, cfg.bound.max(64))?;
                    let comm = ring.is_commutative();
                    let cyclic = g.components_cyclic();
                    let r = is_ce_subspace(&AnyRing::Finite(ring))?;
                    c.decision(&r, cyclic, &format!("End({g})"));
                    c.check(comm == cyclic, format!("End({g}) commutative = {comm}"));
                }
                let mat2 = endomorphism_ring(&"2:1,2:1".parse::<FiniteAbelianGroup>()?, cfg.bound.max(64))?;
                c.decision(&is_ce_exhaustive(&mat2, cfg.bound)?, false, "End(Z2+Z2) exhaustive");
                for s in ["2:1", "2:2", "3:2"] {
                    let r = endomorphism_ring(&s.parse::<FiniteAbelianGroup>()?, cfg.bound.max(64))?;
                    c.decision(&is_ce_exhaustive(&r, cfg.bound)?, true, &format!("End({s}) exhaustive"));
                }
                Ok(())
            },
        ),
        run_row(
            7,
            "subspace criterion agrees with exhaustive scan",
            "identical decisions on every finite gallery ring of order ≤ 2^16",
            |c| {
                for spec in catalog() {
                    let ring = spec.build(cfg.bound.max(1 << 16))?;
                    let finite = match &ring {
                        AnyRing::Algebra(a) if a.field().characteristic() == 0 => continue,
                        AnyRing::Algebra(a) => a.to_finite_ring()?,
                        AnyRing::Finite(r) => r.clone(),
                    };
                    if finite.order() > 1 << 16 {
                        continue;
                    }
                    let sub = is_ce_subspace(&ring)?;
                    let ex = is_ce_exhaustive(&finite, cfg.bound)?;
                    if ex.decision == Decision::Undecided {
                        c.undecided = true;
                        c.failures.push(format!("{}: exhaustive undecided", spec.name()));
                        continue;
                    }
                    c.check(
                        sub.decision == ex.decision,
                        format!("{}: {:?} vs {:?}", spec.name(), sub.decision, ex.decision),
                    );
                }
                Ok(())
            },
        ),
        run_row(
            8,
            "semiprime noncommutative rings are not CE",
            "no gallery ring is semiprime, noncommutative and CE",
            |c| {
                for spec in catalog() {
                    let ring = spec.build(cfg.bound.max(1 << 16))?;
                    let r = decide(&ring, 0)?;
                    let inv = r.invariants.as_ref();
                    let violates = inv.is_some_and(|i| i.semiprime) && !r.commutative && r.decision == Decision::True;
                    c.check(!violates, spec.name());
                    c.check(r.consistency.is_empty(), format!("{}: {:?}", spec.name(), r.consistency));
                }
                Ok(())
            },
        ),
        run_row(
            9,
            "derivation ring samples",
            "a·e13 central and nonzero for nonzero diagonal; zero diagonal central",
            |c| {
                let s = derivation_ring_ce_sample(cfg.trials, cfg.deg_bound, cfg.coeff_bound, cfg.seed);
                c.check(s.trials == cfg.trials, "trial count");
                for f in s.failures {
                    c.check(false, f);
                }
                Ok(())
            },
        ),
        run_row(
            10,
            "canonical forms",
            "echelon canonicity, dimension formula, Howell canonicity on random cases",
            |c| property_checks(c, cfg.property_cases, cfg.seed),
        ),
    ]
}

/// The explicit regular representation of
/// `q0 + q1 e1 + q2 e2 + q3 e3 + q4 e12 + q5 e23 + q6 e13 + q7 e123`.
fn explicit_grassmann_matrix(q: &[i64]) -> Matrix {
    #[rustfmt::skip]
    let table: [[(i64, usize); 8]; 8] = [
        [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7)],
        [(0, 0), (1, 0), (0, 0), (0, 0), (-1, 2), (0, 0), (-1, 3), (1, 5)],
        [(0, 0), (0, 0), (1, 0), (0, 0), (1, 1), (-1, 3), (0, 0), (-1, 6)],
        [(0, 0), (0, 0), (0, 0), (1, 0), (0, 0), (1, 2), (1, 1), (1, 4)],
        [(0, 0), (0, 0), (0, 0), (0, 0), (1, 0), (0, 0), (0, 0), (1, 3)],
        [(0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (1, 0), (0, 0), (1, 1)],
        [(0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (1, 0), (-1, 2)],
        [(0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (1, 0)],
    ];
    let rows: Vec<Vec<i64>> = table.iter().map(|r| r.iter().map(|&(s, k)| s * q[k]).collect()).collect();
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Matrix::from_i64(FieldSpec::Rationals, &refs).expect("8 × 8")
}

fn random_rows(rng: &mut ChaCha8Rng, field: FieldSpec, rows: usize, cols: usize) -> Vec<Vec<Scalar>> {
    (0..rows).map(|_| (0..cols).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect()).collect()
}

fn random_field(rng: &mut ChaCha8Rng) -> FieldSpec {
    match rng.gen_range(0..3) {
        0 => FieldSpec::Rationals,
        1 => FieldSpec::PrimeField { p: 2 },
        _ => FieldSpec::PrimeField { p: 7 },
    }
}

/// Randomized checks of the linear-algebra canonical forms.
fn property_checks(c: &mut Checks, cases: usize, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let field = random_field(&mut rng);
        let cols = rng.gen_range(1..=5);
        let nrows = rng.gen_range(0..=5);
        let rows = random_rows(&mut rng, field, nrows, cols);
        let a = echelonize(&Matrix::from_rows(field, cols, rows.clone())?, field)?;
        // random invertible row operations preserve the canonical form
        let mut mixed = rows.clone();
        for _ in 0..6 {
            if mixed.len() < 2 {
                break;
            }
            let i = rng.gen_range(0..mixed.len());
            let j = rng.gen_range(0..mixed.len());
            if i == j {
                continue;
            }
            let s = field.from_i64(rng.gen_range(-4..=4));
            let row_j = mixed[j].clone();
            for (x, y) in mixed[i].iter_mut().zip(&row_j) {
                *x = x.add(&s.mul(y));
            }
        }
        mixed.shuffle(&mut rng);
        mixed.push(vec![field.zero(); cols]);
        let b = echelonize(&Matrix::from_rows(field, cols, mixed)?, field)?;
        c.check(a == b, format!("echelon case {case}"));

        let nother = rng.gen_range(0..=4);
        let other = Subspace::from_vectors(field, cols, random_rows(&mut rng, field, nother, cols))?;
        let sum = a.sum(&other)?;
        let meet = a.intersect(&other)?;
        c.check(a.dim() + other.dim() == sum.dim() + meet.dim(), format!("dimension case {case}"));
        c.check(
            sum.contains(&a)? && sum.contains(&other)? && a.contains(&meet)? && other.contains(&meet)?,
            format!("lattice case {case}"),
        );

        let k = rng.gen_range(1..=3);
        let moduli: Vec<u64> = (0..k).map(|_| [2u64, 3, 4, 6, 8, 9, 12][rng.gen_range(0..7)]).collect();
        let mut gens: Vec<Vec<i64>> =
            (0..rng.gen_range(0..=4)).map(|_| moduli.iter().map(|&m| rng.gen_range(0..m as i64)).collect()).collect();
        let h1 = howell(&gens, &moduli)?;
        if gens.len() >= 2 {
            let s = rng.gen_range(1..5);
            let g1 = gens[1].clone();
            for (x, y) in gens[0].iter_mut().zip(&g1) {
                *x += s * y;
            }
        }
        gens.shuffle(&mut rng);
        gens.push(vec![0; k]);
        let h2 = howell(&gens, &moduli)?;
        c.check(h1 == h2, format!("Howell case {case} over {moduli:?}"));
    }
    let big = |digits: usize, rng: &mut ChaCha8Rng| -> BigInt {
        let s: String = (0..digits).map(|i| char::from(b'0' + rng.gen_range(u8::from(i == 0)..10))).collect();
        s.parse().expect("decimal digits")
    };
    for case in 0..cases {
        let a = big(70, &mut rng);
        let b = big(65, &mut rng);
        let x = Scalar::Rational(BigRational::new(a.clone(), b.clone()));
        let y = Scalar::Rational(BigRational::new(b, a));
        c.check(x.mul(&y).is_one(), format!("rational case {case}"));
    }
    Ok(())
}

/// Checks that re-expressing `alg` in a random invertible basis keeps the CE decision.
pub fn basis_change_preserves_ce(alg: &Algebra, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = alg.dim();
    let field = alg.field();
    let p = loop {
        let rows = random_rows(&mut rng, field, n, n);
        let m = Matrix::from_rows(field, n, rows)?;
        if echelonize(&m, field)?.dim() == n {
            break m;
        }
    };
    let before = is_ce_subspace(&AnyRing::Algebra(alg.clone()))?.decision;
    let after = is_ce_subspace(&AnyRing::Algebra(alg.change_basis(&p)?))?.decision;
    Ok(before == after)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_matrix_spot_rows() {
        let q: Vec<i64> = (10..18).collect();
        let m = explicit_grassmann_matrix(&q);
        let f = FieldSpec::Rationals;
        let row = |r: usize| m.row(r).to_vec();
        let ints = |v: [i64; 8]| v.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        assert_eq!(row(1), ints([0, 10, 0, 0, -12, 0, -13, 15]));
        assert_eq!(row(2), ints([0, 0, 10, 0, 11, -13, 0, -16]));
    }

    #[test]
    fn small_property_run() {
        let mut c = Checks::new();
        property_checks(&mut c, 50, 1).unwrap();
        assert!(c.failures.is_empty(), "{:?}", c.failures);
    }
}

#[cfg(test)]
mod full_run {
    #[test]
    fn full_suite_passes() {
        for row in super::run_suite(&super::SuiteConfig::default()) {
            assert!(row.passed(), "row {} {}: {}", row.id, row.name, row.computed);
        }
    }

    #[test]
    fn tiny_bound_makes_exhaustive_rows_undecided() {
        let cfg = super::SuiteConfig { bound: 10, property_cases: 5, ..Default::default() };
        let rows = super::run_suite(&cfg);
        assert_eq!(rows[0].status, super::RowStatus::Undecided);
        assert_eq!(rows[6].status, super::RowStatus::Undecided);
        assert!(rows[2].passed());
    }
}
