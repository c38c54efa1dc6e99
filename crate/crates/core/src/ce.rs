//! Centrally essential rings: `R` is centrally essential when for every
//! nonzero `a` there are nonzero central `x, y` with `a·x = y`.
//!
//! Two deciders are provided. The subspace criterion checks
//! `Soc(R_C) ⊆ C`, where `Soc(R_C)` is the annihilator of `J(C) = C ∩ J(R)`;
//! it works for any finite-dimensional algebra or finite ring. The exhaustive
//! decider scans every element of a finite ring.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, AnyRing, Element, FiniteRing};
use crate::error::{Error, Result};
use crate::exactlin::{howell, left_kernel, Matrix, ResidueModule, Scalar, Subspace};
use crate::gallery::{endomorphism_ring, FiniteAbelianGroup};
use crate::invariants::{field, finite, InvariantSet, Locality, Submodule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    True,
    False,
    Undecided,
}

impl From<bool> for Decision {
    fn from(b: bool) -> Self {
        if b {
            Decision::True
        } else {
            Decision::False
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    SubspaceCriterion,
    Exhaustive,
    Both,
}

/// Conditions around minimal right ideals for local rings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop34Flags {
    /// `R/J(R)` is commutative.
    pub quotient_commutative: Tri,
    /// `Soc(R_R) = Soc(R_C)`.
    pub socles_equal: Tri,
    /// `Soc(R_R) ⊆ C`.
    pub socle_in_center: Tri,
    /// `C ∩ M ≠ 0` for every minimal right ideal `M`.
    pub every_min_ideal_meets_center: Tri,
    pub note: Option<String>,
}

impl Prop34Flags {
    fn unknown(note: impl Into<String>) -> Self {
        Prop34Flags {
            quotient_commutative: Tri::Unknown,
            socles_equal: Tri::Unknown,
            socle_in_center: Tri::Unknown,
            every_min_ideal_meets_center: Tri::Unknown,
            note: Some(note.into()),
        }
    }

    fn from_invariants(inv: &InvariantSet) -> Result<Self> {
        let socle_in_center = inv.center.contains(&inv.socle_right)?;
        let (meets, note) = if socle_in_center {
            (Tri::True, None)
        } else if inv.quotient_commutative {
            (Tri::False, None)
        } else {
            (
                Tri::Unknown,
                Some(
                    "R/J(R) is not commutative and Soc(R_R) is not inside C; minimal right ideals are not examined"
                        .into(),
                ),
            )
        };
        Ok(Prop34Flags {
            quotient_commutative: inv.quotient_commutative.into(),
            socles_equal: (inv.socle_right == inv.socle_central).into(),
            socle_in_center: socle_in_center.into(),
            every_min_ideal_meets_center: meets,
            note,
        })
    }
}

/// Verdict bundle for one ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CEReport {
    pub decision: Decision,
    pub method: Method,
    pub reason: Option<String>,
    pub commutative: bool,
    /// Coordinates of a nonzero `a` with `aC ∩ C = 0`.
    pub witness_failure: Option<Vec<String>>,
    pub prop34: Prop34Flags,
    pub invariants: Option<InvariantSet>,
    /// Broken implications between the decision and the invariants; empty
    /// when everything is consistent.
    pub consistency: Vec<String>,
}

impl CEReport {
    fn undecided(method: Method, commutative: bool, reason: String) -> Self {
        CEReport {
            decision: Decision::Undecided,
            method,
            reason: Some(reason),
            commutative,
            witness_failure: None,
            prop34: Prop34Flags::unknown("invariants unavailable"),
            invariants: None,
            consistency: Vec::new(),
        }
    }

    /// Re-derives the consistency list from the decision, flags and invariants.
    fn check_consistency(&mut self) {
        self.consistency.clear();
        let Some(inv) = &self.invariants else { return };
        if inv.semiprime && !self.commutative && self.decision == Decision::True {
            self.consistency.push("semiprime and noncommutative, yet centrally essential".into());
        }
        if inv.local.status != Locality::Yes {
            return;
        }
        let f = &self.prop34;
        if self.decision == Decision::True
            && (f.quotient_commutative == Tri::False || f.every_min_ideal_meets_center == Tri::False)
        {
            self.consistency.push("centrally essential local ring violating R/J commutative and C ∩ M ≠ 0".into());
        }
        let all = [f.quotient_commutative, f.socles_equal, f.every_min_ideal_meets_center];
        if all.iter().all(|&t| t == Tri::True) && self.decision == Decision::False {
            self.consistency.push("conditions (i), (ii), (iii) hold, yet not centrally essential".into());
        }
    }
}

fn undecided_error(e: &Error) -> bool {
    matches!(e, Error::RadicalUndecided(_) | Error::RadicalCheckFailed(_) | Error::BoundExceeded { .. })
}

fn scalar_strings(e: &Element) -> Vec<String> {
    e.coords().iter().map(|x| x.to_string()).collect()
}

fn int_strings(v: &[u64]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Decides CE by `Soc(R_C) ⊆ C`; on failure searches the socles for a
/// witness `a` with `aC ∩ C = 0`.
pub fn is_ce_subspace(ring: &AnyRing) -> Result<CEReport> {
    let commutative = ring.is_commutative();
    let inv = match InvariantSet::compute(ring) {
        Ok(inv) => inv,
        Err(e) if undecided_error(&e) => {
            return Ok(CEReport::undecided(Method::SubspaceCriterion, commutative, e.to_string()))
        }
        Err(e) => return Err(e),
    };
    let decision = inv.center.contains(&inv.socle_central)?;
    let witness = if decision {
        None
    } else {
        match (ring, &inv.socle_right, &inv.socle_central, &inv.center) {
            (AnyRing::Algebra(a), Submodule::Field(sr), Submodule::Field(sc), Submodule::Field(c)) => {
                algebra_failure_witness(a, c, &[sr, sc])?.map(|e| scalar_strings(&e))
            }
            (AnyRing::Finite(r), Submodule::Residue(sr), Submodule::Residue(sc), Submodule::Residue(c)) => {
                finite_failure_witness(r, c, &[sr, sc])?.map(|v| int_strings(&v))
            }
            _ => unreachable!("invariants match the ring kind"),
        }
    };
    let mut report = CEReport {
        decision: decision.into(),
        method: Method::SubspaceCriterion,
        reason: (!decision && witness.is_none())
            .then(|| "Soc(R_C) is not inside C; no basis witness found".to_string()),
        commutative,
        witness_failure: witness,
        prop34: Prop34Flags::from_invariants(&inv)?,
        invariants: Some(inv),
        consistency: Vec::new(),
    };
    report.check_consistency();
    Ok(report)
}

fn algebra_failure_witness(alg: &Algebra, center: &Subspace, socles: &[&Subspace]) -> Result<Option<Element>> {
    let cs: Vec<Element> = center.basis_vectors().map(|v| alg.element(v.to_vec())).collect::<Result<_>>()?;
    for s in socles {
        for v in s.basis_vectors() {
            let a = alg.element(v.to_vec())?;
            let mut candidates = vec![a.clone()];
            for c in &cs {
                candidates.push(alg.mul(&a, c)?);
            }
            for cand in candidates {
                if !cand.is_zero() && !center.contains_vector(cand.coords()) && ce_witness(alg, &cand)?.is_none() {
                    return Ok(Some(cand));
                }
            }
        }
    }
    // V = xC with x ∈ Soc(R_C) \ C is cyclic over the semisimple C/J(C), so
    // multiplicity-free: W = V ∩ C has the unique complement V·ann_C(W).
    let Some(socle) = socles.last() else { return Ok(None) };
    let field = alg.field();
    let n = alg.dim();
    for v in socle.basis_vectors().filter(|v| !center.contains_vector(v)) {
        let x = alg.element(v.to_vec())?;
        let xc: Vec<Vec<Scalar>> = cs.iter().map(|c| Ok(alg.mul(&x, c)?.into_coords())).collect::<Result<_>>()?;
        let span = Subspace::from_vectors(field, n, xc)?;
        let w = span.intersect(center)?;
        let ws: Vec<Element> = w.basis_vectors().map(|v| alg.element(v.to_vec())).collect::<Result<_>>()?;
        // λ with Σ λ_i w c_i = 0 for every basis vector w of W
        let rows = cs
            .iter()
            .map(|c| {
                Ok(ws
                    .iter()
                    .map(|w| alg.mul(w, c))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .flat_map(Element::into_coords)
                    .collect())
            })
            .collect::<Result<Vec<Vec<Scalar>>>>()?;
        let lambdas = if ws.is_empty() {
            Subspace::full(field, cs.len())
        } else {
            left_kernel(&Matrix::from_rows(field, ws.len() * n, rows)?)
        };
        let ann: Vec<Element> = lambdas
            .basis_vectors()
            .map(|l| l.iter().zip(&cs).fold(alg.zero(), |acc, (s, c)| acc.add(&c.scale(s))))
            .collect();
        for b in span.basis_vectors() {
            let b = alg.element(b.to_vec())?;
            for c in &ann {
                let cand = alg.mul(&b, c)?;
                if !cand.is_zero() && ce_witness(alg, &cand)?.is_none() {
                    return Ok(Some(cand));
                }
            }
        }
    }
    Ok(None)
}

fn finite_failure_witness(
    ring: &FiniteRing,
    center: &ResidueModule,
    socles: &[&ResidueModule],
) -> Result<Option<Vec<u64>>> {
    for s in socles {
        for a in s.basis() {
            let mut candidates = vec![a.clone()];
            for c in center.basis() {
                candidates.push(ring.mul(a, c));
            }
            for cand in candidates {
                if !FiniteRing::is_zero(&cand)
                    && !center.contains_vector(&cand)
                    && ce_witness_finite(ring, &cand)?.is_none()
                {
                    return Ok(Some(cand));
                }
            }
        }
    }
    // the complement construction of the algebra case, over C/J(C) a product
    // of finite fields
    let Some(socle) = socles.last() else { return Ok(None) };
    for x in socle.basis().iter().filter(|v| !center.contains_vector(v)) {
        let span = finite::span(ring, &center.basis().iter().map(|c| ring.mul(x, c)).collect::<Vec<_>>())?;
        let w = span.intersect(center)?;
        let ann = finite::right_annihilator(ring, &w)?.intersect(center)?;
        for b in span.basis() {
            for c in ann.basis() {
                let cand = ring.mul(b, c);
                if !FiniteRing::is_zero(&cand) && ce_witness_finite(ring, &cand)?.is_none() {
                    return Ok(Some(cand));
                }
            }
        }
    }
    Ok(None)
}

/// Central `x` with `y = a·x` central and nonzero, or `None` when `aC ∩ C = 0`.
pub fn ce_witness(alg: &Algebra, a: &Element) -> Result<Option<(Element, Element)>> {
    if a.coords().len() != alg.dim() {
        return Err(Error::ParentMismatch(format!(
            "element of length {} in algebra of dimension {}",
            a.coords().len(),
            alg.dim()
        )));
    }
    if a.is_zero() {
        return Err(Error::InvalidArgument("witness requested for a = 0".into()));
    }
    let center = field::center(alg);
    if center.contains_vector(a.coords()) {
        return Ok(Some((alg.one(), a.clone())));
    }
    let cs: Vec<Element> = center.basis_vectors().map(|v| alg.element(v.to_vec())).collect::<Result<_>>()?;
    let products: Vec<Element> = cs.iter().map(|c| alg.mul(a, c)).collect::<Result<_>>()?;
    // λ with Σ λ_i a c_i ∈ C: left kernel of the products reduced modulo C
    let reduced = products.iter().map(|p| center.reduce(p.coords())).collect();
    let lambdas = left_kernel(&Matrix::from_rows(alg.field(), alg.dim(), reduced)?);
    for lambda in lambdas.basis_vectors() {
        let mut x = alg.zero();
        let mut y = alg.zero();
        for ((l, c), p) in lambda.iter().zip(&cs).zip(&products) {
            x = x.add(&c.scale(l));
            y = y.add(&p.scale(l));
        }
        if !y.is_zero() {
            return Ok(Some((x, y)));
        }
    }
    Ok(None)
}

/// Finite-ring version of [`ce_witness`], using Howell forms.
pub fn ce_witness_finite(ring: &FiniteRing, a: &[u64]) -> Result<Option<(Vec<u64>, Vec<u64>)>> {
    if a.len() != ring.rank() {
        return Err(Error::ParentMismatch(format!("element of length {} in ring of rank {}", a.len(), ring.rank())));
    }
    let a = ring.reduce(&a.iter().map(|&x| x as i64).collect::<Vec<_>>());
    if FiniteRing::is_zero(&a) {
        return Err(Error::InvalidArgument("witness requested for a = 0".into()));
    }
    let center = finite::center(ring)?;
    if center.contains_vector(&a) {
        return Ok(Some((ring.one(), a)));
    }
    // {x ∈ C : a x ∈ C} = second halves of rows of <(a c, c), (c, 0)> with
    // vanishing first half.
    let k = ring.rank();
    let doubled: Vec<u64> = ring.moduli().iter().chain(ring.moduli()).copied().collect();
    let mut gens = Vec::new();
    for c in center.basis() {
        gens.push([ring.mul(&a, c), c.clone()].concat());
        gens.push([c.clone(), vec![0; k]].concat());
    }
    let gens: Vec<Vec<i64>> = gens.iter().map(|g| g.iter().map(|&x| x as i64).collect()).collect();
    let joint = howell(&gens, &doubled)?;
    for row in joint.basis() {
        if row[..k].iter().any(|&x| x != 0) {
            continue;
        }
        let x = row[k..].to_vec();
        let y = ring.mul(&a, &x);
        if !FiniteRing::is_zero(&y) {
            return Ok(Some((x, y)));
        }
    }
    Ok(None)
}

/// Scans every element: CE iff each nonzero `a` has a central `x` with `a·x`
/// central and nonzero. The reported witness is the first failing element in
/// enumeration order.
pub fn is_ce_exhaustive(ring: &FiniteRing, bound: u128) -> Result<CEReport> {
    let commutative = ring.is_commutative();
    if let Err(e @ Error::BoundExceeded { .. }) = ring.check_bound(bound) {
        return Ok(CEReport::undecided(Method::Exhaustive, commutative, e.to_string()));
    }
    let central = finite::exhaustive_center(ring, bound)?;
    let central_set: HashSet<&[u64]> = central.iter().map(|v| v.as_slice()).collect();
    let nonzero_central: Vec<&Vec<u64>> = central.iter().filter(|v| !FiniteRing::is_zero(v)).collect();
    let fails = |i: u128| {
        let a = ring.element_at(i);
        if central_set.contains(a.as_slice()) {
            return false;
        }
        !nonzero_central.iter().any(|x| {
            let y = ring.mul(&a, x);
            !FiniteRing::is_zero(&y) && central_set.contains(y.as_slice())
        })
    };
    let first = (1..ring.order()).into_par_iter().find_first(|&i| fails(i));
    let mut report = CEReport {
        decision: first.is_none().into(),
        method: Method::Exhaustive,
        reason: None,
        commutative,
        witness_failure: first.map(|i| int_strings(&ring.element_at(i))),
        prop34: Prop34Flags::unknown("invariants unavailable"),
        invariants: None,
        consistency: Vec::new(),
    };
    if let Ok(inv) = InvariantSet::compute(&AnyRing::Finite(ring.clone())) {
        report.prop34 = Prop34Flags::from_invariants(&inv)?;
        report.invariants = Some(inv);
    }
    report.check_consistency();
    Ok(report)
}

/// Runs the subspace criterion and, when the ring is finite and within
/// `bound`, the exhaustive scan as well. A disagreement is recorded in
/// `consistency`.
pub fn decide(ring: &AnyRing, bound: u128) -> Result<CEReport> {
    let mut report = is_ce_subspace(ring)?;
    let finite = match ring {
        AnyRing::Finite(r) => Some(r.clone()),
        AnyRing::Algebra(a) if a.field().characteristic() != 0 => Some(a.to_finite_ring()?),
        AnyRing::Algebra(_) => None,
    };
    let Some(r) = finite else { return Ok(report) };
    if r.order() > bound {
        return Ok(report);
    }
    let ex = is_ce_exhaustive(&r, bound)?;
    report.method = Method::Both;
    if report.decision == Decision::Undecided {
        report.decision = ex.decision;
        report.witness_failure = ex.witness_failure;
    } else if ex.decision != report.decision {
        report
            .consistency
            .push(format!("subspace criterion says {:?}, exhaustive scan says {:?}", report.decision, ex.decision));
    } else if ex.witness_failure.is_some() {
        report.witness_failure = ex.witness_failure;
    }
    Ok(report)
}

/// The subspace report for a local ring; refuses rings that are not known
/// to be local.
pub fn prop34_check(ring: &AnyRing) -> Result<CEReport> {
    let report = is_ce_subspace(ring)?;
    let local = report.invariants.as_ref().map(|i| i.local.clone());
    match local {
        Some(l) if l.status == Locality::Yes => Ok(report),
        Some(l) => Err(Error::Precondition(format!("ring is not known to be local: {}", l.reason))),
        None => Err(Error::Precondition(report.reason.unwrap_or_default())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma21Verdict {
    /// `Hom(A_i, A_j) = 0` for all `i ≠ j`.
    pub homs_vanish: bool,
    pub components_ce: Vec<bool>,
    pub verdict: bool,
    pub direct: Decision,
    pub agrees: bool,
}

/// For `A = ⊕ A_i`: the components are fully invariant and each `End(A_i)`
/// is CE, compared against CE of `End(A)` computed directly.
pub fn lemma21_check(parts: &[FiniteAbelianGroup], bound: u128) -> Result<Lemma21Verdict> {
    let homs_vanish = (0..parts.len()).all(|i| (0..parts.len()).all(|j| i == j || parts[i].hom_order(&parts[j]) == 1));
    let components_ce = parts
        .iter()
        .map(|p| {
            let r = AnyRing::Finite(endomorphism_ring(p, bound)?);
            Ok(is_ce_subspace(&r)?.decision == Decision::True)
        })
        .collect::<Result<Vec<_>>>()?;
    let verdict = homs_vanish && components_ce.iter().all(|&b| b);
    let whole = FiniteAbelianGroup::new(parts.iter().flat_map(|p| p.summands().iter().copied()).collect())?;
    let direct = is_ce_subspace(&AnyRing::Finite(endomorphism_ring(&whole, bound)?))?.decision;
    Ok(Lemma21Verdict { homs_vanish, components_ce, verdict, direct, agrees: Decision::from(verdict) == direct })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldSpec;
    use crate::gallery::{grassmann, matrix_algebra, rank3_algebra, Rank3Kind};

    #[test]
    fn every_failure_in_the_catalog_has_a_witness() {
        for spec in crate::gallery::catalog() {
            let ring = spec.build(1 << 20).unwrap();
            let r = is_ce_subspace(&ring).unwrap();
            if r.decision != Decision::False {
                continue;
            }
            let w = r.witness_failure.unwrap_or_else(|| panic!("{}: no witness", spec.name()));
            let none = match &ring {
                AnyRing::Algebra(a) => {
                    let e = a.element(w.iter().map(|s| a.field().parse(s).unwrap()).collect()).unwrap();
                    ce_witness(a, &e).unwrap().is_none()
                }
                AnyRing::Finite(f) => {
                    ce_witness_finite(f, &w.iter().map(|s| s.parse().unwrap()).collect::<Vec<u64>>()).unwrap().is_none()
                }
            };
            assert!(none, "{}", spec.name());
        }
    }

    #[test]
    fn grassmann_parity_small() {
        for n in 1..=4 {
            let r = is_ce_subspace(&AnyRing::Algebra(grassmann(n, FieldSpec::Rationals).unwrap())).unwrap();
            assert_eq!(r.decision, Decision::from(n % 2 == 1), "n = {n}");
            assert!(r.consistency.is_empty(), "{:?}", r.consistency);
        }
    }

    #[test]
    fn t_fails_with_witness_in_m() {
        let t = rank3_algebra(&Rank3Kind::T, FieldSpec::Rationals).unwrap();
        let r = is_ce_subspace(&AnyRing::Algebra(t.clone())).unwrap();
        assert_eq!(r.decision, Decision::False);
        assert_eq!(r.witness_failure.unwrap(), ["0", "0", "0", "1"]);
        assert_eq!(r.prop34.quotient_commutative, Tri::True);
        assert_eq!(r.prop34.every_min_ideal_meets_center, Tri::False);
        assert!(ce_witness(&t, &t.basis_element(3)).unwrap().is_none());
    }

    #[test]
    fn witness_in_grassmann() {
        let g = grassmann(3, FieldSpec::Rationals).unwrap();
        let (x, y) = ce_witness(&g, &g.basis_element(1)).unwrap().unwrap();
        let c = field::center(&g);
        assert!(c.contains_vector(x.coords()) && c.contains_vector(y.coords()));
        assert_eq!(g.mul(&g.basis_element(1), &x).unwrap(), y);
        assert!(!y.is_zero());
        assert!(ce_witness(&g, &g.zero()).is_err());
        let one = g.one();
        assert_eq!(ce_witness(&g, &one).unwrap().unwrap(), (one.clone(), one));
    }

    #[test]
    fn mat2_f2_exhaustive_witness() {
        let m = matrix_algebra(2, FieldSpec::prime(2).unwrap()).unwrap().to_finite_ring().unwrap();
        let r = is_ce_exhaustive(&m, 1 << 10).unwrap();
        assert_eq!(r.decision, Decision::False);
        assert_eq!(r.witness_failure.unwrap(), ["1", "0", "0", "0"]);
        assert!(ce_witness_finite(&m, &[1, 0, 0, 0]).unwrap().is_none());
        let s = is_ce_subspace(&AnyRing::Finite(m)).unwrap();
        assert_eq!(s.decision, Decision::False);
        assert!(s.witness_failure.is_some());
    }

    #[test]
    fn bound_gives_undecided() {
        let m = matrix_algebra(2, FieldSpec::prime(2).unwrap()).unwrap().to_finite_ring().unwrap();
        let r = is_ce_exhaustive(&m, 10).unwrap();
        assert_eq!(r.decision, Decision::Undecided);
        assert!(r.reason.unwrap().contains("16"));
    }

    #[test]
    fn local_criteria_require_a_local_ring() {
        let m = matrix_algebra(2, FieldSpec::prime(2).unwrap()).unwrap();
        assert!(matches!(prop34_check(&AnyRing::Algebra(m)), Err(Error::Precondition(_))));
    }

    #[test]
    fn direct_sum_examples() {
        let g = |s: &str| s.parse::<FiniteAbelianGroup>().unwrap();
        let v = lemma21_check(&[g("2:2"), g("3:2")], 1 << 20).unwrap();
        assert!(v.verdict && v.agrees);
        let v = lemma21_check(&[g("2:1"), g("2:2")], 1 << 20).unwrap();
        assert!(!v.verdict && !v.homs_vanish && v.agrees);
        let v = lemma21_check(&[g("2:1"), g("2:1")], 1 << 20).unwrap();
        assert!(!v.verdict && v.agrees);
    }
}
