//! Concrete rings: group algebras, Grassmann algebras, triangular matrix
//! algebras, endomorphism rings of finite abelian groups and the derivation
//! ring over `Z[x, y]`.

mod abelian;
mod algebras;
mod derivation;
mod groups;

pub use abelian::{abelian_groups_up_to, endomorphism_ring, FiniteAbelianGroup};
pub use algebras::{from_matrix_basis, grassmann, matrix_algebra, rank3_algebra, upper_triangular, Rank3Kind};
pub use derivation::{
    derivation_ring_ce_sample, derivation_ring_commutator, derivation_ring_is_central, derivation_ring_mul,
    random_derivation_element, DerivationRingElement, DerivationSample, IntPoly2,
};
pub use groups::{cyclic_group, dihedral_group, group_algebra, quaternion_group, symmetric_group, FiniteGroupTable};

use crate::algebra::AnyRing;
use crate::error::{Error, Result};
use crate::exactlin::FieldSpec;

/// A named gallery constructor with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GallerySpec {
    Grassmann { n: usize, field: FieldSpec },
    GroupAlgebra { group: String, field: FieldSpec },
    Rank3 { kind: Rank3Kind, field: FieldSpec },
    Matrix { n: usize, field: FieldSpec },
    UpperTriangular { n: usize, field: FieldSpec },
    EndRing { group: FiniteAbelianGroup },
}

/// Group by name: `q8`, `s3`, `c<n>`, `d<n>` (dihedral of order `2n`).
pub fn group_by_name(name: &str) -> Result<FiniteGroupTable> {
    let lower = name.to_ascii_lowercase();
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::InvalidArgument(format!("unknown group {name:?}")));
    match lower.as_str() {
        "q8" => Ok(quaternion_group()),
        s if s.starts_with('s') => symmetric_group(num(&s[1..])?),
        s if s.starts_with('c') => cyclic_group(num(&s[1..])?),
        s if s.starts_with('d') => dihedral_group(num(&s[1..])?),
        _ => Err(Error::InvalidArgument(format!("unknown group {name:?}"))),
    }
}

impl GallerySpec {
    pub fn build(&self, bound: u128) -> Result<AnyRing> {
        Ok(match self {
            GallerySpec::Grassmann { n, field } => AnyRing::Algebra(grassmann(*n, *field)?),
            GallerySpec::GroupAlgebra { group, field } => {
                AnyRing::Algebra(group_algebra(&group_by_name(group)?, *field))
            }
            GallerySpec::Rank3 { kind, field } => AnyRing::Algebra(rank3_algebra(kind, *field)?),
            GallerySpec::Matrix { n, field } => AnyRing::Algebra(matrix_algebra(*n, *field)?),
            GallerySpec::UpperTriangular { n, field } => AnyRing::Algebra(upper_triangular(*n, *field)?),
            GallerySpec::EndRing { group } => AnyRing::Finite(endomorphism_ring(group, bound)?),
        })
    }

    pub fn name(&self) -> String {
        match self {
            GallerySpec::Grassmann { n, field } => format!("grassmann(n={n}, {field})"),
            GallerySpec::GroupAlgebra { group, field } => format!("{field}[{group}]"),
            GallerySpec::Rank3 { kind, field } => match kind {
                Rank3Kind::S(k) => format!("rank3 S(k={k}) over {field}"),
                other => format!("rank3 {other:?} over {field}"),
            },
            GallerySpec::Matrix { n, field } => format!("Mat{n}({field})"),
            GallerySpec::UpperTriangular { n, field } => format!("UT{n}({field})"),
            GallerySpec::EndRing { group } => format!("End({group})"),
        }
    }
}

/// The standing collection of gallery rings used by the sweeps.
pub fn catalog() -> Vec<GallerySpec> {
    let q = FieldSpec::Rationals;
    let f = |p| FieldSpec::prime(p).expect("small prime");
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push(GallerySpec::Grassmann { n, field: q });
    }
    for n in 1..=4 {
        out.push(GallerySpec::Grassmann { n, field: f(3) });
        out.push(GallerySpec::Grassmann { n, field: f(2) });
    }
    out.push(GallerySpec::Grassmann { n: 2, field: f(5) });
    out.push(GallerySpec::Grassmann { n: 3, field: f(5) });
    for (group, field) in [
        ("q8", f(2)),
        ("q8", f(3)),
        ("q8", q),
        ("c2", f(2)),
        ("c2", q),
        ("c3", f(2)),
        ("c3", f(3)),
        ("c4", f(2)),
        ("c6", f(2)),
        ("s3", f(2)),
        ("s3", f(3)),
        ("s3", q),
        ("d4", f(2)),
        ("d4", f(3)),
    ] {
        out.push(GallerySpec::GroupAlgebra { group: group.into(), field });
    }
    let rational = |s: &str| q.parse(s).expect("rational literal");
    for kind in [Rank3Kind::K, Rank3Kind::R, Rank3Kind::T] {
        out.push(GallerySpec::Rank3 { kind: kind.clone(), field: q });
        out.push(GallerySpec::Rank3 { kind: kind.clone(), field: f(3) });
    }
    for k in ["1", "-2", "7/3"] {
        out.push(GallerySpec::Rank3 { kind: Rank3Kind::S(rational(k)), field: q });
    }
    out.push(GallerySpec::Rank3 { kind: Rank3Kind::S(f(3).from_i64(2)), field: f(3) });
    for (n, field) in [(2, q), (2, f(2)), (2, f(3)), (3, f(2))] {
        out.push(GallerySpec::Matrix { n, field });
    }
    for (n, field) in [(2, q), (2, f(2)), (3, f(2))] {
        out.push(GallerySpec::UpperTriangular { n, field });
    }
    for g in ["2:1", "2:2", "3:2", "2:1,2:1", "2:1,2:2", "2:1,3:1", "2:2,3:2", "3:1,3:1"] {
        out.push(GallerySpec::EndRing { group: g.parse().expect("group literal") });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_builds_and_validates() {
        for spec in catalog() {
            let ring = spec.build(1 << 20).unwrap();
            assert!(ring.validate().is_empty(), "{}", spec.name());
        }
    }

    #[test]
    fn group_names() {
        assert_eq!(group_by_name("Q8").unwrap().order(), 8);
        assert_eq!(group_by_name("d4").unwrap().order(), 8);
        assert_eq!(group_by_name("c7").unwrap().order(), 7);
        assert!(group_by_name("x9").is_err());
    }
}
