//! Center, Jacobson radical, socles and related invariants.
//!
//! Algebras over a field are handled with exact linear algebra; finite rings
//! over `⊕ Z/m_i` with Howell forms. Both return a [`Submodule`].

pub mod field;
pub mod finite;
mod radical;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{AnyRing, FiniteRing};
use crate::error::{Error, Result};
use crate::exactlin::{ResidueModule, Subspace};

pub use radical::radical as algebra_radical;

/// A canonical subspace (field case) or Howell-form submodule (finite ring case).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Submodule {
    Field(Subspace),
    Residue(ResidueModule),
}

impl Submodule {
    pub fn is_zero(&self) -> bool {
        match self {
            Submodule::Field(s) => s.is_zero(),
            Submodule::Residue(m) => m.is_zero(),
        }
    }

    /// Dimension over the base field, or the number of Howell rows.
    pub fn rank(&self) -> usize {
        match self {
            Submodule::Field(s) => s.dim(),
            Submodule::Residue(m) => m.rank(),
        }
    }

    /// Number of elements, when finite and representable.
    pub fn order(&self) -> Option<u128> {
        match self {
            Submodule::Field(s) => match s.field().characteristic() {
                0 => None,
                p => (p as u128).checked_pow(s.dim() as u32),
            },
            Submodule::Residue(m) => Some(m.order()),
        }
    }

    pub fn contains(&self, other: &Submodule) -> Result<bool> {
        match (self, other) {
            (Submodule::Field(a), Submodule::Field(b)) => a.contains(b),
            (Submodule::Residue(a), Submodule::Residue(b)) => a.contains(b),
            _ => Err(Error::ParentMismatch("field subspace against residue module".into())),
        }
    }

    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        match (self, other) {
            (Submodule::Field(a), Submodule::Field(b)) => Ok(Submodule::Field(a.intersect(b)?)),
            (Submodule::Residue(a), Submodule::Residue(b)) => Ok(Submodule::Residue(a.intersect(b)?)),
            _ => Err(Error::ParentMismatch("field subspace against residue module".into())),
        }
    }

    /// Basis rows rendered as decimal strings.
    pub fn basis_strings(&self) -> Vec<Vec<String>> {
        match self {
            Submodule::Field(s) => s.basis_vectors().map(|v| v.iter().map(|x| x.to_string()).collect()).collect(),
            Submodule::Residue(m) => m.basis().iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect(),
        }
    }

    /// Short human description: `dim 5` or `order 32`.
    pub fn summary(&self) -> String {
        match self {
            Submodule::Field(s) => format!("dim {}", s.dim()),
            Submodule::Residue(m) => format!("order {}", m.order()),
        }
    }
}

impl Serialize for Submodule {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Submodule", 4)?;
        match self {
            Submodule::Field(s) => {
                st.serialize_field("kind", "subspace")?;
                st.serialize_field("dim", &s.dim())?;
            }
            Submodule::Residue(m) => {
                st.serialize_field("kind", "residue_module")?;
                st.serialize_field("rank", &m.rank())?;
            }
        }
        st.serialize_field("order", &self.order().map(|o| o.to_string()))?;
        st.serialize_field("basis", &self.basis_strings())?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Locality {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalVerdict {
    pub status: Locality,
    pub reason: String,
}

impl LocalVerdict {
    pub fn new(status: Locality, reason: impl Into<String>) -> Self {
        LocalVerdict { status, reason: reason.into() }
    }
}

/// The invariants the CE decision and its criteria are built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantSet {
    pub center: Submodule,
    pub radical: Submodule,
    pub center_radical: Submodule,
    pub socle_right: Submodule,
    pub socle_central: Submodule,
    pub quotient_commutative: bool,
    pub semiprime: bool,
    pub local: LocalVerdict,
}

impl InvariantSet {
    pub fn compute(ring: &AnyRing) -> Result<InvariantSet> {
        match ring {
            AnyRing::Algebra(a) => {
                let c = field::center(a);
                let j = radical::radical(a)?;
                let cj = c.intersect(&j)?;
                let socle_right = field::left_annihilator(a, &j);
                let socle_central = field::left_annihilator(a, &cj);
                Ok(InvariantSet {
                    quotient_commutative: field::commutators_in(a, &j),
                    semiprime: j.is_zero(),
                    local: field::locality(a, &j)?,
                    center: Submodule::Field(c),
                    radical: Submodule::Field(j),
                    center_radical: Submodule::Field(cj),
                    socle_right: Submodule::Field(socle_right),
                    socle_central: Submodule::Field(socle_central),
                })
            }
            AnyRing::Finite(r) => {
                let c = finite::center(r)?;
                let j = finite::radical(r)?;
                let cj = c.intersect(&j)?;
                let socle_right = finite::left_annihilator(r, &j)?;
                let socle_central = finite::left_annihilator(r, &cj)?;
                Ok(InvariantSet {
                    quotient_commutative: finite::commutators_in(r, &j),
                    semiprime: j.is_zero(),
                    local: finite::locality(r)?,
                    center: Submodule::Residue(c),
                    radical: Submodule::Residue(j),
                    center_radical: Submodule::Residue(cj),
                    socle_right: Submodule::Residue(socle_right),
                    socle_central: Submodule::Residue(socle_central),
                })
            }
        }
    }
}

pub fn center(ring: &AnyRing) -> Result<Submodule> {
    Ok(match ring {
        AnyRing::Algebra(a) => Submodule::Field(field::center(a)),
        AnyRing::Finite(r) => Submodule::Residue(finite::center(r)?),
    })
}

pub fn radical(ring: &AnyRing) -> Result<Submodule> {
    Ok(match ring {
        AnyRing::Algebra(a) => Submodule::Field(radical::radical(a)?),
        AnyRing::Finite(r) => Submodule::Residue(finite::radical(r)?),
    })
}

/// `Soc(R_R)`, the left annihilator of `J(R)`.
pub fn socle_right(ring: &AnyRing) -> Result<Submodule> {
    Ok(match ring {
        AnyRing::Algebra(a) => Submodule::Field(field::left_annihilator(a, &radical::radical(a)?)),
        AnyRing::Finite(r) => Submodule::Residue(finite::left_annihilator(r, &finite::radical(r)?)?),
    })
}

/// `Soc(R_C)`, the annihilator of `J(C) = C ∩ J(R)`.
pub fn socle_central(ring: &AnyRing) -> Result<Submodule> {
    Ok(InvariantSet::compute(ring)?.socle_central)
}

/// `R/J(R)` is commutative.
pub fn quotient_commutative(ring: &AnyRing) -> Result<bool> {
    Ok(match ring {
        AnyRing::Algebra(a) => field::commutators_in(a, &radical::radical(a)?),
        AnyRing::Finite(r) => finite::commutators_in(r, &finite::radical(r)?),
    })
}

pub fn is_semiprime(ring: &AnyRing) -> Result<bool> {
    Ok(radical(ring)?.is_zero())
}

pub fn is_local(ring: &AnyRing) -> Result<LocalVerdict> {
    match ring {
        AnyRing::Algebra(a) => field::locality(a, &radical::radical(a)?),
        AnyRing::Finite(r) => finite::locality(r),
    }
}

/// Exhaustive radical of a finite ring, re-read as a [`Submodule`].
pub fn exhaustive_radical(ring: &FiniteRing, bound: u128) -> Result<Submodule> {
    Ok(Submodule::Residue(finite::exhaustive_radical(ring, bound)?))
}
