//! JSON interchange format shared by the library and the CLI:
//!
//! ```json
//! {"field": {"kind": "Q"}, "dim": 2, "basis": ["1", "t"],
//!  "one": ["1", "0"], "mul": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]]}
//! ```
//!
//! `field` is `{"kind":"Q"}`, `{"kind":"Fp","p":P}` or
//! `{"kind":"Zm","moduli":[m_1, …]}`; the last describes a [`FiniteRing`].
//! Indices are 0-based. Scalars are written as decimal strings (`"-3/2"`);
//! plain JSON integers are accepted on input.

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, FiniteRing};
use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum FieldJson {
    Q,
    Fp { p: u64 },
    Zm { moduli: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarJson {
    Int(i64),
    Text(String),
}

impl ScalarJson {
    fn text(&self) -> String {
        match self {
            ScalarJson::Int(n) => n.to_string(),
            ScalarJson::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingJson {
    field: FieldJson,
    dim: usize,
    basis: Vec<String>,
    one: Vec<ScalarJson>,
    mul: Vec<(usize, usize, usize, ScalarJson)>,
}

/// Either kind of ring the tools operate on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyRing {
    Algebra(Algebra),
    Finite(FiniteRing),
}

impl AnyRing {
    pub fn from_json(text: &str) -> Result<AnyRing> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: RingJson = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            Error::Parse(format!("at `{path}` (line {}, column {}): {inner}", inner.line(), inner.column()))
        })?;
        if raw.basis.len() != raw.dim {
            return Err(Error::Parse(format!("`basis` has {} names but `dim` is {}", raw.basis.len(), raw.dim)));
        }
        if raw.one.len() != raw.dim {
            return Err(Error::Parse(format!("`one` has {} coordinates but `dim` is {}", raw.one.len(), raw.dim)));
        }
        match raw.field {
            FieldJson::Zm { moduli } => {
                if moduli.len() != raw.dim {
                    return Err(Error::Parse(format!(
                        "`field.moduli` has {} entries but `dim` is {}",
                        moduli.len(),
                        raw.dim
                    )));
                }
                let int = |s: &ScalarJson, at: String| -> Result<i64> {
                    s.text()
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("at `{at}`: expected an integer, found {:?}", s.text())))
                };
                let one =
                    raw.one.iter().enumerate().map(|(i, s)| int(s, format!("one[{i}]"))).collect::<Result<Vec<_>>>()?;
                let entries = raw
                    .mul
                    .iter()
                    .enumerate()
                    .map(|(n, (i, j, k, c))| Ok((*i, *j, *k, int(c, format!("mul[{n}][3]"))?)))
                    .collect::<Result<Vec<_>>>()?;
                let ring = FiniteRing::new(moduli, raw.basis, one, entries).map_err(|e| Error::Parse(e.to_string()))?;
                Ok(AnyRing::Finite(ring))
            }
            field => {
                let field = match field {
                    FieldJson::Q => FieldSpec::Rationals,
                    FieldJson::Fp { p } => {
                        FieldSpec::prime(p).map_err(|e| Error::Parse(format!("at `field.p`: {e}")))?
                    }
                    FieldJson::Zm { .. } => unreachable!(),
                };
                let scalar = |s: &ScalarJson, at: String| -> Result<Scalar> {
                    field.parse(&s.text()).map_err(|e| Error::Parse(format!("at `{at}`: {e}")))
                };
                let one = raw
                    .one
                    .iter()
                    .enumerate()
                    .map(|(i, s)| scalar(s, format!("one[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                let entries = raw
                    .mul
                    .iter()
                    .enumerate()
                    .map(|(n, (i, j, k, c))| Ok((*i, *j, *k, scalar(c, format!("mul[{n}][3]"))?)))
                    .collect::<Result<Vec<_>>>()?;
                let alg = Algebra::new(field, raw.basis, one, entries).map_err(|e| Error::Parse(e.to_string()))?;
                Ok(AnyRing::Algebra(alg))
            }
        }
    }

    pub fn to_json(&self) -> String {
        let raw = match self {
            AnyRing::Algebra(a) => RingJson {
                field: match a.field() {
                    FieldSpec::Rationals => FieldJson::Q,
                    FieldSpec::PrimeField { p } => FieldJson::Fp { p },
                },
                dim: a.dim(),
                basis: a.basis_names().to_vec(),
                one: a.one().coords().iter().map(|s| ScalarJson::Text(s.to_string())).collect(),
                mul: a
                    .structure_constants()
                    .into_iter()
                    .map(|(i, j, k, c)| (i, j, k, ScalarJson::Text(c.to_string())))
                    .collect(),
            },
            AnyRing::Finite(r) => RingJson {
                field: FieldJson::Zm { moduli: r.moduli().to_vec() },
                dim: r.rank(),
                basis: r.generator_names().to_vec(),
                one: r.one().iter().map(|x| ScalarJson::Text(x.to_string())).collect(),
                mul: r
                    .structure_constants()
                    .into_iter()
                    .map(|(i, j, k, c)| (i, j, k, ScalarJson::Text(c.to_string())))
                    .collect(),
            },
        };
        serde_json::to_string(&raw).expect("ring JSON is always serializable")
    }

    pub fn validate(&self) -> Vec<crate::algebra::Violation> {
        match self {
            AnyRing::Algebra(a) => a.validate(),
            AnyRing::Finite(r) => r.validate(),
        }
    }

    pub fn is_commutative(&self) -> bool {
        match self {
            AnyRing::Algebra(a) => a.is_commutative(),
            AnyRing::Finite(r) => r.is_commutative(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_dual_numbers() {
        let text = r#"{"field":{"kind":"Q"},"dim":2,"basis":["1","t"],"one":["1","0"],
            "mul":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"]]}"#;
        let AnyRing::Algebra(a) = AnyRing::from_json(text).unwrap() else { panic!("expected algebra") };
        assert_eq!(a.dim(), 2);
        assert!(a.validate().is_empty());
        let back = AnyRing::from_json(&AnyRing::Algebra(a.clone()).to_json()).unwrap();
        assert_eq!(back, AnyRing::Algebra(a));
    }

    #[test]
    fn rational_constants_survive() {
        let text = r#"{"field":{"kind":"Q"},"dim":1,"basis":["1"],"one":["1"],"mul":[[0,0,0,"1"]]}"#;
        let mut json: serde_json::Value = serde_json::from_str(text).unwrap();
        json["one"][0] = "2/4".into();
        let ring = AnyRing::from_json(&json.to_string()).unwrap();
        assert!(ring.to_json().contains("\"1/2\""));
    }

    #[test]
    fn finite_ring_and_integer_scalars() {
        let text = r#"{"field":{"kind":"Zm","moduli":[4]},"dim":1,"basis":["1"],"one":[1],"mul":[[0,0,0,5]]}"#;
        let AnyRing::Finite(r) = AnyRing::from_json(text).unwrap() else { panic!("expected finite ring") };
        assert_eq!(r.generator_product(0, 0), vec![1]);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let err =
            AnyRing::from_json(r#"{"field":{"kind":"Q"},"dim":1,"basis":["1"],"one":["x"],"mul":[]}"#).unwrap_err();
        assert!(err.to_string().contains("one[0]"), "{err}");
        let err = AnyRing::from_json(r#"{"field":{"kind":"Fp","p":4},"dim":1,"basis":["1"],"one":["1"],"mul":[]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("field.p"), "{err}");
        let err = AnyRing::from_json("{\"field\": {\"kind\": \"Q\"},\n \"dim\": \"two\"}").unwrap_err();
        assert!(err.to_string().contains("dim") && err.to_string().contains("line 2"), "{err}");
        assert!(AnyRing::from_json("not json").is_err());
    }
}
