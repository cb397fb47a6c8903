//! JSON wire format. Numbers travel as decimal strings (`"p/q"` for
//! rationals); matrices as `{"rows": [[...], ...]}`; Laurent polynomials as
//! maps from exponent strings to coefficient strings.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::invariants::{
    BlanchfieldMatrix, DistinguishReport, ElementaryIdeal, EvaluatedIdeal, IntegralWitness, ModuleDecomposition,
    ScalarForm,
};
use crate::lattice::{AdjacencyWitness, AdjacentSeifertPair, ChainReport, ChainStep, Lattice, ScalarSpace};
use crate::laurent::Laurent;
use crate::matrix::Matrix;
use crate::ratfunc::RationalFunction;
use crate::seifert::{Certificate, ElementaryMove, Flavor, SeifertMatrix};
use crate::symplectic::{delta, DeltaMatrix, DeltaRealization, Factor, SymplecticFactorization};
use crate::Rational;

/// Conversion to and from the JSON wire format.
pub trait Wire: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| perr(format!("missing field {key:?}")))
}

fn as_array(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| perr(format!("expected an array, got {v}")))
}

fn as_bool(v: &Value) -> Result<bool> {
    v.as_bool().ok_or_else(|| perr(format!("expected a boolean, got {v}")))
}

fn as_str(v: &Value) -> Result<&str> {
    v.as_str().ok_or_else(|| perr(format!("expected a string, got {v}")))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || perr(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(perr(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

impl Wire for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(BigInt::from(n.as_i64().unwrap()))),
            other => Err(perr(format!("expected a rational string, got {other}"))),
        }
    }
}

impl Wire for BigInt {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        let r = Rational::from_json(v)?;
        if !r.is_integer() {
            return Err(perr(format!("expected an integer, got {r}")));
        }
        Ok(r.to_integer())
    }
}

impl Wire for bool {
    fn to_json(&self) -> Value {
        Value::Bool(*self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        as_bool(v)
    }
}

impl<T: Wire> Wire for Vec<T> {
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(Wire::to_json).collect())
    }

    fn from_json(v: &Value) -> Result<Self> {
        as_array(v)?.iter().map(T::from_json).collect()
    }
}

impl<T: Wire> Wire for Option<T> {
    fn to_json(&self) -> Value {
        self.as_ref().map_or(Value::Null, Wire::to_json)
    }

    fn from_json(v: &Value) -> Result<Self> {
        if v.is_null() {
            Ok(None)
        } else {
            T::from_json(v).map(Some)
        }
    }
}

impl Wire for Laurent {
    fn to_json(&self) -> Value {
        let m: Map<String, Value> = self.terms().map(|(e, c)| (e.to_string(), c.to_json())).collect();
        Value::Object(m)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| perr(format!("expected a Laurent polynomial object, got {v}")))?;
        let terms = obj
            .iter()
            .map(|(e, c)| {
                let e: i64 = e.trim().parse().map_err(|_| perr(format!("bad exponent {e:?}")))?;
                Ok((e, Rational::from_json(c)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Laurent::from_terms(terms))
    }
}

impl Wire for RationalFunction {
    fn to_json(&self) -> Value {
        json!({"num": self.numerator().to_json(), "den": self.denominator().to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        RationalFunction::new(Laurent::from_json(field(v, "num")?)?, Laurent::from_json(field(v, "den")?)?)
    }
}

impl<T: Wire> Wire for Matrix<T> {
    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self.rows_iter().map(|r| Value::Array(r.iter().map(Wire::to_json).collect())).collect();
        json!({ "rows": rows })
    }

    /// Accepts `{"rows": [...]}` or a bare array of rows.
    fn from_json(v: &Value) -> Result<Self> {
        let rows = match v {
            Value::Object(o) => o.get("rows").ok_or_else(|| perr("matrix object needs a \"rows\" field"))?,
            other => other,
        };
        let rows: Vec<Vec<T>> = as_array(rows)?.iter().map(Vec::<T>::from_json).collect::<Result<_>>()?;
        Matrix::from_rows(rows).map_err(|e| perr(format!("ragged matrix: {e}")))
    }
}

impl Wire for SeifertMatrix {
    fn to_json(&self) -> Value {
        self.matrix().to_json()
    }

    /// Parses and validates.
    fn from_json(v: &Value) -> Result<Self> {
        SeifertMatrix::validate(Matrix::from_json(v)?)
    }
}

impl Wire for Flavor {
    fn to_json(&self) -> Value {
        Value::String(self.name().into())
    }

    fn from_json(v: &Value) -> Result<Self> {
        Flavor::parse(as_str(v)?)
    }
}

impl Wire for ElementaryMove {
    fn to_json(&self) -> Value {
        let kind = self.kind().name();
        match self {
            ElementaryMove::RowEnlarge { x, rho } | ElementaryMove::ColEnlarge { x, rho } => {
                json!({"kind": kind, "x": x.to_json(), "rho": rho.to_json()})
            }
            ElementaryMove::Congruence { p } => json!({"kind": kind, "P": p.to_json()}),
            ElementaryMove::RowReduce | ElementaryMove::ColReduce => json!({ "kind": kind }),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        let kind = as_str(field(v, "kind")?)?;
        let enl = || -> Result<(Rational, Vec<Rational>)> {
            Ok((Rational::from_json(field(v, "x")?)?, Vec::from_json(field(v, "rho")?)?))
        };
        Ok(match kind {
            "row_enlarge" => {
                let (x, rho) = enl()?;
                ElementaryMove::RowEnlarge { x, rho }
            }
            "col_enlarge" => {
                let (x, rho) = enl()?;
                ElementaryMove::ColEnlarge { x, rho }
            }
            "row_reduce" => ElementaryMove::RowReduce,
            "col_reduce" => ElementaryMove::ColReduce,
            "congruence" => ElementaryMove::Congruence { p: Matrix::from_json(field(v, "P")?)? },
            other => return Err(perr(format!("unknown move kind {other:?}"))),
        })
    }
}

impl Wire for Certificate {
    fn to_json(&self) -> Value {
        json!({"flavor": self.flavor.to_json(), "moves": self.moves.to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(Certificate { flavor: Flavor::from_json(field(v, "flavor")?)?, moves: Vec::from_json(field(v, "moves")?)? })
    }
}

impl Wire for SymplecticFactorization {
    fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .factors
            .iter()
            .map(|f| match f {
                Factor::Delta(d) => json!({"kind": "delta", "n": d.n().to_json()}),
                Factor::Integral(p) => json!({"kind": "integral", "P": p.to_json()}),
            })
            .collect();
        json!({"size": self.size, "factors": factors})
    }

    /// `size` may be omitted when some factor is integral.
    fn from_json(v: &Value) -> Result<Self> {
        let raw = as_array(field(v, "factors")?)?;
        let mut size = v.get("size").and_then(Value::as_u64).map(|s| s as usize);
        if size.is_none() {
            size = raw
                .iter()
                .find_map(|f| f.get("P").map(|p| Matrix::<Rational>::from_json(p).map(|m| m.nrows())))
                .transpose()?;
        }
        let size = size.ok_or_else(|| perr("factorization needs a \"size\" field"))?;
        let factors = raw
            .iter()
            .map(|f| match as_str(field(f, "kind")?)? {
                "delta" => Ok(Factor::Delta(delta(&Rational::from_json(field(f, "n")?)?, size)?)),
                "integral" => Ok(Factor::Integral(Matrix::from_json(field(f, "P")?)?)),
                other => Err(perr(format!("unknown factor kind {other:?}"))),
            })
            .collect::<Result<_>>()?;
        Ok(SymplecticFactorization { size, factors })
    }
}

impl Wire for DeltaMatrix {
    fn to_json(&self) -> Value {
        json!({"n": self.n().to_json(), "size": self.size()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let size = field(v, "size")?.as_u64().ok_or_else(|| perr("size must be a nonnegative integer"))?;
        delta(&Rational::from_json(field(v, "n")?)?, size as usize)
    }
}

impl Wire for DeltaRealization {
    fn to_json(&self) -> Value {
        json!({
            "tilde_V": self.tilde_v.to_json(),
            "P": self.p.to_json(),
            "tilde_W": self.tilde_w.to_json(),
            "certificate": self.certificate.to_json(),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(DeltaRealization {
            tilde_v: SeifertMatrix::from_json(field(v, "tilde_V")?)?,
            p: Matrix::from_json(field(v, "P")?)?,
            tilde_w: SeifertMatrix::from_json(field(v, "tilde_W")?)?,
            certificate: Certificate::from_json(field(v, "certificate")?)?,
        })
    }
}

impl Wire for IntegralWitness {
    fn to_json(&self) -> Value {
        json!({
            "ideal_index": self.ideal_index,
            "point": self.point.to_json(),
            "values": [self.values.0.to_json(), self.values.1.to_json()],
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let values: Vec<BigInt> = Vec::from_json(field(v, "values")?)?;
        let [a, b]: [BigInt; 2] = values.try_into().map_err(|_| perr("witness needs exactly two values"))?;
        Ok(IntegralWitness {
            ideal_index: field(v, "ideal_index")?.as_u64().ok_or_else(|| perr("bad ideal_index"))? as usize,
            point: Rational::from_json(field(v, "point")?)?,
            values: (a, b),
        })
    }
}

impl Wire for DistinguishReport {
    fn to_json(&self) -> Value {
        json!({
            "rational": {"alexander_equal": self.alexander_equal, "factors_equal": self.factors_equal},
            "integral": {"witness": self.integral_witness.to_json()},
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let r = field(v, "rational")?;
        Ok(DistinguishReport {
            alexander_equal: as_bool(field(r, "alexander_equal")?)?,
            factors_equal: as_bool(field(r, "factors_equal")?)?,
            integral_witness: Option::from_json(field(field(v, "integral")?, "witness")?)?,
        })
    }
}

impl Wire for ModuleDecomposition {
    fn to_json(&self) -> Value {
        json!({ "invariant_factors": self.invariant_factors.to_json() })
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(ModuleDecomposition { invariant_factors: Vec::from_json(field(v, "invariant_factors")?)? })
    }
}

impl Wire for BlanchfieldMatrix {
    fn to_json(&self) -> Value {
        json!({"entries": self.entries.to_json(), "reduced": self.reduced.to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(BlanchfieldMatrix {
            entries: Matrix::from_json(field(v, "entries")?)?,
            reduced: Matrix::from_json(field(v, "reduced")?)?,
        })
    }
}

impl Wire for ScalarForm {
    fn to_json(&self) -> Value {
        json!({"S": self.matrix.to_json(), "equals_J": self.equals_j})
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(ScalarForm { matrix: Matrix::from_json(field(v, "S")?)?, equals_j: as_bool(field(v, "equals_J")?)? })
    }
}

impl Wire for ElementaryIdeal {
    fn to_json(&self) -> Value {
        json!({"index": self.index, "generators": self.generators.to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(ElementaryIdeal {
            index: field(v, "index")?.as_u64().ok_or_else(|| perr("bad index"))? as usize,
            generators: Vec::from_json(field(v, "generators")?)?,
        })
    }
}

impl Wire for EvaluatedIdeal {
    fn to_json(&self) -> Value {
        json!({
            "point": self.point.to_json(),
            "values": self.values.to_json(),
            "generator": self.generator.to_json(),
            "ring": self.ring(),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(EvaluatedIdeal {
            point: Rational::from_json(field(v, "point")?)?,
            values: Vec::from_json(field(v, "values")?)?,
            generator: BigInt::from_json(field(v, "generator")?)?,
        })
    }
}

impl Wire for ScalarSpace {
    fn to_json(&self) -> Value {
        json!({"Z": self.z_matrix().to_json(), "Phi": self.form_matrix().to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        ScalarSpace::new(Matrix::from_json(field(v, "Z")?)?, Matrix::from_json(field(v, "Phi")?)?)
    }
}

impl Wire for Lattice {
    fn to_json(&self) -> Value {
        json!({"space": self.space().to_json(), "basis": self.basis().to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        Lattice::new(ScalarSpace::from_json(field(v, "space")?)?, Matrix::from_json(field(v, "basis")?)?)
    }
}

impl Wire for AdjacencyWitness {
    fn to_json(&self) -> Value {
        json!({"n": self.n.to_json(), "basis_b": self.basis_b.to_json(), "basis_b_prime": self.basis_b_prime.to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(AdjacencyWitness {
            n: BigInt::from_json(field(v, "n")?)?,
            basis_b: Matrix::from_json(field(v, "basis_b")?)?,
            basis_b_prime: Matrix::from_json(field(v, "basis_b_prime")?)?,
        })
    }
}

impl Wire for AdjacentSeifertPair {
    fn to_json(&self) -> Value {
        json!({"n": self.n.to_json(), "source": self.source.to_json(), "target": self.target.to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(AdjacentSeifertPair {
            n: BigInt::from_json(field(v, "n")?)?,
            source: SeifertMatrix::from_json(field(v, "source")?)?,
            target: SeifertMatrix::from_json(field(v, "target")?)?,
        })
    }
}

impl Wire for ChainReport {
    fn to_json(&self) -> Value {
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| json!({"index": s.index, "adjacency": s.adjacency.to_json(), "z_inclusion": s.z_inclusion}))
            .collect();
        let inadmissible: Vec<Value> = self.inadmissible.iter().map(|&i| json!(i)).collect();
        json!({"valid": self.is_valid(), "inadmissible": inadmissible, "steps": steps})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let idx = |x: &Value| x.as_u64().map(|i| i as usize).ok_or_else(|| perr("bad index"));
        let inadmissible = as_array(field(v, "inadmissible")?)?.iter().map(idx).collect::<Result<_>>()?;
        let steps = as_array(field(v, "steps")?)?
            .iter()
            .map(|s| {
                Ok(ChainStep {
                    index: idx(field(s, "index")?)?,
                    adjacency: Option::from_json(field(s, "adjacency")?)?,
                    z_inclusion: as_bool(field(s, "z_inclusion")?)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(ChainReport { inadmissible, steps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::MatrixQ;
    use crate::{int, rat};

    fn round_trip<T: Wire + PartialEq + std::fmt::Debug>(x: &T) {
        let text = serde_json::to_string(&x.to_json()).unwrap();
        let back = T::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(&back, x, "{text}");
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_rational(" -3/6 ").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(Rational::from_json(&json!(4)).unwrap(), int(4));
        round_trip(&rat(-7, 3));
        round_trip(&Laurent::from_ints(-2, &[1, 0, -5]));
        round_trip(&Laurent::zero());
        assert_eq!(Laurent::from_ints(0, &[-2, 5, -2]).to_json(), json!({"0": "-2", "1": "5", "2": "-2"}));
    }

    #[test]
    fn structures() {
        let v = SeifertMatrix::from_i64(&[&[-1, 0], &[1, 2]]).unwrap();
        round_trip(&v);
        assert_eq!(v.to_json(), json!({"rows": [["-1", "0"], ["1", "2"]]}));
        assert_eq!(SeifertMatrix::from_json(&json!([["-1", "0"], ["1", "2"]])).unwrap(), v);
        assert!(SeifertMatrix::from_json(&json!({"rows": [["0", "-1"], ["1", "0"]]})).is_err());
        let cert = Certificate::new(
            Flavor::Rational,
            vec![
                ElementaryMove::RowEnlarge { x: rat(1, 2), rho: vec![int(2), int(3)] },
                ElementaryMove::Congruence { p: MatrixQ::identity(4) },
                ElementaryMove::RowReduce,
            ],
        );
        round_trip(&cert);
        assert_eq!(cert.to_json()["moves"][0], json!({"kind": "row_enlarge", "x": "1/2", "rho": ["2", "3"]}));
        let f = crate::symplectic::factor_symplectic(
            &MatrixQ::from_rows(vec![vec![int(1), rat(1, 2)], vec![int(0), int(1)]]).unwrap(),
        )
        .unwrap();
        round_trip(&f);
        assert_eq!(f.to_json()["factors"][0], json!({"kind": "delta", "n": "1/2"}));
    }
}
