//! JSON encodings shared by the library and the CLI.
//!
//! Rationals are strings `"p/q"` (or `"p"`), so values round-trip exactly.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactq::{fmt_rat, parse_rat, QSubspace, Rat};
use crate::exterior::{ExtVec, WSubspace, DIM_W2};
use crate::schouten::{Exponent, Poly, PolyMultivector};

pub trait JsonCodec: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

fn bad(what: &str) -> Error {
    Error::Parse(format!("malformed {what}"))
}

pub fn rat_to_json(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rat::from_integer(i.into()))
            .ok_or_else(|| bad("rational")),
        _ => Err(bad("rational")),
    }
}

pub fn vec_to_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_to_json).collect())
}

pub fn vec_from_json(v: &Value) -> Result<Vec<Rat>> {
    v.as_array()
        .ok_or_else(|| bad("vector"))?
        .iter()
        .map(rat_from_json)
        .collect()
}

pub fn rows_to_json(rows: &[Vec<Rat>]) -> Value {
    Value::Array(rows.iter().map(|r| vec_to_json(r)).collect())
}

pub fn rows_from_json(v: &Value) -> Result<Vec<Vec<Rat>>> {
    v.as_array()
        .ok_or_else(|| bad("matrix"))?
        .iter()
        .map(vec_from_json)
        .collect()
}

fn usize_list(v: &Value) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| bad("index list"))?
        .iter()
        .map(|x| x.as_u64().map(|u| u as usize).ok_or_else(|| bad("index")))
        .collect()
}

impl JsonCodec for Rat {
    fn to_json(&self) -> Value {
        rat_to_json(self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        rat_from_json(v)
    }
}

impl JsonCodec for ExtVec {
    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(k, c)| json!({"index": k.indices(), "coeff": rat_to_json(c)}))
            .collect();
        json!({"ambient": self.ambient_n(), "grade": self.grade(), "terms": terms})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let n = v["ambient"].as_u64().ok_or_else(|| bad("ext vector"))? as usize;
        let g = v["grade"].as_u64().ok_or_else(|| bad("ext vector"))? as usize;
        let mut out = ExtVec::zero(n, g);
        for t in v["terms"].as_array().ok_or_else(|| bad("ext vector"))? {
            let idx = usize_list(&t["index"])?;
            if idx.len() != g || idx.iter().any(|&i| i >= n) {
                return Err(bad("ext vector index"));
            }
            let c = rat_from_json(&t["coeff"])?;
            out = out.add(&ExtVec::basis(n, &idx).scale(&c));
        }
        Ok(out)
    }
}

impl JsonCodec for WSubspace {
    fn to_json(&self) -> Value {
        json!({"basis": rows_to_json(&self.generators())})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let rows = rows_from_json(&v["basis"])?;
        if rows.iter().any(|r| r.len() != DIM_W2) {
            return Err(bad("W basis"));
        }
        WSubspace::from_vectors(&rows)
    }
}

impl JsonCodec for QSubspace {
    fn to_json(&self) -> Value {
        json!({"ambient": self.ambient_dim(), "basis": rows_to_json(&self.basis_vectors())})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let n = v["ambient"].as_u64().ok_or_else(|| bad("subspace"))? as usize;
        QSubspace::span(n, &rows_from_json(&v["basis"])?)
    }
}

impl JsonCodec for Poly {
    fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|(e, c)| json!({"exp": e.to_vec(), "coeff": rat_to_json(c)}))
                .collect(),
        )
    }

    fn from_json(v: &Value) -> Result<Self> {
        let mut p = Poly::zero();
        for t in v.as_array().ok_or_else(|| bad("polynomial"))? {
            let e = usize_list(&t["exp"])?;
            let exp: Exponent = e
                .iter()
                .map(|&x| u8::try_from(x).map_err(|_| bad("exponent")))
                .collect::<Result<Vec<u8>>>()?
                .try_into()
                .map_err(|_| bad("exponent"))?;
            p.add_term(exp, rat_from_json(&t["coeff"])?);
        }
        Ok(p)
    }
}

impl JsonCodec for PolyMultivector {
    fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .components()
            .map(|(k, p)| json!({"index": k.indices(), "poly": p.to_json()}))
            .collect();
        json!({"grade": self.grade(), "degree": self.degree(), "components": comps})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let g = v["grade"].as_u64().ok_or_else(|| bad("multivector"))? as usize;
        let d = v["degree"].as_u64().ok_or_else(|| bad("multivector"))? as usize;
        let comps = v["components"]
            .as_array()
            .ok_or_else(|| bad("multivector"))?
            .iter()
            .map(|c| Ok((usize_list(&c["index"])?, Poly::from_json(&c["poly"])?)))
            .collect::<Result<Vec<_>>>()?;
        PolyMultivector::from_components(g, d, comps)
    }
}
