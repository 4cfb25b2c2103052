//! JSON formats for complexes, chains, cell posets and collapse
//! certificates. Output is canonical: keys sorted, simplices sorted, one
//! line terminated by a newline, so parsing and re-serializing is
//! byte-identical.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::cell_complex::{Cell, CellPoset};
use crate::chain::Chain;
use crate::collapse::{CollapseCertificate, CollapseStep};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::simplex::Simplex;

fn object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::malformed(at, "expected an object"))
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::malformed(key, "missing"))
}

fn uint(v: &Value, at: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::malformed(at, "expected a non-negative integer"))
}

fn int(v: &Value, at: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::malformed(at, "expected an integer"))
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::malformed(at, "expected an array"))
}

fn string<'a>(v: &'a Value, at: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::malformed(at, "expected a string"))
}

fn field_of(obj: &Map<String, Value>) -> Result<Field> {
    let p = uint(get(obj, "p")?, "p")?;
    Field::new(p).map_err(|e| Error::malformed("p", e.to_string()))
}

fn simplex_at(v: &Value, n: u32, at: &str) -> Result<Simplex> {
    let verts = array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let x = uint(x, &format!("{at}[{i}]"))?;
            u32::try_from(x)
                .map_err(|_| Error::malformed(format!("{at}[{i}]"), "vertex out of range"))
        })
        .collect::<Result<Vec<u32>>>()?;
    let s = Simplex::new(verts).map_err(|e| match e {
        Error::InvalidSimplex { reason, .. } => Error::malformed(at, reason),
        other => other,
    })?;
    if s.max_vertex() > n {
        return Err(Error::malformed(
            at,
            format!("vertex {} exceeds n={n}", s.max_vertex()),
        ));
    }
    Ok(s)
}

fn simplex_json(s: &Simplex) -> Value {
    json!(s.vertices())
}

fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::malformed("<document>", e.to_string()))
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values serialize");
    s.push('\n');
    s
}

fn ground_set(obj: &Map<String, Value>) -> Result<u32> {
    let n = uint(get(obj, "n")?, "n")?;
    u32::try_from(n).map_err(|_| Error::malformed("n", "too large"))
}

/// A complex together with the field it should be analysed over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDoc {
    pub complex: Complex,
    pub field: Field,
}

pub fn complex_to_json(k: &Complex, field: Field) -> String {
    let facets: Vec<Value> = k.facets().iter().map(simplex_json).collect();
    render(&json!({"n": k.n(), "p": field.p(), "facets": facets}))
}

fn complex_from_value(v: &Value) -> Result<ComplexDoc> {
    let obj = object(v, "<document>")?;
    let n = ground_set(obj)?;
    let field = field_of(obj)?;
    let facets = array(get(obj, "facets")?, "facets")?
        .iter()
        .enumerate()
        .map(|(i, s)| simplex_at(s, n, &format!("facets[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComplexDoc {
        complex: Complex::closure(facets, n)?,
        field,
    })
}

pub fn complex_from_json(text: &str) -> Result<ComplexDoc> {
    complex_from_value(&parse(text)?)
}

/// A chain tagged with its ground set `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDoc {
    pub n: u32,
    pub chain: Chain,
}

pub fn chain_to_json(c: &Chain, n: u32) -> String {
    let terms: Vec<Value> = c
        .terms()
        .map(|(s, a)| json!({"s": simplex_json(s), "c": a}))
        .collect();
    render(&json!({"n": n, "p": c.field().p(), "dim": c.dim(), "terms": terms}))
}

fn chain_from_value(v: &Value) -> Result<ChainDoc> {
    let obj = object(v, "<document>")?;
    let n = ground_set(obj)?;
    let field = field_of(obj)?;
    let dim = int(get(obj, "dim")?, "dim")?;
    if dim < -1 {
        return Err(Error::malformed("dim", "dimension below -1"));
    }
    let mut chain = Chain::zero(dim as isize, field);
    for (i, t) in array(get(obj, "terms")?, "terms")?.iter().enumerate() {
        let at = format!("terms[{i}]");
        let t = object(t, &at)?;
        let s = simplex_at(
            t.get("s")
                .ok_or_else(|| Error::malformed(format!("{at}.s"), "missing"))?,
            n,
            &format!("{at}.s"),
        )?;
        if s.dim() != dim as isize {
            return Err(Error::malformed(
                format!("{at}.s"),
                format!("simplex {s} is not of dimension {dim}"),
            ));
        }
        let c = uint(
            t.get("c")
                .ok_or_else(|| Error::malformed(format!("{at}.c"), "missing"))?,
            &format!("{at}.c"),
        )?;
        if c >= field.p() as u64 {
            return Err(Error::malformed(
                format!("{at}.c"),
                format!("coefficient must be below p={}", field.p()),
            ));
        }
        if chain.coeff(&s) != 0 {
            return Err(Error::malformed(
                format!("{at}.s"),
                format!("simplex {s} appears twice"),
            ));
        }
        chain.add_term(s, c as u32);
    }
    Ok(ChainDoc { n, chain })
}

pub fn chain_from_json(text: &str) -> Result<ChainDoc> {
    chain_from_value(&parse(text)?)
}

/// Faces read from either a chain document (its support) or a complex
/// document (its facets), with the ground set and field.
#[derive(Clone, Debug)]
pub struct FacesDoc {
    pub n: u32,
    pub field: Field,
    pub faces: Vec<Simplex>,
}

pub fn faces_from_json(text: &str) -> Result<FacesDoc> {
    let v = parse(text)?;
    let obj = object(&v, "<document>")?;
    if obj.contains_key("terms") {
        let doc = chain_from_value(&v)?;
        Ok(FacesDoc {
            n: doc.n,
            field: doc.chain.field(),
            faces: doc.chain.support_vec(),
        })
    } else if obj.contains_key("facets") {
        let doc = complex_from_value(&v)?;
        Ok(FacesDoc {
            n: doc.complex.n(),
            field: doc.field,
            faces: doc.complex.facets(),
        })
    } else {
        Err(Error::malformed(
            "<document>",
            "expected `facets` or `terms`",
        ))
    }
}

pub fn cell_poset_to_json(p: &CellPoset) -> String {
    let cells: Vec<Value> = p
        .cells()
        .iter()
        .map(|c| json!({"id": c.id, "dim": c.dim}))
        .collect();
    let mut covers = Vec::new();
    let mut boundary = Map::new();
    for hi in 0..p.len() {
        for &lo in p.facets_of(hi) {
            covers.push(json!([p.id(lo), p.id(hi)]));
        }
        let terms: Vec<Value> = p
            .boundary_of(hi)
            .iter()
            .map(|&(j, c)| json!({"id": p.id(j), "c": c}))
            .collect();
        if !terms.is_empty() {
            boundary.insert(p.id(hi).to_string(), Value::Array(terms));
        }
    }
    render(&json!({"p": p.field().p(), "cells": cells, "covers": covers, "boundary": boundary}))
}

pub fn cell_poset_from_json(text: &str) -> Result<CellPoset> {
    let v = parse(text)?;
    let obj = object(&v, "<document>")?;
    let field = field_of(obj)?;
    let cells = array(get(obj, "cells")?, "cells")?
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let at = format!("cells[{i}]");
            let c = object(c, &at)?;
            let id = string(
                c.get("id")
                    .ok_or_else(|| Error::malformed(format!("{at}.id"), "missing"))?,
                &format!("{at}.id"),
            )?;
            let dim = int(
                c.get("dim")
                    .ok_or_else(|| Error::malformed(format!("{at}.dim"), "missing"))?,
                &format!("{at}.dim"),
            )?;
            Ok(Cell {
                id: id.to_string(),
                dim: dim as isize,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let covers = array(get(obj, "covers")?, "covers")?
        .iter()
        .enumerate()
        .map(|(i, pair)| {
            let at = format!("covers[{i}]");
            match array(pair, &at)?.as_slice() {
                [lo, hi] => Ok((string(lo, &at)?.to_string(), string(hi, &at)?.to_string())),
                _ => Err(Error::malformed(at, "expected a pair of ids")),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut boundary = BTreeMap::new();
    for (id, terms) in object(get(obj, "boundary")?, "boundary")? {
        let at = format!("boundary.{id}");
        let terms = array(terms, &at)?
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let at = format!("{at}[{i}]");
                let t = object(t, &at)?;
                let fid = string(
                    t.get("id")
                        .ok_or_else(|| Error::malformed(format!("{at}.id"), "missing"))?,
                    &format!("{at}.id"),
                )?;
                let c = int(
                    t.get("c")
                        .ok_or_else(|| Error::malformed(format!("{at}.c"), "missing"))?,
                    &format!("{at}.c"),
                )?;
                Ok((fid.to_string(), c))
            })
            .collect::<Result<Vec<_>>>()?;
        boundary.insert(id.clone(), terms);
    }
    CellPoset::new(field, cells, covers, boundary)
}

pub fn certificate_to_json(cert: &CollapseCertificate) -> String {
    let steps: Vec<Value> = cert
        .steps
        .iter()
        .map(|s| json!({"free": simplex_json(&s.free), "coface": simplex_json(&s.coface)}))
        .collect();
    let residual: Vec<Value> = cert.residual.facets().iter().map(simplex_json).collect();
    render(&json!({"d": cert.d, "n": cert.start.n(), "steps": steps, "residual": residual}))
}

/// Reads the steps of a certificate.
pub fn certificate_steps_from_json(text: &str) -> Result<Vec<CollapseStep>> {
    let v = parse(text)?;
    let obj = object(&v, "<document>")?;
    let n = ground_set(obj)?;
    array(get(obj, "steps")?, "steps")?
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let at = format!("steps[{i}]");
            let s = object(s, &at)?;
            let part = |key: &str| {
                let at = format!("{at}.{key}");
                simplex_at(
                    s.get(key)
                        .ok_or_else(|| Error::malformed(at.clone(), "missing"))?,
                    n,
                    &at,
                )
            };
            Ok(CollapseStep {
                free: part("free")?,
                coface: part("coface")?,
            })
        })
        .collect()
}
