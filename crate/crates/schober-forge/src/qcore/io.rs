//! JSON and DOT interchange. Top-level JSON fields keep a fixed order; keys
//! inside every record are sorted.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::ice::IceQuiverWP;
use super::path::{Path, PathSum};
use super::potential::{CyclicWord, Potential};
use super::quiver::{IceQuiver, Quiver};
use crate::error::{Error, Result};
use crate::linalg::Q;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonDoc {
    pub vertices: Vec<JsonVertex>,
    pub arrows: Vec<JsonArrow>,
    pub frozen_vertices: Vec<String>,
    pub frozen_arrows: Vec<String>,
    pub potential: Vec<JsonCycleTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differential: Option<Vec<JsonDifferential>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<JsonTau>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meshes: Option<Vec<JsonMesh>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonVertex {
    pub frozen: bool,
    pub id: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonArrow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i32>,
    pub frozen: bool,
    pub id: String,
    pub label: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonCycleTerm {
    pub cycle: Vec<String>,
    pub den: i64,
    pub num: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonDifferential {
    pub generator: String,
    pub terms: Vec<JsonPathTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonPathTerm {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    pub den: i64,
    pub num: i64,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTau {
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonMesh {
    pub target: String,
    pub terms: Vec<JsonMeshTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonMeshTerm {
    pub sign: i32,
    pub via: Vec<String>,
}

pub fn rational_parts(c: &Q) -> Result<(i64, i64)> {
    match (c.numer().to_i64(), c.denom().to_i64()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::Unsupported(format!("coefficient {c} exceeds 64-bit range"))),
    }
}

pub fn rational_from(num: i64, den: i64) -> Result<Q> {
    if den == 0 {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Q::new(BigInt::from(num), BigInt::from(den)))
}

impl JsonDoc {
    /// Vertices, arrows and frozen markers of a (possibly graded) ice quiver.
    pub fn from_ice(x: &IceQuiver, graded: bool) -> Self {
        JsonDoc {
            vertices: x
                .quiver
                .vertices()
                .map(|v| JsonVertex { frozen: x.is_frozen_vertex(&v.id), id: v.id.clone(), label: v.label.clone() })
                .collect(),
            arrows: x
                .quiver
                .arrows()
                .map(|a| JsonArrow {
                    class: None,
                    degree: (graded || a.degree != 0).then_some(a.degree),
                    frozen: x.is_frozen_arrow(&a.id),
                    id: a.id.clone(),
                    label: a.label.clone(),
                    source: a.source.clone(),
                    target: a.target.clone(),
                })
                .collect(),
            frozen_vertices: x.frozen_vertices.iter().cloned().collect(),
            frozen_arrows: x.frozen_arrows.iter().cloned().collect(),
            ..Default::default()
        }
    }

    pub fn from_wp(x: &IceQuiverWP) -> Result<Self> {
        let mut doc = Self::from_ice(&x.ice, false);
        doc.potential = potential_to_json(&x.potential)?;
        Ok(doc)
    }

    pub fn to_ice(&self) -> Result<IceQuiver> {
        let mut q = Quiver::new();
        for v in &self.vertices {
            q.add_vertex(v.id.clone(), v.label.clone())?;
        }
        for a in &self.arrows {
            q.add_graded_arrow(&a.id, &a.source, &a.target, &a.label, a.degree.unwrap_or(0))?;
        }
        let fv: BTreeSet<String> = self.vertices.iter().filter(|v| v.frozen).map(|v| v.id.clone()).collect();
        let fa: BTreeSet<String> = self.arrows.iter().filter(|a| a.frozen).map(|a| a.id.clone()).collect();
        let lv: BTreeSet<String> = self.frozen_vertices.iter().cloned().collect();
        let la: BTreeSet<String> = self.frozen_arrows.iter().cloned().collect();
        if fv != lv || fa != la {
            return Err(Error::Parse("frozen flags disagree with frozen_vertices/frozen_arrows".into()));
        }
        let ice = IceQuiver { quiver: q, frozen_vertices: fv, frozen_arrows: fa };
        ice.validate()?;
        Ok(ice)
    }

    pub fn to_wp(&self) -> Result<IceQuiverWP> {
        let ice = self.to_ice()?;
        let potential = potential_from_json(&ice.quiver, &self.potential)?;
        IceQuiverWP::new(ice, potential)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("serializable")
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn potential_to_json(w: &Potential) -> Result<Vec<JsonCycleTerm>> {
    w.iter()
        .map(|(word, c)| {
            let (num, den) = rational_parts(c)?;
            Ok(JsonCycleTerm { cycle: word.arrows().to_vec(), den, num })
        })
        .collect()
}

pub fn potential_from_json(q: &Quiver, terms: &[JsonCycleTerm]) -> Result<Potential> {
    let mut w = Potential::zero();
    for t in terms {
        w.add_term(CyclicWord::new(q, &t.cycle)?, rational_from(t.num, t.den)?);
    }
    Ok(w)
}

pub fn pathsum_to_json(s: &PathSum) -> Result<Vec<JsonPathTerm>> {
    s.iter()
        .map(|(p, c)| {
            let (num, den) = rational_parts(c)?;
            Ok(JsonPathTerm {
                base: p.is_empty().then(|| p.source().to_string()),
                den,
                num,
                path: p.arrows().to_vec(),
            })
        })
        .collect()
}

pub fn pathsum_from_json(q: &Quiver, terms: &[JsonPathTerm]) -> Result<PathSum> {
    let mut s = PathSum::zero();
    for t in terms {
        let p = if t.path.is_empty() {
            let base = t.base.clone().ok_or_else(|| Error::Parse("empty path without base".into()))?;
            if !q.has_vertex(&base) {
                return Err(Error::Lookup(base));
            }
            Path::identity(base)
        } else {
            Path::from_arrows(q, &t.path)?
        };
        s.add_term(p, rational_from(t.num, t.den)?);
    }
    Ok(s)
}

pub fn export_json(x: &IceQuiverWP) -> Result<Vec<u8>> {
    Ok(JsonDoc::from_wp(x)?.to_bytes())
}

pub fn import_json(bytes: &[u8]) -> Result<IceQuiverWP> {
    JsonDoc::parse(bytes)?.to_wp()
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT rendering of a (possibly graded) ice quiver.
pub fn export_dot(x: &IceQuiver) -> Vec<u8> {
    let mut out = String::from("digraph Q {\n");
    for v in x.quiver.vertices() {
        let shape = if x.is_frozen_vertex(&v.id) { "box" } else { "circle" };
        let _ = writeln!(out, "  \"{}\" [label=\"{}\", shape={shape}];", dot_escape(&v.id), dot_escape(&v.label));
    }
    for a in x.quiver.arrows() {
        let mut attrs = Vec::new();
        let label = if a.degree != 0 { format!("{} deg={}", a.label, a.degree) } else { a.label.clone() };
        attrs.push(format!("label=\"{}\"", dot_escape(&label)));
        if x.is_frozen_arrow(&a.id) {
            attrs.push("color=blue".to_string());
        }
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [{}];",
            dot_escape(&a.source),
            dot_escape(&a.target),
            attrs.join(", ")
        );
    }
    out.push_str("}\n");
    out.into_bytes()
}
