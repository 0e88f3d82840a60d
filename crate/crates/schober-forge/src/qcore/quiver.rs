use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub label: String,
}

/// An arrow `source -> target`. Degree is zero for ordinary quivers and carries
/// the cohomological degree for graded quivers underlying dg presentations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: String,
    pub target: String,
    pub label: String,
    pub degree: i32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: BTreeMap<String, Vertex>,
    arrows: BTreeMap<String, Arrow>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, label: impl Into<String>) -> Result<()> {
        let id = id.into();
        if self.vertices.contains_key(&id) {
            return Err(Error::InvalidQuiver(format!("duplicate vertex id `{id}`")));
        }
        self.vertices.insert(id.clone(), Vertex { id, label: label.into() });
        Ok(())
    }

    pub fn add_arrow(
        &mut self,
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
        label: impl Into<String>,
    ) -> Result<()> {
        self.add_graded_arrow(id, source, target, label, 0)
    }

    pub fn add_graded_arrow(
        &mut self,
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
        label: impl Into<String>,
        degree: i32,
    ) -> Result<()> {
        let (id, source, target) = (id.into(), source.into(), target.into());
        if self.arrows.contains_key(&id) {
            return Err(Error::InvalidQuiver(format!("duplicate arrow id `{id}`")));
        }
        for v in [&source, &target] {
            if !self.vertices.contains_key(v) {
                return Err(Error::InvalidQuiver(format!("arrow `{id}` has unknown endpoint `{v}`")));
            }
        }
        self.arrows.insert(id.clone(), Arrow { id, source, target, label: label.into(), degree });
        Ok(())
    }

    pub fn remove_arrow(&mut self, id: &str) -> Option<Arrow> {
        self.arrows.remove(id)
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertices.get(id)
    }

    pub fn arrow(&self, id: &str) -> Option<&Arrow> {
        self.arrows.get(id)
    }

    pub fn try_arrow(&self, id: &str) -> Result<&Arrow> {
        self.arrows.get(id).ok_or_else(|| Error::Lookup(id.to_string()))
    }

    pub fn has_vertex(&self, id: &str) -> bool {
        self.vertices.contains_key(id)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.values()
    }

    pub fn arrows(&self) -> impl Iterator<Item = &Arrow> {
        self.arrows.values()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &String> {
        self.vertices.keys()
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = &String> {
        self.arrows.keys()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows_into<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a Arrow> + 'a {
        self.arrows.values().filter(move |a| a.target == v)
    }

    pub fn arrows_out<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a Arrow> + 'a {
        self.arrows.values().filter(move |a| a.source == v)
    }

    /// The opposite quiver: every arrow reversed, ids kept.
    pub fn opposite(&self) -> Quiver {
        let mut q = Quiver { vertices: self.vertices.clone(), arrows: BTreeMap::new() };
        for a in self.arrows() {
            q.arrows.insert(
                a.id.clone(),
                Arrow { source: a.target.clone(), target: a.source.clone(), ..a.clone() },
            );
        }
        q
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IceQuiver {
    pub quiver: Quiver,
    pub frozen_vertices: BTreeSet<String>,
    pub frozen_arrows: BTreeSet<String>,
}

impl IceQuiver {
    pub fn new(quiver: Quiver) -> Self {
        IceQuiver { quiver, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        for v in &self.frozen_vertices {
            if !self.quiver.has_vertex(v) {
                return Err(Error::InvalidQuiver(format!("frozen vertex `{v}` not in quiver")));
            }
        }
        for a in &self.frozen_arrows {
            let arr = self
                .quiver
                .arrow(a)
                .ok_or_else(|| Error::InvalidQuiver(format!("frozen arrow `{a}` not in quiver")))?;
            if !self.frozen_vertices.contains(&arr.source) || !self.frozen_vertices.contains(&arr.target) {
                return Err(Error::InvalidQuiver(format!(
                    "frozen arrow `{a}` must join frozen vertices"
                )));
            }
        }
        Ok(())
    }

    pub fn is_frozen_vertex(&self, v: &str) -> bool {
        self.frozen_vertices.contains(v)
    }

    pub fn is_frozen_arrow(&self, a: &str) -> bool {
        self.frozen_arrows.contains(a)
    }

    /// The frozen subquiver F as a plain quiver.
    pub fn frozen_subquiver(&self) -> Quiver {
        let mut q = Quiver::new();
        for v in &self.frozen_vertices {
            let label = self.quiver.vertex(v).map(|x| x.label.clone()).unwrap_or_default();
            q.add_vertex(v.clone(), label).expect("unique");
        }
        for a in &self.frozen_arrows {
            let arr = self.quiver.arrow(a).expect("validated");
            q.add_graded_arrow(&arr.id, &arr.source, &arr.target, &arr.label, arr.degree)
                .expect("frozen endpoints");
        }
        q
    }
}

pub fn is_dual_label(label: &str) -> bool {
    label.starts_with('β')
}
