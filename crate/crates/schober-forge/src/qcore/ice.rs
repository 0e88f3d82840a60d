use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Deref, DerefMut};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::path::PathSum;
use super::potential::{cyclic_derivative, CyclicWord, Potential};
use super::quiver::{IceQuiver, Quiver};
use crate::error::{Error, Result};
use crate::linalg::Q;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IceQuiverWP {
    pub ice: IceQuiver,
    pub potential: Potential,
}

impl Deref for IceQuiverWP {
    type Target = IceQuiver;
    fn deref(&self) -> &IceQuiver {
        &self.ice
    }
}

impl DerefMut for IceQuiverWP {
    fn deref_mut(&mut self) -> &mut IceQuiver {
        &mut self.ice
    }
}

impl IceQuiverWP {
    pub fn new(ice: IceQuiver, potential: Potential) -> Result<Self> {
        ice.validate()?;
        potential.validate(&ice.quiver)?;
        Ok(IceQuiverWP { ice, potential })
    }

    pub fn validate(&self) -> Result<()> {
        self.ice.validate()?;
        self.potential.validate(&self.ice.quiver)
    }

    /// Copy with every vertex and arrow id passed through the given renamings.
    pub fn renamed(&self, fv: &dyn Fn(&str) -> String, fa: &dyn Fn(&str) -> String) -> IceQuiverWP {
        let mut q = Quiver::new();
        for v in self.quiver.vertices() {
            q.add_vertex(fv(&v.id), v.label.clone()).expect("renaming must stay injective");
        }
        for a in self.quiver.arrows() {
            q.add_graded_arrow(fa(&a.id), fv(&a.source), fv(&a.target), a.label.clone(), a.degree)
                .expect("renaming must stay injective");
        }
        IceQuiverWP {
            ice: IceQuiver {
                quiver: q,
                frozen_vertices: self.frozen_vertices.iter().map(|v| fv(v)).collect(),
                frozen_arrows: self.frozen_arrows.iter().map(|a| fa(a)).collect(),
            },
            potential: self.potential.rename(fa),
        }
    }

    pub fn prefixed(&self, prefix: &str) -> IceQuiverWP {
        self.renamed(&|v| format!("{prefix}{v}"), &|a| format!("{prefix}{a}"))
    }
}

/// Identification of a frozen subquiver `E` of `P` with a frozen subquiver `E′` of `P′`.
/// Arrows listed in `shared` keep their orientation; all others are reversed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPMatching {
    pub vertices: BTreeMap<String, String>,
    pub arrows: BTreeMap<String, String>,
    #[serde(default)]
    pub shared: BTreeSet<String>,
}

impl QPMatching {
    pub fn inverse(&self) -> QPMatching {
        QPMatching {
            vertices: self.vertices.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
            arrows: self.arrows.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
            shared: self.shared.iter().map(|a| self.arrows[a].clone()).collect(),
        }
    }

    /// Checks the matching is between frozen subquivers and endpoint compatible.
    pub fn validate(&self, p: &IceQuiver, p2: &IceQuiver) -> Result<()> {
        let injective = |m: &BTreeMap<String, String>| {
            m.values().collect::<BTreeSet<_>>().len() == m.len()
        };
        if !injective(&self.vertices) || !injective(&self.arrows) {
            return Err(Error::InvalidMatching("matching is not a bijection".into()));
        }
        for (v, w) in &self.vertices {
            if !p.is_frozen_vertex(v) || !p2.is_frozen_vertex(w) {
                return Err(Error::Precondition(format!("matched vertex pair ({v}, {w}) is not frozen")));
            }
        }
        for s in &self.shared {
            if !self.arrows.contains_key(s) {
                return Err(Error::InvalidMatching(format!("shared arrow `{s}` is not matched")));
            }
        }
        for (a, b) in &self.arrows {
            if !p.is_frozen_arrow(a) || !p2.is_frozen_arrow(b) {
                return Err(Error::Precondition(format!("matched arrow pair ({a}, {b}) is not frozen")));
            }
            let x = p.quiver.try_arrow(a)?;
            let y = p2.quiver.try_arrow(b)?;
            let (Some(xs), Some(xt)) = (self.vertices.get(&x.source), self.vertices.get(&x.target)) else {
                return Err(Error::InvalidMatching(format!("arrow `{a}` leaves the matched vertices")));
            };
            let ok = if self.shared.contains(a) {
                *xs == y.source && *xt == y.target
            } else {
                *xs == y.target && *xt == y.source
            };
            if !ok {
                return Err(Error::InvalidMatching(format!("arrows `{a}` and `{b}` are not endpoint compatible")));
            }
        }
        Ok(())
    }
}

/// How the potential of an amalgamation treats cycles through deleted arrows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GluePotential {
    /// Each glued cycle once: `W̃ + W′_rest`, which equals `W_rest + W̃′`.
    #[default]
    Reduced,
    /// The literal sum `W̃ + W̃′`, which counts every glued cycle twice.
    LiteralSum,
}

/// Renaming of `P′` ids that makes them disjoint from those of `P`.
#[derive(Clone, Debug, Default)]
pub struct Renaming {
    pub vertices: BTreeMap<String, String>,
    pub arrows: BTreeMap<String, String>,
}

impl Renaming {
    pub fn avoiding(p: &Quiver, p2: &Quiver) -> Renaming {
        fn pick(ours: &BTreeSet<&String>, theirs: Vec<&String>) -> BTreeMap<String, String> {
            let mut taken: BTreeSet<String> = ours.iter().map(|s| s.to_string()).collect();
            taken.extend(theirs.iter().map(|s| s.to_string()));
            let mut out = BTreeMap::new();
            for id in theirs {
                let mut new = id.clone();
                if ours.contains(id) {
                    while taken.contains(&new) {
                        new.push('\'');
                    }
                    taken.insert(new.clone());
                }
                out.insert(id.clone(), new);
            }
            out
        }
        Renaming {
            vertices: pick(&p.vertex_ids().collect(), p2.vertex_ids().collect()),
            arrows: pick(&p.arrow_ids().collect(), p2.arrow_ids().collect()),
        }
    }

    pub fn apply(&self, x: &IceQuiverWP) -> IceQuiverWP {
        x.renamed(&|v| self.vertices[v].clone(), &|a| self.arrows[a].clone())
    }

    pub fn apply_matching(&self, m: &QPMatching) -> QPMatching {
        QPMatching {
            vertices: m.vertices.iter().map(|(a, b)| (a.clone(), self.vertices[b].clone())).collect(),
            arrows: m.arrows.iter().map(|(a, b)| (a.clone(), self.arrows[b].clone())).collect(),
            shared: m.shared.clone(),
        }
    }
}

pub fn disjoint_union(p: &IceQuiverWP, p2: &IceQuiverWP) -> Result<IceQuiverWP> {
    let mut out = p.clone();
    for v in p2.quiver.vertices() {
        out.ice.quiver.add_vertex(v.id.clone(), v.label.clone())?;
    }
    for a in p2.quiver.arrows() {
        out.ice.quiver.add_graded_arrow(&a.id, &a.source, &a.target, &a.label, a.degree)?;
    }
    out.ice.frozen_vertices.extend(p2.frozen_vertices.iter().cloned());
    out.ice.frozen_arrows.extend(p2.frozen_arrows.iter().cloned());
    out.potential.add_assign(&p2.potential);
    Ok(out)
}

/// Amalgamation of `P` and `P′` along `m`. Ids of `P′` that collide with ids of
/// `P` receive trailing primes; glued vertices and shared arrows keep `P`'s ids.
pub fn amalgamate(p: &IceQuiverWP, p2: &IceQuiverWP, m: &QPMatching) -> Result<IceQuiverWP> {
    amalgamate_with(p, p2, m, GluePotential::Reduced)
}

pub fn amalgamate_with(
    p: &IceQuiverWP,
    p2: &IceQuiverWP,
    m: &QPMatching,
    rule: GluePotential,
) -> Result<IceQuiverWP> {
    m.validate(p, p2)?;
    let ren = Renaming::avoiding(&p.quiver, &p2.quiver);
    let union = disjoint_union(p, &ren.apply(p2))?;
    glue_within(&union, &ren.apply_matching(m), rule)
}

/// Glues two disjoint frozen subquivers of one ice quiver with potential.
pub fn glue_within(p: &IceQuiverWP, m: &QPMatching, rule: GluePotential) -> Result<IceQuiverWP> {
    m.validate(p, p)?;
    let left: BTreeSet<&String> = m.vertices.keys().collect();
    if m.vertices.values().any(|w| left.contains(w)) {
        return Err(Error::InvalidMatching("glued loci must be disjoint".into()));
    }
    let vmap = |v: &str| -> String {
        m.vertices.iter().find(|(_, w)| w.as_str() == v).map(|(k, _)| k.clone()).unwrap_or_else(|| v.to_string())
    };
    let shared_image: BTreeMap<&String, &String> =
        m.shared.iter().map(|a| (&m.arrows[a], a)).collect();
    let deleted_left: BTreeSet<&String> = m.arrows.keys().filter(|a| !m.shared.contains(*a)).collect();
    let deleted_right: BTreeSet<&String> =
        m.arrows.iter().filter(|(a, _)| !m.shared.contains(*a)).map(|(_, b)| b).collect();
    let glued_right: BTreeSet<&String> = m.vertices.values().collect();

    let mut q = Quiver::new();
    for v in p.quiver.vertices() {
        if !glued_right.contains(&v.id) {
            q.add_vertex(v.id.clone(), v.label.clone())?;
        }
    }
    for a in p.quiver.arrows() {
        if deleted_left.contains(&a.id) || deleted_right.contains(&a.id) || shared_image.contains_key(&a.id) {
            continue;
        }
        q.add_graded_arrow(&a.id, vmap(&a.source), vmap(&a.target), &a.label, a.degree)?;
    }
    let frozen_vertices = p
        .frozen_vertices
        .iter()
        .filter(|v| !left.contains(v) && !glued_right.contains(v))
        .cloned()
        .collect();
    let frozen_arrows = p
        .frozen_arrows
        .iter()
        .filter(|a| !m.arrows.contains_key(*a) && !m.arrows.values().any(|b| b == *a))
        .cloned()
        .collect();

    // Shared arrows of E′ are renamed to their partners before any substitution.
    let w = p.potential.rename(&|a| shared_image.get(&a.to_string()).map(|s| s.to_string()).unwrap_or_else(|| a.to_string()));
    // Intermediate quiver: vertices identified, every arrow kept except the shared images.
    let mut qw = Quiver::new();
    for v in q.vertices() {
        qw.add_vertex(v.id.clone(), v.label.clone())?;
    }
    for a in p.quiver.arrows().filter(|a| !shared_image.contains_key(&a.id)) {
        qw.add_graded_arrow(&a.id, vmap(&a.source), vmap(&a.target), &a.label, a.degree)?;
    }

    let derivative_for = |e: &String| -> Result<PathSum> {
        let partner = if let Some(b) = m.arrows.get(e) {
            b.clone()
        } else {
            m.arrows.iter().find(|(_, b)| *b == e).map(|(a, _)| a.clone()).expect("deleted arrow is matched")
        };
        cyclic_derivative(&qw, &w, &partner)
    };

    let mut out = Potential::zero();
    for (word, c) in w.iter() {
        let has_left = word.arrows().iter().any(|a| deleted_left.contains(a));
        let has_right = word.arrows().iter().any(|a| deleted_right.contains(a));
        match (has_left, has_right) {
            (false, false) => out.add_term(word.clone(), c.clone()),
            (true, true) => {
                return Err(Error::Unsupported(format!(
                    "cycle {word} passes through arrows on both sides of the gluing"
                )))
            }
            (true, false) => {
                let sub = substitute(word, c, &|e| deleted_left.contains(e), &derivative_for)?;
                out.add_assign(&sub);
            }
            (false, true) => {
                if rule == GluePotential::LiteralSum {
                    let sub = substitute(word, c, &|e| deleted_right.contains(e), &derivative_for)?;
                    out.add_assign(&sub);
                }
            }
        }
    }
    for (word, _) in out.iter() {
        if word.arrows().iter().any(|a| deleted_left.contains(a) || deleted_right.contains(a)) {
            return Err(Error::Unsupported(format!(
                "glued potential term {word} still contains a deleted arrow"
            )));
        }
    }
    let result = IceQuiverWP { ice: IceQuiver { quiver: q, frozen_vertices, frozen_arrows }, potential: out };
    result.validate()?;
    Ok(result)
}

/// Replaces every occurrence of each selected arrow in `word` by a combination of paths.
fn substitute(
    word: &CyclicWord,
    coeff: &Q,
    selected: &dyn Fn(&String) -> bool,
    image: &dyn Fn(&String) -> Result<PathSum>,
) -> Result<Potential> {
    let mut partial: Vec<(Vec<String>, Q)> = vec![(Vec::new(), coeff.clone())];
    for a in word.arrows() {
        if selected(a) {
            let img = image(a)?;
            let mut next = Vec::new();
            for (prefix, c) in &partial {
                for (path, d) in img.iter() {
                    let mut w = prefix.clone();
                    w.extend(path.arrows().iter().cloned());
                    next.push((w, c * d));
                }
            }
            partial = next;
        } else {
            for (prefix, _) in partial.iter_mut() {
                prefix.push(a.clone());
            }
        }
    }
    let mut out = Potential::zero();
    for (w, c) in partial {
        if !c.is_zero() && !w.is_empty() {
            out.add_term(CyclicWord::canonical(w), c);
        }
    }
    Ok(out)
}
