use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Zero};

use super::morcat::{mor_hom, mor_indecomposables, MorMap, MorObject};
use super::rep::Shape;
use crate::dynkin::DynkinType;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, Span, Q};
use crate::qcore::io::{JsonDoc, JsonMesh, JsonMeshTerm, JsonTau};
use crate::qcore::{IceQuiver, Quiver};

#[derive(Clone, Debug)]
pub struct ArArrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
    pub map: MorMap,
}

/// `ε · second ∘ first` with `first: τZ → E`, `second: E → Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeshTerm {
    pub sign: i8,
    pub first: usize,
    pub second: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mesh {
    /// `τZ`.
    pub source: usize,
    pub target: usize,
    pub terms: Vec<MeshTerm>,
}

#[derive(Clone, Debug)]
pub struct ArQuiver {
    pub shape: Shape,
    pub objects: Vec<MorObject>,
    pub arrows: Vec<ArArrow>,
    pub meshes: Vec<Mesh>,
}

type Basis = Vec<MorMap>;

struct Radical {
    rad: Vec<Vec<Basis>>,
    rad2: Vec<Vec<Basis>>,
}

fn span_of(x: &MorObject, y: &MorObject, family: &[MorMap]) -> Span {
    let dim = y.p1.len() * x.p1.len() + y.p0.len() * x.p0.len();
    Span::new(dim, &family.iter().map(MorMap::to_vec).collect::<Vec<_>>())
}

fn nilpotent(m: &Matrix) -> bool {
    let mut p = m.clone();
    for _ in 0..m.rows {
        p = p.mul(m);
    }
    p.is_zero()
}

fn radicals(shape: &Shape, objs: &[MorObject]) -> Result<Radical> {
    let n = objs.len();
    let mut rad: Vec<Vec<Basis>> = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let hom = mor_hom(shape, &objs[a], &objs[b]);
            rad[a][b] = if a != b {
                hom
            } else {
                // The maximal ideal of a local ring is the kernel of the normalized trace.
                let traces: Vec<Q> = hom.iter().map(|h| h.u.trace() + h.v.trace()).collect();
                let Some(k) = traces.iter().position(|t| !t.is_zero()) else {
                    return Err(Error::Structural(format!("End({}) has no invertible element", objs[a])));
                };
                let pivot = hom[k].clone();
                let ideal: Basis = hom
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != k)
                    .map(|(i, h)| h.add(&pivot.scale(&(-(&traces[i] / &traces[k])))))
                    .collect();
                if ideal.iter().any(|h| !nilpotent(&h.u) || !nilpotent(&h.v)) {
                    return Err(Error::Structural(format!("End({}) is not local", objs[a])));
                }
                ideal
            };
        }
    }
    let rad2 = (0..n).map(|a| (0..n).map(|b| product(objs, &rad, &rad, a, b)).collect()).collect();
    Ok(Radical { rad, rad2 })
}

/// Basis of `Σ_c prev(c, b) ∘ rad(a, c)`.
fn product(objs: &[MorObject], rad: &[Vec<Basis>], prev: &[Vec<Basis>], a: usize, b: usize) -> Basis {
    let cap = rad[a][b].len();
    let (x, y) = (&objs[a], &objs[b]);
    let mut ech = Echelon::new(y.p1.len() * x.p1.len() + y.p0.len() * x.p0.len());
    'outer: for c in 0..objs.len() {
        if rad[a][c].is_empty() || prev[c][b].is_empty() {
            continue;
        }
        for f in &rad[a][c] {
            for g in &prev[c][b] {
                ech.insert(g.compose(f).to_vec());
                if ech.dim() == cap {
                    break 'outer;
                }
            }
        }
    }
    ech.rows().iter().map(|v| MorMap::from_vec(x, y, v)).collect()
}


fn topological(n: usize, arrows: &[ArArrow]) -> Result<Vec<usize>> {
    let mut indeg = vec![0; n];
    for a in arrows {
        indeg[a.target] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for a in arrows.iter().filter(|a| a.source == v) {
            indeg[a.target] -= 1;
            if indeg[a.target] == 0 {
                ready.insert(a.target);
            }
        }
    }
    if order.len() != n {
        return Err(Error::Structural("AR quiver has an oriented cycle".into()));
    }
    Ok(order)
}

/// Dimension of the projection of `vectors`' span onto the first `k` coordinates.
fn projected_dim(vectors: &[Vec<Q>], k: usize) -> usize {
    Span::new(k, &vectors.iter().map(|v| v[..k].to_vec()).collect::<Vec<_>>()).dim()
}

/// Column matrix with the given vectors as columns.
fn columns(dim: usize, cols: &[Vec<Q>]) -> Matrix {
    let mut m = Matrix::zeros(dim, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

/// The AR quiver of `Fun([1], proj I)` with exact mesh relations.
pub fn ar_quiver_mor(t: DynkinType) -> Result<ArQuiver> {
    let shape = Shape::of(t);
    let objs = mor_indecomposables(&shape)?;
    let n = objs.len();
    let r = radicals(&shape, &objs)?;

    let mut arrows = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut picked: Vec<MorMap> = r.rad2[a][b].clone();
            let mut k = 0;
            for h in &r.rad[a][b] {
                if !span_of(&objs[a], &objs[b], &picked).contains(&h.to_vec()) {
                    picked.push(h.clone());
                    k += 1;
                    let base = format!("α[{}->{}]", objs[a].id, objs[b].id);
                    let id = if k == 1 { base } else { format!("{base}#{k}") };
                    arrows.push(ArArrow { id, source: a, target: b, map: h.clone() });
                }
            }
        }
    }

    let order = topological(n, &arrows)?;
    let mut meshes = Vec::new();
    for &z in &order {
        let incoming: Vec<usize> = (0..arrows.len()).filter(|&i| arrows[i].target == z).collect();
        let mut candidates: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for &second in &incoming {
            let e = arrows[second].source;
            for (first, a) in arrows.iter().enumerate() {
                if a.target == e {
                    candidates.entry(a.source).or_default().push((first, second));
                }
            }
        }
        let mut found: Option<(usize, Vec<(usize, usize)>)> = None;
        for (x, paths) in candidates {
            let comps: Vec<Vec<Q>> =
                paths.iter().map(|&(f, s)| arrows[s].map.compose(&arrows[f].map).to_vec()).collect();
            let mut cols = comps.clone();
            cols.extend(product(&objs, &r.rad, &r.rad2, x, z).iter().map(MorMap::to_vec));
            let dim = comps[0].len();
            let kernel = columns(dim, &cols).nullspace();
            match projected_dim(&kernel, paths.len()) {
                0 => {}
                1 if found.is_none() => found = Some((x, paths)),
                1 => return Err(Error::Structural(format!("two translates of {}", objs[z]))),
                d => return Err(Error::Structural(format!("relation space of dimension {d} at {}", objs[z]))),
            }
        }
        let Some((x, paths)) = found else { continue };
        let middles: BTreeSet<usize> = paths.iter().map(|&(f, _)| arrows[f].target).collect();
        if middles.len() != paths.len() {
            return Err(Error::Unsupported(format!("parallel arrows in the mesh ending at {}", objs[z])));
        }
        meshes.push(fix_mesh(&objs, &mut arrows, &r, x, z, paths)?);
    }
    Ok(ArQuiver { shape, objects: objs, arrows, meshes })
}

/// Replaces the incoming arrows of the mesh by representatives for which the
/// relation holds exactly, with sign `+1` on the first term and `−1` on the rest.
fn fix_mesh(
    objs: &[MorObject],
    arrows: &mut [ArArrow],
    r: &Radical,
    x: usize,
    z: usize,
    mut paths: Vec<(usize, usize)>,
) -> Result<Mesh> {
    paths.sort_by(|p, q| (&arrows[p.0].id, &arrows[p.1].id).cmp(&(&arrows[q.0].id, &arrows[q.1].id)));
    let m = paths.len();
    let mut cols: Vec<Vec<Q>> = paths.iter().map(|&(f, s)| arrows[s].map.compose(&arrows[f].map).to_vec()).collect();
    let mut corrections: Vec<(usize, MorMap)> = Vec::new();
    for (i, &(f, s)) in paths.iter().enumerate() {
        for rho in &r.rad2[arrows[s].source][z] {
            cols.push(rho.compose(&arrows[f].map).to_vec());
            corrections.push((i, rho.clone()));
        }
    }
    let dim = cols[0].len();
    let kernel = columns(dim, &cols).nullspace();
    if projected_dim(&kernel, m) != 1 {
        return Err(Error::Structural(format!("mesh at {} is not one-dimensional", objs[z])));
    }
    let sol = kernel.into_iter().find(|v| v[..m].iter().any(|c| !c.is_zero())).expect("projection is nonzero");
    if sol[..m].iter().any(Zero::is_zero) {
        return Err(Error::Structural(format!("mesh at {} misses a middle term", objs[z])));
    }
    let norm = sol[0].clone();
    let mut new_maps: Vec<MorMap> = paths.iter().enumerate().map(|(i, &(_, s))| arrows[s].map.scale(&(&sol[i] / &norm))).collect();
    for (k, (i, rho)) in corrections.iter().enumerate() {
        new_maps[*i] = new_maps[*i].add(&rho.scale(&(&sol[m + k] / &norm)));
    }
    let mut terms = Vec::with_capacity(m);
    for (i, &(f, s)) in paths.iter().enumerate() {
        let sign: i8 = if i == 0 { 1 } else { -1 };
        arrows[s].map = if sign > 0 { new_maps[i].clone() } else { new_maps[i].scale(&-Q::one()) };
        terms.push(MeshTerm { sign, first: f, second: s });
    }
    Ok(Mesh { source: x, target: z, terms })
}

impl ArQuiver {
    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.objects.iter().position(|o| o.id == id)
    }

    /// `Σ ε second∘first` as a morphism `τZ → Z`.
    pub fn mesh_sum(&self, mesh: &Mesh) -> MorMap {
        let (x, z) = (&self.objects[mesh.source], &self.objects[mesh.target]);
        mesh.terms.iter().fold(MorMap::zero(x, z), |acc, t| {
            let c = self.arrows[t.second].map.compose(&self.arrows[t.first].map);
            acc.add(&c.scale(&Q::from_integer(t.sign.into())))
        })
    }

    /// Meshes whose relation fails to vanish, either on summand matrices or on
    /// the realized representation maps.
    pub fn mesh_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for mesh in &self.meshes {
            let sum = self.mesh_sum(mesh);
            let (x, z) = (&self.objects[mesh.source], &self.objects[mesh.target]);
            let (u, v) = sum.realize(&self.shape, x, z);
            if !sum.is_zero() || !u.is_zero() || !v.is_zero() {
                out.push(self.objects[mesh.target].id.clone());
            }
        }
        out
    }

    pub fn to_quiver(&self) -> Quiver {
        let mut q = Quiver::new();
        for o in &self.objects {
            q.add_vertex(&o.id, &o.id).expect("distinct ids");
        }
        for a in &self.arrows {
            q.add_arrow(&a.id, &self.objects[a.source].id, &self.objects[a.target].id, &a.id).expect("distinct ids");
        }
        q
    }

    pub fn to_json(&self) -> JsonDoc {
        let mut doc = JsonDoc::from_ice(&IceQuiver::new(self.to_quiver()), false);
        doc.tau = Some(
            self.meshes
                .iter()
                .map(|m| JsonTau { from: self.objects[m.source].id.clone(), to: self.objects[m.target].id.clone() })
                .collect(),
        );
        doc.meshes = Some(
            self.meshes
                .iter()
                .map(|m| JsonMesh {
                    target: self.objects[m.target].id.clone(),
                    terms: m
                        .terms
                        .iter()
                        .map(|t| JsonMeshTerm {
                            sign: t.sign.into(),
                            via: vec![self.arrows[t.first].id.clone(), self.arrows[t.second].id.clone()],
                        })
                        .collect(),
                })
                .collect(),
        );
        doc
    }

    /// Objects reachable from `from` along arrows, in breadth-first order.
    pub fn successors(&self, from: usize) -> Vec<usize> {
        let mut seen = vec![false; self.objects.len()];
        let mut out = Vec::new();
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(v) = queue.pop_front() {
            out.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                if !seen[a.target] {
                    seen[a.target] = true;
                    queue.push_back(a.target);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a3_census() {
        let ar = ar_quiver_mor(DynkinType::A(3)).unwrap();
        assert_eq!(ar.objects.len(), 12);
        assert_eq!(ar.arrows.len(), 16);
        assert_eq!(ar.meshes.len(), 6);
        assert!(ar.mesh_failures().is_empty());
        let middle: usize = ar.meshes.iter().map(|m| m.terms.len()).sum();
        assert_eq!(middle, 11);
    }

    #[test]
    fn a1_census() {
        let ar = ar_quiver_mor(DynkinType::A(1)).unwrap();
        assert_eq!((ar.objects.len(), ar.arrows.len(), ar.meshes.len()), (3, 2, 1));
        assert!(ar.mesh_failures().is_empty());
    }
}
