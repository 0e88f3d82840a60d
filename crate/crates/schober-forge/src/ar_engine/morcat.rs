use std::fmt;

use num_traits::Zero;

use super::rep::{indecomposable_reps, minimal_presentation, proj_map, proj_sum, RepMap, Representation, Shape};
use crate::error::Result;
use crate::linalg::{q, Matrix, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `0 → P`.
    ZeroToP,
    /// `P → 0`.
    PToZero,
    /// `P = P`.
    Identity,
    /// Minimal presentation of a non-projective indecomposable.
    Presentation,
}

/// An object `f: ⊕P_{p1} → ⊕P_{p0}` of `Fun([1], proj I)`; `f[s][r]` multiplies
/// the path `p0[s] ⇝ p1[r]`. Vertex indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorObject {
    pub id: String,
    pub family: Family,
    pub p1: Vec<usize>,
    pub p0: Vec<usize>,
    pub f: Matrix,
}

fn sum_label(v: &[usize]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let mut s: Vec<usize> = v.to_vec();
    s.sort();
    s.iter().map(|i| format!("P{}", i + 1)).collect::<Vec<_>>().join("+")
}

impl MorObject {
    pub fn new(family: Family, p1: Vec<usize>, p0: Vec<usize>, f: Matrix) -> Self {
        let id = match family {
            Family::Identity => format!("{}={}", sum_label(&p1), sum_label(&p0)),
            _ => format!("{}>{}", sum_label(&p1), sum_label(&p0)),
        };
        MorObject { id, family, p1, p0, f }
    }

    /// The underlying representations and map.
    pub fn realize(&self, shape: &Shape) -> (Representation, Representation, RepMap) {
        (proj_sum(shape, &self.p1), proj_sum(shape, &self.p0), proj_map(shape, &self.p1, &self.p0, &self.f))
    }

    pub fn is_frozen_family(&self) -> bool {
        self.family != Family::Presentation
    }
}

impl fmt::Display for MorObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

/// A morphism `(u, v)` of `Fun([1], proj I)` with `v∘f = g∘u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorMap {
    pub u: Matrix,
    pub v: Matrix,
}

impl MorMap {
    pub fn zero(x: &MorObject, y: &MorObject) -> Self {
        MorMap { u: Matrix::zeros(y.p1.len(), x.p1.len()), v: Matrix::zeros(y.p0.len(), x.p0.len()) }
    }

    pub fn identity(x: &MorObject) -> Self {
        MorMap { u: Matrix::identity(x.p1.len()), v: Matrix::identity(x.p0.len()) }
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &MorMap) -> MorMap {
        MorMap { u: self.u.mul(&g.u), v: self.v.mul(&g.v) }
    }

    pub fn add(&self, g: &MorMap) -> MorMap {
        MorMap { u: self.u.add(&g.u), v: self.v.add(&g.v) }
    }

    pub fn scale(&self, c: &Q) -> MorMap {
        MorMap { u: self.u.scale(c), v: self.v.scale(c) }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn to_vec(&self) -> Vec<Q> {
        self.u.entries().iter().chain(self.v.entries()).cloned().collect()
    }

    pub fn from_vec(x: &MorObject, y: &MorObject, data: &[Q]) -> Self {
        let nu = y.p1.len() * x.p1.len();
        MorMap {
            u: Matrix::from_rows(y.p1.len(), x.p1.len(), data[..nu].to_vec()),
            v: Matrix::from_rows(y.p0.len(), x.p0.len(), data[nu..].to_vec()),
        }
    }

    pub fn is_morphism(&self, x: &MorObject, y: &MorObject) -> bool {
        self.v.mul(&x.f) == y.f.mul(&self.u)
    }

    /// The pair of representation maps.
    pub fn realize(&self, shape: &Shape, x: &MorObject, y: &MorObject) -> (RepMap, RepMap) {
        (proj_map(shape, &x.p1, &y.p1, &self.u), proj_map(shape, &x.p0, &y.p0, &self.v))
    }
}

/// Basis of `Hom(X, Y)`: pairs `(u, v)` supported on existing paths with
/// `v∘f = g∘u`.
pub fn mor_hom(shape: &Shape, x: &MorObject, y: &MorObject) -> Vec<MorMap> {
    let (r1, r0, s1, s0) = (x.p1.len(), x.p0.len(), y.p1.len(), y.p0.len());
    // Free coordinates of the full (u, v) vector.
    let mut free = Vec::new();
    for a in 0..s1 {
        for b in 0..r1 {
            if shape.reaches(y.p1[a], x.p1[b]) {
                free.push(a * r1 + b);
            }
        }
    }
    let nu = s1 * r1;
    for a in 0..s0 {
        for b in 0..r0 {
            if shape.reaches(y.p0[a], x.p0[b]) {
                free.push(nu + a * r0 + b);
            }
        }
    }
    let pos: std::collections::HashMap<usize, usize> = free.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut rows = Vec::new();
    for sp in 0..s0 {
        for r in 0..r1 {
            let mut row = vec![Q::zero(); free.len()];
            for s in 0..r0 {
                if let Some(&k) = pos.get(&(nu + sp * r0 + s)) {
                    row[k] += x.f.get(s, r);
                }
            }
            for rp in 0..s1 {
                if let Some(&k) = pos.get(&(rp * r1 + r)) {
                    row[k] -= y.f.get(sp, rp);
                }
            }
            rows.push(row);
        }
    }
    let basis = if rows.is_empty() {
        (0..free.len())
            .map(|k| {
                let mut v = vec![Q::zero(); free.len()];
                v[k] = q(1);
                v
            })
            .collect()
    } else {
        Matrix::from_rows(rows.len(), free.len(), rows.concat()).nullspace()
    };
    basis
        .into_iter()
        .map(|b| {
            let mut full = vec![Q::zero(); nu + s0 * r0];
            for (k, &c) in free.iter().enumerate() {
                full[c] = b[k].clone();
            }
            MorMap::from_vec(x, y, &full)
        })
        .collect()
}

/// The indecomposables of `Fun([1], proj I)`: `0 → P_i`, `P_i → 0`, `P_i = P_i`
/// and the minimal presentations of the non-projective indecomposables.
pub fn mor_indecomposables(shape: &Shape) -> Result<Vec<MorObject>> {
    let n = shape.n;
    let mut out: Vec<MorObject> = (0..n).map(|i| MorObject::new(Family::ZeroToP, vec![], vec![i], Matrix::zeros(1, 0))).collect();
    let mut pres = Vec::new();
    for m in indecomposable_reps(shape) {
        let p = minimal_presentation(shape, &m)?;
        if !p.p1.is_empty() {
            pres.push(MorObject::new(Family::Presentation, p.p1, p.p0, p.f));
        }
    }
    pres.sort_by(|a, b| a.id.cmp(&b.id));
    out.extend(pres);
    out.extend((0..n).map(|i| MorObject::new(Family::Identity, vec![i], vec![i], Matrix::identity(1))));
    out.extend((0..n).map(|i| MorObject::new(Family::PToZero, vec![i], vec![], Matrix::zeros(0, 1))));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinType;

    #[test]
    fn counts() {
        for (t, n) in [(DynkinType::A(1), 3), (DynkinType::A(3), 12), (DynkinType::D(4), 20)] {
            let objs = mor_indecomposables(&Shape::of(t)).unwrap();
            assert_eq!(objs.len(), n, "{t}");
            let ids: std::collections::BTreeSet<_> = objs.iter().map(|o| o.id.clone()).collect();
            assert_eq!(ids.len(), n);
        }
    }

    #[test]
    fn homs_commute_and_ends_are_one_dimensional() {
        let shape = Shape::of(DynkinType::A(3));
        let objs = mor_indecomposables(&shape).unwrap();
        for x in &objs {
            assert_eq!(mor_hom(&shape, x, x).len(), 1, "{x}");
            for y in &objs {
                for h in mor_hom(&shape, x, y) {
                    assert!(h.is_morphism(x, y));
                    let (x1, x0, f) = x.realize(&shape);
                    let (y1, y0, g) = y.realize(&shape);
                    let (u, v) = h.realize(&shape, x, y);
                    assert!(u.is_morphism(&shape, &x1, &y1) && v.is_morphism(&shape, &x0, &y0));
                    assert_eq!(v.compose(&f), g.compose(&u));
                }
            }
        }
        let ids: Vec<_> = objs.iter().map(|o| o.id.as_str()).collect();
        assert!(ids.contains(&"P2>P1") && ids.contains(&"P3>P1") && ids.contains(&"P3>P2"));
    }
}
