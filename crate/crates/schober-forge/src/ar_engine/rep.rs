use num_traits::Zero;

use crate::dynkin::{dynkin_quiver, DynkinType};
use crate::error::{Error, Result};
use crate::linalg::{q, Matrix, Span, Q};

/// The oriented Dynkin quiver with 0-based vertex and arrow indices, plus the
/// unique path between any two vertices when it exists.
#[derive(Clone, Debug)]
pub struct Shape {
    pub t: DynkinType,
    pub n: usize,
    pub arrows: Vec<(usize, usize)>,
    paths: Vec<Vec<Option<Vec<usize>>>>,
}

impl Shape {
    pub fn of(t: DynkinType) -> Self {
        let qv = dynkin_quiver(t);
        let n = t.rank();
        let idx = |v: &str| v.parse::<usize>().expect("numeric vertex") - 1;
        let mut arrows = vec![(0, 0); qv.num_arrows()];
        for a in qv.arrows() {
            let j: usize = a.id[1..].parse().expect("arrow index");
            arrows[j - 1] = (idx(&a.source), idx(&a.target));
        }
        let mut paths = vec![vec![None; n]; n];
        for (i, row) in paths.iter_mut().enumerate() {
            row[i] = Some(Vec::new());
            let mut stack = vec![i];
            while let Some(v) = stack.pop() {
                for (a, &(s, t)) in arrows.iter().enumerate() {
                    if s == v && row[t].is_none() {
                        let mut p = row[v].clone().expect("visited");
                        p.push(a);
                        row[t] = Some(p);
                        stack.push(t);
                    }
                }
            }
        }
        Shape { t, n, arrows, paths }
    }

    /// Arrows of the path `i ⇝ j` in traversal order.
    pub fn path(&self, i: usize, j: usize) -> Option<&[usize]> {
        self.paths[i][j].as_deref()
    }

    pub fn reaches(&self, i: usize, j: usize) -> bool {
        self.paths[i][j].is_some()
    }

    /// Vertices ordered so that every arrow points forward.
    pub fn topological_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| (0..self.n).filter(|&u| u != v && self.reaches(u, v)).count());
        order
    }

    /// `⟨a, b⟩ = Σ a_i b_i − Σ_{i→j} a_i b_j`.
    pub fn euler_form(&self, a: &[i64], b: &[i64]) -> i64 {
        let diag: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        diag - self.arrows.iter().map(|&(s, t)| a[s] * b[t]).sum::<i64>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub dims: Vec<usize>,
    /// `maps[a]` is `dims[t(a)] × dims[s(a)]`.
    pub maps: Vec<Matrix>,
}

impl Representation {
    pub fn zero(shape: &Shape) -> Self {
        Representation { dims: vec![0; shape.n], maps: vec![Matrix::zeros(0, 0); shape.arrows.len()] }
    }

    pub fn simple(shape: &Shape, i: usize) -> Self {
        let mut dims = vec![0; shape.n];
        dims[i] = 1;
        let maps = shape.arrows.iter().map(|&(s, t)| Matrix::zeros(dims[t], dims[s])).collect();
        Representation { dims, maps }
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn validate(&self, shape: &Shape) -> Result<()> {
        if self.dims.len() != shape.n || self.maps.len() != shape.arrows.len() {
            return Err(Error::Precondition("representation does not match the quiver".into()));
        }
        for (m, &(s, t)) in self.maps.iter().zip(&shape.arrows) {
            if (m.rows, m.cols) != (self.dims[t], self.dims[s]) {
                return Err(Error::Precondition("arrow matrix has the wrong shape".into()));
            }
        }
        Ok(())
    }

    /// Action of the path `i ⇝ j`.
    pub fn path_action(&self, shape: &Shape, i: usize, j: usize) -> Option<Matrix> {
        let p = shape.path(i, j)?;
        let mut m = Matrix::identity(self.dims[i]);
        for &a in p {
            m = self.maps[a].mul(&m);
        }
        Some(m)
    }
}

/// `P_i`: basis at `j` the paths `i ⇝ j`, arrows acting by extension.
pub fn projective_rep(shape: &Shape, i: usize) -> Representation {
    proj_sum(shape, &[i])
}

/// `⊕_s P_{summands[s]}` in summand coordinates: the basis at `k` is the list of
/// summands whose vertex reaches `k`.
pub fn proj_sum(shape: &Shape, summands: &[usize]) -> Representation {
    let present = |k: usize| -> Vec<usize> { (0..summands.len()).filter(|&s| shape.reaches(summands[s], k)).collect() };
    let dims = (0..shape.n).map(|k| present(k).len()).collect();
    let maps = shape
        .arrows
        .iter()
        .map(|&(s, t)| {
            let (ps, pt) = (present(s), present(t));
            let mut m = Matrix::zeros(pt.len(), ps.len());
            for (c, x) in ps.iter().enumerate() {
                let r = pt.iter().position(|y| y == x).expect("extension stays in the summand");
                m.set(r, c, q(1));
            }
            m
        })
        .collect();
    Representation { dims, maps }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMap {
    pub maps: Vec<Matrix>,
}

impl RepMap {
    pub fn is_morphism(&self, shape: &Shape, m: &Representation, n: &Representation) -> bool {
        self.maps.iter().enumerate().all(|(v, f)| (f.rows, f.cols) == (n.dims[v], m.dims[v]))
            && shape
                .arrows
                .iter()
                .enumerate()
                .all(|(a, &(s, t))| n.maps[a].mul(&self.maps[s]) == self.maps[t].mul(&m.maps[a]))
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &RepMap) -> RepMap {
        RepMap { maps: self.maps.iter().zip(&g.maps).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, g: &RepMap) -> RepMap {
        RepMap { maps: self.maps.iter().zip(&g.maps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &Q) -> RepMap {
        RepMap { maps: self.maps.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }
}

/// The map `⊕ P_{src} → ⊕ P_{dst}` given by a scalar matrix `c` (`|dst| × |src|`),
/// where `c[d][s]` multiplies the path `dst[d] ⇝ src[s]`.
pub fn proj_map(shape: &Shape, src: &[usize], dst: &[usize], c: &Matrix) -> RepMap {
    let maps = (0..shape.n)
        .map(|k| {
            let ps: Vec<usize> = (0..src.len()).filter(|&s| shape.reaches(src[s], k)).collect();
            let pd: Vec<usize> = (0..dst.len()).filter(|&d| shape.reaches(dst[d], k)).collect();
            let mut m = Matrix::zeros(pd.len(), ps.len());
            for (r, &d) in pd.iter().enumerate() {
                for (col, &s) in ps.iter().enumerate() {
                    m.set(r, col, c.get(d, s).clone());
                }
            }
            m
        })
        .collect();
    RepMap { maps }
}

/// Basis of `Hom(M, N)`, solving the commuting squares vertex by vertex.
pub fn rep_hom(shape: &Shape, m: &Representation, n: &Representation) -> Vec<RepMap> {
    let mut offset = vec![0; shape.n + 1];
    for v in 0..shape.n {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[shape.n];
    let var = |v: usize, r: usize, c: usize| offset[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (a, &(s, t)) in shape.arrows.iter().enumerate() {
        // (N_a f_s − f_t M_a)[r][c] = 0 for r < dim N_t, c < dim M_s.
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![Q::zero(); unknowns];
                for k in 0..n.dims[s] {
                    row[var(s, k, c)] += n.maps[a].get(r, k);
                }
                for k in 0..m.dims[t] {
                    row[var(t, r, k)] -= m.maps[a].get(k, c);
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(rows.len(), unknowns, rows.concat());
    system
        .nullspace()
        .into_iter()
        .map(|x| RepMap {
            maps: (0..shape.n)
                .map(|v| Matrix::from_rows(n.dims[v], m.dims[v], x[offset[v]..offset[v + 1]].to_vec()))
                .collect(),
        })
        .collect()
}

/// A representation together with the current orientation of each arrow, as
/// reflection functors reverse arrows.
struct Reflected {
    orient: Vec<(usize, usize)>,
    rep: Representation,
}

impl Reflected {
    /// `S⁻_k` at a source `k`: replace `M_k` by the cokernel of `M_k → ⊕ M_j`.
    fn reflect_at_source(&mut self, k: usize) {
        let out: Vec<usize> = (0..self.orient.len()).filter(|&a| self.orient[a].0 == k).collect();
        debug_assert!(self.orient.iter().all(|&(_, t)| t != k), "reflection needs a source");
        let dk = self.rep.dims[k];
        let total: usize = out.iter().map(|&a| self.rep.dims[self.orient[a].1]).sum();
        let mut phi = Matrix::zeros(total, dk);
        let mut r0 = 0;
        for &a in &out {
            let m = &self.rep.maps[a];
            for r in 0..m.rows {
                for c in 0..dk {
                    phi.set(r0 + r, c, m.get(r, c).clone());
                }
            }
            r0 += m.rows;
        }
        // Rows of π span the annihilator of im φ, so ker π = im φ.
        let pi_rows = phi.transpose().nullspace();
        let new_dim = pi_rows.len();
        let mut c0 = 0;
        for &a in &out {
            let j = self.orient[a].1;
            let dj = self.rep.dims[j];
            let mut m = Matrix::zeros(new_dim, dj);
            for (r, row) in pi_rows.iter().enumerate() {
                for c in 0..dj {
                    m.set(r, c, row[c0 + c].clone());
                }
            }
            c0 += dj;
            self.rep.maps[a] = m;
            self.orient[a] = (j, k);
        }
        self.rep.dims[k] = new_dim;
    }
}

/// The inverse Coxeter functor `C⁻ = S⁻_{k_n} ⋯ S⁻_{k_1}` along an admissible
/// source ordering; on indecomposables it computes `τ⁻`.
pub fn coxeter_minus(shape: &Shape, m: &Representation) -> Representation {
    let mut r = Reflected { orient: shape.arrows.clone(), rep: m.clone() };
    for k in shape.topological_order() {
        r.reflect_at_source(k);
    }
    debug_assert_eq!(r.orient, shape.arrows);
    r.rep
}

/// One representative per isomorphism class, as the `τ⁻`-orbits of the
/// indecomposable projectives.
pub fn indecomposable_reps(shape: &Shape) -> Vec<Representation> {
    let mut out = Vec::new();
    for i in 0..shape.n {
        let mut m = projective_rep(shape, i);
        while !m.is_zero() {
            out.push(m.clone());
            m = coxeter_minus(shape, &m);
        }
    }
    out
}

/// Standard basis vectors of `Q^dim` completing the span of `family` (greedy).
pub(crate) fn complement(dim: usize, family: &[Vec<Q>], candidates: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut acc: Vec<Vec<Q>> = family.to_vec();
    let mut out = Vec::new();
    let mut span = Span::new(dim, &acc);
    for c in candidates {
        if !span.contains(c) {
            acc.push(c.clone());
            out.push(c.clone());
            span = Span::new(dim, &acc);
        }
    }
    out
}

fn unit(dim: usize, k: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[k] = q(1);
    v
}

/// Minimal projective presentation `⊕P_{p1} → ⊕P_{p0} ↠ M`, as a scalar matrix
/// `f` (`|p0| × |p1|`) in summand coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub p1: Vec<usize>,
    pub p0: Vec<usize>,
    pub f: Matrix,
}

pub fn minimal_presentation(shape: &Shape, m: &Representation) -> Result<Presentation> {
    m.validate(shape)?;
    // Top of M: complements of the arrow images at each vertex.
    let mut p0 = Vec::new();
    let mut gens: Vec<Vec<Q>> = Vec::new();
    for i in 0..shape.n {
        let d = m.dims[i];
        let mut images = Vec::new();
        for (a, &(_, t)) in shape.arrows.iter().enumerate() {
            if t == i {
                let mt = m.maps[a].transpose();
                images.extend((0..mt.rows).map(|r| mt.row(r).to_vec()));
            }
        }
        let units: Vec<Vec<Q>> = (0..d).map(|k| unit(d, k)).collect();
        for g in complement(d, &images, &units) {
            p0.push(i);
            gens.push(g);
        }
    }
    let ns = p0.len();
    // Kernel of P0 ↠ M at every vertex, in summand coordinates.
    let mut kernel: Vec<Vec<Vec<Q>>> = Vec::with_capacity(shape.n);
    for k in 0..shape.n {
        let present: Vec<usize> = (0..ns).filter(|&s| shape.reaches(p0[s], k)).collect();
        let mut p = Matrix::zeros(m.dims[k], present.len());
        for (c, &s) in present.iter().enumerate() {
            let img = m.path_action(shape, p0[s], k).expect("reachable").mul(&Matrix::from_rows(
                gens[s].len(),
                1,
                gens[s].clone(),
            ));
            for r in 0..m.dims[k] {
                p.set(r, c, img.get(r, 0).clone());
            }
        }
        if p.rank() != m.dims[k] {
            return Err(Error::Structural("top does not generate the representation".into()));
        }
        kernel.push(
            p.nullspace()
                .into_iter()
                .map(|x| {
                    let mut v = vec![Q::zero(); ns];
                    for (c, &s) in present.iter().enumerate() {
                        v[s] = x[c].clone();
                    }
                    v
                })
                .collect(),
        );
    }
    // Top of the kernel; arrows act as the identity in summand coordinates.
    let mut p1 = Vec::new();
    let mut kgens: Vec<Vec<Q>> = Vec::new();
    for j in 0..shape.n {
        let mut images = Vec::new();
        for &(s, t) in &shape.arrows {
            if t == j {
                images.extend(kernel[s].iter().cloned());
            }
        }
        for g in complement(ns, &images, &kernel[j]) {
            p1.push(j);
            kgens.push(g);
        }
    }
    for k in 0..shape.n {
        let hits: Vec<Vec<Q>> =
            (0..p1.len()).filter(|&r| shape.reaches(p1[r], k)).map(|r| kgens[r].clone()).collect();
        if hits.len() != kernel[k].len() || Span::new(ns, &hits).dim() != hits.len() {
            return Err(Error::Structural("kernel does not split into projectives".into()));
        }
    }
    let mut f = Matrix::zeros(ns, p1.len());
    for (r, g) in kgens.iter().enumerate() {
        for (s, x) in g.iter().enumerate() {
            f.set(s, r, x.clone());
        }
    }
    Ok(Presentation { p1, p0, f })
}

/// `dim Ext¹(M, N)` from the presentation of `M`: the cokernel of
/// `Hom(P0, N) → Hom(P1, N)`.
pub fn ext1_dim(shape: &Shape, pres: &Presentation, n: &Representation) -> usize {
    let rows: usize = pres.p1.iter().map(|&j| n.dims[j]).sum();
    let cols: usize = pres.p0.iter().map(|&i| n.dims[i]).sum();
    let mut m = Matrix::zeros(rows, cols);
    let mut r0 = 0;
    for (r, &j) in pres.p1.iter().enumerate() {
        let mut c0 = 0;
        for (s, &i) in pres.p0.iter().enumerate() {
            let c = pres.f.get(s, r);
            if !c.is_zero() {
                let act = n.path_action(shape, i, j).expect("supported entry").scale(c);
                for x in 0..act.rows {
                    for y in 0..act.cols {
                        m.set(r0 + x, c0 + y, act.get(x, y).clone());
                    }
                }
            }
            c0 += n.dims[i];
        }
        r0 += n.dims[j];
    }
    rows - m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projectives_and_homs() {
        let a3 = Shape::of(DynkinType::A(3));
        assert_eq!(projective_rep(&a3, 0).dims, vec![1, 1, 1]);
        assert_eq!(projective_rep(&a3, 2).dims, vec![0, 0, 1]);
        let d4 = Shape::of(DynkinType::D(4));
        assert_eq!(projective_rep(&d4, 1).dims, vec![0, 1, 1, 1]);
        let (p1, p3) = (projective_rep(&a3, 0), projective_rep(&a3, 2));
        assert_eq!(rep_hom(&a3, &p3, &p1).len(), 1);
        assert_eq!(rep_hom(&a3, &p1, &p3).len(), 0);
        let s = Representation::simple(&a3, 1);
        assert_eq!(rep_hom(&a3, &s, &s).len(), 1);
        for h in rep_hom(&a3, &p3, &p1) {
            assert!(h.is_morphism(&a3, &p3, &p1));
        }
    }

    #[test]
    fn presentations_in_a3() {
        let a3 = Shape::of(DynkinType::A(3));
        let s1 = Representation::simple(&a3, 0);
        let p = minimal_presentation(&a3, &s1).unwrap();
        assert_eq!((p.p1.clone(), p.p0.clone()), (vec![1], vec![0]));
        let p1 = projective_rep(&a3, 0);
        let mut m = p1.clone();
        m.dims = vec![1, 1, 0];
        m.maps = vec![Matrix::from_i64(&[vec![1]]), Matrix::zeros(0, 1)];
        let p = minimal_presentation(&a3, &m).unwrap();
        assert_eq!((p.p1, p.p0), (vec![2], vec![0]));
        let p = minimal_presentation(&a3, &p1).unwrap();
        assert!(p.p1.is_empty());
    }

    #[test]
    fn indecomposable_counts() {
        for t in [DynkinType::A(3), DynkinType::D(4), DynkinType::E(6)] {
            assert_eq!(indecomposable_reps(&Shape::of(t)).len(), t.num_positive_roots(), "{t}");
        }
    }
}
