//! The basic-triangle ice quiver with potential, built from the AR quiver of
//! `Fun([1], proj I)`, and the closed-form triangular grid for linear type A.

use std::collections::BTreeSet;

use crate::ar_engine::{ar_quiver_mor, ArQuiver, Family, MorMap};
use crate::dynkin::{rank_cap, DynkinType};
use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::qcore::{quiver_isomorphic, CyclicWord, IceQuiver, IceQuiverWP, IsoWitness, Potential, QPMatching, Quiver};

/// Index of the `{0→P}` side.
pub const SIDE_ZERO_TO_P: usize = 0;
/// Index of the `{P→0}` side.
pub const SIDE_P_TO_ZERO: usize = 1;
/// Index of the `{P=P}` side carrying the dual arrows of `I^op`.
pub const SIDE_IDENTITY: usize = 2;

/// A basic-triangle QP with its three boundary sides; `sides[s][i]` is the
/// vertex of side `s` indexed by the Dynkin vertex `i` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleQP {
    pub qp: IceQuiverWP,
    pub sides: [Vec<String>; 3],
}

impl TriangleQP {
    pub fn rank(&self) -> usize {
        self.sides[0].len()
    }

    /// The frozen arrows joining two vertices of side `s`.
    pub fn side_arrows(&self, s: usize) -> Vec<String> {
        let vs: BTreeSet<&String> = self.sides[s].iter().collect();
        self.qp
            .frozen_arrows
            .iter()
            .filter(|a| {
                let arr = self.qp.quiver.arrow(a).expect("validated");
                vs.contains(&arr.source) && vs.contains(&arr.target)
            })
            .cloned()
            .collect()
    }

    /// The frozen arrow joining the vertices `i` and `j` of side `s`, if any,
    /// and whether it points from `i` to `j`.
    pub fn side_arrow(&self, s: usize, i: usize, j: usize) -> Option<(String, bool)> {
        let (x, y) = (&self.sides[s][i], &self.sides[s][j]);
        self.side_arrows(s).into_iter().find_map(|a| {
            let arr = self.qp.quiver.arrow(&a).expect("validated");
            if (&arr.source, &arr.target) == (x, y) {
                Some((a.clone(), true))
            } else if (&arr.source, &arr.target) == (y, x) {
                Some((a.clone(), false))
            } else {
                None
            }
        })
    }

    /// Checks that the sides partition the frozen vertices and that the frozen
    /// arrows are exactly the arrows within sides.
    pub fn validate(&self) -> Result<()> {
        self.qp.validate()?;
        let n = self.rank();
        if self.sides.iter().any(|s| s.len() != n) {
            return Err(Error::Structural("sides of unequal length".into()));
        }
        let all: BTreeSet<String> = self.sides.iter().flatten().cloned().collect();
        if all.len() != 3 * n || all != self.qp.frozen_vertices {
            return Err(Error::Structural("sides do not partition the frozen vertices".into()));
        }
        let within: BTreeSet<String> = (0..3).flat_map(|s| self.side_arrows(s)).collect();
        if within != self.qp.frozen_arrows {
            return Err(Error::Structural("frozen arrows are not the side subquivers".into()));
        }
        Ok(())
    }
}

fn word(q: &Quiver, arrows: &[&str]) -> Result<CyclicWord> {
    CyclicWord::new(q, arrows)
}

fn bfs(n: usize, from: usize, step: impl Fn(usize) -> Vec<usize>) -> Vec<usize> {
    let mut dist = vec![usize::MAX; n];
    dist[from] = 0;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for w in step(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Among the shortest paths of AR arrows `x ⇝ y`, the least one (by arrow
/// ids) with nonzero composite, in traversal order.
fn shortest_path(ar: &ArQuiver, x: usize, y: usize) -> Result<Vec<usize>> {
    let n = ar.objects.len();
    let from_x = bfs(n, x, |v| ar.arrows.iter().filter(|a| a.source == v).map(|a| a.target).collect());
    let to_y = bfs(n, y, |v| ar.arrows.iter().filter(|a| a.target == v).map(|a| a.source).collect());
    let fail = |what: &str| Error::Structural(format!("{what} {} -> {}", ar.objects[x].id, ar.objects[y].id));
    let len = from_x[y];
    if len == usize::MAX {
        return Err(fail("no path"));
    }
    // Arrows on some shortest path, leaving each object in increasing id order.
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, a) in ar.arrows.iter().enumerate() {
        if from_x[a.source] != usize::MAX && to_y[a.target] != usize::MAX && from_x[a.source] + 1 + to_y[a.target] == len {
            out[a.source].push(k);
        }
    }
    for v in &mut out {
        v.sort_by(|&i, &j| ar.arrows[i].id.cmp(&ar.arrows[j].id));
    }
    // Depth-first in lexicographic order; a zero partial composite stays zero.
    fn dfs(ar: &ArQuiver, out: &[Vec<usize>], v: usize, y: usize, m: MorMap, path: &mut Vec<usize>) -> bool {
        if m.is_zero() {
            return false;
        }
        if v == y {
            return true;
        }
        for &k in &out[v] {
            path.push(k);
            if dfs(ar, out, ar.arrows[k].target, y, ar.arrows[k].map.compose(&m), path) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut path = Vec::new();
    if dfs(ar, &out, x, y, MorMap::identity(&ar.objects[x]), &mut path) {
        Ok(path)
    } else {
        Err(fail("only zero composites"))
    }
}

/// The triangle QP of a Dynkin type, from its AR quiver.
pub fn triangle_qp(t: DynkinType) -> Result<TriangleQP> {
    let t = t.validated()?.with_cap(rank_cap())?;
    triangle_qp_from_ar(&ar_quiver_mor(t)?)
}

/// The triangle QP assembled from a precomputed AR quiver.
pub fn triangle_qp_from_ar(ar: &ArQuiver) -> Result<TriangleQP> {
    let n = ar.shape.n;
    let id = |k: usize| ar.objects[k].id.clone();
    let mut q = ar.to_quiver();
    let mut w = Potential::zero();

    for mesh in &ar.meshes {
        let (x, z) = (id(mesh.source), id(mesh.target));
        let beta = format!("β1[{z}->{x}]");
        q.add_arrow(&beta, &z, &x, &beta)?;
        for term in &mesh.terms {
            let cyc = word(&q, &[&beta, &ar.arrows[term.second].id, &ar.arrows[term.first].id])?;
            w.add_term(cyc, Q::from_integer(term.sign.into()));
        }
    }

    let find = |family: Family, i: usize| {
        ar.objects.iter().position(|o| o.family == family && o.p1.first().or(o.p0.first()) == Some(&i)).expect("family member")
    };
    let mut duals = Vec::new();
    // An arrow of `I` whose map factors through three or more AR arrows (next
    // to a branch vertex) still gets a dual, closing the longer cycle.
    for &(j, i) in &ar.shape.arrows {
        let (x, y) = (find(Family::Identity, i), find(Family::Identity, j));
        let path = shortest_path(ar, x, y)?;
        let beta = format!("β2[{}->{}]", id(y), id(x));
        q.add_arrow(&beta, id(y), id(x), &beta)?;
        let mut cyc: Vec<&str> = vec![&beta];
        cyc.extend(path.iter().rev().map(|&k| ar.arrows[k].id.as_str()));
        w.add_term(word(&q, &cyc)?, -Q::from_integer(1.into()));
        duals.push(beta);
    }

    let mut sides: [Vec<String>; 3] = Default::default();
    for i in 0..n {
        sides[SIDE_ZERO_TO_P].push(id(find(Family::ZeroToP, i)));
        sides[SIDE_P_TO_ZERO].push(id(find(Family::PToZero, i)));
        sides[SIDE_IDENTITY].push(id(find(Family::Identity, i)));
    }
    let family = |k: usize| ar.objects[k].family;
    let mut frozen_arrows: BTreeSet<String> = ar
        .arrows
        .iter()
        .filter(|a| {
            let f = family(a.source);
            f == family(a.target) && matches!(f, Family::ZeroToP | Family::PToZero)
        })
        .map(|a| a.id.clone())
        .collect();
    frozen_arrows.extend(duals);
    let frozen_vertices = sides.iter().flatten().cloned().collect();
    let qp = IceQuiverWP::new(IceQuiver { quiver: q, frozen_vertices, frozen_arrows }, w)?;
    let out = TriangleQP { qp, sides };
    out.validate()?;
    Ok(out)
}

/// Matching of side `s` of `a` with side `s2` of `b` sending index `i` to
/// `perm(i)`; arrows keeping their orientation are shared.
pub fn side_matching(a: &TriangleQP, s: usize, b: &TriangleQP, s2: usize, perm: &dyn Fn(usize) -> usize) -> Result<QPMatching> {
    let n = a.rank();
    if b.rank() != n {
        return Err(Error::InvalidMatching("sides of different rank".into()));
    }
    let mut m = QPMatching::default();
    for i in 0..n {
        m.vertices.insert(a.sides[s][i].clone(), b.sides[s2][perm(i)].clone());
    }
    for i in 0..n {
        for j in i + 1..n {
            let (Some((x, fx)), other) = (a.side_arrow(s, i, j), b.side_arrow(s2, perm(i), perm(j))) else { continue };
            let (y, fy) = other.ok_or_else(|| Error::InvalidMatching(format!("no partner for `{x}`")))?;
            if fx == fy {
                m.shared.insert(x.clone());
            }
            m.arrows.insert(x, y);
        }
    }
    m.validate(&a.qp, &b.qp)?;
    Ok(m)
}

/// Barycentric vertex id of the grid point in row `r`, position `k`.
fn grid_id(big_n: usize, r: usize, k: usize) -> String {
    format!("({},{},{})", big_n - r, r - k, k)
}

/// The triangular grid of side `n + 1` minus its corners, with rows `r` and
/// positions `0 ≤ k ≤ r`. Horizontal arrows point left and are the duals; the
/// others point down-right and up-right. Downward small triangles enter the
/// potential with `+1`, upward ones with `−1`.
pub fn triangle_qp_grid(n: usize) -> Result<TriangleQP> {
    if n == 0 {
        return Err(Error::Domain("grid needs n ≥ 1".into()));
    }
    let big = n + 1;
    let corner = |r: usize, k: usize| (r == 0) || (r == big && (k == 0 || k == big));
    let on_side = |r: usize, k: usize| [k == 0, k == r, r == big];
    let boundary = |a: (usize, usize), b: (usize, usize)| {
        let (sa, sb) = (on_side(a.0, a.1), on_side(b.0, b.1));
        (0..3).any(|s| sa[s] && sb[s])
    };
    let v = |r: usize, k: usize| grid_id(big, r, k);

    let mut q = Quiver::new();
    let mut frozen_vertices = BTreeSet::new();
    for r in 1..=big {
        for k in 0..=r {
            if corner(r, k) {
                continue;
            }
            q.add_vertex(v(r, k), v(r, k))?;
            if on_side(r, k).iter().any(|&b| b) {
                frozen_vertices.insert(v(r, k));
            }
        }
    }
    let mut frozen_arrows = BTreeSet::new();
    let mut edge = |q: &mut Quiver, from: (usize, usize), to: (usize, usize), dual: bool| -> Result<String> {
        let (s, t) = (v(from.0, from.1), v(to.0, to.1));
        let label = if dual { format!("β[{s}->{t}]") } else { format!("α[{s}->{t}]") };
        q.add_arrow(&label, &s, &t, &label)?;
        if boundary(from, to) {
            frozen_arrows.insert(label.clone());
        }
        Ok(label)
    };
    let live = |r: usize, k: usize| r <= big && k <= r && !corner(r, k);
    let mut left = std::collections::BTreeMap::new();
    let mut down = std::collections::BTreeMap::new();
    let mut up = std::collections::BTreeMap::new();
    for r in 1..=big {
        for k in 0..=r {
            if !live(r, k) {
                continue;
            }
            if k >= 1 && live(r, k - 1) {
                left.insert((r, k), edge(&mut q, (r, k), (r, k - 1), true)?);
            }
            if live(r + 1, k + 1) {
                down.insert((r, k), edge(&mut q, (r, k), (r + 1, k + 1), false)?);
            }
            if live(r - 1, k) {
                up.insert((r, k), edge(&mut q, (r, k), (r - 1, k), false)?);
            }
        }
    }

    let mut w = Potential::zero();
    for r in 0..big {
        for k in 0..=r {
            // Down triangle (r,k), (r,k+1), (r+1,k+1): TR → TL → B → TR.
            if let (Some(a), Some(b), Some(c)) = (left.get(&(r, k + 1)), down.get(&(r, k)), up.get(&(r + 1, k + 1))) {
                w.add_term(word(&q, &[c, b, a])?, Q::from_integer(1.into()));
            }
            // Up triangle (r,k), (r+1,k), (r+1,k+1): BR → BL → top → BR.
            if let (Some(a), Some(b), Some(c)) = (left.get(&(r + 1, k + 1)), up.get(&(r + 1, k)), down.get(&(r, k))) {
                w.add_term(word(&q, &[c, b, a])?, -Q::from_integer(1.into()));
            }
        }
    }

    let mut sides: [Vec<String>; 3] = Default::default();
    for i in 1..=n {
        sides[SIDE_ZERO_TO_P].push(v(i, 0));
        sides[SIDE_P_TO_ZERO].push(v(big - i, big - i));
        sides[SIDE_IDENTITY].push(v(big, big - i));
    }
    let qp = IceQuiverWP::new(IceQuiver { quiver: q, frozen_vertices, frozen_arrows }, w)?;
    let out = TriangleQP { qp, sides };
    out.validate()?;
    Ok(out)
}

/// Outcome of comparing the AR and grid pipelines.
#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub t: DynkinType,
    pub witness: Option<IsoWitness>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.witness.is_some()
    }
}

/// Compares `triangle_qp(A_n)` with `triangle_qp_grid(n)`, allowing dual
/// arrows to be negated.
pub fn triangle_consistency(t: DynkinType) -> Result<ConsistencyReport> {
    let DynkinType::A(n) = t else {
        return Err(Error::Unsupported(format!("grid pipeline exists only in type A, not {t}")));
    };
    let ar = triangle_qp(t)?;
    let grid = triangle_qp_grid(n)?;
    Ok(ConsistencyReport { t, witness: quiver_isomorphic(&ar.qp, &grid.qp, true, true) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_triangle() {
        let tq = triangle_qp(DynkinType::A(1)).unwrap();
        assert_eq!(tq.qp.quiver.num_vertices(), 3);
        assert_eq!(tq.qp.quiver.num_arrows(), 3);
        assert_eq!(tq.qp.frozen_vertices.len(), 3);
        assert!(tq.qp.frozen_arrows.is_empty());
        assert_eq!(tq.qp.potential.len(), 1);
        let g = triangle_qp_grid(1).unwrap();
        assert!(quiver_isomorphic(&tq.qp, &g.qp, true, true).is_some());
    }

    #[test]
    fn a3_census() {
        let tq = triangle_qp(DynkinType::A(3)).unwrap();
        let x = &tq.qp;
        assert_eq!(
            (x.quiver.num_vertices(), x.quiver.num_arrows(), x.frozen_vertices.len(), x.frozen_arrows.len(), x.potential.len()),
            (12, 24, 9, 6, 13)
        );
        for s in 0..3 {
            assert_eq!(tq.side_arrows(s).len(), 2);
        }
    }

    #[test]
    fn grid_census() {
        for n in 1..=5 {
            let g = triangle_qp_grid(n).unwrap();
            let big = n + 1;
            assert_eq!(g.qp.quiver.num_vertices(), (big + 1) * (big + 2) / 2 - 3);
            assert_eq!(g.qp.frozen_vertices.len(), 3 * n);
            assert_eq!(g.qp.frozen_arrows.len(), 3 * (n - 1));
            assert_eq!(g.qp.potential.len(), big * big - 3);
        }
        assert_eq!(triangle_qp_grid(2).unwrap().qp.quiver.num_vertices(), 7);
    }

    #[test]
    fn pipelines_agree() {
        for n in 1..=3 {
            assert!(triangle_consistency(DynkinType::A(n)).unwrap().passed(), "A{n}");
        }
    }

    #[test]
    fn arrow_count_for_all_small_types() {
        for t in [DynkinType::A(2), DynkinType::A(4), DynkinType::D(4), DynkinType::D(5), DynkinType::E(6)] {
            let ar = ar_quiver_mor(t).unwrap();
            let tq = triangle_qp_from_ar(&ar).unwrap();
            assert_eq!(tq.qp.quiver.num_arrows(), ar.arrows.len() + ar.meshes.len() + ar.shape.arrows.len(), "{t}");
            assert_eq!(tq.qp.quiver.num_vertices(), 2 * t.rank() + t.num_positive_roots(), "{t}");
            assert_eq!(tq.qp.frozen_vertices.len(), 3 * t.rank(), "{t}");
        }
    }
}
