//! Trivalent ribbon graphs of marked surfaces, directions, flips, and the
//! surface ice quiver with potential glued from basic triangles.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::dynkin::{sigma, DynkinType};
use crate::error::{Error, Result};
use crate::ginzburg::{verify_gluing, GluingReport};
use crate::qcore::{amalgamate, glue_within, quiver_isomorphic, GluePotential, IceQuiverWP, IsoWitness, QPMatching};
use crate::triangle::{side_matching, triangle_qp, TriangleQP, SIDE_IDENTITY, SIDE_P_TO_ZERO, SIDE_ZERO_TO_P};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonVertex {
    pub id: String,
    /// Incident halfedges in counterclockwise order.
    pub cyclic: Vec<String>,
}

/// A ribbon graph with external legs; legs are the fixed points of the pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    pub halfedges: Vec<String>,
    pub pairing: BTreeMap<String, String>,
    pub vertices: Vec<RibbonVertex>,
}

/// A distinguished halfedge per vertex and a chosen halfedge per internal edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Direction {
    pub distinguished: BTreeMap<String, String>,
    pub edges: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct RibbonJson {
    halfedges: Vec<String>,
    pairing: Vec<[String; 2]>,
    boundary: Vec<String>,
    vertices: Vec<RibbonVertex>,
    direction: Direction,
}

impl RibbonGraph {
    pub fn validate(&self) -> Result<()> {
        let all: BTreeSet<&String> = self.halfedges.iter().collect();
        if all.len() != self.halfedges.len() {
            return Err(Error::InvalidQuiver("repeated halfedge".into()));
        }
        for h in &self.halfedges {
            let p = self.pairing.get(h).ok_or_else(|| Error::InvalidQuiver(format!("halfedge `{h}` is unpaired")))?;
            if self.pairing.get(p) != Some(h) {
                return Err(Error::InvalidQuiver(format!("pairing is not an involution at `{h}`")));
            }
        }
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            for h in &v.cyclic {
                if !all.contains(h) || !seen.insert(h) {
                    return Err(Error::InvalidQuiver(format!("halfedge `{h}` misplaced at vertex `{}`", v.id)));
                }
            }
        }
        if seen.len() != all.len() {
            return Err(Error::InvalidQuiver("some halfedge has no vertex".into()));
        }
        Ok(())
    }

    pub fn partner(&self, h: &str) -> &str {
        &self.pairing[h]
    }

    pub fn is_leg(&self, h: &str) -> bool {
        self.partner(h) == h
    }

    /// Vertex index and position of a halfedge.
    pub fn locate(&self, h: &str) -> Option<(usize, usize)> {
        self.vertices.iter().enumerate().find_map(|(i, v)| v.cyclic.iter().position(|x| x == h).map(|k| (i, k)))
    }

    /// The halfedge after `h` in the counterclockwise order at its vertex.
    pub fn next(&self, h: &str) -> &str {
        let (i, k) = self.locate(h).expect("known halfedge");
        let c = &self.vertices[i].cyclic;
        &c[(k + 1) % c.len()]
    }

    /// Internal edges as `(id, h, h′)` with `h < h′`.
    pub fn internal_edges(&self) -> Vec<(String, String, String)> {
        self.pairing
            .iter()
            .filter(|(a, b)| a < b)
            .map(|(a, b)| (edge_id(a, b), a.clone(), b.clone()))
            .collect()
    }

    pub fn legs(&self) -> Vec<String> {
        self.halfedges.iter().filter(|h| self.is_leg(h)).cloned().collect()
    }

    pub fn to_json(&self, d: &Direction) -> Result<String> {
        let doc = RibbonJson {
            halfedges: self.halfedges.clone(),
            pairing: self.pairing.iter().filter(|(a, b)| a < b).map(|(a, b)| [a.clone(), b.clone()]).collect(),
            boundary: self.legs(),
            vertices: self.vertices.clone(),
            direction: d.clone(),
        };
        serde_json::to_string(&doc).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<(RibbonGraph, Direction)> {
        let doc: RibbonJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut pairing: BTreeMap<String, String> = doc.boundary.iter().map(|h| (h.clone(), h.clone())).collect();
        for [a, b] in doc.pairing {
            pairing.insert(a.clone(), b.clone());
            pairing.insert(b, a);
        }
        let g = RibbonGraph { halfedges: doc.halfedges, pairing, vertices: doc.vertices };
        g.validate()?;
        Ok((g, doc.direction))
    }
}

pub fn edge_id(a: &str, b: &str) -> String {
    if a <= b {
        format!("{a}~{b}")
    } else {
        format!("{b}~{a}")
    }
}

/// The dual graph of the fan triangulation of the `n`-gon from corner 0.
/// Triangle `k` has corners `0, k, k+1`; halfedge `t{k}:{a}{b}` crosses its side
/// `{a, b}`. The default direction distinguishes the side towards the next
/// triangle (the outer side for the last one) and points internal edges away
/// from corner 1.
pub fn polygon_ribbon(n: usize) -> Result<(RibbonGraph, Direction)> {
    if n < 3 {
        return Err(Error::Domain(format!("a polygon needs at least 3 corners, got {n}")));
    }
    let h = |k: usize, a: usize, b: usize| format!("t{k}:{a}-{b}");
    let mut g = RibbonGraph { halfedges: vec![], pairing: BTreeMap::new(), vertices: vec![] };
    let mut d = Direction::default();
    let last = n - 2;
    for k in 1..=last {
        let cyclic = vec![h(k, 0, k), h(k, k, k + 1), h(k, k + 1, 0)];
        g.halfedges.extend(cyclic.iter().cloned());
        let id = format!("t{k}");
        d.distinguished.insert(id.clone(), if k < last { h(k, k + 1, 0) } else { h(k, k, k + 1) });
        g.vertices.push(RibbonVertex { id, cyclic });
    }
    for x in &g.halfedges {
        g.pairing.insert(x.clone(), x.clone());
    }
    for k in 1..last {
        let (a, b) = (h(k, k + 1, 0), h(k + 1, 0, k + 1));
        g.pairing.insert(a.clone(), b.clone());
        g.pairing.insert(b.clone(), a.clone());
        d.edges.insert(edge_id(&a, &b), b);
    }
    g.validate()?;
    Ok((g, d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonInvariants {
    pub genus: usize,
    pub boundary_components: usize,
    pub marked_points: usize,
    pub trivalent: bool,
    /// Every boundary component carries at least one marked point.
    pub boundary_marked: bool,
}

fn connected(g: &RibbonGraph) -> bool {
    if g.vertices.is_empty() {
        return true;
    }
    let index: BTreeMap<&str, usize> =
        g.vertices.iter().enumerate().flat_map(|(i, v)| v.cyclic.iter().map(move |h| (h.as_str(), i))).collect();
    let mut seen = vec![false; g.vertices.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for h in &g.vertices[i].cyclic {
            let j = index[g.partner(h)];
            if !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Faces are the orbits of `h ↦ next(pair(h))`; each is a boundary component
/// whose marked points sit between consecutive legs.
pub fn ribbon_invariants(g: &RibbonGraph) -> Result<RibbonInvariants> {
    g.validate()?;
    if !connected(g) {
        return Err(Error::Domain("ribbon graph is disconnected".into()));
    }
    let mut seen = BTreeSet::new();
    let mut faces = 0usize;
    let mut boundary_marked = true;
    for h in &g.halfedges {
        if seen.contains(h) {
            continue;
        }
        faces += 1;
        let mut legs = 0;
        let mut x = h.clone();
        while seen.insert(x.clone()) {
            if g.is_leg(&x) {
                legs += 1;
            }
            x = g.next(g.partner(&x)).to_string();
        }
        boundary_marked &= legs > 0;
    }
    let v = g.vertices.len() as i64;
    let e = g.internal_edges().len() as i64;
    let chi = v - e;
    let twice_genus = 2 - faces as i64 - chi;
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Err(Error::Structural(format!("inconsistent Euler characteristic {chi} with {faces} faces")));
    }
    Ok(RibbonInvariants {
        genus: (twice_genus / 2) as usize,
        boundary_components: faces,
        marked_points: g.legs().len(),
        trivalent: g.vertices.iter().all(|v| v.cyclic.len() == 3),
        boundary_marked,
    })
}

/// Flip of the internal edge containing halfedge `h`: with `(h, a, b)` and
/// `(h′, c, d)` at its ends, the result has `(h, b, c)` and `(h′, d, a)`.
pub fn flip(g: &RibbonGraph, h: &str) -> Result<RibbonGraph> {
    g.validate()?;
    let h2 = g.pairing.get(h).ok_or_else(|| Error::Domain(format!("unknown halfedge `{h}`")))?.clone();
    if h2 == h {
        return Err(Error::Unsupported(format!("`{h}` is a boundary leg")));
    }
    let (u, ku) = g.locate(h).expect("validated");
    let (v, kv) = g.locate(&h2).expect("validated");
    if u == v {
        return Err(Error::Unsupported(format!("edge at `{h}` is a loop")));
    }
    if g.vertices[u].cyclic.len() != 3 || g.vertices[v].cyclic.len() != 3 {
        return Err(Error::Unsupported("flip needs trivalent endpoints".into()));
    }
    let at = |i: usize, k: usize, s: usize| g.vertices[i].cyclic[(k + s) % 3].clone();
    let (a, b) = (at(u, ku, 1), at(u, ku, 2));
    let (c, d) = (at(v, kv, 1), at(v, kv, 2));
    let mut out = g.clone();
    out.vertices[u].cyclic = vec![h.to_string(), b, c];
    out.vertices[v].cyclic = vec![h2, d, a];
    Ok(out)
}

/// A halfedge bijection `G → H` commuting with the pairing and the cyclic orders.
pub fn ribbon_isomorphism(g: &RibbonGraph, hh: &RibbonGraph) -> Option<BTreeMap<String, String>> {
    if g.halfedges.len() != hh.halfedges.len() || g.vertices.len() != hh.vertices.len() {
        return None;
    }
    let start = g.halfedges.first()?;
    'candidates: for target in &hh.halfedges {
        let mut map: BTreeMap<String, String> = BTreeMap::new();
        let mut used = BTreeSet::new();
        let mut queue = VecDeque::from([(start.clone(), target.clone())]);
        while let Some((x, y)) = queue.pop_front() {
            match map.get(&x) {
                Some(z) if *z == y => continue,
                Some(_) => continue 'candidates,
                None => {}
            }
            if !used.insert(y.clone()) {
                continue 'candidates;
            }
            let vx = &g.vertices[g.locate(&x)?.0];
            let vy = &hh.vertices[hh.locate(&y)?.0];
            if vx.cyclic.len() != vy.cyclic.len() || g.is_leg(&x) != hh.is_leg(&y) {
                continue 'candidates;
            }
            map.insert(x.clone(), y.clone());
            queue.push_back((g.next(&x).to_string(), hh.next(&y).to_string()));
            queue.push_back((g.partner(&x).to_string(), hh.partner(&y).to_string()));
        }
        if map.len() == g.halfedges.len() {
            return Some(map);
        }
    }
    None
}

/// How frozen sides are identified when glued.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Identification {
    /// `σ` between sides of the same role, the identity between `I` and `I^op`.
    #[default]
    Standard,
    /// The roles of `σ` and the identity exchanged; used as a negative control.
    Swapped,
}

/// A surface QP with its per-vertex triangles (ids prefixed by the vertex id)
/// and the matchings of every internal edge, in gluing order.
#[derive(Clone, Debug)]
pub struct SurfaceQP {
    pub qp: IceQuiverWP,
    pub triangles: BTreeMap<String, TriangleQP>,
    pub gluings: Vec<(String, QPMatching)>,
    pub gluing_reports: Vec<(String, GluingReport)>,
}

/// Side role of each halfedge: the distinguished one is side 3, the next two
/// counterclockwise take sides 1 and 2.
fn side_roles(g: &RibbonGraph, d: &Direction) -> Result<BTreeMap<String, usize>> {
    let mut out = BTreeMap::new();
    for v in &g.vertices {
        if v.cyclic.len() != 3 {
            return Err(Error::Unsupported(format!("vertex `{}` is not trivalent", v.id)));
        }
        let h = d.distinguished.get(&v.id).ok_or_else(|| Error::Domain(format!("no distinguished halfedge at `{}`", v.id)))?;
        let k = v.cyclic.iter().position(|x| x == h).ok_or_else(|| Error::Domain(format!("`{h}` is not at `{}`", v.id)))?;
        out.insert(v.cyclic[k].clone(), SIDE_IDENTITY);
        out.insert(v.cyclic[(k + 1) % 3].clone(), SIDE_ZERO_TO_P);
        out.insert(v.cyclic[(k + 2) % 3].clone(), SIDE_P_TO_ZERO);
    }
    Ok(out)
}

fn sigma_permutation(t: DynkinType) -> Vec<usize> {
    let s = sigma(t);
    (1..=t.rank()).map(|i| s.objects[&i.to_string()].parse::<usize>().expect("numeric") - 1).collect()
}

pub fn surface_qp(g: &RibbonGraph, d: &Direction, t: DynkinType) -> Result<SurfaceQP> {
    surface_qp_with(g, d, t, Identification::Standard, false)
}

/// As [`surface_qp`]; with `verify`, each gluing step is also checked at the
/// level of Ginzburg presentations.
pub fn surface_qp_with(
    g: &RibbonGraph,
    d: &Direction,
    t: DynkinType,
    rule: Identification,
    verify: bool,
) -> Result<SurfaceQP> {
    g.validate()?;
    if !connected(g) {
        return Err(Error::Domain("ribbon graph is disconnected".into()));
    }
    let roles = side_roles(g, d)?;
    let base = triangle_qp(t)?;
    let owner: BTreeMap<&String, &String> = g.vertices.iter().flat_map(|v| v.cyclic.iter().map(move |h| (h, &v.id))).collect();
    let mut triangles = BTreeMap::new();
    for v in &g.vertices {
        let prefix = format!("{}:", v.id);
        let mut tq = base.clone();
        tq.qp = base.qp.prefixed(&prefix);
        for side in tq.sides.iter_mut() {
            for x in side.iter_mut() {
                *x = format!("{prefix}{x}");
            }
        }
        triangles.insert(v.id.clone(), tq);
    }
    let sig = sigma_permutation(t);
    let ident: Vec<usize> = (0..t.rank()).collect();

    let matching_for = |h: &String, h2: &String| -> Result<QPMatching> {
        let (r, r2) = (roles[h], roles[h2]);
        let same = (r == SIDE_IDENTITY) == (r2 == SIDE_IDENTITY);
        let use_sigma = same == (rule == Identification::Standard);
        let perm = if use_sigma { &sig } else { &ident };
        side_matching(&triangles[owner[h]], r, &triangles[owner[h2]], r2, &|i| perm[i])
    };

    // Breadth-first over vertices: tree edges amalgamate a new triangle, the
    // remaining edges glue within the accumulated QP.
    let start = &g.vertices[0].id;
    let mut acc = triangles[start].qp.clone();
    let mut placed: BTreeSet<&String> = BTreeSet::from([start]);
    let mut done: BTreeSet<String> = BTreeSet::new();
    let mut gluings = Vec::new();
    let mut reports = Vec::new();
    let mut queue = VecDeque::from([start]);
    let mut pending = Vec::new();
    while let Some(v) = queue.pop_front() {
        let vert = g.vertices.iter().find(|x| &x.id == v).expect("known vertex");
        for h in &vert.cyclic {
            let h2 = g.partner(h).to_string();
            if h2 == *h {
                continue;
            }
            let eid = edge_id(h, &h2);
            if done.contains(&eid) {
                continue;
            }
            let w = owner[&h2];
            if placed.contains(w) {
                pending.push((eid.clone(), h.clone(), h2.clone()));
                done.insert(eid);
                continue;
            }
            let m = matching_for(h, &h2)?;
            if verify {
                reports.push((eid.clone(), verify_gluing(&acc, &triangles[w].qp, &m)?));
            }
            acc = amalgamate(&acc, &triangles[w].qp, &m)?;
            gluings.push((eid.clone(), m));
            done.insert(eid);
            placed.insert(w);
            queue.push_back(w);
        }
    }
    for (eid, h, h2) in pending {
        let m = matching_for(&h, &h2)?;
        acc = glue_within(&acc, &m, GluePotential::Reduced)?;
        gluings.push((eid, m));
    }
    Ok(SurfaceQP { qp: acc, triangles, gluings, gluing_reports: reports })
}

#[derive(Clone, Debug)]
pub struct SquareReport {
    pub vertices: usize,
    pub frozen_vertices: usize,
    pub arrows: usize,
    pub quiver_match: bool,
    pub potential_witness: Option<IsoWitness>,
}

impl SquareReport {
    pub fn passed(&self) -> bool {
        self.quiver_match && self.potential_witness.is_some()
    }
}

pub const SQUARE_FIXTURE: &str = include_str!("../fixtures/square_A3.json");
pub const TRIANGLE_FIXTURE: &str = include_str!("../fixtures/triangle_A3.json");

/// Compares the glued square for `A₃` with the transcribed fixture.
pub fn square_check_with(rule: Identification) -> Result<SquareReport> {
    let (g, d) = polygon_ribbon(4)?;
    let s = surface_qp_with(&g, &d, DynkinType::A(3), rule, false)?;
    let fixture = crate::qcore::import_json(SQUARE_FIXTURE.as_bytes())?;
    Ok(SquareReport {
        vertices: s.qp.quiver.num_vertices(),
        frozen_vertices: s.qp.frozen_vertices.len(),
        arrows: s.qp.quiver.num_arrows(),
        quiver_match: quiver_isomorphic(&s.qp, &fixture, false, false).is_some(),
        potential_witness: quiver_isomorphic(&s.qp, &fixture, true, true),
    })
}

pub fn square_check() -> Result<SquareReport> {
    square_check_with(Identification::Standard)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygon_counts() {
        for (n, v, e) in [(3, 1, 0), (4, 2, 1), (6, 4, 3)] {
            let (g, _) = polygon_ribbon(n).unwrap();
            assert_eq!((g.vertices.len(), g.internal_edges().len(), g.legs().len()), (v, e, n));
            let inv = ribbon_invariants(&g).unwrap();
            assert_eq!((inv.genus, inv.boundary_components, inv.marked_points, inv.trivalent), (0, 1, n, true));
        }
        assert!(polygon_ribbon(2).is_err());
    }

    #[test]
    fn annulus() {
        let mut pairing = BTreeMap::new();
        pairing.insert("a".to_string(), "b".to_string());
        pairing.insert("b".to_string(), "a".to_string());
        pairing.insert("c".to_string(), "c".to_string());
        let g = RibbonGraph {
            halfedges: vec!["a".into(), "b".into(), "c".into()],
            pairing,
            vertices: vec![RibbonVertex { id: "v".into(), cyclic: vec!["a".into(), "b".into(), "c".into()] }],
        };
        let inv = ribbon_invariants(&g).unwrap();
        assert_eq!((inv.genus, inv.boundary_components), (0, 2));
        assert!(flip(&g, "a").is_err());
    }

    #[test]
    fn square_flip() {
        let (g, _) = polygon_ribbon(4).unwrap();
        let (_, h, _) = g.internal_edges().remove(0);
        let f = flip(&g, &h).unwrap();
        assert_eq!(ribbon_invariants(&f).unwrap(), ribbon_invariants(&g).unwrap());
        assert!(ribbon_isomorphism(&flip(&f, &h).unwrap(), &g).is_some());
        assert!(flip(&g, "t1:0-1").is_err());
    }

    #[test]
    fn json_round_trip() {
        let (g, d) = polygon_ribbon(5).unwrap();
        let (g2, d2) = RibbonGraph::from_json(&g.to_json(&d).unwrap()).unwrap();
        assert_eq!((g, d), (g2, d2));
    }

    #[test]
    fn square_a3() {
        let r = square_check().unwrap();
        assert_eq!((r.vertices, r.frozen_vertices, r.arrows), (21, 12, 44));
        assert!(r.quiver_match);
        assert!(r.passed());
    }
}
