//! Relative Ginzburg dg presentations of ice quivers with potential, their
//! boundary inclusions, and the gluing of two presentations along a matching.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;

use crate::dgpres::{check_dg_map, eliminate_pair, names, rename_generator, strict_pushout, DgMap, DgPresentation, GenClass};
use crate::dynkin::{pi2_of_quiver, psi};
use crate::error::{Error, Result};
use crate::linalg::{q, solve_gf2};
use crate::qcore::{amalgamate, cyclic_derivative, is_dual_label, IceQuiverWP, Path, PathSum, QPMatching, Quiver, Renaming};

/// A relative Ginzburg presentation together with the QP it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GinzburgPresentation {
    pub dg: DgPresentation,
    pub source: IceQuiverWP,
}

fn one(p: &DgPresentation, g: &str, c: i64) -> PathSum {
    PathSum::term(p.generator_path(g).expect("known generator"), q(c))
}

fn pair(p: &DgPresentation, x: &str, y: &str, c: i64) -> PathSum {
    PathSum::term(Path::from_arrows(p.graded(), &[x, y]).expect("composable"), q(c))
}

/// Generators `a`, `a*`, `a†` (frozen `a`), `L_i`, `l_i` (frozen `i`) with
/// `d(a*) = ∂_a W − a†`, `d(L_i) = l_i + Σ [a, a*]`, `d(l_i) = Σ [a, a†]`.
pub fn ginzburg(p: &IceQuiverWP) -> Result<GinzburgPresentation> {
    p.validate()?;
    let mut g = DgPresentation::new();
    for v in p.quiver.vertices() {
        g.add_object(v.id.clone(), v.label.clone())?;
    }
    g.quiver.frozen_vertices = p.frozen_vertices.clone();
    g.quiver.frozen_arrows = p.frozen_arrows.clone();
    let add = |g: &mut DgPresentation, id: String, s: &str, t: &str, deg: i32, label: String, class: GenClass| {
        g.classes.insert(id.clone(), class);
        g.add_generator(id, s, t, deg, label)
    };
    for a in p.quiver.arrows() {
        add(&mut g, a.id.clone(), &a.source, &a.target, 0, a.label.clone(), GenClass::Arrow)?;
    }
    for a in p.quiver.arrows() {
        add(&mut g, names::star(&a.id), &a.target, &a.source, 1, names::star(&a.label), GenClass::Star)?;
        if p.is_frozen_arrow(&a.id) {
            add(&mut g, names::dagger(&a.id), &a.target, &a.source, 0, names::dagger(&a.label), GenClass::Dagger)?;
        }
    }
    for v in p.quiver.vertices() {
        add(&mut g, names::big_l(&v.id), &v.id, &v.id, 2, names::big_l(&v.label), GenClass::BigL)?;
        if p.is_frozen_vertex(&v.id) {
            add(&mut g, names::small_l(&v.id), &v.id, &v.id, 1, names::small_l(&v.label), GenClass::SmallL)?;
        }
    }

    for a in p.quiver.arrows() {
        let mut d = cyclic_derivative(&p.quiver, &p.potential, &a.id)?;
        // Lift the derivative into the presentation's quiver.
        let mut lifted = PathSum::zero();
        for (path, c) in d.iter() {
            lifted.add_term(Path::raw(path.source().into(), path.target().into(), path.arrows().to_vec()), c.clone());
        }
        d = lifted;
        if p.is_frozen_arrow(&a.id) {
            d.add_assign(&one(&g, &names::dagger(&a.id), -1));
        }
        g.set_differential(&names::star(&a.id), d)?;
    }
    for v in p.quiver.vertices() {
        let mut d = PathSum::zero();
        let mut dl = PathSum::zero();
        for a in p.quiver.arrows_into(&v.id) {
            d.add_assign(&pair(&g, &a.id, &names::star(&a.id), 1));
            if p.is_frozen_arrow(&a.id) {
                dl.add_assign(&pair(&g, &a.id, &names::dagger(&a.id), 1));
            }
        }
        for a in p.quiver.arrows_out(&v.id) {
            d.add_assign(&pair(&g, &names::star(&a.id), &a.id, -1));
            if p.is_frozen_arrow(&a.id) {
                dl.add_assign(&pair(&g, &names::dagger(&a.id), &a.id, -1));
            }
        }
        if p.is_frozen_vertex(&v.id) {
            d.add_assign(&one(&g, &names::small_l(&v.id), 1));
            g.set_differential(&names::small_l(&v.id), dl)?;
        }
        g.set_differential(&names::big_l(&v.id), d)?;
    }
    Ok(GinzburgPresentation { dg: g, source: p.clone() })
}

/// The map `Π₂(F) → G` of the frozen part; `degenerate` when `F` is empty.
#[derive(Clone, Debug)]
pub struct BoundaryInclusion {
    pub source: DgPresentation,
    pub map: DgMap,
    pub degenerate: bool,
}

pub fn boundary_inclusion(g: &GinzburgPresentation) -> Result<BoundaryInclusion> {
    boundary_inclusion_of(g, &g.source.frozen_subquiver())
}

/// The restriction of the boundary inclusion to a full frozen subquiver `E`.
fn boundary_inclusion_of(g: &GinzburgPresentation, e: &Quiver) -> Result<BoundaryInclusion> {
    let src = pi2_of_quiver(e);
    let mut map = DgMap::default();
    for v in e.vertex_ids() {
        map.objects.insert(v.clone(), v.clone());
    }
    for gen in src.generator_ids() {
        map.generators.insert(gen.clone(), one(&g.dg, gen, 1));
    }
    let report = check_dg_map(&map, &src, &g.dg)?;
    if !report.passed() {
        return Err(Error::Structural(format!("boundary inclusion is not a dg map: {report}")));
    }
    Ok(BoundaryInclusion { degenerate: e.num_vertices() == 0, source: src, map })
}

/// The glued presentation and the renaming applied to the second QP.
#[derive(Clone, Debug)]
pub struct Glued {
    pub presentation: DgPresentation,
    pub renaming: Renaming,
}

/// The subquiver of `x` on the given vertices and arrows.
fn subquiver(x: &IceQuiverWP, vertices: &BTreeSet<String>, arrows: &BTreeSet<String>) -> Result<Quiver> {
    let mut q = Quiver::new();
    for v in x.quiver.vertices().filter(|v| vertices.contains(&v.id)) {
        q.add_vertex(v.id.clone(), v.label.clone())?;
    }
    for a in x.quiver.arrows().filter(|a| arrows.contains(&a.id)) {
        q.add_arrow(&a.id, &a.source, &a.target, &a.label)?;
    }
    Ok(q)
}

/// Strict pushout of `G′ ← Π₂(E′) → G` through `ψ`, followed by the reduction
/// moves: `(L_v, l_v)` cancel and `L_{v′}` takes the name `L_v`; a shared arrow
/// cancels `(e*, e†)` and `e′*` becomes `e*`; a reversed pair cancels
/// `(e*, e†)` and `(e′*, e)`, which sets `e′ = ∂_e W` and `e = ∂_{e′} W′`.
pub fn glue_and_reduce(g: &GinzburgPresentation, g2: &GinzburgPresentation, m: &QPMatching) -> Result<Glued> {
    let (p, p2) = (&g.source, &g2.source);
    m.validate(p, p2)?;
    let renaming = Renaming::avoiding(&p.quiver, &p2.quiver);
    let p2r = renaming.apply(p2);
    let m = renaming.apply_matching(m);
    let g2 = ginzburg(&p2r)?;

    let e = subquiver(p, &m.vertices.keys().cloned().collect(), &m.arrows.keys().cloned().collect())?;
    let e2 = subquiver(&p2r, &m.vertices.values().cloned().collect(), &m.arrows.values().cloned().collect())?;
    let incl = boundary_inclusion_of(&g2, &e2)?;
    let to_g = psi(&e2, &e, &m.inverse())?;
    let mut out = strict_pushout(&incl.map, &g2.dg, &to_g, &g.dg)?.presentation;

    for (v, v2) in &m.vertices {
        out = eliminate_pair(&out, &names::big_l(v), &names::small_l(v))?;
        out = rename_generator(&out, &names::big_l(v2), &names::big_l(v))?;
        out.quiver.frozen_vertices.remove(v);
    }
    for (a, b) in &m.arrows {
        out = eliminate_pair(&out, &names::star(a), &names::dagger(a))?;
        if m.shared.contains(a) {
            out = rename_generator(&out, &names::star(b), &names::star(a))?;
        } else {
            out = eliminate_pair(&out, &names::star(b), a)?;
        }
        out.quiver.frozen_arrows.remove(a);
    }
    Ok(Glued { presentation: out, renaming })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MatchLevel {
    Exact,
    UpToDualSigns,
    Mismatch,
}

#[derive(Clone, Debug)]
pub struct GluingReport {
    pub level: MatchLevel,
    /// Dual arrows whose sign flip aligns the two presentations.
    pub negated: BTreeSet<String>,
    pub mismatches: Vec<String>,
}

impl GluingReport {
    pub fn passed(&self) -> bool {
        self.level != MatchLevel::Mismatch
    }
}

/// Compares two presentations with the same generator names; dual arrows
/// (with their `*` and `†` partners) may change sign.
pub fn compare_presentations(a: &DgPresentation, b: &DgPresentation) -> GluingReport {
    let mut mismatches = Vec::new();
    let va: BTreeSet<&String> = a.graded().vertex_ids().collect();
    let vb: BTreeSet<&String> = b.graded().vertex_ids().collect();
    if va != vb {
        mismatches.push("object sets differ".into());
    }
    for x in a.graded().arrows() {
        match b.graded().arrow(&x.id) {
            Some(y) if (&y.source, &y.target, y.degree) == (&x.source, &x.target, x.degree) => {}
            Some(_) => mismatches.push(format!("generator {} has different endpoints or degree", x.id)),
            None => mismatches.push(format!("generator {} missing", x.id)),
        }
    }
    for y in b.generator_ids() {
        if a.graded().arrow(y).is_none() {
            mismatches.push(format!("generator {y} is extra"));
        }
    }
    if !mismatches.is_empty() {
        return GluingReport { level: MatchLevel::Mismatch, negated: BTreeSet::new(), mismatches };
    }

    // A sign variable per dual arrow of the quiver; `a*` and `a†` follow `a`.
    let base = |g: &str| -> String {
        match a.classes.get(g) {
            Some(GenClass::Star) | Some(GenClass::Dagger) => g[..g.len() - g.chars().last().map_or(0, char::len_utf8)].to_string(),
            _ => g.to_string(),
        }
    };
    let duals: Vec<String> = a
        .graded()
        .arrows()
        .filter(|x| a.classes.get(&x.id) == Some(&GenClass::Arrow) && is_dual_label(&x.label))
        .map(|x| x.id.clone())
        .collect();
    let var: BTreeMap<&str, usize> = duals.iter().enumerate().map(|(i, d)| (d.as_str(), i)).collect();
    let vars_of = |g: &str| var.get(base(g).as_str()).copied();
    let mut equations = Vec::new();
    for g in a.generator_ids() {
        let (da, db) = (a.differential(g), b.differential(g));
        let paths: BTreeSet<&Path> = da.iter().map(|(p, _)| p).chain(db.iter().map(|(p, _)| p)).collect();
        for path in paths {
            let (ca, cb) = (da.coeff(path), db.coeff(path));
            if ca.abs() != cb.abs() || ca == q(0) {
                mismatches.push(format!("d({g}) differs at {path}"));
                continue;
            }
            let mut vars: Vec<usize> = path.arrows().iter().filter_map(|x| vars_of(x)).collect();
            vars.extend(vars_of(g));
            equations.push((vars, ca != cb));
        }
    }
    if !mismatches.is_empty() {
        return GluingReport { level: MatchLevel::Mismatch, negated: BTreeSet::new(), mismatches };
    }
    match solve_gf2(duals.len(), &equations) {
        None => GluingReport {
            level: MatchLevel::Mismatch,
            negated: BTreeSet::new(),
            mismatches: vec!["no sign change of dual arrows aligns the differentials".into()],
        },
        Some(x) => {
            let negated: BTreeSet<String> = duals.iter().zip(x).filter(|(_, s)| *s).map(|(d, _)| d.clone()).collect();
            let level = if equations.iter().all(|(_, flip)| !flip) { MatchLevel::Exact } else { MatchLevel::UpToDualSigns };
            GluingReport { level, negated, mismatches }
        }
    }
}

/// Checks that gluing the Ginzburg presentations of `P` and `P′` reproduces
/// the Ginzburg presentation of their amalgamation.
pub fn verify_gluing(p: &IceQuiverWP, p2: &IceQuiverWP, m: &QPMatching) -> Result<GluingReport> {
    let glued = glue_and_reduce(&ginzburg(p)?, &ginzburg(p2)?, m)?;
    let amalgam = ginzburg(&amalgamate(p, p2, m)?)?;
    Ok(compare_presentations(&glued.presentation, &amalgam.dg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgpres::check_d_squared;
    use crate::qcore::{IceQuiver, Potential};
    use crate::triangle::{side_matching, triangle_qp, SIDE_IDENTITY, SIDE_P_TO_ZERO, SIDE_ZERO_TO_P};
    use crate::dynkin::DynkinType;

    #[test]
    fn single_vertex() {
        let mut q = Quiver::new();
        q.add_vertex("v", "v").unwrap();
        let p = IceQuiverWP::new(IceQuiver::new(q), Potential::zero()).unwrap();
        let g = ginzburg(&p).unwrap();
        assert_eq!((g.dg.num_objects(), g.dg.num_generators()), (1, 1));
        assert!(g.dg.differential("L[v]").is_zero());
    }

    #[test]
    fn a1_triangle_census() {
        let t = triangle_qp(DynkinType::A(1)).unwrap();
        let g = ginzburg(&t.qp).unwrap();
        assert_eq!((g.dg.num_objects(), g.dg.num_generators()), (3, 12));
        assert!(check_d_squared(&g.dg).unwrap().passed());
        let bi = boundary_inclusion(&g).unwrap();
        assert_eq!(bi.source.num_generators(), 3);
    }

    #[test]
    fn triangle_pairs_glue() {
        for n in 1..=3 {
            let t = triangle_qp(DynkinType::A(n)).unwrap();
            for (s, s2) in [(SIDE_P_TO_ZERO, SIDE_IDENTITY), (SIDE_ZERO_TO_P, SIDE_P_TO_ZERO)] {
                let m = side_matching(&t, s, &t, s2, &|i| i).unwrap();
                let glued = glue_and_reduce(&ginzburg(&t.qp).unwrap(), &ginzburg(&t.qp).unwrap(), &m).unwrap();
                assert!(check_d_squared(&glued.presentation).unwrap().passed());
                let r = verify_gluing(&t.qp, &t.qp, &m).unwrap();
                println!("A{n} {s}-{s2}: {:?} {:?} {:?}", r.level, r.negated, r.mismatches.iter().take(4).collect::<Vec<_>>());
            }
        }
    }
}
