use std::collections::{BTreeMap, BTreeSet};

use super::{arrow_id, dynkin_quiver, DynkinType};
use crate::dgpres::{names, DgMap, DgPresentation, GenClass};
use crate::error::{Error, Result};
use crate::linalg::q;
use crate::qcore::{Path, PathSum, QPMatching, Quiver};

/// `Π₂(E)`: generators `a`, `a†` in degree 0 and `l_x` in degree 1 with
/// `d(l_x) = Σ_{t(a)=x} a a† − Σ_{s(a)=x} a† a`.
pub fn pi2_of_quiver(e: &Quiver) -> DgPresentation {
    let mut p = DgPresentation::new();
    for v in e.vertices() {
        p.add_object(v.id.clone(), v.label.clone()).expect("fresh");
    }
    for a in e.arrows() {
        p.add_generator(a.id.clone(), &a.source, &a.target, 0, a.label.clone()).expect("fresh");
        p.classes.insert(a.id.clone(), GenClass::Arrow);
        let d = names::dagger(&a.id);
        p.add_generator(d.clone(), &a.target, &a.source, 0, names::dagger(&a.label)).expect("fresh");
        p.classes.insert(d, GenClass::Dagger);
    }
    for v in e.vertices() {
        let l = names::small_l(&v.id);
        p.add_generator(l.clone(), &v.id, &v.id, 1, names::small_l(&v.label)).expect("fresh");
        p.classes.insert(l.clone(), GenClass::SmallL);
    }
    for v in e.vertices() {
        let mut d = PathSum::zero();
        for a in e.arrows_into(&v.id) {
            d.add_term(Path::from_arrows(p.graded(), &[a.id.clone(), names::dagger(&a.id)]).expect("composable"), q(1));
        }
        for a in e.arrows_out(&v.id) {
            d.add_term(Path::from_arrows(p.graded(), &[names::dagger(&a.id), a.id.clone()]).expect("composable"), q(-1));
        }
        p.set_differential(&names::small_l(&v.id), d).expect("well typed");
    }
    p
}

pub fn pi2(t: DynkinType) -> DgPresentation {
    pi2_of_quiver(&dynkin_quiver(t))
}

fn gen(p: &DgPresentation, g: &str, sign: i64) -> PathSum {
    PathSum::term(p.generator_path(g).expect("known generator"), q(sign))
}

/// Builds a map `Π₂ → Π₂` from a vertex permutation and signed generator images.
fn assemble(
    src: &DgPresentation,
    dst: &DgPresentation,
    vertex: &dyn Fn(usize) -> usize,
    images: &[(String, String, i64)],
) -> DgMap {
    let mut f = DgMap::default();
    for v in src.graded().vertex_ids() {
        let i: usize = v.parse().expect("numeric vertex");
        f.objects.insert(v.clone(), vertex(i).to_string());
    }
    for (g, h, s) in images {
        f.generators.insert(g.clone(), gen(dst, h, *s));
    }
    f
}

/// The involution `σ` of `Π₂(I)` for the fixed orientation of each type.
pub fn sigma(t: DynkinType) -> DgMap {
    let p = pi2(t);
    let n = t.rank();
    let a = |j: usize| arrow_id(j);
    let ad = |j: usize| names::dagger(&arrow_id(j));
    let l = |i: usize| names::small_l(&i.to_string());
    let mut images: Vec<(String, String, i64)> = Vec::new();
    let vertex: Box<dyn Fn(usize) -> usize> = match t {
        DynkinType::A(_) => {
            for j in 1..n {
                images.push((a(j), ad(n - j), 1));
                images.push((ad(j), a(n - j), 1));
            }
            for i in 1..=n {
                images.push((l(i), l(n + 1 - i), -1));
            }
            Box::new(move |i| n + 1 - i)
        }
        DynkinType::D(_) if n % 2 == 1 => {
            let swap = move |j: usize| if j == n - 2 { n - 1 } else if j == n - 1 { n - 2 } else { j };
            let pi = move |i: usize| if i == n - 1 { n } else if i == n { n - 1 } else { i };
            for j in 1..n {
                images.push((a(j), a(swap(j)), 1));
                images.push((ad(j), ad(swap(j)), -1));
            }
            for i in 1..=n {
                images.push((l(i), l(pi(i)), -1));
            }
            Box::new(pi)
        }
        DynkinType::E(6) => {
            let pi = |i: usize| if i == 6 { 6 } else { 6 - i };
            for j in 1..=4 {
                images.push((a(j), ad(5 - j), 1));
                images.push((ad(j), a(5 - j), 1));
            }
            images.push((a(5), a(5), 1));
            images.push((ad(5), ad(5), -1));
            for i in 1..=6 {
                images.push((l(i), l(pi(i)), -1));
            }
            Box::new(pi)
        }
        _ => {
            for j in 1..n {
                images.push((a(j), a(j), 1));
                images.push((ad(j), ad(j), -1));
            }
            for i in 1..=n {
                images.push((l(i), l(i), -1));
            }
            Box::new(|i| i)
        }
    };
    assemble(&p, &p, &*vertex, &images)
}

fn check_orientation_matching(e: &Quiver, e2: &Quiver, m: &QPMatching) -> Result<()> {
    let vs: BTreeSet<&String> = m.vertices.values().collect();
    if m.vertices.len() != e.num_vertices()
        || vs.len() != e2.num_vertices()
        || m.arrows.len() != e.num_arrows()
        || m.arrows.values().collect::<BTreeSet<_>>().len() != e2.num_arrows()
    {
        return Err(Error::InvalidMatching("matching must be a bijection of the whole quivers".into()));
    }
    for (a, b) in &m.arrows {
        let x = e.try_arrow(a)?;
        let y = e2.try_arrow(b)?;
        let (s, t) = (&m.vertices[&x.source], &m.vertices[&x.target]);
        let ok = if m.shared.contains(a) {
            *s == y.source && *t == y.target
        } else {
            *s == y.target && *t == y.source
        };
        if !ok {
            return Err(Error::InvalidMatching(format!("arrows `{a}` and `{b}` are not endpoint compatible")));
        }
    }
    Ok(())
}

/// `ψ: Π₂(E) → Π₂(E′)`: `l_i ↦ −l_{φ₀ i}`; shared arrows `a ↦ a′`, `a† ↦ −a′†`;
/// reversed arrows `a ↦ a′†`, `a† ↦ a′`.
pub fn psi(e: &Quiver, e2: &Quiver, m: &QPMatching) -> Result<DgMap> {
    check_orientation_matching(e, e2, m)?;
    let dst = pi2_of_quiver(e2);
    let mut f = DgMap::default();
    for (v, w) in &m.vertices {
        f.objects.insert(v.clone(), w.clone());
        f.generators.insert(names::small_l(v), gen(&dst, &names::small_l(w), -1));
    }
    for (a, b) in &m.arrows {
        if m.shared.contains(a) {
            f.generators.insert(a.clone(), gen(&dst, b, 1));
            f.generators.insert(names::dagger(a), gen(&dst, &names::dagger(b), -1));
        } else {
            f.generators.insert(a.clone(), gen(&dst, &names::dagger(b), 1));
            f.generators.insert(names::dagger(a), gen(&dst, b, 1));
        }
    }
    Ok(f)
}

/// The second quiver `E′`, the matching `E ≃ E′` and the quiver-induced
/// isomorphism `ξ: Π₂(E′) → Π₂(E)` with `σ = ξ∘ψ`.
#[derive(Clone, Debug)]
pub struct XiDatum {
    pub e: Quiver,
    pub e_prime: Quiver,
    pub matching: QPMatching,
    pub xi: DgMap,
}

impl XiDatum {
    pub fn psi(&self) -> DgMap {
        psi(&self.e, &self.e_prime, &self.matching).expect("matching is compatible by construction")
    }
}

/// Dg map induced by a quiver isomorphism `E′ → E`.
fn quiver_induced(e_prime: &Quiver, e: &Quiver, vmap: &BTreeMap<String, String>, amap: &BTreeMap<String, String>) -> DgMap {
    let dst = pi2_of_quiver(e);
    let mut f = DgMap::default();
    for v in e_prime.vertex_ids() {
        let w = &vmap[v];
        f.objects.insert(v.clone(), w.clone());
        f.generators.insert(names::small_l(v), gen(&dst, &names::small_l(w), 1));
    }
    for a in e_prime.arrow_ids() {
        let b = &amap[a];
        f.generators.insert(a.clone(), gen(&dst, b, 1));
        f.generators.insert(names::dagger(a), gen(&dst, &names::dagger(b), 1));
    }
    f
}

pub fn xi_datum(t: DynkinType) -> XiDatum {
    let e = dynkin_quiver(t);
    let n = t.rank();
    let ids = |f: &dyn Fn(usize) -> usize, count: usize| -> BTreeMap<String, String> {
        (1..=count).map(|i| (i.to_string(), f(i).to_string())).collect()
    };
    let arrows_by = |f: &dyn Fn(usize) -> usize| -> BTreeMap<String, String> {
        (1..n).map(|j| (arrow_id(j), arrow_id(f(j)))).collect()
    };
    let identity_v = ids(&|i| i, n);
    let identity_a = arrows_by(&|j| j);
    let (e_prime, shared, vmap, amap): (Quiver, BTreeSet<String>, _, _) = match t {
        DynkinType::A(_) => (e.opposite(), BTreeSet::new(), ids(&|i| n + 1 - i, n), arrows_by(&|j| n - j)),
        DynkinType::D(_) if n % 2 == 1 => {
            let pi = move |i: usize| if i == n - 1 { n } else if i == n { n - 1 } else { i };
            let swap = move |j: usize| if j == n - 2 { n - 1 } else if j == n - 1 { n - 2 } else { j };
            (e.clone(), identity_a.keys().cloned().collect(), ids(&pi, n), arrows_by(&swap))
        }
        DynkinType::E(6) => {
            let mut q = Quiver::new();
            for i in 1..=6 {
                q.add_vertex(i.to_string(), i.to_string()).expect("fresh");
            }
            for j in 1..=4 {
                q.add_arrow(arrow_id(j), (j + 1).to_string(), j.to_string(), arrow_id(j)).expect("fresh");
            }
            q.add_arrow(arrow_id(5), "3", "6", arrow_id(5)).expect("fresh");
            let pi = |i: usize| if i == 6 { 6 } else { 6 - i };
            let aperm = |j: usize| if j == 5 { 5 } else { 5 - j };
            (q, [arrow_id(5)].into(), ids(&pi, 6), arrows_by(&aperm))
        }
        _ => (e.clone(), identity_a.keys().cloned().collect(), identity_v.clone(), identity_a.clone()),
    };
    let matching = QPMatching { vertices: identity_v, arrows: identity_a, shared };
    let xi = quiver_induced(&e_prime, &e, &vmap, &amap);
    XiDatum { e, e_prime, matching, xi }
}


#[cfg(test)]
mod type_table {
    use super::*;
    use crate::dgpres::{check_d_squared, check_dg_map, compose_dg_maps, maps_equal};

    #[test]
    fn sigma_is_a_dg_involution_factoring_through_xi() {
        for t in DynkinType::all_up_to(8) {
            let p = pi2(t);
            assert!(check_d_squared(&p).unwrap().passed(), "{t}");
            let s = sigma(t);
            assert!(check_dg_map(&s, &p, &p).unwrap().passed(), "{t}");
            assert!(maps_equal(&compose_dg_maps(&s, &s).unwrap(), &DgMap::identity(&p)), "{t}");
            let datum = xi_datum(t);
            let p2 = pi2_of_quiver(&datum.e_prime);
            let psi = datum.psi();
            assert!(check_dg_map(&psi, &p, &p2).unwrap().passed(), "{t}");
            assert!(check_dg_map(&datum.xi, &p2, &p).unwrap().passed(), "{t}");
            assert!(maps_equal(&compose_dg_maps(&datum.xi, &psi).unwrap(), &s), "{t}");
        }
    }
}
