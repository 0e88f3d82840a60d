use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed};

use super::ice::IceQuiverWP;
use super::potential::CyclicWord;
use super::quiver::is_dual_label;
use crate::linalg::solve_gf2;

/// Vertex and arrow bijection `A -> B`, with the sign applied to each rescaled arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub vertices: BTreeMap<String, String>,
    pub arrows: BTreeMap<String, String>,
    pub negated_arrows: BTreeSet<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    frozen: bool,
    loops: usize,
    out_deg: usize,
    in_deg: usize,
    frozen_out: usize,
    frozen_in: usize,
}

struct Side<'a> {
    x: &'a IceQuiverWP,
    ids: Vec<String>,
    // Arrow ids between ordered vertex pairs, split by frozen status.
    between: BTreeMap<(usize, usize, bool), Vec<String>>,
    neighbours: Vec<BTreeSet<usize>>,
    sig: Vec<Signature>,
}

impl<'a> Side<'a> {
    fn new(x: &'a IceQuiverWP) -> Self {
        let ids: Vec<String> = x.quiver.vertex_ids().cloned().collect();
        let index: BTreeMap<String, usize> = ids.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut between: BTreeMap<(usize, usize, bool), Vec<String>> = BTreeMap::new();
        let mut neighbours = vec![BTreeSet::new(); ids.len()];
        let mut sig: Vec<Signature> = ids
            .iter()
            .map(|v| Signature {
                frozen: x.is_frozen_vertex(v),
                loops: 0,
                out_deg: 0,
                in_deg: 0,
                frozen_out: 0,
                frozen_in: 0,
            })
            .collect();
        for a in x.quiver.arrows() {
            let (s, t) = (index[&a.source], index[&a.target]);
            let fr = x.is_frozen_arrow(&a.id);
            between.entry((s, t, fr)).or_default().push(a.id.clone());
            neighbours[s].insert(t);
            neighbours[t].insert(s);
            if s == t {
                sig[s].loops += 1;
            } else {
                sig[s].out_deg += 1;
                sig[t].in_deg += 1;
                if fr {
                    sig[s].frozen_out += 1;
                    sig[t].frozen_in += 1;
                }
            }
        }
        Side { x, ids, between, neighbours, sig }
    }

    fn count(&self, s: usize, t: usize, fr: bool) -> usize {
        self.between.get(&(s, t, fr)).map_or(0, |v| v.len())
    }
}

/// Searches for an isomorphism of ice quivers (optionally with potentials).
///
/// With `allow_arrow_rescale`, arrows labelled as duals may be negated.
pub fn quiver_isomorphic(
    a: &IceQuiverWP,
    b: &IceQuiverWP,
    compare_potential: bool,
    allow_arrow_rescale: bool,
) -> Option<IsoWitness> {
    let sa = Side::new(a);
    let sb = Side::new(b);
    if sa.ids.len() != sb.ids.len()
        || a.quiver.num_arrows() != b.quiver.num_arrows()
        || a.frozen_vertices.len() != b.frozen_vertices.len()
        || a.frozen_arrows.len() != b.frozen_arrows.len()
    {
        return None;
    }
    if compare_potential && a.potential.len() != b.potential.len() {
        return None;
    }
    let mut sa_sorted: Vec<_> = sa.sig.clone();
    let mut sb_sorted: Vec<_> = sb.sig.clone();
    sa_sorted.sort();
    sb_sorted.sort();
    if sa_sorted != sb_sorted {
        return None;
    }
    let order = search_order(&sa);
    let mut assign = vec![usize::MAX; sa.ids.len()];
    let mut used = vec![false; sb.ids.len()];
    let mut found = None;
    backtrack(&sa, &sb, &order, 0, &mut assign, &mut used, &mut |assign| {
        let w = arrow_bijections(&sa, &sb, assign, compare_potential, allow_arrow_rescale);
        if w.is_some() {
            found = w;
            true
        } else {
            false
        }
    });
    found
}

fn search_order(s: &Side) -> Vec<usize> {
    let n = s.ids.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    while order.len() < n {
        let start = (0..n)
            .filter(|&i| !seen[i])
            .max_by_key(|&i| (s.neighbours[i].len(), std::cmp::Reverse(i)))
            .expect("unseen vertex");
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &s.neighbours[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

fn backtrack(
    sa: &Side,
    sb: &Side,
    order: &[usize],
    depth: usize,
    assign: &mut Vec<usize>,
    used: &mut Vec<bool>,
    on_complete: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if depth == order.len() {
        return on_complete(assign);
    }
    let v = order[depth];
    for w in 0..sb.ids.len() {
        if used[w] || sa.sig[v] != sb.sig[w] {
            continue;
        }
        let consistent = order[..depth].iter().chain(std::iter::once(&v)).all(|&u| {
            let fu = if u == v { w } else { assign[u] };
            [false, true].iter().all(|&fr| {
                sa.count(v, u, fr) == sb.count(w, fu, fr) && sa.count(u, v, fr) == sb.count(fu, w, fr)
            })
        });
        if !consistent {
            continue;
        }
        assign[v] = w;
        used[w] = true;
        if backtrack(sa, sb, order, depth + 1, assign, used, on_complete) {
            return true;
        }
        used[w] = false;
        assign[v] = usize::MAX;
    }
    false
}

fn arrow_bijections(
    sa: &Side,
    sb: &Side,
    assign: &[usize],
    compare_potential: bool,
    allow_rescale: bool,
) -> Option<IsoWitness> {
    let groups: Vec<(Vec<String>, Vec<String>)> = sa
        .between
        .iter()
        .map(|(&(s, t, fr), ids)| (ids.clone(), sb.between[&(assign[s], assign[t], fr)].clone()))
        .collect();
    let vertices: BTreeMap<String, String> =
        sa.ids.iter().enumerate().map(|(i, v)| (v.clone(), sb.ids[assign[i]].clone())).collect();
    let mut perms: Vec<Vec<usize>> = groups.iter().map(|(x, _)| (0..x.len()).collect()).collect();
    loop {
        let mut arrows = BTreeMap::new();
        for ((xs, ys), perm) in groups.iter().zip(&perms) {
            for (x, &k) in xs.iter().zip(perm) {
                arrows.insert(x.clone(), ys[k].clone());
            }
        }
        if !compare_potential {
            return Some(IsoWitness { vertices, arrows, negated_arrows: BTreeSet::new() });
        }
        if let Some(neg) = potential_match(sa.x, sb.x, &arrows, allow_rescale) {
            return Some(IsoWitness { vertices, arrows, negated_arrows: neg });
        }
        if !next_perms(&mut perms) {
            return None;
        }
    }
}

fn next_perms(perms: &mut [Vec<usize>]) -> bool {
    for p in perms.iter_mut() {
        if next_permutation(p) {
            return true;
        }
    }
    false
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn potential_match(
    a: &IceQuiverWP,
    b: &IceQuiverWP,
    arrows: &BTreeMap<String, String>,
    allow_rescale: bool,
) -> Option<BTreeSet<String>> {
    let duals: Vec<String> = if allow_rescale {
        a.quiver.arrows().filter(|x| is_dual_label(&x.label)).map(|x| x.id.clone()).collect()
    } else {
        Vec::new()
    };
    let var: BTreeMap<&String, usize> = duals.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let mut equations = Vec::new();
    for (word, c) in a.potential.iter() {
        let image = CyclicWord::canonical(word.arrows().iter().map(|x| arrows[x].clone()).collect());
        let cb = b.potential.coeff(&image);
        let ratio = cb / c;
        if ratio.abs() != num_rational::BigRational::one() {
            return None;
        }
        let vars: Vec<usize> = word.arrows().iter().filter_map(|x| var.get(x).copied()).collect();
        equations.push((vars, ratio.is_negative()));
    }
    let x = solve_gf2(duals.len(), &equations)?;
    Some(duals.iter().zip(x).filter(|(_, s)| *s).map(|(d, _)| d.clone()).collect())
}
