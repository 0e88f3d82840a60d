//! Seeded random ice quivers with potential, used by property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ice::IceQuiverWP;
use super::potential::{CyclicWord, Potential};
use super::quiver::{IceQuiver, Quiver};
use crate::linalg::qfrac;

#[derive(Clone, Copy, Debug)]
pub struct RandomShape {
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub max_terms: usize,
    pub max_cycle_len: usize,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape { max_vertices: 6, max_arrows: 12, max_terms: 6, max_cycle_len: 5 }
    }
}

pub fn random_ice_qp(seed: u64, shape: RandomShape) -> IceQuiverWP {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=shape.max_vertices.max(1));
    let mut q = Quiver::new();
    for i in 0..n {
        q.add_vertex(format!("v{i}"), format!("v{i}")).expect("fresh");
    }
    let frozen_v: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    let m = rng.gen_range(0..=shape.max_arrows);
    let mut frozen_a = Vec::new();
    for k in 0..m {
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let id = format!("a{k}");
        q.add_arrow(&id, format!("v{s}"), format!("v{t}"), &id).expect("fresh");
        if frozen_v.contains(&s) && frozen_v.contains(&t) && rng.gen_bool(0.5) {
            frozen_a.push(id);
        }
    }
    let mut w = Potential::zero();
    let arrows: Vec<_> = q.arrows().cloned().collect();
    for _ in 0..rng.gen_range(0..=shape.max_terms) {
        let Some(start) = arrows.choose(&mut rng) else { break };
        // Walk forward in application order, then close up if possible.
        let mut walk = vec![start.clone()];
        let len = rng.gen_range(1..=shape.max_cycle_len.max(1));
        while walk.len() < len {
            let here = walk.last().expect("nonempty").target.clone();
            let next: Vec<_> = arrows.iter().filter(|a| a.source == here).collect();
            let Some(a) = next.choose(&mut rng) else { break };
            walk.push((*a).clone());
        }
        if walk.last().expect("nonempty").target != start.source {
            continue;
        }
        let ids: Vec<String> = walk.iter().rev().map(|a| a.id.clone()).collect();
        let num = rng.gen_range(-3i64..=3);
        let den = rng.gen_range(1i64..=3);
        w.add_term(CyclicWord::new(&q, &ids).expect("closed walk"), qfrac(num, den));
    }
    let ice = IceQuiver {
        quiver: q,
        frozen_vertices: frozen_v.iter().map(|i| format!("v{i}")).collect(),
        frozen_arrows: frozen_a.into_iter().collect(),
    };
    IceQuiverWP::new(ice, w).expect("valid by construction")
}
