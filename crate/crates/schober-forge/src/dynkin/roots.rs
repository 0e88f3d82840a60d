use std::collections::{BTreeSet, VecDeque};

use super::DynkinType;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, sorted by height then lexicographically.
    pub positive: Vec<Vec<i64>>,
}

impl RootSystem {
    /// `s_i(v) = v − ⟨v, α_i⟩ α_i`.
    pub fn reflect(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let pairing: i64 = (0..self.rank).map(|j| v[j] * self.cartan[j][i]).sum();
        let mut out = v.to_vec();
        out[i] -= pairing;
        out
    }
}

fn cartan(t: DynkinType) -> Vec<Vec<i64>> {
    let n = t.rank();
    let mut c = vec![vec![0; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in t.oriented_edges() {
        c[a - 1][b - 1] = -1;
        c[b - 1][a - 1] = -1;
    }
    c
}

/// Closes the simple roots under simple reflections, keeping positive vectors.
pub fn positive_roots(t: DynkinType) -> RootSystem {
    let n = t.rank();
    let mut rs = RootSystem { rank: n, cartan: cartan(t), positive: Vec::new() };
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let w = rs.reflect(i, &v);
            if w.iter().all(|&x| x >= 0) && w.iter().any(|&x| x > 0) && seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    rs.positive = roots;
    rs
}

/// The permutation `π` with `−w₀(α_i) = α_{π(i)}`, 0-based.
///
/// `w₀` is reached by extending a word `w` by `s_i` while `w(α_i) > 0`; each step
/// lengthens `w`, and the walk stops exactly when every simple root is sent
/// negative, which characterizes the longest element.
pub fn minus_w0_permutation(t: DynkinType) -> Vec<usize> {
    let rs = positive_roots(t);
    let n = rs.rank;
    // Columns of `w` are the images of the simple roots.
    let mut cols: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut steps = 0;
    while let Some(i) = (0..n).find(|&i| cols[i].iter().all(|&x| x >= 0)) {
        // w s_i: α_j ↦ w(α_j − ⟨α_j, α_i⟩ α_i).
        let wi = cols[i].clone();
        for (j, col) in cols.iter_mut().enumerate() {
            let c = rs.cartan[j][i];
            for k in 0..n {
                col[k] -= c * wi[k];
            }
        }
        steps += 1;
        assert!(steps <= rs.positive.len(), "descent exceeded the number of positive roots");
    }
    assert_eq!(steps, rs.positive.len(), "longest element has length |Φ⁺|");
    cols.iter()
        .map(|c| {
            let neg: Vec<i64> = c.iter().map(|x| -x).collect();
            neg.iter().position(|&x| x == 1).filter(|_| neg.iter().sum::<i64>() == 1).expect("−w₀ permutes simple roots")
        })
        .collect()
}
