//! Object-level arithmetic in the 1-cluster category `C_I`.
//!
//! Indecomposables are labelled by the vertices `1..=n`. The suspension acts
//! by the vertex permutation of `σ`; fiber and cofiber formulas for minimal
//! morphisms are only available in type A.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::dynkin::{sigma, DynkinType};
use crate::error::{Error, Result};

/// A formal direct sum of indecomposables, stored as label multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ClusterObject {
    summands: BTreeMap<usize, usize>,
}

impl ClusterObject {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn indecomposable(label: usize) -> Self {
        Self::from_labels([label])
    }

    pub fn from_labels(labels: impl IntoIterator<Item = usize>) -> Self {
        let mut summands = BTreeMap::new();
        for l in labels {
            *summands.entry(l).or_insert(0) += 1;
        }
        Self { summands }
    }

    /// Labels in increasing order, repeated by multiplicity.
    pub fn labels(&self) -> Vec<usize> {
        self.summands.iter().flat_map(|(&l, &m)| std::iter::repeat_n(l, m)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn as_indecomposable(&self) -> Option<usize> {
        match self.labels().as_slice() {
            [l] => Some(*l),
            _ => None,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self.summands.keys().find(|&&l| l == 0 || l > n) {
            Some(l) => Err(Error::Domain(format!("label {l} outside 1..={n}"))),
            None => Ok(()),
        }
    }

    /// Parses `2`, `1+3` or `1⊕3`; `0` is the zero object.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let labels = s
            .split(['+', '⊕'])
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad object `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_labels(labels))
    }
}

impl fmt::Display for ClusterObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.labels().iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join("⊕"))
    }
}

/// The vertex permutation of `σ`, 1-based: entry `i-1` is `σ(i)`.
pub fn sigma_vertex_permutation(t: DynkinType) -> Result<Vec<usize>> {
    let t = t.validated()?;
    let s = sigma(t);
    (1..=t.rank())
        .map(|i| {
            s.objects
                .get(&i.to_string())
                .and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(|| Error::Structural(format!("σ has no numeric image for vertex {i}")))
        })
        .collect()
}

pub fn shift_object(t: DynkinType, x: &ClusterObject) -> Result<ClusterObject> {
    x.validate(t.rank())?;
    let perm = sigma_vertex_permutation(t)?;
    Ok(ClusterObject::from_labels(x.labels().into_iter().map(|l| perm[l - 1])))
}

fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("rank must be positive".into()));
    }
    for v in [i, j] {
        if v == 0 || v > n {
            return Err(Error::Domain(format!("label {v} outside 1..={n}")));
        }
    }
    if i == j {
        return Err(Error::Domain(format!("no minimal morphism of positive length {i} → {j}")));
    }
    Ok(())
}

fn cofiber_label(n: usize, i: usize, j: usize) -> usize {
    if i < j {
        j - i
    } else {
        n + 1 + j - i
    }
}

/// Cofiber of the minimal morphism `i → j` in `C_{A_n}`.
pub fn min_cofiber(n: usize, i: usize, j: usize) -> Result<ClusterObject> {
    check_pair(n, i, j)?;
    Ok(ClusterObject::indecomposable(cofiber_label(n, i, j)))
}

/// Fiber of the minimal morphism `i → j` in `C_{A_n}`, the shift of the cofiber.
pub fn min_fiber(n: usize, i: usize, j: usize) -> Result<ClusterObject> {
    check_pair(n, i, j)?;
    shift_object(DynkinType::A(n), &min_cofiber(n, i, j)?)
}

/// Type-checked cofiber query; only type A is supported.
pub fn min_cofiber_typed(t: DynkinType, i: usize, j: usize) -> Result<ClusterObject> {
    match t.validated()? {
        DynkinType::A(n) => min_cofiber(n, i, j),
        other => Err(Error::Unsupported(format!("cofiber formulas are only available in type A, not {other}"))),
    }
}

pub fn min_fiber_typed(t: DynkinType, i: usize, j: usize) -> Result<ClusterObject> {
    match t.validated()? {
        DynkinType::A(n) => min_fiber(n, i, j),
        other => Err(Error::Unsupported(format!("fiber formulas are only available in type A, not {other}"))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SumIdentityRow {
    pub i: usize,
    pub j: usize,
    pub j_shift: usize,
    pub k: usize,
    pub sum: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SumIdentityReport {
    pub n: usize,
    pub rows: Vec<SumIdentityRow>,
}

impl SumIdentityReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }

    pub fn failures(&self) -> Vec<&SumIdentityRow> {
        self.rows.iter().filter(|r| !r.ok).collect()
    }
}

/// Checks `i + j[1] + k ∈ {n+1, 2n+2}` over all ordered pairs `i ≠ j`.
pub fn check_sum_identity(n: usize) -> Result<SumIdentityReport> {
    if n < 2 {
        return Err(Error::Domain(format!("need n ≥ 2, got {n}")));
    }
    let mut rows = Vec::new();
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            let k = cofiber_label(n, i, j);
            let j_shift = n + 1 - j;
            let sum = i + j_shift + k;
            rows.push(SumIdentityRow { i, j, j_shift, k, sum, ok: sum == n + 1 || sum == 2 * n + 2 });
        }
    }
    Ok(SumIdentityReport { n, rows })
}

pub fn indecomposable_count(t: DynkinType) -> Result<usize> {
    Ok(t.validated()?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(l: usize) -> ClusterObject {
        ClusterObject::indecomposable(l)
    }

    #[test]
    fn shifts() {
        assert_eq!(shift_object(DynkinType::A(3), &obj(1)).unwrap(), obj(3));
        for l in 1..=4 {
            assert_eq!(shift_object(DynkinType::D(4), &obj(l)).unwrap(), obj(l));
        }
        assert_eq!(shift_object(DynkinType::E(6), &obj(1)).unwrap(), obj(5));
        assert_eq!(shift_object(DynkinType::E(6), &obj(6)).unwrap(), obj(6));
        assert!(shift_object(DynkinType::A(3), &obj(4)).is_err());
        assert!(shift_object(DynkinType::A(3), &obj(0)).is_err());
    }

    #[test]
    fn cofibers_and_fibers() {
        assert_eq!(min_cofiber(3, 1, 3).unwrap(), obj(2));
        assert_eq!(min_cofiber(3, 3, 1).unwrap(), obj(2));
        assert_eq!(min_cofiber(5, 2, 4).unwrap(), obj(2));
        assert_eq!(min_fiber(3, 1, 3).unwrap(), obj(2));
        assert_eq!(min_fiber(4, 1, 2).unwrap(), obj(4));
        assert_eq!(min_fiber(3, 3, 1).unwrap(), obj(2));
        assert!(matches!(min_cofiber(3, 2, 2), Err(Error::Domain(_))));
        assert!(matches!(min_cofiber_typed(DynkinType::D(4), 1, 2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn sum_identity() {
        let r = check_sum_identity(3).unwrap();
        assert_eq!(r.rows.len(), 6);
        assert!(r.passed());
        let row = r.rows.iter().find(|r| r.i == 1 && r.j == 3).unwrap();
        assert_eq!((row.j_shift, row.k, row.sum), (1, 2, 4));
        assert_eq!(check_sum_identity(8).unwrap().rows.len(), 56);
        let r2 = check_sum_identity(2).unwrap();
        let sums: Vec<usize> = r2.rows.iter().map(|r| r.sum).collect();
        assert_eq!(sums, vec![3, 6]);
        assert!(check_sum_identity(1).is_err());
    }

    #[test]
    fn counts_and_parsing() {
        assert_eq!(indecomposable_count(DynkinType::A(5)).unwrap(), 5);
        assert_eq!(indecomposable_count(DynkinType::E(8)).unwrap(), 8);
        assert_eq!(indecomposable_count(DynkinType::A(1)).unwrap(), 1);
        let x = ClusterObject::parse("1⊕3").unwrap();
        assert_eq!(x, ClusterObject::parse("3+1").unwrap());
        assert_eq!(x.to_string(), "1⊕3");
        assert_eq!(shift_object(DynkinType::A(3), &x).unwrap(), x);
    }
}
