//! Dynkin types with fixed orientations, root systems, the presentations
//! `Π₂(I)` and `Π̃₂(I)`, and the maps `σ`, `ψ`, `ξ`, `σ̃`, `F`.

mod pi2;
mod roots;
mod tilde;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qcore::Quiver;

pub use pi2::{pi2, pi2_of_quiver, psi, sigma, xi_datum, XiDatum};
pub use roots::{minus_w0_permutation, positive_roots, RootSystem};
pub use tilde::{
    equivariance_check, orbit_project, sigma_tilde, sign_datum, tilde_pi2, translation, EquivarianceReport, Window,
};

pub const RANK_CAP_ENV: &str = "SCHOBER_FORGE_RANK_CAP";
pub const DEFAULT_RANK_CAP: usize = 8;

/// Rank cap from the environment, defaulting to 8.
pub fn rank_cap() -> usize {
    std::env::var(RANK_CAP_ENV).ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_RANK_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn new_a(n: usize) -> Result<Self> {
        Self::A(n).validated()
    }

    pub fn validated(self) -> Result<Self> {
        let ok = match self {
            DynkinType::A(n) => n >= 1,
            DynkinType::D(n) => n >= 4,
            DynkinType::E(n) => (6..=8).contains(&n),
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::Domain(format!("rank out of range for {self}")))
        }
    }

    pub fn with_cap(self, cap: usize) -> Result<Self> {
        if self.rank() > cap {
            return Err(Error::RankCap(format!("{self} exceeds rank cap {cap}")));
        }
        Ok(self)
    }

    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::E(n) => n,
        }
    }

    /// All types up to the given rank, in the order A, D, E.
    pub fn all_up_to(rank: usize) -> Vec<DynkinType> {
        let mut out: Vec<DynkinType> = (1..=rank).map(DynkinType::A).collect();
        out.extend((4..=rank).map(DynkinType::D));
        out.extend((6..=rank.min(8)).map(DynkinType::E));
        out
    }

    /// Undirected edges of the Dynkin diagram, as oriented in [`dynkin_quiver`].
    pub fn oriented_edges(self) -> Vec<(usize, usize)> {
        match self {
            DynkinType::A(n) => (1..n).map(|i| (i, i + 1)).collect(),
            DynkinType::D(n) => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n));
                e
            }
            DynkinType::E(n) => {
                let branch = n - 3;
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((branch, n));
                e
            }
        }
    }

    /// Number of positive roots, by closed formula.
    pub fn num_positive_roots(self) -> usize {
        match self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E(6) => 36,
            DynkinType::E(7) => 63,
            DynkinType::E(_) => 120,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = s.split_at(s.chars().next().map_or(0, |c| c.len_utf8()));
        let n: usize = rest.parse().map_err(|_| Error::Parse(format!("bad Dynkin type `{s}`")))?;
        let t = match head {
            "A" | "a" => DynkinType::A(n),
            "D" | "d" => DynkinType::D(n),
            "E" | "e" => DynkinType::E(n),
            _ => return Err(Error::Parse(format!("bad Dynkin type `{s}`"))),
        };
        t.validated()
    }
}

pub fn arrow_id(j: usize) -> String {
    format!("a{j}")
}

/// The oriented Dynkin quiver: vertices `1..=n`, arrows `a1, a2, …`.
pub fn dynkin_quiver(t: DynkinType) -> Quiver {
    let mut q = Quiver::new();
    for i in 1..=t.rank() {
        q.add_vertex(i.to_string(), i.to_string()).expect("fresh");
    }
    for (j, (s, e)) in t.oriented_edges().into_iter().enumerate() {
        let id = arrow_id(j + 1);
        q.add_arrow(&id, s.to_string(), e.to_string(), &id).expect("fresh");
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_orientations() {
        let a3 = dynkin_quiver(DynkinType::A(3));
        assert_eq!(a3.arrow("a1").map(|a| (a.source.as_str(), a.target.as_str())), Some(("1", "2")));
        assert_eq!(a3.arrow("a2").map(|a| (a.source.as_str(), a.target.as_str())), Some(("2", "3")));
        let d4 = dynkin_quiver(DynkinType::D(4));
        let edges: Vec<_> = d4.arrows().map(|a| (a.source.clone(), a.target.clone())).collect();
        assert_eq!(edges, vec![("1".into(), "2".into()), ("2".into(), "3".into()), ("2".into(), "4".into())]);
        assert_eq!(dynkin_quiver(DynkinType::A(1)).num_arrows(), 0);
        let e6 = dynkin_quiver(DynkinType::E(6));
        assert_eq!(e6.arrow("a5").map(|a| (a.source.as_str(), a.target.as_str())), Some(("3", "6")));
        let e8 = dynkin_quiver(DynkinType::E(8));
        assert_eq!(e8.arrow("a7").map(|a| (a.source.as_str(), a.target.as_str())), Some(("5", "8")));
    }

    #[test]
    fn parsing() {
        assert_eq!("E7".parse::<DynkinType>().unwrap(), DynkinType::E(7));
        assert!("D3".parse::<DynkinType>().is_err());
        assert!("E9".parse::<DynkinType>().is_err());
        assert!("A0".parse::<DynkinType>().is_err());
        assert!(DynkinType::A(9).with_cap(8).is_err());
        assert_eq!(DynkinType::all_up_to(8).len(), 16);
    }
}
