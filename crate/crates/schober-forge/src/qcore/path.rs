use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::quiver::Quiver;
use crate::error::{Error, Result};
use crate::linalg::Q;

/// A path in function order: `arrows[0]` is applied last. Empty paths are
/// identities at `source == target`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    arrows: Vec<String>,
    source: String,
    target: String,
}

impl Path {
    pub fn identity(v: impl Into<String>) -> Self {
        let v = v.into();
        Path { arrows: Vec::new(), source: v.clone(), target: v }
    }

    pub fn arrow(q: &Quiver, id: &str) -> Result<Self> {
        let a = q.try_arrow(id)?;
        Ok(Path { arrows: vec![a.id.clone()], source: a.source.clone(), target: a.target.clone() })
    }

    /// Builds a path from arrow ids in function order, checking composability.
    pub fn from_arrows<S: AsRef<str>>(q: &Quiver, ids: &[S]) -> Result<Self> {
        let Some(last) = ids.last() else {
            return Err(Error::Composition("empty arrow list needs a base vertex".into()));
        };
        let mut p = Path::arrow(q, last.as_ref())?;
        for id in ids.iter().rev().skip(1) {
            p = compose_paths(&Path::arrow(q, id.as_ref())?, &p)?;
        }
        Ok(p)
    }

    pub(crate) fn raw(source: String, target: String, arrows: Vec<String>) -> Self {
        Path { arrows, source, target }
    }

    pub fn arrows(&self) -> &[String] {
        &self.arrows
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "id[{}]", self.source)
        } else {
            write!(f, "{}", self.arrows.join("·"))
        }
    }
}

/// `p ∘ q`: `q` acts first, so `source(p)` must equal `target(q)`.
pub fn compose_paths(p: &Path, q: &Path) -> Result<Path> {
    if p.source != q.target {
        return Err(Error::Composition(format!(
            "cannot compose {p} (from {}) after {q} (to {})",
            p.source, q.target
        )));
    }
    let mut arrows = p.arrows.clone();
    arrows.extend(q.arrows.iter().cloned());
    Ok(Path { arrows, source: q.source.clone(), target: p.target.clone() })
}

/// Finite rational linear combination of paths. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathSum {
    terms: BTreeMap<Path, Q>,
}

impl PathSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_path(p: Path) -> Self {
        Self::term(p, Q::one())
    }

    pub fn term(p: Path, c: Q) -> Self {
        let mut s = Self::zero();
        s.add_term(p, c);
        s
    }

    pub fn add_term(&mut self, p: Path, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Path, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Path) -> Q {
        self.terms.get(p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_assign(&mut self, other: &PathSum) {
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &PathSum, s: &Q) {
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c * s);
        }
    }

    pub fn plus(&self, other: &PathSum) -> PathSum {
        let mut s = self.clone();
        s.add_assign(other);
        s
    }

    pub fn minus(&self, other: &PathSum) -> PathSum {
        let mut s = self.clone();
        s.add_scaled(other, &-Q::one());
        s
    }

    pub fn scale(&self, s: &Q) -> PathSum {
        let mut out = PathSum::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn neg(&self) -> PathSum {
        self.scale(&-Q::one())
    }

    /// Bilinear composition `self ∘ other`.
    pub fn compose(&self, other: &PathSum) -> Result<PathSum> {
        let mut out = PathSum::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add_term(compose_paths(p, q)?, a * b);
            }
        }
        Ok(out)
    }

    /// Common endpoints of all terms, if the sum is nonzero.
    pub fn endpoints(&self) -> Option<(&str, &str)> {
        self.terms.keys().next().map(|p| (p.source(), p.target()))
    }
}

impl fmt::Display for PathSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("({c})·{p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> Quiver {
        let mut q = Quiver::new();
        for v in ["1", "2", "3"] {
            q.add_vertex(v, v).unwrap();
        }
        q.add_arrow("α", "1", "2", "α").unwrap();
        q.add_arrow("α′", "2", "3", "α′").unwrap();
        q.add_arrow("β", "3", "1", "β").unwrap();
        q
    }

    #[test]
    fn identities_compose() {
        let id = Path::identity("v");
        assert_eq!(compose_paths(&id, &id).unwrap(), id);
    }

    #[test]
    fn function_order_typing() {
        let q = a3();
        let a = Path::arrow(&q, "α").unwrap();
        let a2 = Path::arrow(&q, "α′").unwrap();
        let c = compose_paths(&a2, &a).unwrap();
        assert_eq!((c.source(), c.target()), ("1", "3"));
        let b = Path::arrow(&q, "β").unwrap();
        let loop_ = compose_paths(&b, &c).unwrap();
        assert_eq!((loop_.source(), loop_.target()), ("1", "1"));
        assert!(compose_paths(&a, &a2).is_err());
    }

    #[test]
    fn cancelling_terms_vanish() {
        let q = a3();
        let a = Path::arrow(&q, "α").unwrap();
        let mut s = PathSum::from_path(a.clone());
        s.add_term(a, -Q::one());
        assert!(s.is_zero());
    }
}
