use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::path::{Path, PathSum};
use super::quiver::Quiver;
use crate::error::{Error, Result};
use crate::linalg::Q;

/// A closed path up to rotation, stored as its lexicographically least rotation
/// (function order, as in [`Path`]).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord(Vec<String>);

impl CyclicWord {
    /// Canonicalizes without checking closedness.
    pub fn canonical(arrows: Vec<String>) -> Self {
        CyclicWord(canonical_rotation(arrows))
    }

    /// Canonicalizes a word after checking that it is a closed path in `q`.
    pub fn new<S: AsRef<str>>(q: &Quiver, arrows: &[S]) -> Result<Self> {
        let p = Path::from_arrows(q, arrows)?;
        if p.source() != p.target() {
            return Err(Error::Composition(format!("word {p} is not closed")));
        }
        Ok(Self::canonical(arrows.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    pub fn arrows(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟲{}", self.0.join("·"))
    }
}

pub fn canonical_rotation(w: Vec<String>) -> Vec<String> {
    let n = w.len();
    if n == 0 {
        return w;
    }
    let best = (0..n)
        .min_by(|&i, &j| (0..n).map(|k| &w[(i + k) % n]).cmp((0..n).map(|k| &w[(j + k) % n])))
        .unwrap_or(0);
    (0..n).map(|k| w[(best + k) % n].clone()).collect()
}

/// Finite rational combination of cyclic words; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Potential {
    terms: BTreeMap<CyclicWord, Q>,
}

impl Potential {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, w: CyclicWord, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add_assign(&mut self, other: &Potential) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn scale(&self, s: &Q) -> Potential {
        let mut out = Potential::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * s);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CyclicWord, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &CyclicWord) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies an arrow renaming to every word.
    pub fn rename(&self, f: &dyn Fn(&str) -> String) -> Potential {
        let mut out = Potential::zero();
        for (w, c) in &self.terms {
            out.add_term(CyclicWord::canonical(w.0.iter().map(|a| f(a)).collect()), c.clone());
        }
        out
    }

    /// Checks every word is a closed path of `q`.
    pub fn validate(&self, q: &Quiver) -> Result<()> {
        for w in self.terms.keys() {
            CyclicWord::new(q, &w.0)?;
        }
        Ok(())
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c}){w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `∂_a W = Σ_{c = u a v} v u`, a combination of paths `t(a) -> s(a)`.
pub fn cyclic_derivative(q: &Quiver, w: &Potential, a: &str) -> Result<PathSum> {
    let arrow = q.try_arrow(a)?;
    let mut out = PathSum::zero();
    for (word, c) in &w.terms {
        let n = word.0.len();
        for p in (0..n).filter(|&p| word.0[p] == a) {
            let vu: Vec<String> = (1..n).map(|k| word.0[(p + k) % n].clone()).collect();
            let path = if vu.is_empty() {
                Path::identity(arrow.source.clone())
            } else {
                Path::from_arrows(q, &vu)?
            };
            out.add_term(path, c.clone());
        }
    }
    Ok(out)
}

/// `Σ_a (a ∘ ∂_aW − ∂_aW ∘ a)`; identically zero for every potential.
pub fn necklace_sum(q: &Quiver, w: &Potential) -> Result<PathSum> {
    let mut out = PathSum::zero();
    for a in q.arrows() {
        let d = cyclic_derivative(q, w, &a.id)?;
        if d.is_zero() {
            continue;
        }
        let pa = PathSum::from_path(Path::arrow(q, &a.id)?);
        out.add_assign(&pa.compose(&d)?);
        out.add_assign(&d.compose(&pa)?.neg());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q as qq;

    fn triangle() -> Quiver {
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
    fn rotation_is_canonical() {
        let a = CyclicWord::canonical(vec!["b".into(), "c".into(), "a".into()]);
        let b = CyclicWord::canonical(vec!["c".into(), "a".into(), "b".into()]);
        assert_eq!(a, b);
        assert_eq!(a.arrows(), &["a", "b", "c"]);
    }

    #[test]
    fn derivative_of_triangle() {
        let q = triangle();
        let mut w = Potential::zero();
        w.add_term(CyclicWord::new(&q, &["β", "α′", "α"]).unwrap(), qq(1));
        let d = cyclic_derivative(&q, &w, "α").unwrap();
        assert_eq!(d, PathSum::from_path(Path::from_arrows(&q, &["β", "α′"]).unwrap()));
        assert!(necklace_sum(&q, &w).unwrap().is_zero());
    }

    #[test]
    fn derivative_with_repeats() {
        let mut q = Quiver::new();
        q.add_vertex("v", "v").unwrap();
        q.add_arrow("a", "v", "v", "a").unwrap();
        q.add_arrow("b", "v", "v", "b").unwrap();
        let mut w = Potential::zero();
        w.add_term(CyclicWord::new(&q, &["a", "b", "a"]).unwrap(), qq(1));
        let d = cyclic_derivative(&q, &w, "a").unwrap();
        let mut expect = PathSum::zero();
        expect.add_term(Path::from_arrows(&q, &["b", "a"]).unwrap(), qq(1));
        expect.add_term(Path::from_arrows(&q, &["a", "b"]).unwrap(), qq(1));
        assert_eq!(d, expect);
        assert!(cyclic_derivative(&q, &Potential::zero(), "a").unwrap().is_zero());
        assert!(cyclic_derivative(&q, &w, "zz").is_err());
    }
}
