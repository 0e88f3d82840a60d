//! Semi-free dg presentations: graded quivers with differentials on generators.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::qcore::io::{pathsum_from_json, pathsum_to_json, JsonDifferential, JsonDoc};
use crate::qcore::{IceQuiver, Path, PathSum, Quiver};

/// Generator classes of a Ginzburg presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenClass {
    Arrow,
    Star,
    Dagger,
    BigL,
    SmallL,
}

impl GenClass {
    pub fn tag(self) -> &'static str {
        match self {
            GenClass::Arrow => "a",
            GenClass::Star => "astar",
            GenClass::Dagger => "adagger",
            GenClass::BigL => "L",
            GenClass::SmallL => "l",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        Some(match s {
            "a" => GenClass::Arrow,
            "astar" => GenClass::Star,
            "adagger" => GenClass::Dagger,
            "L" => GenClass::BigL,
            "l" => GenClass::SmallL,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DgPresentation {
    /// Graded quiver; frozen markers are carried only for export.
    pub quiver: IceQuiver,
    differential: BTreeMap<String, PathSum>,
    pub classes: BTreeMap<String, GenClass>,
}

impl DgPresentation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn graded(&self) -> &Quiver {
        &self.quiver.quiver
    }

    pub fn add_object(&mut self, id: impl Into<String>, label: impl Into<String>) -> Result<()> {
        self.quiver.quiver.add_vertex(id, label)
    }

    pub fn add_generator(
        &mut self,
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
        degree: i32,
        label: impl Into<String>,
    ) -> Result<()> {
        if degree < 0 {
            return Err(Error::Degree("generator degrees must be nonnegative".into()));
        }
        self.quiver.quiver.add_graded_arrow(id, source, target, label, degree)
    }

    pub fn degree(&self, g: &str) -> Result<i32> {
        Ok(self.graded().try_arrow(g)?.degree)
    }

    pub fn path_degree(&self, p: &Path) -> Result<i32> {
        p.arrows().iter().map(|g| self.degree(g)).sum()
    }

    /// Degree of a homogeneous nonzero combination.
    pub fn sum_degree(&self, s: &PathSum) -> Result<Option<i32>> {
        let mut deg = None;
        for (p, _) in s.iter() {
            let d = self.path_degree(p)?;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => {
                    return Err(Error::Degree(format!("inhomogeneous combination {s}")));
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn set_differential(&mut self, g: &str, s: PathSum) -> Result<()> {
        let gen = self.graded().try_arrow(g)?.clone();
        if let Some(d) = self.sum_degree(&s)? {
            if d != gen.degree - 1 {
                return Err(Error::Degree(format!("d({g}) has degree {d}, expected {}", gen.degree - 1)));
            }
        }
        for (p, _) in s.iter() {
            if p.source() != gen.source || p.target() != gen.target {
                return Err(Error::Composition(format!("term {p} of d({g}) has wrong endpoints")));
            }
            for a in p.arrows() {
                self.graded().try_arrow(a)?;
            }
        }
        if s.is_zero() {
            self.differential.remove(g);
        } else {
            self.differential.insert(g.to_string(), s);
        }
        Ok(())
    }

    pub fn differential(&self, g: &str) -> PathSum {
        self.differential.get(g).cloned().unwrap_or_default()
    }

    pub fn differentials(&self) -> impl Iterator<Item = (&String, &PathSum)> {
        self.differential.iter()
    }

    pub fn generator_ids(&self) -> impl Iterator<Item = &String> {
        self.graded().arrow_ids()
    }

    pub fn num_objects(&self) -> usize {
        self.graded().num_vertices()
    }

    pub fn num_generators(&self) -> usize {
        self.graded().num_arrows()
    }

    pub fn generator_path(&self, g: &str) -> Result<Path> {
        Path::arrow(self.graded(), g)
    }

    pub fn to_json(&self) -> Result<JsonDoc> {
        let mut doc = JsonDoc::from_ice(&self.quiver, true);
        for a in doc.arrows.iter_mut() {
            a.class = self.classes.get(&a.id).map(|c| c.tag().to_string());
        }
        let mut diff = Vec::new();
        for (g, s) in &self.differential {
            diff.push(JsonDifferential { generator: g.clone(), terms: pathsum_to_json(s)? });
        }
        doc.differential = Some(diff);
        Ok(doc)
    }

    pub fn from_json(doc: &JsonDoc) -> Result<Self> {
        let quiver = doc.to_ice()?;
        let mut p = DgPresentation { quiver, ..Default::default() };
        for a in &doc.arrows {
            if let Some(tag) = &a.class {
                let c = GenClass::from_tag(tag).ok_or_else(|| Error::Parse(format!("unknown class `{tag}`")))?;
                p.classes.insert(a.id.clone(), c);
            }
        }
        for d in doc.differential.iter().flatten() {
            let s = pathsum_from_json(p.graded(), &d.terms)?;
            p.set_differential(&d.generator, s)?;
        }
        Ok(p)
    }
}

/// Graded Leibniz extension `d(p∘q) = d(p)∘q + (−1)^{deg p} p∘d(q)`.
pub fn d_extend(p: &DgPresentation, x: &PathSum) -> Result<PathSum> {
    p.sum_degree(x)?;
    let mut out = PathSum::zero();
    for (path, c) in x.iter() {
        let arrows = path.arrows();
        let mut sign = 1i32;
        for j in 0..arrows.len() {
            let dg = p.differential(&arrows[j]);
            if !dg.is_zero() {
                for (term, e) in dg.iter() {
                    let mut w: Vec<String> = arrows[..j].to_vec();
                    w.extend(term.arrows().iter().cloned());
                    w.extend(arrows[j + 1..].iter().cloned());
                    let coeff = c * e * Q::from_integer(sign.into());
                    out.add_term(Path::raw(path.source().to_string(), path.target().to_string(), w), coeff);
                }
            }
            if p.degree(&arrows[j])? % 2 != 0 {
                sign = -sign;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DSquaredReport {
    pub checked: usize,
    pub failures: Vec<(String, PathSum)>,
}

impl DSquaredReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_d_squared(p: &DgPresentation) -> Result<DSquaredReport> {
    let mut report = DSquaredReport::default();
    for g in p.generator_ids() {
        report.checked += 1;
        let r = d_extend(p, &p.differential(g))?;
        if !r.is_zero() {
            report.failures.push((g.clone(), r));
        }
    }
    Ok(report)
}

/// A map of presentations given on objects and generators. Generators listed in
/// `undefined` deliberately have no image (partial maps on windows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgMap {
    pub objects: BTreeMap<String, String>,
    pub generators: BTreeMap<String, PathSum>,
    pub sign: i8,
    pub undefined: BTreeSet<String>,
}

impl Default for DgMap {
    fn default() -> Self {
        DgMap { objects: BTreeMap::new(), generators: BTreeMap::new(), sign: 1, undefined: BTreeSet::new() }
    }
}

impl DgMap {
    pub fn identity(p: &DgPresentation) -> Self {
        let mut f = DgMap::default();
        for v in p.graded().vertex_ids() {
            f.objects.insert(v.clone(), v.clone());
        }
        for g in p.generator_ids() {
            f.generators.insert(g.clone(), PathSum::from_path(p.generator_path(g).expect("known")));
        }
        f
    }

    pub fn map_object(&self, x: &str) -> Result<&String> {
        self.objects.get(x).ok_or_else(|| Error::IncompleteMap(vec![x.to_string()]))
    }

    pub fn apply_path(&self, p: &Path) -> Result<PathSum> {
        if p.is_empty() {
            return Ok(PathSum::from_path(Path::identity(self.map_object(p.source())?.clone())));
        }
        let mut acc: Option<PathSum> = None;
        for g in p.arrows() {
            let img = self.generators.get(g).ok_or_else(|| Error::IncompleteMap(vec![g.clone()]))?;
            acc = Some(match acc {
                None => img.clone(),
                Some(a) => a.compose(img)?,
            });
        }
        Ok(acc.unwrap_or_default())
    }

    pub fn apply(&self, s: &PathSum) -> Result<PathSum> {
        let mut out = PathSum::zero();
        for (p, c) in s.iter() {
            out.add_scaled(&self.apply_path(p)?, c);
        }
        Ok(out)
    }

    pub fn image(&self, g: &str) -> Option<&PathSum> {
        self.generators.get(g)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DgMapReport {
    pub checked: usize,
    pub skipped: Vec<String>,
    pub failures: Vec<(String, String)>,
}

impl DgMapReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for DgMapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "checked {} generators, {} skipped, {} failures", self.checked, self.skipped.len(), self.failures.len())?;
        for (g, why) in &self.failures {
            write!(f, "\n  {g}: {why}")?;
        }
        Ok(())
    }
}

/// Degree and endpoint preservation plus `f(dg) = d(fg)` on every generator.
pub fn check_dg_map(f: &DgMap, src: &DgPresentation, dst: &DgPresentation) -> Result<DgMapReport> {
    let missing: Vec<String> = src
        .generator_ids()
        .filter(|g| !f.generators.contains_key(*g) && !f.undefined.contains(*g))
        .cloned()
        .collect();
    if !missing.is_empty() {
        return Err(Error::IncompleteMap(missing));
    }
    let mut report = DgMapReport::default();
    for gen in src.graded().arrows() {
        let Some(img) = f.generators.get(&gen.id) else {
            report.skipped.push(gen.id.clone());
            continue;
        };
        report.checked += 1;
        let (Some(s), Some(t)) = (f.objects.get(&gen.source), f.objects.get(&gen.target)) else {
            report.failures.push((gen.id.clone(), "endpoint has no image".into()));
            continue;
        };
        if let Err(e) = dst.sum_degree(img).and_then(|d| match d {
            Some(d) if d != gen.degree => Err(Error::Degree(format!("image degree {d} ≠ {}", gen.degree))),
            _ => Ok(()),
        }) {
            report.failures.push((gen.id.clone(), e.to_string()));
            continue;
        }
        if img.iter().any(|(p, _)| p.source() != s || p.target() != t) {
            report.failures.push((gen.id.clone(), format!("image {img} does not run {s} -> {t}")));
            continue;
        }
        let lhs = match f.apply(&src.differential(&gen.id)) {
            Ok(x) => x,
            Err(Error::IncompleteMap(m)) if m.iter().all(|g| f.undefined.contains(g)) => {
                report.checked -= 1;
                report.skipped.push(gen.id.clone());
                continue;
            }
            Err(e) => return Err(e),
        };
        let rhs = d_extend(dst, img)?;
        if lhs != rhs {
            report.failures.push((gen.id.clone(), format!("f(d g) = {lhs} but d(f g) = {rhs}")));
        }
    }
    Ok(report)
}

/// `f ∘ g`.
pub fn compose_dg_maps(f: &DgMap, g: &DgMap) -> Result<DgMap> {
    let mut out = DgMap { sign: f.sign * g.sign, ..Default::default() };
    for (x, y) in &g.objects {
        out.objects.insert(x.clone(), f.map_object(y)?.clone());
    }
    for (x, img) in &g.generators {
        match f.apply(img) {
            Ok(s) => {
                out.generators.insert(x.clone(), s);
            }
            Err(Error::IncompleteMap(m)) if m.iter().all(|h| f.undefined.contains(h)) => {
                out.undefined.insert(x.clone());
            }
            Err(e) => return Err(e),
        }
    }
    out.undefined.extend(g.undefined.iter().cloned());
    Ok(out)
}

pub fn maps_equal(f: &DgMap, g: &DgMap) -> bool {
    f.objects == g.objects && f.generators == g.generators
}

pub struct Pushout {
    pub presentation: DgPresentation,
    pub from_a: DgMap,
    pub from_b: DgMap,
}

/// Strict pushout of `A ← E → B` where `i: E → A` sends generators to distinct generators.
/// Identified generators and objects take their `B` names; colliding `A` names get primes.
pub fn strict_pushout(i: &DgMap, a: &DgPresentation, j: &DgMap, b: &DgPresentation) -> Result<Pushout> {
    let mut image_gen: BTreeMap<String, String> = BTreeMap::new();
    for (e, img) in &i.generators {
        let mut it = img.iter();
        let ok = match (it.next(), it.next()) {
            (Some((p, c)), None) if p.len() == 1 && c.is_one() => {
                image_gen.insert(p.arrows()[0].clone(), e.clone()).is_none()
            }
            _ => false,
        };
        if !ok {
            return Err(Error::Unsupported(format!("inclusion is not generator-level injective at `{e}`")));
        }
    }
    let mut image_obj: BTreeMap<String, String> = BTreeMap::new();
    for (x, y) in &i.objects {
        if image_obj.insert(y.clone(), x.clone()).is_some() {
            return Err(Error::Unsupported(format!("inclusion is not injective on objects at `{y}`")));
        }
    }
    let mut out = b.clone();
    let mut from_a = DgMap::default();
    let taken_v: BTreeSet<String> = b.graded().vertex_ids().cloned().collect();
    let taken_g: BTreeSet<String> = b.generator_ids().cloned().collect();
    let fresh = |id: &String, taken: &BTreeSet<String>, extra: &BTreeSet<String>| {
        let mut n = id.clone();
        while taken.contains(&n) || extra.contains(&n) {
            n.push('\'');
        }
        n
    };
    let mut new_v = BTreeSet::new();
    for v in a.graded().vertices() {
        let name = match image_obj.get(&v.id) {
            Some(e) => j.map_object(e)?.clone(),
            None => {
                let n = fresh(&v.id, &taken_v, &new_v);
                new_v.insert(n.clone());
                out.add_object(n.clone(), v.label.clone())?;
                if a.quiver.is_frozen_vertex(&v.id) {
                    out.quiver.frozen_vertices.insert(n.clone());
                }
                n
            }
        };
        from_a.objects.insert(v.id.clone(), name);
    }
    let mut new_g = BTreeSet::new();
    let mut pending = Vec::new();
    for g in a.graded().arrows() {
        let img = match image_gen.get(&g.id) {
            Some(e) => j
                .generators
                .get(e)
                .cloned()
                .ok_or_else(|| Error::IncompleteMap(vec![e.clone()]))?,
            None => {
                let n = fresh(&g.id, &taken_g, &new_g);
                new_g.insert(n.clone());
                out.add_generator(n.clone(), from_a.objects[&g.source].clone(), from_a.objects[&g.target].clone(), g.degree, g.label.clone())?;
                if a.quiver.is_frozen_arrow(&g.id) {
                    out.quiver.frozen_arrows.insert(n.clone());
                }
                if let Some(c) = a.classes.get(&g.id) {
                    out.classes.insert(n.clone(), *c);
                }
                pending.push((g.id.clone(), n.clone()));
                PathSum::from_path(Path::raw(
                    from_a.objects[&g.source].clone(),
                    from_a.objects[&g.target].clone(),
                    vec![n],
                ))
            }
        };
        from_a.generators.insert(g.id.clone(), img);
    }
    for (old, new) in pending {
        let d = from_a.apply(&a.differential(&old))?;
        out.set_differential(&new, d)?;
    }
    Ok(Pushout { presentation: out, from_a, from_b: DgMap::identity(b) })
}

/// Quotient by the acyclic ideal generated by `x` and `dx`, where
/// `dx = c·y + r` with `y` a generator not occurring in `r`: sets `x = 0`,
/// `y = −r/c` everywhere and drops both generators.
pub fn eliminate_pair(p: &DgPresentation, x: &str, y: &str) -> Result<DgPresentation> {
    let dx = p.differential(x);
    let ypath = p.generator_path(y)?;
    let c = dx.coeff(&ypath);
    if c.is_zero() {
        return Err(Error::Structural(format!("`{y}` does not occur linearly in d({x})")));
    }
    let mut r = dx.clone();
    r.add_term(ypath, -c.clone());
    if r.iter().any(|(q, _)| q.arrows().iter().any(|g| g == y || g == x)) {
        return Err(Error::Structural(format!("`{y}` occurs nonlinearly in d({x})")));
    }
    let y_value = r.scale(&(-Q::one() / c));
    let mut f = DgMap::identity(p);
    f.generators.insert(x.to_string(), PathSum::zero());
    f.generators.insert(y.to_string(), y_value);
    let mut out = DgPresentation { quiver: p.quiver.clone(), classes: p.classes.clone(), ..Default::default() };
    out.quiver.quiver.remove_arrow(x);
    out.quiver.quiver.remove_arrow(y);
    out.quiver.frozen_arrows.remove(x);
    out.quiver.frozen_arrows.remove(y);
    out.classes.remove(x);
    out.classes.remove(y);
    for g in p.generator_ids() {
        if g == x || g == y {
            continue;
        }
        out.set_differential(g, f.apply(&p.differential(g))?)?;
    }
    Ok(out)
}

/// Renames a generator, rewriting every differential that mentions it.
pub fn rename_generator(p: &DgPresentation, from: &str, to: &str) -> Result<DgPresentation> {
    if p.graded().arrow(to).is_some() {
        return Err(Error::InvalidQuiver(format!("generator `{to}` already exists")));
    }
    let gen = p.graded().try_arrow(from)?.clone();
    let mut f = DgMap::identity(p);
    f.generators.insert(
        from.to_string(),
        PathSum::from_path(Path::raw(gen.source.clone(), gen.target.clone(), vec![to.to_string()])),
    );
    let mut out = DgPresentation { quiver: p.quiver.clone(), classes: p.classes.clone(), ..Default::default() };
    out.quiver.quiver.remove_arrow(from);
    out.quiver.quiver.add_graded_arrow(to, &gen.source, &gen.target, &gen.label, gen.degree)?;
    if out.quiver.frozen_arrows.remove(from) {
        out.quiver.frozen_arrows.insert(to.to_string());
    }
    if let Some(c) = out.classes.remove(from) {
        out.classes.insert(to.to_string(), c);
    }
    for g in p.generator_ids() {
        let name = if g == from { to } else { g.as_str() };
        out.set_differential(name, f.apply(&p.differential(g))?)?;
    }
    Ok(out)
}

impl fmt::Display for DgPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} objects, {} generators", self.num_objects(), self.num_generators())?;
        for g in self.graded().arrows() {
            writeln!(f, "  {} : {} -> {} (deg {})  d = {}", g.id, g.source, g.target, g.degree, self.differential(&g.id))?;
        }
        Ok(())
    }
}

/// Generator naming shared by `Π₂` and Ginzburg presentations.
pub mod names {
    pub fn dagger(a: &str) -> String {
        format!("{a}†")
    }

    pub fn star(a: &str) -> String {
        format!("{a}*")
    }

    pub fn small_l(v: &str) -> String {
        format!("l[{v}]")
    }

    pub fn big_l(v: &str) -> String {
        format!("L[{v}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn small() -> DgPresentation {
        // a: 1 -> 2, a†: 2 -> 1, l: 1 -> 1 (deg 1), d(l) = −a†a.
        let mut p = DgPresentation::new();
        p.add_object("1", "1").unwrap();
        p.add_object("2", "2").unwrap();
        p.add_generator("a", "1", "2", 0, "a").unwrap();
        p.add_generator("a†", "2", "1", 0, "a†").unwrap();
        p.add_generator("l", "1", "1", 1, "l").unwrap();
        let mut d = PathSum::zero();
        d.add_term(Path::from_arrows(p.graded(), &["a†", "a"]).unwrap(), q(-1));
        p.set_differential("l", d).unwrap();
        p
    }

    #[test]
    fn leibniz_sign() {
        let mut p = small();
        p.add_generator("m", "1", "1", 1, "m").unwrap();
        let lm = PathSum::from_path(Path::from_arrows(p.graded(), &["l", "m"]).unwrap());
        // d(m) = 0 so d(l m) = d(l) m.
        let got = d_extend(&p, &lm).unwrap();
        let expect = PathSum::term(Path::from_arrows(p.graded(), &["a†", "a", "m"]).unwrap(), q(-1));
        assert_eq!(got, expect);
        let ml = PathSum::from_path(Path::from_arrows(p.graded(), &["m", "l"]).unwrap());
        let expect = PathSum::term(Path::from_arrows(p.graded(), &["m", "a†", "a"]).unwrap(), q(1));
        assert_eq!(d_extend(&p, &ml).unwrap(), expect);
    }

    #[test]
    fn inhomogeneous_rejected() {
        let p = small();
        let mut s = PathSum::from_path(Path::from_arrows(p.graded(), &["l"]).unwrap());
        s.add_term(Path::from_arrows(p.graded(), &["a†", "a"]).unwrap(), q(1));
        assert!(matches!(d_extend(&p, &s), Err(Error::Degree(_))));
    }

    #[test]
    fn identity_is_dg() {
        let p = small();
        assert!(check_d_squared(&p).unwrap().passed());
        let id = DgMap::identity(&p);
        assert!(check_dg_map(&id, &p, &p).unwrap().passed());
        assert!(maps_equal(&compose_dg_maps(&id, &id).unwrap(), &id));
    }

    #[test]
    fn pushout_with_itself_is_itself() {
        let p = small();
        let id = DgMap::identity(&p);
        let po = strict_pushout(&id, &p, &id, &p).unwrap();
        assert_eq!(po.presentation, p);
    }

    #[test]
    fn eliminate_contractible_pair() {
        let mut p = small();
        p.add_generator("x", "1", "1", 2, "x").unwrap();
        let mut d = PathSum::from_path(Path::from_arrows(p.graded(), &["l"]).unwrap());
        d.add_term(Path::from_arrows(p.graded(), &["a†", "a", "l"]).unwrap(), q(0));
        p.set_differential("x", d).unwrap();
        let r = eliminate_pair(&p, "x", "l").unwrap();
        assert_eq!(r.num_generators(), 2);
        assert!(check_d_squared(&r).unwrap().passed());
    }
}
