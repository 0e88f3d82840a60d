use std::fmt;

use super::{arrow_id, dynkin_quiver, pi2, sigma, DynkinType};
use crate::dgpres::{names, DgMap, DgPresentation, GenClass};
use crate::error::{Error, Result};
use crate::linalg::q;
use crate::qcore::{compose_paths, Path, PathSum};

/// Levels `lo..=hi` of `Π̃₂(I)`. Daggers and `l` generators start at levels
/// `lo..hi` so that every generator has both endpoints in the window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!("empty window [{lo},{hi}]")));
        }
        Ok(Window { lo, hi })
    }

    pub fn contains(&self, i: i64) -> bool {
        self.lo <= i && i <= self.hi
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

fn obj(i: i64, x: usize) -> String {
    format!("({i},{x})")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TGen {
    /// `a_j` at level `i`.
    Arrow(usize, i64),
    /// `a†_j` from level `i` to `i+1`.
    Dagger(usize, i64),
    /// `l_{i,x}`.
    L(i64, usize),
}

impl TGen {
    fn id(self) -> String {
        match self {
            TGen::Arrow(j, i) => format!("{}[{i}]", arrow_id(j)),
            TGen::Dagger(j, i) => format!("{}[{i}]", names::dagger(&arrow_id(j))),
            TGen::L(i, x) => format!("l[{i},{x}]"),
        }
    }

    fn in_window(self, w: &Window) -> bool {
        match self {
            TGen::Arrow(_, i) => w.contains(i),
            TGen::Dagger(_, i) | TGen::L(i, _) => w.contains(i) && w.contains(i + 1),
        }
    }

    fn crossing(self) -> bool {
        !matches!(self, TGen::Arrow(..))
    }

    /// Name of the image under the orbit projection.
    fn base(self) -> String {
        match self {
            TGen::Arrow(j, _) => arrow_id(j),
            TGen::Dagger(j, _) => names::dagger(&arrow_id(j)),
            TGen::L(_, x) => names::small_l(&x.to_string()),
        }
    }
}

fn generators(t: DynkinType, w: &Window) -> Vec<TGen> {
    let m = t.rank() - 1;
    let mut out = Vec::new();
    for i in w.lo..=w.hi {
        out.extend((1..=m).map(|j| TGen::Arrow(j, i)));
        if i < w.hi {
            out.extend((1..=m).map(|j| TGen::Dagger(j, i)));
            out.extend((1..=t.rank()).map(|x| TGen::L(i, x)));
        }
    }
    out
}

fn gen_path(p: &DgPresentation, g: TGen) -> Path {
    p.generator_path(&g.id()).expect("generator in window")
}

/// Finite window of `Π̃₂(I)`: objects `(i,x)`, generators `a_{i}`, `a†_{i}`
/// and `l_{i,x}` of degree 1 with
/// `d(l_{i,x}) = Σ_{t(a)=x} a_{i+1} a†_i − Σ_{s(a)=x} a†_i a_i`.
pub fn tilde_pi2(t: DynkinType, w: Window) -> DgPresentation {
    let e = dynkin_quiver(t);
    let mut p = DgPresentation::new();
    for i in w.lo..=w.hi {
        for x in 1..=t.rank() {
            p.add_object(obj(i, x), obj(i, x)).expect("fresh");
        }
    }
    let ends = |j: usize| -> (usize, usize) {
        let a = e.arrow(&arrow_id(j)).expect("dynkin arrow");
        (a.source.parse().expect("numeric"), a.target.parse().expect("numeric"))
    };
    let gens = generators(t, &w);
    for &g in &gens {
        let (s, tg, deg, class) = match g {
            TGen::Arrow(j, i) => {
                let (s, tg) = ends(j);
                (obj(i, s), obj(i, tg), 0, GenClass::Arrow)
            }
            TGen::Dagger(j, i) => {
                let (s, tg) = ends(j);
                (obj(i, tg), obj(i + 1, s), 0, GenClass::Dagger)
            }
            TGen::L(i, x) => (obj(i, x), obj(i + 1, x), 1, GenClass::SmallL),
        };
        p.add_generator(g.id(), s, tg, deg, g.id()).expect("fresh");
        p.classes.insert(g.id(), class);
    }
    for &g in &gens {
        let TGen::L(i, x) = g else { continue };
        let mut d = PathSum::zero();
        for j in 1..t.rank() {
            let (s, tg) = ends(j);
            if tg == x {
                let path = compose_paths(&gen_path(&p, TGen::Arrow(j, i + 1)), &gen_path(&p, TGen::Dagger(j, i))).expect("composable");
                d.add_term(path, q(1));
            }
            if s == x {
                let path = compose_paths(&gen_path(&p, TGen::Dagger(j, i)), &gen_path(&p, TGen::Arrow(j, i))).expect("composable");
                d.add_term(path, q(-1));
            }
        }
        p.set_differential(&g.id(), d).expect("well typed");
    }
    p
}

/// `ε` with `F σ̃ = ε^{crossing} σ F`: `+1` for `A_n` and `E_6`, `−1` otherwise.
pub fn sign_datum(t: DynkinType) -> i8 {
    match t {
        DynkinType::A(_) | DynkinType::E(6) => 1,
        _ => -1,
    }
}

type ObjFn = dyn Fn(i64, usize) -> (i64, usize);
type GenFn = dyn Fn(TGen) -> (TGen, i64);

/// Restricts a level-shifting automorphism of `Π̃₂` to `src → dst`; generators
/// whose images leave `dst` are recorded as undefined.
fn lift(t: DynkinType, src: Window, dst: Window, objf: &ObjFn, genf: &GenFn) -> DgMap {
    let target = tilde_pi2(t, dst);
    let mut f = DgMap::default();
    for i in src.lo..=src.hi {
        for x in 1..=t.rank() {
            let (k, y) = objf(i, x);
            if dst.contains(k) {
                f.objects.insert(obj(i, x), obj(k, y));
            }
        }
    }
    for g in generators(t, &src) {
        let (h, s) = genf(g);
        if h.in_window(&dst) {
            f.generators.insert(g.id(), PathSum::term(gen_path(&target, h), q(s)));
        } else {
            f.undefined.insert(g.id());
        }
    }
    f
}

/// The shift `(i,x) ↦ (i+k,x)` restricted to `src → dst`.
pub fn translation(t: DynkinType, k: i64, src: Window, dst: Window) -> DgMap {
    lift(t, src, dst, &move |i, x| (i + k, x), &move |g| {
        let h = match g {
            TGen::Arrow(j, i) => TGen::Arrow(j, i + k),
            TGen::Dagger(j, i) => TGen::Dagger(j, i + k),
            TGen::L(i, x) => TGen::L(i + k, x),
        };
        (h, 1)
    })
}

/// The lift `σ̃` of `σ`, restricted to `src → dst`.
pub fn sigma_tilde(t: DynkinType, src: Window, dst: Window) -> DgMap {
    let n = t.rank();
    let mut f = match t {
        DynkinType::A(_) => {
            lift(
                t,
                src,
                dst,
                &move |i, x| (i + x as i64, n + 1 - x),
                &move |g| match g {
                    TGen::Arrow(j, i) => (TGen::Dagger(n - j, i + j as i64), 1),
                    TGen::Dagger(j, i) => (TGen::Arrow(n - j, i + j as i64 + 1), 1),
                    TGen::L(i, x) => (TGen::L(i + x as i64, n + 1 - x), -1),
                },
            )
        }
        DynkinType::D(_) => {
            let shift = n as i64 - 1;
            let odd = n % 2 == 1;
            let pi = move |x: usize| if !odd { x } else if x == n - 1 { n } else if x == n { n - 1 } else { x };
            let swap = move |j: usize| if !odd { j } else if j == n - 2 { n - 1 } else if j == n - 1 { n - 2 } else { j };
            lift(t, src, dst, &move |i, x| (i + shift, pi(x)), &move |g| match g {
                TGen::Arrow(j, i) => (TGen::Arrow(swap(j), i + shift), 1),
                TGen::Dagger(j, i) => (TGen::Dagger(swap(j), i + shift), 1),
                TGen::L(i, x) => (TGen::L(i + shift, pi(x)), 1),
            })
        }
        DynkinType::E(6) => {
            let objf = |i: i64, x: usize| if x == 6 { (i + 6, 6) } else { (i + 3 + x as i64, 6 - x) };
            lift(t, src, dst, &objf, &move |g| match g {
                TGen::Arrow(5, i) => (TGen::Arrow(5, i + 6), 1),
                TGen::Arrow(j, i) => (TGen::Dagger(5 - j, i + 3 + j as i64), 1),
                TGen::Dagger(5, i) => (TGen::Dagger(5, i + 6), -1),
                TGen::Dagger(j, i) => (TGen::Arrow(5 - j, i + 4 + j as i64), 1),
                TGen::L(i, x) => {
                    let (k, y) = objf(i, x);
                    (TGen::L(k, y), -1)
                }
            })
        }
        DynkinType::E(m) => {
            let shift = if m == 7 { 9 } else { 15 };
            translation(t, shift, src, dst)
        }
    };
    f.sign = sign_datum(t);
    f
}

/// The orbit projection `F: Π̃₂ → Π₂`, `(i,x) ↦ x`, on a window.
pub fn orbit_project(t: DynkinType, w: Window) -> DgMap {
    let base = pi2(t);
    let mut f = DgMap { sign: sign_datum(t), ..Default::default() };
    for i in w.lo..=w.hi {
        for x in 1..=t.rank() {
            f.objects.insert(obj(i, x), x.to_string());
        }
    }
    for g in generators(t, &w) {
        let path = base.generator_path(&g.base()).expect("base generator");
        f.generators.insert(g.id(), PathSum::from_path(path));
    }
    f
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquivarianceReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.checked > 0 && self.failures.is_empty()
    }
}

/// Checks `F(σ̃ g) = ε^{c(g)} σ(F g)` on every generator of the window, where
/// `c(g) = 1` for daggers and `l` generators.
pub fn equivariance_check(t: DynkinType, w: Window) -> Result<EquivarianceReport> {
    let reach = 3 * t.rank() as i64 + 16;
    let big = Window::new(w.lo, w.hi + reach)?;
    let st = sigma_tilde(t, w, big);
    let f_big = orbit_project(t, big);
    let f_w = orbit_project(t, w);
    let s = sigma(t);
    let eps = sign_datum(t);
    let mut report = EquivarianceReport::default();
    for g in generators(t, &w) {
        let id = g.id();
        let Some(img) = st.generators.get(&id) else {
            report.failures.push(format!("{id}: image outside {big}"));
            continue;
        };
        let lhs = f_big.apply(img)?;
        let mut rhs = s.apply(&f_w.generators[&id])?;
        if g.crossing() && eps < 0 {
            rhs = rhs.neg();
        }
        report.checked += 1;
        if lhs != rhs {
            report.failures.push(format!("{id}: F(σ̃ g) = {lhs} but ε σ(F g) = {rhs}"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgpres::{check_d_squared, check_dg_map, compose_dg_maps};

    #[test]
    fn a2_window_counts() {
        let p = tilde_pi2(DynkinType::A(2), Window::new(0, 2).unwrap());
        assert_eq!(p.num_objects(), 6);
        assert_eq!(p.num_generators(), 9);
        assert!(check_d_squared(&p).unwrap().passed());
    }

    #[test]
    fn sigma_tilde_a3() {
        let t = DynkinType::A(3);
        let f = sigma_tilde(t, Window::new(0, 2).unwrap(), Window::new(0, 8).unwrap());
        assert_eq!(f.objects["(0,1)"], "(1,3)");
        let src = tilde_pi2(t, Window::new(0, 2).unwrap());
        let dst = tilde_pi2(t, Window::new(0, 8).unwrap());
        assert!(check_dg_map(&f, &src, &dst).unwrap().passed());
    }

    #[test]
    fn sigma_tilde_squared_is_translation_in_type_a() {
        for n in 1..=5 {
            let t = DynkinType::A(n);
            let w0 = Window::new(0, 3).unwrap();
            let w1 = Window::new(0, 3 + n as i64 + 2).unwrap();
            let w2 = Window::new(0, 3 + 2 * n as i64 + 4).unwrap();
            let s1 = sigma_tilde(t, w0, w1);
            let s2 = sigma_tilde(t, w1, w2);
            let sq = compose_dg_maps(&s2, &s1).unwrap();
            let tr = translation(t, n as i64 + 1, w0, w2);
            assert_eq!(sq.objects, tr.objects);
            assert_eq!(sq.generators, tr.generators, "A{n}");
        }
    }

    #[test]
    fn equivariance_all_small_types() {
        for t in DynkinType::all_up_to(8) {
            let r = equivariance_check(t, Window::new(-1, 2).unwrap()).unwrap();
            assert!(r.passed(), "{t}: {:?}", r.failures);
        }
    }
}
