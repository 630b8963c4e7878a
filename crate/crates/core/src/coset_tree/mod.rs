//! The tree `T` on which `A_ab` acts, and its cone-off `T̂` over the translates of the
//! generator axes.
//!
//! Coset vertices are cosets `g⟨Δ⟩`, named by the atom product `g_•` of `g`. Simplex vertices
//! are the `m`-element families `g·{(x,y;k)⟨Δ⟩ : 0 <= k < m}`. Every algebraic query here is
//! answered from normal forms; [`TreeBall`] materializes a finite ball when an explicit graph
//! is needed.
//!
//! ```
//! use artin_core::coset_tree::{CosetTree, CosetVertex};
//! use artin_core::dihedral::DihedralGroup;
//! use artin_core::freeword::parse;
//!
//! let t = CosetTree::new(DihedralGroup::new(3).unwrap());
//! let v = t.act(&parse("a b").unwrap(), &CosetVertex::base());
//! assert_eq!(t.coset_distance(&CosetVertex::base(), &v), 2);
//! ```

mod ball;
mod dhat;

pub use ball::{TreeBall, DEFAULT_BUDGET};
pub use dhat::{AxisInterval, DhatDistance};

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::dihedral::{Atom, DihedralGroup, GarsideForm, Normalizer};
use crate::error::{Error, Result};
use crate::freeword::{Letter, SignedLetter, Word};

/// A coset `g⟨Δ⟩`, stored as the atoms of `g_•`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct CosetVertex {
    atoms: Vec<Atom>,
}

impl Ord for CosetVertex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.atoms.len().cmp(&other.atoms.len()).then_with(|| self.atoms.cmp(&other.atoms))
    }
}

impl PartialOrd for CosetVertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl CosetVertex {
    /// `1_•`, the coset `⟨Δ⟩`.
    pub fn base() -> Self {
        CosetVertex::default()
    }

    pub fn of(form: &GarsideForm) -> Self {
        CosetVertex { atoms: form.atoms.clone() }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn form(&self) -> GarsideForm {
        GarsideForm { atoms: self.atoms.clone(), delta_exp: 0 }
    }

    pub fn word(&self) -> Word {
        self.form().positive_word()
    }
}

impl fmt::Display for CosetVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// `base·S_dir`, where `base` is the least member of the simplex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimplexVertex {
    pub base: CosetVertex,
    pub dir: Letter,
}

impl fmt::Display for SimplexVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base.atoms.is_empty() {
            write!(f, "S_{}", self.dir)
        } else {
            write!(f, "{}·S_{}", self.base, self.dir)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TreeVertex {
    Coset(CosetVertex),
    Simplex(SimplexVertex),
}

impl fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeVertex::Coset(c) => write!(f, "{c}"),
            TreeVertex::Simplex(s) => write!(f, "{s}"),
        }
    }
}

/// The line `anchor·γ_direction`, with `anchor` the point of the line nearest `1_•`
/// (least in the coset order when two are equally near).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Axis {
    pub anchor: CosetVertex,
    pub direction: Letter,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·γ_{}", self.anchor, self.direction)
    }
}

/// Algebraic access to `T` for a fixed dihedral group.
#[derive(Debug, Clone, Copy)]
pub struct CosetTree {
    group: DihedralGroup,
}

impl CosetTree {
    pub fn new(group: DihedralGroup) -> Self {
        CosetTree { group }
    }

    pub fn group(&self) -> DihedralGroup {
        self.group
    }

    fn m(&self) -> u32 {
        self.group.m()
    }

    /// `g·v`.
    pub fn act(&self, g: &Word, v: &CosetVertex) -> CosetVertex {
        let mut n = Normalizer::new(self.group);
        n.mul_word(g);
        n.mul_form(&v.form());
        CosetVertex::of(&n.finish())
    }

    pub fn act_form(&self, g: &GarsideForm, v: &CosetVertex) -> CosetVertex {
        CosetVertex::of(&self.group.multiply(g, &v.form()))
    }

    /// `g·S` for a simplex vertex.
    pub fn act_simplex(&self, g: &GarsideForm, s: &SimplexVertex) -> SimplexVertex {
        self.simplex_from(&self.group.multiply(g, &s.base.form()), s.dir)
    }

    pub fn act_vertex(&self, g: &GarsideForm, v: &TreeVertex) -> TreeVertex {
        match v {
            TreeVertex::Coset(c) => TreeVertex::Coset(self.act_form(g, c)),
            TreeVertex::Simplex(s) => TreeVertex::Simplex(self.act_simplex(g, s)),
        }
    }

    /// The simplex `g·S_x` in canonical form.
    pub fn simplex_from(&self, g: &GarsideForm, x: Letter) -> SimplexVertex {
        let m = self.m();
        let mut best: Option<(CosetVertex, Letter)> = None;
        for j in 0..m as usize {
            let mut n = Normalizer::from_form(self.group, g);
            for i in 0..j {
                n.mul_letter(SignedLetter::pos(x.alternate(i)));
            }
            let f = n.finish();
            let member = CosetVertex::of(&f);
            let dir = x.alternate(j).tilde_pow(m, f.delta_exp);
            if best.as_ref().is_none_or(|(b, _)| member < *b) {
                best = Some((member, dir));
            }
        }
        let (base, dir) = best.expect("m >= 3 members");
        SimplexVertex { base, dir }
    }

    /// The two simplices containing `v`, direction `a` first.
    pub fn simplices_at(&self, v: &CosetVertex) -> [SimplexVertex; 2] {
        let f = v.form();
        [self.simplex_from(&f, Letter::A), self.simplex_from(&f, Letter::B)]
    }

    /// The `m` members of a simplex, in the order `base·(dir, ...; k)`.
    pub fn members(&self, s: &SimplexVertex) -> Vec<CosetVertex> {
        (0..self.m() as usize)
            .map(|k| {
                let mut n = Normalizer::from_form(self.group, &s.base.form());
                for i in 0..k {
                    n.mul_letter(SignedLetter::pos(s.dir.alternate(i)));
                }
                CosetVertex::of(&n.finish())
            })
            .collect()
    }

    pub fn neighbours(&self, v: &TreeVertex) -> Vec<TreeVertex> {
        match v {
            TreeVertex::Coset(c) => {
                self.simplices_at(c).into_iter().map(TreeVertex::Simplex).collect()
            }
            TreeVertex::Simplex(s) => self.members(s).into_iter().map(TreeVertex::Coset).collect(),
        }
    }

    /// `x^{-1} y` as a normal form, for coset representatives.
    pub fn relative(&self, x: &CosetVertex, y: &CosetVertex) -> GarsideForm {
        self.group.left_quotient(&x.form(), &y.form())
    }

    pub fn coset_distance(&self, x: &CosetVertex, y: &CosetVertex) -> u64 {
        2 * self.relative(x, y).atom_count() as u64
    }

    pub fn distance(&self, x: &TreeVertex, y: &TreeVertex) -> u64 {
        match (x, y) {
            (TreeVertex::Coset(a), TreeVertex::Coset(b)) => self.coset_distance(a, b),
            (TreeVertex::Coset(c), TreeVertex::Simplex(s))
            | (TreeVertex::Simplex(s), TreeVertex::Coset(c)) => {
                self.members(s).iter().map(|mem| self.coset_distance(c, mem)).min().unwrap_or(0)
                    + 1
            }
            (TreeVertex::Simplex(s), TreeVertex::Simplex(t)) => {
                if s == t {
                    return 0;
                }
                let tm = self.members(t);
                self.members(s)
                    .iter()
                    .flat_map(|a| tm.iter().map(move |b| (a, b)))
                    .map(|(a, b)| self.coset_distance(a, b))
                    .min()
                    .unwrap_or(0)
                    + 2
            }
        }
    }

    /// Cosets along the geodesic from `x` to `y`, as group elements `x_•·q_1⋯q_i`, with the
    /// atoms `q_i` of `x_•^{-1} y_•`.
    pub(crate) fn geodesic_steps(&self, x: &CosetVertex, y: &CosetVertex) -> (Vec<GarsideForm>, Vec<Atom>) {
        let q = self.relative(x, y);
        let mut prefixes = vec![x.form()];
        let mut n = Normalizer::from_form(self.group, &x.form());
        for a in &q.atoms {
            for i in 0..a.len as usize {
                n.mul_letter(SignedLetter::pos(a.start.alternate(i)));
            }
            prefixes.push(n.finish());
        }
        (prefixes, q.atoms)
    }

    /// The unique path from `x` to `y`, alternating coset and simplex vertices.
    pub fn coset_geodesic(&self, x: &CosetVertex, y: &CosetVertex) -> Vec<TreeVertex> {
        let (prefixes, atoms) = self.geodesic_steps(x, y);
        let mut path = vec![TreeVertex::Coset(x.clone())];
        for (i, a) in atoms.iter().enumerate() {
            path.push(TreeVertex::Simplex(self.simplex_from(&prefixes[i], a.start)));
            path.push(TreeVertex::Coset(CosetVertex::of(&prefixes[i + 1])));
        }
        path
    }

    /// The unique path between arbitrary vertices.
    pub fn geodesic(&self, x: &TreeVertex, y: &TreeVertex) -> Vec<TreeVertex> {
        let nearest = |s: &SimplexVertex, target: &TreeVertex| -> CosetVertex {
            self.members(s)
                .into_iter()
                .min_by_key(|c| self.distance(&TreeVertex::Coset(c.clone()), target))
                .expect("members")
        };
        if x == y {
            return vec![x.clone()];
        }
        let (cx, cy) = match (x, y) {
            (TreeVertex::Coset(a), TreeVertex::Coset(b)) => (a.clone(), b.clone()),
            (TreeVertex::Coset(a), TreeVertex::Simplex(s)) => (a.clone(), nearest(s, x)),
            (TreeVertex::Simplex(s), TreeVertex::Coset(b)) => (nearest(s, y), b.clone()),
            (TreeVertex::Simplex(s), TreeVertex::Simplex(t)) => (nearest(s, y), nearest(t, x)),
        };
        let mut path = self.coset_geodesic(&cx, &cy);
        if let TreeVertex::Simplex(_) = x {
            if path.get(1) == Some(x) {
                path.remove(0);
            } else {
                path.insert(0, x.clone());
            }
        }
        if let TreeVertex::Simplex(_) = y {
            let n = path.len();
            if n >= 2 && path[n - 2] == *y {
                path.pop();
            } else {
                path.push(y.clone());
            }
        }
        path
    }

    /// Translation length on `T`: `max(0, d(x, g²x) - d(x, gx))` at `x = 1_•`.
    pub fn translation_length(&self, g: &GarsideForm) -> u64 {
        let d1 = 2 * g.atom_count() as u64;
        let d2 = 2 * self.group.multiply(g, g).atom_count() as u64;
        d2.saturating_sub(d1)
    }

    /// A coset on the axis of a loxodromic `g`: the coset nearest the midpoint of `[1_•, g·1_•]`.
    pub fn axis_point(&self, g: &GarsideForm) -> Result<CosetVertex> {
        if self.translation_length(g) == 0 {
            return Err(Error::Elliptic);
        }
        let k = g.atom_count() / 2;
        Ok(CosetVertex { atoms: g.atoms[..k].to_vec() })
    }

    /// One period of the axis of `g`: the path from a point `p` on it to `g·p`.
    pub fn axis_of(&self, g: &GarsideForm) -> Result<Vec<TreeVertex>> {
        let p = self.axis_point(g)?;
        let gp = self.act_form(g, &p);
        Ok(self.coset_geodesic(&p, &gp))
    }

    /// The canonical name of the line `v·γ_s`.
    pub fn axis(&self, v: &CosetVertex, s: Letter) -> Axis {
        let point = |k: i64| -> GarsideForm {
            let mut n = Normalizer::from_form(self.group, &v.form());
            n.mul_syllable(s, k);
            n.finish()
        };
        let size = |k: i64| point(k).atom_count();
        let mut k = 0i64;
        let step = if size(1) < size(0) {
            1
        } else if size(-1) < size(0) {
            -1
        } else {
            0
        };
        if step != 0 {
            while size(k + step) < size(k) {
                k += step;
            }
        }
        let mut candidates = vec![point(k)];
        for nb in [k - 1, k + 1] {
            let f = point(nb);
            if f.atom_count() == candidates[0].atom_count() {
                candidates.push(f);
            }
        }
        let best = candidates
            .into_iter()
            .min_by(|x, y| CosetVertex::of(x).cmp(&CosetVertex::of(y)))
            .expect("nonempty");
        Axis { anchor: CosetVertex::of(&best), direction: s.tilde_pow(self.m(), best.delta_exp) }
    }

    /// The two lines through `v`: `v·γ_a` and `v·γ_b`.
    pub fn axes_through(&self, v: &CosetVertex) -> [Axis; 2] {
        [self.axis(v, Letter::A), self.axis(v, Letter::B)]
    }

    pub fn on_axis(&self, axis: &Axis, w: &CosetVertex) -> bool {
        let q = self.relative(&axis.anchor, w);
        if q.atoms.is_empty() {
            return true;
        }
        let c = q.atoms.len() as i64;
        [c, -c].iter().any(|&k| {
            self.group.normal_form(&Word::power(axis.direction, k)).atoms == q.atoms
        })
    }

    pub fn simplex_on_axis(&self, axis: &Axis, s: &SimplexVertex) -> bool {
        self.members(s).iter().any(|c| self.on_axis(axis, c))
    }

    /// `d_T̂(1_•, g·1_•) <= 2·ℓ_S(w)` for the given representative `w`.
    pub fn check_syllable_upper(&self, g: &Word) -> bool {
        let target = self.act(g, &CosetVertex::base());
        self.dhat(&CosetVertex::base(), &target).upper <= 2 * g.syllable_count() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeword::parse;
    use proptest::prelude::*;

    fn tree(m: u32) -> CosetTree {
        CosetTree::new(DihedralGroup::new(m).unwrap())
    }

    fn form(t: &CosetTree, s: &str) -> GarsideForm {
        t.group().normal_form(&parse(s).unwrap())
    }

    #[test]
    fn distances() {
        let t = tree(3);
        let one = CosetVertex::base();
        let a = t.act(&parse("a").unwrap(), &one);
        let ab = t.act(&parse("a b").unwrap(), &one);
        assert_eq!(t.coset_distance(&one, &a), 2);
        assert_eq!(t.coset_distance(&one, &ab), 2);
        assert_eq!(t.coset_distance(&a, &a), 0);
        assert_eq!(t.act(&t.group().delta_word(), &one), one);
    }

    #[test]
    fn simplex_membership() {
        let t = tree(3);
        let [sa, sb] = t.simplices_at(&CosetVertex::base());
        assert_ne!(sa, sb);
        let mem = t.members(&sa);
        assert_eq!(mem.len(), 3);
        assert!(mem.contains(&CosetVertex::base()));
        for c in &mem {
            assert!(t.simplices_at(c).contains(&sa));
        }
        // a^{-1}⟨Δ⟩ = ba⟨Δ⟩ lies in S_b
        let ainv = t.act(&parse("a^-1").unwrap(), &CosetVertex::base());
        assert!(t.members(&sb).contains(&ainv));
    }

    #[test]
    fn translation_lengths() {
        let t = tree(3);
        assert_eq!(t.translation_length(&form(&t, "a b a")), 0);
        assert_eq!(t.translation_length(&form(&t, "a b")), 0);
        assert_eq!(t.translation_length(&form(&t, "a")), 2);
        assert_eq!(t.translation_length(&form(&t, "a b^-1")), 4);
    }

    #[test]
    fn axis_of_generator() {
        let t = tree(3);
        let path = t.axis_of(&form(&t, "a")).unwrap();
        let one = CosetVertex::base();
        assert_eq!(path.len(), 3);
        assert_eq!(path[0], TreeVertex::Coset(one.clone()));
        assert_eq!(path[1], TreeVertex::Simplex(t.simplices_at(&one)[0].clone()));
        assert_eq!(path[2], TreeVertex::Coset(t.act(&parse("a").unwrap(), &one)));
        assert!(matches!(t.axis_of(&form(&t, "a b")), Err(Error::Elliptic)));
    }

    #[test]
    fn axes_and_membership() {
        let t = tree(3);
        let one = CosetVertex::base();
        let [ga, gb] = t.axes_through(&one);
        assert_eq!(ga, Axis { anchor: one.clone(), direction: Letter::A });
        assert_eq!(gb, Axis { anchor: one.clone(), direction: Letter::B });
        let a5 = t.act(&parse("a^5").unwrap(), &one);
        assert!(t.on_axis(&ga, &a5));
        assert_eq!(t.axis(&a5, Letter::A), ga);
        let ab = t.act(&parse("a b").unwrap(), &one);
        assert!(!t.on_axis(&ga, &ab));
        let am = t.act(&parse("a^-3").unwrap(), &one);
        assert!(t.on_axis(&ga, &am));
        assert_eq!(t.axis(&am, Letter::B), ga);
    }

    #[test]
    fn conjugate_axis_is_translate() {
        let t = tree(3);
        let g = form(&t, "b a b^-1");
        let period = t.axis_of(&g).unwrap();
        let line = Axis { anchor: CosetVertex::base(), direction: Letter::A };
        for v in &period {
            if let TreeVertex::Coset(c) = v {
                let pulled = t.act(&parse("b^-1").unwrap(), c);
                assert!(t.on_axis(&line, &pulled), "{c} not on b·γ_a");
            }
        }
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((prop::bool::ANY, -3i64..=3), 0..7).prop_map(|v| {
            Word::from_syllables(
                v.into_iter().map(|(b, e)| (if b { Letter::A } else { Letter::B }, e)),
            )
        })
    }

    proptest! {
        #[test]
        fn action_law(g in arb_word(), h in arb_word(), x in arb_word(), m in 3u32..6) {
            let t = tree(m);
            let v = t.act(&x, &CosetVertex::base());
            prop_assert_eq!(t.act(&g, &t.act(&h, &v)), t.act(&g.concat(&h), &v));
        }

        #[test]
        fn action_is_isometric(g in arb_word(), x in arb_word(), y in arb_word(), m in 3u32..6) {
            let t = tree(m);
            let vx = t.act(&x, &CosetVertex::base());
            let vy = t.act(&y, &CosetVertex::base());
            prop_assert_eq!(
                t.coset_distance(&vx, &vy),
                t.coset_distance(&t.act(&g, &vx), &t.act(&g, &vy))
            );
        }

        #[test]
        fn geodesic_is_a_path(x in arb_word(), y in arb_word(), m in 3u32..6) {
            let t = tree(m);
            let vx = t.act(&x, &CosetVertex::base());
            let vy = t.act(&y, &CosetVertex::base());
            let path = t.coset_geodesic(&vx, &vy);
            prop_assert_eq!(path.len() as u64, t.coset_distance(&vx, &vy) + 1);
            for pair in path.windows(2) {
                prop_assert!(t.neighbours(&pair[0]).contains(&pair[1]));
            }
            let mut seen = std::collections::HashSet::new();
            for v in &path {
                prop_assert!(seen.insert(v.clone()));
            }
        }

        #[test]
        fn axis_period_has_translation_length(g in arb_word(), m in 3u32..6) {
            let t = tree(m);
            let f = t.group().normal_form(&g);
            let ell = t.translation_length(&f);
            prop_assert_eq!(ell % 2, 0);
            if ell > 0 {
                let period = t.axis_of(&f).unwrap();
                prop_assert_eq!(period.len() as u64, ell + 1);
                for v in &period {
                    let gv = t.act_vertex(&f, v);
                    prop_assert_eq!(t.distance(v, &gv), ell);
                }
            }
        }

        #[test]
        fn axis_key_is_independent_of_point(x in arb_word(), k in -4i64..=4, s_a in prop::bool::ANY, m in 3u32..6) {
            let t = tree(m);
            let s = if s_a { Letter::A } else { Letter::B };
            let v = t.act(&x, &CosetVertex::base());
            let axis = t.axis(&v, s);
            let mut n = Normalizer::from_form(t.group(), &v.form());
            n.mul_syllable(s, k);
            let f = n.finish();
            let w = CosetVertex::of(&f);
            prop_assert!(t.on_axis(&axis, &w));
            prop_assert_eq!(t.axis(&w, s.tilde_pow(m, f.delta_exp)), axis);
        }
    }
}
