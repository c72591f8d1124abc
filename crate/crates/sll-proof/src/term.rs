//! The proof-term syntax tree and its binding structure.
//!
//! Scoping follows the extracted process: the payload of `tensR`, `lolliL`
//! and both flat rules is bound in every premise, the input binder of
//! `tensL`/`lolliR`/`bangR` in the body, a cut channel in both premises, and
//! the server parameter of an exponential cut in the server only. The channel
//! of `1L` and of the `!L` rules is an ordinary free name even though it
//! disappears from the process.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use sll_process::{fresh_name, Name};
use sll_types::SessionType;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ProofTerm {
    OneL(Name, Box<ProofTerm>),
    OneR(Name),
    TensorL(Name, Name, Box<ProofTerm>),
    TensorR(Name, Name, Box<ProofTerm>, Box<ProofTerm>),
    LolliL(Name, Name, Box<ProofTerm>, Box<ProofTerm>),
    LolliR(Name, Name, Box<ProofTerm>),
    PlusL(Name, Box<ProofTerm>, Box<ProofTerm>),
    PlusR1(Name, SessionType, Box<ProofTerm>),
    PlusR2(Name, SessionType, Box<ProofTerm>),
    WithL1(Name, SessionType, Box<ProofTerm>),
    WithL2(Name, SessionType, Box<ProofTerm>),
    WithR(Name, Box<ProofTerm>, Box<ProofTerm>),
    FlatSharp(Name, Name, Box<ProofTerm>),
    FlatBang(Name, Name, Box<ProofTerm>),
    BangLSharp(Name, Box<ProofTerm>),
    BangLBang(Name, Box<ProofTerm>),
    BangR(Name, Name, Vec<Name>, Box<ProofTerm>),
    Cut(Name, Box<ProofTerm>, Box<ProofTerm>),
    CutBang(Name, Name, Box<ProofTerm>, Box<ProofTerm>),
    CutSharp(Name, Name, Box<ProofTerm>, Box<ProofTerm>),
}

use ProofTerm::*;

/// A position: the child indices followed from the root.
pub type Path = Vec<usize>;

fn b(d: ProofTerm) -> Box<ProofTerm> {
    Box::new(d)
}

fn n(x: &str) -> Name {
    Name::new(x)
}

// Short constructors, mostly for tests and hand-written corpora.
pub fn one_l(x: &str, d: ProofTerm) -> ProofTerm {
    OneL(n(x), b(d))
}
pub fn one_r(x: &str) -> ProofTerm {
    OneR(n(x))
}
pub fn tens_l(x: &str, y: &str, d: ProofTerm) -> ProofTerm {
    TensorL(n(x), n(y), b(d))
}
pub fn tens_r(x: &str, y: &str, d: ProofTerm, e: ProofTerm) -> ProofTerm {
    TensorR(n(x), n(y), b(d), b(e))
}
pub fn lolli_l(x: &str, y: &str, d: ProofTerm, e: ProofTerm) -> ProofTerm {
    LolliL(n(x), n(y), b(d), b(e))
}
pub fn lolli_r(x: &str, y: &str, d: ProofTerm) -> ProofTerm {
    LolliR(n(x), n(y), b(d))
}
pub fn flat_sharp(x: &str, y: &str, d: ProofTerm) -> ProofTerm {
    FlatSharp(n(x), n(y), b(d))
}
pub fn flat_bang(x: &str, y: &str, d: ProofTerm) -> ProofTerm {
    FlatBang(n(x), n(y), b(d))
}
pub fn bang_l_sharp(x: &str, d: ProofTerm) -> ProofTerm {
    BangLSharp(n(x), b(d))
}
pub fn bang_l_bang(x: &str, d: ProofTerm) -> ProofTerm {
    BangLBang(n(x), b(d))
}
pub fn bang_r(x: &str, y: &str, xs: &[&str], d: ProofTerm) -> ProofTerm {
    BangR(n(x), n(y), xs.iter().map(|s| n(s)).collect(), b(d))
}
pub fn cut(x: &str, d: ProofTerm, e: ProofTerm) -> ProofTerm {
    Cut(n(x), b(d), b(e))
}
pub fn cut_bang(x: &str, y: &str, d: ProofTerm, e: ProofTerm) -> ProofTerm {
    CutBang(n(x), n(y), b(d), b(e))
}
pub fn cut_sharp(x: &str, y: &str, d: ProofTerm, e: ProofTerm) -> ProofTerm {
    CutSharp(n(x), n(y), b(d), b(e))
}

/// Names of a node split by role; `kids` carries, per child, a bitmask of
/// the binders in scope there.
struct View<'a> {
    free: Vec<&'a Name>,
    binders: Vec<&'a Name>,
    kids: Vec<(&'a ProofTerm, u8)>,
}

impl ProofTerm {
    /// Rule label as used in the text syntax.
    pub fn rule(&self) -> &'static str {
        match self {
            OneL(..) => "1L",
            OneR(..) => "1R",
            TensorL(..) => "tensL",
            TensorR(..) => "tensR",
            LolliL(..) => "lolliL",
            LolliR(..) => "lolliR",
            PlusL(..) => "plusL",
            PlusR1(..) => "plusR1",
            PlusR2(..) => "plusR2",
            WithL1(..) => "withL1",
            WithL2(..) => "withL2",
            WithR(..) => "withR",
            FlatSharp(..) => "flat#",
            FlatBang(..) => "flat!",
            BangLSharp(..) => "bangL#",
            BangLBang(..) => "bangL!",
            BangR(..) => "bangR",
            Cut(..) => "cut",
            CutBang(..) => "cut!",
            CutSharp(..) => "cut#",
        }
    }

    fn view(&self) -> View<'_> {
        fn v<'a>(free: Vec<&'a Name>, binders: Vec<&'a Name>, kids: Vec<(&'a ProofTerm, u8)>) -> View<'a> {
            View { free, binders, kids }
        }
        match self {
            OneR(x) => v(vec![x], vec![], vec![]),
            OneL(x, d) | BangLSharp(x, d) | BangLBang(x, d) => v(vec![x], vec![], vec![(d, 0)]),
            PlusR1(x, _, d) | PlusR2(x, _, d) | WithL1(x, _, d) | WithL2(x, _, d) => v(vec![x], vec![], vec![(d, 0)]),
            PlusL(x, d, e) | WithR(x, d, e) => v(vec![x], vec![], vec![(d, 0), (e, 0)]),
            TensorL(x, y, d) | LolliR(x, y, d) | FlatSharp(x, y, d) | FlatBang(x, y, d) => {
                v(vec![x], vec![y], vec![(d, 1)])
            }
            TensorR(x, y, d, e) | LolliL(x, y, d, e) => v(vec![x], vec![y], vec![(d, 1), (e, 1)]),
            BangR(x, y, xs, d) => {
                let mut free = vec![x];
                free.extend(xs.iter());
                v(free, vec![y], vec![(d, 1)])
            }
            Cut(x, d, e) => v(vec![], vec![x], vec![(d, 1), (e, 1)]),
            CutBang(x, y, d, e) | CutSharp(x, y, d, e) => v(vec![], vec![x, y], vec![(d, 3), (e, 1)]),
        }
    }

    /// Same constructor with the names and children replaced, in `view` order.
    fn rebuild(&self, free: Vec<Name>, binders: Vec<Name>, kids: Vec<ProofTerm>) -> ProofTerm {
        let mut f = free.into_iter();
        let mut bs = binders.into_iter();
        let mut k = kids.into_iter().map(Box::new);
        let mut nf = || f.next().expect("free name");
        let mut nb = || bs.next().expect("binder");
        let mut nk = || k.next().expect("child");
        match self {
            OneR(_) => OneR(nf()),
            OneL(..) => OneL(nf(), nk()),
            BangLSharp(..) => BangLSharp(nf(), nk()),
            BangLBang(..) => BangLBang(nf(), nk()),
            PlusR1(_, t, _) => PlusR1(nf(), t.clone(), nk()),
            PlusR2(_, t, _) => PlusR2(nf(), t.clone(), nk()),
            WithL1(_, t, _) => WithL1(nf(), t.clone(), nk()),
            WithL2(_, t, _) => WithL2(nf(), t.clone(), nk()),
            PlusL(..) => {
                let x = nf();
                PlusL(x, nk(), nk())
            }
            WithR(..) => {
                let x = nf();
                WithR(x, nk(), nk())
            }
            TensorL(..) => TensorL(nf(), nb(), nk()),
            LolliR(..) => LolliR(nf(), nb(), nk()),
            FlatSharp(..) => FlatSharp(nf(), nb(), nk()),
            FlatBang(..) => FlatBang(nf(), nb(), nk()),
            TensorR(..) => {
                let (x, y) = (nf(), nb());
                TensorR(x, y, nk(), nk())
            }
            LolliL(..) => {
                let (x, y) = (nf(), nb());
                LolliL(x, y, nk(), nk())
            }
            BangR(_, _, xs, _) => {
                let x = nf();
                let aux = (0..xs.len()).map(|_| nf()).collect();
                BangR(x, nb(), aux, nk())
            }
            Cut(..) => {
                let x = nb();
                Cut(x, nk(), nk())
            }
            CutBang(..) => {
                let (x, y) = (nb(), nb());
                CutBang(x, y, nk(), nk())
            }
            CutSharp(..) => {
                let (x, y) = (nb(), nb());
                CutSharp(x, y, nk(), nk())
            }
        }
    }

    fn annotation(&self) -> Option<&SessionType> {
        match self {
            PlusR1(_, t, _) | PlusR2(_, t, _) | WithL1(_, t, _) | WithL2(_, t, _) => Some(t),
            _ => None,
        }
    }

    pub fn children(&self) -> Vec<&ProofTerm> {
        self.view().kids.into_iter().map(|(k, _)| k).collect()
    }

    pub fn children_mut(&mut self) -> Vec<&mut ProofTerm> {
        match self {
            OneR(_) => vec![],
            OneL(_, d)
            | BangLSharp(_, d)
            | BangLBang(_, d)
            | PlusR1(_, _, d)
            | PlusR2(_, _, d)
            | WithL1(_, _, d)
            | WithL2(_, _, d)
            | TensorL(_, _, d)
            | LolliR(_, _, d)
            | FlatSharp(_, _, d)
            | FlatBang(_, _, d)
            | BangR(_, _, _, d) => vec![d.as_mut()],
            PlusL(_, d, e)
            | WithR(_, d, e)
            | TensorR(_, _, d, e)
            | LolliL(_, _, d, e)
            | Cut(_, d, e)
            | CutBang(_, _, d, e)
            | CutSharp(_, _, d, e) => vec![d.as_mut(), e.as_mut()],
        }
    }

    pub fn at(&self, path: &[usize]) -> Option<&ProofTerm> {
        let mut d = self;
        for &i in path {
            d = *d.children().get(i)?;
        }
        Some(d)
    }

    pub fn at_mut(&mut self, path: &[usize]) -> Option<&mut ProofTerm> {
        let mut d = self;
        for &i in path {
            d = d.children_mut().into_iter().nth(i)?;
        }
        Some(d)
    }

    /// Copy with the subterm at `path` replaced.
    pub fn replace_at(&self, path: &[usize], new: ProofTerm) -> Option<ProofTerm> {
        let mut d = self.clone();
        *d.at_mut(path)? = new;
        Some(d)
    }

    /// Every position in preorder.
    pub fn positions(&self) -> Vec<Path> {
        let mut acc = Vec::new();
        fn go(d: &ProofTerm, p: &mut Path, acc: &mut Vec<Path>) {
            acc.push(p.clone());
            for (i, k) in d.children().into_iter().enumerate() {
                p.push(i);
                go(k, p, acc);
                p.pop();
            }
        }
        go(self, &mut Vec::new(), &mut acc);
        acc
    }

    /// Number of constructors.
    pub fn node_count(&self) -> u64 {
        1 + self.children().into_iter().map(|k| k.node_count()).sum::<u64>()
    }

    pub fn free_names(&self) -> BTreeSet<Name> {
        let v = self.view();
        let mut acc: BTreeSet<Name> = v.free.iter().map(|x| (*x).clone()).collect();
        for (k, mask) in v.kids {
            for x in k.free_names() {
                let bound = v.binders.iter().enumerate().any(|(i, b)| mask & (1 << i) != 0 && **b == x);
                if !bound {
                    acc.insert(x);
                }
            }
        }
        acc
    }

    pub fn is_free(&self, x: &Name) -> bool {
        self.free_names().contains(x)
    }

    pub fn all_names(&self) -> BTreeSet<Name> {
        let mut acc = BTreeSet::new();
        self.walk_names(&mut |x| {
            acc.insert(x.clone());
        });
        acc
    }

    fn walk_names(&self, f: &mut impl FnMut(&Name)) {
        let v = self.view();
        v.free.iter().for_each(|x| f(x));
        v.binders.iter().for_each(|x| f(x));
        for (k, _) in v.kids {
            k.walk_names(f);
        }
    }

    /// Simultaneous capture-avoiding renaming of free names.
    pub fn rename(&self, m: &BTreeMap<Name, Name>) -> ProofTerm {
        if m.is_empty() {
            return self.clone();
        }
        let v = self.view();
        let free = v.free.iter().map(|x| m.get(*x).unwrap_or(x).clone()).collect();
        let mut new_binders = Vec::new();
        for (i, bnd) in v.binders.iter().enumerate() {
            let scope: BTreeSet<Name> =
                v.kids.iter().filter(|(_, mask)| mask & (1 << i) != 0).flat_map(|(k, _)| k.free_names()).collect();
            let captures = scope.iter().any(|x| x != *bnd && m.get(x) == Some(*bnd));
            if captures {
                let mut avoid = self.all_names();
                avoid.extend(m.keys().cloned());
                avoid.extend(m.values().cloned());
                new_binders.push(fresh_name(bnd, |c| avoid.contains(c)));
            } else {
                new_binders.push((*bnd).clone());
            }
        }
        let kids = v
            .kids
            .iter()
            .map(|(k, mask)| {
                let mut mk = m.clone();
                for (i, bnd) in v.binders.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        mk.remove(*bnd);
                    }
                }
                for (i, bnd) in v.binders.iter().enumerate() {
                    if mask & (1 << i) != 0 && new_binders[i] != **bnd {
                        mk.insert((*bnd).clone(), new_binders[i].clone());
                    }
                }
                k.rename(&mk)
            })
            .collect();
        self.rebuild(free, new_binders, kids)
    }

    pub fn substitute(&self, from: &Name, to: &Name) -> ProofTerm {
        if from == to {
            return self.clone();
        }
        self.rename(&BTreeMap::from([(from.clone(), to.clone())]))
    }

    /// Rename every binder to a name outside `avoid`, adding the new names to
    /// it. Free names are untouched.
    pub fn freshen(&self, avoid: &mut BTreeSet<Name>) -> ProofTerm {
        let v = self.view();
        let free = v.free.iter().map(|x| (*x).clone()).collect();
        let mut new_binders = Vec::new();
        for bnd in &v.binders {
            let f = fresh_name(bnd, |c| avoid.contains(c));
            avoid.insert(f.clone());
            new_binders.push(f);
        }
        let kids = v
            .kids
            .iter()
            .map(|(k, mask)| {
                let mut mk = BTreeMap::new();
                for (i, bnd) in v.binders.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        mk.insert((*bnd).clone(), new_binders[i].clone());
                    }
                }
                k.rename(&mk).freshen(avoid)
            })
            .collect();
        self.rebuild(free, new_binders, kids)
    }

    /// Names bound at this node, outermost first.
    pub fn binders(&self) -> Vec<Name> {
        self.view().binders.into_iter().cloned().collect()
    }

    /// Rename this node's own binders, in [`binders`](Self::binders) order.
    /// The new names must not occur free in the scopes they enter.
    pub fn with_binders(&self, new: &[Name]) -> ProofTerm {
        let v = self.view();
        assert_eq!(new.len(), v.binders.len(), "binder count");
        let free = v.free.iter().map(|x| (*x).clone()).collect();
        let kids = v
            .kids
            .iter()
            .map(|(k, mask)| {
                let mut mk = BTreeMap::new();
                for (i, bnd) in v.binders.iter().enumerate() {
                    if mask & (1 << i) != 0 && **bnd != new[i] {
                        mk.insert((*bnd).clone(), new[i].clone());
                    }
                }
                k.rename(&mk)
            })
            .collect();
        self.rebuild(free, new.to_vec(), kids)
    }

    pub fn alpha_eq(&self, other: &ProofTerm) -> bool {
        alpha_rec(self, other, &mut Vec::new(), &mut Vec::new())
    }

    /// True when no cut of any kind occurs.
    pub fn is_cut_free(&self) -> bool {
        !matches!(self, Cut(..) | CutBang(..) | CutSharp(..)) && self.children().into_iter().all(|k| k.is_cut_free())
    }
}

fn resolve(env: &[&Name], x: &Name) -> Result<usize, Name> {
    match env.iter().rposition(|b| *b == x) {
        Some(i) => Ok(i),
        None => Err(x.clone()),
    }
}

fn alpha_rec<'a>(a: &'a ProofTerm, b: &'a ProofTerm, ea: &mut Vec<&'a Name>, eb: &mut Vec<&'a Name>) -> bool {
    if std::mem::discriminant(a) != std::mem::discriminant(b) || a.annotation() != b.annotation() {
        return false;
    }
    let (va, vb) = (a.view(), b.view());
    if va.free.len() != vb.free.len() {
        return false;
    }
    if va.free.iter().zip(&vb.free).any(|(x, y)| resolve(ea, x) != resolve(eb, y)) {
        return false;
    }
    for ((ka, mask), (kb, _)) in va.kids.iter().zip(&vb.kids) {
        let (la, lb) = (ea.len(), eb.len());
        for i in 0..va.binders.len() {
            if mask & (1 << i) != 0 {
                ea.push(va.binders[i]);
                eb.push(vb.binders[i]);
            }
        }
        let ok = alpha_rec(ka, kb, ea, eb);
        ea.truncate(la);
        eb.truncate(lb);
        if !ok {
            return false;
        }
    }
    true
}

impl fmt::Display for ProofTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneR(x) => write!(f, "(1R {x})"),
            OneL(x, d) => write!(f, "(1L {x} {d})"),
            TensorL(x, y, d) => write!(f, "(tensL {x} {y} {d})"),
            TensorR(x, y, d, e) => write!(f, "(tensR {x} {y} {d} {e})"),
            LolliL(x, y, d, e) => write!(f, "(lolliL {x} {y} {d} {e})"),
            LolliR(x, y, d) => write!(f, "(lolliR {x} {y} {d})"),
            PlusL(x, d, e) => write!(f, "(plusL {x} {d} {e})"),
            PlusR1(x, t, d) => write!(f, "(plusR1 {x} <{t}> {d})"),
            PlusR2(x, t, d) => write!(f, "(plusR2 {x} <{t}> {d})"),
            WithL1(x, t, d) => write!(f, "(withL1 {x} <{t}> {d})"),
            WithL2(x, t, d) => write!(f, "(withL2 {x} <{t}> {d})"),
            WithR(x, d, e) => write!(f, "(withR {x} {d} {e})"),
            FlatSharp(x, y, d) => write!(f, "(flat# {x} {y} {d})"),
            FlatBang(x, y, d) => write!(f, "(flat! {x} {y} {d})"),
            BangLSharp(x, d) => write!(f, "(bangL# {x} {d})"),
            BangLBang(x, d) => write!(f, "(bangL! {x} {d})"),
            BangR(x, y, xs, d) => {
                write!(f, "(bangR {x} {y} (")?;
                for (i, a) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ") {d})")
            }
            Cut(x, d, e) => write!(f, "(cut {x} {d} {e})"),
            CutBang(x, y, d, e) => write!(f, "(cut! {x} {y} {d} {e})"),
            CutSharp(x, y, d, e) => write!(f, "(cut# {x} {y} {d} {e})"),
        }
    }
}

impl fmt::Debug for ProofTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_names_follow_scoping() {
        let d = tens_r("x", "y", one_r("y"), one_l("a", one_r("x")));
        let fv: Vec<_> = d.free_names().into_iter().map(|x| x.to_string()).collect();
        assert_eq!(fv, ["a", "x"]);
        let d = cut_sharp(
            "x",
            "y",
            flat_bang("a", "z", one_l("z", one_r("y"))),
            flat_sharp("x", "w", one_l("w", one_r("u"))),
        );
        let fv: Vec<_> = d.free_names().into_iter().map(|x| x.to_string()).collect();
        assert_eq!(fv, ["a", "u"]);
    }

    #[test]
    fn rename_avoids_capture() {
        let d = flat_sharp("x", "y", one_l("y", one_l("a", one_r("z"))));
        let e = d.substitute(&n("a"), &n("y"));
        assert!(e.is_free(&n("y")));
        assert!(!e.is_free(&n("a")));
        assert_eq!(e.free_names().len(), d.free_names().len());
    }

    #[test]
    fn alpha() {
        let a = cut("x", one_r("x"), one_l("x", one_r("z")));
        let b = cut("q", one_r("q"), one_l("q", one_r("z")));
        let c = cut("q", one_r("q"), one_l("q", one_r("w")));
        assert!(a.alpha_eq(&b));
        assert!(!a.alpha_eq(&c));
        let mut avoid = a.all_names();
        assert!(a.freshen(&mut avoid).alpha_eq(&a));
    }

    #[test]
    fn paths() {
        let d = cut("x", one_r("x"), one_l("x", one_r("z")));
        assert_eq!(d.at(&[1, 0]), Some(&one_r("z")));
        let e = d.replace_at(&[1, 0], one_r("w")).unwrap();
        assert_eq!(e.at(&[1, 0]), Some(&one_r("w")));
        assert_eq!(d.positions().len(), 4);
    }
}
