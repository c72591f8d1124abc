//! The rule table. Every rule is a partial function on the subterm at the
//! redex; equivalence rows also carry their right-to-left reading.
//!
//! Before a rule fires, [`tidy`] renames the binders of the top three levels
//! of the redex so that none of them is free in the redex or bound twice.
//! With that done, each row only has to check genuine dependencies: a
//! subterm leaving the scope of a binder must not mention it.

use std::collections::BTreeSet;

use sll_process::{fresh_avoiding, Name};
use sll_proof::extract;
use sll_proof::typing::lift_unchecked;
use sll_proof::ProofTerm::{self, *};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    Computational,
    Shift,
    Equivalence,
}

/// The three blocks of equivalence rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    Structural,
    Bisimilarity,
    Commuting,
}

/// Names to stay clear of when inventing binders.
#[derive(Clone, Debug, Default)]
pub struct Fresh {
    taken: BTreeSet<Name>,
}

impl Fresh {
    pub fn new(taken: BTreeSet<Name>) -> Fresh {
        Fresh { taken }
    }

    pub fn for_term(d: &ProofTerm) -> Fresh {
        Fresh::new(d.all_names())
    }

    pub fn name(&mut self, base: &Name) -> Name {
        let n = fresh_avoiding(base, &self.taken);
        self.taken.insert(n.clone());
        n
    }

    pub fn reserve(&mut self, n: &Name) {
        self.taken.insert(n.clone());
    }
}

type RuleFn = fn(&ProofTerm, &mut Fresh) -> Option<ProofTerm>;

pub struct Rule {
    pub name: &'static str,
    pub kind: StepKind,
    pub group: Option<Group>,
    pub forward: RuleFn,
    pub reverse: Option<RuleFn>,
}

impl Rule {
    /// Apply at the root of `t`, right to left when `reversed`.
    pub fn apply(&self, t: &ProofTerm, reversed: bool, fresh: &mut Fresh) -> Option<ProofTerm> {
        let f = if reversed { self.reverse? } else { self.forward };
        f(&tidy(t, fresh), fresh)
    }
}

/// Alpha-rename binders near the root so the rows can be read naively.
pub fn tidy(t: &ProofTerm, fresh: &mut Fresh) -> ProofTerm {
    let fv = t.free_names();
    let mut seen = BTreeSet::new();
    tidy_rec(t, 3, &fv, &mut seen, fresh)
}

fn tidy_rec(t: &ProofTerm, depth: u32, fv: &BTreeSet<Name>, seen: &mut BTreeSet<Name>, fresh: &mut Fresh) -> ProofTerm {
    if depth == 0 {
        return t.clone();
    }
    let old = t.binders();
    let mut new = Vec::with_capacity(old.len());
    for b in &old {
        let n = if fv.contains(b) || seen.contains(b) { fresh.name(b) } else { b.clone() };
        seen.insert(n.clone());
        new.push(n);
    }
    let mut t = if new != old { t.with_binders(&new) } else { t.clone() };
    for k in t.children_mut() {
        *k = tidy_rec(k, depth - 1, fv, seen, fresh);
    }
    t
}

fn bx(d: ProofTerm) -> Box<ProofTerm> {
    Box::new(d)
}

fn c(x: &Name, d: ProofTerm, e: ProofTerm) -> ProofTerm {
    Cut(x.clone(), bx(d), bx(e))
}

fn cb(x: &Name, y: &Name, d: ProofTerm, e: ProofTerm) -> ProofTerm {
    CutBang(x.clone(), y.clone(), bx(d), bx(e))
}

fn cs(x: &Name, y: &Name, d: ProofTerm, e: ProofTerm) -> ProofTerm {
    CutSharp(x.clone(), y.clone(), bx(d), bx(e))
}

fn free(t: &ProofTerm, x: &Name) -> bool {
    t.is_free(x)
}

/// An exponential cut viewed uniformly; `sharp` tells the flavour.
struct Exp<'a> {
    sharp: bool,
    x: &'a Name,
    y: &'a Name,
    d: &'a ProofTerm,
    e: &'a ProofTerm,
}

fn exp(t: &ProofTerm) -> Option<Exp<'_>> {
    match t {
        CutBang(x, y, d, e) => Some(Exp { sharp: false, x, y, d, e }),
        CutSharp(x, y, d, e) => Some(Exp { sharp: true, x, y, d, e }),
        _ => None,
    }
}

fn mk_exp(sharp: bool, x: &Name, y: &Name, d: ProofTerm, e: ProofTerm) -> ProofTerm {
    if sharp {
        cs(x, y, d, e)
    } else {
        cb(x, y, d, e)
    }
}

/// Head rules that commute with cuts: `1L`, `!L_!`, `!L_#`.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Head {
    One,
    Bang,
    Sharp,
}

fn head(t: &ProofTerm) -> Option<(Head, &Name, &ProofTerm)> {
    match t {
        OneL(y, d) => Some((Head::One, y, d)),
        BangLBang(y, d) => Some((Head::Bang, y, d)),
        BangLSharp(y, d) => Some((Head::Sharp, y, d)),
        _ => None,
    }
}

fn mk_head(h: Head, y: &Name, d: ProofTerm) -> ProofTerm {
    match h {
        Head::One => OneL(y.clone(), bx(d)),
        Head::Bang => BangLBang(y.clone(), bx(d)),
        Head::Sharp => BangLSharp(y.clone(), bx(d)),
    }
}

/// Which cut a row is about: linear, `cut!` or `cut#`.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Kut {
    Lin,
    Bang,
    Sharp,
}

/// A cut of the given flavour as `(x, server parameter, left, right)`.
fn kut(k: Kut, t: &ProofTerm) -> Option<(&Name, Option<&Name>, &ProofTerm, &ProofTerm)> {
    match (k, t) {
        (Kut::Lin, Cut(x, d, e)) => Some((x, None, d, e)),
        (Kut::Bang, CutBang(x, y, d, e)) | (Kut::Sharp, CutSharp(x, y, d, e)) => Some((x, Some(y), d, e)),
        _ => None,
    }
}

fn mk_kut(k: Kut, x: &Name, y: Option<&Name>, d: ProofTerm, e: ProofTerm) -> ProofTerm {
    match k {
        Kut::Lin => c(x, d, e),
        Kut::Bang => cb(x, y.expect("server parameter"), d, e),
        Kut::Sharp => cs(x, y.expect("server parameter"), d, e),
    }
}

// ---- computational ----

fn tensor(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let Cut(x, l, r) = t else { return None };
    let (TensorR(x1, y, d, e), TensorL(x2, y2, f)) = (&**l, &**r) else { return None };
    if x1 != x || x2 != x || free(d, x) {
        return None;
    }
    Some(c(y, (**d).clone(), c(x, (**e).clone(), f.substitute(y2, y))))
}

fn lolli(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let Cut(x, l, r) = t else { return None };
    let (LolliR(x1, y, d), LolliL(x2, y2, e, f)) = (&**l, &**r) else { return None };
    if x1 != x || x2 != x || free(f, y2) || free(e, x) {
        return None;
    }
    Some(c(x, c(y, e.substitute(y2, y), (**d).clone()), (**f).clone()))
}

fn with_l(t: &ProofTerm, left: bool) -> Option<ProofTerm> {
    let Cut(x, l, r) = t else { return None };
    let WithR(x1, d, e) = &**l else { return None };
    let (x2, f) = match (&**r, left) {
        (WithL1(x2, _, f), true) | (WithL2(x2, _, f), false) => (x2, f),
        _ => return None,
    };
    if x1 != x || x2 != x {
        return None;
    }
    Some(c(x, if left { (**d).clone() } else { (**e).clone() }, (**f).clone()))
}

fn with1(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    with_l(t, true)
}

fn with2(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    with_l(t, false)
}

fn plus_r(t: &ProofTerm, left: bool) -> Option<ProofTerm> {
    let Cut(x, l, r) = t else { return None };
    let (x1, d) = match (&**l, left) {
        (PlusR1(x1, _, d), true) | (PlusR2(x1, _, d), false) => (x1, d),
        _ => return None,
    };
    let PlusL(x2, e, f) = &**r else { return None };
    if x1 != x || x2 != x {
        return None;
    }
    Some(c(x, (**d).clone(), if left { (**e).clone() } else { (**f).clone() }))
}

fn plus1(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    plus_r(t, true)
}

fn plus2(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    plus_r(t, false)
}

/// A spawn meeting its server: the server is copied once, lifted, and the
/// remaining copy keeps serving through a `cut#`.
fn spawn(t: &ProofTerm, sharp: bool) -> Option<ProofTerm> {
    let ex = exp(t)?;
    if ex.sharp != sharp {
        return None;
    }
    let (x2, w, body) = match ex.e {
        FlatBang(x2, w, body) if !sharp => (x2, w, body),
        FlatSharp(x2, w, body) if sharp => (x2, w, body),
        _ => return None,
    };
    if x2 != ex.x || free(ex.d, w) {
        return None;
    }
    let copy = lift_unchecked(ex.d).substitute(ex.y, w);
    let rest = if sharp { (**body).clone() } else { lift_unchecked(body) };
    Some(c(w, copy, cs(ex.x, ex.y, ex.d.clone(), rest)))
}

fn spawn_bang(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    spawn(t, false)
}

fn spawn_sharp(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    spawn(t, true)
}

// ---- shift ----

fn promote(t: &ProofTerm, sharp: bool) -> Option<ProofTerm> {
    let Cut(x, l, r) = t else { return None };
    let BangR(x1, y, xs, d) = &**l else { return None };
    let (x2, e) = match &**r {
        BangLBang(x2, e) if !sharp => (x2, e),
        BangLSharp(x2, e) if sharp => (x2, e),
        _ => return None,
    };
    if x1 != x || x2 != x {
        return None;
    }
    let mut out = mk_exp(sharp, x, y, (**d).clone(), (**e).clone());
    for z in xs.iter().rev() {
        out = if sharp { BangLSharp(z.clone(), bx(out)) } else { BangLBang(z.clone(), bx(out)) };
    }
    Some(out)
}

fn promote_bang(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    promote(t, false)
}

fn promote_sharp(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    promote(t, true)
}

// ---- structural conversions ----

fn cut_cut1(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let Cut(x, d, r) = t else { return None };
    let Cut(y, e, f) = &**r else { return None };
    if free(f, x) {
        return None;
    }
    Some(c(y, c(x, (**d).clone(), (**e).clone()), (**f).clone()))
}

fn cut_cut1_rev(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let Cut(y, l, f) = t else { return None };
    let Cut(x, d, e) = &**l else { return None };
    if free(d, y) {
        return None;
    }
    Some(c(x, (**d).clone(), c(y, (**e).clone(), (**f).clone())))
}

fn cut_cut2(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let Cut(x, d, r) = t else { return None };
    let Cut(y, e, f) = &**r else { return None };
    if free(e, x) {
        return None;
    }
    Some(c(y, (**e).clone(), c(x, (**d).clone(), (**f).clone())))
}

fn cut_cut2_rev(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let Cut(y, e, r) = t else { return None };
    let Cut(x, d, f) = &**r else { return None };
    if free(d, y) {
        return None;
    }
    Some(c(x, (**d).clone(), c(y, (**e).clone(), (**f).clone())))
}

/// `Cut(x, D, K(y, E, F)) ≡ K(y, E, Cut(x, D, F))` for an exponential `K`.
fn cut_exp_right(t: &ProofTerm, k: Kut) -> Option<ProofTerm> {
    let Cut(x, d, r) = t else { return None };
    let (y, z, e, f) = kut(k, r)?;
    if free(e, x) {
        return None;
    }
    Some(mk_kut(k, y, z, e.clone(), c(x, (**d).clone(), f.clone())))
}

fn cut_exp_right_rev(t: &ProofTerm, k: Kut) -> Option<ProofTerm> {
    let (y, z, e, r) = kut(k, t)?;
    let Cut(x, d, f) = r else { return None };
    if free(d, y) {
        return None;
    }
    Some(c(x, (**d).clone(), mk_kut(k, y, z, e.clone(), (**f).clone())))
}

/// `Cut(x, K(y, D, E), F) ≡ K(y, D, Cut(x, E, F))` for an exponential `K`.
fn cut_exp_left(t: &ProofTerm, k: Kut) -> Option<ProofTerm> {
    let Cut(x, l, f) = t else { return None };
    let (y, z, d, e) = kut(k, l)?;
    if free(d, x) {
        return None;
    }
    Some(mk_kut(k, y, z, d.clone(), c(x, e.clone(), (**f).clone())))
}

fn cut_exp_left_rev(t: &ProofTerm, k: Kut) -> Option<ProofTerm> {
    let (y, z, d, r) = kut(k, t)?;
    let Cut(x, e, f) = r else { return None };
    if free(f, y) {
        return None;
    }
    Some(c(x, mk_kut(k, y, z, d.clone(), (**e).clone()), (**f).clone()))
}

macro_rules! flavoured {
    ($name:ident, $inner:ident, $k:expr) => {
        fn $name(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
            $inner(t, $k)
        }
    };
}

flavoured!(cut_cutb, cut_exp_right, Kut::Bang);
flavoured!(cut_cutb_rev, cut_exp_right_rev, Kut::Bang);
flavoured!(cut_cuts, cut_exp_right, Kut::Sharp);
flavoured!(cut_cuts_rev, cut_exp_right_rev, Kut::Sharp);
flavoured!(cutb_cut, cut_exp_left, Kut::Bang);
flavoured!(cutb_cut_rev, cut_exp_left_rev, Kut::Bang);
flavoured!(cuts_cut, cut_exp_left, Kut::Sharp);
flavoured!(cuts_cut_rev, cut_exp_left_rev, Kut::Sharp);

fn unit(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let Cut(x, l, r) = t else { return None };
    let (OneR(x1), OneL(x2, d)) = (&**l, &**r) else { return None };
    if x1 != x || x2 != x || free(d, x) {
        return None;
    }
    Some((**d).clone())
}

fn unit_rev(t: &ProofTerm, fresh: &mut Fresh) -> Option<ProofTerm> {
    let u = fresh.name(&Name::new("u"));
    Some(c(&u, OneR(u.clone()), OneL(u.clone(), bx(t.clone()))))
}

// ---- strong bisimilarities ----

/// Two exponential cuts serve the same thing, up to renaming.
fn same_server(a: (&Name, &Name, &ProofTerm), b: (&Name, &Name, &ProofTerm)) -> bool {
    let probe = |(x, y, d): (&Name, &Name, &ProofTerm)| cs(x, y, d.clone(), OneR(x.clone()));
    probe(a).alpha_eq(&probe(b))
}

fn dup_cut(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let CutSharp(x, z, d, r) = t else { return None };
    let Cut(y, e, f) = &**r else { return None };
    Some(c(y, cs(x, z, (**d).clone(), (**e).clone()), cs(x, z, (**d).clone(), (**f).clone())))
}

fn dup_cut_rev(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let Cut(y, l, r) = t else { return None };
    let (CutSharp(x1, z1, d1, e), CutSharp(x2, z2, d2, f)) = (&**l, &**r) else { return None };
    if !same_server((x1, z1, d1), (x2, z2, d2)) || free(d1, y) {
        return None;
    }
    Some(cs(x1, z1, (**d1).clone(), c(y, (**e).clone(), f.substitute(x2, x1))))
}

fn dup_cuts(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let CutSharp(x, z, d, r) = t else { return None };
    let CutSharp(y, w, e, f) = &**r else { return None };
    let inner = cs(x, z, (**d).clone(), (**f).clone());
    Some(cs(x, z, (**d).clone(), cs(y, w, (**e).clone(), inner)))
}

fn dup_cuts_rev(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let CutSharp(x, z, d, r) = t else { return None };
    let CutSharp(y, w, e, rr) = &**r else { return None };
    let CutSharp(x2, z2, d2, f) = &**rr else { return None };
    if !same_server((x, z, d), (x2, z2, d2)) {
        return None;
    }
    Some(cs(x, z, (**d).clone(), cs(y, w, (**e).clone(), f.substitute(x2, x))))
}

/// `K1(x, D, K2(y, E, F)) ≡ K2(y, E, K1(x, D, F))` for exponential cuts.
fn swap(t: &ProofTerm, outer: Kut, inner: Kut) -> Option<ProofTerm> {
    let (x, z, d, r) = kut(outer, t)?;
    let (y, w, e, f) = kut(inner, r)?;
    if free(e, x) || free(d, y) {
        return None;
    }
    Some(mk_kut(inner, y, w, e.clone(), mk_kut(outer, x, z, d.clone(), f.clone())))
}

flavoured!(cuts_cutb, swap_sb, ());
flavoured!(cuts_cutb_rev, swap_bs, ());
flavoured!(cutb_cutb2, swap_bb, ());
flavoured!(cutb_cuts, swap_bs, ());
flavoured!(cutb_cuts_rev, swap_sb, ());
flavoured!(cuts_cuts0, swap_ss, ());

fn swap_sb(t: &ProofTerm, _: ()) -> Option<ProofTerm> {
    swap(t, Kut::Sharp, Kut::Bang)
}

fn swap_bs(t: &ProofTerm, _: ()) -> Option<ProofTerm> {
    swap(t, Kut::Bang, Kut::Sharp)
}

fn swap_bb(t: &ProofTerm, _: ()) -> Option<ProofTerm> {
    swap(t, Kut::Bang, Kut::Bang)
}

fn swap_ss(t: &ProofTerm, _: ()) -> Option<ProofTerm> {
    swap(t, Kut::Sharp, Kut::Sharp)
}

fn cutb_lin1(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let CutBang(x, z, d, r) = t else { return None };
    let Cut(y, e, f) = &**r else { return None };
    if free(f, x) {
        return None;
    }
    Some(c(y, cb(x, z, (**d).clone(), (**e).clone()), (**f).clone()))
}

fn cutb_lin1_rev(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let Cut(y, l, f) = t else { return None };
    let CutBang(x, z, d, e) = &**l else { return None };
    if free(d, y) {
        return None;
    }
    Some(cb(x, z, (**d).clone(), c(y, (**e).clone(), (**f).clone())))
}

fn cutb_lin2(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let CutBang(x, z, d, r) = t else { return None };
    let Cut(y, e, f) = &**r else { return None };
    if free(e, x) {
        return None;
    }
    Some(c(y, (**e).clone(), cb(x, z, (**d).clone(), (**f).clone())))
}

fn cutb_lin2_rev(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let Cut(y, e, r) = t else { return None };
    let CutBang(x, z, d, f) = &**r else { return None };
    if free(d, y) {
        return None;
    }
    Some(cb(x, z, (**d).clone(), c(y, (**e).clone(), (**f).clone())))
}

/// `cut!` moving into the server of another `cut!`.
fn cutb_cutb1(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let CutBang(x, z, d, r) = t else { return None };
    let CutBang(y, w, e, f) = &**r else { return None };
    if free(f, x) {
        return None;
    }
    Some(cb(y, w, cb(x, z, (**d).clone(), (**e).clone()), (**f).clone()))
}

fn cutb_cutb1_rev(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let CutBang(y, w, l, f) = t else { return None };
    let CutBang(x, z, d, e) = &**l else { return None };
    if free(d, y) || free(d, w) {
        return None;
    }
    Some(cb(x, z, (**d).clone(), cb(y, w, (**e).clone(), (**f).clone())))
}

fn gc(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    let CutSharp(x, _, _, e) = t else { return None };
    if sll_process::free_names(&extract(e)).contains(x) || free(e, x) {
        return None;
    }
    Some((**e).clone())
}

// ---- commuting conversions ----

fn commute_right(t: &ProofTerm, k: Kut, h: Head) -> Option<ProofTerm> {
    let (x, z, d, r) = kut(k, t)?;
    let (h2, y, e) = head(r)?;
    if h2 != h || y == x {
        return None;
    }
    Some(mk_head(h, y, mk_kut(k, x, z, d.clone(), e.clone())))
}

fn commute_right_rev(t: &ProofTerm, k: Kut, h: Head) -> Option<ProofTerm> {
    let (h2, y, r) = head(t)?;
    let (x, z, d, e) = kut(k, r)?;
    if h2 != h || y == x || free(d, y) || z == Some(y) {
        return None;
    }
    Some(mk_kut(k, x, z, d.clone(), mk_head(h, y, e.clone())))
}

fn commute_left(t: &ProofTerm, h: Head) -> Option<ProofTerm> {
    let Cut(x, l, e) = t else { return None };
    let (h2, y, d) = head(l)?;
    if h2 != h || y == x {
        return None;
    }
    Some(mk_head(h, y, c(x, d.clone(), (**e).clone())))
}

fn commute_left_rev(t: &ProofTerm, h: Head) -> Option<ProofTerm> {
    let (h2, y, r) = head(t)?;
    let Cut(x, d, e) = r else { return None };
    if h2 != h || y == x || free(e, y) {
        return None;
    }
    Some(c(x, mk_head(h, y, (**d).clone()), (**e).clone()))
}

macro_rules! commuting {
    ($($fwd:ident $rev:ident => $k:expr, $h:expr;)*) => {
        $(
            fn $fwd(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
                commute_right(t, $k, $h)
            }
            fn $rev(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
                commute_right_rev(t, $k, $h)
            }
        )*
    };
}

commuting! {
    cut_one cut_one_rev => Kut::Lin, Head::One;
    cut_bl cut_bl_rev => Kut::Lin, Head::Bang;
    cut_sl cut_sl_rev => Kut::Lin, Head::Sharp;
    cutb_one cutb_one_rev => Kut::Bang, Head::One;
    cutb_bl cutb_bl_rev => Kut::Bang, Head::Bang;
    cutb_sl cutb_sl_rev => Kut::Bang, Head::Sharp;
    cuts_one cuts_one_rev => Kut::Sharp, Head::One;
    cuts_bl cuts_bl_rev => Kut::Sharp, Head::Bang;
    cuts_sl cuts_sl_rev => Kut::Sharp, Head::Sharp;
}

fn one_cut(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    commute_left(t, Head::One)
}
fn one_cut_rev(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    commute_left_rev(t, Head::One)
}
fn bl_cut(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    commute_left(t, Head::Bang)
}
fn bl_cut_rev(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    commute_left_rev(t, Head::Bang)
}
fn sl_cut(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    commute_left(t, Head::Sharp)
}
fn sl_cut_rev(t: &ProofTerm, _: &mut Fresh) -> Option<ProofTerm> {
    commute_left_rev(t, Head::Sharp)
}

const fn comp(name: &'static str, f: RuleFn) -> Rule {
    Rule { name, kind: StepKind::Computational, group: None, forward: f, reverse: None }
}

const fn shift(name: &'static str, f: RuleFn) -> Rule {
    Rule { name, kind: StepKind::Shift, group: None, forward: f, reverse: None }
}

const fn eqv(name: &'static str, g: Group, f: RuleFn, r: Option<RuleFn>) -> Rule {
    Rule { name, kind: StepKind::Equivalence, group: Some(g), forward: f, reverse: r }
}

use Group::{Bisimilarity as Bi, Commuting as Co, Structural as St};

pub static RULES: &[Rule] = &[
    comp("(cut/⊗R/⊗L)", tensor),
    comp("(cut/⊸L/⊸R)", lolli),
    comp("(cut/&R/&L₁)", with1),
    comp("(cut/&R/&L₂)", with2),
    comp("(cut/⊕R₁/⊕L)", plus1),
    comp("(cut/⊕R₂/⊕L)", plus2),
    comp("(cut!/−/♭!)", spawn_bang),
    comp("(cut#/−/♭#)", spawn_sharp),
    shift("(cut/!R/!L_!)", promote_bang),
    shift("(cut/!R/!L_#)", promote_sharp),
    eqv("(cut/−/cut₁)", St, cut_cut1, Some(cut_cut1_rev)),
    eqv("(cut/−/cut₂)", St, cut_cut2, Some(cut_cut2_rev)),
    eqv("(cut/−/cut!)", St, cut_cutb, Some(cut_cutb_rev)),
    eqv("(cut/cut!/−)", St, cutb_cut, Some(cutb_cut_rev)),
    eqv("(cut/−/cut#)", St, cut_cuts, Some(cut_cuts_rev)),
    eqv("(cut/cut#/−)", St, cuts_cut, Some(cuts_cut_rev)),
    eqv("(cut/1R/1L)", St, unit, Some(unit_rev)),
    eqv("(cut#/−/cut)", Bi, dup_cut, Some(dup_cut_rev)),
    eqv("(cut#/−/cut#)", Bi, dup_cuts, Some(dup_cuts_rev)),
    eqv("(cut#/−/cut!)", Bi, cuts_cutb, Some(cuts_cutb_rev)),
    eqv("(cut!/−/cut₁)", Bi, cutb_lin1, Some(cutb_lin1_rev)),
    eqv("(cut!/−/cut₂)", Bi, cutb_lin2, Some(cutb_lin2_rev)),
    eqv("(cut!/−/cut!)₁", Bi, cutb_cutb1, Some(cutb_cutb1_rev)),
    eqv("(cut!/−/cut!)₂", Bi, cutb_cutb2, Some(cutb_cutb2)),
    eqv("(cut!/−/cut#)", Bi, cutb_cuts, Some(cutb_cuts_rev)),
    eqv("(cut#/−/cut#)₀", Bi, cuts_cuts0, Some(cuts_cuts0)),
    eqv("(cut#/−/−₀)", Bi, gc, None),
    eqv("(cut/−/1L)", Co, cut_one, Some(cut_one_rev)),
    eqv("(cut/−/!L_!)", Co, cut_bl, Some(cut_bl_rev)),
    eqv("(cut/−/!L_#)", Co, cut_sl, Some(cut_sl_rev)),
    eqv("(cut/1L/−)", Co, one_cut, Some(one_cut_rev)),
    eqv("(cut/!L_!/−)", Co, bl_cut, Some(bl_cut_rev)),
    eqv("(cut/!L_#/−)", Co, sl_cut, Some(sl_cut_rev)),
    eqv("(cut!/−/1L)", Co, cutb_one, Some(cutb_one_rev)),
    eqv("(cut!/−/!L_!)", Co, cutb_bl, Some(cutb_bl_rev)),
    eqv("(cut!/−/!L_#)", Co, cutb_sl, Some(cutb_sl_rev)),
    eqv("(cut#/−/1L)", Co, cuts_one, Some(cuts_one_rev)),
    eqv("(cut#/−/!L_!)", Co, cuts_bl, Some(cuts_bl_rev)),
    eqv("(cut#/−/!L_#)", Co, cuts_sl, Some(cuts_sl_rev)),
];

pub fn rule(name: &str) -> Option<&'static Rule> {
    RULES.iter().find(|r| r.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sll_proof::parse_term;

    fn t(s: &str) -> ProofTerm {
        parse_term(s).unwrap()
    }

    fn fire(name: &str, reversed: bool, s: &str) -> Option<ProofTerm> {
        let d = t(s);
        rule(name).unwrap().apply(&d, reversed, &mut Fresh::for_term(&d))
    }

    #[test]
    fn tensor_row() {
        let got = fire("(cut/⊗R/⊗L)", false, "(cut x (tensR x y (1R y) (1R x)) (tensL x v (1L v (1L x (1R z)))))");
        let want = t("(cut y (1R y) (cut x (1R x) (1L y (1L x (1R z)))))");
        assert!(got.unwrap().alpha_eq(&want));
    }

    #[test]
    fn with_row() {
        let got = fire("(cut/&R/&L₁)", false, "(cut x (withR x (1R x) (1R x)) (withL1 x 1 (1L x (1R z))))");
        assert_eq!(got.unwrap(), t("(cut x (1R x) (1L x (1R z)))"));
    }

    #[test]
    fn promotion_wraps_auxiliaries() {
        let got = fire("(cut/!R/!L_!)", false, "(cut x (bangR x y (a) (flat! a u (1L u (1R y)))) (bangL! x (1R z)))");
        assert_eq!(got.unwrap(), t("(bangL! a (cut! x y (flat! a u (1L u (1R y))) (1R z)))"));
        let got = fire("(cut/!R/!L_!)", false, "(cut x (bangR x y () (1R y)) (bangL! x (1R z)))");
        assert_eq!(got.unwrap(), t("(cut! x y (1R y) (1R z))"));
    }

    #[test]
    fn structural_rows_respect_scope() {
        let s = "(cut x (1R x) (cut y (1L x (1R y)) (1L y (1R z))))";
        let got = fire("(cut/−/cut₁)", false, s).unwrap();
        assert_eq!(got, t("(cut y (cut x (1R x) (1L x (1R y))) (1L y (1R z)))"));
        assert!(fire("(cut/−/cut₂)", false, s).is_none());
        let back = rule("(cut/−/cut₁)").unwrap().apply(&got, true, &mut Fresh::for_term(&got)).unwrap();
        assert_eq!(back, t(s));
    }

    #[test]
    fn capture_is_avoided() {
        // The inner binder `x` collides with a free `x` of the outer left premise.
        let s = "(cut y (1L x (1R y)) (cut x (1R x) (1L x (1L y (1R z)))))";
        let got = fire("(cut/−/cut₂)", false, s).unwrap();
        assert!(got.free_names().contains(&Name::new("x")));
        assert_eq!(got.free_names(), t(s).free_names());
    }

    #[test]
    fn duplication_and_merge() {
        let s = "(cut# s y (1R y) (cut c (flat# s a (1L a (1R c))) (1L c (flat# s b (1L b (1R z))))))";
        let dup = fire("(cut#/−/cut)", false, s).unwrap();
        assert!(matches!(&dup, Cut(..)));
        let back = rule("(cut#/−/cut)").unwrap().apply(&dup, true, &mut Fresh::for_term(&dup)).unwrap();
        assert!(back.alpha_eq(&t(s)));
    }

    #[test]
    fn unused_server_is_dropped() {
        assert_eq!(fire("(cut#/−/−₀)", false, "(cut# s y (1R y) (1R z))").unwrap(), t("(1R z)"));
        assert!(fire("(cut#/−/−₀)", false, "(cut# s y (1R y) (flat# s a (1L a (1R z))))").is_none());
    }

    #[test]
    fn table_is_complete() {
        use StepKind::*;
        let count = |k| RULES.iter().filter(|r| r.kind == k).count();
        assert_eq!((count(Computational), count(Shift), count(Equivalence)), (8, 2, 29));
        let names: BTreeSet<_> = RULES.iter().map(|r| r.name).collect();
        assert_eq!(names.len(), RULES.len());
    }
}
