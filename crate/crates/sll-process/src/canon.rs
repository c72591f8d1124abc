//! Normal forms for structural congruence.
//!
//! After renaming every binder apart, restrictions float to the top of their
//! parallel context, so a process is a set of restricted names over a multiset
//! of prefixed components. Comparing two such soups is a small graph
//! isomorphism problem. Binders are coloured by iterated refinement on the
//! components they occur in; connected pieces are canonicalised separately, and
//! the rare fully symmetric case is broken by trying each candidate and keeping
//! the least result. Keys are strings in which free names appear literally and
//! bound names only through their structural role, so two processes get the same
//! key exactly when they are congruent.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::name::Name;
use crate::process::Process::*;
use crate::process::*;

/// Canonical representative of the congruence class of `p`.
pub fn canonical_form(p: &Process) -> Process {
    let mut counter = 0usize;
    let u = uniquify(p, &BTreeMap::new(), &mut counter);
    let (_, c) = memoised(|| canon(&u, &Ctx::root(), 0));
    let free = p.free_names();
    final_names(&c, &free)
}

/// The canonical key alone. Equal keys iff congruent processes.
pub fn congruence_key(p: &Process) -> String {
    let mut counter = 0usize;
    let u = uniquify(p, &BTreeMap::new(), &mut counter);
    memoised(|| canon(&u, &Ctx::root(), 0)).0
}

type MemoKey = (Process, usize, Vec<(Name, String)>);

thread_local! {
    /// Keys of components already canonicalised under the same labelling of
    /// their free names, for the duration of one top-level call.
    static MEMO: std::cell::RefCell<HashMap<MemoKey, (String, Process)>> = std::cell::RefCell::new(HashMap::new());
}

fn memoised<T>(f: impl FnOnce() -> T) -> T {
    let out = f();
    MEMO.with(|m| m.borrow_mut().clear());
    out
}

pub fn struct_congruent(p: &Process, q: &Process) -> bool {
    p.free_names() == q.free_names() && congruence_key(p) == congruence_key(q)
}

/// Flatten a process into its restricted names and prefixed components,
/// without any renaming. Binders are assumed distinct from each other and from
/// free names (true for canonical forms).
pub fn soup_of(p: &Process) -> (Vec<Name>, Vec<Process>) {
    let mut bs = Vec::new();
    let mut cs = Vec::new();
    flatten(p, &mut bs, &mut cs);
    (bs, cs)
}

/// Hoist top-level restrictions, keeping the given names where possible.
/// A restriction is renamed only if it clashes with a free name or with an
/// already hoisted one.
pub fn hoist(p: &Process) -> (Vec<Name>, Vec<Process>) {
    let mut taken = p.all_names();
    let mut seen = p.free_names();
    let mut bs = Vec::new();
    let mut cs = Vec::new();
    hoist_rec(p, &mut taken, &mut seen, &mut bs, &mut cs);
    (bs, cs)
}

fn hoist_rec(
    p: &Process,
    taken: &mut BTreeSet<Name>,
    seen: &mut BTreeSet<Name>,
    bs: &mut Vec<Name>,
    cs: &mut Vec<Process>,
) {
    match p {
        Nil => {}
        Par(a, b) => {
            hoist_rec(a, taken, seen, bs, cs);
            hoist_rec(b, taken, seen, bs, cs);
        }
        New(x, a) => {
            if seen.contains(x) {
                let f = crate::name::fresh_avoiding(x, taken);
                taken.insert(f.clone());
                let a2 = a.substitute(x, &f);
                seen.insert(f.clone());
                bs.push(f);
                hoist_rec(&a2, taken, seen, bs, cs);
            } else {
                seen.insert(x.clone());
                bs.push(x.clone());
                hoist_rec(a, taken, seen, bs, cs);
            }
        }
        other => cs.push(other.clone()),
    }
}

fn flatten(p: &Process, bs: &mut Vec<Name>, cs: &mut Vec<Process>) {
    match p {
        Nil => {}
        Par(a, b) => {
            flatten(a, bs, cs);
            flatten(b, bs, cs);
        }
        New(x, a) => {
            bs.push(x.clone());
            flatten(a, bs, cs);
        }
        other => cs.push(other.clone()),
    }
}

fn internal(k: &mut usize) -> Name {
    *k += 1;
    Name::new(&format!("%{k}"))
}

/// Rename every binder to a distinct internal name (`%k` cannot be written in
/// the text syntax, so it never clashes with a free name).
fn uniquify(p: &Process, env: &BTreeMap<Name, Name>, k: &mut usize) -> Process {
    let r = |x: &Name| env.get(x).cloned().unwrap_or_else(|| x.clone());
    let bind = |y: &Name, k: &mut usize| {
        let f = internal(k);
        let mut e = env.clone();
        e.insert(y.clone(), f.clone());
        (f, e)
    };
    match p {
        Nil => Nil,
        Par(a, b) => par(uniquify(a, env, k), uniquify(b, env, k)),
        New(y, a) => {
            let (f, e) = bind(y, k);
            New(f, Box::new(uniquify(a, &e, k)))
        }
        In(x, y, a) => {
            let x = r(x);
            let (f, e) = bind(y, k);
            In(x, f, Box::new(uniquify(a, &e, k)))
        }
        RepIn(x, y, a) => {
            let x = r(x);
            let (f, e) = bind(y, k);
            RepIn(x, f, Box::new(uniquify(a, &e, k)))
        }
        Out(x, y, a) => Out(r(x), r(y), Box::new(uniquify(a, env, k))),
        SelL(x, a) => SelL(r(x), Box::new(uniquify(a, env, k))),
        SelR(x, a) => SelR(r(x), Box::new(uniquify(a, env, k))),
        Case(x, a, b) => Case(r(x), Box::new(uniquify(a, env, k)), Box::new(uniquify(b, env, k))),
    }
}

/// Labels for names bound further out. Free names print as themselves.
struct Ctx<'a> {
    parent: Option<&'a Ctx<'a>>,
    map: HashMap<Name, String>,
}

impl<'a> Ctx<'a> {
    fn root() -> Ctx<'static> {
        Ctx { parent: None, map: HashMap::new() }
    }

    fn child(&'a self, map: HashMap<Name, String>) -> Ctx<'a> {
        Ctx { parent: Some(self), map }
    }

    fn label(&self, x: &Name) -> String {
        let mut c = Some(self);
        while let Some(cx) = c {
            if let Some(l) = cx.map.get(x) {
                return l.clone();
            }
            c = cx.parent;
        }
        format!("'{x}")
    }
}

struct Piece {
    key: String,
    binders: Vec<Name>,
    comps: Vec<Process>,
}

fn canon(p: &Process, ctx: &Ctx, depth: usize) -> (String, Process) {
    let mut bs = Vec::new();
    let mut cs = Vec::new();
    flatten(p, &mut bs, &mut cs);
    let piece = soup(bs, cs, ctx, depth, 0);
    let proc_ = new_all(piece.binders, par_all(piece.comps));
    (piece.key, proc_)
}

/// Canonical key and form of one prefixed component.
fn prefix(c: &Process, ctx: &Ctx, depth: usize) -> (String, Process) {
    let labels: Vec<(Name, String)> = c
        .free_names()
        .into_iter()
        .map(|x| {
            let l = ctx.label(&x);
            (x, l)
        })
        .collect();
    let key = (c.clone(), depth, labels);
    if let Some(hit) = MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }
    let out = prefix_uncached(c, ctx, depth);
    MEMO.with(|m| m.borrow_mut().insert(key, out.clone()));
    out
}

fn prefix_uncached(c: &Process, ctx: &Ctx, depth: usize) -> (String, Process) {
    let l = |x: &Name| ctx.label(x);
    match c {
        In(x, y, a) | RepIn(x, y, a) => {
            let tag = if matches!(c, In(..)) { 'i' } else { 'r' };
            let inner = ctx.child(HashMap::from([(y.clone(), format!("v{depth}"))]));
            let (k, b) = canon(a, &inner, depth + 1);
            let key = format!("{tag}({}){k}", l(x));
            let p = if tag == 'i' {
                In(x.clone(), y.clone(), Box::new(b))
            } else {
                RepIn(x.clone(), y.clone(), Box::new(b))
            };
            (key, p)
        }
        Out(x, y, a) => {
            let (k, b) = canon(a, ctx, depth + 1);
            (format!("o({},{}){k}", l(x), l(y)), Out(x.clone(), y.clone(), Box::new(b)))
        }
        SelL(x, a) => {
            let (k, b) = canon(a, ctx, depth + 1);
            (format!("l({}){k}", l(x)), SelL(x.clone(), Box::new(b)))
        }
        SelR(x, a) => {
            let (k, b) = canon(a, ctx, depth + 1);
            (format!("R({}){k}", l(x)), SelR(x.clone(), Box::new(b)))
        }
        Case(x, a, b) => {
            let (k1, p1) = canon(a, ctx, depth + 1);
            let (k2, p2) = canon(b, ctx, depth + 1);
            (format!("c({}){k1}{k2}", l(x)), Case(x.clone(), Box::new(p1), Box::new(p2)))
        }
        _ => unreachable!("soup components are prefixes"),
    }
}

/// Split into connected pieces (components linked by shared binders), drop
/// unused binders, canonicalise each piece and sort.
fn soup(bs: Vec<Name>, cs: Vec<Process>, ctx: &Ctx, depth: usize, level: usize) -> Piece {
    let bset: BTreeSet<Name> = bs.iter().cloned().collect();
    let uses: Vec<Vec<Name>> =
        cs.iter().map(|c| c.free_names().into_iter().filter(|n| bset.contains(n)).collect()).collect();

    // Union-find over components through binders.
    let mut parent: Vec<usize> = (0..cs.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut owner: HashMap<Name, usize> = HashMap::new();
    for (i, us) in uses.iter().enumerate() {
        for b in us {
            if let Some(&j) = owner.get(b) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            } else {
                owner.insert(b.clone(), i);
            }
        }
    }
    let mut groups: BTreeMap<usize, (Vec<Name>, Vec<Process>)> = BTreeMap::new();
    for (i, c) in cs.into_iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().1.push(c);
    }
    for b in bs {
        if let Some(&i) = owner.get(&b) {
            let r = find(&mut parent, i);
            groups.get_mut(&r).unwrap().0.push(b);
        }
    }

    let mut pieces: Vec<Piece> = groups.into_values().map(|(gb, gc)| group(gb, gc, ctx, depth, level)).collect();
    pieces.sort_by(|a, b| a.key.cmp(&b.key));

    let mut key = String::from("{");
    let mut binders = Vec::new();
    let mut comps = Vec::new();
    for p in pieces {
        key.push_str(&p.key);
        binders.extend(p.binders);
        comps.extend(p.comps);
    }
    key.push('}');
    Piece { key, binders, comps }
}

/// A connected piece.
fn group(bs: Vec<Name>, cs: Vec<Process>, ctx: &Ctx, depth: usize, level: usize) -> Piece {
    if bs.is_empty() {
        let mut keyed: Vec<(String, Process)> = cs.iter().map(|c| prefix(c, ctx, depth)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let key = keyed.iter().map(|(k, _)| k.as_str()).collect::<Vec<_>>().join(";");
        return Piece { key: format!("[{key}]"), binders: vec![], comps: keyed.into_iter().map(|x| x.1).collect() };
    }
    let uses: Vec<BTreeSet<Name>> = cs.iter().map(|c| c.free_names()).collect();
    let colors = refine(level, &bs, &cs, &uses, ctx, depth, vec![0; bs.len()]);
    if has_singleton(&colors) {
        return split(bs, cs, &colors, ctx, depth, level);
    }
    // Everything is tied: try each member of the least colour class.
    let least = *colors.iter().min().unwrap();
    let mut best: Option<Piece> = None;
    for (i, _) in colors.iter().enumerate().filter(|(_, &c)| c == least) {
        let seeded: Vec<usize> =
            rank(&colors.iter().enumerate().map(|(j, &c)| (c, usize::from(j != i))).collect::<Vec<_>>());
        let refined = refine(level, &bs, &cs, &uses, ctx, depth, seeded);
        let cand = split(bs.clone(), cs.clone(), &refined, ctx, depth, level);
        if best.as_ref().is_none_or(|b| cand.key < b.key) {
            best = Some(cand);
        }
    }
    best.unwrap()
}

fn has_singleton(colors: &[usize]) -> bool {
    let mut count: HashMap<usize, usize> = HashMap::new();
    for &c in colors {
        *count.entry(c).or_default() += 1;
    }
    count.values().any(|&n| n == 1)
}

/// Dense ranks of a list of sortable signatures.
fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(s).unwrap()).collect()
}

fn distinct(colors: &[usize]) -> usize {
    colors.iter().collect::<BTreeSet<_>>().len()
}

/// Iterated colour refinement. Each binder's signature is, for every
/// component it occurs in, that component's key with the binder marked and
/// the other local binders anonymous, together with the colours of those
/// other binders. The marked keys are computed once; only colours iterate.
#[allow(clippy::too_many_arguments)]
fn refine(
    level: usize,
    bs: &[Name],
    cs: &[Process],
    uses: &[BTreeSet<Name>],
    ctx: &Ctx,
    depth: usize,
    mut colors: Vec<usize>,
) -> Vec<usize> {
    let index: HashMap<&Name, usize> = bs.iter().enumerate().map(|(i, b)| (b, i)).collect();
    // For each binder: (marked key, indices of the other local binders) per component.
    let occurrences: Vec<Vec<(String, Vec<usize>)>> = bs
        .iter()
        .map(|b| {
            let mut map: HashMap<Name, String> = bs.iter().map(|n| (n.clone(), format!("?{depth}.{level}"))).collect();
            map.insert(b.clone(), format!("*{depth}.{level}"));
            let marked = ctx.child(map);
            cs.iter()
                .zip(uses)
                .filter(|(_, u)| u.contains(b))
                .map(|(c, u)| {
                    let others = u.iter().filter(|n| *n != b).filter_map(|n| index.get(n).copied()).collect();
                    (prefix(c, &marked, depth).0, others)
                })
                .collect()
        })
        .collect();
    loop {
        let before = distinct(&colors);
        let sigs: Vec<(usize, Vec<(&str, Vec<usize>)>)> = occurrences
            .iter()
            .enumerate()
            .map(|(i, occ)| {
                let mut ks: Vec<(&str, Vec<usize>)> = occ
                    .iter()
                    .map(|(k, others)| {
                        let mut cols: Vec<usize> = others.iter().map(|&j| colors[j]).collect();
                        cols.sort();
                        (k.as_str(), cols)
                    })
                    .collect();
                ks.sort();
                (colors[i], ks)
            })
            .collect();
        colors = rank(&sigs);
        if distinct(&colors) == before {
            return colors;
        }
    }
}

/// Fix the binders whose colour is unique and canonicalise the rest, which may
/// now fall apart into smaller pieces.
fn split(bs: Vec<Name>, cs: Vec<Process>, colors: &[usize], ctx: &Ctx, depth: usize, level: usize) -> Piece {
    let mut count: HashMap<usize, usize> = HashMap::new();
    for &c in colors {
        *count.entry(c).or_default() += 1;
    }
    let mut fixed: Vec<(usize, Name)> = Vec::new();
    let mut rest: Vec<Name> = Vec::new();
    for (b, &c) in bs.iter().zip(colors) {
        if count[&c] == 1 {
            fixed.push((c, b.clone()));
        } else {
            rest.push(b.clone());
        }
    }
    fixed.sort();
    let map: HashMap<Name, String> = fixed.iter().map(|(c, b)| (b.clone(), format!("b{depth}.{level}.{c}"))).collect();
    let inner = ctx.child(map);
    let sub = soup(rest, cs, &inner, depth, level + 1);
    let mut binders: Vec<Name> = fixed.iter().map(|(_, b)| b.clone()).collect();
    binders.extend(sub.binders);
    Piece { key: format!("<{}{}>", fixed.len(), sub.key), binders, comps: sub.comps }
}

/// Rename binders to `@0, @1, ...` in traversal order, skipping free names.
fn final_names(p: &Process, free: &BTreeSet<Name>) -> Process {
    let mut k = 0usize;
    let mut next = || loop {
        let n = Name::new(&format!("@{k}"));
        k += 1;
        if !free.contains(&n) {
            return n;
        }
    };
    go(p, &BTreeMap::new(), &mut next)
}

fn go(p: &Process, env: &BTreeMap<Name, Name>, next: &mut impl FnMut() -> Name) -> Process {
    let r = |x: &Name| env.get(x).cloned().unwrap_or_else(|| x.clone());
    match p {
        Nil => Nil,
        Par(a, b) => {
            let a2 = go(a, env, next);
            par(a2, go(b, env, next))
        }
        New(y, a) => {
            let f = next();
            let mut e = env.clone();
            e.insert(y.clone(), f.clone());
            New(f, Box::new(go(a, &e, next)))
        }
        In(x, y, a) | RepIn(x, y, a) => {
            let x2 = r(x);
            let f = next();
            let mut e = env.clone();
            e.insert(y.clone(), f.clone());
            let body = Box::new(go(a, &e, next));
            if matches!(p, In(..)) {
                In(x2, f, body)
            } else {
                RepIn(x2, f, body)
            }
        }
        Out(x, y, a) => Out(r(x), r(y), Box::new(go(a, env, next))),
        SelL(x, a) => SelL(r(x), Box::new(go(a, env, next))),
        SelR(x, a) => SelR(r(x), Box::new(go(a, env, next))),
        Case(x, a, b) => {
            let a2 = go(a, env, next);
            Case(r(x), Box::new(a2), Box::new(go(b, env, next)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_process;

    fn p(s: &str) -> Process {
        parse_process(s).unwrap()
    }

    fn cong(a: &str, b: &str) -> bool {
        struct_congruent(&p(a), &p(b))
    }

    #[test]
    fn axioms() {
        assert!(cong("x!(y).0 | 0", "x!(y).0"));
        assert!(cong("x!(y).0 | a?(b).0", "a?(b).0 | x!(y).0"));
        assert!(cong("(a!(b).0 | c!(d).0) | e!(f).0", "a!(b).0 | (c!(d).0 | e!(f).0)"));
        assert!(cong("new x. 0", "0"));
        assert!(cong("new x. new y. x!(y).0", "new y. new x. x!(y).0"));
        assert!(cong("(new x. x!(a).0) | b!(c).0", "new x. (x!(a).0 | b!(c).0)"));
        assert!(cong("new x. x?(y). y!(x).0", "new u. u?(v). v!(u).0"));
    }

    #[test]
    fn distinctions() {
        assert!(!cong("x?(y).0", "x!(y).0"));
        assert!(!cong("new x. x!(a).0", "x!(a).0"));
        assert!(!cong("new x. (x!(a).0 | x!(a).0)", "(new x. x!(a).0) | new x. x!(a).0"));
        assert!(!cong("new x. new y. (x!(y).0 | y!(x).0)", "new x. new y. (x!(y).0 | x!(y).0)"));
        assert!(!cong("x.inl.0", "x.inr.0"));
    }

    #[test]
    fn bodies_are_normalised_too() {
        assert!(cong("a?(x). (x!(b).0 | 0)", "a?(z). z!(b).0"));
        assert!(cong("a?(x). new q. (q!(x).0 | c!(d).0)", "a?(x). (c!(d).0 | new r. r!(x).0)"));
    }

    #[test]
    fn symmetric_rings() {
        // Two 3-cycles versus one 6-cycle: refinement alone cannot tell them apart.
        let two =
            "new a. new b. new c. new d. new e. new f. (a!(b).0 | b!(c).0 | c!(a).0 | d!(e).0 | e!(f).0 | f!(d).0)";
        let six =
            "new a. new b. new c. new d. new e. new f. (a!(b).0 | b!(c).0 | c!(d).0 | d!(e).0 | e!(f).0 | f!(a).0)";
        assert!(!cong(two, six));
        let six2 =
            "new u. new v. new w. new x. new y. new z. (x!(y).0 | w!(x).0 | y!(z).0 | u!(v).0 | z!(u).0 | v!(w).0)";
        assert!(cong(six, six2));
    }

    #[test]
    fn idempotent_and_renamed() {
        let q = p("new x. (x?(y). y!(z).0 | new w. x!(w). w?(k).0) | 0");
        let c = canonical_form(&q);
        assert_eq!(canonical_form(&c), c);
        assert!(c.alpha_eq(&canonical_form(&c)));
        assert_eq!(c.free_names(), q.free_names());
    }

    #[test]
    fn canonical_names_avoid_free_ones() {
        let q = p("new x. x!(@0).0");
        let c = canonical_form(&q);
        assert_eq!(c.free_names(), q.free_names());
    }
}
