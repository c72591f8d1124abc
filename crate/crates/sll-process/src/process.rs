//! The process AST and its binding structure.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::name::{fresh_name, Name};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Process {
    Nil,
    Par(Box<Process>, Box<Process>),
    New(Name, Box<Process>),
    /// `x?(y). P`, binds `y`.
    In(Name, Name, Box<Process>),
    /// `x!(y). P`, `y` is free.
    Out(Name, Name, Box<Process>),
    /// `!x?(y). P`, binds `y`.
    RepIn(Name, Name, Box<Process>),
    SelL(Name, Box<Process>),
    SelR(Name, Box<Process>),
    Case(Name, Box<Process>, Box<Process>),
}

use Process::*;

// Constructors taking anything name-like.
pub fn nil() -> Process {
    Nil
}
pub fn par(p: Process, q: Process) -> Process {
    Par(Box::new(p), Box::new(q))
}
pub fn new(x: impl Into<Name>, p: Process) -> Process {
    New(x.into(), Box::new(p))
}
pub fn inp(x: impl Into<Name>, y: impl Into<Name>, p: Process) -> Process {
    In(x.into(), y.into(), Box::new(p))
}
pub fn out(x: impl Into<Name>, y: impl Into<Name>, p: Process) -> Process {
    Out(x.into(), y.into(), Box::new(p))
}
pub fn rep(x: impl Into<Name>, y: impl Into<Name>, p: Process) -> Process {
    RepIn(x.into(), y.into(), Box::new(p))
}
pub fn sel_l(x: impl Into<Name>, p: Process) -> Process {
    SelL(x.into(), Box::new(p))
}
pub fn sel_r(x: impl Into<Name>, p: Process) -> Process {
    SelR(x.into(), Box::new(p))
}
pub fn case(x: impl Into<Name>, p: Process, q: Process) -> Process {
    Case(x.into(), Box::new(p), Box::new(q))
}

/// Parallel composition of a list, left-nested; `0` when empty.
pub fn par_all(ps: impl IntoIterator<Item = Process>) -> Process {
    let mut it = ps.into_iter();
    match it.next() {
        None => Nil,
        Some(first) => it.fold(first, par),
    }
}

/// Wrap `p` in restrictions, first name outermost.
pub fn new_all(xs: impl IntoIterator<Item = Name>, p: Process) -> Process {
    let xs: Vec<Name> = xs.into_iter().collect();
    xs.into_iter().rev().fold(p, |acc, x| New(x, Box::new(acc)))
}

impl Process {
    /// Subject channel of a prefix form.
    pub fn subject(&self) -> Option<&Name> {
        match self {
            In(x, ..) | Out(x, ..) | RepIn(x, ..) | SelL(x, _) | SelR(x, _) | Case(x, ..) => Some(x),
            _ => None,
        }
    }

    pub fn is_prefix(&self) -> bool {
        self.subject().is_some()
    }

    pub fn free_names(&self) -> BTreeSet<Name> {
        let mut acc = BTreeSet::new();
        collect_free(self, &mut Vec::new(), &mut acc);
        acc
    }

    pub fn is_free(&self, x: &Name) -> bool {
        occurs_free(self, x)
    }

    /// Every name occurring in the process, bound or free.
    pub fn all_names(&self) -> BTreeSet<Name> {
        let mut acc = BTreeSet::new();
        self.walk_names(&mut |n| {
            acc.insert(n.clone());
        });
        acc
    }

    fn walk_names(&self, f: &mut impl FnMut(&Name)) {
        match self {
            Nil => {}
            Par(p, q) => {
                p.walk_names(f);
                q.walk_names(f);
            }
            New(x, p) => {
                f(x);
                p.walk_names(f);
            }
            In(x, y, p) | Out(x, y, p) | RepIn(x, y, p) => {
                f(x);
                f(y);
                p.walk_names(f);
            }
            SelL(x, p) | SelR(x, p) => {
                f(x);
                p.walk_names(f);
            }
            Case(x, p, q) => {
                f(x);
                p.walk_names(f);
                q.walk_names(f);
            }
        }
    }

    /// Process size: prefixes count one, `Case` counts one plus both branches.
    pub fn size(&self) -> u64 {
        match self {
            Nil => 0,
            Par(p, q) => p.size() + q.size(),
            New(_, p) => p.size(),
            In(_, _, p) | Out(_, _, p) | RepIn(_, _, p) | SelL(_, p) | SelR(_, p) => p.size() + 1,
            Case(_, p, q) => p.size() + q.size() + 1,
        }
    }

    /// Number of AST nodes.
    pub fn node_count(&self) -> u64 {
        1 + match self {
            Nil => 0,
            Par(p, q) | Case(_, p, q) => p.node_count() + q.node_count(),
            New(_, p) | In(_, _, p) | Out(_, _, p) | RepIn(_, _, p) | SelL(_, p) | SelR(_, p) => p.node_count(),
        }
    }

    /// Capture-avoiding substitution of `to` for free occurrences of `from`.
    pub fn substitute(&self, from: &Name, to: &Name) -> Process {
        if from == to {
            return self.clone();
        }
        let mut m = BTreeMap::new();
        m.insert(from.clone(), to.clone());
        self.rename(&m)
    }

    /// Simultaneous capture-avoiding renaming of free names.
    pub fn rename(&self, m: &BTreeMap<Name, Name>) -> Process {
        if m.is_empty() {
            return self.clone();
        }
        rename_rec(self, m)
    }

    /// α-equivalence.
    pub fn alpha_eq(&self, other: &Process) -> bool {
        alpha_rec(self, other, &mut Vec::new())
    }
}

fn lookup_bound<'a>(env: &'a [&'a Name], x: &Name) -> bool {
    env.contains(&x)
}

fn collect_free<'a>(p: &'a Process, env: &mut Vec<&'a Name>, acc: &mut BTreeSet<Name>) {
    let note = |x: &'a Name, env: &Vec<&'a Name>, acc: &mut BTreeSet<Name>| {
        if !lookup_bound(env, x) {
            acc.insert(x.clone());
        }
    };
    match p {
        Nil => {}
        Par(a, b) => {
            collect_free(a, env, acc);
            collect_free(b, env, acc);
        }
        New(x, a) => {
            env.push(x);
            collect_free(a, env, acc);
            env.pop();
        }
        In(x, y, a) | RepIn(x, y, a) => {
            note(x, env, acc);
            env.push(y);
            collect_free(a, env, acc);
            env.pop();
        }
        Out(x, y, a) => {
            note(x, env, acc);
            note(y, env, acc);
            collect_free(a, env, acc);
        }
        SelL(x, a) | SelR(x, a) => {
            note(x, env, acc);
            collect_free(a, env, acc);
        }
        Case(x, a, b) => {
            note(x, env, acc);
            collect_free(a, env, acc);
            collect_free(b, env, acc);
        }
    }
}

fn occurs_free(p: &Process, x: &Name) -> bool {
    match p {
        Nil => false,
        Par(a, b) => occurs_free(a, x) || occurs_free(b, x),
        New(y, a) => y != x && occurs_free(a, x),
        In(c, y, a) | RepIn(c, y, a) => c == x || (y != x && occurs_free(a, x)),
        Out(c, y, a) => c == x || y == x || occurs_free(a, x),
        SelL(c, a) | SelR(c, a) => c == x || occurs_free(a, x),
        Case(c, a, b) => c == x || occurs_free(a, x) || occurs_free(b, x),
    }
}

fn ren(m: &BTreeMap<Name, Name>, x: &Name) -> Name {
    m.get(x).cloned().unwrap_or_else(|| x.clone())
}

/// Handle a binder `y` scoping over `body`: drop it from the map, and rename it
/// if it would capture one of the incoming names.
fn under_binder(y: &Name, body: &Process, m: &BTreeMap<Name, Name>) -> (Name, Process) {
    let mut inner: BTreeMap<Name, Name> = m.clone();
    inner.remove(y);
    // Only entries whose source actually occurs free matter.
    inner.retain(|k, _| occurs_free(body, k));
    if inner.is_empty() {
        return (y.clone(), body.clone());
    }
    let captures = inner.values().any(|v| v == y);
    if !captures {
        return (y.clone(), rename_rec(body, &inner));
    }
    let fv = body.free_names();
    let fresh = fresh_name(y, |n| fv.contains(n) || inner.contains_key(n) || inner.values().any(|v| v == n));
    inner.insert(y.clone(), fresh.clone());
    (fresh, rename_rec(body, &inner))
}

fn rename_rec(p: &Process, m: &BTreeMap<Name, Name>) -> Process {
    match p {
        Nil => Nil,
        Par(a, b) => par(rename_rec(a, m), rename_rec(b, m)),
        New(y, a) => {
            let (y2, a2) = under_binder(y, a, m);
            New(y2, Box::new(a2))
        }
        In(x, y, a) => {
            let (y2, a2) = under_binder(y, a, m);
            In(ren(m, x), y2, Box::new(a2))
        }
        RepIn(x, y, a) => {
            let (y2, a2) = under_binder(y, a, m);
            RepIn(ren(m, x), y2, Box::new(a2))
        }
        Out(x, y, a) => Out(ren(m, x), ren(m, y), Box::new(rename_rec(a, m))),
        SelL(x, a) => SelL(ren(m, x), Box::new(rename_rec(a, m))),
        SelR(x, a) => SelR(ren(m, x), Box::new(rename_rec(a, m))),
        Case(x, a, b) => Case(ren(m, x), Box::new(rename_rec(a, m)), Box::new(rename_rec(b, m))),
    }
}

/// Compare names under a stack of paired binders.
fn name_eq(x: &Name, y: &Name, env: &[(Name, Name)]) -> bool {
    for (a, b) in env.iter().rev() {
        if a == x || b == y {
            return a == x && b == y;
        }
    }
    x == y
}

fn alpha_rec(p: &Process, q: &Process, env: &mut Vec<(Name, Name)>) -> bool {
    let bind = |env: &mut Vec<(Name, Name)>, a: &Name, b: &Name, pb: &Process, qb: &Process| {
        env.push((a.clone(), b.clone()));
        let r = alpha_rec(pb, qb, env);
        env.pop();
        r
    };
    match (p, q) {
        (Nil, Nil) => true,
        (Par(a1, b1), Par(a2, b2)) => alpha_rec(a1, a2, env) && alpha_rec(b1, b2, env),
        (New(x1, a1), New(x2, a2)) => bind(env, x1, x2, a1, a2),
        (In(c1, y1, a1), In(c2, y2, a2)) | (RepIn(c1, y1, a1), RepIn(c2, y2, a2)) => {
            name_eq(c1, c2, env) && bind(env, y1, y2, a1, a2)
        }
        (Out(c1, y1, a1), Out(c2, y2, a2)) => name_eq(c1, c2, env) && name_eq(y1, y2, env) && alpha_rec(a1, a2, env),
        (SelL(c1, a1), SelL(c2, a2)) | (SelR(c1, a1), SelR(c2, a2)) => name_eq(c1, c2, env) && alpha_rec(a1, a2, env),
        (Case(c1, a1, b1), Case(c2, a2, b2)) => {
            name_eq(c1, c2, env) && alpha_rec(a1, a2, env) && alpha_rec(b1, b2, env)
        }
        _ => false,
    }
}

// Printing: `|` is left-associative, so a right operand that is itself a
// parallel composition needs brackets, as does any parallel prefix body.
fn fmt_body(p: &Process, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if matches!(p, Par(..)) {
        write!(f, "({p})")
    } else {
        write!(f, "{p}")
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nil => f.write_str("0"),
            Par(a, b) => {
                write!(f, "{a} | ")?;
                fmt_body(b, f)
            }
            New(x, a) => {
                write!(f, "new {x}. ")?;
                fmt_body(a, f)
            }
            In(x, y, a) => {
                write!(f, "{x}?({y}). ")?;
                fmt_body(a, f)
            }
            Out(x, y, a) => {
                write!(f, "{x}!({y}). ")?;
                fmt_body(a, f)
            }
            RepIn(x, y, a) => {
                write!(f, "!{x}?({y}). ")?;
                fmt_body(a, f)
            }
            SelL(x, a) => {
                write!(f, "{x}.inl. ")?;
                fmt_body(a, f)
            }
            SelR(x, a) => {
                write!(f, "{x}.inr. ")?;
                fmt_body(a, f)
            }
            Case(x, a, b) => write!(f, "case {x} {{ inl: {a} ; inr: {b} }}"),
        }
    }
}

impl fmt::Debug for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
