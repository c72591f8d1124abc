//! Session types built from `1`, `*`, `-o`, `(+)`, `&` and `!`, the
//! auxiliary / multiplexor / linear contexts, and judgments over them.
//!
//! Text syntax: `!` binds tightest; the four binary connectives share one
//! precedence level and associate to the right, so `1 * 1 -o 1` reads as
//! `1 * (1 -o 1)`. Parenthesise when mixing them.

use std::collections::BTreeMap;
use std::fmt;

use sll_process::lex::{describe, Cursor, ParseError, TokKind};
use sll_process::Name;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SessionType {
    One,
    Tensor(Box<SessionType>, Box<SessionType>),
    Lolli(Box<SessionType>, Box<SessionType>),
    Plus(Box<SessionType>, Box<SessionType>),
    With(Box<SessionType>, Box<SessionType>),
    Bang(Box<SessionType>),
}

use SessionType::*;

impl SessionType {
    pub fn tensor(a: SessionType, b: SessionType) -> SessionType {
        Tensor(Box::new(a), Box::new(b))
    }
    pub fn lolli(a: SessionType, b: SessionType) -> SessionType {
        Lolli(Box::new(a), Box::new(b))
    }
    pub fn plus(a: SessionType, b: SessionType) -> SessionType {
        Plus(Box::new(a), Box::new(b))
    }
    pub fn with(a: SessionType, b: SessionType) -> SessionType {
        With(Box::new(a), Box::new(b))
    }
    pub fn bang(a: SessionType) -> SessionType {
        Bang(Box::new(a))
    }

    /// Nesting depth of `!`.
    pub fn depth(&self) -> u64 {
        match self {
            One => 0,
            Tensor(a, b) | Lolli(a, b) | Plus(a, b) | With(a, b) => a.depth().max(b.depth()),
            Bang(a) => 1 + a.depth(),
        }
    }

    fn is_binary(&self) -> bool {
        matches!(self, Tensor(..) | Lolli(..) | Plus(..) | With(..))
    }
}

pub fn type_depth(a: &SessionType) -> u64 {
    a.depth()
}

fn child(f: &mut fmt::Formatter<'_>, a: &SessionType) -> fmt::Result {
    if a.is_binary() {
        write!(f, "({a})")
    } else {
        write!(f, "{a}")
    }
}

impl fmt::Display for SessionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, op, b) = match self {
            One => return f.write_str("1"),
            Bang(a) => {
                f.write_str("!")?;
                return child(f, a);
            }
            Tensor(a, b) => (a, "*", b),
            Lolli(a, b) => (a, "-o", b),
            Plus(a, b) => (a, "(+)", b),
            With(a, b) => (a, "&", b),
        };
        child(f, a)?;
        write!(f, " {op} ")?;
        child(f, b)
    }
}

impl fmt::Debug for SessionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Read a type from a cursor, stopping before the first token that cannot
/// continue it.
pub fn parse_type_at(c: &mut Cursor) -> Result<SessionType, ParseError> {
    let lhs = parse_unary(c)?;
    let op: Option<fn(SessionType, SessionType) -> SessionType> = if c.is_sym('*') {
        c.bump();
        Some(SessionType::tensor)
    } else if c.is_sym('&') {
        c.bump();
        Some(SessionType::with)
    } else if c.is_sym('-') && matches!(c.peek_at(1), TokKind::Ident(o) if o == "o") {
        c.bump();
        c.bump();
        Some(SessionType::lolli)
    } else if c.is_sym('(') && *c.peek_at(1) == TokKind::Sym('+') && *c.peek_at(2) == TokKind::Sym(')') {
        c.bump();
        c.bump();
        c.bump();
        Some(SessionType::plus)
    } else {
        None
    };
    match op {
        Some(mk) => Ok(mk(lhs, parse_type_at(c)?)),
        None => Ok(lhs),
    }
}

fn parse_unary(c: &mut Cursor) -> Result<SessionType, ParseError> {
    match c.peek().clone() {
        TokKind::Sym('!') => {
            c.bump();
            Ok(SessionType::bang(parse_unary(c)?))
        }
        TokKind::Num(n) if n == "1" => {
            c.bump();
            Ok(One)
        }
        TokKind::Sym('(') => {
            c.bump();
            let t = parse_type_at(c)?;
            c.expect_sym(')')?;
            Ok(t)
        }
        other => Err(c.error(format!("expected a type, found {}", describe(&other)))),
    }
}

pub fn parse_type(src: &str) -> Result<SessionType, ParseError> {
    let mut c = Cursor::new(src)?;
    let t = parse_type_at(&mut c)?;
    c.expect_eof()?;
    Ok(t)
}

/// A finite map from names to types. Order of bindings is irrelevant.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context(pub BTreeMap<Name, SessionType>);

impl Context {
    pub fn new() -> Context {
        Context(BTreeMap::new())
    }

    pub fn single(x: Name, a: SessionType) -> Context {
        Context(BTreeMap::from([(x, a)]))
    }

    pub fn get(&self, x: &Name) -> Option<&SessionType> {
        self.0.get(x)
    }

    pub fn contains(&self, x: &Name) -> bool {
        self.0.contains_key(x)
    }

    pub fn insert(&mut self, x: Name, a: SessionType) -> Option<SessionType> {
        self.0.insert(x, a)
    }

    pub fn remove(&mut self, x: &Name) -> Option<SessionType> {
        self.0.remove(x)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &SessionType)> {
        self.0.iter()
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.0.keys()
    }

    /// Every binding of `self` is present in `other` with the same type.
    pub fn is_subset(&self, other: &Context) -> bool {
        self.0.iter().all(|(x, a)| other.get(x) == Some(a))
    }

    pub fn depth(&self) -> u64 {
        self.0.values().map(|a| a.depth()).max().unwrap_or(0)
    }
}

impl FromIterator<(Name, SessionType)> for Context {
    fn from_iter<I: IntoIterator<Item = (Name, SessionType)>>(it: I) -> Context {
        Context(it.into_iter().collect())
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, a)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}: {a}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `Γ; Δ; Θ ⊢ x : A`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Judgment {
    pub aux: Context,
    pub mux: Context,
    pub lin: Context,
    pub subject: Name,
    pub offered: SessionType,
}

impl Judgment {
    pub fn new(aux: Context, mux: Context, lin: Context, subject: Name, offered: SessionType) -> Judgment {
        Judgment { aux, mux, lin, subject, offered }
    }

    /// Maximum `!`-depth over every binding and the offered type.
    pub fn depth(&self) -> u64 {
        self.aux.depth().max(self.mux.depth()).max(self.lin.depth()).max(self.offered.depth())
    }

    /// Slots pairwise disjoint and the subject in none of them.
    pub fn well_formed(&self) -> bool {
        let disjoint = |a: &Context, b: &Context| a.names().all(|x| !b.contains(x));
        disjoint(&self.aux, &self.mux)
            && disjoint(&self.aux, &self.lin)
            && disjoint(&self.mux, &self.lin)
            && !self.aux.contains(&self.subject)
            && !self.mux.contains(&self.subject)
            && !self.lin.contains(&self.subject)
    }

    /// Type of `x` in whichever slot binds it, or the offered type for the subject.
    pub fn type_of(&self, x: &Name) -> Option<&SessionType> {
        if *x == self.subject {
            return Some(&self.offered);
        }
        self.aux.get(x).or_else(|| self.mux.get(x)).or_else(|| self.lin.get(x))
    }
}

pub fn judgment_depth(j: &Judgment) -> u64 {
    j.depth()
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G: {} ; D: {} ; T: {} |- {} : {}", self.aux, self.mux, self.lin, self.subject, self.offered)
    }
}

impl fmt::Debug for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_context(c: &mut Cursor, slot: &str) -> Result<Context, ParseError> {
    c.expect_keyword(slot)?;
    c.expect_sym(':')?;
    c.expect_sym('{')?;
    let mut ctx = Context::new();
    if !c.is_sym('}') {
        loop {
            let x = Name::new(&c.expect_ident()?);
            c.expect_sym(':')?;
            let a = parse_type_at(c)?;
            if ctx.insert(x.clone(), a).is_some() {
                return Err(c.error(format!("{x} bound twice in {slot}")));
            }
            if !c.eat_sym(',') {
                break;
            }
        }
    }
    c.expect_sym('}')?;
    Ok(ctx)
}

/// Read `G: {…} ; D: {…} ; T: {…} |- x : A` from a cursor.
pub fn parse_judgment_at(c: &mut Cursor) -> Result<Judgment, ParseError> {
    let aux = parse_context(c, "G")?;
    c.expect_sym(';')?;
    let mux = parse_context(c, "D")?;
    c.expect_sym(';')?;
    let lin = parse_context(c, "T")?;
    c.expect_sym('|')?;
    c.expect_sym('-')?;
    let subject = Name::new(&c.expect_ident()?);
    c.expect_sym(':')?;
    let offered = if c.eat_sym('<') {
        let t = parse_type_at(c)?;
        c.expect_sym('>')?;
        t
    } else {
        parse_type_at(c)?
    };
    let j = Judgment { aux, mux, lin, subject, offered };
    if !j.well_formed() {
        return Err(c.error("context slots overlap or contain the subject"));
    }
    Ok(j)
}

pub fn parse_judgment(src: &str) -> Result<Judgment, ParseError> {
    let mut c = Cursor::new(src)?;
    let j = parse_judgment_at(&mut c)?;
    c.expect_eof()?;
    Ok(j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> SessionType {
        parse_type(s).unwrap()
    }

    #[test]
    fn depth_examples() {
        assert_eq!(One.depth(), 0);
        assert_eq!(t("!1").depth(), 1);
        assert_eq!(t("!!1 -o (1 * !1)").depth(), 2);
    }

    #[test]
    fn precedence() {
        assert_eq!(t("!1 * 1"), SessionType::tensor(SessionType::bang(One), One));
        assert_eq!(t("1 * 1 -o 1"), SessionType::tensor(One, SessionType::lolli(One, One)));
        assert_eq!(t("(1 (+) 1) & 1"), SessionType::with(SessionType::plus(One, One), One));
    }

    #[test]
    fn display_round_trip() {
        for s in ["1", "!(1 * 1)", "(1 -o 1) (+) (1 & !!1)", "1 * (1 * (1 * 1))"] {
            assert_eq!(t(&t(s).to_string()), t(s));
        }
    }

    #[test]
    fn judgment_examples() {
        let j = parse_judgment("G: {} ; D: {} ; T: {} |- x : 1").unwrap();
        assert_eq!(j.depth(), 0);
        let j = parse_judgment("G: {} ; D: {} ; T: {x: !1} |- y : 1").unwrap();
        assert_eq!(j.depth(), 1);
        let j = parse_judgment("G: {y: 1} ; D: {} ; T: {} |- x : !!1").unwrap();
        assert_eq!(j.depth(), 2);
        assert_eq!(parse_judgment(&j.to_string()).unwrap(), j);
    }

    #[test]
    fn overlapping_slots_rejected() {
        assert!(parse_judgment("G: {a: 1} ; D: {a: 1} ; T: {} |- x : 1").is_err());
        assert!(parse_judgment("G: {} ; D: {} ; T: {x: 1} |- x : 1").is_err());
    }
}
