//! Channel names.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A channel name. Cheap to clone, ordered by its text.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Name {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The part before the first `'`, used as the stem for fresh variants.
    pub fn root(&self) -> &str {
        match self.0.find('\'') {
            Some(i) => &self.0[..i],
            None => &self.0,
        }
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Name {
        Name::new(s)
    }
}

/// Fresh variant of `base`: `x'`, then `x'1`, `x'2`, ... until `taken` says no.
pub fn fresh_name(base: &Name, taken: impl Fn(&Name) -> bool) -> Name {
    let root = base.root();
    let first = Name::new(&format!("{root}'"));
    if !taken(&first) {
        return first;
    }
    let mut k = 1u64;
    loop {
        let cand = Name::new(&format!("{root}'{k}"));
        if !taken(&cand) {
            return cand;
        }
        k += 1;
    }
}

/// Fresh name avoiding a set.
pub fn fresh_avoiding(base: &Name, avoid: &BTreeSet<Name>) -> Name {
    fresh_name(base, |n| avoid.contains(n))
}

/// True if `s` is a legal identifier in the text syntax.
pub fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' || c == '@' => {}
        _ => return false,
    }
    cs.all(is_ident_continue)
}

pub(crate) fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_' || c == '@'
}

pub(crate) fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '@'
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_skips_taken() {
        let z = Name::new("z");
        let avoid: BTreeSet<Name> = ["z", "z'", "z'1"].iter().map(|s| Name::new(s)).collect();
        assert_eq!(fresh_avoiding(&z, &avoid).as_str(), "z'2");
        assert_eq!(fresh_avoiding(&Name::new("q'7"), &BTreeSet::new()).as_str(), "q'");
    }

    #[test]
    fn idents() {
        assert!(is_ident("x1'"));
        assert!(is_ident("@3"));
        assert!(!is_ident("1x"));
        assert!(!is_ident(""));
    }
}
