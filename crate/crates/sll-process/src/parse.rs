//! Reader for the process text syntax.
//!
//! ```text
//! proc ::= atom ('|' atom)*
//! atom ::= '0' | '(' proc ')' | 'new' x '.' atom
//!        | x '?(' y ')' '.' atom | x '!(' y ')' '.' atom | '!' x '?(' y ')' '.' atom
//!        | x '.inl.' atom | x '.inr.' atom
//!        | 'case' x '{' 'inl' ':' proc ';' 'inr' ':' proc '}'
//! ```

use crate::lex::{describe, Cursor, ParseError, TokKind};
use crate::name::Name;
use crate::process::*;

const KEYWORDS: [&str; 4] = ["new", "case", "inl", "inr"];

pub fn parse_process(src: &str) -> Result<Process, ParseError> {
    let mut c = Cursor::new(src)?;
    let p = parse_proc(&mut c)?;
    c.expect_eof()?;
    Ok(p)
}

/// Parse a process from an existing cursor, stopping at the first token
/// that cannot continue it.
pub fn parse_proc(c: &mut Cursor) -> Result<Process, ParseError> {
    let mut p = parse_atom(c)?;
    while c.eat_sym('|') {
        let q = parse_atom(c)?;
        p = par(p, q);
    }
    Ok(p)
}

fn name(c: &mut Cursor) -> Result<Name, ParseError> {
    if let TokKind::Ident(s) = c.peek() {
        if KEYWORDS.contains(&s.as_str()) {
            return Err(c.error(format!("'{s}' is a keyword, not a name")));
        }
    }
    Ok(Name::new(&c.expect_ident()?))
}

fn continuation(c: &mut Cursor) -> Result<Process, ParseError> {
    c.expect_sym('.')?;
    parse_atom(c)
}

fn parse_atom(c: &mut Cursor) -> Result<Process, ParseError> {
    match c.peek().clone() {
        TokKind::Num(s) if s == "0" => {
            c.bump();
            Ok(nil())
        }
        TokKind::Sym('(') => {
            c.bump();
            let p = parse_proc(c)?;
            c.expect_sym(')')?;
            Ok(p)
        }
        TokKind::Sym('!') => {
            c.bump();
            let x = name(c)?;
            c.expect_sym('?')?;
            c.expect_sym('(')?;
            let y = name(c)?;
            c.expect_sym(')')?;
            Ok(rep(x, y, continuation(c)?))
        }
        TokKind::Ident(kw) if kw == "new" => {
            c.bump();
            let x = name(c)?;
            Ok(new(x, continuation(c)?))
        }
        TokKind::Ident(kw) if kw == "case" => {
            c.bump();
            let x = name(c)?;
            c.expect_sym('{')?;
            c.expect_keyword("inl")?;
            c.expect_sym(':')?;
            let l = parse_proc(c)?;
            c.expect_sym(';')?;
            c.expect_keyword("inr")?;
            c.expect_sym(':')?;
            let r = parse_proc(c)?;
            c.expect_sym('}')?;
            Ok(case(x, l, r))
        }
        TokKind::Ident(_) => {
            let x = name(c)?;
            if c.eat_sym('?') {
                c.expect_sym('(')?;
                let y = name(c)?;
                c.expect_sym(')')?;
                Ok(inp(x, y, continuation(c)?))
            } else if c.eat_sym('!') {
                c.expect_sym('(')?;
                let y = name(c)?;
                c.expect_sym(')')?;
                Ok(out(x, y, continuation(c)?))
            } else if c.eat_sym('.') {
                if c.is_ident("inl") {
                    c.bump();
                    Ok(sel_l(x, continuation(c)?))
                } else if c.is_ident("inr") {
                    c.bump();
                    Ok(sel_r(x, continuation(c)?))
                } else {
                    Err(c.error(format!("expected 'inl' or 'inr', found {}", describe(c.peek()))))
                }
            } else {
                Err(c.error(format!("expected '?', '!' or '.' after {x}, found {}", describe(c.peek()))))
            }
        }
        other => Err(c.error(format!("expected a process, found {}", describe(&other)))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_all_forms() {
        let src = "new x. (x!(y). 0 | !x?(z). z.inl. 0) | case w { inl: 0 ; inr: w?(q). 0 } | a.inr. 0";
        let p = parse_process(src).unwrap();
        let expected = par(
            par(
                new("x", par(out("x", "y", nil()), rep("x", "z", sel_l("z", nil())))),
                case("w", nil(), inp("w", "q", nil())),
            ),
            sel_r("a", nil()),
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn bar_is_left_associative_and_loosest() {
        let p = parse_process("x!(y).0 | 0 | 0").unwrap();
        assert_eq!(p, par(par(out("x", "y", nil()), nil()), nil()));
    }

    #[test]
    fn printing_round_trips() {
        for src in [
            "0",
            "new x. (x!(y). 0 | x?(z). 0)",
            "a!(b). 0 | (c!(d). 0 | e!(f). 0)",
            "case x { inl: 0 | 0 ; inr: new y. x!(y). 0 }",
            "!x?(y). (y.inl. 0 | y.inr. 0)",
        ] {
            let p = parse_process(src).unwrap();
            let again = parse_process(&p.to_string()).unwrap();
            assert_eq!(p, again, "{src}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_process("x!(y). 0 |\n  x?(z) 0").unwrap_err();
        assert_eq!((e.line, e.col), (2, 9));
        let e = parse_process("new new. 0").unwrap_err();
        assert_eq!((e.line, e.col), (1, 5));
        assert!(parse_process("x$").is_err());
    }
}
