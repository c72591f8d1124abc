//! Reader for the parenthesised proof-term syntax and for `.thm` files.
//!
//! A `.thm` file holds optional `#` comment lines, a judgment
//! `G: {…} ; D: {…} ; T: {…} |- x : A`, then one proof term.

use sll_process::lex::{describe, Cursor, ParseError, TokKind};
use sll_process::Name;
use sll_types::{parse_judgment_at, parse_type_at, Judgment, SessionType};

use crate::term::ProofTerm::{self, *};

pub fn parse_term(src: &str) -> Result<ProofTerm, ParseError> {
    let mut c = Cursor::new(src)?;
    let d = parse_term_at(&mut c)?;
    c.expect_eof()?;
    Ok(d)
}

/// Blank out whole-line `#` comments, keeping line numbers intact.
fn strip_comments(src: &str) -> String {
    src.lines().map(|l| if l.trim_start().starts_with('#') { "" } else { l }).collect::<Vec<_>>().join("\n")
}

/// Read a `.thm` file: declared judgment followed by a proof term.
pub fn parse_thm(src: &str) -> Result<(Judgment, ProofTerm), ParseError> {
    let mut c = Cursor::new(&strip_comments(src))?;
    let j = parse_judgment_at(&mut c)?;
    let d = parse_term_at(&mut c)?;
    c.expect_eof()?;
    Ok((j, d))
}

fn name(c: &mut Cursor) -> Result<Name, ParseError> {
    Ok(Name::new(&c.expect_ident()?))
}

fn annotation(c: &mut Cursor) -> Result<SessionType, ParseError> {
    if c.eat_sym('<') {
        let t = parse_type_at(c)?;
        c.expect_sym('>')?;
        Ok(t)
    } else if matches!(c.peek(), TokKind::Num(s) if s == "1") {
        c.bump();
        Ok(SessionType::One)
    } else {
        Err(c.error(format!("expected a type in <…>, found {}", describe(c.peek()))))
    }
}

/// The rule keyword after `(`. `1R` lexes as a number and a name, `flat!`
/// as a name and a symbol.
fn head(c: &mut Cursor) -> Result<String, ParseError> {
    let mut s = match c.peek().clone() {
        TokKind::Num(n) if n == "1" => {
            c.bump();
            match c.peek().clone() {
                TokKind::Ident(r) if r == "R" || r == "L" => {
                    c.bump();
                    format!("1{r}")
                }
                other => return Err(c.error(format!("expected 1R or 1L, found 1 then {}", describe(&other)))),
            }
        }
        TokKind::Ident(s) => {
            c.bump();
            s
        }
        other => return Err(c.error(format!("expected a rule name, found {}", describe(&other)))),
    };
    if matches!(s.as_str(), "flat" | "bangL" | "cut") {
        if c.eat_sym('!') {
            s.push('!');
        } else if c.eat_sym('#') {
            s.push('#');
        }
    }
    Ok(s)
}

pub fn parse_term_at(c: &mut Cursor) -> Result<ProofTerm, ParseError> {
    c.expect_sym('(')?;
    let at = c.error("");
    let rule = head(c)?;
    let sub = |c: &mut Cursor| parse_term_at(c).map(Box::new);
    let d = match rule.as_str() {
        "1R" => OneR(name(c)?),
        "1L" => OneL(name(c)?, sub(c)?),
        "tensL" => TensorL(name(c)?, name(c)?, sub(c)?),
        "tensR" => TensorR(name(c)?, name(c)?, sub(c)?, sub(c)?),
        "lolliL" => LolliL(name(c)?, name(c)?, sub(c)?, sub(c)?),
        "lolliR" => LolliR(name(c)?, name(c)?, sub(c)?),
        "plusL" => PlusL(name(c)?, sub(c)?, sub(c)?),
        "plusR1" => PlusR1(name(c)?, annotation(c)?, sub(c)?),
        "plusR2" => PlusR2(name(c)?, annotation(c)?, sub(c)?),
        "withL1" => WithL1(name(c)?, annotation(c)?, sub(c)?),
        "withL2" => WithL2(name(c)?, annotation(c)?, sub(c)?),
        "withR" => WithR(name(c)?, sub(c)?, sub(c)?),
        "flat#" => FlatSharp(name(c)?, name(c)?, sub(c)?),
        "flat!" => FlatBang(name(c)?, name(c)?, sub(c)?),
        "bangL#" => BangLSharp(name(c)?, sub(c)?),
        "bangL!" => BangLBang(name(c)?, sub(c)?),
        "bangR" => {
            let x = name(c)?;
            let y = name(c)?;
            c.expect_sym('(')?;
            let mut xs = Vec::new();
            while !c.is_sym(')') {
                xs.push(name(c)?);
            }
            c.bump();
            BangR(x, y, xs, sub(c)?)
        }
        "cut" => Cut(name(c)?, sub(c)?, sub(c)?),
        "cut!" => CutBang(name(c)?, name(c)?, sub(c)?, sub(c)?),
        "cut#" => CutSharp(name(c)?, name(c)?, sub(c)?, sub(c)?),
        other => {
            return Err(ParseError { msg: format!("unknown rule '{other}'"), ..at });
        }
    };
    c.expect_sym(')')?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::*;

    #[test]
    fn round_trip() {
        let srcs = [
            "(1R x)",
            "(cut# x y (1R y) (flat# x w (1L w (1R z))))",
            "(bangR x y (a b) (flat! a u (1L u (flat! b v (1L v (1R y))))))",
            "(plusR1 x <1 * 1> (1R x))",
            "(withL2 x 1 (1L x (1R z)))",
        ];
        for s in srcs {
            let d = parse_term(s).unwrap();
            assert_eq!(parse_term(&d.to_string()).unwrap(), d);
        }
        assert_eq!(parse_term("(1L a (1R b))").unwrap(), one_l("a", one_r("b")));
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_term("(cut x (1R x)\n  (frob y))").unwrap_err();
        assert_eq!((e.line, e.col), (2, 4));
        assert!(e.msg.contains("frob"));
        assert!(parse_term("(1R x").is_err());
    }

    #[test]
    fn thm_file() {
        let src = "# a comment\nG: {} ; D: {} ; T: {} |- x : <1>\n(1R x)\n";
        let (j, d) = parse_thm(src).unwrap();
        assert_eq!(j.subject, Name::new("x"));
        assert_eq!(d, one_r("x"));
    }
}
