//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! list       := expression ((';' | newline) expression)*
//! expression := ('+' | '-')? term (('+' | '-') term)*
//! term       := factor ('*' factor)*
//! factor     := base ('^' integer)?
//! base       := integer ('/' integer)? | variable | '(' expression ')'
//! ```
//!
//! Juxtaposition such as `2x` or `x(y+1)` is rejected rather than read as a
//! product. Newlines separate list entries only when the caller asks for it.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::mpoly::{MPoly, Vars};

/// Largest accepted exponent; larger powers are almost certainly typos.
pub const MAX_EXPONENT: u32 = 10_000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Sep,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {n}"),
        Tok::Ident(s) => format!("identifier '{s}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::Slash => "'/'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Sep => "separator".into(),
        Tok::End => "end of input".into(),
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str, newline_separates: bool) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        };
        let tok = match c {
            '\n' => {
                bump(&mut chars);
                if newline_separates {
                    Tok::Sep
                } else {
                    continue;
                }
            }
            c if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    bump(&mut chars);
                }
                Tok::Int(digits.parse().expect("ascii digits"))
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if !(d.is_alphanumeric() || d == '_') {
                        break;
                    }
                    name.push(d);
                    bump(&mut chars);
                }
                Tok::Ident(name)
            }
            _ => {
                let t = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ';' => Tok::Sep,
                    other => return Err(err(l, col, format!("unexpected character '{other}'"))),
                };
                bump(&mut chars);
                t
            }
        };
        out.push(Spanned { tok, line: l, column: col });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, what: &str) -> Error {
        let t = self.peek();
        err(t.line, t.column, format!("expected {what}, found {}", describe(&t.tok)))
    }

    fn expression(&mut self) -> Result<MPoly> {
        let mut acc = match self.peek().tok {
            Tok::Minus => {
                self.next();
                -&self.term()?
            }
            Tok::Plus => {
                self.next();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.next();
                    acc = &acc * &self.factor()?;
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    let t = self.peek();
                    return Err(err(t.line, t.column, "implicit multiplication is not allowed; use '*'"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MPoly> {
        let base = self.base()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.next();
        if !matches!(self.peek().tok, Tok::Int(_)) {
            return Err(self.unexpected("a non-negative integer exponent"));
        }
        let t = self.next();
        let Tok::Int(n) = t.tok else { unreachable!() };
        match n.to_u32().filter(|&e| e <= MAX_EXPONENT) {
            Some(e) => Ok(base.pow(e)),
            None => Err(err(t.line, t.column, format!("exponent {n} exceeds {MAX_EXPONENT}"))),
        }
    }

    fn base(&mut self) -> Result<MPoly> {
        if !matches!(self.peek().tok, Tok::Int(_) | Tok::Ident(_) | Tok::LParen) {
            return Err(self.unexpected("a number, variable or '('"));
        }
        let t = self.next();
        match t.tok {
            Tok::Int(num) => {
                if self.peek().tok != Tok::Slash {
                    return Ok(MPoly::constant(self.vars.clone(), Rational::from_integer(num)));
                }
                self.next();
                if !matches!(self.peek().tok, Tok::Int(_)) {
                    return Err(self.unexpected("an integer denominator"));
                }
                let d = self.next();
                match d.tok {
                    Tok::Int(den) if den.is_positive() => {
                        Ok(MPoly::constant(self.vars.clone(), Rational::new(num, den)))
                    }
                    _ => Err(err(d.line, d.column, "denominator must be positive")),
                }
            }
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(MPoly::var(self.vars.clone(), i)),
                None => Err(err(
                    t.line,
                    t.column,
                    format!("unknown variable '{name}' (declared: {})", self.vars.join(", ")),
                )),
            },
            Tok::LParen => {
                let e = self.expression()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.unexpected("')'"));
                }
                self.next();
                Ok(e)
            }
            _ => unreachable!("checked above"),
        }
    }
}

/// Parses a single polynomial over the declared variables.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<MPoly> {
    let mut p = Parser {
        toks: tokenize(text, false)?,
        pos: 0,
        vars,
    };
    let e = p.expression()?;
    match p.peek().tok {
        Tok::End => Ok(e),
        Tok::Slash => Err(p.unexpected("an operator; '/' is only allowed in rational literals")),
        _ => Err(p.unexpected("an operator or end of input")),
    }
}

/// Parses a `;`-separated list; with `newline_separates`, newlines also
/// separate entries. Empty entries are skipped.
pub fn parse_list(text: &str, vars: &Vars, newline_separates: bool) -> Result<Vec<MPoly>> {
    let mut p = Parser {
        toks: tokenize(text, newline_separates)?,
        pos: 0,
        vars,
    };
    let mut out = Vec::new();
    loop {
        match p.peek().tok {
            Tok::End => return Ok(out),
            Tok::Sep => {
                p.next();
            }
            _ => {
                out.push(p.expression()?);
                match p.peek().tok {
                    Tok::End | Tok::Sep => {}
                    _ => return Err(p.unexpected("';' or end of input")),
                }
            }
        }
    }
}

/// Strips `#` comments, keeping line and column positions intact.
pub fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| match l.find('#') {
            Some(k) => &l[..k],
            None => l,
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Parses `"x1->x, x2->x^2+1"` into `(name, image text)` pairs.
pub fn parse_assignments(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    let mut column = 1;
    for part in text.split(',') {
        let Some((lhs, rhs)) = part.split_once("->") else {
            return Err(err(1, column, format!("expected 'name->image' in '{}'", part.trim())));
        };
        let name = lhs.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(err(1, column, format!("invalid variable name '{name}'")));
        }
        out.push((name.to_string(), rhs.trim().to_string()));
        column += part.chars().count() + 1;
    }
    Ok(out)
}

/// Parses `"(i,j), (k,l)"` into grid points.
pub fn parse_points(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let s = text.trim();
    let mut rest = s;
    let col = |rest: &str| s.len() - rest.len() + 1;
    loop {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
        if rest.is_empty() {
            return Ok(out);
        }
        let Some(body) = rest.strip_prefix('(') else {
            return Err(err(1, col(rest), "expected '('"));
        };
        let Some(close) = body.find(')') else {
            return Err(err(1, col(rest), "unclosed '('"));
        };
        let inner = &body[..close];
        let nums: Vec<&str> = inner.split(',').map(str::trim).collect();
        let parsed: Option<Vec<usize>> = nums.iter().map(|n| n.parse().ok()).collect();
        match parsed.as_deref() {
            Some(&[i, j]) => out.push((i, j)),
            _ => return Err(err(1, col(rest), format!("expected '(i,j)' with non-negative integers, found '({inner})'"))),
        }
        rest = &body[close + 1..];
    }
}

/// Canonical rendering; `parse_poly` inverts it.
pub fn print_poly(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::tests::bp;
    use crate::mpoly::vars_of;
    use proptest::prelude::*;

    fn xy() -> Vars {
        vars_of(&["x", "y"])
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse_poly("x^2*y^2 - 1", &xy()).unwrap(), bp(&[(1, 2, 2), (-1, 0, 0)]));
        assert!(parse_poly("0", &xy()).unwrap().is_zero());
        assert_eq!(
            parse_poly("(x - y)^3", &xy()).unwrap(),
            bp(&[(1, 3, 0), (-3, 2, 1), (3, 1, 2), (-1, 0, 3)])
        );
        assert_eq!(parse_poly(" -x + 3/6 ", &xy()).unwrap().to_string(), "-x + 1/2");
        assert_eq!(parse_poly("(-(x))^2", &xy()).unwrap(), bp(&[(1, 2, 0)]));
    }

    fn parse_error(text: &str) -> (usize, usize, String) {
        match parse_poly(text, &xy()) {
            Err(Error::Parse { line, column, message }) => (line, column, message),
            other => panic!("expected a parse error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let (l, c, m) = parse_error("2x");
        assert_eq!((l, c), (1, 2));
        assert!(m.contains("implicit"), "{m}");
        let (_, c, m) = parse_error("x + z");
        assert_eq!(c, 5);
        assert!(m.contains("unknown variable 'z'"));
        assert_eq!(parse_error("x^-1").1, 3);
        assert_eq!(parse_error("(x + y").1, 7);
        assert!(parse_error("x/2").2.contains("rational literals"));
        assert!(parse_error("1/0").2.contains("positive"));
        assert_eq!(parse_error("x +\n  $").0, 2);
        assert!(parse_error("x^100000").2.contains("exceeds"));
        assert!(parse_error("").2.contains("end of input"));
    }

    #[test]
    fn lists_and_comments() {
        let v = parse_list("x - y; ; x^2", &xy(), false).unwrap();
        assert_eq!(v.len(), 2);
        let file = "# generators\nx^2*y^2 - 1   # first\n\nx^3 - y\n";
        let v = parse_list(&strip_comments(file), &xy(), true).unwrap();
        assert_eq!(v, vec![bp(&[(1, 2, 2), (-1, 0, 0)]), bp(&[(1, 3, 0), (-1, 0, 1)])]);
        match parse_list(&strip_comments("x\ny y"), &xy(), true) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn auxiliary_formats() {
        assert_eq!(parse_points(" (0,0), (1, 2)").unwrap(), vec![(0, 0), (1, 2)]);
        assert!(parse_points("(0,0),(1)").is_err());
        assert!(parse_points("").unwrap().is_empty());
        let a = parse_assignments("x1->x, y1 -> y^2+1").unwrap();
        assert_eq!(a, vec![("x1".into(), "x".into()), ("y1".into(), "y^2+1".into())]);
        assert!(parse_assignments("x1=x").is_err());
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(
            terms in prop::collection::vec((-20i64..=20, 1i64..=6, 0u32..=4, 0u32..=4), 0..=6)
        ) {
            let mut p = MPoly::zero(xy());
            for (n, d, i, j) in terms {
                p = &p + &MPoly::monomial(xy(), vec![i, j], Rational::new(n.into(), d.into()));
            }
            prop_assert_eq!(parse_poly(&print_poly(&p), &xy()).unwrap(), p);
        }
    }
}
