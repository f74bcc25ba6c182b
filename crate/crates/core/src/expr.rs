//! Species expressions: a small prefix grammar over the builtins.
//!
//! The grammar is documented in `docs/species-grammar.ebnf`. Every expression
//! prints in a canonical form that parses back to the same tree.

use std::fmt;

use crate::builtins::{self, Builtin, IndexGroup};
use crate::error::{Error, Result};
use crate::species::{self, Species};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Builtin(Builtin),
    Sum(Box<Expr>, Box<Expr>),
    Prod(Box<Expr>, Box<Expr>),
    Had(Box<Expr>, Box<Expr>),
    /// Derivative in a 1-based sort.
    Deriv(usize, Box<Expr>),
    Compose(Box<Expr>, Vec<Expr>),
    GeomInv(Box<Expr>),
    ScaledRecip(usize, usize, Box<Expr>),
    BinPow(usize, usize),
    PosPart(Box<Expr>),
    Negate(Box<Expr>),
    Rep(u64, Box<Expr>),
    /// Lift a one-sort species into the given 1-based sort of two.
    Promote(usize, Box<Expr>),
    /// `F(XY)`.
    Xy(Box<Expr>),
}

impl Expr {
    pub fn build(&self) -> Result<Species> {
        match self {
            Expr::Builtin(b) => builtins::make(b),
            Expr::Sum(a, b) => species::sum(&a.build()?, &b.build()?),
            Expr::Prod(a, b) => species::product(&a.build()?, &b.build()?),
            Expr::Had(a, b) => species::hadamard(&a.build()?, &b.build()?),
            Expr::Deriv(i, a) => species::derivative(&a.build()?, i - 1),
            Expr::Compose(f, gs) => {
                let inner = gs.iter().map(Expr::build).collect::<Result<Vec<_>>>()?;
                species::compose(&f.build()?, &inner)
            }
            Expr::GeomInv(a) => species::geom_inverse(&a.build()?),
            Expr::ScaledRecip(a, b, f) => species::scaled_reciprocal(*a, *b, &f.build()?),
            Expr::BinPow(a, b) => species::binomial_power(*a, *b),
            Expr::PosPart(a) => Ok(species::positive_part(&a.build()?)),
            Expr::Negate(a) => Ok(species::negate_species(&a.build()?)),
            Expr::Rep(m, a) => Ok(species::scalar_replicate(&a.build()?, *m)),
            Expr::Promote(j, a) => species::promote(&a.build()?, j - 1),
            Expr::Xy(a) => species::substitute_xy(&a.build()?),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Builtin(b) => write!(f, "{b}"),
            Expr::Sum(a, b) => write!(f, "sum({a},{b})"),
            Expr::Prod(a, b) => write!(f, "prod({a},{b})"),
            Expr::Had(a, b) => write!(f, "had({a},{b})"),
            Expr::Deriv(i, a) => write!(f, "d/dx{i}({a})"),
            Expr::Compose(outer, gs) => {
                write!(f, "compose({outer}")?;
                for g in gs {
                    write!(f, ",{g}")?;
                }
                f.write_str(")")
            }
            Expr::GeomInv(a) => write!(f, "geominv({a})"),
            Expr::ScaledRecip(a, b, x) => write!(f, "scaledrecip({a},{b},{x})"),
            Expr::BinPow(a, b) => write!(f, "binpow({a},{b})"),
            Expr::PosPart(a) => write!(f, "pospart({a})"),
            Expr::Negate(a) => write!(f, "negate({a})"),
            Expr::Rep(m, a) => write!(f, "rep({m},{a})"),
            Expr::Promote(j, a) => write!(f, "promote({j},{a})"),
            Expr::Xy(a) => write!(f, "xy({a})"),
        }
    }
}

impl std::str::FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Parses an expression and builds its species.
pub fn species_from_str(s: &str) -> Result<Species> {
    parse(s)?.build()
}

pub fn parse(src: &str) -> Result<Expr> {
    let tokens = lex(src)?;
    let mut p = Parser { tokens, at: 0, end: src.len() };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(parse_err(t.pos, "unexpected trailing input"));
    }
    Ok(e)
}

fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Open,
    Close,
    Comma,
    LBracket,
    RBracket,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'(' => Some(Tok::Open),
            b')' => Some(Tok::Close),
            b',' => Some(Tok::Comma),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, pos: start });
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i].parse().map_err(|_| parse_err(start, "integer too large"))?;
            out.push(Token { tok: Tok::Int(n), pos: start });
        } else if src[i..].starts_with("d/dx") {
            i += 4;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(src[start..i].to_string()), pos: start });
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(src[start..i].to_string()), pos: start });
        } else {
            let ch = src[i..].chars().next().unwrap_or('?');
            return Err(parse_err(start, format!("unexpected character '{ch}'")));
        }
    }
    Ok(out)
}

#[derive(Debug)]
enum Arg {
    Expr(Expr),
    Int(u64),
    List(Vec<usize>),
    Word(String),
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|t| &t.tok) == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(parse_err(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        match self.arg()? {
            (Arg::Expr(e), _) => Ok(e),
            (_, pos) => Err(parse_err(pos, "expected a species expression")),
        }
    }

    fn arg(&mut self) -> Result<(Arg, usize)> {
        let pos = self.pos();
        let Some(t) = self.peek().cloned() else {
            return Err(parse_err(pos, "unexpected end of input"));
        };
        self.at += 1;
        match t.tok {
            Tok::Int(n) => Ok((Arg::Int(n), pos)),
            Tok::LBracket => {
                let mut items = Vec::new();
                if !self.eat(&Tok::RBracket) {
                    loop {
                        match self.peek().map(|t| t.tok.clone()) {
                            Some(Tok::Int(n)) => {
                                self.at += 1;
                                items.push(to_usize(n, pos)?);
                            }
                            _ => return Err(parse_err(self.pos(), "expected an integer")),
                        }
                        if self.eat(&Tok::RBracket) {
                            break;
                        }
                        self.expect(Tok::Comma, "',' or ']'")?;
                    }
                }
                Ok((Arg::List(items), pos))
            }
            Tok::Ident(name) => {
                let args = if self.eat(&Tok::Open) {
                    let mut args = Vec::new();
                    loop {
                        args.push(self.arg()?);
                        if self.eat(&Tok::Close) {
                            break;
                        }
                        self.expect(Tok::Comma, "',' or ')'")?;
                    }
                    Some(args)
                } else {
                    None
                };
                if matches!(name.as_str(), "sym" | "cyc") && args.is_none() {
                    return Ok((Arg::Word(name), pos));
                }
                Ok((Arg::Expr(build_call(&name, args, pos)?), pos))
            }
            _ => Err(parse_err(pos, "expected an expression")),
        }
    }
}

fn to_usize(n: u64, pos: usize) -> Result<usize> {
    usize::try_from(n).map_err(|_| parse_err(pos, "integer too large"))
}

struct Args {
    name: String,
    pos: usize,
    items: std::vec::IntoIter<(Arg, usize)>,
}

impl Args {
    fn int(&mut self) -> Result<usize> {
        match self.items.next() {
            Some((Arg::Int(n), p)) => to_usize(n, p),
            Some((_, p)) => Err(parse_err(p, format!("{} expects an integer here", self.name))),
            None => Err(parse_err(self.pos, format!("{} is missing an integer argument", self.name))),
        }
    }

    fn expr(&mut self) -> Result<Box<Expr>> {
        match self.items.next() {
            Some((Arg::Expr(e), _)) => Ok(Box::new(e)),
            Some((_, p)) => Err(parse_err(p, format!("{} expects a species here", self.name))),
            None => Err(parse_err(self.pos, format!("{} is missing a species argument", self.name))),
        }
    }

    fn done(mut self) -> Result<()> {
        match self.items.next() {
            Some((_, p)) => Err(parse_err(p, format!("too many arguments to {}", self.name))),
            None => Ok(()),
        }
    }
}

fn build_call(name: &str, args: Option<Vec<(Arg, usize)>>, pos: usize) -> Result<Expr> {
    let nullary = args.is_none();
    let mut a = Args { name: name.to_string(), pos, items: args.unwrap_or_default().into_iter() };
    let plain = |b: Builtin| -> Result<Expr> {
        if nullary {
            Ok(Expr::Builtin(b))
        } else {
            Err(parse_err(pos, format!("{name} takes no arguments")))
        }
    };
    let e = match name {
        "X" => return plain(Builtin::X),
        "X1" => return plain(Builtin::Xi(1)),
        "X2" => return plain(Builtin::Xi(2)),
        "One" => return plain(Builtin::One),
        "Exp" => return plain(Builtin::Exp),
        "One2" => return plain(Builtin::One2),
        "Exp2" => return plain(Builtin::Exp2),
        "Psubsets" => return plain(Builtin::Psubsets),
        "Isinh" => return plain(Builtin::Isinh),
        "Icosh" => return plain(Builtin::Icosh),
        "Si" => return plain(Builtin::Si),
        "XY" => return plain(Builtin::XY),
        _ if nullary => return Err(parse_err(pos, format!("unknown name or missing arguments: {name}"))),
        "Spow" => Expr::Builtin(Builtin::SPow(a.int()?)),
        "Zpow" => Expr::Builtin(Builtin::ZPow(a.int()?)),
        "E" => Expr::Builtin(Builtin::E(a.int()?)),
        "GroupBar" => Expr::Builtin(Builtin::GroupBar(a.int()?)),
        "RisingZ" => Expr::Builtin(Builtin::RisingZ(a.int()?)),
        "IncFact" => Expr::Builtin(Builtin::IncFact(a.int()?)),
        "DecFact" => Expr::Builtin(Builtin::DecFact(a.int()?)),
        "PG" => {
            let k = a.int()?;
            let group = match a.items.next() {
                Some((Arg::Word(w), _)) if w == "sym" => IndexGroup::Symmetric,
                Some((Arg::Word(w), _)) if w == "cyc" => IndexGroup::Cyclic,
                Some((Arg::List(first), _)) => {
                    let mut gens = vec![first];
                    while let Some((Arg::List(_), _)) = a.items.as_slice().first() {
                        if let Some((Arg::List(g), _)) = a.items.next() {
                            gens.push(g);
                        }
                    }
                    IndexGroup::Generated(gens)
                }
                Some((_, p)) => return Err(parse_err(p, "PG expects sym, cyc or generator lists")),
                None => return Err(parse_err(pos, "PG is missing its group")),
            };
            Expr::Builtin(Builtin::PG(k, group))
        }
        "sum" => Expr::Sum(a.expr()?, a.expr()?),
        "prod" => Expr::Prod(a.expr()?, a.expr()?),
        "had" => Expr::Had(a.expr()?, a.expr()?),
        "d/dx1" => Expr::Deriv(1, a.expr()?),
        "d/dx2" => Expr::Deriv(2, a.expr()?),
        "compose" => {
            let outer = a.expr()?;
            let mut inner = vec![*a.expr()?];
            while matches!(a.items.as_slice().first(), Some((Arg::Expr(_), _))) {
                inner.push(*a.expr()?);
            }
            Expr::Compose(outer, inner)
        }
        "geominv" => Expr::GeomInv(a.expr()?),
        "scaledrecip" => Expr::ScaledRecip(a.int()?, a.int()?, a.expr()?),
        "binpow" => Expr::BinPow(a.int()?, a.int()?),
        "pospart" => Expr::PosPart(a.expr()?),
        "negate" => Expr::Negate(a.expr()?),
        "rep" => Expr::Rep(a.int()? as u64, a.expr()?),
        "promote" => {
            let j = a.int()?;
            if !(1..=2).contains(&j) {
                return Err(parse_err(pos, "promote needs a sort in {1, 2}"));
            }
            Expr::Promote(j, a.expr()?)
        }
        "xy" => Expr::Xy(a.expr()?),
        _ => return Err(parse_err(pos, format!("unknown name: {name}"))),
    };
    a.done()?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Rational;

    fn coeffs(src: &str, order: usize) -> Vec<Rational> {
        species::coefficients(&species_from_str(src).unwrap(), order).unwrap()
    }

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn parses_builtins_and_combinators() {
        assert_eq!(parse("Exp").unwrap(), Expr::Builtin(Builtin::Exp));
        assert_eq!(parse("geominv(pospart(d/dx1(Zpow(1))))").unwrap().to_string(), "geominv(pospart(d/dx1(Zpow(1))))");
        assert_eq!(parse(" sum ( X , One ) ").unwrap().to_string(), "sum(X,One)");
        assert_eq!(parse("PG(3,[2,3,1],[2,1,3])").unwrap().to_string(), "PG(3,[2,3,1],[2,1,3])");
        assert_eq!(parse("compose(Exp2,X1,X2)").unwrap().to_string(), "compose(Exp2,X1,X2)");
    }

    #[test]
    fn evaluates_cli_examples() {
        assert_eq!(coeffs("Exp", 3), vec![r(1, 1); 4]);
        assert_eq!(coeffs("geominv(pospart(d/dx1(Zpow(1))))", 4), vec![r(1, 1), r(-1, 2), r(1, 6), r(0, 1), r(-1, 30)]);
        assert_eq!(coeffs("binpow(1,2)", 3), vec![r(1, 1), r(-1, 2), r(3, 4), r(-15, 8)]);
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse("sum(X,"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse("sum(X,Foo)"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse("Exp)"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse("Exp $"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse("Zpow"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse("geominv(X,X)"), Err(Error::Parse { pos: 10, .. })));
        assert!(matches!(parse("Exp(1)"), Err(Error::Parse { .. })));
    }

    #[test]
    fn build_errors_are_not_parse_errors() {
        assert!(matches!(species_from_str("Zpow(0)"), Err(Error::Domain(_))));
        assert!(matches!(species_from_str("sum(X,XY)"), Err(Error::Domain(_))));
    }
}
