//! Plain-text formula syntax.
//!
//! ```text
//! formula  ::= disj [ "-o" formula ]
//! disj     ::= conj [ "|" disj ]
//! conj     ::= unary [ "&" conj ]
//! unary    ::= ("E" | "A") ident unary
//!            | "E" ident "/" ident unary
//!            | literal [ "<->" literal ]
//!            | atom
//!            | "(" formula ")"
//! literal  ::= ident "=" ident | ident "(" vars ")" | "!" literal | "!" "(" literal ")"
//! atom     ::= "dep" "(" dep-body ")"
//!            | ("incl" | "excl") "(" vars ";" vars ")"
//!            | tuple "_||_" tuple
//!            | tuple "_||_" "{" vars "}" tuple
//!            | "(" vars ")" "!=" "(" vars ")"
//! tuple    ::= ident { [","] ident } | "(" vars ")"
//! ```
//!
//! Binary connectives associate to the right. See `docs/FORMATS.md` for the
//! complete reference, including the `dep(...)` argument conventions.

use std::fmt;

use thiserror::Error;

use crate::formula::{desugar_iff, is_identifier, Formula, FormulaError, Var, VarTuple};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    ArityMismatch,
}

/// A parse failure, located at a 1-based line and column of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: expected {expected}, found {found}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

impl ParseError {
    /// Renders the error with the offending input line and a caret.
    pub fn render(&self, input: &str) -> String {
        let line = input.lines().nth(self.line - 1).unwrap_or("");
        format!(
            "parse error at {}:{}: expected {}, found {}\n  {}\n  {}^",
            self.line,
            self.column,
            self.expected,
            self.found,
            line,
            " ".repeat(self.column.saturating_sub(1))
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Exists,
    Forall,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Eq,
    Neq,
    Bang,
    Amp,
    Bar,
    Indep,
    LinImp,
    Iff,
    Slash,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::Exists => "`∃`",
            Tok::Forall => "`∀`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Comma => "`,`",
            Tok::Semi => "`;`",
            Tok::Eq => "`=`",
            Tok::Neq => "`!=`",
            Tok::Bang => "`!`",
            Tok::Amp => "`&`",
            Tok::Bar => "`|`",
            Tok::Indep => "`_||_`",
            Tok::LinImp => "`-o`",
            Tok::Iff => "`<->`",
            Tok::Slash => "`/`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(input: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    let error = |line, column, found: String| ParseError {
        kind: ParseErrorKind::Syntax,
        line,
        column,
        expected: "a token".into(),
        found,
    };
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 4)].iter().collect();
        let (tok, len) = if rest.starts_with("_||_") {
            (Tok::Indep, 4)
        } else if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("-o") {
            (Tok::LinImp, 2)
        } else if rest.starts_with("!=") {
            (Tok::Neq, 2)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            let mut j = i + 1;
            while j < chars.len()
                && (chars[j].is_ascii_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
            {
                j += 1;
            }
            let word: String = chars[start..j].iter().collect();
            if !is_identifier(&word) {
                return Err(error(line, column, format!("`{word}`")));
            }
            (Tok::Ident(word), j - start)
        } else {
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '=' => Tok::Eq,
                '!' | '¬' => Tok::Bang,
                '&' | '∧' => Tok::Amp,
                '|' | '∨' => Tok::Bar,
                '/' => Tok::Slash,
                '⊥' => Tok::Indep,
                '⊸' => Tok::LinImp,
                '↔' => Tok::Iff,
                '≠' => Tok::Neq,
                '∃' => Tok::Exists,
                '∀' => Tok::Forall,
                other => return Err(error(line, column, format!("`{other}`"))),
            };
            (tok, 1)
        };
        out.push(Spanned { tok, line, column });
        i += len;
        column += len;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

fn further(a: ParseError, b: ParseError) -> ParseError {
    if (b.line, b.column) > (a.line, a.column) {
        b
    } else {
        a
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error_at(
        &self,
        pos: usize,
        kind: ParseErrorKind,
        expected: &str,
        found: String,
    ) -> ParseError {
        let s = &self.toks[pos];
        ParseError {
            kind,
            line: s.line,
            column: s.column,
            expected: expected.to_string(),
            found,
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.error_at(
            self.pos,
            ParseErrorKind::Syntax,
            expected,
            self.peek().to_string(),
        )
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    fn ident(&mut self) -> PResult<Var> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Var::new(&name).expect("lexer only produces identifiers"))
            }
            _ => Err(self.unexpected("a variable")),
        }
    }

    fn is_ident(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_))
    }

    /// Identifiers separated by whitespace or commas, possibly none.
    fn var_list(&mut self) -> PResult<VarTuple> {
        let mut out = Vec::new();
        if !self.is_ident() {
            return Ok(VarTuple::empty());
        }
        out.push(self.ident()?);
        loop {
            if self.is_ident() {
                out.push(self.ident()?);
            } else if *self.peek() == Tok::Comma && matches!(self.peek_at(1), Tok::Ident(_)) {
                self.bump();
                out.push(self.ident()?);
            } else {
                return Ok(VarTuple::new(out));
            }
        }
    }

    fn paren_tuple(&mut self) -> PResult<VarTuple> {
        self.expect(Tok::LParen)?;
        let t = self.var_list()?;
        self.expect(Tok::RParen)?;
        Ok(t)
    }

    fn tuple(&mut self) -> PResult<VarTuple> {
        if *self.peek() == Tok::LParen {
            self.paren_tuple()
        } else if self.is_ident() {
            self.var_list()
        } else {
            Err(self.unexpected("a variable or `(`"))
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        let left = self.disj()?;
        if *self.peek() == Tok::LinImp {
            self.bump();
            let right = self.formula()?;
            return Ok(Formula::lin_imp(left, right));
        }
        Ok(left)
    }

    fn disj(&mut self) -> PResult<Formula> {
        let left = self.conj()?;
        if *self.peek() == Tok::Bar {
            self.bump();
            let right = self.disj()?;
            return Ok(Formula::or(left, right));
        }
        Ok(left)
    }

    fn conj(&mut self) -> PResult<Formula> {
        let left = self.unary()?;
        if *self.peek() == Tok::Amp {
            self.bump();
            let right = self.conj()?;
            return Ok(Formula::and(left, right));
        }
        Ok(left)
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Exists | Tok::Forall => {
                let universal = *self.peek() == Tok::Forall;
                self.bump();
                self.quantifier(universal)
            }
            Tok::Ident(name)
                if (name == "E" || name == "A") && matches!(self.peek_at(1), Tok::Ident(_)) =>
            {
                self.bump();
                self.quantifier(name == "A")
            }
            Tok::Ident(name) if matches!(self.peek_at(1), Tok::LParen) => match name.as_str() {
                "dep" => self.dep_atom(),
                "incl" | "excl" => self.pair_atom(name == "incl"),
                _ => self.maybe_iff(),
            },
            Tok::Ident(_) if matches!(self.peek_at(1), Tok::Eq) => self.maybe_iff(),
            Tok::Bang => self.maybe_iff(),
            Tok::Ident(_) => {
                let lhs = self.var_list()?;
                self.infix_atom(lhs)
            }
            Tok::LParen => {
                let start = self.pos;
                let first = self.paren_tuple().and_then(|lhs| {
                    if matches!(self.peek(), Tok::Indep | Tok::Neq) {
                        self.infix_atom(lhs)
                    } else {
                        Err(self.unexpected("`_||_` or `!=`"))
                    }
                });
                match first {
                    Ok(f) => Ok(f),
                    // A committed infix atom failing later is a real error.
                    Err(e) if e.kind == ParseErrorKind::ArityMismatch => Err(e),
                    Err(e1) => {
                        self.pos = start;
                        self.bump();
                        let inner = self.formula().and_then(|f| {
                            self.expect(Tok::RParen)?;
                            Ok(f)
                        });
                        inner.map_err(|e2| further(e1, e2))
                    }
                }
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn quantifier(&mut self, universal: bool) -> PResult<Formula> {
        let v = self.ident()?;
        if !universal && *self.peek() == Tok::Slash {
            self.bump();
            let indep = self.ident()?;
            let body = self.unary()?;
            return Ok(Formula::slash_exists(v, indep, body));
        }
        let body = self.unary()?;
        Ok(if universal {
            Formula::forall(v, body)
        } else {
            Formula::exists(v, body)
        })
    }

    fn maybe_iff(&mut self) -> PResult<Formula> {
        let a = self.literal()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let b = self.literal()?;
            return Ok(desugar_iff(&a, &b).expect("both sides are literals"));
        }
        Ok(a)
    }

    fn literal(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                let inner = if *self.peek() == Tok::LParen {
                    self.bump();
                    let l = self.literal()?;
                    self.expect(Tok::RParen)?;
                    l
                } else {
                    self.literal()?
                };
                Ok(inner.negate_literal().expect("literal"))
            }
            Tok::Ident(name) if matches!(self.peek_at(1), Tok::LParen) => {
                let at = self.pos;
                if ["dep", "incl", "excl"].contains(&name.as_str()) {
                    return Err(self.unexpected("an equality or relation literal"));
                }
                self.bump();
                self.expect(Tok::LParen)?;
                let args = self.var_list()?;
                self.expect(Tok::RParen)?;
                Formula::rel(&name, args, false).map_err(|e| {
                    self.error_at(
                        at,
                        ParseErrorKind::Syntax,
                        "a relation symbol",
                        e.to_string(),
                    )
                })
            }
            Tok::Ident(_) => {
                let left = self.ident()?;
                self.expect(Tok::Eq)?;
                let right = self.ident()?;
                Ok(Formula::eq(left, right))
            }
            _ => Err(self.unexpected("an equality or relation literal")),
        }
    }

    fn infix_atom(&mut self, lhs: VarTuple) -> PResult<Formula> {
        match self.peek() {
            Tok::Indep => {
                self.bump();
                if *self.peek() == Tok::LBrace {
                    self.bump();
                    let condition = self.var_list()?;
                    self.expect(Tok::RBrace)?;
                    let rhs = self.tuple()?;
                    Ok(Formula::cond_indep(condition, lhs, rhs))
                } else {
                    let rhs = self.tuple()?;
                    Ok(Formula::indep(lhs, rhs))
                }
            }
            Tok::Neq => {
                self.bump();
                let at = self.pos;
                let rhs = self.paren_tuple()?;
                self.pair(lhs, rhs, at, Formula::tuple_diseq)
            }
            _ => Err(self.unexpected("`_||_` or `!=`")),
        }
    }

    fn pair(
        &self,
        lhs: VarTuple,
        rhs: VarTuple,
        at: usize,
        build: fn(VarTuple, VarTuple) -> Result<Formula, FormulaError>,
    ) -> PResult<Formula> {
        let (l, r) = (lhs.len(), rhs.len());
        build(lhs, rhs).map_err(|_| {
            self.error_at(
                at,
                ParseErrorKind::ArityMismatch,
                &format!("a tuple of arity {l}"),
                format!("a tuple of arity {r}"),
            )
        })
    }

    fn pair_atom(&mut self, inclusion: bool) -> PResult<Formula> {
        self.bump();
        self.expect(Tok::LParen)?;
        let lhs = self.var_list()?;
        self.expect(Tok::Semi)?;
        let at = self.pos;
        let rhs = self.var_list()?;
        self.expect(Tok::RParen)?;
        let build = if inclusion {
            Formula::inclusion
        } else {
            Formula::exclusion
        };
        self.pair(lhs, rhs, at, build)
    }

    fn dep_atom(&mut self) -> PResult<Formula> {
        self.bump();
        self.expect(Tok::LParen)?;
        let mut groups = vec![self.group()?];
        while *self.peek() == Tok::Comma {
            if groups.last().is_some_and(VarTuple::is_empty) {
                return Err(self.unexpected("a variable"));
            }
            self.bump();
            let g = self.group()?;
            if g.is_empty() {
                return Err(self.unexpected("a variable"));
            }
            groups.push(g);
        }
        if *self.peek() == Tok::Semi {
            self.bump();
            let consequent = self.var_list()?;
            self.expect(Tok::RParen)?;
            let antecedent = groups.iter().flat_map(|g| g.iter().cloned()).collect();
            return Ok(Formula::dep(antecedent, consequent));
        }
        self.expect(Tok::RParen)?;
        if groups.len() == 1 {
            return Ok(Formula::constancy(groups.pop().expect("one group")));
        }
        let consequent = groups.pop().expect("at least two groups");
        let antecedent = groups.iter().flat_map(|g| g.iter().cloned()).collect();
        Ok(Formula::dep(antecedent, consequent))
    }

    /// Whitespace-separated identifiers, commas not allowed.
    fn group(&mut self) -> PResult<VarTuple> {
        let mut out = Vec::new();
        while self.is_ident() {
            out.push(self.ident()?);
        }
        Ok(VarTuple::new(out))
    }
}

/// Parses a formula.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("a connective or end of input"));
    }
    Ok(f)
}

/// Pretty-prints a formula in the surface syntax accepted by [`parse`].
pub fn print(f: &Formula) -> String {
    f.to_string()
}

const PREC_LINIMP: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_UNARY: u8 = 4;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::LinImp(..) => PREC_LINIMP,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        _ => PREC_UNARY,
    }
}

fn spaced(t: &VarTuple) -> String {
    t.iter().map(Var::name).collect::<Vec<_>>().join(" ")
}

fn paren(t: &VarTuple) -> String {
    format!("({})", spaced(t))
}

/// Tuples on the left of an infix atom sit at the start of a unary formula,
/// where `E x` or `A x` would read as a quantifier.
fn leading_tuple(t: &VarTuple) -> String {
    match t.as_slice().first() {
        None => "()".into(),
        Some(v) if v.name() == "E" || v.name() == "A" => paren(t),
        _ => spaced(t),
    }
}

fn trailing_tuple(t: &VarTuple) -> String {
    if t.is_empty() {
        "()".into()
    } else {
        spaced(t)
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, sub: &Formula, min: u8) -> fmt::Result {
    if precedence(sub) < min {
        write!(f, "({sub})")
    } else {
        write!(f, "{sub}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq {
                left,
                right,
                negated: false,
            } => write!(f, "{left} = {right}"),
            Formula::Eq {
                left,
                right,
                negated: true,
            } => write!(f, "!({left} = {right})"),
            Formula::Rel {
                symbol,
                args,
                negated,
            } => {
                let bang = if *negated { "!" } else { "" };
                let args: Vec<_> = args.iter().map(Var::name).collect();
                write!(f, "{bang}{symbol}({})", args.join(", "))
            }
            Formula::TupleDiseq(p) => write!(f, "{} != {}", paren(p.lhs()), paren(p.rhs())),
            Formula::Dep {
                antecedent,
                consequent,
            } => {
                if antecedent.is_empty() || consequent.is_empty() {
                    let sep = if consequent.is_empty() { " ;" } else { "; " };
                    write!(f, "dep({}{sep}{})", spaced(antecedent), spaced(consequent))
                } else {
                    write!(f, "dep({}, {})", spaced(antecedent), spaced(consequent))
                }
            }
            Formula::Constancy(t) => write!(f, "dep({})", spaced(t)),
            Formula::Indep { lhs, rhs } => {
                write!(f, "{} _||_ {}", leading_tuple(lhs), trailing_tuple(rhs))
            }
            Formula::CondIndep {
                condition,
                lhs,
                rhs,
            } => write!(
                f,
                "{} _||_{{{}}} {}",
                leading_tuple(lhs),
                spaced(condition),
                trailing_tuple(rhs)
            ),
            Formula::Inclusion(p) => write!(f, "incl({} ; {})", spaced(p.lhs()), spaced(p.rhs())),
            Formula::Exclusion(p) => write!(f, "excl({} ; {})", spaced(p.lhs()), spaced(p.rhs())),
            Formula::And(a, b) => {
                write_at(f, a, PREC_AND + 1)?;
                f.write_str(" & ")?;
                write_at(f, b, PREC_AND)
            }
            Formula::Or(a, b) => {
                write_at(f, a, PREC_OR + 1)?;
                f.write_str(" | ")?;
                write_at(f, b, PREC_OR)
            }
            Formula::LinImp(a, b) => {
                write_at(f, a, PREC_LINIMP + 1)?;
                f.write_str(" -o ")?;
                write_at(f, b, PREC_LINIMP)
            }
            Formula::Exists(v, body) => {
                write!(f, "E {v} ")?;
                write_at(f, body, PREC_UNARY)
            }
            Formula::Forall(v, body) => {
                write!(f, "A {v} ")?;
                write_at(f, body, PREC_UNARY)
            }
            Formula::SlashExists {
                var,
                independent_of,
                body,
            } => {
                write!(f, "E {var} / {independent_of} ")?;
                write_at(f, body, PREC_UNARY)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::var;

    fn t(s: &str) -> VarTuple {
        VarTuple::of(s)
    }

    #[test]
    fn dependence_atoms() {
        assert_eq!(parse("dep(x, y)").unwrap(), Formula::dep(t("x"), t("y")));
        assert_eq!(parse("dep(x)").unwrap(), Formula::constancy(t("x")));
        assert_eq!(parse("dep(x y)").unwrap(), Formula::constancy(t("x y")));
        assert_eq!(
            parse("dep(x y, z w)").unwrap(),
            Formula::dep(t("x y"), t("z w"))
        );
        assert_eq!(
            parse("dep(x, y, z)").unwrap(),
            Formula::dep(t("x y"), t("z"))
        );
        assert_eq!(parse("dep(; x)").unwrap(), Formula::dep(t(""), t("x")));
        assert_eq!(parse("dep(x ;)").unwrap(), Formula::dep(t("x"), t("")));
        assert_eq!(parse("dep()").unwrap(), Formula::constancy(t("")));
    }

    #[test]
    fn infinity_sentence() {
        let f = parse("E x A y E z (dep(z, y) & !(z = x))").unwrap();
        let expected = Formula::exists(
            var("x"),
            Formula::forall(
                var("y"),
                Formula::exists(
                    var("z"),
                    Formula::and(
                        Formula::dep(t("z"), t("y")),
                        Formula::neq(var("z"), var("x")),
                    ),
                ),
            ),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn independence_atoms() {
        assert_eq!(
            parse("x y _||_ u v").unwrap(),
            Formula::indep(t("x y"), t("u v"))
        );
        assert_eq!(
            parse("x, y _||_ u, v").unwrap(),
            Formula::indep(t("x y"), t("u v"))
        );
        assert_eq!(
            parse("y _||_{x} z").unwrap(),
            Formula::cond_indep(t("x"), t("y"), t("z"))
        );
        assert_eq!(parse("x _||_ ()").unwrap(), Formula::indep(t("x"), t("")));
        assert_eq!(parse("() _||_ x").unwrap(), Formula::indep(t(""), t("x")));
        assert_eq!(
            parse("(E x) _||_ y").unwrap(),
            Formula::indep(t("E x"), t("y"))
        );
    }

    #[test]
    fn printing() {
        assert_eq!(print(&Formula::dep(t("x"), t("y"))), "dep(x, y)");
        assert_eq!(print(&Formula::constancy(t("x"))), "dep(x)");
        assert_eq!(
            print(&Formula::cond_indep(t("x"), t("y"), t("z"))),
            "y _||_{x} z"
        );
        assert_eq!(
            print(&parse("E x A y E z (dep(z, y) & !(z = x))").unwrap()),
            "E x A y E z (dep(z, y) & !(z = x))"
        );
        assert_eq!(
            print(&parse("(a = b | c = d) & e = f").unwrap()),
            "(a = b | c = d) & e = f"
        );
        assert_eq!(
            print(&parse("(a = b -o c = d) -o e = f").unwrap()),
            "(a = b -o c = d) -o e = f"
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse("a = b & c = d | e = f -o g = h").unwrap();
        let ab = Formula::eq(var("a"), var("b"));
        let cd = Formula::eq(var("c"), var("d"));
        let ef = Formula::eq(var("e"), var("f"));
        let gh = Formula::eq(var("g"), var("h"));
        assert_eq!(
            f,
            Formula::lin_imp(
                Formula::or(Formula::and(ab.clone(), cd.clone()), ef.clone()),
                gh
            )
        );
        let g = parse("a = b | c = d | e = f").unwrap();
        assert_eq!(g, Formula::or(ab, Formula::or(cd, ef)));
        // quantifiers bind tighter than connectives
        let h = parse("E x dep(x) & x = y").unwrap();
        assert!(matches!(h, Formula::And(..)));
    }

    #[test]
    fn slash_and_keywords_as_variables() {
        let f = parse("A y E x / y x = y").unwrap();
        assert_eq!(
            f,
            Formula::forall(
                var("y"),
                Formula::slash_exists(var("x"), var("y"), Formula::eq(var("x"), var("y")))
            )
        );
        assert_eq!(parse("E = A").unwrap(), Formula::eq(var("E"), var("A")));
        assert_eq!(
            parse("E E dep(E)").unwrap(),
            Formula::exists(var("E"), Formula::constancy(t("E")))
        );
    }

    #[test]
    fn pair_atoms_and_diseq() {
        assert_eq!(
            parse("incl(x y ; u v)").unwrap(),
            Formula::inclusion(t("x y"), t("u v")).unwrap()
        );
        assert_eq!(
            parse("excl(x, y; u, v)").unwrap(),
            Formula::exclusion(t("x y"), t("u v")).unwrap()
        );
        assert_eq!(
            parse("(y) != (z)").unwrap(),
            Formula::tuple_diseq(t("y"), t("z")).unwrap()
        );
        let err = parse("incl(x y ; u)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ArityMismatch);
        let err = parse("(x y) != (u)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ArityMismatch);
    }

    #[test]
    fn biconditional_sugar() {
        let f = parse("(x = v <-> !R(y))").unwrap();
        assert_eq!(f, parse("(x = v & !R(y)) | (!(x = v) & R(y))").unwrap());
        assert!(parse("dep(x) <-> x = y").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("dep(x, y) &").unwrap_err();
        assert_eq!((e.line, e.column), (1, 12));
        assert_eq!(e.found, "end of input");
        let e = parse("x = y\n  & # z").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        let e = parse("!(dep(x))").unwrap_err();
        assert!(e.column >= 3);
        assert!(parse("x _||_").is_err());
        assert!(parse("E x").is_err());
        assert!(parse("").is_err());
        assert!(parse("(x = y").is_err());
        assert!(parse("x != y").is_err());
        assert!(!e.render("!(dep(x))").is_empty());
    }
}
