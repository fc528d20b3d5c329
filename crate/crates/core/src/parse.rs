//! Concrete syntax.
//!
//! ptq terms:
//!
//! ```text
//! p ::= x | \(x:A,k:B). u | \k:A. u
//! t ::= * | k | <p, t> | \x:A. u
//! q ::= %k:A. u
//! u ::= t ; p | q ! t
//! ```
//!
//! Binder bodies extend as far right as possible, except that a
//! parenthesised e-term is complete on its own (an e-term can never be the
//! left operand of `;` or `!`), so `\x:A. (* ; x) ; y` is `(λx.(*;x)) ; y`.
//! Annotations may be omitted (`\(x,k). u`, `\k. u`) for reduction-only use.
//!
//! λ-terms use `\x:A. M`, left-associative juxtaposition, `[]` for the hole
//! and `[A]` for a hole annotated with its type.
//!
//! Judgments: `x:pA, y:p(A -> B) |> *:tB |- term : pA` and, for λ-terms with
//! holes, `x:A, []:B |- M : A`.

use thiserror::Error;

use crate::syntax::{
    ETerm, LambdaTerm, Name, PTerm, PtqType, QTerm, Role, Sort, TTerm, Term, Type, ANSWER_TYPE,
};
use crate::typing::{Anchor, AnchorKind, Judgment, LamEnv, LamJudgment, TypeEnv};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("expected a {expected}, found a {found}")]
    RoleMismatch { expected: Sort, found: Sort },
    #[error("`{0}` is reserved and cannot be used as a variable")]
    ReservedName(String),
    #[error("base type `o` is reserved for CPS answer types")]
    ReservedBaseType,
    #[error("variable `{0}` declared twice in the environment")]
    DuplicateVariable(String),
}

impl ParseError {
    pub fn kind(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "SyntaxError",
            ParseError::RoleMismatch { .. } => "RoleMismatch",
            ParseError::ReservedName(_) => "ReservedName",
            ParseError::ReservedBaseType => "ReservedBaseType",
            ParseError::DuplicateVariable(_) => "DuplicateVariable",
        }
    }
}

type Result<T> = std::result::Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Backslash,
    Percent,
    LParen,
    RParen,
    Lt,
    Gt,
    Comma,
    Dot,
    Colon,
    Semi,
    Bang,
    Star,
    Arrow,
    LBrack,
    RBrack,
    Anchor,
    Turnstile,
}

fn describe(tok: Option<&Tok>) -> String {
    match tok {
        None => "end of input".to_string(),
        Some(Tok::Ident(s)) => format!("`{s}`"),
        Some(t) => format!("{t:?}"),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'\\' => Tok::Backslash,
            b'%' => Tok::Percent,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'<' => Tok::Lt,
            b'>' => Tok::Gt,
            b',' => Tok::Comma,
            b'.' => Tok::Dot,
            b':' => Tok::Colon,
            b';' => Tok::Semi,
            b'!' => Tok::Bang,
            b'*' => Tok::Star,
            b'[' => Tok::LBrack,
            b']' => Tok::RBrack,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'|' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Anchor
            }
            b'|' if bytes.get(i + 1) == Some(&b'-') => {
                i += 1;
                Tok::Turnstile
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        };
        i += 1;
        out.push((tok, start));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    /// Reject the reserved base type `o` in annotations.
    forbid_answer_type: bool,
}

impl Parser {
    fn new(src: &str, forbid_answer_type: bool) -> Result<Self> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            end: src.len(),
            forbid_answer_type,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(ParseError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.error(format!("expected {tok:?}, found {}", describe(self.peek())))
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => self.error(format!("unexpected trailing {}", describe(Some(t)))),
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            t => {
                let d = describe(t);
                self.error(format!("expected an identifier, found {d}"))
            }
        }
    }

    fn var_name(&mut self, allow_reserved: bool) -> Result<Name> {
        let s = self.ident()?;
        if !s.starts_with(|c: char| c.is_ascii_lowercase()) {
            return Err(ParseError::Syntax {
                pos: self.offset(),
                msg: format!("variables start with a lowercase letter, found `{s}`"),
            });
        }
        if !allow_reserved && (s == "k" || s == ANSWER_TYPE) {
            return Err(ParseError::ReservedName(s));
        }
        Ok(Name::new(&s))
    }

    fn expect_k(&mut self) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "k" => {
                self.pos += 1;
                Ok(())
            }
            t => {
                let d = describe(t);
                self.error(format!("expected the t-variable `k`, found {d}"))
            }
        }
    }

    // ---- types ----

    fn base_type(&self, s: &str) -> Result<Type> {
        if s == ANSWER_TYPE {
            if self.forbid_answer_type {
                return Err(ParseError::ReservedBaseType);
            }
            return Ok(Type::base(s));
        }
        if s.starts_with(|c: char| c.is_ascii_uppercase()) {
            Ok(Type::base(s))
        } else {
            self.error(format!(
                "base types start with an uppercase letter, found `{s}`"
            ))
        }
    }

    fn ty(&mut self) -> Result<Type> {
        let dom = self.ty_atom()?;
        if self.eat(&Tok::Arrow) {
            Ok(Type::arrow(dom, self.ty()?))
        } else {
            Ok(dom)
        }
    }

    fn ty_atom(&mut self) -> Result<Type> {
        if self.eat(&Tok::LParen) {
            let t = self.ty()?;
            self.expect(Tok::RParen)?;
            return Ok(t);
        }
        let s = self.ident()?;
        self.base_type(&s)
    }

    fn annotation(&mut self) -> Result<Option<Type>> {
        if self.eat(&Tok::Colon) {
            Ok(Some(self.ty()?))
        } else {
            Ok(None)
        }
    }

    /// `pA`, `t(A -> B)`, ...
    fn ptq_type(&mut self) -> Result<PtqType> {
        let s = self.ident()?;
        let role = match s.as_bytes()[0] {
            b'p' => Role::P,
            b't' => Role::T,
            b'q' => Role::Q,
            _ => {
                return self.error(format!(
                    "expected a role-prefixed type like `pA`, found `{s}`"
                ))
            }
        };
        let carrier = if s.len() == 1 {
            self.ty_atom()?
        } else {
            self.base_type(&s[1..])?
        };
        Ok(PtqType::new(role, carrier))
    }

    // ---- ptq terms ----

    /// Returns the term and whether it is a parenthesised e-term.
    fn operand(&mut self) -> Result<(Term, bool)> {
        match self.peek() {
            Some(Tok::Star) => {
                self.pos += 1;
                Ok((Term::T(TTerm::Star), false))
            }
            Some(Tok::Ident(s)) if s == "k" => {
                self.pos += 1;
                Ok((Term::T(TTerm::K), false))
            }
            Some(Tok::Ident(_)) => Ok((Term::P(PTerm::Var(self.var_name(false)?)), false)),
            Some(Tok::Lt) => {
                self.pos += 1;
                let p = into_p(self.expr()?)?;
                self.expect(Tok::Comma)?;
                let t = into_t(self.expr()?)?;
                self.expect(Tok::Gt)?;
                Ok((Term::T(TTerm::pair(p, t)), false))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                let closed = inner.sort() == Sort::E;
                Ok((inner, closed))
            }
            Some(Tok::Backslash) => {
                self.pos += 1;
                self.binder().map(|t| (t, false))
            }
            Some(Tok::Percent) => {
                self.pos += 1;
                self.expect_k()?;
                let kty = self.annotation()?;
                self.expect(Tok::Dot)?;
                let body = into_e(self.expr()?)?;
                Ok((Term::Q(QTerm::new(kty, body)), false))
            }
            t => {
                let d = describe(t);
                self.error(format!("expected a term, found {d}"))
            }
        }
    }

    fn binder(&mut self) -> Result<Term> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let x = self.var_name(false)?;
                let xty = self.annotation()?;
                self.expect(Tok::Comma)?;
                self.expect_k()?;
                let kty = self.annotation()?;
                self.expect(Tok::RParen)?;
                self.expect(Tok::Dot)?;
                let body = into_e(self.expr()?)?;
                Ok(Term::P(PTerm::PairLam {
                    x,
                    xty,
                    kty,
                    body: Box::new(body),
                }))
            }
            Some(Tok::Ident(s)) if s == "k" => {
                self.pos += 1;
                let kty = self.annotation()?;
                self.expect(Tok::Dot)?;
                let body = into_e(self.expr()?)?;
                Ok(Term::P(PTerm::k_lam(kty, body)))
            }
            _ => {
                let x = self.var_name(false)?;
                let xty = self.annotation()?;
                self.expect(Tok::Dot)?;
                let body = into_e(self.expr()?)?;
                Ok(Term::T(TTerm::XLam {
                    x,
                    xty,
                    body: Box::new(body),
                }))
            }
        }
    }

    fn expr(&mut self) -> Result<Term> {
        let (lhs, closed) = self.operand()?;
        if closed {
            return Ok(lhs);
        }
        match self.peek() {
            Some(Tok::Semi) => {
                self.pos += 1;
                let t = into_t(lhs)?;
                let (rhs, _) = self.operand()?;
                Ok(Term::E(ETerm::pcomp(t, into_p(rhs)?)))
            }
            Some(Tok::Bang) => {
                self.pos += 1;
                let q = into_q(lhs)?;
                let (rhs, _) = self.operand()?;
                Ok(Term::E(ETerm::qapp(q, into_t(rhs)?)))
            }
            _ => Ok(lhs),
        }
    }

    // ---- λ-terms ----

    fn lam(&mut self) -> Result<LambdaTerm> {
        let mut acc: Option<LambdaTerm> = None;
        loop {
            let atom = match self.peek() {
                Some(Tok::Backslash) => {
                    self.pos += 1;
                    let x = self.var_name(true)?;
                    let ty = self.annotation()?;
                    self.expect(Tok::Dot)?;
                    let body = self.lam()?;
                    let abs = LambdaTerm::Abs {
                        x,
                        ty,
                        body: Box::new(body),
                    };
                    return Ok(match acc {
                        Some(f) => LambdaTerm::app(f, abs),
                        None => abs,
                    });
                }
                Some(Tok::Ident(_)) | Some(Tok::LParen) | Some(Tok::LBrack) => self.lam_atom()?,
                _ => break,
            };
            acc = Some(match acc {
                Some(f) => LambdaTerm::app(f, atom),
                None => atom,
            });
        }
        match acc {
            Some(t) => Ok(t),
            None => {
                let d = describe(self.peek());
                self.error(format!("expected a λ-term, found {d}"))
            }
        }
    }

    fn lam_atom(&mut self) -> Result<LambdaTerm> {
        match self.peek() {
            Some(Tok::Ident(_)) => Ok(LambdaTerm::Var(self.var_name(true)?)),
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.lam()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::LBrack) => {
                self.pos += 1;
                if self.eat(&Tok::RBrack) {
                    return Ok(LambdaTerm::Hole(None));
                }
                let ty = self.ty()?;
                self.expect(Tok::RBrack)?;
                Ok(LambdaTerm::Hole(Some(ty)))
            }
            t => {
                let d = describe(t);
                self.error(format!("expected a λ-term, found {d}"))
            }
        }
    }

    // ---- judgments ----

    fn ptq_judgment(&mut self) -> Result<Judgment> {
        let mut env = TypeEnv::default();
        while !matches!(self.peek(), Some(Tok::Anchor) | Some(Tok::Turnstile)) {
            if !env.gamma.is_empty() {
                self.expect(Tok::Comma)?;
            }
            let x = self.var_name(false)?;
            self.expect(Tok::Colon)?;
            let pty = self.ptq_type()?;
            if pty.role != Role::P {
                return Err(ParseError::RoleMismatch {
                    expected: Sort::P,
                    found: role_sort(pty.role),
                });
            }
            if env.gamma.insert(x.clone(), pty.carrier).is_some() {
                return Err(ParseError::DuplicateVariable(x.to_string()));
            }
        }
        if self.eat(&Tok::Anchor) {
            let kind = if self.eat(&Tok::Star) {
                AnchorKind::Star
            } else {
                self.expect_k()?;
                AnchorKind::K
            };
            self.expect(Tok::Colon)?;
            let pty = self.ptq_type()?;
            if pty.role != Role::T {
                return Err(ParseError::RoleMismatch {
                    expected: Sort::T,
                    found: role_sort(pty.role),
                });
            }
            env.anchor = Some(Anchor {
                kind,
                carrier: pty.carrier,
            });
        }
        self.expect(Tok::Turnstile)?;
        let subject = self.expr()?;
        let claimed = if self.eat(&Tok::Colon) {
            Some(self.ptq_type()?)
        } else {
            None
        };
        self.finish()?;
        Ok(Judgment {
            env,
            subject,
            claimed,
        })
    }

    fn lam_judgment(&mut self) -> Result<LamJudgment> {
        let mut env = LamEnv::default();
        let mut first = true;
        while self.peek() != Some(&Tok::Turnstile) {
            if !first {
                self.expect(Tok::Comma)?;
            }
            first = false;
            if self.eat(&Tok::LBrack) {
                self.expect(Tok::RBrack)?;
                self.expect(Tok::Colon)?;
                env.hole = Some(self.ty()?);
                continue;
            }
            let x = self.var_name(true)?;
            self.expect(Tok::Colon)?;
            let ty = self.ty()?;
            if env.vars.insert(x.clone(), ty).is_some() {
                return Err(ParseError::DuplicateVariable(x.to_string()));
            }
        }
        self.expect(Tok::Turnstile)?;
        let subject = self.lam()?;
        let claimed = if self.eat(&Tok::Colon) {
            Some(self.ty()?)
        } else {
            None
        };
        self.finish()?;
        Ok(LamJudgment {
            env,
            subject,
            claimed,
        })
    }
}

fn role_sort(r: Role) -> Sort {
    match r {
        Role::P => Sort::P,
        Role::T => Sort::T,
        Role::Q => Sort::Q,
    }
}

fn mismatch<T>(expected: Sort, found: &Term) -> Result<T> {
    Err(ParseError::RoleMismatch {
        expected,
        found: found.sort(),
    })
}

fn into_p(t: Term) -> Result<PTerm> {
    match t {
        Term::P(p) => Ok(p),
        other => mismatch(Sort::P, &other),
    }
}

fn into_t(t: Term) -> Result<TTerm> {
    match t {
        Term::T(t) => Ok(t),
        other => mismatch(Sort::T, &other),
    }
}

fn into_q(t: Term) -> Result<QTerm> {
    match t {
        Term::Q(q) => Ok(q),
        other => mismatch(Sort::Q, &other),
    }
}

fn into_e(t: Term) -> Result<ETerm> {
    match t {
        Term::E(u) => Ok(u),
        other => mismatch(Sort::E, &other),
    }
}

/// Parses a ptq term of any sort. The base type `o` is rejected.
pub fn parse_term(src: &str) -> Result<Term> {
    let mut p = Parser::new(src, true)?;
    let t = p.expr()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_pterm(src: &str) -> Result<PTerm> {
    into_p(parse_term(src)?)
}

pub fn parse_tterm(src: &str) -> Result<TTerm> {
    into_t(parse_term(src)?)
}

pub fn parse_qterm(src: &str) -> Result<QTerm> {
    into_q(parse_term(src)?)
}

pub fn parse_eterm(src: &str) -> Result<ETerm> {
    into_e(parse_term(src)?)
}

/// Parses a λ-term (holes allowed, `o` allowed in annotations).
pub fn parse_lambda(src: &str) -> Result<LambdaTerm> {
    let mut p = Parser::new(src, false)?;
    let t = p.lam()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_type(src: &str) -> Result<Type> {
    let mut p = Parser::new(src, false)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_ptq_type(src: &str) -> Result<PtqType> {
    let mut p = Parser::new(src, false)?;
    let t = p.ptq_type()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_judgment(src: &str) -> Result<Judgment> {
    Parser::new(src, true)?.ptq_judgment()
}

pub fn parse_lam_judgment(src: &str) -> Result<LamJudgment> {
    Parser::new(src, false)?.lam_judgment()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::AlphaEq;

    #[test]
    fn parenthesised_e_term_closes_a_binder_body() {
        let u = parse_eterm(r"\x:A. (* ; x) ; y").unwrap();
        let expected = ETerm::pcomp(
            TTerm::x_lam(
                "x",
                Some(Type::base("A")),
                ETerm::pcomp(TTerm::Star, PTerm::var("x")),
            ),
            PTerm::var("y"),
        );
        assert_eq!(u, expected);
    }

    #[test]
    fn binder_body_extends_right() {
        let u = parse_eterm(r"* ; \k:A. k ; x").unwrap();
        let expected = ETerm::pcomp(
            TTerm::Star,
            PTerm::k_lam(
                Some(Type::base("A")),
                ETerm::pcomp(TTerm::K, PTerm::var("x")),
            ),
        );
        assert_eq!(u, expected);
    }

    #[test]
    fn q_application_and_pairs() {
        let u = parse_eterm(r"<y,*> ; \(x:A,k:A). (%k:A. k;x) ! k").unwrap();
        let ETerm::PApp(t, p) = &u else { panic!() };
        assert_eq!(**t, TTerm::pair(PTerm::var("y"), TTerm::Star));
        let PTerm::PairLam { body, .. } = &**p else {
            panic!()
        };
        assert!(matches!(**body, ETerm::QApp(..)));
    }

    #[test]
    fn sorts_are_enforced() {
        assert!(matches!(
            parse_term(r"* ; %k:A. k ; x"),
            Err(ParseError::RoleMismatch {
                expected: Sort::P,
                found: Sort::Q
            })
        ));
        assert!(matches!(
            parse_term("x ! *"),
            Err(ParseError::RoleMismatch {
                expected: Sort::Q,
                found: Sort::P
            })
        ));
        assert!(matches!(
            parse_term("x ; y"),
            Err(ParseError::RoleMismatch { .. })
        ));
    }

    #[test]
    fn reserved_names_and_types() {
        assert_eq!(
            parse_term(r"\o:A. * ; o"),
            Err(ParseError::ReservedName("o".into()))
        );
        assert_eq!(
            parse_term(r"\x:o. * ; x"),
            Err(ParseError::ReservedBaseType)
        );
        assert!(parse_lambda(r"\k:o. k").is_ok());
    }

    #[test]
    fn unannotated_mode() {
        let p = parse_pterm(r"\(x,k). k ; x").unwrap();
        assert_eq!(p.to_string(), r"\(x,k). k ; x");
    }

    #[test]
    fn printer_output_reparses() {
        for src in [
            r"\x:A. (* ; x) ; y",
            r"<y, *> ; \(x:A,k:A). (%k:A. k ; x) ! k",
            r"(%k:A -> B. k ; f) ! \x:A. (%k:B. k ; x) ! <x, *>",
            r"<\(x:A,k:A). k ; x, <y, *>> ; \k:A. <z, k> ; w",
        ] {
            let t = parse_term(src).unwrap();
            let again = parse_term(&t.to_string()).unwrap();
            assert!(t.alpha_eq(&again), "{src} vs {t}");
        }
    }

    #[test]
    fn lambda_syntax() {
        let m = parse_lambda(r"(\x:X. x) y z").unwrap();
        assert_eq!(m.to_string(), r"(\x:X. x) y z");
        let m = parse_lambda(r"f (\x. x) [] [X -> X]").unwrap();
        assert_eq!(m.to_string(), r"f (\x. x) [] [X -> X]");
        let m = parse_lambda(r"x \y. y").unwrap();
        assert_eq!(
            m,
            LambdaTerm::app(
                LambdaTerm::var("x"),
                LambdaTerm::abs("y", None, LambdaTerm::var("y"))
            )
        );
    }

    #[test]
    fn judgments() {
        let j = parse_judgment(r"x:pA, y:p(A->B) |> *:tB |- * ; x : pA").unwrap();
        assert_eq!(j.env.gamma.len(), 2);
        assert_eq!(j.env.anchor.as_ref().unwrap().kind, AnchorKind::Star);
        assert_eq!(j.claimed, Some(PtqType::p(Type::base("A"))));
        let j = parse_judgment(r"|- \(x:A,k:A). k ; x : p(A -> A)").unwrap();
        assert!(j.env.gamma.is_empty());
        assert_eq!(
            parse_judgment("x:pA, x:pB |- x : pA"),
            Err(ParseError::DuplicateVariable("x".into()))
        );
        let lj = parse_lam_judgment("y:A, []:A -> B |- [] y : B").unwrap();
        assert_eq!(
            lj.env.hole,
            Some(Type::arrow(Type::base("A"), Type::base("B")))
        );
    }
}
