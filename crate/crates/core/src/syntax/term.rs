//! The four term sorts of the calculus.
//!
//! p-terms (proofs) are programs, t-terms (tests) are continuations,
//! q-terms are suspended computations waiting for a test, and e-terms are
//! the compositions `t ; p` and `q ! t`, the only sort that reduces.
//!
//! There is a single t-variable, always named `k`. It is represented by
//! [`TTerm::K`] and bound by the p- and q-binders; the constant `*` is
//! [`TTerm::Star`].

use std::collections::BTreeSet;
use std::fmt;

use super::{Name, Type};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum PTerm {
    Var(Name),
    /// `λ<x,k>.u`
    PairLam {
        x: Name,
        xty: Option<Type>,
        kty: Option<Type>,
        body: Box<ETerm>,
    },
    /// `λk.u`
    KLam {
        kty: Option<Type>,
        body: Box<ETerm>,
    },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TTerm {
    Star,
    K,
    Pair(Box<PTerm>, Box<TTerm>),
    /// `λx.u`
    XLam {
        x: Name,
        xty: Option<Type>,
        body: Box<ETerm>,
    },
}

/// `λ̄k.u`
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QTerm {
    pub kty: Option<Type>,
    pub body: Box<ETerm>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ETerm {
    /// `t ; p`
    PApp(Box<TTerm>, Box<PTerm>),
    /// `q ! t`
    QApp(Box<QTerm>, Box<TTerm>),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sort {
    P,
    T,
    Q,
    E,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::P => "p-term",
            Sort::T => "t-term",
            Sort::Q => "q-term",
            Sort::E => "e-term",
        })
    }
}

/// A term of any sort.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    P(PTerm),
    T(TTerm),
    Q(QTerm),
    E(ETerm),
}

impl Term {
    pub fn sort(&self) -> Sort {
        match self {
            Term::P(_) => Sort::P,
            Term::T(_) => Sort::T,
            Term::Q(_) => Sort::Q,
            Term::E(_) => Sort::E,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        match self {
            Term::P(p) => p.free_vars(),
            Term::T(t) => t.free_vars(),
            Term::Q(q) => q.free_vars(),
            Term::E(u) => u.free_vars(),
        }
    }

    pub fn as_e(&self) -> Option<&ETerm> {
        match self {
            Term::E(u) => Some(u),
            _ => None,
        }
    }
}

impl From<PTerm> for Term {
    fn from(p: PTerm) -> Self {
        Term::P(p)
    }
}
impl From<TTerm> for Term {
    fn from(t: TTerm) -> Self {
        Term::T(t)
    }
}
impl From<QTerm> for Term {
    fn from(q: QTerm) -> Self {
        Term::Q(q)
    }
}
impl From<ETerm> for Term {
    fn from(u: ETerm) -> Self {
        Term::E(u)
    }
}

impl PTerm {
    pub fn var(x: &str) -> Self {
        PTerm::Var(Name::new(x))
    }

    pub fn pair_lam(x: &str, xty: Option<Type>, kty: Option<Type>, body: ETerm) -> Self {
        PTerm::PairLam {
            x: Name::new(x),
            xty,
            kty,
            body: Box::new(body),
        }
    }

    pub fn k_lam(kty: Option<Type>, body: ETerm) -> Self {
        PTerm::KLam {
            kty,
            body: Box::new(body),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            PTerm::Var(y) => y.as_str() == x,
            PTerm::PairLam { x: y, body, .. } => y.as_str() != x && body.occurs_free(x),
            PTerm::KLam { body, .. } => body.occurs_free(x),
        }
    }

    pub(crate) fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            PTerm::Var(y) => {
                if !bound.contains(y) {
                    out.insert(y.clone());
                }
            }
            PTerm::PairLam { x, body, .. } => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            PTerm::KLam { body, .. } => body.collect_free(bound, out),
        }
    }

    /// Any occurrence of `*`, bound positions included.
    pub fn contains_star(&self) -> bool {
        match self {
            PTerm::Var(_) => false,
            PTerm::PairLam { body, .. } | PTerm::KLam { body, .. } => body.contains_star(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            PTerm::Var(_) => 1,
            PTerm::PairLam { body, .. } | PTerm::KLam { body, .. } => 1 + body.size(),
        }
    }
}

impl TTerm {
    pub fn pair(p: PTerm, t: TTerm) -> Self {
        TTerm::Pair(Box::new(p), Box::new(t))
    }

    pub fn x_lam(x: &str, xty: Option<Type>, body: ETerm) -> Self {
        TTerm::XLam {
            x: Name::new(x),
            xty,
            body: Box::new(body),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            TTerm::Star | TTerm::K => false,
            TTerm::Pair(p, t) => p.occurs_free(x) || t.occurs_free(x),
            TTerm::XLam { x: y, body, .. } => y.as_str() != x && body.occurs_free(x),
        }
    }

    pub(crate) fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            TTerm::Star | TTerm::K => {}
            TTerm::Pair(p, t) => {
                p.collect_free(bound, out);
                t.collect_free(bound, out);
            }
            TTerm::XLam { x, body, .. } => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Free occurrences of the t-variable `k`.
    pub fn has_free_k(&self) -> bool {
        match self {
            TTerm::Star => false,
            TTerm::K => true,
            // p-terms bind k in both of their binder forms
            TTerm::Pair(_, t) => t.has_free_k(),
            TTerm::XLam { body, .. } => body.has_free_k(),
        }
    }

    pub fn contains_star(&self) -> bool {
        match self {
            TTerm::Star => true,
            TTerm::K => false,
            TTerm::Pair(p, t) => p.contains_star() || t.contains_star(),
            TTerm::XLam { body, .. } => body.contains_star(),
        }
    }

    pub fn is_t_closed(&self) -> bool {
        !self.has_free_k()
    }

    pub fn size(&self) -> usize {
        match self {
            TTerm::Star | TTerm::K => 1,
            TTerm::Pair(p, t) => 1 + p.size() + t.size(),
            TTerm::XLam { body, .. } => 1 + body.size(),
        }
    }
}

impl QTerm {
    pub fn new(kty: Option<Type>, body: ETerm) -> Self {
        QTerm {
            kty,
            body: Box::new(body),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        self.body.free_vars()
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        self.body.occurs_free(x)
    }

    pub(crate) fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        self.body.collect_free(bound, out)
    }

    pub fn contains_star(&self) -> bool {
        self.body.contains_star()
    }
}

impl ETerm {
    /// `t ; p`
    pub fn pcomp(t: TTerm, p: PTerm) -> Self {
        ETerm::PApp(Box::new(t), Box::new(p))
    }

    /// `q ! t`
    pub fn qapp(q: QTerm, t: TTerm) -> Self {
        ETerm::QApp(Box::new(q), Box::new(t))
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            ETerm::PApp(t, p) => t.occurs_free(x) || p.occurs_free(x),
            ETerm::QApp(q, t) => q.occurs_free(x) || t.occurs_free(x),
        }
    }

    pub(crate) fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            ETerm::PApp(t, p) => {
                t.collect_free(bound, out);
                p.collect_free(bound, out);
            }
            ETerm::QApp(q, t) => {
                q.collect_free(bound, out);
                t.collect_free(bound, out);
            }
        }
    }

    pub fn has_free_k(&self) -> bool {
        match self {
            ETerm::PApp(t, _) | ETerm::QApp(_, t) => t.has_free_k(),
        }
    }

    pub fn contains_star(&self) -> bool {
        match self {
            ETerm::PApp(t, p) => t.contains_star() || p.contains_star(),
            ETerm::QApp(q, t) => q.contains_star() || t.contains_star(),
        }
    }

    pub fn is_t_closed(&self) -> bool {
        !self.has_free_k()
    }

    /// The test in head position.
    pub fn test(&self) -> &TTerm {
        match self {
            ETerm::PApp(t, _) | ETerm::QApp(_, t) => t,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            ETerm::PApp(t, p) => 1 + t.size() + p.size(),
            ETerm::QApp(q, t) => 2 + q.body.size() + t.size(),
        }
    }
}

fn fmt_ann(f: &mut fmt::Formatter<'_>, ty: &Option<Type>) -> fmt::Result {
    match ty {
        Some(ty) => write!(f, ":{ty}"),
        None => Ok(()),
    }
}

impl fmt::Display for PTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PTerm::Var(x) => write!(f, "{x}"),
            PTerm::PairLam { x, xty, kty, body } => {
                write!(f, "\\({x}")?;
                fmt_ann(f, xty)?;
                f.write_str(",k")?;
                fmt_ann(f, kty)?;
                write!(f, "). {body}")
            }
            PTerm::KLam { kty, body } => {
                f.write_str("\\k")?;
                fmt_ann(f, kty)?;
                write!(f, ". {body}")
            }
        }
    }
}

impl fmt::Display for TTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TTerm::Star => f.write_str("*"),
            TTerm::K => f.write_str("k"),
            TTerm::Pair(p, t) => write!(f, "<{p}, {t}>"),
            TTerm::XLam { x, xty, body } => {
                write!(f, "\\{x}")?;
                fmt_ann(f, xty)?;
                write!(f, ". {body}")
            }
        }
    }
}

impl fmt::Display for QTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("%k")?;
        fmt_ann(f, &self.kty)?;
        write!(f, ". {}", self.body)
    }
}

impl fmt::Display for ETerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ETerm::PApp(t, p) => match &**t {
                TTerm::XLam { .. } => write!(f, "({t}) ; {p}"),
                _ => write!(f, "{t} ; {p}"),
            },
            ETerm::QApp(q, t) => write!(f, "({q}) ! {t}"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::P(p) => p.fmt(f),
            Term::T(t) => t.fmt(f),
            Term::Q(q) => q.fmt(f),
            Term::E(u) => u.fmt(f),
        }
    }
}

macro_rules! debug_as_display {
    ($($t:ty),*) => {$(
        impl fmt::Debug for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(self, f)
            }
        }
    )*};
}
debug_as_display!(PTerm, TTerm, QTerm, ETerm, Term);
