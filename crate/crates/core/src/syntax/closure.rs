//! Opening and closing the test position, and `*`-composition.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{ETerm, Name, Subst, TTerm, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("term is already t-closed")]
    AlreadyClosed,
    #[error("term is not t-closed")]
    AlreadyOpen,
}

/// What occupies the free test position of a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TestPosition {
    None,
    K,
    Star,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeInfo {
    pub vars: BTreeSet<Name>,
    pub test: TestPosition,
}

pub fn free_info(term: &Term) -> FreeInfo {
    let test = match term {
        Term::P(_) | Term::Q(_) => TestPosition::None,
        Term::T(t) => spine_t(t),
        Term::E(u) => spine_e(u),
    };
    FreeInfo {
        vars: term.free_vars(),
        test,
    }
}

fn spine_t(t: &TTerm) -> TestPosition {
    match t {
        TTerm::Star => TestPosition::Star,
        TTerm::K => TestPosition::K,
        TTerm::Pair(_, t) => spine_t(t),
        TTerm::XLam { body, .. } => spine_e(body),
    }
}

fn spine_e(u: &ETerm) -> TestPosition {
    spine_t(u.test())
}

/// Conversion between a term with free `k` and its t-closed form `t_* = t[*/k]`.
pub trait TestClosure: Subst {
    fn test_position(&self) -> TestPosition;

    fn t_close(&self) -> Result<Self, ClosureError> {
        match self.test_position() {
            TestPosition::K => Ok(self.subst_k(&TTerm::Star)),
            _ => Err(ClosureError::AlreadyClosed),
        }
    }

    fn t_open(&self) -> Result<Self, ClosureError> {
        match self.test_position() {
            TestPosition::Star => Ok(self.subst_star(&TTerm::K)),
            _ => Err(ClosureError::AlreadyOpen),
        }
    }
}

impl TestClosure for TTerm {
    fn test_position(&self) -> TestPosition {
        spine_t(self)
    }
}

impl TestClosure for ETerm {
    fn test_position(&self) -> TestPosition {
        spine_e(self)
    }
}

/// `outer ⊛ inner = inner[outer/*]`, for a t-closed test or e-term `inner`.
pub fn star_compose<T: Subst>(outer: &TTerm, inner: &T) -> T {
    inner.subst_star(outer)
}

/// Body of a k-binder with `*` plugged in (`u_*`).
pub fn close_body(body: &ETerm) -> ETerm {
    body.subst_k(&TTerm::Star)
}
