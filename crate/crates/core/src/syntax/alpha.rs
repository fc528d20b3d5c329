//! α-equivalence. Bound p-variables are compared positionally; `k` is a fixed
//! token and binder annotations must agree exactly.

use super::{ETerm, Name, PTerm, QTerm, TTerm, Term};

/// Pairs of binders currently in scope, innermost last.
#[derive(Default)]
pub(crate) struct Scope {
    pairs: Vec<(Name, Name)>,
}

impl Scope {
    pub(crate) fn same_var(&self, a: &Name, b: &Name) -> bool {
        let ia = self.pairs.iter().rposition(|(l, _)| l == a);
        let ib = self.pairs.iter().rposition(|(_, r)| r == b);
        match (ia, ib) {
            (None, None) => a == b,
            (Some(i), Some(j)) => i == j,
            _ => false,
        }
    }

    pub(crate) fn under<R>(&mut self, a: &Name, b: &Name, f: impl FnOnce(&mut Self) -> R) -> R {
        self.pairs.push((a.clone(), b.clone()));
        let r = f(self);
        self.pairs.pop();
        r
    }
}

pub trait AlphaEq {
    fn alpha_eq(&self, other: &Self) -> bool;
}

fn p_eq(a: &PTerm, b: &PTerm, sc: &mut Scope) -> bool {
    match (a, b) {
        (PTerm::Var(x), PTerm::Var(y)) => sc.same_var(x, y),
        (
            PTerm::PairLam { x, xty, kty, body },
            PTerm::PairLam {
                x: y,
                xty: yty,
                kty: kty2,
                body: body2,
            },
        ) => xty == yty && kty == kty2 && sc.under(x, y, |sc| e_eq(body, body2, sc)),
        (
            PTerm::KLam { kty, body },
            PTerm::KLam {
                kty: kty2,
                body: body2,
            },
        ) => kty == kty2 && e_eq(body, body2, sc),
        _ => false,
    }
}

fn t_eq(a: &TTerm, b: &TTerm, sc: &mut Scope) -> bool {
    match (a, b) {
        (TTerm::Star, TTerm::Star) | (TTerm::K, TTerm::K) => true,
        (TTerm::Pair(p, t), TTerm::Pair(p2, t2)) => p_eq(p, p2, sc) && t_eq(t, t2, sc),
        (
            TTerm::XLam { x, xty, body },
            TTerm::XLam {
                x: y,
                xty: yty,
                body: body2,
            },
        ) => xty == yty && sc.under(x, y, |sc| e_eq(body, body2, sc)),
        _ => false,
    }
}

fn q_eq(a: &QTerm, b: &QTerm, sc: &mut Scope) -> bool {
    a.kty == b.kty && e_eq(&a.body, &b.body, sc)
}

fn e_eq(a: &ETerm, b: &ETerm, sc: &mut Scope) -> bool {
    match (a, b) {
        (ETerm::PApp(t, p), ETerm::PApp(t2, p2)) => t_eq(t, t2, sc) && p_eq(p, p2, sc),
        (ETerm::QApp(q, t), ETerm::QApp(q2, t2)) => q_eq(q, q2, sc) && t_eq(t, t2, sc),
        _ => false,
    }
}

impl AlphaEq for PTerm {
    fn alpha_eq(&self, other: &Self) -> bool {
        p_eq(self, other, &mut Scope::default())
    }
}

impl AlphaEq for TTerm {
    fn alpha_eq(&self, other: &Self) -> bool {
        t_eq(self, other, &mut Scope::default())
    }
}

impl AlphaEq for QTerm {
    fn alpha_eq(&self, other: &Self) -> bool {
        q_eq(self, other, &mut Scope::default())
    }
}

impl AlphaEq for ETerm {
    fn alpha_eq(&self, other: &Self) -> bool {
        e_eq(self, other, &mut Scope::default())
    }
}

impl AlphaEq for Term {
    fn alpha_eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Term::P(a), Term::P(b)) => a.alpha_eq(b),
            (Term::T(a), Term::T(b)) => a.alpha_eq(b),
            (Term::Q(a), Term::Q(b)) => a.alpha_eq(b),
            (Term::E(a), Term::E(b)) => a.alpha_eq(b),
            _ => false,
        }
    }
}
