//! Capture-avoiding substitution for p-variables, the t-variable `k` and the
//! constant `*`.

use std::collections::BTreeSet;

use super::{fresh_name, ETerm, Name, PTerm, QTerm, TTerm, Term};

/// The two things a test can be substituted for.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TestSlot {
    K,
    Star,
}

pub trait Subst: Sized {
    /// `self[p/x]`
    fn subst_var(&self, x: &Name, p: &PTerm) -> Self;

    /// `self[t/k]` or `self[t/*]`.
    fn subst_test(&self, slot: TestSlot, t: &TTerm) -> Self;

    fn subst_k(&self, t: &TTerm) -> Self {
        self.subst_test(TestSlot::K, t)
    }

    fn subst_star(&self, t: &TTerm) -> Self {
        self.subst_test(TestSlot::Star, t)
    }

    fn rename(&self, from: &Name, to: &Name) -> Self {
        self.subst_var(from, &PTerm::Var(to.clone()))
    }
}

/// Renames binder `y` away from `avoid` when it would capture, returning the
/// binder name and body to use.
fn freshen(y: &Name, body: &ETerm, avoid: &BTreeSet<Name>, extra: Option<&Name>) -> (Name, ETerm) {
    if !avoid.contains(y) {
        return (y.clone(), body.clone());
    }
    let body_fv = body.free_vars();
    let y2 = fresh_name(y, |s| {
        avoid.contains(s) || body_fv.contains(s) || extra.is_some_and(|e| e.as_str() == s)
    });
    (y2.clone(), body.rename(y, &y2))
}

impl Subst for PTerm {
    fn subst_var(&self, x: &Name, p: &PTerm) -> Self {
        match self {
            PTerm::Var(y) if y == x => p.clone(),
            PTerm::Var(_) => self.clone(),
            PTerm::PairLam {
                x: y,
                xty,
                kty,
                body,
            } => {
                if y == x || !body.occurs_free(x.as_str()) {
                    return self.clone();
                }
                let (y2, body2) = freshen(y, body, &p.free_vars(), Some(x));
                PTerm::PairLam {
                    x: y2,
                    xty: xty.clone(),
                    kty: kty.clone(),
                    body: Box::new(body2.subst_var(x, p)),
                }
            }
            PTerm::KLam { kty, body } => PTerm::KLam {
                kty: kty.clone(),
                body: Box::new(body.subst_var(x, p)),
            },
        }
    }

    fn subst_test(&self, slot: TestSlot, t: &TTerm) -> Self {
        match (self, slot) {
            (PTerm::Var(_), _) => self.clone(),
            // both binder forms bind k
            (_, TestSlot::K) => self.clone(),
            (PTerm::PairLam { x, xty, kty, body }, TestSlot::Star) => {
                if !body.contains_star() {
                    return self.clone();
                }
                let (x2, body2) = freshen(x, body, &t.free_vars(), None);
                PTerm::PairLam {
                    x: x2,
                    xty: xty.clone(),
                    kty: kty.clone(),
                    body: Box::new(body2.subst_test(slot, t)),
                }
            }
            (PTerm::KLam { kty, body }, TestSlot::Star) => PTerm::KLam {
                kty: kty.clone(),
                body: Box::new(body.subst_test(slot, t)),
            },
        }
    }
}

impl Subst for TTerm {
    fn subst_var(&self, x: &Name, p: &PTerm) -> Self {
        match self {
            TTerm::Star | TTerm::K => self.clone(),
            TTerm::Pair(q, t) => {
                TTerm::Pair(Box::new(q.subst_var(x, p)), Box::new(t.subst_var(x, p)))
            }
            TTerm::XLam { x: y, xty, body } => {
                if y == x || !body.occurs_free(x.as_str()) {
                    return self.clone();
                }
                let (y2, body2) = freshen(y, body, &p.free_vars(), Some(x));
                TTerm::XLam {
                    x: y2,
                    xty: xty.clone(),
                    body: Box::new(body2.subst_var(x, p)),
                }
            }
        }
    }

    fn subst_test(&self, slot: TestSlot, t: &TTerm) -> Self {
        match self {
            TTerm::Star if slot == TestSlot::Star => t.clone(),
            TTerm::K if slot == TestSlot::K => t.clone(),
            TTerm::Star | TTerm::K => self.clone(),
            TTerm::Pair(q, rest) => TTerm::Pair(
                Box::new(q.subst_test(slot, t)),
                Box::new(rest.subst_test(slot, t)),
            ),
            TTerm::XLam { x, xty, body } => {
                let (x2, body2) = freshen(x, body, &t.free_vars(), None);
                TTerm::XLam {
                    x: x2,
                    xty: xty.clone(),
                    body: Box::new(body2.subst_test(slot, t)),
                }
            }
        }
    }
}

impl Subst for QTerm {
    fn subst_var(&self, x: &Name, p: &PTerm) -> Self {
        QTerm {
            kty: self.kty.clone(),
            body: Box::new(self.body.subst_var(x, p)),
        }
    }

    fn subst_test(&self, slot: TestSlot, t: &TTerm) -> Self {
        match slot {
            TestSlot::K => self.clone(),
            TestSlot::Star => QTerm {
                kty: self.kty.clone(),
                body: Box::new(self.body.subst_test(slot, t)),
            },
        }
    }
}

impl Subst for ETerm {
    fn subst_var(&self, x: &Name, p: &PTerm) -> Self {
        match self {
            ETerm::PApp(t, q) => {
                ETerm::PApp(Box::new(t.subst_var(x, p)), Box::new(q.subst_var(x, p)))
            }
            ETerm::QApp(q, t) => {
                ETerm::QApp(Box::new(q.subst_var(x, p)), Box::new(t.subst_var(x, p)))
            }
        }
    }

    fn subst_test(&self, slot: TestSlot, t: &TTerm) -> Self {
        match self {
            ETerm::PApp(s, p) => ETerm::PApp(
                Box::new(s.subst_test(slot, t)),
                Box::new(p.subst_test(slot, t)),
            ),
            ETerm::QApp(q, s) => ETerm::QApp(
                Box::new(q.subst_test(slot, t)),
                Box::new(s.subst_test(slot, t)),
            ),
        }
    }
}

impl Subst for Term {
    fn subst_var(&self, x: &Name, p: &PTerm) -> Self {
        match self {
            Term::P(a) => Term::P(a.subst_var(x, p)),
            Term::T(a) => Term::T(a.subst_var(x, p)),
            Term::Q(a) => Term::Q(a.subst_var(x, p)),
            Term::E(a) => Term::E(a.subst_var(x, p)),
        }
    }

    fn subst_test(&self, slot: TestSlot, t: &TTerm) -> Self {
        match self {
            Term::P(a) => Term::P(a.subst_test(slot, t)),
            Term::T(a) => Term::T(a.subst_test(slot, t)),
            Term::Q(a) => Term::Q(a.subst_test(slot, t)),
            Term::E(a) => Term::E(a.subst_test(slot, t)),
        }
    }
}
