//! λ-terms, possibly containing the hole constant `□`.
//!
//! The same type serves as the source language of the translations, the
//! terms handled by the reference evaluators, and the target of readback.
//! A hole may carry its type; readback produces unannotated holes whose type
//! is declared once in the judgment environment.

use std::collections::BTreeSet;
use std::fmt;

use super::alpha::Scope;
use super::{fresh_name, Name, Type};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum LambdaTerm {
    Var(Name),
    Hole(Option<Type>),
    Abs {
        x: Name,
        ty: Option<Type>,
        body: Box<LambdaTerm>,
    },
    App(Box<LambdaTerm>, Box<LambdaTerm>),
}

impl LambdaTerm {
    pub fn var(x: &str) -> Self {
        LambdaTerm::Var(Name::new(x))
    }

    pub fn hole() -> Self {
        LambdaTerm::Hole(None)
    }

    pub fn abs(x: &str, ty: Option<Type>, body: LambdaTerm) -> Self {
        LambdaTerm::Abs {
            x: Name::new(x),
            ty,
            body: Box::new(body),
        }
    }

    pub fn app(f: LambdaTerm, a: LambdaTerm) -> Self {
        LambdaTerm::App(Box::new(f), Box::new(a))
    }

    /// A value is anything that is not an application.
    pub fn is_value(&self) -> bool {
        !matches!(self, LambdaTerm::App(..))
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            LambdaTerm::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            LambdaTerm::Hole(_) => {}
            LambdaTerm::Abs { x, body, .. } => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            LambdaTerm::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
        }
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            LambdaTerm::Var(y) => y.as_str() == x,
            LambdaTerm::Hole(_) => false,
            LambdaTerm::Abs { x: y, body, .. } => y.as_str() != x && body.occurs_free(x),
            LambdaTerm::App(f, a) => f.occurs_free(x) || a.occurs_free(x),
        }
    }

    pub fn contains_hole(&self) -> bool {
        match self {
            LambdaTerm::Var(_) => false,
            LambdaTerm::Hole(_) => true,
            LambdaTerm::Abs { body, .. } => body.contains_hole(),
            LambdaTerm::App(f, a) => f.contains_hole() || a.contains_hole(),
        }
    }

    /// Number of application nodes.
    pub fn app_count(&self) -> usize {
        match self {
            LambdaTerm::Var(_) | LambdaTerm::Hole(_) => 0,
            LambdaTerm::Abs { body, .. } => body.app_count(),
            LambdaTerm::App(f, a) => 1 + f.app_count() + a.app_count(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            LambdaTerm::Var(_) | LambdaTerm::Hole(_) => 1,
            LambdaTerm::Abs { body, .. } => 1 + body.size(),
            LambdaTerm::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    /// Capture-avoiding `self[n/x]`.
    pub fn subst_var(&self, x: &Name, n: &LambdaTerm) -> LambdaTerm {
        self.subst_with(&|t| matches!(t, LambdaTerm::Var(y) if y == x), Some(x), n)
    }

    /// Hole composition `self ⊛ n = self[n/□]`. Binders of `self` are renamed
    /// so free variables of `n` stay free.
    pub fn fill_hole(&self, n: &LambdaTerm) -> LambdaTerm {
        if !self.contains_hole() {
            return self.clone();
        }
        self.subst_with(&|t| matches!(t, LambdaTerm::Hole(_)), None, n)
    }

    /// `self[□/x]`
    pub fn var_to_hole(&self, x: &Name) -> LambdaTerm {
        self.subst_var(x, &LambdaTerm::hole())
    }

    fn mentions_target(&self, target: &dyn Fn(&LambdaTerm) -> bool, var: Option<&Name>) -> bool {
        match var {
            Some(x) => self.occurs_free(x.as_str()),
            None => {
                debug_assert!(target(&LambdaTerm::hole()));
                self.contains_hole()
            }
        }
    }

    fn subst_with(
        &self,
        target: &dyn Fn(&LambdaTerm) -> bool,
        var: Option<&Name>,
        n: &LambdaTerm,
    ) -> LambdaTerm {
        if target(self) {
            return n.clone();
        }
        match self {
            LambdaTerm::Var(_) | LambdaTerm::Hole(_) => self.clone(),
            LambdaTerm::App(f, a) => LambdaTerm::App(
                Box::new(f.subst_with(target, var, n)),
                Box::new(a.subst_with(target, var, n)),
            ),
            LambdaTerm::Abs { x: y, ty, body } => {
                if var == Some(y) || !body.mentions_target(target, var) {
                    return self.clone();
                }
                let nfv = n.free_vars();
                let (y2, body2) = if nfv.contains(y) {
                    let bfv = body.free_vars();
                    let y2 = fresh_name(y, |s| {
                        nfv.contains(s) || bfv.contains(s) || var.is_some_and(|v| v.as_str() == s)
                    });
                    let renamed = body.subst_var(y, &LambdaTerm::Var(y2.clone()));
                    (y2, renamed)
                } else {
                    (y.clone(), (**body).clone())
                };
                LambdaTerm::Abs {
                    x: y2,
                    ty: ty.clone(),
                    body: Box::new(body2.subst_with(target, var, n)),
                }
            }
        }
    }

    pub fn alpha_eq(&self, other: &LambdaTerm) -> bool {
        lam_eq(self, other, &mut Scope::default())
    }

    /// Every term reachable by contracting exactly one β-redex, at any
    /// position (under binders included).
    pub fn one_step_reducts(&self) -> Vec<LambdaTerm> {
        let mut out = Vec::new();
        match self {
            LambdaTerm::Var(_) | LambdaTerm::Hole(_) => {}
            LambdaTerm::Abs { x, ty, body } => {
                for b in body.one_step_reducts() {
                    out.push(LambdaTerm::Abs {
                        x: x.clone(),
                        ty: ty.clone(),
                        body: Box::new(b),
                    });
                }
            }
            LambdaTerm::App(f, a) => {
                if let LambdaTerm::Abs { x, body, .. } = &**f {
                    out.push(body.subst_var(x, a));
                }
                for f2 in f.one_step_reducts() {
                    out.push(LambdaTerm::App(Box::new(f2), a.clone()));
                }
                for a2 in a.one_step_reducts() {
                    out.push(LambdaTerm::App(f.clone(), Box::new(a2)));
                }
            }
        }
        out
    }

    /// Drops every binder and hole annotation.
    pub fn erase(&self) -> LambdaTerm {
        match self {
            LambdaTerm::Var(_) => self.clone(),
            LambdaTerm::Hole(_) => LambdaTerm::Hole(None),
            LambdaTerm::Abs { x, body, .. } => LambdaTerm::Abs {
                x: x.clone(),
                ty: None,
                body: Box::new(body.erase()),
            },
            LambdaTerm::App(f, a) => LambdaTerm::app(f.erase(), a.erase()),
        }
    }
}

fn lam_eq(a: &LambdaTerm, b: &LambdaTerm, sc: &mut Scope) -> bool {
    match (a, b) {
        (LambdaTerm::Var(x), LambdaTerm::Var(y)) => sc.same_var(x, y),
        (LambdaTerm::Hole(s), LambdaTerm::Hole(t)) => s == t,
        (
            LambdaTerm::Abs { x, ty, body },
            LambdaTerm::Abs {
                x: y,
                ty: ty2,
                body: body2,
            },
        ) => ty == ty2 && sc.under(x, y, |sc| lam_eq(body, body2, sc)),
        (LambdaTerm::App(f, a), LambdaTerm::App(g, b)) => lam_eq(f, g, sc) && lam_eq(a, b, sc),
        _ => false,
    }
}

impl LambdaTerm {
    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaTerm::Var(_) | LambdaTerm::Hole(_) => write!(f, "{self}"),
            _ => write!(f, "({self})"),
        }
    }
}

impl fmt::Display for LambdaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaTerm::Var(x) => write!(f, "{x}"),
            LambdaTerm::Hole(None) => f.write_str("[]"),
            LambdaTerm::Hole(Some(ty)) => write!(f, "[{ty}]"),
            LambdaTerm::Abs { x, ty, body } => {
                write!(f, "\\{x}")?;
                if let Some(ty) = ty {
                    write!(f, ":{ty}")?;
                }
                write!(f, ". {body}")
            }
            LambdaTerm::App(fun, arg) => {
                match &**fun {
                    LambdaTerm::Abs { .. } => fun.fmt_atom(f)?,
                    _ => write!(f, "{fun}")?,
                }
                f.write_str(" ")?;
                arg.fmt_atom(f)
            }
        }
    }
}

impl fmt::Debug for LambdaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
