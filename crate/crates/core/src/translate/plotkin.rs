//! Plotkin's continuation-passing translations, curried and uncurried.
//!
//! Curried outputs carry annotations from the type translations whenever the
//! source annotations determine them. Uncurried outputs use pairs and pair
//! patterns, which plain λ-terms lack, and are left unannotated.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::types::{circ, cont, star};
use super::{check_source, EvalOrder, Scope, Strategy, TranslateError};
use crate::syntax::{fresh_name, LambdaTerm, Name, Type};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Pairing {
    #[default]
    Curried,
    Uncurried,
}

impl FromStr for Pairing {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "curried" => Ok(Pairing::Curried),
            "uncurried" => Ok(Pairing::Uncurried),
            _ => Err(format!("unknown pairing `{s}`")),
        }
    }
}

/// λ-terms extended with pairs `(M, N)` and pair abstractions `λ(x,h).M`.
#[derive(Clone, PartialEq, Eq)]
pub enum CpsTerm {
    Var(Name),
    Abs {
        x: Name,
        ty: Option<Type>,
        body: Box<CpsTerm>,
    },
    App(Box<CpsTerm>, Box<CpsTerm>),
    Pair(Box<CpsTerm>, Box<CpsTerm>),
    PairAbs {
        x: Name,
        h: Name,
        body: Box<CpsTerm>,
    },
}

impl CpsTerm {
    fn var(x: &Name) -> Self {
        CpsTerm::Var(x.clone())
    }

    fn abs(x: &Name, ty: Option<Type>, body: CpsTerm) -> Self {
        CpsTerm::Abs {
            x: x.clone(),
            ty,
            body: Box::new(body),
        }
    }

    fn app(f: CpsTerm, a: CpsTerm) -> Self {
        CpsTerm::App(Box::new(f), Box::new(a))
    }

    fn free_vars(&self) -> BTreeSet<Name> {
        match self {
            CpsTerm::Var(x) => BTreeSet::from([x.clone()]),
            CpsTerm::Abs { x, body, .. } => {
                let mut s = body.free_vars();
                s.remove(x);
                s
            }
            CpsTerm::App(a, b) | CpsTerm::Pair(a, b) => {
                let mut s = a.free_vars();
                s.extend(b.free_vars());
                s
            }
            CpsTerm::PairAbs { x, h, body } => {
                let mut s = body.free_vars();
                s.remove(x);
                s.remove(h);
                s
            }
        }
    }

    /// The same term in the plain λ-syntax, if it uses no pairs.
    pub fn into_plain(self) -> Result<LambdaTerm, TranslateError> {
        Ok(match self {
            CpsTerm::Var(x) => LambdaTerm::Var(x),
            CpsTerm::Abs { x, ty, body } => LambdaTerm::Abs {
                x,
                ty,
                body: Box::new(body.into_plain()?),
            },
            CpsTerm::App(f, a) => LambdaTerm::app(f.into_plain()?, a.into_plain()?),
            CpsTerm::Pair(..) | CpsTerm::PairAbs { .. } => {
                return Err(TranslateError::UncurriedNeedsPairs)
            }
        })
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CpsTerm::Var(_) | CpsTerm::Pair(..) => write!(f, "{self}"),
            _ => write!(f, "({self})"),
        }
    }
}

impl fmt::Display for CpsTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CpsTerm::Var(x) => write!(f, "{x}"),
            CpsTerm::Abs {
                x,
                ty: Some(ty),
                body,
            } => write!(f, "\\{x}:{ty}. {body}"),
            CpsTerm::Abs { x, ty: None, body } => write!(f, "\\{x}. {body}"),
            CpsTerm::PairAbs { x, h, body } => write!(f, "\\({x}, {h}). {body}"),
            CpsTerm::Pair(a, b) => write!(f, "({a}, {b})"),
            CpsTerm::App(fun, arg) => {
                match &**fun {
                    CpsTerm::Abs { .. } | CpsTerm::PairAbs { .. } => fun.fmt_atom(f)?,
                    _ => write!(f, "{fun}")?,
                }
                f.write_str(" ")?;
                arg.fmt_atom(f)
            }
        }
    }
}

impl fmt::Debug for CpsTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `base` itself if it is free, otherwise the first fresh variant.
fn pick(base: &str, avoid: &BTreeSet<Name>) -> Name {
    let n = Name::new(base);
    if avoid.contains(base) {
        fresh_name(&n, |s| avoid.contains(s))
    } else {
        n
    }
}

struct Cps {
    sc: Scope,
    cbn: bool,
    order: EvalOrder,
    uncurried: bool,
}

impl Cps {
    fn ann(&self, f: impl FnOnce() -> Option<Type>) -> Option<Type> {
        if self.uncurried {
            None
        } else {
            f()
        }
    }

    fn go(&mut self, m: &LambdaTerm) -> CpsTerm {
        let cbn = self.cbn;
        match m {
            LambdaTerm::Var(x) if cbn => CpsTerm::var(x),
            LambdaTerm::Var(x) => {
                let ty = self.sc.type_of(m);
                let k = pick("k", &BTreeSet::from([x.clone()]));
                let kty = self.ann(|| Some(cont(ty.as_ref()?, false)));
                CpsTerm::abs(&k, kty, CpsTerm::app(CpsTerm::var(&k), CpsTerm::var(x)))
            }
            LambdaTerm::Abs { x, ty, body } => {
                let fn_ty = self.sc.type_of(m);
                self.sc.vars.push((x.clone(), ty.clone()));
                let inner = self.go(body);
                self.sc.vars.pop();
                let mut avoid = inner.free_vars();
                avoid.insert(x.clone());
                let k = pick("k", &avoid);
                let fun = if self.uncurried {
                    let h = pick("h", &avoid);
                    CpsTerm::PairAbs {
                        x: x.clone(),
                        h: h.clone(),
                        body: Box::new(CpsTerm::app(inner, CpsTerm::var(&h))),
                    }
                } else {
                    let xty = ty
                        .as_ref()
                        .map(|a| if cbn { star(a, true) } else { circ(a, false) });
                    CpsTerm::abs(x, xty, inner)
                };
                let kty = self.ann(|| Some(cont(fn_ty.as_ref()?, cbn)));
                CpsTerm::abs(&k, kty, CpsTerm::app(CpsTerm::var(&k), fun))
            }
            LambdaTerm::App(f, a) => {
                let fn_ty = self.sc.type_of(f);
                let arg_ty = self.sc.type_of(a);
                let res_ty = self.sc.type_of(m);
                let tf = self.go(f);
                let ta = self.go(a);
                let mut avoid = tf.free_vars();
                avoid.extend(ta.free_vars());
                let k = pick("k", &avoid);
                avoid.insert(k.clone());
                let m_name = pick("m", &avoid);
                avoid.insert(m_name.clone());
                let n_name = pick("n", &avoid);
                let kty = self.ann(|| Some(cont(res_ty.as_ref()?, cbn)));
                let mty = self.ann(|| Some(circ(fn_ty.as_ref()?, cbn)));
                let nty = self.ann(|| Some(circ(arg_ty.as_ref()?, false)));
                let (mv, nv, kv) = (
                    CpsTerm::var(&m_name),
                    CpsTerm::var(&n_name),
                    CpsTerm::var(&k),
                );
                // m applied to its argument and the continuation
                let call = |arg: CpsTerm| {
                    if self.uncurried {
                        CpsTerm::app(
                            mv.clone(),
                            CpsTerm::Pair(Box::new(arg), Box::new(kv.clone())),
                        )
                    } else {
                        CpsTerm::app(CpsTerm::app(mv.clone(), arg), kv.clone())
                    }
                };
                let body = if cbn {
                    CpsTerm::app(tf, CpsTerm::abs(&m_name, mty, call(ta)))
                } else {
                    match self.order {
                        EvalOrder::FunctionFirst => CpsTerm::app(
                            tf,
                            CpsTerm::abs(
                                &m_name,
                                mty,
                                CpsTerm::app(ta, CpsTerm::abs(&n_name, nty, call(nv))),
                            ),
                        ),
                        EvalOrder::ArgumentFirst => CpsTerm::app(
                            ta,
                            CpsTerm::abs(
                                &n_name,
                                nty,
                                CpsTerm::app(tf, CpsTerm::abs(&m_name, mty, call(nv))),
                            ),
                        ),
                    }
                };
                CpsTerm::abs(&k, kty, body)
            }
            LambdaTerm::Hole(_) => unreachable!("holes are rejected up front"),
        }
    }
}

/// Plotkin's translation of `m`. The order only matters for CbV.
pub fn plotkin_translate(
    m: &LambdaTerm,
    s: Strategy,
    order: EvalOrder,
    pairing: Pairing,
) -> Result<CpsTerm, TranslateError> {
    plotkin_translate_in(&Default::default(), m, s, order, pairing)
}

pub fn plotkin_translate_in(
    env: &std::collections::BTreeMap<Name, Type>,
    m: &LambdaTerm,
    s: Strategy,
    order: EvalOrder,
    pairing: Pairing,
) -> Result<CpsTerm, TranslateError> {
    check_source(m, false)?;
    if env
        .values()
        .any(|t| t.mentions_base(crate::syntax::ANSWER_TYPE))
    {
        return Err(TranslateError::ReservedBaseType);
    }
    let mut cps = Cps {
        sc: Scope::new(env),
        cbn: s == Strategy::CbN,
        order,
        uncurried: pairing == Pairing::Uncurried,
    };
    Ok(cps.go(m))
}
