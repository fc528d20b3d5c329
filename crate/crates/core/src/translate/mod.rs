//! Translations from the simply typed λ-calculus: into ptq p/q-terms, into
//! control-normal e-terms, and Plotkin's continuation-passing translations.

mod plotkin;
mod ptq;
mod types;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::syntax::{LambdaTerm, Name, Type};

pub use plotkin::{plotkin_translate, plotkin_translate_in, CpsTerm, Pairing};
pub use ptq::{
    aux_cbn, aux_cbv, bracket_list, cbn, cbn_in, cbv, cbv_in, ptq_translate, ptq_translate_e,
    var_cbn, var_cbn_in, var_cbv, var_cbv_in,
};
pub use types::{translate_type, TypeTarget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    CbN,
    CbV,
}

/// Which side of a CbV application is evaluated first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum EvalOrder {
    FunctionFirst,
    #[default]
    ArgumentFirst,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cbn" => Ok(Strategy::CbN),
            "cbv" => Ok(Strategy::CbV),
            _ => Err(format!("unknown strategy `{s}`")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::CbN => "cbn",
            Strategy::CbV => "cbv",
        })
    }
}

impl FromStr for EvalOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fn-first" => Ok(EvalOrder::FunctionFirst),
            "arg-first" => Ok(EvalOrder::ArgumentFirst),
            _ => Err(format!("unknown evaluation order `{s}`")),
        }
    }
}

impl fmt::Display for EvalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvalOrder::FunctionFirst => "fn-first",
            EvalOrder::ArgumentFirst => "arg-first",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("source term contains a hole")]
    HoleInSource,
    #[error("`{0}` cannot be a source variable: it is the test variable of the target")]
    ReservedName(String),
    #[error("uncurried translations need pairs, which plain λ-terms lack")]
    UncurriedNeedsPairs,
    #[error("base type `o` is reserved for the answer type")]
    ReservedBaseType,
}

impl TranslateError {
    pub fn kind(&self) -> &'static str {
        match self {
            TranslateError::HoleInSource => "HoleInSource",
            TranslateError::ReservedName(_) => "ReservedName",
            TranslateError::UncurriedNeedsPairs => "UncurriedNeedsPairs",
            TranslateError::ReservedBaseType => "ReservedBaseType",
        }
    }
}

/// Types of the variables in scope, innermost last. `None` when unknown.
#[derive(Clone, Debug, Default)]
pub(crate) struct Scope {
    vars: Vec<(Name, Option<Type>)>,
}

impl Scope {
    pub(crate) fn new<'a>(env: impl IntoIterator<Item = (&'a Name, &'a Type)>) -> Self {
        Scope {
            vars: env
                .into_iter()
                .map(|(x, t)| (x.clone(), Some(t.clone())))
                .collect(),
        }
    }

    pub(crate) fn under<R>(
        &mut self,
        x: &Name,
        ty: &Option<Type>,
        f: impl FnOnce(&mut Self) -> R,
    ) -> R {
        self.vars.push((x.clone(), ty.clone()));
        let r = f(self);
        self.vars.pop();
        r
    }

    /// The simple type of `m`, when the annotations determine it.
    pub(crate) fn type_of(&mut self, m: &LambdaTerm) -> Option<Type> {
        match m {
            LambdaTerm::Var(x) => self
                .vars
                .iter()
                .rev()
                .find(|(y, _)| y == x)
                .and_then(|(_, t)| t.clone()),
            LambdaTerm::Hole(t) => t.clone(),
            LambdaTerm::Abs { x, ty, body } => {
                let b = self.under(x, ty, |s| s.type_of(body))?;
                Some(Type::arrow(ty.clone()?, b))
            }
            LambdaTerm::App(f, _) => self.type_of(f)?.split_arrow().map(|(_, b)| b.clone()),
        }
    }
}

/// Holes have no translation and `o` is the answer type. Into ptq, a
/// variable named `k` would clash with the test variable.
pub(crate) fn check_source(m: &LambdaTerm, reserve_k: bool) -> Result<(), TranslateError> {
    match m {
        LambdaTerm::Hole(_) => Err(TranslateError::HoleInSource),
        LambdaTerm::Var(x) => check_name(x, reserve_k),
        LambdaTerm::Abs { x, ty, body } => {
            check_name(x, reserve_k)?;
            if ty
                .as_ref()
                .is_some_and(|t| t.mentions_base(crate::syntax::ANSWER_TYPE))
            {
                return Err(TranslateError::ReservedBaseType);
            }
            check_source(body, reserve_k)
        }
        LambdaTerm::App(f, a) => {
            check_source(f, reserve_k)?;
            check_source(a, reserve_k)
        }
    }
}

fn check_name(x: &Name, reserve_k: bool) -> Result<(), TranslateError> {
    if reserve_k && x.as_str() == "k" {
        Err(TranslateError::ReservedName(x.to_string()))
    } else {
        Ok(())
    }
}
