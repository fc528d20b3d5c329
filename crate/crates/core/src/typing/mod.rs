//! Type inference for ptq judgments and for λ-terms with holes.

mod lambda;
mod ptq;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::syntax::{Name, PtqType, Role, Sort, Term, Type};

pub use lambda::{check_lam_judgment, infer_lambda_box};
pub use ptq::{check_judgment, infer_ptq, Inferred};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnchorKind {
    K,
    Star,
}

/// The `δ` of `Γ ▷ δ`: either `k:tA` or `*:tA`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anchor {
    pub kind: AnchorKind,
    pub carrier: Type,
}

impl Anchor {
    pub fn star(carrier: Type) -> Self {
        Anchor {
            kind: AnchorKind::Star,
            carrier,
        }
    }

    pub fn k(carrier: Type) -> Self {
        Anchor {
            kind: AnchorKind::K,
            carrier,
        }
    }
}

/// `Γ` (p-variables only, implicitly of role p) with an optional anchor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeEnv {
    pub gamma: BTreeMap<Name, Type>,
    pub anchor: Option<Anchor>,
}

impl TypeEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_var(mut self, x: &str, ty: Type) -> Self {
        self.gamma.insert(Name::new(x), ty);
        self
    }

    pub fn with_anchor(mut self, anchor: Anchor) -> Self {
        self.anchor = Some(anchor);
        self
    }
}

/// `Ξ ⊢ ξ`, with an optional claimed type for the subject (none for e-terms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgment {
    pub env: TypeEnv,
    pub subject: Term,
    pub claimed: Option<PtqType>,
}

/// Environment of `Λ_□`: variable types plus the type of the hole.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LamEnv {
    pub vars: BTreeMap<Name, Type>,
    pub hole: Option<Type>,
}

impl LamEnv {
    pub fn with_var(mut self, x: &str, ty: Type) -> Self {
        self.vars.insert(Name::new(x), ty);
        self
    }

    pub fn with_hole(mut self, ty: Type) -> Self {
        self.hole = Some(ty);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LamJudgment {
    pub env: LamEnv,
    pub subject: crate::syntax::LambdaTerm,
    pub claimed: Option<Type>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("test position mismatch: {0}")]
    AnchorMismatch(String),
    #[error("expected {expected}, found {found}")]
    RoleMismatch { expected: String, found: String },
    #[error("type clash: expected {expected}, found {found}")]
    TypeClash { expected: String, found: String },
    #[error("the t-variable k is not used linearly")]
    NonLinearK,
    #[error("binder of `{0}` has no type annotation")]
    MissingAnnotation(String),
    #[error("hole used at types {0} and {1}")]
    HoleTypeClash(Type, Type),
}

impl TypeError {
    /// Stable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            TypeError::UnboundVariable(_) => "UnboundVariable",
            TypeError::AnchorMismatch(_) => "AnchorMismatch",
            TypeError::RoleMismatch { .. } => "RoleMismatch",
            TypeError::TypeClash { .. } => "TypeClash",
            TypeError::NonLinearK => "NonLinearK",
            TypeError::MissingAnnotation(_) => "MissingAnnotation",
            TypeError::HoleTypeClash(..) => "HoleTypeClash",
        }
    }

    pub(crate) fn clash(expected: impl fmt::Display, found: impl fmt::Display) -> Self {
        TypeError::TypeClash {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

pub(crate) fn sort_of_role(role: Role) -> Sort {
    match role {
        Role::P => Sort::P,
        Role::T => Sort::T,
        Role::Q => Sort::Q,
    }
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            AnchorKind::K => "k",
            AnchorKind::Star => "*",
        };
        write!(f, "{k}:{}", PtqType::t(self.carrier.clone()))
    }
}

impl fmt::Display for TypeEnv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (x, ty) in &self.gamma {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{x}:{}", PtqType::p(ty.clone()))?;
        }
        if let Some(a) = &self.anchor {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "|> {a}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let env = self.env.to_string();
        if !env.is_empty() {
            write!(f, "{env} ")?;
        }
        write!(f, "|- {}", self.subject)?;
        if let Some(ty) = &self.claimed {
            write!(f, " : {ty}")?;
        }
        Ok(())
    }
}

impl fmt::Display for LamEnv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.vars.iter().map(|(x, t)| format!("{x}:{t}")).collect();
        if let Some(h) = &self.hole {
            parts.push(format!("[]:{h}"));
        }
        f.write_str(&parts.join(", "))
    }
}

impl fmt::Display for LamJudgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let env = self.env.to_string();
        if !env.is_empty() {
            write!(f, "{env} ")?;
        }
        write!(f, "|- {}", self.subject)?;
        if let Some(ty) = &self.claimed {
            write!(f, " : {ty}")?;
        }
        Ok(())
    }
}
