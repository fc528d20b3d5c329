//! Syntax-directed inference for the ten rules of the ptq type system.
//!
//! Every rule is invertible once binders are annotated, so inference is a
//! single structural pass. A binder whose name is already in scope shadows
//! the outer binding (terms are taken modulo α).

use std::fmt;

use super::{sort_of_role, Anchor, AnchorKind, Judgment, TypeEnv, TypeError};
use crate::syntax::{ETerm, Name, PTerm, PtqType, QTerm, Role, TTerm, Term, Type};

/// Result of inference: a typed p/t/q-subject, or a well-typed e-term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inferred {
    Typed(PtqType),
    WellTypedE,
}

impl fmt::Display for Inferred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inferred::Typed(t) => write!(f, "{t}"),
            Inferred::WellTypedE => f.write_str("e"),
        }
    }
}

type Result<T> = std::result::Result<T, TypeError>;

struct Ctx {
    vars: Vec<(Name, Type)>,
}

impl Ctx {
    fn lookup(&self, x: &Name) -> Result<&Type> {
        self.vars
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, t)| t)
            .ok_or_else(|| TypeError::UnboundVariable(x.to_string()))
    }

    fn with<R>(&mut self, x: &Name, ty: &Type, f: impl FnOnce(&mut Self) -> R) -> R {
        self.vars.push((x.clone(), ty.clone()));
        let r = f(self);
        self.vars.pop();
        r
    }
}

fn annotation<'a>(ty: &'a Option<Type>, what: &str) -> Result<&'a Type> {
    ty.as_ref()
        .ok_or_else(|| TypeError::MissingAnnotation(what.to_string()))
}

fn infer_p(cx: &mut Ctx, p: &PTerm) -> Result<Type> {
    match p {
        PTerm::Var(x) => cx.lookup(x).cloned(),
        PTerm::PairLam { x, xty, kty, body } => {
            let a = annotation(xty, x.as_str())?;
            let b = annotation(kty, "k")?;
            let anchor = Anchor::k(b.clone());
            cx.with(x, a, |cx| check_e(cx, &anchor, body))?;
            Ok(Type::arrow(a.clone(), b.clone()))
        }
        PTerm::KLam { kty, body } => {
            let a = annotation(kty, "k")?;
            check_e(cx, &Anchor::k(a.clone()), body)?;
            Ok(a.clone())
        }
    }
}

fn infer_q(cx: &mut Ctx, q: &QTerm) -> Result<Type> {
    let a = annotation(&q.kty, "k")?;
    check_e(cx, &Anchor::k(a.clone()), &q.body)?;
    Ok(a.clone())
}

fn infer_t(cx: &mut Ctx, anchor: &Anchor, t: &TTerm) -> Result<Type> {
    match t {
        TTerm::Star => match anchor.kind {
            AnchorKind::Star => Ok(anchor.carrier.clone()),
            AnchorKind::K => Err(TypeError::AnchorMismatch(
                "`*` used where k is expected".into(),
            )),
        },
        TTerm::K => match anchor.kind {
            AnchorKind::K => Ok(anchor.carrier.clone()),
            AnchorKind::Star => Err(TypeError::AnchorMismatch(
                "`k` used where `*` is expected".into(),
            )),
        },
        TTerm::Pair(p, rest) => {
            let a = infer_p(cx, p)?;
            let b = infer_t(cx, anchor, rest)?;
            Ok(Type::arrow(a, b))
        }
        TTerm::XLam { x, xty, body } => {
            let a = annotation(xty, x.as_str())?;
            cx.with(x, a, |cx| check_e(cx, anchor, body))?;
            Ok(a.clone())
        }
    }
}

fn check_e(cx: &mut Ctx, anchor: &Anchor, u: &ETerm) -> Result<()> {
    let (expected, found) = match u {
        ETerm::PApp(t, p) => {
            let a = infer_p(cx, p)?;
            let b = infer_t(cx, anchor, t)?;
            (PtqType::t(a), PtqType::t(b))
        }
        ETerm::QApp(q, t) => {
            let a = infer_q(cx, q)?;
            let b = infer_t(cx, anchor, t)?;
            (PtqType::t(a), PtqType::t(b))
        }
    };
    if expected == found {
        Ok(())
    } else {
        Err(TypeError::clash(expected, found))
    }
}

fn no_anchor(env: &TypeEnv, role: &str) -> Result<()> {
    match &env.anchor {
        None => Ok(()),
        Some(a) => Err(TypeError::AnchorMismatch(format!(
            "{role} subjects take no anchor, found {a}"
        ))),
    }
}

fn need_anchor(env: &TypeEnv) -> Result<&Anchor> {
    env.anchor.as_ref().ok_or_else(|| {
        TypeError::AnchorMismatch("t- and e-subjects need an anchor `k:tA` or `*:tA`".into())
    })
}

/// Infers the type of `subject` under `env`.
pub fn infer_ptq(env: &TypeEnv, subject: &Term) -> Result<Inferred> {
    let mut cx = Ctx {
        vars: env
            .gamma
            .iter()
            .map(|(x, t)| (x.clone(), t.clone()))
            .collect(),
    };
    match subject {
        Term::P(p) => {
            no_anchor(env, "p")?;
            Ok(Inferred::Typed(PtqType::p(infer_p(&mut cx, p)?)))
        }
        Term::Q(q) => {
            no_anchor(env, "q")?;
            Ok(Inferred::Typed(PtqType::q(infer_q(&mut cx, q)?)))
        }
        Term::T(t) => {
            let anchor = need_anchor(env)?;
            Ok(Inferred::Typed(PtqType::t(infer_t(&mut cx, anchor, t)?)))
        }
        Term::E(u) => {
            let anchor = need_anchor(env)?;
            check_e(&mut cx, anchor, u)?;
            Ok(Inferred::WellTypedE)
        }
    }
}

/// Checks a judgment against its claimed type, if any.
pub fn check_judgment(j: &Judgment) -> Result<Inferred> {
    let inferred = infer_ptq(&j.env, &j.subject)?;
    match (&inferred, &j.claimed) {
        (_, None) => Ok(inferred),
        (Inferred::WellTypedE, Some(claim)) => Err(TypeError::RoleMismatch {
            expected: format!("a {} subject", sort_of_role(claim.role)),
            found: "an e-term, which has no type".into(),
        }),
        (Inferred::Typed(found), Some(claim)) if found.role != claim.role => {
            Err(TypeError::RoleMismatch {
                expected: claim.to_string(),
                found: found.to_string(),
            })
        }
        (Inferred::Typed(found), Some(claim)) if found != claim => {
            Err(TypeError::clash(claim, found))
        }
        _ => Ok(inferred),
    }
}

impl Inferred {
    pub fn ptq_type(&self) -> Option<&PtqType> {
        match self {
            Inferred::Typed(t) => Some(t),
            Inferred::WellTypedE => None,
        }
    }

    pub fn role(&self) -> Option<Role> {
        self.ptq_type().map(|t| t.role)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_judgment, parse_term};
    use crate::syntax::{free_info, TestPosition};

    fn a() -> Type {
        Type::base("A")
    }

    #[test]
    fn variable_axiom() {
        let env = TypeEnv::new().with_var("x", a());
        let r = infer_ptq(&env, &parse_term("x").unwrap()).unwrap();
        assert_eq!(r, Inferred::Typed(PtqType::p(a())));
    }

    #[test]
    fn identity_translation_is_a_proof_of_a_to_a() {
        let r = infer_ptq(&TypeEnv::new(), &parse_term(r"\(x:A,k:A). k ; x").unwrap()).unwrap();
        assert_eq!(r, Inferred::Typed(PtqType::p(Type::arrow(a(), a()))));
    }

    #[test]
    fn unbound_under_star_anchor() {
        let env = TypeEnv::new().with_anchor(Anchor::star(a()));
        let err = infer_ptq(&env, &parse_term("* ; x").unwrap()).unwrap_err();
        assert_eq!(err.kind(), "UnboundVariable");
    }

    #[test]
    fn q_abstraction() {
        // q-λ̄ over p@
        let env = TypeEnv::new().with_var("x", a());
        let r = infer_ptq(&env, &parse_term(r"%k:A. k ; x").unwrap()).unwrap();
        assert_eq!(r, Inferred::Typed(PtqType::q(a())));
    }

    #[test]
    fn anchor_mismatches() {
        let env = TypeEnv::new()
            .with_var("x", a())
            .with_anchor(Anchor::star(a()));
        let err = infer_ptq(&env, &parse_term("k ; x").unwrap()).unwrap_err();
        assert_eq!(err.kind(), "AnchorMismatch");
        let err = infer_ptq(
            &TypeEnv::new().with_var("x", a()),
            &parse_term("* ; x").unwrap(),
        )
        .unwrap_err();
        assert_eq!(err.kind(), "AnchorMismatch");
        // k-binder whose body uses * instead of k
        let err = infer_ptq(
            &TypeEnv::new().with_var("x", a()),
            &parse_term(r"\k:A. * ; x").unwrap(),
        )
        .unwrap_err();
        assert_eq!(err.kind(), "AnchorMismatch");
    }

    #[test]
    fn pair_types_and_clash() {
        let env = TypeEnv::new()
            .with_var("y", a())
            .with_anchor(Anchor::star(Type::base("B")));
        let r = infer_ptq(&env, &parse_term("<y, *>").unwrap()).unwrap();
        assert_eq!(
            r,
            Inferred::Typed(PtqType::t(Type::arrow(a(), Type::base("B"))))
        );
        let err = infer_ptq(&env, &parse_term(r"<y, *> ; \(x:A,k:A). k ; x").unwrap()).unwrap_err();
        assert_eq!(err.kind(), "TypeClash");
    }

    #[test]
    fn missing_annotations_are_rejected() {
        let err = infer_ptq(&TypeEnv::new(), &parse_term(r"\(x,k). k ; x").unwrap()).unwrap_err();
        assert_eq!(err.kind(), "MissingAnnotation");
    }

    #[test]
    fn check_judgment_examples() {
        assert!(check_judgment(&parse_judgment("x:pA |- x : pA").unwrap()).is_ok());
        let err = check_judgment(&parse_judgment("|> k:tA |- k : tB").unwrap()).unwrap_err();
        assert_eq!(err.kind(), "TypeClash");
        let err =
            check_judgment(&parse_judgment(r"|> *:tA |- * ; (\k:A. k ; y)").unwrap()).unwrap_err();
        assert_eq!(err.kind(), "UnboundVariable");
        let err = check_judgment(&parse_judgment("x:pA |- x : qA").unwrap()).unwrap_err();
        assert_eq!(err.kind(), "RoleMismatch");
    }

    #[test]
    fn inner_binders_shadow() {
        let t = parse_term(r"\(x:A -> A,k:A -> A). k ; \(x:A,k:A). k ; x").unwrap();
        let r = infer_ptq(&TypeEnv::new(), &t).unwrap();
        let aa = Type::arrow(a(), a());
        assert_eq!(r, Inferred::Typed(PtqType::p(Type::arrow(aa.clone(), aa))));
    }

    #[test]
    fn typed_terms_have_the_expected_test_position() {
        let env = TypeEnv::new()
            .with_var("y", a())
            .with_anchor(Anchor::k(a()));
        let t = parse_term(r"\x:A. <y, k> ; \(z:A,k:A). k ; z").unwrap();
        assert!(infer_ptq(&env, &t).is_ok());
        assert_eq!(free_info(&t).test, TestPosition::K);
    }
}
