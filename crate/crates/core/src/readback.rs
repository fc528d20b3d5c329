//! Readback of ptq terms into λ-terms with a hole.
//!
//! The readback of a test is a context whose hole marks where the
//! continuation `*` sits; composing terms along `*` becomes hole
//! composition. Control steps leave readbacks unchanged and each β step of
//! the machine maps to one β step on readbacks.

use thiserror::Error;

use crate::machine::NotTClosed;
use crate::syntax::{ETerm, LambdaTerm, PTerm, QTerm, TTerm, Term, Type};
use crate::typing::{check_judgment, Judgment, LamEnv, LamJudgment, TypeError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReadbackError {
    #[error(transparent)]
    NotTClosed(#[from] NotTClosed),
    #[error("hole used at types {0} and {1}")]
    HoleTypeClash(Type, Type),
    #[error("judgment does not check: {0}")]
    IllTyped(#[from] TypeError),
}

impl ReadbackError {
    pub fn kind(&self) -> &'static str {
        match self {
            ReadbackError::NotTClosed(_) => "NotTClosed",
            ReadbackError::HoleTypeClash(..) => "HoleTypeClash",
            ReadbackError::IllTyped(e) => e.kind(),
        }
    }
}

fn annotated_hole(m: &LambdaTerm) -> Result<Option<Type>, ReadbackError> {
    fn walk(m: &LambdaTerm, seen: &mut Option<Type>) -> Result<(), ReadbackError> {
        match m {
            LambdaTerm::Var(_) | LambdaTerm::Hole(None) => Ok(()),
            LambdaTerm::Hole(Some(a)) => match seen {
                Some(b) if b != a => Err(ReadbackError::HoleTypeClash(b.clone(), a.clone())),
                _ => {
                    *seen = Some(a.clone());
                    Ok(())
                }
            },
            LambdaTerm::Abs { body, .. } => walk(body, seen),
            LambdaTerm::App(f, a) => {
                walk(f, seen)?;
                walk(a, seen)
            }
        }
    }
    let mut seen = None;
    walk(m, &mut seen)?;
    Ok(seen)
}

/// `outer ⊛ inner = outer[inner/□]`, without capturing free variables of
/// `inner`. Annotated holes must agree on their type, and an annotated hole
/// can only be filled by a hole of the same type.
pub fn hole_compose(outer: &LambdaTerm, inner: &LambdaTerm) -> Result<LambdaTerm, ReadbackError> {
    if let (Some(a), LambdaTerm::Hole(Some(b))) = (annotated_hole(outer)?, inner) {
        if a != *b {
            return Err(ReadbackError::HoleTypeClash(a, b.clone()));
        }
    }
    let out = outer.fill_hole(inner);
    annotated_hole(&out)?;
    Ok(out)
}

fn rb_p(p: &PTerm) -> LambdaTerm {
    match p {
        PTerm::Var(x) => LambdaTerm::Var(x.clone()),
        PTerm::PairLam { x, xty, body, .. } => LambdaTerm::Abs {
            x: x.clone(),
            ty: xty.clone(),
            body: Box::new(rb_e(body)),
        },
        PTerm::KLam { body, .. } => rb_e(body),
    }
}

// `k` and `*` read back alike: both clauses that bind k read back `u_*`.
fn rb_t(t: &TTerm) -> LambdaTerm {
    match t {
        TTerm::Star | TTerm::K => LambdaTerm::hole(),
        TTerm::Pair(p, rest) => rb_t(rest).fill_hole(&LambdaTerm::app(LambdaTerm::hole(), rb_p(p))),
        TTerm::XLam { x, body, .. } => rb_e(body).var_to_hole(x),
    }
}

fn rb_e(u: &ETerm) -> LambdaTerm {
    match u {
        ETerm::PApp(t, p) => rb_t(t).fill_hole(&rb_p(p)),
        ETerm::QApp(q, t) => rb_t(t).fill_hole(&rb_q(q)),
    }
}

fn rb_q(q: &QTerm) -> LambdaTerm {
    rb_e(&q.body)
}

pub fn readback_p(p: &PTerm) -> LambdaTerm {
    rb_p(p)
}

pub fn readback_q(q: &QTerm) -> LambdaTerm {
    rb_q(q)
}

pub fn readback_t(t: &TTerm) -> Result<LambdaTerm, NotTClosed> {
    if !t.is_t_closed() {
        return Err(NotTClosed(t.to_string()));
    }
    Ok(rb_t(t))
}

pub fn readback_e(u: &ETerm) -> Result<LambdaTerm, NotTClosed> {
    if !u.is_t_closed() {
        return Err(NotTClosed(u.to_string()));
    }
    Ok(rb_e(u))
}

pub fn readback(term: &Term) -> Result<LambdaTerm, NotTClosed> {
    match term {
        Term::P(p) => Ok(rb_p(p)),
        Term::Q(q) => Ok(rb_q(q)),
        Term::T(t) => readback_t(t),
        Term::E(u) => readback_e(u),
    }
}

/// Readback of a checked judgment. Tests are closed first, so both anchor
/// forms are accepted.
pub fn readback_judgment(j: &Judgment) -> Result<LamJudgment, ReadbackError> {
    let inferred = check_judgment(j)?;
    let vars = j.env.gamma.clone();
    let (subject, hole, claimed) = match (&j.subject, &j.env.anchor) {
        (Term::T(t), Some(anchor)) => {
            let b = inferred
                .ptq_type()
                .expect("t-subjects are typed")
                .carrier
                .clone();
            (rb_t(t), Some(b), anchor.carrier.clone())
        }
        (Term::E(u), Some(anchor)) => (rb_e(u), None, anchor.carrier.clone()),
        (Term::P(p), _) => (rb_p(p), None, inferred.ptq_type().unwrap().carrier.clone()),
        (Term::Q(q), _) => (rb_q(q), None, inferred.ptq_type().unwrap().carrier.clone()),
        _ => unreachable!("checked judgments for t/e subjects carry an anchor"),
    };
    Ok(LamJudgment {
        env: LamEnv { vars, hole },
        subject,
        claimed: Some(claimed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_eterm, parse_judgment, parse_lam_judgment, parse_lambda, parse_term};
    use crate::syntax::Name;
    use crate::typing::check_lam_judgment;

    fn lam(s: &str) -> LambdaTerm {
        parse_lambda(s).unwrap()
    }

    #[test]
    fn hole_composition() {
        let m = lam(r"\x:A. x");
        assert!(hole_compose(&LambdaTerm::hole(), &m).unwrap().alpha_eq(&m));
        assert!(hole_compose(&m, &LambdaTerm::hole()).unwrap().alpha_eq(&m));
        let r = hole_compose(&lam("[] y"), &lam(r"\x:A. x")).unwrap();
        assert!(r.alpha_eq(&lam(r"(\x:A. x) y")));
        // the bound x of the outer term is renamed; the inserted x stays free
        let r = hole_compose(&lam(r"\x:A. []"), &lam("x")).unwrap();
        let LambdaTerm::Abs { x, body, .. } = &r else {
            panic!()
        };
        assert_ne!(x.as_str(), "x");
        assert!(body.alpha_eq(&lam("x")));
        assert!(r.free_vars().contains("x"));
        let err = hole_compose(&lam("f [A]"), &lam("[B]")).unwrap_err();
        assert_eq!(err.kind(), "HoleTypeClash");
    }

    #[test]
    fn readback_examples() {
        assert_eq!(
            readback(&parse_term("*").unwrap()).unwrap(),
            LambdaTerm::hole()
        );
        let r = readback(&parse_term(r"<y, *> ; \(x:A,k:A). k ; x").unwrap()).unwrap();
        assert!(r.alpha_eq(&lam(r"(\x:A. x) y")));
        let r = readback(&parse_term(r"\(x:A,k:A). k ; x").unwrap()).unwrap();
        assert!(r.alpha_eq(&lam(r"\x:A. x")));
        assert!(readback(&parse_term("k ; x").unwrap()).is_err());
    }

    #[test]
    fn readback_of_tests() {
        // ⟨p,⟨p',*⟩⟩ reads back to □ p p'
        let r = readback(&parse_term("<x, <y, *>>").unwrap()).unwrap();
        assert!(r.alpha_eq(&lam("[] x y")));
        let r = readback(&parse_term(r"\z:A. <y, *> ; z").unwrap()).unwrap();
        assert!(r.alpha_eq(&lam("[] y")));
        let r = readback(&parse_term(r"(%k:A. k ; x) ! <y, *>").unwrap()).unwrap();
        assert!(r.alpha_eq(&lam("x y")));
    }

    #[test]
    fn judgment_readback() {
        let j = readback_judgment(&parse_judgment("x:pA |- x : pA").unwrap()).unwrap();
        assert_eq!(j, parse_lam_judgment("x:A |- x : A").unwrap());
        let j = readback_judgment(&parse_judgment("|> *:tB |- * : tB").unwrap()).unwrap();
        assert_eq!(j, parse_lam_judgment("[]:B |- [] : B").unwrap());
        let j = readback_judgment(&parse_judgment(r"y:pA |> *:tA |- * ; y").unwrap()).unwrap();
        assert_eq!(j.env.hole, None);
        assert_eq!(j.subject, LambdaTerm::Var(Name::new("y")));
        assert!(check_lam_judgment(&j).is_ok());
        let j = readback_judgment(&parse_judgment(r"y:pA |> *:tB |- <y, *> : t(A -> B)").unwrap())
            .unwrap();
        assert!(check_lam_judgment(&j).is_ok());
        assert_eq!(
            j.env.hole,
            Some(crate::parse::parse_type("A -> B").unwrap())
        );
    }

    #[test]
    fn control_steps_preserve_readback() {
        let before = parse_eterm(r"* ; \k:A. (k ; x)").unwrap();
        let (after, _) = crate::machine::step(&before).unwrap().unwrap();
        assert!(readback_e(&before)
            .unwrap()
            .alpha_eq(&readback_e(&after).unwrap()));
    }
}
