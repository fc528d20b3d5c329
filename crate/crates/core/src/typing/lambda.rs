//! Simply-typed inference for λ-terms with holes. The hole is a constant of
//! one type per term.

use super::{LamEnv, LamJudgment, TypeError};
use crate::syntax::{LambdaTerm, Name, Type};

type Result<T> = std::result::Result<T, TypeError>;

struct Cx {
    vars: Vec<(Name, Type)>,
    hole: Option<Type>,
}

fn infer(cx: &mut Cx, m: &LambdaTerm) -> Result<Type> {
    match m {
        LambdaTerm::Var(x) => cx
            .vars
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, t)| t.clone())
            .ok_or_else(|| TypeError::UnboundVariable(x.to_string())),
        LambdaTerm::Hole(ann) => match (&cx.hole, ann) {
            (Some(h), Some(a)) if h != a => Err(TypeError::HoleTypeClash(h.clone(), a.clone())),
            (Some(h), _) => Ok(h.clone()),
            (None, Some(a)) => {
                // first annotated occurrence fixes the hole type for the rest
                cx.hole = Some(a.clone());
                Ok(a.clone())
            }
            (None, None) => Err(TypeError::UnboundVariable("[]".into())),
        },
        LambdaTerm::Abs { x, ty, body } => {
            let a = ty
                .clone()
                .ok_or_else(|| TypeError::MissingAnnotation(x.to_string()))?;
            cx.vars.push((x.clone(), a.clone()));
            let b = infer(cx, body);
            cx.vars.pop();
            Ok(Type::arrow(a, b?))
        }
        LambdaTerm::App(f, arg) => {
            let ft = infer(cx, f)?;
            let at = infer(cx, arg)?;
            match ft.split_arrow() {
                Some((dom, cod)) if *dom == at => Ok(cod.clone()),
                Some((dom, _)) => Err(TypeError::clash(dom, &at)),
                None => Err(TypeError::clash(
                    format!("a function type taking {at}"),
                    &ft,
                )),
            }
        }
    }
}

/// Infers the type of `m`, treating `□` as a constant of the hole type.
pub fn infer_lambda_box(env: &LamEnv, m: &LambdaTerm) -> Result<Type> {
    let mut cx = Cx {
        vars: env
            .vars
            .iter()
            .map(|(x, t)| (x.clone(), t.clone()))
            .collect(),
        hole: env.hole.clone(),
    };
    infer(&mut cx, m)
}

pub fn check_lam_judgment(j: &LamJudgment) -> Result<Type> {
    let ty = infer_lambda_box(&j.env, &j.subject)?;
    match &j.claimed {
        Some(c) if *c != ty => Err(TypeError::clash(c, &ty)),
        _ => Ok(ty),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_lambda;

    fn t(s: &str) -> Type {
        crate::parse::parse_type(s).unwrap()
    }

    #[test]
    fn hole_is_a_constant() {
        let env = LamEnv::default().with_hole(t("B"));
        assert_eq!(infer_lambda_box(&env, &LambdaTerm::hole()).unwrap(), t("B"));
    }

    #[test]
    fn hole_applied() {
        let env = LamEnv::default()
            .with_var("y", t("A"))
            .with_hole(t("A -> B"));
        assert_eq!(
            infer_lambda_box(&env, &parse_lambda("[] y").unwrap()).unwrap(),
            t("B")
        );
    }

    #[test]
    fn holes_of_different_types_clash() {
        let env = LamEnv::default().with_var("f", t("A -> B -> C"));
        let m = parse_lambda("f [A] [B]").unwrap();
        assert_eq!(
            infer_lambda_box(&env, &m).unwrap_err().kind(),
            "HoleTypeClash"
        );
        let env = LamEnv::default().with_hole(t("A"));
        let m = parse_lambda("[B]").unwrap();
        assert_eq!(
            infer_lambda_box(&env, &m).unwrap_err().kind(),
            "HoleTypeClash"
        );
    }

    #[test]
    fn application_clash() {
        let env = LamEnv::default()
            .with_var("x", t("A"))
            .with_var("y", t("B"));
        assert_eq!(
            infer_lambda_box(&env, &parse_lambda("x y").unwrap())
                .unwrap_err()
                .kind(),
            "TypeClash"
        );
        let env = LamEnv::default()
            .with_var("f", t("A -> A"))
            .with_var("y", t("B"));
        assert_eq!(
            infer_lambda_box(&env, &parse_lambda("f y").unwrap())
                .unwrap_err()
                .kind(),
            "TypeClash"
        );
    }
}
