//! The CbN and CbV translations into ptq, and their e-term variants that
//! land directly on the control normal form of `*;cbn(M)` and `cbv(M)*`.

use std::collections::BTreeMap;

use super::{check_source, Scope, Strategy, TranslateError};
use crate::syntax::{
    fresh_name, star_compose, ETerm, LambdaTerm, Name, PTerm, QTerm, TTerm, Term, Type,
};

type Result<T> = std::result::Result<T, TranslateError>;

fn k() -> TTerm {
    TTerm::K
}

/// A binder name for the test abstraction of a CbV application, free in
/// neither `m` nor `n`.
fn arg_binder(m: &LambdaTerm) -> Name {
    let base = Name::new("x");
    let fv = m.free_vars();
    if fv.contains("x") {
        fresh_name(&base, |s| fv.contains(s))
    } else {
        base
    }
}

fn cbn_rec(sc: &mut Scope, m: &LambdaTerm) -> PTerm {
    match m {
        LambdaTerm::Var(x) => PTerm::Var(x.clone()),
        LambdaTerm::Abs { .. } => aux_n_rec(sc, m),
        LambdaTerm::App(f, a) => {
            let b = sc.type_of(m);
            PTerm::KLam {
                kty: b,
                body: Box::new(ETerm::pcomp(
                    TTerm::pair(cbn_rec(sc, a), k()),
                    cbn_rec(sc, f),
                )),
            }
        }
        LambdaTerm::Hole(_) => unreachable!("holes are rejected up front"),
    }
}

fn aux_n_rec(sc: &mut Scope, v: &LambdaTerm) -> PTerm {
    match v {
        LambdaTerm::Abs { x, ty, body } => {
            let (b, body) = sc.under(x, ty, |sc| (sc.type_of(body), cbn_rec(sc, body)));
            PTerm::PairLam {
                x: x.clone(),
                xty: ty.clone(),
                kty: b,
                body: Box::new(ETerm::pcomp(k(), body)),
            }
        }
        _ => cbn_rec(sc, v),
    }
}

fn cbv_rec(sc: &mut Scope, m: &LambdaTerm) -> QTerm {
    match m {
        LambdaTerm::Var(_) | LambdaTerm::Abs { .. } => {
            let a = sc.type_of(m);
            QTerm::new(a, ETerm::pcomp(k(), aux_v_rec(sc, m)))
        }
        LambdaTerm::App(f, a) => {
            let b = sc.type_of(m);
            let x = arg_binder(f);
            let cont = TTerm::XLam {
                x: x.clone(),
                xty: sc.type_of(a),
                body: Box::new(ETerm::qapp(cbv_rec(sc, f), TTerm::pair(PTerm::Var(x), k()))),
            };
            QTerm::new(b, ETerm::qapp(cbv_rec(sc, a), cont))
        }
        LambdaTerm::Hole(_) => unreachable!("holes are rejected up front"),
    }
}

fn aux_v_rec(sc: &mut Scope, v: &LambdaTerm) -> PTerm {
    match v {
        LambdaTerm::Var(x) => PTerm::Var(x.clone()),
        LambdaTerm::Abs { x, ty, body } => {
            let (b, body) = sc.under(x, ty, |sc| (sc.type_of(body), cbv_rec(sc, body)));
            PTerm::PairLam {
                x: x.clone(),
                xty: ty.clone(),
                kty: b,
                body: Box::new(ETerm::qapp(body, k())),
            }
        }
        _ => panic!("aux is only defined on values"),
    }
}

fn var_n_rec(sc: &mut Scope, m: &LambdaTerm) -> ETerm {
    match m {
        LambdaTerm::App(f, a) => {
            let t = TTerm::pair(cbn_rec(sc, a), TTerm::Star);
            star_compose(&t, &var_n_rec(sc, f))
        }
        _ => ETerm::pcomp(TTerm::Star, aux_n_rec(sc, m)),
    }
}

fn var_v_rec(sc: &mut Scope, m: &LambdaTerm) -> ETerm {
    match m {
        LambdaTerm::App(f, a) if a.is_value() => {
            let t = TTerm::pair(aux_v_rec(sc, a), TTerm::Star);
            star_compose(&t, &var_v_rec(sc, f))
        }
        LambdaTerm::App(f, a) => {
            let x = arg_binder(f);
            let t = TTerm::XLam {
                x: x.clone(),
                xty: sc.type_of(a),
                body: Box::new(ETerm::qapp(
                    cbv_rec(sc, f),
                    TTerm::pair(PTerm::Var(x), TTerm::Star),
                )),
            };
            star_compose(&t, &var_v_rec(sc, a))
        }
        _ => ETerm::pcomp(TTerm::Star, aux_v_rec(sc, m)),
    }
}

fn run<T>(
    env: &BTreeMap<Name, Type>,
    m: &LambdaTerm,
    f: impl FnOnce(&mut Scope, &LambdaTerm) -> T,
) -> Result<T> {
    check_source(m, true)?;
    Ok(f(&mut Scope::new(env), m))
}

/// CbN translation, with the types of free variables taken from `env`.
pub fn cbn_in(env: &BTreeMap<Name, Type>, m: &LambdaTerm) -> Result<PTerm> {
    run(env, m, cbn_rec)
}

pub fn cbv_in(env: &BTreeMap<Name, Type>, m: &LambdaTerm) -> Result<QTerm> {
    run(env, m, cbv_rec)
}

pub fn var_cbn_in(env: &BTreeMap<Name, Type>, m: &LambdaTerm) -> Result<ETerm> {
    run(env, m, var_n_rec)
}

pub fn var_cbv_in(env: &BTreeMap<Name, Type>, m: &LambdaTerm) -> Result<ETerm> {
    run(env, m, var_v_rec)
}

pub fn cbn(m: &LambdaTerm) -> Result<PTerm> {
    cbn_in(&BTreeMap::new(), m)
}

pub fn cbv(m: &LambdaTerm) -> Result<QTerm> {
    cbv_in(&BTreeMap::new(), m)
}

pub fn var_cbn(m: &LambdaTerm) -> Result<ETerm> {
    var_cbn_in(&BTreeMap::new(), m)
}

pub fn var_cbv(m: &LambdaTerm) -> Result<ETerm> {
    var_cbv_in(&BTreeMap::new(), m)
}

/// `aux` of the CbN translation, defined on values.
pub fn aux_cbn(env: &BTreeMap<Name, Type>, v: &LambdaTerm) -> Result<PTerm> {
    assert!(v.is_value(), "aux is only defined on values");
    run(env, v, aux_n_rec)
}

pub fn aux_cbv(env: &BTreeMap<Name, Type>, v: &LambdaTerm) -> Result<PTerm> {
    assert!(v.is_value(), "aux is only defined on values");
    run(env, v, aux_v_rec)
}

/// `cbn(M)` as a p-term or `cbv(M)` as a q-term.
pub fn ptq_translate(m: &LambdaTerm, s: Strategy) -> Result<Term> {
    Ok(match s {
        Strategy::CbN => Term::P(cbn(m)?),
        Strategy::CbV => Term::Q(cbv(m)?),
    })
}

pub fn ptq_translate_e(m: &LambdaTerm, s: Strategy) -> Result<ETerm> {
    match s {
        Strategy::CbN => var_cbn(m),
        Strategy::CbV => var_cbv(m),
    }
}

/// `[p1,…,pn] = <p1,<…,<pn,*>…>>`, and `*` for the empty list.
pub fn bracket_list(items: &[PTerm]) -> TTerm {
    items
        .iter()
        .rev()
        .fold(TTerm::Star, |t, p| TTerm::pair(p.clone(), t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_eterm, parse_lambda, parse_pterm, parse_qterm, parse_tterm};
    use crate::syntax::AlphaEq;

    fn lam(s: &str) -> LambdaTerm {
        parse_lambda(s).unwrap()
    }

    fn env(pairs: &[(&str, &str)]) -> BTreeMap<Name, Type> {
        pairs
            .iter()
            .map(|(x, t)| (Name::new(x), crate::parse::parse_type(t).unwrap()))
            .collect()
    }

    #[test]
    fn cbn_rows() {
        assert_eq!(cbn(&lam("x")).unwrap(), PTerm::var("x"));
        assert!(cbn(&lam(r"\x:X. x"))
            .unwrap()
            .alpha_eq(&parse_pterm(r"\(x:X,k:X). k ; x").unwrap()));
        let r = cbn_in(&env(&[("x", "A -> B"), ("y", "A")]), &lam("x y")).unwrap();
        assert!(r.alpha_eq(&parse_pterm(r"\k:B. <y, k> ; x").unwrap()));
    }

    #[test]
    fn cbv_rows() {
        let r = cbv_in(&env(&[("x", "A")]), &lam("x")).unwrap();
        assert!(r.alpha_eq(&parse_qterm(r"%k:A. k ; x").unwrap()));
        let r = cbv(&lam(r"\x:A. x")).unwrap();
        let expected = parse_qterm(r"%k:A -> A. k ; \(x:A,k:A). (%k:A. k ; x) ! k").unwrap();
        assert!(r.alpha_eq(&expected));
        let r = cbv_in(&env(&[("f", "A -> B"), ("y", "A")]), &lam("f y")).unwrap();
        let expected =
            parse_qterm(r"%k:B. (%k:A. k ; y) ! \x:A. (%k:A -> B. k ; f) ! <x, k>").unwrap();
        assert!(r.alpha_eq(&expected));
    }

    #[test]
    fn cbv_application_binder_avoids_free_variables() {
        let r = cbv_in(&env(&[("x", "A -> B"), ("y", "A")]), &lam("x y")).unwrap();
        let expected =
            parse_qterm(r"%k:B. (%k:A. k ; y) ! \z:A. (%k:A -> B. k ; x) ! <z, k>").unwrap();
        assert!(r.alpha_eq(&expected));
    }

    #[test]
    fn e_term_rows() {
        let r = var_cbn_in(&env(&[("y", "A")]), &lam("y")).unwrap();
        assert!(r.alpha_eq(&parse_eterm("* ; y").unwrap()));
        let r = var_cbn_in(&env(&[("y", "A")]), &lam(r"(\x:A. x) y")).unwrap();
        assert!(r.alpha_eq(&parse_eterm(r"<y, *> ; \(x:A,k:A). k ; x").unwrap()));
        let r = var_cbv_in(&env(&[("y", "A")]), &lam(r"(\x:A. x) y")).unwrap();
        assert!(r.alpha_eq(&parse_eterm(r"<y, *> ; \(x:A,k:A). (%k:A. k ; x) ! k").unwrap()));
    }

    #[test]
    fn cbv_e_term_for_non_value_argument() {
        let e = env(&[("f", "A -> A"), ("g", "A -> A"), ("z", "A")]);
        let r = var_cbv_in(&e, &lam("f (g z)")).unwrap();
        let expected = parse_eterm(r"<z, \x:A. (%k:A -> A. k ; f) ! <x, *>> ; g").unwrap();
        assert!(r.alpha_eq(&expected));
    }

    #[test]
    fn spine_of_applications() {
        // var(V M1 M2) = [cbn(M1), cbn(M2)] ; aux(V)
        let e = env(&[("f", "A -> B -> C"), ("a", "A"), ("b", "B")]);
        let r = var_cbn_in(&e, &lam("f a b")).unwrap();
        let list = bracket_list(&[PTerm::var("a"), PTerm::var("b")]);
        assert!(r.alpha_eq(&ETerm::pcomp(list, PTerm::var("f"))));
    }

    #[test]
    fn bracket_lists() {
        assert_eq!(bracket_list(&[]), TTerm::Star);
        assert_eq!(
            bracket_list(&[PTerm::var("x")]),
            parse_tterm("<x, *>").unwrap()
        );
        assert_eq!(
            bracket_list(&[PTerm::var("x"), PTerm::var("y")]),
            parse_tterm("<x, <y, *>>").unwrap()
        );
    }

    #[test]
    fn sources_with_holes_or_k_are_rejected() {
        assert_eq!(cbn(&lam("[] x")).unwrap_err(), TranslateError::HoleInSource);
        assert_eq!(cbv(&lam(r"\k:A. k")).unwrap_err().kind(), "ReservedName");
    }
}
