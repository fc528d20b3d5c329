//! Algebraic laws checked on pieces cut out of one source term: tests and
//! e-terms from its machine traces, and open terms built from the bodies of
//! its abstractions.

use std::collections::BTreeMap;

use super::checks::{check_value_shape, runs_of, CheckResult};
use super::gen::gen_term_of_type;
use crate::eval::eval_big;
use crate::machine::{Machine, RuleTag, DEFAULT_FUEL};
use crate::measure::{measure_e, measure_p, measure_t, probe_functions, VarMeasureEnv, PROBE_ARGS};
use crate::readback::{hole_compose, readback_e, readback_p, readback_t};
use crate::syntax::{
    fresh_name, star_compose, AlphaEq, ETerm, LambdaTerm, Name, Subst, TTerm, Term, Type,
};
use crate::translate::{aux_cbv, cbn, cbn_in, cbv_in, var_cbn_in, EvalOrder, Strategy};
use crate::typing::{infer_ptq, TypeEnv};

const MAX_PIECES: usize = 4;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Distinct top-level tests and e-terms met on the machine runs, and the
/// runs themselves.
struct Pieces {
    tests: Vec<TTerm>,
    eterms: Vec<ETerm>,
    traces: Vec<Vec<(RuleTag, ETerm)>>,
}

fn trace_pieces(m: &LambdaTerm) -> Result<Pieces, String> {
    let mut tests: Vec<TTerm> = vec![];
    let mut eterms: Vec<ETerm> = vec![];
    let mut traces = vec![];
    for u in runs_of(m)? {
        let out = Machine::new().normalize(&u, DEFAULT_FUEL).map_err(err)?;
        for v in out.trace.terms() {
            let t = v.test().clone();
            if t != TTerm::Star && tests.len() < MAX_PIECES && !tests.contains(&t) {
                tests.push(t);
            }
            if eterms.len() < MAX_PIECES && !eterms.contains(v) {
                eterms.push(v.clone());
            }
        }
        let mut steps = vec![(RuleTag::Beta, out.trace.initial.clone())];
        steps.extend(out.trace.steps);
        traces.push(steps);
    }
    tests.push(TTerm::Star);
    Ok(Pieces {
        tests,
        eterms,
        traces,
    })
}

fn probes_agree(
    what: &str,
    lhs: impl Fn(&dyn Fn(u64) -> u64, u64) -> u64,
    rhs: impl Fn(&dyn Fn(u64) -> u64, u64) -> u64,
) -> CheckResult {
    for (name, f) in probe_functions() {
        for n in PROBE_ARGS {
            let (l, r) = (lhs(&f, n), rhs(&f, n));
            if l != r {
                return Err(format!("{what}: at f = {name}, n = {n}: {l} vs {r}"));
            }
        }
    }
    Ok(())
}

/// Associativity and neutrality of `*`-composition and hole composition,
/// the readback composition law, and the measure of a composition.
fn composition_laws(tests: &[TTerm], eterms: &[ETerm]) -> CheckResult {
    let o = VarMeasureEnv::zero();
    let star = TTerm::Star;
    let hole = LambdaTerm::hole();
    for a in tests {
        let ra = readback_t(a).map_err(err)?;
        if !star_compose(a, &star).alpha_eq(a) || !star_compose(&star, a).alpha_eq(a) {
            return Err(format!("* is not neutral for {a}"));
        }
        let (l, r) = (
            hole_compose(&hole, &ra).map_err(err)?,
            hole_compose(&ra, &hole).map_err(err)?,
        );
        if !l.alpha_eq(&ra) || !r.alpha_eq(&ra) {
            return Err(format!("[] is not neutral for {ra}"));
        }
        for b in tests {
            let rb = readback_t(b).map_err(err)?;
            let ab = star_compose(a, b);
            let lhs = readback_t(&ab).map_err(err)?;
            let rhs = hole_compose(&ra, &rb).map_err(err)?;
            if !lhs.alpha_eq(&rhs) {
                return Err(format!(
                    "rbk({a} ⊛ {b}) = {lhs} but rbk({a}) ⊛ rbk({b}) = {rhs}"
                ));
            }
            probes_agree(
                &format!("measure of {a} ⊛ {b}"),
                |f, n| measure_t(&ab, &o, f, n).unwrap(),
                |f, n| {
                    let af = |m: u64| measure_t(a, &o, f, m).unwrap();
                    measure_t(b, &o, &af, n).unwrap()
                },
            )?;
            for c in tests {
                let left = star_compose(a, &star_compose(b, c));
                let right = star_compose(&ab, c);
                if !left.alpha_eq(&right) {
                    return Err(format!("⊛ is not associative on {a}, {b}, {c}"));
                }
                let rc = readback_t(c).map_err(err)?;
                let left = hole_compose(&ra, &hole_compose(&rb, &rc).map_err(err)?).map_err(err)?;
                let right =
                    hole_compose(&hole_compose(&ra, &rb).map_err(err)?, &rc).map_err(err)?;
                if !left.alpha_eq(&right) {
                    return Err(format!(
                        "hole composition is not associative on {ra}, {rb}, {rc}"
                    ));
                }
            }
            for u in eterms {
                let left = star_compose(a, &star_compose(b, u));
                let right = star_compose(&ab, u);
                if !left.alpha_eq(&right) {
                    return Err(format!("⊛ is not associative on {a}, {b}, {u}"));
                }
            }
        }
        for u in eterms {
            let au = star_compose(a, u);
            let lhs = readback_e(&au).map_err(err)?;
            let rhs = hole_compose(&ra, &readback_e(u).map_err(err)?).map_err(err)?;
            if !lhs.alpha_eq(&rhs) {
                return Err(format!(
                    "rbk({a} ⊛ {u}) = {lhs} but composing readbacks gives {rhs}"
                ));
            }
            probes_agree(
                &format!("measure of {a} ⊛ {u}"),
                |f, _| measure_e(&au, &o, f).unwrap(),
                |f, _| {
                    let af = |m: u64| measure_t(a, &o, f, m).unwrap();
                    measure_e(u, &o, &af).unwrap()
                },
            )?;
        }
    }
    Ok(())
}

/// Reductions survive composition with a test, unless the test is an
/// x-abstraction and the reduction used `*;λk.u → u_*`.
fn replacement(tests: &[TTerm], traces: &[Vec<(RuleTag, ETerm)>]) -> CheckResult {
    for t in tests.iter().take(2) {
        for trace in traces {
            let used_kstar = trace.iter().skip(1).any(|(r, _)| *r == RuleTag::KStar);
            if matches!(t, TTerm::XLam { .. }) && used_kstar {
                continue;
            }
            let start = star_compose(t, &trace[0].1);
            let out = Machine::new()
                .normalize(&start, DEFAULT_FUEL)
                .map_err(err)?;
            let mut visited = out.trace.terms();
            for (_, u) in trace {
                let target = star_compose(t, u);
                if !visited.any(|v| v.alpha_eq(&target)) {
                    return Err(format!("{start} does not reduce to {target}"));
                }
            }
        }
    }
    Ok(())
}

/// Abstractions `λx:A.N` of `m` with the types of the variables bound
/// around them.
fn abstractions(m: &LambdaTerm) -> Vec<(BTreeMap<Name, Type>, Name, Type, LambdaTerm)> {
    fn walk(
        m: &LambdaTerm,
        env: &mut BTreeMap<Name, Type>,
        out: &mut Vec<(BTreeMap<Name, Type>, Name, Type, LambdaTerm)>,
    ) {
        match m {
            LambdaTerm::Var(_) | LambdaTerm::Hole(_) => {}
            LambdaTerm::Abs { x, ty, body } => {
                let ty = ty.clone().expect("generated terms are annotated");
                out.push((env.clone(), x.clone(), ty.clone(), (**body).clone()));
                let shadowed = env.insert(x.clone(), ty);
                walk(body, env, out);
                match shadowed {
                    Some(t) => env.insert(x.clone(), t),
                    None => env.remove(x),
                };
            }
            LambdaTerm::App(f, a) => {
                walk(f, env, out);
                walk(a, env, out);
            }
        }
    }
    let mut out = vec![];
    walk(m, &mut BTreeMap::new(), &mut out);
    out
}

fn values(m: &LambdaTerm) -> Vec<(BTreeMap<Name, Type>, LambdaTerm)> {
    let mut out = vec![(BTreeMap::new(), m.clone())];
    for (env, x, ty, body) in abstractions(m) {
        let mut env = env;
        env.insert(x, ty);
        out.push((env, body));
    }
    out.retain(|(_, v)| v.is_value());
    out
}

fn sigma_for(env: &BTreeMap<Name, Type>) -> VarMeasureEnv {
    env.keys()
        .enumerate()
        .fold(VarMeasureEnv::strict(), |s, (i, x)| {
            s.with(x, 2 + 3 * i as u64)
        })
}

/// Substitution laws: readback, measure, typing and the translations all
/// commute with substituting a closed term for the variable of an
/// abstraction body.
fn substitution_laws(m: &LambdaTerm, seed: u64) -> CheckResult {
    for (i, (env, x, a, body)) in abstractions(m).into_iter().enumerate().take(MAX_PIECES) {
        if !matches!(a, Type::Arrow(..)) {
            continue;
        }
        let Some(n) = gen_term_of_type(&a, 2, seed.wrapping_add(i as u64)) else {
            continue;
        };
        let mut inner = env.clone();
        inner.insert(x.clone(), a.clone());
        let p = cbn(&n).map_err(err)?;

        // cbn(M[N/x]) = cbn(M)[cbn(N)/x]
        let lhs = cbn_in(&env, &body.subst_var(&x, &n)).map_err(err)?;
        let open = cbn_in(&inner, &body).map_err(err)?;
        let rhs = open.subst_var(&x, &p);
        if !lhs.alpha_eq(&rhs) {
            return Err(format!(
                "cbn({body}[{n}/{x}]) = {lhs} but cbn({body})[cbn({n})/{x}] = {rhs}"
            ));
        }
        // cbv(M[V/x]) = cbv(M)[aux(V)/x]
        let v = eval_big(&n, Strategy::CbV, EvalOrder::ArgumentFirst, 100_000)
            .map_err(err)?
            .result;
        let lhs = cbv_in(&env, &body.subst_var(&x, &v)).map_err(err)?;
        let aux = aux_cbv(&BTreeMap::new(), &v).map_err(err)?;
        let rhs = cbv_in(&inner, &body).map_err(err)?.subst_var(&x, &aux);
        if !lhs.alpha_eq(&rhs) {
            return Err(format!(
                "cbv({body}[{v}/{x}]) = {lhs} but cbv({body})[aux({v})/{x}] = {rhs}"
            ));
        }

        let u = var_cbn_in(&inner, &body).map_err(err)?;
        let z = fresh_name(&Name::new("z"), |s| u.occurs_free(s) || s == x.as_str());
        let t_open = TTerm::XLam {
            x: z,
            xty: Some(Type::base("X")),
            body: Box::new(u.clone()),
        };
        let t_pair = TTerm::pair(open.clone(), TTerm::Star);
        let rp = readback_p(&p);
        let sigma = sigma_for(&env);
        let sigma_x = sigma.clone().with(&x, measure_p(&p, &sigma).map_err(err)?);

        // readback and measure of p-terms
        let lhs = readback_p(&open.subst_var(&x, &p));
        let rhs = readback_p(&open).subst_var(&x, &rp);
        if !lhs.alpha_eq(&rhs) {
            return Err(format!("rbk({open}[{p}/{x}]) = {lhs}, expected {rhs}"));
        }
        let (l, r) = (
            measure_p(&open.subst_var(&x, &p), &sigma).map_err(err)?,
            measure_p(&open, &sigma_x).map_err(err)?,
        );
        if l != r {
            return Err(format!("measure of {open}[{p}/{x}] is {l}, expected {r}"));
        }
        // readback and measure of t-terms and e-terms
        for t in [&t_open, &t_pair] {
            let lhs = readback_t(&t.subst_var(&x, &p)).map_err(err)?;
            let rhs = readback_t(t).map_err(err)?.subst_var(&x, &rp);
            if !lhs.alpha_eq(&rhs) {
                return Err(format!("rbk({t}[{p}/{x}]) = {lhs}, expected {rhs}"));
            }
            let ts = t.subst_var(&x, &p);
            probes_agree(
                &format!("measure of {t}[{p}/{x}]"),
                |f, n| measure_t(&ts, &sigma, f, n).unwrap(),
                |f, n| measure_t(t, &sigma_x, f, n).unwrap(),
            )?;
        }
        let us = u.subst_var(&x, &p);
        let lhs = readback_e(&us).map_err(err)?;
        let rhs = readback_e(&u).map_err(err)?.subst_var(&x, &rp);
        if !lhs.alpha_eq(&rhs) {
            return Err(format!("rbk({u}[{p}/{x}]) = {lhs}, expected {rhs}"));
        }
        probes_agree(
            &format!("measure of {u}[{p}/{x}]"),
            |f, _| measure_e(&us, &sigma, f).unwrap(),
            |f, _| measure_e(&u, &sigma_x, f).unwrap(),
        )?;

        // typing is preserved by the substitution
        let gamma = |e: &BTreeMap<Name, Type>| TypeEnv {
            gamma: e.clone(),
            anchor: None,
        };
        let before = infer_ptq(&gamma(&inner), &Term::P(open.clone())).map_err(err)?;
        let after = infer_ptq(&gamma(&env), &Term::P(open.subst_var(&x, &p))).map_err(err)?;
        if before != after {
            return Err(format!(
                "substituting {p} for {x} in {open} changes its type from {before} to {after}"
            ));
        }
    }
    Ok(())
}

pub fn check_laws(m: &LambdaTerm, seed: u64) -> CheckResult {
    let Pieces {
        tests,
        eterms,
        traces,
    } = trace_pieces(m)?;
    composition_laws(&tests, &eterms)?;
    replacement(&tests, &traces)?;
    substitution_laws(m, seed)?;
    for (env, v) in values(m) {
        check_value_shape(&v, &env)?;
    }
    Ok(())
}
