//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Criteria 1-9 run the property harness on 500 generated instances per
//! property (sizes 0-8, fixed base seed). Criterion 10 pins worked examples.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use ptq_core::eval::{eval_big, step_lambda};
use ptq_core::harness::{check_with, verify, Instance, Property, VerifyConfig};
use ptq_core::machine::{
    classify, control_prefix, normalize, step, Machine, RuleTag, DEFAULT_FUEL,
};
use ptq_core::measure::{control_length, id, measure_e, measure_p, VarMeasureEnv};
use ptq_core::parse::{
    parse_eterm, parse_judgment, parse_lam_judgment, parse_lambda, parse_pterm, parse_qterm,
    parse_term, parse_tterm, parse_type,
};
use ptq_core::readback::{hole_compose, readback, readback_e, readback_judgment};
use ptq_core::syntax::{
    free_info, star_compose, AlphaEq, LambdaTerm, Name, PTerm, TTerm, TestClosure, Type,
};
use ptq_core::translate::{
    bracket_list, cbn, cbn_in, cbv_in, plotkin_translate, translate_type, var_cbn_in, var_cbv_in,
    EvalOrder, Pairing, Strategy, TypeTarget,
};
use ptq_core::typing::{
    check_judgment, check_lam_judgment, infer_lambda_box, infer_ptq, LamEnv, TypeEnv,
};

const SEED: u64 = 0x5eed_2024;
const COUNT: usize = 500;
const MAX_SIZE: usize = 8;

fn config() -> VerifyConfig {
    VerifyConfig {
        count: COUNT,
        max_size: MAX_SIZE,
        seed: SEED,
    }
}

/// Runs the properties on the shared instance set. Returns a summary line
/// and whether every instance passed.
fn run(properties: &[Property]) -> (bool, String) {
    let reports = verify(properties, &config());
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    let mut detail = format!("{} checks over {} instances", reports.len(), COUNT);
    if let Some(r) = failed.first() {
        detail = format!(
            "{} of {} failed; first: {} size={} seed={} `{}`: {}",
            failed.len(),
            reports.len(),
            r.property,
            r.size,
            r.seed,
            r.instance,
            r.counterexample.as_deref().unwrap_or("")
        );
    }
    (failed.is_empty(), detail)
}

fn lam(s: &str) -> LambdaTerm {
    parse_lambda(s).unwrap()
}

fn ty(s: &str) -> Type {
    parse_type(s).unwrap()
}

fn env(vars: &[(&str, &str)]) -> BTreeMap<Name, Type> {
    vars.iter().map(|(x, t)| (Name::new(x), ty(t))).collect()
}

fn e_eq(a: &ptq_core::syntax::ETerm, b: &str) -> bool {
    a.alpha_eq(&parse_eterm(b).unwrap())
}

type Golden = (&'static str, fn() -> bool);

fn goldens() -> Vec<Golden> {
    vec![
        ("k-subst by *", || {
            use ptq_core::syntax::Subst;
            parse_eterm("k ; x").unwrap().subst_k(&TTerm::Star) == parse_eterm("* ; x").unwrap()
        }),
        ("p-subst into a spine", || {
            use ptq_core::syntax::Subst;
            let r = parse_eterm("* ; x")
                .unwrap()
                .subst_var(&Name::new("x"), &parse_pterm(r"\(y:A,k:A). k ; y").unwrap());
            e_eq(&r, r"* ; \(y:A,k:A). k ; y")
        }),
        ("alpha equivalence", || {
            let a = parse_pterm(r"\(x:A,k:A). k ; x").unwrap();
            a.alpha_eq(&parse_pterm(r"\(y:A,k:A). k ; y").unwrap())
                && !a.alpha_eq(&parse_pterm(r"\(x:A,k:A). k ; z").unwrap())
        }),
        ("t-closing and opening", || {
            parse_eterm("k ; x").unwrap().t_close() == Ok(parse_eterm("* ; x").unwrap())
                && parse_eterm("* ; x").unwrap().t_open() == Ok(parse_eterm("k ; x").unwrap())
                && parse_eterm("<p, k> ; x").unwrap().t_close()
                    == Ok(parse_eterm("<p, *> ; x").unwrap())
        }),
        ("star composition", || {
            let a = parse_tterm("<x, *>").unwrap();
            let b = parse_tterm("<y, *>").unwrap();
            let c = TTerm::Star;
            star_compose(&a, &TTerm::Star) == a
                && star_compose(&b, &parse_eterm("* ; x").unwrap())
                    == parse_eterm("<y, *> ; x").unwrap()
                && star_compose(&a, &star_compose(&b, &c)) == parse_tterm("<y, <x, *>>").unwrap()
                && star_compose(&star_compose(&a, &b), &c) == parse_tterm("<y, <x, *>>").unwrap()
        }),
        ("free info", || {
            let closed = free_info(&parse_term(r"\(x:A,k:A). k ; x").unwrap());
            let spine = free_info(&parse_term("<y, *> ; x").unwrap());
            closed.vars.is_empty() && spine.vars.len() == 2
        }),
        ("ptq typing", || {
            let a = ty("A");
            let x = infer_ptq(
                &TypeEnv::new().with_var("x", a.clone()),
                &parse_term("x").unwrap(),
            );
            let idn = infer_ptq(&TypeEnv::new(), &parse_term(r"\(x:A,k:A). k ; x").unwrap());
            let q = infer_ptq(
                &TypeEnv::new().with_var("x", a.clone()),
                &parse_term("%k:A. k ; x").unwrap(),
            );
            let unbound = infer_ptq(
                &TypeEnv::new().with_anchor(ptq_core::typing::Anchor::star(a.clone())),
                &parse_term("* ; x").unwrap(),
            );
            x.unwrap().ptq_type() == Some(&ptq_core::syntax::PtqType::p(a.clone()))
                && idn.unwrap().ptq_type() == Some(&ptq_core::syntax::PtqType::p(ty("A -> A")))
                && q.unwrap().ptq_type() == Some(&ptq_core::syntax::PtqType::q(a))
                && unbound.unwrap_err().kind() == "UnboundVariable"
        }),
        ("lambda-box typing", || {
            let b = infer_lambda_box(&LamEnv::default().with_hole(ty("B")), &lam("[]"));
            let app = infer_lambda_box(
                &LamEnv::default()
                    .with_var("y", ty("A"))
                    .with_hole(ty("A -> B")),
                &lam("[] y"),
            );
            let clash = infer_lambda_box(&LamEnv::default(), &lam("[A] ([B] x)"));
            b.unwrap() == ty("B")
                && app.unwrap() == ty("B")
                && clash.unwrap_err().kind() == "HoleTypeClash"
        }),
        ("judgments", || {
            check_judgment(&parse_judgment("x:pA |- x : pA").unwrap()).is_ok()
                && check_judgment(&parse_judgment("|> k:tA |- k : tB").unwrap())
                    .unwrap_err()
                    .kind()
                    == "TypeClash"
                && check_judgment(&parse_judgment(r"|> *:tA |- * ; \k:A. k ; y").unwrap()).is_err()
        }),
        ("classification", || {
            classify(&parse_eterm(r"* ; \(x:A,k:A). k ; x").unwrap())
                .unwrap()
                .is_none()
                && classify(&parse_eterm(r"<y, *> ; \(x:A,k:B). k ; x").unwrap()).unwrap()
                    == Some(RuleTag::Beta)
                && classify(&parse_eterm(r"(%k:A. k ; x) ! *").unwrap()).unwrap()
                    == Some(RuleTag::QApp)
        }),
        ("single steps", || {
            let one = |s: &str| step(&parse_eterm(s).unwrap()).unwrap();
            let (r1, t1) = one(r"* ; \k:A. (k ; x)").unwrap();
            let (r2, t2) = one(r"<y, *> ; \(x:A,k:A). k ; x").unwrap();
            let (r3, t3) = one(r"\x:A. (* ; x) ; y").unwrap();
            e_eq(&r1, "* ; x")
                && t1 == RuleTag::KStar
                && e_eq(&r2, "* ; y")
                && t2 == RuleTag::Beta
                && e_eq(&r3, "* ; y")
                && t3 == RuleTag::PSubst
                && one("* ; x").is_none()
        }),
        (
            "var_cbv((\\x.x) y) normalizes to * ; y by Beta, QApp",
            || {
                let u = var_cbv_in(&env(&[("y", "A")]), &lam(r"(\x:A. x) y")).unwrap();
                let out = normalize(&u, DEFAULT_FUEL).unwrap();
                e_eq(&u, r"<y, *> ; \(x:A,k:A). (%k:A. k ; x) ! k")
                    && e_eq(out.final_term(), "* ; y")
                    && out.trace.rules() == vec![RuleTag::Beta, RuleTag::QApp]
            },
        ),
        ("normalize normal and one-step terms", || {
            let n = normalize(&parse_eterm("* ; x").unwrap(), DEFAULT_FUEL).unwrap();
            let k = normalize(&parse_eterm(r"* ; \k:A. (k ; x)").unwrap(), DEFAULT_FUEL).unwrap();
            n.trace.rules().is_empty()
                && e_eq(k.final_term(), "* ; x")
                && k.trace.rules().len() == 1
        }),
        ("control prefixes", || {
            let cp = |s: &str| control_prefix(&parse_eterm(s).unwrap()).unwrap();
            let (a, na) = cp(r"* ; \k:A. (k ; x)");
            let (b, nb) = cp(r"<y, *> ; \(x:A,k:A). k ; x");
            let (c, nc) = cp("* ; x");
            e_eq(&a, "* ; x")
                && na == 1
                && e_eq(&b, r"<y, *> ; \(x:A,k:A). k ; x")
                && nb == 0
                && e_eq(&c, "* ; x")
                && nc == 0
        }),
        ("measures", || {
            let z = VarMeasureEnv::zero();
            measure_p(&parse_pterm(r"\(x:A,k:A). k ; x").unwrap(), &z).unwrap() == 0
                && measure_e(&parse_eterm(r"* ; \k:A. (k ; x)").unwrap(), &z, &id).unwrap() == 2
                && measure_e(
                    &parse_eterm(r"<y, *> ; \(x:A,k:A). k ; x").unwrap(),
                    &z,
                    &id,
                )
                .unwrap()
                    == 1
        }),
        ("control lengths", || {
            let cl = |s: &str| control_length(&parse_eterm(s).unwrap()).unwrap();
            cl(r"* ; \k:A. (k ; x)") == 1
                && cl(r"<y, *> ; \(x:A,k:A). k ; x") == 0
                && cl("* ; x") == 0
        }),
        ("hole composition", || {
            let m = lam(r"\x:A. x");
            let captured = hole_compose(&lam(r"\x:A. []"), &lam("x")).unwrap();
            hole_compose(&lam("[]"), &m).unwrap() == m
                && hole_compose(&lam("[] y"), &m)
                    .unwrap()
                    .alpha_eq(&lam(r"(\x:A. x) y"))
                && captured.free_vars().contains(&Name::new("x"))
        }),
        ("readbacks", || {
            readback(&parse_term("*").unwrap()).unwrap() == LambdaTerm::hole()
                && readback_e(&parse_eterm(r"<y, *> ; \(x:A,k:A). k ; x").unwrap())
                    .unwrap()
                    .erase()
                    .alpha_eq(&lam(r"(\x. x) y"))
                && readback(&parse_term(&cbn(&lam(r"\x:A. x")).unwrap().to_string()).unwrap())
                    .unwrap()
                    .alpha_eq(&lam(r"\x:A. x"))
        }),
        ("readback judgments", || {
            let j = |s: &str| readback_judgment(&parse_judgment(s).unwrap()).unwrap();
            let rb = |s: &str| parse_lam_judgment(s).unwrap();
            j("x:pA |- x : pA") == rb("x:A |- x : A")
                && j("|> *:tB |- * : tB") == rb("[]:B |- [] : B")
                && check_lam_judgment(&j(r"|> *:t(A -> A) |- * ; \(x:A,k:A). k ; x")).is_ok()
        }),
        ("ptq translations", || {
            let n = cbn_in(&env(&[("x", "A -> B"), ("y", "A")]), &lam("x y")).unwrap();
            let v = cbv_in(&env(&[("x", "A")]), &lam("x")).unwrap();
            cbn(&lam("x")).unwrap() == PTerm::var("x")
                && v.alpha_eq(&parse_qterm("%k:A. k ; x").unwrap())
                && n.alpha_eq(&parse_pterm(r"\k:B. <y, k> ; x").unwrap())
        }),
        ("e-term translations", || {
            let ya = env(&[("y", "A")]);
            e_eq(&var_cbn_in(&ya, &lam("y")).unwrap(), "* ; y")
                && e_eq(
                    &var_cbn_in(&ya, &lam(r"(\x:A. x) y")).unwrap(),
                    r"<y, *> ; \(x:A,k:A). k ; x",
                )
                && e_eq(
                    &var_cbv_in(&ya, &lam(r"(\x:A. x) y")).unwrap(),
                    r"<y, *> ; \(x:A,k:A). (%k:A. k ; x) ! k",
                )
        }),
        ("plotkin translations", || {
            let plain = |m: &str, s, o| {
                plotkin_translate(&lam(m), s, o, Pairing::Curried)
                    .unwrap()
                    .into_plain()
                    .unwrap()
                    .erase()
            };
            let ff = EvalOrder::FunctionFirst;
            plain("x", Strategy::CbV, ff).alpha_eq(&lam(r"\k. k x"))
                && plain("x y", Strategy::CbN, ff).alpha_eq(&lam(r"\k. x (\m. m y k)"))
                && plain("f y", Strategy::CbV, EvalOrder::ArgumentFirst)
                    .alpha_eq(&lam(r"\k. (\k. k y) (\n. (\k. k f) (\m. m n k))"))
        }),
        ("type translations", || {
            translate_type(&ty("X"), TypeTarget::CbNCirc).unwrap() == ty("X")
                && translate_type(&ty("X -> X"), TypeTarget::CbNStar).unwrap()
                    == ty("((((X -> o) -> o) -> (X -> o) -> o) -> o) -> o")
                && translate_type(&ty("X -> X"), TypeTarget::CbVCirc).unwrap()
                    == ty("X -> (X -> o) -> o")
        }),
        ("bracket lists", || {
            bracket_list(&[]) == TTerm::Star
                && bracket_list(&[PTerm::var("x")]) == parse_tterm("<x, *>").unwrap()
                && bracket_list(&[PTerm::var("x"), PTerm::var("y")])
                    == parse_tterm("<x, <y, *>>").unwrap()
        }),
        ("values", || {
            lam("x").is_value() && lam(r"\x:A. x").is_value() && !lam("x y").is_value()
        }),
        ("lambda small steps", || {
            let af = EvalOrder::ArgumentFirst;
            step_lambda(&lam(r"(\x:A. x) (y z)"), Strategy::CbN, af) == Some(lam("y z"))
                && step_lambda(&lam(r"(\x:A. x) ((\y:A. y) z)"), Strategy::CbV, af)
                    == Some(lam(r"(\x:A. x) z"))
                && step_lambda(&lam("x"), Strategy::CbN, af).is_none()
        }),
        ("lambda big steps", || {
            let af = EvalOrder::ArgumentFirst;
            let a = eval_big(&lam(r"(\x:A -> A. x) (\y:A. y)"), Strategy::CbN, af, 100).unwrap();
            let b = eval_big(&lam(r"(\x:A. \z:B. x) y"), Strategy::CbN, af, 100).unwrap();
            let v = eval_big(&lam(r"\x:A. x"), Strategy::CbN, af, 100).unwrap();
            (a.result, a.steps) == (lam(r"\y:A. y"), 1)
                && (b.result, b.steps) == (lam(r"\z:B. y"), 1)
                && v.steps == 0
        }),
        ("harness examples", || {
            let inst = |m: &str, t: &str| Instance {
                term: lam(m),
                ty: ty(t),
                size: 0,
                seed: 0,
            };
            let good = [
                inst(r"(\x:X -> X. x) (\y:X. y)", "X -> X"),
                inst(r"(\x:X -> X. \z:X. x) (\y:X. y)", "X -> X -> X"),
                inst(r"(\x:X -> X. x) ((\y:X -> X. y) (\z:X. z))", "X -> X"),
            ];
            let machine = Machine::new();
            let all_pass = good.iter().all(|i| {
                Property::ALL
                    .iter()
                    .all(|&p| check_with(p, i, &machine).is_ok())
            });
            let faulty = Machine::without(RuleTag::KPair);
            let c = inst(
                r"((\f:(X -> X) -> X -> X. f) (\g:X -> X. g)) (\z:X. z)",
                "X -> X",
            );
            all_pass && check_with(Property::Soundness, &c, &faulty).is_err()
        }),
    ]
}

fn main() -> ExitCode {
    let started = Instant::now();
    let criteria: Vec<(&str, Vec<Property>)> = vec![
        ("type-system fidelity", vec![Property::Typing]),
        ("subject reduction", vec![Property::SubjectReduction]),
        ("readback soundness", vec![Property::ReadbackSoundness]),
        ("control-length law", vec![Property::Measure]),
        ("strong normalization", vec![Property::Termination]),
        ("precomputation", vec![Property::Precomputation]),
        ("readback identity", vec![Property::Readback]),
        (
            "simulation and diagrams",
            vec![
                Property::Completeness,
                Property::Soundness,
                Property::Simulation,
                Property::SimBeta,
            ],
        ),
        ("algebraic laws", vec![Property::Laws]),
    ];
    let mut all = true;
    for (i, (name, props)) in criteria.iter().enumerate() {
        let (ok, detail) = run(props);
        all &= ok;
        println!(
            "{} criterion {}: {} ({})",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            name,
            detail
        );
    }
    let goldens = goldens();
    let failed: Vec<&str> = goldens
        .iter()
        .filter(|(_, f)| !std::panic::catch_unwind(f).unwrap_or(false))
        .map(|(n, _)| *n)
        .collect();
    let ok = failed.is_empty();
    all &= ok;
    let detail = if ok {
        format!("{} golden examples", goldens.len())
    } else {
        format!("failing: {}", failed.join(", "))
    };
    println!(
        "{} criterion 10: worked examples ({})",
        if ok { "PASS" } else { "FAIL" },
        detail
    );
    println!("acceptance finished in {:.1?}", started.elapsed());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
