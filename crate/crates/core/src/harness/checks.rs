//! Checks of the end-to-end properties on one source term.
//!
//! Each check returns `Err` with a human-readable counterexample on
//! failure. Machine runs go through [`run_checked`], which can assert the
//! per-step invariants along the way.

use std::collections::BTreeMap;

use crate::eval::{eval_big, reduction_sequence};
use crate::machine::{classify, control_prefix, Machine, Outcome, RuleTag, DEFAULT_FUEL};
use crate::measure::control_length;
use crate::readback::{readback_e, readback_judgment, readback_p, readback_q};
use crate::syntax::{
    free_info, AlphaEq, ETerm, LambdaTerm, PtqType, QTerm, TTerm, Term, TestPosition, Type,
};
use crate::translate::{cbn, cbv, var_cbn, var_cbv, EvalOrder, Strategy};
use crate::typing::{check_lam_judgment, infer_ptq, Anchor, Inferred, Judgment, TypeEnv};

pub type CheckResult = Result<(), String>;

/// Oracle evaluation order for each strategy.
pub const ORACLE_ORDER: EvalOrder = EvalOrder::ArgumentFirst;

/// Fuel for the source-level oracle, in β-steps.
pub const ORACLE_FUEL: usize = 100_000;

/// Which per-step invariants [`run_checked`] asserts.
#[derive(Clone, Copy, Debug, Default)]
pub struct StepChecks {
    pub subject_reduction: bool,
    pub readback_soundness: bool,
    pub control_length: bool,
}

impl StepChecks {
    pub const ALL: StepChecks = StepChecks {
        subject_reduction: true,
        readback_soundness: true,
        control_length: true,
    };
    pub const NONE: StepChecks = StepChecks {
        subject_reduction: false,
        readback_soundness: false,
        control_length: false,
    };
}

fn star_env(a: &Type) -> TypeEnv {
    TypeEnv::new().with_anchor(Anchor::star(a.clone()))
}

fn well_typed_e(env: &TypeEnv, u: &ETerm) -> CheckResult {
    match infer_ptq(env, &Term::E(u.clone())) {
        Ok(Inferred::WellTypedE) => {}
        Ok(other) => return Err(format!("e-term {u} inferred as {other}")),
        Err(e) => return Err(format!("{u} is ill-typed: {e}")),
    }
    match free_info(&Term::E(u.clone())).test {
        TestPosition::Star => Ok(()),
        other => Err(format!("{u} has test position {other:?}")),
    }
}

fn readback_step(before: &ETerm, rule: RuleTag, after: &ETerm) -> CheckResult {
    let rb = readback_e(before).map_err(|e| e.to_string())?;
    let ra = readback_e(after).map_err(|e| e.to_string())?;
    let ok = if rule.is_control() {
        rb.alpha_eq(&ra)
    } else {
        rb.one_step_reducts().iter().any(|r| r.alpha_eq(&ra))
    };
    if ok {
        Ok(())
    } else {
        Err(format!(
            "{rule} step {before} --> {after} reads back {rb} --> {ra}"
        ))
    }
}

fn control_length_matches(u: &ETerm) -> Result<u64, String> {
    let len = control_length(u).map_err(|e| format!("{u}: {e}"))?;
    let (stop, observed) = control_prefix(u).map_err(|e| e.to_string())?;
    if let Some(rule) = classify(&stop).map_err(|e| e.to_string())? {
        if rule.is_control() {
            return Err(format!("control prefix of {u} stopped at a {rule} redex"));
        }
    }
    if len != observed as u64 {
        return Err(format!(
            "{u}: measure gives {len} control steps, machine takes {observed}"
        ));
    }
    Ok(len)
}

/// Normalizes `u`, which is well-typed under `▷ *:tA`, asserting the
/// selected invariants on every step. Exhausting the fuel is a failure.
pub fn run_checked(
    machine: &Machine,
    u: &ETerm,
    a: &Type,
    checks: StepChecks,
) -> Result<Outcome, String> {
    let env = star_env(a);
    let out = machine
        .normalize(u, DEFAULT_FUEL)
        .map_err(|e| e.to_string())?;
    if out.exhausted {
        return Err(format!(
            "no normal form within {DEFAULT_FUEL} steps from {u}"
        ));
    }
    if checks.subject_reduction {
        for v in out.trace.terms() {
            well_typed_e(&env, v)?;
        }
    }
    let mut before = &out.trace.initial;
    let mut len_before = if checks.control_length {
        Some(control_length_matches(before)?)
    } else {
        None
    };
    for (rule, after) in &out.trace.steps {
        if checks.readback_soundness {
            readback_step(before, *rule, after)?;
        }
        if checks.control_length {
            let len_after = control_length_matches(after)?;
            if rule.is_control() && len_before != Some(len_after + 1) {
                return Err(format!(
                    "{rule} step {before} --> {after} changes the control length from {} to {len_after}",
                    len_before.unwrap()
                ));
            }
            len_before = Some(len_after);
        }
        before = after;
    }
    Ok(out)
}

/// `*;cbn(M)` or `cbv(M)*`.
pub fn start_term(m: &LambdaTerm, s: Strategy) -> Result<ETerm, String> {
    Ok(match s {
        Strategy::CbN => ETerm::pcomp(TTerm::Star, cbn(m).map_err(|e| e.to_string())?),
        Strategy::CbV => ETerm::qapp(cbv(m).map_err(|e| e.to_string())?, TTerm::Star),
    })
}

pub fn var_translation(m: &LambdaTerm, s: Strategy) -> Result<ETerm, String> {
    match s {
        Strategy::CbN => var_cbn(m),
        Strategy::CbV => var_cbv(m),
    }
    .map_err(|e| e.to_string())
}

fn oracle(m: &LambdaTerm, s: Strategy) -> Result<Vec<LambdaTerm>, String> {
    reduction_sequence(m, s, ORACLE_ORDER, ORACLE_FUEL).map_err(|e| format!("OracleDiverged: {e}"))
}

/// The four e-terms whose runs are checked for an instance.
pub fn runs_of(m: &LambdaTerm) -> Result<Vec<ETerm>, String> {
    Ok(vec![
        start_term(m, Strategy::CbN)?,
        var_translation(m, Strategy::CbN)?,
        start_term(m, Strategy::CbV)?,
        var_translation(m, Strategy::CbV)?,
    ])
}

/// `⊢ cbn(M):pA` and `⊢ cbv(M):qA`; also the readback of each judgment
/// is derivable with holes.
pub fn check_typing(m: &LambdaTerm, a: &Type) -> CheckResult {
    let pn = cbn(m).map_err(|e| e.to_string())?;
    let qv = cbv(m).map_err(|e| e.to_string())?;
    let cases = [
        (Term::P(pn), PtqType::p(a.clone())),
        (Term::Q(qv), PtqType::q(a.clone())),
    ];
    for (subject, claimed) in cases {
        let j = Judgment {
            env: TypeEnv::new(),
            subject,
            claimed: Some(claimed),
        };
        let lj = readback_judgment(&j).map_err(|e| format!("{j}: {e}"))?;
        check_lam_judgment(&lj).map_err(|e| format!("readback {lj}: {e}"))?;
        if free_info(&j.subject).test != TestPosition::None {
            return Err(format!("{} is not t-closed", j.subject));
        }
    }
    for u in runs_of(m)? {
        well_typed_e(&star_env(a), &u)?;
        let j = Judgment {
            env: star_env(a),
            subject: Term::E(u),
            claimed: None,
        };
        let lj = readback_judgment(&j).map_err(|e| format!("{j}: {e}"))?;
        check_lam_judgment(&lj).map_err(|e| format!("readback {lj}: {e}"))?;
    }
    Ok(())
}

pub fn check_runs(m: &LambdaTerm, a: &Type, checks: StepChecks) -> CheckResult {
    for u in runs_of(m)? {
        run_checked(&Machine::new(), &u, a, checks)?;
    }
    Ok(())
}

/// The control prefix of `*;cbn(M)` (resp. `cbv(M)*`) is the e-term
/// translation, which is control-normal.
pub fn check_precomputation(m: &LambdaTerm) -> CheckResult {
    for s in [Strategy::CbN, Strategy::CbV] {
        let start = start_term(m, s)?;
        let (reached, _) = control_prefix(&start).map_err(|e| e.to_string())?;
        let expected = var_translation(m, s)?;
        if !reached.alpha_eq(&expected) {
            return Err(format!(
                "{s}: control prefix of {start} reaches {reached}, not {expected}"
            ));
        }
        if let Some(rule) = classify(&expected).map_err(|e| e.to_string())? {
            if rule.is_control() {
                return Err(format!("{s}: {expected} has a {rule} redex"));
            }
        }
    }
    Ok(())
}

/// Readbacks of the translations give back the source term.
pub fn check_readback_identity(m: &LambdaTerm) -> CheckResult {
    let pn = cbn(m).map_err(|e| e.to_string())?;
    let qv: QTerm = cbv(m).map_err(|e| e.to_string())?;
    let mut images = vec![("cbn", readback_p(&pn)), ("cbv", readback_q(&qv))];
    for s in [Strategy::CbN, Strategy::CbV] {
        images.push((
            "start",
            readback_e(&start_term(m, s)?).map_err(|e| e.to_string())?,
        ));
        images.push((
            "var",
            readback_e(&var_translation(m, s)?).map_err(|e| e.to_string())?,
        ));
    }
    for (what, r) in images {
        if !r.alpha_eq(m) {
            return Err(format!("readback of {what}({m}) is {r}"));
        }
    }
    Ok(())
}

/// The machine trace from the start term visits the e-term translation of
/// every oracle reduct, in order.
pub fn check_completeness(m: &LambdaTerm, s: Strategy, machine: &Machine, a: &Type) -> CheckResult {
    let seq = oracle(m, s)?;
    let out = run_checked(machine, &start_term(m, s)?, a, StepChecks::NONE)?;
    let mut terms = out.trace.terms();
    for n in &seq {
        let target = var_translation(n, s)?;
        if !terms.any(|u| u.alpha_eq(&target)) {
            return Err(format!(
                "{s}: trace from {} never reaches {target} = var({n})",
                out.trace.initial
            ));
        }
    }
    Ok(())
}

/// Every term of the machine trace reads back to an oracle reduct, in
/// order, and the machine's normal form reads back to the oracle's result.
pub fn check_soundness(m: &LambdaTerm, s: Strategy, machine: &Machine, a: &Type) -> CheckResult {
    let seq = oracle(m, s)?;
    let out = run_checked(machine, &start_term(m, s)?, a, StepChecks::NONE)?;
    let mut pos = 0;
    for u in out.trace.terms() {
        let r = readback_e(u).map_err(|e| e.to_string())?;
        match seq[pos..].iter().position(|n| n.alpha_eq(&r)) {
            Some(i) => pos += i,
            None => {
                return Err(format!(
                    "{s}: {u} reads back to {r}, which is not a later reduct of {m}"
                ))
            }
        }
    }
    let last = seq.last().unwrap();
    if pos != seq.len() - 1 {
        return Err(format!(
            "{s}: machine stops at {} reading back to {}, oracle reaches {last}",
            out.final_term(),
            seq[pos]
        ));
    }
    Ok(())
}

/// One oracle step is matched by machine steps between e-term
/// translations, and normal forms correspond.
pub fn check_simulation(m: &LambdaTerm, s: Strategy, machine: &Machine, a: &Type) -> CheckResult {
    let seq = oracle(m, s)?;
    for (i, n) in seq.iter().enumerate() {
        let u = var_translation(n, s)?;
        let machine_normal = machine.step(&u).map_err(|e| e.to_string())?.is_none();
        let oracle_normal = i + 1 == seq.len();
        if machine_normal != oracle_normal {
            return Err(format!(
                "{s}: var({n}) = {u} is {}machine-normal but {n} is {}oracle-normal",
                if machine_normal { "" } else { "not " },
                if oracle_normal { "" } else { "not " }
            ));
        }
        if let Some(next) = seq.get(i + 1) {
            let target = var_translation(next, s)?;
            let out = run_checked(machine, &u, a, StepChecks::NONE)?;
            if !out.trace.terms().any(|v| v.alpha_eq(&target)) {
                return Err(format!(
                    "{s}: {n} -> {next} but {u} does not reach {target}"
                ));
            }
        }
    }
    Ok(())
}

/// The machine normal form of the e-term translation reads back to the
/// lazy normal form of the source term.
pub fn check_sim_beta(m: &LambdaTerm, s: Strategy, machine: &Machine, a: &Type) -> CheckResult {
    let expected =
        eval_big(m, s, ORACLE_ORDER, ORACLE_FUEL).map_err(|e| format!("OracleDiverged: {e}"))?;
    let out = run_checked(machine, &var_translation(m, s)?, a, StepChecks::NONE)?;
    let r = readback_e(out.final_term()).map_err(|e| e.to_string())?;
    if r.alpha_eq(&expected.result) {
        Ok(())
    } else {
        Err(format!(
            "{s}: normal form {} reads back to {r}, expected {}",
            out.final_term(),
            expected.result
        ))
    }
}

/// Values translate to a single control step away from their e-term:
/// `cbv(V) = λ̄k.k;aux(V)` literally, and `*;cbn(V)` is already `var(V)`.
pub fn check_value_shape(v: &LambdaTerm, env: &BTreeMap<crate::syntax::Name, Type>) -> CheckResult {
    use crate::translate::{aux_cbn, aux_cbv, cbn_in, cbv_in};
    let q = cbv_in(env, v).map_err(|e| e.to_string())?;
    let aux = aux_cbv(env, v).map_err(|e| e.to_string())?;
    let shape = QTerm::new(q.kty.clone(), ETerm::pcomp(TTerm::K, aux));
    if !q.alpha_eq(&shape) {
        return Err(format!("cbv({v}) = {q} is not {shape}"));
    }
    let p = cbn_in(env, v).map_err(|e| e.to_string())?;
    let aux = aux_cbn(env, v).map_err(|e| e.to_string())?;
    if !p.alpha_eq(&aux) {
        return Err(format!("cbn({v}) = {p} differs from aux({v}) = {aux}"));
    }
    Ok(())
}
