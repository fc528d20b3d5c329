//! Reference call-by-name and call-by-value evaluators for λ-terms. Both are
//! lazy: nothing is reduced under an abstraction. Open terms may get stuck
//! on a variable in function position; that is reported, not an error.

use thiserror::Error;

use crate::syntax::LambdaTerm;
use crate::translate::{EvalOrder, Strategy};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("evaluation did not finish within {0} β-steps")]
    FuelExhausted(usize),
}

impl EvalError {
    pub fn kind(&self) -> &'static str {
        "FuelExhausted"
    }
}

pub fn is_value(m: &LambdaTerm) -> bool {
    m.is_value()
}

fn beta(f: &LambdaTerm, a: &LambdaTerm) -> Option<LambdaTerm> {
    match f {
        LambdaTerm::Abs { x, body, .. } => Some(body.subst_var(x, a)),
        _ => None,
    }
}

fn app(f: &LambdaTerm, a: &LambdaTerm) -> LambdaTerm {
    LambdaTerm::app(f.clone(), a.clone())
}

/// One small step, or `None` when `m` is a value or stuck.
pub fn step_lambda(m: &LambdaTerm, s: Strategy, order: EvalOrder) -> Option<LambdaTerm> {
    let LambdaTerm::App(f, a) = m else {
        return None;
    };
    match s {
        Strategy::CbN => beta(f, a).or_else(|| Some(app(&step_lambda(f, s, order)?, a))),
        Strategy::CbV if a.is_value() && matches!(**f, LambdaTerm::Abs { .. }) => beta(f, a),
        Strategy::CbV => match order {
            EvalOrder::FunctionFirst => match step_lambda(f, s, order) {
                Some(f2) => Some(app(&f2, a)),
                None if f.is_value() => Some(app(f, &step_lambda(a, s, order)?)),
                None => None,
            },
            EvalOrder::ArgumentFirst => match step_lambda(a, s, order) {
                Some(a2) => Some(app(f, &a2)),
                None if a.is_value() => Some(app(&step_lambda(f, s, order)?, a)),
                None => None,
            },
        },
    }
}

/// `m` followed by each of its reducts, up to a value or stuck term.
pub fn reduction_sequence(
    m: &LambdaTerm,
    s: Strategy,
    order: EvalOrder,
    fuel: usize,
) -> Result<Vec<LambdaTerm>, EvalError> {
    let mut seq = vec![m.clone()];
    while let Some(next) = step_lambda(seq.last().unwrap(), s, order) {
        if seq.len() > fuel {
            return Err(EvalError::FuelExhausted(fuel));
        }
        seq.push(next);
    }
    Ok(seq)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    /// A value, or a stuck application when the term is open.
    pub result: LambdaTerm,
    /// Number of β-steps.
    pub steps: usize,
}

impl Evaluation {
    pub fn is_value(&self) -> bool {
        self.result.is_value()
    }
}

struct Big {
    s: Strategy,
    order: EvalOrder,
    fuel: usize,
    steps: usize,
}

impl Big {
    fn tick(&mut self) -> Result<(), EvalError> {
        if self.steps == self.fuel {
            return Err(EvalError::FuelExhausted(self.fuel));
        }
        self.steps += 1;
        Ok(())
    }

    fn eval(&mut self, m: &LambdaTerm) -> Result<LambdaTerm, EvalError> {
        let LambdaTerm::App(f, a) = m else {
            return Ok(m.clone());
        };
        match (self.s, self.order) {
            (Strategy::CbN, _) => {
                let fv = self.eval(f)?;
                match &fv {
                    LambdaTerm::Abs { x, body, .. } => {
                        self.tick()?;
                        self.eval(&body.subst_var(x, a))
                    }
                    _ => Ok(app(&fv, a)),
                }
            }
            (Strategy::CbV, EvalOrder::FunctionFirst) => {
                let fv = self.eval(f)?;
                if !fv.is_value() {
                    return Ok(app(&fv, a));
                }
                let av = self.eval(a)?;
                self.apply_v(fv, av)
            }
            (Strategy::CbV, EvalOrder::ArgumentFirst) => {
                let av = self.eval(a)?;
                if !av.is_value() {
                    return Ok(app(f, &av));
                }
                let fv = self.eval(f)?;
                self.apply_v(fv, av)
            }
        }
    }

    fn apply_v(&mut self, fv: LambdaTerm, av: LambdaTerm) -> Result<LambdaTerm, EvalError> {
        match (&fv, av.is_value()) {
            (LambdaTerm::Abs { x, body, .. }, true) => {
                self.tick()?;
                self.eval(&body.subst_var(x, &av))
            }
            _ => Ok(app(&fv, &av)),
        }
    }
}

/// Big-step evaluation. In debug builds the result is checked against the
/// small-step semantics.
pub fn eval_big(
    m: &LambdaTerm,
    s: Strategy,
    order: EvalOrder,
    fuel: usize,
) -> Result<Evaluation, EvalError> {
    let mut big = Big {
        s,
        order,
        fuel,
        steps: 0,
    };
    let result = big.eval(m)?;
    let out = Evaluation {
        result,
        steps: big.steps,
    };
    if cfg!(debug_assertions) {
        let seq = reduction_sequence(m, s, order, fuel)?;
        debug_assert!(
            seq.last().unwrap().alpha_eq(&out.result),
            "big-step and small-step disagree on {m}"
        );
        debug_assert_eq!(seq.len() - 1, out.steps);
    }
    Ok(out)
}
