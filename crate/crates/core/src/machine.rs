//! The lazy one-step reduction on t-closed e-terms.
//!
//! An e-term is either normal or is itself the unique redex, so there are no
//! evaluation contexts: the top constructors decide everything.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parse::{parse_eterm, ParseError};
use crate::syntax::{close_body, AlphaEq, ETerm, PTerm, Subst, TTerm};

pub const DEFAULT_FUEL: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RuleTag {
    /// `*;λk.u → u_*`
    KStar,
    /// `<p,t>;λk.u → u[<p,t>/k]`
    KPair,
    /// `<p,t>;λ<x,k>.u → u[p/x,t/k]`
    Beta,
    /// `λx.u;p → u[p/x]`
    PSubst,
    /// `(λ̄k.u)t → u[t/k]`
    QApp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleClass {
    Beta,
    Control,
}

impl RuleTag {
    pub const ALL: [RuleTag; 5] = [
        RuleTag::KStar,
        RuleTag::KPair,
        RuleTag::Beta,
        RuleTag::PSubst,
        RuleTag::QApp,
    ];

    pub fn class(self) -> RuleClass {
        match self {
            RuleTag::Beta => RuleClass::Beta,
            _ => RuleClass::Control,
        }
    }

    pub fn is_control(self) -> bool {
        self.class() == RuleClass::Control
    }

    pub fn name(self) -> &'static str {
        match self {
            RuleTag::KStar => "KStar",
            RuleTag::KPair => "KPair",
            RuleTag::Beta => "Beta",
            RuleTag::PSubst => "PSubst",
            RuleTag::QApp => "QApp",
        }
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        RuleTag::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

impl fmt::Display for RuleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleClass::Beta => "beta",
            RuleClass::Control => "control",
        })
    }
}

/// The input still has a free `k` where `*` was required.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("term is not t-closed: {0}")]
pub struct NotTClosed(pub String);

fn require_closed(u: &ETerm) -> Result<(), NotTClosed> {
    if u.is_t_closed() {
        Ok(())
    } else {
        Err(NotTClosed(u.to_string()))
    }
}

fn rule_of(u: &ETerm) -> Option<RuleTag> {
    match u {
        ETerm::QApp(..) => Some(RuleTag::QApp),
        ETerm::PApp(t, p) => match (&**t, &**p) {
            (TTerm::XLam { .. }, _) => Some(RuleTag::PSubst),
            (TTerm::Star, PTerm::KLam { .. }) => Some(RuleTag::KStar),
            (TTerm::Pair(..), PTerm::KLam { .. }) => Some(RuleTag::KPair),
            (TTerm::Pair(..), PTerm::PairLam { .. }) => Some(RuleTag::Beta),
            _ => None,
        },
    }
}

/// The rule that applies to `u`, or `None` when `u` is normal.
pub fn classify(u: &ETerm) -> Result<Option<RuleTag>, NotTClosed> {
    require_closed(u)?;
    Ok(rule_of(u))
}

fn contract(u: &ETerm) -> Option<(ETerm, RuleTag)> {
    let rule = rule_of(u)?;
    let next = match u {
        ETerm::QApp(q, t) => q.body.subst_k(t),
        ETerm::PApp(t, p) => match (&**t, &**p) {
            (TTerm::XLam { x, body, .. }, _) => body.subst_var(x, p),
            (TTerm::Star, PTerm::KLam { body, .. }) => close_body(body),
            (TTerm::Pair(..), PTerm::KLam { body, .. }) => body.subst_k(t),
            (TTerm::Pair(arg, rest), PTerm::PairLam { x, body, .. }) => {
                body.subst_var(x, arg).subst_k(rest)
            }
            _ => unreachable!("rule_of returned {rule}"),
        },
    };
    Some((next, rule))
}

/// One reduction step.
pub fn step(u: &ETerm) -> Result<Option<(ETerm, RuleTag)>, NotTClosed> {
    require_closed(u)?;
    Ok(contract(u))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub initial: ETerm,
    pub steps: Vec<(RuleTag, ETerm)>,
    /// The last term is normal (false when fuel ran out).
    pub normal: bool,
}

impl Trace {
    pub fn last(&self) -> &ETerm {
        self.steps.last().map_or(&self.initial, |(_, u)| u)
    }

    /// Every term of the trace, starting with the initial one.
    pub fn terms(&self) -> impl Iterator<Item = &ETerm> {
        std::iter::once(&self.initial).chain(self.steps.iter().map(|(_, u)| u))
    }

    pub fn rules(&self) -> Vec<RuleTag> {
        self.steps.iter().map(|(r, _)| *r).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TraceJson::from(self)).expect("trace serializes")
    }

    pub fn from_json(src: &str) -> Result<Trace, TraceError> {
        let raw: TraceJson = serde_json::from_str(src)?;
        let initial = parse_eterm(&raw.initial)?;
        let mut steps = Vec::with_capacity(raw.steps.len());
        for s in raw.steps {
            let rule: RuleTag = s.rule.parse().map_err(TraceError::Invalid)?;
            if s.class != rule.class().to_string() {
                return Err(TraceError::Invalid(format!(
                    "rule {rule} has class {}",
                    rule.class()
                )));
            }
            steps.push((rule, parse_eterm(&s.term)?));
        }
        Ok(Trace {
            initial,
            steps,
            normal: raw.normal,
        })
    }

    /// Re-runs the machine from the initial term and checks that every
    /// recorded step is the one the machine takes.
    pub fn replay(&self) -> Result<ETerm, TraceError> {
        let mut cur = self.initial.clone();
        for (i, (rule, term)) in self.steps.iter().enumerate() {
            match step(&cur)? {
                Some((next, r)) if r == *rule && next.alpha_eq(term) => cur = next,
                _ => {
                    return Err(TraceError::Invalid(format!(
                        "step {} does not replay",
                        i + 1
                    )))
                }
            }
        }
        if self.normal != step(&cur)?.is_none() {
            return Err(TraceError::Invalid(
                "normal flag disagrees with the final term".into(),
            ));
        }
        Ok(cur)
    }
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("malformed trace JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    NotTClosed(#[from] NotTClosed),
    #[error("invalid trace: {0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize)]
struct TraceJson {
    initial: String,
    steps: Vec<StepJson>,
    normal: bool,
}

#[derive(Serialize, Deserialize)]
struct StepJson {
    rule: String,
    class: String,
    term: String,
}

impl From<&Trace> for TraceJson {
    fn from(t: &Trace) -> Self {
        TraceJson {
            initial: t.initial.to_string(),
            steps: t
                .steps
                .iter()
                .map(|(r, u)| StepJson {
                    rule: r.to_string(),
                    class: r.class().to_string(),
                    term: u.to_string(),
                })
                .collect(),
            normal: t.normal,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub trace: Trace,
    pub exhausted: bool,
}

impl Outcome {
    pub fn final_term(&self) -> &ETerm {
        self.trace.last()
    }
}

/// A reduction machine. The default one implements all five rules; a rule
/// can be switched off to check that the harness notices.
#[derive(Clone, Copy, Debug, Default)]
pub struct Machine {
    disabled: Option<RuleTag>,
}

impl Machine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn without(rule: RuleTag) -> Self {
        Machine {
            disabled: Some(rule),
        }
    }

    pub fn step(&self, u: &ETerm) -> Result<Option<(ETerm, RuleTag)>, NotTClosed> {
        require_closed(u)?;
        Ok(contract(u).filter(|(_, r)| Some(*r) != self.disabled))
    }

    pub fn normalize(&self, u: &ETerm, fuel: usize) -> Result<Outcome, NotTClosed> {
        let mut steps = Vec::new();
        let mut cur = u.clone();
        loop {
            if steps.len() == fuel {
                let normal = self.step(&cur)?.is_none();
                return Ok(Outcome {
                    trace: Trace {
                        initial: u.clone(),
                        steps,
                        normal,
                    },
                    exhausted: !normal,
                });
            }
            match self.step(&cur)? {
                Some((next, rule)) => {
                    steps.push((rule, next.clone()));
                    cur = next;
                }
                None => {
                    return Ok(Outcome {
                        trace: Trace {
                            initial: u.clone(),
                            steps,
                            normal: true,
                        },
                        exhausted: false,
                    })
                }
            }
        }
    }
}

pub fn normalize(u: &ETerm, fuel: usize) -> Result<Outcome, NotTClosed> {
    Machine::new().normalize(u, fuel)
}

/// Runs control steps until a β-redex or a normal form, returning the term
/// reached and the number of steps.
pub fn control_prefix(u: &ETerm) -> Result<(ETerm, usize), NotTClosed> {
    let mut cur = u.clone();
    let mut n = 0;
    while let Some((next, rule)) = step(&cur)? {
        if !rule.is_control() {
            break;
        }
        cur = next;
        n += 1;
    }
    Ok((cur, n))
}
