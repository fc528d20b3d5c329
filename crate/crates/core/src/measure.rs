//! The termination measure: a natural number for p-terms, a functional for
//! tests, q-terms and e-terms. The constant `*` and the variable `k` are
//! measured alike, which is what measuring the closed body `u_*` amounts to.
//!
//! Arithmetic wraps on overflow so that functional identities stay exact on
//! fast-growing probe functions.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::machine::NotTClosed;
use crate::syntax::{ETerm, Name, PTerm, QTerm, TTerm, Term};

pub type NatFn<'a> = &'a dyn Fn(u64) -> u64;

pub fn id(n: u64) -> u64 {
    n
}

/// `σ`: measures of free p-variables. With `default_zero` every variable
/// not in the map measures 0 (the environment `o`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarMeasureEnv {
    pub map: BTreeMap<Name, u64>,
    pub default_zero: bool,
}

impl VarMeasureEnv {
    /// The everywhere-zero environment `o`.
    pub fn zero() -> Self {
        VarMeasureEnv {
            map: BTreeMap::new(),
            default_zero: true,
        }
    }

    pub fn strict() -> Self {
        Self::default()
    }

    pub fn with(mut self, x: &Name, n: u64) -> Self {
        self.map.insert(x.clone(), n);
        self
    }

    fn get(&self, x: &Name) -> Option<u64> {
        self.map.get(x).copied().or(self.default_zero.then_some(0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("no measure for free variable `{0}`")]
    MissingVariableMeasure(String),
    #[error(transparent)]
    NotTClosed(#[from] NotTClosed),
    #[error("measure of an e-term is 0")]
    MeasureZero,
}

impl MeasureError {
    pub fn kind(&self) -> &'static str {
        match self {
            MeasureError::MissingVariableMeasure(_) => "MissingVariableMeasure",
            MeasureError::NotTClosed(_) => "NotTClosed",
            MeasureError::MeasureZero => "MeasureZero",
        }
    }
}

type Result<T> = std::result::Result<T, MeasureError>;

/// `σ` extended by the x-binders passed on the way down.
struct Sigma<'a> {
    base: &'a VarMeasureEnv,
    frame: Option<(&'a Name, u64, &'a Sigma<'a>)>,
}

impl Sigma<'_> {
    fn get(&self, x: &Name) -> u64 {
        match self.frame {
            Some((y, n, _)) if y == x => n,
            Some((_, _, outer)) => outer.get(x),
            None => self
                .base
                .get(x)
                .expect("free variables are checked up front"),
        }
    }
}

fn p_measure(p: &PTerm, s: &Sigma) -> u64 {
    match p {
        PTerm::Var(x) => s.get(x),
        PTerm::PairLam { .. } => 0,
        PTerm::KLam { body, .. } => e_measure(body, s, &id),
    }
}

fn t_measure(t: &TTerm, s: &Sigma, f: NatFn, n: u64) -> u64 {
    match t {
        TTerm::Star | TTerm::K => f(n),
        TTerm::Pair(..) => n,
        TTerm::XLam { x, body, .. } => {
            let ext = Sigma {
                base: s.base,
                frame: Some((x, n, s)),
            };
            e_measure(body, &ext, f)
        }
    }
}

fn e_measure(u: &ETerm, s: &Sigma, f: NatFn) -> u64 {
    match u {
        ETerm::PApp(t, p) => t_measure(t, s, f, p_measure(p, s)).wrapping_add(1),
        ETerm::QApp(q, t) => {
            let tf = |n: u64| t_measure(t, s, f, n);
            e_measure(&q.body, s, &tf).wrapping_add(1)
        }
    }
}

fn precheck(term: &Term, sigma: &VarMeasureEnv) -> Result<()> {
    let closed = match term {
        Term::T(t) => t.is_t_closed(),
        Term::E(u) => u.is_t_closed(),
        _ => true,
    };
    if !closed {
        return Err(NotTClosed(term.to_string()).into());
    }
    if !sigma.default_zero {
        if let Some(x) = term
            .free_vars()
            .into_iter()
            .find(|x| !sigma.map.contains_key(x))
        {
            return Err(MeasureError::MissingVariableMeasure(x.to_string()));
        }
    }
    Ok(())
}

fn sigma(base: &VarMeasureEnv) -> Sigma<'_> {
    Sigma { base, frame: None }
}

/// `⟨p⟩σ`
pub fn measure_p(p: &PTerm, env: &VarMeasureEnv) -> Result<u64> {
    precheck(&Term::P(p.clone()), env)?;
    Ok(p_measure(p, &sigma(env)))
}

/// `⟨t⟩σ f n`
pub fn measure_t(t: &TTerm, env: &VarMeasureEnv, f: NatFn, n: u64) -> Result<u64> {
    precheck(&Term::T(t.clone()), env)?;
    Ok(t_measure(t, &sigma(env), f, n))
}

/// `⟨q⟩σ f`
pub fn measure_q(q: &QTerm, env: &VarMeasureEnv, f: NatFn) -> Result<u64> {
    precheck(&Term::Q(q.clone()), env)?;
    Ok(e_measure(&q.body, &sigma(env), f))
}

/// `⟨u⟩σ f`
pub fn measure_e(u: &ETerm, env: &VarMeasureEnv, f: NatFn) -> Result<u64> {
    precheck(&Term::E(u.clone()), env)?;
    Ok(e_measure(u, &sigma(env), f))
}

/// Number of control steps before the next β-redex or normal form:
/// `⟨u⟩o id − 1`.
pub fn control_length(u: &ETerm) -> Result<u64> {
    match measure_e(u, &VarMeasureEnv::zero(), &id)? {
        0 => Err(MeasureError::MeasureZero),
        m => Ok(m - 1),
    }
}

pub type Probe = (&'static str, fn(u64) -> u64);

/// Functions on which functional equalities between measures are compared.
pub fn probe_functions() -> Vec<Probe> {
    vec![
        ("id", id),
        ("const0", |_| 0),
        ("const7", |_| 7),
        ("succ", |n| n.wrapping_add(1)),
        ("2n+3", |n| n.wrapping_mul(2).wrapping_add(3)),
    ]
}

pub const PROBE_ARGS: [u64; 4] = [0, 1, 5, 13];
