//! Property harness: random closed simply typed terms, and checks of the
//! typing, reduction, readback, measure and simulation properties on them.
//!
//! Instance `i` of a run with base seed `K` and maximum size `S` uses size
//! `i mod (S+1)` and seed `K+i`, so every failure replays from
//! `(property, size, seed)` alone.

pub mod checks;
mod gen;
mod laws;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::machine::Machine;
use crate::syntax::{LambdaTerm, Type};
use crate::translate::Strategy;

pub use checks::{StepChecks, ORACLE_ORDER};
pub use gen::{gen_term_of_type, gen_typed_term};
pub use laws::check_laws;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Typing,
    SubjectReduction,
    ReadbackSoundness,
    Measure,
    Termination,
    Precomputation,
    Readback,
    Completeness,
    Soundness,
    Simulation,
    SimBeta,
    Laws,
}

impl Property {
    pub const ALL: [Property; 12] = [
        Property::Typing,
        Property::SubjectReduction,
        Property::ReadbackSoundness,
        Property::Measure,
        Property::Termination,
        Property::Precomputation,
        Property::Readback,
        Property::Completeness,
        Property::Soundness,
        Property::Simulation,
        Property::SimBeta,
        Property::Laws,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Typing => "typing",
            Property::SubjectReduction => "subject-reduction",
            Property::ReadbackSoundness => "readback-soundness",
            Property::Measure => "measure",
            Property::Termination => "termination",
            Property::Precomputation => "precomputation",
            Property::Readback => "readback",
            Property::Completeness => "completeness",
            Property::Soundness => "soundness",
            Property::Simulation => "simulation",
            Property::SimBeta => "sim-beta",
            Property::Laws => "laws",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub instance: String,
    pub size: usize,
    pub seed: u64,
    pub verdict: Verdict,
    pub counterexample: Option<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// A generated source term with its type.
#[derive(Clone, Debug)]
pub struct Instance {
    pub term: LambdaTerm,
    pub ty: Type,
    pub size: usize,
    pub seed: u64,
}

impl Instance {
    pub fn generate(size: usize, seed: u64) -> Self {
        let (term, ty) = gen_typed_term(size, seed);
        Instance {
            term,
            ty,
            size,
            seed,
        }
    }
}

pub const STRATEGIES: [Strategy; 2] = [Strategy::CbN, Strategy::CbV];

/// Runs one property on one instance with the given machine.
pub fn check_with(property: Property, inst: &Instance, machine: &Machine) -> checks::CheckResult {
    let (m, a) = (&inst.term, &inst.ty);
    let each = |f: fn(&LambdaTerm, Strategy, &Machine, &Type) -> checks::CheckResult| {
        STRATEGIES.iter().try_for_each(|&s| f(m, s, machine, a))
    };
    let only = |c: StepChecks| checks::check_runs(m, a, c);
    match property {
        Property::Typing => checks::check_typing(m, a),
        Property::SubjectReduction => only(StepChecks {
            subject_reduction: true,
            ..StepChecks::NONE
        }),
        Property::ReadbackSoundness => only(StepChecks {
            readback_soundness: true,
            ..StepChecks::NONE
        }),
        Property::Measure => only(StepChecks {
            control_length: true,
            ..StepChecks::NONE
        }),
        Property::Termination => only(StepChecks::NONE),
        Property::Precomputation => checks::check_precomputation(m),
        Property::Readback => checks::check_readback_identity(m),
        Property::Completeness => each(checks::check_completeness),
        Property::Soundness => each(checks::check_soundness),
        Property::Simulation => each(checks::check_simulation),
        Property::SimBeta => each(checks::check_sim_beta),
        Property::Laws => check_laws(m, inst.seed),
    }
}

pub fn check(property: Property, inst: &Instance) -> PropertyReport {
    report(property, inst, check_with(property, inst, &Machine::new()))
}

fn report(property: Property, inst: &Instance, r: checks::CheckResult) -> PropertyReport {
    PropertyReport {
        property: property.to_string(),
        instance: inst.term.to_string(),
        size: inst.size,
        seed: inst.seed,
        verdict: if r.is_ok() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        counterexample: r.err(),
    }
}

/// Settings of a verification run.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub count: usize,
    pub max_size: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            count: 500,
            max_size: 8,
            seed: 0,
        }
    }
}

impl VerifyConfig {
    pub fn instances(&self) -> Vec<Instance> {
        (0..self.count)
            .into_par_iter()
            .map(|i| Instance::generate(i % (self.max_size + 1), self.seed.wrapping_add(i as u64)))
            .collect()
    }
}

/// Checks each property on every instance, in parallel. Reports come back
/// ordered by property, then seed.
pub fn verify(properties: &[Property], cfg: &VerifyConfig) -> Vec<PropertyReport> {
    verify_with(properties, cfg, &Machine::new())
}

pub fn verify_with(
    properties: &[Property],
    cfg: &VerifyConfig,
    machine: &Machine,
) -> Vec<PropertyReport> {
    let instances = cfg.instances();
    properties
        .iter()
        .flat_map(|&p| {
            instances
                .par_iter()
                .map(|inst| report(p, inst, check_with(p, inst, machine)))
                .collect::<Vec<_>>()
        })
        .collect()
}
