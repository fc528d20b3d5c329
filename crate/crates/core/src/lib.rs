//! A typed calculus of proofs, tests and q-proofs: syntax, typing, a lazy
//! reduction machine, readback into λ-terms with a hole, a termination
//! measure, and call-by-name / call-by-value translations from the simply
//! typed λ-calculus.

pub mod eval;
pub mod harness;
pub mod machine;
pub mod measure;
pub mod parse;
pub mod readback;
pub mod syntax;
pub mod translate;
pub mod typing;
