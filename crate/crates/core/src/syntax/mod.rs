//! Terms, types, substitution and α-equivalence.

mod alpha;
mod closure;
pub mod lambda;
mod name;
mod subst;
mod term;
mod ty;

pub use alpha::AlphaEq;
pub use closure::{
    close_body, free_info, star_compose, ClosureError, FreeInfo, TestClosure, TestPosition,
};
pub use lambda::LambdaTerm;
pub use name::{fresh_name, Name};
pub use subst::{Subst, TestSlot};
pub use term::{ETerm, PTerm, QTerm, Sort, TTerm, Term};
pub use ty::{PtqType, Role, Type, ANSWER_TYPE};
