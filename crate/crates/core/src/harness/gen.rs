//! Random closed simply typed λ-terms.
//!
//! Generation is type-directed and never backtracks: every goal type is
//! kept inhabited by abstractions and variables alone, so the budget of
//! applications can always be spent or dropped. Applications of freshly
//! built abstractions give plenty of redexes. Every binder gets a distinct
//! name.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::syntax::{LambdaTerm, Name, Type};

const MAX_TYPE_DEPTH: usize = 3;

fn x() -> Type {
    Type::base("X")
}

fn y() -> Type {
    Type::base("Y")
}

/// Argument types for applications.
fn type_pool() -> Vec<Type> {
    let xx = Type::arrow(x(), x());
    vec![
        x(),
        x(),
        y(),
        xx.clone(),
        Type::arrow(x(), y()),
        Type::arrow(xx.clone(), x()),
        Type::arrow(xx.clone(), xx.clone()),
        Type::arrow(x(), xx.clone()),
    ]
}

/// Types of the generated closed terms.
fn goal_pool() -> Vec<Type> {
    let xx = Type::arrow(x(), x());
    vec![
        xx.clone(),
        Type::arrow(y(), y()),
        Type::arrow(xx.clone(), xx.clone()),
        Type::arrow(x(), xx.clone()),
        Type::arrow(Type::arrow(x(), y()), Type::arrow(x(), y())),
        Type::arrow(Type::arrow(xx.clone(), x()), xx.clone()),
    ]
}

/// `ty` has a term built from `ctx` with abstractions and variables only.
fn inhabited(ctx: &mut Vec<Type>, ty: &Type) -> bool {
    if ctx.contains(ty) {
        return true;
    }
    match ty {
        Type::Base(_) => false,
        Type::Arrow(a, b) => {
            ctx.push((**a).clone());
            let r = inhabited(ctx, b);
            ctx.pop();
            r
        }
    }
}

struct Gen {
    rng: ChaCha8Rng,
    next_name: usize,
    ctx: Vec<(Name, Type)>,
}

impl Gen {
    fn new(seed: u64, salt: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15)),
            next_name: 0,
            ctx: Vec::new(),
        }
    }

    fn inhabited(&self, ty: &Type) -> bool {
        let mut types: Vec<Type> = self.ctx.iter().map(|(_, t)| t.clone()).collect();
        inhabited(&mut types, ty)
    }

    fn fresh(&mut self) -> Name {
        const STEMS: [&str; 6] = ["x", "y", "z", "f", "g", "h"];
        let n = self.next_name;
        self.next_name += 1;
        Name::new(&format!("{}{}", STEMS[n % STEMS.len()], n / STEMS.len()))
    }

    fn abstraction(&mut self, a: &Type, b: &Type, budget: usize) -> LambdaTerm {
        let x = self.fresh();
        self.ctx.push((x.clone(), a.clone()));
        let body = self.term(b, budget);
        self.ctx.pop();
        LambdaTerm::Abs {
            x,
            ty: Some(a.clone()),
            body: Box::new(body),
        }
    }

    fn variable(&mut self, ty: &Type) -> Option<LambdaTerm> {
        let found: Vec<&Name> = self
            .ctx
            .iter()
            .filter(|(_, t)| t == ty)
            .map(|(x, _)| x)
            .collect();
        found
            .choose(&mut self.rng)
            .map(|x| LambdaTerm::Var((*x).clone()))
    }

    /// `f a` with `f : A -> ty`, splitting the remaining budget.
    fn application(&mut self, ty: &Type, budget: usize) -> LambdaTerm {
        let rest = budget - 1;
        let choices: Vec<Type> = type_pool()
            .into_iter()
            .filter(|a| {
                Type::arrow(a.clone(), ty.clone()).depth() <= MAX_TYPE_DEPTH && self.inhabited(a)
            })
            .collect();
        let a = choices
            .choose(&mut self.rng)
            .cloned()
            .unwrap_or_else(|| Type::arrow(x(), x()));
        let to_arg = self.rng.gen_range(0..=rest);
        let f = self.term(&Type::arrow(a.clone(), ty.clone()), rest - to_arg);
        let arg = self.term(&a, to_arg);
        LambdaTerm::app(f, arg)
    }

    /// A term of the inhabited type `ty` with at most `budget`
    /// applications.
    fn term(&mut self, ty: &Type, budget: usize) -> LambdaTerm {
        debug_assert!(self.inhabited(ty));
        let choice = self.rng.gen_range(0..10);
        if budget > 0 && choice < 6 {
            return self.application(ty, budget);
        }
        let var = self.variable(ty);
        match ty {
            Type::Arrow(a, b) if (choice < 8 || var.is_none()) && self.body_inhabited(a, b) => {
                self.abstraction(a, b, budget)
            }
            // inhabited without the abstraction, so by a variable
            _ => var.expect("inhabited goal"),
        }
    }

    fn body_inhabited(&self, a: &Type, b: &Type) -> bool {
        let mut types: Vec<Type> = self.ctx.iter().map(|(_, t)| t.clone()).collect();
        types.push(a.clone());
        inhabited(&mut types, b)
    }
}

/// A closed, annotated term with at most `size` applications, and its type.
/// Deterministic in `(size, seed)`; size 0 yields an abstraction.
pub fn gen_typed_term(size: usize, seed: u64) -> (LambdaTerm, Type) {
    let mut g = Gen::new(seed, size as u64);
    let ty = goal_pool().choose(&mut g.rng).cloned().unwrap();
    (g.term(&ty, size), ty)
}

/// A closed term of type `ty` with at most `size` applications, or `None`
/// when `ty` has no closed term built from abstractions and variables.
pub fn gen_term_of_type(ty: &Type, size: usize, seed: u64) -> Option<LambdaTerm> {
    let mut g = Gen::new(seed, 0x5eed ^ size as u64);
    g.inhabited(ty).then(|| g.term(ty, size))
}
