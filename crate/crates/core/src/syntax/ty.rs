use std::fmt;
use std::sync::Arc;

/// Base type name reserved for the answer type of the CPS type translations.
pub const ANSWER_TYPE: &str = "o";

/// Intuitionistic types `X | A -> B`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Type {
    Base(Arc<str>),
    Arrow(Box<Type>, Box<Type>),
}

impl Type {
    pub fn base(name: &str) -> Self {
        Type::Base(Arc::from(name))
    }

    pub fn arrow(domain: Type, codomain: Type) -> Self {
        Type::Arrow(Box::new(domain), Box::new(codomain))
    }

    pub fn split_arrow(&self) -> Option<(&Type, &Type)> {
        match self {
            Type::Arrow(a, b) => Some((a, b)),
            Type::Base(_) => None,
        }
    }

    pub fn mentions_base(&self, name: &str) -> bool {
        match self {
            Type::Base(b) => &**b == name,
            Type::Arrow(a, b) => a.mentions_base(name) || b.mentions_base(name),
        }
    }

    /// Number of arrows on the longest path; base types have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Type::Base(_) => 0,
            Type::Arrow(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub(crate) fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Base(b) => f.write_str(b),
            Type::Arrow(..) => write!(f, "({self})"),
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Base(b) => f.write_str(b),
            Type::Arrow(a, b) => {
                a.fmt_atom(f)?;
                write!(f, " -> {b}")
            }
        }
    }
}

impl fmt::Debug for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Proof, test and q-proof roles.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Role {
    P,
    T,
    Q,
}

impl Role {
    pub fn prefix(self) -> char {
        match self {
            Role::P => 'p',
            Role::T => 't',
            Role::Q => 'q',
        }
    }
}

/// `pA`, `tA` or `qA`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PtqType {
    pub role: Role,
    pub carrier: Type,
}

impl PtqType {
    pub fn new(role: Role, carrier: Type) -> Self {
        PtqType { role, carrier }
    }

    pub fn p(carrier: Type) -> Self {
        Self::new(Role::P, carrier)
    }

    pub fn t(carrier: Type) -> Self {
        Self::new(Role::T, carrier)
    }

    pub fn q(carrier: Type) -> Self {
        Self::new(Role::Q, carrier)
    }
}

impl fmt::Display for PtqType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.role.prefix())?;
        self.carrier.fmt_atom(f)
    }
}

impl fmt::Debug for PtqType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrows_print_right_associated() {
        let x = Type::base("X");
        let t = Type::arrow(
            Type::arrow(x.clone(), x.clone()),
            Type::arrow(x.clone(), x.clone()),
        );
        assert_eq!(t.to_string(), "(X -> X) -> X -> X");
        assert_eq!(PtqType::p(t).to_string(), "p((X -> X) -> X -> X)");
        assert_eq!(PtqType::t(x).to_string(), "tX");
    }
}
