//! Type translations of the continuation-passing translations.

use std::str::FromStr;

use super::TranslateError;
use crate::syntax::{Type, ANSWER_TYPE};

/// `A*` or `A°`, for either translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeTarget {
    CbNStar,
    CbNCirc,
    CbVStar,
    CbVCirc,
}

impl FromStr for TypeTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cbn-star" => Ok(TypeTarget::CbNStar),
            "cbn-circ" => Ok(TypeTarget::CbNCirc),
            "cbv-star" => Ok(TypeTarget::CbVStar),
            "cbv-circ" => Ok(TypeTarget::CbVCirc),
            _ => Err(format!("unknown type translation `{s}`")),
        }
    }
}

fn answer() -> Type {
    Type::base(ANSWER_TYPE)
}

/// `A* = (A° -> o) -> o`: a computation takes a continuation for `A°`.
pub(crate) fn star(a: &Type, cbn: bool) -> Type {
    Type::arrow(cont(a, cbn), answer())
}

/// `A° -> o`, the type of continuations.
pub(crate) fn cont(a: &Type, cbn: bool) -> Type {
    Type::arrow(circ(a, cbn), answer())
}

pub(crate) fn circ(a: &Type, cbn: bool) -> Type {
    match a {
        Type::Base(_) => a.clone(),
        Type::Arrow(d, c) => {
            let d = if cbn { star(d, true) } else { circ(d, false) };
            Type::arrow(d, star(c, cbn))
        }
    }
}

pub fn translate_type(a: &Type, target: TypeTarget) -> Result<Type, TranslateError> {
    if a.mentions_base(ANSWER_TYPE) {
        return Err(TranslateError::ReservedBaseType);
    }
    Ok(match target {
        TypeTarget::CbNStar => star(a, true),
        TypeTarget::CbNCirc => circ(a, true),
        TypeTarget::CbVStar => star(a, false),
        TypeTarget::CbVCirc => circ(a, false),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_type;

    fn ty(s: &str) -> Type {
        parse_type(s).unwrap()
    }

    #[test]
    fn base_types_are_fixed_by_circ() {
        assert_eq!(
            translate_type(&ty("X"), TypeTarget::CbNCirc).unwrap(),
            ty("X")
        );
        assert_eq!(
            translate_type(&ty("X"), TypeTarget::CbVCirc).unwrap(),
            ty("X")
        );
        assert_eq!(
            translate_type(&ty("X"), TypeTarget::CbNStar).unwrap(),
            ty("(X -> o) -> o")
        );
    }

    #[test]
    fn arrows() {
        let xs = "((X -> o) -> o)";
        let expected = format!("(({xs} -> {xs}) -> o) -> o");
        assert_eq!(
            translate_type(&ty("X -> X"), TypeTarget::CbNStar).unwrap(),
            ty(&expected)
        );
        assert_eq!(
            translate_type(&ty("X -> X"), TypeTarget::CbVCirc).unwrap(),
            ty("X -> (X -> o) -> o")
        );
    }

    #[test]
    fn answer_type_is_reserved() {
        assert_eq!(
            translate_type(&ty("o -> X"), TypeTarget::CbVStar).unwrap_err(),
            TranslateError::ReservedBaseType
        );
    }
}
