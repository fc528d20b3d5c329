use std::borrow::Borrow;
use std::fmt;
use std::sync::Arc;

/// A p-variable (or λ-variable) name. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Self {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Strips a trailing `_<digits>` renaming suffix.
    fn stem(&self) -> &str {
        match self.0.rfind('_') {
            Some(i)
                if i > 0
                    && i + 1 < self.0.len()
                    && self.0[i + 1..].bytes().all(|b| b.is_ascii_digit()) =>
            {
                &self.0[..i]
            }
            _ => &self.0,
        }
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

impl Borrow<str> for Name {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Picks `stem_1`, `stem_2`, ... until `taken` rejects none. Deterministic,
/// so no shared counter is involved.
pub fn fresh_name(base: &Name, taken: impl Fn(&str) -> bool) -> Name {
    let stem = base.stem();
    (1u64..)
        .map(|i| format!("{stem}_{i}"))
        .find(|cand| !taken(cand))
        .map(|s| Name::new(&s))
        .expect("unbounded candidate sequence")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_skips_taken_and_strips_suffix() {
        let taken = ["x_1", "x_2"];
        let n = fresh_name(&Name::new("x_1"), |s| taken.contains(&s));
        assert_eq!(n.as_str(), "x_3");
        let n = fresh_name(&Name::new("y"), |_| false);
        assert_eq!(n.as_str(), "y_1");
    }
}
