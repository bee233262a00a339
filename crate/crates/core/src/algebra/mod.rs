//! Causal terms and their canonical values.
//!
//! A [`CausalValue`] is a sum of [`Justification`] graphs. The value algebra
//! is a distributive Stone algebra extended with the non-commutative
//! application operator `·` that records rule application order.
//!
//! Text syntax: `~` negation, `.` application, `*` product, `+` sum, with
//! precedence `.` > `*` > `+`. The constants are `0` and `1`.

mod graph;
mod render;
pub(crate) mod term;
mod value;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use graph::Justification;
pub use term::{normalize, parse_term, CausalTerm};
pub use value::{
    addends, app, classify, leq, neg, prod, remove_elementary, sum, Algebra, CausalValue,
    JustificationClass,
};

/// A rule label (or any other name used as a causal event).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(name: &str) -> Self {
        assert!(!name.is_empty(), "labels must be non-empty");
        Label(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::new(s)
    }
}

/// A label under zero, one or two negations: `l`, `~l` or `~~l`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementaryTerm {
    pub base: Label,
    sign: u8,
}

impl ElementaryTerm {
    /// Builds `~…~base` with `sign` negations; deeper nesting collapses
    /// since `~~~t = ~t`.
    pub fn new(base: Label, sign: u8) -> Self {
        let sign = match sign {
            0 => 0,
            s if s % 2 == 1 => 1,
            _ => 2,
        };
        ElementaryTerm { base, sign }
    }

    pub fn positive(base: Label) -> Self {
        ElementaryTerm { base, sign: 0 }
    }

    pub fn sign(&self) -> u8 {
        self.sign
    }

    /// `~x` for an elementary `x`.
    pub fn negate(&self) -> Self {
        let sign = if self.sign == 1 { 2 } else { 1 };
        ElementaryTerm {
            base: self.base.clone(),
            sign,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.sign == 1
    }

    // Placeholder vertex used while merging two graphs during consensus.
    pub(crate) fn pivot(base: Label) -> Self {
        ElementaryTerm { base, sign: 3 }
    }
}

impl fmt::Display for ElementaryTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for _ in 0..self.sign.min(2) {
            f.write_str("~")?;
        }
        write!(f, "{}", self.base)
    }
}

impl fmt::Debug for ElementaryTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
