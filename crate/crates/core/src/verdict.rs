//! Decisions with independently checkable certificates.

use crate::config::StrongnessMode;
use crate::graph::Id;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum KCondition {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6a,
    C6b,
}

impl fmt::Display for KCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A test set with negative relative predimension.
    Violation { set: Vec<Id>, delta: i64 },
    /// A line outside the base meeting two points or two planes of it.
    Line { line: Id },
    /// A closed walk listed from its least vertex.
    Cycle { cycle: Vec<Id> },
    /// Two vertices whose distance breaks the diameter bound (`None` = disconnected).
    Distance { a: Id, b: Id, distance: Option<u32> },
    /// A failed class condition with its witness; `center` names the residue owner.
    K {
        condition: KCondition,
        witness: Vec<Id>,
        center: Option<Id>,
    },
    /// Too many disjoint copies of a simple extension.
    Chi {
        base: Vec<Id>,
        extension: Vec<Id>,
        chi: u64,
        mu: u64,
        packing: Vec<Vec<Id>>,
    },
    /// Numeric evidence only.
    Values { values: BTreeMap<String, i64> },
    /// Witness of d-independence: `B'` and the amalgam structure checks.
    Decomposition {
        b_prime: Vec<Id>,
        union_is_closure: bool,
        free_over_b_prime: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub certificate: Option<Certificate>,
    pub mode: StrongnessMode,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, i64>,
}

impl Verdict {
    pub fn holds(mode: StrongnessMode) -> Verdict {
        Verdict {
            holds: true,
            certificate: None,
            mode,
            values: BTreeMap::new(),
        }
    }

    pub fn fails(mode: StrongnessMode, cert: Certificate) -> Verdict {
        Verdict {
            holds: false,
            certificate: Some(cert),
            mode,
            values: BTreeMap::new(),
        }
    }

    pub fn with_value(mut self, k: &str, v: i64) -> Verdict {
        self.values.insert(k.to_string(), v);
        self
    }

    /// The violating set when the certificate is a test set.
    pub fn violation(&self) -> Option<(&[Id], i64)> {
        match &self.certificate {
            Some(Certificate::Violation { set, delta }) => Some((set, *delta)),
            _ => None,
        }
    }

    pub fn k_condition(&self) -> Option<KCondition> {
        match &self.certificate {
            Some(Certificate::K { condition, .. }) => Some(*condition),
            _ => None,
        }
    }
}
