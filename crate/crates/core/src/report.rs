//! Validation reports shared by every validator.

use serde::{Deserialize, Serialize};

use crate::fincat::{MorId, ObjId};

/// One failed law, named by an axiom label such as `R.1`, `L.3` or `P.4'`.
///
/// The witness lists name every object and morphism whose table entry the
/// failed check consulted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub message: String,
    #[serde(default)]
    pub objects: Vec<ObjId>,
    #[serde(default)]
    pub morphisms: Vec<MorId>,
}

impl Violation {
    pub fn new(axiom: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            axiom: axiom.into(),
            message: message.into(),
            objects: Vec::new(),
            morphisms: Vec::new(),
        }
    }

    pub fn with_objects(mut self, objects: impl IntoIterator<Item = ObjId>) -> Self {
        self.objects.extend(objects);
        self
    }

    pub fn with_morphisms(mut self, morphisms: impl IntoIterator<Item = MorId>) -> Self {
        self.morphisms.extend(morphisms);
        self
    }

    /// The flavor letter of the axiom label (`R`, `L`, `P`, `I`, `C`, ...).
    pub fn flavor(&self) -> &str {
        self.axiom.split('.').next().unwrap_or("")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Valid,
    Invalid,
    Inconclusive,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Checks that were skipped because an enumeration cap was hit.
    #[serde(default)]
    pub inconclusive: Vec<String>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, violation: Violation) {
        self.violations.push(violation);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        self.inconclusive.extend(other.inconclusive);
    }

    pub fn mark_inconclusive(&mut self, note: impl Into<String>) {
        self.inconclusive.push(note.into());
    }

    pub fn verdict(&self) -> Verdict {
        if !self.violations.is_empty() {
            Verdict::Invalid
        } else if !self.inconclusive.is_empty() {
            Verdict::Inconclusive
        } else {
            Verdict::Valid
        }
    }

    pub fn is_valid(&self) -> bool {
        self.verdict() == Verdict::Valid
    }

    pub fn has_axiom(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    /// Distinct axiom labels in order of first appearance.
    pub fn axioms(&self) -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        for v in &self.violations {
            if !seen.contains(&v.axiom.as_str()) {
                seen.push(&v.axiom);
            }
        }
        seen
    }
}
