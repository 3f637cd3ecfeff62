//! A category together with one kind of partiality structure.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::fincat::FinCategory;
use crate::inclusion::{validate_inclusion, InclusionSystem};
use crate::local::{validate_local, LocalStructure};
use crate::partial::{validate_partial, PartialStructure};
use crate::report::ValidationReport;
use crate::restriction::{validate_restriction, RestrictionStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Restriction,
    Local,
    Partial,
    Inclusion,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [
        Flavor::Restriction,
        Flavor::Local,
        Flavor::Partial,
        Flavor::Inclusion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Restriction => "restriction",
            Flavor::Local => "local",
            Flavor::Partial => "partial",
            Flavor::Inclusion => "inclusion",
        }
    }

    /// The letter that prefixes this flavor's axiom labels.
    pub fn axiom_prefix(self) -> &'static str {
        match self {
            Flavor::Restriction => "R",
            Flavor::Local => "L",
            Flavor::Partial => "P",
            Flavor::Inclusion => "I",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Flavor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown structure flavor `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structured {
    Restriction(RestrictionStructure),
    Local(LocalStructure),
    Partial(PartialStructure),
    Inclusion(InclusionSystem),
}

impl Structured {
    pub fn flavor(&self) -> Flavor {
        match self {
            Structured::Restriction(_) => Flavor::Restriction,
            Structured::Local(_) => Flavor::Local,
            Structured::Partial(_) => Flavor::Partial,
            Structured::Inclusion(_) => Flavor::Inclusion,
        }
    }

    pub fn base(&self) -> &FinCategory {
        match self {
            Structured::Restriction(s) => &s.base,
            Structured::Local(s) => &s.base,
            Structured::Partial(s) => &s.base,
            Structured::Inclusion(s) => &s.base,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        match self {
            Structured::Restriction(s) => validate_restriction(s),
            Structured::Local(s) => validate_local(s),
            Structured::Partial(s) => validate_partial(s),
            Structured::Inclusion(s) => validate_inclusion(s),
        }
    }

    /// The flavor's trivial structure on `base`.
    pub fn trivial(base: FinCategory, flavor: Flavor) -> Self {
        match flavor {
            Flavor::Restriction => Structured::Restriction(RestrictionStructure::trivial(base)),
            Flavor::Local => Structured::Local(LocalStructure::trivial(base)),
            Flavor::Partial => Structured::Partial(PartialStructure::trivial(base)),
            Flavor::Inclusion => Structured::Inclusion(InclusionSystem::trivial(base)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::random_group_category;

    #[test]
    fn flavor_names_round_trip() {
        use serde::de::value::{Error, StrDeserializer};
        use serde::de::IntoDeserializer;
        for f in Flavor::ALL {
            assert_eq!(f.name().parse::<Flavor>().unwrap(), f);
            let de: StrDeserializer<Error> = f.name().into_deserializer();
            assert_eq!(Flavor::deserialize(de).unwrap(), f);
        }
        assert!("restrictions".parse::<Flavor>().is_err());
    }

    #[test]
    fn trivial_structures_validate() {
        let c = random_group_category(2).unwrap();
        for f in Flavor::ALL {
            let s = Structured::trivial(c.clone(), f);
            assert_eq!(s.flavor(), f);
            assert_eq!(s.base(), &c);
            assert!(s.validate().is_valid());
        }
    }
}
