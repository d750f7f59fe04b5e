use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Names of the linking rules and of the unit elimination rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Id,
    LEq1,
    LEq2,
    LAnd1,
    LAnd2,
    RAnd1,
    RAnd2,
    LOr1,
    LOr2,
    ROr1,
    ROr2,
    LImp2,
    RImp1,
    RImp2,
    LForallI,
    LForallS,
    RForallS,
    LExistsS,
    RExistsI,
    RExistsS,
    FEq1,
    FEq2,
    FAnd1,
    FAnd2,
    FOr1,
    FOr2,
    FImp1,
    FImp2,
    FForallI,
    FForallS,
    FExistsS,
    FComm,
    Neul,
    Neur,
    Absl,
    Absr,
    Absq,
    Efq,
}

impl RuleId {
    pub const ALL: [RuleId; 38] = [
        RuleId::Id,
        RuleId::LEq1,
        RuleId::LEq2,
        RuleId::LAnd1,
        RuleId::LAnd2,
        RuleId::RAnd1,
        RuleId::RAnd2,
        RuleId::LOr1,
        RuleId::LOr2,
        RuleId::ROr1,
        RuleId::ROr2,
        RuleId::LImp2,
        RuleId::RImp1,
        RuleId::RImp2,
        RuleId::LForallI,
        RuleId::LForallS,
        RuleId::RForallS,
        RuleId::LExistsS,
        RuleId::RExistsI,
        RuleId::RExistsS,
        RuleId::FEq1,
        RuleId::FEq2,
        RuleId::FAnd1,
        RuleId::FAnd2,
        RuleId::FOr1,
        RuleId::FOr2,
        RuleId::FImp1,
        RuleId::FImp2,
        RuleId::FForallI,
        RuleId::FForallS,
        RuleId::FExistsS,
        RuleId::FComm,
        RuleId::Neul,
        RuleId::Neur,
        RuleId::Absl,
        RuleId::Absr,
        RuleId::Absq,
        RuleId::Efq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Id => "id",
            RuleId::LEq1 => "L=1",
            RuleId::LEq2 => "L=2",
            RuleId::LAnd1 => "L∧1",
            RuleId::LAnd2 => "L∧2",
            RuleId::RAnd1 => "R∧1",
            RuleId::RAnd2 => "R∧2",
            RuleId::LOr1 => "L∨1",
            RuleId::LOr2 => "L∨2",
            RuleId::ROr1 => "R∨1",
            RuleId::ROr2 => "R∨2",
            RuleId::LImp2 => "L⇒2",
            RuleId::RImp1 => "R⇒1",
            RuleId::RImp2 => "R⇒2",
            RuleId::LForallI => "L∀i",
            RuleId::LForallS => "L∀s",
            RuleId::RForallS => "R∀s",
            RuleId::LExistsS => "L∃s",
            RuleId::RExistsI => "R∃i",
            RuleId::RExistsS => "R∃s",
            RuleId::FEq1 => "F=1",
            RuleId::FEq2 => "F=2",
            RuleId::FAnd1 => "F∧1",
            RuleId::FAnd2 => "F∧2",
            RuleId::FOr1 => "F∨1",
            RuleId::FOr2 => "F∨2",
            RuleId::FImp1 => "F⇒1",
            RuleId::FImp2 => "F⇒2",
            RuleId::FForallI => "F∀i",
            RuleId::FForallS => "F∀s",
            RuleId::FExistsS => "F∃s",
            RuleId::FComm => "Fcomm",
            RuleId::Neul => "neul",
            RuleId::Neur => "neur",
            RuleId::Absl => "absl",
            RuleId::Absr => "absr",
            RuleId::Absq => "absq",
            RuleId::Efq => "efq",
        }
    }

    /// Invertible rules: applying them never loses provability.
    pub fn is_invertible(self) -> bool {
        matches!(
            self,
            RuleId::LOr1
                | RuleId::LOr2
                | RuleId::RImp1
                | RuleId::RImp2
                | RuleId::RForallS
                | RuleId::LExistsS
                | RuleId::FExistsS
        )
    }

    pub fn is_unit_rule(self) -> bool {
        matches!(
            self,
            RuleId::Neul | RuleId::Neur | RuleId::Absl | RuleId::Absr | RuleId::Absq | RuleId::Efq
        )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown rule `{0}`")]
pub struct UnknownRule(pub String);

impl FromStr for RuleId {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

impl Serialize for RuleId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for RuleId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
