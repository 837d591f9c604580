//! Assignment of even events to the three interference systems.
//!
//! QI owns the combined attributes {X, Y}, CI owns {E, W} and RI the leftover
//! {N, S}. An LS event belongs to the system owning its combined attribute;
//! a non-LS event belongs to the system whose LS events generate it. Status
//! is `anti` when a summand is prohibited within that system.

mod golden;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::events::{
    self, enumerate_even_events, format_signature, generate_nls, is_label_symmetric,
    symmetry_signature, Attribute, CombinedAttribute, CombinedEvent, EvenEvent, SymmetryOp,
};
use crate::optics::Regime;

pub use golden::{golden_check, parse_golden, GoldenMismatch, GoldenRow, GOLDEN_TABLE2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemsError {
    #[error("{0} belongs to {1}, not RI")]
    NotRISystem(String, SystemId),
    #[error("golden table line {line}: {reason}")]
    Golden { line: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SystemId {
    QI,
    CI,
    RI,
}

impl SystemId {
    pub const ALL: [SystemId; 3] = [SystemId::QI, SystemId::CI, SystemId::RI];

    pub fn combined_attributes(self) -> [CombinedAttribute; 2] {
        match self {
            SystemId::QI => [CombinedAttribute::X, CombinedAttribute::Y],
            SystemId::CI => [CombinedAttribute::E, CombinedAttribute::W],
            SystemId::RI => [CombinedAttribute::N, CombinedAttribute::S],
        }
    }

    pub fn owner_of(t: CombinedAttribute) -> SystemId {
        Self::ALL
            .into_iter()
            .find(|s| s.combined_attributes().contains(&t))
            .expect("the three systems partition the combined attributes")
    }

    pub fn ls_events(self) -> [EvenEvent; 2] {
        self.combined_attributes().map(EvenEvent::label_symmetric)
    }

    pub fn from_name(s: &str) -> Option<SystemId> {
        Self::ALL.into_iter().find(|id| id.to_string() == s)
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Regular,
    Anti,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Regular => "regular",
            Status::Anti => "anti",
        })
    }
}

/// Which combined events count as physically prohibited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProhibitionRule {
    /// QI forbids everything outside {X, Y}: vertical momentum is conserved,
    /// so the photons take opposite diagonals. CI and RI forbid {E, W}: the
    /// photons leave in opposite horizontal directions, so both cannot use
    /// slits on the same side.
    #[default]
    SystemRelative,
    /// {E, W} forbidden in every system. Disagrees with the table on the two
    /// QI anti-events built from N and S.
    Absolute,
}

pub fn is_prohibited(system: SystemId, ce: &CombinedEvent) -> bool {
    is_prohibited_with(ProhibitionRule::SystemRelative, system, ce)
}

pub fn is_prohibited_with(rule: ProhibitionRule, system: SystemId, ce: &CombinedEvent) -> bool {
    let same_side = matches!(ce.name(), CombinedAttribute::E | CombinedAttribute::W);
    match (rule, system) {
        (ProhibitionRule::SystemRelative, SystemId::QI) => {
            !matches!(ce.name(), CombinedAttribute::X | CombinedAttribute::Y)
        }
        _ => same_side,
    }
}

/// The system an even event belongs to.
pub fn system_of(e: &EvenEvent) -> SystemId {
    if let Some(name) = e.common_name() {
        return SystemId::owner_of(name);
    }
    SystemId::ALL
        .into_iter()
        .find(|s| {
            let ls = s.ls_events()[0];
            generate_nls(&ls).map(|g| g.contains(e)).unwrap_or(false)
        })
        .expect("every non-LS even event is generated by exactly one system")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub event: EvenEvent,
    pub system: SystemId,
    pub status: Status,
    pub signature: BTreeSet<SymmetryOp>,
}

impl ClassificationRecord {
    pub fn signature_string(&self) -> String {
        format_signature(&self.signature)
    }
}

impl Serialize for ClassificationRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ClassificationRecord", 6)?;
        s.serialize_field("short", &self.event.short())?;
        s.serialize_field("expanded", &self.event.expanded())?;
        s.serialize_field("attribute_count", &self.event.attribute_count())?;
        s.serialize_field("system", &self.system)?;
        s.serialize_field("status", &self.status)?;
        let ops: Vec<String> = self.signature.iter().map(|o| o.to_string()).collect();
        s.serialize_field("symmetries", &ops)?;
        s.end()
    }
}

impl fmt::Display for ClassificationRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}={}  {} {}  {}",
            self.event.short(),
            self.event.expanded(),
            self.system,
            self.status,
            self.signature_string()
        )
    }
}

pub fn classify(e: &EvenEvent) -> ClassificationRecord {
    classify_with(e, ProhibitionRule::SystemRelative)
}

pub fn classify_with(e: &EvenEvent, rule: ProhibitionRule) -> ClassificationRecord {
    let system = system_of(e);
    let prohibited = e
        .summands()
        .iter()
        .any(|ce| is_prohibited_with(rule, system, ce));
    ClassificationRecord {
        event: *e,
        system,
        status: if prohibited { Status::Anti } else { Status::Regular },
        signature: symmetry_signature(e),
    }
}

/// All 18 records, ordered by system, then status, then event.
pub fn table2() -> Vec<ClassificationRecord> {
    table2_with(ProhibitionRule::SystemRelative)
}

pub fn table2_with(rule: ProhibitionRule) -> Vec<ClassificationRecord> {
    let mut records: Vec<_> = enumerate_even_events()
        .iter()
        .map(|e| classify_with(e, rule))
        .collect();
    records.sort_by_key(|r| (r.system, r.status, r.event));
    records
}

/// Text layout: one block per system with its regular and anti-events.
pub fn render_table(records: &[ClassificationRecord]) -> String {
    let mut out = String::new();
    for system in SystemId::ALL {
        out.push_str(&format!("{system}\n"));
        for (status, title) in [(Status::Regular, "Regular events"), (Status::Anti, "Anti-events")] {
            out.push_str(&format!("  {title}\n"));
            for r in records.iter().filter(|r| r.system == system && r.status == status) {
                out.push_str(&format!(
                    "    {:<15}= {:<19} {}\n",
                    r.event.short(),
                    r.event.expanded(),
                    r.signature_string()
                ));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Screen {
    E,
    W,
    N,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Configuration {
    /// Screens E and W only.
    First,
    /// Adds screens N and S behind half-mirrors.
    Second,
}

/// Which system shows up on which screen. The intermediate regime makes no
/// claim and yields an empty map.
pub fn screen_assignment(regime: Regime, configuration: Configuration) -> BTreeMap<Screen, SystemId> {
    let pairs: &[(Screen, SystemId)] = match (regime, configuration) {
        (Regime::Intermediate, _) => &[],
        (Regime::Qi, Configuration::First) => &[(Screen::E, SystemId::QI), (Screen::W, SystemId::QI)],
        (Regime::Ci, Configuration::First) => &[(Screen::E, SystemId::CI), (Screen::W, SystemId::CI)],
        (Regime::Qi, Configuration::Second) => &[
            (Screen::E, SystemId::QI),
            (Screen::W, SystemId::QI),
            (Screen::N, SystemId::QI),
            (Screen::S, SystemId::QI),
        ],
        (Regime::Ci, Configuration::Second) => &[
            (Screen::E, SystemId::CI),
            (Screen::W, SystemId::CI),
            (Screen::N, SystemId::RI),
            (Screen::S, SystemId::RI),
        ],
    };
    pairs.iter().copied().collect()
}

/// Quarter-turn of the apparatus, realized as the attribute swap B↔C.
/// It sends E↔N and W↔S and keeps X and Y.
pub fn rotate90(e: &EvenEvent) -> EvenEvent {
    let op = SymmetryOp::transposition(Attribute::B, Attribute::C).expect("distinct attributes");
    events::apply(op, e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Separability {
    Separable,
    Fused,
}

/// On an N or S screen the two photons arrive separately, so an RI event
/// that is label symmetric (`U(1)U(2)`-like) can be told apart from a mixed
/// one (`U(1)D(2)+U(2)D(1)`-like).
pub fn ri_separability(e: &EvenEvent) -> Result<Separability, SystemsError> {
    let system = system_of(e);
    if system != SystemId::RI {
        return Err(SystemsError::NotRISystem(e.short(), system));
    }
    Ok(if is_label_symmetric(e) { Separability::Separable } else { Separability::Fused })
}
