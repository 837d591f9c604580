//! Finite algebra of slit attributes, particle labels and the events built
//! from them.
//!
//! Four elementary attributes `A..D` (one per slit) combine with two particle
//! labels into 8 elementary events, 12 combined events and 18 even events.
//! All values here are canonical: two events compare equal exactly when they
//! are the same formal sum, regardless of how they were written down.

mod arrangement;
mod parse;
mod symmetry;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use arrangement::{arrangements, Arrangement, BoxSide, Placement, Statistics};
pub use symmetry::{
    apply, apply_action, format_signature, full_stabilizer, is_auto_symmetric,
    is_label_symmetric, stabilizer, symmetry_signature, Action, SymmetryOp,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EventError {
    #[error("combined event needs two distinct attributes, got {0} twice")]
    SameAttribute(Attribute),
    #[error("combined event needs two distinct particle labels")]
    SameLabel,
    #[error("even event needs two distinct summands, got {0} twice")]
    DuplicateSummand(String),
    #[error("sum has {0} distinct attributes; even events have 2 or 4")]
    OddAttributeCount(usize),
    #[error("{0} is not label symmetric")]
    NotLabelSymmetric(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// One of the four slits a photon may pass through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Attribute {
    A,
    B,
    C,
    D,
}

impl Attribute {
    pub const ALL: [Attribute; 4] = [Attribute::A, Attribute::B, Attribute::C, Attribute::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Attribute {
        Self::ALL[i]
    }

    pub fn from_char(c: char) -> Option<Attribute> {
        match c {
            'A' => Some(Attribute::A),
            'B' => Some(Attribute::B),
            'C' => Some(Attribute::C),
            'D' => Some(Attribute::D),
            _ => None,
        }
    }
}

impl fmt::Display for Attribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Label {
    One,
    Two,
}

impl Label {
    pub const ALL: [Label; 2] = [Label::One, Label::Two];

    pub fn swapped(self) -> Label {
        match self {
            Label::One => Label::Two,
            Label::Two => Label::One,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Label::One => 1,
            Label::Two => 2,
        }
    }

    pub fn from_number(n: u8) -> Option<Label> {
        match n {
            1 => Some(Label::One),
            2 => Some(Label::Two),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// An attribute bound to a particle label, e.g. `A(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementaryEvent {
    pub attribute: Attribute,
    pub label: Label,
}

impl ElementaryEvent {
    pub fn new(attribute: Attribute, label: Label) -> Self {
        ElementaryEvent { attribute, label }
    }
}

impl fmt::Display for ElementaryEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.attribute, self.label)
    }
}

/// Named unordered pair of distinct attributes.
///
/// X=AD and Y=BC are the diagonal scenarios, E=AB and W=CD the east and west
/// slit pairs, N=AC and S=BD the north and south pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CombinedAttribute {
    X,
    Y,
    E,
    W,
    N,
    S,
}

impl CombinedAttribute {
    pub const ALL: [CombinedAttribute; 6] = [
        CombinedAttribute::X,
        CombinedAttribute::Y,
        CombinedAttribute::E,
        CombinedAttribute::W,
        CombinedAttribute::N,
        CombinedAttribute::S,
    ];

    /// The two attributes, alphabetically ordered.
    pub fn attributes(self) -> (Attribute, Attribute) {
        use Attribute::*;
        match self {
            CombinedAttribute::X => (A, D),
            CombinedAttribute::Y => (B, C),
            CombinedAttribute::E => (A, B),
            CombinedAttribute::W => (C, D),
            CombinedAttribute::N => (A, C),
            CombinedAttribute::S => (B, D),
        }
    }

    pub fn from_attributes(a: Attribute, b: Attribute) -> Option<CombinedAttribute> {
        let key = if a <= b { (a, b) } else { (b, a) };
        Self::ALL.into_iter().find(|t| t.attributes() == key)
    }

    pub fn from_char(c: char) -> Option<CombinedAttribute> {
        Self::ALL
            .into_iter()
            .find(|t| format!("{t:?}").starts_with(c))
    }
}

impl fmt::Display for CombinedAttribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Which label the alphabetically-first attribute carries: `T(1,2)` or `T(2,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LabelOrder {
    OneTwo,
    TwoOne,
}

impl LabelOrder {
    pub fn first_label(self) -> Label {
        match self {
            LabelOrder::OneTwo => Label::One,
            LabelOrder::TwoOne => Label::Two,
        }
    }
}

/// Product of two elementary events with distinct attributes and labels.
///
/// Stored with the alphabetically-first attribute in front, so `D(2)A(1)` and
/// `A(1)D(2)` are the same value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CombinedEvent {
    first: ElementaryEvent,
    second: ElementaryEvent,
}

impl CombinedEvent {
    pub fn new(a: ElementaryEvent, b: ElementaryEvent) -> Result<Self, EventError> {
        if a.attribute == b.attribute {
            return Err(EventError::SameAttribute(a.attribute));
        }
        if a.label == b.label {
            return Err(EventError::SameLabel);
        }
        Ok(Self::ordered(a, b))
    }

    fn ordered(a: ElementaryEvent, b: ElementaryEvent) -> Self {
        if a.attribute < b.attribute {
            CombinedEvent { first: a, second: b }
        } else {
            CombinedEvent { first: b, second: a }
        }
    }

    /// `T(1,2)` or `T(2,1)`.
    pub fn of(name: CombinedAttribute, order: LabelOrder) -> Self {
        let (a, b) = name.attributes();
        let first = order.first_label();
        CombinedEvent {
            first: ElementaryEvent::new(a, first),
            second: ElementaryEvent::new(b, first.swapped()),
        }
    }

    pub fn terms(&self) -> [ElementaryEvent; 2] {
        [self.first, self.second]
    }

    pub fn name(&self) -> CombinedAttribute {
        CombinedAttribute::from_attributes(self.first.attribute, self.second.attribute)
            .expect("distinct attributes always name a combined attribute")
    }

    pub fn order(&self) -> LabelOrder {
        match self.first.label {
            Label::One => LabelOrder::OneTwo,
            Label::Two => LabelOrder::TwoOne,
        }
    }

    /// Applies a bijection on elementary events and re-canonicalizes.
    pub(crate) fn map(&self, f: impl Fn(ElementaryEvent) -> ElementaryEvent) -> Self {
        Self::ordered(f(self.first), f(self.second))
    }

    /// Short form, e.g. `X(1,2)`.
    pub fn short(&self) -> String {
        let (i, j) = match self.order() {
            LabelOrder::OneTwo => (1, 2),
            LabelOrder::TwoOne => (2, 1),
        };
        format!("{}({i},{j})", self.name())
    }
}

impl fmt::Display for CombinedEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.first, self.second)
    }
}

/// Formal sum of two distinct combined events covering 2 or 4 attributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EvenEvent {
    summands: [CombinedEvent; 2],
}

impl EvenEvent {
    pub fn new(a: CombinedEvent, b: CombinedEvent) -> Result<Self, EventError> {
        if a == b {
            return Err(EventError::DuplicateSummand(a.to_string()));
        }
        let count = attribute_set(&[a, b]).len();
        if count != 2 && count != 4 {
            return Err(EventError::OddAttributeCount(count));
        }
        Ok(Self::ordered(a, b))
    }

    fn ordered(a: CombinedEvent, b: CombinedEvent) -> Self {
        let summands = if a <= b { [a, b] } else { [b, a] };
        EvenEvent { summands }
    }

    /// `T(1,2)+T(2,1)`, the label-symmetric event of a combined attribute.
    pub fn label_symmetric(name: CombinedAttribute) -> Self {
        Self::ordered(
            CombinedEvent::of(name, LabelOrder::OneTwo),
            CombinedEvent::of(name, LabelOrder::TwoOne),
        )
    }

    pub fn summands(&self) -> [CombinedEvent; 2] {
        self.summands
    }

    pub fn attributes(&self) -> BTreeSet<Attribute> {
        attribute_set(&self.summands)
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes().len()
    }

    /// The shared combined attribute when both summands have one.
    pub fn common_name(&self) -> Option<CombinedAttribute> {
        let [a, b] = self.summands;
        (a.name() == b.name()).then(|| a.name())
    }

    pub(crate) fn map(&self, f: impl Fn(ElementaryEvent) -> ElementaryEvent) -> Self {
        let [a, b] = self.summands;
        Self::ordered(a.map(&f), b.map(&f))
    }

    pub fn short(&self) -> String {
        let [a, b] = self.summands;
        format!("{}+{}", a.short(), b.short())
    }

    pub fn expanded(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for EvenEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}", self.summands[0], self.summands[1])
    }
}

fn attribute_set(summands: &[CombinedEvent]) -> BTreeSet<Attribute> {
    summands
        .iter()
        .flat_map(|c| c.terms())
        .map(|e| e.attribute)
        .collect()
}

pub fn enumerate_elementary_events() -> Vec<ElementaryEvent> {
    Attribute::ALL
        .into_iter()
        .flat_map(|a| Label::ALL.into_iter().map(move |l| ElementaryEvent::new(a, l)))
        .collect()
}

/// The 12 combined events, two label orders per combined attribute.
pub fn enumerate_combined_events() -> BTreeSet<CombinedEvent> {
    CombinedAttribute::ALL
        .into_iter()
        .flat_map(|t| {
            [LabelOrder::OneTwo, LabelOrder::TwoOne]
                .into_iter()
                .map(move |o| CombinedEvent::of(t, o))
        })
        .collect()
}

/// The 18 even events.
///
/// Six are `T(1,2)+T(2,1)`; the other twelve pair the two members of each
/// disjoint couple {X,Y}, {E,W}, {N,S} in all four label orders.
pub fn enumerate_even_events() -> BTreeSet<EvenEvent> {
    let orders = [LabelOrder::OneTwo, LabelOrder::TwoOne];
    let couples = [
        (CombinedAttribute::X, CombinedAttribute::Y),
        (CombinedAttribute::E, CombinedAttribute::W),
        (CombinedAttribute::N, CombinedAttribute::S),
    ];
    let mut out: BTreeSet<EvenEvent> = CombinedAttribute::ALL
        .into_iter()
        .map(EvenEvent::label_symmetric)
        .collect();
    for (s, t) in couples {
        for o1 in orders {
            for o2 in orders {
                out.insert(EvenEvent::ordered(
                    CombinedEvent::of(s, o1),
                    CombinedEvent::of(t, o2),
                ));
            }
        }
    }
    out
}

/// The four non-LS events obtained from an LS event by replacing its
/// attributes with the two absent ones.
///
/// For each label, the two elementary events carrying that label have their
/// attributes replaced by the absent pair, once per bijection. Label 1 yields
/// one pair of events and label 2 the other.
pub fn generate_nls(ls: &EvenEvent) -> Result<BTreeSet<EvenEvent>, EventError> {
    let Some(name) = ls.common_name() else {
        return Err(EventError::NotLabelSymmetric(ls.short()));
    };
    if !is_label_symmetric(ls) {
        return Err(EventError::NotLabelSymmetric(ls.short()));
    }
    let (p, q) = name.attributes();
    let absent: Vec<Attribute> = Attribute::ALL
        .into_iter()
        .filter(|a| *a != p && *a != q)
        .collect();
    let (r, s) = (absent[0], absent[1]);

    let mut out = BTreeSet::new();
    for label in Label::ALL {
        for (to_p, to_q) in [(r, s), (s, r)] {
            let replaced = ls.map(|e| {
                if e.label != label {
                    e
                } else if e.attribute == p {
                    ElementaryEvent::new(to_p, label)
                } else {
                    ElementaryEvent::new(to_q, label)
                }
            });
            out.insert(replaced);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str) -> EvenEvent {
        s.parse().unwrap()
    }

    #[test]
    fn combined_event_canonical_order() {
        let a1 = ElementaryEvent::new(Attribute::A, Label::One);
        let d2 = ElementaryEvent::new(Attribute::D, Label::Two);
        let x = CombinedEvent::new(d2, a1).unwrap();
        assert_eq!(x.to_string(), "A(1)D(2)");
        assert_eq!(x.short(), "X(1,2)");
        assert_eq!(x, CombinedEvent::of(CombinedAttribute::X, LabelOrder::OneTwo));
    }

    #[test]
    fn combined_event_rejects_repeats() {
        let a1 = ElementaryEvent::new(Attribute::A, Label::One);
        let a2 = ElementaryEvent::new(Attribute::A, Label::Two);
        let b1 = ElementaryEvent::new(Attribute::B, Label::One);
        assert_eq!(CombinedEvent::new(a1, a2), Err(EventError::SameAttribute(Attribute::A)));
        assert_eq!(CombinedEvent::new(a1, b1), Err(EventError::SameLabel));
    }

    #[test]
    fn even_event_rejects_three_attributes() {
        let x = CombinedEvent::of(CombinedAttribute::X, LabelOrder::OneTwo);
        let e = CombinedEvent::of(CombinedAttribute::E, LabelOrder::OneTwo);
        assert_eq!(EvenEvent::new(x, e), Err(EventError::OddAttributeCount(3)));
        assert!(matches!(EvenEvent::new(x, x), Err(EventError::DuplicateSummand(_))));
    }

    #[test]
    fn naming_map() {
        for t in CombinedAttribute::ALL {
            let (a, b) = t.attributes();
            assert!(a < b);
            assert_eq!(CombinedAttribute::from_attributes(b, a), Some(t));
        }
        assert_eq!(CombinedEvent::of(CombinedAttribute::Y, LabelOrder::TwoOne).to_string(), "B(2)C(1)");
        assert_eq!(CombinedEvent::of(CombinedAttribute::S, LabelOrder::OneTwo).to_string(), "B(1)D(2)");
    }

    #[test]
    fn x_and_y_in_label_two_one_is_even() {
        let e = ev("X(2,1)+Y(2,1)");
        assert!(enumerate_even_events().contains(&e));
        assert_eq!(e.attribute_count(), 4);
        assert_eq!(e.to_string(), "A(2)D(1)+B(2)C(1)");
    }

    #[test]
    fn generate_from_w() {
        let out = generate_nls(&ev("W(1,2)+W(2,1)")).unwrap();
        assert_eq!(out.len(), 4);
        assert!(out.contains(&ev("A(1)D(2)+B(1)C(2)")));
        assert!(out.contains(&ev("S(1,2)+N(1,2)")));
    }

    #[test]
    fn generate_from_x_by_hand() {
        let out = generate_nls(&ev("X(1,2)+X(2,1)")).unwrap();
        let expected: BTreeSet<EvenEvent> = [
            "N(2,1)+S(1,2)",
            "E(2,1)+W(1,2)",
            "N(1,2)+S(2,1)",
            "E(1,2)+W(2,1)",
        ]
        .into_iter()
        .map(ev)
        .collect();
        assert_eq!(out, expected);
        assert_eq!(out, generate_nls(&ev("Y(1,2)+Y(2,1)")).unwrap());
    }

    #[test]
    fn generate_rejects_non_ls() {
        assert!(matches!(
            generate_nls(&ev("X(1,2)+Y(1,2)")),
            Err(EventError::NotLabelSymmetric(_))
        ));
    }
}
