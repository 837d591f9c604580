use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{Attribute, ElementaryEvent, EvenEvent, EventError};

/// Element of S4 x S2 acting on attributes and labels at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Action {
    /// `images[a.index()]` is where `a` is sent.
    images: [Attribute; 4],
    swap_labels: bool,
}

impl Action {
    pub fn identity() -> Self {
        Action { images: Attribute::ALL, swap_labels: false }
    }

    pub fn label_swap() -> Self {
        Action { swap_labels: true, ..Self::identity() }
    }

    pub fn transposition(a: Attribute, b: Attribute) -> Self {
        let mut images = Attribute::ALL;
        images.swap(a.index(), b.index());
        Action { images, swap_labels: false }
    }

    pub fn from_images(images: [Attribute; 4], swap_labels: bool) -> Option<Self> {
        let distinct: BTreeSet<_> = images.iter().collect();
        (distinct.len() == 4).then_some(Action { images, swap_labels })
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Action) -> Action {
        let mut images = Attribute::ALL;
        for a in Attribute::ALL {
            images[a.index()] = self.image(other.image(a));
        }
        Action { images, swap_labels: self.swap_labels ^ other.swap_labels }
    }

    pub fn image(&self, a: Attribute) -> Attribute {
        self.images[a.index()]
    }

    pub fn swaps_labels(&self) -> bool {
        self.swap_labels
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn act(&self, e: ElementaryEvent) -> ElementaryEvent {
        let label = if self.swap_labels { e.label.swapped() } else { e.label };
        ElementaryEvent::new(self.image(e.attribute), label)
    }

    /// All 48 elements of the group.
    pub fn all() -> Vec<Action> {
        let mut out = Vec::with_capacity(48);
        for code in 0..256usize {
            let digits = [code & 3, (code >> 2) & 3, (code >> 4) & 3, (code >> 6) & 3];
            let images = digits.map(Attribute::from_index);
            for swap in [false, true] {
                if let Some(action) = Action::from_images(images, swap) {
                    out.push(action);
                }
            }
        }
        out
    }
}

/// The ten symmetry operations that appear in event signatures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymmetryOp {
    /// Swap of one pair of attributes, stored alphabetically.
    Transposition(Attribute, Attribute),
    /// Two disjoint transpositions applied together, written `(A,B)∩(C,D)`.
    Simultaneous((Attribute, Attribute), (Attribute, Attribute)),
    /// Swap of particle labels 1 and 2.
    LabelSwap,
}

fn sorted_pair(a: Attribute, b: Attribute) -> (Attribute, Attribute) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl SymmetryOp {
    pub fn transposition(a: Attribute, b: Attribute) -> Option<Self> {
        (a != b).then(|| {
            let (a, b) = sorted_pair(a, b);
            SymmetryOp::Transposition(a, b)
        })
    }

    pub fn simultaneous(p: (Attribute, Attribute), q: (Attribute, Attribute)) -> Option<Self> {
        let all: BTreeSet<_> = [p.0, p.1, q.0, q.1].into_iter().collect();
        if all.len() != 4 {
            return None;
        }
        let (p, q) = (sorted_pair(p.0, p.1), sorted_pair(q.0, q.1));
        let (p, q) = if p <= q { (p, q) } else { (q, p) };
        Some(SymmetryOp::Simultaneous(p, q))
    }

    /// Six single transpositions, three disjoint pairs, then the label swap.
    pub fn all() -> Vec<SymmetryOp> {
        use Attribute::*;
        let mut ops = Vec::with_capacity(10);
        for (i, a) in Attribute::ALL.into_iter().enumerate() {
            for b in Attribute::ALL.into_iter().skip(i + 1) {
                ops.push(SymmetryOp::Transposition(a, b));
            }
        }
        ops.push(SymmetryOp::Simultaneous((A, B), (C, D)));
        ops.push(SymmetryOp::Simultaneous((A, C), (B, D)));
        ops.push(SymmetryOp::Simultaneous((A, D), (B, C)));
        ops.push(SymmetryOp::LabelSwap);
        ops
    }

    pub fn transpositions(&self) -> Vec<(Attribute, Attribute)> {
        match *self {
            SymmetryOp::Transposition(a, b) => vec![(a, b)],
            SymmetryOp::Simultaneous(p, q) => vec![p, q],
            SymmetryOp::LabelSwap => vec![],
        }
    }

    pub fn action(&self) -> Action {
        match *self {
            SymmetryOp::LabelSwap => Action::label_swap(),
            _ => self
                .transpositions()
                .into_iter()
                .fold(Action::identity(), |acc, (a, b)| {
                    acc.compose(&Action::transposition(a, b))
                }),
        }
    }
}

impl fmt::Display for SymmetryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SymmetryOp::Transposition(a, b) => write!(f, "({a},{b})"),
            SymmetryOp::Simultaneous((a, b), (c, d)) => write!(f, "({a},{b})∩({c},{d})"),
            SymmetryOp::LabelSwap => write!(f, "(1,2)"),
        }
    }
}

impl FromStr for SymmetryOp {
    type Err = EventError;

    /// Accepts `(1,2)`, `(A,D)` and `(A,B)∩(C,D)`; `&` or `^` may stand in
    /// for `∩`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| EventError::Parse { input: s.to_string(), reason: reason.into() };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "(1,2)" || compact == "(2,1)" {
            return Ok(SymmetryOp::LabelSwap);
        }
        let parse_pair = |p: &str| -> Result<(Attribute, Attribute), EventError> {
            let inner = p
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| fail("expected a parenthesized pair"))?;
            let letters: Vec<&str> = inner.split(',').collect();
            if letters.len() != 2 {
                return Err(fail("expected two attributes"));
            }
            let attr = |t: &str| {
                let mut cs = t.chars();
                match (cs.next().and_then(Attribute::from_char), cs.next()) {
                    (Some(a), None) => Ok(a),
                    _ => Err(fail("unknown attribute")),
                }
            };
            Ok((attr(letters[0])?, attr(letters[1])?))
        };
        let parts: Vec<&str> = compact.split(['∩', '&', '^']).collect();
        match parts.as_slice() {
            [one] => {
                let (a, b) = parse_pair(one)?;
                SymmetryOp::transposition(a, b).ok_or_else(|| fail("transposition of one attribute"))
            }
            [p, q] => {
                SymmetryOp::simultaneous(parse_pair(p)?, parse_pair(q)?)
                    .ok_or_else(|| fail("simultaneous transpositions must be disjoint"))
            }
            _ => Err(fail("too many transpositions")),
        }
    }
}

pub fn apply_action(action: &Action, e: &EvenEvent) -> EvenEvent {
    e.map(|el| action.act(el))
}

pub fn apply(op: SymmetryOp, e: &EvenEvent) -> EvenEvent {
    apply_action(&op.action(), e)
}

pub fn is_label_symmetric(e: &EvenEvent) -> bool {
    apply(SymmetryOp::LabelSwap, e) == *e
}

pub fn is_auto_symmetric(e: &EvenEvent) -> bool {
    SymmetryOp::all()
        .into_iter()
        .filter(|op| matches!(op, SymmetryOp::Transposition(..)))
        .any(|op| apply(op, e) == *e)
}

/// Every one of the ten operations that leaves `e` unchanged, including those
/// that only move attributes absent from `e`.
pub fn stabilizer(e: &EvenEvent) -> BTreeSet<SymmetryOp> {
    SymmetryOp::all()
        .into_iter()
        .filter(|op| apply(*op, e) == *e)
        .collect()
}

/// Operations that leave `e` unchanged and act on it non-trivially: each
/// transposition in the operation moves at least one attribute occurring in
/// `e`. This is the symmetry column of the classification table.
pub fn symmetry_signature(e: &EvenEvent) -> BTreeSet<SymmetryOp> {
    let present = e.attributes();
    stabilizer(e)
        .into_iter()
        .filter(|op| {
            op.transpositions()
                .iter()
                .all(|(a, b)| present.contains(a) || present.contains(b))
        })
        .collect()
}

/// Stabilizer of `e` in the full 48-element group. Diagnostic only.
pub fn full_stabilizer(e: &EvenEvent) -> Vec<Action> {
    Action::all()
        .into_iter()
        .filter(|g| apply_action(g, e) == *e)
        .collect()
}

/// `<(A,D), (1,2)>` style rendering.
pub fn format_signature(ops: &BTreeSet<SymmetryOp>) -> String {
    let parts: Vec<String> = ops.iter().map(|op| op.to_string()).collect();
    format!("<{}>", parts.join(", "))
}
