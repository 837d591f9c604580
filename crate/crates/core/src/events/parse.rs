//! Event literals: `A(1)D(2)+A(2)D(1)` or the short form `X(1,2)+X(2,1)`.
//! The two forms may be mixed within one sum.

use std::str::FromStr;

use super::{
    Attribute, CombinedAttribute, CombinedEvent, ElementaryEvent, EvenEvent, EventError, Label,
    LabelOrder,
};

fn parse_error(input: &str, reason: impl Into<String>) -> EventError {
    EventError::Parse { input: input.to_string(), reason: reason.into() }
}

fn label(c: char, input: &str) -> Result<Label, EventError> {
    c.to_digit(10)
        .and_then(|d| Label::from_number(d as u8))
        .ok_or_else(|| parse_error(input, format!("bad particle label {c:?}")))
}

impl FromStr for CombinedEvent {
    type Err = EventError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cs: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        match cs.as_slice() {
            // T(i,j)
            [name, '(', i, ',', j, ')'] => {
                let name = CombinedAttribute::from_char(*name)
                    .ok_or_else(|| parse_error(s, format!("unknown combined attribute {name:?}")))?;
                let order = match (label(*i, s)?, label(*j, s)?) {
                    (Label::One, Label::Two) => LabelOrder::OneTwo,
                    (Label::Two, Label::One) => LabelOrder::TwoOne,
                    _ => return Err(parse_error(s, "labels must be distinct")),
                };
                Ok(CombinedEvent::of(name, order))
            }
            // P(i)Q(j)
            [a, '(', i, ')', b, '(', j, ')'] => {
                let attr = |c: &char| {
                    Attribute::from_char(*c)
                        .ok_or_else(|| parse_error(s, format!("unknown attribute {c:?}")))
                };
                CombinedEvent::new(
                    ElementaryEvent::new(attr(a)?, label(*i, s)?),
                    ElementaryEvent::new(attr(b)?, label(*j, s)?),
                )
            }
            _ => Err(parse_error(s, "expected T(i,j) or P(i)Q(j)")),
        }
    }
}

impl FromStr for EvenEvent {
    type Err = EventError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let terms: Vec<&str> = s.split('+').collect();
        if terms.len() != 2 {
            return Err(parse_error(s, "expected a sum of two combined events"));
        }
        EvenEvent::new(terms[0].parse()?, terms[1].parse()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::events::{enumerate_combined_events, enumerate_even_events};

    #[test]
    fn forms_agree() {
        let a: EvenEvent = "X(1,2)+X(2,1)".parse().unwrap();
        let b: EvenEvent = "A(1)D(2) + D(1)A(2)".parse().unwrap();
        let c: EvenEvent = "X(2,1)+A(1)D(2)".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn both_forms_round_trip() {
        for e in enumerate_even_events() {
            assert_eq!(e.short().parse::<EvenEvent>().unwrap(), e);
            assert_eq!(e.expanded().parse::<EvenEvent>().unwrap(), e);
        }
        for c in enumerate_combined_events() {
            assert_eq!(c.short().parse::<CombinedEvent>().unwrap(), c);
        }
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "X(1,2)", "X(1,1)+Y(1,2)", "Q(1,2)+X(2,1)", "A(1)A(2)+X(1,2)", "A(3)D(2)+X(2,1)", "X(1,2)+X(2,1)+Y(1,2)"] {
            assert!(bad.parse::<EvenEvent>().is_err(), "{bad}");
        }
    }
}
