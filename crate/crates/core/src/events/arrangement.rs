//! Two particles over two boxes: the classical and Bose arrangement sets.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BoxSide {
    L,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    Classical,
    Bose,
}

/// Where particle 1 and particle 2 sit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Placement {
    pub particle_1: BoxSide,
    pub particle_2: BoxSide,
}

impl Placement {
    pub fn label_swapped(self) -> Placement {
        Placement { particle_1: self.particle_2, particle_2: self.particle_1 }
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = [(self.particle_1, 1), (self.particle_2, 2)];
        terms.sort();
        for (side, label) in terms {
            write!(f, "{side:?}({label})")?;
        }
        Ok(())
    }
}

/// One event: a single placement, or a label-symmetric sum of placements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrangement(BTreeSet<Placement>);

impl Arrangement {
    pub fn placements(&self) -> &BTreeSet<Placement> {
        &self.0
    }

    pub fn is_label_symmetric(&self) -> bool {
        self.0.iter().all(|p| self.0.contains(&p.label_swapped()))
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Classical counting keeps `L(1)R(2)` and `L(2)R(1)` apart; Bose counting
/// fuses every label-swap orbit into one sum.
pub fn arrangements(mode: Statistics) -> BTreeSet<Arrangement> {
    let sides = [BoxSide::L, BoxSide::R];
    let placements = sides.iter().flat_map(|&a| {
        sides.iter().map(move |&b| Placement { particle_1: a, particle_2: b })
    });
    placements
        .map(|p| match mode {
            Statistics::Classical => Arrangement([p].into_iter().collect()),
            Statistics::Bose => Arrangement([p, p.label_swapped()].into_iter().collect()),
        })
        .collect()
}
