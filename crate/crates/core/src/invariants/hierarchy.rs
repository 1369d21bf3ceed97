use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::{Bounded, PlanarityAnswer, TorsionAnswer};

/// Zones in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Zone {
    PT,
    SD,
    Pl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Finite(u32),
    Infinite,
}

impl Level {
    pub fn finite(self) -> Option<u32> {
        match self {
            Level::Finite(n) => Some(n),
            Level::Infinite => None,
        }
    }
}

/// An element of 0^PT < … < ∞^PT < 0^SD < … < ∞^SD < 2^Pl < … < ∞^Pl.
/// The derived order compares zone first, then level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HierarchyValue {
    zone: Zone,
    level: Level,
}

impl HierarchyValue {
    pub fn new(zone: Zone, level: Level) -> Result<HierarchyValue> {
        if zone == Zone::Pl && level < Level::Finite(2) {
            return Err(Error::InvalidInput(
                "planarity 0 and 1 live in the PT and SD zones".into(),
            ));
        }
        Ok(HierarchyValue { zone, level })
    }

    pub fn zone(self) -> Zone {
        self.zone
    }

    pub fn level(self) -> Level {
        self.level
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(n) => write!(f, "{n}"),
            Level::Infinite => write!(f, "∞"),
        }
    }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Zone::PT => "PT",
            Zone::SD => "SD",
            Zone::Pl => "Pl",
        })
    }
}

impl fmt::Display for HierarchyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.level, self.zone)
    }
}

impl FromStr for HierarchyValue {
    type Err = Error;

    /// `<level>^<zone>` with level an integer, `inf` or `∞`.
    fn from_str(s: &str) -> Result<HierarchyValue> {
        let bad = || Error::InvalidInput(format!("bad hierarchy value `{s}`"));
        let (l, z) = s.trim().split_once('^').ok_or_else(bad)?;
        let level = match l {
            "inf" | "∞" => Level::Infinite,
            n => Level::Finite(n.parse().map_err(|_| bad())?),
        };
        let zone = match z {
            "PT" => Zone::PT,
            "SD" => Zone::SD,
            "Pl" => Zone::Pl,
            _ => return Err(bad()),
        };
        HierarchyValue::new(zone, level)
    }
}

/// The value of a disjoint union: PT levels take the minimum (a non-PT
/// operand counts as ∞^PT), otherwise the larger value wins.
pub fn combine(a: HierarchyValue, b: HierarchyValue) -> HierarchyValue {
    let pt = |h: HierarchyValue| if h.zone == Zone::PT { h.level } else { Level::Infinite };
    if a.zone == Zone::PT || b.zone == Zone::PT {
        HierarchyValue {
            zone: Zone::PT,
            level: pt(a).min(pt(b)),
        }
    } else {
        a.max(b)
    }
}

fn to_level(n: usize) -> Level {
    Level::Finite(n as u32)
}

/// Places an algebra in the hierarchy from its torsion, whether an
/// augmentation is known, its planarity and (for planarity 1) its SD order.
/// A planarity computed over supplied augmentations only gives a lower
/// bound for the true value.
pub fn classify(
    torsion: &TorsionAnswer,
    has_augmentation: bool,
    planarity: Option<&PlanarityAnswer>,
    sd: Option<Level>,
) -> Result<HierarchyValue> {
    match torsion.value {
        Bounded::Exact(k) => {
            if has_augmentation {
                return Err(Error::Inconsistent("finite torsion together with an augmentation".into()));
            }
            return HierarchyValue::new(Zone::PT, to_level(k));
        }
        Bounded::AtMost(k) => {
            if has_augmentation {
                return Err(Error::Inconsistent("finite torsion together with an augmentation".into()));
            }
            return Err(Error::Inconclusive(format!("torsion is at most {k} but not pinned down")));
        }
        Bounded::NotFound => {}
    }
    if !has_augmentation {
        return Err(Error::Inconclusive(
            "no torsion within bounds and no augmentation known".into(),
        ));
    }
    let pl = planarity.ok_or_else(|| Error::Inconclusive("planarity not computed".into()))?;
    match pl.value {
        Bounded::Exact(0) => Err(Error::Inconsistent("planarity 0 with an augmentation".into())),
        Bounded::Exact(1) => match sd {
            Some(l) => HierarchyValue::new(Zone::SD, l),
            None => Err(Error::Inconclusive("planarity 1 needs an SD order".into())),
        },
        Bounded::Exact(n) => HierarchyValue::new(Zone::Pl, to_level(n)),
        Bounded::AtMost(n) => Err(Error::Inconclusive(format!("planarity at most {n}"))),
        Bounded::NotFound => Err(Error::Inconclusive("planarity exceeds the word bound".into())),
    }
}
