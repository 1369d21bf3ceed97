use std::collections::HashMap;
use std::fmt;
use std::ops::Add;

use num_traits::Signed;

use super::Q;
use crate::error::{Error, Result};

/// ℤ₂ degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_bit(bit: u8) -> Parity {
        if bit % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn of_int(n: i64) -> Parity {
        Parity::from_bit(n.rem_euclid(2) as u8)
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ rhs.bit())
    }
}

impl std::iter::Sum for Parity {
    fn sum<I: Iterator<Item = Parity>>(iter: I) -> Parity {
        iter.fold(Parity::Even, |a, b| a + b)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
    pub zgrade: Option<i64>,
    pub action: Option<Q>,
}

impl Generator {
    pub fn new(name: impl Into<String>, parity: Parity) -> Generator {
        Generator {
            name: name.into(),
            parity,
            zgrade: None,
            action: None,
        }
    }

    pub fn even(name: impl Into<String>) -> Generator {
        Generator::new(name, Parity::Even)
    }

    pub fn odd(name: impl Into<String>) -> Generator {
        Generator::new(name, Parity::Odd)
    }

    pub fn with_action(mut self, action: Q) -> Generator {
        self.action = Some(action);
        self
    }

    pub fn with_zgrade(mut self, z: i64) -> Generator {
        self.zgrade = Some(z);
        self
    }
}

/// Finite list of generators; declaration order is the canonical order.
#[derive(Debug, Clone, Default)]
pub struct GradedSpace {
    gens: Vec<Generator>,
    index: HashMap<String, u32>,
}

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for GradedSpace {}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl GradedSpace {
    pub fn new(gens: Vec<Generator>) -> Result<GradedSpace> {
        let mut index = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if !valid_name(&g.name) {
                return Err(Error::InvalidSpace(format!("bad generator name `{}`", g.name)));
            }
            if index.insert(g.name.clone(), i as u32).is_some() {
                return Err(Error::InvalidSpace(format!("duplicate generator `{}`", g.name)));
            }
            if let Some(z) = g.zgrade {
                if Parity::of_int(z) != g.parity {
                    return Err(Error::InvalidSpace(format!(
                        "generator `{}` has zdeg {z} but parity {}",
                        g.name, g.parity
                    )));
                }
            }
            if let Some(a) = &g.action {
                if !a.is_positive() {
                    return Err(Error::InvalidSpace(format!(
                        "generator `{}` has non-positive action",
                        g.name
                    )));
                }
            }
        }
        Ok(GradedSpace { gens, index })
    }

    /// The zero space, underlying the trivial algebra.
    pub fn zero() -> GradedSpace {
        GradedSpace::default()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, i: u32) -> &Generator {
        &self.gens[i as usize]
    }

    pub fn parity(&self, i: u32) -> Parity {
        self.gens[i as usize].parity
    }

    pub fn name(&self, i: u32) -> &str {
        &self.gens[i as usize].name
    }

    pub fn lookup(&self, name: &str) -> Result<u32> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn all_odd(&self) -> bool {
        self.gens.iter().all(|g| g.parity.is_odd())
    }

    pub fn all_even(&self) -> bool {
        self.gens.iter().all(|g| !g.parity.is_odd())
    }

    pub fn action(&self, i: u32) -> Result<&Q> {
        let g = &self.gens[i as usize];
        g.action.as_ref().ok_or_else(|| Error::MissingAction(g.name.clone()))
    }

    pub fn has_actions(&self) -> bool {
        self.gens.iter().all(|g| g.action.is_some())
    }
}
