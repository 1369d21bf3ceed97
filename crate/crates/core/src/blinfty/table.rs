use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::enumerate::word_action;
use crate::algebra::{Element, GradedSpace, Parity, Word, Q};
use crate::error::{Error, Result};

/// How far a finite table is known to be exhaustive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    /// Every unlisted entry is zero.
    Total,
    /// Entries with input arity above the limit are unknown.
    UpToArity(usize),
}

/// Sparse family of maps S^kV → S^lV' (optionally per genus g), keyed by
/// normalized input word. Outputs of all lengths for one input and genus
/// are stored together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperationTable {
    name: String,
    parity: Parity,
    entries: BTreeMap<Word, BTreeMap<u32, Element>>,
    completeness: Completeness,
    action_drop: bool,
}

impl OperationTable {
    pub fn new(name: impl Into<String>, parity: Parity) -> OperationTable {
        OperationTable {
            name: name.into(),
            parity,
            entries: BTreeMap::new(),
            completeness: Completeness::Total,
            action_drop: false,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> OperationTable {
        self.name = name.into();
        self
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn completeness(&self) -> Completeness {
        self.completeness
    }

    pub fn with_completeness(mut self, c: Completeness) -> OperationTable {
        self.completeness = c;
        self
    }

    pub fn action_drop(&self) -> bool {
        self.action_drop
    }

    pub fn set_action_drop(&mut self, flag: bool) {
        self.action_drop = flag;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds `output` to the genus-`g` entry at `input`.
    pub fn add(&mut self, input: Word, genus: u32, output: &Element) {
        assert!(!input.is_unit(), "tables have no arity-0 entries");
        let cell = self.entries.entry(input.clone()).or_default();
        let e = cell.entry(genus).or_default();
        e.add_assign(output);
        if e.is_zero() {
            cell.remove(&genus);
        }
        if cell.is_empty() {
            self.entries.remove(&input);
        }
    }

    /// Inserts the (k,l,g) cell at `input`; fails if that cell already has terms.
    pub fn insert_cell(&mut self, input: Word, genus: u32, output: &Element) -> Result<()> {
        let l = output.keys().next().map(Word::len);
        if output.keys().any(|w| Some(w.len()) != l) {
            return Err(Error::InvalidEntry("one cell must have a single output length".into()));
        }
        if let Some(l) = l {
            if !self.get(&input, genus).of_length(l).is_zero() {
                return Err(Error::InvalidEntry(format!(
                    "duplicate cell ({}, {}, {})",
                    input.len(),
                    l,
                    genus
                )));
            }
        }
        if input.is_unit() {
            return Err(Error::InvalidEntry("tables have no arity-0 entries".into()));
        }
        self.add(input, genus, output);
        Ok(())
    }

    /// Entry at `input` and genus, zero if absent.
    pub fn get(&self, input: &Word, genus: u32) -> Element {
        self.entries
            .get(input)
            .and_then(|c| c.get(&genus))
            .cloned()
            .unwrap_or_default()
    }

    /// Checks completeness for arity `k`; `Ok(None)` means a known zero.
    pub fn lookup(&self, input: &Word) -> Result<Option<&BTreeMap<u32, Element>>> {
        self.require_arity(input.len())?;
        Ok(self.entries.get(input))
    }

    pub fn require_arity(&self, k: usize) -> Result<()> {
        if let Completeness::UpToArity(limit) = self.completeness {
            if k > limit {
                return Err(Error::Incomplete {
                    table: self.name.clone(),
                    arity: k,
                    limit,
                });
            }
        }
        Ok(())
    }

    /// Arities that have at least one nonzero entry.
    pub fn arities(&self) -> BTreeSet<usize> {
        self.entries.keys().map(Word::len).collect()
    }

    pub fn max_arity(&self) -> usize {
        self.entries.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn max_output_len(&self) -> usize {
        self.entries
            .values()
            .flat_map(|c| c.values())
            .flat_map(|e| e.keys().map(Word::len))
            .max()
            .unwrap_or(0)
    }

    pub fn max_genus(&self) -> u32 {
        self.entries
            .values()
            .flat_map(|c| c.keys().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn has_genus(&self) -> bool {
        self.max_genus() > 0
    }

    /// (input, genus, output) triples in (input, genus) order.
    pub fn entries(&self) -> impl Iterator<Item = (&Word, u32, &Element)> {
        self.entries
            .iter()
            .flat_map(|(w, c)| c.iter().map(move |(g, e)| (w, *g, e)))
    }

    /// Cells grouped as (k, l, g, input, output), sorted by (k, l, g, input).
    pub fn cells(&self) -> Vec<(usize, usize, u32, &Word, Element)> {
        let mut out = Vec::new();
        for (w, g, e) in self.entries() {
            let ls: BTreeSet<usize> = e.keys().map(Word::len).collect();
            for l in ls {
                out.push((w.len(), l, g, w, e.of_length(l)));
            }
        }
        out.sort_by(|a, b| (a.0, a.1, a.2, a.3).cmp(&(b.0, b.1, b.2, b.3)));
        out
    }

    /// Keeps genus 0 only.
    pub fn genus0(&self) -> OperationTable {
        let mut t = OperationTable::new(self.name.clone(), self.parity).with_completeness(self.completeness);
        t.action_drop = self.action_drop;
        for (w, g, e) in self.entries() {
            if g == 0 {
                t.add(w.clone(), 0, e);
            }
        }
        t
    }

    /// Keeps entries whose outputs have length `l` satisfying `keep`.
    pub fn filter_outputs(&self, keep: impl Fn(usize) -> bool) -> OperationTable {
        let mut t = OperationTable::new(self.name.clone(), self.parity).with_completeness(self.completeness);
        for (w, g, e) in self.entries() {
            t.add(w.clone(), g, &e.filter(|u| keep(u.len())));
        }
        t
    }

    /// Checks parities, generator ranges and the action-drop flag.
    pub fn validate(&self, source: &GradedSpace, target: &GradedSpace) -> Result<()> {
        for (w, _, e) in self.entries() {
            if w.letters().iter().any(|&l| l as usize >= source.len()) {
                return Err(Error::InvalidEntry(format!("input out of range in `{}`", self.name)));
            }
            let pin = w.parity(source);
            for (u, _) in e {
                if u.letters().iter().any(|&l| l as usize >= target.len()) {
                    return Err(Error::InvalidEntry(format!("output out of range in `{}`", self.name)));
                }
                if u.parity(target) != pin + self.parity {
                    return Err(Error::ParityMismatch(format!(
                        "table `{}`: {} -> {} breaks parity {}",
                        self.name,
                        w.display(source),
                        u.display(target),
                        self.parity
                    )));
                }
                if self.action_drop {
                    let a_in: Q = word_action(source, w)?;
                    let a_out: Q = word_action(target, u)?;
                    if a_out > a_in {
                        return Err(Error::InvalidEntry(format!(
                            "table `{}`: {} -> {} raises action",
                            self.name,
                            w.display(source),
                            u.display(target)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
