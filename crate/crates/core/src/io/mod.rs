//! The line-oriented document format and the embedded fixture corpus.
//!
//! ```text
//! format blinfty 1
//! gen q1 parity 0
//! gen q2 parity 1
//!
//! table structure p parity 1
//! op 2 0 : q1·q2 -> 1 1
//!
//! bounds max_letters 2
//! ```

pub mod cli;
mod corpus;

use std::fmt::Write as _;
use std::str::FromStr;

use crate::algebra::{fmt_q, parse_q, EElement, EWord, Element, Generator, GradedSpace, Parity, Word, Q};
use crate::blinfty::{Augmentation, BLAlgebra, BLMorphism, Completeness, OperationTable, PointedMap};
use crate::error::{Error, Result};
use crate::ibl::IBLAlgebra;
use crate::invariants::{MultiPointFamily, UModule};

pub use corpus::{corpus, fixture};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Structure,
    Morphism,
    Augmentation,
    Pointed,
    UModule,
    Ibl,
}

impl TableKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TableKind::Structure => "structure",
            TableKind::Morphism => "morphism",
            TableKind::Augmentation => "augmentation",
            TableKind::Pointed => "pointed",
            TableKind::UModule => "umodule",
            TableKind::Ibl => "ibl",
        }
    }
}

impl FromStr for TableKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<TableKind, String> {
        Ok(match s {
            "structure" => TableKind::Structure,
            "morphism" => TableKind::Morphism,
            "augmentation" => TableKind::Augmentation,
            "pointed" => TableKind::Pointed,
            "umodule" => TableKind::UModule,
            "ibl" => TableKind::Ibl,
            _ => return Err(format!("unknown table kind `{s}`")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableBlock {
    pub kind: TableKind,
    /// Whether `genus` labels are allowed.
    pub hbar: bool,
    pub table: OperationTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bounds {
    pub max_letters: usize,
    pub max_action: Option<Q>,
    pub hbar_max: Option<u32>,
    pub action_drop: bool,
}

/// A named element of EV[[ℏ]], e.g. a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub name: String,
    pub element: EElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub space: GradedSpace,
    pub tables: Vec<TableBlock>,
    pub chains: Vec<Chain>,
    pub bounds: Option<Bounds>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parity_token(line: usize, s: Option<&str>) -> Result<Parity> {
    match s {
        Some("0") => Ok(Parity::Even),
        Some("1") => Ok(Parity::Odd),
        _ => Err(perr(line, "parity must be 0 or 1")),
    }
}

fn number<T: FromStr>(line: usize, what: &str, s: Option<&str>) -> Result<T> {
    s.and_then(|s| s.parse().ok())
        .ok_or_else(|| perr(line, format!("expected an integer after `{what}`")))
}

fn rational(line: usize, s: Option<&str>) -> Result<Q> {
    let s = s.ok_or_else(|| perr(line, "missing rational"))?;
    parse_q(s).ok_or_else(|| perr(line, format!("malformed rational `{s}`")))
}

fn word_at(space: &GradedSpace, line: usize, text: &str) -> Result<(Word, i8)> {
    match Word::parse(space, text) {
        Ok(Some(w)) => Ok(w),
        Ok(None) => Err(perr(line, format!("word `{text}` is zero (repeated odd letter)"))),
        Err(e) => Err(perr(line, e.to_string())),
    }
}

/// Builder state for the block currently being read.
enum Open {
    None,
    Table(usize),
    Chain(usize),
}

impl Document {
    pub fn new(space: GradedSpace) -> Document {
        Document {
            space,
            tables: Vec::new(),
            chains: Vec::new(),
            bounds: None,
        }
    }

    pub fn parse(text: &str) -> Result<Document> {
        let mut gens = Vec::new();
        let mut space: Option<GradedSpace> = None;
        let mut doc: Option<Document> = None;
        let mut open = Open::None;
        let mut seen_header = false;
        let mut bounds_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tok = line.split_whitespace();
            let head = tok.next().unwrap_or("");
            if !seen_header {
                if head != "format" || tok.next() != Some("blinfty") {
                    return Err(perr(ln, "expected `format blinfty <version>`"));
                }
                let v: u32 = number(ln, "format blinfty", tok.next())?;
                if v != FORMAT_VERSION {
                    return Err(perr(ln, format!("unsupported format version {v}")));
                }
                seen_header = true;
                continue;
            }
            if head == "gen" {
                if space.is_some() {
                    return Err(perr(ln, "generators must come before any block"));
                }
                gens.push(parse_gen(ln, &mut tok)?);
                continue;
            }
            // the space closes at the first non-gen line
            let d = match &mut doc {
                Some(d) => d,
                None => {
                    let sp = GradedSpace::new(std::mem::take(&mut gens)).map_err(|e| perr(ln, e.to_string()))?;
                    space = Some(sp.clone());
                    doc.insert(Document::new(sp))
                }
            };
            match head {
                "table" => {
                    if d.bounds.is_some() {
                        return Err(perr(ln, "the bounds line must come last"));
                    }
                    d.tables.push(parse_table_header(ln, &mut tok)?);
                    open = Open::Table(d.tables.len() - 1);
                }
                "op" => {
                    let Open::Table(t) = open else {
                        return Err(perr(ln, "`op` outside a table block"));
                    };
                    let rest = line["op".len()..].trim();
                    let sp = d.space.clone();
                    parse_op(&sp, ln, rest, &mut d.tables[t])?;
                }
                "chain" => {
                    if d.bounds.is_some() {
                        return Err(perr(ln, "the bounds line must come last"));
                    }
                    let name = tok.next().ok_or_else(|| perr(ln, "chain needs a name"))?;
                    if tok.next().is_some() {
                        return Err(perr(ln, "unexpected tokens after the chain name"));
                    }
                    d.chains.push(Chain {
                        name: name.to_string(),
                        element: EElement::zero(),
                    });
                    open = Open::Chain(d.chains.len() - 1);
                }
                "term" => {
                    let Open::Chain(c) = open else {
                        return Err(perr(ln, "`term` outside a chain block"));
                    };
                    let rest = line["term".len()..].trim();
                    let sp = d.space.clone();
                    parse_term(&sp, ln, rest, &mut d.chains[c].element)?;
                }
                "bounds" => {
                    if d.bounds.is_some() {
                        return Err(perr(ln, "duplicate bounds line"));
                    }
                    d.bounds = Some(parse_bounds(ln, &mut tok)?);
                    bounds_line = ln;
                    open = Open::None;
                }
                other => return Err(perr(ln, format!("unknown directive `{other}`"))),
            }
        }
        if !seen_header {
            return Err(perr(1, "empty document"));
        }
        let mut d = match doc {
            Some(d) => d,
            None => Document::new(GradedSpace::new(gens).map_err(|e| perr(1, e.to_string()))?),
        };
        if d.bounds.as_ref().is_some_and(|b| b.action_drop) {
            for t in &mut d.tables {
                if matches!(t.kind, TableKind::Structure | TableKind::Ibl) {
                    t.table.set_action_drop(true);
                    t.table
                        .validate(&d.space, &d.space)
                        .map_err(|e| perr(bounds_line, e.to_string()))?;
                }
            }
        }
        Ok(d)
    }

    pub fn serialize(&self) -> String {
        let mut s = format!("format blinfty {FORMAT_VERSION}\n");
        for g in self.space.generators() {
            let _ = write!(s, "gen {} parity {}", g.name, g.parity.bit());
            if let Some(z) = g.zgrade {
                let _ = write!(s, " zdeg {z}");
            }
            if let Some(a) = &g.action {
                let _ = write!(s, " action {}", fmt_q(a));
            }
            s.push('\n');
        }
        for t in &self.tables {
            s.push('\n');
            write_table(&mut s, &self.space, t);
        }
        for c in &self.chains {
            s.push('\n');
            write_chain(&mut s, &self.space, c);
        }
        if let Some(b) = &self.bounds {
            s.push('\n');
            let _ = write!(s, "bounds max_letters {}", b.max_letters);
            if let Some(a) = &b.max_action {
                let _ = write!(s, " max_action {}", fmt_q(a));
            }
            if let Some(h) = b.hbar_max {
                let _ = write!(s, " hbar_max {h}");
            }
            if b.action_drop {
                s.push_str(" action_drop");
            }
            s.push('\n');
        }
        s
    }

    pub fn push_table(&mut self, kind: TableKind, table: OperationTable) {
        let hbar = table.has_genus() || kind == TableKind::Ibl;
        self.tables.push(TableBlock { kind, hbar, table });
    }

    pub fn tables_of(&self, kind: TableKind) -> impl Iterator<Item = &OperationTable> {
        self.tables.iter().filter(move |t| t.kind == kind).map(|t| &t.table)
    }

    fn first(&self, kind: TableKind) -> Result<&OperationTable> {
        self.tables_of(kind)
            .next()
            .ok_or_else(|| Error::InvalidInput(format!("document has no {} table", kind.as_str())))
    }

    /// The first structure table, or the zero structure if there is none.
    pub fn structure(&self) -> Result<BLAlgebra> {
        let t = self
            .tables_of(TableKind::Structure)
            .next()
            .cloned()
            .unwrap_or_else(|| OperationTable::new("p", Parity::Odd));
        BLAlgebra::new(self.space.clone(), t)
    }

    /// All structure tables in order; morphisms go from the first to the
    /// second (or to the first again when there is only one).
    pub fn morphism(&self) -> Result<BLMorphism> {
        let structures: Vec<&OperationTable> = self.tables_of(TableKind::Structure).collect();
        let src = BLAlgebra::new(self.space.clone(), (*structures.first().ok_or_else(|| Error::InvalidInput("morphism needs a source structure".into()))?).clone())?;
        let tgt = match structures.get(1) {
            Some(t) => BLAlgebra::new(self.space.clone(), (*t).clone())?,
            None => src.clone(),
        };
        BLMorphism::new(src, tgt, self.first(TableKind::Morphism)?.clone())
    }

    pub fn augmentations(&self) -> Result<Vec<Augmentation>> {
        self.tables_of(TableKind::Augmentation).map(|t| Augmentation::new(t.clone())).collect()
    }

    pub fn pointed(&self) -> Result<PointedMap> {
        PointedMap::new(self.first(TableKind::Pointed)?.clone())
    }

    pub fn umodule(&self) -> Result<UModule> {
        UModule::new(self.first(TableKind::UModule)?.clone())
    }

    pub fn ibl(&self) -> Result<IBLAlgebra> {
        IBLAlgebra::new(self.space.clone(), self.first(TableKind::Ibl)?.clone())
    }

    /// Pointed tables named by index sets such as `{1}` or `{1,2}` form a
    /// multi-point family; m is the largest index.
    pub fn multi_point_family(&self) -> Result<MultiPointFamily> {
        let mut parts = Vec::new();
        for t in self.tables_of(TableKind::Pointed) {
            let name = t.name();
            let inner = name
                .strip_prefix('{')
                .and_then(|r| r.strip_suffix('}'))
                .ok_or_else(|| Error::InvalidInput(format!("pointed table `{name}` is not named by an index set")))?;
            let subset: Vec<usize> = inner
                .split(',')
                .map(|x| x.trim().parse::<usize>().ok().filter(|&i| i >= 1).map(|i| i - 1))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::InvalidInput(format!("bad index set `{name}`")))?;
            parts.push((subset, t.clone()));
        }
        let m = parts.iter().flat_map(|(s, _)| s.iter()).max().map_or(0, |&i| i + 1);
        if m == 0 {
            return Err(Error::InvalidInput("no multi-point tables".into()));
        }
        let mut f = MultiPointFamily::new(m);
        for (s, t) in parts {
            f.insert(s, t)?;
        }
        Ok(f)
    }

    pub fn chain(&self, name: &str) -> Option<&EElement> {
        self.chains.iter().find(|c| c.name == name).map(|c| &c.element)
    }
}

fn parse_gen<'a>(ln: usize, tok: &mut impl Iterator<Item = &'a str>) -> Result<Generator> {
    let name = tok.next().ok_or_else(|| perr(ln, "gen needs a name"))?;
    if tok.next() != Some("parity") {
        return Err(perr(ln, "expected `parity` after the generator name"));
    }
    let mut g = Generator::new(name, parity_token(ln, tok.next())?);
    while let Some(key) = tok.next() {
        match key {
            "zdeg" if g.zgrade.is_none() && g.action.is_none() => g.zgrade = Some(number(ln, "zdeg", tok.next())?),
            "action" if g.action.is_none() => g.action = Some(rational(ln, tok.next())?),
            other => return Err(perr(ln, format!("unexpected `{other}` in gen line"))),
        }
    }
    Ok(g)
}

fn parse_table_header<'a>(ln: usize, tok: &mut impl Iterator<Item = &'a str>) -> Result<TableBlock> {
    let kind: TableKind = tok
        .next()
        .ok_or_else(|| perr(ln, "table needs a kind"))?
        .parse()
        .map_err(|e: String| perr(ln, e))?;
    let name = tok.next().ok_or_else(|| perr(ln, "table needs a name"))?;
    if tok.next() != Some("parity") {
        return Err(perr(ln, "expected `parity` after the table name"));
    }
    let parity = parity_token(ln, tok.next())?;
    let mut hbar = false;
    let mut completeness = Completeness::Total;
    while let Some(key) = tok.next() {
        match key {
            "hbar" if !hbar && completeness == Completeness::Total => hbar = true,
            "upto" if completeness == Completeness::Total => {
                completeness = Completeness::UpToArity(number(ln, "upto", tok.next())?)
            }
            other => return Err(perr(ln, format!("unexpected `{other}` in table header"))),
        }
    }
    let required = match kind {
        TableKind::Structure | TableKind::Ibl => Some(Parity::Odd),
        TableKind::Morphism | TableKind::Augmentation | TableKind::UModule => Some(Parity::Even),
        TableKind::Pointed => None,
    };
    if required.is_some_and(|p| p != parity) {
        return Err(perr(ln, format!("a {} table must have parity {}", kind.as_str(), required.unwrap().bit())));
    }
    Ok(TableBlock {
        kind,
        hbar,
        table: OperationTable::new(name, parity).with_completeness(completeness),
    })
}

fn parse_op(space: &GradedSpace, ln: usize, rest: &str, block: &mut TableBlock) -> Result<()> {
    let (head, body) = rest.split_once(':').ok_or_else(|| perr(ln, "expected `:` in op line"))?;
    let mut h = head.split_whitespace();
    let k: usize = number(ln, "op", h.next())?;
    let l: usize = number(ln, "op k", h.next())?;
    let mut genus = 0;
    match h.next() {
        None => {}
        Some("genus") => {
            genus = number(ln, "genus", h.next())?;
            if h.next().is_some() {
                return Err(perr(ln, "unexpected tokens before `:`"));
            }
        }
        Some(t) => return Err(perr(ln, format!("unexpected `{t}` before `:`"))),
    }
    if genus > 0 && !block.hbar {
        return Err(perr(ln, "genus labels need an `hbar` table"));
    }
    let (input_text, out_text) = body.split_once("->").ok_or_else(|| perr(ln, "expected `->` in op line"))?;
    let (input, s_in) = word_at(space, ln, input_text)?;
    if input.len() != k {
        return Err(perr(ln, format!("input has {} letters, header says k = {k}", input.len())));
    }
    if k == 0 {
        return Err(perr(ln, "tables have no arity-0 entries"));
    }
    let mut out = Element::zero();
    for term in out_text.split('+') {
        let mut t = term.split_whitespace();
        let c = rational(ln, t.next())?;
        let w_text = t.next().ok_or_else(|| perr(ln, "term needs a word"))?;
        if t.next().is_some() {
            return Err(perr(ln, format!("malformed term `{}`", term.trim())));
        }
        let (w, s) = word_at(space, ln, w_text)?;
        if w.len() != l {
            return Err(perr(ln, format!("output `{w_text}` has length {}, header says l = {l}", w.len())));
        }
        if w.parity(space) != input.parity(space) + block.table.parity() {
            return Err(perr(
                ln,
                format!("parity mismatch: {} -> {w_text} in a parity-{} table", input_text.trim(), block.table.parity().bit()),
            ));
        }
        out.add_signed(w, &c, s * s_in);
    }
    match block.kind {
        TableKind::Augmentation if l != 0 => return Err(perr(ln, "augmentation entries have l = 0")),
        TableKind::UModule if k != 1 || l != 1 => return Err(perr(ln, "U entries have k = l = 1")),
        _ => {}
    }
    if let Completeness::UpToArity(n) = block.table.completeness() {
        if k > n {
            return Err(perr(ln, format!("arity {k} exceeds the table's `upto {n}`")));
        }
    }
    block.table.insert_cell(input, genus, &out).map_err(|e| perr(ln, e.to_string()))
}

fn parse_term(space: &GradedSpace, ln: usize, rest: &str, acc: &mut EElement) -> Result<()> {
    let (c_text, mut body) = rest.split_once(char::is_whitespace).ok_or_else(|| perr(ln, "term needs a coefficient and an eword"))?;
    let c = rational(ln, Some(c_text))?;
    let mut hbar = 0;
    if let Some((b, h)) = body.rsplit_once(" hbar ") {
        hbar = number(ln, "hbar", Some(h.trim()))?;
        body = b;
    }
    match EWord::parse(space, body.trim(), hbar) {
        Ok(Some((e, s))) => {
            acc.add_signed(e, &c, s);
            Ok(())
        }
        Ok(None) => Err(perr(ln, "eword is zero (repeated odd cluster or letter)")),
        Err(e) => Err(perr(ln, e.to_string())),
    }
}

fn parse_bounds<'a>(ln: usize, tok: &mut impl Iterator<Item = &'a str>) -> Result<Bounds> {
    if tok.next() != Some("max_letters") {
        return Err(perr(ln, "bounds must start with `max_letters`"));
    }
    let mut b = Bounds {
        max_letters: number(ln, "max_letters", tok.next())?,
        ..Bounds::default()
    };
    // optional keys in grammar order
    let mut stage = 0;
    while let Some(key) = tok.next() {
        match key {
            "max_action" if stage < 1 => {
                b.max_action = Some(rational(ln, tok.next())?);
                stage = 1;
            }
            "hbar_max" if stage < 2 => {
                b.hbar_max = Some(number(ln, "hbar_max", tok.next())?);
                stage = 2;
            }
            "action_drop" if stage < 3 => {
                b.action_drop = true;
                stage = 3;
            }
            other => return Err(perr(ln, format!("unexpected `{other}` in bounds line"))),
        }
    }
    Ok(b)
}

fn write_table(s: &mut String, space: &GradedSpace, t: &TableBlock) {
    let _ = write!(s, "table {} {} parity {}", t.kind.as_str(), t.table.name(), t.table.parity().bit());
    if t.hbar {
        s.push_str(" hbar");
    }
    if let Completeness::UpToArity(n) = t.table.completeness() {
        let _ = write!(s, " upto {n}");
    }
    s.push('\n');
    for (k, l, g, input, out) in t.table.cells() {
        let _ = write!(s, "op {k} {l}");
        if g > 0 {
            let _ = write!(s, " genus {g}");
        }
        let _ = write!(s, " : {} ->", input.display(space));
        for (i, (w, c)) in out.iter().enumerate() {
            if i > 0 {
                s.push_str(" +");
            }
            let _ = write!(s, " {} {}", fmt_q(c), w.display(space));
        }
        s.push('\n');
    }
}

fn write_chain(s: &mut String, space: &GradedSpace, c: &Chain) {
    let _ = writeln!(s, "chain {}", c.name);
    for (e, q) in &c.element {
        let _ = write!(s, "term {} {}", fmt_q(q), e.with_hbar(0).display(space));
        if e.hbar() > 0 {
            let _ = write!(s, " hbar {}", e.hbar());
        }
        s.push('\n');
    }
}
