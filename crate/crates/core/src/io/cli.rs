//! The command-line front end. Reports are `key: value` lines; the exit
//! code depends only on the kind of answer.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::algebra::{parse_q, EElement, Window, Q};
use crate::blinfty::{
    apply_hat_p, check_linfty, check_morphism, check_pointed, check_structure, ell_table, hat_ibl, is_augmentation,
    linearize, Augmentation, BLAlgebra, PointedMap, Status,
};
use crate::error::Error;
use crate::ibl::{check_ibl, derive_flat_torsion, torsion_grid};
use crate::invariants::{
    classify, combine, order_multi, order_multi_tilde, order_o, order_o_tilde, planarity, sd_order_linearized, torsion,
    Bounded, HierarchyValue, Level, PlanarityScope, SearchBounds,
};

use super::{fixture, Document, TableKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_STRUCTURAL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "blinfty", version, about = "Exact BL∞ / IBL∞ computations on text documents")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Document path, or the name of a bundled fixture.
    pub doc: String,
    #[arg(long)]
    pub max_letters: Option<usize>,
    #[arg(long, value_parser = parse_rational)]
    pub max_action: Option<Q>,
    #[arg(long)]
    pub word_bound: Option<usize>,
    #[arg(long)]
    pub hbar_max: Option<u32>,
    /// Extra augmentation documents (repeatable).
    #[arg(long = "aug")]
    pub aug: Vec<String>,
    #[arg(long)]
    pub pointed: Option<String>,
    #[arg(long)]
    pub umap: Option<String>,
    /// Write the certificate here as a document with a `chain` block.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every table of the document, and evaluate p̂ on its chains.
    Verify(Common),
    Torsion(Common),
    Linearize(Common),
    Order(Common),
    OrderMulti(Common),
    Sd(Common),
    Planarity(Common),
    Hierarchy(Common),
    /// Monoidal product of hierarchy values such as `2^SD` or `∞^PT`.
    Combine {
        #[arg(required = true)]
        values: Vec<String>,
    },
    IblCheck(Common),
    IblTorsion {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        m: usize,
    },
}

fn parse_rational(s: &str) -> Result<Q, String> {
    parse_q(s).ok_or_else(|| format!("malformed rational `{s}`"))
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    out: String,
    code: i32,
}

impl Report {
    fn new() -> Report {
        Report {
            out: String::new(),
            code: EXIT_OK,
        }
    }

    fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.out, "{key}: {value}");
    }

    fn fail(&mut self) {
        self.code = EXIT_STRUCTURAL;
    }

    fn inconclusive(&mut self) {
        if self.code == EXIT_OK {
            self.code = EXIT_INCONCLUSIVE;
        }
    }

    fn bounded(&mut self, key: &str, b: Bounded) {
        self.line(key, b);
        if b == Bounded::NotFound {
            self.inconclusive();
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::Inconclusive(_) => EXIT_INCONCLUSIVE,
        _ => EXIT_STRUCTURAL,
    }
}

/// Loads a path, falling back to the bundled corpus.
pub fn load(name: &str) -> crate::Result<Document> {
    let text = match std::fs::read_to_string(name) {
        Ok(t) => t,
        Err(e) => match fixture(name) {
            Some(t) => t.to_string(),
            None => return Err(Error::InvalidInput(format!("cannot read `{name}`: {e}"))),
        },
    };
    Document::parse(&text)
}

struct Ctx {
    doc: Document,
    c: Common,
}

impl Ctx {
    fn new(c: Common) -> crate::Result<Ctx> {
        let mut doc = load(&c.doc)?;
        for extra in c.aug.iter().chain(&c.pointed).chain(&c.umap) {
            let d = load(extra)?;
            if d.space != doc.space {
                return Err(Error::InvalidInput(format!("`{extra}` is over a different space")));
            }
            doc.tables.extend(d.tables.into_iter().filter(|t| t.kind != TableKind::Structure));
        }
        Ok(Ctx { doc, c })
    }

    fn max_letters(&self) -> usize {
        self.c.max_letters.or(self.doc.bounds.as_ref().map(|b| b.max_letters)).unwrap_or(4)
    }

    fn max_action(&self) -> Option<Q> {
        self.c.max_action.clone().or(self.doc.bounds.as_ref().and_then(|b| b.max_action.clone()))
    }

    fn word_bound(&self) -> usize {
        self.c.word_bound.unwrap_or(3)
    }

    fn hbar_max(&self) -> u32 {
        self.c.hbar_max.or(self.doc.bounds.as_ref().and_then(|b| b.hbar_max)).unwrap_or(2)
    }

    fn search(&self) -> SearchBounds {
        SearchBounds::new(self.word_bound(), self.max_letters()).with_action(self.max_action())
    }

    fn window(&self) -> Window {
        let n = self.max_letters();
        Window::new(n, n.max(1)).with_action(self.max_action())
    }

    /// The structure table, rejected unless p̂ squares to zero on the window.
    fn structure(&self) -> crate::Result<BLAlgebra> {
        let alg = self.doc.structure()?;
        if let Status::Failed(c) = check_structure(&alg, self.max_letters(), self.max_action().as_ref())? {
            let sp = alg.space();
            return Err(Error::InvalidInput(format!(
                "`{}` does not square to zero: ({},{}) {} -> {}",
                alg.table().name(),
                c.k,
                c.l,
                c.input.display(sp),
                c.value.display(sp)
            )));
        }
        Ok(alg)
    }

    fn augmentation(&self) -> crate::Result<Augmentation> {
        Ok(self.doc.augmentations()?.into_iter().next().unwrap_or_else(Augmentation::zero))
    }

    fn save(&self, r: &mut Report, x: &EElement, tables: bool) -> crate::Result<()> {
        let Some(path) = &self.c.certificate else { return Ok(()) };
        let mut d = Document::new(self.doc.space.clone());
        if tables {
            d.tables = self.doc.tables.clone();
        }
        d.chains.push(super::Chain {
            name: "certificate".into(),
            element: x.clone(),
        });
        std::fs::write(path, d.serialize()).map_err(|e| Error::InvalidInput(format!("cannot write certificate: {e}")))?;
        r.line("certificate", path.display());
        Ok(())
    }
}

fn status_line<W: std::fmt::Debug>(r: &mut Report, key: &str, s: &Status<W>, witness: impl FnOnce(&W) -> String) {
    match s {
        Status::Verified => r.line(key, "verified"),
        Status::Failed(w) => {
            r.line(key, "failed");
            r.line("witness", witness(w));
            r.fail();
        }
    }
}

fn verify(ctx: &Ctx, r: &mut Report) -> crate::Result<()> {
    let sp = &ctx.doc.space;
    let n = ctx.max_letters();
    let w = ctx.window();
    let alg = ctx.doc.structure()?;
    let has_structure = ctx.doc.tables_of(TableKind::Structure).next().is_some();
    if has_structure {
        let s = check_structure(&alg, n, ctx.max_action().as_ref())?;
        status_line(r, "structure", &s, |c| {
            format!("({},{}) {} -> {}", c.k, c.l, c.input.display(sp), c.value.display(sp))
        });
    }
    let ew = |x: &crate::blinfty::EWitness| format!("{} -> {}", x.input.display(sp), x.residual.display(sp));
    for e in ctx.doc.augmentations()? {
        let s = is_augmentation(&e, &alg, &w)?;
        status_line(r, &format!("augmentation {}", e.table().name()), &s, ew);
    }
    if ctx.doc.tables_of(TableKind::Pointed).next().is_some() {
        for t in ctx.doc.tables_of(TableKind::Pointed) {
            let pm = PointedMap::new(t.clone())?;
            let s = check_pointed(&pm, &alg, &w)?;
            status_line(r, &format!("pointed {}", t.name()), &s, ew);
        }
    }
    if ctx.doc.tables_of(TableKind::Morphism).next().is_some() {
        let m = ctx.doc.morphism()?;
        let s = check_morphism(&m, &w)?;
        status_line(r, &format!("morphism {}", m.table().name()), &s, ew);
    }
    if ctx.doc.tables_of(TableKind::UModule).next().is_some() {
        ctx.doc.umodule()?;
        r.line("umodule", "well-formed");
    }
    if ctx.doc.tables_of(TableKind::Ibl).next().is_some() {
        let s = check_ibl(&ctx.doc.ibl()?, n, ctx.hbar_max())?;
        status_line(r, "ibl", &s, |g| {
            format!("({},{},{}) {} -> {}", g.n, g.m, g.genus, g.input.display(sp), g.value.display(sp))
        });
    }
    for c in &ctx.doc.chains {
        let d = if ctx.doc.tables_of(TableKind::Ibl).next().is_some() {
            let ialg = ctx.doc.ibl()?;
            hat_ibl(sp, ialg.table(), &c.element, Some(ctx.hbar_max()))?
        } else {
            apply_hat_p(&alg, &c.element)?
        };
        let shown = if d.is_zero() { "0".to_string() } else { d.display(sp) };
        r.line(&format!("chain {}", c.name), format!("d = {shown}"));
    }
    Ok(())
}

fn cmd_torsion(ctx: &Ctx, r: &mut Report) -> crate::Result<()> {
    let alg = ctx.structure()?;
    let t = torsion(&alg, &ctx.search())?;
    r.bounded("torsion", t.value);
    r.line("kind", t.value.kind());
    if let Some(x) = &t.certificate {
        r.line("certificate-terms", x.len());
        ctx.save(r, x, true)?;
    }
    Ok(())
}

fn cmd_linearize(ctx: &Ctx, r: &mut Report) -> crate::Result<()> {
    let sp = &ctx.doc.space;
    let alg = ctx.structure()?;
    let eps = ctx.augmentation()?;
    let lin = linearize(&alg, &eps)?;
    r.line("linearize", "ok");
    r.line("augmentation", eps.table().name());
    for (k, l, g, w, e) in lin.table().cells() {
        let _ = g;
        r.line(&format!("p_eps ({k},{l}) {}", w.display(sp)), e.display(sp));
    }
    let ell = ell_table(lin.table());
    let s = check_linfty(sp, &ell, ctx.max_letters());
    status_line(r, "linfty", &s, |c| format!("({},{}) {}", c.k, c.l, c.input.display(sp)));
    Ok(())
}

fn cmd_order(ctx: &Ctx, r: &mut Report) -> crate::Result<()> {
    let alg = ctx.structure()?;
    let eps = ctx.augmentation()?;
    let pm = ctx.doc.pointed()?;
    let o = order_o(&alg, &eps, &pm, ctx.word_bound())?;
    let ot = order_o_tilde(&alg, &eps, &pm, &ctx.search())?;
    r.bounded("order", o.value);
    r.bounded("order-tilde", ot.value);
    if let Some(x) = &o.certificate {
        ctx.save(r, x, true)?;
    }
    Ok(())
}

fn cmd_order_multi(ctx: &Ctx, r: &mut Report) -> crate::Result<()> {
    let alg = ctx.structure()?;
    let eps = ctx.augmentation()?;
    let fam = ctx.doc.multi_point_family()?;
    r.line("m", fam.m());
    let o = order_multi(&alg, &eps, &fam, ctx.word_bound())?;
    let ot = order_multi_tilde(&alg, &eps, &fam, &ctx.search())?;
    r.bounded("order-multi", o.value);
    r.bounded("order-multi-tilde", ot.value);
    if let Some(x) = &o.certificate {
        ctx.save(r, x, true)?;
    }
    Ok(())
}

fn cmd_sd(ctx: &Ctx, r: &mut Report) -> crate::Result<()> {
    let alg = ctx.structure()?;
    let k = sd_order_linearized(&alg, &ctx.augmentation()?, &ctx.doc.pointed()?, &ctx.doc.umodule()?)?;
    r.line("sd", k);
    Ok(())
}

fn scope_name(s: PlanarityScope) -> &'static str {
    match s {
        PlanarityScope::Supplied => "supplied",
        PlanarityScope::AllAugmentations => "all-augmentations",
    }
}

fn cmd_planarity(ctx: &Ctx, r: &mut Report) -> crate::Result<()> {
    let alg = ctx.structure()?;
    let augs = ctx.doc.augmentations()?;
    let pm = ctx.doc.pointed()?;
    let t = if augs.is_empty() { Some(torsion(&alg, &ctx.search())?) } else { None };
    let pl = planarity(&alg, &augs, &pm, t.as_ref(), ctx.word_bound())?;
    r.bounded("planarity", pl.value);
    r.line("scope", scope_name(pl.scope));
    for (e, o) in augs.iter().zip(&pl.orders) {
        r.line(&format!("order {}", e.table().name()), o.value);
    }
    Ok(())
}

fn cmd_hierarchy(ctx: &Ctx, r: &mut Report) -> crate::Result<()> {
    let alg = ctx.structure()?;
    let t = torsion(&alg, &ctx.search())?;
    r.line("torsion", t.value);
    let w = ctx.window();
    let mut augs = Vec::new();
    for e in ctx.doc.augmentations()? {
        if is_augmentation(&e, &alg, &w)?.is_verified() {
            augs.push(e);
        }
    }
    let has_aug = !augs.is_empty();
    let mut pl = None;
    let mut sd = None;
    if has_aug {
        if let Ok(pm) = ctx.doc.pointed() {
            let p = planarity(&alg, &augs, &pm, None, ctx.word_bound())?;
            r.line("planarity", p.value);
            r.line("scope", scope_name(p.scope));
            if p.value == Bounded::Exact(1) {
                if let Ok(u) = ctx.doc.umodule() {
                    let k = sd_order_linearized(&alg, &augs[0], &pm, &u)?;
                    sd = Some(Level::Finite(k as u32));
                }
            }
            pl = Some(p);
        }
    }
    let v = classify(&t, has_aug, pl.as_ref(), sd)?;
    r.line("hierarchy", v);
    if pl.as_ref().is_some_and(|p| p.scope == PlanarityScope::Supplied) {
        r.line("bound", "lower");
    }
    Ok(())
}

fn cmd_combine(values: &[String], r: &mut Report) -> crate::Result<()> {
    let mut acc: Option<HierarchyValue> = None;
    for v in values {
        let x: HierarchyValue = v
            .parse()
            .map_err(|e: Error| Error::Parse { line: 0, msg: format!("`{v}`: {e}") })?;
        acc = Some(match acc {
            None => x,
            Some(a) => combine(a, x),
        });
    }
    r.line("combine", acc.expect("clap requires at least one value"));
    Ok(())
}

fn cmd_ibl_check(ctx: &Ctx, r: &mut Report) -> crate::Result<()> {
    let sp = &ctx.doc.space;
    let s = check_ibl(&ctx.doc.ibl()?, ctx.max_letters(), ctx.hbar_max())?;
    status_line(r, "ibl", &s, |g| {
        format!("({},{},{}) {} -> {}", g.n, g.m, g.genus, g.input.display(sp), g.value.display(sp))
    });
    Ok(())
}

fn cmd_ibl_torsion(ctx: &Ctx, n: u32, m: usize, r: &mut Report) -> crate::Result<()> {
    let ialg = ctx.doc.ibl()?;
    let k = ctx.hbar_max();
    let g = torsion_grid(&ialg, n, m, k, ctx.max_letters())?;
    let cell = format!("({n},{m})_{k}");
    if !g.found {
        r.line("ibl-torsion", format!("{cell} not-found-within-bounds"));
        r.inconclusive();
        return Ok(());
    }
    r.line("ibl-torsion", format!("{cell} found"));
    if let Some(d) = derive_flat_torsion(&ialg, &g)? {
        let how = if d.certificate.is_some() { "verified" } else { "trivial" };
        r.line("flat-torsion", format!("({},0)_{} {how}", d.n, d.k));
    }
    if let Some(x) = &g.certificate {
        ctx.save(r, x, true)?;
    }
    Ok(())
}

/// Runs one invocation given the full argument list (program name first).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            return Outcome {
                code,
                stdout: if code == EXIT_OK { e.to_string() } else { String::new() },
                stderr: if code == EXIT_OK { String::new() } else { e.to_string() },
            };
        }
    };
    let mut r = Report::new();
    let res = match cli.command {
        Command::Combine { values } => cmd_combine(&values, &mut r),
        Command::IblTorsion { common, n, m } => Ctx::new(common).and_then(|c| cmd_ibl_torsion(&c, n, m, &mut r)),
        Command::Verify(c) => Ctx::new(c).and_then(|c| verify(&c, &mut r)),
        Command::Torsion(c) => Ctx::new(c).and_then(|c| cmd_torsion(&c, &mut r)),
        Command::Linearize(c) => Ctx::new(c).and_then(|c| cmd_linearize(&c, &mut r)),
        Command::Order(c) => Ctx::new(c).and_then(|c| cmd_order(&c, &mut r)),
        Command::OrderMulti(c) => Ctx::new(c).and_then(|c| cmd_order_multi(&c, &mut r)),
        Command::Sd(c) => Ctx::new(c).and_then(|c| cmd_sd(&c, &mut r)),
        Command::Planarity(c) => Ctx::new(c).and_then(|c| cmd_planarity(&c, &mut r)),
        Command::Hierarchy(c) => Ctx::new(c).and_then(|c| cmd_hierarchy(&c, &mut r)),
        Command::IblCheck(c) => Ctx::new(c).and_then(|c| cmd_ibl_check(&c, &mut r)),
    };
    match res {
        Ok(()) => Outcome {
            code: r.code,
            stdout: r.out,
            stderr: String::new(),
        },
        Err(e) => {
            let code = error_code(&e);
            let kind = match code {
                EXIT_PARSE => "parse-error",
                EXIT_INCONCLUSIVE => "inconclusive",
                _ => "failed",
            };
            r.line("answer", kind);
            Outcome {
                code,
                stdout: r.out,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}
