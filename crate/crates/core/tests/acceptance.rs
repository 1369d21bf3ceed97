//! One line per acceptance criterion, with its bound and elapsed time.
//! Runs without the libtest harness so the lines always reach the output.

mod common;

use std::time::{Duration, Instant};

use blinfty::algebra::{enumerate_ewords, EElement, Window};
use blinfty::blinfty::{
    apply_f_eps, check_linfty, check_on_window, check_structure, conjugate_table, ell_table, is_augmentation, linearize,
    Augmentation, BLAlgebra, OperationTable, PointedMap,
};
use blinfty::ibl::{
    apply_hat_p_ibl, check_c_chain, check_ibl, derive_flat_torsion, hbar_width, torsion_grid, verify_grid, IBLAlgebra,
};
use blinfty::invariants::{
    check_width_monotone, combine, order_functoriality_check, order_multi, order_multi_tilde, order_o, order_o_tilde,
    torsion, Bounded, MultiPointFamily, SearchBounds,
};
use blinfty::io::{corpus, fixture, Document};
use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T>(r: blinfty::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn doc(name: &str) -> Document {
    Document::parse(fixture(name).unwrap()).unwrap()
}

/// Every corpus structure with each of its augmentations that checks out,
/// followed by generated conjugated pairs with genuine constant terms.
fn fixture_pairs() -> Vec<(String, BLAlgebra, Augmentation)> {
    let mut out = Vec::new();
    for (name, _) in corpus() {
        let d = doc(name);
        let Ok(alg) = d.structure() else { continue };
        if d.tables_of(blinfty::io::TableKind::Structure).next().is_none()
            || !check_structure(&alg, 4, None).unwrap().is_verified()
        {
            continue;
        }
        for e in d.augmentations().unwrap() {
            if is_augmentation(&e, &alg, &Window::new(4, 3)).unwrap().is_verified() {
                out.push((format!("{name}/{}", e.table().name()), alg.clone(), e));
            }
        }
    }
    for (i, (alg, e)) in augmented_structures(12).into_iter().enumerate() {
        out.push((format!("conjugated#{i}"), alg, e));
    }
    out
}

fn criterion_1() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let (mut tables, mut structures) = (0, 0);
    let mut words = 0;
    while tables < 120 {
        let sp = random_space(&mut rng, 4);
        let entries = rng.gen_range(1..=4);
        let t = random_table(&mut rng, &sp, blinfty::algebra::Parity::Odd, entries, 3, 3);
        let Ok(alg) = BLAlgebra::new(sp.clone(), t.clone()) else { continue };
        tables += 1;
        let verdict = check_structure(&alg, 4, None).map_err(|e| e.to_string())?.is_verified();
        let basis = enumerate_ewords(&sp, &Window::new(4, 4)).map_err(|e| e.to_string())?;
        words += basis.len();
        let direct = basis.iter().all(|b| {
            let x = EElement::basis(b.clone());
            oracle_hat_p(&sp, &t, &oracle_hat_p(&sp, &t, &x)).is_zero()
        });
        ensure(verdict == direct, || format!("table #{tables}: verdict {verdict}, direct {direct}"))?;
        structures += usize::from(verdict);
    }
    ensure(structures >= 10 && tables - structures >= 10, || {
        format!("unbalanced sample: {structures} structures of {tables}")
    })?;
    Ok(format!("{tables} tables ({structures} structures), {words} ewords evaluated"))
}

fn criterion_2() -> Outcome {
    let mut lines = Vec::new();
    for (name, expect) in [("fixtureA", Bounded::Exact(1)), ("one-odd", Bounded::Exact(0))] {
        let t0 = Instant::now();
        let alg = doc(name).structure().unwrap();
        let t = torsion(&alg, &SearchBounds::new(3, 4)).map_err(|e| e.to_string())?;
        let dt = t0.elapsed();
        ensure(t.value == expect, || format!("{name}: {} instead of {expect}", t.value))?;
        ensure(dt < Duration::from_secs(1), || format!("{name}: {dt:?}"))?;
        lines.push(format!("{name} {} in {:.3}s", t.value, dt.as_secs_f64()));
    }
    let zero = doc("zero").structure().unwrap();
    let t0 = Instant::now();
    let mut scheduled = 0;
    for word_bound in 1..=3 {
        for max_letters in 1..=4 {
            let t = torsion(&zero, &SearchBounds::new(word_bound, max_letters)).map_err(|e| e.to_string())?;
            ensure(t.value == Bounded::NotFound, || format!("zero at ({word_bound},{max_letters}): {}", t.value))?;
            scheduled += 1;
        }
    }
    let dt = t0.elapsed();
    ensure(dt < Duration::from_secs(1), || format!("zero: {dt:?}"))?;
    lines.push(format!("zero not found at {scheduled} bounds in {:.3}s", dt.as_secs_f64()));
    Ok(lines.join(", "))
}

fn criterion_3() -> Outcome {
    let pairs = fixture_pairs();
    let mut bases = 0;
    for (name, alg, eps) in &pairs {
        let sp = alg.space();
        let w = Window::new(4, 3);
        bases += enumerate_ewords(sp, &w).map_err(|e| e.to_string())?.len();
        let s = check_on_window(sp, &w, |x| Ok(apply_f_eps(sp, eps, -1, &apply_f_eps(sp, eps, 1, x)?)?.sub(x)))
            .map_err(|e| e.to_string())?;
        ensure(s.is_verified(), || format!("{name}: F_-eps F_eps is not the identity"))?;
        let conj = conjugate_table(sp, alg.table(), eps).map_err(|e| e.to_string())?;
        for (w, _, e) in conj.entries() {
            ensure(e.of_length(0).is_zero(), || format!("{name}: constant term at {}", w.display(sp)))?;
        }
    }
    Ok(format!("{} pairs, {bases} basis ewords", pairs.len()))
}

fn criterion_4() -> Outcome {
    let pairs = fixture_pairs();
    for (name, alg, eps) in &pairs {
        let lin = linearize(alg, eps).map_err(|e| format!("{name}: {e}"))?;
        let s = check_linfty(alg.space(), &ell_table(lin.table()), 4);
        ensure(s.is_verified(), || format!("{name}: {s:?}"))?;
    }
    Ok(format!("{} linearized fixtures, words up to 4 letters", pairs.len()))
}

fn criterion_5() -> Outcome {
    let mut certified = 0;
    fn check(certified: &mut usize, label: String, o: Bounded, ot: Bounded) -> Result<(), String> {
        if let (Some(a), Some(b)) = (o.level(), ot.level()) {
            *certified += 1;
            ensure(a <= b, || format!("{label}: O = {a} > Õ = {b}"))?;
        }
        Ok(())
    }
    for name in ["p0", "p2", "planarity-two", "sd", "replacement"] {
        let d = doc(name);
        let alg = d.structure().unwrap();
        let pm = d.pointed().unwrap();
        for eps in d.augmentations().unwrap() {
            let o = e(order_o(&alg, &eps, &pm, 3))?;
            let ot = e(order_o_tilde(&alg, &eps, &pm, &SearchBounds::new(3, 4)))?;
            check(&mut certified, format!("{name}/{}", eps.table().name()), o.value, ot.value)?;
        }
    }
    for seed in 0..40 {
        let mut rng = StdRng::seed_from_u64(seed);
        let sp = space(&[("a", 0), ("b", 0), ("c", 0)][..rng.gen_range(1..=3)]);
        let alg = zero_structure(sp.clone());
        let pm = PointedMap::new(random_table(&mut rng, &sp, blinfty::algebra::Parity::Even, 3, 2, 1)).unwrap();
        let eps = random_augmentation(&mut rng, &sp, 2, 2);
        let o = e(order_o(&alg, &eps, &pm, 3))?;
        let ot = e(order_o_tilde(&alg, &eps, &pm, &SearchBounds::new(3, 4)))?;
        check(&mut certified, format!("random#{seed}"), o.value, ot.value)?;
    }
    let single = certified;

    let mut families: Vec<(String, BLAlgebra, Augmentation, MultiPointFamily)> = Vec::new();
    let m2 = doc("multi2");
    families.push(("multi2".into(), m2.structure().unwrap(), Augmentation::zero(), m2.multi_point_family().unwrap()));
    for seed in 0..20 {
        let mut rng = StdRng::seed_from_u64(seed);
        let sp = space(&[("a", 0), ("b", 0)]);
        let mut f = MultiPointFamily::new(2);
        for s in [vec![0], vec![1], vec![0, 1]] {
            if rng.gen_bool(0.7) {
                let t: OperationTable = random_table(&mut rng, &sp, blinfty::algebra::Parity::Even, 2, 2, 1);
                f.insert(s, t).unwrap();
            }
        }
        let eps = random_augmentation(&mut rng, &sp, 2, 2);
        families.push((format!("multi#{seed}"), zero_structure(sp), eps, f));
    }
    for (label, alg, eps, f) in &families {
        let o = e(order_multi(alg, eps, f, 2))?;
        let ot = e(order_multi_tilde(alg, eps, f, &SearchBounds::new(2, 4)))?;
        check(&mut certified, label.clone(), o.value, ot.value)?;
    }
    let multi = certified - single;

    let triples = compatible_triples();
    let mut transported = 0;
    for (i, (phi, pb, qb, phib, eps)) in triples.iter().enumerate() {
        let r = e(order_functoriality_check(phi, pb, qb, phib, eps, &SearchBounds::new(2, 3)))?;
        ensure(r.compatible, || format!("triple {i} is not compatible"))?;
        for t in [&r.o, &r.o_tilde] {
            ensure(t.inequality_holds(), || format!("triple {i}: {t:?}"))?;
            if t.source.certificate.is_some() {
                ensure(t.verified, || format!("triple {i}: transported certificate fails"))?;
            }
        }
        transported += usize::from(r.o.verified || r.o_tilde.verified);
    }
    ensure(single >= 10 && multi >= 5, || format!("too few certified pairs: {single} single, {multi} multi"))?;
    ensure(transported >= 10, || format!("only {transported} triples transported a certificate"))?;
    Ok(format!(
        "O ≤ Õ on {single} certified pairs, multi-point on {multi}, transport on {transported}/{} triples",
        triples.len()
    ))
}

fn ibl_fixtures() -> Vec<(String, IBLAlgebra)> {
    let mut out = vec![
        ("iblA".to_string(), doc("iblA").ibl().unwrap()),
        ("ibl-genus".to_string(), doc("ibl-genus").ibl().unwrap()),
        ("fixtureA lifted".to_string(), IBLAlgebra::lift(&doc("fixtureA").structure().unwrap())),
        ("one-odd lifted".to_string(), IBLAlgebra::lift(&doc("one-odd").structure().unwrap())),
    ];
    let mut rng = StdRng::seed_from_u64(77);
    let mut tries = 0;
    while out.len() < 12 && tries < 2000 {
        tries += 1;
        let sp = random_space(&mut rng, 2);
        let t = random_ibl_table(&mut rng, &sp, 3, 2, 1, 1);
        let Ok(a) = IBLAlgebra::new(sp, t) else { continue };
        if a.table().is_zero() || !check_ibl(&a, 3, 2).unwrap().is_verified() {
            continue;
        }
        out.push((format!("random-ibl#{tries}"), a));
    }
    out
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for (name, alg, eps) in fixture_pairs() {
        let w = Window::new(4, 3);
        let bad = check_width_monotone(&alg, &eps, &w).map_err(|e| e.to_string())?;
        ensure(bad.is_none(), || format!("{name}: width drops at {bad:?}"))?;
        checked += enumerate_ewords(alg.space(), &w).unwrap().len();
    }
    let mut hchecked = 0;
    for (name, a) in ibl_fixtures() {
        for b in enumerate_ewords(a.space(), &Window::new(3, 3)).unwrap() {
            for h in 0..=2 {
                let x = EElement::basis(b.with_hbar(h));
                let y = apply_hat_p_ibl(&a, &x, Some(4)).map_err(|e| e.to_string())?;
                if let Some(wy) = hbar_width(&y) {
                    ensure(wy >= h, || format!("{name}: ℏ-width drops on {}", x.display(a.space())))?;
                }
                hchecked += 1;
            }
        }
    }
    Ok(format!("width on {checked} basis ewords, ℏ-width on {hchecked}"))
}

fn criterion_7() -> Outcome {
    let (mut found, mut derived, mut chains) = (0, 0, 0);
    for (name, a) in ibl_fixtures() {
        for k in 0..=2u32 {
            for n in 0..=k {
                for m in 0..=2usize {
                    let g = torsion_grid(&a, n, m, k, 2).map_err(|e| format!("{name}: {e}"))?;
                    if g.certificate.is_none() {
                        continue;
                    }
                    found += 1;
                    let d = derive_flat_torsion(&a, &g)
                        .map_err(|e| format!("{name} ({n},{m})_{k}: {e}"))?
                        .ok_or_else(|| format!("{name} ({n},{m})_{k}: nothing derived"))?;
                    match &d.certificate {
                        Some(y) => {
                            let ok = verify_grid(&a, y, n + m as u32, 0, k).map_err(|e| e.to_string())?;
                            ensure(ok, || format!("{name} ({n},{m})_{k}: derived certificate fails"))?;
                            derived += 1;
                        }
                        None => ensure(n + m as u32 > k, || format!("{name} ({n},{m})_{k}: certificate missing"))?,
                    }
                }
            }
        }
        for m in 1..=3 {
            let s = check_c_chain(&a, m, 3, 2).map_err(|e| format!("{name}: {e}"))?;
            ensure(s.is_verified(), || format!("{name}: C_{m} does not commute at {s:?}"))?;
            chains += 1;
        }
    }
    ensure(derived >= 5, || format!("only {derived} derived certificates"))?;
    Ok(format!("{found} grid certificates, {derived} re-verified flat certificates, {chains} C_m checks"))
}

fn criterion_8() -> Outcome {
    let vals = all_values();
    let rank = |v: &blinfty::invariants::HierarchyValue| vals.iter().position(|w| w == v).unwrap();
    for a in &vals {
        for b in &vals {
            ensure(a.cmp(b) == rank(a).cmp(&rank(b)), || format!("{a} vs {b} out of order"))?;
            ensure(combine(*a, *b) == combine(*b, *a), || format!("{a} ⊗ {b} not commutative"))?;
            ensure(combine(*a, *b) == oracle_combine(*a, *b), || format!("{a} ⊗ {b} disagrees with oracle"))?;
            for c in &vals {
                ensure(combine(combine(*a, *b), *c) == combine(*a, combine(*b, *c)), || {
                    format!("({a} ⊗ {b}) ⊗ {c} not associative")
                })?;
            }
        }
    }
    Ok(format!("{} values, {} triples", vals.len(), vals.len().pow(3)))
}

fn criterion_9() -> Outcome {
    for (name, text) in corpus() {
        let d = Document::parse(text).map_err(|e| format!("{name}: {e}"))?;
        ensure(d.serialize() == *text, || format!("{name} does not round-trip"))?;
    }
    let mut rng = StdRng::seed_from_u64(9);
    for i in 0..1000 {
        let d = random_document(&mut rng);
        let s = d.serialize();
        let back = Document::parse(&s).map_err(|e| format!("random #{i}: {e}"))?;
        ensure(back.serialize() == s && back == d, || format!("random #{i} does not round-trip"))?;
    }
    let mut compared = 0;
    for (name, _) in corpus() {
        for cmd in ["torsion", "order", "planarity", "sd", "ibl-check"] {
            let out = blinfty::io::cli::run(["blinfty", cmd, name]);
            let first = out.stdout.lines().next().unwrap_or("");
            match library_line(name, cmd) {
                Ok(line) => ensure(first == line, || format!("{cmd} {name}: cli `{first}`, library `{line}`"))?,
                Err(_) => ensure(out.code != 0 && first.starts_with("answer: "), || {
                    format!("{cmd} {name}: library errs but cli exits {}", out.code)
                })?,
            }
            compared += 1;
        }
    }
    Ok(format!("{} corpus documents, 1000 random documents, {compared} CLI comparisons", corpus().len()))
}

fn main() {
    let criteria: [(&str, Option<u64>, fn() -> Outcome); 9] = [
        ("two-level equivalence", Some(60), criterion_1),
        ("torsion fixtures", None, criterion_2),
        ("F_-eps inverse and p_eps^{k,0} = 0", None, criterion_3),
        ("L-infinity relation", None, criterion_4),
        ("O ≤ Õ and functoriality", None, criterion_5),
        ("width and ℏ-width monotonicity", None, criterion_6),
        ("IBL grid transport and C_m", Some(60), criterion_7),
        ("hierarchy order and combine", Some(10), criterion_8),
        ("round trip and CLI agreement", None, criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let t0 = Instant::now();
        let r = f();
        let dt = t0.elapsed();
        let over = limit.filter(|&s| dt > Duration::from_secs(s));
        let limit_text = limit.map_or(String::new(), |s| format!(" < {s}s"));
        let (verdict, detail) = match (&r, over) {
            (Ok(d), None) => ("PASS", d.clone()),
            (Ok(d), Some(s)) => ("FAIL", format!("{d}; over the {s}s limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        failed += usize::from(verdict == "FAIL");
        println!(
            "criterion {} [{name}]: {verdict} ({:.2}s{limit_text}) {detail}",
            i + 1,
            dt.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
