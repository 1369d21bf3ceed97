//! Random generators and brute-force oracles shared by the test targets.
#![allow(dead_code)]

use blinfty::algebra::{q, EElement, EWord, Element, Generator, GradedSpace, Parity, Word, Q};
use blinfty::blinfty::{check_structure, conjugate_table, f_eps, Augmentation, BLAlgebra, BLMorphism, OperationTable, PointedMap};
use blinfty::invariants::{HierarchyValue, Level, Zone};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn space(spec: &[(&str, u8)]) -> GradedSpace {
    GradedSpace::new(
        spec.iter()
            .map(|(n, p)| Generator::new(*n, Parity::from_bit(*p)))
            .collect(),
    )
    .unwrap()
}

pub fn word(sp: &GradedSpace, names: &[&str]) -> Word {
    let letters: Vec<u32> = names.iter().map(|n| sp.lookup(n).unwrap()).collect();
    let (w, s) = blinfty::algebra::normalize_word(sp, &letters).expect("nonzero word");
    assert_eq!(s, 1, "fixture words must be given in canonical order");
    w
}

pub fn ew(sp: &GradedSpace, text: &str) -> EElement {
    let (e, s) = EWord::parse(sp, text, 0).unwrap().expect("nonzero eword");
    let mut out = EElement::zero();
    out.add_signed(e, &q(1), s);
    out
}

pub fn elem(terms: &[(i64, Word)]) -> Element {
    terms.iter().map(|(c, w)| (w.clone(), q(*c))).collect()
}

/// Fixture A: q1 even, q2 odd, p^{2,0}(q1·q2) = 1 and nothing else.
pub fn fixture_a() -> BLAlgebra {
    let sp = space(&[("q1", 0), ("q2", 1)]);
    let mut p = OperationTable::new("p", Parity::Odd);
    p.add(word(&sp, &["q1", "q2"]), 0, &elem(&[(1, Word::unit())]));
    BLAlgebra::new(sp, p).unwrap()
}

/// One odd q with p^{1,0}(q) = 1.
pub fn fixture_one_odd() -> BLAlgebra {
    let sp = space(&[("q", 1)]);
    let mut p = OperationTable::new("p", Parity::Odd);
    p.add(word(&sp, &["q"]), 0, &elem(&[(1, Word::unit())]));
    BLAlgebra::new(sp, p).unwrap()
}

pub fn zero_structure(sp: GradedSpace) -> BLAlgebra {
    BLAlgebra::new(sp, OperationTable::new("p", Parity::Odd)).unwrap()
}

/// Random space with 1..=max_gens generators of random parity.
pub fn random_space(rng: &mut StdRng, max_gens: usize) -> GradedSpace {
    let n = rng.gen_range(1..=max_gens);
    let names = ["a", "b", "c", "d", "e", "f"];
    GradedSpace::new(
        (0..n)
            .map(|i| Generator::new(names[i], Parity::from_bit(rng.gen_range(0..2))))
            .collect(),
    )
    .unwrap()
}

pub fn random_word(rng: &mut StdRng, sp: &GradedSpace, len: usize) -> Option<Word> {
    let letters: Vec<u32> = (0..len).map(|_| rng.gen_range(0..sp.len() as u32)).collect();
    blinfty::algebra::normalize_word(sp, &letters).map(|(w, _)| w)
}

pub fn small_q(rng: &mut StdRng) -> Q {
    let n = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    if rng.gen_bool(0.2) {
        blinfty::algebra::qf(n, 2)
    } else {
        q(n)
    }
}

/// Random parity-respecting table with `entries` cells, arities in
/// 1..=max_k and output lengths in 0..=max_l.
pub fn random_table(
    rng: &mut StdRng,
    sp: &GradedSpace,
    parity: Parity,
    entries: usize,
    max_k: usize,
    max_l: usize,
) -> OperationTable {
    let mut t = OperationTable::new("p", parity);
    let mut tries = 0;
    let mut made = 0;
    while made < entries && tries < 200 {
        tries += 1;
        let k = rng.gen_range(1..=max_k);
        let Some(input) = random_word(rng, sp, k) else { continue };
        let l = rng.gen_range(0..=max_l);
        let Some(out) = random_word(rng, sp, l) else { continue };
        if out.parity(sp) != input.parity(sp) + parity {
            continue;
        }
        let mut e = Element::zero();
        e.add_term(out, small_q(rng));
        t.add(input, 0, &e);
        made += 1;
    }
    t
}

pub fn random_augmentation(rng: &mut StdRng, sp: &GradedSpace, entries: usize, max_k: usize) -> Augmentation {
    let mut t = OperationTable::new("eps", Parity::Even);
    for _ in 0..entries * 10 {
        if t.entries().count() >= entries {
            break;
        }
        let k = rng.gen_range(1..=max_k);
        let Some(input) = random_word(rng, sp, k) else { continue };
        if input.parity(sp).is_odd() {
            continue;
        }
        t.add(input, 0, &Element::term(Word::unit(), small_q(rng)));
    }
    Augmentation::new(t).unwrap()
}

/// Random eword with the given cluster lengths.
pub fn random_eword(rng: &mut StdRng, sp: &GradedSpace, lens: &[usize]) -> Option<EElement> {
    let mut clusters = Vec::new();
    let mut sign = 1i8;
    for &l in lens {
        let letters: Vec<u32> = (0..l).map(|_| rng.gen_range(0..sp.len() as u32)).collect();
        let (w, s) = blinfty::algebra::normalize_word(sp, &letters)?;
        sign *= s;
        clusters.push(w);
    }
    let (e, s) = blinfty::algebra::normalize_eword(sp, clusters, 0)?;
    let mut out = EElement::zero();
    out.add_signed(e, &q(1), s * sign);
    Some(out)
}

pub fn shuffled<T: Clone>(rng: &mut StdRng, v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.shuffle(rng);
    v
}

// ---------------------------------------------------------------------------
// Oracles. These deliberately avoid the library's sign helpers.

/// Sign of sorting by adjacent swaps, counting swaps of two odd items.
pub fn bubble_sign(keys: &[u32], odd: &[bool]) -> i8 {
    let mut k: Vec<(u32, bool)> = keys.iter().copied().zip(odd.iter().copied()).collect();
    let mut sign = 1i8;
    let n = k.len();
    for i in 0..n {
        for j in 0..n - 1 - i {
            if k[j].0 > k[j + 1].0 {
                if k[j].1 && k[j + 1].1 {
                    sign = -sign;
                }
                k.swap(j, j + 1);
            }
        }
    }
    sign
}

fn oracle_word(sp: &GradedSpace, letters: &[u32]) -> Option<(Word, i8)> {
    let odd: Vec<bool> = letters.iter().map(|&l| sp.parity(l).is_odd()).collect();
    let s = bubble_sign(letters, &odd);
    let mut sorted = letters.to_vec();
    sorted.sort();
    for w in sorted.windows(2) {
        if w[0] == w[1] && sp.parity(w[0]).is_odd() {
            return None;
        }
    }
    Some((blinfty::algebra::normalize_word(sp, &sorted).unwrap().0, s))
}

/// Sign of moving the items at `front` (in order) before all the others,
/// computed by counting odd items jumped over.
fn front_sign(odd: &[bool], front: &[usize]) -> i8 {
    let mut inv = 0;
    for (rank, &f) in front.iter().enumerate() {
        // items before f that are not already moved
        let before = (0..f).filter(|i| !front[..rank].contains(i)).filter(|&i| odd[i]).count();
        if odd[f] {
            inv += before;
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// p̂ by the two-stage formula: choose the clusters K (moved to the front
/// with the ⊙-sign), then one letter from each (moved to the front of the
/// concatenated word), apply p, multiply by the leftover letters.
pub fn oracle_hat_p(sp: &GradedSpace, table: &OperationTable, x: &EElement) -> EElement {
    let mut out = EElement::zero();
    for (e, c) in x {
        let cl = e.clusters();
        let n = cl.len();
        let cl_odd: Vec<bool> = cl.iter().map(|w| w.parity(sp).is_odd()).collect();
        for mask in 1u32..(1 << n) {
            let kset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if kset.iter().any(|&i| cl[i].is_unit()) {
                continue;
            }
            let rest: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
            let s_diamond = front_sign(&cl_odd, &kset);
            // concatenated letters of the K clusters
            let mut letters = Vec::new();
            let mut starts = Vec::new();
            for &i in &kset {
                starts.push(letters.len());
                letters.extend_from_slice(cl[i].letters());
            }
            let odd: Vec<bool> = letters.iter().map(|&l| sp.parity(l).is_odd()).collect();
            let mut choice = vec![0usize; kset.len()];
            loop {
                let sel: Vec<usize> = kset
                    .iter()
                    .enumerate()
                    .map(|(j, _)| starts[j] + choice[j])
                    .collect();
                let s_circ = front_sign(&odd, &sel);
                let sel_letters: Vec<u32> = sel.iter().map(|&p| letters[p]).collect();
                if let Some((inp, s_in)) = oracle_word(sp, &sel_letters) {
                    for (u, d) in &table.get(&inp, 0) {
                        let mut merged: Vec<u32> = u.letters().to_vec();
                        merged.extend(
                            (0..letters.len())
                                .filter(|p| !sel.contains(p))
                                .map(|p| letters[p]),
                        );
                        let Some((mw, s_m)) = oracle_word(sp, &merged) else { continue };
                        let mut clusters = vec![mw];
                        clusters.extend(rest.iter().map(|&i| cl[i].clone()));
                        let cl2_odd: Vec<bool> = clusters.iter().map(|w| w.parity(sp).is_odd()).collect();
                        // sort clusters by bubble sort on their canonical rank
                        let mut ranked: Vec<Word> = clusters.clone();
                        ranked.sort();
                        ranked.dedup();
                        let keys: Vec<u32> = clusters
                            .iter()
                            .map(|w| ranked.iter().position(|r| r == w).unwrap() as u32)
                            .collect();
                        let s_e = bubble_sign(&keys, &cl2_odd);
                        let Some((ew2, _)) = blinfty::algebra::normalize_eword(sp, clusters, 0) else {
                            continue;
                        };
                        let sign = s_diamond * s_circ * s_in * s_m * s_e;
                        out.add_signed(ew2, &(c * d), sign);
                    }
                }
                // next choice
                let mut j = 0;
                loop {
                    if j == kset.len() {
                        break;
                    }
                    choice[j] += 1;
                    if choice[j] < cl[kset[j]].len() {
                        break;
                    }
                    choice[j] = 0;
                    j += 1;
                }
                if j == kset.len() {
                    break;
                }
            }
        }
    }
    out
}

/// Rank by plain Gaussian elimination on dense rows.
pub fn oracle_rank(mut rows: Vec<Vec<Q>>) -> usize {
    use num_traits::Zero;
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, piv);
        let p = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &p;
                for c in 0..ncols {
                    let v = &rows[rank][c] * &f;
                    rows[r][c] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Is `target` in the span of `images`? Keys are gathered from all vectors.
pub fn oracle_in_span<K: Ord + Clone>(images: &[Vec<(K, Q)>], target: &[(K, Q)]) -> bool {
    use num_traits::Zero;
    let mut keys: Vec<K> = images.iter().flatten().chain(target).map(|(k, _)| k.clone()).collect();
    keys.sort();
    keys.dedup();
    let dense = |v: &[(K, Q)]| -> Vec<Q> {
        let mut out = vec![Q::zero(); keys.len()];
        for (k, c) in v {
            let i = keys.binary_search(k).unwrap();
            out[i] += c;
        }
        out
    };
    let a: Vec<Vec<Q>> = images.iter().map(|v| dense(v)).collect();
    let mut ab = a.clone();
    ab.push(dense(target));
    oracle_rank(a) == oracle_rank(ab)
}

pub fn terms(x: &EElement) -> Vec<(EWord, Q)> {
    x.iter().map(|(w, c)| (w.clone(), c.clone())).collect()
}

/// Even table with the given (1,0)/(k,0) functional entries.
pub fn functional_table(sp: &GradedSpace, entries: &[(&[&str], i64)]) -> OperationTable {
    let mut t = OperationTable::new("pb", Parity::Even);
    for (w, c) in entries {
        t.add(word(sp, w), 0, &Element::term(Word::unit(), q(*c)));
    }
    t
}

/// IBL p̂ by direct enumeration: a set K of clusters, a nonempty letter
/// subset of each, one p vertex taking the selected letters. The ℏ shift
/// is the cycle rank of the glued graph, counted by union-find.
pub fn oracle_hat_ibl(sp: &GradedSpace, table: &OperationTable, x: &EElement, cap: Option<u32>) -> EElement {
    let mut out = EElement::zero();
    for (e, c) in x {
        let cl = e.clusters();
        let n = cl.len();
        let cl_odd: Vec<bool> = cl.iter().map(|w| w.parity(sp).is_odd()).collect();
        for mask in 1u32..(1 << n) {
            let kset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if kset.iter().any(|&i| cl[i].is_unit()) {
                continue;
            }
            let rest: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
            let s_diamond = front_sign(&cl_odd, &kset);
            let mut letters = Vec::new();
            let mut ranges = Vec::new();
            for &i in &kset {
                let s = letters.len();
                letters.extend_from_slice(cl[i].letters());
                ranges.push(s..letters.len());
            }
            let odd: Vec<bool> = letters.iter().map(|&l| sp.parity(l).is_odd()).collect();
            let total = letters.len();
            for sel_mask in 1u64..(1u64 << total) {
                if ranges.iter().any(|r| r.clone().all(|p| sel_mask >> p & 1 == 0)) {
                    continue;
                }
                let sel: Vec<usize> = (0..total).filter(|p| sel_mask >> p & 1 == 1).collect();
                let cycles = {
                    // vertex 0 is the operation, vertex j+1 the j-th cluster of K
                    let owner: Vec<usize> = sel
                        .iter()
                        .map(|&p| ranges.iter().position(|r| r.contains(&p)).unwrap() + 1)
                        .collect();
                    let edges: Vec<(usize, usize)> = owner.iter().map(|&o| (0, o)).collect();
                    cycle_rank(kset.len() + 1, &edges)
                };
                let s_circ = front_sign(&odd, &sel);
                let sel_letters: Vec<u32> = sel.iter().map(|&p| letters[p]).collect();
                let Some((inp, s_in)) = oracle_word(sp, &sel_letters) else { continue };
                for g in 0..=table.max_genus() {
                    let h = e.hbar() + g + cycles;
                    if cap.is_some_and(|k| h > k) {
                        continue;
                    }
                    for (u, d) in &table.get(&inp, g) {
                        let mut merged: Vec<u32> = u.letters().to_vec();
                        merged.extend((0..total).filter(|p| !sel.contains(p)).map(|p| letters[p]));
                        let Some((mw, s_m)) = oracle_word(sp, &merged) else { continue };
                        let mut clusters = vec![mw];
                        clusters.extend(rest.iter().map(|&i| cl[i].clone()));
                        let cl2_odd: Vec<bool> = clusters.iter().map(|w| w.parity(sp).is_odd()).collect();
                        let mut ranked = clusters.clone();
                        ranked.sort();
                        ranked.dedup();
                        let keys: Vec<u32> = clusters
                            .iter()
                            .map(|w| ranked.iter().position(|r| r == w).unwrap() as u32)
                            .collect();
                        let s_e = bubble_sign(&keys, &cl2_odd);
                        let Some((ew2, _)) = blinfty::algebra::normalize_eword(sp, clusters, h) else {
                            continue;
                        };
                        out.add_signed(ew2, &(c * d), s_diamond * s_circ * s_in * s_m * s_e);
                    }
                }
            }
        }
    }
    out
}

/// Random odd table with genus labels up to `max_genus`.
pub fn random_ibl_table(rng: &mut StdRng, sp: &GradedSpace, entries: usize, max_k: usize, max_l: usize, max_genus: u32) -> OperationTable {
    let mut t = OperationTable::new("p", Parity::Odd);
    for _ in 0..entries {
        let k = rng.gen_range(1..=max_k);
        let Some(w) = random_word(rng, sp, k) else { continue };
        let l = rng.gen_range(0..=max_l);
        let Some(u) = random_word(rng, sp, l) else { continue };
        if (w.parity(sp) + u.parity(sp)) != Parity::Odd {
            continue;
        }
        let g = rng.gen_range(0..=max_genus);
        t.add(w, g, &Element::term(u, small_q(rng)));
    }
    t
}

/// edges − vertices + components, by union-find.
pub fn cycle_rank(vertices: usize, edges: &[(usize, usize)]) -> u32 {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut components = vertices;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    (edges.len() + components - vertices) as u32
}

/// Random document over a random space: tables of every kind, chains and
/// bounds, each part present or not at random.
pub fn random_document(rng: &mut StdRng) -> blinfty::io::Document {
    use blinfty::io::{Bounds, Chain, Document, TableKind};
    let n = rng.gen_range(1..=4);
    let names = ["a", "b", "c", "q1", "x_2", "y'"];
    let with_action = rng.gen_bool(0.3);
    let gens: Vec<Generator> = (0..n)
        .map(|i| {
            let mut g = Generator::new(names[i], Parity::from_bit(rng.gen_range(0..2)));
            if rng.gen_bool(0.3) {
                let z = rng.gen_range(-3i64..=3) * 2 + g.parity.bit() as i64;
                g = g.with_zgrade(z);
            }
            if with_action {
                g = g.with_action(blinfty::algebra::qf(rng.gen_range(1..=9), rng.gen_range(1..=3)));
            }
            g
        })
        .collect();
    let sp = GradedSpace::new(gens).unwrap();
    let mut doc = Document::new(sp.clone());
    for _ in 0..rng.gen_range(0..=4) {
        let (kind, table) = match rng.gen_range(0..6) {
            0 => (TableKind::Structure, random_table(rng, &sp, Parity::Odd, 4, 3, 2)),
            1 => (TableKind::Morphism, random_table(rng, &sp, Parity::Even, 4, 3, 2)),
            2 => (TableKind::Augmentation, random_augmentation(rng, &sp, 3, 3).table().clone()),
            3 => {
                let p = Parity::from_bit(rng.gen_range(0..2));
                (TableKind::Pointed, random_table(rng, &sp, p, 3, 2, 2))
            }
            4 => {
                let mut t = OperationTable::new("U", Parity::Even);
                for g in 0..sp.len() as u32 {
                    let h = rng.gen_range(0..sp.len() as u32);
                    if sp.parity(g) == sp.parity(h) && rng.gen_bool(0.5) {
                        t.add(Word::letter(g), 0, &Element::term(Word::letter(h), small_q(rng)));
                    }
                }
                (TableKind::UModule, t)
            }
            _ => (TableKind::Ibl, random_ibl_table(rng, &sp, 4, 3, 2, 2)),
        };
        let mut table = table;
        if kind != TableKind::UModule && kind != TableKind::Augmentation && rng.gen_bool(0.2) {
            let limit = table.max_arity().max(1) + rng.gen_range(0..2);
            table = table.with_completeness(blinfty::blinfty::Completeness::UpToArity(limit));
        }
        doc.push_table(kind, table);
    }
    for i in 0..rng.gen_range(0..=2) {
        let mut element = EElement::zero();
        for _ in 0..rng.gen_range(0..=3) {
            let lens: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..=2)).collect();
            if let Some(x) = random_eword(rng, &sp, &lens) {
                let h = if rng.gen_bool(0.3) { rng.gen_range(1..=3) } else { 0 };
                for (w, c) in &x {
                    element.add_term(w.with_hbar(h), c * small_q(rng));
                }
            }
        }
        doc.chains.push(Chain {
            name: format!("c{i}"),
            element,
        });
    }
    if rng.gen_bool(0.7) {
        doc.bounds = Some(Bounds {
            max_letters: rng.gen_range(0..=6),
            max_action: if with_action && rng.gen_bool(0.5) {
                Some(blinfty::algebra::qf(rng.gen_range(1..=20), rng.gen_range(1..=4)))
            } else {
                None
            },
            hbar_max: if rng.gen_bool(0.4) { Some(rng.gen_range(0..=4)) } else { None },
            action_drop: false,
        });
    }
    doc
}

/// The line the CLI should print first for `command` on a corpus document,
/// computed straight from the library with the CLI's default bounds.
/// `Err` carries the library error.
pub fn library_line(name: &str, command: &str) -> blinfty::Result<String> {
    use blinfty::blinfty::{check_structure, Status};
    use blinfty::ibl::check_ibl;
    use blinfty::invariants::{order_o, planarity, sd_order_linearized, torsion, SearchBounds};
    use blinfty::io::{fixture, Document};

    let doc = Document::parse(fixture(name).expect("corpus name"))?;
    let b = doc.bounds.clone();
    let max_letters = b.as_ref().map_or(4, |b| b.max_letters);
    let action = b.as_ref().and_then(|b| b.max_action.clone());
    let hbar = b.as_ref().and_then(|b| b.hbar_max).unwrap_or(2);
    let search = SearchBounds::new(3, max_letters).with_action(action.clone());
    let alg = doc.structure()?;
    let checked = || -> blinfty::Result<BLAlgebra> {
        match check_structure(&alg, max_letters, action.as_ref())? {
            Status::Verified => Ok(alg.clone()),
            Status::Failed(_) => Err(blinfty::Error::InvalidInput("not a structure".into())),
        }
    };
    let eps = || -> blinfty::Result<Augmentation> {
        Ok(doc.augmentations()?.into_iter().next().unwrap_or_else(Augmentation::zero))
    };
    let status = |s: bool| if s { "verified" } else { "failed" };
    Ok(match command {
        "torsion" => format!("torsion: {}", torsion(&checked()?, &search)?.value),
        "order" => format!("order: {}", order_o(&checked()?, &eps()?, &doc.pointed()?, 3)?.value),
        "planarity" => {
            let a = checked()?;
            let augs = doc.augmentations()?;
            let t = if augs.is_empty() { Some(torsion(&a, &search)?) } else { None };
            format!("planarity: {}", planarity(&a, &augs, &doc.pointed()?, t.as_ref(), 3)?.value)
        }
        "sd" => format!("sd: {}", sd_order_linearized(&checked()?, &eps()?, &doc.pointed()?, &doc.umodule()?)?),
        "ibl-check" => format!("ibl: {}", status(check_ibl(&doc.ibl()?, max_letters, hbar)?.is_verified())),
        other => panic!("no library line for `{other}`"),
    })
}

/// Structures with no constant terms, conjugated by a random δ: the pair
/// (conj, −δ) is a structure with an augmentation and genuine p^{k,0}.
pub fn augmented_structures(n: usize) -> Vec<(BLAlgebra, Augmentation)> {
    let mut out = Vec::new();
    let mut seed = 0;
    while out.len() < n && seed < 2000 {
        seed += 1;
        let mut rng = StdRng::seed_from_u64(seed);
        let sp = random_space(&mut rng, 3);
        let t = random_table(&mut rng, &sp, Parity::Odd, 2, 2, 2).filter_outputs(|l| l >= 1);
        let Ok(base) = BLAlgebra::new(sp.clone(), t) else { continue };
        if base.table().is_zero() || !check_structure(&base, 4, None).unwrap().is_verified() {
            continue;
        }
        let delta = random_augmentation(&mut rng, &sp, 2, 2);
        let conj = conjugate_table(&sp, base.table(), &delta).unwrap();
        let alg = BLAlgebra::new(sp.clone(), conj).unwrap();
        let neg = Augmentation::new(f_eps_neg(&delta)).unwrap();
        out.push((alg, neg));
    }
    out
}

pub fn f_eps_neg(eps: &Augmentation) -> OperationTable {
    let mut t = OperationTable::new("eps", Parity::Even);
    for (w, _, e) in eps.table().entries() {
        t.add(w.clone(), 0, &e.scaled(&q(-1)));
    }
    t
}

/// γ even, η odd, ζ even with p^{1,1}(γ) = η; pointed maps send ζ to 1 and
/// γ to c. φ = id with φ_•^{1,0}(η) = c′ − c relates the two.
pub fn replacement_triple(c: i64, c2: i64) -> (BLMorphism, PointedMap, PointedMap, OperationTable) {
    let sp = space(&[("g", 0), ("h", 1), ("z", 0)]);
    let mut p = OperationTable::new("p", Parity::Odd);
    p.add(word(&sp, &["g"]), 0, &Element::basis(word(&sp, &["h"])));
    let alg = BLAlgebra::new(sp.clone(), p).unwrap();
    let pb = PointedMap::new(functional_table(&sp, &[(&["z"], 1), (&["g"], c)])).unwrap();
    let qb = PointedMap::new(functional_table(&sp, &[(&["z"], 1), (&["g"], c2)])).unwrap();
    let mut phib = OperationTable::new("phib", Parity::Odd);
    phib.add(word(&sp, &["h"]), 0, &Element::term(Word::unit(), q(c2 - c)));
    (BLMorphism::identity(&alg), pb, qb, phib)
}

pub fn compatible_triples() -> Vec<(BLMorphism, PointedMap, PointedMap, OperationTable, Augmentation)> {
    let mut out = Vec::new();
    for seed in 0..10u64 {
        let mut rng = StdRng::seed_from_u64(seed);
        let sp = space(&[("a", 0), ("b", 0)]);
        let alg = zero_structure(sp.clone());
        let pb = PointedMap::new(random_table(&mut rng, &sp, Parity::Even, 3, 2, 1)).unwrap();
        let delta = random_augmentation(&mut rng, &sp, 2, 2);
        let qb = PointedMap::new(conjugate_table(&sp, pb.table(), &delta).unwrap()).unwrap();
        let phi = BLMorphism::new(alg.clone(), alg.clone(), f_eps(&sp, &delta, 1)).unwrap();
        let target_eps = random_augmentation(&mut rng, &sp, 2, 2);
        out.push((phi, pb, qb, OperationTable::new("phib", Parity::Odd), target_eps));
    }
    for (i, (c, c2)) in [(0, 1), (2, -1), (1, 1), (3, 0)].into_iter().enumerate() {
        let (phi, pb, qb, phib) = replacement_triple(c, c2);
        let mut rng = StdRng::seed_from_u64(100 + i as u64);
        let eps = random_augmentation(&mut rng, phi.source().space(), 2, 2);
        out.push((phi, pb, qb, phib, eps));
    }
    out
}

pub fn all_values() -> Vec<HierarchyValue> {
    let levels: Vec<Level> = (0..=5).map(Level::Finite).chain([Level::Infinite]).collect();
    let mut out = Vec::new();
    for zone in [Zone::PT, Zone::SD, Zone::Pl] {
        for &l in &levels {
            if let Ok(h) = HierarchyValue::new(zone, l) {
                out.push(h);
            }
        }
    }
    out
}

/// (PT, Pl, SD) components; SD only matters when Pl = 1.
pub fn components(v: HierarchyValue) -> (Level, Level, Level) {
    let inf = Level::Infinite;
    match v.zone() {
        Zone::PT => (v.level(), Level::Finite(0), inf),
        Zone::SD => (inf, Level::Finite(1), v.level()),
        Zone::Pl => (inf, v.level(), inf),
    }
}

pub fn oracle_combine(a: HierarchyValue, b: HierarchyValue) -> HierarchyValue {
    let (pa, la, sa) = components(a);
    let (pb, lb, sb) = components(b);
    let pt = pa.min(pb);
    let pl = if la == Level::Finite(0) || lb == Level::Finite(0) { Level::Finite(0) } else { la.max(lb) };
    let sd = if pl == Level::Finite(1) { sa.max(sb) } else { Level::Infinite };
    match pl {
        Level::Finite(0) => HierarchyValue::new(Zone::PT, pt).unwrap(),
        Level::Finite(1) => HierarchyValue::new(Zone::SD, sd).unwrap(),
        l => HierarchyValue::new(Zone::Pl, l).unwrap(),
    }
}
