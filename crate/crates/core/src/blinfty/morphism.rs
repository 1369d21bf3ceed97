use rayon::prelude::*;

use crate::algebra::{normalize_eword, normalize_word, permutation_sign, words_of_length, EElement, Element, GradedSpace, Parity, Window, Word, Q};
use crate::error::{Error, Result};

use super::glue::glue_morphism;
use super::structure::{apply_hat_p, check_on_window, single_cluster_part, BLAlgebra, EWitness, Status};
use super::table::{Completeness, OperationTable};

/// An even table φ^{k,l}: S^kV → S^lV′ between two algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BLMorphism {
    source: BLAlgebra,
    target: BLAlgebra,
    phi: OperationTable,
}

impl BLMorphism {
    pub fn new(source: BLAlgebra, target: BLAlgebra, phi: OperationTable) -> Result<BLMorphism> {
        if phi.parity() != Parity::Even {
            return Err(Error::ParityMismatch("a morphism table must be even".into()));
        }
        phi.validate(source.space(), target.space())?;
        Ok(BLMorphism { source, target, phi })
    }

    /// φ^{1,1} = Id, everything else zero.
    pub fn identity(alg: &BLAlgebra) -> BLMorphism {
        BLMorphism {
            source: alg.clone(),
            target: alg.clone(),
            phi: identity_table(alg.space()),
        }
    }

    pub fn source(&self) -> &BLAlgebra {
        &self.source
    }

    pub fn target(&self) -> &BLAlgebra {
        &self.target
    }

    pub fn table(&self) -> &OperationTable {
        &self.phi
    }
}

pub fn identity_table(space: &GradedSpace) -> OperationTable {
    let mut t = OperationTable::new("id", Parity::Even);
    for g in 0..space.len() as u32 {
        t.add(Word::letter(g), 0, &Element::basis(Word::letter(g)));
    }
    t
}

/// Morphism assembly of an even table between two spaces.
pub fn hat_phi(source: &GradedSpace, target: &GradedSpace, phi: &OperationTable, x: &EElement) -> Result<EElement> {
    let mut out = EElement::zero();
    for (w, c) in x {
        glue_morphism(source, target, phi, None, w, c, &mut out)?;
    }
    Ok(out)
}

/// φ̂_•: the same assembly with exactly one block evaluated by `marked`.
pub fn hat_phi_marked(
    source: &GradedSpace,
    target: &GradedSpace,
    phi: &OperationTable,
    marked: &OperationTable,
    x: &EElement,
) -> Result<EElement> {
    let mut out = EElement::zero();
    for (w, c) in x {
        glue_morphism(source, target, phi, Some(marked), w, c, &mut out)?;
    }
    Ok(out)
}

pub fn apply_hat_phi(mor: &BLMorphism, x: &EElement) -> Result<EElement> {
    hat_phi(mor.source.space(), mor.target.space(), &mor.phi, x)
}

/// φ̂∘p̂ = p̂′∘φ̂ on the window.
pub fn check_morphism(mor: &BLMorphism, window: &Window) -> Result<Status<EWitness>> {
    check_on_window(mor.source.space(), window, |x| {
        let lhs = apply_hat_phi(mor, &apply_hat_p(&mor.source, x)?)?;
        let rhs = apply_hat_p(&mor.target, &apply_hat_phi(mor, x)?)?;
        Ok(lhs.sub(&rhs))
    })
}

/// Set partitions of `0..n` into blocks, blocks ordered by least element.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            go(i + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        go(i + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// (ψ∘φ)^{k,l} for k ≤ `max_arity`: for every set partition I₁…I_a of the
/// input letters, the connected ψ̂^a part of ψ̂(φ(v^{I₁})⊙…⊙φ(v^{I_a})).
pub fn compose(psi: &BLMorphism, phi: &BLMorphism, max_arity: usize) -> Result<BLMorphism> {
    if psi.source != phi.target {
        return Err(Error::InvalidInput("compose: φ's target is not ψ's source".into()));
    }
    let src = phi.source.space();
    let mid = phi.target.space();
    let tgt = psi.target.space();
    let mut inputs = Vec::new();
    for k in 1..=max_arity {
        inputs.extend(words_of_length(src, k));
    }
    let rows: Vec<Result<Element>> = inputs
        .par_iter()
        .map(|w| composite_entry(src, mid, tgt, &phi.phi, &psi.phi, w))
        .collect();
    let mut table = OperationTable::new(format!("{}∘{}", psi.phi.name(), phi.phi.name()), Parity::Even)
        .with_completeness(Completeness::UpToArity(max_arity));
    for (w, r) in inputs.into_iter().zip(rows) {
        table.add(w, 0, &r?);
    }
    BLMorphism::new(phi.source.clone(), psi.target.clone(), table)
}

fn composite_entry(
    src: &GradedSpace,
    mid: &GradedSpace,
    tgt: &GradedSpace,
    phi: &OperationTable,
    psi: &OperationTable,
    input: &Word,
) -> Result<Element> {
    let letters = input.letters();
    let parities: Vec<Parity> = letters.iter().map(|&l| src.parity(l)).collect();
    let mut middle = EElement::zero();
    for part in set_partitions(letters.len()) {
        let order: Vec<usize> = part.iter().flatten().copied().collect();
        let sign = permutation_sign(&parities, &order);
        // φ on each block; blocks are even maps, so no passage signs
        let mut acc: Vec<(Vec<Word>, Q)> = vec![(Vec::new(), super::structure::sign_q(sign))];
        for block in &part {
            let bl: Vec<u32> = block.iter().map(|&i| letters[i]).collect();
            let Some((w, s)) = normalize_word(src, &bl) else {
                acc.clear();
                break;
            };
            phi.require_arity(w.len())?;
            let out = phi.get(&w, 0);
            let mut next = Vec::new();
            for (ws, c) in &acc {
                for (u, d) in &out {
                    let mut ws2 = ws.clone();
                    ws2.push(u.clone());
                    let mut cd = c * d;
                    if s < 0 {
                        cd = -cd;
                    }
                    next.push((ws2, cd));
                }
            }
            acc = next;
        }
        for (ws, c) in acc {
            if let Some((ew, s)) = normalize_eword(mid, ws, 0) {
                middle.add_signed(ew, &c, s);
            }
        }
    }
    let out = hat_phi(mid, tgt, psi, &middle)?;
    Ok(single_cluster_part(&out))
}

/// A family ε^k: S^kV → ℚ, i.e. an even table supported at l = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmentation {
    eps: OperationTable,
}

impl Augmentation {
    pub fn new(eps: OperationTable) -> Result<Augmentation> {
        if eps.parity() != Parity::Even {
            return Err(Error::ParityMismatch("an augmentation is even".into()));
        }
        if eps.max_output_len() > 0 || eps.has_genus() {
            return Err(Error::InvalidEntry("an augmentation only has l = 0 entries".into()));
        }
        Ok(Augmentation { eps })
    }

    pub fn zero() -> Augmentation {
        Augmentation {
            eps: OperationTable::new("eps", Parity::Even),
        }
    }

    pub fn table(&self) -> &OperationTable {
        &self.eps
    }

    /// As a morphism to the trivial algebra.
    pub fn as_morphism(&self, alg: &BLAlgebra) -> Result<BLMorphism> {
        BLMorphism::new(alg.clone(), BLAlgebra::zero_algebra(), self.eps.clone())
    }

    /// ε∘φ for a morphism φ into the algebra ε augments.
    pub fn pull_back(&self, phi: &BLMorphism, max_arity: usize) -> Result<Augmentation> {
        let e = self.as_morphism(phi.target())?;
        let c = compose(&e, phi, max_arity)?;
        Augmentation::new(c.phi.renamed(self.eps.name()))
    }

    /// ε∘φ at every arity. Needs total tables and φ outputs of length ≤ 1:
    /// then a connected ε∘φ graph has one ε vertex fed by single-output φ
    /// vertices, so arities stop at max_arity(ε)·max_arity(φ).
    pub fn pull_back_full(&self, phi: &BLMorphism) -> Result<Augmentation> {
        let total = self.eps.completeness() == Completeness::Total && phi.phi.completeness() == Completeness::Total;
        if !total || phi.phi.max_output_len() > 1 {
            return Err(Error::InvalidInput(
                "ε∘φ has no arity bound here; use pull_back with an explicit arity".into(),
            ));
        }
        let bound = self.eps.max_arity().max(1) * phi.phi.max_arity().max(1);
        let pulled = self.pull_back(phi, bound)?;
        Augmentation::new(pulled.eps.with_completeness(Completeness::Total))
    }
}

/// ε̂∘p̂ = 0 on the window. An all-even space needs no check: p̂ is odd and
/// every eword is even, so p̂ vanishes identically.
pub fn is_augmentation(eps: &Augmentation, alg: &BLAlgebra, window: &Window) -> Result<Status<EWitness>> {
    eps.eps.validate(alg.space(), &GradedSpace::zero())?;
    if alg.space().all_even() {
        return Ok(Status::Verified);
    }
    let zero = GradedSpace::zero();
    check_on_window(alg.space(), window, |x| hat_phi(alg.space(), &zero, &eps.eps, &apply_hat_p(alg, x)?))
}

/// F_{±ε}: identity at (1,1) and ±ε^k at (k,0).
pub fn f_eps(space: &GradedSpace, eps: &Augmentation, sign: i8) -> OperationTable {
    let mut t = identity_table(space).renamed(if sign < 0 { "F_-eps" } else { "F_eps" });
    let s = super::structure::sign_q(sign);
    for (w, _, e) in eps.eps.entries() {
        t.add(w.clone(), 0, &e.scaled(&s));
    }
    t.with_completeness(eps.eps.completeness())
}

/// F̂_{±ε} applied to `x`.
pub fn apply_f_eps(space: &GradedSpace, eps: &Augmentation, sign: i8, x: &EElement) -> Result<EElement> {
    hat_phi(space, space, &f_eps(space, eps, sign), x)
}

/// Single-letter-cluster part: the projection of EV onto ⊕⊙^lV.
pub fn single_letter_part(x: &EElement) -> EElement {
    x.filter(|w| w.all_single_letters())
}

