//! The gluing engine shared by every assembled map.
//!
//! A gluing picks disjoint blocks of letters of an input eword, feeds each
//! block to one operator, and merges every connected set of clusters and
//! operators into a single output cluster; untouched clusters pass through.
//! Signs come from one letter permutation (blocks first inside each
//! component, then the leftover letters) plus the Koszul passage of each
//! operator over the letters in front of it.

use crate::algebra::{normalize_eword, normalize_word, permutation_sign, EElement, EWord, GradedSpace, Parity, Word, Q};
use crate::error::Result;

use super::table::OperationTable;

/// Flattened view of an eword.
pub(crate) struct Layout {
    pub letters: Vec<u32>,
    pub parities: Vec<Parity>,
    pub cluster_of: Vec<usize>,
    /// Letter positions of each cluster.
    pub ranges: Vec<std::ops::Range<usize>>,
}

impl Layout {
    pub fn new(space: &GradedSpace, x: &EWord) -> Layout {
        let mut letters = Vec::new();
        let mut cluster_of = Vec::new();
        let mut ranges = Vec::new();
        for (i, c) in x.clusters().iter().enumerate() {
            let start = letters.len();
            letters.extend_from_slice(c.letters());
            cluster_of.extend(std::iter::repeat_n(i, c.len()));
            ranges.push(start..letters.len());
        }
        let parities = letters.iter().map(|&l| space.parity(l)).collect();
        Layout {
            letters,
            parities,
            cluster_of,
            ranges,
        }
    }

    pub fn num_clusters(&self) -> usize {
        self.ranges.len()
    }
}

/// One operator application inside a gluing.
pub(crate) struct Block {
    /// Ascending letter positions.
    pub positions: Vec<usize>,
    pub parity: Parity,
    /// Output words with coefficient and extra ℏ power; the sign of
    /// normalizing the input is already folded in.
    pub outputs: Vec<(Word, Q, u32)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Input word of a block with the sign of sorting it; `None` if it vanishes.
pub(crate) fn block_input(space: &GradedSpace, layout: &Layout, positions: &[usize]) -> Option<(Word, i8)> {
    let letters: Vec<u32> = positions.iter().map(|&p| layout.letters[p]).collect();
    normalize_word(space, &letters)
}

/// Outputs of `table` at `input` as block outputs.
pub(crate) fn table_outputs(
    table: &OperationTable,
    input: &Word,
    sign: i8,
    hbar_of: impl Fn(u32) -> Option<u32>,
) -> Result<Vec<(Word, Q, u32)>> {
    let Some(cell) = table.lookup(input)? else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for (g, e) in cell {
        let Some(h) = hbar_of(*g) else { continue };
        for (w, c) in e {
            let c = if sign < 0 { -c.clone() } else { c.clone() };
            out.push((w.clone(), c, h));
        }
    }
    Ok(out)
}

/// Adds the contribution of one gluing of `blocks` into `x` to `out`.
/// Unselected letters are copied verbatim, so they must live in `target`
/// too (always the case when source and target agree).
pub(crate) fn evaluate(
    target: &GradedSpace,
    x: &EWord,
    layout: &Layout,
    blocks: &[Block],
    coeff: &Q,
    hbar_cap: Option<u32>,
    out: &mut EElement,
) {
    if blocks.iter().any(|b| b.outputs.is_empty()) {
        return;
    }
    let n = layout.num_clusters();
    let mut uf = UnionFind::new(n + blocks.len());
    let mut selected = vec![false; layout.letters.len()];
    for (j, b) in blocks.iter().enumerate() {
        for &p in &b.positions {
            uf.union(n + j, layout.cluster_of[p]);
            selected[p] = true;
        }
    }
    // components in order of their first cluster
    let mut group_of_root = vec![usize::MAX; n + blocks.len()];
    let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for c in 0..n {
        let r = uf.find(c);
        if group_of_root[r] == usize::MAX {
            group_of_root[r] = groups.len();
            groups.push((Vec::new(), Vec::new()));
        }
        groups[group_of_root[r]].0.push(c);
    }
    for j in 0..blocks.len() {
        let r = uf.find(n + j);
        groups[group_of_root[r]].1.push(j);
    }

    let mut order = Vec::with_capacity(layout.letters.len());
    let mut sign: i8 = 1;
    let mut prefix = Parity::Even;
    for (clusters, bl) in &groups {
        for &j in bl {
            if blocks[j].parity.is_odd() && prefix.is_odd() {
                sign = -sign;
            }
            for &p in &blocks[j].positions {
                order.push(p);
                prefix = prefix + layout.parities[p];
            }
        }
        for &c in clusters {
            for p in layout.ranges[c].clone() {
                if !selected[p] {
                    order.push(p);
                    prefix = prefix + layout.parities[p];
                }
            }
        }
    }
    sign *= permutation_sign(&layout.parities, &order);

    // cartesian product over block outputs
    let mut pick = vec![0usize; blocks.len()];
    loop {
        let mut c = if sign < 0 { -coeff.clone() } else { coeff.clone() };
        let mut hbar = x.hbar();
        for (j, b) in blocks.iter().enumerate() {
            let (_, bc, bh) = &b.outputs[pick[j]];
            c *= bc;
            hbar += bh;
        }
        if hbar_cap.is_none_or(|cap| hbar <= cap) {
            let mut clusters = Vec::with_capacity(groups.len());
            let mut s: i8 = 1;
            let mut zero = false;
            for (cl, bl) in &groups {
                let mut letters: Vec<u32> = Vec::new();
                for &j in bl {
                    letters.extend_from_slice(blocks[j].outputs[pick[j]].0.letters());
                }
                for &cc in cl {
                    for p in layout.ranges[cc].clone() {
                        if !selected[p] {
                            letters.push(layout.letters[p]);
                        }
                    }
                }
                match normalize_word(target, &letters) {
                    Some((w, ws)) => {
                        s *= ws;
                        clusters.push(w);
                    }
                    None => {
                        zero = true;
                        break;
                    }
                }
            }
            if !zero {
                if let Some((ew, es)) = normalize_eword(target, clusters, hbar) {
                    out.add_signed(ew, &c, s * es);
                }
            }
        }
        // advance
        let mut j = 0;
        loop {
            if j == blocks.len() {
                return;
            }
            pick[j] += 1;
            if pick[j] < blocks[j].outputs.len() {
                break;
            }
            pick[j] = 0;
            j += 1;
        }
    }
}

/// Single-level acyclic gluing of a labelled family of operators, every
/// operator used exactly once and taking at most one letter per cluster.
/// With one operator this is p̂ (or p̂_•); with several it is the
/// multi-point assembly.
pub(crate) fn glue_level(space: &GradedSpace, ops: &[&OperationTable], x: &EWord, coeff: &Q, out: &mut EElement) -> Result<()> {
    let layout = Layout::new(space, x);
    let n = layout.num_clusters();
    let mut used = vec![false; layout.letters.len()];
    let mut chosen: Vec<Vec<usize>> = Vec::with_capacity(ops.len());
    let mut uf = UnionFind::new(n + ops.len());
    let mut ctx = LevelCtx {
        space,
        ops,
        x,
        layout: &layout,
        coeff,
        out,
    };
    ctx.recurse(0, &mut used, &mut chosen, &mut uf)
}

struct LevelCtx<'a> {
    space: &'a GradedSpace,
    ops: &'a [&'a OperationTable],
    x: &'a EWord,
    layout: &'a Layout,
    coeff: &'a Q,
    out: &'a mut EElement,
}

impl LevelCtx<'_> {
    fn recurse(
        &mut self,
        j: usize,
        used: &mut Vec<bool>,
        chosen: &mut Vec<Vec<usize>>,
        uf: &mut UnionFind,
    ) -> Result<()> {
        if j == self.ops.len() {
            let mut blocks = Vec::with_capacity(chosen.len());
            for (op, pos) in self.ops.iter().zip(chosen.iter()) {
                let Some((input, s)) = block_input(self.space, self.layout, pos) else {
                    return Ok(());
                };
                let outputs = table_outputs(op, &input, s, |g| (g == 0).then_some(0))?;
                if outputs.is_empty() {
                    return Ok(());
                }
                blocks.push(Block {
                    positions: pos.clone(),
                    parity: op.parity(),
                    outputs,
                });
            }
            evaluate(self.space, self.x, self.layout, &blocks, self.coeff, None, self.out);
            return Ok(());
        }
        let op = self.ops[j];
        let arities = op.arities();
        let n = self.layout.num_clusters();
        let nonunit: Vec<usize> = (0..n).filter(|&c| !self.layout.ranges[c].is_empty()).collect();
        let max_k = match op.completeness() {
            super::table::Completeness::Total => arities.iter().copied().max().unwrap_or(0),
            super::table::Completeness::UpToArity(_) => nonunit.len(),
        };
        // subsets of non-unit clusters, one letter each
        let m = nonunit.len();
        for mask in 1u64..(1u64 << m) {
            let k = mask.count_ones() as usize;
            if k > max_k {
                continue;
            }
            if op.completeness() == super::table::Completeness::Total && !arities.contains(&k) {
                continue;
            }
            op.require_arity(k)?;
            let set: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| nonunit[i]).collect();
            // acyclicity against earlier operators
            let roots: Vec<usize> = set.iter().map(|&c| uf.find(c)).collect();
            let mut distinct = roots.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() != roots.len() {
                continue;
            }
            let mut pick = Vec::with_capacity(k);
            self.pick_letters(j, &set, 0, &mut pick, used, chosen, uf)?;
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn pick_letters(
        &mut self,
        j: usize,
        set: &[usize],
        i: usize,
        pick: &mut Vec<usize>,
        used: &mut Vec<bool>,
        chosen: &mut Vec<Vec<usize>>,
        uf: &mut UnionFind,
    ) -> Result<()> {
        if i == set.len() {
            let n = self.layout.num_clusters();
            let saved = uf.0.clone();
            for &c in set {
                uf.union(n + j, c);
            }
            chosen.push(pick.clone());
            let r = self.recurse(j + 1, used, chosen, uf);
            chosen.pop();
            uf.0 = saved;
            return r;
        }
        for p in self.layout.ranges[set[i]].clone() {
            if used[p] {
                continue;
            }
            used[p] = true;
            pick.push(p);
            let r = self.pick_letters(j, set, i + 1, pick, used, chosen, uf);
            pick.pop();
            used[p] = false;
            r?;
        }
        Ok(())
    }
}

/// Cycle-permitting gluing of one operator with genus labels: selecting
/// j_i letters from each of r clusters adds g + Σj_i − r to the ℏ power.
pub(crate) fn glue_ibl(space: &GradedSpace, op: &OperationTable, x: &EWord, coeff: &Q, cap: Option<u32>, out: &mut EElement) -> Result<()> {
    let layout = Layout::new(space, x);
    let total = layout.letters.len();
    let arities = op.arities();
    for mask in 1u64..(1u64 << total) {
        let k = mask.count_ones() as usize;
        if op.completeness() == super::table::Completeness::Total && !arities.contains(&k) {
            continue;
        }
        op.require_arity(k)?;
        let positions: Vec<usize> = (0..total).filter(|i| mask >> i & 1 == 1).collect();
        let mut touched: Vec<usize> = positions.iter().map(|&p| layout.cluster_of[p]).collect();
        touched.dedup();
        let cycles = (k - touched.len()) as u32;
        let Some((input, s)) = block_input(space, &layout, &positions) else {
            continue;
        };
        let outputs = table_outputs(op, &input, s, |g| Some(g + cycles))?;
        if outputs.is_empty() {
            continue;
        }
        let block = Block {
            positions,
            parity: op.parity(),
            outputs,
        };
        evaluate(space, x, &layout, std::slice::from_ref(&block), coeff, cap, out);
    }
    Ok(())
}

/// Morphism-type assembly: every letter of `x` lies in exactly one block,
/// each block takes at most one letter per cluster, and the cluster–block
/// graph is a forest whose components become the output clusters. Unit
/// clusters map to unit clusters. With `marked` set, exactly one block is
/// evaluated by the marked table instead of `phi`.
pub(crate) fn glue_morphism(
    source: &GradedSpace,
    target: &GradedSpace,
    phi: &OperationTable,
    marked: Option<&OperationTable>,
    x: &EWord,
    coeff: &Q,
    out: &mut EElement,
) -> Result<()> {
    let layout = Layout::new(source, x);
    let total = layout.letters.len();
    if total == 0 {
        if marked.is_none() {
            out.add_term(x.clone(), coeff.clone());
        }
        return Ok(());
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut ctx = MorphCtx {
        source,
        target,
        phi,
        marked,
        x,
        layout: &layout,
        coeff,
        out,
    };
    ctx.partition(0, &mut blocks)
}

struct MorphCtx<'a> {
    source: &'a GradedSpace,
    target: &'a GradedSpace,
    phi: &'a OperationTable,
    marked: Option<&'a OperationTable>,
    x: &'a EWord,
    layout: &'a Layout,
    coeff: &'a Q,
    out: &'a mut EElement,
}

impl MorphCtx<'_> {
    fn partition(&mut self, p: usize, blocks: &mut Vec<Vec<usize>>) -> Result<()> {
        if p == self.layout.letters.len() {
            return self.finish(blocks);
        }
        let c = self.layout.cluster_of[p];
        for b in 0..blocks.len() {
            if blocks[b].iter().any(|&q| self.layout.cluster_of[q] == c) {
                continue;
            }
            blocks[b].push(p);
            let r = self.partition(p + 1, blocks);
            blocks[b].pop();
            r?;
        }
        blocks.push(vec![p]);
        let r = self.partition(p + 1, blocks);
        blocks.pop();
        r
    }

    fn finish(&mut self, blocks: &[Vec<usize>]) -> Result<()> {
        let n = self.layout.num_clusters();
        let mut uf = UnionFind::new(n + blocks.len());
        for (j, b) in blocks.iter().enumerate() {
            for &p in b {
                if !uf.union(n + j, self.layout.cluster_of[p]) {
                    return Ok(());
                }
            }
        }
        // unit clusters carry no letters, so they always stay alone
        let mut inputs = Vec::with_capacity(blocks.len());
        for b in blocks {
            let Some(inp) = block_input(self.source, self.layout, b) else {
                return Ok(());
            };
            inputs.push(inp);
        }
        let plain: Vec<Vec<(Word, Q, u32)>> = inputs
            .iter()
            .map(|(w, s)| table_outputs(self.phi, w, *s, |g| (g == 0).then_some(0)))
            .collect::<Result<_>>()?;
        match self.marked {
            None => {
                if plain.iter().any(Vec::is_empty) {
                    return Ok(());
                }
                let bl: Vec<Block> = blocks
                    .iter()
                    .zip(plain)
                    .map(|(b, outputs)| Block {
                        positions: b.clone(),
                        parity: self.phi.parity(),
                        outputs,
                    })
                    .collect();
                evaluate(self.target, self.x, self.layout, &bl, self.coeff, None, self.out);
            }
            Some(mk) => {
                for m in 0..blocks.len() {
                    if plain.iter().enumerate().any(|(j, o)| j != m && o.is_empty()) {
                        continue;
                    }
                    let (w, s) = &inputs[m];
                    let mo = table_outputs(mk, w, *s, |g| (g == 0).then_some(0))?;
                    if mo.is_empty() {
                        continue;
                    }
                    let bl: Vec<Block> = blocks
                        .iter()
                        .enumerate()
                        .map(|(j, b)| Block {
                            positions: b.clone(),
                            parity: if j == m { mk.parity() } else { self.phi.parity() },
                            outputs: if j == m { mo.clone() } else { plain[j].clone() },
                        })
                        .collect();
                    evaluate(self.target, self.x, self.layout, &bl, self.coeff, None, self.out);
                }
            }
        }
        Ok(())
    }
}
