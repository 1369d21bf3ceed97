use num_traits::Zero;

use super::space::GradedSpace;
use super::word::{EWord, Word};
use super::Q;
use crate::error::Result;

/// Finite window into SV or EV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    /// Bound on the total letter count.
    pub max_letters: usize,
    /// Bound on the total action, when generators carry actions.
    pub max_action: Option<Q>,
    /// Bound on the number of ⊙-clusters.
    pub max_clusters: usize,
    /// Exclude unit clusters.
    pub nonunit: bool,
    /// Bound on the letters of any single cluster.
    pub max_cluster_len: Option<usize>,
}

impl Window {
    pub fn new(max_letters: usize, max_clusters: usize) -> Window {
        Window {
            max_letters,
            max_action: None,
            max_clusters,
            nonunit: false,
            max_cluster_len: None,
        }
    }

    pub fn with_action(mut self, a: Option<Q>) -> Window {
        self.max_action = a;
        self
    }

    pub fn nonunit(mut self) -> Window {
        self.nonunit = true;
        self
    }

    pub fn cluster_len(mut self, m: usize) -> Window {
        self.max_cluster_len = Some(m);
        self
    }
}

pub fn word_action(space: &GradedSpace, w: &Word) -> Result<Q> {
    let mut a = Q::zero();
    for &l in w.letters() {
        a += space.action(l)?;
    }
    Ok(a)
}

pub fn eword_action(space: &GradedSpace, w: &EWord) -> Result<Q> {
    let mut a = Q::zero();
    for c in w.clusters() {
        a += word_action(space, c)?;
    }
    Ok(a)
}

/// All normalized words with at most `max_letters` letters (and action at
/// most `max_action`), ordered by length then lexicographically.
pub fn enumerate_words(space: &GradedSpace, max_letters: usize, max_action: Option<&Q>) -> Result<Vec<Word>> {
    if max_action.is_some() {
        for i in 0..space.len() as u32 {
            space.action(i)?;
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    extend_words(space, 0, max_letters, max_action, &Q::zero(), &mut cur, &mut out);
    out.sort();
    Ok(out)
}

fn extend_words(
    space: &GradedSpace,
    start: u32,
    room: usize,
    max_action: Option<&Q>,
    action: &Q,
    cur: &mut Vec<u32>,
    out: &mut Vec<Word>,
) {
    out.push(Word::from_sorted(cur.clone()));
    if room == 0 {
        return;
    }
    for g in start..space.len() as u32 {
        if space.parity(g).is_odd() && cur.last() == Some(&g) {
            continue;
        }
        let next = match max_action {
            Some(bound) => {
                let a = action + space.action(g).expect("checked above");
                if &a > bound {
                    continue;
                }
                a
            }
            None => action.clone(),
        };
        cur.push(g);
        extend_words(space, g, room - 1, max_action, &next, cur, out);
        cur.pop();
    }
}

/// Normalized words with exactly `k` letters.
pub fn words_of_length(space: &GradedSpace, k: usize) -> Vec<Word> {
    enumerate_words(space, k, None)
        .expect("no action bound")
        .into_iter()
        .filter(|w| w.len() == k)
        .collect()
}

/// All normalized ewords inside `window`, in canonical order.
pub fn enumerate_ewords(space: &GradedSpace, window: &Window) -> Result<Vec<EWord>> {
    let words: Vec<Word> = enumerate_words(space, window.max_letters, window.max_action.as_ref())?
        .into_iter()
        .filter(|w| !(window.nonunit && w.is_unit()))
        .filter(|w| window.max_cluster_len.is_none_or(|m| w.len() <= m))
        .collect();
    let actions: Vec<Q> = match &window.max_action {
        Some(_) => words
            .iter()
            .map(|w| word_action(space, w))
            .collect::<Result<_>>()?,
        None => vec![Q::zero(); words.len()],
    };
    let odd: Vec<bool> = words.iter().map(|w| w.parity(space).is_odd()).collect();
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut state = EnumState {
        words: &words,
        actions: &actions,
        odd: &odd,
        window,
        out: &mut out,
    };
    state.extend(0, 0, &Q::zero(), &mut cur);
    out.sort();
    Ok(out)
}

struct EnumState<'a> {
    words: &'a [Word],
    actions: &'a [Q],
    odd: &'a [bool],
    window: &'a Window,
    out: &'a mut Vec<EWord>,
}

impl EnumState<'_> {
    fn extend(&mut self, start: usize, letters: usize, action: &Q, cur: &mut Vec<usize>) {
        if !cur.is_empty() {
            let clusters = cur.iter().map(|&i| self.words[i].clone()).collect();
            self.out.push(EWord::from_sorted(clusters, 0));
        }
        if cur.len() == self.window.max_clusters {
            return;
        }
        for i in start..self.words.len() {
            if self.odd[i] && cur.last() == Some(&i) {
                continue;
            }
            let l = letters + self.words[i].len();
            if l > self.window.max_letters {
                continue;
            }
            let a = action + &self.actions[i];
            if let Some(bound) = &self.window.max_action {
                if &a > bound {
                    continue;
                }
            }
            cur.push(i);
            self.extend(i, l, &a, cur);
            cur.pop();
        }
    }
}

/// Words or ewords, depending on whether an outer bound was requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Basis {
    Words(Vec<Word>),
    EWords(Vec<EWord>),
}

impl Basis {
    pub fn len(&self) -> usize {
        match self {
            Basis::Words(w) => w.len(),
            Basis::EWords(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn enumerate_basis(
    space: &GradedSpace,
    max_letters: usize,
    max_action: Option<&Q>,
    outer_components: Option<usize>,
) -> Result<Basis> {
    match outer_components {
        None => Ok(Basis::Words(enumerate_words(space, max_letters, max_action)?)),
        Some(k) => {
            let w = Window::new(max_letters, k).with_action(max_action.cloned());
            Ok(Basis::EWords(enumerate_ewords(space, &w)?))
        }
    }
}
