//! Finite presentations and their evaluation in permutation groups.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::group::{small_generating_set, FiniteGroup};
use crate::perm::Perm;

/// A letter: generator index and exponent `±1`.
pub type Letter = (usize, i8);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
}

impl Presentation {
    /// One generator line followed by one relator per line; `1` is the empty word.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "generators {}", self.generators.join(" ")).unwrap();
        for r in &self.relators {
            out.push_str(&self.word_to_string(r));
            out.push('\n');
        }
        out
    }

    pub fn word_to_string(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter()
            .map(|&(g, e)| if e < 0 { format!("{}^-1", self.generators[g]) } else { self.generators[g].clone() })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Evaluates a word under an assignment of permutations to generators.
    pub fn evaluate(word: &[Letter], assignment: &[Perm]) -> Perm {
        let degree = assignment.first().map_or(1, Perm::degree);
        word.iter().fold(Perm::identity(degree), |acc, &(g, e)| {
            if e < 0 {
                acc.compose(&assignment[g].inverse())
            } else {
                acc.compose(&assignment[g])
            }
        })
    }

    /// Indices of relators that do not evaluate to the identity.
    pub fn failing_relators(&self, assignment: &[Perm]) -> Vec<usize> {
        self.relators
            .iter()
            .enumerate()
            .filter(|(_, r)| !Self::evaluate(r, assignment).is_identity())
            .map(|(k, _)| k)
            .collect()
    }
}

/// A presentation of a finite group read off its Cayley graph.
#[derive(Clone, Debug)]
pub struct CayleyPresentation {
    /// Element indices of the generators, in generator order.
    pub generators: Vec<u32>,
    /// Non-tree edges `word(x)·g·word(x·g)⁻¹`, letters indexing `generators`.
    pub relators: Vec<Vec<Letter>>,
    /// A word for every element, from a BFS spanning tree rooted at the identity.
    pub words: Vec<Vec<Letter>>,
}

/// Generators are a small generating set of `g`.
pub fn cayley_presentation(g: &FiniteGroup) -> CayleyPresentation {
    let gens = small_generating_set(g, &g.all());
    let n = g.order();
    let mut words: Vec<Option<Vec<Letter>>> = vec![None; n];
    let mut tree_edge = vec![vec![false; gens.len()]; n];
    words[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        for (k, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if words[y as usize].is_none() {
                let mut w = words[x as usize].clone().unwrap();
                w.push((k, 1));
                words[y as usize] = Some(w);
                tree_edge[x as usize][k] = true;
                queue.push_back(y);
            }
        }
    }
    let words: Vec<Vec<Letter>> = words.into_iter().map(|w| w.expect("generators generate")).collect();
    let mut relators = Vec::new();
    for x in 0..n {
        for (k, &s) in gens.iter().enumerate() {
            if tree_edge[x][k] {
                continue;
            }
            let y = g.mul(x as u32, s) as usize;
            let mut r = words[x].clone();
            r.push((k, 1));
            r.extend(invert(&words[y]));
            relators.push(r);
        }
    }
    CayleyPresentation { generators: gens, relators, words }
}

pub fn invert(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// Shifts generator indices by `offset`.
pub fn shift(word: &[Letter], offset: usize) -> Vec<Letter> {
    word.iter().map(|&(g, e)| (g + offset, e)).collect()
}
