//! Simply-laced root systems and symmetric-group combinatorics.
//!
//! Vertices of a rank-`n` diagram are indexed `0..n` internally and printed
//! `1..=n`. The canonical numbering is: type A is the path `1-2-...-n`; type D
//! is the path `1-...-(n-2)` with both `n-1` and `n` attached to `n-2`; type E
//! is the path `1-...-(n-1)` with `n` attached to vertex `3`.

use crate::{Error, Result};
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

/// The three simply-laced series.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    D,
    E,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Series::A => write!(f, "A"),
            Series::D => write!(f, "D"),
            Series::E => write!(f, "E"),
        }
    }
}

/// A Dynkin diagram of type A, D, or E with the canonical vertex numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinDiagram {
    pub series: Series,
    pub rank: usize,
    edges: Vec<(usize, usize)>,
}

impl DynkinDiagram {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::InvalidDiagram(format!("{series}{rank} is not an ADE type")));
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        match series {
            Series::A => edges.extend((0..rank.saturating_sub(1)).map(|i| (i, i + 1))),
            Series::D => {
                edges.extend((0..rank - 3).map(|i| (i, i + 1)));
                edges.push((rank - 3, rank - 2));
                edges.push((rank - 3, rank - 1));
            }
            Series::E => {
                edges.extend((0..rank - 2).map(|i| (i, i + 1)));
                edges.push((2, rank - 1));
            }
        }
        Ok(DynkinDiagram { series, rank, edges })
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.edges.iter().any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i))
    }

    /// Cartan matrix: 2 on the diagonal, -1 on adjacent pairs, 0 otherwise.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            c[i][i] = 2;
        }
        for &(a, b) in &self.edges {
            c[a][b] = -1;
            c[b][a] = -1;
        }
        c
    }

    /// Number of positive roots for the series.
    pub fn num_positive_roots(&self) -> usize {
        match (self.series, self.rank) {
            (Series::A, n) => n * (n + 1) / 2,
            (Series::D, n) => n * (n - 1),
            (Series::E, 6) => 36,
            (Series::E, 7) => 63,
            (Series::E, 8) => 120,
            _ => unreachable!(),
        }
    }
}

/// A root written in coordinates over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(i: usize, n: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Root(v)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Coefficient string such as "0110", used as a JSON key.
    pub fn coeff_string(&self) -> String {
        self.0.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            if c == 1 {
                write!(f, "a{}", i + 1)?;
            } else {
                write!(f, "{}a{}", c, i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A simply-laced root system with its positive roots enumerated.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub diagram: DynkinDiagram,
    pub positive_roots: Vec<Root>,
    cartan: Vec<Vec<i64>>,
}

/// Enumerate the positive roots by closure from the simples under all simple
/// reflections, keeping vectors with nonnegative coordinates.
pub fn build_root_system(diagram: DynkinDiagram) -> RootSystem {
    let n = diagram.rank;
    let cartan = diagram.cartan();
    let mut seen: BTreeSet<Root> = BTreeSet::new();
    let mut queue: VecDeque<Root> = VecDeque::new();
    for i in 0..n {
        let a = Root::simple(i, n);
        seen.insert(a.clone());
        queue.push_back(a);
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            let s = reflect_with(&cartan, i, &r);
            if s.is_positive() && seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    let mut positive_roots: Vec<Root> = seen.into_iter().collect();
    positive_roots.sort_by_key(|r| (r.height(), r.0.clone()));
    assert_eq!(
        positive_roots.len(),
        diagram.num_positive_roots(),
        "positive root count disagrees with the closed form for {}{}",
        diagram.series,
        diagram.rank
    );
    RootSystem { diagram, positive_roots, cartan }
}

fn reflect_with(cartan: &[Vec<i64>], i: usize, r: &Root) -> Root {
    let pairing: i64 = r.0.iter().zip(cartan.iter()).map(|(&c, row)| c * row[i]).sum();
    let mut v = r.0.clone();
    v[i] -= pairing;
    Root(v)
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.diagram.rank
    }

    /// Simple reflection `s_i` applied to `r`.
    pub fn reflect(&self, i: usize, r: &Root) -> Root {
        reflect_with(&self.cartan, i, r)
    }

    pub fn simple(&self, i: usize) -> Root {
        Root::simple(i, self.rank())
    }
}

/// Block sizes decomposing a symmetric group `S_total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Parts with zeroes dropped; empty blocks contribute nothing.
    pub fn effective(&self) -> Vec<usize> {
        self.parts.iter().copied().filter(|&p| p > 0).collect()
    }
}

/// A permutation of `{0, .., m-1}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation { one_line: (0..m).collect() }
    }

    pub fn from_one_line(one_line: Vec<usize>) -> Result<Self> {
        let m = one_line.len();
        let mut seen = vec![false; m];
        for &v in &one_line {
            if v >= m || seen[v] {
                return Err(Error::InvalidInput(format!("{one_line:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Permutation { one_line })
    }

    /// Parse a one-line string of digits such as "3412" (1-based values).
    pub fn parse(s: &str) -> Result<Self> {
        let digits: Option<Vec<usize>> = s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect();
        let digits = digits.ok_or_else(|| Error::InvalidInput(format!("bad permutation string {s:?}")))?;
        let shifted: Vec<usize> = digits
            .iter()
            .map(|&d| d.checked_sub(1).ok_or_else(|| Error::InvalidInput("permutation values are 1-based".into())))
            .collect::<Result<_>>()?;
        Self::from_one_line(shifted)
    }

    pub fn len(&self) -> usize {
        self.one_line.len()
    }

    pub fn is_empty(&self) -> bool {
        self.one_line.is_empty()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    pub fn apply(&self, x: usize) -> usize {
        self.one_line[x]
    }

    /// Composition `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { one_line: (0..self.len()).map(|x| self.apply(other.apply(x))).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (pos, &val) in self.one_line.iter().enumerate() {
            inv[val] = pos;
        }
        Permutation { one_line: inv }
    }

    pub fn num_inversions(&self) -> usize {
        let w = &self.one_line;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Left multiplication by the adjacent transposition `s_k` (swaps values k, k+1).
    pub fn mul_left_s(&self, k: usize) -> Permutation {
        let w = self.one_line.iter().map(|&v| if v == k { k + 1 } else if v == k + 1 { k } else { v }).collect();
        Permutation { one_line: w }
    }

    /// Right multiplication by `s_k` (swaps positions k, k+1).
    pub fn mul_right_s(&self, k: usize) -> Permutation {
        let mut w = self.one_line.clone();
        w.swap(k, k + 1);
        Permutation { one_line: w }
    }

    /// Longest element of `S_m`.
    pub fn longest(m: usize) -> Permutation {
        Permutation { one_line: (0..m).rev().collect() }
    }

    /// Longest element of the Young subgroup fixed by a composition: each
    /// block of positions is reversed.
    pub fn longest_in_young(comp: &Composition) -> Permutation {
        let m = comp.total();
        let mut w = vec![0; m];
        let mut start = 0;
        for &c in comp.parts() {
            for t in 0..c {
                w[start + t] = start + c - 1 - t;
            }
            start += c;
        }
        Permutation { one_line: w }
    }

    /// Whether the permutation is increasing within each block of positions.
    pub fn increasing_on_blocks(&self, comp: &Composition) -> bool {
        let mut start = 0;
        for &c in comp.parts() {
            for t in 1..c {
                if self.one_line[start + t - 1] > self.one_line[start + t] {
                    return false;
                }
            }
            start += c;
        }
        true
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.one_line {
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

/// All minimal-length representatives of `W / W_comp`: the permutations of
/// `S_total` increasing within each block of the composition.
pub fn min_coset_reps(comp: &Composition) -> Vec<Permutation> {
    let m = comp.total();
    let blocks = comp.effective();
    let mut out = Vec::new();
    let mut current = vec![0usize; m];
    let all: Vec<usize> = (0..m).collect();
    assign_blocks(&blocks, 0, 0, &all, &mut current, &mut out);
    out
}

fn assign_blocks(
    blocks: &[usize],
    bi: usize,
    start: usize,
    remaining: &[usize],
    current: &mut Vec<usize>,
    out: &mut Vec<Permutation>,
) {
    if bi == blocks.len() {
        out.push(Permutation { one_line: current.clone() });
        return;
    }
    let c = blocks[bi];
    for subset in remaining.iter().copied().combinations(c) {
        for (t, &v) in subset.iter().enumerate() {
            current[start + t] = v;
        }
        let rest: Vec<usize> = remaining.iter().copied().filter(|v| !subset.contains(v)).collect();
        assign_blocks(blocks, bi + 1, start + c, &rest, current, out);
    }
}

/// The element `w0 * w0^P` for the Young subgroup of a composition.
pub fn w0_w0p(comp: &Composition) -> Permutation {
    let m = comp.total();
    Permutation::longest(m).compose(&Permutation::longest_in_young(comp))
}

/// Lexicographically smallest reduced word (0-based adjacent-transposition
/// letters) for `w0 * w0^P`. Its length is `C(total,2) - sum_j C(parts_j,2)`.
pub fn reduced_word_w0wp(comp: &Composition) -> Vec<usize> {
    let mut w = w0_w0p(comp);
    let mut word = Vec::with_capacity(w.num_inversions());
    let mut pos = w.inverse();
    while !w.is_identity() {
        // smallest k with pos(k) > pos(k+1) is the smallest left descent
        let k = (0..w.len() - 1)
            .find(|&k| pos.apply(k) > pos.apply(k + 1))
            .expect("non-identity permutation has a descent");
        word.push(k);
        w = w.mul_left_s(k);
        pos = w.inverse();
    }
    word
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(k: usize) -> usize {
        (1..=k).product()
    }

    #[test]
    fn a1_has_one_positive_root() {
        let rs = build_root_system(DynkinDiagram::new(Series::A, 1).unwrap());
        assert_eq!(rs.positive_roots, vec![Root(vec![1])]);
    }

    #[test]
    fn d4_has_twelve_positive_roots() {
        let rs = build_root_system(DynkinDiagram::new(Series::D, 4).unwrap());
        assert_eq!(rs.positive_roots.len(), 12);
        // highest root of D4, row gamma_5 of the reference matrix
        assert!(rs.positive_roots.contains(&Root(vec![1, 2, 1, 1])));
    }

    /// Independent oracle: naive repeated full passes instead of a worklist.
    fn naive_closure(diagram: &DynkinDiagram) -> BTreeSet<Root> {
        let rs = build_root_system(diagram.clone());
        let mut set: BTreeSet<Root> = (0..diagram.rank).map(|i| Root::simple(i, diagram.rank)).collect();
        loop {
            let mut grew = false;
            for r in set.clone() {
                for i in 0..diagram.rank {
                    let s = rs.reflect(i, &r);
                    if s.is_positive() && set.insert(s) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return set;
            }
        }
    }

    #[test]
    fn a3_closure_agrees_with_naive_enumeration() {
        let diagram = DynkinDiagram::new(Series::A, 3).unwrap();
        let rs = build_root_system(diagram.clone());
        assert_eq!(rs.positive_roots.len(), 6);
        let naive = naive_closure(&diagram);
        let fast: BTreeSet<Root> = rs.positive_roots.iter().cloned().collect();
        assert_eq!(naive, fast);
    }

    #[test]
    fn root_counts_match_closed_form_up_to_rank_six() {
        let diagrams = [
            (Series::A, 1),
            (Series::A, 2),
            (Series::A, 3),
            (Series::A, 4),
            (Series::A, 5),
            (Series::A, 6),
            (Series::D, 4),
            (Series::D, 5),
            (Series::D, 6),
            (Series::E, 6),
        ];
        for (series, rank) in diagrams {
            let d = DynkinDiagram::new(series, rank).unwrap();
            let expected = d.num_positive_roots();
            let rs = build_root_system(d);
            assert_eq!(rs.positive_roots.len(), expected, "{series}{rank}");
        }
    }

    #[test]
    fn rejects_non_ade() {
        assert!(DynkinDiagram::new(Series::D, 3).is_err());
        assert!(DynkinDiagram::new(Series::E, 9).is_err());
        assert!(DynkinDiagram::new(Series::A, 0).is_err());
    }

    #[test]
    fn reflect_simple_to_negative() {
        let rs = build_root_system(DynkinDiagram::new(Series::A, 2).unwrap());
        assert_eq!(rs.reflect(0, &rs.simple(0)), Root(vec![-1, 0]));
        // A2: s_1(a_2) = a_1 + a_2
        assert_eq!(rs.reflect(0, &rs.simple(1)), Root(vec![1, 1]));
    }

    #[test]
    fn d4_central_reflection() {
        // vertex 2 (index 1) is the central node: s_2(a_1) = a_1 + a_2
        let rs = build_root_system(DynkinDiagram::new(Series::D, 4).unwrap());
        assert_eq!(rs.reflect(1, &rs.simple(0)), Root(vec![1, 1, 0, 0]));
    }

    #[test]
    fn reflect_is_involution_and_permutes_positives() {
        for (series, rank) in [(Series::A, 3), (Series::D, 4)] {
            let rs = build_root_system(DynkinDiagram::new(series, rank).unwrap());
            for i in 0..rank {
                let mut images = BTreeSet::new();
                for r in &rs.positive_roots {
                    let s = rs.reflect(i, r);
                    assert_eq!(rs.reflect(i, &s), *r, "involution");
                    if *r != rs.simple(i) {
                        assert!(s.is_positive());
                        images.insert(s);
                    }
                }
                assert_eq!(images.len(), rs.positive_roots.len() - 1);
            }
        }
    }

    #[test]
    fn coset_reps_single_block_is_identity() {
        let reps = min_coset_reps(&Composition::new(vec![4]));
        assert_eq!(reps, vec![Permutation::identity(4)]);
    }

    #[test]
    fn coset_reps_all_singletons_is_full_group() {
        let reps = min_coset_reps(&Composition::new(vec![1, 1, 1]));
        assert_eq!(reps.len(), 6);
    }

    #[test]
    fn coset_reps_two_one_matches_filter() {
        // independent oracle: filter all of S_3 by the within-block condition
        let comp = Composition::new(vec![2, 1]);
        let mut expected: Vec<Permutation> = Vec::new();
        for perm in (0..3).permutations(3) {
            let p = Permutation::from_one_line(perm).unwrap();
            if p.increasing_on_blocks(&comp) {
                expected.push(p);
            }
        }
        expected.sort();
        let mut got = min_coset_reps(&comp);
        got.sort();
        assert_eq!(got, expected);
        assert_eq!(got.len(), 3);
    }

    #[test]
    fn coset_counts_multiply_to_group_order() {
        for parts in [vec![2, 1], vec![1, 3], vec![2, 2], vec![0, 2, 1], vec![1, 1, 2]] {
            let comp = Composition::new(parts);
            let reps = min_coset_reps(&comp);
            let prod: usize = comp.parts().iter().map(|&c| factorial(c)).product();
            assert_eq!(reps.len() * prod, factorial(comp.total()));
        }
    }

    #[test]
    fn word_empty_for_single_block() {
        assert!(reduced_word_w0wp(&Composition::new(vec![5])).is_empty());
    }

    #[test]
    fn word_two_one_has_length_two() {
        let word = reduced_word_w0wp(&Composition::new(vec![2, 1]));
        assert_eq!(word.len(), 2);
        assert_eq!(word, vec![0, 1]);
    }

    #[test]
    fn word_for_zero_one_one_in_s2() {
        let word = reduced_word_w0wp(&Composition::new(vec![0, 1, 1]));
        assert_eq!(word, vec![0]);
    }

    #[test]
    fn word_replays_to_w0_w0p_and_is_reduced() {
        for parts in [vec![2, 1], vec![1, 2], vec![2, 2], vec![1, 1, 1], vec![3, 1], vec![0, 2, 1]] {
            let comp = Composition::new(parts);
            let word = reduced_word_w0wp(&comp);
            let m = comp.total();
            let mut w = Permutation::identity(m);
            for &k in &word {
                w = w.compose(&Permutation::identity(m).mul_left_s(k));
            }
            let target = w0_w0p(&comp);
            assert_eq!(w, target);
            assert_eq!(word.len(), target.num_inversions(), "reduced");
            let c2 = |k: usize| k * k.saturating_sub(1) / 2;
            let expected_len = c2(m) - comp.parts().iter().map(|&c| c2(c)).sum::<usize>();
            assert_eq!(word.len(), expected_len);
        }
    }
}
