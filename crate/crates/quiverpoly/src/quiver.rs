//! Dynkin quivers: validation, adapted reduced words, the induced total order
//! on positive roots, and the combinatorial Auslander-Reiten quiver.

use crate::rootsys::{build_root_system, DynkinDiagram, Root, RootSystem, Series};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// A quiver as given by the user: arbitrary integer vertex labels.
#[derive(Debug, Clone)]
pub struct RawQuiver {
    pub vertices: Vec<i64>,
    pub arrows: Vec<(i64, i64)>,
}

/// A validated Dynkin quiver over the canonical vertex numbering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub diagram: DynkinDiagram,
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// Build a quiver directly from canonical-numbered arrows.
    pub fn new(series: Series, rank: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let diagram = DynkinDiagram::new(series, rank)?;
        for &(t, h) in &arrows {
            if !diagram.adjacent(t, h) {
                return Err(Error::NotDynkin(format!(
                    "arrow {}->{} is not an edge of {}{}",
                    t + 1,
                    h + 1,
                    series,
                    rank
                )));
            }
        }
        if arrows.len() != diagram.edges().len() {
            return Err(Error::NotDynkin("arrow set does not orient every edge".into()));
        }
        let mut seen: Vec<(usize, usize)> = arrows.iter().map(|&(t, h)| (t.min(h), t.max(h))).collect();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != arrows.len() {
            return Err(Error::NotDynkin("repeated edge".into()));
        }
        let mut arrows = arrows;
        arrows.sort_unstable();
        Ok(Quiver { diagram, arrows })
    }

    /// Equioriented type A path `1 -> 2 -> ... -> n`.
    pub fn linear_a(rank: usize) -> Quiver {
        let arrows = (0..rank.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Quiver::new(Series::A, rank, arrows).expect("path orientation is valid")
    }

    pub fn rank(&self) -> usize {
        self.diagram.rank
    }

    /// Vertices that are the tail of no arrow.
    pub fn sinks_of(arrows: &[(usize, usize)], n: usize) -> Vec<usize> {
        (0..n).filter(|&v| !arrows.iter().any(|&(t, _)| t == v)).collect()
    }

    /// Reverse all arrows with head `i` (the reflection `s_i Q` at a sink).
    pub fn reflect_arrows(arrows: &[(usize, usize)], i: usize) -> Vec<(usize, usize)> {
        arrows.iter().map(|&(t, h)| if h == i { (h, t) } else { (t, h) }).collect()
    }
}

/// Validate an arbitrary directed graph as a Dynkin quiver. Returns the
/// canonical quiver together with the relabeling original label -> canonical
/// index (0-based).
pub fn validate_dynkin(raw: &RawQuiver) -> Result<(Quiver, BTreeMap<i64, usize>)> {
    let n = raw.vertices.len();
    if n == 0 {
        return Err(Error::NotDynkin("empty vertex set".into()));
    }
    let mut labels: Vec<i64> = raw.vertices.clone();
    labels.sort_unstable();
    labels.dedup();
    if labels.len() != n {
        return Err(Error::NotDynkin("repeated vertex label".into()));
    }
    let index_of = |label: i64| -> Result<usize> {
        labels.binary_search(&label).map_err(|_| Error::NotDynkin(format!("arrow uses unknown vertex {label}")))
    };
    let mut arrows = Vec::with_capacity(raw.arrows.len());
    for &(t, h) in &raw.arrows {
        if t == h {
            return Err(Error::NotDynkin(format!("loop edge at vertex {t}")));
        }
        arrows.push((index_of(t)?, index_of(h)?));
    }
    let mut undirected: Vec<(usize, usize)> = arrows.iter().map(|&(t, h)| (t.min(h), t.max(h))).collect();
    undirected.sort_unstable();
    let before = undirected.len();
    undirected.dedup();
    if undirected.len() != before {
        return Err(Error::NotDynkin("repeated edge".into()));
    }
    if undirected.len() + 1 != n {
        return Err(Error::NotDynkin("underlying graph is not a tree".into()));
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &undirected {
        adj[a].push(b);
        adj[b].push(a);
    }
    // connectivity
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::NotDynkin("underlying graph is not connected".into()));
    }

    let canon = canonical_numbering(&adj, &labels)?;
    let series_rank = classify(&adj)?;
    let diagram = DynkinDiagram::new(series_rank.0, series_rank.1)?;
    let relabeled: Vec<(usize, usize)> = arrows.iter().map(|&(t, h)| (canon[t], canon[h])).collect();
    let quiver = Quiver::new(diagram.series, diagram.rank, relabeled)?;
    let mapping = labels.iter().enumerate().map(|(i, &l)| (l, canon[i])).collect();
    Ok((quiver, mapping))
}

fn classify(adj: &[Vec<usize>]) -> Result<(Series, usize)> {
    let n = adj.len();
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    match branch.len() {
        0 => Ok((Series::A, n)),
        1 => {
            let b = branch[0];
            if adj[b].len() != 3 {
                return Err(Error::NotDynkin("vertex of degree > 3".into()));
            }
            let mut arms: Vec<usize> = arm_paths(adj, b).iter().map(|p| p.len()).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, k] => Ok((Series::D, k + 3)),
                [1, 2, 2] => Ok((Series::E, 6)),
                [1, 2, 3] => Ok((Series::E, 7)),
                [1, 2, 4] => Ok((Series::E, 8)),
                _ => Err(Error::NotDynkin("branch arms do not match any ADE diagram".into())),
            }
        }
        _ => Err(Error::NotDynkin("more than one branch vertex".into())),
    }
}

/// The three paths leading away from the branch vertex, excluding it.
fn arm_paths(adj: &[Vec<usize>], branch: usize) -> Vec<Vec<usize>> {
    adj[branch]
        .iter()
        .map(|&start| {
            let mut path = vec![start];
            let mut prev = branch;
            let mut cur = start;
            while let Some(&next) = adj[cur].iter().find(|&&u| u != prev) {
                prev = cur;
                cur = next;
                path.push(cur);
            }
            path
        })
        .collect()
}

/// Map each old index to its canonical position. Ties between symmetric arms
/// are broken by the smallest original label at the far end.
fn canonical_numbering(adj: &[Vec<usize>], labels: &[i64]) -> Result<Vec<usize>> {
    let n = adj.len();
    let (series, rank) = classify(adj)?;
    let mut canon = vec![usize::MAX; n];
    match series {
        Series::A => {
            if n == 1 {
                canon[0] = 0;
            } else {
                let mut ends: Vec<usize> = (0..n).filter(|&v| adj[v].len() == 1).collect();
                ends.sort_by_key(|&v| labels[v]);
                let start = ends[0];
                let mut prev = usize::MAX;
                let mut cur = start;
                for pos in 0..n {
                    canon[cur] = pos;
                    if let Some(&next) = adj[cur].iter().find(|&&u| u != prev) {
                        prev = cur;
                        cur = next;
                    }
                }
            }
        }
        Series::D => {
            let b = (0..n).find(|&v| adj[v].len() == 3).unwrap();
            let mut arms = arm_paths(adj, b);
            arms.sort_by_key(|p| (std::cmp::Reverse(p.len()), labels[*p.last().unwrap()]));
            // arms[0] is the long tail (ties by far-end label), arms[1..] the forks
            let tail = &arms[0];
            for (t, &v) in tail.iter().rev().enumerate() {
                canon[v] = t;
            }
            canon[b] = rank - 3;
            let mut forks = [arms[1][0], arms[2][0]];
            forks.sort_by_key(|&v| labels[v]);
            canon[forks[0]] = rank - 2;
            canon[forks[1]] = rank - 1;
        }
        Series::E => {
            let b = (0..n).find(|&v| adj[v].len() == 3).unwrap();
            let mut arms = arm_paths(adj, b);
            arms.sort_by_key(|p| (p.len(), labels[*p.last().unwrap()]));
            // arms: [length-1 top], [length-2 short side], [long side]
            canon[arms[0][0]] = rank - 1;
            canon[arms[1][1]] = 0;
            canon[arms[1][0]] = 1;
            canon[b] = 2;
            for (t, &v) in arms[2].iter().enumerate() {
                canon[v] = 3 + t;
            }
        }
    }
    Ok(canon)
}

/// A reduced word for the longest element, adapted to an orientation: each
/// letter is a sink of the successively reflected quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedWord {
    pub letters: Vec<usize>,
}

/// Find an adapted reduced word by depth-first search over sink choices,
/// smallest vertex first, pruning non-reduced prefixes. Such a word always
/// exists for a Dynkin quiver.
pub fn adapted_word(q: &Quiver) -> AdaptedWord {
    let n = q.rank();
    let total = q.diagram.num_positive_roots();
    let cartan = q.diagram.cartan();
    // images of the simple roots under the prefix product s_{a_1}...s_{a_j}
    let wimg: Vec<Root> = (0..n).map(|i| Root::simple(i, n)).collect();
    let mut letters = Vec::with_capacity(total);
    let found = dfs_word(&cartan, q.arrows.clone(), wimg, &mut letters, total, n);
    assert!(found, "adapted word search failed; existence is guaranteed for Dynkin quivers");
    let word = AdaptedWord { letters };
    debug_assert!(validate_adapted(q, &word.letters));
    word
}

fn dfs_word(
    cartan: &[Vec<i64>],
    arrows: Vec<(usize, usize)>,
    wimg: Vec<Root>,
    letters: &mut Vec<usize>,
    total: usize,
    n: usize,
) -> bool {
    if letters.len() == total {
        return true;
    }
    for a in Quiver::sinks_of(&arrows, n) {
        let gamma = wimg[a].clone();
        if !gamma.is_positive() {
            continue;
        }
        let mut next_wimg = wimg.clone();
        for i in 0..n {
            let coeff = cartan[i][a];
            if coeff != 0 {
                for (x, g) in next_wimg[i].0.iter_mut().zip(&gamma.0) {
                    *x -= coeff * g;
                }
            }
        }
        let next_arrows = Quiver::reflect_arrows(&arrows, a);
        letters.push(a);
        if dfs_word(cartan, next_arrows, next_wimg, letters, total, n) {
            return true;
        }
        letters.pop();
    }
    false
}

/// Check both adapted-word invariants: every letter is a sink of the current
/// reflected orientation, and the word is reduced (all partial images of
/// simples stay positive over the full length `N`).
pub fn validate_adapted(q: &Quiver, letters: &[usize]) -> bool {
    let n = q.rank();
    if letters.len() != q.diagram.num_positive_roots() {
        return false;
    }
    if letters.iter().any(|&a| a >= n) {
        return false;
    }
    let cartan = q.diagram.cartan();
    let mut arrows = q.arrows.clone();
    let mut wimg: Vec<Root> = (0..n).map(|i| Root::simple(i, n)).collect();
    for &a in letters {
        if !Quiver::sinks_of(&arrows, n).contains(&a) {
            return false;
        }
        let gamma = wimg[a].clone();
        if !gamma.is_positive() {
            return false;
        }
        for i in 0..n {
            let coeff = cartan[i][a];
            if coeff != 0 {
                for (x, g) in wimg[i].0.iter_mut().zip(&gamma.0) {
                    *x -= coeff * g;
                }
            }
        }
        arrows = Quiver::reflect_arrows(&arrows, a);
    }
    true
}

/// The total order on positive roots induced by a reduced word:
/// `gamma_j = s_{a_1} ... s_{a_{j-1}} (alpha_{a_j})`, ascending in `j`.
/// `betas` is the same list read backwards.
#[derive(Debug, Clone)]
pub struct RootOrder {
    pub word: AdaptedWord,
    pub gammas: Vec<Root>,
}

impl RootOrder {
    pub fn n_roots(&self) -> usize {
        self.gammas.len()
    }

    /// `beta_k` for `k = 0..N`: the k-th root in descending order.
    pub fn beta(&self, k: usize) -> &Root {
        &self.gammas[self.gammas.len() - 1 - k]
    }

    /// Index in descending (beta) order of a positive root.
    pub fn beta_index(&self, root: &Root) -> Option<usize> {
        self.gammas.iter().rposition(|g| g == root).map(|j| self.gammas.len() - 1 - j)
    }
}

pub fn root_order(rs: &RootSystem, word: &AdaptedWord) -> Result<RootOrder> {
    let n = rs.rank();
    let cartan = rs.diagram.cartan();
    let mut wimg: Vec<Root> = (0..n).map(|i| Root::simple(i, n)).collect();
    let mut gammas = Vec::with_capacity(word.letters.len());
    for &a in &word.letters {
        let gamma = wimg[a].clone();
        if !gamma.is_positive() {
            return Err(Error::NotReduced(format!("negative root after prefix of length {}", gammas.len())));
        }
        for i in 0..n {
            let coeff = cartan[i][a];
            if coeff != 0 {
                for (x, g) in wimg[i].0.iter_mut().zip(&gamma.0) {
                    *x -= coeff * g;
                }
            }
        }
        gammas.push(gamma);
    }
    let mut distinct: Vec<&Root> = gammas.iter().collect();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != gammas.len() {
        return Err(Error::NotReduced("duplicate root".into()));
    }
    Ok(RootOrder { word: word.clone(), gammas })
}

/// The planar Auslander-Reiten quiver: root `j` is placed in row `a_j`; the
/// column increments whenever an earlier root in the previous column sits in
/// an adjacent row. Edges go from `j` to the first later root in each
/// adjacent row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArQuiver {
    /// for each root index `j`: (row, column), both 0-based
    pub placements: Vec<(usize, usize)>,
    pub edges: Vec<(usize, usize)>,
}

pub fn ar_quiver(q: &Quiver, ro: &RootOrder) -> ArQuiver {
    let letters = &ro.word.letters;
    let nroots = letters.len();
    let mut placements: Vec<(usize, usize)> = Vec::with_capacity(nroots);
    for j in 0..nroots {
        let row = letters[j];
        let col = if j == 0 {
            0
        } else {
            let prev_col = placements[j - 1].1;
            let bump = (0..j).any(|k| placements[k].1 == prev_col && q.diagram.adjacent(letters[k], row));
            if bump {
                prev_col + 1
            } else {
                prev_col
            }
        };
        placements.push((row, col));
    }
    let mut edges = Vec::new();
    for j in 0..nroots {
        for r in 0..q.rank() {
            if !q.diagram.adjacent(letters[j], r) {
                continue;
            }
            if let Some(k) = (j + 1..nroots).find(|&k| letters[k] == r) {
                edges.push((j, k));
            }
        }
    }
    edges.sort_unstable();
    ArQuiver { placements, edges }
}

/// The Euler (homological) form of two dimension vectors:
/// `sum_i d(i) e(i) - sum_a d(ta) e(ha)`.
pub fn euler_form(q: &Quiver, d: &[i64], e: &[i64]) -> i64 {
    let vertex_part: i64 = d.iter().zip(e).map(|(&a, &b)| a * b).sum();
    let arrow_part: i64 = q.arrows.iter().map(|&(t, h)| d[t] * e[h]).sum();
    vertex_part - arrow_part
}

/// A dimension vector on the canonical vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimVec(pub Vec<usize>);

impl DimVec {
    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x as i64).collect()
    }
}

/// Orbit multiplicities indexed by the descending root order
/// `beta_0 > beta_1 > ... > beta_{N-1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Multiplicities(pub Vec<usize>);

impl Multiplicities {
    /// Check the dimension condition `sum_k m_k beta_k = d`.
    pub fn validate(&self, ro: &RootOrder, d: &DimVec) -> Result<()> {
        if self.0.len() != ro.n_roots() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} multiplicities, got {}",
                ro.n_roots(),
                self.0.len()
            )));
        }
        let n = d.0.len();
        let mut total = vec![0i64; n];
        for (k, &m) in self.0.iter().enumerate() {
            for (i, t) in total.iter_mut().enumerate() {
                *t += m as i64 * ro.beta(k).0[i];
            }
        }
        if total.iter().zip(&d.0).any(|(&t, &want)| t != want as i64) {
            return Err(Error::DimensionMismatch(format!(
                "multiplicities sum to {:?}, want {:?}",
                total, d.0
            )));
        }
        Ok(())
    }

    /// Dimension vector determined by the multiplicities.
    pub fn dimension_vector(&self, ro: &RootOrder, n: usize) -> DimVec {
        let mut total = vec![0usize; n];
        for (k, &m) in self.0.iter().enumerate() {
            for (i, t) in total.iter_mut().enumerate() {
                *t += m * ro.beta(k).0[i] as usize;
            }
        }
        DimVec(total)
    }
}

/// All multiplicity tuples with `sum_k m_k beta_k = d`, enumerated in
/// descending beta order with running-sum pruning.
pub fn enumerate_orbits(ro: &RootOrder, d: &DimVec) -> Vec<Multiplicities> {
    let nroots = ro.n_roots();
    let mut out = Vec::new();
    let mut current = vec![0usize; nroots];
    let mut remaining: Vec<i64> = d.0.iter().map(|&x| x as i64).collect();
    fn recurse(
        ro: &RootOrder,
        k: usize,
        current: &mut Vec<usize>,
        remaining: &mut Vec<i64>,
        out: &mut Vec<Multiplicities>,
    ) {
        if k == current.len() {
            if remaining.iter().all(|&r| r == 0) {
                out.push(Multiplicities(current.clone()));
            }
            return;
        }
        let beta = ro.beta(k);
        let max = beta
            .0
            .iter()
            .zip(remaining.iter())
            .filter(|(&c, _)| c > 0)
            .map(|(&c, &r)| r / c)
            .min()
            .unwrap_or(0)
            .max(0) as usize;
        for m in 0..=max {
            if m > 0 {
                for (r, &c) in remaining.iter_mut().zip(&beta.0) {
                    *r -= c;
                }
            }
            current[k] = m;
            recurse(ro, k + 1, current, remaining, out);
        }
        current[k] = 0;
        for (r, &c) in remaining.iter_mut().zip(&beta.0) {
            *r += max as i64 * c;
        }
    }
    recurse(ro, 0, &mut current, &mut remaining, &mut out);
    out
}

/// Convenience bundle: a validated quiver with its root system and the
/// adapted-word root order. Immutable after construction.
#[derive(Debug, Clone)]
pub struct QuiverContext {
    pub quiver: Quiver,
    pub root_system: RootSystem,
    pub root_order: RootOrder,
}

impl QuiverContext {
    pub fn new(quiver: Quiver) -> Self {
        let root_system = build_root_system(quiver.diagram.clone());
        let word = adapted_word(&quiver);
        let root_order = root_order(&root_system, &word).expect("adapted word is reduced");
        QuiverContext { quiver, root_system, root_order }
    }

    /// Use a caller-supplied adapted word instead of the search result.
    pub fn with_word(quiver: Quiver, letters: Vec<usize>) -> Result<Self> {
        if !validate_adapted(&quiver, &letters) {
            return Err(Error::NotReduced("word is not adapted to the orientation".into()));
        }
        let root_system = build_root_system(quiver.diagram.clone());
        let root_order = root_order(&root_system, &AdaptedWord { letters })?;
        Ok(QuiverContext { quiver, root_system, root_order })
    }
}

/// The D4 orientation used throughout the tests: all three outer vertices
/// point into the center.
pub fn d4_inward() -> Quiver {
    Quiver::new(Series::D, 4, vec![(0, 1), (2, 1), (3, 1)]).unwrap()
}
