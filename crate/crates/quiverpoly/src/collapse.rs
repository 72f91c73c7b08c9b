//! The collapsing pipeline: block structure of an orbit, the weight-product
//! class of the invariant subspace, and the divided-difference / Demazure
//! operator sequences that turn it into the class of the orbit closure.
//!
//! Conventions, calibrated against the worked rank-3 example and pinned by
//! golden tests: blocks are indexed by the descending root order
//! (`beta_1 > beta_2 > ...`); a cell of an arrow matrix is free in `Z` iff
//! its row block index is >= its column block index (block lower triangular,
//! matrices acting on row vectors); the operator word is the concatenation
//! over vertices of the lexicographically smallest reduced word for
//! `w0 w0^P`, applied rightmost letter first.

use crate::laurent::{demazure, LaurentPoly};
use crate::poly::{divided_difference, LinearForm, MultiPoly, Reflection, VarSet};
use crate::quiver::{DimVec, Multiplicities, Quiver, QuiverContext, RootOrder};
use crate::rep::IndecTable;
use crate::rootsys::{min_coset_reps, reduced_word_w0wp, Composition, Permutation, Series};
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Per-vertex block sizes in descending root order, plus the block index of
/// every row/column position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    /// sizes[vertex][k] = multiplicity of beta_{k+1} times its coordinate at
    /// the vertex
    pub sizes: Vec<Vec<usize>>,
    /// block_of[vertex][pos] = block index of the position
    pub block_of: Vec<Vec<usize>>,
}

pub fn block_structure(q: &Quiver, ro: &RootOrder, d: &DimVec, m: &Multiplicities) -> Result<BlockStructure> {
    m.validate(ro, d)?;
    let n = q.rank();
    let nroots = ro.n_roots();
    let mut sizes = vec![vec![0usize; nroots]; n];
    for k in 0..nroots {
        for i in 0..n {
            sizes[i][k] = m.0[k] * ro.beta(k).0[i] as usize;
        }
    }
    let block_of = sizes
        .iter()
        .map(|row| {
            let mut blocks = Vec::new();
            for (k, &s) in row.iter().enumerate() {
                for _ in 0..s {
                    blocks.push(k);
                }
            }
            blocks
        })
        .collect();
    Ok(BlockStructure { sizes, block_of })
}

impl BlockStructure {
    /// The cells of an arrow matrix belonging to `Z` (on or below the block
    /// diagonal), as (row, col) pairs.
    pub fn zm_cells(&self, tail: usize, head: usize) -> Vec<(usize, usize)> {
        let mut cells = Vec::new();
        for (r, &br) in self.block_of[tail].iter().enumerate() {
            for (c, &bc) in self.block_of[head].iter().enumerate() {
                if br >= bc {
                    cells.push((r, c));
                }
            }
        }
        cells
    }

    /// The complementary cells (strictly above the block diagonal), whose
    /// weights multiply to the class of `Z`.
    pub fn complement_cells(&self, tail: usize, head: usize) -> Vec<(usize, usize)> {
        let mut cells = Vec::new();
        for (r, &br) in self.block_of[tail].iter().enumerate() {
            for (c, &bc) in self.block_of[head].iter().enumerate() {
                if br < bc {
                    cells.push((r, c));
                }
            }
        }
        cells
    }

    pub fn composition(&self, vertex: usize) -> Composition {
        Composition::new(self.sizes[vertex].clone())
    }
}

/// Everything derived from one orbit: the variable set, the weights of the
/// complement of `Z`, and the operator word.
#[derive(Debug, Clone)]
pub struct Collapsing {
    pub quiver: Quiver,
    pub dims: DimVec,
    pub varset: VarSet,
    pub block: BlockStructure,
    /// weights of the cells of Hom/Z, arrow-major then row-major
    pub weights: Vec<LinearForm>,
    /// (vertex, adjacent-transposition index) letters in written order; the
    /// rightmost letter acts first
    pub word: Vec<(usize, usize)>,
}

impl Collapsing {
    pub fn new(q: &Quiver, ro: &RootOrder, d: &DimVec, m: &Multiplicities) -> Result<Self> {
        let block = block_structure(q, ro, d, m)?;
        let varset = VarSet::for_dims(&d.0);
        let nvars = varset.len();
        let mut weights = Vec::new();
        for &(t, h) in &q.arrows {
            for (r, c) in block.complement_cells(t, h) {
                weights.push(LinearForm::difference(nvars, varset.xvar(t, r), varset.xvar(h, c)));
            }
        }
        let mut word = Vec::new();
        for i in 0..q.rank() {
            for k in reduced_word_w0wp(&block.composition(i)) {
                word.push((i, k));
            }
        }
        Ok(Collapsing { quiver: q.clone(), dims: d.clone(), varset, block, weights, word })
    }

    /// The class of `Z`: the product of the complementary weights.
    pub fn z_multidegree(&self) -> MultiPoly {
        MultiPoly::product_of_linears(self.varset.len(), &self.weights)
    }

    /// The K-class of `Z`: the product of `1 - exp(-weight)`.
    pub fn z_kclass(&self) -> LaurentPoly {
        let nvars = self.varset.len();
        let mut acc = LaurentPoly::one(nvars);
        for w in &self.weights {
            let (u, v) = w.as_difference().expect("cell weights are differences of variables");
            acc = acc.mul(&LaurentPoly::one_minus_exp_neg(nvars, u, v));
        }
        acc
    }

    /// Codimension of `Z` inside Hom.
    pub fn z_codim(&self) -> usize {
        self.weights.len()
    }

    /// Codimension of the orbit closure predicted by the word length.
    pub fn orbit_codim(&self) -> usize {
        self.weights.len() - self.word.len()
    }

    fn reflection_for(&self, vertex: usize, k: usize) -> Reflection {
        let u = self.varset.xvar(vertex, k);
        let v = self.varset.xvar(vertex, k + 1);
        Reflection::transposition(self.varset.len(), u, v)
    }

    /// The operator word as explicit reflections, in written order.
    pub fn operator_reflections(&self) -> Vec<Reflection> {
        self.word.iter().map(|&(i, k)| self.reflection_for(i, k)).collect()
    }

    /// Apply the divided-difference word to the class of `Z`. Every step of
    /// the reduced word must be nonzero and the result is homogeneous of the
    /// predicted codimension.
    pub fn multidegree(&self) -> Result<MultiPoly> {
        let mut f = self.z_multidegree();
        for (step, &(i, k)) in self.word.iter().rev().enumerate() {
            f = divided_difference(&f, &self.reflection_for(i, k))?;
            if f.is_zero() {
                return Err(Error::OperatorVanished { step });
            }
        }
        let expected = self.orbit_codim() as i64;
        match f.homogeneous_degree() {
            Some(deg) if deg == expected => Ok(f),
            Some(deg) => Err(Error::DegreeMismatch { got: deg as usize, expected: expected as usize }),
            None => Err(Error::DegreeMismatch { got: usize::MAX, expected: expected as usize }),
        }
    }

    /// Apply the Demazure word to the K-class of `Z`; returns the K-class of
    /// the orbit closure and the number of steps that acted as the identity.
    pub fn kpolynomial(&self) -> Result<(LaurentPoly, usize)> {
        let mut f = self.z_kclass();
        let mut skipped = 0;
        for &(i, k) in self.word.iter().rev() {
            let u = self.varset.xvar(i, k);
            let v = self.varset.xvar(i, k + 1);
            let next = demazure(&f, u, v)?;
            if next == f {
                skipped += 1;
            }
            f = next;
        }
        Ok((f, skipped))
    }

    /// Greedy mode: apply any divided difference with nonzero output until
    /// all vanish, scanning vertices and positions in order. Every accepted
    /// step drops the degree by exactly one.
    pub fn multidegree_greedy(&self) -> Result<MultiPoly> {
        let mut f = self.z_multidegree();
        'outer: loop {
            for i in 0..self.quiver.rank() {
                let d = self.dims.0[i];
                for k in 0..d.saturating_sub(1) {
                    let step = divided_difference(&f, &self.reflection_for(i, k))?;
                    if !step.is_zero() {
                        let before = f.total_degree().unwrap_or(0);
                        let after = step.total_degree().unwrap_or(0);
                        if after + 1 != before {
                            return Err(Error::DegreeMismatch {
                                got: after as usize,
                                expected: (before - 1) as usize,
                            });
                        }
                        f = step;
                        continue 'outer;
                    }
                }
            }
            return Ok(f);
        }
    }

    /// The roots of GL not in the parabolic: per vertex, `x_k - x_k'` with
    /// the position `k` in a strictly earlier block than `k'`.
    pub fn pbeta(&self) -> Vec<LinearForm> {
        let nvars = self.varset.len();
        let mut out = Vec::new();
        for i in 0..self.quiver.rank() {
            let blocks = &self.block.block_of[i];
            for k in 0..blocks.len() {
                for kp in 0..blocks.len() {
                    if blocks[k] < blocks[kp] {
                        out.push(LinearForm::difference(nvars, self.varset.xvar(i, k), self.varset.xvar(i, kp)));
                    }
                }
            }
        }
        out
    }

    /// Minimal coset representatives of `W/W_P`, as permutations of the full
    /// variable index set (cartesian product over vertices).
    pub fn coset_rep_permutations(&self) -> Vec<Vec<usize>> {
        let nvars = self.varset.len();
        let mut combined: Vec<Vec<usize>> = vec![(0..nvars).collect()];
        for i in 0..self.quiver.rank() {
            let reps: Vec<Permutation> = min_coset_reps(&self.block.composition(i));
            let mut next = Vec::with_capacity(combined.len() * reps.len());
            for base in &combined {
                for rep in &reps {
                    let mut perm = base.clone();
                    for (pos, &val) in rep.one_line().iter().enumerate() {
                        perm[self.varset.xvar(i, pos)] = self.varset.xvar(i, val);
                    }
                    next.push(perm);
                }
            }
            combined = next;
        }
        combined
    }
}

/// The result record of the pipeline for one orbit.
#[derive(Debug, Clone)]
pub struct QuiverClassResult {
    pub multidegree: MultiPoly,
    pub kpolynomial: Option<LaurentPoly>,
    pub codim: usize,
    pub operators_applied: usize,
    pub skipped: usize,
    pub certified: bool,
    pub warnings: Vec<String>,
}

/// Run the pipeline for an orbit. The representation-theoretic codimension
/// is cross-checked against the degree of the result. With `want_k`, the
/// K-polynomial is computed as well; for series E it is attached with
/// `certified: false`.
pub fn quiver_class(
    ctx: &QuiverContext,
    table: &IndecTable,
    d: &DimVec,
    m: &Multiplicities,
    want_k: bool,
) -> Result<QuiverClassResult> {
    let collapsing = Collapsing::new(&ctx.quiver, &ctx.root_order, d, m)?;
    let multidegree = collapsing.multidegree()?;
    let oracle_codim = table.codim_orbit(&ctx.root_order, m);
    if oracle_codim != collapsing.orbit_codim() {
        return Err(Error::DegreeMismatch { got: collapsing.orbit_codim(), expected: oracle_codim });
    }
    let mut result = QuiverClassResult {
        multidegree,
        kpolynomial: None,
        codim: oracle_codim,
        operators_applied: collapsing.word.len(),
        skipped: 0,
        certified: true,
        warnings: Vec::new(),
    };
    if want_k {
        let (k, skipped) = collapsing.kpolynomial()?;
        result.kpolynomial = Some(k);
        result.skipped = skipped;
        if ctx.quiver.diagram.series == Series::E {
            result.certified = false;
            result.warnings.push("rational singularities open for type E".to_string());
        }
    }
    Ok(result)
}

fn sample_point(rng: &mut ChaCha8Rng, nvars: usize, nonzero: bool) -> Vec<BigRational> {
    (0..nvars)
        .map(|_| {
            let mut v: i64 = rng.gen_range(-1_000_000..=1_000_000);
            if nonzero {
                while v == 0 {
                    v = rng.gen_range(-1_000_000..=1_000_000);
                }
            }
            BigRational::from_integer(v.into())
        })
        .collect()
}

fn permute_point(point: &[BigRational], perm: &[usize]) -> Vec<BigRational> {
    (0..point.len()).map(|k| point[perm[k]].clone()).collect()
}

/// Randomized verification of the coset summation formulas on both the
/// cohomology and K sides, at `trials` seeded rational points. Exact
/// comparison; a mismatch is a hard failure.
pub fn sum_formula_check(
    q: &Quiver,
    ro: &RootOrder,
    d: &DimVec,
    m: &Multiplicities,
    trials: usize,
    seed: u64,
) -> Result<()> {
    let collapsing = Collapsing::new(q, ro, d, m)?;
    let multidegree = collapsing.multidegree()?;
    let (kpoly, _) = collapsing.kpolynomial()?;
    let zpoly = collapsing.z_multidegree();
    let zk = collapsing.z_kclass();
    let pbeta = collapsing.pbeta();
    let reps = collapsing.coset_rep_permutations();
    let nvars = collapsing.varset.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        // cohomology side
        let point = sample_distinct(&mut rng, nvars, &reps, &pbeta, false)?;
        let mut sum = BigRational::zero();
        for rep in &reps {
            let moved = permute_point(&point, rep);
            let mut denom = BigRational::from_integer(1.into());
            for beta in &pbeta {
                denom *= beta.eval(&moved);
            }
            sum += zpoly.eval(&moved) / denom;
        }
        if sum != multidegree.eval(&point) {
            return Err(Error::SumFormulaMismatch { trial });
        }
        // K side: evaluate in the t-variables at a nonzero point
        let tpoint = sample_distinct(&mut rng, nvars, &reps, &pbeta, true)?;
        let mut ksum = BigRational::zero();
        for rep in &reps {
            let moved = permute_point(&tpoint, rep);
            let mut denom = BigRational::from_integer(1.into());
            for beta in &pbeta {
                let (u, v) = beta.as_difference().expect("parabolic roots are differences");
                denom *= BigRational::from_integer(1.into()) - &moved[v] / &moved[u];
            }
            ksum += zk.eval(&moved)? / denom;
        }
        if ksum != kpoly.eval(&tpoint)? {
            return Err(Error::SumFormulaMismatch { trial });
        }
    }
    Ok(())
}

/// Sample a point where no parabolic root vanishes under any coset
/// representative (coordinates distinct within each vertex suffice).
fn sample_distinct(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    reps: &[Vec<usize>],
    pbeta: &[LinearForm],
    nonzero: bool,
) -> Result<Vec<BigRational>> {
    'attempt: for _ in 0..100 {
        let point = sample_point(rng, nvars, nonzero);
        for rep in reps {
            let moved = permute_point(&point, rep);
            for beta in pbeta {
                if beta.eval(&moved).is_zero() {
                    continue 'attempt;
                }
            }
        }
        return Ok(point);
    }
    Err(Error::ResampleLimit)
}

/// Data for a generic linear collapsing: the ambient weights, the coordinate
/// subspace, the simple reflections of the acting group, and the coset data
/// for the summation formula.
#[derive(Debug, Clone)]
pub struct KempfData {
    pub varset: VarSet,
    pub y_weights: Vec<LinearForm>,
    /// indices into `y_weights` spanning the invariant subspace
    pub z_cells: Vec<usize>,
    pub simple_reflections: Vec<Reflection>,
    /// reduced word for `w0 w0^P` as indices into `simple_reflections`
    pub wp_word: Vec<usize>,
    /// minimal coset representatives as variable substitutions
    pub wp_reps: Vec<Vec<LinearForm>>,
    /// the roots of G not in P
    pub pbeta: Vec<LinearForm>,
}

impl KempfData {
    pub fn validate(&self) -> Result<()> {
        if self.z_cells.iter().any(|&c| c >= self.y_weights.len()) {
            return Err(Error::InvalidInput("z_cells out of range".into()));
        }
        if self.pbeta.len() != self.wp_word.len() {
            return Err(Error::InvalidInput(format!(
                "|pbeta| = {} but the coset word has length {}",
                self.pbeta.len(),
                self.wp_word.len()
            )));
        }
        Ok(())
    }

    /// The product of the weights of Y/Z.
    pub fn z_class(&self) -> MultiPoly {
        let forms: Vec<LinearForm> = self
            .y_weights
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.z_cells.contains(i))
            .map(|(_, w)| w.clone())
            .collect();
        MultiPoly::product_of_linears(self.varset.len(), &forms)
    }
}

/// Greedy divided-difference stabilization of the class of `Z`; the result
/// is `d` times the class of the swept subvariety, where `d` (the number of
/// components of a general fiber) is not known to the engine.
pub fn generic_multidegree(data: &KempfData) -> Result<MultiPoly> {
    data.validate()?;
    let mut f = data.z_class();
    'outer: loop {
        for r in &data.simple_reflections {
            let step = divided_difference(&f, r)?;
            if !step.is_zero() {
                f = step;
                continue 'outer;
            }
        }
        return Ok(f);
    }
}

/// Randomized check of the generic summation formula against an expected
/// class (usually the greedy result).
pub fn generic_sum_check(data: &KempfData, expected: &MultiPoly, trials: usize, seed: u64) -> Result<()> {
    data.validate()?;
    let zpoly = data.z_class();
    let nvars = data.varset.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let point = 'attempt: {
            for _ in 0..100 {
                let point = sample_point(&mut rng, nvars, false);
                let ok = data.wp_reps.iter().all(|subst| {
                    let moved: Vec<BigRational> = subst.iter().map(|f| f.eval(&point)).collect();
                    data.pbeta.iter().all(|beta| !beta.eval(&moved).is_zero())
                });
                if ok {
                    break 'attempt point;
                }
            }
            return Err(Error::ResampleLimit);
        };
        let mut sum = BigRational::zero();
        for subst in &data.wp_reps {
            let moved: Vec<BigRational> = subst.iter().map(|f| f.eval(&point)).collect();
            let mut denom = BigRational::from_integer(1.into());
            for beta in &data.pbeta {
                denom *= beta.eval(&moved);
            }
            sum += zpoly.eval(&moved) / denom;
        }
        if sum != expected.eval(&point) {
            return Err(Error::SumFormulaMismatch { trial });
        }
    }
    Ok(())
}

/// The adjoint example: the special linear group of the given rank plus a
/// dilation circle acting on its Lie algebra, with `Z` the lower-triangular
/// subalgebra. The general fiber has `rank!` components, so the greedy class
/// is the constant `rank!`.
pub fn special_linear_adjoint(rank: usize) -> KempfData {
    assert!(rank >= 2, "need at least the 2x2 case");
    let n = rank - 1; // number of simple roots
    let mut names: Vec<String> = vec!["a".to_string()];
    names.extend((1..=n).map(|i| format!("al{i}")));
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let varset = VarSet::named(&name_refs);
    let nvars = varset.len();
    let a = LinearForm::var(nvars, 0);
    // positive roots al_i + ... + al_j, 1 <= i <= j <= n
    let mut positive = Vec::new();
    for i in 1..=n {
        let mut form = LinearForm::zero(nvars);
        for j in i..=n {
            form = form.add(&LinearForm::var(nvars, j));
            positive.push(form.clone());
        }
    }
    let mut y_weights = Vec::new();
    let mut z_cells = Vec::new();
    for root in &positive {
        y_weights.push(a.add(root));
    }
    for root in &positive {
        z_cells.push(y_weights.len());
        y_weights.push(a.add(&root.neg()));
    }
    for _ in 0..n {
        z_cells.push(y_weights.len());
        y_weights.push(a.clone());
    }
    // simple reflections act on the root coordinates by the Cartan matrix of
    // the type-A diagram, fixing the dilation weight
    let cartan = crate::rootsys::DynkinDiagram::new(Series::A, n).expect("type A").cartan();
    let mut simple_reflections = Vec::with_capacity(n);
    for i in 0..n {
        let mut subst = vec![LinearForm::var(nvars, 0)];
        for j in 0..n {
            // s_i(al_j) = al_j - C[j][i] al_i
            let mut form = LinearForm::var(nvars, 1 + j);
            form = form.add(&LinearForm::var(nvars, 1 + i).scaled(-cartan[j][i]));
            subst.push(form);
        }
        simple_reflections.push(Reflection::new(subst, LinearForm::var(nvars, 1 + i)).expect("valid reflection"));
    }
    // full Weyl group by closure; W_P is trivial here
    let identity: Vec<LinearForm> = (0..nvars).map(|k| LinearForm::var(nvars, k)).collect();
    let mut wp_reps = vec![identity];
    loop {
        let mut grew = false;
        let current = wp_reps.clone();
        for subst in &current {
            for r in &simple_reflections {
                // compose: first apply r's substitution, then subst
                let composed: Vec<LinearForm> = r
                    .substitution()
                    .iter()
                    .map(|form| {
                        let mut acc = LinearForm::zero(nvars);
                        for (j, &c) in form.coeffs.iter().enumerate() {
                            if c != 0 {
                                acc = acc.add(&subst[j].scaled(c));
                            }
                        }
                        acc
                    })
                    .collect();
                if !wp_reps.contains(&composed) {
                    wp_reps.push(composed);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let wp_word = reduced_word_w0wp(&Composition::new(vec![1; rank]));
    KempfData { varset, y_weights, z_cells, simple_reflections, wp_word, wp_reps, pbeta: positive }
}
