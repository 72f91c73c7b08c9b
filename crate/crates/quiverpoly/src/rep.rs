//! Explicit quiver representations over exact rationals: indecomposables via
//! reflection functors, Hom/Ext dimensions through ranks of the canonical
//! resolution map, orbit codimension, degeneration order, and decomposition.

use crate::linalg::RatMat;
use crate::quiver::{euler_form, DimVec, Multiplicities, Quiver, RootOrder};
use crate::rootsys::Root;
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Signed};

/// A representation: a dimension per vertex and one matrix per arrow, acting
/// on row vectors, of shape `dim(tail) x dim(head)`. The arrow list carries
/// the orientation, which reflection functors change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub arrows: Vec<(usize, usize)>,
    pub dims: Vec<usize>,
    pub maps: Vec<RatMat>,
}

impl Representation {
    pub fn zero_rep(arrows: Vec<(usize, usize)>, dims: Vec<usize>) -> Self {
        let maps = arrows.iter().map(|&(t, h)| RatMat::zeros(dims[t], dims[h])).collect();
        Representation { arrows, dims, maps }
    }

    pub fn check_shapes(&self) -> Result<()> {
        if self.arrows.len() != self.maps.len() {
            return Err(Error::InvalidInput("arrow and matrix counts differ".into()));
        }
        for (&(t, h), m) in self.arrows.iter().zip(&self.maps) {
            if m.rows != self.dims[t] || m.cols != self.dims[h] {
                return Err(Error::InvalidInput(format!(
                    "matrix for arrow {}->{} has shape {}x{}, want {}x{}",
                    t + 1,
                    h + 1,
                    m.rows,
                    m.cols,
                    self.dims[t],
                    self.dims[h]
                )));
            }
        }
        Ok(())
    }

    pub fn dimension_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn map_for(&self, tail: usize, head: usize) -> Option<&RatMat> {
        self.arrows.iter().position(|&a| a == (tail, head)).map(|i| &self.maps[i])
    }
}

/// The simple representation at a vertex: one-dimensional there, zero
/// elsewhere, all maps zero.
pub fn simple_rep(arrows: &[(usize, usize)], n: usize, vertex: usize) -> Representation {
    let mut dims = vec![0; n];
    dims[vertex] = 1;
    Representation::zero_rep(arrows.to_vec(), dims)
}

#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub enum FunctorDir {
    /// at a sink: new space is the kernel of the assembled in-map
    Plus,
    /// at a source: new space is the cokernel of the assembled out-map
    Minus,
}

/// Apply a reflection functor at `vertex`. `Plus` requires a sink, `Minus` a
/// source; arrows at the vertex are reversed in the result.
pub fn reflection_functor(rep: &Representation, vertex: usize, dir: FunctorDir) -> Result<Representation> {
    match dir {
        FunctorDir::Plus => {
            if rep.arrows.iter().any(|&(t, _)| t == vertex) {
                return Err(Error::InvalidInput(format!("vertex {} is not a sink", vertex + 1)));
            }
            let incoming: Vec<usize> =
                (0..rep.arrows.len()).filter(|&i| rep.arrows[i].1 == vertex).collect();
            // stack the maps into sum_tails -> V(vertex)
            let mut phi = RatMat::zeros(0, rep.dims[vertex]);
            for &i in &incoming {
                phi = phi.vstack(&rep.maps[i]);
            }
            let kernel = phi.left_kernel();
            let new_dim = kernel.rows;
            let mut dims = rep.dims.clone();
            dims[vertex] = new_dim;
            let mut arrows = Vec::with_capacity(rep.arrows.len());
            let mut maps = Vec::with_capacity(rep.arrows.len());
            // reversed arrows: vertex -> old tail, map = block of the kernel basis
            let mut offset = 0;
            for &i in &incoming {
                let (t, _) = rep.arrows[i];
                let block = kernel.submatrix_cols(offset, offset + rep.dims[t]);
                offset += rep.dims[t];
                arrows.push((vertex, t));
                maps.push(block);
            }
            for (i, &a) in rep.arrows.iter().enumerate() {
                if !incoming.contains(&i) {
                    arrows.push(a);
                    maps.push(rep.maps[i].clone());
                }
            }
            let out = Representation { arrows, dims, maps };
            debug_assert!(out.check_shapes().is_ok());
            Ok(out)
        }
        FunctorDir::Minus => {
            if rep.arrows.iter().any(|&(_, h)| h == vertex) {
                return Err(Error::InvalidInput(format!("vertex {} is not a source", vertex + 1)));
            }
            let outgoing: Vec<usize> =
                (0..rep.arrows.len()).filter(|&i| rep.arrows[i].0 == vertex).collect();
            // concatenate the maps into V(vertex) -> sum_heads
            let mut psi = RatMat::zeros(rep.dims[vertex], 0);
            for &i in &outgoing {
                psi = psi.hstack(&rep.maps[i]);
            }
            let proj = psi.cokernel_projection();
            let new_dim = proj.cols;
            let mut dims = rep.dims.clone();
            dims[vertex] = new_dim;
            let mut arrows = Vec::with_capacity(rep.arrows.len());
            let mut maps = Vec::with_capacity(rep.arrows.len());
            // reversed arrows: old head -> vertex, map = block rows of the projection
            let mut offset = 0;
            for &i in &outgoing {
                let (_, h) = rep.arrows[i];
                let block = proj.submatrix_rows(offset, offset + rep.dims[h]);
                offset += rep.dims[h];
                arrows.push((h, vertex));
                maps.push(block);
            }
            for (i, &a) in rep.arrows.iter().enumerate() {
                if !outgoing.contains(&i) {
                    arrows.push(a);
                    maps.push(rep.maps[i].clone());
                }
            }
            let out = Representation { arrows, dims, maps };
            debug_assert!(out.check_shapes().is_ok());
            Ok(out)
        }
    }
}

/// `dim Hom_Q(U, V) = sum_i dimU(i) dimV(i) - rank d_U^V` where
/// `d_U^V(f)_a = U_a f_{ha} - f_{ta} V_a`. Both representations must live on
/// the same orientation.
pub fn hom_dim(u: &Representation, v: &Representation) -> usize {
    assert_eq!(u.arrows, v.arrows, "representations live on different orientations");
    let n = u.dims.len();
    let domain_dim: usize = (0..n).map(|i| u.dims[i] * v.dims[i]).sum();
    let codomain_dim: usize =
        u.arrows.iter().map(|&(t, h)| u.dims[t] * v.dims[h]).sum();
    if domain_dim == 0 {
        return 0;
    }
    if codomain_dim == 0 {
        return domain_dim;
    }
    // rows: entries (i, p, q) of f_i; cols: entries (a, s, t') of the image
    let mut domain_offset = vec![0usize; n];
    let mut acc = 0;
    for i in 0..n {
        domain_offset[i] = acc;
        acc += u.dims[i] * v.dims[i];
    }
    let mut mat = RatMat::zeros(domain_dim, codomain_dim);
    let mut col_offset = 0;
    for (ai, &(t, h)) in u.arrows.iter().enumerate() {
        let ua = &u.maps[ai];
        let va = &v.maps[ai];
        for s in 0..u.dims[t] {
            for tp in 0..v.dims[h] {
                let col = col_offset + s * v.dims[h] + tp;
                // (U_a f_h)[s,tp] = sum_p U_a[s,p] f_h[p,tp]
                for p in 0..u.dims[h] {
                    let row = domain_offset[h] + p * v.dims[h] + tp;
                    let val = ua[(s, p)].clone();
                    mat[(row, col)] += val;
                }
                // -(f_t V_a)[s,tp] = -sum_q f_t[s,q] V_a[q,tp]
                for q in 0..v.dims[t] {
                    let row = domain_offset[t] + s * v.dims[t] + q;
                    let val = va[(q, tp)].clone();
                    mat[(row, col)] -= val;
                }
            }
        }
        col_offset += u.dims[t] * v.dims[h];
    }
    domain_dim - mat.rank()
}

/// Rank of the canonical-resolution map `d_U^V` (degeneration invariant).
pub fn d_rank(u: &Representation, v: &Representation) -> usize {
    let n = u.dims.len();
    let domain_dim: usize = (0..n).map(|i| u.dims[i] * v.dims[i]).sum();
    domain_dim - hom_dim(u, v)
}

/// `dim Ext^1 = hom - <dim U, dim V>`, nonnegative for hereditary categories.
pub fn ext_dim(q: &Quiver, u: &Representation, v: &Representation) -> usize {
    let hom = hom_dim(u, v) as i64;
    let euler = euler_form(q, &u.dimension_vector(), &v.dimension_vector());
    let ext = hom - euler;
    assert!(ext >= 0, "negative Ext dimension signals a convention bug");
    ext as usize
}

/// The table of all indecomposables of a Dynkin quiver, indexed by the
/// ascending root order. Population is done once at construction; the table
/// is immutable afterwards and safe to share between threads.
#[derive(Debug, Clone)]
pub struct IndecTable {
    pub quiver: Quiver,
    /// reps[j] has dimension vector gamma_{j+1}
    reps: Vec<Representation>,
}

/// Build every indecomposable by applying inverse reflection functors along
/// the adapted-word prefix to a simple. The dimension-vector equality with
/// `gamma_j` is asserted; it calibrates the functor composition order.
pub fn indecomposables(q: &Quiver, ro: &RootOrder) -> Result<IndecTable> {
    let n = q.rank();
    let letters = &ro.word.letters;
    // orientations[t] = arrows of s_{a_t} ... s_{a_1} Q
    let mut orientations = Vec::with_capacity(letters.len() + 1);
    orientations.push(q.arrows.clone());
    for &a in letters {
        let prev = orientations.last().unwrap();
        orientations.push(Quiver::reflect_arrows(prev, a));
    }
    let mut reps = Vec::with_capacity(letters.len());
    for (j, &aj) in letters.iter().enumerate() {
        let mut rep = simple_rep(&orientations[j], n, aj);
        for t in (0..j).rev() {
            rep = reflection_functor(&rep, letters[t], FunctorDir::Minus)?;
            debug_assert_eq!(rep.arrows.len(), q.arrows.len());
        }
        let got = Root(rep.dimension_vector());
        if got != ro.gammas[j] {
            return Err(Error::OracleInconsistency(format!(
                "indecomposable {} has dimension vector {:?}, want {:?}",
                j + 1,
                got.0,
                ro.gammas[j].0
            )));
        }
        // normalize arrow order to the quiver's canonical order
        let mut sorted = Representation::zero_rep(q.arrows.clone(), rep.dims.clone());
        for (i, &a) in q.arrows.iter().enumerate() {
            let pos = rep
                .arrows
                .iter()
                .position(|&b| b == a)
                .ok_or_else(|| Error::OracleInconsistency("orientation did not return to the quiver".into()))?;
            sorted.maps[i] = rep.maps[pos].clone();
        }
        reps.push(sorted);
    }
    Ok(IndecTable { quiver: q.clone(), reps })
}

impl IndecTable {
    pub fn n_roots(&self) -> usize {
        self.reps.len()
    }

    /// Indecomposable with dimension vector `gamma_{j+1}` (ascending index).
    pub fn by_gamma(&self, j: usize) -> &Representation {
        &self.reps[j]
    }

    /// Indecomposable for `beta_{k+1}` (descending index).
    pub fn by_beta(&self, k: usize) -> &Representation {
        &self.reps[self.reps.len() - 1 - k]
    }

    /// Block-diagonal direct sum with blocks ordered by descending root
    /// order (the first block belongs to the largest root).
    pub fn rep_from_multiplicities(&self, ro: &RootOrder, m: &Multiplicities) -> Representation {
        let n = self.quiver.rank();
        let nroots = self.n_roots();
        assert_eq!(m.0.len(), nroots);
        let mut dims = vec![0usize; n];
        for k in 0..nroots {
            for _ in 0..m.0[k] {
                for (i, d) in dims.iter_mut().enumerate() {
                    *d += ro.beta(k).0[i] as usize;
                }
            }
        }
        let mut rep = Representation::zero_rep(self.quiver.arrows.clone(), dims);
        // per-vertex running offset while laying out the diagonal blocks
        let mut offsets = vec![0usize; n];
        for k in 0..nroots {
            let block = self.by_beta(k);
            for _ in 0..m.0[k] {
                for (ai, &(t, h)) in self.quiver.arrows.iter().enumerate() {
                    let small = &block.maps[ai];
                    for r in 0..small.rows {
                        for c in 0..small.cols {
                            let val = small[(r, c)].clone();
                            rep.maps[ai][(offsets[t] + r, offsets[h] + c)] = val;
                        }
                    }
                }
                for (i, off) in offsets.iter_mut().enumerate() {
                    *off += ro.beta(k).0[i] as usize;
                }
            }
        }
        rep
    }

    /// Orbit codimension `sum_{U,W} m_U m_W ext(I_U, I_W)`.
    pub fn codim_orbit(&self, ro: &RootOrder, m: &Multiplicities) -> usize {
        let nroots = self.n_roots();
        let mut total = 0;
        for ku in 0..nroots {
            if m.0[ku] == 0 {
                continue;
            }
            for kw in 0..nroots {
                if m.0[kw] == 0 {
                    continue;
                }
                total += m.0[ku] * m.0[kw] * ext_dim(&self.quiver, self.by_beta(ku), self.by_beta(kw));
            }
        }
        let _ = ro;
        total
    }

    /// Closure containment of orbits: `Omega(m1) <= Omega(m2)` iff
    /// `rank d_{I_U}^{V1} <= rank d_{I_U}^{V2}` for every indecomposable U.
    /// Rank is lower semicontinuous in the representation, so it can only
    /// drop on the closure; equivalently hom(U, V1) >= hom(U, V2).
    pub fn degeneration_leq(&self, ro: &RootOrder, m1: &Multiplicities, m2: &Multiplicities) -> Result<bool> {
        let n = self.quiver.rank();
        let d1 = m1.dimension_vector(ro, n);
        let d2 = m2.dimension_vector(ro, n);
        if d1 != d2 {
            return Err(Error::DimensionMismatch("orbits have different dimension vectors".into()));
        }
        let v1 = self.rep_from_multiplicities(ro, m1);
        let v2 = self.rep_from_multiplicities(ro, m2);
        Ok(self.reps.iter().all(|u| d_rank(u, &v1) <= d_rank(u, &v2)))
    }

    /// Recover multiplicities from an explicit representation by solving the
    /// Hom-count linear system over the indecomposables.
    pub fn decompose(&self, rep: &Representation) -> Result<Multiplicities> {
        rep.check_shapes()?;
        if rep.arrows != self.quiver.arrows {
            return Err(Error::InvalidInput("representation orientation differs from the quiver".into()));
        }
        let nroots = self.n_roots();
        // H[u][w] = hom(I_{beta_u}, I_{beta_w}); rhs[u] = hom(I_{beta_u}, rep)
        let mut h = RatMat::zeros(nroots, nroots);
        let mut rhs = Vec::with_capacity(nroots);
        for u in 0..nroots {
            for w in 0..nroots {
                h[(u, w)] = BigRational::from_integer((hom_dim(self.by_beta(u), self.by_beta(w)) as i64).into());
            }
            rhs.push(BigRational::from_integer((hom_dim(self.by_beta(u), rep) as i64).into()));
        }
        let sol = h
            .solve_square(&rhs)
            .ok_or_else(|| Error::OracleInconsistency("Hom matrix of indecomposables is singular".into()))?;
        let mut m = Vec::with_capacity(nroots);
        for x in sol {
            if !x.denom().is_one() || x.numer().is_negative() {
                return Err(Error::OracleInconsistency(format!(
                    "multiplicity solution {x} is not a nonnegative integer"
                )));
            }
            let v: i64 = x.numer().try_into().map_err(|_| {
                Error::OracleInconsistency("multiplicity does not fit in i64".into())
            })?;
            m.push(v as usize);
        }
        Ok(Multiplicities(m))
    }

    /// The orbit of maximal dimension for `d`: the unique one with
    /// self-extension zero.
    pub fn dense_orbit(&self, ro: &RootOrder, d: &DimVec) -> Option<Multiplicities> {
        crate::quiver::enumerate_orbits(ro, d).into_iter().find(|m| self.codim_orbit(ro, m) == 0)
    }
}
