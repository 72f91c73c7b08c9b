//! Sparse exact-integer multivariate polynomials, reflection substitutions,
//! and divided difference operators.
//!
//! Polynomials store terms in graded-lexicographic order over a fixed
//! variable set and never keep zero coefficients. Variables are identified by
//! index into a [`VarSet`], which owns the naming (`x^(i)_k` per quiver
//! vertex, or named formal symbols for the root-lattice examples).

use crate::{Error, Result};
use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A polynomial variable: a torus coordinate attached to a quiver vertex, or
/// a named formal symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// `x^(vertex)_pos`, both 0-based internally, printed 1-based
    X { vertex: usize, pos: usize },
    Named(String),
}

impl Var {
    pub fn name(&self) -> String {
        match self {
            Var::X { vertex, pos } => format!("x^({})_{}", vertex + 1, pos + 1),
            Var::Named(s) => s.clone(),
        }
    }

    pub fn t_name(&self) -> String {
        match self {
            Var::X { vertex, pos } => format!("t^({})_{}", vertex + 1, pos + 1),
            Var::Named(s) => format!("t[{s}]"),
        }
    }

    /// Short alias `a1, b2, ...` for vertex variables (vertex -> letter).
    pub fn alias(&self) -> String {
        match self {
            Var::X { vertex, pos } if *vertex < 26 => {
                format!("{}{}", (b'a' + *vertex as u8) as char, pos + 1)
            }
            other => other.name(),
        }
    }
}

/// An ordered set of variables; the order fixes the term order and printing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    vars: Vec<Var>,
    /// first variable index per vertex (for vertex variables)
    vertex_offset: Vec<usize>,
}

impl VarSet {
    /// Vertex-major variables `x^(1)_1 .. x^(1)_{d(1)}, x^(2)_1, ...`.
    pub fn for_dims(dims: &[usize]) -> VarSet {
        let mut vars = Vec::new();
        let mut vertex_offset = Vec::with_capacity(dims.len());
        for (vertex, &d) in dims.iter().enumerate() {
            vertex_offset.push(vars.len());
            for pos in 0..d {
                vars.push(Var::X { vertex, pos });
            }
        }
        VarSet { vars, vertex_offset }
    }

    pub fn named(names: &[&str]) -> VarSet {
        VarSet { vars: names.iter().map(|s| Var::Named(s.to_string())).collect(), vertex_offset: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn var(&self, k: usize) -> &Var {
        &self.vars[k]
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn index_of(&self, v: &Var) -> Option<usize> {
        self.vars.iter().position(|w| w == v)
    }

    /// Index of `x^(vertex)_pos`.
    pub fn xvar(&self, vertex: usize, pos: usize) -> usize {
        self.vertex_offset[vertex] + pos
    }

    /// Indices of the variables of one vertex.
    pub fn vertex_vars(&self, vertex: usize, dim: usize) -> std::ops::Range<usize> {
        let start = self.vertex_offset[vertex];
        start..start + dim
    }
}

/// An integer linear form in the variables of a `VarSet`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn zero(nvars: usize) -> Self {
        LinearForm { coeffs: vec![0; nvars] }
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut f = Self::zero(nvars);
        f.coeffs[k] = 1;
        f
    }

    /// `x_u - x_v`
    pub fn difference(nvars: usize, u: usize, v: usize) -> Self {
        let mut f = Self::zero(nvars);
        f.coeffs[u] = 1;
        f.coeffs[v] = -1;
        f
    }

    pub fn neg(&self) -> Self {
        LinearForm { coeffs: self.coeffs.iter().map(|&c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        LinearForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| a + b).collect() }
    }

    pub fn scaled(&self, s: i64) -> Self {
        LinearForm { coeffs: self.coeffs.iter().map(|&c| c * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// As the difference of two variables, if it has that shape.
    pub fn as_difference(&self) -> Option<(usize, usize)> {
        let pos: Vec<usize> = self.coeffs.iter().positions(|&c| c == 1).collect();
        let neg: Vec<usize> = self.coeffs.iter().positions(|&c| c == -1).collect();
        let support = self.coeffs.iter().filter(|&&c| c != 0).count();
        if pos.len() == 1 && neg.len() == 1 && support == 2 {
            Some((pos[0], neg[0]))
        } else {
            None
        }
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (&c, v) in self.coeffs.iter().zip(point) {
            if c != 0 {
                acc += BigRational::from_integer(c.into()) * v;
            }
        }
        acc
    }

    pub fn display<'a>(&'a self, vs: &'a VarSet, alias: bool) -> LinearDisplay<'a> {
        LinearDisplay { form: self, vs, alias }
    }
}

pub struct LinearDisplay<'a> {
    form: &'a LinearForm,
    vs: &'a VarSet,
    alias: bool,
}

impl fmt::Display for LinearDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.form.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = if self.alias { self.vs.var(k).alias() } else { self.vs.var(k).name() };
            if first {
                match c {
                    1 => write!(f, "{name}")?,
                    -1 => write!(f, "-{name}")?,
                    _ => write!(f, "{c}*{name}")?,
                }
                first = false;
            } else if c > 0 {
                if c == 1 {
                    write!(f, " + {name}")?;
                } else {
                    write!(f, " + {c}*{name}")?;
                }
            } else if c == -1 {
                write!(f, " - {name}")?;
            } else {
                write!(f, " - {}*{name}", -c)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Monomial exponent vector under graded-lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mono(pub Vec<i32>);

impl Mono {
    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(&a, &b)| a - b).collect())
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial with arbitrary-precision integer
/// coefficients, canonically ordered, no zero terms stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Mono, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Mono(vec![0; nvars]), c.into());
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[k] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Mono(exps), BigInt::one());
        p
    }

    pub fn from_linear(f: &LinearForm) -> Self {
        let nvars = f.coeffs.len();
        let mut p = Self::zero(nvars);
        for (k, &c) in f.coeffs.iter().enumerate() {
            if c != 0 {
                let mut exps = vec![0; nvars];
                exps[k] = 1;
                p.add_term(Mono(exps), c.into());
            }
        }
        p
    }

    pub fn product_of_linears(nvars: usize, forms: &[LinearForm]) -> Self {
        let mut acc = Self::one(nvars);
        for f in forms {
            acc = acc.mul(&Self::from_linear(f));
        }
        acc
    }

    pub fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// `Some(d)` when nonzero and homogeneous of degree `d`.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|m| m.total_degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Apply the ring homomorphism sending each variable to a linear form.
    pub fn substitute(&self, images: &[LinearForm]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let linears: Vec<MultiPoly> = images.iter().map(Self::from_linear).collect();
        let mut powers: Vec<Vec<MultiPoly>> = (0..self.nvars).map(|_| vec![Self::one(self.nvars)]).collect();
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut term = Self::constant(self.nvars, c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                while powers[k].len() <= e {
                    let next = powers[k].last().unwrap().mul(&linears[k]);
                    powers[k].push(next);
                }
                if e > 0 {
                    term = term.mul(&powers[k][e]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Relabel variables: `x_k -> x_{perm[k]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0; self.nvars];
            for (k, &e) in m.0.iter().enumerate() {
                exps[perm[k]] += e;
            }
            out.add_term(Mono(exps), c.clone());
        }
        out
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[k];
                }
            }
            acc += t;
        }
        acc
    }

    fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Exact division; `Err(InexactDivision)` when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (dm, dc) = divisor.leading().ok_or(Error::InexactDivision)?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        loop {
            let Some((lm, lc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) else {
                return Ok(quot);
            };
            if !dm.divides(&lm) {
                return Err(Error::InexactDivision);
            }
            let (q, r) = num_integer::Integer::div_rem(&lc, &dc);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            let qm = lm.div(&dm);
            for (m, c) in &divisor.terms {
                rem.add_term(qm.mul(m), -(&q * c));
            }
            quot.add_term(qm, q);
        }
    }

    pub fn display<'a>(&'a self, vs: &'a VarSet, alias: bool) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, vs, alias }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    vs: &'a VarSet,
    alias: bool,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.poly.terms.iter().rev() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(k, &e)| {
                    let name = if self.alias { self.vs.var(k).alias() } else { self.vs.var(k).name() };
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let mono = mono.join("*");
            let sign_neg = c.is_negative();
            let abs = c.abs();
            let coeff_one = abs.is_one() && !mono.is_empty();
            if first {
                if sign_neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if coeff_one {
                write!(f, "{mono}")?;
            } else if mono.is_empty() {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// A reflection acting on the polynomial ring through a linear substitution
/// of variables, together with the root it negates.
#[derive(Debug, Clone)]
pub struct Reflection {
    subst: Vec<LinearForm>,
    pub alpha: LinearForm,
    /// set when the substitution is a plain transposition of two variables
    swap: Option<(usize, usize)>,
}

impl Reflection {
    /// Checks that the substitution is an involution and sends alpha to
    /// -alpha.
    pub fn new(subst: Vec<LinearForm>, alpha: LinearForm) -> Result<Self> {
        let nvars = subst.len();
        for k in 0..nvars {
            // subst(subst(x_k)) must be x_k
            let mut twice = LinearForm::zero(nvars);
            for (j, &c) in subst[k].coeffs.iter().enumerate() {
                if c != 0 {
                    twice = twice.add(&subst[j].scaled(c));
                }
            }
            if twice != LinearForm::var(nvars, k) {
                return Err(Error::InvalidInput(format!("substitution is not an involution at variable {k}")));
            }
        }
        let mut alpha_image = LinearForm::zero(nvars);
        for (j, &c) in alpha.coeffs.iter().enumerate() {
            if c != 0 {
                alpha_image = alpha_image.add(&subst[j].scaled(c));
            }
        }
        if alpha_image != alpha.neg() {
            return Err(Error::InvalidInput("substitution does not negate alpha".into()));
        }
        let swap = alpha.as_difference().and_then(|(u, v)| {
            let mut expected: Vec<LinearForm> = (0..nvars).map(|k| LinearForm::var(nvars, k)).collect();
            expected.swap(u, v);
            (subst == expected).then_some((u, v))
        });
        Ok(Reflection { subst, alpha, swap })
    }

    /// The transposition swapping `x_u` and `x_v`, with `alpha = x_u - x_v`.
    pub fn transposition(nvars: usize, u: usize, v: usize) -> Self {
        let mut subst: Vec<LinearForm> = (0..nvars).map(|k| LinearForm::var(nvars, k)).collect();
        subst.swap(u, v);
        Reflection { subst, alpha: LinearForm::difference(nvars, u, v), swap: Some((u, v)) }
    }

    pub fn swap_pair(&self) -> Option<(usize, usize)> {
        self.swap
    }

    pub fn substitution(&self) -> &[LinearForm] {
        &self.subst
    }

    /// Image of a point under the substitution (for evaluation-based checks).
    pub fn apply_point(&self, point: &[BigRational]) -> Vec<BigRational> {
        self.subst.iter().map(|f| f.eval(point)).collect()
    }

    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        if let Some((u, v)) = self.swap {
            let mut perm: Vec<usize> = (0..f.nvars).collect();
            perm.swap(u, v);
            f.permute_vars(&perm)
        } else {
            f.substitute(&self.subst)
        }
    }
}

/// The divided difference `(f - r(f)) / alpha`, with exactness of the
/// division asserted.
pub fn divided_difference(f: &MultiPoly, r: &Reflection) -> Result<MultiPoly> {
    let rf = r.apply(f);
    let num = f.sub(&rf);
    if num.is_zero() {
        return Ok(MultiPoly::zero(f.nvars));
    }
    num.exact_div(&MultiPoly::from_linear(&r.alpha))
}
