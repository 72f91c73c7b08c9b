//! Laurent polynomials in the exponentiated variables `t_k = exp(x_k)`,
//! Demazure operators, and the truncated exponential expansion that recovers
//! a multidegree as the lowest homogeneous component of a K-class.

use crate::poly::{Mono, MultiPoly, VarSet};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse Laurent polynomial: exponents of any sign, integer coefficients,
/// no zero terms stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Mono, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Mono(vec![0; nvars]), c.into());
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn monomial(nvars: usize, exps: Vec<i32>, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Mono(exps), c.into());
        p
    }

    /// `1 - exp(-gamma)` for the weight `gamma = x_tail - x_head`, written in
    /// the t-variables as `1 - t_head / t_tail`.
    pub fn one_minus_exp_neg(nvars: usize, tail: usize, head: usize) -> Self {
        let mut p = Self::one(nvars);
        let mut exps = vec![0; nvars];
        exps[head] += 1;
        exps[tail] -= 1;
        p.add_term(Mono(exps), BigInt::from(-1));
        p
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
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let exps: Vec<i32> = m1.0.iter().zip(&m2.0).map(|(&a, &b)| a + b).collect();
                out.add_term(Mono(exps), c1 * c2);
            }
        }
        out
    }

    /// Multiply by the monomial `t^exps`.
    pub fn shift(&self, exps: &[i32]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e: Vec<i32> = m.0.iter().zip(exps).map(|(&a, &b)| a + b).collect();
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    pub fn swap_vars(&self, u: usize, v: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.swap(u, v);
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    /// Exact evaluation; every coordinate must be nonzero.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.iter().any(|v| v.is_zero()) {
            return Err(Error::ZeroLaurentPoint);
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    for _ in 0..e {
                        t *= &point[k];
                    }
                } else {
                    for _ in 0..-e {
                        t /= &point[k];
                    }
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    fn min_exponents(&self) -> Vec<i32> {
        let mut mins = vec![0; self.nvars];
        for m in self.terms.keys() {
            for (k, &e) in m.0.iter().enumerate() {
                mins[k] = mins[k].min(e);
            }
        }
        mins
    }

    /// Exact division after clearing to ordinary polynomials; errors when the
    /// division is inexact.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let shift_self: Vec<i32> = self.min_exponents().iter().map(|&e| -e).collect();
        let shift_div: Vec<i32> = divisor.min_exponents().iter().map(|&e| -e).collect();
        let num = self.shift(&shift_self).as_poly();
        let den = divisor.shift(&shift_div).as_poly();
        let quot = num.exact_div(&den)?;
        let unshift: Vec<i32> = shift_self.iter().zip(&shift_div).map(|(&a, &b)| b - a).collect();
        Ok(Self::from_poly(&quot).shift(&unshift))
    }

    fn as_poly(&self) -> MultiPoly {
        debug_assert!(self.terms.keys().all(|m| m.0.iter().all(|&e| e >= 0)));
        MultiPoly { nvars: self.nvars, terms: self.terms.clone() }
    }

    fn from_poly(p: &MultiPoly) -> Self {
        LaurentPoly { nvars: p.nvars, terms: p.terms.clone() }
    }

    pub fn display<'a>(&'a self, vs: &'a VarSet) -> LaurentDisplay<'a> {
        LaurentDisplay { poly: self, vs }
    }
}

pub struct LaurentDisplay<'a> {
    poly: &'a LaurentPoly,
    vs: &'a VarSet,
}

impl fmt::Display for LaurentDisplay<'_> {
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
                    let name = self.vs.var(k).t_name();
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
            if abs.is_one() && !mono.is_empty() {
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

/// Demazure operator for `alpha = x_u - x_v`:
/// `(t_u f - t_v r(f)) / (t_u - t_v)`. Idempotent; fixes symmetric input.
pub fn demazure(f: &LaurentPoly, u: usize, v: usize) -> Result<LaurentPoly> {
    let n = f.nvars;
    let mut tu = vec![0; n];
    tu[u] = 1;
    let mut tv = vec![0; n];
    tv[v] = 1;
    let num = f.shift(&tu).sub(&f.swap_vars(u, v).shift(&tv));
    if num.is_zero() {
        return Ok(LaurentPoly::zero(n));
    }
    let mut den = LaurentPoly::zero(n);
    den.add_term(Mono(tu), BigInt::one());
    den.add_term(Mono(tv), BigInt::from(-1));
    num.exact_div(&den)
}

/// Substitute `t_k = exp(x_k)` truncated at total degree `order` and return
/// the lowest nonzero homogeneous component.
///
/// The degree-d component of `sum_e c_e exp(<e, x>)` has coefficient
/// `A_m / m!` at the monomial `x^m`, where `A_m = sum_e c_e prod_k e_k^{m_k}`.
/// Degrees are scanned upward with early exit at the first nonzero one.
/// Accumulation runs in checked i128 and falls back to big integers on
/// overflow.
pub fn lowest_term(f: &LaurentPoly, order: usize) -> Result<MultiPoly> {
    for d in 0..=order {
        let component = match component_i128(f, d) {
            Some(c) => c,
            None => component_bigint(f, d),
        };
        if component.is_empty() {
            continue;
        }
        let mut poly = MultiPoly::zero(f.nvars);
        for (mono, a) in component {
            let mfact: BigInt = mono.0.iter().map(|&e| factorial(e as u64)).product();
            let (q, r) = num_integer::Integer::div_rem(&a, &mfact);
            if !r.is_zero() {
                return Err(Error::OracleInconsistency(format!(
                    "lowest component at degree {d} has non-integer coefficients"
                )));
            }
            poly.add_term(mono, q);
        }
        if !poly.is_zero() {
            return Ok(poly);
        }
    }
    Err(Error::TruncationTooSmall { order })
}

fn factorial(k: u64) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

/// All nonzero `A_m` for `|m| = d`, or `None` on i128 overflow.
fn component_i128(f: &LaurentPoly, d: usize) -> Option<Vec<(Mono, BigInt)>> {
    let n = f.nvars;
    let terms: Vec<(&Mono, i128)> = f
        .terms
        .iter()
        .map(|(m, c)| i128::try_from(c.clone()).ok().map(|c| (m, c)))
        .collect::<Option<_>>()?;
    // powers[k][e-index][j] = e_k^j
    let mut out = Vec::new();
    let mut exps = vec![0i32; n];
    // depth-first over variables, carrying per-term partial products
    fn recurse(
        k: usize,
        remaining: usize,
        n: usize,
        terms: &[(&Mono, i128)],
        partial: &[i128],
        exps: &mut Vec<i32>,
        out: &mut Vec<(Mono, BigInt)>,
    ) -> Option<()> {
        if k == n {
            if remaining > 0 {
                return Some(());
            }
            let mut acc: i128 = 0;
            for ((_, c), p) in terms.iter().zip(partial) {
                acc = acc.checked_add(c.checked_mul(*p)?)?;
            }
            if acc != 0 {
                out.push((Mono(exps.clone()), BigInt::from(acc)));
            }
            return Some(());
        }
        let mut scaled = partial.to_vec();
        for j in 0..=remaining {
            if j > 0 {
                for (s, (m, _)) in scaled.iter_mut().zip(terms) {
                    *s = s.checked_mul(m.0[k] as i128)?;
                }
            }
            exps[k] = j as i32;
            recurse(k + 1, remaining - j, n, terms, &scaled, exps, out)?;
        }
        exps[k] = 0;
        Some(())
    }
    let partial = vec![1i128; terms.len()];
    recurse(0, d, n, &terms, &partial, &mut exps, &mut out)?;
    Some(out)
}

fn component_bigint(f: &LaurentPoly, d: usize) -> Vec<(Mono, BigInt)> {
    let n = f.nvars;
    let terms: Vec<(&Mono, &BigInt)> = f.terms.iter().collect();
    let mut out = Vec::new();
    let mut exps = vec![0i32; n];
    fn recurse(
        k: usize,
        remaining: usize,
        n: usize,
        terms: &[(&Mono, &BigInt)],
        partial: &[BigInt],
        exps: &mut Vec<i32>,
        out: &mut Vec<(Mono, BigInt)>,
    ) {
        if k == n {
            if remaining > 0 {
                return;
            }
            let mut acc = BigInt::zero();
            for ((_, c), p) in terms.iter().zip(partial) {
                acc += *c * p;
            }
            if !acc.is_zero() {
                out.push((Mono(exps.clone()), acc));
            }
            return;
        }
        let mut scaled = partial.to_vec();
        for j in 0..=remaining {
            if j > 0 {
                for (s, (m, _)) in scaled.iter_mut().zip(terms) {
                    *s *= BigInt::from(m.0[k]);
                }
            }
            exps[k] = j as i32;
            recurse(k + 1, remaining - j, n, terms, &scaled, exps, out);
        }
        exps[k] = 0;
    }
    let partial = vec![BigInt::one(); terms.len()];
    recurse(0, d, n, &terms, &partial, &mut exps, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LinearForm;
    use proptest::prelude::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn demazure_fixes_constants_and_symmetric_input() {
        let one = LaurentPoly::one(2);
        assert_eq!(demazure(&one, 0, 1).unwrap(), one);
        // t_0 t_1 is symmetric
        let sym = LaurentPoly::monomial(2, vec![1, 1], 3);
        assert_eq!(demazure(&sym, 0, 1).unwrap(), sym);
    }

    #[test]
    fn demazure_of_single_variable() {
        // d(t_u) = (t_u^2 - t_v^2)/(t_u - t_v) = t_u + t_v
        let f = LaurentPoly::monomial(2, vec![1, 0], 1);
        let expected = LaurentPoly::monomial(2, vec![1, 0], 1).add(&LaurentPoly::monomial(2, vec![0, 1], 1));
        assert_eq!(demazure(&f, 0, 1).unwrap(), expected);
    }

    #[test]
    fn demazure_handles_negative_exponents() {
        let f = LaurentPoly::monomial(2, vec![-1, 0], 1);
        let d = demazure(&f, 0, 1).unwrap();
        assert_eq!(demazure(&d, 0, 1).unwrap(), d);
    }

    #[test]
    fn lowest_term_of_one_minus_ratio() {
        // 1 - t_v/t_u  ->  x_u - x_v
        let f = LaurentPoly::one_minus_exp_neg(2, 0, 1);
        let got = lowest_term(&f, 2).unwrap();
        let expected = MultiPoly::from_linear(&LinearForm::difference(2, 0, 1));
        assert_eq!(got, expected);
    }

    #[test]
    fn lowest_term_is_multiplicative_on_k_factors() {
        let nvars = 3;
        let f = LaurentPoly::one_minus_exp_neg(nvars, 0, 1);
        let g = LaurentPoly::one_minus_exp_neg(nvars, 0, 2);
        let prod = f.mul(&g);
        let got = lowest_term(&prod, 3).unwrap();
        let expected = MultiPoly::product_of_linears(
            nvars,
            &[LinearForm::difference(nvars, 0, 1), LinearForm::difference(nvars, 0, 2)],
        );
        assert_eq!(got, expected);
    }

    #[test]
    fn truncation_too_small_is_reported() {
        let f = LaurentPoly::one_minus_exp_neg(2, 0, 1);
        let g = f.mul(&f);
        assert!(matches!(lowest_term(&g, 1), Err(Error::TruncationTooSmall { .. })));
    }

    #[test]
    fn eval_rejects_zero() {
        let f = LaurentPoly::monomial(2, vec![-1, 1], 1);
        assert!(matches!(f.eval(&[rat(0), rat(1)]), Err(Error::ZeroLaurentPoint)));
        assert_eq!(f.eval(&[rat(2), rat(6)]).unwrap(), rat(3));
    }

    fn arb_laurent(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::collection::vec(-3i32..=3, nvars), -9i64..=9), 1..=6).prop_map(
            move |terms| {
                let mut p = LaurentPoly::zero(nvars);
                for (exps, c) in terms {
                    p.add_term(Mono(exps), c.into());
                }
                p
            },
        )
    }

    proptest! {
        #[test]
        fn demazure_is_idempotent(f in arb_laurent(3)) {
            let once = demazure(&f, 0, 1).unwrap();
            let twice = demazure(&once, 0, 1).unwrap();
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn demazure_braid_relation(f in arb_laurent(3)) {
            let d01 = |g: &LaurentPoly| demazure(g, 0, 1).unwrap();
            let d12 = |g: &LaurentPoly| demazure(g, 1, 2).unwrap();
            let lhs = d01(&d12(&d01(&f)));
            let rhs = d12(&d01(&d12(&f)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
