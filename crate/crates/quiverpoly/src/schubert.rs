//! Double Schubert polynomials by divided-difference descent from the top
//! class, rectangle double Schur polynomials through Grassmannian
//! permutations, and the three-term component cross-check for the rank-3
//! example. This module is the Schubert-calculus oracle: it shares only the
//! polynomial arithmetic with the collapsing pipeline, not its route.

use crate::poly::{divided_difference, LinearForm, Mono, MultiPoly, Reflection, VarSet};
use crate::rootsys::Permutation;
use crate::{Error, Result};
use std::collections::HashMap;

/// Two disjoint ordered variable groups inside a shared variable set.
#[derive(Debug, Clone)]
pub struct DoubleVarPair {
    pub nvars: usize,
    pub xvars: Vec<usize>,
    pub yvars: Vec<usize>,
}

impl DoubleVarPair {
    pub fn new(nvars: usize, xvars: Vec<usize>, yvars: Vec<usize>) -> Result<Self> {
        if xvars.iter().any(|x| yvars.contains(x)) {
            return Err(Error::InvalidInput("x and y variable groups overlap".into()));
        }
        if xvars.iter().chain(&yvars).any(|&k| k >= nvars) {
            return Err(Error::InvalidInput("variable index out of range".into()));
        }
        Ok(DoubleVarPair { nvars, xvars, yvars })
    }
}

/// Memoized table of double Schubert polynomials of `S_n`, computed in a
/// scratch ring with x_1..x_{n-1}, y_1..y_{n-1}.
pub struct SchubertTable {
    n: usize,
    cache: HashMap<Vec<usize>, MultiPoly>,
}

impl SchubertTable {
    pub fn new(n: usize) -> Self {
        SchubertTable { n, cache: HashMap::new() }
    }

    // the scratch ring carries x_1..x_n and y_1..y_n: the final polynomials
    // only involve x_1..x_{n-1}, y_1..y_{n-1}, but the intermediate divided
    // differences act through x_n
    fn scratch_nvars(&self) -> usize {
        2 * self.n
    }

    fn xvar(&self, i: usize) -> usize {
        i
    }

    fn yvar(&self, j: usize) -> usize {
        self.n + j
    }

    /// Lehmer code: `c_i = #{j > i : w(j) < w(i)}`.
    fn code(w: &Permutation) -> Vec<usize> {
        let v = w.one_line();
        (0..v.len()).map(|i| (i + 1..v.len()).filter(|&j| v[j] < v[i]).count()).collect()
    }

    /// For a dominant permutation (weakly decreasing code), the polynomial is
    /// the product of `x_i - y_j` over the cells of the code's diagram. The
    /// longest element is the staircase case.
    fn dominant_class(&self, code: &[usize]) -> Option<MultiPoly> {
        if code.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        let nv = self.scratch_nvars();
        let mut forms = Vec::new();
        for (i, &ci) in code.iter().enumerate() {
            for j in 0..ci {
                forms.push(LinearForm::difference(nv, self.xvar(i), self.yvar(j)));
            }
        }
        Some(MultiPoly::product_of_linears(nv, &forms))
    }

    /// The double Schubert polynomial in the scratch ring.
    pub fn schubert(&mut self, w: &Permutation) -> MultiPoly {
        assert_eq!(w.len(), self.n);
        if let Some(hit) = self.cache.get(w.one_line()) {
            return hit.clone();
        }
        let result = if let Some(direct) = self.dominant_class(&Self::code(w)) {
            direct
        } else {
            // first ascent i: l(w s_i) = l(w) + 1, and S_w = d_i S_{w s_i}
            let i = (0..self.n - 1)
                .find(|&i| w.apply(i) < w.apply(i + 1))
                .expect("non-longest permutation has an ascent");
            let longer = w.mul_right_s(i);
            let upper = self.schubert(&longer);
            let r = Reflection::transposition(self.scratch_nvars(), self.xvar(i), self.xvar(i + 1));
            divided_difference(&upper, &r).expect("Schubert descent divides exactly")
        };
        self.cache.insert(w.one_line().to_vec(), result.clone());
        result
    }
}

/// Map a scratch-ring polynomial into the caller's variable pair; errors if
/// the polynomial touches a variable the pair does not provide.
fn embed(poly: &MultiPoly, n: usize, pair: &DoubleVarPair) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(pair.nvars);
    for (mono, coeff) in &poly.terms {
        let mut exps = vec![0i32; pair.nvars];
        for (k, &e) in mono.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let target = if k < n {
                pair.xvars.get(k).copied().ok_or_else(|| Error::MissingVariable(format!("x_{}", k + 1)))?
            } else {
                let j = k - n;
                pair.yvars.get(j).copied().ok_or_else(|| Error::MissingVariable(format!("y_{}", j + 1)))?
            };
            exps[target] += e;
        }
        out.add_term(Mono(exps), coeff.clone());
    }
    Ok(out)
}

/// Double Schubert polynomial of a permutation in the given variable pair.
pub fn double_schubert(w: &Permutation, pair: &DoubleVarPair) -> Result<MultiPoly> {
    let mut table = SchubertTable::new(w.len());
    let scratch = table.schubert(w);
    embed(&scratch, w.len(), pair)
}

/// Double Schur polynomial of the `p x q` rectangle over the full x alphabet
/// of the pair, realized as the double Schubert polynomial of the rank-locus
/// permutation: the rectangle padded with zero rows to `m = |xvars|`, giving
/// the Grassmannian permutation with descent at `m` that fixes `1..m-p` and
/// shifts the last `p` positions by `q`.
pub fn double_schur_rect(p: usize, q: usize, pair: &DoubleVarPair) -> Result<MultiPoly> {
    if p == 0 || q == 0 {
        return Ok(MultiPoly::one(pair.nvars));
    }
    let m = pair.xvars.len();
    if p > m {
        return Err(Error::InvalidInput(format!("rectangle has {p} rows but only {m} x variables")));
    }
    let mut one_line: Vec<usize> = (0..m - p).collect();
    one_line.extend((m - p..m).map(|i| i + q));
    one_line.extend(m - p..m - p + q);
    let w = Permutation::from_one_line(one_line).expect("rank-locus permutation");
    double_schubert(&w, pair)
}

/// The three-term component formula for the rank-3 quiver at d = (2,3,2):
/// `S_123(a;b) S_3412(b;c) + S_132(a;b) S_3142(b;c) + S_231(a;b) S_1342(b;c)`.
pub fn component_formula_a3(vs: &VarSet) -> Result<MultiPoly> {
    let nvars = vs.len();
    let avars: Vec<usize> = (0..2).map(|k| vs.xvar(0, k)).collect();
    let bvars: Vec<usize> = (0..3).map(|k| vs.xvar(1, k)).collect();
    let cvars: Vec<usize> = (0..2).map(|k| vs.xvar(2, k)).collect();
    let ab = DoubleVarPair::new(nvars, avars, bvars.clone())?;
    let bc = DoubleVarPair::new(nvars, bvars, cvars)?;
    let pairs = [("123", "3412"), ("132", "3142"), ("231", "1342")];
    let mut acc = MultiPoly::zero(nvars);
    for (wa, wb) in pairs {
        let left = double_schubert(&Permutation::parse(wa)?, &ab)?;
        let right = double_schubert(&Permutation::parse(wb)?, &bc)?;
        acc = acc.add(&left.mul(&right));
    }
    Ok(acc)
}
