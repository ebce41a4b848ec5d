//! Char-p differential calculus on polynomial rings: derivations, 1- and
//! 2-forms, contraction, Lie derivative, p-th powers of derivations and the
//! inverse Cartier operator.

use super::{CoeffRing, GradedExp, ModRing, MultiPoly};
use crate::error::{Error, Result};
use crate::ring::ModInt;
use std::sync::Arc;

/// Derivation of the polynomial ring, stored by its values on the variables.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField<R: CoeffRing> {
    components: Vec<MultiPoly<R>>,
}

/// Element of Omega^1: one coefficient polynomial per d(variable).
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm<R: CoeffRing> {
    components: Vec<MultiPoly<R>>,
}

/// Element of Omega^2 with strictly upper-triangular storage:
/// coefficient of dv_i ^ dv_j for i < j.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoForm<R: CoeffRing> {
    nvars: usize,
    components: Vec<MultiPoly<R>>,
}

fn check_components<R: CoeffRing>(components: &[MultiPoly<R>], expect: usize) -> Result<()> {
    if components.len() != expect {
        return Err(Error::RingMismatch(format!(
            "expected {expect} components, got {}",
            components.len()
        )));
    }
    for w in components.windows(2) {
        if w[0].ring() != w[1].ring() || w[0].vars().as_slice() != w[1].vars().as_slice() {
            return Err(Error::RingMismatch("components from different rings".into()));
        }
    }
    Ok(())
}

pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl<R: CoeffRing> VectorField<R> {
    pub fn new(components: Vec<MultiPoly<R>>) -> Result<Self> {
        let n = components
            .first()
            .map(|c| c.vars().len())
            .ok_or_else(|| Error::RingMismatch("empty vector field".into()))?;
        check_components(&components, n)?;
        Ok(VectorField { components })
    }

    pub fn zero(ring: R, vars: Arc<Vec<String>>) -> Self {
        let n = vars.len();
        VectorField {
            components: (0..n)
                .map(|_| MultiPoly::zero(ring.clone(), vars.clone()))
                .collect(),
        }
    }

    pub fn components(&self) -> &[MultiPoly<R>] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(VectorField { components })
    }

    pub fn scale(&self, z: &MultiPoly<R>) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|a| a.mul(z))
            .collect::<Result<_>>()?;
        Ok(VectorField { components })
    }

    /// Apply the derivation to a function: L_theta f = sum theta(v_i) df/dv_i.
    pub fn apply(&self, f: &MultiPoly<R>) -> Result<MultiPoly<R>> {
        let mut acc = MultiPoly::zero(f.ring().clone(), f.vars().clone());
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&c.mul(&f.derivative(i))?)?;
        }
        Ok(acc)
    }

    /// Interior product with a 1-form.
    pub fn contract_one(&self, alpha: &OneForm<R>) -> Result<MultiPoly<R>> {
        let ring = self.components[0].ring().clone();
        let vars = self.components[0].vars().clone();
        let mut acc = MultiPoly::zero(ring, vars);
        for (t, a) in self.components.iter().zip(&alpha.components) {
            acc = acc.add(&t.mul(a)?)?;
        }
        Ok(acc)
    }

    /// Interior product with a 2-form:
    /// i_theta(dv_i ^ dv_j) = theta(v_i) dv_j - theta(v_j) dv_i.
    pub fn contract_two(&self, omega: &TwoForm<R>) -> Result<OneForm<R>> {
        let n = self.components.len();
        let ring = self.components[0].ring().clone();
        let vars = self.components[0].vars().clone();
        let mut out: Vec<MultiPoly<R>> = (0..n)
            .map(|_| MultiPoly::zero(ring.clone(), vars.clone()))
            .collect();
        for i in 0..n {
            for j in (i + 1)..n {
                let w = &omega.components[pair_index(n, i, j)];
                if w.is_zero() {
                    continue;
                }
                out[j] = out[j].add(&self.components[i].mul(w)?)?;
                out[i] = out[i].sub(&self.components[j].mul(w)?)?;
            }
        }
        Ok(OneForm { components: out })
    }

    /// Lie derivative on a 1-form via Cartan's formula
    /// L_theta = i_theta d + d i_theta.
    pub fn lie_one_form(&self, alpha: &OneForm<R>) -> Result<OneForm<R>> {
        let a = self.contract_two(&alpha.d()?)?;
        let b = de_rham(&self.contract_one(alpha)?);
        a.add(&b)
    }

    /// Lie bracket of derivations.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        let components = (0..self.components.len())
            .map(|j| {
                self.apply(&other.components[j])?
                    .sub(&other.apply(&self.components[j])?)
            })
            .collect::<Result<_>>()?;
        Ok(VectorField { components })
    }

    /// p-th power in the restricted Lie algebra of vector fields: the p-fold
    /// composition, again a derivation in characteristic p.
    pub fn p_power(&self) -> Result<Self> {
        let ring = self.components[0].ring();
        let p = ring.char_p().ok_or_else(|| {
            Error::Unsupported("p-th power of a derivation needs characteristic p".into())
        })?;
        let vars = self.components[0].vars().clone();
        let components = (0..self.components.len())
            .map(|j| {
                let mut f = MultiPoly::var(ring.clone(), vars.clone(), j)?;
                for _ in 0..p {
                    f = self.apply(&f)?;
                }
                Ok(f)
            })
            .collect::<Result<_>>()?;
        Ok(VectorField { components })
    }
}

impl<R: CoeffRing> OneForm<R> {
    pub fn new(components: Vec<MultiPoly<R>>) -> Result<Self> {
        let n = components
            .first()
            .map(|c| c.vars().len())
            .ok_or_else(|| Error::RingMismatch("empty one-form".into()))?;
        check_components(&components, n)?;
        Ok(OneForm { components })
    }

    pub fn zero(ring: R, vars: Arc<Vec<String>>) -> Self {
        let n = vars.len();
        OneForm {
            components: (0..n)
                .map(|_| MultiPoly::zero(ring.clone(), vars.clone()))
                .collect(),
        }
    }

    pub fn components(&self) -> &[MultiPoly<R>] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(OneForm { components })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(OneForm { components })
    }

    pub fn scale(&self, z: &MultiPoly<R>) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|a| a.mul(z))
            .collect::<Result<_>>()?;
        Ok(OneForm { components })
    }

    /// Exterior derivative: (d alpha)_{ij} = d(alpha_j)/dv_i - d(alpha_i)/dv_j.
    pub fn d(&self) -> Result<TwoForm<R>> {
        let n = self.components.len();
        let mut components = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                components.push(
                    self.components[j]
                        .derivative(i)
                        .sub(&self.components[i].derivative(j))?,
                );
            }
        }
        Ok(TwoForm {
            nvars: n,
            components,
        })
    }
}

impl<R: CoeffRing> TwoForm<R> {
    pub fn new(nvars: usize, components: Vec<MultiPoly<R>>) -> Result<Self> {
        if components.len() != nvars * (nvars - 1) / 2 {
            return Err(Error::RingMismatch(
                "two-form needs one component per variable pair".into(),
            ));
        }
        check_components(&components, components.len())?;
        Ok(TwoForm { nvars, components })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Coefficient of dv_i ^ dv_j for i < j.
    pub fn component(&self, i: usize, j: usize) -> &MultiPoly<R> {
        &self.components[pair_index(self.nvars, i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }
}

fn fmt_components<R: CoeffRing>(
    f: &mut std::fmt::Formatter<'_>,
    components: &[MultiPoly<R>],
    label: impl Fn(usize) -> String,
) -> std::fmt::Result {
    let mut first = true;
    for (i, c) in components.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        write!(f, "({})*{}", c, label(i))?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<R: CoeffRing> std::fmt::Display for OneForm<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vars = self.components[0].vars().clone();
        fmt_components(f, &self.components, |i| format!("d{}", vars[i]))
    }
}

impl<R: CoeffRing> std::fmt::Display for VectorField<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vars = self.components[0].vars().clone();
        fmt_components(f, &self.components, |i| format!("@{}", vars[i]))
    }
}

/// De Rham differential of a function.
pub fn de_rham<R: CoeffRing>(f: &MultiPoly<R>) -> OneForm<R> {
    let n = f.vars().len();
    OneForm {
        components: (0..n).map(|i| f.derivative(i)).collect(),
    }
}

/// Inverse Cartier operator on the spanning set f dv_j:
/// C^{-1}(f dv_j) = f^p v_j^{p-1} dv_j, extended additively.
pub fn cartier_inverse(alpha: &OneForm<ModRing>) -> Result<OneForm<ModRing>> {
    let components = alpha
        .components
        .iter()
        .enumerate()
        .map(|(j, f)| {
            if f.is_zero() {
                return Ok(f.clone());
            }
            let p = f.ring().char_p().ok_or_else(|| {
                Error::Unsupported("Cartier operator needs characteristic p".into())
            })?;
            let vj = MultiPoly::var(*f.ring(), f.vars().clone(), j)?;
            f.frobenius()?.mul(&vj.pow(p - 1)?)
        })
        .collect::<Result<_>>()?;
    Ok(OneForm { components })
}

/// Decide whether `alpha` is exact within the given degree window, returning
/// a primitive when one exists. Works over F_p by solving the linear system
/// d(g) = alpha on the monomials of degree <= degree_bound + 1.
pub fn is_exact(
    alpha: &OneForm<ModRing>,
    degree_bound: u32,
) -> Result<Option<MultiPoly<ModRing>>> {
    let ring = *alpha.components[0].ring();
    let p = ring
        .char_p()
        .ok_or_else(|| Error::Unsupported("exactness check needs F_p".into()))? as u64;
    let vars = alpha.components[0].vars().clone();
    let n = vars.len();

    let candidates = monomials_of_degree_at_most(n, degree_bound + 1);
    let index: std::collections::HashMap<&GradedExp, usize> =
        candidates.iter().enumerate().map(|(i, e)| (e, i)).collect();

    // Equations: for each variable j and monomial e with deg <= bound,
    // sum over candidates m with m = e + e_j of m_j * g_m = alpha_j[e].
    let targets = monomials_of_degree_at_most(n, degree_bound);
    let tindex: std::collections::HashMap<&GradedExp, usize> =
        targets.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let rows = n * targets.len();
    let cols = candidates.len();
    let mut a = vec![0u64; rows * cols];
    let mut b = vec![0u64; rows];
    for (mi, m) in candidates.iter().enumerate() {
        for j in 0..n {
            if m.0[j] == 0 {
                continue;
            }
            let mut e = m.clone();
            e.0[j] -= 1;
            if let Some(&ti) = tindex.get(&e) {
                let row = j * targets.len() + ti;
                a[row * cols + mi] = (a[row * cols + mi] + m.0[j] as u64) % p;
            }
        }
    }
    for j in 0..n {
        for (e, c) in alpha.components[j].terms() {
            let ti = match tindex.get(e) {
                Some(&t) => t,
                None => {
                    return Err(Error::Range(format!(
                        "form has a term of degree {} above the bound {}",
                        e.degree(),
                        degree_bound
                    )))
                }
            };
            b[j * targets.len() + ti] = c.value() % p;
        }
    }
    let _ = index;
    match solve_fp(&mut a, &mut b, rows, cols, p) {
        None => Ok(None),
        Some(sol) => {
            let items = candidates
                .into_iter()
                .zip(sol)
                .filter(|(_, v)| *v != 0)
                .map(|(e, v)| (e, ModInt::new(ring.p(), 1, v as i64).unwrap()))
                .collect();
            Ok(Some(MultiPoly::from_terms(ring, vars, items)))
        }
    }
}

/// All exponent vectors in `n` variables of total degree <= `max_deg`,
/// listed in graded order.
pub fn monomials_of_degree_at_most(n: usize, max_deg: u32) -> Vec<GradedExp> {
    let mut out = Vec::new();
    let mut cur = GradedExp::zeros(n);
    for d in 0..=max_deg {
        // enumerate exactly degree d to get graded order
        let mut layer = Vec::new();
        rec_deg(&mut layer, &mut cur, 0, d);
        layer.sort();
        out.extend(layer);
    }
    fn rec_deg(out: &mut Vec<GradedExp>, cur: &mut GradedExp, pos: usize, left: u32) {
        if pos + 1 == cur.0.len() {
            cur.0[pos] = left as u16;
            out.push(cur.clone());
            cur.0[pos] = 0;
            return;
        }
        for e in 0..=left {
            cur.0[pos] = e as u16;
            rec_deg(out, cur, pos + 1, left - e);
        }
        cur.0[pos] = 0;
    }
    out
}

/// Gaussian elimination over F_p; returns one solution of A x = b if any.
fn solve_fp(a: &mut [u64], b: &mut [u64], rows: usize, cols: usize, p: u64) -> Option<Vec<u64>> {
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !a[i * cols + c].is_multiple_of(p)) else {
            continue;
        };
        if pr != r {
            for k in 0..cols {
                a.swap(pr * cols + k, r * cols + k);
            }
            b.swap(pr, r);
        }
        let inv = crate::ring::inv_mod(a[r * cols + c], p);
        for k in c..cols {
            a[r * cols + k] = a[r * cols + k] * inv % p;
        }
        b[r] = b[r] * inv % p;
        for i in 0..rows {
            if i != r && a[i * cols + c] != 0 {
                let f = a[i * cols + c];
                for k in c..cols {
                    a[i * cols + k] = (a[i * cols + k] + (p - f) * a[r * cols + k]) % p;
                }
                b[i] = (b[i] + (p - f) * b[r]) % p;
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }
    // inconsistent rows?
    for i in r..rows {
        if !b[i].is_multiple_of(p) {
            return None;
        }
    }
    let mut x = vec![0u64; cols];
    for c in 0..cols {
        if let Some(pr) = pivot_of_col[c] {
            x[c] = b[pr] % p;
        }
    }
    Some(x)
}
