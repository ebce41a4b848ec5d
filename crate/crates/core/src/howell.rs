//! Linear algebra over Z/p^k: Howell canonical form, kernels, and canonical
//! bases of submodules of free modules.
//!
//! The Howell form is the row-reduced form with unit-normalized p-power
//! pivots, entries above a pivot p^v reduced mod p^v, and the span closed
//! under the trailing-column property (saturation rows p^{k-v} * row are
//! folded in). Two submodules are equal iff their Howell matrices are
//! identical, which is what the center comparisons rely on.

use crate::error::{Error, Result};
use crate::poly::GradedExp;
use crate::ring::{checked_pow, inv_mod, mul_mod};
use crate::weyl::WeylElement;

/// Dense matrix over Z/p^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    p: u32,
    k: u32,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zero(p: u32, k: u32, rows: usize, cols: usize) -> Result<Self> {
        checked_pow(p, k)?;
        Ok(ModMatrix {
            p,
            k,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    pub fn from_rows(p: u32, k: u32, cols: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        let m = checked_pow(p, k)?;
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in &rows {
            if r.len() != cols {
                return Err(Error::Range("ragged rows".into()));
            }
            data.extend(r.iter().map(|&v| v % m));
        }
        Ok(ModMatrix {
            p,
            k,
            rows: n,
            cols,
            data,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        checked_pow(self.p, self.k).expect("validated")
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        let m = self.modulus();
        self.data[i * self.cols + j] = v % m;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn val_p(&self, mut v: u64) -> u32 {
        let p = self.p as u64;
        let mut r = 0;
        while v != 0 && v.is_multiple_of(p) {
            v /= p;
            r += 1;
        }
        r
    }

    /// Howell canonical form of the row span.
    pub fn howell_form(&self) -> ModMatrix {
        let m = self.modulus();
        let p = self.p as u64;
        let cols = self.cols;
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut r = 0usize;
        for col in 0..cols {
            // pivot: minimal p-valuation among rows >= r
            let mut best: Option<(usize, u32)> = None;
            for (i, row) in rows.iter().enumerate().skip(r) {
                let e = row[col];
                if e == 0 {
                    continue;
                }
                let v = self.val_p(e);
                if best.map(|(_, bv)| v < bv).unwrap_or(true) {
                    best = Some((i, v));
                    if v == 0 {
                        break;
                    }
                }
            }
            let Some((pi, v)) = best else { continue };
            rows.swap(r, pi);
            // normalize pivot to p^v
            let pv = p.pow(v);
            let unit = rows[r][col] / pv;
            debug_assert!(!unit.is_multiple_of(p));
            let uinv = inv_mod(unit, m);
            for x in rows[r].iter_mut().skip(col) {
                *x = mul_mod(*x, uinv, m);
            }
            debug_assert_eq!(rows[r][col], pv % m);
            // eliminate below (fully) and reduce above (mod p^v)
            for i in 0..rows.len() {
                if i == r {
                    continue;
                }
                let e = rows[i][col];
                if e == 0 {
                    continue;
                }
                let q = e / pv;
                if q == 0 {
                    continue;
                }
                let qm = q % m;
                let (head, tail) = rows.split_at_mut(r.max(i));
                let (ri, rr) = if i < r {
                    (&mut head[i], &tail[0])
                } else {
                    (&mut tail[0], &head[r])
                };
                for (x, &y) in ri.iter_mut().zip(rr.iter()).skip(col) {
                    *x = (*x + mul_mod(m - qm % m, y, m)) % m;
                }
            }
            // saturation row for non-unit pivot
            if v > 0 {
                let f = p.pow(self.k - v) % m;
                let sat: Vec<u64> = rows[r].iter().map(|&x| mul_mod(x, f, m)).collect();
                if sat.iter().any(|&x| x != 0) {
                    rows.push(sat);
                }
            }
            r += 1;
        }
        rows.truncate(r);
        debug_assert!(rows.iter().all(|row| row.iter().any(|&x| x != 0)));
        ModMatrix::from_rows(self.p, self.k, cols, rows).expect("shape preserved")
    }

    /// Pivot columns and pivot valuations of a matrix in Howell form.
    fn pivots(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            if let Some(j) = (0..self.cols).find(|&j| self.entry(i, j) != 0) {
                out.push((i, j, self.val_p(self.entry(i, j))));
            }
        }
        out
    }

    /// Membership of a vector in the row span; the receiver must be in
    /// Howell form.
    pub fn span_contains(&self, v: &[u64]) -> bool {
        let m = self.modulus();
        let p = self.p as u64;
        let mut w: Vec<u64> = v.iter().map(|&x| x % m).collect();
        for (i, j, val) in self.pivots() {
            let pv = p.pow(val);
            let e = w[j];
            if e == 0 {
                continue;
            }
            if !e.is_multiple_of(pv) {
                return false;
            }
            let q = (e / pv) % m;
            for (x, &y) in w.iter_mut().zip(self.row(i)).skip(j) {
                *x = (*x + mul_mod(m - q, y, m)) % m;
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// Generators of the kernel {x : A x = 0}, returned in Howell form.
    pub fn kernel(&self) -> ModMatrix {
        let n = self.cols;
        let w = self.rows + n;
        // rows generate {(A x, x)}
        let mut aug = ModMatrix::zero(self.p, self.k, n, w).expect("validated");
        for i in 0..n {
            for r in 0..self.rows {
                aug.data[i * w + r] = self.entry(r, i);
            }
            aug.data[i * w + self.rows + i] = 1;
        }
        let h = aug.howell_form();
        let mut gens = Vec::new();
        for i in 0..h.rows {
            if (0..self.rows).all(|j| h.entry(i, j) == 0) {
                gens.push(h.row(i)[self.rows..].to_vec());
            }
        }
        ModMatrix::from_rows(self.p, self.k, n, gens)
            .expect("shape preserved")
            .howell_form()
    }

    /// Stack two matrices with the same column count.
    pub fn stacked(&self, other: &ModMatrix) -> Result<ModMatrix> {
        if self.p != other.p || self.k != other.k || self.cols != other.cols {
            return Err(Error::RingMismatch("matrix shape/modulus mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(ModMatrix {
            p: self.p,
            k: self.k,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }
}

/// Canonical generating set of a Z/p^{m+1}-submodule of the degree-bounded
/// slice of the Weyl algebra, in the monomial coordinate system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmoduleBasis {
    pub p: u32,
    pub level: u32,
    pub d: usize,
    pub ambient: Vec<GradedExp>,
    pub basis: ModMatrix,
}

impl SubmoduleBasis {
    pub fn from_generators(
        p: u32,
        level: u32,
        d: usize,
        ambient: Vec<GradedExp>,
        generators: Vec<Vec<u64>>,
    ) -> Result<Self> {
        let m = ModMatrix::from_rows(p, level + 1, ambient.len(), generators)?;
        Ok(SubmoduleBasis {
            p,
            level,
            d,
            ambient,
            basis: m.howell_form(),
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Coordinates of a Weyl element in the ambient monomial basis; errors
    /// when the element has a term outside the degree window.
    pub fn coordinates(&self, u: &WeylElement) -> Result<Vec<u64>> {
        let index: std::collections::HashMap<&GradedExp, usize> = self
            .ambient
            .iter()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let mut v = vec![0u64; self.ambient.len()];
        for (e, c) in u.terms() {
            match index.get(e) {
                Some(&i) => v[i] = c,
                None => {
                    return Err(Error::Range(format!(
                        "term of degree {} outside the ambient window",
                        e.degree()
                    )))
                }
            }
        }
        Ok(v)
    }

    pub fn contains(&self, u: &WeylElement) -> Result<bool> {
        Ok(self.basis.span_contains(&self.coordinates(u)?))
    }

    pub fn rows_as_weyl(&self) -> Vec<WeylElement> {
        (0..self.basis.rows())
            .map(|i| {
                WeylElement::from_coords(self.p, self.level, self.d, &self.ambient, self.basis.row(i))
                    .expect("coordinates within window")
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn howell_of_simple_spans() {
        // span{(2,0),(0,1)} over Z/4
        let m = ModMatrix::from_rows(2, 2, 2, vec![vec![2, 0], vec![0, 1]]).unwrap();
        let h = m.howell_form();
        assert_eq!(h.rows(), 2);
        assert_eq!(h.row(0), &[2, 0]);
        assert_eq!(h.row(1), &[0, 1]);

        // a unit pivot clears its column
        let m = ModMatrix::from_rows(3, 2, 2, vec![vec![3, 1], vec![6, 5]]).unwrap();
        let h = m.howell_form();
        for i in 0..h.rows() {
            assert!(h.span_contains(h.row(i)));
        }
        assert!(h.span_contains(&[3, 1]));
        assert!(h.span_contains(&[6, 5]));
    }

    #[test]
    fn howell_is_canonical_under_row_mixing() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for p in [2u32, 3] {
            for _ in 0..40 {
                let k = rng.gen_range(1..=3);
                let m = (p as u64).pow(k);
                let rows = rng.gen_range(1..=4);
                let cols = rng.gen_range(1..=5);
                let data: Vec<Vec<u64>> = (0..rows)
                    .map(|_| (0..cols).map(|_| rng.gen_range(0..m)).collect())
                    .collect();
                let a = ModMatrix::from_rows(p, k, cols, data.clone()).unwrap();
                // mix: random elementary row operations and a shuffle
                let mut mixed = data.clone();
                for _ in 0..6 {
                    let i = rng.gen_range(0..rows);
                    let j = rng.gen_range(0..rows);
                    if i != j {
                        let f = rng.gen_range(0..m);
                        for c in 0..cols {
                            mixed[i][c] = (mixed[i][c] + f * mixed[j][c]) % m;
                        }
                    }
                    // unit scaling
                    let u = loop {
                        let u = rng.gen_range(1..m);
                        if u % p as u64 != 0 {
                            break u;
                        }
                    };
                    let i = rng.gen_range(0..rows);
                    for c in 0..cols {
                        mixed[i][c] = mixed[i][c] * u % m;
                    }
                }
                let b = ModMatrix::from_rows(p, k, cols, mixed).unwrap();
                assert_eq!(a.howell_form(), b.howell_form(), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn howell_spans_include_p_multiples() {
        // Over Z/4 the span of (2x + 2y) from x+y alone requires saturation:
        // span{(1,1)} contains (2,2) and Howell exposes it on the tail.
        let m = ModMatrix::from_rows(2, 2, 2, vec![vec![1, 1]]).unwrap();
        let h = m.howell_form();
        assert!(h.span_contains(&[1, 1]));
        assert!(h.span_contains(&[2, 2]));
        assert!(!h.span_contains(&[0, 1]));
        // (0, 2) = 2*(1,1) - hmm that is (2,2); (0,2) is not in the span
        assert!(!h.span_contains(&[0, 2]));
    }

    #[test]
    fn howell_trailing_property() {
        // span{(2,1)} over Z/4 contains (0,2) = 2*(2,1); the Howell form
        // must expose a row supported on the tail.
        let m = ModMatrix::from_rows(2, 2, 2, vec![vec![2, 1]]).unwrap();
        let h = m.howell_form();
        assert!(h.span_contains(&[0, 2]));
        assert!(h.rows() == 2);
    }

    #[test]
    fn kernel_examples() {
        // kernel of [2] over Z/4 is span{2}
        let a = ModMatrix::from_rows(2, 2, 1, vec![vec![2]]).unwrap();
        let k = a.kernel();
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row(0), &[2]);

        // kernel of [1 1; 0 2] over Z/9... use p=3,k=2: x + y = 0, 2y = 0
        let a = ModMatrix::from_rows(3, 2, 2, vec![vec![1, 1], vec![0, 3]]).unwrap();
        let k = a.kernel();
        // y in 3Z/9, x = -y: span{(6,3)} = {(3t mod 9, ...)}; verify by action
        for i in 0..k.rows() {
            let r = k.row(i);
            assert_eq!((r[0] + r[1]) % 9, 0);
            assert_eq!(3 * r[1] % 9, 0);
        }
        assert!(k.span_contains(&[6, 3]));
        assert!(!k.span_contains(&[1, 8]));
    }

    #[test]
    fn kernel_matches_bruteforce_small() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let p = 2u32;
            let k = 2u32;
            let m = 4u64;
            let rows = rng.gen_range(1..=2);
            let cols = rng.gen_range(1..=3);
            let data: Vec<Vec<u64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(0..m)).collect())
                .collect();
            let a = ModMatrix::from_rows(p, k, cols, data.clone()).unwrap();
            let ker = a.kernel();
            // brute force all vectors
            let total = m.pow(cols as u32);
            for idx in 0..total {
                let mut v = Vec::with_capacity(cols);
                let mut rest = idx;
                for _ in 0..cols {
                    v.push(rest % m);
                    rest /= m;
                }
                let in_kernel = data
                    .iter()
                    .all(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum::<u64>() % m == 0);
                assert_eq!(ker.span_contains(&v), in_kernel, "A={data:?} v={v:?}");
            }
        }
    }
}
