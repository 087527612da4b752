//! Symmetric banded matrices and their Cholesky factorization.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Symmetric matrix with half-bandwidth `bw`, lower band stored row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct SymBandMatrix<T> {
    n: usize,
    bw: usize,
    data: Vec<T>,
}

impl<T: Real> SymBandMatrix<T> {
    pub fn zeros(n: usize, bw: usize) -> Self {
        let bw = bw.min(n.saturating_sub(1));
        Self { n, bw, data: vec![T::zero(); n * (bw + 1)] }
    }

    pub fn from_diagonal(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len(), 0);
        for (i, &v) in d.iter().enumerate() {
            m.add(i, i, v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.bw
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(j <= i && i - j <= self.bw);
        i * (self.bw + 1) + (j + self.bw - i)
    }

    /// Entry `(i, j)`; zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> T {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        if i - j > self.bw {
            T::zero()
        } else {
            self.data[self.idx(i, j)]
        }
    }

    /// Add `v` to entries `(i, j)` and `(j, i)`.
    ///
    /// Panics if the entry lies outside the band.
    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: T) {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        assert!(i - j <= self.bw, "entry ({i},{j}) outside bandwidth {}", self.bw);
        let k = self.idx(i, j);
        self.data[k] += v;
    }

    /// `self + s * other` (bandwidths may differ).
    pub fn axpy(&self, s: T, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let bw = self.bw.max(other.bw);
        let mut out = Self::zeros(self.n, bw);
        for i in 0..self.n {
            for j in i.saturating_sub(bw)..=i {
                let v = self.get(i, j) + s * other.get(i, j);
                let k = out.idx(i, j);
                out.data[k] = v;
            }
        }
        out
    }

    pub fn scale(&mut self, s: T) {
        for v in &mut self.data {
            *v *= s;
        }
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); self.n];
        self.matvec_into(x, &mut y);
        y
    }

    pub fn matvec_into(&self, x: &[T], y: &mut [T]) {
        assert_eq!(x.len(), self.n);
        for v in y.iter_mut() {
            *v = T::zero();
        }
        for i in 0..self.n {
            let j0 = i.saturating_sub(self.bw);
            let row = &self.data[self.idx(i, j0)..=self.idx(i, i)];
            let mut acc = T::zero();
            for (off, &a) in row[..row.len() - 1].iter().enumerate() {
                let j = j0 + off;
                acc += a * x[j];
                y[j] += a * x[i];
            }
            acc += row[row.len() - 1] * x[i];
            y[i] += acc;
        }
    }

    /// `xᵀ A y`.
    pub fn quad_form(&self, x: &[T], y: &[T]) -> T {
        let ay = self.matvec(y);
        x.iter().zip(&ay).map(|(&a, &b)| a * b).sum()
    }

    /// Principal submatrix on the sorted index list `keep`.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let mut bw = 0;
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep[..a].iter().enumerate().rev() {
                if i - j > self.bw {
                    break;
                }
                if !self.get(i, j).is_zero() {
                    bw = bw.max(a - b);
                }
            }
        }
        let mut out = Self::zeros(keep.len(), bw);
        for (a, &i) in keep.iter().enumerate() {
            for b in a.saturating_sub(bw)..=a {
                let v = self.get(i, keep[b]);
                let k = out.idx(a, b);
                out.data[k] = v;
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Banded Cholesky `A = L Lᵀ`.
    pub fn cholesky(&self) -> Result<BandCholesky<T>> {
        let (n, bw) = (self.n, self.bw);
        let mut l = self.data.clone();
        let w = bw + 1;
        for i in 0..n {
            let j0 = i.saturating_sub(bw);
            for j in j0..=i {
                let k0 = j0.max(j.saturating_sub(bw));
                let mut s = l[i * w + (j + bw - i)];
                let ri = i * w + bw - i;
                let rj = j * w + bw - j;
                for k in k0..j {
                    s -= l[ri + k] * l[rj + k];
                }
                if i == j {
                    if !(s > T::zero()) || !s.is_finite() {
                        return Err(Error::FactorizationFailure { pivot: i });
                    }
                    l[i * w + bw] = s.sqrt();
                } else {
                    l[i * w + (j + bw - i)] = s / l[j * w + bw];
                }
            }
        }
        Ok(BandCholesky { n, bw, l })
    }
}

#[derive(Debug, Clone)]
pub struct BandCholesky<T> {
    n: usize,
    bw: usize,
    l: Vec<T>,
}

impl<T: Real> BandCholesky<T> {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solve `A x = b` in place.
    pub fn solve_in_place(&self, b: &mut [T]) {
        let (n, bw) = (self.n, self.bw);
        let w = bw + 1;
        for i in 0..n {
            let j0 = i.saturating_sub(bw);
            let row = i * w + bw - i;
            let mut s = b[i];
            for j in j0..i {
                s -= self.l[row + j] * b[j];
            }
            b[i] = s / self.l[i * w + bw];
        }
        for i in (0..n).rev() {
            b[i] /= self.l[i * w + bw];
            let xi = b[i];
            let j0 = i.saturating_sub(bw);
            let row = i * w + bw - i;
            for j in j0..i {
                b[j] -= self.l[row + j] * xi;
            }
        }
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        x
    }
}
