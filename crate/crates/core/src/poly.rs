//! Dense real polynomials in ascending-power form and real root isolation.

use crate::scalar::Real;

/// `c[0] + c[1] x + c[2] x^2 + ...`
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Real> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        Self { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Degree of the trimmed representation (0 for constants, including zero).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn eval(&self, x: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::constant(T::zero());
        }
        let d = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * T::from_int(i as i64))
            .collect();
        Self::new(d)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or_else(T::zero)
                    + other.coeffs.get(i).copied().unwrap_or_else(T::zero)
            })
            .collect();
        Self::new(c)
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut c = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    /// Real roots in the closed interval `[a, b]`, ascending, without duplicates.
    ///
    /// Critical points split the interval into monotone pieces; each piece holds
    /// at most one root, located by bisection. The zero polynomial has no
    /// isolated roots and returns an empty list.
    pub fn real_roots_in(&self, a: T, b: T) -> Vec<T> {
        if self.is_zero() || a > b {
            return Vec::new();
        }
        if self.degree() == 0 {
            return Vec::new();
        }
        let mut breaks = vec![a];
        breaks.extend(
            self.derivative()
                .real_roots_in(a, b)
                .into_iter()
                .filter(|&x| x > a && x < b),
        );
        breaks.push(b);

        let scale = self
            .coeffs
            .iter()
            .fold(T::zero(), |m, &c| m.max(c.abs()))
            * (T::one() + a.abs().max(b.abs())).powi(self.degree() as i32);
        let zero_tol = scale * T::epsilon() * T::lit(16.0);

        let mut roots: Vec<T> = Vec::new();
        let push = |x: T, roots: &mut Vec<T>| {
            let tol = T::epsilon().sqrt() * (T::one() + x.abs()) * T::lit(1e-3);
            if roots.last().map_or(true, |&l| (x - l).abs() > tol) {
                roots.push(x);
            }
        };
        for w in breaks.windows(2) {
            let (mut lo, mut hi) = (w[0], w[1]);
            let (mut flo, fhi) = (self.eval(lo), self.eval(hi));
            if flo.abs() <= zero_tol {
                push(lo, &mut roots);
                continue;
            }
            if fhi.abs() <= zero_tol {
                push(hi, &mut roots);
                continue;
            }
            if (flo > T::zero()) == (fhi > T::zero()) {
                continue;
            }
            for _ in 0..200 {
                let mid = (lo + hi) / T::lit(2.0);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = self.eval(mid);
                if fm.is_zero() {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (fm > T::zero()) == (flo > T::zero()) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            push((lo + hi) / T::lit(2.0), &mut roots);
        }
        roots
    }
}
