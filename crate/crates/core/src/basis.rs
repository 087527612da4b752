//! One-dimensional Gauss rules and nodal Lagrange bases on `[-1, 1]`.

use crate::scalar::Real;

/// Legendre polynomial `P_n(x)` and its derivative.
fn legendre<T: Real>(n: usize, x: T) -> (T, T) {
    if n == 0 {
        return (T::one(), T::zero());
    }
    let (mut p0, mut p1) = (T::one(), x);
    for j in 2..=n {
        let jf = T::from_int(j as i64);
        let p2 = ((T::lit(2.0) * jf - T::one()) * x * p1 - (jf - T::one()) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let nf = T::from_int(n as i64);
    let dp = if (T::one() - x * x).abs() > T::epsilon() {
        nf * (p0 - x * p1) / (T::one() - x * x)
    } else {
        // P_n'(±1) = (±1)^{n-1} n(n+1)/2
        let v = nf * (nf + T::one()) / T::lit(2.0);
        if x > T::zero() || n % 2 == 1 { v } else { -v }
    };
    (p1, dp)
}

/// `n`-point Gauss–Legendre rule, exact for degree `2n - 1`.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1);
    let mut x = vec![T::zero(); n];
    let mut w = vec![T::zero(); n];
    let nf = n as f64;
    for i in 0..(n + 1) / 2 {
        let mut z = T::lit((std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos());
        for _ in 0..100 {
            let (p, dp) = legendre(n, z);
            let dz = p / dp;
            z -= dz;
            if dz.abs() <= T::epsilon() * T::lit(2.0) {
                break;
            }
        }
        let (_, dp) = legendre(n, z);
        let wi = T::lit(2.0) / ((T::one() - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = T::zero();
    }
    (x, w)
}

/// Gauss–Lobatto–Legendre points: endpoints plus the roots of `P_{n-1}'`.
pub fn gauss_lobatto_points<T: Real>(n: usize) -> Vec<T> {
    assert!(n >= 2);
    let p = n - 1;
    let mut x = vec![T::zero(); n];
    x[0] = -T::one();
    x[p] = T::one();
    for i in 1..p {
        // Chebyshev–Gauss–Lobatto initial guess, Newton on (1-x²)P_p'(x)
        let mut z = -T::lit((std::f64::consts::PI * i as f64 / p as f64).cos());
        for _ in 0..100 {
            let (lp, dlp) = legendre(p, z);
            // q = (1 - z²) P_p', q' = -p(p+1) P_p
            let q = (T::one() - z * z) * dlp;
            let dq = -T::from_int((p * (p + 1)) as i64) * lp;
            let dz = q / dq;
            z -= dz;
            if dz.abs() <= T::epsilon() * T::lit(2.0) {
                break;
            }
        }
        x[i] = z;
    }
    for i in 0..n / 2 {
        let s = (x[n - 1 - i] - x[i]) / T::lit(2.0);
        x[i] = -s;
        x[n - 1 - i] = s;
    }
    if n % 2 == 1 {
        x[n / 2] = T::zero();
    }
    x
}

/// Lagrange interpolation basis on a fixed node set.
#[derive(Debug, Clone)]
pub struct LagrangeBasis<T> {
    nodes: Vec<T>,
    bary: Vec<T>,
}

impl<T: Real> LagrangeBasis<T> {
    pub fn new(nodes: Vec<T>) -> Self {
        let n = nodes.len();
        let bary = (0..n)
            .map(|j| {
                let prod = (0..n)
                    .filter(|&m| m != j)
                    .fold(T::one(), |acc, m| acc * (nodes[j] - nodes[m]));
                T::one() / prod
            })
            .collect();
        Self { nodes, bary }
    }

    /// Degree-`p` basis on the Gauss–Lobatto points.
    pub fn lobatto(p: usize) -> Self {
        Self::new(gauss_lobatto_points(p + 1))
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Values and first derivatives of every basis function at `x`.
    pub fn eval(&self, x: T) -> (Vec<T>, Vec<T>) {
        let n = self.nodes.len();
        let mut val = vec![T::zero(); n];
        let mut der = vec![T::zero(); n];
        if let Some(hit) = self.nodes.iter().position(|&xn| xn == x) {
            val[hit] = T::one();
            // derivative at a node from the differentiation matrix row
            let mut diag = T::zero();
            for j in 0..n {
                if j != hit {
                    let d = self.bary[j] / self.bary[hit] / (x - self.nodes[j]);
                    der[j] = d;
                    diag -= d;
                }
            }
            der[hit] = diag;
            return (val, der);
        }
        // product form: l_j(x) = w_j ℓ(x)/(x - x_j); l_j'(x) = l_j(x) (Σ_{m≠j} 1/(x - x_m))
        let ell = self.nodes.iter().fold(T::one(), |acc, &xn| acc * (x - xn));
        let sum_inv: T = self.nodes.iter().map(|&xn| T::one() / (x - xn)).sum();
        for j in 0..n {
            let d = x - self.nodes[j];
            val[j] = self.bary[j] * ell / d;
            der[j] = val[j] * (sum_inv - T::one() / d);
        }
        (val, der)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gauss_rule_integrates_polynomials() {
        for n in 1..12 {
            let (x, w) = gauss_legendre::<f64>(n);
            assert_relative_eq!(w.iter().sum::<f64>(), 2.0, epsilon = 1e-14);
            for deg in 0..2 * n {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn lobatto_points_known_values() {
        let x = gauss_lobatto_points::<f64>(3);
        assert_eq!(x, vec![-1.0, 0.0, 1.0]);
        let x = gauss_lobatto_points::<f64>(4);
        assert_relative_eq!(x[2], (1.0f64 / 5.0).sqrt(), epsilon = 1e-15);
        let x = gauss_lobatto_points::<f64>(7);
        assert!(x.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn lagrange_reproduces_polynomials() {
        let b = LagrangeBasis::<f64>::lobatto(6);
        let f = |x: f64| 1.0 - 2.0 * x + 0.5 * x.powi(4) - x.powi(6);
        let df = |x: f64| -2.0 + 2.0 * x.powi(3) - 6.0 * x.powi(5);
        let coef: Vec<f64> = b.nodes().iter().map(|&x| f(x)).collect();
        for &x in &[-1.0, -0.77, -0.1, 0.0, 0.35, 1.0, b.nodes()[2]] {
            let (v, d) = b.eval(x);
            let fv: f64 = v.iter().zip(&coef).map(|(a, c)| a * c).sum();
            let dv: f64 = d.iter().zip(&coef).map(|(a, c)| a * c).sum();
            assert_relative_eq!(fv, f(x), epsilon = 1e-12);
            assert_relative_eq!(dv, df(x), epsilon = 1e-11);
        }
    }
}
