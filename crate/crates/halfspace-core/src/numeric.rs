//! Scalar abstraction shared by the exact (rational) and floating code paths,
//! plus a few quadrature primitives.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

/// A field we can run the combinatorial sums in: `f64` for speed,
/// [`BigRational`] when an identity has to hold with zero tolerance.
pub trait Scalar: Num + Clone + PartialOrd + Debug + Send + Sync + 'static {
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// `x^n` with `0^0 = 1`.
pub fn powu<S: Scalar>(x: &S, n: u32) -> S {
    num_traits::pow::pow(x.clone(), n as usize)
}

/// Exact rational shorthand.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::from_ratio(num, den)
}

pub fn product<S: Scalar, I: IntoIterator<Item = S>>(it: I) -> S {
    it.into_iter().fold(S::one(), |acc, x| acc * x)
}

pub fn is_zero<S: Scalar>(x: &S) -> bool {
    x.is_zero()
}

pub fn one<S: Scalar>() -> S {
    S::one()
}

/// Gauss–Legendre nodes and weights on [-1, 1], ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (z * p1 - p0) / (z * z - 1.0))
}

/// Legendre values P_0..P_{m} at z.
fn legendre_all(m: usize, z: f64) -> Vec<f64> {
    let mut p = vec![0.0; m + 1];
    p[0] = 1.0;
    if m >= 1 {
        p[1] = z;
    }
    for k in 2..=m {
        p[k] = ((2 * k - 1) as f64 * z * p[k - 1] - (k - 1) as f64 * p[k - 2]) / k as f64;
    }
    p
}

/// Galerkin matrix of the kernel sgn(x - y) on the degree-(m-1) polynomial
/// space over [-1, 1], written in the orthonormal nodal coordinates
/// `v_i = sqrt(w_i) f(x_i)` of the m-point Gauss–Legendre rule.
///
/// Plain Nyström discretization of a kernel with a jump on the diagonal only
/// converges algebraically; this matrix is exact on polynomials and exactly
/// antisymmetric, so Fredholm Pfaffians keep spectral convergence.
pub fn sign_galerkin(m: usize) -> Vec<f64> {
    let (x, w) = gauss_legendre(m);
    // orthonormal Legendre values and their integrals from -1
    let mut vals = vec![0.0; m * m];
    let mut ints = vec![0.0; m * m];
    for i in 0..m {
        let p = legendre_all(m, x[i]);
        for k in 0..m {
            let c = ((2 * k + 1) as f64 / 2.0).sqrt();
            vals[k * m + i] = c * p[k];
            let int = if k == 0 {
                x[i] + 1.0
            } else {
                (p[k + 1] - p[k - 1]) / (2 * k + 1) as f64
            };
            ints[k * m + i] = c * int;
        }
    }
    let mut g = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            let s: f64 = (0..m).map(|k| ints[k * m + i] * vals[k * m + j]).sum();
            g[i * m + j] = (w[i] * w[j]).sqrt() * (2.0 * s - 1.0);
        }
    }
    // remove rounding asymmetry
    for i in 0..m {
        g[i * m + i] = 0.0;
        for j in 0..i {
            let a = 0.5 * (g[i * m + j] - g[j * m + i]);
            g[i * m + j] = a;
            g[j * m + i] = -a;
        }
    }
    g
}

pub fn bigrational_one() -> BigRational {
    BigRational::one()
}

pub fn bigrational_zero() -> BigRational {
    BigRational::zero()
}
