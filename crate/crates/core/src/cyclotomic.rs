//! Exact arithmetic in `Q(zeta_n)`, `zeta_n = exp(2 pi i / n)`.
//!
//! Numbers are coefficient vectors in the power basis `1, z, ..., z^(phi(n)-1)`
//! reduced modulo the n-th cyclotomic polynomial, so equality is structural.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::{to_pq, Q};

/// Rationals print as `p/q`; otherwise a sum of `c*z^k` with `z = zeta_n`,
/// e.g. `-1 + -1*z^1` for `zeta_3^2`.
impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(x) = self.rational() {
            return f.write_str(&to_pq(&x));
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| if k == 0 { to_pq(c) } else { format!("{}*z^{k}", to_pq(c)) })
            .collect();
        write!(f, "{} (z = zeta_{})", terms.join(" + "), self.n)
    }
}

/// Coefficients (constant term first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: usize) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut p: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    p[0] = -BigInt::one();
    p[n] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = exact_div(&p, &cyclotomic_poly(d));
    }
    p
}

fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn cached_poly(n: usize) -> Vec<Q> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<Q>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard.entry(n).or_insert_with(|| cyclotomic_poly(n).into_iter().map(Q::from_integer).collect()).clone()
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    n: usize,
    coeffs: Vec<Q>,
}

impl CyclotomicNumber {
    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: vec![Q::zero(); euler_phi(n)] }
    }

    pub fn from_rational(n: usize, x: Q) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = x;
        z
    }

    pub fn from_int(n: usize, x: i64) -> Self {
        Self::from_rational(n, Q::from_integer(BigInt::from(x)))
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta_pow(n: usize, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Q::zero(); e + 1];
        poly[e] = Q::one();
        Self::reduce(n, poly)
    }

    fn reduce(n: usize, mut poly: Vec<Q>) -> Self {
        let phi_poly = cached_poly(n);
        let deg = phi_poly.len() - 1;
        while poly.len() > deg {
            let top = poly.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - deg;
            for (j, c) in phi_poly.iter().take(deg).enumerate() {
                poly[shift + j] -= &top * c;
            }
        }
        poly.resize(deg, Q::zero());
        Self { n, coeffs: poly }
    }

    pub fn conductor(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, when the number lies in `Q`.
    pub fn rational(&self) -> Option<Q> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Image under `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let mut poly = vec![Q::zero(); self.n];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[(self.n - j) % self.n] += c;
        }
        Self::reduce(self.n, poly)
    }

    /// Embeds into `Q(zeta_m)` for `n | m`.
    pub fn lift(&self, m: usize) -> Self {
        assert!(m.is_multiple_of(self.n), "cannot lift Q(zeta_{}) into Q(zeta_{m})", self.n);
        let step = m / self.n;
        let mut poly = vec![Q::zero(); self.coeffs.len() * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        Self::reduce(m, poly)
    }

    pub fn scale(&self, x: &Q) -> Self {
        Self { n: self.n, coeffs: self.coeffs.iter().map(|c| c * x).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::from_int(self.n, 1), |acc, _| &acc * self)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.n, other.n, "mixed cyclotomic conductors");
    }
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: Self) -> CyclotomicNumber {
        self.check(rhs);
        CyclotomicNumber { n: self.n, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: Self) -> CyclotomicNumber {
        self.check(rhs);
        CyclotomicNumber { n: self.n, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: Self) -> CyclotomicNumber {
        self.check(rhs);
        let mut poly = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                poly[i + j] += a * b;
            }
        }
        CyclotomicNumber::reduce(self.n, poly)
    }
}

impl Add for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: Self) -> CyclotomicNumber {
        &self + &rhs
    }
}

impl Mul for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: Self) -> CyclotomicNumber {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn cyclotomic_polys() {
        let as_i64 = |n| -> Vec<i64> { cyclotomic_poly(n).iter().map(|c| c.try_into().unwrap()).collect() };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in [2usize, 3, 4, 6, 12] {
            let s =
                (0..n as i64).map(|k| CyclotomicNumber::zeta_pow(n, k)).fold(CyclotomicNumber::zero(n), |a, b| a + b);
            assert!(s.is_zero(), "n = {n}");
            assert_eq!(CyclotomicNumber::zeta_pow(n, n as i64), CyclotomicNumber::from_int(n, 1));
        }
    }

    #[test]
    fn conjugate_pairs_are_real() {
        let z = CyclotomicNumber::zeta_pow(3, 1);
        let s = &z + &z.conj();
        assert_eq!(s.rational(), Some(qi(-1)));
        assert_eq!((&z * &z.conj()).rational(), Some(qi(1)));
        assert!(z.rational().is_none());
        let i = CyclotomicNumber::zeta_pow(4, 1);
        assert_eq!((&i * &i).rational(), Some(qi(-1)));
    }

    #[test]
    fn lifting_preserves_values() {
        let z3 = CyclotomicNumber::zeta_pow(3, 1);
        assert_eq!(z3.lift(6), CyclotomicNumber::zeta_pow(6, 2));
        let half = CyclotomicNumber::from_rational(2, q(1, 2));
        assert_eq!(half.lift(12).rational(), Some(q(1, 2)));
        assert_eq!(CyclotomicNumber::zeta_pow(2, 1).lift(4), CyclotomicNumber::zeta_pow(4, 2));
    }
}
