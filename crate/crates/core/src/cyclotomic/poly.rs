//! Dense univariate polynomials over Q, just enough for reduction and
//! inversion modulo a cyclotomic polynomial.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending degree order. Trailing zeros are trimmed, so the
/// zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly(pub(crate) Vec<BigRational>);

impl Poly {
    pub(crate) fn new(mut coeffs: Vec<BigRational>) -> Self {
        trim(&mut coeffs);
        Poly(coeffs)
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub(crate) fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    pub(crate) fn sub(&self, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        let mut out = vec![BigRational::zero(); len];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] -= c;
        }
        Poly::new(out)
    }

    pub(crate) fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::new(out)
    }

    pub(crate) fn scale(&self, k: &BigRational) -> Poly {
        Poly::new(self.0.iter().map(|c| c * k).collect())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub(crate) fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.lead().recip();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Poly(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for shift in (0..rem.len() - dd).rev() {
            if rem[shift + dd].is_zero() {
                continue;
            }
            let factor = &rem[shift + dd] * &lead_inv;
            for (i, c) in divisor.0.iter().enumerate() {
                if !c.is_zero() {
                    rem[shift + i] -= &factor * c;
                }
            }
            quot[shift] = factor;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }
}

fn trim(coeffs: &mut Vec<BigRational>) {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
}

/// Reduce `coeffs` (ascending powers of x) in place modulo the monic integer
/// polynomial `modulus`, leaving exactly `deg(modulus)` coefficients.
pub(crate) fn reduce_mod_monic(coeffs: &mut Vec<BigRational>, modulus: &[BigInt]) {
    let d = modulus.len() - 1;
    for top in (d..coeffs.len()).rev() {
        if coeffs[top].is_zero() {
            continue;
        }
        let factor = std::mem::replace(&mut coeffs[top], BigRational::zero());
        for (i, m) in modulus[..d].iter().enumerate() {
            if !m.is_zero() {
                coeffs[top - d + i] -= &factor * m;
            }
        }
    }
    coeffs.resize(d, BigRational::zero());
}

/// The n-th cyclotomic polynomial, integer coefficients in ascending order.
///
/// Computed as (x^n - 1) divided by every Φ_d with d a proper divisor of n.
/// Results are memoized for the lifetime of the process.
pub(crate) fn cyclotomic_poly(n: usize) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<BigInt>>>>> = OnceLock::new();
    assert!(n > 0, "cyclotomic polynomial of order 0");
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return Arc::clone(p);
    }

    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = -BigInt::one();
    num[n] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        let phi_d = cyclotomic_poly(d);
        num = exact_div_monic(&num, &phi_d);
    }

    let p = Arc::new(num);
    cache.lock().unwrap().insert(n, Arc::clone(&p));
    p
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for shift in (0..quot.len()).rev() {
        let factor = rem[shift + dd].clone();
        if factor.is_zero() {
            continue;
        }
        for (i, c) in den.iter().enumerate() {
            rem[shift + i] -= &factor * c;
        }
        quot[shift] = factor;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact cyclotomic division");
    quot
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub(crate) fn is_integral(q: &BigRational) -> bool {
    q.denom().abs().is_one()
}
