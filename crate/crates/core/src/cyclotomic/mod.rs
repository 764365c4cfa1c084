//! Exact arithmetic in the cyclotomic field Q(ζₙ).
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(n)-1}` after
//! reduction modulo the n-th cyclotomic polynomial Φₙ, so two elements are
//! equal as field elements exactly when their coefficient vectors are equal.
//! All arithmetic is over arbitrary-precision rationals.

mod poly;
pub(crate) mod serde_impl;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use poly::{cyclotomic_poly, reduce_mod_monic, Poly};

pub(crate) use poly::is_integral;
pub use poly::totient;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("exponent vector has length {got}, expected the conductor {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(usize, usize),
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("division by zero in Q(ζ{0})")]
    DivisionByZero(usize),
    #[error("{l} is not a unit modulo {n}; ζ ↦ ζ^{l} is not an automorphism")]
    NotAUnit { l: i64, n: usize },
    #[error("cannot lift from conductor {from} to {to}: {from} does not divide {to}")]
    BadLift { from: usize, to: usize },
}

/// An exact element of the cyclotomic field Q(ζₙ), ζₙ = e^{2πi/n}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    n: usize,
    coeffs: Vec<BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl CycNum {
    /// Builds the canonical form of `Σ values[k]·ζₙᵏ` for `k = 0..len`.
    ///
    /// Exponents at or above `n` wrap around since ζₙⁿ = 1.
    fn from_powers(n: usize, values: Vec<BigRational>) -> Self {
        let mut folded = if values.len() > n {
            let mut f = vec![BigRational::zero(); n];
            for (k, v) in values.into_iter().enumerate() {
                f[k % n] += v;
            }
            f
        } else {
            values
        };
        let phi = cyclotomic_poly(n);
        if folded.len() < phi.len() - 1 {
            folded.resize(phi.len() - 1, BigRational::zero());
        }
        reduce_mod_monic(&mut folded, &phi);
        CycNum { n, coeffs: folded }
    }

    /// Lifts `Σ v_k ζₙᵏ` (`v` of length exactly `n`) into canonical form.
    pub fn from_exponent_vector(n: usize, v: &[BigRational]) -> Result<Self, CycError> {
        if n == 0 {
            return Err(CycError::ZeroConductor);
        }
        if v.len() != n {
            return Err(CycError::LengthMismatch { expected: n, got: v.len() });
        }
        Ok(Self::from_powers(n, v.to_vec()))
    }

    /// Integer convenience form of [`CycNum::from_exponent_vector`].
    pub fn from_int_exponents(n: usize, v: &[i64]) -> Result<Self, CycError> {
        let v: Vec<BigRational> = v.iter().map(|&x| rat(x)).collect();
        Self::from_exponent_vector(n, &v)
    }

    pub fn zero(n: usize) -> Self {
        Self::from_rational(n, BigRational::zero())
    }

    pub fn one(n: usize) -> Self {
        Self::from_rational(n, BigRational::one())
    }

    pub fn from_integer(n: usize, v: i64) -> Self {
        Self::from_rational(n, rat(v))
    }

    pub fn from_rational(n: usize, q: BigRational) -> Self {
        assert!(n > 0, "conductor must be positive");
        let mut coeffs = vec![BigRational::zero(); totient(n)];
        coeffs[0] = q;
        CycNum { n, coeffs }
    }

    /// ζₙᵏ. Negative exponents are normalized to `n - (|k| mod n)`.
    pub fn zeta_pow(n: usize, k: i64) -> Self {
        assert!(n > 0, "conductor must be positive");
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = BigRational::one();
        Self::from_powers(n, v)
    }

    /// The conductor n.
    pub fn conductor(&self) -> usize {
        self.n
    }

    /// Power-basis coefficients, length φ(n).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn check_same(&self, other: &CycNum) -> Result<(), CycError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(CycError::ConductorMismatch(self.n, other.n))
        }
    }

    pub fn try_add(&self, other: &CycNum) -> Result<CycNum, CycError> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycNum { n: self.n, coeffs })
    }

    pub fn try_sub(&self, other: &CycNum) -> Result<CycNum, CycError> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycNum { n: self.n, coeffs })
    }

    pub fn try_mul(&self, other: &CycNum) -> Result<CycNum, CycError> {
        self.check_same(other)?;
        let d = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        reduce_mod_monic(&mut prod, &cyclotomic_poly(self.n));
        Ok(CycNum { n: self.n, coeffs: prod })
    }

    pub fn scale(&self, q: &BigRational) -> CycNum {
        CycNum { n: self.n, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Multiplies by ζₙᵏ without a full product.
    pub fn mul_zeta_pow(&self, k: i64) -> CycNum {
        let n = self.n as i64;
        let mut v = vec![BigRational::zero(); self.n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[(i as i64 + k).rem_euclid(n) as usize] += c;
            }
        }
        Self::from_powers(self.n, v)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against Φₙ.
    pub fn invert(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero(self.n));
        }
        let phi = cyclotomic_poly(self.n);
        let modulus = Poly::new(phi.iter().cloned().map(BigRational::from_integer).collect());

        // Invariant: s_i · self ≡ r_i (mod Φₙ).
        let (mut r0, mut r1) = (modulus, Poly::new(self.coeffs.clone()));
        let (mut s0, mut s1) = (Poly::new(Vec::new()), Poly::new(vec![BigRational::one()]));
        while r1.degree() != Some(0) {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            // Φₙ is irreducible, so the remainder sequence cannot vanish first.
            assert!(!r1.is_zero(), "Φ{} shares a factor with a nonzero element", self.n);
        }
        let inv = s1.scale(&r1.0[0].recip());
        Ok(Self::from_powers(self.n, inv.0))
    }

    /// The Galois automorphism φ_ℓ: ζₙ ↦ ζₙ^ℓ.
    pub fn galois(&self, l: i64) -> Result<CycNum, CycError> {
        let n = self.n as i64;
        let lr = l.rem_euclid(n);
        if lr.gcd(&n) != 1 {
            return Err(CycError::NotAUnit { l, n: self.n });
        }
        let mut v = vec![BigRational::zero(); self.n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[((i as i64) * lr).rem_euclid(n) as usize] += c;
            }
        }
        Ok(Self::from_powers(self.n, v))
    }

    /// Complex conjugation, i.e. φ_{n-1}.
    pub fn conj(&self) -> CycNum {
        self.galois(self.n as i64 - 1).expect("n - 1 is always a unit")
    }

    /// Re-expresses the element in Q(ζₘ) for a multiple `m` of the conductor.
    pub fn lift(&self, m: usize) -> Result<CycNum, CycError> {
        if m == 0 || m % self.n != 0 {
            return Err(CycError::BadLift { from: self.n, to: m });
        }
        if m == self.n {
            return Ok(self.clone());
        }
        let step = m / self.n;
        let mut v = vec![BigRational::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * step] = c.clone();
        }
        Ok(Self::from_powers(m, v))
    }

    /// Evaluates at ζₙ = e^{2πi/n} in double precision.
    pub fn embed(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = c.to_f64().expect("coefficient out of f64 range");
            acc += root_of_unity(self.n, k) * x;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// True when the element is fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// True when every power-basis coefficient is an integer, i.e. the
    /// element lies in Z[ζₙ].
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(is_integral)
    }
}

/// e^{2πik/n}, with the angle reduced exactly before it reaches floating point.
pub fn root_of_unity(n: usize, k: usize) -> Complex64 {
    let k = k % n;
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    // Exact values at the quarter points keep embeddings of ±1, ±i clean.
    if 4 * k % n == 0 {
        return match 4 * k / n {
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
    Complex64::new(theta.cos(), theta.sin())
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[{}]({})", self.n, self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "ζ{}^{k}", self.n)?,
                (_, false) => write!(f, "{mag}·ζ{}^{k}", self.n)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&CycNum> for &CycNum {
            type Output = CycNum;
            /// Panics on a conductor mismatch; use the `try_` form to handle it.
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}
