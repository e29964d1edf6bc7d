//! Exact field scalars: `F_p` residues for a prime `p`, or arbitrary-precision
//! rationals when `p = 0`. No floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::AlgebraError;

/// An exact element of the coefficient field.
///
/// The field is carried by the value itself so that arithmetic never needs an
/// ambient context. Mixing scalars from different fields is a programming
/// error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Canonical residue in `[0, p)` for a prime `p`.
    Fp { p: u32, val: u32 },
    /// Exact rational (the `p = 0` field).
    Rat(BigRational),
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { p, val } => write!(f, "{val} (mod {p})"),
            Scalar::Rat(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { val, .. } => write!(f, "{val}"),
            Scalar::Rat(r) => write!(f, "{r}"),
        }
    }
}

impl Scalar {
    pub fn zero(p: u32) -> Scalar {
        Scalar::from_int(p, 0)
    }

    pub fn one(p: u32) -> Scalar {
        Scalar::from_int(p, 1)
    }

    /// Reduce an integer into the field.
    pub fn from_int(p: u32, n: i64) -> Scalar {
        if p == 0 {
            Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
        } else {
            let m = n.rem_euclid(p as i64) as u32;
            Scalar::Fp { p, val: m }
        }
    }

    pub fn from_rational(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `(-1)^k` in the field.
    pub fn sign_pow(p: u32, k: i64) -> Scalar {
        if k.rem_euclid(2) == 0 {
            Scalar::one(p)
        } else {
            -&Scalar::one(p)
        }
    }

    pub fn prime(&self) -> u32 {
        match self {
            Scalar::Fp { p, .. } => *p,
            Scalar::Rat(_) => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { val, .. } => *val == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { val, .. } => *val == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    /// Multiplicative inverse. Inverting zero is an explicit error.
    pub fn inv(&self) -> Result<Scalar, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        match self {
            Scalar::Fp { p, val } => {
                // Extended Euclid on (val, p).
                let (mut r0, mut r1) = (*val as i64, *p as i64);
                let (mut s0, mut s1) = (1i64, 0i64);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (s0, s1) = (s1, s0 - q * s1);
                }
                debug_assert_eq!(r0, 1, "modulus must be prime");
                Ok(Scalar::from_int(*p, s0))
            }
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip())),
        }
    }

    /// Small-integer view, used by tests and displays. For `F_p` this is the
    /// canonical residue; for rationals it is defined only on integers.
    pub fn to_integer(&self) -> Option<i64> {
        match self {
            Scalar::Fp { val, .. } => Some(*val as i64),
            Scalar::Rat(r) => {
                if r.is_integer() {
                    i64::try_from(r.to_integer()).ok()
                } else {
                    None
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Fp { .. } => false,
            Scalar::Rat(r) => r.is_negative(),
        }
    }

    fn check_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.prime(),
            other.prime(),
            "scalars from different fields"
        );
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        match (self, rhs) {
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                p: *p,
                val: ((*a as u64 + *b as u64) % (*p as u64)) as u32,
            },
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        match (self, rhs) {
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                p: *p,
                val: ((*a as u64 * *b as u64) % (*p as u64)) as u32,
            },
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: if *val == 0 { 0 } else { p - val },
            },
            Scalar::Rat(r) => Scalar::Rat(-r),
        }
    }
}

/// `(-1)^{#inversions}` of a sequence of pairwise distinct indices, as a
/// scalar of the field `F_p` (or `Q` for `p = 0`).
pub fn signature(p: u32, seq: &[usize]) -> Result<Scalar, AlgebraError> {
    let mut inversions = 0i64;
    for i in 0..seq.len() {
        for j in (i + 1)..seq.len() {
            if seq[i] == seq[j] {
                return Err(AlgebraError::RepeatedIndex(seq[i]));
            }
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    Ok(Scalar::sign_pow(p, inversions))
}
