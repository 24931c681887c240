//! Coefficient fields.
//!
//! Elements of a field may need a runtime context to be constructed (the
//! prime of a prime field), so constants are built from a [`Field::Context`].
//! Arithmetic between two existing values never needs the context.

use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact field of coefficients.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    type Context: Clone + PartialEq + fmt::Debug;

    fn zero(ctx: &Self::Context) -> Self;
    fn one(ctx: &Self::Context) -> Self;
    /// Image of the rational `num/den`; `None` when `den` is zero in the field.
    fn from_ratio(num: &BigInt, den: &BigInt, ctx: &Self::Context) -> Option<Self>;

    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool;

    fn from_i64(n: i64, ctx: &Self::Context) -> Self {
        Self::from_ratio(&BigInt::from(n), &BigInt::one(), ctx).expect("unit denominator")
    }

    /// Canonical textual form: `p/q` (or `p`) for rationals, the residue for prime fields.
    fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

/// Arbitrary-precision rational numbers.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rational {
    type Context = ();

    fn zero(_: &()) -> Self {
        Rational(BigRational::zero())
    }

    fn one(_: &()) -> Self {
        Rational(BigRational::one())
    }

    fn from_ratio(num: &BigInt, den: &BigInt, _: &()) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Rational(BigRational::new(num.clone(), den.clone())))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }

    fn sub(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

/// A prime below 2^31, validated on construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub const MAX: u32 = (1 << 31) - 1;

    pub fn new(p: u32) -> Option<Self> {
        if p < 2 || p > Self::MAX || !is_prime(p) {
            return None;
        }
        Some(PrimeModulus(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

fn is_prime(p: u32) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p % 2 == 0 {
        return false;
    }
    let p = u64::from(p);
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Residue modulo a prime; every value carries its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Fp {
    residue: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: PrimeModulus) -> Self {
        let p = i64::from(modulus.0);
        Fp {
            residue: value.rem_euclid(p) as u32,
            modulus: modulus.0,
        }
    }

    pub fn residue(self) -> u32 {
        self.residue
    }

    fn with(self, residue: u64) -> Self {
        Fp {
            residue: (residue % u64::from(self.modulus)) as u32,
            modulus: self.modulus,
        }
    }

    fn pow(self, mut exp: u64) -> Self {
        let p = u64::from(self.modulus);
        let mut base = u64::from(self.residue);
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        self.with(acc)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

fn big_mod(n: &BigInt, p: u32) -> u32 {
    let r = n.mod_floor(&BigInt::from(p));
    debug_assert!(r.sign() != Sign::Minus);
    r.abs().to_u32().expect("residue below modulus")
}

impl Field for Fp {
    type Context = PrimeModulus;

    fn zero(ctx: &PrimeModulus) -> Self {
        Fp::new(0, *ctx)
    }

    fn one(ctx: &PrimeModulus) -> Self {
        Fp::new(1, *ctx)
    }

    fn from_ratio(num: &BigInt, den: &BigInt, ctx: &PrimeModulus) -> Option<Self> {
        let d = big_mod(den, ctx.0);
        if d == 0 {
            return None;
        }
        let n = Fp {
            residue: big_mod(num, ctx.0),
            modulus: ctx.0,
        };
        let d = Fp {
            residue: d,
            modulus: ctx.0,
        };
        Some(n.mul(&d.inv()?))
    }

    fn is_zero(&self) -> bool {
        self.residue == 0
    }

    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        self.with(u64::from(self.residue) + u64::from(other.residue))
    }

    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        self.with(u64::from(self.residue) + u64::from(self.modulus) - u64::from(other.residue))
    }

    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        self.with(u64::from(self.residue) * u64::from(other.residue))
    }

    fn neg(&self) -> Self {
        self.with(u64::from(self.modulus) - u64::from(self.residue))
    }

    fn inv(&self) -> Option<Self> {
        if self.residue == 0 {
            return None;
        }
        Some(self.pow(u64::from(self.modulus) - 2))
    }

    fn is_one(&self) -> bool {
        self.residue == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_display_uses_slash_form() {
        assert_eq!(Rational::new(3, 2).to_string(), "3/2");
        assert_eq!(Rational::new(-4, 2).to_string(), "-2");
    }

    #[test]
    fn prime_modulus_rejects_composites() {
        assert!(PrimeModulus::new(101).is_some());
        assert!(PrimeModulus::new(2_147_483_647).is_some());
        assert!(PrimeModulus::new(91).is_none());
        assert!(PrimeModulus::new(1).is_none());
    }

    #[test]
    fn fp_inverse_and_ratio() {
        let p = PrimeModulus::new(7).unwrap();
        let three = Fp::new(3, p);
        assert_eq!(three.mul(&three.inv().unwrap()), Fp::one(&p));
        let half = Fp::from_ratio(&BigInt::from(1), &BigInt::from(2), &p).unwrap();
        assert_eq!(half.residue(), 4);
        assert!(Fp::from_ratio(&BigInt::from(1), &BigInt::from(14), &p).is_none());
        assert_eq!(Fp::new(-1, p).residue(), 6);
    }
}
