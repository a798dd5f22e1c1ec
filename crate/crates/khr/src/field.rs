//! Exact field scalars: GF(2), GF(p), and arbitrary-precision rationals.
//!
//! All arithmetic is exact; there is no floating point anywhere in the crate.
//! Rationals are kept in a small (i64/i64) representation and promoted to
//! arbitrary precision only when a value leaves the i64 range.

use std::fmt::{self, Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact field arithmetic, the scalar interface for all linear algebra.
pub trait Field: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    /// Whether elimination should keep rows as primitive integer vectors
    /// (cross-multiplied "fraction-free" reductions) instead of scaling
    /// pivots to one. Controls coefficient growth over the rationals.
    const FRACTION_FREE: bool = false;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn field_name() -> String;

    /// Rescale a sparse row to its canonical form (no-op except over Q,
    /// where rows are reduced to primitive integer vectors). Returns the
    /// factor g with row_new = g * row_old.
    fn normalize_row(_row: &mut [(u32, Self)]) -> Self {
        Self::one()
    }
}

/// The two-element field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct F2(pub bool);

impl Field for F2 {
    fn zero() -> Self {
        F2(false)
    }
    fn one() -> Self {
        F2(true)
    }
    fn from_int(n: i64) -> Self {
        F2(n & 1 != 0)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn add(&self, other: &Self) -> Self {
        F2(self.0 ^ other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        F2(self.0 ^ other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        F2(self.0 & other.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn inv(&self) -> Self {
        assert!(self.0, "inverse of zero in GF(2)");
        *self
    }
    fn field_name() -> String {
        "GF(2)".into()
    }
}

impl Debug for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as u8)
    }
}

impl Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as u8)
    }
}

/// Prime field GF(P) for an odd prime modulus fixed at compile time.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    fn pow(base: u64, mut e: u64) -> u64 {
        let mut acc: u128 = 1;
        let mut b = base as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % P as u128;
            }
            b = b * b % P as u128;
            e >>= 1;
        }
        acc as u64
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_int(n: i64) -> Self {
        Fp(n.rem_euclid(P as i64) as u64)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp((self.0 + other.0) % P)
    }
    fn sub(&self, other: &Self) -> Self {
        Fp((self.0 + P - other.0) % P)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp((self.0 as u128 * other.0 as u128 % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero in GF({P})");
        Fp(Self::pow(self.0, P - 2))
    }
    fn field_name() -> String {
        format!("GF({P})")
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Exact rational with a fast inline representation.
///
/// `Small(n, d)` keeps `d > 0` and `gcd(n, d) = 1`; values that leave the
/// i64 range are promoted to a boxed `BigRational` and demoted back when
/// they shrink.
#[derive(Clone, PartialEq)]
pub enum Rat {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rat {
    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::make(n as i128, d as i128)
    }

    fn make(mut n: i128, mut d: i128) -> Self {
        debug_assert!(d != 0);
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            return Rat::Small(0, 1);
        }
        let g = n.gcd(&d);
        n /= g;
        d /= g;
        if let (Ok(sn), Ok(sd)) = (i64::try_from(n), i64::try_from(d)) {
            Rat::Small(sn, sd)
        } else {
            Rat::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d))))
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    fn from_big(b: BigRational) -> Self {
        if let (Some(n), Some(d)) = (b.numer().to_i64(), b.denom().to_i64()) {
            Rat::Small(n, d)
        } else {
            Rat::Big(Box::new(b))
        }
    }

    pub fn numer_big(&self) -> BigInt {
        match self {
            Rat::Small(n, _) => BigInt::from(*n),
            Rat::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom_big(&self) -> BigInt {
        match self {
            Rat::Small(_, d) => BigInt::from(*d),
            Rat::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::Small(_, d) => *d == 1,
            Rat::Big(b) => b.is_integer(),
        }
    }
}

impl Field for Rat {
    const FRACTION_FREE: bool = true;

    fn zero() -> Self {
        Rat::Small(0, 1)
    }
    fn one() -> Self {
        Rat::Small(1, 1)
    }
    fn from_int(n: i64) -> Self {
        Rat::Small(n, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rat::make(a * d + c * b, b * d)
            }
            _ => Rat::from_big(self.to_big() + other.to_big()),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rat::make(a * d - c * b, b * d)
            }
            _ => Rat::from_big(self.to_big() - other.to_big()),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                Rat::make(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() * other.to_big()),
        }
    }

    fn neg(&self) -> Self {
        match self {
            Rat::Small(n, d) => Rat::make(-(*n as i128), *d as i128),
            Rat::Big(b) => Rat::from_big(-(**b).clone()),
        }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational");
        match self {
            Rat::Small(n, d) => Rat::make(*d as i128, *n as i128),
            Rat::Big(b) => Rat::from_big(b.recip()),
        }
    }

    fn field_name() -> String {
        "Q".into()
    }

    /// Reduce a row to a primitive integer vector: clear denominators,
    /// divide by the numerator content, make the leading entry positive.
    fn normalize_row(row: &mut [(u32, Self)]) -> Self {
        if row.is_empty() {
            return Rat::one();
        }
        let all_small = row.iter().all(|(_, v)| matches!(v, Rat::Small(_, _)));
        if all_small {
            let mut lcm: i128 = 1;
            for (_, v) in row.iter() {
                if let Rat::Small(_, d) = v {
                    lcm = lcm.lcm(&(*d as i128));
                    if lcm > i64::MAX as i128 {
                        return normalize_row_big(row);
                    }
                }
            }
            let mut content: i128 = 0;
            let mut scaled: Vec<i128> = Vec::with_capacity(row.len());
            for (_, v) in row.iter() {
                if let Rat::Small(n, d) = v {
                    let s = *n as i128 * (lcm / *d as i128);
                    content = content.gcd(&s);
                    scaled.push(s);
                } else {
                    unreachable!()
                }
            }
            debug_assert!(content != 0);
            if scaled[0] < 0 {
                content = -content;
            }
            for ((_, v), s) in row.iter_mut().zip(scaled) {
                *v = Rat::make(s / content, 1);
            }
            Rat::make(lcm, content)
        } else {
            normalize_row_big(row)
        }
    }
}

fn normalize_row_big(row: &mut [(u32, Rat)]) -> Rat {
    let mut lcm = BigInt::one();
    for (_, v) in row.iter() {
        lcm = lcm.lcm(&v.denom_big());
    }
    let mut content = BigInt::zero();
    let mut scaled: Vec<BigInt> = Vec::with_capacity(row.len());
    for (_, v) in row.iter() {
        let s = v.numer_big() * (&lcm / v.denom_big());
        content = content.gcd(&s);
        scaled.push(s);
    }
    debug_assert!(!content.is_zero());
    if scaled[0].is_negative() {
        content = -content;
    }
    for ((_, v), s) in row.iter_mut().zip(scaled) {
        *v = Rat::from_big(BigRational::from_integer(s / &content));
    }
    Rat::from_big(BigRational::new(lcm, content))
}

impl Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(b) => write!(f, "{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_small_arithmetic() {
        let a = Rat::from_ratio(1, 2);
        let b = Rat::from_ratio(1, 3);
        assert_eq!(a.add(&b), Rat::from_ratio(5, 6));
        assert_eq!(a.sub(&b), Rat::from_ratio(1, 6));
        assert_eq!(a.mul(&b), Rat::from_ratio(1, 6));
        assert_eq!(a.inv(), Rat::from_int(2));
        assert_eq!(a.neg(), Rat::from_ratio(-1, 2));
        assert_eq!(Rat::from_ratio(2, -4), Rat::from_ratio(-1, 2));
    }

    #[test]
    fn rat_promotes_and_demotes() {
        let big = Rat::from_int(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Rat::Big(_)));
        let back = sq.mul(&big.inv()).mul(&big.inv());
        assert_eq!(back, Rat::from_int(1));
        assert!(matches!(back, Rat::Small(_, _)));
    }

    #[test]
    fn rat_row_normalization_is_primitive() {
        let mut row = vec![
            (0u32, Rat::from_ratio(-2, 3)),
            (1u32, Rat::from_ratio(4, 3)),
            (2u32, Rat::from_int(-2)),
        ];
        Rat::normalize_row(&mut row);
        assert_eq!(
            row.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>(),
            vec![Rat::from_int(1), Rat::from_int(-2), Rat::from_int(3)]
        );
    }

    #[test]
    fn fp_inverse() {
        type F5 = Fp<5>;
        for x in 1..5u64 {
            let v = F5::from_int(x as i64);
            assert_eq!(v.mul(&v.inv()), F5::one());
        }
        assert_eq!(F5::from_int(-3), Fp::<5>(2));
    }

    #[test]
    fn f2_ops() {
        let o = F2::one();
        let z = F2::zero();
        assert_eq!(o.add(&o), z);
        assert_eq!(o.mul(&o), o);
        assert_eq!(o.neg(), o);
    }
}
