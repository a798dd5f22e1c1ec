//! Integer Laurent polynomials with arbitrary-precision coefficients.

use std::fmt::{self, Display};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A Laurent polynomial `sum coeffs[k] * x^(lo + k)` over the integers.
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    lo: i32,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, BigInt::one())
    }

    pub fn monomial(exp: i32, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { lo: exp, coeffs: vec![c] }
    }

    pub fn from_coeffs(lo: i32, coeffs: Vec<i64>) -> Self {
        let mut p = LaurentPoly { lo, coeffs: coeffs.into_iter().map(BigInt::from).collect() };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.lo += lead_zeros as i32;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.lo)
    }

    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.lo + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        let k = exp - self.lo;
        if k < 0 || k as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (self.lo + k as i32, c))
    }

    pub fn add_term(&mut self, exp: i32, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        if self.is_zero() {
            self.lo = exp;
            self.coeffs = vec![c.clone()];
            return;
        }
        if exp < self.lo {
            let mut pad = vec![BigInt::zero(); (self.lo - exp) as usize];
            pad.append(&mut self.coeffs);
            self.coeffs = pad;
            self.lo = exp;
        }
        let k = (exp - self.lo) as usize;
        if k >= self.coeffs.len() {
            self.coeffs.resize(k + 1, BigInt::zero());
        }
        self.coeffs[k] += c;
        self.trim();
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, &(-c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let lo = self.lo + other.lo;
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut p = LaurentPoly { lo, coeffs };
        p.trim();
        p
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { lo: self.lo, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { lo: self.lo, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { lo: self.lo + k, coeffs: self.coeffs.clone() }
    }

    /// Exact division; panics when the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let mut rem = self.clone();
        let mut q = Self::zero();
        let dl = d.max_exp().unwrap();
        let dc = d.coeff(dl);
        while !rem.is_zero() {
            let rl = rem.max_exp().unwrap();
            let rc = rem.coeff(rl);
            let (qc, r) = num_integer::div_rem(rc, dc.clone());
            assert!(r.is_zero(), "inexact polynomial division");
            let term = LaurentPoly::monomial(rl - dl, qc);
            rem = rem.sub(&term.mul(d));
            q = q.add(&term);
            if !rem.is_zero() && rem.max_exp().unwrap() >= rl {
                panic!("inexact polynomial division");
            }
        }
        q
    }

    /// Substitute x -> 1/x.
    pub fn reversed(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let hi = self.max_exp().unwrap();
        let coeffs = self.coeffs.iter().rev().cloned().collect();
        let mut p = LaurentPoly { lo: -hi, coeffs };
        p.trim();
        p
    }

    pub fn eval_int(&self, x: i64) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in self.terms() {
            assert!(e >= 0 || x == 1 || x == -1, "negative exponent at non-unit");
            let p = if x == 1 {
                BigInt::one()
            } else if x == -1 {
                if e.rem_euclid(2) == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                }
            } else {
                BigInt::from(x).pow(e as u32)
            };
            acc += c * p;
        }
        acc
    }

    /// Evaluate at x = sqrt(-1), returning (real, imaginary) parts.
    pub fn eval_sqrt_minus_one(&self) -> (BigInt, BigInt) {
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        for (e, c) in self.terms() {
            match e.rem_euclid(4) {
                0 => re += c,
                1 => im += c,
                2 => re -= c,
                3 => im -= c,
                _ => unreachable!(),
            }
        }
        (re, im)
    }

    pub fn coeff_abs_sum(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Coefficients from lowest to highest exponent with the range.
    pub fn coeff_list(&self) -> (i32, Vec<BigInt>) {
        (self.lo, self.coeffs.clone())
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (e, c) in self.terms() {
            let mag = c.abs();
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else if c.is_negative() {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                s.push_str(&mag.to_string());
            }
            if e != 0 {
                s.push_str(var);
                if e != 1 {
                    s.push_str(&format!("^{e}"));
                }
            }
        }
        s
    }
}

impl Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("q"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_roundtrip() {
        let p = LaurentPoly::from_coeffs(-2, vec![1, 0, -3, 2]);
        let q = LaurentPoly::from_coeffs(0, vec![2, 1]);
        let pq = p.mul(&q);
        assert_eq!(pq.div_exact(&q), p);
        assert_eq!(p.sub(&p), LaurentPoly::zero());
        assert_eq!(p.add(&p), p.scale(&BigInt::from(2)));
    }

    #[test]
    fn reversal_and_eval() {
        let p = LaurentPoly::from_coeffs(-1, vec![1, -1, 1]);
        assert_eq!(p.reversed(), p);
        assert_eq!(p.eval_int(1), BigInt::from(1));
        assert_eq!(p.eval_int(-1), BigInt::from(-3));
    }

    #[test]
    fn display_form() {
        let p = LaurentPoly::from_coeffs(-1, vec![-1, 2, 1]);
        assert_eq!(p.to_string_var("t"), "-t^-1 + 2 + t");
    }
}
