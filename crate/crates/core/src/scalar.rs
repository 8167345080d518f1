//! Gaussian rationals: the exact scalar field for every symbolic module.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact rational number.
pub type Rat = BigRational;

/// Build a rational from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// An element of Q(i): `re + im*i` with exact rational parts.
///
/// This is a field; division by a nonzero element is exact.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ScalarQ {
    pub re: Rat,
    pub im: Rat,
}

impl ScalarQ {
    pub fn new(re: Rat, im: Rat) -> Self {
        ScalarQ { re, im }
    }

    pub fn zero() -> Self {
        ScalarQ::default()
    }

    pub fn one() -> Self {
        ScalarQ::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        ScalarQ::new(Rat::zero(), Rat::from(BigInt::from(1)))
    }

    pub fn from_int(n: i64) -> Self {
        ScalarQ::new(Rat::from(BigInt::from(n)), Rat::zero())
    }

    pub fn from_rat(r: Rat) -> Self {
        ScalarQ::new(r, Rat::zero())
    }

    /// `num/den` as a real scalar.
    pub fn rational(num: i64, den: i64) -> Self {
        ScalarQ::from_rat(rat(num, den))
    }

    /// `(re_n/re_d) + (im_n/im_d) i`.
    pub fn complex(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> Self {
        ScalarQ::new(rat(re_n, re_d), rat(im_n, im_d))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ScalarQ::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus `re^2 + im^2`, a nonnegative rational.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "division by zero in ScalarQ");
        ScalarQ::new(&self.re / &n, -(&self.im / &n))
    }

    /// Multiply by a rational.
    pub fn scale_rat(&self, r: &Rat) -> Self {
        ScalarQ::new(&self.re * r, &self.im * r)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut acc = ScalarQ::one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Compact human-readable rendering, e.g. `3/2`, `i`, `1-1/2i`.
    pub fn render(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_part = |f: &mut fmt::Formatter<'_>, im: &Rat, leading: bool| -> fmt::Result {
            let mag = im.abs();
            let sign = if im.is_negative() {
                "-"
            } else if leading {
                ""
            } else {
                "+"
            };
            if mag == Rat::from(BigInt::from(1)) {
                write!(f, "{sign}i")
            } else {
                write!(f, "{sign}{mag}i")
            }
        };
        if self.re.is_zero() {
            im_part(f, &self.im, true)
        } else {
            write!(f, "{}", self.re)?;
            im_part(f, &self.im, false)
        }
    }
}

impl fmt::Debug for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ScalarQ {
            type Output = ScalarQ;
            fn $method(self, rhs: ScalarQ) -> ScalarQ {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ScalarQ> for ScalarQ {
            type Output = ScalarQ;
            fn $method(self, rhs: &ScalarQ) -> ScalarQ {
                (&self).$method(rhs)
            }
        }
        impl $trait<ScalarQ> for &ScalarQ {
            type Output = ScalarQ;
            fn $method(self, rhs: ScalarQ) -> ScalarQ {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&ScalarQ> for &ScalarQ {
    type Output = ScalarQ;
    fn add(self, rhs: &ScalarQ) -> ScalarQ {
        ScalarQ::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}
forward_binop!(Add, add);

impl Sub<&ScalarQ> for &ScalarQ {
    type Output = ScalarQ;
    fn sub(self, rhs: &ScalarQ) -> ScalarQ {
        ScalarQ::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}
forward_binop!(Sub, sub);

impl Mul<&ScalarQ> for &ScalarQ {
    type Output = ScalarQ;
    fn mul(self, rhs: &ScalarQ) -> ScalarQ {
        ScalarQ::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}
forward_binop!(Mul, mul);

impl Div<&ScalarQ> for &ScalarQ {
    type Output = ScalarQ;
    fn div(self, rhs: &ScalarQ) -> ScalarQ {
        self * rhs.inv()
    }
}
forward_binop!(Div, div);

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        -&self
    }
}

impl AddAssign<&ScalarQ> for ScalarQ {
    fn add_assign(&mut self, rhs: &ScalarQ) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ScalarQ> for ScalarQ {
    fn sub_assign(&mut self, rhs: &ScalarQ) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&ScalarQ> for ScalarQ {
    fn mul_assign(&mut self, rhs: &ScalarQ) {
        *self = &*self * rhs;
    }
}

impl From<i64> for ScalarQ {
    fn from(n: i64) -> Self {
        ScalarQ::from_int(n)
    }
}

impl From<Rat> for ScalarQ {
    fn from(r: Rat) -> Self {
        ScalarQ::from_rat(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = ScalarQ::complex(1, 2, -1, 3); // 1/2 - 1/3 i
        let b = ScalarQ::complex(2, 1, 1, 1); // 2 + i
        let prod = &a * &b;
        assert_eq!(&prod / &b, a);
        assert_eq!(&a * &a.inv(), ScalarQ::one());
        assert_eq!(ScalarQ::i().pow(4), ScalarQ::one());
        assert_eq!(ScalarQ::i().pow(2), -ScalarQ::one());
    }

    #[test]
    fn display() {
        assert_eq!(ScalarQ::zero().render(), "0");
        assert_eq!(ScalarQ::rational(-3, 2).render(), "-3/2");
        assert_eq!(ScalarQ::i().render(), "i");
        assert_eq!(ScalarQ::complex(1, 1, -1, 2).render(), "1-1/2i");
    }
}
