//! Exact sums of exponential atoms: finite Q(i)-linear combinations of
//! `e^t` with rational exponents `t`.
//!
//! Closed-form entries of `exp(-ad)` matrices (and the coadjoint action
//! built from them) live in this ring when the input coordinates are
//! rational: no rounding happens until an explicit `eval_f64`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{Float, ToPrimitive, Zero};

use crate::scalar::{Rat, ScalarQ};

/// `sum_t c_t e^t` with `t` rational, `c_t` in Q(i); canonical (no zero
/// coefficients, one entry per exponent).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExpSum {
    terms: BTreeMap<Rat, ScalarQ>,
}

impl ExpSum {
    pub fn zero() -> Self {
        ExpSum::default()
    }

    pub fn one() -> Self {
        ExpSum::from_scalar(ScalarQ::one())
    }

    pub fn from_scalar(c: ScalarQ) -> Self {
        let mut s = ExpSum::zero();
        s.add_term(Rat::zero(), c);
        s
    }

    /// The atom `c * e^t`.
    pub fn exp_atom(t: Rat, c: ScalarQ) -> Self {
        let mut s = ExpSum::zero();
        s.add_term(t, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &ScalarQ)> {
        self.terms.iter()
    }

    fn add_term(&mut self, t: Rat, c: ScalarQ) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(t.clone()).or_insert_with(ScalarQ::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&t);
        }
    }

    pub fn scale(&self, c: &ScalarQ) -> Self {
        let mut out = ExpSum::zero();
        for (t, v) in &self.terms {
            out.add_term(t.clone(), v * c);
        }
        out
    }

    /// Numeric evaluation; exponents go through `f64::exp`.
    pub fn eval_f64(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (t, c) in &self.terms {
            let e = Float::exp(t.to_f64().unwrap_or(f64::NAN));
            acc += c.to_c64() * e;
        }
        acc
    }

    pub fn render(&self) -> String {
        alloc::format!("{self}")
    }
}

impl Add<&ExpSum> for &ExpSum {
    type Output = ExpSum;
    fn add(self, rhs: &ExpSum) -> ExpSum {
        let mut out = self.clone();
        for (t, c) in &rhs.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }
}

impl Sub<&ExpSum> for &ExpSum {
    type Output = ExpSum;
    fn sub(self, rhs: &ExpSum) -> ExpSum {
        self + &-rhs
    }
}

impl Mul<&ExpSum> for &ExpSum {
    type Output = ExpSum;
    fn mul(self, rhs: &ExpSum) -> ExpSum {
        let mut out = ExpSum::zero();
        for (t1, c1) in &self.terms {
            for (t2, c2) in &rhs.terms {
                out.add_term(t1 + t2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ExpSum {
    type Output = ExpSum;
    fn neg(self) -> ExpSum {
        let mut out = ExpSum::zero();
        for (t, c) in &self.terms {
            out.add_term(t.clone(), -c);
        }
        out
    }
}

impl fmt::Display for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if t.is_zero() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})e^({t})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn ring_ops_and_eval() {
        // (1 - e^{-1})(1 + e^{-1}) = 1 - e^{-2}
        let a = &ExpSum::one() - &ExpSum::exp_atom(rat(-1, 1), ScalarQ::one());
        let b = &ExpSum::one() + &ExpSum::exp_atom(rat(-1, 1), ScalarQ::one());
        let prod = &a * &b;
        let expect = &ExpSum::one() - &ExpSum::exp_atom(rat(-2, 1), ScalarQ::one());
        assert_eq!(prod, expect);

        let v = prod.eval_f64();
        assert!((v.re - (1.0 - (-2.0f64).exp())).abs() < 1e-15);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn cancellation_is_exact() {
        let a = ExpSum::exp_atom(rat(1, 2), ScalarQ::rational(3, 4));
        let d = &a - &a;
        assert!(d.is_zero());
    }
}
