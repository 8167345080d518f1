//! Divisors on the rational projective line and the Riemann-Roch equality,
//! verified by brute-force exact linear algebra on the spaces `L(D)`.
//!
//! A rational function with poles bounded by `D` is `g/h` with `h` the
//! monic product over the positive part of `D`; the space `L(D)` is cut out
//! of the numerator coefficients by exact vanishing conditions at the
//! negative part, so its dimension is a nullity over Q.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::linalg::MatQ;
use crate::scalar::{Rat, ScalarQ};

/// A point of the projective line over Q.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum P1Point {
    Finite(Rat),
    Infinity,
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(a) => write!(f, "[{a}]"),
            P1Point::Infinity => write!(f, "[inf]"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DivisorError {
    RepeatedPoint(P1Point),
}

impl fmt::Display for DivisorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorError::RepeatedPoint(p) => write!(f, "point {p} listed twice"),
        }
    }
}

/// A divisor: finitely many points with integer multiplicities.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Divisor {
    points: Vec<(P1Point, i64)>,
}

impl Divisor {
    pub fn new(points: Vec<(P1Point, i64)>) -> Result<Self, DivisorError> {
        let mut seen: Vec<&P1Point> = Vec::new();
        for (p, _) in &points {
            if seen.contains(&p) {
                return Err(DivisorError::RepeatedPoint(p.clone()));
            }
            seen.push(p);
        }
        Ok(Divisor {
            points: points.into_iter().filter(|(_, m)| *m != 0).collect(),
        })
    }

    pub fn empty() -> Self {
        Divisor::default()
    }

    /// The canonical divisor `-2 [inf]` of the projective line.
    pub fn canonical() -> Self {
        Divisor {
            points: vec![(P1Point::Infinity, -2)],
        }
    }

    pub fn degree(&self) -> i64 {
        self.points.iter().map(|(_, m)| m).sum()
    }

    pub fn points(&self) -> &[(P1Point, i64)] {
        &self.points
    }

    pub fn neg(&self) -> Divisor {
        Divisor {
            points: self.points.iter().map(|(p, m)| (p.clone(), -m)).collect(),
        }
    }

    pub fn add(&self, rhs: &Divisor) -> Divisor {
        let mut pts = self.points.clone();
        for (p, m) in &rhs.points {
            match pts.iter_mut().find(|(q, _)| q == p) {
                Some((_, mm)) => *mm += m,
                None => pts.push((p.clone(), *m)),
            }
        }
        Divisor {
            points: pts.into_iter().filter(|(_, m)| *m != 0).collect(),
        }
    }

    pub fn render(&self) -> String {
        if self.points.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (p, m)) in self.points.iter().enumerate() {
            if k == 0 {
                out.push_str(&format!("{m}*{p}"));
            } else if *m < 0 {
                out.push_str(&format!(" - {}*{p}", -m));
            } else {
                out.push_str(&format!(" + {m}*{p}"));
            }
        }
        out
    }
}

/// Riemann-Roch number `d - g + 1` for a degree-`d` divisor on a genus-`g`
/// curve.
pub fn rr_number(d: i64, g: u64) -> i64 {
    d - g as i64 + 1
}

/// `l(D) = dim L(D)` over Q by explicit constraint linear algebra.
pub fn l_of(divisor: &Divisor) -> usize {
    let mut pole_deg: i64 = 0; // deg h = sum of positive finite multiplicities
    let mut m_inf: i64 = 0;
    let mut zeros: Vec<(Rat, i64)> = Vec::new(); // points with m < 0
    for (p, m) in &divisor.points {
        match p {
            P1Point::Infinity => m_inf = *m,
            P1Point::Finite(a) => {
                if *m > 0 {
                    pole_deg += m;
                } else if *m < 0 {
                    zeros.push((a.clone(), -m));
                }
            }
        }
    }
    // numerator degree bound: ord_inf(g/h) = deg h - deg g >= -m_inf
    let nmax = pole_deg + m_inf;
    if nmax < 0 {
        return 0;
    }
    let ncols = (nmax + 1) as usize;
    // rows: g^{(j)}(a) = 0 for j < order, per vanishing point
    let mut rows: Vec<Vec<ScalarQ>> = Vec::new();
    for (a, order) in &zeros {
        for j in 0..*order {
            let mut row = vec![ScalarQ::zero(); ncols];
            for (k, cell) in row.iter_mut().enumerate() {
                let k = k as i64;
                if k < j {
                    continue;
                }
                // d^j/dx^j x^k at a = k (k-1) ... (k-j+1) a^{k-j}
                let mut coeff = Rat::one();
                for t in 0..j {
                    coeff *= Rat::from_integer(BigInt::from(k - t));
                }
                let mut apow = Rat::one();
                for _ in 0..(k - j) {
                    apow *= a;
                }
                *cell = ScalarQ::from_rat(coeff * apow);
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return ncols;
    }
    let m = MatQ::from_rows(rows);
    ncols - m.rank()
}

/// Outcome of the Riemann-Roch verification on a single divisor.
#[derive(Clone, Debug)]
pub struct RrReport {
    pub divisor: String,
    pub degree: i64,
    pub l_d: usize,
    pub l_k_minus_d: usize,
    pub lhs: i64,
    pub rhs: i64,
    pub pass: bool,
}

/// Check `l(D) - l(K - D) = deg D + 1` with `K = -2 [inf]`.
pub fn riemann_roch_p1_check(divisor: &Divisor) -> RrReport {
    let l_d = l_of(divisor);
    let k_minus_d = Divisor::canonical().add(&divisor.neg());
    let l_kd = l_of(&k_minus_d);
    let lhs = l_d as i64 - l_kd as i64;
    let rhs = divisor.degree() + 1;
    RrReport {
        divisor: divisor.render(),
        degree: divisor.degree(),
        l_d,
        l_k_minus_d: l_kd,
        lhs,
        rhs,
        pass: lhs == rhs,
    }
}
