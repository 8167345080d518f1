//! Laurent polynomials over Q(i), square matrices of them, and the integer
//! winding pairing `g -> residue of tr(g^{-1} dg)`.
//!
//! An invertible Laurent matrix has unit determinant `c t^k`; the trace of
//! `g^{-1} g'` is computed as `tr(adj(g) g') / det(g)` (division by a
//! monomial is exact), and its residue — the coefficient of `t^{-1}` — is
//! the winding number `k`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::ScalarQ;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LaurentError {
    NotSquare,
    NotInvertible(String),
    Empty,
}

impl fmt::Display for LaurentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentError::NotSquare => write!(f, "matrix is not square"),
            LaurentError::NotInvertible(d) => {
                write!(f, "matrix is not invertible over Laurent polynomials (det = {d})")
            }
            LaurentError::Empty => write!(f, "empty matrix"),
        }
    }
}

/// A Laurent polynomial `sum_k c_k t^k` with finite support.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, ScalarQ>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::term(0, ScalarQ::one())
    }

    /// `c t^k`.
    pub fn term(k: i64, c: ScalarQ) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(k, c);
        p
    }

    pub fn t_pow(k: i64) -> Self {
        LaurentPoly::term(k, ScalarQ::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> ScalarQ {
        self.coeffs.get(&k).cloned().unwrap_or_else(ScalarQ::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&i64, &ScalarQ)> {
        self.coeffs.iter()
    }

    fn add_term(&mut self, k: i64, c: ScalarQ) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(ScalarQ::zero);
        *e += &c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn add(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add(&rhs.scale(&ScalarQ::from_int(-1)))
    }

    pub fn scale(&self, c: &ScalarQ) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (k, v) in &self.coeffs {
            out.add_term(*k, v * c);
        }
        out
    }

    pub fn mul(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (k1, c1) in &self.coeffs {
            for (k2, c2) in &rhs.coeffs {
                out.add_term(k1 + k2, c1 * c2);
            }
        }
        out
    }

    /// Formal derivative in t.
    pub fn derivative(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (k, c) in &self.coeffs {
            if *k != 0 {
                out.add_term(k - 1, c * &ScalarQ::from_int(*k));
            }
        }
        out
    }

    /// Is this a unit `c t^k`? Returns its data if so.
    pub fn as_monomial(&self) -> Option<(i64, ScalarQ)> {
        if self.coeffs.len() == 1 {
            let (k, c) = self.coeffs.iter().next().expect("nonempty");
            Some((*k, c.clone()))
        } else {
            None
        }
    }

    /// Exact division by a monomial `c t^k`.
    pub fn div_monomial(&self, k: i64, c: &ScalarQ) -> LaurentPoly {
        let inv = c.inv();
        let mut out = LaurentPoly::zero();
        for (e, v) in &self.coeffs {
            out.add_term(e - k, v * &inv);
        }
        out
    }

    pub fn render(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A square matrix of Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentMatrix {
    pub size: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn new(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, LaurentError> {
        let size = rows.len();
        if size == 0 {
            return Err(LaurentError::Empty);
        }
        if rows.iter().any(|r| r.len() != size) {
            return Err(LaurentError::NotSquare);
        }
        Ok(LaurentMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(size: usize) -> Self {
        let mut m = LaurentMatrix {
            size,
            entries: vec![LaurentPoly::zero(); size * size],
        };
        for i in 0..size {
            m.entries[i * size + i] = LaurentPoly::one();
        }
        m
    }

    /// Diagonal matrix of powers of t.
    pub fn diag_t_powers(powers: &[i64]) -> Self {
        let size = powers.len();
        let mut m = LaurentMatrix {
            size,
            entries: vec![LaurentPoly::zero(); size * size],
        };
        for (i, &k) in powers.iter().enumerate() {
            m.entries[i * size + i] = LaurentPoly::t_pow(k);
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        self.entries[i * self.size + j] = p;
    }

    pub fn mul(&self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.size, rhs.size);
        let n = self.size;
        let mut out = LaurentMatrix {
            size: n,
            entries: vec![LaurentPoly::zero(); n * n],
        };
        for i in 0..n {
            for j in 0..n {
                let mut acc = LaurentPoly::zero();
                for k in 0..n {
                    acc = acc.add(&self.at(i, k).mul(rhs.at(k, j)));
                }
                out.entries[i * n + j] = acc;
            }
        }
        out
    }

    /// Entrywise derivative.
    pub fn derivative(&self) -> LaurentMatrix {
        LaurentMatrix {
            size: self.size,
            entries: self.entries.iter().map(LaurentPoly::derivative).collect(),
        }
    }

    /// Determinant by cofactor expansion (sizes here are small).
    pub fn det(&self) -> LaurentPoly {
        let n = self.size;
        if n == 1 {
            return self.at(0, 0).clone();
        }
        let mut acc = LaurentPoly::zero();
        for j in 0..n {
            let e = self.at(0, j);
            if e.is_zero() {
                continue;
            }
            let m = self.minor(0, j).det();
            let signed = if j % 2 == 0 { m } else { m.scale(&ScalarQ::from_int(-1)) };
            acc = acc.add(&e.mul(&signed));
        }
        acc
    }

    fn minor(&self, row: usize, col: usize) -> LaurentMatrix {
        let n = self.size;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in 0..n {
            if i == row {
                continue;
            }
            for j in 0..n {
                if j == col {
                    continue;
                }
                entries.push(self.at(i, j).clone());
            }
        }
        LaurentMatrix {
            size: n - 1,
            entries,
        }
    }

    /// Adjugate matrix: `adj(g) g = det(g) I`.
    pub fn adjugate(&self) -> LaurentMatrix {
        let n = self.size;
        if n == 1 {
            return LaurentMatrix::identity(1);
        }
        let mut out = LaurentMatrix {
            size: n,
            entries: vec![LaurentPoly::zero(); n * n],
        };
        for i in 0..n {
            for j in 0..n {
                let m = self.minor(i, j).det();
                let signed = if (i + j) % 2 == 0 {
                    m
                } else {
                    m.scale(&ScalarQ::from_int(-1))
                };
                // adjugate transposes the cofactor matrix
                out.entries[j * n + i] = signed;
            }
        }
        out
    }
}

/// The winding number of an invertible Laurent matrix: the residue of
/// `tr(g^{-1} g')`, always an integer (the t-degree of the determinant).
pub fn chern1_winding(g: &LaurentMatrix) -> Result<i64, LaurentError> {
    let det = g.det();
    let Some((k, c)) = det.as_monomial() else {
        return Err(LaurentError::NotInvertible(det.render()));
    };
    // tr(adj(g) g') / det
    let adj = g.adjugate();
    let gp = g.derivative();
    let prod = adj.mul(&gp);
    let mut tr = LaurentPoly::zero();
    for i in 0..g.size {
        tr = tr.add(prod.at(i, i));
    }
    let series = tr.div_monomial(k, &c);
    let residue = series.coeff(-1);
    // the residue equals the t-degree of the determinant, an exact integer
    debug_assert!(residue.is_real() && residue.re.is_integer());
    Ok(i64::try_from(&residue.re.to_integer()).unwrap_or(i64::MAX))
}
