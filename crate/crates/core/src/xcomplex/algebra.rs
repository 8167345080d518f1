//! Finite-dimensional unital associative algebras over Q(i), given by a
//! multiplication tensor, with the reduction machinery for the quotient by
//! the scalar line (d-slots of noncommutative forms live there).

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::ScalarQ;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlgebraError {
    BadShape,
    NotAssociative { i: usize, j: usize, k: usize },
    BrokenUnitLaw { i: usize },
    ZeroUnit,
    NotIdempotent,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::BadShape => write!(f, "multiplication tensor has the wrong shape"),
            AlgebraError::NotAssociative { i, j, k } => {
                write!(f, "associativity fails on basis triple ({i},{j},{k})")
            }
            AlgebraError::BrokenUnitLaw { i } => {
                write!(f, "unit law fails on basis element {i}")
            }
            AlgebraError::ZeroUnit => write!(f, "unit vector is zero"),
            AlgebraError::NotIdempotent => write!(f, "element is not idempotent"),
        }
    }
}

/// `dim`-dimensional unital algebra with `e_i e_j = sum_k m[i][j][k] e_k`.
///
/// Associativity and the unit laws are verified on all basis triples at
/// construction.
#[derive(Clone, PartialEq, Eq)]
pub struct FDAlgebra {
    dim: usize,
    labels: Vec<String>,
    mult: Vec<Vec<Vec<ScalarQ>>>,
    unit: Vec<ScalarQ>,
    /// first index with a nonzero unit coordinate; the reduced space
    /// A / Q(i)*unit keeps every other basis direction
    pivot: usize,
}

impl FDAlgebra {
    pub fn new(
        labels: Vec<String>,
        mult: Vec<Vec<Vec<ScalarQ>>>,
        unit: Vec<ScalarQ>,
    ) -> Result<Arc<Self>, AlgebraError> {
        let dim = labels.len();
        if mult.len() != dim
            || mult.iter().any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim))
            || unit.len() != dim
        {
            return Err(AlgebraError::BadShape);
        }
        let pivot = unit
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(AlgebraError::ZeroUnit)?;
        let alg = FDAlgebra {
            dim,
            labels,
            mult,
            unit,
            pivot,
        };
        // associativity on all basis triples
        for i in 0..dim {
            for j in 0..dim {
                let ij = alg.mult[i][j].clone();
                for k in 0..dim {
                    let jk = alg.mult[j][k].clone();
                    let lhs = alg.mul_vec(&ij, &alg.basis_vec(k));
                    let rhs = alg.mul_vec(&alg.basis_vec(i), &jk);
                    if lhs != rhs {
                        return Err(AlgebraError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        // unit laws
        for i in 0..dim {
            let e = alg.basis_vec(i);
            if alg.mul_vec(&alg.unit, &e) != e || alg.mul_vec(&e, &alg.unit) != e {
                return Err(AlgebraError::BrokenUnitLaw { i });
            }
        }
        Ok(Arc::new(alg))
    }

    /// The ground field as a one-dimensional algebra.
    pub fn complex_line() -> Arc<Self> {
        FDAlgebra::new(
            vec!["1".to_string()],
            vec![vec![vec![ScalarQ::one()]]],
            vec![ScalarQ::one()],
        )
        .expect("builtin")
    }

    /// The two-dimensional split algebra C + C, basis {1, e} with e^2 = e.
    pub fn complex_pair() -> Arc<Self> {
        let z = ScalarQ::zero;
        let o = ScalarQ::one;
        FDAlgebra::new(
            vec!["1".to_string(), "e".to_string()],
            vec![
                vec![vec![o(), z()], vec![z(), o()]],
                vec![vec![z(), o()], vec![z(), o()]],
            ],
            vec![o(), z()],
        )
        .expect("builtin")
    }

    /// 2x2 matrices, basis {I, E12, E21, E22}.
    pub fn mat2() -> Arc<Self> {
        let dim = 4;
        // represent each basis element as a 2x2 array and multiply
        let rep = |i: usize| -> [[i64; 2]; 2] {
            match i {
                0 => [[1, 0], [0, 1]],
                1 => [[0, 1], [0, 0]],
                2 => [[0, 0], [1, 0]],
                _ => [[0, 0], [0, 1]],
            }
        };
        // coordinates of a 2x2 matrix in the basis: m = a I + b E12 + c E21 + d E22
        // gives a = m00, b = m01, c = m10, d = m11 - m00
        let coords = |m: [[i64; 2]; 2]| -> Vec<ScalarQ> {
            vec![
                ScalarQ::from_int(m[0][0]),
                ScalarQ::from_int(m[0][1]),
                ScalarQ::from_int(m[1][0]),
                ScalarQ::from_int(m[1][1] - m[0][0]),
            ]
        };
        let mut mult = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let (a, b) = (rep(i), rep(j));
                let mut prod = [[0i64; 2]; 2];
                for r in 0..2 {
                    for c in 0..2 {
                        for t in 0..2 {
                            prod[r][c] += a[r][t] * b[t][c];
                        }
                    }
                }
                mult[i][j] = coords(prod);
            }
        }
        let mut unit = vec![ScalarQ::zero(); dim];
        unit[0] = ScalarQ::one();
        FDAlgebra::new(
            vec![
                "I".to_string(),
                "E12".to_string(),
                "E21".to_string(),
                "E22".to_string(),
            ],
            mult,
            unit,
        )
        .expect("builtin")
    }

    pub fn builtin(name: &str) -> Option<Arc<Self>> {
        match name {
            "c" => Some(Self::complex_line()),
            "c2" => Some(Self::complex_pair()),
            "m2" => Some(Self::mat2()),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of A / Q(i)*unit.
    pub fn reduced_dim(&self) -> usize {
        self.dim - 1
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[ScalarQ] {
        &self.unit
    }

    pub fn basis_vec(&self, i: usize) -> Vec<ScalarQ> {
        let mut v = vec![ScalarQ::zero(); self.dim];
        v[i] = ScalarQ::one();
        v
    }

    pub fn mul_vec(&self, a: &[ScalarQ], b: &[ScalarQ]) -> Vec<ScalarQ> {
        let mut out = vec![ScalarQ::zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let s = ai * bj;
                for (k, m) in self.mult[i][j].iter().enumerate() {
                    if !m.is_zero() {
                        out[k] += &(&s * m);
                    }
                }
            }
        }
        out
    }

    /// Product of two basis elements as a coefficient vector.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[ScalarQ] {
        &self.mult[i][j]
    }

    /// Reduced-space index r -> A-basis index (skipping the pivot).
    pub fn lift_index(&self, r: usize) -> usize {
        if r < self.pivot {
            r
        } else {
            r + 1
        }
    }

    /// Class of `v` in A / Q(i)*unit as `reduced_dim` coordinates over the
    /// basis `[e_j], j != pivot`.
    pub fn reduce(&self, v: &[ScalarQ]) -> Vec<ScalarQ> {
        let scale = &v[self.pivot] / &self.unit[self.pivot];
        (0..self.dim)
            .filter(|&j| j != self.pivot)
            .map(|j| &v[j] - &(&scale * &self.unit[j]))
            .collect()
    }

    /// Class of the basis element `e_i`.
    pub fn reduce_basis(&self, i: usize) -> Vec<ScalarQ> {
        self.reduce(&self.basis_vec(i))
    }

    /// `e^2 = e` exactly?
    pub fn is_idempotent(&self, e: &[ScalarQ]) -> bool {
        self.mul_vec(e, e) == e
    }
}

impl fmt::Debug for FDAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FDAlgebra(dim {}, basis {:?})", self.dim, self.labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_valid() {
        for name in ["c", "c2", "m2"] {
            assert!(FDAlgebra::builtin(name).is_some(), "{name} missing");
        }
        assert!(FDAlgebra::builtin("quaternions").is_none());
    }

    #[test]
    fn mat2_products() {
        let a = FDAlgebra::mat2();
        // E12 * E21 = E11 = I - E22
        let p = a.mul_basis(1, 2);
        assert_eq!(p[0], ScalarQ::one());
        assert_eq!(p[3], ScalarQ::from_int(-1));
        // E21 * E12 = E22
        let q = a.mul_basis(2, 1);
        assert_eq!(q[3], ScalarQ::one());
        assert!(q[0].is_zero());
        // E12 * E12 = 0
        assert!(a.mul_basis(1, 1).iter().all(ScalarQ::is_zero));
    }

    #[test]
    fn associativity_rejected() {
        // a fake "algebra" with e*e = 1, 1*e = 0 breaks the unit law
        let z = ScalarQ::zero;
        let o = ScalarQ::one;
        let bad = FDAlgebra::new(
            vec!["1".into(), "e".into()],
            vec![
                vec![vec![o(), z()], vec![z(), z()]],
                vec![vec![z(), o()], vec![o(), z()]],
            ],
            vec![o(), z()],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn reduction() {
        let a = FDAlgebra::complex_pair();
        // [1] = 0, [e] is the basis of the reduced line
        assert!(a.reduce_basis(0).iter().all(ScalarQ::is_zero));
        assert_eq!(a.reduce_basis(1), alloc::vec![ScalarQ::one()]);
        assert_eq!(a.lift_index(0), 1);

        let m = FDAlgebra::mat2();
        assert_eq!(m.reduced_dim(), 3);
        assert!(m.reduce(m.unit()).iter().all(ScalarQ::is_zero));
    }

    #[test]
    fn idempotents() {
        let a = FDAlgebra::complex_pair();
        assert!(a.is_idempotent(&a.basis_vec(1)));
        assert!(a.is_idempotent(a.unit()));
        assert!(a.is_idempotent(&[ScalarQ::zero(), ScalarQ::zero()]));
        assert!(!a.is_idempotent(&[ScalarQ::from_int(2), ScalarQ::zero()]));
    }
}
