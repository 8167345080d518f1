//! Finite-dimensional Lie algebras given by structure constants, with the
//! adjoint action and `exp(-ad)` both as a closed form (real affine algebra)
//! and as a truncated series.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::expnum::ExpSum;
use crate::linalg::MatQ;
use crate::scalar::{Rat, ScalarQ};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LieError {
    MismatchedAlgebras,
    BadCoordLength { expected: usize, got: usize },
    BrokenAntisymmetry { i: usize, j: usize },
    BadCoeffLength { i: usize, j: usize },
    IndexOutOfRange { index: usize, dim: usize },
    NotAffR,
    NonRationalCoords,
    ZeroTerms,
}

impl fmt::Display for LieError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieError::MismatchedAlgebras => write!(f, "elements belong to different algebras"),
            LieError::BadCoordLength { expected, got } => {
                write!(f, "coordinate vector has length {got}, algebra dimension is {expected}")
            }
            LieError::BrokenAntisymmetry { i, j } => {
                write!(f, "structure constants violate antisymmetry at pair ({i},{j})")
            }
            LieError::BadCoeffLength { i, j } => {
                write!(f, "bracket coefficient vector for ({i},{j}) has wrong length")
            }
            LieError::IndexOutOfRange { index, dim } => {
                write!(f, "basis index {index} out of range for dimension {dim}")
            }
            LieError::NotAffR => write!(f, "operation requires the real affine algebra"),
            LieError::NonRationalCoords => {
                write!(f, "operation requires real rational coordinates")
            }
            LieError::ZeroTerms => write!(f, "series mode requires at least one term"),
        }
    }
}

/// A Lie algebra of dimension `dim` with `[e_i, e_j] = sum_k c_{ij}^k e_k`.
///
/// Antisymmetry is enforced at construction; the Jacobi identity is
/// checkable exactly via [`LieAlgebraSpec::jacobi_check`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebraSpec {
    basis: Vec<String>,
    dim: usize,
    /// (i, j) -> coefficient vector, stored for i < j only.
    structure: BTreeMap<(usize, usize), Vec<ScalarQ>>,
}

impl LieAlgebraSpec {
    /// Build from explicit brackets. Pairs may be given in any order; a pair
    /// listed both ways must be antisymmetric-consistent. Missing pairs
    /// bracket to zero.
    pub fn new(
        basis: Vec<String>,
        brackets: Vec<(usize, usize, Vec<ScalarQ>)>,
    ) -> Result<Self, LieError> {
        let dim = basis.len();
        let mut structure: BTreeMap<(usize, usize), Vec<ScalarQ>> = BTreeMap::new();
        for (i, j, coeffs) in brackets {
            if i >= dim {
                return Err(LieError::IndexOutOfRange { index: i, dim });
            }
            if j >= dim {
                return Err(LieError::IndexOutOfRange { index: j, dim });
            }
            if coeffs.len() != dim {
                return Err(LieError::BadCoeffLength { i, j });
            }
            if i == j {
                if coeffs.iter().any(|c| !c.is_zero()) {
                    return Err(LieError::BrokenAntisymmetry { i, j });
                }
                continue;
            }
            let (key, stored): ((usize, usize), Vec<ScalarQ>) = if i < j {
                ((i, j), coeffs)
            } else {
                ((j, i), coeffs.iter().map(|c| -c).collect())
            };
            if let Some(prev) = structure.get(&key) {
                if *prev != stored {
                    return Err(LieError::BrokenAntisymmetry { i, j });
                }
            } else {
                structure.insert(key, stored);
            }
        }
        Ok(LieAlgebraSpec { basis, dim, structure })
    }

    /// The real affine algebra: basis (X, Y), [X, Y] = Y.
    pub fn aff_r() -> Arc<Self> {
        Arc::new(
            LieAlgebraSpec::new(
                vec!["X".to_string(), "Y".to_string()],
                vec![(0, 1, vec![ScalarQ::zero(), ScalarQ::one()])],
            )
            .expect("builtin"),
        )
    }

    /// The complex affine algebra as a real 4-dimensional algebra: basis
    /// (X1, X2, Y1, Y2) with
    /// [X1,Y1] = Y1, [X1,Y2] = Y2, [X2,Y1] = Y2, [X2,Y2] = -Y1.
    pub fn aff_c() -> Arc<Self> {
        let z = ScalarQ::zero;
        let o = ScalarQ::one;
        Arc::new(
            LieAlgebraSpec::new(
                vec![
                    "X1".to_string(),
                    "X2".to_string(),
                    "Y1".to_string(),
                    "Y2".to_string(),
                ],
                vec![
                    (0, 2, vec![z(), z(), o(), z()]),
                    (0, 3, vec![z(), z(), z(), o()]),
                    (1, 2, vec![z(), z(), z(), o()]),
                    (1, 3, vec![z(), z(), -o(), z()]),
                ],
            )
            .expect("builtin"),
        )
    }

    /// Look up a builtin algebra by name ("affR" or "affC").
    pub fn builtin(name: &str) -> Option<Arc<Self>> {
        match name {
            "affR" => Some(Self::aff_r()),
            "affC" => Some(Self::aff_c()),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    /// Structure coefficients of `[e_i, e_j]`.
    pub fn bracket_coeffs(&self, i: usize, j: usize) -> Vec<ScalarQ> {
        if i == j {
            return vec![ScalarQ::zero(); self.dim];
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        match self.structure.get(&key) {
            None => vec![ScalarQ::zero(); self.dim],
            Some(c) if flip => c.iter().map(|x| -x).collect(),
            Some(c) => c.clone(),
        }
    }

    /// Exact triple-loop verification of the Jacobi identity.
    pub fn jacobi_check(&self) -> bool {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]
                    let mut total = vec![ScalarQ::zero(); n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = self.bracket_coeffs(b, c);
                        for (m, cm) in inner.iter().enumerate() {
                            if cm.is_zero() {
                                continue;
                            }
                            let outer = self.bracket_coeffs(a, m);
                            for (t, ct) in outer.iter().enumerate() {
                                total[t] += &(cm * ct);
                            }
                        }
                    }
                    if total.iter().any(|c| !c.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn element(self: &Arc<Self>, coords: Vec<ScalarQ>) -> Result<AlgElement, LieError> {
        if coords.len() != self.dim {
            return Err(LieError::BadCoordLength {
                expected: self.dim,
                got: coords.len(),
            });
        }
        Ok(AlgElement {
            alg: Arc::clone(self),
            coords,
        })
    }

    pub fn basis_element(self: &Arc<Self>, i: usize) -> Result<AlgElement, LieError> {
        if i >= self.dim {
            return Err(LieError::IndexOutOfRange { index: i, dim: self.dim });
        }
        let mut coords = vec![ScalarQ::zero(); self.dim];
        coords[i] = ScalarQ::one();
        self.element(coords)
    }
}

/// An element of a [`LieAlgebraSpec`], as exact coordinates in its basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgElement {
    alg: Arc<LieAlgebraSpec>,
    coords: Vec<ScalarQ>,
}

impl AlgElement {
    pub fn algebra(&self) -> &Arc<LieAlgebraSpec> {
        &self.alg
    }

    pub fn coords(&self) -> &[ScalarQ] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(ScalarQ::is_zero)
    }

    fn same_algebra(&self, other: &AlgElement) -> Result<(), LieError> {
        if *self.alg == *other.alg {
            Ok(())
        } else {
            Err(LieError::MismatchedAlgebras)
        }
    }
}

/// `[a, b]` per the structure constants; bilinear and antisymmetric.
pub fn bracket(a: &AlgElement, b: &AlgElement) -> Result<AlgElement, LieError> {
    a.same_algebra(b)?;
    let alg = &a.alg;
    let n = alg.dim();
    let mut out = vec![ScalarQ::zero(); n];
    for (i, ai) in a.coords.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coords.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let c = alg.bracket_coeffs(i, j);
            let scale = ai * bj;
            for (k, ck) in c.iter().enumerate() {
                if !ck.is_zero() {
                    out[k] += &(&scale * ck);
                }
            }
        }
    }
    alg.element(out)
}

/// Matrix of `v -> [u, v]` in the algebra basis (columns are `[u, e_j]`).
pub fn ad_matrix(u: &AlgElement) -> MatQ {
    let alg = &u.alg;
    let n = alg.dim();
    let mut m = MatQ::zeros(n, n);
    for j in 0..n {
        for (i, ui) in u.coords.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let c = alg.bracket_coeffs(i, j);
            for (k, ck) in c.iter().enumerate() {
                if !ck.is_zero() {
                    let t = ui * ck;
                    let e = &mut m[(k, j)];
                    *e += &t;
                }
            }
        }
    }
    m
}

/// Truncated series `sum_{n<terms} (-ad_u)^n / n!`, exact over Q(i).
pub fn exp_neg_ad_series(u: &AlgElement, terms: usize) -> Result<MatQ, LieError> {
    if terms == 0 {
        return Err(LieError::ZeroTerms);
    }
    let n = u.alg.dim();
    let neg_ad = ad_matrix(u).scale(&ScalarQ::from_int(-1));
    let mut acc = MatQ::identity(n);
    let mut power = MatQ::identity(n);
    let mut factorial = Rat::from(BigInt::from(1));
    for k in 1..terms {
        power = power.mul(&neg_ad);
        factorial *= Rat::from(BigInt::from(k as i64));
        let coeff = ScalarQ::from_rat(Rat::from(BigInt::from(1)) / factorial.clone());
        acc = acc.add(&power.scale(&coeff));
    }
    Ok(acc)
}

/// Closed form of `exp(-ad_{aX+bY})` on the real affine algebra:
/// `[[1, 0], [L, e^-a]]` with `L = b(1-e^-a)/a` (and `L = b` at `a = 0`),
/// as exact exponential sums. Coordinates must be real rationals.
pub fn exp_neg_ad_closed(u: &AlgElement) -> Result<[[ExpSum; 2]; 2], LieError> {
    if *u.alg != *LieAlgebraSpec::aff_r() {
        return Err(LieError::NotAffR);
    }
    let (alpha, beta) = aff_r_params(u)?;
    let ll = closed_l(&alpha, &beta);
    let e_neg_alpha = ExpSum::exp_atom(-alpha, ScalarQ::one());
    Ok([
        [ExpSum::one(), ExpSum::zero()],
        [ll, e_neg_alpha],
    ])
}

/// `L = b(1-e^-a)/a`, with the `a = 0` limit `L = b`.
pub(crate) fn closed_l(alpha: &Rat, beta: &Rat) -> ExpSum {
    if alpha.is_zero() {
        ExpSum::from_scalar(ScalarQ::from_rat(beta.clone()))
    } else {
        let q = ScalarQ::from_rat(beta / alpha);
        &ExpSum::from_scalar(q.clone()) - &ExpSum::exp_atom(-alpha.clone(), q)
    }
}

/// Extract real rational `(alpha, beta)` from an element of the real affine
/// algebra.
pub fn aff_r_params(u: &AlgElement) -> Result<(Rat, Rat), LieError> {
    if u.coords.len() != 2 {
        return Err(LieError::NotAffR);
    }
    let a = &u.coords[0];
    let b = &u.coords[1];
    if !a.is_real() || !b.is_real() {
        return Err(LieError::NonRationalCoords);
    }
    Ok((a.re.clone(), b.re.clone()))
}

/// Assemble the complex parameters `alpha = x1 + i x2`, `beta = y1 + i y2`
/// of an element of the complex affine algebra in the basis
/// (X1, X2, Y1, Y2). Coordinates must be real.
pub fn aff_c_params(a: &AlgElement) -> Result<(ScalarQ, ScalarQ), LieError> {
    if a.coords.len() != 4 {
        return Err(LieError::MismatchedAlgebras);
    }
    if a.coords.iter().any(|c| !c.is_real()) {
        return Err(LieError::NonRationalCoords);
    }
    let i = ScalarQ::i();
    let alpha = &a.coords[0] + &(&i * &a.coords[1]);
    let beta = &a.coords[2] + &(&i * &a.coords[3]);
    Ok((alpha, beta))
}
