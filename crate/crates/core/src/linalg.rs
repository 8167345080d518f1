//! Exact linear algebra over Q(i): dense matrices for the small cases and a
//! span reducer giving ranks, kernels and membership tests for the large
//! sparse ones. No floating point.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::ScalarQ;

/// Dense matrix over Q(i), row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatQ {
    pub rows: usize,
    pub cols: usize,
    data: Vec<ScalarQ>,
}

impl MatQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatQ {
            rows,
            cols,
            data: vec![ScalarQ::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatQ::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ScalarQ::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ScalarQ>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        MatQ {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[ScalarQ] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &MatQ) -> MatQ {
        assert_eq!(self.cols, rhs.rows);
        let mut out = MatQ::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * &rhs[(k, j)];
                    let e = &mut out[(i, j)];
                    *e += &t;
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &ScalarQ) -> MatQ {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= c;
        }
        out
    }

    pub fn add(&self, rhs: &MatQ) -> MatQ {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&rhs.data) {
            *v += w;
        }
        out
    }

    pub fn apply(&self, v: &[ScalarQ]) -> Vec<ScalarQ> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = ScalarQ::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += &(&self[(i, j)] * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ScalarQ::is_zero)
    }

    pub fn rank(&self) -> usize {
        let mut red = SpanReducer::new(self.cols);
        for i in 0..self.rows {
            let row: SparseVec = self
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect();
            red.insert(row);
        }
        red.rank()
    }
}

impl core::ops::Index<(usize, usize)> for MatQ {
    type Output = ScalarQ;
    fn index(&self, (i, j): (usize, usize)) -> &ScalarQ {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for MatQ {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ScalarQ {
        &mut self.data[i * self.cols + j]
    }
}

/// Sparse vector: sorted `(index, value)` pairs, no zero values.
pub type SparseVec = Vec<(usize, ScalarQ)>;

pub fn sparse_from_map(m: BTreeMap<usize, ScalarQ>) -> SparseVec {
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Incremental row-echelon basis of a span of sparse vectors.
///
/// Pivots are normalized to 1, so reduction against the basis is
/// subtraction of scaled rows. Supports rank queries, membership tests and
/// canonical reduction of a vector modulo the span.
pub struct SpanReducer {
    dim: usize,
    /// pivot column -> echelon row with a 1 at that column
    pivots: BTreeMap<usize, SparseVec>,
}

impl SpanReducer {
    pub fn new(dim: usize) -> Self {
        SpanReducer {
            dim,
            pivots: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Full normal form of `v` modulo the span (does not insert). The rows
    /// are kept mutually back-substituted, so the residue has no support on
    /// any pivot column; residues of a family therefore span a complement,
    /// and their rank is the rank modulo the span.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        let mut cur = v;
        loop {
            let Some((j, c)) = cur
                .iter()
                .find(|(j, _)| self.pivots.contains_key(j))
                .map(|(j, c)| (*j, c.clone()))
            else {
                return cur;
            };
            cur = axpy(&cur, &-&c, &self.pivots[&j]);
        }
    }

    /// Reduce and, if a nonzero residue remains, add it to the basis.
    /// Returns true when the vector enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut res = self.reduce(v);
        let Some((lead, coeff)) = res.first().map(|(j, c)| (*j, c.clone())) else {
            return false;
        };
        let inv = coeff.inv();
        for (_, c) in &mut res {
            *c *= &inv;
        }
        // Back-substitute into existing rows so reduction stays one pass.
        let lead_row = res.clone();
        for row in self.pivots.values_mut() {
            if let Some(c) = row.iter().find(|(j, _)| *j == lead).map(|(_, c)| c.clone()) {
                *row = axpy(row, &-&c, &lead_row);
            }
        }
        self.pivots.insert(lead, res);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// The echelon rows spanning the space.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.pivots.values()
    }
}

/// `u + c * v` on sparse vectors.
pub fn axpy(u: &SparseVec, c: &ScalarQ, v: &SparseVec) -> SparseVec {
    if c.is_zero() {
        return u.clone();
    }
    let mut out = SparseVec::with_capacity(u.len() + v.len());
    let (mut i, mut j) = (0, 0);
    while i < u.len() || j < v.len() {
        let take_u = j >= v.len() || (i < u.len() && u[i].0 < v[j].0);
        let take_v = i >= u.len() || (j < v.len() && v[j].0 < u[i].0);
        if take_u {
            out.push(u[i].clone());
            i += 1;
        } else if take_v {
            out.push((v[j].0, c * &v[j].1));
            j += 1;
        } else {
            let s = &u[i].1 + &(c * &v[j].1);
            if !s.is_zero() {
                out.push((u[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of a collection of sparse vectors in a `dim`-dimensional space.
pub fn rank_of(dim: usize, vecs: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut red = SpanReducer::new(dim);
    for v in vecs {
        red.insert(v);
    }
    red.rank()
}

/// Basis of the kernel of the linear map whose j-th column (an element of a
/// `range_dim`-dimensional space) is `cols[j]`.
///
/// Augmented elimination: rows `[col_j | e_j]` keep the invariant
/// "range part = map(augmented part)" under row operations, so echelon rows
/// with vanishing range part read off exact kernel vectors.
pub fn kernel_basis(range_dim: usize, cols: &[SparseVec]) -> Vec<SparseVec> {
    let n = cols.len();
    let mut red = SpanReducer::new(range_dim + n);
    for (j, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        v.push((range_dim + j, ScalarQ::one()));
        red.insert(v);
    }
    red.rows()
        .filter(|row| row.first().is_some_and(|(i, _)| *i >= range_dim))
        .map(|row| {
            row.iter()
                .map(|(i, c)| (i - range_dim, c.clone()))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> ScalarQ {
        ScalarQ::from_int(n)
    }

    #[test]
    fn dense_rank() {
        let m = MatQ::from_rows(vec![
            vec![s(1), s(2), s(3)],
            vec![s(2), s(4), s(6)],
            vec![s(0), s(1), s(1)],
        ]);
        assert_eq!(m.rank(), 2);
        assert_eq!(MatQ::identity(4).rank(), 4);
        assert_eq!(MatQ::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn reducer_membership() {
        let mut red = SpanReducer::new(3);
        red.insert(vec![(0, s(1)), (1, s(1))]);
        red.insert(vec![(1, s(2))]);
        assert_eq!(red.rank(), 2);
        assert!(red.contains(vec![(0, s(3)), (1, s(-5))]));
        assert!(!red.contains(vec![(2, s(1))]));
        // reduction is canonical: residue has no support on pivot columns
        let r = red.reduce(vec![(0, s(1)), (2, s(1))]);
        assert_eq!(r, vec![(2, s(1))]);
    }

    #[test]
    fn kernel_extraction() {
        // map (x, y, z) -> (x + 2y + 3z, 2x + 4y + 6z): kernel is 2-dim
        let cols = vec![
            vec![(0, s(1)), (1, s(2))],
            vec![(0, s(2)), (1, s(4))],
            vec![(0, s(3)), (1, s(6))],
        ];
        let ker = kernel_basis(2, &cols);
        assert_eq!(ker.len(), 2);
        // verify each kernel vector maps to zero
        for k in &ker {
            let mut acc: SparseVec = Vec::new();
            for (j, c) in k {
                acc = axpy(&acc, c, &cols[*j]);
            }
            assert!(acc.is_empty(), "kernel vector has nonzero image");
        }
        // injective map has trivial kernel
        let inj = vec![vec![(0, s(1))], vec![(1, s(1))]];
        assert!(kernel_basis(3, &inj).is_empty());
    }

    #[test]
    fn complex_entries() {
        let i = ScalarQ::i();
        let m = MatQ::from_rows(vec![vec![i.clone(), s(1)], vec![s(-1), i.clone()]]);
        // second row = i * first row, so rank 1
        assert_eq!(m.rank(), 1);
    }
}
