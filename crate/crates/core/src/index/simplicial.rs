//! Finite simplicial complexes with exact boundary ranks: Betti numbers,
//! Euler characteristic, and the index of the combinatorial Dirac operator
//! `d + delta` from even to odd cochains.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::{rank_of, SparseVec};
use crate::scalar::ScalarQ;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ComplexError {
    UnsortedSimplex(Vec<usize>),
    MissingFace(Vec<usize>),
    DuplicateSimplex(Vec<usize>),
    BoundarySquareNonzero,
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::UnsortedSimplex(s) => {
                write!(f, "simplex {s:?} is not strictly increasing")
            }
            ComplexError::MissingFace(s) => write!(f, "face {s:?} is not in the complex"),
            ComplexError::DuplicateSimplex(s) => write!(f, "simplex {s:?} listed twice"),
            ComplexError::BoundarySquareNonzero => write!(f, "boundary of boundary is nonzero"),
        }
    }
}

/// An abstract simplicial complex: simplices per dimension as strictly
/// increasing vertex lists; all faces must be present and the boundary
/// squares to zero (checked at construction).
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    /// simplices[k] = sorted list of k-simplices
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn new(mut simplices: Vec<Vec<Vec<usize>>>) -> Result<Self, ComplexError> {
        while simplices.last().is_some_and(Vec::is_empty) {
            simplices.pop();
        }
        for dim_list in &mut simplices {
            for s in dim_list.iter() {
                if s.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(ComplexError::UnsortedSimplex(s.clone()));
                }
            }
            dim_list.sort();
            if dim_list.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::DuplicateSimplex(dim_list[0].clone()));
            }
        }
        let complex = SimplicialComplex { simplices };
        // every face of every simplex must be present
        for k in 1..complex.simplices.len() {
            for s in &complex.simplices[k] {
                for drop in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(drop);
                    if complex.index_of(k - 1, &face).is_none() {
                        return Err(ComplexError::MissingFace(face));
                    }
                }
            }
        }
        // boundary of boundary must vanish identically
        for k in 2..complex.simplices.len() {
            let bk = complex.boundary_rows(k);
            let bk1 = complex.boundary_rows(k - 1);
            // compose: for each k-simplex column, apply both boundaries
            for col in 0..complex.simplices[k].len() {
                let mut acc: BTreeMap<usize, ScalarQ> = BTreeMap::new();
                for (mid, c1) in &bk[col] {
                    for (low, c2) in &bk1[*mid] {
                        let e = acc.entry(*low).or_insert_with(ScalarQ::zero);
                        *e += &(c1 * c2);
                    }
                }
                if acc.values().any(|v| !v.is_zero()) {
                    return Err(ComplexError::BoundarySquareNonzero);
                }
            }
        }
        Ok(complex)
    }

    /// A single point.
    pub fn point() -> Self {
        SimplicialComplex::new(vec![vec![vec![0]]]).expect("builtin")
    }

    /// The cycle graph on `n` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let verts = (0..n).map(|i| vec![i]).collect();
        let edges = (0..n)
            .map(|i| {
                let mut e = vec![i, (i + 1) % n];
                e.sort();
                e
            })
            .collect();
        SimplicialComplex::new(vec![verts, edges]).expect("builtin")
    }

    /// The boundary of the octahedron: 6 vertices, 12 edges, 8 triangles.
    pub fn octahedron() -> Self {
        // vertex pairs (0,1), (2,3), (4,5) are antipodal
        let verts = (0..6).map(|i| vec![i]).collect();
        let mut edges = Vec::new();
        for i in 0..6 {
            for j in (i + 1)..6 {
                if (i / 2) != (j / 2) {
                    edges.push(vec![i, j]);
                }
            }
        }
        let mut faces = Vec::new();
        for a in 0..2 {
            for b in 2..4 {
                for c in 4..6 {
                    faces.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::new(vec![verts, edges, faces]).expect("builtin")
    }

    /// The 7-vertex triangulation of the torus: 7 vertices, 21 edges,
    /// 14 triangles, faces `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
    pub fn torus7() -> Self {
        let verts = (0..7).map(|i| vec![i]).collect();
        let mut edges = Vec::new();
        for i in 0..7 {
            for j in (i + 1)..7 {
                edges.push(vec![i, j]);
            }
        }
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for i in 0..7usize {
            for offs in [[0usize, 1, 3], [0, 2, 3]] {
                let mut t: Vec<usize> = offs.iter().map(|o| (i + o) % 7).collect();
                t.sort();
                faces.push(t);
            }
        }
        SimplicialComplex::new(vec![verts, edges, faces]).expect("builtin")
    }

    pub fn max_dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    fn index_of(&self, k: usize, s: &[usize]) -> Option<usize> {
        self.simplices
            .get(k)?
            .binary_search_by(|t| t.as_slice().cmp(s))
            .ok()
    }

    /// Boundary of each k-simplex as a sparse vector over (k-1)-simplices:
    /// `d[v0..vk] = sum_i (-1)^i [v0..^vi..vk]`.
    fn boundary_rows(&self, k: usize) -> Vec<SparseVec> {
        self.simplices(k)
            .iter()
            .map(|s| {
                let mut row: Vec<(usize, ScalarQ)> = (0..s.len())
                    .map(|drop| {
                        let mut face = s.clone();
                        face.remove(drop);
                        let idx = self.index_of(k - 1, &face).expect("validated");
                        let sign = if drop % 2 == 0 { 1 } else { -1 };
                        (idx, ScalarQ::from_int(sign))
                    })
                    .collect();
                row.sort_by_key(|(i, _)| *i);
                row
            })
            .collect()
    }

    /// Rank of the k-th boundary map (from k-chains to (k-1)-chains).
    fn boundary_rank(&self, k: usize) -> usize {
        if k == 0 || k > self.max_dim() {
            return 0;
        }
        rank_of(self.count(k - 1), self.boundary_rows(k))
    }

    /// Betti numbers over Q via exact ranks.
    pub fn betti(&self) -> Vec<usize> {
        (0..=self.max_dim())
            .map(|k| self.count(k) - self.boundary_rank(k) - self.boundary_rank(k + 1))
            .collect()
    }
}

/// Euler characteristic: the alternating sum of Betti numbers, which must
/// match the alternating face count exactly.
pub fn euler_characteristic(complex: &SimplicialComplex) -> i64 {
    let via_betti: i64 = complex
        .betti()
        .iter()
        .enumerate()
        .map(|(k, b)| if k % 2 == 0 { *b as i64 } else { -(*b as i64) })
        .sum();
    let via_faces: i64 = (0..=complex.max_dim())
        .map(|k| {
            let n = complex.count(k) as i64;
            if k % 2 == 0 {
                n
            } else {
                -n
            }
        })
        .sum();
    assert_eq!(via_betti, via_faces, "rank bookkeeping violated");
    via_betti
}

/// Index data of the even-to-odd Dirac operator `D = d + delta` on
/// cochains, with `delta` the adjoint of `d` in the orthonormal simplex
/// basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeReport {
    pub index: i64,
    pub euler: i64,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
}

/// `ind(d + delta) = dim ker - dim coker`, computed by one exact rank.
///
/// The kernel consists of the even harmonic cochains, so `kernel_dim`
/// equals the sum of even Betti numbers (and similarly for the cokernel);
/// both facts are byproducts and are asserted against [`euler_characteristic`].
pub fn hodge_index(complex: &SimplicialComplex) -> HodgeReport {
    let maxd = complex.max_dim();
    // cochain offsets: even degrees into the domain, odd into the codomain
    let mut even_offset = BTreeMap::new();
    let mut odd_offset = BTreeMap::new();
    let (mut dim_even, mut dim_odd) = (0usize, 0usize);
    for k in 0..=maxd {
        if k % 2 == 0 {
            even_offset.insert(k, dim_even);
            dim_even += complex.count(k);
        } else {
            odd_offset.insert(k, dim_odd);
            dim_odd += complex.count(k);
        }
    }
    // D maps C^{2j} by d into C^{2j+1} (rows of the coboundary = columns of
    // the boundary) and by delta into C^{2j-1} (the boundary itself).
    // Build columns of D indexed by even cochain basis elements.
    let mut cols: Vec<BTreeMap<usize, ScalarQ>> =
        vec![BTreeMap::new(); dim_even];
    for k in (0..=maxd).step_by(2) {
        let base = even_offset[&k];
        if k + 1 <= maxd {
            // d-part: coboundary C^k -> C^{k+1}; entry (s', s) = boundary
            // coefficient of s in d(s')
            let rows = complex.boundary_rows(k + 1);
            let obase = odd_offset[&(k + 1)];
            for (j, row) in rows.iter().enumerate() {
                for (i, c) in row {
                    cols[base + i]
                        .entry(obase + j)
                        .and_modify(|e| *e += c)
                        .or_insert_with(|| c.clone());
                }
            }
        }
        if k >= 1 {
            // delta-part: adjoint of d: C^k -> C^{k-1} is the boundary map
            let rows = complex.boundary_rows(k);
            let obase = odd_offset[&(k - 1)];
            for (j, row) in rows.iter().enumerate() {
                for (i, c) in row {
                    cols[base + j]
                        .entry(obase + i)
                        .and_modify(|e| *e += c)
                        .or_insert_with(|| c.clone());
                }
            }
        }
    }
    let rank = rank_of(
        dim_odd,
        cols.into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect::<SparseVec>()),
    );
    let kernel_dim = dim_even - rank;
    let cokernel_dim = dim_odd - rank;
    let index = kernel_dim as i64 - cokernel_dim as i64;
    let euler = euler_characteristic(complex);
    // discrete Hodge theory: harmonic = Betti, on both sides
    let betti = complex.betti();
    let even_betti: usize = betti.iter().step_by(2).sum();
    let odd_betti: usize = betti.iter().skip(1).step_by(2).sum();
    assert_eq!(kernel_dim, even_betti, "kernel is not the even harmonic space");
    assert_eq!(cokernel_dim, odd_betti, "cokernel is not the odd harmonic space");
    assert_eq!(index, euler, "index does not match the Euler characteristic");
    HodgeReport {
        index,
        euler,
        kernel_dim,
        cokernel_dim,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        // unsorted simplex
        let r = SimplicialComplex::new(vec![vec![vec![0], vec![1]], vec![vec![1, 0]]]);
        assert!(matches!(r, Err(ComplexError::UnsortedSimplex(_))));
        // missing face
        let r2 = SimplicialComplex::new(vec![vec![vec![0], vec![1]], vec![vec![0, 2]]]);
        assert!(matches!(r2, Err(ComplexError::MissingFace(_))));
        // valid edge
        assert!(SimplicialComplex::new(vec![
            vec![vec![0], vec![1]],
            vec![vec![0, 1]]
        ])
        .is_ok());
    }

    #[test]
    fn builtin_counts() {
        let oct = SimplicialComplex::octahedron();
        assert_eq!((oct.count(0), oct.count(1), oct.count(2)), (6, 12, 8));
        let t7 = SimplicialComplex::torus7();
        assert_eq!((t7.count(0), t7.count(1), t7.count(2)), (7, 21, 14));
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_characteristic(&SimplicialComplex::point()), 1);
        assert_eq!(euler_characteristic(&SimplicialComplex::cycle(6)), 0);
        assert_eq!(euler_characteristic(&SimplicialComplex::octahedron()), 2);
        assert_eq!(euler_characteristic(&SimplicialComplex::torus7()), 0);
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(SimplicialComplex::point().betti(), alloc::vec![1]);
        assert_eq!(SimplicialComplex::cycle(6).betti(), alloc::vec![1, 1]);
        assert_eq!(SimplicialComplex::octahedron().betti(), alloc::vec![1, 0, 1]);
        assert_eq!(SimplicialComplex::torus7().betti(), alloc::vec![1, 2, 1]);
    }

    #[test]
    fn hodge_equals_euler() {
        for (complex, chi) in [
            (SimplicialComplex::point(), 1i64),
            (SimplicialComplex::cycle(6), 0),
            (SimplicialComplex::octahedron(), 2),
            (SimplicialComplex::torus7(), 0),
        ] {
            let r = hodge_index(&complex);
            assert_eq!(r.index, chi);
            assert_eq!(r.euler, chi);
        }
    }

    #[test]
    fn hodge_kernel_dims() {
        // octahedron: harmonic evens = b0 + b2 = 2, odds = b1 = 0
        let r = hodge_index(&SimplicialComplex::octahedron());
        assert_eq!((r.kernel_dim, r.cokernel_dim), (2, 0));
        // torus: evens = 1 + 1, odds = 2
        let rt = hodge_index(&SimplicialComplex::torus7());
        assert_eq!((rt.kernel_dim, rt.cokernel_dim), (2, 2));
    }
}
