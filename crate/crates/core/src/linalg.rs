//! Row-echelon linear algebra over F_p on the 12 coordinates of V(F_p).
//!
//! Subspace bases are kept in reduced row echelon form with pivot order fixed
//! by the coefficient ordering (a₁,b₁,...,f₁,a₂,...,f₂), so set equality of
//! subspaces is literal equality of bases.

use crate::forms::FormPair;
use crate::ring::{inv_mod, md};

pub const DIM: usize = 12;

/// An echelonized basis of a subspace of V(F_p).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    pub p: i64,
    /// RREF rows; each row's pivot entry is 1 and is the unique nonzero entry
    /// in its column.
    pub basis: Vec<[i64; DIM]>,
    /// pivot column of each basis row, strictly increasing
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: i64) -> Self {
        Subspace {
            p,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: i64) -> Self {
        let mut basis = Vec::new();
        for i in 0..DIM {
            let mut v = [0i64; DIM];
            v[i] = 1;
            basis.push(v);
        }
        Subspace {
            p,
            basis,
            pivots: (0..DIM).collect(),
        }
    }

    pub fn from_spanning(p: i64, vecs: impl IntoIterator<Item = [i64; DIM]>) -> Self {
        let mut s = Subspace::zero(p);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn from_pairs(p: i64, pairs: impl IntoIterator<Item = FormPair>) -> Self {
        Subspace::from_spanning(p, pairs.into_iter().map(|x| x.flat()))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Reduce v modulo the subspace; the result has zeros in all pivot
    /// coordinates and is the canonical coset representative.
    pub fn reduce(&self, mut v: [i64; DIM]) -> [i64; DIM] {
        for i in 0..DIM {
            v[i] = md(v[i], self.p);
        }
        for (row, &piv) in self.basis.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                for j in 0..DIM {
                    v[j] = md(v[j] - c * row[j], self.p);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[i64; DIM]) -> bool {
        self.reduce(*v).iter().all(|&c| c == 0)
    }

    /// Insert a vector, keeping RREF; returns true if the dimension grew.
    pub fn insert(&mut self, v: [i64; DIM]) -> bool {
        let r = self.reduce(v);
        let Some(piv) = r.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = inv_mod(r[piv], self.p);
        let mut row = [0i64; DIM];
        for j in 0..DIM {
            row[j] = md(r[j] * inv, self.p);
        }
        // clear the new pivot column in earlier rows
        for b in self.basis.iter_mut() {
            let c = b[piv];
            if c != 0 {
                for j in 0..DIM {
                    b[j] = md(b[j] - c * row[j], self.p);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < piv);
        self.basis.insert(at, row);
        self.pivots.insert(at, piv);
        true
    }

    /// Non-pivot coordinates, the canonical complement labelling V/S.
    pub fn free_coords(&self) -> Vec<usize> {
        (0..DIM).filter(|i| !self.pivots.contains(i)).collect()
    }

    /// Orthogonal complement with respect to the inner product on V(F_p).
    /// The Gram matrix in coefficient coordinates is diagonal with entries
    /// (1, 1/2, 1/2, 1, 1/2, 1) per form.
    pub fn orthogonal_complement(&self) -> Subspace {
        let p = self.p;
        let i2 = inv_mod(2, p);
        let w = [1, i2, i2, 1, i2, 1, 1, i2, i2, 1, i2, 1];
        // y is orthogonal iff for every basis row b: Σ_j w_j b_j y_j = 0.
        // Solve the homogeneous system with coefficient matrix M_{ij} = w_j b_i[j].
        let rows: Vec<[i64; DIM]> = self
            .basis
            .iter()
            .map(|b| {
                let mut r = [0i64; DIM];
                for j in 0..DIM {
                    r[j] = md(w[j] * b[j], p);
                }
                r
            })
            .collect();
        kernel_basis(p, &rows)
    }

    pub fn equals(&self, other: &Subspace) -> bool {
        self.p == other.p && self.basis == other.basis && self.pivots == other.pivots
    }
}

/// A basis of the kernel of the linear map given by `rows` acting on F_p^12.
pub fn kernel_basis(p: i64, rows: &[[i64; DIM]]) -> Subspace {
    // RREF the constraint matrix
    let mut mat: Vec<[i64; DIM]> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..DIM {
        let Some(sel) = (rank..mat.len()).find(|&r| md(mat[r][col], p) != 0) else {
            continue;
        };
        mat.swap(rank, sel);
        let inv = inv_mod(md(mat[rank][col], p), p);
        for j in 0..DIM {
            mat[rank][j] = md(mat[rank][j] * inv, p);
        }
        for r in 0..mat.len() {
            if r != rank {
                let c = md(mat[r][col], p);
                if c != 0 {
                    for j in 0..DIM {
                        mat[r][j] = md(mat[r][j] - c * mat[rank][j], p);
                    }
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    mat.truncate(rank);
    // free columns parameterize the kernel
    let mut out = Vec::new();
    for free in (0..DIM).filter(|c| !pivots.contains(c)) {
        let mut v = [0i64; DIM];
        v[free] = 1;
        for (r, &piv) in pivots.iter().enumerate() {
            v[piv] = md(-mat[r][free], p);
        }
        out.push(v);
    }
    Subspace::from_spanning(p, out)
}

/// Solve a small linear system A t = rhs for t in F_p^n (n <= 4): returns a
/// particular solution and a kernel basis, or None if inconsistent.
pub fn solve_affine(
    p: i64,
    a: &[ [i64; 4] ],
    rhs: &[i64],
    n: usize,
) -> Option<(Vec<i64>, Vec<Vec<i64>>)> {
    let m = a.len();
    let mut mat: Vec<[i64; 5]> = Vec::with_capacity(m);
    for (row, &b) in a.iter().zip(rhs) {
        let mut r = [0i64; 5];
        r[..4].copy_from_slice(row);
        r[4] = md(b, p);
        mat.push(r);
    }
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(sel) = (rank..m).find(|&r| md(mat[r][col], p) != 0) else {
            continue;
        };
        mat.swap(rank, sel);
        let inv = inv_mod(md(mat[rank][col], p), p);
        for j in 0..=4 {
            mat[rank][j] = md(mat[rank][j] * inv, p);
        }
        for r in 0..m {
            if r != rank {
                let c = md(mat[r][col], p);
                if c != 0 {
                    for j in 0..=4 {
                        mat[r][j] = md(mat[r][j] - c * mat[rank][j], p);
                    }
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    // consistency
    for r in rank..m {
        if md(mat[r][4], p) != 0 {
            return None;
        }
    }
    let mut part = vec![0i64; n];
    for (r, &piv) in pivots.iter().enumerate() {
        part[piv] = mat[r][4];
    }
    let mut kernel = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0i64; n];
        v[free] = 1;
        for (r, &piv) in pivots.iter().enumerate() {
            v[piv] = md(-mat[r][free], p);
        }
        kernel.push(v);
    }
    Some((part, kernel))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_and_reduce() {
        let p = 5;
        let mut s = Subspace::zero(p);
        let mut v1 = [0i64; DIM];
        v1[2] = 3;
        v1[5] = 1;
        assert!(s.insert(v1));
        assert!(!s.insert(v1));
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&{
            let mut w = [0i64; DIM];
            w[2] = 1;
            w[5] = inv_mod(3, p);
            w
        }));
    }

    #[test]
    fn complement_dimensions() {
        let p = 7;
        let s = Subspace::from_spanning(
            p,
            (0..4).map(|i| {
                let mut v = [0i64; DIM];
                v[i] = 1;
                v[i + 4] = 2;
                v
            }),
        );
        let c = s.orthogonal_complement();
        assert_eq!(s.dim() + c.dim(), DIM);
        assert!(c.orthogonal_complement().equals(&s));
        assert_eq!(Subspace::full(p).orthogonal_complement().dim(), 0);
    }

    #[test]
    fn affine_solver() {
        let p = 5;
        // t0 + 2 t1 = 3; t2 = 1
        let rows = vec![[1, 2, 0, 0], [0, 0, 1, 0]];
        let (part, ker) = solve_affine(p, &rows, &[3, 1], 4).unwrap();
        assert_eq!(md(part[0] + 2 * part[1] - 3, p), 0);
        assert_eq!(part[2], 1);
        assert_eq!(ker.len(), 2);
        // inconsistent system
        let rows = vec![[0, 0, 0, 0]];
        assert!(solve_affine(p, &rows, &[2], 4).is_none());
    }
}
