use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::model::SpinBosonState;

/// 2×2 spin matrix, row-major.
pub type SpinMatrix = [[Complex64; 2]; 2];

/// Compressed-row sparse complex matrix.
///
/// Entries within a row are sorted by column and duplicates are merged at
/// construction, so iteration order is deterministic. The `hermitian` flag is
/// set by the builders that know the result is self-adjoint; it is not
/// inferred.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOp {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
    hermitian: bool,
}

impl SparseOp {
    pub fn from_triplets(
        dim: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Complex64)>,
        hermitian: bool,
    ) -> Self {
        let mut rows: Vec<BTreeMap<usize, Complex64>> = vec![BTreeMap::new(); dim];
        for (r, c, v) in triplets {
            assert!(r < dim && c < dim, "entry ({r}, {c}) outside dimension {dim}");
            *rows[r].entry(c).or_insert(Complex64::new(0.0, 0.0)) += v;
        }
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for row in rows {
            for (c, v) in row {
                if v != Complex64::new(0.0, 0.0) {
                    cols.push(c);
                    vals.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        Self {
            dim,
            row_ptr,
            cols,
            vals,
            hermitian,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_triplets(dim, (0..dim).map(|i| (i, i, Complex64::new(1.0, 0.0))), true)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Whether the builder declared this operator Hermitian.
    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        let (lo, hi) = (self.row_ptr[r], self.row_ptr[r + 1]);
        match self.cols[lo..hi].binary_search(&c) {
            Ok(k) => self.vals[lo + k],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// Stored entries in row-major, column-sorted order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |k| (r, self.cols[k], self.vals[k]))
        })
    }

    /// `y = A x`.
    pub fn matvec_into(&self, x: &[Complex64], y: &mut [Complex64]) {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        for (r, yr) in y.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            *yr = acc;
        }
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = vec![Complex64::new(0.0, 0.0); self.dim];
        self.matvec_into(x, &mut y);
        y
    }

    /// Apply to a state whose flat dimension matches this operator.
    pub fn apply_state(&self, state: &SpinBosonState) -> SpinBosonState {
        assert_eq!(state.dim(), self.dim, "state dimension does not match operator");
        SpinBosonState::from_flat(self.apply(state.as_slice()))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.dim, self.triplets().map(|(r, c, v)| (c, r, v.conj())), self.hermitian)
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        let hermitian = self.hermitian && s.im == 0.0;
        Self::from_triplets(self.dim, self.triplets().map(|(r, c, v)| (r, c, v * s)), hermitian)
    }

    /// `Σ_k c_k A_k`, declared Hermitian or not by the caller.
    pub fn linear_combination(terms: &[(Complex64, &SparseOp)], hermitian: bool) -> Self {
        let dim = terms.first().map(|(_, op)| op.dim).unwrap_or(0);
        assert!(terms.iter().all(|(_, op)| op.dim == dim), "dimension mismatch");
        Self::from_triplets(
            dim,
            terms
                .iter()
                .flat_map(|(s, op)| op.triplets().map(move |(r, c, v)| (r, c, v * s))),
            hermitian,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self::linear_combination(&[(one, self), (-one, other)], self.hermitian && other.hermitian)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut trip = Vec::new();
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let (mid, a) = (self.cols[k], self.vals[k]);
                for j in other.row_ptr[mid]..other.row_ptr[mid + 1] {
                    trip.push((r, other.cols[j], a * other.vals[j]));
                }
            }
        }
        Self::from_triplets(self.dim, trip, false)
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.matmul(other).sub(&other.matmul(self))
    }

    /// `S ⊗ B` in the spin-major layout used by [`SpinBosonState`].
    pub fn kron_spin(spin: &SpinMatrix, boson: &SparseOp, hermitian: bool) -> Self {
        let d = boson.dim;
        let mut trip = Vec::new();
        for (si, row) in spin.iter().enumerate() {
            for (sj, &s) in row.iter().enumerate() {
                if s == Complex64::new(0.0, 0.0) {
                    continue;
                }
                trip.extend(boson.triplets().map(|(r, c, v)| (si * d + r, sj * d + c, s * v)));
            }
        }
        Self::from_triplets(2 * d, trip, hermitian)
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).vals.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Entrywise `A == A^†`, with no tolerance.
    pub fn is_exactly_hermitian(&self) -> bool {
        self.triplets().all(|(r, c, v)| self.get(c, r) == v.conj())
            && self.adjoint().nnz() == self.nnz()
    }
}
