//! Dense linear algebra over F_q: the workhorse behind fixed-field kernels,
//! eigenring computation, and minimal polynomials of matrices.

use crate::error::{Error, Result};
use crate::fq::{Fq, FqCtx};

/// A dense matrix over F_q, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl FMatrix {
    /// The zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        FMatrix { rows, cols, data: vec![Fq::ZERO; rows * cols] }
    }

    /// The n-by-n identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = FMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Fq::ONE);
        }
        m
    }

    /// Builds a matrix from a closure over (row, col).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Fq) -> Self {
        let mut m = FMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    /// Matrix sum; shapes must match.
    pub fn add(&self, ctx: &FqCtx, other: &FMatrix) -> FMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = ctx.add(*a, b);
        }
        out
    }

    /// Scales every entry by c.
    pub fn scale(&self, ctx: &FqCtx, c: Fq) -> FMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = ctx.mul(*a, c);
        }
        out
    }

    /// Matrix product; inner dimensions must agree.
    pub fn mul(&self, ctx: &FqCtx, other: &FMatrix) -> FMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = FMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = ctx.add(out.get(i, j), ctx.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Matrix power (square matrices).
    pub fn pow(&self, ctx: &FqCtx, mut k: u64) -> FMatrix {
        assert!(self.is_square(), "matrix power requires a square matrix");
        let mut base = self.clone();
        let mut acc = FMatrix::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(ctx, &base);
            }
            base = base.mul(ctx, &base);
            k >>= 1;
        }
        acc
    }

    /// Matrix-vector product.
    pub fn apply(&self, ctx: &FqCtx, v: &[Fq]) -> Vec<Fq> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Fq::ZERO;
                for (j, &vj) in v.iter().enumerate() {
                    acc = ctx.add(acc, ctx.mul(self.get(i, j), vj));
                }
                acc
            })
            .collect()
    }

    /// In-place reduction to reduced row echelon form; returns the pivot
    /// column indices in ascending order. Deterministic: pivots are chosen as
    /// the first nonzero entry scanning rows top-down within each column.
    pub fn rref(&mut self, ctx: &FqCtx) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pivot_row) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, pivot_row);
            let inv = ctx.inv(self.get(row, col)).expect("pivot is nonzero");
            for j in col..self.cols {
                self.set(row, j, ctx.mul(self.get(row, j), inv));
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let v = ctx.sub(self.get(r, j), ctx.mul(factor, self.get(row, j)));
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// The rank of the matrix.
    pub fn rank(&self, ctx: &FqCtx) -> usize {
        let mut m = self.clone();
        m.rref(ctx).len()
    }

    /// A canonical basis of the right kernel {x : Mx = 0}: one vector per
    /// free column of the reduced echelon form, ordered by free column index.
    pub fn kernel_basis(&self, ctx: &FqCtx) -> Vec<Vec<Fq>> {
        let mut m = self.clone();
        let pivots = m.rref(ctx);
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = Some(r);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![Fq::ZERO; self.cols];
            v[free] = Fq::ONE;
            for (col, slot) in pivot_of_col.iter().enumerate() {
                if let Some(r) = slot {
                    v[col] = ctx.neg(m.get(*r, free));
                }
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// A row-reduced span of F_q-vectors supporting membership tests and
/// coordinate extraction. Used to canonicalize eigenring bases.
#[derive(Debug, Clone)]
pub struct RowSpan {
    ctx_cols: usize,
    /// Reduced rows and the original-combination bookkeeping is not kept;
    /// rows are in echelon form with recorded pivot columns.
    rows: Vec<Vec<Fq>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    /// Builds the span of the given vectors (each of length `cols`).
    pub fn new(ctx: &FqCtx, cols: usize, vectors: &[Vec<Fq>]) -> Self {
        let mut span = RowSpan { ctx_cols: cols, rows: Vec::new(), pivots: Vec::new() };
        for v in vectors {
            span.insert(ctx, v.clone());
        }
        span
    }

    /// Dimension of the span.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the span; returns the residue.
    pub fn reduce(&self, ctx: &FqCtx, mut v: Vec<Fq>) -> Vec<Fq> {
        for (row, &piv) in self.rows.iter().zip(self.pivots.iter()) {
            let c = v[piv];
            if c.is_zero() {
                continue;
            }
            for j in 0..self.ctx_cols {
                v[j] = ctx.sub(v[j], ctx.mul(c, row[j]));
            }
        }
        v
    }

    /// True iff `v` lies in the span.
    pub fn contains(&self, ctx: &FqCtx, v: &[Fq]) -> bool {
        self.reduce(ctx, v.to_vec()).iter().all(|c| c.is_zero())
    }

    /// Inserts a vector, extending the span if it is independent.
    /// Returns true if the dimension grew.
    pub fn insert(&mut self, ctx: &FqCtx, v: Vec<Fq>) -> bool {
        let mut v = self.reduce(ctx, v);
        let Some(piv) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = ctx.inv(v[piv]).expect("pivot entry nonzero");
        for c in v.iter_mut() {
            *c = ctx.mul(*c, inv);
        }
        // Keep earlier rows reduced against the new one.
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if !c.is_zero() {
                for j in 0..self.ctx_cols {
                    row[j] = ctx.sub(row[j], ctx.mul(c, v[j]));
                }
            }
        }
        let at = self.pivots.iter().position(|&p| p > piv).unwrap_or(self.pivots.len());
        self.rows.insert(at, v);
        self.pivots.insert(at, piv);
        true
    }

    /// Expresses `v` in terms of the span rows; `None` if outside the span.
    /// Coordinates refer to the reduced rows in pivot order.
    pub fn coordinates(&self, ctx: &FqCtx, v: &[Fq]) -> Option<Vec<Fq>> {
        let mut v = v.to_vec();
        let mut coords = vec![Fq::ZERO; self.rows.len()];
        for (i, (row, &piv)) in self.rows.iter().zip(self.pivots.iter()).enumerate() {
            let c = v[piv];
            if c.is_zero() {
                continue;
            }
            coords[i] = c;
            for j in 0..self.ctx_cols {
                v[j] = ctx.sub(v[j], ctx.mul(c, row[j]));
            }
        }
        if v.iter().all(|c| c.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// The reduced rows in pivot order.
    pub fn rows(&self) -> &[Vec<Fq>] {
        &self.rows
    }
}

/// Validates squareness for operations whose statement requires it.
pub fn require_square(m: &FMatrix) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::DegenerateInput(format!(
            "matrix must be square, got {}x{}",
            m.rows(),
            m.cols()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FqCtx {
        FqCtx::new(2, 1, None).unwrap()
    }

    fn f3() -> FqCtx {
        FqCtx::new(3, 1, None).unwrap()
    }

    #[test]
    fn identity_acts_trivially() {
        let ctx = f3();
        let m = FMatrix::identity(3);
        let v = vec![Fq(1), Fq(2), Fq(0)];
        assert_eq!(m.apply(&ctx, &v), v);
    }

    #[test]
    fn kernel_of_singular_matrix() {
        let ctx = f2();
        // Rows (1 1; 1 1) over F_2: kernel spanned by (1,1).
        let m = FMatrix::from_fn(2, 2, |_, _| Fq(1));
        let k = m.kernel_basis(&ctx);
        assert_eq!(k, vec![vec![Fq(1), Fq(1)]]);
        assert_eq!(m.rank(&ctx), 1);
    }

    #[test]
    fn kernel_of_invertible_matrix_is_trivial() {
        let ctx = f3();
        let mut m = FMatrix::identity(2);
        m.set(0, 1, Fq(2));
        assert!(m.kernel_basis(&ctx).is_empty());
        assert_eq!(m.rank(&ctx), 2);
    }

    #[test]
    fn matrix_power_matches_repeated_multiplication() {
        let ctx = f3();
        let m = FMatrix::from_fn(2, 2, |i, j| Fq(((i + 2 * j + 1) % 3) as u32));
        let m3 = m.mul(&ctx, &m).mul(&ctx, &m);
        assert_eq!(m.pow(&ctx, 3), m3);
        assert_eq!(m.pow(&ctx, 0), FMatrix::identity(2));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let ctx = f3();
        let m = FMatrix::from_fn(3, 4, |i, j| Fq(((i * j + i + j) % 3) as u32));
        for v in m.kernel_basis(&ctx) {
            assert!(m.apply(&ctx, &v).iter().all(|c| c.is_zero()));
        }
        // Rank-nullity.
        assert_eq!(m.rank(&ctx) + m.kernel_basis(&ctx).len(), 4);
    }

    #[test]
    fn rowspan_membership_and_coordinates() {
        let ctx = f2();
        let mut span = RowSpan::new(&ctx, 3, &[]);
        assert!(span.insert(&ctx, vec![Fq(1), Fq(1), Fq(0)]));
        assert!(span.insert(&ctx, vec![Fq(0), Fq(1), Fq(1)]));
        assert!(!span.insert(&ctx, vec![Fq(1), Fq(0), Fq(1)])); // dependent
        assert_eq!(span.dim(), 2);
        let coords = span.coordinates(&ctx, &[Fq(1), Fq(0), Fq(1)]).unwrap();
        assert_eq!(coords.len(), 2);
        assert!(span.coordinates(&ctx, &[Fq(1), Fq(0), Fq(0)]).is_none());
    }
}
