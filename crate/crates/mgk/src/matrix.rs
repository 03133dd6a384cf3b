//! Exact linear algebra over `ℚ`.
//!
//! Dense matrices of [`Rat`] with a fraction-free (Bareiss) elimination core:
//! each row is scaled to integers once, after which the elimination stays in
//! `ℤ` with exact single-step divisions. Rank, kernel, solving, determinants
//! and inverses are all exact; kernel vectors are re-verified by
//! multiplication before being returned.
//!
//! Also here: a sparse exact rank routine for the large, very sparse windowed
//! Koszul matrices, and integer Smith normal form for saturation checks on
//! cocharacter families.

use crate::rat::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>, // row-major
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| crate::rat::fmt_rat(self.get(r, c)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        RatMatrix {
            rows: nr,
            cols: nc,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| crate::rat::rat_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.get(r, c).is_one()
                    } else {
                        self.get(r, c).is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c) + other.get(r, c))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c) - other.get(r, c))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| -self.get(r, c))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * s)
    }

    /// `self + s·id` (square only).
    pub fn add_scalar(&self, s: &Rat) -> Self {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i) + s;
            m.set(i, i, v);
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(r, c) + a * b;
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.get(r, c) * &v[c])
                    .fold(Rat::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let v = a * other.get(r2, c2);
                        out.set(r1 * other.rows + r2, c1 * other.cols + c2, v);
                    }
                }
            }
        }
        out
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// True iff `self^k = 0` for some `k ≤ dim` (exact).
    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        let mut p = self.clone();
        for _ in 0..self.rows {
            if p.is_zero() {
                return true;
            }
            p = p.mul(self);
        }
        p.is_zero()
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.fraction_free_echelon().pivots.len()
    }

    /// Exact determinant (square matrices), via the Bareiss pivot product.
    pub fn det(&self) -> Rat {
        assert!(self.is_square());
        if self.rows == 0 {
            return Rat::one();
        }
        let ech = self.fraction_free_echelon();
        if ech.pivots.len() < self.rows {
            return Rat::zero();
        }
        // Bareiss: for a full-rank square matrix the last pivot is the
        // determinant of the integer-scaled matrix.
        let last = ech.mat[self.rows - 1][ech.pivots[self.rows - 1]].clone();
        let mut det = Rat::from_integer(last);
        if ech.sign < 0 {
            det = -det;
        }
        for s in &ech.row_scales {
            det /= Rat::from_integer(s.clone());
        }
        det
    }

    /// Basis of the right null space. Every returned vector is re-checked by
    /// multiplication.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let ech = self.fraction_free_echelon();
        let pivot_cols: Vec<usize> = ech.pivots.clone();
        let free_cols: Vec<usize> =
            (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free_cols {
            let mut x = vec![Rat::zero(); self.cols];
            x[f] = Rat::one();
            // back-substitute pivot rows bottom-up
            for (r, &pc) in ech.pivots.iter().enumerate().rev() {
                let mut acc = Rat::zero();
                for c in (pc + 1)..self.cols {
                    if !ech.mat[r][c].is_zero() && !x[c].is_zero() {
                        acc += Rat::from_integer(ech.mat[r][c].clone()) * &x[c];
                    }
                }
                x[pc] = -acc / Rat::from_integer(ech.mat[r][pc].clone());
            }
            assert!(
                self.apply(&x).iter().all(|v| v.is_zero()),
                "kernel vector failed verification"
            );
            basis.push(x);
        }
        basis
    }

    /// One exact solution of `self · x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let ech = aug.fraction_free_echelon();
        if ech.pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &pc) in ech.pivots.iter().enumerate().rev() {
            let mut acc = Rat::from_integer(ech.mat[r][self.cols].clone());
            for c in (pc + 1)..self.cols {
                if !ech.mat[r][c].is_zero() && !x[c].is_zero() {
                    acc -= Rat::from_integer(ech.mat[r][c].clone()) * &x[c];
                }
            }
            x[pc] = acc / Rat::from_integer(ech.mat[r][pc].clone());
        }
        debug_assert_eq!(self.apply(&x), b.to_vec());
        Some(x)
    }

    /// Reduced row echelon form over `ℚ` with zero rows dropped; returns the
    /// reduced rows and their pivot columns.
    pub fn rref(&self) -> (Vec<Vec<Rat>>, Vec<usize>) {
        let mut rows: Vec<Vec<Rat>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).clone()).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for col in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = Rat::one() / rows[r][col].clone();
            for c in col..self.cols {
                rows[r][c] = &rows[r][c] * &inv;
            }
            for i in 0..rows.len() {
                if i != r && !rows[i][col].is_zero() {
                    let f = rows[i][col].clone();
                    for c in col..self.cols {
                        let v = &rows[i][c] - &f * &rows[r][c];
                        rows[i][c] = v;
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(pivots.len());
        (rows, pivots)
    }

    /// Exact inverse, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        // Gauss-Jordan on [self | id]
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|r| {
                let mut row: Vec<Rat> = (0..n).map(|c| self.get(r, c).clone()).collect();
                row.extend((0..n).map(|c| {
                    if c == r {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            let inv = Rat::one() / a[col][col].clone();
            for c in col..2 * n {
                a[col][c] = &a[col][c] * &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..2 * n {
                        let v = &a[r][c] - &f * &a[col][c];
                        a[r][c] = v;
                    }
                }
            }
        }
        Some(Self::from_rows(
            a.into_iter().map(|row| row[n..].to_vec()).collect(),
        ))
    }
}

struct Echelon {
    mat: Vec<Vec<BigInt>>,
    /// pivot column of row `i`, for `i < pivots.len()`
    pivots: Vec<usize>,
    sign: i32,
    row_scales: Vec<BigInt>,
}

impl RatMatrix {
    /// Fraction-free Gaussian elimination (Bareiss). Rows are scaled to
    /// integers first; the one-step division by the previous pivot is then
    /// exact throughout. Row operations only, so rank, row space and null
    /// space of the input are preserved.
    fn fraction_free_echelon(&self) -> Echelon {
        let mut row_scales = Vec::with_capacity(self.rows);
        let mut mat: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let mut l: BigInt = One::one();
                for c in 0..self.cols {
                    l = l.lcm(self.get(r, c).denom());
                }
                let row = (0..self.cols)
                    .map(|c| {
                        let v = self.get(r, c);
                        v.numer() * (&l / v.denom())
                    })
                    .collect();
                row_scales.push(l);
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut sign = 1;
        let mut prev: BigInt = One::one();
        let mut r = 0;
        for col in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !mat[i][col].is_zero()) else {
                continue;
            };
            if p != r {
                mat.swap(p, r);
                row_scales.swap(p, r);
                sign = -sign;
            }
            for i in (r + 1)..self.rows {
                for j in (col + 1)..self.cols {
                    let num = &mat[r][col] * &mat[i][j] - &mat[i][col] * &mat[r][j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division not exact");
                    mat[i][j] = q;
                }
                mat[i][col] = Zero::zero();
            }
            prev = mat[r][col].clone();
            pivots.push(col);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        Echelon {
            mat,
            pivots,
            sign,
            row_scales,
        }
    }
}

/// Exact rank of a sparse matrix given by columns `(row_index, value)`.
/// Intended for the large windowed Koszul matrices, whose columns carry only
/// a couple of entries each.
pub fn sparse_rank(columns: &[Vec<(usize, Rat)>]) -> usize {
    // pivot row -> column vector (BTreeMap row->coeff) normalized to lead 1
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Rat>> = BTreeMap::new();
    for col in columns {
        let mut v: BTreeMap<usize, Rat> = BTreeMap::new();
        for (r, x) in col {
            if !x.is_zero() {
                v.insert(*r, x.clone());
            }
        }
        while let Some((&lead, _)) = v.iter().next() {
            let Some(p) = pivots.get(&lead) else { break };
            let f = v[&lead].clone();
            for (r, coeff) in p.clone() {
                let cur = v.remove(&r).unwrap_or_else(Rat::zero);
                let nv = cur - &f * &coeff;
                if !nv.is_zero() {
                    v.insert(r, nv);
                }
            }
        }
        if let Some((&lead, lv)) = v.iter().next() {
            let inv = Rat::one() / lv.clone();
            let norm: BTreeMap<usize, Rat> = v.iter().map(|(r, x)| (*r, x * &inv)).collect();
            pivots.insert(lead, norm);
        }
    }
    pivots.len()
}

/// Nonzero elementary divisors of an integer matrix (Smith normal form
/// diagonal, in divisibility order).
pub fn smith_normal_form(mat: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigInt>> = mat.to_vec();
    let mut divisors = Vec::new();
    let mut top = 0usize;
    let mut left = 0usize;
    while top < rows && left < cols {
        // locate a nonzero entry of minimal absolute value in the submatrix
        let mut best: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in left..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(top, bi);
        for row in a.iter_mut() {
            row.swap(left, bj);
        }
        // clear the row and column by division with remainder; restart when a
        // remainder strictly smaller than the corner appears
        loop {
            let mut clean = true;
            for i in (top + 1)..rows {
                if !a[i][left].is_zero() {
                    let q = &a[i][left] / &a[top][left];
                    for j in left..cols {
                        let v = &a[i][j] - &q * &a[top][j];
                        a[i][j] = v;
                    }
                    if !a[i][left].is_zero() {
                        a.swap(top, i);
                        clean = false;
                    }
                }
            }
            for j in (left + 1)..cols {
                if !a[top][j].is_zero() {
                    let q = &a[top][j] / &a[top][left];
                    for i in top..rows {
                        let v = &a[i][j] - &q * &a[i][left];
                        a[i][j] = v;
                    }
                    if !a[top][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(left, j);
                        }
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        // ensure the corner divides every remaining entry
        let mut fixed = false;
        'scan: for i in (top + 1)..rows {
            for j in (left + 1)..cols {
                if !(&a[i][j] % &a[top][left]).is_zero() {
                    for jj in left..cols {
                        let v = &a[top][jj] + &a[i][jj];
                        a[top][jj] = v;
                    }
                    fixed = true;
                    break 'scan;
                }
            }
        }
        if fixed {
            continue;
        }
        divisors.push(a[top][left].abs());
        top += 1;
        left += 1;
    }
    divisors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let k = m(&[&[1, 2], &[2, 4]]).kernel();
        assert_eq!(k.len(), 1);
        // span{(-2, 1)}: normalize on the second coordinate
        let v = &k[0];
        assert_eq!(v[0].clone() / v[1].clone(), rat_int(-2));
    }

    #[test]
    fn rank_of_identity() {
        assert_eq!(RatMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn solve_scalar_equation() {
        let a = m(&[&[2]]);
        assert_eq!(a.solve(&[rat_int(1)]), Some(vec![rat(1, 2)]));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(a.solve(&[rat_int(0), rat_int(1)]), None);
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.det(), rat_int(-2));
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), rat_int(0));
    }

    #[test]
    fn det_with_rational_entries() {
        let a = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 4), rat(1, 5)],
        ]);
        assert_eq!(a.det(), rat(1, 10) - rat(1, 12));
    }

    #[test]
    fn nilpotency() {
        assert!(m(&[&[0, 0], &[1, 0]]).is_nilpotent());
        assert!(!m(&[&[1, 0], &[0, 0]]).is_nilpotent());
        assert!(RatMatrix::zeros(3, 3).is_nilpotent());
    }

    #[test]
    fn sparse_rank_matches_dense() {
        let a = m(&[&[1, 0, 2], &[0, 0, 0], &[3, 0, 6], &[0, 5, 0]]);
        let cols: Vec<Vec<(usize, Rat)>> = (0..3)
            .map(|c| {
                (0..4)
                    .filter_map(|r| {
                        let v = a.get(r, c).clone();
                        (!v.is_zero()).then_some((r, v))
                    })
                    .collect()
            })
            .collect();
        assert_eq!(sparse_rank(&cols), a.rank());
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn smith_normal_form_examples() {
        let b = |x: i64| BigInt::from(x);
        // identity-like: divisors all 1
        let d = smith_normal_form(&[vec![b(1), b(0)], vec![b(0), b(1)]]);
        assert_eq!(d, vec![b(1), b(1)]);
        // 2x2 with determinant 12 and gcd 2
        let d = smith_normal_form(&[vec![b(2), b(4)], vec![b(-2), b(2)]]);
        assert_eq!(d, vec![b(2), b(6)]);
        // rank-deficient
        let d = smith_normal_form(&[vec![b(2), b(4)], vec![b(1), b(2)]]);
        assert_eq!(d, vec![b(1)]);
        // the GL(2) standard family (e1, e2) saturates
        let d = smith_normal_form(&[vec![b(1), b(0)], vec![b(0), b(1)]]);
        assert!(d.iter().all(|x| x == &b(1)));
    }
}
