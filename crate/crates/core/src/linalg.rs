//! Dense symmetric matrices with an exact rational view for rank/kernel work
//! and a floating view for eigenvalue work. Exact rank uses fraction-free
//! Gaussian elimination, so integer inputs never leave integer arithmetic.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rank of an integer matrix via Bareiss fraction-free elimination.
/// Pivots are chosen by smallest nonzero magnitude to curb entry growth.
pub fn rank_bigint(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        let pick = (pivot_row..rows)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].abs());
        let Some(r) = pick else { continue };
        m.swap(pivot_row, r);
        let piv = m[pivot_row][col].clone();
        let (top, rest) = m.split_at_mut(pivot_row + 1);
        let prow = &top[pivot_row];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                // Still rescale per the fraction-free recurrence.
                for e in row[col..].iter_mut() {
                    if !e.is_zero() {
                        *e = &piv * &*e / &prev;
                    }
                }
                continue;
            }
            let factor = std::mem::take(&mut row[col]);
            for (e, p) in row[col + 1..].iter_mut().zip(&prow[col + 1..]) {
                *e = (&piv * &*e - &factor * p) / &prev;
            }
        }
        prev = piv;
        pivot_row += 1;
    }
    pivot_row
}

/// Bareiss elimination in fixed-width arithmetic; `None` on overflow.
fn rank_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let rows = m.len();
    if rows == 0 {
        return Some(0);
    }
    let cols = m[0].len();
    let mut prev: i128 = 1;
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        let pick = (pivot_row..rows)
            .filter(|&r| m[r][col] != 0)
            .min_by_key(|&r| m[r][col].unsigned_abs());
        let Some(r) = pick else { continue };
        m.swap(pivot_row, r);
        let piv = m[pivot_row][col];
        let (top, rest) = m.split_at_mut(pivot_row + 1);
        let prow = &top[pivot_row];
        for row in rest.iter_mut() {
            if row[col] == 0 {
                for e in row[col..].iter_mut() {
                    if *e != 0 {
                        *e = piv.checked_mul(*e)? / prev;
                    }
                }
                continue;
            }
            let factor = std::mem::take(&mut row[col]);
            for (e, &p) in row[col + 1..].iter_mut().zip(&prow[col + 1..]) {
                let a = piv.checked_mul(*e)?;
                let b = factor.checked_mul(p)?;
                *e = a.checked_sub(b)? / prev;
            }
        }
        prev = piv;
        pivot_row += 1;
    }
    Some(pivot_row)
}

/// Rank of an `i64` matrix: fixed-width fraction-free elimination with a
/// big-integer fallback when intermediate minors overflow.
pub fn rank_i64(m: &[Vec<i64>]) -> usize {
    let fixed: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(|&x| i128::from(x)).collect())
        .collect();
    if let Some(rank) = rank_i128(fixed) {
        return rank;
    }
    rank_bigint(
        m.iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
}

/// Symmetric real matrix stored exactly (rationals), convertible to `f64`
/// for eigenvalue computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseSymMatrix {
    side: usize,
    entries: Vec<BigRational>,
}

impl DenseSymMatrix {
    pub fn zeros(side: usize) -> Self {
        Self {
            side,
            entries: vec![BigRational::zero(); side * side],
        }
    }

    /// Builds from a generator; panics if the result is not symmetric.
    pub fn from_fn(side: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let mut entries = Vec::with_capacity(side * side);
        for i in 0..side {
            for j in 0..side {
                entries.push(f(i, j));
            }
        }
        let m = Self { side, entries };
        assert!(m.is_symmetric(), "matrix is not symmetric");
        m
    }

    pub fn from_int_fn(side: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        Self::from_fn(side, |i, j| BigRational::from_integer(BigInt::from(f(i, j))))
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let side = rows.len();
        assert!(rows.iter().all(|r| r.len() == side));
        Self::from_int_fn(side, |i, j| rows[i][j])
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.side + j]
    }

    pub(crate) fn set_symmetric(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.side + j] = v.clone();
        self.entries[j * self.side + i] = v;
    }

    pub(crate) fn set_entry(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.side + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.side)
            .all(|i| (i + 1..self.side).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    /// Entry-wise scaling by `num/den`.
    pub fn scaled(&self, num: i64, den: i64) -> Self {
        assert!(den != 0);
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        Self {
            side: self.side,
            entries: self.entries.iter().map(|e| e * &r).collect(),
        }
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.side, self.side, |i, j| {
            self.get(i, j).to_f64().expect("finite entry")
        })
    }

    /// Eigenvalues of the floating view, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        if self.side == 0 {
            return Vec::new();
        }
        let eig = self.to_f64().symmetric_eigen();
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(0.0)
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues().last().copied().unwrap_or(0.0)
    }

    /// Gershgorin eigenvalue bound `max_i (|a_ii| + sum_{j != i} |a_ij|)`,
    /// floored at 1 so tolerances stay meaningful for tiny matrices.
    pub fn gershgorin_scale(&self) -> f64 {
        let mut scale: f64 = 1.0;
        for i in 0..self.side {
            let mut disk = 0.0;
            for j in 0..self.side {
                disk += self.get(i, j).to_f64().expect("finite entry").abs();
            }
            scale = scale.max(disk);
        }
        scale
    }

    /// Number of eigenvalues below `tol * gershgorin_scale()`.
    pub fn kernel_dim_float(&self, tol: f64) -> usize {
        let cut = tol * self.gershgorin_scale();
        self.eigenvalues().iter().filter(|&&l| l < cut).count()
    }

    /// True when the floating spectrum stays above `-tol * scale`.
    pub fn is_psd(&self, tol: f64) -> bool {
        self.side == 0 || self.lambda_min() >= -tol * self.gershgorin_scale()
    }

    /// Exact rank over the rationals. Denominators are cleared by a global
    /// scaling (rank-invariant), then Bareiss elimination runs over
    /// integers, fixed-width first with a big-integer fallback.
    pub fn rank_exact(&self) -> usize {
        if self.side == 0 {
            return 0;
        }
        let mut lcm = BigInt::one();
        for e in &self.entries {
            lcm = lcm.lcm(e.denom());
        }
        let m: Vec<Vec<BigInt>> = (0..self.side)
            .map(|i| {
                (0..self.side)
                    .map(|j| {
                        let e = self.get(i, j);
                        e.numer() * (&lcm / e.denom())
                    })
                    .collect()
            })
            .collect();
        let fixed: Option<Vec<Vec<i128>>> = m
            .iter()
            .map(|row| row.iter().map(|x| i128::try_from(x).ok()).collect())
            .collect();
        if let Some(rank) = fixed.and_then(rank_i128) {
            return rank;
        }
        rank_bigint(m)
    }

    pub fn kernel_dim_exact(&self) -> usize {
        self.side - self.rank_exact()
    }

    /// Kernel dimension: exact rank for integral matrices, otherwise the
    /// scale-aware floating count below `tol`.
    pub fn kernel_dim(&self, tol: f64) -> usize {
        if self.is_integral() {
            self.kernel_dim_exact()
        } else {
            self.kernel_dim_float(tol)
        }
    }
}
