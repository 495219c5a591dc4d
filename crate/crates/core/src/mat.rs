//! Dense exact linear algebra over a cyclotomic field: kernels, solving,
//! rank, determinants and root-of-unity eigenspaces.

use crate::cyclo::{CycNum, FieldCtx, FieldError};
use std::fmt;
use std::sync::Arc;

pub type CVec = Vec<CycNum>;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<CycNum>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?}, ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl PartialOrd for Mat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl Mat {
    pub fn from_rows(rows: Vec<CVec>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn zeros(ctx: &Arc<FieldCtx>, rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![CycNum::zero(ctx); rows * cols] }
    }

    pub fn identity(ctx: &Arc<FieldCtx>, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = CycNum::one(ctx);
        }
        m
    }

    pub fn ctx(&self) -> Arc<FieldCtx> {
        self.data[0].ctx().clone()
    }

    pub fn at(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut CycNum {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> CVec {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Mat::zeros(&self.ctx(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(CycNum::neg).collect() }
    }

    pub fn scale(&self, s: &CycNum) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(s)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let ctx = self.ctx();
        let mut out = Mat::zeros(&ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    let cur = out.at(i, j).add(&prod);
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[CycNum]) -> CVec {
        assert_eq!(self.cols, v.len());
        let ctx = self.ctx();
        let mut out = vec![CycNum::zero(&ctx); self.rows];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if !a.is_zero() && !v[k].is_zero() {
                    out[i] = out[i].add(&a.mul(&v[k]));
                }
            }
        }
        out
    }

    pub fn trace(&self) -> CycNum {
        assert_eq!(self.rows, self.cols);
        let mut t = CycNum::zero(&self.ctx());
        for i in 0..self.rows {
            t = t.add(self.at(i, i));
        }
        t
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Mat::identity(&self.ctx(), self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self == &Mat::identity(&self.ctx(), self.rows)
    }

    pub fn is_scalar(&self) -> Option<CycNum> {
        let d = self.at(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { d.clone() } else { CycNum::zero(&self.ctx()) };
                if self.at(i, j) != &want {
                    return None;
                }
            }
        }
        Some(d)
    }

    /// Multiplicative order, or None if it exceeds `cap`.
    pub fn order(&self, cap: u64) -> Option<u64> {
        let mut p = self.clone();
        for n in 1..=cap {
            if p.is_identity() {
                return Some(n);
            }
            p = p.mul(self);
        }
        None
    }

    /// Reduced row echelon form; returns (rank, pivot columns).
    pub fn rref(&mut self) -> (usize, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    let a = self.at(r, j).clone();
                    let b = self.at(p, j).clone();
                    *self.at_mut(r, j) = b;
                    *self.at_mut(p, j) = a;
                }
            }
            let inv = self.at(r, c).inv().expect("pivot nonzero");
            for j in c..self.cols {
                let v = self.at(r, j).mul(&inv);
                *self.at_mut(r, j) = v;
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for j in c..self.cols {
                        let v = self.at(i, j).sub(&self.at(r, j).mul(&f));
                        *self.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        (r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().0
    }

    /// Basis of the right kernel {v : A v = 0}.
    pub fn kernel(&self) -> Vec<CVec> {
        let ctx = self.ctx();
        let mut m = self.clone();
        let (_, pivots) = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free {
            let mut v = vec![CycNum::zero(&ctx); self.cols];
            v[fc] = CycNum::one(&ctx);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m.at(r, fc).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// One exact solution of A x = b, if consistent.
    pub fn solve(&self, b: &[CycNum]) -> Option<CVec> {
        assert_eq!(self.rows, b.len());
        let ctx = self.ctx();
        let mut m = Mat::zeros(&ctx, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(i, j) = self.at(i, j).clone();
            }
            *m.at_mut(i, self.cols) = b[i].clone();
        }
        let (rank, pivots) = m.rref();
        if pivots.last() == Some(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![CycNum::zero(&ctx); self.cols];
        for (r, &pc) in pivots.iter().enumerate().take(rank) {
            x[pc] = m.at(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn det(&self) -> CycNum {
        assert_eq!(self.rows, self.cols);
        let ctx = self.ctx();
        let mut m = self.clone();
        let mut det = CycNum::one(&ctx);
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                return CycNum::zero(&ctx);
            };
            if p != c {
                det = det.neg();
                for j in 0..m.cols {
                    let a = m.at(c, j).clone();
                    let b = m.at(p, j).clone();
                    *m.at_mut(c, j) = b;
                    *m.at_mut(p, j) = a;
                }
            }
            det = det.mul(m.at(c, c));
            let inv = m.at(c, c).inv().unwrap();
            for i in c + 1..m.rows {
                if !m.at(i, c).is_zero() {
                    let f = m.at(i, c).mul(&inv);
                    for j in c..m.cols {
                        let v = m.at(i, j).sub(&m.at(c, j).mul(&f));
                        *m.at_mut(i, j) = v;
                    }
                }
            }
        }
        det
    }

    pub fn inv(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let ctx = self.ctx();
        let n = self.rows;
        let mut m = Mat::zeros(&ctx, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *m.at_mut(i, j) = self.at(i, j).clone();
            }
            *m.at_mut(i, n + i) = CycNum::one(&ctx);
        }
        let (rank, _) = m.rref();
        if rank < n {
            return None;
        }
        let mut out = Mat::zeros(&ctx, n, n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = m.at(i, n + j).clone();
            }
        }
        Some(out)
    }

    /// Exterior square on the basis e_i ^ e_j, pairs (i,j) with i < j in
    /// lexicographic order.
    pub fn exterior_square(&self) -> Self {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut out = Mat::zeros(&self.ctx(), pairs.len(), pairs.len());
        for (r, &(i, j)) in pairs.iter().enumerate() {
            for (c, &(k, l)) in pairs.iter().enumerate() {
                let v = self.at(i, k).mul(self.at(j, l)).sub(&self.at(i, l).mul(self.at(j, k)));
                *out.at_mut(r, c) = v;
            }
        }
        out
    }

    /// Clear denominators and divide by the integer content of all entries.
    pub fn reduce_content(&self) -> Self {
        use num::{BigInt, Integer, One, Signed, Zero};
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for e in &self.data {
            for r in e.coeffs() {
                if !num::Zero::is_zero(r) {
                    g = g.gcd(&r.numer().abs());
                    l = l.lcm(r.denom());
                }
            }
        }
        if g.is_zero() {
            return self.clone();
        }
        let factor = crate::cyclo::Rat::new(l, g);
        let ctx = self.ctx();
        self.scale(&CycNum::from_rat(&ctx, factor))
    }

    /// Kernel of A - zeta_n^k I; errors if zeta_n is absent from the field.
    pub fn eigenspace_root_of_unity(&self, k: i64, n: u64) -> Result<Vec<CVec>, FieldError> {
        let ctx = self.ctx();
        let lambda = CycNum::root_of_unity(&ctx, n, k)?;
        Ok(self.eigenspace(&lambda))
    }

    pub fn eigenspace(&self, lambda: &CycNum) -> Vec<CVec> {
        let shifted = self.sub(&Mat::identity(&self.ctx(), self.rows).scale(lambda));
        shifted.kernel()
    }
}

pub fn dot(a: &[CycNum], b: &[CycNum]) -> CycNum {
    assert_eq!(a.len(), b.len());
    let mut acc = CycNum::zero(a[0].ctx());
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc.add(&x.mul(y));
        }
    }
    acc
}

pub fn vec_add(a: &[CycNum], b: &[CycNum]) -> CVec {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vec_sub(a: &[CycNum], b: &[CycNum]) -> CVec {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn vec_scale(a: &[CycNum], s: &CycNum) -> CVec {
    a.iter().map(|x| x.mul(s)).collect()
}

pub fn vec_is_zero(a: &[CycNum]) -> bool {
    a.iter().all(CycNum::is_zero)
}

/// A linear subspace given by a basis, kept in canonical (RREF) form so that
/// equality of subspaces is literal equality of the representation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    pub ambient_dim: usize,
    /// RREF rows, linearly independent.
    pub basis: Vec<CVec>,
}

impl Subspace {
    pub fn from_vectors(ambient_dim: usize, vecs: Vec<CVec>) -> Self {
        if vecs.is_empty() {
            return Subspace { ambient_dim, basis: vec![] };
        }
        let mut m = Mat::from_rows(vecs);
        let (rank, _) = m.rref();
        let basis = (0..rank).map(|i| m.row(i).to_vec()).collect();
        Subspace { ambient_dim, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[CycNum]) -> bool {
        if vec_is_zero(v) {
            return true;
        }
        let mut vecs = self.basis.clone();
        vecs.push(v.to_vec());
        Subspace::from_vectors(self.ambient_dim, vecs).dim() == self.dim()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Subspace::from_vectors(self.ambient_dim, vecs)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // Solutions of (x in self) and (x in other) via the kernel of the
        // stacked coordinate matrix on (coeffs_self, coeffs_other).
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace { ambient_dim: self.ambient_dim, basis: vec![] };
        }
        let ctx = self.basis[0][0].ctx().clone();
        let n = self.ambient_dim;
        let k1 = self.dim();
        let k2 = other.dim();
        let mut m = Mat::zeros(&ctx, n, k1 + k2);
        for (j, b) in self.basis.iter().enumerate() {
            for i in 0..n {
                *m.at_mut(i, j) = b[i].clone();
            }
        }
        for (j, b) in other.basis.iter().enumerate() {
            for i in 0..n {
                *m.at_mut(i, k1 + j) = b[i].neg();
            }
        }
        let ker = m.kernel();
        let vecs: Vec<CVec> = ker
            .iter()
            .map(|coef| {
                let mut v = vec![CycNum::zero(&ctx); n];
                for (j, b) in self.basis.iter().enumerate() {
                    if !coef[j].is_zero() {
                        v = vec_add(&v, &vec_scale(b, &coef[j]));
                    }
                }
                v
            })
            .collect();
        Subspace::from_vectors(n, vecs)
    }

    /// Image under a matrix (columns act on coordinates).
    pub fn apply(&self, m: &Mat) -> Subspace {
        let vecs = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Subspace::from_vectors(self.ambient_dim, vecs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat_i64;

    fn ctx() -> Arc<FieldCtx> {
        FieldCtx::new(120)
    }

    fn m_i64(ctx: &Arc<FieldCtx>, rows: usize, cols: usize, vals: &[i64]) -> Mat {
        let data = vals.iter().map(|&v| CycNum::from_i64(ctx, v)).collect();
        Mat { rows, cols, data }
    }

    #[test]
    fn kernel_dimensions() {
        let c = ctx();
        assert_eq!(Mat::zeros(&c, 3, 3).kernel().len(), 3);
        assert_eq!(Mat::identity(&c, 4).kernel().len(), 0);
        let a = m_i64(&c, 2, 3, &[1, 2, 3, 2, 4, 6]);
        let ker = a.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(vec_is_zero(&a.mul_vec(v)));
        }
        // rank-nullity
        assert_eq!(a.rank() + ker.len(), 3);
    }

    #[test]
    fn solve_round_trip() {
        let c = ctx();
        let a = m_i64(&c, 3, 3, &[2, 1, 0, 0, 3, 1, 1, 0, 1]);
        let b: Vec<CycNum> = [5, 7, -2].iter().map(|&v| CycNum::from_i64(&c, v)).collect();
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        // inconsistent system
        let a2 = m_i64(&c, 2, 2, &[1, 1, 1, 1]);
        let b2 = vec![CycNum::from_i64(&c, 0), CycNum::from_i64(&c, 1)];
        assert!(a2.solve(&b2).is_none());
    }

    #[test]
    fn determinant_and_inverse() {
        let c = ctx();
        let a = m_i64(&c, 3, 3, &[0, 1, 2, 3, 4, 5, 6, 7, 9]);
        assert_eq!(a.det().as_rat(), Some(&rat_i64(-3)));
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_identity());
    }

    #[test]
    fn eigenspace_of_roots_of_unity() {
        let c = ctx();
        let id = Mat::identity(&c, 5);
        assert_eq!(id.eigenspace_root_of_unity(0, 1).unwrap().len(), 5);
        // order-4 rotation in the plane: eigenvalues +-i
        let rot = m_i64(&c, 2, 2, &[0, -1, 1, 0]);
        let total: usize =
            (0..4).map(|k| rot.eigenspace_root_of_unity(k, 4).unwrap().len()).sum();
        assert_eq!(total, 2);
        assert_eq!(rot.eigenspace_root_of_unity(1, 4).unwrap().len(), 1);
        assert_eq!(rot.eigenspace_root_of_unity(3, 4).unwrap().len(), 1);
        assert!(rot.eigenspace_root_of_unity(1, 7).is_err());
    }

    #[test]
    fn exterior_square_multiplicative() {
        let c = ctx();
        let a = m_i64(&c, 4, 4, &[1, 2, 0, 1, 0, 1, 3, 0, 2, 0, 1, 1, 1, 1, 0, 2]);
        let b = m_i64(&c, 4, 4, &[0, 1, 1, 0, 1, 0, 2, 1, 0, 2, 1, 0, 3, 0, 0, 1]);
        let lhs = a.mul(&b).exterior_square();
        let rhs = a.exterior_square().mul(&b.exterior_square());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn subspace_operations() {
        let c = ctx();
        let e = |i: usize| {
            let mut v = vec![CycNum::zero(&c); 4];
            v[i] = CycNum::one(&c);
            v
        };
        let s1 = Subspace::from_vectors(4, vec![e(0), e(1)]);
        let s2 = Subspace::from_vectors(4, vec![e(1), e(2)]);
        let meet = s1.intersect(&s2);
        assert_eq!(meet.dim(), 1);
        assert!(meet.contains(&e(1)));
        assert_eq!(s1.sum(&s2).dim(), 3);
    }
}
