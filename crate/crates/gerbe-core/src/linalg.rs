//! Exact rational vectors and matrices.
//!
//! Everything downstream works in the ambient coordinates of a Cartan
//! algebra, so the only scalar type is an arbitrary-precision rational.
//! The invariant bilinear form is always diagonal in those coordinates and
//! is represented by its diagonal Gram entries.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Rational from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    BigRational::from_integer(BigInt::from(num))
}

/// Dense rational vector in a fixed ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vector {
    coords: Vec<Rational>,
}

impl Vector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Vector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Vector {
            coords: vec![Rational::zero(); dim],
        }
    }

    /// Standard basis vector e_i (0-based).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coords[i] = Rational::one();
        v
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Vector {
            coords: coords.iter().map(|&c| rat_int(c)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn set(&mut self, i: usize, value: Rational) {
        self.coords[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Vector {
        Vector {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Vector {
        Vector {
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    pub fn scale_int(&self, s: i64) -> Vector {
        self.scale(&rat_int(s))
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for c in &self.coords {
            l = num_integer::lcm(l, c.denom().clone());
        }
        l
    }
}

/// Diagonal Gram matrix of the normalized invariant form `tr XY`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    diag: Vec<Rational>,
}

impl Form {
    pub fn diagonal(diag: Vec<Rational>) -> Self {
        Form { diag }
    }

    pub fn identity(dim: usize) -> Self {
        Form {
            diag: vec![Rational::one(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[Rational] {
        &self.diag
    }

    /// `tr xy` in these coordinates. Errors on dimension mismatch.
    pub fn pair(&self, x: &Vector, y: &Vector) -> Result<Rational> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        if y.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: y.dim(),
            });
        }
        let mut acc = Rational::zero();
        for i in 0..self.dim() {
            acc += x.get(i) * y.get(i) * &self.diag[i];
        }
        Ok(acc)
    }

    pub fn norm_sq(&self, x: &Vector) -> Result<Rational> {
        self.pair(x, x)
    }
}

/// Dense rational matrix, row-major. Used for the adjoint actions of the
/// alcove symmetries and for small exact solves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Build from columns (images of the standard basis vectors).
    pub fn from_columns(cols: &[Vector]) -> Self {
        let nrows = cols[0].dim();
        let mut m = Self::zero(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.dim(), nrows);
            for i in 0..nrows {
                m.set(i, j, c.get(i).clone());
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.dim());
        let mut out = Vector::zero(self.rows);
        for i in 0..self.rows {
            let mut acc = Rational::zero();
            for j in 0..self.cols {
                acc += self.get(i, j) * v.get(j);
            }
            out.set(i, acc);
        }
        out
    }

    /// Solve `self * x = b` by Gaussian elimination. Returns one exact
    /// solution or `None` when the system is inconsistent. The matrix may
    /// be rectangular; free variables are set to zero.
    pub fn solve(&self, b: &Vector) -> Option<Vector> {
        assert_eq!(self.rows, b.dim());
        let mut a = self.clone();
        let mut rhs: Vec<Rational> = b.coords().to_vec();
        let mut pivot_col_of_row = vec![usize::MAX; self.rows];
        let mut row = 0;
        for col in 0..self.cols {
            // Find a pivot for this column.
            let Some(p) = (row..self.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    let tmp = a.get(row, j).clone();
                    a.set(row, j, a.get(p, j).clone());
                    a.set(p, j, tmp);
                }
                rhs.swap(p, row);
            }
            let inv = a.get(row, col).recip();
            for j in col..self.cols {
                let v = a.get(row, j) * &inv;
                a.set(row, j, v);
            }
            rhs[row] *= &inv;
            for r in 0..self.rows {
                if r != row && !a.get(r, col).is_zero() {
                    let factor = a.get(r, col).clone();
                    for j in col..self.cols {
                        let v = a.get(r, j) - &factor * a.get(row, j);
                        a.set(r, j, v);
                    }
                    let v = &rhs[r] - &factor * &rhs[row];
                    rhs[r] = v;
                }
            }
            pivot_col_of_row[row] = col;
            row += 1;
            if row == self.rows {
                break;
            }
        }
        // Inconsistent if a zero row has nonzero rhs.
        for r in row..self.rows {
            if !rhs[r].is_zero() {
                return None;
            }
        }
        let mut x = Vector::zero(self.cols);
        for r in 0..row {
            x.set(pivot_col_of_row[r], rhs[r].clone());
        }
        Some(x)
    }
}

/// Clears denominators of a family of vectors simultaneously: returns the
/// common scale `d` and the integer coordinate lists of `d * v`.
pub fn clear_denominators(vectors: &[&Vector]) -> (BigInt, Vec<Vec<BigInt>>) {
    let mut l = BigInt::one();
    for v in vectors {
        l = num_integer::lcm(l, v.denominator_lcm());
    }
    let scaled = vectors
        .iter()
        .map(|v| {
            v.coords()
                .iter()
                .map(|c| {
                    let s = c * BigRational::from_integer(l.clone());
                    debug_assert!(s.denom().is_one());
                    s.numer().clone()
                })
                .collect()
        })
        .collect();
    (l, scaled)
}

/// True when `q` is an integer.
pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Reduce a rational into `[0, 1)` (the fractional part).
pub fn fract_mod1(q: &Rational) -> Rational {
    let f = q.floor();
    let r = q - f;
    debug_assert!(!r.is_negative() && r < Rational::one());
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_examples() {
        // Orthonormal basis: identity Gram.
        let f = Form::identity(3);
        let e1 = Vector::unit(3, 0);
        let e2 = Vector::unit(3, 1);
        assert_eq!(f.pair(&e1, &e1).unwrap(), rat_int(1));
        assert_eq!(f.pair(&e1, &e2).unwrap(), rat_int(0));
        // Doubled Gram, as for the symplectic families.
        let f2 = Form::diagonal(vec![rat_int(2); 3]);
        assert_eq!(f2.pair(&e1, &e1).unwrap(), rat_int(2));
        assert_eq!(f2.pair(&e1, &e2).unwrap(), rat_int(0));
        // Zero vector pairs to zero with anything.
        let z = Vector::zero(3);
        assert_eq!(f2.pair(&z, &e2).unwrap(), rat_int(0));
    }

    #[test]
    fn form_dimension_mismatch() {
        let f = Form::identity(3);
        let v = Vector::zero(2);
        assert!(f.pair(&v, &Vector::zero(3)).is_err());
    }

    #[test]
    fn gaussian_solve() {
        // 2x + y = 5, x - y = 1  =>  x = 2, y = 1
        let mut a = Matrix::zero(2, 2);
        a.set(0, 0, rat_int(2));
        a.set(0, 1, rat_int(1));
        a.set(1, 0, rat_int(1));
        a.set(1, 1, rat_int(-1));
        let b = Vector::from_i64(&[5, 1]);
        let x = a.solve(&b).unwrap();
        assert_eq!(x, Vector::from_i64(&[2, 1]));
        // Inconsistent system.
        let mut c = Matrix::zero(2, 1);
        c.set(0, 0, rat_int(1));
        c.set(1, 0, rat_int(1));
        assert!(c.solve(&Vector::from_i64(&[1, 2])).is_none());
    }

    #[test]
    fn fract_wraps_negative() {
        assert_eq!(fract_mod1(&rat(-3, 2)), rat(1, 2));
        assert_eq!(fract_mod1(&rat_int(4)), rat_int(0));
        assert_eq!(fract_mod1(&rat(7, 3)), rat(1, 3));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rat() -> impl Strategy<Value = Rational> {
            (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
        }

        fn vec3() -> impl Strategy<Value = Vector> {
            proptest::collection::vec(small_rat(), 3).prop_map(Vector::new)
        }

        proptest! {
            #[test]
            fn form_symmetric_bilinear(x in vec3(), y in vec3(), z in vec3(), s in small_rat()) {
                let f = Form::diagonal(vec![rat_int(1), rat_int(2), rat(1, 2)]);
                prop_assert_eq!(f.pair(&x, &y).unwrap(), f.pair(&y, &x).unwrap());
                let lhs = f.pair(&x.add(&z.scale(&s)), &y).unwrap();
                let rhs = f.pair(&x, &y).unwrap() + s * f.pair(&z, &y).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
