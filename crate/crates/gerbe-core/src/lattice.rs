//! Lattices with rational bases: membership and intersection.

use num_bigint::BigInt;
use num_rational::BigRational;

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{clear_denominators, Vector};
use crate::snf::{integer_kernel, solve_integer, IntMatrix, IntSolver};

/// A free Z-module spanned by linearly independent rational vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    basis: Vec<Vector>,
    ambient_dim: usize,
}

impl Lattice {
    pub fn new(basis: Vec<Vector>, ambient_dim: usize) -> Self {
        for b in &basis {
            assert_eq!(b.dim(), ambient_dim, "basis vector of wrong dimension");
        }
        Lattice { basis, ambient_dim }
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Integer column matrix of the basis after clearing denominators of
    /// the basis and `extra` together; returns (scale, matrix, scaled extras).
    fn integer_data(&self, extra: &[&Vector]) -> (BigInt, IntMatrix, Vec<Vec<BigInt>>) {
        let mut all: Vec<&Vector> = self.basis.iter().collect();
        all.extend_from_slice(extra);
        let (scale, scaled) = clear_denominators(&all);
        let mut m = IntMatrix::zero(self.ambient_dim, self.basis.len());
        for (j, col) in scaled[..self.basis.len()].iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        (scale, m, scaled[self.basis.len()..].to_vec())
    }

    /// True iff `v` is an integer combination of the basis vectors.
    pub fn contains(&self, v: &Vector) -> Result<bool> {
        if v.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.dim(),
            });
        }
        if self.basis.is_empty() {
            return Ok(v.is_zero());
        }
        let (_, m, extras) = self.integer_data(&[v]);
        Ok(solve_integer(&m, &extras[0]).is_some())
    }

    /// Integer coefficients expressing `v` in the basis, when they exist.
    pub fn coordinates(&self, v: &Vector) -> Result<Option<Vec<BigInt>>> {
        if v.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.dim(),
            });
        }
        if self.basis.is_empty() {
            return Ok(if v.is_zero() { Some(vec![]) } else { None });
        }
        let (_, m, extras) = self.integer_data(&[v]);
        Ok(solve_integer(&m, &extras[0]))
    }

    /// Factor out the Smith decomposition for repeated membership tests.
    pub fn solver(&self) -> LatticeSolver {
        if self.basis.is_empty() {
            return LatticeSolver {
                scale: BigInt::one(),
                solver: None,
                ambient_dim: self.ambient_dim,
            };
        }
        let (scale, m, _) = self.integer_data(&[]);
        LatticeSolver {
            scale,
            solver: Some(IntSolver::new(&m)),
            ambient_dim: self.ambient_dim,
        }
    }

    /// Intersection with another lattice in the same ambient space.
    ///
    /// Computed from the integer kernel of `[A | -B]`: a kernel element
    /// `(x, y)` has `A x = B y`, and `A x` runs through a basis of the
    /// intersection as `(x, y)` runs through a kernel basis.
    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        if other.ambient_dim != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        if self.basis.is_empty() || other.basis.is_empty() {
            return Ok(Lattice::new(vec![], self.ambient_dim));
        }
        let mut all: Vec<&Vector> = self.basis.iter().collect();
        all.extend(other.basis.iter());
        let (scale, scaled) = clear_denominators(&all);
        let a_cols = self.basis.len();
        let b_cols = other.basis.len();
        let mut stacked = IntMatrix::zero(self.ambient_dim, a_cols + b_cols);
        for (j, col) in scaled[..a_cols].iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                stacked.set(i, j, v.clone());
            }
        }
        for (j, col) in scaled[a_cols..].iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                stacked.set(i, a_cols + j, -v.clone());
            }
        }
        let kernel = integer_kernel(&stacked);
        let mut basis = Vec::with_capacity(kernel.len());
        for gen in kernel {
            // Scaled intersection vector A x; undo the denominator scale.
            let mut coords = vec![BigRational::from_integer(BigInt::from(0)); self.ambient_dim];
            for (j, c) in gen[..a_cols].iter().enumerate() {
                for i in 0..self.ambient_dim {
                    coords[i] += BigRational::from_integer(c * &scaled[j][i]);
                }
            }
            let v = Vector::new(
                coords
                    .into_iter()
                    .map(|c| c / BigRational::from_integer(scale.clone()))
                    .collect(),
            );
            if !v.is_zero() {
                basis.push(v);
            }
        }
        Ok(Lattice::new(basis, self.ambient_dim))
    }
}

/// Membership tester that reuses one Smith decomposition of the basis.
pub struct LatticeSolver {
    scale: BigInt,
    solver: Option<IntSolver>,
    ambient_dim: usize,
}

impl LatticeSolver {
    pub fn contains(&self, v: &Vector) -> Result<bool> {
        if v.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.dim(),
            });
        }
        let Some(solver) = &self.solver else {
            return Ok(v.is_zero());
        };
        // Lattice vectors have denominators dividing the basis scale.
        let mut b = Vec::with_capacity(v.dim());
        for c in v.coords() {
            let s = c * BigRational::from_integer(self.scale.clone());
            if !s.denom().is_one() {
                return Ok(false);
            }
            b.push(s.numer().clone());
        }
        Ok(solver.solve(&b).is_some())
    }
}
