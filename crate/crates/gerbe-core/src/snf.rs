//! Integer matrices, Smith normal form, and linear solving over `Z` and
//! over residue rings `Z_M`.
//!
//! The Smith form is computed by gcd pivoting; the matrices that show up
//! here (lattice bases, coboundary matrices of centers of order <= 12) are
//! small and dense, so no sparse or modular tricks are needed beyond an
//! optional entry reduction mod M for the residue-ring solver.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let nrows = rows.len();
        let ncols = if nrows == 0 { 0 } else { rows[0].len() };
        let mut m = Self::zero(nrows, ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols);
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &BigInt) {
        self.data[i * self.cols + j] += v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k).clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + &a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    acc += self.get(i, j) * &v[j];
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_a += c * row_b
    fn row_axpy(&mut self, a: usize, b: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(a, j) + c * self.get(b, j);
            self.set(a, j, v);
        }
    }

    /// col_a += c * col_b
    fn col_axpy(&mut self, a: usize, b: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, a) + c * self.get(i, b);
            self.set(i, a, v);
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.get(a, j);
            self.set(a, j, v);
        }
    }

    /// Determinant by fraction-free Gaussian elimination (Bareiss).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }
}

/// Result of the Smith decomposition `d = u * a * v` with `u`, `v`
/// unimodular, `d` diagonal with nonnegative entries and `d_1 | d_2 | ...`.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// Diagonal entries (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Smith normal form over `Z` by pivot-with-gcd elimination.
pub fn smith_normal_form(a: &IntMatrix) -> SmithNormalForm {
    let mut work = Workspace::new(a.clone(), None, Tracking::Both, None);
    work.diagonalize();
    work.fix_divisibility();
    work.make_nonnegative();
    SmithNormalForm {
        d: work.a,
        u: work.u.expect("tracked"),
        v: work.v.expect("tracked"),
    }
}

#[derive(PartialEq)]
enum Tracking {
    /// Track both unimodular transforms (full Smith form).
    Both,
    /// Track only the column transform; row operations are applied to a
    /// carried right-hand side instead. Cheap for tall systems.
    ColumnsAndRhs,
    /// Track nothing; only the diagonal is wanted.
    None,
}

/// Shared elimination state. When `modulus` is set, all entries of the
/// working matrix and of the transforms are kept reduced mod M; the result
/// then diagonalizes a matrix congruent to the input mod M, which is all
/// the residue-ring solver needs, and keeps entries small.
struct Workspace {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
    rhs: Option<Vec<BigInt>>,
    modulus: Option<BigInt>,
}

impl Workspace {
    fn new(a: IntMatrix, modulus: Option<BigInt>, tracking: Tracking, rhs: Option<Vec<BigInt>>) -> Self {
        let u = match tracking {
            Tracking::Both => Some(IntMatrix::identity(a.rows())),
            _ => None,
        };
        let v = match tracking {
            Tracking::Both | Tracking::ColumnsAndRhs => Some(IntMatrix::identity(a.cols())),
            Tracking::None => None,
        };
        let mut w = Workspace {
            a,
            u,
            v,
            rhs,
            modulus,
        };
        w.reduce_all();
        w
    }

    fn reduce_all(&mut self) {
        if let Some(m) = self.modulus.clone() {
            for e in self.a.data.iter_mut() {
                *e = e.mod_floor(&m);
            }
            if let Some(rhs) = self.rhs.as_mut() {
                for e in rhs.iter_mut() {
                    *e = e.mod_floor(&m);
                }
            }
        }
    }

    fn reduce_row(m: &mut IntMatrix, i: usize, modulus: &Option<BigInt>) {
        if let Some(md) = modulus {
            for j in 0..m.cols() {
                let e = &mut m.data[i * m.cols + j];
                *e = e.mod_floor(md);
            }
        }
    }

    fn reduce_col(m: &mut IntMatrix, j: usize, modulus: &Option<BigInt>) {
        if let Some(md) = modulus {
            for i in 0..m.rows() {
                let e = &mut m.data[i * m.cols + j];
                *e = e.mod_floor(md);
            }
        }
    }

    fn row_op(&mut self, a: usize, b: usize, c: &BigInt) {
        self.a.row_axpy(a, b, c);
        Self::reduce_row(&mut self.a, a, &self.modulus);
        if let Some(u) = self.u.as_mut() {
            u.row_axpy(a, b, c);
            Self::reduce_row(u, a, &self.modulus);
        }
        if let Some(rhs) = self.rhs.as_mut() {
            let v = &rhs[a] + c * &rhs[b];
            rhs[a] = match &self.modulus {
                Some(m) => v.mod_floor(m),
                None => v,
            };
        }
    }

    fn col_op(&mut self, a: usize, b: usize, c: &BigInt) {
        self.a.col_axpy(a, b, c);
        Self::reduce_col(&mut self.a, a, &self.modulus);
        if let Some(v) = self.v.as_mut() {
            v.col_axpy(a, b, c);
            Self::reduce_col(v, a, &self.modulus);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.a.swap_rows(a, b);
        if let Some(u) = self.u.as_mut() {
            u.swap_rows(a, b);
        }
        if let Some(rhs) = self.rhs.as_mut() {
            rhs.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.a.swap_cols(a, b);
        if let Some(v) = self.v.as_mut() {
            v.swap_cols(a, b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        Self::reduce_row(&mut self.a, i, &self.modulus);
        if let Some(u) = self.u.as_mut() {
            u.negate_row(i);
            Self::reduce_row(u, i, &self.modulus);
        }
        if let Some(rhs) = self.rhs.as_mut() {
            rhs[i] = match &self.modulus {
                Some(m) => (-&rhs[i]).mod_floor(m),
                None => -&rhs[i],
            };
        }
    }

    /// Magnitude used for pivot selection. Under a modulus we compare the
    /// symmetric representative so small negative residues stay cheap.
    fn weight(&self, v: &BigInt) -> BigInt {
        match &self.modulus {
            None => v.abs(),
            Some(m) => {
                let r = v.mod_floor(m);
                let alt = m - &r;
                if alt < r {
                    alt
                } else {
                    r.clone()
                }
            }
        }
    }

    fn is_effectively_zero(&self, v: &BigInt) -> bool {
        match &self.modulus {
            None => v.is_zero(),
            Some(m) => v.mod_floor(m).is_zero(),
        }
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let e = self.a.get(i, j);
                if self.is_effectively_zero(e) {
                    continue;
                }
                let w = self.weight(e);
                match &best {
                    Some((_, bw)) if *bw <= w => {}
                    _ => best = Some(((i, j), w)),
                }
            }
        }
        best.map(|(idx, _)| idx)
    }

    fn diagonalize(&mut self) {
        let n = self.a.rows().min(self.a.cols());
        let mut t = 0;
        while t < n {
            let Some((pi, pj)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                // Reduce the column below/above by the pivot.
                for i in t + 1..self.a.rows() {
                    if self.is_effectively_zero(self.a.get(i, t)) {
                        continue;
                    }
                    let q = -(self.a.get(i, t).div_floor(self.a.get(t, t)));
                    self.row_op(i, t, &q);
                    if !self.is_effectively_zero(self.a.get(i, t)) {
                        // Remainder became the smaller entry: promote it.
                        self.swap_rows(t, i);
                        clean = false;
                    }
                }
                for j in t + 1..self.a.cols() {
                    if self.is_effectively_zero(self.a.get(t, j)) {
                        continue;
                    }
                    let q = -(self.a.get(t, j).div_floor(self.a.get(t, t)));
                    self.col_op(j, t, &q);
                    if !self.is_effectively_zero(self.a.get(t, j)) {
                        self.swap_cols(t, j);
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            t += 1;
        }
        // Mod-M residues may sit anywhere in [0, M); canonicalize zeros.
        if self.modulus.is_some() {
            self.reduce_all();
        }
    }

    /// Enforce d_1 | d_2 | ... (only used for the true Smith form over Z).
    fn fix_divisibility(&mut self) {
        let n = self.a.rows().min(self.a.cols());
        loop {
            let mut ok = true;
            for t in 0..n.saturating_sub(1) {
                let d0 = self.a.get(t, t).clone();
                let d1 = self.a.get(t + 1, t + 1).clone();
                if d0.is_zero() && !d1.is_zero() {
                    self.swap_rows(t, t + 1);
                    self.swap_cols(t, t + 1);
                    ok = false;
                    continue;
                }
                if !d0.is_zero() && !d1.is_zero() && !(&d1 % &d0).is_zero() {
                    // Stack d1 into row t and re-run the gcd elimination on
                    // the trailing block.
                    self.row_op(t, t + 1, &BigInt::one());
                    self.local_rediagonalize(t);
                    ok = false;
                }
            }
            if ok {
                break;
            }
        }
    }

    fn local_rediagonalize(&mut self, from: usize) {
        let n = self.a.rows().min(self.a.cols());
        let mut t = from;
        while t < n {
            let Some((pi, pj)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.a.rows() {
                    if self.is_effectively_zero(self.a.get(i, t)) {
                        continue;
                    }
                    let q = -(self.a.get(i, t).div_floor(self.a.get(t, t)));
                    self.row_op(i, t, &q);
                    if !self.is_effectively_zero(self.a.get(i, t)) {
                        self.swap_rows(t, i);
                        clean = false;
                    }
                }
                for j in t + 1..self.a.cols() {
                    if self.is_effectively_zero(self.a.get(t, j)) {
                        continue;
                    }
                    let q = -(self.a.get(t, j).div_floor(self.a.get(t, t)));
                    self.col_op(j, t, &q);
                    if !self.is_effectively_zero(self.a.get(t, j)) {
                        self.swap_cols(t, j);
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            t += 1;
        }
    }

    fn make_nonnegative(&mut self) {
        let n = self.a.rows().min(self.a.cols());
        for t in 0..n {
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// One solution plus a generating set of the homogeneous solutions of
/// `a * x = b (mod m)`.
#[derive(Debug, Clone)]
pub struct ModSolution {
    pub particular: Vec<BigInt>,
    pub kernel: Vec<Vec<BigInt>>,
    pub modulus: BigInt,
}

/// Solve `a * x = b (mod m)`. Returns `None` when no solution exists.
///
/// The decision goes through Smith-style elimination of `a`: with
/// `d = u a v` diagonal the system splits into `d_i y_i = (u b)_i (mod m)`,
/// each solvable iff `gcd(d_i, m)` divides the right-hand side. Small
/// moduli (every modulus that occurs here) run on machine integers.
pub fn solve_linear_mod(a: &IntMatrix, b: &[BigInt], m: &BigInt) -> Result<Option<ModSolution>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            got: b.len(),
        });
    }
    assert!(m >= &BigInt::one());
    if let Some(ms) = small_modulus(m) {
        return Ok(small::solve(a, b, ms, m));
    }
    let mut work = Workspace::new(
        a.clone(),
        Some(m.clone()),
        Tracking::ColumnsAndRhs,
        Some(b.to_vec()),
    );
    work.diagonalize();
    let dg = work.a;
    let vmat = work.v.expect("tracked");
    let c = work.rhs.expect("tracked");
    let n = a.cols();
    let rank_bound = a.rows().min(n);
    let mut y = vec![BigInt::zero(); n];
    let mut kernel_y: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..rank_bound {
        let d = dg.get(i, i).mod_floor(m);
        let ci = c[i].mod_floor(m);
        let g = d.gcd(m);
        if !(ci.clone() % &g).is_zero() {
            return Ok(None);
        }
        if g == *m {
            // d_i = 0 mod m: coordinate free.
            y[i] = BigInt::zero();
            let mut gen = vec![BigInt::zero(); n];
            gen[i] = BigInt::one();
            kernel_y.push(gen);
            continue;
        }
        // d_i y = c_i (mod m)  <=>  (d_i/g) y = (c_i/g) (mod m/g)
        let mg = m / &g;
        let dd = (&d / &g).mod_floor(&mg);
        let cc = (&ci / &g).mod_floor(&mg);
        let inv = mod_inverse(&dd, &mg).expect("unit after dividing by gcd");
        y[i] = (cc * inv).mod_floor(&mg);
        if mg < *m {
            let mut gen = vec![BigInt::zero(); n];
            gen[i] = mg.clone();
            kernel_y.push(gen);
        }
    }
    // Rows beyond the diagonal block are pure consistency conditions.
    for i in rank_bound..a.rows() {
        if !c[i].mod_floor(m).is_zero() {
            return Ok(None);
        }
    }
    // Columns beyond the diagonal block are free.
    for j in rank_bound..n {
        let mut gen = vec![BigInt::zero(); n];
        gen[j] = BigInt::one();
        kernel_y.push(gen);
    }
    let x = reduce_mod(&vmat.apply(&y), m);
    let kernel = kernel_y
        .into_iter()
        .map(|g| reduce_mod(&vmat.apply(&g), m))
        .collect();
    Ok(Some(ModSolution {
        particular: x,
        kernel,
        modulus: m.clone(),
    }))
}

/// Number of solutions of `a * x = 0 (mod m)` over `(Z_m)^cols`.
pub fn count_kernel_mod(a: &IntMatrix, m: &BigInt) -> BigInt {
    let diag: Vec<BigInt> = if let Some(ms) = small_modulus(m) {
        small::diagonal(a, ms).into_iter().map(BigInt::from).collect()
    } else {
        let mut work = Workspace::new(a.clone(), Some(m.clone()), Tracking::None, None);
        work.diagonalize();
        let bound = a.rows().min(a.cols());
        (0..bound).map(|j| work.a.get(j, j).clone()).collect()
    };
    let n = a.cols();
    let rank_bound = a.rows().min(n);
    let mut count = BigInt::one();
    for j in 0..n {
        if j < rank_bound {
            count *= diag[j].mod_floor(m).gcd(m);
        } else {
            count *= m;
        }
    }
    count
}

/// Moduli that fit the machine-integer elimination (products must stay
/// within i64).
fn small_modulus(m: &BigInt) -> Option<i64> {
    use num_traits::ToPrimitive;
    let v = m.to_i64()?;
    (v >= 1 && v < (1 << 30)).then_some(v)
}

/// Machine-integer twin of the elimination above, for moduli < 2^30.
/// Entries are kept in `[0, m)`; all intermediate products fit in i64
/// (and the i128 upcasts guard the few places that could not).
mod small {
    use super::{IntMatrix, ModSolution};
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;

    struct Work {
        rows: usize,
        cols: usize,
        a: Vec<i64>,
        v: Option<Vec<i64>>,
        rhs: Option<Vec<i64>>,
        m: i64,
    }

    fn mul_mod(a: i64, b: i64, m: i64) -> i64 {
        ((a as i128 * b as i128).rem_euclid(m as i128)) as i64
    }

    impl Work {
        fn new(a: &IntMatrix, m: i64, rhs: Option<Vec<i64>>, track_v: bool) -> Self {
            let rows = a.rows();
            let cols = a.cols();
            let mut data = Vec::with_capacity(rows * cols);
            for i in 0..rows {
                for j in 0..cols {
                    data.push(
                        a.get(i, j)
                            .mod_floor(&BigInt::from(m))
                            .to_i64()
                            .expect("reduced entry fits"),
                    );
                }
            }
            let v = track_v.then(|| {
                let mut id = vec![0i64; cols * cols];
                for j in 0..cols {
                    id[j * cols + j] = 1;
                }
                id
            });
            Work {
                rows,
                cols,
                a: data,
                v,
                rhs: rhs.map(|r| r.into_iter().map(|x| x.rem_euclid(m)).collect()),
                m,
            }
        }

        fn at(&self, i: usize, j: usize) -> i64 {
            self.a[i * self.cols + j]
        }

        fn weight(&self, x: i64) -> i64 {
            x.min(self.m - x)
        }

        fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
            let mut best: Option<((usize, usize), i64)> = None;
            for i in t..self.rows {
                for j in t..self.cols {
                    let e = self.at(i, j);
                    if e == 0 {
                        continue;
                    }
                    let w = self.weight(e);
                    if best.as_ref().map_or(true, |(_, bw)| w < *bw) {
                        best = Some(((i, j), w));
                    }
                }
            }
            best.map(|(idx, _)| idx)
        }

        fn swap_rows(&mut self, x: usize, y: usize) {
            if x == y {
                return;
            }
            for j in 0..self.cols {
                self.a.swap(x * self.cols + j, y * self.cols + j);
            }
            if let Some(rhs) = self.rhs.as_mut() {
                rhs.swap(x, y);
            }
        }

        fn swap_cols(&mut self, x: usize, y: usize) {
            if x == y {
                return;
            }
            for i in 0..self.rows {
                self.a.swap(i * self.cols + x, i * self.cols + y);
            }
            if let Some(v) = self.v.as_mut() {
                for i in 0..self.cols {
                    v.swap(i * self.cols + x, i * self.cols + y);
                }
            }
        }

        fn row_op(&mut self, x: usize, y: usize, c: i64) {
            let m = self.m;
            for j in 0..self.cols {
                let add = mul_mod(c, self.a[y * self.cols + j], m);
                let e = &mut self.a[x * self.cols + j];
                *e = (*e + add).rem_euclid(m);
            }
            if let Some(rhs) = self.rhs.as_mut() {
                rhs[x] = (rhs[x] + mul_mod(c, rhs[y], m)).rem_euclid(m);
            }
        }

        fn col_op(&mut self, x: usize, y: usize, c: i64) {
            let m = self.m;
            for i in 0..self.rows {
                let add = mul_mod(c, self.a[i * self.cols + y], m);
                let e = &mut self.a[i * self.cols + x];
                *e = (*e + add).rem_euclid(m);
            }
            if let Some(v) = self.v.as_mut() {
                for i in 0..self.cols {
                    let add = mul_mod(c, v[i * self.cols + y], m);
                    let e = &mut v[i * self.cols + x];
                    *e = (*e + add).rem_euclid(m);
                }
            }
        }

        fn diagonalize(&mut self) {
            let n = self.rows.min(self.cols);
            let mut t = 0;
            while t < n {
                let Some((pi, pj)) = self.find_pivot(t) else {
                    break;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                loop {
                    let mut clean = true;
                    for i in t + 1..self.rows {
                        let e = self.at(i, t);
                        if e == 0 {
                            continue;
                        }
                        let q = (self.m - e.div_floor(&self.at(t, t))).rem_euclid(self.m);
                        self.row_op(i, t, q);
                        if self.at(i, t) != 0 {
                            self.swap_rows(t, i);
                            clean = false;
                        }
                    }
                    for j in t + 1..self.cols {
                        let e = self.at(t, j);
                        if e == 0 {
                            continue;
                        }
                        let q = (self.m - e.div_floor(&self.at(t, t))).rem_euclid(self.m);
                        self.col_op(j, t, q);
                        if self.at(t, j) != 0 {
                            self.swap_cols(t, j);
                            clean = false;
                        }
                    }
                    if clean {
                        break;
                    }
                }
                t += 1;
            }
        }
    }

    pub(super) fn diagonal(a: &IntMatrix, m: i64) -> Vec<i64> {
        let mut w = Work::new(a, m, None, false);
        w.diagonalize();
        (0..a.rows().min(a.cols())).map(|j| w.at(j, j)).collect()
    }

    pub(super) fn solve(a: &IntMatrix, b: &[BigInt], m: i64, mbig: &BigInt) -> Option<ModSolution> {
        let rhs: Vec<i64> = b
            .iter()
            .map(|x| x.mod_floor(mbig).to_i64().expect("reduced entry fits"))
            .collect();
        let mut w = Work::new(a, m, Some(rhs), true);
        w.diagonalize();
        let n = a.cols();
        let rank_bound = a.rows().min(n);
        let c = w.rhs.take().expect("tracked");
        let mut y = vec![0i64; n];
        let mut kernel_y: Vec<Vec<i64>> = Vec::new();
        for i in 0..rank_bound {
            let d = w.at(i, i);
            let g = d.gcd(&m);
            if c[i] % g != 0 {
                return None;
            }
            if g == m {
                let mut gen = vec![0i64; n];
                gen[i] = 1;
                kernel_y.push(gen);
                continue;
            }
            let mg = m / g;
            let dd = (d / g).rem_euclid(mg);
            let cc = (c[i] / g).rem_euclid(mg);
            let inv = mod_inverse_i64(dd, mg).expect("unit after dividing by gcd");
            y[i] = mul_mod(cc, inv, mg);
            if mg < m {
                let mut gen = vec![0i64; n];
                gen[i] = mg;
                kernel_y.push(gen);
            }
        }
        for i in rank_bound..a.rows() {
            if c[i] % m != 0 {
                return None;
            }
        }
        for j in rank_bound..n {
            let mut gen = vec![0i64; n];
            gen[j] = 1;
            kernel_y.push(gen);
        }
        let v = w.v.take().expect("tracked");
        let apply_v = |y: &[i64]| -> Vec<BigInt> {
            (0..n)
                .map(|i| {
                    let mut acc: i128 = 0;
                    for j in 0..n {
                        acc += v[i * n + j] as i128 * y[j] as i128;
                    }
                    BigInt::from(acc.rem_euclid(m as i128) as i64)
                })
                .collect()
        };
        Some(ModSolution {
            particular: apply_v(&y),
            kernel: kernel_y.iter().map(|g| apply_v(g)).collect(),
            modulus: mbig.clone(),
        })
    }

    fn mod_inverse_i64(a: i64, m: i64) -> Option<i64> {
        let e = a.extended_gcd(&m);
        (e.gcd == 1).then(|| e.x.rem_euclid(m))
    }
}

/// Basis of the integer kernel `{x : a x = 0}` of an integer matrix.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let n = a.cols();
    let rank_bound = a.rows().min(n);
    let mut gens = Vec::new();
    for j in 0..n {
        let free = j >= rank_bound || snf.d.get(j, j).is_zero();
        if free {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            gens.push(snf.v.apply(&e));
        }
    }
    gens
}

/// Exact integer solution of `a x = b` over `Z`, or `None`.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    IntSolver::new(a).solve(b)
}

/// Reusable exact solver for repeated right-hand sides against one matrix.
pub struct IntSolver {
    snf: SmithNormalForm,
    rows: usize,
    cols: usize,
}

impl IntSolver {
    pub fn new(a: &IntMatrix) -> Self {
        IntSolver {
            snf: smith_normal_form(a),
            rows: a.rows(),
            cols: a.cols(),
        }
    }

    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let c = self.snf.u.apply(b);
        let rank_bound = self.rows.min(self.cols);
        let mut y = vec![BigInt::zero(); self.cols];
        for i in 0..rank_bound {
            let d = self.snf.d.get(i, i);
            if d.is_zero() {
                if !c[i].is_zero() {
                    return None;
                }
            } else {
                let (q, r) = c[i].div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
        }
        for i in rank_bound..self.rows {
            if !c[i].is_zero() {
                return None;
            }
        }
        Some(self.snf.v.apply(&y))
    }
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

pub fn reduce_mod(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    v.iter().map(|x| x.mod_floor(m)).collect()
}

/// Row-echelon Hermite basis of the lattice spanned by `gens` together
/// with `m * Z^n`. Returns `n` rows; row `i` has its first nonzero entry
/// at column `i`, that pivot is positive, and all entries lie in `[0, m)`
/// (reducing a row mod m stays inside the lattice since it contains
/// `m Z^n`).
pub fn hermite_with_modulus(gens: &[Vec<BigInt>], n: usize, m: &BigInt) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| g.iter().map(|x| x.mod_floor(m)).collect())
        .collect();
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[i] = m.clone();
        rows.push(e);
    }
    let mut basis: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for col in 0..n {
        loop {
            // Among rows supported from `col` on, pick the least pivot.
            let mut idx: Option<usize> = None;
            for (k, r) in rows.iter().enumerate() {
                if r[..col].iter().all(|x| x.is_zero()) && !r[col].is_zero() {
                    match idx {
                        None => idx = Some(k),
                        Some(best) => {
                            if r[col] < rows[best][col] {
                                idx = Some(k);
                            }
                        }
                    }
                }
            }
            let Some(p) = idx else {
                // The modulus rows guarantee a pivot for every column,
                // except when the pivot row itself is m e_col and was
                // already consumed; re-add it.
                rows.push({
                    let mut e = vec![BigInt::zero(); n];
                    e[col] = m.clone();
                    e
                });
                continue;
            };
            let pivot = rows[p].clone();
            let mut again = false;
            for (k, r) in rows.iter_mut().enumerate() {
                if k == p || !r[..col].iter().all(|x| x.is_zero()) {
                    continue;
                }
                if r[col].is_zero() {
                    continue;
                }
                let q = r[col].div_floor(&pivot[col]);
                // The pivot-column remainder lands in [0, pivot); reducing
                // the later entries mod m stays inside the lattice.
                for j in col..n {
                    let v = (&r[j] - &q * &pivot[j]).mod_floor(m);
                    r[j] = v;
                }
                if !r[col].is_zero() {
                    again = true;
                }
            }
            if !again {
                basis.push(rows.remove(p));
                break;
            }
        }
    }
    basis
}

/// Lexicographically least nonnegative representative of `x + L` where `L`
/// is spanned by `gens` and `m Z^n`. Coordinates are scanned left to
/// right; after fixing coordinate i the later ones are reduced mod m,
/// which stays in the coset and keeps every intermediate value small.
pub fn lex_reduce(x: &[BigInt], gens: &[Vec<BigInt>], m: &BigInt) -> Vec<BigInt> {
    let n = x.len();
    let basis = hermite_with_modulus(gens, n, m);
    let mut out: Vec<BigInt> = x.iter().map(|v| v.mod_floor(m)).collect();
    for i in 0..n {
        let q = out[i].div_floor(&basis[i][i]);
        if q.is_zero() {
            continue;
        }
        for j in i..n {
            let v = (&out[j] - &q * &basis[i][j]).mod_floor(m);
            out[j] = v;
        }
    }
    out
}
