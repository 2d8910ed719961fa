//! Root-system data in explicit rational coordinates.
//!
//! Each family is built from its simple roots in the coordinates where the
//! invariant form is a diagonal matrix; everything else (coroots, weights,
//! coweights, the highest root, marks/comarks, alcove vertices) is derived
//! by enumeration and exact solving, then cross-checked against the
//! classical tables. A mismatch is a construction error, not a warning.
//!
//! The E6 ambient space carries a factor 1/sqrt(2) on its 7th axis in the
//! usual presentation; we store that coordinate rescaled by sqrt(2) and
//! compensate with a Gram entry 1/2, so every stored number is rational.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{is_integral, rat, rat_int, Form, Matrix, Rational, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E6 => "E6",
            Family::E7 => "E7",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E6" => Ok(Family::E6),
            "E7" => Ok(Family::E7),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// Complete datum of a simple root system plus its Weyl alcove.
#[derive(Debug, Clone)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    ambient_dim: usize,
    form: Form,
    simple_roots: Vec<Vector>,
    coroots: Vec<Vector>,
    fund_weights: Vec<Vector>,
    fund_coweights: Vec<Vector>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    highest_root: Vector,
    alcove_vertices: Vec<Vector>,
    roots: Vec<Vector>,
    root_set: BTreeSet<Vector>,
    dual_coxeter: i64,
}

/// A point of the closed fundamental alcove.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlcovePoint(Vector);

impl AlcovePoint {
    pub fn new(rs: &RootSystem, v: Vector) -> Result<Self> {
        if rs.in_alcove(&v)? {
            Ok(AlcovePoint(v))
        } else {
            Err(Error::OutsideAlcove)
        }
    }

    pub fn vector(&self) -> &Vector {
        &self.0
    }
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let valid = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E6 => rank == 6,
            Family::E7 => rank == 7,
        };
        if !valid {
            return Err(Error::InvalidFamilyRank {
                family: family.to_string(),
                rank,
            });
        }

        let (ambient_dim, form, simple_roots) = family_coordinates(family, rank);

        // Coroots: a_v = 2 a / tr(a a).
        let mut coroots = Vec::with_capacity(rank);
        for a in &simple_roots {
            let n = form.norm_sq(a)?;
            coroots.push(a.scale(&(rat_int(2) / n)));
        }

        // Fundamental coweights: dual basis to the simple roots inside
        // their span; similarly fundamental weights against the coroots.
        let fund_coweights = dual_basis(&form, &simple_roots, &simple_roots)?;
        let fund_weights = dual_basis(&form, &coroots, &simple_roots)?;

        // Reflection closure of the simple roots.
        let root_set = reflection_closure(&form, &simple_roots)?;
        let roots: Vec<Vector> = root_set.iter().cloned().collect();

        // Expansion coefficients of a root in the simple roots are its
        // pairings with the fundamental coweights; the highest root is the
        // componentwise maximum.
        let mut best: Option<(Vec<Rational>, Vector)> = None;
        for rho in &roots {
            let coeffs: Vec<Rational> = fund_coweights
                .iter()
                .map(|w| form.pair(rho, w))
                .collect::<Result<_>>()?;
            let dominated = |a: &[Rational], b: &[Rational]| a.iter().zip(b).all(|(x, y)| x <= y);
            match &best {
                Some((bc, _)) if dominated(&coeffs, bc) => {}
                Some((bc, _)) if dominated(bc, &coeffs) => best = Some((coeffs, rho.clone())),
                None => best = Some((coeffs, rho.clone())),
                Some(_) => {
                    // Incomparable with the current maximum: keep scanning;
                    // the true maximum dominates both, so it will replace
                    // whichever survives. Verified below.
                }
            }
        }
        let (mark_coeffs, highest_root) =
            best.ok_or_else(|| Error::ConstructionCheck("empty root set".into()))?;
        // The componentwise maximum must dominate every root.
        for rho in &roots {
            for (i, w) in fund_coweights.iter().enumerate() {
                if form.pair(rho, w)? > mark_coeffs[i] {
                    return Err(Error::ConstructionCheck(
                        "highest-root scan did not converge".into(),
                    ));
                }
            }
        }

        let marks: Vec<i64> = mark_coeffs
            .iter()
            .map(|c| rational_to_small_int(c))
            .collect::<Result<_>>()?;
        // Comarks: coefficients of the highest root against the coroots,
        // read off with the fundamental weights.
        let comarks: Vec<i64> = fund_weights
            .iter()
            .map(|w| rational_to_small_int(&form.pair(&highest_root, w)?))
            .collect::<Result<_>>()?;

        let dual_coxeter = 1 + comarks.iter().sum::<i64>();

        let mut alcove_vertices = vec![Vector::zero(ambient_dim)];
        for i in 0..rank {
            alcove_vertices.push(fund_coweights[i].scale(&rat(1, marks[i])));
        }

        let rs = RootSystem {
            family,
            rank,
            ambient_dim,
            form,
            simple_roots,
            coroots,
            fund_weights,
            fund_coweights,
            marks,
            comarks,
            highest_root,
            alcove_vertices,
            roots,
            root_set,
            dual_coxeter,
        };
        rs.validate()?;
        Ok(rs)
    }

    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::ConstructionCheck(msg));

        // Derived marks, comarks, dual Coxeter number and root count must
        // match the classical tables; a mismatch means a coordinate typo.
        let (marks, comarks, hv, nroots) = classical_tables(self.family, self.rank);
        if self.marks != marks {
            return fail(format!("marks {:?} != classical {:?}", self.marks, marks));
        }
        if self.comarks != comarks {
            return fail(format!(
                "comarks {:?} != classical {:?}",
                self.comarks, comarks
            ));
        }
        if self.dual_coxeter != hv {
            return fail(format!("h_vee {} != classical {}", self.dual_coxeter, hv));
        }
        if self.roots.len() != nroots {
            return fail(format!("{} roots != classical {}", self.roots.len(), nroots));
        }

        // Root lengths: squared 2 for long roots, and a single shorter
        // value when the system is not simply laced.
        let two = rat_int(2);
        let mut long_seen = false;
        for rho in &self.roots {
            let n = self.form.norm_sq(rho)?;
            if n == two {
                long_seen = true;
            } else if n != rat_int(1) {
                return fail(format!("root of unexpected length^2 {n}"));
            }
        }
        if !long_seen {
            return fail("no root of squared length 2".into());
        }

        // a = 2 a_v / tr(a_v a_v), duality of the bases, and the highest
        // root expansions.
        for i in 0..self.rank {
            let nv = self.form.norm_sq(&self.coroots[i])?;
            let back = self.coroots[i].scale(&(rat_int(2) / nv));
            if back != self.simple_roots[i] {
                return fail(format!("coroot round-trip fails at {i}"));
            }
            for j in 0..self.rank {
                let delta = if i == j { rat_int(1) } else { rat_int(0) };
                if self.form.pair(&self.fund_coweights[i], &self.simple_roots[j])? != delta {
                    return fail("coweight duality fails".into());
                }
                if self.form.pair(&self.fund_weights[i], &self.coroots[j])? != delta {
                    return fail("weight duality fails".into());
                }
            }
        }
        let mut phi_from_marks = Vector::zero(self.ambient_dim);
        let mut phi_from_comarks = Vector::zero(self.ambient_dim);
        for i in 0..self.rank {
            phi_from_marks = phi_from_marks.add(&self.simple_roots[i].scale_int(self.marks[i]));
            phi_from_comarks = phi_from_comarks.add(&self.coroots[i].scale_int(self.comarks[i]));
        }
        if phi_from_marks != self.highest_root || phi_from_comarks != self.highest_root {
            return fail("highest-root expansions disagree".into());
        }

        // Vertex wall pattern: tau_i saturates every wall except wall i.
        for i in 1..=self.rank {
            let tau = &self.alcove_vertices[i];
            for j in 1..=self.rank {
                let p = self.form.pair(&self.simple_roots[j - 1], tau)?;
                if j == i {
                    if !p.is_positive() {
                        return fail("vertex on its own wall".into());
                    }
                } else if !p.is_zero() {
                    return fail("vertex off a foreign wall".into());
                }
            }
            if self.form.pair(&self.highest_root, tau)? != rat_int(1) {
                return fail("vertex off the affine wall".into());
            }
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn gram(&self) -> &Form {
        &self.form
    }

    /// The normalized invariant form `tr xy`.
    pub fn form(&self, x: &Vector, y: &Vector) -> Result<Rational> {
        self.form.pair(x, y)
    }

    pub fn simple_root(&self, i: usize) -> &Vector {
        &self.simple_roots[i]
    }

    pub fn simple_roots(&self) -> &[Vector] {
        &self.simple_roots
    }

    pub fn coroot(&self, i: usize) -> &Vector {
        &self.coroots[i]
    }

    pub fn coroots(&self) -> &[Vector] {
        &self.coroots
    }

    pub fn fundamental_weight(&self, i: usize) -> &Vector {
        &self.fund_weights[i]
    }

    pub fn fundamental_coweight(&self, i: usize) -> &Vector {
        &self.fund_coweights[i]
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    /// Mark k_i with the convention k_0 = 1 for the affine node.
    pub fn mark(&self, node: usize) -> i64 {
        if node == 0 {
            1
        } else {
            self.marks[node - 1]
        }
    }

    pub fn comark(&self, node: usize) -> i64 {
        if node == 0 {
            1
        } else {
            self.comarks[node - 1]
        }
    }

    pub fn highest_root(&self) -> &Vector {
        &self.highest_root
    }

    pub fn dual_coxeter_number(&self) -> i64 {
        self.dual_coxeter
    }

    pub fn all_roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn is_root(&self, v: &Vector) -> bool {
        self.root_set.contains(v)
    }

    /// Alcove vertex tau_i, with tau_0 = 0; `node` runs over 0..=rank.
    pub fn alcove_vertex(&self, node: usize) -> Result<&Vector> {
        self.alcove_vertices
            .get(node)
            .ok_or(Error::IndexOutOfRange {
                index: node,
                max: self.rank,
            })
    }

    pub fn alcove_vertices(&self) -> &[Vector] {
        &self.alcove_vertices
    }

    /// Membership in the Cartan subspace (the span of the simple roots).
    pub fn in_cartan(&self, v: &Vector) -> bool {
        match self.family {
            Family::A | Family::E7 => v.coords().iter().sum::<Rational>().is_zero(),
            Family::E6 => v.coords()[..6].iter().sum::<Rational>().is_zero(),
            _ => true,
        }
    }

    pub fn in_alcove(&self, v: &Vector) -> Result<bool> {
        if v.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.dim(),
            });
        }
        if !self.in_cartan(v) {
            return Ok(false);
        }
        for a in &self.simple_roots {
            if self.form.pair(a, v)?.is_negative() {
                return Ok(false);
            }
        }
        Ok(self.form.pair(&self.highest_root, v)? <= rat_int(1))
    }

    /// Reflection in a root: `r_a(v) = v - tr(a_v, v) a`.
    pub fn reflect(&self, root: &Vector, v: &Vector) -> Result<Vector> {
        if !self.is_root(root) {
            return Err(Error::NotARoot);
        }
        let n = self.form.norm_sq(root)?;
        let coroot = root.scale(&(rat_int(2) / n));
        let c = self.form.pair(&coroot, v)?;
        Ok(v.sub(&root.scale(&c)))
    }

    /// Reflection in the i-th simple root, as a matrix on ambient space.
    pub fn simple_reflection_matrix(&self, i: usize) -> Matrix {
        let mut cols = Vec::with_capacity(self.ambient_dim);
        for j in 0..self.ambient_dim {
            let e = Vector::unit(self.ambient_dim, j);
            let c = self
                .form
                .pair(&self.coroots[i], &e)
                .expect("dims agree");
            cols.push(e.sub(&self.simple_roots[i].scale(&c)));
        }
        Matrix::from_columns(&cols)
    }

    /// Cartan matrix tr(a_i a_j_vee).
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.rank]; self.rank];
        for i in 0..self.rank {
            for j in 0..self.rank {
                let p = self
                    .form
                    .pair(&self.simple_roots[i], &self.coroots[j])
                    .expect("dims agree");
                out[i][j] = rational_to_small_int(&p).expect("Cartan entries are integers");
            }
        }
        out
    }

    /// Coroot lattice Q_vee.
    pub fn coroot_lattice(&self) -> Lattice {
        Lattice::new(self.coroots.clone(), self.ambient_dim)
    }

    /// Fundamental coweight lattice P_vee.
    pub fn coweight_lattice(&self) -> Lattice {
        Lattice::new(self.fund_coweights.clone(), self.ambient_dim)
    }

    /// Coweight lattice of the stabilizer of the vertex `node`.
    ///
    /// For the affine node this is P_vee; otherwise the stabilizer is the
    /// subalgebra with simple roots `{a_j : j != i}` and `-phi`, whose
    /// simple coweights are `k_j (tau_j - tau_i)` for `j != i` and `-tau_i`.
    pub fn stabilizer_coweight_lattice(&self, node: usize) -> Result<Lattice> {
        if node > self.rank {
            return Err(Error::IndexOutOfRange {
                index: node,
                max: self.rank,
            });
        }
        if node == 0 {
            return Ok(self.coweight_lattice());
        }
        let tau_i = &self.alcove_vertices[node];
        let mut basis = Vec::with_capacity(self.rank);
        for j in 1..=self.rank {
            if j == node {
                continue;
            }
            basis.push(
                self.alcove_vertices[j]
                    .sub(tau_i)
                    .scale_int(self.marks[j - 1]),
            );
        }
        basis.push(tau_i.neg());
        Ok(Lattice::new(basis, self.ambient_dim))
    }
}

/// Solve for the basis of `span` dual to `against` under the form.
fn dual_basis(form: &Form, against: &[Vector], span: &[Vector]) -> Result<Vec<Vector>> {
    let r = against.len();
    let mut gram = Matrix::zero(r, r);
    for (j, s) in span.iter().enumerate() {
        for (k, a) in against.iter().enumerate() {
            gram.set(k, j, form.pair(a, s)?);
        }
    }
    let mut out = Vec::with_capacity(r);
    for i in 0..r {
        let mut rhs = Vector::zero(r);
        rhs.set(i, Rational::one());
        let c = gram
            .solve(&rhs)
            .ok_or_else(|| Error::ConstructionCheck("degenerate Gram matrix".into()))?;
        let mut w = Vector::zero(span[0].dim());
        for (j, s) in span.iter().enumerate() {
            w = w.add(&s.scale(c.get(j)));
        }
        out.push(w);
    }
    Ok(out)
}

fn reflection_closure(form: &Form, simple: &[Vector]) -> Result<BTreeSet<Vector>> {
    let mut set: BTreeSet<Vector> = simple.iter().cloned().collect();
    let coroots: Vec<Vector> = simple
        .iter()
        .map(|a| {
            let n = form.norm_sq(a)?;
            Ok(a.scale(&(rat_int(2) / n)))
        })
        .collect::<Result<_>>()?;
    let mut frontier: Vec<Vector> = set.iter().cloned().collect();
    while let Some(rho) = frontier.pop() {
        for (a, av) in simple.iter().zip(&coroots) {
            let c = form.pair(av, &rho)?;
            let image = rho.sub(&a.scale(&c));
            if set.insert(image.clone()) {
                frontier.push(image);
            }
        }
    }
    Ok(set)
}

fn rational_to_small_int(q: &Rational) -> Result<i64> {
    if !is_integral(q) {
        return Err(Error::ConstructionCheck(format!(
            "expected integer, got {q}"
        )));
    }
    i64::try_from(q.numer().clone())
        .map_err(|_| Error::ConstructionCheck("integer out of i64 range".into()))
}

/// Simple roots per family in the coordinates used throughout.
fn family_coordinates(family: Family, rank: usize) -> (usize, Form, Vec<Vector>) {
    match family {
        Family::A => {
            let n = rank + 1;
            let mut roots = Vec::with_capacity(rank);
            for i in 0..rank {
                let mut v = Vector::zero(n);
                v.set(i, rat_int(1));
                v.set(i + 1, rat_int(-1));
                roots.push(v);
            }
            (n, Form::identity(n), roots)
        }
        Family::B => {
            let mut roots = Vec::with_capacity(rank);
            for i in 0..rank - 1 {
                let mut v = Vector::zero(rank);
                v.set(i, rat_int(1));
                v.set(i + 1, rat_int(-1));
                roots.push(v);
            }
            roots.push(Vector::unit(rank, rank - 1));
            (rank, Form::identity(rank), roots)
        }
        Family::C => {
            let mut roots = Vec::with_capacity(rank);
            for i in 0..rank - 1 {
                let mut v = Vector::zero(rank);
                v.set(i, rat(1, 2));
                v.set(i + 1, rat(-1, 2));
                roots.push(v);
            }
            roots.push(Vector::unit(rank, rank - 1));
            (rank, Form::diagonal(vec![rat_int(2); rank]), roots)
        }
        Family::D => {
            let mut roots = Vec::with_capacity(rank);
            for i in 0..rank - 1 {
                let mut v = Vector::zero(rank);
                v.set(i, rat_int(1));
                v.set(i + 1, rat_int(-1));
                roots.push(v);
            }
            let mut v = Vector::zero(rank);
            v.set(rank - 2, rat_int(1));
            v.set(rank - 1, rat_int(1));
            roots.push(v);
            (rank, Form::identity(rank), roots)
        }
        Family::E6 => {
            // R^7 with the first six coordinates summing to zero; the 7th
            // coordinate is stored rescaled by sqrt(2) (Gram entry 1/2).
            let mut roots = Vec::with_capacity(6);
            for i in 0..5 {
                let mut v = Vector::zero(7);
                v.set(i, rat_int(1));
                v.set(i + 1, rat_int(-1));
                roots.push(v);
            }
            roots.push(Vector::new(vec![
                rat(-1, 2),
                rat(-1, 2),
                rat(-1, 2),
                rat(1, 2),
                rat(1, 2),
                rat(1, 2),
                rat_int(1),
            ]));
            let mut diag = vec![rat_int(1); 7];
            diag[6] = rat(1, 2);
            (7, Form::diagonal(diag), roots)
        }
        Family::E7 => {
            // R^8 orthogonal to (1,...,1).
            let mut roots = Vec::with_capacity(7);
            for i in 0..6 {
                let mut v = Vector::zero(8);
                v.set(i, rat_int(1));
                v.set(i + 1, rat_int(-1));
                roots.push(v);
            }
            let a7 = Vector::new(
                [-1, -1, -1, -1, 1, 1, 1, 1]
                    .iter()
                    .map(|&s| rat(s, 2))
                    .collect(),
            );
            roots.push(a7);
            (8, Form::identity(8), roots)
        }
    }
}

/// Classical marks, comarks, dual Coxeter number and root count.
fn classical_tables(family: Family, r: usize) -> (Vec<i64>, Vec<i64>, i64, usize) {
    match family {
        Family::A => (vec![1; r], vec![1; r], r as i64 + 1, r * (r + 1)),
        Family::B => {
            let mut marks = vec![2; r];
            marks[0] = 1;
            let comarks = if r == 2 {
                vec![1, 1]
            } else {
                let mut c = vec![2; r];
                c[0] = 1;
                c[r - 1] = 1;
                c
            };
            (marks, comarks, 2 * r as i64 - 1, 2 * r * r)
        }
        Family::C => {
            let mut marks = vec![2; r];
            marks[r - 1] = 1;
            (marks, vec![1; r], r as i64 + 1, 2 * r * r)
        }
        Family::D => {
            let mut marks = vec![2; r];
            marks[0] = 1;
            marks[r - 2] = 1;
            marks[r - 1] = 1;
            (
                marks.clone(),
                marks,
                2 * r as i64 - 2,
                2 * r * (r - 1),
            )
        }
        Family::E6 => {
            let m = vec![1, 2, 3, 2, 1, 2];
            (m.clone(), m, 12, 72)
        }
        Family::E7 => {
            let m = vec![1, 2, 3, 4, 3, 2, 2];
            (m.clone(), m, 18, 126)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_supported() -> Vec<RootSystem> {
        let mut out = Vec::new();
        for r in 1..=8 {
            out.push(RootSystem::new(Family::A, r).unwrap());
        }
        for r in 2..=8 {
            out.push(RootSystem::new(Family::B, r).unwrap());
            out.push(RootSystem::new(Family::C, r).unwrap());
        }
        for r in 3..=8 {
            out.push(RootSystem::new(Family::D, r).unwrap());
        }
        out.push(RootSystem::new(Family::E6, 6).unwrap());
        out.push(RootSystem::new(Family::E7, 7).unwrap());
        out
    }

    #[test]
    fn invalid_ranks_rejected() {
        assert!(RootSystem::new(Family::A, 0).is_err());
        assert!(RootSystem::new(Family::B, 1).is_err());
        assert!(RootSystem::new(Family::C, 1).is_err());
        assert!(RootSystem::new(Family::D, 2).is_err());
        assert!(RootSystem::new(Family::E6, 7).is_err());
        assert!(RootSystem::new(Family::E7, 6).is_err());
    }

    #[test]
    fn a2_cartan_matrix() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(rs.cartan_matrix(), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(rs.all_roots().len(), 6);
    }

    #[test]
    fn c2_data() {
        let rs = RootSystem::new(Family::C, 2).unwrap();
        // alpha_1 = (e1 - e2)/2, alpha_2 = e2, phi = e1, marks (2, 1).
        assert_eq!(
            rs.simple_root(0),
            &Vector::new(vec![rat(1, 2), rat(-1, 2)])
        );
        assert_eq!(rs.simple_root(1), &Vector::from_i64(&[0, 1]));
        assert_eq!(rs.highest_root(), &Vector::from_i64(&[1, 0]));
        assert_eq!(rs.marks(), &[2, 1]);
        assert_eq!(rs.dual_coxeter_number(), 3);
        // tr e_i e_j = 2 delta_ij in these coordinates.
        let e1 = Vector::unit(2, 0);
        assert_eq!(rs.form(&e1, &e1).unwrap(), rat_int(2));
    }

    #[test]
    fn b_family_form_and_counts() {
        let rs = RootSystem::new(Family::B, 2).unwrap();
        let e1 = Vector::unit(2, 0);
        let e2 = Vector::unit(2, 1);
        assert_eq!(rs.form(&e1, &e1).unwrap(), rat_int(1));
        assert_eq!(rs.form(&e1, &e2).unwrap(), rat_int(0));
        assert_eq!(rs.all_roots().len(), 8);
        assert_eq!(rs.dual_coxeter_number(), 3);
        // Two root lengths.
        let lengths: BTreeSet<Rational> = rs
            .all_roots()
            .iter()
            .map(|r| rs.form(r, r).unwrap())
            .collect();
        assert_eq!(lengths.len(), 2);
    }

    #[test]
    fn e6_branch_root_exact() {
        let rs = RootSystem::new(Family::E6, 6).unwrap();
        // alpha_6 stored with the 7th coordinate rescaled by sqrt(2).
        let expected = Vector::new(vec![
            rat(-1, 2),
            rat(-1, 2),
            rat(-1, 2),
            rat(1, 2),
            rat(1, 2),
            rat(1, 2),
            rat_int(1),
        ]);
        assert_eq!(rs.simple_root(5), &expected);
        assert_eq!(rs.form(&expected, &expected).unwrap(), rat_int(2));
        assert_eq!(rs.all_roots().len(), 72);
        assert_eq!(rs.marks(), &[1, 2, 3, 2, 1, 2]);
    }

    #[test]
    fn e7_root_count_and_marks() {
        let rs = RootSystem::new(Family::E7, 7).unwrap();
        assert_eq!(rs.all_roots().len(), 126);
        assert_eq!(rs.marks(), &[1, 2, 3, 4, 3, 2, 2]);
        assert_eq!(rs.dual_coxeter_number(), 18);
    }

    #[test]
    fn a_family_highest_root() {
        for r in 1..=6 {
            let rs = RootSystem::new(Family::A, r).unwrap();
            let mut phi = Vector::zero(r + 1);
            phi.set(0, rat_int(1));
            phi.set(r, rat_int(-1));
            assert_eq!(rs.highest_root(), &phi);
            assert!(rs.marks().iter().all(|&k| k == 1));
            assert_eq!(rs.dual_coxeter_number(), r as i64 + 1);
        }
    }

    #[test]
    fn c_family_marks() {
        for r in 2..=6 {
            let rs = RootSystem::new(Family::C, r).unwrap();
            let mut expected = vec![2; r];
            expected[r - 1] = 1;
            assert_eq!(rs.marks(), &expected[..]);
        }
    }

    #[test]
    fn reflections() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let a1 = rs.simple_root(0).clone();
        // r_a(a) = -a
        assert_eq!(rs.reflect(&a1, &a1).unwrap(), a1.neg());
        // r_{a1}(e1) = e2
        let e1 = Vector::unit(3, 0);
        let e2 = Vector::unit(3, 1);
        assert_eq!(rs.reflect(&a1, &e1).unwrap(), e2);
        // Fixed vector when the pairing vanishes.
        let fix = Vector::from_i64(&[1, 1, -2]);
        assert_eq!(rs.reflect(&a1, &fix).unwrap(), fix);
        // Non-roots are rejected.
        assert!(rs.reflect(&Vector::from_i64(&[1, 1, 1]), &e1).is_err());
    }

    #[test]
    fn reflection_is_involutive_and_isometric() {
        for rs in [
            RootSystem::new(Family::B, 3).unwrap(),
            RootSystem::new(Family::E6, 6).unwrap(),
        ] {
            let v = rs.fundamental_coweight(1).clone();
            for rho in rs.all_roots().iter().take(12) {
                let w = rs.reflect(rho, &v).unwrap();
                assert_eq!(rs.reflect(rho, &w).unwrap(), v);
                assert_eq!(rs.form(&w, &w).unwrap(), rs.form(&v, &v).unwrap());
            }
        }
    }

    #[test]
    fn invariants_across_families() {
        for rs in all_supported() {
            // tr(phi, tau_i) = 1 for every i >= 1, 0 for tau_0.
            for i in 1..=rs.rank() {
                let tau = rs.alcove_vertex(i).unwrap();
                assert_eq!(rs.form(rs.highest_root(), tau).unwrap(), rat_int(1));
                assert!(rs.in_alcove(tau).unwrap());
            }
            assert!(rs.in_alcove(rs.alcove_vertex(0).unwrap()).unwrap());
            // h_vee = sum of comarks + 1 is checked at construction; spot
            // check the alcove rejects exterior points.
            let outside = rs.highest_root().scale_int(2);
            assert!(!rs.in_alcove(&outside).unwrap());
        }
    }

    #[test]
    fn stabilizer_lattices() {
        // A_1, node 1: generated by -tau_1 alone.
        let rs = RootSystem::new(Family::A, 1).unwrap();
        let l = rs.stabilizer_coweight_lattice(1).unwrap();
        assert_eq!(l.rank(), 1);
        assert_eq!(l.basis()[0], rs.alcove_vertex(1).unwrap().neg());

        // C_2, node 2: generated by 2(tau_1 - tau_2) and -tau_2.
        let rs = RootSystem::new(Family::C, 2).unwrap();
        let l = rs.stabilizer_coweight_lattice(2).unwrap();
        let t1 = rs.alcove_vertex(1).unwrap();
        let t2 = rs.alcove_vertex(2).unwrap();
        assert!(l.contains(&t1.sub(t2).scale_int(2)).unwrap());
        assert!(l.contains(&t2.neg()).unwrap());
        assert_eq!(l.rank(), 2);

        // Node 0 gives the full coweight lattice.
        let l0 = rs.stabilizer_coweight_lattice(0).unwrap();
        assert!(l0.contains(rs.fundamental_coweight(0)).unwrap());
        assert!(l0.contains(rs.fundamental_coweight(1)).unwrap());

        assert!(rs.stabilizer_coweight_lattice(3).is_err());
    }

    #[test]
    fn d3_counts_match_a3() {
        let d3 = RootSystem::new(Family::D, 3).unwrap();
        let a3 = RootSystem::new(Family::A, 3).unwrap();
        assert_eq!(d3.all_roots().len(), a3.all_roots().len());
        assert_eq!(d3.dual_coxeter_number(), a3.dual_coxeter_number());
    }
}
