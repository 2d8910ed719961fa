//! The center Z of the simply connected group, its affine action on the
//! alcove, and the lifted cocycle exponents.
//!
//! Only the adjoint actions W_z of the alcove symmetries and the exponent
//! vectors e_{z,z'} (with `exp(2 pi i e) = w_z w_z' w_{zz'}^{-1}`) are
//! stored; the matrix lifts w_z themselves are never represented. The
//! generator data comes from the per-family case analysis; products are
//! filled in homomorphically and every stated invariant is checked at
//! construction time.

use crate::error::{Error, Result};
use crate::linalg::{is_integral, Matrix, Rational, Vector};
use crate::root_data::{Family, RootSystem};

/// The full center of the simply connected group, as an abstract abelian
/// group with a distinguished coweight exponent per element.
#[derive(Debug, Clone)]
pub struct Center {
    family: Family,
    rank: usize,
    labels: Vec<String>,
    /// theta with `z = exp(-2 pi i theta)`; the zero vector for the identity.
    thetas: Vec<Vector>,
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

/// A subgroup given by its member indices in the full center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    label: String,
    members: Vec<usize>,
}

impl Center {
    /// Center of the simply connected group of `rs`, with the generator
    /// exponents theta fixed by the case analysis.
    pub fn of(rs: &RootSystem) -> Result<Self> {
        let r = rs.rank();
        let (labels, thetas): (Vec<String>, Vec<Vector>) = match rs.family() {
            Family::A => {
                let theta = rs.fundamental_coweight(r - 1);
                cyclic_elements(r + 1, theta)
            }
            Family::B => cyclic_elements(2, rs.fundamental_coweight(0)),
            Family::C => cyclic_elements(2, rs.fundamental_coweight(r - 1)),
            Family::D => {
                if r % 2 == 1 {
                    cyclic_elements(4, rs.fundamental_coweight(r - 1))
                } else {
                    // Z_2 x Z_2 with theta_1 = coweight_r, theta_2 = coweight_1.
                    let t1 = rs.fundamental_coweight(r - 1);
                    let t2 = rs.fundamental_coweight(0);
                    let labels = ["1", "z1", "z2", "z1z2"]
                        .iter()
                        .map(|s| s.to_string())
                        .collect();
                    let thetas = vec![
                        Vector::zero(rs.ambient_dim()),
                        t1.clone(),
                        t2.clone(),
                        t1.add(t2),
                    ];
                    (labels, thetas)
                }
            }
            Family::E6 => cyclic_elements(3, rs.fundamental_coweight(4)),
            Family::E7 => cyclic_elements(2, rs.fundamental_coweight(0)),
        };
        let n = labels.len();
        let (mult, inv) = if rs.family() == Family::D && r % 2 == 0 {
            let mul = |a: usize, b: usize| -> usize {
                let (a1, a2) = (a & 1, a >> 1);
                let (b1, b2) = (b & 1, b >> 1);
                (a1 ^ b1) | ((a2 ^ b2) << 1)
            };
            let mult = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
            let inv = (0..n).collect();
            (mult, inv)
        } else {
            let mult = (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect();
            let inv = (0..n).map(|a| (n - a) % n).collect();
            (mult, inv)
        };
        let center = Center {
            family: rs.family(),
            rank: r,
            labels,
            thetas,
            mult,
            inv,
        };
        center.check_central(rs)?;
        Ok(center)
    }

    /// Centrality of exp(-2 pi i theta): tr(theta, a) must be an integer
    /// for every root a.
    fn check_central(&self, rs: &RootSystem) -> Result<()> {
        for theta in &self.thetas {
            for a in rs.simple_roots() {
                if !is_integral(&rs.form(theta, a)?) {
                    return Err(Error::ConstructionCheck(
                        "generator exponent is not a coweight".into(),
                    ));
                }
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

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, z: usize) -> &str {
        &self.labels[z]
    }

    pub fn theta(&self, z: usize) -> &Vector {
        &self.thetas[z]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn is_klein(&self) -> bool {
        self.family == Family::D && self.rank % 2 == 0
    }

    /// All subgroups, in a deterministic order.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let n = self.order();
        if self.is_klein() {
            return vec![
                Subgroup::new("trivial", vec![0]),
                Subgroup::new("z1", vec![0, 1]),
                Subgroup::new("z2", vec![0, 2]),
                Subgroup::new("z1z2", vec![0, 3]),
                Subgroup::new("Z2xZ2", vec![0, 1, 2, 3]),
            ];
        }
        let mut out = Vec::new();
        for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            let step = n / d;
            let members: Vec<usize> = (0..d).map(|k| k * step).collect();
            let label = match self.family {
                Family::A => format!("cyclic:{d}"),
                Family::D => match d {
                    1 => "trivial".to_string(),
                    2 => "Z2".to_string(),
                    _ => "Z4".to_string(),
                },
                _ => {
                    if d == 1 {
                        "trivial".to_string()
                    } else {
                        "full".to_string()
                    }
                }
            };
            let mut members = members;
            members.sort_unstable();
            out.push(Subgroup::new(&label, members));
        }
        out
    }

    pub fn full_subgroup(&self) -> Subgroup {
        self.subgroups().into_iter().last().expect("nonempty")
    }

    /// Resolve a subgroup label; `full` and `trivial` are accepted for
    /// every family alongside the canonical per-family names.
    pub fn subgroup_by_label(&self, label: &str) -> Result<Subgroup> {
        let subs = self.subgroups();
        if label == "full" {
            return Ok(subs.into_iter().last().expect("nonempty"));
        }
        if label == "trivial" {
            return Ok(subs.into_iter().next().expect("nonempty"));
        }
        subs.into_iter()
            .find(|s| s.label == label)
            .ok_or_else(|| Error::UnknownSubgroup {
                label: label.to_string(),
                family: self.family.to_string(),
                rank: self.rank,
            })
    }
}

fn cyclic_elements(order: usize, theta: &Vector) -> (Vec<String>, Vec<Vector>) {
    let mut labels = Vec::with_capacity(order);
    let mut thetas = Vec::with_capacity(order);
    for n in 0..order {
        labels.push(match n {
            0 => "1".to_string(),
            1 => "z".to_string(),
            _ => format!("z^{n}"),
        });
        thetas.push(theta.scale_int(n as i64));
    }
    (labels, thetas)
}

impl Subgroup {
    fn new(label: &str, members: Vec<usize>) -> Self {
        Subgroup {
            label: label.to_string(),
            members,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// Full-center index of the p-th member; member 0 is the identity.
    pub fn member(&self, p: usize) -> usize {
        self.members[p]
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn position_of(&self, full_index: usize) -> Option<usize> {
        self.members.iter().position(|&m| m == full_index)
    }

    /// Multiplication in subgroup positions.
    pub fn mul_pos(&self, center: &Center, p: usize, q: usize) -> usize {
        let full = center.mul(self.members[p], self.members[q]);
        self.position_of(full)
            .expect("subgroup closed under multiplication")
    }

    pub fn inv_pos(&self, center: &Center, p: usize) -> usize {
        let full = center.inv(self.members[p]);
        self.position_of(full)
            .expect("subgroup closed under inverse")
    }
}

/// Adjoint actions and node permutations of the full center.
#[derive(Debug, Clone)]
pub struct CenterAction {
    perms: Vec<Vec<usize>>,
    weyl: Vec<Matrix>,
}

impl CenterAction {
    pub fn new(rs: &RootSystem, center: &Center) -> Result<Self> {
        let n = center.order();
        let dim = rs.ambient_dim();
        let r = rs.rank();
        let mut perms: Vec<Option<Vec<usize>>> = vec![None; n];
        let mut weyl: Vec<Option<Matrix>> = vec![None; n];
        perms[0] = Some((0..=r).collect());
        weyl[0] = Some(Matrix::identity(dim));

        if center.is_klein() {
            let (p1, w1) = generator_action(rs, GeneratorKind::KleinZ1);
            let (p2, w2) = generator_action(rs, GeneratorKind::KleinZ2);
            perms[3] = Some(compose_perm(&p1, &p2));
            weyl[3] = Some(w1.mul(&w2));
            perms[1] = Some(p1);
            weyl[1] = Some(w1);
            perms[2] = Some(p2);
            weyl[2] = Some(w2);
        } else if n > 1 {
            let (p, w) = generator_action(rs, GeneratorKind::Cyclic);
            let mut perm = (0..=r).collect::<Vec<_>>();
            let mut mat = Matrix::identity(dim);
            for k in 1..n {
                perm = compose_perm(&p, &perm);
                mat = w.mul(&mat);
                perms[k] = Some(perm.clone());
                weyl[k] = Some(mat.clone());
            }
        }

        let action = CenterAction {
            perms: perms.into_iter().map(|p| p.unwrap()).collect(),
            weyl: weyl.into_iter().map(|w| w.unwrap()).collect(),
        };
        action.validate(rs, center)?;
        Ok(action)
    }

    fn validate(&self, rs: &RootSystem, center: &Center) -> Result<()> {
        let fail = |msg: &str| Err(Error::ConstructionCheck(msg.to_string()));
        let r = rs.rank();
        for z in 0..center.order() {
            let w = &self.weyl[z];
            let perm = &self.perms[z];
            // Permutation of the extended diagram preserving (co)marks.
            let mut seen = vec![false; r + 1];
            for &img in perm {
                if img > r || seen[img] {
                    return fail("node map is not a permutation");
                }
                seen[img] = true;
            }
            for i in 0..=r {
                if rs.mark(perm[i]) != rs.mark(i) || rs.comark(perm[i]) != rs.comark(i) {
                    return fail("node permutation breaks marks");
                }
            }
            // W_z preserves the form on the Cartan subspace.
            for a in rs.simple_roots() {
                for b in rs.simple_roots() {
                    if rs.form(&w.apply(a), &w.apply(b))? != rs.form(a, b)? {
                        return fail("adjoint action is not an isometry on t");
                    }
                }
            }
            // Affine action sends tau_i to tau_{zi}.
            let shift = rs.alcove_vertex(perm[0])?;
            for i in 0..=r {
                let image = w.apply(rs.alcove_vertex(i)?).add(shift);
                if &image != rs.alcove_vertex(perm[i])? {
                    return fail("affine action does not permute the vertices");
                }
            }
        }
        // Homomorphism property of both assignments, on t for the matrices.
        for a in 0..center.order() {
            for b in 0..center.order() {
                let ab = center.mul(a, b);
                if compose_perm(&self.perms[a], &self.perms[b]) != self.perms[ab] {
                    return fail("node permutations are not a homomorphism");
                }
                let prod = self.weyl[a].mul(&self.weyl[b]);
                for s in rs.simple_roots() {
                    if prod.apply(s) != self.weyl[ab].apply(s) {
                        return fail("adjoint actions are not a homomorphism on t");
                    }
                }
            }
        }
        Ok(())
    }

    /// Node permutation of element `z`: node i goes to `perm[i]`.
    pub fn perm(&self, z: usize) -> &[usize] {
        &self.perms[z]
    }

    /// Image of node `i` under `z`.
    pub fn node(&self, z: usize, i: usize) -> usize {
        self.perms[z][i]
    }

    pub fn weyl_matrix(&self, z: usize) -> &Matrix {
        &self.weyl[z]
    }

    pub fn apply(&self, z: usize, v: &Vector) -> Vector {
        self.weyl[z].apply(v)
    }

    /// Affine alcove action `tau -> W_z tau + tau_{z0}`; both the argument
    /// and the result must lie in the alcove.
    pub fn affine(&self, rs: &RootSystem, z: usize, tau: &Vector) -> Result<Vector> {
        if !rs.in_alcove(tau)? {
            return Err(Error::OutsideAlcove);
        }
        let image = self.weyl[z]
            .apply(tau)
            .add(rs.alcove_vertex(self.perms[z][0])?);
        if !rs.in_alcove(&image)? {
            return Err(Error::OutsideAlcove);
        }
        Ok(image)
    }
}

enum GeneratorKind {
    Cyclic,
    KleinZ1,
    KleinZ2,
}

/// Node permutation and adjoint action of the distinguished generator(s).
fn generator_action(rs: &RootSystem, which: GeneratorKind) -> (Vec<usize>, Matrix) {
    let r = rs.rank();
    let dim = rs.ambient_dim();
    let (perm, cols): (Vec<usize>, Vec<Vector>) = match (rs.family(), which) {
        (Family::A, GeneratorKind::Cyclic) => {
            let perm = (0..=r).map(|i| (i + 1) % (r + 1)).collect();
            let cols = (0..dim)
                .map(|j| Vector::unit(dim, (j + 1) % dim))
                .collect();
            (perm, cols)
        }
        (Family::B, GeneratorKind::Cyclic) => {
            let mut perm: Vec<usize> = (0..=r).collect();
            perm.swap(0, 1);
            let mut cols: Vec<Vector> = (0..dim).map(|j| Vector::unit(dim, j)).collect();
            cols[0] = cols[0].neg();
            (perm, cols)
        }
        (Family::C, GeneratorKind::Cyclic) => {
            let perm = (0..=r).map(|i| r - i).collect();
            let cols = (0..dim)
                .map(|j| Vector::unit(dim, r - 1 - j).neg())
                .collect();
            (perm, cols)
        }
        (Family::D, GeneratorKind::Cyclic) => {
            // r odd: z0 = r-1, z1 = r, zi = r-i in between, z(r-1) = 1, zr = 0.
            let perm = (0..=r)
                .map(|i| match i {
                    0 => r - 1,
                    1 => r,
                    i if i == r - 1 => 1,
                    i if i == r => 0,
                    i => r - i,
                })
                .collect();
            let cols = (0..dim)
                .map(|j| {
                    if j == 0 {
                        Vector::unit(dim, r - 1)
                    } else {
                        Vector::unit(dim, r - 1 - j).neg()
                    }
                })
                .collect();
            (perm, cols)
        }
        (Family::D, GeneratorKind::KleinZ1) => {
            let perm = (0..=r)
                .map(|i| match i {
                    0 => r,
                    i if i == r => 0,
                    i => r - i,
                })
                .collect();
            let cols = (0..dim)
                .map(|j| Vector::unit(dim, r - 1 - j).neg())
                .collect();
            (perm, cols)
        }
        (Family::D, GeneratorKind::KleinZ2) => {
            let mut perm: Vec<usize> = (0..=r).collect();
            perm.swap(0, 1);
            perm.swap(r - 1, r);
            let mut cols: Vec<Vector> = (0..dim).map(|j| Vector::unit(dim, j)).collect();
            cols[0] = cols[0].neg();
            cols[r - 1] = cols[r - 1].neg();
            (perm, cols)
        }
        (Family::E6, GeneratorKind::Cyclic) => {
            let perm = vec![1, 5, 4, 3, 6, 0, 2];
            let half = |signs: [i64; 6], seventh: i64| {
                let mut c: Vec<Rational> = signs
                    .iter()
                    .map(|&s| Rational::new(s.into(), 2.into()))
                    .collect();
                c.push(Rational::from_integer(seventh.into()));
                Vector::new(c)
            };
            // Image of the stored 7th basis vector, i.e. of e_7 / sqrt(2):
            // (1/2)(-e_1 + e_2) in both actual and stored coordinates.
            let mut last = Vector::zero(dim);
            last.set(0, Rational::new((-1).into(), 2.into()));
            last.set(1, Rational::new(1.into(), 2.into()));
            let cols = vec![
                Vector::unit(dim, 5).neg(),
                Vector::unit(dim, 4).neg(),
                Vector::unit(dim, 3).neg(),
                Vector::unit(dim, 2).neg(),
                half([1, 1, -1, -1, -1, -1], -1),
                half([1, 1, -1, -1, -1, -1], 1),
                last,
            ];
            (perm, cols)
        }
        (Family::E7, GeneratorKind::Cyclic) => {
            let perm = vec![1, 0, 6, 5, 4, 3, 2, 7];
            let cols = (0..dim).map(|j| Vector::unit(dim, 7 - j).neg()).collect();
            (perm, cols)
        }
        _ => unreachable!("generator kind does not match family"),
    };
    (perm, Matrix::from_columns(&cols))
}

fn compose_perm(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&i| outer[i]).collect()
}

/// Reflection words for the listed generators: pairs of (element index,
/// 0-based simple-root indices); the rightmost letter acts first.
pub fn reflection_words(rs: &RootSystem) -> Vec<(usize, Vec<usize>)> {
    let r = rs.rank();
    match rs.family() {
        Family::A => vec![(1, (0..r).collect())],
        Family::B => {
            let word: Vec<usize> = (0..r).chain((0..r - 1).rev()).collect();
            vec![(1, word)]
        }
        Family::C => {
            let mut word = Vec::new();
            for j in (0..r).rev() {
                word.extend(j..r);
            }
            vec![(1, word)]
        }
        Family::D => {
            if r % 2 == 1 {
                vec![(1, d_long_word(r))]
            } else {
                let mut z2 = Vec::new();
                z2.extend(0..=r - 3);
                z2.push(r - 1);
                z2.push(r - 2);
                z2.extend((0..=r - 3).rev());
                vec![(1, d_long_word(r)), (2, z2)]
            }
        }
        Family::E6 => vec![(1, vec![0, 1, 2, 3, 4, 5, 2, 1, 0, 3, 2, 1, 5, 2, 3, 4])],
        Family::E7 => vec![(
            1,
            vec![
                0, 1, 2, 3, 4, 6, 3, 5, 2, 4, 1, 3, 0, 2, 6, 3, 1, 4, 2, 5, 3, 6, 4, 3, 2, 1, 0,
            ],
        )],
    }
}

/// The r(r-1)/2-reflection word shared by the order-4 generator (r odd)
/// and by z_1 (r even): segments descending from j = r-1 to 1, where an
/// even-j segment runs a_j .. a_{r-1} and an odd-j segment runs
/// a_j .. a_{r-2} followed by a_r.
fn d_long_word(r: usize) -> Vec<usize> {
    let mut word = Vec::new();
    for j in (1..r).rev() {
        if j % 2 == 0 {
            word.extend(j - 1..=r - 2);
        } else {
            if r >= 3 {
                word.extend(j - 1..=r - 3);
            }
            word.push(r - 1);
        }
    }
    word
}

/// Roots for the short non-simple-root factorizations of the exceptional
/// generators, as integer combinations of simple roots, in word order.
pub fn beta_words(rs: &RootSystem) -> Option<Vec<Vec<i64>>> {
    match rs.family() {
        // r_{b1} r_{b4} r_{b5} r_{b2}
        Family::E6 => Some(vec![
            vec![1, 1, 1, 1, 0, 0],
            vec![1, 1, 1, 0, 0, 1],
            vec![0, 1, 1, 1, 1, 0],
            vec![0, 0, 1, 1, 1, 1],
        ]),
        // r_{b1} r_{b3} r_{b7}
        Family::E7 => Some(vec![
            vec![1, 2, 2, 2, 1, 0, 1],
            vec![1, 1, 2, 2, 1, 1, 1],
            vec![1, 1, 1, 2, 2, 1, 1],
        ]),
        _ => None,
    }
}

/// Compose a reflection word into a matrix (rightmost letter acts first).
pub fn word_matrix(rs: &RootSystem, word: &[usize]) -> Matrix {
    let mut m = Matrix::identity(rs.ambient_dim());
    for &i in word {
        m = m.mul(&rs.simple_reflection_matrix(i));
    }
    m
}

/// True iff the listed reflection word of generator `z` composes to the
/// adjoint action W_z, compared on the Cartan subspace.
pub fn reflection_word_check(rs: &RootSystem, action: &CenterAction, z: usize) -> Result<bool> {
    let words = reflection_words(rs);
    let Some((_, word)) = words.iter().find(|(elem, _)| *elem == z) else {
        return Err(Error::IndexOutOfRange {
            index: z,
            max: words.iter().map(|(e, _)| *e).max().unwrap_or(0),
        });
    };
    let m = word_matrix(rs, word);
    let w = action.weyl_matrix(z);
    for s in rs.simple_roots() {
        if m.apply(s) != w.apply(s) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Check the non-simple-root factorization for E6 (4 reflections) and E7
/// (3 reflections) against W_z.
pub fn beta_word_check(rs: &RootSystem, action: &CenterAction) -> Result<bool> {
    let Some(betas) = beta_words(rs) else {
        return Ok(true);
    };
    let mut m = Matrix::identity(rs.ambient_dim());
    for combo in &betas {
        let mut beta = Vector::zero(rs.ambient_dim());
        for (i, &c) in combo.iter().enumerate() {
            beta = beta.add(&rs.simple_root(i).scale_int(c));
        }
        if !rs.is_root(&beta) {
            return Err(Error::NotARoot);
        }
        let n = rs.form(&beta, &beta)?;
        let coroot = beta.scale(&(Rational::from_integer(2.into()) / n));
        let mut cols = Vec::with_capacity(rs.ambient_dim());
        for j in 0..rs.ambient_dim() {
            let e = Vector::unit(rs.ambient_dim(), j);
            let c = rs.form(&coroot, &e)?;
            cols.push(e.sub(&beta.scale(&c)));
        }
        m = m.mul(&Matrix::from_columns(&cols));
    }
    let w = action.weyl_matrix(1);
    for s in rs.simple_roots() {
        if m.apply(s) != w.apply(s) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Table of exponents e_{z,z'} with `c_{z,z'} = exp(2 pi i e_{z,z'})`,
/// indexed by full-center element indices.
#[derive(Debug, Clone)]
pub struct ETable {
    entries: Vec<Vec<Vector>>,
}

impl ETable {
    /// The per-family closed forms for the lifts `w_{z^n} = w_z^n`
    /// (and `w_{z1 z2} = w_{z1} w_{z2}` for the Klein centers).
    pub fn build(rs: &RootSystem, center: &Center) -> Self {
        let n = center.order();
        let zero = Vector::zero(rs.ambient_dim());
        let mut entries = vec![vec![zero; n]; n];
        let r = rs.rank();
        match rs.family() {
            Family::A => {
                let x = center.theta(1).scale_int((r * (r + 1) / 2) as i64);
                for a in 0..n {
                    for b in 0..n {
                        if a + b > r {
                            entries[a][b] = x.clone();
                        }
                    }
                }
            }
            Family::B => {
                if r % 2 == 1 {
                    entries[1][1] = center.theta(1).clone();
                }
            }
            Family::C | Family::E7 => {
                entries[1][1] = center.theta(1).clone();
            }
            Family::D => {
                if r % 2 == 1 {
                    let x = center.theta(1).scale_int(2);
                    for a in 0..4 {
                        for b in 0..4 {
                            if a + b >= 4 {
                                entries[a][b] = x.clone();
                            }
                        }
                    }
                } else {
                    let theta2 = center.theta(2).clone();
                    let pairs: &[(usize, usize)] = if r % 4 == 0 {
                        &[(2, 1), (2, 2), (3, 1), (3, 2)]
                    } else {
                        &[(1, 1), (1, 3), (2, 1), (2, 2), (3, 2), (3, 3)]
                    };
                    for &(a, b) in pairs {
                        entries[a][b] = theta2.clone();
                    }
                }
            }
            Family::E6 => {}
        }
        ETable { entries }
    }

    pub fn entry(&self, a: usize, b: usize) -> &Vector {
        &self.entries[a][b]
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    /// Copy with `shift` added entrywise (used for the representative
    /// independence experiments; shifts must be normalized 2-cochains).
    pub fn shifted(&self, shift: &[Vec<Vector>]) -> Self {
        let n = self.entries.len();
        let mut entries = self.entries.clone();
        for a in 0..n {
            for b in 0..n {
                entries[a][b] = entries[a][b].add(&shift[a][b]);
            }
        }
        ETable { entries }
    }
}

/// The coboundary `(delta e)_{a,b,c} = W_a e_{b,c} - e_{ab,c} + e_{a,bc} - e_{a,b}`
/// over a subgroup, with the membership check in the coroot lattice.
/// Indices in the result are subgroup positions.
pub fn delta_e(
    rs: &RootSystem,
    center: &Center,
    action: &CenterAction,
    etable: &ETable,
    sub: &Subgroup,
) -> Result<Vec<Vec<Vec<Vector>>>> {
    let s = sub.order();
    let coroot_lattice = rs.coroot_lattice().solver();
    // The e-table takes few distinct values; cache their images under W_a.
    let mut distinct: Vec<Vector> = Vec::new();
    let mut index_of = std::collections::BTreeMap::new();
    for &a in sub.members() {
        for &b in sub.members() {
            let v = etable.entry(a, b);
            if !index_of.contains_key(v) {
                index_of.insert(v.clone(), distinct.len());
                distinct.push(v.clone());
            }
        }
    }
    let applied: Vec<Vec<Vector>> = sub
        .members()
        .iter()
        .map(|&a| distinct.iter().map(|v| action.apply(a, v)).collect())
        .collect();

    let mut out = vec![vec![vec![Vector::zero(rs.ambient_dim()); s]; s]; s];
    for p in 0..s {
        let a = sub.member(p);
        for q in 0..s {
            let b = sub.member(q);
            let ab = center.mul(a, b);
            for t in 0..s {
                let c = sub.member(t);
                let bc = center.mul(b, c);
                let w_e_bc = &applied[p][index_of[etable.entry(b, c)]];
                let value = w_e_bc
                    .sub(etable.entry(ab, c))
                    .add(etable.entry(a, bc))
                    .sub(etable.entry(a, b));
                if !coroot_lattice.contains(&value)? {
                    return Err(Error::CoboundaryNotCoroot((p, q, t)));
                }
                out[p][q][t] = value;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn setup(family: Family, rank: usize) -> (RootSystem, Center, CenterAction, ETable) {
        let rs = RootSystem::new(family, rank).unwrap();
        let center = Center::of(&rs).unwrap();
        let action = CenterAction::new(&rs, &center).unwrap();
        let etable = ETable::build(&rs, &center);
        (rs, center, action, etable)
    }

    #[test]
    fn center_orders() {
        assert_eq!(setup(Family::A, 3).1.order(), 4);
        assert_eq!(setup(Family::B, 3).1.order(), 2);
        assert_eq!(setup(Family::C, 4).1.order(), 2);
        assert_eq!(setup(Family::D, 5).1.order(), 4);
        assert_eq!(setup(Family::D, 6).1.order(), 4);
        assert_eq!(setup(Family::E6, 6).1.order(), 3);
        assert_eq!(setup(Family::E7, 7).1.order(), 2);
    }

    #[test]
    fn theta_values_match_per_family() {
        // B_3: theta = e_1.
        let (_, center, _, _) = setup(Family::B, 3);
        assert_eq!(center.theta(1), &Vector::from_i64(&[1, 0, 0]));

        // C_3: theta = (e_1 + e_2 + e_3)/2.
        let (_, center, _, _) = setup(Family::C, 3);
        assert_eq!(
            center.theta(1),
            &Vector::new(vec![rat(1, 2), rat(1, 2), rat(1, 2)])
        );

        // A_3: theta = -e_4 + (1/4) sum e_i.
        let (_, center, _, _) = setup(Family::A, 3);
        assert_eq!(
            center.theta(1),
            &Vector::new(vec![rat(1, 4), rat(1, 4), rat(1, 4), rat(-3, 4)])
        );

        // E7: theta = (3,-1,-1,-1,-1,-1,-1,3)/4.
        let (_, center, _, _) = setup(Family::E7, 7);
        let expected = Vector::new(
            [3, -1, -1, -1, -1, -1, -1, 3]
                .iter()
                .map(|&c| rat(c, 4))
                .collect(),
        );
        assert_eq!(center.theta(1), &expected);
    }

    #[test]
    fn node_permutations() {
        let (_, _, action, _) = setup(Family::A, 2);
        assert_eq!(action.perm(1), &[1, 2, 0]);

        let (_, _, action, _) = setup(Family::C, 4);
        assert_eq!(action.perm(1), &[4, 3, 2, 1, 0]);

        let (_, _, action, _) = setup(Family::E6, 6);
        assert_eq!(action.perm(1), &[1, 5, 4, 3, 6, 0, 2]);

        let (_, _, action, _) = setup(Family::E7, 7);
        assert_eq!(action.perm(1), &[1, 0, 6, 5, 4, 3, 2, 7]);
    }

    #[test]
    fn subgroup_enumeration() {
        let (_, center, _, _) = setup(Family::A, 3);
        let subs = center.subgroups();
        assert_eq!(
            subs.iter()
                .map(|s| s.label().to_string())
                .collect::<Vec<_>>(),
            vec!["cyclic:1", "cyclic:2", "cyclic:4"]
        );
        assert_eq!(
            center.subgroup_by_label("cyclic:2").unwrap().members(),
            &[0, 2]
        );

        let (_, center, _, _) = setup(Family::D, 6);
        assert_eq!(center.subgroups().len(), 5);
        assert_eq!(center.subgroup_by_label("full").unwrap().order(), 4);

        let (_, center, _, _) = setup(Family::E6, 6);
        assert_eq!(center.subgroups().len(), 2);
        assert!(center.subgroup_by_label("Z4").is_err());
    }

    #[test]
    fn reflection_words_match() {
        for (family, rank) in [
            (Family::A, 3),
            (Family::B, 4),
            (Family::B, 5),
            (Family::C, 2),
            (Family::C, 5),
            (Family::D, 5),
            (Family::D, 6),
            (Family::D, 8),
            (Family::E6, 6),
            (Family::E7, 7),
        ] {
            let (rs, _, action, _) = setup(family, rank);
            for (z, word) in reflection_words(&rs) {
                let expected_len = match family {
                    Family::A => rank,
                    Family::B => 2 * rank - 1,
                    Family::C => rank * (rank + 1) / 2,
                    Family::D => {
                        if z == 1 {
                            rank * (rank - 1) / 2
                        } else {
                            2 * (rank - 1)
                        }
                    }
                    Family::E6 => 16,
                    Family::E7 => 27,
                };
                assert_eq!(word.len(), expected_len, "{family}_{rank} word length");
                assert!(
                    reflection_word_check(&rs, &action, z).unwrap(),
                    "{family}_{rank} generator {z}"
                );
            }
            assert!(
                beta_word_check(&rs, &action).unwrap(),
                "{family}_{rank} beta word"
            );
        }
    }

    #[test]
    fn affine_action_on_vertices() {
        let (rs, center, action, _) = setup(Family::D, 5);
        for z in 0..center.order() {
            for i in 0..=rs.rank() {
                let image = action.affine(&rs, z, rs.alcove_vertex(i).unwrap()).unwrap();
                assert_eq!(&image, rs.alcove_vertex(action.node(z, i)).unwrap());
            }
        }
        // tau_0 = 0 goes to tau_{z0}; identity fixes everything.
        let zero = Vector::zero(rs.ambient_dim());
        let image = action.affine(&rs, 1, &zero).unwrap();
        assert_eq!(&image, rs.alcove_vertex(action.node(1, 0)).unwrap());
        assert_eq!(action.affine(&rs, 0, &zero).unwrap(), zero);
        // Outside points are rejected.
        let outside = rs.highest_root().scale_int(3);
        assert!(action.affine(&rs, 1, &outside).is_err());
    }

    #[test]
    fn e_table_values() {
        // E6: identically zero.
        let (_, _, _, etable) = setup(Family::E6, 6);
        for a in 0..3 {
            for b in 0..3 {
                assert!(etable.entry(a, b).is_zero());
            }
        }

        // C_3: e_{z,z} = (e_1 + e_2 + e_3)/2.
        let (_, _, _, etable) = setup(Family::C, 3);
        assert_eq!(
            etable.entry(1, 1),
            &Vector::new(vec![rat(1, 2), rat(1, 2), rat(1, 2)])
        );
        assert!(etable.entry(1, 0).is_zero());
        assert!(etable.entry(0, 1).is_zero());

        // D_8 (r divisible by 4): theta_2 = e_1 at exactly four pairs.
        let (rs, center, _, etable) = setup(Family::D, 8);
        let theta2 = center.theta(2).clone();
        assert_eq!(theta2, Vector::unit(rs.ambient_dim(), 0));
        let expected: std::collections::BTreeSet<(usize, usize)> =
            [(2, 1), (2, 2), (3, 1), (3, 2)].into_iter().collect();
        for a in 0..4 {
            for b in 0..4 {
                if expected.contains(&(a, b)) {
                    assert_eq!(etable.entry(a, b), &theta2);
                } else {
                    assert!(etable.entry(a, b).is_zero(), "({a},{b})");
                }
            }
        }

        // B_r: zero table for even r, e_{z,z} = theta for odd r.
        let (_, _, _, etable) = setup(Family::B, 4);
        assert!(etable.entry(1, 1).is_zero());
        let (_, center_odd, _, etable) = setup(Family::B, 5);
        assert_eq!(etable.entry(1, 1), center_odd.theta(1));
    }

    #[test]
    fn delta_e_in_coroot_lattice() {
        for (family, rank) in [
            (Family::A, 1),
            (Family::A, 4),
            (Family::B, 5),
            (Family::C, 3),
            (Family::D, 5),
            (Family::D, 6),
            (Family::D, 8),
            (Family::E6, 6),
            (Family::E7, 7),
        ] {
            let (rs, center, action, etable) = setup(family, rank);
            for sub in center.subgroups() {
                let de = delta_e(&rs, &center, &action, &etable, &sub).unwrap();
                // Triples containing the identity vanish.
                let s = sub.order();
                for p in 0..s {
                    for q in 0..s {
                        assert!(de[0][p][q].is_zero());
                        assert!(de[p][0][q].is_zero());
                        assert!(de[p][q][0].is_zero());
                    }
                }
            }
        }

        // SU(2): (delta e)_{z,z,z} = -2 theta = -alpha_1_vee.
        let (rs, center, action, etable) = setup(Family::A, 1);
        let sub = center.full_subgroup();
        let de = delta_e(&rs, &center, &action, &etable, &sub).unwrap();
        assert_eq!(de[1][1][1], rs.coroot(0).neg());

        // E6: identically zero.
        let (rs, center, action, etable) = setup(Family::E6, 6);
        let sub = center.full_subgroup();
        let de = delta_e(&rs, &center, &action, &etable, &sub).unwrap();
        for p in 0..3 {
            for q in 0..3 {
                for t in 0..3 {
                    assert!(de[p][q][t].is_zero());
                }
            }
        }
    }

    #[test]
    fn klein_group_structure() {
        let (_, center, _, _) = setup(Family::D, 4);
        assert_eq!(center.mul(1, 2), 3);
        assert_eq!(center.mul(3, 1), 2);
        assert_eq!(center.inv(3), 3);
        assert_eq!(center.label(3), "z1z2");
        assert_eq!(center.theta(3), &center.theta(1).add(center.theta(2)));
    }
}
