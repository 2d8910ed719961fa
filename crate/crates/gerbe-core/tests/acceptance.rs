//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Every check here is exact; the only tolerances are the stated wall-clock
//! bounds on the two big sweeps.

use std::str::FromStr;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gerbe_core::center::{
    beta_word_check, delta_e, reflection_word_check, reflection_words, ETable,
};
use gerbe_core::cohomology::{
    coboundary, is_cocycle, lemma1_sweep, minimal_level, minimal_level_only, obstruction_cocycle,
    solution_family, solve_coboundary, verify_rtc, Case, LevelReport, Phase, PhaseCochain,
};
use gerbe_core::linalg::{Rational, Vector};
use gerbe_core::report::{enumerate_cases, CaseSpec};
use gerbe_core::root_data::Family;
use gerbe_core::snf::{smith_normal_form, IntMatrix};

struct SweepEntry {
    spec: CaseSpec,
    report: LevelReport,
}

static SWEEP: OnceLock<(Duration, Vec<SweepEntry>)> = OnceLock::new();

/// All cases of the acceptance table: A_r for r <= 11 with every divisor
/// subgroup, B/C/D up to rank 9 with every subgroup, E6 and E7.
fn sweep() -> &'static (Duration, Vec<SweepEntry>) {
    SWEEP.get_or_init(|| {
        let start = Instant::now();
        let entries = enumerate_cases(11, 9)
            .into_iter()
            .map(|spec| {
                let case = spec.to_case().expect("valid case");
                let report = minimal_level(&case).expect("level search succeeds");
                SweepEntry { spec, report }
            })
            .collect();
        (start.elapsed(), entries)
    })
}

/// Closed-form minimal levels from the case analysis.
fn expected_level(spec: &CaseSpec) -> u32 {
    let family = Family::from_str(&spec.family).unwrap();
    let r = spec.rank;
    let sub = spec.subgroup.as_str();
    match family {
        Family::A => {
            let n_prime: usize = sub.strip_prefix("cyclic:").unwrap().parse().unwrap();
            let n_second = (r + 1) / n_prime;
            if n_prime % 2 == 1 || n_second % 2 == 0 {
                1
            } else {
                2
            }
        }
        Family::B => 1,
        Family::C => {
            if sub == "trivial" || r % 2 == 0 {
                1
            } else {
                2
            }
        }
        Family::D => {
            if r % 2 == 1 {
                // Z_4 center: nontrivial at odd k unless restricted to <z^2>.
                match sub {
                    "Z4" => 2,
                    _ => 1,
                }
            } else {
                match sub {
                    "Z2xZ2" | "z1" | "z1z2" => {
                        if (r / 2) % 2 == 0 {
                            1
                        } else {
                            2
                        }
                    }
                    _ => 1,
                }
            }
        }
        Family::E6 => 1,
        Family::E7 => {
            if sub == "trivial" {
                1
            } else {
                2
            }
        }
    }
}

#[test]
fn criterion_1_level_table_reproduction() {
    let (elapsed, entries) = sweep();
    assert!(!entries.is_empty());
    for entry in entries {
        let expected = expected_level(&entry.spec);
        assert_eq!(
            entry.report.k_min, expected,
            "level mismatch for {}_{}:{}",
            entry.spec.family, entry.spec.rank, entry.spec.subgroup
        );
    }
    assert!(
        *elapsed < Duration::from_secs(60),
        "level sweep took {elapsed:?}, bound is 60 s"
    );
    println!(
        "acceptance criterion 1 (level table, {} cases in {elapsed:?}): PASS",
        entries.len()
    );
}

#[test]
fn criterion_2_cocycle_identities() {
    let (_, entries) = sweep();
    for entry in entries {
        let case = entry.spec.to_case().unwrap();
        // delta e lands in the coroot lattice at every triple.
        delta_e(
            &case.rs,
            &case.center,
            &case.action,
            &case.etable,
            &case.subgroup,
        )
        .unwrap_or_else(|e| {
            panic!(
                "delta e fails for {}_{}:{}: {e}",
                entry.spec.family, entry.spec.rank, entry.spec.subgroup
            )
        });
        for k in 1..=3 {
            // obstruction_cocycle evaluates both algebraic forms of the
            // obstruction and errors if they ever disagree.
            let u = obstruction_cocycle(&case, k).expect("routes agree");
            assert!(
                is_cocycle(&case.center, &case.subgroup, &u),
                "delta U != 0 for {}_{}:{} at k = {k}",
                entry.spec.family,
                entry.spec.rank,
                entry.spec.subgroup
            );
        }
    }
    println!("acceptance criterion 2 (cocycle identities, k = 1..3): PASS");
}

#[test]
fn criterion_3_associativity_sweep() {
    let cases = [
        (Family::A, 5),
        (Family::B, 4),
        (Family::C, 4),
        (Family::C, 5),
        (Family::D, 5),
        (Family::D, 8),
        (Family::E6, 6),
        (Family::E7, 7),
    ];
    for (family, rank) in cases {
        let start = Instant::now();
        let case = Case::new(family, rank, None).unwrap();
        let report = minimal_level(&case).unwrap();
        let fam = solution_family(&case, report.k_min, &report.solution).unwrap();
        let cex = verify_rtc(&case, report.k_min, &fam).unwrap();
        assert_eq!(cex, None, "associativity fails for {family}_{rank}");
        let elapsed = start.elapsed();
        assert!(
            elapsed < Duration::from_secs(10),
            "{family}_{rank} took {elapsed:?}, bound is 10 s"
        );
    }
    println!("acceptance criterion 3 (associativity at k_min, 8 cases): PASS");
}

/// Independent restatement of the listed node permutations.
fn paper_generator_perms(family: Family, r: usize) -> Vec<Vec<usize>> {
    match family {
        Family::A => vec![(0..=r).map(|i| (i + 1) % (r + 1)).collect()],
        Family::B => {
            let mut p: Vec<usize> = (0..=r).collect();
            p.swap(0, 1);
            vec![p]
        }
        Family::C => vec![(0..=r).map(|i| r - i).collect()],
        Family::D => {
            if r % 2 == 1 {
                let p = (0..=r)
                    .map(|i| match i {
                        0 => r - 1,
                        1 => r,
                        i if i == r - 1 => 1,
                        i if i == r => 0,
                        i => r - i,
                    })
                    .collect();
                vec![p]
            } else {
                let p1 = (0..=r)
                    .map(|i| match i {
                        0 => r,
                        i if i == r => 0,
                        i => r - i,
                    })
                    .collect();
                let mut p2: Vec<usize> = (0..=r).collect();
                p2.swap(0, 1);
                p2.swap(r - 1, r);
                vec![p1, p2]
            }
        }
        Family::E6 => vec![vec![1, 5, 4, 3, 6, 0, 2]],
        Family::E7 => vec![vec![1, 0, 6, 5, 4, 3, 2, 7]],
    }
}

#[test]
fn criterion_4_center_action_geometry() {
    let mut ranges: Vec<(Family, usize)> = Vec::new();
    ranges.extend((1..=11).map(|r| (Family::A, r)));
    for r in 2..=9 {
        ranges.push((Family::B, r));
        ranges.push((Family::C, r));
    }
    ranges.extend((3..=9).map(|r| (Family::D, r)));
    ranges.push((Family::E6, 6));
    ranges.push((Family::E7, 7));

    for (family, r) in ranges {
        let case = Case::new(family, r, None).unwrap();
        let expected = paper_generator_perms(family, r);
        for (g, perm) in expected.iter().enumerate() {
            assert_eq!(
                case.action.perm(g + 1),
                &perm[..],
                "{family}_{r} generator {} permutation",
                g + 1
            );
        }
        for z in 0..case.center.order() {
            let perm = case.action.perm(z);
            for i in 0..=r {
                // Affine action permutes the alcove vertices accordingly.
                let image = case
                    .action
                    .affine(&case.rs, z, case.rs.alcove_vertex(i).unwrap())
                    .unwrap();
                assert_eq!(&image, case.rs.alcove_vertex(perm[i]).unwrap());
                // Marks and comarks are preserved.
                assert_eq!(case.rs.mark(perm[i]), case.rs.mark(i));
                assert_eq!(case.rs.comark(perm[i]), case.rs.comark(i));
            }
        }
        // Reflection words, with the stated letter counts.
        for (z, word) in reflection_words(&case.rs) {
            let expected_len = match family {
                Family::A => r,
                Family::B => 2 * r - 1,
                Family::C => r * (r + 1) / 2,
                Family::D => {
                    if z == 1 {
                        r * (r - 1) / 2
                    } else {
                        2 * (r - 1)
                    }
                }
                Family::E6 => 16,
                Family::E7 => 27,
            };
            assert_eq!(word.len(), expected_len);
            assert!(
                reflection_word_check(&case.rs, &case.action, z).unwrap(),
                "{family}_{r} word for generator {z}"
            );
        }
        assert!(beta_word_check(&case.rs, &case.action).unwrap());
    }
    println!("acceptance criterion 4 (center-action geometry): PASS");
}

#[test]
fn criterion_5_solution_class_doubling() {
    let (_, entries) = sweep();
    for entry in entries {
        let klein_full = entry.spec.family == "D"
            && entry.spec.rank % 2 == 0
            && entry.spec.subgroup == "Z2xZ2";
        let expected = if klein_full { 2 } else { 1 };
        assert_eq!(
            entry.report.class_count, expected,
            "class count for {}_{}:{}",
            entry.spec.family, entry.spec.rank, entry.spec.subgroup
        );
        assert_eq!(entry.report.class_representatives.len(), expected);
    }
    // Both parities of r/2 appear.
    assert!(entries
        .iter()
        .any(|e| e.spec.family == "D" && e.spec.rank == 8 && e.spec.subgroup == "Z2xZ2"));
    assert!(entries
        .iter()
        .any(|e| e.spec.family == "D" && e.spec.rank == 6 && e.spec.subgroup == "Z2xZ2"));
    println!("acceptance criterion 5 (doubling for Spin(4N)/Z2xZ2): PASS");
}

#[test]
fn criterion_6_character_invariance() {
    let (_, entries) = sweep();
    for entry in entries {
        let case = entry.spec.to_case().unwrap();
        assert!(
            lemma1_sweep(&case).unwrap(),
            "character invariance fails for {}_{}:{}",
            entry.spec.family,
            entry.spec.rank,
            entry.spec.subgroup
        );
    }
    println!("acceptance criterion 6 (character invariance sweep): PASS");
}

#[test]
fn criterion_7_solver_soundness() {
    // Order-2 subgroups: the solver verdict must agree with exhaustive
    // enumeration of normalized mu_M-valued 2-cochains.
    let (_, entries) = sweep();
    let mut order2 = 0;
    for entry in entries {
        let case = entry.spec.to_case().unwrap();
        if case.order() != 2 {
            continue;
        }
        order2 += 1;
        for k in 1..=3 {
            let u = obstruction_cocycle(&case, k).unwrap();
            let outcome = solve_coboundary(&case.center, &case.subgroup, &u).unwrap();
            let m = u64::try_from(&outcome.modulus).unwrap();
            let mut any = false;
            for x in 0..m {
                let mut cand = PhaseCochain::zero(2, 2);
                cand.set(
                    &[1, 1],
                    Phase::new(Rational::new(BigInt::from(x), BigInt::from(m))),
                );
                if coboundary(&case.center, &case.subgroup, &cand) == u {
                    any = true;
                    break;
                }
            }
            assert_eq!(
                outcome.solution.is_some(),
                any,
                "solver verdict disagrees with enumeration for {}_{}:{} at k = {k}",
                entry.spec.family,
                entry.spec.rank,
                entry.spec.subgroup
            );
        }
    }
    assert!(order2 >= 20, "expected many order-2 cases, got {order2}");

    // Smith-form properties on 1000 random matrices up to 6x6.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let rows = rng.random_range(1..=6);
        let cols = rng.random_range(1..=6);
        let mut a = IntMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                a.set(i, j, BigInt::from(rng.random_range(-9i64..=9)));
            }
        }
        let snf = smith_normal_form(&a);
        assert_eq!(snf.d, snf.u.mul(&a).mul(&snf.v));
        assert_eq!(snf.u.det().abs(), BigInt::one());
        assert_eq!(snf.v.det().abs(), BigInt::one());
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
        for d in &diag {
            assert!(!d.is_negative());
        }
    }
    println!("acceptance criterion 7 (solver soundness, {order2} order-2 cases + 1000 SNF samples): PASS");
}

#[test]
fn criterion_8_exponent_shift_robustness() {
    let (_, entries) = sweep();
    for (case_index, entry) in entries.iter().enumerate() {
        let case = entry.spec.to_case().unwrap();
        let n = case.center.order();
        let dim = case.rs.ambient_dim();
        let mut rng = ChaCha8Rng::seed_from_u64(0xa15c0 + case_index as u64);
        for _ in 0..10 {
            // Random normalized coroot-valued 2-cochain on the subgroup.
            let mut shift = vec![vec![Vector::zero(dim); n]; n];
            for &a in case.subgroup.members() {
                for &b in case.subgroup.members() {
                    if a == 0 || b == 0 {
                        continue;
                    }
                    let mut v = Vector::zero(dim);
                    for i in 0..case.rs.rank() {
                        let c: i64 = rng.random_range(-2..=2);
                        if c != 0 {
                            v = v.add(&case.rs.coroot(i).scale_int(c));
                        }
                    }
                    shift[a][b] = v;
                }
            }
            let shifted = case.with_etable(case.etable.shifted(&shift));
            let k = minimal_level_only(&shifted).unwrap();
            assert_eq!(
                k, entry.report.k_min,
                "k_min changed under a coroot shift for {}_{}:{}",
                entry.spec.family, entry.spec.rank, entry.spec.subgroup
            );
        }
    }
    println!("acceptance criterion 8 (coroot-shift robustness, 10 shifts/case): PASS");
}
