//! Machine-readable case reports and the consolidated level table.
//!
//! Every rational serializes as a `"p/q"` string so reports are bit-exact
//! and round-trip losslessly. The JSON schema is versioned as
//! `gerbe-levels/1`.

use serde::{Deserialize, Serialize};

use crate::center::{beta_word_check, reflection_word_check, reflection_words};
use crate::cohomology::{
    is_cocycle, lemma1_sweep, minimal_level, obstruction_cocycle, solution_family,
    solve_coboundary, verify_rtc, Case, PhaseCochain,
};
use crate::error::{Error, Result};
use crate::linalg::{Rational, Vector};
use crate::root_data::Family;

pub const SCHEMA_VERSION: &str = "gerbe-levels/1";

/// One (family, rank, subgroup) case, as named on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub family: String,
    pub rank: usize,
    pub subgroup: String,
}

impl CaseSpec {
    pub fn to_case(&self) -> Result<Case> {
        let family: Family = self.family.parse()?;
        Case::new(family, self.rank, Some(&self.subgroup))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementData {
    pub label: String,
    /// Coweight exponent of the element, coordinates as "p/q".
    pub theta: Vec<String>,
    /// Image of extended-diagram node i under the element.
    pub node_perm: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelTable {
    pub level: u32,
    pub trivial: bool,
    /// U values indexed by element triple, flattened row-major, as "p/q".
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationFlags {
    pub lemma1: bool,
    pub lemma2: bool,
    pub rtc: bool,
    pub delta_e: bool,
    pub reflection_words: bool,
}

impl VerificationFlags {
    pub fn all_pass(&self) -> bool {
        self.lemma1 && self.lemma2 && self.rtc && self.delta_e && self.reflection_words
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub case: CaseSpec,
    pub elements: Vec<ElementData>,
    /// e_{z,z'} coordinates as "p/q", indexed by subgroup positions.
    pub e_table: Vec<Vec<Vec<String>>>,
    /// Obstruction tables for k = 1 ..= max(k_min, requested level).
    pub u_tables: Vec<LevelTable>,
    pub k_min: u32,
    /// The level the solution data below refers to.
    pub level: u32,
    /// Solution u as a phase table, present iff solvable at `level`.
    pub u_solution: Option<Vec<Vec<String>>>,
    pub solution_class_count: Option<usize>,
    pub class_representatives: Vec<Vec<Vec<String>>>,
    pub verification: VerificationFlags,
}

fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn vector_strings(v: &Vector) -> Vec<String> {
    v.coords().iter().map(rational_string).collect()
}

fn phase_table(c: &PhaseCochain) -> Vec<Vec<String>> {
    let s = c.group_size();
    (0..s)
        .map(|p| {
            (0..s)
                .map(|q| rational_string(c.get(&[p, q]).value()))
                .collect()
        })
        .collect()
}

/// Run the verification battery of one case: delta_e membership, the
/// cocycle law for k = 1..3, the character invariance sweep, the
/// reflection words, and the associativity identity at k_min.
pub fn verify_flags(case: &Case, k_min: u32, solution: &PhaseCochain) -> Result<VerificationFlags> {
    let delta_e_ok = crate::center::delta_e(
        &case.rs,
        &case.center,
        &case.action,
        &case.etable,
        &case.subgroup,
    )
    .is_ok();
    let mut lemma2 = true;
    for k in 1..=3 {
        let u = obstruction_cocycle(case, k)?;
        if !is_cocycle(&case.center, &case.subgroup, &u) {
            lemma2 = false;
        }
    }
    let lemma1 = lemma1_sweep(case)?;
    let mut words_ok = true;
    for (z, _) in reflection_words(&case.rs) {
        if !reflection_word_check(&case.rs, &case.action, z)? {
            words_ok = false;
        }
    }
    if !beta_word_check(&case.rs, &case.action)? {
        words_ok = false;
    }
    let fam = solution_family(case, k_min, solution)?;
    let rtc = verify_rtc(case, k_min, &fam)?.is_none();
    Ok(VerificationFlags {
        lemma1,
        lemma2,
        rtc,
        delta_e: delta_e_ok,
        reflection_words: words_ok,
    })
}

/// Assemble the full report for a case. With `requested_level` set, the
/// solution section refers to that level (possibly unsolvable, which is a
/// normal outcome); otherwise it refers to k_min.
pub fn build_report(case: &Case, requested_level: Option<u32>) -> Result<ReportDocument> {
    let report = minimal_level(case)?;
    let level = requested_level.unwrap_or(report.k_min);
    let s = case.order();

    let elements = (0..s)
        .map(|p| {
            let z = case.subgroup.member(p);
            ElementData {
                label: case.center.label(z).to_string(),
                theta: vector_strings(case.center.theta(z)),
                node_perm: case.action.perm(z).to_vec(),
            }
        })
        .collect();

    let e_table = (0..s)
        .map(|p| {
            (0..s)
                .map(|q| {
                    vector_strings(
                        case.etable
                            .entry(case.subgroup.member(p), case.subgroup.member(q)),
                    )
                })
                .collect()
        })
        .collect();

    let mut u_tables = Vec::new();
    for k in 1..=report.k_min.max(level) {
        let u = obstruction_cocycle(case, k)?;
        let trivial = solve_coboundary(&case.center, &case.subgroup, &u)?
            .solution
            .is_some();
        u_tables.push(LevelTable {
            level: k,
            trivial,
            values: u
                .values()
                .iter()
                .map(|p| rational_string(p.value()))
                .collect(),
        });
    }

    let (u_solution, class_count, class_reps) = if level == report.k_min {
        (
            Some(phase_table(&report.solution)),
            Some(report.class_count),
            report
                .class_representatives
                .iter()
                .map(phase_table)
                .collect(),
        )
    } else {
        let u = obstruction_cocycle(case, level)?;
        let outcome = solve_coboundary(&case.center, &case.subgroup, &u)?;
        match outcome.solution {
            None => (None, None, vec![]),
            Some(sol) => {
                let classes = crate::cohomology::solution_classes(case, level)?;
                (
                    Some(phase_table(&sol)),
                    Some(classes.count),
                    classes.representatives.iter().map(phase_table).collect(),
                )
            }
        }
    };

    let verification = verify_flags(case, report.k_min, &report.solution)?;

    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        case: CaseSpec {
            family: case.rs.family().to_string(),
            rank: case.rs.rank(),
            subgroup: case.subgroup.label().to_string(),
        },
        elements,
        e_table,
        u_tables,
        k_min: report.k_min,
        level,
        u_solution,
        solution_class_count: class_count,
        class_representatives: class_reps,
        verification,
    })
}

/// One row of the consolidated level table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRow {
    pub family: String,
    pub rank: usize,
    pub subgroup: String,
    pub k_min: u32,
    pub classes: usize,
}

pub fn level_row(case: &Case) -> Result<LevelRow> {
    let report = minimal_level(case)?;
    Ok(LevelRow {
        family: case.rs.family().to_string(),
        rank: case.rs.rank(),
        subgroup: case.subgroup.label().to_string(),
        k_min: report.k_min,
        classes: report.class_count,
    })
}

/// Deterministic enumeration of all cases up to the rank caps: families in
/// the order A, B, C, D, E6, E7, ranks ascending, subgroups as listed by
/// the center.
pub fn enumerate_cases(cap_a: usize, cap_bcd: usize) -> Vec<CaseSpec> {
    let mut out = Vec::new();
    let mut push_family = |family: Family, lo: usize, hi: usize| {
        for rank in lo..=hi {
            let Ok(case) = Case::new(family, rank, None) else {
                continue;
            };
            for sub in case.center.subgroups() {
                out.push(CaseSpec {
                    family: family.to_string(),
                    rank,
                    subgroup: sub.label().to_string(),
                });
            }
        }
    };
    push_family(Family::A, 1, cap_a);
    push_family(Family::B, 2, cap_bcd);
    push_family(Family::C, 2, cap_bcd);
    push_family(Family::D, 3, cap_bcd);
    push_family(Family::E6, 6, 6);
    push_family(Family::E7, 7, 7);
    out
}

/// First verification failure of a case, for diagnostics.
pub fn first_failure(case: &Case) -> Result<Option<String>> {
    let report = minimal_level(case)?;
    let flags = verify_flags(case, report.k_min, &report.solution)?;
    if flags.all_pass() {
        return Ok(None);
    }
    if !flags.delta_e {
        return Ok(Some("delta e leaves the coroot lattice".to_string()));
    }
    if !flags.lemma2 {
        return Ok(Some("obstruction is not a 3-cocycle".to_string()));
    }
    if !flags.lemma1 {
        return Ok(Some("character invariance fails".to_string()));
    }
    if !flags.reflection_words {
        return Ok(Some("a reflection word does not reproduce W_z".to_string()));
    }
    let fam = solution_family(case, report.k_min, &report.solution)?;
    if let Some(cex) = verify_rtc(case, report.k_min, &fam)? {
        return Ok(Some(format!(
            "associativity fails at nodes {:?}, elements {:?}: {} vs {}",
            cex.nodes, cex.elements, cex.lhs, cex.rhs
        )));
    }
    Ok(Some("unknown failure".to_string()))
}

impl std::str::FromStr for CaseSpec {
    type Err = Error;

    /// Parse `FAMILY_RANK[:SUBGROUP]`, e.g. `D_8:Z2xZ2` or `E7`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, subgroup) = match s.split_once(':') {
            Some((n, sub)) => (n, Some(sub)),
            None => (s, None),
        };
        let (family, rank) = if name == "E6" || name == "E6_6" {
            ("E6".to_string(), 6)
        } else if name == "E7" || name == "E7_7" {
            ("E7".to_string(), 7)
        } else {
            let (f, r) = name
                .split_once('_')
                .ok_or_else(|| Error::Parse(format!("expected FAMILY_RANK, got {name:?}")))?;
            let rank: usize = r
                .parse()
                .map_err(|_| Error::Parse(format!("bad rank {r:?}")))?;
            (f.to_string(), rank)
        };
        // Resolve the default subgroup label through the center.
        let fam: Family = family.parse()?;
        let probe = Case::new(fam, rank, subgroup)?;
        Ok(CaseSpec {
            family,
            rank,
            subgroup: probe.subgroup.label().to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips() {
        let case = Case::new(Family::C, 3, None).unwrap();
        let doc = build_report(&case, None).unwrap();
        assert_eq!(doc.schema_version, SCHEMA_VERSION);
        assert_eq!(doc.k_min, 2);
        assert!(doc.verification.all_pass());
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, back);
    }

    #[test]
    fn no_solution_is_reported_in_document() {
        let case = Case::new(Family::C, 3, None).unwrap();
        let doc = build_report(&case, Some(1)).unwrap();
        assert_eq!(doc.level, 1);
        assert!(doc.u_solution.is_none());
        assert!(doc.solution_class_count.is_none());
        assert_eq!(doc.k_min, 2);
        assert!(!doc.u_tables[0].trivial);
        assert!(doc.u_tables[1].trivial);
    }

    #[test]
    fn case_spec_parsing() {
        let spec: CaseSpec = "D_8:Z2xZ2".parse().unwrap();
        assert_eq!(spec.family, "D");
        assert_eq!(spec.rank, 8);
        assert_eq!(spec.subgroup, "Z2xZ2");
        let spec: CaseSpec = "E7".parse().unwrap();
        assert_eq!(spec.rank, 7);
        assert_eq!(spec.subgroup, "full");
        let spec: CaseSpec = "A_5:cyclic:3".parse().unwrap();
        assert_eq!(spec.subgroup, "cyclic:3");
        assert!("X_3".parse::<CaseSpec>().is_err());
        assert!("A_5:cyclic:4".parse::<CaseSpec>().is_err());
    }

    #[test]
    fn enumeration_is_deterministic_and_ordered() {
        let cases = enumerate_cases(3, 4);
        let first: Vec<String> = cases
            .iter()
            .take(4)
            .map(|c| format!("{}_{}:{}", c.family, c.rank, c.subgroup))
            .collect();
        assert_eq!(
            first,
            vec!["A_1:cyclic:1", "A_1:cyclic:2", "A_2:cyclic:1", "A_2:cyclic:3"]
        );
        assert_eq!(enumerate_cases(3, 4), cases);
        // E6/E7 close the list.
        assert_eq!(cases.last().unwrap().family, "E7");
    }

    #[test]
    fn d8_report_shows_doubling() {
        let case = Case::new(Family::D, 8, None).unwrap();
        let doc = build_report(&case, Some(1)).unwrap();
        assert_eq!(doc.k_min, 1);
        assert_eq!(doc.solution_class_count, Some(2));
        assert_eq!(doc.class_representatives.len(), 2);
        assert!(doc.verification.all_pass());
    }
}
