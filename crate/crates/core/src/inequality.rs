//! Linear 0-entropy inequalities and their exact multiplicative evaluation.
//!
//! An inequality sum_I c_I * S0(I) >= 0 with integer coefficients holds on a
//! rank vector exactly when the product of r_I^{c_I} over positive
//! coefficients is at least the product over negative ones. Both products are
//! computed with arbitrary-precision integers and returned as the
//! certificate, so no decision ever goes through floating logs.

use crate::bipartition::canonical_bipartitions;
use crate::error::{Error, Result};
use crate::rankvec::{rank_vector, RankVector};
use crate::state::PureState;
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use std::collections::HashSet;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Nonneg,
    Subadd,
    Thm1,
    Thm2,
    Hypothesis,
    Conjectured,
    Custom,
}

/// The five named inequality templates over party letters.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyTemplate {
    /// S0(A) >= 0
    Nonneg,
    /// S0(A) + S0(B) >= S0(AB)
    Subadd,
    /// S0(AB) + S0(AC) >= S0(A)
    Thm1,
    /// S0(AB) + S0(AC) + S0(BC) >= 2 S0(A)
    Thm2,
    /// S0(AB) + S0(AC) >= S0(BC)
    Hypothesis,
}

impl FamilyTemplate {
    pub const ALL: [FamilyTemplate; 5] = [
        FamilyTemplate::Nonneg,
        FamilyTemplate::Subadd,
        FamilyTemplate::Thm1,
        FamilyTemplate::Thm2,
        FamilyTemplate::Hypothesis,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyTemplate::Nonneg => "nonneg",
            FamilyTemplate::Subadd => "subadd",
            FamilyTemplate::Thm1 => "thm1",
            FamilyTemplate::Thm2 => "thm2",
            FamilyTemplate::Hypothesis => "hypothesis",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        FamilyTemplate::ALL
            .into_iter()
            .find(|t| t.name() == name)
            .ok_or_else(|| Error::UnknownName(name.into()))
    }

    fn letters(&self) -> usize {
        match self {
            FamilyTemplate::Nonneg => 1,
            FamilyTemplate::Subadd => 2,
            _ => 3,
        }
    }

    /// Terms as (coefficient, letter indices of the union).
    fn terms(&self) -> &'static [(i64, &'static [usize])] {
        match self {
            FamilyTemplate::Nonneg => &[(1, &[0])],
            FamilyTemplate::Subadd => &[(1, &[0]), (1, &[1]), (-1, &[0, 1])],
            FamilyTemplate::Thm1 => &[(1, &[0, 1]), (1, &[0, 2]), (-1, &[0])],
            FamilyTemplate::Thm2 => &[(1, &[0, 1]), (1, &[0, 2]), (1, &[1, 2]), (-2, &[0])],
            FamilyTemplate::Hypothesis => &[(1, &[0, 1]), (1, &[0, 2]), (-1, &[1, 2])],
        }
    }

    fn provenance(&self) -> Provenance {
        match self {
            FamilyTemplate::Nonneg => Provenance::Nonneg,
            FamilyTemplate::Subadd => Provenance::Subadd,
            FamilyTemplate::Thm1 => Provenance::Thm1,
            FamilyTemplate::Thm2 => Provenance::Thm2,
            FamilyTemplate::Hypothesis => Provenance::Hypothesis,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RankInequality {
    n: usize,
    coeffs: Vec<i64>,
    name: String,
    provenance: Provenance,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub lhs: BigUint,
    pub rhs: BigUint,
}

impl RankInequality {
    pub fn new(n: usize, coeffs: Vec<i64>, name: String, provenance: Provenance) -> Result<Self> {
        let index = canonical_bipartitions(n)?;
        if coeffs.len() != index.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for {} bipartitions",
                coeffs.len(),
                index.len()
            )));
        }
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::Contract("inequality needs a nonzero coefficient".into()));
        }
        Ok(RankInequality { n, coeffs, name, provenance })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Exact verdict: the positive-side product of r_I^{c_I} must reach the
    /// negative-side product. Returns both products as the certificate.
    pub fn holds(&self, rv: &RankVector) -> Result<(bool, Certificate)> {
        if rv.n() != self.n {
            return Err(Error::ShapeMismatch("inequality and rank vector party counts differ".into()));
        }
        let mut lhs = BigUint::one();
        let mut rhs = BigUint::one();
        for (i, &c) in self.coeffs.iter().enumerate() {
            let r = BigUint::from(rv.get(i));
            if c > 0 {
                lhs *= r.pow(c as u32);
            } else if c < 0 {
                rhs *= r.pow((-c) as u32);
            }
        }
        let ok = lhs >= rhs;
        Ok((ok, Certificate { lhs, rhs }))
    }
}

impl fmt::Display for RankInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "{} : {}", self.name, coeffs)
    }
}

/// All distinct instances of a template over assignments of pairwise-disjoint
/// nonempty party subsets to its letters. Coordinates are reduced through
/// `S0(I) = S0(complement)`; the full party set contributes zero. Instances
/// whose coefficient vector vanishes are dropped, and duplicates (identical
/// coefficient vectors) are removed keeping the first.
pub fn instantiate_family(template: FamilyTemplate, n: usize) -> Result<Vec<RankInequality>> {
    let index = canonical_bipartitions(n)?;
    let full: u32 = (1 << n) - 1;
    let letters = template.letters();
    let mut out: Vec<RankInequality> = Vec::new();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();

    let mut assignment = vec![0u32; letters];
    enumerate_disjoint(full, 0, &mut assignment, &mut |assignment| {
        let mut coeffs = vec![0i64; index.len()];
        for &(c, letter_set) in template.terms() {
            let union = letter_set.iter().fold(0u32, |m, &l| m | assignment[l]);
            if union == full {
                continue; // S0 of the full set vanishes on pure states
            }
            let pos = index.position_of_mask(union).expect("nonempty proper union");
            coeffs[pos] += c;
        }
        if coeffs.iter().all(|&c| c == 0) {
            return Ok(());
        }
        if seen.insert(coeffs.clone()) {
            let label = assignment
                .iter()
                .map(|&m| mask_label(m))
                .collect::<Vec<_>>()
                .join("|");
            out.push(RankInequality::new(
                n,
                coeffs,
                format!("{}({})", template.name(), label),
                template.provenance(),
            )?);
        }
        Ok(())
    })?;
    Ok(out)
}

fn mask_label(mask: u32) -> String {
    (0..32)
        .filter(|&b| mask >> b & 1 == 1)
        .map(|b| (b'A' + b as u8) as char)
        .collect()
}

/// Calls `f` for every assignment of pairwise-disjoint nonempty submasks of
/// `full` to positions `at..`, in ascending mask order per position.
fn enumerate_disjoint(
    full: u32,
    at: usize,
    assignment: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    if at == assignment.len() {
        return f(assignment);
    }
    let used: u32 = assignment[..at].iter().fold(0, |m, &a| m | a);
    for mask in 1..=full {
        if mask & !full != 0 || mask & used != 0 {
            continue;
        }
        assignment[at] = mask;
        enumerate_disjoint(full, at + 1, assignment, f)?;
    }
    assignment[at] = 0;
    Ok(())
}

/// The proven four-party set: all instances of non-negativity,
/// subadditivity, and the two theorem families, deduplicated.
pub fn known_set(n: usize) -> Result<Vec<RankInequality>> {
    if n != 4 {
        return Err(Error::Unsupported(format!("known inequality set is settled only for 4 parties, got {n}")));
    }
    let mut out = Vec::new();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    for template in [
        FamilyTemplate::Nonneg,
        FamilyTemplate::Subadd,
        FamilyTemplate::Thm1,
        FamilyTemplate::Thm2,
    ] {
        for ineq in instantiate_family(template, n)? {
            if seen.insert(ineq.coeffs().to_vec()) {
                out.push(ineq);
            }
        }
    }
    Ok(out)
}

/// The single-letter hypothesis instance S0(AB) + S0(AC) >= S0(BC), shipped
/// as a test subject rather than an axiom.
pub fn hypothesis_inequality() -> RankInequality {
    RankInequality::new(
        4,
        vec![0, 0, 0, 0, 1, 1, -1],
        "hypothesis(A|B|C)".into(),
        Provenance::Hypothesis,
    )
    .expect("static inequality")
}

/// The refuted product conjecture r_A r_B r_C <= r_AB r_AC r_AD.
pub fn conjectured_product_inequality() -> RankInequality {
    RankInequality::new(
        4,
        vec![-1, -1, -1, 0, 1, 1, 1],
        "conjectured(A,B,C<=AB,AC,AD)".into(),
        Provenance::Conjectured,
    )
    .expect("static inequality")
}

/// Strong subadditivity transplanted to S0: S0(AB) + S0(AC) >= S0(A) + S0(ABC).
/// Valid for von Neumann entropy, refutable here.
pub fn ssa_zero_entropy_instance() -> RankInequality {
    RankInequality::new(
        4,
        vec![-1, 0, 0, -1, 1, 1, 0],
        "ssa0(A;B,C)".into(),
        Provenance::Custom,
    )
    .expect("static inequality")
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditEntry {
    pub name: String,
    pub provenance: Provenance,
    pub holds: bool,
    #[serde(serialize_with = "ser_biguint")]
    pub lhs: BigUint,
    #[serde(serialize_with = "ser_biguint")]
    pub rhs: BigUint,
}

fn ser_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub rank_vector: RankVector,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn violations(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries.iter().filter(|e| !e.holds)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("name\tprovenance\tverdict\tlhs\trhs\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{:?}\t{}\t{}\t{}\n",
                e.name,
                e.provenance,
                if e.holds { "HOLDS" } else { "VIOLATED" },
                e.lhs,
                e.rhs
            ));
        }
        out
    }
}

/// Evaluates every inequality on the state's rank vector.
pub fn audit_state(psi: &PureState, inequalities: &[RankInequality]) -> Result<AuditReport> {
    let rv = rank_vector(psi)?;
    audit_rank_vector(&rv, inequalities)
}

pub fn audit_rank_vector(rv: &RankVector, inequalities: &[RankInequality]) -> Result<AuditReport> {
    let mut entries = Vec::with_capacity(inequalities.len());
    for ineq in inequalities {
        let (holds, cert) = ineq.holds(rv)?;
        entries.push(AuditEntry {
            name: ineq.name().into(),
            provenance: ineq.provenance(),
            holds,
            lhs: cert.lhs,
            rhs: cert.rhs,
        });
    }
    Ok(AuditReport { rank_vector: rv.clone(), entries })
}

/// One inequality per line: `name : c_A c_B ... ` in canonical order; the
/// party count is inferred from the coefficient count.
pub fn parse_inequalities(text: &str) -> Result<Vec<RankInequality>> {
    let mut out = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, coeff_part) = line.split_once(':').ok_or(Error::Parse {
            line: line_no + 1,
            msg: "expected `name : coefficients`".into(),
        })?;
        let coeffs: Vec<i64> = coeff_part
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>().map_err(|_| Error::Parse {
                    line: line_no + 1,
                    msg: format!("bad coefficient {t:?}"),
                })
            })
            .collect::<Result<_>>()?;
        let n = match coeffs.len() {
            1 => 2,
            3 => 3,
            7 => 4,
            15 => 5,
            len => {
                return Err(Error::Parse {
                    line: line_no + 1,
                    msg: format!("{len} coefficients does not match any party count"),
                })
            }
        };
        out.push(RankInequality::new(n, coeffs, name.trim().into(), Provenance::Custom).map_err(
            |e| Error::Parse { line: line_no + 1, msg: e.to_string() },
        )?);
    }
    Ok(out)
}

pub fn format_inequalities(ineqs: &[RankInequality]) -> String {
    let mut out = String::new();
    for i in ineqs {
        out.push_str(&i.to_string());
        out.push('\n');
    }
    out
}
