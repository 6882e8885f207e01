//! Regenerates the bundled reference tables from scratch.

use num_bigint::BigInt;
use rankcone::cone::{extreme_rays, facet_gap, orbit_families, orbit_of, VRep};
use rankcone::error::Error;
use rankcone::named::named_state;
use rankcone::rankvec::rank_vector;

/// Representatives of the six ray families attained (exactly or in the
/// large-d limit) by the state gallery; input to the facet-gap table.
pub fn attained_family_representatives() -> Vec<Vec<i64>> {
    vec![
        vec![1, 1, 0, 0, 0, 1, 1],
        vec![1, 1, 1, 1, 2, 2, 2],
        vec![1, 1, 1, 1, 1, 1, 0],
        vec![2, 2, 1, 1, 2, 1, 1],
        vec![2, 2, 2, 1, 2, 1, 1],
        vec![3, 3, 3, 1, 2, 2, 2],
    ]
}

fn bi(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

const HEADER: &str = "A\tB\tC\tD\tAB\tAC\tAD";

pub fn ray_table() -> Result<String, Error> {
    let rays = extreme_rays(&crate::known_hrep()?)?;
    let families = orbit_families(&rays, 4)?;
    let mut out = format!("family\t{HEADER}\tsize\n");
    for (i, fam) in families.iter().enumerate() {
        let rep = fam
            .representative
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join("\t");
        out.push_str(&format!("{}\t{}\t{}\n", i + 1, rep, fam.size()));
    }
    Ok(out)
}

pub fn psi_vectors() -> Result<String, Error> {
    let mut out = format!("state\td\t{HEADER}\n");
    let mut push = |name: &str, d: Option<usize>| -> Result<(), Error> {
        let rv = rank_vector(&named_state(name, d)?)?;
        let row = rv
            .as_slice()
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("\t");
        let d_text = d.map_or("-".to_string(), |d| d.to_string());
        out.push_str(&format!("{name}\t{d_text}\t{row}\n"));
        Ok(())
    };
    push("psi1", None)?;
    push("psi2", None)?;
    for name in ["psi3", "psi4", "psi5", "psi6"] {
        for d in 1..=3 {
            push(name, Some(d))?;
        }
    }
    Ok(out)
}

pub fn ssa_counterexample() -> Result<String, Error> {
    let state = named_state("ssa_cx", None)?;
    let rv = rank_vector(&state)?;
    let ineq = crate::ssa_instance();
    let (holds, cert) = ineq.holds(&rv)?;
    let mut out = format!("state\tssa_cx\n{HEADER}\n");
    out.push_str(
        &rv.as_slice()
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("\t"),
    );
    out.push('\n');
    out.push_str(&format!("inequality\t{}\n", ineq.name()));
    out.push_str(&format!(
        "verdict\t{}\n",
        if holds { "HOLDS" } else { "VIOLATED" }
    ));
    out.push_str(&format!("lhs\t{}\nrhs\t{}\n", cert.lhs, cert.rhs));
    Ok(out)
}

pub fn hypothesis_facet() -> Result<String, Error> {
    let mut attained: Vec<Vec<BigInt>> = Vec::new();
    for rep in attained_family_representatives() {
        attained.extend(orbit_of(&bi(&rep), 4)?);
    }
    attained.sort();
    attained.dedup();
    let gap = facet_gap(&crate::known_hrep()?, &VRep::new(7, attained)?)?;
    let mut out = format!("{HEADER}\n");
    for row in &gap {
        out.push_str(
            &row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\t"),
        );
        out.push('\n');
    }
    Ok(out)
}
