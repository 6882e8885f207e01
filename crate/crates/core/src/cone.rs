//! Exact polyhedral cone computations in both representations.
//!
//! `extreme_rays` runs the double description method: start from a simplicial
//! subcone built on a row basis, then insert the remaining halfspaces one at a
//! time, keeping only adjacent positive/negative ray pairs when cutting.
//! Insertion order is dynamic: the next halfspace is the one that cuts the
//! fewest currently-adjacent pairs. All arithmetic is over `BigInt`, rays are
//! kept primitive (gcd 1), and the final ray set is re-verified against every
//! input inequality before it is returned.

use crate::bipartition::{canonical_bipartitions, permutations};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::GaussianRational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashSet};

/// Halfspace representation: rows a with meaning a . x >= 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HRep {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
}

/// Generator representation: primitive integer extreme rays.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VRep {
    dim: usize,
    rays: Vec<Vec<BigInt>>,
}

impl HRep {
    pub fn new(dim: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Contract("cone dimension must be at least 1".into()));
        }
        let mut stored = Vec::with_capacity(rows.len());
        for (i, mut row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::ShapeMismatch(format!("row {i} has length {}", row.len())));
            }
            if row.iter().all(Zero::is_zero) {
                return Err(Error::Contract(format!("row {i} is zero")));
            }
            gcd_reduce(&mut row);
            stored.push(row);
        }
        Ok(HRep { dim, rows: stored })
    }

    pub fn from_i64(dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        HRep::new(
            dim,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }
}

impl VRep {
    pub fn new(dim: usize, rays: Vec<Vec<BigInt>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Contract("cone dimension must be at least 1".into()));
        }
        let mut stored = Vec::with_capacity(rays.len());
        for (i, mut ray) in rays.into_iter().enumerate() {
            if ray.len() != dim {
                return Err(Error::ShapeMismatch(format!("ray {i} has length {}", ray.len())));
            }
            if ray.iter().all(Zero::is_zero) {
                return Err(Error::Contract(format!("ray {i} is zero")));
            }
            gcd_reduce(&mut ray);
            stored.push(ray);
        }
        Ok(VRep { dim, rays: stored })
    }

    pub fn from_i64(dim: usize, rays: &[Vec<i64>]) -> Result<Self> {
        VRep::new(
            dim,
            rays.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }
}

/// Divides out the gcd of the entries; the zero vector is left alone.
pub fn gcd_reduce(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Primitive form with positive leading entry, for table comparison and
/// orbit hashing only; rays themselves keep their computed orientation.
pub fn canonical_key(v: &[BigInt]) -> Vec<BigInt> {
    let mut out = v.to_vec();
    gcd_reduce(&mut out);
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in out.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    out
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn int_matrix(rows: &[Vec<BigInt>], dim: usize) -> ExactMatrix {
    ExactMatrix::from_fn(rows.len(), dim, |r, c| {
        GaussianRational::from_bigint(rows[r][c].clone())
    })
}

/// Clears denominators of a real rational vector and reduces to gcd 1.
fn to_primitive_int(v: &[GaussianRational]) -> Result<Vec<BigInt>> {
    let mut lcm = BigInt::one();
    for e in v {
        if !e.im().is_zero() {
            return Err(Error::Internal("expected a real vector".into()));
        }
        lcm = lcm.lcm(e.re().denom());
    }
    let mut out: Vec<BigInt> = v
        .iter()
        .map(|e| {
            let r = e.re();
            r.numer() * (&lcm / r.denom())
        })
        .collect();
    gcd_reduce(&mut out);
    Ok(out)
}

// --- small bitset over halfspace indices ---

#[derive(Clone, PartialEq, Eq, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    v: Vec<BigInt>,
    tight: Bits,
}

fn tight_bits(v: &[BigInt], rows: &[Vec<BigInt>]) -> Bits {
    let mut bits = Bits::new(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if dot(row, v).is_zero() {
            bits.set(i);
        }
    }
    bits
}

/// Complete irredundant extreme-ray enumeration of a pointed cone.
pub fn extreme_rays(h: &HRep) -> Result<VRep> {
    let dim = h.dim;
    let rows = &h.rows;

    // Pointedness: the lineality space {x : Ax = 0} must be trivial.
    let row_matrix = int_matrix(rows, dim);
    if row_matrix.rank() < dim {
        let lineality = row_matrix
            .nullspace()
            .iter()
            .map(|v| to_primitive_int(v))
            .collect::<Result<Vec<_>>>()?;
        return Err(Error::NonPointed { lineality });
    }

    // Greedy row basis; the simplicial cone on it seeds the ray list.
    let mut basis_idx: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        if basis_idx.len() == dim {
            break;
        }
        let mut candidate: Vec<usize> = basis_idx.clone();
        candidate.push(i);
        let sel: Vec<Vec<BigInt>> = candidate.iter().map(|&j| rows[j].clone()).collect();
        if int_matrix(&sel, dim).rank() == candidate.len() {
            basis_idx = candidate;
        }
    }
    debug_assert_eq!(basis_idx.len(), dim);

    let basis_rows: Vec<Vec<BigInt>> = basis_idx.iter().map(|&j| rows[j].clone()).collect();
    let basis = int_matrix(&basis_rows, dim);
    let mut rays: Vec<Ray> = Vec::new();
    for j in 0..dim {
        let mut e = vec![GaussianRational::zero(); dim];
        e[j] = GaussianRational::one();
        let sol = basis
            .solve(&e)?
            .ok_or_else(|| Error::Internal("basis system must be solvable".into()))?;
        let v = to_primitive_int(&sol)?;
        let tight = tight_bits(&v, rows);
        rays.push(Ray { v, tight });
    }

    let mut processed_mask = Bits::new(rows.len());
    for &i in &basis_idx {
        processed_mask.set(i);
    }
    let mut remaining: Vec<usize> = (0..rows.len()).filter(|i| !basis_idx.contains(i)).collect();

    while !remaining.is_empty() {
        let signs_for = |row: &[BigInt], rays: &[Ray]| -> Vec<i8> {
            rays.iter()
                .map(|r| {
                    let d = dot(row, &r.v);
                    if d.is_zero() {
                        0
                    } else if d.is_positive() {
                        1
                    } else {
                        -1
                    }
                })
                .collect()
        };

        // Prefer a halfspace that cuts nothing; otherwise pick the one cutting
        // the fewest adjacent pairs.
        let mut chosen_at = remaining
            .iter()
            .position(|&i| signs_for(&rows[i], &rays).iter().all(|&s| s >= 0));
        if chosen_at.is_none() {
            let adjacency = adjacent_pairs(&rays, &processed_mask, dim);
            let mut best: Option<(usize, usize)> = None; // (cuts, position)
            for (pos, &i) in remaining.iter().enumerate() {
                let signs = signs_for(&rows[i], &rays);
                let cuts = adjacency
                    .iter()
                    .filter(|&&(a, b)| signs[a] as i16 * signs[b] as i16 == -1)
                    .count();
                if best.map_or(true, |(c, _)| cuts < c) {
                    best = Some((cuts, pos));
                }
            }
            chosen_at = best.map(|(_, pos)| pos);
        }
        let row_idx = remaining.remove(chosen_at.expect("nonempty remaining"));
        let row = &rows[row_idx];

        let signs = signs_for(row, &rays);
        let adjacency = adjacent_pairs(&rays, &processed_mask, dim);
        let mut new_rays: Vec<Ray> = Vec::new();
        for &(a, b) in &adjacency {
            if signs[a] as i16 * signs[b] as i16 != -1 {
                continue;
            }
            let (p, n) = if signs[a] == 1 { (a, b) } else { (b, a) };
            let sp = dot(row, &rays[p].v);
            let sn = dot(row, &rays[n].v);
            let mut w: Vec<BigInt> = rays[p]
                .v
                .iter()
                .zip(&rays[n].v)
                .map(|(rp, rn)| &sp * rn - &sn * rp)
                .collect();
            gcd_reduce(&mut w);
            let tight = tight_bits(&w, rows);
            new_rays.push(Ray { v: w, tight });
        }
        rays.retain(|r| !dot(row, &r.v).is_negative());
        rays.extend(new_rays);
        processed_mask.set(row_idx);
    }

    // The output contract: every ray satisfies every inequality and is
    // extreme (its tight set has rank dim - 1).
    for ray in &rays {
        for row in rows {
            if dot(row, &ray.v).is_negative() {
                return Err(Error::Internal("enumerated ray violates an input inequality".into()));
            }
        }
        let tight_rows: Vec<Vec<BigInt>> = rows
            .iter()
            .filter(|row| dot(row, &ray.v).is_zero())
            .cloned()
            .collect();
        if int_matrix(&tight_rows, dim).rank() != dim - 1 {
            return Err(Error::Internal("enumerated ray is not extreme".into()));
        }
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    VRep::new(dim, out)
}

/// Pairs of adjacent extreme rays, by the tight-set inclusion test.
fn adjacent_pairs(rays: &[Ray], processed: &Bits, dim: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for a in 0..rays.len() {
        for b in a + 1..rays.len() {
            let common = rays[a].tight.and(&rays[b].tight).and(processed);
            if common.count() + 2 < dim {
                continue;
            }
            let dominated = rays
                .iter()
                .enumerate()
                .any(|(c, rc)| c != a && c != b && common.is_subset_of(&rc.tight.and(processed)));
            if !dominated {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

#[derive(Clone, Debug)]
pub struct FacetsOutput {
    pub facets: HRep,
    /// Integer equations spanning the orthogonal complement of the rays'
    /// span, empty when the cone is full-dimensional.
    pub equations: Vec<Vec<BigInt>>,
}

impl FacetsOutput {
    /// The facet rows together with each equation expanded into its pair of
    /// opposite halfspaces.
    pub fn as_inequalities(&self) -> Vec<Vec<BigInt>> {
        let mut out = self.facets.rows().to_vec();
        for e in &self.equations {
            out.push(e.clone());
            out.push(e.iter().map(|x| -x.clone()).collect());
        }
        out
    }
}

/// Irredundant facet description of the cone generated by the rays. When the
/// rays do not span the full space, the facets of the span-restricted cone
/// are lifted back and returned together with the span's defining equations.
pub fn facets(v: &VRep) -> Result<FacetsOutput> {
    if v.rays.is_empty() {
        return Err(Error::Contract("facet computation needs at least one ray".into()));
    }
    let dim = v.dim;
    let ray_matrix = int_matrix(&v.rays, dim);
    let span_rank = ray_matrix.rank();

    if span_rank == dim {
        // Facet normals of a full-dimensional cone are the extreme rays of
        // its polar cone, whose halfspace description is the ray list.
        let polar = extreme_rays(&HRep::new(dim, v.rays.clone())?)?;
        return Ok(FacetsOutput {
            facets: HRep::new(dim, polar.rays)?,
            equations: Vec::new(),
        });
    }

    // Restrict to a basis of the span, solve there, and lift back.
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    for ray in &v.rays {
        if basis.len() == span_rank {
            break;
        }
        let mut candidate = basis.clone();
        candidate.push(ray.clone());
        if int_matrix(&candidate, dim).rank() == candidate.len() {
            basis = candidate;
        }
    }
    let basis_matrix = int_matrix(&basis, dim);
    let equations = basis_matrix
        .nullspace()
        .iter()
        .map(|e| Ok(canonical_key(&to_primitive_int(e)?)))
        .collect::<Result<Vec<_>>>()?;

    let basis_t = basis_matrix.transpose();
    let restricted: Vec<Vec<BigInt>> = v
        .rays
        .iter()
        .map(|ray| {
            let rhs: Vec<GaussianRational> =
                ray.iter().map(|x| GaussianRational::from_bigint(x.clone())).collect();
            let x = basis_t
                .solve(&rhs)?
                .ok_or_else(|| Error::Internal("ray outside its own span".into()))?;
            to_primitive_int(&x)
        })
        .collect::<Result<_>>()?;

    let sub = facets(&VRep::new(span_rank, restricted)?)?;
    let lifted: Vec<Vec<BigInt>> = sub
        .facets
        .rows()
        .iter()
        .map(|g| {
            let rhs: Vec<GaussianRational> =
                g.iter().map(|x| GaussianRational::from_bigint(x.clone())).collect();
            let a = basis_matrix
                .solve(&rhs)?
                .ok_or_else(|| Error::Internal("facet lift must be solvable".into()))?;
            to_primitive_int(&a)
        })
        .collect::<Result<_>>()?;

    Ok(FacetsOutput { facets: HRep::new(dim, lifted)?, equations })
}

/// Facets of the cone generated by `attained` that are not already present in
/// `known` (up to positive scaling): the candidate new inequalities.
pub fn facet_gap(known: &HRep, attained: &VRep) -> Result<Vec<Vec<BigInt>>> {
    if known.dim != attained.dim {
        return Err(Error::ShapeMismatch("halfspace and ray dimensions differ".into()));
    }
    for (ri, ray) in attained.rays.iter().enumerate() {
        for (qi, row) in known.rows.iter().enumerate() {
            if dot(row, ray).is_negative() {
                return Err(Error::Contract(format!(
                    "ray {ri} ({ray:?}) violates inequality {qi} ({row:?})"
                )));
            }
        }
    }
    let f = facets(attained)?;
    let known_keys: HashSet<Vec<BigInt>> = known.rows.iter().map(|r| canonical_key(r)).collect();
    let mut gap: Vec<Vec<BigInt>> = f
        .as_inequalities()
        .into_iter()
        .filter(|row| !known_keys.contains(&canonical_key(row)))
        .collect();
    gap.sort();
    gap.dedup();
    Ok(gap)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitFamily {
    /// Lexicographically largest member of the full permutation orbit.
    pub representative: Vec<BigInt>,
    /// The input rays belonging to this family, sorted.
    pub members: Vec<Vec<BigInt>>,
}

impl OrbitFamily {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Partitions rays into orbits of the party-permutation action on
/// coordinates. The coordinate count must be 2^(n-1) - 1.
pub fn orbit_families(v: &VRep, n: usize) -> Result<Vec<OrbitFamily>> {
    let index = canonical_bipartitions(n)?;
    if v.dim != index.len() {
        return Err(Error::ShapeMismatch(format!(
            "dimension {} does not match the {} bipartitions of {} parties",
            v.dim,
            index.len(),
            n
        )));
    }
    let position_maps: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|p| index.permuted_positions(p))
        .collect::<Result<_>>()?;

    let mut groups: BTreeMap<Vec<BigInt>, Vec<Vec<BigInt>>> = BTreeMap::new();
    for ray in &v.rays {
        let rep = position_maps
            .iter()
            .map(|map| {
                let mut out = vec![BigInt::zero(); v.dim];
                for (i, &t) in map.iter().enumerate() {
                    out[t] = ray[i].clone();
                }
                out
            })
            .max()
            .expect("at least the identity permutation");
        groups.entry(rep).or_default().push(ray.clone());
    }
    Ok(groups
        .into_iter()
        .map(|(representative, mut members)| {
            members.sort();
            OrbitFamily { representative, members }
        })
        .collect())
}

/// Full permutation orbit of one coefficient vector.
pub fn orbit_of(vector: &[BigInt], n: usize) -> Result<Vec<Vec<BigInt>>> {
    let index = canonical_bipartitions(n)?;
    if vector.len() != index.len() {
        return Err(Error::ShapeMismatch("vector length".into()));
    }
    let mut orbit: Vec<Vec<BigInt>> = Vec::new();
    for p in permutations(n) {
        let map = index.permuted_positions(&p)?;
        let mut out = vec![BigInt::zero(); vector.len()];
        for (i, &t) in map.iter().enumerate() {
            out[t] = vector[i].clone();
        }
        if !orbit.contains(&out) {
            orbit.push(out);
        }
    }
    orbit.sort();
    Ok(orbit)
}

/// Cone file: header `H dim m` or `V dim m`, then m integer rows.
#[derive(Clone, Debug)]
pub enum ConeFile {
    H(HRep),
    V(VRep),
}

pub fn parse_cone_file(text: &str) -> Result<ConeFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines
        .next()
        .ok_or(Error::Parse { line: 0, msg: "empty cone file".into() })?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 3 {
        return Err(Error::Parse { line: hline, msg: "expected header `H|V dim count`".into() });
    }
    let tag = tokens[0];
    let dim: usize = tokens[1]
        .parse()
        .map_err(|_| Error::Parse { line: hline, msg: "bad dimension".into() })?;
    let count: usize = tokens[2]
        .parse()
        .map_err(|_| Error::Parse { line: hline, msg: "bad row count".into() })?;
    let mut rows = Vec::with_capacity(count);
    for _ in 0..count {
        let (line_no, line) = lines
            .next()
            .ok_or(Error::Parse { line: hline, msg: "fewer rows than the header declares".into() })?;
        let row: Vec<BigInt> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<BigInt>().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("bad integer {t:?}"),
                })
            })
            .collect::<Result<_>>()?;
        if row.len() != dim {
            return Err(Error::Parse { line: line_no, msg: format!("expected {dim} entries") });
        }
        rows.push(row);
    }
    match tag {
        "H" => Ok(ConeFile::H(HRep::new(dim, rows)?)),
        "V" => Ok(ConeFile::V(VRep::new(dim, rows)?)),
        _ => Err(Error::Parse { line: hline, msg: format!("unknown header tag {tag:?}") }),
    }
}

pub fn format_hrep(h: &HRep) -> String {
    format_rows("H", h.dim, h.rows())
}

pub fn format_vrep(v: &VRep) -> String {
    format_rows("V", v.dim, v.rays())
}

fn format_rows(tag: &str, dim: usize, rows: &[Vec<BigInt>]) -> String {
    let mut out = format!("{tag} {dim} {}\n", rows.len());
    for row in rows {
        out.push_str(&row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
        out.push('\n');
    }
    out
}
