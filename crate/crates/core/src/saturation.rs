//! The a-priori norm bound for finite hole sets, certificates that a hole set
//! is infinite, and the Q-minimal saturation points.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::holes::{HoleRepresentation, SemigroupProblem};
use crate::limits::Limits;
use crate::linalg::{max_abs_subdeterminant, row_sum_bound, IntMatrix, IntVector};
use crate::monomial::{Monomial, MonomialIdeal};

/// Components of the bound `(d+1) * M_F(A)^2 * D(A)` on the norm of every hole of a finite hole set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub d_plus_1: usize,
    /// Largest absolute row sum.
    pub m_f: BigInt,
    /// Largest absolute `d x d` minor.
    pub d_a: BigInt,
    pub bound: BigInt,
}

/// The hole bound for `a`. Zero rows are ignored; the remaining rows must be independent.
pub fn hole_bound(a: &IntMatrix, limits: &Limits) -> Result<BoundReport> {
    let rows: Vec<Vec<BigInt>> = (0..a.nrows())
        .filter(|&i| !a.is_zero_row(i))
        .map(|i| a.row(i).to_vec())
        .collect();
    if rows.len() < a.nrows() {
        log::warn!("ignoring {} zero row(s) in the hole bound", a.nrows() - rows.len());
    }
    if rows.is_empty() {
        return Err(Error::RankDeficient { rank: 0, rows: a.nrows() });
    }
    let reduced = IntMatrix::from_rows(&rows)?;
    let d_plus_1 = reduced.nrows() + 1;
    let m_f = row_sum_bound(&reduced);
    let d_a = max_abs_subdeterminant(&reduced, limits)?;
    let bound = BigInt::from(d_plus_1) * &m_f * &m_f * &d_a;
    Ok(BoundReport { d_plus_1, m_f, d_a, bound })
}

/// A hole whose sup-norm exceeds `bound`, if some cell of `representation` is infinite.
///
/// The candidate is `shift + k * g` for the first infinite cell and its first
/// generator `g`, with `k` large enough to pass the bound. It is re-checked
/// with [`SemigroupProblem::is_hole`] before being returned.
pub fn certify_infinite(
    problem: &SemigroupProblem,
    representation: &HoleRepresentation,
    bound: &BoundReport,
) -> Result<Option<IntVector>> {
    for cell in &representation.cells {
        let Some(g) = cell.generators.first() else {
            continue;
        };
        // ||shift + k g|| >= k ||g|| - ||shift|| >= k - ||shift||
        let k = &bound.bound + cell.shift.norm_inf() + BigInt::one();
        let z = cell.shift.add(&g.scaled(&k));
        debug_assert!(z.norm_inf() > bound.bound);
        if problem.is_hole(&z)? {
            return Ok(Some(z));
        }
        return Err(Error::InvalidInput(format!(
            "cell point {z} is not a hole; the cell representation is inconsistent"
        )));
    }
    Ok(None)
}

/// The ideal `I_A` and the Q-minimal saturation points it determines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationResult {
    /// Intersection of the hole ideals; the unit ideal when there are no holes.
    pub ideal: MonomialIdeal,
    /// Sorted and deduplicated.
    pub points: Vec<IntVector>,
    /// Each minimal generator `x^lambda` of the ideal with its point `A lambda`.
    pub generator_map: Vec<(Monomial, IntVector)>,
    /// Points dropped by the Q-minimality filter; expected to be empty.
    pub filtered_out: Vec<IntVector>,
}

/// Q-minimal elements `s` of `Q` with `s + Q_sat ⊆ Q`.
pub fn saturation_points(problem: &SemigroupProblem) -> Result<SaturationResult> {
    let a = problem.matrix();
    let mut ideal = MonomialIdeal::unit(a.ncols());
    for hole_ideal in problem.hole_ideals()? {
        ideal = ideal.intersect(hole_ideal)?;
    }
    let generator_map: Vec<(Monomial, IntVector)> = ideal
        .generators()
        .iter()
        .map(|g| (g.clone(), a.mul_vec(&g.to_int_vector())))
        .collect();
    let candidates: BTreeSet<IntVector> = generator_map.iter().map(|(_, s)| s.clone()).collect();
    let mut points = Vec::new();
    let mut filtered_out = Vec::new();
    for s in &candidates {
        let mut dominated = false;
        for t in &candidates {
            if t != s && problem.contains(&s.sub(t))? {
                dominated = true;
                break;
            }
        }
        if dominated {
            filtered_out.push(s.clone());
        } else {
            points.push(s.clone());
        }
    }
    if !filtered_out.is_empty() {
        log::warn!("{} saturation candidate(s) were not Q-minimal", filtered_out.len());
    }
    Ok(SaturationResult {
        ideal,
        points,
        generator_map,
        filtered_out,
    })
}

/// Checks `s in Q` and `s + f in Q` for every fundamental hole `f`, then
/// samples `s + q` for `q` a sum of at most `box_radius` Hilbert basis elements of `Q_sat`.
pub fn verify_saturation(problem: &SemigroupProblem, s: &IntVector, box_radius: usize) -> Result<bool> {
    if !problem.contains(s)? {
        return Ok(false);
    }
    let fundamental = problem.fundamental_holes()?;
    for f in &fundamental.holes {
        if !problem.contains(&s.add(f))? {
            return Ok(false);
        }
    }
    let basis = fundamental.hilbert_basis.elements();
    let mut layer: BTreeSet<IntVector> = BTreeSet::from([s.clone()]);
    for _ in 0..box_radius {
        let mut next = BTreeSet::new();
        for z in &layer {
            for b in basis {
                next.insert(z.add(b));
            }
        }
        for z in &next {
            if !problem.contains(z)? {
                return Ok(false);
            }
        }
        layer = next;
    }
    Ok(true)
}

/// Largest sup-norm among `holes`, or `None` for an empty list.
pub fn max_norm(holes: &[IntVector]) -> Option<BigInt> {
    holes.iter().map(IntVector::norm_inf).max()
}
