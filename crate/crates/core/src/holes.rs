//! Fundamental holes, hole ideals and the cell representation of the hole set.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::diophantine::{hilbert_basis_cone_lattice, minimal_inhomogeneous_solutions, semigroup_contains, HilbertBasis};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linalg::{lattice_basis, IntMatrix, IntVector, LatticeBasis};
use crate::monomial::{standard_pairs, Monomial, MonomialIdeal, StandardPair};
use crate::polyhedral::{cone_facets, in_half_open_zonotope, ConeFacets};

/// The semigroup `Q` generated by the columns of `A`, with its saturation data.
///
/// Derived objects (fundamental holes, hole ideals) are computed once and cached.
#[derive(Debug)]
pub struct SemigroupProblem {
    matrix: IntMatrix,
    lattice: LatticeBasis,
    facets: ConeFacets,
    limits: Limits,
    fundamental: OnceLock<Result<FundamentalHoleSet>>,
    ideals: OnceLock<Result<Vec<MonomialIdeal>>>,
}

impl SemigroupProblem {
    /// Fails with [`Error::NotPointed`] if `cone(A)` contains a line.
    pub fn new(matrix: IntMatrix, limits: Limits) -> Result<Self> {
        for i in 0..matrix.nrows() {
            if matrix.is_zero_row(i) {
                log::warn!("row {} of the matrix is zero; it constrains nothing", i + 1);
            }
        }
        let facets = cone_facets(&matrix, &limits)?;
        if !facets.pointed {
            return Err(Error::NotPointed);
        }
        let lattice = lattice_basis(&matrix);
        Ok(SemigroupProblem {
            matrix,
            lattice,
            facets,
            limits,
            fundamental: OnceLock::new(),
            ideals: OnceLock::new(),
        })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn lattice(&self) -> &LatticeBasis {
        &self.lattice
    }

    pub fn facets(&self) -> &ConeFacets {
        &self.facets
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn check_dim(&self, z: &IntVector) -> Result<()> {
        if z.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: z.dim(),
            });
        }
        Ok(())
    }

    /// `z in Q_sat = cone(A) ∩ lattice(A)`.
    pub fn in_saturation(&self, z: &IntVector) -> Result<bool> {
        self.check_dim(z)?;
        Ok(self.facets.contains(z) && self.lattice.coordinates(z).is_some())
    }

    /// A witness `lambda >= 0` with `A lambda = z`, if `z in Q`.
    pub fn member(&self, z: &IntVector) -> Result<Option<IntVector>> {
        semigroup_contains(&self.matrix, z, &self.limits)
    }

    pub fn contains(&self, z: &IntVector) -> Result<bool> {
        Ok(self.member(z)?.is_some())
    }

    /// `z in Q_sat \ Q`.
    pub fn is_hole(&self, z: &IntVector) -> Result<bool> {
        Ok(self.in_saturation(z)? && !self.contains(z)?)
    }

    /// For a hole `z`: no hole `h` with `z - h in Q \ {0}`.
    ///
    /// Such an `h` exists iff `z - a_j in Q_sat` for some nonzero column `a_j`,
    /// and `z - a_j` always lies in the lattice.
    fn is_fundamental_hole(&self, z: &IntVector) -> bool {
        (0..self.matrix.ncols())
            .filter(|&j| !self.matrix.is_zero_column(j))
            .all(|j| !self.facets.contains(&z.sub(&self.matrix.column(j))))
    }

    /// The set `F` of fundamental holes.
    pub fn fundamental_holes(&self) -> Result<&FundamentalHoleSet> {
        self.fundamental
            .get_or_init(|| self.compute_fundamental())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn compute_fundamental(&self) -> Result<FundamentalHoleSet> {
        let hilbert_basis = hilbert_basis_cone_lattice(&self.matrix, &self.limits)?;
        let mut basis_holes = Vec::new();
        for b in hilbert_basis.elements() {
            if !self.contains(b)? {
                basis_holes.push(b.clone());
            }
        }
        // Every partial sum of a fundamental hole's decomposition into basis
        // holes is again a fundamental hole, so only fundamental holes are extended.
        let mut holes: BTreeSet<IntVector> = basis_holes.iter().cloned().collect();
        let mut visited = holes.clone();
        let mut frontier: Vec<IntVector> = basis_holes.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for z in &frontier {
                for b in &basis_holes {
                    let c = z.add(b);
                    if !visited.insert(c.clone()) {
                        continue;
                    }
                    if visited.len() as u64 > self.limits.max_nodes {
                        return Err(Error::exhausted("max_nodes", self.limits.max_nodes));
                    }
                    if !in_half_open_zonotope(&self.matrix, &c)? || !self.is_fundamental_hole(&c) {
                        continue;
                    }
                    if self.contains(&c)? {
                        continue;
                    }
                    holes.insert(c.clone());
                    next.push(c);
                }
            }
            next.sort();
            frontier = next;
        }
        Ok(FundamentalHoleSet {
            holes: holes.into_iter().collect(),
            hilbert_basis,
            basis_holes,
        })
    }

    /// `I_{A,f}`, generated by the `lambda` parts of the minimal solutions of `f + A lambda = A mu`.
    pub fn hole_ideal(&self, f: &IntVector) -> Result<MonomialIdeal> {
        self.check_dim(f)?;
        let solutions = minimal_inhomogeneous_solutions(&self.matrix, f, &self.limits)?;
        let gens = solutions
            .solutions
            .iter()
            .map(|(lambda, _)| Monomial::from_int_vector(lambda))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(self.matrix.ncols(), gens)
    }

    /// The hole ideals of all fundamental holes, in the order of [`FundamentalHoleSet::holes`].
    pub fn hole_ideals(&self) -> Result<&[MonomialIdeal]> {
        self.ideals
            .get_or_init(|| {
                let holes = self.fundamental_holes()?.holes.clone();
                self.par_map(&holes, |f| self.hole_ideal(f))
            })
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    /// Maps `op` over `items`, on `limits.jobs` threads when that exceeds one. Order is preserved.
    pub(crate) fn par_map<T, U, F>(&self, items: &[T], op: F) -> Result<Vec<U>>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> Result<U> + Sync + Send,
    {
        run_jobs(self.limits.jobs, items, op)
    }

    /// Cells whose union is the hole set `H`.
    pub fn holes_representation(&self) -> Result<HoleRepresentation> {
        let fundamental = self.fundamental_holes()?;
        let ideals = self.hole_ideals()?;
        let mut cells = Vec::new();
        for (f, ideal) in fundamental.holes.iter().zip(ideals) {
            for pair in standard_pairs(ideal, &self.limits)? {
                let root = pair.root.to_int_vector();
                let shift = f.add(&self.matrix.mul_vec(&root));
                let generators: BTreeSet<IntVector> = pair
                    .free_vars
                    .iter()
                    .map(|&j| self.matrix.column(j))
                    .filter(|c| !c.is_zero())
                    .collect();
                cells.push(HoleCell {
                    shift,
                    generators: generators.into_iter().collect(),
                    fundamental_hole: f.clone(),
                    pair,
                });
            }
        }
        Ok(HoleRepresentation { cells })
    }
}

pub(crate) fn run_jobs<T, U, F>(jobs: usize, items: &[T], op: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(op).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start {jobs} worker threads: {e}")))?;
    pool.install(|| items.par_iter().map(op).collect())
}

/// The fundamental holes together with the data used to find them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalHoleSet {
    /// Sorted.
    pub holes: Vec<IntVector>,
    pub hilbert_basis: HilbertBasis,
    /// Hilbert basis elements that are holes; empty iff `Q` is normal.
    pub basis_holes: Vec<IntVector>,
}

impl FundamentalHoleSet {
    pub fn is_normal(&self) -> bool {
        self.holes.is_empty()
    }
}

/// `shift + monoid(generators)`, every point of which is a hole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleCell {
    pub shift: IntVector,
    /// Distinct nonzero columns of `A`, sorted.
    pub generators: Vec<IntVector>,
    pub fundamental_hole: IntVector,
    pub pair: StandardPair,
}

impl HoleCell {
    pub fn is_singleton(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, z: &IntVector, limits: &Limits) -> Result<bool> {
        let offset = z.sub(&self.shift);
        if self.generators.is_empty() {
            return Ok(offset.is_zero());
        }
        let gens = IntMatrix::from_columns(&self.generators)?;
        Ok(semigroup_contains(&gens, &offset, limits)?.is_some())
    }
}

/// `H` as a finite union of cells; cells from different fundamental holes may overlap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleRepresentation {
    pub cells: Vec<HoleCell>,
}

impl HoleRepresentation {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `H` is finite iff every cell is a single point.
    pub fn is_finite(&self) -> bool {
        self.cells.iter().all(HoleCell::is_singleton)
    }

    pub fn contains(&self, z: &IntVector, limits: &Limits) -> Result<bool> {
        for cell in &self.cells {
            if cell.contains(z, limits)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// All holes, if `H` is finite; sorted and deduplicated.
    pub fn finite_holes(&self) -> Option<Vec<IntVector>> {
        if !self.is_finite() {
            return None;
        }
        let set: BTreeSet<IntVector> = self.cells.iter().map(|c| c.shift.clone()).collect();
        Some(set.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64s(x)
    }

    fn problem(rows: &[&[i64]]) -> SemigroupProblem {
        SemigroupProblem::new(IntMatrix::from_i64_rows(rows), Limits::default()).unwrap()
    }

    fn quartic() -> SemigroupProblem {
        problem(&[&[1, 1, 1, 1], &[0, 2, 3, 4]])
    }

    /// Gaps of the numerical semigroup generated by `gens`.
    fn gaps(gens: &[i64]) -> Vec<i64> {
        let limit = gens.iter().product::<i64>();
        let mut reach = vec![false; limit as usize + 1];
        reach[0] = true;
        for x in 1..=limit as usize {
            reach[x] = gens.iter().any(|&g| x >= g as usize && reach[x - g as usize]);
        }
        (0..=limit).filter(|&x| !reach[x as usize]).collect()
    }

    #[test]
    fn hole_membership() {
        let p = quartic();
        assert!(p.is_hole(&v(&[1, 1])).unwrap());
        assert!(p.is_hole(&v(&[1000, 1])).unwrap());
        assert!(!p.is_hole(&v(&[0, 0])).unwrap());
        assert!(!p.is_hole(&v(&[2, 2])).unwrap());
        assert!(!p.is_hole(&v(&[1, 5])).unwrap());
        assert!(p.is_hole(&v(&[1])).is_err());
    }

    #[test]
    fn fundamental_holes_of_example() {
        let p = quartic();
        let f = p.fundamental_holes().unwrap();
        assert_eq!(f.holes, vec![v(&[1, 1])]);
        assert_eq!(f.basis_holes, vec![v(&[1, 1])]);
        assert_eq!(f.hilbert_basis.len(), 5);
        for h in &f.holes {
            assert!(in_half_open_zonotope(p.matrix(), h).unwrap());
        }
    }

    #[test]
    fn identity_is_normal() {
        let p = problem(&[&[1, 0], &[0, 1]]);
        let f = p.fundamental_holes().unwrap();
        assert!(f.is_normal());
        assert!(f.basis_holes.is_empty());
        let rep = p.holes_representation().unwrap();
        assert!(rep.is_empty());
        assert!(rep.is_finite());
    }

    #[test]
    fn numerical_semigroup_three_five() {
        let p = problem(&[&[3, 5]]);
        assert_eq!(p.fundamental_holes().unwrap().holes, vec![v(&[1]), v(&[2])]);
        let ideal = p.hole_ideal(&v(&[2])).unwrap();
        assert_eq!(ideal.generators(), &[Monomial::new(vec![0, 2]), Monomial::new(vec![1, 0])]);
        let ideal = p.hole_ideal(&v(&[1])).unwrap();
        assert_eq!(ideal.generators(), &[Monomial::new(vec![0, 1]), Monomial::new(vec![3, 0])]);

        let rep = p.holes_representation().unwrap();
        assert!(rep.is_finite());
        let holes: Vec<i64> = rep.finite_holes().unwrap().iter().map(|h| i64::try_from(&h[0]).unwrap()).collect();
        assert_eq!(holes, gaps(&[3, 5]));
        // 7 is reached from both fundamental holes
        assert_eq!(rep.cells.iter().filter(|c| c.shift == v(&[7])).count(), 2);
    }

    #[test]
    fn example_representation() {
        let p = quartic();
        let ideal = p.hole_ideal(&v(&[1, 1])).unwrap();
        assert_eq!(ideal.to_string(), "<x4, x3, x2>");
        let rep = p.holes_representation().unwrap();
        assert_eq!(rep.cells.len(), 1);
        assert_eq!(rep.cells[0].shift, v(&[1, 1]));
        assert_eq!(rep.cells[0].generators, vec![v(&[1, 0])]);
        assert!(!rep.is_finite());
        assert!(rep.finite_holes().is_none());
        assert!(rep.contains(&v(&[40, 1]), p.limits()).unwrap());
        assert!(!rep.contains(&v(&[40, 2]), p.limits()).unwrap());
    }

    #[test]
    fn representation_matches_box_enumeration() {
        let cases: &[&[&[i64]]] = &[
            &[&[1, 1, 1, 1], &[0, 2, 3, 4]],
            &[&[2, 0, 1], &[0, 2, 1]],
            &[&[1, 1, 1], &[0, 3, 5]],
            &[&[4, 6, 9]],
        ];
        for rows in cases {
            let p = problem(rows);
            let rep = p.holes_representation().unwrap();
            let f = p.fundamental_holes().unwrap();
            let d = p.dim();
            let mut z = vec![0i64; d];
            loop {
                let point = v(&z);
                let hole = p.is_hole(&point).unwrap();
                assert_eq!(hole, rep.contains(&point, p.limits()).unwrap(), "{rows:?} at {point}");
                if hole {
                    for g in &f.holes {
                        if g != &point {
                            assert!(!p.contains(&g.sub(&point)).unwrap(), "{g} - {point} lies in Q");
                        }
                    }
                }
                let Some(i) = (0..d).find(|&i| z[i] < 12) else { break };
                z[i] += 1;
                z[..i].iter_mut().for_each(|c| *c = 0);
            }
            for cell in &rep.cells {
                let mut point = cell.shift.clone();
                for g in cell.generators.iter().cycle().take(5) {
                    assert!(p.is_hole(&point).unwrap());
                    point = point.add(g);
                }
            }
        }
    }

    #[test]
    fn parallel_ideals_match_sequential() {
        let rows: &[&[i64]] = &[&[5, 7, 9]];
        let seq = problem(rows);
        let par = SemigroupProblem::new(IntMatrix::from_i64_rows(rows), Limits { jobs: 4, ..Limits::default() }).unwrap();
        assert_eq!(seq.hole_ideals().unwrap(), par.hole_ideals().unwrap());
        assert_eq!(seq.holes_representation().unwrap(), par.holes_representation().unwrap());
    }

    #[test]
    fn non_pointed_rejected() {
        let err = SemigroupProblem::new(IntMatrix::from_i64_rows(&[&[1, -1]]), Limits::default()).unwrap_err();
        assert_eq!(err, Error::NotPointed);
    }
}
