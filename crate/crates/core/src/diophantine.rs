//! Hilbert bases and minimal nonnegative solutions of linear Diophantine systems.
//!
//! The engine is a completion procedure over `{x in Z^n_+ : M x = 0}`: starting
//! from the unit vectors it grows candidates one unit at a time, processing them
//! by total degree and then lexicographically. A candidate `x` is extended by
//! `e_j` only when the defect `M x` and the column `M e_j` point in opposite
//! directions (`<M x, M e_j> < 0`), and it is discarded as soon as it dominates
//! a solution already found. Candidates with zero defect are exactly the
//! minimal solutions. Coordinates never decrease along a completion path, so
//! per-coordinate caps (used for homogenised systems) prune soundly.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linalg::{
    binomial, determinant, hermite_normal_form, lattice_basis, next_combination, solve_rational_affine, IntMatrix, IntVector,
    RatVector,
};
use crate::polyhedral::simplex::{Outcome, StandardLp};
use crate::polyhedral::{cone_facets, int_row, is_pointed};

/// Minimal generating set of a monoid of lattice points, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    elements: Vec<IntVector>,
}

impl HilbertBasis {
    pub fn elements(&self) -> &[IntVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn into_elements(self) -> Vec<IntVector> {
        self.elements
    }
}

/// The componentwise-minimal solutions `(lambda, mu)` of `f + A lambda = A mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalSolutionSet {
    pub rhs: IntVector,
    pub solutions: Vec<(IntVector, IntVector)>,
}

impl MinimalSolutionSet {
    /// Each solution as the concatenation `(lambda, mu)`.
    pub fn stacked(&self) -> Vec<IntVector> {
        self.solutions
            .iter()
            .map(|(l, m)| l.iter().chain(m.iter()).cloned().collect())
            .collect()
    }
}

/// The homogenised system `f u + A lambda - A mu = 0`.
///
/// Setting `u = 1` recovers `f + A lambda = A mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogenizedSystem {
    pub matrix: IntMatrix,
    pub hom_var_index: usize,
    n: usize,
}

impl HomogenizedSystem {
    pub fn new(a: &IntMatrix, f: &IntVector) -> Result<Self> {
        if f.dim() != a.nrows() {
            return Err(Error::DimensionMismatch {
                expected: a.nrows(),
                found: f.dim(),
            });
        }
        let n = a.ncols();
        let mut m = IntMatrix::zeros(a.nrows(), 1 + 2 * n);
        for i in 0..a.nrows() {
            m.set(i, 0, f[i].clone());
            for j in 0..n {
                m.set(i, 1 + j, a.get(i, j).clone());
                m.set(i, 1 + n + j, -a.get(i, j).clone());
            }
        }
        Ok(HomogenizedSystem {
            matrix: m,
            hom_var_index: 0,
            n,
        })
    }

    /// Splits a kernel vector with `u = 1` into `(lambda, mu)`.
    pub fn dehomogenize(&self, x: &IntVector) -> Option<(IntVector, IntVector)> {
        if !x[self.hom_var_index].is_one() {
            return None;
        }
        let lambda = x[1..=self.n].iter().cloned().collect();
        let mu = x[1 + self.n..].iter().cloned().collect();
        Some((lambda, mu))
    }
}

struct Completion<'a> {
    columns: Vec<Vec<BigInt>>,
    caps: Vec<Option<u32>>,
    limits: &'a Limits,
}

impl Completion<'_> {
    fn dominated(basis: &[Vec<u32>], y: &[u32]) -> bool {
        basis.iter().any(|b| b.iter().zip(y).all(|(bi, yi)| bi <= yi))
    }

    fn run(&self) -> Result<Vec<Vec<u32>>> {
        let n = self.columns.len();
        let d = self.columns.first().map_or(0, Vec::len);
        let mut basis: Vec<Vec<u32>> = Vec::new();
        let mut level: BTreeMap<Vec<u32>, Vec<BigInt>> = BTreeMap::new();
        for j in 0..n {
            if self.caps[j] == Some(0) {
                continue;
            }
            let mut x = vec![0u32; n];
            x[j] = 1;
            level.insert(x, self.columns[j].clone());
        }
        let mut nodes: u64 = level.len() as u64;
        while !level.is_empty() {
            let mut open = Vec::with_capacity(level.len());
            for (x, defect) in level {
                if defect.iter().all(Zero::is_zero) {
                    basis.push(x);
                    if basis.len() > self.limits.max_basis {
                        return Err(Error::exhausted("max_basis", self.limits.max_basis));
                    }
                } else {
                    open.push((x, defect));
                }
            }
            let mut next: BTreeMap<Vec<u32>, Vec<BigInt>> = BTreeMap::new();
            for (x, defect) in &open {
                for j in 0..n {
                    if self.caps[j].is_some_and(|c| x[j] >= c) {
                        continue;
                    }
                    let col = &self.columns[j];
                    let pairing: BigInt = defect.iter().zip(col).map(|(a, b)| a * b).sum();
                    if !pairing.is_negative() {
                        continue;
                    }
                    let mut y = x.clone();
                    y[j] += 1;
                    if next.contains_key(&y) || Self::dominated(&basis, &y) {
                        continue;
                    }
                    let nd: Vec<BigInt> = (0..d).map(|i| &defect[i] + &col[i]).collect();
                    next.insert(y, nd);
                    nodes += 1;
                    if nodes > self.limits.max_nodes {
                        return Err(Error::exhausted("max_nodes", self.limits.max_nodes));
                    }
                }
            }
            level = next;
        }
        basis.sort();
        Ok(basis)
    }
}

fn to_int_vector(x: &[u32]) -> IntVector {
    x.iter().map(|&v| BigInt::from(v)).collect()
}

fn completion(m: &IntMatrix, caps: Vec<Option<u32>>, limits: &Limits) -> Result<Vec<IntVector>> {
    let c = Completion {
        columns: m.columns().into_iter().map(IntVector::into_inner).collect(),
        caps,
        limits,
    };
    Ok(c.run()?.iter().map(|x| to_int_vector(x)).collect())
}

/// Minimal Hilbert basis of `{x in Z^n_+ : A x = 0}`.
pub fn hilbert_basis_kernel(a: &IntMatrix, limits: &Limits) -> Result<HilbertBasis> {
    let elements = completion(a, vec![None; a.ncols()], limits)?;
    Ok(HilbertBasis { elements })
}

/// Minimal Hilbert basis of `cone(A) ∩ lattice(A)` in ambient coordinates.
///
/// The monoid is generated by the nonzero columns together with the lattice
/// points of every half-open parallelepiped `{A_s mu : 0 <= mu < 1}` spanned by
/// `rank` linearly independent columns `A_s`. In lattice coordinates those
/// points are the fractional parts of the coset representatives of `M Z^r`,
/// read off the triangular Hermite form of `M`. The irreducible generators
/// form the basis.
pub fn hilbert_basis_cone_lattice(a: &IntMatrix, limits: &Limits) -> Result<HilbertBasis> {
    if !is_pointed(a) {
        return Err(Error::NotPointed);
    }
    let lattice = lattice_basis(a);
    let r = lattice.rank();
    if r == 0 {
        return Ok(HilbertBasis { elements: Vec::new() });
    }
    let cone = cone_facets(a, limits)?;
    let gens: Vec<IntVector> = a.columns().into_iter().filter(|c| !c.is_zero()).collect::<BTreeSet<_>>().into_iter().collect();
    let coords: Vec<IntVector> = gens
        .iter()
        .map(|g| lattice.coordinates(g).expect("columns lie in their own lattice"))
        .collect();
    if binomial(gens.len(), r) > BigInt::from(limits.max_subsets) {
        return Err(Error::exhausted("max_subsets", limits.max_subsets));
    }
    let mut candidates: BTreeSet<IntVector> = gens.iter().cloned().collect();
    let mut visited: u64 = 0;
    let mut combo: Vec<usize> = (0..r).collect();
    loop {
        let m = IntMatrix::from_columns(&combo.iter().map(|&c| coords[c].clone()).collect::<Vec<_>>())?;
        if !determinant(&m).is_zero() {
            for y in parallelepiped_points(&m, limits, &mut visited)? {
                if !y.is_zero() {
                    candidates.insert(lattice.point(&y));
                }
            }
        }
        if !next_combination(&mut combo, gens.len()) {
            break;
        }
    }
    let candidates: Vec<IntVector> = candidates.into_iter().collect();
    let elements = candidates
        .iter()
        .filter(|z| !candidates.iter().any(|c| c != *z && cone.contains(&z.sub(c))))
        .cloned()
        .collect();
    Ok(HilbertBasis { elements })
}

/// Integer points of `{M mu : 0 <= mu < 1}` for a nonsingular square `M`.
fn parallelepiped_points(m: &IntMatrix, limits: &Limits, visited: &mut u64) -> Result<Vec<IntVector>> {
    let r = m.nrows();
    let (h, _) = hermite_normal_form(m);
    let diag: Vec<BigInt> = (0..r).map(|i| h[(i, i)].clone()).collect();
    let inverse: Vec<RatVector> = (0..r)
        .map(|i| {
            let (col, _) = solve_rational_affine(m, &IntVector::unit(r, i))
                .expect("square system")
                .expect("nonsingular matrix");
            col
        })
        .collect();
    // representatives 0 <= y_i < h_ii of Z^r / M Z^r
    let mut out = Vec::new();
    let mut y = vec![BigInt::zero(); r];
    loop {
        *visited += 1;
        if *visited > limits.max_nodes {
            return Err(Error::exhausted("max_nodes", limits.max_nodes));
        }
        let mut frac = vec![BigRational::zero(); r];
        for (yi, col) in y.iter().zip(&inverse) {
            if yi.is_zero() {
                continue;
            }
            let yi = BigRational::from_integer(yi.clone());
            for (f, c) in frac.iter_mut().zip(col.iter()) {
                *f += &yi * c;
            }
        }
        for f in &mut frac {
            *f = &*f - f.floor();
        }
        let point = m.mul_rat_vec(&frac).to_integer().expect("fractional part of a lattice point is a lattice point");
        out.push(point);
        let Some(i) = (0..r).find(|&i| &y[i] + 1 < diag[i]) else {
            break;
        };
        y[i] += 1;
        for v in y.iter_mut().take(i) {
            *v = BigInt::zero();
        }
    }
    Ok(out)
}

/// All componentwise-minimal `(lambda, mu) in Z^2n_+` with `f + A lambda = A mu`.
///
/// Computed as the kernel elements with `u = 1` of the homogenised system.
pub fn minimal_inhomogeneous_solutions(a: &IntMatrix, f: &IntVector, limits: &Limits) -> Result<MinimalSolutionSet> {
    let hom = HomogenizedSystem::new(a, f)?;
    let mut caps = vec![None; hom.matrix.ncols()];
    caps[hom.hom_var_index] = Some(1);
    let kernel = completion(&hom.matrix, caps, limits)?;
    let mut solutions: Vec<(IntVector, IntVector)> = kernel.iter().filter_map(|x| hom.dehomogenize(x)).collect();
    solutions.sort();
    Ok(MinimalSolutionSet {
        rhs: f.clone(),
        solutions,
    })
}

struct BranchNode {
    lower: Vec<BigInt>,
    upper: Vec<Option<BigInt>>,
}

/// Solves the relaxation `A x = b, lower <= x <= upper`.
fn bounded_relaxation(a: &IntMatrix, b: &IntVector, node: &BranchNode) -> Option<Vec<BigRational>> {
    let n = a.ncols();
    let shifted = b.sub(&a.mul_vec(&node.lower));
    let mut lp = StandardLp::new(n);
    for i in 0..a.nrows() {
        lp.add_eq(int_row(a.row(i)), BigRational::from_integer(shifted[i].clone()));
    }
    for j in 0..n {
        if let Some(u) = &node.upper[j] {
            let mut row = vec![BigRational::zero(); lp.num_vars];
            row[j] = BigRational::one();
            lp.add_le(row, BigRational::from_integer(u - &node.lower[j]));
        }
    }
    match lp.solve() {
        Outcome::Optimal { x, .. } => Some(
            x[..n]
                .iter()
                .zip(&node.lower)
                .map(|(v, l)| v + BigRational::from_integer(l.clone()))
                .collect(),
        ),
        _ => None,
    }
}

/// Largest value of each coordinate over `{x >= 0 : A x = b}` (None when unbounded).
fn coordinate_maxima(a: &IntMatrix, b: &IntVector) -> Vec<Option<BigInt>> {
    (0..a.ncols())
        .map(|j| {
            let mut lp = StandardLp::new(a.ncols());
            for i in 0..a.nrows() {
                lp.add_eq(int_row(a.row(i)), BigRational::from_integer(b[i].clone()));
            }
            lp.cost[j] = -BigRational::one();
            match lp.solve() {
                Outcome::Optimal { value, .. } => Some((-value).floor().to_integer()),
                _ => None,
            }
        })
        .collect()
}

/// Decides `b in Q` for the semigroup generated by the columns of `a`,
/// returning a witness `lambda >= 0` with `A lambda = b`.
///
/// Branch and bound over the exact LP relaxation, with per-coordinate upper
/// bounds taken from the LP maxima of each variable.
pub fn semigroup_contains(a: &IntMatrix, b: &IntVector, limits: &Limits) -> Result<Option<IntVector>> {
    if b.dim() != a.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.dim(),
        });
    }
    let n = a.ncols();
    if b.is_zero() {
        return Ok(Some(IntVector::zeros(n)));
    }
    if lattice_basis(a).coordinates(b).is_none() {
        return Ok(None);
    }
    let root = BranchNode {
        lower: vec![BigInt::zero(); n],
        upper: vec![None; n],
    };
    if bounded_relaxation(a, b, &root).is_none() {
        return Ok(None);
    }
    let root = BranchNode {
        lower: root.lower,
        upper: coordinate_maxima(a, b),
    };
    let mut stack = vec![root];
    let mut nodes: u64 = 0;
    while let Some(node) = stack.pop() {
        nodes += 1;
        if nodes > limits.max_nodes {
            return Err(Error::exhausted("max_nodes", limits.max_nodes));
        }
        if node.upper.iter().zip(&node.lower).any(|(u, l)| u.as_ref().is_some_and(|u| u < l)) {
            continue;
        }
        let Some(x) = bounded_relaxation(a, b, &node) else {
            continue;
        };
        let Some(j) = x.iter().position(|v| !v.is_integer()) else {
            let witness: IntVector = x.iter().map(|v| v.to_integer()).collect();
            debug_assert_eq!(&a.mul_vec(&witness), b);
            return Ok(Some(witness));
        };
        let floor = x[j].floor().to_integer();
        let mut up = BranchNode {
            lower: node.lower.clone(),
            upper: node.upper.clone(),
        };
        up.lower[j] = &floor + 1;
        let mut down = node;
        down.upper[j] = Some(floor);
        stack.push(up);
        stack.push(down);
    }
    Ok(None)
}

/// Componentwise-minimal elements of a set of vectors, sorted.
pub fn minimal_elements(vectors: &[IntVector]) -> Vec<IntVector> {
    let mut set: Vec<IntVector> = vectors.to_vec();
    set.sort();
    set.dedup();
    set.iter()
        .filter(|v| !set.iter().any(|w| w != *v && w.le_componentwise(v)))
        .cloned()
        .collect()
}
