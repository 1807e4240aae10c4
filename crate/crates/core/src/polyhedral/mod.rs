//! Exact rational polyhedral computations: linear programming, cone facets,
//! pointedness and membership in the half-open zonotope spanned by the columns.

mod cone;
pub(crate) mod simplex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use cone::ConeFacets;
use simplex::{Outcome, StandardLp};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linalg::{IntMatrix, IntVector, RatVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `row . x >= rhs`
    Ge,
    /// `row . x = rhs`
    Eq,
}

/// A system of linear constraints over free rational variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalitySystem {
    num_vars: usize,
    rows: Vec<Vec<BigRational>>,
    senses: Vec<Relation>,
    rhs: Vec<BigRational>,
}

impl InequalitySystem {
    pub fn new(num_vars: usize) -> Self {
        InequalitySystem {
            num_vars,
            rows: Vec::new(),
            senses: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn senses(&self) -> &[Relation] {
        &self.senses
    }

    pub fn rhs(&self) -> &[BigRational] {
        &self.rhs
    }

    pub fn push(&mut self, row: Vec<BigRational>, sense: Relation, rhs: BigRational) -> Result<()> {
        if row.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: row.len(),
            });
        }
        self.rows.push(row);
        self.senses.push(sense);
        self.rhs.push(rhs);
        Ok(())
    }

    /// `row . x <= rhs`, stored as `-row . x >= -rhs`.
    pub fn push_le(&mut self, row: Vec<BigRational>, rhs: BigRational) -> Result<()> {
        self.push(row.into_iter().map(|x| -x).collect(), Relation::Ge, -rhs)
    }

    pub fn push_int(&mut self, row: &[BigInt], sense: Relation, rhs: &BigInt) -> Result<()> {
        self.push(
            row.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
            sense,
            BigRational::from_integer(rhs.clone()),
        )
    }

    /// Adds `x_i >= 0` for every variable.
    pub fn push_nonnegativity(&mut self) {
        for i in 0..self.num_vars {
            let mut row = vec![BigRational::zero(); self.num_vars];
            row[i] = BigRational::one();
            self.rows.push(row);
            self.senses.push(Relation::Ge);
            self.rhs.push(BigRational::zero());
        }
    }

    /// Exact check of a point against every constraint.
    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        x.len() == self.num_vars
            && self.rows.iter().zip(&self.senses).zip(&self.rhs).all(|((row, sense), b)| {
                let lhs: BigRational = row.iter().zip(x).map(|(a, v)| a * v).fold(BigRational::zero(), |s, t| s + t);
                match sense {
                    Relation::Ge => lhs >= *b,
                    Relation::Eq => lhs == *b,
                }
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OptSense {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpResult {
    pub status: LpStatus,
    pub optimum: Option<BigRational>,
    pub witness: Option<RatVector>,
}

/// Solves a linear program over `system` exactly.
///
/// Variables are free unless the system carries an explicit `x_i >= 0` row;
/// such rows become sign restrictions instead of constraints.
pub fn lp_exact(system: &InequalitySystem, objective: &RatVector, sense: OptSense) -> Result<LpResult> {
    let n = system.num_vars;
    if objective.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: objective.dim(),
        });
    }
    let mut nonneg = vec![false; n];
    let mut kept = Vec::new();
    for (idx, ((row, s), b)) in system.rows.iter().zip(&system.senses).zip(&system.rhs).enumerate() {
        let support: Vec<usize> = (0..n).filter(|&j| !row[j].is_zero()).collect();
        if *s == Relation::Ge && b.is_zero() && support.len() == 1 && row[support[0]].is_positive() {
            nonneg[support[0]] = true;
        } else {
            kept.push(idx);
        }
    }
    // column map: each variable becomes x+ (and x- when free)
    let mut cols: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
    let mut width = 0;
    for &nn in &nonneg {
        if nn {
            cols.push((width, None));
            width += 1;
        } else {
            cols.push((width, Some(width + 1)));
            width += 2;
        }
    }
    let expand = |row: &[BigRational]| {
        let mut out = vec![BigRational::zero(); width];
        for (j, a) in row.iter().enumerate() {
            out[cols[j].0] = a.clone();
            if let Some(m) = cols[j].1 {
                out[m] = -a.clone();
            }
        }
        out
    };
    let mut lp = StandardLp::new(width);
    let flip = sense == OptSense::Maximize;
    let cost = expand(objective.entries());
    lp.cost = if flip { cost.into_iter().map(|c| -c).collect() } else { cost };
    for idx in kept {
        let mut row = expand(&system.rows[idx]);
        row.resize(lp.num_vars, BigRational::zero());
        match system.senses[idx] {
            Relation::Eq => lp.add_eq(row, system.rhs[idx].clone()),
            Relation::Ge => lp.add_ge(row, system.rhs[idx].clone()),
        }
    }
    Ok(match lp.solve() {
        Outcome::Infeasible => LpResult {
            status: LpStatus::Infeasible,
            optimum: None,
            witness: None,
        },
        Outcome::Unbounded => LpResult {
            status: LpStatus::Unbounded,
            optimum: None,
            witness: None,
        },
        Outcome::Optimal { x, value } => {
            let witness: Vec<BigRational> = cols
                .iter()
                .map(|&(p, m)| match m {
                    Some(m) => &x[p] - &x[m],
                    None => x[p].clone(),
                })
                .collect();
            LpResult {
                status: LpStatus::Optimal,
                optimum: Some(if flip { -value } else { value }),
                witness: Some(RatVector::new(witness)),
            }
        }
    })
}

pub(crate) fn int_row(row: &[BigInt]) -> Vec<BigRational> {
    row.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Standard-form program `A x = b, x >= 0` with zero objective.
pub(crate) fn nonneg_system(a: &IntMatrix, b: &[BigInt]) -> StandardLp {
    let mut lp = StandardLp::new(a.ncols());
    for (i, bi) in b.iter().enumerate() {
        lp.add_eq(int_row(a.row(i)), BigRational::from_integer(bi.clone()));
    }
    lp
}

/// A point of `{x >= 0 : A x = b}` if the polyhedron is nonempty.
pub(crate) fn nonneg_feasible(a: &IntMatrix, b: &[BigInt]) -> Option<RatVector> {
    match nonneg_system(a, b).solve() {
        Outcome::Optimal { x, .. } => Some(RatVector::new(x)),
        _ => None,
    }
}

/// Real cone membership `z in cone(A)`.
pub fn in_cone(a: &IntMatrix, z: &IntVector) -> bool {
    nonneg_feasible(a, z).is_some()
}

/// Facet description of `cone(A)`.
pub fn cone_facets(a: &IntMatrix, limits: &Limits) -> Result<ConeFacets> {
    let gens = cone::generator_directions(a);
    let (rays, equations) = cone::dual_cone(a.nrows(), &gens, limits)?;
    Ok(ConeFacets {
        dim: a.nrows(),
        facets: rays,
        equations,
        pointed: is_pointed(a),
    })
}

/// True iff `cone(A)` contains no line. Zero columns are ignored.
pub fn is_pointed(a: &IntMatrix) -> bool {
    let cols: Vec<usize> = (0..a.ncols()).filter(|&j| !a.is_zero_column(j)).collect();
    if cols.is_empty() {
        return true;
    }
    // max sum(x) s.t. A x = 0, sum(x) <= 1, x >= 0 is zero iff the cone is pointed
    let mut lp = StandardLp::new(cols.len());
    for i in 0..a.nrows() {
        let row: Vec<BigRational> = cols.iter().map(|&j| BigRational::from_integer(a.get(i, j).clone())).collect();
        lp.add_eq(row, BigRational::zero());
    }
    lp.add_le(vec![BigRational::one(); cols.len()], BigRational::one());
    for j in 0..cols.len() {
        lp.cost[j] = -BigRational::one();
    }
    match lp.solve() {
        Outcome::Optimal { value, .. } => value.is_zero(),
        _ => unreachable!("bounded feasible program"),
    }
}

/// Decides `z in {A lambda : 0 <= lambda_i < 1}` via `min t` subject to
/// `A lambda = z, 0 <= lambda_i <= t <= 1`; `z` belongs iff the optimum is below one.
pub fn in_half_open_zonotope(a: &IntMatrix, z: &IntVector) -> Result<bool> {
    Ok(half_open_witness(a, z)?.is_some())
}

/// As [`in_half_open_zonotope`], returning the minimising `lambda`.
pub fn half_open_witness(a: &IntMatrix, z: &IntVector) -> Result<Option<RatVector>> {
    if z.dim() != a.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: z.dim(),
        });
    }
    let n = a.ncols();
    let t = n;
    let mut lp = StandardLp::new(n + 1);
    for i in 0..a.nrows() {
        let mut row = int_row(a.row(i));
        row.push(BigRational::zero());
        row.resize(lp.num_vars, BigRational::zero());
        lp.add_eq(row, BigRational::from_integer(z[i].clone()));
    }
    for j in 0..n {
        let mut row = vec![BigRational::zero(); lp.num_vars];
        row[j] = BigRational::one();
        row[t] = -BigRational::one();
        lp.add_le(row, BigRational::zero());
    }
    let mut row = vec![BigRational::zero(); lp.num_vars];
    row[t] = BigRational::one();
    lp.add_le(row, BigRational::one());
    lp.cost[t] = BigRational::one();
    match lp.solve() {
        Outcome::Optimal { x, value } if value < BigRational::one() => Ok(Some(RatVector::new(x[..n].to_vec()))),
        _ => Ok(None),
    }
}
