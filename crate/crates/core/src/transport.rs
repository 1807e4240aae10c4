//! Three-dimensional planar transportation problems: the constraint matrix,
//! integer table search, and the certificate that Vlach's 3x4x6 margins are
//! a hole whose translate `f + Q` contains infinitely many holes.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::holes::run_jobs;
use crate::limits::Limits;
use crate::linalg::{lattice_basis, rank, solve_rational_affine, to_i64, IntMatrix, IntVector, RatVector};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::polyhedral::nonneg_system;
use crate::polyhedral::simplex::{Outcome, StandardLp};

/// Table shape `r x s x t`; cells are indexed `(i, j, k)` in lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TransportDims {
    pub r: usize,
    pub s: usize,
    pub t: usize,
}

impl TransportDims {
    pub fn new(r: usize, s: usize, t: usize) -> Result<Self> {
        if r == 0 || s == 0 || t == 0 {
            return Err(Error::InvalidInput(format!("table dimensions must be positive, got {r}x{s}x{t}")));
        }
        Ok(TransportDims { r, s, t })
    }

    /// Number of margin constraints `st + rt + rs`.
    pub fn d(&self) -> usize {
        self.s * self.t + self.r * self.t + self.r * self.s
    }

    /// Number of cells `rst`.
    pub fn n(&self) -> usize {
        self.r * self.s * self.t
    }

    pub fn cell_index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.s + j) * self.t + k
    }

    pub fn cell(&self, index: usize) -> (usize, usize, usize) {
        (index / (self.s * self.t), (index / self.t) % self.s, index % self.t)
    }

    fn u_row(&self, j: usize, k: usize) -> usize {
        j * self.t + k
    }

    fn v_row(&self, i: usize, k: usize) -> usize {
        self.s * self.t + i * self.t + k
    }

    fn w_row(&self, i: usize, j: usize) -> usize {
        self.s * self.t + self.r * self.t + i * self.s + j
    }
}

impl fmt::Display for TransportDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}x{}", self.r, self.s, self.t)
    }
}

/// Two-dimensional margins: `u` is `s x t` (sums over `i`), `v` is `r x t`
/// (sums over `j`), `w` is `r x s` (sums over `k`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarginTriple {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub w: IntMatrix,
}

impl MarginTriple {
    /// The shape implied by the block sizes, if they agree.
    pub fn dims(&self) -> Result<TransportDims> {
        let (s, t) = (self.u.nrows(), self.u.ncols());
        let r = self.v.nrows();
        if self.v.ncols() != t || self.w.nrows() != r || self.w.ncols() != s {
            return Err(Error::InvalidInput(format!(
                "margin blocks {}x{}, {}x{}, {}x{} do not fit one table shape",
                self.u.nrows(),
                self.u.ncols(),
                self.v.nrows(),
                self.v.ncols(),
                self.w.nrows(),
                self.w.ncols()
            )));
        }
        TransportDims::new(r, s, t)
    }

    /// Right-hand side in the row order of [`transportation_matrix`].
    pub fn stacked(&self) -> IntVector {
        let mut out = Vec::new();
        for m in [&self.u, &self.v, &self.w] {
            for i in 0..m.nrows() {
                out.extend(m.row(i).iter().cloned());
            }
        }
        IntVector::new(out)
    }

    pub fn from_stacked(dims: TransportDims, f: &IntVector) -> Result<Self> {
        if f.dim() != dims.d() {
            return Err(Error::DimensionMismatch {
                expected: dims.d(),
                found: f.dim(),
            });
        }
        let (r, s, t) = (dims.r, dims.s, dims.t);
        let f = f.entries();
        Ok(MarginTriple {
            u: IntMatrix::new(s, t, f[..s * t].to_vec())?,
            v: IntMatrix::new(r, t, f[s * t..s * t + r * t].to_vec())?,
            w: IntMatrix::new(r, s, f[s * t + r * t..].to_vec())?,
        })
    }

    /// Margins of a table given in cell order.
    pub fn of_table(dims: TransportDims, table: &IntVector) -> Result<Self> {
        let f = transportation_matrix(dims).mul_vec(table);
        Self::from_stacked(dims, &f)
    }

    /// Sums of `u`, `v` and `w`.
    pub fn grand_totals(&self) -> [BigInt; 3] {
        let total = |m: &IntMatrix| (0..m.nrows()).flat_map(|i| m.row(i).iter()).sum::<BigInt>();
        [total(&self.u), total(&self.v), total(&self.w)]
    }

    pub fn is_consistent(&self) -> bool {
        let [a, b, c] = self.grand_totals();
        a == b && b == c
    }
}

/// The `d x n` 0/1 matrix mapping a table to its stacked margins.
///
/// Rows: `u` rows `(j, k)`, then `v` rows `(i, k)`, then `w` rows `(i, j)`,
/// each block lexicographic. Every column has exactly three ones.
pub fn transportation_matrix(dims: TransportDims) -> IntMatrix {
    let mut a = IntMatrix::zeros(dims.d(), dims.n());
    for i in 0..dims.r {
        for j in 0..dims.s {
            for k in 0..dims.t {
                let c = dims.cell_index(i, j, k);
                a.set(dims.u_row(j, k), c, BigInt::one());
                a.set(dims.v_row(i, k), c, BigInt::one());
                a.set(dims.w_row(i, j), c, BigInt::one());
            }
        }
    }
    a
}

// Vlach's margins in their customary layout: each block is the transpose of the margin it encodes.
const VLACH_W_T: [[i64; 3]; 4] = [[1, 1, 1], [1, 1, 1], [1, 1, 1], [1, 1, 1]];
const VLACH_V_T: [[i64; 3]; 6] = [[1, 1, 0], [1, 1, 0], [1, 0, 1], [1, 0, 1], [0, 1, 1], [0, 1, 1]];
const VLACH_U_T: [[i64; 4]; 6] = [
    [1, 0, 0, 1],
    [0, 1, 1, 0],
    [1, 1, 0, 0],
    [0, 0, 1, 1],
    [1, 0, 1, 0],
    [0, 1, 0, 1],
];

pub fn vlach_dims() -> TransportDims {
    TransportDims { r: 3, s: 4, t: 6 }
}

pub fn vlach_margins() -> MarginTriple {
    let transpose = |rows: &[&[i64]]| IntMatrix::from_i64_rows(rows).transpose();
    let u_t: Vec<&[i64]> = VLACH_U_T.iter().map(|r| &r[..]).collect();
    let v_t: Vec<&[i64]> = VLACH_V_T.iter().map(|r| &r[..]).collect();
    let w_t: Vec<&[i64]> = VLACH_W_T.iter().map(|r| &r[..]).collect();
    MarginTriple {
        u: transpose(&u_t),
        v: transpose(&v_t),
        w: transpose(&w_t),
    }
}

/// The 54 x 72 matrix of the 3x4x6 problem and Vlach's margin vector.
pub fn vlach_instance() -> (IntMatrix, IntVector) {
    (transportation_matrix(vlach_dims()), vlach_margins().stacked())
}

/// Number of assigned cells between exact relaxation checks in [`table_feasible`].
pub const LP_CADENCE: usize = 12;

struct TableSearch<'a> {
    dims: TransportDims,
    ru: Vec<i64>,
    rv: Vec<i64>,
    rw: Vec<i64>,
    table: Vec<i64>,
    nodes: u64,
    limits: &'a Limits,
}

impl TableSearch<'_> {
    fn cap(&self, i: usize, j: usize, k: usize) -> i64 {
        let (s, t) = (self.dims.s, self.dims.t);
        self.ru[j * t + k].min(self.rv[i * t + k]).min(self.rw[i * s + j])
    }

    /// Each line through `(i, j, k)` can still be filled by its later cells.
    fn capacity_ok(&self, i: usize, j: usize, k: usize) -> bool {
        let TransportDims { r, s, t } = self.dims;
        let u_cap: i64 = (i + 1..r).map(|i2| self.cap(i2, j, k)).sum();
        let v_cap: i64 = (j + 1..s).map(|j2| self.cap(i, j2, k)).sum();
        let w_cap: i64 = (k + 1..t).map(|k2| self.cap(i, j, k2)).sum();
        self.ru[j * t + k] <= u_cap && self.rv[i * t + k] <= v_cap && self.rw[i * s + j] <= w_cap
    }

    /// Real feasibility of the remaining margins over the cells from `from` on.
    fn relaxation_feasible(&self, from: usize) -> bool {
        let dims = self.dims;
        let n = dims.n() - from;
        let mut rows = vec![vec![BigRational::zero(); n]; dims.d()];
        for c in from..dims.n() {
            let (i, j, k) = dims.cell(c);
            for row in [dims.u_row(j, k), dims.v_row(i, k), dims.w_row(i, j)] {
                rows[row][c - from] = BigRational::one();
            }
        }
        let rhs: Vec<i64> = self.ru.iter().chain(&self.rv).chain(&self.rw).copied().collect();
        let mut lp = StandardLp::new(n);
        for (row, b) in rows.into_iter().zip(rhs) {
            if row.iter().all(Zero::is_zero) {
                if b != 0 {
                    return false;
                }
                continue;
            }
            lp.add_eq(row, BigRational::from_integer(b.into()));
        }
        !matches!(lp.solve(), Outcome::Infeasible)
    }

    fn search(&mut self, idx: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes {
            return Err(Error::exhausted("max_nodes", self.limits.max_nodes));
        }
        let TransportDims { r, s, t } = self.dims;
        if idx == self.dims.n() {
            return Ok(self.ru.iter().chain(&self.rv).chain(&self.rw).all(|&x| x == 0));
        }
        if idx.is_multiple_of(LP_CADENCE) && !self.relaxation_feasible(idx) {
            return Ok(false);
        }
        let (i, j, k) = self.dims.cell(idx);
        let (ui, vi, wi) = (j * t + k, i * t + k, i * s + j);
        let hi = self.cap(i, j, k);
        // the last cell of a line must absorb what is left of it
        let mut forced: Option<i64> = None;
        for (last, rem) in [(i + 1 == r, self.ru[ui]), (j + 1 == s, self.rv[vi]), (k + 1 == t, self.rw[wi])] {
            if !last {
                continue;
            }
            match forced {
                Some(x) if x != rem => return Ok(false),
                _ => forced = Some(rem),
            }
        }
        let (lo, hi) = match forced {
            Some(x) if x > hi => return Ok(false),
            Some(x) => (x, x),
            None => (0, hi),
        };
        for x in (lo..=hi).rev() {
            self.ru[ui] -= x;
            self.rv[vi] -= x;
            self.rw[wi] -= x;
            self.table[idx] = x;
            if self.capacity_ok(i, j, k) && self.search(idx + 1)? {
                return Ok(true);
            }
            self.ru[ui] += x;
            self.rv[vi] += x;
            self.rw[wi] += x;
        }
        self.table[idx] = 0;
        Ok(false)
    }
}

/// A nonnegative integer table with margins `m`, in cell order.
///
/// Depth-first over cells in lexicographic order, largest value first, with
/// line-capacity pruning and an exact relaxation check every [`LP_CADENCE`] cells.
/// `None` means no table exists; running out of nodes is an error.
pub fn table_feasible(dims: TransportDims, m: &MarginTriple, limits: &Limits) -> Result<Option<IntVector>> {
    if m.dims()? != dims {
        return Err(Error::InvalidInput(format!("margins do not match table shape {dims}")));
    }
    let flat = |x: &IntMatrix| -> Result<Vec<i64>> { (0..x.nrows()).flat_map(|i| x.row(i).iter()).map(to_i64).collect() };
    let (ru, rv, rw) = (flat(&m.u)?, flat(&m.v)?, flat(&m.w)?);
    if ru.iter().chain(&rv).chain(&rw).any(|&x| x < 0) || !m.is_consistent() {
        return Ok(None);
    }
    let mut search = TableSearch {
        dims,
        ru,
        rv,
        rw,
        table: vec![0; dims.n()],
        nodes: 0,
        limits,
    };
    if !search.search(0)? {
        return Ok(None);
    }
    let table: IntVector = search.table.iter().map(|&x| BigInt::from(x)).collect();
    debug_assert_eq!(transportation_matrix(dims).mul_vec(&table), m.stacked());
    Ok(Some(table))
}

/// Outcome flags of [`verify_vlach`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VlachConclusions {
    /// `f` lies in `cone(A) ∩ lattice(A)` but not in `Q`.
    pub f_is_hole: bool,
    /// `f - a_j` lies outside `Q_sat` for all 72 columns.
    pub f_is_fundamental_checked: bool,
    /// `z*` is the only point of `{z >= 0 : A z = f}`.
    pub unique_real_solution: bool,
    /// `H ∩ (f + Q) = f + monoid(A')`.
    pub holes_are_f_plus_monoid_a_prime: bool,
}

impl VlachConclusions {
    pub fn all(&self) -> bool {
        self.f_is_hole && self.f_is_fundamental_checked && self.unique_real_solution && self.holes_are_f_plus_monoid_a_prime
    }
}

/// Certificate that Vlach's margins form a fundamental hole with infinitely many holes above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VlachReport {
    pub dims: TransportDims,
    pub f: IntVector,
    pub z_star: RatVector,
    /// Cells with `z*` positive, ascending.
    pub support: Vec<usize>,
    pub a_prime: IntMatrix,
    pub support_rank: usize,
    pub f_in_lattice: bool,
    /// `max z_c` over the polytope, for every cell `c` outside the support.
    pub off_support_maxima: Vec<(usize, BigRational)>,
    /// Columns `j` with `f - a_j` in `Q_sat`; empty when `f` is fundamental.
    pub non_fundamental_columns: Vec<usize>,
    /// A table with margins `f + a_c` for every cell `c` outside the support.
    pub non_hole_witnesses: Vec<(usize, Option<IntVector>)>,
    /// Rows where `f` and `A'` both vanish meet every column outside the support.
    pub zero_rows_force_support: bool,
    /// Generated by the variables outside the support, once all witnesses exist.
    pub hole_ideal: Option<MonomialIdeal>,
    pub conclusions: VlachConclusions,
    pub diagnostics: Vec<String>,
}

/// Runs the full verification for Vlach's 3x4x6 margins.
///
/// Steps: an LP point `z*` of `{A z = f, z >= 0}`; uniqueness from zero LP
/// maxima off the support and full column rank of the support columns `A'`;
/// `f` not in `Q` since `z*` is fractional; an integer table for each
/// incremented margin `f + a_c` off the support, putting `x_c` in the hole
/// ideal; rows where `f` and `A'` vanish pin `mu` to the support, where
/// `A' mu' = f + A' lambda'` forces `mu' = z*' + lambda'`, never integral.
pub fn verify_vlach(limits: &Limits) -> Result<VlachReport> {
    let dims = vlach_dims();
    let (a, f) = vlach_instance();
    let n = dims.n();
    let mut diagnostics = Vec::new();
    let mut conclusions = VlachConclusions::default();

    let lp_point = match nonneg_system(&a, &f).solve() {
        Outcome::Optimal { x, .. } => RatVector::new(x),
        _ => {
            diagnostics.push("the margin polytope is empty".to_string());
            return Ok(VlachReport {
                dims,
                f,
                z_star: RatVector::zeros(n),
                support: Vec::new(),
                a_prime: a,
                support_rank: 0,
                f_in_lattice: false,
                off_support_maxima: Vec::new(),
                non_fundamental_columns: Vec::new(),
                non_hole_witnesses: Vec::new(),
                zero_rows_force_support: false,
                hole_ideal: None,
                conclusions,
                diagnostics,
            });
        }
    };
    let support: Vec<usize> = (0..n).filter(|&c| !lp_point[c].is_zero()).collect();
    let off_support: Vec<usize> = (0..n).filter(|c| !support.contains(c)).collect();
    let a_prime = a.select_columns(&support)?;
    let support_rank = rank(&a_prime);

    // z* from the support columns alone
    let mut z_star = lp_point.clone();
    match solve_rational_affine(&a_prime, &f)? {
        Some((particular, kernel)) => {
            if !kernel.is_empty() {
                diagnostics.push(format!("support columns have a {}-dimensional kernel", kernel.len()));
            }
            let mut full = vec![BigRational::zero(); n];
            for (c, x) in support.iter().zip(particular.iter()) {
                full[*c] = x.clone();
            }
            z_star = RatVector::new(full);
            if z_star != lp_point {
                diagnostics.push("support solve disagrees with the LP point".to_string());
            }
        }
        None => diagnostics.push("support columns do not reach f".to_string()),
    }

    let off_support_maxima: Vec<(usize, BigRational)> = run_jobs(limits.jobs, &off_support, |&c| {
        let mut lp = nonneg_system(&a, &f);
        lp.cost[c] = -BigRational::one();
        match lp.solve() {
            Outcome::Optimal { value, .. } => Ok((c, -value)),
            other => Err(Error::InvalidInput(format!("coordinate maximum for cell {c} is {other:?}"))),
        }
    })?;
    conclusions.unique_real_solution =
        support_rank == support.len() && off_support_maxima.iter().all(|(_, m)| m.is_zero()) && z_star == lp_point;

    let f_in_lattice = lattice_basis(&a).coordinates(&f).is_some();
    let fractional = !z_star.is_integral();
    conclusions.f_is_hole = f_in_lattice && conclusions.unique_real_solution && fractional;
    if !fractional {
        diagnostics.push("the unique real point is integral".to_string());
    }

    // every entry of A is nonnegative, so a negative entry leaves the cone
    let non_fundamental_columns: Vec<usize> = run_jobs(limits.jobs, &(0..n).collect::<Vec<_>>(), |&c| {
        let g = f.sub(&a.column(c));
        if g.iter().any(|x| x < &BigInt::zero()) {
            return Ok(None);
        }
        let in_cone = !matches!(nonneg_system(&a, &g).solve(), Outcome::Infeasible);
        let in_lattice = lattice_basis(&a).coordinates(&g).is_some();
        Ok((in_cone && in_lattice).then_some(c))
    })?
    .into_iter()
    .flatten()
    .collect();
    conclusions.f_is_fundamental_checked = conclusions.f_is_hole && non_fundamental_columns.is_empty();

    let non_hole_witnesses: Vec<(usize, Option<IntVector>)> = run_jobs(limits.jobs, &off_support, |&c| {
        let target = f.add(&a.column(c));
        let margins = MarginTriple::from_stacked(dims, &target)?;
        let table = table_feasible(dims, &margins, limits)?;
        if let Some(mu) = &table {
            if a.mul_vec(mu) != target {
                return Err(Error::InvalidInput(format!("witness for cell {c} has the wrong margins")));
            }
        }
        Ok((c, table))
    })?;
    let all_witnesses = non_hole_witnesses.iter().all(|(_, w)| w.is_some());
    for (c, w) in &non_hole_witnesses {
        if w.is_none() {
            let (i, j, k) = dims.cell(*c);
            diagnostics.push(format!("no table for f + a_{}{}{}", i + 1, j + 1, k + 1));
        }
    }

    let zero_rows: Vec<usize> = (0..a.nrows())
        .filter(|&i| f[i].is_zero() && a_prime.is_zero_row(i))
        .collect();
    let zero_rows_force_support = off_support
        .iter()
        .all(|&c| zero_rows.iter().any(|&i| !a.get(i, c).is_zero()));
    if !zero_rows_force_support {
        diagnostics.push("some cell off the support meets no vanishing row".to_string());
    }

    let hole_ideal = if all_witnesses {
        Some(MonomialIdeal::new(n, off_support.iter().map(|&c| Monomial::var(n, c)))?)
    } else {
        None
    };
    conclusions.holes_are_f_plus_monoid_a_prime = conclusions.f_is_hole
        && all_witnesses
        && zero_rows_force_support
        && support_rank == support.len()
        && support.iter().all(|&c| !z_star[c].is_integer());

    Ok(VlachReport {
        dims,
        f,
        z_star,
        support,
        a_prime,
        support_rank,
        f_in_lattice,
        off_support_maxima,
        non_fundamental_columns,
        non_hole_witnesses,
        zero_rows_force_support,
        hole_ideal,
        conclusions,
        diagnostics,
    })
}
