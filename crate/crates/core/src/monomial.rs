//! Monomial ideals given by exponent vectors, and disjoint cell
//! decompositions of their standard monomials.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linalg::IntVector;

/// A monomial `x^a`, stored as its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u64>);

impl Monomial {
    pub fn new(exponents: Vec<u64>) -> Self {
        Monomial(exponents)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, index: usize) -> Self {
        let mut m = Self::one(num_vars);
        m.0[index] = 1;
        m
    }

    pub fn from_int_vector(v: &IntVector) -> Result<Self> {
        v.iter()
            .map(|x| x.to_u64().ok_or_else(|| Error::OutOfRange(format!("exponent {x} is not a u64"))))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    pub fn to_int_vector(&self) -> IntVector {
        self.0.iter().map(|&e| BigInt::from(e)).collect()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A monomial ideal with a minimal (antichain) generating set, kept sorted.
///
/// No generators means the zero ideal; the single generator `1` means the unit ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    num_vars: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero(num_vars: usize) -> Self {
        MonomialIdeal {
            num_vars,
            generators: Vec::new(),
        }
    }

    pub fn unit(num_vars: usize) -> Self {
        MonomialIdeal {
            num_vars,
            generators: vec![Monomial::one(num_vars)],
        }
    }

    /// The ideal generated by `gens`, reduced to its minimal generators.
    pub fn new(num_vars: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut gens: Vec<Monomial> = gens.into_iter().collect();
        if let Some(bad) = gens.iter().find(|g| g.num_vars() != num_vars) {
            return Err(Error::DimensionMismatch {
                expected: num_vars,
                found: bad.num_vars(),
            });
        }
        gens.sort();
        gens.dedup();
        let generators = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && h.divides(g)))
            .cloned()
            .collect();
        Ok(MonomialIdeal { num_vars, generators })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        assert_eq!(m.num_vars(), self.num_vars, "monomial has the wrong number of variables");
        self.generators.iter().any(|g| g.divides(m))
    }

    /// `I ∩ J`, generated by the pairwise least common multiples.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.num_vars != other.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: other.num_vars,
            });
        }
        let lcms = self
            .generators
            .iter()
            .flat_map(|g| other.generators.iter().map(move |h| g.lcm(h)));
        MonomialIdeal::new(self.num_vars, lcms)
    }

    pub fn minimal_generators(&self) -> &[Monomial] {
        &self.generators
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

/// Minimal generating antichain of the ideal spanned by `gens`.
pub fn minimize(num_vars: usize, gens: &[Monomial]) -> Result<MonomialIdeal> {
    MonomialIdeal::new(num_vars, gens.iter().cloned())
}

/// A cell `{root * x^mu : supp(mu) ⊆ free_vars}` of standard monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardPair {
    pub root: Monomial,
    pub free_vars: Vec<usize>,
}

impl StandardPair {
    pub fn contains(&self, m: &Monomial) -> bool {
        m.exponents().iter().zip(self.root.exponents()).enumerate().all(|(j, (e, r))| {
            if self.free_vars.contains(&j) {
                e >= r
            } else {
                e == r
            }
        })
    }

    pub fn is_finite(&self) -> bool {
        self.free_vars.is_empty()
    }
}

impl fmt::Display for StandardPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {{", self.root)?;
        for (i, j) in self.free_vars.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "x{}", j + 1)?;
        }
        f.write_str("})")
    }
}

struct PairSearch<'a> {
    limits: &'a Limits,
    out: Vec<StandardPair>,
}

impl PairSearch<'_> {
    /// Emits cells for `root * m` with `m` standard for `gens` and supported on `free`.
    fn split(&mut self, gens: Vec<Monomial>, free: Vec<bool>, root: Vec<u64>) -> Result<()> {
        let n = root.len();
        let ideal = MonomialIdeal::new(n, gens)?;
        if ideal.is_zero() {
            self.out.push(StandardPair {
                root: Monomial(root),
                free_vars: (0..n).filter(|&j| free[j]).collect(),
            });
            if self.out.len() > self.limits.max_pairs {
                return Err(Error::exhausted("max_pairs", self.limits.max_pairs));
            }
            return Ok(());
        }
        if ideal.is_unit() {
            return Ok(());
        }
        let g = ideal.generators[0].clone();
        let j = g.support().next().expect("non-unit generator has support");
        let gj = g.0[j];
        // slices x_j = k for k < g_j
        for k in 0..gj {
            let sliced = ideal
                .generators
                .iter()
                .filter(|h| h.0[j] <= k)
                .map(|h| {
                    let mut h = h.clone();
                    h.0[j] = 0;
                    h
                })
                .collect();
            let mut free = free.clone();
            free[j] = false;
            let mut root = root.clone();
            root[j] += k;
            self.split(sliced, free, root)?;
        }
        // the region x_j >= g_j is governed by the quotient I : x_j^{g_j}
        let quotient = ideal
            .generators
            .iter()
            .map(|h| {
                let mut h = h.clone();
                h.0[j] = h.0[j].saturating_sub(gj);
                h
            })
            .collect();
        let mut root = root;
        root[j] += gj;
        self.split(quotient, free, root)
    }
}

/// Disjoint cells whose union is exactly the set of standard monomials of `ideal`.
///
/// Recursion: take the lexicographically first minimal generator `g` and its
/// lowest-index variable `x_j`; the slices `x_j = k` (`k < g_j`) drop `x_j`
/// and keep the generators with `j`-exponent at most `k`, and the region
/// `x_j >= g_j` recurses on the quotient `I : x_j^{g_j}`. A cell's root may
/// carry positive exponents on its free variables.
pub fn standard_pairs(ideal: &MonomialIdeal, limits: &Limits) -> Result<Vec<StandardPair>> {
    let n = ideal.num_vars;
    let mut search = PairSearch { limits, out: Vec::new() };
    search.split(ideal.generators.clone(), vec![true; n], vec![0; n])?;
    Ok(search.out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u64]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(n: usize, gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| m(g))).unwrap()
    }

    /// Every monomial in `[0, bound]^n`.
    fn box_monomials(n: usize, bound: u64) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut e = vec![0u64; n];
        loop {
            out.push(m(&e));
            let Some(i) = (0..n).find(|&i| e[i] < bound) else { break };
            e[i] += 1;
            e[..i].iter_mut().for_each(|c| *c = 0);
        }
        out
    }

    fn assert_partition(i: &MonomialIdeal, pairs: &[StandardPair], bound: u64) {
        for mono in box_monomials(i.num_vars(), bound) {
            let hits = pairs.iter().filter(|p| p.contains(&mono)).count();
            if i.contains(&mono) {
                assert_eq!(hits, 0, "{mono} lies in {i} but also in a cell");
            } else {
                assert_eq!(hits, 1, "{mono} is standard for {i} but lies in {hits} cells");
            }
        }
    }

    #[test]
    fn minimization() {
        // <x4^2, x2, x3, x3, x4> = <x2, x3, x4>
        let i = minimize(4, &[m(&[0, 0, 0, 2]), m(&[0, 1, 0, 0]), m(&[0, 0, 1, 0]), m(&[0, 0, 1, 0]), m(&[0, 0, 0, 1])]).unwrap();
        assert_eq!(i.generators(), &[m(&[0, 0, 0, 1]), m(&[0, 0, 1, 0]), m(&[0, 1, 0, 0])]);

        let i = minimize(2, &[m(&[0, 0])]).unwrap();
        assert!(i.is_unit());

        let i = minimize(2, &[m(&[2, 0]), m(&[3, 0]), m(&[2, 1])]).unwrap();
        assert_eq!(i.generators(), &[m(&[2, 0])]);

        let i = minimize(2, &[m(&[2, 0]), m(&[1, 1]), m(&[0, 3]), m(&[2, 1])]).unwrap();
        assert_eq!(i.minimal_generators(), &[m(&[0, 3]), m(&[1, 1]), m(&[2, 0])]);
    }

    #[test]
    fn membership() {
        let i = ideal(4, &[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(!i.contains(&m(&[5, 0, 0, 0])));
        assert!(i.contains(&m(&[0, 0, 1, 0])));
        let j = ideal(2, &[&[2, 1]]);
        assert!(j.contains(&m(&[3, 2])));
        assert!(!j.contains(&m(&[1, 5])));
    }

    #[test]
    fn intersections() {
        let x2 = ideal(2, &[&[2, 0]]);
        let xy = ideal(2, &[&[1, 1]]);
        assert_eq!(x2.intersect(&xy).unwrap(), ideal(2, &[&[2, 1]]));
        assert_eq!(x2.intersect(&MonomialIdeal::unit(2)).unwrap(), x2);

        // <x, y^3> ∩ <x^2, y>, checked pointwise on [0,4]^2
        let a = ideal(2, &[&[1, 0], &[0, 3]]);
        let b = ideal(2, &[&[2, 0], &[0, 1]]);
        let c = a.intersect(&b).unwrap();
        for mono in box_monomials(2, 4) {
            assert_eq!(c.contains(&mono), a.contains(&mono) && b.contains(&mono));
        }
        assert_eq!(c, ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]));
        assert!(a.intersect(&ideal(3, &[&[1, 0, 0]])).is_err());
    }

    #[test]
    fn pairs_of_variable_ideal() {
        let i = ideal(4, &[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let pairs = standard_pairs(&i, &Limits::default()).unwrap();
        assert_eq!(
            pairs,
            vec![StandardPair {
                root: Monomial::one(4),
                free_vars: vec![0]
            }]
        );
    }

    #[test]
    fn pairs_of_zero_and_unit_ideal() {
        let pairs = standard_pairs(&MonomialIdeal::zero(3), &Limits::default()).unwrap();
        assert_eq!(
            pairs,
            vec![StandardPair {
                root: Monomial::one(3),
                free_vars: vec![0, 1, 2]
            }]
        );
        assert!(standard_pairs(&MonomialIdeal::unit(3), &Limits::default()).unwrap().is_empty());
    }

    #[test]
    fn pairs_of_finite_staircase() {
        let i = ideal(2, &[&[3, 0], &[0, 1]]);
        let mut pairs = standard_pairs(&i, &Limits::default()).unwrap();
        pairs.sort();
        let expected: Vec<StandardPair> = (0..3)
            .map(|k| StandardPair {
                root: m(&[k, 0]),
                free_vars: vec![],
            })
            .collect();
        assert_eq!(pairs, expected);
        assert_partition(&i, &pairs, 4);
    }

    #[test]
    fn pairs_cover_region_beyond_generator() {
        // <xy>: standard monomials are the two axes
        let i = ideal(2, &[&[1, 1]]);
        let pairs = standard_pairs(&i, &Limits::default()).unwrap();
        assert_partition(&i, &pairs, 6);
        assert!(pairs.iter().all(|p| !p.is_finite()));
    }

    #[test]
    fn pair_limit_enforced() {
        let i = ideal(2, &[&[9, 0], &[0, 9]]);
        let tight = Limits { max_pairs: 10, ..Limits::default() };
        assert!(standard_pairs(&i, &tight).unwrap_err().is_resource_exhausted());
    }

    #[test]
    fn display() {
        assert_eq!(m(&[2, 0, 1]).to_string(), "x1^2*x3");
        assert_eq!(Monomial::one(2).to_string(), "1");
        assert_eq!(ideal(2, &[&[1, 0], &[0, 3]]).to_string(), "<x2^3, x1>");
    }
}
