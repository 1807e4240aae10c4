//! Facet enumeration for cones generated by integer vectors.
//!
//! The facets of `cone(A)` are the extreme rays of the dual cone
//! `{y : y . a >= 0 for every column a}`, which the double description
//! method builds one constraint at a time.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linalg::{IntMatrix, IntVector};

#[derive(Clone, Debug)]
struct Ray {
    v: IntVector,
    /// Indices of processed constraints that vanish on this ray.
    zeros: BTreeSet<usize>,
}

fn dot(a: &IntVector, b: &IntVector) -> BigInt {
    a.dot(b)
}

fn combine(alpha: &BigInt, x: &IntVector, beta: &BigInt, y: &IntVector) -> IntVector {
    x.scaled(alpha).add(&y.scaled(beta)).primitive()
}

/// Extreme rays and lineality basis of `{y : g . y >= 0 for g in generators}`.
pub(crate) fn dual_cone(
    dim: usize,
    generators: &[IntVector],
    limits: &Limits,
) -> Result<(Vec<IntVector>, Vec<IntVector>)> {
    let mut lineality: Vec<IntVector> = (0..dim).map(|i| IntVector::unit(dim, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in generators.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.remove(pos);
            if dot(a, &l0).is_negative() {
                l0 = l0.scaled(&BigInt::from(-1));
            }
            let al0 = dot(a, &l0);
            for l in &mut lineality {
                let al = dot(a, l);
                if !al.is_zero() {
                    *l = combine(&al0, l, &(-al), &l0);
                }
            }
            for r in &mut rays {
                let ar = dot(a, &r.v);
                if !ar.is_zero() {
                    r.v = combine(&al0, &r.v, &(-ar), &l0);
                }
                r.zeros.insert(k);
            }
            rays.push(Ray {
                v: l0,
                zeros: (0..k).collect(),
            });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for (i, val) in values.iter().enumerate() {
            if val.is_positive() {
                plus.push(i);
            } else if val.is_negative() {
                minus.push(i);
            }
        }
        for &p in &plus {
            for &n in &minus {
                let common: BTreeSet<usize> = rays[p].zeros.intersection(&rays[n].zeros).copied().collect();
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == n || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let v = combine(&values[p], &rays[n].v, &(-&values[n]), &rays[p].v);
                let mut zeros = common;
                zeros.insert(k);
                next.push(Ray { v, zeros });
                if next.len() + rays.len() > limits.max_rays {
                    return Err(Error::exhausted("max_rays", limits.max_rays));
                }
            }
        }
        for (i, r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            let mut r = r;
            if values[i].is_zero() {
                r.zeros.insert(k);
            }
            next.push(r);
        }
        rays = next;
    }
    let mut rays: Vec<IntVector> = rays.into_iter().map(|r| r.v).collect();
    rays.sort();
    rays.dedup();
    Ok((rays, lineality))
}

/// Inequality description of `cone(A)`: `facets . z >= 0` and `equations . z = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeFacets {
    pub dim: usize,
    /// Primitive inner facet normals, sorted.
    pub facets: Vec<IntVector>,
    /// Basis of the orthogonal complement of the linear span of the cone.
    pub equations: Vec<IntVector>,
    /// False when the cone contains a line.
    pub pointed: bool,
}

impl ConeFacets {
    pub fn contains(&self, z: &[BigInt]) -> bool {
        assert_eq!(z.len(), self.dim);
        self.facets.iter().all(|f| !f.dot(z).is_negative()) && self.equations.iter().all(|e| e.dot(z).is_zero())
    }

    /// Integer matrix `B` of the facet rows, if there are any.
    pub fn facet_matrix(&self) -> Option<IntMatrix> {
        let rows: Vec<Vec<BigInt>> = self.facets.iter().map(|f| f.to_vec()).collect();
        IntMatrix::from_rows(&rows).ok()
    }
}

/// Nonzero columns of `a`, deduplicated up to positive scaling, in column order.
pub(crate) fn generator_directions(a: &IntMatrix) -> Vec<IntVector> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in a.columns() {
        if c.is_zero() {
            continue;
        }
        if seen.insert(c.primitive()) {
            out.push(c);
        }
    }
    out
}
