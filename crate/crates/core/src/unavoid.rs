//! Unavoidability weights.
//!
//! `A(E)` is the probability that the H2-part of `E` is fully selected when
//! every P-vertex independently picks one incident H2 edge uniformly.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::comb::for_each_combination;
use crate::conflicts::{split, v_p};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeClass, EdgeId, Hypergraph, VertexId};

/// Exact arithmetic is used while degrees and H2-parts stay within these
/// bounds; beyond them sums fall back to `f64`.
pub const EXACT_MAX_DEGREE: usize = 1_000_000;
pub const EXACT_MAX_PARTS: usize = 12;
pub const FLOAT_REL_TOL: f64 = 1e-9;

fn anchor_degree(h: &Hypergraph, y: VertexId) -> Result<usize> {
    match h.d_h2(y) {
        0 => Err(Error::precondition(format!("P-vertex {y} has H2-degree 0"))),
        d => Ok(d),
    }
}

/// Two H2 edges at one P-vertex are never picked together.
fn selectable(h: &Hypergraph, conflict: &[EdgeId]) -> bool {
    let j2 = conflict.iter().filter(|&&e| h.class(e) == EdgeClass::H2).count();
    v_p(h, conflict).len() == j2
}

pub fn unavoidability(h: &Hypergraph, conflict: &[EdgeId]) -> Result<f64> {
    if !selectable(h, conflict) {
        return Ok(0.0);
    }
    let mut a = 1.0;
    for y in v_p(h, conflict) {
        a /= anchor_degree(h, y)? as f64;
    }
    Ok(a)
}

pub fn unavoidability_exact(h: &Hypergraph, conflict: &[EdgeId]) -> Result<BigRational> {
    if !selectable(h, conflict) {
        return Ok(BigRational::zero());
    }
    let mut den = BigInt::one();
    for y in v_p(h, conflict) {
        den *= BigInt::from(anchor_degree(h, y)?);
    }
    Ok(BigRational::new(BigInt::one(), den))
}

/// `A(D)` for a family; exact when eligible.
#[derive(Clone, Debug, PartialEq)]
pub struct Mass {
    pub exact: Option<BigRational>,
    pub approx: f64,
}

impl Mass {
    pub fn rel_tol(&self) -> f64 {
        if self.exact.is_some() {
            0.0
        } else {
            FLOAT_REL_TOL
        }
    }
}

pub fn exact_eligible<'a>(h: &Hypergraph, family: impl IntoIterator<Item = &'a [EdgeId]>) -> bool {
    let deg_ok = h.p_vertices().all(|x| h.d_h2(x) <= EXACT_MAX_DEGREE);
    deg_ok && family.into_iter().all(|c| c.iter().filter(|&&e| h.class(e) == EdgeClass::H2).count() <= EXACT_MAX_PARTS)
}

pub fn family_mass<'a, I>(h: &Hypergraph, family: I) -> Result<Mass>
where
    I: IntoIterator<Item = &'a [EdgeId]> + Clone,
{
    let exact = if exact_eligible(h, family.clone()) {
        let mut s = BigRational::zero();
        for c in family.clone() {
            s += unavoidability_exact(h, c)?;
        }
        Some(s)
    } else {
        None
    };
    let approx = match &exact {
        Some(q) => q.to_f64().unwrap_or(f64::NAN),
        None => {
            let mut s = 0.0;
            for c in family {
                s += unavoidability(h, c)?;
            }
            s
        }
    };
    Ok(Mass { exact, approx })
}

/// `A(v) = Σ_x d_H2(x, v) / d_H2(x)` for an R-vertex `v`.
pub fn vertex_unavoidability(h: &Hypergraph, v: VertexId) -> Result<f64> {
    if !h.r_vertices().contains(&v) {
        return Err(Error::input(format!("vertex {v} is not in R")));
    }
    let mut per_anchor: HashMap<VertexId, usize> = HashMap::new();
    for &e in h.incident(v, EdgeClass::H2) {
        *per_anchor.entry(h.h2_anchor(e)).or_insert(0) += 1;
    }
    let mut total = 0.0;
    let mut anchors: Vec<_> = per_anchor.into_iter().collect();
    anchors.sort_unstable();
    for (x, c) in anchors {
        total += c as f64 / anchor_degree(h, x)? as f64;
    }
    Ok(total)
}

/// `Δ^A_{j1', j2'}` over a family: the largest unavoidability mass of the
/// conflicts containing a given pair (C ⊆ H1 of size j1', D ⊆ H2 of size
/// j2'). Returns the maximum and the witness `C ∪ D` (sorted).
pub fn weighted_max_degree<'a>(h: &Hypergraph, family: impl IntoIterator<Item = &'a [EdgeId]>, j1p: usize, j2p: usize) -> Result<(f64, Vec<EdgeId>)> {
    if j1p + j2p == 0 {
        return Err(Error::input("j1' + j2' must be at least 1"));
    }
    let mut acc: HashMap<Vec<EdgeId>, f64> = HashMap::new();
    for conflict in family {
        let a = unavoidability(h, conflict)?;
        let (p1, p2) = split(h, conflict);
        for_each_combination(&p1, j1p, |c| {
            for_each_combination(&p2, j2p, |d| {
                let mut key = c.to_vec();
                key.extend_from_slice(d);
                key.sort_unstable();
                *acc.entry(key).or_insert(0.0) += a;
            });
        });
    }
    let mut best = (0.0, Vec::new());
    for (k, v) in acc {
        if v > best.0 || (v == best.0 && v > 0.0 && k < best.1) {
            best = (v, k);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{HypergraphBuilder, Shape};

    fn toy() -> Hypergraph {
        // P = {0,1}, R = {2,3,4,5,6}; H2 degrees: d(0) = 5, d(1) = 2.
        let mut b = HypergraphBuilder::new(Shape { n_p: 2, n_q: 0, n_r: 5, p: 2, q: 0, r: 1 });
        b.add_edge(EdgeClass::H1, &[0, 1]).unwrap(); // 0
        for v in 2..7 {
            b.add_edge(EdgeClass::H2, &[0, v]).unwrap(); // 1..=5
        }
        b.add_edge(EdgeClass::H2, &[1, 2]).unwrap(); // 6
        b.add_edge(EdgeClass::H2, &[1, 3]).unwrap(); // 7
        b.build().unwrap()
    }

    #[test]
    fn single_factors() {
        let h = toy();
        assert_eq!(unavoidability(&h, &[0]).unwrap(), 1.0);
        assert_eq!(unavoidability(&h, &[1]).unwrap(), 0.2);
        assert_eq!(unavoidability_exact(&h, &[1, 6]).unwrap(), BigRational::new(1.into(), 10.into()));
        assert_eq!(vertex_unavoidability(&h, 2).unwrap(), 0.2 + 0.5);
        assert_eq!(vertex_unavoidability(&h, 6).unwrap(), 0.2);
        assert!(vertex_unavoidability(&h, 0).is_err());
    }

    #[test]
    fn weighted_degree() {
        let h = toy();
        let fam: Vec<Vec<EdgeId>> = vec![vec![1, 6], vec![1, 7], vec![0, 2, 6]];
        let (m, w) = weighted_max_degree(&h, fam.iter().map(Vec::as_slice), 0, 1).unwrap();
        assert!((m - 0.2).abs() < 1e-12);
        assert_eq!(w, vec![1]);
        let (m, _) = weighted_max_degree(&h, std::iter::empty(), 1, 0).unwrap();
        assert_eq!(m, 0.0);
        let mass = family_mass(&h, fam.iter().map(Vec::as_slice)).unwrap();
        assert_eq!(mass.exact.unwrap(), BigRational::new(3.into(), 10.into()));
    }
}
