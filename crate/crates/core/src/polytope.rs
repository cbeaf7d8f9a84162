//! Lattice polytopes given by their vertices, with exact hulls, membership,
//! lattice points, Minkowski sums and comparison up to translation.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplex::in_convex_hull;

/// The convex hull of finitely many integer points, stored as its
/// lexicographically sorted vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
}

impl LatticePolytope {
    /// The convex hull of `points`. Every discarded point is certified to lie
    /// in the hull of the remaining ones, and every kept point is certified
    /// to be a vertex.
    pub fn hull<I, P>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[i64]>,
    {
        let pts: BTreeSet<Vec<i64>> = points.into_iter().map(|p| p.as_ref().to_vec()).collect();
        let dim = pts.iter().next().ok_or(Error::EmptyPointSet)?.len();
        if let Some(bad) = pts.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        let pts: Vec<Vec<i64>> = pts.into_iter().collect();
        if pts.len() <= 2 {
            return Ok(LatticePolytope { dim, vertices: pts });
        }

        // Unique maximizers of linear functionals are vertices. This finds
        // most of them cheaply, so that the LP tests below run against a
        // short list.
        let mut vertex = vec![false; pts.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..16 * (dim + 1) {
            let u: Vec<i64> = (0..dim).map(|_| rng.gen_range(-1000..=1000)).collect();
            let val = |p: &Vec<i64>| p.iter().zip(&u).map(|(a, b)| i128::from(*a) * i128::from(*b)).sum::<i128>();
            let best = pts.iter().map(val).max().expect("nonempty");
            let mut arg = pts.iter().enumerate().filter(|(_, p)| val(p) == best);
            if let (Some((k, _)), None) = (arg.next(), arg.next()) {
                vertex[k] = true;
            }
        }

        let mut alive = vec![true; pts.len()];
        for k in 0..pts.len() {
            if vertex[k] {
                continue;
            }
            let known: Vec<Vec<i64>> = (0..pts.len()).filter(|&v| vertex[v]).map(|v| pts[v].clone()).collect();
            if in_convex_hull(&known, &pts[k]) {
                alive[k] = false;
                continue;
            }
            let rest: Vec<Vec<i64>> = (0..pts.len()).filter(|&v| v != k && alive[v]).map(|v| pts[v].clone()).collect();
            if in_convex_hull(&rest, &pts[k]) {
                alive[k] = false;
            } else {
                vertex[k] = true;
            }
        }
        let vertices = pts.into_iter().zip(vertex).filter_map(|(p, v)| v.then_some(p)).collect();
        Ok(LatticePolytope { dim, vertices })
    }

    pub fn point(p: &[i64]) -> Self {
        LatticePolytope {
            dim: p.len(),
            vertices: vec![p.to_vec()],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        p.len() == self.dim && in_convex_hull(&self.vertices, p)
    }

    /// All integer points of the polytope, sorted.
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        let lo: Vec<i64> = (0..self.dim).map(|c| self.vertices.iter().map(|v| v[c]).min().unwrap()).collect();
        let hi: Vec<i64> = (0..self.dim).map(|c| self.vertices.iter().map(|v| v[c]).max().unwrap()).collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            if self.contains(&cur) {
                out.push(cur.clone());
            }
            // Odometer step, last coordinate fastest.
            let mut c = self.dim;
            loop {
                if c == 0 {
                    return out;
                }
                c -= 1;
                if cur[c] < hi[c] {
                    cur[c] += 1;
                    break;
                }
                cur[c] = lo[c];
            }
        }
    }

    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<LatticePolytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let sums = self
            .vertices
            .iter()
            .flat_map(|a| other.vertices.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>()));
        LatticePolytope::hull(sums)
    }

    /// Minkowski sum of a nonempty family.
    pub fn minkowski_sum_all<'a>(polys: impl IntoIterator<Item = &'a LatticePolytope>) -> Result<LatticePolytope> {
        let mut it = polys.into_iter();
        let first = it.next().ok_or(Error::EmptyPointSet)?.clone();
        it.try_fold(first, |acc, p| acc.minkowski_sum(p))
    }

    pub fn translate(&self, t: &[i64]) -> LatticePolytope {
        LatticePolytope {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect())
                .collect(),
        }
    }

    /// The vector `t` with `other = self + t`, if any.
    pub fn equal_up_to_translation(&self, other: &LatticePolytope) -> Option<Vec<i64>> {
        if self.dim != other.dim || self.vertices.len() != other.vertices.len() {
            return None;
        }
        let t: Vec<i64> = other.vertices[0].iter().zip(&self.vertices[0]).map(|(a, b)| a - b).collect();
        (self.translate(&t) == *other).then_some(t)
    }
}
