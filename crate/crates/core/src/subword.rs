//! The `c`-cluster subword complex on the word `Q = c·w₀(c)`: facets, flips,
//! root/weight/coroot/coweight functions and brick vectors.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::coxeter::{c_sorting_word, element_of_word, longest_element, GroupElement, Word};
use crate::error::{Error, Result};
use crate::rootsys::{Basis, CorootVec, CoweightVec, RootSystem, RootVec, Vector, WeightVec};

/// A facet: a sorted set of `n` positions of `Q`, stored 0-based and printed
/// 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Facet(Vec<usize>);

impl Facet {
    pub fn new(mut positions: Vec<usize>) -> Self {
        positions.sort_unstable();
        positions.dedup();
        Facet(positions)
    }

    pub fn from_one_based(positions: &[usize]) -> Self {
        Facet::new(positions.iter().map(|p| p - 1).collect())
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|p| p + 1).collect()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.0.binary_search(&k).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Replace `i` by `j`.
    pub fn exchange(&self, i: usize, j: usize) -> Facet {
        Facet::new(self.0.iter().map(|&p| if p == i { j } else { p }).collect())
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().map(|p| p + 1).join(","))
    }
}

/// Root, weight, coroot and coweight functions of one facet, for every
/// position of `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootTable {
    pub roots: Vec<RootVec>,
    pub weights: Vec<WeightVec>,
    pub coroots: Vec<CorootVec>,
    pub coweights: Vec<CoweightVec>,
}

impl RootTable {
    /// Root configuration `R(I)`, ordered by position.
    pub fn root_configuration(&self, facet: &Facet) -> Vec<RootVec> {
        facet.positions().iter().map(|&i| self.roots[i].clone()).collect()
    }

    pub fn weight_configuration(&self, facet: &Facet) -> Vec<WeightVec> {
        facet.positions().iter().map(|&i| self.weights[i].clone()).collect()
    }

    pub fn coroot_configuration(&self, facet: &Facet) -> Vec<CorootVec> {
        facet.positions().iter().map(|&i| self.coroots[i].clone()).collect()
    }

    pub fn coweight_configuration(&self, facet: &Facet) -> Vec<CoweightVec> {
        facet.positions().iter().map(|&i| self.coweights[i].clone()).collect()
    }

    /// `b(I) = Σ_k w(I,k)`.
    pub fn brick_vector(&self) -> WeightVec {
        let n = self.weights[0].len();
        self.weights.iter().fold(WeightVec::zero(n), |acc, w| &acc + w)
    }
}

/// A facet together with its cached table.
#[derive(Debug, Clone)]
pub struct FacetData {
    pub facet: Facet,
    pub table: RootTable,
}

/// The subword complex `SC(c·w₀(c))`.
#[derive(Debug, Clone)]
pub struct Complex {
    rs: RootSystem,
    c: Word,
    q: Word,
    w0: GroupElement,
    pos_root: Vec<RootVec>,
    antigreedy: Facet,
}

impl Complex {
    pub fn new(rs: RootSystem, c: Word) -> Result<Self> {
        let n = rs.rank();
        if !c.is_coxeter_word(n) {
            return Err(Error::NotCoxeterWord(c.to_string()));
        }
        let w0 = longest_element(&rs);
        let sorting = c_sorting_word(&rs, &c, &w0)?;
        let q = c.concat(&sorting);
        let mut pos_root: Vec<RootVec> = c.letters().iter().map(|&s| -&rs.simple_root(s)).collect();
        let mut prefix = GroupElement::identity(n);
        for &s in sorting.letters() {
            pos_root.push(prefix.apply(&rs.simple_root(s)));
            prefix = prefix.compose(&GroupElement::simple_reflection(rs.cartan(), s));
        }
        debug_assert_eq!(prefix, w0);
        let mut complex = Complex {
            rs,
            c,
            q,
            w0,
            pos_root,
            antigreedy: Facet::new(Vec::new()),
        };
        complex.antigreedy = complex.walk_to_antigreedy()?;
        Ok(complex)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn coxeter_word(&self) -> &Word {
        &self.c
    }

    /// The word `Q = c·w₀(c)`.
    pub fn word(&self) -> &Word {
        &self.q
    }

    /// `m = n + N`.
    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    pub fn longest_element(&self) -> &GroupElement {
        &self.w0
    }

    /// The almost positive root attached to each position.
    pub fn position_roots(&self) -> &[RootVec] {
        &self.pos_root
    }

    /// Position of an almost positive root.
    pub fn position_of_root(&self, beta: &RootVec) -> Option<usize> {
        self.pos_root.iter().position(|r| r == beta)
    }

    pub fn letter(&self, k: usize) -> usize {
        self.q.letters()[k]
    }

    pub fn greedy_facet(&self) -> Facet {
        Facet::new((0..self.rank()).collect())
    }

    /// The lexicographically last facet. It need not consist of the last
    /// `n` positions.
    pub fn antigreedy_facet(&self) -> Facet {
        self.antigreedy.clone()
    }

    // Increasing flips terminate, and only at the facet without any.
    fn walk_to_antigreedy(&self) -> Result<Facet> {
        let mut facet = self.greedy_facet();
        let mut table = self.table(&facet);
        'outer: loop {
            for &i in facet.positions() {
                let (next, j) = self.flip_with_table(&facet, &table, i)?;
                if j > i {
                    table = self.update_after_flip(&table, i, j);
                    facet = next;
                    continue 'outer;
                }
            }
            return Ok(facet);
        }
    }

    /// Whether the complement of `positions` spells a word for `w₀`. Since
    /// the complement has exactly `N` letters, such a word is reduced.
    pub fn is_facet(&self, facet: &Facet) -> bool {
        if facet.len() != self.rank() || facet.positions().iter().any(|&p| p >= self.len()) {
            return false;
        }
        let comp = Word::new(
            (0..self.len())
                .filter(|&k| !facet.contains(k))
                .map(|k| self.letter(k))
                .collect(),
        );
        element_of_word(self.rs.cartan(), &comp).map(|g| g == self.w0).unwrap_or(false)
    }

    fn check_facet(&self, facet: &Facet) -> Result<()> {
        if self.is_facet(facet) {
            Ok(())
        } else {
            Err(Error::Invariant(format!("{facet} is not a facet")))
        }
    }

    fn prefix_apply<B: Basis>(&self, facet: &Facet, k: usize, mut v: Vector<B>) -> Vector<B> {
        let cartan = self.rs.cartan();
        for x in (0..k).rev() {
            if !facet.contains(x) {
                cartan.reflect_in_place(self.letter(x), &mut v);
            }
        }
        v
    }

    /// `r(I,k) = Π_{Q,[k−1]∖I}(α_{q_k})`, computed directly.
    pub fn root_function(&self, facet: &Facet, k: usize) -> RootVec {
        self.prefix_apply(facet, k, RootVec::unit(self.rank(), self.letter(k)))
    }

    pub fn weight_function(&self, facet: &Facet, k: usize) -> WeightVec {
        self.prefix_apply(facet, k, WeightVec::unit(self.rank(), self.letter(k)))
    }

    pub fn coroot_function(&self, facet: &Facet, k: usize) -> CorootVec {
        self.prefix_apply(facet, k, CorootVec::unit(self.rank(), self.letter(k)))
    }

    pub fn coweight_function(&self, facet: &Facet, k: usize) -> CoweightVec {
        self.prefix_apply(facet, k, CoweightVec::unit(self.rank(), self.letter(k)))
    }

    /// The full table of `facet` by the direct product formula.
    pub fn table(&self, facet: &Facet) -> RootTable {
        let m = self.len();
        RootTable {
            roots: (0..m).map(|k| self.root_function(facet, k)).collect(),
            weights: (0..m).map(|k| self.weight_function(facet, k)).collect(),
            coroots: (0..m).map(|k| self.coroot_function(facet, k)).collect(),
            coweights: (0..m).map(|k| self.coweight_function(facet, k)).collect(),
        }
    }

    /// Flip position `i` out of `facet` given its table: returns the new
    /// facet and the entering position `j`.
    pub fn flip_with_table(&self, facet: &Facet, table: &RootTable, i: usize) -> Result<(Facet, usize)> {
        if !facet.contains(i) {
            return Err(Error::Invariant(format!("position {} not in {facet}", i + 1)));
        }
        let beta = &table.roots[i];
        let neg = -beta;
        let mut partners = (0..self.len())
            .filter(|&k| !facet.contains(k))
            .filter(|&k| table.roots[k] == *beta || table.roots[k] == neg);
        let j = partners
            .next()
            .ok_or_else(|| Error::Invariant(format!("no flip partner for {} in {facet}", i + 1)))?;
        if partners.next().is_some() {
            return Err(Error::Invariant(format!("flip partner of {} in {facet} not unique", i + 1)));
        }
        Ok((facet.exchange(i, j), j))
    }

    pub fn flip(&self, facet: &Facet, i: usize) -> Result<(Facet, usize)> {
        self.check_facet(facet)?;
        self.flip_with_table(facet, &self.table(facet), i)
    }

    /// The table of the facet obtained by flipping `i` (entering `j`):
    /// entries at `min(i,j) < k ≤ max(i,j)` get reflected in `r(I,i)`.
    pub fn update_after_flip(&self, table: &RootTable, i: usize, j: usize) -> RootTable {
        let cartan = self.rs.cartan();
        let beta = table.roots[i].clone();
        let beta_vee = table.coroots[i].clone();
        let (lo, hi) = (i.min(j), i.max(j));
        let mut out = table.clone();
        for k in lo + 1..=hi {
            out.roots[k] = cartan.reflect_in(&beta, &beta_vee, &table.roots[k]);
            out.weights[k] = cartan.reflect_in(&beta, &beta_vee, &table.weights[k]);
            out.coroots[k] = cartan.reflect_in(&beta, &beta_vee, &table.coroots[k]);
            out.coweights[k] = cartan.reflect_in(&beta, &beta_vee, &table.coweights[k]);
        }
        out
    }

    pub fn brick_vector(&self, facet: &Facet) -> WeightVec {
        let n = self.rank();
        (0..self.len()).fold(WeightVec::zero(n), |acc, k| &acc + &self.weight_function(facet, k))
    }

    /// Breadth-first closure under flips from the greedy facet, with tables
    /// built incrementally. Sorted by facet.
    ///
    /// Every 20th discovered facet, plus the greedy and antigreedy facets,
    /// has its incremental table compared with the direct formula.
    pub fn enumerate_with_tables(&self) -> Result<Vec<FacetData>> {
        let greedy = self.greedy_facet();
        let antigreedy = self.antigreedy_facet();
        let mut seen: HashMap<Facet, usize> = HashMap::new();
        let mut out: Vec<FacetData> = Vec::new();
        let mut queue = VecDeque::new();
        let table = self.table(&greedy);
        seen.insert(greedy.clone(), 0);
        out.push(FacetData {
            facet: greedy,
            table,
        });
        queue.push_back(0usize);
        while let Some(idx) = queue.pop_front() {
            let facet = out[idx].facet.clone();
            for &i in facet.positions() {
                let (next, j) = self.flip_with_table(&facet, &out[idx].table, i)?;
                if seen.contains_key(&next) {
                    continue;
                }
                let table = self.update_after_flip(&out[idx].table, i, j);
                let id = out.len();
                if id.is_multiple_of(20) || next == antigreedy {
                    let direct = self.table(&next);
                    if direct != table {
                        return Err(Error::Invariant(format!(
                            "incremental table of {next} disagrees with the direct formula"
                        )));
                    }
                }
                seen.insert(next.clone(), id);
                out.push(FacetData { facet: next, table });
                queue.push_back(id);
            }
        }
        out.sort_by(|a, b| a.facet.cmp(&b.facet));
        Ok(out)
    }

    pub fn enumerate_facets(&self) -> Result<Vec<Facet>> {
        Ok(self.enumerate_with_tables()?.into_iter().map(|d| d.facet).collect())
    }

    /// Every `n`-subset whose complement multiplies to `w₀`.
    pub fn brute_force_facets(&self) -> Vec<Facet> {
        (0..self.len())
            .combinations(self.rank())
            .map(Facet::new)
            .filter(|f| self.is_facet(f))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn complex(t: &str, c: &str) -> Complex {
        Complex::new(RootSystem::from_type_str(t).unwrap(), c.parse().unwrap()).unwrap()
    }

    fn f(p: &[usize]) -> Facet {
        Facet::from_one_based(p)
    }

    fn roots(v: &[RootVec]) -> Vec<Vec<i64>> {
        v.iter().map(|r| r.coords().to_vec()).collect()
    }

    #[test]
    fn build_a2() {
        let k = complex("A2", "1,2");
        assert_eq!(k.word().one_based(), vec![1, 2, 1, 2, 1]);
        assert_eq!(
            roots(k.position_roots()),
            vec![vec![-1, 0], vec![0, -1], vec![1, 0], vec![1, 1], vec![0, 1]]
        );
        let k1 = complex("A1", "1");
        assert_eq!(k1.word().one_based(), vec![1, 1]);
        assert_eq!(roots(k1.position_roots()), vec![vec![-1], vec![1]]);
    }

    #[test]
    fn build_a3() {
        let k = complex("A3", "1,3,2");
        assert_eq!(k.len(), 9);
        assert_eq!(
            roots(&k.position_roots()[3..]),
            vec![
                vec![1, 0, 0],
                vec![0, 0, 1],
                vec![1, 1, 1],
                vec![0, 1, 1],
                vec![1, 1, 0],
                vec![0, 1, 0]
            ]
        );
    }

    #[test]
    fn configurations_a2() {
        let k = complex("A2", "1,2");
        let i = f(&[3, 4]);
        let t = k.table(&i);
        assert_eq!(roots(&t.root_configuration(&i)), vec![vec![0, 1], vec![-1, -1]]);
        let w: Vec<Vec<i64>> = t.weight_configuration(&i).iter().map(|w| w.coords().to_vec()).collect();
        assert_eq!(w, vec![vec![-1, 1], vec![-1, 0]]);
        let g = k.greedy_facet();
        for p in 0..2 {
            assert_eq!(k.root_function(&g, p), RootVec::unit(2, k.letter(p)));
        }
    }

    #[test]
    fn flips_a2() {
        let k = complex("A2", "1,2");
        assert_eq!(k.flip(&f(&[1, 2]), 0).unwrap(), (f(&[2, 3]), 2));
        assert_eq!(k.flip(&f(&[3, 4]), 2).unwrap(), (f(&[4, 5]), 4));
        assert_eq!(k.flip(&f(&[3, 4]), 3).unwrap(), (f(&[2, 3]), 1));
        for facet in k.enumerate_facets().unwrap() {
            for &i in facet.positions() {
                let (j_facet, j) = k.flip(&facet, i).unwrap();
                assert_eq!(k.flip(&j_facet, j).unwrap(), (facet.clone(), i));
            }
        }
        assert!(k.flip(&f(&[1, 3]), 0).is_err());
    }

    #[test]
    fn update_matches_direct_everywhere_in_a2() {
        let k = complex("A2", "1,2");
        for facet in k.enumerate_facets().unwrap() {
            let t = k.table(&facet);
            for &i in facet.positions() {
                let (next, j) = k.flip_with_table(&facet, &t, i).unwrap();
                let upd = k.update_after_flip(&t, i, j);
                assert_eq!(upd, k.table(&next));
                for p in 0..=i.min(j) {
                    assert_eq!(upd.roots[p], t.roots[p]);
                }
            }
        }
        let t = k.update_after_flip(&k.table(&f(&[1, 2])), 0, 2);
        let w: Vec<Vec<i64>> = t.weights.iter().map(|w| w.coords().to_vec()).collect();
        assert_eq!(w, vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![0, 1], vec![-1, 1]]);
    }

    #[test]
    fn greedy_antigreedy() {
        let k = complex("A2", "1,2");
        assert_eq!(k.greedy_facet(), f(&[1, 2]));
        assert_eq!(k.antigreedy_facet(), f(&[4, 5]));
        let k3 = complex("A3", "1,3,2");
        assert_eq!(k3.greedy_facet(), f(&[1, 2, 3]));
        assert_eq!(k3.antigreedy_facet(), f(&[7, 8, 9]));
        let k4 = complex("A3", "1,2,3");
        assert_eq!(k4.antigreedy_facet(), f(&[6, 8, 9]));
        let k1 = complex("A1", "1");
        assert_eq!((k1.greedy_facet(), k1.antigreedy_facet()), (f(&[1]), f(&[2])));
        for kk in [&k, &k3, &k4] {
            let all = kk.enumerate_facets().unwrap();
            assert_eq!(all.iter().max(), Some(&kk.antigreedy_facet()));
            let g = kk.greedy_facet();
            for &i in g.positions() {
                assert!(kk.flip(&g, i).unwrap().1 > i);
            }
            let ag = kk.antigreedy_facet();
            for &i in ag.positions() {
                assert!(kk.flip(&ag, i).unwrap().1 < i);
            }
        }
    }

    #[test]
    fn brick_vectors_a2() {
        let k = complex("A2", "1,2");
        assert_eq!(k.brick_vector(&f(&[1, 2])).coords(), &[1, 3]);
        assert_eq!(k.brick_vector(&f(&[4, 5])).coords(), &[-1, 1]);
        let ag = k.brick_vector(&k.antigreedy_facet());
        let cartan = k.root_system().cartan();
        let mut diffs: Vec<Vec<i64>> = k
            .enumerate_facets()
            .unwrap()
            .iter()
            .map(|i| {
                cartan
                    .weight_diff_to_root_coords(&k.brick_vector(i), &ag)
                    .unwrap()
                    .coords()
                    .to_vec()
            })
            .collect();
        diffs.sort();
        let mut want = vec![vec![2, 2], vec![1, 2], vec![0, 1], vec![0, 0], vec![2, 0]];
        want.sort();
        assert_eq!(diffs, want);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let k = complex("A2", "1,2");
        let want: Vec<Facet> = [[1, 2], [1, 5], [2, 3], [3, 4], [4, 5]].iter().map(|p| f(p)).collect();
        assert_eq!(k.enumerate_facets().unwrap(), want);
        assert_eq!(k.brute_force_facets(), want);
        assert_eq!(complex("A3", "1,3,2").enumerate_facets().unwrap().len(), 14);
        assert_eq!(complex("A1", "1").enumerate_facets().unwrap(), vec![f(&[1]), f(&[2])]);
        let b2 = Complex::new(RootSystem::of_type(Family::B, 2).unwrap(), "1,2".parse().unwrap()).unwrap();
        assert_eq!(b2.brute_force_facets().len(), 6);
        assert_eq!(complex("G2", "2,1").brute_force_facets().len(), 8);
    }

    #[test]
    fn rejects_bad_coxeter_word() {
        assert!(Complex::new(RootSystem::from_type_str("A2").unwrap(), "1,1".parse().unwrap()).is_err());
    }
}
