//! Type `A_n` models: the triangulation `T_c` of the `(n+3)`-gon, T-paths,
//! restricted prefixes of `c`, and the weight intervals of the subword
//! complex.
//!
//! Polygon vertices are `0..n+3` in counterclockwise order. Diagonal `τ_ℓ`
//! has label `ℓ − 1` internally.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;

use crate::cluster::FPolynomial;
use crate::coxeter::{restricted_prefixes, Word};
use crate::error::{Error, Result};
use crate::rootsys::{CartanMatrix, WeightVec};
use crate::subword::Complex;

/// The triangulation `T_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    n: usize,
    c: Word,
    diagonals: Vec<(usize, usize)>,
    distinguished: Vec<usize>,
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Triangulation {
    /// `T_c` with `v₁` at vertex 0.
    pub fn of_coxeter(c: &Word, n: usize) -> Result<Self> {
        Self::of_coxeter_from(c, n, 0)
    }

    /// `T_c` with `v₁` at vertex `start`.
    pub fn of_coxeter_from(c: &Word, n: usize, start: usize) -> Result<Self> {
        if !c.is_coxeter_word(n) {
            return Err(Error::NotCoxeterWord(c.to_string()));
        }
        let size = n + 3;
        let mut place = vec![0; n];
        for (k, &s) in c.letters().iter().enumerate() {
            place[s] = k;
        }
        let mut poly: Vec<usize> = (0..size).collect();
        let mut v = start % size;
        let mut diagonals = Vec::with_capacity(n);
        let mut distinguished = Vec::with_capacity(n);
        let mut prev = (0, 0);
        for i in 0..n {
            if i > 0 {
                // Clockwise if τ_i comes before τ_{i−1} in c.
                v = if place[i] < place[i - 1] { prev.0 } else { prev.1 };
            }
            let idx = poly.iter().position(|&p| p == v).expect("vertex present");
            let len = poly.len();
            let cw = poly[(idx + len - 1) % len];
            let ccw = poly[(idx + 1) % len];
            diagonals.push(ordered(cw, ccw));
            distinguished.push(v);
            prev = (cw, ccw);
            poly.remove(idx);
        }
        Ok(Triangulation {
            n,
            c: c.clone(),
            diagonals,
            distinguished,
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        self.n + 3
    }

    pub fn coxeter_word(&self) -> &Word {
        &self.c
    }

    /// `τ_1..τ_n` as vertex pairs.
    pub fn diagonals(&self) -> &[(usize, usize)] {
        &self.diagonals
    }

    /// The vertices `v₁..v_n` of the construction.
    pub fn distinguished_vertices(&self) -> &[usize] {
        &self.distinguished
    }

    pub fn is_boundary(&self, a: usize, b: usize) -> bool {
        let m = self.num_vertices();
        a != b && ((a + 1) % m == b || (b + 1) % m == a)
    }

    pub fn diagonal_label(&self, a: usize, b: usize) -> Option<usize> {
        self.diagonals.iter().position(|&d| d == ordered(a, b))
    }

    /// Boundary edge or diagonal of the triangulation.
    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        self.is_boundary(a, b) || self.diagonal_label(a, b).is_some()
    }

    /// Whether two chords of the polygon cross in their interiors.
    pub fn crosses(d: (usize, usize), e: (usize, usize)) -> bool {
        let (a, b) = ordered(d.0, d.1);
        let inside = |x: usize| a < x && x < b;
        let distinct = [e.0, e.1].iter().all(|x| *x != a && *x != b);
        distinct && inside(e.0) != inside(e.1)
    }

    /// Triangles of the triangulation as sorted vertex triples.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let m = self.num_vertices();
        (0..m)
            .tuple_combinations()
            .filter(|&(a, b, c)| self.is_edge(a, b) && self.is_edge(b, c) && self.is_edge(a, c))
            .map(|(a, b, c)| [a, b, c])
            .collect()
    }

    /// The diagonal crossing exactly `τ_i..τ_j` (0-based labels), oriented
    /// so that it crosses them in this order.
    pub fn diagonal_of_root(&self, i: usize, j: usize) -> Result<Gamma> {
        if i > j || j >= self.n {
            return Err(Error::IndexOutOfRange { index: j + 1, rank: self.n });
        }
        let m = self.num_vertices();
        let want: BTreeSet<usize> = (i..=j).collect();
        let found: Vec<(usize, usize)> = (0..m)
            .tuple_combinations()
            .filter(|&(a, b)| !self.is_edge(a, b))
            .filter(|&(a, b)| {
                let crossed: BTreeSet<usize> =
                    (0..self.n).filter(|&l| Self::crosses((a, b), self.diagonals[l])).collect();
                crossed == want
            })
            .collect();
        let &[(a, b)] = found.as_slice() else {
            return Err(Error::Invariant(format!(
                "{} diagonals cross exactly τ{}..τ{}",
                found.len(),
                i + 1,
                j + 1
            )));
        };
        for (start, end) in [(a, b), (b, a)] {
            let g = self.orient(start, end, &want);
            if g.crossed.first() == Some(&i) {
                if g.crossed != (i..=j).collect::<Vec<_>>() {
                    return Err(Error::Invariant(format!(
                        "diagonal {a}–{b} crosses τ{}..τ{} out of order",
                        i + 1,
                        j + 1
                    )));
                }
                return Ok(g);
            }
        }
        Err(Error::Invariant(format!("no orientation of {a}–{b} starts at τ{}", i + 1)))
    }

    fn orient(&self, start: usize, end: usize, labels: &BTreeSet<usize>) -> Gamma {
        let m = self.num_vertices();
        // Number of vertices strictly on the side of `start`; grows along γ.
        let side = |(x, y): (usize, usize)| -> usize {
            if x < start && start < y {
                y - x - 1
            } else {
                m - (y - x + 1)
            }
        };
        let crossed: Vec<usize> = labels.iter().copied().sorted_by_key(|&l| side(self.diagonals[l])).collect();
        let d = crossed.len();
        let positive = (0..d)
            .map(|k| {
                let (p, q) = self.diagonals[crossed[k]];
                let third = if k + 1 < d {
                    let (r, s) = self.diagonals[crossed[k + 1]];
                    if r == p || r == q {
                        s
                    } else {
                        r
                    }
                } else {
                    end
                };
                let mut tri = [p, q, third];
                tri.sort_unstable();
                let ccw = [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])];
                if ccw.contains(&(p, q)) {
                    (p, q)
                } else {
                    (q, p)
                }
            })
            .collect();
        Gamma {
            start,
            end,
            crossed,
            positive,
        }
    }

    /// Name of an edge of the triangulation: boundary edge `{k, k+1}` is the
    /// letter `A + k`, diagonal `τ_ℓ` is `ℓ`.
    pub fn edge_name(&self, a: usize, b: usize) -> String {
        if let Some(l) = self.diagonal_label(a, b) {
            return (l + 1).to_string();
        }
        let m = self.num_vertices();
        let k = if (a + 1) % m == b { a } else { b };
        char::from(b'A' + k as u8).to_string()
    }

    /// All T-paths along `γ`: every sign choice whose consecutive steps meet
    /// at distinct vertices, so that the odd steps are edges of `T`.
    pub fn enumerate_tpaths(&self, gamma: &Gamma) -> Vec<TPath> {
        let d = gamma.crossed.len();
        (0..1u64 << d)
            .map(|mask| (0..d).map(|k| mask >> k & 1 == 1).collect::<Vec<_>>())
            .filter_map(|signs| TPath::new(self, gamma, signs).ok())
            .sorted_by(|a, b| b.signs.cmp(&a.signs))
            .collect()
    }

    /// `F` as the sum of `m[ζ]` over T-paths.
    pub fn f_poly_via_tpaths(&self, i: usize, j: usize) -> Result<FPolynomial> {
        let gamma = self.diagonal_of_root(i, j)?;
        let mut terms: BTreeMap<Vec<i64>, num_bigint::BigInt> = BTreeMap::new();
        for p in self.enumerate_tpaths(&gamma) {
            *terms.entry(p.monomial(self.n)).or_default() += 1;
        }
        Ok(FPolynomial::new(self.n, terms))
    }

    /// Whether a sign sequence obeys the adjacency rules determined by the
    /// relative order of consecutive letters in `c`.
    pub fn satisfies_adjacency_rules(&self, gamma: &Gamma, signs: &[bool]) -> bool {
        let place = |s: usize| self.c.letters().iter().position(|&l| l == s).expect("Coxeter word");
        (1..signs.len()).all(|k| {
            let (prev, cur) = (gamma.crossed[k - 1], gamma.crossed[k]);
            if place(cur) < place(prev) {
                !signs[k - 1] || signs[k]
            } else {
                signs[k - 1] || !signs[k]
            }
        })
    }
}

/// A diagonal `γ ∉ T` oriented from `start` to `end`, with the labels of
/// the diagonals `t_1..t_d` it crosses, in order, and for each the
/// positive direction from the counterclockwise orientation of the
/// triangle `γ` enters after crossing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gamma {
    pub start: usize,
    pub end: usize,
    pub crossed: Vec<usize>,
    pub positive: Vec<(usize, usize)>,
}

/// A T-path, given by the direction in which it travels each `t_k`
/// (`true` for positive).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TPath {
    pub signs: Vec<bool>,
    /// `v_a, s_1, e_1, …, s_d, e_d, v_b`.
    pub vertices: Vec<usize>,
    pub labels: Vec<usize>,
    steps: Vec<String>,
}

impl TPath {
    pub fn new(t: &Triangulation, gamma: &Gamma, signs: Vec<bool>) -> Result<TPath> {
        let d = gamma.crossed.len();
        if signs.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: signs.len() });
        }
        let mut vertices = vec![gamma.start];
        for k in 0..d {
            let (p, q) = gamma.positive[k];
            if signs[k] {
                vertices.extend([p, q]);
            } else {
                vertices.extend([q, p]);
            }
        }
        vertices.push(gamma.end);
        let mut steps = Vec::with_capacity(2 * d + 1);
        for (idx, w) in vertices.windows(2).enumerate() {
            if idx % 2 == 0 {
                if w[0] == w[1] || !t.is_edge(w[0], w[1]) {
                    return Err(Error::Invariant(format!("step {}–{} is not an edge", w[0], w[1])));
                }
                steps.push(t.edge_name(w[0], w[1]));
            } else {
                let k = idx / 2;
                steps.push(format!("{}{}", gamma.crossed[k] + 1, if signs[k] { '+' } else { '-' }));
            }
        }
        Ok(TPath {
            signs,
            vertices,
            labels: gamma.crossed.clone(),
            steps,
        })
    }

    /// `m[ζ]`: the product of `y_ℓ` over positively traveled `τ_ℓ`.
    pub fn monomial(&self, n: usize) -> Vec<i64> {
        let mut e = vec![0; n];
        for (k, &s) in self.signs.iter().enumerate() {
            if s {
                e[self.labels[k]] += 1;
            }
        }
        e
    }

    /// Reverse the direction of `τ_ℓ` (0-based), which must be crossed.
    pub fn flip(&self, t: &Triangulation, gamma: &Gamma, label: usize) -> Result<TPath> {
        let k = self
            .labels
            .iter()
            .position(|&l| l == label)
            .ok_or_else(|| Error::Invariant(format!("τ{} is not crossed", label + 1)))?;
        let mut signs = self.signs.clone();
        signs[k] = !signs[k];
        TPath::new(t, gamma, signs)
    }
}

impl fmt::Display for TPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.steps.join(" "))
    }
}

/// `F = Σ y_{i_1}⋯y_{i_m}` over prefixes of `c` restricted to `τ_i..τ_j`.
pub fn f_poly_via_prefixes(c: &Word, n: usize, i: usize, j: usize) -> FPolynomial {
    let mut terms: BTreeMap<Vec<i64>, num_bigint::BigInt> = BTreeMap::new();
    for p in restricted_prefixes(c, i, j) {
        *terms.entry(indicator(&p, n)).or_default() += 1;
    }
    FPolynomial::new(n, terms)
}

fn indicator(w: &Word, n: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    for &l in w.letters() {
        e[l] += 1;
    }
    e
}

/// For every interval `i ≤ j`, the indicator vectors of the prefixes of `c`
/// restricted to `τ_i..τ_j`.
pub fn loday_summands(c: &Word, n: usize) -> Vec<((usize, usize), Vec<Vec<i64>>)> {
    (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let pts = restricted_prefixes(c, i, j).iter().map(|p| indicator(p, n)).collect();
            ((i, j), pts)
        })
        .collect()
}

/// The T-path reached from the antigreedy path by flipping the letters of
/// `prefix` one at a time, first letter first. Every intermediate path must
/// be valid.
pub fn tpath_of_prefix(t: &Triangulation, gamma: &Gamma, prefix: &Word) -> Result<TPath> {
    let mut p = TPath::new(t, gamma, vec![false; gamma.crossed.len()])?;
    for &l in prefix.letters() {
        p = p.flip(t, gamma, l)?;
    }
    Ok(p)
}

/// The `W`-orbits of all fundamental weights.
pub fn weight_orbits(cartan: &CartanMatrix) -> BTreeSet<WeightVec> {
    let n = cartan.rank();
    let mut seen: HashSet<WeightVec> = HashSet::new();
    let mut queue: VecDeque<WeightVec> = (0..n).map(|s| WeightVec::unit(n, s)).collect();
    seen.extend(queue.iter().cloned());
    while let Some(w) = queue.pop_front() {
        for s in 0..n {
            let v = cartan.reflect(s, &w).expect("index in range");
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen.into_iter().collect()
}

/// `Ω(k)`: the weights `ω` in the orbits of the fundamental weights with
/// `w(G,k) − ω` and `ω − w(AG,k)` both in the positive cone of the root
/// lattice.
pub fn weight_interval(complex: &Complex, orbits: &BTreeSet<WeightVec>, k: usize) -> BTreeSet<WeightVec> {
    let cartan = complex.root_system().cartan();
    let top = complex.weight_function(&complex.greedy_facet(), k);
    let bottom = complex.weight_function(&complex.antigreedy_facet(), k);
    let nonneg = |a: &WeightVec, b: &WeightVec| {
        cartan
            .weight_diff_to_root_coords(a, b)
            .map(|r| r.is_nonnegative())
            .unwrap_or(false)
    };
    orbits
        .iter()
        .filter(|w| nonneg(&top, w) && nonneg(w, &bottom))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{Family, RootSystem};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn triangulations() {
        let t = Triangulation::of_coxeter(&w("1"), 1).unwrap();
        assert_eq!(t.diagonals(), &[(1, 3)]);
        assert_eq!(t.triangles().len(), 2);
        for c in ["1,3,2", "3,2,1,4", "1,2,3,4", "2,4,1,3"] {
            let n = c.split(',').count();
            let t = Triangulation::of_coxeter(&w(c), n).unwrap();
            assert_eq!(t.triangles().len(), n + 1);
            for (a, b) in t.diagonals().iter().tuple_combinations() {
                assert!(!Triangulation::crosses(*a, *b));
            }
            // No triangle consists of three diagonals.
            for tri in t.triangles() {
                let inner = [(tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])]
                    .iter()
                    .all(|&(a, b)| !t.is_boundary(a, b));
                assert!(!inner, "{c}");
            }
        }
    }

    #[test]
    fn gammas_a3() {
        let t = Triangulation::of_coxeter(&w("1,3,2"), 3).unwrap();
        assert_eq!(t.diagonal_of_root(0, 2).unwrap().crossed, vec![0, 1, 2]);
        assert_eq!(t.diagonal_of_root(1, 2).unwrap().crossed, vec![1, 2]);
        for l in 0..3 {
            assert_eq!(t.diagonal_of_root(l, l).unwrap().crossed, vec![l]);
        }
    }

    #[test]
    fn tpath_counts_a3() {
        let t = Triangulation::of_coxeter(&w("1,3,2"), 3).unwrap();
        let count = |i, j| t.enumerate_tpaths(&t.diagonal_of_root(i, j).unwrap()).len();
        assert_eq!(count(0, 2), 5);
        assert_eq!(count(1, 1), 2);
        assert_eq!(count(1, 2), 3);
        let g = t.diagonal_of_root(0, 2).unwrap();
        let paths = t.enumerate_tpaths(&g);
        assert!(paths.iter().any(|p| p.signs.iter().all(|&s| s)));
        assert!(paths.iter().any(|p| p.signs.iter().all(|&s| !s)));
    }

    #[test]
    fn f_polynomials_a3() {
        let c = w("1,3,2");
        let t = Triangulation::of_coxeter(&c, 3).unwrap();
        let golden = [
            ((0, 0), "y1 + 1"),
            ((2, 2), "y3 + 1"),
            ((0, 2), "y1*y2*y3 + y1*y3 + y1 + y3 + 1"),
            ((1, 2), "y2*y3 + y3 + 1"),
            ((0, 1), "y1*y2 + y1 + 1"),
            ((1, 1), "y2 + 1"),
        ];
        for ((i, j), f) in golden {
            assert_eq!(t.f_poly_via_tpaths(i, j).unwrap().to_string(), f);
            assert_eq!(f_poly_via_prefixes(&c, 3, i, j).to_string(), f);
        }
    }

    #[test]
    fn greedy_path_monomial_a4() {
        let t = Triangulation::of_coxeter(&w("3,2,1,4"), 4).unwrap();
        let g = t.diagonal_of_root(1, 3).unwrap();
        let paths = t.enumerate_tpaths(&g);
        assert_eq!(paths.len(), 5);
        let greedy = paths.iter().find(|p| p.signs.iter().all(|&s| s)).unwrap();
        assert_eq!(greedy.monomial(4), vec![0, 1, 1, 1]);
        let mut monos: Vec<Vec<i64>> = paths.iter().map(|p| p.monomial(4)).collect();
        monos.sort();
        assert_eq!(
            monos,
            vec![vec![0, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 1, 1], vec![0, 1, 1, 0], vec![0, 1, 1, 1]]
        );
    }

    #[test]
    fn geometric_validity_matches_adjacency_rules() {
        for n in 1..=5 {
            let a = CartanMatrix::of_type(Family::A, n).unwrap();
            for c in crate::coxeter::coxeter_elements(&a) {
                let t = Triangulation::of_coxeter(&c, n).unwrap();
                for i in 0..n {
                    for j in i..n {
                        let g = t.diagonal_of_root(i, j).unwrap();
                        for mask in 0..1u64 << (j - i + 1) {
                            let signs: Vec<bool> = (0..=j - i).map(|k| mask >> k & 1 == 1).collect();
                            let geometric = TPath::new(&t, &g, signs.clone()).is_ok();
                            assert_eq!(geometric, t.satisfies_adjacency_rules(&g, &signs), "{c} {i} {j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn prefix_bijection() {
        let c = w("1,3,2");
        let t = Triangulation::of_coxeter(&c, 3).unwrap();
        let g = t.diagonal_of_root(0, 2).unwrap();
        let from_prefixes: BTreeSet<Vec<bool>> = restricted_prefixes(&c, 0, 2)
            .iter()
            .map(|p| tpath_of_prefix(&t, &g, p).unwrap().signs)
            .collect();
        let all: BTreeSet<Vec<bool>> = t.enumerate_tpaths(&g).into_iter().map(|p| p.signs).collect();
        assert_eq!(from_prefixes, all);
    }

    #[test]
    fn rotation_invariance() {
        let c = w("1,3,2");
        let base = Triangulation::of_coxeter(&c, 3).unwrap();
        for start in 1..6 {
            let rot = Triangulation::of_coxeter_from(&c, 3, start).unwrap();
            for i in 0..3 {
                for j in i..3 {
                    assert_eq!(rot.f_poly_via_tpaths(i, j).unwrap(), base.f_poly_via_tpaths(i, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn loday() {
        let s = loday_summands(&w("1,3,2"), 3);
        assert_eq!(s.len(), 6);
        let get = |i, j| {
            let mut v = s.iter().find(|(k, _)| *k == (i, j)).unwrap().1.clone();
            v.sort();
            v
        };
        assert_eq!(get(0, 1), vec![vec![0, 0, 0], vec![1, 0, 0], vec![1, 1, 0]]);
        assert_eq!(get(2, 2), vec![vec![0, 0, 0], vec![0, 0, 1]]);
        assert_eq!(
            get(0, 2),
            vec![vec![0, 0, 0], vec![0, 0, 1], vec![1, 0, 0], vec![1, 0, 1], vec![1, 1, 1]]
        );
    }

    #[test]
    fn weight_intervals_a3() {
        let rs = RootSystem::of_type(Family::A, 3).unwrap();
        let orbits = weight_orbits(rs.cartan());
        assert_eq!(orbits.len(), 4 + 6 + 4);
        let k = Complex::new(rs, w("1,3,2")).unwrap();
        let facets = k.enumerate_facets().unwrap();
        for pos in 0..k.len() {
            let realized: BTreeSet<WeightVec> = facets.iter().map(|f| k.weight_function(f, pos)).collect();
            assert_eq!(weight_interval(&k, &orbits, pos), realized);
        }
    }
}
