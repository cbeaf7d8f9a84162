//! Checkers that run the subword complex and the cluster algebra side by
//! side and compare them.
//!
//! A [`Model`] walks the flip graph and the exchange graph together: flipping
//! position `i` of a facet corresponds to mutating the seed in the column
//! whose cluster variable has d-vector `pos_root(i)`. Each check then reads
//! both sides off the model and produces a [`Report`].

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cluster::{d_vector, exchange_matrix, f_polynomial, g_from_f, g_vector, FPolynomial, Seed};
use crate::coxeter::{coxeter_elements, Word};
use crate::error::{Error, Result};
use crate::laurent::MPoly;
use crate::polytope::LatticePolytope;
use crate::rootsys::{CartanMatrix, Family, RootSystem, RootVec, WeightVec};
use crate::subword::{Complex, Facet, RootTable};
use crate::typea::{
    f_poly_via_prefixes, loday_summands, tpath_of_prefix, weight_interval, weight_orbits, Triangulation,
};

/// One facet with its table and the matching seed.
#[derive(Debug, Clone)]
pub struct Node {
    pub facet: Facet,
    pub table: RootTable,
    pub seed: Seed,
}

impl Node {
    /// Seed column of the variable at position `i` of the facet.
    pub fn column(&self, complex: &Complex, i: usize) -> usize {
        self.seed
            .column_of(&complex.position_roots()[i])
            .expect("correspondence checked while building")
    }
}

/// The facet ↔ seed correspondence for one Coxeter element.
#[derive(Debug, Clone)]
pub struct Model {
    complex: Complex,
    exchange: Vec<Vec<i64>>,
    nodes: Vec<Node>,
    index: HashMap<Facet, usize>,
    /// `(from, to, i, j)` for every flip `from −i→ to` entering `j`.
    edges: Vec<(usize, usize, usize, usize)>,
    variables: BTreeMap<RootVec, MPoly>,
}

impl Model {
    pub fn new(rs: RootSystem, c: Word) -> Result<Model> {
        let exchange = exchange_matrix(rs.cartan(), &c)?;
        let init = Seed::initial(rs.cartan(), &c)?;
        let complex = Complex::new(rs, c)?;
        let pos_root = complex.position_roots().to_vec();
        let greedy = complex.greedy_facet();
        let desync = |msg: String| Error::Invariant(format!("facet/seed correspondence: {msg}"));

        let mut nodes = vec![Node {
            table: complex.table(&greedy),
            facet: greedy.clone(),
            seed: init,
        }];
        let mut index = HashMap::from([(greedy, 0usize)]);
        let mut edges = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            let facet = nodes[a].facet.clone();
            for &i in facet.positions() {
                let slot = nodes[a]
                    .seed
                    .column_of(&pos_root[i])
                    .ok_or_else(|| desync(format!("no column with d-vector {} at {facet}", pos_root[i])))?;
                let (next, j) = complex.flip_with_table(&facet, &nodes[a].table, i)?;
                let seed = nodes[a].seed.mutate(slot)?;
                if seed.labels()[slot] != pos_root[j] {
                    return Err(desync(format!(
                        "flipping {} in {facet} enters {} but mutation yields d-vector {}",
                        i + 1,
                        j + 1,
                        seed.labels()[slot]
                    )));
                }
                let b = match index.get(&next) {
                    Some(&b) => {
                        if nodes[b].seed.key() != seed.key() {
                            return Err(desync(format!("{next} reached with two different clusters")));
                        }
                        b
                    }
                    None => {
                        let b = nodes.len();
                        let table = complex.update_after_flip(&nodes[a].table, i, j);
                        if b % 20 == 0 && table != complex.table(&next) {
                            return Err(Error::Invariant(format!("incremental table of {next} is wrong")));
                        }
                        index.insert(next.clone(), b);
                        nodes.push(Node { facet: next, table, seed });
                        queue.push_back(b);
                        b
                    }
                };
                edges.push((a, b, i, j));
            }
        }
        // The antigreedy table is always checked against the direct formula.
        let ag = complex.antigreedy_facet();
        let ag_idx = *index.get(&ag).ok_or_else(|| desync("antigreedy facet unreachable".into()))?;
        if nodes[ag_idx].table != complex.table(&ag) {
            return Err(Error::Invariant("incremental antigreedy table is wrong".into()));
        }

        let mut variables: BTreeMap<RootVec, MPoly> = BTreeMap::new();
        for node in &nodes {
            for (u, d) in node.seed.variables().iter().zip(node.seed.labels()) {
                match variables.get(d) {
                    Some(v) if v != u => return Err(desync(format!("two cluster variables with d-vector {d}"))),
                    Some(_) => {}
                    None => {
                        variables.insert(d.clone(), u.clone());
                    }
                }
            }
        }
        if variables.len() != complex.len() {
            return Err(desync(format!(
                "{} cluster variables for {} almost positive roots",
                variables.len(),
                complex.len()
            )));
        }

        // Renumber in facet order, for deterministic iteration.
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by(|&x, &y| nodes[x].facet.cmp(&nodes[y].facet));
        let mut rank = vec![0; nodes.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let mut slots: Vec<Option<Node>> = nodes.into_iter().map(Some).collect();
        let nodes: Vec<Node> = order.iter().map(|&o| slots[o].take().expect("permutation")).collect();
        let index = nodes.iter().enumerate().map(|(k, n)| (n.facet.clone(), k)).collect();
        let mut edges: Vec<_> = edges.into_iter().map(|(a, b, i, j)| (rank[a], rank[b], i, j)).collect();
        edges.sort_unstable();

        Ok(Model {
            complex,
            exchange,
            nodes,
            index,
            edges,
            variables,
        })
    }

    pub fn from_type(cartan: &CartanMatrix, c: &Word) -> Result<Model> {
        Model::new(RootSystem::new(cartan.clone())?, c.clone())
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn cartan(&self) -> &CartanMatrix {
        self.complex.root_system().cartan()
    }

    /// Principal part of the initial exchange matrix.
    pub fn exchange_matrix(&self) -> &[Vec<i64>] {
        &self.exchange
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, facet: &Facet) -> Option<&Node> {
        self.index.get(facet).map(|&k| &self.nodes[k])
    }

    pub fn edges(&self) -> &[(usize, usize, usize, usize)] {
        &self.edges
    }

    /// The cluster variable with d-vector `beta`.
    pub fn variable(&self, beta: &RootVec) -> Option<&MPoly> {
        self.variables.get(beta)
    }

    pub fn variables(&self) -> &BTreeMap<RootVec, MPoly> {
        &self.variables
    }

    pub fn f_polynomial(&self, beta: &RootVec) -> Option<FPolynomial> {
        self.variable(beta).map(f_polynomial)
    }

    /// Positive roots paired with their position in `Q`.
    pub fn positive_positions(&self) -> Vec<(usize, RootVec)> {
        let n = self.complex.rank();
        (n..self.complex.len())
            .map(|k| (k, self.complex.position_roots()[k].clone()))
            .collect()
    }

    fn greedy(&self) -> &Node {
        &self.nodes[self.index[&self.complex.greedy_facet()]]
    }

    fn antigreedy(&self) -> &Node {
        &self.nodes[self.index[&self.complex.antigreedy_facet()]]
    }

    /// `{w(I,k) − w(AG,k)}` over all facets, in simple-root coordinates.
    pub fn weight_differences(&self, k: usize) -> Result<BTreeSet<Vec<i64>>> {
        let ag = &self.antigreedy().table.weights[k];
        self.nodes
            .iter()
            .map(|node| {
                self.cartan()
                    .weight_diff_to_root_coords(&node.table.weights[k], ag)
                    .map(|r| r.into_coords())
            })
            .collect()
    }

    /// The brick polytope in weight coordinates.
    pub fn brick_polytope(&self) -> Result<LatticePolytope> {
        LatticePolytope::hull(self.nodes.iter().map(|n| n.table.brick_vector().into_coords()))
    }

    /// `Σ_β Newton(F_β)` in simple-root coordinates.
    pub fn newton_sum(&self) -> Result<LatticePolytope> {
        let polys = self
            .positive_positions()
            .into_iter()
            .map(|(_, beta)| self.f_polynomial(&beta).expect("every root has a variable").newton_polytope())
            .collect::<Result<Vec<_>>>()?;
        LatticePolytope::minkowski_sum_all(&polys)
    }
}

/// The available checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    CVectors,
    GVectors,
    Exchange,
    Newton,
    Lattice,
    Lemmas,
    Minkowski,
    Typea,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::CVectors,
        Check::GVectors,
        Check::Exchange,
        Check::Newton,
        Check::Lattice,
        Check::Lemmas,
        Check::Minkowski,
        Check::Typea,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::CVectors => "c-vectors",
            Check::GVectors => "g-vectors",
            Check::Exchange => "exchange",
            Check::Newton => "newton",
            Check::Lattice => "lattice",
            Check::Lemmas => "lemmas",
            Check::Minkowski => "minkowski",
            Check::Typea => "typea",
        }
    }

    /// Parses a comma separated list; `all` selects every check.
    pub fn parse_list(s: &str) -> Result<Vec<Check>> {
        let mut out = BTreeSet::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Check::ALL);
            } else {
                out.insert(part.parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::Parse("no checks selected".into()));
        }
        Ok(out.into_iter().collect())
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

/// Where and how a check failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// 1-based positions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facet: Option<Vec<usize>>,
    /// 1-based.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
    pub what: String,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.what)?;
        if let Some(facet) = &self.facet {
            write!(f, " at facet {{{}}}", facet.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))?;
        }
        if let Some(p) = self.position {
            write!(f, " position {p}")?;
        }
        write!(f, ": expected {}, got {}", self.expected, self.actual)
    }
}

/// Result of one check on one input. The elapsed time is informational and
/// takes no part in equality or serialization.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub check: Check,
    /// Type label such as `B3`.
    pub cartan: String,
    /// Coxeter word, 1-based, or empty for checks that range over all of them.
    pub coxeter: String,
    pub outcome: Outcome,
    /// Number of individual comparisons made.
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for Report {
    fn eq(&self, other: &Self) -> bool {
        self.check == other.check
            && self.cartan == other.cartan
            && self.coxeter == other.coxeter
            && self.outcome == other.outcome
            && self.cases == other.cases
            && self.counterexample == other.counterexample
            && self.note == other.note
    }
}

impl Eq for Report {}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn failed(&self) -> bool {
        self.outcome == Outcome::Fail
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skipped => "SKIP",
        };
        write!(f, "{tag} {:<10} {}", self.check.name(), self.cartan)?;
        if !self.coxeter.is_empty() {
            write!(f, " c={}", self.coxeter)?;
        }
        write!(f, " ({} cases)", self.cases)?;
        if let Some(cx) = &self.counterexample {
            write!(f, " {cx}")?;
        }
        if let Some(note) = &self.note {
            write!(f, " [{note}]")?;
        }
        Ok(())
    }
}

/// Accumulates comparisons; keeps the first failure.
struct Tally {
    cases: usize,
    first: Option<Counterexample>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, first: None }
    }

    fn check(&mut self, ok: bool, cx: impl FnOnce() -> Counterexample) {
        self.cases += 1;
        if !ok && self.first.is_none() {
            self.first = Some(cx());
        }
    }

    fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        if self.first.is_none() {
            self.first = other.first;
        }
    }

    fn into_report(self, check: Check, cartan: String, coxeter: String, start: Instant) -> Report {
        Report {
            check,
            cartan,
            coxeter,
            outcome: if self.first.is_some() { Outcome::Fail } else { Outcome::Pass },
            cases: self.cases,
            counterexample: self.first,
            note: None,
            elapsed: start.elapsed(),
        }
    }
}

fn cx(facet: Option<&Facet>, position: Option<usize>, what: &str, expected: impl fmt::Display, actual: impl fmt::Display) -> Counterexample {
    Counterexample {
        facet: facet.map(|f| f.one_based()),
        position: position.map(|p| p + 1),
        what: what.to_string(),
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

fn report(model: &Model, check: Check, tally: Tally, start: Instant) -> Report {
    tally.into_report(check, model.cartan().label(), model.complex().coxeter_word().to_string(), start)
}

/// Exact determinant of a small integer matrix.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    det.to_integer()
}

fn vec_str(v: &[i64]) -> String {
    format!("{v:?}")
}

/// c-vectors of every seed equal the root configuration of its facet; they
/// are sign-coherent and form a basis of the root lattice.
pub fn check_c_vectors(model: &Model) -> Report {
    let start = Instant::now();
    let cx_ = model.complex();
    let mut t = Tally::new();
    for node in model.nodes() {
        let cvecs = node.seed.c_vectors();
        for &i in node.facet.positions() {
            let c = &cvecs[node.column(cx_, i)];
            let r = &node.table.roots[i];
            t.check(c == r, || cx(Some(&node.facet), Some(i), "c-vector", r, c));
            t.check(c.is_sign_coherent(), || cx(Some(&node.facet), Some(i), "sign-coherence", "sign-coherent", c));
        }
        let basis: Vec<Vec<i64>> = node
            .table
            .root_configuration(&node.facet)
            .iter()
            .map(|r| r.coords().to_vec())
            .collect();
        let det = determinant(&basis);
        t.check(det == BigInt::one() || det == -BigInt::one(), || {
            cx(Some(&node.facet), None, "root configuration determinant", "±1", &det)
        });
    }
    report(model, Check::CVectors, t, start)
}

/// g-vectors equal the weight configuration; pairing the g-vectors with the
/// coroot configuration gives the identity (for symmetric Cartan matrices
/// this is the transpose-inverse relation with the c-vectors); the
/// g-vector is recovered from the F-polynomial.
pub fn check_g_vectors(model: &Model) -> Report {
    let start = Instant::now();
    let complex = model.complex();
    let cartan = model.cartan();
    let n = complex.rank();
    let mut t = Tally::new();
    for node in model.nodes() {
        let positions = node.facet.positions();
        let mut gs: Vec<WeightVec> = Vec::with_capacity(n);
        for &i in positions {
            let u = &node.seed.variables()[node.column(complex, i)];
            let w = &node.table.weights[i];
            match g_vector(u) {
                Ok(g) => {
                    t.check(g == *w, || cx(Some(&node.facet), Some(i), "g-vector", w, &g));
                    gs.push(g);
                }
                Err(e) => {
                    t.check(false, || cx(Some(&node.facet), Some(i), "g-vector", w, e));
                    gs.push(w.clone());
                }
            }
        }
        let cvecs = node.seed.c_vectors();
        for (a, &i) in positions.iter().enumerate() {
            for (b, &j) in positions.iter().enumerate() {
                let want = i64::from(a == b);
                let coroot = &node.table.coroots[j];
                let got = gs[a].dot(coroot);
                t.check(got == want, || cx(Some(&node.facet), Some(i), "⟨g, c∨⟩ duality", want, got));
                if cartan.is_symmetric() {
                    let c = &cvecs[node.column(complex, j)];
                    let got = gs[a].dot(c);
                    t.check(got == want, || cx(Some(&node.facet), Some(i), "Gᵀ·C = I", want, got));
                }
            }
        }
    }
    for (_, beta) in model.positive_positions() {
        let u = model.variable(&beta).expect("variable for every root");
        let f = f_polynomial(u);
        match (g_from_f(&f, &beta, model.exchange_matrix()), g_vector(u)) {
            (Ok(a), Ok(b)) => t.check(a == b, || cx(None, None, &format!("g-vector of {beta} from F"), &b, &a)),
            (Err(e), _) | (_, Err(e)) => t.check(false, || cx(None, None, &format!("g-vector of {beta} from F"), "a vector", e)),
        }
    }
    report(model, Check::GVectors, t, start)
}

/// The principal part of every exchange matrix equals `∓⟨r(I,j), r∨(I,i)⟩`.
pub fn check_exchange_matrix(model: &Model) -> Report {
    let start = Instant::now();
    let complex = model.complex();
    let cartan = model.cartan();
    let mut t = Tally::new();
    for node in model.nodes() {
        let b = node.seed.matrix();
        for &i in node.facet.positions() {
            for &j in node.facet.positions() {
                let p = cartan.pair(&node.table.roots[j], &node.table.coroots[i]);
                let want = match i.cmp(&j) {
                    std::cmp::Ordering::Less => -p,
                    std::cmp::Ordering::Greater => p,
                    std::cmp::Ordering::Equal => 0,
                };
                let got = b[node.column(complex, i)][node.column(complex, j)];
                t.check(got == want, || {
                    cx(Some(&node.facet), Some(i), &format!("exchange entry against position {}", j + 1), want, got)
                });
            }
        }
    }
    report(model, Check::Exchange, t, start)
}

/// `Newton(F_β)` equals the hull of `{w(I,k) − w(AG,k)}` for the position
/// `k` of `β`.
pub fn check_newton_polytopes(model: &Model) -> Report {
    let start = Instant::now();
    let tallies: Vec<Tally> = model
        .positive_positions()
        .into_par_iter()
        .map(|(k, beta)| {
            let mut t = Tally::new();
            let f = model.f_polynomial(&beta).expect("variable for every root");
            let lhs = f.newton_polytope();
            let rhs = model.weight_differences(k).and_then(LatticePolytope::hull);
            match (lhs, rhs) {
                (Ok(a), Ok(b)) => t.check(a == b, || {
                    cx(None, Some(k), &format!("Newton polytope of F for {beta}"), format!("{:?}", b.vertices()), format!("{:?}", a.vertices()))
                }),
                (Err(e), _) | (_, Err(e)) => t.check(false, || cx(None, Some(k), "Newton polytope", "a polytope", e)),
            }
            t
        })
        .collect();
    let mut t = Tally::new();
    tallies.into_iter().for_each(|x| t.merge(x));
    report(model, Check::Newton, t, start)
}

/// The exponent vectors of `F_β` are exactly the lattice points of its
/// Newton polytope.
pub fn check_lattice_points(model: &Model) -> Report {
    let start = Instant::now();
    let tallies: Vec<Tally> = model
        .positive_positions()
        .into_par_iter()
        .map(|(k, beta)| {
            let mut t = Tally::new();
            let f = model.f_polynomial(&beta).expect("variable for every root");
            let exps: Vec<Vec<i64>> = f.exponents().cloned().collect();
            match f.newton_polytope() {
                Ok(p) => {
                    let pts: Vec<Vec<i64>> = p.lattice_points().into_iter().filter(|v| v.iter().all(|&a| a >= 0)).collect();
                    t.check(pts == exps, || {
                        cx(None, Some(k), &format!("lattice points of Newton(F) for {beta}"), vec_str_list(&exps), vec_str_list(&pts))
                    });
                }
                Err(e) => t.check(false, || cx(None, Some(k), "Newton polytope", "a polytope", e)),
            }
            t
        })
        .collect();
    let mut t = Tally::new();
    tallies.into_iter().for_each(|x| t.merge(x));
    report(model, Check::Lattice, t, start)
}

fn vec_str_list(v: &[Vec<i64>]) -> String {
    v.iter().map(|x| vec_str(x)).collect::<Vec<_>>().join(" ")
}

/// Weight rigidity on shared positions, the shift along increasing flips,
/// the greedy/antigreedy root identity, and `w(I,i) = w(AG,i)` for `i ∈ I`.
pub fn check_lemmas(model: &Model) -> Report {
    let start = Instant::now();
    let complex = model.complex();
    let cartan = model.cartan();
    let nodes = model.nodes();
    let mut t = Tally::new();

    let mut first_weight: HashMap<usize, (usize, &WeightVec)> = HashMap::new();
    for (idx, node) in nodes.iter().enumerate() {
        for &k in node.facet.positions() {
            let w = &node.table.weights[k];
            match first_weight.get(&k) {
                Some(&(other, w0)) => t.check(w == w0, || {
                    cx(Some(&node.facet), Some(k), &format!("weight shared with {}", nodes[other].facet), w0, w)
                }),
                None => {
                    first_weight.insert(k, (idx, w));
                }
            }
        }
    }

    for &(a, b, i, j) in model.edges() {
        if i > j {
            continue;
        }
        let (ni, nj) = (&nodes[a], &nodes[b]);
        let beta = &ni.table.roots[i];
        for k in 0..complex.len() {
            let diff = cartan.weight_diff_to_root_coords(&ni.table.weights[k], &nj.table.weights[k]);
            let ok = match &diff {
                Ok(d) => d.is_nonnegative() && is_multiple(d, beta),
                Err(_) => false,
            };
            t.check(ok, || {
                cx(
                    Some(&ni.facet),
                    Some(k),
                    &format!("weight shift along flip {}→{}", i + 1, j + 1),
                    format!("a nonnegative multiple of {beta}"),
                    diff.as_ref().map(|d| d.to_string()).unwrap_or_else(|e| e.to_string()),
                )
            });
        }
    }

    let g = model.greedy();
    let ag = model.antigreedy();
    for k in complex.rank()..complex.len() {
        let d = cartan.weight_diff_to_root_coords(&g.table.weights[k], &ag.table.weights[k]);
        let r = &g.table.roots[k];
        t.check(d.as_ref() == Ok(r), || {
            cx(None, Some(k), "w(G,k) − w(AG,k)", r, d.as_ref().map(|d| d.to_string()).unwrap_or_else(|e| e.to_string()))
        });
    }

    for node in nodes {
        for &i in node.facet.positions() {
            let (w, w0) = (&node.table.weights[i], &ag.table.weights[i]);
            t.check(w == w0, || cx(Some(&node.facet), Some(i), "w(I,i) = w(AG,i)", w0, w));
        }
    }
    report(model, Check::Lemmas, t, start)
}

fn is_multiple(d: &RootVec, beta: &RootVec) -> bool {
    // d = λ·β with λ ≥ 0; β is nonzero.
    let Some(p) = (0..beta.len()).find(|&s| beta[s] != 0) else {
        return d.is_zero();
    };
    if d[p] % beta[p] != 0 {
        return false;
    }
    let lambda = d[p] / beta[p];
    lambda >= 0 && (0..beta.len()).all(|s| d[s] == lambda * beta[s])
}

/// `Σ_β Newton(F_β)`, moved to weight coordinates, equals the brick polytope
/// translated by `−b(AG)`. In type `A` the sum of the hulls of restricted
/// prefixes gives the same polytope up to translation. Requires the Newton
/// check to pass.
pub fn check_minkowski_brick(model: &Model, newton: &Report) -> Report {
    let start = Instant::now();
    let coxeter = model.complex().coxeter_word().to_string();
    if !newton.passed() {
        return Report {
            check: Check::Minkowski,
            cartan: model.cartan().label(),
            coxeter,
            outcome: Outcome::Skipped,
            cases: 0,
            counterexample: None,
            note: Some("requires the newton check to pass".into()),
            elapsed: start.elapsed(),
        };
    }
    let cartan = model.cartan();
    let mut t = Tally::new();
    let brick = model.brick_polytope();
    let sum = model.newton_sum();
    let b_ag = model.antigreedy().table.brick_vector();
    match (brick, sum) {
        (Ok(brick), Ok(sum)) => {
            let to_weights = |p: &LatticePolytope| {
                LatticePolytope::hull(p.vertices().iter().map(|v| cartan.root_to_weight_coords(&RootVec::new(v.clone())).into_coords()))
            };
            match to_weights(&sum) {
                Ok(sum_w) => {
                    let tr = sum_w.equal_up_to_translation(&brick);
                    t.check(tr.as_deref() == Some(b_ag.coords()), || {
                        cx(None, None, "translation from Σ Newton(F) to the brick polytope", vec_str(b_ag.coords()), format!("{tr:?}"))
                    });
                }
                Err(e) => t.check(false, || cx(None, None, "Σ Newton(F)", "a polytope", e)),
            }
            if cartan.finite_type().map(|ty| ty.family()) == Some(Family::A) {
                let c = model.complex().coxeter_word();
                let loday = loday_summands(c, cartan.rank())
                    .into_iter()
                    .map(|(_, pts)| LatticePolytope::hull(pts))
                    .collect::<Result<Vec<_>>>()
                    .and_then(|ps| LatticePolytope::minkowski_sum_all(&ps))
                    .and_then(|p| to_weights(&p));
                match loday {
                    Ok(l) => {
                        let tr = l.equal_up_to_translation(&brick);
                        t.check(tr.is_some(), || cx(None, None, "Loday summands vs brick polytope", "a translation", "none"));
                    }
                    Err(e) => t.check(false, || cx(None, None, "Loday summands", "a polytope", e)),
                }
            }
        }
        (Err(e), _) | (_, Err(e)) => t.check(false, || cx(None, None, "polytopes", "built", e)),
    }
    report(model, Check::Minkowski, t, start)
}

/// For every Coxeter element of `A_n`: mutation, T-path and prefix
/// F-polynomials agree; prefixes reach T-paths by valid flips, bijectively;
/// the weight interval of every position equals the set of realized
/// weights; small ranks are checked for independence of the starting
/// vertex of the triangulation.
pub fn check_typea_models(n: usize) -> Result<Report> {
    let start = Instant::now();
    let cartan = CartanMatrix::of_type(Family::A, n)?;
    let rs = RootSystem::new(cartan.clone())?;
    let orbits = weight_orbits(&cartan);
    let mut t = Tally::new();
    for c in coxeter_elements(&cartan) {
        let model = Model::new(rs.clone(), c.clone())?;
        let tri = Triangulation::of_coxeter(&c, n)?;
        let rotations: Vec<Triangulation> = if n <= 3 {
            (1..n + 3).map(|s| Triangulation::of_coxeter_from(&c, n, s)).collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        for i in 0..n {
            for j in i..n {
                let beta = RootVec::new((0..n).map(|s| i64::from(i <= s && s <= j)).collect());
                let label = format!("F for {beta} with c={c}");
                let mutation = model.f_polynomial(&beta).expect("variable for every root");
                let tpaths = tri.f_poly_via_tpaths(i, j)?;
                let prefixes = f_poly_via_prefixes(&c, n, i, j);
                t.check(tpaths == mutation, || cx(None, None, &format!("T-path {label}"), &mutation, &tpaths));
                t.check(prefixes == mutation, || cx(None, None, &format!("prefix {label}"), &mutation, &prefixes));
                t.check(mutation.maximal_monomial().as_deref() == Some(beta.coords()), || {
                    cx(None, None, &format!("maximal monomial of {label}"), &beta, format!("{:?}", mutation.maximal_monomial()))
                });

                let gamma = tri.diagonal_of_root(i, j)?;
                let paths: BTreeSet<Vec<bool>> = tri.enumerate_tpaths(&gamma).into_iter().map(|p| p.signs).collect();
                let prefixes = crate::coxeter::restricted_prefixes(&c, i, j);
                let reached: std::result::Result<BTreeSet<Vec<bool>>, Error> =
                    prefixes.iter().map(|p| tpath_of_prefix(&tri, &gamma, p).map(|q| q.signs)).collect();
                let ok = matches!(&reached, Ok(r) if *r == paths && r.len() == prefixes.len());
                t.check(ok, || cx(None, None, &format!("prefix → T-path bijection for {beta}, c={c}"), paths.len(), format!("{reached:?}")));

                for rot in &rotations {
                    let f = rot.f_poly_via_tpaths(i, j)?;
                    t.check(f == tpaths, || cx(None, None, &format!("rotated T-path {label}"), &tpaths, &f));
                }
            }
        }
        let complex = model.complex();
        for k in 0..complex.len() {
            let realized: BTreeSet<WeightVec> = model.nodes().iter().map(|node| node.table.weights[k].clone()).collect();
            let interval = weight_interval(complex, &orbits, k);
            t.check(interval == realized, || {
                cx(None, Some(k), &format!("weight interval, c={c}"), format!("{realized:?}"), format!("{interval:?}"))
            });
        }
    }
    Ok(t.into_report(Check::Typea, format!("A{n}"), String::new(), start))
}

/// Run `checks` on one Coxeter element. The Minkowski check runs the Newton
/// check first when it was not requested, since it depends on it.
pub fn run_checks(model: &Model, checks: &[Check]) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let mut newton: Option<Report> = None;
    for &check in checks {
        let r = match check {
            Check::CVectors => check_c_vectors(model),
            Check::GVectors => check_g_vectors(model),
            Check::Exchange => check_exchange_matrix(model),
            Check::Newton => {
                let r = check_newton_polytopes(model);
                newton = Some(r.clone());
                r
            }
            Check::Lattice => check_lattice_points(model),
            Check::Lemmas => check_lemmas(model),
            Check::Minkowski => {
                let nw = match &newton {
                    Some(r) => r.clone(),
                    None => check_newton_polytopes(model),
                };
                check_minkowski_brick(model, &nw)
            }
            Check::Typea => {
                let cartan = model.cartan();
                match cartan.finite_type() {
                    Some(ty) if ty.family() == Family::A => check_typea_models(ty.rank())?,
                    _ => Report {
                        check,
                        cartan: cartan.label(),
                        coxeter: String::new(),
                        outcome: Outcome::Skipped,
                        cases: 0,
                        counterexample: None,
                        note: Some("only defined in type A".into()),
                        elapsed: Duration::ZERO,
                    },
                }
            }
        };
        out.push(r);
    }
    Ok(out)
}

/// The d-vector of every variable, as a check on the model itself.
pub fn d_vectors_match_positions(model: &Model) -> bool {
    model
        .variables()
        .iter()
        .all(|(beta, u)| d_vector(u) == *beta && model.complex().position_of_root(beta).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(t: &str, c: &str) -> Model {
        Model::new(RootSystem::from_type_str(t).unwrap(), c.parse().unwrap()).unwrap()
    }

    #[test]
    fn a2_model() {
        let m = model("A2", "1,2");
        assert_eq!(m.nodes().len(), 5);
        assert!(d_vectors_match_positions(&m));
        let node = m.node(&Facet::from_one_based(&[3, 4])).unwrap();
        let cs: Vec<RootVec> = node
            .facet
            .positions()
            .iter()
            .map(|&i| node.seed.c_vectors()[node.column(m.complex(), i)].clone())
            .collect();
        assert_eq!(cs, vec![RootVec::from(vec![0, 1]), RootVec::from(vec![-1, -1])]);
        let gs: Vec<WeightVec> = node
            .facet
            .positions()
            .iter()
            .map(|&i| g_vector(&node.seed.variables()[node.column(m.complex(), i)]).unwrap())
            .collect();
        assert_eq!(gs, vec![WeightVec::from(vec![-1, 1]), WeightVec::from(vec![-1, 0])]);
        let greedy = m.node(&Facet::from_one_based(&[1, 2])).unwrap();
        assert_eq!(greedy.seed.principal_part(), vec![vec![0, 1], vec![-1, 0]]);
    }

    #[test]
    fn a2_newton_columns() {
        let m = model("A2", "1,2");
        let diffs = m.weight_differences(3).unwrap();
        let want: BTreeSet<Vec<i64>> = [vec![1, 1], vec![0, 0], vec![1, 0]].into_iter().collect();
        assert_eq!(diffs, want);
    }

    #[test]
    fn all_checks_small_types() {
        for (t, c) in [("A1", "1"), ("A2", "1,2"), ("A3", "1,3,2"), ("B2", "1,2"), ("G2", "2,1"), ("C3", "2,1,3")] {
            let m = model(t, c);
            for r in run_checks(&m, &Check::ALL).unwrap() {
                assert!(!r.failed(), "{r}");
                assert!(r.cases > 0 || r.outcome == Outcome::Skipped, "{r}");
            }
        }
    }

    #[test]
    fn brick_translation_a2() {
        let m = model("A2", "1,2");
        let brick = m.brick_polytope().unwrap();
        let mut v: Vec<Vec<i64>> = brick.vertices().to_vec();
        v.sort();
        // Ambient (4,3,0),(3,4,0),(2,4,1),(2,3,2),(4,1,2) in weight coordinates.
        let mut want = vec![vec![1, 3], vec![-1, 4], vec![-2, 3], vec![-1, 1], vec![3, -1]];
        want.sort();
        assert_eq!(v, want);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[vec![0, 1], vec![-1, -1]]), BigInt::one());
        assert_eq!(determinant(&[vec![2, 0], vec![0, 3]]), BigInt::from(6));
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
    }

    #[test]
    fn check_names_parse() {
        assert_eq!(Check::parse_list("all").unwrap().len(), 8);
        assert_eq!(Check::parse_list("newton,c-vectors").unwrap(), vec![Check::CVectors, Check::Newton]);
        assert!(Check::parse_list("nope").is_err());
        assert!(Check::parse_list("").is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_checks(&model("B2", "2,1"), &Check::ALL).unwrap();
        let b = run_checks(&model("B2", "2,1"), &Check::ALL).unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
