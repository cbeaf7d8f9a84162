//! The cluster algebra of a finite type with principal coefficients, seeded
//! by a Coxeter element: exact seeds, mutation, F-polynomials and d-, g-
//! and c-vectors.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::coxeter::Word;
use crate::error::{Error, Result};
use crate::laurent::MPoly;
use crate::polytope::LatticePolytope;
use crate::rootsys::{CartanMatrix, RootVec, WeightVec};

/// Componentwise minimum, the tropical sum of two Laurent monomials in `y`.
pub fn tropical_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()
}

fn pos(v: i64) -> i64 {
    v.max(0)
}

/// The principal part of the initial exchange matrix: `b_st = −a_st` if `s`
/// comes before `t` in `c`, `+a_st` if after.
pub fn exchange_matrix(cartan: &CartanMatrix, c: &Word) -> Result<Vec<Vec<i64>>> {
    let n = cartan.rank();
    if !c.is_coxeter_word(n) {
        return Err(Error::NotCoxeterWord(c.to_string()));
    }
    let mut place = vec![0; n];
    for (k, &s) in c.letters().iter().enumerate() {
        place[s] = k;
    }
    Ok((0..n)
        .map(|s| {
            (0..n)
                .map(|t| match place[s].cmp(&place[t]) {
                    std::cmp::Ordering::Less => -cartan.entry(s, t),
                    std::cmp::Ordering::Greater => cartan.entry(s, t),
                    std::cmp::Ordering::Equal => 0,
                })
                .collect()
        })
        .collect())
}

/// A seed: a `2n × n` exchange matrix, `n` cluster variables, `n` frozen
/// variables (Laurent monomials in `y`, as exponent vectors) and, per
/// column, the d-vector of its cluster variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    matrix: Vec<Vec<i64>>,
    vars: Vec<MPoly>,
    frozen: Vec<Vec<i64>>,
    labels: Vec<RootVec>,
}

impl Seed {
    /// The initial seed `(x, y, B_c)` with identity extended part.
    pub fn initial(cartan: &CartanMatrix, c: &Word) -> Result<Seed> {
        let n = cartan.rank();
        let mut matrix = exchange_matrix(cartan, c)?;
        for i in 0..n {
            matrix.push((0..n).map(|j| i64::from(i == j)).collect());
        }
        Ok(Seed {
            matrix,
            vars: (0..n).map(|i| MPoly::x(n, i)).collect(),
            frozen: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
            labels: (0..n).map(|i| -&RootVec::unit(n, i)).collect(),
        })
    }

    /// Reassembles a seed, e.g. one read back from JSON. The d-vectors are
    /// recomputed from the variables.
    pub fn from_parts(matrix: Vec<Vec<i64>>, vars: Vec<MPoly>, frozen: Vec<Vec<i64>>) -> Result<Seed> {
        let n = vars.len();
        let bad = |found: usize| Error::DimensionMismatch { expected: n, found };
        if matrix.len() != 2 * n {
            return Err(bad(matrix.len()));
        }
        if let Some(r) = matrix.iter().chain(&frozen).find(|r| r.len() != n) {
            return Err(bad(r.len()));
        }
        if frozen.len() != n {
            return Err(bad(frozen.len()));
        }
        if let Some(v) = vars.iter().find(|v| v.nvars() != n) {
            return Err(bad(v.nvars()));
        }
        let labels = vars.iter().map(d_vector).collect();
        let seed = Seed {
            matrix,
            vars,
            frozen,
            labels,
        };
        seed.check_frozen()?;
        Ok(seed)
    }

    pub fn rank(&self) -> usize {
        self.vars.len()
    }

    /// All `2n` rows.
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn principal_part(&self) -> Vec<Vec<i64>> {
        self.matrix[..self.rank()].to_vec()
    }

    pub fn variables(&self) -> &[MPoly] {
        &self.vars
    }

    pub fn frozen(&self) -> &[Vec<i64>] {
        &self.frozen
    }

    /// The d-vector of the variable in each column.
    pub fn labels(&self) -> &[RootVec] {
        &self.labels
    }

    /// Column holding the variable with d-vector `beta`.
    pub fn column_of(&self, beta: &RootVec) -> Option<usize> {
        self.labels.iter().position(|l| l == beta)
    }

    /// Columns of the extended part.
    pub fn c_vectors(&self) -> Vec<RootVec> {
        let n = self.rank();
        (0..n)
            .map(|j| RootVec::new((0..n).map(|i| self.matrix[n + i][j]).collect()))
            .collect()
    }

    /// Canonical key: the sorted cluster.
    pub fn key(&self) -> Vec<MPoly> {
        let mut k = self.vars.clone();
        k.sort();
        k
    }

    /// Mutation in column `k` (0-based).
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let n = self.rank();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k + 1, rank: n });
        }
        let b = &self.matrix;
        let mut m = b.clone();
        for i in 0..2 * n {
            for j in 0..n {
                m[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + b[i][k].signum() * pos(b[i][k] * b[k][j])
                };
            }
        }

        let f = &self.frozen[k];
        let one = vec![0; n];
        let fsum = tropical_add(f, &one);
        let mut plus = MPoly::xy(&one, &f.iter().zip(&fsum).map(|(a, b)| a - b).collect::<Vec<_>>());
        let mut minus = MPoly::xy(&one, &fsum.iter().map(|a| -a).collect::<Vec<_>>());
        for i in 0..n {
            let e = b[i][k];
            if e > 0 {
                plus = &plus * &self.vars[i].pow(e as u32);
            } else if e < 0 {
                minus = &minus * &self.vars[i].pow((-e) as u32);
            }
        }
        let new_var = (&plus + &minus).exact_div(&self.vars[k])?;

        let mut frozen = self.frozen.clone();
        for (l, fl) in frozen.iter_mut().enumerate() {
            if l == k {
                *fl = f.iter().map(|a| -a).collect();
            } else {
                let bkl = b[k][l];
                for t in 0..n {
                    fl[t] += f[t] * pos(bkl) - fsum[t] * bkl;
                }
            }
        }

        let mut vars = self.vars.clone();
        let mut labels = self.labels.clone();
        labels[k] = d_vector(&new_var);
        vars[k] = new_var;
        let seed = Seed {
            matrix: m,
            vars,
            frozen,
            labels,
        };
        seed.check_frozen()?;
        Ok(seed)
    }

    /// Frozen variables equal `y` to the columns of the extended part.
    pub fn check_frozen(&self) -> Result<()> {
        let n = self.rank();
        for j in 0..n {
            let col: Vec<i64> = (0..n).map(|i| self.matrix[n + i][j]).collect();
            if col != self.frozen[j] {
                return Err(Error::Invariant(format!(
                    "frozen variable {j} is y^{:?}, extended column is {col:?}",
                    self.frozen[j]
                )));
            }
        }
        Ok(())
    }
}

/// Mapping from `y`-exponent vectors to coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FPolynomial {
    n: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl FPolynomial {
    pub fn new(n: usize, terms: BTreeMap<Vec<i64>, BigInt>) -> Self {
        FPolynomial { n, terms }
    }

    /// From `(exponents, coefficient)` pairs with small coefficients.
    pub fn from_pairs(n: usize, pairs: &[(&[i64], i64)]) -> Self {
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (e, c) in pairs {
            *terms.entry(e.to_vec()).or_default() += BigInt::from(*c);
        }
        FPolynomial { n, terms }
    }

    /// The constant polynomial 1.
    pub fn one(n: usize) -> Self {
        Self::from_pairs(n, &[(&vec![0; n], 1)])
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigInt> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn exponents(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.terms.keys()
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&vec![0; self.n]).cloned().unwrap_or_default()
    }

    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// The unique monomial divisible by every other one, if there is one.
    pub fn maximal_monomial(&self) -> Option<Vec<i64>> {
        let max = self.terms.keys().fold(vec![i64::MIN; self.n], |acc, e| {
            acc.iter().zip(e).map(|(a, b)| *a.max(b)).collect()
        });
        self.terms.contains_key(&max).then_some(max)
    }

    pub fn newton_polytope(&self) -> Result<LatticePolytope> {
        LatticePolytope::hull(self.terms.keys())
    }
}

impl fmt::Display for FPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&Vec<i64>, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: i64 = a.0.iter().sum();
            let db: i64 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            if idx > 0 {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| if a == 1 { format!("y{}", i + 1) } else { format!("y{}^{a}", i + 1) })
                .collect();
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({self})")
    }
}

/// `u(1, y)`.
pub fn f_polynomial(u: &MPoly) -> FPolynomial {
    FPolynomial::new(u.nvars(), u.at_x_one())
}

/// Negated componentwise minimum of the `x`-exponents.
pub fn d_vector(u: &MPoly) -> RootVec {
    let n = u.nvars();
    match u.min_exponents() {
        Some(m) => RootVec::new(m[..n].iter().map(|a| -a).collect()),
        None => RootVec::zero(n),
    }
}

/// Exponent vector of the monomial `u(x, 0)`.
pub fn g_vector(u: &MPoly) -> Result<WeightVec> {
    let n = u.nvars();
    let at0 = u.at_y_zero();
    if !at0.is_monomial() {
        return Err(Error::Invariant(format!("{u} at y = 0 is not a monomial")));
    }
    let e = at0.terms().keys().next().expect("monomial");
    Ok(WeightVec::new(e[..n].to_vec()))
}

/// `u = x^g · F(ŷ)` with `ŷ_i = y_i ∏_j x_j^{b_ji}`, where `b` is the
/// principal part of the initial exchange matrix.
pub fn variable_from_g_and_f(g: &WeightVec, f: &FPolynomial, b: &[Vec<i64>]) -> MPoly {
    let n = f.nvars();
    let mut out = MPoly::zero(n);
    for (e, c) in f.terms() {
        let mut x: Vec<i64> = g.coords().to_vec();
        for i in 0..n {
            for j in 0..n {
                x[j] += e[i] * b[j][i];
            }
        }
        let mut exps = x;
        exps.extend_from_slice(e);
        out = &out + &MPoly::monomial(n, exps, c.clone());
    }
    out
}

/// `g = max(F(x̂)) − β` with `x̂_i = ∏_j x_j^{−b_ji}`. The maximum is taken
/// once over all monomials and once over the vertices of the Newton
/// polytope; the two must agree.
pub fn g_from_f(f: &FPolynomial, beta: &RootVec, b: &[Vec<i64>]) -> Result<WeightVec> {
    let n = f.nvars();
    let image = |e: &[i64]| -> Vec<i64> {
        (0..n).map(|j| -(0..n).map(|i| e[i] * b[j][i]).sum::<i64>()).collect()
    };
    let cmax = |pts: &mut dyn Iterator<Item = Vec<i64>>| -> Vec<i64> {
        pts.fold(vec![i64::MIN; n], |acc, p| acc.iter().zip(&p).map(|(a, b)| *a.max(b)).collect())
    };
    let all = cmax(&mut f.exponents().map(|e| image(e)));
    let newton = f.newton_polytope()?;
    let verts = cmax(&mut newton.vertices().iter().map(|e| image(e)));
    if all != verts {
        return Err(Error::Invariant(format!(
            "maximum over monomials {all:?} differs from maximum over Newton vertices {verts:?}"
        )));
    }
    Ok(WeightVec::new(all.iter().zip(beta.coords()).map(|(m, b)| m - b).collect()))
}

/// All seeds reachable from the initial one, sorted by their cluster.
pub fn enumerate_seeds(cartan: &CartanMatrix, c: &Word) -> Result<Vec<Seed>> {
    let init = Seed::initial(cartan, c)?;
    let n = init.rank();
    let mut seen: HashSet<Vec<MPoly>> = HashSet::new();
    seen.insert(init.key());
    let mut out = vec![init.clone()];
    let mut queue = VecDeque::from([init]);
    while let Some(s) = queue.pop_front() {
        for k in 0..n {
            let t = s.mutate(k)?;
            if seen.insert(t.key()) {
                out.push(t.clone());
                queue.push_back(t);
            }
        }
    }
    out.sort_by_key(|a| a.key());
    Ok(out)
}
