//! Finite crystallographic Cartan matrices and the four coordinate systems
//! built on them: simple roots `Δ`, fundamental weights `∇`, simple coroots
//! `Δ∨` and fundamental coweights `∇∨`.
//!
//! Conventions. The entry `a[s][t]` of a [`CartanMatrix`] is `⟨α_t, α_s∨⟩`,
//! so that `s(α_t) = α_t − a[s][t]·α_s`. Nodes are numbered as in Bourbaki.
//! For the non-simply-laced families the long/short orientation is
//!
//! * `B_n`: `a[n-1][n] = −1`, `a[n][n-1] = −2` (`α_n` short),
//! * `C_n`: `a[n-1][n] = −2`, `a[n][n-1] = −1` (`α_n` long),
//! * `F_4`: `a[2][3] = −1`, `a[3][2] = −2` (`α_3, α_4` short),
//! * `G_2`: `a[1][2] = −1`, `a[2][1] = −3` (`α_1` long),
//!
//! all indices 1-based as in the formulas above. Internally every index is
//! 0-based.

use std::collections::BTreeSet;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cartan–Killing family letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A validated (family, rank) pair such as `B3` or `E6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteType {
    family: Family,
    rank: usize,
}

impl FiniteType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(FiniteType { family, rank })
        } else {
            Err(Error::InvalidType {
                family: family.letter(),
                rank,
            })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Degrees of the basic invariants.
    pub fn degrees(&self) -> Vec<u64> {
        let n = self.rank as u64;
        match self.family {
            Family::A => (2..=n + 1).collect(),
            Family::B | Family::C => (1..=n).map(|i| 2 * i).collect(),
            Family::D => {
                let mut d: Vec<u64> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d
            }
            Family::E => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            Family::F => vec![2, 6, 8, 12],
            Family::G => vec![2, 6],
        }
    }

    /// The Coxeter number, i.e. the largest degree.
    pub fn coxeter_number(&self) -> u64 {
        *self.degrees().iter().max().unwrap()
    }

    /// `∏ (d_i + h) / d_i`, the number of clusters.
    pub fn catalan_number(&self) -> u64 {
        let h = self.coxeter_number();
        let degs = self.degrees();
        let num: u128 = degs.iter().map(|&d| (d + h) as u128).product();
        let den: u128 = degs.iter().map(|&d| d as u128).product();
        (num / den) as u64
    }

    /// Number of positive roots, `n·h/2`.
    pub fn num_positive_roots(&self) -> usize {
        self.rank * self.coxeter_number() as usize / 2
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for FiniteType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::Parse("empty type string".into()))?;
        let family = Family::from_letter(letter)
            .ok_or_else(|| Error::Parse(format!("unknown family in {s:?}")))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        FiniteType::new(family, rank)
    }
}

/// A finite-type crystallographic Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    a: Vec<Vec<i64>>,
    ty: Option<FiniteType>,
}

impl CartanMatrix {
    /// The standard Cartan matrix of a finite type.
    pub fn of_type(family: Family, rank: usize) -> Result<Self> {
        let ty = FiniteType::new(family, rank)?;
        let n = rank;
        let mut a = vec![vec![0i64; n]; n];
        for (s, row) in a.iter_mut().enumerate() {
            row[s] = 2;
        }
        let mut link = |s: usize, t: usize, ast: i64, ats: i64| {
            a[s][t] = ast;
            a[t][s] = ats;
        };
        match family {
            Family::A => {
                for s in 0..n.saturating_sub(1) {
                    link(s, s + 1, -1, -1);
                }
            }
            Family::B | Family::C => {
                for s in 0..n - 2 {
                    link(s, s + 1, -1, -1);
                }
                if family == Family::B {
                    link(n - 2, n - 1, -1, -2);
                } else {
                    link(n - 2, n - 1, -2, -1);
                }
            }
            Family::D => {
                for s in 0..n - 2 {
                    link(s, s + 1, -1, -1);
                }
                link(n - 3, n - 1, -1, -1);
            }
            Family::E => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                for s in 2..n - 1 {
                    link(s, s + 1, -1, -1);
                }
            }
            Family::F => {
                link(0, 1, -1, -1);
                link(1, 2, -1, -2);
                link(2, 3, -1, -1);
            }
            Family::G => link(0, 1, -1, -3),
        }
        Ok(CartanMatrix { a, ty: Some(ty) })
    }

    /// Parse a type string such as `"B3"`.
    pub fn from_type_str(s: &str) -> Result<Self> {
        let ty: FiniteType = s.parse()?;
        Self::of_type(ty.family, ty.rank)
    }

    /// An explicit matrix, validated to be a finite-type Cartan matrix.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = CartanMatrix { a: rows, ty: None };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let n = self.a.len();
        if n == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        for row in &self.a {
            if row.len() != n {
                return Err(Error::InvalidCartan("matrix is not square".into()));
            }
        }
        for s in 0..n {
            if self.a[s][s] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry {} is not 2", s + 1)));
            }
            for t in 0..n {
                if s == t {
                    continue;
                }
                let (ast, ats) = (self.a[s][t], self.a[t][s]);
                if ast > 0 {
                    return Err(Error::InvalidCartan(format!(
                        "positive off-diagonal entry at ({}, {})",
                        s + 1,
                        t + 1
                    )));
                }
                if (ast == 0) != (ats == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "zero pattern not symmetric at ({}, {})",
                        s + 1,
                        t + 1
                    )));
                }
                if ast * ats > 3 {
                    return Err(Error::InvalidCartan(format!(
                        "a_st·a_ts = {} > 3 at ({}, {})",
                        ast * ats,
                        s + 1,
                        t + 1
                    )));
                }
            }
        }
        let d = self.try_symmetrizer()?;
        // Positive definiteness of D·A through rational LDLᵀ pivots.
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|s| {
                (0..n)
                    .map(|t| BigRational::from_integer((d[s] * self.a[s][t]).into()))
                    .collect()
            })
            .collect();
        for k in 0..n {
            if !m[k][k].is_positive() {
                return Err(Error::InvalidCartan("not of finite type (not positive definite)".into()));
            }
            for i in k + 1..n {
                let f = &m[i][k] / &m[k][k];
                for j in k..n {
                    let v = &f * &m[k][j];
                    m[i][j] -= v;
                }
            }
        }
        Ok(())
    }

    fn try_symmetrizer(&self) -> Result<Vec<i64>> {
        let n = self.a.len();
        let mut d: Vec<Option<BigRational>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some(BigRational::one());
            let mut stack = vec![start];
            while let Some(s) = stack.pop() {
                let ds = d[s].clone().unwrap();
                for t in 0..n {
                    if t == s || self.a[s][t] == 0 {
                        continue;
                    }
                    // d_s a_st = d_t a_ts
                    let dt = &ds * BigRational::from_integer(self.a[s][t].into())
                        / BigRational::from_integer(self.a[t][s].into());
                    match &d[t] {
                        None => {
                            d[t] = Some(dt);
                            stack.push(t);
                        }
                        Some(old) if *old != dt => {
                            return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let d: Vec<BigRational> = d.into_iter().map(Option::unwrap).collect();
        let lcm = d
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
        let ints: Vec<num_bigint::BigInt> = d.iter().map(|x| (x * &lcm).to_integer()).collect();
        let g = ints
            .iter()
            .fold(num_bigint::BigInt::zero(), |acc, x| num_integer::gcd(acc, x.clone()));
        Ok(ints.iter().map(|x| (x / &g).to_i64().unwrap()).collect())
    }

    /// Positive integers `d_s` with `d_s·a_st = d_t·a_ts`, normalised to be
    /// coprime. Proportional to the squared root lengths.
    pub fn symmetrizer(&self) -> Vec<i64> {
        self.try_symmetrizer().expect("validated Cartan matrix")
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// `a_st` with 0-based indices.
    pub fn entry(&self, s: usize, t: usize) -> i64 {
        self.a[s][t]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn finite_type(&self) -> Option<FiniteType> {
        self.ty
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.rank();
        (0..n).all(|s| (0..n).all(|t| self.a[s][t] == self.a[t][s]))
    }

    /// `s` and `t` commute iff `a_st = 0`.
    pub fn commutes(&self, s: usize, t: usize) -> bool {
        s == t || self.a[s][t] == 0
    }

    /// Human label such as `B3`, or `custom` for an explicit matrix.
    pub fn label(&self) -> String {
        match self.ty {
            Some(t) => t.to_string(),
            None => format!("custom{}", self.rank()),
        }
    }

    fn check_index(&self, s: usize) -> Result<()> {
        if s >= self.rank() {
            Err(Error::IndexOutOfRange {
                index: s + 1,
                rank: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    /// Apply the simple reflection `s` (0-based) to a vector in any of the
    /// four bases.
    pub fn reflect<B: Basis>(&self, s: usize, v: &Vector<B>) -> Result<Vector<B>> {
        self.check_index(s)?;
        self.check_dim(v.len())?;
        let mut out = v.clone();
        B::reflect_simple(self, s, &mut out.coords);
        Ok(out)
    }

    pub(crate) fn reflect_in_place<B: Basis>(&self, s: usize, v: &mut Vector<B>) {
        B::reflect_simple(self, s, &mut v.coords);
    }

    /// Apply the reflection in an arbitrary root `beta` with coroot
    /// `beta_vee`.
    pub fn reflect_in<B: Basis>(&self, beta: &RootVec, beta_vee: &CorootVec, v: &Vector<B>) -> Vector<B> {
        B::reflect_general(self, beta, beta_vee, v)
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: len,
            })
        } else {
            Ok(())
        }
    }

    /// `Δ → ∇`: `α_s = Σ_t a_ts ω_t`.
    pub fn root_to_weight_coords(&self, v: &RootVec) -> WeightVec {
        let n = self.rank();
        let coords = (0..n)
            .map(|t| (0..n).map(|s| self.a[t][s] * v[s]).sum())
            .collect();
        Vector::new(coords)
    }

    /// `Δ∨ → ∇∨`: `α_s∨ = Σ_t a_st ω_t∨`.
    pub fn coroot_to_coweight_coords(&self, v: &CorootVec) -> CoweightVec {
        let n = self.rank();
        let coords = (0..n)
            .map(|t| (0..n).map(|s| self.a[s][t] * v[s]).sum())
            .collect();
        Vector::new(coords)
    }

    /// Express `w1 − w2` in simple-root coordinates. Fails when the
    /// difference is not in the root lattice.
    pub fn weight_diff_to_root_coords(&self, w1: &WeightVec, w2: &WeightVec) -> Result<RootVec> {
        self.check_dim(w1.len())?;
        self.check_dim(w2.len())?;
        let diff = w1 - w2;
        let n = self.rank();
        // Solve A·v = diff over the rationals (A[t][s] v_s summed over s).
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|t| {
                let mut row: Vec<BigRational> = (0..n)
                    .map(|s| BigRational::from_integer(self.a[t][s].into()))
                    .collect();
                row.push(BigRational::from_integer(diff[t].into()));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .expect("Cartan matrix is nonsingular");
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=n {
                        let v = &f * &m[col][c];
                        m[r][c] -= v;
                    }
                }
            }
        }
        let mut coords = Vec::with_capacity(n);
        for row in &m {
            let x = &row[n];
            if !x.is_integer() {
                return Err(Error::NotInRootLattice(diff.to_string()));
            }
            coords.push(
                x.to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::Invariant("coordinate overflow".into()))?,
            );
        }
        Ok(Vector::new(coords))
    }

    /// `⟨x, y⟩` for `x` in `Δ` and `y` in `Δ∨`: `Σ y_s x_t a_st`.
    pub fn pair(&self, x: &RootVec, y: &CorootVec) -> i64 {
        let n = self.rank();
        let mut acc = 0;
        for s in 0..n {
            if y[s] == 0 {
                continue;
            }
            for t in 0..n {
                acc += y[s] * x[t] * self.a[s][t];
            }
        }
        acc
    }

    /// The coroot `β∨ = 2β/|β|²` of a root given in `Δ`, in `Δ∨`
    /// coordinates.
    pub fn coroot_of(&self, beta: &RootVec) -> Result<CorootVec> {
        let d = self.symmetrizer();
        // |β|²/2 up to the common scale of d.
        let n = self.rank();
        let mut norm = 0i64;
        for s in 0..n {
            for t in 0..n {
                norm += beta[s] * beta[t] * d[s] * self.a[s][t];
            }
        }
        let half = norm / 2;
        let mut out = Vec::with_capacity(n);
        for t in 0..n {
            let num = beta[t] * d[t];
            if half == 0 || num % half != 0 {
                return Err(Error::Invariant(format!("{beta} is not a root")));
            }
            out.push(num / half);
        }
        Ok(Vector::new(out))
    }
}

impl Serialize for CartanMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        crate::json::CartanJson::from(self).serialize(ser)
    }
}

/// Marker for a coordinate system.
pub trait Basis: Copy + Clone + fmt::Debug + PartialEq + Eq + std::hash::Hash + PartialOrd + Ord + Default {
    /// Symbol used when printing basis elements.
    const SYMBOL: &'static str;

    fn reflect_simple(cartan: &CartanMatrix, s: usize, v: &mut [i64]);

    fn reflect_general(cartan: &CartanMatrix, beta: &RootVec, beta_vee: &CorootVec, v: &Vector<Self>) -> Vector<Self>;
}

/// Simple roots `Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Roots;
/// Fundamental weights `∇`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weights;
/// Simple coroots `Δ∨`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coroots;
/// Fundamental coweights `∇∨`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coweights;

impl Basis for Roots {
    const SYMBOL: &'static str = "α";

    fn reflect_simple(cartan: &CartanMatrix, s: usize, v: &mut [i64]) {
        let c: i64 = (0..v.len()).map(|t| cartan.a[s][t] * v[t]).sum();
        v[s] -= c;
    }

    fn reflect_general(cartan: &CartanMatrix, beta: &RootVec, beta_vee: &CorootVec, v: &RootVec) -> RootVec {
        let c = cartan.pair(v, beta_vee);
        v - &(beta * c)
    }
}

impl Basis for Weights {
    const SYMBOL: &'static str = "ω";

    fn reflect_simple(cartan: &CartanMatrix, s: usize, v: &mut [i64]) {
        let c = v[s];
        if c != 0 {
            for (t, x) in v.iter_mut().enumerate() {
                *x -= c * cartan.a[t][s];
            }
        }
    }

    fn reflect_general(cartan: &CartanMatrix, beta: &RootVec, beta_vee: &CorootVec, v: &WeightVec) -> WeightVec {
        let c = v.dot(beta_vee);
        v - &(&cartan.root_to_weight_coords(beta) * c)
    }
}

impl Basis for Coroots {
    const SYMBOL: &'static str = "α∨";

    fn reflect_simple(cartan: &CartanMatrix, s: usize, v: &mut [i64]) {
        let c: i64 = (0..v.len()).map(|t| cartan.a[t][s] * v[t]).sum();
        v[s] -= c;
    }

    fn reflect_general(cartan: &CartanMatrix, beta: &RootVec, beta_vee: &CorootVec, v: &CorootVec) -> CorootVec {
        let c = cartan.pair(beta, v);
        v - &(beta_vee * c)
    }
}

impl Basis for Coweights {
    const SYMBOL: &'static str = "ω∨";

    fn reflect_simple(cartan: &CartanMatrix, s: usize, v: &mut [i64]) {
        let c = v[s];
        if c != 0 {
            for (t, x) in v.iter_mut().enumerate() {
                *x -= c * cartan.a[s][t];
            }
        }
    }

    fn reflect_general(cartan: &CartanMatrix, beta: &RootVec, beta_vee: &CorootVec, v: &CoweightVec) -> CoweightVec {
        let c = v.dot(beta);
        v - &(&cartan.coroot_to_coweight_coords(beta_vee) * c)
    }
}

/// Integer coordinates in the basis `B`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector<B: Basis> {
    coords: Vec<i64>,
    #[serde(skip)]
    basis: PhantomData<B>,
}

pub type RootVec = Vector<Roots>;
pub type WeightVec = Vector<Weights>;
pub type CorootVec = Vector<Coroots>;
pub type CoweightVec = Vector<Coweights>;

impl<B: Basis> Vector<B> {
    pub fn new(coords: Vec<i64>) -> Self {
        Vector {
            coords,
            basis: PhantomData,
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    /// The `s`-th basis vector (0-based).
    pub fn unit(n: usize, s: usize) -> Self {
        let mut v = vec![0; n];
        v[s] = 1;
        Self::new(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|&x| x >= 0)
    }

    pub fn is_nonpositive(&self) -> bool {
        self.coords.iter().all(|&x| x <= 0)
    }

    /// Nonzero and all coordinates of one sign.
    pub fn is_positive(&self) -> bool {
        self.is_nonnegative() && !self.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.is_nonpositive() && !self.is_zero()
    }

    pub fn is_sign_coherent(&self) -> bool {
        self.is_nonnegative() || self.is_nonpositive()
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    /// Plain coordinate dot product; the natural pairing between dual bases.
    pub fn dot<C: Basis>(&self, other: &Vector<C>) -> i64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }
}

impl<B: Basis> std::ops::Index<usize> for Vector<B> {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.coords[i]
    }
}

impl<B: Basis> From<Vec<i64>> for Vector<B> {
    fn from(v: Vec<i64>) -> Self {
        Vector::new(v)
    }
}

impl<B: Basis> Add for &Vector<B> {
    type Output = Vector<B>;
    fn add(self, rhs: &Vector<B>) -> Vector<B> {
        Vector::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl<B: Basis> Add for Vector<B> {
    type Output = Vector<B>;
    fn add(self, rhs: Vector<B>) -> Vector<B> {
        &self + &rhs
    }
}

impl<B: Basis> AddAssign<&Vector<B>> for Vector<B> {
    fn add_assign(&mut self, rhs: &Vector<B>) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

impl<B: Basis> Sub for &Vector<B> {
    type Output = Vector<B>;
    fn sub(self, rhs: &Vector<B>) -> Vector<B> {
        Vector::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect())
    }
}

impl<B: Basis> Sub for Vector<B> {
    type Output = Vector<B>;
    fn sub(self, rhs: Vector<B>) -> Vector<B> {
        &self - &rhs
    }
}

impl<B: Basis> SubAssign<&Vector<B>> for Vector<B> {
    fn sub_assign(&mut self, rhs: &Vector<B>) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a -= b;
        }
    }
}

impl<B: Basis> Neg for &Vector<B> {
    type Output = Vector<B>;
    fn neg(self) -> Vector<B> {
        Vector::new(self.coords.iter().map(|a| -a).collect())
    }
}

impl<B: Basis> Neg for Vector<B> {
    type Output = Vector<B>;
    fn neg(self) -> Vector<B> {
        -&self
    }
}

impl<B: Basis> Mul<i64> for &Vector<B> {
    type Output = Vector<B>;
    fn mul(self, k: i64) -> Vector<B> {
        Vector::new(self.coords.iter().map(|a| a * k).collect())
    }
}

fn subscript(mut k: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    let mut out = Vec::new();
    loop {
        out.push(DIGITS[k % 10]);
        k /= 10;
        if k == 0 {
            break;
        }
    }
    out.iter().rev().collect()
}

/// Prints e.g. `α₁+α₂`, `−ω₁+ω₂` or `0`.
impl<B: Basis> fmt::Display for Vector<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                f.write_str("−")?;
            } else if !first {
                f.write_str("+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{}{}", B::SYMBOL, subscript(i + 1))?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<B: Basis> fmt::Debug for Vector<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

/// A Cartan matrix together with its positive roots and coroots.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan: CartanMatrix,
    positive_roots: Vec<RootVec>,
    positive_coroots: Vec<CorootVec>,
}

impl RootSystem {
    pub fn new(cartan: CartanMatrix) -> Result<Self> {
        let positive_roots = positive_roots(&cartan)?;
        let positive_coroots = positive_roots
            .iter()
            .map(|b| cartan.coroot_of(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(RootSystem {
            cartan,
            positive_roots,
            positive_coroots,
        })
    }

    pub fn of_type(family: Family, rank: usize) -> Result<Self> {
        Self::new(CartanMatrix::of_type(family, rank)?)
    }

    pub fn from_type_str(s: &str) -> Result<Self> {
        Self::new(CartanMatrix::from_type_str(s)?)
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn positive_roots(&self) -> &[RootVec] {
        &self.positive_roots
    }

    /// Coroots matching [`positive_roots`](Self::positive_roots) index by
    /// index.
    pub fn positive_coroots(&self) -> &[CorootVec] {
        &self.positive_coroots
    }

    /// `N = |Φ⁺|`.
    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn simple_root(&self, s: usize) -> RootVec {
        RootVec::unit(self.rank(), s)
    }

    pub fn is_root(&self, v: &RootVec) -> bool {
        let p = if v.is_nonnegative() { v.clone() } else { -v };
        self.positive_roots.binary_search_by(|r| root_order(r, &p)).is_ok()
    }
}

fn root_order(a: &RootVec, b: &RootVec) -> std::cmp::Ordering {
    a.height()
        .cmp(&b.height())
        .then_with(|| b.coords().cmp(a.coords()))
}

/// All positive roots, ordered by height and then lexicographically
/// decreasing (so the simple roots come first, in index order).
///
/// Closure under simple reflections starting from `Δ`; gives up after
/// `10·n²` rounds.
pub fn positive_roots(cartan: &CartanMatrix) -> Result<Vec<RootVec>> {
    let n = cartan.rank();
    let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier: Vec<RootVec> = (0..n).map(|s| RootVec::unit(n, s)).collect();
    for r in &frontier {
        all.insert(r.coords().to_vec());
    }
    let cap = 10 * n * n;
    let mut rounds = 0;
    while !frontier.is_empty() {
        rounds += 1;
        if rounds > cap {
            return Err(Error::RootClosureDiverged(cap));
        }
        let mut next = Vec::new();
        for r in &frontier {
            for s in 0..n {
                let mut img = r.clone();
                cartan.reflect_in_place(s, &mut img);
                if img.is_positive() && all.insert(img.coords().to_vec()) {
                    next.push(img);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<RootVec> = all.into_iter().map(Vector::new).collect();
    out.sort_by(root_order);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CartanMatrix {
        CartanMatrix::of_type(Family::A, 2).unwrap()
    }

    #[test]
    fn type_tables() {
        assert_eq!(a2().rows(), &[vec![2, -1], vec![-1, 2]]);
        let g2 = CartanMatrix::of_type(Family::G, 2).unwrap();
        assert_eq!(g2.rows(), &[vec![2, -1], vec![-3, 2]]);
        let b2 = CartanMatrix::of_type(Family::B, 2).unwrap();
        assert_eq!(b2.rows(), &[vec![2, -1], vec![-2, 2]]);
        assert!(matches!(
            CartanMatrix::of_type(Family::D, 3),
            Err(Error::InvalidType { family: 'D', rank: 3 })
        ));
        assert!(CartanMatrix::of_type(Family::E, 9).is_err());
        assert!(CartanMatrix::of_type(Family::A, 0).is_err());
        for t in ["A1", "A5", "B4", "C3", "D4", "D6", "E6", "E7", "E8", "F4", "G2"] {
            let c = CartanMatrix::from_type_str(t).unwrap();
            // The tables pass the generic validation too.
            CartanMatrix::from_rows(c.rows().to_vec()).unwrap();
        }
    }

    #[test]
    fn rejects_non_finite() {
        // Affine A1.
        assert!(CartanMatrix::from_rows(vec![vec![2, -2], vec![-2, 2]]).is_err());
        // Hyperbolic-ish cycle.
        let cyc = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert!(CartanMatrix::from_rows(cyc).is_err());
        assert!(CartanMatrix::from_rows(vec![vec![2, 0], vec![-1, 2]]).is_err());
    }

    #[test]
    fn reflections() {
        let c = a2();
        let a2v = RootVec::from(vec![0, 1]);
        assert_eq!(c.reflect(0, &a2v).unwrap().coords(), &[1, 1]);
        let w1 = WeightVec::from(vec![1, 0]);
        assert_eq!(c.reflect(0, &w1).unwrap().coords(), &[-1, 1]);
        let a1v = RootVec::unit(2, 0);
        assert_eq!(c.reflect(0, &a1v).unwrap(), -&a1v);
        assert!(matches!(c.reflect(2, &a1v), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn weight_conversions() {
        let c = a2();
        assert_eq!(c.root_to_weight_coords(&RootVec::unit(2, 0)).coords(), &[2, -1]);
        assert_eq!(c.root_to_weight_coords(&RootVec::unit(2, 1)).coords(), &[-1, 2]);
        assert!(c.root_to_weight_coords(&RootVec::zero(2)).is_zero());
        let w = WeightVec::from(vec![1, 1]);
        assert!(c.weight_diff_to_root_coords(&w, &w).unwrap().is_zero());
        let d = c
            .weight_diff_to_root_coords(&WeightVec::from(vec![1, 0]), &WeightVec::from(vec![-1, 1]))
            .unwrap();
        assert_eq!(d.coords(), &[1, 0]);
        // ω₁ alone is not in the root lattice of A₂.
        assert!(matches!(
            c.weight_diff_to_root_coords(&WeightVec::from(vec![1, 0]), &WeightVec::zero(2)),
            Err(Error::NotInRootLattice(_))
        ));
    }

    #[test]
    fn pairing() {
        let c = CartanMatrix::of_type(Family::B, 3).unwrap();
        for s in 0..3 {
            for t in 0..3 {
                assert_eq!(c.pair(&RootVec::unit(3, t), &CorootVec::unit(3, s)), c.entry(s, t));
            }
        }
        let a = a2();
        assert_eq!(a.pair(&RootVec::from(vec![1, 1]), &CorootVec::unit(2, 0)), 1);
    }

    #[test]
    fn root_counts() {
        let rs = RootSystem::of_type(Family::A, 2).unwrap();
        let got: Vec<Vec<i64>> = rs.positive_roots().iter().map(|r| r.coords().to_vec()).collect();
        assert_eq!(got, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(RootSystem::of_type(Family::A, 1).unwrap().num_positive_roots(), 1);
        for t in ["G2", "B3", "C3", "D4", "F4", "E6", "E7", "E8", "A6"] {
            let ty: FiniteType = t.parse().unwrap();
            let rs = RootSystem::from_type_str(t).unwrap();
            assert_eq!(rs.num_positive_roots(), ty.num_positive_roots(), "{t}");
        }
    }

    #[test]
    fn catalan_numbers() {
        let cases = [("A2", 5), ("A3", 14), ("B2", 6), ("G2", 8), ("B3", 20), ("D4", 50), ("F4", 105), ("E6", 833)];
        for (t, n) in cases {
            assert_eq!(t.parse::<FiniteType>().unwrap().catalan_number(), n, "{t}");
        }
    }

    #[test]
    fn display() {
        assert_eq!(RootVec::from(vec![1, 1]).to_string(), "α₁+α₂");
        assert_eq!(RootVec::from(vec![-1, -1]).to_string(), "−α₁−α₂");
        assert_eq!(WeightVec::from(vec![-1, 1]).to_string(), "−ω₁+ω₂");
        assert_eq!(WeightVec::from(vec![1, 3]).to_string(), "ω₁+3ω₂");
        assert_eq!(RootVec::zero(3).to_string(), "0");
    }
}
