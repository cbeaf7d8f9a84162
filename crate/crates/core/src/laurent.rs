//! Laurent polynomials in `x₁..x_n, y₁..y_n` with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Laurent polynomial in `2n` variables. Exponent vectors list the `x`
/// part first, then the `y` part. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MPoly {
    n: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl MPoly {
    pub fn zero(n: usize) -> Self {
        MPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, vec![0; 2 * n], BigInt::one())
    }

    pub fn monomial(n: usize, exps: Vec<i64>, coeff: BigInt) -> Self {
        assert_eq!(exps.len(), 2 * n, "exponent vector length");
        let mut p = Self::zero(n);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    /// The variable `x_i` (0-based).
    pub fn x(n: usize, i: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[i] = 1;
        Self::monomial(n, e, BigInt::one())
    }

    /// The variable `y_i` (0-based).
    pub fn y(n: usize, i: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[n + i] = 1;
        Self::monomial(n, e, BigInt::one())
    }

    /// `x^a y^b` with coefficient 1.
    pub fn xy(x: &[i64], y: &[i64]) -> Self {
        assert_eq!(x.len(), y.len());
        let mut e = x.to_vec();
        e.extend_from_slice(y);
        Self::monomial(x.len(), e, BigInt::one())
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Number of `x` (equivalently `y`) variables.
    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigInt> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Multiply by the monomial with exponent vector `e`.
    pub fn shift(&self, e: &[i64]) -> Self {
        MPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Componentwise minimum of all exponent vectors.
    pub fn min_exponents(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()))
    }

    /// Componentwise maximum of all exponent vectors.
    pub fn max_exponents(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.max(b)).collect()))
    }

    /// Exact quotient `self / d`. Fails when `d` does not divide `self` in
    /// the Laurent polynomial ring.
    pub fn exact_div(&self, d: &MPoly) -> Result<MPoly> {
        if d.is_zero() {
            return Err(Error::Invariant("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.n));
        }
        // Clearing monomial factors reduces to division of ordinary
        // polynomials, where the divisor has no monomial factor.
        let dmin = d.min_exponents().expect("nonzero");
        let pmin = self.min_exponents().expect("nonzero");
        let neg = |v: &[i64]| v.iter().map(|a| -a).collect::<Vec<_>>();
        let dd = d.shift(&neg(&dmin));
        let mut rem = self.shift(&neg(&pmin));
        let (lead_e, lead_c) = dd.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).expect("nonzero");
        let mut quot = Self::zero(self.n);
        while let Some((e, c)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i64> = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            let (qc, r) = c.div_rem(&lead_c);
            if qe.iter().any(|&a| a < 0) || !r.is_zero() {
                return Err(Error::Invariant(format!("{self} is not divisible by {d}")));
            }
            let t = Self::monomial(self.n, qe, qc);
            rem = &rem - &(&t * &dd);
            quot = &quot + &t;
        }
        let back: Vec<i64> = pmin.iter().zip(&dmin).map(|(a, b)| a - b).collect();
        Ok(quot.shift(&back))
    }

    /// Substitute `x = 1`, keeping the `y` exponents.
    pub fn at_x_one(&self) -> BTreeMap<Vec<i64>, BigInt> {
        let mut out: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            *out.entry(e[self.n..].to_vec()).or_default() += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// The terms without `y`, i.e. `self(x, 0)`, assuming every `y`
    /// exponent is nonnegative.
    pub fn at_y_zero(&self) -> MPoly {
        MPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[self.n..].iter().all(|&a| a == 0))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    fn fmt_monomial(&self, e: &[i64], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &a) in e.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let (name, idx) = if k < self.n { ("x", k + 1) } else { ("y", k - self.n + 1) };
            write!(f, "{name}{idx}")?;
            if a != 1 {
                write!(f, "^{a}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }

    fn fmt_sum(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            let constant = e.iter().all(|&a| a == 0);
            if !mag.is_one() {
                write!(f, "{mag}")?;
                if !constant {
                    write!(f, "*")?;
                }
            } else if constant {
                write!(f, "1")?;
                continue;
            }
            if !constant {
                self.fmt_monomial(e, f)?;
            }
        }
        Ok(())
    }
}

/// Printed as `numerator/denominator` with a monomial denominator in `x`,
/// e.g. `(x1*y1*y2 + x2 + y1)/(x1*x2)`.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(min) = self.min_exponents() else {
            return write!(f, "0");
        };
        let den: Vec<i64> = min.iter().map(|&a| (-a).max(0)).collect();
        if den.iter().all(|&a| a == 0) {
            return self.fmt_sum(f);
        }
        let num = self.shift(&den);
        if num.num_terms() > 1 {
            write!(f, "(")?;
            num.fmt_sum(f)?;
            write!(f, ")")?;
        } else {
            num.fmt_sum(f)?;
        }
        write!(f, "/")?;
        let multi = den.iter().filter(|&&a| a != 0).count() > 1 || den.iter().any(|&a| a > 1);
        if multi {
            write!(f, "(")?;
        }
        self.fmt_monomial(&den, f)?;
        if multi {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl Add for &MPoly {
    type Output = MPoly;

    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;

    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;

    fn neg(self) -> MPoly {
        MPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;

    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MPoly {
        MPoly::x(2, i)
    }

    fn y(i: usize) -> MPoly {
        MPoly::y(2, i)
    }

    #[test]
    fn arithmetic() {
        let p = &x(0) + &y(0);
        let q = &p * &p;
        assert_eq!(q.num_terms(), 3);
        assert_eq!(q, p.pow(2));
        assert!((&q - &q).is_zero());
        assert_eq!(&(-&p) + &p, MPoly::zero(2));
    }

    #[test]
    fn exact_division() {
        let a = &x(1) + &y(0);
        let b = &(&x(0) * &y(0)) + &MPoly::one(2);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        let lau = prod.shift(&[-2, 1, 0, 3]);
        assert_eq!(lau.exact_div(&a.shift(&[-1, -1, 0, 0])).unwrap(), b.shift(&[-1, 2, 0, 3]));
        assert!(a.exact_div(&b).is_err());
        assert!((&x(0) + &MPoly::one(2)).exact_div(&(&x(0) + &x(0))).is_err());
    }

    #[test]
    fn display() {
        let num = &(&(&x(0) * &y(0)) * &y(1)) + &(&x(1) + &y(0));
        let u = num.shift(&[-1, -1, 0, 0]);
        assert_eq!(u.to_string(), "(x1*y1*y2 + x2 + y1)/(x1*x2)");
        assert_eq!((&x(1) + &y(0)).shift(&[-1, 0, 0, 0]).to_string(), "(x2 + y1)/x1");
        assert_eq!(x(0).to_string(), "x1");
        assert_eq!(MPoly::zero(2).to_string(), "0");
    }

    #[test]
    fn specializations() {
        let u = (&(&x(1) * &y(1)) + &y(0)).shift(&[-1, 0, 0, 0]);
        let f = u.at_x_one();
        assert_eq!(f.len(), 2);
        assert!(u.at_y_zero().is_zero());
        assert_eq!(x(0).at_y_zero(), x(0));
    }
}
