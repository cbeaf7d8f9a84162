//! Exact feasibility of `A·λ = b, λ ≥ 0` by the phase-one simplex method
//! over the rationals, with Bland's rule.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};

/// Field operations that may report overflow.
trait Scalar: Clone + PartialOrd + Zero + Signed {
    fn from_i64(v: i64) -> Self;
    fn csub(&self, o: &Self) -> Option<Self>;
    fn cmul(&self, o: &Self) -> Option<Self>;
    fn cdiv(&self, o: &Self) -> Option<Self>;
    fn to_big(&self) -> BigRational;
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn csub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn cmul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn cdiv(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn to_big(&self) -> BigRational {
        self.clone()
    }
}

impl Scalar for Ratio<i128> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(i128::from(v))
    }
    fn csub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn cmul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn cdiv(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

/// A nonnegative solution of `A·λ = b`, if one exists. `a` is given by rows.
pub fn feasible_point(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    match phase_one::<Ratio<i128>>(a, b) {
        Ok(sol) => sol.map(|v| v.iter().map(Scalar::to_big).collect()),
        Err(Overflow) => phase_one::<BigRational>(a, b).unwrap_or_else(|_| unreachable!("BigRational cannot overflow")),
    }
}

struct Overflow;

fn phase_one<T: Scalar>(a: &[Vec<i64>], b: &[i64]) -> Result<Option<Vec<T>>, Overflow> {
    let m = a.len();
    assert_eq!(m, b.len(), "row count");
    let k = a.first().map_or(0, |r| r.len());
    let q = T::from_i64;
    let ov = |x: Option<T>| x.ok_or(Overflow);

    // Columns: k originals, then m artificials, then the right-hand side.
    let width = k + m + 1;
    let mut t: Vec<Vec<T>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), k, "ragged matrix");
        let flip = b[i] < 0;
        let mut r = vec![T::zero(); width];
        for j in 0..k {
            r[j] = q(if flip { -row[j] } else { row[j] });
        }
        r[k + i] = q(1);
        r[width - 1] = q(b[i].abs());
        t.push(r);
    }
    let mut basis: Vec<usize> = (k..k + m).collect();
    // Reduced costs of the phase-one objective Σ artificials.
    let mut cost = vec![T::zero(); width];
    for r in &t {
        for j in (0..k).chain([width - 1]) {
            cost[j] = ov(cost[j].csub(&r[j]))?;
        }
    }

    while let Some(enter) = (0..k + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<usize> = None;
        let mut best: Option<T> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = ov(t[i][width - 1].cdiv(&t[i][enter]))?;
            let better = match &best {
                None => true,
                Some(b) => ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()]),
            };
            if better {
                best = Some(ratio);
                leave = Some(i);
            }
        }
        // Phase one is bounded below by zero, so a pivot row always exists.
        let p = leave.expect("phase-one objective is bounded");
        let piv = t[p][enter].clone();
        for x in t[p].iter_mut() {
            *x = ov(x.cdiv(&piv))?;
        }
        let prow = t[p].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == p || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = ov(x.csub(&ov(f.cmul(y))?))?;
                }
            }
        }
        let f = cost[enter].clone();
        for (x, y) in cost.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x = ov(x.csub(&ov(f.cmul(y))?))?;
            }
        }
        basis[p] = enter;
    }

    if !cost[width - 1].is_zero() {
        return Ok(None);
    }
    let mut sol = vec![T::zero(); k];
    for (i, &bj) in basis.iter().enumerate() {
        if bj < k {
            sol[bj] = t[i][width - 1].clone();
        }
    }
    Ok(Some(sol))
}

/// Whether `p` is a convex combination of `points`.
pub fn in_convex_hull(points: &[Vec<i64>], p: &[i64]) -> bool {
    if points.is_empty() {
        return false;
    }
    let d = p.len();
    let mut a: Vec<Vec<i64>> = (0..d).map(|c| points.iter().map(|v| v[c]).collect()).collect();
    a.push(vec![1; points.len()]);
    let mut b = p.to_vec();
    b.push(1);
    feasible_point(&a, &b).is_some()
}
