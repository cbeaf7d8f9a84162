//! Words in the simple reflections, group elements in the reflection
//! representation, lengths, the longest element and Coxeter-sorting words.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::rootsys::{CartanMatrix, RootSystem, RootVec};

/// A word in the simple reflections. Letters are stored 0-based and printed
/// 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    /// Build from 1-based letters, as written in the literature.
    pub fn from_one_based(letters: &[usize]) -> Result<Self> {
        letters
            .iter()
            .map(|&l| {
                l.checked_sub(1)
                    .ok_or_else(|| Error::Parse("letters are 1-based".into()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|l| l + 1).collect()
    }

    pub fn check_range(&self, rank: usize) -> Result<()> {
        match self.0.iter().find(|&&l| l >= rank) {
            Some(&l) => Err(Error::IndexOutOfRange { index: l + 1, rank }),
            None => Ok(()),
        }
    }

    /// Whether every letter of `0..rank` occurs exactly once.
    pub fn is_coxeter_word(&self, rank: usize) -> bool {
        self.0.len() == rank && self.0.iter().collect::<BTreeSet<_>>().len() == rank && self.check_range(rank).is_ok()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The subword keeping only letters in `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Word {
        Word(self.0.iter().copied().filter(|&l| keep(l)).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().map(|l| l + 1).join(","))
    }
}

/// Parses comma separated 1-based letters, e.g. `1,3,2`.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::default());
        }
        let letters = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad letter {t:?} in word {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::from_one_based(&letters)
    }
}

/// An element of the Weyl group, stored as its matrix on simple-root
/// coordinates: column `t` is the image of `α_t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    mat: Vec<Vec<i64>>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        let mat = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        GroupElement { mat }
    }

    pub fn simple_reflection(cartan: &CartanMatrix, s: usize) -> Self {
        let n = cartan.rank();
        let mut g = Self::identity(n);
        // s(α_t) = α_t − a_st α_s, so only row s changes.
        for t in 0..n {
            g.mat[s][t] -= cartan.entry(s, t);
        }
        g
    }

    pub fn rank(&self) -> usize {
        self.mat.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.mat
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    pub fn compose(&self, rhs: &GroupElement) -> GroupElement {
        let n = self.rank();
        let mut mat = vec![vec![0; n]; n];
        for i in 0..n {
            for k in 0..n {
                let a = self.mat[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    mat[i][j] += a * rhs.mat[k][j];
                }
            }
        }
        GroupElement { mat }
    }

    pub fn apply(&self, v: &RootVec) -> RootVec {
        let n = self.rank();
        RootVec::new((0..n).map(|i| (0..n).map(|j| self.mat[i][j] * v[j]).sum()).collect())
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, rs: &RootSystem) -> usize {
        rs.positive_roots()
            .iter()
            .filter(|b| self.apply(b).is_negative())
            .count()
    }
}

/// The product of the simple reflections of `w`, in word order.
pub fn element_of_word(cartan: &CartanMatrix, w: &Word) -> Result<GroupElement> {
    w.check_range(cartan.rank())?;
    let mut g = GroupElement::identity(cartan.rank());
    for &s in w.letters() {
        g = g.compose(&GroupElement::simple_reflection(cartan, s));
    }
    Ok(g)
}

/// The longest element, found by right-multiplying with simple reflections
/// as long as that increases the length.
pub fn longest_element(rs: &RootSystem) -> GroupElement {
    let cartan = rs.cartan();
    let n = cartan.rank();
    let mut g = GroupElement::identity(n);
    // ℓ(gs) > ℓ(g) iff g(α_s) > 0.
    while let Some(s) = (0..n).find(|&s| g.apply(&rs.simple_root(s)).is_positive()) {
        g = g.compose(&GroupElement::simple_reflection(cartan, s));
    }
    g
}

/// The `c`-sorting word of `target`: the lexicographically first subword of
/// `c^∞` that is a reduced word for `target`.
pub fn c_sorting_word(rs: &RootSystem, c: &Word, target: &GroupElement) -> Result<Word> {
    let n = rs.rank();
    if !c.is_coxeter_word(n) {
        return Err(Error::NotCoxeterWord(c.to_string()));
    }
    let cap = n * (rs.num_positive_roots() + 1);
    let mut rest = target.clone();
    let mut len = rest.length(rs);
    let mut out = Vec::with_capacity(len);
    for idx in 0.. {
        if len == 0 {
            break;
        }
        if idx >= cap {
            return Err(Error::Invariant(format!(
                "c-sorting scan exceeded {cap} letters"
            )));
        }
        let s = c.letters()[idx % n];
        let shorter = GroupElement::simple_reflection(rs.cartan(), s).compose(&rest);
        let l = shorter.length(rs);
        if l < len {
            out.push(s);
            rest = shorter;
            len = l;
        }
    }
    Ok(Word(out))
}

/// Canonical representative of the commutation class of a word whose letters
/// are pairwise distinct: the lexicographically smallest linear extension
/// of its heap. Swapping adjacent commuting letters that are out of order
/// cannot change it.
pub fn commutation_canonical(w: &Word, commutes: impl Fn(usize, usize) -> bool) -> Word {
    let letters = w.letters();
    let k = letters.len();
    let mut used = vec![false; k];
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        // Letter at index i is available if every earlier unused letter
        // commutes with it.
        let best = (0..k)
            .filter(|&i| !used[i])
            .filter(|&i| (0..i).all(|j| used[j] || commutes(letters[j], letters[i])))
            .min_by_key(|&i| letters[i])
            .expect("some letter is always available");
        used[best] = true;
        out.push(letters[best]);
    }
    Word(out)
}

/// All prefixes up to commutation of a word with pairwise distinct letters,
/// i.e. the order ideals of its heap, each in canonical form.
pub fn prefixes_up_to_commutation(w: &Word, commutes: impl Fn(usize, usize) -> bool + Copy) -> BTreeSet<Word> {
    let letters = w.letters();
    let k = letters.len();
    // below[i]: indices j < i whose letter does not commute with letter i.
    let below: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..i).filter(|&j| !commutes(letters[j], letters[i])).collect())
        .collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << k) {
        let closed = (0..k)
            .filter(|&i| mask >> i & 1 == 1)
            .all(|i| below[i].iter().all(|&j| mask >> j & 1 == 1));
        if closed {
            let sub = Word((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| letters[i]).collect());
            out.insert(commutation_canonical(&sub, commutes));
        }
    }
    out
}

/// Type-`A` commutation: `τ_s` and `τ_t` commute unless `|s − t| = 1`.
pub fn type_a_commutes(s: usize, t: usize) -> bool {
    s.abs_diff(t) != 1
}

/// Prefixes of `c` restricted to the letters `i..=j` (0-based, type `A`
/// numbering), as canonical words. Includes the empty prefix.
pub fn restricted_prefixes(c: &Word, i: usize, j: usize) -> BTreeSet<Word> {
    assert!(i <= j, "empty letter interval");
    let restricted = c.restrict(|l| (i..=j).contains(&l));
    prefixes_up_to_commutation(&restricted, type_a_commutes)
}

/// One reduced word per Coxeter element (commutation class of Coxeter
/// words), in canonical form and sorted.
pub fn coxeter_elements(cartan: &CartanMatrix) -> Vec<Word> {
    let n = cartan.rank();
    let mut seen = BTreeSet::new();
    for perm in (0..n).permutations(n) {
        seen.insert(commutation_canonical(&Word(perm), |s, t| cartan.commutes(s, t)));
    }
    seen.into_iter().collect()
}
