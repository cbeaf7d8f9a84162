//! JSON shapes for emitted artifacts.
//!
//! Integer coefficients are written as JSON numbers when they fit in an
//! `i64` and as decimal strings otherwise, so that no reader ever rounds.
//! Positions are 1-based, as everywhere in the text output.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cluster::{g_vector, FPolynomial, Seed};
use crate::error::{Error, Result};
use crate::laurent::MPoly;
use crate::polytope::LatticePolytope;
use crate::rootsys::{CartanMatrix, FiniteType};
use crate::subword::{Facet, RootTable};

/// `{family, rank, cartan}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanJson {
    pub family: Option<String>,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
}

impl From<&CartanMatrix> for CartanJson {
    fn from(c: &CartanMatrix) -> Self {
        CartanJson {
            family: c.finite_type().map(|t: FiniteType| t.family().letter().to_string()),
            rank: c.rank(),
            cartan: c.rows().to_vec(),
        }
    }
}

impl TryFrom<CartanJson> for CartanMatrix {
    type Error = Error;

    fn try_from(j: CartanJson) -> Result<CartanMatrix> {
        if j.cartan.len() != j.rank {
            return Err(Error::DimensionMismatch {
                expected: j.rank,
                found: j.cartan.len(),
            });
        }
        match j.family {
            Some(f) => {
                let typed = CartanMatrix::from_type_str(&format!("{f}{}", j.rank))?;
                if typed.rows() != j.cartan.as_slice() {
                    return Err(Error::InvalidCartan(format!("rows do not match type {}", typed.label())));
                }
                Ok(typed)
            }
            None => CartanMatrix::from_rows(j.cartan),
        }
    }
}

/// An exact integer: a JSON number inside the `i64` range, a decimal string
/// outside it. Both forms are accepted on input.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coeff(pub BigInt);

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Coeff;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Coeff, E> {
                Ok(Coeff(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Coeff, E> {
                Ok(Coeff(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Coeff, E> {
                v.parse().map(Coeff).map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

/// One term `coeff · x^x · y^y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
    pub coeff: Coeff,
}

/// A Laurent polynomial in `x` and `y`, terms in exponent order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub text: String,
    pub terms: Vec<TermJson>,
}

impl From<&MPoly> for LaurentJson {
    fn from(p: &MPoly) -> Self {
        let n = p.nvars();
        LaurentJson {
            text: p.to_string(),
            terms: p
                .terms()
                .iter()
                .map(|(e, c)| TermJson {
                    x: e[..n].to_vec(),
                    y: e[n..].to_vec(),
                    coeff: Coeff(c.clone()),
                })
                .collect(),
        }
    }
}

impl LaurentJson {
    /// The polynomial in `n` pairs of variables. The `text` field is ignored.
    pub fn to_mpoly(&self, n: usize) -> Result<MPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            for part in [&t.x, &t.y] {
                if part.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: part.len(),
                    });
                }
            }
            terms.push(([t.x.as_slice(), t.y.as_slice()].concat(), t.coeff.0.clone()));
        }
        Ok(MPoly::from_terms(n, terms))
    }
}

/// An F-polynomial as `exponent → coefficient` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FPolyJson {
    pub text: String,
    pub terms: Vec<(Vec<i64>, Coeff)>,
}

impl From<&FPolynomial> for FPolyJson {
    fn from(f: &FPolynomial) -> Self {
        FPolyJson {
            text: f.to_string(),
            terms: f.terms().iter().map(|(e, c)| (e.clone(), Coeff(c.clone()))).collect(),
        }
    }
}

impl FPolyJson {
    pub fn to_fpoly(&self, n: usize) -> Result<FPolynomial> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: e.len(),
                });
            }
            terms.insert(e.clone(), c.0.clone());
        }
        Ok(FPolynomial::new(n, terms))
    }
}

/// A facet with its configurations and brick vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetJson {
    /// 1-based.
    pub positions: Vec<usize>,
    /// Simple-root coordinates, in position order.
    pub root_configuration: Vec<Vec<i64>>,
    /// Fundamental-weight coordinates, in position order.
    pub weight_configuration: Vec<Vec<i64>>,
    pub brick_vector: Vec<i64>,
}

impl FacetJson {
    pub fn new(facet: &Facet, table: &RootTable) -> Self {
        FacetJson {
            positions: facet.one_based(),
            root_configuration: table.root_configuration(facet).iter().map(|r| r.coords().to_vec()).collect(),
            weight_configuration: table.weight_configuration(facet).iter().map(|w| w.coords().to_vec()).collect(),
            brick_vector: table.brick_vector().into_coords(),
        }
    }

    pub fn facet(&self) -> Result<Facet> {
        if self.positions.contains(&0) {
            return Err(Error::Parse("facet positions are 1-based".into()));
        }
        Ok(Facet::from_one_based(&self.positions))
    }
}

/// A seed. Vectors are listed per column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    /// All `2n` rows of the extended exchange matrix.
    pub matrix: Vec<Vec<i64>>,
    pub variables: Vec<LaurentJson>,
    /// `y`-exponents of the frozen variables.
    pub frozen: Vec<Vec<i64>>,
    pub d_vectors: Vec<Vec<i64>>,
    pub g_vectors: Vec<Vec<i64>>,
    pub c_vectors: Vec<Vec<i64>>,
}

impl SeedJson {
    pub fn new(seed: &Seed) -> Result<Self> {
        Ok(SeedJson {
            matrix: seed.matrix().to_vec(),
            variables: seed.variables().iter().map(LaurentJson::from).collect(),
            frozen: seed.frozen().to_vec(),
            d_vectors: seed.labels().iter().map(|d| d.coords().to_vec()).collect(),
            g_vectors: seed
                .variables()
                .iter()
                .map(|u| g_vector(u).map(|g| g.into_coords()))
                .collect::<Result<_>>()?,
            c_vectors: seed.c_vectors().into_iter().map(|c| c.into_coords()).collect(),
        })
    }

    /// Rebuilds the seed and checks that the derived vectors agree.
    pub fn to_seed(&self) -> Result<Seed> {
        let n = self.variables.len();
        let vars = self.variables.iter().map(|v| v.to_mpoly(n)).collect::<Result<Vec<_>>>()?;
        let seed = Seed::from_parts(self.matrix.clone(), vars, self.frozen.clone())?;
        let again = SeedJson::new(&seed)?;
        let same = again.d_vectors == self.d_vectors && again.g_vectors == self.g_vectors && again.c_vectors == self.c_vectors;
        if !same {
            return Err(Error::Parse("seed vectors disagree with its variables".into()));
        }
        Ok(seed)
    }
}

/// A polytope by vertices, optionally with its lattice points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_points: Option<Vec<Vec<i64>>>,
}

impl PolytopeJson {
    pub fn new(p: &LatticePolytope, with_lattice_points: bool) -> Self {
        PolytopeJson {
            dim: p.dim(),
            vertices: p.vertices().to_vec(),
            lattice_points: with_lattice_points.then(|| p.lattice_points()),
        }
    }

    /// Recomputes the hull, so non-vertices in the file are dropped.
    pub fn to_polytope(&self) -> Result<LatticePolytope> {
        let p = LatticePolytope::hull(&self.vertices)?;
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.dim(),
            });
        }
        Ok(p)
    }
}
