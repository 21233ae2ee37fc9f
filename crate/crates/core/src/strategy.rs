//! How rank computations are carried out: symbolically over Q(q), or at a
//! pair of rational specializations of q whose ranks must agree.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Field, Matrix};
use crate::qscalar::{rat, QScalar, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Strategy {
    Symbolic,
    /// Exact arithmetic at each point; results must agree across points.
    Specialized(Vec<Rational>),
}

impl Strategy {
    /// `q = 7/5` and `q = 3/2`.
    pub fn dual() -> Self {
        Strategy::Specialized(default_points())
    }

    pub fn describe(&self) -> String {
        match self {
            Strategy::Symbolic => "symbolic".into(),
            Strategy::Specialized(p) => format!(
                "specialized at q = {}",
                p.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        }
    }
}

pub fn default_points() -> Vec<Rational> {
    vec![rat(7, 5), rat(3, 2)]
}

/// Runs `f` at every point (in parallel) and insists all results agree.
pub fn agree_at_points<T, F>(points: &[Rational], what: &str, f: F) -> Result<T>
where
    T: PartialEq + Send + std::fmt::Debug,
    F: Fn(&Rational) -> Result<T> + Sync,
{
    let results: Vec<T> = points.par_iter().map(&f).collect::<Result<_>>()?;
    let mut it = results.into_iter();
    let first = it
        .next()
        .ok_or_else(|| Error::Unsupported("no specialization points given".into()))?;
    for (k, other) in it.enumerate() {
        if other != first {
            return Err(Error::Inconsistent(format!(
                "{what}: specializations disagree ({first:?} at q = {} vs {other:?} at q = {}); \
                 a point is not generic",
                points[0],
                points[k + 1]
            )));
        }
    }
    Ok(first)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    pub strategy: String,
}

pub fn specialize_vectors(v: &[Vec<QScalar>], q0: &Rational) -> Result<Vec<Vec<Rational>>> {
    v.iter()
        .map(|row| row.iter().map(|x| Ok(x.eval_at(q0)?)).collect())
        .collect()
}

fn rank_dense<F: Field>(v: &[Vec<F>], dim: usize) -> usize {
    linalg::rank(v.iter().map(|r| linalg::sparse_from_dense(r)), dim)
}

/// Rank of the span of `vectors` (each of length `dim`).
pub fn rank_of(vectors: &[Vec<QScalar>], dim: usize, strategy: &Strategy) -> Result<RankReport> {
    let rank = match strategy {
        Strategy::Symbolic => rank_dense(vectors, dim),
        Strategy::Specialized(points) => agree_at_points(points, "rank", |q0| {
            Ok(rank_dense(&specialize_vectors(vectors, q0)?, dim))
        })?,
    };
    Ok(RankReport {
        rank,
        strategy: strategy.describe(),
    })
}

/// Entrywise specialization of a matrix, as a convenience over [`Matrix::eval_at`].
pub fn specialize_matrix(m: &Matrix<QScalar>, q0: &Rational) -> Result<Matrix<Rational>> {
    Ok(m.eval_at(q0)?)
}

/// Resource bounds. `QLIE_MAX_DIM` overrides the ambient-dimension bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: Self::DEFAULT_MAX_DIM,
        }
    }
}

impl Limits {
    pub const DEFAULT_MAX_DIM: usize = 1024;

    pub fn from_env() -> Result<Self> {
        match std::env::var("QLIE_MAX_DIM") {
            Err(_) => Ok(Self::default()),
            Ok(s) => s
                .trim()
                .parse()
                .map(|max_dim| Limits { max_dim })
                .map_err(|_| Error::Unsupported(format!("QLIE_MAX_DIM={s:?} is not an integer"))),
        }
    }

    /// Tensor powers are bounded more tightly than flat spaces because their
    /// End-modules are squared: `2^k ≤ max_dim / 4` (k ≤ 8 by default).
    pub fn max_power_dim(&self) -> usize {
        self.max_dim / 4
    }

    pub fn check(&self, what: &str, requested: usize, limit: usize) -> Result<()> {
        if requested > limit {
            Err(Error::Resource {
                what: what.into(),
                requested,
                limit,
            })
        } else {
            Ok(())
        }
    }
}

/// `base^exp`, saturating at `usize::MAX`.
pub fn saturating_pow(base: usize, exp: usize) -> usize {
    (0..exp).fold(1usize, |acc, _| acc.saturating_mul(base))
}
