//! Dimensions of graded and filtered pieces of algebras `T(W)/(R)` with
//! quadratic or quadratic-linear relations.
//!
//! The ideal is truncated degree by degree: in degree `d` it is spanned by the
//! words `x ⊗ r ⊗ y` with `|x| + |y| + 2 = d`. `W^{⊗e}` uses the lexicographic
//! word order, so `x ⊗ t ⊗ y` sits at `(x·g^{|t|} + t)·g^{|y|} + y`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Field, Reduced, SparseVec};
use crate::qscalar::{QScalar, Rational};
use crate::realg::{QuadAlgebra, QuadRelation, RelationKind};
use crate::strategy::{self, saturating_pow, Limits, Strategy};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DimReport {
    pub ngen: usize,
    pub degrees: Vec<usize>,
    /// Degree-`d` dimensions, or filtration-`≤ d` dimensions when `filtered`.
    pub algebra_dims: Vec<usize>,
    /// `binomial(ngen + d - 1, d)`, cumulated when `filtered`.
    pub sym_dims: Vec<usize>,
    /// Largest `d` up to which every degree matches the symmetric algebra.
    pub flat_up_to: Option<usize>,
    pub strategy: String,
    pub filtered: bool,
    /// Cumulative graded dimensions of the associated quadratic algebra.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graded_cumulative: Option<Vec<usize>>,
}

impl DimReport {
    pub fn is_flat(&self) -> bool {
        self.algebra_dims == self.sym_dims
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim S^d(W)` for `dim W = ngen`.
pub fn sym_dim(ngen: usize, d: usize) -> usize {
    if d == 0 {
        1
    } else {
        binomial(ngen + d - 1, d)
    }
}

fn cumulative(v: &[usize]) -> Vec<usize> {
    v.iter()
        .scan(0usize, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

fn flat_prefix(a: &[usize], b: &[usize]) -> Option<usize> {
    a.iter()
        .zip(b)
        .take_while(|(x, y)| x == y)
        .count()
        .checked_sub(1)
}

/// A linearly independent subset of `rows`.
fn independent<F: Field>(rows: Vec<SparseVec<F>>, dim: usize) -> Vec<SparseVec<F>> {
    let mut e = Echelon::new(dim);
    rows.into_iter()
        .filter(|r| matches!(e.insert(r.clone()), Reduced::Independent(_)))
        .collect()
}

/// `g^d - rank(Σ W^{⊗i} ⊗ R ⊗ W^{⊗j})` over any field.
pub fn graded_dim_over<F: Field>(quads: &[Vec<F>], g: usize, d: usize) -> usize {
    let total = saturating_pow(g, d);
    if d < 2 {
        return total;
    }
    let rels = independent(
        quads.iter().map(|r| linalg::sparse_from_dense(r)).collect(),
        g * g,
    );
    let mut e = Echelon::new(total);
    for i in 0..=d - 2 {
        let j = d - 2 - i;
        let (gi, gj) = (saturating_pow(g, i), saturating_pow(g, j));
        for r in &rels {
            for x in 0..gi {
                for y in 0..gj {
                    let row = r
                        .iter()
                        .map(|(ab, c)| ((x * g * g + ab) * gj + y, c.clone()))
                        .collect();
                    e.insert(row);
                }
            }
        }
    }
    total - e.rank()
}

/// Filtration dimensions `dim F_{≤d}` for `d = 0..=dmax` over any field.
pub fn filtered_dims_over<F: Field>(alg: &QuadAlgebra<F>, dmax: usize) -> Vec<usize> {
    let g = alg.ngen;
    let sizes: Vec<usize> = (0..=dmax).map(|e| saturating_pow(g, e)).collect();
    let offsets: Vec<usize> = std::iter::once(0).chain(cumulative(&sizes)).collect();
    let total = offsets[dmax + 1];
    // relation r as a vector of ⊕_{e≤2} W^{⊗e}: [1 | W | W⊗W]
    let rel_rows: Vec<SparseVec<F>> = alg
        .relations
        .iter()
        .map(|r| {
            let mut v = Vec::new();
            if !r.constant.is_zero() {
                v.push((0, r.constant.clone()));
            }
            v.extend(
                linalg::sparse_from_dense(&r.linear)
                    .into_iter()
                    .map(|(k, c)| (1 + k, c)),
            );
            v.extend(
                linalg::sparse_from_dense(&r.quadratic)
                    .into_iter()
                    .map(|(k, c)| (1 + g + k, c)),
            );
            v
        })
        .collect();
    let rels = independent(rel_rows, 1 + g + g * g);
    let mut e = Echelon::new(total);
    let mut out = Vec::with_capacity(dmax + 1);
    for d in 0..=dmax {
        if d >= 2 {
            for i in 0..=d - 2 {
                let j = d - 2 - i;
                let (gi, gj) = (sizes[i], sizes[j]);
                for r in &rels {
                    for x in 0..gi {
                        for y in 0..gj {
                            let mut row: SparseVec<F> = r
                                .iter()
                                .map(|(k, c)| {
                                    let (deg, t) = match *k {
                                        0 => (0, 0),
                                        k if k <= g => (1, k - 1),
                                        k => (2, k - 1 - g),
                                    };
                                    let len = i + j + deg;
                                    let idx = (x * sizes[deg] + t) * gj + y;
                                    (offsets[len] + idx, c.clone())
                                })
                                .collect();
                            row.sort_by_key(|(k, _)| *k);
                            e.insert(row);
                        }
                    }
                }
            }
        }
        out.push(offsets[d + 1] - e.rank());
    }
    out
}

fn check_resources(g: usize, dmax: usize, limits: &Limits) -> Result<()> {
    limits.check(
        &format!("tensor space dimension {g}^{dmax}"),
        saturating_pow(g, dmax),
        limits.max_dim,
    )
}

/// Symbolic when the largest tensor space has at most 256 dimensions and
/// `ngen ≤ 4`, dual specialization otherwise.
pub fn auto_strategy(ngen: usize, dmax: usize) -> Strategy {
    if ngen <= 4 && saturating_pow(ngen, dmax) <= 256 {
        Strategy::Symbolic
    } else {
        Strategy::dual()
    }
}

fn require_kind(a: &QuadAlgebra<QScalar>, kind: RelationKind) -> Result<()> {
    if a.kind != kind {
        return Err(Error::Unsupported(format!(
            "expected a {kind:?} algebra, got {:?}",
            a.kind
        )));
    }
    Ok(())
}

/// `dim A_d` for a pure-quadratic algebra.
pub fn graded_dim(
    a: &QuadAlgebra<QScalar>,
    d: usize,
    strategy: &Strategy,
    limits: &Limits,
) -> Result<usize> {
    require_kind(a, RelationKind::PureQuadratic)?;
    check_resources(a.ngen, d, limits)?;
    let quads = a.quadratic_parts();
    match strategy {
        Strategy::Symbolic => Ok(graded_dim_over(&quads, a.ngen, d)),
        Strategy::Specialized(points) => {
            strategy::agree_at_points(points, "graded dimension", |q0| {
                Ok(graded_dim_over(
                    &strategy::specialize_vectors(&quads, q0)?,
                    a.ngen,
                    d,
                ))
            })
        }
    }
}

fn graded_dims_over<F: Field>(quads: &[Vec<F>], g: usize, dmax: usize) -> Vec<usize> {
    (0..=dmax)
        .into_par_iter()
        .map(|d| graded_dim_over(quads, g, d))
        .collect()
}

/// Graded dimensions `d = 0..=dmax` compared with the symmetric algebra.
pub fn graded_report(
    a: &QuadAlgebra<QScalar>,
    dmax: usize,
    strategy: &Strategy,
    limits: &Limits,
) -> Result<DimReport> {
    require_kind(a, RelationKind::PureQuadratic)?;
    check_resources(a.ngen, dmax, limits)?;
    let quads = a.quadratic_parts();
    let g = a.ngen;
    let algebra_dims = match strategy {
        Strategy::Symbolic => graded_dims_over(&quads, g, dmax),
        Strategy::Specialized(points) => {
            strategy::agree_at_points(points, "graded dimensions", |q0| {
                Ok(graded_dims_over(
                    &strategy::specialize_vectors(&quads, q0)?,
                    g,
                    dmax,
                ))
            })?
        }
    };
    let sym_dims: Vec<usize> = (0..=dmax).map(|d| sym_dim(g, d)).collect();
    Ok(DimReport {
        ngen: g,
        degrees: (0..=dmax).collect(),
        flat_up_to: flat_prefix(&algebra_dims, &sym_dims),
        algebra_dims,
        sym_dims,
        strategy: strategy.describe(),
        filtered: false,
        graded_cumulative: None,
    })
}

/// Graded dimensions of a quadratic algebra at a single rational value of `q`.
pub fn graded_dims_at(a: &QuadAlgebra<QScalar>, q0: &Rational, dmax: usize) -> Result<Vec<usize>> {
    let quads = strategy::specialize_vectors(&a.quadratic_parts(), q0)?;
    Ok(graded_dims_over(&quads, a.ngen, dmax))
}

fn filtered_pair<F: Field>(alg: &QuadAlgebra<F>, dmax: usize) -> (Vec<usize>, Vec<usize>) {
    let graded = alg.associated_graded();
    let (filtered, graded_dims) = rayon::join(
        || filtered_dims_over(alg, dmax),
        || graded_dims_over(&graded.quadratic_parts(), alg.ngen, dmax),
    );
    (filtered, cumulative(&graded_dims))
}

/// Filtration dimensions of a quadratic-linear algebra, compared with the
/// cumulative graded dimensions of its associated quadratic algebra and with
/// the cumulative symmetric-algebra dimensions.
pub fn filtered_dims(
    a: &QuadAlgebra<QScalar>,
    dmax: usize,
    strategy: &Strategy,
    limits: &Limits,
) -> Result<DimReport> {
    check_resources(a.ngen, dmax, limits)?;
    let (algebra_dims, graded_cumulative) = match strategy {
        Strategy::Symbolic => filtered_pair(a, dmax),
        Strategy::Specialized(points) => {
            strategy::agree_at_points(points, "filtered dimensions", |q0| {
                Ok(filtered_pair(&a.specialize(q0)?, dmax))
            })?
        }
    };
    let g = a.ngen;
    let sym_dims = cumulative(&(0..=dmax).map(|d| sym_dim(g, d)).collect::<Vec<_>>());
    Ok(DimReport {
        ngen: g,
        degrees: (0..=dmax).collect(),
        flat_up_to: flat_prefix(&algebra_dims, &sym_dims),
        algebra_dims,
        sym_dims,
        strategy: strategy.describe(),
        filtered: true,
        graded_cumulative: Some(graded_cumulative),
    })
}

/// Graded dimensions of the reflection-equation algebra for `sl(n)`.
pub fn flatness_report(
    n: usize,
    dmax: usize,
    strategy: Option<Strategy>,
    limits: &Limits,
) -> Result<DimReport> {
    let g = n * n;
    check_resources(g, dmax, limits)?;
    let a = crate::realg::re_relations(n)?;
    let strategy = strategy.unwrap_or_else(|| {
        if n <= 2 {
            auto_strategy(g, dmax)
        } else {
            Strategy::dual()
        }
    });
    graded_report(&a, dmax, &strategy, limits)
}

/// A quadratic relation with zero lower-order terms.
pub fn pure_relation<F: Field>(quadratic: Vec<F>, ngen: usize) -> QuadRelation<F> {
    QuadRelation {
        constant: F::zero(),
        linear: vec![F::zero(); ngen],
        quadratic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::rat;

    fn commutative(g: usize) -> QuadAlgebra<Rational> {
        let mut relations = Vec::new();
        for a in 0..g {
            for b in a + 1..g {
                let mut v = vec![rat(0, 1); g * g];
                v[a * g + b] = rat(1, 1);
                v[b * g + a] = rat(-1, 1);
                relations.push(pure_relation(v, g));
            }
        }
        QuadAlgebra {
            ngen: g,
            relations,
            kind: RelationKind::PureQuadratic,
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(sym_dim(4, 4), 35);
        assert_eq!(sym_dim(9, 2), 45);
        assert_eq!(sym_dim(3, 0), 1);
    }

    #[test]
    fn polynomial_ring_counts() {
        let a = commutative(3);
        let q = a.quadratic_parts();
        for d in 0..=4 {
            assert_eq!(graded_dim_over(&q, 3, d), sym_dim(3, d));
        }
        assert_eq!(filtered_dims_over(&a, 3), vec![1, 4, 10, 20]);
    }

    #[test]
    fn free_algebra_counts() {
        assert_eq!(graded_dim_over::<Rational>(&[], 2, 3), 8);
    }

    #[test]
    fn lie_algebra_pbw() {
        // xy - yx = z, xz - zx = 0, yz - zy = 0 (Heisenberg): PBW holds
        let g = 3;
        let mut a = commutative(g);
        a.relations[0].linear[2] = rat(-1, 1);
        a.kind = RelationKind::QuadraticLinear;
        assert_eq!(filtered_dims_over(&a, 3), vec![1, 4, 10, 20]);
    }

    #[test]
    fn inconsistent_linear_terms_collapse() {
        // xy - yx = x, xy - yx = y forces x = y in the quotient
        let g = 2;
        let mut r1 = vec![rat(0, 1); 4];
        r1[1] = rat(1, 1);
        r1[2] = rat(-1, 1);
        let rels = vec![
            QuadRelation {
                constant: rat(0, 1),
                linear: vec![rat(-1, 1), rat(0, 1)],
                quadratic: r1.clone(),
            },
            QuadRelation {
                constant: rat(0, 1),
                linear: vec![rat(0, 1), rat(-1, 1)],
                quadratic: r1,
            },
        ];
        let a = QuadAlgebra {
            ngen: g,
            relations: rels,
            kind: RelationKind::QuadraticLinear,
        };
        assert_eq!(filtered_dims_over(&a, 2), vec![1, 3, 5]);
        let graded = a.associated_graded();
        assert_eq!(graded_dim_over(&graded.quadratic_parts(), 2, 2), 3);
    }

    #[test]
    fn flat_prefix_counts() {
        assert_eq!(flat_prefix(&[1, 4, 10], &[1, 4, 10]), Some(2));
        assert_eq!(flat_prefix(&[1, 4, 9], &[1, 4, 10]), Some(1));
        assert_eq!(flat_prefix(&[2], &[1]), None);
    }

    #[test]
    fn resource_bound() {
        let limits = Limits::default();
        assert!(matches!(
            flatness_report(2, 9999, None, &limits),
            Err(Error::Resource { .. })
        ));
    }
}
