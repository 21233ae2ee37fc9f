//! Reflection-equation algebras for sl(n).
//!
//! `W` is spanned by the entries `l_i^j` of a matrix `L` of noncommuting
//! generators, indexed row-major (`l_i^j ↦ i·n + j`); `W ⊗ W` uses the
//! lexicographic product order. `L_1 = L ⊗ id` acts on `C^n ⊗ C^n` with
//! `e_i ⊗ e_k ↦ i·n + k`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Field, Matrix, Reduced, SparseVec};
use crate::qscalar::{QScalar, Rational};
use crate::strategy::{self, RankReport, Strategy};
use crate::uqmod;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RelationKind {
    PureQuadratic,
    QuadraticLinear,
}

/// One relation `constant + linear + quadratic = 0` in `k ⊕ W ⊕ W⊗W`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadRelation<F> {
    pub constant: F,
    pub linear: Vec<F>,
    pub quadratic: Vec<F>,
}

/// `T(W)` modulo the two-sided ideal generated by `relations`.
#[derive(Clone, Debug, Serialize)]
pub struct QuadAlgebra<F> {
    pub ngen: usize,
    pub relations: Vec<QuadRelation<F>>,
    pub kind: RelationKind,
}

impl<F: Field> QuadAlgebra<F> {
    pub fn quadratic_parts(&self) -> Vec<Vec<F>> {
        self.relations.iter().map(|r| r.quadratic.clone()).collect()
    }

    /// The associated graded (pure quadratic) algebra.
    pub fn associated_graded(&self) -> QuadAlgebra<F> {
        QuadAlgebra {
            ngen: self.ngen,
            relations: self
                .relations
                .iter()
                .map(|r| QuadRelation {
                    constant: F::zero(),
                    linear: vec![F::zero(); self.ngen],
                    quadratic: r.quadratic.clone(),
                })
                .collect(),
            kind: RelationKind::PureQuadratic,
        }
    }
}

impl QuadAlgebra<QScalar> {
    pub fn specialize(&self, q0: &Rational) -> Result<QuadAlgebra<Rational>> {
        let sv = |v: &Vec<QScalar>| -> Result<Vec<Rational>> {
            v.iter().map(|x| Ok(x.eval_at(q0)?)).collect()
        };
        Ok(QuadAlgebra {
            ngen: self.ngen,
            relations: self
                .relations
                .iter()
                .map(|r| {
                    Ok(QuadRelation {
                        constant: r.constant.eval_at(q0)?,
                        linear: sv(&r.linear)?,
                        quadratic: sv(&r.quadratic)?,
                    })
                })
                .collect::<Result<_>>()?,
            kind: self.kind,
        })
    }
}

/// The braiding `S = σ ρ^{⊗2}(R)` on `C^n ⊗ C^n`.
#[derive(Clone, Debug)]
pub struct Braiding {
    pub n: usize,
    pub s: Matrix<QScalar>,
}

fn lambda() -> QScalar {
    QScalar::q() - QScalar::q_pow(-1)
}

/// `S(e_i⊗e_j) = e_j⊗e_i + (q - q^-1) e_i⊗e_j` for `i < j`, `q e_i⊗e_i`, and
/// `e_j⊗e_i` for `i > j`.
pub fn standard_braiding(n: usize) -> Result<Braiding> {
    if n < 2 {
        return Err(Error::Unsupported(format!("braiding needs n ≥ 2, got {n}")));
    }
    let nn = n * n;
    let mut s = Matrix::zeros(nn, nn);
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            match i.cmp(&j) {
                std::cmp::Ordering::Equal => s.set(col, col, QScalar::q()),
                std::cmp::Ordering::Less => {
                    s.set(j * n + i, col, QScalar::one());
                    s.set(col, col, lambda());
                }
                std::cmp::Ordering::Greater => s.set(j * n + i, col, QScalar::one()),
            }
        }
    }
    Ok(Braiding { n, s })
}

impl Braiding {
    /// `S^{-1} = S - (q - q^-1) id`, valid by the Hecke condition.
    pub fn inverse(&self) -> Matrix<QScalar> {
        self.s
            .sub(&Matrix::identity(self.n * self.n).scale(&lambda()))
    }

    /// `(S⊗id)(id⊗S)(S⊗id) = (id⊗S)(S⊗id)(id⊗S)` on `C^n ⊗ C^n ⊗ C^n`.
    pub fn braid_relation_holds(&self) -> bool {
        let id = Matrix::identity(self.n);
        let s12 = self.s.kron(&id);
        let s23 = id.kron(&self.s);
        s12.mul(&s23).mul(&s12) == s23.mul(&s12).mul(&s23)
    }

    /// `(S - q)(S + q^-1) = 0`.
    pub fn hecke_holds(&self) -> bool {
        let id = Matrix::identity(self.n * self.n);
        let a = self.s.sub(&id.scale(&QScalar::q()));
        let b = self.s.add(&id.scale(&QScalar::q_pow(-1)));
        a.mul(&b).is_zero()
    }
}

// Matrices with entries in W (linear) or W ⊗ W (quadratic), as dense vectors.
type LinMat<F> = Vec<Vec<Vec<F>>>;
type QuadMat<F> = Vec<Vec<Vec<F>>>;

fn l_one<F: Field>(n: usize) -> LinMat<F> {
    let nn = n * n;
    let mut out = vec![vec![vec![F::zero(); nn]; nn]; nn];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[i * n + k][j * n + k][i * n + j] = F::one();
            }
        }
    }
    out
}

fn scalar_times_lin<F: Field>(s: &Matrix<F>, l: &LinMat<F>) -> LinMat<F> {
    let nn = s.nrows();
    let g = l[0][0].len();
    let mut out = vec![vec![vec![F::zero(); g]; nn]; nn];
    for (a, c, x) in s.nonzeros() {
        for b in 0..nn {
            for (k, y) in l[c][b].iter().enumerate() {
                if !y.is_zero() {
                    out[a][b][k] = out[a][b][k].clone() + &(x.clone() * y);
                }
            }
        }
    }
    out
}

fn lin_times_scalar<F: Field>(l: &LinMat<F>, s: &Matrix<F>) -> LinMat<F> {
    let nn = s.nrows();
    let g = l[0][0].len();
    let mut out = vec![vec![vec![F::zero(); g]; nn]; nn];
    for (c, b, x) in s.nonzeros() {
        for a in 0..nn {
            for (k, y) in l[a][c].iter().enumerate() {
                if !y.is_zero() {
                    out[a][b][k] = out[a][b][k].clone() + &(y.clone() * x);
                }
            }
        }
    }
    out
}

fn lin_times_lin<F: Field>(p: &LinMat<F>, r: &LinMat<F>) -> QuadMat<F> {
    let nn = p.len();
    let g = p[0][0].len();
    let mut out = vec![vec![vec![F::zero(); g * g]; nn]; nn];
    for a in 0..nn {
        for b in 0..nn {
            for c in 0..nn {
                for (x, px) in p[a][c].iter().enumerate() {
                    if px.is_zero() {
                        continue;
                    }
                    for (y, ry) in r[c][b].iter().enumerate() {
                        if !ry.is_zero() {
                            let e = &mut out[a][b][x * g + y];
                            *e = e.clone() + &(px.clone() * ry);
                        }
                    }
                }
            }
        }
    }
    out
}

fn flatten<F: Field>(m: QuadMat<F>) -> Vec<Vec<F>> {
    m.into_iter().flatten().collect()
}

fn sub_entries<F: Field>(a: Vec<Vec<F>>, b: Vec<Vec<F>>) -> Vec<Vec<F>> {
    a.into_iter()
        .zip(b)
        .map(|(x, y)| x.into_iter().zip(y).map(|(p, q)| p - &q).collect())
        .collect()
}

fn add_entries<F: Field>(a: Vec<Vec<F>>, b: Vec<Vec<F>>) -> Vec<Vec<F>> {
    a.into_iter()
        .zip(b)
        .map(|(x, y)| x.into_iter().zip(y).map(|(p, q)| p + &q).collect())
        .collect()
}

fn n_of<F: Field>(s: &Matrix<F>) -> usize {
    (s.nrows() as f64).sqrt().round() as usize
}

/// Entries of `S L_1 S L_1 - L_1 S L_1 S` in `W ⊗ W`, one per matrix position
/// `(a, b)`, row-major.
pub fn re_minus_entries<F: Field>(s: &Matrix<F>) -> Vec<Vec<F>> {
    let l1 = l_one::<F>(n_of(s));
    let sls = lin_times_scalar(&scalar_times_lin(s, &l1), s);
    let ls = lin_times_scalar(&l1, s);
    sub_entries(
        flatten(lin_times_lin(&sls, &l1)),
        flatten(lin_times_lin(&ls, &ls)),
    )
}

/// Entries of `S L_1 S L_1 + L_1 S L_1 S^{-1}`.
pub fn re_plus_entries<F: Field>(s: &Matrix<F>, s_inv: &Matrix<F>) -> Vec<Vec<F>> {
    let l1 = l_one::<F>(n_of(s));
    let sls = lin_times_scalar(&scalar_times_lin(s, &l1), s);
    let ls = lin_times_scalar(&l1, s);
    let lsi = lin_times_scalar(&l1, s_inv);
    add_entries(
        flatten(lin_times_lin(&sls, &l1)),
        flatten(lin_times_lin(&ls, &lsi)),
    )
}

/// Entries of `L_1 S² - S² L_1` in `W`.
pub fn re_linear_entries<F: Field>(s: &Matrix<F>) -> Vec<Vec<F>> {
    let l1 = l_one::<F>(n_of(s));
    let s2 = s.mul(s);
    let a = lin_times_scalar(&l1, &s2);
    let b = scalar_times_lin(&s2, &l1);
    sub_entries(
        a.into_iter().flatten().collect(),
        b.into_iter().flatten().collect(),
    )
}

/// The graded algebra `A_{0,q}`: all nonzero entries of the reflection equation.
pub fn re_relations(n: usize) -> Result<QuadAlgebra<QScalar>> {
    let b = standard_braiding(n)?;
    let g = n * n;
    let relations = re_minus_entries(&b.s)
        .into_iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .map(|quadratic| QuadRelation {
            constant: QScalar::zero(),
            linear: vec![QScalar::zero(); g],
            quadratic,
        })
        .collect();
    Ok(QuadAlgebra {
        ngen: g,
        relations,
        kind: RelationKind::PureQuadratic,
    })
}

/// Symbolic for `n = 2`, dual specialization otherwise.
pub fn default_strategy(n: usize) -> Strategy {
    if n <= 2 {
        Strategy::Symbolic
    } else {
        Strategy::dual()
    }
}

/// `dim I_-^q`.
pub fn relation_rank(alg: &QuadAlgebra<QScalar>, strategy: &Strategy) -> Result<RankReport> {
    strategy::rank_of(&alg.quadratic_parts(), alg.ngen * alg.ngen, strategy)
}

/// Spanning set of `I_+^q`.
pub fn re_plus(n: usize) -> Result<Vec<Vec<QScalar>>> {
    let b = standard_braiding(n)?;
    Ok(re_plus_entries(&b.s, &b.inverse())
        .into_iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect())
}

/// The quadratic-linear algebra `A_{h,q}`, built both by applying the shift
/// `l_i^j ↦ l_i^j + h δ_i^j` to the `A_{0,q}` relations and from the closed
/// form `S L_1 S L_1 - L_1 S L_1 S - h(L_1 S² - S² L_1)`; the two must agree and
/// the `h²` constants must cancel.
pub fn shifted_algebra(n: usize, h: &QScalar) -> Result<QuadAlgebra<QScalar>> {
    let b = standard_braiding(n)?;
    let g = n * n;
    let diag: Vec<bool> = (0..g).map(|k| k / n == k % n).collect();
    let quads = re_minus_entries(&b.s);
    let lins = re_linear_entries(&b.s);
    let mut relations = Vec::new();
    for (idx, (quad, lin)) in quads.into_iter().zip(lins).enumerate() {
        // Shift route: (x + hδ_x)(y + hδ_y)
        let mut shift_lin = vec![QScalar::zero(); g];
        let mut shift_const = QScalar::zero();
        for (k, c) in quad.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (x, y) = (k / g, k % g);
            if diag[x] {
                shift_lin[y] += &(c.clone() * h);
            }
            if diag[y] {
                shift_lin[x] += &(c.clone() * h);
            }
            if diag[x] && diag[y] {
                shift_const += &(c.clone() * h * h);
            }
        }
        // Closed form: -h (L_1 S² - S² L_1)
        let formula_lin: Vec<QScalar> = lin.iter().map(|c| -(c.clone() * h)).collect();
        if !shift_const.is_zero() {
            return Err(Error::Inconsistent(format!(
                "shifted relation {idx} keeps a constant term {shift_const}"
            )));
        }
        if shift_lin != formula_lin {
            return Err(Error::Inconsistent(format!(
                "shift and closed form disagree on relation {idx}"
            )));
        }
        if quad.iter().all(QScalar::is_zero) && formula_lin.iter().all(QScalar::is_zero) {
            continue;
        }
        relations.push(QuadRelation {
            constant: QScalar::zero(),
            linear: formula_lin,
            quadratic: quad,
        });
    }
    Ok(QuadAlgebra {
        ngen: g,
        relations,
        kind: RelationKind::QuadraticLinear,
    })
}

/// The bracket `I_-^q → W` determined by
/// `[S L_1 S L_1 - L_1 S L_1 S] = h (L_1 S² - S² L_1)` entrywise.
#[derive(Clone, Debug)]
pub struct GenBracket<F> {
    pub n: usize,
    pub h: F,
    /// Independent quadratic relations spanning `I_-^q`.
    pub domain: Vec<Vec<F>>,
    /// Their brackets.
    pub values: Vec<Vec<F>>,
    /// Rows `[x | [x]]` reduced on the `W⊗W` columns.
    echelon: Echelon<F>,
}

impl<F: Field> GenBracket<F> {
    /// Builds the bracket from a braiding matrix over any field, checking that
    /// every linear dependence among relations persists among their values.
    pub fn from_braiding(s: &Matrix<F>, h: F) -> Result<Self> {
        let n = n_of(s);
        let g = n * n;
        let quads = re_minus_entries(s);
        let lins = re_linear_entries(s);
        let mut echelon = Echelon::new(g * g);
        let mut domain = Vec::new();
        let mut values = Vec::new();
        for (quad, lin) in quads.into_iter().zip(lins) {
            let val: Vec<F> = lin.into_iter().map(|c| c * &h).collect();
            let mut row = linalg::sparse_from_dense(&quad);
            row.extend(
                val.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (g * g + k, x.clone())),
            );
            match echelon.insert(row) {
                Reduced::Independent(_) => {
                    domain.push(quad);
                    values.push(val);
                }
                Reduced::Dependent(rest) if !rest.is_empty() => {
                    return Err(Error::Inconsistent(
                        "generalized bracket is not well defined".into(),
                    ))
                }
                Reduced::Dependent(_) => {}
            }
        }
        Ok(GenBracket {
            n,
            h,
            domain,
            values,
            echelon,
        })
    }

    pub fn rank(&self) -> usize {
        self.domain.len()
    }

    fn gens(&self) -> usize {
        self.n * self.n
    }

    /// `[x]` for `x ∈ I_-^q` (or the extended domain); `None` outside it.
    pub fn apply(&self, x: &[F]) -> Option<Vec<F>> {
        let g = self.gens();
        let rest = self.echelon.reduce(linalg::sparse_from_dense(x));
        if rest.iter().any(|(i, _)| *i < g * g) {
            return None;
        }
        let mut out = vec![F::zero(); g];
        for (i, c) in rest {
            out[i - g * g] = -c;
        }
        Some(out)
    }

    pub fn contains(&self, x: &[F]) -> bool {
        self.apply(x).is_some()
    }

    /// Extends by zero on a complement (e.g. `I_+^q`).
    pub fn extended_by_zero(&self, complement: &[Vec<F>]) -> Result<Self> {
        let mut out = self.clone();
        for v in complement {
            if let Reduced::Dependent(_) = out.echelon.insert(linalg::sparse_from_dense(v)) {
                return Err(Error::Inconsistent("complement meets I_-".into()));
            }
        }
        Ok(out)
    }
}

pub fn generalized_bracket(n: usize, h: &QScalar) -> Result<GenBracket<QScalar>> {
    let b = standard_braiding(n)?;
    GenBracket::from_braiding(&b.s, h.clone())
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GenJacobiOutcome {
    /// `dim (I_- ⊗ W) ∩ (W ⊗ I_-)`.
    pub dim_t: usize,
    pub rank_minus: usize,
    /// `([,]^{12} - [,]^{23}) T ⊆ I_-`.
    pub image_in_relations: bool,
    /// `[,] ∘ ([,]^{12} - [,]^{23}) T = 0`.
    pub bracket_of_image_vanishes: bool,
}

/// Checks the generalized Jacobi identities over any field.
pub fn gen_jacobi_over<F: Field>(s: &Matrix<F>) -> Result<GenJacobiOutcome> {
    let br = GenBracket::from_braiding(s, F::one())?;
    let g = br.gens();
    let g2 = g * g;
    let g3 = g2 * g;
    let mut left: Vec<SparseVec<F>> = Vec::new();
    let mut right: Vec<SparseVec<F>> = Vec::new();
    for x in &br.domain {
        let sx = linalg::sparse_from_dense(x);
        for c in 0..g {
            left.push(sx.iter().map(|(k, v)| (k * g + c, v.clone())).collect());
            right.push(sx.iter().map(|(k, v)| (c * g2 + k, v.clone())).collect());
        }
    }
    let t = linalg::intersect(&left, &right, g3);
    let mut image_in_relations = true;
    let mut bracket_of_image_vanishes = true;
    for tv in &t {
        let dense = linalg::sparse_to_dense(tv, g3);
        let mut diff = vec![F::zero(); g2];
        for c in 0..g {
            let slice: Vec<F> = (0..g2).map(|k| dense[k * g + c].clone()).collect();
            let val = br
                .apply(&slice)
                .ok_or_else(|| Error::Inconsistent("T not inside I_- ⊗ W".into()))?;
            for (a, x) in val.into_iter().enumerate() {
                diff[a * g + c] = diff[a * g + c].clone() + &x;
            }
        }
        for a in 0..g {
            let slice = &dense[a * g2..(a + 1) * g2];
            let val = br
                .apply(slice)
                .ok_or_else(|| Error::Inconsistent("T not inside W ⊗ I_-".into()))?;
            for (b, x) in val.into_iter().enumerate() {
                diff[a * g + b] = diff[a * g + b].clone() - &x;
            }
        }
        match br.apply(&diff) {
            None => {
                image_in_relations = false;
                bracket_of_image_vanishes = false;
            }
            Some(v) => {
                if v.iter().any(|x| !x.is_zero()) {
                    bracket_of_image_vanishes = false;
                }
            }
        }
    }
    Ok(GenJacobiOutcome {
        dim_t: t.len(),
        rank_minus: br.rank(),
        image_in_relations,
        bracket_of_image_vanishes,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GenJacobiReport {
    pub n: usize,
    pub strategy: String,
    #[serde(flatten)]
    pub outcome: GenJacobiOutcome,
}

pub fn verify_generalized_jacobi(n: usize, strategy: &Strategy) -> Result<GenJacobiReport> {
    let b = standard_braiding(n)?;
    let outcome = match strategy {
        Strategy::Symbolic => gen_jacobi_over(&b.s)?,
        Strategy::Specialized(points) => {
            strategy::agree_at_points(points, "generalized Jacobi", |q0| {
                gen_jacobi_over(&b.s.eval_at(q0)?)
            })?
        }
    };
    Ok(GenJacobiReport {
        n,
        strategy: strategy.describe(),
        outcome,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceDecomposition {
    pub dims: Vec<usize>,
    /// The trivial summand is spanned by the identity matrix.
    pub identity_spans_trivial: bool,
    /// `dim Hom(traceless summand, adjoint module)`.
    pub adjoint_morphisms: usize,
}

/// `W ≅ End(U)` for the spin-1/2 module `U` splits as trace ⊕ traceless.
pub fn trace_decomposition(n: usize) -> Result<TraceDecomposition> {
    if n != 2 {
        return Err(Error::Unsupported(format!(
            "trace decomposition is only available for n = 2, got {n}"
        )));
    }
    let u = uqmod::WeightModule::spin_half();
    let end = uqmod::end_module(&u)?;
    let d = uqmod::decompose(&end)?;
    let dims = d.dims();
    let id = uqmod::end_vector(&Matrix::identity(2));
    let identity_spans_trivial = d.components.iter().any(|c| {
        c.highest_weight == 0 && {
            let v = c.highest_weight_vector();
            linalg::rank(
                [
                    linalg::sparse_from_dense(&v),
                    linalg::sparse_from_dense(&id),
                ],
                4,
            ) == 1
        }
    });
    let adjoint = crate::braided::adjoint_module();
    let adjoint_morphisms = d
        .components
        .iter()
        .find(|c| c.dim() == 3)
        .map(|c| uqmod::morphism_space(&c.embedding.source, &adjoint).len())
        .unwrap_or(0);
    Ok(TraceDecomposition {
        dims,
        identity_spans_trivial,
        adjoint_morphisms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::rat;

    fn qs(s: &str) -> QScalar {
        s.parse().unwrap()
    }

    #[test]
    fn braiding_n2_blocks() {
        let b = standard_braiding(2).unwrap();
        let s = &b.s;
        assert_eq!(s[(0, 0)], QScalar::q());
        assert_eq!(s[(3, 3)], QScalar::q());
        assert_eq!(s[(1, 1)], qs("q - q^-1"));
        assert_eq!(s[(1, 2)], QScalar::one());
        assert_eq!(s[(2, 1)], QScalar::one());
        assert!(s[(2, 2)].is_zero());
        assert!(standard_braiding(1).is_err());
    }

    #[test]
    fn braiding_invariants() {
        for n in [2, 3] {
            let b = standard_braiding(n).unwrap();
            assert!(b.braid_relation_holds(), "braid n={n}");
            assert!(b.hecke_holds(), "hecke n={n}");
            assert_eq!(b.s.mul(&b.inverse()), Matrix::identity(n * n));
        }
    }

    #[test]
    fn classical_braiding_is_flip() {
        let s = standard_braiding(3).unwrap().s.eval_at(&rat(1, 1)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let want = if (k, l) == (j, i) { 1 } else { 0 };
                        assert_eq!(s[(k * 3 + l, i * 3 + j)], rat(want, 1));
                    }
                }
            }
        }
    }

    #[test]
    fn ranks_n2() {
        let a = re_relations(2).unwrap();
        assert_eq!(relation_rank(&a, &Strategy::Symbolic).unwrap().rank, 6);
        let plus = re_plus(2).unwrap();
        assert_eq!(
            strategy::rank_of(&plus, 16, &Strategy::Symbolic)
                .unwrap()
                .rank,
            10
        );
        let mut all = plus.clone();
        all.extend(a.quadratic_parts());
        assert_eq!(
            strategy::rank_of(&all, 16, &Strategy::Symbolic)
                .unwrap()
                .rank,
            16
        );
    }

    #[test]
    fn shift_preserves_symbol_and_vanishes_at_zero() {
        let a0 = re_relations(2).unwrap();
        let ah = shifted_algebra(2, &QScalar::one()).unwrap();
        let mut both = a0.quadratic_parts();
        both.extend(ah.quadratic_parts());
        assert_eq!(
            strategy::rank_of(&both, 16, &Strategy::Symbolic)
                .unwrap()
                .rank,
            6
        );
        let z = shifted_algebra(2, &QScalar::zero()).unwrap();
        assert!(z
            .relations
            .iter()
            .all(|r| r.linear.iter().all(QScalar::is_zero)));
        assert_eq!(z.quadratic_parts(), a0.quadratic_parts());
    }

    /// `(S²L_1 - L_1S²)_{ab}` expanded by hand from `(L_1)_{(i,k),(j,l)} = δ_kl l_i^j`.
    fn expanded_entry(s2: &Matrix<QScalar>, a: usize, b: usize) -> Vec<QScalar> {
        let mut out = vec![QScalar::zero(); 4];
        for c in 0..4 {
            if c % 2 == b % 2 {
                out[(c / 2) * 2 + b / 2] += s2.get(a, c);
            }
            if c % 2 == a % 2 {
                out[(a / 2) * 2 + c / 2] -= s2.get(c, b);
            }
        }
        out
    }

    #[test]
    fn shifted_linear_parts_match_expansion() {
        let b = standard_braiding(2).unwrap();
        let s2 = b.s.mul(&b.s);
        let quads = re_minus_entries(&b.s);
        let ah = shifted_algebra(2, &QScalar::one()).unwrap();
        let mut rels = ah.relations.iter();
        for p in 0..16 {
            let want = expanded_entry(&s2, p / 4, p % 4);
            if quads[p].iter().all(QScalar::is_zero) {
                assert!(want.iter().all(QScalar::is_zero), "position {p}");
                continue;
            }
            let rel = rels.next().unwrap();
            assert_eq!(rel.quadratic, quads[p]);
            assert_eq!(rel.linear, want, "position {p}");
        }
        assert!(rels.next().is_none());
        // position (1,2) carries l_0^0 - l_1^1 with coefficient q - q^-1
        let lam = QScalar::q() - QScalar::q_pow(-1);
        assert_eq!(
            expanded_entry(&s2, 1, 2),
            vec![-lam.clone(), QScalar::zero(), QScalar::zero(), lam]
        );
    }

    #[test]
    fn bracket_zero_cases() {
        let z = generalized_bracket(2, &QScalar::zero()).unwrap();
        assert!(z.values.iter().all(|v| v.iter().all(QScalar::is_zero)));
        let classical = GenBracket::from_braiding(
            &standard_braiding(2).unwrap().s.eval_at(&rat(1, 1)).unwrap(),
            rat(1, 1),
        )
        .unwrap();
        assert_eq!(classical.rank(), 6);
        assert!(classical
            .values
            .iter()
            .all(|v| v.iter().all(|x| *x == rat(0, 1))));
    }

    #[test]
    fn bracket_on_plus_extension() {
        let br = generalized_bracket(2, &QScalar::one()).unwrap();
        let plus = re_plus(2).unwrap();
        // pick an independent subset of the I_+ spanning set
        let mut e = Echelon::new(16);
        let basis: Vec<Vec<QScalar>> = plus
            .into_iter()
            .filter(|v| {
                matches!(
                    e.insert(linalg::sparse_from_dense(v)),
                    Reduced::Independent(_)
                )
            })
            .collect();
        let ext = br.extended_by_zero(&basis).unwrap();
        for v in &basis {
            assert!(ext.apply(v).unwrap().iter().all(QScalar::is_zero));
        }
        assert!(!br.contains(&basis[0]));
    }

    #[test]
    fn trace_split() {
        let t = trace_decomposition(2).unwrap();
        assert_eq!(t.dims, vec![3, 1]);
        assert!(t.identity_spans_trivial);
        assert_eq!(t.adjoint_morphisms, 1);
        assert!(trace_decomposition(3).is_err());
    }
}
