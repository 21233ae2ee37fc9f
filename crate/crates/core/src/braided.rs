//! The braided Lie bracket on the adjoint U_q(sl(2))-module, its enveloping
//! algebra relations and the normalizing constant τ.
//!
//! The adjoint module has basis `u, v, w` (indices 0, 1, 2) and `V ⊗ V` the
//! basis `u⊗u, u⊗v, …, w⊗w` (index `3i + j`).

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, SparseVec};
use crate::qscalar::{QScalar, Rational};
use crate::realg::{QuadAlgebra, QuadRelation, RelationKind};
use crate::uqmod::{self, Decomposition, WeightModule};

pub const U: usize = 0;
pub const V: usize = 1;
pub const W: usize = 2;
pub const BASIS_NAMES: [&str; 3] = ["u", "v", "w"];

pub fn pair(i: usize, j: usize) -> usize {
    3 * i + j
}

fn qplus() -> QScalar {
    QScalar::q() + QScalar::q_pow(-1)
}

/// `Hu = 2u, Hv = 0, Hw = -2w; Xu = 0, Xv = -(q+q^-1)u, Xw = v;
/// Yu = -v, Yv = (q+q^-1)w, Yw = 0`.
pub fn adjoint_module() -> WeightModule {
    let mut x = Matrix::zeros(3, 3);
    x.set(U, V, -qplus());
    x.set(V, W, QScalar::one());
    let mut y = Matrix::zeros(3, 3);
    y.set(V, U, -QScalar::one());
    y.set(W, V, qplus());
    WeightModule::from_parts(x, y, vec![2, 0, -2])
}

/// `V ⊗ V = I_+ ⊕ I_-`: `I_-` is the highest-weight-2 isotypic component, `I_+`
/// the sum of the highest-weight-4 and -0 components.
#[derive(Clone, Debug)]
pub struct SymmetricSplit {
    pub decomposition: Decomposition,
    pub plus_projector: Matrix<QScalar>,
    pub minus_projector: Matrix<QScalar>,
    /// Basis of `I_+` (images of the string vectors).
    pub plus_basis: Vec<Vec<QScalar>>,
    /// Basis of `I_-`, top weight first.
    pub minus_basis: Vec<Vec<QScalar>>,
}

impl SymmetricSplit {
    /// `S̃ = id` on `I_+`, `-id` on `I_-`.
    pub fn s_tilde(&self) -> Matrix<QScalar> {
        self.plus_projector.sub(&self.minus_projector)
    }
}

pub fn split_sym_antisym(w2: &WeightModule) -> Result<SymmetricSplit> {
    let decomposition = uqmod::decompose(w2)?;
    let n = w2.dim();
    let mut plus_basis = Vec::new();
    let mut minus_basis = Vec::new();
    for c in &decomposition.components {
        let target = if c.highest_weight == 2 {
            &mut minus_basis
        } else {
            &mut plus_basis
        };
        for j in 0..c.dim() {
            target.push(c.embedding.map.column(j));
        }
    }
    let minus_projector = decomposition.isotypic_projector(2);
    let plus_projector = Matrix::identity(n).sub(&minus_projector);
    Ok(SymmetricSplit {
        decomposition,
        plus_projector,
        minus_projector,
        plus_basis,
        minus_basis,
    })
}

/// The q-Lie bracket `V ⊗ V → V` as a `3 × 9` matrix.
#[derive(Clone, Debug)]
pub struct BraidedBracket {
    pub module: Arc<WeightModule>,
    pub table: Matrix<QScalar>,
    pub scale: QScalar,
}

impl BraidedBracket {
    /// `[u_i, u_j]_q` as a coordinate vector.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<QScalar> {
        self.table.column(pair(i, j))
    }

    /// Bracket of a general element of `V ⊗ V`.
    pub fn apply(&self, x: &[QScalar]) -> Vec<QScalar> {
        self.table.mul_vec(x)
    }

    /// Left multiplication `z ↦ [u_i, z]_q`.
    pub fn left_mult(&self, i: usize) -> Matrix<QScalar> {
        let mut m = Matrix::zeros(3, 3);
        for j in 0..3 {
            for (r, x) in self.bracket(i, j).into_iter().enumerate() {
                m.set(r, j, x);
            }
        }
        m
    }

    /// Left multiplication by an arbitrary element `x = Σ x_m u_m`.
    pub fn left_mult_by(&self, x: &[QScalar]) -> Matrix<QScalar> {
        (0..3).fold(Matrix::zeros(3, 3), |acc, m| {
            acc.add(&self.left_mult(m).scale(&x[m]))
        })
    }

    /// Entries of the table evaluated at a rational point.
    pub fn eval_at(&self, q0: &Rational) -> Result<Matrix<Rational>> {
        Ok(self.table.eval_at(q0)?)
    }

    /// `(name, value)` for all nine products, value rendered as `c·u + …`.
    pub fn entries(&self) -> Vec<(String, Vec<QScalar>)> {
        let mut out = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                out.push((
                    format!("[{},{}]", BASIS_NAMES[i], BASIS_NAMES[j]),
                    self.bracket(i, j),
                ));
            }
        }
        out
    }
}

/// The unique module map `V ⊗ V → V` vanishing on `I_+`, normalized by
/// `[v, u]_q = M u`.
pub fn build_bracket(m: &QScalar) -> Result<BraidedBracket> {
    if m.is_zero() {
        return Err(Error::Normalization(
            "bracket scale M must be nonzero".into(),
        ));
    }
    let v = Arc::new(adjoint_module());
    let w2 = uqmod::tensor(&v, &v)?;
    let split = split_sym_antisym(&w2)?;
    let homs = uqmod::morphism_space(&w2, &v);
    // Σ c_k T_k P_+ = 0
    let killed: Vec<Matrix<QScalar>> = homs.iter().map(|t| t.mul(&split.plus_projector)).collect();
    let nent = 3 * 9;
    let eqs: Vec<SparseVec<QScalar>> = (0..nent)
        .map(|e| {
            killed
                .iter()
                .enumerate()
                .filter(|(_, t)| !t.get(e / 9, e % 9).is_zero())
                .map(|(k, t)| (k, t.get(e / 9, e % 9).clone()))
                .collect()
        })
        .filter(|r: &SparseVec<QScalar>| !r.is_empty())
        .collect();
    let combos = linalg::nullspace(eqs, homs.len());
    if combos.len() != 1 {
        return Err(Error::Normalization(format!(
            "expected a one-dimensional space of brackets, found {}",
            combos.len()
        )));
    }
    let t = homs
        .iter()
        .zip(&combos[0])
        .fold(Matrix::zeros(3, 9), |acc, (h, c)| acc.add(&h.scale(c)));
    let anchor = t.get(U, pair(V, U)).clone();
    if anchor.is_zero() {
        return Err(Error::Normalization("[v,u]_q vanishes identically".into()));
    }
    let table = t.scale(&(m.clone() / &anchor));
    Ok(BraidedBracket {
        module: v,
        table,
        scale: m.clone(),
    })
}

/// Invariant checks of a bracket: intertwining, `C P_+ = 0`, `C = -C S̃`.
pub fn bracket_defects(b: &BraidedBracket) -> Result<Vec<String>> {
    let w2 = uqmod::tensor(&b.module, &b.module)?;
    let split = split_sym_antisym(&w2)?;
    let mut out = uqmod::intertwiner_defects(&b.table, &w2, &b.module);
    if !b.table.mul(&split.plus_projector).is_zero() {
        out.push("bracket does not vanish on I_+".into());
    }
    if b.table.add(&b.table.mul(&split.s_tilde())) != Matrix::zeros(3, 9) {
        out.push("bracket is not S̃-skew-symmetric".into());
    }
    Ok(out)
}

/// Quadratic parts of the three defining relations, in the standard basis of `I_-`:
/// `q²uv - vu`, `(q³+q)(uw - wu) + (1-q²)v²`, `-q²vw + wv`.
pub fn standard_minus_basis() -> Vec<Vec<QScalar>> {
    let q2 = QScalar::q_pow(2);
    let mut a = vec![QScalar::zero(); 9];
    a[pair(U, V)] = q2.clone();
    a[pair(V, U)] = -QScalar::one();
    let mut b = vec![QScalar::zero(); 9];
    let q3q = QScalar::from_terms(&[(1, 3), (1, 1)]);
    b[pair(U, W)] = q3q.clone();
    b[pair(W, U)] = -q3q;
    b[pair(V, V)] = QScalar::one() - &q2;
    let mut c = vec![QScalar::zero(); 9];
    c[pair(V, W)] = -q2;
    c[pair(W, V)] = QScalar::one();
    vec![a, b, c]
}

/// Relations `x - τ[x]_q` of the enveloping algebra, with `h = τ(q⁴+1)M`.
#[derive(Clone, Debug, Serialize)]
pub struct EnvPresentation {
    pub relations: Vec<QuadRelation<QScalar>>,
    pub tau: QScalar,
    pub h: QScalar,
}

impl EnvPresentation {
    pub fn to_algebra(&self) -> QuadAlgebra<QScalar> {
        QuadAlgebra {
            ngen: 3,
            relations: self.relations.clone(),
            kind: RelationKind::QuadraticLinear,
        }
    }
}

pub fn enveloping_relations(b: &BraidedBracket, tau: &QScalar) -> Result<EnvPresentation> {
    let w2 = uqmod::tensor(&b.module, &b.module)?;
    let split = split_sym_antisym(&w2)?;
    let quads = standard_minus_basis();
    for x in &quads {
        if split.minus_projector.mul_vec(x) != *x {
            return Err(Error::Inconsistent("relation not in I_-".into()));
        }
    }
    if linalg::rank(quads.iter().map(|x| linalg::sparse_from_dense(x)), 9) != 3 {
        return Err(Error::Inconsistent("relations do not span I_-".into()));
    }
    let relations: Vec<QuadRelation<QScalar>> = quads
        .into_iter()
        .map(|x| {
            let lin = b
                .apply(&x)
                .into_iter()
                .map(|c| -(tau.clone() * c))
                .collect();
            QuadRelation {
                constant: QScalar::zero(),
                linear: lin,
                quadratic: x,
            }
        })
        .collect();
    let h = relations[0].linear[U].clone();
    let expected = [(0, U, h.clone()), (1, V, -h.clone()), (2, W, -h.clone())];
    for (k, idx, val) in expected {
        let mut want = vec![QScalar::zero(); 3];
        want[idx] = val;
        if relations[k].linear != want {
            return Err(Error::Inconsistent(format!(
                "relation {k} has unexpected linear part"
            )));
        }
    }
    Ok(EnvPresentation {
        relations,
        tau: tau.clone(),
        h,
    })
}

/// τ fixed by requiring the q-adjoint operators `L_x z = [x, z]_q` to satisfy
/// the enveloping relations with `h = τ(q⁴+1)M`, at `M = 1`.
pub fn solve_tau() -> Result<QScalar> {
    solve_tau_with_scale(&QScalar::one())
}

pub fn solve_tau_with_scale(m: &QScalar) -> Result<QScalar> {
    let b = build_bracket(m)?;
    let (lu, lv, lw) = (b.left_mult(U), b.left_mult(V), b.left_mult(W));
    let q2 = QScalar::q_pow(2);
    let q3q = QScalar::from_terms(&[(1, 3), (1, 1)]);
    let hm = QScalar::from_terms(&[(1, 4), (1, 0)]) * m;
    // Each relation reads A + τ B = 0.
    let a1 = lu.mul(&lv).scale(&q2).sub(&lv.mul(&lu));
    let b1 = lu.scale(&hm);
    let a2 = lu
        .mul(&lw)
        .sub(&lw.mul(&lu))
        .scale(&q3q)
        .add(&lv.mul(&lv).scale(&(QScalar::one() - &q2)));
    let b2 = lv.scale(&-hm.clone());
    let a3 = lw.mul(&lv).sub(&lv.mul(&lw).scale(&q2));
    let b3 = lw.scale(&-hm);
    let mut tau: Option<QScalar> = None;
    for (a, bm) in [(a1, b1), (a2, b2), (a3, b3)] {
        for i in 0..3 {
            for j in 0..3 {
                let (x, y) = (a.get(i, j), bm.get(i, j));
                if y.is_zero() {
                    if !x.is_zero() {
                        return Err(Error::Inconsistent("τ system has no solution".into()));
                    }
                    continue;
                }
                let t = -(x.clone() / y);
                match &tau {
                    None => tau = Some(t),
                    Some(prev) if *prev != t => {
                        return Err(Error::Inconsistent("τ system is inconsistent".into()))
                    }
                    _ => {}
                }
            }
        }
    }
    tau.ok_or_else(|| Error::Inconsistent("τ system is degenerate".into()))
}

/// The closed form `(q⁴ - q² + 1)/(q⁴ + 1)`.
pub fn tau_closed_form() -> QScalar {
    QScalar::from_terms(&[(1, 4), (-1, 2), (1, 0)]) / QScalar::from_terms(&[(1, 4), (1, 0)])
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiCheck {
    /// Index into the `I_-` basis.
    pub relation: usize,
    /// Basis vector `z` the identity was tested on.
    pub z: &'static str,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    pub checks: Vec<JacobiCheck>,
    pub all_pass: bool,
}

/// `Σ b^{ij} [u_i, [u_j, z]_q]_q = τ Σ b^{ij} [[u_i, u_j]_q, z]_q` for every
/// `b` in the `I_-` basis and every basis vector `z`.
pub fn verify_truncated_jacobi(b: &BraidedBracket, tau: &QScalar) -> Result<JacobiReport> {
    let w2 = uqmod::tensor(&b.module, &b.module)?;
    let split = split_sym_antisym(&w2)?;
    verify_jacobi_on_basis(b, tau, &split.minus_basis)
}

fn verify_jacobi_on_basis(
    b: &BraidedBracket,
    tau: &QScalar,
    basis: &[Vec<QScalar>],
) -> Result<JacobiReport> {
    let ls: Vec<Matrix<QScalar>> = (0..3).map(|i| b.left_mult(i)).collect();
    let mut checks = Vec::new();
    for (k, x) in basis.iter().enumerate() {
        let mut lhs = Matrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                let c = &x[pair(i, j)];
                if !c.is_zero() {
                    lhs = lhs.add(&ls[i].mul(&ls[j]).scale(c));
                }
            }
        }
        let rhs = b.left_mult_by(&b.apply(x)).scale(tau);
        for (z, name) in BASIS_NAMES.iter().enumerate() {
            let pass = lhs.column(z) == rhs.column(z);
            checks.push(JacobiCheck {
                relation: k,
                z: name,
                pass,
            });
        }
    }
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(JacobiReport { checks, all_pass })
}
