//! Almost representations of the braided sl(2): the checker, rescaling, the
//! spin-1/2 example and its truncated tensor powers.

use serde::{Deserialize, Serialize};

use crate::braided::{self, BraidedBracket, U, V, W};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::qscalar::{qint, QScalar};
use crate::strategy::Limits;
use crate::uqmod::{self, WeightModule};

/// Images `ρ(u), ρ(v), ρ(w)` acting on `target`, satisfying the enveloping
/// relations with coefficient `h_measured`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostRep {
    pub rho_u: Matrix<QScalar>,
    pub rho_v: Matrix<QScalar>,
    pub rho_w: Matrix<QScalar>,
    pub target: WeightModule,
    pub h_measured: QScalar,
}

impl AlmostRep {
    pub fn rho(&self, i: usize) -> &Matrix<QScalar> {
        match i {
            U => &self.rho_u,
            V => &self.rho_v,
            W => &self.rho_w,
            _ => panic!("adjoint basis index {i} out of range"),
        }
    }

    /// The map `V → End(target)`, one column per basis vector of `V`.
    pub fn end_map(&self) -> Matrix<QScalar> {
        end_map(&[&self.rho_u, &self.rho_v, &self.rho_w])
    }

    pub fn scaled(&self, c: &QScalar) -> AlmostRep {
        AlmostRep {
            rho_u: self.rho_u.scale(c),
            rho_v: self.rho_v.scale(c),
            rho_w: self.rho_w.scale(c),
            target: self.target.clone(),
            h_measured: self.h_measured.clone() * c,
        }
    }
}

#[derive(Serialize)]
struct AlmostRepJson<'a> {
    target: &'a WeightModule,
    rho: RhoJson,
    h_measured: &'a QScalar,
}

/// Three square matrices, rows of `QScalar` strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RhoJson {
    pub u: Vec<Vec<QScalar>>,
    pub v: Vec<Vec<QScalar>>,
    pub w: Vec<Vec<QScalar>>,
}

impl Serialize for AlmostRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlmostRepJson {
            target: &self.target,
            rho: RhoJson {
                u: self.rho_u.to_rows(),
                v: self.rho_v.to_rows(),
                w: self.rho_w.to_rows(),
            },
            h_measured: &self.h_measured,
        }
        .serialize(s)
    }
}

fn end_map(rho: &[&Matrix<QScalar>; 3]) -> Matrix<QScalar> {
    let cols: Vec<Vec<QScalar>> = rho.iter().map(|m| uqmod::end_vector(m)).collect();
    let d = rho[0].nrows();
    Matrix::from_columns(&cols, d * d)
}

/// Why a candidate fails to be an almost representation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum RepViolation {
    Shape(String),
    /// `V → End(U)` does not commute with the quantum-group action.
    NotIntertwiner(Vec<String>),
    /// A component of `I_-` other than the copy of `V` is not killed.
    ComponentNotKilled {
        highest_weight: u32,
    },
    /// `ρ ∘ [,]_q` vanishes on `I_-`, or `ν = 0`.
    BracketAnnihilated,
    /// `Σ b^{ij} ρ(u_i)ρ(u_j)` is not proportional to `ρ([b]_q)`.
    NotProportional {
        relation: usize,
    },
    /// The enveloping relations fail for every `h`.
    RelationFails {
        relation: usize,
    },
}

impl std::fmt::Display for RepViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RepViolation::Shape(s) => write!(f, "shape: {s}"),
            RepViolation::NotIntertwiner(d) => write!(f, "not an intertwiner: {}", d.join("; ")),
            RepViolation::ComponentNotKilled { highest_weight } => {
                write!(
                    f,
                    "component of highest weight {highest_weight} in I_- is not annihilated"
                )
            }
            RepViolation::BracketAnnihilated => f.write_str("bracket component annihilated"),
            RepViolation::NotProportional { relation } => {
                write!(f, "relation {relation} is not proportional to the bracket")
            }
            RepViolation::RelationFails { relation } => {
                write!(f, "enveloping relation {relation} fails")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Valid(AlmostRep),
    Invalid(Vec<RepViolation>),
}

impl Outcome {
    pub fn is_valid(&self) -> bool {
        matches!(self, Outcome::Valid(_))
    }

    pub fn into_rep(self) -> Result<AlmostRep> {
        match self {
            Outcome::Valid(r) => Ok(r),
            Outcome::Invalid(v) => Err(Error::Inconsistent(
                v.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; "),
            )),
        }
    }
}

fn quad_image(rho: &[&Matrix<QScalar>; 3], x: &[QScalar]) -> Matrix<QScalar> {
    let d = rho[0].nrows();
    let mut acc = Matrix::zeros(d, d);
    for i in 0..3 {
        for j in 0..3 {
            let c = &x[braided::pair(i, j)];
            if !c.is_zero() {
                acc = acc.add(&rho[i].mul(rho[j]).scale(c));
            }
        }
    }
    acc
}

fn lin_image(rho: &[&Matrix<QScalar>; 3], y: &[QScalar]) -> Matrix<QScalar> {
    let d = rho[0].nrows();
    (0..3).fold(Matrix::zeros(d, d), |acc, i| acc.add(&rho[i].scale(&y[i])))
}

/// The scalar `c` with `a = c·b`, if any (`None` also when `b = 0 ≠ a`).
fn proportionality(a: &Matrix<QScalar>, b: &Matrix<QScalar>) -> Option<Option<QScalar>> {
    let mut c: Option<QScalar> = None;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            let (x, y) = (a.get(i, j), b.get(i, j));
            if y.is_zero() {
                if !x.is_zero() {
                    return None;
                }
                continue;
            }
            let t = x.clone() / y;
            match &c {
                None => c = Some(t),
                Some(prev) if *prev != t => return None,
                _ => {}
            }
        }
    }
    Some(c)
}

/// The `h` with which the three enveloping relations hold, if one exists:
/// `q²uv - vu = -h u`, `(q³+q)(uw - wu) + (1-q²)v² = h v`, `-q²vw + wv = h w`.
pub fn measure_h(rho: &[&Matrix<QScalar>; 3]) -> std::result::Result<QScalar, RepViolation> {
    let quads = braided::standard_minus_basis();
    let signs = [-QScalar::one(), QScalar::one(), QScalar::one()];
    let mut h: Option<QScalar> = None;
    for (k, (x, sign)) in quads.iter().zip(signs).enumerate() {
        let lhs = quad_image(rho, x);
        let rhs = rho[k].scale(&sign);
        match proportionality(&lhs, &rhs) {
            None => return Err(RepViolation::RelationFails { relation: k }),
            Some(None) => {}
            Some(Some(c)) => match &h {
                None => h = Some(c),
                Some(prev) if *prev != c => {
                    return Err(RepViolation::RelationFails { relation: k })
                }
                _ => {}
            },
        }
    }
    h.ok_or(RepViolation::BracketAnnihilated)
}

/// Runs the almost-representation checks on `ρ` against the bracket `b`.
pub fn check_almost_rep(
    rho: [Matrix<QScalar>; 3],
    target: &WeightModule,
    b: &BraidedBracket,
) -> Result<Outcome> {
    target.ensure_valid()?;
    let d = target.dim();
    if rho.iter().any(|m| m.nrows() != d || m.ncols() != d) {
        return Ok(Outcome::Invalid(vec![RepViolation::Shape(format!(
            "ρ must consist of {d}x{d} matrices"
        ))]));
    }
    let refs = [&rho[0], &rho[1], &rho[2]];
    let mut violations = Vec::new();

    let end = uqmod::end_module(target)?;
    let defects = uqmod::intertwiner_defects(&end_map(&refs), &b.module, &end);
    if !defects.is_empty() {
        violations.push(RepViolation::NotIntertwiner(defects));
    }

    let w2 = uqmod::tensor(&b.module, &b.module)?;
    let split = braided::split_sym_antisym(&w2)?;
    for c in &split.decomposition.components {
        if c.highest_weight == 2 {
            continue;
        }
        let hv = c.highest_weight_vector();
        if split.minus_projector.mul_vec(&hv) == hv && !quad_image(&refs, &hv).is_zero() {
            violations.push(RepViolation::ComponentNotKilled {
                highest_weight: c.highest_weight,
            });
        }
    }

    let mut nu: Option<QScalar> = None;
    for (k, x) in split.minus_basis.iter().enumerate() {
        let lhs = quad_image(&refs, x);
        let rhs = lin_image(&refs, &b.apply(x));
        match proportionality(&lhs, &rhs) {
            None => violations.push(RepViolation::NotProportional { relation: k }),
            Some(None) => {}
            Some(Some(c)) => match &nu {
                None => nu = Some(c),
                Some(prev) if *prev != c => {
                    violations.push(RepViolation::NotProportional { relation: k })
                }
                _ => {}
            },
        }
    }
    if violations.is_empty() && nu.as_ref().map_or(true, QScalar::is_zero) {
        violations.push(RepViolation::BracketAnnihilated);
    }

    let h = match measure_h(&refs) {
        Ok(h) => Some(h),
        Err(v) => {
            if !violations.contains(&v) {
                violations.push(v);
            }
            None
        }
    };
    if !violations.is_empty() {
        return Ok(Outcome::Invalid(violations));
    }
    let h_measured = h.expect("relations hold when no violation was recorded");
    // h = ν (q⁴ + 1) M
    let nu = nu.expect("ν found");
    let expected = nu * QScalar::from_terms(&[(1, 4), (1, 0)]) * &b.scale;
    if expected != h_measured {
        return Err(Error::Inconsistent(format!(
            "h from ν ({expected}) differs from the measured h ({h_measured})"
        )));
    }
    let [rho_u, rho_v, rho_w] = rho;
    Ok(Outcome::Valid(AlmostRep {
        rho_u,
        rho_v,
        rho_w,
        target: target.clone(),
        h_measured,
    }))
}

/// Input accepted by the `almost-rep` command: a module and, optionally, the
/// matrices `ρ(u), ρ(v), ρ(w)`. Without them the unique intertwiner
/// `V → End(module)` is used.
#[derive(Clone, Debug, Deserialize)]
pub struct RepInput {
    pub module: WeightModule,
    #[serde(default)]
    pub rho: Option<RhoJson>,
}

/// Resolves `ρ` for an input file.
pub fn rho_from_input(input: &RepInput) -> Result<[Matrix<QScalar>; 3]> {
    input.module.ensure_valid()?;
    let d = input.module.dim();
    let to_matrix = |rows: &Vec<Vec<QScalar>>| -> Result<Matrix<QScalar>> {
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidModule(vec![format!(
                "ρ matrices must be {d}x{d}"
            )]));
        }
        Ok(Matrix::from_rows(rows.clone()))
    };
    if let Some(r) = &input.rho {
        return Ok([to_matrix(&r.u)?, to_matrix(&r.v)?, to_matrix(&r.w)?]);
    }
    let end = uqmod::end_module(&input.module)?;
    let homs = uqmod::morphism_space(&braided::adjoint_module(), &end);
    match homs.len() {
        0 => Ok([
            Matrix::zeros(d, d),
            Matrix::zeros(d, d),
            Matrix::zeros(d, d),
        ]),
        1 => {
            let t = &homs[0];
            Ok([0, 1, 2].map(|i| uqmod::end_matrix(&t.column(i), d)))
        }
        k => Err(Error::Unsupported(format!(
            "the adjoint module occurs {k} times in End(U); pass ρ explicitly"
        ))),
    }
}

/// `ρ(u) = [[0,1],[0,0]]`, `ρ(v) = diag(q^-1, -q)`, `ρ(w) = [[0,0],[q^-1,0]]`.
pub fn spin_half_matrices() -> [Matrix<QScalar>; 3] {
    let z = QScalar::zero;
    let qi = QScalar::q_pow(-1);
    [
        Matrix::from_rows(vec![vec![z(), QScalar::one()], vec![z(), z()]]),
        Matrix::diagonal(vec![qi.clone(), -QScalar::q()]),
        Matrix::from_rows(vec![vec![z(), z()], vec![qi, z()]]),
    ]
}

/// The map `V ⊗ U → U` on the spin-1/2 module (`U` basis `a, b`):
/// `u⊗a ↦ 0, u⊗b ↦ a, v⊗a ↦ q^-1 a, v⊗b ↦ -q b, w⊗a ↦ q^-1 b, w⊗b ↦ 0`.
pub fn generating_map() -> Matrix<QScalar> {
    let [ru, rv, rw] = spin_half_matrices();
    let mut t = Matrix::zeros(2, 6);
    for (x, m) in [ru, rv, rw].iter().enumerate() {
        for (r, c, val) in m.nonzeros() {
            t.set(r, 2 * x + c, val.clone());
        }
    }
    t
}

/// Intertwiner defects of [`generating_map`] as a map `V ⊗ U → U`.
pub fn generating_map_defects() -> Result<Vec<String>> {
    let u = WeightModule::spin_half();
    let src = uqmod::tensor(&braided::adjoint_module(), &u)?;
    Ok(uqmod::intertwiner_defects(&generating_map(), &src, &u))
}

pub fn spin_half_rep() -> Result<AlmostRep> {
    let b = braided::build_bracket(&QScalar::one())?;
    check_almost_rep(spin_half_matrices(), &WeightModule::spin_half(), &b)?.into_rep()
}

/// A rescaled almost representation together with the factor applied.
#[derive(Clone, Debug, Serialize)]
pub struct Rescaled {
    pub rep: AlmostRep,
    pub factor: QScalar,
}

/// Scales `ρ` by `h_env / h_measured`, so the result satisfies the enveloping
/// relations with coefficient `h_env`.
pub fn rescale_to_rep(a: &AlmostRep, h_env: &QScalar) -> Result<Rescaled> {
    let factor = h_env
        .checked_div(&a.h_measured)
        .map_err(|_| Error::Normalization("cannot rescale: h_measured is zero".into()))?;
    Ok(Rescaled {
        rep: a.scaled(&factor),
        factor,
    })
}

/// `1 + q² + … + q^{2(k-1)}`.
fn geometric(k: u32) -> QScalar {
    let terms: Vec<(i64, i64)> = (0..k as i64).map(|i| (1, 2 * i)).collect();
    QScalar::from_terms(&terms)
}

fn require_positive(k: u32) -> Result<()> {
    if k == 0 {
        Err(Error::Unsupported("k must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `h_k = (q^-1 + q^{2k+1}) κ` with `κ = (1 + q² + … + q^{2(k-1)})^{-1}`.
pub fn h_k_closed_form(k: u32) -> Result<QScalar> {
    require_positive(k)?;
    Ok(QScalar::from_terms(&[(1, -1), (1, 2 * k as i64 + 1)]) / geometric(k))
}

/// `(q^-1 + q³)(1 + q² + … + q^{2(k-1)}) / (q^-1 + q^{2k+1})`, i.e. `h_1 / h_k`.
pub fn rescaling_factor(k: u32) -> Result<QScalar> {
    require_positive(k)?;
    Ok(QScalar::from_terms(&[(1, -1), (1, 3)]) * geometric(k)
        / QScalar::from_terms(&[(1, -1), (1, 2 * k as i64 + 1)]))
}

/// Second diagonal entry of `ρ̄_k(v)`: `q^-1 - (q^{2k-1} + q^{2k-3}) κ`.
pub fn v2_closed_form(k: u32) -> Result<QScalar> {
    require_positive(k)?;
    let k = k as i64;
    Ok(QScalar::q_pow(-1)
        - QScalar::from_terms(&[(1, 2 * k - 1), (1, 2 * k - 3)]) / geometric(k as u32))
}

/// The top summand of the `k`-th tensor power of the spin-1/2 module and the
/// truncated almost representation on it.
#[derive(Clone, Debug)]
pub struct TruncatedPower {
    pub k: u32,
    pub rep: AlmostRep,
    /// `P_k`: `(U_{1/2})^{⊗k} → U_{k/2}`, coordinates in `f_i = Y^{i-1} a^{⊗k}`.
    pub projector: Matrix<QScalar>,
}

impl TruncatedPower {
    /// Checks `P_k(a^i (q ab - ba) a^{k-1-i}) = 0` for `i = 0..k-2`.
    pub fn projector_kills_singlets(&self) -> bool {
        let k = self.k as usize;
        (0..k.saturating_sub(1)).all(|i| {
            let n = 1usize << k;
            let mut v = vec![QScalar::zero(); n];
            // positions i and i+1 hold (a,b) or (b,a); others are a (bit 0)
            let ab = 1usize << (k - 1 - (i + 1));
            let ba = 1usize << (k - 1 - i);
            v[ab] = QScalar::q();
            v[ba] = -QScalar::one();
            self.projector.mul_vec(&v).iter().all(QScalar::is_zero)
        })
    }

    pub fn rho_v_diagonal(&self) -> Vec<QScalar> {
        (0..self.rep.rho_v.nrows())
            .map(|i| self.rep.rho_v.get(i, i).clone())
            .collect()
    }

    /// `ρ̄_k(v)` diagonal and `ρ̄_k(u)` strictly above the diagonal (one step).
    pub fn shape_ok(&self) -> bool {
        let n = self.rep.rho_v.nrows();
        let v_diag = self.rep.rho_v.nonzeros().all(|(i, j, _)| i == j);
        let u_over = self.rep.rho_u.nonzeros().all(|(i, j, _)| j == i + 1);
        let w_under = self.rep.rho_w.nonzeros().all(|(i, j, _)| i == j + 1);
        n == self.k as usize + 1 && v_diag && u_over && w_under
    }
}

/// Projector onto and embedding of the summand generated by `a^{⊗k}` (index 0),
/// in the basis `f_i = Y^i a^{⊗k}`. A vector of weight `k - 2i` has
/// `f_i`-coordinate `(X^i v)_0 / ([1][k]·[2][k-1]⋯[i][k-i+1])`: `X^i` kills every
/// summand of lower highest weight and sends `f_i` to that multiple of `f_0`.
pub fn top_summand(power: &WeightModule, k: u32) -> Result<(Matrix<QScalar>, Matrix<QScalar>)> {
    let dim = power.dim();
    if power.weights().first() != Some(&(k as i64)) {
        return Err(Error::Decomposition(format!(
            "first basis vector does not have weight {k}"
        )));
    }
    let xt = power.x().transpose();
    let mut top = vec![QScalar::zero(); dim];
    top[0] = QScalar::one();
    let mut rows = vec![top.clone()];
    let mut cols = vec![top];
    for i in 1..=k as i64 {
        let c = qint(i) * qint(k as i64 - i + 1);
        let r = xt.mul_vec(rows.last().unwrap());
        rows.push(r.into_iter().map(|x| x / &c).collect());
        cols.push(power.apply_y(cols.last().unwrap()));
    }
    let projector = Matrix::from_rows(rows);
    let embedding = Matrix::from_columns(&cols, dim);
    if projector.mul(&embedding) != Matrix::identity(k as usize + 1) {
        return Err(Error::Decomposition(
            "top summand projector is not a left inverse".into(),
        ));
    }
    Ok((projector, embedding))
}

/// `ρ̄_k(x) = P_k (ρ(x) ⊗ id_{k-1})` restricted to the top summand.
pub fn truncated_power(k: u32) -> Result<AlmostRep> {
    Ok(truncated_power_with(k, &Limits::default())?.rep)
}

pub fn truncated_power_with(k: u32, limits: &Limits) -> Result<TruncatedPower> {
    require_positive(k)?;
    let dim = if k >= usize::BITS - 1 {
        usize::MAX
    } else {
        1usize << k
    };
    limits.check("tensor power dimension 2^k", dim, limits.max_power_dim())?;
    let power = uqmod::tensor_power(&WeightModule::spin_half(), k as usize)?;
    let (projector, embedding) = top_summand(&power, k)?;
    let id_rest = Matrix::identity(dim / 2);
    let rho = spin_half_matrices().map(|m| projector.mul(&m.kron(&id_rest)).mul(&embedding));
    let target = uqmod::irreducible(k);
    let b = braided::build_bracket(&QScalar::one())?;
    let rep = check_almost_rep(rho, &target, &b)?.into_rep()?;
    Ok(TruncatedPower { k, rep, projector })
}
