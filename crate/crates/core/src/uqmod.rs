//! Finite-dimensional weight modules over U_q(sl(2)).
//!
//! The Cartan generator is never stored as a matrix: a module carries the
//! integer weight of each basis vector, and `q^{±H}` acts diagonally by
//! `q^{±wt}`. The algebra relations checked here are
//!
//! ```text
//! [H, X] = 2X,   [H, Y] = -2Y,   XY - YX = (q^H - q^-H) / (q - q^-1)
//! ```
//!
//! with coproduct `Δ(X) = X ⊗ 1 + q^-H ⊗ X`, `Δ(Y) = 1 ⊗ Y + Y ⊗ q^H`.
//! The antipode compatible with it is `γ(X) = -q^H X`, `γ(Y) = -Y q^-H`,
//! `γ(H) = -H`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, SparseVec};
use crate::qscalar::{qint, QScalar};

#[derive(Clone, Debug, PartialEq)]
pub struct WeightModule {
    x: Matrix<QScalar>,
    y: Matrix<QScalar>,
    wt: Vec<i64>,
}

/// A violated module axiom, as reported by [`WeightModule::verify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    Shape(String),
    /// `X[row][col] != 0` but `wt[row] != wt[col] + 2`.
    RaisingWeight {
        row: usize,
        col: usize,
    },
    /// `Y[row][col] != 0` but `wt[row] != wt[col] - 2`.
    LoweringWeight {
        row: usize,
        col: usize,
    },
    /// Entry of `XY - YX - [H]_q` that is not zero.
    Commutator {
        row: usize,
        col: usize,
    },
    /// The weight multiset is not symmetric under `m -> -m`.
    AsymmetricWeights,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Shape(s) => write!(f, "shape: {s}"),
            Violation::RaisingWeight { row, col } => {
                write!(f, "X[{row}][{col}] does not raise weight by 2")
            }
            Violation::LoweringWeight { row, col } => {
                write!(f, "Y[{row}][{col}] does not lower weight by 2")
            }
            Violation::Commutator { row, col } => {
                write!(f, "[X,Y] relation violated at ({row},{col})")
            }
            Violation::AsymmetricWeights => f.write_str("weights not symmetric under m -> -m"),
        }
    }
}

impl WeightModule {
    /// Assembles a module without checking the axioms; see [`WeightModule::new`].
    pub fn from_parts(x: Matrix<QScalar>, y: Matrix<QScalar>, wt: Vec<i64>) -> Self {
        WeightModule { x, y, wt }
    }

    /// Assembles a module and rejects it unless [`verify`](Self::verify) is clean.
    pub fn new(x: Matrix<QScalar>, y: Matrix<QScalar>, wt: Vec<i64>) -> Result<Self> {
        let m = Self::from_parts(x, y, wt);
        m.ensure_valid()?;
        Ok(m)
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.verify();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidModule(
                v.iter().map(ToString::to_string).collect(),
            ))
        }
    }

    pub fn dim(&self) -> usize {
        self.wt.len()
    }

    pub fn x(&self) -> &Matrix<QScalar> {
        &self.x
    }

    pub fn y(&self) -> &Matrix<QScalar> {
        &self.y
    }

    pub fn weights(&self) -> &[i64] {
        &self.wt
    }

    /// `q^(s·H)` as a diagonal matrix.
    pub fn q_pow_h(&self, s: i64) -> Matrix<QScalar> {
        Matrix::diagonal(self.wt.iter().map(|&w| QScalar::q_pow(s * w)).collect())
    }

    /// `[H]_q` as a diagonal matrix.
    pub fn qint_h(&self) -> Matrix<QScalar> {
        Matrix::diagonal(self.wt.iter().map(|&w| qint(w)).collect())
    }

    /// All violated axioms; empty means the module is valid.
    pub fn verify(&self) -> Vec<Violation> {
        let n = self.dim();
        let mut out = Vec::new();
        for (name, m) in [("X", &self.x), ("Y", &self.y)] {
            if m.nrows() != n || m.ncols() != n {
                out.push(Violation::Shape(format!(
                    "{name} is {}x{}, expected {n}x{n}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (i, j, _) in self.x.nonzeros() {
            if self.wt[i] != self.wt[j] + 2 {
                out.push(Violation::RaisingWeight { row: i, col: j });
            }
        }
        for (i, j, _) in self.y.nonzeros() {
            if self.wt[i] != self.wt[j] - 2 {
                out.push(Violation::LoweringWeight { row: i, col: j });
            }
        }
        let comm = self
            .x
            .mul(&self.y)
            .sub(&self.y.mul(&self.x))
            .sub(&self.qint_h());
        for (i, j, _) in comm.nonzeros() {
            out.push(Violation::Commutator { row: i, col: j });
        }
        let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
        for &w in &self.wt {
            *counts.entry(w).or_default() += 1;
        }
        if counts.iter().any(|(w, c)| counts.get(&-w) != Some(c)) {
            out.push(Violation::AsymmetricWeights);
        }
        out
    }

    /// Image of a coordinate vector under `X`.
    pub fn apply_x(&self, v: &[QScalar]) -> Vec<QScalar> {
        self.x.mul_vec(v)
    }

    pub fn apply_y(&self, v: &[QScalar]) -> Vec<QScalar> {
        self.y.mul_vec(v)
    }

    /// Basis indices grouped by weight, highest weight first.
    pub fn weight_spaces(&self) -> Vec<(i64, Vec<usize>)> {
        let mut by: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &w) in self.wt.iter().enumerate() {
            by.entry(w).or_default().push(i);
        }
        by.into_iter().rev().collect()
    }

    /// The module with basis `a, b`: `Xb = a`, `Ya = b`, weights `1, -1`.
    pub fn spin_half() -> Self {
        irreducible(1)
    }
}

/// Serialized form: `{"dim": n, "wt": [...], "X": [[...]], "Y": [[...]]}`.
#[derive(Serialize, Deserialize)]
struct ModuleJson {
    dim: usize,
    wt: Vec<i64>,
    #[serde(rename = "X")]
    x: Vec<Vec<QScalar>>,
    #[serde(rename = "Y")]
    y: Vec<Vec<QScalar>>,
}

impl Serialize for WeightModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ModuleJson {
            dim: self.dim(),
            wt: self.wt.clone(),
            x: self.x.to_rows(),
            y: self.y.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = ModuleJson::deserialize(d)?;
        let square = |m: &Vec<Vec<QScalar>>| m.len() == j.dim && m.iter().all(|r| r.len() == j.dim);
        if j.wt.len() != j.dim || !square(&j.x) || !square(&j.y) {
            return Err(D::Error::custom("matrix or weight sizes disagree with dim"));
        }
        let empty = |rows: Vec<Vec<QScalar>>| {
            if rows.is_empty() {
                Matrix::zeros(0, 0)
            } else {
                Matrix::from_rows(rows)
            }
        };
        Ok(WeightModule::from_parts(empty(j.x), empty(j.y), j.wt))
    }
}

/// The `(n+1)`-dimensional irreducible module of highest weight `n`: basis
/// `f_0..f_n`, `wt(f_i) = n - 2i`, `Y f_i = f_{i+1}`, `X f_i = [i][n-i+1] f_{i-1}`.
pub fn irreducible(n: u32) -> WeightModule {
    let d = n as usize + 1;
    let mut x = Matrix::zeros(d, d);
    let mut y = Matrix::zeros(d, d);
    for i in 0..d {
        if i + 1 < d {
            y.set(i + 1, i, QScalar::one());
        }
        if i > 0 {
            x.set(i - 1, i, qint(i as i64) * qint(n as i64 - i as i64 + 1));
        }
    }
    let wt = (0..d as i64).map(|i| n as i64 - 2 * i).collect();
    WeightModule::from_parts(x, y, wt)
}

/// Tensor product via the coproduct; basis `v_i ⊗ w_j` is index `i * dim(N) + j`:
///
/// `X(v⊗w) = Xv⊗w + q^-wt(v) v⊗Xw`,  `Y(v⊗w) = q^wt(w) Yv⊗w + v⊗Yw`.
pub fn tensor(m: &WeightModule, n: &WeightModule) -> Result<WeightModule> {
    m.ensure_valid()?;
    n.ensure_valid()?;
    Ok(tensor_unchecked(m, n))
}

pub(crate) fn tensor_unchecked(m: &WeightModule, n: &WeightModule) -> WeightModule {
    let id_m = Matrix::identity(m.dim());
    let id_n = Matrix::identity(n.dim());
    let x = m.x.kron(&id_n).add(&m.q_pow_h(-1).kron(&n.x));
    let y = id_m.kron(&n.y).add(&m.y.kron(&n.q_pow_h(1)));
    let wt =
        m.wt.iter()
            .flat_map(|a| n.wt.iter().map(move |b| a + b))
            .collect();
    WeightModule::from_parts(x, y, wt)
}

/// `k`-fold tensor power of `m` (`k ≥ 1`), first factor most significant.
pub fn tensor_power(m: &WeightModule, k: usize) -> Result<WeightModule> {
    m.ensure_valid()?;
    let mut acc = m.clone();
    for _ in 1..k {
        acc = tensor_unchecked(&acc, m);
    }
    Ok(acc)
}

/// Index of the matrix unit `E_{ij}` in `End(U)`, row-major.
pub fn end_index(dim: usize, i: usize, j: usize) -> usize {
    i * dim + j
}

/// Flattens a `d × d` matrix into a vector of `End(U)`, row-major.
pub fn end_vector(m: &Matrix<QScalar>) -> Vec<QScalar> {
    m.to_rows().into_iter().flatten().collect()
}

pub fn end_matrix(v: &[QScalar], dim: usize) -> Matrix<QScalar> {
    Matrix::from_rows(v.chunks(dim).map(<[QScalar]>::to_vec).collect())
}

/// `End(U)` with `ρ(a)M = ρ(a_1) ∘ M ∘ ρ(γ(a_2))`. Expanding the Sweedler terms:
///
/// `X·M = XM - q^-H M q^H X`,  `Y·M = Y M q^-H - M Y q^-H`,  `wt(E_ij) = wt_i - wt_j`.
pub fn end_module(u: &WeightModule) -> Result<WeightModule> {
    u.ensure_valid()?;
    let d = u.dim();
    let n = d * d;
    let qmh = u.q_pow_h(-1);
    let qh = u.q_pow_h(1);
    let mut x = Matrix::zeros(n, n);
    let mut y = Matrix::zeros(n, n);
    let ymh = u.y.mul(&qmh);
    for i in 0..d {
        for j in 0..d {
            let mut e = Matrix::zeros(d, d);
            e.set(i, j, QScalar::one());
            let xm = u.x.mul(&e).sub(&qmh.mul(&e).mul(&qh).mul(&u.x));
            let ym = u.y.mul(&e).mul(&qmh).sub(&e.mul(&ymh));
            let col = end_index(d, i, j);
            for (r, c, val) in xm.nonzeros() {
                x.set(end_index(d, r, c), col, val.clone());
            }
            for (r, c, val) in ym.nonzeros() {
                y.set(end_index(d, r, c), col, val.clone());
            }
        }
    }
    let wt = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| u.wt[i] - u.wt[j])
        .collect();
    Ok(WeightModule::from_parts(x, y, wt))
}

/// Linear map between modules, `map` is `target.dim × source.dim`.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub source: Arc<WeightModule>,
    pub target: Arc<WeightModule>,
    pub map: Matrix<QScalar>,
}

impl Morphism {
    /// Violations of `T X_s = X_t T`, `T Y_s = Y_t T` and weight preservation.
    pub fn intertwiner_defects(&self) -> Vec<String> {
        intertwiner_defects(&self.map, &self.source, &self.target)
    }

    pub fn is_intertwiner(&self) -> bool {
        self.intertwiner_defects().is_empty()
    }
}

pub fn intertwiner_defects(
    t: &Matrix<QScalar>,
    src: &WeightModule,
    dst: &WeightModule,
) -> Vec<String> {
    let mut out = Vec::new();
    if t.nrows() != dst.dim() || t.ncols() != src.dim() {
        out.push(format!(
            "map is {}x{}, expected {}x{}",
            t.nrows(),
            t.ncols(),
            dst.dim(),
            src.dim()
        ));
        return out;
    }
    for (i, j, _) in t.nonzeros() {
        if dst.wt[i] != src.wt[j] {
            out.push(format!("entry ({i},{j}) does not preserve weight"));
        }
    }
    for (name, a, b) in [("X", &src.x, &dst.x), ("Y", &src.y, &dst.y)] {
        if !t.mul(a).sub(&b.mul(t)).is_zero() {
            out.push(format!("does not commute with {name}"));
        }
    }
    out
}

/// Basis of the space of module maps `M → N`.
pub fn morphism_space(m: &WeightModule, n: &WeightModule) -> Vec<Matrix<QScalar>> {
    // Unknowns: T[i][j] with wt_N(i) == wt_M(j).
    let mut unknown: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for i in 0..n.dim() {
        for j in 0..m.dim() {
            if n.wt[i] == m.wt[j] {
                let k = unknown.len();
                unknown.insert((i, j), k);
            }
        }
    }
    let nvar = unknown.len();
    let mut eqs: Vec<SparseVec<QScalar>> = Vec::new();
    for (am, an) in [(&m.x, &n.x), (&m.y, &n.y)] {
        // (T A_M - A_N T)[i][j] = sum_l T[i][l] A_M[l][j] - sum_l A_N[i][l] T[l][j]
        for i in 0..n.dim() {
            for j in 0..m.dim() {
                let mut row: BTreeMap<usize, QScalar> = BTreeMap::new();
                for l in 0..m.dim() {
                    let a = am.get(l, j);
                    if a.is_zero() {
                        continue;
                    }
                    if let Some(&k) = unknown.get(&(i, l)) {
                        let e = row.entry(k).or_default();
                        *e += a;
                    }
                }
                for l in 0..n.dim() {
                    let a = an.get(i, l);
                    if a.is_zero() {
                        continue;
                    }
                    if let Some(&k) = unknown.get(&(l, j)) {
                        let e = row.entry(k).or_default();
                        *e -= a;
                    }
                }
                let row: SparseVec<QScalar> =
                    row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !row.is_empty() {
                    eqs.push(row);
                }
            }
        }
    }
    linalg::nullspace(eqs, nvar)
        .into_iter()
        .map(|sol| {
            let mut t = Matrix::zeros(n.dim(), m.dim());
            for (&(i, j), &k) in &unknown {
                t.set(i, j, sol[k].clone());
            }
            t
        })
        .collect()
}

/// One irreducible summand: `embedding` maps `irreducible(hw)` into the module
/// (`f_i ↦ Y^i v` for a highest-weight vector `v`), `projector` maps the
/// module onto `irreducible(hw)` along the other summands.
#[derive(Clone, Debug)]
pub struct Component {
    pub highest_weight: u32,
    pub embedding: Morphism,
    pub projector: Morphism,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.highest_weight as usize + 1
    }

    /// `embedding ∘ projector`, the idempotent on the module.
    pub fn idempotent(&self) -> Matrix<QScalar> {
        self.embedding.map.mul(&self.projector.map)
    }

    /// The highest-weight vector spanning the top of this summand.
    pub fn highest_weight_vector(&self) -> Vec<QScalar> {
        self.embedding.map.column(0)
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub module: Arc<WeightModule>,
    pub components: Vec<Component>,
}

impl Decomposition {
    /// Highest weight → multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for c in &self.components {
            *out.entry(c.highest_weight).or_default() += 1;
        }
        out
    }

    /// Component dimensions in output order.
    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(Component::dim).collect()
    }

    /// Sum of the idempotents of the components with the given highest weight.
    pub fn isotypic_projector(&self, hw: u32) -> Matrix<QScalar> {
        let n = self.module.dim();
        self.components
            .iter()
            .filter(|c| c.highest_weight == hw)
            .fold(Matrix::zeros(n, n), |acc, c| acc.add(&c.idempotent()))
    }
}

/// Splits a module into irreducible summands.
///
/// Highest-weight vectors are the kernel of `X` on each weight space, visited
/// from the top weight down; within a weight space the lexicographic kernel
/// basis fixes the order (and the splitting of a multiplicity space).
pub fn decompose(m: &WeightModule) -> Result<Decomposition> {
    m.ensure_valid()?;
    let module = Arc::new(m.clone());
    let n = m.dim();
    let spaces = m.weight_spaces();
    let index_of: BTreeMap<i64, &Vec<usize>> = spaces.iter().map(|(w, idx)| (*w, idx)).collect();

    // (highest weight, string v, Yv, ..., Y^hw v)
    let mut strings: Vec<(u32, Vec<Vec<QScalar>>)> = Vec::new();
    for (w, idx) in &spaces {
        let above = index_of.get(&(w + 2));
        let kernel: Vec<Vec<QScalar>> = match above {
            None => idx
                .iter()
                .map(|&j| {
                    let mut e = vec![QScalar::zero(); idx.len()];
                    e[idx.iter().position(|&k| k == j).unwrap()] = QScalar::one();
                    e
                })
                .collect(),
            Some(rows) => {
                let eqs: Vec<SparseVec<QScalar>> = rows
                    .iter()
                    .map(|&r| {
                        idx.iter()
                            .enumerate()
                            .filter(|(_, &c)| !m.x.get(r, c).is_zero())
                            .map(|(k, &c)| (k, m.x.get(r, c).clone()))
                            .collect()
                    })
                    .collect();
                linalg::nullspace(eqs, idx.len())
            }
        };
        for kv in kernel {
            if *w < 0 {
                return Err(Error::Decomposition(format!(
                    "highest-weight vector of negative weight {w}"
                )));
            }
            let mut v = vec![QScalar::zero(); n];
            for (k, &j) in idx.iter().enumerate() {
                v[j] = kv[k].clone();
            }
            let hw = *w as u32;
            let mut string = vec![v];
            for _ in 0..hw {
                let next = m.apply_y(string.last().unwrap());
                if next.iter().all(QScalar::is_zero) {
                    return Err(Error::Decomposition(format!(
                        "string of highest weight {hw} terminates early"
                    )));
                }
                string.push(next);
            }
            if !m
                .apply_y(string.last().unwrap())
                .iter()
                .all(QScalar::is_zero)
            {
                return Err(Error::Decomposition(format!(
                    "string of highest weight {hw} does not terminate"
                )));
            }
            strings.push((hw, string));
        }
    }
    let total: usize = strings.iter().map(|(hw, _)| *hw as usize + 1).sum();
    if total != n {
        return Err(Error::Decomposition(format!(
            "summands span {total} dimensions, module has {n}"
        )));
    }

    // Per weight space, invert the change of basis to the string vectors.
    // coord[(component, level)] = row functional in module coordinates.
    let mut functionals: BTreeMap<(usize, usize), Vec<QScalar>> = BTreeMap::new();
    for (w, idx) in &spaces {
        let mut members: Vec<(usize, usize)> = Vec::new();
        for (c, (hw, _)) in strings.iter().enumerate() {
            let hw = *hw as i64;
            if (hw - w) >= 0 && (hw - w) % 2 == 0 && (hw - w) / 2 <= hw {
                members.push((c, ((hw - w) / 2) as usize));
            }
        }
        if members.len() != idx.len() {
            return Err(Error::Decomposition(format!(
                "weight space {w} is not spanned"
            )));
        }
        let cols: Vec<Vec<QScalar>> = members
            .iter()
            .map(|&(c, lvl)| idx.iter().map(|&j| strings[c].1[lvl][j].clone()).collect())
            .collect();
        let basis = Matrix::from_columns(&cols, idx.len());
        let inv = linalg::inverse(&basis).ok_or_else(|| {
            Error::Decomposition(format!("summands are dependent in weight space {w}"))
        })?;
        for (r, &key) in members.iter().enumerate() {
            let mut f = vec![QScalar::zero(); n];
            for (k, &j) in idx.iter().enumerate() {
                f[j] = inv.get(r, k).clone();
            }
            functionals.insert(key, f);
        }
    }

    let components = strings
        .iter()
        .enumerate()
        .map(|(c, (hw, string))| {
            let irr = Arc::new(irreducible(*hw));
            let d = *hw as usize + 1;
            let embedding = Matrix::from_columns(string, n);
            let mut proj = Matrix::zeros(d, n);
            for lvl in 0..d {
                for (j, x) in functionals[&(c, lvl)].iter().enumerate() {
                    if !x.is_zero() {
                        proj.set(lvl, j, x.clone());
                    }
                }
            }
            Component {
                highest_weight: *hw,
                embedding: Morphism {
                    source: irr.clone(),
                    target: module.clone(),
                    map: embedding,
                },
                projector: Morphism {
                    source: module.clone(),
                    target: irr,
                    map: proj,
                },
            }
        })
        .collect();
    Ok(Decomposition { module, components })
}
