//! Acceptance suite: one line per criterion.
//!
//! Each criterion runs the library check (with its time limit) and then a set
//! of independent oracles written here with plain rational matrices, plus the
//! command-line surface where one exists.

use std::process::Command;
use std::time::Instant;

use num_traits::{One, Zero};
use qlie_core::{
    braided, brmod, hilbert, rat, realg, selftest, uqmod, Limits, QScalar, Rational, Strategy,
};
use serde_json::Value;

type M = Vec<Vec<Rational>>;

fn zeros(r: usize, c: usize) -> M {
    vec![vec![Rational::zero(); c]; r]
}

fn eye(n: usize) -> M {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

fn mul(a: &M, b: &M) -> M {
    let mut out = zeros(a.len(), b[0].len());
    for i in 0..a.len() {
        for k in 0..b.len() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..b[0].len() {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn add(a: &M, b: &M) -> M {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
        .collect()
}

fn scale(a: &M, c: &Rational) -> M {
    a.iter()
        .map(|r| r.iter().map(|x| x * c).collect())
        .collect()
}

fn kron(a: &M, b: &M) -> M {
    let (ra, ca, rb, cb) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut out = zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

fn diag_pow(q: &Rational, wts: &[i32], sign: i32) -> M {
    let mut m = zeros(wts.len(), wts.len());
    for (i, w) in wts.iter().enumerate() {
        m[i][i] = pow(q, sign * w);
    }
    m
}

fn pow(q: &Rational, e: i32) -> Rational {
    num_traits::Pow::pow(q, e)
}

fn from_lib(m: &qlie_core::Matrix<Rational>) -> M {
    m.to_rows()
}

/// Adjoint module at `q = q0`: `X, Y` and weights.
fn adjoint_at(q: &Rational) -> (M, M, Vec<i32>) {
    let qp = q + q.recip();
    let mut x = zeros(3, 3);
    x[0][1] = -qp.clone();
    x[1][2] = Rational::one();
    let mut y = zeros(3, 3);
    y[1][0] = -Rational::one();
    y[2][1] = qp;
    (x, y, vec![2, 0, -2])
}

fn spin_half_at() -> (M, M, Vec<i32>) {
    let mut x = zeros(2, 2);
    x[0][1] = Rational::one();
    let mut y = zeros(2, 2);
    y[1][0] = Rational::one();
    (x, y, vec![1, -1])
}

/// `ΔX = X⊗1 + K^-1⊗X`, `ΔY = 1⊗Y + Y⊗K`.
fn coproduct(q: &Rational, a: &(M, M, Vec<i32>), b: &(M, M, Vec<i32>)) -> (M, M) {
    let (ia, ib) = (eye(a.0.len()), eye(b.0.len()));
    let dx = add(&kron(&a.0, &ib), &kron(&diag_pow(q, &a.2, -1), &b.0));
    let dy = add(&kron(&ia, &b.1), &kron(&a.1, &diag_pow(q, &b.2, 1)));
    (dx, dy)
}

fn qlie(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qlie"))
        .args(args)
        .env_remove("QLIE_MAX_DIM")
        .output()
        .expect("qlie runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn qlie_json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out) = qlie(&a);
    (code, serde_json::from_str(&out).expect("JSON report"))
}

fn qs(s: &str) -> QScalar {
    s.parse().unwrap()
}

fn points() -> Vec<Rational> {
    vec![rat(7, 5), rat(3, 2), rat(-2, 3), rat(5, 1)]
}

struct Oracle(Vec<String>);

impl Oracle {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.0.push(what.into());
        }
    }
}

fn c1(o: &mut Oracle) {
    let b = braided::build_bracket(&QScalar::one()).unwrap();
    for q in points() {
        let c = from_lib(&b.eval_at(&q).unwrap());
        let adj = adjoint_at(&q);
        let (dx, dy) = coproduct(&q, &adj, &adj);
        o.check(
            mul(&c, &dx) == mul(&adj.0, &c),
            format!("bracket commutes with X at q = {q}"),
        );
        o.check(
            mul(&c, &dy) == mul(&adj.1, &c),
            format!("bracket commutes with Y at q = {q}"),
        );
        let q2 = &q * &q;
        let inv = (&q + q.recip()).recip();
        // (row, column, value) of the expected table with M = 1
        let expected = [
            (0, 1, -q2.clone()),
            (1, 2, inv.clone()),
            (0, 3, Rational::one()),
            (1, 4, Rational::one() - &q2),
            (2, 5, -q2.clone()),
            (1, 6, -inv),
            (2, 7, Rational::one()),
        ];
        let mut want = zeros(3, 9);
        for (r, col, v) in expected {
            want[r][col] = v;
        }
        o.check(c == want, format!("table values at q = {q}"));
    }
    let (code, j) = qlie_json(&["bracket-table"]);
    o.check(
        code == 0 && j["status"] == "pass",
        "bracket-table exit status",
    );
    o.check(
        j["results"]["table"]["[u,v]"] == "-q^2*u",
        "bracket-table [u,v]",
    );
    o.check(j["results"]["table"]["[v,u]"] == "u", "bracket-table [v,u]");
}

fn tau_at(q: &Rational) -> Rational {
    let q2 = q * q;
    let q4 = &q2 * &q2;
    (&q4 - &q2 + Rational::one()) / (q4 + Rational::one())
}

fn c2(o: &mut Oracle) {
    let tau = braided::solve_tau().unwrap();
    for q in points() {
        let q2 = &q * &q;
        let alt = Rational::one() - (&q2 + q2.recip()).recip();
        o.check(
            tau.eval_at(&q).unwrap() == tau_at(&q),
            format!("tau at q = {q}"),
        );
        o.check(alt == tau_at(&q), format!("1 - (q^2 + q^-2)^-1 at q = {q}"));
    }
    let m = qs("3*q^-1 - 2");
    o.check(
        braided::solve_tau_with_scale(&m).unwrap() == tau,
        "tau independent of M",
    );
    let (code, out) = qlie(&["solve-tau"]);
    o.check(code == 0, "solve-tau exit code");
    o.check(
        out.contains("(q^4 - q^2 + 1)/(q^4 + 1)"),
        "solve-tau output",
    );
}

fn c3(o: &mut Oracle) {
    for m in ["1", "q^-2 + 5"] {
        let ms = qs(m);
        let b = braided::build_bracket(&ms).unwrap();
        let env = braided::enveloping_relations(&b, &braided::solve_tau_with_scale(&ms).unwrap())
            .unwrap();
        for q in points() {
            let q2 = &q * &q;
            let want = (&q2 * &q2 - &q2 + Rational::one()) * ms.eval_at(&q).unwrap();
            o.check(
                env.h.eval_at(&q).unwrap() == want,
                format!("h at q = {q}, M = {m}"),
            );
        }
        // linear parts: +h u, -h v, -h w
        let lin: Vec<Vec<QScalar>> = env.relations.iter().map(|r| r.linear.clone()).collect();
        let z = QScalar::zero;
        o.check(
            lin[0] == vec![env.h.clone(), z(), z()],
            "relation 1 linear part",
        );
        o.check(
            lin[1] == vec![z(), -env.h.clone(), z()],
            "relation 2 linear part",
        );
        o.check(
            lin[2] == vec![z(), z(), -env.h.clone()],
            "relation 3 linear part",
        );
    }
}

fn spin_rho_at(q: &Rational) -> [M; 3] {
    let qi = q.recip();
    let mut u = zeros(2, 2);
    u[0][1] = Rational::one();
    let mut v = zeros(2, 2);
    v[0][0] = qi.clone();
    v[1][1] = -q.clone();
    let mut w = zeros(2, 2);
    w[1][0] = qi;
    [u, v, w]
}

fn c4(o: &mut Oracle) {
    for q in points() {
        let [u, v, w] = spin_rho_at(&q);
        let h = pow(&q, 3) + q.recip();
        let q2 = &q * &q;
        let r1 = add(
            &add(&scale(&mul(&u, &v), &q2), &scale(&mul(&v, &u), &rat(-1, 1))),
            &scale(&u, &h),
        );
        let uw_wu = add(&mul(&u, &w), &scale(&mul(&w, &u), &rat(-1, 1)));
        let r2 = add(
            &add(
                &scale(&uw_wu, &(pow(&q, 3) + &q)),
                &scale(&mul(&v, &v), &(Rational::one() - &q2)),
            ),
            &scale(&v, &-h.clone()),
        );
        let r3 = add(
            &add(&scale(&mul(&v, &w), &-q2.clone()), &mul(&w, &v)),
            &scale(&w, &-h.clone()),
        );
        for (k, r) in [r1, r2, r3].iter().enumerate() {
            o.check(*r == zeros(2, 2), format!("relation {} at q = {q}", k + 1));
        }
        // generating map V ⊗ U → U is an intertwiner
        let mut t = zeros(2, 6);
        for (x, m) in spin_rho_at(&q).iter().enumerate() {
            for r in 0..2 {
                for c in 0..2 {
                    t[r][2 * x + c] = m[r][c].clone();
                }
            }
        }
        let s = spin_half_at();
        let (dx, dy) = coproduct(&q, &adjoint_at(&q), &s);
        o.check(
            mul(&t, &dx) == mul(&s.0, &t),
            format!("generating map and X at q = {q}"),
        );
        o.check(
            mul(&t, &dy) == mul(&s.1, &t),
            format!("generating map and Y at q = {q}"),
        );
    }
    let r = brmod::spin_half_rep().unwrap();
    o.check(r.h_measured == qs("q^3 + q^-1"), "library h_1");

    // doubling rho(v) breaks the relations: q^2 uv - vu is no longer a multiple of u
    for q in points() {
        let [u, v, _] = spin_rho_at(&q);
        let v2 = scale(&v, &rat(2, 1));
        let lhs = add(
            &scale(&mul(&u, &v2), &(&q * &q)),
            &scale(&mul(&v2, &u), &rat(-1, 1)),
        );
        let ratio = &lhs[0][1] / &u[0][1];
        o.check(
            ratio != -(pow(&q, 3) + q.recip()),
            format!("doubled v keeps h_1 at q = {q}"),
        );
    }
    let [ru, rv, rw] = brmod::spin_half_matrices();
    let doubled = [ru, rv.scale(&QScalar::from_int(2)), rw];
    let b = braided::build_bracket(&QScalar::one()).unwrap();
    let outcome = brmod::check_almost_rep(doubled, &uqmod::WeightModule::spin_half(), &b).unwrap();
    o.check(!outcome.is_valid(), "checker rejects doubled rho(v)");
}

fn c5(o: &mut Oracle) {
    for k in 1..=6u32 {
        let t = brmod::truncated_power_with(k, &Limits::default()).unwrap();
        for q in points() {
            let kappa_inv: Rational = (0..k as i32).map(|i| pow(&q, 2 * i)).sum();
            let want = (q.recip() + pow(&q, 2 * k as i32 + 1)) / &kappa_inv;
            o.check(
                t.rep.h_measured.eval_at(&q).unwrap() == want,
                format!("h_{k} at q = {q}"),
            );
            let h1 = q.recip() + pow(&q, 3);
            let factor = brmod::rescaling_factor(k).unwrap().eval_at(&q).unwrap();
            o.check(factor * &want == h1, format!("factor * h_{k} at q = {q}"));
        }
        o.check(
            t.rep.h_measured.eval_at(&rat(1, 1)).unwrap() == rat(2, k as i64),
            format!("h_{k} at q = 1"),
        );
        o.check(
            brmod::rescaling_factor(k)
                .unwrap()
                .eval_at(&rat(1, 1))
                .unwrap()
                == rat(k as i64, 1),
            format!("factor at q = 1 for k = {k}"),
        );
    }
    let (code, j) = qlie_json(&["truncated-power", "--k", "3"]);
    o.check(
        code == 0 && j["status"] == "pass",
        "truncated-power --k 3 status",
    );
    o.check(
        j["results"]["h_measured"]
            .as_str()
            .and_then(|s| s.parse::<QScalar>().ok())
            == Some(qs("(q^-1 + q^7)/(q^4 + q^2 + 1)")),
        "truncated-power --k 3 h_measured",
    );
}

/// Left multiplications from the literal table, at `q`.
fn literal_left_mult(q: &Rational) -> [M; 3] {
    let q2 = q * q;
    let inv = (q + q.recip()).recip();
    let mut lu = zeros(3, 3);
    lu[0][1] = -q2.clone();
    lu[1][2] = inv.clone();
    let mut lv = zeros(3, 3);
    lv[0][0] = Rational::one();
    lv[1][1] = Rational::one() - &q2;
    lv[2][2] = -q2;
    let mut lw = zeros(3, 3);
    lw[1][0] = -inv;
    lw[2][1] = Rational::one();
    [lu, lv, lw]
}

fn jacobi_holds(q: &Rational, tau: &Rational) -> bool {
    let l = literal_left_mult(q);
    let q2 = q * q;
    let q3q = pow(q, 3) + q;
    // relations as (coefficients on pairs) and their brackets
    let rels: [Vec<(usize, usize, Rational)>; 3] = [
        vec![(0, 1, q2.clone()), (1, 0, rat(-1, 1))],
        vec![
            (0, 2, q3q.clone()),
            (2, 0, -q3q),
            (1, 1, Rational::one() - &q2),
        ],
        vec![(1, 2, -q2.clone()), (2, 1, rat(1, 1))],
    ];
    rels.iter().all(|rel| {
        let mut lhs = zeros(3, 3);
        let mut bracket = [Rational::zero(), Rational::zero(), Rational::zero()];
        for (i, j, c) in rel {
            lhs = add(&lhs, &scale(&mul(&l[*i], &l[*j]), c));
            for (r, b) in bracket.iter_mut().enumerate() {
                *b += c * &l[*i][r][*j];
            }
        }
        let mut rhs = zeros(3, 3);
        for (m, b) in bracket.iter().enumerate() {
            rhs = add(&rhs, &scale(&l[m], b));
        }
        lhs == scale(&rhs, tau)
    })
}

fn c6(o: &mut Oracle) {
    // classical limit: q = 1, tau = 1/2 is the ordinary Jacobi identity
    o.check(
        jacobi_holds(&rat(1, 1), &rat(1, 2)),
        "classical Jacobi at q = 1",
    );
    for q in points() {
        o.check(
            jacobi_holds(&q, &tau_at(&q)),
            format!("Jacobi with solved tau at q = {q}"),
        );
        o.check(
            !jacobi_holds(&q, &rat(1, 1)),
            format!("Jacobi fails with tau = 1 at q = {q}"),
        );
    }
    let (code, _) = qlie_json(&["verify-jacobi"]);
    o.check(code == 0, "verify-jacobi exit code");
    let (code, j) = qlie_json(&["verify-jacobi", "--tau", "1"]);
    o.check(
        code == 1 && j["status"] == "fail",
        "verify-jacobi --tau 1 fails",
    );
}

/// Irreducible dimensions from a weight multiset, by peeling off top weights.
fn peel(mut weights: Vec<i64>) -> Vec<usize> {
    let mut dims = Vec::new();
    while let Some(&top) = weights.iter().max() {
        let mut w = top;
        while w >= -top {
            let pos = weights.iter().position(|&x| x == w).expect("weight string");
            weights.swap_remove(pos);
            w -= 2;
        }
        dims.push(top as usize + 1);
    }
    dims
}

fn c7(o: &mut Oracle) {
    let a = braided::adjoint_module();
    let t = uqmod::tensor(&a, &a).unwrap();
    let mut want = peel(t.weights().to_vec());
    want.sort_unstable();
    let mut got = uqmod::decompose(&t).unwrap().dims();
    got.sort_unstable();
    o.check(
        got == want && want == [1, 3, 5],
        "V ⊗ V against its character",
    );
    let e = uqmod::end_module(&uqmod::WeightModule::spin_half()).unwrap();
    let mut want = peel(e.weights().to_vec());
    want.sort_unstable();
    o.check(want == [1, 3], "End(U) character");
    for (m, n) in [(1u32, 1u32), (2, 3), (4, 4)] {
        let t = uqmod::tensor(&uqmod::irreducible(m), &uqmod::irreducible(n)).unwrap();
        let mut got = uqmod::decompose(&t).unwrap().dims();
        got.sort_unstable();
        let mut cg: Vec<usize> = (0..=m.min(n))
            .map(|i| (m + n - 2 * i) as usize + 1)
            .collect();
        cg.sort_unstable();
        o.check(got == cg, format!("Clebsch-Gordan rule for {m} ⊗ {n}"));
    }
    let (code, j) = qlie_json(&["trace-decomp"]);
    o.check(
        code == 0 && j["results"]["dims"] == serde_json::json!([3, 1]),
        "trace-decomp",
    );
}

fn sym(g: usize, d: usize) -> usize {
    (1..=d).fold(1usize, |acc, i| acc * (g + i - 1) / i)
}

fn dims_of(j: &Value) -> Vec<usize> {
    j["results"]["algebra_dims"]
        .as_array()
        .map(|a| {
            a.iter()
                .filter_map(Value::as_u64)
                .map(|x| x as usize)
                .collect()
        })
        .unwrap_or_default()
}

fn c8(o: &mut Oracle) {
    let want: Vec<usize> = (0..=4).map(|d| sym(4, d)).collect();
    let (code, j) = qlie_json(&["hilbert", "--n", "2", "--dmax", "4"]);
    o.check(code == 0 && dims_of(&j) == want, "hilbert --n 2 --dmax 4");
    o.check(
        j["results"]["strategy"] == "symbolic",
        "n = 2 graded dims are symbolic",
    );
    let cumulative: Vec<usize> = (0..=4).map(|d| (0..=d).map(|e| sym(4, e)).sum()).collect();
    let (code, j) = qlie_json(&[
        "hilbert",
        "--n",
        "2",
        "--dmax",
        "4",
        "--filtered",
        "--h",
        "q^2 - 3",
    ]);
    o.check(
        code == 0 && dims_of(&j) == cumulative,
        "filtered dims of the shifted algebra",
    );
    let (code, j) = qlie_json(&["re-relations", "--n", "2"]);
    o.check(
        code == 0 && j["results"]["rank_minus"] == 6 && j["results"]["rank_plus"] == 10,
        "re-relations --n 2",
    );
}

fn c9(o: &mut Oracle) {
    let (code, j) = qlie_json(&["hilbert", "--n", "3", "--dmax", "2"]);
    o.check(
        code == 0 && dims_of(&j) == [1, 9, sym(9, 2)],
        "hilbert --n 3 --dmax 2",
    );
    o.check(
        j["results"]["strategy"]
            .as_str()
            .is_some_and(|s| s.contains("7/5") && s.contains("3/2")),
        "n = 3 uses two specializations",
    );
    // agreement at further points
    let a = realg::re_relations(3).unwrap();
    let s = Strategy::Specialized(vec![rat(-2, 3), rat(5, 1), rat(11, 7)]);
    o.check(
        realg::relation_rank(&a, &s).map(|r| r.rank).ok() == Some(36),
        "rank at three more points",
    );
}

fn c10(o: &mut Oracle) {
    for (n, args) in [
        (2usize, vec!["re-jacobi", "--n", "2", "--symbolic"]),
        (3, vec!["re-jacobi", "--n", "3"]),
    ] {
        let (code, j) = qlie_json(&args);
        let g = n * n;
        o.check(code == 0, format!("re-jacobi --n {n} status"));
        o.check(
            j["results"]["image_in_relations"] == true
                && j["results"]["bracket_of_image_vanishes"] == true,
            format!("generalized Jacobi identities for n = {n}"),
        );
        o.check(
            j["results"]["dim_t"] == g * (g - 1) * (g - 2) / 6,
            format!("dim T = C({g},3)"),
        );
    }
    let (code, j) = qlie_json(&["re-shift", "--n", "3", "--h", "q + 1/2"]);
    o.check(
        code == 0 && j["results"]["routes_agree"] == true,
        "re-shift --n 3",
    );
}

/// `S` at `q` built directly from its definition.
fn braiding_at(n: usize, q: &Rational) -> M {
    let lam = q - q.recip();
    let mut s = zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            if i == j {
                s[col][col] = q.clone();
            } else {
                s[j * n + i][col] = Rational::one();
                if i < j {
                    s[col][col] = lam.clone();
                }
            }
        }
    }
    s
}

fn c11(o: &mut Oracle) {
    for n in [2, 3, 4] {
        for q in points() {
            let s = braiding_at(n, &q);
            let id = eye(n);
            let s12 = kron(&s, &id);
            let s23 = kron(&id, &s);
            o.check(
                mul(&mul(&s12, &s23), &s12) == mul(&mul(&s23, &s12), &s23),
                format!("braid relation n = {n}, q = {q}"),
            );
            let big = eye(n * n);
            let a = add(&s, &scale(&big, &-q.clone()));
            let b = add(&s, &scale(&big, &q.recip()));
            o.check(
                mul(&a, &b) == zeros(n * n, n * n),
                format!("Hecke n = {n}, q = {q}"),
            );
            if n <= 3 {
                let lib = realg::standard_braiding(n).unwrap().s.eval_at(&q).unwrap();
                o.check(from_lib(&lib) == s, format!("library S n = {n}, q = {q}"));
            }
        }
    }
    let (code, j) = qlie_json(&["re-relations", "--n", "3"]);
    o.check(
        code == 0
            && j["results"]["braid_relation"] == true
            && j["results"]["hecke_condition"] == true,
        "re-relations --n 3",
    );
}

fn c12(o: &mut Oracle) {
    let one = rat(1, 1);
    let l = literal_left_mult(&one);
    // antisymmetry and Jacobi of the q = 1 table, in plain arithmetic
    let bracket =
        |x: usize, y: usize| -> Vec<Rational> { (0..3).map(|r| l[x][r][y].clone()).collect() };
    for x in 0..3 {
        for y in 0..3 {
            let s: Vec<Rational> = bracket(x, y)
                .iter()
                .zip(bracket(y, x))
                .map(|(a, b)| a + b)
                .collect();
            o.check(
                s.iter().all(Zero::is_zero),
                format!("antisymmetry ({x},{y})"),
            );
        }
    }
    let lb = braided::build_bracket(&QScalar::one())
        .unwrap()
        .eval_at(&one)
        .unwrap();
    for x in 0..3 {
        for y in 0..3 {
            let want = bracket(x, y);
            let got: Vec<Rational> = (0..3).map(|r| lb.get(r, 3 * x + y).clone()).collect();
            o.check(got == want, format!("library table at q = 1 ({x},{y})"));
        }
    }
    // e = u, h = v, f = w: [h,e] = e, [h,f] = -f, [e,f] = h/2, i.e. half of sl(2)
    o.check(
        bracket(1, 0) == vec![rat(1, 1), rat(0, 1), rat(0, 1)],
        "[h,e]",
    );
    o.check(
        bracket(1, 2) == vec![rat(0, 1), rat(0, 1), rat(-1, 1)],
        "[h,f]",
    );
    o.check(
        bracket(0, 2) == vec![rat(0, 1), rat(1, 2), rat(0, 1)],
        "[e,f]",
    );
    for n in [2, 3] {
        let s = braiding_at(n, &one);
        let flip_ok = (0..n * n).all(|c| {
            (0..n * n).all(|r| {
                s[r][c]
                    == if r == (c % n) * n + c / n {
                        one.clone()
                    } else {
                        rat(0, 1)
                    }
            })
        });
        o.check(flip_ok, format!("S at q = 1 is the flip, n = {n}"));
    }
    let a2 = realg::re_relations(2).unwrap();
    let dims = hilbert::graded_dims_at(&a2, &one, 4).unwrap();
    o.check(
        dims == (0..=4).map(|d| sym(4, d)).collect::<Vec<_>>(),
        "q = 1 graded dims n = 2",
    );
}

const ORACLES: [fn(&mut Oracle); 12] = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12];

fn main() {
    let mut failed = 0;
    for id in 1..=12u32 {
        let lib = selftest::run(id);
        let start = Instant::now();
        let mut o = Oracle(Vec::new());
        ORACLES[id as usize - 1](&mut o);
        let oracle_time = start.elapsed();
        let pass = lib.pass && o.0.is_empty();
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {} {:<34} check {:>9.3?} (limit {:?}), oracles {:>9.3?}",
            if pass { "PASS" } else { "FAIL" },
            lib.title,
            lib.elapsed,
            lib.limit,
            oracle_time,
        );
        for f in lib.failures.iter().chain(&o.0) {
            println!("    {f}");
        }
        if !lib.within_time_limit {
            println!("    time limit exceeded");
        }
    }
    println!("acceptance: {} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
