use serde_json::{json, Value};

use qlie_core::brmod::{self, Outcome, RepInput};
use qlie_core::realg::{self, QuadRelation};
use qlie_core::strategy::{rank_of, saturating_pow};
use qlie_core::{braided, hilbert, rat, selftest, Error, Limits, QScalar, Strategy};

use crate::report::{object, Report, Status};
use crate::Command;

enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<qlie_core::QError> for Failure {
    fn from(e: qlie_core::QError) -> Self {
        Failure::Core(e.into())
    }
}

type Run = Result<(Value, bool), Failure>;

pub fn run(cmd: &Command) -> Report {
    let inputs = inputs_of(cmd);
    let outcome = Limits::from_env()
        .map_err(Failure::from)
        .and_then(|limits| dispatch(cmd, &limits));
    let text = match (&outcome, cmd) {
        (Ok((results, _)), Command::Selftest) => Some(selftest_text(results)),
        _ => None,
    };
    let (results, status, error_code) = match outcome {
        Ok((results, true)) => (results, Status::Pass, 0),
        Ok((results, false)) => (results, Status::Fail, 1),
        Err(f) => {
            let (kind, message, code) = describe(f);
            (
                json!({ "error": message, "kind": kind }),
                Status::Error,
                code,
            )
        }
    };
    Report {
        command: cmd.name().into(),
        inputs,
        results,
        status,
        error_code,
        text,
    }
}

fn selftest_text(results: &Value) -> String {
    let mut out = String::new();
    for c in results["criteria"].as_array().into_iter().flatten() {
        let mark = if c["pass"] == json!(true) {
            "pass"
        } else {
            "FAIL"
        };
        out.push_str(&format!(
            "[{mark}] {:>2}. {}\n",
            c["id"].as_u64().unwrap_or(0),
            c["title"].as_str().unwrap_or("")
        ));
        for f in c["failures"].as_array().into_iter().flatten() {
            out.push_str(&format!("        {}\n", f.as_str().unwrap_or("")));
        }
        if c["within_time_limit"] == json!(false) {
            out.push_str("        time limit exceeded\n");
        }
    }
    out
}

fn describe(f: Failure) -> (&'static str, String, u8) {
    match f {
        Failure::Input(m) => ("input", m, 2),
        Failure::Core(e) => {
            let (kind, code) = match &e {
                Error::Resource { .. } => ("resource", 2),
                Error::Unsupported(_) => ("unsupported", 2),
                Error::InvalidModule(_) => ("input", 2),
                Error::Scalar(qlie_core::QError::Parse(_)) => ("input", 2),
                _ => ("computation", 1),
            };
            (kind, e.to_string(), code)
        }
    }
}

fn inputs_of(cmd: &Command) -> Value {
    match cmd {
        Command::BracketTable { m } | Command::SolveTau { m } => json!({ "M": m }),
        Command::VerifyJacobi { tau } => json!({ "tau": tau }),
        Command::AlmostRep { input } => json!({ "input": input.display().to_string() }),
        Command::TruncatedPower { k } => json!({ "k": k }),
        Command::ReRelations { n } | Command::TraceDecomp { n } => json!({ "n": n }),
        Command::ReShift { n, h } => json!({ "n": n, "h": h }),
        Command::ReJacobi { n, symbolic } => json!({ "n": n, "symbolic": symbolic }),
        Command::Hilbert {
            n,
            dmax,
            symbolic,
            filtered,
            h,
        } => {
            let mut v = json!({ "n": n, "dmax": dmax, "symbolic": symbolic, "filtered": filtered });
            if *filtered {
                v["h"] = json!(h);
            }
            v
        }
        Command::Selftest => json!({}),
    }
}

fn dispatch(cmd: &Command, limits: &Limits) -> Run {
    match cmd {
        Command::BracketTable { m } => bracket_table(m),
        Command::SolveTau { m } => solve_tau(m),
        Command::VerifyJacobi { tau } => verify_jacobi(tau.as_ref()),
        Command::AlmostRep { input } => almost_rep(input),
        Command::TruncatedPower { k } => truncated_power(*k, limits),
        Command::ReRelations { n } => re_relations(*n, limits),
        Command::ReShift { n, h } => re_shift(*n, h, limits),
        Command::ReJacobi { n, symbolic } => re_jacobi(*n, *symbolic, limits),
        Command::Hilbert {
            n,
            dmax,
            symbolic,
            filtered,
            h,
        } => hilbert_dims(*n, *dmax, *symbolic, filtered.then_some(h), limits),
        Command::TraceDecomp { n } => trace_decomp(*n),
        Command::Selftest => Ok(self_test()),
    }
}

/// `c_0 u + c_1 v + c_2 w` with unit coefficients suppressed.
fn render_combination(coeffs: &[QScalar], names: &[String]) -> String {
    let mut terms = Vec::new();
    for (c, name) in coeffs.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let term = if c.is_one() {
            name.clone()
        } else if (-c.clone()).is_one() {
            format!("-{name}")
        } else if s.contains(' ') || s.contains('/') {
            format!("({s})*{name}")
        } else {
            format!("{s}*{name}")
        };
        terms.push(term);
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = terms[0].clone();
    for t in &terms[1..] {
        match t.strip_prefix('-') {
            Some(rest) => out.push_str(&format!(" - {rest}")),
            None => out.push_str(&format!(" + {t}")),
        }
    }
    out
}

fn adjoint_names() -> Vec<String> {
    braided::BASIS_NAMES.iter().map(|s| s.to_string()).collect()
}

fn nonzero_scale(m: &QScalar) -> Result<(), Failure> {
    if m.is_zero() {
        return Err(Failure::Input("--M must be nonzero".into()));
    }
    Ok(())
}

fn bracket_table(m: &QScalar) -> Run {
    nonzero_scale(m)?;
    let b = braided::build_bracket(m)?;
    let names = adjoint_names();
    let table = object(
        b.entries()
            .into_iter()
            .map(|(k, v)| (k, json!(render_combination(&v, &names)))),
    );
    let defects = braided::bracket_defects(&b)?;
    let pass = defects.is_empty();
    Ok((json!({ "table": table, "defects": defects }), pass))
}

fn solve_tau(m: &QScalar) -> Run {
    nonzero_scale(m)?;
    let tau = braided::solve_tau_with_scale(m)?;
    let closed = braided::tau_closed_form();
    let pass = tau == closed;
    Ok((
        json!({ "tau": tau, "closed_form": closed, "matches_closed_form": pass }),
        pass,
    ))
}

fn verify_jacobi(tau: Option<&QScalar>) -> Run {
    let b = braided::build_bracket(&QScalar::one())?;
    let tau = match tau {
        Some(t) => t.clone(),
        None => braided::solve_tau()?,
    };
    let r = braided::verify_truncated_jacobi(&b, &tau)?;
    let failures: Vec<Value> = r
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| json!({ "relation": c.relation, "z": c.z }))
        .collect();
    Ok((
        json!({ "tau": tau, "checked": r.checks.len(), "failures": failures, "all_pass": r.all_pass }),
        r.all_pass,
    ))
}

fn almost_rep(path: &std::path::Path) -> Run {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let input: RepInput = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("invalid input JSON: {e}")))?;
    let rho = brmod::rho_from_input(&input)?;
    let b = braided::build_bracket(&QScalar::one())?;
    match brmod::check_almost_rep(rho, &input.module, &b)? {
        Outcome::Valid(rep) => Ok((
            json!({
                "valid": true,
                "h_measured": rep.h_measured,
                "rho": { "u": rep.rho_u.to_rows(), "v": rep.rho_v.to_rows(), "w": rep.rho_w.to_rows() },
                "violations": [],
            }),
            true,
        )),
        Outcome::Invalid(v) => Ok((
            json!({
                "valid": false,
                "violations": v.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }),
            false,
        )),
    }
}

fn truncated_power(k: u32, limits: &Limits) -> Run {
    let t = brmod::truncated_power_with(k, limits)?;
    let closed = brmod::h_k_closed_form(k)?;
    let factor = brmod::rescaling_factor(k)?;
    let h1 = brmod::h_k_closed_form(1)?;
    let diag = t.rho_v_diagonal();
    let rescaled = brmod::rescale_to_rep(&t.rep, &h1)?;
    let checks = object([
        ("h_matches_closed_form", json!(t.rep.h_measured == closed)),
        (
            "factor_times_h_k_is_h_1",
            json!(factor.clone() * &closed == h1),
        ),
        ("rescaled_h_is_h_1", json!(rescaled.rep.h_measured == h1)),
        (
            "factor_at_q_1_is_k",
            json!(factor.eval_at(&rat(1, 1))? == rat(k as i64, 1)),
        ),
        ("v_1_is_q_inverse", json!(diag[0] == QScalar::q_pow(-1))),
        (
            "v_2_matches_closed_form",
            json!(diag[1] == brmod::v2_closed_form(k)?),
        ),
        ("matrix_shapes", json!(t.shape_ok())),
        (
            "projector_kills_q_ab_minus_ba",
            json!(t.projector_kills_singlets()),
        ),
    ]);
    let pass = checks
        .as_object()
        .unwrap()
        .values()
        .all(|v| v == &json!(true));
    Ok((
        object([
            ("h_measured", json!(t.rep.h_measured)),
            ("h_closed_form", json!(closed)),
            ("rescaling_factor", json!(factor)),
            ("rho_v_diagonal", json!(diag)),
            ("checks", checks),
        ]),
        pass,
    ))
}

fn check_re_size(n: usize, power: usize, limits: &Limits) -> Result<(), Failure> {
    if n < 2 {
        return Err(Error::Unsupported(format!("n must be at least 2, got {n}")).into());
    }
    limits.check(
        &format!("tensor space dimension {n}^{power}"),
        saturating_pow(n, power),
        limits.max_dim,
    )?;
    Ok(())
}

fn re_relations(n: usize, limits: &Limits) -> Run {
    check_re_size(n, 4, limits)?;
    let strategy = realg::default_strategy(n);
    let b = realg::standard_braiding(n)?;
    let a = realg::re_relations(n)?;
    let minus = realg::relation_rank(&a, &strategy)?;
    let plus_span = realg::re_plus(n)?;
    let plus = rank_of(&plus_span, n.pow(4), &strategy)?;
    let mut both = plus_span;
    both.extend(a.quadratic_parts());
    let total = rank_of(&both, n.pow(4), &strategy)?;
    let braid = b.braid_relation_holds();
    let hecke = b.hecke_holds();
    let g = n * n;
    let pass = braid && hecke && total.rank == n.pow(4);
    Ok((
        object([
            ("braid_relation", json!(braid)),
            ("hecke_condition", json!(hecke)),
            ("spanning_relations", json!(a.relations.len())),
            ("rank_minus", json!(minus.rank)),
            ("rank_plus", json!(plus.rank)),
            ("rank_sum", json!(total.rank)),
            ("classical_minus", json!(g * (g - 1) / 2)),
            ("classical_plus", json!(g * (g + 1) / 2)),
            ("strategy", json!(minus.strategy)),
        ]),
        pass,
    ))
}

fn generator_names(n: usize) -> Vec<String> {
    (0..n * n)
        .map(|k| format!("l{}{}", k / n + 1, k % n + 1))
        .collect()
}

fn render_relation(r: &QuadRelation<QScalar>, n: usize) -> String {
    let names = generator_names(n);
    let pairs: Vec<String> = names
        .iter()
        .flat_map(|a| names.iter().map(move |b| format!("{a}*{b}")))
        .collect();
    let mut coeffs = r.quadratic.clone();
    coeffs.extend(r.linear.iter().cloned());
    let mut all_names = pairs;
    all_names.extend(names);
    render_combination(&coeffs, &all_names)
}

fn re_shift(n: usize, h: &QScalar, limits: &Limits) -> Run {
    check_re_size(n, 4, limits)?;
    let strategy = realg::default_strategy(n);
    let shifted = realg::shifted_algebra(n, h)?;
    let graded = realg::re_relations(n)?;
    let rank_shifted = rank_of(&shifted.quadratic_parts(), n.pow(4), &strategy)?;
    let rank_graded = rank_of(&graded.quadratic_parts(), n.pow(4), &strategy)?;
    let mut both = shifted.quadratic_parts();
    both.extend(graded.quadratic_parts());
    let rank_union = rank_of(&both, n.pow(4), &strategy)?;
    let same_symbol = rank_shifted.rank == rank_graded.rank && rank_union.rank == rank_graded.rank;
    let relations: Vec<String> = shifted
        .relations
        .iter()
        .map(|r| render_relation(r, n))
        .collect();
    Ok((
        object([
            ("routes_agree", json!(true)),
            ("constant_terms_cancel", json!(true)),
            ("quadratic_span_unchanged", json!(same_symbol)),
            ("rank_minus", json!(rank_graded.rank)),
            ("strategy", json!(rank_graded.strategy)),
            ("relations", json!(relations)),
        ]),
        same_symbol,
    ))
}

fn re_jacobi(n: usize, symbolic: bool, limits: &Limits) -> Run {
    check_re_size(n, 6, limits)?;
    let strategy = if symbolic {
        Strategy::Symbolic
    } else {
        realg::default_strategy(n)
    };
    let r = realg::verify_generalized_jacobi(n, &strategy)?;
    let shift_ok = realg::shifted_algebra(n, &QScalar::one()).is_ok();
    let g = n * n;
    let classical_t = g * (g - 1) * (g - 2) / 6;
    let pass = r.outcome.image_in_relations && r.outcome.bracket_of_image_vanishes && shift_ok;
    Ok((
        object([
            ("dim_t", json!(r.outcome.dim_t)),
            ("classical_dim_t", json!(classical_t)),
            ("rank_minus", json!(r.outcome.rank_minus)),
            ("bracket_well_defined", json!(true)),
            ("image_in_relations", json!(r.outcome.image_in_relations)),
            (
                "bracket_of_image_vanishes",
                json!(r.outcome.bracket_of_image_vanishes),
            ),
            ("shift_routes_agree", json!(shift_ok)),
            ("strategy", json!(r.strategy)),
        ]),
        pass,
    ))
}

fn hilbert_dims(
    n: usize,
    dmax: usize,
    symbolic: bool,
    shift: Option<&QScalar>,
    limits: &Limits,
) -> Run {
    let strategy = symbolic.then_some(Strategy::Symbolic);
    let report = match shift {
        None => hilbert::flatness_report(n, dmax, strategy, limits)?,
        Some(h) => {
            if n < 2 {
                return Err(Error::Unsupported(format!("n must be at least 2, got {n}")).into());
            }
            limits.check(
                &format!("tensor space dimension {}^{dmax}", n * n),
                saturating_pow(n * n, dmax),
                limits.max_dim,
            )?;
            let strategy = strategy.unwrap_or_else(|| {
                if n <= 2 {
                    hilbert::auto_strategy(n * n, dmax)
                } else {
                    Strategy::dual()
                }
            });
            let a = realg::shifted_algebra(n, h)?;
            hilbert::filtered_dims(&a, dmax, &strategy, limits)?
        }
    };
    let pass = report.is_flat()
        && report
            .graded_cumulative
            .as_ref()
            .map_or(true, |g| g == &report.algebra_dims);
    Ok((
        serde_json::to_value(&report).expect("report serializes"),
        pass,
    ))
}

fn trace_decomp(n: usize) -> Run {
    let t = realg::trace_decomposition(n)?;
    let mut dims = t.dims.clone();
    dims.sort_unstable();
    let pass = dims == [1, n * n - 1] && t.identity_spans_trivial && t.adjoint_morphisms == 1;
    Ok((serde_json::to_value(&t).expect("report serializes"), pass))
}

fn self_test() -> (Value, bool) {
    let criteria = selftest::run_all();
    let pass = criteria.iter().all(|c| c.pass);
    (json!({ "criteria": criteria }), pass)
}
