//! Report generation: every CLI subcommand produces a versioned JSON
//! document plus a human summary and an overall pass/fail verdict.
//! Given the same config and seed the JSON output is byte-identical.

use num::ToPrimitive;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::braid;
use crate::config::{QInput, RunConfig};
use crate::error::{Error, Result};
use crate::lalg::{self, Variant};
use crate::links::{self, BraidWord, EnhancedOperator};
use crate::matrix::Mat;
use crate::ncspace::{self, LambdaBranch};
use crate::scalar::{LambdaExt, LaurentPoly};
use crate::triangularity::{self, RootKind};

type C = Complex64;

/// The result of one subcommand run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub json: Value,
    pub human: String,
    pub ok: bool,
}

/// Dispatch on `config.command`.
pub fn run(cfg: &RunConfig) -> Result<RunOutcome> {
    match cfg.command.as_deref() {
        Some("gen") => run_gen(cfg),
        Some("verify") => run_verify(cfg),
        Some("triangular") => run_triangular(cfg),
        Some("lalg") => run_lalg(cfg),
        Some("invariant") => run_invariant(cfg),
        Some("tower") => run_tower(cfg),
        Some("spectrum") => run_spectrum(cfg),
        other => Err(Error::InvalidInput(format!(
            "unknown or missing command {:?}",
            other
        ))),
    }
}

// ---------------------------------------------------------------------------
// Scalar and matrix serialization
// ---------------------------------------------------------------------------

fn bigint_json(v: &num::BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

/// `{ s-exponent: [numerator, denominator] }`.
pub fn laurent_json(p: &LaurentPoly) -> Value {
    let mut map = Map::new();
    for (e, c) in p.terms() {
        map.insert(
            e.to_string(),
            json!([bigint_json(c.numer()), bigint_json(c.denom())]),
        );
    }
    Value::Object(map)
}

/// `{ "a": ..., "b": ... }`.
pub fn lambda_json(x: &LambdaExt) -> Value {
    json!({ "a": laurent_json(x.scalar_part()), "b": laurent_json(x.lambda_part()) })
}

fn bigint_from_json(v: &Value) -> Result<num::BigInt> {
    if let Some(x) = v.as_i64() {
        return Ok(num::BigInt::from(x));
    }
    if let Some(text) = v.as_str() {
        return text
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad integer {:?}", text)));
    }
    Err(Error::InvalidInput(format!("expected integer, got {}", v)))
}

/// Parse the `{ s-exponent: [numerator, denominator] }` encoding back
/// into a Laurent polynomial.
pub fn laurent_from_json(v: &Value) -> Result<LaurentPoly> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::InvalidInput("expected a coefficient map".into()))?;
    let mut poly = LaurentPoly::zero();
    for (key, val) in obj {
        let exp: i64 = key
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad exponent {:?}", key)))?;
        let pair = val
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::InvalidInput("coefficient must be [num, den]".into()))?;
        let num = bigint_from_json(&pair[0])?;
        let den = bigint_from_json(&pair[1])?;
        if den == num::BigInt::from(0) {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        poly = &poly + &LaurentPoly::monomial(exp, num::BigRational::new(num, den));
    }
    Ok(poly)
}

/// Parse a `braidq.matrix/1` dump with the `laurent` backend.
pub fn laurent_mat_from_json(v: &Value) -> Result<Mat<LaurentPoly>> {
    if v["schema"] != json!("braidq.matrix/1") || v["backend"] != json!("laurent") {
        return Err(Error::InvalidInput("not a laurent matrix dump".into()));
    }
    let entries = v["entries"]
        .as_array()
        .ok_or_else(|| Error::InvalidInput("missing entries".into()))?;
    let dim = entries.len();
    let mut out = Mat::zeros(dim, dim, &LaurentPoly::zero());
    for (i, row) in entries.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == dim)
            .ok_or_else(|| Error::InvalidInput("ragged entries".into()))?;
        for (j, cell) in row.iter().enumerate() {
            out[(i, j)] = laurent_from_json(cell)?;
        }
    }
    Ok(out)
}

pub fn complex_json(z: C) -> Value {
    json!([z.re, z.im])
}

fn dump_mat<T: crate::scalar::Scalar>(
    m: &Mat<T>,
    backend: &str,
    entry: impl Fn(&T) -> Value,
) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| entry(&m[(i, j)])).collect()))
        .collect();
    json!({
        "schema": "braidq.matrix/1",
        "dim": m.rows(),
        "backend": backend,
        "entries": entries,
    })
}

pub fn dump_laurent_mat(m: &Mat<LaurentPoly>) -> Value {
    dump_mat(m, "laurent", laurent_json)
}

pub fn dump_lambda_mat(m: &Mat<LambdaExt>) -> Value {
    dump_mat(m, "lambda", lambda_json)
}

pub fn dump_complex_mat(m: &Mat<C>) -> Value {
    dump_mat(m, "complex", |z| complex_json(*z))
}

fn fmt_c(z: C) -> String {
    if z.im.abs() < 1e-12 {
        format!("{:.10}", z.re)
    } else {
        format!("{:.10}{:+.10}i", z.re, z.im)
    }
}

// ---------------------------------------------------------------------------
// A small check list shared by verify-style reports
// ---------------------------------------------------------------------------

struct Checks {
    tol: f64,
    rows: Vec<Value>,
    lines: Vec<String>,
    ok: bool,
}

impl Checks {
    fn new(tol: f64) -> Self {
        Checks {
            tol,
            rows: Vec::new(),
            lines: Vec::new(),
            ok: true,
        }
    }

    fn exact(&mut self, name: &str, passed: bool) {
        self.rows
            .push(json!({ "name": name, "kind": "exact", "passed": passed }));
        self.lines.push(format!(
            "{} {} (exact)",
            if passed { "PASS" } else { "FAIL" },
            name
        ));
        self.ok &= passed;
    }

    fn residual(&mut self, name: &str, value: f64) {
        self.residual_with_tol(name, value, self.tol);
    }

    fn residual_with_tol(&mut self, name: &str, value: f64, tol: f64) {
        let passed = value <= tol;
        self.rows.push(json!({
            "name": name, "kind": "residual", "passed": passed,
            "residual": value, "tolerance": tol,
        }));
        self.lines.push(format!(
            "{} {} (residual {:.3e}, tol {:.1e})",
            if passed { "PASS" } else { "FAIL" },
            name,
            value,
            tol
        ));
        self.ok &= passed;
    }

    fn flag(&mut self, name: &str, passed: bool) {
        self.exact(name, passed);
    }
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

fn run_gen(cfg: &RunConfig) -> Result<RunOutcome> {
    let spec = cfg.spec()?;
    let which = cfg.matrix.as_deref().unwrap_or("p0prime");
    let q = cfg.q_input()?;
    let (dump, label) = match (which, q) {
        ("p0prime", QInput::Symbolic) => (
            dump_laurent_mat(&braid::projector_p0prime(&spec)),
            "P0'".to_string(),
        ),
        ("p0prime", QInput::Numeric(q0)) => (
            dump_complex_mat(&braid::projector_p0prime_at(&spec, q0)?),
            format!("P0' at q = {}", fmt_c(q0)),
        ),
        ("rhat", QInput::Symbolic) => (
            dump_lambda_mat(&braid::braid_matrix(&spec, 1).mat),
            "R (lambda ring)".to_string(),
        ),
        ("rhatinv", QInput::Symbolic) => (
            dump_lambda_mat(&braid::braid_matrix(&spec, -1).mat),
            "R^{-1} (lambda ring)".to_string(),
        ),
        ("rhat", QInput::Numeric(q0)) => (
            dump_complex_mat(&braid::braid_matrix_at(&spec, 1, q0)?.mat),
            format!("R at q = {}", fmt_c(q0)),
        ),
        ("rhatinv", QInput::Numeric(q0)) => (
            dump_complex_mat(&braid::braid_matrix_at(&spec, -1, q0)?.mat),
            format!("R^{{-1}} at q = {}", fmt_c(q0)),
        ),
        ("baxterized", QInput::Numeric(q0)) => {
            let theta = cfg.theta.unwrap_or(0.5);
            (
                dump_complex_mat(
                    &braid::baxterized(&spec, theta, q0, cfg.allow_complex_eta())?.mat,
                ),
                format!("R(theta = {}) at q = {}", theta, fmt_c(q0)),
            )
        }
        ("baxterized", QInput::Symbolic) => {
            return Err(Error::InvalidInput("baxterized needs a numeric q".into()))
        }
        ("permutation", _) => (
            dump_laurent_mat(&braid::permutation_p(spec.dim(), &LaurentPoly::one())),
            "P (flip)".to_string(),
        ),
        (other, _) => return Err(Error::InvalidInput(format!("unknown matrix {:?}", other))),
    };
    let json = json!({
        "schema": "braidq.gen/1",
        "family": spec.family().name(),
        "dim": spec.dim(),
        "matrix": which,
        "dump": dump,
    });
    let human = format!(
        "{} for {} ({} x {})",
        label,
        spec,
        spec.dim() * spec.dim(),
        spec.dim() * spec.dim()
    );
    Ok(RunOutcome {
        json,
        human,
        ok: true,
    })
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn run_verify(cfg: &RunConfig) -> Result<RunOutcome> {
    let spec = cfg.spec()?;
    let tol = cfg.tolerance();
    let mut checks = Checks::new(tol);
    match cfg.q_input()? {
        QInput::Symbolic => {
            let rp = braid::braid_matrix(&spec, 1);
            let rm = braid::braid_matrix(&spec, -1);
            checks.exact(
                "braid equation (R)",
                braid::check_braid_equation_exact(&rp)?,
            );
            checks.exact(
                "braid equation (R^{-1})",
                braid::check_braid_equation_exact(&rm)?,
            );
            checks.exact(
                "Hecke relation (R - I)(R + lambda^2 I) = 0",
                braid::check_hecke_exact(&spec),
            );
            checks.exact(
                "projector square P0'^2 = T P0'",
                braid::check_projector_square(&spec),
            );
            checks.exact("rank(P0') = 1", braid::check_rank_one(&spec));
            let eye = Mat::identity(spec.dim() * spec.dim(), &spec.ext_one());
            checks.exact("R R^{-1} = I", rp.mat.mul(&rm.mat) == eye);
            let lp = lalg::fundamental(&spec, Variant::Plus);
            let lm = lalg::fundamental(&spec, Variant::Minus);
            checks.exact("RLL same sign (L^+)", lalg::rll_same_sign_exact(&spec, &lp));
            checks.exact("RLL same sign (L^-)", lalg::rll_same_sign_exact(&spec, &lm));
            checks.exact("RLL mixed", lalg::rll_mixed_exact(&spec, &lp, &lm));
            checks.exact(
                "inverse relation L^{+-}(PL^{-+}P) = I",
                lalg::check_inverse_relation(&spec, &lp, &lm),
            );
            let qp = lalg::ext_qpow(&spec);
            checks.exact(
                "S1 and S2 sets vanish",
                lalg::s1_s2_members(&spec, &lp, &qp)
                    .iter()
                    .all(|m| m.is_zero()),
            );
            let central = lalg::central_elements(&spec, &lp, &qp);
            checks.exact("S3 members all equal", central.all_equal());
            checks.exact(
                "S3 member = lambda I",
                central.scalar_value() == Some(spec.ext_lambda()),
            );
            checks.exact("S3 members central", central.commutes_with_all_blocks(&lp));
            checks.exact(
                "enhanced operator relations",
                EnhancedOperator::new(&spec).check_exact(),
            );
            checks.exact(
                "tower map commutes with P0'",
                ncspace::check_tower_map_exact(&spec, LambdaBranch::Plus)
                    && ncspace::check_tower_map_exact(&spec, LambdaBranch::Minus),
            );
        }
        QInput::Numeric(q0) => {
            let rp = braid::braid_matrix_at(&spec, 1, q0)?;
            let rm = braid::braid_matrix_at(&spec, -1, q0)?;
            checks.residual(
                "braid equation (R)",
                braid::check_braid_equation_numeric(&rp)?,
            );
            let eye = Mat::identity(spec.dim() * spec.dim(), &C::new(0.0, 0.0));
            checks.residual("R R^{-1} = I", rp.mat.mul(&rm.mat).max_diff(&eye));
            let e = EnhancedOperator::new(&spec).at(q0, cfg.allow_complex_eta())?;
            let eyb = e.check();
            checks.residual("enhanced commutation", eyb.commute);
            checks.residual("enhanced partial trace", eyb.partial_trace);
            let delta = lalg::fundamental(&spec, Variant::Plus)
                .coproduct()
                .eval_at(&spec, q0.sqrt())?;
            checks.residual(
                "coproduct RLL",
                lalg::rll_same_sign_residual(&spec, &delta, q0)?,
            );
        }
    }
    let json = json!({
        "schema": "braidq.verify/1",
        "family": spec.family().name(),
        "dim": spec.dim(),
        "q": cfg.q.clone().unwrap_or_else(|| "symbolic".into()),
        "checks": checks.rows,
        "ok": checks.ok,
    });
    let human = format!("verify {}\n{}", spec, checks.lines.join("\n"));
    Ok(RunOutcome {
        json,
        human,
        ok: checks.ok,
    })
}

// ---------------------------------------------------------------------------
// triangular
// ---------------------------------------------------------------------------

fn run_triangular(cfg: &RunConfig) -> Result<RunOutcome> {
    let spec = cfg.spec()?;
    let tol = cfg.tolerance();
    let problem = triangularity::build_problem(&spec);
    let report = triangularity::solve_roots(&problem)?;
    let mut ok = problem.reduction_is_exact() && report.companion_gap < 1e-6;
    let mut roots_json = Vec::new();
    let mut lines = Vec::new();
    for root in &report.roots {
        let (rsq, braid_res) = triangularity::verify_triangular(&spec, root.value)?;
        ok &= root.residual < tol && rsq < tol && braid_res < tol;
        let (kind, order) = match root.kind {
            RootKind::RootOfUnity(k) => ("root_of_unity", Some(k)),
            RootKind::UnitModulus => ("unit_modulus", None),
            RootKind::OffCircle => ("off_circle", None),
        };
        roots_json.push(json!({
            "q": complex_json(root.value),
            "kind": kind,
            "order": order,
            "raw_residual": root.residual,
            "r_squared_residual": rsq,
            "braid_residual": braid_res,
        }));
        lines.push(format!(
            "  q = {}  {}  |T(q)-2| = {:.2e}  |R^2-I| = {:.2e}",
            fmt_c(root.value),
            root.kind,
            root.residual,
            rsq
        ));
    }
    let json = json!({
        "schema": "braidq.triangular/1",
        "family": spec.family().name(),
        "dim": spec.dim(),
        "variable": problem.case.variable(),
        "polynomial": problem.reduced.display_with(problem.case.variable()),
        "target": problem.target,
        "reduction_exact": problem.reduction_is_exact(),
        "reduced_roots": report.reduced_roots.iter().map(|z| complex_json(*z)).collect::<Vec<_>>(),
        "companion_gap": report.companion_gap,
        "roots": roots_json,
        "ok": ok,
    });
    let human = format!(
        "triangularity of {}: {} = {} in {}\n{}",
        spec,
        problem.reduced.display_with(problem.case.variable()),
        problem.target,
        problem.case.variable(),
        lines.join("\n")
    );
    Ok(RunOutcome { json, human, ok })
}

// ---------------------------------------------------------------------------
// lalg
// ---------------------------------------------------------------------------

fn run_lalg(cfg: &RunConfig) -> Result<RunOutcome> {
    let spec = cfg.spec()?;
    let tol = cfg.tolerance();
    let mut checks = Checks::new(tol);
    let which = cfg.check.as_deref().unwrap_or("rll");
    let lp = lalg::fundamental(&spec, Variant::Plus);
    let lm = lalg::fundamental(&spec, Variant::Minus);
    match which {
        "rll" => {
            checks.exact("RLL same sign (L^+)", lalg::rll_same_sign_exact(&spec, &lp));
            checks.exact("RLL same sign (L^-)", lalg::rll_same_sign_exact(&spec, &lm));
            checks.exact("RLL mixed", lalg::rll_mixed_exact(&spec, &lp, &lm));
            if let QInput::Numeric(q0) = cfg.q_input()? {
                let lnum = lp.eval_at(&spec, q0.sqrt())?;
                checks.residual(
                    "RLL numeric",
                    lalg::rll_same_sign_residual(&spec, &lnum, q0)?,
                );
                let theta = cfg.theta.unwrap_or(0.4);
                let theta2 = cfg.theta2.unwrap_or(-0.3);
                checks.residual(
                    "spectral RLL",
                    lalg::rll_spectral_residual(&spec, theta, theta2, q0, cfg.allow_complex_eta())?,
                );
            }
        }
        "central" => {
            let qp = lalg::ext_qpow(&spec);
            let central = lalg::central_elements(&spec, &lp, &qp);
            checks.exact("S3 members all equal", central.all_equal());
            checks.exact(
                "S3 member = lambda I",
                central.scalar_value() == Some(spec.ext_lambda()),
            );
            checks.exact("S3 central", central.commutes_with_all_blocks(&lp));
            checks.exact(
                "S1/S2 vanish",
                lalg::s1_s2_members(&spec, &lp, &qp)
                    .iter()
                    .all(|m| m.is_zero()),
            );
            let eye = Mat::identity(spec.dim(), &spec.ext_one());
            checks.exact(
                "sum L_ii = (1 + lambda) I",
                lp.sum_lii() == eye.scale(&(&spec.ext_one() + &spec.ext_lambda())),
            );
            if spec.dim() == 3 {
                checks.exact(
                    "mixed S3 instance",
                    lalg::check_mixed_s3_instance(&spec, &lp, &lm),
                );
                checks.exact(
                    "mixed S1 instance",
                    lalg::check_mixed_s1_instance(&spec, &lp, &lm),
                );
            }
            let (a, b) = lalg::decompose_ab(&spec, &lp, &lm)?;
            checks.exact(
                "A/B reduced-sector commute",
                lalg::check_ab_reduced_commute(&spec, &a, &b),
            );
        }
        "coproduct" => {
            let delta = lp.coproduct();
            let qp = lalg::ext_qpow(&spec);
            checks.exact(
                "f-symmetry of coproduct blocks",
                lalg::check_coproduct_f_symmetry(&spec, &delta),
            );
            let central = lalg::central_elements(&spec, &delta, &qp);
            checks.exact("coproduct S3 all equal", central.all_equal());
            let lam2 = &spec.ext_lambda() * &spec.ext_lambda();
            checks.exact(
                "coproduct S3 = lambda^2 I",
                central.scalar_value() == Some(lam2),
            );
            let fund = Mat::identity(spec.dim(), &spec.ext_one()).scale(&spec.ext_lambda());
            checks.exact(
                "group-like: Delta(member) = member (x) member",
                central.members[0] == fund.kron(&fund),
            );
            for q0 in [C::new(1.0, 0.0), C::new(2.0, 0.0)] {
                let dnum = delta.eval_at(&spec, q0.sqrt())?;
                let qpn = lalg::num_qpow(q0.sqrt());
                let rep = lalg::central_elements(&spec, &dnum, &qpn);
                let lam = spec.lambda_roots_at(q0)?.plus;
                checks.residual(
                    &format!("coproduct S3 = lambda^2 I at q = {}", q0.re),
                    rep.equality_residual().max(rep.scalar_residual(lam * lam)),
                );
            }
        }
        "conjugate" => {
            let q0 = match cfg.q_input()? {
                QInput::Numeric(z) if z.im.abs() < 1e-12 && z.re > 0.0 => z.re,
                QInput::Symbolic => 1.0,
                _ => {
                    return Err(Error::InvalidInput(
                        "the conjugation analysis needs real positive q".into(),
                    ))
                }
            };
            let rep = lalg::conjugate_sum_lii(&spec, q0)?;
            checks.residual_with_tol("conjugator orthogonality", rep.orthogonality, 1e-10);
            checks.residual("sum of Delta L_ii diagonalized", rep.sum_diagonal);
            checks.residual("block diagonal leakage", rep.block_leakage);
            checks.residual("tabulated blocks reproduced", rep.tabulated_blocks);
            checks.residual_with_tol("nilpotency of alpha/beta blocks", rep.nilpotency, 1e-12);
            checks.flag(
                "off-diagonal blocks live outside supports",
                rep.offdiag_outside_blocks,
            );
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown lalg check {:?}",
                other
            )))
        }
    }
    let json = json!({
        "schema": "braidq.lalg/1",
        "family": spec.family().name(),
        "dim": spec.dim(),
        "check": which,
        "checks": checks.rows,
        "ok": checks.ok,
    });
    let human = format!("lalg {} ({})\n{}", which, spec, checks.lines.join("\n"));
    Ok(RunOutcome {
        json,
        human,
        ok: checks.ok,
    })
}

// ---------------------------------------------------------------------------
// invariant
// ---------------------------------------------------------------------------

fn random_word(rng: &mut ChaCha8Rng, strands: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands) as i32;
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(strands, letters).expect("generated letters are in range")
}

/// Seeded random skein triples: max residual over `trials`.
pub fn random_skein_residual(
    e: &links::EnhancedNumeric,
    seed: u64,
    trials: usize,
    cap: usize,
) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let strands = rng.gen_range(2..=3);
        let u = random_word(&mut rng, strands, 3);
        let v = random_word(&mut rng, strands, 2);
        let g = rng.gen_range(1..strands) as i32;
        let mid_plus = BraidWord::new(strands, vec![g]).unwrap();
        let mid_minus = BraidWord::new(strands, vec![-g]).unwrap();
        let plus = u.concat(&mid_plus)?.concat(&v)?;
        let minus = u.concat(&mid_minus)?.concat(&v)?;
        let zero = u.concat(&v)?;
        worst = worst.max(links::check_skein(e, &plus, &minus, &zero, cap)?);
    }
    Ok(worst)
}

/// Seeded random Markov moves: worst (conjugation, stabilization)
/// residuals over `trials`.
pub fn random_markov_residuals(
    e: &links::EnhancedNumeric,
    seed: u64,
    trials: usize,
    cap: usize,
) -> Result<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_conj = 0.0f64;
    let mut worst_stab = 0.0f64;
    for _ in 0..trials {
        let strands = rng.gen_range(2..=3);
        let beta = random_word(&mut rng, strands, 6);
        let gamma = random_word(&mut rng, strands, 3);
        worst_conj = worst_conj.max(links::markov_conjugation(e, &beta, &gamma, cap)?);
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        worst_stab = worst_stab.max(links::markov_stabilization(e, &beta, sign, cap)?);
    }
    Ok((worst_conj, worst_stab))
}

fn run_invariant(cfg: &RunConfig) -> Result<RunOutcome> {
    let spec = cfg.spec()?;
    let tol = cfg.tolerance();
    let q0 = match cfg.q_input()? {
        QInput::Numeric(z) => z,
        QInput::Symbolic => {
            return Err(Error::InvalidInput(
                "invariant evaluation needs a numeric q".into(),
            ))
        }
    };
    let strands = cfg.strands.unwrap_or(2);
    let word = BraidWord::parse(cfg.braid.as_deref().unwrap_or(""), strands)?;
    let e = EnhancedOperator::new(&spec).at(q0, cfg.allow_complex_eta())?;
    let cap = cfg.dim_cap();
    let value = links::link_invariant(&e, &word, cap)?;
    let mut checks = Checks::new(tol);
    let mut extra = Map::new();
    if cfg.skein.unwrap_or(false) {
        let trials = cfg.trials.unwrap_or(10);
        let worst = random_skein_residual(&e, cfg.seed(), trials, cap)?;
        checks.residual("skein relation on random triples", worst);
        extra.insert("skein_trials".into(), json!(trials));
    }
    if cfg.markov.unwrap_or(false) {
        let trials = cfg.trials.unwrap_or(10);
        let (wc, ws) = random_markov_residuals(&e, cfg.seed().wrapping_add(1), trials, cap)?;
        checks.residual("Markov conjugation", wc);
        checks.residual("Markov stabilization", ws);
        extra.insert("markov_trials".into(), json!(trials));
    }
    let mut json_obj = json!({
        "schema": "braidq.invariant/1",
        "family": spec.family().name(),
        "dim": spec.dim(),
        "q": complex_json(q0),
        "strands": strands,
        "braid": word.letters(),
        "writhe": word.writhe(),
        "invariant": complex_json(value),
        "checks": checks.rows,
        "ok": checks.ok,
    });
    if let Value::Object(o) = &mut json_obj {
        for (k, v) in extra {
            o.insert(k, v);
        }
    }
    let mut human = format!(
        "P(beta) = {}  (writhe {}, {} strands, {})",
        fmt_c(value),
        word.writhe(),
        strands,
        spec
    );
    if !checks.lines.is_empty() {
        human.push('\n');
        human.push_str(&checks.lines.join("\n"));
    }
    Ok(RunOutcome {
        json: json_obj,
        human,
        ok: checks.ok,
    })
}

// ---------------------------------------------------------------------------
// tower
// ---------------------------------------------------------------------------

fn run_tower(cfg: &RunConfig) -> Result<RunOutcome> {
    let tol = 1e-8f64.max(cfg.tolerance());
    let levels = cfg.levels.unwrap_or(3);
    let q_real = match cfg.q_input()? {
        QInput::Numeric(z) if z.im.abs() < 1e-12 && z.re > 0.0 => z.re,
        QInput::Symbolic => 1.0,
        _ => return Err(Error::InvalidInput("towers need real positive q".into())),
    };
    let mut checks = Checks::new(tol);
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    if cfg.soq3.unwrap_or(false) {
        let mut c = ncspace::soq3_base(cfg.cone_a.unwrap_or(1.0), -cfg.cone_b.unwrap_or(1.0));
        for level in 1..=levels {
            c = ncspace::soq3_tower_step(&c, q_real)?;
            let res = ncspace::soq3_relation_residual(&c, q_real);
            checks.residual(&format!("relations at level {}", level), res);
            rows.push(json!({ "level": level, "dim": c.dim, "residual": res }));
            lines.push(format!(
                "  level {}: dim {}, residual {:.2e}",
                level, c.dim, res
            ));
        }
        let json = json!({
            "schema": "braidq.tower/1",
            "comparison": "soq3",
            "q": q_real,
            "levels": rows,
            "ok": checks.ok,
        });
        let human = format!(
            "SO_q(3) comparison tower at q = {}\n{}",
            q_real,
            lines.join("\n")
        );
        return Ok(RunOutcome {
            json,
            human,
            ok: checks.ok,
        });
    }
    let spec = cfg.spec()?;
    let branch = match cfg.lambda_branch.as_deref().unwrap_or("plus") {
        "plus" => LambdaBranch::Plus,
        "minus" => LambdaBranch::Minus,
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown lambda branch {:?}",
                other
            )))
        }
    };
    let q0 = C::new(q_real, 0.0);
    let a = cfg.cone_a.unwrap_or(1.0);
    let b = cfg.cone_b.unwrap_or(1.0);
    let sign = cfg.cone_sign.unwrap_or(1);
    let mut c = if spec.dim() == 3 {
        ncspace::base_cone_solution(a, b, sign, cfg.mirrored.unwrap_or(false), q_real)?
    } else {
        ncspace::commutative_base(&spec, a, b, sign, q_real)?
    };
    let base_res = ncspace::check_coordinate_relation(&spec, &c, q0)?;
    checks.residual("base relation", base_res);
    rows.push(json!({ "level": 0, "dim": c.dim, "residual": base_res }));
    lines.push(format!(
        "  level 0: dim {}, residual {:.2e}",
        c.dim, base_res
    ));
    for level in 1..=levels {
        c = ncspace::tower_step(&spec, &c, branch, q0)?;
        let res = ncspace::full_projector_relation_residual(&spec, &c, q0)?;
        let structure = ncspace::check_block_structure(&spec, &c);
        let det = crate::numeric::determinant(&c.coords[0]).norm();
        checks.residual(&format!("relation at level {}", level), res);
        checks.flag(&format!("block structure at level {}", level), structure);
        rows.push(json!({
            "level": level, "dim": c.dim, "residual": res,
            "block_structure": structure, "det_x1": det,
        }));
        lines.push(format!(
            "  level {}: dim {}, residual {:.2e}, |det x1| = {:.2e}",
            level, c.dim, res, det
        ));
    }
    let json = json!({
        "schema": "braidq.tower/1",
        "family": spec.family().name(),
        "dim": spec.dim(),
        "q": q_real,
        "branch": if branch == LambdaBranch::Plus { "plus" } else { "minus" },
        "a": a,
        "b": b,
        "levels": rows,
        "ok": checks.ok,
    });
    let human = format!(
        "coordinate tower for {} at q = {} (branch {:?})\n{}",
        spec,
        q_real,
        branch,
        lines.join("\n")
    );
    Ok(RunOutcome {
        json,
        human,
        ok: checks.ok,
    })
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

fn run_spectrum(cfg: &RunConfig) -> Result<RunOutcome> {
    let spec = cfg.spec()?;
    let tol = 1e-8f64.max(cfg.tolerance());
    let q0 = match cfg.q_input()? {
        QInput::Numeric(z) => z,
        QInput::Symbolic => C::new(1.0, 0.0),
    };
    let roots = spec.lambda_roots_at(q0)?;
    let mut checks = Checks::new(tol);
    let mut spectra = Map::new();
    let mut lines = Vec::new();
    for (sign, name) in [(1, "plus"), (-1, "minus")] {
        let eigs = braid::spectrum(&spec, sign, q0)?;
        // expected: -e^{-+2 eta} once, 1 with multiplicity N^2 - 1
        let isolated = if sign > 0 {
            -roots.exp_eta.powi(-2)
        } else {
            -roots.exp_eta.powi(2)
        };
        let head_res = (eigs[0] - isolated).norm();
        let tail_res = eigs[1..]
            .iter()
            .map(|e| (e - C::new(1.0, 0.0)).norm())
            .fold(0.0, f64::max);
        checks.residual(
            &format!(
                "isolated eigenvalue (R^{}{})",
                if sign > 0 { "+" } else { "-" },
                1
            ),
            head_res,
        );
        checks.residual(
            &format!(
                "unit eigenvalues (R^{}{})",
                if sign > 0 { "+" } else { "-" },
                1
            ),
            tail_res,
        );
        spectra.insert(
            name.into(),
            json!(eigs.iter().map(|z| complex_json(*z)).collect::<Vec<_>>()),
        );
        lines.push(format!(
            "  R^{}1: isolated {} (expected {}), rest 1 within {:.2e}",
            if sign > 0 { "+" } else { "-" },
            fmt_c(eigs[0]),
            fmt_c(isolated),
            tail_res
        ));
    }
    let json = json!({
        "schema": "braidq.spectrum/1",
        "family": spec.family().name(),
        "dim": spec.dim(),
        "q": complex_json(q0),
        "spectra": spectra,
        "checks": checks.rows,
        "ok": checks.ok,
    });
    let human = format!(
        "spectrum of {} at q = {}\n{}",
        spec,
        fmt_c(q0),
        lines.join("\n")
    );
    Ok(RunOutcome {
        json,
        human,
        ok: checks.ok,
    })
}
