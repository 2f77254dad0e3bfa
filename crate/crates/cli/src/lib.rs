//! Commands behind the `so3five` binary. Each command produces a
//! [`RunReport`] plus an optional result document; `main` only parses
//! arguments and prints.

use std::thread;

use serde::Serialize;
use serde_json::Value;

use so3five::chern_weil::{
    char_poly, curvature_env, invariant_quadratic, is_monic_in_lambda, pontryagin_ratio_between, LAMBDA,
};
use so3five::obstruction::{irreducible_exists, theorem_criterion, BundleData, StructureVerdict, SurfaceInvariants};
use so3five::representations::{
    half_trace_inner, is_special_orthogonal, make_rho3, make_rho5, rho5_of_rotation, sample_quaternions, Generator,
    M5Basis, Representation, Rotation3,
};
use so3five::upsilon::{
    build_upsilon, coordinate_env, recover_metric, solve_normalization, symbolic_vector, upsilon_endomorphism,
    verify_defining_identity, verify_equivariance, UpsilonTensor,
};
use so3five::{AlgebraError, MultiPoly, QSqrt3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn from_outcome(name: &str, outcome: Result<(bool, String), String>) -> Self {
        let (status, detail) = match outcome {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        Check { name: name.to_string(), status, detail }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub checks: Vec<Check>,
    pub exit_code: i32,
}

impl RunReport {
    pub fn new(command: &str, checks: Vec<Check>) -> Self {
        let exit_code = if checks.iter().all(|c| c.status == Status::Pass) { 0 } else { 1 };
        RunReport { command: command.to_string(), checks, exit_code }
    }

    pub fn passed(&self) -> bool {
        self.exit_code == 0
    }

    /// The report as one JSON object, with the command's result under
    /// `"result"` when there is one.
    pub fn to_json(&self, result: Option<Value>) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable report");
        if let Some(r) = result {
            v["result"] = r;
        }
        v
    }

    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = format!("{}\n", self.command);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("  {tag}  {:<width$}  {}\n", c.name, c.detail));
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

type Outcome = Result<(bool, String), String>;
type CheckFn<'a> = Box<dyn FnOnce() -> Outcome + Send + 'a>;

/// Runs checks on scoped threads; results come back in submission order and
/// a panicking check is reported as a failure.
fn run_checks(checks: Vec<(&str, CheckFn<'_>)>) -> Vec<Check> {
    thread::scope(|scope| {
        let handles: Vec<_> = checks.into_iter().map(|(name, f)| (name, scope.spawn(f))).collect();
        handles
            .into_iter()
            .map(|(name, h)| {
                let outcome = h.join().unwrap_or_else(|_| Err("check panicked".to_string()));
                Check::from_outcome(name, outcome)
            })
            .collect()
    })
}

fn err(e: AlgebraError) -> String {
    e.to_string()
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Number of sampled rotations for the equivariance and homomorphism checks.
    pub samples: usize,
    /// Fault injection: perturb one ρ₅ entry before running the suite.
    pub corrupt_rho5: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, samples: 25, corrupt_rho5: false }
    }
}

fn commutation_check(rep: &Representation) -> Outcome {
    let defects = rep.commutation_defects().map_err(err)?;
    let broken: Vec<String> = Generator::cyclic_triples()
        .iter()
        .zip(&defects)
        .filter(|(_, d)| !d.is_zero())
        .map(|((a, b, c), _)| format!("[{a},{b}]!={c}"))
        .collect();
    Ok(if broken.is_empty() { (true, "[E1,E2]=E3, [E2,E3]=E1, [E3,E1]=E2".into()) } else { (false, broken.join(", ")) })
}

fn basis_check(basis: &Result<M5Basis, AlgebraError>, rho3: &Representation, rho5: &Representation) -> Outcome {
    let basis = basis.as_ref().map_err(|e| e.to_string())?;
    let m = basis.matrices();
    for i in 0..5 {
        for j in 0..5 {
            let g = half_trace_inner(&m[i], &m[j]).map_err(err)?;
            let expected = if i == j { MultiPoly::one(g.env()) } else { MultiPoly::zero(g.env()) };
            if g != expected {
                return Ok((false, format!("<A{},A{}> = {g}", i + 1, j + 1)));
            }
        }
    }
    for g in Generator::ALL {
        if basis.induced_action(rho3, g).map_err(err)? != *rho5.generator(g) {
            return Ok((false, format!("induced action of {g} differs from rho5({g})")));
        }
    }
    Ok((true, "orthonormal for <A,B> = tr(AB)/2; reproduces rho5(E1..E3)".into()))
}

fn upsilon_from(basis: &Result<M5Basis, AlgebraError>) -> Result<(UpsilonTensor, QSqrt3), String> {
    let basis = basis.as_ref().map_err(|e| e.to_string())?;
    let c = solve_normalization(basis).map_err(err)?;
    Ok((build_upsilon(basis, &c).map_err(err)?, c))
}

/// The full identity suite over representations, Υ and Chern–Weil.
pub fn cmd_verify(opts: &VerifyOptions) -> RunReport {
    let rho3 = make_rho3();
    let mut rho5 = make_rho5();
    if opts.corrupt_rho5 {
        rho5 = rho5.with_entry(Generator::E3, 1, 3, QSqrt3::from_int(3)).expect("entry inside the matrix");
    }
    let basis = M5Basis::derive(&rho3, &rho5);
    let upsilon = upsilon_from(&basis);
    let rotations: Vec<Rotation3> =
        sample_quaternions(opts.seed, opts.samples).iter().map(Rotation3::from_quaternion).collect();

    let (rho3, rho5, basis, upsilon, rotations) = (&rho3, &rho5, &basis, &upsilon, &rotations);
    let checks: Vec<(&str, CheckFn<'_>)> = vec![
        ("rho3 commutation", Box::new(move || commutation_check(rho3))),
        ("rho5 commutation", Box::new(move || commutation_check(rho5))),
        (
            "generators antisymmetric",
            Box::new(move || {
                let ok = rho3.is_antisymmetric().map_err(err)? && rho5.is_antisymmetric().map_err(err)?;
                Ok((ok, "rho3 and rho5 land in so(3), so(5)".into()))
            }),
        ),
        ("m5 basis", Box::new(move || basis_check(basis, rho3, rho5))),
        (
            "upsilon normalization",
            Box::new(move || {
                let (_, c) = upsilon.as_ref().map_err(Clone::clone)?;
                Ok((true, format!("c = {c}")))
            }),
        ),
        (
            "upsilon total symmetry",
            Box::new(move || {
                let (t, _) = upsilon.as_ref().map_err(Clone::clone)?;
                Ok((t.is_totally_symmetric(), "all 6 index permutations agree".into()))
            }),
        ),
        (
            "upsilon trace-free",
            Box::new(move || {
                let (t, _) = upsilon.as_ref().map_err(Clone::clone)?;
                let v = symbolic_vector(&coordinate_env()).map_err(err)?;
                let m = upsilon_endomorphism(t, &v).map_err(err)?;
                let tr = m.trace().map_err(err)?;
                Ok((t.is_trace_free() && tr.is_zero(), format!("tr(Y_v) = {tr}")))
            }),
        ),
        (
            "upsilon_v symmetric",
            Box::new(move || {
                let (t, _) = upsilon.as_ref().map_err(Clone::clone)?;
                let v = symbolic_vector(&coordinate_env()).map_err(err)?;
                let m = upsilon_endomorphism(t, &v).map_err(err)?;
                Ok((m.is_symmetric().map_err(err)?, "Y_v - Y_v^T = 0".into()))
            }),
        ),
        (
            "defining identity",
            Box::new(move || {
                let (t, _) = upsilon.as_ref().map_err(Clone::clone)?;
                let residual = verify_defining_identity(t).map_err(err)?;
                let nonzero = residual.iter().filter(|r| !r.is_zero()).count();
                Ok((nonzero == 0, format!("{nonzero} nonzero residual components")))
            }),
        ),
        (
            "equivariance",
            Box::new(move || {
                let (t, _) = upsilon.as_ref().map_err(Clone::clone)?;
                let basis = basis.as_ref().map_err(|e| e.to_string())?;
                let mut failures = 0;
                for h in rotations {
                    if !verify_equivariance(t, h, basis).map_err(err)? {
                        failures += 1;
                    }
                }
                Ok((failures == 0, format!("{} rotations, {failures} failures", rotations.len())))
            }),
        ),
        (
            "rho5 homomorphism",
            Box::new(move || {
                let basis = basis.as_ref().map_err(|e| e.to_string())?;
                let mut failures = 0;
                for pair in rotations.windows(2) {
                    let (h1, h2) = (&pair[0], &pair[1]);
                    let r1 = rho5_of_rotation(h1, basis).map_err(err)?;
                    let r2 = rho5_of_rotation(h2, basis).map_err(err)?;
                    let r12 = rho5_of_rotation(&h1.mul(h2), basis).map_err(err)?;
                    if r12 != r1.mul(&r2).map_err(err)? || !is_special_orthogonal(&r1).map_err(err)? {
                        failures += 1;
                    }
                }
                Ok((failures == 0, format!("{} pairs, {failures} failures", rotations.len().saturating_sub(1))))
            }),
        ),
        (
            "metric recovery",
            Box::new(move || {
                let (t, _) = upsilon.as_ref().map_err(Clone::clone)?;
                let g = recover_metric(t).map_err(err)?;
                Ok((g.is_identity(), "Gram matrix of Y_v^2 v = q(v) v".into()))
            }),
        ),
        (
            "charpoly rho3",
            Box::new(move || {
                let r = char_poly(rho3).map_err(err)?;
                let env = curvature_env();
                let expected =
                    MultiPoly::parse(&env, "lambda^3 + lambda*r1^2 + lambda*r2^2 + lambda*r3^2").map_err(err)?;
                Ok((r.char_poly == expected, r.char_poly.to_string()))
            }),
        ),
        (
            "charpoly rho5",
            Box::new(move || {
                let r = char_poly(rho5).map_err(err)?;
                let expected = invariant_quadratic().scale(&QSqrt3::from_int(5));
                let l4 = r.char_poly.coefficient_of(LAMBDA, 4).map_err(err)?;
                Ok((r.p1_form == expected && l4.is_zero(), format!("lambda^3 coefficient: {}", r.p1_form)))
            }),
        ),
        (
            "pontryagin ratio",
            Box::new(move || {
                let n = pontryagin_ratio_between(rho5, rho3).map_err(err)?;
                Ok((n == 5, format!("p1(rho5) = {n} * p1(rho3)")))
            }),
        ),
    ];
    RunReport::new("verify", run_checks(checks))
}

/// Characteristic polynomial report for ρ₃ or ρ₅.
pub fn cmd_charpoly(dim: usize) -> Result<(RunReport, Value), String> {
    let rep = match dim {
        3 => make_rho3(),
        5 => make_rho5(),
        other => return Err(format!("--dim must be 3 or 5, got {other}")),
    };
    let report = char_poly(&rep).map_err(err)?;
    let base = invariant_quadratic();
    let mut checks = vec![Check::from_outcome(
        "monic in lambda",
        is_monic_in_lambda(&report).map(|ok| (ok, format!("degree {dim}"))).map_err(err),
    )];
    let identity = if dim == 3 {
        let lambda = MultiPoly::var(&curvature_env(), LAMBDA).map_err(err)?;
        let cubic = lambda.pow(3).and_then(|l3| l3.add(&lambda.mul(&base)?)).map_err(err)?;
        (report.char_poly == cubic, "det(lambda I + K) = lambda^3 + lambda (r1^2 + r2^2 + r3^2)".to_string())
    } else {
        let l4 = report.char_poly.coefficient_of(LAMBDA, 4).map_err(err)?;
        let ok = report.p1_form == base.scale(&QSqrt3::from_int(5)) && l4.is_zero();
        (ok, "lambda^3 coefficient = 5 (r1^2 + r2^2 + r3^2), lambda^4 coefficient = 0".to_string())
    };
    checks.push(Check::from_outcome("characteristic polynomial identity", Ok(identity)));
    let doc = serde_json::to_value(&report).expect("serializable");
    Ok((RunReport::new("charpoly", checks), doc))
}

/// Existence verdict for `S × S¹`.
pub fn cmd_check(surface: &SurfaceInvariants) -> (RunReport, StructureVerdict) {
    let verdict = irreducible_exists(surface);
    let general = theorem_criterion(&BundleData::for_product(surface));
    let checks = vec![
        Check::from_outcome(
            "criterion consistency",
            Ok((general == verdict.irreducible_exists, "general criterion agrees with (chi, sigma) criterion".into())),
        ),
        Check::from_outcome(
            "irreducible implies standard",
            Ok((!verdict.irreducible_exists || verdict.standard_exists, String::new())),
        ),
    ];
    (RunReport::new("check", checks), verdict)
}

#[derive(Clone, Debug, Serialize)]
pub struct UpsilonComponent {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct UpsilonDump {
    pub c: String,
    pub components: Vec<UpsilonComponent>,
}

impl UpsilonDump {
    pub fn to_text(&self) -> String {
        let mut out = format!("# c = {}\n", self.c);
        for comp in &self.components {
            out.push_str(&format!("{} {} {} : {}\n", comp.i, comp.j, comp.k, comp.value));
        }
        out
    }
}

/// Υ with solved normalization, as a component dump.
pub fn cmd_upsilon() -> Result<(RunReport, UpsilonDump), String> {
    let basis = M5Basis::derive(&make_rho3(), &make_rho5()).map_err(err)?;
    let c = solve_normalization(&basis).map_err(err)?;
    let t = build_upsilon(&basis, &c).map_err(err)?;
    let residual = verify_defining_identity(&t).map_err(err)?;
    let checks = vec![
        Check::from_outcome("total symmetry", Ok((t.is_totally_symmetric(), String::new()))),
        Check::from_outcome("trace-free", Ok((t.is_trace_free(), String::new()))),
        Check::from_outcome(
            "defining identity",
            Ok((residual.iter().all(MultiPoly::is_zero), "Y_v^2 v = g(v,v) v".into())),
        ),
    ];
    let components = t
        .nonzero_components()
        .into_iter()
        .map(|((i, j, k), value)| UpsilonComponent { i, j, k, value: value.to_string() })
        .collect();
    Ok((RunReport::new("upsilon", checks), UpsilonDump { c: c.to_string(), components }))
}
