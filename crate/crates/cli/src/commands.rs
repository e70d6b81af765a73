use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use soddy_core::embedding::DEFAULT_TOL;
use soddy_core::json::JsonRational;
use soddy_core::proof::{check_reduction_chain, check_s_properties, check_uwu_congruence};
use soddy_core::tangency::factored_cm_determinant;
use soddy_core::{
    cm_determinant, curvatures_from_radii, descartes_residual, factored_volume_squared, generate, rat, realize_points,
    render_svg, solve_missing_curvature, tangency_squared_distances, validate_radii, volume_squared, CurvatureRoots,
    Curvatures, Error, ProofReport, RadiusValidation, Rational, Scalar, SignedRadii, SquaredDistanceMatrix, SvgOptions,
};

use crate::input::{parse_matrix, read_request, Mode, NumberList, Request};
use crate::{Cli, Command, CurvatureArgs, Format, GasketArgs, MatrixArgs, ProofArgs, RadiiArgs};

pub enum Output {
    Json(Value),
    Text(String),
}

pub enum Failure {
    Core(Error),
    Io(String),
    ProofFailed { failed: usize, report: Value, text: Option<String> },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Core(e) => e.kind(),
            Failure::Io(_) => "io",
            Failure::ProofFailed { .. } => "proof_failed",
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io(m) => m.clone(),
            Failure::ProofFailed { failed, .. } => format!("{failed} identity checks failed"),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_validation() => 1,
            _ => 2,
        }
    }

    pub fn partial_result(&self) -> Option<Value> {
        match self {
            Failure::ProofFailed { report, .. } => Some(report.clone()),
            _ => None,
        }
    }
}

type Outcome = Result<Output, Failure>;

/// JSON encoding per scalar type: rationals as `{"num", "den"}`, floats as
/// numbers.
trait Encode: Scalar {
    fn encode(&self) -> Value;
}

impl Encode for Rational {
    fn encode(&self) -> Value {
        serde_json::to_value(JsonRational(self)).expect("rationals encode")
    }
}

impl Encode for f64 {
    fn encode(&self) -> Value {
        json!(self)
    }
}

fn encode_all<T: Encode>(values: &[T]) -> Value {
    Value::Array(values.iter().map(Encode::encode).collect())
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Core(Error::InvalidInput(msg.into()))
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| invalid(format!("--{flag} is required")))
}

pub fn run(cli: &Cli) -> Outcome {
    let request = match &cli.request {
        Some(path) => read_request(path)?,
        None => Request::default(),
    };
    let mode = cli.mode.or(request.mode);
    let exact = mode.unwrap_or(Mode::Exact) == Mode::Exact;
    match &cli.command {
        Command::CmDet(a) => dispatch(exact, || cm_det::<Rational>(a, &request), || cm_det::<f64>(a, &request)),
        Command::Volume(a) => dispatch(exact, || volume::<Rational>(a, &request), || volume::<f64>(a, &request)),
        Command::Residual(a) => dispatch(exact, || residual::<Rational>(a, &request), || residual::<f64>(a, &request)),
        Command::Solve(a) => dispatch(exact, || solve::<Rational>(a, &request), || solve::<f64>(a, &request)),
        Command::IdentityCheck(a) => {
            dispatch(exact, || identity::<Rational>(a, &request), || identity::<f64>(a, &request))
        }
        Command::VerifyProof(a) => {
            if mode == Some(Mode::Float) {
                return Err(invalid("proof checks run in exact mode only"));
            }
            verify_proof(a, &request)
        }
        Command::Embed(a) => {
            if mode == Some(Mode::Exact) {
                return Err(invalid("embed runs in float mode only"));
            }
            embed(&a.radii, a.tol, &request)
        }
        Command::Gasket(a) => {
            if mode == Some(Mode::Exact) {
                return Err(invalid("gasket runs in float mode only"));
            }
            gasket(a, &request)
        }
    }
}

fn dispatch(exact: bool, e: impl FnOnce() -> Outcome, f: impl FnOnce() -> Outcome) -> Outcome {
    if exact {
        e()
    } else {
        f()
    }
}

fn distance_matrix<T: Scalar>(a: &MatrixArgs, req: &Request) -> Result<SquaredDistanceMatrix<T>, Failure> {
    let m = parse_matrix::<T>(a.matrix.as_deref(), req.matrix.as_deref())?;
    Ok(SquaredDistanceMatrix::new(m)?)
}

fn cm_det<T: Encode>(a: &MatrixArgs, req: &Request) -> Outcome {
    let d = distance_matrix::<T>(a, req)?;
    Ok(Output::Json(cm_determinant(&d)?.encode()))
}

fn volume<T: Encode>(a: &MatrixArgs, req: &Request) -> Outcome {
    let v = volume_squared(&distance_matrix::<T>(a, req)?)?;
    Ok(Output::Json(json!({ "volume_squared": v.value.encode(), "dim": v.dim })))
}

fn dim_of(n: Option<usize>, req: &Request) -> Result<usize, Failure> {
    required(n.or(req.n), "n")
}

fn curvature_list<T: Scalar>(a: &CurvatureArgs, req: &Request) -> Result<Vec<T>, Failure> {
    let list = NumberList::from_parts(a.curvatures.clone(), req.curvatures.clone());
    Ok(required(list, "curvatures")?.scalars()?)
}

fn residual<T: Encode>(a: &CurvatureArgs, req: &Request) -> Outcome {
    let n = dim_of(a.n, req)?;
    let k = Curvatures::new(curvature_list::<T>(a, req)?, n)?;
    Ok(Output::Json(descartes_residual(&k).encode()))
}

fn solve<T: Encode>(a: &CurvatureArgs, req: &Request) -> Outcome {
    let n = dim_of(a.n, req)?;
    let roots = solve_missing_curvature(&curvature_list::<T>(a, req)?, n)?;
    let double = matches!(&roots, CurvatureRoots::Pair { larger, smaller } if larger == smaller);
    Ok(Output::Json(json!({ "roots": encode_all(&roots.to_vec()), "double": double })))
}

fn radii_of<T: Scalar>(a: &RadiiArgs, req: &Request) -> Result<SignedRadii<T>, Failure> {
    let n = dim_of(a.n, req)?;
    let list = required(NumberList::from_parts(a.radii.clone(), req.radii.clone()), "radii")?;
    let mode =
        if a.lenient || req.lenient == Some(true) { RadiusValidation::Lenient } else { RadiusValidation::Strict };
    Ok(validate_radii(list.scalars()?, n, mode)?)
}

fn identity<T: Encode>(a: &RadiiArgs, req: &Request) -> Outcome {
    let r = radii_of::<T>(a, req)?;
    let d = tangency_squared_distances(&r)?;
    let lhs = cm_determinant(&d)?;
    let rhs = factored_cm_determinant(&r);
    let direct = volume_squared(&d)?.value;
    let factored = factored_volume_squared(&r).value;
    let agree = |x: &T, y: &T| {
        if T::EXACT {
            x == y
        } else {
            let scale = x.to_f64().abs().max(y.to_f64().abs()).max(1.0);
            (x.to_f64() - y.to_f64()).abs() <= 1e-9 * scale
        }
    };
    Ok(Output::Json(json!({
        "n": r.dim(),
        "cm_determinant": lhs.encode(),
        "factored": rhs.encode(),
        "residual": descartes_residual(&curvatures_from_radii(&r)).encode(),
        "volume_squared": { "direct": direct.encode(), "factored": factored.encode() },
        "holds": agree(&lhs, &rhs) && agree(&direct, &factored),
    })))
}

/// Radii `p/q` with `p, q` in 1..=10, at most one of them negated.
fn random_radii(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let mut r: Vec<Rational> = (0..n + 2).map(|_| rat(rng.gen_range(1..=10), rng.gen_range(1..=10))).collect();
    if rng.gen_bool(0.5) {
        let i = rng.gen_range(0..n + 2);
        r[i] = -r[i].clone();
    }
    r
}

fn random_points(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Vec<Rational>> {
    (0..=dim).map(|_| (0..dim).map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=7))).collect()).collect()
}

fn verify_proof(a: &ProofArgs, req: &Request) -> Outcome {
    let n = dim_of(a.n, req)?;
    let mut report = check_s_properties(n)?;
    let random = if a.radii.is_some() { None } else { a.random.or(req.random) };
    match random {
        Some(count) => {
            let seed = req.rng_seed.unwrap_or(a.rng_seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let r = validate_radii(random_radii(&mut rng, n), n, RadiusValidation::Strict)?;
                report.extend(check_reduction_chain(&r)?);
                report.extend(check_uwu_congruence(&random_points(&mut rng, n))?);
            }
        }
        None => {
            let args = RadiiArgs { n: Some(n), radii: a.radii.clone(), lenient: a.lenient };
            report.extend(check_reduction_chain(&radii_of::<Rational>(&args, req)?)?);
        }
    }
    finish_report(report, a.format)
}

fn finish_report(report: ProofReport, format: Format) -> Outcome {
    let failed = report.failures().count();
    let text = (format == Format::Text).then(|| report.to_text());
    if failed > 0 {
        let report = serde_json::to_value(&report).expect("reports encode");
        return Err(Failure::ProofFailed { failed, report, text });
    }
    Ok(match text {
        Some(text) => Output::Text(text),
        None => Output::Json(serde_json::to_value(&report).expect("reports encode")),
    })
}

fn embed(a: &RadiiArgs, tol: f64, req: &Request) -> Outcome {
    let r = radii_of::<f64>(a, req)?;
    let d = tangency_squared_distances(&r)?;
    let tol = if tol > 0.0 { tol } else { DEFAULT_TOL };
    let points = realize_points(&d, r.dim(), tol)?;
    Ok(Output::Json(json!({
        "dim": r.dim(),
        "radii": r.values(),
        "centers": points.points(),
    })))
}

fn write_file(path: &str, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Io(format!("writing {path}: {e}")))
}

fn gasket(a: &GasketArgs, req: &Request) -> Outcome {
    let list = required(NumberList::from_parts(a.seed.clone(), req.seed.clone()), "seed")?;
    let seed: Vec<f64> = list.scalars()?;
    let seed: [f64; 3] =
        seed.try_into().map_err(|v: Vec<f64>| Failure::Core(Error::WrongLength { expected: 3, got: v.len() }))?;
    let depth = required(a.depth.or(req.depth), "depth")?;
    let g = generate(seed, depth)?;
    let (tangency, residual) = g.audit();
    let mut result = json!({
        "seed": seed,
        "depth": depth,
        "circles": g.len(),
        "audit": { "tangency": tangency, "residual": residual },
    });
    if let Some(path) = &a.svg {
        let options = SvgOptions { width_px: a.width, ..SvgOptions::default() };
        write_file(path, &render_svg(&g, &options)?)?;
        result["svg"] = json!(path);
    }
    match a.json.as_deref() {
        Some("-") => result["gasket"] = serde_json::to_value(&g).expect("gaskets encode"),
        Some(path) => {
            write_file(path, &serde_json::to_string(&g).expect("gaskets encode"))?;
            result["json"] = json!(path);
        }
        None => {}
    }
    Ok(Output::Json(result))
}
