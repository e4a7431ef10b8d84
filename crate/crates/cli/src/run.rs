use std::io::Write;
use std::path::Path;
use std::time::Instant;

use clifford_mellin::bench::fast_bench;
use clifford_mellin::cfmt::cfmt_direct_bins;
use clifford_mellin::imaging::{descriptor, max_radius, parse_pnm, register, to_log_polar, Ingested};
use clifford_mellin::io::{decode_signal, decode_spectrum, encode_signal, encode_spectrum};
use clifford_mellin::roots::{blade_roots, export_manifold, manifold_csv, validate_root};
use clifford_mellin::signal::norm;
use clifford_mellin::split::{f_split, recombine, split};
use clifford_mellin::verify::{self, PairSelection, VerifyOptions};
use clifford_mellin::{
    cfmt_forward, cfmt_forward_direct, cfmt_inverse, Error, GridGeometry, LogPolarSignal, Multivector, RootPair,
    Signature,
};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::{Cli, Command, Shared};

pub const THREADS_VAR: &str = "CLIFFORD_MELLIN_THREADS";

/// Largest grid for which `transform` times the full direct sum; above it a
/// sample of bins is timed and extrapolated.
const FULL_DIRECT_LIMIT: usize = 64 * 64;
const SAMPLED_DIRECT_BINS: usize = 256;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Format(String),
    Contract(String),
    /// Output already printed.
    NoMatch,
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Format(_) => 2,
            Failure::Contract(_) => 3,
            Failure::NoMatch => 4,
        }
    }

    pub fn message(&self) -> Option<&str> {
        match self {
            Failure::Usage(m) | Failure::Format(m) | Failure::Contract(m) => Some(m),
            Failure::NoMatch => None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Format(_) | Error::Io(_) => Failure::Format(e.to_string()),
            _ => Failure::Contract(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Format(e.to_string())
    }
}

type Outcome<T = ()> = Result<T, Failure>;

pub fn execute(cli: Cli) -> Outcome {
    configure_threads()?;
    let s = &cli.shared;
    match cli.command {
        Command::Transform {
            ref input,
            ref center,
            skip_direct,
        } => transform(s, input, center.as_deref(), skip_direct),
        Command::Invert {
            ref input,
            ref reference,
        } => invert(s, input, reference.as_deref()),
        Command::FastBench { bins, repeats } => bench(s, bins, repeats),
        Command::Verify {
            pair_degenerate,
            samples,
            signals,
        } => verify_cmd(s, pair_degenerate, samples, signals),
        Command::Split { ref x } => split_cmd(s, x),
        Command::Register {
            ref first,
            ref second,
            ref center,
        } => register_cmd(s, first, second, center.as_deref()),
        Command::Manifold { resolution } => manifold(s, resolution),
        Command::Descriptor { ref input, ref center } => descriptor_cmd(s, input, center.as_deref()),
    }
}

/// Caps the rayon pool at `CLIFFORD_MELLIN_THREADS` workers.
fn configure_threads() -> Outcome {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_VAR} must be a positive integer, got '{raw}'")))?;
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    rayon::ThreadPoolBuilder::new()
        .num_threads(n.min(available))
        .build_global()
        .map_err(|e| Failure::Usage(format!("{THREADS_VAR}: {e}")))
}

fn algebra(s: &Shared) -> Outcome<Option<Signature>> {
    s.algebra
        .as_deref()
        .map(|a| a.parse().map_err(|e: Error| Failure::Usage(e.to_string())))
        .transpose()
}

fn default_pair(sig: Signature) -> RootPair {
    match sig {
        Signature::Cl02 => RootPair::quaternion_default(),
        _ => {
            let b = blade_roots(sig)[0];
            RootPair::from_values(b, b).expect("blade roots are roots")
        }
    }
}

fn pair(s: &Shared, sig: Signature) -> Outcome<RootPair> {
    let default = default_pair(sig);
    let root = |flag: &str, text: &Option<String>, fallback: Multivector| -> Outcome<_> {
        let value = match text {
            Some(t) => Multivector::parse_text(sig, t).map_err(|e| Failure::Usage(format!("--{flag}: {e}")))?,
            None => fallback,
        };
        validate_root(value).map_err(|e| Failure::Contract(format!("--{flag}: {e}")))
    };
    let f = root("f", &s.f, default.f())?;
    let g = root("g", &s.g, default.g())?;
    Ok(RootPair::new(f, g)?)
}

fn has_geometry_flags(s: &Shared) -> bool {
    s.ns.is_some() || s.ntheta.is_some() || s.smin.is_some() || s.smax.is_some()
}

fn geometry(s: &Shared, ns: usize, ntheta: usize, smin: f64, smax: f64) -> Outcome<GridGeometry> {
    GridGeometry::new(
        s.ns.unwrap_or(ns),
        s.ntheta.unwrap_or(ntheta),
        s.smin.unwrap_or(smin),
        s.smax.unwrap_or(smax),
    )
    .map_err(|e| Failure::Usage(e.to_string()))
}

fn signal_geometry(s: &Shared, n: usize) -> Outcome<GridGeometry> {
    use std::f64::consts::PI;
    geometry(s, n, n, -PI, PI)
}

/// Default image grid: 64 x 64 from radius 1 out to the largest radius every image allows.
fn image_geometry(s: &Shared, images: &[&Ingested]) -> Outcome<GridGeometry> {
    let r = images
        .iter()
        .map(|i| max_radius(&i.image))
        .fold(f64::INFINITY, f64::min);
    if r <= 1.0 && s.smax.is_none() {
        return Err(Failure::Contract(format!(
            "images too small for a log-polar grid (max radius {r})"
        )));
    }
    geometry(s, 64, 64, 0.0, r.ln())
}

fn parse_center(text: Option<&str>) -> Outcome<Option<(f64, f64)>> {
    let Some(text) = text else { return Ok(None) };
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("--center expects \"x,y\", got '{text}'")))?;
    match parts[..] {
        [x, y] if x.is_finite() && y.is_finite() => Ok(Some((x, y))),
        _ => Err(Failure::Usage(format!("--center expects \"x,y\", got '{text}'"))),
    }
}

enum Input {
    Signal(LogPolarSignal),
    Spectrum(clifford_mellin::Spectrum),
    Image(Ingested),
}

fn read_input(path: &Path, sig: Option<Signature>) -> Outcome<Input> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Format(format!("{}: {e}", path.display())))?;
    let context = |e: Error| -> Failure {
        let f = Failure::from(e);
        match f {
            Failure::Format(m) => Failure::Format(format!("{}: {m}", path.display())),
            other => other,
        }
    };
    if bytes.starts_with(b"CLMS") {
        Ok(Input::Signal(decode_signal(&bytes).map_err(context)?))
    } else if bytes.starts_with(b"CLMF") {
        Ok(Input::Spectrum(decode_spectrum(&bytes).map_err(context)?))
    } else if bytes.starts_with(b"P5") || bytes.starts_with(b"P6") {
        let img = parse_pnm(&bytes).map_err(context)?;
        Ok(Input::Image(Ingested::new(img, sig.unwrap_or(Signature::Cl02), None)?))
    } else {
        Err(Failure::Format(format!(
            "{}: unrecognised format, expected CLMS v1, CLMF v1, PGM (P5) or PPM (P6)",
            path.display()
        )))
    }
}

fn check_algebra(explicit: Option<Signature>, found: Signature) -> Outcome {
    match explicit {
        Some(sig) if sig != found => Err(Failure::Contract(format!("--algebra {sig} but the input is {found}"))),
        _ => Ok(()),
    }
}

/// A log-polar signal from a CLMS file or a resampled image.
fn load_signal(s: &Shared, path: &Path, center: Option<&str>) -> Outcome<(LogPolarSignal, RootPair)> {
    let explicit = algebra(s)?;
    let center = parse_center(center)?;
    match read_input(path, explicit)? {
        Input::Signal(h) => {
            if has_geometry_flags(s) || center.is_some() {
                return Err(Failure::Usage(
                    "grid and --center flags only apply to image input".into(),
                ));
            }
            check_algebra(explicit, h.signature())?;
            let p = pair(s, h.signature())?;
            Ok((h, p))
        }
        Input::Image(src) => {
            let geo = image_geometry(s, &[&src])?;
            let p = pair(s, src.signature)?;
            Ok((to_log_polar(&src, center, geo)?, p))
        }
        Input::Spectrum(_) => Err(Failure::Format(format!(
            "{}: expected a signal or image, got a spectrum",
            path.display()
        ))),
    }
}

/// Writes through a temporary file in the target directory, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Outcome {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let fail = |e: std::io::Error| Failure::Format(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(bytes).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

fn emit(config: &RunConfig, result: Value) {
    let mut obj = match result {
        Value::Object(m) => m,
        other => {
            let mut m = serde_json::Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    obj.insert(
        "config".into(),
        serde_json::to_value(config).expect("config is plain data"),
    );
    let text = serde_json::to_string_pretty(&Value::Object(obj)).expect("json values serialize");
    // a closed stdout (e.g. `| head`) is not an error for the run itself
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn config(s: &Shared, command: &str, pair: &RootPair, inputs: &[&Path]) -> RunConfig {
    let mut c = RunConfig::new(command, pair);
    c.inputs = inputs.iter().map(|p| p.to_path_buf()).collect();
    c.out = s.out.clone();
    c.seed = s.seed.unwrap_or(0);
    c.tolerance = s.tol;
    c
}

fn transform(s: &Shared, input: &Path, center: Option<&str>, skip_direct: bool) -> Outcome {
    let (h, pair) = load_signal(s, input, center)?;
    let geo = *h.geometry();
    let t = Instant::now();
    let spec = cfmt_forward(&h, &pair)?;
    let fast_seconds = t.elapsed().as_secs_f64();

    let direct = if skip_direct {
        Value::Null
    } else if geo.len() <= FULL_DIRECT_LIMIT {
        let t = Instant::now();
        let d = cfmt_forward_direct(&h, &pair)?;
        json!({
            "seconds": t.elapsed().as_secs_f64(),
            "estimated": false,
            "bins": geo.len(),
            "max_abs_diff": spec.max_abs_diff(&d),
        })
    } else {
        let step = geo.len() / SAMPLED_DIRECT_BINS;
        let rows: Vec<usize> = (0..SAMPLED_DIRECT_BINS).map(|n| n * step).collect();
        let bins: Vec<(i64, i64)> = rows
            .iter()
            .map(|&n| (geo.j_of_row(n / geo.ntheta), geo.k_of_col(n % geo.ntheta)))
            .collect();
        let t = Instant::now();
        let d = cfmt_direct_bins(&h, &pair, &bins)?;
        let secs = t.elapsed().as_secs_f64();
        let diff = bins
            .iter()
            .zip(&d)
            .map(|(&(j, k), x)| spec.at(j, k).max_abs_diff(x))
            .fold(0.0, f64::max);
        json!({
            "seconds": secs * geo.len() as f64 / bins.len() as f64,
            "estimated": true,
            "bins": bins.len(),
            "max_abs_diff": diff,
        })
    };

    if let Some(out) = &s.out {
        write_atomic(out, &encode_spectrum(&spec))?;
    }
    let (ns, nspec) = (norm(&h), spec.norm());
    let mut c = config(s, "transform", &pair, &[input]);
    c.geometry = Some(geo);
    emit(
        &c,
        json!({
            "norm_signal": ns,
            "norm_spectrum": nspec,
            "relative_difference": if ns > 0.0 { (ns - nspec).abs() / ns } else { nspec },
            "norms_should_agree": pair.is_blade_like(),
            "fast_seconds": fast_seconds,
            "direct": direct,
        }),
    );
    Ok(())
}

fn invert(s: &Shared, input: &Path, reference: Option<&Path>) -> Outcome {
    if has_geometry_flags(s) {
        return Err(Failure::Usage(
            "grid flags do not apply to invert; the grid comes from the spectrum".into(),
        ));
    }
    let explicit = algebra(s)?;
    let Input::Spectrum(spec) = read_input(input, explicit)? else {
        return Err(Failure::Format(format!(
            "{}: expected a CLMF v1 spectrum",
            input.display()
        )));
    };
    check_algebra(explicit, spec.signature())?;
    if s.f.is_some() || s.g.is_some() {
        let requested = pair(s, spec.signature())?;
        if requested.f() != spec.pair().f() || requested.g() != spec.pair().g() {
            return Err(Failure::Contract(format!(
                "--f/--g differ from the spectrum's pair {}",
                spec.pair().describe()
            )));
        }
    }
    let h = cfmt_inverse(&spec);
    if let Some(out) = &s.out {
        write_atomic(out, &encode_signal(&h))?;
    }
    let mut inputs = vec![input];
    let mut result = json!({ "norm_signal": norm(&h), "norm_spectrum": spec.norm() });
    let mut over = None;
    if let Some(r) = reference {
        inputs.push(r);
        let Input::Signal(want) = read_input(r, explicit)? else {
            return Err(Failure::Format(format!("{}: expected a CLMS v1 signal", r.display())));
        };
        h.check_compatible(&want)?;
        let err = h.max_abs_diff(&want);
        let tol = s.tol.unwrap_or(1e-10);
        result["round_trip_max_error"] = json!(err);
        result["within_tolerance"] = json!(err <= tol);
        if err > tol {
            over = Some(format!("round-trip error {err:e} exceeds tolerance {tol:e}"));
        }
    }
    let mut c = config(s, "invert", spec.pair(), &inputs);
    c.geometry = Some(*spec.geometry());
    emit(&c, result);
    over.map_or(Ok(()), |m| Err(Failure::Contract(m)))
}

fn bench(s: &Shared, bins: usize, repeats: usize) -> Outcome {
    let sig = algebra(s)?.unwrap_or(Signature::Cl02);
    let p = pair(s, sig)?;
    let geo = signal_geometry(s, 256)?;
    let seed = s.seed.unwrap_or(0);
    let report = fast_bench(geo, &p, seed, bins.min(geo.len()), repeats)?;
    let mut result = serde_json::to_value(&report).expect("report serializes");
    result["at_least_10x"] = json!(report.ratio >= 10.0);
    if let Some(out) = &s.out {
        write_atomic(out, serde_json::to_string_pretty(&result).expect("json").as_bytes())?;
    }
    let mut c = config(s, "fast-bench", &p, &[]);
    c.geometry = Some(geo);
    emit(&c, result);
    Ok(())
}

fn verify_cmd(s: &Shared, degenerate: bool, samples: Option<usize>, signals: Option<usize>) -> Outcome {
    let explicit = algebra(s)?;
    let explicit_pair = s.f.is_some() || s.g.is_some();
    if degenerate && explicit_pair {
        return Err(Failure::Usage(
            "--pair-degenerate picks its own pairs; drop --f/--g".into(),
        ));
    }
    let mut opts = VerifyOptions {
        seed: s.seed.unwrap_or(0),
        tolerance: s.tol,
        ..VerifyOptions::default()
    };
    if has_geometry_flags(s) {
        opts.geometry = signal_geometry(s, 32)?;
    }
    if let Some(sig) = explicit {
        opts.algebras = vec![sig];
    }
    let shown = if explicit_pair {
        let p = pair(s, explicit.unwrap_or(Signature::Cl02))?;
        opts.algebras = vec![p.signature()];
        opts.pairs = PairSelection::Explicit(p);
        p
    } else {
        if degenerate {
            opts.pairs = PairSelection::Degenerate;
        }
        default_pair(explicit.unwrap_or(Signature::Cl02))
    };
    if let Some(n) = samples {
        opts.samples = n;
    }
    if let Some(n) = signals {
        opts.signals = n;
    }

    let report = verify::run(&opts)?;
    let result = serde_json::to_value(&report).expect("report serializes");
    if let Some(out) = &s.out {
        write_atomic(out, serde_json::to_string_pretty(&result).expect("json").as_bytes())?;
    }
    let mut c = config(s, "verify", &shown, &[]);
    c.algebra = match explicit {
        Some(sig) => sig.name().to_string(),
        None if !explicit_pair => "all".to_string(),
        None => c.algebra,
    };
    c.geometry = Some(opts.geometry);
    emit(&c, result);
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Contract(format!(
            "{} of {} checks failed",
            report.failed,
            report.checks.len()
        )))
    }
}

fn split_cmd(s: &Shared, x: &str) -> Outcome {
    let sig = algebra(s)?.unwrap_or(Signature::Cl02);
    let p = pair(s, sig)?;
    let x = Multivector::parse_text(sig, x).map_err(|e| Failure::Usage(format!("--x: {e}")))?;
    let sp = split(&x, &p)?;
    let (commuting, anticommuting) = f_split(&x, p.f_root())?;
    let result = json!({
        "x": x.coeffs(),
        "plus": sp.plus.coeffs(),
        "minus": sp.minus.coeffs(),
        "f_commuting": commuting.coeffs(),
        "f_anticommuting": anticommuting.coeffs(),
        "reconstruction_error": recombine(&sp).max_abs_diff(&x),
    });
    if let Some(out) = &s.out {
        write_atomic(out, serde_json::to_string_pretty(&result).expect("json").as_bytes())?;
    }
    emit(&config(s, "split", &p, &[]), result);
    Ok(())
}

fn register_cmd(s: &Shared, first: &Path, second: &Path, center: Option<&str>) -> Outcome {
    let explicit = algebra(s)?;
    let center = parse_center(center)?;
    let image = |path: &Path| -> Outcome<Ingested> {
        match read_input(path, explicit)? {
            Input::Image(src) => Ok(src),
            _ => Err(Failure::Format(format!(
                "{}: register expects PGM or PPM images",
                path.display()
            ))),
        }
    };
    let (a, b) = (image(first)?, image(second)?);
    let p = pair(s, a.signature)?;
    let geo = image_geometry(s, &[&a, &b])?;
    let h1 = to_log_polar(&a, center, geo)?;
    let h2 = to_log_polar(&b, center, geo)?;
    let reg = register(&h1, &h2, &p)?;
    let result = serde_json::to_value(reg).expect("registration serializes");
    if let Some(out) = &s.out {
        write_atomic(out, serde_json::to_string_pretty(&result).expect("json").as_bytes())?;
    }
    let mut c = config(s, "register", &p, &[first, second]);
    c.geometry = Some(geo);
    emit(&c, result);
    if reg.matched {
        Ok(())
    } else {
        Err(Failure::NoMatch)
    }
}

fn manifold(s: &Shared, resolution: usize) -> Outcome {
    if resolution < 2 {
        return Err(Failure::Usage(format!(
            "--resolution must be at least 2, got {resolution}"
        )));
    }
    let sig = algebra(s)?.unwrap_or(Signature::Cl02);
    let points = export_manifold(sig, resolution)?;
    let csv = manifold_csv(&points);
    match &s.out {
        None => {
            let _ = std::io::stdout().lock().write_all(csv.as_bytes());
        }
        Some(out) => {
            write_atomic(out, csv.as_bytes())?;
            let worst = points
                .iter()
                .map(|q| {
                    validate_root(Multivector::new(sig, [0.0, q.b1, q.b2, q.beta])).map(|r| r.manifold_residual().abs())
                })
                .collect::<Result<Vec<f64>, Error>>()?
                .into_iter()
                .fold(0.0, f64::max);
            let mut c = config(s, "manifold", &default_pair(sig), &[]);
            c.f = [0.0; 4];
            c.g = [0.0; 4];
            emit(
                &c,
                json!({ "algebra": sig.name(), "points": points.len(), "max_constraint_residual": worst }),
            );
        }
    }
    Ok(())
}

fn descriptor_cmd(s: &Shared, input: &Path, center: Option<&str>) -> Outcome {
    let (h, p) = load_signal(s, input, center)?;
    let d = descriptor(&h, &p)?;
    let csv = d.to_csv();
    match &s.out {
        None => {
            let _ = std::io::stdout().lock().write_all(csv.as_bytes());
        }
        Some(out) => {
            write_atomic(out, csv.as_bytes())?;
            let l2 = d.magnitudes.iter().map(|m| m * m).sum::<f64>().sqrt();
            let mut c = config(s, "descriptor", &p, &[input]);
            c.geometry = Some(*h.geometry());
            emit(&c, json!({ "bins": d.magnitudes.len(), "l2": l2 }));
        }
    }
    Ok(())
}
