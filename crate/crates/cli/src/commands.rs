use std::f64::consts::PI;
use std::fs;

use lateral_vdw::corrugation::{Profile, MAX_AMPLITUDE_RATIO};
use lateral_vdw::dipole::{ClassicalDipole, DipoleTensor, EmbeddingFactor, PolarizabilitySample};
use lateral_vdw::energy::{self, Channel};
use lateral_vdw::kernels::{self, Family};
use lateral_vdw::media::{self, DielectricPair, GeometryPoint};
use lateral_vdw::presets::{self, IntermediateRequest, KernelCurveRequest, Preset};
use lateral_vdw::regimes::{self, AtlasRequest, AxisKind, AxisSpec, FixedParams, ParticleModel};
use lateral_vdw::{oracle, roots, Error, SinusoidalProfile};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::args::{AtlasArgs, ChannelArg, EnergyArgs, IntermediateArgs, ThresholdsArgs, VerifyArgs};
use crate::error::{CliError, CliResult};
use crate::output::{Cell, Report};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn floats(text: &str, n: usize, what: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(usage(format!("{what} expects {n} comma-separated numbers, got '{text}'")));
    }
    parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|_| usage(format!("{what}: '{p}' is not a number"))))
        .collect()
}

fn read(path: &std::path::Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_profile(text: &str) -> CliResult<Profile> {
    if let Ok(v) = floats(text, 2, "--profile") {
        return Ok(Profile::Sinusoidal(SinusoidalProfile::new(v[0], v[1])?));
    }
    let path = std::path::Path::new(text);
    if !path.exists() {
        return Err(usage(format!("--profile '{text}' is neither 'a,lambda' nor an existing file")));
    }
    Ok(Profile::from_json(&read(path)?)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CorrelationFile {
    Nested([[f64; 3]; 3]),
    Flat([f64; 9]),
    Samples { samples: Vec<PolarizabilitySample>, factor: f64 },
}

fn correlation_from_file(path: &std::path::Path) -> CliResult<DipoleTensor> {
    let file: CorrelationFile = serde_json::from_str(&read(path)?).map_err(|e| {
        usage(format!(
            "{}: expected a 3x3 array, nine numbers, or {{\"samples\", \"factor\"}} ({e})",
            path.display()
        ))
    })?;
    Ok(match file {
        CorrelationFile::Nested(rows) => DipoleTensor::from_rows(rows)?,
        CorrelationFile::Flat(v) => {
            DipoleTensor::from_rows([[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]]])?
        }
        CorrelationFile::Samples { samples, factor } => {
            DipoleTensor::from_polarizability(&samples, EmbeddingFactor::new(factor)?)?
        }
    })
}

pub fn energy(args: &EnergyArgs) -> CliResult<Report> {
    let pair = DielectricPair::new(args.eps1, args.eps2)?;
    let at = GeometryPoint::new(args.x0, args.y0, args.z0)?;
    let profile = parse_profile(&args.profile)?;
    let ratio = profile.max_height() / args.z0;
    if ratio > MAX_AMPLITUDE_RATIO && !args.force {
        return Err(usage(format!(
            "a/z0 = {ratio} is outside the perturbative range (<= {MAX_AMPLITUDE_RATIO}); pass --force to evaluate anyway"
        )));
    }
    let (d, default_channel, particle) = if let Some(s) = &args.dipole {
        let v = floats(s, 3, "--dipole")?;
        let d = ClassicalDipole::new(v[0], v[1], v[2])?;
        (d.tensor(), Channel::Classical, json!({"dipole": v}))
    } else if let Some(s) = &args.uniaxial {
        let v = floats(s, 4, "--uniaxial")?;
        (DipoleTensor::uniaxial(v[0], v[1], v[2], v[3])?, Channel::Vdw, json!({"uniaxial": v}))
    } else if let Some(path) = &args.correlation {
        let d = correlation_from_file(path)?;
        (d, Channel::Vdw, json!({"correlation": d.rows()}))
    } else {
        return Err(usage("one of --dipole, --uniaxial, --correlation is required"));
    };
    let channel = match args.channel {
        Some(ChannelArg::Classical) => Channel::Classical,
        Some(ChannelArg::Vdw) => Channel::Vdw,
        None => default_channel,
    };
    let convert = |v: f64| if args.si { media::reduced_to_si(v) } else { v };
    let u0 = energy::u0(channel, &d, &pair, args.z0)?;
    let (u1, decomposition) = match &profile {
        Profile::Sinusoidal(p) => {
            let dec = energy::bc_decomposition(&d, &pair, p.k() * args.z0)?;
            let u1 = energy::u1_sinusoidal(channel, &d, &pair, p, &at)?;
            let x_min = match energy::x_min(&dec, p) {
                Ok(x) => Some(x),
                Err(Error::NoLateralForce) => None,
                Err(e) => return Err(e.into()),
            };
            (u1, Some((dec, x_min)))
        }
        Profile::Modes(f) => (energy::u1_general(channel, &d, &pair, f, &at)?, None),
    };
    let (a, b, c, delta, x_min, regime) = match decomposition {
        Some((dec, x_min)) => {
            let label = regimes::classify(&dec, regimes::B_ZERO_TOL);
            (
                Cell::Num(dec.amplitude),
                Cell::Num(dec.b),
                Cell::Num(dec.c),
                if dec.amplitude > 0.0 { Cell::Num(dec.delta) } else { Cell::Missing },
                Cell::from(x_min),
                Cell::from(label.kind.name()),
            )
        }
        None => (Cell::Missing, Cell::Missing, Cell::Missing, Cell::Missing, Cell::Missing, Cell::Missing),
    };
    let params = json!({
        "command": "energy",
        "eps1": args.eps1,
        "eps2": args.eps2,
        "profile": args.profile,
        "z0": args.z0,
        "x0": args.x0,
        "y0": args.y0,
        "channel": format!("{channel:?}").to_lowercase(),
        "particle": particle,
        "si": args.si,
    });
    let mut extra = Map::new();
    extra.insert("reduced_units".into(), Value::Bool(!args.si));
    extra.insert("validity".into(), serde_json::to_value(u1.validity).unwrap_or(Value::Null));
    Ok(Report::record(
        params,
        vec![
            ("u0", Cell::Num(convert(u0.value))),
            ("u1", Cell::Num(convert(u1.value))),
            ("A", a),
            ("B", b),
            ("C", c),
            ("delta", delta),
            ("x_min", x_min),
            ("regime", regime),
        ],
        extra,
    ))
}

pub fn parse_particle(text: &str) -> CliResult<ParticleModel> {
    let (name, arg) = text.split_once(':').map_or((text, None), |(a, b)| (a, Some(b)));
    match (name, arg) {
        ("classical", None) => Ok(ParticleModel::ClassicalDipole),
        ("isotropic", None) => Ok(ParticleModel::Isotropic),
        ("uniaxial", None) => Ok(ParticleModel::Uniaxial { transverse_ratio: regimes::UNIAXIAL_TRANSVERSE_RATIO }),
        ("uniaxial", Some(r)) => {
            let transverse_ratio: f64 = r.parse().map_err(|_| usage(format!("bad transverse ratio '{r}'")))?;
            if !(transverse_ratio > 0.0 && transverse_ratio <= 1.0) {
                return Err(usage(format!("transverse ratio must lie in (0, 1], got {transverse_ratio}")));
            }
            Ok(ParticleModel::Uniaxial { transverse_ratio })
        }
        _ => Err(usage(format!("unknown particle '{text}' (classical, isotropic, uniaxial[:ratio])"))),
    }
}

fn parse_axis(text: &str) -> CliResult<AxisSpec> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(usage(format!("axis '{text}' should be kind,min,max,n")));
    }
    let kind = match parts[0] {
        "lambda_over_z0" => AxisKind::LambdaOverZ0,
        "ratio" => AxisKind::Ratio,
        "phi" => AxisKind::Phi,
        k => return Err(usage(format!("unknown axis kind '{k}' (lambda_over_z0, ratio, phi)"))),
    };
    let num = |s: &str| s.parse::<f64>().map_err(|_| usage(format!("axis '{text}': '{s}' is not a number")));
    let n = parts[3].parse::<usize>().map_err(|_| usage(format!("axis '{text}': bad point count")))?;
    Ok(AxisSpec { kind, min: num(parts[1])?, max: num(parts[2])?, n, periodic: kind == AxisKind::Phi })
}

fn unknown_preset(name: &str, wanted: &str) -> CliError {
    usage(format!("'{name}' is not a {wanted} preset; known presets: {}", presets::NAMES.join(", ")))
}

pub fn atlas(args: &AtlasArgs) -> CliResult<Report> {
    let req = match (&args.preset, &args.x_axis, &args.y_axis) {
        (Some(name), _, _) => match presets::preset(name) {
            Some(Preset::Atlas(r)) => r,
            _ => return Err(unknown_preset(name, "regime-map")),
        },
        (None, Some(x), Some(y)) => AtlasRequest {
            x: parse_axis(x)?,
            y: parse_axis(y)?,
            fixed: FixedParams { ratio: args.ratio, lambda_over_z0: args.lambda_over_z0, theta: args.theta, phi: args.phi },
            particle: parse_particle(&args.particle)?,
        },
        _ => return Err(usage("atlas needs --preset or both --x-axis and --y-axis")),
    };
    let grid = regimes::atlas(&req)?;
    let rows = grid
        .cells
        .iter()
        .map(|c| {
            vec![
                c.ratio.into(),
                c.lambda_over_z0.into(),
                c.phi.into(),
                c.theta.into(),
                c.decomposition.b.into(),
                c.decomposition.c.into(),
                if c.decomposition.amplitude > 0.0 { c.decomposition.delta.into() } else { Cell::Missing },
                c.label.kind.name().into(),
                c.label.x_min_over_lambda.into(),
                c.boundary.into(),
            ]
        })
        .collect();
    let params = json!({"command": "atlas", "preset": args.preset, "request": req});
    Ok(Report::table(
        params,
        vec!["ratio", "lambda_over_z0", "phi", "theta", "B", "C", "delta", "regime", "x_min_over_lambda", "boundary"],
        rows,
    ))
}

fn kernel_curves(name: &str, req: &KernelCurveRequest) -> CliResult<Report> {
    let mut rows = Vec::with_capacity(req.n);
    for u in roots::linspace(req.u_min, req.u_max, req.n) {
        let r = kernels::radial(req.family, u)?;
        rows.push(vec![
            req.family.name().into(),
            u.into(),
            (2.0 * PI / u).into(),
            r.xx.into(),
            r.yy.into(),
            r.zz.into(),
            r.xz.into(),
        ]);
    }
    Ok(Report::table(
        json!({"command": "thresholds", "preset": name, "request": req}),
        vec!["family", "u", "lambda_over_z0", "r_xx", "r_yy", "r_zz", "r_xz"],
        rows,
    ))
}

pub fn thresholds(args: &ThresholdsArgs) -> CliResult<Report> {
    if let Some(name) = &args.preset {
        return match presets::preset(name) {
            Some(Preset::KernelCurves(req)) => kernel_curves(name, &req),
            _ => Err(unknown_preset(name, "kernel-curve")),
        };
    }
    let rows = regimes::thresholds_table()?
        .into_iter()
        .map(|r| {
            vec![
                r.family.as_str().into(),
                r.component.as_str().into(),
                r.u_root.into(),
                r.lambda_over_z0_root.into(),
                r.ratio.into(),
            ]
        })
        .collect();
    Ok(Report::table(
        json!({"command": "thresholds", "uniaxial_transverse_ratio": regimes::UNIAXIAL_TRANSVERSE_RATIO}),
        vec!["family", "component", "u_root", "lambda_over_z0_root", "ratio"],
        rows,
    ))
}

pub fn intermediate(args: &IntermediateArgs) -> CliResult<Report> {
    let req = match &args.preset {
        Some(name) => match presets::preset(name) {
            Some(Preset::Intermediate(r)) => r,
            _ => return Err(unknown_preset(name, "intermediate-regime")),
        },
        None => IntermediateRequest {
            particle: parse_particle(&args.particle)?,
            phi: args.phi,
            lambda_over_z0: args.lambda_over_z0,
            ratios: args.ratio.clone(),
            n_theta: args.n_theta,
        },
    };
    let mut rows = Vec::new();
    for &ratio in &req.ratios {
        let pair = DielectricPair::from_ratio(ratio)?;
        for p in regimes::intermediate_curve(&req.particle, req.phi, &pair, req.lambda_over_z0, req.n_theta)? {
            rows.push(vec![ratio.into(), req.lambda_over_z0.into(), p.theta.into(), p.x_min_over_lambda.into()]);
        }
    }
    Ok(Report::table(
        json!({"command": "intermediate", "preset": args.preset, "request": req}),
        vec!["ratio", "lambda_over_z0", "theta", "x_min_over_lambda"],
        rows,
    ))
}

const KERNEL_TOL: f64 = 1e-6;
const ENERGY_TOL: f64 = 1e-4;

/// Outcome of `verify`: the report, and whether every check passed.
pub fn verify(args: &VerifyArgs) -> CliResult<(Report, bool)> {
    let mut rows = Vec::new();
    let mut all_ok = true;
    let mut push = |name: String, err: f64, tol: f64| {
        let ok = err <= tol;
        all_ok &= ok;
        rows.push(vec![Cell::Text(name), err.into(), tol.into(), (if ok { "pass" } else { "fail" }).into()]);
    };
    for fam in Family::ALL {
        for u in [0.5, 1.0, 2.0, 5.0] {
            let mut worst: f64 = 0.0;
            for angle in [0.0, 0.6] {
                let (qx, qy) = (u * f64::cos(angle), u * f64::sin(angle));
                let exact = kernels::kernel(fam, qx, qy)?;
                let brute = oracle::kernel_by_quadrature(fam, qx, qy)?;
                for i in 0..3 {
                    for j in 0..3 {
                        worst = worst.max((exact.get(i, j) - brute.get(i, j)).norm() / exact.max_norm());
                    }
                }
            }
            push(format!("kernel {} u={u}", fam.name()), worst, KERNEL_TOL);
        }
    }
    let configs = [
        ("classical r=0.5", ParticleModel::ClassicalDipole, 0.5, 2.0, 0.01, PI / 4.0, 0.0),
        ("classical r=2.5", ParticleModel::ClassicalDipole, 2.5, 4.0, 0.05, 1.2, 2.0),
        ("uniaxial conductor", ParticleModel::Uniaxial { transverse_ratio: 0.6 }, 1e-8, 1.5, 0.02, 0.9, 0.4),
        ("isotropic r=0.5", ParticleModel::Isotropic, 0.5, 3.0, 0.04, 0.0, 0.0),
        ("uniaxial r=4", ParticleModel::Uniaxial { transverse_ratio: 0.3 }, 4.0, 1.0, 0.02, 2.1, 5.0),
    ];
    let take = if args.quick { 1 } else { configs.len() };
    for (name, particle, ratio, lambda, a, theta, phi) in configs.into_iter().take(take) {
        let d = particle.tensor(theta, phi)?;
        let pair = DielectricPair::from_ratio(ratio)?;
        let prof = SinusoidalProfile::new(a, lambda)?;
        let at = GeometryPoint::new(0.3 * lambda, 0.0, 1.0)?;
        let channel = particle.channel();
        let fd = oracle::energy_by_finite_difference(channel, &d, &pair, &prof, &at)?.value;
        let exact = energy::total_sinusoidal(channel, &d, &pair, &prof, &at)?.value;
        push(format!("energy {name}"), (fd / exact - 1.0).abs(), ENERGY_TOL);
    }
    let report = Report::table(
        json!({"command": "verify", "quick": args.quick}),
        vec!["check", "max_rel_error", "tolerance", "status"],
        rows,
    );
    Ok((report, all_ok))
}
