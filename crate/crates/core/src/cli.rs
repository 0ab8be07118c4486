//! Command-line front end: `verify`, `action` and `dispersion`.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::action::{
    compare_closed_form, fermionic_action, promote_weyl, ClosedForm, ClosedFormSpec,
};
use crate::clifford::{spin_boost, SpinBoost, C64};
use crate::dynamics::{boosted_dirac_system, boosted_identification, boosted_weyl_system, dirac_system, weyl_system, DispersionResult, Handedness};
use crate::error::{Result, TwistError};
use crate::geometry::{build_triple, FluctuationFields};
use crate::grassmann::GrassmannNumber;
use crate::operator::Geometry;
use crate::random;
use crate::torus::{FourierScalar, Mode, SpinorSection};
use crate::verify::{self, parse_groups, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const SEED_ENV: &str = "TWISTKIT_SEED";

#[derive(Parser, Debug)]
#[command(name = "twistkit", version, about = "Twisted spectral triples on the flat 4-torus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the check registry and report.
    Verify(VerifyArgs),
    /// Evaluate the fermionic action on seeded or supplied data.
    Action(ActionArgs),
    /// Solve a plane-wave system.
    Dispersion(DispersionArgs),
}

#[derive(Args, Debug, Default)]
pub struct VerifyArgs {
    #[arg(long)]
    pub seed: Option<u64>,
    /// key = value configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated group list.
    #[arg(long)]
    pub groups: Option<String>,
    /// Write the JSON report here.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long = "mode-cutoff")]
    pub mode_cutoff: Option<i32>,
    #[arg(long = "probe-cutoff")]
    pub probe_cutoff: Option<i32>,
    #[arg(long)]
    pub rapidity: Option<f64>,
    /// Record wall-clock times in the report.
    #[arg(long)]
    pub timings: bool,
    /// List check ids and exit.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug)]
pub struct ActionArgs {
    #[arg(long, value_parser = Geometry::parse)]
    pub geometry: Option<Geometry>,
    /// JSON input with geometry, d, f, g and Weyl data.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Evaluate on zero data.
    #[arg(long)]
    pub zero: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "mode-cutoff", default_value_t = 2)]
    pub mode_cutoff: i32,
    /// Finite mass parameter `re,im` for electrodynamics (default 0,1).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub d: Option<C64>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DispersionKind {
    WeylLeft,
    WeylRight,
    Dirac,
    DiracPrimed,
    BoostedWeylLeft,
    BoostedWeylRight,
    BoostedDirac,
    BoostedDiracPrimed,
}

#[derive(Args, Debug)]
pub struct DispersionArgs {
    #[arg(value_enum)]
    pub kind: DispersionKind,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub f0: f64,
    /// Four-vector f for the boosted systems.
    #[arg(long, value_parser = parse_vec4, allow_hyphen_values = true)]
    pub f: Option<[f64; 4]>,
    /// Gauge field, three spatial (or four) components.
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    /// Real mass; sets d = i·m.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<f64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub d: Option<C64>,
    /// Momentum `p0,p1,p2,p3`, or `p1,p2,p3` with p₀ = ∓f₀ (unboosted
    /// kinds) or p₀ = 0 (boosted kinds).
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// Boost `b_half,nx,ny,nz`.
    #[arg(long, value_parser = parse_vec4, allow_hyphen_values = true)]
    pub boost: Option<[f64; 4]>,
}

fn parse_reals(s: &str) -> std::result::Result<Vec<f64>, String> {
    s.split(',').map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"))).collect()
}

fn parse_vec4(s: &str) -> std::result::Result<[f64; 4], String> {
    let v = parse_reals(s)?;
    v.try_into().map_err(|v: Vec<f64>| format!("expected 4 numbers, got {}", v.len()))
}

fn parse_complex(s: &str) -> std::result::Result<C64, String> {
    match parse_reals(s)?.as_slice() {
        [re] => Ok(C64::new(*re, 0.0)),
        [re, im] => Ok(C64::new(*re, *im)),
        _ => Err("expected re or re,im".into()),
    }
}

/// Builds the run configuration from file, environment and flags, in
/// increasing precedence.
pub fn run_config(args: &VerifyArgs, env_seed: Option<String>) -> Result<RunConfig> {
    let mut config = RunConfig::default();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path).map_err(|e| TwistError::Config(format!("{}: {e}", path.display())))?;
        config.apply_file(&text)?;
    }
    if let Some(s) = env_seed {
        config.seed = s.trim().parse().map_err(|_| TwistError::Config(format!("{SEED_ENV} is not an integer: {s:?}")))?;
    }
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if let Some(g) = &args.groups {
        config.groups = parse_groups(g)?;
    }
    if let Some(k) = args.mode_cutoff {
        config.mode_cutoff = k;
    }
    if let Some(k) = args.probe_cutoff {
        config.probe_cutoff = k;
    }
    if let Some(r) = args.rapidity {
        config.rapidity_max = r;
    }
    config.timings |= args.timings;
    config.validate()?;
    Ok(config)
}

// ------------------------------------------------------------ action input

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModeCoefficient {
    pub k: Mode,
    pub c: [f64; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpinorMode {
    pub k: Mode,
    pub v: [[f64; 2]; 2],
}

/// Action input file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionInput {
    pub geometry: Geometry,
    #[serde(default)]
    pub d: [f64; 2],
    #[serde(default)]
    pub f: [Vec<ModeCoefficient>; 4],
    #[serde(default)]
    pub g: [Vec<ModeCoefficient>; 4],
    pub weyl: Vec<Vec<SpinorMode>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientEntry {
    pub i: u32,
    pub j: u32,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionReport {
    pub geometry: Geometry,
    pub d: C64,
    pub generators: usize,
    /// Nonzero entries c_ij (i < j) of Σ c_ij θ_iθ_j.
    pub coefficients: Vec<CoefficientEntry>,
    pub parts: Vec<(String, Vec<CoefficientEntry>)>,
    pub closed_form: Option<String>,
    /// `None` when no closed form applies (electrodynamics with Re d ≠ 0).
    pub closed_form_error: Option<f64>,
}

fn to_scalar(modes: &[ModeCoefficient]) -> FourierScalar {
    FourierScalar::from_pairs(modes.iter().map(|m| (m.k, C64::new(m.c[0], m.c[1]))))
}

impl ActionInput {
    pub fn zero(geometry: Geometry) -> Self {
        Self {
            geometry,
            d: [0.0, 0.0],
            f: Default::default(),
            g: Default::default(),
            weyl: vec![Vec::new(); geometry.finite_dim()],
        }
    }

    /// Seeded instance with coupled fields; `d` applies to electrodynamics.
    pub fn random(geometry: Geometry, seed: u64, cutoff: i32, d: C64) -> Self {
        let mut rng = random::stream(seed, &format!("action.{}", geometry.name()));
        let weyl = random::weyl_data(&mut rng, geometry.finite_dim(), cutoff);
        let f = random::coupled_real_fields(&mut rng, &weyl);
        let g = if geometry == Geometry::Manifold {
            std::array::from_fn(|_| FourierScalar::zero())
        } else {
            random::coupled_real_fields(&mut rng, &weyl)
        };
        let coeffs = |s: &FourierScalar| s.iter().map(|(k, c)| ModeCoefficient { k: *k, c: [c.re, c.im] }).collect();
        Self {
            geometry,
            d: if geometry == Geometry::Electrodynamics { [d.re, d.im] } else { [0.0, 0.0] },
            f: std::array::from_fn(|mu| coeffs(&f[mu])),
            g: std::array::from_fn(|mu| coeffs(&g[mu])),
            weyl: weyl
                .iter()
                .map(|w| w.modes().map(|(k, v)| SpinorMode { k: *k, v: [[v[0].re, v[0].im], [v[1].re, v[1].im]] }).collect())
                .collect(),
        }
    }

    fn fields(&self) -> Result<([FourierScalar; 4], [FourierScalar; 4], Vec<SpinorSection>)> {
        let g = self.geometry;
        let f: [FourierScalar; 4] = std::array::from_fn(|mu| to_scalar(&self.f[mu]));
        let gauge: [FourierScalar; 4] = std::array::from_fn(|mu| to_scalar(&self.g[mu]));
        let mismatch = |what: &str| TwistError::GeometryMismatch { expected: g.name().into(), got: what.into() };
        if f.iter().chain(&gauge).any(|s| !s.is_real(1e-12)) {
            return Err(TwistError::Parse("f and g must be real fields".into()));
        }
        if g == Geometry::Manifold && gauge.iter().any(|s| !s.is_empty()) {
            return Err(mismatch("gauge field on the manifold"));
        }
        if g != Geometry::Electrodynamics && (self.d[0] != 0.0 || self.d[1] != 0.0) {
            return Err(mismatch("finite mass parameter"));
        }
        if self.weyl.len() != g.finite_dim() {
            return Err(mismatch(&format!("{} Weyl fields", self.weyl.len())));
        }
        let weyl = self
            .weyl
            .iter()
            .map(|w| SpinorSection::from_modes(2, w.iter().map(|m| (m.k, m.v.iter().map(|c| C64::new(c[0], c[1])).collect()))))
            .collect::<Result<Vec<_>>>()?;
        Ok((f, gauge, weyl))
    }
}

fn entries(value: &GrassmannNumber) -> Vec<CoefficientEntry> {
    value
        .terms()
        .filter(|(k, c)| k.len() == 2 && c.norm() > 0.0)
        .map(|(k, c)| CoefficientEntry { i: k[0], j: k[1], re: c.re, im: c.im })
        .collect()
}

/// Evaluates the action and its closed-form comparison.
pub fn evaluate_action(input: &ActionInput) -> Result<ActionReport> {
    let g = input.geometry;
    let (f, gauge, weyl) = input.fields()?;
    let d = C64::new(input.d[0], input.d[1]);
    let triple = build_triple(g, d);
    let fluct = FluctuationFields::from_real(g, f.clone(), gauge.clone());
    let (w, reg) = promote_weyl(&weyl);
    let av = fermionic_action(&triple, &fluct, &w)?;
    let form = match g {
        Geometry::Manifold => Some(ClosedForm::ManifoldWeyl),
        Geometry::Doubled => Some(ClosedForm::DoubledWeyl),
        Geometry::Electrodynamics if d.re == 0.0 => Some(ClosedForm::ElectrodynamicsDirac),
        Geometry::Electrodynamics => None,
    };
    let closed_form_error = match form {
        Some(form) => {
            let spec = ClosedFormSpec { form, weyl: w.clone(), f, g: gauge, d, boost: None };
            Some(compare_closed_form(&triple, &fluct, &spec)?)
        }
        None => None,
    };
    Ok(ActionReport {
        geometry: g,
        d,
        generators: reg.len(),
        coefficients: entries(&av.value),
        parts: av.parts.iter().map(|(n, v)| (n.clone(), entries(v))).collect(),
        closed_form: form.map(|f| f.name().to_string()),
        closed_form_error,
    })
}

fn format_action(r: &ActionReport) -> String {
    let mut out = format!("geometry {}  d = {}{:+}i  generators {}\n", r.geometry.name(), r.d.re, r.d.im, r.generators);
    out.push_str(&format!("degree-2 coefficients ({} nonzero):\n", r.coefficients.len()));
    for e in &r.coefficients {
        out.push_str(&format!("  θ{}θ{}  {:+.12e} {:+.12e}i\n", e.i, e.j, e.re, e.im));
    }
    for (name, es) in &r.parts {
        let max = es.iter().map(|e| C64::new(e.re, e.im).norm()).fold(0.0, f64::max);
        out.push_str(&format!("part {name}: {} nonzero, max |c| {max:.6e}\n", es.len()));
    }
    match (&r.closed_form, r.closed_form_error) {
        (Some(n), Some(e)) => out.push_str(&format!("closed form {n}: max coefficient difference {e:.3e}\n")),
        _ => out.push_str("closed form: n/a\n"),
    }
    out
}

// -------------------------------------------------------------- dispersion

pub fn evaluate_dispersion(a: &DispersionArgs) -> Result<DispersionResult> {
    let f = a.f.unwrap_or([a.f0, 0.0, 0.0, 0.0]);
    use DispersionKind as K;
    let identified_p0 = match a.kind {
        K::WeylLeft | K::Dirac => -a.f0,
        K::WeylRight | K::DiracPrimed => a.f0,
        // boosted symbols carry the energy in f₀
        _ => 0.0,
    };
    let parse = |s: &Option<String>| -> Result<Option<Vec<f64>>> {
        s.as_deref().map(parse_reals).transpose().map_err(TwistError::Parse)
    };
    let p: [f64; 4] = match parse(&a.p)?.as_deref() {
        None => match a.kind {
            K::BoostedWeylLeft => boosted_identification(f, Handedness::Left),
            K::BoostedWeylRight => boosted_identification(f, Handedness::Right),
            _ => [identified_p0, 0.0, 0.0, 0.0],
        },
        Some([x, y, z]) => [identified_p0, *x, *y, *z],
        Some([t, x, y, z]) => [*t, *x, *y, *z],
        Some(v) => return Err(TwistError::Parse(format!("p needs 3 or 4 components, got {}", v.len()))),
    };
    let d = match (a.d, a.m) {
        (Some(d), _) => d,
        (None, Some(m)) => C64::new(0.0, m),
        (None, None) => C64::new(0.0, 0.0),
    };
    let g = parse(&a.g)?.unwrap_or_default();
    let g3 = |g: &[f64]| -> Result<[f64; 3]> {
        match g.len() {
            0 => Ok([0.0; 3]),
            3 => Ok([g[0], g[1], g[2]]),
            4 => Ok([g[1], g[2], g[3]]),
            n => Err(TwistError::Parse(format!("g needs 3 or 4 components, got {n}"))),
        }
    };
    let g4 = |g: &[f64]| -> Result<[f64; 4]> {
        match g.len() {
            0 => Ok([0.0; 4]),
            3 => Ok([0.0, g[0], g[1], g[2]]),
            4 => Ok([g[0], g[1], g[2], g[3]]),
            n => Err(TwistError::Parse(format!("g needs 3 or 4 components, got {n}"))),
        }
    };
    let boost = || -> Result<SpinBoost> {
        match a.boost {
            Some([b, nx, ny, nz]) => spin_boost(b, [nx, ny, nz]),
            None => Ok(SpinBoost::identity()),
        }
    };
    Ok(match a.kind {
        K::WeylLeft => weyl_system(a.f0, p, Handedness::Left),
        K::WeylRight => weyl_system(a.f0, p, Handedness::Right),
        K::Dirac => dirac_system(a.f0, g3(&g)?, d, p, false),
        K::DiracPrimed => dirac_system(a.f0, g3(&g)?, d, p, true),
        K::BoostedWeylLeft => boosted_weyl_system(&boost()?, f, p, Handedness::Left)?,
        K::BoostedWeylRight => boosted_weyl_system(&boost()?, f, p, Handedness::Right)?,
        K::BoostedDirac => boosted_dirac_system(&boost()?, f, g4(&g)?, d, p, false)?,
        K::BoostedDiracPrimed => boosted_dirac_system(&boost()?, f, g4(&g)?, d, p, true)?,
    })
}

fn fmt_c(z: C64) -> String {
    format!("{:+.6} {:+.6}i", z.re, z.im)
}

fn format_dispersion(r: &DispersionResult) -> String {
    let mut out = format!("determinant {}\n", fmt_c(r.determinant));
    out.push_str(&format!("p0 roots {:?}\n", r.p0_roots));
    out.push_str(&format!("admissible roots {:?}\n", r.admissible_roots));
    out.push_str(&format!("identified {}\n", r.identified));
    out.push_str(&format!("kernel dimension {}\n", r.kernel.len()));
    for v in &r.kernel {
        out.push_str(&format!("  ({})\n", v.iter().map(|z| fmt_c(*z)).collect::<Vec<_>>().join(", ")));
    }
    out.push_str(&format!("reduction residual {:.3e}\nkernel residual {:.3e}\n", r.reduction_residual, r.kernel_residual));
    out
}

// -------------------------------------------------------------------- main

fn write_json(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| TwistError::Config(format!("{}: {e}", path.display())))
}

fn usage(e: TwistError) -> i32 {
    eprintln!("error: {e}");
    EXIT_USAGE
}

/// Runs the CLI on `args` (including the program name); returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Verify(a) => {
            if a.list {
                for id in verify::check_ids() {
                    println!("{id}");
                }
                return EXIT_OK;
            }
            let config = match run_config(&a, std::env::var(SEED_ENV).ok()) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let report = match verify::run(&config) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            print!("{}", report.summary());
            if let Some(path) = &a.json {
                if let Err(e) = write_json(path, &report.to_json()) {
                    return usage(e);
                }
            }
            if report.failures() == 0 {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        Command::Action(a) => {
            let geometry = a.geometry;
            let input = match (&a.input, a.zero, geometry) {
                (Some(path), _, _) => {
                    let parsed = std::fs::read_to_string(path)
                        .map_err(|e| TwistError::Parse(format!("{}: {e}", path.display())))
                        .and_then(|t| serde_json::from_str::<ActionInput>(&t).map_err(|e| TwistError::Parse(e.to_string())));
                    match parsed {
                        Ok(i) if geometry.is_none_or(|g| g == i.geometry) => i,
                        Ok(i) => {
                            return usage(TwistError::GeometryMismatch {
                                expected: geometry.map_or("", |g| g.name()).into(),
                                got: i.geometry.name().into(),
                            })
                        }
                        Err(e) => return usage(e),
                    }
                }
                (None, true, Some(g)) => ActionInput::zero(g),
                (None, false, Some(g)) => {
                    let seed = a.seed.or_else(|| std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok())).unwrap_or(0);
                    ActionInput::random(g, seed, a.mode_cutoff, a.d.unwrap_or(C64::new(0.0, 1.0)))
                }
                (None, _, None) => return usage(TwistError::Config("--geometry or --input is required".into())),
            };
            match evaluate_action(&input) {
                Ok(r) => {
                    print!("{}", format_action(&r));
                    if let Some(path) = &a.json {
                        if let Err(e) = write_json(path, &serde_json::to_string_pretty(&r).expect("serializes")) {
                            return usage(e);
                        }
                    }
                    match r.closed_form_error {
                        Some(e) if e > 1e-10 => EXIT_FAIL,
                        _ => EXIT_OK,
                    }
                }
                Err(e) => usage(e),
            }
        }
        Command::Dispersion(a) => match evaluate_dispersion(&a) {
            Ok(r) => {
                print!("{}", format_dispersion(&r));
                EXIT_OK
            }
            Err(e) => usage(e),
        },
    }
}
