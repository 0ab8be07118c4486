//! Batch verification: a registry of seeded checks grouped by topic, a run
//! configuration, and the JSON report.
//!
//! Every check draws from its own ChaCha stream keyed by `(seed, check_id)`,
//! so the outcome of one check never depends on which others ran. Checks run
//! in parallel and the report is sorted by `check_id`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::action::{
    action_on_vector, bilinear_form, boosted_action, boosted_dirac_lagrangian_symmetric_mass,
    boosted_dirac_lagrangian_substituted, closed_form_action, compare_closed_form, covariant_operator,
    dirac_lagrangian, fermionic_action, identify_physical, plain_form, promote_weyl,
    weyl_lagrangian, BoostScheme, ClosedForm, ClosedFormSpec, Identification,
};
use crate::clifford::{
    charge_conjugation, gamma5, gamma_euclidean, gamma_minkowski, lorentz_from_sigma_relation,
    lorentz_from_tilde_relation, FiberMatrix, SpinBoost, C64, ETA, I, ONE,
};
use crate::dynamics::{
    boosted_dirac_system, boosted_identification, boosted_weyl_system, dirac_system, euler_lagrange_check, kernel,
    minkowski_left, minkowski_right, weyl_system, Handedness, Lagrangian,
};
use crate::error::{Result, TwistError};
use crate::geometry::{
    adjoint_action, assemble_slots, build_triple, free_dirac, chiral_real_intersection, extract_fields, extract_one_form,
    fluctuate, gauge_transform, hr_vector, one_form, phase_unitary, fluctuation_from_fields,
    FluctuationFields, SlotFields, TwistedTriple,
};
use crate::grassmann::{bilinear_grassmann, dense_antisymmetrized, GrassmannNumber};
use crate::operator::{operator_equal_tol, twisted_commutator, AlgebraElement, FieldOperator, Geometry};
use crate::random;
use crate::torus::{Coefficient, FourierScalar, Mode, SpinorSection};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Clifford,
    Axioms,
    Manifold,
    Doubled,
    Electrodynamics,
    Gauge,
    Actions,
    Boost,
    Dynamics,
}

impl Group {
    pub const ALL: [Group; 9] = [
        Group::Clifford,
        Group::Axioms,
        Group::Manifold,
        Group::Doubled,
        Group::Electrodynamics,
        Group::Gauge,
        Group::Actions,
        Group::Boost,
        Group::Dynamics,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::Clifford => "clifford",
            Group::Axioms => "axioms",
            Group::Manifold => "manifold",
            Group::Doubled => "doubled",
            Group::Electrodynamics => "electrodynamics",
            Group::Gauge => "gauge",
            Group::Actions => "actions",
            Group::Boost => "boost",
            Group::Dynamics => "dynamics",
        }
    }

    fn of_geometry(g: Geometry) -> Group {
        match g {
            Geometry::Manifold => Group::Manifold,
            Geometry::Doubled => Group::Doubled,
            Geometry::Electrodynamics => Group::Electrodynamics,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Group {
    type Err = TwistError;
    fn from_str(s: &str) -> Result<Group> {
        Group::ALL.iter().copied().find(|g| g.name() == s.trim()).ok_or_else(|| TwistError::UnknownGroup(s.trim().to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub mode_cutoff: i32,
    pub probe_cutoff: i32,
    pub rapidity_max: f64,
    /// Per-group tolerance overrides.
    pub tolerances: BTreeMap<Group, f64>,
    pub groups: BTreeSet<Group>,
    /// Record wall-clock times; off by default so reports are reproducible.
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            mode_cutoff: 2,
            probe_cutoff: 3,
            rapidity_max: 2.0,
            tolerances: BTreeMap::new(),
            groups: Group::ALL.iter().copied().collect(),
            timings: false,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| TwistError::Config(format!("bad value for {key}: {value:?}")))
}

pub fn parse_groups(list: &str) -> Result<BTreeSet<Group>> {
    list.split(',').filter(|s| !s.trim().is_empty()).map(Group::from_str).collect()
}

impl RunConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim();
        match key {
            "seed" => self.seed = parse_num(key, value)?,
            "mode_cutoff" => self.mode_cutoff = parse_num(key, value)?,
            "probe_cutoff" => self.probe_cutoff = parse_num(key, value)?,
            "rapidity_max" => self.rapidity_max = parse_num(key, value)?,
            "groups" => self.groups = parse_groups(value)?,
            "timings" => self.timings = parse_num(key, value)?,
            _ => match key.strip_prefix("tolerance.") {
                Some(g) => {
                    let group = Group::from_str(g)?;
                    self.tolerances.insert(group, parse_num(key, value)?);
                }
                None => return Err(TwistError::Config(format!("unknown key {key:?}"))),
            },
        }
        Ok(())
    }

    /// Applies a flat `key = value` file; `#` starts a comment.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| TwistError::Config(format!("line {}: expected key = value", n + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode_cutoff < 1 || self.probe_cutoff < 1 {
            return Err(TwistError::Config("cutoffs must be at least 1".into()));
        }
        if !(self.rapidity_max >= 0.0) || !self.rapidity_max.is_finite() {
            return Err(TwistError::Config("rapidity_max must be a finite number ≥ 0".into()));
        }
        if self.tolerances.values().any(|t| !(*t >= 0.0)) {
            return Err(TwistError::Config("tolerances must be ≥ 0".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    /// The identity being checked.
    pub reference: String,
    pub status: Status,
    /// `null` when the check could not be evaluated.
    pub max_abs_error: Option<f64>,
    pub tolerance: f64,
    pub seed: u64,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let err = c.max_abs_error.map_or("n/a".to_string(), |e| format!("{e:.3e}"));
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            out.push_str(&format!("{status} {:<52} err {err:>10} tol {:.1e}\n", c.check_id, c.tolerance));
        }
        let pass = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        out.push_str(&format!("{} checks: {} passed, {} failed\n", self.checks.len(), pass, self.failures()));
        out
    }
}

/// Inputs shared by all checks.
pub struct Ctx<'a> {
    pub config: &'a RunConfig,
    pub check_id: &'a str,
}

impl Ctx<'_> {
    pub fn rng(&self) -> ChaCha8Rng {
        random::stream(self.config.seed, self.check_id)
    }
}

type CheckFn = Box<dyn Fn(&Ctx) -> Result<f64> + Send + Sync>;

pub struct Check {
    pub id: String,
    pub group: Group,
    pub reference: String,
    pub tolerance: f64,
    run: CheckFn,
}

fn check(id: impl Into<String>, group: Group, reference: impl Into<String>, tolerance: f64, run: CheckFn) -> Check {
    Check { id: id.into(), group, reference: reference.into(), tolerance, run }
}

/// Runs the selected groups.
pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let checks: Vec<Check> = registry().into_iter().filter(|c| config.groups.contains(&c.group)).collect();
    let mut records: Vec<CheckRecord> = checks
        .par_iter()
        .map(|c| {
            let tol = config.tolerances.get(&c.group).copied().unwrap_or(c.tolerance);
            let start = Instant::now();
            let outcome = (c.run)(&Ctx { config, check_id: &c.id });
            let elapsed = if config.timings { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
            let (status, err) = match outcome {
                Ok(e) if e.is_finite() && e <= tol => (Status::Pass, Some(e)),
                Ok(e) if e.is_finite() => (Status::Fail, Some(e)),
                _ => (Status::Fail, None),
            };
            CheckRecord {
                check_id: c.id.clone(),
                reference: c.reference.clone(),
                status,
                max_abs_error: err,
                tolerance: tol,
                seed: config.seed,
                elapsed_ms: elapsed,
            }
        })
        .collect();
    records.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(Report { config: config.clone(), checks: records })
}

/// Ids of all registered checks, sorted.
pub fn check_ids() -> Vec<String> {
    let mut ids: Vec<String> = registry().into_iter().map(|c| c.id).collect();
    ids.sort();
    ids
}

// ---------------------------------------------------------------- helpers

const SAMPLES: usize = 20;
const FIELD_DRAWS: usize = 1000;
const SWEEP: usize = 1000;
const CLOSED_FORM_INSTANCES: usize = 10;
const BOOSTS: usize = 5;

fn opmax(o: &FieldOperator) -> f64 {
    o.max_abs()
}

/// Coefficient difference, infinite when the reference value is zero so a
/// vacuous comparison cannot pass.
fn gdiff(value: &GrassmannNumber, reference: &GrassmannNumber) -> f64 {
    if reference.max_abs() == 0.0 {
        f64::INFINITY
    } else {
        value.max_diff(reference)
    }
}

fn random_d(rng: &mut impl Rng) -> C64 {
    random::complex(rng)
}

fn gname(g: Geometry) -> &'static str {
    g.name()
}

/// Weyl data, fluctuation and boost for one closed-form instance.
pub fn closed_form_instance(
    form: ClosedForm,
    rng: &mut impl Rng,
    cutoff: i32,
    rapidity_max: f64,
) -> (TwistedTriple, FluctuationFields, ClosedFormSpec) {
    let g = form.geometry();
    let d = match form {
        ClosedForm::ElectrodynamicsDirac => C64::new(0.0, random::real(rng, -2.0, 2.0)),
        ClosedForm::ElectrodynamicsBoosted => random_d(rng),
        _ => C64::new(0.0, 0.0),
    };
    let triple = build_triple(g, d);
    let weyl = random::weyl_data(rng, g.finite_dim(), cutoff);
    let f = random::coupled_real_fields(rng, &weyl);
    let gauge: [FourierScalar; 4] = if g == Geometry::Electrodynamics {
        random::coupled_real_fields(rng, &weyl)
    } else {
        std::array::from_fn(|_| FourierScalar::zero())
    };
    let fluct = FluctuationFields::from_real(g, f.clone(), gauge.clone());
    let boost = form.is_boosted().then(|| random::boost(rng, rapidity_max));
    let (w, _) = promote_weyl(&weyl);
    (triple, fluct, ClosedFormSpec { form, weyl: w, f, g: gauge, d, boost })
}

/// Random triple (random d for electrodynamics), fluctuation and Weyl data.
pub fn action_instance(
    g: Geometry,
    rng: &mut impl Rng,
    cutoff: i32,
) -> (TwistedTriple, FluctuationFields, Vec<SpinorSection>) {
    let triple = build_triple(g, if g == Geometry::Electrodynamics { random_d(rng) } else { C64::new(0.0, 0.0) });
    let weyl = random::weyl_data(rng, g.finite_dim(), cutoff);
    let f = random::coupled_real_fields(rng, &weyl);
    let gauge = if g == Geometry::Manifold {
        std::array::from_fn(|_| FourierScalar::zero())
    } else {
        random::coupled_real_fields(rng, &weyl)
    };
    (triple, FluctuationFields::from_real(g, f, gauge), weyl)
}

/// Second Weyl data set on the support of `weyl`, so pairings with it do
/// not vanish.
fn companion_data(rng: &mut impl Rng, weyl: &[SpinorSection]) -> Vec<SpinorSection> {
    let support: Vec<Mode> = weyl[0].modes().map(|(k, _)| *k).collect();
    weyl.iter().map(|_| random::section_on(rng, 2, &support)).collect()
}

fn random_pairs(rng: &mut impl Rng, g: Geometry, cutoff: i32, n: usize) -> Vec<(AlgebraElement, AlgebraElement)> {
    (0..n).map(|_| (random::algebra_element(rng, g, cutoff), random::algebra_element(rng, g, cutoff))).collect()
}

/// J² − ε, JD − ε′DJ, JΓ − ε″ΓJ, JR − ε‴RJ, each as an operator norm.
pub fn ko_defects(t: &TwistedTriple, signs: [f64; 4]) -> Result<[f64; 4]> {
    let j = &t.real_structure;
    let sc = |s: f64| C64::new(s, 0.0);
    let jj = j.compose(j)?.sub(&FieldOperator::identity(t.fiber_dim).scale(sc(signs[0])))?;
    let jd = j.compose(&t.dirac)?.sub(&t.dirac.compose(j)?.scale(sc(signs[1])))?;
    let jg = j.compose(&t.grading)?.sub(&t.grading.compose(j)?.scale(sc(signs[2])))?;
    let jr = j.compose(&t.twist_unitary)?.sub(&t.twist_unitary.compose(j)?.scale(sc(signs[3])))?;
    Ok([opmax(&jj), opmax(&jd), opmax(&jg), opmax(&jr)])
}

/// Error of an operator identity `o = 0` along both comparison paths.
fn zero_error(o: &FieldOperator, probe_cutoff: i32) -> Result<f64> {
    let eq = operator_equal_tol(o, &FieldOperator::zero(o.dim(), o.is_antilinear()), probe_cutoff, 1e-12)?;
    Ok(eq.normal_form_error.max(eq.probe_error))
}

fn scalar_field(rng: &mut impl Rng) -> FourierScalar {
    random::scalar(rng, 2, 2)
}

fn real_field(rng: &mut impl Rng) -> FourierScalar {
    random::real_scalar(rng, 2, 2)
}

fn max_field_diff(a: &[FourierScalar; 4], b: &[FourierScalar; 4]) -> f64 {
    (0..4).map(|mu| a[mu].max_diff(&b[mu])).fold(0.0, f64::max)
}

fn constant_shift(k: Mode, c: C64) -> [FourierScalar; 4] {
    std::array::from_fn(|mu| FourierScalar::constant(c * k[mu] as f64))
}

fn unit3(rng: &mut impl Rng) -> [f64; 3] {
    random::direction(rng)
}

// --------------------------------------------------------------- registry

pub fn registry() -> Vec<Check> {
    let mut v = Vec::new();
    clifford_checks(&mut v);
    for g in Geometry::ALL {
        axiom_checks(&mut v, g);
        fluctuation_checks(&mut v, g);
    }
    gauge_checks(&mut v);
    action_checks(&mut v);
    boost_checks(&mut v);
    dynamics_checks(&mut v);
    v
}

fn clifford_checks(v: &mut Vec<Check>) {
    use Group::Clifford as C;
    v.push(check("clifford.euclidean_anticommutators", C, "{γ^μ, γ^ν} = 2δ^{μν}𝕀₄", 1e-14, Box::new(|_| {
        let mut err: f64 = 0.0;
        for mu in 0..4 {
            for nu in mu..4 {
                let a = gamma_euclidean(mu)?.anticommutator(&gamma_euclidean(nu)?);
                let e = FiberMatrix::identity(4).scale(C64::new(if mu == nu { 2.0 } else { 0.0 }, 0.0));
                err = err.max(a.max_diff(&e));
            }
        }
        Ok(err)
    })));
    v.push(check("clifford.minkowski_anticommutators", C, "{γ^μ_M, γ^ν_M} = 2η^{μν}𝕀₄", 1e-14, Box::new(|_| {
        let mut err: f64 = 0.0;
        for mu in 0..4 {
            for nu in mu..4 {
                let a = gamma_minkowski(mu)?.anticommutator(&gamma_minkowski(nu)?);
                let e = FiberMatrix::identity(4).scale(C64::new(if mu == nu { 2.0 * ETA[mu] } else { 0.0 }, 0.0));
                err = err.max(a.max_diff(&e));
            }
        }
        Ok(err)
    })));
    v.push(check("clifford.gamma5", C, "γ⁵ anticommutes with γ^μ and squares to 𝕀₄", 1e-14, Box::new(|_| {
        let g5 = gamma5();
        let mut err = (&g5 * &g5).max_diff(&FiberMatrix::identity(4));
        for mu in 0..4 {
            err = err.max(g5.anticommutator(&gamma_euclidean(mu)?).max_abs());
        }
        Ok(err)
    })));
    v.push(check("clifford.twist_of_gammas", C, "ρ(γ^j) = γ⁰γ^jγ⁰ = −γ^j, ρ(γ⁰) = γ⁰", 1e-14, Box::new(|_| {
        let r = gamma_euclidean(0)?;
        let mut err = (&(&r * &r) * &r).max_diff(&r);
        for j in 1..4 {
            let g = gamma_euclidean(j)?;
            err = err.max((&(&r * &g) * &r).max_diff(&g.scale(-ONE)));
        }
        Ok(err)
    })));
    v.push(check("clifford.lorentz_extraction", C, "Λ from Λ₊σΛ₊ and Λ₋σ̄Λ₋ agree, is proper orthochronous and preserves η", 1e-10, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let mut err: f64 = 0.0;
        for _ in 0..BOOSTS {
            let s = random::boost(&mut rng, ctx.config.rapidity_max);
            let a = lorentz_from_sigma_relation(&s)?;
            let b = lorentz_from_tilde_relation(&s)?;
            err = err.max(a.max_diff(&b)).max(a.metric_defect()).max((a.determinant() - 1.0).abs());
            if a.entries[0][0] < 1.0 - 1e-12 {
                return Ok(f64::INFINITY);
            }
            err = err.max((a.rapidity() - 2.0 * s.rapidity_half.abs()).abs());
        }
        Ok(err)
    })));
    v.push(check("clifford.boost_twist", C, "ρ(S) = γ⁰Sγ⁰ = S⁻¹", 1e-12, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let r = gamma_euclidean(0)?;
        let mut err: f64 = 0.0;
        for _ in 0..BOOSTS {
            let s = random::boost(&mut rng, ctx.config.rapidity_max);
            err = err.max((&(&r * &s.spin_matrix) * &r).max_diff(&s.spin_inverse()));
        }
        Ok(err)
    })));
    v.push(check("clifford.boost_real_structure", C, "𝒥S𝒥⁻¹ = ρ(S) = S⁻¹", 1e-12, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let m = charge_conjugation();
        let m_inv = m.try_inverse().ok_or_else(|| TwistError::Config("singular charge conjugation".into()))?;
        let mut err: f64 = 0.0;
        for _ in 0..BOOSTS {
            let s = random::boost(&mut rng, ctx.config.rapidity_max);
            err = err.max((&(&m * &s.spin_matrix.conj()) * &m_inv).max_diff(&s.spin_inverse()));
        }
        Ok(err)
    })));
}

fn axiom_checks(v: &mut Vec<Check>, g: Geometry) {
    use Group::Axioms as A;
    let n = gname(g);
    v.push(check(format!("axioms.{n}.order_zero"), A, "[a, JbJ⁻¹] = 0", 1e-12, Box::new(move |ctx| {
        let mut rng = ctx.rng();
        let t = build_triple(g, random_d(&mut rng));
        let mut err: f64 = 0.0;
        for (a, b) in random_pairs(&mut rng, g, ctx.config.mode_cutoff, SAMPLES) {
            err = err.max(zero_error(&t.order_zero(&a, &b)?, ctx.config.probe_cutoff)?);
        }
        Ok(err)
    })));
    v.push(check(format!("axioms.{n}.order_one"), A, "[D,a]_ρ b° − ρ(b)°[D,a]_ρ = 0", 1e-12, Box::new(move |ctx| {
        let mut rng = ctx.rng();
        let t = build_triple(g, random_d(&mut rng));
        let mut err: f64 = 0.0;
        for (a, b) in random_pairs(&mut rng, g, ctx.config.mode_cutoff, SAMPLES) {
            err = err.max(zero_error(&t.order_one(&a, &b)?, ctx.config.probe_cutoff)?);
        }
        Ok(err)
    })));
    v.push(check(format!("axioms.{n}.ko_signs"), A, "J² = ε, JD = ε′DJ, JΓ = ε″ΓJ, JR = ε‴RJ with the geometry's sign table", 1e-12, Box::new(move |ctx| {
        let mut rng = ctx.rng();
        let t = build_triple(g, random_d(&mut rng));
        let s = t.signs;
        let d = ko_defects(&t, [s.epsilon, s.epsilon_prime, s.epsilon_dprime, s.epsilon_tprime])?;
        Ok(d.iter().cloned().fold(0.0, f64::max))
    })));
    v.push(check(format!("axioms.{n}.j_anticommutes_with_r"), A, "JR = −RJ", 1e-12, Box::new(move |ctx| {
        let mut rng = ctx.rng();
        let t = build_triple(g, random_d(&mut rng));
        let s = t.signs;
        Ok(ko_defects(&t, [s.epsilon, s.epsilon_prime, s.epsilon_dprime, -1.0])?[3])
    })));
    v.push(check(format!("axioms.{n}.twist_by_r"), A, "Rπ(a)R† = π(ρ(a))", 1e-12, Box::new(move |ctx| {
        let mut rng = ctx.rng();
        let t = build_triple(g, C64::new(0.0, 0.0));
        let mut err: f64 = 0.0;
        for _ in 0..SAMPLES {
            let a = random::algebra_element(&mut rng, g, ctx.config.mode_cutoff);
            let lhs = crate::operator::rho_of(&t.represent(&a)?, &t.twist_unitary)?;
            err = err.max(lhs.max_diff(&t.represent(&a.flip())?)?);
        }
        Ok(err)
    })));
    v.push(check(format!("axioms.{n}.bounded_twisted_commutator"), A, "[D, a]_ρ carries no derivative", 0.0, Box::new(move |ctx| {
        let mut rng = ctx.rng();
        let t = build_triple(g, random_d(&mut rng));
        for _ in 0..SAMPLES {
            let a = random::algebra_element(&mut rng, g, ctx.config.mode_cutoff);
            let c = twisted_commutator(&t.dirac, &a)?;
            if c.derivative_order() > 0 {
                return Ok(f64::INFINITY);
            }
        }
        Ok(0.0)
    })));
    v.push(check(format!("axioms.{n}.hr_constructor"), A, "Rη = η for η assembled from Weyl data", 0.0, Box::new(move |ctx| {
        let mut rng = ctx.rng();
        let t = build_triple(g, C64::new(0.0, 0.0));
        let mut err: f64 = 0.0;
        for _ in 0..SAMPLES {
            let eta = hr_vector(g, &random::weyl_data(&mut rng, g.finite_dim(), ctx.config.mode_cutoff))?;
            err = err.max(t.twist_unitary.apply(&eta)?.max_diff(&eta)?);
        }
        Ok(err)
    })));
    v.push(check(format!("axioms.{n}.chiral_real_intersection"), A, "p₊p_Rp₊ = ½p₊ and [p₋; p_R₋] injective, so H₊ ∩ H_R = {0}", 1e-14, Box::new(move |_| {
        let r = chiral_real_intersection(&build_triple(g, C64::new(0.0, 0.0)));
        if r.min_singular < 1e-8 {
            return Ok(f64::INFINITY);
        }
        Ok(r.compression_defect)
    })));
}

fn fluctuation_checks(v: &mut Vec<Check>, g: Geometry) {
    let group = Group::of_geometry(g);
    let n = gname(g);
    let pattern = match g {
        Geometry::Manifold => "ω = −iγ^μ diag(h_μ, h′_μ) with h = Σf′∂v, h′ = Σf∂v′; fluctuation z = 2Re h",
        Geometry::Doubled => "fluctuation slots (z, z′), (z̄, z̄′) with z = Σ(f′∂v + ḡ∂w̄′), z′ = Σ(f∂v′ + ḡ′∂w̄)",
        Geometry::Electrodynamics => "fluctuation slots (z, z′), (z′, z), (z̄, z̄′), (z̄′, z̄) with the doubled z, z′",
    };
    v.push(check(format!("{n}.fluctuation_form"), group, pattern, 1e-12, Box::new(move |ctx| {
        let mut rng = ctx.rng();
        let t = build_triple(g, random_d(&mut rng));
        let mut err: f64 = 0.0;
        for _ in 0..SAMPLES / 4 {
            let pairs = random_pairs(&mut rng, g, ctx.config.mode_cutoff, 2);
            let omega = one_form(&t, &pairs)?;
            let fl = fluctuate(&t, &omega)?;
            let fields = extract_fields(&fl, g)?;
            err = err.max(fields.residual);
            // re-assembly from the slot pattern reproduces the operator
            err = err.max(fields.assemble().max_diff(&fl)?);
            let d = |f: &FourierScalar, mu: usize| f.partial(mu);
            match g {
                Geometry::Manifold => {
                    let of = extract_one_form(&omega)?;
                    err = err.max(of.residual);
                    for mu in 0..4 {
                        let mut h = FourierScalar::zero();
                        let mut hp = FourierScalar::zero();
                        for (a, b) in &pairs {
                            h = h.add(&a.comps[1].multiply(&d(&b.comps[0], mu)));
                            hp = hp.add(&a.comps[0].multiply(&d(&b.comps[1], mu)));
                        }
                        err = err.max(of.h[mu].max_diff(&h)).max(of.h_prime[mu].max_diff(&hp));
                        let two = C64::new(2.0, 0.0);
                        err = err.max(fields.z[mu].max_diff(&h.real_part().scale(two)));
                        err = err.max(fields.z_prime[mu].max_diff(&hp.real_part().scale(two)));
                    }
                }
                _ => {
                    for mu in 0..4 {
                        let mut z = FourierScalar::zero();
                        let mut zp = FourierScalar::zero();
                        for (a, b) in &pairs {
                            let (f, gg, fp, gp) = (&a.comps[0], &a.comps[1], &a.comps[2], &a.comps[3]);
                            let (v, w, vp, wp) = (&b.comps[0], &b.comps[1], &b.comps[2], &b.comps[3]);
                            z = z.add(&fp.multiply(&d(v, mu))).add(&gg.conj().multiply(&d(&wp.conj(), mu)));
                            zp = zp.add(&f.multiply(&d(vp, mu))).add(&gp.conj().multiply(&d(&w.conj(), mu)));
                        }
                        err = err.max(fields.z[mu].max_diff(&z)).max(fields.z_prime[mu].max_diff(&zp));
                    }
                }
            }
        }
        Ok(err)
    })));
    v.push(check(format!("{n}.field_form"), group, "self-adjoint fluctuation equals the X/Y form in terms of real f_μ, g_μ", 1e-14, Box::new(move |ctx| {
        let mut rng = ctx.rng();
        let mut err: f64 = 0.0;
        for _ in 0..SAMPLES {
            let f: [FourierScalar; 4] = std::array::from_fn(|_| real_field(&mut rng));
            let gg: [FourierScalar; 4] = if g == Geometry::Manifold {
                std::array::from_fn(|_| FourierScalar::zero())
            } else {
                std::array::from_fn(|_| real_field(&mut rng))
            };
            let fl = FluctuationFields::from_real(g, f.clone(), gg.clone());
            err = err.max(fl.assemble().max_diff(&fluctuation_from_fields(g, &f, &gg))?);
        }
        Ok(err)
    })));
    v.push(check(format!("{n}.selfadjointness"), group, "ω = ω† ⇔ b_μ = −ā_μ slotwise; fluctuation self-adjoint ⇔ z′ = −z̄; imaginary h with ω = ω† gives zero fluctuation", 0.0, Box::new(move |ctx| {
        let mut rng = ctx.rng();
        let draws = if g == Geometry::Manifold { FIELD_DRAWS } else { FIELD_DRAWS / 10 };
        let mut mismatches = 0usize;
        for i in 0..draws {
            let case = i % 4;
            if g == Geometry::Manifold {
                mismatches += manifold_selfadjoint_draw(&mut rng, case)?;
            } else {
                mismatches += fluctuation_selfadjoint_draw(&mut rng, g, case)?;
            }
        }
        Ok(mismatches as f64)
    })));
    if g == Geometry::Electrodynamics {
        v.push(check("electrodynamics.finite_part_commutes", group, "[γ⁵ ⊗ D_F, a]_ρ = 0, so the finite part does not fluctuate", 0.0, Box::new(|ctx| {
            let mut rng = ctx.rng();
            let t = build_triple(Geometry::Electrodynamics, random_d(&mut rng));
            let mut err: f64 = 0.0;
            for _ in 0..SAMPLES {
                let a = random::algebra_element(&mut rng, Geometry::Electrodynamics, ctx.config.mode_cutoff);
                err = err.max(twisted_commutator(&t.finite_part(), &a)?.max_abs());
            }
            Ok(err)
        })));
    }
}

const SA_TOL: f64 = 1e-12;

/// One field draw on the manifold; returns the number of predicate/operator mismatches.
fn manifold_selfadjoint_draw(rng: &mut impl Rng, case: usize) -> Result<usize> {
    let t = build_triple(Geometry::Manifold, C64::new(0.0, 0.0));
    let h: [FourierScalar; 4] = std::array::from_fn(|_| match case {
        2 => real_field(rng).scale(I),
        _ => scalar_field(rng),
    });
    let hp: [FourierScalar; 4] = std::array::from_fn(|mu| match case {
        0 | 2 => h[mu].conj().neg(),
        1 => scalar_field(rng),
        _ => h[mu].real_part().neg().add(&real_field(rng).scale(I)),
    });
    let omega = assemble_slots(&SlotFields {
        geometry: Geometry::Manifold,
        slots: vec![std::array::from_fn(|mu| (h[mu].clone(), hp[mu].clone()))],
        residual: 0.0,
    });
    let fl = fluctuate(&t, &omega)?;
    let omega_sa = omega.max_diff(&omega.adjoint()?)? <= SA_TOL;
    let fl_sa = fl.max_diff(&fl.adjoint()?)? <= SA_TOL;
    let pred_omega = (0..4).all(|mu| hp[mu].add(&h[mu].conj()).max_abs() <= SA_TOL);
    let pred_fl = (0..4).all(|mu| hp[mu].real_part().add(&h[mu].real_part()).max_abs() <= SA_TOL);
    let vanishes = fl.max_abs() <= SA_TOL;
    let imaginary = (0..4).all(|mu| h[mu].real_part().max_abs() <= SA_TOL);
    let mut bad = usize::from(omega_sa != pred_omega) + usize::from(fl_sa != pred_fl);
    // ω self-adjoint: the fluctuation vanishes exactly when h is imaginary
    if pred_omega && vanishes != imaginary {
        bad += 1;
    }
    let expected_omega = matches!(case, 0 | 2);
    let expected_fl = case != 1;
    bad += usize::from(pred_omega != expected_omega) + usize::from(pred_fl != expected_fl);
    Ok(bad)
}

fn fluctuation_selfadjoint_draw(rng: &mut impl Rng, g: Geometry, case: usize) -> Result<usize> {
    let z: [FourierScalar; 4] = std::array::from_fn(|_| scalar_field(rng));
    let zp: [FourierScalar; 4] = std::array::from_fn(|mu| match case {
        0 | 2 => z[mu].conj().neg(),
        _ => scalar_field(rng),
    });
    let fields = FluctuationFields {
        geometry: g,
        f: std::array::from_fn(|mu| z[mu].real_part()),
        g: std::array::from_fn(|mu| z[mu].imag_part()),
        z,
        z_prime: zp,
        residual: 0.0,
    };
    let op = fields.assemble();
    let op_sa = op.max_diff(&op.adjoint()?)? <= SA_TOL;
    let pred = fields.selfadjoint_defect() <= SA_TOL;
    Ok(usize::from(op_sa != pred) + usize::from(pred != matches!(case, 0 | 2)))
}

fn gauge_checks(v: &mut Vec<Check>) {
    use Group::Gauge as G;
    v.push(check("gauge.manifold_one_form", G, "h_μ → h_μ − i∂_μθ and h′_μ → h′_μ − i∂_μθ under u = e^{iθ}", 1e-14, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let t = build_triple(Geometry::Manifold, C64::new(0.0, 0.0));
        let mut err: f64 = 0.0;
        for _ in 0..SAMPLES / 4 {
            let omega = one_form(&t, &random_pairs(&mut rng, Geometry::Manifold, ctx.config.mode_cutoff, 2))?;
            let k = random::mode(&mut rng, ctx.config.mode_cutoff);
            let phi = random::real(&mut rng, -3.0, 3.0);
            let u = phase_unitary(Geometry::Manifold, &[(k, phi), (k, phi)])?;
            let before = extract_one_form(&omega)?;
            let after = extract_one_form(&gauge_transform(&t, &omega, &u)?)?;
            let shift = constant_shift(k, I);
            let exp_h: [FourierScalar; 4] = std::array::from_fn(|mu| before.h[mu].sub(&shift[mu]));
            let exp_hp: [FourierScalar; 4] = std::array::from_fn(|mu| before.h_prime[mu].sub(&shift[mu]));
            err = err.max(max_field_diff(&after.h, &exp_h)).max(max_field_diff(&after.h_prime, &exp_hp)).max(after.residual);
        }
        Ok(err)
    })));
    v.push(check("gauge.electrodynamics_fields", G, "f_μ invariant and g_μ → g_μ − ∂_μθ for θ = θ′", 1e-14, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let g = Geometry::Electrodynamics;
        let t = build_triple(g, random_d(&mut rng));
        let mut err: f64 = 0.0;
        for _ in 0..SAMPLES / 4 {
            let omega = one_form(&t, &random_pairs(&mut rng, g, ctx.config.mode_cutoff, 2))?;
            let (u, k) = ed_phase(&mut rng, ctx.config.mode_cutoff)?;
            let before = extract_fields(&fluctuate(&t, &omega)?, g)?;
            let after = extract_fields(&fluctuate(&t, &gauge_transform(&t, &omega, &u)?)?, g)?;
            let shift = constant_shift(k, ONE);
            let exp_g: [FourierScalar; 4] = std::array::from_fn(|mu| before.g[mu].sub(&shift[mu]));
            err = err.max(max_field_diff(&after.f, &before.f)).max(max_field_diff(&after.g, &exp_g)).max(after.residual);
        }
        Ok(err)
    })));
    v.push(check("gauge.adjoint_action", G, "U = π(u)Jπ(u)J⁻¹ is 𝕀 on the manifold and diag(e^{iθ}𝕀₈, e^{−iθ}𝕀₈) for electrodynamics", 1e-14, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let mut err: f64 = 0.0;
        for _ in 0..SAMPLES / 4 {
            let k = random::mode(&mut rng, ctx.config.mode_cutoff);
            let phi = random::real(&mut rng, -3.0, 3.0);
            let kp = random::mode(&mut rng, ctx.config.mode_cutoff);
            let phip = random::real(&mut rng, -3.0, 3.0);
            let tm = build_triple(Geometry::Manifold, C64::new(0.0, 0.0));
            let u = phase_unitary(Geometry::Manifold, &[(k, phi), (kp, phip)])?;
            err = err.max(adjoint_action(&tm, &u)?.max_diff(&FieldOperator::identity(4))?);
            let te = build_triple(Geometry::Electrodynamics, random_d(&mut rng));
            let (u, _) = ed_phase(&mut rng, ctx.config.mode_cutoff)?;
            let theta = u.comps[0].multiply(&u.comps[3].conj());
            let plus = FiberMatrix::real_diagonal(&[[1.0; 8], [0.0; 8]].concat());
            let minus = FiberMatrix::real_diagonal(&[[0.0; 8], [1.0; 8]].concat());
            let expected = FieldOperator::multiplication(&theta, &plus).add(&FieldOperator::multiplication(&theta.conj(), &minus))?;
            err = err.max(adjoint_action(&te, &u)?.max_diff(&expected)?);
        }
        Ok(err)
    })));
    v.push(check("gauge.action_invariance", G, "𝔄^ρ_{D^u}(Uη̃, Uη̃) = 𝔄^ρ_D(η̃, η̃) for θ = θ′", 1e-10, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let mut err: f64 = 0.0;
        for g in [Geometry::Manifold, Geometry::Electrodynamics] {
            let t = build_triple(g, random_d(&mut rng));
            let omega = one_form(&t, &random_pairs(&mut rng, g, 1, 1))?;
            let u = match g {
                Geometry::Manifold => {
                    let k = random::mode(&mut rng, 1);
                    let phi = random::real(&mut rng, -3.0, 3.0);
                    phase_unitary(g, &[(k, phi), (k, phi)])?
                }
                _ => ed_phase(&mut rng, 1)?.0,
            };
            let weyl = random::weyl_data(&mut rng, g.finite_dim(), ctx.config.mode_cutoff);
            let (w, _) = promote_weyl(&weyl);
            let eta = hr_vector(g, &w)?;
            let d0 = t.dirac.add(&fluctuate(&t, &omega)?)?;
            let du = t.dirac.add(&fluctuate(&t, &gauge_transform(&t, &omega, &u)?)?)?;
            let big_u = adjoint_action(&t, &u)?;
            let ueta = big_u.apply(&eta)?;
            let a0 = bilinear_form(&t, &d0, &eta, &eta, true)?;
            let a1 = bilinear_form(&t, &du, &ueta, &ueta, true)?;
            err = err.max(gdiff(&a1, &a0));
        }
        Ok(err)
    })));
}

/// Electrodynamics phase unitary with θ = α − β′ equal to θ′ = α′ − β;
/// returns the unitary and the mode of e^{iθ}.
fn ed_phase(rng: &mut impl Rng, cutoff: i32) -> Result<(AlgebraElement, Mode)> {
    let ka = random::mode(rng, cutoff);
    let kb = random::mode(rng, cutoff);
    let pa = random::real(rng, -3.0, 3.0);
    let pb = random::real(rng, -3.0, 3.0);
    let u = phase_unitary(Geometry::Electrodynamics, &[(ka, pa), (kb, pb), (ka, pa), (kb, pb)])?;
    Ok((u, std::array::from_fn(|mu| ka[mu] - kb[mu])))
}

fn action_checks(v: &mut Vec<Check>) {
    use Group::Actions as A;
    for form in ClosedForm::ALL {
        let reference = match form {
            ClosedForm::ManifoldWeyl => "engine action = 2∫φ̄†σ₂(if₀ − σ_j∂_j)φ",
            ClosedForm::DoubledWeyl => "engine action of ð_X ⊗ 𝕀₂ = 4∫φ̄†σ₂(if₀ − σ_j∂_j)ζ",
            ClosedForm::ElectrodynamicsDirac => "engine action = electrodynamics lagrangian with 𝔇_j, d = im",
            ClosedForm::ManifoldBoosted => "boosted engine action = −i∫[ū_l†σ̃_Λ(∂+f)ζ_l + ū_r†σ_Λ(∂−f)ζ_r]",
            ClosedForm::DoubledBoosted => "boosted engine action = −2i × the boosted Weyl integrand",
            ClosedForm::ElectrodynamicsBoosted => "boosted engine action = −2∫ℒ_Λ",
        };
        v.push(check(format!("actions.closed_form.{}", form.name()), A, reference, 1e-10, Box::new(move |ctx| {
            let mut rng = ctx.rng();
            let mut err: f64 = 0.0;
            for _ in 0..CLOSED_FORM_INSTANCES {
                let (t, fl, spec) = closed_form_instance(form, &mut rng, ctx.config.mode_cutoff, ctx.config.rapidity_max);
                if closed_form_action(&spec)?.value.max_abs() == 0.0 {
                    return Ok(f64::INFINITY);
                }
                err = err.max(compare_closed_form(&t, &fl, &spec)?);
            }
            Ok(err)
        })));
    }
    v.push(check("actions.identity_boost_limit", A, "boosted closed forms at S = 𝕀 reduce to the unboosted ones", 1e-10, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let mut err: f64 = 0.0;
        for (b, u) in [
            (ClosedForm::ManifoldBoosted, ClosedForm::ManifoldWeyl),
            (ClosedForm::DoubledBoosted, ClosedForm::DoubledWeyl),
            (ClosedForm::ElectrodynamicsBoosted, ClosedForm::ElectrodynamicsDirac),
        ] {
            let (_, _, mut spec) = closed_form_instance(u, &mut rng, ctx.config.mode_cutoff, 0.0);
            if u == ClosedForm::DoubledWeyl {
                spec.g = std::array::from_fn(|_| FourierScalar::zero());
            }
            let plain = closed_form_action(&spec)?.value;
            spec.form = b;
            spec.boost = Some(SpinBoost::identity());
            err = err.max(gdiff(&closed_form_action(&spec)?.value, &plain));
        }
        Ok(err)
    })));
    v.push(check("actions.grassmann_oracle", A, "engine Grassmann action = Σ_{i<j}(A_ij − A_ji)θ_iθ_j from the plain form matrix", 1e-10, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let mut err: f64 = 0.0;
        for g in Geometry::ALL {
            let (t, fl, weyl) = action_instance(g, &mut rng, 1);
            let (w, reg) = promote_weyl(&weyl);
            let engine = fermionic_action(&t, &fl, &w)?.value;
            let eta = hr_vector(g, &w)?;
            let d_total = covariant_operator(&t, &fl)?;
            let form = plain_form(&t, &d_total, true);
            let decomposed = bilinear_grassmann(&form, &eta, &eta);
            let basis = crate::grassmann::decompose_linear(&eta);
            let n = reg.len();
            let mut a = vec![vec![C64::new(0.0, 0.0); n]; n];
            for (i, ai) in &basis {
                for (j, bj) in &basis {
                    a[*i as usize][*j as usize] = form(ai, bj);
                }
            }
            let dense = dense_antisymmetrized(&a);
            err = err.max(gdiff(&decomposed, &engine)).max(gdiff(&dense, &engine));
        }
        Ok(err)
    })));
    v.push(check("actions.rho_sign_on_hr", A, "𝔄^ρ_D = −𝔄_D on H_R for every assembled operator", 1e-10, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let mut err: f64 = 0.0;
        for g in Geometry::ALL {
            for _ in 0..3 {
                let (t, fl, weyl) = action_instance(g, &mut rng, ctx.config.mode_cutoff);
                let other = companion_data(&mut rng, &weyl);
                let (a, b) = (hr_vector(g, &weyl)?, hr_vector(g, &other)?);
                let d_total = covariant_operator(&t, &fl)?;
                let x = bilinear_form(&t, &d_total, &a, &b, true)?;
                let y = bilinear_form(&t, &d_total, &a, &b, false)?;
                if x.norm() == 0.0 {
                    return Ok(f64::INFINITY);
                }
                err = err.max((x + y).norm());
            }
        }
        Ok(err)
    })));
    v.push(check("actions.electrodynamics_term_symmetry", A, "on spinor sections 𝔄_ð, 𝔄_X, 𝔄_γ⁵ are antisymmetric and 𝔄_iY symmetric", 1e-10, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let t = build_triple(Geometry::Manifold, C64::new(0.0, 0.0));
        let support = random::symmetric_support(&mut rng, ctx.config.mode_cutoff, random::MODES_PER_FIELD);
        let zero: [FourierScalar; 4] = std::array::from_fn(|_| FourierScalar::zero());
        let mut err: f64 = 0.0;
        for _ in 0..SAMPLES / 4 {
            let a = random::section_on(&mut rng, 4, &support);
            let b = random::section_on(&mut rng, 4, &support);
            let weyl = [a.slice(0, 2), b.slice(2, 2)];
            let f = random::coupled_real_fields(&mut rng, &weyl);
            let g = random::coupled_real_fields(&mut rng, &weyl);
            let mut y = FieldOperator::zero(4, false);
            for mu in 0..4 {
                y = y.add(&FieldOperator::multiplication(&g[mu], &gamma_euclidean(mu)?.scale(I)))?;
            }
            let terms = [
                (free_dirac(), -1.0),
                (fluctuation_from_fields(Geometry::Manifold, &f, &zero), -1.0),
                (FieldOperator::constant(&gamma5()), -1.0),
                (y, 1.0),
            ];
            for (op, sign) in terms {
                let ab = bilinear_form(&t, &op, &a, &b, false)?;
                let ba = bilinear_form(&t, &op, &b, &a, false)?;
                if ab.norm() == 0.0 {
                    return Ok(f64::INFINITY);
                }
                err = err.max((ab - ba * sign).norm());
            }
        }
        Ok(err)
    })));
    v.push(check("actions.electrodynamics_part_sum", A, "the free, finite, X and gauge contributions add up to the action", 1e-10, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let (t, fl, weyl) = action_instance(Geometry::Electrodynamics, &mut rng, ctx.config.mode_cutoff);
        let (w, _) = promote_weyl(&weyl);
        let av = fermionic_action(&t, &fl, &w)?;
        let sum = av.parts.iter().fold(GrassmannNumber::zero(), |acc, (_, p)| acc.add(p));
        Ok(gdiff(&sum, &av.value))
    })));
    identification_checks(v);
}

fn identification_checks(v: &mut Vec<Check>) {
    use Group::Actions as A;
    for plus in [true, false] {
        let id = if plus { "actions.identification.weyl_plus" } else { "actions.identification.weyl_minus" };
        v.push(check(id, A, "ψ = ζ̃, ψ† = ±iφ̃̄†σ₂ turns the doubled action into ∓4i∫ψ†(if₀ − σ_j∂_j)ψ", 1e-10, Box::new(move |ctx| {
            let mut rng = ctx.rng();
            let mut err: f64 = 0.0;
            for _ in 0..CLOSED_FORM_INSTANCES {
                let (_, _, spec) = closed_form_instance(ClosedForm::DoubledWeyl, &mut rng, ctx.config.mode_cutoff, 0.0);
                let closed = closed_form_action(&spec)?.value;
                let phys = identify_physical(&spec.weyl, Identification::Weyl { plus }, None)?;
                err = err.max(gdiff(&weyl_lagrangian(&phys, &spec.f[0], plus), &closed));
            }
            Ok(err)
        })));
    }
    for primed in [false, true] {
        let id = if primed { "actions.identification.dirac_primed" } else { "actions.identification.dirac_plain" };
        v.push(check(id, A, "with d = im the electrodynamics action is 4∫ of the Dirac lagrangian in the identified spinors", 1e-10, Box::new(move |ctx| {
            let mut rng = ctx.rng();
            let mut err: f64 = 0.0;
            for _ in 0..CLOSED_FORM_INSTANCES {
                let (_, _, spec) = closed_form_instance(ClosedForm::ElectrodynamicsDirac, &mut rng, ctx.config.mode_cutoff, 0.0);
                let closed = closed_form_action(&spec)?.value;
                let scheme = if primed { Identification::DiracPrimed } else { Identification::DiracPlain };
                let phys = identify_physical(&spec.weyl, scheme, None)?;
                let l = dirac_lagrangian(&phys, &spec.f[0], &spec.g, spec.d.im, primed).scale(C64::new(4.0, 0.0));
                err = err.max(gdiff(&l, &closed));
            }
            Ok(err)
        })));
    }
    v.push(check("actions.identification.boosted", A, "boosted identifications turn −2∫ℒ_Λ into the Dirac form with masses id ψ_r†ψ_l − id̄ ψ_l†ψ_r + id ψ′_l†ψ′_r − id̄ ψ′_r†ψ′_l", 1e-10, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let mut err: f64 = 0.0;
        for _ in 0..CLOSED_FORM_INSTANCES {
            let (_, _, spec) = closed_form_instance(ClosedForm::ElectrodynamicsBoosted, &mut rng, ctx.config.mode_cutoff, ctx.config.rapidity_max);
            let s = spec.boost.clone().expect("boosted instance");
            let closed = closed_form_action(&spec)?.value;
            let a = identify_physical(&spec.weyl, Identification::BoostedPlain, Some(&s))?;
            let b = identify_physical(&spec.weyl, Identification::BoostedPrimed, Some(&s))?;
            let l = boosted_dirac_lagrangian_substituted(&a, &b, &s, &spec.f, &spec.g, spec.d).scale(C64::new(-2.0, 0.0));
            err = err.max(gdiff(&l, &closed));
        }
        Ok(err)
    })));
    v.push(check("actions.identification.boosted_symmetric_mass", A, "for imaginary d the symmetric mass terms id(ψ_l†ψ_r + ψ_r†ψ_l) − id̄(ψ′_r†ψ′_l + ψ′_l†ψ′_r) agree", 1e-10, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let mut err: f64 = 0.0;
        for _ in 0..CLOSED_FORM_INSTANCES {
            let (_, _, mut spec) = closed_form_instance(ClosedForm::ElectrodynamicsBoosted, &mut rng, ctx.config.mode_cutoff, ctx.config.rapidity_max);
            spec.d = C64::new(0.0, spec.d.im);
            let s = spec.boost.clone().expect("boosted instance");
            let closed = closed_form_action(&spec)?.value;
            let a = identify_physical(&spec.weyl, Identification::BoostedPlain, Some(&s))?;
            let b = identify_physical(&spec.weyl, Identification::BoostedPrimed, Some(&s))?;
            let l = boosted_dirac_lagrangian_symmetric_mass(&a, &b, &s, &spec.f, &spec.g, spec.d).scale(C64::new(-2.0, 0.0));
            err = err.max(gdiff(&l, &closed));
        }
        Ok(err)
    })));
    v.push(check("actions.identification.identity_boost", A, "at S = 𝕀 the boosted identifications give the unboosted spinors", 0.0, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let weyl = random::weyl_data(&mut rng, 4, ctx.config.mode_cutoff);
        let s = SpinBoost::identity();
        let mut err: f64 = 0.0;
        for (boosted, plain) in [(Identification::BoostedPlain, Identification::DiracPlain), (Identification::BoostedPrimed, Identification::DiracPrimed)] {
            let a = identify_physical(&weyl, boosted, Some(&s))?;
            let b = identify_physical(&weyl, plain, None)?;
            for i in 0..2 {
                err = err.max(a.psi[i].max_diff(&b.psi[i])?).max(a.psi_dagger[i].max_diff(&b.psi_dagger[i])?);
            }
        }
        Ok(err)
    })));
}

fn boost_checks(v: &mut Vec<Check>) {
    use Group::Boost as B;
    for g in Geometry::ALL {
        v.push(check(format!("boost.invariance.{}", gname(g)), B, "𝔄^ρ_{D^Λ}(S⁻¹η̃, Sη̃) = 𝔄^ρ_D(η̃, η̃) per Grassmann coefficient", 1e-9, Box::new(move |ctx| {
            let mut rng = ctx.rng();
            let (t, fl, weyl) = action_instance(g, &mut rng, ctx.config.mode_cutoff);
            let (w, _) = promote_weyl(&weyl);
            let base = fermionic_action(&t, &fl, &w)?.value;
            let mut err: f64 = 0.0;
            for _ in 0..BOOSTS {
                let s = random::boost(&mut rng, ctx.config.rapidity_max);
                err = err.max(gdiff(&boosted_action(&t, &fl, &w, &s, BoostScheme::Slot)?.value, &base));
            }
            Ok(err)
        })));
    }
    v.push(check("boost.identity", B, "the identity boost leaves the action unchanged", 0.0, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let mut err: f64 = 0.0;
        for g in Geometry::ALL {
            let (t, fl, weyl) = action_instance(g, &mut rng, 1);
            let (w, _) = promote_weyl(&weyl);
            let eta = hr_vector(g, &w)?;
            let base = action_on_vector(&t, &fl, &eta)?;
            let b = boosted_action(&t, &fl, &w, &SpinBoost::identity(), BoostScheme::Slot)?.value;
            err = err.max(gdiff(&b, &base));
        }
        Ok(err)
    })));
}

fn dynamics_checks(v: &mut Vec<Check>) {
    use Group::Dynamics as D;
    v.push(check("dynamics.weyl_identification", D, "twisted Weyl plane waves have a kernel exactly at p₀ = −f₀ (left) or p₀ = f₀ (right)", 0.0, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let mut bad = 0usize;
        for i in 0..SWEEP {
            let f0 = random::real(&mut rng, 0.1, 2.0) * if rng.random::<bool>() { 1.0 } else { -1.0 };
            let n = unit3(&mut rng);
            let left = i % 2 == 0;
            let on = (i / 2) % 2 == 0;
            let h = if left { Handedness::Left } else { Handedness::Right };
            let target = if left { -f0 } else { f0 };
            let p0 = if on { target } else { target + random::real(&mut rng, 0.1, 1.0) };
            let p = [p0, f0.abs() * n[0], f0.abs() * n[1], f0.abs() * n[2]];
            let r = weyl_system(f0, p, h);
            bad += usize::from(r.kernel.is_empty() == on) + usize::from(r.kernel_residual > 1e-12);
        }
        Ok(bad as f64)
    })));
    v.push(check("dynamics.determinant_kernel_duality", D, "kernel nonempty ⇔ |det| ≤ 1e−10 (scaled) for the twisted Dirac symbol", 0.0, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let mut bad = 0usize;
        for i in 0..SWEEP {
            let g: [f64; 3] = std::array::from_fn(|_| random::real(&mut rng, -1.0, 1.0));
            let m = random::real(&mut rng, -2.0, 2.0);
            let p: [f64; 4] = std::array::from_fn(|_| random::real(&mut rng, -2.0, 2.0));
            let big: f64 = (0..3).map(|j| (p[j + 1] + g[j]).powi(2)).sum();
            let f0 = if i % 2 == 0 { (big + m * m).sqrt() } else { random::real(&mut rng, -3.0, 3.0) };
            let r = dirac_system(f0, g, C64::new(0.0, m), p, i % 4 >= 2);
            let scale = (1.0 + f0.abs() + 4.0 + m.abs()).powi(4);
            bad += usize::from(r.kernel.is_empty() == (r.determinant.norm() <= 1e-10 * scale));
            bad += usize::from(r.kernel_residual > 1e-12);
        }
        Ok(bad as f64)
    })));
    v.push(check("dynamics.dirac_mass_shell", D, "with d = im the p₀ roots satisfy p₀² − |p + g|² = m² and carry a kernel", 1e-9, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let mut err: f64 = 0.0;
        for i in 0..SWEEP {
            let g: [f64; 3] = std::array::from_fn(|_| random::real(&mut rng, -1.0, 1.0));
            let m = random::real(&mut rng, -2.0, 2.0);
            let p: [f64; 4] = std::array::from_fn(|_| random::real(&mut rng, -2.0, 2.0));
            let primed = i % 2 == 1;
            let r = dirac_system(0.0, g, C64::new(0.0, m), p, primed);
            let big: f64 = (0..3).map(|j| (p[j + 1] + g[j]).powi(2)).sum();
            for root in r.p0_roots {
                err = err.max((root * root - big - m * m).abs());
                let f0 = if primed { root } else { -root };
                let s = dirac_system(f0, g, C64::new(0.0, m), [root, p[1], p[2], p[3]], primed);
                if s.kernel.is_empty() || !s.identified {
                    return Ok(f64::INFINITY);
                }
                err = err.max(s.reduction_residual);
            }
        }
        Ok(err)
    })));
    v.push(check("dynamics.boosted_weyl_reduction", D, "boosted Weyl symbol = −(1+i)σ̃_M^ν p′_ν (left) or −(1+i)σ_M^ν p′_ν (right) under the identification", 1e-9, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let mut err: f64 = 0.0;
        for _ in 0..SWEEP / 10 {
            let s = random::boost(&mut rng, ctx.config.rapidity_max);
            let f: [f64; 4] = std::array::from_fn(|_| random::real(&mut rng, -2.0, 2.0));
            for h in [Handedness::Left, Handedness::Right] {
                let p = boosted_identification(f, h);
                err = err.max(boosted_weyl_system(&s, f, p, h)?.reduction_residual);
            }
        }
        Ok(err)
    })));
    v.push(check("dynamics.boosted_dirac_reduction", D, "boosted Dirac symbol = −(1+i) × Dirac operator at P′ with m = −(1+i)d/2 or (1+i)d̄/2", 1e-9, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let mut err: f64 = 0.0;
        for i in 0..SWEEP / 10 {
            let s = random::boost(&mut rng, ctx.config.rapidity_max);
            let f: [f64; 4] = std::array::from_fn(|_| random::real(&mut rng, -2.0, 2.0));
            let g: [f64; 4] = std::array::from_fn(|_| random::real(&mut rng, -1.0, 1.0));
            let d = random_d(&mut rng);
            err = err.max(boosted_dirac_system(&s, f, g, d, [0.0; 4], i % 2 == 1)?.reduction_residual);
        }
        Ok(err)
    })));
    v.push(check("dynamics.boost_covariance", D, "kernel of the boosted Weyl system equals the Minkowski Weyl kernel at p′ = Λp", 1e-9, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let mut err: f64 = 0.0;
        for i in 0..SWEEP / 10 {
            let s = random::boost(&mut rng, ctx.config.rapidity_max);
            let e = random::real(&mut rng, 0.1, 2.0);
            let n = unit3(&mut rng);
            let h = if i % 2 == 0 { Handedness::Left } else { Handedness::Right };
            let f = match h {
                Handedness::Left => [-e, e * n[0], e * n[1], e * n[2]],
                Handedness::Right => [e, -e * n[0], -e * n[1], -e * n[2]],
            };
            err = err.max(kernel_overlap_defect(&s, f, h)?);
        }
        Ok(err)
    })));
    v.push(check("dynamics.euler_lagrange", D, "∂ℒ/∂ψ† at plane-wave symbols equals the stated system times ψ", 1e-12, Box::new(|ctx| {
        let mut rng = ctx.rng();
        let mut err: f64 = 0.0;
        for _ in 0..SWEEP / 10 {
            let p: [f64; 4] = std::array::from_fn(|_| random::real(&mut rng, -2.0, 2.0));
            let f0 = random::real(&mut rng, -2.0, 2.0);
            let g: [f64; 3] = std::array::from_fn(|_| random::real(&mut rng, -1.0, 1.0));
            let d = random_d(&mut rng);
            let m = random::real(&mut rng, -2.0, 2.0);
            let psi2: Vec<C64> = (0..2).map(|_| random::complex(&mut rng)).collect();
            let psi4: Vec<C64> = (0..4).map(|_| random::complex(&mut rng)).collect();
            for l in [Lagrangian::WeylLeft, Lagrangian::WeylRight, Lagrangian::TwistedWeyl { f0, plus: true }, Lagrangian::TwistedWeyl { f0, plus: false }] {
                err = err.max(euler_lagrange_check(&l, &psi2, p));
            }
            for l in [
                Lagrangian::Dirac { mass: m },
                Lagrangian::TwistedDirac { f0, g, d, primed: false },
                Lagrangian::TwistedDirac { f0, g, d, primed: true },
            ] {
                err = err.max(euler_lagrange_check(&l, &psi4, p));
            }
        }
        Ok(err)
    })));
}

/// 1 − |⟨k_Λ, k_M⟩| between the boosted Weyl kernel and the Minkowski
/// kernel at p′ = Λp; infinite when either is not one-dimensional.
pub fn kernel_overlap_defect(s: &SpinBoost, f: [f64; 4], h: Handedness) -> Result<f64> {
    let p = boosted_identification(f, h);
    let r = boosted_weyl_system(s, f, p, h)?;
    let pp = crate::clifford::lorentz_from_spin(s)?.transform_covector(p);
    let expected = kernel(&match h {
        Handedness::Left => minkowski_left(pp),
        Handedness::Right => minkowski_right(pp),
    });
    if r.kernel.len() != 1 || expected.len() != 1 {
        return Ok(f64::INFINITY);
    }
    let overlap: C64 = expected[0].iter().zip(&r.kernel[0]).map(|(a, b)| a.conj() * b).sum();
    Ok((1.0 - overlap.norm()).abs())
}

/// Splits the check into group-level counts, for the human summary.
pub fn group_counts(report: &Report) -> BTreeMap<String, (usize, usize)> {
    let mut out: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for c in &report.checks {
        let g = c.check_id.split('.').next().unwrap_or("").to_string();
        let e = out.entry(g).or_default();
        e.0 += 1;
        if c.status == Status::Fail {
            e.1 += 1;
        }
    }
    out
}
