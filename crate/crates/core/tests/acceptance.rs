//! Acceptance suite: one PASS/FAIL line per criterion, then a single assert.

use std::time::Instant;

use twistkit::clifford::C64;
use twistkit::geometry::build_triple;
use twistkit::operator::Geometry;
use twistkit::verify::{self, ko_defects, Group, Report, RunConfig, Status};

const SEED: u64 = 20261015;

struct Outcome {
    number: usize,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn config(groups: &[Group]) -> RunConfig {
    RunConfig { seed: SEED, groups: groups.iter().copied().collect(), ..RunConfig::default() }
}

/// Looks up checks by id; each must exist and pass at no more than `tol`.
fn from_report(report: &Report, ids: &[String], tol: f64) -> (bool, String) {
    let mut pass = true;
    let mut worst: f64 = 0.0;
    for id in ids {
        match report.checks.iter().find(|c| &c.check_id == id) {
            Some(c) => {
                let e = c.max_abs_error.unwrap_or(f64::INFINITY);
                worst = worst.max(e);
                if c.status != Status::Pass || e > tol {
                    pass = false;
                }
            }
            None => {
                pass = false;
                worst = f64::INFINITY;
            }
        }
    }
    (pass, format!("{} checks, max err {worst:.3e}, tol {tol:.0e}", ids.len()))
}

fn ids(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn per_geometry(template: &str) -> Vec<String> {
    Geometry::ALL.iter().map(|g| template.replace("{}", g.name())).collect()
}

#[test]
fn acceptance_criteria() {
    let start = Instant::now();
    let full = verify::run(&config(&Group::ALL)).expect("valid config");
    let mut out = Vec::new();

    let (pass, detail) = from_report(
        &full,
        &ids(&["clifford.euclidean_anticommutators", "clifford.minkowski_anticommutators", "clifford.twist_of_gammas"]),
        1e-14,
    );
    out.push(Outcome { number: 1, title: "Clifford suite", pass, detail });

    // KO signs checked literally against (ε, ε′, ε″) = (−1, +1, +1) for every geometry
    let mut ko_pass = true;
    let mut ko_detail = Vec::new();
    for g in Geometry::ALL {
        let t = build_triple(g, C64::new(0.3, 0.8));
        let d = ko_defects(&t, [-1.0, 1.0, 1.0, -1.0]).expect("operators compose");
        let worst = d.iter().cloned().fold(0.0, f64::max);
        if worst > 1e-12 {
            ko_pass = false;
            ko_detail.push(format!("{}: J²/JD/JΓ/JR defects {:.1e}/{:.1e}/{:.1e}/{:.1e}", g.name(), d[0], d[1], d[2], d[3]));
        }
    }
    let mut axiom_ids = per_geometry("axioms.{}.order_zero");
    axiom_ids.extend(per_geometry("axioms.{}.order_one"));
    axiom_ids.extend(per_geometry("axioms.{}.j_anticommutes_with_r"));
    let (pass, detail) = from_report(&full, &axiom_ids, 1e-12);
    let detail = if ko_detail.is_empty() { detail } else { format!("{detail}; {}", ko_detail.join("; ")) };
    out.push(Outcome { number: 2, title: "Axiom suite", pass: pass && ko_pass, detail });

    let mut fl = per_geometry("{}.fluctuation_form");
    fl.push("electrodynamics.finite_part_commutes".into());
    let (pass, detail) = from_report(&full, &fl, 1e-12);
    let (exact, _) = from_report(&full, &ids(&["electrodynamics.finite_part_commutes"]), 0.0);
    out.push(Outcome { number: 3, title: "Fluctuation forms", pass: pass && exact, detail });

    let (pass, detail) = from_report(&full, &per_geometry("{}.selfadjointness"), 0.0);
    out.push(Outcome { number: 4, title: "Self-adjointness logic", pass, detail });

    let (pass, detail) =
        from_report(&full, &ids(&["gauge.manifold_one_form", "gauge.electrodynamics_fields", "gauge.adjoint_action"]), 1e-14);
    out.push(Outcome { number: 5, title: "Gauge laws", pass, detail });

    let forms: Vec<String> =
        twistkit::action::ClosedForm::ALL.iter().map(|f| format!("actions.closed_form.{}", f.name())).collect();
    let (pass, detail) = from_report(&full, &forms, 1e-10);
    out.push(Outcome { number: 6, title: "Action oracles", pass, detail });

    let mut hr = per_geometry("axioms.{}.hr_constructor");
    let (exact, _) = from_report(&full, &hr, 0.0);
    hr.extend(per_geometry("axioms.{}.chiral_real_intersection"));
    let (proj, _) = from_report(&full, &per_geometry("axioms.{}.chiral_real_intersection"), 1e-14);
    hr.push("actions.rho_sign_on_hr".into());
    let (pass, detail) = from_report(&full, &hr, 1e-10);
    out.push(Outcome { number: 7, title: "H_R structure", pass: pass && exact && proj, detail });

    let dyn_ids = ids(&[
        "dynamics.weyl_identification",
        "dynamics.dirac_mass_shell",
        "dynamics.boosted_weyl_reduction",
        "dynamics.boosted_dirac_reduction",
    ]);
    let (pass, detail) = from_report(&full, &dyn_ids, 1e-9);
    let pass = pass && full.config.rapidity_max <= 2.0;
    out.push(Outcome { number: 8, title: "Dispersion", pass, detail });

    let (pass, detail) = from_report(&full, &per_geometry("boost.invariance.{}"), 1e-9);
    out.push(Outcome { number: 9, title: "Boost invariance", pass, detail });

    let again = verify::run(&config(&Group::ALL)).expect("valid config");
    let same = full.to_json() == again.to_json();
    out.push(Outcome {
        number: 10,
        title: "Determinism",
        pass: same,
        detail: format!("{} bytes, identical = {same}", full.to_json().len()),
    });

    for o in &out {
        println!("{} criterion {:>2} {:<24} {}", if o.pass { "PASS" } else { "FAIL" }, o.number, o.title, o.detail);
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!("elapsed {elapsed:.2} s");
    assert!(elapsed < 60.0, "acceptance run took {elapsed:.1} s");
    let failed: Vec<usize> = out.iter().filter(|o| !o.pass).map(|o| o.number).collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
