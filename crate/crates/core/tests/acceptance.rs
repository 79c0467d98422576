//! Acceptance suite: every release gate runs here, one test per criterion,
//! each printing a single `ACCEPTANCE NN name: PASS/FAIL (details)` line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see all lines;
//! failing criteria print theirs regardless.

use qec_monitor::choi::{build_choi, build_choi_subsystem, measure_pattern_on_choi, stabilizer_preserved, subsystem_preserved, apply_measurements};
use qec_monitor::codes::{bacon_shor, color_triangular, five_qubit, reed_muller_15, steane, toric, CodeSpec};
use qec_monitor::concat::{classify_all_patterns, flow, level_map_with_table, FlowMethod, OutcomeDistribution};
use qec_monitor::experiment::{run_concat, run_sweep, run_threshold, ExperimentConfig};
use qec_monitor::haar::{haar_code_purity_stats, predicted_purity_exact};
use qec_monitor::monitor::{erasure_correctable, preservation_verdict, sample_pattern, MeasurementPattern, ProbabilityVector};
use qec_monitor::pauli::{Basis, PauliOp};
use qec_monitor::toric::{full_y_commutant_basis, y_classify_measured, y_commutant_basis, MeasuredClass};

fn report(number: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE {number:02} {name}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn preserved_fraction(code: &CodeSpec, p: &ProbabilityVector, samples: u64, seed: u64) -> f64 {
    let mut preserved = 0u64;
    for i in 0..samples {
        let pattern = sample_pattern(code.n, p, seed, i).unwrap();
        if preservation_verdict(code, &pattern).unwrap().preserved {
            preserved += 1;
        }
    }
    preserved as f64 / samples as f64
}

#[test]
fn acceptance_01_five_qubit_closed_form() {
    let code = five_qubit();
    let table = classify_all_patterns(&code).unwrap();
    let mut max_err = 0.0f64;
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let out = level_map_with_table(code.n, &table, &OutcomeDistribution::uniform(p).unwrap());
        let expect = (10.0 * p.powi(3) - p.powi(5)) / 9.0;
        max_err = max_err.max((out.p_m() - expect).abs());
    }
    let pass = max_err <= 1e-10;
    report(1, "five_qubit_closed_form", pass, &format!("max_err={max_err:.2e}"));
    assert!(pass);
}

#[test]
fn acceptance_02_five_qubit_universality() {
    let code = five_qubit();
    let mut worst = 1.0f64;
    let resolution = 4; // 15 rays covering the frequency simplex
    for a in 0..=resolution {
        for b in 0..=(resolution - a) {
            let c = resolution - a - b;
            let scale = 0.95 / resolution as f64;
            let d0 = OutcomeDistribution::from_probabilities(&ProbabilityVector::new(
                a as f64 * scale,
                b as f64 * scale,
                c as f64 * scale,
            ).unwrap())
            .unwrap();
            let trace = flow(&code, &d0, 8, FlowMethod::Exhaustive, 0).unwrap();
            worst = worst.min(trace.final_distribution().none);
        }
    }
    let pass = worst >= 0.99;
    report(2, "five_qubit_universality", pass, &format!("min_final_preservation={worst:.6}"));
    assert!(pass);
}

#[test]
fn acceptance_03_five_qubit_uniform_limit() {
    let code = five_qubit();
    let table = classify_all_patterns(&code).unwrap();
    let out = level_map_with_table(code.n, &table, &OutcomeDistribution::uniform(1.0).unwrap());
    let dev = [out.x, out.y, out.z]
        .iter()
        .map(|b| (b - 1.0 / 3.0).abs())
        .fold(0.0f64, f64::max)
        .max(out.none.abs());
    // The three buckets also agree with each other by exchange symmetry.
    let sym = (out.x - out.y).abs().max((out.y - out.z).abs());
    let pass = dev <= 1e-10 && sym <= 1e-10;
    report(3, "five_qubit_uniform_limit", pass, &format!("max_dev={dev:.2e} sym_dev={sym:.2e}"));
    assert!(pass);
}

#[test]
fn acceptance_04_steane_phase_diagram() {
    let code = steane();
    let resolution = 20usize;
    let p_m = 0.95f64;
    let mut worst_inner = 1.0f64;
    let mut worst_outer = 0.0f64;
    let mut inner_pts = 0;
    let mut outer_pts = 0;
    for a in 0..=resolution {
        for b in 0..=(resolution - a) {
            let c = resolution - a - b;
            let scale = p_m / resolution as f64;
            let (px, py, pz) = (a as f64 * scale, b as f64 * scale, c as f64 * scale);
            let max_p = px.max(py).max(pz);
            let inner = max_p <= 0.45;
            let outer = max_p >= 0.55;
            if !inner && !outer {
                continue; // margin band around the phase boundary
            }
            let d0 = OutcomeDistribution::from_probabilities(
                &ProbabilityVector::new(px, py, pz).unwrap(),
            )
            .unwrap();
            let seed = (a * 100 + b) as u64;
            let trace = flow(&code, &d0, 7, FlowMethod::MonteCarlo { samples: 1000 }, seed).unwrap();
            let f = trace.final_distribution().none;
            if inner {
                inner_pts += 1;
                worst_inner = worst_inner.min(f);
            } else {
                outer_pts += 1;
                worst_outer = worst_outer.max(f);
            }
        }
    }
    let pass = worst_inner >= 0.9 && worst_outer <= 0.1;
    report(
        4,
        "steane_phase_diagram",
        pass,
        &format!(
            "inner_pts={inner_pts} min_inner={worst_inner:.4} outer_pts={outer_pts} max_outer={worst_outer:.4}"
        ),
    );
    assert!(pass);
}

#[test]
fn acceptance_05_reed_muller_threshold() {
    let cfg = ExperimentConfig::from_json(
        r#"{"kind":"threshold","code":{"name":"reed_muller_15"},
            "ray":[0.3333333333333333,0.3333333333333333,0.3333333333333334],
            "rounds":3,"samples":1000,"seed":5,"tolerance":0.01,"method":"montecarlo"}"#,
    )
    .unwrap();
    let table = run_threshold(&cfg).unwrap();
    let estimate: f64 = table.rows[0][5].parse().unwrap();
    let pass = (0.5..=0.7).contains(&estimate);
    report(5, "reed_muller_threshold", pass, &format!("p_m_threshold={estimate:.4}"));
    assert!(pass);
}

#[test]
fn acceptance_06_toric_preservation_points() {
    let (code, _) = toric(21).unwrap();
    let samples = 100;
    let f_interior = preserved_fraction(
        &code,
        &ProbabilityVector::new(0.3, 0.3, 0.35).unwrap(),
        samples,
        60,
    );
    let f_super = preserved_fraction(
        &code,
        &ProbabilityVector::new(0.6, 0.0, 0.35).unwrap(),
        samples,
        61,
    );
    let f_pure_y = preserved_fraction(
        &code,
        &ProbabilityVector::new(0.0, 0.95, 0.0).unwrap(),
        samples,
        62,
    );
    let pass = f_interior >= 0.95 && f_super <= 0.05 && f_pure_y >= 0.95;
    report(
        6,
        "toric_preservation_points",
        pass,
        &format!(
            "interior(0.3,0.3,0.35)={f_interior:.2} supercritical(0.6,0,0.35)={f_super:.2} pure_y(0,0.95,0)={f_pure_y:.2}"
        ),
    );
    assert!(pass);
}

#[test]
fn acceptance_07_toric_x_threshold_is_percolation() {
    let cfg = ExperimentConfig::from_json(
        r#"{"kind":"threshold","code":{"name":"toric","size":21},
            "ray":[1.0,0.0,0.0],"rounds":0,"samples":100,"seed":7,"tolerance":0.01}"#,
    )
    .unwrap();
    let table = run_threshold(&cfg).unwrap();
    let estimate: f64 = table.rows[0][5].parse().unwrap();
    let pass = (estimate - 0.5).abs() <= 0.05;
    report(7, "toric_x_threshold", pass, &format!("estimate={estimate:.4}"));
    assert!(pass);
}

#[test]
fn acceptance_08_y_commutant_dimension() {
    let mut pass = true;
    let mut details = Vec::new();
    for l in [3usize, 5, 8] {
        let lines = y_commutant_basis(l).unwrap();
        let (code, _) = toric(l).unwrap();
        let full = full_y_commutant_basis(&code);
        let dim = full.len();
        let expected = 2 * l - 1;
        let full_span = full.span();
        let lines_inside = lines
            .generators
            .iter()
            .all(|g| full_span.contains(&g.to_symplectic()));
        let line_span = lines.generators.span();
        let spans_coincide =
            lines_inside && full.iter().all(|g| line_span.contains(&g.to_symplectic()));
        if dim != expected || !spans_coincide {
            pass = false;
        }
        details.push(format!(
            "L={l}: dim={dim} expected={expected} lines_inside={lines_inside} coincide={spans_coincide}"
        ));
    }
    report(8, "y_commutant_dimension", pass, &details.join("; "));
    assert!(pass);
}

#[test]
fn acceptance_09_all_y_measured_classes() {
    let class3 = y_classify_measured(3, &MeasurementPattern::uniform(18, Basis::Y)).unwrap();
    let class4 = y_classify_measured(4, &MeasurementPattern::uniform(32, Basis::Y)).unwrap();
    let pass = class3 == MeasuredClass::PairBasis(Basis::Y, Basis::Y)
        && class4 == MeasuredClass::TwinPair;
    report(
        9,
        "all_y_measured_classes",
        pass,
        &format!("L3={class3:?} L4={class4:?}"),
    );
    assert!(pass);
}

#[test]
fn acceptance_10_color_code_phase_points() {
    // Interior: the balanced permutations of (0.3, 0.3, 0.35). Exterior: all
    // resolution-20 grid points at p_m = 0.95 with some rate past the 0.55
    // margin (the same margin convention as `steane_phase_diagram`).
    let (code, _) = color_triangular(21).unwrap();
    let samples = 100;
    let mut min_inner = 1.0f64;
    for (i, p) in [
        ProbabilityVector::new(0.3, 0.3, 0.35).unwrap(),
        ProbabilityVector::new(0.35, 0.3, 0.3).unwrap(),
        ProbabilityVector::new(0.3, 0.35, 0.3).unwrap(),
    ]
    .iter()
    .enumerate()
    {
        min_inner = min_inner.min(preserved_fraction(&code, p, samples, 100 + i as u64));
    }
    let resolution = 20usize;
    let p_m = 0.95f64;
    let mut max_outer = 0.0f64;
    let mut outer_pts = 0;
    let mut point_idx = 0u64;
    for a in 0..=resolution {
        for b in 0..=(resolution - a) {
            let c = resolution - a - b;
            let scale = p_m / resolution as f64;
            let (px, py, pz) = (a as f64 * scale, b as f64 * scale, c as f64 * scale);
            point_idx += 1;
            if px.max(py).max(pz) < 0.55 {
                continue;
            }
            let p = ProbabilityVector::new(px, py, pz).unwrap();
            let f = preserved_fraction(&code, &p, samples, 1000 + point_idx);
            outer_pts += 1;
            max_outer = max_outer.max(f);
        }
    }
    let pass = min_inner >= 0.9 && max_outer <= 0.1;
    report(
        10,
        "color_code_phase_points",
        pass,
        &format!("min_interior={min_inner:.2} outer_pts={outer_pts} max_exterior={max_outer:.2}"),
    );
    assert!(pass);
}

#[test]
fn acceptance_11_bacon_shor_destruction() {
    let code = bacon_shor(20).unwrap();
    let samples = 100;
    let f_xz = preserved_fraction(
        &code,
        &ProbabilityVector::new(0.1, 0.0, 0.1).unwrap(),
        samples,
        111,
    );
    let f_y = preserved_fraction(
        &code,
        &ProbabilityVector::new(0.0, 0.1, 0.0).unwrap(),
        samples,
        112,
    );
    let destroyed_xz = ((1.0 - f_xz) * samples as f64).round() as u64;
    let destroyed_y = ((1.0 - f_y) * samples as f64).round() as u64;
    let pass = destroyed_xz >= 99 && destroyed_y >= 99;
    report(
        11,
        "bacon_shor_destruction",
        pass,
        &format!("destroyed(0.1,0,0.1)={destroyed_xz}/100 destroyed(0,0.1,0)={destroyed_y}/100"),
    );
    assert!(pass);
}

#[test]
fn acceptance_12_erasure_implies_preservation() {
    let codes: Vec<CodeSpec> = vec![
        five_qubit(),
        steane(),
        reed_muller_15(),
        toric(3).unwrap().0,
        bacon_shor(3).unwrap(),
    ];
    let total = 10_000u64;
    let mut checked = 0u64;
    let mut violations = 0u64;
    for i in 0..total {
        let code = &codes[(i % codes.len() as u64) as usize];
        // Spread total rates over [0, 1) so both phases are exercised.
        let p_m = (i as f64 / total as f64).fract();
        let p = ProbabilityVector::new(p_m / 3.0, p_m / 3.0, p_m / 3.0).unwrap();
        let pattern = sample_pattern(code.n, &p, 1200, i).unwrap();
        if erasure_correctable(code, &pattern.measured_indices()).unwrap() {
            checked += 1;
            if !preservation_verdict(code, &pattern).unwrap().preserved {
                violations += 1;
            }
        }
    }
    let pass = violations == 0;
    report(
       12,
        "erasure_implies_preservation",
        pass,
        &format!("correctable_instances={checked}/{total} violations={violations}"),
    );
    assert!(pass);
}

#[test]
fn acceptance_13_oracle_equivalence() {
    let entries: Vec<CodeSpec> = vec![
        five_qubit(),
        steane(),
        toric(2).unwrap().0,
        toric(3).unwrap().0,
        toric(4).unwrap().0,
        bacon_shor(2).unwrap(),
        bacon_shor(3).unwrap(),
        bacon_shor(4).unwrap(),
    ];
    let total = 1000u64;
    let mut mismatches = 0u64;
    let mut group_mismatches = 0u64;
    for i in 0..total {
        let code = &entries[(i % entries.len() as u64) as usize];
        let p_m = 0.1 + 0.85 * (i as f64 / total as f64);
        let p = ProbabilityVector::new(p_m / 3.0, p_m / 3.0, p_m / 3.0).unwrap();
        let pattern = sample_pattern(code.n, &p, 1300, i).unwrap();
        let fast = preservation_verdict(code, &pattern).unwrap().preserved;
        let state = if code.is_subsystem() {
            build_choi_subsystem(code).unwrap()
        } else {
            build_choi(code).unwrap()
        };
        let updated = measure_pattern_on_choi(&state, &pattern).unwrap();
        let slow = if code.is_subsystem() {
            subsystem_preserved(&updated).unwrap()
        } else {
            stabilizer_preserved(&updated, code.k).unwrap()
        };
        if fast != slow {
            mismatches += 1;
        }
        // Single-shot group update vs measuring one operator at a time.
        let mut sequential = state.clone();
        for (q, basis) in pattern.measured() {
            let op = PauliOp::single(state.n_total(), q, basis);
            sequential = apply_measurements(&sequential, &[op]).unwrap();
        }
        if !updated.same_group(&sequential) {
            group_mismatches += 1;
        }
    }
    let pass = mismatches == 0 && group_mismatches == 0;
    report(
        13,
        "oracle_equivalence",
        pass,
        &format!("instances={total} verdict_mismatches={mismatches} group_mismatches={group_mismatches}"),
    );
    assert!(pass);
}

#[test]
fn acceptance_14_haar_purity() {
    let stats = haar_code_purity_stats(1, 10, 6, 200, 140).unwrap();
    let err = (stats.mean - predicted_purity_exact(64.0, 16.0, 2.0)).abs();
    let tol = 3.0 * stats.sem();
    let sharp_ok = err <= tol;
    let mut trend_details = Vec::new();
    let mut trend_ok = true;
    for m in [4usize, 6, 8] {
        let s = haar_code_purity_stats(1, 10, m, 200, 141 + m as u64).unwrap();
        let two_norm_mean = s.mean - 1.0 / s.d_r as f64;
        let target = 1.0 / s.d_b as f64;
        let ok = (two_norm_mean - target).abs() <= 3.0 * s.std;
        trend_ok &= ok;
        trend_details.push(format!("m={m}: |rho-mu|^2={two_norm_mean:.4} 1/d_b={target:.4}"));
    }
    let pass = sharp_ok && trend_ok;
    report(
        14,
        "haar_purity",
        pass,
        &format!("|mean-pred|={err:.5} tol={tol:.5}; {}", trend_details.join("; ")),
    );
    assert!(pass);
}

#[test]
fn acceptance_15_determinism_across_thread_counts() {
    let sweep_cfg = ExperimentConfig::from_json(
        r#"{"kind":"sweep","code":{"name":"toric","size":5},
            "grid":{"simplex_resolution":2},"p_m":0.9,"samples":50,"seed":15}"#,
    )
    .unwrap();
    let concat_cfg = ExperimentConfig::from_json(
        r#"{"kind":"concat","code":{"name":"steane"},
            "grid":{"points":[[0.3,0.3,0.35]]},"rounds":4,"method":"montecarlo",
            "samples":300,"seed":15}"#,
    )
    .unwrap();
    let threshold_cfg = ExperimentConfig::from_json(
        r#"{"kind":"threshold","code":{"name":"toric","size":5},
            "ray":[1.0,0.0,0.0],"rounds":0,"samples":60,"seed":15,"tolerance":0.02}"#,
    )
    .unwrap();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let eight = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
    let mut pass = true;
    let mut details = Vec::new();
    {
        let a = single.install(|| run_sweep(&sweep_cfg)).unwrap();
        let b = eight.install(|| run_sweep(&sweep_cfg)).unwrap();
        let same = a.to_csv() == b.to_csv() && a.to_json() == b.to_json();
        pass &= same;
        details.push(format!("sweep_identical={same}"));
    }
    {
        let a = single.install(|| run_concat(&concat_cfg)).unwrap();
        let b = eight.install(|| run_concat(&concat_cfg)).unwrap();
        let same = a.to_csv() == b.to_csv();
        pass &= same;
        details.push(format!("concat_identical={same}"));
    }
    {
        let a = single.install(|| run_threshold(&threshold_cfg)).unwrap();
        let b = eight.install(|| run_threshold(&threshold_cfg)).unwrap();
        let same = a.to_csv() == b.to_csv();
        pass &= same;
        details.push(format!("threshold_identical={same}"));
    }
    {
        let haar_cfg = ExperimentConfig::from_json(
            r#"{"kind":"haar","haar":{"k":1,"n":8,"m":[3,5]},
                "code":{"name":"five_qubit"},"samples":50,"seed":15}"#,
        )
        .unwrap();
        let a = single.install(|| qec_monitor::experiment::run_haar(&haar_cfg)).unwrap();
        let b = eight.install(|| qec_monitor::experiment::run_haar(&haar_cfg)).unwrap();
        let same = a.to_csv() == b.to_csv();
        pass &= same;
        details.push(format!("haar_identical={same}"));
    }
    report(15, "determinism", pass, &details.join(" "));
    assert!(pass);
}
