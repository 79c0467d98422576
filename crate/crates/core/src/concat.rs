//! Concatenation level maps: push a per-qubit outcome distribution through
//! one code level to the induced logical outcome distribution, and iterate.
//!
//! Each block is treated independently: a destroyed block whose measured
//! class is `P` behaves at the next level like a qubit measured in basis
//! `P`; a preserved block behaves like an unmeasured qubit. For the
//! single-logical-qubit codes used here a destroyed block always carries
//! exactly one measured class (the measured group is abelian), which is
//! asserted at runtime.

use crate::codes::CodeSpec;
use crate::monitor::{preservation_verdict, sample_pattern_with, stream_rng, MeasurementPattern, ProbabilityVector};
use crate::pauli::Basis;
use crate::{Error, Result};
use rayon::prelude::*;

/// Largest block size for which all `4^n` patterns are enumerated exactly.
pub const EXHAUSTIVE_MAX_QUBITS: usize = 8;

/// Outcome distribution of a single block: unmeasured / measured-in-X/Y/Z.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct OutcomeDistribution {
    pub none: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl OutcomeDistribution {
    pub fn new(none: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        let d = OutcomeDistribution { none, x, y, z };
        d.validate()?;
        Ok(d)
    }

    /// Uniform measured distribution at total measurement probability `p_m`.
    pub fn uniform(p_m: f64) -> Result<Self> {
        OutcomeDistribution::new(1.0 - p_m, p_m / 3.0, p_m / 3.0, p_m / 3.0)
    }

    pub fn from_probabilities(p: &ProbabilityVector) -> Result<Self> {
        p.validate()?;
        Ok(OutcomeDistribution {
            none: 1.0 - p.p_m(),
            x: p.px,
            y: p.py,
            z: p.pz,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let parts = [self.none, self.x, self.y, self.z];
        if parts.iter().any(|&p| !(-1e-12..=1.0 + 1e-12).contains(&p)) {
            return Err(Error::InvalidParameter(format!(
                "distribution entries out of range: {self:?}"
            )));
        }
        let sum: f64 = parts.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "distribution sums to {sum}, not 1"
            )));
        }
        Ok(())
    }

    /// Total measured probability.
    pub fn p_m(&self) -> f64 {
        self.x + self.y + self.z
    }

    pub fn probabilities(&self) -> ProbabilityVector {
        ProbabilityVector { px: self.x, py: self.y, pz: self.z }
    }
}

/// How a level map is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum FlowMethod {
    /// Weighted sum over all `4^n` patterns.
    Exhaustive,
    /// Monte Carlo with the given per-round sample count.
    MonteCarlo { samples: usize },
}

/// Per-round outcome distributions of an iterated level map. Round 0 is the
/// input physical distribution.
#[derive(Clone, Debug)]
pub struct FlowTrace {
    pub code_name: String,
    pub method: FlowMethod,
    pub rounds: Vec<OutcomeDistribution>,
}

impl FlowTrace {
    pub fn final_distribution(&self) -> &OutcomeDistribution {
        self.rounds.last().expect("trace holds at least round 0")
    }

    /// CSV rows `round,p_none,p_x,p_y,p_z,renyi2`; the uncertainty column is
    /// empty when nothing is measured.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("round,p_none,p_x,p_y,p_z,renyi2\n");
        for (r, d) in self.rounds.iter().enumerate() {
            let renyi = if d.p_m() > 0.0 {
                crate::experiment::fmt_float(renyi2_uncertainty(d, Renyi2Arity::Three).unwrap())
            } else {
                String::new()
            };
            out.push_str(&format!(
                "{r},{},{},{},{},{renyi}\n",
                crate::experiment::fmt_float(d.none),
                crate::experiment::fmt_float(d.x),
                crate::experiment::fmt_float(d.y),
                crate::experiment::fmt_float(d.z),
            ));
        }
        out
    }
}

/// Outcome of one block verdict, as seen by the next concatenation level.
fn classify_block(code: &CodeSpec, pattern: &MeasurementPattern) -> Result<Option<Basis>> {
    let v = preservation_verdict(code, pattern)?;
    if v.preserved {
        return Ok(None);
    }
    let gens = v.measured_logicals.gens();
    assert_eq!(
        gens.len(),
        1,
        "k = 1 block reported {} measured classes",
        gens.len()
    );
    let basis = gens[0].site(0).expect("nontrivial class on one qubit");
    Ok(Some(basis))
}

/// Verdict classification of every `4^n` pattern of a small block, indexed
/// by the base-4 pattern code (qubit `q` is digit `q`, 0 unmeasured then
/// X/Y/Z). Computed once per code and reused across level maps.
pub fn classify_all_patterns(code: &CodeSpec) -> Result<Vec<Option<Basis>>> {
    if code.k != 1 {
        return Err(Error::InvalidInput(format!(
            "level maps need a single logical qubit, {} has k = {}",
            code.name, code.k
        )));
    }
    if code.n > EXHAUSTIVE_MAX_QUBITS {
        return Err(Error::Unsupported(format!(
            "exhaustive enumeration of 4^{} patterns; use Monte Carlo",
            code.n
        )));
    }
    let total = 1usize << (2 * code.n);
    (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut pattern = MeasurementPattern::unmeasured(code.n);
            for q in 0..code.n {
                match (idx >> (2 * q)) & 3 {
                    1 => pattern.set(q, Some(Basis::X)),
                    2 => pattern.set(q, Some(Basis::Y)),
                    3 => pattern.set(q, Some(Basis::Z)),
                    _ => {}
                }
            }
            classify_block(code, &pattern)
        })
        .collect()
}

/// One exact concatenation step using a precomputed classification table.
pub fn level_map_with_table(
    n: usize,
    table: &[Option<Basis>],
    d: &OutcomeDistribution,
) -> OutcomeDistribution {
    let mut buckets = [0.0f64; 4];
    let site_probs = [d.none, d.x, d.y, d.z];
    for (idx, class) in table.iter().enumerate() {
        let mut w = 1.0;
        for q in 0..n {
            w *= site_probs[(idx >> (2 * q)) & 3];
        }
        let b = match class {
            None => 0,
            Some(Basis::X) => 1,
            Some(Basis::Y) => 2,
            Some(Basis::Z) => 3,
        };
        buckets[b] += w;
    }
    // Renormalize away float drift so iterated maps keep the distribution
    // invariant (the raw sum is 1 up to rounding, which compounds by a
    // factor of n per round otherwise).
    let total: f64 = buckets.iter().sum();
    OutcomeDistribution {
        none: buckets[0] / total,
        x: buckets[1] / total,
        y: buckets[2] / total,
        z: buckets[3] / total,
    }
}

/// Exact one-level map: sum over all `4^n` patterns, each weighted by the
/// product of per-qubit probabilities and classified by the block verdict.
pub fn level_map_exhaustive(code: &CodeSpec, d: &OutcomeDistribution) -> Result<OutcomeDistribution> {
    d.validate()?;
    let table = classify_all_patterns(code)?;
    Ok(level_map_with_table(code.n, &table, d))
}

/// Monte Carlo one-level map: unbiased bucket frequencies over `samples`
/// patterns. Deterministic in `(seed, round)`; sample `i` uses RNG stream
/// `round * samples + i`, so results do not depend on thread scheduling.
pub fn level_map_montecarlo(
    code: &CodeSpec,
    d: &OutcomeDistribution,
    samples: usize,
    seed: u64,
    round: u64,
) -> Result<OutcomeDistribution> {
    d.validate()?;
    if code.k != 1 {
        return Err(Error::InvalidInput(format!(
            "level maps need a single logical qubit, {} has k = {}",
            code.name, code.k
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("sample count must be positive".into()));
    }
    let p = d.probabilities();
    let outcomes: Vec<Option<Basis>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, round * samples as u64 + i);
            let pattern = sample_pattern_with(code.n, &p, &mut rng);
            classify_block(code, &pattern)
        })
        .collect::<Result<_>>()?;
    let mut counts = [0usize; 4];
    for o in outcomes {
        let b = match o {
            None => 0,
            Some(Basis::X) => 1,
            Some(Basis::Y) => 2,
            Some(Basis::Z) => 3,
        };
        counts[b] += 1;
    }
    let total = samples as f64;
    Ok(OutcomeDistribution {
        none: counts[0] as f64 / total,
        x: counts[1] as f64 / total,
        y: counts[2] as f64 / total,
        z: counts[3] as f64 / total,
    })
}

/// Iterate the level map for `rounds` concatenation levels. The trace has
/// `rounds + 1` entries, starting at the physical distribution.
pub fn flow(
    code: &CodeSpec,
    d0: &OutcomeDistribution,
    rounds: usize,
    method: FlowMethod,
    seed: u64,
) -> Result<FlowTrace> {
    if rounds == 0 {
        return Err(Error::InvalidParameter("need at least one round".into()));
    }
    d0.validate()?;
    let mut trace = vec![*d0];
    let table = match method {
        FlowMethod::Exhaustive => Some(classify_all_patterns(code)?),
        FlowMethod::MonteCarlo { .. } => None,
    };
    for round in 0..rounds {
        let prev = trace[round];
        let next = match (&method, &table) {
            (FlowMethod::Exhaustive, Some(t)) => level_map_with_table(code.n, t, &prev),
            (FlowMethod::MonteCarlo { samples }, _) => {
                level_map_montecarlo(code, &prev, *samples, seed, round as u64)?
            }
            _ => unreachable!(),
        };
        trace.push(next);
    }
    Ok(FlowTrace {
        code_name: code.name.clone(),
        method,
        rounds: trace,
    })
}

/// Log base of the measured-class uncertainty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Renyi2Arity {
    /// Three classes (X/Y/Z), uniform gives 1.
    Three,
    /// Four classes, for taxonomies with a fourth composite bucket.
    Four,
}

impl Renyi2Arity {
    fn base(self) -> f64 {
        match self {
            Renyi2Arity::Three => 3.0,
            Renyi2Arity::Four => 4.0,
        }
    }
}

/// Collision entropy `-log_b(sum q_i^2)` of a probability list, already
/// normalized by the caller.
pub fn renyi2_of(probs: &[f64], arity: Renyi2Arity) -> f64 {
    let s: f64 = probs.iter().map(|q| q * q).sum();
    -s.ln() / arity.base().ln()
}

/// Uncertainty of which class gets measured: the collision entropy of the
/// measured buckets conditioned on "something was measured".
pub fn renyi2_uncertainty(d: &OutcomeDistribution, arity: Renyi2Arity) -> Result<f64> {
    let pm = d.p_m();
    if pm <= 0.0 {
        return Err(Error::InvalidInput(
            "uncertainty undefined when nothing is measured".into(),
        ));
    }
    Ok(renyi2_of(&[d.x / pm, d.y / pm, d.z / pm], arity))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{five_qubit, reed_muller_15, steane};

    fn closed_form(p: f64) -> f64 {
        (10.0 * p.powi(3) - p.powi(5)) / 9.0
    }

    #[test]
    fn five_qubit_uniform_matches_closed_form() {
        let code = five_qubit();
        let table = classify_all_patterns(&code).unwrap();
        for i in 0..=10 {
            let p = i as f64 / 10.0;
            let d = OutcomeDistribution::uniform(p).unwrap();
            let out = level_map_with_table(code.n, &table, &d);
            assert!(
                (out.p_m() - closed_form(p)).abs() <= 1e-10,
                "p={p}: {} vs {}",
                out.p_m(),
                closed_form(p)
            );
            // Uniform in, uniform out.
            assert!((out.x - out.p_m() / 3.0).abs() <= 1e-10);
            assert!((out.y - out.p_m() / 3.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn fixed_points() {
        let code = five_qubit();
        let nothing = OutcomeDistribution::new(1.0, 0.0, 0.0, 0.0).unwrap();
        let out = level_map_exhaustive(&code, &nothing).unwrap();
        assert_eq!(out, nothing);
        let all = OutcomeDistribution::uniform(1.0).unwrap();
        let out = level_map_exhaustive(&code, &all).unwrap();
        assert!((out.p_m() - 1.0).abs() <= 1e-12);
        for (a, b) in [(out.x, all.x), (out.y, all.y), (out.z, all.z)] {
            assert!((a - b).abs() <= 1e-10);
        }
    }

    #[test]
    fn five_qubit_exchange_symmetry() {
        let code = five_qubit();
        let table = classify_all_patterns(&code).unwrap();
        let d = OutcomeDistribution::new(0.4, 0.1, 0.2, 0.3).unwrap();
        let base = level_map_with_table(code.n, &table, &d);
        let swapped = OutcomeDistribution::new(0.4, 0.3, 0.2, 0.1).unwrap(); // x <-> z
        let out = level_map_with_table(code.n, &table, &swapped);
        assert!((out.x - base.z).abs() <= 1e-12);
        assert!((out.z - base.x).abs() <= 1e-12);
        assert!((out.y - base.y).abs() <= 1e-12);
    }

    #[test]
    fn monte_carlo_agrees_with_exhaustive() {
        let code = five_qubit();
        let d = OutcomeDistribution::uniform(0.6).unwrap();
        let exact = level_map_exhaustive(&code, &d).unwrap();
        let samples = 100_000;
        let mc = level_map_montecarlo(&code, &d, samples, 31, 0).unwrap();
        for (est, truth) in [
            (mc.none, exact.none),
            (mc.x, exact.x),
            (mc.y, exact.y),
            (mc.z, exact.z),
        ] {
            let sigma = (truth * (1.0 - truth) / samples as f64).sqrt();
            assert!(
                (est - truth).abs() <= 4.0 * sigma,
                "{est} vs {truth} (sigma {sigma})"
            );
        }
    }

    #[test]
    fn monte_carlo_deterministic() {
        let code = steane();
        let d = OutcomeDistribution::uniform(0.8).unwrap();
        let a = level_map_montecarlo(&code, &d, 500, 9, 0).unwrap();
        let b = level_map_montecarlo(&code, &d, 500, 9, 0).unwrap();
        assert_eq!(a, b);
        assert!(level_map_montecarlo(&code, &d, 0, 9, 0).is_err());
    }

    #[test]
    fn reed_muller_buckets_normalized() {
        let code = reed_muller_15();
        let d = OutcomeDistribution::uniform(0.95).unwrap();
        let out = level_map_montecarlo(&code, &d, 1000, 12, 0).unwrap();
        assert!((out.none + out.p_m() - 1.0).abs() <= 1e-12);
        assert!(classify_all_patterns(&code).is_err()); // n = 15 too large
    }

    #[test]
    fn steane_fully_measured_is_always_destroyed_symmetrically() {
        let code = steane();
        let table = classify_all_patterns(&code).unwrap();
        let d = OutcomeDistribution::new(0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).unwrap();
        let out = level_map_with_table(code.n, &table, &d);
        assert!(out.none.abs() <= 1e-12);
        for b in [out.x, out.y, out.z] {
            assert!((b - 1.0 / 3.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn flow_contracts_at_high_measurement_rate() {
        let code = five_qubit();
        let d0 = OutcomeDistribution::uniform(0.95).unwrap();
        let trace = flow(&code, &d0, 8, FlowMethod::Exhaustive, 0).unwrap();
        assert_eq!(trace.rounds.len(), 9);
        assert!(trace.final_distribution().none >= 0.99);
        for d in &trace.rounds {
            assert!((d.none + d.p_m() - 1.0).abs() <= 1e-12);
        }
        // Unstable fixed point stays put.
        let stuck = flow(
            &code,
            &OutcomeDistribution::uniform(1.0).unwrap(),
            3,
            FlowMethod::Exhaustive,
            0,
        )
        .unwrap();
        assert!(stuck.final_distribution().p_m() >= 1.0 - 1e-9);
    }

    #[test]
    fn steane_skewed_ray_flows_to_x() {
        let code = steane();
        let d0 = OutcomeDistribution::new(0.05, 0.6, 0.2, 0.15).unwrap();
        let trace = flow(&code, &d0, 7, FlowMethod::Exhaustive, 0).unwrap();
        assert!(trace.final_distribution().x >= 0.99);
    }

    #[test]
    fn renyi2_values() {
        let u = OutcomeDistribution::new(0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).unwrap();
        assert!((renyi2_uncertainty(&u, Renyi2Arity::Three).unwrap() - 1.0).abs() <= 1e-12);
        let det = OutcomeDistribution::new(0.0, 1.0, 0.0, 0.0).unwrap();
        assert!(renyi2_uncertainty(&det, Renyi2Arity::Three).unwrap().abs() <= 1e-12);
        let half = OutcomeDistribution::new(0.0, 0.5, 0.5, 0.0).unwrap();
        let expect = (2.0f64).ln() / (3.0f64).ln(); // -log3(1/2)
        assert!((renyi2_uncertainty(&half, Renyi2Arity::Three).unwrap() - expect).abs() <= 1e-12);
        let none = OutcomeDistribution::new(1.0, 0.0, 0.0, 0.0).unwrap();
        assert!(renyi2_uncertainty(&none, Renyi2Arity::Three).is_err());
    }

    #[test]
    fn two_level_map_matches_explicit_25_qubit_code() {
        // The recursion never materializes multi-level codes; the explicit
        // two-level constructor exists to cross-check it.
        let inner = five_qubit();
        let table = classify_all_patterns(&inner).unwrap();
        let big = crate::codes::concatenated_five_qubit();
        for p_m in [0.5, 0.8] {
            let d0 = OutcomeDistribution::uniform(p_m).unwrap();
            let once = level_map_with_table(inner.n, &table, &d0);
            let twice = level_map_with_table(inner.n, &table, &once);

            let samples = 4000u64;
            let p = d0.probabilities();
            let mut counts = [0usize; 4];
            for i in 0..samples {
                let pattern =
                    crate::monitor::sample_pattern(big.n, &p, 2025 + p_m.to_bits(), i).unwrap();
                let v = crate::monitor::preservation_verdict(&big, &pattern).unwrap();
                let bucket = if v.preserved {
                    0
                } else {
                    match v.measured_logicals.gens()[0].site(0).unwrap() {
                        Basis::X => 1,
                        Basis::Y => 2,
                        Basis::Z => 3,
                    }
                };
                counts[bucket] += 1;
            }
            for (count, truth) in counts.iter().zip([twice.none, twice.x, twice.y, twice.z]) {
                let est = *count as f64 / samples as f64;
                let sigma = (truth * (1.0 - truth) / samples as f64).sqrt().max(1e-4);
                assert!(
                    (est - truth).abs() <= 4.0 * sigma,
                    "p_m={p_m}: {est} vs {truth}"
                );
            }
        }
    }

    #[test]
    fn trace_csv_shape() {
        let code = five_qubit();
        let trace = flow(
            &code,
            &OutcomeDistribution::uniform(0.5).unwrap(),
            2,
            FlowMethod::Exhaustive,
            0,
        )
        .unwrap();
        let csv = trace.to_csv();
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines.len(), 4); // header + 3 rounds
        assert!(lines[0].starts_with("round,"));
    }
}
