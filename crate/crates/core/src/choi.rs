//! Choi-state stabilizer groups, the measurement update rule, and subsystem
//! entropies of stabilizer states.
//!
//! This is the general-purpose oracle for [`crate::monitor`]: it answers the
//! same preservation question by explicitly building the code's Choi state
//! (system qubits entangled with reference qubits through the encoding
//! isometry), updating its stabilizer group under measurement via
//! `S' = <S ∩ C(M), M>`, and reading entropies off the updated group with
//! the supported-subgroup formula `S_region = |region| − λ_region`.
//!
//! Groups are signless throughout; see [`crate::pauli`] for why that is
//! sufficient. Note one consequence: the updated group describes the
//! outcome-conditioned pure state, so mutual information between system and
//! reference drops to `2k − 2j` when `j` independent logical classes were
//! measured. The outcome-averaged (dephased) state, whose group is
//! `S ∩ C(M)` alone, retains the `j` classical bits instead; the verdict
//! booleans agree either way.

use crate::codes::CodeSpec;
use crate::gf2::{BitMatrix, BitVec, Echelon};
use crate::pauli::{GeneratorSet, PauliOp, Role};
use crate::{Error, Result};

/// Which part of a Choi state a qubit belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// Physical (system) qubits, the only ones measurements act on.
    System,
    /// Reference qubits entangled with the gauge logicals.
    RefGauge,
    /// Reference qubits entangled with the bare logicals.
    RefBare,
}

/// A (possibly mixed) stabilizer state: an independent, mutually commuting
/// generator list plus region labels for its qubits.
#[derive(Clone, Debug)]
pub struct StabilizerState {
    group: Vec<PauliOp>,
    regions: Vec<Region>,
}

impl StabilizerState {
    pub fn new(group: Vec<PauliOp>, regions: Vec<Region>) -> Result<Self> {
        let n_total = regions.len();
        let set = GeneratorSet::new(group, Role::Stabilizer, n_total)
            .map_err(|e| Error::InvalidInput(format!("stabilizer group: {e}")))?;
        Ok(StabilizerState {
            group: set.gens().to_vec(),
            regions,
        })
    }

    fn new_unchecked(group: Vec<PauliOp>, regions: Vec<Region>) -> Self {
        StabilizerState { group, regions }
    }

    pub fn n_total(&self) -> usize {
        self.regions.len()
    }

    pub fn group(&self) -> &[PauliOp] {
        &self.group
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    /// Pure iff the generator count equals the qubit count.
    pub fn is_pure(&self) -> bool {
        self.group.len() == self.n_total()
    }

    /// Qubit indices labelled `region`.
    pub fn region_qubits(&self, region: Region) -> Vec<usize> {
        self.regions
            .iter()
            .enumerate()
            .filter_map(|(q, &r)| (r == region).then_some(q))
            .collect()
    }

    /// Unsigned group equality (same symplectic span and rank).
    pub fn same_group(&self, other: &StabilizerState) -> bool {
        if self.group.len() != other.group.len() {
            return false;
        }
        let span = Echelon::from_rows(
            self.group
                .iter()
                .map(PauliOp::to_symplectic)
                .collect::<Vec<_>>()
                .iter(),
        );
        other.group.iter().all(|g| span.contains(&g.to_symplectic()))
    }
}

fn embed(op: &PauliOp, n_total: usize) -> PauliOp {
    let n = op.n();
    let mut x = BitVec::zeros(n_total);
    let mut z = BitVec::zeros(n_total);
    for i in op.x().iter_ones() {
        x.set(i, true);
    }
    for i in op.z().iter_ones() {
        z.set(i, true);
    }
    debug_assert!(n <= n_total);
    PauliOp::from_parts(x, z).expect("embedding preserves lengths")
}

/// Choi state of a stabilizer code: the code stabilizers act on the system
/// alone, and each logical pair is tied to one reference qubit through
/// `X̄_j ⊗ X_j` and `Z̄_j ⊗ Z_j`. Pure on `n + k` qubits.
pub fn build_choi(code: &CodeSpec) -> Result<StabilizerState> {
    if code.g != 0 {
        return Err(Error::InvalidInput(
            "subsystem code passed to the stabilizer Choi constructor".into(),
        ));
    }
    let n_total = code.n + code.k;
    let mut group: Vec<PauliOp> = code
        .stabilizers
        .iter()
        .map(|s| embed(s, n_total))
        .collect();
    for (j, (lx, lz)) in code.logical_pairs().enumerate() {
        let mut gx = embed(lx, n_total);
        gx.mul_assign(&PauliOp::single(n_total, code.n + j, crate::pauli::Basis::X));
        let mut gz = embed(lz, n_total);
        gz.mul_assign(&PauliOp::single(n_total, code.n + j, crate::pauli::Basis::Z));
        group.push(gx);
        group.push(gz);
    }
    let mut regions = vec![Region::System; code.n];
    regions.extend(vec![Region::RefBare; code.k]);
    debug_assert_eq!(group.len(), n_total);
    Ok(StabilizerState::new_unchecked(group, regions))
}

/// Split a generating set into hyperbolic (anticommuting) pairs plus a
/// commuting center, by symplectic Gram–Schmidt. The center spans the
/// elements commuting with the whole input span.
pub fn hyperbolic_decomposition(gens: &[PauliOp]) -> (Vec<(PauliOp, PauliOp)>, Vec<PauliOp>) {
    let mut pool: Vec<PauliOp> = gens.to_vec();
    let mut pairs = Vec::new();
    let mut center = Vec::new();
    while let Some(a) = pool.first().cloned() {
        pool.remove(0);
        let mate = pool.iter().position(|b| a.anticommutes_unchecked(b));
        match mate {
            None => center.push(a),
            Some(i) => {
                let b = pool.remove(i);
                for c in pool.iter_mut() {
                    if c.anticommutes_unchecked(&b) {
                        c.mul_assign(&a);
                    }
                    if c.anticommutes_unchecked(&a) {
                        c.mul_assign(&b);
                    }
                }
                pairs.push((a, b));
            }
        }
    }
    (pairs, crate::pauli::independent_subset(&center))
}

/// Choi state of a subsystem code on `n + g + k` qubits: gauge logical pairs
/// are tied to `RefGauge` qubits, bare logical pairs to `RefBare` qubits.
pub fn build_choi_subsystem(code: &CodeSpec) -> Result<StabilizerState> {
    if code.g == 0 {
        return Err(Error::InvalidInput(
            "stabilizer code passed to the subsystem Choi constructor".into(),
        ));
    }
    let (pairs, center) = hyperbolic_decomposition(code.gauge_gens.gens());
    if pairs.len() != code.g {
        return Err(Error::InvalidInput(format!(
            "gauge group yields {} hyperbolic pairs, expected g = {}",
            pairs.len(),
            code.g
        )));
    }
    debug_assert_eq!(center.len(), code.n - code.k - code.g);
    let n_total = code.n + code.g + code.k;
    let mut group: Vec<PauliOp> = code
        .stabilizers
        .iter()
        .map(|s| embed(s, n_total))
        .collect();
    for (j, (gx, gz)) in pairs.iter().enumerate() {
        let ref_q = code.n + j;
        let mut a = embed(gx, n_total);
        a.mul_assign(&PauliOp::single(n_total, ref_q, crate::pauli::Basis::X));
        let mut b = embed(gz, n_total);
        b.mul_assign(&PauliOp::single(n_total, ref_q, crate::pauli::Basis::Z));
        group.push(a);
        group.push(b);
    }
    for (j, (lx, lz)) in code.logical_pairs().enumerate() {
        let ref_q = code.n + code.g + j;
        let mut a = embed(lx, n_total);
        a.mul_assign(&PauliOp::single(n_total, ref_q, crate::pauli::Basis::X));
        let mut b = embed(lz, n_total);
        b.mul_assign(&PauliOp::single(n_total, ref_q, crate::pauli::Basis::Z));
        group.push(a);
        group.push(b);
    }
    let mut regions = vec![Region::System; code.n];
    regions.extend(vec![Region::RefGauge; code.g]);
    regions.extend(vec![Region::RefBare; code.k]);
    debug_assert_eq!(group.len(), n_total);
    Ok(StabilizerState::new_unchecked(group, regions))
}

/// Update the stabilizer group under projective measurement of a mutually
/// commuting set: `S' = <S ∩ C(M), M>`, with greedy independence filtering
/// in deterministic order (centralizer part first, then the measured
/// operators).
pub fn apply_measurements(state: &StabilizerState, measured: &[PauliOp]) -> Result<StabilizerState> {
    let n_total = state.n_total();
    if measured.iter().any(|m| m.n() != n_total) {
        return Err(Error::DimensionMismatch(
            "measured operator on wrong qubit count".into(),
        ));
    }
    for i in 0..measured.len() {
        for j in i + 1..measured.len() {
            if measured[i].anticommutes_unchecked(&measured[j]) {
                return Err(Error::InvalidInput(format!(
                    "measured operators {i} and {j} anticommute"
                )));
            }
        }
    }
    let centralizer = crate::pauli::centralizer_intersection(state.group(), measured);
    let mut ech = Echelon::new();
    let mut group = Vec::new();
    for op in centralizer.iter().chain(measured.iter()) {
        if ech.insert(op.to_symplectic()) {
            group.push(op.clone());
        }
    }
    Ok(StabilizerState::new_unchecked(group, state.regions.clone()))
}

/// Basis of the subgroup of group elements supported entirely inside
/// `region` (identity outside it).
pub fn supported_subgroup_basis(state: &StabilizerState, region: &[usize]) -> Vec<PauliOp> {
    let n_total = state.n_total();
    let mut outside = vec![true; n_total];
    for &q in region {
        outside[q] = false;
    }
    let outside: Vec<usize> = (0..n_total).filter(|&q| outside[q]).collect();
    // Unknown: which generators to multiply. Constraints: x and z components
    // vanish on every outside qubit.
    let mut m = BitMatrix::zeros(2 * outside.len(), state.group.len());
    for (t, &q) in outside.iter().enumerate() {
        for (j, g) in state.group.iter().enumerate() {
            if g.x().get(q) {
                m.set(2 * t, j, true);
            }
            if g.z().get(q) {
                m.set(2 * t + 1, j, true);
            }
        }
    }
    m.nullspace_basis()
        .iter()
        .map(|coeffs| {
            let mut p = PauliOp::identity(n_total);
            for j in coeffs.iter_ones() {
                p.mul_assign(&state.group[j]);
            }
            p
        })
        .collect()
}

fn check_region(state: &StabilizerState, region: &[usize]) -> Result<()> {
    let mut seen = vec![false; state.n_total()];
    for &q in region {
        if q >= state.n_total() {
            return Err(Error::InvalidParameter(format!(
                "region qubit {q} out of range"
            )));
        }
        if seen[q] {
            return Err(Error::InvalidParameter(format!(
                "region qubit {q} repeated"
            )));
        }
        seen[q] = true;
    }
    Ok(())
}

/// Entanglement entropy of `region` in bits:
/// `|region| − (number of independent group elements supported in region)`.
/// Applies to mixed stabilizer states as well (fewer generators than
/// qubits).
pub fn region_entropy(state: &StabilizerState, region: &[usize]) -> Result<usize> {
    check_region(state, region)?;
    let lambda = supported_subgroup_basis(state, region).len();
    Ok(region.len() - lambda)
}

/// Mutual information `S_a + S_b − S_ab` between two disjoint regions.
pub fn mutual_information(state: &StabilizerState, a: &[usize], b: &[usize]) -> Result<usize> {
    check_region(state, a)?;
    check_region(state, b)?;
    if a.iter().any(|q| b.contains(q)) {
        return Err(Error::InvalidParameter(
            "mutual information requires disjoint regions".into(),
        ));
    }
    let sa = region_entropy(state, a)?;
    let sb = region_entropy(state, b)?;
    let mut ab = a.to_vec();
    ab.extend_from_slice(b);
    let sab = region_entropy(state, &ab)?;
    let i = sa as i64 + sb as i64 - sab as i64;
    debug_assert!(i >= 0, "mutual information must be nonnegative");
    Ok(i as usize)
}

/// Subsystem preservation test on a measured Choi state: true iff every
/// group element supported inside `RefGauge ∪ RefBare` acts trivially on
/// `RefBare`.
pub fn subsystem_preserved(state: &StabilizerState) -> Result<bool> {
    let rg = state.region_qubits(Region::RefGauge);
    let rb = state.region_qubits(Region::RefBare);
    if rb.is_empty() {
        return Err(Error::InvalidInput(
            "state has no bare-reference qubits".into(),
        ));
    }
    let mut refs = rg;
    refs.extend_from_slice(&rb);
    for elem in supported_subgroup_basis(state, &refs) {
        for &q in &rb {
            if elem.x().get(q) || elem.z().get(q) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Preservation of a stabilizer-code Choi state: mutual information between
/// system and reference attains its maximum `2k`.
pub fn stabilizer_preserved(state: &StabilizerState, k: usize) -> Result<bool> {
    let a = state.region_qubits(Region::System);
    let r = state.region_qubits(Region::RefBare);
    Ok(mutual_information(state, &a, &r)? == 2 * k)
}

/// Measure single-qubit Paulis on the system part of a Choi state.
pub fn measure_pattern_on_choi(
    state: &StabilizerState,
    pattern: &crate::monitor::MeasurementPattern,
) -> Result<StabilizerState> {
    let system = state.region_qubits(Region::System);
    if pattern.n() != system.len() {
        return Err(Error::DimensionMismatch(format!(
            "pattern on {} qubits vs {} system qubits",
            pattern.n(),
            system.len()
        )));
    }
    let measured: Vec<PauliOp> = pattern
        .measured()
        .into_iter()
        .map(|(q, basis)| PauliOp::single(state.n_total(), system[q], basis))
        .collect();
    apply_measurements(state, &measured)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{bacon_shor, five_qubit, toric};
    use crate::monitor::{sample_pattern, MeasurementPattern, ProbabilityVector};
    use crate::pauli::Basis;

    #[test]
    fn choi_five_qubit_shape() {
        let state = build_choi(&five_qubit()).unwrap();
        assert_eq!(state.n_total(), 6);
        assert_eq!(state.group().len(), 6);
        assert!(state.is_pure());
        let a = state.region_qubits(Region::System);
        let r = state.region_qubits(Region::RefBare);
        assert_eq!(mutual_information(&state, &a, &r).unwrap(), 2);
        assert_eq!(region_entropy(&state, &r).unwrap(), 1);
        assert_eq!(region_entropy(&state, &(0..6).collect::<Vec<_>>()).unwrap(), 0);
    }

    #[test]
    fn choi_toric2_shape() {
        let (code, _) = toric(2).unwrap();
        let state = build_choi(&code).unwrap();
        assert_eq!(state.n_total(), 10);
        assert_eq!(state.group().len(), 10);
        let r = state.region_qubits(Region::RefBare);
        assert_eq!(region_entropy(&state, &r).unwrap(), 2);
    }

    #[test]
    fn choi_rejects_wrong_code_kind() {
        assert!(build_choi(&bacon_shor(2).unwrap()).is_err());
        assert!(build_choi_subsystem(&five_qubit()).is_err());
    }

    #[test]
    fn subsystem_choi_bacon_shor_shape() {
        let code = bacon_shor(3).unwrap();
        let state = build_choi_subsystem(&code).unwrap();
        assert_eq!(state.n_total(), 14); // 9 + 4 + 1
        assert_eq!(state.group().len(), 14);
        let a = state.region_qubits(Region::System);
        let rb = state.region_qubits(Region::RefBare);
        let rg = state.region_qubits(Region::RefGauge);
        assert_eq!(mutual_information(&state, &a, &rb).unwrap(), 2);
        let mut refs = rg;
        refs.extend_from_slice(&rb);
        assert_eq!(mutual_information(&state, &a, &refs).unwrap(), 10); // 2(g+k)
        assert!(subsystem_preserved(&state).unwrap());
    }

    #[test]
    fn measure_nothing_is_identity_update() {
        let state = build_choi(&five_qubit()).unwrap();
        let updated = apply_measurements(&state, &[]).unwrap();
        assert!(state.same_group(&updated));
    }

    #[test]
    fn single_qubit_collapse() {
        let state = StabilizerState::new(
            vec![PauliOp::parse("Z").unwrap()],
            vec![Region::System],
        )
        .unwrap();
        let updated = apply_measurements(&state, &[PauliOp::parse("X").unwrap()]).unwrap();
        assert_eq!(updated.group().len(), 1);
        assert_eq!(updated.group()[0], PauliOp::parse("X").unwrap());
    }

    #[test]
    fn anticommuting_measured_set_rejected() {
        let state = build_choi(&five_qubit()).unwrap();
        let err = apply_measurements(
            &state,
            &[
                PauliOp::single(6, 0, Basis::X),
                PauliOp::single(6, 0, Basis::Z),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, crate::Error::InvalidInput(_)));
    }

    #[test]
    fn all_z_measurement_reveals_logical() {
        let code = five_qubit();
        let state = build_choi(&code).unwrap();
        let pattern = MeasurementPattern::uniform(5, Basis::Z);
        let updated = measure_pattern_on_choi(&state, &pattern).unwrap();
        assert!(updated.is_pure());
        let r = updated.region_qubits(Region::RefBare);
        // A nontrivial element lives entirely on the reference: the logical
        // was read out.
        assert_eq!(supported_subgroup_basis(&updated, &r).len(), 1);
        let a = updated.region_qubits(Region::System);
        // Outcome-conditioned state: the reference is collapsed, I(A,R) = 0.
        assert_eq!(mutual_information(&updated, &a, &r).unwrap(), 0);
        assert!(!stabilizer_preserved(&updated, code.k).unwrap());

        // Outcome-averaged state (centralizer part only, no measured
        // operators): one classical bit of correlation survives.
        let centralizer = crate::pauli::centralizer_intersection(
            state.group(),
            &pattern
                .measured()
                .into_iter()
                .map(|(q, b)| PauliOp::single(6, q, b))
                .collect::<Vec<_>>(),
        );
        let dephased = StabilizerState::new_unchecked(
            crate::pauli::independent_subset(&centralizer),
            state.regions().to_vec(),
        );
        assert_eq!(mutual_information(&dephased, &a, &r).unwrap(), 1);
    }

    #[test]
    fn purity_preserved_under_system_measurements() {
        let (code, _) = toric(2).unwrap();
        let state = build_choi(&code).unwrap();
        for trial in 0..20 {
            let p = ProbabilityVector::new(0.3, 0.3, 0.3).unwrap();
            let pattern = sample_pattern(code.n, &p, 5, trial).unwrap();
            let updated = measure_pattern_on_choi(&state, &pattern).unwrap();
            assert!(updated.is_pure(), "{pattern}");
        }
    }

    #[test]
    fn measurement_update_idempotent() {
        let code = five_qubit();
        let state = build_choi(&code).unwrap();
        for trial in 0..20 {
            let p = ProbabilityVector::new(0.3, 0.2, 0.3).unwrap();
            let pattern = sample_pattern(code.n, &p, 6, trial).unwrap();
            let once = measure_pattern_on_choi(&state, &pattern).unwrap();
            let twice = measure_pattern_on_choi(&once, &pattern).unwrap();
            assert!(once.same_group(&twice), "{pattern}");
        }
    }

    #[test]
    fn sequential_equals_single_shot() {
        let code = five_qubit();
        let state = build_choi(&code).unwrap();
        for trial in 0..20 {
            let p = ProbabilityVector::new(0.3, 0.3, 0.3).unwrap();
            let pattern = sample_pattern(code.n, &p, 7, trial).unwrap();
            let single = measure_pattern_on_choi(&state, &pattern).unwrap();
            let mut seq = state.clone();
            for (q, basis) in pattern.measured() {
                seq = apply_measurements(&seq, &[PauliOp::single(6, q, basis)]).unwrap();
            }
            assert!(single.same_group(&seq), "{pattern}");
        }
    }

    #[test]
    fn entropy_sanity() {
        let (code, _) = toric(2).unwrap();
        let state = build_choi(&code).unwrap();
        for trial in 0..10 {
            let p = ProbabilityVector::new(0.25, 0.25, 0.25).unwrap();
            let pattern = sample_pattern(code.n, &p, 11, trial).unwrap();
            let updated = measure_pattern_on_choi(&state, &pattern).unwrap();
            let n_total = updated.n_total();
            for cut in [1usize, 3, 5, n_total / 2] {
                let region: Vec<usize> = (0..cut).collect();
                let complement: Vec<usize> = (cut..n_total).collect();
                let s = region_entropy(&updated, &region).unwrap();
                assert!(s <= region.len());
                // Pure state: entropy matches the complement.
                assert_eq!(s, region_entropy(&updated, &complement).unwrap());
            }
        }
    }

    #[test]
    fn subsystem_single_qubit_measurement_preserves() {
        let code = bacon_shor(3).unwrap();
        let state = build_choi_subsystem(&code).unwrap();
        let mut pattern = MeasurementPattern::unmeasured(9);
        pattern.set(4, Some(Basis::X));
        let updated = measure_pattern_on_choi(&state, &pattern).unwrap();
        assert!(subsystem_preserved(&updated).unwrap());
        let fast = crate::monitor::preservation_verdict(&code, &pattern).unwrap();
        assert!(fast.preserved);
    }

    #[test]
    fn subsystem_column_measurement_destroys() {
        let code = bacon_shor(3).unwrap();
        let state = build_choi_subsystem(&code).unwrap();
        // X on one full column is a bare logical representative.
        let mut pattern = MeasurementPattern::unmeasured(9);
        for r in 0..3 {
            pattern.set(3 * r, Some(Basis::X));
        }
        let updated = measure_pattern_on_choi(&state, &pattern).unwrap();
        assert!(!subsystem_preserved(&updated).unwrap());
        let fast = crate::monitor::preservation_verdict(&code, &pattern).unwrap();
        assert!(!fast.preserved);
    }

    #[test]
    fn hyperbolic_decomposition_of_gauge_group() {
        for l in [2usize, 3, 4] {
            let code = bacon_shor(l).unwrap();
            let (pairs, center) = hyperbolic_decomposition(code.gauge_gens.gens());
            assert_eq!(pairs.len(), code.g, "L={l}");
            assert_eq!(center.len(), code.n - code.k - code.g);
            for (i, (a, b)) in pairs.iter().enumerate() {
                assert!(a.anticommutes_unchecked(b));
                for (j, (c, d)) in pairs.iter().enumerate() {
                    if i != j {
                        assert!(!a.anticommutes_unchecked(c));
                        assert!(!a.anticommutes_unchecked(d));
                        assert!(!b.anticommutes_unchecked(c));
                        assert!(!b.anticommutes_unchecked(d));
                    }
                }
                for s in &center {
                    assert!(!a.anticommutes_unchecked(s));
                    assert!(!b.anticommutes_unchecked(s));
                }
            }
        }
    }

    #[test]
    fn region_validation() {
        let state = build_choi(&five_qubit()).unwrap();
        assert!(region_entropy(&state, &[0, 0]).is_err());
        assert!(region_entropy(&state, &[9]).is_err());
        assert!(mutual_information(&state, &[0, 1], &[1, 2]).is_err());
    }
}
