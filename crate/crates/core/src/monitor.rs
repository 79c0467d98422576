//! Measurement patterns and the information-preservation verdict.
//!
//! The fast path works directly on the pattern: the group M generated by the
//! measured single-qubit Paulis is cut down to M ∩ C(S) by solving one GF(2)
//! kernel (one unknown per measured qubit), and each kernel element is mapped
//! to a Pauli on the k reference qubits through its symplectic pairing with
//! the stored logical basis. Information survives iff every image is trivial:
//! for stabilizer codes that is exactly "M ∩ C(S) inside the stabilizer
//! group", and for subsystem codes "inside the gauge group", since an element
//! of C(S) has trivial reference image iff all its bare-logical pairings
//! vanish. [`crate::choi`] provides the independent slow-path oracle.

use crate::codes::CodeSpec;
use crate::gf2::{BitMatrix, BitVec, Echelon};
use crate::pauli::{independent_subset, Basis, GeneratorSet, PauliOp, Role};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Counter-based RNG stream: sample `index` of seed `seed` is identical
/// regardless of thread scheduling.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Per-basis measurement probabilities; the remainder `1 - (px+py+pz)` is
/// the probability a qubit stays unmeasured.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ProbabilityVector {
    pub px: f64,
    pub py: f64,
    pub pz: f64,
}

impl ProbabilityVector {
    pub fn new(px: f64, py: f64, pz: f64) -> Result<Self> {
        let p = ProbabilityVector { px, py, pz };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.px >= 0.0 && self.py >= 0.0 && self.pz >= 0.0;
        if !ok || self.p_m() > 1.0 + 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "probabilities ({}, {}, {}) must be nonnegative with sum <= 1",
                self.px, self.py, self.pz
            )));
        }
        Ok(())
    }

    /// Total measurement probability.
    pub fn p_m(&self) -> f64 {
        self.px + self.py + self.pz
    }
}

/// Per-qubit basis assignment; `None` marks an unmeasured qubit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementPattern {
    assign: Vec<Option<Basis>>,
}

impl MeasurementPattern {
    pub fn unmeasured(n: usize) -> Self {
        MeasurementPattern { assign: vec![None; n] }
    }

    pub fn from_assignments(assign: Vec<Option<Basis>>) -> Self {
        MeasurementPattern { assign }
    }

    /// Uniform pattern measuring every qubit in `basis`.
    pub fn uniform(n: usize, basis: Basis) -> Self {
        MeasurementPattern { assign: vec![Some(basis); n] }
    }

    /// Parse the string form over `{., X, Y, Z}`, e.g. `".XZ.Y"`.
    pub fn parse(s: &str) -> Result<Self> {
        let assign = s
            .chars()
            .map(|ch| match ch {
                '.' => Ok(None),
                _ => Basis::from_char(ch).map(Some),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MeasurementPattern { assign })
    }

    pub fn n(&self) -> usize {
        self.assign.len()
    }

    pub fn get(&self, q: usize) -> Option<Basis> {
        self.assign[q]
    }

    pub fn set(&mut self, q: usize, basis: Option<Basis>) {
        self.assign[q] = basis;
    }

    /// Measured qubits with their bases, ascending by index.
    pub fn measured(&self) -> Vec<(usize, Basis)> {
        self.assign
            .iter()
            .enumerate()
            .filter_map(|(q, b)| b.map(|b| (q, b)))
            .collect()
    }

    pub fn measured_indices(&self) -> Vec<usize> {
        self.assign
            .iter()
            .enumerate()
            .filter_map(|(q, b)| b.map(|_| q))
            .collect()
    }

    pub fn count_measured(&self) -> usize {
        self.assign.iter().filter(|b| b.is_some()).count()
    }
}

impl std::fmt::Display for MeasurementPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.assign {
            match b {
                None => write!(f, ".")?,
                Some(b) => write!(f, "{b}")?,
            }
        }
        Ok(())
    }
}

/// Draw a random pattern: each qubit independently unmeasured or measured in
/// X/Y/Z with the given probabilities. Deterministic in `(seed, index)`.
pub fn sample_pattern(
    n: usize,
    p: &ProbabilityVector,
    seed: u64,
    index: u64,
) -> Result<MeasurementPattern> {
    p.validate()?;
    let mut rng = stream_rng(seed, index);
    let mut assign = Vec::with_capacity(n);
    for _ in 0..n {
        let u: f64 = rng.gen();
        let b = if u < p.px {
            Some(Basis::X)
        } else if u < p.px + p.py {
            Some(Basis::Y)
        } else if u < p.px + p.py + p.pz {
            Some(Basis::Z)
        } else {
            None
        };
        assign.push(b);
    }
    Ok(MeasurementPattern { assign })
}

/// Sample a pattern using an already-positioned RNG (used by the
/// concatenation recursion, which draws several patterns per stream).
pub fn sample_pattern_with<R: Rng>(n: usize, p: &ProbabilityVector, rng: &mut R) -> MeasurementPattern {
    let mut assign = Vec::with_capacity(n);
    for _ in 0..n {
        let u: f64 = rng.gen();
        let b = if u < p.px {
            Some(Basis::X)
        } else if u < p.px + p.py {
            Some(Basis::Y)
        } else if u < p.px + p.py + p.pz {
            Some(Basis::Z)
        } else {
            None
        };
        assign.push(b);
    }
    MeasurementPattern { assign }
}

/// Outcome of a monitoring experiment.
#[derive(Clone, Debug)]
pub struct Verdict {
    /// True iff all encoded (bare) logical qubits survive.
    pub preserved: bool,
    /// Independent generators of the measured logical subgroup, expressed on
    /// the k reference qubits. Empty iff preserved.
    pub measured_logicals: GeneratorSet,
    /// `2k - rank(measured_logicals)`, in bits.
    pub mutual_info: usize,
}

struct CommutationSystem {
    /// One column per measured qubit, one row per stabilizer.
    matrix: BitMatrix,
    /// Pairing rows vs the logical basis: `ref_x[j][c] = <P_c, logical_z[j]>`
    /// and `ref_z[j][c] = <P_c, logical_x[j]>`.
    ref_x: Vec<BitVec>,
    ref_z: Vec<BitVec>,
    measured: Vec<(usize, Basis)>,
}

fn commutation_system(code: &CodeSpec, pattern: &MeasurementPattern) -> Result<CommutationSystem> {
    if pattern.n() != code.n {
        return Err(Error::DimensionMismatch(format!(
            "pattern on {} qubits vs code on {}",
            pattern.n(),
            code.n
        )));
    }
    let measured = pattern.measured();
    let m = measured.len();
    let mut matrix = BitMatrix::zeros(code.stabilizers.len(), m);
    for (r, s) in code.stabilizers.iter().enumerate() {
        let row = matrix.row_mut(r);
        for (c, &(q, basis)) in measured.iter().enumerate() {
            let (x, z) = basis.components();
            if (x && s.z().get(q)) ^ (z && s.x().get(q)) {
                row.set(c, true);
            }
        }
    }
    let pairing_row = |l: &PauliOp| -> BitVec {
        let mut row = BitVec::zeros(m);
        for (c, &(q, basis)) in measured.iter().enumerate() {
            let (x, z) = basis.components();
            if (x && l.z().get(q)) ^ (z && l.x().get(q)) {
                row.set(c, true);
            }
        }
        row
    };
    let ref_x = code.logical_z.iter().map(&pairing_row).collect();
    let ref_z = code.logical_x.iter().map(&pairing_row).collect();
    Ok(CommutationSystem { matrix, ref_x, ref_z, measured })
}

fn element_from_coeffs(n: usize, measured: &[(usize, Basis)], coeffs: &BitVec) -> PauliOp {
    let mut p = PauliOp::identity(n);
    for c in coeffs.iter_ones() {
        let (q, basis) = measured[c];
        p.mul_assign(&PauliOp::single(n, q, basis));
    }
    p
}

/// A basis of M ∩ C(S): the elements of the measured Pauli group commuting
/// with every stabilizer generator.
pub fn measured_centralizer_basis(
    code: &CodeSpec,
    pattern: &MeasurementPattern,
) -> Result<GeneratorSet> {
    let sys = commutation_system(code, pattern)?;
    let gens: Vec<PauliOp> = sys
        .matrix
        .nullspace_basis()
        .iter()
        .map(|t| element_from_coeffs(code.n, &sys.measured, t))
        .collect();
    Ok(GeneratorSet::new_unchecked(gens, Role::Generic, code.n))
}

/// Decide whether the encoded information survives `pattern`, and if not,
/// which logical classes were measured.
pub fn preservation_verdict(code: &CodeSpec, pattern: &MeasurementPattern) -> Result<Verdict> {
    let sys = commutation_system(code, pattern)?;
    let k = code.k;
    let kernel = sys.matrix.nullspace_basis();
    let mut images = Vec::new();
    for t in &kernel {
        let mut img = PauliOp::identity(k);
        let mut nonzero = false;
        for j in 0..k {
            let x = t.dot(&sys.ref_x[j]);
            let z = t.dot(&sys.ref_z[j]);
            if x {
                img.mul_assign(&PauliOp::single(k, j, Basis::X));
                nonzero = true;
            }
            if z {
                img.mul_assign(&PauliOp::single(k, j, Basis::Z));
                nonzero = true;
            }
        }
        if nonzero {
            images.push(img);
        }
    }
    let measured_logicals = independent_subset(&images);
    let preserved = measured_logicals.is_empty();
    let mutual_info = 2 * k - measured_logicals.len();
    Ok(Verdict {
        preserved,
        measured_logicals: GeneratorSet::new_unchecked(measured_logicals, Role::Generic, k),
        mutual_info,
    })
}

/// True iff erasing `subset` is correctable: no nontrivial (dressed, for
/// subsystem codes) logical operator is supported inside `subset`.
pub fn erasure_correctable(code: &CodeSpec, subset: &[usize]) -> Result<bool> {
    let mut qubits: Vec<usize> = subset.to_vec();
    qubits.sort_unstable();
    qubits.dedup();
    if qubits.iter().any(|&q| q >= code.n) {
        return Err(Error::InvalidParameter(
            "erasure subset contains an out-of-range qubit".into(),
        ));
    }
    // Unknowns: an X and a Z component per erased qubit. Rows constrain
    // commutation with the stabilizers; the operator is a logical iff some
    // pairing row escapes the row space.
    let cols = 2 * qubits.len();
    let build_row = |op: &PauliOp| -> BitVec {
        let mut row = BitVec::zeros(cols);
        for (c, &q) in qubits.iter().enumerate() {
            if op.z().get(q) {
                row.set(2 * c, true); // <X_q, op>
            }
            if op.x().get(q) {
                row.set(2 * c + 1, true); // <Z_q, op>
            }
        }
        row
    };
    let mut span = Echelon::new();
    for s in code.stabilizers.iter() {
        span.insert(build_row(s));
    }
    for l in code.logical_x.iter().chain(code.logical_z.iter()) {
        if !span.contains(&build_row(l)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Deform `logical` by stabilizers into an equivalent representative that
/// commutes with every measured single-qubit Pauli.
///
/// Fails with [`Error::Unsupported`] when no such representative exists
/// (the pattern has measured this logical class) and with
/// [`Error::InvalidInput`] when `logical` is not a (bare) logical operator
/// of the code.
pub fn commuting_representative(
    code: &CodeSpec,
    logical: &PauliOp,
    pattern: &MeasurementPattern,
) -> Result<PauliOp> {
    if logical.n() != code.n || pattern.n() != code.n {
        return Err(Error::DimensionMismatch(
            "operator or pattern on wrong qubit count".into(),
        ));
    }
    if code.stabilizers.iter().any(|s| s.anticommutes_unchecked(logical)) {
        return Err(Error::InvalidInput(
            "operator anticommutes with a stabilizer; not a logical operator".into(),
        ));
    }
    if code.is_subsystem() && code.gauge_gens.iter().any(|g| g.anticommutes_unchecked(logical)) {
        return Err(Error::InvalidInput(
            "operator anticommutes with a gauge generator; not a bare logical".into(),
        ));
    }
    let measured = pattern.measured();
    let stabs = code.stabilizers.gens();
    // One row per measured qubit, one unknown per stabilizer generator:
    // find a stabilizer product with the same commutation record as the
    // logical against every measured Pauli.
    let mut system = BitMatrix::zeros(measured.len(), stabs.len());
    let mut rhs = BitVec::zeros(measured.len());
    for (i, &(q, basis)) in measured.iter().enumerate() {
        let probe = PauliOp::single(code.n, q, basis);
        for (j, s) in stabs.iter().enumerate() {
            if s.anticommutes_unchecked(&probe) {
                system.set(i, j, true);
            }
        }
        if logical.anticommutes_unchecked(&probe) {
            rhs.set(i, true);
        }
    }
    match system.solve(&rhs)? {
        None => Err(Error::Unsupported(
            "no equivalent representative commutes with the measured set".into(),
        )),
        Some(u) => {
            let mut rep = logical.clone();
            for j in u.iter_ones() {
                rep.mul_assign(&stabs[j]);
            }
            Ok(rep)
        }
    }
}
