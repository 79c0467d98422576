//! Dense-statevector experiments: Haar random codes under projective
//! measurement, and Haar random measurements applied to stabilizer codes.
//!
//! Everything here is desk scale (total qubit counts up to ~14, vectors up
//! to 2^14 amplitudes) — large enough to compare Monte Carlo means against
//! the closed-form Haar averages, small enough to stay under a minute.

use crate::choi::build_choi;
use crate::codes::CodeSpec;
use crate::monitor::stream_rng;
use crate::pauli::PauliOp;
use crate::{Error, Result};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

/// Hard ceiling on total (system + reference) qubits for dense vectors.
pub const DENSE_MAX_QUBITS: usize = 14;

/// A pure state on `n_system + n_ref` qubits. Qubit `q` of the system is
/// bit `q` of the amplitude index; reference qubit `j` is bit
/// `n_system + j`.
#[derive(Clone, Debug)]
pub struct DenseState {
    pub amps: Vec<Complex64>,
    pub n_system: usize,
    pub n_ref: usize,
}

impl DenseState {
    pub fn n_total(&self) -> usize {
        self.n_system + self.n_ref
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// One standard complex Gaussian sample (Box–Muller).
fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    let u: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
    let r = (-2.0 * u.ln()).sqrt();
    let theta = std::f64::consts::TAU * rng.gen::<f64>();
    Complex64::new(r * theta.cos(), r * theta.sin()) / std::f64::consts::SQRT_2
}

/// A Haar random unit vector of dimension `dim`.
pub fn haar_state<R: Rng>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut v {
        *a /= norm;
    }
    v
}

/// Choi state of a Haar random encoding of `k` qubits into `n`: a Haar
/// random isometry applied to halves of `k` EPR pairs. Sampled by
/// orthonormalizing `2^k` complex Gaussian vectors (the isometry's columns);
/// the global unitary beyond those columns never enters.
pub fn sample_haar_code_state<R: Rng>(k: usize, n: usize, rng: &mut R) -> Result<DenseState> {
    if k >= n || n + k > DENSE_MAX_QUBITS {
        return Err(Error::Unsupported(format!(
            "need k < n and n + k <= {DENSE_MAX_QUBITS}, got k={k} n={n}"
        )));
    }
    let dim = 1usize << n;
    let cols = 1usize << k;
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
    for _ in 0..cols {
        let mut v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        // Modified Gram-Schmidt against the accepted columns.
        for prev in &columns {
            let overlap: Complex64 = prev.iter().zip(&v).map(|(p, x)| p.conj() * x).sum();
            for (x, p) in v.iter_mut().zip(prev) {
                *x -= overlap * p;
            }
        }
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut v {
            *a /= norm;
        }
        columns.push(v);
    }
    let scale = 1.0 / (cols as f64).sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); dim * cols];
    for (r, col) in columns.iter().enumerate() {
        for (a, &value) in col.iter().enumerate() {
            amps[a + (r << n)] = value * scale;
        }
    }
    Ok(DenseState { amps, n_system: n, n_ref: k })
}

/// Measurement basis for [`project_and_purity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectionBasis {
    /// Project the measured qubits onto |0...0>.
    Computational,
    /// Project onto a fresh Haar random state of the measured qubits.
    Haar,
}

/// Scatter `sub` (an index over `positions.len()` bits) into a full-width
/// index at the given bit positions.
fn scatter(sub: usize, positions: &[usize]) -> usize {
    let mut out = 0usize;
    for (b, &pos) in positions.iter().enumerate() {
        if sub >> b & 1 == 1 {
            out |= 1 << pos;
        }
    }
    out
}

/// Contract the measured system qubits against a basis vector, renormalize,
/// and return the purity of the reference, `Tr(rho_R^2)` of the normalized
/// post-measurement state.
pub fn project_and_purity<R: Rng>(
    state: &DenseState,
    measured: &[usize],
    basis: ProjectionBasis,
    rng: &mut R,
) -> Result<f64> {
    let n = state.n_system;
    let mut seen = vec![false; n];
    for &q in measured {
        if q >= n {
            return Err(Error::InvalidParameter(format!(
                "measured qubit {q} outside the system"
            )));
        }
        if std::mem::replace(&mut seen[q], true) {
            return Err(Error::InvalidParameter(format!("measured qubit {q} repeated")));
        }
    }
    let kept: Vec<usize> = (0..n).filter(|&q| !seen[q]).collect();
    let dim_m = 1usize << measured.len();
    let dim_b = 1usize << kept.len();
    let dim_r = 1usize << state.n_ref;
    let probe: Vec<Complex64> = match basis {
        ProjectionBasis::Computational => {
            let mut v = vec![Complex64::new(0.0, 0.0); dim_m];
            v[0] = Complex64::new(1.0, 0.0);
            v
        }
        ProjectionBasis::Haar => haar_state(dim_m, rng),
    };
    // psi'[b, r] = sum_m conj(probe[m]) psi[scatter(m) | scatter(b) | r]
    let mut post = vec![Complex64::new(0.0, 0.0); dim_b * dim_r];
    for r in 0..dim_r {
        for b in 0..dim_b {
            let base = scatter(b, &kept) | (r << n);
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, &h) in probe.iter().enumerate() {
                acc += h.conj() * state.amps[base | scatter(m, measured)];
            }
            post[b + (r << kept.len())] = acc;
        }
    }
    let norm_sq: f64 = post.iter().map(|a| a.norm_sqr()).sum();
    if norm_sq < 1e-300 {
        return Err(Error::InvalidInput(
            "zero post-measurement norm; resample".into(),
        ));
    }
    // rho_R[r][r'] = sum_b psi'[b,r] conj(psi'[b,r'])
    let mut purity = 0.0;
    for r1 in 0..dim_r {
        for r2 in 0..dim_r {
            let mut elem = Complex64::new(0.0, 0.0);
            for b in 0..dim_b {
                elem += post[b + (r1 << kept.len())] * post[b + (r2 << kept.len())].conj();
            }
            purity += elem.norm_sqr();
        }
    }
    Ok(purity / (norm_sq * norm_sq))
}

/// Exact Haar averages for a random isometry measured on an `A` subsystem of
/// dimension `d_a`, leaving `B` of dimension `d_b`, with reference dimension
/// `d_r`: the ratio `E[Tr rho_R^2] / E[(Tr rho_R)^2]` of the two closed
/// forms.
pub fn predicted_purity_exact(d_a: f64, d_b: f64, d_r: f64) -> f64 {
    let d_ab = d_a * d_b;
    let e_tr_sq = (d_r * d_r * d_b + d_r * d_b * d_b) / (d_ab * d_ab - 1.0)
        - (d_r * d_r * d_b * d_b + d_r * d_b) / (d_ab * (d_ab * d_ab - 1.0));
    let e_sq_tr = (d_r * d_r * d_b * d_b + d_r * d_b) / (d_ab * d_ab - 1.0)
        - (d_r * d_b * d_b + d_r * d_r * d_b) / (d_ab * (d_ab * d_ab - 1.0));
    e_tr_sq / e_sq_tr
}

/// Large-dimension approximation of [`predicted_purity_exact`], valid when
/// `d_a >> d_b, d_r`.
pub fn predicted_purity_approx(d_b: f64, d_r: f64) -> f64 {
    (d_r + d_b) / (d_r * d_b + 1.0)
}

/// Purity statistics of repeated projective experiments.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct PurityStats {
    pub d_a: usize,
    pub d_b: usize,
    pub d_r: usize,
    pub samples: usize,
    /// Sample mean of `Tr(rho_R^2)`.
    pub mean: f64,
    /// Sample standard deviation (not the SEM).
    pub std: f64,
    /// Closed-form target for the mean.
    pub predicted: f64,
    /// Upper bound `1/d_r + Tr(sigma_B^2)` for Haar measurements on a code.
    pub bound: f64,
}

impl PurityStats {
    fn from_samples(
        d_a: usize,
        d_b: usize,
        d_r: usize,
        values: &[f64],
        predicted: f64,
        bound: f64,
    ) -> Self {
        let nf = values.len() as f64;
        let mean = values.iter().sum::<f64>() / nf;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (nf - 1.0).max(1.0);
        PurityStats {
            d_a,
            d_b,
            d_r,
            samples: values.len(),
            mean,
            std: var.sqrt(),
            predicted,
            bound,
        }
    }

    /// Standard error of the mean.
    pub fn sem(&self) -> f64 {
        self.std / (self.samples as f64).sqrt()
    }
}

/// Sample `samples` Haar random codes, measure the first `m` system qubits
/// in the computational basis, and report reference purity statistics
/// against the closed-form prediction.
pub fn haar_code_purity_stats(
    k: usize,
    n: usize,
    m: usize,
    samples: usize,
    seed: u64,
) -> Result<PurityStats> {
    if m > n {
        return Err(Error::InvalidParameter("cannot measure more than n qubits".into()));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("sample count must be positive".into()));
    }
    let measured: Vec<usize> = (0..m).collect();
    let values: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let state = sample_haar_code_state(k, n, &mut rng)?;
            project_and_purity(&state, &measured, ProjectionBasis::Computational, &mut rng)
        })
        .collect::<Result<_>>()?;
    let (d_a, d_b, d_r) = (1usize << m, 1usize << (n - m), 1usize << k);
    let predicted = predicted_purity_exact(d_a as f64, d_b as f64, d_r as f64);
    Ok(PurityStats::from_samples(
        d_a,
        d_b,
        d_r,
        &values,
        predicted,
        1.0 / d_r as f64 + 1.0 / d_b as f64,
    ))
}

/// Dense Choi state of a small stabilizer code, built by applying the
/// projector of each Choi-group generator to a computational basis state
/// (trying basis states in order until one survives).
pub fn dense_choi(code: &CodeSpec) -> Result<DenseState> {
    let n_total = code.n + code.k;
    if n_total > DENSE_MAX_QUBITS {
        return Err(Error::Unsupported(format!(
            "dense Choi limited to {DENSE_MAX_QUBITS} qubits, {} needs {n_total}",
            code.name
        )));
    }
    let group = build_choi(code)?;
    let dim = 1usize << n_total;
    for start in 0..dim {
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[start] = Complex64::new(1.0, 0.0);
        for g in group.group() {
            apply_projector(&mut amps, g);
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq > 1e-12 {
            let norm = norm_sq.sqrt();
            for a in &mut amps {
                *a /= norm;
            }
            return Ok(DenseState { amps, n_system: code.n, n_ref: code.k });
        }
    }
    Err(Error::InvalidInput("projector annihilated every basis state".into()))
}

/// In-place `(I + P)/2` for the Hermitian Pauli `P = i^{|x&z|} X^x Z^z`.
fn apply_projector(amps: &mut [Complex64], p: &PauliOp) {
    let n = p.n();
    let mut xmask = 0usize;
    let mut zmask = 0usize;
    for i in p.x().iter_ones() {
        xmask |= 1 << i;
    }
    for i in p.z().iter_ones() {
        zmask |= 1 << i;
    }
    debug_assert!(n <= usize::BITS as usize);
    let y_count = (xmask & zmask).count_ones() as usize;
    let global = match y_count % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    let old = amps.to_vec();
    for (s, amp) in amps.iter_mut().enumerate() {
        let partner = s ^ xmask;
        // P|partner> lands on |s> with phase i^{|x&z|} (-1)^{|z & partner|}.
        let sign = if ((zmask & partner).count_ones() & 1) == 1 {
            -1.0
        } else {
            1.0
        };
        *amp = (old[s] + global * sign * old[partner]) * 0.5;
    }
}

/// Haar random measurement on a subset of a stabilizer code's qubits:
/// project the code's dense Choi state onto `samples` fresh Haar states and
/// compare the reference purity with the bound `1/d_r + Tr(sigma_B^2)`
/// evaluated from the unmeasured Choi marginal.
pub fn haar_measure_code(
    code: &CodeSpec,
    measured: &[usize],
    samples: usize,
    seed: u64,
) -> Result<PurityStats> {
    if samples == 0 {
        return Err(Error::InvalidParameter("sample count must be positive".into()));
    }
    let state = dense_choi(code)?;
    let sigma_b_purity = marginal_purity(&state, measured)?;
    let values: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            project_and_purity(&state, measured, ProjectionBasis::Haar, &mut rng)
        })
        .collect::<Result<_>>()?;
    let d_r = 1usize << code.k;
    let d_a = 1usize << measured.len();
    let d_b = 1usize << (code.n - measured.len());
    let bound = 1.0 / d_r as f64 + sigma_b_purity;
    Ok(PurityStats::from_samples(
        d_a,
        d_b,
        d_r,
        &values,
        1.0 / d_r as f64,
        bound,
    ))
}

/// `Tr(sigma_B^2)` where `B` is the unmeasured part of the system and the
/// reference plus measured qubits are traced out.
pub fn marginal_purity(state: &DenseState, measured: &[usize]) -> Result<f64> {
    let n = state.n_system;
    let mut seen = vec![false; n];
    for &q in measured {
        if q >= n {
            return Err(Error::InvalidParameter(format!(
                "measured qubit {q} outside the system"
            )));
        }
        seen[q] = true;
    }
    let kept: Vec<usize> = (0..n).filter(|&q| !seen[q]).collect();
    let dim_b = 1usize << kept.len();
    let dim_m = 1usize << measured.len();
    let dim_r = 1usize << state.n_ref;
    let mut sigma = vec![Complex64::new(0.0, 0.0); dim_b * dim_b];
    for m in 0..dim_m {
        let m_bits = scatter(m, measured);
        for r in 0..dim_r {
            let base = m_bits | (r << n);
            for b1 in 0..dim_b {
                let a1 = state.amps[base | scatter(b1, &kept)];
                if a1.norm_sqr() == 0.0 {
                    continue;
                }
                for b2 in 0..dim_b {
                    let a2 = state.amps[base | scatter(b2, &kept)];
                    sigma[b1 * dim_b + b2] += a1 * a2.conj();
                }
            }
        }
    }
    Ok(sigma.iter().map(|e| e.norm_sqr()).sum())
}
