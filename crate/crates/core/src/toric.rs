//! Torus-specific analysis of all-Y operators: the rigid line generators of
//! the Y-commutant group, the weight formula for row/column combinations,
//! and the union-bound estimate of the destruction probability under pure-Y
//! measurement.
//!
//! Edge-to-vertex bijection: edge midpoints of the `L×L` torus, in doubled
//! coordinates, are the points with odd coordinate sum — `h(i,j)` sits at
//! `(2i, 2j+1)` and `v(i,j)` at `(2i+1, 2j)` (mod `2L`). These points form
//! the 45°-rotated lattice on which stabilizers occupy alternating faces. A
//! straight line of the rotated lattice is a diagonal geodesic of the torus:
//! `L` lines run along `x+y = c` ("rows") and `L` along `x-y = c`
//! ("columns"), each closing after `2L` vertices. All-Y operators on these
//! lines commute with every stabilizer and are not deformable.
//!
//! The product of all `2L` lines is the identity, so at most `2L−1` are
//! independent. The full Y-commutant group is one dimension bigger: Y on
//! every horizontal edge also commutes with all stabilizers and is not a
//! line product (its class completes the measured-logical structure seen
//! under all-Y patterns).

use crate::codes::{toric, CodeSpec};
use crate::monitor::{preservation_verdict, MeasurementPattern};
use crate::pauli::{Basis, GeneratorSet, PauliOp, Role};
use crate::{Error, Result};

/// Independent all-Y line operators on the rotated-lattice presentation.
#[derive(Clone, Debug)]
pub struct YCommutantBasis {
    pub l: usize,
    /// `2L − 1` independent line operators (rows first, then columns, with
    /// the last dependent line dropped).
    pub generators: GeneratorSet,
}

fn edge_midpoint(l: usize, q: usize) -> (usize, usize) {
    let period = 2 * l;
    if q < l * l {
        let (i, j) = (q / l, q % l);
        (2 * i % period, (2 * j + 1) % period)
    } else {
        let (i, j) = ((q - l * l) / l, (q - l * l) % l);
        ((2 * i + 1) % period, 2 * j % period)
    }
}

/// All-Y operator on one diagonal geodesic: `x + y = c` when `plus`, else
/// `x − y = c` (mod `2L`). Each line holds `2L` edges.
pub fn line_operator(l: usize, c: usize, plus: bool) -> PauliOp {
    let n = 2 * l * l;
    let period = 2 * l;
    let mut p = PauliOp::identity(n);
    for q in 0..n {
        let (x, y) = edge_midpoint(l, q);
        let key = if plus {
            (x + y) % period
        } else {
            (x + period - y) % period
        };
        if key == c % period {
            p.mul_assign(&PauliOp::single(n, q, Basis::Y));
        }
    }
    p
}

/// Construct the `2L` row/column line operators of `toric(l)`, verify each
/// commutes with every stabilizer, and return an independent subset
/// (always `2L − 1` of them).
pub fn y_commutant_basis(l: usize) -> Result<YCommutantBasis> {
    let (code, _) = toric(l)?;
    let mut lines = Vec::new();
    for c in (1..2 * l).step_by(2) {
        lines.push(line_operator(l, c, true));
    }
    for c in (1..2 * l).step_by(2) {
        lines.push(line_operator(l, c, false));
    }
    for (idx, line) in lines.iter().enumerate() {
        debug_assert_eq!(line.weight(), 2 * l);
        for s in code.stabilizers.iter() {
            if line.anticommutes_unchecked(s) {
                return Err(Error::InvalidInput(format!(
                    "line operator {idx} fails to commute with a stabilizer"
                )));
            }
        }
    }
    let independent = crate::pauli::independent_subset(&lines);
    debug_assert_eq!(independent.len(), 2 * l - 1);
    Ok(YCommutantBasis {
        l,
        generators: GeneratorSet::new_unchecked(independent, Role::Generic, 2 * l * l),
    })
}

/// Basis of the full Y-commutant group, computed independently of the line
/// construction: all-Y-support solutions of the stabilizer commutation
/// system. One GF(2) unknown per qubit.
pub fn full_y_commutant_basis(code: &CodeSpec) -> GeneratorSet {
    let n = code.n;
    let mut m = crate::gf2::BitMatrix::zeros(code.stabilizers.len(), n);
    for (r, s) in code.stabilizers.iter().enumerate() {
        let row = m.row_mut(r);
        for q in 0..n {
            // Commutation of Y_q with s: X and Z parts both pair.
            if s.x().get(q) ^ s.z().get(q) {
                row.set(q, true);
            }
        }
    }
    let gens: Vec<PauliOp> = m
        .nullspace_basis()
        .iter()
        .map(|support| {
            let mut p = PauliOp::identity(n);
            for q in support.iter_ones() {
                p.mul_assign(&PauliOp::single(n, q, Basis::Y));
            }
            p
        })
        .collect();
    GeneratorSet::new_unchecked(gens, Role::Generic, n)
}

/// Weight formula for a commutant built from `a` row lines and `b` column
/// lines on a rotated lattice of linear length `L`: `(L−a)b + (L−b)a`.
pub fn y_weight(l: usize, a: usize, b: usize) -> Result<usize> {
    if a > l || b > l {
        return Err(Error::InvalidParameter(format!(
            "line counts ({a}, {b}) exceed lattice size {l}"
        )));
    }
    Ok((l - a) * b + (l - b) * a)
}

/// Union bound on the pure-Y destruction probability: the summed measurement
/// probabilities `C(L,a) C(L,b) p^W(a,b)` over all line-combination classes,
/// excluding the two identity corners (0,0) and (L,L). Accumulated with
/// compensated summation.
///
/// With `logical_only`, classes built from an even number of lines (which
/// are stabilizers, not logicals, on the torus) are excluded as well.
pub fn y_destroy_upper_bound(l: usize, p_y: f64, logical_only: bool) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_y) {
        return Err(Error::InvalidParameter(format!(
            "probability {p_y} outside [0, 1]"
        )));
    }
    // ln C(l, a) table via ln-factorials.
    let mut ln_fact = vec![0.0f64; l + 1];
    for i in 1..=l {
        ln_fact[i] = ln_fact[i - 1] + (i as f64).ln();
    }
    let ln_choose = |a: usize| ln_fact[l] - ln_fact[a] - ln_fact[l - a];
    let mut sum = 0.0f64;
    let mut comp = 0.0f64; // Kahan compensation
    for a in 0..=l {
        for b in 0..=l {
            if (a == 0 && b == 0) || (a == l && b == l) {
                continue;
            }
            if logical_only && (a + b) % 2 == 0 {
                continue;
            }
            let w = y_weight(l, a, b)? as f64;
            let term = if p_y == 0.0 {
                0.0
            } else {
                (ln_choose(a) + ln_choose(b) + w * p_y.ln()).exp()
            };
            let t = sum + term;
            comp += if sum.abs() >= term.abs() {
                (sum - t) + term
            } else {
                (term - t) + sum
            };
            sum = t;
        }
    }
    Ok(sum + comp)
}

/// Taxonomy of measured-logical sets on the two torus logical qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeasuredClass {
    /// Nothing measured; information intact.
    Preserved,
    /// Both logical qubits measured in single-qubit classes
    /// `{P on qubit 1, Q on qubit 2}`.
    PairBasis(Basis, Basis),
    /// The correlated pair `{X1X2, Z1Z2}` (equivalently any two of the three
    /// nontrivial products).
    TwinPair,
    /// Fewer than two independent classes measured.
    Partial(usize),
}

/// Classify the measured subgroup of a pure-Y pattern on `toric(l)` into
/// the taxonomy above.
pub fn y_classify_measured(l: usize, pattern: &MeasurementPattern) -> Result<MeasuredClass> {
    if pattern.measured().iter().any(|&(_, b)| b != Basis::Y) {
        return Err(Error::InvalidInput(
            "classification requires a pure-Y pattern".into(),
        ));
    }
    let (code, _) = toric(l)?;
    let verdict = preservation_verdict(&code, pattern)?;
    classify_reference_subgroup(&verdict.measured_logicals)
}

/// Shared taxonomy classifier for a measured subgroup on two reference
/// qubits.
pub fn classify_reference_subgroup(measured: &GeneratorSet) -> Result<MeasuredClass> {
    if measured.n() != 2 {
        return Err(Error::DimensionMismatch(
            "taxonomy defined for two logical qubits".into(),
        ));
    }
    match measured.len() {
        0 => Ok(MeasuredClass::Preserved),
        1 => Ok(MeasuredClass::Partial(1)),
        2 => {
            // Enumerate the four-element subgroup.
            let g0 = &measured.gens()[0];
            let g1 = &measured.gens()[1];
            let prod = g0.multiply(g1).expect("same qubit count");
            let mut singles = Vec::new();
            let mut doubles = 0;
            for e in [g0.clone(), g1.clone(), prod] {
                match (e.site(0), e.site(1)) {
                    (Some(p), None) => singles.push((0, p)),
                    (None, Some(p)) => singles.push((1, p)),
                    (Some(_), Some(_)) => doubles += 1,
                    (None, None) => {}
                }
            }
            if doubles == 3 {
                return Ok(MeasuredClass::TwinPair);
            }
            // A rank-2 abelian subgroup with a single-qubit element on each
            // side: {P1, Q2, P1Q2}.
            let first = singles.iter().find(|&&(q, _)| q == 0);
            let second = singles.iter().find(|&&(q, _)| q == 1);
            match (first, second) {
                (Some(&(_, p)), Some(&(_, q))) => Ok(MeasuredClass::PairBasis(p, q)),
                _ => Err(Error::InvalidInput(format!(
                    "unexpected measured subgroup <{g0}, {g1}>"
                ))),
            }
        }
        r => Ok(MeasuredClass::Partial(r)),
    }
}
