//! Constructors and validation for the stabilizer and subsystem codes under
//! study, all in one uniform [`CodeSpec`] representation.
//!
//! Conventions fixed here (any consistent choice works; these are the ones
//! every other module assumes):
//!
//! - **Torus** of linear size `L`: horizontal edge `h(i,j) = i*L + j` joins
//!   site `(i,j)` to `(i,j+1)`; vertical edge `v(i,j) = L² + i*L + j` joins
//!   `(i,j)` to `(i+1,j)`; both directions periodic. Plaquette `(i,j)` is
//!   `Z` on `{h(i,j), h(i+1,j), v(i,j), v(i,j+1)}`; star `(i,j)` is `X` on
//!   the four edges meeting site `(i,j)`. One plaquette and one star are
//!   dropped (the global relations). Logical `Z1` runs along horizontal row
//!   0, `Z2` along vertical column 0; `X1`/`X2` are the dual loops.
//! - **Triangular color code** of odd distance `d`: honeycomb vertices are
//!   integer points `(x, y)` with `x + y` even and `x % 3 != 0`; hexagon
//!   centers have `x % 3 == 0`. The patch keeps points with `y >= 0`,
//!   `x - y >= -2`, `x + y <= 3d - 5`. Each in-patch hexagon contributes an
//!   `X` and a `Z` stabilizer on its kept vertices (weight 6 inside, 4 on
//!   the boundary). Logicals run along the bottom row `y = 0` (weight `d`).
//! - **Bacon–Shor** on an `L×L` grid, qubit `(r,c) = r*L + c`: `X`-gauge on
//!   horizontal pairs, `Z`-gauge on vertical pairs; stabilizers are `X`
//!   double-columns and `Z` double-rows; bare `X` is column 0, bare `Z` is
//!   row 0.

use crate::pauli::{independent_subset, Basis, GeneratorSet, PauliOp, Role};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Full description of a stabilizer (`g = 0`) or subsystem (`g > 0`) code.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    pub name: String,
    /// Physical qubits.
    pub n: usize,
    /// Bare logical qubits.
    pub k: usize,
    /// Gauge qubits (0 for stabilizer codes).
    pub g: usize,
    /// `n - k - g` mutually commuting independent generators.
    pub stabilizers: GeneratorSet,
    /// Generates the gauge group; spans exactly the stabilizers when `g = 0`.
    pub gauge_gens: GeneratorSet,
    /// Bare logical X operators, one per logical qubit.
    pub logical_x: Vec<PauliOp>,
    /// Bare logical Z operators, paired with `logical_x`.
    pub logical_z: Vec<PauliOp>,
}

impl CodeSpec {
    pub fn is_subsystem(&self) -> bool {
        self.g > 0
    }

    /// The bare logical operators as (X_j, Z_j) pairs.
    pub fn logical_pairs(&self) -> impl Iterator<Item = (&PauliOp, &PauliOp)> {
        self.logical_x.iter().zip(self.logical_z.iter())
    }
}

/// Lattice kinds carrying geometric layout information.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeKind {
    SquareTorus,
    TriangularColor,
    Grid,
}

/// Geometric layout of a code's qubits; coordinates are unique per qubit.
#[derive(Clone, Debug)]
pub struct LatticeGeometry {
    pub kind: LatticeKind,
    pub size: usize,
    /// Qubit index -> lattice location.
    pub coords: Vec<(i64, i64)>,
}

impl LatticeGeometry {
    fn check_unique(&self) {
        let mut seen = std::collections::HashSet::new();
        for &c in &self.coords {
            assert!(seen.insert(c), "duplicate lattice coordinate {c:?}");
        }
    }
}

fn pauli_on(n: usize, sites: &[usize], basis: Basis) -> PauliOp {
    let mut p = PauliOp::identity(n);
    for &q in sites {
        let s = PauliOp::single(n, q, basis);
        p.mul_assign(&s);
    }
    p
}

/// The [[5,1,3]] code.
pub fn five_qubit() -> CodeSpec {
    let stabs: Vec<PauliOp> = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
        .iter()
        .map(|s| PauliOp::parse(s).unwrap())
        .collect();
    let gauge = GeneratorSet::new_unchecked(stabs.clone(), Role::Gauge, 5);
    CodeSpec {
        name: "five_qubit".into(),
        n: 5,
        k: 1,
        g: 0,
        stabilizers: GeneratorSet::new_unchecked(stabs, Role::Stabilizer, 5),
        gauge_gens: gauge,
        logical_x: vec![PauliOp::parse("XXXXX").unwrap()],
        logical_z: vec![PauliOp::parse("ZZZZZ").unwrap()],
    }
}

/// The [[7,1,3]] CSS code; also the smallest triangular color code.
pub fn steane() -> CodeSpec {
    let supports: [&[usize]; 3] = [&[0, 1, 2, 3], &[1, 2, 4, 5], &[2, 3, 5, 6]];
    let mut stabs = Vec::new();
    for s in supports {
        stabs.push(pauli_on(7, s, Basis::X));
    }
    for s in supports {
        stabs.push(pauli_on(7, s, Basis::Z));
    }
    let gauge = GeneratorSet::new_unchecked(stabs.clone(), Role::Gauge, 7);
    CodeSpec {
        name: "steane".into(),
        n: 7,
        k: 1,
        g: 0,
        stabilizers: GeneratorSet::new_unchecked(stabs, Role::Stabilizer, 7),
        gauge_gens: gauge,
        logical_x: vec![pauli_on(7, &[0, 1, 2, 3, 4, 5, 6], Basis::X)],
        logical_z: vec![pauli_on(7, &[0, 1, 2, 3, 4, 5, 6], Basis::Z)],
    }
}

/// The [[15,1,3]] code, viewed as the distance-3 tetrahedral 3D color code:
/// qubits sit at the nonzero points of a 4-bit coordinate space, the four
/// body cells carry weight-8 X generators, and ten face cells carry weight-4
/// Z generators.
pub fn reed_muller_15() -> CodeSpec {
    let n = 15;
    // Qubit q (0-based) is the point q+1 in 1..=15.
    let bit = |q: usize, j: usize| (q + 1) >> j & 1 == 1;
    let mut x_stabs = Vec::new();
    for j in 0..4 {
        let sites: Vec<usize> = (0..n).filter(|&q| bit(q, j)).collect();
        x_stabs.push(pauli_on(n, &sites, Basis::X));
    }
    let mut z_stabs = Vec::new();
    for j in 0..4 {
        for k in j + 1..4 {
            let sites: Vec<usize> = (0..n).filter(|&q| bit(q, j) && bit(q, k)).collect();
            z_stabs.push(pauli_on(n, &sites, Basis::Z));
        }
    }
    for j in 0..4 {
        let k = (j + 1) % 4;
        let sites: Vec<usize> = (0..n).filter(|&q| bit(q, j) && !bit(q, k)).collect();
        z_stabs.push(pauli_on(n, &sites, Basis::Z));
    }
    let mut stabs = x_stabs;
    stabs.extend(z_stabs);
    let gauge = GeneratorSet::new_unchecked(stabs.clone(), Role::Gauge, n);
    CodeSpec {
        name: "reed_muller_15".into(),
        n,
        k: 1,
        g: 0,
        stabilizers: GeneratorSet::new_unchecked(stabs, Role::Stabilizer, n),
        gauge_gens: gauge,
        logical_x: vec![pauli_on(n, &(0..n).collect::<Vec<_>>(), Basis::X)],
        logical_z: vec![pauli_on(n, &[0, 1, 2], Basis::Z)],
    }
}

/// The toric code on an `L×L` square torus: `n = 2L²`, `k = 2`.
pub fn toric(l: usize) -> Result<(CodeSpec, LatticeGeometry)> {
    if l < 2 {
        return Err(Error::InvalidParameter(format!(
            "toric lattice size must be >= 2, got {l}"
        )));
    }
    let n = 2 * l * l;
    let h = |i: usize, j: usize| (i % l) * l + (j % l);
    let v = |i: usize, j: usize| l * l + (i % l) * l + (j % l);
    let mut stabs = Vec::new();
    for i in 0..l {
        for j in 0..l {
            if i == l - 1 && j == l - 1 {
                continue; // global relation: product of all stars is identity
            }
            stabs.push(pauli_on(
                n,
                &[h(i, j), h(i, j + l - 1), v(i, j), v(i + l - 1, j)],
                Basis::X,
            ));
        }
    }
    for i in 0..l {
        for j in 0..l {
            if i == l - 1 && j == l - 1 {
                continue; // product of all plaquettes is identity
            }
            stabs.push(pauli_on(n, &[h(i, j), h(i + 1, j), v(i, j), v(i, j + 1)], Basis::Z));
        }
    }
    let lz1 = pauli_on(n, &(0..l).map(|j| h(0, j)).collect::<Vec<_>>(), Basis::Z);
    let lz2 = pauli_on(n, &(0..l).map(|i| v(i, 0)).collect::<Vec<_>>(), Basis::Z);
    let lx1 = pauli_on(n, &(0..l).map(|i| h(i, 0)).collect::<Vec<_>>(), Basis::X);
    let lx2 = pauli_on(n, &(0..l).map(|j| v(0, j)).collect::<Vec<_>>(), Basis::X);
    let gauge = GeneratorSet::new_unchecked(stabs.clone(), Role::Gauge, n);
    let code = CodeSpec {
        name: format!("toric_{l}"),
        n,
        k: 2,
        g: 0,
        stabilizers: GeneratorSet::new_unchecked(stabs, Role::Stabilizer, n),
        gauge_gens: gauge,
        logical_x: vec![lx1, lx2],
        logical_z: vec![lz1, lz2],
    };
    let mut coords = vec![(0, 0); n];
    for i in 0..l {
        for j in 0..l {
            coords[h(i, j)] = (2 * i as i64, 2 * j as i64 + 1);
            coords[v(i, j)] = (2 * i as i64 + 1, 2 * j as i64);
        }
    }
    let geom = LatticeGeometry { kind: LatticeKind::SquareTorus, size: l, coords };
    geom.check_unique();
    Ok((code, geom))
}

/// Hexagonal (6.6.6) color code on a triangular patch of odd distance `d`:
/// `n = (3d² + 1)/4`, `k = 1`.
pub fn color_triangular(d: usize) -> Result<(CodeSpec, LatticeGeometry)> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "color code distance must be odd and >= 3, got {d}"
        )));
    }
    let hi = 3 * d as i64 - 5;
    let inside = |x: i64, y: i64| y >= 0 && x - y >= -2 && x + y <= hi;
    let mut coords = Vec::new();
    for x in -2..=hi {
        if x.rem_euclid(3) == 0 {
            continue;
        }
        for y in 0..=hi + 2 {
            if (x + y) % 2 == 0 && inside(x, y) {
                coords.push((x, y));
            }
        }
    }
    let n = coords.len();
    debug_assert_eq!(n, (3 * d * d + 1) / 4);
    let index: std::collections::HashMap<(i64, i64), usize> =
        coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut face_sites = Vec::new();
    for x in -3..=hi {
        if x.rem_euclid(3) != 0 {
            continue;
        }
        for y in 0..=hi + 2 {
            if (x + y) % 2 != 0 || !inside(x, y) {
                continue;
            }
            let verts = [
                (x + 2, y),
                (x - 2, y),
                (x + 1, y + 1),
                (x + 1, y - 1),
                (x - 1, y + 1),
                (x - 1, y - 1),
            ];
            let mut kept: Vec<usize> = verts.iter().filter_map(|v| index.get(v).copied()).collect();
            kept.sort_unstable();
            face_sites.push(kept);
        }
    }
    let mut stabs = Vec::new();
    for f in &face_sites {
        stabs.push(pauli_on(n, f, Basis::X));
    }
    for f in &face_sites {
        stabs.push(pauli_on(n, f, Basis::Z));
    }
    let bottom: Vec<usize> = coords
        .iter()
        .enumerate()
        .filter_map(|(i, &(_, y))| (y == 0).then_some(i))
        .collect();
    debug_assert_eq!(bottom.len(), d);
    let gauge = GeneratorSet::new_unchecked(stabs.clone(), Role::Gauge, n);
    let code = CodeSpec {
        name: format!("color_{d}"),
        n,
        k: 1,
        g: 0,
        stabilizers: GeneratorSet::new_unchecked(stabs, Role::Stabilizer, n),
        gauge_gens: gauge,
        logical_x: vec![pauli_on(n, &bottom, Basis::X)],
        logical_z: vec![pauli_on(n, &bottom, Basis::Z)],
    };
    let geom = LatticeGeometry { kind: LatticeKind::TriangularColor, size: d, coords };
    geom.check_unique();
    Ok((code, geom))
}

/// The 2D Bacon–Shor subsystem code on an `L×L` grid: `n = L²`, `k = 1`,
/// `g = (L-1)²`.
pub fn bacon_shor(l: usize) -> Result<CodeSpec> {
    if l < 2 {
        return Err(Error::InvalidParameter(format!(
            "Bacon-Shor grid size must be >= 2, got {l}"
        )));
    }
    let n = l * l;
    let q = |r: usize, c: usize| r * l + c;
    let mut gauge = Vec::new();
    for r in 0..l {
        for c in 0..l - 1 {
            gauge.push(pauli_on(n, &[q(r, c), q(r, c + 1)], Basis::X));
        }
    }
    for r in 0..l - 1 {
        for c in 0..l {
            gauge.push(pauli_on(n, &[q(r, c), q(r + 1, c)], Basis::Z));
        }
    }
    let mut stabs = Vec::new();
    for c in 0..l - 1 {
        let sites: Vec<usize> = (0..l).flat_map(|r| [q(r, c), q(r, c + 1)]).collect();
        stabs.push(pauli_on(n, &sites, Basis::X));
    }
    for r in 0..l - 1 {
        let sites: Vec<usize> = (0..l).flat_map(|c| [q(r, c), q(r + 1, c)]).collect();
        stabs.push(pauli_on(n, &sites, Basis::Z));
    }
    let lx = pauli_on(n, &(0..l).map(|r| q(r, 0)).collect::<Vec<_>>(), Basis::X);
    let lz = pauli_on(n, &(0..l).map(|c| q(0, c)).collect::<Vec<_>>(), Basis::Z);
    Ok(CodeSpec {
        name: format!("bacon_shor_{l}"),
        n,
        k: 1,
        g: (l - 1) * (l - 1),
        stabilizers: GeneratorSet::new_unchecked(stabs, Role::Stabilizer, n),
        gauge_gens: GeneratorSet::new_unchecked(gauge, Role::Gauge, n),
        logical_x: vec![lx],
        logical_z: vec![lz],
    })
}

/// Two levels of the five-qubit code materialized on 25 qubits. Exists only
/// as a cross-check oracle for the concatenation recursion, which never
/// builds explicit multi-level codes.
pub fn concatenated_five_qubit() -> CodeSpec {
    let inner = five_qubit();
    let n = 25;
    let mut stabs = Vec::new();
    for b in 0..5 {
        for s in inner.stabilizers.iter() {
            let mut p = PauliOp::identity(n);
            for i in 0..5 {
                if let Some(basis) = s.site(i) {
                    p.mul_assign(&PauliOp::single(n, 5 * b + i, basis));
                }
            }
            stabs.push(p);
        }
    }
    // Outer generators act through the block logicals.
    let block_logical = |b: usize, basis: Basis| -> PauliOp {
        let sites: Vec<usize> = (5 * b..5 * b + 5).collect();
        pauli_on(n, &sites, basis)
    };
    for s in inner.stabilizers.iter() {
        let mut p = PauliOp::identity(n);
        for b in 0..5 {
            if let Some(basis) = s.site(b) {
                p.mul_assign(&block_logical(b, basis));
            }
        }
        stabs.push(p);
    }
    let gauge = GeneratorSet::new_unchecked(stabs.clone(), Role::Gauge, n);
    CodeSpec {
        name: "five_qubit_level2".into(),
        n,
        k: 1,
        g: 0,
        stabilizers: GeneratorSet::new_unchecked(stabs, Role::Stabilizer, n),
        gauge_gens: gauge,
        logical_x: vec![pauli_on(n, &(0..n).collect::<Vec<_>>(), Basis::X)],
        logical_z: vec![pauli_on(n, &(0..n).collect::<Vec<_>>(), Basis::Z)],
    }
}

/// Outcome of [`validate`]: pass, or the first violated invariant by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub pass: bool,
    pub violation: Option<String>,
}

impl ValidationReport {
    fn ok() -> Self {
        ValidationReport { pass: true, violation: None }
    }

    fn fail(msg: impl Into<String>) -> Self {
        ValidationReport { pass: false, violation: Some(msg.into()) }
    }
}

/// Check every structural invariant of a [`CodeSpec`], reporting the first
/// violation by name.
pub fn validate(code: &CodeSpec) -> ValidationReport {
    let n = code.n;
    if code.stabilizers.n() != n || code.gauge_gens.n() != n {
        return ValidationReport::fail("qubit count: generator sets disagree with n");
    }
    if code.stabilizers.len() != n - code.k - code.g {
        return ValidationReport::fail(format!(
            "counting: {} stabilizers, expected n-k-g = {}",
            code.stabilizers.len(),
            n - code.k - code.g
        ));
    }
    let stabs = code.stabilizers.gens();
    for i in 0..stabs.len() {
        for j in i + 1..stabs.len() {
            if stabs[i].anticommutes_unchecked(&stabs[j]) {
                return ValidationReport::fail(format!("commutation: stabilizers {i} and {j}"));
            }
        }
    }
    if independent_subset(stabs).len() != stabs.len() {
        return ValidationReport::fail("independence: stabilizer list is dependent");
    }
    if code.logical_x.len() != code.k || code.logical_z.len() != code.k {
        return ValidationReport::fail("counting: logical operator lists must have k entries");
    }
    for (which, ops) in [("X", &code.logical_x), ("Z", &code.logical_z)] {
        for (j, l) in ops.iter().enumerate() {
            if l.n() != n {
                return ValidationReport::fail(format!("qubit count: logical {which}{j}"));
            }
            for (i, s) in stabs.iter().enumerate() {
                if l.anticommutes_unchecked(s) {
                    return ValidationReport::fail(format!(
                        "commutation: logical {which}{j} vs stabilizer {i}"
                    ));
                }
            }
        }
    }
    for i in 0..code.k {
        for j in 0..code.k {
            let form = code.logical_x[i].anticommutes_unchecked(&code.logical_z[j]);
            if form != (i == j) {
                return ValidationReport::fail(format!(
                    "pairing: <X{i}, Z{j}> = {} expected {}",
                    form as u8,
                    (i == j) as u8
                ));
            }
            if i < j && code.logical_x[i].anticommutes_unchecked(&code.logical_x[j]) {
                return ValidationReport::fail(format!("pairing: X{i} anticommutes with X{j}"));
            }
            if i < j && code.logical_z[i].anticommutes_unchecked(&code.logical_z[j]) {
                return ValidationReport::fail(format!("pairing: Z{i} anticommutes with Z{j}"));
            }
        }
    }
    // Gauge group: contains the stabilizers, has dimension n - k + g, and the
    // bare logicals commute with all of it.
    let gauge_rank = independent_subset(code.gauge_gens.gens()).len();
    if gauge_rank != code.gauge_gens.len() {
        return ValidationReport::fail("independence: gauge list is dependent");
    }
    if gauge_rank != n - code.k + code.g {
        return ValidationReport::fail(format!(
            "counting: gauge group dimension {gauge_rank}, expected n-k+g = {}",
            n - code.k + code.g
        ));
    }
    let gauge_rows = code.gauge_gens.symplectic_matrix();
    for (i, s) in stabs.iter().enumerate() {
        match gauge_rows.in_rowspace(&s.to_symplectic()) {
            Ok(true) => {}
            _ => return ValidationReport::fail(format!("containment: stabilizer {i} not in gauge group")),
        }
    }
    for (which, ops) in [("X", &code.logical_x), ("Z", &code.logical_z)] {
        for (j, l) in ops.iter().enumerate() {
            for (i, gop) in code.gauge_gens.iter().enumerate() {
                if l.anticommutes_unchecked(gop) {
                    return ValidationReport::fail(format!(
                        "bare-logical condition: logical {which}{j} vs gauge generator {i}"
                    ));
                }
            }
        }
    }
    if code.g == 0 {
        // Gauge span must equal the stabilizer span.
        let stab_rows = code.stabilizers.symplectic_matrix();
        for (i, gop) in code.gauge_gens.iter().enumerate() {
            match stab_rows.in_rowspace(&gop.to_symplectic()) {
                Ok(true) => {}
                _ => {
                    return ValidationReport::fail(format!(
                        "containment: gauge generator {i} outside stabilizer span of a stabilizer code"
                    ))
                }
            }
        }
    }
    ValidationReport::ok()
}

/// Serialized form of a [`CodeSpec`]: Pauli operators as strings.
#[derive(Serialize, Deserialize)]
struct CodeSpecDto {
    name: String,
    n: usize,
    k: usize,
    g: usize,
    stabilizers: Vec<String>,
    gauge: Vec<String>,
    logical_x: Vec<String>,
    logical_z: Vec<String>,
}

impl Serialize for CodeSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CodeSpecDto {
            name: self.name.clone(),
            n: self.n,
            k: self.k,
            g: self.g,
            stabilizers: self.stabilizers.iter().map(|p| p.to_string()).collect(),
            gauge: self.gauge_gens.iter().map(|p| p.to_string()).collect(),
            logical_x: self.logical_x.iter().map(|p| p.to_string()).collect(),
            logical_z: self.logical_z.iter().map(|p| p.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CodeSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let dto = CodeSpecDto::deserialize(deserializer)?;
        let parse_all = |v: &[String]| -> std::result::Result<Vec<PauliOp>, D::Error> {
            v.iter()
                .map(|s| PauliOp::parse(s).map_err(D::Error::custom))
                .collect()
        };
        let stabs = parse_all(&dto.stabilizers)?;
        let gauge = parse_all(&dto.gauge)?;
        let code = CodeSpec {
            name: dto.name,
            n: dto.n,
            k: dto.k,
            g: dto.g,
            stabilizers: GeneratorSet::new(stabs, Role::Stabilizer, dto.n).map_err(D::Error::custom)?,
            gauge_gens: GeneratorSet::new(gauge, Role::Gauge, dto.n).map_err(D::Error::custom)?,
            logical_x: parse_all(&dto.logical_x)?,
            logical_z: parse_all(&dto.logical_z)?,
        };
        let report = validate(&code);
        if !report.pass {
            return Err(D::Error::custom(format!(
                "invalid code: {}",
                report.violation.unwrap_or_default()
            )));
        }
        Ok(code)
    }
}
