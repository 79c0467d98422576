//! Signless n-qubit Pauli operators in symplectic form, plus the group
//! machinery (independence, centralizers, membership) built on [`crate::gf2`].
//!
//! Operators are stored as an (x, z) pair of bit vectors; `Y` on qubit `i`
//! sets both `x[i]` and `z[i]`. Phases are deliberately not tracked: every
//! quantity this crate reports (preservation verdicts, subsystem entropies,
//! logical-class labels) is a function of unsigned groups only.

use crate::gf2::{BitMatrix, BitVec, Echelon};
use crate::{Error, Result};

/// A single-qubit measurement basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Basis {
    X,
    Y,
    Z,
}

impl Basis {
    pub const ALL: [Basis; 3] = [Basis::X, Basis::Y, Basis::Z];

    pub fn as_char(self) -> char {
        match self {
            Basis::X => 'X',
            Basis::Y => 'Y',
            Basis::Z => 'Z',
        }
    }

    pub fn from_char(ch: char) -> Result<Self> {
        match ch {
            'X' => Ok(Basis::X),
            'Y' => Ok(Basis::Y),
            'Z' => Ok(Basis::Z),
            _ => Err(Error::InvalidInput(format!("bad Pauli basis {ch:?}"))),
        }
    }

    /// (x, z) symplectic components of the basis operator.
    pub fn components(self) -> (bool, bool) {
        match self {
            Basis::X => (true, false),
            Basis::Y => (true, true),
            Basis::Z => (false, true),
        }
    }
}

impl std::fmt::Display for Basis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A signless Pauli operator on `n` qubits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    x: BitVec,
    z: BitVec,
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        PauliOp {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    /// The single-qubit operator `basis` acting on qubit `q`.
    pub fn single(n: usize, q: usize, basis: Basis) -> Self {
        assert!(q < n, "qubit index out of range");
        let mut p = PauliOp::identity(n);
        let (x, z) = basis.components();
        p.x.set(q, x);
        p.z.set(q, z);
        p
    }

    pub fn from_parts(x: BitVec, z: BitVec) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch(
                "x and z parts differ in length".into(),
            ));
        }
        Ok(PauliOp { x, z })
    }

    /// Parse a string over `{I, X, Y, Z}`, one character per qubit.
    pub fn parse(s: &str) -> Result<Self> {
        let n = s.chars().count();
        let mut p = PauliOp::identity(n);
        for (i, ch) in s.chars().enumerate() {
            match ch {
                'I' => {}
                'X' => p.x.set(i, true),
                'Y' => {
                    p.x.set(i, true);
                    p.z.set(i, true);
                }
                'Z' => p.z.set(i, true),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "bad Pauli character {ch:?} in {s:?}"
                    )))
                }
            }
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &BitVec {
        &self.x
    }

    pub fn z(&self) -> &BitVec {
        &self.z
    }

    /// The site content at qubit `i`, or `None` for identity.
    pub fn site(&self, i: usize) -> Option<Basis> {
        match (self.x.get(i), self.z.get(i)) {
            (false, false) => None,
            (true, false) => Some(Basis::X),
            (true, true) => Some(Basis::Y),
            (false, true) => Some(Basis::Z),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Number of non-identity sites.
    pub fn weight(&self) -> usize {
        (0..self.n()).filter(|&i| self.site(i).is_some()).count()
    }

    /// Signless group product: componentwise XOR of the symplectic parts.
    pub fn multiply(&self, other: &PauliOp) -> Result<PauliOp> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(format!(
                "product of operators on {} and {} qubits",
                self.n(),
                other.n()
            )));
        }
        let mut p = self.clone();
        p.x.xor_assign(&other.x);
        p.z.xor_assign(&other.z);
        Ok(p)
    }

    pub fn mul_assign(&mut self, other: &PauliOp) {
        debug_assert_eq!(self.n(), other.n());
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// True iff the operators commute: the symplectic form
    /// `x·z' + z·x'` vanishes over GF(2).
    pub fn commutes(&self, other: &PauliOp) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(format!(
                "commutation of operators on {} and {} qubits",
                self.n(),
                other.n()
            )));
        }
        Ok(!self.anticommutes_unchecked(other))
    }

    /// Symplectic form as a bit; lengths must already agree.
    #[inline]
    pub fn anticommutes_unchecked(&self, other: &PauliOp) -> bool {
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    /// The operator as a length-2n symplectic row `(x | z)`.
    pub fn to_symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    pub fn from_symplectic(v: &BitVec) -> PauliOp {
        assert!(v.len().is_multiple_of(2), "symplectic vector must have even length");
        let n = v.len() / 2;
        let mut p = PauliOp::identity(n);
        for i in v.iter_ones() {
            if i < n {
                p.x.set(i, true);
            } else {
                p.z.set(i - n, true);
            }
        }
        p
    }

    /// Restriction to a subset of qubits, in the order given.
    pub fn restrict(&self, qubits: &[usize]) -> PauliOp {
        let mut p = PauliOp::identity(qubits.len());
        for (out, &q) in qubits.iter().enumerate() {
            p.x.set(out, self.x.get(q));
            p.z.set(out, self.z.get(q));
        }
        p
    }
}

impl std::fmt::Display for PauliOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n() {
            let ch = match self.site(i) {
                None => 'I',
                Some(b) => b.as_char(),
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// The role a generator list plays; stabilizer and measured sets must be
/// abelian, every set must be independent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Stabilizer,
    Gauge,
    Measured,
    LogicalBasis,
    Generic,
}

/// An independent list of Pauli operators on a common qubit count.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    gens: Vec<PauliOp>,
    role: Role,
    n: usize,
}

impl GeneratorSet {
    /// Validating constructor: checks a common qubit count, GF(2)
    /// independence, and (for stabilizer/measured roles) mutual commutation.
    pub fn new(gens: Vec<PauliOp>, role: Role, n: usize) -> Result<Self> {
        if gens.iter().any(|g| g.n() != n) {
            return Err(Error::DimensionMismatch(
                "generator on wrong qubit count".into(),
            ));
        }
        let mut ech = Echelon::new();
        for (i, g) in gens.iter().enumerate() {
            if !ech.insert(g.to_symplectic()) {
                return Err(Error::InvalidInput(format!(
                    "generator {i} ({g}) is dependent on earlier generators"
                )));
            }
        }
        if matches!(role, Role::Stabilizer | Role::Measured) {
            for i in 0..gens.len() {
                for j in i + 1..gens.len() {
                    if gens[i].anticommutes_unchecked(&gens[j]) {
                        return Err(Error::InvalidInput(format!(
                            "generators {i} and {j} anticommute in an abelian role"
                        )));
                    }
                }
            }
        }
        Ok(GeneratorSet { gens, role, n })
    }

    /// Constructor for internally produced lists whose invariants are
    /// guaranteed by construction.
    pub fn new_unchecked(gens: Vec<PauliOp>, role: Role, n: usize) -> Self {
        debug_assert!(gens.iter().all(|g| g.n() == n));
        GeneratorSet { gens, role, n }
    }

    pub fn empty(role: Role, n: usize) -> Self {
        GeneratorSet { gens: Vec::new(), role, n }
    }

    pub fn gens(&self) -> &[PauliOp] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn iter(&self) -> std::slice::Iter<'_, PauliOp> {
        self.gens.iter()
    }

    /// Stacked symplectic rows, one per generator.
    pub fn symplectic_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.gens.iter().map(PauliOp::to_symplectic).collect())
            .expect("generators share a qubit count")
    }

    /// Echelon form of the symplectic rows, for repeated membership tests.
    pub fn span(&self) -> Echelon {
        let rows: Vec<BitVec> = self.gens.iter().map(PauliOp::to_symplectic).collect();
        Echelon::from_rows(rows.iter())
    }
}

/// Greedy maximal independent sublist, scanning in input order. The span of
/// the result equals the span of the input.
pub fn independent_subset(ops: &[PauliOp]) -> Vec<PauliOp> {
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for op in ops {
        if ech.insert(op.to_symplectic()) {
            out.push(op.clone());
        }
    }
    out
}

/// Generators of `{g in <group> : g commutes with every constraint}`.
///
/// Solved as the kernel of the commutation matrix whose (i, j) entry is the
/// symplectic form between `group[j]` and `constraints[i]`.
pub fn centralizer_intersection(group: &[PauliOp], constraints: &[PauliOp]) -> Vec<PauliOp> {
    if group.is_empty() {
        return Vec::new();
    }
    let mut m = BitMatrix::zeros(constraints.len(), group.len());
    for (i, c) in constraints.iter().enumerate() {
        for (j, g) in group.iter().enumerate() {
            if g.anticommutes_unchecked(c) {
                m.set(i, j, true);
            }
        }
    }
    m.nullspace_basis()
        .into_iter()
        .map(|coeffs| {
            let mut p = PauliOp::identity(group[0].n());
            for j in coeffs.iter_ones() {
                p.mul_assign(&group[j]);
            }
            p
        })
        .collect()
}

/// True iff `p` lies in the signless group generated by `group`.
pub fn group_contains(group: &[PauliOp], p: &PauliOp) -> bool {
    let rows: Vec<BitVec> = group.iter().map(PauliOp::to_symplectic).collect();
    let mut ech = Echelon::from_rows(rows.iter());
    ech.reduce(p.to_symplectic()).is_zero()
}
