//! Dense complex linear algebra over small multi-qubit registers: tensor
//! products, operator embedding, partial trace and physicality checks.
//!
//! Index convention used throughout the crate: **qubit 0 is the most
//! significant bit** of a computational-basis index, i.e. the leftmost
//! tensor factor. For a three-qubit register the basis state |abc⟩ has
//! index 4a + 2b + c.
//!
//! Register states live on 2, 4 or 8 dimensions (at most three qubits).
//! Raw matrices additionally admit dimension 16 so the Choi matrix of a
//! two-qubit channel can be materialized for verification; that headroom
//! is never available to register operations.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for algebraic identities (traces, Hermiticity, entrywise
/// agreement of two computation paths).
pub const TOL_ALGEBRAIC: f64 = 1e-12;
/// Spectral slack: eigenvalues of physical states may dip this far below
/// zero before a matrix is rejected as unphysical.
pub const TOL_SPECTRAL: f64 = 1e-10;
/// Tolerance on unitarity of gate inputs (entrywise on U†U − I).
pub const TOL_UNITARY: f64 = 1e-12;

/// Largest dimension a raw matrix may take (Choi matrix of a two-qubit map).
pub const MAX_DIM: usize = 16;
/// Largest dimension a register state may take (three qubits).
pub const MAX_STATE_DIM: usize = 8;

fn valid_dim(dim: usize) -> bool {
    dim.is_power_of_two() && (2..=MAX_DIM).contains(&dim)
}

/// Dense square complex matrix in row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of the given dimension. Panics on an unsupported
    /// dimension; use [`ComplexMatrix::from_entries`] for fallible input.
    pub fn zeros(dim: usize) -> Self {
        assert!(valid_dim(dim), "unsupported matrix dimension {dim}");
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if !valid_dim(dim) {
            return Err(Error::InvalidDimension(dim));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(entries.len(), dim * dim));
        }
        Ok(Self { dim, data: entries })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::from_entries(
            dim,
            entries.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        )
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Outer product |v⟩⟨v| of a state vector.
    pub fn outer(v: &[Complex64]) -> Result<Self> {
        let dim = v.len();
        if !valid_dim(dim) {
            return Err(Error::InvalidDimension(dim));
        }
        Ok(Self::from_fn(dim, |i, j| v[i] * v[j].conj()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of qubits this matrix acts on (dim = 2^n).
    pub fn nqubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn scale_re(&self, r: f64) -> Self {
        self.scale(Complex64::new(r, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "add dimension mismatch");
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "sub dimension mismatch");
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    /// UρU† for a same-dimension operator U.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.matmul(self).matmul(&u.dagger())
    }

    /// Kronecker product, `self` as the more significant factor.
    /// Capped at [`MAX_DIM`]; register-facing code goes through [`tensor`].
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let dim = self.dim * other.dim;
        if dim > MAX_DIM {
            return Err(Error::InvalidDimension(dim));
        }
        let mut out = Self::zeros(dim);
        for i1 in 0..self.dim {
            for j1 in 0..self.dim {
                let a = self.get(i1, j1);
                for i2 in 0..other.dim {
                    for j2 in 0..other.dim {
                        out.set(
                            i1 * other.dim + i2,
                            j1 * other.dim + j2,
                            a * other.get(i2, j2),
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "comparison dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from the conjugate transpose.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    /// Largest entrywise deviation of U†U from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        self.dagger()
            .matmul(self)
            .max_abs_diff(&Self::identity(self.dim))
    }

    pub fn all_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

// -------------------------------------------------------------------------
// Gates
// -------------------------------------------------------------------------

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_entries(
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
    .unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
}

pub fn hadamard() -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real(2, &[s, s, s, -s]).unwrap()
}

/// CNOT with the first (more significant) local qubit as control.
pub fn cnot() -> ComplexMatrix {
    ComplexMatrix::from_real(
        4,
        &[
            1.0, 0.0, 0.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 1.0, //
            0.0, 0.0, 1.0, 0.0,
        ],
    )
    .unwrap()
}

// -------------------------------------------------------------------------
// Register helpers
// -------------------------------------------------------------------------

/// Value of `qubit`'s bit inside basis index `idx` of an `n`-qubit register.
#[inline]
fn bit_of(idx: usize, qubit: usize, n: usize) -> usize {
    (idx >> (n - 1 - qubit)) & 1
}

fn check_qubits(targets: &[usize], nqubits: usize) -> Result<()> {
    for &q in targets {
        if q >= nqubits {
            return Err(Error::QubitOutOfRange { index: q, nqubits });
        }
    }
    for (k, &q) in targets.iter().enumerate() {
        if targets[..k].contains(&q) {
            return Err(Error::DuplicateTargets);
        }
    }
    Ok(())
}

/// Kronecker product with `a` as the more significant factor (qubit 0 of the
/// result is qubit 0 of `a`). Rejects results beyond the three-qubit register.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let dim = a.dim() * b.dim();
    if dim > MAX_STATE_DIM {
        return Err(Error::RegisterOverflow(dim));
    }
    a.kron(b)
}

/// Partial trace of a raw matrix over every qubit *not* in `keep`.
/// Kept qubits retain their original relative order.
pub fn partial_trace_raw(m: &ComplexMatrix, keep: &[usize]) -> Result<ComplexMatrix> {
    let n = m.nqubits();
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    check_qubits(&keep, n)?;

    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let k = keep.len();
    let out_dim = 1 << k;
    let mut out = ComplexMatrix::zeros(out_dim);

    // Assemble the full register index from a kept index and a traced index.
    let assemble = |kept_idx: usize, traced_idx: usize| -> usize {
        let mut full = 0usize;
        for (pos, &q) in keep.iter().enumerate() {
            full |= bit_of(kept_idx, pos, k) << (n - 1 - q);
        }
        for (pos, &q) in traced.iter().enumerate() {
            full |= bit_of(traced_idx, pos, traced.len()) << (n - 1 - q);
        }
        full
    };

    let t_dim = 1 << traced.len();
    for i in 0..out_dim {
        for j in 0..out_dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..t_dim {
                acc += m.get(assemble(i, t), assemble(j, t));
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

/// Lifts `u` (acting on `targets`, in order, with `targets[0]` as the most
/// significant local qubit) to the full `nqubits` register.
pub fn embed_unitary(
    u: &ComplexMatrix,
    nqubits: usize,
    targets: &[usize],
) -> Result<ComplexMatrix> {
    check_qubits(targets, nqubits)?;
    let m = targets.len();
    if u.dim() != 1 << m {
        return Err(Error::DimensionMismatch(u.dim(), 1 << m));
    }
    let dim = 1 << nqubits;
    let rest: Vec<usize> = (0..nqubits).filter(|q| !targets.contains(q)).collect();

    let mut out = ComplexMatrix::zeros(dim);
    for a in 0..dim {
        for b in 0..dim {
            if rest
                .iter()
                .any(|&q| bit_of(a, q, nqubits) != bit_of(b, q, nqubits))
            {
                continue;
            }
            let la: usize = targets
                .iter()
                .enumerate()
                .map(|(pos, &q)| bit_of(a, q, nqubits) << (m - 1 - pos))
                .sum();
            let lb: usize = targets
                .iter()
                .enumerate()
                .map(|(pos, &q)| bit_of(b, q, nqubits) << (m - 1 - pos))
                .sum();
            out.set(a, b, u.get(la, lb));
        }
    }
    Ok(out)
}

/// Replaces `targets` of a register matrix with the maximally mixed state,
/// keeping the reduced state of the remaining qubits in place. For the full
/// register this is tr(m)·I/dim. Linear in `m`, so it extends to matrix
/// units when assembling Choi matrices.
pub fn replace_with_mixed(m: &ComplexMatrix, targets: &[usize]) -> Result<ComplexMatrix> {
    let n = m.nqubits();
    check_qubits(targets, n)?;
    let dim = m.dim();
    let k = targets.len();
    let weight = 1.0 / (1usize << k) as f64;

    if k == n {
        return Ok(ComplexMatrix::identity(dim).scale(m.trace() * weight));
    }
    let kept: Vec<usize> = (0..n).filter(|q| !targets.contains(q)).collect();
    let reduced = partial_trace_raw(m, &kept)?;
    let kk = kept.len();

    let mut out = ComplexMatrix::zeros(dim);
    for a in 0..dim {
        for b in 0..dim {
            if targets.iter().any(|&q| bit_of(a, q, n) != bit_of(b, q, n)) {
                continue;
            }
            let ra: usize = kept
                .iter()
                .enumerate()
                .map(|(pos, &q)| bit_of(a, q, n) << (kk - 1 - pos))
                .sum();
            let rb: usize = kept
                .iter()
                .enumerate()
                .map(|(pos, &q)| bit_of(b, q, n) << (kk - 1 - pos))
                .sum();
            out.set(a, b, reduced.get(ra, rb) * weight);
        }
    }
    Ok(out)
}

/// Eigenvalues of a Hermitian matrix, ascending. The input is symmetrized
/// before the solve so that roundoff in the strict upper triangle cannot
/// perturb the spectrum.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.dim();
    let h = m.add(&m.dagger()).scale_re(0.5);
    let dm = nalgebra::DMatrix::from_fn(n, n, |i, j| h.get(i, j));
    let eig = nalgebra::SymmetricEigen::new(dm);
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals
}

pub fn min_hermitian_eigenvalue(m: &ComplexMatrix) -> f64 {
    hermitian_eigenvalues(m)[0]
}

// -------------------------------------------------------------------------
// Density matrices
// -------------------------------------------------------------------------

/// Unit-trace, Hermitian, positive semidefinite matrix on at most three
/// qubits. Construction validates all three properties.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    nqubits: usize,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if mat.dim() > MAX_STATE_DIM {
            return Err(Error::RegisterOverflow(mat.dim()));
        }
        if !mat.all_finite() {
            return Err(Error::NonFinite);
        }
        let trace_dev = (mat.trace() - Complex64::new(1.0, 0.0)).norm();
        if trace_dev > TOL_ALGEBRAIC {
            return Err(Error::NotPhysical {
                what: "trace",
                deviation: trace_dev,
            });
        }
        let herm_dev = mat.hermiticity_deviation();
        if herm_dev > TOL_ALGEBRAIC {
            return Err(Error::NotPhysical {
                what: "hermiticity",
                deviation: herm_dev,
            });
        }
        let min_eig = min_hermitian_eigenvalue(&mat);
        if min_eig < -TOL_SPECTRAL {
            return Err(Error::NotPhysical {
                what: "positivity",
                deviation: -min_eig,
            });
        }
        let nqubits = mat.nqubits();
        Ok(Self { mat, nqubits })
    }

    /// Pure-state density matrix |v⟩⟨v| from a normalized state vector.
    pub fn from_statevector(v: &[Complex64]) -> Result<Self> {
        Self::new(ComplexMatrix::outer(v)?)
    }

    pub fn maximally_mixed(nqubits: usize) -> Self {
        let dim = 1 << nqubits;
        Self {
            mat: ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64),
            nqubits,
        }
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn nqubits(&self) -> usize {
        self.nqubits
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }
}

/// Reduced state on `keep` (original relative order); trace is preserved.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    DensityMatrix::new(partial_trace_raw(rho.mat(), keep)?)
}

/// UρU† with `u` lifted to the full register via identities elsewhere.
/// `u` must be unitary within [`TOL_UNITARY`].
pub fn embed_apply(
    rho: &DensityMatrix,
    u: &ComplexMatrix,
    targets: &[usize],
) -> Result<DensityMatrix> {
    let dev = u.unitarity_deviation();
    if dev > TOL_UNITARY {
        return Err(Error::NotUnitary(dev));
    }
    let full = embed_unitary(u, rho.nqubits(), targets)?;
    DensityMatrix::new(rho.mat().conjugate_by(&full))
}

/// Physicality diagnostics of a matrix; reporting only, never rejects.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalityReport {
    pub trace_deviation: f64,
    pub hermiticity_deviation: f64,
    pub min_eigenvalue: f64,
}

impl PhysicalityReport {
    pub fn of_matrix(m: &ComplexMatrix) -> Self {
        Self {
            trace_deviation: (m.trace() - Complex64::new(1.0, 0.0)).norm(),
            hermiticity_deviation: m.hermiticity_deviation(),
            min_eigenvalue: min_hermitian_eigenvalue(m),
        }
    }

    pub fn within_tolerance(&self) -> bool {
        self.trace_deviation <= TOL_ALGEBRAIC
            && self.hermiticity_deviation <= TOL_ALGEBRAIC
            && self.min_eigenvalue >= -TOL_SPECTRAL
    }
}

pub fn check_physical(rho: &DensityMatrix) -> PhysicalityReport {
    PhysicalityReport::of_matrix(rho.mat())
}
