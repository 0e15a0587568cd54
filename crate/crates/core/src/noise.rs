//! Noise primitives as completely positive trace-preserving maps, plus the
//! two-outcome noisy measurement and channel-verification helpers.
//!
//! * Depolarizing: ρ ↦ p·ρ + (1−p)·(maximally mixed target ⊗ reduced rest).
//! * Noisy 1q/2q gate: with probability p the ideal unitary acts; otherwise
//!   the gate is discarded entirely and the target qubit(s) are replaced by
//!   the maximally mixed state. Because the replacement ignores its input,
//!   this is the same map as "ideal gate, then depolarize the targets",
//!   an equivalence the branch-enumeration verifier relies on.
//! * Noisy measurement: POVM effects E₀ = η|0⟩⟨0| + (1−η)|1⟩⟨1| and
//!   E₁ = η|1⟩⟨1| + (1−η)|0⟩⟨0| on the target qubit. The collapse itself is
//!   ideal; only the classical record flips with probability 1−η. The
//!   post-state for reported bit b is therefore the mixture of the two ideal
//!   collapse outcomes weighted by (η·p_correct, (1−η)·p_wrong), renormalized.
//!
//! The replaced-qubit normalization is fixed by trace preservation: the
//! (1−p)/2ᵏ coefficient of the error branch puts exactly I/2ᵏ on the k
//! replaced qubits.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::{
    embed_apply, partial_trace_raw, replace_with_mixed, ComplexMatrix, DensityMatrix,
    TOL_ALGEBRAIC, TOL_UNITARY,
};

fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::ParameterOutOfRange { name, value });
    }
    Ok(())
}

/// The four noise strengths driving every formula in the crate:
/// single-qubit gate reliability `p1`, two-qubit gate reliability `p2`,
/// measurement efficiency `eta` and resource singlet fraction `werner_f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    p1: f64,
    p2: f64,
    eta: f64,
    werner_f: f64,
}

impl NoiseParams {
    pub fn new(p1: f64, p2: f64, eta: f64, werner_f: f64) -> Result<Self> {
        check_unit_interval("p1", p1)?;
        check_unit_interval("p2", p2)?;
        check_unit_interval("eta", eta)?;
        check_unit_interval("F", werner_f)?;
        Ok(Self {
            p1,
            p2,
            eta,
            werner_f,
        })
    }

    pub fn ideal() -> Self {
        Self {
            p1: 1.0,
            p2: 1.0,
            eta: 1.0,
            werner_f: 1.0,
        }
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn werner_f(&self) -> f64 {
        self.werner_f
    }
}

/// One reported outcome of a noisy single-qubit measurement.
#[derive(Debug, Clone)]
pub struct MeasurementBranch {
    pub reported_bit: u8,
    pub probability: f64,
    pub post_state: DensityMatrix,
}

/// Depolarizing channel of reliability `p` on one qubit of a register.
pub fn depolarize(rho: &DensityMatrix, p: f64, qubit: usize) -> Result<DensityMatrix> {
    check_unit_interval("p", p)?;
    let replaced = replace_with_mixed(rho.mat(), &[qubit])?;
    DensityMatrix::new(rho.mat().scale_re(p).add(&replaced.scale_re(1.0 - p)))
}

/// Imperfect single-qubit gate: p1·UρU† + (1−p1)·(target replaced by I/2).
/// The error branch discards the gate entirely.
pub fn noisy_1q(
    rho: &DensityMatrix,
    u: &ComplexMatrix,
    qubit: usize,
    p1: f64,
) -> Result<DensityMatrix> {
    check_unit_interval("p1", p1)?;
    if u.dim() != 2 {
        return Err(Error::DimensionMismatch(u.dim(), 2));
    }
    let ideal = embed_apply(rho, u, &[qubit])?;
    if p1 == 1.0 {
        return Ok(ideal);
    }
    let replaced = replace_with_mixed(rho.mat(), &[qubit])?;
    DensityMatrix::new(ideal.mat().scale_re(p1).add(&replaced.scale_re(1.0 - p1)))
}

/// Imperfect two-qubit gate: p2·UρU† + (1−p2)·(targets replaced by I/4).
pub fn noisy_2q(
    rho: &DensityMatrix,
    u: &ComplexMatrix,
    qubits: (usize, usize),
    p2: f64,
) -> Result<DensityMatrix> {
    check_unit_interval("p2", p2)?;
    if u.dim() != 4 {
        return Err(Error::DimensionMismatch(u.dim(), 4));
    }
    let targets = [qubits.0, qubits.1];
    let ideal = embed_apply(rho, u, &targets)?;
    if p2 == 1.0 {
        return Ok(ideal);
    }
    let replaced = replace_with_mixed(rho.mat(), &targets)?;
    DensityMatrix::new(ideal.mat().scale_re(p2).add(&replaced.scale_re(1.0 - p2)))
}

/// The POVM effects (E₀, E₁) of the noisy measurement on a single qubit.
/// Their sum is exactly the identity.
pub fn measurement_effects(eta: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_unit_interval("eta", eta)?;
    let e0 = ComplexMatrix::from_real(2, &[eta, 0.0, 0.0, 1.0 - eta])?;
    let e1 = ComplexMatrix::from_real(2, &[1.0 - eta, 0.0, 0.0, eta])?;
    Ok((e0, e1))
}

/// Noisy measurement of one register qubit. Returns the two reported-bit
/// branches in order (0, 1); their probabilities sum to one.
pub fn imperfect_measure(
    rho: &DensityMatrix,
    qubit: usize,
    eta: f64,
) -> Result<[MeasurementBranch; 2]> {
    check_unit_interval("eta", eta)?;
    let n = rho.nqubits();
    if qubit >= n {
        return Err(Error::QubitOutOfRange {
            index: qubit,
            nqubits: n,
        });
    }
    let dim = rho.dim();
    let shift = n - 1 - qubit;

    // Ideal collapse Π_z ρ Π_z, unnormalized.
    let collapse = |z: usize| -> (f64, ComplexMatrix) {
        let mut out = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            if (i >> shift) & 1 != z {
                continue;
            }
            for j in 0..dim {
                if (j >> shift) & 1 != z {
                    continue;
                }
                out.set(i, j, rho.mat().get(i, j));
            }
        }
        let p = out.trace().re;
        (p, out)
    };
    let collapsed = [collapse(0), collapse(1)];

    let branch = |bit: usize| -> Result<MeasurementBranch> {
        let (p_match, ref m_match) = collapsed[bit];
        let (p_other, ref m_other) = collapsed[1 - bit];
        let probability = eta * p_match + (1.0 - eta) * p_other;
        let post_state = if probability > 1e-15 {
            let mixed = m_match
                .scale_re(eta)
                .add(&m_other.scale_re(1.0 - eta))
                .scale_re(1.0 / probability);
            DensityMatrix::new(mixed)?
        } else {
            // Zero-probability branch: any physical state works; collapse the
            // measured qubit deterministically so invariants still hold.
            let mut proj = ComplexMatrix::zeros(2);
            proj.set(bit, bit, Complex64::new(1.0, 0.0));
            if n == 1 {
                DensityMatrix::new(proj)?
            } else {
                let kept: Vec<usize> = (0..n).filter(|&q| q != qubit).collect();
                let rest = partial_trace_raw(rho.mat(), &kept)?;
                DensityMatrix::new(insert_factor(&proj, &rest, qubit, n))?
            }
        };
        Ok(MeasurementBranch {
            reported_bit: bit as u8,
            probability,
            post_state,
        })
    };

    Ok([branch(0)?, branch(1)?])
}

/// Tensor-inserts a single-qubit factor at position `qubit` of an n-qubit
/// register whose remaining factor is `rest` (kept qubits in order).
fn insert_factor(
    single: &ComplexMatrix,
    rest: &ComplexMatrix,
    qubit: usize,
    n: usize,
) -> ComplexMatrix {
    let dim = 1 << n;
    ComplexMatrix::from_fn(dim, |i, j| {
        let bit = |idx: usize, q: usize| (idx >> (n - 1 - q)) & 1;
        let strip = |idx: usize| {
            let mut out = 0usize;
            for q in 0..n {
                if q == qubit {
                    continue;
                }
                out = (out << 1) | bit(idx, q);
            }
            out
        };
        single.get(bit(i, qubit), bit(j, qubit)) * rest.get(strip(i), strip(j))
    })
}

// -------------------------------------------------------------------------
// Channel descriptors and Choi verification
// -------------------------------------------------------------------------

/// A noise primitive with fixed parameters, viewed as a linear map on its
/// native space (2×2 for single-qubit maps, 4×4 for the two-qubit gate).
#[derive(Debug, Clone)]
pub enum ChannelKind {
    Depolarizing { p: f64 },
    SingleQubitGate { u: ComplexMatrix, p1: f64 },
    TwoQubitGate { u: ComplexMatrix, p2: f64 },
}

impl ChannelKind {
    pub fn input_dim(&self) -> usize {
        match self {
            ChannelKind::Depolarizing { .. } | ChannelKind::SingleQubitGate { .. } => 2,
            ChannelKind::TwoQubitGate { .. } => 4,
        }
    }

    /// Linear action on an arbitrary (not necessarily physical) matrix of
    /// the native dimension; this is what the Choi construction feeds with
    /// matrix units.
    pub fn apply_raw(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        let dim = self.input_dim();
        if m.dim() != dim {
            return Err(Error::DimensionMismatch(m.dim(), dim));
        }
        let mix = |p: f64, ideal: ComplexMatrix| -> ComplexMatrix {
            let mixed = ComplexMatrix::identity(dim).scale(m.trace() / dim as f64);
            ideal.scale_re(p).add(&mixed.scale_re(1.0 - p))
        };
        match self {
            ChannelKind::Depolarizing { p } => {
                check_unit_interval("p", *p)?;
                Ok(mix(*p, m.clone()))
            }
            ChannelKind::SingleQubitGate { u, p1 } => {
                check_unit_interval("p1", *p1)?;
                let dev = u.unitarity_deviation();
                if dev > TOL_UNITARY {
                    return Err(Error::NotUnitary(dev));
                }
                Ok(mix(*p1, m.conjugate_by(u)))
            }
            ChannelKind::TwoQubitGate { u, p2 } => {
                check_unit_interval("p2", *p2)?;
                let dev = u.unitarity_deviation();
                if dev > TOL_UNITARY {
                    return Err(Error::NotUnitary(dev));
                }
                Ok(mix(*p2, m.conjugate_by(u)))
            }
        }
    }
}

/// Unnormalized Choi matrix Σᵢⱼ |i⟩⟨j| ⊗ E(|i⟩⟨j|) on the doubled space
/// (input factor first). Positive semidefiniteness certifies complete
/// positivity; tr_out reproducing the identity certifies trace preservation.
pub fn choi_matrix(kind: &ChannelKind) -> Result<ComplexMatrix> {
    let d = kind.input_dim();
    let mut choi = ComplexMatrix::zeros(d * d);
    for i in 0..d {
        for j in 0..d {
            let mut unit = ComplexMatrix::zeros(d);
            unit.set(i, j, Complex64::new(1.0, 0.0));
            let image = kind.apply_raw(&unit)?;
            let term = unit.kron(&image)?;
            choi = choi.add(&term);
        }
    }
    Ok(choi)
}

/// Trace-preservation deviation of a channel descriptor: the largest
/// |tr E(|i⟩⟨j|) − δᵢⱼ| over matrix units.
pub fn trace_preservation_deviation(kind: &ChannelKind) -> Result<f64> {
    let d = kind.input_dim();
    let mut dev: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let mut unit = ComplexMatrix::zeros(d);
            unit.set(i, j, Complex64::new(1.0, 0.0));
            let tr = kind.apply_raw(&unit)?.trace();
            let expect = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((tr - Complex64::new(expect, 0.0)).norm());
        }
    }
    Ok(dev)
}

/// A single-qubit linear map stored by its images of the four matrix units.
/// This is the common representation the simulator's effective channel is
/// reduced to; applying it to a density matrix is a plain linear extension.
#[derive(Debug, Clone)]
pub struct QubitChannel {
    images: [[ComplexMatrix; 2]; 2],
}

impl QubitChannel {
    pub fn from_unit_images(images: [[ComplexMatrix; 2]; 2]) -> Result<Self> {
        for row in &images {
            for m in row {
                if m.dim() != 2 {
                    return Err(Error::DimensionMismatch(m.dim(), 2));
                }
                if !m.all_finite() {
                    return Err(Error::NonFinite);
                }
            }
        }
        Ok(Self { images })
    }

    pub fn identity() -> Self {
        let unit = |i: usize, j: usize| {
            let mut m = ComplexMatrix::zeros(2);
            m.set(i, j, Complex64::new(1.0, 0.0));
            m
        };
        Self {
            images: [[unit(0, 0), unit(0, 1)], [unit(1, 0), unit(1, 1)]],
        }
    }

    /// The constant map ρ ↦ tr(ρ)·I/2.
    pub fn completely_depolarizing() -> Self {
        let half = ComplexMatrix::identity(2).scale_re(0.5);
        let zero = ComplexMatrix::zeros(2);
        Self {
            images: [[half.clone(), zero.clone()], [zero, half]],
        }
    }

    pub fn unit_image(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.images[i][j]
    }

    /// Linear extension Σᵢⱼ mᵢⱼ·E(|i⟩⟨j|).
    pub fn apply(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(2);
        for i in 0..2 {
            for j in 0..2 {
                out = out.add(&self.images[i][j].scale(m.get(i, j)));
            }
        }
        out
    }

    pub fn apply_density(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        DensityMatrix::new(self.apply(rho.mat()))
    }

    /// Unnormalized Choi matrix on the doubled space (input factor first).
    pub fn choi(&self) -> ComplexMatrix {
        let mut choi = ComplexMatrix::zeros(4);
        for i in 0..2 {
            for j in 0..2 {
                let mut unit = ComplexMatrix::zeros(2);
                unit.set(i, j, Complex64::new(1.0, 0.0));
                choi = choi.add(&unit.kron(&self.images[i][j]).expect("4x4 choi"));
            }
        }
        choi
    }

    pub fn trace_preservation_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((self.images[i][j].trace() - Complex64::new(expect, 0.0)).norm());
            }
        }
        dev
    }

    pub fn require_trace_preserving(&self) -> Result<()> {
        let dev = self.trace_preservation_deviation();
        if dev > TOL_ALGEBRAIC {
            return Err(Error::NotTracePreserving(dev));
        }
        Ok(())
    }

    /// Largest entrywise difference of the two maps' unit images.
    pub fn max_image_deviation(&self, other: &Self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                dev = dev.max(self.images[i][j].max_abs_diff(&other.images[i][j]));
            }
        }
        dev
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::PureQubit;
    use crate::tensor::{cnot, hadamard, min_hermitian_eigenvalue, pauli_x, tensor, TOL_SPECTRAL};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn basis_density(dim: usize, idx: usize) -> DensityMatrix {
        let mut v = vec![c(0.0, 0.0); dim];
        v[idx] = c(1.0, 0.0);
        DensityMatrix::from_statevector(&v).unwrap()
    }

    const PARAM_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

    #[test]
    fn noise_params_validated() {
        assert!(NoiseParams::new(0.5, 0.5, 0.5, 0.5).is_ok());
        assert!(matches!(
            NoiseParams::new(1.5, 0.5, 0.5, 0.5).unwrap_err(),
            Error::ParameterOutOfRange { name: "p1", .. }
        ));
        assert!(NoiseParams::new(0.5, 0.5, 0.5, -0.1).is_err());
    }

    #[test]
    fn depolarize_limits() {
        let rho = basis_density(2, 0);
        let unchanged = depolarize(&rho, 1.0, 0).unwrap();
        assert_eq!(unchanged.mat().max_abs_diff(rho.mat()), 0.0);

        let mixed = depolarize(&rho, 0.0, 0).unwrap();
        assert!(
            mixed
                .mat()
                .max_abs_diff(&ComplexMatrix::identity(2).scale_re(0.5))
                < 1e-15
        );

        let half = depolarize(&rho, 0.5, 0).unwrap();
        let expect = ComplexMatrix::from_real(2, &[0.75, 0.0, 0.0, 0.25]).unwrap();
        assert!(half.mat().max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn depolarize_rejects_bad_qubit() {
        let rho = basis_density(2, 0);
        assert!(matches!(
            depolarize(&rho, 0.5, 3).unwrap_err(),
            Error::QubitOutOfRange { .. }
        ));
    }

    #[test]
    fn noisy_1q_limits() {
        let rho = basis_density(2, 0);

        let ideal = noisy_1q(&rho, &hadamard(), 0, 1.0).unwrap();
        let direct = embed_apply(&rho, &hadamard(), &[0]).unwrap();
        assert_eq!(ideal.mat().max_abs_diff(direct.mat()), 0.0);

        // Full replacement on a product state wipes the target only.
        let rest = basis_density(2, 1);
        let joint = DensityMatrix::new(tensor(rho.mat(), rest.mat()).unwrap()).unwrap();
        let wiped = noisy_1q(&joint, &hadamard(), 0, 0.0).unwrap();
        let expect = tensor(&ComplexMatrix::identity(2).scale_re(0.5), rest.mat()).unwrap();
        assert!(wiped.mat().max_abs_diff(&expect) < 1e-15);

        let partial = noisy_1q(&rho, &hadamard(), 0, 0.8).unwrap();
        assert!((partial.mat().get(0, 1) - c(0.4, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn noisy_1q_rejects_non_unitary() {
        let rho = basis_density(2, 0);
        let bad = ComplexMatrix::from_real(2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            noisy_1q(&rho, &bad, 0, 0.9).unwrap_err(),
            Error::NotUnitary(_)
        ));
    }

    #[test]
    fn noisy_2q_limits() {
        let rho = basis_density(4, 2); // |10⟩
        let flipped = noisy_2q(&rho, &cnot(), (0, 1), 1.0).unwrap();
        assert!(flipped.mat().max_abs_diff(basis_density(4, 3).mat()) < 1e-15);

        let wiped = noisy_2q(&rho, &cnot(), (0, 1), 0.0).unwrap();
        assert!(
            wiped
                .mat()
                .max_abs_diff(&ComplexMatrix::identity(4).scale_re(0.25))
                < 1e-15
        );

        let mostly = noisy_2q(&rho, &cnot(), (0, 1), 0.9).unwrap();
        let expect = basis_density(4, 3)
            .mat()
            .scale_re(0.9)
            .add(&ComplexMatrix::identity(4).scale_re(0.025));
        assert!(mostly.mat().max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn noisy_2q_rejects_overlapping_targets() {
        let rho = basis_density(4, 0);
        assert_eq!(
            noisy_2q(&rho, &cnot(), (1, 1), 0.9).unwrap_err(),
            Error::DuplicateTargets
        );
    }

    #[test]
    fn measurement_effects_sum_to_identity_exactly() {
        for &eta in &[0.0, 0.1, 0.3, 0.5, 0.9, 1.0] {
            let (e0, e1) = measurement_effects(eta).unwrap();
            let sum = e0.add(&e1);
            assert_eq!(sum.max_abs_diff(&ComplexMatrix::identity(2)), 0.0);
        }
    }

    #[test]
    fn ideal_measurement_on_basis_state() {
        let rho = basis_density(2, 0);
        let [b0, b1] = imperfect_measure(&rho, 0, 1.0).unwrap();
        assert!((b0.probability - 1.0).abs() < 1e-15);
        assert!(b1.probability.abs() < 1e-15);
        assert!(b0.post_state.mat().max_abs_diff(rho.mat()) < 1e-15);
    }

    #[test]
    fn noisy_measurement_flips_record() {
        let rho = basis_density(2, 1);
        let [b0, b1] = imperfect_measure(&rho, 0, 0.9).unwrap();
        assert!((b0.probability - 0.1).abs() < 1e-15);
        assert!((b1.probability - 0.9).abs() < 1e-15);
        // The collapse was onto |1⟩ either way; only the record flipped.
        assert!(b0.post_state.mat().max_abs_diff(rho.mat()) < 1e-15);
    }

    #[test]
    fn noisy_measurement_on_superposition() {
        let plus = PureQubit::from_bloch_angles(std::f64::consts::FRAC_PI_2, 0.0)
            .unwrap()
            .density();
        let [b0, b1] = imperfect_measure(&plus, 0, 0.9).unwrap();
        assert!((b0.probability - 0.5).abs() < 1e-12);
        assert!((b1.probability - 0.5).abs() < 1e-12);
        let expect = ComplexMatrix::from_real(2, &[0.9, 0.0, 0.0, 0.1]).unwrap();
        assert!(b0.post_state.mat().max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn measurement_branches_sum_to_one_on_register() {
        let mut v = vec![c(0.0, 0.0); 8];
        v[0] = c(0.6, 0.0);
        v[3] = c(0.0, 0.8);
        let rho = DensityMatrix::from_statevector(&v).unwrap();
        for qubit in 0..3 {
            let branches = imperfect_measure(&rho, qubit, 0.85).unwrap();
            let total: f64 = branches.iter().map(|b| b.probability).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn choi_of_identity_channel() {
        let kind = ChannelKind::Depolarizing { p: 1.0 };
        let choi = choi_matrix(&kind).unwrap();
        // 2·|Φ⁺⟩⟨Φ⁺|: unit entries at the four Bell corners.
        let mut expect = ComplexMatrix::zeros(4);
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            expect.set(i, j, c(1.0, 0.0));
        }
        assert_eq!(choi.max_abs_diff(&expect), 0.0);
    }

    #[test]
    fn choi_of_full_replacement() {
        let kind = ChannelKind::Depolarizing { p: 0.0 };
        let choi = choi_matrix(&kind).unwrap();
        let expect = ComplexMatrix::identity(4).scale_re(0.5);
        assert!(choi.max_abs_diff(&expect) < 1e-15);
        assert!(min_hermitian_eigenvalue(&choi) >= -TOL_SPECTRAL);
    }

    #[test]
    fn channels_are_cptp_on_grid() {
        for &p in &PARAM_GRID {
            let kinds = [
                ChannelKind::Depolarizing { p },
                ChannelKind::SingleQubitGate {
                    u: hadamard(),
                    p1: p,
                },
                ChannelKind::TwoQubitGate { u: cnot(), p2: p },
            ];
            for kind in &kinds {
                let choi = choi_matrix(kind).unwrap();
                assert!(
                    min_hermitian_eigenvalue(&choi) >= -TOL_SPECTRAL,
                    "choi not PSD at p={p}"
                );
                assert!(trace_preservation_deviation(kind).unwrap() < TOL_ALGEBRAIC);
            }
        }
    }

    #[test]
    fn noisy_identity_gate_equals_depolarize() {
        let mut v = vec![c(0.0, 0.0); 4];
        v[0] = c(0.8, 0.0);
        v[3] = c(0.0, 0.6);
        let rho = DensityMatrix::from_statevector(&v).unwrap();
        for &p in &PARAM_GRID {
            for qubit in 0..2 {
                let a = noisy_1q(&rho, &ComplexMatrix::identity(2), qubit, p).unwrap();
                let b = depolarize(&rho, p, qubit).unwrap();
                assert!(a.mat().max_abs_diff(b.mat()) < 1e-15);
            }
        }
    }

    #[test]
    fn qubit_channel_roundtrip() {
        let id = QubitChannel::identity();
        let rho = basis_density(2, 1);
        assert_eq!(id.apply(rho.mat()).max_abs_diff(rho.mat()), 0.0);
        assert_eq!(id.trace_preservation_deviation(), 0.0);

        let dep = QubitChannel::completely_depolarizing();
        let out = dep.apply_density(&rho).unwrap();
        assert!(
            out.mat()
                .max_abs_diff(&ComplexMatrix::identity(2).scale_re(0.5))
                < 1e-15
        );
        assert!(min_hermitian_eigenvalue(&dep.choi()) >= -TOL_SPECTRAL);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        // Channels act linearly: E(aρ₁ + (1−a)ρ₂) = aE(ρ₁) + (1−a)E(ρ₂).
        #[test]
        fn channels_are_linear(a in 0.0f64..=1.0, p in 0.0f64..=1.0) {
            let rho1 = basis_density(2, 0);
            let rho2 = PureQubit::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap().density();
            let mixed = DensityMatrix::new(
                rho1.mat().scale_re(a).add(&rho2.mat().scale_re(1.0 - a)),
            ).unwrap();

            let lhs = depolarize(&mixed, p, 0).unwrap();
            let rhs = depolarize(&rho1, p, 0).unwrap().mat().scale_re(a)
                .add(&depolarize(&rho2, p, 0).unwrap().mat().scale_re(1.0 - a));
            prop_assert!(lhs.mat().max_abs_diff(&rhs) < 1e-14);

            let lhs = noisy_1q(&mixed, &pauli_x(), 0, p).unwrap();
            let rhs = noisy_1q(&rho1, &pauli_x(), 0, p).unwrap().mat().scale_re(a)
                .add(&noisy_1q(&rho2, &pauli_x(), 0, p).unwrap().mat().scale_re(1.0 - a));
            prop_assert!(lhs.mat().max_abs_diff(&rhs) < 1e-14);
        }

        #[test]
        fn measurement_probabilities_normalize(eta in 0.0f64..=1.0, theta in 0.0..std::f64::consts::PI, phi in 0.0..std::f64::consts::TAU) {
            let rho = PureQubit::from_bloch_angles(theta, phi).unwrap().density();
            let branches = imperfect_measure(&rho, 0, eta).unwrap();
            let total: f64 = branches.iter().map(|b| b.probability).sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
            for b in &branches {
                prop_assert!(b.probability >= -1e-15);
            }
        }
    }
}
