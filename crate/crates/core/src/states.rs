//! Constructors for message states, the Bell basis, Werner resources,
//! Haar-random qubits and the six-state average used for exact integration.
//!
//! The Werner family used here is F·Φ⁺ + (1−F)/3·(Φ⁻ + Ψ⁺ + Ψ⁻); it has
//! unit trace for every F in [0, 1] and F is exactly the singlet fraction,
//! the overlap tr(Φ⁺ρ). Throughout the crate `F` always means this resource
//! parameter, never a teleportation fidelity.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::tensor::{tensor, ComplexMatrix, DensityMatrix};

/// Normalized single-qubit pure state α|0⟩ + β|1⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubit {
    alpha: Complex64,
    beta: Complex64,
}

impl PureQubit {
    /// Builds a normalized state from raw amplitudes. Inputs are expected to
    /// be normalized to within 1e-9 already; whatever residue remains is
    /// divided out. A (near-)zero vector is rejected.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
        if !norm_sq.is_finite() {
            return Err(Error::NonFinite);
        }
        if norm_sq < 1e-24 {
            return Err(Error::ZeroNorm);
        }
        let norm = norm_sq.sqrt();
        Ok(Self {
            alpha: alpha / norm,
            beta: beta / norm,
        })
    }

    /// cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩ with θ ∈ [0, π], φ ∈ [0, 2π).
    pub fn from_bloch_angles(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::AngleOutOfRange {
                name: "theta",
                value: theta,
            });
        }
        if !(0.0..std::f64::consts::TAU).contains(&phi) {
            return Err(Error::AngleOutOfRange {
                name: "phi",
                value: phi,
            });
        }
        let alpha = Complex64::new((theta / 2.0).cos(), 0.0);
        let beta = Complex64::from_polar((theta / 2.0).sin(), phi);
        Self::new(alpha, beta)
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn statevector(&self) -> [Complex64; 2] {
        [self.alpha, self.beta]
    }

    /// Bloch vector (2Re ᾱβ, 2Im ᾱβ, |α|² − |β|²).
    pub fn bloch_vector(&self) -> [f64; 3] {
        let cross = self.alpha.conj() * self.beta;
        [
            2.0 * cross.re,
            2.0 * cross.im,
            self.alpha.norm_sqr() - self.beta.norm_sqr(),
        ]
    }

    /// The projector |ψ⟩⟨ψ| as a density matrix.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_statevector(&self.statevector())
            .expect("normalized pure state is physical")
    }
}

/// The four Bell projectors in the order Φ⁺, Φ⁻, Ψ⁺, Ψ⁻. They are pairwise
/// orthogonal and sum to the two-qubit identity *exactly*: the entries are
/// the dyadic values ±1/2, so no square roots enter the construction.
pub fn bell_states() -> [DensityMatrix; 4] {
    let proj = |a: usize, b: usize, sign: f64| {
        let mut m = ComplexMatrix::zeros(4);
        let half = Complex64::new(0.5, 0.0);
        m.set(a, a, half);
        m.set(b, b, half);
        m.set(a, b, half * sign);
        m.set(b, a, half * sign);
        DensityMatrix::new(m).expect("Bell projector is physical")
    };
    [
        proj(0, 3, 1.0),  // Φ⁺
        proj(0, 3, -1.0), // Φ⁻
        proj(1, 2, 1.0),  // Ψ⁺
        proj(1, 2, -1.0), // Ψ⁻
    ]
}

/// Validated Werner-state parameter (singlet fraction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerParams {
    f: f64,
}

impl WernerParams {
    pub fn new(f: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::ParameterOutOfRange {
                name: "F",
                value: f,
            });
        }
        Ok(Self { f })
    }

    pub fn singlet_fraction(&self) -> f64 {
        self.f
    }
}

/// Werner state F·Φ⁺ + (1−F)/3·(Φ⁻ + Ψ⁺ + Ψ⁻).
pub fn werner(f: f64) -> Result<DensityMatrix> {
    let params = WernerParams::new(f)?;
    let f = params.singlet_fraction();
    let bell = bell_states();
    let rest = (1.0 - f) / 3.0;
    let mut acc = bell[0].mat().scale_re(f);
    for b in &bell[1..] {
        acc = acc.add(&b.mat().scale_re(rest));
    }
    DensityMatrix::new(acc)
}

/// Which halves of the shared pair pass through the depolarizing channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepolarizingSides {
    One,
    Both,
}

/// Sends Φ⁺ through the single-qubit depolarizing channel (reliability `p`)
/// on one or both halves. The result is a Werner state with singlet fraction
/// (3p+1)/4 for one side and (3p²+1)/4 for both.
pub fn werner_from_depolarizing(p: f64, sides: DepolarizingSides) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange {
            name: "p",
            value: p,
        });
    }
    let phi_plus = bell_states()[0].mat().clone();
    let depolarize_half = |m: &ComplexMatrix, qubit: usize| -> Result<ComplexMatrix> {
        let replaced = crate::tensor::replace_with_mixed(m, &[qubit])?;
        Ok(m.scale_re(p).add(&replaced.scale_re(1.0 - p)))
    };
    let mut out = depolarize_half(&phi_plus, 0)?;
    if sides == DepolarizingSides::Both {
        out = depolarize_half(&out, 1)?;
    }
    DensityMatrix::new(out)
}

/// Singlet fraction tr(Φ⁺ρ) of a two-qubit state.
pub fn singlet_fraction(rho: &DensityMatrix) -> f64 {
    let bell = bell_states();
    bell[0].mat().matmul(rho.mat()).trace().re
}

/// Haar-distributed pure qubit: two independent standard complex Gaussians,
/// normalized. The caller owns and advances the random stream.
pub fn haar_random_qubit<R: Rng + ?Sized>(rng: &mut R) -> PureQubit {
    loop {
        let g: [f64; 4] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let alpha = Complex64::new(g[0], g[1]);
        let beta = Complex64::new(g[2], g[3]);
        if let Ok(q) = PureQubit::new(alpha, beta) {
            return q;
        }
        // Astronomically unlikely zero draw; resample.
    }
}

/// The six Pauli eigenstates ±X, ±Y, ±Z. Averaging any function quadratic in
/// |ψ⟩⟨ψ| over these six states reproduces the Haar average exactly, which is
/// what makes them the exact integrator behind `average_fidelity_exact`.
pub fn six_state_design() -> [PureQubit; 6] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let c = Complex64::new;
    [
        PureQubit::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap(), // +Z
        PureQubit::new(c(0.0, 0.0), c(1.0, 0.0)).unwrap(), // −Z
        PureQubit::new(c(s, 0.0), c(s, 0.0)).unwrap(),     // +X
        PureQubit::new(c(s, 0.0), c(-s, 0.0)).unwrap(),    // −X
        PureQubit::new(c(s, 0.0), c(0.0, s)).unwrap(),     // +Y
        PureQubit::new(c(s, 0.0), c(0.0, -s)).unwrap(),    // −Y
    ]
}

/// Product of a message state with a fresh Werner resource: the three-qubit
/// initial register [message, sender half, receiver half].
pub fn message_with_resource(psi: &PureQubit, f: f64) -> Result<DensityMatrix> {
    let resource = werner(f)?;
    DensityMatrix::new(tensor(psi.density().mat(), resource.mat())?)
}
