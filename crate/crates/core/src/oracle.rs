//! Independent brute-force verifier: expands the entire noisy protocol into
//! a finite mixture of error trajectories on the delivered state and builds
//! the receiver's averaged map with no shared channel code; only the raw
//! matrix type is common with the simulator.
//!
//! The enumeration rests on four exact facts about the schedule:
//!
//! 1. Each Bell component of the resource acts as a fixed receiver-side
//!    Pauli: I, Z, X, ZX (mod phase) for Φ⁺, Φ⁻, Ψ⁺, Ψ⁻ respectively, and
//!    that Pauli commutes (mod phase) past everything the sender does.
//! 2. A failed CNOT leaves the sender's pair maximally mixed, so reported
//!    outcomes are uniform and the receiver's marginal is I/2 outright.
//! 3. A failed Hadamard leaves the message qubit maximally mixed; expanding
//!    the post-CNOT pure-state structure shows the receiver is left with the
//!    message *dephased in the computational basis*, conjugated by the Bell
//!    Pauli, with an extra X exactly when the pair-measurement record flips.
//!    This branch is not a single Pauli on the receiver, so it is derived in
//!    closed form rather than approximated.
//! 4. In a clean trajectory the reported bits equal the true bits up to
//!    independent flips of probability 1−η, and a flip pattern (f1, f2)
//!    composes an extra Z^f1·X^f2 with the Bell Pauli (mod phase).
//!
//! Pauli phases are dropped throughout: every use is a conjugation of a
//! density matrix, which is phase-blind.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::noise::NoiseParams;
use crate::protocol::{effective_channel, ProtocolSchedule};
use crate::tensor::ComplexMatrix;

/// Single-qubit Pauli label with multiplication mod phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Product mod phase: two distinct non-identity Paulis give the third.
    fn compose(self, other: Pauli) -> Pauli {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => p,
            (a, b) if a == b => I,
            (X, Y) | (Y, X) => Z,
            (X, Z) | (Z, X) => Y,
            _ => X, // remaining cases are {Y,Z} in either order
        }
    }

    fn matrix(self) -> ComplexMatrix {
        let c = Complex64::new;
        let entries = match self {
            Pauli::I => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            Pauli::X => [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            Pauli::Y => [c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
            Pauli::Z => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
        };
        ComplexMatrix::from_entries(2, entries.to_vec()).expect("2x2 pauli")
    }
}

/// What a trajectory does to the delivered state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchAction {
    /// Conjugation by a Pauli (identity included).
    Pauli(Pauli),
    /// Receiver reset to the maximally mixed state.
    Reset,
    /// Dephase in the computational basis, then conjugate by a Pauli.
    DephasedPauli(Pauli),
}

impl BranchAction {
    /// Linear action on an arbitrary 2×2 matrix.
    fn apply(&self, m: &ComplexMatrix) -> ComplexMatrix {
        match self {
            BranchAction::Pauli(p) => {
                let pm = p.matrix();
                pm.matmul(m).matmul(&pm)
            }
            BranchAction::Reset => ComplexMatrix::identity(2).scale(m.trace() * 0.5),
            BranchAction::DephasedPauli(p) => {
                let mut diag = ComplexMatrix::zeros(2);
                diag.set(0, 0, m.get(0, 0));
                diag.set(1, 1, m.get(1, 1));
                let pm = p.matrix();
                pm.matmul(&diag).matmul(&pm)
            }
        }
    }
}

/// The resource's Bell component, in the weight order (F, r, r, r).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellComponent {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellComponent {
    fn receiver_pauli(self) -> Pauli {
        match self {
            BellComponent::PhiPlus => Pauli::I,
            BellComponent::PhiMinus => Pauli::Z,
            BellComponent::PsiPlus => Pauli::X,
            BellComponent::PsiMinus => Pauli::Y, // ZX mod phase
        }
    }
}

/// Where a branch came from, for inspection and debugging.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Provenance {
    pub bell: Option<BellComponent>,
    pub cnot_failed: bool,
    pub hadamard_failed: bool,
    /// Record flips (message bit, pair bit); the message flip is marginalized
    /// away in Hadamard-failure branches, where only the pair flip matters.
    pub flips: (Option<bool>, Option<bool>),
    pub correction_failed: bool,
}

/// One enumerated trajectory: probability, action on the delivered state,
/// and how it arose.
#[derive(Debug, Clone)]
pub struct Branch {
    pub probability: f64,
    pub action: BranchAction,
    pub provenance: Provenance,
}

/// The averaged receiver map as the oracle represents it: branch list plus
/// its linear action on arbitrary 2×2 inputs.
#[derive(Debug, Clone)]
pub struct OracleMap {
    branches: Vec<Branch>,
}

impl OracleMap {
    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn total_probability(&self) -> f64 {
        self.branches.iter().map(|b| b.probability).sum()
    }

    /// Probability-weighted action on an arbitrary 2×2 matrix.
    pub fn apply(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(2);
        for b in &self.branches {
            out = out.add(&b.action.apply(m).scale_re(b.probability));
        }
        out
    }

    /// Images of the four matrix units, the representation compared against
    /// the simulator's effective channel.
    pub fn unit_images(&self) -> [[ComplexMatrix; 2]; 2] {
        let unit = |i: usize, j: usize| {
            let mut m = ComplexMatrix::zeros(2);
            m.set(i, j, Complex64::new(1.0, 0.0));
            self.apply(&m)
        };
        [[unit(0, 0), unit(0, 1)], [unit(1, 0), unit(1, 1)]]
    }
}

/// Enumerates every trajectory of the schedule at the given parameters.
/// Branch probabilities form a distribution by construction.
pub fn enumerate(params: &NoiseParams, schedule: &ProtocolSchedule) -> OracleMap {
    let p2 = if schedule.cnot_noisy {
        params.p2()
    } else {
        1.0
    };
    let p1_had = if schedule.hadamard_noisy {
        params.p1()
    } else {
        1.0
    };
    let eta = if schedule.measurement_noisy {
        params.eta()
    } else {
        1.0
    };
    let p1_corr = if schedule.correction_noisy {
        params.p1()
    } else {
        1.0
    };

    // Reported outcomes are uniform in every trajectory, so with the ideal
    // do-nothing branch exempted only 3/4 of the mass pays the correction
    // noise.
    let correction_fail = if schedule.apply_noisy_identity_correction {
        1.0 - p1_corr
    } else {
        0.75 * (1.0 - p1_corr)
    };

    let f = params.werner_f();
    let rest_weight = (1.0 - f) / 3.0;
    let bell_components = [
        (BellComponent::PhiPlus, f),
        (BellComponent::PhiMinus, rest_weight),
        (BellComponent::PsiPlus, rest_weight),
        (BellComponent::PsiMinus, rest_weight),
    ];

    let mut branches = Vec::with_capacity(45);

    // CNOT failure: sender pair fully mixed, receiver marginal I/2; the
    // correction (noisy or not) cannot change it.
    branches.push(Branch {
        probability: 1.0 - p2,
        action: BranchAction::Reset,
        provenance: Provenance {
            bell: None,
            cnot_failed: true,
            hadamard_failed: false,
            flips: (None, None),
            correction_failed: false,
        },
    });

    for (bell, bell_weight) in bell_components {
        let e_bell = bell.receiver_pauli();

        // Hadamard failure: message qubit mixed; receiver keeps the dephased
        // message conjugated by the Bell Pauli, with an extra X exactly when
        // the pair record flipped.
        let hadamard_base = p2 * (1.0 - p1_had) * bell_weight;
        branches.push(Branch {
            probability: hadamard_base * correction_fail,
            action: BranchAction::Reset,
            provenance: Provenance {
                bell: Some(bell),
                cnot_failed: false,
                hadamard_failed: true,
                flips: (None, None),
                correction_failed: true,
            },
        });
        for (pair_flip, flip_weight) in [(false, eta), (true, 1.0 - eta)] {
            let extra = if pair_flip { Pauli::X } else { Pauli::I };
            branches.push(Branch {
                probability: hadamard_base * (1.0 - correction_fail) * flip_weight,
                action: BranchAction::DephasedPauli(e_bell.compose(extra)),
                provenance: Provenance {
                    bell: Some(bell),
                    cnot_failed: false,
                    hadamard_failed: true,
                    flips: (None, Some(pair_flip)),
                    correction_failed: false,
                },
            });
        }

        // Clean trajectory: flip pattern (f1, f2) composes Z^f1·X^f2 with
        // the Bell Pauli.
        let clean_base = p2 * p1_had * bell_weight;
        for (message_flip, w1) in [(false, eta), (true, 1.0 - eta)] {
            for (pair_flip, w2) in [(false, eta), (true, 1.0 - eta)] {
                let flip_pauli = match (message_flip, pair_flip) {
                    (false, false) => Pauli::I,
                    (true, false) => Pauli::Z,
                    (false, true) => Pauli::X,
                    (true, true) => Pauli::Y, // ZX mod phase
                };
                let weight = clean_base * w1 * w2;
                let provenance = Provenance {
                    bell: Some(bell),
                    cnot_failed: false,
                    hadamard_failed: false,
                    flips: (Some(message_flip), Some(pair_flip)),
                    correction_failed: false,
                };
                branches.push(Branch {
                    probability: weight * correction_fail,
                    action: BranchAction::Reset,
                    provenance: Provenance {
                        correction_failed: true,
                        ..provenance
                    },
                });
                branches.push(Branch {
                    probability: weight * (1.0 - correction_fail),
                    action: BranchAction::Pauli(e_bell.compose(flip_pauli)),
                    provenance,
                });
            }
        }
    }

    OracleMap { branches }
}

/// Maximum entrywise deviation between the oracle map and the simulator's
/// effective channel across a parameter grid. This is the artifact's
/// two-path correctness check.
pub fn cross_check(grid: &[NoiseParams], schedule: &ProtocolSchedule) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut worst: f64 = 0.0;
    for params in grid {
        let oracle_images = enumerate(params, schedule).unit_images();
        let channel = effective_channel(params, schedule)?;
        for (i, row) in oracle_images.iter().enumerate() {
            for (j, image) in row.iter().enumerate() {
                worst = worst.max(image.max_abs_diff(channel.unit_image(i, j)));
            }
        }
    }
    Ok(worst)
}
