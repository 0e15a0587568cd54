//! Fidelity of the receiver's output against the message, the closed-form
//! average-fidelity model, exact and sampled Haar averaging, and the
//! model-vs-simulation discrepancy report.
//!
//! Exact Haar averages are taken over the six-state design: the fidelity
//! integrand ⟨ψ|E(|ψ⟩⟨ψ|)|ψ⟩ is quadratic in |ψ⟩⟨ψ|, for which the six
//! Pauli eigenstates average identically to the Haar measure. The Monte
//! Carlo estimator exists to cross-check that machinery, not to replace it.
//!
//! The discrepancy report treats the simulator (itself cross-checked by the
//! independent branch enumeration) as ground truth and the closed-form
//! expression as the model under test: agreement is reproduced where it
//! holds and measured where it does not.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::noise::{NoiseParams, QubitChannel};
use crate::protocol::{closed_form_output_state, effective_channel, ProtocolSchedule};
use crate::states::{haar_random_qubit, six_state_design, PureQubit};
use crate::tensor::DensityMatrix;

/// How a fidelity value was obtained. The serialized labels are part of the
/// CLI output contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FidelityMethod {
    /// The closed-form average-fidelity expression ("eq9" in the CLI).
    ClosedForm,
    /// Exact Haar average of the closed-form output state.
    ModelStateAverage,
    /// Six-state (2-design) average over a simulated channel.
    TwoDesign,
    /// Seeded Monte Carlo Haar average over a simulated channel.
    MonteCarlo,
    /// Branch-enumeration verifier.
    Oracle,
}

impl FidelityMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            FidelityMethod::ClosedForm => "analytic-eq9",
            FidelityMethod::ModelStateAverage => "eq7-average",
            FidelityMethod::TwoDesign => "two-design",
            FidelityMethod::MonteCarlo => "monte-carlo",
            FidelityMethod::Oracle => "oracle",
        }
    }
}

/// A fidelity value with its provenance; `std_error` is zero for exact
/// methods and the standard error of the mean for sampled ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityEstimate {
    pub value: f64,
    pub method: FidelityMethod,
    pub std_error: f64,
    pub n_samples: usize,
}

impl FidelityEstimate {
    fn checked(
        value: f64,
        method: FidelityMethod,
        std_error: f64,
        n_samples: usize,
    ) -> Result<Self> {
        check_fidelity_range(value)?;
        Ok(Self {
            value,
            method,
            std_error,
            n_samples,
        })
    }
}

/// Values are never clamped; anything outside [0, 1] beyond 1e-12 is an
/// internal error worth surfacing, not rounding away.
fn check_fidelity_range(value: f64) -> Result<()> {
    if !value.is_finite() || !(-1e-12..=1.0 + 1e-12).contains(&value) {
        return Err(Error::FidelityOutOfRange(value));
    }
    Ok(())
}

/// |delta| below this is "exact" agreement (artifact convention).
pub const AGREEMENT_EXACT: f64 = 1e-9;
/// |delta| below this (but above exact) is "approximate".
pub const AGREEMENT_APPROXIMATE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgreementClass {
    Exact,
    Approximate,
    Divergent,
}

impl AgreementClass {
    pub fn classify(delta: f64) -> Self {
        let mag = delta.abs();
        if mag < AGREEMENT_EXACT {
            AgreementClass::Exact
        } else if mag < AGREEMENT_APPROXIMATE {
            AgreementClass::Approximate
        } else {
            AgreementClass::Divergent
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            AgreementClass::Exact => "exact",
            AgreementClass::Approximate => "approximate",
            AgreementClass::Divergent => "divergent",
        }
    }
}

/// One row of the model-vs-simulation report; `delta = f_sim − f_model`.
#[derive(Debug, Clone, Copy)]
pub struct DiscrepancyRow {
    pub params: NoiseParams,
    pub f_model: f64,
    pub f_sim: f64,
    pub delta: f64,
    pub agreement: AgreementClass,
}

/// Fidelity ⟨ψ|ρ|ψ⟩ of a single-qubit state against a pure message.
pub fn fidelity_pure(psi: &PureQubit, rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch(rho.dim(), 2));
    }
    let v = psi.statevector();
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            acc += v[i].conj() * rho.mat().get(i, j) * v[j];
        }
    }
    check_fidelity_range(acc.re)?;
    Ok(acc.re)
}

/// The closed-form average teleportation fidelity
/// F' = ½·[1 + p1²p2·((2η²+2η−1)/3)·((4F−1)/3)].
pub fn closed_form_average_fidelity(params: &NoiseParams) -> f64 {
    let (p1, p2, eta, f) = (params.p1(), params.p2(), params.eta(), params.werner_f());
    let gate_weight = p1 * p1 * p2;
    let measurement_factor = (2.0 * eta * eta + 2.0 * eta - 1.0) / 3.0;
    let resource_factor = (4.0 * f - 1.0) / 3.0;
    0.5 * (1.0 + gate_weight * measurement_factor * resource_factor)
}

fn design_average(mut f: impl FnMut(&PureQubit) -> Result<f64>) -> Result<f64> {
    let mut sum = 0.0;
    for psi in &six_state_design() {
        sum += f(psi)?;
    }
    Ok(sum / 6.0)
}

/// Exact Haar-averaged fidelity of a (trace-preserving) single-qubit
/// channel, via the six-state design.
pub fn average_fidelity_exact(channel: &QubitChannel) -> Result<FidelityEstimate> {
    channel.require_trace_preserving()?;
    let value = design_average(|psi| fidelity_pure(psi, &channel.apply_density(&psi.density())?))?;
    FidelityEstimate::checked(value, FidelityMethod::TwoDesign, 0.0, 6)
}

/// Monte Carlo Haar-averaged fidelity over `n` seeded samples; the standard
/// error is the sample standard deviation of the mean. Deterministic per
/// (seed, stream).
pub fn average_fidelity_mc_with_stream(
    channel: &QubitChannel,
    n: usize,
    seed: u64,
    stream: u64,
) -> Result<FidelityEstimate> {
    if n < 100 {
        return Err(Error::TooFewSamples(n));
    }
    channel.require_trace_preserving()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);

    // Welford running mean/variance.
    let mut mean = 0.0f64;
    let mut m2 = 0.0f64;
    for k in 0..n {
        let psi = haar_random_qubit(&mut rng);
        let fid = fidelity_pure(&psi, &channel.apply_density(&psi.density())?)?;
        let delta = fid - mean;
        mean += delta / (k + 1) as f64;
        m2 += delta * (fid - mean);
    }
    let variance = m2 / (n as f64 - 1.0);
    let std_error = (variance.max(0.0) / n as f64).sqrt();
    FidelityEstimate::checked(mean, FidelityMethod::MonteCarlo, std_error, n)
}

pub fn average_fidelity_mc(
    channel: &QubitChannel,
    n: usize,
    seed: u64,
) -> Result<FidelityEstimate> {
    average_fidelity_mc_with_stream(channel, n, seed, 0)
}

/// Exact Haar average of the closed-form output state's fidelity, computed
/// with the six-state design. Algebraically this must coincide with
/// [`closed_form_average_fidelity`]; reproducing that equality numerically
/// is one of the artifact's internal-consistency checks.
pub fn model_state_average_fidelity(params: &NoiseParams) -> Result<f64> {
    design_average(|psi| fidelity_pure(psi, &closed_form_output_state(psi, params)?))
}

/// Compares the closed-form model against the exact simulated average on a
/// parameter grid. Rows come back sorted by |delta| descending (ties keep
/// grid order).
pub fn discrepancy_report(
    grid: &[NoiseParams],
    schedule: &ProtocolSchedule,
) -> Result<Vec<DiscrepancyRow>> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut rows = Vec::with_capacity(grid.len());
    for params in grid {
        let f_model = closed_form_average_fidelity(params);
        let channel = effective_channel(params, schedule)?;
        let f_sim = average_fidelity_exact(&channel)?.value;
        let delta = f_sim - f_model;
        rows.push(DiscrepancyRow {
            params: *params,
            f_model,
            f_sim,
            delta,
            agreement: AgreementClass::classify(delta),
        });
    }
    rows.sort_by(|a, b| {
        b.delta
            .abs()
            .partial_cmp(&a.delta.abs())
            .expect("fidelity deltas are finite")
    });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const PARAM_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

    #[test]
    fn pure_fidelity_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let psi = haar_random_qubit(&mut rng);
        assert!((fidelity_pure(&psi, &psi.density()).unwrap() - 1.0).abs() < 1e-13);

        let mixed = DensityMatrix::maximally_mixed(1);
        assert!((fidelity_pure(&psi, &mixed).unwrap() - 0.5).abs() < 1e-13);

        let zero = PureQubit::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let diag = DensityMatrix::new(
            crate::tensor::ComplexMatrix::from_real(2, &[0.75, 0.0, 0.0, 0.25]).unwrap(),
        )
        .unwrap();
        assert!((fidelity_pure(&zero, &diag).unwrap() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn closed_form_reference_values() {
        assert!((closed_form_average_fidelity(&NoiseParams::ideal()) - 1.0).abs() < 1e-15);

        // p1 = p2 = η = 1 collapses to (2F+1)/3.
        let params = NoiseParams::new(1.0, 1.0, 1.0, 0.85).unwrap();
        assert!((closed_form_average_fidelity(&params) - 0.9).abs() < 1e-12);

        let params = NoiseParams::new(0.99, 0.97, 0.95, 0.9).unwrap();
        assert!((closed_form_average_fidelity(&params) - 0.871458).abs() < 1e-6);
    }

    #[test]
    fn exact_average_of_reference_channels() {
        let id = average_fidelity_exact(&QubitChannel::identity()).unwrap();
        assert!((id.value - 1.0).abs() < 1e-13);
        assert_eq!(id.std_error, 0.0);

        let dep = average_fidelity_exact(&QubitChannel::completely_depolarizing()).unwrap();
        assert!((dep.value - 0.5).abs() < 1e-13);
    }

    #[test]
    fn exact_average_matches_closed_form_at_resource_only_noise() {
        let params = NoiseParams::new(1.0, 1.0, 1.0, 0.7).unwrap();
        let channel = effective_channel(&params, &ProtocolSchedule::default()).unwrap();
        let est = average_fidelity_exact(&channel).unwrap();
        assert!((est.value - 0.8).abs() < 1e-12);
        assert!((est.value - closed_form_average_fidelity(&params)).abs() < 1e-12);
    }

    #[test]
    fn exact_average_rejects_non_trace_preserving_input() {
        let mut bad = QubitChannel::identity();
        // Scale one image so the map leaks trace.
        let images = [
            [
                bad.unit_image(0, 0).scale_re(0.5),
                bad.unit_image(0, 1).clone(),
            ],
            [bad.unit_image(1, 0).clone(), bad.unit_image(1, 1).clone()],
        ];
        bad = QubitChannel::from_unit_images(images).unwrap();
        assert!(matches!(
            average_fidelity_exact(&bad).unwrap_err(),
            Error::NotTracePreserving(_)
        ));
    }

    #[test]
    fn monte_carlo_is_deterministic_and_tight() {
        let id = QubitChannel::identity();
        let a = average_fidelity_mc(&id, 500, 99).unwrap();
        let b = average_fidelity_mc(&id, 500, 99).unwrap();
        assert_eq!(a, b);
        assert!((a.value - 1.0).abs() < 1e-12);
        assert!(a.std_error < 1e-12);

        assert!(matches!(
            average_fidelity_mc(&id, 50, 0).unwrap_err(),
            Error::TooFewSamples(50)
        ));
    }

    #[test]
    fn monte_carlo_agrees_with_design_average() {
        let params = NoiseParams::new(1.0, 1.0, 1.0, 0.7).unwrap();
        let channel = effective_channel(&params, &ProtocolSchedule::default()).unwrap();
        let exact = average_fidelity_exact(&channel).unwrap();
        let mc = average_fidelity_mc(&channel, 200_000, 12345).unwrap();
        // The 1e-12 floor covers constant integrands, where the standard
        // error collapses below cross-path float noise.
        assert!(
            (mc.value - exact.value).abs() <= 4.0 * mc.std_error + 1e-12,
            "mc {} vs exact {} (se {})",
            mc.value,
            exact.value,
            mc.std_error
        );
        assert!((mc.value - 0.8).abs() < 4.0 * mc.std_error + 1e-12);
    }

    #[test]
    fn model_state_average_matches_closed_form_on_grid() {
        for &p1 in &PARAM_GRID {
            for &p2 in &PARAM_GRID {
                for &eta in &PARAM_GRID {
                    for &f in &PARAM_GRID {
                        let params = NoiseParams::new(p1, p2, eta, f).unwrap();
                        let via_state = model_state_average_fidelity(&params).unwrap();
                        let direct = closed_form_average_fidelity(&params);
                        assert!(
                            (via_state - direct).abs() < 1e-12,
                            "mismatch at ({p1},{p2},{eta},{f}): {via_state} vs {direct}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_is_monotone_where_expected() {
        // Nondecreasing in p1, p2 and F whenever both correlation factors
        // are nonnegative: F ≥ 1/4 and (2η²+2η−1) ≥ 0.
        let grid = [0.25, 0.5, 0.75, 1.0];
        let etas = [0.4, 0.7, 1.0]; // all satisfy 2η²+2η−1 ≥ 0
        for &eta in &etas {
            for &f in &grid {
                for &other in &grid {
                    let mut prev = -1.0;
                    for &p1 in &grid {
                        let params = NoiseParams::new(p1, other, eta, f).unwrap();
                        let value = closed_form_average_fidelity(&params);
                        assert!(value >= prev - 1e-15);
                        prev = value;
                    }
                    let mut prev = -1.0;
                    for &fval in &grid {
                        let params = NoiseParams::new(other, other, eta, fval).unwrap();
                        let value = closed_form_average_fidelity(&params);
                        assert!(value >= prev - 1e-15);
                        prev = value;
                    }
                }
            }
        }
    }

    #[test]
    fn uncorrelated_resource_pins_simulated_fidelity() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..5 {
            use rand::Rng as _;
            let params = NoiseParams::new(
                rng.gen_range(0.0..=1.0),
                rng.gen_range(0.0..=1.0),
                rng.gen_range(0.0..=1.0),
                0.25,
            )
            .unwrap();
            let channel = effective_channel(&params, &ProtocolSchedule::default()).unwrap();
            let est = average_fidelity_exact(&channel).unwrap();
            assert!((est.value - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn report_classifies_anchor_lines() {
        let schedule = ProtocolSchedule::default();
        let mut grid = Vec::new();
        for &f in &PARAM_GRID {
            grid.push(NoiseParams::new(1.0, 1.0, 1.0, f).unwrap());
        }
        for &p2 in &PARAM_GRID {
            grid.push(NoiseParams::new(1.0, p2, 1.0, 1.0).unwrap());
        }
        grid.push(NoiseParams::new(1.0, 1.0, 0.8, 1.0).unwrap());

        let rows = discrepancy_report(&grid, &schedule).unwrap();
        assert_eq!(rows.len(), grid.len());

        // Sorted by |delta| descending.
        for pair in rows.windows(2) {
            assert!(pair[0].delta.abs() >= pair[1].delta.abs() - 1e-18);
        }

        for row in &rows {
            let p = row.params;
            if (p.eta() - 0.8).abs() < 1e-12 {
                assert_eq!(row.agreement, AgreementClass::Divergent);
                assert!((row.f_model - 0.813333333333).abs() < 1e-9);
                assert!((row.f_sim - 0.76).abs() < 1e-9);
            } else {
                assert_eq!(
                    row.agreement,
                    AgreementClass::Exact,
                    "expected exact at ({},{},{},{})",
                    p.p1(),
                    p.p2(),
                    p.eta(),
                    p.werner_f()
                );
            }
        }
    }

    #[test]
    fn agreement_classification_thresholds() {
        assert_eq!(AgreementClass::classify(0.0), AgreementClass::Exact);
        assert_eq!(AgreementClass::classify(5e-10), AgreementClass::Exact);
        assert_eq!(AgreementClass::classify(-5e-10), AgreementClass::Exact);
        assert_eq!(AgreementClass::classify(1e-6), AgreementClass::Approximate);
        assert_eq!(AgreementClass::classify(-0.05), AgreementClass::Divergent);
    }
}
