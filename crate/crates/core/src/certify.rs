//! Sharpness certification from observed success probabilities.
//!
//! From an observed pair `(p_ab, p_ac)` the instrument sharpness is
//! bracketed by `η_lower = √2(2·p_ab − 1)` and
//! `η_upper = √(8·p_ac − 8·p_ac² − 1)`; the gap `δ = η_upper − η_lower`
//! is the certification error band.  A depolarizing visibility model
//! (`p₁` on preparations, `p₂` on the first receiver's effects, `p₃` on
//! the second receiver's effects) produces the noisy observations, both
//! by explicit simulation through the game functionals and by closed
//! form; the two routes must agree to `1e-10`.

use crate::qmath::{psd_sqrt_named, ComplexMatrix};
use crate::qubit::unsharp_strategy;
use crate::tolerances;
use crate::{
    p_ab, p_ac, DensityMatrix, Error, GameDimension, KrausInstrument, Povm, Preparation, Result,
    StrategyBundle,
};

/// Depolarizing visibilities of the three devices, each in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    p1: f64,
    p2: f64,
    p3: f64,
}

impl NoiseParams {
    /// Validates each visibility into `(0, 1]`.
    pub fn new(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        for (which, v) in [("p1", p1), ("p2", p2), ("p3", p3)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::BadVisibility { which, value: v });
            }
        }
        Ok(Self { p1, p2, p3 })
    }

    /// Preparation visibility.
    pub fn p1(&self) -> f64 {
        self.p1
    }

    /// First receiver's effect visibility.
    pub fn p2(&self) -> f64 {
        self.p2
    }

    /// Second receiver's effect visibility.
    pub fn p3(&self) -> f64 {
        self.p3
    }
}

/// One observed probability pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservedPair {
    /// Observed first-receiver success.
    pub p_ab_obs: f64,
    /// Observed second-receiver success.
    pub p_ac_obs: f64,
}

/// Certified sharpness interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpnessBounds {
    /// Lower bound `√2(2·p_ab − 1)`; values ≤ 0 mean the trivial bound.
    pub eta_lower: f64,
    /// Upper bound `√(8·p_ac − 8·p_ac² − 1)`.
    pub eta_upper: f64,
    /// `eta_upper − eta_lower`.  May be negative for inconsistent
    /// observations; negative gaps are reported, never clamped.
    pub delta: f64,
}

/// Sharpness lower bound `√2(2·p_ab_obs − 1)` from the first receiver's
/// observed success (precondition `p_ab_obs ∈ [0, 1]`).
///
/// Values at or below zero are the trivial bound: the observation
/// certifies nothing.  They are returned as-is so callers can flag them.
pub fn eta_lower(p_ab_obs: f64) -> f64 {
    2f64.sqrt() * (2.0 * p_ab_obs - 1.0)
}

/// Sharpness upper bound `√(8p − 8p² − 1)` from the second receiver's
/// observed success.
///
/// # Errors
///
/// [`Error::OutOfRange`] if the radicand is negative, i.e.
/// `p_ac_obs ∉ [(2−√2)/4, (2+√2)/4]`: such an observation is
/// inconsistent with every sharpness value.
pub fn eta_upper(p_ac_obs: f64) -> Result<f64> {
    let radicand = 8.0 * p_ac_obs - 8.0 * p_ac_obs * p_ac_obs - 1.0;
    if radicand < -tolerances::DOMAIN_SLACK {
        return Err(Error::OutOfRange {
            what: "eta_upper radicand",
            value: radicand,
            domain: "p_ac_obs ∈ [(2−√2)/4, (2+√2)/4]",
        });
    }
    Ok(radicand.max(0.0).sqrt())
}

/// Combines both bounds into a [`SharpnessBounds`] interval.
///
/// # Errors
///
/// Propagates [`eta_upper`]'s domain error.
pub fn bounds(obs: &ObservedPair) -> Result<SharpnessBounds> {
    let lo = eta_lower(obs.p_ab_obs);
    let hi = eta_upper(obs.p_ac_obs)?;
    Ok(SharpnessBounds { eta_lower: lo, eta_upper: hi, delta: hi - lo })
}

/// Mixes each operator toward `w·identity`: `p·M + (1−p)·w·I`.
fn depolarize(m: &ComplexMatrix, p: f64, w: f64) -> ComplexMatrix {
    let mut out = m * p;
    out.add_scaled(&ComplexMatrix::identity(m.dim()), (1.0 - p) * w);
    out
}

/// Closed-form noisy observations:
/// `p_ab = ½(1 + p₁p₂η/√2)`, `p_ac = ½ + p₁p₃√(1 − (p₂η)²)·√2/4`.
///
/// # Errors
///
/// [`Error::BadSharpness`] if `η_target ∉ [0, 1]`.
pub fn noisy_closed_form(noise: &NoiseParams, eta_target: f64) -> Result<ObservedPair> {
    if !(0.0..=1.0).contains(&eta_target) {
        return Err(Error::BadSharpness { eta: eta_target });
    }
    let root2 = 2f64.sqrt();
    let ab = 0.5 * (1.0 + noise.p1 * noise.p2 * eta_target / root2);
    let eff = noise.p2 * eta_target;
    let ac = 0.5 + noise.p1 * noise.p3 * (1.0 - eff * eff).max(0.0).sqrt() * root2 / 4.0;
    Ok(ObservedPair { p_ab_obs: ab, p_ac_obs: ac })
}

/// Simulates the visibility pipeline: canonical strategy at `η_target`,
/// preparations mixed with visibility `p₁`, first receiver's effects with
/// `p₂` (instrument rebuilt as the PSD square root of the noisy
/// effects), second receiver's effects with `p₃`; observations evaluated
/// through the game functionals and cross-checked against
/// [`noisy_closed_form`] to `1e-10`.
///
/// # Errors
///
/// [`Error::BadVisibility`] / [`Error::BadSharpness`] for bad inputs;
/// [`Error::RegressionMismatch`] if the two routes disagree (a defect).
pub fn noisy_pipeline(noise: &NoiseParams, eta_target: f64) -> Result<ObservedPair> {
    let ideal = unsharp_strategy(eta_target)?;
    let d = ideal.dim().get();
    let mixed_weight = 1.0 / d as f64;

    let states: Result<Vec<DensityMatrix>> = ideal
        .preparation()
        .states()
        .iter()
        .map(|s| DensityMatrix::new(depolarize(s.matrix(), noise.p1, mixed_weight)))
        .collect();
    let preparation = Preparation::new(GameDimension::new(d)?, states?)?;

    // Effects mix toward I/2 (each ideal binary effect has trace d/2 = 1,
    // and the pair must keep summing to the identity).
    let kraus: Result<Vec<Vec<ComplexMatrix>>> = (0..2)
        .map(|y| {
            (0..d)
                .map(|b| {
                    let noisy = depolarize(&ideal.instrument().effect(y, b), noise.p2, 0.5);
                    psd_sqrt_named(&noisy, "noisy first-receiver effect")
                })
                .collect()
        })
        .collect();
    let instrument = KrausInstrument::new(kraus?)?;

    let relay = |z: usize| -> Result<Povm> {
        let effects = ideal
            .chhanda(z)
            .effects()
            .iter()
            .map(|e| depolarize(e, noise.p3, 0.5))
            .collect();
        Povm::new(format!("noisy relay {z}"), effects)
    };
    let bundle = StrategyBundle::new(preparation, instrument, [relay(0)?, relay(1)?])?;

    let simulated = ObservedPair { p_ab_obs: p_ab(&bundle), p_ac_obs: p_ac(&bundle) };
    let reference = noisy_closed_form(noise, eta_target)?;
    for (got, expected, which) in [
        (simulated.p_ab_obs, reference.p_ab_obs, "p_ab"),
        (simulated.p_ac_obs, reference.p_ac_obs, "p_ac"),
    ] {
        if (got - expected).abs() > 1e-10 {
            return Err(Error::RegressionMismatch {
                context: format!("noisy_pipeline {which} at eta_target={eta_target}"),
                got,
                expected,
                tolerance: 1e-10,
            });
        }
    }
    Ok(simulated)
}

/// One certification report row (the serialized form is the pinned
/// ten-column layout; see [`CertifyRow::CSV_HEADER`]).
#[derive(Debug, Clone, PartialEq)]
pub struct CertifyRow {
    /// Preparation visibility.
    pub p1: f64,
    /// First receiver's effect visibility.
    pub p2: f64,
    /// Second receiver's effect visibility.
    pub p3: f64,
    /// Sharpness the devices aim for.
    pub eta_target: f64,
    /// Noisy first-receiver success.
    pub p_ab: f64,
    /// Noisy second-receiver success.
    pub p_ac: f64,
    /// Certified lower bound.
    pub eta_lower: f64,
    /// Certified upper bound; `None` when the radicand is negative
    /// (observation inconsistent with any sharpness).
    pub eta_upper: Option<f64>,
    /// Error band `eta_upper − eta_lower`; `None` when undefined.
    pub delta: Option<f64>,
    /// Frozen error band of the comparison protocol; fixture rows
    /// only, never recomputed.
    pub delta_star_fixture: Option<f64>,
    /// Frozen second-receiver success of the comparison protocol;
    /// fixture rows only.  Carried on the struct for validation and
    /// display; not part of the pinned serialized row.
    pub pac_star_fixture: Option<f64>,
}

impl CertifyRow {
    /// Pinned CSV column layout for certification reports.
    pub const CSV_HEADER: &'static str =
        "p1,p2,p3,eta_target,p_ab,p_ac,eta_lower,eta_upper,delta,delta_star_fixture";

    /// Builds a row by running the noisy pipeline and both bounds.
    pub fn compute(noise: &NoiseParams, eta_target: f64) -> Result<Self> {
        let obs = noisy_pipeline(noise, eta_target)?;
        let lo = eta_lower(obs.p_ab_obs);
        let hi = eta_upper(obs.p_ac_obs).ok();
        Ok(Self {
            p1: noise.p1(),
            p2: noise.p2(),
            p3: noise.p3(),
            eta_target,
            p_ab: obs.p_ab_obs,
            p_ac: obs.p_ac_obs,
            eta_lower: lo,
            eta_upper: hi,
            delta: hi.map(|h| h - lo),
            delta_star_fixture: None,
            pac_star_fixture: None,
        })
    }
}

/// Frozen benchmark rows: visibilities, four-decimal probabilities and
/// error band, and the comparison protocol's values.  The benchmark's
/// sharpness target is `1/√2` (reconstruction: that target reproduces
/// all six frozen probabilities to their four decimals).
struct FixtureRow {
    visibilities: (f64, f64, f64),
    p_ab: f64,
    p_ac: f64,
    delta: f64,
    pac_star: f64,
    delta_star: f64,
}

const TABLE1_FIXTURES: [FixtureRow; 3] = [
    FixtureRow { visibilities: (0.95, 0.90, 0.95), p_ab: 0.7138, p_ac: 0.7461, delta: 0.1133, pac_star: 0.7826, delta_star: 0.1964 },
    FixtureRow { visibilities: (0.98, 0.95, 0.98), p_ab: 0.7328, p_ac: 0.7515, delta: 0.0444, pac_star: 0.7955, delta_star: 0.0824 },
    FixtureRow { visibilities: (0.93, 0.88, 0.93), p_ab: 0.7046, p_ac: 0.7394, delta: 0.1572, pac_star: 0.7726, delta_star: 0.2617 },
];

/// Recomputes the three benchmark rows and checks the computed
/// probabilities and error band of each against their frozen values
/// within [`tolerances::FIXTURE_ABS`] (the fixtures' four-decimal
/// precision).
///
/// # Errors
///
/// [`Error::RegressionMismatch`] naming the first deviating value.
pub fn table1_report() -> Result<Vec<CertifyRow>> {
    let eta_target = 1.0 / 2f64.sqrt();
    let mut rows = Vec::with_capacity(TABLE1_FIXTURES.len());
    for fixture in &TABLE1_FIXTURES {
        let (p1, p2, p3) = fixture.visibilities;
        let noise = NoiseParams::new(p1, p2, p3)?;
        let mut row = CertifyRow::compute(&noise, eta_target)?;
        row.delta_star_fixture = Some(fixture.delta_star);
        row.pac_star_fixture = Some(fixture.pac_star);
        let delta = row.delta.ok_or(Error::OutOfRange {
            what: "benchmark delta",
            value: f64::NAN,
            domain: "defined",
        })?;
        let checks = [
            ("p_ab", row.p_ab, fixture.p_ab),
            ("p_ac", row.p_ac, fixture.p_ac),
            ("delta", delta, fixture.delta),
        ];
        for (what, got, expected) in checks {
            if (got - expected).abs() > tolerances::FIXTURE_ABS {
                return Err(Error::RegressionMismatch {
                    context: format!("benchmark row ({p1}, {p2}, {p3}) {what}"),
                    got,
                    expected,
                    tolerance: tolerances::FIXTURE_ABS,
                });
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// δ as a function of the sharpness target at fixed visibilities: one
/// [`CertifyRow`] per grid point, with undefined upper bounds flagged
/// (`eta_upper = None`) rather than extrapolated.
///
/// # Errors
///
/// [`Error::BadSharpness`] if a grid value leaves `[0, 1]`.
pub fn target_sweep(noise: &NoiseParams, eta_grid: &[f64]) -> Result<Vec<CertifyRow>> {
    eta_grid.iter().map(|&eta| CertifyRow::compute(noise, eta)).collect()
}
