//! Generalized quantum scissors: teleportation of `A₀|0⟩ + A₁|1⟩ + A₂|2⟩`
//! from mode 1 to mode 3 through a shared two-photon entangled resource on
//! modes 2–3, a beam splitter on modes 1–2 and coincidence detection.
//!
//! Photon-counting detectors sit on the two beam-splitter outputs. The run
//! succeeds when each detector sees exactly one photon; the mode-3 state is
//! then a copy of the input exactly when the three coefficients `²𝒜₀`, `²ℰ₀`,
//! `²ℐ₀` coincide, and for the common value `1/3` success happens with
//! probability `1/9` regardless of the input.

use std::collections::BTreeMap;

use argmin::core::{CostFunction, Executor};
use argmin::solver::neldermead::NelderMead;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{Occupation, PureState};
use crate::half::HalfInt;
use crate::lift::apply_mode_unitary;
use crate::su2::MultipletLabel2;
use crate::unitary::ModeUnitary;
use crate::PRUNE_THRESHOLD;

/// Largest photon number that can reach the beam splitter.
pub const MAX_DETECTED: u32 = 4;

/// Residual the balanced-configuration solver must reach.
pub const SOLVER_TOLERANCE: f64 = 1e-8;

fn normalize3(v: [Complex64; 3]) -> Result<([Complex64; 3], bool)> {
    let norm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if norm_sqr.sqrt() <= PRUNE_THRESHOLD {
        return Err(Error::ZeroAmplitudes);
    }
    if (norm_sqr - 1.0).abs() <= crate::NORM_TOLERANCE {
        return Ok((v, false));
    }
    let scale = 1.0 / norm_sqr.sqrt();
    Ok((v.map(|z| z * scale), true))
}

/// The teleported state `A₀|0⟩ + A₁|1⟩ + A₂|2⟩`, normalized on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScissorsInput {
    amplitudes: [Complex64; 3],
    renormalized: bool,
}

impl ScissorsInput {
    pub fn new(a0: Complex64, a1: Complex64, a2: Complex64) -> Result<Self> {
        let (amplitudes, renormalized) = normalize3([a0, a1, a2])?;
        Ok(ScissorsInput { amplitudes, renormalized })
    }

    pub fn amplitudes(&self) -> [Complex64; 3] {
        self.amplitudes
    }

    /// Whether the amplitudes given to [`ScissorsInput::new`] had to be rescaled.
    pub fn renormalized(&self) -> bool {
        self.renormalized
    }

    pub fn state(&self) -> PureState {
        PureState::from_terms(1, (0..3u32).map(|n| (vec![n], self.amplitudes[n as usize])))
            .expect("single mode")
    }
}

/// The shared resource `C₋₁|2,0⟩ + C₀|1,1⟩ + C₁|0,2⟩` on modes 2 and 3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EprResource {
    coefficients: [Complex64; 3],
    renormalized: bool,
}

impl EprResource {
    pub fn new(c_minus1: Complex64, c_0: Complex64, c_1: Complex64) -> Result<Self> {
        let (coefficients, renormalized) = normalize3([c_minus1, c_0, c_1])?;
        Ok(EprResource { coefficients, renormalized })
    }

    /// `[C₋₁, C₀, C₁]`.
    pub fn coefficients(&self) -> [Complex64; 3] {
        self.coefficients
    }

    pub fn renormalized(&self) -> bool {
        self.renormalized
    }

    pub fn state(&self) -> PureState {
        let [cm, c0, cp] = self.coefficients;
        PureState::from_terms(2, [([2u32, 0], cm), ([1, 1], c0), ([0, 2], cp)]).expect("two modes")
    }
}

/// Normalized one-mode input state; the flag reports whether rescaling occurred.
pub fn build_input(a0: Complex64, a1: Complex64, a2: Complex64) -> Result<(PureState, bool)> {
    let input = ScissorsInput::new(a0, a1, a2)?;
    Ok((input.state(), input.renormalized()))
}

pub fn build_epr(epr: &EprResource) -> PureState {
    epr.state()
}

/// `|⟨a|b⟩|²` for normalized states.
pub fn fidelity(a: &PureState, b: &PureState) -> Result<f64> {
    a.ensure_normalized()?;
    b.ensure_normalized()?;
    Ok(a.inner(b)?.norm_sqr())
}

/// One detector pattern and what it leaves behind in mode 3.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeRecord {
    /// Photons counted at the two beam-splitter outputs `(D₁, D₂)`.
    pub detectors: (u32, u32),
    pub probability: f64,
    /// Normalized mode-3 state; empty when the probability is zero.
    pub conditional: PureState,
    /// `l = (j + k)/2`, `l₃ = (k − j)/2`, matching the outcome operator
    /// `b₂†^{l+l₃} b₁†^{l−l₃}`.
    pub label: MultipletLabel2,
}

impl OutcomeRecord {
    pub fn is_coincidence(&self) -> bool {
        self.detectors == (1, 1)
    }
}

fn outcome_label(j: u32, k: u32) -> MultipletLabel2 {
    MultipletLabel2 {
        l: HalfInt::from_doubled(i64::from(j + k)),
        l3: HalfInt::from_doubled(i64::from(k) - i64::from(j)),
    }
}

/// The three-mode state right after the beam splitter.
pub fn post_beam_splitter(
    input: &ScissorsInput,
    epr: &EprResource,
    bs: &ModeUnitary,
) -> Result<PureState> {
    if bs.dim() != 2 {
        return Err(Error::BadDimension { rows: bs.dim(), cols: bs.dim() });
    }
    let product = input.state().tensor(&epr.state());
    apply_mode_unitary(bs, &product, 0)
}

/// All detector outcomes with nonzero probability, plus the `(1, 1)`
/// coincidence unconditionally. Sorted by detected total, then by `D₂` count.
pub fn run_scissors(
    input: &ScissorsInput,
    epr: &EprResource,
    bs: &ModeUnitary,
) -> Result<Vec<OutcomeRecord>> {
    let state = post_beam_splitter(input, epr, bs)?;
    let mut by_pattern: BTreeMap<(u32, u32), Vec<(u32, Complex64)>> = BTreeMap::new();
    for (occ, amp) in state.iter() {
        let c = occ.counts();
        by_pattern.entry((c[0], c[1])).or_default().push((c[2], *amp));
    }
    by_pattern.entry((1, 1)).or_default();

    let mut records = Vec::with_capacity(by_pattern.len());
    for ((j, k), terms) in by_pattern {
        debug_assert!(j + k <= MAX_DETECTED);
        let conditional = PureState::from_terms(1, terms.into_iter().map(|(m, a)| (vec![m], a)))?;
        let probability = conditional.norm_sqr();
        let conditional = if conditional.is_empty() { conditional } else { conditional.normalized()? };
        records.push(OutcomeRecord { detectors: (j, k), probability, conditional, label: outcome_label(j, k) });
    }
    records.sort_by_key(|r| (r.detectors.0 + r.detectors.1, r.detectors.1));
    Ok(records)
}

/// One calligraphic coefficient set of the outcome expansion: the multiplet
/// combination multiplying `A_q · w_q · a₃†^p`, with `w_q = 1, 1, 1/√2`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientFamily {
    pub name: char,
    /// `q`: photon number of the input term this family multiplies.
    pub input_photons: u32,
    /// `p`: power of `a₃†`.
    pub mode3_power: u32,
    /// `2l = q + 2 − p`, the detected photon total.
    pub two_l: u32,
    /// Coefficients of `b₂†^k b₁†^{2l−k}` for `k = 0 … 2l` (`l₃ = k − l`).
    /// `None` when `A_q = 0` leaves them undetermined.
    pub coefficients: Option<Vec<Complex64>>,
}

impl CoefficientFamily {
    /// Coefficient at `l₃ = 0`; exists only for even `2l`.
    pub fn center(&self) -> Option<Complex64> {
        if !self.two_l.is_multiple_of(2) {
            return None;
        }
        self.coefficients.as_ref().map(|c| c[self.two_l as usize / 2])
    }

    pub fn at(&self, l3: HalfInt) -> Option<Complex64> {
        let k = (l3 + HalfInt::from_doubled(i64::from(self.two_l))).doubled();
        if k < 0 || k % 2 != 0 || k / 2 > i64::from(self.two_l) {
            return None;
        }
        self.coefficients.as_ref().map(|c| c[(k / 2) as usize])
    }
}

/// `(name, q, p)` for the nine families, in the order they appear in the
/// expansion.
const FAMILIES: [(char, u32, u32); 9] = [
    ('A', 0, 0),
    ('B', 0, 1),
    ('C', 0, 2),
    ('D', 1, 0),
    ('E', 1, 1),
    ('F', 1, 2),
    ('G', 2, 0),
    ('H', 2, 1),
    ('I', 2, 2),
];

fn input_weight(q: u32) -> f64 {
    if q == 2 {
        std::f64::consts::FRAC_1_SQRT_2
    } else {
        1.0
    }
}

fn sqrt_factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product::<f64>().sqrt()
}

/// The post-beam-splitter state written as
/// `Σ_q A_q w_q Σ_p (Σ_{l₃} coeff · b₂†^{l+l₃} b₁†^{l−l₃}) a₃†^p |0⟩`.
///
/// The creation-operator monomials carry no factorial normalization; a Fock
/// amplitude `⟨j,k,p|Ψ⟩` equals the monomial coefficient times `√(j!k!p!)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDecomposition {
    pub families: Vec<CoefficientFamily>,
}

impl OutcomeDecomposition {
    pub fn family(&self, name: char) -> Option<&CoefficientFamily> {
        self.families.iter().find(|f| f.name == name)
    }

    /// `[²𝒜₀, ²ℰ₀, ²ℐ₀]`: the coincidence coefficients for `A₀`, `A₁`, `A₂`.
    pub fn coincidence_coefficients(&self) -> [Option<Complex64>; 3] {
        ['A', 'E', 'I'].map(|n| self.family(n).and_then(CoefficientFamily::center))
    }

    /// Rebuilds the three-mode state from the stored coefficients.
    pub fn reassemble(&self, input: &ScissorsInput) -> Result<PureState> {
        let a = input.amplitudes();
        let mut terms = Vec::new();
        for fam in &self.families {
            let Some(coeffs) = &fam.coefficients else { continue };
            let weight = a[fam.input_photons as usize] * input_weight(fam.input_photons);
            for (k, coeff) in coeffs.iter().enumerate() {
                let k = k as u32;
                let j = fam.two_l - k;
                let p = fam.mode3_power;
                let norm = sqrt_factorial(j) * sqrt_factorial(k) * sqrt_factorial(p);
                terms.push((vec![j, k, p], weight * coeff * norm));
            }
        }
        PureState::from_terms(3, terms)
    }
}

pub fn decompose_outcomes(
    input: &ScissorsInput,
    epr: &EprResource,
    bs: &ModeUnitary,
) -> Result<OutcomeDecomposition> {
    let state = post_beam_splitter(input, epr, bs)?;
    let a = input.amplitudes();
    let families = FAMILIES
        .iter()
        .map(|&(name, q, p)| {
            let two_l = q + 2 - p;
            let weight = a[q as usize] * input_weight(q);
            let coefficients = (weight.norm() > PRUNE_THRESHOLD).then(|| {
                (0..=two_l)
                    .map(|k| {
                        let j = two_l - k;
                        let amp = state.amplitude(&Occupation::new(vec![j, k, p]));
                        let norm = sqrt_factorial(j) * sqrt_factorial(k) * sqrt_factorial(p);
                        amp / (norm * weight)
                    })
                    .collect()
            });
            CoefficientFamily { name, input_photons: q, mode3_power: p, two_l, coefficients }
        })
        .collect();
    Ok(OutcomeDecomposition { families })
}

/// A beam splitter and resource with phase-aligned coincidence coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct BalancedConfig {
    /// Beam-splitter angle; intensity transmission is `cos² θ`.
    pub theta: f64,
    pub phi: f64,
    pub bs: ModeUnitary,
    pub epr: EprResource,
    /// `[²𝒜₀, ²ℰ₀, ²ℐ₀]` at the returned configuration.
    pub achieved: [Complex64; 3],
    pub residual: f64,
}

/// Search-space point: beam-splitter angle and two angles on the positive
/// octant of the unit sphere for the resource magnitudes.
#[derive(Debug, Clone, Copy)]
struct SearchPoint {
    theta: f64,
    polar: f64,
    azimuth: f64,
}

impl SearchPoint {
    fn from_slice(p: &[f64]) -> Self {
        SearchPoint { theta: p[0], polar: p[1], azimuth: p[2] }
    }

    fn magnitudes(&self) -> [f64; 3] {
        let (sp, cp) = self.polar.sin_cos();
        let (sa, ca) = self.azimuth.sin_cos();
        [sp * ca, sp * sa, cp]
    }
}

/// Coincidence coefficients per unit resource coefficient:
/// `²𝒜₀ = g₋₁ C₋₁`, `²ℰ₀ = g₀ C₀`, `²ℐ₀ = g₁ C₁`.
fn unit_gains(bs: &ModeUnitary) -> Result<[Complex64; 3]> {
    let one = Complex64::new(1.0, 0.0);
    let input = ScissorsInput::new(one, one, one)?;
    let epr = EprResource::new(one, one, one)?;
    let dec = decompose_outcomes(&input, &epr, bs)?;
    let scale = 3f64.sqrt();
    let coeffs = dec.coincidence_coefficients();
    Ok(coeffs.map(|c| c.expect("all input amplitudes are nonzero") * scale))
}

/// Resource whose phases cancel the beam-splitter phases, so every
/// coincidence coefficient is real and non-negative.
fn aligned_resource(bs: &ModeUnitary, magnitudes: [f64; 3]) -> Result<(EprResource, [f64; 3])> {
    let gains = unit_gains(bs)?;
    let mut c = [Complex64::new(0.0, 0.0); 3];
    let mut kappa = [0.0; 3];
    for x in 0..3 {
        let g = gains[x];
        let phase = if g.norm() > 0.0 { g.conj() / g.norm() } else { Complex64::new(1.0, 0.0) };
        c[x] = phase * magnitudes[x];
        kappa[x] = magnitudes[x] * g.norm();
    }
    Ok((EprResource::new(c[0], c[1], c[2])?, kappa))
}

struct BalanceCost {
    target: f64,
}

impl BalanceCost {
    fn residual(&self, point: SearchPoint) -> f64 {
        let bs = ModeUnitary::beam_splitter(point.theta, 0.0);
        match aligned_resource(&bs, point.magnitudes()) {
            Ok((_, kappa)) => kappa.iter().map(|k| (k - self.target).abs()).sum(),
            Err(_) => f64::INFINITY,
        }
    }
}

impl CostFunction for BalanceCost {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Self::Param) -> std::result::Result<f64, argmin::core::Error> {
        Ok(self.residual(SearchPoint::from_slice(p)))
    }
}

const GRID: usize = 16;

/// Finds a beam splitter and resource with `²𝒜₀ = ²ℰ₀ = ²ℐ₀ = target`.
///
/// A coarse grid over the beam-splitter angle and the resource magnitudes
/// seeds Nelder–Mead restarts. Resource phases are set analytically to make
/// every coincidence coefficient real and non-negative, and the beam-splitter
/// phase is held at zero since the resource phases absorb it. Fails with the
/// best residual found when `SOLVER_TOLERANCE` is not reached; targets above
/// `1/3` are unreachable.
pub fn solve_balanced(target: f64) -> Result<BalancedConfig> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::InvalidArgument(format!("target {target} outside (0, 1)")));
    }
    let cost = BalanceCost { target };
    let half_pi = std::f64::consts::FRAC_PI_2;
    let cell = half_pi / GRID as f64;

    let mut best = (f64::INFINITY, vec![0.0; 3]);
    for ti in 0..GRID {
        for pi in 0..GRID {
            for ai in 0..GRID {
                let p = vec![(ti as f64 + 0.5) * cell, (pi as f64 + 0.5) * cell, (ai as f64 + 0.5) * cell];
                let r = cost.residual(SearchPoint::from_slice(&p));
                if r < best.0 {
                    best = (r, p);
                }
            }
        }
    }

    let mut step = cell / 2.0;
    for _ in 0..8 {
        if best.0 < SOLVER_TOLERANCE {
            break;
        }
        let start = best.1.clone();
        let mut simplex = vec![start.clone()];
        for d in 0..3 {
            let mut v = start.clone();
            v[d] += step;
            simplex.push(v);
        }
        let solver = NelderMead::new(simplex)
            .with_sd_tolerance(1e-16)
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let result = Executor::new(BalanceCost { target }, solver)
            .configure(|state| state.max_iters(4000))
            .run()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let state = result.state();
        if let Some(p) = &state.best_param {
            if state.best_cost < best.0 {
                best = (state.best_cost, p.clone());
            }
        }
        step /= 10.0;
    }

    let point = SearchPoint::from_slice(&best.1);
    let bs = ModeUnitary::beam_splitter(point.theta, 0.0);
    let (epr, _) = aligned_resource(&bs, point.magnitudes())?;
    let one = Complex64::new(1.0, 0.0);
    let probe = ScissorsInput::new(one, one, one)?;
    let achieved = decompose_outcomes(&probe, &epr, &bs)?
        .coincidence_coefficients()
        .map(|c| c.expect("all input amplitudes are nonzero"));
    let residual: f64 = achieved.iter().map(|k| (k - target).norm()).sum();
    if residual >= SOLVER_TOLERANCE {
        return Err(Error::SolverFailed { tolerance: SOLVER_TOLERANCE, best_residual: residual });
    }
    Ok(BalancedConfig { theta: point.theta, phi: 0.0, bs, epr, achieved, residual })
}
