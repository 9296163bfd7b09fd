//! Sparse multimode Fock states and the bosonic ladder operators acting on them.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{NORM_TOLERANCE, PRUNE_THRESHOLD};

/// Photon count per mode; a Fock basis label.
///
/// Ordering is lexicographic on the counts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Occupation(Vec<u32>);

impl Occupation {
    pub fn new(counts: Vec<u32>) -> Self {
        Occupation(counts)
    }

    pub fn zeros(modes: usize) -> Self {
        Occupation(vec![0; modes])
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, mode: usize) -> u32 {
        self.0[mode]
    }

    pub(crate) fn with(&self, mode: usize, count: u32) -> Occupation {
        let mut counts = self.0.clone();
        counts[mode] = count;
        Occupation(counts)
    }

    pub fn concat(&self, other: &Occupation) -> Occupation {
        let mut counts = self.0.clone();
        counts.extend_from_slice(&other.0);
        Occupation(counts)
    }
}

impl From<Vec<u32>> for Occupation {
    fn from(counts: Vec<u32>) -> Self {
        Occupation(counts)
    }
}

impl<const N: usize> From<[u32; N]> for Occupation {
    fn from(counts: [u32; N]) -> Self {
        Occupation(counts.to_vec())
    }
}

impl fmt::Display for Occupation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "⟩")
    }
}

/// All occupation vectors on `modes` modes holding exactly `photons` photons.
///
/// The order is reverse lexicographic, so the single-photon sector comes out
/// as `(1,0,…), (0,1,…), …` and its matrices read in mode order.
pub fn sector_basis(modes: usize, photons: u32) -> Vec<Occupation> {
    fn fill(prefix: &mut Vec<u32>, modes: usize, left: u32, out: &mut Vec<Occupation>) {
        if prefix.len() + 1 == modes {
            prefix.push(left);
            out.push(Occupation(prefix.clone()));
            prefix.pop();
            return;
        }
        for n in (0..=left).rev() {
            prefix.push(n);
            fill(prefix, modes, left - n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if modes > 0 {
        fill(&mut Vec::with_capacity(modes), modes, photons, &mut out);
    }
    out
}

/// Sectors `0..=max_photons` concatenated, each in [`sector_basis`] order.
pub fn truncated_basis(modes: usize, max_photons: u32) -> Vec<Occupation> {
    (0..=max_photons).flat_map(|n| sector_basis(modes, n)).collect()
}

/// A pure state as a sparse map from occupation vectors to amplitudes.
///
/// Amplitudes at or below [`PRUNE_THRESHOLD`] are never stored. The empty map
/// is the zero vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct PureState {
    modes: usize,
    terms: BTreeMap<Occupation, Complex64>,
}

impl PureState {
    pub fn zero(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::ZeroModes);
        }
        Ok(PureState { modes, terms: BTreeMap::new() })
    }

    pub fn vacuum(modes: usize) -> Result<Self> {
        Self::basis(Occupation::zeros(modes))
    }

    /// The normalized basis state `|occ⟩`.
    pub fn basis(occ: Occupation) -> Result<Self> {
        let mut state = Self::zero(occ.modes())?;
        state.terms.insert(occ, Complex64::new(1.0, 0.0));
        Ok(state)
    }

    /// Builds a state from `(occupation, amplitude)` pairs, summing repeats.
    pub fn from_terms<I, O>(modes: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (O, Complex64)>,
        O: Into<Occupation>,
    {
        let mut state = Self::zero(modes)?;
        for (occ, amp) in terms {
            let occ = occ.into();
            if occ.modes() != modes {
                return Err(Error::WrongLength { expected: modes, got: occ.modes() });
            }
            *state.terms.entry(occ).or_default() += amp;
        }
        state.prune();
        Ok(state)
    }

    pub(crate) fn from_map_unchecked(modes: usize, terms: BTreeMap<Occupation, Complex64>) -> Self {
        let mut state = PureState { modes, terms };
        state.prune();
        state
    }

    fn prune(&mut self) {
        self.terms.retain(|_, amp| amp.norm() > PRUNE_THRESHOLD);
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of their occupation vectors.
    pub fn iter(&self) -> impl Iterator<Item = (&Occupation, &Complex64)> {
        self.terms.iter()
    }

    pub fn amplitude(&self, occ: &Occupation) -> Complex64 {
        self.terms.get(occ).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOLERANCE
    }

    pub fn ensure_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized { norm_sqr: self.norm_sqr() })
        }
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm <= PRUNE_THRESHOLD {
            return Err(Error::ZeroAmplitudes);
        }
        Ok(self.scaled(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let terms = self.terms.iter().map(|(o, a)| (o.clone(), a * factor)).collect();
        Self::from_map_unchecked(self.modes, terms)
    }

    pub fn add(&self, other: &PureState) -> Result<Self> {
        self.check_modes(other)?;
        let mut terms = self.terms.clone();
        for (occ, amp) in &other.terms {
            *terms.entry(occ.clone()).or_default() += amp;
        }
        Ok(Self::from_map_unchecked(self.modes, terms))
    }

    /// The product state `self ⊗ other`, with `other`'s modes appended.
    pub fn tensor(&self, other: &PureState) -> Self {
        let mut terms = BTreeMap::new();
        for (oa, a) in &self.terms {
            for (ob, b) in &other.terms {
                terms.insert(oa.concat(ob), a * b);
            }
        }
        Self::from_map_unchecked(self.modes + other.modes, terms)
    }

    fn check_modes(&self, other: &PureState) -> Result<()> {
        if self.modes != other.modes {
            return Err(Error::ModeMismatch { left: self.modes, right: other.modes });
        }
        Ok(())
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.modes {
            return Err(Error::ModeOutOfRange { mode, modes: self.modes });
        }
        Ok(())
    }

    /// `a†_mode |ψ⟩`; generally unnormalized.
    pub fn create(&self, mode: usize) -> Result<Self> {
        self.check_mode(mode)?;
        let terms = self
            .terms
            .iter()
            .map(|(occ, amp)| {
                let n = occ.get(mode);
                (occ.with(mode, n + 1), amp * ((n + 1) as f64).sqrt())
            })
            .collect();
        Ok(Self::from_map_unchecked(self.modes, terms))
    }

    /// `a_mode |ψ⟩`; terms with no photon in `mode` vanish.
    pub fn annihilate(&self, mode: usize) -> Result<Self> {
        self.check_mode(mode)?;
        let terms = self
            .terms
            .iter()
            .filter(|(occ, _)| occ.get(mode) > 0)
            .map(|(occ, amp)| {
                let n = occ.get(mode);
                (occ.with(mode, n - 1), amp * (n as f64).sqrt())
            })
            .collect();
        Ok(Self::from_map_unchecked(self.modes, terms))
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        self.check_modes(other)?;
        Ok(self
            .terms
            .iter()
            .filter_map(|(occ, a)| other.terms.get(occ).map(|b| a.conj() * b))
            .sum())
    }

    /// Splits the state by total photon number. Sectors are left unnormalized.
    pub fn photon_sectors(&self) -> BTreeMap<u32, PureState> {
        let mut sectors: BTreeMap<u32, BTreeMap<Occupation, Complex64>> = BTreeMap::new();
        for (occ, amp) in &self.terms {
            sectors.entry(occ.total()).or_default().insert(occ.clone(), *amp);
        }
        sectors
            .into_iter()
            .map(|(n, terms)| (n, PureState { modes: self.modes, terms }))
            .collect()
    }
}

pub fn inner_product(a: &PureState, b: &PureState) -> Result<Complex64> {
    a.inner(b)
}

impl fmt::Display for PureState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (occ, amp)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6}{:+.6}i){occ}", amp.re, amp.im)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    occ: Vec<u32>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    modes: usize,
    terms: Vec<TermRepr>,
}

impl TryFrom<StateRepr> for PureState {
    type Error = Error;

    fn try_from(repr: StateRepr) -> Result<Self> {
        PureState::from_terms(
            repr.modes,
            repr.terms.into_iter().map(|t| (Occupation(t.occ), Complex64::new(t.re, t.im))),
        )
    }
}

impl From<PureState> for StateRepr {
    fn from(state: PureState) -> Self {
        StateRepr {
            modes: state.modes,
            terms: state
                .terms
                .into_iter()
                .map(|(occ, amp)| TermRepr { occ: occ.0, re: amp.re, im: amp.im })
                .collect(),
        }
    }
}
