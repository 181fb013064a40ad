//! Multimode bosonic states on truncated Fock spaces.
//!
//! A [`MultiModeState`] stores its amplitudes sparsely, keyed by the
//! occupation tuple of the labeled modes in its [`ModeLayout`]. The layout
//! carries a cutoff on the *total* photon number; every stored tuple sums to
//! at most that cutoff. Mixed states are ensembles of pure components
//! ([`MixedState`]), never dense multimode density matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Relative tolerance on Σ|c|² for states that claim to be normalized.
pub const NORM_TOL: f64 = 1e-9;

/// Largest Poisson tail a truncated coherent amplitude may drop.
pub const COHERENT_TAIL_TOL: f64 = 1e-12;

/// Eigenvalues of an input density matrix below this are discarded.
pub const EIGEN_DROP: f64 = 1e-12;

/// One nonnegative occupation per mode, in layout order.
pub type Occupation = SmallVec<[u16; 8]>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeLayout {
    labels: Vec<String>,
    cutoff: usize,
}

impl ModeLayout {
    pub fn new<I, S>(labels: I, cutoff: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidLayout("no modes".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::InvalidLayout("empty mode label".into()));
            }
            if labels[..i].contains(l) {
                return Err(Error::InvalidLayout(format!("duplicate mode label `{l}`")));
            }
        }
        if cutoff > u16::MAX as usize {
            return Err(Error::InvalidLayout(format!("cutoff {cutoff} too large")));
        }
        Ok(ModeLayout { labels, cutoff })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownMode(label.to_string()))
    }

    pub fn has_labels(&self, expected: &[&str]) -> bool {
        self.labels.len() == expected.len() && self.labels.iter().zip(expected).all(|(a, b)| a == b)
    }

    pub(crate) fn expect_labels(&self, expected: &[&str]) -> Result<()> {
        if self.has_labels(expected) {
            Ok(())
        } else {
            Err(Error::WrongLayout {
                expected: expected.iter().map(|s| s.to_string()).collect(),
                found: self.labels.clone(),
            })
        }
    }

    fn occupation(&self, occ: &[u32]) -> Result<Occupation> {
        let total: u64 = occ.iter().map(|&n| n as u64).sum();
        if occ.len() != self.len() || total > self.cutoff as u64 {
            return Err(Error::InvalidOccupation {
                occupation: occ.to_vec(),
                cutoff: self.cutoff,
                modes: self.len(),
            });
        }
        Ok(occ.iter().map(|&n| n as u16).collect())
    }
}

/// Smallest cutoff whose Poisson tail is below 1e-12 for a coherent
/// amplitude of modulus `alpha_abs`: ⌈|α|² + 8|α| + 10⌉.
///
/// The total photon number of a coherent state is Poisson with mean |α|²;
/// the 8σ margin plus a constant floor keeps the tail under 1e-12 for every
/// mean, including |α| → 0 where the tail is ~|α|²²/22!.
pub fn coherent_cutoff(alpha_abs: f64) -> usize {
    (alpha_abs * alpha_abs + 8.0 * alpha_abs + 10.0).ceil() as usize
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// P(N > cutoff) for N ~ Poisson(mean), summed from the tail side.
pub fn poisson_tail(mean: f64, cutoff: usize) -> f64 {
    if mean <= 0.0 {
        return 0.0;
    }
    let mut n = cutoff + 1;
    let mut term = (-mean + n as f64 * mean.ln() - ln_factorial(n)).exp();
    let mut tail = 0.0;
    loop {
        tail += term;
        n += 1;
        term *= mean / n as f64;
        if n as f64 > mean && term < tail * 1e-17 {
            break;
        }
        if term == 0.0 {
            break;
        }
    }
    tail
}

/// √(k (k-1) … (k-q+1)), the matrix element of â^q on |k⟩.
#[inline]
pub(crate) fn sqrt_falling(k: u16, q: u32) -> f64 {
    let mut acc = 1.0;
    for j in 0..q {
        acc *= (k as f64) - j as f64;
    }
    acc.sqrt()
}

/// Enumerate all occupation tuples over `active` modes with total ≤ cutoff.
fn for_each_occupation(active: &[usize], modes: usize, cutoff: usize, mut f: impl FnMut(&Occupation)) {
    fn rec(
        active: &[usize],
        pos: usize,
        remaining: usize,
        occ: &mut Occupation,
        f: &mut dyn FnMut(&Occupation),
    ) {
        if pos == active.len() {
            f(occ);
            return;
        }
        for n in 0..=remaining {
            occ[active[pos]] = n as u16;
            rec(active, pos + 1, remaining - n, occ, f);
        }
        occ[active[pos]] = 0;
    }
    let mut occ: Occupation = SmallVec::from_elem(0, modes);
    rec(active, 0, cutoff, &mut occ, &mut f);
}

/// Pure state with sparse amplitudes over occupation tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiModeState {
    layout: ModeLayout,
    amps: BTreeMap<Occupation, C64>,
}

impl MultiModeState {
    /// Build a normalized state proportional to the given terms. Repeated
    /// tuples are summed.
    pub fn from_terms<'a, I>(layout: ModeLayout, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a [u32], C64)>,
    {
        let mut amps = BTreeMap::new();
        for (occ, c) in terms {
            let key = layout.occupation(occ)?;
            *amps.entry(key).or_insert(C64::new(0.0, 0.0)) += c;
        }
        Self::normalized(layout, amps)
    }

    /// Takes amplitudes that are proportional to a state and rescales them.
    pub(crate) fn normalized(layout: ModeLayout, mut amps: BTreeMap<Occupation, C64>) -> Result<Self> {
        amps.retain(|_, c| *c != C64::new(0.0, 0.0));
        let norm: f64 = amps.values().map(|c| c.norm_sqr()).sum();
        if norm.is_nan() || norm <= 0.0 || !norm.is_finite() {
            return Err(Error::ZeroState);
        }
        let scale = norm.sqrt().recip();
        for c in amps.values_mut() {
            *c *= scale;
        }
        Ok(MultiModeState { layout, amps })
    }

    /// Amplitudes that must already be normalized within [`NORM_TOL`].
    pub fn from_normalized_terms<'a, I>(layout: ModeLayout, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a [u32], C64)>,
    {
        let mut amps = BTreeMap::new();
        for (occ, c) in terms {
            let key = layout.occupation(occ)?;
            *amps.entry(key).or_insert(C64::new(0.0, 0.0)) += c;
        }
        let s = MultiModeState { layout, amps };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(s)
    }

    pub(crate) fn from_map_unchecked(layout: ModeLayout, amps: BTreeMap<Occupation, C64>) -> Self {
        MultiModeState { layout, amps }
    }

    pub fn vacuum(layout: ModeLayout) -> Self {
        let mut amps = BTreeMap::new();
        amps.insert(SmallVec::from_elem(0, layout.len()), C64::new(1.0, 0.0));
        MultiModeState { layout, amps }
    }

    /// Number state |n₁, n₂, …⟩.
    pub fn fock(layout: ModeLayout, occ: &[u32]) -> Result<Self> {
        Self::from_terms(layout, [(occ, C64::new(1.0, 0.0))])
    }

    /// Product coherent state |α₁⟩⊗|α₂⟩⊗…, truncated at the layout cutoff and
    /// renormalized. The discarded Poisson tail must stay below 1e-12.
    pub fn coherent(layout: ModeLayout, alphas: &[C64]) -> Result<Self> {
        if alphas.len() != layout.len() {
            return Err(Error::InvalidParams(format!(
                "{} coherent amplitudes for {} modes",
                alphas.len(),
                layout.len()
            )));
        }
        if alphas.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidParams("non-finite coherent amplitude".into()));
        }
        let mean: f64 = alphas.iter().map(|a| a.norm_sqr()).sum();
        let tail = poisson_tail(mean, layout.cutoff());
        if tail >= COHERENT_TAIL_TOL {
            return Err(Error::CutoffTooSmall {
                cutoff: layout.cutoff(),
                tail,
                tolerance: COHERENT_TAIL_TOL,
            });
        }
        let active: Vec<usize> = (0..alphas.len()).filter(|&i| alphas[i].norm_sqr() > 0.0).collect();
        // αⁿ/√n! per mode, built incrementally
        let coeff = |a: C64, n: u16| -> C64 {
            let mut c = C64::new(1.0, 0.0);
            for k in 1..=n {
                c *= a / (k as f64).sqrt();
            }
            c
        };
        let mut amps = BTreeMap::new();
        for_each_occupation(&active, layout.len(), layout.cutoff(), |occ| {
            let mut c = C64::new((-mean / 2.0).exp(), 0.0);
            for &i in &active {
                c *= coeff(alphas[i], occ[i]);
            }
            amps.insert(occ.clone(), c);
        });
        Self::normalized(layout, amps)
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn amplitude(&self, occ: &[u32]) -> C64 {
        let key: Occupation = occ.iter().map(|&n| n as u16).collect();
        self.amps.get(&key).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Occupation, &C64)> {
        self.amps.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.amps.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|c| c.norm_sqr()).sum()
    }

    /// ⟨self|other⟩; both states must share a layout (cutoffs may differ).
    pub fn inner(&self, other: &MultiModeState) -> Result<C64> {
        if self.layout.labels != other.layout.labels {
            return Err(Error::LayoutMismatch);
        }
        let (small, large, flip) = if self.amps.len() <= other.amps.len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        let mut acc = C64::new(0.0, 0.0);
        for (k, c) in &small.amps {
            if let Some(d) = large.amps.get(k) {
                acc += c.conj() * d;
            }
        }
        Ok(if flip { acc.conj() } else { acc })
    }

    /// |⟨self|other⟩|².
    pub fn fidelity(&self, other: &MultiModeState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Tensor product with a state on disjoint modes; cutoffs add.
    pub fn tensor(&self, other: &MultiModeState) -> Result<MultiModeState> {
        for l in &other.layout.labels {
            if self.layout.labels.contains(l) {
                return Err(Error::LabelCollision(l.clone()));
            }
        }
        let labels = self.layout.labels.iter().chain(&other.layout.labels).cloned();
        let layout = ModeLayout::new(labels, self.layout.cutoff + other.layout.cutoff)?;
        let mut amps = BTreeMap::new();
        for (k1, c1) in &self.amps {
            for (k2, c2) in &other.amps {
                let mut key = k1.clone();
                key.extend_from_slice(k2);
                amps.insert(key, c1 * c2);
            }
        }
        Ok(MultiModeState { layout, amps })
    }

    /// Permute modes into the given label order.
    pub fn reorder(&self, labels: &[&str]) -> Result<MultiModeState> {
        if labels.len() != self.layout.len() {
            return Err(Error::WrongLayout {
                expected: labels.iter().map(|s| s.to_string()).collect(),
                found: self.layout.labels.clone(),
            });
        }
        let perm = labels
            .iter()
            .map(|l| self.layout.index_of(l))
            .collect::<Result<Vec<_>>>()?;
        let layout = ModeLayout::new(labels.iter().copied(), self.layout.cutoff)?;
        let amps = self
            .amps
            .iter()
            .map(|(k, c)| (perm.iter().map(|&i| k[i]).collect(), *c))
            .collect();
        Ok(MultiModeState { layout, amps })
    }

    /// Rename modes in place of their current labels, keeping the order.
    pub fn relabel(&self, labels: &[&str]) -> Result<MultiModeState> {
        if labels.len() != self.layout.len() {
            return Err(Error::InvalidLayout(format!(
                "{} labels for {} modes",
                labels.len(),
                self.layout.len()
            )));
        }
        Ok(MultiModeState {
            layout: ModeLayout::new(labels.iter().copied(), self.layout.cutoff)?,
            amps: self.amps.clone(),
        })
    }

    /// Drop amplitudes below `eps` in modulus and rescale.
    pub fn pruned(&self, eps: f64) -> Result<MultiModeState> {
        let amps = self.amps.iter().filter(|(_, c)| c.norm() > eps).map(|(k, c)| (k.clone(), *c)).collect();
        Self::normalized(self.layout.clone(), amps)
    }

    /// ⟨Π (â_m†)^p (â_m)^q⟩ with modes given by index.
    ///
    /// Uses ⟨ψ|A†B|ψ⟩ = ⟨Aψ|Bψ⟩ with A = Π â^p, B = Π â^q: each ket |k⟩ is
    /// lowered by q and matched against the bra |t⟩ = |k - q + p⟩.
    pub(crate) fn moment_indexed(&self, ops: &[(usize, u32, u32)]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        let mut target: Occupation = SmallVec::new();
        'kets: for (k, c) in &self.amps {
            target.clone_from(k);
            let mut factor = 1.0;
            for &(m, p, q) in ops {
                let n = k[m] as i64;
                if n < q as i64 {
                    continue 'kets;
                }
                let t = n - q as i64 + p as i64;
                if t > u16::MAX as i64 {
                    continue 'kets;
                }
                target[m] = t as u16;
                factor *= sqrt_falling(k[m], q) * sqrt_falling(t as u16, p);
            }
            if let Some(b) = self.amps.get(&target) {
                acc += b.conj() * c * factor;
            }
        }
        acc
    }

    pub fn to_file(&self) -> StateFile {
        StateFile {
            modes: self.layout.labels.clone(),
            cutoff: self.layout.cutoff,
            terms: self
                .amps
                .iter()
                .map(|(k, c)| TermRecord {
                    occ: k.iter().map(|&n| n as u32).collect(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("state file serializes")
    }

    /// Parse the JSON state format. Terms are normalized on load.
    pub fn from_json_str(text: &str) -> Result<MultiModeState> {
        let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_state()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<MultiModeState> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text).map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }
}

impl fmt::Display for MultiModeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in &self.amps {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let occ: Vec<String> = k.iter().map(|n| n.to_string()).collect();
            write!(f, "({:.6}{:+.6}i)|{}⟩", c.re, c.im, occ.join(","))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub occ: Vec<u32>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// On-disk state: `{"modes":[...], "cutoff":N, "terms":[{"occ":[...],"re":x,"im":y}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub modes: Vec<String>,
    pub cutoff: usize,
    pub terms: Vec<TermRecord>,
}

impl StateFile {
    pub fn into_state(self) -> Result<MultiModeState> {
        let layout = ModeLayout::new(self.modes, self.cutoff).map_err(|e| Error::Parse(format!("field `modes`: {e}")))?;
        for (i, t) in self.terms.iter().enumerate() {
            if !t.re.is_finite() || !t.im.is_finite() {
                return Err(Error::Parse(format!("terms[{i}]: non-finite amplitude")));
            }
            layout
                .occupation(&t.occ)
                .map_err(|e| Error::Parse(format!("terms[{i}].occ: {e}")))?;
        }
        MultiModeState::from_terms(
            layout,
            self.terms.iter().map(|t| (t.occ.as_slice(), C64::new(t.re, t.im))),
        )
        .map_err(|e| Error::Parse(format!("field `terms`: {e}")))
    }
}

/// Normally ordered product Π (â_m†)^p (â_m)^q over distinct modes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MomentSpec {
    factors: Vec<(String, u32, u32)>,
}

impl MomentSpec {
    pub fn new<S: Into<String>>(factors: impl IntoIterator<Item = (S, u32, u32)>) -> Result<Self> {
        let mut out: Vec<(String, u32, u32)> = Vec::new();
        for (l, p, q) in factors {
            let l = l.into();
            if out.iter().any(|(m, _, _)| *m == l) {
                return Err(Error::InvalidParams(format!("mode `{l}` repeated in moment")));
            }
            out.push((l, p, q));
        }
        Ok(MomentSpec { factors: out })
    }

    /// Photon number n̂ of one mode.
    pub fn number(mode: &str) -> Self {
        MomentSpec {
            factors: vec![(mode.to_string(), 1, 1)],
        }
    }

    pub fn factors(&self) -> &[(String, u32, u32)] {
        &self.factors
    }

    /// Factors of the adjoint operator; its moment is the conjugate.
    pub fn adjoint(&self) -> Self {
        MomentSpec {
            factors: self.factors.iter().map(|(l, p, q)| (l.clone(), *q, *p)).collect(),
        }
    }

    pub(crate) fn resolve(&self, layout: &ModeLayout) -> Result<Vec<(usize, u32, u32)>> {
        self.factors
            .iter()
            .map(|(l, p, q)| Ok((layout.index_of(l)?, *p, *q)))
            .collect()
    }
}

/// Anything that can be read as a weighted ensemble of pure states.
pub trait StateLike {
    fn layout(&self) -> &ModeLayout;

    fn components(&self) -> Vec<(f64, &MultiModeState)>;

    fn to_mixed(&self) -> MixedState;

    /// Σ_i w_i ⟨ψ_i| Π (â†)^p â^q |ψ_i⟩.
    fn normal_moment(&self, spec: &MomentSpec) -> Result<C64> {
        let ops = spec.resolve(self.layout())?;
        Ok(self.moment_indexed(&ops))
    }

    fn moment_indexed(&self, ops: &[(usize, u32, u32)]) -> C64 {
        self.components()
            .into_iter()
            .map(|(w, s)| s.moment_indexed(ops) * w)
            .sum()
    }

    fn mean_number(&self, mode: &str) -> Result<f64> {
        Ok(self.normal_moment(&MomentSpec::number(mode))?.re)
    }
}

impl StateLike for MultiModeState {
    fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    fn components(&self) -> Vec<(f64, &MultiModeState)> {
        vec![(1.0, self)]
    }

    fn to_mixed(&self) -> MixedState {
        MixedState {
            components: vec![(1.0, self.clone())],
        }
    }
}

/// Convex mixture of pure states sharing one layout.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedState {
    components: Vec<(f64, MultiModeState)>,
}

impl MixedState {
    pub fn new(components: Vec<(f64, MultiModeState)>) -> Result<Self> {
        let first = components.first().ok_or_else(|| Error::InvalidWeights("empty mixture".into()))?;
        let labels = first.1.layout.labels.clone();
        let mut total = 0.0;
        for (w, s) in &components {
            if *w < 0.0 || !w.is_finite() {
                return Err(Error::InvalidWeights(format!("weight {w}")));
            }
            if s.layout.labels != labels {
                return Err(Error::LayoutMismatch);
            }
            total += w;
        }
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidWeights(format!("weights sum to {total}")));
        }
        Ok(MixedState { components })
    }

    pub fn iter(&self) -> impl Iterator<Item = &(f64, MultiModeState)> {
        self.components.iter()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Apply a pure-state map to every component, keeping the weights.
    pub fn map<F>(&self, mut f: F) -> Result<MixedState>
    where
        F: FnMut(&MultiModeState) -> Result<MultiModeState>,
    {
        let components = self
            .components
            .iter()
            .map(|(w, s)| Ok((*w, f(s)?)))
            .collect::<Result<Vec<_>>>()?;
        MixedState::new(components)
    }
}

impl From<MultiModeState> for MixedState {
    fn from(s: MultiModeState) -> Self {
        MixedState {
            components: vec![(1.0, s)],
        }
    }
}

impl StateLike for MixedState {
    fn layout(&self) -> &ModeLayout {
        &self.components[0].1.layout
    }

    fn components(&self) -> Vec<(f64, &MultiModeState)> {
        self.components.iter().map(|(w, s)| (*w, s)).collect()
    }

    fn to_mixed(&self) -> MixedState {
        self.clone()
    }
}

/// Eigendecompose a single-mode density matrix (Fock basis, dimension
/// cutoff + 1) into a pure-state ensemble on mode `label`.
pub fn mixture_from_density(rho: &DMatrix<C64>, label: &str) -> Result<MixedState> {
    let dim = rho.nrows();
    if dim == 0 || rho.ncols() != dim {
        return Err(Error::InvalidDensity(format!("shape {}x{}", rho.nrows(), rho.ncols())));
    }
    let herm_err = (rho - rho.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max);
    if herm_err > NORM_TOL {
        return Err(Error::InvalidDensity(format!("not hermitian (deviation {herm_err:e})")));
    }
    let trace = rho.trace();
    if (trace.re - 1.0).abs() > NORM_TOL || trace.im.abs() > NORM_TOL {
        return Err(Error::InvalidDensity(format!("trace {trace} is not 1")));
    }
    let herm = (rho + rho.adjoint()) * C64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let layout = ModeLayout::new([label], dim - 1)?;
    let mut components = Vec::new();
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda < -NORM_TOL {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {lambda:e}")));
        }
        if lambda < EIGEN_DROP {
            continue;
        }
        let v = eig.eigenvectors.column(i);
        let amps = (0..dim)
            .filter(|&n| v[n] != C64::new(0.0, 0.0))
            .map(|n| (SmallVec::from_elem(n as u16, 1), v[n]))
            .collect();
        components.push((lambda, MultiModeState::normalized(layout.clone(), amps)?));
    }
    let total: f64 = components.iter().map(|(w, _)| w).sum();
    for (w, _) in &mut components {
        *w /= total;
    }
    MixedState::new(components)
}
