//! Generation of the PAW ingredients for one site: pseudo wave functions by
//! even-polynomial Hermite matching at the cut-off radius, projector
//! functions by weighted Gram inversion, the odd sine family with its
//! projectors, and the cut-off / pseudopotential profiles.
//!
//! Everything here lives in local site coordinates `s ∈ [-1/2, 1/2)` with
//! the site at `s = 0`; the assembly layer places sites at 0 and `a` through
//! plane-wave phases.

use crate::func::centered;
use crate::linalg::{invert, symmetric_cond};
use crate::model::{atomic_spectrum, AtomicEigenpair};
use crate::quad::{integrate, Partition, DEFAULT_NODES};
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PawError {
    #[error("{0}")]
    InvalidSetup(String),
    #[error("derivative-matching system is numerically singular (cond {cond:.3e} at d = {d})")]
    SingularMatching { d: usize, cond: f64 },
    #[error("{family} Gram matrix is ill-conditioned at eta = {eta}: cond {cond:.3e}")]
    IllConditionedGram {
        family: &'static str,
        eta: f64,
        cond: f64,
    },
    #[error(transparent)]
    Model(#[from] crate::model::ModelError),
}

const COND_LIMIT: f64 = 1e12;

/// Method parameters: cut-off radius, number of PAW functions per site,
/// smoothness of the pseudo waves, pseudopotential radius.
///
/// `d >= n` keeps the matching system solvable and `d >= 2` makes value and
/// first derivative of the pseudo waves match at the cut-off, so the
/// windowed symmetric forms in the assembly equal the paper-form integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PawSetup {
    pub eta: f64,
    pub n: usize,
    pub d: usize,
    pub epsilon: f64,
}

impl PawSetup {
    /// Standard setup with `ε = η`.
    pub fn new(eta: f64, n: usize, d: usize) -> Result<Self, PawError> {
        Self::with_epsilon(eta, n, d, eta)
    }

    /// Setup with an explicit pseudopotential radius `ε <= η`; exposed as an
    /// experimental knob only.
    pub fn with_epsilon(eta: f64, n: usize, d: usize, epsilon: f64) -> Result<Self, PawError> {
        if !(eta > 0.0 && eta <= 0.25) {
            return Err(PawError::InvalidSetup(format!(
                "eta must lie in (0, 1/4], got {eta}"
            )));
        }
        if n < 1 {
            return Err(PawError::InvalidSetup("need n >= 1 PAW functions".into()));
        }
        if d < n.max(2) {
            return Err(PawError::InvalidSetup(format!(
                "smoothness d must satisfy d >= max(n, 2), got d = {d}, n = {n}"
            )));
        }
        if !(epsilon > 0.0 && epsilon <= eta) {
            return Err(PawError::InvalidSetup(format!(
                "epsilon must lie in (0, eta], got {epsilon}"
            )));
        }
        Ok(PawSetup { eta, n, d, epsilon })
    }

    /// Checks the cut-off against the site geometry: the two windows around
    /// 0 and `a` must not overlap (touching is allowed, the overlap is a
    /// null set).
    pub fn validate_for_site(&self, a: f64) -> Result<(), PawError> {
        let bound = (a / 2.0).min((1.0 - a) / 2.0);
        if self.eta > bound + 1e-14 {
            return Err(PawError::InvalidSetup(format!(
                "eta = {} exceeds min(a/2, (1-a)/2) = {bound} for a = {a}",
                self.eta
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    ProjectorRho,
    PseudopotentialChi,
}

/// The smooth bump `c · exp(-1/(1-t²))` on `(-1, 1)`, zero outside.
/// `c = 1` for the projector weight ρ; for the pseudopotential χ the
/// amplitude normalizes the integral to one.
#[derive(Debug, Clone, Copy)]
pub struct Bump {
    amplitude: f64,
}

impl Bump {
    pub fn value(&self, t: f64) -> f64 {
        if t.abs() < 1.0 {
            self.amplitude * (-1.0 / (1.0 - t * t)).exp()
        } else {
            0.0
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        if t.abs() < 1.0 {
            let w = 1.0 - t * t;
            self.amplitude * (-1.0 / w).exp() * (-2.0 * t / (w * w))
        } else {
            0.0
        }
    }
}

/// ∫₋₁¹ exp(-1/(1-t²)) dt, fixed by quadrature once.
fn bump_mass() -> f64 {
    static MASS: OnceLock<f64> = OnceLock::new();
    *MASS.get_or_init(|| {
        let raw = Bump { amplitude: 1.0 };
        let part = Partition::new(-1.0, 1.0, &[0.0]);
        integrate(|t| raw.value(t), &part, 2 * DEFAULT_NODES)
    })
}

/// The cut-off profile of the requested kind on `[-1, 1]`.
pub fn cutoff_profile(kind: ProfileKind) -> Bump {
    match kind {
        ProfileKind::ProjectorRho => Bump { amplitude: 1.0 },
        ProfileKind::PseudopotentialChi => Bump {
            amplitude: 1.0 / bump_mass(),
        },
    }
}

/// A pseudo wave function: equals its atomic eigenfunction outside the
/// window, an even polynomial of degree at most `2d-2` inside, matched to
/// `d-1` derivatives at the cut-off. The polynomial is represented in the
/// basis `P_k(t) = (t²-1)^k / (2^k k!)`.
#[derive(Debug, Clone)]
pub struct PseudoWave {
    pub mode: usize,
    /// Coefficients in the `P_k` basis, length `d`.
    pub coeffs: Vec<f64>,
    /// The same polynomial expanded in monomials of `t = s/η`.
    monomial: Vec<f64>,
    pub outer: AtomicEigenpair,
    eta: f64,
}

impl PseudoWave {
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Value at the local coordinate `s` (any real, reduced mod 1).
    pub fn value(&self, s: f64) -> f64 {
        let s = centered(s);
        if s.abs() < self.eta {
            poly_eval(&self.monomial, s / self.eta)
        } else {
            self.outer.derivative_n(s, 0)
        }
    }

    pub fn derivative(&self, s: f64) -> f64 {
        self.derivative_n(s, 1)
    }

    /// m-th derivative at `s`; inside the window the polynomial is
    /// differentiated in `t` with the chain-rule scale `η⁻ᵐ`.
    pub fn derivative_n(&self, s: f64, m: usize) -> f64 {
        let s = centered(s);
        if s.abs() < self.eta {
            let mut p = self.monomial.clone();
            for _ in 0..m {
                p = poly_derivative(&p);
            }
            poly_eval(&p, s / self.eta) / self.eta.powi(m as i32)
        } else {
            self.outer.derivative_n(s, m)
        }
    }

    /// m-th derivative of the inner polynomial at `t = s/η`, regardless of
    /// the window test. The matching conditions and the strong-form window
    /// integrals evaluate the polynomial branch up to and including the
    /// cut-off.
    pub fn polynomial_derivative_n(&self, t: f64, m: usize) -> f64 {
        let mut p = self.monomial.clone();
        for _ in 0..m {
            p = poly_derivative(&p);
        }
        poly_eval(&p, t) / self.eta.powi(m as i32)
    }

    /// Difference to the atomic wave, `g = φ - φ̃`; supported in the window.
    pub fn cusp_difference(&self, s: f64) -> f64 {
        let s = centered(s);
        if s.abs() < self.eta {
            self.outer.derivative_n(s, 0) - self.value(s)
        } else {
            0.0
        }
    }

    pub fn cusp_difference_derivative(&self, s: f64) -> f64 {
        let s = centered(s);
        if s.abs() < self.eta {
            self.outer.derivative_n(s, 1) - self.derivative(s)
        } else {
            0.0
        }
    }
}

fn poly_eval(coeffs: &[f64], t: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

fn poly_derivative(coeffs: &[f64]) -> Vec<f64> {
    if coeffs.len() <= 1 {
        return vec![0.0];
    }
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| k as f64 * c)
        .collect()
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Monomial coefficients of `P_k(t) = (t²-1)^k / (2^k k!)` for `k < d`.
fn p_basis(d: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(d);
    let mut cur = vec![1.0];
    let mut factor = 1.0;
    for k in 0..d {
        if k > 0 {
            cur = poly_mul(&cur, &[-1.0, 0.0, 1.0]);
            factor *= 2.0 * k as f64;
        }
        out.push(cur.iter().map(|c| c / factor).collect());
    }
    out
}

/// Builds the pseudo waves for the given atomic modes by solving the
/// triangular derivative-matching system at `t = 1`. `P_k` has a k-fold
/// zero at 1, so the matrix `T[m][k] = P_k^(m)(1)` is unit lower triangular.
pub fn build_pseudo_waves(
    atomic: &[AtomicEigenpair],
    setup: &PawSetup,
) -> Result<Vec<PseudoWave>, PawError> {
    if atomic.len() < setup.n {
        return Err(PawError::InvalidSetup(format!(
            "need at least n = {} atomic modes, got {}",
            setup.n,
            atomic.len()
        )));
    }
    let d = setup.d;
    let basis = p_basis(d);
    let mut t_mat = vec![vec![0.0; d]; d];
    for (k, pk) in basis.iter().enumerate() {
        let mut cur = pk.clone();
        for row in t_mat.iter_mut().take(d) {
            row[k] = poly_eval(&cur, 1.0);
            cur = poly_derivative(&cur);
        }
    }
    let cond = triangular_cond(&t_mat);
    if !cond.is_finite() || cond > COND_LIMIT {
        return Err(PawError::SingularMatching { d, cond });
    }
    let mut waves = Vec::with_capacity(setup.n);
    for (i, pair) in atomic.iter().take(setup.n).enumerate() {
        let rhs: Vec<f64> = (0..d)
            .map(|m| setup.eta.powi(m as i32) * pair.derivative_n(setup.eta, m))
            .collect();
        // forward substitution on the unit lower-triangular system
        let mut coeffs = vec![0.0; d];
        for m in 0..d {
            let mut s = rhs[m];
            for k in 0..m {
                s -= t_mat[m][k] * coeffs[k];
            }
            coeffs[m] = s / t_mat[m][m];
        }
        let mut monomial = vec![0.0; 2 * d - 1];
        for (k, pk) in basis.iter().enumerate() {
            for (j, &c) in pk.iter().enumerate() {
                monomial[j] += coeffs[k] * c;
            }
        }
        waves.push(PseudoWave {
            mode: i + 1,
            coeffs,
            monomial,
            outer: *pair,
            eta: setup.eta,
        });
    }
    Ok(waves)
}

fn triangular_cond(t: &[Vec<f64>]) -> f64 {
    let d = t.len();
    // inverse by forward substitution, then 1-norm condition estimate
    let mut inv = vec![vec![0.0; d]; d];
    for col in 0..d {
        for row in 0..d {
            let mut s = if row == col { 1.0 } else { 0.0 };
            for k in 0..row {
                s -= t[row][k] * inv[k][col];
            }
            inv[row][col] = s / t[row][row];
        }
    }
    let norm1 = |m: &[Vec<f64>]| -> f64 {
        (0..d)
            .map(|j| (0..d).map(|i| m[i][j].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    norm1(t) * norm1(&inv)
}

/// The dual projector family `p̃_k = Σ_j (B⁻¹)_{kj} ρ_η φ̃_j` with
/// `B_ij = <ρ_η φ̃_i, φ̃_j>`, the Gram matrix of the pseudo waves for the
/// weight ρ_η.
#[derive(Debug, Clone)]
pub struct ProjectorSet {
    pub weights: Vec<Vec<f64>>,
    pub gram: Vec<Vec<f64>>,
    pub cond: f64,
    eta: f64,
    rho: Bump,
    pseudos: Vec<PseudoWave>,
}

impl ProjectorSet {
    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn len(&self) -> usize {
        self.pseudos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pseudos.is_empty()
    }

    /// Raw projector `p_i(s) = ρ_η(s) φ̃_i(s)`.
    pub fn raw_value(&self, i: usize, s: f64) -> f64 {
        let s = centered(s);
        self.rho.value(s / self.eta) * self.pseudos[i].value(s)
    }

    /// Dual projector `p̃_k(s)`; vanishes outside the window.
    pub fn value(&self, k: usize, s: f64) -> f64 {
        let s = centered(s);
        if s.abs() >= self.eta {
            return 0.0;
        }
        let rho = self.rho.value(s / self.eta);
        let mut acc = 0.0;
        for (j, pw) in self.pseudos.iter().enumerate() {
            acc += self.weights[k][j] * pw.value(s);
        }
        rho * acc
    }
}

/// Gram inversion of the raw projectors against the pseudo waves.
pub fn build_projectors(
    pseudos: &[PseudoWave],
    setup: &PawSetup,
) -> Result<ProjectorSet, PawError> {
    assert!(!pseudos.is_empty());
    let eta = setup.eta;
    let rho = cutoff_profile(ProfileKind::ProjectorRho);
    let n = pseudos.len();
    let part = Partition::new(-eta, eta, &[0.0]);
    let mut gram = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = integrate(
                |s| rho.value(s / eta) * pseudos[i].value(s) * pseudos[j].value(s),
                &part,
                DEFAULT_NODES,
            );
            gram[i][j] = v;
            gram[j][i] = v;
        }
    }
    let cond = symmetric_cond(&gram);
    if !cond.is_finite() || cond > COND_LIMIT {
        return Err(PawError::IllConditionedGram {
            family: "projector",
            eta,
            cond,
        });
    }
    let weights = invert(&gram).ok_or(PawError::IllConditionedGram {
        family: "projector",
        eta,
        cond: f64::INFINITY,
    })?;
    Ok(ProjectorSet {
        weights,
        gram,
        cond,
        eta,
        rho,
        pseudos: pseudos.to_vec(),
    })
}

/// The odd family: `θ̃_k(s) = sin(2πks)` with dual projectors
/// `q̃_k = ρ_η Σ_j (G⁻¹)_{jk} θ̃_j`, G the ρ_η-weighted Gram of the sines
/// over the window.
#[derive(Debug, Clone)]
pub struct OddSet {
    pub n: usize,
    pub eta: f64,
    pub gram: Vec<Vec<f64>>,
    pub weights: Vec<Vec<f64>>,
    pub cond: f64,
    rho: Bump,
}

impl OddSet {
    /// `θ̃_k(s) = sin(2πks)`, `k = 1..n`.
    pub fn theta(k: usize, s: f64) -> f64 {
        (2.0 * std::f64::consts::PI * k as f64 * s).sin()
    }

    pub fn theta_derivative(k: usize, s: f64) -> f64 {
        let w = 2.0 * std::f64::consts::PI * k as f64;
        w * (w * s).cos()
    }

    /// Dual projector `q̃_k(s)`, window-supported; `k` is 1-based.
    pub fn projector(&self, k: usize, s: f64) -> f64 {
        let s = centered(s);
        if s.abs() >= self.eta {
            return 0.0;
        }
        let rho = self.rho.value(s / self.eta);
        let mut acc = 0.0;
        for j in 1..=self.n {
            acc += self.weights[j - 1][k - 1] * Self::theta(j, s);
        }
        rho * acc
    }
}

pub fn build_odd_set(setup: &PawSetup) -> Result<OddSet, PawError> {
    let eta = setup.eta;
    let n = setup.n;
    let rho = cutoff_profile(ProfileKind::ProjectorRho);
    let part = Partition::new(-eta, eta, &[0.0]);
    let mut gram = vec![vec![0.0; n]; n];
    for i in 1..=n {
        for j in i..=n {
            let v = integrate(
                |s| rho.value(s / eta) * OddSet::theta(i, s) * OddSet::theta(j, s),
                &part,
                DEFAULT_NODES,
            );
            gram[i - 1][j - 1] = v;
            gram[j - 1][i - 1] = v;
        }
    }
    let cond = symmetric_cond(&gram);
    if !cond.is_finite() || cond > COND_LIMIT {
        return Err(PawError::IllConditionedGram {
            family: "odd",
            eta,
            cond,
        });
    }
    let weights = invert(&gram).ok_or(PawError::IllConditionedGram {
        family: "odd",
        eta,
        cond: f64::INFINITY,
    })?;
    Ok(OddSet {
        n,
        eta,
        gram,
        weights,
        cond,
        rho,
    })
}

/// All ingredients of one site with strength `z`, ready for assembly.
#[derive(Debug, Clone)]
pub struct SitePaw {
    pub z: f64,
    pub setup: PawSetup,
    pub atomic: Vec<AtomicEigenpair>,
    pub pseudos: Vec<PseudoWave>,
    pub projectors: ProjectorSet,
    pub odd: Option<OddSet>,
}

pub fn build_site(z: f64, setup: &PawSetup, with_odd: bool) -> Result<SitePaw, PawError> {
    let atomic = atomic_spectrum(z, setup.n)?;
    let pseudos = build_pseudo_waves(&atomic, setup)?;
    let projectors = build_projectors(&pseudos, setup)?;
    let odd = if with_odd {
        Some(build_odd_set(setup)?)
    } else {
        None
    };
    Ok(SitePaw {
        z,
        setup: *setup,
        atomic,
        pseudos,
        projectors,
        odd,
    })
}
