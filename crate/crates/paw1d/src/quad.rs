//! Deterministic composite Gauss-Legendre quadrature over intervals with
//! declared kink points.
//!
//! All inner products of the PAW construction reduce to integrals of
//! piecewise-analytic functions whose kinks are known in advance (the sites,
//! the cut-off edges). Splitting at the kinks restores spectral accuracy, so
//! a fixed-order rule per piece is enough and keeps results bit-reproducible.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// An integration interval `[lo, hi]` with sorted interior kink points.
#[derive(Debug, Clone)]
pub struct Partition {
    lo: f64,
    hi: f64,
    kinks: Vec<f64>,
}

impl Partition {
    /// Builds a partition; kinks outside `(lo, hi)` are dropped, the rest
    /// sorted and deduplicated.
    pub fn new(lo: f64, hi: f64, kinks: &[f64]) -> Self {
        assert!(lo < hi, "empty integration interval");
        let mut ks: Vec<f64> = kinks.iter().copied().filter(|&k| k > lo && k < hi).collect();
        ks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ks.dedup();
        Partition { lo, hi, kinks: ks }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }

    /// Smooth pieces as consecutive `(lo, hi)` pairs.
    pub fn pieces(&self) -> Vec<(f64, f64)> {
        let mut edges = Vec::with_capacity(self.kinks.len() + 2);
        edges.push(self.lo);
        edges.extend_from_slice(&self.kinks);
        edges.push(self.hi);
        edges.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// A refined partition in which no piece is longer than `max_len`.
    /// Used for oscillatory integrands (Fourier coefficients), where the
    /// caller bounds the panel length by one oscillation period.
    pub fn with_max_piece(&self, max_len: f64) -> Partition {
        assert!(max_len > 0.0);
        let mut kinks = Vec::new();
        for (a, b) in self.pieces() {
            let panels = ((b - a) / max_len).ceil().max(1.0) as usize;
            for p in 1..panels {
                kinks.push(a + (b - a) * p as f64 / panels as f64);
            }
            if b < self.hi {
                kinks.push(b);
            }
        }
        Partition { lo: self.lo, hi: self.hi, kinks }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, cached per order.
pub fn gauss_legendre(n: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    assert!(n >= 2, "need at least 2 nodes");
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(compute_gauss_legendre(n)))
        .clone()
}

/// Newton iteration on the Legendre polynomial, seeded by the Chebyshev-like
/// asymptotic root estimate. Exact symmetry is enforced by mirroring.
fn compute_gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = d;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x.abs();
        nodes[n - 1 - i] = x.abs();
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss-Legendre integral of `f` over the partition, `nodes`
/// points per smooth piece. Exact for polynomials of degree `2*nodes - 1`
/// on each piece.
pub fn integrate<F: Fn(f64) -> f64>(f: F, partition: &Partition, nodes_per_piece: usize) -> f64 {
    let rule = gauss_legendre(nodes_per_piece);
    let (xs, ws) = (&rule.0, &rule.1);
    let mut total = 0.0;
    for (a, b) in partition.pieces() {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut piece = 0.0;
        for (&x, &w) in xs.iter().zip(ws.iter()) {
            piece += w * f(mid + half * x);
        }
        total += half * piece;
    }
    total
}

/// Default node count per smooth piece used throughout the crate.
pub const DEFAULT_NODES: usize = 64;
