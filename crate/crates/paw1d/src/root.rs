//! Bracketed root finding: uniform sign-change scans followed by Brent
//! refinement.

/// A sign-change bracket `[lo, hi]` with `f(lo) * f(hi) <= 0`.
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

/// Scans `f` on a uniform grid of the given step and collects every
/// sign-change bracket. Exact zeros at grid points are captured by the
/// surrounding bracket.
pub fn scan_brackets<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, step: f64) -> Vec<Bracket> {
    assert!(lo < hi && step > 0.0);
    let mut out = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(x0);
    let n = ((hi - lo) / step).ceil() as usize;
    for i in 1..=n {
        let x1 = (lo + i as f64 * step).min(hi);
        let f1 = f(x1);
        if f0 == 0.0 || (f0 < 0.0) != (f1 < 0.0) {
            out.push(Bracket { lo: x0, hi: x1 });
        }
        x0 = x1;
        f0 = f1;
        if x1 >= hi {
            break;
        }
    }
    out
}

/// Brent's method on a sign-change bracket. Converges to machine precision
/// in the abscissa; the residual `|f(root)|` is then limited only by the
/// function's conditioning.
pub fn brent<F: Fn(f64) -> f64>(f: F, bracket: Bracket, max_iter: usize) -> f64 {
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    assert!(
        fa.signum() != fb.signum(),
        "brent needs a sign change: f({a}) = {fa}, f({b}) = {fb}"
    );
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut mflag = true;
    for _ in 0..max_iter {
        let tol = 2.0 * f64::EPSILON * b.abs().max(1.0);
        if fb == 0.0 || (b - a).abs() <= tol {
            return b;
        }
        let mut s = if fa != fc && fb != fc {
            // inverse quadratic interpolation
            a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let lowlim = (3.0 * a + b) / 4.0;
        let cond = !((s > lowlim.min(b) && s < lowlim.max(b))
            || (mflag && (s - b).abs() < 0.5 * (b - c).abs())
            || (!mflag && (s - b).abs() < 0.5 * d.abs()));
        if cond {
            s = 0.5 * (a + b);
            mflag = true;
        } else {
            mflag = false;
        }
        let fs = f(s);
        d = c - b;
        c = b;
        fc = fb;
        if fa.signum() != fs.signum() {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    b
}
