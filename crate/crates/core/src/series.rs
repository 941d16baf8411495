//! Truncated exponential series used by the safe-edge estimates.

/// `S_i(x) = Σ_{m=0}^{i} (-x)^m / m!`.
pub fn truncated_exp(x: f64, i: usize) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..=i {
        term *= -x / m as f64;
        sum += term;
    }
    sum
}

/// Smallest odd `i` such that the Lagrange remainder `(ℓ²)^{i+1}/(i+1)!`
/// is at most `e^{-ℓ²}/3`, which bounds `|S_i(x) - e^{-x}|` on `[0, ℓ²]`.
pub fn i_star(ell: usize) -> usize {
    let x = (ell * ell) as f64;
    let target = (-x).exp() / 3.0;
    let mut i = 1usize;
    loop {
        // log of x^{i+1}/(i+1)! to avoid overflow
        let log_rem = (i + 1) as f64 * x.ln() - ln_factorial(i + 1);
        if log_rem <= target.ln() {
            return i;
        }
        i += 2;
    }
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Largest deviation of `S_i` from `e^{-x}` over a uniform grid on `[0, hi]`.
pub fn sup_deviation(i: usize, hi: f64, steps: usize) -> f64 {
    (0..=steps)
        .map(|s| {
            let x = hi * s as f64 / steps as f64;
            (truncated_exp(x, i) - (-x).exp()).abs()
        })
        .fold(0.0, f64::max)
}
