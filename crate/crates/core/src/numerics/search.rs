//! One-dimensional maximisation helpers for smooth time traces.

/// Locates a maximum inside `[lo, hi]` by bisection on its derivative.
///
/// `slope` must be non-negative at `lo` and non-positive at `hi`; otherwise
/// the better endpoint is returned.
pub fn refine_maximum<V, S>(value: V, slope: S, mut lo: f64, mut hi: f64) -> f64
where
    V: Fn(f64) -> f64,
    S: Fn(f64) -> f64,
{
    let (s_lo, s_hi) = (slope(lo), slope(hi));
    if s_lo < 0.0 || s_hi > 0.0 {
        let mid = 0.5 * (lo + hi);
        return [lo, mid, hi]
            .into_iter()
            .max_by(|a, b| value(*a).total_cmp(&value(*b)))
            .unwrap_or(mid);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = slope(mid);
        if s == 0.0 {
            return mid;
        }
        if s > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Uniform grid of `points` samples on `[0, end]` (both ends included).
pub fn time_grid(end: f64, points: usize) -> Vec<f64> {
    let points = points.max(2);
    (0..points)
        .map(|i| end * i as f64 / (points - 1) as f64)
        .collect()
}

/// Indices of interior local maxima of `samples` (plus the last sample when
/// the trace is still rising there).
pub fn local_maxima(samples: &[f64]) -> Vec<usize> {
    let n = samples.len();
    let mut out = Vec::new();
    for i in 0..n {
        let left = if i == 0 { f64::NEG_INFINITY } else { samples[i - 1] };
        let right = if i + 1 == n { f64::NEG_INFINITY } else { samples[i + 1] };
        if samples[i] >= left && samples[i] >= right && (i > 0 || n == 1) {
            out.push(i);
        }
    }
    out
}
