use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

/// Magnitude of the analytic signal of `x` (mean removed).
pub fn hilbert_envelope(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n == 0 {
        return Vec::new();
    }
    let mean = x.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex<f64>> = x.iter().map(|&v| Complex::new(v - mean, 0.0)).collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);
    // one-sided spectrum: keep DC and Nyquist, double positive frequencies
    let half = n / 2;
    for (k, v) in buf.iter_mut().enumerate() {
        let w = if k == 0 || (n.is_multiple_of(2) && k == half) {
            1.0
        } else if k <= (n - 1) / 2 {
            2.0
        } else {
            0.0
        };
        *v *= w;
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    buf.iter().map(|v| v.norm() / n as f64).collect()
}

/// Centered moving average with a window of `2·half + 1` points, truncated at the ends.
pub fn moving_average(x: &[f64], half: usize) -> Vec<f64> {
    let n = x.len();
    let mut prefix = vec![0.0; n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i] + x[i];
    }
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(n);
            (prefix[hi] - prefix[lo]) / (hi - lo) as f64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_of_modulated_carrier() {
        let n = 4096;
        let x: Vec<f64> = (0..n)
            .map(|k| {
                let t = k as f64 / n as f64;
                let env = 1.0 + 0.5 * (2.0 * std::f64::consts::PI * 3.0 * t).cos();
                env * (2.0 * std::f64::consts::PI * 400.0 * t).cos()
            })
            .collect();
        let e = hilbert_envelope(&x);
        for k in (0..n).step_by(97) {
            let t = k as f64 / n as f64;
            let want = 1.0 + 0.5 * (2.0 * std::f64::consts::PI * 3.0 * t).cos();
            assert!((e[k] - want).abs() < 1e-9, "{k}: {} vs {want}", e[k]);
        }
    }

    #[test]
    fn moving_average_of_constant() {
        assert_eq!(moving_average(&[2.0; 7], 2), vec![2.0; 7]);
        assert_eq!(moving_average(&[0.0, 3.0, 0.0], 1), vec![1.5, 1.0, 1.5]);
    }
}
