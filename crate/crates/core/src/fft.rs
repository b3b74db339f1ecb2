//! Radix-2 FFT and fast evaluation of series on circles.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::C64;

/// In-place forward DFT, `X[k] = sum_j x[j] exp(-2 pi i j k / n)`.
///
/// `data.len()` must be a power of two.
pub fn fft_in_place(data: &mut [C64]) {
    transform(data, -1.0);
}

/// In-place unnormalized inverse DFT (`+i` exponent).
pub fn ifft_in_place(data: &mut [C64]) {
    transform(data, 1.0);
}

fn transform(data: &mut [C64], sign: f64) {
    let n = data.len();
    if n <= 1 {
        return;
    }
    assert!(n.is_power_of_two(), "fft length must be a power of two");

    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }

    let twiddles = twiddles(n, sign);

    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let w = twiddles[k * stride];
                let a = data[start + k];
                let b = data[start + k + half] * w;
                data[start + k] = a + b;
                data[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
}

/// `exp(sign 2πi k/n)` for `k < n/2`. Each entry comes from an exact angle
/// in the first octant; the rest follow by the exact reflections
/// `θ ↦ π/2 - θ` and `θ ↦ θ + π/2`.
fn twiddles(n: usize, sign: f64) -> Vec<C64> {
    let half = n / 2;
    if n < 8 {
        return (0..half)
            .map(|k| {
                let angle = sign * 2.0 * PI * k as f64 / n as f64;
                C64::new(angle.cos(), angle.sin())
            })
            .collect();
    }
    let quarter = n / 4;
    let mut w = vec![C64::new(0.0, 0.0); half];
    for k in 0..=n / 8 {
        let angle = 2.0 * PI * k as f64 / n as f64;
        let (s, c) = (angle.sin(), angle.cos());
        w[k] = C64::new(c, sign * s);
        w[quarter - k] = C64::new(s, sign * c);
    }
    for k in quarter..half {
        let v = w[k - quarter];
        w[k] = C64::new(-sign * v.im, sign * v.re);
    }
    w
}

/// Values `sum_k c_k (r e^{i t_j})^k` at `t_j = 2 pi j / n`, `j = 0..n`.
///
/// Uses coefficient folding and one inverse FFT when `n` is a power of two,
/// Horner evaluation otherwise. Folding is exact at the sample points.
pub fn sample_on_circle(coeffs: &[C64], r: f64, n: usize) -> Vec<C64> {
    if n == 0 {
        return Vec::new();
    }
    if n.is_power_of_two() {
        let mut bins = vec![C64::new(0.0, 0.0); n];
        let mut rk = 1.0;
        for (k, c) in coeffs.iter().enumerate() {
            bins[k & (n - 1)] += c * rk;
            rk *= r;
        }
        ifft_in_place(&mut bins);
        bins
    } else {
        (0..n)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / n as f64;
                let z = C64::from_polar(r, t);
                coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * z + c)
            })
            .collect()
    }
}

/// Smallest power of two that is at least `n` (and at least 1).
pub fn next_power_of_two(n: usize) -> usize {
    n.max(1).next_power_of_two()
}
