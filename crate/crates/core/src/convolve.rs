//! Exact convolution of nonnegative integer sequences.
//!
//! Short inputs use the schoolbook product. Long inputs go through an f64 FFT
//! and are rounded; the rounding residual is checked and the schoolbook
//! product is used instead if it is ever large enough to be ambiguous.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

const SCHOOLBOOK_MIN_LEN: usize = 64;
const MAX_RESIDUAL: f64 = 0.25;

pub(crate) struct Convolver {
    planner: FftPlanner<f64>,
}

impl Convolver {
    pub(crate) fn new() -> Self {
        Convolver {
            planner: FftPlanner::new(),
        }
    }

    /// `out[i + j] += a[i] * b[j]` for all `i`, `j`.
    pub(crate) fn accumulate(&mut self, a: &[u64], b: &[u64], out: &mut [u64]) {
        if a.is_empty() || b.is_empty() {
            return;
        }
        assert!(out.len() + 1 >= a.len() + b.len());
        if a.len().min(b.len()) <= SCHOOLBOOK_MIN_LEN || !self.fft_accumulate(a, b, out) {
            schoolbook(a, b, out);
        }
    }

    fn fft_accumulate(&mut self, a: &[u64], b: &[u64], out: &mut [u64]) -> bool {
        let len = (a.len() + b.len() - 1).next_power_of_two();
        let forward = self.planner.plan_fft_forward(len);
        let inverse = self.planner.plan_fft_inverse(len);
        let load = |xs: &[u64]| {
            let mut buf = vec![Complex::new(0.0, 0.0); len];
            for (slot, &x) in buf.iter_mut().zip(xs) {
                slot.re = x as f64;
            }
            buf
        };
        let mut fa = load(a);
        let mut fb = load(b);
        forward.process(&mut fa);
        forward.process(&mut fb);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x *= *y;
        }
        inverse.process(&mut fa);
        let scale = 1.0 / len as f64;
        let terms = a.len() + b.len() - 1;
        let mut rounded = Vec::with_capacity(terms);
        for z in &fa[..terms] {
            let v = z.re * scale;
            let r = v.round();
            if (v - r).abs() > MAX_RESIDUAL || r < 0.0 {
                return false;
            }
            rounded.push(r as u64);
        }
        for (o, r) in out.iter_mut().zip(rounded) {
            *o += r;
        }
        true
    }
}

fn schoolbook(a: &[u64], b: &[u64], out: &mut [u64]) {
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (o, &y) in out[i..].iter_mut().zip(b) {
            *o += x * y;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        Convolver::new().accumulate(a, b, &mut out);
        out
    }

    #[test]
    fn small_product() {
        assert_eq!(convolve(&[1, 2, 3], &[4, 5]), vec![4, 13, 22, 15]);
    }

    #[test]
    fn long_inputs_match_schoolbook() {
        let a: Vec<u64> = (0..5000).map(|i| (i * 7919 % 1013) as u64).collect();
        let b: Vec<u64> = (0..3000).map(|i| (i * 104729 % 997) as u64).collect();
        let mut expected = vec![0; a.len() + b.len() - 1];
        schoolbook(&a, &b, &mut expected);
        assert_eq!(convolve(&a, &b), expected);
    }

    proptest! {
        #[test]
        fn fft_route_is_exact(
            a in prop::collection::vec(0u64..100_000, 65..400),
            b in prop::collection::vec(0u64..100_000, 65..400),
        ) {
            let mut expected = vec![0; a.len() + b.len() - 1];
            schoolbook(&a, &b, &mut expected);
            let mut got = vec![0; a.len() + b.len() - 1];
            prop_assert!(Convolver::new().fft_accumulate(&a, &b, &mut got));
            prop_assert_eq!(got, expected);
        }
    }
}
