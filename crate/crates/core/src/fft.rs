//! Row/column complex FFTs over row-major 2D buffers.

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `sum x_n e^{-2 pi i k n / N}`
    Forward,
    /// `sum x_n e^{+2 pi i k n / N}`, unnormalized
    Inverse,
}

/// Cached plans for one `rows x cols` shape.
pub struct Fft2 {
    rows: usize,
    cols: usize,
    row_fwd: Arc<dyn Fft<f64>>,
    row_inv: Arc<dyn Fft<f64>>,
    col_fwd: Arc<dyn Fft<f64>>,
    col_inv: Arc<dyn Fft<f64>>,
}

impl Fft2 {
    pub fn new(rows: usize, cols: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            rows,
            cols,
            row_fwd: planner.plan_fft_forward(cols),
            row_inv: planner.plan_fft_inverse(cols),
            col_fwd: planner.plan_fft_forward(rows),
            col_inv: planner.plan_fft_inverse(rows),
        }
    }

    /// Transforms every row (length `cols`) in place.
    pub fn rows(&self, data: &mut [Complex64], dir: Direction) {
        debug_assert_eq!(data.len(), self.rows * self.cols);
        let plan = match dir {
            Direction::Forward => &self.row_fwd,
            Direction::Inverse => &self.row_inv,
        };
        plan.process(data);
    }

    /// Transforms every column (length `rows`) in place.
    pub fn cols(&self, data: &mut [Complex64], dir: Direction) {
        debug_assert_eq!(data.len(), self.rows * self.cols);
        let plan = match dir {
            Direction::Forward => &self.col_fwd,
            Direction::Inverse => &self.col_inv,
        };
        let mut t = transpose(data, self.rows, self.cols);
        plan.process(&mut t);
        let back = transpose(&t, self.cols, self.rows);
        data.copy_from_slice(&back);
    }

    pub fn both(&self, data: &mut [Complex64], dir: Direction) {
        self.rows(data, dir);
        self.cols(data, dir);
    }
}

fn transpose(data: &[Complex64], rows: usize, cols: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); data.len()];
    for r in 0..rows {
        for c in 0..cols {
            out[c * rows + r] = data[r * cols + c];
        }
    }
    out
}

/// Maps a centered frequency index into `0..n` FFT storage order.
#[inline]
pub fn fft_index(centered: i64, n: usize) -> usize {
    centered.rem_euclid(n as i64) as usize
}

/// Centered frequency for FFT storage index `idx`, in `[-n/2, n/2)`.
#[inline]
pub fn centered_freq(idx: usize, n: usize) -> i64 {
    let i = idx as i64;
    let n = n as i64;
    if i >= n / 2 {
        i - n
    } else {
        i
    }
}
