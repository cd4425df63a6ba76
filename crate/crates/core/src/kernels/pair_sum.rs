//! Exact evaluation of momentum-space bilinear forms on a grid.
//!
//! For a symmetric kernel `K(p₁, p₂)` the field
//!
//! ```text
//! B(x) = (1/2π) Σ_{k₁,k₂} K(p₁, p₂) φ*(p₁) φ(p₂) e^{i(p₂ − p₁)x} dp²
//! ```
//!
//! is collected by lattice difference `m = k₂ − k₁` first, which turns the
//! naive O(N³) grid evaluation into O(N²) work plus one inverse DFT. The
//! difference frequencies are kept unaliased, so the result is the exact
//! value of the continuous band-limited field at the grid points.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Result;
use crate::grid::{inverse_dft_in_place, MomentumSpectrum};

/// Evaluates `B(x_j)` (or `∂ₓB(x_j)` when `derivative` is set) for every grid
/// point. Pairs whose weight is exactly zero are skipped and never reach the
/// kernel.
pub(crate) fn pair_sum_field<K>(phi: &MomentumSpectrum, kernel: K, derivative: bool) -> Result<Vec<f64>>
where
    K: Fn(f64, f64) -> Result<f64> + Sync,
{
    let g = *phi.grid();
    let n = g.n_points();
    let scale = g.dp() / (2.0 * PI).sqrt();
    let a: Vec<Complex64> = phi.values().iter().map(|v| v * scale).collect();
    let momenta = g.momenta();
    let dp = g.dp();

    // one entry per difference m = -(n-1) ..= n-1, each summed in index order
    let diffs: Vec<Complex64> = (0..2 * n - 1)
        .into_par_iter()
        .map(|idx| {
            let m = idx as i64 - (n as i64 - 1);
            let lo = (-m).max(0) as usize;
            let hi = (n as i64 - m.max(0)) as usize;
            let mut acc = Complex64::new(0.0, 0.0);
            for i1 in lo..hi {
                let i2 = (i1 as i64 + m) as usize;
                let w = a[i1].conj() * a[i2];
                if w.re == 0.0 && w.im == 0.0 {
                    continue;
                }
                acc += w * kernel(momenta[i1], momenta[i2])?;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;

    let mut folded = vec![Complex64::new(0.0, 0.0); n];
    for (idx, c) in diffs.iter().enumerate() {
        let m = idx as i64 - (n as i64 - 1);
        let q = m as f64 * dp;
        let mut term = c * Complex64::from_polar(1.0, q * g.x_min());
        if derivative {
            term *= Complex64::new(0.0, q);
        }
        folded[m.rem_euclid(n as i64) as usize] += term;
    }
    inverse_dft_in_place(&mut folded);
    Ok(folded.into_iter().map(|v| v.re).collect())
}
