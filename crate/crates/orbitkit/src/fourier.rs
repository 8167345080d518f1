//! Numeric verification harness for the partial-Fourier identities and the
//! operator conjugation, on 2-d grids with spectral accuracy.
//!
//! The primary grid samples (x, q) on a box; the p-axis is the spectral
//! dual of the x-axis. Transforms approximate the continuous unitary
//! Fourier transform `(1/sqrt(2 pi)) integral e^{-ipx} f dx` via phased
//! FFTs, so identities hold to rounding for well-localized test functions.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use orbitkit_core::liealg::{aff_r_params, AlgElement};
use orbitkit_core::scalar::Rat;
use num_traits::ToPrimitive;

/// One axis of a sampled box: `n` points from `min` with spacing `dx`.
#[derive(Clone, Copy, Debug)]
pub struct Axis {
    pub n: usize,
    pub min: f64,
    pub dx: f64,
}

impl Axis {
    /// Symmetric axis spanning `[-extent, extent)`.
    pub fn symmetric(n: usize, extent: f64) -> Self {
        Axis {
            n,
            min: -extent,
            dx: 2.0 * extent / n as f64,
        }
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.min + i as f64 * self.dx
    }

    /// The spectrally dual axis (frequency grid of the same length).
    pub fn dual(&self) -> Axis {
        let dk = 2.0 * PI / (self.n as f64 * self.dx);
        Axis {
            n: self.n,
            min: -(self.n as f64 / 2.0) * dk,
            dx: dk,
        }
    }
}

/// Grid data in row-major layout: `data[iq * x.n + ix]`.
#[derive(Clone)]
pub struct Grid2 {
    pub x: Axis,
    pub q: Axis,
    pub data: Vec<Complex64>,
}

impl Grid2 {
    pub fn sample(x: Axis, q: Axis, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(x.n * q.n);
        for iq in 0..q.n {
            let qv = q.coord(iq);
            for ix in 0..x.n {
                data.push(f(x.coord(ix), qv));
            }
        }
        Grid2 { x, q, data }
    }

    pub fn zeros_like(&self) -> Grid2 {
        Grid2 {
            x: self.x,
            q: self.q,
            data: vec![Complex64::default(); self.data.len()],
        }
    }

    /// Pointwise map with access to the (x, q) coordinates.
    pub fn map(&self, f: impl Fn(f64, f64, Complex64) -> Complex64) -> Grid2 {
        let mut out = self.clone();
        for iq in 0..self.q.n {
            let qv = self.q.coord(iq);
            for ix in 0..self.x.n {
                let idx = iq * self.x.n + ix;
                out.data[idx] = f(self.x.coord(ix), qv, self.data[idx]);
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Grid2) -> Grid2 {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }

    pub fn add(&self, rhs: &Grid2) -> Grid2 {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        out
    }

    pub fn l2(&self) -> f64 {
        let s: f64 = self.data.iter().map(|v| v.norm_sqr()).sum();
        (s * self.x.dx * self.q.dx).sqrt()
    }

    /// Relative L2 distance, with an absolute fallback when `rhs` vanishes.
    pub fn rel_l2(&self, rhs: &Grid2) -> f64 {
        let d = self.sub(rhs).l2();
        let n = rhs.l2();
        if n == 0.0 {
            d
        } else {
            d / n
        }
    }
}

/// Phased-FFT continuous Fourier transforms; caches plans per length.
pub struct Transformer {
    planner: FftPlanner<f64>,
}

impl Default for Transformer {
    fn default() -> Self {
        Transformer {
            planner: FftPlanner::new(),
        }
    }
}

impl Transformer {
    pub fn new() -> Self {
        Self::default()
    }

    fn plan(&mut self, n: usize, sign: f64) -> Arc<dyn Fft<f64>> {
        let dir = if sign < 0.0 {
            FftDirection::Forward
        } else {
            FftDirection::Inverse
        };
        self.planner.plan_fft(n, dir)
    }

    /// `out[m] = (dx/sqrt(2 pi)) sum_j in[j] exp(sign * i * k_m * x_j)` on
    /// the dual axis, with `k_m = (m - n/2) dk`.
    pub fn ft_row(&mut self, axis: Axis, row: &[Complex64], sign: f64) -> Vec<Complex64> {
        let n = axis.n;
        assert!(n.is_power_of_two(), "axis length must be a power of two");
        let fft = self.plan(n, sign);
        let mut buf = row.to_vec();
        fft.process(&mut buf);
        let dual = axis.dual();
        let scale = axis.dx / (2.0 * PI).sqrt();
        let mut out = vec![Complex64::default(); n];
        for (m, slot) in out.iter_mut().enumerate() {
            let m_signed = m as i64 - (n / 2) as i64;
            let bin = m_signed.rem_euclid(n as i64) as usize;
            let k = dual.coord(m);
            let phase = (Complex64::i() * sign * k * axis.min).exp();
            *slot = buf[bin] * phase * scale;
        }
        out
    }

    /// Transform along the x-direction of a grid; the output grid lives on
    /// the dual axis.
    pub fn ft_x(&mut self, g: &Grid2, sign: f64) -> Grid2 {
        let mut out = Grid2 {
            x: g.x.dual(),
            q: g.q,
            data: vec![Complex64::default(); g.data.len()],
        };
        for iq in 0..g.q.n {
            let row = &g.data[iq * g.x.n..(iq + 1) * g.x.n];
            let t = self.ft_row(g.x, row, sign);
            out.data[iq * g.x.n..(iq + 1) * g.x.n].copy_from_slice(&t);
        }
        out
    }

    /// Spectral x-derivative of order `k` (roundtrip through the dual).
    pub fn d_x(&mut self, g: &Grid2, k: u32) -> Grid2 {
        let mut hat = self.ft_x(g, -1.0);
        let dual = hat.x;
        for iq in 0..hat.q.n {
            for im in 0..dual.n {
                let mult = (Complex64::i() * dual.coord(im)).powu(k);
                hat.data[iq * dual.n + im] *= mult;
            }
        }
        self.ft_x(&hat, 1.0)
    }

    /// Spectral q-derivative of order `k` (column transforms).
    pub fn d_q(&mut self, g: &Grid2, k: u32) -> Grid2 {
        let nx = g.x.n;
        let nq = g.q.n;
        let mut out = g.clone();
        let dual = g.q.dual();
        let mut col = vec![Complex64::default(); nq];
        for ix in 0..nx {
            for iq in 0..nq {
                col[iq] = g.data[iq * nx + ix];
            }
            let mut hat = self.ft_row(g.q, &col, -1.0);
            for (im, v) in hat.iter_mut().enumerate() {
                *v *= (Complex64::i() * dual.coord(im)).powu(k);
            }
            let back = self.ft_row(dual, &hat, 1.0);
            for iq in 0..nq {
                out.data[iq * nx + ix] = back[iq];
            }
        }
        out
    }
}

/// The default Gaussian test function `exp(-(x^2 + q^2)/2)`.
pub fn gaussian(x: f64, q: f64) -> Complex64 {
    Complex64::new((-(x * x + q * q) / 2.0).exp(), 0.0)
}

/// Default harness box: x, q in [-20, 20), with `nx` transform samples and
/// 256 q-samples.
pub fn default_grid(nx: usize) -> (Axis, Axis) {
    (Axis::symmetric(nx, 20.0), Axis::symmetric(256, 20.0))
}

/// Identity selector for the partial-Fourier checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FourierId {
    /// `d_p Finv(u) = i Finv(x u)`.
    One,
    /// `P^k(Z~, Finv(u)) = (-1)^k beta e^q d_p^k Finv(u)` for k >= 2.
    Three { k: u32 },
}

/// Relative L2 residual of the selected identity on a Gaussian test
/// function. Both sides are evaluated through different spectral routes.
pub fn fourier_identity_residual(id: FourierId, nx: usize) -> f64 {
    let (xaxis, qaxis) = default_grid(nx);
    let mut t = Transformer::new();
    let u = Grid2::sample(xaxis, qaxis, gaussian);
    // v = Finv_p(u): lives on the dual axis (p, q)
    let v = t.ft_x(&u, 1.0);
    match id {
        FourierId::One => {
            // lhs: spectral derivative of the computed v
            let lhs = t.d_x(&v, 1);
            // rhs: i * Finv(x u) straight from u
            let xu = u.map(|x, _, val| Complex64::i() * x * val);
            let rhs = t.ft_x(&xu, 1.0);
            lhs.rel_l2(&rhs)
        }
        FourierId::Three { k } => {
            assert!(k >= 2, "identity holds for k >= 2");
            // Z = Y: the Hamiltonian is e^q, whose mixed (p, q) derivatives
            // of every order vanish except the pure-q ones, so the full
            // bidifferential reduces to the j = 0 term. lhs evaluates it by
            // spectral differentiation of v.
            let dkv = t.d_x(&v, k);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let lhs = dkv.map(|_, q, val| sign * q.exp() * val);
            // rhs: multiplier route from u
            let mult = u.map(|x, _, val| (Complex64::i() * x).powu(k) * val);
            let dk_direct = t.ft_x(&mult, 1.0);
            let rhs = dk_direct.map(|_, q, val| sign * q.exp() * val);
            lhs.rel_l2(&rhs)
        }
    }
}

/// Relative L2 residual of the conjugation identity
/// `F_p . l_Z . Finv_p = lhat_Z` applied to a Gaussian, for `Z` in the
/// real affine algebra.
///
/// `l_Z` is applied through its star series: the order-0 and order-1 terms
/// directly, and the `r >= 2` tail (which only the `beta e^q` part
/// produces) summed to convergence through the scalar series
/// `S(x) = sum_{r=2}^{80} (-x/2)^r / r!` in the transform domain.
pub fn conjugation_residual(z: &AlgElement, nx: usize) -> Result<f64, String> {
    let (alpha_r, beta_r) = aff_r_params(z).map_err(|e| e.to_string())?;
    let alpha = rat_to_f64(&alpha_r);
    let beta = rat_to_f64(&beta_r);
    let (xaxis, qaxis) = default_grid(nx);
    let mut t = Transformer::new();
    let u = Grid2::sample(xaxis, qaxis, gaussian);
    let v = t.ft_x(&u, 1.0); // v(p, q) on the dual axis

    // i Z~ v = i (alpha p + beta e^q) v
    let term0 = v.map(|p, q, val| Complex64::i() * (alpha * p + beta * q.exp()) * val);
    // i/(2i) P^1(Z~, v) = (alpha d_q v - beta e^q d_p v) / 2
    let dqv = t.d_q(&v, 1);
    let dpv = {
        let xu = u.map(|x, _, val| Complex64::i() * x * val);
        t.ft_x(&xu, 1.0)
    };
    let term1 = dqv
        .map(|_, _, val| 0.5 * alpha * val)
        .sub(&dpv.map(|_, q, val| 0.5 * beta * q.exp() * val));
    // tail: i beta e^q Finv(S(x) u)
    let tail = if beta == 0.0 {
        v.zeros_like()
    } else {
        let su = u.map(|x, _, val| tail_series(x) * val);
        let fsu = t.ft_x(&su, 1.0);
        fsu.map(|_, q, val| Complex64::i() * beta * q.exp() * val)
    };
    let w = term0.add(&term1).add(&tail);
    let lhs = t.ft_x(&w, -1.0);

    // rhs: lhat_Z u = alpha (d_q/2 - d_x) u + i beta e^{q - x/2} u
    let dqu = t.d_q(&u, 1);
    let dxu = t.d_x(&u, 1);
    let rhs = dqu
        .map(|_, _, val| 0.5 * alpha * val)
        .sub(&dxu.map(|_, _, val| alpha * val))
        .add(&u.map(|x, q, val| Complex64::i() * beta * (q - x / 2.0).exp() * val));

    Ok(lhs.rel_l2(&rhs))
}

/// `sum_{r=2}^{80} (-x/2)^r / r!`, the convergent remainder of `e^{-x/2}`
/// past its linear part.
fn tail_series(x: f64) -> f64 {
    let base = -x / 2.0;
    let mut term = base;
    let mut acc = 0.0f64;
    for r in 2..=80u32 {
        term *= base / r as f64;
        acc += term;
    }
    acc
}

fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbitkit_core::liealg::LieAlgebraSpec;
    use orbitkit_core::scalar::ScalarQ;

    #[test]
    fn roundtrip_is_identity() {
        let (x, q) = default_grid(512);
        let mut t = Transformer::new();
        let u = Grid2::sample(x, q, gaussian);
        let hat = t.ft_x(&u, 1.0);
        let back = t.ft_x(&hat, -1.0);
        assert!(u.rel_l2(&back) < 1e-13);
    }

    #[test]
    fn spectral_derivative_matches_analytic() {
        let (x, q) = default_grid(512);
        let mut t = Transformer::new();
        let u = Grid2::sample(x, q, gaussian);
        let du = t.d_x(&u, 1);
        let exact = u.map(|xv, _, val| -xv * val);
        assert!(du.rel_l2(&exact) < 1e-12);
        let dq2 = t.d_q(&u, 2);
        let exact2 = u.map(|_, qv, val| (qv * qv - 1.0) * val);
        assert!(dq2.rel_l2(&exact2) < 1e-11);
    }

    #[test]
    fn tail_series_matches_exponential() {
        for x in [-20.0, -3.0, 0.0, 1.0, 7.5, 20.0] {
            let expect = (-x / 2.0f64).exp() - 1.0 + x / 2.0;
            assert!(
                (tail_series(x) - expect).abs() <= 1e-12 * expect.abs().max(1.0),
                "x = {x}"
            );
        }
    }

    #[test]
    fn identities_small_grid() {
        // quick versions at n = 512; the acceptance suite runs n = 4096
        assert!(fourier_identity_residual(FourierId::One, 512) <= 1e-6);
        assert!(fourier_identity_residual(FourierId::Three { k: 2 }, 512) <= 1e-6);
    }

    #[test]
    fn conjugation_small_grid() {
        let alg = LieAlgebraSpec::aff_r();
        let x = alg.basis_element(0).unwrap();
        let y = alg.basis_element(1).unwrap();
        let rx = conjugation_residual(&x, 512).unwrap();
        assert!(rx <= 1e-4, "X residual {rx}");
        let ry = conjugation_residual(&y, 512).unwrap();
        assert!(ry <= 1e-4, "Y residual {ry}");
    }

    #[test]
    fn zero_generator_gives_zero() {
        let alg = LieAlgebraSpec::aff_r();
        let zero = alg
            .element(vec![ScalarQ::zero(), ScalarQ::zero()])
            .unwrap();
        let r = conjugation_residual(&zero, 256).unwrap();
        assert_eq!(r, 0.0);
    }
}
