//! The irreducible unitary representations of the real affine group's
//! identity component and of the simply connected cover of the complex
//! affine group: closed-form actions, group-law and unitarity checks, and
//! the infinitesimal-generator match against the conjugated operators.
//!
//! The function space for the real case is L^2 of the punctured line with
//! the dilation-invariant measure dy/|y|, discretized on log-spaced grids
//! (one per half-line) so that lattice dilations act by exact index shifts.
//! Checks evaluate analytic test functions pointwise, which keeps the
//! residuals at rounding level.

use alloc::string::String;

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;

use crate::liealg::{self, AlgElement, LieError};

#[derive(Clone, PartialEq, Debug)]
pub enum RepError {
    NonPositiveDilation(f64),
    ZeroDilation,
    OffLattice { a: f64 },
    Lie(LieError),
}

impl From<LieError> for RepError {
    fn from(e: LieError) -> Self {
        RepError::Lie(e)
    }
}

impl fmt::Display for RepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepError::NonPositiveDilation(a) => {
                write!(f, "dilation parameter a = {a} must be positive")
            }
            RepError::ZeroDilation => write!(f, "dilation parameter a must be nonzero"),
            RepError::OffLattice { a } => write!(
                f,
                "dilation a = {a} is not a power of the grid ratio; use interpolating mode"
            ),
            RepError::Lie(e) => write!(f, "{e}"),
        }
    }
}

/// Element of the identity component: the map `x -> a x + b` with `a > 0`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct GroupElementAffR {
    a: f64,
    b: f64,
}

impl GroupElementAffR {
    pub fn new(a: f64, b: f64) -> Result<Self, RepError> {
        if !(a > 0.0) {
            return Err(RepError::NonPositiveDilation(a));
        }
        Ok(GroupElementAffR { a, b })
    }

    pub fn identity() -> Self {
        GroupElementAffR { a: 1.0, b: 0.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `(a1, b1)(a2, b2) = (a1 a2, b1 + a1 b2)`, read off the 2x2 matrices.
    pub fn compose(&self, rhs: &GroupElementAffR) -> GroupElementAffR {
        GroupElementAffR {
            a: self.a * rhs.a,
            b: self.b + self.a * rhs.b,
        }
    }

    /// `exp(t (alpha X + beta Y)) = (e^{t alpha}, beta (e^{t alpha} - 1)/alpha)`,
    /// the 2x2 matrix exponential.
    pub fn exp(z: &AlgElement, t: f64) -> Result<Self, RepError> {
        let (alpha_r, beta_r) = liealg::aff_r_params(z)?;
        let alpha = rat_f64(&alpha_r);
        let beta = rat_f64(&beta_r);
        let a = Float::exp(t * alpha);
        let b = if alpha == 0.0 {
            beta * t
        } else {
            beta * (a - 1.0) / alpha
        };
        Ok(GroupElementAffR { a, b })
    }
}

fn rat_f64(r: &crate::scalar::Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Element of the simply connected cover of the complex affine group, in
/// the logarithm coordinates `(z, w)`: the underlying map is
/// `x -> e^w x + z`, with `w` remembered exactly (no branch cut).
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct GroupElementAffCCover {
    pub z: Complex64,
    pub w: Complex64,
}

impl GroupElementAffCCover {
    pub fn identity() -> Self {
        GroupElementAffCCover {
            z: Complex64::new(0.0, 0.0),
            w: Complex64::new(0.0, 0.0),
        }
    }

    pub fn translation(z: Complex64) -> Self {
        GroupElementAffCCover {
            z,
            w: Complex64::new(0.0, 0.0),
        }
    }

    pub fn dilation(w: Complex64) -> Self {
        GroupElementAffCCover {
            z: Complex64::new(0.0, 0.0),
            w,
        }
    }

    /// Composition on the subgroups where it is unambiguous in these
    /// coordinates: two translations, or two w-only elements.
    pub fn compose_translations(&self, rhs: &Self) -> Self {
        GroupElementAffCCover {
            z: self.z + rhs.z,
            w: Complex64::new(0.0, 0.0),
        }
    }

    pub fn compose_dilations(&self, rhs: &Self) -> Self {
        GroupElementAffCCover {
            z: Complex64::new(0.0, 0.0),
            w: self.w + rhs.w,
        }
    }
}

/// Samples of a function on the punctured line, log-spaced on each
/// half-line: `y = sign * exp(s_min + i * ds)`. The quadrature weight of
/// every sample under dy/|y| is ds.
#[derive(Clone, Debug)]
pub struct SampledFunction {
    pub s_min: f64,
    pub ds: f64,
    pub n_per_side: usize,
    /// positive half-line samples, then negative half-line samples
    pub values: Vec<Complex64>,
}

impl SampledFunction {
    /// Sample an analytic function given as a closure.
    pub fn sample(
        s_min: f64,
        ds: f64,
        n_per_side: usize,
        f: impl Fn(f64) -> Complex64,
    ) -> Self {
        let mut values = Vec::with_capacity(2 * n_per_side);
        for side in [1.0f64, -1.0] {
            for i in 0..n_per_side {
                let y = side * Float::exp(s_min + i as f64 * ds);
                values.push(f(y));
            }
        }
        SampledFunction {
            s_min,
            ds,
            n_per_side,
            values,
        }
    }

    pub fn grid_points(&self) -> Vec<f64> {
        let mut ys = Vec::with_capacity(2 * self.n_per_side);
        for side in [1.0f64, -1.0] {
            for i in 0..self.n_per_side {
                ys.push(side * Float::exp(self.s_min + i as f64 * self.ds));
            }
        }
        ys
    }

    /// L^2 norm under dy/|y| (log-uniform quadrature).
    pub fn norm(&self) -> f64 {
        let sum: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        Float::sqrt(sum * self.ds)
    }
}

/// `(S(g) f)(y) = e^{i b y} f(a y)` on a sampled function. The dilation
/// must be a lattice power of the grid ratio (exact index shift); values
/// shifted in from outside the grid are taken as zero.
pub fn rep_s(g: &GroupElementAffR, f: &SampledFunction) -> Result<SampledFunction, RepError> {
    if !(g.a > 0.0) {
        return Err(RepError::NonPositiveDilation(g.a));
    }
    let shift_f = Float::ln(g.a) / f.ds;
    let shift = Float::round(shift_f);
    if Float::abs(shift_f - shift) > 1e-9 {
        return Err(RepError::OffLattice { a: g.a });
    }
    let shift = shift as i64;
    let n = f.n_per_side;
    let mut out = f.clone();
    for (side_idx, side) in [1.0f64, -1.0].into_iter().enumerate() {
        for i in 0..n {
            let j = i as i64 + shift; // f(a y_i) = f(y_{i+shift})
            let v = if j >= 0 && (j as usize) < n {
                f.values[side_idx * n + j as usize]
            } else {
                Complex64::new(0.0, 0.0)
            };
            let y = side * Float::exp(f.s_min + i as f64 * f.ds);
            out.values[side_idx * n + i] = (Complex64::i() * g.b * y).exp() * v;
        }
    }
    Ok(out)
}

/// `(S(g) f)(y)` for an analytic `f`, at one point.
pub fn rep_s_analytic(
    g: &GroupElementAffR,
    f: &impl Fn(f64) -> Complex64,
    y: f64,
) -> Complex64 {
    (Complex64::i() * g.b * y).exp() * f(g.a * y)
}

/// The unitary characters of the full affine group:
/// `U^eps_lambda(a, b) = |a|^{i lambda} sgn(a)^eps`.
pub fn rep_char_u(eps: u8, lambda: f64, a: f64, _b: f64) -> Result<Complex64, RepError> {
    if a == 0.0 {
        return Err(RepError::ZeroDilation);
    }
    let modulus = (Complex64::i() * lambda * Float::ln(Float::abs(a))).exp();
    let sign = if a < 0.0 && eps % 2 == 1 { -1.0 } else { 1.0 };
    Ok(modulus * sign)
}

/// A point of R x S^1 written as a complex number with `Im` in [0, 2 pi).
/// `x (+) z` renormalizes the imaginary part and `floor_increment` counts
/// the winding: the phase cocycle of the cover.
pub fn x_plus_z(x: Complex64, z: Complex64) -> (Complex64, i64) {
    let im = x.im + z.im;
    let k = Float::floor(im / (2.0 * PI)) as i64;
    (
        Complex64::new(x.re + z.re, im - 2.0 * PI * k as f64),
        k,
    )
}

/// `(T_theta(z, w) f)(x) = exp(i(Re(w x) + 2 pi theta floor(Im(x + z)/2 pi)))
/// f(x (+) z)`, evaluated analytically at one point. `theta` lives in
/// [0, 1): the character of the winding.
pub fn rep_t_theta_analytic(
    theta: f64,
    g: &GroupElementAffCCover,
    f: &impl Fn(Complex64) -> Complex64,
    x: Complex64,
) -> Complex64 {
    let (shifted, winding) = x_plus_z(x, g.z);
    let phase = Complex64::i() * ((g.w * x).re + 2.0 * PI * theta * winding as f64);
    phase.exp() * f(shifted)
}

/// Default analytic test function on the punctured line: a Gaussian in
/// `s = ln |y|` (width chosen so the generator check's finite-difference
/// error stays comfortably inside its tolerances).
pub fn default_test_function() -> impl Fn(f64) -> Complex64 + Copy {
    |y: f64| {
        if y == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let s = Float::ln(Float::abs(y));
        Complex64::new(Float::exp(-1.5 * s * s), 0.0)
    }
}

/// Default analytic test function on R x S^1: Gaussian in the real part,
/// smooth and 2 pi periodic in the imaginary part.
pub fn default_torus_function() -> impl Fn(Complex64) -> Complex64 + Copy {
    |x: Complex64| {
        let g = Float::exp(-x.re * x.re);
        let angular = 0.7 + 0.3 * Float::cos(x.im);
        let phase = (Complex64::i() * (0.2 * Float::sin(x.im))).exp();
        phase * g * angular
    }
}

/// Default evaluation grid for representation residuals on the punctured
/// line: s in [-16, 16), 2 x 2048 points.
pub fn default_grid() -> (f64, f64, usize) {
    (-16.0, 1.0 / 64.0, 2048)
}

/// Sup-norm residual of `S(g1) S(g2) f = S(g1 g2) f` over the default
/// grid, analytic evaluation.
pub fn group_law_check_s(
    g1: &GroupElementAffR,
    g2: &GroupElementAffR,
    f: &impl Fn(f64) -> Complex64,
) -> f64 {
    let (s_min, ds, n) = default_grid();
    let composed = g1.compose(g2);
    let mut worst: f64 = 0.0;
    let mut fmax: f64 = 0.0;
    let inner = |y: f64| rep_s_analytic(g2, f, y);
    for side in [1.0f64, -1.0] {
        for i in 0..n {
            let y = side * Float::exp(s_min + i as f64 * ds);
            let lhs = rep_s_analytic(g1, &inner, y);
            let rhs = rep_s_analytic(&composed, f, y);
            worst = Float::max(worst, (lhs - rhs).norm());
            fmax = Float::max(fmax, rhs.norm());
        }
    }
    if fmax == 0.0 {
        worst
    } else {
        worst / fmax
    }
}

/// Residual of the character group law `U(g1) U(g2) = U(g1 g2)` on the
/// full group (a may be negative).
pub fn group_law_check_u(eps: u8, lambda: f64, g1: (f64, f64), g2: (f64, f64)) -> f64 {
    let composed = (g1.0 * g2.0, g1.1 + g1.0 * g2.1);
    let lhs = rep_char_u(eps, lambda, g1.0, g1.1).unwrap_or(Complex64::new(f64::NAN, 0.0))
        * rep_char_u(eps, lambda, g2.0, g2.1).unwrap_or(Complex64::new(f64::NAN, 0.0));
    let rhs =
        rep_char_u(eps, lambda, composed.0, composed.1).unwrap_or(Complex64::new(f64::NAN, 0.0));
    (lhs - rhs).norm()
}

/// Default evaluation grid on R x S^1.
pub fn default_torus_grid() -> (usize, usize, f64) {
    (256, 64, 12.0) // (n_re, n_im, re extent)
}

/// Sup-norm residual of the T_theta group law on a composable pair
/// (both translations or both w-only).
pub fn group_law_check_t(
    theta: f64,
    g1: &GroupElementAffCCover,
    g2: &GroupElementAffCCover,
    f: &impl Fn(Complex64) -> Complex64,
) -> f64 {
    let composed = if g1.w.norm() == 0.0 && g2.w.norm() == 0.0 {
        g1.compose_translations(g2)
    } else {
        g1.compose_dilations(g2)
    };
    let (n_re, n_im, extent) = default_torus_grid();
    let inner = |x: Complex64| rep_t_theta_analytic(theta, g2, f, x);
    let mut worst: f64 = 0.0;
    let mut fmax: f64 = 0.0;
    for i in 0..n_re {
        let re = -extent + 2.0 * extent * i as f64 / n_re as f64;
        for j in 0..n_im {
            let im = 2.0 * PI * j as f64 / n_im as f64;
            let x = Complex64::new(re, im);
            let lhs = rep_t_theta_analytic(theta, g1, &inner, x);
            let rhs = rep_t_theta_analytic(theta, &composed, f, x);
            worst = Float::max(worst, (lhs - rhs).norm());
            fmax = Float::max(fmax, rhs.norm());
        }
    }
    if fmax == 0.0 {
        worst
    } else {
        worst / fmax
    }
}

/// Relative change of the L^2(dy/|y|) norm under S(g), on the lattice.
pub fn unitarity_check_s(g: &GroupElementAffR, f: &impl Fn(f64) -> Complex64) -> f64 {
    let (s_min, ds, n) = default_grid();
    let sampled = SampledFunction::sample(s_min, ds, n, f);
    let transformed = rep_s(g, &sampled).expect("lattice dilation");
    let n0 = sampled.norm();
    Float::abs(transformed.norm() - n0) / n0
}

/// Relative change of the product-measure L^2 norm under T_theta.
pub fn unitarity_check_t(
    theta: f64,
    g: &GroupElementAffCCover,
    f: &impl Fn(Complex64) -> Complex64,
) -> f64 {
    let (n_re, n_im, extent) = default_torus_grid();
    let (mut before, mut after) = (0.0f64, 0.0f64);
    for i in 0..n_re {
        let re = -extent + 2.0 * extent * i as f64 / n_re as f64;
        for j in 0..n_im {
            let im = 2.0 * PI * j as f64 / n_im as f64;
            let x = Complex64::new(re, im);
            before += f(x).norm_sqr();
            after += rep_t_theta_analytic(theta, g, f, x).norm_sqr();
        }
    }
    Float::abs(Float::sqrt(after) - Float::sqrt(before)) / Float::sqrt(before)
}

/// Relative L^2 residual of the infinitesimal generator: central difference
/// of `t -> S(exp(t Z)) f` at 0 against `(alpha y d_y + i beta y) f`, on
/// the positive half-line with analytic `f` a Gaussian in `s = ln y` (so
/// `y d_y f` is available in closed form).
pub fn generator_check(z: &AlgElement, step: f64) -> Result<f64, RepError> {
    let (alpha_r, beta_r) = liealg::aff_r_params(z)?;
    let alpha = rat_f64(&alpha_r);
    let beta = rat_f64(&beta_r);
    let f = default_test_function();
    // d/ds of exp(-1.5 s^2) is -3 s exp(-1.5 s^2)
    let df_ds = |y: f64| {
        let s = Float::ln(y);
        Complex64::new(-3.0 * s * Float::exp(-1.5 * s * s), 0.0)
    };
    let gp = GroupElementAffR::exp(z, step)?;
    let gm = GroupElementAffR::exp(z, -step)?;
    let (s_min, ds, n) = (-8.0f64, 1.0 / 64.0, 1024usize);
    let (mut num, mut den) = (0.0f64, 0.0f64);
    for i in 0..n {
        let y = Float::exp(s_min + i as f64 * ds);
        let fd = (rep_s_analytic(&gp, &f, y) - rep_s_analytic(&gm, &f, y)) / (2.0 * step);
        let exact = Complex64::new(alpha, 0.0) * df_ds(y) + Complex64::i() * beta * y * f(y);
        num += (fd - exact).norm_sqr();
        den += exact.norm_sqr();
    }
    if den == 0.0 {
        Ok(Float::sqrt(num * ds))
    } else {
        Ok(Float::sqrt(num / den))
    }
}

/// Compact identifier for the representation families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RepFamily {
    S,
    U,
    Ttheta,
}

impl RepFamily {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "S" | "s" => Some(RepFamily::S),
            "U" | "u" => Some(RepFamily::U),
            "Ttheta" | "ttheta" | "T" | "t" => Some(RepFamily::Ttheta),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            RepFamily::S => "S".into(),
            RepFamily::U => "U".into(),
            RepFamily::Ttheta => "Ttheta".into(),
        }
    }
}
