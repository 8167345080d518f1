//! Coadjoint action and orbit geometry for the affine algebras: orbit
//! classification over the real line, canonical orbit charts, Hamiltonian
//! functions and the Kirillov/Poisson structure.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Float, One, ToPrimitive, Zero};

use crate::expnum::ExpSum;
use crate::liealg::{self, AlgElement, LieAlgebraSpec, LieError};
use crate::scalar::{Rat, ScalarQ};
use crate::starprod::{pr, Chart, StarConvention, Symbol};

#[derive(Clone, PartialEq, Debug)]
pub enum CoadjointError {
    Lie(LieError),
    ZeroDimensionalOrbit,
    ChartMismatch,
    NotAffC,
}

impl From<LieError> for CoadjointError {
    fn from(e: LieError) -> Self {
        CoadjointError::Lie(e)
    }
}

impl fmt::Display for CoadjointError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoadjointError::Lie(e) => write!(f, "{e}"),
            CoadjointError::ZeroDimensionalOrbit => {
                write!(f, "zero-dimensional orbit carries no symplectic form")
            }
            CoadjointError::ChartMismatch => write!(f, "symbols live in different charts"),
            CoadjointError::NotAffC => write!(f, "operation requires the complex affine algebra"),
        }
    }
}

/// A point of the dual of the real affine algebra, `F = lambda X* + mu Y*`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct CoadjointPoint {
    pub lambda: f64,
    pub mu: f64,
}

/// A point in the (z, w) chart of the complex-affine dual, carrying its
/// sheet index k (the logarithm branch): `2k pi < Im w < 2(k+1) pi`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct AffCChartPoint {
    pub z: num_complex::Complex64,
    pub w: num_complex::Complex64,
    pub sheet: i64,
}

impl AffCChartPoint {
    /// Checks the sheet constraint on `Im w`.
    pub fn on_sheet(&self) -> bool {
        let lo = 2.0 * core::f64::consts::PI * self.sheet as f64;
        let hi = lo + 2.0 * core::f64::consts::PI;
        self.w.im > lo && self.w.im < hi
    }
}

/// Orbit classes of the affine algebras.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum OrbitClass {
    /// Zero-dimensional orbit `{lambda X*}` on the mu = 0 axis.
    Point(f64),
    UpperHalfPlane,
    LowerHalfPlane,
    /// Open orbit chart of the complex affine group on sheet k.
    AffCOpen(i64),
    AffCPoint,
}

/// Coadjoint action of `exp(u)` on `F = (lambda, mu)`:
/// `(lambda + mu L, mu e^-alpha)` with `L` from the closed `exp(-ad)` form.
pub fn coadjoint_apply(u: &AlgElement, f: &CoadjointPoint) -> Result<CoadjointPoint, LieError> {
    let (alpha, beta) = liealg::aff_r_params(u)?;
    let a = alpha.to_f64().unwrap_or(f64::NAN);
    let b = beta.to_f64().unwrap_or(f64::NAN);
    let (l, ea) = closed_form_f64(a, b);
    Ok(CoadjointPoint {
        lambda: f.lambda + f.mu * l,
        mu: f.mu * ea,
    })
}

/// `(L, e^-alpha)` for float parameters; `L = beta (1 - e^-alpha)/alpha`
/// with the exact limit `L = beta` at `alpha = 0`.
pub fn closed_form_f64(alpha: f64, beta: f64) -> (f64, f64) {
    let ea = Float::exp(-alpha);
    let l = if alpha == 0.0 {
        beta
    } else {
        beta * (1.0 - ea) / alpha
    };
    (l, ea)
}

/// Exact coadjoint action for rational data, over exponential sums.
pub fn coadjoint_apply_exact(
    u: &AlgElement,
    lambda: &Rat,
    mu: &Rat,
) -> Result<(ExpSum, ExpSum), LieError> {
    let (alpha, _) = liealg::aff_r_params(u)?;
    let m = liealg::exp_neg_ad_closed(u)?;
    let l = &m[1][0];
    let mu_s = ExpSum::from_scalar(ScalarQ::from_rat(mu.clone()));
    let new_lambda = &ExpSum::from_scalar(ScalarQ::from_rat(lambda.clone())) + &(&mu_s * l);
    let new_mu = ExpSum::exp_atom(-alpha, ScalarQ::from_rat(mu.clone()));
    Ok((new_lambda, new_mu))
}

/// Classify the orbit through `(lambda, mu)`: the sign of mu is a complete
/// invariant away from the point orbits on the axis.
pub fn classify_orbit(f: &CoadjointPoint) -> OrbitClass {
    if f.mu > 0.0 {
        OrbitClass::UpperHalfPlane
    } else if f.mu < 0.0 {
        OrbitClass::LowerHalfPlane
    } else {
        OrbitClass::Point(f.lambda)
    }
}

/// Hamiltonian of `z = alpha X + beta Y` on the half-plane chart
/// `psi(p, q) = (p, e^q)`: the symbol `alpha p + beta e^q`.
pub fn hamiltonian_aff_r(z: &AlgElement) -> Result<Symbol, LieError> {
    if *z.algebra().as_ref() != *LieAlgebraSpec::aff_r() {
        return Err(LieError::NotAffR);
    }
    let alpha = z.coords()[0].clone();
    let beta = z.coords()[1].clone();
    let p = Symbol::var(Chart::PQ, 0);
    let eq = Symbol::exponential(Chart::PQ, vec![Rat::zero(), Rat::one()]);
    Ok(p.scale(&alpha).add(&eq.scale(&beta)))
}

/// Hamiltonian of an element of the complex affine algebra on the sheet-k
/// chart: `(alpha z + beta e^w + conj(alpha) z~ + conj(beta) e^w~) / 2`
/// in the variables (z, w, z~, w~). The sheet index only labels the chart.
pub fn hamiltonian_aff_c(a: &AlgElement, _sheet: i64) -> Result<Symbol, CoadjointError> {
    if *a.algebra().as_ref() != *LieAlgebraSpec::aff_c() {
        return Err(CoadjointError::NotAffC);
    }
    let (alpha, beta) = liealg::aff_c_params(a)?;
    let half = ScalarQ::rational(1, 2);
    let z = Symbol::var(Chart::ZW, 0);
    let zb = Symbol::var(Chart::ZW, 2);
    let ew = Symbol::exponential(
        Chart::ZW,
        vec![Rat::zero(), Rat::one(), Rat::zero(), Rat::zero()],
    );
    let ewb = Symbol::exponential(
        Chart::ZW,
        vec![Rat::zero(), Rat::zero(), Rat::zero(), Rat::one()],
    );
    Ok(z
        .scale(&alpha)
        .add(&ew.scale(&beta))
        .add(&zb.scale(&alpha.conj()))
        .add(&ewb.scale(&beta.conj()))
        .scale(&half))
}

/// Poisson bracket on an orbit chart. On (p, q): `f_p g_q - f_q g_p`; on
/// (z, w, z~, w~): `2[f_z g_w - f_w g_z + f_z~ g_w~ - f_w~ g_z~]`, which is
/// the same bracket as `dp1^dq1 - dp2^dq2` in real coordinates.
pub fn poisson_bracket(f: &Symbol, g: &Symbol) -> Result<Symbol, CoadjointError> {
    if f.chart() != g.chart() {
        return Err(CoadjointError::ChartMismatch);
    }
    pr(f, g, 1).map_err(|_| CoadjointError::ChartMismatch)
}

/// Verify that the chart's Poisson brackets reproduce the standard
/// symplectic pairing of the Kirillov form.
///
/// Half-plane orbits: `{p, q} = 1`. The complex-affine open orbit: in real
/// coordinates `p1 = (z+z~)/2, q1 = (w+w~)/2, p2 = (z-z~)/2i, q2 = (w-w~)/2i`
/// the pairing is `{p1,q1} = 1, {p2,q2} = -1`, all other brackets zero.
pub fn kirillov_form_check(orbit: &OrbitClass) -> Result<bool, CoadjointError> {
    match orbit {
        OrbitClass::Point(_) | OrbitClass::AffCPoint => Err(CoadjointError::ZeroDimensionalOrbit),
        OrbitClass::UpperHalfPlane | OrbitClass::LowerHalfPlane => {
            let p = Symbol::var(Chart::PQ, 0);
            let q = Symbol::var(Chart::PQ, 1);
            let one = Symbol::one(Chart::PQ);
            let zero = Symbol::zero(Chart::PQ);
            Ok(poisson_bracket(&p, &q)? == one
                && poisson_bracket(&p, &p)? == zero
                && poisson_bracket(&q, &q)? == zero)
        }
        OrbitClass::AffCOpen(_) => {
            let half = ScalarQ::rational(1, 2);
            // -i/2 = 1/(2i)
            let inv2i = ScalarQ::complex(0, 1, -1, 2);
            let z = Symbol::var(Chart::ZW, 0);
            let w = Symbol::var(Chart::ZW, 1);
            let zb = Symbol::var(Chart::ZW, 2);
            let wb = Symbol::var(Chart::ZW, 3);
            let p1 = z.add(&zb).scale(&half);
            let q1 = w.add(&wb).scale(&half);
            let p2 = z.sub(&zb).scale(&inv2i);
            let q2 = w.sub(&wb).scale(&inv2i);
            let one = Symbol::one(Chart::ZW);
            let coords = [&p1, &q1, &p2, &q2];
            // pairing matrix of omega = dp1^dq1 - dp2^dq2
            let expect = |i: usize, j: usize| -> Symbol {
                match (i, j) {
                    (0, 1) => one.clone(),
                    (1, 0) => one.neg(),
                    (2, 3) => one.neg(),
                    (3, 2) => one.clone(),
                    _ => Symbol::zero(Chart::ZW),
                }
            };
            for i in 0..4 {
                for j in 0..4 {
                    if poisson_bracket(coords[i], coords[j])? != expect(i, j) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

/// Ordered-basis-pair star-commutator verification:
/// `i Z~ * i T~ - i T~ * i Z~ = i [Z,T]~` for every pair, exactly.
pub fn star_commutator_check(
    alg: &alloc::sync::Arc<LieAlgebraSpec>,
) -> Result<crate::starprod::CommutatorReport, CoadjointError> {
    let is_aff_r = **alg == *LieAlgebraSpec::aff_r();
    let is_aff_c = **alg == *LieAlgebraSpec::aff_c();
    if !is_aff_r && !is_aff_c {
        return Err(CoadjointError::NotAffC);
    }
    let ham = |e: &AlgElement| -> Result<Symbol, CoadjointError> {
        if is_aff_r {
            Ok(hamiltonian_aff_r(e)?)
        } else {
            hamiltonian_aff_c(e, 0)
        }
    };
    let conv = StarConvention::MoyalHalfI;
    let i = ScalarQ::i();
    let names = alg.basis_names();
    let mut pairs = Vec::new();
    for a in 0..alg.dim() {
        for b in 0..alg.dim() {
            let za = alg.basis_element(a)?;
            let zb = alg.basis_element(b)?;
            let lhs = crate::starprod::star_commutator(
                &ham(&za)?.scale(&i),
                &ham(&zb)?.scale(&i),
                &conv,
            )
            .map_err(|_| CoadjointError::ChartMismatch)?;
            let rhs = ham(&liealg::bracket(&za, &zb)?)?.scale(&i);
            let residual = lhs.sub(&rhs);
            pairs.push(crate::starprod::PairCheck {
                left: names[a].clone(),
                right: names[b].clone(),
                pass: residual.is_zero(),
                residual,
            });
        }
    }
    Ok(crate::starprod::CommutatorReport {
        algebra: if is_aff_r { "affR" } else { "affC" }.into(),
        pairs,
    })
}

/// Render an orbit class for reports.
pub fn orbit_name(c: &OrbitClass) -> String {
    match c {
        OrbitClass::Point(l) => format!("point({l})"),
        OrbitClass::UpperHalfPlane => "upper-half-plane".into(),
        OrbitClass::LowerHalfPlane => "lower-half-plane".into(),
        OrbitClass::AffCOpen(k) => format!("affC-open(sheet {k})"),
        OrbitClass::AffCPoint => "affC-point".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn affr(alpha: f64, beta: f64) -> AlgElement {
        // inputs are multiples of 1/64, so this is exact
        let to_rat = |x: f64| Rat::new(((x * 64.0) as i64).into(), 64.into());
        LieAlgebraSpec::aff_r()
            .element(vec![
                ScalarQ::from_rat(to_rat(alpha)),
                ScalarQ::from_rat(to_rat(beta)),
            ])
            .unwrap()
    }

    #[test]
    fn apply_generic_and_fixed_axis() {
        let u = affr(0.5, 1.0);
        let f = CoadjointPoint { lambda: 2.0, mu: 3.0 };
        let g = coadjoint_apply(&u, &f).unwrap();
        let (l, ea) = closed_form_f64(0.5, 1.0);
        assert!((g.lambda - (2.0 + 3.0 * l)).abs() < 1e-15);
        assert!((g.mu - 3.0 * ea).abs() < 1e-15);

        // mu = 0 is fixed pointwise
        let f0 = CoadjointPoint { lambda: 7.0, mu: 0.0 };
        assert_eq!(coadjoint_apply(&u, &f0).unwrap(), f0);

        // u = 0 acts as the identity
        let id = affr(0.0, 0.0);
        assert_eq!(coadjoint_apply(&id, &f).unwrap(), f);
    }

    #[test]
    fn closed_form_matches_series_oracle() {
        // 30-term f64 series for exp([[0,0],[beta,-alpha]]) vs closed form
        let grid = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0];
        for &a in &grid {
            for &b in &grid {
                let (mut m10, mut m11) = (0.0f64, 1.0f64);
                // accumulate sum_{n>=1} M^n/n! acting on the bottom row:
                // M = [[0,0],[b,-a]]; M^n = [[0,0],[b(-a)^{n-1}, (-a)^n]]
                let mut pw = 1.0f64; // (-a)^{n-1}
                let mut fact = 1.0f64;
                for n in 1..30 {
                    fact *= n as f64;
                    m10 += b * pw / fact;
                    m11 += pw * (-a) / fact;
                    pw *= -a;
                }
                let (l, ea) = closed_form_f64(a, b);
                assert!((m10 - l).abs() <= 1e-12, "L mismatch at ({a},{b})");
                assert!((m11 - ea).abs() <= 1e-12, "e^-alpha mismatch at ({a},{b})");
            }
        }
    }

    #[test]
    fn exact_apply_matches_float() {
        let alg = LieAlgebraSpec::aff_r();
        let u = alg
            .element(vec![ScalarQ::rational(1, 2), ScalarQ::from_int(1)])
            .unwrap();
        let (el, em) = coadjoint_apply_exact(&u, &rat(2, 1), &rat(3, 1)).unwrap();
        let g = coadjoint_apply(&u, &CoadjointPoint { lambda: 2.0, mu: 3.0 }).unwrap();
        assert!((el.eval_f64().re - g.lambda).abs() < 1e-14);
        assert!((em.eval_f64().re - g.mu).abs() < 1e-14);
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify_orbit(&CoadjointPoint { lambda: 3.0, mu: 0.0 }),
            OrbitClass::Point(3.0)
        );
        assert_eq!(
            classify_orbit(&CoadjointPoint { lambda: 0.0, mu: 1.0 }),
            OrbitClass::UpperHalfPlane
        );
        assert_eq!(
            classify_orbit(&CoadjointPoint { lambda: 0.0, mu: -2.0 }),
            OrbitClass::LowerHalfPlane
        );
    }

    #[test]
    fn classification_invariant_under_flow() {
        let params = [(-2.0, 1.0), (0.5, -3.0), (1.0, 0.0), (0.0, 2.0)];
        let points = [
            CoadjointPoint { lambda: 1.0, mu: 2.0 },
            CoadjointPoint { lambda: -1.0, mu: -0.5 },
            CoadjointPoint { lambda: 4.0, mu: 0.0 },
        ];
        for &(a, b) in &params {
            let u = affr(a, b);
            for f in &points {
                let g = coadjoint_apply(&u, f).unwrap();
                let same = match (classify_orbit(f), classify_orbit(&g)) {
                    (OrbitClass::Point(x), OrbitClass::Point(y)) => x == y,
                    (c1, c2) => c1 == c2,
                };
                assert!(same, "orbit class changed under the coadjoint flow");
            }
        }
    }

    #[test]
    fn hamiltonians() {
        let alg = LieAlgebraSpec::aff_r();
        let x = alg.basis_element(0).unwrap();
        let y = alg.basis_element(1).unwrap();
        assert_eq!(hamiltonian_aff_r(&x).unwrap(), Symbol::var(Chart::PQ, 0));
        assert_eq!(
            hamiltonian_aff_r(&y).unwrap(),
            Symbol::exponential(Chart::PQ, vec![Rat::zero(), Rat::one()])
        );
        let zero = alg
            .element(vec![ScalarQ::zero(), ScalarQ::zero()])
            .unwrap();
        assert!(hamiltonian_aff_r(&zero).unwrap().is_zero());

        // complex case: X1 -> (z + z~)/2, Y1 -> (e^w + e^w~)/2
        let algc = LieAlgebraSpec::aff_c();
        let x1 = algc.basis_element(0).unwrap();
        let h = hamiltonian_aff_c(&x1, 0).unwrap();
        let half = ScalarQ::rational(1, 2);
        let expect = Symbol::var(Chart::ZW, 0)
            .add(&Symbol::var(Chart::ZW, 2))
            .scale(&half);
        assert_eq!(h, expect);

        let y1 = algc.basis_element(2).unwrap();
        let hy = hamiltonian_aff_c(&y1, 0).unwrap();
        let ew = Symbol::exponential(
            Chart::ZW,
            vec![Rat::zero(), Rat::one(), Rat::zero(), Rat::zero()],
        );
        let ewb = Symbol::exponential(
            Chart::ZW,
            vec![Rat::zero(), Rat::zero(), Rat::zero(), Rat::one()],
        );
        assert_eq!(hy, ew.add(&ewb).scale(&half));
    }

    #[test]
    fn poisson_examples() {
        let p = Symbol::var(Chart::PQ, 0);
        let q = Symbol::var(Chart::PQ, 1);
        assert_eq!(poisson_bracket(&p, &q).unwrap(), Symbol::one(Chart::PQ));
        let f = p.mul(&q).add(&p);
        assert!(poisson_bracket(&f, &f).unwrap().is_zero());

        // {Re z, (e^w + e^w~)/2} = (e^w + e^w~)/2
        let algc = LieAlgebraSpec::aff_c();
        let re_z = hamiltonian_aff_c(&algc.basis_element(0).unwrap(), 0).unwrap();
        let hy1 = hamiltonian_aff_c(&algc.basis_element(2).unwrap(), 0).unwrap();
        assert_eq!(poisson_bracket(&re_z, &hy1).unwrap(), hy1);
    }

    #[test]
    fn poisson_leibniz() {
        let p = Symbol::var(Chart::PQ, 0);
        let q = Symbol::var(Chart::PQ, 1);
        let eq = Symbol::exponential(Chart::PQ, vec![Rat::zero(), Rat::one()]);
        let samples = [p.clone(), q.clone(), eq.clone(), p.mul(&q), p.mul(&eq)];
        for f in &samples {
            for g in &samples {
                for h in &samples {
                    let lhs = poisson_bracket(&f.mul(g), h).unwrap();
                    let rhs = f
                        .mul(&poisson_bracket(g, h).unwrap())
                        .add(&poisson_bracket(f, h).unwrap().mul(g));
                    assert_eq!(lhs, rhs, "Leibniz rule failed");
                }
            }
        }
    }

    #[test]
    fn poisson_homomorphism_all_pairs() {
        // {A~, B~} = [A,B]~ for all ordered basis pairs of both algebras.
        let algr = LieAlgebraSpec::aff_r();
        for a in 0..2 {
            for b in 0..2 {
                let za = algr.basis_element(a).unwrap();
                let zb = algr.basis_element(b).unwrap();
                let lhs = poisson_bracket(
                    &hamiltonian_aff_r(&za).unwrap(),
                    &hamiltonian_aff_r(&zb).unwrap(),
                )
                .unwrap();
                let rhs = hamiltonian_aff_r(&liealg::bracket(&za, &zb).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let algc = LieAlgebraSpec::aff_c();
        for a in 0..4 {
            for b in 0..4 {
                let za = algc.basis_element(a).unwrap();
                let zb = algc.basis_element(b).unwrap();
                let lhs = poisson_bracket(
                    &hamiltonian_aff_c(&za, 0).unwrap(),
                    &hamiltonian_aff_c(&zb, 0).unwrap(),
                )
                .unwrap();
                let rhs =
                    hamiltonian_aff_c(&liealg::bracket(&za, &zb).unwrap(), 0).unwrap();
                assert_eq!(lhs, rhs, "pair ({a},{b})");
            }
        }
    }

    #[test]
    fn kirillov_checks() {
        assert!(kirillov_form_check(&OrbitClass::UpperHalfPlane).unwrap());
        assert!(kirillov_form_check(&OrbitClass::AffCOpen(0)).unwrap());
        assert_eq!(
            kirillov_form_check(&OrbitClass::Point(1.0)),
            Err(CoadjointError::ZeroDimensionalOrbit)
        );
    }

    #[test]
    fn star_commutator_reports() {
        let r = star_commutator_check(&LieAlgebraSpec::aff_r()).unwrap();
        assert_eq!(r.pairs.len(), 4);
        assert!(r.all_pass());

        let c = star_commutator_check(&LieAlgebraSpec::aff_c()).unwrap();
        assert_eq!(c.pairs.len(), 16);
        assert!(c.all_pass());
    }

    #[test]
    fn sheet_constraint() {
        let p = AffCChartPoint {
            z: num_complex::Complex64::new(1.0, 0.0),
            w: num_complex::Complex64::new(0.0, 3.0),
            sheet: 0,
        };
        assert!(p.on_sheet());
        let q = AffCChartPoint { sheet: 1, ..p };
        assert!(!q.on_sheet());
    }
}
