//! Quantized operators: star-multiplication `l_Z = i Z~ * .` on orbit-chart
//! symbols, and their partial-Fourier conjugates `lhat_Z` as exact
//! first-order differential-multiplication operators.
//!
//! Operator composition is symbolic (Leibniz rule), so the Lie-algebra
//! homomorphism `[lhat_Z, lhat_T] = lhat_[Z,T]` is checked with zero
//! residual. The numeric Fourier harness lives in the companion crate.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::coadjoint::{self, CoadjointError};
use crate::liealg::{self, AlgElement, LieAlgebraSpec, LieError};
use crate::scalar::{rat, Rat, ScalarQ};
use crate::starprod::{star, Chart, StarConvention, StarError, Symbol};

#[derive(Clone, PartialEq, Debug)]
pub enum OperatorError {
    ChartMismatch,
    Lie(LieError),
    Coadjoint(CoadjointError),
    Star(StarError),
}

impl From<LieError> for OperatorError {
    fn from(e: LieError) -> Self {
        OperatorError::Lie(e)
    }
}

impl From<CoadjointError> for OperatorError {
    fn from(e: CoadjointError) -> Self {
        OperatorError::Coadjoint(e)
    }
}

impl From<StarError> for OperatorError {
    fn from(e: StarError) -> Self {
        OperatorError::Star(e)
    }
}

impl fmt::Display for OperatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorError::ChartMismatch => write!(f, "operators live in different charts"),
            OperatorError::Lie(e) => write!(f, "{e}"),
            OperatorError::Coadjoint(e) => write!(f, "{e}"),
            OperatorError::Star(e) => write!(f, "{e}"),
        }
    }
}

/// A differential-multiplication operator: finite sum of `S(v) d^a` with
/// symbol coefficients, in canonical form (one coefficient per derivative
/// signature, zero coefficients dropped).
#[derive(Clone, PartialEq)]
pub struct OperatorExpr {
    chart: Chart,
    terms: BTreeMap<Vec<u32>, Symbol>,
}

impl OperatorExpr {
    pub fn zero(chart: Chart) -> Self {
        OperatorExpr {
            chart,
            terms: BTreeMap::new(),
        }
    }

    /// Multiplication by a symbol.
    pub fn mult(coeff: Symbol) -> Self {
        let chart = coeff.chart();
        let mut op = OperatorExpr::zero(chart);
        op.add_term(vec![0; chart.nvars()], coeff);
        op
    }

    /// `coeff * d^derivs`.
    pub fn term(coeff: Symbol, derivs: Vec<u32>) -> Self {
        let chart = coeff.chart();
        assert_eq!(derivs.len(), chart.nvars());
        let mut op = OperatorExpr::zero(chart);
        op.add_term(derivs, coeff);
        op
    }

    /// The bare partial derivative in variable `i`.
    pub fn derivative(chart: Chart, i: usize) -> Self {
        let mut d = vec![0; chart.nvars()];
        d[i] = 1;
        OperatorExpr::term(Symbol::one(chart), d)
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Symbol)> {
        self.terms.iter()
    }

    fn add_term(&mut self, derivs: Vec<u32>, coeff: Symbol) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&derivs) {
            Some(e) => {
                *e = e.add(&coeff);
                if e.is_zero() {
                    self.terms.remove(&derivs);
                }
            }
            None => {
                self.terms.insert(derivs, coeff);
            }
        }
    }

    pub fn add(&self, rhs: &OperatorExpr) -> OperatorExpr {
        assert_eq!(self.chart, rhs.chart);
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &OperatorExpr) -> OperatorExpr {
        self.add(&rhs.scale(&ScalarQ::from_int(-1)))
    }

    pub fn scale(&self, c: &ScalarQ) -> OperatorExpr {
        let mut out = OperatorExpr::zero(self.chart);
        for (d, s) in &self.terms {
            out.add_term(d.clone(), s.scale(c));
        }
        out
    }

    /// Apply to a symbol.
    pub fn apply(&self, f: &Symbol) -> Symbol {
        assert_eq!(self.chart, f.chart());
        let mut acc = Symbol::zero(self.chart);
        for (d, coeff) in &self.terms {
            let mut g = f.clone();
            for (i, &n) in d.iter().enumerate() {
                for _ in 0..n {
                    g = g.diff(i);
                }
            }
            acc = acc.add(&coeff.mul(&g));
        }
        acc
    }
}

/// Composition `self . rhs` via the Leibniz rule:
/// `d^a (S g) = sum_{s <= a} C(a, s) (d^{a-s} S) d^s g`.
pub fn op_compose(a: &OperatorExpr, b: &OperatorExpr) -> Result<OperatorExpr, OperatorError> {
    if a.chart != b.chart {
        return Err(OperatorError::ChartMismatch);
    }
    let n = a.chart.nvars();
    let mut out = OperatorExpr::zero(a.chart);
    for (da, sa) in &a.terms {
        for (db, sb) in &b.terms {
            // enumerate s <= da componentwise
            let mut s = vec![0u32; n];
            loop {
                let mut coeff = 1i64;
                for i in 0..n {
                    coeff *= binom_u32(da[i], s[i]) as i64;
                }
                let mut inner = sb.clone();
                for i in 0..n {
                    for _ in 0..(da[i] - s[i]) {
                        inner = inner.diff(i);
                    }
                }
                if !inner.is_zero() {
                    let total: Vec<u32> = (0..n).map(|i| s[i] + db[i]).collect();
                    out.add_term(
                        total,
                        sa.mul(&inner).scale(&ScalarQ::from_int(coeff)),
                    );
                }
                // next multi-index
                let mut i = 0;
                loop {
                    if i == n {
                        break;
                    }
                    if s[i] < da[i] {
                        s[i] += 1;
                        break;
                    }
                    s[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    }
    Ok(out)
}

fn binom_u32(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let mut r: u64 = 1;
    for i in 0..k.min(n - k) {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

/// `[a, b] = a.b - b.a`.
pub fn op_commutator(a: &OperatorExpr, b: &OperatorExpr) -> Result<OperatorExpr, OperatorError> {
    Ok(op_compose(a, b)?.sub(&op_compose(b, a)?))
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.chart.var_names();
        for (n, (d, s)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{s}]")?;
            for (i, &k) in d.iter().enumerate() {
                if k == 1 {
                    write!(f, " d/d{}", names[i])?;
                } else if k > 1 {
                    write!(f, " d^{}/d{}^{}", k, names[i], k)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Left star multiplication `l_Z(u) = i Z~ * u` on half-plane symbols.
pub fn ell_apply(z: &AlgElement, u: &Symbol) -> Result<Symbol, OperatorError> {
    let ham = coadjoint::hamiltonian_aff_r(z)?;
    Ok(star(&ham.scale(&ScalarQ::i()), u, &StarConvention::MoyalHalfI)?)
}

/// The partial-Fourier conjugate of `l_Z` for `Z = alpha X + beta Y`:
/// `alpha (d_q / 2 - d_x) + i beta e^{q - x/2}` in the chart (x, q).
pub fn lhat_aff_r(z: &AlgElement) -> Result<OperatorExpr, OperatorError> {
    if *z.algebra().as_ref() != *LieAlgebraSpec::aff_r() {
        return Err(OperatorError::Lie(LieError::NotAffR));
    }
    let alpha = z.coords()[0].clone();
    let beta = z.coords()[1].clone();
    let half = ScalarQ::rational(1, 2);
    let dq = OperatorExpr::derivative(Chart::XQ, 1);
    let dx = OperatorExpr::derivative(Chart::XQ, 0);
    let deriv_part = dq.scale(&(&alpha * &half)).sub(&dx.scale(&alpha));
    // e^{q - x/2}
    let e = Symbol::exponential(Chart::XQ, vec![rat(-1, 2), Rat::from_integer(1.into())]);
    let mult_part = OperatorExpr::mult(e.scale(&(&beta * &ScalarQ::i())));
    Ok(deriv_part.add(&mult_part))
}

/// The sheet-k conjugated operator for the complex affine algebra:
/// `alpha d_u + conj(alpha) d_u~ + (i/2)(beta e^u + conj(beta) e^u~)`
/// in the chart (u, u~). The sheet only labels the chart.
pub fn lhat_aff_c(a: &AlgElement, _sheet: i64) -> Result<OperatorExpr, OperatorError> {
    if *a.algebra().as_ref() != *LieAlgebraSpec::aff_c() {
        return Err(OperatorError::Coadjoint(CoadjointError::NotAffC));
    }
    let (alpha, beta) = liealg::aff_c_params(a)?;
    let du = OperatorExpr::derivative(Chart::UUbar, 0);
    let dub = OperatorExpr::derivative(Chart::UUbar, 1);
    let eu = Symbol::exponential(Chart::UUbar, vec![Rat::from_integer(1.into()), Rat::zero()]);
    let eub = Symbol::exponential(Chart::UUbar, vec![Rat::zero(), Rat::from_integer(1.into())]);
    let half_i = ScalarQ::complex(0, 1, 1, 2);
    let mult = eu
        .scale(&beta)
        .add(&eub.scale(&beta.conj()))
        .scale(&half_i);
    Ok(du
        .scale(&alpha)
        .add(&dub.scale(&alpha.conj()))
        .add(&OperatorExpr::mult(mult)))
}

/// One ordered pair's outcome of the operator homomorphism check.
#[derive(Clone, Debug)]
pub struct OpPairCheck {
    pub left: String,
    pub right: String,
    pub pass: bool,
    /// `[lhat_Z, lhat_T] - lhat_[Z,T]`, zero exactly on pass.
    pub residual: OperatorExpr,
}

#[derive(Clone, Debug)]
pub struct HomomorphismReport {
    pub algebra: String,
    pub pairs: Vec<OpPairCheck>,
}

impl HomomorphismReport {
    pub fn all_pass(&self) -> bool {
        self.pairs.iter().all(|p| p.pass)
    }
}

/// Verify `[lhat_Z, lhat_T] = lhat_[Z,T]` exactly over all ordered basis
/// pairs, with the operator assignment given by `lhat` (so mutated
/// assignments can be checked to fail).
pub fn homomorphism_check_with(
    alg: &alloc::sync::Arc<LieAlgebraSpec>,
    mut lhat: impl FnMut(&AlgElement) -> Result<OperatorExpr, OperatorError>,
) -> Result<HomomorphismReport, OperatorError> {
    let names = alg.basis_names();
    let mut pairs = Vec::new();
    for a in 0..alg.dim() {
        for b in 0..alg.dim() {
            let za = alg.basis_element(a)?;
            let zb = alg.basis_element(b)?;
            let lhs = op_commutator(&lhat(&za)?, &lhat(&zb)?)?;
            let rhs = lhat(&liealg::bracket(&za, &zb)?)?;
            let residual = lhs.sub(&rhs);
            pairs.push(OpPairCheck {
                left: names[a].clone(),
                right: names[b].clone(),
                pass: residual.is_zero(),
                residual,
            });
        }
    }
    Ok(HomomorphismReport {
        algebra: alloc::format!("{}-dim", alg.dim()),
        pairs,
    })
}

/// Homomorphism check with the built-in operator assignment.
pub fn homomorphism_check(
    alg: &alloc::sync::Arc<LieAlgebraSpec>,
) -> Result<HomomorphismReport, OperatorError> {
    let is_aff_r = **alg == *LieAlgebraSpec::aff_r();
    let mut report = homomorphism_check_with(alg, |e| {
        if is_aff_r {
            lhat_aff_r(e)
        } else {
            lhat_aff_c(e, 0)
        }
    })?;
    report.algebra = if is_aff_r { "affR" } else { "affC" }.into();
    Ok(report)
}

/// Rewrite an (x, q)-chart operator in characteristic coordinates
/// `s = q - x/2`, `t = q + x/2`. Monomial coefficients in (x, q) are not
/// supported (the conjugated operators have none).
pub fn to_characteristics(op: &OperatorExpr) -> Result<OperatorExpr, OperatorError> {
    if op.chart() != Chart::XQ {
        return Err(OperatorError::ChartMismatch);
    }
    // d_x = (-d_s + d_t)/2, d_q = d_s + d_t; e^{a x + b q} with
    // x = t - s, q = (s + t)/2 becomes e^{(b/2 - a) s + (b/2 + a) t}.
    let ds = OperatorExpr::derivative(Chart::ST, 0);
    let dt = OperatorExpr::derivative(Chart::ST, 1);
    let half = ScalarQ::rational(1, 2);
    let dx = dt.sub(&ds).scale(&half);
    let dq = ds.add(&dt);
    let mut out = OperatorExpr::zero(Chart::ST);
    for (d, coeff) in &op.terms {
        // coefficient symbols: require pure exponentials/constants
        let mut new_coeff = Symbol::zero(Chart::ST);
        for (pow, expw, c) in coeff.terms() {
            if pow.iter().any(|&p| p > 0) {
                return Err(OperatorError::ChartMismatch);
            }
            let (a, b) = (&expw[0], &expw[1]);
            let half_r = rat(1, 2);
            let ws = &(b * &half_r) - a;
            let wt = &(b * &half_r) + a;
            new_coeff = new_coeff.add(&Symbol::monomial(
                Chart::ST,
                c.clone(),
                vec![0, 0],
                vec![ws, wt],
            ));
        }
        // expand the derivative part
        let mut dop = OperatorExpr::mult(Symbol::one(Chart::ST));
        for _ in 0..d[0] {
            dop = op_compose(&dop, &dx)?;
        }
        for _ in 0..d[1] {
            dop = op_compose(&dop, &dq)?;
        }
        out = out.add(&op_compose(&OperatorExpr::mult(new_coeff), &dop)?);
    }
    Ok(out)
}

/// True when an (s, t)-chart operator involves neither `d_t` nor any
/// t-dependence in its coefficients.
pub fn depends_only_on_s(op: &OperatorExpr) -> bool {
    op.terms.iter().all(|(d, coeff)| {
        d[1] == 0
            && coeff
                .terms()
                .all(|(pow, expw, _)| pow[1] == 0 && expw[1].is_zero())
    })
}
