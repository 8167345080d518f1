//! Terminating Moyal/Weyl star product on a closed symbol class.
//!
//! Symbols are finite sums `c * (monomial) * exp(linear form)` over a chart
//! with a constant Poisson tensor. On the charts used here the tensor pairs
//! each position-like variable against an exponential-carrying one, so every
//! bidifferential order beyond the combined position degree vanishes and the
//! star series is a finite exact sum.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Float, One, ToPrimitive, Zero};

use crate::scalar::{Rat, ScalarQ};

/// Coordinate charts for symbols and operators.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Chart {
    /// Darboux chart (p, q) on a half-plane orbit; {p, q} = 1.
    PQ,
    /// Complex chart (z, w, zbar, wbar) on the open orbit of the complex
    /// affine group; the Poisson tensor has {z, w}-weight 2.
    ZW,
    /// Operator chart (x, q) after partial Fourier transform; no bracket.
    XQ,
    /// Operator chart (u, ubar) for the complex case; no bracket.
    UUbar,
    /// Characteristic chart (s, t) with s = q - x/2, t = q + x/2; no bracket.
    ST,
}

impl Chart {
    pub fn nvars(self) -> usize {
        match self {
            Chart::PQ | Chart::XQ | Chart::ST | Chart::UUbar => 2,
            Chart::ZW => 4,
        }
    }

    pub fn var_names(self) -> &'static [&'static str] {
        match self {
            Chart::PQ => &["p", "q"],
            Chart::ZW => &["z", "w", "z~", "w~"],
            Chart::XQ => &["x", "q"],
            Chart::UUbar => &["u", "u~"],
            Chart::ST => &["s", "t"],
        }
    }

    /// Nonzero entries (i, j, weight) of the Poisson tensor, if the chart
    /// carries one.
    pub fn poisson_pairs(self) -> Option<&'static [(usize, usize, i64)]> {
        match self {
            Chart::PQ => Some(&[(0, 1, 1), (1, 0, -1)]),
            Chart::ZW => Some(&[(0, 1, 2), (1, 0, -2), (2, 3, 2), (3, 2, -2)]),
            _ => None,
        }
    }

    /// Indices of position-like variables (finite polynomial degree is what
    /// makes the star series terminate).
    pub fn position_vars(self) -> &'static [usize] {
        match self {
            Chart::PQ => &[0],
            Chart::ZW => &[0, 2],
            _ => &[],
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StarError {
    MismatchedCharts,
    NoPoissonTensor(Chart),
    NonTerminatingClass,
    ZeroOrder,
}

impl fmt::Display for StarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarError::MismatchedCharts => write!(f, "symbols live in different charts"),
            StarError::NoPoissonTensor(c) => {
                write!(f, "chart {c:?} carries no Poisson tensor")
            }
            StarError::NonTerminatingClass => write!(
                f,
                "star product does not terminate: exponential weight on a position variable"
            ),
            StarError::ZeroOrder => write!(f, "bidifferential order must be at least 1"),
        }
    }
}

/// Term signature: monomial exponents and exponential weights per variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct TermKey {
    pow: Vec<u32>,
    expw: Vec<Rat>,
}

/// A finite exact sum of terms `c * prod v_i^{pow_i} * exp(sum expw_i v_i)`.
///
/// Canonical form: one coefficient per signature, zero coefficients dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct Symbol {
    chart: Chart,
    terms: BTreeMap<TermKey, ScalarQ>,
}

impl Symbol {
    pub fn zero(chart: Chart) -> Self {
        Symbol {
            chart,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: Chart, c: ScalarQ) -> Self {
        let mut s = Symbol::zero(chart);
        s.add_term(
            TermKey {
                pow: vec![0; chart.nvars()],
                expw: vec![Rat::zero(); chart.nvars()],
            },
            c,
        );
        s
    }

    pub fn one(chart: Chart) -> Self {
        Symbol::constant(chart, ScalarQ::one())
    }

    /// The coordinate variable with index `i`.
    pub fn var(chart: Chart, i: usize) -> Self {
        assert!(i < chart.nvars(), "variable index out of range");
        let mut pow = vec![0; chart.nvars()];
        pow[i] = 1;
        let mut s = Symbol::zero(chart);
        s.add_term(
            TermKey {
                pow,
                expw: vec![Rat::zero(); chart.nvars()],
            },
            ScalarQ::one(),
        );
        s
    }

    /// `exp(sum weights_i * v_i)`.
    pub fn exponential(chart: Chart, weights: Vec<Rat>) -> Self {
        assert_eq!(weights.len(), chart.nvars());
        let mut s = Symbol::zero(chart);
        s.add_term(
            TermKey {
                pow: vec![0; chart.nvars()],
                expw: weights,
            },
            ScalarQ::one(),
        );
        s
    }

    /// General single term `c * prod v^pow * exp(sum expw v)`.
    pub fn monomial(chart: Chart, c: ScalarQ, pow: Vec<u32>, expw: Vec<Rat>) -> Self {
        assert_eq!(pow.len(), chart.nvars());
        assert_eq!(expw.len(), chart.nvars());
        let mut s = Symbol::zero(chart);
        s.add_term(TermKey { pow, expw }, c);
        s
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, key: TermKey, c: ScalarQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, rhs: &Symbol) -> Symbol {
        assert_eq!(self.chart, rhs.chart);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Symbol) -> Symbol {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Symbol {
        let mut out = Symbol::zero(self.chart);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &ScalarQ) -> Symbol {
        let mut out = Symbol::zero(self.chart);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Pointwise product.
    pub fn mul(&self, rhs: &Symbol) -> Symbol {
        assert_eq!(self.chart, rhs.chart);
        let n = self.chart.nvars();
        let mut out = Symbol::zero(self.chart);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &rhs.terms {
                let pow = (0..n).map(|i| k1.pow[i] + k2.pow[i]).collect();
                let expw = (0..n).map(|i| &k1.expw[i] + &k2.expw[i]).collect();
                out.add_term(TermKey { pow, expw }, c1 * c2);
            }
        }
        out
    }

    /// Partial derivative in variable `i`.
    pub fn diff(&self, i: usize) -> Symbol {
        assert!(i < self.chart.nvars());
        let mut out = Symbol::zero(self.chart);
        for (k, c) in &self.terms {
            if k.pow[i] > 0 {
                let mut pow = k.pow.clone();
                pow[i] -= 1;
                out.add_term(
                    TermKey {
                        pow,
                        expw: k.expw.clone(),
                    },
                    c * &ScalarQ::from_int(k.pow[i] as i64),
                );
            }
            if !k.expw[i].is_zero() {
                out.add_term(k.clone(), c * &ScalarQ::from_rat(k.expw[i].clone()));
            }
        }
        out
    }

    fn diff_multi(&self, orders: &[u32]) -> Symbol {
        let mut cur = self.clone();
        for (i, &n) in orders.iter().enumerate() {
            for _ in 0..n {
                cur = cur.diff(i);
                if cur.is_zero() {
                    return cur;
                }
            }
        }
        cur
    }

    /// Total degree in the chart's position-like variables.
    pub fn position_degree(&self) -> u32 {
        let pos = self.chart.position_vars();
        self.terms
            .keys()
            .map(|k| pos.iter().map(|&i| k.pow[i]).sum())
            .max()
            .unwrap_or(0)
    }

    fn has_positional_exp(&self) -> bool {
        let pos = self.chart.position_vars();
        self.terms
            .keys()
            .any(|k| pos.iter().any(|&i| !k.expw[i].is_zero()))
    }

    /// Numeric evaluation at real coordinates.
    pub fn eval(&self, vals: &[f64]) -> Complex64 {
        assert_eq!(vals.len(), self.chart.nvars());
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.terms {
            let mut t = 1.0f64;
            for (i, &v) in vals.iter().enumerate() {
                for _ in 0..k.pow[i] {
                    t *= v;
                }
                let w = k.expw[i].to_f64().unwrap_or(f64::NAN);
                if w != 0.0 {
                    t *= Float::exp(w * v);
                }
            }
            acc += c.to_c64() * t;
        }
        acc
    }

    pub fn render(&self) -> String {
        alloc::format!("{self}")
    }

    /// Iterate terms as `(pow, expw, coeff)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &[Rat], &ScalarQ)> {
        self.terms
            .iter()
            .map(|(k, c)| (k.pow.as_slice(), k.expw.as_slice(), c))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.chart.var_names();
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &p) in k.pow.iter().enumerate() {
                if p == 1 {
                    write!(f, "*{}", names[i])?;
                } else if p > 1 {
                    write!(f, "*{}^{}", names[i], p)?;
                }
            }
            let exps: Vec<String> = k
                .expw
                .iter()
                .enumerate()
                .filter(|(_, w)| !w.is_zero())
                .map(|(i, w)| {
                    if w.is_one() {
                        alloc::format!("{}", names[i])
                    } else {
                        alloc::format!("({w}){}", names[i])
                    }
                })
                .collect();
            if !exps.is_empty() {
                write!(f, "*e^[{}]", exps.join("+"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Star-product convention.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StarConvention {
    /// Weight `(1/r!) (1/(2i))^r` on the r-th bidifferential term.
    MoyalHalfI,
    /// Weight `(1/r!) (i h / 2)^r` with a rational deformation parameter h.
    WeylH(Rat),
}

impl StarConvention {
    fn weight(&self, r: usize) -> ScalarQ {
        let mut fact = Rat::one();
        for k in 2..=r {
            fact *= Rat::from(BigInt::from(k as i64));
        }
        let unit = match self {
            // 1/(2i) = -i/2
            StarConvention::MoyalHalfI => ScalarQ::complex(0, 1, -1, 2),
            StarConvention::WeylH(h) => {
                ScalarQ::new(Rat::zero(), h / Rat::from(BigInt::from(2)))
            }
        };
        unit.pow(r as u32).scale_rat(&(Rat::one() / fact))
    }
}

/// The r-th bidifferential term
/// `P^r(u, v) = L^{i1 j1} ... L^{ir jr} (d_{i...} u)(d_{j...} v)`
/// for the chart's constant Poisson tensor `L`.
pub fn pr(u: &Symbol, v: &Symbol, r: usize) -> Result<Symbol, StarError> {
    if u.chart != v.chart {
        return Err(StarError::MismatchedCharts);
    }
    if r == 0 {
        return Err(StarError::ZeroOrder);
    }
    let pairs = u
        .chart
        .poisson_pairs()
        .ok_or(StarError::NoPoissonTensor(u.chart))?;
    let n = u.chart.nvars();
    let mut acc = Symbol::zero(u.chart);
    // Compositions (n_e) of r over the tensor entries, with multinomial
    // coefficients r!/(prod n_e!).
    let mut counts = vec![0usize; pairs.len()];
    compositions(r, 0, &mut counts, &mut |counts| {
        let mut coeff = Rat::one();
        let mut rem = r;
        for (&(_, _, w), &c) in pairs.iter().zip(counts.iter()) {
            coeff *= Rat::from(BigInt::from(binom(rem, c) as i64));
            rem -= c;
            let mut wp = Rat::one();
            for _ in 0..c {
                wp *= Rat::from(BigInt::from(w));
            }
            coeff *= wp;
        }
        let mut du = vec![0u32; n];
        let mut dv = vec![0u32; n];
        for (&(i, j, _), &c) in pairs.iter().zip(counts.iter()) {
            du[i] += c as u32;
            dv[j] += c as u32;
        }
        let lhs = u.diff_multi(&du);
        if lhs.is_zero() {
            return;
        }
        let rhs = v.diff_multi(&dv);
        if rhs.is_zero() {
            return;
        }
        acc = acc.add(&lhs.mul(&rhs).scale(&ScalarQ::from_rat(coeff)));
    });
    Ok(acc)
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k.min(n - k) {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

fn compositions(rem: usize, idx: usize, counts: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if idx + 1 == counts.len() {
        counts[idx] = rem;
        f(counts);
        return;
    }
    for c in 0..=rem {
        counts[idx] = c;
        compositions(rem - c, idx + 1, counts, f);
    }
}

/// Star product `u * v = uv + sum_{r>=1} w_r P^r(u, v)`.
///
/// Finite and exact on the represented class: the series stops at the sum of
/// the factors' position degrees. Exponential weight on a position variable
/// would make the series non-terminating and is rejected.
pub fn star(u: &Symbol, v: &Symbol, conv: &StarConvention) -> Result<Symbol, StarError> {
    if u.chart != v.chart {
        return Err(StarError::MismatchedCharts);
    }
    if u.chart.poisson_pairs().is_none() {
        return Err(StarError::NoPoissonTensor(u.chart));
    }
    if u.has_positional_exp() || v.has_positional_exp() {
        return Err(StarError::NonTerminatingClass);
    }
    let rmax = (u.position_degree() + v.position_degree()) as usize;
    let mut acc = u.mul(v);
    for r in 1..=rmax {
        let term = pr(u, v, r)?;
        if !term.is_zero() {
            acc = acc.add(&term.scale(&conv.weight(r)));
        }
    }
    Ok(acc)
}

/// Star commutator `u * v - v * u`.
pub fn star_commutator(
    u: &Symbol,
    v: &Symbol,
    conv: &StarConvention,
) -> Result<Symbol, StarError> {
    Ok(star(u, v, conv)?.sub(&star(v, u, conv)?))
}

/// One pair's outcome in a commutator check.
#[derive(Clone, Debug)]
pub struct PairCheck {
    pub left: String,
    pub right: String,
    pub pass: bool,
    /// `i Z~ * i T~ - i T~ * i Z~ - i [Z,T]~`; zero exactly when the pair
    /// passes.
    pub residual: Symbol,
}

/// Report over all ordered basis pairs of an algebra.
#[derive(Clone, Debug)]
pub struct CommutatorReport {
    pub algebra: String,
    pub pairs: Vec<PairCheck>,
}

impl CommutatorReport {
    pub fn all_pass(&self) -> bool {
        self.pairs.iter().all(|p| p.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p() -> Symbol {
        Symbol::var(Chart::PQ, 0)
    }

    fn eq() -> Symbol {
        Symbol::exponential(Chart::PQ, vec![Rat::zero(), Rat::one()])
    }

    #[test]
    fn pr_first_order() {
        // P^1(p, e^q) = e^q
        let r = pr(&p(), &eq(), 1).unwrap();
        assert_eq!(r, eq());
        // P^1(u, u) = 0 for any u
        let u = p().add(&eq());
        assert!(pr(&u, &u, 1).unwrap().is_zero());
        // P^2(p, e^q) = 0
        assert!(pr(&p(), &eq(), 2).unwrap().is_zero());
    }

    #[test]
    fn star_unit_and_basic() {
        let conv = StarConvention::MoyalHalfI;
        let one = Symbol::one(Chart::PQ);
        let v = p().mul(&p()).add(&eq().scale(&ScalarQ::from_int(3)));
        assert_eq!(star(&one, &v, &conv).unwrap(), v);
        assert_eq!(star(&v, &one, &conv).unwrap(), v);

        // p * e^q = p e^q + (1/(2i)) e^q
        let r = star(&p(), &eq(), &conv).unwrap();
        let expect = p()
            .mul(&eq())
            .add(&eq().scale(&ScalarQ::complex(0, 1, -1, 2)));
        assert_eq!(r, expect);
    }

    #[test]
    fn star_commutator_reproduces_bracket() {
        // (ip) * (ie^q) - (ie^q) * (ip) = i e^q
        let conv = StarConvention::MoyalHalfI;
        let i = ScalarQ::i();
        let ip = p().scale(&i);
        let ieq = eq().scale(&i);
        let c = star_commutator(&ip, &ieq, &conv).unwrap();
        assert_eq!(c, eq().scale(&i));
    }

    #[test]
    fn star_rejects_nonterminating() {
        // e^p has exponential weight on the position variable
        let ep = Symbol::exponential(Chart::PQ, vec![Rat::one(), Rat::zero()]);
        assert_eq!(
            star(&ep, &ep, &StarConvention::MoyalHalfI),
            Err(StarError::NonTerminatingClass)
        );
    }

    #[test]
    fn star_bilinear() {
        let conv = StarConvention::MoyalHalfI;
        let a = ScalarQ::complex(2, 3, 1, 1);
        let b = ScalarQ::rational(-5, 7);
        let u1 = p().mul(&p());
        let u2 = eq();
        let v = p().mul(&eq());
        let lhs = star(&u1.scale(&a).add(&u2.scale(&b)), &v, &conv).unwrap();
        let rhs = star(&u1, &v, &conv)
            .unwrap()
            .scale(&a)
            .add(&star(&u2, &v, &conv).unwrap().scale(&b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_associative_low_degree() {
        // Exact associativity for position degree <= 2 factors.
        let conv = StarConvention::MoyalHalfI;
        let symbols = [
            p(),
            eq(),
            p().mul(&p()),
            p().mul(&eq()),
            Symbol::exponential(Chart::PQ, vec![Rat::zero(), rat(-1, 2)]),
        ];
        for u in &symbols {
            for v in &symbols {
                for w in &symbols {
                    let lhs = star(&star(u, v, &conv).unwrap(), w, &conv).unwrap();
                    let rhs = star(u, &star(v, w, &conv).unwrap(), &conv).unwrap();
                    assert_eq!(lhs, rhs, "associativity failed");
                }
            }
        }
    }

    #[test]
    fn leading_term_is_poisson() {
        // star(u,v) - star(v,u) = (1/i) P^1(u,v) exactly for degree <= 1.
        let conv = StarConvention::MoyalHalfI;
        let u = p().add(&eq().scale(&ScalarQ::from_int(2)));
        let v = p().scale(&ScalarQ::rational(1, 3)).add(&eq());
        let comm = star_commutator(&u, &v, &conv).unwrap();
        let pois = pr(&u, &v, 1).unwrap();
        // 1/i = -i
        assert_eq!(comm, pois.scale(&ScalarQ::complex(0, 1, -1, 1)));
    }

    #[test]
    fn weyl_bridge() {
        // Weights match under h -> -1: star_weyl(u,v,-1) = star_moyal(u,v);
        // and at h = +1 the arguments swap.
        let moyal = StarConvention::MoyalHalfI;
        let weyl_m1 = StarConvention::WeylH(rat(-1, 1));
        let weyl_p1 = StarConvention::WeylH(rat(1, 1));
        let samples = [
            p(),
            eq(),
            p().mul(&eq()),
            p().mul(&p()),
            Symbol::exponential(Chart::PQ, vec![Rat::zero(), rat(1, 2)]),
        ];
        for u in &samples {
            for v in &samples {
                let m = star(u, v, &moyal).unwrap();
                assert_eq!(m, star(u, v, &weyl_m1).unwrap());
                assert_eq!(m, star(v, u, &weyl_p1).unwrap());
            }
        }
    }

    #[test]
    fn zw_chart_pr_weights() {
        // P^1 on the 4-dim chart: 2[u_z v_w - u_w v_z + u_zb v_wb - u_wb v_zb]
        let z = Symbol::var(Chart::ZW, 0);
        let ew = Symbol::exponential(
            Chart::ZW,
            vec![Rat::zero(), Rat::one(), Rat::zero(), Rat::zero()],
        );
        let r = pr(&z, &ew, 1).unwrap();
        assert_eq!(r, ew.scale(&ScalarQ::from_int(2)));
    }
}
