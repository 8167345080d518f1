//! The two-term X-complex of adic truncations of the even-form Fedosov
//! algebra, its homology by exact ranks, idempotent lifting, and the
//! degree-zero Chern map.
//!
//! For an algebra A, let R = (even forms, Fedosov) and I = forms of degree
//! at least 2. The order-n stage of the adic tower is X(R / I^{n+1}): even
//! side the forms of degree 0..2n, odd side the odd forms of degree up to
//! 2n+1 modulo `W = N b(degree-(2n+2) forms)` (the image of `d(I^{n+1})`).
//! The differentials are
//!
//!   beta  = b - (1 + k) d          (odd -> even),
//!   delta = -N b + B               (even -> odd),
//!
//! with `N = 1 + k^2 + ... + k^{2(j-1)}` acting on the image of a
//! degree-2j form and k the Karoubi operator. Both composites vanish
//! exactly on every stage; this is asserted, not assumed.
//!
//! Stage homology can carry classes that die in the next stage (matrix
//! algebras already show this), and only the inverse limit of the tower is
//! the periodic theory. The reported dimensions are therefore the stable
//! range at order n: the image of stage-n homology inside stage-(n-1)
//! homology under the tower projection. Raw stage dimensions are reported
//! alongside.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::{axpy, kernel_basis, SpanReducer, SparseVec};
use crate::scalar::ScalarQ;
use crate::xcomplex::algebra::{AlgebraError, FDAlgebra};
use crate::xcomplex::form::{FormKey, NCForm};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum XError {
    CapTooSmall { cap: usize, need: usize },
    TooLarge { basis_size: usize, bound: usize },
    Algebra(AlgebraError),
    NotIdempotent,
    ShapeMismatch,
    ZeroOrder,
}

impl From<AlgebraError> for XError {
    fn from(e: AlgebraError) -> Self {
        XError::Algebra(e)
    }
}

impl fmt::Display for XError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XError::CapTooSmall { cap, need } => {
                write!(f, "cap {cap} too small, need at least {need}")
            }
            XError::TooLarge { basis_size, bound } => write!(
                f,
                "truncated complex has {basis_size} basis forms, above the limit {bound}"
            ),
            XError::Algebra(e) => write!(f, "{e}"),
            XError::NotIdempotent => write!(f, "input is not an idempotent"),
            XError::ShapeMismatch => write!(f, "matrix shapes do not match"),
            XError::ZeroOrder => write!(f, "adic order must be at least 1"),
        }
    }
}

/// Enumeration of form basis keys for a band of degrees, with dense
/// mixed-radix indexing. Bands for consecutive orders share their common
/// prefix, so tower projections are plain index truncations.
struct DegreeBand {
    dim: usize,
    rdim: usize,
    degrees: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
}

impl DegreeBand {
    fn new(alg: &FDAlgebra, degrees: Vec<usize>) -> Self {
        let dim = alg.dim();
        let rdim = alg.reduced_dim();
        let mut offsets = Vec::with_capacity(degrees.len());
        let mut total = 0usize;
        for &d in &degrees {
            offsets.push(total);
            total += dim * rdim.pow(d as u32);
        }
        DegreeBand {
            dim,
            rdim,
            degrees,
            offsets,
            total,
        }
    }

    fn index(&self, key: &FormKey) -> Option<usize> {
        let pos = self.degrees.iter().position(|&d| d == key.degree())?;
        let mut idx = key.a0;
        let mut stride = self.dim;
        for &s in &key.slots {
            idx += s * stride;
            stride *= self.rdim;
        }
        Some(self.offsets[pos] + idx)
    }

    fn key(&self, mut idx: usize) -> FormKey {
        let pos = self
            .offsets
            .iter()
            .rposition(|&o| o <= idx)
            .expect("index in range");
        idx -= self.offsets[pos];
        let deg = self.degrees[pos];
        let a0 = idx % self.dim;
        idx /= self.dim;
        let mut slots = Vec::with_capacity(deg);
        for _ in 0..deg {
            slots.push(idx % self.rdim);
            idx /= self.rdim;
        }
        FormKey { a0, slots }
    }

    fn to_sparse(&self, form: &NCForm) -> SparseVec {
        let mut entries: Vec<(usize, ScalarQ)> = form
            .terms()
            .map(|(k, c)| {
                (
                    self.index(k).expect("form outside the degree band"),
                    c.clone(),
                )
            })
            .collect();
        entries.sort_by_key(|(i, _)| *i);
        entries
    }
}

/// Memoized per-basis-key actions of d, b and the Karoubi operator at a
/// fixed cap. Everything downstream is linear, so arbitrary forms go
/// through these tables.
struct OpCache {
    alg: Arc<FDAlgebra>,
    cap: usize,
    d: BTreeMap<FormKey, NCForm>,
    b: BTreeMap<FormKey, NCForm>,
    kappa: BTreeMap<FormKey, NCForm>,
}

impl OpCache {
    fn new(alg: &Arc<FDAlgebra>, cap: usize) -> Self {
        OpCache {
            alg: Arc::clone(alg),
            cap,
            d: BTreeMap::new(),
            b: BTreeMap::new(),
            kappa: BTreeMap::new(),
        }
    }

    fn key_form(&self, key: &FormKey) -> NCForm {
        NCForm::from_key(&self.alg, key.clone(), self.cap)
    }

    fn apply_d(&mut self, form: &NCForm) -> NCForm {
        let mut out = NCForm::zero(&self.alg, self.cap);
        for (key, c) in form.terms() {
            if !self.d.contains_key(key) {
                let v = self.key_form(key).d_trunc();
                self.d.insert(key.clone(), v);
            }
            out = out.add(&self.d[key].scale(c));
        }
        out
    }

    fn apply_b(&mut self, form: &NCForm) -> NCForm {
        let mut out = NCForm::zero(&self.alg, self.cap);
        for (key, c) in form.terms() {
            if !self.b.contains_key(key) {
                let v = self.key_form(key).hochschild_b();
                self.b.insert(key.clone(), v);
            }
            out = out.add(&self.b[key].scale(c));
        }
        out
    }

    fn apply_kappa(&mut self, form: &NCForm) -> NCForm {
        let mut out = NCForm::zero(&self.alg, self.cap);
        for (key, c) in form.terms() {
            if !self.kappa.contains_key(key) {
                let f = self.key_form(key);
                let bf = self.apply_b(&f);
                let db = self.apply_d(&bf);
                let df = self.apply_d(&f);
                let bd = self.apply_b(&df);
                let v = f.sub(&db).sub(&bd);
                self.kappa.insert(key.clone(), v);
            }
            out = out.add(&self.kappa[key].scale(c));
        }
        out
    }

    /// `N = sum_{j=0}^{terms-1} k^{2j}`.
    fn n_kappa_sq(&mut self, form: &NCForm, terms: usize) -> NCForm {
        let mut acc = NCForm::zero(&self.alg, self.cap);
        let mut cur = form.clone();
        for j in 0..terms {
            if j > 0 {
                let once = self.apply_kappa(&cur);
                cur = self.apply_kappa(&once);
            }
            acc = acc.add(&cur);
        }
        acc
    }

    /// `B = (1 + k + ... + k^deg) d` on a homogeneous degree component.
    fn connes_b(&mut self, form: &NCForm, deg: usize) -> NCForm {
        let dform = self.apply_d(form);
        let mut acc = dform.clone();
        let mut cur = dform;
        for _ in 0..deg {
            cur = self.apply_kappa(&cur);
            acc = acc.add(&cur);
        }
        acc
    }

    /// `delta = -N b + B` on a homogeneous even form of degree `2 * half`.
    fn delta_on(&mut self, form: &NCForm, half: usize) -> NCForm {
        let nb = {
            let b = self.apply_b(form);
            self.n_kappa_sq(&b, half)
        };
        self.connes_b(form, 2 * half).sub(&nb)
    }

    /// `beta = b - (1 + k) d`, projected to degrees at most `maxdeg`.
    fn beta_on(&mut self, form: &NCForm, maxdeg: usize) -> NCForm {
        let d = self.apply_d(form);
        let kd = self.apply_kappa(&d);
        self.apply_b(form)
            .sub(&d)
            .sub(&kd)
            .truncate_degree(maxdeg)
    }
}

/// Everything computed for one stage X(R / I^{n+1}) of the tower.
struct Stage {
    even_total: usize,
    odd_total: usize,
    w_span: SpanReducer,
    /// delta of each even basis key, already reduced modulo W
    delta_cols: Vec<SparseVec>,
    /// beta of each odd basis key, in even-band coordinates
    beta_cols: Vec<SparseVec>,
    rank_w: usize,
    rank_delta: usize,
    rank_beta: usize,
    complex_property: bool,
}

impl Stage {
    fn h0(&self) -> usize {
        self.even_total - self.rank_delta - self.rank_beta
    }

    fn h1(&self) -> usize {
        (self.odd_total - self.rank_w) - self.rank_delta - self.rank_beta
    }
}

fn build_stage(alg: &Arc<FDAlgebra>, n: usize) -> Stage {
    let scratch = 2 * n + 2;
    let mut ops = OpCache::new(alg, scratch);
    let even = DegreeBand::new(alg, (0..=n).map(|k| 2 * k).collect());
    let odd = DegreeBand::new(alg, (0..=n).map(|k| 2 * k + 1).collect());
    let top = DegreeBand::new(alg, vec![2 * n + 2]);

    // W: image of d(I^{n+1}) on the odd side
    let mut w_span = SpanReducer::new(odd.total);
    let mut w_forms: Vec<NCForm> = Vec::new();
    for idx in 0..top.total {
        let f = NCForm::from_key(alg, top.key(idx), scratch);
        let b = ops.apply_b(&f);
        let w = ops.n_kappa_sq(&b, n + 1);
        if !w.is_zero() && w_span.insert(odd.to_sparse(&w)) {
            w_forms.push(w);
        }
    }
    let rank_w = w_span.rank();

    // delta columns reduced modulo W
    let mut delta_rank_span = SpanReducer::new(odd.total);
    let mut delta_cols = Vec::with_capacity(even.total);
    let mut delta_forms = Vec::with_capacity(even.total);
    for idx in 0..even.total {
        let key = even.key(idx);
        let half = key.degree() / 2;
        let f = NCForm::from_key(alg, key, scratch);
        let df = ops.delta_on(&f, half);
        let reduced = w_span.reduce(odd.to_sparse(&df));
        delta_rank_span.insert(reduced.clone());
        delta_cols.push(reduced);
        delta_forms.push(df);
    }
    let rank_delta = delta_rank_span.rank();

    // beta columns
    let mut beta_span = SpanReducer::new(even.total);
    let mut beta_cols = Vec::with_capacity(odd.total);
    let mut beta_forms = Vec::with_capacity(odd.total);
    for idx in 0..odd.total {
        let f = NCForm::from_key(alg, odd.key(idx), scratch);
        let bf = ops.beta_on(&f, 2 * n);
        beta_span.insert(even.to_sparse(&bf));
        beta_cols.push(even.to_sparse(&bf));
        beta_forms.push(bf);
    }
    let rank_beta = beta_span.rank();

    // exact complex property on the quotient:
    // beta kills W, beta(delta(.)) = 0 in the even truncation, and
    // delta(beta(.)) lies in W.
    let mut complex_property = true;
    for w in &w_forms {
        if !ops.beta_on(w, 2 * n).is_zero() {
            complex_property = false;
        }
    }
    for df in &delta_forms {
        if !ops.beta_on(df, 2 * n).is_zero() {
            complex_property = false;
        }
    }
    for bf in &beta_forms {
        let mut db = NCForm::zero(alg, scratch);
        for k in 0..=n {
            let comp = bf.component(2 * k);
            if !comp.is_zero() {
                db = db.add(&ops.delta_on(&comp, k));
            }
        }
        if !w_span.contains(odd.to_sparse(&db)) {
            complex_property = false;
        }
    }

    Stage {
        even_total: even.total,
        odd_total: odd.total,
        w_span,
        delta_cols,
        beta_cols,
        rank_w,
        rank_delta,
        rank_beta,
        complex_property,
    }
}

/// Homology data of the order-n truncated X-complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XHomologyReport {
    pub algebra: String,
    pub adic_order: usize,
    pub cap: usize,
    /// stable even homology: image of stage-n H0 in stage-(n-1) H0
    pub h0: usize,
    /// stable odd homology: image of stage-n H1 in stage-(n-1) H1
    pub h1: usize,
    /// homology of the order-n stage itself
    pub stage_h0: usize,
    pub stage_h1: usize,
    pub dim_even: usize,
    pub dim_odd: usize,
    /// composites vanish exactly on both stages involved
    pub complex_property: bool,
}

/// Basis-size guard: exact elimination beyond this is unreasonable here.
const BASIS_BOUND: usize = 200_000;

/// Stable homology dimensions of the adic tower at order n (n >= 1), with
/// the raw stage dimensions alongside. `cap` must be at least 2n+2; the
/// computation works at exactly that internal cap.
pub fn x_complex_homology(
    alg: &Arc<FDAlgebra>,
    adic_order: usize,
    cap: usize,
) -> Result<XHomologyReport, XError> {
    if adic_order == 0 {
        return Err(XError::ZeroOrder);
    }
    let need = 2 * adic_order + 2;
    if cap < need {
        return Err(XError::CapTooSmall { cap, need });
    }
    let n = adic_order;
    {
        let even = DegreeBand::new(alg, (0..=n).map(|k| 2 * k).collect());
        let odd = DegreeBand::new(alg, (0..=n).map(|k| 2 * k + 1).collect());
        let top = DegreeBand::new(alg, vec![2 * n + 2]);
        let basis_size = even.total + odd.total + top.total;
        if basis_size > BASIS_BOUND {
            return Err(XError::TooLarge {
                basis_size,
                bound: BASIS_BOUND,
            });
        }
    }

    let cur = build_stage(alg, n);
    let prev = build_stage(alg, n - 1);

    // H0 image: project delta-cycles of stage n (even band prefix) and
    // count them modulo the beta image of stage n-1.
    let h0 = {
        let cycles = kernel_basis(cur.odd_total, &cur.delta_cols);
        let mut span = SpanReducer::new(prev.even_total);
        for col in &prev.beta_cols {
            span.insert(col.clone());
        }
        let base = span.rank();
        for cyc in &cycles {
            let projected: SparseVec = cyc
                .iter()
                .filter(|(i, _)| *i < prev.even_total)
                .cloned()
                .collect();
            span.insert(projected);
        }
        span.rank() - base
    };

    // H1 image: project beta-cycles of stage n (odd band prefix) and count
    // them modulo W and the delta image of stage n-1.
    let h1 = {
        let cycles = kernel_basis(cur.even_total, &cur.beta_cols);
        let mut span = SpanReducer::new(prev.odd_total);
        for row in prev.w_span.rows() {
            span.insert(row.clone());
        }
        for col in &prev.delta_cols {
            span.insert(col.clone());
        }
        let base = span.rank();
        for cyc in &cycles {
            let projected: SparseVec = cyc
                .iter()
                .filter(|(i, _)| *i < prev.odd_total)
                .cloned()
                .collect();
            span.insert(projected);
        }
        span.rank() - base
    };

    Ok(XHomologyReport {
        algebra: alloc::format!("{:?}", alg),
        adic_order,
        cap,
        h0,
        h1,
        stage_h0: cur.h0(),
        stage_h1: cur.h1(),
        dim_even: cur.even_total,
        dim_odd: cur.odd_total - cur.rank_w,
        complex_property: cur.complex_property && prev.complex_property,
    })
}

/// A matrix of noncommutative forms under the entrywise-Fedosov product.
#[derive(Clone, PartialEq, Eq)]
pub struct FormMatrix {
    pub size: usize,
    pub entries: Vec<NCForm>,
}

impl fmt::Debug for FormMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FormMatrix({}x{})", self.size, self.size)?;
        for i in 0..self.size {
            for j in 0..self.size {
                writeln!(f, "  [{i},{j}] = {}", self.at(i, j))?;
            }
        }
        Ok(())
    }
}

impl FormMatrix {
    pub fn zero(alg: &Arc<FDAlgebra>, size: usize, cap: usize) -> Self {
        FormMatrix {
            size,
            entries: vec![NCForm::zero(alg, cap); size * size],
        }
    }

    pub fn identity(alg: &Arc<FDAlgebra>, size: usize, cap: usize) -> Self {
        let mut m = FormMatrix::zero(alg, size, cap);
        for i in 0..size {
            m.entries[i * size + i] = NCForm::unit(alg, cap);
        }
        m
    }

    /// Entrywise inclusion of a matrix of algebra elements.
    pub fn from_elements(
        alg: &Arc<FDAlgebra>,
        rows: Vec<Vec<Vec<ScalarQ>>>,
        cap: usize,
    ) -> Result<Self, XError> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(XError::ShapeMismatch);
        }
        let mut m = FormMatrix::zero(alg, size, cap);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m.entries[i * size + j] = NCForm::from_element(alg, v, cap);
            }
        }
        Ok(m)
    }

    pub fn at(&self, i: usize, j: usize) -> &NCForm {
        &self.entries[i * self.size + j]
    }

    pub fn add(&self, rhs: &FormMatrix) -> FormMatrix {
        assert_eq!(self.size, rhs.size);
        FormMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &FormMatrix) -> FormMatrix {
        assert_eq!(self.size, rhs.size);
        FormMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &ScalarQ) -> FormMatrix {
        FormMatrix {
            size: self.size,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    /// Entrywise-Fedosov matrix product.
    pub fn fedosov(&self, rhs: &FormMatrix) -> FormMatrix {
        assert_eq!(self.size, rhs.size);
        let n = self.size;
        let alg = self.entries[0].algebra().clone();
        let cap = self.entries[0].cap();
        let mut out = FormMatrix::zero(&alg, n, cap);
        for i in 0..n {
            for j in 0..n {
                let mut acc = NCForm::zero(&alg, cap);
                for k in 0..n {
                    acc = acc.add(&self.at(i, k).fedosov(rhs.at(k, j)));
                }
                out.entries[i * n + j] = acc;
            }
        }
        out
    }

    pub fn trace(&self) -> NCForm {
        let alg = self.entries[0].algebra().clone();
        let cap = self.entries[0].cap();
        let mut acc = NCForm::zero(&alg, cap);
        for i in 0..self.size {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(NCForm::is_zero)
    }
}

/// Central binomial coefficient `C(2m, m) = C(2m-2, m-1) * 2(2m-1)/m`.
fn central_binomial(m: usize) -> i64 {
    let mut c: i64 = 1;
    for k in 1..=m as i64 {
        c = c * 2 * (2 * k - 1) / k;
    }
    c
}

/// Lift an idempotent matrix over A to an idempotent matrix over the
/// order-n truncation of the Fedosov algebra:
/// `F(x) = x + (x - 1/2) sum_{m=1}^{n} C(2m, m) (x - x o x)^m`
/// with all products Fedosov and `x` the canonical degree-0 inclusion.
/// `F(x) o F(x) = F(x)` holds exactly modulo forms of degree >= 2(n+1),
/// which the cap-2n truncation realizes.
pub fn lift_idempotent(
    alg: &Arc<FDAlgebra>,
    e: Vec<Vec<Vec<ScalarQ>>>,
    adic_order: usize,
) -> Result<FormMatrix, XError> {
    let size = e.len();
    // verify e * e = e in M_size(A) exactly
    {
        let mut prod = vec![vec![vec![ScalarQ::zero(); alg.dim()]; size]; size];
        for i in 0..size {
            if e[i].len() != size {
                return Err(XError::ShapeMismatch);
            }
            for j in 0..size {
                for k in 0..size {
                    let p = alg.mul_vec(&e[i][k], &e[k][j]);
                    for (t, v) in p.into_iter().enumerate() {
                        prod[i][j][t] += &v;
                    }
                }
            }
        }
        if prod != e {
            return Err(XError::NotIdempotent);
        }
    }
    let cap = 2 * adic_order;
    let x = FormMatrix::from_elements(alg, e, cap)?;
    let q = x.sub(&x.fedosov(&x));
    let half = ScalarQ::rational(1, 2);
    let alg_arc = x.entries[0].algebra().clone();
    let x_minus_half = x.sub(&FormMatrix::identity(&alg_arc, size, cap).scale(&half));
    let mut acc = x.clone();
    let mut qpow = FormMatrix::identity(&alg_arc, size, cap);
    for m in 1..=adic_order {
        qpow = qpow.fedosov(&q);
        if qpow.is_zero() {
            break;
        }
        let coeff = ScalarQ::from_int(central_binomial(m));
        acc = acc.add(&x_minus_half.fedosov(&qpow).scale(&coeff));
    }
    Ok(acc)
}

/// The degree-zero Chern representative: the trace of the idempotent lift,
/// reduced to a canonical vector modulo the image of beta.
#[derive(Clone, Debug)]
pub struct Chern0Report {
    pub trace: NCForm,
    /// canonical residue modulo im(beta): (even-band index, value) pairs
    pub class: SparseVec,
}

pub fn chern0(
    alg: &Arc<FDAlgebra>,
    e: Vec<Vec<Vec<ScalarQ>>>,
    adic_order: usize,
) -> Result<Chern0Report, XError> {
    let lift = lift_idempotent(alg, e, adic_order)?;
    let tr = lift.trace();
    let reducer = beta_image_reducer(alg, adic_order);
    let even = DegreeBand::new(alg, (0..=adic_order).map(|k| 2 * k).collect());
    let class = reducer.reduce(even.to_sparse(&tr));
    Ok(Chern0Report { trace: tr, class })
}

/// Span of the beta image inside the even band (the denominator of
/// stage-n H0).
pub fn beta_image_reducer(alg: &Arc<FDAlgebra>, adic_order: usize) -> SpanReducer {
    let n = adic_order;
    let scratch = 2 * n + 2;
    let mut ops = OpCache::new(alg, scratch);
    let even = DegreeBand::new(alg, (0..=n).map(|k| 2 * k).collect());
    let odd = DegreeBand::new(alg, (0..=n).map(|k| 2 * k + 1).collect());
    let mut span = SpanReducer::new(even.total);
    for idx in 0..odd.total {
        let f = NCForm::from_key(alg, odd.key(idx), scratch);
        let bf = ops.beta_on(&f, 2 * n);
        span.insert(even.to_sparse(&bf));
    }
    span
}

/// Raw stage homology (no stabilization), used by tests and diagnostics.
pub fn x_complex_stage_homology(
    alg: &Arc<FDAlgebra>,
    adic_order: usize,
) -> (usize, usize, bool) {
    let s = build_stage(alg, adic_order);
    (s.h0(), s.h1(), s.complex_property)
}

/// Apply a sparse column combination, for pairing tests.
pub fn combine_columns(cols: &[SparseVec], combo: &SparseVec) -> SparseVec {
    let mut acc: SparseVec = Vec::new();
    for (j, c) in combo {
        acc = axpy(&acc, c, &cols[*j]);
    }
    acc
}
