//! Noncommutative differential forms over a finite-dimensional algebra, at
//! a finite degree cap: the graded product, the universal differential d,
//! the Hochschild operator b, the Karoubi operator, the cyclic operator B
//! and the Fedosov product.
//!
//! Degree-n forms are spanned by `a0 da1 ... dan` with `a0` in the algebra
//! and the d-slots in A / Q(i)*1 (d of a scalar vanishes identically, so
//! slot entries are reduced classes; the formulas all descend to this
//! normalized picture).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::ScalarQ;
use crate::xcomplex::algebra::FDAlgebra;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FormError {
    CapExceeded { degree: usize, cap: usize },
    MixedAlgebras,
}

impl fmt::Display for FormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormError::CapExceeded { degree, cap } => {
                write!(f, "form of degree {degree} exceeds the cap {cap}")
            }
            FormError::MixedAlgebras => write!(f, "forms over different algebras"),
        }
    }
}

/// Basis label of a form: the algebra-basis index of `a0` and the reduced
/// indices of the d-slots.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct FormKey {
    pub a0: usize,
    pub slots: Vec<usize>,
}

impl FormKey {
    pub fn degree(&self) -> usize {
        self.slots.len()
    }
}

/// A noncommutative form: exact Q(i)-combination of [`FormKey`] basis
/// elements, all of degree at most `cap`. Terms pushed past the cap are
/// dropped, which is exactly arithmetic in the quotient by high-degree
/// forms.
#[derive(Clone, PartialEq, Eq)]
pub struct NCForm {
    alg: Arc<FDAlgebra>,
    cap: usize,
    terms: BTreeMap<FormKey, ScalarQ>,
}

impl NCForm {
    pub fn zero(alg: &Arc<FDAlgebra>, cap: usize) -> Self {
        NCForm {
            alg: Arc::clone(alg),
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(alg: &Arc<FDAlgebra>, cap: usize) -> Self {
        NCForm::from_element(alg, alg.unit().to_vec(), cap)
    }

    /// A degree-0 form from algebra coordinates.
    pub fn from_element(alg: &Arc<FDAlgebra>, coords: Vec<ScalarQ>, cap: usize) -> Self {
        let mut f = NCForm::zero(alg, cap);
        for (i, c) in coords.into_iter().enumerate() {
            f.add_term(FormKey { a0: i, slots: Vec::new() }, c);
        }
        f
    }

    pub fn from_key(alg: &Arc<FDAlgebra>, key: FormKey, cap: usize) -> Self {
        let mut f = NCForm::zero(alg, cap);
        f.add_term(key, ScalarQ::one());
        f
    }

    pub fn algebra(&self) -> &Arc<FDAlgebra> {
        &self.alg
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(FormKey::degree).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormKey, &ScalarQ)> {
        self.terms.iter()
    }

    fn add_term(&mut self, key: FormKey, c: ScalarQ) {
        if c.is_zero() || key.degree() > self.cap {
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

    /// Same form with a different cap (degrees above it are dropped).
    pub fn with_cap(&self, cap: usize) -> NCForm {
        let mut out = NCForm::zero(&self.alg, cap);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn add(&self, rhs: &NCForm) -> NCForm {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &NCForm) -> NCForm {
        self.add(&rhs.scale(&ScalarQ::from_int(-1)))
    }

    pub fn scale(&self, c: &ScalarQ) -> NCForm {
        let mut out = NCForm::zero(&self.alg, self.cap);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// The homogeneous degree-d part.
    pub fn component(&self, d: usize) -> NCForm {
        let mut out = NCForm::zero(&self.alg, self.cap);
        for (k, c) in &self.terms {
            if k.degree() == d {
                out.add_term(k.clone(), c.clone());
            }
        }
        out
    }

    /// Drop all components of degree above `maxdeg`.
    pub fn truncate_degree(&self, maxdeg: usize) -> NCForm {
        let mut out = NCForm::zero(&self.alg, self.cap);
        for (k, c) in &self.terms {
            if k.degree() <= maxdeg {
                out.add_term(k.clone(), c.clone());
            }
        }
        out
    }

    /// Universal differential, silently truncated at the cap:
    /// `d(a0 da1 ... dan) = 1 d[a0] da1 ... dan` (zero when `a0` is scalar).
    pub fn d_trunc(&self) -> NCForm {
        let alg = &self.alg;
        let unit = alg.unit();
        let mut out = NCForm::zero(alg, self.cap);
        for (k, c) in &self.terms {
            let red = alg.reduce_basis(k.a0);
            for (r, rc) in red.iter().enumerate() {
                if rc.is_zero() {
                    continue;
                }
                let mut slots = Vec::with_capacity(k.slots.len() + 1);
                slots.push(r);
                slots.extend_from_slice(&k.slots);
                for (u, uc) in unit.iter().enumerate() {
                    if uc.is_zero() {
                        continue;
                    }
                    out.add_term(
                        FormKey { a0: u, slots: slots.clone() },
                        c * rc * uc.clone(),
                    );
                }
            }
        }
        out
    }

    /// Universal differential with an explicit cap check.
    pub fn nc_d(&self) -> Result<NCForm, FormError> {
        if !self.component(self.cap).is_zero() {
            return Err(FormError::CapExceeded {
                degree: self.cap + 1,
                cap: self.cap,
            });
        }
        Ok(self.d_trunc())
    }

    /// Right multiplication by an algebra element (Leibniz moves the element
    /// through the last d-slot):
    /// `(w d c) b = w d(c b) - (w c) d(b)`.
    fn rmul_elem(&self, b: &[ScalarQ]) -> NCForm {
        let alg = &self.alg;
        let mut out = NCForm::zero(alg, self.cap);
        // group keys by degree; recursion peels the last slot
        for (k, c) in &self.terms {
            if k.slots.is_empty() {
                let prod = alg.mul_vec(&alg.basis_vec(k.a0), b);
                for (i, p) in prod.into_iter().enumerate() {
                    out.add_term(FormKey { a0: i, slots: Vec::new() }, c * &p);
                }
                continue;
            }
            let last = *k.slots.last().expect("nonempty");
            let prefix = NCForm::from_key(
                alg,
                FormKey {
                    a0: k.a0,
                    slots: k.slots[..k.slots.len() - 1].to_vec(),
                },
                self.cap,
            );
            let e_last = alg.basis_vec(alg.lift_index(last));
            // w d(last * b)
            let t1 = prefix.append_slot(&alg.reduce(&alg.mul_vec(&e_last, b)));
            // - (w last) d(b)
            let t2 = prefix.rmul_elem(&e_last).append_slot(&alg.reduce(b));
            out = out.add(&t1.sub(&t2).scale(c));
        }
        out
    }

    /// Append one d-slot with a reduced-class coefficient vector.
    fn append_slot(&self, red: &[ScalarQ]) -> NCForm {
        let mut out = NCForm::zero(&self.alg, self.cap);
        for (k, c) in &self.terms {
            for (r, rc) in red.iter().enumerate() {
                if rc.is_zero() {
                    continue;
                }
                let mut slots = k.slots.clone();
                slots.push(r);
                out.add_term(FormKey { a0: k.a0, slots }, c * rc);
            }
        }
        out
    }

    /// Graded associative product of universal forms (no extra signs; the
    /// grading only enters through the Leibniz rule inside).
    pub fn mul(&self, rhs: &NCForm) -> NCForm {
        assert!(
            Arc::ptr_eq(&self.alg, &rhs.alg) || *self.alg == *rhs.alg,
            "forms over different algebras"
        );
        let mut out = NCForm::zero(&self.alg, self.cap.min(rhs.cap));
        for (k, c) in &rhs.terms {
            let mut part = self
                .with_cap(out.cap)
                .rmul_elem(&self.alg.basis_vec(k.a0));
            for &s in &k.slots {
                let mut red = vec![ScalarQ::zero(); self.alg.reduced_dim()];
                red[s] = ScalarQ::one();
                part = part.append_slot(&red);
            }
            out = out.add(&part.scale(c));
        }
        out
    }

    /// Hochschild boundary:
    /// `b(a0 da1..dan) = a0 a1 da2..dan
    ///   + sum_{i=1}^{n-1} (-1)^i a0 da1..d(a_i a_{i+1})..dan
    ///   + (-1)^n a_n a0 da1..da_{n-1}`.
    pub fn hochschild_b(&self) -> NCForm {
        let alg = &self.alg;
        let mut out = NCForm::zero(alg, self.cap);
        for (k, c) in &self.terms {
            let n = k.slots.len();
            if n == 0 {
                continue;
            }
            let lift = |r: usize| alg.basis_vec(alg.lift_index(r));
            // a0 a1 da2...
            let prod = alg.mul_vec(&alg.basis_vec(k.a0), &lift(k.slots[0]));
            for (i, p) in prod.into_iter().enumerate() {
                out.add_term(
                    FormKey { a0: i, slots: k.slots[1..].to_vec() },
                    c * &p,
                );
            }
            // middle contractions: merge slots i-1 and i with sign (-1)^i
            for i in 1..n {
                let merged = alg.reduce(&alg.mul_vec(&lift(k.slots[i - 1]), &lift(k.slots[i])));
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for (r, rc) in merged.iter().enumerate() {
                    if rc.is_zero() {
                        continue;
                    }
                    let mut slots = Vec::with_capacity(n - 1);
                    slots.extend_from_slice(&k.slots[..i - 1]);
                    slots.push(r);
                    slots.extend_from_slice(&k.slots[i + 1..]);
                    out.add_term(
                        FormKey { a0: k.a0, slots },
                        c * rc * ScalarQ::from_int(sign),
                    );
                }
            }
            // (-1)^n a_n a0 da1..da_{n-1}
            let lastprod = alg.mul_vec(&lift(k.slots[n - 1]), &alg.basis_vec(k.a0));
            let sign = if n % 2 == 0 { 1 } else { -1 };
            for (i, p) in lastprod.into_iter().enumerate() {
                out.add_term(
                    FormKey { a0: i, slots: k.slots[..n - 1].to_vec() },
                    c * &p * ScalarQ::from_int(sign),
                );
            }
        }
        out
    }

    /// Karoubi operator `k = 1 - (d b + b d)`; degree preserving, so the
    /// cap is raised internally for the `b d` round trip.
    pub fn karoubi(&self) -> NCForm {
        let roomy = self.with_cap(self.cap + 1);
        let db = roomy.hochschild_b().d_trunc();
        let bd = roomy.d_trunc().hochschild_b();
        roomy.sub(&db).sub(&bd).with_cap(self.cap)
    }

    /// Cyclic operator `B = (1 + k + ... + k^n) d` on the degree-n part,
    /// silently truncated at the cap.
    pub fn connes_b_trunc(&self) -> NCForm {
        let mut out = NCForm::zero(&self.alg, self.cap);
        for deg in 0..=self.max_degree() {
            let comp = self.component(deg);
            if comp.is_zero() {
                continue;
            }
            let dcomp = comp.d_trunc();
            let mut acc = dcomp.clone();
            let mut cur = dcomp;
            for _ in 0..deg {
                cur = cur.karoubi();
                acc = acc.add(&cur);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Cyclic operator with an explicit cap check.
    pub fn nc_connes_b(&self) -> Result<NCForm, FormError> {
        if !self.component(self.cap).is_zero() {
            return Err(FormError::CapExceeded {
                degree: self.cap + 1,
                cap: self.cap,
            });
        }
        Ok(self.connes_b_trunc())
    }

    /// Fedosov product `w1 o w2 = w1 w2 - (-1)^{|w1|} d w1 d w2`,
    /// truncated at the cap.
    pub fn fedosov(&self, rhs: &NCForm) -> NCForm {
        let mut out = self.mul(rhs);
        let drhs = rhs.d_trunc();
        for deg in 0..=self.max_degree() {
            let comp = self.component(deg);
            if comp.is_zero() {
                continue;
            }
            let sign = if deg % 2 == 0 { -1 } else { 1 };
            out = out.add(
                &comp
                    .d_trunc()
                    .mul(&drhs)
                    .scale(&ScalarQ::from_int(sign)),
            );
        }
        out
    }

    pub fn render(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for NCForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let labels = self.alg.labels();
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{}", labels[k.a0])?;
            for &s in &k.slots {
                write!(f, " d[{}]", labels[self.alg.lift_index(s)])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> Arc<FDAlgebra> {
        FDAlgebra::complex_pair()
    }

    fn m2() -> Arc<FDAlgebra> {
        FDAlgebra::mat2()
    }

    /// All degree-n basis keys of the form space.
    fn basis_keys(alg: &Arc<FDAlgebra>, deg: usize) -> Vec<FormKey> {
        let rdim = alg.reduced_dim();
        let mut keys = Vec::new();
        let count = alg.dim() * rdim.pow(deg as u32);
        for idx in 0..count {
            let mut rest = idx;
            let a0 = rest % alg.dim();
            rest /= alg.dim();
            let mut slots = Vec::with_capacity(deg);
            for _ in 0..deg {
                slots.push(rest % rdim);
                rest /= rdim;
            }
            keys.push(FormKey { a0, slots });
        }
        keys
    }

    #[test]
    fn d_squares_to_zero() {
        for alg in [c2(), m2()] {
            for deg in 0..=2 {
                for k in basis_keys(&alg, deg) {
                    let f = NCForm::from_key(&alg, k, 6);
                    assert!(f.d_trunc().d_trunc().is_zero());
                }
            }
        }
    }

    #[test]
    fn b_on_degree_one() {
        // b(a0 da1) = a0 a1 - a1 a0
        let alg = m2();
        for k in basis_keys(&alg, 1) {
            let f = NCForm::from_key(&alg, k.clone(), 4);
            let b = f.hochschild_b();
            let x = alg.basis_vec(k.a0);
            let y = alg.basis_vec(alg.lift_index(k.slots[0]));
            let comm: Vec<ScalarQ> = alg
                .mul_vec(&x, &y)
                .iter()
                .zip(alg.mul_vec(&y, &x))
                .map(|(a, b)| a - &b)
                .collect();
            assert_eq!(b, NCForm::from_element(&alg, comm, 4));
        }
    }

    #[test]
    fn b_squares_to_zero() {
        for alg in [c2(), m2()] {
            for deg in 2..=3 {
                for k in basis_keys(&alg, deg) {
                    let f = NCForm::from_key(&alg, k, 6);
                    assert!(f.hochschild_b().hochschild_b().is_zero());
                }
            }
        }
    }

    #[test]
    fn connes_b_squares_to_zero_and_anticommutes() {
        for alg in [c2(), m2()] {
            for deg in 0..=2 {
                for k in basis_keys(&alg, deg) {
                    let f = NCForm::from_key(&alg, k, 6);
                    let bb = f.connes_b_trunc().connes_b_trunc();
                    assert!(bb.is_zero(), "B^2 != 0");
                    // b B + B b = 0
                    let anti = f
                        .connes_b_trunc()
                        .hochschild_b()
                        .add(&f.hochschild_b().connes_b_trunc());
                    assert!(anti.is_zero(), "bB + Bb != 0");
                }
            }
        }
    }

    #[test]
    fn karoubi_explicit_formula() {
        // k(a0 da1..dan) = (-1)^{n-1} d a_n a0 da1 .. da_{n-1}
        //               = (-1)^{n-1} [d(a_n a0) da1..da_{n-1} - a_n d a0 da1..]
        let alg = m2();
        for k in basis_keys(&alg, 2) {
            let f = NCForm::from_key(&alg, k.clone(), 5);
            let kap = f.karoubi();
            let lift = |r: usize| alg.basis_vec(alg.lift_index(r));
            let an = lift(k.slots[1]);
            let a0 = alg.basis_vec(k.a0);
            // d(a_n a0) da1
            let mut t1 = NCForm::zero(&alg, 5);
            let merged = alg.reduce(&alg.mul_vec(&an, &a0));
            for (r, rc) in merged.iter().enumerate() {
                if rc.is_zero() {
                    continue;
                }
                for (u, uc) in alg.unit().iter().enumerate() {
                    if uc.is_zero() {
                        continue;
                    }
                    t1 = t1.add(&NCForm::from_key(
                        &alg,
                        FormKey { a0: u, slots: alloc::vec![r, k.slots[0]] },
                        5,
                    )
                    .scale(&(rc * uc)));
                }
            }
            // a_n d a0 da1
            let mut t2 = NCForm::zero(&alg, 5);
            let red0 = alg.reduce_basis(k.a0);
            for (r, rc) in red0.iter().enumerate() {
                if rc.is_zero() {
                    continue;
                }
                for (i, ac) in an.iter().enumerate() {
                    if ac.is_zero() {
                        continue;
                    }
                    t2 = t2.add(&NCForm::from_key(
                        &alg,
                        FormKey { a0: i, slots: alloc::vec![r, k.slots[0]] },
                        5,
                    )
                    .scale(&(rc * ac)));
                }
            }
            // n = 2: sign (-1)^{n-1} = -1
            let expect = t1.sub(&t2).scale(&ScalarQ::from_int(-1));
            assert_eq!(kap, expect, "karoubi mismatch on {:?}", k);
        }
    }

    #[test]
    fn product_associative_and_unital() {
        let alg = c2();
        let cap = 6;
        let mut samples = Vec::new();
        for deg in 0..=2 {
            for k in basis_keys(&alg, deg) {
                samples.push(NCForm::from_key(&alg, k, cap));
            }
        }
        let one = NCForm::unit(&alg, cap);
        for f in &samples {
            assert_eq!(one.mul(f), *f);
            assert_eq!(f.mul(&one), *f);
        }
        for a in &samples {
            for b in &samples {
                for c in &samples {
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                }
            }
        }
    }

    #[test]
    fn product_leibniz_examples() {
        // (da) b = d(ab) - a db, checked against direct products
        let alg = m2();
        let cap = 4;
        for a in 0..alg.dim() {
            let red_a = alg.reduce_basis(a);
            if red_a.iter().all(ScalarQ::is_zero) {
                continue;
            }
            for b in 0..alg.dim() {
                let da = NCForm::from_element(&alg, alg.basis_vec(a), cap).d_trunc();
                let eb = NCForm::from_element(&alg, alg.basis_vec(b), cap);
                let lhs = da.mul(&eb);
                let dab = NCForm::from_element(&alg, alg.mul_vec(&alg.basis_vec(a), &alg.basis_vec(b)), cap)
                    .d_trunc();
                let adb = NCForm::from_element(&alg, alg.basis_vec(a), cap)
                    .mul(&eb.d_trunc());
                assert_eq!(lhs, dab.sub(&adb));
            }
        }
    }

    #[test]
    fn fedosov_matches_formula_and_unit() {
        let alg = c2();
        let cap = 6;
        // a o b = ab - da db on degree-0 elements
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let fa = NCForm::from_element(&alg, alg.basis_vec(a), cap);
                let fb = NCForm::from_element(&alg, alg.basis_vec(b), cap);
                let direct = fa
                    .mul(&fb)
                    .sub(&fa.d_trunc().mul(&fb.d_trunc()));
                assert_eq!(fa.fedosov(&fb), direct);
            }
        }
        // unit form is the Fedosov unit (d1 = 0)
        let one = NCForm::unit(&alg, cap);
        for deg in 0..=2 {
            for k in basis_keys(&alg, deg) {
                let f = NCForm::from_key(&alg, k, cap);
                assert_eq!(one.fedosov(&f), f);
                assert_eq!(f.fedosov(&one), f);
            }
        }
    }

    #[test]
    fn fedosov_associative_exhaustive() {
        // all basis triples of the split algebra at cap 6, degrees <= 2
        let alg = c2();
        let cap = 6;
        let mut samples = Vec::new();
        for deg in 0..=2 {
            for k in basis_keys(&alg, deg) {
                samples.push(NCForm::from_key(&alg, k, cap));
            }
        }
        for a in &samples {
            for b in &samples {
                for c in &samples {
                    assert_eq!(
                        a.fedosov(b).fedosov(c),
                        a.fedosov(&b.fedosov(c)),
                        "fedosov associativity failed"
                    );
                }
            }
        }
    }

    #[test]
    fn cap_errors() {
        let alg = c2();
        let f = NCForm::from_key(&alg, FormKey { a0: 1, slots: alloc::vec![0, 0] }, 2);
        assert!(matches!(f.nc_d(), Err(FormError::CapExceeded { .. })));
        assert!(matches!(f.nc_connes_b(), Err(FormError::CapExceeded { .. })));
        let g = NCForm::from_key(&alg, FormKey { a0: 1, slots: alloc::vec![0] }, 2);
        assert!(g.nc_d().is_ok());
    }
}
