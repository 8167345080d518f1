//! The verification suite: every module's identity checks as named,
//! seeded, deterministic pass/fail items with residuals, aggregated by
//! `verify all`.

use num_complex::Complex64;
use num_traits::Float;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use orbitkit_core::coadjoint::{self, CoadjointPoint, OrbitClass};
use orbitkit_core::index::divisor::{riemann_roch_p1_check, Divisor, P1Point};
use orbitkit_core::index::genus::{
    ahat_series, ahat_twist_equals_todd, todd_series, ClassSeries, ClassVar,
};
use orbitkit_core::index::simplicial::{hodge_index, SimplicialComplex};
use orbitkit_core::liealg::LieAlgebraSpec;
use orbitkit_core::quantize::{self, OperatorExpr};
use orbitkit_core::reps::{
    generator_check, group_law_check_s, group_law_check_t, group_law_check_u,
    default_test_function, default_torus_function, default_grid, unitarity_check_s,
    unitarity_check_t, GroupElementAffCCover, GroupElementAffR,
};
use orbitkit_core::scalar::{rat, Rat, ScalarQ};
use orbitkit_core::starprod::{Chart, Symbol};
use orbitkit_core::xcomplex::algebra::FDAlgebra;
use orbitkit_core::xcomplex::homology::{lift_idempotent, x_complex_homology};
use orbitkit_core::xcomplex::laurent::{chern1_winding, LaurentMatrix};

use crate::fourier::{conjugation_residual, fourier_identity_residual, FourierId};

/// One named check with its outcome.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub module: String,
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub details: Vec<String>,
}

impl CheckResult {
    fn exact(id: &str, module: &str, check: &str, passed: bool, details: Vec<String>) -> Self {
        CheckResult {
            id: id.into(),
            module: module.into(),
            check: check.into(),
            passed,
            residual: None,
            tolerance: None,
            details,
        }
    }

    fn numeric(
        id: &str,
        module: &str,
        check: &str,
        residual: f64,
        tolerance: f64,
        details: Vec<String>,
    ) -> Self {
        CheckResult {
            id: id.into(),
            module: module.into(),
            check: check.into(),
            passed: residual <= tolerance,
            residual: Some(residual),
            tolerance: Some(tolerance),
            details,
        }
    }
}

/// Suite configuration; `seed` drives every randomized family.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub fourier_n: usize,
    pub trials: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            fourier_n: 4096,
            trials: 100,
        }
    }
}

fn uniform(rng: &mut rand_chacha::ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    lo + (hi - lo) * u
}

/// Star-commutator identity over all ordered basis pairs (exact).
pub fn check_prop31(algebra: &str) -> CheckResult {
    let alg = match algebra {
        "affR" => LieAlgebraSpec::aff_r(),
        _ => LieAlgebraSpec::aff_c(),
    };
    let report = coadjoint::star_commutator_check(&alg).expect("builtin algebras");
    let mut details = Vec::new();
    for p in &report.pairs {
        details.push(format!(
            "({}, {}): {}",
            p.left,
            p.right,
            if p.pass {
                "exact".to_string()
            } else {
                format!("residual symbol {}", p.residual.render())
            }
        ));
    }
    CheckResult::exact(
        &format!("prop31-{algebra}"),
        "starprod",
        "star commutator of i*hamiltonians equals i*bracket hamiltonian on every ordered basis pair",
        report.all_pass(),
        details,
    )
}

/// Conjugated-operator homomorphism (exact), plus the mutation that must
/// fail.
pub fn check_lhat(algebra: &str) -> CheckResult {
    let alg = match algebra {
        "affR" => LieAlgebraSpec::aff_r(),
        _ => LieAlgebraSpec::aff_c(),
    };
    let report = quantize::homomorphism_check(&alg).expect("builtin algebras");
    let details = report
        .pairs
        .iter()
        .map(|p| {
            format!(
                "({}, {}): {}",
                p.left,
                p.right,
                if p.pass { "exact" } else { "FAILED" }
            )
        })
        .collect();
    CheckResult::exact(
        &format!("lhat-homomorphism-{algebra}"),
        "quantize",
        "commutators of conjugated operators realize the Lie bracket exactly",
        report.all_pass(),
        details,
    )
}

pub fn check_lhat_mutation() -> CheckResult {
    // dropping the 1/2 in d_q/2 must break the (X, Y) pair
    let mutated = |e: &orbitkit_core::liealg::AlgElement| {
        let alpha = e.coords()[0].clone();
        let beta = e.coords()[1].clone();
        let dq = OperatorExpr::derivative(Chart::XQ, 1);
        let dx = OperatorExpr::derivative(Chart::XQ, 0);
        let em = Symbol::exponential(Chart::XQ, vec![rat(-1, 2), Rat::from_integer(1.into())]);
        Ok(dq
            .scale(&alpha)
            .sub(&dx.scale(&alpha))
            .add(&OperatorExpr::mult(em.scale(&(&beta * &ScalarQ::i())))))
    };
    let report =
        quantize::homomorphism_check_with(&LieAlgebraSpec::aff_r(), mutated).expect("runs");
    CheckResult::exact(
        "lhat-mutation-detected",
        "quantize",
        "removing the 1/2 from the derivative part is detected as a failure",
        !report.all_pass(),
        vec![format!(
            "mutated operator assignment fails {} of {} pairs",
            report.pairs.iter().filter(|p| !p.pass).count(),
            report.pairs.len()
        )],
    )
}

pub fn check_fourier(id: u8, n: usize) -> CheckResult {
    let (fid, name) = match id {
        1 => (FourierId::One, "fourier-id1"),
        _ => (FourierId::Three { k: 2 }, "fourier-id3-k2"),
    };
    let residual = fourier_identity_residual(fid, n);
    CheckResult::numeric(
        name,
        "quantize",
        "partial Fourier transform identity on a Gaussian (spectral routes agree)",
        residual,
        1e-6,
        vec![format!("grid {n} x 256 over [-20,20)^2")],
    )
}

pub fn check_conjugation(gen: &str, n: usize) -> CheckResult {
    let alg = LieAlgebraSpec::aff_r();
    let z = match gen {
        "X" => alg.basis_element(0).expect("basis"),
        _ => alg.basis_element(1).expect("basis"),
    };
    let residual = conjugation_residual(&z, n).expect("affine generator");
    CheckResult::numeric(
        &format!("conjugation-{gen}"),
        "quantize",
        "star multiplication conjugated by the partial Fourier transform matches the closed-form operator",
        residual,
        1e-4,
        vec![format!("grid {n} x 256 over [-20,20)^2")],
    )
}

pub fn check_rep_group_laws(seed: u64, trials: usize) -> CheckResult {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let f = default_test_function();
    let tf = default_torus_function();
    let (_, ds, _) = default_grid();
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let m1 = uniform(&mut rng, -96.0, 96.0) as i64;
        let m2 = uniform(&mut rng, -96.0, 96.0) as i64;
        let g1 = GroupElementAffR::new(Float::exp(m1 as f64 * ds), uniform(&mut rng, -2.0, 2.0))
            .expect("positive");
        let g2 = GroupElementAffR::new(Float::exp(m2 as f64 * ds), uniform(&mut rng, -2.0, 2.0))
            .expect("positive");
        worst = worst.max(group_law_check_s(&g1, &g2, &f));

        let a1 = uniform(&mut rng, 0.2, 5.0) * if rng.next_u64() % 2 == 0 { 1.0 } else { -1.0 };
        let a2 = uniform(&mut rng, 0.2, 5.0) * if rng.next_u64() % 2 == 0 { 1.0 } else { -1.0 };
        worst = worst.max(group_law_check_u(
            (rng.next_u64() % 2) as u8,
            uniform(&mut rng, -3.0, 3.0),
            (a1, uniform(&mut rng, -2.0, 2.0)),
            (a2, uniform(&mut rng, -2.0, 2.0)),
        ));

        let t1 = GroupElementAffCCover::translation(Complex64::new(
            uniform(&mut rng, -2.0, 2.0),
            uniform(&mut rng, -6.0, 6.0),
        ));
        let t2 = GroupElementAffCCover::translation(Complex64::new(
            uniform(&mut rng, -2.0, 2.0),
            uniform(&mut rng, -6.0, 6.0),
        ));
        worst = worst.max(group_law_check_t(0.41, &t1, &t2, &tf));
        let d1 = GroupElementAffCCover::dilation(Complex64::new(
            uniform(&mut rng, -2.0, 2.0),
            uniform(&mut rng, -2.0, 2.0),
        ));
        let d2 = GroupElementAffCCover::dilation(Complex64::new(
            uniform(&mut rng, -2.0, 2.0),
            uniform(&mut rng, -2.0, 2.0),
        ));
        worst = worst.max(group_law_check_t(0.41, &d1, &d2, &tf));
    }
    CheckResult::numeric(
        "rep-group-laws",
        "reps",
        "representation property over seeded random pairs for all three families",
        worst,
        1e-12,
        vec![format!("{trials} pairs per family, seed {seed}")],
    )
}

pub fn check_rep_unitarity(seed: u64, trials: usize) -> CheckResult {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let f = default_test_function();
    let tf = default_torus_function();
    let (_, ds, _) = default_grid();
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let m = uniform(&mut rng, -128.0, 128.0) as i64;
        let g = GroupElementAffR::new(Float::exp(m as f64 * ds), uniform(&mut rng, -2.0, 2.0))
            .expect("positive");
        worst = worst.max(unitarity_check_s(&g, &f));
        let gt = GroupElementAffCCover::translation(Complex64::new(
            uniform(&mut rng, -1.0, 1.0),
            uniform(&mut rng, -6.0, 6.0),
        ));
        worst = worst.max(unitarity_check_t(0.29, &gt, &tf));
        let u = orbitkit_core::reps::rep_char_u(
            1,
            uniform(&mut rng, -3.0, 3.0),
            uniform(&mut rng, 0.1, 4.0),
            0.0,
        )
        .expect("nonzero");
        worst = worst.max((u.norm() - 1.0).abs());
    }
    CheckResult::numeric(
        "rep-unitarity",
        "reps",
        "invariance of the carrier-space norms over seeded random elements",
        worst,
        1e-12,
        vec![format!("{trials} elements per family, seed {seed}")],
    )
}

pub fn check_rep_generator() -> CheckResult {
    let alg = LieAlgebraSpec::aff_r();
    let mut details = Vec::new();
    let mut pass = true;
    for (name, coords) in [
        ("X", (1i64, 0i64)),
        ("Y", (0, 1)),
        ("X-2Y", (1, -2)),
    ] {
        let z = alg
            .element(vec![ScalarQ::from_int(coords.0), ScalarQ::from_int(coords.1)])
            .expect("coords");
        let r1 = generator_check(&z, 2e-4).expect("generator");
        let r2 = generator_check(&z, 1e-4).expect("generator");
        let ratio = r1 / r2;
        let ok = (3.5..=4.5).contains(&ratio);
        pass &= ok;
        details.push(format!(
            "{name}: residuals {r1:.3e} -> {r2:.3e}, ratio {ratio:.3}"
        ));
    }
    CheckResult::exact(
        "rep-generator-convergence",
        "reps",
        "central-difference generator matches the transported operator with second-order step convergence (ratio 4 +- 0.5)",
        pass,
        details,
    )
}

pub fn check_orbit_classification() -> CheckResult {
    let mut pass = true;
    // 9 x 9 grid of (lambda, mu)
    for i in 0..9 {
        for j in 0..9 {
            let lambda = -2.0 + 0.5 * i as f64;
            let mu = -2.0 + 0.5 * j as f64;
            let c = coadjoint::classify_orbit(&CoadjointPoint { lambda, mu });
            let expect = if mu > 0.0 {
                OrbitClass::UpperHalfPlane
            } else if mu < 0.0 {
                OrbitClass::LowerHalfPlane
            } else {
                OrbitClass::Point(lambda)
            };
            pass &= c == expect;
        }
    }
    CheckResult::exact(
        "orbit-classification-grid",
        "coadjoint",
        "half-plane/point classification over a 9 x 9 parameter grid",
        pass,
        vec!["lambda, mu in {-2, -1.5, ..., 2}".into()],
    )
}

pub fn check_coadjoint_series() -> CheckResult {
    // closed form against the 30-term series for exp([[0,0],[b,-a]])
    let grid = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0];
    let mut worst: f64 = 0.0;
    for &a in &grid {
        for &b in &grid {
            let (mut m10, mut m11) = (0.0f64, 1.0f64);
            let mut pw = 1.0f64;
            let mut fact = 1.0f64;
            for n in 1..30 {
                fact *= n as f64;
                m10 += b * pw / fact;
                m11 += pw * (-a) / fact;
                pw *= -a;
            }
            let (l, ea) = coadjoint::closed_form_f64(a, b);
            worst = worst.max((m10 - l).abs()).max((m11 - ea).abs());
        }
    }
    CheckResult::numeric(
        "coadjoint-closed-vs-series",
        "coadjoint",
        "closed form of the coadjoint flow matches the 30-term exponential series",
        worst,
        1e-12,
        vec!["7 x 7 grid of flow parameters".into()],
    )
}

pub fn check_genus() -> CheckResult {
    let mut details = Vec::new();
    let td = todd_series(2);
    let td1_ok = td.component(1) == ClassSeries::var(2, ClassVar::C(1)).scale(&rat(1, 2));
    details.push(format!("degree-1 Todd component = c1/2: {td1_ok}"));
    let td2 = {
        let c1 = ClassSeries::var(2, ClassVar::C(1));
        let c2 = ClassSeries::var(2, ClassVar::C(2));
        c1.mul(&c1).add(&c2).scale(&rat(1, 12))
    };
    let td2_ok = td.component(2) == td2;
    details.push(format!("degree-2 Todd component = (c1^2 + c2)/12: {td2_ok}"));
    let ah = ahat_series(1);
    let a1_ok = ah.component(1) == ClassSeries::var(1, ClassVar::P(1)).scale(&rat(-1, 24));
    details.push(format!("degree-1 A-hat component = -p1/24: {a1_ok}"));
    let mut twist_ok = true;
    for n in 1..=8 {
        twist_ok &= ahat_twist_equals_todd(n);
    }
    details.push(format!("A-hat times e^(x/2) equals Todd through degree 8: {twist_ok}"));
    CheckResult::exact(
        "genus-series",
        "index",
        "multiplicative genus components and the half-twist identity, exact rationals",
        td1_ok && td2_ok && a1_ok && twist_ok,
        details,
    )
}

pub fn check_riemann_roch() -> CheckResult {
    let points = [
        P1Point::Finite(rat(0, 1)),
        P1Point::Finite(rat(1, 1)),
        P1Point::Finite(rat(-1, 1)),
        P1Point::Finite(rat(2, 1)),
        P1Point::Infinity,
    ];
    let mut cases = 0usize;
    let mut pass = true;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            for k in (j + 1)..points.len() {
                for mi in -3i64..=3 {
                    for mj in -3i64..=3 {
                        for mk in -3i64..=3 {
                            let d = Divisor::new(vec![
                                (points[i].clone(), mi),
                                (points[j].clone(), mj),
                                (points[k].clone(), mk),
                            ])
                            .expect("distinct points");
                            if d.degree().abs() > 6 {
                                continue;
                            }
                            pass &= riemann_roch_p1_check(&d).pass;
                            cases += 1;
                        }
                    }
                }
            }
        }
    }
    CheckResult::exact(
        "riemann-roch-p1",
        "index",
        "l(D) - l(K-D) = deg D + 1 by brute-force exact linear algebra",
        pass && cases >= 200,
        vec![format!("{cases} divisors, |deg| <= 6, support <= 3 points")],
    )
}

pub fn check_hodge() -> CheckResult {
    let mut details = Vec::new();
    let mut pass = true;
    for (name, complex, chi) in [
        ("point", SimplicialComplex::point(), 1i64),
        ("6-cycle", SimplicialComplex::cycle(6), 0),
        ("octahedron", SimplicialComplex::octahedron(), 2),
        ("7-vertex torus", SimplicialComplex::torus7(), 0),
    ] {
        let r = hodge_index(&complex);
        let ok = r.index == chi && r.euler == chi;
        pass &= ok;
        details.push(format!(
            "{name}: index {} = euler {} (expected {chi})",
            r.index, r.euler
        ));
    }
    CheckResult::exact(
        "hodge-index",
        "index",
        "index of d + delta from even to odd cochains equals the Euler characteristic",
        pass,
        details,
    )
}

pub fn check_xcq_homology() -> CheckResult {
    let mut details = Vec::new();
    let mut pass = true;
    for (name, alg, expect) in [
        ("c", FDAlgebra::complex_line(), (1usize, 0usize)),
        ("c2", FDAlgebra::complex_pair(), (2, 0)),
        ("m2", FDAlgebra::mat2(), (1, 0)),
    ] {
        let r = x_complex_homology(&alg, 2, 6).expect("valid order");
        let ok = (r.h0, r.h1) == expect && r.complex_property;
        pass &= ok;
        details.push(format!(
            "{name}: stable (h0, h1) = ({}, {}), stage ({}, {}), composites vanish: {}",
            r.h0, r.h1, r.stage_h0, r.stage_h1, r.complex_property
        ));
    }
    CheckResult::exact(
        "xcq-homology",
        "xcomplex",
        "stable X-complex homology at adic order 2, cap 6, with both composites exactly zero",
        pass,
        details,
    )
}

pub fn check_xcq_lift() -> CheckResult {
    let alg = FDAlgebra::complex_pair();
    let e = vec![vec![alg.basis_vec(1)]];
    let lift = lift_idempotent(&alg, e, 2).expect("idempotent");
    let ok = lift.fedosov(&lift) == lift;
    CheckResult::exact(
        "xcq-idempotent-lift",
        "xcomplex",
        "the binomial lifting series is idempotent modulo forms of degree >= 6",
        ok,
        vec!["e = (1, 0) in the split algebra, adic order 2".into()],
    )
}

pub fn check_xcq_winding() -> CheckResult {
    let mut pass = true;
    let mut details = Vec::new();
    for k in -5i64..=5 {
        let g = LaurentMatrix::diag_t_powers(&[k]);
        let w = chern1_winding(&g).expect("unit determinant");
        pass &= w == k;
    }
    details.push("winding(t^k) = k for |k| <= 5".into());
    let d = LaurentMatrix::diag_t_powers(&[2, -3]);
    let w = chern1_winding(&d).expect("unit determinant");
    pass &= w == -1;
    details.push(format!("winding(diag(t^2, t^-3)) = {w}"));
    CheckResult::exact(
        "xcq-winding",
        "xcomplex",
        "residue of tr(g^-1 dg) counts the determinant winding",
        pass,
        details,
    )
}

/// The full ordered suite.
pub fn all_checks(cfg: &SuiteConfig) -> Vec<CheckResult> {
    vec![
        check_prop31("affR"),
        check_prop31("affC"),
        check_lhat("affR"),
        check_lhat("affC"),
        check_lhat_mutation(),
        check_fourier(1, cfg.fourier_n),
        check_fourier(3, cfg.fourier_n),
        check_conjugation("X", cfg.fourier_n),
        check_conjugation("Y", cfg.fourier_n),
        check_rep_group_laws(cfg.seed, cfg.trials),
        check_rep_unitarity(cfg.seed, cfg.trials),
        check_rep_generator(),
        check_orbit_classification(),
        check_coadjoint_series(),
        check_genus(),
        check_riemann_roch(),
        check_hodge(),
        check_xcq_homology(),
        check_xcq_lift(),
        check_xcq_winding(),
    ]
}
