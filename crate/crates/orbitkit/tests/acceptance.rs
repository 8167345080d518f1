//! Acceptance suite: every headline property at its stated tolerance, one
//! pass/fail line per criterion (run with `--nocapture` to see them all).

use std::process::Command;
use std::time::Instant;

use orbitkit::verify::{self, SuiteConfig};

struct Criterion {
    name: &'static str,
    budget_secs: f64,
}

impl Criterion {
    fn run(self, body: impl FnOnce() -> Result<String, String>) {
        let start = Instant::now();
        let outcome = body();
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => {
                println!(
                    "criterion {:<28} PASS  ({elapsed:.2}s)  {detail}",
                    self.name
                );
                assert!(
                    elapsed < self.budget_secs,
                    "{}: runtime {elapsed:.2}s over the {}s budget",
                    self.name,
                    self.budget_secs
                );
            }
            Err(why) => {
                println!("criterion {:<28} FAIL  ({elapsed:.2}s)  {why}", self.name);
                panic!("{} failed: {why}", self.name);
            }
        }
    }
}

fn require(cond: bool, why: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why.to_string())
    }
}

#[test]
fn criterion_1_star_commutators() {
    Criterion {
        name: "1-star-commutators",
        budget_secs: 1.0,
    }
    .run(|| {
        let r = verify::check_prop31("affR");
        require(r.passed, "real affine pairs not exact")?;
        let c = verify::check_prop31("affC");
        require(c.passed, "complex affine pairs not exact")?;
        Ok("4 + 16 ordered pairs, zero symbolic residual".into())
    });
}

#[test]
fn criterion_2_operator_homomorphism() {
    Criterion {
        name: "2-operator-homomorphism",
        budget_secs: 1.0,
    }
    .run(|| {
        require(verify::check_lhat("affR").passed, "real affine pairs")?;
        require(verify::check_lhat("affC").passed, "complex affine pairs")?;
        require(
            verify::check_lhat_mutation().passed,
            "mutated operator was not detected",
        )?;
        Ok("4 + 16 pairs exact; dropping the 1/2 fails as required".into())
    });
}

#[test]
fn criterion_3_fourier_harness() {
    Criterion {
        name: "3-fourier-harness",
        budget_secs: 30.0,
    }
    .run(|| {
        let id1 = verify::check_fourier(1, 4096);
        require(id1.passed, &format!("identity 1 residual {:?}", id1.residual))?;
        let id3 = verify::check_fourier(3, 4096);
        require(id3.passed, &format!("identity 3 residual {:?}", id3.residual))?;
        let cx = verify::check_conjugation("X", 4096);
        require(cx.passed, &format!("conjugation X residual {:?}", cx.residual))?;
        let cy = verify::check_conjugation("Y", 4096);
        require(cy.passed, &format!("conjugation Y residual {:?}", cy.residual))?;
        Ok(format!(
            "id1 {:.2e}, id3 {:.2e} (tol 1e-6); conj X {:.2e}, Y {:.2e} (tol 1e-4)",
            id1.residual.unwrap_or(f64::NAN),
            id3.residual.unwrap_or(f64::NAN),
            cx.residual.unwrap_or(f64::NAN),
            cy.residual.unwrap_or(f64::NAN),
        ))
    });
}

#[test]
fn criterion_4_representation_suite() {
    Criterion {
        name: "4-representation-suite",
        budget_secs: 30.0,
    }
    .run(|| {
        let law = verify::check_rep_group_laws(7, 100);
        require(law.passed, &format!("group laws residual {:?}", law.residual))?;
        let unit = verify::check_rep_unitarity(7, 100);
        require(unit.passed, &format!("unitarity residual {:?}", unit.residual))?;
        let gen = verify::check_rep_generator();
        require(gen.passed, &format!("generator convergence: {:?}", gen.details))?;
        Ok(format!(
            "100 pairs per family: law {:.2e}, unitarity {:.2e} (tol 1e-12); step ratio within 4 +- 0.5",
            law.residual.unwrap_or(f64::NAN),
            unit.residual.unwrap_or(f64::NAN),
        ))
    });
}

#[test]
fn criterion_5_orbit_classification() {
    Criterion {
        name: "5-orbit-classification",
        budget_secs: 5.0,
    }
    .run(|| {
        require(
            verify::check_orbit_classification().passed,
            "9 x 9 grid misclassified",
        )?;
        let series = verify::check_coadjoint_series();
        require(
            series.passed,
            &format!("series oracle residual {:?}", series.residual),
        )?;
        Ok(format!(
            "9 x 9 grid exact; closed form vs 30-term series {:.2e} (tol 1e-12)",
            series.residual.unwrap_or(f64::NAN)
        ))
    });
}

#[test]
fn criterion_6_genus_series() {
    Criterion {
        name: "6-genus-series",
        budget_secs: 5.0,
    }
    .run(|| {
        let g = verify::check_genus();
        require(g.passed, &format!("{:?}", g.details))?;
        Ok("degree-1/2 Todd, degree-1 A-hat and the half-twist identity through degree 8, exact".into())
    });
}

#[test]
fn criterion_7_riemann_roch() {
    Criterion {
        name: "7-riemann-roch",
        budget_secs: 10.0,
    }
    .run(|| {
        let r = verify::check_riemann_roch();
        require(r.passed, &format!("{:?}", r.details))?;
        Ok(r.details.join("; "))
    });
}

#[test]
fn criterion_8_hodge_index() {
    Criterion {
        name: "8-hodge-index",
        budget_secs: 5.0,
    }
    .run(|| {
        let h = verify::check_hodge();
        require(h.passed, &format!("{:?}", h.details))?;
        Ok("point 1, 6-cycle 0, octahedron 2, 7-vertex torus 0".into())
    });
}

#[test]
fn criterion_9_x_complex() {
    Criterion {
        name: "9-x-complex",
        budget_secs: 60.0,
    }
    .run(|| {
        let h = verify::check_xcq_homology();
        require(h.passed, &format!("{:?}", h.details))?;
        let l = verify::check_xcq_lift();
        require(l.passed, "idempotent lift not idempotent mod the adic ideal")?;
        let w = verify::check_xcq_winding();
        require(w.passed, "winding numbers wrong")?;
        Ok(
            "composites vanish exactly; stable dims (1,0)/(2,0)/(1,0) at order 2; lift idempotent; winding(t^k) = k"
                .into(),
        )
    });
}

#[test]
fn criterion_10_verify_all_deterministic() {
    Criterion {
        name: "10-verify-all-deterministic",
        budget_secs: 120.0,
    }
    .run(|| {
        // in-process aggregation must pass with the default seed
        let checks = verify::all_checks(&SuiteConfig {
            seed: 7,
            fourier_n: 1024,
            trials: 25,
        });
        require(
            checks.iter().all(|c| c.passed),
            &format!(
                "failing checks: {:?}",
                checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.id.clone())
                    .collect::<Vec<_>>()
            ),
        )?;

        // the binary must produce byte-identical output and exit 0 under a
        // fixed seed (smaller grid to keep this quick)
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_orbitkit"))
                .args(["verify", "all", "--n", "1024", "--trials", "25"])
                .env("ORBITKIT_SEED", "31415")
                .output()
                .expect("binary runs")
        };
        let a = run();
        let b = run();
        require(a.status.success(), "first run exited nonzero")?;
        require(b.status.success(), "second run exited nonzero")?;
        require(a.stdout == b.stdout, "stdout differs between runs")?;
        require(!a.stdout.is_empty(), "no output produced")?;
        Ok(format!(
            "{} checks pass; two seeded binary runs byte-identical ({} bytes)",
            checks.len(),
            a.stdout.len()
        ))
    });
}
