use serde::Serialize;

use super::{eval_matrix_at, Field, Structure};
use crate::check::{all_pass, Check};
use crate::geometry::linalg::{bilinear_of, compose, lower, outer, pullback, rank};
use crate::geometry::signature::signature;
use crate::geometry::TensorField;
use crate::symbolic::{int, ScalarField};

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<Check>,
    pub ok: bool,
}

pub fn verify_axioms(s: &Structure) -> AxiomReport {
    let ctx = &s.ctx;
    let id = TensorField::<ScalarField>::identity(ctx);
    let eta_xi = crate::geometry::linalg::pair(&s.eta, &s.xi);
    let proj = id.sub(&outer(&s.xi, &s.eta));
    let phi_phi = bilinear_of(&s.g, &s.phi).apply_in_slot(1, &s.phi);
    let eta_eta = s.eta.tensor(&s.eta);

    let mut checks = vec![
        Check::scalar("eta_xi", &(&eta_xi - &ScalarField::one(ctx))),
        Check::residual("phi_squared", &compose(&s.phi, &s.phi).sub(&proj)),
        Check::residual("compatibility", &phi_phi.add(&s.g).sub(&eta_eta)),
        Check::residual("eta_dual", &s.eta.sub(&lower(&s.g, &s.xi))),
        Check::residual("phi_xi", &crate::geometry::linalg::apply(&s.phi, &s.xi)),
        Check::residual("eta_phi", &pullback(&s.eta, &s.phi)),
    ];
    checks.push(signature_check(s));
    checks.push(eigen_check(s, &id));
    let ok = all_pass(&checks);
    AxiomReport { checks, ok }
}

fn signature_check(s: &Structure) -> Check {
    let n = s.n();
    match eval_matrix_at(&s.g, &s.base_point).and_then(|m| signature(&m)) {
        Ok((p, q)) if p == n + 1 && q == n => Check::pass("signature"),
        Ok((p, q)) => Check::fail("signature", None).with_note(format!("({p},{q}), expected ({},{n})", n + 1)),
        Err(e) => Check::fail("signature", None).with_note(e.to_string()),
    }
}

/// `dim D± = n`: the ±1-eigenspaces of φ lie in ker η, so their dimension is
/// the nullity of `φ ∓ Id` on the whole tangent space.
fn eigen_check(s: &Structure, id: &Field) -> Check {
    let d = s.dim();
    let n = s.n();
    let mut notes = Vec::new();
    for (sign, label) in [(int(1), "D+"), (int(-1), "D-")] {
        let m = s.phi.sub(&id.scale(&sign));
        match eval_matrix_at(&m, &s.base_point) {
            Ok(mat) => {
                let k = d - rank(&mat);
                if k != n {
                    notes.push(format!("dim {label} = {k}, expected {n}"));
                }
            }
            Err(e) => notes.push(e.to_string()),
        }
    }
    if notes.is_empty() {
        Check::pass("eigen_distributions")
    } else {
        Check::fail("eigen_distributions", None).with_note(notes.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::entry;
    use crate::check::Status;

    fn report(name: &str) -> AxiomReport {
        verify_axioms(&Structure::from_definition(&entry(name).unwrap().definition).unwrap())
    }

    #[test]
    fn catalog_structures_satisfy_the_axioms() {
        for name in ["example_e", "warped_kenmotsu", "product5", "h2_frame"] {
            let r = report(name);
            assert!(r.ok, "{name}: {:?}", r.checks);
        }
    }

    #[test]
    fn corrupted_metric_fails_with_a_witness() {
        let r = report("perturbed_metric");
        assert!(!r.ok);
        let bad: Vec<_> = r.checks.iter().filter(|c| c.status == Status::Fail).collect();
        assert!(bad.iter().any(|c| c.witness.is_some() || c.note.is_some()));
    }
}
