use serde::Serialize;

use super::Curvature;
use crate::check::Check;
use crate::error::{Error, Result};
use crate::geometry::frames::pseudo_orthonormal_frame;
use crate::geometry::linalg::{apply, trace};
use crate::geometry::TensorField;
use crate::structure::terms::scalar_mul;
use crate::structure::{Field, Structure, StructureAnalysis};
use crate::symbolic::{int, rat, rational_to_f64, Rational, ScalarField};

const TOL: f64 = 1e-9;
const SAMPLES: usize = 3;

/// `∇*∇ξ` computed exactly and checked against the closed form and, at
/// sample points, against the frame formula.
#[derive(Clone, Debug, Serialize)]
pub struct RoughLaplacian {
    /// `∇*∇ξ = −g^{ij}(∇²ξ)_{ij}` as rendered components.
    pub value: Vec<String>,
    /// Points where the frame formula was evaluated.
    pub sample_points: Vec<Vec<String>>,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub field: Field,
}

/// `−g^{ij} (∇_i ∇ξ)(∂_j)`.
fn exact_rough_laplacian(s: &Structure, nn: &Field) -> Field {
    let ctx = &s.ctx;
    let d = s.dim();
    TensorField::from_fn(ctx, 1, 0, |ix| {
        let mut acc = ScalarField::zero(ctx);
        for i in 0..d {
            for j in 0..d {
                let gij = s.ginv.at2(i, j);
                if gij.is_zero() {
                    continue;
                }
                acc = &acc - &(gij * nn.at3(ix[0], i, j));
            }
        }
        acc
    })
}

/// `(2nα² − tr h²)ξ − (Qξ)|_{ker η}`, with the projection `X − η(X)ξ`.
pub fn closed_form(s: &Structure, an: &StructureAnalysis, c: &Curvature) -> Field {
    let n = int(s.n() as i64);
    let a2 = &an.alpha * &an.alpha;
    let coeff = &a2.scale(&(int(2) * n)) - &trace(&crate::geometry::linalg::compose(&an.h, &an.h));
    let qxi = apply(&c.q, &s.xi);
    let eta_q = crate::geometry::linalg::pair(&s.eta, &qxi);
    let proj = qxi.sub(&scalar_mul(&s.xi, &eta_q));
    scalar_mul(&s.xi, &coeff).sub(&proj)
}

/// Frame formula `−Σ ε_k (∇_{e_k}∇_{e_k}ξ − ∇_{∇_{e_k}e_k}ξ)` at a point,
/// which is `−Σ ε_k e_k^i e_k^j (∇²ξ)_{ij}`.
fn frame_value(s: &Structure, nn: &Field, p: &[f64]) -> Result<Vec<f64>> {
    let d = s.dim();
    let mut g = vec![vec![0.0; d]; d];
    for (i, row) in g.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = s.g.at2(i, j).numeric_eval(p)?;
        }
    }
    let frame = pseudo_orthonormal_frame(&g)?;
    let mut nnv = vec![0.0; d * d * d];
    for (k, c) in nn.comps().iter().enumerate() {
        nnv[k] = c.numeric_eval(p)?;
    }
    let mut out = vec![0.0; d];
    for (e, eps) in &frame {
        for (a, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for i in 0..d {
                for j in 0..d {
                    acc += e[i] * e[j] * nnv[(a * d + i) * d + j];
                }
            }
            *o -= eps * acc;
        }
    }
    Ok(out)
}

/// Candidate sample points: the base point, then shifts along the diagonal.
fn sample_points(s: &Structure) -> impl Iterator<Item = Vec<Rational>> + '_ {
    (0..40i64).map(move |k| {
        let shift = if k % 2 == 0 { rat(k / 2, 7) } else { rat(-(k + 1) / 2, 11) };
        s.base_point.iter().map(|b| b + &shift).collect()
    })
}

pub fn rough_laplacian_xi(s: &Structure, an: &StructureAnalysis, c: &Curvature) -> Result<RoughLaplacian> {
    if !an.alpha_constant() {
        return Err(Error::Precondition("requires α = const".into()));
    }
    let nabla_xi = s.conn.covariant_derivative(&s.xi);
    let nn = s.conn.covariant_derivative(&nabla_xi);
    let exact = exact_rough_laplacian(s, &nn);
    let closed = closed_form(s, an, c);
    let mut checks = vec![Check::residual("rough_laplacian_closed_form", &exact.sub(&closed))];

    let mut used = Vec::new();
    let mut worst = 0.0_f64;
    for p in sample_points(s) {
        if used.len() == SAMPLES {
            break;
        }
        let pf: Vec<f64> = p.iter().map(rational_to_f64).collect();
        let Ok(frame) = frame_value(s, &nn, &pf) else {
            continue;
        };
        let Ok(closed_v) = closed.comps().iter().map(|x| x.numeric_eval(&pf)).collect::<Result<Vec<f64>>>() else {
            continue;
        };
        let scale = closed_v.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        let err = frame.iter().zip(&closed_v).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs())) / scale;
        worst = worst.max(err);
        used.push(p);
    }
    let frame_check = if used.len() < SAMPLES {
        Check::fail("rough_laplacian_frame_formula", None)
            .with_note(format!("only {} usable sample points", used.len()))
    } else if worst <= TOL {
        Check::pass("rough_laplacian_frame_formula")
    } else {
        Check::fail("rough_laplacian_frame_formula", None).with_note(format!("max relative deviation {worst:e}"))
    };
    checks.push(frame_check);

    Ok(RoughLaplacian {
        value: exact.comps().iter().map(|c| c.render()).collect(),
        sample_points: used
            .iter()
            .map(|p| p.iter().map(crate::symbolic::render_rational).collect())
            .collect(),
        checks,
        field: exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::curvature_of;
    use crate::structure::fixtures::load;

    #[test]
    fn closed_form_matches_on_catalog_entries() {
        for name in ["example_e", "h3_frame", "sigma_control", "product5"] {
            let (s, an) = load(name);
            let c = curvature_of(&s);
            let l = rough_laplacian_xi(&s, &an, &c).unwrap();
            assert!(l.checks.iter().all(|c| !c.failed()), "{name}: {:?}", l.checks);
            assert_eq!(l.field, closed_form(&s, &an, &c));
        }
    }

    #[test]
    fn para_kenmotsu_value() {
        // h = 0, Qξ = −2α²ξ in 3D: ∇*∇ξ = 2α²ξ
        let (s, an) = load("warped_kenmotsu");
        let c = curvature_of(&s);
        let l = rough_laplacian_xi(&s, &an, &c).unwrap();
        assert_eq!(l.field, s.xi.scale(&crate::symbolic::int(2)));
    }
}
