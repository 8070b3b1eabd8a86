//! Structural identities of almost α-paracosymplectic manifolds, each as an
//! exact tensor residual.

use super::analysis::StructureAnalysis;
use super::terms::{eta_y, insert_first, lower_output, scalar_mul, swap, swap_last};
use super::Structure;
use crate::check::Check;
use crate::geometry::forms::differential;
use crate::geometry::lie::lie_derivative;
use crate::geometry::linalg::{apply, bilinear_of, compose, pullback, trace};
use crate::geometry::TensorField;
use crate::symbolic::{int, ScalarField};

pub fn identity_suite(s: &Structure, an: &StructureAnalysis) -> Vec<Check> {
    let ctx = &s.ctx;
    let (phi, xi, eta, g) = (&s.phi, &s.xi, &s.eta, &s.g);
    let (a, h, al) = (&an.a, &an.h, &an.alpha);
    let two = int(2);
    let id = TensorField::<ScalarField>::identity(ctx);
    let ga = bilinear_of(g, a);
    let phi2 = compose(phi, phi);
    let phih = compose(phi, h);
    let mut out = Vec::new();

    // first-order properties of ξ, A and Φ
    out.push(Check::residual("lie_xi_eta", &lie_derivative(xi, eta)));
    out.push(Check::residual("a_self_adjoint", &ga.sub(&swap(&ga))));
    out.push(Check::residual("a_xi", &apply(a, xi)));
    out.push(Check::residual(
        "lie_xi_phi_form",
        &lie_derivative(xi, &an.phi_form).sub(&scalar_mul(&an.phi_form, al).scale(&two)),
    ));
    out.push(Check::residual("lie_xi_g", &lie_derivative(xi, g).add(&ga.scale(&two))));
    out.push(Check::residual("eta_a", &pullback(eta, a)));
    if s.dim() >= 5 {
        let d_alpha = differential(al);
        out.push(Check::residual("d_alpha_f_eta", &d_alpha.sub(&scalar_mul(eta, &an.f))));
    } else {
        out.push(Check::skipped("d_alpha_f_eta", "holds only in dimension at least 5"));
    }

    // A, φ and h
    let a_phi = compose(a, phi);
    let phi_a = compose(phi, a);
    out.push(Check::residual(
        "a_phi_anticommutator",
        &a_phi.add(&phi_a).add(&scalar_mul(phi, al).scale(&two)),
    ));
    out.push(Check::residual("nabla_xi_phi", &insert_first(&an.nabla_phi, xi)));
    let gh = bilinear_of(g, h);
    out.push(Check::residual("h_self_adjoint", &gh.sub(&swap(&gh))));
    out.push(Check::residual("h_phi_anticommutator", &compose(h, phi).add(&phih)));
    out.push(Check::residual("h_xi", &apply(h, xi)));
    out.push(Check::residual("eta_h", &pullback(eta, h)));
    out.push(Check::residual("alpha_phi_relation", &scalar_mul(phi, al).add(&a_phi).sub(h)));
    out.push(Check::residual(
        "nabla_xi_formula",
        &an.nabla_xi.sub(&scalar_mul(&phi2, al)).sub(&phih),
    ));

    // traces
    let n = int(s.n() as i64);
    out.push(Check::scalar("trace_a_phi", &trace(&a_phi)));
    out.push(Check::scalar("trace_phi_a", &trace(&phi_a)));
    out.push(Check::scalar("trace_h_phi", &trace(&compose(h, phi))));
    out.push(Check::scalar("trace_phi_h", &trace(&phih)));
    out.push(Check::scalar("trace_a", &(&trace(a) + &al.scale(&(&two * &n)))));
    out.push(Check::scalar("trace_h", &trace(h)));

    // covariant derivatives of Φ and φ
    let p = &an.nabla_phi;
    let nabla_form = s.conn.covariant_derivative(&an.phi_form);
    out.push(Check::residual("nabla_phi_form_i", &nabla_form.sub(&lower_output(p, g))));
    let ga_eta = ga.tensor(eta); // (X, Z, Y) ↦ g(AX, Z) η(Y)
    let lhs_ii = swap_last(&nabla_form.apply_in_slot(2, phi)).add(&nabla_form.apply_in_slot(2, phi));
    let rhs_ii = swap_last(&ga_eta).add(&ga_eta).neg();
    out.push(Check::residual("nabla_phi_form_ii", &lhs_ii.sub(&rhs_ii)));
    let gaphi_eta = ga.apply_in_slot(1, phi).tensor(eta);
    let lhs_iii = nabla_form.apply_in_slot(1, phi).apply_in_slot(2, phi).sub(&nabla_form);
    let rhs_iii = swap_last(&gaphi_eta).sub(&gaphi_eta);
    out.push(Check::residual("nabla_phi_form_iii", &lhs_iii.sub(&rhs_iii)));

    let p_phi_x = p.apply_in_slot(0, phi); // (∇_{φX}φ)Y
    let p_phi_y = p.apply_in_slot(1, phi); // (∇_Xφ)φY
    let phi_p = p.map_output(phi); // φ(∇_Xφ)Y
    let ga_xi = xi.tensor(&ga); // g(AX, Y)ξ
    out.push(Check::residual(
        "phi_squared_derivative",
        &p_phi_y.add(&phi_p).sub(&ga_xi).sub(&eta_y(a, eta)),
    ));
    // g(X, φY) = −Φ(X, Y)
    let g_x_phiy_xi = xi.tensor(&an.phi_form).neg();
    let b = p_phi_x
        .apply_in_slot(1, phi)
        .sub(p)
        .sub(&eta_y(&a_phi, eta))
        .sub(&scalar_mul(&g_x_phiy_xi.add(&eta_y(phi, eta)), al).scale(&two));
    out.push(Check::residual("b_tensor", &b));
    let g_xi = xi.tensor(g);
    let two_alpha_term = scalar_mul(&g_xi.sub(&eta_y(&id, eta)), al).scale(&two);
    let also1 = p_phi_x.sub(&p_phi_y).add(&eta_y(a, eta)).sub(&two_alpha_term);
    out.push(Check::residual("also1", &also1));
    let also2 = p_phi_x.add(&phi_p).sub(&ga_xi).sub(&two_alpha_term);
    out.push(Check::residual("also2", &also2));
    let original_rhs = scalar_mul(&eta_y(phi, eta), al)
        .scale(&int(-2))
        .add(&xi.tensor(&bilinear_of(g, &scalar_mul(phi, al).add(h))));
    let original = p_phi_x.map_output(phi).add(p).sub(&original_rhs);
    out.push(Check::residual("original", &original));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::Status;
    use crate::structure::fixtures::load;

    #[test]
    fn suite_holds_in_three_and_five_dimensions() {
        for name in ["h1_frame", "product5", "warped5_alpha_z"] {
            let (s, an) = load(name);
            let suite = identity_suite(&s, &an);
            assert!(suite.len() > 10);
            let bad: Vec<_> = suite.iter().filter(|c| c.status == Status::Fail).collect();
            assert!(bad.is_empty(), "{name}: {bad:?}");
        }
    }
}
