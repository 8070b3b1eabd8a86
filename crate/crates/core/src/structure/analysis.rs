use super::axioms::verify_axioms;
use super::alpha::{extract_alpha, fundamental_form, AlphaInfo};
use super::identities::identity_suite;
use super::leaves::{leaf_second_fundamental_form, nijenhuis_normality, parakaehler_leaves_check, LeafForm};
use super::{Field, Structure};
use crate::check::Check;
use crate::error::{Error, Result};
use crate::geometry::lie::lie_derivative;
use crate::geometry::linalg::compose;
use crate::symbolic::{rat, ScalarField};

/// Everything derived from a verified almost α-paracosymplectic structure.
#[derive(Clone, Debug)]
pub struct StructureAnalysis {
    pub phi_form: Field,
    pub alpha_info: AlphaInfo,
    pub alpha: ScalarField,
    pub f: ScalarField,
    /// `(∇ξ)^a_k = (∇_k ξ)^a`.
    pub nabla_xi: Field,
    /// `((∇_k φ)∂_b)^a` at `[a][k][b]`.
    pub nabla_phi: Field,
    pub a: Field,
    pub h: Field,
    pub nijenhuis: Field,
    pub normal: bool,
    pub parakaehler_leaves: bool,
    pub leaves_checks: Vec<Check>,
    pub leaf_form: LeafForm,
    pub identities: Vec<Check>,
}

impl StructureAnalysis {
    pub fn alpha_constant(&self) -> bool {
        self.alpha_info.alpha_constant
    }

    /// `φh`, used by most curvature identities.
    pub fn phi_h(&self, s: &Structure) -> Field {
        compose(&s.phi, &self.h)
    }
}

/// `A = −∇ξ` as an operator.
pub fn tensor_a(s: &Structure) -> Field {
    s.conn.covariant_derivative(&s.xi).neg()
}

/// `h = ½ L_ξ φ`, cross-checked against `½(Aφ − φA)`.
pub fn tensor_h(s: &Structure, a: &Field) -> Result<Field> {
    let half = rat(1, 2);
    let from_lie = lie_derivative(&s.xi, &s.phi).scale(&half);
    let from_a = compose(a, &s.phi).sub(&compose(&s.phi, a)).scale(&half);
    if let Some((idx, v)) = from_lie.sub(&from_a).first_nonzero() {
        return Err(Error::Internal(format!(
            "the two formulas for h disagree at {idx:?} by {}",
            v.render()
        )));
    }
    Ok(from_lie)
}

pub fn analyze_structure(s: &Structure) -> Result<StructureAnalysis> {
    let alpha_info = extract_alpha(s)?;
    if !alpha_info.is_apc {
        return Err(Error::Precondition("structure is not almost α-paracosymplectic".into()));
    }
    let phi_form = fundamental_form(s)?;
    let nabla_xi = s.conn.covariant_derivative(&s.xi);
    let a = nabla_xi.neg();
    // The two formulas for h only have to agree on a genuine structure; on
    // inputs that fail the axioms the mismatch becomes a failing check.
    let axioms = verify_axioms(s);
    let (h, h_check) = match tensor_h(s, &a) {
        Ok(h) => (h, Check::pass("h_formulas_agree")),
        Err(Error::Internal(msg)) if !axioms.ok => {
            let h = lie_derivative(&s.xi, &s.phi).scale(&rat(1, 2));
            (h, Check::fail("h_formulas_agree", None).with_note(msg))
        }
        Err(e) => return Err(e),
    };
    let nabla_phi = s.conn.covariant_derivative(&s.phi);
    let (nijenhuis, normal) = nijenhuis_normality(s);
    let mut an = StructureAnalysis {
        phi_form,
        alpha: alpha_info.alpha.clone(),
        f: alpha_info.f.clone(),
        alpha_info,
        nabla_xi,
        nabla_phi,
        a,
        h,
        nijenhuis,
        normal,
        parakaehler_leaves: false,
        leaves_checks: Vec::new(),
        leaf_form: LeafForm::default(),
        identities: Vec::new(),
    };
    let (leaves, leaves_checks) = parakaehler_leaves_check(s, &an);
    an.parakaehler_leaves = leaves;
    an.leaves_checks = leaves_checks;
    an.leaf_form = leaf_second_fundamental_form(s, &an);
    an.identities = identity_suite(s, &an);
    an.identities.insert(0, h_check);
    Ok(an)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::fixtures::load;

    #[test]
    fn h_anticommutes_with_phi_and_kills_xi() {
        for name in ["example_e", "h2_frame", "h3_frame", "product5"] {
            let (s, an) = load(name);
            let anti = compose(&an.h, &s.phi).add(&compose(&s.phi, &an.h));
            assert!(anti.is_zero(), "{name}");
            assert!(crate::geometry::linalg::apply(&an.h, &s.xi).is_zero(), "{name}");
            assert!(crate::check::all_pass(&an.identities), "{name}");
        }
    }

    #[test]
    fn zero_h_on_warped_kenmotsu() {
        let (s, an) = load("warped_kenmotsu");
        assert!(an.h.is_zero());
        // A = −∇ξ = −αφ²
        let phi2 = compose(&s.phi, &s.phi);
        assert!(an.a.add(&phi2).is_zero());
        assert!(an.normal);
    }
}
