//! (κ,μ,ν)-nullity detection and the identities that hold on nullity spaces.

mod solve;

pub use solve::solve_linear;

use serde::Serialize;

use crate::check::{Check, Witness};
use crate::curvature::{r_xy_xi, Curvature};
use crate::geometry::forms::{differential, wedge};
use crate::geometry::linalg::{apply, bilinear_of, compose, pair};
use crate::geometry::TensorField;
use crate::structure::terms::{eta_x, eta_y, insert_first, scalar_mul, swap};
use crate::structure::{Field, Structure, StructureAnalysis};
use crate::symbolic::{int, ScalarField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NullityStatus {
    Exact,
    DegenerateHZero,
    NotNullity,
}

/// A full parameter triple.
#[derive(Clone, Debug, PartialEq)]
pub struct Kmn {
    pub kappa: ScalarField,
    pub mu: ScalarField,
    pub nu: ScalarField,
}

impl Kmn {
    pub fn render(&self) -> [String; 3] {
        [self.kappa.render(), self.mu.render(), self.nu.render()]
    }
}

#[derive(Clone, Debug)]
pub struct NullityFit {
    pub status: NullityStatus,
    pub kappa: Option<ScalarField>,
    /// Absent when `h = 0`.
    pub mu: Option<ScalarField>,
    pub nu: Option<ScalarField>,
    pub b: Option<Field>,
    /// `{φ², h, φh}` were dependent and the free coefficients were set to 0.
    pub non_unique: bool,
    pub witness: Option<Witness>,
    pub checks: Vec<Check>,
}

impl NullityFit {
    pub fn is_nullity(&self) -> bool {
        self.status != NullityStatus::NotNullity
    }

    /// All three parameters, available only for an exact fit.
    pub fn kmn(&self) -> Option<Kmn> {
        match (&self.status, &self.kappa, &self.mu, &self.nu) {
            (NullityStatus::Exact, Some(k), Some(m), Some(n)) => Some(Kmn {
                kappa: k.clone(),
                mu: m.clone(),
                nu: n.clone(),
            }),
            _ => None,
        }
    }

    /// Parameters as constants, when they are.
    pub fn constants(&self) -> Option<Vec<crate::symbolic::Rational>> {
        [&self.kappa, &self.mu, &self.nu]
            .iter()
            .map(|p| p.as_ref().and_then(|v| v.constant_value()))
            .collect()
    }

    fn not_nullity(witness: Option<Witness>, checks: Vec<Check>) -> Self {
        NullityFit {
            status: NullityStatus::NotNullity,
            kappa: None,
            mu: None,
            nu: None,
            b: None,
            non_unique: false,
            witness,
            checks,
        }
    }
}

fn witness_of(t: &Field) -> Option<Witness> {
    t.first_nonzero().map(|(index, v)| Witness { index, value: v.render() })
}

/// `B = κφ² + μh + νφh`.
pub fn b_tensor(s: &Structure, an: &StructureAnalysis, k: &Kmn) -> Field {
    let phi2 = compose(&s.phi, &s.phi);
    scalar_mul(&phi2, &k.kappa)
        .add(&scalar_mul(&an.h, &k.mu))
        .add(&scalar_mul(&an.phi_h(s), &k.nu))
}

/// `R(X,Y)ξ − (η(Y)BX − η(X)BY)`.
pub fn nullity_residual(s: &Structure, c: &Curvature, b: &Field) -> Field {
    r_xy_xi(&c.riemann, &s.xi).sub(&eta_y(b, &s.eta).sub(&eta_x(b, &s.eta)))
}

fn in_r_eta(name: &str, f: &ScalarField, eta: &Field) -> Check {
    match wedge(&differential(f), eta) {
        Ok(w) => Check::residual(name, &w),
        Err(e) => Check::fail(name, None).with_note(e.to_string()),
    }
}

/// Fits `l = κφ² + μh + νφh` exactly, then verifies the full nullity
/// condition with the fitted parameters.
pub fn nullity_fit(s: &Structure, an: &StructureAnalysis, c: &Curvature) -> NullityFit {
    let phi2 = compose(&s.phi, &s.phi);
    let l = &c.jacobi;
    if an.h.is_zero() {
        let Some(sol) = solve_linear(&[phi2.comps().to_vec()], l.comps()) else {
            return NullityFit::not_nullity(witness_of(l), Vec::new());
        };
        let kappa = sol[0].clone().unwrap_or_else(|| ScalarField::zero(&s.ctx));
        let b = scalar_mul(&phi2, &kappa);
        let res = nullity_residual(s, c, &b);
        if !res.is_zero() {
            return NullityFit::not_nullity(witness_of(&res), Vec::new());
        }
        let checks = vec![in_r_eta("kappa_in_r_eta", &kappa, &s.eta)];
        let status = if checks.iter().all(Check::passed) {
            NullityStatus::DegenerateHZero
        } else {
            NullityStatus::NotNullity
        };
        return NullityFit {
            status,
            kappa: Some(kappa),
            mu: None,
            nu: None,
            b: Some(b),
            non_unique: false,
            witness: None,
            checks,
        };
    }

    let phih = an.phi_h(s);
    let cols = [phi2.comps().to_vec(), an.h.comps().to_vec(), phih.comps().to_vec()];
    let Some(sol) = solve_linear(&cols, l.comps()) else {
        // inconsistent already on the Jacobi operator; report its residual
        // against the best pivot solution
        return NullityFit::not_nullity(witness_of(l), Vec::new());
    };
    let non_unique = sol.iter().any(Option::is_none);
    let zero = ScalarField::zero(&s.ctx);
    let k = Kmn {
        kappa: sol[0].clone().unwrap_or_else(|| zero.clone()),
        mu: sol[1].clone().unwrap_or_else(|| zero.clone()),
        nu: sol[2].clone().unwrap_or(zero),
    };
    let b = b_tensor(s, an, &k);
    let res = nullity_residual(s, c, &b);
    if !res.is_zero() {
        return NullityFit::not_nullity(witness_of(&res), Vec::new());
    }
    let checks = vec![
        in_r_eta("kappa_in_r_eta", &k.kappa, &s.eta),
        in_r_eta("mu_in_r_eta", &k.mu, &s.eta),
        in_r_eta("nu_in_r_eta", &k.nu, &s.eta),
    ];
    let status = if checks.iter().all(Check::passed) {
        NullityStatus::Exact
    } else {
        NullityStatus::NotNullity
    };
    NullityFit {
        status,
        kappa: Some(k.kappa),
        mu: Some(k.mu),
        nu: Some(k.nu),
        b: Some(b),
        non_unique,
        witness: None,
        checks,
    }
}

const IREM: [&str; 11] = [
    "jacobi_operator_form",
    "jacobi_commutator",
    "h_squared",
    "nabla_xi_h_nullity",
    "nabla_xi_h_squared",
    "xi_kappa",
    "r_xi_x_y",
    "ricci_xi_nullity",
    "nabla_phi_nullity",
    "nabla_phi_h_skew",
    "nabla_h_skew",
];

/// Identities of a nullity space with constant α.
pub fn check_irem_suite(s: &Structure, an: &StructureAnalysis, fit: &NullityFit, c: &Curvature) -> Vec<Check> {
    let gate = if !fit.is_nullity() {
        Some("requires a nullity structure")
    } else if !an.alpha_constant() {
        Some("requires α = const")
    } else {
        None
    };
    if let Some(reason) = gate {
        return IREM.iter().map(|n| Check::skipped(*n, reason)).collect();
    }
    let (phi, xi, eta, g, h) = (&s.phi, &s.xi, &s.eta, &s.g, &an.h);
    let al = &an.alpha;
    let a2 = al * al;
    let two = int(2);
    let zero = ScalarField::zero(&s.ctx);
    let kappa = fit.kappa.clone().expect("fitted κ");
    let degenerate = fit.status == NullityStatus::DegenerateHZero;
    let mu = fit.mu.clone().unwrap_or_else(|| zero.clone());
    let nu = fit.nu.clone().unwrap_or_else(|| zero.clone());
    let id = TensorField::identity(&s.ctx);
    let phi2 = compose(phi, phi);
    let phih = an.phi_h(s);
    let hphi = compose(h, phi);
    let h2 = compose(h, h);
    let l = &c.jacobi;
    let k_a2 = &kappa + &a2;
    let two_a_nu = &al.scale(&two) + &nu;
    let nu_a = &nu + al;
    let nabla_h = s.conn.covariant_derivative(h);
    let nxi_h = insert_first(&nabla_h, xi);

    let mut out = Vec::with_capacity(IREM.len());
    let skip = |name: &str| Check::skipped(name, "μ and ν are unconstrained when h = 0");

    let b = fit.b.clone().expect("fitted B");
    out.push(Check::residual(IREM[0], &l.sub(&b)));

    out.push(if degenerate {
        skip(IREM[1])
    } else {
        let rhs = scalar_mul(&hphi, &mu).scale(&two).sub(&scalar_mul(h, &nu).scale(&two));
        Check::residual(IREM[1], &compose(l, phi).sub(&compose(phi, l)).sub(&rhs))
    });

    out.push(Check::residual(IREM[2], &h2.sub(&scalar_mul(&phi2, &k_a2))));

    out.push(if degenerate {
        skip(IREM[3])
    } else {
        let rhs = scalar_mul(h, &two_a_nu).neg().add(&scalar_mul(&hphi, &mu));
        Check::residual(IREM[3], &nxi_h.sub(&rhs))
    });

    out.push(if degenerate {
        skip(IREM[4])
    } else {
        let nxi_h2 = insert_first(&s.conn.covariant_derivative(&h2), xi);
        let coeff = (&two_a_nu * &k_a2).scale(&int(-2));
        Check::residual(IREM[4], &nxi_h2.sub(&scalar_mul(&phi2, &coeff)))
    });

    out.push(if degenerate {
        skip(IREM[5])
    } else {
        let xi_kappa = pair(&differential(&kappa), xi);
        Check::scalar(IREM[5], &(&xi_kappa + &(&two_a_nu * &k_a2).scale(&two)))
    });

    out.push(if degenerate {
        skip(IREM[6])
    } else {
        // R(ξ,X)Y at [l][X][Y]
        let lhs = insert_first(&c.riemann, xi);
        let term = |a: &Field| xi.tensor(&swap(&bilinear_of(g, a))).sub(&eta_y(a, eta));
        let rhs = scalar_mul(&term(&id), &kappa)
            .add(&scalar_mul(&term(h), &mu))
            .add(&scalar_mul(&term(&phih), &nu));
        Check::residual(IREM[6], &lhs.sub(&rhs))
    });

    let n2 = int(2 * s.n() as i64);
    out.push(Check::residual(
        IREM[7],
        &apply(&c.q, xi).sub(&scalar_mul(xi, &kappa.scale(&n2))),
    ));

    out.push(if an.alpha.is_zero() {
        Check::skipped(IREM[8], "holds where α ≠ 0")
    } else {
        ib9(s, an)
    });

    let nphih = s.conn.covariant_derivative(&phih);
    let skew = |t: &Field| t.sub(&swap(t));
    let pair_term = |a: &Field| eta_y(a, eta).sub(&eta_x(a, eta)); // η(Y)aX − η(X)aY
    out.push(if degenerate {
        skip(IREM[9])
    } else {
        let rhs = scalar_mul(&pair_term(&id), &k_a2)
            .add(&scalar_mul(&pair_term(h), &mu))
            .add(&scalar_mul(&pair_term(&phih), &nu_a));
        Check::residual(IREM[9], &skew(&nphih).sub(&rhs))
    });

    out.push(if degenerate {
        skip(IREM[10])
    } else {
        let phi_form = xi.tensor(&bilinear_of(g, phi)).scale(&two); // 2g(Y,φX)ξ
        let rhs = scalar_mul(&pair_term(phi).add(&phi_form), &k_a2)
            .add(&scalar_mul(&pair_term(&phih), &mu))
            .add(&scalar_mul(&pair_term(h), &nu_a));
        Check::residual(IREM[10], &skew(&nabla_h).sub(&rhs))
    });
    out
}

/// `(∇_Xφ)Y = g(Y, hX + αφX)ξ − η(Y)(hX + αφX)`.
fn ib9(s: &Structure, an: &StructureAnalysis) -> Check {
    let m = an.h.add(&scalar_mul(&s.phi, &an.alpha));
    let rhs = s.xi.tensor(&bilinear_of(&s.g, &m)).sub(&eta_y(&m, &s.eta));
    Check::residual(IREM[8], &an.nabla_phi.sub(&rhs))
}

/// `Qφ − φQ = 2μhφ − 2(ν + 2α(1−n))h` on an exact fit with constant α.
pub fn check_q12(s: &Structure, an: &StructureAnalysis, fit: &NullityFit, c: &Curvature) -> Check {
    const NAME: &str = "ricci_commutator_nullity";
    let Some(k) = fit.kmn() else {
        return Check::skipped(NAME, "requires an exact nullity fit");
    };
    if !an.alpha_constant() {
        return Check::skipped(NAME, "requires α = const");
    }
    let one_minus_n = int(1) - int(s.n() as i64);
    let coeff = &k.nu + &an.alpha.scale(&(int(2) * one_minus_n));
    let rhs = scalar_mul(&compose(&an.h, &s.phi), &k.mu)
        .sub(&scalar_mul(&an.h, &coeff))
        .scale(&int(2));
    let lhs = compose(&c.q, &s.phi).sub(&compose(&s.phi, &c.q));
    Check::residual(NAME, &lhs.sub(&rhs))
}

/// Every nullity space has para-Kaehler leaves and satisfies the `∇φ` formula.
pub fn check_parakaehler_consequence(s: &Structure, an: &StructureAnalysis, fit: &NullityFit) -> Check {
    const NAME: &str = "nullity_implies_parakaehler_leaves";
    if !fit.is_nullity() {
        return Check::skipped(NAME, "requires a nullity structure");
    }
    if !an.alpha_constant() || an.alpha.is_zero() {
        // the argument deforms by β = α, so it needs α a nonzero constant
        return Check::skipped(NAME, "requires a nonzero constant α");
    }
    let formula = ib9(s, an);
    if !an.parakaehler_leaves {
        return Check::fail(NAME, None).with_note("leaves condition fails");
    }
    match formula.witness {
        None if formula.passed() => Check::pass(NAME),
        w => Check::fail(NAME, w).with_note("∇φ formula fails"),
    }
}

#[derive(Clone, Debug)]
pub struct NullityReport {
    pub fit: NullityFit,
    pub checks: Vec<Check>,
}

pub fn analyze_nullity(s: &Structure, an: &StructureAnalysis, c: &Curvature) -> NullityReport {
    let fit = nullity_fit(s, an, c);
    let mut checks = fit.checks.clone();
    if fit.is_nullity() {
        checks.extend(check_irem_suite(s, an, &fit, c));
        checks.push(check_q12(s, an, &fit, c));
        checks.push(check_parakaehler_consequence(s, an, &fit));
    }
    NullityReport { fit, checks }
}
