//! Conformal and D-homothetic deformations and their transformation laws.

use serde::Serialize;

use crate::check::Check;
use crate::curvature::{r_xy_xi, Curvature};
use crate::error::{Error, Result};
use crate::geometry::forms::{differential, wedge};
use crate::geometry::linalg::{bilinear_of, pair};
use crate::nullity::Kmn;
use crate::structure::terms::{eta_x, eta_y, scalar_mul};
use crate::structure::{fundamental_form, verify_axioms, Field, Structure, StructureAnalysis};
use crate::symbolic::{int, Rational, ScalarField};

/// `e^u` in the scalar ring. Supported: `u = 0`, and `u = q·x_i` when the
/// context declares a generator `E = e^{r x_i}` with `q/r` an integer.
pub fn exponential(u: &ScalarField) -> Result<ScalarField> {
    let ctx = u.ctx();
    if u.is_zero() {
        return Ok(ScalarField::one(ctx));
    }
    let unsupported = || Error::Precondition(format!("e^({}) is not representable", u.render()));
    let grads: Vec<(usize, ScalarField)> = (0..ctx.dim())
        .map(|i| (i, u.partial(i)))
        .filter(|(_, d)| !d.is_zero())
        .collect();
    let [(i, q)] = grads.as_slice() else {
        return Err(unsupported());
    };
    let q = q.constant_value().ok_or_else(unsupported)?;
    if &ScalarField::coord(ctx, *i).scale(&q) != u {
        return Err(unsupported());
    }
    for (k, g) in ctx.generators().iter().enumerate() {
        if g.coord != *i {
            continue;
        }
        let e = &q / &g.rate;
        if e.is_integer() {
            let e: i32 = e.to_integer().try_into().map_err(|_| unsupported())?;
            return ScalarField::generator(ctx, k).pow(e);
        }
    }
    Err(unsupported())
}

/// `φ′ = φ, ξ′ = e^u ξ, η′ = e^{−u} η, g′ = e^{−2u} g`, which is almost
/// paracosymplectic exactly when `du = αη`.
pub fn conformal_deform(s: &Structure, an: &StructureAnalysis, u: &ScalarField) -> Result<Structure> {
    let residual = differential(u).sub(&s.eta.mul_scalar(&an.alpha));
    if let Some((idx, v)) = residual.first_nonzero() {
        return Err(Error::Precondition(format!(
            "du − αη does not vanish: component {idx:?} is {}",
            v.render()
        )));
    }
    let e = exponential(u)?;
    let e_inv = e.recip()?;
    let e_inv2 = &e_inv * &e_inv;
    Structure::new(
        format!("{}_conformal", s.name),
        s.phi.clone(),
        s.xi.mul_scalar(&e),
        s.eta.mul_scalar(&e_inv),
        s.g.mul_scalar(&e_inv2),
        s.base_point.clone(),
    )
}

/// With `du = αη` the deformed form satisfies `dΦ′ = e^{−2u}(−2du∧Φ + 2αη∧Φ) = 0`,
/// so the result is almost paracosymplectic.
pub fn verify_conformal_laws(st: &Structure, ant: &StructureAnalysis) -> Vec<Check> {
    vec![
        Check::from_bool("deformed_axioms", verify_axioms(st).ok),
        Check::scalar("alpha_prime_vanishes", &ant.alpha),
    ]
}

#[derive(Clone, Debug)]
pub struct DParams {
    pub gamma: Rational,
    pub beta: ScalarField,
}

impl DParams {
    pub fn constant(gamma: Rational, beta: Rational, s: &Structure) -> Self {
        DParams {
            gamma,
            beta: ScalarField::constant(&s.ctx, beta),
        }
    }

    /// `γ > 0`, `dβ∧η = 0`, and `β ≠ 0` at the base point.
    pub fn validate(&self, s: &Structure) -> Result<()> {
        if self.gamma <= int(0) {
            return Err(Error::Precondition("γ must be positive".into()));
        }
        let w = wedge(&differential(&self.beta), &s.eta)?;
        if let Some((idx, v)) = w.first_nonzero() {
            return Err(Error::Precondition(format!(
                "dβ∧η must vanish, component {idx:?} is {}",
                v.render()
            )));
        }
        if s.eval(&self.beta)? == int(0) {
            return Err(Error::Precondition("β vanishes at the base point".into()));
        }
        Ok(())
    }
}

/// `φ̃ = φ, ξ̃ = ξ/β, η̃ = βη, g̃ = γg + (β² − γ)η⊗η`.
pub fn d_homothetic_deform(s: &Structure, p: &DParams) -> Result<Structure> {
    p.validate(s)?;
    let beta_inv = p.beta.recip()?;
    let gamma = ScalarField::constant(&s.ctx, p.gamma.clone());
    let coeff = &(&p.beta * &p.beta) - &gamma;
    let g = s.g.scale(&p.gamma).add(&scalar_mul(&s.eta.tensor(&s.eta), &coeff));
    Structure::new(
        format!("{}_deformed", s.name),
        s.phi.clone(),
        s.xi.mul_scalar(&beta_inv),
        s.eta.mul_scalar(&p.beta),
        g,
        s.base_point.clone(),
    )
}

/// `dβ(ξ)`.
fn xi_beta(s: &Structure, beta: &ScalarField) -> ScalarField {
    pair(&differential(beta), &s.xi)
}

/// Checks the deformed structure against the original: axioms, `Φ̃ = γΦ`,
/// `α̃`, the connection difference, `Ã = A/β`, `h̃ = h/β` and `R̃(X,Y)ξ̃`.
#[allow(clippy::too_many_arguments)]
pub fn verify_deformation_laws(
    s: &Structure,
    an: &StructureAnalysis,
    c: &Curvature,
    st: &Structure,
    ant: &StructureAnalysis,
    ct: &Curvature,
    p: &DParams,
) -> Vec<Check> {
    let beta = &p.beta;
    let Ok(beta_inv) = beta.recip() else {
        return vec![Check::fail("deformation_parameters", None).with_note("β is zero")];
    };
    let b2 = beta * beta;
    let db_xi = xi_beta(s, beta);
    let mut out = Vec::new();

    out.push(Check::from_bool("deformed_axioms", verify_axioms(st).ok));
    match (fundamental_form(st), fundamental_form(s)) {
        (Ok(a), Ok(b)) => out.push(Check::residual("phi_form_scaled", &a.sub(&b.scale(&p.gamma)))),
        _ => out.push(Check::fail("phi_form_scaled", None).with_note("fundamental form is not antisymmetric")),
    }
    let alpha_derived = &an.alpha * &beta_inv;
    out.push(Check::scalar("alpha_tilde_alpha_over_beta", &(&ant.alpha - &alpha_derived)));
    let gamma_over_beta = &beta_inv.scale(&p.gamma);
    out.push(
        Check::scalar("alpha_tilde_gamma_over_beta", &(&ant.alpha - gamma_over_beta))
            .with_note("expected value stated for the deformation; differs from α/β unless γ = α"),
    );

    // Γ̃ − Γ = −((β²−γ)/β²) g(A·,·) ξ + (dβ(ξ)/β) η⊗η ξ
    let gamma = ScalarField::constant(&s.ctx, p.gamma.clone());
    let c1 = match (&b2 - &gamma).checked_div(&b2) {
        Ok(v) => v,
        Err(e) => return vec![Check::fail("connection_difference", None).with_note(e.to_string())],
    };
    let ga = bilinear_of(&s.g, &an.a);
    let expected = scalar_mul(&s.xi.tensor(&ga), &c1)
        .neg()
        .add(&scalar_mul(&s.xi.tensor(&s.eta.tensor(&s.eta)), &(&db_xi * &beta_inv)));
    let diff = st.conn.gamma.sub(&s.conn.gamma);
    out.push(Check::residual("connection_difference", &diff.sub(&expected)));

    out.push(Check::residual("a_scaled", &ant.a.sub(&scalar_mul(&an.a, &beta_inv))));
    out.push(Check::residual("h_scaled", &ant.h.sub(&scalar_mul(&an.h, &beta_inv))));

    let lhs = r_xy_xi(&ct.riemann, &st.xi);
    let corr = eta_x(&an.a, &s.eta).sub(&eta_y(&an.a, &s.eta));
    let rhs = scalar_mul(&r_xy_xi(&c.riemann, &s.xi), &beta_inv).add(&scalar_mul(&corr, &(&db_xi * &(&beta_inv * &beta_inv))));
    out.push(Check::residual("r_xy_xi_deformed", &lhs.sub(&rhs)));
    out
}

/// `κ̃ = κ/β² + (α/β³)dβ(ξ)`, `μ̃ = μ/β`, `ν̃ = ν/β + dβ(ξ)/β²`.
pub fn transform_kmn(k: &Kmn, alpha: &ScalarField, beta: &ScalarField, s: &Structure) -> Result<Kmn> {
    let bi = beta.recip()?;
    let bi2 = &bi * &bi;
    let db = xi_beta(s, beta);
    Ok(Kmn {
        kappa: &(&k.kappa * &bi2) + &(&(alpha * &(&bi2 * &bi)) * &db),
        mu: &k.mu * &bi,
        nu: &(&k.nu * &bi) + &(&db * &bi2),
    })
}

/// `I₀ = (κ − αν)/μ²`.
pub fn invariant_i0(k: &Kmn, alpha: &ScalarField) -> Result<ScalarField> {
    if k.mu.is_zero() {
        return Err(Error::Precondition("I₀ is undefined for μ = 0".into()));
    }
    (&k.kappa - &(alpha * &k.nu)).checked_div(&(&k.mu * &k.mu))
}

/// Deforming by `(γ₁,β₁)` then `(γ₂,β₂)` equals one deformation by
/// `(γ₁γ₂, β₁β₂)` for constant β.
pub fn composition_check(s: &Structure, p1: &DParams, p2: &DParams) -> Result<Check> {
    if !p1.beta.is_constant() || !p2.beta.is_constant() {
        return Ok(Check::skipped("composition_law", "stated for constant β only"));
    }
    let twice = d_homothetic_deform(&d_homothetic_deform(s, p1)?, p2)?;
    let once = d_homothetic_deform(
        s,
        &DParams {
            gamma: &p1.gamma * &p2.gamma,
            beta: &p1.beta * &p2.beta,
        },
    )?;
    let parts: [(&Field, &Field); 4] = [
        (&twice.phi, &once.phi),
        (&twice.xi, &once.xi),
        (&twice.eta, &once.eta),
        (&twice.g, &once.g),
    ];
    for (a, b) in parts {
        let d = a.sub(b);
        if !d.is_zero() {
            return Ok(Check::residual("composition_law", &d));
        }
    }
    Ok(Check::pass("composition_law"))
}

/// Summary of a D-homothetic deformation for reports.
#[derive(Clone, Debug, Serialize)]
pub struct DeformationSummary {
    pub gamma: String,
    pub beta: String,
    pub alpha: String,
    pub alpha_tilde: String,
    pub checks: Vec<Check>,
}
