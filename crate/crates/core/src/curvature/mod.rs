//! Curvature identities of almost α-paracosymplectic manifolds, harmonicity
//! of ξ, and the constant-curvature consequence.

mod laplacian;

pub use laplacian::{rough_laplacian_xi, RoughLaplacian};

use serde::Serialize;

use crate::check::Check;
use crate::geometry::curvature::{bianchi_residual, ricci_operator, ricci_tensor, riemann, scalar_curvature};
use crate::geometry::forms::differential;
use crate::geometry::linalg::{apply, bilinear_of, compose, inner, outer, pullback, trace};
use crate::geometry::TensorField;
use crate::structure::terms::{eta_x, eta_y, insert_first, lower_output, scalar_mul, swap, swap_last};
use crate::structure::{Field, Structure, StructureAnalysis};
use crate::symbolic::{int, Rational, ScalarField};

/// Riemann, Ricci and the derived operators of a structure.
#[derive(Clone, Debug)]
pub struct Curvature {
    pub riemann: Field,
    pub ricci: Field,
    pub q: Field,
    pub scalar: ScalarField,
    /// Jacobi operator `lX = R(X,ξ)ξ`.
    pub jacobi: Field,
    /// `σ = S(ξ,·)` restricted to `ker η`.
    pub sigma: Field,
}

pub fn curvature_of(s: &Structure) -> Curvature {
    let riemann = riemann(&s.conn);
    let ricci = ricci_tensor(&riemann);
    let q = ricci_operator(&ricci, &s.ginv);
    let scalar = scalar_curvature(&q);
    let jacobi = r_xy_z_in_x(&riemann, &s.xi, &s.xi);
    let proj = TensorField::identity(&s.ctx).sub(&outer(&s.xi, &s.eta));
    let s_xi = insert_first(&ricci, &s.xi);
    let sigma = pullback(&s_xi, &proj);
    Curvature {
        riemann,
        ricci,
        q,
        scalar,
        jacobi,
        sigma,
    }
}

/// `X ↦ R(X, Y)Z` for fixed vector fields `Y`, `Z`.
fn r_xy_z_in_x(r: &Field, y: &Field, z: &Field) -> Field {
    let t = r.permute_covariant(&[1, 2, 0]); // (Y, Z, X) ↦ R(X, Y)Z
    insert_first(&insert_first(&t, y), z)
}

/// `(X, Y) ↦ R(X, Y)ξ`.
pub fn r_xy_xi(r: &Field, xi: &Field) -> Field {
    let t = r.permute_covariant(&[2, 0, 1]); // (Z, X, Y)
    insert_first(&t, xi)
}

/// `X ↦ R(ξ, X)ξ`.
fn r_xi_x_xi(r: &Field, xi: &Field) -> Field {
    let t = r.permute_covariant(&[0, 2, 1]); // (ξ, Z, X)
    insert_first(&insert_first(&t, xi), xi)
}

fn alpha_constant_gate(an: &StructureAnalysis, name: &str) -> Option<Check> {
    if an.alpha_constant() {
        None
    } else {
        Some(Check::skipped(name, "requires α = const"))
    }
}

/// `R(X,Y)ξ` in general form, and in the simplified `dα = fη` form when the
/// dimension is at least 5.
pub fn check_rxyxi_general(s: &Structure, an: &StructureAnalysis, c: &Curvature) -> Vec<Check> {
    let (xi, eta) = (&s.xi, &s.eta);
    let al = &an.alpha;
    let id = TensorField::identity(&s.ctx);
    let phih = an.phi_h(s);
    let lhs = r_xy_xi(&c.riemann, xi);
    let nphih = s.conn.covariant_derivative(&phih); // (∇_X φh)Y at [a][X][Y]
    let skew = nphih.sub(&swap(&nphih));
    let d_alpha = differential(al);
    let proj = id.sub(&outer(xi, eta));
    let aa = scalar_mul(&id, al).add(&phih); // αI + φh
    let rhs = eta_x(&proj, &d_alpha)
        .sub(&eta_y(&proj, &d_alpha))
        .add(&scalar_mul(&eta_x(&aa, eta).sub(&eta_y(&aa, eta)), al))
        .add(&skew);
    let mut out = vec![Check::residual("r_xy_xi_general", &lhs.sub(&rhs))];
    if s.dim() >= 5 {
        let f_a2 = &an.f + &(al * al);
        let rhs2 = scalar_mul(&eta_x(&id, eta).sub(&eta_y(&id, eta)), &f_a2)
            .add(&scalar_mul(&eta_x(&phih, eta).sub(&eta_y(&phih, eta)), al))
            .add(&skew);
        out.push(Check::residual("r_xy_xi_reduced", &lhs.sub(&rhs2)));
    } else {
        out.push(Check::skipped("r_xy_xi_reduced", "holds only in dimension at least 5"));
    }
    out
}

/// The curvature identities for constant α, with `div(φh)^k = g^{ij}(∇_i φh)^k_j`.
pub fn check_r2_suite(s: &Structure, an: &StructureAnalysis, c: &Curvature) -> Vec<Check> {
    const NAMES: [&str; 6] = [
        "r_xy_xi_constant_alpha",
        "r_xi_x_xi",
        "nabla_xi_h",
        "r_xi_x_xi_symmetrized",
        "ricci_xi",
        "ricci_xi_xi",
    ];
    if let Some(skip) = alpha_constant_gate(an, NAMES[0]) {
        return NAMES
            .iter()
            .map(|n| Check::skipped(*n, skip.note.clone().unwrap_or_default()))
            .collect();
    }
    let (phi, xi, eta, g) = (&s.phi, &s.xi, &s.eta, &s.g);
    let (h, al) = (&an.h, &an.alpha);
    let a2 = al * al;
    let two = int(2);
    let phih = an.phi_h(s);
    let phi2 = compose(phi, phi);
    let h2 = compose(h, h);
    let mut out = Vec::new();

    let nphih = s.conn.covariant_derivative(&phih);
    let aa = scalar_mul(&TensorField::identity(&s.ctx), al).add(&phih);
    let b3 = scalar_mul(&eta_x(&aa, eta).sub(&eta_y(&aa, eta)), al).add(&nphih.sub(&swap(&nphih)));
    out.push(Check::residual(NAMES[0], &r_xy_xi(&c.riemann, xi).sub(&b3)));

    let rxx = r_xi_x_xi(&c.riemann, xi);
    let nxi_h = insert_first(&s.conn.covariant_derivative(h), xi);
    let iremm = scalar_mul(&phi2, &a2)
        .add(&scalar_mul(&phih, al).scale(&two))
        .sub(&h2)
        .add(&compose(phi, &nxi_h));
    out.push(Check::residual(NAMES[1], &rxx.sub(&iremm)));

    let iremmm = scalar_mul(phi, &a2)
        .neg()
        .sub(&scalar_mul(h, al).scale(&two))
        .add(&compose(phi, &h2))
        .sub(&compose(phi, &c.jacobi));
    out.push(Check::residual(NAMES[2], &nxi_h.sub(&iremmm)));

    let sym = rxx.add(&compose(phi, &compose(&rxx, phi))).scale(&crate::symbolic::rat(1, 2));
    out.push(Check::residual(NAMES[3], &sym.sub(&scalar_mul(&phi2, &a2).sub(&h2))));

    let n = int(s.n() as i64);
    let div = divergence(&nphih, &s.ginv);
    let s_xi = insert_first(&c.ricci, xi);
    let rhs = scalar_mul(eta, &a2).scale(&(-&two * &n)).add(&crate::geometry::linalg::lower(g, &div));
    out.push(Check::residual(NAMES[4], &s_xi.sub(&rhs)));

    let sxx = inner(g, &apply(&c.q, xi), xi);
    let rhs = &a2.scale(&(-&two * &n)) + &trace(&h2);
    out.push(Check::scalar(NAMES[5], &(&sxx - &rhs)));
    out
}

/// `div T` of a (1,1)-tensor from its covariant derivative `[a][i][j]`.
fn divergence(nt: &Field, ginv: &Field) -> Field {
    let ctx = nt.ctx();
    let d = nt.dim();
    TensorField::from_fn(ctx, 1, 0, |ix| {
        let mut acc = ScalarField::zero(ctx);
        for i in 0..d {
            for j in 0..d {
                let gij = ginv.at2(i, j);
                if gij.is_zero() {
                    continue;
                }
                acc = &acc + &(gij * nt.at3(ix[0], i, j));
            }
        }
        acc
    })
}

/// Four-term curvature identity for constant α, as a (0,3)-tensor in `X, Y, Z`.
pub fn check_r3_identity(s: &Structure, an: &StructureAnalysis, c: &Curvature) -> Check {
    const NAME: &str = "curvature_four_term";
    if let Some(skip) = alpha_constant_gate(an, NAME) {
        return skip;
    }
    let (phi, xi, eta, g) = (&s.phi, &s.xi, &s.eta, &s.g);
    let (h, al) = (&an.h, &an.alpha);
    let two = int(2);
    let a2 = al * al;
    // L(X, Y, Z) = g(R(ξ, X)Y, Z)
    let rxi = insert_first(&c.riemann, xi);
    let l = lower_output(&rxi, g);
    let lhs = l
        .add(&l.apply_in_slot(1, phi).apply_in_slot(2, phi))
        .sub(&l.apply_in_slot(0, phi).apply_in_slot(1, phi))
        .sub(&l.apply_in_slot(0, phi).apply_in_slot(2, phi));
    let nform = s.conn.covariant_derivative(&an.phi_form);
    let g_eta = g.tensor(eta); // g(X, Y) η(Z)
    let gphih_eta = bilinear_of(g, &an.phi_h(s)).tensor(eta); // g(φhX, Y) η(Z)
    let rhs = nform
        .apply_in_slot(0, h)
        .scale(&two)
        .add(&scalar_mul(&swap_last(&g_eta).sub(&g_eta), &a2).scale(&two))
        .add(&scalar_mul(&swap_last(&gphih_eta).sub(&gphih_eta), al).scale(&two));
    Check::residual(NAME, &lhs.sub(&rhs))
}

/// `Qφ − φQ` for constant α on structures with para-Kaehler leaves.
pub fn check_q_commutator(s: &Structure, an: &StructureAnalysis, c: &Curvature) -> Check {
    const NAME: &str = "ricci_commutator";
    if let Some(skip) = alpha_constant_gate(an, NAME) {
        return skip;
    }
    if !an.parakaehler_leaves {
        return Check::skipped(NAME, "requires para-Kaehler leaves");
    }
    let (phi, xi, eta) = (&s.phi, &s.xi, &s.eta);
    let (q, l) = (&c.q, &c.jacobi);
    let lhs = compose(q, phi).sub(&compose(phi, q));
    let one_minus_n = int(1) - int(s.n() as i64);
    let coeff = an.alpha.scale(&(int(4) * one_minus_n));
    let rhs = compose(l, phi)
        .sub(&compose(phi, l))
        .sub(&scalar_mul(&an.h, &coeff))
        .sub(&outer(&apply(phi, &apply(q, xi)), eta))
        .add(&outer(xi, &pullback(eta, &compose(q, phi))));
    Check::residual(NAME, &lhs.sub(&rhs))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantCurvature {
    /// Sectional curvature as `p/q`.
    pub c: String,
    pub checks: Vec<Check>,
}

/// Detects constant sectional curvature. The candidate `c` is read from
/// `R(∂i,∂j)∂j = c g_jj ∂i + …` at a pair with `g_jj ≠ 0` at the base point.
pub fn constant_curvature_probe(s: &Structure, an: &StructureAnalysis, c: &Curvature) -> Option<ConstantCurvature> {
    if !an.alpha_constant() || an.alpha.is_zero() {
        return None;
    }
    let d = s.dim();
    let (i, j) = (0..d)
        .flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j)))
        .find(|&(_, j)| s.eval(s.g.at2(j, j)).map(|v| v != int(0)).unwrap_or(false))?;
    let cand = c.riemann.at4(i, i, j, j).checked_div(s.g.at2(j, j)).ok()?;
    let value: Rational = cand.constant_value()?;
    let model = constant_curvature_tensor(&s.g, &cand);
    if !c.riemann.sub(&model).is_zero() {
        return None;
    }
    let alpha2 = &an.alpha * &an.alpha;
    let h2 = compose(&an.h, &an.h);
    let checks = vec![
        Check::scalar("curvature_is_minus_alpha_squared", &(&cand + &alpha2)),
        Check::residual("h_squared_vanishes", &h2),
    ];
    Some(ConstantCurvature {
        c: crate::symbolic::render_rational(&value),
        checks,
    })
}

/// `R(X,Y)Z = c(g(Y,Z)X − g(X,Z)Y)` at `[l][x][y][z]`.
fn constant_curvature_tensor(g: &Field, c: &ScalarField) -> Field {
    let ctx = g.ctx();
    TensorField::from_fn(ctx, 1, 3, |ix| {
        let (l, x, y, z) = (ix[0], ix[1], ix[2], ix[3]);
        let mut v = ScalarField::zero(ctx);
        if l == x {
            v = &v + g.at2(y, z);
        }
        if l == y {
            v = &v - g.at2(x, z);
        }
        &v * c
    })
}

/// ξ is harmonic iff `Qξ = S(ξ,ξ)ξ`.
pub fn xi_is_harmonic(q: &Field, s: &Structure) -> bool {
    harmonic_residual(q, s).is_zero()
}

pub fn harmonic_residual(q: &Field, s: &Structure) -> Field {
    let qxi = apply(q, &s.xi);
    let sxx = inner(&s.g, &qxi, &s.xi);
    qxi.sub(&scalar_mul(&s.xi, &sxx))
}

/// Jacobi operator properties and the Bianchi identity.
pub fn basic_checks(s: &Structure, c: &Curvature) -> Vec<Check> {
    let gl = bilinear_of(&s.g, &c.jacobi);
    vec![
        Check::residual("jacobi_xi", &apply(&c.jacobi, &s.xi)),
        Check::residual("jacobi_self_adjoint", &gl.sub(&swap(&gl))),
        Check::scalar("sigma_xi", &crate::geometry::linalg::pair(&c.sigma, &s.xi)),
        Check::residual("first_bianchi", &bianchi_residual(&c.riemann)),
    ]
}

/// Everything the curvature stage reports.
#[derive(Clone, Debug)]
pub struct CurvatureReport {
    pub curvature: Curvature,
    pub checks: Vec<Check>,
    pub harmonic: bool,
    pub constant_curvature: Option<ConstantCurvature>,
    pub laplacian: Option<RoughLaplacian>,
}

pub fn analyze_curvature(s: &Structure, an: &StructureAnalysis) -> CurvatureReport {
    let c = curvature_of(s);
    let mut checks = basic_checks(s, &c);
    checks.extend(check_rxyxi_general(s, an, &c));
    checks.extend(check_r2_suite(s, an, &c));
    checks.push(check_r3_identity(s, an, &c));
    checks.push(check_q_commutator(s, an, &c));
    let constant_curvature = constant_curvature_probe(s, an, &c);
    if let Some(cc) = &constant_curvature {
        checks.extend(cc.checks.iter().cloned());
    }
    let laplacian = rough_laplacian_xi(s, an, &c).ok();
    if let Some(l) = &laplacian {
        checks.extend(l.checks.iter().cloned());
    }
    let harmonic = xi_is_harmonic(&c.q, s);
    CurvatureReport {
        curvature: c,
        checks,
        harmonic,
        constant_curvature,
        laplacian,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::all_pass;
    use crate::structure::fixtures::load;

    #[test]
    fn flat_product_is_flat() {
        let (s, an) = load("flat_product");
        let c = curvature_of(&s);
        assert!(c.riemann.is_zero() && c.scalar.is_zero());
        // the probe is tied to the α ≠ 0 theorem
        assert!(constant_curvature_probe(&s, &an, &c).is_none());
    }

    #[test]
    fn example_e_scalar_curvature_and_harmonicity() {
        let (s, an) = load("example_e");
        let r = analyze_curvature(&s, &an);
        assert_eq!(r.curvature.scalar.constant_value(), Some(int(-4)));
        assert!(r.harmonic);
        assert!(all_pass(&r.checks), "{:?}", r.checks);
        // Qξ = 0 here
        assert!(harmonic_residual(&r.curvature.q, &s).is_zero());
    }

    #[test]
    fn sigma_control_is_not_harmonic() {
        let (s, an) = load("sigma_control");
        let r = analyze_curvature(&s, &an);
        assert!(!r.harmonic);
        assert!(!r.curvature.sigma.is_zero());
        assert!(all_pass(&r.checks));
    }

    #[test]
    fn five_dimensional_suite() {
        let (s, an) = load("product5");
        let r = analyze_curvature(&s, &an);
        assert!(all_pass(&r.checks), "{:?}", r.checks);
        assert!(r.checks.iter().any(|c| c.name == "r_xy_xi_reduced" && c.passed()));
    }
}
