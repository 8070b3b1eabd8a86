use serde::Serialize;

use super::{Field, Structure};
use crate::check::Check;
use crate::error::{Error, Result};
use crate::geometry::forms::{differential, exterior_derivative, interior, is_antisymmetric, wedge};
use crate::geometry::linalg::{bilinear_of, pair};
use crate::symbolic::{int, Rational, ScalarField};

/// `Φ(X, Y) = g(φX, Y)`.
pub fn fundamental_form(s: &Structure) -> Result<Field> {
    let phi = bilinear_of(&s.g, &s.phi);
    if !is_antisymmetric(&phi) {
        return Err(Error::Definition("fundamental form has a nonzero symmetric part".into()));
    }
    Ok(phi)
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaInfo {
    #[serde(skip)]
    pub alpha: ScalarField,
    #[serde(skip)]
    pub f: ScalarField,
    pub is_apc: bool,
    pub alpha_constant: bool,
    /// Sorted index triple the quotient was read from.
    pub component: [usize; 3],
    pub checks: Vec<Check>,
}

impl AlphaInfo {
    pub fn constant_value(&self) -> Option<Rational> {
        self.alpha.constant_value()
    }
}

/// Reads α off `dΦ = 2α η∧Φ` at a component where `η∧Φ` does not vanish at
/// the base point, then checks the relation in every component.
pub fn extract_alpha(s: &Structure) -> Result<AlphaInfo> {
    let d = s.dim();
    let phi_form = fundamental_form(s)?;
    let d_eta = exterior_derivative(&s.eta)?;
    let eta_phi = wedge(&s.eta, &phi_form)?;
    let d_phi = exterior_derivative(&phi_form)?;

    let triples = sorted_triples(d);
    let usable: Vec<[usize; 3]> = triples
        .iter()
        .copied()
        .filter(|t| !eta_phi.at3(t[0], t[1], t[2]).is_zero())
        .collect();
    let component = usable
        .iter()
        .copied()
        .find(|t| {
            s.eval(eta_phi.at3(t[0], t[1], t[2]))
                .map(|v| v != int(0))
                .unwrap_or(false)
        })
        .ok_or_else(|| Error::Degenerate("η∧Φ vanishes at the base point".into()))?;
    let quotient = |t: &[usize; 3]| -> Result<ScalarField> {
        let num = d_phi.at3(t[0], t[1], t[2]);
        let den = eta_phi.at3(t[0], t[1], t[2]).scale(&int(2));
        num.checked_div(&den)
    };
    let alpha = quotient(&component)?;

    let mut checks = Vec::new();
    checks.push(Check::residual("d_eta_closed", &d_eta));
    let residual = d_phi.sub(&eta_phi.mul_scalar(&alpha).scale(&int(2)));
    checks.push(Check::residual("d_phi_relation", &residual));
    let is_apc = checks.iter().all(|c| c.passed());

    checks.push(Check::residual("i_xi_phi_form", &interior(&s.xi, &phi_form)));
    checks.push(volume_check(s, &phi_form));

    // any other usable component must give the same canonical α
    match usable.iter().find(|t| **t != component) {
        Some(t) if is_apc => {
            let other = quotient(t)?;
            checks.push(Check::scalar("alpha_cross_check", &(&other - &alpha)));
        }
        _ => checks.push(Check::skipped("alpha_cross_check", "no second component available")),
    }

    if let (Some(declared), true) = (&s.declared_alpha, is_apc) {
        if declared != &alpha {
            return Err(Error::Definition(format!(
                "declared alpha `{}` differs from the extracted `{}`",
                declared.render(),
                alpha.render()
            )));
        }
    }

    let d_alpha = differential(&alpha);
    let f = pair(&d_alpha, &s.xi);
    if d >= 5 {
        checks.push(Check::residual("d_alpha_wedge_eta", &wedge(&d_alpha, &s.eta)?));
        checks.push(Check::residual("d_alpha_f_eta", &d_alpha.sub(&s.eta.mul_scalar(&f))));
    }
    Ok(AlphaInfo {
        alpha_constant: alpha.is_constant(),
        alpha,
        f,
        is_apc,
        component,
        checks,
    })
}

/// `η∧Φⁿ` must be nonzero at the base point.
fn volume_check(s: &Structure, phi_form: &Field) -> Check {
    let mut vol = s.eta.clone();
    for _ in 0..s.n() {
        vol = match wedge(&vol, phi_form) {
            Ok(w) => w,
            Err(e) => return Check::fail("volume_form", None).with_note(e.to_string()),
        };
    }
    let top: Vec<usize> = (0..s.dim()).collect();
    match s.eval(vol.get(&top)) {
        Ok(v) if v != int(0) => Check::pass("volume_form"),
        Ok(_) => Check::fail("volume_form", None).with_note("η∧Φⁿ vanishes at the base point"),
        Err(e) => Check::fail("volume_form", None).with_note(e.to_string()),
    }
}

fn sorted_triples(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                out.push([i, j, k]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::entry;

    fn structure(name: &str) -> Structure {
        Structure::from_definition(&entry(name).unwrap().definition).unwrap()
    }

    #[test]
    fn constant_and_variable_alpha() {
        let a = extract_alpha(&structure("example_e")).unwrap();
        assert!(a.is_apc && a.alpha_constant);
        assert_eq!(a.constant_value(), Some(int(1)));
        let b = extract_alpha(&structure("nonconst_alpha")).unwrap();
        assert!(b.is_apc && !b.alpha_constant);
        assert_eq!(b.alpha.render(), "z + 1/2");
    }

    #[test]
    fn warped_five_dimensional_alpha() {
        let a = extract_alpha(&structure("warped5_alpha_z")).unwrap();
        assert_eq!(a.alpha.render(), "z/(z^2 + 1)");
        assert!(a.checks.iter().all(|c| !c.failed()), "{:?}", a.checks);
    }

    #[test]
    fn non_closed_eta_is_not_apc() {
        let a = extract_alpha(&structure("non_apc"));
        assert!(a.map(|a| !a.is_apc).unwrap_or(true));
    }

    #[test]
    fn triples_are_sorted() {
        assert_eq!(sorted_triples(3), vec![[0, 1, 2]]);
        assert_eq!(sorted_triples(5).len(), 10);
    }
}
