//! Built-in manifold definitions.
//!
//! Most 3D entries come from one construction: a coframe `θ1, θ2, η` with
//! metric `θ1² − θ2² + η²` and `φ = E2⊗θ1 + E1⊗θ2`, where `E1, E2, ξ` is the
//! dual frame. Higher-dimensional coframe entries repeat the `(+,−)` pairs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::linalg::inverse;
use crate::parser::{parse_field, ManifoldDefinition};
use crate::symbolic::{int, parse_rational, Context, Generator, Rational, ScalarField};

#[derive(Clone, Debug, Serialize)]
pub struct Expected {
    /// Canonical rendering of α.
    pub alpha: Option<&'static str>,
    pub h_type: Option<&'static str>,
    /// `(κ, μ, ν)` computed by the engine and cross-checked independently.
    pub nullity: Option<[&'static str; 3]>,
    /// The triple stated in the literature for this example, when it differs.
    pub stated_nullity: Option<[&'static str; 3]>,
    pub harmonic: Option<bool>,
    pub negative_control: bool,
}

impl Expected {
    const fn new() -> Self {
        Expected {
            alpha: None,
            h_type: None,
            nullity: None,
            stated_nullity: None,
            harmonic: None,
            negative_control: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub definition: ManifoldDefinition,
    pub expected: Expected,
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn matrix(m: &[&[&str]]) -> Vec<Vec<String>> {
    m.iter().map(|r| strings(r)).collect()
}

fn point(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Builds `(φ, ξ, η, g)` from a coframe. `theta` lists `θ1..θ2n` followed by
/// `η`, each as component strings; pairs `(θ_{2k-1}, θ_{2k})` carry signs `(+,−)`.
pub fn coframe_definition(
    name: &str,
    coords: &[&str],
    generators: Vec<Generator>,
    base_point: Vec<Rational>,
    theta: &[&[&str]],
) -> Result<ManifoldDefinition> {
    let d = coords.len();
    if theta.len() != d || theta.iter().any(|r| r.len() != d) {
        return Err(Error::Shape(format!("coframe must be {d} forms with {d} components")));
    }
    let ctx = Context::new(strings(coords), generators.clone())?;
    let rows: Vec<Vec<ScalarField>> = theta
        .iter()
        .map(|r| r.iter().map(|s| parse_field(s, &ctx)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    // columns of the inverse are the dual frame E1..E2n, ξ
    let frame = inverse(&ctx, &rows)?;
    let e = |k: usize, i: usize| frame[i][k].clone();
    let zero = ScalarField::zero(&ctx);
    let mut phi = vec![vec![zero.clone(); d]; d];
    let mut g = vec![vec![zero.clone(); d]; d];
    for p in 0..(d - 1) / 2 {
        let (a, b) = (2 * p, 2 * p + 1);
        for i in 0..d {
            for j in 0..d {
                phi[i][j] = &phi[i][j] + &(&(&e(b, i) * &rows[a][j]) + &(&e(a, i) * &rows[b][j]));
                g[i][j] = &g[i][j] + &(&(&rows[a][i] * &rows[a][j]) - &(&rows[b][i] * &rows[b][j]));
            }
        }
    }
    let eta = &rows[d - 1];
    for i in 0..d {
        for j in 0..d {
            g[i][j] = &g[i][j] + &(&eta[i] * &eta[j]);
        }
    }
    let render_vec = |v: &[ScalarField]| v.iter().map(ScalarField::render).collect::<Vec<_>>();
    Ok(ManifoldDefinition {
        name: Some(name.to_string()),
        dim: d,
        coords: strings(coords),
        base_point,
        generators,
        xi: (0..d).map(|i| e(d - 1, i).render()).collect(),
        eta: render_vec(eta),
        phi: phi.iter().map(|r| render_vec(r)).collect(),
        metric: g.iter().map(|r| render_vec(r)).collect(),
        alpha: None,
    })
}

/// 3D coframe entry with `ξ = a∂x + b∂y + ∂z`, `E1 = ∂x`, `E2 = ∂y`, `η = dz`.
fn xi_frame(name: &str, a: &str, b: &str, base: &[i64]) -> ManifoldDefinition {
    let t1 = format!("-({a})");
    let t2 = format!("-({b})");
    coframe_definition(
        name,
        &["x", "y", "z"],
        Vec::new(),
        point(base),
        &[&["1", "0", &t1], &["0", "1", &t2], &["0", "0", "1"]],
    )
    .expect("catalog coframe is invertible")
}

pub fn example_e() -> ManifoldDefinition {
    ManifoldDefinition {
        name: Some("example_e".into()),
        dim: 3,
        coords: strings(&["x", "y", "z"]),
        base_point: point(&[1, 1, 0]),
        generators: Vec::new(),
        xi: strings(&["x", "y + 2*x", "1"]),
        eta: strings(&["0", "0", "1"]),
        phi: matrix(&[&["0", "1", "-(y + 2*x)"], &["1", "0", "-x"], &["0", "0", "0"]]),
        metric: matrix(&[
            &["1", "0", "-x"],
            &["0", "-1", "y + 2*x"],
            &["-x", "y + 2*x", "1 - 3*x^2 - 4*x*y - y^2"],
        ]),
        alpha: Some("1".into()),
    }
}

fn flat_product() -> ManifoldDefinition {
    ManifoldDefinition {
        name: Some("flat_product".into()),
        dim: 3,
        coords: strings(&["x", "y", "z"]),
        base_point: point(&[0, 0, 0]),
        generators: Vec::new(),
        xi: strings(&["0", "0", "1"]),
        eta: strings(&["0", "0", "1"]),
        phi: matrix(&[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "0"]]),
        metric: matrix(&[&["1", "0", "0"], &["0", "-1", "0"], &["0", "0", "1"]]),
        alpha: Some("0".into()),
    }
}

/// `dt² + e^{2t}(dx² − dy²)`.
fn warped_kenmotsu() -> ManifoldDefinition {
    ManifoldDefinition {
        name: Some("warped_kenmotsu".into()),
        dim: 3,
        coords: strings(&["x", "y", "t"]),
        base_point: point(&[0, 0, 0]),
        generators: vec![Generator {
            name: "E".into(),
            coord: 2,
            rate: int(1),
        }],
        xi: strings(&["0", "0", "1"]),
        eta: strings(&["0", "0", "1"]),
        phi: matrix(&[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "0"]]),
        metric: matrix(&[&["E^2", "0", "0"], &["0", "-E^2", "0"], &["0", "0", "1"]]),
        alpha: Some("1".into()),
    }
}

/// `dz² + F(z)(dx1² − dx2² + dx3² − dx4²)` with `F = 1 + z²`, so that
/// `α = F′/(2F)` is a genuine function of `z`.
fn warped5_alpha_z() -> ManifoldDefinition {
    ManifoldDefinition {
        name: Some("warped5_alpha_z".into()),
        dim: 5,
        coords: strings(&["x1", "x2", "x3", "x4", "z"]),
        base_point: point(&[0, 0, 0, 0, 1]),
        generators: Vec::new(),
        xi: strings(&["0", "0", "0", "0", "1"]),
        eta: strings(&["0", "0", "0", "0", "1"]),
        phi: matrix(&[
            &["0", "1", "0", "0", "0"],
            &["1", "0", "0", "0", "0"],
            &["0", "0", "0", "1", "0"],
            &["0", "0", "1", "0", "0"],
            &["0", "0", "0", "0", "0"],
        ]),
        metric: matrix(&[
            &["1 + z^2", "0", "0", "0", "0"],
            &["0", "-(1 + z^2)", "0", "0", "0"],
            &["0", "0", "1 + z^2", "0", "0"],
            &["0", "0", "0", "-(1 + z^2)", "0"],
            &["0", "0", "0", "0", "1"],
        ]),
        alpha: None,
    }
}

/// Two Example-E-like blocks sharing the `z` direction.
fn product5() -> ManifoldDefinition {
    coframe_definition(
        "product5",
        &["x1", "x2", "x3", "x4", "z"],
        Vec::new(),
        point(&[1, 1, 1, 1, 0]),
        &[
            &["1", "0", "0", "0", "-x1"],
            &["0", "1", "0", "0", "-(x2 + 2*x1)"],
            &["0", "0", "1", "0", "-x3"],
            &["0", "0", "0", "1", "-(x4 + 2*x3)"],
            &["0", "0", "0", "0", "1"],
        ],
    )
    .expect("catalog coframe is invertible")
}

/// `ℝ × N⁴` where `N` is almost para-Kaehler but not para-Kaehler:
/// `θ4 = dx4 − x1 dx3` keeps the fundamental form closed.
fn product5_nonkaehler() -> ManifoldDefinition {
    coframe_definition(
        "product5_nonkaehler",
        &["x1", "x2", "x3", "x4", "z"],
        Vec::new(),
        point(&[1, 0, 0, 0, 0]),
        &[
            &["1", "0", "0", "0", "0"],
            &["0", "1", "0", "0", "0"],
            &["0", "0", "1", "0", "0"],
            &["0", "0", "-x1", "1", "0"],
            &["0", "0", "0", "0", "1"],
        ],
    )
    .expect("catalog coframe is invertible")
}

/// Example E with `g + x η⊗η`: Φ and α survive, the axioms do not.
fn perturbed_metric() -> ManifoldDefinition {
    let mut d = example_e();
    d.name = Some("perturbed_metric".into());
    d.metric[2][2] = "1 - 3*x^2 - 4*x*y - y^2 + x".into();
    d.alpha = None;
    d
}

/// `η = dz + x dy` is not closed.
fn non_apc() -> ManifoldDefinition {
    coframe_definition(
        "non_apc",
        &["x", "y", "z"],
        Vec::new(),
        point(&[0, 0, 0]),
        &[&["1", "0", "0"], &["0", "1", "0"], &["0", "x", "1"]],
    )
    .expect("catalog coframe is invertible")
}

pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let mut push = |name, description, definition, expected| {
        out.push(CatalogEntry {
            name,
            description,
            definition,
            expected,
        })
    };
    push(
        "example_e",
        "3D almost para-Kenmotsu example with ξ = x∂x + (y+2x)∂y + ∂z",
        example_e(),
        Expected {
            alpha: Some("1"),
            h_type: Some("H1"),
            nullity: Some(["0", "2", "-2"]),
            stated_nullity: Some(["1", "1", "-2"]),
            harmonic: Some(true),
            ..Expected::new()
        },
    );
    push(
        "flat_product",
        "ℝ × flat para-Kaehler plane, almost paracosymplectic",
        flat_product(),
        Expected {
            alpha: Some("0"),
            h_type: Some("Zero"),
            harmonic: Some(true),
            ..Expected::new()
        },
    );
    push(
        "warped_kenmotsu",
        "dt² + e^{2t}(dx² − dy²), para-Kenmotsu with constant curvature −1",
        warped_kenmotsu(),
        Expected {
            alpha: Some("1"),
            h_type: Some("Zero"),
            harmonic: Some(true),
            ..Expected::new()
        },
    );
    push(
        "h1_frame",
        "3D coframe entry of type h1 with λ² = 4",
        xi_frame("h1_frame", "x", "y + 4*x", &[1, 1, 0]),
        Expected {
            alpha: Some("1"),
            h_type: Some("H1"),
            nullity: Some(["3", "4", "-2"]),
            harmonic: Some(true),
            ..Expected::new()
        },
    );
    push(
        "h1_irrational",
        "3D coframe entry of type h1 whose λ² is not a rational square",
        xi_frame("h1_irrational", "x", "2*x", &[1, 1, 0]),
        Expected {
            alpha: Some("1/2"),
            h_type: Some("H1"),
            nullity: Some(["1/2", "2", "-1"]),
            harmonic: Some(true),
            ..Expected::new()
        },
    );
    push(
        "h2_frame",
        "3D coframe entry with nilpotent h",
        xi_frame("h2_frame", "x/2", "x/2", &[1, 1, 0]),
        Expected {
            alpha: Some("1/4"),
            h_type: Some("H2"),
            nullity: Some(["-1/16", "0", "0"]),
            harmonic: Some(true),
            ..Expected::new()
        },
    );
    push(
        "h3_frame",
        "3D coframe entry of type h3 (complex eigenvalues of h)",
        xi_frame("h3_frame", "2*x", "0", &[1, 1, 0]),
        Expected {
            alpha: Some("1"),
            h_type: Some("H3"),
            nullity: Some(["-2", "0", "-2"]),
            harmonic: Some(true),
            ..Expected::new()
        },
    );
    push(
        "nonconst_alpha",
        "3D coframe entry whose α is not constant",
        xi_frame("nonconst_alpha", "x*(1 + z)", "y*z", &[1, 1, 0]),
        Expected {
            alpha: Some("z + 1/2"),
            h_type: Some("H3"),
            ..Expected::new()
        },
    );
    push(
        "sigma_control",
        "3D coframe entry with ξ not an eigenvector of Q",
        xi_frame("sigma_control", "x + y^2", "y", &[1, 1, 0]),
        Expected {
            alpha: Some("1"),
            h_type: Some("H1"),
            harmonic: Some(false),
            ..Expected::new()
        },
    );
    push(
        "warped5_alpha_z",
        "5D warped product with α = z/(1+z²)",
        warped5_alpha_z(),
        Expected {
            alpha: Some("z/(z^2 + 1)"),
            harmonic: Some(true),
            ..Expected::new()
        },
    );
    push(
        "product5",
        "5D coframe entry with h ≠ 0",
        product5(),
        Expected {
            alpha: Some("1"),
            nullity: Some(["0", "2", "-2"]),
            harmonic: Some(true),
            ..Expected::new()
        },
    );
    push(
        "product5_nonkaehler",
        "ℝ × almost para-Kaehler fiber whose leaves are not para-Kaehler",
        product5_nonkaehler(),
        Expected {
            alpha: Some("0"),
            ..Expected::new()
        },
    );
    push(
        "perturbed_metric",
        "negative control: Example E with a corrupted metric",
        perturbed_metric(),
        Expected {
            negative_control: true,
            ..Expected::new()
        },
    );
    push(
        "non_apc",
        "negative control: η is not closed",
        non_apc(),
        Expected {
            negative_control: true,
            ..Expected::new()
        },
    );
    out
}

pub fn entry(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

/// Parses an `x,y,z`-style point.
pub fn parse_point(text: &str) -> Option<Vec<Rational>> {
    text.split(',').map(parse_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::load_definition;
    use crate::symbolic::rat;
    use crate::structure::{analyze_structure, verify_axioms, Structure};

    #[test]
    fn required_entries_are_present() {
        let names: Vec<_> = catalog().iter().map(|e| e.name).collect();
        for n in ["example_e", "flat_product", "warped_kenmotsu", "h1_frame", "product5", "perturbed_metric", "non_apc"] {
            assert!(names.contains(&n), "{n}");
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len(), "duplicate names");
    }

    #[test]
    fn genuine_entries_load_with_expected_alpha() {
        for e in catalog().into_iter().filter(|e| !e.expected.negative_control) {
            let s = Structure::from_definition(&e.definition).unwrap();
            assert!(verify_axioms(&s).ok, "{}", e.name);
            let an = analyze_structure(&s).unwrap();
            if let Some(a) = e.expected.alpha {
                assert_eq!(an.alpha.render(), a, "{}", e.name);
            }
        }
    }

    #[test]
    fn toml_round_trip() {
        for e in catalog() {
            let back = load_definition(&e.definition.to_toml()).unwrap();
            assert_eq!(back.to_toml(), e.definition.to_toml(), "{}", e.name);
        }
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("1/2, -3,0"), Some(vec![rat(1, 2), int(-3), int(0)]));
        assert_eq!(parse_point("1,a"), None);
    }

    #[test]
    fn coframe_shape_is_checked() {
        assert!(coframe_definition("bad", &["x", "y"], Vec::new(), point(&[0, 0]), &[&["1", "0"]]).is_err());
    }
}
