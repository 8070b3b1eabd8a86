//! Almost paracontact metric structures and their almost α-paracosymplectic analysis.

mod alpha;
mod analysis;
mod axioms;
mod identities;
mod leaves;
pub(crate) mod terms;

pub use alpha::{extract_alpha, fundamental_form, AlphaInfo};
pub use analysis::{analyze_structure, tensor_a, tensor_h, StructureAnalysis};
pub use axioms::{verify_axioms, AxiomReport};
pub use identities::identity_suite;
pub use leaves::{
    leaf_second_fundamental_form, leaves_model, nijenhuis_normality, para_kenmotsu_criterion, parakaehler_leaves_check,
    LeafForm, ParaKenmotsuCriterion,
};

use crate::error::{Error, Result};
use crate::geometry::linalg::metric_inverse;
use crate::geometry::{Connection, TensorField};
use crate::parser::ManifoldDefinition;
use crate::symbolic::{Ctx, Rational, ScalarField};

pub type Field = TensorField<ScalarField>;

/// `(φ, ξ, η, g)` on a chart, with the metric inverse and Levi-Civita
/// connection computed once.
#[derive(Clone, Debug)]
pub struct Structure {
    pub name: String,
    pub ctx: Ctx,
    pub phi: Field,
    pub xi: Field,
    pub eta: Field,
    pub g: Field,
    pub ginv: Field,
    pub conn: Connection<ScalarField>,
    pub base_point: Vec<Rational>,
    /// α declared in the input, cross-checked against the extracted one.
    pub declared_alpha: Option<ScalarField>,
}

impl Structure {
    pub fn new(
        name: impl Into<String>,
        phi: Field,
        xi: Field,
        eta: Field,
        g: Field,
        base_point: Vec<Rational>,
    ) -> Result<Self> {
        let ctx = g.ctx().clone();
        let d = ctx.dim();
        if d < 3 || d % 2 == 0 {
            return Err(Error::Definition(format!("dimension must be odd and at least 3, got {d}")));
        }
        let shapes = [(&phi, (1, 1), "phi"), (&xi, (1, 0), "xi"), (&eta, (0, 1), "eta"), (&g, (0, 2), "metric")];
        for (t, v, what) in shapes {
            if t.valence() != v || t.dim() != d {
                return Err(Error::Shape(format!("{what} has valence {:?}, expected {v:?}", t.valence())));
            }
        }
        if base_point.len() != d {
            return Err(Error::Shape(format!("base point has {} entries, chart has {d}", base_point.len())));
        }
        for i in 0..d {
            for j in i + 1..d {
                if g.at2(i, j) != g.at2(j, i) {
                    return Err(Error::Asymmetric { i, j });
                }
            }
        }
        let ginv = metric_inverse(&g)?;
        let conn = Connection::from_metric(&g, &ginv);
        Ok(Structure {
            name: name.into(),
            ctx,
            phi,
            xi,
            eta,
            g,
            ginv,
            conn,
            base_point,
            declared_alpha: None,
        })
    }

    pub fn from_definition(def: &ManifoldDefinition) -> Result<Self> {
        let f = def.fields()?;
        let ctx = &f.ctx;
        let mut s = Structure::new(
            def.name.clone().unwrap_or_else(|| "unnamed".into()),
            TensorField::operator(ctx, f.phi)?,
            TensorField::vector(ctx, f.xi)?,
            TensorField::covector(ctx, f.eta)?,
            TensorField::bilinear(ctx, f.metric)?,
            def.base_point.clone(),
        )?;
        s.declared_alpha = f.alpha;
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.ctx.dim()
    }

    /// `n` with `dim = 2n + 1`.
    pub fn n(&self) -> usize {
        (self.dim() - 1) / 2
    }

    pub fn eval(&self, f: &ScalarField) -> Result<Rational> {
        f.eval_with_generators(&self.base_point)
    }

    /// Components of a tensor at the base point.
    pub fn eval_tensor(&self, t: &Field) -> Result<Vec<Rational>> {
        eval_tensor_at(t, &self.base_point)
    }
}

pub fn eval_tensor_at(t: &Field, point: &[Rational]) -> Result<Vec<Rational>> {
    t.comps().iter().map(|c| c.eval_with_generators(point)).collect()
}

/// Components as a row-major `d × d` matrix.
pub fn eval_matrix_at(t: &Field, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    let d = t.dim();
    let flat = eval_tensor_at(t, point)?;
    Ok(flat.chunks(d).map(|r| r.to_vec()).collect())
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::{analyze_structure, Structure, StructureAnalysis};

    pub fn load(name: &str) -> (Structure, StructureAnalysis) {
        let e = crate::catalog::entry(name).expect("catalog entry");
        let s = Structure::from_definition(&e.definition).expect("loads");
        let an = analyze_structure(&s).expect("apc");
        (s, an)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::int;

    #[test]
    fn evaluation_at_the_base_point() {
        let (s, an) = fixtures::load("example_e");
        assert_eq!(s.dim(), 3);
        assert_eq!(s.n(), 1);
        assert_eq!(s.eval(&an.alpha).unwrap(), int(1));
        // h at (1, 1, 0)
        let h = eval_matrix_at(&an.h, &s.base_point).unwrap();
        assert_eq!(h[0], vec![int(1), int(0), int(-1)]);
        assert_eq!(h[1], vec![int(0), int(-1), int(3)]);
        assert_eq!(s.eval_tensor(&s.xi).unwrap(), vec![int(1), int(3), int(1)]);
    }

    #[test]
    fn degenerate_metric_is_rejected() {
        let mut def = crate::catalog::entry("flat_product").unwrap().definition;
        def.metric[2][2] = "0".into();
        assert!(Structure::from_definition(&def).is_err());
    }
}
