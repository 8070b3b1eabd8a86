//! Three-dimensional analysis: the Jordan type of `h`, adapted frames, the
//! Ricci operator in terms of `h`, and harmonicity of ξ against nullity.

pub mod frame;
pub mod h4;

use serde::Serialize;

use self::frame::{render_c, Env, FrameTables, Tables};
use crate::check::{Check, Witness};
use crate::curvature::{Curvature, CurvatureReport};
use crate::error::{Error, Result};
use crate::geometry::linalg::{apply, compose, outer, pair};
use crate::geometry::TensorField;
use crate::nullity::NullityFit;
use crate::structure::terms::scalar_mul;
use crate::structure::{eval_matrix_at, Field, Structure, StructureAnalysis};
use crate::symbolic::{int, rat, render_rational, Jet, JetCoeff, JetSpace, Rational, ScalarField};

/// Jordan type of `h` on `ker η` at a point. The nilpotent 3-block type
/// cannot occur and has no tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HTag {
    H1,
    H2,
    H3,
    Zero,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HType {
    pub tag: HTag,
    /// `λ²` for the two semisimple types.
    pub lambda2: Option<Rational>,
    pub point: Vec<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HTypeView {
    pub tag: HTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda2: Option<String>,
    pub point: Vec<String>,
}

impl HType {
    pub fn view(&self) -> HTypeView {
        HTypeView {
            tag: self.tag,
            lambda2: self.lambda2.as_ref().map(render_rational),
            point: self.point.iter().map(render_rational).collect(),
        }
    }
}

fn det3(m: &[Vec<Rational>]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Sum of principal 2×2 minors, i.e. `det(h|ker η)` when `hξ = 0`.
fn e2_rational(m: &[Vec<Rational>]) -> Rational {
    let minor = |a: usize, b: usize| &m[a][a] * &m[b][b] - &m[a][b] * &m[b][a];
    minor(0, 1) + minor(0, 2) + minor(1, 2)
}

fn e2_field(h: &Field) -> ScalarField {
    let minor = |a: usize, b: usize| &(h.at2(a, a) * h.at2(b, b)) - &(h.at2(a, b) * h.at2(b, a));
    &(&minor(0, 1) + &minor(0, 2)) + &minor(1, 2)
}

fn require_3d(s: &Structure) -> Result<()> {
    if s.dim() != 3 {
        return Err(Error::Precondition(format!("requires dimension 3, got {}", s.dim())));
    }
    Ok(())
}

pub fn classify_h(s: &Structure, an: &StructureAnalysis, point: &[Rational]) -> Result<HType> {
    require_3d(s)?;
    let g = eval_matrix_at(&s.g, point)?;
    if det3(&g) == int(0) {
        return Err(Error::Degenerate("metric is degenerate at the point".into()));
    }
    let m = eval_matrix_at(&an.h, point)?;
    let (tag, lambda2) = if m.iter().flatten().all(|v| *v == int(0)) {
        (HTag::Zero, None)
    } else {
        let d = e2_rational(&m);
        if d < int(0) {
            (HTag::H1, Some(-d))
        } else if d > int(0) {
            (HTag::H3, Some(d))
        } else {
            (HTag::H2, None)
        }
    };
    Ok(HType {
        tag,
        lambda2,
        point: point.to_vec(),
    })
}

const GRID: usize = 5;

/// Classification at the base point and nearby points. A change of tag is
/// a warning: the type is only locally constant on an open dense set.
#[derive(Clone, Debug)]
pub struct GridClassification {
    pub samples: Vec<HType>,
    pub warnings: Vec<String>,
}

fn grid_points(base: &[Rational]) -> Vec<Vec<Rational>> {
    let mut out = vec![base.to_vec()];
    for (num, den) in [(1, 7), (-1, 11), (2, 7), (-2, 11)] {
        for i in 0..base.len() {
            let mut p = base.to_vec();
            p[i] += rat(num, den);
            out.push(p);
        }
        out.push(base.iter().map(|b| b + rat(num, den)).collect());
    }
    out
}

pub fn classify_grid(s: &Structure, an: &StructureAnalysis, base: &[Rational]) -> Result<GridClassification> {
    require_3d(s)?;
    let samples: Vec<HType> = grid_points(base)
        .iter()
        .filter_map(|p| classify_h(s, an, p).ok())
        .take(GRID)
        .collect();
    let Some(first) = samples.first() else {
        return Err(Error::Degenerate("no sample point near the base point is usable".into()));
    };
    let mut warnings = Vec::new();
    if samples.len() < GRID {
        warnings.push(format!("only {} usable sample points", samples.len()));
    }
    for t in &samples[1..] {
        if t.tag != first.tag {
            warnings.push(format!(
                "type changes from {:?} to {:?} at ({})",
                first.tag,
                t.tag,
                t.view().point.join(", ")
            ));
        }
    }
    Ok(GridClassification { samples, warnings })
}

/// Frame tables over the exact or the floating-point ring.
pub enum AnyTables {
    Exact(Tables<Rational>),
    Numeric(Tables<f64>),
}

impl AnyTables {
    pub fn view(&self) -> FrameTables {
        match self {
            AnyTables::Exact(t) => t.view(),
            AnyTables::Numeric(t) => t.view(),
        }
    }

    pub fn checks(&self) -> &[Check] {
        match self {
            AnyTables::Exact(t) => &t.checks,
            AnyTables::Numeric(t) => &t.checks,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, AnyTables::Exact(_))
    }
}

/// Builds the adapted frame and checks the lemma table for `tag`, exactly
/// when every square root is rational.
pub fn verify_frame_tables(s: &Structure, an: &StructureAnalysis, c: &Curvature, ht: &HType) -> Result<AnyTables> {
    require_3d(s)?;
    if !an.alpha_constant() {
        return Err(Error::Precondition("requires α = const".into()));
    }
    let exact = Env::<Rational>::new(s, an, c, &ht.point).and_then(|env| frame::tables(&env, ht.tag));
    match exact {
        Ok(t) => Ok(AnyTables::Exact(t)),
        Err(_) => {
            let env = Env::<f64>::new(s, an, c, &ht.point)?;
            Ok(AnyTables::Numeric(frame::tables(&env, ht.tag)?))
        }
    }
}

/// `(∇_ξ h)` as an operator.
fn nabla_xi_h(s: &Structure, h: &Field) -> Field {
    let nh = s.conn.covariant_derivative(h);
    let ctx = &s.ctx;
    TensorField::from_fn(ctx, 1, 1, |ix| {
        (0..s.dim()).fold(ScalarField::zero(ctx), |acc, k| {
            &acc + &(s.xi.at(k) * nh.at3(ix[0], k, ix[1]))
        })
    })
}

/// Closed form of the Ricci operator for the type, with `λ²` taken from
/// `det(h|ker η)`. The frame terms `σ(e)η⊗e` are written frame-free as
/// `η ⊗ (Qξ − S(ξ,ξ)ξ)`.
pub fn ricci_closed_form(s: &Structure, an: &StructureAnalysis, c: &Curvature, tag: HTag) -> Field {
    let ctx = &s.ctx;
    let e2 = e2_field(&an.h);
    let half_r = c.scalar.scale(&rat(1, 2));
    let a2 = &an.alpha * &an.alpha;
    let (a, b) = match tag {
        HTag::H1 => {
            let l2 = -&e2;
            (&(&half_r + &a2) - &l2, &(&l2 - &a2).scale(&int(3)) - &half_r)
        }
        HTag::H3 => {
            let l2 = e2;
            (&(&half_r + &a2) + &l2, &(&l2 + &a2).scale(&int(-3)) - &half_r)
        }
        HTag::H2 | HTag::Zero => (&half_r + &a2, &a2.scale(&int(-3)) - &half_r),
    };
    let qxi = apply(&c.q, &s.xi);
    let qxi_d = qxi.sub(&scalar_mul(&s.xi, &pair(&s.eta, &qxi)));
    scalar_mul(&TensorField::identity(ctx), &a)
        .add(&scalar_mul(&outer(&s.xi, &s.eta), &b))
        .sub(&scalar_mul(&an.phi_h(s), &an.alpha.scale(&int(2))))
        .sub(&compose(&s.phi, &nabla_xi_h(s, &an.h)))
        .add(&outer(&s.xi, &c.sigma))
        .add(&outer(&qxi_d, &s.eta))
}

pub fn verify_ricci_formula(s: &Structure, an: &StructureAnalysis, c: &Curvature, tag: HTag) -> Check {
    const NAME: &str = "ricci_operator_formula";
    if s.dim() != 3 {
        return Check::skipped(NAME, "dimension 3 only");
    }
    if !an.alpha_constant() {
        return Check::skipped(NAME, "requires α = const");
    }
    Check::residual(NAME, &c.q.sub(&ricci_closed_form(s, an, c, tag)))
}

fn value_at<C: JetCoeff>(f: &ScalarField, point: &[Rational]) -> Result<C> {
    let space = JetSpace::new(point.to_vec(), 0);
    Ok(Jet::<C>::from_field(&space, f)?.value().clone())
}

/// Compares the fitted parameters with the case formulas built from the
/// frame coefficients.
fn case_formula<C: JetCoeff>(t: &Tables<C>, tag: HTag, fit: &NullityFit, point: &[Rational]) -> Result<Check> {
    const NAME: &str = "case_formula";
    let exact = std::any::TypeId::of::<C>() == std::any::TypeId::of::<Rational>();
    let near = |x: &C| if exact { x.is_zero() } else { x.to_f64().abs() <= frame::TOL };
    let get = |f: &Option<ScalarField>| -> Result<C> {
        match f {
            Some(f) => value_at::<C>(f, point),
            None => Ok(C::zero()),
        }
    };
    let al = &t.alpha;
    let a2 = al.mul(al);
    let two = C::from_rational(&int(2));
    let kappa = get(&fit.kappa)?;
    let mut residuals: Vec<(&str, C)> = vec![];
    let nu_of = |l: &C| -> Result<C> {
        let xl = t.xi_lambda.clone().expect("set with λ");
        Ok(two.mul(al).add(&xl.mul(&l.inv().ok_or(Error::DivisionByZero)?)).neg())
    };
    let coeff = |n: &str| t.coefficient(n).cloned().expect("table coefficient");
    match tag {
        HTag::Zero => residuals.push(("kappa", kappa.add(&a2))),
        HTag::H1 | HTag::H3 => {
            let l = t.lambda().expect("λ is set for this type");
            let l2 = l.mul(&l);
            let (k, a) = if tag == HTag::H1 {
                (l2.sub(&a2), coeff("a1"))
            } else {
                (l2.add(&a2).neg(), coeff("a3"))
            };
            residuals.push(("kappa", kappa.sub(&k)));
            residuals.push(("mu", get(&fit.mu)?.add(&two.mul(&a))));
            residuals.push(("nu", get(&fit.nu)?.sub(&nu_of(&l)?)));
        }
        HTag::H2 => {
            // μh + νφh = (μ − sν)h since φh = −s h
            let s = C::from_rational(&int(i64::from(t.frame_phi_sign())));
            let combined = get(&fit.mu)?.sub(&s.mul(&get(&fit.nu)?));
            let formula = two.mul(&s).mul(&al.sub(&coeff("a2")));
            residuals.push(("kappa", kappa.add(&a2)));
            residuals.push(("mu_minus_s_nu", combined.sub(&formula)));
        }
    }
    Ok(match residuals.iter().find(|(_, r)| !near(r)) {
        None => Check::pass(NAME),
        Some((n, r)) => Check::fail(
            NAME,
            Some(Witness {
                index: vec![],
                value: render_c(r),
            }),
        )
        .with_note(format!("{n} differs from the frame formula")),
    })
}

/// ξ harmonic ⟺ (κ,μ,ν)-nullity, plus the case formulas where harmonic.
pub fn harmonic_nullity_equivalence(
    curv: &CurvatureReport,
    fit: &NullityFit,
    tag: HTag,
    tables: Option<&AnyTables>,
    point: &[Rational],
) -> Vec<Check> {
    let mut out = vec![Check::from_bool("harmonic_iff_nullity", curv.harmonic == fit.is_nullity()).with_note(
        format!("harmonic = {}, nullity = {}", curv.harmonic, fit.is_nullity()),
    )];
    if !(curv.harmonic && fit.is_nullity()) {
        return out;
    }
    let case = match tables {
        Some(AnyTables::Exact(t)) => case_formula(t, tag, fit, point),
        Some(AnyTables::Numeric(t)) => case_formula(t, tag, fit, point),
        None => Ok(Check::skipped("case_formula", "no frame tables")),
    };
    out.push(case.unwrap_or_else(|e| Check::fail("case_formula", None).with_note(e.to_string())));
    out
}

/// Tag and `λ²` at a point are preserved by a D-homothetic deformation,
/// with `λ̃² = λ²/β²`.
pub fn classification_invariance(
    s: &Structure,
    an: &StructureAnalysis,
    st: &Structure,
    ant: &StructureAnalysis,
    beta: &ScalarField,
    point: &[Rational],
) -> Result<Check> {
    const NAME: &str = "classification_invariant_under_deformation";
    let (a, b) = (classify_h(s, an, point)?, classify_h(st, ant, point)?);
    let bv = beta.eval_with_generators(point)?;
    let scaled = a.lambda2.as_ref().map(|l| l / (&bv * &bv));
    Ok(if a.tag == b.tag && scaled == b.lambda2 {
        Check::pass(NAME)
    } else {
        Check::fail(NAME, None).with_note(format!("{:?} became {:?}", a.tag, b.tag))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub htype: HTypeView,
    pub grid: Vec<HTypeView>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame: Option<FrameTables>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame_error: Option<String>,
    pub checks: Vec<Check>,
}

pub fn analyze_classification(
    s: &Structure,
    an: &StructureAnalysis,
    curv: &CurvatureReport,
    fit: &NullityFit,
    point: &[Rational],
) -> Result<ClassificationReport> {
    let grid = classify_grid(s, an, point)?;
    let ht = classify_h(s, an, point)?;
    let c = &curv.curvature;
    let tables = verify_frame_tables(s, an, c, &ht);
    let mut checks = vec![verify_ricci_formula(s, an, c, ht.tag)];
    if let Ok(t) = &tables {
        checks.extend(t.checks().iter().cloned());
    }
    if an.alpha_constant() {
        checks.extend(harmonic_nullity_equivalence(curv, fit, ht.tag, tables.as_ref().ok(), point));
    } else {
        checks.push(Check::skipped("harmonic_iff_nullity", "requires α = const"));
    }
    Ok(ClassificationReport {
        htype: ht.view(),
        grid: grid.samples.iter().map(HType::view).collect(),
        warnings: grid.warnings,
        frame: tables.as_ref().ok().map(AnyTables::view),
        frame_error: tables.err().map(|e| e.to_string()),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::entry;
    use crate::check::all_pass;
    use crate::curvature::analyze_curvature;
    use crate::deformations::{d_homothetic_deform, DParams};
    use crate::nullity::nullity_fit;
    use crate::structure::analyze_structure;

    fn load(name: &str) -> (Structure, StructureAnalysis) {
        let s = Structure::from_definition(&entry(name).unwrap().definition).unwrap();
        let an = analyze_structure(&s).unwrap();
        (s, an)
    }

    #[test]
    fn tags_of_catalog_entries() {
        for (name, tag, l2) in [
            ("example_e", HTag::H1, Some(int(1))),
            ("h1_frame", HTag::H1, Some(int(4))),
            ("h2_frame", HTag::H2, None),
            ("h3_frame", HTag::H3, Some(int(1))),
            ("warped_kenmotsu", HTag::Zero, None),
        ] {
            let (s, an) = load(name);
            let t = classify_h(&s, &an, &s.base_point).unwrap();
            assert_eq!((t.tag, t.lambda2), (tag, l2), "{name}");
        }
    }

    #[test]
    fn frames_are_exact_for_square_lambda() {
        let (s, an) = load("h1_frame");
        let c = crate::curvature::curvature_of(&s);
        let ht = classify_h(&s, &an, &s.base_point).unwrap();
        let t = verify_frame_tables(&s, &an, &c, &ht).unwrap();
        assert!(t.is_exact());
        assert!(all_pass(t.checks()));

        let (s, an) = load("h1_irrational");
        let c = crate::curvature::curvature_of(&s);
        let ht = classify_h(&s, &an, &s.base_point).unwrap();
        let t = verify_frame_tables(&s, &an, &c, &ht).unwrap();
        assert!(!t.is_exact());
        assert!(all_pass(t.checks()));
    }

    #[test]
    fn nilpotent_frame_pattern() {
        let (s, an) = load("h2_frame");
        let c = crate::curvature::curvature_of(&s);
        let ht = classify_h(&s, &an, &s.base_point).unwrap();
        let v = verify_frame_tables(&s, &an, &c, &ht).unwrap().view();
        assert_eq!(v.kind, frame::FrameKind::PseudoOrthonormal);
        assert!(v.phi_sign.is_some() && v.h_sign.is_some());
        assert!(all_pass(&v.checks));
    }

    #[test]
    fn ricci_formula_and_negative_control() {
        for name in ["example_e", "h2_frame", "h3_frame", "warped_kenmotsu", "flat_product"] {
            let (s, an) = load(name);
            let c = crate::curvature::curvature_of(&s);
            let tag = classify_h(&s, &an, &s.base_point).unwrap().tag;
            assert!(verify_ricci_formula(&s, &an, &c, tag).passed(), "{name}");
        }
        let (s, an) = load("perturbed_metric");
        let c = crate::curvature::curvature_of(&s);
        let tag = classify_h(&s, &an, &s.base_point).unwrap().tag;
        let check = verify_ricci_formula(&s, &an, &c, tag);
        assert!(check.failed() && check.witness.is_some());
    }

    #[test]
    fn harmonicity_matches_nullity() {
        for name in ["example_e", "h1_frame", "h2_frame", "h3_frame", "warped_kenmotsu", "sigma_control"] {
            let (s, an) = load(name);
            let cr = analyze_curvature(&s, &an);
            let fit = nullity_fit(&s, &an, &cr.curvature);
            let rep = analyze_classification(&s, &an, &cr, &fit, &s.base_point).unwrap();
            assert!(all_pass(&rep.checks), "{name}: {:?}", rep.checks);
        }
    }

    #[test]
    fn grid_has_five_points() {
        let (s, an) = load("example_e");
        let g = classify_grid(&s, &an, &s.base_point).unwrap();
        assert_eq!(g.samples.len(), 5);
        assert!(g.warnings.is_empty());
    }

    #[test]
    fn deformation_keeps_the_tag() {
        for name in ["example_e", "h3_frame", "h2_frame"] {
            let (s, an) = load(name);
            let p = DParams::constant(int(3), int(2), &s);
            let st = d_homothetic_deform(&s, &p).unwrap();
            let ant = analyze_structure(&st).unwrap();
            let c = classification_invariance(&s, &an, &st, &ant, &p.beta, &s.base_point).unwrap();
            assert!(c.passed(), "{name}");
        }
    }

    #[test]
    fn five_dimensions_rejected() {
        let (s, an) = load("product5");
        assert!(classify_h(&s, &an, &s.base_point).is_err());
    }
}
