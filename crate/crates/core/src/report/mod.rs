//! Full analysis pipeline and its machine- and human-readable reports.

mod text;

use serde::Serialize;

pub use self::text::{render_deform_text, render_text, Verbosity};
use crate::catalog;
use crate::check::{all_pass, Check, Status, Witness};
use crate::classification::{analyze_classification, ClassificationReport};
use crate::curvature::{analyze_curvature, ConstantCurvature, RoughLaplacian};
use crate::deformations::{
    composition_check, conformal_deform, d_homothetic_deform, invariant_i0, transform_kmn, verify_conformal_laws,
    verify_deformation_laws, DParams,
};
use crate::error::{Error, Result};
use crate::nullity::{analyze_nullity, NullityFit, NullityStatus};
use crate::parser::{parse_field, ManifoldDefinition};
use crate::structure::{
    analyze_structure, para_kenmotsu_criterion, verify_axioms, AxiomReport, ParaKenmotsuCriterion, Structure,
    StructureAnalysis,
};
use crate::symbolic::{rational_to_f64, render_rational, Rational, ScalarField};

/// Exact value with an optional float rendering for constants.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Value {
    pub exact: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<f64>,
}

impl Value {
    pub fn of(f: &ScalarField) -> Self {
        Value {
            exact: f.render(),
            approx: f.constant_value().map(|q| rational_to_f64(&q)),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    /// Evaluation point for the 3D classification; defaults to the base point.
    pub point: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Structural {
    pub loaded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<AxiomReport>,
    pub is_apc: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaSection {
    pub alpha: Value,
    pub constant: bool,
    /// `dα = fη`.
    pub f: Value,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LeavesSection {
    pub normal: bool,
    pub parakaehler_leaves: bool,
    pub umbilical: bool,
    pub geodesic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub para_kenmotsu: Option<ParaKenmotsuCriterion>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureSection {
    pub scalar_curvature: Value,
    pub harmonic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant_curvature: Option<ConstantCurvature>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rough_laplacian: Option<RoughLaplacian>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NullitySection {
    pub status: NullityStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<Value>,
    pub non_unique: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Triple stated in the literature for a catalog example, with the
    /// outcome of comparing it to the computed one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stated: Option<StatedComparison>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StatedComparison {
    pub stated: [String; 3],
    pub computed: Option<[String; 3]>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Skip {
    pub section: &'static str,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub engine: &'static str,
    pub name: String,
    pub dim: usize,
    pub coords: Vec<String>,
    pub base_point: Vec<String>,
    pub structural: Structural,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<AlphaSection>,
    /// Rows of `h` as rendered components.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<Vec<String>>>,
    pub identities: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leaves: Option<LeavesSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature: Option<CurvatureSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nullity: Option<NullitySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationReport>,
    pub skipped: Vec<Skip>,
}

/// Overall verdict, mapped to process exit codes by the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    /// Not an almost α-paracosymplectic structure, or the axioms fail.
    Structural,
    /// A check backed by a theorem failed.
    CheckFailed,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Structural => 2,
            Outcome::CheckFailed => 3,
        }
    }
}

impl AnalysisReport {
    /// Every check in report order.
    pub fn all_checks(&self) -> Vec<&Check> {
        let mut out: Vec<&Check> = Vec::new();
        if let Some(a) = &self.structural.axioms {
            out.extend(&a.checks);
        }
        if let Some(a) = &self.alpha {
            out.extend(&a.checks);
        }
        out.extend(&self.identities);
        if let Some(l) = &self.leaves {
            out.extend(&l.checks);
        }
        if let Some(c) = &self.curvature {
            out.extend(&c.checks);
        }
        if let Some(n) = &self.nullity {
            out.extend(&n.checks);
        }
        if let Some(c) = &self.classification {
            // frame table checks are already part of `c.checks`
            out.extend(c.checks.iter());
        }
        out
    }

    pub fn outcome(&self) -> Outcome {
        let s = &self.structural;
        if !s.loaded || !s.is_apc || !s.axioms.as_ref().is_some_and(|a| a.ok) {
            return Outcome::Structural;
        }
        if self.all_checks().iter().any(|c| c.status == Status::Fail) {
            Outcome::CheckFailed
        } else {
            Outcome::Pass
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn empty_report(name: String, def: &ManifoldDefinition) -> AnalysisReport {
    AnalysisReport {
        engine: concat!("paraco ", env!("CARGO_PKG_VERSION")),
        name,
        dim: def.dim,
        coords: def.coords.clone(),
        base_point: def.base_point.iter().map(render_rational).collect(),
        structural: Structural {
            loaded: false,
            error: None,
            axioms: None,
            is_apc: false,
        },
        alpha: None,
        h: None,
        identities: Vec::new(),
        leaves: None,
        curvature: None,
        nullity: None,
        classification: None,
        skipped: Vec::new(),
    }
}

fn stated_for(name: &str, fit: &NullityFit) -> Option<StatedComparison> {
    let stated = catalog::entry(name)?.expected.stated_nullity?;
    let stated = stated.map(str::to_string);
    let computed = fit.kmn().map(|k| k.render());
    Some(StatedComparison {
        agree: computed.as_ref() == Some(&stated),
        stated,
        computed,
    })
}

/// Runs the whole pipeline. Structural problems become report entries.
pub fn run_analyze(def: &ManifoldDefinition, opts: &AnalyzeOptions) -> AnalysisReport {
    let name = def.name.clone().unwrap_or_else(|| "unnamed".into());
    match Structure::from_definition(def) {
        Ok(s) => analyze(&s, opts),
        Err(e) => {
            let mut r = empty_report(name, def);
            r.structural.error = Some(e.to_string());
            r
        }
    }
}

/// Pipeline on an already built structure.
pub fn analyze(s: &Structure, opts: &AnalyzeOptions) -> AnalysisReport {
    let def = ManifoldDefinition {
        name: Some(s.name.clone()),
        dim: s.dim(),
        coords: s.ctx.coords().to_vec(),
        base_point: s.base_point.clone(),
        generators: Vec::new(),
        xi: Vec::new(),
        eta: Vec::new(),
        phi: Vec::new(),
        metric: Vec::new(),
        alpha: None,
    };
    let mut r = empty_report(s.name.clone(), &def);
    r.structural.loaded = true;
    r.structural.axioms = Some(verify_axioms(s));
    let an = match analyze_structure(s) {
        Ok(an) => an,
        Err(e) => {
            r.structural.error = Some(e.to_string());
            r.skipped.push(Skip {
                section: "analysis",
                reason: "structure is not almost α-paracosymplectic".into(),
            });
            return r;
        }
    };
    r.structural.is_apc = true;
    fill(&mut r, s, &an, opts);
    r
}

fn fill(r: &mut AnalysisReport, s: &Structure, an: &StructureAnalysis, opts: &AnalyzeOptions) {
    let mut alpha_checks = an.alpha_info.checks.clone();
    alpha_checks.push(Check::from_bool("alpha_extracted", an.alpha_info.is_apc));
    r.alpha = Some(AlphaSection {
        alpha: Value::of(&an.alpha),
        constant: an.alpha_constant(),
        f: Value::of(&an.f),
        checks: alpha_checks,
    });
    let d = s.dim();
    r.h = Some((0..d).map(|i| (0..d).map(|j| an.h.at2(i, j).render()).collect()).collect());
    r.identities = an.identities.clone();
    let mut leaf_checks = an.leaves_checks.clone();
    leaf_checks.extend(an.leaf_form.checks.iter().cloned());
    let pk = para_kenmotsu_criterion(s, an);
    if let Some(p) = &pk {
        leaf_checks.push(Check::from_bool("para_kenmotsu_criterion", p.holds()));
    }
    r.leaves = Some(LeavesSection {
        normal: an.normal,
        parakaehler_leaves: an.parakaehler_leaves,
        umbilical: an.leaf_form.umbilical,
        geodesic: an.leaf_form.geodesic,
        para_kenmotsu: pk,
        checks: leaf_checks,
    });

    let cr = analyze_curvature(s, an);
    r.curvature = Some(CurvatureSection {
        scalar_curvature: Value::of(&cr.curvature.scalar),
        harmonic: cr.harmonic,
        constant_curvature: cr.constant_curvature.clone(),
        rough_laplacian: cr.laplacian.clone(),
        checks: cr.checks.clone(),
    });
    if cr.laplacian.is_none() {
        r.skipped.push(Skip {
            section: "rough_laplacian",
            reason: "requires α = const".into(),
        });
    }

    let nr = analyze_nullity(s, an, &cr.curvature);
    let fit = &nr.fit;
    r.nullity = Some(NullitySection {
        status: fit.status,
        kappa: fit.kappa.as_ref().map(Value::of),
        mu: fit.mu.as_ref().map(Value::of),
        nu: fit.nu.as_ref().map(Value::of),
        non_unique: fit.non_unique,
        witness: fit.witness.clone(),
        stated: stated_for(&s.name, fit),
        checks: nr.checks.clone(),
    });

    if d == 3 {
        let point = opts.point.clone().unwrap_or_else(|| s.base_point.clone());
        match analyze_classification(s, an, &cr, fit, &point) {
            Ok(c) => r.classification = Some(c),
            Err(e) => r.skipped.push(Skip {
                section: "classification",
                reason: e.to_string(),
            }),
        }
    } else {
        r.skipped.push(Skip {
            section: "classification",
            reason: "dimension 3 only".into(),
        });
    }
}

/// Which deformation to apply.
#[derive(Clone, Debug)]
pub enum DeformSpec {
    Homothetic { gamma: Rational, beta: String },
    Conformal { u: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformReport {
    pub kind: &'static str,
    pub parameters: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_tilde: Option<Value>,
    pub laws: Vec<Check>,
    pub source: AnalysisReport,
    pub deformed: AnalysisReport,
}

impl DeformReport {
    pub fn outcome(&self) -> Outcome {
        let worst = [self.source.outcome(), self.deformed.outcome()];
        if worst.contains(&Outcome::Structural) {
            Outcome::Structural
        } else if worst.contains(&Outcome::CheckFailed) || !all_pass(&self.laws) {
            Outcome::CheckFailed
        } else {
            Outcome::Pass
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Compares transformed parameters with the fit of the deformed structure,
/// and checks `I₀` when `μ ≠ 0`.
fn nullity_laws(s: &Structure, an: &StructureAnalysis, st: &Structure, ant: &StructureAnalysis, p: &DParams) -> Vec<Check> {
    let c = crate::curvature::curvature_of(s);
    let ct = crate::curvature::curvature_of(st);
    let fit = crate::nullity::nullity_fit(s, an, &c);
    let fit_t = crate::nullity::nullity_fit(st, ant, &ct);
    let mut out = Vec::new();
    let Some(k) = fit.kmn() else {
        if let (Some(k0), Some(k1)) = (&fit.kappa, &fit_t.kappa) {
            // h = 0: only κ is defined
            let bi = p.beta.recip().ok();
            if let Some(bi) = bi {
                let db = crate::geometry::linalg::pair(&crate::geometry::forms::differential(&p.beta), &s.xi);
                let pred = &(k0 * &(&bi * &bi)) + &(&(&an.alpha * &(&bi * &(&bi * &bi))) * &db);
                out.push(Check::scalar("kappa_transform", &(&pred - k1)));
            }
        } else {
            out.push(Check::skipped("nullity_transform", "source is not a nullity space"));
        }
        return out;
    };
    match (transform_kmn(&k, &an.alpha, &p.beta, s), fit_t.kmn()) {
        (Ok(pred), Some(got)) => {
            let ok = pred == got;
            let c = Check::from_bool("nullity_transform", ok);
            out.push(if ok {
                c
            } else {
                c.with_note(format!("predicted {:?}, fitted {:?}", pred.render(), got.render()))
            });
            if let (Ok(i0), Ok(i1)) = (invariant_i0(&k, &an.alpha), invariant_i0(&got, &ant.alpha)) {
                out.push(Check::scalar("i0_invariant", &(&i0 - &i1)));
            }
        }
        (Err(e), _) => out.push(Check::fail("nullity_transform", None).with_note(e.to_string())),
        (_, None) => out.push(Check::fail("nullity_transform", None).with_note("deformed structure has no exact fit")),
    }
    out
}

/// Analyzes source and deformed structures and verifies the deformation laws.
pub fn run_deform(def: &ManifoldDefinition, spec: &DeformSpec, opts: &AnalyzeOptions) -> Result<DeformReport> {
    let s = Structure::from_definition(def)?;
    let an = analyze_structure(&s)?;
    let source = analyze(&s, opts);
    match spec {
        DeformSpec::Homothetic { gamma, beta } => {
            let beta_f = parse_field(beta, &s.ctx)?;
            let p = DParams {
                gamma: gamma.clone(),
                beta: beta_f,
            };
            let st = d_homothetic_deform(&s, &p)?;
            let ant = analyze_structure(&st)?;
            let c = crate::curvature::curvature_of(&s);
            let ct = crate::curvature::curvature_of(&st);
            let mut laws = verify_deformation_laws(&s, &an, &c, &st, &ant, &ct, &p);
            laws.extend(nullity_laws(&s, &an, &st, &ant, &p));
            if s.dim() == 3 {
                laws.push(crate::classification::classification_invariance(
                    &s,
                    &an,
                    &st,
                    &ant,
                    &p.beta,
                    &s.base_point,
                )?);
            }
            laws.push(composition_check(&s, &p, &p)?);
            Ok(DeformReport {
                kind: "d_homothetic",
                parameters: vec![
                    ("gamma".into(), render_rational(gamma)),
                    ("beta".into(), p.beta.render()),
                ],
                alpha_tilde: Some(Value::of(&ant.alpha)),
                laws,
                deformed: analyze(&st, opts),
                source,
            })
        }
        DeformSpec::Conformal { u } => {
            let u_f = parse_field(u, &s.ctx)?;
            let st = conformal_deform(&s, &an, &u_f)?;
            let ant = analyze_structure(&st).map_err(|e| Error::Precondition(e.to_string()))?;
            Ok(DeformReport {
                kind: "conformal",
                parameters: vec![("u".into(), u_f.render())],
                alpha_tilde: Some(Value::of(&ant.alpha)),
                laws: verify_conformal_laws(&st, &ant),
                deformed: analyze(&st, opts),
                source,
            })
        }
    }
}

/// Whether an error comes from reading input rather than from geometry.
pub fn is_parse_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Syntax { .. }
            | Error::UnknownIdentifier { .. }
            | Error::MissingKey(_)
            | Error::Definition(_)
            | Error::Shape(_)
            | Error::Asymmetric { .. }
    )
}
