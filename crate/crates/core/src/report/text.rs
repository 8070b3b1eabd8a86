use std::fmt::Write;

use super::{AnalysisReport, DeformReport, Value};
use crate::check::{Check, Status};

/// How much of a report the text rendering shows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verbosity {
    /// One summary line.
    Quiet,
    /// Sections plus failed and skipped checks.
    Normal,
    /// Every check.
    Verbose,
}

impl Verbosity {
    /// Reads `PARACO_VERBOSITY` (`0|quiet`, `1|normal`, `2|verbose`).
    pub fn from_env() -> Self {
        match std::env::var("PARACO_VERBOSITY").as_deref() {
            Ok("0") | Ok("quiet") => Verbosity::Quiet,
            Ok("2") | Ok("verbose") => Verbosity::Verbose,
            _ => Verbosity::Normal,
        }
    }
}

fn show(v: &Value) -> String {
    match v.approx {
        Some(_) => v.exact.clone(),
        None => format!("{} (non-constant)", v.exact),
    }
}

fn checks(out: &mut String, title: &str, list: &[&Check], verbosity: Verbosity) {
    let failed = list.iter().filter(|c| c.status == Status::Fail).count();
    let skipped = list.iter().filter(|c| c.status == Status::Skipped).count();
    let _ = writeln!(
        out,
        "  {title}: {} checks, {failed} failed, {skipped} skipped",
        list.len()
    );
    for c in list {
        let shown = match c.status {
            Status::Pass => verbosity == Verbosity::Verbose,
            _ => true,
        };
        if !shown {
            continue;
        }
        let tag = match c.status {
            Status::Pass => "ok  ",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        };
        let _ = write!(out, "    [{tag}] {}", c.name);
        if let Some(w) = &c.witness {
            let _ = write!(out, " at {:?}: {}", w.index, w.value);
        }
        if let Some(n) = &c.note {
            let _ = write!(out, " ({n})");
        }
        out.push('\n');
    }
}

fn summary(r: &AnalysisReport) -> String {
    let total = r.all_checks().len();
    let failed = r.all_checks().iter().filter(|c| c.status == Status::Fail).count();
    format!("{}: {:?}, {total} checks, {failed} failed", r.name, r.outcome())
}

pub fn render_text(r: &AnalysisReport, verbosity: Verbosity) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", summary(r));
    if verbosity == Verbosity::Quiet {
        return out;
    }
    let _ = writeln!(out, "  dimension {}, coordinates ({}), base point ({})", r.dim, r.coords.join(", "), r.base_point.join(", "));
    if let Some(e) = &r.structural.error {
        let _ = writeln!(out, "  structure: {e}");
    }
    if let Some(a) = &r.structural.axioms {
        checks(&mut out, "axioms", &a.checks.iter().collect::<Vec<_>>(), verbosity);
    }
    if let Some(a) = &r.alpha {
        let _ = writeln!(out, "  alpha = {}, f = {}", show(&a.alpha), show(&a.f));
        checks(&mut out, "alpha", &a.checks.iter().collect::<Vec<_>>(), verbosity);
    }
    if let Some(h) = &r.h {
        let rows: Vec<String> = h.iter().map(|row| format!("[{}]", row.join(", "))).collect();
        let _ = writeln!(out, "  h = [{}]", rows.join(", "));
    }
    if !r.identities.is_empty() {
        checks(&mut out, "identities", &r.identities.iter().collect::<Vec<_>>(), verbosity);
    }
    if let Some(l) = &r.leaves {
        let _ = writeln!(
            out,
            "  normal = {}, para-Kaehler leaves = {}, umbilical = {}, geodesic = {}",
            l.normal, l.parakaehler_leaves, l.umbilical, l.geodesic
        );
        checks(&mut out, "leaves", &l.checks.iter().collect::<Vec<_>>(), verbosity);
    }
    if let Some(c) = &r.curvature {
        let _ = writeln!(out, "  scalar curvature = {}, xi harmonic = {}", show(&c.scalar_curvature), c.harmonic);
        if let Some(cc) = &c.constant_curvature {
            let _ = writeln!(out, "  constant sectional curvature c = {}", cc.c);
        }
        checks(&mut out, "curvature", &c.checks.iter().collect::<Vec<_>>(), verbosity);
    }
    if let Some(n) = &r.nullity {
        let part = |v: &Option<Value>| v.as_ref().map(show).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "  nullity: {:?} (kappa, mu, nu) = ({}, {}, {}){}",
            n.status,
            part(&n.kappa),
            part(&n.mu),
            part(&n.nu),
            if n.non_unique { ", not unique" } else { "" }
        );
        if let Some(st) = &n.stated {
            let _ = writeln!(
                out,
                "  stated triple ({}) {} the computed one",
                st.stated.join(", "),
                if st.agree { "matches" } else { "differs from" }
            );
        }
        checks(&mut out, "nullity", &n.checks.iter().collect::<Vec<_>>(), verbosity);
    }
    if let Some(c) = &r.classification {
        let l2 = c.htype.lambda2.as_deref().map(|v| format!(", lambda^2 = {v}")).unwrap_or_default();
        let _ = writeln!(out, "  h type {:?}{l2} at ({})", c.htype.tag, c.htype.point.join(", "));
        for w in &c.warnings {
            let _ = writeln!(out, "  warning: {w}");
        }
        if let Some(f) = &c.frame {
            let coeffs: Vec<String> = f.coefficients.iter().map(|(n, v)| format!("{n} = {v}")).collect();
            let _ = writeln!(
                out,
                "  frame {:?} ({}): {}",
                f.kind,
                if f.exact { "exact" } else { "numeric" },
                coeffs.join(", ")
            );
        }
        if let Some(e) = &c.frame_error {
            let _ = writeln!(out, "  frame: {e}");
        }
        checks(&mut out, "classification", &c.checks.iter().collect::<Vec<_>>(), verbosity);
    }
    for s in &r.skipped {
        let _ = writeln!(out, "  skipped {}: {}", s.section, s.reason);
    }
    out
}

pub fn render_deform_text(r: &DeformReport, verbosity: Verbosity) -> String {
    let mut out = String::new();
    let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k} = {v}")).collect();
    let _ = writeln!(out, "{} deformation ({}): {:?}", r.kind, params.join(", "), r.outcome());
    if let Some(a) = &r.alpha_tilde {
        let _ = writeln!(out, "  deformed alpha = {}", show(a));
    }
    checks(&mut out, "laws", &r.laws.iter().collect::<Vec<_>>(), verbosity);
    if verbosity > Verbosity::Quiet {
        out.push_str("source ");
        out.push_str(&render_text(&r.source, verbosity));
        out.push_str("deformed ");
        out.push_str(&render_text(&r.deformed, verbosity));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::entry;
    use crate::report::{run_analyze, AnalyzeOptions};

    #[test]
    fn verbosity_levels() {
        let r = run_analyze(&entry("sigma_control").unwrap().definition, &AnalyzeOptions::default());
        let quiet = render_text(&r, Verbosity::Quiet);
        assert_eq!(quiet.lines().count(), 1);
        assert!(quiet.starts_with("sigma_control: Pass"));
        let normal = render_text(&r, Verbosity::Normal);
        let verbose = render_text(&r, Verbosity::Verbose);
        assert!(normal.contains("xi harmonic = false"));
        assert!(!normal.contains("[ok  ]"));
        assert!(verbose.contains("[ok  ] compatibility"));
    }

    #[test]
    fn failures_show_witnesses() {
        let r = run_analyze(&entry("perturbed_metric").unwrap().definition, &AnalyzeOptions::default());
        let t = render_text(&r, Verbosity::Normal);
        assert!(t.contains("[FAIL] compatibility"));
        assert!(t.contains(" at ["));
    }
}
