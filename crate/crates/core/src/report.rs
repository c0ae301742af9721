//! The `analyze` pipeline and its JSON / text report.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::autom::{
    analyze_automorphisms, enumerate_coordinate_megaideals, inner_consistency, AutAnalysis,
};
use crate::error::Error;
use crate::format::algebra_to_json;
use crate::lattice::{closure, essential_filter, verify_with_derivations, ClosureOptions, MegaidealLattice};
use crate::lie::{format_subspace, LieAlgebra, SeriesReport};
use crate::linalg::{Matrix, Subspace};
use crate::Rational;

pub const TOOL_NAME: &str = "megaideal";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub closure: ClosureOptions,
    pub max_enum_dim: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            closure: ClosureOptions::default(),
            max_enum_dim: 16,
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct JacobiEntry {
    pub indices: [usize; 3],
    pub component: usize,
    pub value: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct ValidationSection {
    pub valid: bool,
    pub antisymmetry_violations: Vec<[usize; 3]>,
    pub jacobi_residuals: Vec<JacobiEntry>,
}

#[derive(Serialize, Clone, Debug)]
pub struct SubspaceEntry {
    pub dim: usize,
    pub span: String,
    pub basis: Vec<Vec<String>>,
}

#[derive(Serialize, Clone, Debug)]
pub struct SeriesSection {
    pub kind: String,
    pub stabilized: bool,
    pub terms: Vec<SubspaceEntry>,
}

#[derive(Serialize, Clone, Debug)]
pub struct VerdictEntry {
    pub ideal: bool,
    pub derivation_invariant: bool,
    pub notes: Vec<String>,
}

#[derive(Serialize, Clone, Debug)]
pub struct MemberEntry {
    #[serde(flatten)]
    pub subspace: SubspaceEntry,
    pub provenance: String,
    pub aliases: Vec<String>,
    pub essential: bool,
    pub verdict: VerdictEntry,
}

#[derive(Serialize, Clone, Debug)]
pub struct LatticeSection {
    pub passes: usize,
    pub fixpoint: bool,
    pub members: Vec<MemberEntry>,
}

#[derive(Serialize, Clone, Debug)]
pub struct AdaptedBasisSection {
    pub identity: bool,
    pub change_of_basis: Vec<Vec<String>>,
    pub flag: Vec<SubspaceEntry>,
    pub block_sizes: Vec<usize>,
    pub extra_constraints: Vec<Vec<usize>>,
}

#[derive(Serialize, Clone, Debug)]
pub struct AssignmentEntry {
    pub unknown: String,
    pub value: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct InnerEntry {
    pub element: String,
    pub t: String,
    pub matched: bool,
    pub detail: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct InnerSection {
    pub consistent: bool,
    pub checks: Vec<InnerEntry>,
    pub skipped: Vec<String>,
}

#[derive(Serialize, Clone, Debug)]
pub struct AutomorphismSection {
    pub adapted_basis: AdaptedBasisSection,
    pub shape: Vec<String>,
    pub unknowns: Vec<String>,
    pub equations: Vec<String>,
    pub assignments: Vec<AssignmentEntry>,
    pub free_parameters: Vec<String>,
    pub residual_equations: Vec<String>,
    pub side_conditions: Vec<String>,
    pub symbolic_determinants: Vec<Vec<usize>>,
    pub audit: Vec<String>,
    pub inconsistent: bool,
    pub invariant_coordinate_subspaces: Option<Vec<SubspaceEntry>>,
    pub inner_consistency: InnerSection,
}

#[derive(Serialize, Clone, Debug)]
pub struct Issue {
    pub kind: String,
    pub message: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct AnalysisReport {
    pub tool: ToolInfo,
    pub input_sha256: String,
    pub algebra: Value,
    pub validation: ValidationSection,
    pub series: Vec<SeriesSection>,
    pub lattice: Option<LatticeSection>,
    pub automorphisms: Option<AutomorphismSection>,
    pub issues: Vec<Issue>,
    /// 0 complete, 1 invalid algebra, 3 incomplete analysis.
    pub exit_code: i32,
}

fn rat(x: &Rational) -> String {
    x.to_string()
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    m.row_vectors().map(|r| r.iter().map(rat).collect()).collect()
}

fn subspace_entry(s: &Subspace, names: &[String]) -> SubspaceEntry {
    SubspaceEntry {
        dim: s.dim(),
        span: format_subspace(s, names),
        basis: matrix_rows(s.basis()),
    }
}

fn series_section(s: &SeriesReport, names: &[String]) -> SeriesSection {
    SeriesSection {
        kind: s.kind.as_str().to_string(),
        stabilized: s.stabilized,
        terms: s.terms.iter().map(|t| subspace_entry(t, names)).collect(),
    }
}

pub fn input_digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn lattice_section(g: &LieAlgebra, lattice: &MegaidealLattice) -> LatticeSection {
    let names = g.basis_names();
    let derivations = g.derivations();
    LatticeSection {
        passes: lattice.passes,
        fixpoint: lattice.fixpoint,
        members: lattice
            .members
            .iter()
            .map(|m| {
                let v = verify_with_derivations(g, &m.subspace, &derivations);
                MemberEntry {
                    subspace: subspace_entry(&m.subspace, names),
                    provenance: m.provenance().to_string(),
                    aliases: m.aliases.clone(),
                    essential: m.essential,
                    verdict: VerdictEntry {
                        ideal: v.is_ideal,
                        derivation_invariant: v.is_derivation_invariant,
                        notes: v.notes,
                    },
                }
            })
            .collect(),
    }
}

fn automorphism_section(
    g: &LieAlgebra,
    aut: &AutAnalysis,
    max_enum_dim: usize,
    issues: &mut Vec<Issue>,
) -> AutomorphismSection {
    let names = g.basis_names();
    let p = &aut.parametrization;
    let fmt = |q: &crate::Poly| p.format(q);
    let invariant = match enumerate_coordinate_megaideals(g, p, &aut.basis, max_enum_dim) {
        Ok(list) => Some(list.iter().map(|s| subspace_entry(s, names)).collect()),
        Err(e) => {
            issues.push(issue(&e));
            None
        }
    };
    if p.inconsistent {
        issues.push(Issue {
            kind: "inconsistent_system".into(),
            message: "elimination forced a side condition to vanish".into(),
        });
    }
    let inner = inner_consistency(g, p);
    if !inner.consistent() {
        issues.push(Issue {
            kind: "inner_automorphism_outside_parametrization".into(),
            message: inner
                .checks
                .iter()
                .filter(|c| !c.matched)
                .map(|c| format!("exp({}*ad {}): {}", c.t, c.element, c.detail))
                .collect::<Vec<_>>()
                .join("; "),
        });
    }
    AutomorphismSection {
        adapted_basis: AdaptedBasisSection {
            identity: aut.basis.is_identity(),
            change_of_basis: matrix_rows(&aut.basis.change_of_basis),
            flag: aut.basis.flag.iter().map(|s| subspace_entry(s, names)).collect(),
            block_sizes: aut.basis.block_sizes.clone(),
            extra_constraints: aut.basis.extra_constraints.clone(),
        },
        shape: p.shape.pattern_rows(),
        unknowns: p.unknowns().to_vec(),
        equations: aut.system.equations.iter().map(fmt).collect(),
        assignments: p
            .assignments
            .iter()
            .map(|(u, v)| AssignmentEntry {
                unknown: p.unknowns()[*u].clone(),
                value: fmt(v),
            })
            .collect(),
        free_parameters: p.free_parameter_names().iter().map(|s| s.to_string()).collect(),
        residual_equations: p.residual_equations.iter().map(fmt).collect(),
        side_conditions: p.side_conditions.iter().map(fmt).collect(),
        symbolic_determinants: p.shape.symbolic_determinants.clone(),
        audit: p.audit.clone(),
        inconsistent: p.inconsistent,
        invariant_coordinate_subspaces: invariant,
        inner_consistency: InnerSection {
            consistent: inner.consistent(),
            checks: inner
                .checks
                .iter()
                .map(|c| InnerEntry {
                    element: c.element.clone(),
                    t: rat(&c.t),
                    matched: c.matched,
                    detail: c.detail.clone(),
                })
                .collect(),
            skipped: inner.skipped.clone(),
        },
    }
}

/// Machine-readable kind of an error.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::AmbientMismatch { .. } => "ambient_mismatch",
        Error::LengthMismatch { .. } => "length_mismatch",
        Error::NotAnIdeal(_) => "not_an_ideal",
        Error::NotNilpotent(_) => "not_nilpotent",
        Error::BudgetExceeded { .. } => "budget_exceeded",
        Error::NotClosed { .. } => "not_closed",
        Error::LinearlyDependent { .. } => "linearly_dependent",
        Error::ResidualSystem(_) => "residual_system",
        Error::EnumerationTooLarge { .. } => "enumeration_too_large",
        Error::InvalidAlgebra(_) => "invalid_algebra",
        Error::NotInvertible(_) => "not_invertible",
        Error::Format(_) => "format",
        Error::Parse { .. } => "parse",
        Error::Json { .. } => "json",
    }
}

fn issue(e: &Error) -> Issue {
    Issue {
        kind: error_kind(e).to_string(),
        message: e.to_string(),
    }
}

/// Runs series, closure, essential filter, adapted basis, shape, equations,
/// elimination, coordinate enumeration and the inner-automorphism check.
/// `input` is the raw file text, used only for the digest.
pub fn analyze(g: &LieAlgebra, input: &str, options: AnalyzeOptions) -> AnalysisReport {
    let names = g.basis_names();
    let v = g.validate();
    let validation = ValidationSection {
        valid: v.is_valid(),
        antisymmetry_violations: v.antisymmetry_violations.clone(),
        jacobi_residuals: v
            .jacobi_residuals
            .iter()
            .map(|r| JacobiEntry {
                indices: r.indices,
                component: r.component,
                value: rat(&r.value),
            })
            .collect(),
    };
    let mut report = AnalysisReport {
        tool: ToolInfo {
            name: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
        },
        input_sha256: input_digest(input),
        algebra: serde_json::from_str(&algebra_to_json(g)).expect("own output"),
        validation,
        series: Vec::new(),
        lattice: None,
        automorphisms: None,
        issues: Vec::new(),
        exit_code: 0,
    };
    if !v.is_valid() {
        report.exit_code = 1;
        report.issues.push(Issue {
            kind: "invalid_algebra".into(),
            message: "structure constants fail antisymmetry or the Jacobi identity".into(),
        });
        return report;
    }
    report.series = [
        g.derived_series(),
        g.lower_central_series(),
        g.upper_central_series(),
    ]
    .iter()
    .map(|s| series_section(s, names))
    .collect();

    let lattice = match closure(g, &[], options.closure) {
        Ok(l) => l,
        Err(Error::BudgetExceeded { budget, partial }) => {
            report.issues.push(Issue {
                kind: "budget_exceeded".into(),
                message: format!("no fixpoint after {budget} passes; lattice is partial"),
            });
            *partial
        }
        Err(e) => {
            report.issues.push(issue(&e));
            report.exit_code = 3;
            return report;
        }
    };
    let lattice = essential_filter(&lattice);
    report.lattice = Some(lattice_section(g, &lattice));

    match analyze_automorphisms(g, &lattice) {
        Ok(aut) => {
            let section = automorphism_section(g, &aut, options.max_enum_dim, &mut report.issues);
            report.automorphisms = Some(section);
        }
        Err(e) => report.issues.push(issue(&e)),
    }
    if !report.issues.is_empty() {
        report.exit_code = 3;
    }
    report
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }

    /// Human-readable projection of the report.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        let name = self.algebra["name"].as_str().unwrap_or("");
        line(format!("{} {} :: {}", self.tool.name, self.tool.version, name));
        line(format!("input sha256 {}", self.input_sha256));
        line(format!(
            "valid: {} ({} antisymmetry violations, {} Jacobi residuals)",
            self.validation.valid,
            self.validation.antisymmetry_violations.len(),
            self.validation.jacobi_residuals.len()
        ));
        for s in &self.series {
            let terms: Vec<&str> = s.terms.iter().map(|t| t.span.as_str()).collect();
            let tail = if s.stabilized { " (stabilized)" } else { "" };
            line(format!("{}: {}{}", s.kind, terms.join(" > "), tail));
        }
        if let Some(l) = &self.lattice {
            line(String::new());
            line(format!(
                "lattice: {} members, {} passes, fixpoint {}",
                l.members.len(),
                l.passes,
                l.fixpoint
            ));
            for m in &l.members {
                let flag = if m.essential { "" } else { " [inessential]" };
                line(format!(
                    "  dim {} {}  from {}{}",
                    m.subspace.dim, m.subspace.span, m.provenance, flag
                ));
            }
        }
        if let Some(a) = &self.automorphisms {
            line(String::new());
            let flag: Vec<&str> = a.adapted_basis.flag.iter().map(|s| s.span.as_str()).collect();
            line(format!("flag: {}", flag.join(" < ")));
            if !a.adapted_basis.identity {
                line("change of basis (columns are new basis vectors):".into());
                for r in &a.adapted_basis.change_of_basis {
                    line(format!("  {}", r.join(" ")));
                }
            }
            line("shape:".into());
            for r in &a.shape {
                line(format!("  {r}"));
            }
            line(format!("{} structure equations", a.equations.len()));
            line("assignments:".into());
            for x in &a.assignments {
                line(format!("  {} = {}", x.unknown, x.value));
            }
            line(format!("free parameters: {}", a.free_parameters.join(", ")));
            if !a.side_conditions.is_empty() {
                line(format!("nonzero: {}", a.side_conditions.join(", ")));
            }
            if !a.residual_equations.is_empty() {
                line("residual equations:".into());
                for r in &a.residual_equations {
                    line(format!("  {r} = 0"));
                }
            }
            if let Some(list) = &a.invariant_coordinate_subspaces {
                line("invariant coordinate subspaces:".into());
                for s in list {
                    line(format!("  {}", s.span));
                }
            }
            line(format!(
                "inner automorphisms consistent: {} ({} checks)",
                a.inner_consistency.consistent,
                a.inner_consistency.checks.len()
            ));
        }
        for i in &self.issues {
            line(format!("issue [{}]: {}", i.kind, i.message));
        }
        out
    }
}
