//! The isotopy classification report and its JSON and text renderings.
//!
//! Verdicts are evidential. Floer cohomology can prove that two tori are not
//! Hamiltonian (or, in the fiber sum, symplectically) isotopic; the
//! monodromy only exhibits isotopies. Every `no` or `yes` carries its
//! witness and every non-verdict its reason.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::floer::{CollapseProvenance, FiberSumRecord, FloerGroup, ObstructionCertificate};
use crate::linalg::IntMatrix;
use crate::maslov::ParityCertificate;
use crate::monodromy::{LinkFactor, OrbitRelation, Order};
use crate::novikov::GradedModule;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IsotopyReport {
    pub schema_version: u32,
    pub link: LinkSummary,
    /// `interior` or `fiber_sum`.
    pub ambient: String,
    pub fiber_sum_records: Vec<FiberSumRecord>,
    pub lambda_star: String,
    pub bound: u64,
    pub curves: Vec<CurveSummary>,
    pub parity: Option<ParityCertificate>,
    pub pairs: Vec<PairReport>,
    pub warnings: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LinkSummary {
    pub factors: Vec<LinkFactor>,
    pub meridian_count: usize,
    pub fiber_genus: usize,
    pub monodromy: IntMatrix,
    pub order: Order,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CurveSummary {
    pub name: String,
    pub class: Vec<i64>,
}

/// Verdicts for the ordered pair `(first, second)`.
///
/// `hf_self_first`, `hf_pair` and `hamiltonian_isotopic` refer to the
/// product `S^1 x M_L`; the fiber-sum groups appear as the witness of
/// `symplectic_isotopy_fibersum`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PairReport {
    pub first: String,
    pub second: String,
    pub hf_self_first: HfOutcome,
    pub hf_pair: HfOutcome,
    pub hamiltonian_isotopic: HamiltonianVerdict,
    pub symplectic_isotopy_interior: MonodromyVerdict,
    pub lagrangian_isotopy_fibersum: MonodromyVerdict,
    pub symplectic_isotopy_fibersum: FiberSumSymplecticVerdict,
    pub smooth_isotopy: SmoothVerdict,
    pub certificate: ObstructionCertificate,
    pub fiber_sum_certificate: Option<ObstructionCertificate>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum HfOutcome {
    Computed {
        ranks: GradedModule,
        name: Option<String>,
        provenance: CollapseProvenance,
    },
    Undetermined {
        reason: String,
    },
}

impl HfOutcome {
    pub fn module(&self) -> Option<&GradedModule> {
        match self {
            HfOutcome::Computed { ranks, .. } => Some(ranks),
            HfOutcome::Undetermined { .. } => None,
        }
    }
}

impl From<crate::error::Result<FloerGroup>> for HfOutcome {
    fn from(r: crate::error::Result<FloerGroup>) -> Self {
        match r {
            Ok(g) => HfOutcome::Computed {
                name: g.module.topological_name().map(str::to_owned),
                ranks: g.module,
                provenance: g.provenance,
            },
            Err(e) => HfOutcome::Undetermined {
                reason: e.to_string(),
            },
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HfWitness {
    pub hf_pair: GradedModule,
    pub hf_self: GradedModule,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HamiltonianVerdict {
    No { witness: HfWitness },
    Inconclusive { reason: String },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MonodromyVerdict {
    YesViaMonodromy {
        relations: Vec<OrbitRelation>,
        monodromy_order: Option<u64>,
    },
    NoEvidence {
        reason: String,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FiberSumSymplecticVerdict {
    No {
        parity: ParityCertificate,
        witness: HfWitness,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SmoothVerdict {
    EvidenceViaOrbit { k: u64, sign: i8 },
    NoEvidence { reason: String },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReportFormat {
    Json,
    Text,
}

/// Renders the report. JSON output has sorted keys and a trailing newline,
/// so identical reports give identical bytes.
pub fn emit_report(r: &IsotopyReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => to_stable_json(r).into_bytes(),
        ReportFormat::Text => render_text(r).into_bytes(),
    }
}

/// Pretty JSON with keys sorted at every level, newline-terminated.
pub fn to_stable_json<T: Serialize>(value: &T) -> String {
    // serde_json::Value keeps object keys in a BTreeMap
    let value = serde_json::to_value(value).expect("report types serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
    s.push('\n');
    s
}

pub fn parse_report(json: &str) -> serde_json::Result<IsotopyReport> {
    serde_json::from_str(json)
}

fn describe_hf(h: &HfOutcome) -> String {
    match h {
        HfOutcome::Computed { ranks, .. } => ranks.to_string(),
        HfOutcome::Undetermined { reason } => format!("undetermined ({reason})"),
    }
}

fn relations(rs: &[OrbitRelation]) -> String {
    rs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_text(r: &IsotopyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "isotopy report (schema {})", r.schema_version);
    let _ = writeln!(
        out,
        "link: {} factor(s), {} meridian(s), fiber genus {}",
        r.link.factors.len(),
        r.link.meridian_count,
        r.link.fiber_genus
    );
    let _ = write!(out, "monodromy:\n{}", indent(&r.link.monodromy.to_string()));
    let _ = writeln!(
        out,
        "monodromy order: {}",
        match r.link.order {
            Order::Finite(k) => k.to_string(),
            Order::ExceedsBound => format!("> {}", r.bound),
        }
    );
    let _ = writeln!(out, "ambient: {}   lambda*: {}", r.ambient, r.lambda_star);
    for c in &r.curves {
        let _ = writeln!(out, "  curve {:<8} {:?}", c.name, c.class);
    }
    if let Some(p) = &r.parity {
        let _ = writeln!(
            out,
            "Maslov parity: {:?} (disc indices {}, {}; c1 even: {})",
            p.verdict, p.basis_indices[0], p.basis_indices[1], p.c1_even
        );
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    for p in &r.pairs {
        let _ = writeln!(out);
        let _ = writeln!(out, "pair ({}, {})", p.first, p.second);
        let rows: Vec<(String, String)> = vec![
            (
                format!("HF({0},{0})", p.first),
                describe_hf(&p.hf_self_first),
            ),
            (
                format!("HF({},{})", p.first, p.second),
                describe_hf(&p.hf_pair),
            ),
            (
                "Hamiltonian isotopic in S^1 x M_L".into(),
                match &p.hamiltonian_isotopic {
                    HamiltonianVerdict::No { witness } => {
                        format!(
                            "no: HF ranks {} vs {}",
                            fmt_ranks(&witness.hf_pair),
                            fmt_ranks(&witness.hf_self)
                        )
                    }
                    HamiltonianVerdict::Inconclusive { reason } => {
                        format!("inconclusive ({reason})")
                    }
                },
            ),
            (
                "symplectic isotopy in S^1 x M_L".into(),
                describe_monodromy(&p.symplectic_isotopy_interior),
            ),
            (
                "Lagrangian isotopy in X_L".into(),
                describe_monodromy(&p.lagrangian_isotopy_fibersum),
            ),
            (
                "symplectic isotopy in X_L".into(),
                match &p.symplectic_isotopy_fibersum {
                    FiberSumSymplecticVerdict::No { witness, .. } => format!(
                        "no: Maslov class even, HF ranks {} vs {}",
                        fmt_ranks(&witness.hf_pair),
                        fmt_ranks(&witness.hf_self)
                    ),
                    FiberSumSymplecticVerdict::Inconclusive { reason } => {
                        format!("inconclusive ({reason})")
                    }
                },
            ),
            (
                "smooth isotopy".into(),
                match &p.smooth_isotopy {
                    SmoothVerdict::EvidenceViaOrbit { k, sign } => {
                        format!(
                            "evidence: M^{k} {} = {}{}",
                            p.first,
                            if *sign > 0 { "" } else { "-" },
                            p.second
                        )
                    }
                    SmoothVerdict::NoEvidence { reason } => format!("no evidence ({reason})"),
                },
            ),
        ];
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in rows {
            let _ = writeln!(out, "  {k:<width$}  {v}");
        }
    }
    out
}

fn fmt_ranks(m: &GradedModule) -> String {
    let ranks: Vec<String> = m.ranks().iter().map(u64::to_string).collect();
    format!("({})", ranks.join(","))
}

fn describe_monodromy(v: &MonodromyVerdict) -> String {
    match v {
        MonodromyVerdict::YesViaMonodromy { relations: rs, .. } => {
            format!("yes via monodromy, (k, sign) = {}", relations(rs))
        }
        MonodromyVerdict::NoEvidence { reason } => format!("no evidence ({reason})"),
    }
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}\n")).collect()
}
