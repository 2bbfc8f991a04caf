//! Structured and human-readable reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::assemble::{Counts, RankTable, TorsionBracket, TorsionSource, VerificationReport};
use crate::exactlin::AbelianGroup;
use crate::pipeline::{OracleSummary, Run};
use crate::skgroups::S3Status;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub config_hash: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct D1Summary {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub cokernel: AbelianGroup,
    pub kernel_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub lattice_type: String,
    pub provenance: Provenance,
    pub group_order: usize,
    pub counts: Counts,
    pub d1: D1Summary,
    /// Correction term in `H_2(A)`.
    pub f: i64,
    #[serde(rename = "homology_A")]
    pub homology_a: Vec<AbelianGroup>,
    /// `S_0..S_3`; `S_3` is null when its bounds do not meet.
    #[serde(rename = "S")]
    pub s: Vec<Option<AbelianGroup>>,
    pub s3_lower_quotient: AbelianGroup,
    #[serde(rename = "H")]
    pub h: Vec<AbelianGroup>,
    pub chi: i64,
    pub chi_betti: i64,
    pub s3_status: S3Status,
    pub h3_torsion_bracket: Option<TorsionBracket>,
    pub torsion_sources: Vec<TorsionSource>,
    pub rank_table: RankTable,
    pub warnings: Vec<String>,
    pub verification: Vec<VerificationReport>,
    pub oracle: Option<OracleSummary>,
}

impl Report {
    pub fn from_run(run: &Run) -> Self {
        let r = &run.computation.result;
        let ha = &r.homology_a;
        Report {
            name: run.config.name.clone(),
            lattice_type: run.config.lattice_type.to_string(),
            provenance: Provenance {
                tool: env!("CARGO_PKG_NAME").to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                config_hash: run.config.hash(),
            },
            group_order: run.group.order(),
            counts: r.counts.clone(),
            d1: D1Summary {
                rows: ha.d1_shape.0,
                cols: ha.d1_shape.1,
                rank: ha.d1_rank,
                cokernel: ha.coker_d1.clone(),
                kernel_rank: ha.ker_d1_rank,
            },
            f: ha.f,
            homology_a: ha.h.clone(),
            s: r.s.clone(),
            s3_lower_quotient: r.s3_lower_quotient.clone(),
            h: r.h.clone(),
            chi: r.chi,
            chi_betti: r.chi_betti,
            s3_status: r.s3_status,
            h3_torsion_bracket: r.h3_torsion_bracket.clone(),
            torsion_sources: r.torsion_sources.clone(),
            rank_table: r.rank_table.clone(),
            warnings: r.warnings.clone(),
            verification: run.verification.clone(),
            oracle: run.oracle.clone(),
        }
    }

    /// True when every requested check passed.
    pub fn verified(&self) -> bool {
        self.verification.iter().all(VerificationReport::passed)
            && self.oracle.as_ref().is_none_or(OracleSummary::passed)
    }

    /// 0 on a determinate, verified result; 4 if `S_3` is indeterminate;
    /// 5 if a verification check failed.
    pub fn exit_code(&self) -> i32 {
        if !self.verified() {
            5
        } else if self.s3_status == S3Status::Indeterminate {
            4
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let c = &self.counts;
        let _ = writeln!(out, "{} (lattice {})", self.name, self.lattice_type);
        let _ = writeln!(
            out,
            "  {} {}  config {}",
            self.provenance.tool, self.provenance.version, self.provenance.config_hash
        );
        let _ = writeln!(out, "  symmetry group order {}", self.group_order);
        let _ = writeln!(out, "  L2 = {}  L1 = {}  L0 = {}", c.l2, c.l1, c.l0);
        let _ = writeln!(
            out,
            "  sum L1^a = {}  sum L0^a = {}  sum L0^t = {}",
            c.l1_alpha_total, c.l0_alpha_total, c.l0_theta_total
        );
        let _ = writeln!(
            out,
            "  d1: {}x{}, rank {}, coker {}, ker rank {}",
            self.d1.rows, self.d1.cols, self.d1.rank, self.d1.cokernel, self.d1.kernel_rank
        );
        let _ = writeln!(out, "  f = {}", self.f);
        for (k, g) in self.homology_a.iter().enumerate() {
            let _ = writeln!(out, "  H_{k}(A) = {g}");
        }
        for (k, g) in self.s.iter().enumerate() {
            match g {
                Some(g) => {
                    let _ = writeln!(out, "  S_{k} = {g}");
                }
                None => {
                    let _ = writeln!(out, "  S_{k} undetermined, quotient by lower bound {}", self.s3_lower_quotient);
                }
            }
        }
        let _ = writeln!(out, "  S_3 status: {}", self.s3_status);
        for (k, g) in self.h.iter().enumerate() {
            let _ = writeln!(out, "  H^{k} = {g}");
        }
        if let Some(b) = &self.h3_torsion_bracket {
            let _ = writeln!(
                out,
                "  H^3 torsion between {} (upper bound for the image) and {} (lower bound)",
                b.assuming_upper_bound, b.assuming_lower_bound
            );
        }
        let _ = writeln!(out, "  chi = {}  (alternating rank sum {})", self.chi, self.chi_betti);
        for (p, ranks) in &self.rank_table.mod_p {
            let _ = writeln!(out, "  dim H^k(F_{p}) = {ranks:?}");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "  warning: {w}");
        }
        for v in &self.verification {
            let passed = v.identities.iter().filter(|i| i.passed).count();
            let _ = writeln!(out, "  p = {}: {}/{} identities hold", v.prime, passed, v.identities.len());
            for i in v.identities.iter().filter(|i| !i.passed) {
                let _ = writeln!(out, "    FAILED {}: expected {}, found {}", i.name, i.expected, i.found);
            }
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(
                out,
                "  oracle: {} pairs, {} agree, {} skipped (cap {}), {} disagree",
                o.sampled,
                o.agreed,
                o.skipped,
                o.denominator_cap,
                o.disagreements.len()
            );
        }
        out
    }
}
