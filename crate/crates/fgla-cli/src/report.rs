//! Human and machine reports.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use fgla::criteria::Verdict;
use fgla::prolong::{oracle_verdict, DimTable, OracleVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceReport {
    pub matrix_rows: usize,
    pub matrix_cols: usize,
    pub minor_order: usize,
    pub minor_count: usize,
    pub independent_minors: usize,
    pub gb_size: usize,
    /// Least pure power of each restricted variable among the Groebner
    /// leading monomials (`null` = none).
    pub pure_power_degrees: Vec<Option<u32>>,
    /// Variables with no pure power: the directions of escape.
    pub escape_vars: Vec<usize>,
    pub capped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsReport {
    /// `g_{-mu} .. g_{-1}`.
    pub negative: Vec<usize>,
    pub g0: usize,
    /// `g_1 .. g_pmax`.
    pub positive: Vec<usize>,
    pub stabilized_zero: bool,
    pub total: usize,
    /// `finite` or `infinite-up-to-bound`.
    pub oracle: String,
}

impl DimsReport {
    pub fn from_table(t: &DimTable) -> Self {
        DimsReport {
            negative: t.negative.clone(),
            g0: t.g0,
            positive: t.positive.clone(),
            stabilized_zero: t.stabilized_zero,
            total: t.total(),
            oracle: match oracle_verdict(t) {
                OracleVerdict::Finite => "finite".into(),
                OracleVerdict::InfiniteUpToBound => "infinite-up-to-bound".into(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    /// `FINITE` or `INFINITE`.
    pub verdict: String,
    pub finite: bool,
    /// Which formulation decided (or `oracle` in dims-only mode).
    pub route: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<EvidenceReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<DimsReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub timing_ms: u64,
}

impl Report {
    pub fn from_verdict(
        v: &Verdict,
        dims: Option<&DimTable>,
        warnings: Vec<String>,
        timing_ms: u64,
    ) -> Self {
        Report {
            verdict: if v.finite { "FINITE".into() } else { "INFINITE".into() },
            finite: v.finite,
            route: v.route.as_str().into(),
            witness: v
                .witness
                .as_ref()
                .map(|z| z.iter().map(|c| c.to_string()).collect()),
            witness_rank: v.witness_rank,
            evidence: v.evidence.as_ref().map(|e| EvidenceReport {
                matrix_rows: e.matrix_rows,
                matrix_cols: e.matrix_cols,
                minor_order: e.minor_order,
                minor_count: e.minor_count,
                independent_minors: e.independent_minors,
                gb_size: e.gb_size,
                pure_power_degrees: e.pure_power_degrees.clone(),
                escape_vars: e.escape_vars.clone(),
                capped: e.capped,
            }),
            dims: dims.map(DimsReport::from_table),
            warnings,
            timing_ms,
        }
    }

    pub fn from_dims_only(t: &DimTable, warnings: Vec<String>, timing_ms: u64) -> Self {
        let stabilized = t.stabilized_zero;
        Report {
            verdict: if stabilized { "FINITE".into() } else { "INFINITE-UP-TO-BOUND".into() },
            finite: stabilized,
            route: "oracle".into(),
            witness: None,
            witness_rank: None,
            evidence: None,
            dims: Some(DimsReport::from_table(t)),
            warnings,
            timing_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verdict: {}", self.verdict);
        let _ = writeln!(out, "route:   {}", self.route);
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness: z = ({})", w.join(", "));
        }
        if let Some(r) = self.witness_rank {
            let _ = writeln!(out, "rank at witness: {}", r);
        }
        if let Some(e) = &self.evidence {
            let _ = writeln!(
                out,
                "minors:  order {} of a {}x{} matrix; {} generated, {} independent, \
                 groebner basis of size {}{}",
                e.minor_order,
                e.matrix_rows,
                e.matrix_cols,
                e.minor_count,
                e.independent_minors,
                e.gb_size,
                if e.capped { " (column subset)" } else { "" },
            );
            let powers: Vec<String> = e
                .pure_power_degrees
                .iter()
                .enumerate()
                .map(|(i, d)| match d {
                    Some(d) => format!("t{}^{}", i + 1, d),
                    None => format!("t{}: none", i + 1),
                })
                .collect();
            let _ = writeln!(out, "lead-term pure powers: {}", powers.join(", "));
            if !e.escape_vars.is_empty() {
                let dirs: Vec<String> =
                    e.escape_vars.iter().map(|i| format!("t{}", i + 1)).collect();
                let _ = writeln!(out, "escape directions: {}", dirs.join(", "));
            }
        }
        if let Some(d) = &self.dims {
            let _ = writeln!(
                out,
                "dims:    negative {:?}, g0 {}, positive {:?} ({}; total {})",
                d.negative, d.g0, d.positive, d.oracle, d.total
            );
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {}", w);
        }
        let _ = writeln!(out, "time:    {} ms", self.timing_ms);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips() {
        let r = Report {
            verdict: "INFINITE".into(),
            finite: false,
            route: "first-kind".into(),
            witness: Some(vec!["1".into(), "-2/3".into()]),
            witness_rank: Some(1),
            evidence: None,
            dims: Some(DimsReport {
                negative: vec![2],
                g0: 4,
                positive: vec![6, 9],
                stabilized_zero: false,
                total: 21,
                oracle: "infinite-up-to-bound".into(),
            }),
            warnings: vec![],
            timing_ms: 12,
        };
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(r, back);
        assert!(r.to_text().contains("INFINITE"));
    }
}
