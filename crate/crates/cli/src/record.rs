//! Line-delimited JSON records. Field names are frozen by `docs/schema.md`.

use std::collections::BTreeMap;

use serde::Serialize;

use linkbounds::diagram::{Fixture, LinkDiagram};
use linkbounds::factor::NormVerdict;
use linkbounds::invariants::{AlexanderData, ConwayPoly};
use linkbounds::laurent::LaurentPoly;
use linkbounds::obstructions::ObstructionReport;
use linkbounds::search::{Interval, SearchResult, Status};

pub const SCHEMA_VERSION: u32 = 1;

fn text(p: &LaurentPoly) -> String {
    p.to_string()
}

fn linking_matrix(d: &LinkDiagram) -> Vec<Vec<i64>> {
    let m = d.component_count();
    (0..m)
        .map(|i| (0..m).map(|j| if i == j { 0 } else { d.linking_number(i, j).expect("in range") }).collect())
        .collect()
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantsRecord {
    pub schema_version: u32,
    pub kind: &'static str,
    pub name: String,
    pub file: String,
    pub components: usize,
    pub crossings: usize,
    pub linking_numbers: Vec<Vec<i64>>,
    pub beta: usize,
    pub delta: String,
    pub delta_tor: String,
    pub component_polys: Vec<String>,
    pub conway: Option<String>,
    pub conway_coefficients: Option<Vec<i64>>,
    pub one_variable: Option<String>,
}

impl InvariantsRecord {
    pub fn new(
        file: &str,
        fx: &Fixture,
        a: &AlexanderData,
        polys: &[LaurentPoly],
        conway: Option<(ConwayPoly, LaurentPoly)>,
    ) -> Self {
        let d = &fx.diagram;
        InvariantsRecord {
            schema_version: SCHEMA_VERSION,
            kind: "invariants",
            name: fx.name.clone(),
            file: file.to_string(),
            components: d.component_count(),
            crossings: d.crossing_count(),
            linking_numbers: linking_matrix(d),
            beta: a.beta,
            delta: text(&a.delta),
            delta_tor: text(&a.delta_tor),
            component_polys: polys.iter().map(text).collect(),
            conway: conway.as_ref().map(|(c, _)| c.to_string()),
            conway_coefficients: conway.as_ref().map(|(c, _)| c.0.clone()),
            one_variable: conway.as_ref().map(|(_, p)| text(p)),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictRecord {
    pub is_norm: bool,
    pub witness: Option<String>,
    pub blocking_factors: Vec<String>,
}

impl From<&NormVerdict> for VerdictRecord {
    fn from(v: &NormVerdict) -> Self {
        VerdictRecord {
            is_norm: v.is_norm,
            witness: v.witness.as_ref().map(text),
            blocking_factors: v.blocking_factors.iter().map(text).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExternalRecord {
    pub lower: u32,
    pub upper: Option<u32>,
    pub source: String,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundRecord {
    pub lower: u32,
    pub upper: Option<u32>,
    pub status: Status,
    pub reasons: Vec<String>,
    pub external: Option<ExternalRecord>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchRecord {
    pub mode: &'static str,
    pub goal: &'static str,
    pub found: bool,
    pub sequence: Vec<usize>,
    pub partition: Vec<Vec<usize>>,
    pub depth: usize,
}

impl From<&SearchResult> for SearchRecord {
    fn from(r: &SearchResult) -> Self {
        use linkbounds::search::{Goal, Mode};
        SearchRecord {
            mode: match r.mode {
                Mode::AnyCrossing => "any",
                Mode::InterComponentOnly => "inter",
            },
            goal: match r.goal {
                Goal::TotallySplit => "split",
                Goal::Unlink => "unlink",
            },
            found: r.found,
            sequence: r.sequence.clone(),
            partition: r.result_partition.clone(),
            depth: r.depth,
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ObstructRecord {
    pub schema_version: u32,
    pub kind: &'static str,
    pub name: String,
    pub file: String,
    pub components: usize,
    pub beta: usize,
    pub delta: String,
    pub delta_tor: String,
    pub component_polys: Vec<String>,
    pub parity: u8,
    pub bounds: BTreeMap<String, BoundRecord>,
    pub norm_verdicts: BTreeMap<String, VerdictRecord>,
    pub component_quotient: Option<String>,
    pub search_depth: usize,
    pub searches: Vec<SearchRecord>,
}

impl ObstructRecord {
    pub fn new(
        file: &str,
        fx: &Fixture,
        r: &ObstructionReport,
        intervals: &BTreeMap<linkbounds::diagram::Quantity, Interval>,
        search_depth: usize,
        searches: &[SearchResult],
    ) -> Self {
        let bounds = intervals
            .iter()
            .map(|(q, iv)| {
                let rec = BoundRecord {
                    lower: iv.lower,
                    upper: iv.upper,
                    status: iv.status,
                    reasons: r.bound(*q).reasons.iter().map(|x| x.name().to_string()).collect(),
                    external: fx.external(*q).map(|e| ExternalRecord {
                        lower: e.lower,
                        upper: e.upper,
                        source: e.source.clone(),
                    }),
                };
                (q.name().to_string(), rec)
            })
            .collect();
        ObstructRecord {
            schema_version: SCHEMA_VERSION,
            kind: "obstruct",
            name: fx.name.clone(),
            file: file.to_string(),
            components: r.m,
            beta: r.beta,
            delta: text(&r.delta),
            delta_tor: text(&r.delta_tor),
            component_polys: r.component_polys.iter().map(text).collect(),
            parity: r.parity,
            bounds,
            norm_verdicts: r.norm_verdicts.iter().map(|(k, v)| (k.name().to_string(), v.into())).collect(),
            component_quotient: r.component_quotient.as_ref().and_then(|c| c.quotient.as_ref()).map(text),
            search_depth,
            searches: searches.iter().map(SearchRecord::from).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchOnlyRecord {
    pub schema_version: u32,
    pub kind: &'static str,
    pub name: String,
    pub file: String,
    #[serde(flatten)]
    pub search: SearchRecord,
}
