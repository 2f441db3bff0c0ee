//! JSON report documents. Rationals are always `"p/q"` strings.

use fanloop::haar::{PropertyOutcome, SuiteReport};
use fanloop::laws::LawReport;
use fanloop::products::{CrossCheckReport, SmashingViolation};
use fanloop::{ElementSet, FiniteLoop, LoopAnalysis, Rational};
use serde::{Deserialize, Serialize};

fn labels(g: &FiniteLoop, s: &ElementSet) -> Vec<String> {
    s.iter().map(|x| g.label(x).to_string()).collect()
}

fn triple(g: &FiniteLoop, (a, b, c): (usize, usize, usize)) -> Vec<String> {
    vec![g.label(a).into(), g.label(b).into(), g.label(c).into()]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub order: usize,
    pub is_loop: bool,
    pub is_group: bool,
    pub is_fan_loop: bool,
    pub is_central_fan_loop: bool,
    pub is_commutative: bool,
    pub left_nucleus: Vec<String>,
    pub middle_nucleus: Vec<String>,
    pub right_nucleus: Vec<String>,
    pub nucleus: Vec<String>,
    pub commutant: Vec<String>,
    pub center: Vec<String>,
    pub fan: Vec<String>,
    pub fan_size: usize,
    pub t_range: Vec<String>,
    pub p_range: Vec<String>,
    pub fan_witness: Option<Vec<String>>,
    pub central_witness: Option<Vec<String>>,
    pub inverse_split: Vec<String>,
}

impl AnalysisReport {
    pub fn new(g: &FiniteLoop, a: &LoopAnalysis) -> Self {
        AnalysisReport {
            order: a.order,
            is_loop: a.is_loop,
            is_group: a.is_group,
            is_fan_loop: a.is_fan_loop,
            is_central_fan_loop: a.is_central_fan_loop,
            is_commutative: g.is_commutative(),
            left_nucleus: labels(g, &a.parts.left),
            middle_nucleus: labels(g, &a.parts.middle),
            right_nucleus: labels(g, &a.parts.right),
            nucleus: labels(g, &a.parts.nucleus),
            commutant: labels(g, &a.parts.commutant),
            center: labels(g, &a.parts.center),
            fan: labels(g, &a.fan),
            fan_size: a.fan.len(),
            t_range: labels(g, &a.t_range),
            p_range: labels(g, &a.p_range),
            fan_witness: a.fan_witness.map(|w| triple(g, w)),
            central_witness: a.central_witness.map(|(x, y)| vec![g.label(x).into(), g.label(y).into()]),
            inverse_split: g.elements().filter(|&x| g.inv_l(x) != g.inv_r(x)).map(|x| g.label(x).to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawEntry {
    pub id: String,
    pub status: String,
    pub tuples_checked: u64,
    pub witness: Option<WitnessEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub assignment: Vec<(String, String)>,
    pub part: usize,
    pub lhs: String,
    pub rhs: Option<String>,
}

impl LawEntry {
    pub fn new(g: &FiniteLoop, r: &LawReport) -> Self {
        LawEntry {
            id: r.law_id.clone(),
            status: r.status.to_string(),
            tuples_checked: r.tuples_checked,
            witness: r.witness.as_ref().map(|w| WitnessEntry {
                assignment: w.assignment.iter().map(|&(v, x)| (v.to_string(), g.label(x).to_string())).collect(),
                part: w.part,
                lhs: g.label(w.lhs).to_string(),
                rhs: w.rhs.map(|x| g.label(x).to_string()),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub analysis: AnalysisReport,
    pub laws: Vec<LawEntry>,
}

pub fn rat(r: &Rational) -> String {
    r.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionValue {
    pub source: String,
    pub value: String,
    pub value_relative_to_second_reference: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HaarReport {
    pub order: usize,
    pub fan: Vec<String>,
    pub reference: String,
    pub second_reference: String,
    pub weights: Vec<(String, String)>,
    pub total_mass: String,
    pub left_invariance_checked: usize,
    pub left_invariant: bool,
    pub reference_independent: bool,
    pub functions: Vec<FunctionValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub equation: String,
    pub message: String,
    pub witness: Vec<(String, String)>,
}

impl From<&SmashingViolation> for ViolationReport {
    fn from(v: &SmashingViolation) -> Self {
        ViolationReport { equation: v.equation.to_string(), message: v.message.clone(), witness: v.witness.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmashReport {
    pub order: usize,
    pub triples_checked: usize,
    pub pairs_checked: usize,
    pub inverses_checked: usize,
    pub fan_within_n: bool,
    pub analysis: AnalysisReport,
}

impl SmashReport {
    pub fn new(g: &FiniteLoop, a: &LoopAnalysis, c: &CrossCheckReport, fan_within_n: bool) -> Self {
        SmashReport {
            order: g.order(),
            triples_checked: c.triples_checked,
            pairs_checked: c.pairs_checked,
            inverses_checked: c.inverses_checked,
            fan_within_n,
            analysis: AnalysisReport::new(g, a),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyEntry {
    pub id: String,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl From<&PropertyOutcome> for PropertyEntry {
    fn from(p: &PropertyOutcome) -> Self {
        PropertyEntry { id: p.id.to_string(), checked: p.checked, failures: p.failures, first_failure: p.first_failure.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropsReport {
    pub seed: u64,
    pub instances: usize,
    pub all_hold: bool,
    pub properties: Vec<PropertyEntry>,
}

impl From<&SuiteReport> for PropsReport {
    fn from(s: &SuiteReport) -> Self {
        PropsReport { seed: s.seed, instances: s.instances, all_hold: s.all_hold(), properties: s.properties.iter().map(Into::into).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationReport>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}
