//! JSON documents emitted and accepted by the command-line tool.

use cusptri_core::bounds::{BoundsReport, ReportEntry};
use cusptri_core::cusp::CuspCrossSection;
use cusptri_core::search::SphereReport;
use cusptri_core::triangulation::{Defect, ValidationReport};
use cusptri_core::{LogReal, Move, MoveSequence, Signature, VertexKind};
use serde::{Deserialize, Serialize};

/// One move: `{"kind":"2-3","face":[t,f]}`, `{"kind":"3-2","edge":[t,e]}`,
/// `{"kind":"1-4","tet":t}` or `{"kind":"4-1","vertex":[t,v]}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum MoveJson {
    #[serde(rename = "2-3")]
    TwoThree { face: [usize; 2] },
    #[serde(rename = "3-2")]
    ThreeTwo { edge: [usize; 2] },
    #[serde(rename = "1-4")]
    OneFour { tet: usize },
    #[serde(rename = "4-1")]
    FourOne { vertex: [usize; 2] },
}

impl From<Move> for MoveJson {
    fn from(mv: Move) -> Self {
        match mv {
            Move::TwoThree { tet, face } => MoveJson::TwoThree { face: [tet, face] },
            Move::ThreeTwo { tet, edge } => MoveJson::ThreeTwo { edge: [tet, edge] },
            Move::OneFour { tet } => MoveJson::OneFour { tet },
            Move::FourOne { tet, vertex } => MoveJson::FourOne { vertex: [tet, vertex] },
        }
    }
}

impl From<MoveJson> for Move {
    fn from(mv: MoveJson) -> Self {
        match mv {
            MoveJson::TwoThree { face: [tet, face] } => Move::TwoThree { tet, face },
            MoveJson::ThreeTwo { edge: [tet, edge] } => Move::ThreeTwo { tet, edge },
            MoveJson::OneFour { tet } => Move::OneFour { tet },
            MoveJson::FourOne { vertex: [tet, vertex] } => Move::FourOne { tet, vertex },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveSequenceJson {
    pub moves: Vec<MoveJson>,
    pub start: String,
    pub end: String,
}

impl From<&MoveSequence> for MoveSequenceJson {
    fn from(seq: &MoveSequence) -> Self {
        MoveSequenceJson {
            moves: seq.moves.iter().map(|&m| m.into()).collect(),
            start: seq.start.as_str().to_owned(),
            end: seq.end.as_str().to_owned(),
        }
    }
}

impl From<MoveSequenceJson> for MoveSequence {
    fn from(json: MoveSequenceJson) -> Self {
        MoveSequence {
            moves: json.moves.into_iter().map(Move::from).collect(),
            start: Signature::from_rendered(json.start),
            end: Signature::from_rendered(json.end),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexJson {
    pub kind: &'static str,
    pub link_euler: i64,
    pub corners: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationJson {
    pub valid: bool,
    pub closed: bool,
    pub orientable: bool,
    pub connected: bool,
    pub cusp_count: usize,
    pub edge_degrees: Vec<usize>,
    pub vertex_classes: Vec<VertexJson>,
    pub defects: Vec<String>,
}

pub fn kind_name(kind: VertexKind) -> &'static str {
    match kind {
        VertexKind::Ideal => "ideal",
        VertexKind::Material => "material",
    }
}

pub fn describe_defect(defect: &Defect) -> String {
    match defect {
        Defect::UngluedFace { tet, face } => format!("tetrahedron {tet} face {face} is unglued"),
        Defect::Disconnected => "triangulation is disconnected".to_owned(),
        Defect::ReversedEdge { class } => format!("edge class {class} is identified with itself in reverse"),
        Defect::IdealLinkNotFlat { class, euler } => {
            format!("ideal vertex class {class} has link Euler characteristic {euler}")
        }
    }
}

impl From<&ValidationReport> for ValidationJson {
    fn from(r: &ValidationReport) -> Self {
        ValidationJson {
            valid: r.is_valid(),
            closed: r.closed,
            orientable: r.orientable,
            connected: r.connected,
            cusp_count: r.cusp_count,
            edge_degrees: r.edge_degrees.clone(),
            vertex_classes: r
                .vertex_classes
                .iter()
                .map(|v| VertexJson { kind: kind_name(v.kind), link_euler: v.link_euler, corners: v.corners })
                .collect(),
            defects: r.defects.iter().map(describe_defect).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CuspJson {
    pub cusp: usize,
    pub lattice: [f64; 4],
    pub area: f64,
    pub shortest: f64,
    pub edge_lengths: Vec<f64>,
}

impl From<&CuspCrossSection> for CuspJson {
    fn from(c: &CuspCrossSection) -> Self {
        let [u, v] = c.lattice;
        CuspJson {
            cusp: c.cusp,
            lattice: [u.re, u.im, v.re, v.im],
            area: c.area,
            shortest: c.shortest,
            edge_lengths: c.edge_lengths.clone(),
        }
    }
}

/// A bound as `mantissa * 10^exp10`; `value` is null outside the `f64` range.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuantityJson {
    pub mantissa: f64,
    pub exp10: i64,
    pub value: Option<f64>,
}

impl From<LogReal> for QuantityJson {
    fn from(x: LogReal) -> Self {
        let (mantissa, exp10) = x.mantissa_exp10();
        QuantityJson { mantissa, exp10, value: x.to_f64() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundEntryJson {
    pub name: &'static str,
    pub formula: &'static str,
    /// False when the bound is not claimed for these parameters.
    pub applicable: bool,
    #[serde(flatten)]
    pub quantity: Option<QuantityJson>,
}

impl From<&ReportEntry> for BoundEntryJson {
    fn from(e: &ReportEntry) -> Self {
        BoundEntryJson {
            name: e.name,
            formula: e.formula,
            applicable: e.value.is_some(),
            quantity: e.value.map(QuantityJson::from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsJson {
    pub m1: u64,
    pub m2: u64,
    pub m: u64,
    pub theta0: f64,
    pub epsilon: f64,
    pub v_tet: f64,
    pub bounds: Vec<BoundEntryJson>,
}

impl BoundsJson {
    pub fn new(m1: u64, m2: u64, report: &BoundsReport) -> Self {
        BoundsJson {
            m1,
            m2,
            m: report.params.m(),
            theta0: report.params.theta0(),
            epsilon: report.params.epsilon(),
            v_tet: report.params.v_tet(),
            bounds: report.entries().iter().map(BoundEntryJson::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SystoleJson {
    pub m: u64,
    pub theta0: f64,
    pub epsilon: f64,
    pub s0_exact: QuantityJson,
    pub s0_simplified: QuantityJson,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThicknessJson {
    pub theta0: f64,
    pub is_thick: bool,
    pub min_angle: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SphereJson {
    pub radius: usize,
    pub layers: Vec<usize>,
    pub truncated: bool,
}

impl SphereJson {
    pub fn new(radius: usize, report: &SphereReport) -> Self {
        SphereJson { radius, layers: report.layers.clone(), truncated: report.truncated }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn move_schema() {
        let moves = [
            Move::TwoThree { tet: 0, face: 3 },
            Move::ThreeTwo { tet: 1, edge: 5 },
            Move::OneFour { tet: 2 },
            Move::FourOne { tet: 3, vertex: 1 },
        ];
        let json: Vec<MoveJson> = moves.iter().map(|&m| m.into()).collect();
        let text = serde_json::to_string(&json).unwrap();
        assert_eq!(
            text,
            r#"[{"kind":"2-3","face":[0,3]},{"kind":"3-2","edge":[1,5]},{"kind":"1-4","tet":2},{"kind":"4-1","vertex":[3,1]}]"#
        );
        let back: Vec<MoveJson> = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_iter().map(Move::from).collect::<Vec<_>>(), moves);
        assert!(serde_json::from_str::<MoveJson>(r#"{"kind":"2-3","tet":0}"#).is_err());
    }

    #[test]
    fn quantity_out_of_range() {
        let q = QuantityJson::from(LogReal::from_ln(-3000.0));
        assert_eq!(q.value, None);
        assert_eq!(q.exp10, -1303);
        let text = serde_json::to_string(&q).unwrap();
        assert!(text.contains("\"value\":null"));
    }
}
