//! JSON documents for the `compute` and `verify` commands.
//!
//! Every float is written with 17 significant digits, so a document read
//! back reproduces the computed values bit for bit. Non-finite values
//! become `null`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::value::RawValue;

use crate::closed_form::{self, FormulaMode, TripletVariant};
use crate::construct::{self, Case, Configuration, Frame, TangencyType};
use crate::error::Result;
use crate::oracle::{VerificationReport, VerifyStatus};
use crate::triangle::{DerivedQuantities, Triangle};
use crate::Vec2;

pub const SCHEMA_VERSION: u32 = 1;

/// A float serialized as `d.dddddddddddddddde±x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

fn point(p: Vec2) -> [Num; 2] {
    [Num(p.x), Num(p.y)]
}

#[derive(Debug, Clone, Serialize)]
pub struct TriangleDoc {
    pub a: Num,
    pub b: Num,
    pub c: Num,
    #[serde(rename = "A_deg")]
    pub a_deg: Num,
    #[serde(rename = "B_deg")]
    pub b_deg: Num,
    #[serde(rename = "C_deg")]
    pub c_deg: Num,
    pub s: Num,
    pub r: Num,
    #[serde(rename = "rA")]
    pub ra: Num,
    #[serde(rename = "rB")]
    pub rb: Num,
    #[serde(rename = "rC")]
    pub rc: Num,
}

impl TriangleDoc {
    pub fn new(q: &DerivedQuantities) -> TriangleDoc {
        let [a, b, c] = q.triangle.sides();
        let [aa, ab, ac] = q.angles.map(f64::to_degrees);
        TriangleDoc {
            a: Num(a),
            b: Num(b),
            c: Num(c),
            a_deg: Num(aa),
            b_deg: Num(ab),
            c_deg: Num(ac),
            s: Num(q.s),
            r: Num(q.r),
            ra: Num(q.ra()),
            rb: Num(q.rb()),
            rc: Num(q.rc()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TripletDoc {
    pub index: usize,
    pub label: String,
    pub family: &'static str,
    pub case: Case,
    pub r1: Num,
    pub r2: Num,
    pub r3: Num,
    pub centers: [[Num; 2]; 3],
    pub tangent_points: BTreeMap<&'static str, [Num; 2]>,
    pub tangency_types: [TangencyType; 3],
    pub max_residual: Num,
    pub corrected_from_paper: bool,
    pub near_degenerate: bool,
}

impl TripletDoc {
    pub fn new(c: &Configuration) -> TripletDoc {
        TripletDoc {
            index: c.variant.index(),
            label: c.variant.label(),
            family: c.variant.family().name(),
            case: c.case,
            r1: Num(c.radii.r1),
            r2: Num(c.radii.r2),
            r3: Num(c.radii.r3),
            centers: c.centers().map(point),
            tangent_points: c.tangent_points.labeled().into_iter().map(|(l, p)| (l, point(p))).collect(),
            tangency_types: c.tangency_types,
            max_residual: Num(c.max_residual),
            corrected_from_paper: c.radii.corrected_from_paper,
            near_degenerate: c.near_degenerate,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComputeDocument {
    pub schema: u32,
    pub triangle: TriangleDoc,
    pub triplets: Vec<TripletDoc>,
}

/// Best placement of every selected variant, in index order.
pub fn configurations(t: &Triangle, variants: &[TripletVariant], mode: FormulaMode) -> Vec<Configuration> {
    let q = t.derive();
    let ang = q.auxiliary_angles();
    let frame = Frame::canonical(t);
    let mut vs = variants.to_vec();
    vs.sort();
    vs.dedup();
    vs.into_iter()
        .map(|v| construct::best_placement(&frame, &closed_form::radii_for_variant_with(&q, &ang, v, mode)))
        .collect()
}

pub fn compute_document(t: &Triangle, variants: &[TripletVariant], mode: FormulaMode) -> ComputeDocument {
    ComputeDocument {
        schema: SCHEMA_VERSION,
        triangle: TriangleDoc::new(&t.derive()),
        triplets: configurations(t, variants, mode).iter().map(TripletDoc::new).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDoc {
    pub index: usize,
    pub label: String,
    pub family: &'static str,
    pub case: Case,
    pub status: VerifyStatus,
    pub closed_form: [Num; 3],
    pub oracle: [Num; 3],
    pub max_radius_rel_error: Num,
    pub verbatim_rel_error: Num,
    pub max_geometric_residual: Num,
    pub tangency_types: [TangencyType; 3],
    pub corrected_from_paper: bool,
}

impl ReportDoc {
    pub fn new(r: &VerificationReport) -> ReportDoc {
        ReportDoc {
            index: r.variant.index(),
            label: r.variant.label(),
            family: r.variant.family().name(),
            case: r.case,
            status: r.status,
            closed_form: r.closed_form_radii.radii().map(Num),
            oracle: r.oracle_radii.radii().map(Num),
            max_radius_rel_error: Num(r.max_radius_rel_error),
            verbatim_rel_error: Num(r.verbatim_rel_error),
            max_geometric_residual: Num(r.max_geometric_residual),
            tangency_types: r.tangency_types,
            corrected_from_paper: r.closed_form_radii.corrected_from_paper,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    #[serde(rename = "match")]
    pub matched: usize,
    pub corrected: usize,
    pub fail: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                VerifyStatus::Match => s.matched += 1,
                VerifyStatus::Corrected => s.corrected += 1,
                VerifyStatus::Fail => s.fail += 1,
            }
        }
        s
    }

    /// `32 reports: 30 match, 2 corrected, 0 fail`
    pub fn line(&self) -> String {
        format!(
            "{} reports: {} match, {} corrected, {} fail",
            self.matched + self.corrected + self.fail,
            self.matched,
            self.corrected,
            self.fail
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyDocument {
    pub schema: u32,
    pub triangle: TriangleDoc,
    pub paper_verbatim: bool,
    pub tolerance: Num,
    pub reports: Vec<ReportDoc>,
    pub summary: Summary,
}

pub fn verify_document(t: &Triangle, reports: &[VerificationReport], mode: FormulaMode, tolerance: f64) -> VerifyDocument {
    VerifyDocument {
        schema: SCHEMA_VERSION,
        triangle: TriangleDoc::new(&t.derive()),
        paper_verbatim: mode == FormulaMode::PaperVerbatim,
        tolerance: Num(tolerance),
        reports: reports.iter().map(ReportDoc::new).collect(),
        summary: Summary::of(reports),
    }
}

/// Pretty-printed JSON followed by a newline.
pub fn to_json<T: Serialize>(doc: &T) -> Result<String, serde_json::Error> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}
