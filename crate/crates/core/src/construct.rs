//! Explicit placement of a radius triplet in the plane.
//!
//! Each circle `A'`, `B'`, `C'` touches the two side lines through its
//! vertex, so its center lies on one of the four bisector rays at that vertex.
//! Which ray is encoded by a [`Region`]; a [`Case`] is one of the seven
//! region assignments that can hold three mutually tangent circles.

use std::fmt;

use serde::Serialize;

use crate::closed_form::{Family, RadiiTriplet, TripletVariant};
use crate::error::{Error, Result};
use crate::triangle::{Triangle, Vertex};
use crate::Vec2;

/// Placement is accepted when every pairwise tangency residual is below
/// this fraction of the semiperimeter.
pub const PLACEMENT_TOLERANCE: f64 = 1e-9;

/// Tangent points closer than this fraction of `s` raise `near_degenerate`.
pub const DISTINCTNESS_TOLERANCE: f64 = 1e-6;

/// Vertex coordinates with `B = (0, 0)`, `C = (a, 0)` and `A` above the x axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub triangle: Triangle,
    pub a: Vec2,
    pub b: Vec2,
    pub c: Vec2,
}

impl Frame {
    pub fn canonical(t: &Triangle) -> Frame {
        let [a, b, c] = t.sides();
        let q = t.derive();
        let x = (a * a + c * c - b * b) / (2.0 * a);
        let y = 2.0 * q.area() / a;
        Frame {
            triangle: *t,
            a: Vec2::new(x, y),
            b: Vec2::zeros(),
            c: Vec2::new(a, 0.0),
        }
    }

    pub fn vertex(&self, v: Vertex) -> Vec2 {
        match v {
            Vertex::A => self.a,
            Vertex::B => self.b,
            Vertex::C => self.c,
        }
    }

    pub fn semiperimeter(&self) -> f64 {
        self.triangle.semiperimeter()
    }

    /// Unit vectors from `v` toward its two neighbours: `A` looks at `C`
    /// then `B`, `B` at `A` then `C`, `C` at `B` then `A`.
    pub fn rays(&self, v: Vertex) -> (Vec2, Vec2) {
        let p = self.vertex(v);
        let first = (self.vertex(v.prev()) - p).normalize();
        let second = (self.vertex(v.next()) - p).normalize();
        (first, second)
    }
}

pub fn canonical_frame(t: &Triangle) -> Frame {
    Frame::canonical(t)
}

/// One of the four angles formed by the two side lines through a vertex.
///
/// For vertex `A`: `Interior` is the angle CAB, `Vertical` its vertical
/// angle, `ExtFirst` keeps the ray toward `C` and takes the opposite of the
/// ray toward `B`, `ExtSecond` keeps the ray toward `B` and takes the
/// opposite of the ray toward `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Region {
    Interior,
    Vertical,
    ExtFirst,
    ExtSecond,
}

impl Region {
    pub const ALL: [Region; 4] = [Region::Interior, Region::Vertical, Region::ExtFirst, Region::ExtSecond];

    /// Orientation applied to the first and second ray.
    fn flips(self) -> (f64, f64) {
        match self {
            Region::Interior => (1.0, 1.0),
            Region::Vertical => (-1.0, -1.0),
            Region::ExtFirst => (1.0, -1.0),
            Region::ExtSecond => (-1.0, 1.0),
        }
    }

    pub fn code(self) -> char {
        match self {
            Region::Interior => 'I',
            Region::Vertical => 'V',
            Region::ExtFirst => 'F',
            Region::ExtSecond => 'S',
        }
    }
}

/// Regions of the centers of `A'`, `B'`, `C'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RegionAssignment(pub [Region; 3]);

impl RegionAssignment {
    pub fn get(&self, v: Vertex) -> Region {
        self.0[v.index()]
    }

    /// All 64 assignments.
    pub fn all() -> impl Iterator<Item = RegionAssignment> {
        (0..64).map(|i| RegionAssignment([Region::ALL[i / 16], Region::ALL[(i / 4) % 4], Region::ALL[i % 4]]))
    }
}

impl fmt::Display for RegionAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0.map(Region::code);
        write!(f, "{a}{b}{c}")
    }
}

/// One of the seven consistent region assignments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "u8")]
pub struct Case(u8);

impl From<Case> for u8 {
    fn from(c: Case) -> u8 {
        c.0
    }
}

const CASE_TABLE: [[Region; 3]; 7] = {
    use Region::*;
    [
        [Interior, Interior, Interior],
        [Interior, ExtSecond, ExtFirst],
        [Vertical, ExtFirst, ExtSecond],
        [ExtFirst, Interior, ExtSecond],
        [ExtSecond, Vertical, ExtFirst],
        [ExtSecond, ExtFirst, Interior],
        [ExtFirst, ExtSecond, Vertical],
    ]
};

impl Case {
    pub fn new(id: u8) -> Option<Case> {
        (1..=7).contains(&id).then_some(Case(id))
    }

    pub fn all() -> impl Iterator<Item = Case> {
        (1..=7).map(Case)
    }

    pub fn id(self) -> u8 {
        self.0
    }

    pub fn regions(self) -> RegionAssignment {
        RegionAssignment(CASE_TABLE[self.0 as usize - 1])
    }

    /// The family whose solutions can occupy this case.
    pub fn family(self) -> Family {
        Family::ALL[(self.0 as usize) / 2]
    }

    pub fn for_family(family: Family) -> Vec<Case> {
        Case::all().filter(|c| c.family() == family).collect()
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Case {}", self.0)
    }
}

pub fn classify_case(regions: RegionAssignment) -> Option<Case> {
    CASE_TABLE
        .iter()
        .position(|row| *row == regions.0)
        .map(|i| Case(i as u8 + 1))
}

/// Center of a circle of the given radius touching both side lines through
/// `vertex`, inside `region`.
pub fn center_in_region(frame: &Frame, vertex: Vertex, region: Region, radius: f64) -> Vec2 {
    let (u1, u2) = frame.rays(vertex);
    let (f1, f2) = region.flips();
    let (e1, e2) = (u1 * f1, u2 * f2);
    // |e1 - e2| = 2 sin(half opening angle)
    frame.vertex(vertex) + (e1 + e2).normalize() * (2.0 * radius / (e1 - e2).norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TangencyType {
    External,
    Internal,
}

/// Residual of one circle pair and the tangency type that achieves it.
pub fn pair_residual(c1: Vec2, r1: f64, c2: Vec2, r2: f64) -> (f64, TangencyType) {
    let d = (c1 - c2).norm();
    let ext = (d - (r1 + r2)).abs();
    let int = (d - (r1 - r2).abs()).abs();
    if ext <= int {
        (ext, TangencyType::External)
    } else {
        (int, TangencyType::Internal)
    }
}

/// Circle pairs `(1,2)`, `(1,3)`, `(2,3)` as zero-based indices.
pub const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Vec2,
    pub radius: f64,
}

/// The six line tangent points and three circle-circle tangent points.
///
/// `D` points lie on line BC, `E` on CA, `F` on AB; the digit names the
/// circle. `Tij` is where circles `i` and `j` touch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentPoints {
    pub d2: Vec2,
    pub d3: Vec2,
    pub e1: Vec2,
    pub e3: Vec2,
    pub f1: Vec2,
    pub f2: Vec2,
    pub t12: Vec2,
    pub t13: Vec2,
    pub t23: Vec2,
}

impl TangentPoints {
    pub const LABELS: [&'static str; 9] = ["D2", "D3", "E1", "E3", "F1", "F2", "T12", "T13", "T23"];

    pub fn labeled(&self) -> [(&'static str, Vec2); 9] {
        let p = [
            self.d2, self.d3, self.e1, self.e3, self.f1, self.f2, self.t12, self.t13, self.t23,
        ];
        let mut i = 0;
        p.map(|x| {
            i += 1;
            (Self::LABELS[i - 1], x)
        })
    }

    /// The six points on side lines with the index of their circle and the
    /// two vertices spanning their line.
    pub fn on_lines(&self) -> [(Vec2, usize, (Vertex, Vertex)); 6] {
        use Vertex::*;
        [
            (self.d2, 1, (B, C)),
            (self.d3, 2, (B, C)),
            (self.e1, 0, (C, A)),
            (self.e3, 2, (C, A)),
            (self.f1, 0, (A, B)),
            (self.f2, 1, (A, B)),
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    pub variant: TripletVariant,
    pub radii: RadiiTriplet,
    pub circles: [Circle; 3],
    pub tangent_points: TangentPoints,
    pub regions: RegionAssignment,
    pub case: Case,
    /// For the pairs `(1,2)`, `(1,3)`, `(2,3)`.
    pub tangency_types: [TangencyType; 3],
    /// Largest pairwise tangency residual, in length units.
    pub max_residual: f64,
    pub near_degenerate: bool,
}

impl Configuration {
    pub fn centers(&self) -> [Vec2; 3] {
        self.circles.map(|c| c.center)
    }
}

fn foot(p: Vec2, q1: Vec2, q2: Vec2) -> Vec2 {
    let d = (q2 - q1).normalize();
    q1 + d * (p - q1).dot(&d)
}

fn contact(c1: Vec2, r1: f64, c2: Vec2, r2: f64, kind: TangencyType) -> Vec2 {
    let d = c2 - c1;
    match kind {
        TangencyType::External => c1 + d * (r1 / d.norm()),
        // on the line of centers, beyond the smaller circle
        TangencyType::Internal if r1 >= r2 => c1 + d.normalize() * r1,
        TangencyType::Internal => c2 - d.normalize() * r2,
    }
}

/// Places the three circles for one region assignment.
pub fn place(frame: &Frame, regions: RegionAssignment, radii: [f64; 3]) -> [Circle; 3] {
    let mut i = 0;
    Vertex::ALL.map(|v| {
        i += 1;
        let r = radii[i - 1];
        Circle {
            center: center_in_region(frame, v, regions.get(v), r),
            radius: r,
        }
    })
}

/// Largest pairwise residual and the tangency type of each pair.
pub fn placement_residual(circles: &[Circle; 3]) -> (f64, [TangencyType; 3]) {
    let mut worst = 0.0f64;
    let types = PAIRS.map(|(i, j)| {
        let (res, kind) = pair_residual(circles[i].center, circles[i].radius, circles[j].center, circles[j].radius);
        worst = worst.max(res);
        kind
    });
    (worst, types)
}

fn assemble(frame: &Frame, triplet: &RadiiTriplet, case: Case) -> Configuration {
    let regions = case.regions();
    let circles = place(frame, regions, triplet.radii());
    let (max_residual, tangency_types) = placement_residual(&circles);
    let [ca, cb, cc] = circles;
    let (a, b, c) = (frame.a, frame.b, frame.c);
    let tp = TangentPoints {
        d2: foot(cb.center, b, c),
        d3: foot(cc.center, b, c),
        e1: foot(ca.center, c, a),
        e3: foot(cc.center, c, a),
        f1: foot(ca.center, a, b),
        f2: foot(cb.center, a, b),
        t12: contact(ca.center, ca.radius, cb.center, cb.radius, tangency_types[0]),
        t13: contact(ca.center, ca.radius, cc.center, cc.radius, tangency_types[1]),
        t23: contact(cb.center, cb.radius, cc.center, cc.radius, tangency_types[2]),
    };
    let points = tp.labeled();
    let guard = DISTINCTNESS_TOLERANCE * frame.semiperimeter();
    let near_degenerate = points
        .iter()
        .enumerate()
        .any(|(i, p)| points[i + 1..].iter().any(|q| (p.1 - q.1).norm() < guard));
    Configuration {
        variant: triplet.variant,
        radii: *triplet,
        circles,
        tangent_points: tp,
        regions,
        case,
        tangency_types,
        max_residual,
        near_degenerate,
    }
}

/// Tries the cases allowed for the triplet's family and keeps the one with
/// the smallest residual, whether or not it passes.
pub fn best_placement(frame: &Frame, triplet: &RadiiTriplet) -> Configuration {
    Case::for_family(triplet.variant.family())
        .into_iter()
        .map(|case| assemble(frame, triplet, case))
        .min_by(|x, y| x.max_residual.total_cmp(&y.max_residual))
        .expect("every family owns at least one case")
}

/// Like [`best_placement`], but fails unless the residual is below
/// `1e-9 * s`.
pub fn construct_configuration(frame: &Frame, triplet: &RadiiTriplet) -> Result<Configuration> {
    let config = best_placement(frame, triplet);
    if config.max_residual < PLACEMENT_TOLERANCE * frame.semiperimeter() {
        Ok(config)
    } else {
        Err(Error::NoConsistentPlacement {
            variant: triplet.variant.label(),
            residual: config.max_residual,
        })
    }
}
