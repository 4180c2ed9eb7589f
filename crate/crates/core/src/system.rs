//! Normalized six-equation tangency systems and their solutions.
//!
//! Unknowns are the normalized radii `x, y, z` (radius over the scale radius)
//! and `u, v, w` (normalized geometric means of radius pairs). Two systems
//! exist: the incircle one, and the excircle template written for vertex `A`.
//! The `B` and `C` excircle systems are the template applied to rotated
//! parameters, so their unknowns `(x, y, z)` belong to the vertices
//! `(V, V+1, V+2)`.
//!
//! Solutions come from two independent routes: the literal radical table
//! ([`solve_in_closed_form`]) and root enumeration of the factored
//! generators followed by filtering ([`enumerate_candidates`],
//! [`filter_solutions`]).

use crate::closed_form::{Family, RadiiTriplet, TripletVariant};
use crate::error::{Error, Result};
use crate::triangle::{DerivedQuantities, Vertex};

/// Relative tolerance on the parameter constraint accepted by [`SystemSpec::new`].
pub const CONSTRAINT_TOLERANCE: f64 = 1e-10;

/// Residual threshold (times `max(1, p1, p2, p3)`) separating true solutions
/// from spurious candidates.
pub const FILTER_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemSpec {
    pub family: Family,
    /// `(l, m, n)` for the incircle system, `(l, m_bar, n_bar)` otherwise.
    pub p: [f64; 3],
    /// `r` for the incircle system, the family's exradius otherwise.
    pub scale_radius: f64,
}

impl SystemSpec {
    pub fn new(family: Family, p: [f64; 3], scale_radius: f64) -> Result<Self> {
        if p.iter().chain([&scale_radius]).any(|x| !x.is_finite() || *x <= 0.0) {
            return Err(Error::ConstraintViolated(format!(
                "parameters {p:?} and scale radius {scale_radius} must be positive and finite"
            )));
        }
        let spec = SystemSpec { family, p, scale_radius };
        let defect = spec.constraint_defect();
        if defect > CONSTRAINT_TOLERANCE {
            return Err(Error::ConstraintViolated(format!(
                "relative defect {defect:e} for {} parameters {p:?}",
                family.name()
            )));
        }
        Ok(spec)
    }

    pub fn is_excircle(&self) -> bool {
        self.family != Family::Incircle
    }

    /// Relative defect of `lmn = l+m+n` (incircle) or `l m n = l - m - n`.
    pub fn constraint_defect(&self) -> f64 {
        let [l, m, n] = self.p;
        let (lhs, rhs) = if self.is_excircle() {
            (l * m * n, l - m - n)
        } else {
            (l * m * n, l + m + n)
        };
        (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(l)
    }

    /// Triangle vertices owning the unknowns `x`, `y`, `z`.
    pub fn positions(&self) -> [Vertex; 3] {
        let v = self.family.vertex().unwrap_or(Vertex::A);
        [v, v.next(), v.prev()]
    }

    fn filter_threshold(&self) -> f64 {
        FILTER_TOLERANCE * self.p.iter().fold(1.0f64, |a, &b| a.max(b))
    }
}

pub fn build_system(q: &DerivedQuantities, family: Family) -> SystemSpec {
    match family.vertex() {
        None => SystemSpec {
            family,
            p: q.incircle_params(),
            scale_radius: q.r,
        },
        Some(v) => SystemSpec {
            family,
            p: q.excircle_params(v),
            scale_radius: q.exradius(v),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedSolution {
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub family: Family,
    /// Slot of the family's formula table; `None` for a candidate whose root
    /// pattern matches none of the eight solutions.
    pub slot: Option<u8>,
}

impl NormalizedSolution {
    pub fn as_array(&self) -> [f64; 6] {
        [self.u, self.v, self.w, self.x, self.y, self.z]
    }

    /// Excircle solutions with negative `x, y, z` are the ones whose first
    /// circle sits in the vertical angle at the excircle vertex.
    pub fn is_negative(&self) -> bool {
        self.x < 0.0
    }

    pub fn variant(&self) -> Option<TripletVariant> {
        self.slot.and_then(|s| TripletVariant::new(self.family, s).ok())
    }
}

/// Six residuals of the family's system, in equation order.
pub fn residuals(spec: &SystemSpec, sol: &NormalizedSolution) -> [f64; 6] {
    let [l, m, n] = spec.p;
    let NormalizedSolution { u, v, w, x, y, z, .. } = *sol;
    let linear = if spec.is_excircle() {
        [
            m * y + n * z - 2.0 * u - m - n,
            l * x - n * z + 2.0 * v - l + n,
            l * x - m * y + 2.0 * w - l + m,
        ]
    } else {
        [
            m * y + n * z + 2.0 * u - m - n,
            l * x + n * z + 2.0 * v - l - n,
            l * x + m * y + 2.0 * w - l - m,
        ]
    };
    [
        linear[0],
        linear[1],
        linear[2],
        x * y - w * w,
        x * z - v * v,
        y * z - u * u,
    ]
}

/// Maximum absolute residual over the six equations.
pub fn residual(spec: &SystemSpec, sol: &NormalizedSolution) -> f64 {
    residuals(spec, sol).iter().fold(0.0, |a, r| a.max(r.abs()))
}

/// Template slot (vertex-A numbering) to the slot of the family's own table.
///
/// Slots 2-4 (and 6-8) are told apart by which circle carries the bare
/// `sigma`; rotating the template moves that circle to another vertex.
fn relabel_slot(family: Family, template_slot: u8) -> u8 {
    let shift = match family.vertex() {
        None => return template_slot,
        Some(v) => v.index() as u8,
    };
    let base = if template_slot > 4 { 4 } else { 0 };
    let k = template_slot - base;
    if k == 1 {
        return template_slot;
    }
    base + 2 + (k - 2 + shift) % 3
}

fn solution(spec: &SystemSpec, uvw: [f64; 3], xyz: [f64; 3], template_slot: Option<u8>) -> NormalizedSolution {
    NormalizedSolution {
        u: uvw[0],
        v: uvw[1],
        w: uvw[2],
        x: xyz[0],
        y: xyz[1],
        z: xyz[2],
        family: spec.family,
        slot: template_slot.map(|s| relabel_slot(spec.family, s)),
    }
}

/// The eight solutions from the radical table, in slot order.
pub fn solve_in_closed_form(spec: &SystemSpec) -> Vec<NormalizedSolution> {
    let [l, m, n] = spec.p;
    let ls = (l * l + 1.0).sqrt();
    let ms = (m * m + 1.0).sqrt();
    let ns = (n * n + 1.0).sqrt();
    let rows: [([f64; 3], [f64; 3]); 8] = if spec.is_excircle() {
        [
            (
                [(ls - l - 1.0) / 2.0, (ms + m - 1.0) / 2.0, (ns + n - 1.0) / 2.0],
                [
                    (ls - ms - ns + l - m - n + 1.0) / (2.0 * l),
                    (ls - ms + ns - l + m + n - 1.0) / (2.0 * m),
                    (ls + ms - ns - l + m + n - 1.0) / (2.0 * n),
                ],
            ),
            (
                [(ls - l - 1.0) / 2.0, -(ms - m + 1.0) / 2.0, -(ns - n + 1.0) / 2.0],
                [
                    (ls + ms + ns + l - m - n + 1.0) / (2.0 * l),
                    (ls + ms - ns - l + m + n - 1.0) / (2.0 * m),
                    (ls - ms + ns - l + m + n - 1.0) / (2.0 * n),
                ],
            ),
            (
                [(ls - l + 1.0) / 2.0, -(ms - m - 1.0) / 2.0, (ns + n + 1.0) / 2.0],
                [
                    (ls + ms - ns + l - m - n - 1.0) / (2.0 * l),
                    (ls + ms + ns - l + m + n + 1.0) / (2.0 * m),
                    (ls - ms - ns - l + m + n + 1.0) / (2.0 * n),
                ],
            ),
            (
                [(ls - l + 1.0) / 2.0, (ms + m + 1.0) / 2.0, -(ns - n - 1.0) / 2.0],
                [
                    (ls - ms + ns + l - m - n - 1.0) / (2.0 * l),
                    (ls - ms - ns - l + m + n + 1.0) / (2.0 * m),
                    (ls + ms + ns - l + m + n + 1.0) / (2.0 * n),
                ],
            ),
            (
                [-(ls + l - 1.0) / 2.0, -(ms - m - 1.0) / 2.0, -(ns - n - 1.0) / 2.0],
                [
                    -(ls - ms - ns - l + m + n + 1.0) / (2.0 * l),
                    -(ls - ms + ns + l - m - n - 1.0) / (2.0 * m),
                    -(ls + ms - ns + l - m - n - 1.0) / (2.0 * n),
                ],
            ),
            (
                [-(ls + l - 1.0) / 2.0, (ms + m + 1.0) / 2.0, (ns + n + 1.0) / 2.0],
                [
                    -(ls + ms + ns - l + m + n + 1.0) / (2.0 * l),
                    -(ls + ms - ns + l - m - n - 1.0) / (2.0 * m),
                    -(ls - ms + ns + l - m - n - 1.0) / (2.0 * n),
                ],
            ),
            (
                [-(ls + l + 1.0) / 2.0, (ms + m - 1.0) / 2.0, -(ns - n + 1.0) / 2.0],
                [
                    -(ls + ms - ns - l + m + n - 1.0) / (2.0 * l),
                    -(ls + ms + ns + l - m - n + 1.0) / (2.0 * m),
                    -(ls - ms - ns + l - m - n + 1.0) / (2.0 * n),
                ],
            ),
            (
                [-(ls + l + 1.0) / 2.0, -(ms - m + 1.0) / 2.0, (ns + n - 1.0) / 2.0],
                [
                    -(ls - ms + ns - l + m + n - 1.0) / (2.0 * l),
                    -(ls - ms - ns + l - m - n + 1.0) / (2.0 * m),
                    -(ls + ms + ns + l - m - n + 1.0) / (2.0 * n),
                ],
            ),
        ]
    } else {
        let k = l + m + n;
        [
            (
                [(ls - l + 1.0) / 2.0, (ms - m + 1.0) / 2.0, (ns - n + 1.0) / 2.0],
                [
                    (k - 1.0 + ls - ms - ns) / (2.0 * l),
                    (k - 1.0 - ls + ms - ns) / (2.0 * m),
                    (k - 1.0 - ls - ms + ns) / (2.0 * n),
                ],
            ),
            (
                [(ls - l + 1.0) / 2.0, -(ms + m - 1.0) / 2.0, -(ns + n - 1.0) / 2.0],
                [
                    (k - 1.0 + ls + ms + ns) / (2.0 * l),
                    (k - 1.0 - ls - ms + ns) / (2.0 * m),
                    (k - 1.0 - ls + ms - ns) / (2.0 * n),
                ],
            ),
            (
                [-(ls + l - 1.0) / 2.0, (ms - m + 1.0) / 2.0, -(ns + n - 1.0) / 2.0],
                [
                    (k - 1.0 - ls - ms + ns) / (2.0 * l),
                    (k - 1.0 + ls + ms + ns) / (2.0 * m),
                    (k - 1.0 + ls - ms - ns) / (2.0 * n),
                ],
            ),
            (
                [-(ls + l - 1.0) / 2.0, -(ms + m - 1.0) / 2.0, (ns - n + 1.0) / 2.0],
                [
                    (k - 1.0 - ls + ms - ns) / (2.0 * l),
                    (k - 1.0 + ls - ms - ns) / (2.0 * m),
                    (k - 1.0 + ls + ms + ns) / (2.0 * n),
                ],
            ),
            (
                [-(ls + l + 1.0) / 2.0, -(ms + m + 1.0) / 2.0, -(ns + n + 1.0) / 2.0],
                [
                    (k + 1.0 - ls + ms + ns) / (2.0 * l),
                    (k + 1.0 + ls - ms + ns) / (2.0 * m),
                    (k + 1.0 + ls + ms - ns) / (2.0 * n),
                ],
            ),
            (
                [-(ls + l + 1.0) / 2.0, (ms - m - 1.0) / 2.0, (ns - n - 1.0) / 2.0],
                [
                    (k + 1.0 - ls - ms - ns) / (2.0 * l),
                    (k + 1.0 + ls + ms - ns) / (2.0 * m),
                    (k + 1.0 + ls - ms + ns) / (2.0 * n),
                ],
            ),
            (
                [(ls - l - 1.0) / 2.0, -(ms + m + 1.0) / 2.0, (ns - n - 1.0) / 2.0],
                [
                    (k + 1.0 + ls + ms - ns) / (2.0 * l),
                    (k + 1.0 - ls - ms - ns) / (2.0 * m),
                    (k + 1.0 - ls + ms + ns) / (2.0 * n),
                ],
            ),
            (
                [(ls - l - 1.0) / 2.0, (ms - m - 1.0) / 2.0, -(ns + n + 1.0) / 2.0],
                [
                    (k + 1.0 + ls - ms + ns) / (2.0 * l),
                    (k + 1.0 - ls + ms + ns) / (2.0 * m),
                    (k + 1.0 - ls - ms - ns) / (2.0 * n),
                ],
            ),
        ]
    };
    rows.iter()
        .enumerate()
        .map(|(i, (uvw, xyz))| solution(spec, *uvw, *xyz, Some(i as u8 + 1)))
        .collect()
}

/// Root of one factor of the quartic generators. `Q*` roots solve
/// `2t^2 + 2pt - 2t - p` (`Q0`) and `2t^2 + 2pt + 2t + p` (`Q1`); `P*` roots
/// solve the excircle factors `2t^2 - 2pt - 2t + p` (`P0`) and
/// `2t^2 - 2pt + 2t - p` (`P1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Root {
    Q0Plus,
    Q0Minus,
    Q1Plus,
    Q1Minus,
    P0Plus,
    P0Minus,
    P1Plus,
    P1Minus,
}

impl Root {
    pub fn value(self, p: f64) -> f64 {
        let d = (p * p + 1.0).sqrt();
        match self {
            Root::Q0Plus => (1.0 - p + d) / 2.0,
            Root::Q0Minus => (1.0 - p - d) / 2.0,
            Root::Q1Plus => (-(1.0 + p) + d) / 2.0,
            Root::Q1Minus => (-(1.0 + p) - d) / 2.0,
            Root::P0Plus => (p + 1.0 + d) / 2.0,
            Root::P0Minus => (p + 1.0 - d) / 2.0,
            Root::P1Plus => (p - 1.0 + d) / 2.0,
            Root::P1Minus => (p - 1.0 - d) / 2.0,
        }
    }

    fn incircle() -> [Root; 4] {
        [Root::Q0Plus, Root::Q0Minus, Root::Q1Plus, Root::Q1Minus]
    }

    fn excircle() -> [Root; 4] {
        [Root::P0Plus, Root::P0Minus, Root::P1Plus, Root::P1Minus]
    }
}

/// Root patterns `(u, v, w)` of the eight solutions, in template slot order.
fn slot_patterns(excircle: bool) -> [[Root; 3]; 8] {
    use Root::*;
    if excircle {
        [
            [Q1Plus, P1Plus, P1Plus],
            [Q1Plus, P1Minus, P1Minus],
            [Q0Plus, P0Minus, P0Plus],
            [Q0Plus, P0Plus, P0Minus],
            [Q0Minus, P0Minus, P0Minus],
            [Q0Minus, P0Plus, P0Plus],
            [Q1Minus, P1Plus, P1Minus],
            [Q1Minus, P1Minus, P1Plus],
        ]
    } else {
        [
            [Q0Plus, Q0Plus, Q0Plus],
            [Q0Plus, Q0Minus, Q0Minus],
            [Q0Minus, Q0Plus, Q0Minus],
            [Q0Minus, Q0Minus, Q0Plus],
            [Q1Minus, Q1Minus, Q1Minus],
            [Q1Minus, Q1Plus, Q1Plus],
            [Q1Plus, Q1Minus, Q1Plus],
            [Q1Plus, Q1Plus, Q1Minus],
        ]
    }
}

/// All `4 x 4 x 4` combinations of generator roots, each completed to
/// `(x, y, z)` through the three linear generators.
pub fn enumerate_candidates(spec: &SystemSpec) -> Vec<NormalizedSolution> {
    let [l, m, n] = spec.p;
    let ex = spec.is_excircle();
    let vw_roots = if ex { Root::excircle() } else { Root::incircle() };
    let patterns = slot_patterns(ex);
    let mut out = Vec::with_capacity(64);
    for ru in Root::incircle() {
        for rv in vw_roots {
            for rw in vw_roots {
                let (u, v, w) = (ru.value(l), rv.value(m), rw.value(n));
                let xyz = if ex {
                    [(u - v - w + l) / l, (u - v + w + m) / m, (u + v - w + n) / n]
                } else {
                    [(u - v - w + l) / l, (-u + v - w + m) / m, (-u - v + w + n) / n]
                };
                let slot = patterns
                    .iter()
                    .position(|p| *p == [ru, rv, rw])
                    .map(|i| i as u8 + 1);
                out.push(solution(spec, [u, v, w], xyz, slot));
            }
        }
    }
    out
}

/// Keeps the candidates that solve the full system and checks that exactly
/// eight remain. Output is sorted by slot.
pub fn filter_solutions(spec: &SystemSpec, candidates: &[NormalizedSolution]) -> Result<Vec<NormalizedSolution>> {
    let threshold = spec.filter_threshold();
    let mut kept: Vec<NormalizedSolution> = candidates
        .iter()
        .filter(|c| residual(spec, c) < threshold)
        .copied()
        .collect();
    if kept.len() != 8 {
        return Err(Error::FilterCountMismatch { survivors: kept.len() });
    }
    kept.sort_by(|a, b| {
        (a.slot.is_none(), a.slot)
            .cmp(&(b.slot.is_none(), b.slot))
            .then(a.x.total_cmp(&b.x))
    });
    Ok(kept)
}

/// Enumeration followed by filtering.
pub fn solve_by_enumeration(spec: &SystemSpec) -> Result<Vec<NormalizedSolution>> {
    filter_solutions(spec, &enumerate_candidates(spec))
}

/// Radii `(r1, r2, r3)` at vertices `(A, B, C)`.
///
/// # Panics
///
/// If `sol` carries no slot (a rejected candidate).
pub fn to_radii(spec: &SystemSpec, sol: &NormalizedSolution) -> RadiiTriplet {
    let variant = sol.variant().expect("solution without a slot");
    let mut r = [0.0; 3];
    for (pos, value) in spec.positions().into_iter().zip([sol.x, sol.y, sol.z]) {
        r[pos.index()] = spec.scale_radius * value.abs();
    }
    RadiiTriplet::from_radii(r, variant)
}
