//! Triangle input validation and every scalar derived from the side lengths.
//!
//! All vertex-family quantities (exradius families B and C) are produced by
//! rotating the side labels and reusing the vertex-A expressions, so there is
//! exactly one formula per quantity.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Triangles whose smallest `s - side` falls below this fraction of `s` are
/// rejected: the hyperbolic auxiliary angles diverge at the boundary.
pub const DEGENERACY_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Vertex {
    A,
    B,
    C,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::A, Vertex::B, Vertex::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Vertex {
        Vertex::ALL[i % 3]
    }

    /// Cyclic successor (A -> B -> C -> A).
    pub fn next(self) -> Vertex {
        Vertex::from_index(self.index() + 1)
    }

    /// Cyclic predecessor (A -> C -> B -> A).
    pub fn prev(self) -> Vertex {
        Vertex::from_index(self.index() + 2)
    }

    pub fn name(self) -> char {
        ['A', 'B', 'C'][self.index()]
    }

    /// Lower-case name of the opposite side.
    pub fn side_name(self) -> char {
        ['a', 'b', 'c'][self.index()]
    }
}

/// A proper triangle given by its side lengths `a = |BC|`, `b = |CA|`, `c = |AB|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Triangle {
    a: f64,
    b: f64,
    c: f64,
}

impl Triangle {
    pub fn from_sides(a: f64, b: f64, c: f64) -> Result<Self> {
        let sides = [a, b, c];
        for (v, &x) in Vertex::ALL.iter().zip(&sides) {
            if !x.is_finite() {
                return Err(Error::NonFiniteInput(match v {
                    Vertex::A => "side a",
                    Vertex::B => "side b",
                    Vertex::C => "side c",
                }));
            }
            if x <= 0.0 {
                return Err(Error::NonPositiveSide {
                    side: v.side_name(),
                    value: x,
                });
            }
        }
        for v in Vertex::ALL {
            let (p, q) = (v.next(), v.prev());
            let sum = sides[p.index()] + sides[q.index()];
            if sum <= sides[v.index()] {
                let (first, second) = if p < q { (p, q) } else { (q, p) };
                return Err(Error::TriangleInequalityViolated {
                    first: first.side_name(),
                    second: second.side_name(),
                    opposite: v.side_name(),
                    sum,
                    opposite_value: sides[v.index()],
                });
            }
        }
        let s = (a + b + c) / 2.0;
        for v in Vertex::ALL {
            let gap = gap(sides, v);
            if gap < DEGENERACY_GUARD * s {
                return Err(Error::NearDegenerate {
                    side: v.side_name(),
                    gap,
                    guard: DEGENERACY_GUARD,
                });
            }
        }
        Ok(Triangle { a, b, c })
    }

    /// Builds the triangle with interior angles `angle_a`, `angle_b` (radians)
    /// and `C = pi - A - B`, scaled so that side `c` equals `scale`.
    pub fn from_angles(angle_a: f64, angle_b: f64, scale: f64) -> Result<Self> {
        if !angle_a.is_finite() || !angle_b.is_finite() {
            return Err(Error::NonFiniteInput("angle"));
        }
        if !scale.is_finite() {
            return Err(Error::NonFiniteInput("scale"));
        }
        if angle_a <= 0.0 || angle_b <= 0.0 {
            return Err(Error::InvalidAngles(format!(
                "angles must be positive, got A = {angle_a}, B = {angle_b}"
            )));
        }
        if angle_a + angle_b >= PI {
            return Err(Error::InvalidAngles(format!(
                "A + B = {} must be less than pi",
                angle_a + angle_b
            )));
        }
        if scale <= 0.0 {
            return Err(Error::InvalidAngles(format!(
                "scale must be positive, got {scale}"
            )));
        }
        let angle_c = PI - angle_a - angle_b;
        let k = scale / angle_c.sin();
        Triangle::from_sides(k * angle_a.sin(), k * angle_b.sin(), scale)
    }

    /// Same as [`Triangle::from_angles`] with angles in degrees.
    pub fn from_angles_deg(angle_a: f64, angle_b: f64, scale: f64) -> Result<Self> {
        Triangle::from_angles(angle_a.to_radians(), angle_b.to_radians(), scale)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn sides(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn side(&self, v: Vertex) -> f64 {
        self.sides()[v.index()]
    }

    pub fn semiperimeter(&self) -> f64 {
        (self.a + self.b + self.c) / 2.0
    }

    pub fn scaled(&self, k: f64) -> Result<Self> {
        Triangle::from_sides(k * self.a, k * self.b, k * self.c)
    }

    /// Relabels the vertices so that `v` takes the role of `A`
    /// (`B` -> `(b, c, a)`, `C` -> `(c, a, b)`).
    pub fn rotated(&self, v: Vertex) -> Triangle {
        let s = self.sides();
        let i = v.index();
        Triangle {
            a: s[i],
            b: s[(i + 1) % 3],
            c: s[(i + 2) % 3],
        }
    }

    pub fn derive(&self) -> DerivedQuantities {
        DerivedQuantities::new(*self)
    }
}

fn gap(sides: [f64; 3], v: Vertex) -> f64 {
    let i = v.index();
    (sides[(i + 1) % 3] + sides[(i + 2) % 3] - sides[i]) / 2.0
}

/// Scalars derived from the sides: semiperimeter, in- and exradii, interior
/// angles and the half-angle cotangents/tangents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    pub triangle: Triangle,
    pub s: f64,
    pub r: f64,
    /// Exradii `[rA, rB, rC]`.
    pub exradii: [f64; 3],
    /// `s - a`, `s - b`, `s - c`.
    pub gaps: [f64; 3],
    /// Interior angles `[A, B, C]` in radians.
    pub angles: [f64; 3],
    /// `cot(V/2) = (s - v)/r` per vertex.
    pub cot_half: [f64; 3],
    /// `tan(V/2) = r/(s - v)` per vertex.
    pub tan_half: [f64; 3],
}

impl DerivedQuantities {
    fn new(t: Triangle) -> Self {
        let sides = t.sides();
        let s = t.semiperimeter();
        let gaps = Vertex::ALL.map(|v| gap(sides, v));
        let r = (gaps[0] * gaps[1] * gaps[2] / s).sqrt();
        let exradii = gaps.map(|g| r * s / g);
        let angles = gaps.map(|g| 2.0 * r.atan2(g));
        let cot_half = gaps.map(|g| g / r);
        let tan_half = gaps.map(|g| r / g);
        DerivedQuantities {
            triangle: t,
            s,
            r,
            exradii,
            gaps,
            angles,
            cot_half,
            tan_half,
        }
    }

    pub fn ra(&self) -> f64 {
        self.exradii[0]
    }

    pub fn rb(&self) -> f64 {
        self.exradii[1]
    }

    pub fn rc(&self) -> f64 {
        self.exradii[2]
    }

    pub fn exradius(&self, v: Vertex) -> f64 {
        self.exradii[v.index()]
    }

    pub fn area(&self) -> f64 {
        self.r * self.s
    }

    /// `(l, m, n) = (cot A/2, cot B/2, cot C/2)`.
    pub fn incircle_params(&self) -> [f64; 3] {
        self.cot_half
    }

    /// `(l, m_bar, n_bar)` for the excircle family of vertex `v`:
    /// `cot(V/2)` followed by the half-angle tangents of the two following
    /// vertices in cyclic order.
    pub fn excircle_params(&self, v: Vertex) -> [f64; 3] {
        [
            self.cot_half[v.index()],
            self.tan_half[v.next().index()],
            self.tan_half[v.prev().index()],
        ]
    }

    pub fn auxiliary_angles(&self) -> AuxiliaryAngles {
        AuxiliaryAngles::new(self)
    }
}

/// Trigonometric angles with `sin^2 alpha = a/s` etc. and `sigma` their half-sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub sigma: f64,
}

impl TrigAngles {
    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }
}

/// Hyperbolic arguments of one excircle family, stored by vertex position.
///
/// For the A-family: `sinh^2 alpha = a/(s-a)`, `sinh^2 beta = (s-c)/(s-a)`,
/// `sinh^2 gamma = (s-b)/(s-a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub sigma: f64,
}

impl HyperbolicAngles {
    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    /// A-family arguments computed from `(a, s-a, s-b, s-c)`.
    fn vertex_a(a: f64, gap_a: f64, gap_b: f64, gap_c: f64) -> [f64; 3] {
        [
            (a / gap_a).sqrt().asinh(),
            (gap_c / gap_a).sqrt().asinh(),
            (gap_b / gap_a).sqrt().asinh(),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxiliaryAngles {
    pub trig: TrigAngles,
    /// Indexed by excircle vertex (A, B, C).
    pub hyperbolic: [HyperbolicAngles; 3],
}

impl AuxiliaryAngles {
    fn new(q: &DerivedQuantities) -> Self {
        let sides = q.triangle.sides();
        // sin^2 = side/s, cos^2 = (s - side)/s
        let [alpha, beta, gamma] =
            [0, 1, 2].map(|i| sides[i].sqrt().atan2((q.s - sides[i]).sqrt()));
        let trig = TrigAngles {
            alpha,
            beta,
            gamma,
            sigma: (alpha + beta + gamma) / 2.0,
        };
        let hyperbolic = Vertex::ALL.map(|v| {
            let i = v.index();
            let rot = |k: usize| (i + k) % 3;
            let rotated = HyperbolicAngles::vertex_a(
                sides[i],
                q.gaps[rot(0)],
                q.gaps[rot(1)],
                q.gaps[rot(2)],
            );
            // rotated slot k belongs to vertex position (v + k)
            let mut positional = [0.0; 3];
            for (k, value) in rotated.into_iter().enumerate() {
                positional[rot(k)] = value;
            }
            let [alpha, beta, gamma] = positional;
            HyperbolicAngles {
                alpha,
                beta,
                gamma,
                sigma: (alpha + beta + gamma) / 2.0,
            }
        });
        AuxiliaryAngles { trig, hyperbolic }
    }

    pub fn family(&self, v: Vertex) -> &HyperbolicAngles {
        &self.hyperbolic[v.index()]
    }
}
