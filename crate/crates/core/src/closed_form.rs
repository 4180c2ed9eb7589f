//! The 32 closed-form radius triplets.
//!
//! Every formula has the shape `coefficient * f^2(argument)` per circle. The
//! table is stored once as [`Term`]s; evaluation and the human readable text
//! used in captions both read from it.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::triangle::{AuxiliaryAngles, DerivedQuantities, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    Incircle,
    ExA,
    ExB,
    ExC,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Incircle, Family::ExA, Family::ExB, Family::ExC];

    pub fn ordinal(self) -> usize {
        self as usize
    }

    /// Label prefix: `i`, `a`, `b` or `c`.
    pub fn prefix(self) -> char {
        ['i', 'a', 'b', 'c'][self.ordinal()]
    }

    /// The excircle vertex, `None` for the incircle family.
    pub fn vertex(self) -> Option<Vertex> {
        match self {
            Family::Incircle => None,
            Family::ExA => Some(Vertex::A),
            Family::ExB => Some(Vertex::B),
            Family::ExC => Some(Vertex::C),
        }
    }

    pub fn excircle(v: Vertex) -> Family {
        Family::ALL[v.index() + 1]
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Incircle => "incircle",
            Family::ExA => "exA",
            Family::ExB => "exB",
            Family::ExC => "exC",
        }
    }
}

/// One of the 32 triplets: a family and a slot `1..=8` within it.
///
/// The global index runs `1..=32` in the order `i1..i8, a1..a8, b1..b8, c1..c8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripletVariant {
    family: Family,
    slot: u8,
}

impl TripletVariant {
    pub fn new(family: Family, slot: u8) -> Result<Self> {
        if (1..=8).contains(&slot) {
            Ok(TripletVariant { family, slot })
        } else {
            Err(Error::UnknownVariant(format!("{}{slot}", family.prefix())))
        }
    }

    pub fn from_index(index: usize) -> Result<Self> {
        if !(1..=32).contains(&index) {
            return Err(Error::UnknownVariant(index.to_string()));
        }
        Ok(TripletVariant {
            family: Family::ALL[(index - 1) / 8],
            slot: ((index - 1) % 8 + 1) as u8,
        })
    }

    /// All 32 variants in index order.
    pub fn all() -> impl Iterator<Item = TripletVariant> {
        (1..=32).map(|i| TripletVariant::from_index(i).unwrap())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn slot(&self) -> u8 {
        self.slot
    }

    pub fn index(&self) -> usize {
        8 * self.family.ordinal() + self.slot as usize
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.family.prefix(), self.slot)
    }

    /// Accepts either a global index (`"13"`) or a label (`"a5"`, case-insensitive).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Ok(i) = t.parse::<usize>() {
            return TripletVariant::from_index(i);
        }
        let unknown = || Error::UnknownVariant(t.to_string());
        let mut chars = t.chars();
        let prefix = chars.next().ok_or_else(unknown)?.to_ascii_lowercase();
        let family = Family::ALL
            .into_iter()
            .find(|f| f.prefix() == prefix)
            .ok_or_else(unknown)?;
        let slot: u8 = chars.as_str().parse().map_err(|_| unknown())?;
        TripletVariant::new(family, slot).map_err(|_| unknown())
    }

    /// Parses a selection such as `all`, `1..32`, `1-8,13`, `a1..a4,c7`.
    /// The result is sorted by index without duplicates.
    pub fn parse_selection(text: &str) -> Result<Vec<Self>> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("all") {
            return Ok(TripletVariant::all().collect());
        }
        let mut picked = [false; 32];
        for item in t.split(',') {
            let item = item.trim();
            let (lo, hi) = match item.split_once("..").or_else(|| item.split_once('-')) {
                Some((lo, hi)) => (TripletVariant::parse(lo)?, TripletVariant::parse(hi)?),
                None => {
                    let v = TripletVariant::parse(item)?;
                    (v, v)
                }
            };
            if lo.index() > hi.index() {
                return Err(Error::UnknownVariant(item.to_string()));
            }
            for i in lo.index()..=hi.index() {
                picked[i - 1] = true;
            }
        }
        Ok(TripletVariant::all().filter(|v| picked[v.index() - 1]).collect())
    }

    /// Trigonometric/hyperbolic companion: slots `k` and `k + 4` share arguments.
    pub fn partner(&self) -> TripletVariant {
        let slot = if self.slot <= 4 { self.slot + 4 } else { self.slot - 4 };
        TripletVariant { family: self.family, slot }
    }

    /// Variants whose published formula disagrees with the family pattern.
    pub fn has_published_typo(&self) -> bool {
        matches!((self.family, self.slot), (Family::ExB, 6) | (Family::ExC, 7))
    }
}

impl fmt::Display for TripletVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.prefix(), self.slot)
    }
}

impl FromStr for TripletVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TripletVariant::parse(s)
    }
}

impl Serialize for TripletVariant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// Which version of the two disputed formulas (b6, c7) to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum FormulaMode {
    /// Formulas that follow the family pattern; these pass the tangency check.
    #[default]
    Corrected,
    /// Formulas exactly as published.
    PaperVerbatim,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiiTriplet {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub variant: TripletVariant,
    /// Set when the value comes from a formula that differs from the published one.
    pub corrected_from_paper: bool,
}

impl RadiiTriplet {
    pub fn radii(&self) -> [f64; 3] {
        [self.r1, self.r2, self.r3]
    }

    pub fn from_radii(radii: [f64; 3], variant: TripletVariant) -> Self {
        RadiiTriplet {
            r1: radii[0],
            r2: radii[1],
            r3: radii[2],
            variant,
            corrected_from_paper: false,
        }
    }

    pub fn scaled(&self, k: f64) -> Self {
        RadiiTriplet {
            r1: k * self.r1,
            r2: k * self.r2,
            r3: k * self.r3,
            ..*self
        }
    }

    /// Largest relative difference between corresponding radii.
    pub fn max_rel_error(&self, other: &RadiiTriplet) -> f64 {
        self.radii()
            .iter()
            .zip(other.radii())
            .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()))
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficient {
    Inradius,
    Exradius(Vertex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareFn {
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl SquareFn {
    fn eval(self, x: f64) -> f64 {
        let y = match self {
            SquareFn::Sin => x.sin(),
            SquareFn::Cos => x.cos(),
            SquareFn::Sinh => x.sinh(),
            SquareFn::Cosh => x.cosh(),
        };
        y * y
    }

    fn name(self) -> &'static str {
        match self {
            SquareFn::Sin => "sin",
            SquareFn::Cos => "cos",
            SquareFn::Sinh => "sinh",
            SquareFn::Cosh => "cosh",
        }
    }

    fn swapped(self) -> SquareFn {
        match self {
            SquareFn::Sin => SquareFn::Cos,
            SquareFn::Cos => SquareFn::Sin,
            SquareFn::Sinh => SquareFn::Cosh,
            SquareFn::Cosh => SquareFn::Sinh,
        }
    }
}

/// `sigma` or `sigma - theta_k` where `theta = (alpha, beta, gamma)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Argument {
    Sigma,
    SigmaMinus(Vertex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub coefficient: Coefficient,
    pub function: SquareFn,
    pub argument: Argument,
}

/// Argument pattern of slots 1..4; slots 5..8 reuse them.
fn slot_arguments(slot: u8) -> [Argument; 3] {
    use Argument::*;
    use Vertex::*;
    match (slot - 1) % 4 {
        0 => [SigmaMinus(A), SigmaMinus(B), SigmaMinus(C)],
        1 => [Sigma, SigmaMinus(C), SigmaMinus(B)],
        2 => [SigmaMinus(C), Sigma, SigmaMinus(A)],
        _ => [SigmaMinus(B), SigmaMinus(A), Sigma],
    }
}

/// The three terms `r1`, `r2`, `r3` of a variant.
pub fn terms(v: TripletVariant, mode: FormulaMode) -> [Term; 3] {
    let args = slot_arguments(v.slot);
    let trig_half = v.slot > 4;
    let mut out = Vertex::ALL.map(|p| {
        let (coefficient, base) = match v.family.vertex() {
            None => (Coefficient::Exradius(p), SquareFn::Sin),
            Some(ex) if ex == p => (Coefficient::Inradius, SquareFn::Cosh),
            Some(ex) => {
                let third = Vertex::ALL.into_iter().find(|&q| q != ex && q != p).unwrap();
                (Coefficient::Exradius(third), SquareFn::Sinh)
            }
        };
        Term {
            coefficient,
            function: if trig_half { base.swapped() } else { base },
            argument: args[p.index()],
        }
    });
    if mode == FormulaMode::PaperVerbatim {
        match (v.family, v.slot) {
            (Family::ExB, 6) => out[2].coefficient = Coefficient::Exradius(Vertex::B),
            (Family::ExC, 7) => out[2].argument = Argument::SigmaMinus(Vertex::B),
            _ => {}
        }
    }
    out
}

fn eval_term(term: &Term, q: &DerivedQuantities, theta: [f64; 3], sigma: f64) -> f64 {
    let coefficient = match term.coefficient {
        Coefficient::Inradius => q.r,
        Coefficient::Exradius(v) => q.exradius(v),
    };
    let x = match term.argument {
        Argument::Sigma => sigma,
        Argument::SigmaMinus(v) => sigma - theta[v.index()],
    };
    coefficient * term.function.eval(x)
}

/// Radii of `v` with the corrected b6/c7 formulas.
pub fn radii_for_variant(q: &DerivedQuantities, ang: &AuxiliaryAngles, v: TripletVariant) -> RadiiTriplet {
    radii_for_variant_with(q, ang, v, FormulaMode::Corrected)
}

pub fn radii_for_variant_with(
    q: &DerivedQuantities,
    ang: &AuxiliaryAngles,
    v: TripletVariant,
    mode: FormulaMode,
) -> RadiiTriplet {
    let (theta, sigma) = match v.family.vertex() {
        None => (ang.trig.as_array(), ang.trig.sigma),
        Some(ex) => {
            let h = ang.family(ex);
            (h.as_array(), h.sigma)
        }
    };
    let r = terms(v, mode).map(|t| eval_term(&t, q, theta, sigma));
    RadiiTriplet {
        r1: r[0],
        r2: r[1],
        r3: r[2],
        variant: v,
        corrected_from_paper: mode == FormulaMode::Corrected && v.has_published_typo(),
    }
}

pub fn all_triplets(q: &DerivedQuantities, ang: &AuxiliaryAngles) -> Vec<RadiiTriplet> {
    all_triplets_with(q, ang, FormulaMode::Corrected)
}

pub fn all_triplets_with(q: &DerivedQuantities, ang: &AuxiliaryAngles, mode: FormulaMode) -> Vec<RadiiTriplet> {
    TripletVariant::all()
        .map(|v| radii_for_variant_with(q, ang, v, mode))
        .collect()
}

fn term_text(term: &Term, family: Family) -> String {
    let suffix = match family.vertex() {
        None => String::new(),
        Some(v) => v.name().to_string(),
    };
    let coefficient = match term.coefficient {
        Coefficient::Inradius => "r".to_string(),
        Coefficient::Exradius(v) => format!("r{}", v.name()),
    };
    let greek = |v: Vertex| ["α", "β", "γ"][v.index()];
    let argument = match term.argument {
        Argument::Sigma => format!("σ{suffix}"),
        Argument::SigmaMinus(v) => format!("(σ{suffix}−{}{suffix})", greek(v)),
    };
    format!("{coefficient}·{}²{argument}", term.function.name())
}

/// One line per radius, e.g. `r1 = rA·sin²(σ−α)`.
pub fn formula_text(v: TripletVariant, mode: FormulaMode) -> [String; 3] {
    let t = terms(v, mode);
    [0, 1, 2].map(|i| format!("r{} = {}", i + 1, term_text(&t[i], v.family)))
}
