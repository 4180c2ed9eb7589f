//! Formula-free verification.
//!
//! For a region assignment every center is a fixed point plus `r_i` times a
//! fixed direction, so each pairwise tangency condition, squared, is a
//! quadratic in two radii. Fixing `r1` turns the `(1,2)` and `(1,3)`
//! conditions into quadratics for `r2` and `r3`; the `(2,3)` condition is
//! then a scalar function of `r1`, swept on a log grid and bisected at sign
//! changes. Each bracketed root is polished by Newton on the full system.
//! This runs for all eight external/internal sign branches. Nothing from
//! the closed forms is used.

use std::sync::OnceLock;

use serde::Serialize;

use crate::closed_form::{self, Family, FormulaMode, RadiiTriplet, TripletVariant};
use crate::construct::{self, Case, Frame, RegionAssignment, TangencyType, PAIRS};
use crate::error::{Error, Result};
use crate::triangle::{AuxiliaryAngles, DerivedQuantities, Triangle, Vertex};
use crate::Vec2;

/// Default relative tolerance for a closed-form radius to count as matching
/// an oracle root.
pub const MATCH_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Sweep points for `r1`.
    pub samples: usize,
    /// Sweep range as multiples of the semiperimeter.
    pub lo: f64,
    pub hi: f64,
    pub max_iterations: usize,
    /// Unsquared tangency residual (times `s`) required of an accepted root.
    pub accept_tolerance: f64,
    /// Roots closer than this (times `s`) are merged.
    pub cluster_tolerance: f64,
    /// Roots whose two tangent points on a shared side line are closer than
    /// this (times `s`) are discarded.
    pub distinct_tolerance: f64,
    /// Same test relative to the separation `2 sqrt(r_i r_j)` of a genuine
    /// tangent pair.
    pub degenerate_ratio: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            samples: 6000,
            lo: 1e-12,
            hi: 1e4,
            max_iterations: 60,
            accept_tolerance: 1e-12,
            cluster_tolerance: 1e-8,
            distinct_tolerance: 1e-6,
            degenerate_ratio: 1e-3,
        }
    }
}

/// A distinct positive solution of the tangency equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleRoot {
    pub radii: [f64; 3],
    /// For the pairs `(1,2)`, `(1,3)`, `(2,3)`.
    pub tangency: [TangencyType; 3],
    /// Largest unsquared tangency residual, in length units.
    pub residual: f64,
}

impl OracleRoot {
    pub fn max_rel_error(&self, radii: &[f64; 3]) -> f64 {
        self.radii
            .iter()
            .zip(radii)
            .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()))
            .fold(0.0, f64::max)
    }
}

/// Normalized geometry: vertex positions and center directions divided by `s`.
struct Problem {
    base: [Vec2; 3],
    dir: [Vec2; 3],
    /// `base[i] - base[j]` per pair.
    offset: [Vec2; 3],
}

impl Problem {
    /// Circle `i` of the problem is circle `order[i]` of the configuration.
    fn new(frame: &Frame, regions: RegionAssignment, order: [usize; 3]) -> Problem {
        let s = frame.semiperimeter();
        let vertex = order.map(Vertex::from_index);
        let base = vertex.map(|v| frame.vertex(v) / s);
        // a unit radius center minus the vertex gives the direction
        let dir = vertex.map(|v| construct::center_in_region(frame, v, regions.get(v), 1.0) - frame.vertex(v));
        let offset = PAIRS.map(|(i, j)| base[i] - base[j]);
        Problem { base, dir, offset }
    }

    fn delta(&self, k: usize, r: &[f64; 3]) -> Vec2 {
        let (i, j) = PAIRS[k];
        self.offset[k] + self.dir[i] * r[i] - self.dir[j] * r[j]
    }

    /// Largest `| |delta| - |r_i + sign r_j| |` over the pairs.
    fn residual(&self, r: &[f64; 3], sign: [f64; 3]) -> f64 {
        (0..3)
            .map(|k| {
                let (i, j) = PAIRS[k];
                (self.delta(k, r).norm() - (r[i] + sign[k] * r[j]).abs()).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Newton step for `h_k = |delta_k|^2 - (r_i + sign_k r_j)^2`.
    fn step(&self, r: &[f64; 3], sign: [f64; 3]) -> Option<[f64; 3]> {
        let mut jac = [[0.0; 3]; 3];
        let mut h = [0.0; 3];
        for k in 0..3 {
            let (i, j) = PAIRS[k];
            let d = self.delta(k, r);
            let t = r[i] + sign[k] * r[j];
            h[k] = d.norm_squared() - t * t;
            jac[k][i] = 2.0 * d.dot(&self.dir[i]) - 2.0 * t;
            jac[k][j] = -2.0 * d.dot(&self.dir[j]) - 2.0 * sign[k] * t;
        }
        solve3(&jac, &h)
    }

    fn newton(&self, start: [f64; 3], sign: [f64; 3], cfg: &OracleConfig) -> Option<[f64; 3]> {
        let mut r = start;
        for _ in 0..cfg.max_iterations {
            let step = self.step(&r, sign)?;
            // Newton in u = sqrt(r); r = u^2 stays positive without damping
            let next = [0, 1, 2].map(|i| {
                let u = r[i].sqrt();
                let v = u - step[i] / (2.0 * u);
                v * v
            });
            if next.iter().any(|x| !x.is_finite() || *x <= 0.0 || *x > 1e6) {
                return None;
            }
            // run to stagnation: a small radius needs relative, not absolute, accuracy
            let settled = next.iter().zip(&r).all(|(a, b)| (a - b).abs() <= 1e-15 * b);
            r = next;
            if settled {
                break;
            }
        }
        (self.residual(&r, sign) < cfg.accept_tolerance).then_some(r)
    }

    /// Positive roots `x` of `h_k = 0` with `r[0]` fixed, for the pair `k`
    /// of circle 0 with circle `k + 1`.
    fn partner_radii(&self, k: usize, r0: f64, sign: f64) -> [Option<f64>; 2] {
        let j = k + 1;
        let w = self.offset[k] + self.dir[0] * r0;
        let qa = self.dir[j].norm_squared() - 1.0;
        let qb = -2.0 * w.dot(&self.dir[j]) - 2.0 * sign * r0;
        let qc = w.norm_squared() - r0 * r0;
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 || qa <= 0.0 {
            return [None, None];
        }
        let sq = disc.sqrt();
        // cancellation-free pair
        let q = -0.5 * (qb + qb.signum() * sq);
        let (x1, x2) = if q == 0.0 { (0.0, 0.0) } else { (q / qa, qc / q) };
        let (lo, hi) = if x1 < x2 { (x1, x2) } else { (x2, x1) };
        [lo, hi].map(|x| (x > 0.0 && x.is_finite()).then_some(x))
    }

    /// The `(2,3)` condition along one choice of quadratic roots.
    fn sweep_value(&self, r0: f64, sign: [f64; 3], pick: [usize; 2]) -> Option<([f64; 3], f64)> {
        let r1 = self.partner_radii(0, r0, sign[0])[pick[0]]?;
        let r2 = self.partner_radii(1, r0, sign[1])[pick[1]]?;
        let r = [r0, r1, r2];
        let t = r1 + sign[2] * r2;
        Some((r, self.delta(2, &r).norm_squared() - t * t))
    }

    /// Bracketed roots of the sweep function, polished on the full system.
    fn sweep(&self, sign: [f64; 3], cfg: &OracleConfig) -> Vec<[f64; 3]> {
        let n = cfg.samples.max(2);
        let ratio = (cfg.hi / cfg.lo).ln();
        let at = |k: usize| cfg.lo * (ratio * k as f64 / (n - 1) as f64).exp();
        let mut found = Vec::new();
        for pick in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            let mut prev = self.sweep_value(at(0), sign, pick).map(|(_, g)| (at(0), g));
            for k in 1..n {
                let x = at(k);
                let cur = self.sweep_value(x, sign, pick).map(|(_, g)| (x, g));
                if let (Some((xa, ga)), Some((xb, gb))) = (prev, cur) {
                    if ga == 0.0 || ga.signum() != gb.signum() {
                        if let Some(r) = self.bisect(xa, ga, xb, sign, pick) {
                            found.extend(self.newton(r, sign, cfg));
                        }
                    }
                }
                prev = cur;
            }
        }
        found
    }

    fn bisect(&self, mut xa: f64, mut ga: f64, mut xb: f64, sign: [f64; 3], pick: [usize; 2]) -> Option<[f64; 3]> {
        for _ in 0..200 {
            let mid = (xa * xb).sqrt();
            if mid <= xa || mid >= xb {
                break;
            }
            let (_, gm) = self.sweep_value(mid, sign, pick)?;
            if gm == 0.0 {
                xa = mid;
                break;
            }
            if gm.signum() == ga.signum() {
                xa = mid;
                ga = gm;
            } else {
                xb = mid;
            }
        }
        self.sweep_value(xa, sign, pick).map(|(r, _)| r)
    }

    /// Both circles of a pair touch the side line they share. In a genuine
    /// configuration they sit on the same side of it and their contact
    /// points are `2 sqrt(r_i r_j)` apart; roots where the points (nearly)
    /// coincide are degenerate double roots of the squared equations.
    fn distinct_contacts(&self, r: &[f64; 3], cfg: &OracleConfig) -> bool {
        PAIRS.iter().all(|&(i, j)| {
            let line = (self.base[j] - self.base[i]).normalize();
            let along = |k: usize| (self.base[k] + self.dir[k] * r[k] - self.base[i]).dot(&line);
            let gap = (along(i) - along(j)).abs();
            gap > cfg.distinct_tolerance && gap > cfg.degenerate_ratio * 2.0 * (r[i] * r[j]).sqrt()
        })
    }
}

fn solve3(m: &[[f64; 3]; 3], b: &[f64; 3]) -> Option<[f64; 3]> {
    let det = |a: &[[f64; 3]; 3]| {
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    };
    let d = det(m);
    if d == 0.0 || !d.is_finite() {
        return None;
    }
    let mut x = [0.0; 3];
    for (c, xc) in x.iter_mut().enumerate() {
        let mut a = *m;
        for row in 0..3 {
            a[row][c] = b[row];
        }
        *xc = det(&a) / d;
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

const ORDERS: [[usize; 3]; 3] = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];

const BRANCHES: [[f64; 3]; 8] = [
    [1.0, 1.0, 1.0],
    [1.0, 1.0, -1.0],
    [1.0, -1.0, 1.0],
    [1.0, -1.0, -1.0],
    [-1.0, 1.0, 1.0],
    [-1.0, 1.0, -1.0],
    [-1.0, -1.0, 1.0],
    [-1.0, -1.0, -1.0],
];

fn tangency_of(sign: [f64; 3]) -> [TangencyType; 3] {
    sign.map(|x| {
        if x > 0.0 {
            TangencyType::External
        } else {
            TangencyType::Internal
        }
    })
}

/// All distinct positive tangent triples for one region assignment, sorted
/// lexicographically by radii.
pub fn oracle_solve(frame: &Frame, regions: RegionAssignment, cfg: &OracleConfig) -> Result<Vec<OracleRoot>> {
    let s = frame.semiperimeter();
    // roots bunched together along one radius are spread along another
    let mut per_branch: Vec<([f64; 3], [f64; 3])> = Vec::new();
    for order in ORDERS {
        let problem = Problem::new(frame, regions, order);
        let pair_of = PAIRS.map(|(i, j)| {
            let (a, b) = (order[i].min(order[j]), order[i].max(order[j]));
            PAIRS.iter().position(|&p| p == (a, b)).expect("pair")
        });
        for sign in BRANCHES {
            for r in problem.sweep(sign, cfg) {
                if !problem.distinct_contacts(&r, cfg) {
                    continue;
                }
                let mut radii = [0.0; 3];
                let mut signs = [0.0; 3];
                for i in 0..3 {
                    radii[order[i]] = r[i];
                    signs[pair_of[i]] = sign[i];
                }
                per_branch.push((radii, signs));
            }
        }
    }

    let mut clusters: Vec<([f64; 3], [f64; 3])> = Vec::new();
    for (r, sign) in per_branch {
        let seen = clusters
            .iter()
            .any(|(c, _)| c.iter().zip(&r).all(|(a, b)| (a - b).abs() < cfg.cluster_tolerance));
        if !seen {
            clusters.push((r, sign));
        }
    }

    let mut roots: Vec<OracleRoot> = clusters
        .into_iter()
        .filter_map(|(r, sign)| {
            let radii = r.map(|x| x * s);
            let tangency = tangency_of(sign);
            // independent recheck in length units
            let circles = construct::place(frame, regions, radii);
            let recheck = PAIRS
                .iter()
                .zip(tangency)
                .map(|(&(i, j), kind)| {
                    let d = (circles[i].center - circles[j].center).norm();
                    let target = match kind {
                        TangencyType::External => radii[i] + radii[j],
                        TangencyType::Internal => (radii[i] - radii[j]).abs(),
                    };
                    (d - target).abs()
                })
                .fold(0.0, f64::max);
            (recheck < 1e-10 * s).then_some(OracleRoot {
                radii,
                tangency,
                residual: recheck,
            })
        })
        .collect();
    roots.sort_by(|a, b| {
        a.radii
            .iter()
            .zip(&b.radii)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    if roots.is_empty() {
        return Err(Error::OracleDivergence {
            regions: regions.to_string(),
        });
    }
    Ok(roots)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub mode: FormulaMode,
    pub tolerance: f64,
    pub oracle: OracleConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: FormulaMode::Corrected,
            tolerance: MATCH_TOLERANCE,
            oracle: OracleConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerifyStatus {
    /// The published formula agrees with an oracle root.
    Match,
    /// The published formula does not, the pattern-corrected one does.
    Corrected,
    Fail,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub variant: TripletVariant,
    /// Radii as shipped in the selected formula mode.
    pub closed_form_radii: RadiiTriplet,
    /// Nearest oracle root.
    pub oracle_radii: RadiiTriplet,
    /// Between `closed_form_radii` and `oracle_radii`.
    pub max_radius_rel_error: f64,
    /// Same measure for the published formula.
    pub verbatim_rel_error: f64,
    /// Largest pairwise tangency residual of the placed closed-form circles.
    pub max_geometric_residual: f64,
    pub tangency_types: [TangencyType; 3],
    pub case: Case,
    pub status: VerifyStatus,
}

/// Verification context for one triangle; oracle runs are cached per case.
pub struct Verifier {
    frame: Frame,
    q: DerivedQuantities,
    ang: AuxiliaryAngles,
    opts: VerifyOptions,
    cache: [OnceLock<Result<Vec<OracleRoot>>>; 7],
}

impl Verifier {
    pub fn new(t: &Triangle, opts: VerifyOptions) -> Verifier {
        let q = t.derive();
        Verifier {
            frame: Frame::canonical(t),
            ang: q.auxiliary_angles(),
            q,
            opts,
            cache: Default::default(),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn roots(&self, case: Case) -> Result<&[OracleRoot]> {
        self.cache[case.id() as usize - 1]
            .get_or_init(|| oracle_solve(&self.frame, case.regions(), &self.opts.oracle))
            .as_deref()
            .map_err(Clone::clone)
    }

    /// Nearest oracle root over the given cases.
    fn nearest(&self, radii: &[f64; 3], cases: &[Case]) -> Result<(OracleRoot, Case, f64)> {
        let mut best: Option<(OracleRoot, Case, f64)> = None;
        for &case in cases {
            for root in self.roots(case)? {
                let err = root.max_rel_error(radii);
                if best.as_ref().is_none_or(|b| err < b.2) {
                    best = Some((*root, case, err));
                }
            }
        }
        Ok(best.expect("oracle_solve never returns an empty list"))
    }

    pub fn verify(&self, v: TripletVariant) -> Result<VerificationReport> {
        let shipped = closed_form::radii_for_variant_with(&self.q, &self.ang, v, self.opts.mode);
        let verbatim = closed_form::radii_for_variant_with(&self.q, &self.ang, v, FormulaMode::PaperVerbatim);
        let placed = construct::best_placement(&self.frame, &shipped);
        let s = self.frame.semiperimeter();
        let cases = if placed.max_residual < construct::PLACEMENT_TOLERANCE * s {
            vec![placed.case]
        } else {
            Case::for_family(v.family())
        };
        let (root, case, shipped_err) = self.nearest(&shipped.radii(), &cases)?;
        let verbatim_err = if verbatim == shipped {
            shipped_err
        } else {
            self.nearest(&verbatim.radii(), &Case::for_family(v.family()))?.2
        };
        let tol = self.opts.tolerance;
        let status = if verbatim_err < tol {
            VerifyStatus::Match
        } else if self.opts.mode == FormulaMode::Corrected && v.has_published_typo() && shipped_err < tol {
            VerifyStatus::Corrected
        } else {
            VerifyStatus::Fail
        };
        let mut oracle_radii = RadiiTriplet::from_radii(root.radii, v);
        oracle_radii.corrected_from_paper = false;
        Ok(VerificationReport {
            variant: v,
            closed_form_radii: shipped,
            oracle_radii,
            max_radius_rel_error: shipped_err,
            verbatim_rel_error: verbatim_err,
            max_geometric_residual: placed.max_residual,
            tangency_types: root.tangency,
            case,
            status,
        })
    }
}

pub fn verify_variant(t: &Triangle, v: TripletVariant, opts: &VerifyOptions) -> Result<VerificationReport> {
    Verifier::new(t, *opts).verify(v)
}

/// Reports for the given variants, in the order given.
pub fn verify_selected(t: &Triangle, variants: &[TripletVariant], opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let verifier = Verifier::new(t, *opts);
    variants.iter().map(|&v| verifier.verify(v)).collect()
}

pub fn verify_all(t: &Triangle, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let all: Vec<TripletVariant> = TripletVariant::all().collect();
    verify_selected(t, &all, opts)
}

/// Which of the two candidate formulas for a disputed variant agree with
/// the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Adjudication {
    pub verbatim_passes: bool,
    pub corrected_passes: bool,
}

/// Runs the oracle for the disputed variants `b6` and `c7`.
pub fn adjudicate(t: &Triangle, opts: &VerifyOptions) -> Result<[(TripletVariant, Adjudication); 2]> {
    let verifier = Verifier::new(t, *opts);
    let check = |label: &str| -> Result<(TripletVariant, Adjudication)> {
        let v = TripletVariant::parse(label)?;
        let cases = Case::for_family(v.family());
        let err = |mode| -> Result<f64> {
            let r = closed_form::radii_for_variant_with(&verifier.q, &verifier.ang, v, mode);
            Ok(verifier.nearest(&r.radii(), &cases)?.2)
        };
        Ok((
            v,
            Adjudication {
                verbatim_passes: err(FormulaMode::PaperVerbatim)? < opts.tolerance,
                corrected_passes: err(FormulaMode::Corrected)? < opts.tolerance,
            },
        ))
    };
    Ok([check("b6")?, check("c7")?])
}

/// Oracle roots of a family, across its cases.
pub fn family_roots(t: &Triangle, family: Family, cfg: &OracleConfig) -> Result<Vec<(Case, OracleRoot)>> {
    let frame = Frame::canonical(t);
    let mut out = Vec::new();
    for case in Case::for_family(family) {
        for root in oracle_solve(&frame, case.regions(), cfg)? {
            out.push((case, root));
        }
    }
    Ok(out)
}
