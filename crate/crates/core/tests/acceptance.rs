//! Exit criteria. One test per criterion; each prints a PASS/FAIL line with
//! the measured numbers before asserting.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use malfatti::closed_form::{self, Family, TripletVariant};
use malfatti::construct::{self, classify_case, Case, Frame, Region, RegionAssignment, TangencyType, PAIRS};
use malfatti::oracle::{self, OracleConfig, VerifyOptions, VerifyStatus};
use malfatti::system::{self, SystemSpec};
use malfatti::{cli, Triangle, Vec2, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regex::Regex;

fn report(name: &str, ok: bool, detail: String, elapsed: Duration) {
    println!("{} {name}: {detail} ({:.2?})", if ok { "PASS" } else { "FAIL" }, elapsed);
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

/// Sides uniform in `[0.1, 10)`, kept when every `s - side` exceeds
/// `1e-3 * s` and no two sides agree to 1e-3.
fn random_scalene(rng: &mut ChaCha8Rng) -> Triangle {
    loop {
        let sides: [f64; 3] = [rng.gen_range(0.1..10.0), rng.gen_range(0.1..10.0), rng.gen_range(0.1..10.0)];
        let s = sides.iter().sum::<f64>() / 2.0;
        let proper = sides.iter().all(|x| s - x > 1e-3 * s);
        let scalene = (0..3).all(|i| rel(sides[i], sides[(i + 1) % 3]) > 1e-3);
        if proper && scalene {
            return Triangle::from_sides(sides[0], sides[1], sides[2]).unwrap();
        }
    }
}

/// Distance from `p` to the line through `q1`, `q2`.
fn line_distance(p: Vec2, q1: Vec2, q2: Vec2) -> f64 {
    let d = q2 - q1;
    (d.x * (p.y - q1.y) - d.y * (p.x - q1.x)).abs() / d.norm()
}

#[test]
fn criterion_1_equilateral_malfatti() {
    let start = Instant::now();
    let t = Triangle::from_sides(1.0, 1.0, 1.0).unwrap();
    let q = t.derive();
    let expected = (3f64.sqrt() - 1.0) / 4.0;
    let i1 = closed_form::radii_for_variant(&q, &q.auxiliary_angles(), TripletVariant::from_index(1).unwrap());
    let formula_err = i1.radii().iter().map(|&r| rel(r, expected)).fold(0.0, f64::max);

    // Symmetric configuration: equal circles on the bisectors, centers at
    // distance 2r from their vertex, so neighbours are sqrt(3) (R - 2r) apart
    // with R the circumradius. Tangency needs that distance to equal 2r.
    let big_r = 1.0 / 3f64.sqrt();
    let gap = |r: f64| 3f64.sqrt() * (big_r - 2.0 * r) - 2.0 * r;
    let (mut lo, mut hi) = (0.0, big_r / 2.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let symmetric = 0.5 * (lo + hi);
    let symmetric_err = i1.radii().iter().map(|&r| rel(r, symmetric)).fold(0.0, f64::max);

    let verified = oracle::verify_variant(&t, TripletVariant::from_index(1).unwrap(), &VerifyOptions::default()).unwrap();
    let oracle_err = verified.oracle_radii.radii().iter().map(|&r| rel(r, expected)).fold(0.0, f64::max);

    let elapsed = start.elapsed();
    let ok = formula_err < 1e-12 && symmetric_err < 1e-7 && oracle_err < 1e-7 && elapsed < Duration::from_secs(1);
    report(
        "classic Malfatti on the unit equilateral triangle",
        ok,
        format!("closed form {formula_err:.1e} (<1e-12), 1-D solve {symmetric_err:.1e} (<1e-7), oracle {oracle_err:.1e} (<1e-7)"),
        elapsed,
    );
    assert!(ok);
}

#[test]
fn criterion_2_right_triangle_fixture() {
    let start = Instant::now();
    let fixture = [0.751903, 0.664843, 0.507967];
    let t = Triangle::from_sides(3.0, 4.0, 5.0).unwrap();
    let q = t.derive();
    let spec = system::build_system(&q, Family::Incircle);
    let [l, m, n] = spec.p;
    let exact = [
        (q.s - 6.0).abs(),
        (q.r - 1.0).abs(),
        (l - 3.0).abs(),
        (m - 2.0).abs(),
        (n - 1.0).abs(),
        (l * m * n - 6.0).abs(),
        (l + m + n - 6.0).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);

    let i1 = TripletVariant::from_index(1).unwrap();
    let enumerated = system::solve_by_enumeration(&spec).unwrap();
    let sol = enumerated.iter().find(|s| s.variant() == Some(i1)).unwrap();
    let by_enumeration = system::to_radii(&spec, sol).radii();
    let roots = oracle::oracle_solve(&Frame::canonical(&t), Case::new(1).unwrap().regions(), &OracleConfig::default()).unwrap();
    let abs_err = |r: &[f64; 3]| r.iter().zip(&fixture).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let enum_err = abs_err(&by_enumeration);
    let oracle_err = roots.iter().map(|r| abs_err(&r.radii)).fold(f64::INFINITY, f64::min);

    let elapsed = start.elapsed();
    let ok = exact < 1e-12 && enum_err < 1e-5 && oracle_err < 1e-5 && elapsed < Duration::from_secs(1);
    report(
        "3-4-5 fixture (0.751903, 0.664843, 0.507967)",
        ok,
        format!(
            "s, r, (l,m,n), lmn=l+m+n off by {exact:.1e} (<1e-12); enumeration {by_enumeration:?} off by {enum_err:.2e} (<1e-5); \
             nearest oracle root off by {oracle_err:.2e} (<1e-5)"
        ),
        elapsed,
    );
    assert!(ok);
}

#[test]
fn criterion_3_thirty_two_triplets_on_random_triangles() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x3232);
    let opts = VerifyOptions::default();
    let mut fails = Vec::new();
    let mut worst_line = 0.0f64;
    let mut worst_pair = 0.0f64;
    let mut reports = 0;
    for _ in 0..100 {
        let t = random_scalene(&mut rng);
        let s = t.semiperimeter();
        let verified = oracle::verify_all(&t, &opts).unwrap();
        reports += verified.len();
        fails.extend(
            verified
                .iter()
                .filter(|r| r.status == VerifyStatus::Fail)
                .map(|r| format!("{} on {:?}", r.variant, t.sides())),
        );
        let q = t.derive();
        let frame = Frame::canonical(&t);
        for triplet in closed_form::all_triplets(&q, &q.auxiliary_angles()) {
            let config = construct::best_placement(&frame, &triplet);
            for (k, circle) in config.circles.iter().enumerate() {
                let v = Vertex::from_index(k);
                let p = frame.vertex(v);
                for other in [v.next(), v.prev()] {
                    let d = line_distance(circle.center, p, frame.vertex(other));
                    worst_line = worst_line.max((d - circle.radius).abs() / s);
                }
            }
            for (k, &(i, j)) in PAIRS.iter().enumerate() {
                let (ci, cj) = (config.circles[i], config.circles[j]);
                let d = (ci.center - cj.center).norm();
                let target = match config.tangency_types[k] {
                    TangencyType::External => ci.radius + cj.radius,
                    TangencyType::Internal => (ci.radius - cj.radius).abs(),
                };
                worst_pair = worst_pair.max((d - target).abs() / s);
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = reports == 3200 && fails.is_empty() && worst_line < 1e-9 && worst_pair < 1e-9 && elapsed < Duration::from_secs(60);
    report(
        "32 verified triplets on 100 random scalene triangles",
        ok,
        format!(
            "{reports} reports, {} Fail {:?}; worst line residual {worst_line:.1e}·s, pair residual {worst_pair:.1e}·s (<1e-9)",
            fails.len(),
            fails.iter().take(5).collect::<Vec<_>>()
        ),
        elapsed,
    );
    assert!(ok);
}

#[test]
fn criterion_4_candidate_filtering_keeps_eight() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0808);
    let mut worst = 0.0f64;
    let mut problems = Vec::new();
    for family in [Family::Incircle, Family::ExA] {
        let mut done = 0;
        while done < 100 {
            // one free parameter is solved from the constraint
            let p = match family {
                Family::Incircle => {
                    let (l, m) = (rng.gen_range(0.2..6.0), rng.gen_range(0.2..6.0));
                    if l * m < 1.05 {
                        continue;
                    }
                    [l, m, (l + m) / (l * m - 1.0)]
                }
                _ => {
                    let (m, n) = (rng.gen_range(0.05..3.0), rng.gen_range(0.05..3.0));
                    if m * n > 0.95 {
                        continue;
                    }
                    [(m + n) / (1.0 - m * n), m, n]
                }
            };
            done += 1;
            let spec = SystemSpec::new(family, p, 1.0).unwrap();
            let radicals = system::solve_in_closed_form(&spec);
            match system::filter_solutions(&spec, &system::enumerate_candidates(&spec)) {
                Ok(kept) => {
                    for sol in &kept {
                        match radicals.iter().find(|r| r.slot == sol.slot && sol.slot.is_some()) {
                            Some(r) => {
                                let d = r.as_array().iter().zip(sol.as_array()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                                worst = worst.max(d);
                            }
                            None => problems.push(format!("{} {p:?}: unmatched survivor", family.name())),
                        }
                    }
                }
                Err(e) => problems.push(format!("{} {p:?}: {e}", family.name())),
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = problems.is_empty() && worst < 1e-9 && elapsed < Duration::from_secs(30);
    report(
        "64 candidates filter to the 8 radical solutions",
        ok,
        format!("200 parameter sets, {} problems {:?}; worst componentwise gap {worst:.1e} (<1e-9)", problems.len(), problems.first()),
        elapsed,
    );
    assert!(ok);
}

/// Cells of the three side lines, as signs relative to the triangle's own
/// side of the lines opposite A, B, C.
fn cells() -> Vec<[i8; 3]> {
    let mut out = Vec::new();
    for x in [1, -1] {
        for y in [1, -1] {
            for z in [1, -1] {
                // the three lines never share a side away from the triangle
                if [x, y, z] != [-1, -1, -1] {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

/// The cells covered by the angle at `v` bounded by the rays toward the
/// previous and the next vertex, each possibly reversed.
fn sector(v: Vertex, region: Region) -> BTreeSet<[i8; 3]> {
    let (keep_prev, keep_next) = match region {
        Region::Interior => (true, true),
        Region::Vertical => (false, false),
        Region::ExtFirst => (true, false),
        Region::ExtSecond => (false, true),
    };
    // keeping the ray toward prev keeps prev's side of the line through v
    // and next, which is the line opposite prev
    let sign = |keep: bool| if keep { 1 } else { -1 };
    cells()
        .into_iter()
        .filter(|c| c[v.prev().index()] == sign(keep_prev) && c[v.next().index()] == sign(keep_next))
        .collect()
}

#[test]
fn criterion_5_seven_consistent_region_assignments() {
    let start = Instant::now();
    let mut derived = Vec::new();
    let mut table = Vec::new();
    for assignment in RegionAssignment::all() {
        let sectors = Vertex::ALL.map(|v| sector(v, assignment.get(v)));
        let meets = PAIRS.iter().all(|&(i, j)| !sectors[i].is_disjoint(&sectors[j]));
        if meets {
            derived.push(assignment);
        }
        if let Some(case) = classify_case(assignment) {
            table.push((case.id(), assignment));
        }
    }
    table.sort();
    let expected = ["III", "ISF", "VFS", "FIS", "SVF", "SFI", "FSV"];
    let table_text: Vec<String> = table.iter().map(|(_, a)| a.to_string()).collect();
    let mut derived_text: Vec<String> = derived.iter().map(|a| a.to_string()).collect();
    derived_text.sort();
    let mut sorted_table = table_text.clone();
    sorted_table.sort();
    let elapsed = start.elapsed();
    let ok = RegionAssignment::all().count() == 64
        && table.len() == 7
        && table_text == expected
        && derived_text == sorted_table
        && elapsed < Duration::from_secs(1);
    report(
        "7 of 64 region assignments are consistent",
        ok,
        format!("classified {table_text:?}; derived from pairwise sector overlap {derived_text:?}"),
        elapsed,
    );
    assert!(ok);
}

#[test]
fn criterion_6_figure_set() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let run = |out: &std::path::Path| {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = cli::run(
            ["malfatti", "render", "--angles", "45", "54", "--variants", "1..32", "--out", out.to_str().unwrap()],
            &mut o,
            &mut e,
        );
        (code, String::from_utf8(e).unwrap())
    };
    let (first, second) = (dir.path().join("one"), dir.path().join("two"));
    let (code1, err1) = run(&first);
    let (code2, _) = run(&second);

    let t = Triangle::from_angles_deg(45.0, 54.0, 1.0).unwrap();
    let s = t.semiperimeter();
    let circle_re = Regex::new(r#"<circle class="tangent-circle" data-index="\d" cx="([-\d.]+)" cy="([-\d.]+)" r="([-\d.]+)""#).unwrap();
    let poly_re = Regex::new(r#"<polygon class="triangle" points="([^"]+)""#).unwrap();
    let mut files = 0;
    let mut identical = true;
    let mut worst = 0.0f64;
    let mut missing = Vec::new();
    for v in TripletVariant::all() {
        let name = format!("{}.svg", v.label());
        let (Ok(a), Ok(b)) = (std::fs::read(first.join(&name)), std::fs::read(second.join(&name))) else {
            missing.push(name);
            continue;
        };
        files += 1;
        identical &= a == b;
        let svg = String::from_utf8(a).unwrap();
        let circles: Vec<(Vec2, f64)> = circle_re
            .captures_iter(&svg)
            .map(|c| (Vec2::new(c[1].parse().unwrap(), c[2].parse().unwrap()), c[3].parse().unwrap()))
            .collect();
        let corners: Vec<Vec2> = poly_re.captures(&svg).unwrap()[1]
            .split(' ')
            .map(|p| {
                let (x, y) = p.split_once(',').unwrap();
                Vec2::new(x.parse().unwrap(), y.parse().unwrap())
            })
            .collect();
        assert_eq!(circles.len(), 3);
        for &(i, j) in &PAIRS {
            let d = (circles[i].0 - circles[j].0).norm();
            let external = (d - circles[i].1 - circles[j].1).abs();
            let internal = (d - (circles[i].1 - circles[j].1).abs()).abs();
            worst = worst.max(external.min(internal) / s);
        }
        for (k, (center, r)) in circles.iter().enumerate() {
            for other in [(k + 1) % 3, (k + 2) % 3] {
                worst = worst.max((line_distance(*center, corners[k], corners[other]) - r).abs() / s);
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = code1 == 0 && code2 == 0 && files == 32 && missing.is_empty() && identical && worst < 1e-5 && elapsed < Duration::from_secs(10);
    report(
        "32 figures of the 45/54/81 triangle",
        ok,
        format!("{files} files, byte-identical across runs: {identical}, worst tangency from serialized coordinates {worst:.1e}·s (<1e-5) {err1}"),
        elapsed,
    );
    assert!(ok);
}

#[test]
fn criterion_7_typo_adjudication() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0607);
    let opts = VerifyOptions::default();
    let mut outcomes = BTreeSet::new();
    for _ in 0..10 {
        let t = random_scalene(&mut rng);
        for (v, a) in oracle::adjudicate(&t, &opts).unwrap() {
            outcomes.insert((v.label(), a.verbatim_passes, a.corrected_passes));
        }
    }
    // frozen: the published form fails, the pattern-corrected form passes
    let frozen: BTreeSet<(String, bool, bool)> = [("b6".to_string(), false, true), ("c7".to_string(), false, true)].into();

    let verify = |extra: &[&str]| {
        let mut args = vec!["malfatti", "verify", "--sides", "3", "4", "5", "--variants", "b6,c7"];
        args.extend_from_slice(extra);
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = cli::run(args, &mut o, &mut e);
        let doc: serde_json::Value = serde_json::from_slice(&o).unwrap();
        let statuses: Vec<String> = doc["reports"].as_array().unwrap().iter().map(|r| r["status"].as_str().unwrap().to_string()).collect();
        (code, statuses)
    };
    let (code_default, default_statuses) = verify(&[]);
    let (code_verbatim, verbatim_statuses) = verify(&["--paper-verbatim"]);

    let elapsed = start.elapsed();
    let ok = outcomes == frozen
        && code_default == 0
        && default_statuses == ["Corrected", "Corrected"]
        && code_verbatim == 1
        && verbatim_statuses == ["Fail", "Fail"]
        && elapsed < Duration::from_secs(10);
    report(
        "b6/c7 adjudication is unanimous and frozen",
        ok,
        format!(
            "outcomes over 10 triangles {outcomes:?}; default exit {code_default} {default_statuses:?}; verbatim exit {code_verbatim} {verbatim_statuses:?}"
        ),
        elapsed,
    );
    assert!(ok);
}

#[test]
fn criterion_8_scale_and_relabel_invariance() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0088);
    let t = random_scalene(&mut rng);
    let triplets = |t: &Triangle| {
        let q = t.derive();
        closed_form::all_triplets(&q, &q.auxiliary_angles())
    };
    let base = triplets(&t);

    let mut scale_err = 0.0f64;
    for k in [1e-3, 0.37, 1.0, 250.0, 1e3] {
        for (x, y) in base.iter().zip(triplets(&t.scaled(k).unwrap())) {
            for (a, b) in x.radii().iter().zip(y.radii()) {
                scale_err = scale_err.max(rel(a * k, b));
            }
        }
    }

    let sides = t.sides();
    let mut relabel_err = 0.0f64;
    let mut unmatched = 0;
    for perm in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]] {
        let relabeled = Triangle::from_sides(sides[perm[0]], sides[perm[1]], sides[perm[2]]).unwrap();
        let mut pool: Vec<[f64; 3]> = base.iter().map(|x| x.radii()).collect();
        for y in triplets(&relabeled) {
            let r = y.radii();
            // new vertex k is old vertex perm[k]
            let mut back = [0.0; 3];
            for k in 0..3 {
                back[perm[k]] = r[k];
            }
            let best = pool
                .iter()
                .enumerate()
                .map(|(i, x)| (i, x.iter().zip(&back).map(|(a, b)| rel(*a, *b)).fold(0.0, f64::max)))
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match best {
                Some((i, e)) if e < 1e-9 => {
                    relabel_err = relabel_err.max(e);
                    pool.swap_remove(i);
                }
                _ => unmatched += 1,
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = scale_err < 1e-12 && unmatched == 0 && relabel_err < 1e-9 && elapsed < Duration::from_secs(5);
    report(
        "scaling and relabeling",
        ok,
        format!("96 radii scale with error {scale_err:.1e} (<1e-12); 6 relabelings, {unmatched} unmatched, worst {relabel_err:.1e} (<1e-9)"),
        elapsed,
    );
    assert!(ok);
}
