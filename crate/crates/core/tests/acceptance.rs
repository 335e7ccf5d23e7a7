//! Acceptance suite: one PASS/FAIL line per criterion. All tolerances are
//! exact integer or boolean equality. Runs without the libtest harness so the
//! lines always reach the output.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use galois_scope::covers::{analyze_cover, cover_checks, CoverSpec, P1Point};
use galois_scope::curve::{
    dual_degrees, flex_scan, genus, points_over, Mat3, PlaneCurve, ProjPoint, SampleConfig, Sampler, Vec3,
};
use galois_scope::galois::{
    bound_check, delta_scan, exact_split_test, galois_bound, ramification_profile, random_curve, sweep,
    two_galois_line_check, verify_certificate, DeltaReport, Engine, ExactOutcome, GaloisConfig, Verdict,
};
use galois_scope::poly::resultant_y;
use galois_scope::{Error, Fe, Field, GaloisField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SWEEP_SEED: u64 = 1;
const SWEEP_COUNT: usize = 50;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn hermitian() -> PlaneCurve {
    PlaneCurve::parse("X^4+Y^4+Z^4", 3, 1).unwrap()
}

/// Points of `X^4+Y^4+Z^4 = 0` over GF(9) by direct enumeration of
/// normalized triples.
fn brute_force_points(k: &Arc<GaloisField>) -> BTreeSet<ProjPoint> {
    let f = &**k;
    let q4 = |x: Fe| f.pow(&x, 4);
    let mut out = BTreeSet::new();
    let els: Vec<Fe> = k.elements().collect();
    let mut consider = |c: Vec3| {
        if f.add(&f.add(&q4(c[0]), &q4(c[1])), &q4(c[2])).0 == 0 {
            out.insert(ProjPoint::new(k, c).unwrap());
        }
    };
    for &y in &els {
        for &z in &els {
            consider([Fe(1), y, z]);
        }
    }
    for &z in &els {
        consider([Fe(0), Fe(1), z]);
    }
    consider([Fe(0), Fe(0), Fe(1)]);
    out
}

fn lift_all(pts: &[ProjPoint], k: &Arc<GaloisField>) -> BTreeSet<ProjPoint> {
    pts.iter().map(|p| p.to_field(k).unwrap()).collect()
}

fn cfg(engine: Engine, jobs: usize) -> GaloisConfig {
    GaloisConfig {
        engine,
        jobs,
        seed: SWEEP_SEED,
        ..GaloisConfig::default()
    }
}

struct Shared {
    census: DeltaReport,
    sweep_curves: Vec<PlaneCurve>,
    sweep_reports: Vec<DeltaReport>,
}

fn criterion_1(sh: &Shared) -> Outcome {
    let c = hermitian();
    let f9 = GaloisField::get(3, 2).unwrap();
    let oracle = brute_force_points(&f9);
    let bound = (4u64 - 1).pow(3) + 1;
    let rep = &sh.census;
    let mut certified = 0;
    let mut split = 0;
    for r in rep.reports.iter().filter(|r| r.verdict == Verdict::Galois) {
        if let Some(cert) = r.certificate() {
            if cert.order() == 3 && verify_certificate(&c, &r.point, cert).unwrap() {
                certified += 1;
            }
        }
        if let Ok(ExactOutcome::Split { .. }) = exact_split_test(&c, &r.point, &[1, 2, 3, 4]) {
            split += 1;
        }
    }
    let pass = rep.delta_found() == 28
        && bound == 28
        && rep.bound() == bound
        && rep.complete
        && lift_all(&rep.points, &f9) == oracle
        && certified == 28
        && split == 28;
    outcome(
        pass,
        format!(
            "delta_found={} bound={} enumerated GF(9)-points={} certified(order 3)={} exact-split={}",
            rep.delta_found(),
            bound,
            oracle.len(),
            certified,
            split
        ),
    )
}

fn criterion_2(sh: &Shared) -> Outcome {
    let mut max = 0;
    let mut violations = 0;
    for (curve, rep) in sh.sweep_curves.iter().zip(&sh.sweep_reports) {
        let chk = bound_check(rep, Some(curve)).unwrap();
        violations += (!chk.pass || rep.delta_found() as u64 > 28) as usize;
        max = max.max(rep.delta_found());
    }
    let lib = sweep(7, 4, SWEEP_COUNT, &cfg(Engine::Auto, 8));
    let lib_ok = matches!(&lib, Ok(s) if s.passed == SWEEP_COUNT
        && s.curves == sh.sweep_reports.iter().map(|r| r.curve.clone()).collect::<Vec<_>>());
    outcome(
        sh.sweep_curves.len() == SWEEP_COUNT && violations == 0 && lib_ok,
        format!("{} quartics over GF(7), seed {SWEEP_SEED}: max delta_found={max} <= 28, violations={violations}, exit-2 events={}",
            sh.sweep_curves.len(), (!lib_ok) as usize),
    )
}

fn criterion_3() -> Outcome {
    let c = hermitian();
    let (m, g, d) = (3u32, genus(&c).unwrap(), 4i64);
    let f = flex_scan(&c, 2, m, g).unwrap();
    // every GF(9)-point has contact d = 4, one above M
    let oracle_excess = brute_force_points(&GaloisField::get(3, 2).unwrap()).len() as u64;
    let bound = (m as i64 + 1) * (2 * g as i64 - 2) + 3 * d;
    let pass = g == 3 && f.excess == 28 && f.excess == oracle_excess && f.bound == bound && bound == 28;
    outcome(
        pass,
        format!(
            "flex excess={} (enumerated {}) bound (M+1)(2g-2)+3d={} with M={m} g={g} d={d}",
            f.excess, oracle_excess, f.bound
        ),
    )
}

/// Tangent lines through `q`: distinct roots of the discriminant of the
/// pencil of lines through `q`, a binary form of degree `d(d-1)`.
fn pencil_tangent_count(curve: &PlaneCurve, q: &ProjPoint) -> usize {
    let k = q.field().clone();
    let f = &*k;
    let form = curve.form_over(&k).unwrap();
    let e: [Vec3; 3] = [[Fe(1), Fe(0), Fe(0)], [Fe(0), Fe(1), Fe(0)], [Fe(0), Fe(0), Fe(1)]];
    let (a, c) = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .map(|(i, j)| (e[i], e[j]))
        .find(|(a, c)| Mat3::from_columns(a, q.coords(), c).det(f).0 != 0)
        .unwrap();
    let g = form.compose(&Mat3::from_columns(&a, q.coords(), &c)).dehomogenize();
    let disc = resultant_y(&g, &g.derivative_y(f), f).unwrap();
    let d = curve.degree() as usize;
    let at_infinity = disc.degree().unwrap_or(0) < d * (d - 1);
    disc.distinct_root_count(f) + at_infinity as usize
}

fn criterion_4() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for (name, curve, expect) in [
        ("hermitian char 3", hermitian(), 4u32),
        (
            "generic quartic char 7",
            PlaneCurve::parse("X^4+2*Y^4+3*Z^4+X^2*Y*Z+X*Y^3", 7, 1).unwrap(),
            12,
        ),
    ] {
        let sc = SampleConfig::with_seed(42);
        let inv = dual_degrees(&curve, &sc).unwrap();
        let g = genus(&curve).unwrap() as i64;
        let bound = 2 * g - 2 + 2 * curve.degree() as i64;
        let mut s = Sampler::new(&curve, &sc).unwrap();
        let k = s.fields()[0].clone();
        let oracle = pencil_tangent_count(&curve, &s.point_off_curve(&k).unwrap());
        pass &=
            inv.dual_degree == expect && oracle == expect as usize && inv.dual_degree as i64 <= bound && bound == 12;
        lines.push(format!(
            "{name}: d*={} (pencil discriminant {oracle}) <= {bound}",
            inv.dual_degree
        ));
    }
    outcome(pass, lines.join("; "))
}

fn criterion_5(sh: &Shared) -> Outcome {
    let c = hermitian();
    let f9 = GaloisField::get(3, 2).unwrap();
    let on_curve = brute_force_points(&f9);
    let pts: Vec<ProjPoint> = lift_all(&sh.census.points, &f9).into_iter().collect();
    let mut pairs = 0;
    let mut violations = 0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            pairs += 1;
            let lib = two_galois_line_check(&c, &pts[i], &pts[j]).unwrap();
            let l = pts[i].join(&pts[j]).unwrap();
            let count = on_curve.iter().filter(|q| q.lies_on(&l)).count();
            violations += (!lib || count != 4) as usize;
        }
    }
    outcome(
        pairs == 378 && violations == 0,
        format!("pairs={pairs} violations={violations}"),
    )
}

fn criterion_6(sh: &Shared) -> Outcome {
    let mut checked = 0;
    let mut violations = Vec::new();
    let curves =
        std::iter::once((hermitian(), &sh.census)).chain(sh.sweep_curves.iter().cloned().zip(&sh.sweep_reports));
    for (curve, rep) in curves {
        let n = curve.degree() as usize - 1;
        for r in rep.reports.iter().filter(|r| r.verdict == Verdict::Galois) {
            let cert = r.certificate().expect("Galois verdicts carry a certificate here");
            for datum in ramification_profile(&curve, &r.point, rep.ext_max).unwrap().data {
                checked += 1;
                if !datum.is_uniform(n) {
                    violations.push(format!("{} non-uniform over {}", r.point, datum.line));
                }
                for e in datum.fiber.iter() {
                    if let Some(q) = &e.point {
                        if cert.stabilizer_order(q).unwrap() != e.index {
                            violations.push(format!("{}: stabilizer of {q} differs from index {}", r.point, e.index));
                        }
                    }
                }
            }
        }
    }
    outcome(
        violations.is_empty() && checked > 0,
        format!("ramified fibers checked={checked} violations={}", violations.len()),
    )
}

fn criterion_7() -> Outcome {
    let corpus = [
        ("s^2", 7, true),
        ("s^3", 7, true),
        ("s^3 - s", 3, true),
        ("s^9 - s", 3, true),
        ("s^3 + s^2", 7, false),
    ];
    let mut pass = true;
    let mut notes = Vec::new();
    for (src, p, galois) in corpus {
        let k = GaloisField::get(p, 1).unwrap();
        let theta = CoverSpec::parse(src, &k).unwrap();
        let rep = analyze_cover(&theta, 2).unwrap();
        let chk = cover_checks(&theta, &rep, 2).unwrap();
        // each automorphism is checked by evaluating θ on every point of P¹(GF(p^2))
        let k2 = GaloisField::get(p, 2).unwrap();
        let mut pts: Vec<P1Point> = k2.elements().map(|x| P1Point::finite(&k2, x)).collect();
        pts.push(P1Point::infinity(&k2));
        let invariant = rep.automorphisms.iter().all(|m| {
            pts.iter()
                .all(|x| theta.eval(&m.apply(x).unwrap()).unwrap() == theta.eval(x).unwrap())
        });
        let wild = if src.ends_with("- s") {
            chk.translation_subgroup == Some(true)
        } else {
            true
        };
        let ok = rep.galois == galois && chk.all_hold() && invariant && wild;
        pass &= ok;
        notes.push(format!(
            "{src} (p={p}): galois={} |Aut|={}{}",
            rep.galois,
            rep.automorphisms.len(),
            if ok { "" } else { " FAILED" }
        ));
    }
    outcome(pass, notes.join("; "))
}

fn criterion_8(sh: &Shared) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut agree = 0;
    let mut tangential = 0;
    let mut instances = 0;
    while instances < 200 {
        let p = [3, 5, 7, 11][rng.gen_range(0..4)];
        let curve = random_curve(p, rng.gen_range(4..=5), &mut rng).unwrap();
        let k = GaloisField::get(p, rng.gen_range(1..=2)).unwrap();
        let pts = points_over(&curve, &k).unwrap();
        if pts.is_empty() {
            continue;
        }
        let pt = &pts[rng.gen_range(0..pts.len())];
        let line = match curve.tangent_line(pt) {
            Ok(t) if rng.gen_bool(0.5) => t,
            _ => loop {
                let other = ProjPoint::new(&k, [k.random(&mut rng), k.random(&mut rng), k.random(&mut rng)]);
                if let Ok(o) = other {
                    if o != *pt {
                        break pt.join(&o).unwrap();
                    }
                }
            },
        };
        let a = curve.intersection_multiplicity(&line, pt).unwrap();
        let b = curve.intersection_multiplicity_resultant(&line, pt).unwrap();
        instances += 1;
        agree += (a == b) as usize;
        tangential += a.is_some_and(|m| m >= 2) as usize;
    }
    let mut contradictions = 0;
    let mut errors = 0;
    let curves = std::iter::once(hermitian()).chain(sh.sweep_curves.iter().cloned());
    let mut points = 0;
    for curve in curves {
        let runs: Vec<Result<DeltaReport, Error>> = [Engine::Filter, Engine::Certificate, Engine::Exact]
            .map(|e| delta_scan(&curve, &cfg(e, 8)))
            .into();
        let runs: Vec<DeltaReport> = match runs.into_iter().collect() {
            Ok(r) => r,
            Err(_) => {
                errors += 1;
                continue;
            }
        };
        for i in 0..runs[0].reports.len() {
            points += 1;
            let vs: Vec<Verdict> = runs.iter().map(|r| r.reports[i].verdict).collect();
            let yes = vs.contains(&Verdict::Galois);
            let no = vs
                .iter()
                .any(|v| matches!(v, Verdict::NotGalois | Verdict::NotGaloisAtBound));
            contradictions += (yes && no) as usize;
        }
    }
    outcome(
        agree == 200 && contradictions == 0 && errors == 0,
        format!(
            "multiplicity agreement {agree}/200 ({tangential} with multiplicity >= 2); engines on {points} points: contradictions={contradictions}, consistency errors={errors}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let c = hermitian();
    let render = |jobs| {
        let r = delta_scan(&c, &cfg(Engine::Auto, jobs)).unwrap();
        serde_json::to_string(&(&r, &r.reports)).unwrap()
    };
    let (a, b) = (render(1), render(8));
    outcome(
        a == b && !a.is_empty(),
        format!("jobs 1 vs 8: {} bytes each, identical={}", a.len(), a == b),
    )
}

fn main() {
    let start = Instant::now();
    let census = delta_scan(&hermitian(), &cfg(Engine::Auto, 8)).expect("hermitian census");
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED);
    let sweep_curves: Vec<PlaneCurve> = (0..SWEEP_COUNT)
        .map(|_| random_curve(7, 4, &mut rng).unwrap())
        .collect();
    let sweep_reports: Vec<DeltaReport> = sweep_curves
        .iter()
        .map(|c| delta_scan(c, &cfg(Engine::Auto, 8)).unwrap())
        .collect();
    assert_eq!(galois_bound(4), 28);
    let sh = Shared {
        census,
        sweep_curves,
        sweep_reports,
    };
    println!("shared scans ready in {:.1?}", start.elapsed());

    let criteria: [(&str, &dyn Fn() -> Outcome); 9] = [
        (
            "Hermitian census: delta = (d-1)^3+1 = 28 with certificates and exact splits",
            &|| criterion_1(&sh),
        ),
        ("bound on 50 random quartics over GF(7)", &|| criterion_2(&sh)),
        ("flex excess at equality", &criterion_3),
        ("dual degree within 2g-2+2d", &criterion_4),
        ("lines through two Galois points are transversal", &|| criterion_5(&sh)),
        ("stabilizers, uniform fibers, indices dividing d-1", &|| {
            criterion_6(&sh)
        }),
        ("rational cover corpus: structural checks", &criterion_7),
        ("oracle equivalence and engine consistency", &|| criterion_8(&sh)),
        ("determinism across job counts", &criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        failed += !o.pass as usize;
        println!(
            "{} criterion {}: {name} [tolerance: exact] -- {} ({:.2?})",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            t.elapsed()
        );
    }
    println!("{} of 9 criteria passed in {:.1?}", 9 - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
