//! Acceptance criteria for the two worked examples over `C_5`, checked by
//! exact comparison against frozen values. Prints one line per criterion
//! and exits nonzero if any fails.

use std::process::ExitCode;

use herman_cli::{build_document, Command, JobSpec};
use herman_core::geometry::{disk_image, sample_region, verify_siegel_cycle, Region};
use herman_core::herman::{
    construct_q, herman_rings, scaled_reduction_degree, verify_herman_cycle, HermanCycle, HermanParams, ScaledFrame,
};
use herman_core::padic::{rational_valuation, FieldContext, FieldElement, HalfInt, Norm, ProjPoint, Valuation};
use herman_core::poly::Poly;
use herman_core::ratmap::{classify, multiplier, periodic_points, reduction_report, CycleClass, RationalMap, DEFAULT_DEGREE_CAP};
use herman_core::selftest::{run_selftest, SelftestSizes};

const PAIRS: usize = 32;

type Criterion = fn() -> Result<String, String>;

fn ctx() -> FieldContext {
    FieldContext::quadratic(5).unwrap()
}

fn fe(n: i64, d: i64) -> FieldElement {
    FieldElement::from_ratio(ctx(), n, d)
}

fn pt(n: i64, d: i64) -> ProjPoint {
    ProjPoint::affine(fe(n, d))
}

fn h(k: i64) -> HalfInt {
    HalfInt::from_int(k)
}

fn map(num: &[i64], den: &[i64]) -> RationalMap {
    RationalMap::normalize(ctx(), Poly::from_ints(num), Poly::from_ints(den)).unwrap()
}

/// `R(z) = (z^2 - z/5) / (z^2 - 1)`, written as `(5z^2 - z) / (5z^2 - 5)`.
fn r() -> RationalMap {
    map(&[0, -1, 5], &[-5, 0, 5])
}

/// `R^φ(z) = (5 - 5z^2) / (5 - z)`.
fn rphi() -> RationalMap {
    map(&[5, 0, -5], &[5, -1])
}

fn params(z0: i64, mu: i64) -> HermanParams {
    HermanParams::new(fe(z0, 1), fe(mu, 1)).unwrap()
}

fn rphi_disks() -> Vec<Region> {
    vec![Region::disk(fe(0, 1), h(1)), Region::disk(fe(1, 1), h(0))]
}

fn expected_rings() -> Vec<Region> {
    vec![
        Region::annulus(fe(0, 1), h(2), h(1)).unwrap(),
        Region::annulus(fe(1, 1), h(1), h(0)).unwrap(),
    ]
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn reduction() -> Result<String, String> {
    let red = reduction_report(&r());
    ensure(red.pair_string() == "[-XY, 0]", format!("R reduces to {}", red.pair_string()))?;
    ensure(!red.good, "R flagged good")?;
    let red_phi = reduction_report(&rphi());
    ensure(!red_phi.good, "R^phi flagged good")?;
    Ok(format!("R -> {}, bad; R^phi bad", red.pair_string()))
}

fn classification() -> Result<String, String> {
    let lambda = multiplier(&r(), &[pt(0, 1)]).map_err(|e| e.to_string())?;
    ensure(lambda == fe(1, 5), format!("multiplier at 0 is {lambda}"))?;
    ensure(classify(&lambda) == CycleClass::Repelling, "0 not repelling")?;
    let rep = periodic_points(&r(), 2, 8, DEFAULT_DEGREE_CAP).map_err(|e| e.to_string())?;
    let inf = ProjPoint::infinity(ctx());
    let orbit = rep
        .orbits
        .iter()
        .find(|o| o.points.contains(&pt(1, 1)) && o.points.contains(&inf))
        .ok_or("2-cycle {1, inf} not found")?;
    ensure(orbit.period() == 2, "orbit of {1, inf} is not a 2-cycle")?;
    ensure(orbit.multiplier == fe(-1, 2), format!("2-cycle multiplier {}", orbit.multiplier))?;
    ensure(
        orbit.multiplier.valuation() == Valuation::Finite(HalfInt::ZERO),
        "multiplier not a unit",
    )?;
    ensure(orbit.class == CycleClass::Indifferent, format!("2-cycle is {}", orbit.class))?;
    Ok("lambda(0) = 1/5 repelling; {1, inf} multiplier -1/2 indifferent".into())
}

fn siegel_cycles() -> Result<String, String> {
    let cases = [
        ("R", r(), vec![Region::disk(fe(1, 1), h(0)), Region::around_infinity(h(-1))]),
        ("R^phi", rphi(), rphi_disks()),
    ];
    for (name, m, disks) in cases {
        let cycle = verify_siegel_cycle(&m, &disks, PAIRS, 0).map_err(|f| format!("{name}: {f}"))?;
        let iso = cycle.report.check("isometry").ok_or("no isometry check")?;
        ensure(
            iso.passed && iso.witnesses.len() >= PAIRS,
            format!("{name}: {} isometry pairs", iso.witnesses.len()),
        )?;
    }
    Ok(format!("both cycles verified with {PAIRS} isometry pairs each"))
}

fn disk_image_radius() -> Result<String, String> {
    let img = disk_image(&rphi(), &Region::ball(fe(0, 1), h(2))).map_err(|e| e.to_string())?;
    ensure(img.image.same_set(&Region::ball(fe(1, 1), h(1))), format!("image {}", img.image))?;
    ensure(img.t == Norm::radius(5, h(1)), format!("t = {}", img.t.exact_string()))?;
    Ok(format!("image {} with t = {}", img.image, img.t.exact_string()))
}

fn construction_one() -> Result<String, String> {
    let q = construct_q(&rphi(), &params(0, 25)).map_err(|e| e.to_string())?;
    let expected = map(&[125, -30, 0, 5], &[125, -30, 1]);
    let scalar = q.proportionality(&expected).ok_or(format!("Q = {q}"))?;
    ensure(rational_valuation(&scalar, 5) == Some(0), format!("scalar {scalar} is not a unit"))?;
    ensure(q.degree() == 3 && q.degree() == r().degree() + 1, format!("deg Q = {}", q.degree()))?;
    Ok(format!("Q = {q}, scalar {scalar}"))
}

fn scaled_reductions() -> Result<String, String> {
    let frame = ScaledFrame::new(Region::disk(fe(0, 1), h(2)), Region::disk(fe(1, 1), h(1))).map_err(|e| e.to_string())?;
    let q = construct_q(&rphi(), &params(0, 25)).map_err(|e| e.to_string())?;
    let d_rphi = scaled_reduction_degree(&rphi(), &frame, PAIRS, 0)
        .map_err(|e| e.to_string())?
        .degree;
    let d_q = scaled_reduction_degree(&q, &frame, PAIRS, 0).map_err(|e| e.to_string())?.degree;
    ensure(d_rphi == 1 && d_q == 2, format!("degrees {d_rphi}, {d_q}"))?;
    Ok("R^phi_* reduces to degree 1, Q_* to degree 2".into())
}

fn herman_cycle_example(z0: i64) -> Result<(RationalMap, HermanCycle), String> {
    let p = params(z0, 25);
    let q = construct_q(&rphi(), &p).map_err(|e| e.to_string())?;
    let cycle = verify_siegel_cycle(&rphi(), &rphi_disks(), PAIRS, 0).map_err(|f| f.to_string())?;
    let rings = herman_rings(&rphi(), &cycle, &p).map_err(|e| e.to_string())?;
    ensure(
        rings.len() == 2 && rings.iter().zip(expected_rings()).all(|(a, b)| a.same_set(&b)),
        format!("rings {}, {}", rings[0], rings[1]),
    )?;
    let hc = HermanCycle::new(q.clone(), rings, &p);
    let rep = verify_herman_cycle(&hc, PAIRS, 0);
    ensure(rep.passed(), format!("{rep}"))?;
    Ok((q, hc))
}

fn herman_cycle() -> Result<String, String> {
    let (_, hc) = herman_cycle_example(0)?;
    let points = sample_region(&hc.rings[0], ctx(), PAIRS, 0).map_err(|e| e.to_string())?;
    let half = Valuation::Finite(HalfInt::from_halves(3));
    ensure(
        points.iter().all(|z| z.valuation() == half),
        "samples of A_0 not all of valuation 3/2",
    )?;

    let mut widened = hc.clone();
    widened.rings[0] = Region::annulus(fe(0, 1), h(3), h(1)).unwrap();
    let rep = verify_herman_cycle(&widened, PAIRS, 0);
    let pole = rep.check("pole").ok_or("no pole check")?;
    ensure(!pole.passed, "widened ring passed the pole check")?;
    ensure(
        pole.witnesses[0].values.get("pole_in_ring").map(String::as_str) == Some("true"),
        "witness does not place the pole inside the ring",
    )?;
    Ok("A_{1/25}^{1/5}(0) <-> A_{1/5}^1(1) verified; widened ring rejected at the pole".into())
}

fn construction_two() -> Result<String, String> {
    let (q, _) = herman_cycle_example(125)?;
    ensure(q.degree() == 3, format!("deg Q = {}", q.degree()))?;
    let at_base = q.eval(&pt(125, 1));
    ensure(at_base == pt(651, 1), format!("Q(125) = {at_base}"))?;
    let printed = map(&[-308600, 83974, -1276, 5], &[150, -1]);
    ensure(!printed.same_function(&q), "printed closed form unexpectedly matches")?;

    let mut spec = JobSpec::new(Command::Reproduce);
    spec.example = Some(2);
    let doc = build_document(&spec).map_err(|e| e.to_string())?;
    ensure(doc.passed(), "reproduce --example 2 failed")?;
    for kind in ["printed-formula-discrepancy", "printed-value-discrepancy"] {
        ensure(doc.notes.iter().any(|n| n.kind == kind), format!("report lacks a {kind} note"))?;
    }
    Ok("deg Q = 3, Q(125) = 651, rings verified, divergence from the printed form flagged".into())
}

fn property_suites() -> Result<String, String> {
    let rep = run_selftest(SelftestSizes::default(), 8, 0);
    for name in ["ultrametric", "newton-polygon", "hensel", "disk-ratio", "reduction-resultant"] {
        let check = rep.check(name).ok_or(format!("suite {name} missing"))?;
        ensure(check.passed, format!("suite {name}: {} failures", check.witnesses.len()))?;
    }
    Ok("1000 + 100 + 100 + 50 + 50 cases, zero failures".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 9] = [
        ("reduction", reduction),
        ("classification", classification),
        ("siegel cycles", siegel_cycles),
        ("disk image", disk_image_radius),
        ("construction, example 1", construction_one),
        ("scaled reductions", scaled_reductions),
        ("herman cycle", herman_cycle),
        ("construction, example 2", construction_two),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} [pass] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [FAIL] {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
