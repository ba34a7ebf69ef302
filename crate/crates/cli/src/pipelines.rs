use std::path::Path;

use serde_json::{json, Value};

use herman_core::geometry::{verify_siegel_cycle, Region, SiegelCycle};
use herman_core::herman::{
    construct_q, herman_rings, ring_radius_check, rq_proximity_check, verify_grl_hypotheses, verify_herman_cycle, HermanCycle, HermanParams,
};
use herman_core::padic::ProjPoint;
use herman_core::ratmap::{multiplier, periodic_points, reduction_report, MapError, RationalMap};
use herman_core::report::{CheckRecord, VerificationReport, Witness};
use herman_core::selftest::{run_selftest, SelftestSizes};

use crate::input::{load_map, load_params, load_regions, read_json, ConstructInput, HermanInput, SiegelInput};
use crate::{json, CliError, Document, JobSpec, Note};

/// Reduction and periodic points up to period 2; the checks confirm that
/// the two reduction criteria agree and that each reported cycle closes up
/// with the reported multiplier.
pub fn analyze(spec: &JobSpec, path: &Path) -> Result<Document, CliError> {
    let record = read_json(path)?;
    let map = load_map(path, &record)?;
    let (results, report) = analyze_map(&map, spec).map_err(|e| CliError::Invalid {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(Document::new(spec, results, Vec::new(), report))
}

pub(crate) fn analyze_map(map: &RationalMap, spec: &JobSpec) -> Result<(Value, VerificationReport), MapError> {
    let mut report = VerificationReport::new();
    let red = reduction_report(map);
    report.push(CheckRecord::single(
        "reduction-criteria",
        red.criteria_agree(),
        "the good-reduction flag agrees with the unit-resultant criterion",
        Witness::new(0, false)
            .with("good", red.good)
            .with("unit_resultant", red.unit_resultant),
    ));

    let mut periods = Vec::new();
    for n in 1..=2 {
        let periodic = match periodic_points(map, n, spec.precision, spec.degree_cap) {
            Err(MapError::IdentityIterate(_)) => {
                periods.push(json!({ "period": n, "identity": true }));
                continue;
            }
            other => other?,
        };
        let witnesses = periodic
            .orbits
            .iter()
            .enumerate()
            .map(|(i, orbit)| {
                let start = &orbit.points[0];
                let closes = map.iterate(start, n) == *start;
                let recomputed = multiplier(map, &orbit.points).ok();
                Witness::new(i, closes && recomputed.as_ref() == Some(&orbit.multiplier))
                    .with("start", start)
                    .with("multiplier", &orbit.multiplier)
            })
            .collect();
        report.push(CheckRecord::from_witnesses(
            &format!("period-{n}"),
            format!("each cycle is fixed by R^{n} with the reported multiplier"),
            witnesses,
        ));
        periods.push(json::periodic(&periodic));
    }
    let results = json!({
        "map": json::map(map),
        "reduction": json::reduction(&red),
        "periodic": periods,
    });
    Ok((results, report))
}

pub fn verify_siegel(spec: &JobSpec, path: &Path) -> Result<Document, CliError> {
    let input: SiegelInput = read_json(path)?;
    let map = load_map(path, &input.map)?;
    let disks = load_regions(path, "disks", &map, &input.disks)?;
    let (radii, report) = match verify_siegel_cycle(&map, &disks, spec.samples, spec.seed) {
        Ok(cycle) => (Some(radii(&cycle)), cycle.report),
        Err(failure) => (None, failure.report),
    };
    let results = json!({
        "map": json::map(&map),
        "disks": json::regions(&disks),
        "radii": radii,
    });
    Ok(Document::new(spec, results, Vec::new(), report))
}

pub(crate) fn radii(cycle: &SiegelCycle) -> Vec<String> {
    cycle.radii.iter().map(|r| r.exact_string()).collect()
}

/// Verifies the Siegel cycle and the hypotheses, builds `Q` and its rings,
/// and checks the ring radii and the distance from `Q` to `R`.
pub fn construct_herman(spec: &JobSpec, path: &Path) -> Result<Document, CliError> {
    let input: ConstructInput = read_json(path)?;
    let map = load_map(path, &input.map)?;
    let disks = load_regions(path, "disks", &map, &input.disks)?;
    let params = load_params(path, &map, &input.params)?;
    let provenance = json!({
        "map": input.map,
        "disks": input.disks,
        "params": input.params,
    });
    let mut report = VerificationReport::new();
    let mut results = json!({ "provenance": provenance });

    let cycle = match verify_siegel_cycle(&map, &disks, spec.samples, spec.seed) {
        Ok(cycle) => cycle,
        Err(failure) => {
            report.absorb("siegel", failure.report);
            return Ok(Document::new(spec, results, Vec::new(), report));
        }
    };
    report.absorb("siegel", cycle.report.clone());
    results["radii"] = json!(radii(&cycle));
    report.absorb("hypotheses", verify_grl_hypotheses(&map, &cycle, &params));
    let mut notes = Vec::new();
    if params.returning(&map, cycle.period()) {
        notes.push(returning_note(&map, &params, cycle.period()));
    }

    let built = construct_q(&map, &params).and_then(|q| herman_rings(&map, &cycle, &params).map(|rings| (rings, q)));
    let (rings, q) = match built {
        Ok(b) => b,
        Err(e) => {
            report.push(CheckRecord::single(
                "construct",
                false,
                "Q and its rings can be built",
                Witness::new(0, false).with("error", e),
            ));
            return Ok(Document::new(spec, results, notes, report));
        }
    };
    report.push(CheckRecord::single(
        "construct",
        true,
        "deg Q = deg R + 1 and Q(z0) = R(z0)",
        Witness::new(0, true)
            .with("degree", q.degree())
            .with("base_value", q.eval(&ProjPoint::affine(params.z0.clone()))),
    ));
    report.push(ring_radius_check(&cycle, &params, &rings));
    report
        .checks
        .extend(rq_proximity_check(&map, &q, &cycle, &params, spec.samples, spec.seed).checks);
    results["q"] = json::map(&q);
    results["rings"] = json::regions(&rings);
    results["pole"] = json::element(&params.pole());
    results["herman_input"] = json!(HermanInput {
        map: q.to_record(),
        rings: rings.iter().map(Region::to_record).collect(),
        params: params.to_record(),
    });
    Ok(Document::new(spec, results, notes, report))
}

pub(crate) fn returning_note(map: &RationalMap, params: &HermanParams, n: usize) -> Note {
    let mut orbit = vec![ProjPoint::affine(params.z0.clone())];
    for _ in 0..n {
        orbit.push(map.eval(orbit.last().unwrap()));
    }
    let shown: Vec<String> = orbit.iter().map(|p| p.to_string()).collect();
    Note::new(
        "returning-base-point",
        format!("z0 is not {n}-periodic: its orbit is {}", shown.join(" -> ")),
    )
}

pub fn verify_herman(spec: &JobSpec, path: &Path) -> Result<Document, CliError> {
    let input: HermanInput = read_json(path)?;
    let q = load_map(path, &input.map)?;
    let rings = load_regions(path, "rings", &q, &input.rings)?;
    let params = load_params(path, &q, &input.params)?;
    if rings.is_empty() || rings.iter().any(|r| !matches!(r, Region::Annulus { .. })) {
        return Err(CliError::Invalid {
            path: path.display().to_string(),
            message: "rings: expected a nonempty list of annuli".into(),
        });
    }
    let cycle = HermanCycle::new(q, rings, &params);
    let report = verify_herman_cycle(&cycle, spec.samples, spec.seed);
    let results = json!({
        "map": json::map(&cycle.map),
        "rings": json::regions(&cycle.rings),
        "pole": json::element(&cycle.pole),
    });
    Ok(Document::new(spec, results, Vec::new(), report))
}

pub fn selftest(spec: &JobSpec) -> Document {
    let sizes = SelftestSizes::default();
    let report = run_selftest(sizes, spec.precision, spec.seed);
    let results = json!({
        "cases": {
            "ultrametric": sizes.ultrametric,
            "newton-polygon": sizes.newton,
            "hensel": sizes.hensel,
            "disk-ratio": sizes.disk_ratio,
            "reduction-resultant": sizes.reduction,
        }
    });
    Document::new(spec, results, Vec::new(), report)
}
