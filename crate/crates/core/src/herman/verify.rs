use rayon::prelude::*;

use super::{herman_rings, HermanCycle, HermanParams};
use crate::geometry::{sample_region, verify_isometry, SiegelCycle};
use crate::padic::ProjPoint;
use crate::ratmap::RationalMap;
use crate::report::{CheckRecord, VerificationReport, Witness};

/// Samples each ring `A_j` and compares `|Q(z) - R(z)|` with its exact
/// value: `r ρ_1 / ρ_0` on `A_0` and `r` on the others, where also
/// `r <= r ρ_{j+1} / ρ_0`.
pub fn rq_proximity_check(
    map: &RationalMap,
    q: &RationalMap,
    cycle: &SiegelCycle,
    params: &HermanParams,
    samples: usize,
    seed: u64,
) -> VerificationReport {
    let mut report = VerificationReport::new();
    if map.same_function(q) {
        report.push(CheckRecord::single(
            "proximity",
            true,
            "Q = R, so |Q - R| = 0 is within every bound",
            Witness::new(0, true),
        ));
        return report;
    }
    let rings = match herman_rings(map, cycle, params) {
        Ok(r) => r,
        Err(e) => {
            report.push(CheckRecord::single(
                "proximity",
                false,
                "rings could not be formed",
                Witness::new(0, false).with("error", e),
            ));
            return report;
        }
    };
    let n = cycle.period();
    let r = params.r();
    let rho = &cycle.radii;
    let scaled = |j: usize| (r * rho[j % n]).checked_div(rho[0]).expect("nonzero radius");

    let mut bound_witnesses = Vec::new();
    for (j, ring) in rings.iter().enumerate() {
        let expected = if j == 0 { scaled(1) } else { r };
        let witnesses = match sample_region(ring, map.ctx(), samples, seed) {
            Ok(points) => points
                .par_iter()
                .enumerate()
                .map(|(i, z)| {
                    let w = Witness::new(i, false).with("z", z);
                    match (map.eval_affine(z), q.eval_affine(z)) {
                        (Some(rz), Some(qz)) => {
                            let gap = (&qz - &rz).norm();
                            Witness {
                                passed: gap == expected,
                                ..w.with("v_gap", gap.valuation())
                            }
                        }
                        _ => w.with("error", "pole"),
                    }
                })
                .collect(),
            Err(e) => vec![Witness::new(0, false).with("error", e)],
        };
        let what = if j == 0 { "r rho_1 / rho_0" } else { "r" };
        report.push(CheckRecord::from_witnesses(
            &format!("proximity.{j}"),
            format!("|Q(z) - R(z)| = {} = {what} on {ring}", expected.exact_string()),
            witnesses,
        ));
        if j >= 1 {
            let bound = scaled(j + 1);
            bound_witnesses.push(
                Witness::new(j, r <= bound)
                    .with("r", r.exact_string())
                    .with("r_rho_next_over_rho_0", bound.exact_string()),
            );
        }
    }
    if !bound_witnesses.is_empty() {
        report.push(CheckRecord::from_witnesses(
            "proximity.bound",
            "r <= r rho_{j+1} / rho_0 for j >= 1",
            bound_witnesses,
        ));
    }
    report
}

/// Checks a ring cycle of `Q`: sampled points of `A_j` land in
/// `A_{j+1}` (`ring-images`), `Q^n` is an isometry on `A_0` (`isometry`),
/// and the pole `z0 + μ` sits in the deleted ball of `A_0` (`pole`).
pub fn verify_herman_cycle(cycle: &HermanCycle, pairs: usize, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new();
    let q = &cycle.map;
    let n = cycle.period();

    let mut witnesses = Vec::new();
    for (j, ring) in cycle.rings.iter().enumerate() {
        let next = &cycle.rings[(j + 1) % n];
        match sample_region(ring, q.ctx(), pairs, seed) {
            Ok(points) => {
                let ws: Vec<Witness> = points
                    .par_iter()
                    .map(|z| {
                        let image = q.eval(&ProjPoint::affine(z.clone()));
                        Witness::new(0, next.contains_point(&image)).with("ring", j).with("z", z)
                    })
                    .collect();
                witnesses.extend(ws);
            }
            Err(e) => witnesses.push(Witness::new(0, false).with("ring", j).with("error", e)),
        }
    }
    for (i, w) in witnesses.iter_mut().enumerate() {
        w.index = i;
    }
    report.push(CheckRecord::from_witnesses("ring-images", "Q(A_j) lies in A_{j+1}", witnesses));

    report.checks.extend(verify_isometry(q, n, &cycle.rings[0], pairs, seed).checks);

    let ring = &cycle.rings[0];
    let inner = ring.inner_disk();
    let in_ring = ring.contains(&cycle.pole);
    let in_ball = inner.as_ref().is_some_and(|b| b.contains(&cycle.pole));
    let passed = !in_ring && in_ball;
    let mut w = Witness::new(0, passed)
        .with("pole", &cycle.pole)
        .with("ring", ring)
        .with("pole_in_ring", in_ring);
    if let Some(b) = &inner {
        w = w.with("deleted_ball", b);
    }
    report.push(CheckRecord::single(
        "pole",
        passed,
        "the pole z0 + mu lies in the deleted ball of A_0",
        w,
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::super::tests::{cycle, fe, h, map_rphi, params};
    use super::super::{construct_q, herman_rings, HermanCycle};
    use super::*;
    use crate::geometry::Region;

    #[test]
    fn proximity_example_one() {
        let q = construct_q(&map_rphi(), &params(0, 25)).unwrap();
        let rep = rq_proximity_check(&map_rphi(), &q, &cycle(), &params(0, 25), 16, 0);
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.checks.len(), 3);
        let rep = rq_proximity_check(&map_rphi(), &map_rphi(), &cycle(), &params(0, 25), 16, 0);
        assert!(rep.passed());
    }

    #[test]
    fn herman_cycles() {
        for z0 in [0, 125] {
            let p = params(z0, 25);
            let q = construct_q(&map_rphi(), &p).unwrap();
            let rings = herman_rings(&map_rphi(), &cycle(), &p).unwrap();
            let hc = HermanCycle::new(q, rings, &p);
            let rep = verify_herman_cycle(&hc, 16, 0);
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn widened_ring_fails_on_pole() {
        let p = params(0, 25);
        let q = construct_q(&map_rphi(), &p).unwrap();
        let mut rings = herman_rings(&map_rphi(), &cycle(), &p).unwrap();
        rings[0] = Region::annulus(fe(0), h(3), h(1)).unwrap();
        let rep = verify_herman_cycle(&HermanCycle::new(q, rings, &p), 16, 0);
        let pole = rep.check("pole").unwrap();
        assert!(!pole.passed);
        assert_eq!(pole.witnesses[0].values["pole_in_ring"], "true");
    }
}
