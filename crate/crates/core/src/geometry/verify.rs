use std::fmt;

use rayon::prelude::*;

use super::{sample_region, GeometryError, Region};
use crate::padic::{FieldElement, Norm, ProjPoint};
use crate::ratmap::RationalMap;
use crate::report::{CheckRecord, VerificationReport, Witness};

/// Number of sample pairs used by [`disk_image`].
pub const DISK_IMAGE_PAIRS: usize = 8;

/// The image of a disk under a map that scales it uniformly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskImage {
    pub image: Region,
    /// Radius `t` of the image disk.
    pub t: Norm,
    /// The common ratio `|R(z1) - R(z2)| / |z1 - z2|`, equal to `t / r`.
    pub ratio: Norm,
}

fn distance(a: &FieldElement, b: &FieldElement) -> Norm {
    (a - b).norm()
}

/// Image of a finite disk `D` by ratio consensus: the ratio
/// `|R(z1) - R(z2)| / |z1 - z2|` is computed on [`DISK_IMAGE_PAIRS`] pairs
/// (half of them through the center) and must be one exact value `t / r`;
/// the image is then the disk of radius `t` about `R(center)`.
pub fn disk_image(map: &RationalMap, disk: &Region) -> Result<DiskImage, GeometryError> {
    let Region::Disk { center, radius_exp, open } = disk else {
        return Err(GeometryError::NotFiniteDisk(disk.to_string()));
    };
    let ctx = map.ctx().join(&center.ctx())?;
    let center = center.with_ctx(ctx)?;
    let half = DISK_IMAGE_PAIRS / 2;
    let samples = sample_region(disk, ctx, half + 2 * (DISK_IMAGE_PAIRS - half), 0)?;
    let mut pairs: Vec<(FieldElement, FieldElement)> = samples[..half].iter().map(|z| (center.clone(), z.clone())).collect();
    pairs.extend(samples[half..].chunks(2).map(|c| (c[0].clone(), c[1].clone())));

    let image_of = |z: &FieldElement| {
        map.eval_affine(z)
            .ok_or_else(|| GeometryError::PoleAtSample { point: z.to_string() })
    };
    let image_center = image_of(&center)?;
    let mut consensus: Option<(Norm, &FieldElement, &FieldElement)> = None;
    for (a, b) in &pairs {
        let (ra, rb) = (image_of(a)?, image_of(b)?);
        let ratio = distance(&ra, &rb).checked_div(distance(a, b)).expect("samples are distinct");
        if ratio.is_zero() {
            return Err(GeometryError::NotInjective {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        match consensus {
            None => consensus = Some((ratio, a, b)),
            Some((first, a1, b1)) if first != ratio => {
                return Err(GeometryError::RatioDisagreement(format!(
                    "{} for ({a1}, {b1}) but {} for ({a}, {b})",
                    first.exact_string(),
                    ratio.exact_string()
                )))
            }
            Some(_) => {}
        }
    }
    let (ratio, _, _) = consensus.expect("at least one pair");
    let t = ratio * Norm::radius(ctx.p(), *radius_exp);
    Ok(DiskImage {
        image: Region::Disk {
            center: image_center,
            radius_exp: t.radius_exp().expect("nonzero radius"),
            open: *open,
        },
        t,
        ratio,
    })
}

/// Samples `pairs` pairs in `region` and checks
/// `|R^n(z1) - R^n(z2)| = |z1 - z2|` exactly for each. A region around
/// infinity is checked in the chart `w = 1/z`.
pub fn verify_isometry(map: &RationalMap, n: usize, region: &Region, pairs: usize, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new();
    if matches!(region, Region::AroundInfinity { .. }) {
        let flipped = region.invert(map.ctx()).expect("around-infinity regions invert");
        return verify_isometry(&map.conjugate_by_inversion(), n, &flipped, pairs, seed);
    }
    let detail = format!("|R^{n}(z1) - R^{n}(z2)| = |z1 - z2| on {region}");
    let samples = match sample_region(region, map.ctx(), 2 * pairs, seed) {
        Ok(s) => s,
        Err(e) => {
            report.push(CheckRecord::single(
                "isometry",
                false,
                detail,
                Witness::new(0, false).with("error", e),
            ));
            return report;
        }
    };
    let witnesses: Vec<Witness> = samples
        .par_chunks(2)
        .enumerate()
        .map(|(i, pair)| {
            let (z1, z2) = (&pair[0], &pair[1]);
            let w = Witness::new(i, false)
                .with("z1", z1)
                .with("z2", z2)
                .with("v_before", (z1 - z2).valuation());
            let image = |z: &FieldElement| map.iterate(&ProjPoint::affine(z.clone()), n).to_affine();
            match (image(z1), image(z2)) {
                (Some(a), Some(b)) => {
                    let after = distance(&a, &b);
                    let passed = after == distance(z1, z2);
                    Witness {
                        passed,
                        ..w.with("v_after", after.valuation())
                    }
                }
                _ => w.with("error", "iterate reaches a pole"),
            }
        })
        .collect();
    report.push(CheckRecord::from_witnesses("isometry", detail, witnesses));
    report
}

/// A cycle of disks verified to be permuted by the map with `R^n` an
/// isometry on the first disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiegelCycle {
    pub map: RationalMap,
    pub disks: Vec<Region>,
    /// Nominal radii `p^(-k)` of the disks, in order.
    pub radii: Vec<Norm>,
    pub report: VerificationReport,
}

impl SiegelCycle {
    pub fn period(&self) -> usize {
        self.disks.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiegelFailure {
    pub report: VerificationReport,
}

impl fmt::Display for SiegelFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.report.failed_checks().map(|c| c.name.as_str()).collect();
        write!(f, "Siegel cycle verification failed: {}", names.join(", "))
    }
}

impl std::error::Error for SiegelFailure {}

fn region_list(disks: &[Region]) -> String {
    disks.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
}

/// Checks that `disks` is a cycle of Siegel disks for `map`: the disks are
/// pairwise disjoint, each is carried onto the next by a uniform scaling,
/// `R^n` is an isometry on the first, and the first has the least radius.
///
/// When a disk contains infinity, the dynamical checks run on the map and
/// disks conjugated by `z -> 1/z`.
pub fn verify_siegel_cycle(map: &RationalMap, disks: &[Region], pairs: usize, seed: u64) -> Result<SiegelCycle, SiegelFailure> {
    let ctx = map.ctx();
    let p = ctx.p();
    let n = disks.len();
    let mut report = VerificationReport::new();
    let fail = |report: VerificationReport| Err(SiegelFailure { report });

    let shape_ok = n >= 1 && disks.iter().all(|d| !matches!(d, Region::Annulus { .. }));
    report.push(CheckRecord::single(
        "shape",
        shape_ok,
        "a nonempty list of disks",
        Witness::new(0, shape_ok).with("disks", region_list(disks)),
    ));
    if !shape_ok {
        return fail(report);
    }

    let mut witnesses = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let w = Witness::new(witnesses.len(), false)
                .with("first", &disks[i])
                .with("second", &disks[j]);
            witnesses.push(match disks[i].disjoint_from(&disks[j]) {
                Ok(passed) => Witness { passed, ..w },
                Err(e) => w.with("error", e),
            });
        }
    }
    report.push(CheckRecord::from_witnesses("disjoint", "disks are pairwise disjoint", witnesses));

    let inverted = disks.iter().any(|d| matches!(d, Region::AroundInfinity { .. }));
    let (frame_map, frame_disks) = if inverted {
        (
            map.conjugate_by_inversion(),
            disks.iter().map(|d| d.invert(ctx)).collect::<Option<Vec<_>>>(),
        )
    } else {
        (map.clone(), Some(disks.to_vec()))
    };
    let frame_disks = frame_disks.filter(|ds| ds.iter().all(Region::is_finite_disk));
    let frame_ok = frame_disks.is_some();
    report.push(CheckRecord::single(
        "frame",
        frame_ok,
        "all disks are finite in the working chart",
        Witness::new(0, frame_ok).with("chart", if inverted { "w = 1/z" } else { "z" }),
    ));
    let Some(frame_disks) = frame_disks else {
        return fail(report);
    };

    let witnesses = (0..n)
        .map(|j| {
            let target = &frame_disks[(j + 1) % n];
            let w = Witness::new(j, false).with("disk", &frame_disks[j]).with("expected", target);
            match disk_image(&frame_map, &frame_disks[j]) {
                Ok(img) => {
                    let passed = img.image.same_set(target);
                    Witness {
                        passed,
                        ..w.with("image", &img.image)
                            .with("t", img.t.exact_string())
                            .with("ratio", img.ratio.exact_string())
                    }
                }
                Err(e) => w.with("error", e),
            }
        })
        .collect();
    report.push(CheckRecord::from_witnesses("image", "each disk maps onto the next", witnesses));

    report
        .checks
        .extend(verify_isometry(&frame_map, n, &frame_disks[0], pairs, seed).checks);

    let radii: Vec<Norm> = disks.iter().map(|d| d.radius(p)).collect();
    let witnesses = radii
        .iter()
        .enumerate()
        .map(|(j, r)| {
            Witness::new(j, radii[0] <= *r)
                .with("rho_0", radii[0].exact_string())
                .with("rho_j", r.exact_string())
        })
        .collect();
    report.push(CheckRecord::from_witnesses("labeling", "rho_0 <= rho_j", witnesses));

    if !report.passed() {
        return fail(report);
    }
    Ok(SiegelCycle {
        map: map.clone(),
        disks: disks.to_vec(),
        radii,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{FieldContext, HalfInt};
    use crate::poly::Poly;
    use num_rational::BigRational;

    fn ctx() -> FieldContext {
        FieldContext::quadratic(5).unwrap()
    }

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(ctx(), n)
    }

    fn h(n: i64) -> HalfInt {
        HalfInt::from_int(n)
    }

    fn map_r() -> RationalMap {
        let fifth = BigRational::new((-1).into(), 5.into());
        let num = Poly::new(vec![
            BigRational::from_integer(0.into()),
            fifth,
            BigRational::from_integer(1.into()),
        ]);
        RationalMap::normalize(ctx(), num, Poly::from_ints(&[-1, 0, 1])).unwrap()
    }

    fn map_rphi() -> RationalMap {
        RationalMap::normalize(ctx(), Poly::from_ints(&[5, 0, -5]), Poly::from_ints(&[5, -1])).unwrap()
    }

    #[test]
    fn disk_images() {
        let img = disk_image(&map_rphi(), &Region::ball(fe(0), h(2))).unwrap();
        assert!(img.image.same_set(&Region::ball(fe(1), h(1))));
        assert_eq!(img.t, Norm::radius(5, h(1)));
        let img = disk_image(&map_rphi(), &Region::disk(fe(0), h(1))).unwrap();
        assert!(img.image.same_set(&Region::disk(fe(1), h(0))));
        assert_eq!(img.t, Norm::one(5));
        let d = Region::disk(fe(3), h(2));
        let img = disk_image(&RationalMap::identity(ctx()), &d).unwrap();
        assert!(img.image.same_set(&d));
        assert!(disk_image(&map_rphi(), &Region::disk(fe(0), h(0))).is_err());
    }

    #[test]
    fn isometry_checks() {
        let rep = verify_isometry(&map_rphi(), 2, &Region::disk(fe(0), h(1)), 16, 0);
        assert!(rep.passed());
        let rep = verify_isometry(&map_r(), 1, &Region::disk(fe(0), h(3)), 8, 0);
        let check = rep.check("isometry").unwrap();
        assert!(!check.passed);
        assert!(check.witnesses.iter().all(|w| !w.passed));
    }

    #[test]
    fn siegel_cycles() {
        let cycle = verify_siegel_cycle(&map_r(), &[Region::disk(fe(1), h(0)), Region::around_infinity(h(-1))], 32, 0).unwrap();
        assert_eq!(cycle.period(), 2);
        assert!(verify_siegel_cycle(&map_rphi(), &[Region::disk(fe(0), h(1)), Region::disk(fe(1), h(0))], 32, 0).is_ok());

        let rotated = verify_siegel_cycle(&map_r(), &[Region::around_infinity(h(-1)), Region::disk(fe(1), h(0))], 32, 0).unwrap_err();
        assert!(!rotated.report.check("labeling").unwrap().passed);
        assert!(rotated.report.check("image").unwrap().passed);
        assert!(rotated.report.check("isometry").unwrap().passed);

        let bad = verify_siegel_cycle(&map_rphi(), &[Region::disk(fe(0), h(0)), Region::disk(fe(1), h(0))], 32, 0).unwrap_err();
        assert!(!bad.report.check("image").unwrap().passed);
    }
}
