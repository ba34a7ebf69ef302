//! Disks, balls and annuli of the projective line, decided exactly by
//! valuation comparisons.

mod sample;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::padic::{FieldContext, FieldElement, HalfInt, Norm, PadicError, ProjPoint, Valuation};
use crate::ratmap::MapError;

pub use sample::sample_region;
pub use verify::{disk_image, verify_isometry, verify_siegel_cycle, DiskImage, SiegelCycle, SiegelFailure, DISK_IMAGE_PAIRS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("{0} is not a finite disk")]
    NotFiniteDisk(String),
    #[error("annulus needs inner radius below outer radius (inner exponent {inner}, outer exponent {outer})")]
    InvalidAnnulus { inner: HalfInt, outer: HalfInt },
    #[error("{region} has no points of the required valuations over the field {ctx}")]
    EmptyRegion { region: String, ctx: String },
    #[error("sample {point} is a pole of the map")]
    PoleAtSample { point: String },
    #[error("distance ratios disagree: {0}")]
    RatioDisagreement(String),
    #[error("samples {a} and {b} have the same image")]
    NotInjective { a: String, b: String },
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// A region of `P^1(C_p)` with exact rational (or `Q(sqrt p)`) center and
/// radii `p^(-k)`, `k` a half-integer.
///
/// Disks are open (`|z - c| < p^(-k)`) or closed balls (`|z - c| <= p^(-k)`).
/// `AroundInfinity` is `{|z| > p^(-k)} ∪ {∞}` when open and
/// `{|z| >= p^(-k)} ∪ {∞}` when closed. An annulus is
/// `p^(-inner) < |z - c| < p^(-outer)`, each bound strict when its flag is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    Disk {
        center: FieldElement,
        radius_exp: HalfInt,
        open: bool,
    },
    AroundInfinity {
        radius_exp: HalfInt,
        open: bool,
    },
    Annulus {
        center: FieldElement,
        inner_exp: HalfInt,
        outer_exp: HalfInt,
        inner_open: bool,
        outer_open: bool,
    },
}

/// `v > k` for a strict bound, `v >= k` otherwise.
fn exceeds(v: Valuation, k: HalfInt, strict: bool) -> bool {
    if strict {
        v > Valuation::Finite(k)
    } else {
        v >= Valuation::Finite(k)
    }
}

/// Inclusion of disks about a common point: `{v (>|>=) k1} ⊆ {v (>|>=) k2}`.
fn disk_within(k1: HalfInt, open1: bool, k2: HalfInt, open2: bool) -> bool {
    k1 > k2 || (k1 == k2 && !(!open1 && open2))
}

impl Region {
    /// Open disk `D_r(c)` with `r = p^(-k)`.
    pub fn disk(center: FieldElement, radius_exp: HalfInt) -> Self {
        Region::Disk {
            center,
            radius_exp,
            open: true,
        }
    }

    /// Closed ball `B_r(c)` with `r = p^(-k)`.
    pub fn ball(center: FieldElement, radius_exp: HalfInt) -> Self {
        Region::Disk {
            center,
            radius_exp,
            open: false,
        }
    }

    /// Open `D_r(∞) = {|z| > r} ∪ {∞}`.
    pub fn around_infinity(radius_exp: HalfInt) -> Self {
        Region::AroundInfinity { radius_exp, open: true }
    }

    /// Open annulus `A_{r_in}^{r_out}(c)`.
    pub fn annulus(center: FieldElement, inner_exp: HalfInt, outer_exp: HalfInt) -> Result<Self, GeometryError> {
        Self::annulus_with(center, inner_exp, outer_exp, true, true)
    }

    pub fn annulus_with(
        center: FieldElement,
        inner_exp: HalfInt,
        outer_exp: HalfInt,
        inner_open: bool,
        outer_open: bool,
    ) -> Result<Self, GeometryError> {
        if inner_exp <= outer_exp {
            return Err(GeometryError::InvalidAnnulus {
                inner: inner_exp,
                outer: outer_exp,
            });
        }
        Ok(Region::Annulus {
            center,
            inner_exp,
            outer_exp,
            inner_open,
            outer_open,
        })
    }

    pub fn center(&self) -> Option<&FieldElement> {
        match self {
            Region::Disk { center, .. } | Region::Annulus { center, .. } => Some(center),
            Region::AroundInfinity { .. } => None,
        }
    }

    /// Nominal radius `p^(-k)` (outer radius for an annulus).
    pub fn radius(&self, p: u64) -> Norm {
        match self {
            Region::Disk { radius_exp, .. } | Region::AroundInfinity { radius_exp, .. } => Norm::radius(p, *radius_exp),
            Region::Annulus { outer_exp, .. } => Norm::radius(p, *outer_exp),
        }
    }

    pub fn is_finite_disk(&self) -> bool {
        matches!(self, Region::Disk { .. })
    }

    pub fn contains(&self, z: &FieldElement) -> bool {
        match self {
            Region::Disk { center, radius_exp, open } => exceeds((z - center).valuation(), *radius_exp, *open),
            Region::AroundInfinity { radius_exp, open } => {
                let v = z.valuation();
                if *open {
                    v < Valuation::Finite(*radius_exp)
                } else {
                    v <= Valuation::Finite(*radius_exp)
                }
            }
            Region::Annulus {
                center,
                inner_exp,
                outer_exp,
                inner_open,
                outer_open,
            } => {
                let v = (z - center).valuation();
                let below_inner = if *inner_open {
                    v < Valuation::Finite(*inner_exp)
                } else {
                    v <= Valuation::Finite(*inner_exp)
                };
                below_inner && exceeds(v, *outer_exp, *outer_open)
            }
        }
    }

    pub fn contains_point(&self, z: &ProjPoint) -> bool {
        match z.to_affine() {
            Some(z) => self.contains(&z),
            None => matches!(self, Region::AroundInfinity { .. }),
        }
    }

    /// The removed inner disk of an annulus: a closed ball when the inner
    /// bound is strict, an open disk otherwise.
    pub fn inner_disk(&self) -> Option<Region> {
        match self {
            Region::Annulus {
                center,
                inner_exp,
                inner_open,
                ..
            } => Some(Region::Disk {
                center: center.clone(),
                radius_exp: *inner_exp,
                open: !inner_open,
            }),
            _ => None,
        }
    }

    /// The disk whose boundary is the outer boundary of an annulus.
    pub fn outer_disk(&self) -> Option<Region> {
        match self {
            Region::Annulus {
                center,
                outer_exp,
                outer_open,
                ..
            } => Some(Region::Disk {
                center: center.clone(),
                radius_exp: *outer_exp,
                open: *outer_open,
            }),
            _ => None,
        }
    }

    /// Set equality; centers may differ by anything the region absorbs.
    pub fn same_set(&self, other: &Region) -> bool {
        match (self, other) {
            (
                Region::Disk {
                    radius_exp: k1, open: o1, ..
                },
                Region::Disk {
                    center: c2,
                    radius_exp: k2,
                    open: o2,
                },
            ) => k1 == k2 && o1 == o2 && self.contains(c2),
            (Region::AroundInfinity { .. }, Region::AroundInfinity { .. }) => self == other,
            (
                Region::Annulus {
                    inner_exp: i1,
                    outer_exp: e1,
                    inner_open: io1,
                    outer_open: oo1,
                    ..
                },
                Region::Annulus {
                    center: c2,
                    inner_exp: i2,
                    outer_exp: e2,
                    inner_open: io2,
                    outer_open: oo2,
                },
            ) => i1 == i2 && e1 == e2 && io1 == io2 && oo1 == oo2 && self.inner_disk().expect("annulus").contains(c2),
            _ => false,
        }
    }

    /// `self ⊆ other` for finite disks and balls.
    pub fn disk_within(&self, other: &Region) -> Option<bool> {
        match (self, other) {
            (
                Region::Disk {
                    center,
                    radius_exp: k1,
                    open: o1,
                },
                Region::Disk {
                    radius_exp: k2, open: o2, ..
                },
            ) => Some(other.contains(center) && disk_within(*k1, *o1, *k2, *o2)),
            _ => None,
        }
    }

    /// Whether two disks (finite or around infinity) share no point.
    pub fn disjoint_from(&self, other: &Region) -> Result<bool, GeometryError> {
        match (self, other) {
            (Region::Disk { center: c1, .. }, Region::Disk { center: c2, .. }) => {
                // nested or disjoint: they meet iff one holds the other's center
                Ok(!self.contains(c2) && !other.contains(c1))
            }
            (Region::Disk { center, radius_exp, open }, Region::AroundInfinity { radius_exp: ka, open: oa })
            | (Region::AroundInfinity { radius_exp: ka, open: oa }, Region::Disk { center, radius_exp, open }) => {
                // the complement of D_r(∞) is a disk about 0
                let complement = Region::Disk {
                    center: FieldElement::zero(center.ctx()),
                    radius_exp: *ka,
                    open: !oa,
                };
                let disk = Region::Disk {
                    center: center.clone(),
                    radius_exp: *radius_exp,
                    open: *open,
                };
                Ok(disk.disk_within(&complement).expect("both finite disks"))
            }
            (Region::AroundInfinity { .. }, Region::AroundInfinity { .. }) => Ok(false),
            (Region::Annulus { .. }, _) => Err(GeometryError::NotFiniteDisk(self.to_string())),
            (_, Region::Annulus { .. }) => Err(GeometryError::NotFiniteDisk(other.to_string())),
        }
    }

    /// Image under `z -> 1/z`, when it is again a region of this kind.
    /// `ctx` supplies the center of the inverted around-infinity region.
    pub fn invert(&self, ctx: FieldContext) -> Option<Region> {
        match self {
            Region::AroundInfinity { radius_exp, open } => {
                // vp(z) < k  <=>  vp(1/z) > -k
                Some(Region::Disk {
                    center: FieldElement::zero(ctx),
                    radius_exp: -*radius_exp,
                    open: *open,
                })
            }
            Region::Disk { center, radius_exp, open } => {
                if self.contains(&FieldElement::zero(center.ctx())) {
                    Some(Region::AroundInfinity {
                        radius_exp: -*radius_exp,
                        open: *open,
                    })
                } else {
                    // |1/z - 1/c| = |z - c| / |c|^2 when |z - c| < |c|
                    let v = center.valuation().finite()?;
                    Some(Region::Disk {
                        center: center.inv(),
                        radius_exp: *radius_exp - v - v,
                        open: *open,
                    })
                }
            }
            Region::Annulus {
                center,
                inner_exp,
                outer_exp,
                inner_open,
                outer_open,
            } => {
                let zero = FieldElement::zero(center.ctx());
                if self.inner_disk()?.contains(&zero) {
                    Some(Region::Annulus {
                        center: zero,
                        inner_exp: -*outer_exp,
                        outer_exp: -*inner_exp,
                        inner_open: *outer_open,
                        outer_open: *inner_open,
                    })
                } else if !self.outer_disk()?.contains(&zero) {
                    let v = center.valuation().finite()?;
                    Some(Region::Annulus {
                        center: center.inv(),
                        inner_exp: *inner_exp - v - v,
                        outer_exp: *outer_exp - v - v,
                        inner_open: *inner_open,
                        outer_open: *outer_open,
                    })
                } else {
                    None
                }
            }
        }
    }

    pub fn to_record(&self) -> RegionRecord {
        match self {
            Region::Disk { center, radius_exp, open } => RegionRecord::Disk {
                center: center.to_string(),
                radius_exp: *radius_exp,
                open: *open,
            },
            Region::AroundInfinity { radius_exp, open } => RegionRecord::AroundInfinity {
                radius_exp: *radius_exp,
                open: *open,
            },
            Region::Annulus {
                center,
                inner_exp,
                outer_exp,
                inner_open,
                outer_open,
            } => RegionRecord::Annulus {
                center: center.to_string(),
                inner_exp: *inner_exp,
                outer_exp: *outer_exp,
                inner_open: *inner_open,
                outer_open: *outer_open,
            },
        }
    }

    pub fn from_record(record: &RegionRecord, ctx: FieldContext) -> Result<Region, GeometryError> {
        Ok(match record {
            RegionRecord::Disk { center, radius_exp, open } => Region::Disk {
                center: FieldElement::parse(center, ctx)?,
                radius_exp: *radius_exp,
                open: *open,
            },
            RegionRecord::AroundInfinity { radius_exp, open } => Region::AroundInfinity {
                radius_exp: *radius_exp,
                open: *open,
            },
            RegionRecord::Annulus {
                center,
                inner_exp,
                outer_exp,
                inner_open,
                outer_open,
            } => Region::annulus_with(FieldElement::parse(center, ctx)?, *inner_exp, *outer_exp, *inner_open, *outer_open)?,
        })
    }
}

/// Distance between two finite disks: zero when they meet (one then
/// contains the other), otherwise `|c1 - c2|` for any choice of centers.
pub fn disk_dist(a: &Region, b: &Region) -> Result<Norm, GeometryError> {
    match (a, b) {
        (Region::Disk { center: c1, .. }, Region::Disk { center: c2, .. }) => {
            if a.disjoint_from(b)? {
                Ok((c1 - c2).norm())
            } else {
                Ok(Norm::zero(c1.p()))
            }
        }
        (Region::Disk { .. }, _) => Err(GeometryError::NotFiniteDisk(b.to_string())),
        _ => Err(GeometryError::NotFiniteDisk(a.to_string())),
    }
}

/// Serialized form of a [`Region`]; centers are strings in the
/// `a/b + c/d*sqrt(p)` grammar and exponents are half-integer strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RegionRecord {
    Disk {
        center: String,
        radius_exp: HalfInt,
        open: bool,
    },
    AroundInfinity {
        radius_exp: HalfInt,
        open: bool,
    },
    Annulus {
        center: String,
        inner_exp: HalfInt,
        outer_exp: HalfInt,
        inner_open: bool,
        outer_open: bool,
    },
}

fn radius_string(p: u64, k: HalfInt) -> String {
    Norm::radius(p, k).exact_string()
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Disk { center, radius_exp, open } => {
                let letter = if *open { 'D' } else { 'B' };
                write!(f, "{letter}_{{{}}}({center})", radius_string(center.p(), *radius_exp))
            }
            Region::AroundInfinity { radius_exp, open } => {
                let letter = if *open { 'D' } else { 'B' };
                write!(f, "{letter}_{{p^({})}}(inf)", -*radius_exp)
            }
            Region::Annulus {
                center,
                inner_exp,
                outer_exp,
                inner_open,
                outer_open,
            } => {
                let p = center.p();
                write!(
                    f,
                    "A_{{{}}}^{{{}}}({center})",
                    radius_string(p, *inner_exp),
                    radius_string(p, *outer_exp)
                )?;
                if !inner_open || !outer_open {
                    write!(f, "[inner {}, outer {}]", bound(*inner_open), bound(*outer_open))?;
                }
                Ok(())
            }
        }
    }
}

fn bound(open: bool) -> &'static str {
    if open {
        "open"
    } else {
        "closed"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> FieldContext {
        FieldContext::quadratic(5).unwrap()
    }

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(ctx(), n)
    }

    fn h(n: i64) -> HalfInt {
        HalfInt::from_int(n)
    }

    fn sqrt5_times(n: i64) -> FieldElement {
        FieldElement::parse(&format!("{n}*sqrt(5)"), ctx()).unwrap()
    }

    #[test]
    fn membership() {
        assert!(Region::disk(fe(0), h(1)).contains(&fe(25)));
        assert!(!Region::disk(fe(0), h(1)).contains(&fe(5)));
        assert!(Region::ball(fe(0), h(1)).contains(&fe(5)));
        let ring = Region::annulus(fe(0), h(2), h(1)).unwrap();
        assert!(ring.contains(&sqrt5_times(5)));
        assert!(!ring.contains(&fe(25)));
        assert!(!ring.contains(&fe(5)));
        let at_inf = Region::around_infinity(h(-1));
        assert!(!at_inf.contains(&fe(1)));
        assert!(!at_inf.contains(&FieldElement::from_ratio(ctx(), 1, 5)));
        assert!(at_inf.contains(&FieldElement::from_ratio(ctx(), 1, 25)));
        assert!(at_inf.contains_point(&ProjPoint::infinity(ctx())));
    }

    #[test]
    fn annulus_must_have_room() {
        assert!(Region::annulus(fe(0), h(1), h(1)).is_err());
        assert!(Region::annulus(fe(0), h(1), h(2)).is_err());
    }

    #[test]
    fn same_set_ignores_center_choice() {
        assert!(Region::ball(fe(1), h(1)).same_set(&Region::ball(fe(651), h(1))));
        assert!(!Region::ball(fe(1), h(1)).same_set(&Region::disk(fe(651), h(1))));
        let a = Region::annulus(fe(0), h(2), h(1)).unwrap();
        let b = Region::annulus(fe(125), h(2), h(1)).unwrap();
        let c = Region::annulus(fe(5), h(2), h(1)).unwrap();
        assert!(a.same_set(&b));
        assert!(!a.same_set(&c));
    }

    #[test]
    fn disjointness() {
        let d0 = Region::disk(fe(0), h(1));
        let d1 = Region::disk(fe(1), h(0));
        let inf = Region::around_infinity(h(-1));
        assert!(d0.disjoint_from(&d1).unwrap());
        assert!(d1.disjoint_from(&inf).unwrap());
        assert!(!Region::disk(fe(0), h(-2)).disjoint_from(&inf).unwrap());
        assert!(!d0.disjoint_from(&Region::ball(fe(0), h(2))).unwrap());
    }

    #[test]
    fn distances() {
        let d0 = Region::disk(fe(0), h(1));
        assert_eq!(disk_dist(&d0, &Region::disk(fe(1), h(0))).unwrap(), Norm::one(5));
        assert!(disk_dist(&d0, &Region::ball(fe(0), h(2))).unwrap().is_zero());
        let a = Region::disk(fe(125), h(2));
        let b = Region::disk(fe(651), h(1));
        assert_eq!(disk_dist(&a, &b).unwrap(), Norm::one(5));
        assert!(disk_dist(&a, &Region::around_infinity(h(0))).is_err());
    }

    #[test]
    fn inversion() {
        let inf = Region::around_infinity(h(-1));
        let d = inf.invert(ctx()).unwrap();
        assert_eq!(d, Region::disk(fe(0), h(1)));
        assert_eq!(d.invert(ctx()).unwrap(), inf);
        let d1 = Region::disk(fe(1), h(0));
        assert!(d1.invert(ctx()).unwrap().same_set(&d1));
        let far = Region::ball(fe(5), h(3));
        let back = far.invert(ctx()).unwrap();
        assert!(back.same_set(&Region::ball(FieldElement::from_ratio(ctx(), 1, 5), h(1))));
        let ring = Region::annulus(fe(0), h(2), h(1)).unwrap();
        let inv = ring.invert(ctx()).unwrap();
        assert!(inv.contains(&sqrt5_times(5).inv()));
    }

    #[test]
    fn record_round_trip() {
        let regions = [
            Region::disk(fe(0), h(1)),
            Region::ball(sqrt5_times(3), HalfInt::from_halves(3)),
            Region::around_infinity(h(-1)),
            Region::annulus(fe(1), h(1), h(0)).unwrap(),
        ];
        for r in regions {
            let json = serde_json::to_string(&r.to_record()).unwrap();
            let back: RegionRecord = serde_json::from_str(&json).unwrap();
            assert_eq!(Region::from_record(&back, ctx()).unwrap(), r);
        }
        let json = serde_json::to_string(&Region::disk(fe(0), h(1)).to_record()).unwrap();
        assert_eq!(json, r#"{"kind":"disk","center":"0","radius_exp":"1","open":true}"#);
    }

    #[test]
    fn display_uses_radii() {
        assert_eq!(Region::disk(fe(0), h(1)).to_string(), "D_{1/5}(0)");
        assert_eq!(Region::ball(fe(0), h(2)).to_string(), "B_{1/25}(0)");
        assert_eq!(Region::annulus(fe(0), h(2), h(1)).unwrap().to_string(), "A_{1/25}^{1/5}(0)");
    }
}
