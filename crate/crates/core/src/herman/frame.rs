use num_rational::BigRational;
use num_traits::{One, Zero};

use super::HermanError;
use crate::geometry::{sample_region, Region};
use crate::padic::{pow_p, FieldElement, HalfInt, ProjPoint};
use crate::ratmap::{reduction_report, RationalMap, ReductionReport};

/// Affine charts `ψ(z) = (z - c) / s` carrying a source and a target disk
/// onto the unit disk, with `|s|` the disk radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledFrame {
    pub source: Region,
    pub target: Region,
    source_center: BigRational,
    source_scale: BigRational,
    target_center: BigRational,
    target_scale: BigRational,
}

fn chart(disk: &Region) -> Result<(BigRational, BigRational), HermanError> {
    let Region::Disk { center, radius_exp, .. } = disk else {
        return Err(HermanError::NotFiniteDisk(disk.to_string()));
    };
    let c = center.as_rational().ok_or_else(|| HermanError::NotRational {
        what: "center",
        value: center.to_string(),
    })?;
    let k = radius_exp.as_integer().ok_or(HermanError::IrrationalScale(*radius_exp))?;
    Ok((c.clone(), pow_p(center.p(), k)))
}

impl ScaledFrame {
    pub fn new(source: Region, target: Region) -> Result<Self, HermanError> {
        let (source_center, source_scale) = chart(&source)?;
        let (target_center, target_scale) = chart(&target)?;
        Ok(ScaledFrame {
            source,
            target,
            source_center,
            source_scale,
            target_center,
            target_scale,
        })
    }

    /// `ψ_src^{-1}(w) = c + s w`.
    fn source_inverse(&self, ctx: crate::padic::FieldContext) -> RationalMap {
        RationalMap::mobius(
            ctx,
            self.source_scale.clone(),
            self.source_center.clone(),
            BigRational::zero(),
            BigRational::one(),
        )
        .expect("nonzero scale")
    }

    /// `ψ_tgt(z) = (z - c) / s`.
    fn target_chart(&self, ctx: crate::padic::FieldContext) -> RationalMap {
        RationalMap::mobius(
            ctx,
            BigRational::one(),
            -self.target_center.clone(),
            BigRational::zero(),
            self.target_scale.clone(),
        )
        .expect("nonzero scale")
    }

    /// Exponents of the two disks, source first.
    pub fn radius_exps(&self) -> (HalfInt, HalfInt) {
        let exp = |r: &Region| match r {
            Region::Disk { radius_exp, .. } => *radius_exp,
            _ => unreachable!("frame disks are finite"),
        };
        (exp(&self.source), exp(&self.target))
    }

    /// `ψ_src(z)`.
    pub fn chart_point(&self, z: &FieldElement) -> FieldElement {
        let c = FieldElement::from_rational(z.ctx(), self.source_center.clone());
        (z - &c).scale(&self.source_scale.recip())
    }

    /// `M_* = ψ_tgt ∘ M ∘ ψ_src^{-1}`.
    pub fn rescale(&self, map: &RationalMap) -> RationalMap {
        self.target_chart(map.ctx()).compose(&map.compose(&self.source_inverse(map.ctx())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledReduction {
    pub scaled: RationalMap,
    pub reduction: ReductionReport,
    /// Degree of the map induced by the reduction of `M_*`.
    pub degree: usize,
}

/// Reduces `M_* = ψ_tgt ∘ M ∘ ψ_src^{-1}` mod p and returns the induced
/// degree. `samples` points of the source disk, and its center, must land
/// in the target disk.
pub fn scaled_reduction_degree(map: &RationalMap, frame: &ScaledFrame, samples: usize, seed: u64) -> Result<ScaledReduction, HermanError> {
    let center = frame.source.center().expect("frame disks are finite").clone();
    let mut points = vec![center];
    points.extend(sample_region(&frame.source, map.ctx(), samples, seed)?);
    for z in &points {
        let image = map.eval(&ProjPoint::affine(z.clone()));
        if !frame.target.contains_point(&image) {
            return Err(HermanError::ImageMismatch {
                point: z.to_string(),
                image: image.to_string(),
                target: frame.target.to_string(),
            });
        }
    }
    let scaled = frame.rescale(map);
    let reduction = reduction_report(&scaled);
    Ok(ScaledReduction {
        degree: reduction.induced_degree,
        scaled,
        reduction,
    })
}
