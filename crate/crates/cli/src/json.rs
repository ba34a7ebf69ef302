//! JSON views of core results for the machine-readable report section.

use serde_json::{json, Value};

use herman_core::geometry::Region;
use herman_core::padic::FieldElement;
use herman_core::poly::CertificateReason;
use herman_core::ratmap::{PeriodicReport, RationalMap, ReductionReport};

pub fn map(m: &RationalMap) -> Value {
    json!({
        "record": m.to_record(),
        "display": m.to_string(),
        "degree": m.degree(),
    })
}

pub fn region(r: &Region) -> Value {
    json!({
        "record": r.to_record(),
        "display": r.to_string(),
    })
}

pub fn regions(rs: &[Region]) -> Value {
    Value::Array(rs.iter().map(region).collect())
}

pub fn element(z: &FieldElement) -> Value {
    Value::String(z.to_string())
}

pub fn reduction(r: &ReductionReport) -> Value {
    json!({
        "pair": r.pair_string(),
        "good": r.good,
        "induced_degree": r.induced_degree,
        "resultant_valuation": r.resultant_valuation,
        "unit_resultant": r.unit_resultant,
    })
}

fn reason(r: CertificateReason) -> &'static str {
    match r {
        CertificateReason::Ramified => "ramified",
        CertificateReason::UnresolvedResidue => "unresolved-residue",
    }
}

pub fn periodic(r: &PeriodicReport) -> Value {
    let orbits: Vec<Value> = r
        .orbits
        .iter()
        .map(|o| {
            json!({
                "points": o.points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "multiplier": o.multiplier.to_string(),
                "multiplier_valuation": o.multiplier.valuation().to_string(),
                "class": o.class.as_str(),
            })
        })
        .collect();
    let approximate: Vec<Value> = r
        .approximate
        .iter()
        .map(|a| {
            json!({
                "root": a.root.to_string(),
                "multiplier_valuation": a.multiplier_valuation,
                "class": a.class.map(|c| c.as_str()),
            })
        })
        .collect();
    let certificates: Vec<Value> = r
        .certificates
        .iter()
        .map(|c| {
            json!({
                "valuation": c.valuation.to_string(),
                "count": c.count,
                "reason": reason(c.reason),
            })
        })
        .collect();
    json!({
        "period": r.period,
        "orbits": orbits,
        "approximate": approximate,
        "certificates": certificates,
        "search_truncated": r.search_truncated,
    })
}
