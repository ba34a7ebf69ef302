use serde::{Deserialize, Serialize};

use super::{MapError, RationalMap};
use crate::padic::{parse_rational, FieldContext};
use crate::poly::Poly;

fn default_ramification() -> u8 {
    2
}

fn is_default_ramification(e: &u8) -> bool {
    *e == default_ramification()
}

/// Serialized map: ascending coefficient lists of rational strings.
///
/// `ramification` selects the field the map acts on; it defaults to 2,
/// `Q(sqrt p)`, so that points of half-integer valuation are available.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapRecord {
    pub p: u64,
    #[serde(default = "default_ramification", skip_serializing_if = "is_default_ramification")]
    pub ramification: u8,
    pub num: Vec<String>,
    pub den: Vec<String>,
}

fn parse_poly(coeffs: &[String]) -> Result<Poly, MapError> {
    let parsed = coeffs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::new(parsed))
}

impl RationalMap {
    pub fn to_record(&self) -> MapRecord {
        let strings = |p: &Poly| p.coeffs().iter().map(|c| c.to_string()).collect();
        MapRecord {
            p: self.p(),
            ramification: self.ctx().ramification(),
            num: strings(self.num()),
            den: strings(self.den()),
        }
    }

    pub fn from_record(record: &MapRecord) -> Result<Self, MapError> {
        let ctx = FieldContext::new(record.p, record.ramification)?;
        RationalMap::normalize(ctx, parse_poly(&record.num)?, parse_poly(&record.den)?)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::map_r;
    use super::*;
    use crate::padic::PadicError;

    #[test]
    fn parse_documented_record() {
        let json = r#"{"p":5,"num":["0","-1/5","1"],"den":["-1","0","1"]}"#;
        let rec: MapRecord = serde_json::from_str(json).unwrap();
        assert_eq!(RationalMap::from_record(&rec).unwrap(), map_r());
    }

    #[test]
    fn round_trip() {
        let rec = map_r().to_record();
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"p":5,"num":["0","-1","5"],"den":["-5","0","5"]}"#);
        let back: MapRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(RationalMap::from_record(&back).unwrap(), map_r());
    }

    #[test]
    fn rejects_bad_input() {
        let rec = MapRecord {
            p: 6,
            ramification: 2,
            num: vec!["1".into()],
            den: vec!["0".into(), "1".into()],
        };
        assert_eq!(RationalMap::from_record(&rec), Err(MapError::Padic(PadicError::NotPrime(6))));
        let rec = MapRecord {
            p: 5,
            ramification: 2,
            num: vec!["x".into()],
            den: vec!["1".into()],
        };
        assert!(matches!(
            RationalMap::from_record(&rec),
            Err(MapError::Padic(PadicError::Parse { .. }))
        ));
        assert!(serde_json::from_str::<MapRecord>(r#"{"p":5,"num":[],"den":[],"extra":1}"#).is_err());
    }
}
