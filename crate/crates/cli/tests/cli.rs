use std::fs;
use std::path::Path;
use std::process::Command as Process;

use num_rational::BigRational;
use proptest::prelude::*;
use serde_json::Value;

use herman_cli::{build_document, example_inputs, run, Command, Format, JobSpec};
use herman_core::geometry::{Region, RegionRecord};
use herman_core::herman::{HermanParams, ParamsRecord};
use herman_core::padic::{FieldContext, FieldElement, HalfInt};
use herman_core::poly::Poly;
use herman_core::ratmap::{MapRecord, RationalMap};

fn herman(args: &[&str]) -> (i32, String, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_herman")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn spec(command: Command) -> JobSpec {
    JobSpec::new(command)
}

#[test]
fn reproduce_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let (code, _, _) = herman(&["reproduce", "--example", "1", "--out", out.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let mut s = spec(Command::Reproduce);
    s.example = Some(2);
    s.format = Format::Text;
    assert_eq!(run(&s).1.unwrap(), run(&s).1.unwrap());
}

#[test]
fn reports_record_their_settings() {
    let mut s = spec(Command::Reproduce);
    s.example = Some(1);
    let doc: Value = serde_json::from_str(&run(&s).1.unwrap()).unwrap();
    let settings = &doc["settings"];
    assert_eq!(settings["samples"], 32);
    assert_eq!(settings["seed"], 0);
    assert_eq!(settings["precision"], 8);
    assert_eq!(settings["degree_cap"], 256);
    assert_eq!(doc["tool"], "herman");
    assert_eq!(doc["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(doc["verdict"], "pass");
    assert_eq!(doc["results"]["reduction"]["r"]["pair"], "[-XY, 0]");
    assert!(doc["summary"].as_str().unwrap().contains("verdict: pass"));
}

#[test]
fn example_one_report_contents() {
    let mut s = spec(Command::Reproduce);
    s.example = Some(1);
    let doc = build_document(&s).unwrap();
    assert!(doc.passed(), "{}", doc.summary);
    let orbit = &doc.results["periodic"]["r"][0]["orbits"][0];
    assert_eq!(orbit["points"][0], "0");
    assert_eq!(orbit["multiplier"], "1/5");
    assert_eq!(orbit["class"], "repelling");
    for name in [
        "r.siegel.isometry",
        "rphi.siegel.isometry",
        "herman.ring-images",
        "herman.pole",
        "q",
    ] {
        assert!(doc.report.check(name).is_some_and(|c| c.passed), "{name}");
    }
}

#[test]
fn analyze_square_map() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "z2.json", r#"{"p":5,"num":["0","0","1"],"den":["1"]}"#);
    let (code, stdout, _) = herman(&["analyze", "--input", &input]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["results"]["reduction"]["good"], true);
    let orbits = doc["results"]["periodic"][0]["orbits"].as_array().unwrap();
    for p in ["0", "inf"] {
        let o = orbits.iter().find(|o| o["points"][0] == p).unwrap();
        assert_eq!(o["class"], "super-attracting");
    }
}

#[test]
fn input_errors_exit_two_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad_prime = write(dir.path(), "p6.json", r#"{"p":6,"num":["1"],"den":["0","1"]}"#);
    let (code, _, err) = herman(&["analyze", "--input", &bad_prime]);
    assert_eq!(code, 2);
    assert!(err.contains("p6.json") && err.contains("not prime"), "{err}");

    let truncated = write(dir.path(), "cut.json", "{\"p\":5,\n\"num\":[\"1\",");
    let (code, _, err) = herman(&["analyze", "--input", &truncated]);
    assert_eq!(code, 2);
    assert!(err.contains("cut.json:2:"), "{err}");

    let unknown = write(dir.path(), "extra.json", r#"{"p":5,"num":["1"],"den":["1"],"deg":3}"#);
    assert_eq!(herman(&["analyze", "--input", &unknown]).0, 2);

    let missing = dir.path().join("none.json");
    assert_eq!(herman(&["analyze", "--input", missing.to_str().unwrap()]).0, 2);
    assert_eq!(herman(&["verify-siegel"]).0, 2);
    assert_eq!(herman(&["reproduce", "--example", "3"]).0, 2);
}

#[test]
fn failed_verification_exits_one_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "s.json",
        r#"{"map":{"p":5,"num":["5","0","-5"],"den":["5","-1"]},
            "disks":[{"kind":"disk","center":"0","radius_exp":"1","open":true},
                     {"kind":"disk","center":"2","radius_exp":"0","open":true}]}"#,
    );
    let out = dir.path().join("report.json");
    let (code, _, _) = herman(&["verify-siegel", "--input", &input, "--out", out.to_str().unwrap()]);
    assert_eq!(code, 1);
    let doc: Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(doc["verdict"], "fail");
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    for n in [1, 2] {
        let input = serde_json::to_string(&example_inputs(n).unwrap().construct).unwrap();
        let input = write(dir.path(), "construct.json", &input);
        let report = dir.path().join("c.json");
        let q_path = dir.path().join("q.json");
        let (code, _, err) = herman(&[
            "construct-herman",
            "--input",
            &input,
            "--out",
            report.to_str().unwrap(),
            "--map-out",
            q_path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{err}");
        let doc: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
        let q: MapRecord = serde_json::from_str(&fs::read_to_string(&q_path).unwrap()).unwrap();
        let q_map = RationalMap::from_record(&q).unwrap();
        assert_eq!(q_map.degree(), 3);
        assert_eq!(q_map.to_record(), q);

        let herman_input = serde_json::to_string(&doc["results"]["herman_input"]).unwrap();
        let herman_input = write(dir.path(), "h.json", &herman_input);
        let (code, stdout, _) = herman(&["verify-herman", "--input", &herman_input, "--format", "text"]);
        assert_eq!(code, 0);
        assert!(stdout.contains("[pass] pole"));
    }
}

#[test]
fn selftest_passes() {
    let doc = build_document(&spec(Command::Selftest)).unwrap();
    assert!(doc.passed(), "{}", doc.summary);
    assert_eq!(doc.report.checks.len(), 5);
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn ctx() -> FieldContext {
    FieldContext::quadratic(5).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn map_records_round_trip(num in prop::collection::vec(-40i64..40, 1..5), den in prop::collection::vec(-40i64..40, 1..5)) {
        let (num, den) = (Poly::from_ints(&num), Poly::from_ints(&den));
        prop_assume!(!den.is_zero() && Poly::gcd(&num, &den).degree() == Some(0));
        prop_assume!(num.degree().unwrap_or(0).max(den.degree().unwrap_or(0)) >= 1);
        let map = RationalMap::normalize(ctx(), num, den).unwrap();
        let json = serde_json::to_string(&map.to_record()).unwrap();
        let back: MapRecord = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(RationalMap::from_record(&back).unwrap(), map);
    }

    #[test]
    fn region_records_round_trip(a in -500i64..500, d in 1i64..50, b in -3i64..3, k in -6i64..6, gap in 1i64..4, open in any::<bool>()) {
        let center = FieldElement::new(ctx(), BigRational::new(a.into(), d.into()), int(b)).unwrap();
        let k = HalfInt::from_halves(k);
        let regions = [
            Region::disk(center.clone(), k),
            Region::ball(center.clone(), k),
            Region::around_infinity(k),
            Region::annulus_with(center, HalfInt::from_halves(k.halves() + gap), k, open, !open).unwrap(),
        ];
        for region in regions {
            let json = serde_json::to_string(&region.to_record()).unwrap();
            let back: RegionRecord = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(Region::from_record(&back, ctx()).unwrap(), region);
        }
    }

    #[test]
    fn params_records_round_trip(z0 in -1000i64..1000, mu in 1i64..1000, s in -2i64..2) {
        let z0 = FieldElement::new(ctx(), int(z0), int(s)).unwrap();
        let params = HermanParams::new(z0, FieldElement::from_int(ctx(), mu)).unwrap();
        let json = serde_json::to_string(&params.to_record()).unwrap();
        let back: ParamsRecord = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(HermanParams::from_record(&back, ctx()).unwrap(), params);
    }
}
