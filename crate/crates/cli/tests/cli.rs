use curalg::charring::{CharRecord, GradedCharacter, TruncationSpec};
use curalg::catobjects::{Catalog, FamilyKind, FamilyTag};
use curalg::rootdata::{CartanType, RootSystem, Weight};
use std::process::{Command, Output};

fn curalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curalg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn tilt_prints_the_highest_line() {
    let o = curalg(&["tilt", "--algebra", "A1", "--J", "0:1", "--anchor", "2,1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "T[1]_{2w1} = 1"), "{text}");
}

#[test]
fn char_of_truncated_local_weyl() {
    let o = curalg(&["char", "--algebra", "A1", "--object", "delta", "--weight", "2", "--grade", "0", "--J", "0:0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "total dimension 3"));
}

#[test]
fn one_covering_step() {
    let o = curalg(&["order", "--kind", "covering", "--from", "0,0", "--to", "2,1", "--algebra", "A1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "true");
}

#[test]
fn exit_codes() {
    assert_eq!(curalg(&["tilt", "--anchor", "2,5", "--J", "0:1"]).status.code(), Some(1));
    assert_eq!(curalg(&["tilt", "--anchor", "2,0", "--J", "-inf:0"]).status.code(), Some(1));
    assert_eq!(curalg(&["tilt", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(curalg(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn char_json_round_trips() {
    let o = curalg(&["char", "--object", "proj", "--weight", "2", "--grade", "0", "--J", "0:1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rec: CharRecord = serde_json::from_value(doc["results"][0]["character"].clone()).unwrap();
    let back = GradedCharacter::from_record(&rec);
    let mut cat = Catalog::new(RootSystem::new(CartanType::A1));
    let tag = FamilyTag::new(FamilyKind::Proj, Weight(vec![2]), 0, TruncationSpec::finite(0, 1));
    assert_eq!(back, cat.character(&tag, None).unwrap());
    // V(2) in grade 0, g (x) V(2) in grade 1
    assert_eq!(doc["results"][0]["dimension"], 3 + 3 * 3);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["tilt", "--anchor", "2,1", "--json"],
        vec!["bgg", "--cap", "4"],
        vec!["sset", "--J", "-inf:0", "--anchor", "2,0", "--lo", "-2"],
    ] {
        assert_eq!(curalg(&args).stdout, curalg(&args).stdout);
    }
}

#[test]
fn table_and_json_agree() {
    let table = stdout(&curalg(&["tilt", "--anchor", "2,1"]));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&curalg(&["tilt", "--anchor", "2,1", "--json"]))).unwrap();
    let cert = &doc["certificate"];
    assert!(table.contains(&format!("dimension {}", cert["dim"])));
    for line in cert["highest_line"].as_array().unwrap() {
        assert!(table.contains(&format!("T[{}]_{{2w1}} = {}", line[0], line[1])));
    }
    let o = stdout(&curalg(&["order", "--kind", "psi", "--psi", "2", "--from", "0,0", "--to", "2,2", "--json"]));
    let doc: serde_json::Value = serde_json::from_str(&o).unwrap();
    assert_eq!(doc["results"][0]["holds"], false);
    assert_eq!(doc["face"]["holds"], true);
}

#[test]
fn selftest_passes() {
    let o = curalg(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("selftest: 7 of 7 passed"));
}
