use fo52_lab::experiments::{self, Family};
use fo52_lab::{store, ExperimentReport, LabError};

#[test]
fn reports_roundtrip_through_json() {
    let r = experiments::tangency(1).unwrap();
    assert!(r.passed(), "{:?}", r.messages);
    let back = ExperimentReport::from_json_str(&r.to_json_string()).unwrap();
    assert_eq!(back, r);
    assert_eq!(r.results["tangent_in_distribution"], true);
}

#[test]
fn experiments_are_deterministic() {
    let a = experiments::span(4, Family::K4, 4).unwrap();
    let b = experiments::span(4, Family::K4, 4).unwrap();
    assert_eq!(a.deterministic(), b.deterministic());
    assert!(a.passed());
    assert_eq!(a.results["pairs_checked"].as_u64(), Some(10));
}

#[test]
fn family_parsing() {
    assert_eq!("U6".parse::<Family>().unwrap(), Family::U6);
    assert_eq!("k4".parse::<Family>().unwrap(), Family::K4);
    assert!(matches!("V7".parse::<Family>(), Err(LabError::Input(_))));
}

#[test]
fn span_rejects_empty_family() {
    assert!(matches!(experiments::span(1, Family::U6, 0), Err(LabError::Input(_))));
}

#[test]
fn store_roundtrip_and_certification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested").join("pi52.json");
    let (map, r) = experiments::pi52_build(1, 30).unwrap();
    assert!(r.passed());
    store::save(&map, &path).unwrap();
    assert_eq!(store::load_certified(&path).unwrap(), map);
    assert!(experiments::pi52_verify(&map).unwrap().passed());
    let missing = dir.path().join("absent.json");
    assert_eq!(store::load(&missing).unwrap_err().exit_code(), 4);
}

#[test]
fn linearization_rows() {
    let r = experiments::linearize(2).unwrap();
    assert!(r.passed(), "{:?}", r.messages);
    assert_eq!(r.rows.len(), 15);
    assert!(r.rows.iter().all(|row| row["derived_dim"] == 2 && row["abelian"] == true));
}
