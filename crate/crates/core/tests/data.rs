use drinfeld_core::matvec::FusionLabelSet;
use drinfeld_core::zoo::Zoo;
use serde_json::Value;

const ZOO_JSON: &str = include_str!("../data/zoo.json");

#[test]
fn shipped_zoo_file_matches_builtin() {
    let file: Value = serde_json::from_str(ZOO_JSON).unwrap();
    let builtin: Value = serde_json::from_str(&Zoo::builtin().to_json()).unwrap();
    assert_eq!(file, builtin);
    let z = Zoo::from_json(ZOO_JSON).unwrap();
    z.validate().unwrap();
    assert_eq!(z.names(), Zoo::builtin().names());
}

#[test]
fn zoo_file_errors_are_reported() {
    assert!(Zoo::from_json("{").is_err());
    let mut v: Value = serde_json::from_str(ZOO_JSON).unwrap();
    // drop the irreps of Z2, which other groups' centralizers reference
    v["irreps"].as_object_mut().unwrap().remove("Z2");
    assert!(Zoo::from_json(&v.to_string()).is_err());
    // a broken multiplication table
    let mut v: Value = serde_json::from_str(ZOO_JSON).unwrap();
    v["groups"][0]["table"][0][0] = Value::from(1);
    assert!(Zoo::from_json(&v.to_string()).is_err());
}

#[test]
fn shipped_label_files_match_presets() {
    let files = [
        (include_str!("../data/labels/fibonacci.json"), FusionLabelSet::fibonacci()),
        (include_str!("../data/labels/ising.json"), FusionLabelSet::ising()),
        (include_str!("../data/labels/rep_s3.json"), FusionLabelSet::rep_s3()),
    ];
    for (text, preset) in files {
        let set = FusionLabelSet::from_json(text).unwrap();
        assert_eq!(set.name, preset.name);
        assert_eq!(set.labels, preset.labels);
        assert_eq!(set.dual, preset.dual);
        assert_eq!(set.dims, preset.dims);
    }
}
