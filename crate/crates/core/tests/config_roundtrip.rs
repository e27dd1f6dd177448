use std::fs;
use std::path::Path;

use transducer_lab::config::ModelConfig;
use transducer_lab::metrics::efficiency;

#[test]
fn shipped_configs_round_trip_through_json() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut seen = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let cfg = ModelConfig::from_path(&path).unwrap();
        let again = ModelConfig::from_json(&serde_json::to_string_pretty(&cfg).unwrap()).unwrap();
        assert_eq!(cfg, again, "{}", path.display());
        let (a, _) = cfg.build().unwrap();
        let (b, _) = again.build().unwrap();
        let w = a.center_frequency();
        assert_eq!(efficiency(&a, w).unwrap(), efficiency(&b, w).unwrap());
        seen += 1;
    }
    assert!(seen >= 5);
}

#[test]
fn unknown_fields_are_rejected() {
    let text = r#"{"modes": [], "couplings": [], "pump": {"detuning_hz": -1}, "extra": 1}"#;
    assert!(ModelConfig::from_json(text).is_err());
}
