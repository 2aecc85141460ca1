use nerveforge_demo::{clumps, clumps_js, ladder, preset, windows, windows_js};
use serde_json::Value;

fn text(v: &Value) -> String {
    v.to_string()
}

/// Rationals serialize as integers when they are integral, else "p/q".
fn q(v: &Value) -> String {
    v.as_str().map_or_else(|| v.to_string(), str::to_string)
}

#[test]
fn tiling_windows_cover_the_plane() {
    let bu = text(&preset("tiling").unwrap());
    let out = windows(&bu, 4).unwrap();
    assert_eq!(out["outcome"], "pass");
    assert_eq!(out["full_coverage"], true);
    let radii: Vec<u64> = out["windows"].as_array().unwrap().iter().map(|w| w["radius"].as_u64().unwrap()).collect();
    assert_eq!(radii, vec![1, 2, 4]);
    // A window of the tiling is a single contractible piece.
    for w in out["windows"].as_array().unwrap() {
        assert_eq!(w["components"], 1);
        assert_eq!(w["homology"], "H0=Z");
    }
}

#[test]
fn ladder_windows_grow_holes() {
    let bu = text(&preset("ladder").unwrap());
    let out = windows(&bu, 4).unwrap();
    let h: Vec<&str> = out["windows"].as_array().unwrap().iter().map(|w| w["homology"].as_str().unwrap()).collect();
    // Radius w sees 2w + 1 rungs, hence 2w independent loops.
    assert_eq!(h, vec!["H0=Z H1=Z^2", "H0=Z H1=Z^4", "H0=Z H1=Z^8"]);
}

#[test]
fn every_preset_loads() {
    for name in ["tiling", "tubes", "ladder", "staircase", "annulus"] {
        let out = windows(&text(&preset(name).unwrap()), 2).unwrap();
        assert!(out.get("error").is_none(), "{name}");
    }
    assert!(preset("nope").is_err());
}

#[test]
fn ladder_values() {
    let out = ladder(r#"{"n": 4, "base": "2", "epsilon": "1", "mu": "1000000"}"#).unwrap();
    assert_eq!(q(&out["epsilon_prime"]), "162");
    assert_eq!(q(&out["epsilon_double_prime"]), "26244");
    assert_eq!(q(&out["threshold"]), "62500/81");
    assert_eq!(out["ok"], true);
    let above = ladder(r#"{"n": 4, "base": "2", "epsilon": "800", "mu": "1000000"}"#).unwrap();
    assert_eq!(above["ok"], false);
    assert!(ladder(r#"{"n": 4, "base": "0", "epsilon": "1", "mu": "1"}"#).is_err());
}

#[test]
fn octahedron_clumps() {
    let out = clumps("").unwrap();
    let mut ranks: Vec<u64> = out["clumps"].as_array().unwrap().iter().map(|c| c["rank"].as_u64().unwrap()).collect();
    ranks.sort();
    assert_eq!(ranks, vec![1, 1, 2]);
    assert_eq!(out["filling"]["boundary_is_cycle"], true);
    assert_eq!(out["filling"]["zero_in_unfolding"], true);
}

#[test]
fn errors_come_back_as_json() {
    let v: Value = serde_json::from_str(&windows_js("not json", 4)).unwrap();
    assert!(v["error"].is_string());
    let v: Value = serde_json::from_str(&clumps_js("{}")).unwrap();
    assert!(v["error"].is_string());
}
