//! Three operations for the static page in `www/`. Each takes and returns
//! JSON text; failures come back as `{"error": "..."}` so the page never
//! has to catch exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use nerveforge_core::clumps::{introduction_filling, introduction_model, maximal_chains, maximal_clumps, PatchSystem};
use nerveforge_core::models;
use nerveforge_core::periodic::{local_vanishing_check, window_nerve, BoxUnion};
use nerveforge_core::scenario::{scale_ladder, Constants, ConstantsJson};

type Out = Result<Value, String>;

fn finish(r: Out) -> String {
    let v = r.unwrap_or_else(|e| json!({ "error": e }));
    serde_json::to_string_pretty(&v).expect("values serialize")
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Window nerves of a periodic box union at radii 1, 2, 4, … up to `w_max`,
/// followed by the local-vanishing verdict.
pub fn windows(box_union: &str, w_max: u32) -> Out {
    let bu = BoxUnion::parse(box_union).map_err(err)?;
    let w_max = u64::from(w_max.clamp(2, 16));
    let mut rows = Vec::new();
    let mut w = 1;
    while w <= w_max {
        let n = window_nerve(&bu, w);
        let h = n.homology();
        let mut labels = n.components();
        labels.sort_unstable();
        labels.dedup();
        rows.push(json!({
            "radius": w,
            "vertices": n.vertices.len(),
            "simplices": n.complex.len(),
            "components": labels.len(),
            "homology": h.to_string(),
        }));
        w *= 2;
    }
    let v = local_vanishing_check(&bu, w_max).map_err(err)?;
    Ok(json!({
        "dim": bu.dim,
        "rank": bu.rank(),
        "windows": rows,
        "outcome": v.outcome,
        "full_coverage": v.full_coverage,
        "vanishes_from": v.from,
        "conclusion": v.conclusion,
    }))
}

/// `ε′`, `ε″` and the thin-part threshold, exactly.
pub fn ladder(constants: &str) -> Out {
    let j: ConstantsJson = serde_json::from_str(constants).map_err(err)?;
    let c = Constants::from_json(&j).map_err(err)?;
    let l = scale_ladder(&c).map_err(err)?;
    serde_json::to_value(l).map_err(err)
}

/// Maximal clumps of a patch system with ranks, inclusions and maximal
/// chains. Empty input means the octahedron model, which also reports its
/// filling.
pub fn clumps(system: &str) -> Out {
    let intro = system.trim().is_empty();
    let ps = if intro { introduction_model() } else { PatchSystem::parse(system).map_err(err)? };
    let cs = maximal_clumps(&ps);
    let rows: Vec<Value> = cs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let inside: Vec<usize> =
                (0..cs.len()).filter(|&j| j != i && cs[j].support.is_subcomplex_of(&c.support)).collect();
            json!({"index": i, "rank": c.rank, "group": c.group, "support": c.support.maximal_simplices(), "contains": inside})
        })
        .collect();
    let mut out = json!({"patches": ps.len(), "clumps": rows, "chains": maximal_chains(&cs)});
    if intro {
        let f = introduction_filling(&ps).map_err(err)?;
        out["filling"] = json!({"boundary_is_cycle": f.verified, "zero_in_unfolding": f.zero_in_unfolded});
    }
    Ok(out)
}

/// Box unions the page offers as starting points.
pub fn preset(name: &str) -> Out {
    let bu = match name {
        "tiling" => models::periodic_tiling(2),
        "tubes" => models::periodic_tubes(2, 2),
        "ladder" => models::periodic_ladder(),
        "staircase" => models::periodic_staircase(),
        "annulus" => models::annular_tube(),
        _ => return Err(format!("no preset {name:?}")),
    };
    serde_json::to_value(bu.to_json()).map_err(err)
}

#[wasm_bindgen(js_name = windows)]
pub fn windows_js(box_union: &str, w_max: u32) -> String {
    finish(windows(box_union, w_max))
}

#[wasm_bindgen(js_name = ladder)]
pub fn ladder_js(constants: &str) -> String {
    finish(ladder(constants))
}

#[wasm_bindgen(js_name = clumps)]
pub fn clumps_js(system: &str) -> String {
    finish(clumps(system))
}

#[wasm_bindgen(js_name = preset)]
pub fn preset_js(name: &str) -> String {
    finish(preset(name))
}
