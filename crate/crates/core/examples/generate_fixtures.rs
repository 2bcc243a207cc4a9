// Regenerates `fixtures/random/`: fifty random DAGs, each with a nonzero
// demand it supports, plus a manifest listing file, demand and seed.
//
// ```text
// cargo run --example generate_fixtures [-- <output-dir>]
// ```

use std::path::PathBuf;

use serde_json::json;
use twosink::cli::files::NetworkFile;
use twosink::gen::feasible_instances;

pub const FIXTURE_COUNT: usize = 50;
pub const FIXTURE_SEED: u64 = 20_240_602;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/random"));
    std::fs::create_dir_all(&dir)?;
    let mut entries = Vec::new();
    for (i, (net, d)) in feasible_instances(FIXTURE_COUNT, FIXTURE_SEED).iter().enumerate() {
        let name = format!("dag_{i:02}.json");
        std::fs::write(dir.join(&name), NetworkFile::from_network(net).to_json())?;
        entries.push(json!({ "file": name, "h0": d.h0, "h1": d.h1, "h2": d.h2, "seed": i }));
    }
    let manifest = json!({ "generator_seed": FIXTURE_SEED, "instances": entries });
    std::fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)? + "\n")?;
    println!("wrote {} instances to {}", FIXTURE_COUNT, dir.display());
    Ok(())
}
