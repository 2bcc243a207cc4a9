//! The shipped fixture files: fig2 and the random feasible set.

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use twosink::cli::files::NetworkFile;
use twosink::fixtures::{fig2, FIG2_JSON};
use twosink::gen::feasible_instances;
use twosink::{check_feasibility, synthesize, verify_plan, Demand};

mod generator {
    #![allow(dead_code)]
    include!("../examples/generate_fixtures.rs");
    pub fn constants() -> (usize, u64) {
        (FIXTURE_COUNT, FIXTURE_SEED)
    }
}

fn random_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/random")
}

fn manifest() -> Value {
    serde_json::from_str(&std::fs::read_to_string(random_dir().join("manifest.json")).unwrap()).unwrap()
}

#[test]
fn fig2_file_matches_the_described_edge_list() {
    let file = NetworkFile::from_json(FIG2_JSON).unwrap();
    let pairs: Vec<(&str, &str)> = file.edges.iter().map(|e| (e.from.as_str(), e.to.as_str())).collect();
    assert_eq!(
        pairs,
        [
            ("1", "6"), ("1", "2"), ("1", "3"), ("1", "7"), ("6", "T1"), ("7", "T2"), ("2", "T1"),
            ("3", "T2"), ("2", "4"), ("3", "4"), ("4", "5"), ("5", "T1"), ("5", "T2"),
        ]
    );
    assert_eq!(fig2().node_count(), 9);
}

#[test]
fn random_set_is_what_the_generator_produces() {
    let (count, seed) = generator::constants();
    let m = manifest();
    assert_eq!(m["generator_seed"], seed);
    let entries = m["instances"].as_array().unwrap();
    assert_eq!(entries.len(), count);
    for ((net, d), entry) in feasible_instances(count, seed).iter().zip(entries) {
        let text = std::fs::read_to_string(random_dir().join(entry["file"].as_str().unwrap())).unwrap();
        assert_eq!(text, NetworkFile::from_network(net).to_json());
        let got = Demand::new(
            entry["h0"].as_u64().unwrap() as u32,
            entry["h1"].as_u64().unwrap() as u32,
            entry["h2"].as_u64().unwrap() as u32,
        );
        assert_eq!(got, *d);
    }
}

#[test]
fn random_set_synthesizes_and_verifies() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for entry in manifest()["instances"].as_array().unwrap() {
        let net = NetworkFile::load(&random_dir().join(entry["file"].as_str().unwrap()))
            .unwrap()
            .to_network()
            .unwrap();
        let rate = |k: &str| entry[k].as_u64().unwrap() as u32;
        let d = Demand::new(rate("h0"), rate("h1"), rate("h2"));
        assert!(check_feasibility(&net, d).unwrap().feasible);
        let plan = synthesize(&net, d, entry["seed"].as_u64().unwrap()).unwrap();
        assert!(verify_plan(&net, &plan, 100, &mut rng).unwrap().all_passed());
    }
}
