// Writes fig2.dot (network and plan) and fig2_augmented.dot (with the
// virtual terminals for demand (2,1,1)) into the given directory.
//
//     cargo run --example dot_export -- /tmp && dot -Tsvg /tmp/fig2.dot > fig2.svg

use std::path::PathBuf;

use twosink::cli::dot::export_dot;
use twosink::fixtures::fig2;
use twosink::{synthesize, Demand};

pub fn render() -> twosink::Result<(String, String)> {
    let net = fig2();
    let d = Demand::new(2, 1, 1);
    let plan = synthesize(&net, d, 7)?;
    Ok((export_dot(&net, Some(&plan), None), export_dot(&net, None, Some(d))))
}

pub fn run_example() -> twosink::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let (plan, augmented) = render()?;
    std::fs::write(dir.join("fig2.dot"), plan)?;
    std::fs::write(dir.join("fig2_augmented.dot"), augmented)?;
    println!("wrote fig2.dot and fig2_augmented.dot to {}", dir.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> twosink::Result<()> {
    run_example()
}
