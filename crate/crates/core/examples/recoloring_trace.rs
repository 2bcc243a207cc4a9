// Shows the two recoloring passes on the augmented fig2 network: the initial
// green and red path sets, every rerouting step, and the paths kept for
// routing.
//
//     cargo run --example recoloring_trace

use twosink::augment::build_augmented;
use twosink::fixtures::fig2;
use twosink::recolor::{symmetric_pass, PassReport};
use twosink::{Demand, EdgePath, Network};

fn show(net: &Network, p: &EdgePath) -> String {
    p.nodes(net).map(|ns| ns.iter().map(|&v| net.label(v)).collect::<Vec<_>>().join(">")).unwrap_or_default()
}

fn report(net: &Network, name: &str, pass: &PassReport) {
    println!("{name}: {} green, {} red paths, budget {}", pass.initial.green_paths.len(), pass.initial.red_paths.len(), pass.budget);
    for (i, p) in pass.initial.green_paths.iter().enumerate() {
        println!("  green {i}: {}", show(net, p));
    }
    for (i, p) in pass.initial.red_paths.iter().enumerate() {
        println!("  red {i}:   {}", show(net, p));
    }
    for (k, s) in pass.trace.steps.iter().enumerate() {
        println!(
            "  step {k}: green {} meets red {} on {}; red takes prefix {} (red source edges {})",
            s.green_path_index,
            s.red_path_index,
            s.shared_edge,
            show(net, &s.prefix_swapped),
            s.red_source_edges
        );
    }
    println!("  exclusively green at fixpoint: {:?}", pass.fixpoint.exclusively_green());
    for r in &pass.routes {
        println!("  route kept: {}", show(net, r));
    }
}

pub fn run_example() -> twosink::Result<()> {
    let net = fig2();
    let d = Demand::new(2, 1, 1);
    let aug = build_augmented(&net, d)?;
    let sp = symmetric_pass(&aug, d)?;
    report(&aug.net, "pass 1 (X1)", &sp.first);
    report(&aug.net, "pass 2 (X2)", &sp.second);
    println!("residual network keeps {} of {} edges", sp.residual.edge_count(), aug.net.edge_count());
    Ok(())
}

#[allow(dead_code)]
fn main() -> twosink::Result<()> {
    run_example()
}
